fn main() {
    std::process::exit(pinsker_cli::run(std::env::args_os()));
}
