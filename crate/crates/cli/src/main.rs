fn main() {
    std::process::exit(valkit_cli::run(std::env::args_os()));
}
