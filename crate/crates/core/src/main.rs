fn main() {
    std::process::exit(sepkit::cli::run_cli(std::env::args_os()));
}
