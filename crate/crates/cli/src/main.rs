fn main() {
    std::process::exit(webdimer_cli::run(std::env::args_os()));
}
