fn main() {
    std::process::exit(emrate::cli::run(std::env::args_os()));
}
