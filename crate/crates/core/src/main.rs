fn main() {
    std::process::exit(sibson::cli::run(std::env::args_os()));
}
