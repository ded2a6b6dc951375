fn main() {
    std::process::exit(hyperlive::cli::run(std::env::args_os()));
}
