fn main() {
    std::process::exit(tropika::cli::run(std::env::args_os()));
}
