fn main() {
    std::process::exit(tripack::cli::run(std::env::args_os()));
}
