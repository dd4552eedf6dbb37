fn main() {
    std::process::exit(fracwell::cli::run(std::env::args_os()));
}
