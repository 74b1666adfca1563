fn main() {
    std::process::exit(cohera_core::cli::run(std::env::args_os()));
}
