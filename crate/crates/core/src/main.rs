fn main() {
    std::process::exit(perfloc::cli::run_from(std::env::args_os()));
}
