fn main() {
    std::process::exit(rishap::cli::run(std::env::args_os()));
}
