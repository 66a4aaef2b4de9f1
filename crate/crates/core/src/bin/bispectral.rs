fn main() {
    std::process::exit(bispectral_core::cli::run(std::env::args_os()));
}
