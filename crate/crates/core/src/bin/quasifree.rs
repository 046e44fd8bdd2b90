fn main() {
    std::process::exit(quasifree::cli::dispatch(std::env::args_os()));
}
