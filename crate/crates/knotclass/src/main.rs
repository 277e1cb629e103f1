fn main() {
    std::process::exit(knotclass::cli::run(std::env::args_os()));
}
