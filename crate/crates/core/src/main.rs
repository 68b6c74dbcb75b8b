fn main() {
    std::process::exit(chowver::cli::run(std::env::args_os()));
}
