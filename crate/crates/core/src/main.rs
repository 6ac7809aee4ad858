fn main() {
    std::process::exit(tristable::cli::main_with_args(std::env::args().collect()));
}
