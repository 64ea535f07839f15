fn main() {
    std::process::exit(fuzzdiag::cli::main_with_args(std::env::args_os()));
}
