fn main() {
    std::process::exit(smone::cli::main_with_args(std::env::args_os()));
}
