fn main() {
    std::process::exit(entangler_cli::main_with_args(std::env::args_os()));
}
