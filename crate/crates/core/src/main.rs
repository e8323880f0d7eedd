fn main() {
    std::process::exit(sqcat::cli::main_with_args(std::env::args_os()));
}
