fn main() {
    std::process::exit(tricup::cli::main_with_args(std::env::args_os()));
}
