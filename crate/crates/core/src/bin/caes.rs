fn main() {
    std::process::exit(caes_cavern::cli::main_with_args(std::env::args_os()));
}
