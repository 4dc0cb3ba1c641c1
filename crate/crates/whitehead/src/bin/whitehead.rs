fn main() {
    std::process::exit(whitehead::cli::main_with_args(std::env::args_os()));
}
