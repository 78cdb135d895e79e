fn main() {
    std::process::exit(spheriq::cli::main_with(std::env::args_os()));
}
