fn main() {
    std::process::exit(svalue::cli::main_with_args(std::env::args_os()));
}
