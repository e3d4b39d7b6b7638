fn main() {
    std::process::exit(unit_tilings::cli::main_with_args(std::env::args_os()));
}
