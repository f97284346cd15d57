fn main() {
    std::process::exit(polar_srg::cli::main_with_args(std::env::args_os()));
}
