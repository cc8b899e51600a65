fn main() {
    std::process::exit(topoflow::cli::main_with_args(std::env::args_os()));
}
