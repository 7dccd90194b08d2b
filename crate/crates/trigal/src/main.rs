fn main() {
    std::process::exit(trigal::cli::main_with(std::env::args_os()));
}
