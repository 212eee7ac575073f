fn main() {
    std::process::exit(eos_cli::main_with(std::env::args_os()));
}
