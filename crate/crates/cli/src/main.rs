fn main() {
    std::process::exit(tilt_cli::main_with(std::env::args_os()));
}
