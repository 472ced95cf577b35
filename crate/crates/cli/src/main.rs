fn main() {
    std::process::exit(vminor_cli::main_with_env());
}
