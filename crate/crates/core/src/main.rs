fn main() {
    std::process::exit(darboux::cli::main_with_env());
}
