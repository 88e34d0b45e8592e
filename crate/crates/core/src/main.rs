fn main() {
    std::process::exit(daggerlab::cli::main_with_env());
}
