fn main() {
    std::process::exit(expander_cli::run(std::env::args()));
}
