fn main() {
    std::process::exit(wexp_cli::run(std::env::args().collect()));
}
