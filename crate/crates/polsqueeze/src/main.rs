fn main() {
    std::process::exit(polsqueeze::cli::run());
}
