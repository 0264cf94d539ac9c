fn main() {
    std::process::exit(hypersum::cli::run());
}
