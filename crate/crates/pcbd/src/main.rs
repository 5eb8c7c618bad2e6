fn main() {
    std::process::exit(pcbd::cli::run());
}
