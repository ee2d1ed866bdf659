fn main() {
    std::process::exit(skq::cli::run());
}
