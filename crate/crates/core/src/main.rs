fn main() {
    std::process::exit(zigzag::cli::main());
}
