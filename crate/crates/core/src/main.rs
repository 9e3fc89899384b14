fn main() {
    std::process::exit(spmoments::cli::main());
}
