fn main() {
    std::process::exit(fingroup::cli::main());
}
