fn main() {
    std::process::exit(genarx::cli::main());
}
