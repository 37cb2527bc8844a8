fn main() {
    std::process::exit(torus_moduli::cli::main());
}
