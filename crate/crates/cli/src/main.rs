fn main() {
    std::process::exit(curvhom_cli::run());
}
