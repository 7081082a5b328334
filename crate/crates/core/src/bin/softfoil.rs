fn main() {
    std::process::exit(softfoil::cli::run(std::env::args_os()));
}
