fn main() {
    std::process::exit(spherical_copulas::cli::run(std::env::args_os()));
}
