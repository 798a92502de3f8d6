fn main() {
    std::process::exit(ptphase::cli::run(std::env::args_os()));
}
