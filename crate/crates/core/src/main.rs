fn main() {
    std::process::exit(ratehrhart::cli::run(std::env::args_os()));
}
