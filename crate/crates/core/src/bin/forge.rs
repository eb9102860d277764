fn main() {
    std::process::exit(susy_inlse::cli::run(std::env::args_os()));
}
