fn main() {
    std::process::exit(matchflip::cli::run(std::env::args_os()));
}
