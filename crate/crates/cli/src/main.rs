fn main() {
    std::process::exit(intquant_cli::run(std::env::args_os()));
}
