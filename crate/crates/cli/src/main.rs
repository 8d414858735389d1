fn main() {
    std::process::exit(mwrank_cli::run(std::env::args_os()));
}
