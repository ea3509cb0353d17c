fn main() {
    std::process::exit(symhyper::cli::run(std::env::args_os()));
}
