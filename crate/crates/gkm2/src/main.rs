fn main() {
    std::process::exit(gkm2::cli::run(std::env::args_os()));
}
