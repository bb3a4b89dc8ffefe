fn main() {
    std::process::exit(cqseqdec::cli::execute(std::env::args_os()));
}
