fn main() {
    std::process::exit(kdd_ffr::cli::main(std::env::args_os()));
}
