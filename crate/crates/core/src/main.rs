fn main() {
    std::process::exit(sl2c::cli::run_from(std::env::args_os()));
}
