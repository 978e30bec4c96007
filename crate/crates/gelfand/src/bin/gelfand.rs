fn main() {
    std::process::exit(gelfand::cli::dispatch(std::env::args_os()));
}
