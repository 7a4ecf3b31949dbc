fn main() {
    std::process::exit(apsp_cli::run_cli(std::env::args_os()));
}
