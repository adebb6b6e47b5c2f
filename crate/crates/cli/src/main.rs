fn main() {
    std::process::exit(belyi_cli::run(std::env::args_os()));
}
