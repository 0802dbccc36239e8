fn main() {
    std::process::exit(arrival_cli::app::run(std::env::args_os()));
}
