fn main() {
    std::process::exit(alpha_disk_cli::run_from(std::env::args_os()));
}
