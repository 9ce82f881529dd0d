fn main() {
    std::process::exit(emg_impact::cli::run_cli(std::env::args_os()));
}
