fn main() {
    std::process::exit(majorana_readout::cli::main_with_args(std::env::args_os()));
}
