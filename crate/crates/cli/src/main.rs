fn main() {
    std::process::exit(treealpha_cli::run(std::env::args_os()));
}
