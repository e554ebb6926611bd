fn main() {
    std::process::exit(permlab_cli::run(std::env::args_os(), &mut std::io::stdout()));
}
