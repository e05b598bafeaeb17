fn main() {
    let code = semieuclid_cli::app::main_with(std::env::args_os(), &mut std::io::stdout());
    std::process::exit(code);
}
