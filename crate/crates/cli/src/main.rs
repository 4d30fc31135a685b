fn main() {
    let args: Vec<String> = std::env::args().collect();
    let mut out = std::io::stdout().lock();
    let code = pseudo_einstein_cli::run(&args, &mut out);
    std::process::exit(code);
}
