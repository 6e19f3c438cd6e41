fn main() {
    let code = freezing_ca::cli::run(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
