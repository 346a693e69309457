fn main() {
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    let code = relboost::cli::run(std::env::args_os(), &mut stdout, &mut stderr);
    std::process::exit(code);
}
