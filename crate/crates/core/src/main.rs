use std::io::Write;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let result = alg::cli::run(&argv);
    if result.exit_code == 1 {
        let _ = write!(std::io::stderr(), "{}", result.output);
    } else {
        let _ = write!(std::io::stdout(), "{}", result.output);
    }
    std::process::exit(result.exit_code);
}
