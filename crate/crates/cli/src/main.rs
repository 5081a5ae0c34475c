use std::io::Write;

fn main() {
    let outcome = hepta_cli::run(std::env::args_os());
    std::io::stdout()
        .write_all(&outcome.stdout)
        .expect("write stdout");
    eprint!("{}", outcome.stderr);
    std::process::exit(outcome.code);
}
