use std::io;

fn main() {
    let code = rptree::cli::run(
        std::env::args_os(),
        &mut io::stdin(),
        &mut io::stdout(),
        &mut io::stderr().lock(),
    );
    std::process::exit(code);
}
