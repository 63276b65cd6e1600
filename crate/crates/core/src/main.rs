use std::io;

fn main() {
    let code = airy_integrals::cli::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
