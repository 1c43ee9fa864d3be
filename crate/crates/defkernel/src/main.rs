use std::io::{self, Write};

fn main() {
    let stdin = io::stdin();
    let mut input = stdin.lock();
    let mut out = io::stdout().lock();
    let mut err = io::stderr();
    let code = defkernel::cli::main_with(std::env::args_os(), &mut input, &mut out, &mut err);
    let _ = out.flush();
    std::process::exit(code);
}
