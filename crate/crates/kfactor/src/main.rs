use std::io::{stderr, stdin, stdout, Write};

fn main() {
    let mut out = stdout().lock();
    let code = kfactor::cli::run(
        std::env::args_os(),
        &mut stdin().lock(),
        &mut out,
        &mut stderr().lock(),
    );
    let _ = out.flush();
    std::process::exit(code);
}
