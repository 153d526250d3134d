use std::io::{self, BufWriter};

fn main() {
    let stdin = io::stdin();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = distree::commands::main_with(
        std::env::args(),
        &mut stdin.lock(),
        &mut out,
        &mut io::stderr(),
    );
    drop(out);
    std::process::exit(code);
}
