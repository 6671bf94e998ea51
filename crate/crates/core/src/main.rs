use std::io::{self, BufWriter};

fn main() {
    let mut out = BufWriter::new(io::stdout());
    let code = turan_core::cli::run(std::env::args_os(), &mut out, &mut io::stderr());
    drop(out);
    std::process::exit(code);
}
