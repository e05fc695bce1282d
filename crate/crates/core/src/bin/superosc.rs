use std::io::Write;

fn main() {
    superosc::cli::init_threads();
    let r = superosc::cli::run(std::env::args_os());
    let _ = std::io::stdout().write_all(r.stdout.as_bytes());
    let _ = std::io::stderr().write_all(r.stderr.as_bytes());
    std::process::exit(r.code);
}
