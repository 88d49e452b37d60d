use std::io;

fn main() {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code = set_graceful::cli::run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    std::process::exit(code);
}
