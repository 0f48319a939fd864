use std::io::Write;

fn main() {
    let out = ribbonforge::cli::run(std::env::args_os());
    if out.written_to.is_none() {
        let mut stdout = std::io::stdout().lock();
        // A closed pipe is not worth a panic.
        let _ = stdout.write_all(out.render().as_bytes());
    }
    std::process::exit(out.status);
}
