use std::io::Write;

fn main() {
    let out = plurikit_cli::run(std::env::args_os());
    print!("{}", out.stdout);
    let _ = std::io::stdout().flush();
    // selftest progress has already been streamed
    let progress_shown = std::env::args().nth(1).as_deref() == Some("selftest");
    for line in out.stderr.lines() {
        if !(progress_shown && line.starts_with("criterion ")) {
            eprintln!("{line}");
        }
    }
    std::process::exit(out.exit as i32);
}
