use std::io::{IsTerminal, Read, Write};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    // only commands that take input read stdin, and never from a terminal
    let mut stdin = String::new();
    let wants_stdin = args.iter().skip(1).any(|a| matches!(a.as_str(), "-" | "local" | "phi"));
    if wants_stdin && !std::io::stdin().is_terminal() {
        let _ = std::io::stdin().read_to_string(&mut stdin);
    }
    let out = regcon_cli::run(args, &stdin);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code);
}
