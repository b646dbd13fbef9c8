use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let out = bockstein::cli::run(&args);
    if out.exit_code == 2 {
        eprintln!("{}", out.body);
    } else {
        println!("{}", out.body);
    }
    ExitCode::from(out.exit_code as u8)
}
