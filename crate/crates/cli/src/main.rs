use clap::Parser;
use ordalg_cli::{execute, Cli};

fn main() {
    let cli = Cli::parse();
    match execute(&cli.command, &cli.opts) {
        Ok(out) => {
            println!("{}", serde_json::to_string_pretty(&out.json).expect("plain data"));
            std::process::exit(out.exit_code());
        }
        Err(e) => {
            eprintln!("ordalg: {e}");
            std::process::exit(2);
        }
    }
}
