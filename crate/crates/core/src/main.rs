use clap::Parser;

use modpart::cli::{run, Cli, Io};

fn main() {
    let cli = Cli::parse();
    let code = run(
        cli,
        &mut Io {
            out: &mut std::io::stdout(),
            err: &mut std::io::stderr(),
        },
    );
    std::process::exit(code);
}
