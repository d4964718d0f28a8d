use clap::error::ErrorKind;
use clap::Parser;
use iontrap_cli::{run, Category, Cli};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            eprint!("error[{}]: {e}", Category::Usage);
            std::process::exit(Category::Usage.exit_code());
        }
    };
    if let Err(e) = run(&cli) {
        let category = e.category();
        eprintln!("error[{category}]: {e}");
        std::process::exit(category.exit_code());
    }
}
