use clap::Parser;

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = comstar_cli::Cli::parse();
    std::process::exit(comstar_cli::run(cli, std::io::stdout().lock()));
}
