use std::process::ExitCode;

use clap::{Parser, Subcommand};
use soa_topos::soa::DEFAULT_MAX_ITER;
use soa_topos::Machine;
use soa_topos_cli::commands::{self, FactorizeArgs, Kind, Level};
use soa_topos_cli::{fixtures, render, CliError, Format, Outcome};

#[derive(Parser)]
#[command(name = "soa-topos", version, about = "Factorizations, localizations and sheaves over finite sites")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value = "pretty")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the category, presheaves, maps, families and topology of a bundle.
    Check { path: String },
    /// Factor a map through the left and right classes generated by a family.
    Factorize {
        path: String,
        #[arg(long)]
        map: String,
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value = "kelly", value_parser = parse_machine)]
        machine: Machine,
        #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
        max_iter: usize,
        /// Re-check the right part with the filler-enumerating oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Sheafify a presheaf for the bundle's topology.
    Sheafify {
        path: String,
        #[arg(long)]
        presheaf: String,
    },
    /// Check modulator axioms at the given level.
    ValidateModulator {
        path: String,
        #[arg(long)]
        family: Option<String>,
        #[arg(long, value_enum, default_value = "mod")]
        level: Level,
        /// Replace full faithfulness by the two weaker conditions.
        #[arg(long)]
        lax: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
        max_iter: usize,
    },
    /// Build the comparison maps between the k- and plus constructions of a map.
    Compare {
        path: String,
        #[arg(long)]
        map: String,
        #[arg(long)]
        family: Option<String>,
    },
    /// Hom-set of the localization of the bundle's category at a set of morphisms.
    LocalizeHom {
        path: String,
        #[arg(long, value_delimiter = ',')]
        maps: Vec<String>,
        #[arg(long)]
        src: String,
        #[arg(long)]
        tgt: String,
        #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
        max_iter: usize,
    },
    /// Close a family to a modulator, under diagonals, or both.
    Envelope {
        path: String,
        #[arg(long)]
        family: Option<String>,
        #[arg(long, value_enum, default_value = "mod")]
        kind: Kind,
    },
    /// Print a built-in bundle: sier, epi, interval, walking-arrow, chain3.
    Fixture { name: String },
}

fn parse_machine(s: &str) -> Result<Machine, String> {
    s.parse()
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Check { path } => commands::check(&commands::read(path)?),
        Command::Factorize { path, map, family, machine, max_iter, oracle } => {
            let args = FactorizeArgs { map, family: family.as_deref(), machine: *machine, max_iter: *max_iter, oracle: *oracle };
            commands::factorize(&commands::read(path)?, &args)
        }
        Command::Sheafify { path, presheaf } => commands::sheafify_cmd(&commands::read(path)?, presheaf),
        Command::ValidateModulator { path, family, level, lax, max_iter } => {
            commands::validate_modulator(&commands::read(path)?, family.as_deref(), *level, *lax, *max_iter)
        }
        Command::Compare { path, map, family } => commands::compare_cmd(&commands::read(path)?, map, family.as_deref()),
        Command::LocalizeHom { path, maps, src, tgt, max_iter } => {
            commands::localize_hom(&commands::read(path)?, maps, src, tgt, *max_iter)
        }
        Command::Envelope { path, family, kind } => commands::envelope(&commands::read(path)?, family.as_deref(), *kind),
        Command::Fixture { name } => {
            let b = fixtures::bundle(name).ok_or_else(|| {
                CliError::Malformed(format!("unknown fixture `{name}`; expected one of {}", fixtures::NAMES.join(", ")))
            })?;
            Ok(Outcome::ok(serde_json::to_value(b).expect("bundle serializes")))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", render(&out.doc, cli.format));
            ExitCode::from(out.exit.code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit().code() as u8)
        }
    }
}
