use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dynlog::commands::{self, Outcome, Side, SynthesizeOptions};
use dynlog::{CliError, Paths, Workspace};
use dynlog_core::{Limits, SpaceKind};

#[derive(Parser)]
#[command(name = "dynlog", version, about = "Transition functors and dynamic logic of automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Truth lattice file, or BOOL2.
    #[arg(short = 'm', long = "lattice", default_value = "BOOL2")]
    lattice: String,
    /// Write a JSON report here.
    #[arg(long)]
    dump: Option<PathBuf>,
    /// Largest number of states accepted.
    #[arg(long, default_value_t = Limits::default().max_states)]
    cap_states: usize,
    /// Largest proposition set (and canonical state space) accepted.
    #[arg(long, default_value_t = Limits::default().max_algebra)]
    cap_algebra: usize,
    /// Lift both caps.
    #[arg(long, env = "DYNLOG_CAP_OVERRIDE", value_parser = clap::builder::BoolishValueParser::new())]
    no_cap: bool,
}

impl Common {
    fn limits(&self) -> Limits {
        if self.no_cap {
            Limits::UNLIMITED
        } else {
            Limits {
                max_states: self.cap_states,
                max_algebra: self.cap_algebra,
            }
        }
    }
}

#[derive(Args)]
struct AutomatonArgs {
    /// Automaton file.
    #[arg(short = 'a', long)]
    automaton: PathBuf,
    /// Propositions file.
    #[arg(short = 'b', long)]
    algebra: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Upper,
    Lower,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    Downset,
    Ultrafilter,
}

impl From<SpaceArg> for SpaceKind {
    fn from(s: SpaceArg) -> SpaceKind {
        match s {
            SpaceArg::Downset => SpaceKind::DownSet,
            SpaceArg::Ultrafilter => SpaceKind::Ultrafilter,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the tables of T_R and P_R on B.
    Functor {
        #[command(flatten)]
        args: AutomatonArgs,
        #[arg(long, value_enum, default_value = "both")]
        side: SideArg,
    },
    /// Check whether R is recovered from T_R and from P_R.
    Recover {
        #[command(flatten)]
        args: AutomatonArgs,
    },
    /// Check the adjunction between P_R and T_R and the induced inclusions.
    Adjoint {
        #[command(flatten)]
        args: AutomatonArgs,
    },
    /// Search separating propositions for every non-transition.
    Witnesses {
        #[command(flatten)]
        args: AutomatonArgs,
    },
    /// List the canonical states of B and B embedded over them.
    EnumerateStates {
        /// Poset or propositions file for B.
        #[arg(short = 'b', long)]
        algebra: PathBuf,
        #[arg(long, value_enum)]
        space: Option<SpaceArg>,
        #[command(flatten)]
        common: Common,
    },
    /// Build an automaton from a partial functor on a subposet C of B.
    Synthesize {
        /// Poset or propositions file for B.
        #[arg(short = 'b', long)]
        algebra: PathBuf,
        /// Subposet file listing C.
        #[arg(short = 'c', long)]
        subposet: PathBuf,
        /// Functor file.
        #[arg(short = 't', long)]
        functor: PathBuf,
        /// Functor to use when the file holds several.
        #[arg(long)]
        name: Option<String>,
        #[arg(long, value_enum)]
        space: Option<SpaceArg>,
        /// Write the automaton file here.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        /// Write a DOT rendering here.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Induce automata from the functors in a functor file.
    Induce {
        /// Propositions file.
        #[arg(short = 'b', long)]
        algebra: PathBuf,
        /// Functor file.
        #[arg(short = 't', long)]
        functor: PathBuf,
        /// Optional subposet file fixing the domain.
        #[arg(short = 'c', long)]
        subposet: Option<PathBuf>,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Export the automaton as Graphviz DOT.
    Render {
        #[arg(short = 'a', long)]
        automaton: PathBuf,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

fn load(paths: Paths, common: &Common) -> Result<Workspace, CliError> {
    Workspace::load(
        &Paths {
            lattice: Some(common.lattice.clone()),
            ..paths
        },
        common.limits(),
    )
}

fn automaton_paths(args: &AutomatonArgs) -> Paths {
    Paths {
        automaton: Some(args.automaton.clone()),
        algebra: Some(args.algebra.clone()),
        ..Paths::default()
    }
}

fn run(cmd: Command) -> Result<(Outcome, Option<PathBuf>), CliError> {
    let (outcome, common) = match cmd {
        Command::Functor { args, side } => {
            let ws = load(automaton_paths(&args), &args.common)?;
            let side = match side {
                SideArg::Upper => Side::Upper,
                SideArg::Lower => Side::Lower,
                SideArg::Both => Side::Both,
            };
            (commands::functor(&ws, side)?, args.common)
        }
        Command::Recover { args } => {
            let ws = load(automaton_paths(&args), &args.common)?;
            (commands::recover_cmd(&ws)?, args.common)
        }
        Command::Adjoint { args } => {
            let ws = load(automaton_paths(&args), &args.common)?;
            (commands::adjoint(&ws)?, args.common)
        }
        Command::Witnesses { args } => {
            let ws = load(automaton_paths(&args), &args.common)?;
            (commands::witnesses(&ws)?, args.common)
        }
        Command::EnumerateStates { algebra, space, common } => {
            let paths = Paths {
                algebra: Some(algebra),
                ..Paths::default()
            };
            let ws = load(paths, &common)?;
            (commands::enumerate_states(&ws, space.map(Into::into))?, common)
        }
        Command::Synthesize {
            algebra,
            subposet,
            functor,
            name,
            space,
            output,
            dot,
            common,
        } => {
            let paths = Paths {
                algebra: Some(algebra),
                subposet: Some(subposet),
                functor: Some(functor),
                ..Paths::default()
            };
            let ws = load(paths, &common)?;
            let opts = SynthesizeOptions {
                space: space.map(Into::into),
                name,
                output,
                dot,
            };
            (commands::synthesize_cmd(&ws, &opts)?, common)
        }
        Command::Induce {
            algebra,
            functor,
            subposet,
            output,
            common,
        } => {
            let paths = Paths {
                algebra: Some(algebra),
                functor: Some(functor),
                subposet,
                ..Paths::default()
            };
            let ws = load(paths, &common)?;
            (commands::induce(&ws, output)?, common)
        }
        Command::Render { automaton, output, common } => {
            let paths = Paths {
                automaton: Some(automaton),
                ..Paths::default()
            };
            let ws = load(paths, &common)?;
            (commands::render(&ws, output)?, common)
        }
    };
    outcome.write_files()?;
    Ok((outcome, common.dump))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((outcome, dump)) => {
            print!("{}", outcome.text);
            if let Some(path) = dump {
                let mut json = serde_json::to_string_pretty(&outcome.json).expect("serializable");
                json.push('\n');
                if let Err(e) = std::fs::write(&path, json) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
