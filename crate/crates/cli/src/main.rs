//! `convpave`: command-line access to the convolution fiber computations.

mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "convpave", version, about = "Pavings and point counts of convolution fibers on affine flag varieties")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Worker threads for batch computations (0: one per core).
    #[arg(long, default_value_t = 0, global = true)]
    pub jobs: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct GroupArg {
    /// Group, e.g. `B2:adjoint` or `A1:sc`.
    #[arg(long)]
    pub group: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Root datum data.
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// Extended affine Weyl group.
    Weyl {
        #[command(subcommand)]
        command: WeylCommand,
    },
    /// Iwahori-Hecke algebra.
    Hecke {
        #[command(subcommand)]
        command: HeckeCommand,
    },
    /// Fibers of convolution morphisms.
    Paving {
        #[command(subcommand)]
        command: PavingCommand,
    },
    /// Semi-infinite orbits meeting a spherical Schubert cell.
    Mv(MvArgs),
    /// Brute-force verification suites.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum GroupCommand {
    Describe(GroupArg),
}

#[derive(Debug, Subcommand)]
pub enum WeylCommand {
    /// Length of an element.
    Length {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        x: String,
    },
    /// `x = τ · s_{i_1} ⋯ s_{i_ℓ}`.
    Word {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        x: String,
    },
    /// Whether `x ≤ y`.
    Bruhat {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Demazure product `x * y`.
    Demazure {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Normal forms of `W_P x W_P`.
    Cosets {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        x: String,
        /// Generators of `W_P`: '', `spherical` or a comma list.
        #[arg(long = "SP", default_value = "")]
        sp: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum HeckeCommand {
    /// `T_{x_1} ⋯ T_{x_r}`.
    Product {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        tuple: String,
    },
    /// Structure constants of `f_{w_1} * f_{w_2}`.
    Constants {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long = "SP", default_value = "")]
        sp: String,
        #[arg(long)]
        w1: String,
        #[arg(long)]
        w2: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Auto,
    Right,
    Left,
}

#[derive(Debug, Subcommand)]
pub enum PavingCommand {
    /// Parahoric fiber of `(w_1, …, w_r)` over `x`.
    Fiber {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long = "SP", default_value = "")]
        sp: String,
        #[arg(long)]
        tuple: String,
        #[arg(long, default_value = "e")]
        at: String,
        /// Closed factors: `none`, `all` or a 0/1 list.
        #[arg(long, default_value = "none")]
        closed: String,
        /// Emit every cell with its gallery.
        #[arg(long)]
        cells: bool,
        /// Also compute the value from Hecke coset sums and compare.
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
    },
    /// Iwahori fiber of a word, letter by letter.
    Word {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        tuple: String,
        #[arg(long, default_value = "e")]
        at: String,
        #[arg(long)]
        compactified: bool,
        #[arg(long)]
        cells: bool,
    },
}

#[derive(Debug, Args)]
pub struct MvArgs {
    #[command(flatten)]
    pub group: GroupArg,
    /// Simple roots of the Levi of `P` ('' for the Borel).
    #[arg(long = "P", default_value = "")]
    pub p: String,
    /// Dominant `μ` in simple-coroot coordinates.
    #[arg(long)]
    pub mu: String,
    /// `λ` in simple-coroot coordinates, or `box` for every `λ` near the
    /// orbit of `μ`.
    #[arg(long)]
    pub lambda: String,
    /// Witness `ν` in simple-coroot coordinates (found automatically if absent).
    #[arg(long)]
    pub nu: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    Verify {
        /// Run every registered suite.
        #[arg(long)]
        all: bool,
        /// Run one suite.
        #[arg(long, value_enum)]
        suite: Option<Suite>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    BottSamelson,
    StructureConstants,
    SubwordBruhat,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if cli.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match commands::run(&cli) {
        Ok(out) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&out.json).expect("serializable"),
                Format::Text => out.text,
            };
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{}", text.trim_end());
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 2 } else { 1 })
        }
    }
}
