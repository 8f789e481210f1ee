//! `ordalab`: exact PL dynamics, ping-pong certificates, left orders and
//! braid words from the command line.
//!
//! Every run prints one report and exits 0 (ok), 1 (violation) or 2 (error).

mod commands;
mod input;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use input::Inputs;
use report::{Report, Status};

#[derive(Parser, Debug)]
#[command(name = "ordalab", version, about = "Exact symbolic dynamics for left-ordered groups")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for randomized harnesses.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Word-check or search depth; each command has its own default.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Step budget; overrides ORDALAB_BUDGET.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Single PL maps.
    #[command(subcommand)]
    Map(MapCmd),
    /// Fixed sets and their complements.
    #[command(subcommand)]
    Sets(SetsCmd),
    /// Free subsemigroup and free subgroup certificates.
    #[command(subcommand)]
    Pingpong(PingpongCmd),
    /// Left orders from the action.
    #[command(subcommand)]
    Order(OrderCmd),
    /// Glued actions of amalgams over a cyclic subgroup.
    #[command(subcommand)]
    Amalgam(AmalgamCmd),
    /// Thompson's groups.
    #[command(subcommand)]
    Thompson(ThompsonCmd),
    /// Braid words and the Dehornoy order.
    #[command(subcommand)]
    Braid(BraidCmd),
}

#[derive(Subcommand, Debug)]
pub enum MapCmd {
    /// Values at one or more points.
    Eval {
        #[arg(long)]
        map: String,
        /// Comma-separated rationals.
        #[arg(long)]
        x: String,
    },
    /// Composite of the maps in order; the last one acts first.
    Compose {
        #[arg(long = "map", required = true)]
        maps: Vec<String>,
    },
    Inverse {
        #[arg(long)]
        map: String,
    },
    /// Fixed set; periodic maps report one period `[0,1]` unless `--within` is given.
    Fix {
        #[arg(long)]
        map: String,
        /// `lo,hi`
        #[arg(long)]
        within: Option<String>,
    },
    /// `x ↦ -f(-x)`.
    Reverse {
        #[arg(long)]
        map: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum SetsCmd {
    Intersect {
        #[arg(long = "set", required = true)]
        sets: Vec<String>,
    },
    /// Open complement of a closed set.
    Complement {
        #[arg(long)]
        set: String,
    },
    /// Common fixed set of a generating set.
    Groupfix {
        #[arg(long)]
        gens: String,
    },
    /// Whether unit-interval maps have no common fixed point in (0,1).
    Plt {
        #[arg(long)]
        gens: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum PingpongCmd {
    Semigroup {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Common fixed point or free subsemigroup.
    Classify {
        #[arg(long)]
        gens: String,
    },
    Freegroup {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        z: String,
    },
    /// Common fixed point or free subgroup, for maps commuting with `z`.
    Fixcheck {
        #[arg(long)]
        gens: String,
        #[arg(long)]
        z: String,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    /// Germ at -∞, then first difference.
    Germ,
    /// Values at `--priority` points, then germ.
    Priority,
    /// Value at the first `--priority` point only; not an order.
    Value,
}

#[derive(Subcommand, Debug)]
pub enum OrderCmd {
    Compare {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        priority: Option<String>,
    },
    /// Order axioms on all distinct elements of bounded word length.
    Harness {
        #[arg(long)]
        gens: String,
        #[arg(long, default_value_t = 4)]
        length: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = OrderKind::Germ)]
        order: OrderKind,
        #[arg(long)]
        priority: Option<String>,
    },
    /// Convexity of the stabilizer of the priority points.
    Convex {
        #[arg(long)]
        gens: String,
        #[arg(long, default_value = "1/2")]
        priority: String,
        #[arg(long, default_value_t = 4)]
        length: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum AmalgamCmd {
    /// Conjugacy between two fixed-point-free maps.
    Intertwine {
        #[arg(long)]
        h: String,
        #[arg(long)]
        c: String,
        #[arg(long, default_value = "0")]
        t0: String,
        #[arg(long, default_value = "0")]
        u0: String,
        /// Probe points for the identity φ∘h = c∘φ.
        #[arg(long)]
        x: Option<String>,
    },
    /// Images of the generators under the glued action.
    Glue {
        #[arg(long)]
        data: String,
    },
    Reduce {
        #[arg(long)]
        data: String,
        #[arg(long)]
        word: String,
    },
    Eval {
        #[arg(long)]
        data: String,
        #[arg(long)]
        word: String,
        #[arg(long)]
        x: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum ThompsonCmd {
    /// Named fixtures, or one of them.
    Fixtures {
        #[arg(long)]
        name: Option<String>,
    },
    /// Conjugator making ⟨A⟩ and ⟨B⟩ commute.
    Conjugator {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value = "F.x0,F.x1")]
        gens: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum BraidCmd {
    Reduce {
        #[arg(long)]
        word: String,
    },
    Compare {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    Trivial {
        #[arg(long)]
        word: String,
    },
    /// Generator of the center and its checks.
    Center {
        #[arg(long)]
        strands: usize,
        /// Exponent r in the check against σ_i^r.
        #[arg(long, default_value_t = 1)]
        power: u32,
    },
    Expsum {
        #[arg(long)]
        word: String,
    },
}

/// Echo of the arguments, quoted where needed.
fn echo(args: &[String]) -> String {
    args.iter()
        .map(|a| {
            if a.is_empty() || a.contains(|c: char| c.is_whitespace() || c == '"' || c == '\'') {
                format!("'{}'", a.replace('\'', "'\\''"))
            } else {
                a.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = Cli::parse_from(&args);
    let mut inputs = Inputs::default();
    let (status, result, certificate, error) = match commands::run(&cli, &mut inputs) {
        Ok(o) => (o.status, o.result, o.certificate, None),
        Err(e) => (Status::Error, serde_json::Value::Null, serde_json::Value::Null, Some(e.0)),
    };
    let report = Report {
        command: echo(&args[1..]),
        inputs: inputs.digest(),
        status,
        result,
        certificate,
        error,
    };
    print!("{}", report.render(cli.global.format == Format::Structured));
    status.exit_code()
}
