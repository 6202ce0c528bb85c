//! `freyd`: batch front end for the pp-pair / free abelian category engine.

mod report;
mod session;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use report::Report;
use session::{CliError, Session};

#[derive(Parser, Debug)]
#[command(name = "freyd", version, about = "Exact computations with pp-pairs, quiver representations and Nori diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(clap::Args, Debug, Default, Clone)]
pub struct Opts {
    /// Quiver file (YAML).
    #[arg(long, global = true, value_name = "FILE")]
    pub quiver: Option<String>,
    /// Representation file (YAML); repeatable.
    #[arg(long, global = true, value_name = "FILE")]
    pub rep: Vec<String>,
    /// pp-pair file (YAML with `top` and `bottom`); repeatable.
    #[arg(long, global = true, value_name = "FILE")]
    pub pair: Vec<String>,
    /// Formula file (formula DSL); repeatable.
    #[arg(long, global = true, value_name = "FILE")]
    pub formula: Vec<String>,
    /// Morphism file (YAML with `source`, `target`, `theta`); repeatable.
    #[arg(long, global = true, value_name = "FILE")]
    pub morphism: Vec<String>,
    /// Generating pair of an axiom-induced Serre subcategory; repeatable.
    #[arg(long, global = true, value_name = "FILE")]
    pub axiom: Vec<String>,
    /// Pairs-category file (YAML).
    #[arg(long, global = true, value_name = "FILE")]
    pub pairs: Option<String>,
    /// Restrict les-check to one triple.
    #[arg(long, global = true, value_name = "NAME")]
    pub triple: Option<String>,
    /// Scalar ring: Q, Fp:N or Z.
    #[arg(long, global = true)]
    pub ring: Option<String>,
    /// Step budget of axiom-induced membership search.
    #[arg(long, global = true, default_value_t = 500)]
    pub budget: usize,
    /// Top degree of the Nori diagram.
    #[arg(long, global = true, default_value_t = 2)]
    pub dmax: usize,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include matrices in the report.
    #[arg(long, global = true)]
    pub show_matrices: bool,
    /// Print canonical forms of the loaded inputs instead of a report.
    #[arg(long, global = true)]
    pub dump: bool,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Solution set of a formula in a representation.
    Eval,
    /// Value of a pp-pair at a representation.
    PairValue,
    /// Whether a pp-pair is closed on a representation.
    Closed,
    /// Whether the first formula implies the second in every module.
    ImpliesAll,
    /// Hom group between two representations (as modules).
    Hom,
    /// Serre-kernel membership of a pair (model: --rep; axioms: --axiom).
    KernelMember,
    /// Functionality sequents of a morphism (all modules, or on --rep).
    MorphismCheck,
    /// Whether two morphisms agree after evaluation at --rep.
    QuotientEqual,
    /// Bounded comparison of the regular theories of two representations.
    SameTheory,
    /// Nori diagram of a pairs category.
    NoriBuild,
    /// Relative homology representation of the Nori diagram.
    NoriHomology,
    /// Long exact sequences of the triples.
    LesCheck,
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let s = Session::load(&cli.opts, cli.command == Command::NoriBuild || cli.command == Command::NoriHomology || cli.command == Command::LesCheck)?;
    if cli.opts.dump {
        return s.dump(cli.command == Command::NoriHomology);
    }
    let name = format!("{:?}", cli.command);
    let mut r = Report::new(&kebab(&name), cli.opts.show_matrices);
    match cli.command {
        Command::Eval => s.eval(&mut r)?,
        Command::PairValue => s.pair_value(&mut r)?,
        Command::Closed => s.closed(&mut r)?,
        Command::ImpliesAll => s.implies_all(&mut r)?,
        Command::Hom => s.hom(&mut r)?,
        Command::KernelMember => s.kernel_member(&mut r)?,
        Command::MorphismCheck => s.morphism_check(&mut r)?,
        Command::QuotientEqual => s.quotient_equal(&mut r)?,
        Command::SameTheory => s.same_theory(&mut r)?,
        Command::NoriBuild => s.nori_build(&mut r)?,
        Command::NoriHomology => s.nori_homology(&mut r)?,
        Command::LesCheck => s.les_check(&mut r)?,
    }
    Ok(r.render(cli.opts.json))
}

fn kebab(name: &str) -> String {
    let mut out = String::new();
    for (i, c) in name.chars().enumerate() {
        if c.is_ascii_uppercase() {
            if i > 0 {
                out.push('-');
            }
            out.push(c.to_ascii_lowercase());
        } else {
            out.push(c);
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
