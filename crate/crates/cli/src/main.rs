use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use liesolv::cli::{self, Command, FamilyChoice, OrdinaryAction, OrdinaryFamily, EXIT_USAGE};
use liesolv::families::FamilySpec;
use liesolv::ordinary::WitnessBudget;
use liesolv::scalar::Field;

/// Decide and certify Lie solvability of restricted enveloping algebras in
/// characteristic 2.
#[derive(Parser)]
#[command(name = "liesolv", version)]
struct Cli {
    /// Print the structured run report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the Lie and restricted axioms of an algebra file.
    Axioms { file: PathBuf },
    /// Derived series of u(L) by brute force.
    Solvable {
        file: PathBuf,
        #[arg(long, default_value_t = 32)]
        max_steps: usize,
    },
    /// Structural classification with a certificate or witness.
    Classify {
        file: PathBuf,
        /// Largest extension degree tried.
        #[arg(long, default_value_t = 4)]
        ladder: u32,
        /// Largest dim L for the exhaustive core search.
        #[arg(long, default_value_t = 7)]
        core_dim_limit: usize,
        /// Skip the derived-series cross-check.
        #[arg(long)]
        no_oracle: bool,
    },
    /// Nilpotency index of the ideal generated by [[a,b],[c,d],e] in u(L).
    SzIndex { file: PathBuf },
    /// Write an algebra file for a built-in family member.
    Family(FamilyArgs),
    /// Reproduce the computations for the two-variable rational function example.
    #[command(name = "rational-example")]
    RationalExample,
    /// Ordinary Lie algebras and U(L).
    Ordinary {
        #[arg(value_enum)]
        action: OrdAction,
        file: PathBuf,
        /// Pattern evaluations allowed per pattern.
        #[arg(long, default_value_t = WitnessBudget::default().max_evaluations)]
        max_evaluations: usize,
        /// Largest degree of a PBW monomial used as a pattern argument.
        #[arg(long, default_value_t = WitnessBudget::default().max_degree)]
        max_degree: u32,
        /// Number of squaring steps for the 2-envelope.
        #[arg(long, default_value_t = 4)]
        m_max: usize,
    },
    /// Classify every *.json algebra in a directory and cross-check.
    Corpus { dir: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum OrdAction {
    Classify,
    Witness,
    Envelope,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyTag {
    FamI,
    FamIi,
    FamIii,
    FamIv,
    FamV,
    Heisenberg,
    N7,
    WitnessChain,
    RationalExample,
    RationalExtended,
    Random,
    OrdAbelian,
    OrdAffine,
    OrdHeisenberg,
    OrdTwoEigenvectors,
    OrdFreeClass2,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(value_enum)]
    tag: FamilyTag,
    /// gf2, gf4 or gf2^k.
    #[arg(long, default_value = "gf2")]
    field: String,
    /// dim for fam-i and ord-abelian, n for random.
    #[arg(long, default_value_t = 4)]
    dim: usize,
    #[arg(long, default_value_t = 0)]
    extra_center: usize,
    #[arg(long, default_value_t = 0)]
    center_dim: usize,
    #[arg(long)]
    toral: bool,
    #[arg(long, default_value_t = 1)]
    h_dim: usize,
    /// Chain length for witness-chain.
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Seed for random.
    #[arg(long = "instance-seed", default_value_t = 0)]
    instance_seed: u64,
    #[arg(short, long)]
    output: PathBuf,
}

fn parse_field(s: &str) -> Result<Field, String> {
    match s {
        "gf2" => Ok(Field::gf2()),
        "gf4" => Ok(Field::gf4()),
        _ => {
            let k = s
                .strip_prefix("gf2^")
                .and_then(|k| k.parse::<u32>().ok())
                .ok_or_else(|| format!("unknown field `{s}` (expected gf2, gf4 or gf2^k)"))?;
            Field::gf2k_default(k).map_err(|e| e.to_string())
        }
    }
}

fn family_choice(a: &FamilyArgs) -> Result<FamilyChoice, String> {
    let field = parse_field(&a.field)?;
    let f = field.clone();
    let restricted = |s: FamilySpec| Ok(FamilyChoice::Restricted(s));
    let ordinary = |tag: OrdinaryFamily| Ok(FamilyChoice::Ordinary { tag, field: field.clone() });
    match a.tag {
        FamilyTag::FamI => restricted(FamilySpec::FamI { field: f, dim: a.dim }),
        FamilyTag::FamIi => restricted(FamilySpec::FamII { field: f, extra_center: a.extra_center, toral_center: a.toral }),
        FamilyTag::FamIii => restricted(FamilySpec::FamIII { field: f, center_dim: a.center_dim, toral_center: a.toral }),
        FamilyTag::FamIv => restricted(FamilySpec::FamIV { field: f, h_dim: a.h_dim }),
        FamilyTag::FamV => restricted(FamilySpec::FamV { field: f, h_dim: a.h_dim }),
        FamilyTag::Heisenberg => restricted(FamilySpec::Heisenberg { field: f }),
        FamilyTag::N7 => restricted(FamilySpec::NegativeClass2 { field: f }),
        FamilyTag::WitnessChain => restricted(FamilySpec::WitnessChain { field: f, k: a.k }),
        FamilyTag::RationalExample => restricted(FamilySpec::RationalExample {}),
        FamilyTag::RationalExtended => restricted(FamilySpec::RationalExtended {}),
        FamilyTag::Random => restricted(FamilySpec::Random { field: f, n: a.dim, seed: a.instance_seed }),
        FamilyTag::OrdAbelian => ordinary(OrdinaryFamily::Abelian(a.dim)),
        FamilyTag::OrdAffine => ordinary(OrdinaryFamily::AffineLine),
        FamilyTag::OrdHeisenberg => ordinary(OrdinaryFamily::Heisenberg),
        FamilyTag::OrdTwoEigenvectors => ordinary(OrdinaryFamily::TwoEigenvectors),
        FamilyTag::OrdFreeClass2 => ordinary(OrdinaryFamily::FreeClass2Rank4),
    }
}

fn command(cmd: Cmd) -> Result<Command, String> {
    Ok(match cmd {
        Cmd::Axioms { file } => Command::Axioms { file },
        Cmd::Solvable { file, max_steps } => Command::Solvable { file, max_steps },
        Cmd::Classify { file, ladder, core_dim_limit, no_oracle } => {
            Command::Classify { file, ladder, core_dim_limit, oracle: !no_oracle }
        }
        Cmd::SzIndex { file } => Command::SzIndex { file },
        Cmd::Family(a) => Command::Family { choice: family_choice(&a)?, output: a.output },
        Cmd::RationalExample => Command::RationalExample,
        Cmd::Ordinary { action, file, max_evaluations, max_degree, m_max } => Command::Ordinary {
            action: match action {
                OrdAction::Classify => OrdinaryAction::Classify,
                OrdAction::Witness => OrdinaryAction::Witness,
                OrdAction::Envelope => OrdinaryAction::Envelope,
            },
            file,
            budget: WitnessBudget { max_evaluations, max_degree },
            m_max,
        },
        Cmd::Corpus { dir } => Command::Corpus { dir },
    })
}

fn main() -> ExitCode {
    let args = match Cli::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let cmd = match command(args.command) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match cli::run(&cmd, args.seed) {
        Ok(out) => {
            if args.json {
                println!("{}", out.json());
            } else {
                println!("{}", out.text);
            }
            ExitCode::from(out.exit_code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
