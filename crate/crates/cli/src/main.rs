//! Batch command-line surface for the degenerata toolkit.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 domain error
//! (singular input, unstable tree, guard violations), 3 resource cap.

mod commands;
mod config;
mod errors;

use clap::{Args, Parser, Subcommand};

const EXIT_TABLE: &str = "EXIT CODES:
  0  success
  1  usage or parse error
  2  domain error (e.g. a singular cubic, an unstable tree, a guard)
  3  resource cap exceeded

CONFIGURATION:
  An optional plain-text key=value file pointed to by the environment
  variable DEGENERATA_CONFIG sets resource caps (max_groebner_basis,
  max_subdivision_steps). Command-line flags override the file.";

#[derive(Parser)]
#[command(
    name = "degenerata",
    about = "Exact computations with degenerations: fans, nodal models, stable limits, reduction types, intersection numbers",
    after_help = EXIT_TABLE,
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cones and fans: duality, smoothness, subdivision, resolution.
    Toric {
        #[command(subcommand)]
        cmd: ToricCmd,
    },
    /// The nodal-model rewriting system.
    Nodal {
        #[command(subcommand)]
        cmd: NodalCmd,
    },
    /// Stable pointed trees of genus zero.
    Curves {
        #[command(subcommand)]
        cmd: CurvesCmd,
    },
    /// Elliptic reduction types over valued fields.
    Elliptic {
        #[command(subcommand)]
        cmd: EllipticCmd,
    },
    /// Euler-characteristic intersection multiplicity of a complete
    /// intersection against an ideal.
    Chi(ChiArgs),
}

#[derive(Subcommand)]
enum ToricCmd {
    /// Refine a fan until every cone is nonsingular.
    Resolve {
        /// Path to a fan as JSON: {"rank":..,"rays":[[..]],"cones":[[..]]}
        #[arg(long)]
        fan: String,
        #[arg(long)]
        json: bool,
        /// Overrides the subdivision step cap.
        #[arg(long)]
        max_steps: Option<u64>,
    },
    /// Polar dual of the cone spanned by the given rays.
    Dual {
        #[arg(long)]
        rank: usize,
        /// Rays as "a,b;c,d"; empty for the zero cone.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        rays: String,
        #[arg(long)]
        json: bool,
    },
    /// Smoothness and multiplicity of a cone.
    Smooth {
        #[arg(long)]
        rank: usize,
        #[arg(long, allow_hyphen_values = true)]
        rays: String,
        #[arg(long)]
        json: bool,
    },
    /// One stellar subdivision of a fan at a ray.
    Subdivide {
        #[arg(long)]
        fan: String,
        /// The inserted ray, as "a,b,c".
        #[arg(long, allow_hyphen_values = true)]
        ray: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum NodalCmd {
    /// Resolve the model uv = t1^n1 ... tr^nr.
    Resolve {
        /// Comma-separated exponent list, e.g. "2,3,1".
        #[arg(long)]
        exponents: String,
        #[arg(long)]
        json: bool,
    },
    /// Cross-check the model's singularity against its toric cone.
    Validate {
        #[arg(long)]
        exponents: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum CurvesCmd {
    /// Stable limit of marked points over Q(t) with the t-adic place.
    Limit {
        /// File with one point per line: a rational function in t, or inf.
        #[arg(long)]
        points: String,
        #[arg(long)]
        json: bool,
    },
    /// Forget a marking and restabilize.
    Contract {
        /// Path to a tree as JSON (see the tree schema).
        #[arg(long)]
        tree: String,
        #[arg(long)]
        marking: u32,
        #[arg(long)]
        json: bool,
    },
    /// Add a marking at an attachment point.
    Stabilize {
        #[arg(long)]
        tree: String,
        /// "free:<vertex>", "marking:<m>", or "node:<edge>".
        #[arg(long)]
        attach: String,
        #[arg(long)]
        json: bool,
    },
    /// Cross-ratio carrying the first three points to 0, 1, infinity.
    CrossRatio {
        /// Four points: rational functions in t, or inf.
        #[arg(allow_hyphen_values = true)]
        p1: String,
        #[arg(allow_hyphen_values = true)]
        p2: String,
        #[arg(allow_hyphen_values = true)]
        p3: String,
        #[arg(allow_hyphen_values = true)]
        z: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct EllipticCommon {
    /// Coefficient A of y^2 = x^3 + A x + B.
    #[arg(long = "A", allow_hyphen_values = true)]
    a: String,
    /// Coefficient B.
    #[arg(long = "B", allow_hyphen_values = true)]
    b: String,
    /// "t" for the t-adic place on a function field, or "p=<prime>".
    #[arg(long, default_value = "t")]
    place: String,
    /// Coefficient characteristic for the t place (0 for the rationals).
    #[arg(long = "char", default_value_t = 0)]
    characteristic: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum EllipticCmd {
    /// Reduction type of the minimal model at the place.
    Classify(EllipticCommon),
    /// Minimal ramification degree reaching semistable reduction.
    SemistableDegree(EllipticCommon),
    /// Special fiber of a Hesse pencil member.
    Hesse {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, default_value = "t")]
        place: String,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct ChiArgs {
    /// Comma-separated variable names fixing the order, e.g. "T1,T2,T3,T4".
    #[arg(long)]
    ring: String,
    /// File with one ideal generator per line.
    #[arg(long)]
    ideal_file: String,
    /// First element of the complete-intersection side.
    #[arg(long, allow_hyphen_values = true)]
    f: String,
    /// Optional second element.
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    /// Monomial order: "lex" or "grevlex".
    #[arg(long, default_value = "grevlex")]
    order: String,
    /// Overrides the basis-size cap.
    #[arg(long)]
    max_basis: Option<usize>,
    #[arg(long)]
    json: bool,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let cfg = match config::load() {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 1;
        }
    };
    let result = match cli.command {
        Command::Toric { cmd } => match cmd {
            ToricCmd::Resolve {
                fan,
                json,
                max_steps,
            } => commands::toric::resolve(&fan, json, max_steps.or(cfg.max_subdivision_steps)),
            ToricCmd::Dual { rank, rays, json } => commands::toric::dual(rank, &rays, json),
            ToricCmd::Smooth { rank, rays, json } => commands::toric::smooth(rank, &rays, json),
            ToricCmd::Subdivide { fan, ray, json } => commands::toric::subdivide(&fan, &ray, json),
        },
        Command::Nodal { cmd } => match cmd {
            NodalCmd::Resolve { exponents, json } => commands::nodal::resolve(&exponents, json),
            NodalCmd::Validate { exponents, json } => commands::nodal::validate(&exponents, json),
        },
        Command::Curves { cmd } => match cmd {
            CurvesCmd::Limit { points, json } => commands::curves::limit(&points, json),
            CurvesCmd::Contract {
                tree,
                marking,
                json,
            } => commands::curves::contract(&tree, marking, json),
            CurvesCmd::Stabilize { tree, attach, json } => {
                commands::curves::stabilize(&tree, &attach, json)
            }
            CurvesCmd::CrossRatio { p1, p2, p3, z, json } => {
                commands::curves::cross_ratio(&p1, &p2, &p3, &z, json)
            }
        },
        Command::Elliptic { cmd } => match cmd {
            EllipticCmd::Classify(c) => {
                commands::elliptic::classify(&c.a, &c.b, &c.place, c.characteristic, c.json)
            }
            EllipticCmd::SemistableDegree(c) => commands::elliptic::semistable_degree(
                &c.a,
                &c.b,
                &c.place,
                c.characteristic,
                c.json,
            ),
            EllipticCmd::Hesse {
                lambda,
                mu,
                place,
                characteristic,
                json,
            } => commands::elliptic::hesse(&lambda, &mu, &place, characteristic, json),
        },
        Command::Chi(a) => commands::chi::run(
            &a.ring,
            &a.ideal_file,
            &a.f,
            a.g.as_deref(),
            &a.order,
            a.max_basis.or(cfg.max_groebner_basis),
            a.json,
        ),
    };
    match result {
        Ok(output) => {
            println!("{output}");
            0
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}
