//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when the mathematics says no (a failed
//! hypothesis, an incomplete census, a mutation leaving the 2-term window),
//! 2 on bad input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use siltq::catalog::{self, CATALOG};
use siltq::construct::trivial_extension;
use siltq::enumerate::{enumerate_with, hasse_quiver, Census, EnumerateOptions};
use siltq::io::{self, BisectionRecord, CensusFile, DotOptions, NodeLabel, SymmetrySection};
use siltq::silting::{Direction, SiltingObject, Workspace};
use siltq::symmetry::{self, AntiAutomorphism};
use siltq::{build_algebra, opposite_presentation, Algebra, Error, FieldKind, Presentation};

macro_rules! out {
    ($($t:tt)*) => { emit(format_args!($($t)*)) };
}

#[derive(Parser)]
#[command(name = "siltq", version, about = "Enumerate 2-term silting objects and their symmetries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate 2silt and write a census.
    Enumerate {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Hasse quiver in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Shape DOT nodes by the bisection at this vertex.
        #[arg(long)]
        dot_vertex: Option<String>,
        /// Label DOT nodes by g-vectors instead of ordinals.
        #[arg(long)]
        dot_gvectors: bool,
        /// Verify that the arrows are exactly the covering relations.
        #[arg(long)]
        check_hasse: bool,
    },
    /// Search anti-automorphisms and verify the induced poset symmetry.
    Symmetry {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Census file to annotate with a symmetry section; it must match the algebra.
        #[arg(long)]
        census: Option<PathBuf>,
    },
    /// Split 2silt by the degree of the projective at a vertex.
    Bisect {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        vertex: String,
    },
    /// Mutate Λ (or Λ[1]) at the summand belonging to a vertex.
    Mutate {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        at: String,
        #[arg(long, default_value = "left")]
        direction: Direction,
        /// Start from Λ[1] instead of Λ.
        #[arg(long)]
        shifted: bool,
    },
    /// Compare 2silt Λ with 2silt Γ for Γ the endomorphism algebra of a left mutation of Λ.
    Twice {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        vertex: String,
        /// Write Γ's presentation as a spec file.
        #[arg(long)]
        gamma_out: Option<PathBuf>,
    },
    /// List the builtin catalog or print one entry as a spec file.
    Builtin {
        name: Option<String>,
        #[arg(long)]
        list: bool,
        #[arg(long, value_delimiter = ',')]
        params: Vec<String>,
        /// Work over F_p instead of the rationals.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Summarize a census file.
    Report { census: PathBuf },
}

#[derive(Args, Clone)]
struct AlgebraArgs {
    /// Spec file in JSON.
    #[arg(long, conflicts_with = "builtin")]
    input: Option<PathBuf>,
    #[arg(long)]
    builtin: Option<String>,
    /// Builtin parameters, e.g. `n=3,r=0`.
    #[arg(long, value_delimiter = ',')]
    params: Vec<String>,
    /// Work over F_p instead of the rationals.
    #[arg(long)]
    prime: Option<u64>,
    /// Use the opposite algebra.
    #[arg(long)]
    op: bool,
    /// Replace the algebra by its trivial extension.
    #[arg(long)]
    trivial_extension: bool,
    #[arg(long, default_value_t = 10_000)]
    cap: usize,
    /// Abandon the search once a summand has more projective copies than this.
    #[arg(long, default_value_t = siltq::enumerate::DEFAULT_MAX_SUMMAND_SIZE)]
    max_summand_size: usize,
    /// Disable parallel expansion.
    #[arg(long)]
    serial: bool,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: if e.is_input_error() { 2 } else { 1 }, message: e.to_string() }
    }
}

fn input(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

type CliResult<T> = std::result::Result<T, Failure>;

struct Loaded {
    algebra: Arc<Algebra>,
    anti: Vec<AntiAutomorphism>,
}

fn field(prime: Option<u64>) -> CliResult<FieldKind> {
    match prime {
        None => Ok(FieldKind::Rational),
        Some(p) => Ok(FieldKind::prime(p)?),
    }
}

fn builtin_presentation(name: &str, params: &[String], prime: Option<u64>) -> CliResult<Presentation> {
    let params = catalog::parse_params(&params.join(","))?;
    Ok(catalog::builtin(name, &params, field(prime)?)?)
}

impl AlgebraArgs {
    fn presentation(&self) -> CliResult<Presentation> {
        let p = match (&self.input, &self.builtin) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
                let p = io::parse_spec(&text)?;
                match self.prime {
                    Some(q) if p.field != FieldKind::prime(q)? => {
                        return Err(input("--prime disagrees with the field of the spec file"));
                    }
                    _ => p,
                }
            }
            (None, Some(name)) => builtin_presentation(name, &self.params, self.prime)?,
            _ => return Err(input("exactly one of --input and --builtin is required")),
        };
        Ok(if self.op { opposite_presentation(&p) } else { p })
    }

    fn load(&self) -> CliResult<Loaded> {
        let p = self.presentation()?;
        let base = build_algebra(&p)?;
        let anti = symmetry::find_anti_automorphisms(&base)?;
        if !self.trivial_extension {
            return Ok(Loaded { algebra: Arc::new(base), anti });
        }
        let (t, lifted) = trivial_extension(&base, anti.first())?;
        Ok(Loaded { algebra: Arc::new(t), anti: lifted.into_iter().collect() })
    }

    fn options(&self) -> EnumerateOptions {
        EnumerateOptions { cap: self.cap, max_summand_size: self.max_summand_size, parallel: !self.serial }
    }
}

fn vertex_index(a: &Algebra, name: &str) -> CliResult<usize> {
    a.vertices()
        .iter()
        .position(|v| v == name)
        .ok_or_else(|| input(format!("no vertex named {name:?}; vertices are {}", a.vertices().join(", "))))
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    io::write_atomic(path, text.as_bytes()).map_err(|e| input(format!("cannot write {}: {e}", path.display())))
}

fn census_line(c: &Census) -> String {
    format!("count {} complete {} ({:?})", c.len(), c.complete, c.stop_reason)
}

fn require_complete(c: &Census) -> CliResult<()> {
    if c.complete {
        Ok(())
    } else {
        Err(Failure { code: 1, message: format!("census is incomplete: {}", census_line(c)) })
    }
}

fn symmetry_section(c: &Census, anti: &[AntiAutomorphism], ws: &Workspace) -> CliResult<(SymmetrySection, bool)> {
    let a = &c.algebra;
    let mut section = SymmetrySection::default();
    let mut all_hold = !anti.is_empty();
    for (k, s) in anti.iter().enumerate() {
        let r = symmetry::verify_symmetry(c, s, ws)?;
        section.anti_automorphisms.push(s.describe(a));
        all_hold &= r.holds();
        if k == 0 {
            section.orbits = symmetry::orbit_pairs(&r);
            section.fixed_points = r.fixed_points.clone();
            section.bisections = r
                .bisections
                .iter()
                .map(|b| BisectionRecord { vertex: a.vertices()[b.vertex].clone(), minus: b.minus, plus: b.plus })
                .collect();
        }
        out!(
            "σ{}: {}\n  bijection {} order-reversing {} arrows-reversed {} g-negation {} fixed points {} even {}",
            k + 1,
            s.describe(a),
            r.bijection,
            r.order_reversing,
            r.arrows_reversed,
            r.g_negation.map_or("n/a".to_string(), |b| b.to_string()),
            r.fixed_points.len(),
            r.even
        );
        for b in &r.bisections {
            out!(
                "  vertex {}: {}/{} swapped {}",
                a.vertices()[b.vertex],
                b.minus,
                b.plus,
                b.swaps_halves
            );
        }
    }
    Ok((section, all_hold))
}

fn run(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Enumerate { alg, out, dot, dot_vertex, dot_gvectors, check_hasse } => {
            let l = alg.load()?;
            let ws = Workspace::from_env();
            let c = enumerate_with(&l.algebra, &alg.options(), &ws)?;
            out!("{}", census_line(&c));
            if check_hasse {
                let (_, check) = hasse_quiver(&c, &ws)?;
                out!("hasse: {} arrows, descending {} covering {}", check.arrows, check.descending, check.covering);
            }
            if let Some(path) = out {
                write_file(&path, &CensusFile::from_census(&c, None).to_json())?;
            }
            if let Some(path) = dot {
                let bisection = dot_vertex.map(|v| vertex_index(&l.algebra, &v)).transpose()?;
                let fixed = match (l.anti.first(), c.complete) {
                    (Some(s), true) => symmetry::verify_symmetry(&c, s, &ws)?.fixed_points,
                    _ => Vec::new(),
                };
                let label = if dot_gvectors { NodeLabel::GVectors } else { NodeLabel::Ordinal };
                write_file(&path, &io::emit_dot(&c, &DotOptions { label, bisection, fixed }))?;
            }
            Ok(0)
        }
        Command::Symmetry { alg, census } => {
            let l = alg.load()?;
            let ws = Workspace::from_env();
            let c = enumerate_with(&l.algebra, &alg.options(), &ws)?;
            require_complete(&c)?;
            out!("{}; {} anti-automorphism(s)", census_line(&c), l.anti.len());
            let (section, hold) = symmetry_section(&c, &l.anti, &ws)?;
            if let Some(path) = census {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
                let mut file = CensusFile::from_json(&text)?;
                if file.metadata.algebra_hash != io::algebra_hash(&l.algebra) {
                    return Err(input("census file belongs to a different algebra"));
                }
                let fresh = CensusFile::from_census(&c, None);
                if file.elements != fresh.elements {
                    return Err(input("census file does not match the enumeration"));
                }
                file.symmetry = Some(section);
                write_file(&path, &file.to_json())?;
            }
            Ok(if hold { 0 } else { 1 })
        }
        Command::Bisect { alg, vertex } => {
            let l = alg.load()?;
            let v = vertex_index(&l.algebra, &vertex)?;
            let c = enumerate_with(&l.algebra, &alg.options(), &Workspace::from_env())?;
            require_complete(&c)?;
            let b = symmetry::bisect(&c, v)?;
            let (m, p) = b.sizes();
            out!("vertex {vertex}: {m}/{p} (degree -1 / degree 0) of {}", c.len());
            Ok(if b.partition { 0 } else { 1 })
        }
        Command::Mutate { alg, at, direction, shifted } => {
            let l = alg.load()?;
            let v = vertex_index(&l.algebra, &at)?;
            let ws = Workspace::from_env();
            let start = if shifted {
                SiltingObject::shifted_regular(&l.algebra)
            } else {
                SiltingObject::regular(&l.algebra)
            };
            let start = ws.canonical_object(&start)?;
            let sign = if shifted { -1 } else { 1 };
            let idx = start
                .key()
                .iter()
                .position(|g| g.iter().enumerate().all(|(w, &x)| x == if w == v { sign } else { 0 }))
                .expect("stalk summand present");
            let m = ws.mutate(&start, idx, direction)?;
            let flags = ws.classify(&m.object)?;
            out!("removed {:?}", m.removed.g_vector());
            out!("added   {:?}", m.added.g_vector());
            out!("key     {:?}", m.object.key());
            out!("silting {} tilting {}", flags.silting, flags.tilting);
            Ok(0)
        }
        Command::Twice { alg, vertex, gamma_out } => {
            let l = alg.load()?;
            let v = vertex_index(&l.algebra, &vertex)?;
            let s = l.anti.iter().find(|s| s.perm[v] == v).or(l.anti.first());
            let ws = Workspace::from_env();
            let r = symmetry::twice_pipeline(&l.algebra, s, v, &alg.options(), &ws)?;
            out!("|2silt Λ| = {} (complete {})", r.lambda_count, r.lambda_complete);
            out!("|2silt Γ| = {} (complete {}), dim Γ = {}", r.gamma_count, r.gamma_complete, r.gamma_dim);
            out!("Λ at vertex {vertex}: {}/{}", r.lambda_bisection.0, r.lambda_bisection.1);
            if let (Some(e), Some((m, p))) = (r.gamma_vertex, r.gamma_bisection) {
                out!("Γ at vertex {}: {m}/{p}", e + 1);
            }
            if let Some(p) = &r.gamma_presentation {
                if let Some(path) = gamma_out {
                    write_file(&path, &io::serialize_spec(p))?;
                }
            }
            for f in &r.failed {
                out!("hypothesis failed: {f}");
            }
            if r.counts_equal() {
                out!("|2silt Λ| = |2silt Γ| = {}", r.lambda_count);
            }
            Ok(if r.hypotheses_hold() && r.counts_equal() { 0 } else { 1 })
        }
        Command::Builtin { name, list, params, prime } => {
            if list || name.is_none() {
                for e in CATALOG {
                    let params = if e.params.is_empty() { "-" } else { e.params };
                    out!("{:<22} {:<22} {}", e.name, params, e.summary);
                }
                return Ok(0);
            }
            let p = builtin_presentation(name.as_deref().expect("checked"), &params, prime)?;
            out!("{}", io::serialize_spec(&p).trim_end());
            Ok(0)
        }
        Command::Report { census } => {
            let text = std::fs::read_to_string(&census)
                .map_err(|e| input(format!("cannot read {}: {e}", census.display())))?;
            let f = CensusFile::from_json(&text)?;
            let r = f.report()?;
            out!("{}", serde_json::to_string_pretty(&r).expect("report serializes"));
            Ok(0)
        }
    }
}

/// Writes a line to stdout; a closed pipe ends the process quietly.
fn emit(line: std::fmt::Arguments) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{line}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("failed writing to stdout: {e}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("siltq: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
