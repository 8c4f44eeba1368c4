//! `plurichrome`: plurigraph coloring, chromatic symmetric functions in
//! noncommuting variables, scheduling problems, and hypertree analysis.
//!
//! Exit codes: 0 success, 1 usage error (bad flags, unreadable files,
//! parse errors), 2 size cap exceeded (override with `--allow-large`),
//! 3 verification failure. Output is deterministic: terms are printed in
//! canonical key order. `PLURICHROME_THREADS` caps internal parallelism.

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use plurichrome_core::caps;
use plurichrome_core::encodings::{
    acyclic_to_plurigraph, complex_to_hypergraph, graph_to_plurigraph, hypergraph_to_plurigraph,
    oriented_to_plurigraph, oriented_to_plurigraph_verbatim, star_to_plurigraph, Graph,
    HyperedgeMode, OrientedGraph, SimplicialComplex,
};
use plurichrome_core::hypertree::{
    builtin_examples, degree_sequence_from_csf, search_csf_collisions, Hypergraph,
};
use plurichrome_core::ncalg::{NcBasis, NcQSymExpr, NcSymExpr};
use plurichrome_core::plurigraph::Plurigraph;
use plurichrome_core::scheduling::{delcon_ncqsym, Expr, Formula};
use plurichrome_core::setpart::SetComposition;

#[derive(Parser)]
#[command(name = "plurichrome", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Chromatic nc-symmetric function of a plurigraph file
    Csf(CsfArgs),
    /// Basis conversion, induction, and evaluation on expression files
    Ncsym(NcsymArgs),
    /// Scheduling nc-quasisymmetric function of a DSL formula
    Sched(SchedArgs),
    /// Encode a coloring problem as a plurigraph file
    Encode(EncodeArgs),
    /// Hypergraph and hypertree analysis
    Hypertree(HypertreeArgs),
    /// Re-run the library's worked-example identities
    VerifyPaper,
    /// Search uniform hypertrees for equal-CSF non-isomorphic pairs
    SearchCollisions(SearchArgs),
}

#[derive(Args)]
struct CsfArgs {
    /// Plurigraph input file
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Powersum)]
    method: Method,
    /// Output basis (defaults to the method's native basis)
    #[arg(long, value_enum)]
    basis: Option<Basis>,
    /// Evaluate the chromatic polynomial at this many colors instead
    #[arg(long)]
    poly: Option<usize>,
    #[arg(long)]
    allow_large: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Enum,
    Powersum,
    Delcon,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Basis {
    M,
    P,
}

#[derive(Args)]
struct NcsymArgs {
    /// Expression file: one `<coef> <m|p|M>[<key>]` term per line
    #[arg(long = "in")]
    input: PathBuf,
    /// Induct by a comma-separated sequence, e.g. `2,1`
    #[arg(long, value_delimiter = ',')]
    induct: Option<Vec<usize>>,
    /// Convert powersum to monomial basis
    #[arg(long)]
    to_m: bool,
    /// Convert the monomial basis into NCQSym
    #[arg(long)]
    to_qsym: bool,
    /// Project a powersum expression onto commuting variables
    #[arg(long)]
    commutative: bool,
    /// Principal specialization at this many colors
    #[arg(long)]
    eval: Option<usize>,
}

#[derive(Args)]
struct SchedArgs {
    /// Formula text, e.g. "(x1 <= x2) & (x2 != x3)"
    #[arg(long)]
    expr: String,
    /// Number of elements
    #[arg(long)]
    n: usize,
    /// Use the deletion-contraction law on the last conjunct
    #[arg(long)]
    delcon: bool,
    #[arg(long)]
    allow_large: bool,
}

#[derive(Args)]
struct EncodeArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long = "in")]
    input: PathBuf,
    /// Destination plurigraph file
    #[arg(long)]
    out: PathBuf,
    /// Hyperedge translation (hypergraph and complex kinds)
    #[arg(long, value_enum, default_value_t = Mode::Clique)]
    mode: Mode,
    /// Face dimension for simplicial complexes
    #[arg(long, default_value_t = 1)]
    s: usize,
    /// Cap on enumerated cycle length (acyclic kind)
    #[arg(long)]
    max_cycle_len: Option<usize>,
    /// Keep the redundant arc self-pair clauses (oriented kind)
    #[arg(long)]
    verbatim: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Graph,
    Hypergraph,
    Complex,
    Oriented,
    Acyclic,
    Star,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Clique,
    Path,
}

#[derive(Args)]
struct HypertreeArgs {
    /// Hypergraph input file
    #[arg(long = "in")]
    input: PathBuf,
    /// Print the chromatic symmetric function (powersum basis)
    #[arg(long)]
    csf: bool,
    /// Print the degree sequence
    #[arg(long)]
    degrees: bool,
    /// Report connectivity, acyclicity, magnitude, and hypertree status
    #[arg(long)]
    check: bool,
    #[arg(long)]
    allow_large: bool,
}

#[derive(Args)]
struct SearchArgs {
    /// Hyperedge size
    #[arg(long, default_value_t = 3)]
    s: usize,
    /// Largest vertex count to enumerate
    #[arg(long)]
    max_n: usize,
    #[arg(long)]
    allow_large: bool,
}

/// Failures carrying the documented exit codes.
enum Failure {
    Usage(String),
    Cap(String),
    Verification,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Cap(_) => 2,
            Failure::Verification => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(msg) => write!(f, "{msg}"),
            Failure::Cap(msg) => write!(f, "{msg} (pass --allow-large to override)"),
            Failure::Verification => write!(f, "verification failed"),
        }
    }
}

impl From<plurichrome_core::Error> for Failure {
    fn from(e: plurichrome_core::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    // die quietly when a pipe closes instead of panicking mid-print
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    configure_threads();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints its own help/version through the error path
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Csf(args) => run_csf(args),
        Command::Ncsym(args) => run_ncsym(args),
        Command::Sched(args) => run_sched(args),
        Command::Encode(args) => run_encode(args),
        Command::Hypertree(args) => run_hypertree(args),
        Command::VerifyPaper => run_verify(),
        Command::SearchCollisions(args) => run_search(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("plurichrome: {f}");
            ExitCode::from(f.code())
        }
    }
}

fn configure_threads() {
    if let Ok(value) = std::env::var("PLURICHROME_THREADS") {
        if let Ok(threads) = value.parse::<usize>() {
            if threads >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn check_cap(value: usize, cap: usize, what: &str, allow_large: bool) -> Result<(), Failure> {
    if value > cap && !allow_large {
        return Err(Failure::Cap(format!(
            "{what} is {value}, over the default cap {cap}"
        )));
    }
    Ok(())
}

fn run_csf(args: CsfArgs) -> Result<(), Failure> {
    let g = Plurigraph::parse(&read_file(&args.input)?)?;
    match args.method {
        Method::Enum => check_cap(
            g.n(),
            caps::PLURIGRAPH_ENUM_MAX_N,
            "vertex count",
            args.allow_large,
        )?,
        Method::Powersum | Method::Delcon => check_cap(
            g.num_pluriedges(),
            caps::PLURIGRAPH_SUBSET_MAX_EDGES,
            "pluriedge count",
            args.allow_large,
        )?,
    }
    let y = match args.method {
        Method::Enum => g.chromatic_ncsym_enum(),
        Method::Powersum => g.chromatic_ncsym_powersum(),
        Method::Delcon => g.chromatic_ncsym_delcon(),
    };
    if let Some(k) = args.poly {
        println!("{}", y.eval_principal(k));
        return Ok(());
    }
    let out = match (args.basis, y.basis()) {
        (None, _) => y,
        (Some(Basis::M), _) => y.to_monomial(),
        (Some(Basis::P), NcBasis::Powersum) => y,
        (Some(Basis::P), NcBasis::Monomial) => {
            return Err(Failure::Usage(
                "monomial-to-powersum conversion is not supported; use a powersum method".into(),
            ));
        }
    };
    println!("{out}");
    Ok(())
}

enum AnyExpr {
    Sym(NcSymExpr),
    QSym(NcQSymExpr),
}

fn run_ncsym(args: NcsymArgs) -> Result<(), Failure> {
    let text = read_file(&args.input)?;
    let basis_letter = text
        .lines()
        .filter_map(|l| l.split_whitespace().nth(1))
        .filter_map(|t| t.chars().next())
        .next()
        .ok_or_else(|| Failure::Usage("empty expression file".into()))?;
    let mut value = match basis_letter {
        'm' | 'p' => AnyExpr::Sym(NcSymExpr::parse(&text)?),
        'M' => AnyExpr::QSym(NcQSymExpr::parse(&text)?),
        other => {
            return Err(Failure::Usage(format!("unknown basis letter '{other}'")));
        }
    };
    if let Some(r) = &args.induct {
        value = match value {
            AnyExpr::Sym(e) => AnyExpr::Sym(e.induct(r)?),
            AnyExpr::QSym(e) => AnyExpr::QSym(e.induct(r)?),
        };
    }
    if args.to_m {
        value = match value {
            AnyExpr::Sym(e) => AnyExpr::Sym(e.p_to_m()?),
            AnyExpr::QSym(_) => {
                return Err(Failure::Usage("--to-m applies to NCSym expressions".into()));
            }
        };
    }
    if args.to_qsym {
        value = match value {
            AnyExpr::Sym(e) => AnyExpr::QSym(e.to_ncqsym()?),
            AnyExpr::QSym(_) => {
                return Err(Failure::Usage("--to-qsym applies to NCSym expressions".into()));
            }
        };
    }
    if args.commutative {
        let sym = match value {
            AnyExpr::Sym(e) => e.commutative_image()?,
            AnyExpr::QSym(_) => {
                return Err(Failure::Usage(
                    "--commutative applies to NCSym powersum expressions".into(),
                ));
            }
        };
        println!("{sym}");
        return Ok(());
    }
    if let Some(k) = args.eval {
        let v = match &value {
            AnyExpr::Sym(e) => e.eval_principal(k),
            AnyExpr::QSym(e) => e.eval_principal(k),
        };
        println!("{v}");
        return Ok(());
    }
    match value {
        AnyExpr::Sym(e) => println!("{e}"),
        AnyExpr::QSym(e) => println!("{e}"),
    }
    Ok(())
}

fn run_sched(args: SchedArgs) -> Result<(), Failure> {
    check_cap(
        args.n,
        caps::SCHEDULING_ENUM_MAX_N,
        "element count",
        args.allow_large,
    )?;
    let formula = Formula::parse(&args.expr, args.n)?;
    let result = if args.delcon {
        let (s_prime, clause) = split_last_conjunct(args.n, formula.expr().clone())?;
        delcon_ncqsym(&s_prime, &clause)?
    } else {
        formula.scheduling_ncqsym()
    };
    println!("{result}");
    Ok(())
}

fn split_last_conjunct(n: usize, expr: Expr) -> Result<(Formula, Expr), Failure> {
    let (rest, last) = match expr {
        Expr::And(mut cs) if !cs.is_empty() => {
            let last = cs.pop().expect("nonempty");
            let rest = match cs.len() {
                0 => Expr::True,
                1 => cs.pop().expect("len checked"),
                _ => Expr::And(cs),
            };
            (rest, last)
        }
        other => (Expr::True, other),
    };
    Ok((Formula::from_expr(n, rest)?, last))
}

fn run_encode(args: EncodeArgs) -> Result<(), Failure> {
    let text = read_file(&args.input)?;
    let mode = match args.mode {
        Mode::Clique => HyperedgeMode::Clique,
        Mode::Path => HyperedgeMode::Path,
    };
    let plurigraph = match args.kind {
        Kind::Graph => graph_to_plurigraph(&Graph::parse(&text)?),
        Kind::Hypergraph => hypergraph_to_plurigraph(&Hypergraph::parse(&text)?, mode),
        Kind::Complex => {
            let complex = SimplicialComplex::parse(&text)?;
            let h = complex_to_hypergraph(&complex, args.s)?;
            hypergraph_to_plurigraph(&h, mode)
        }
        Kind::Oriented => {
            let d = OrientedGraph::parse(&text)?;
            if args.verbatim {
                oriented_to_plurigraph_verbatim(&d)
            } else {
                oriented_to_plurigraph(&d)
            }
        }
        Kind::Acyclic => acyclic_to_plurigraph(&Graph::parse(&text)?, args.max_cycle_len)?,
        Kind::Star => star_to_plurigraph(&Graph::parse(&text)?)?,
    };
    std::fs::write(&args.out, format!("{plurigraph}\n"))
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", args.out.display())))?;
    Ok(())
}

fn run_hypertree(args: HypertreeArgs) -> Result<(), Failure> {
    let h = Hypergraph::parse(&read_file(&args.input)?)?;
    if !(args.csf || args.degrees || args.check) {
        return Err(Failure::Usage(
            "pass at least one of --csf, --degrees, --check".into(),
        ));
    }
    if args.csf {
        check_cap(
            h.num_hyperedges(),
            caps::HYPERTREE_CSF_MAX_EDGES,
            "hyperedge count",
            args.allow_large,
        )?;
        println!("{}", h.csf());
    }
    if args.degrees {
        println!("{}", h.degree_sequence());
    }
    if args.check {
        let t = h.two_of_three();
        println!("connected: {}", t.connected);
        println!("acyclic: {}", t.acyclic);
        println!(
            "hyperedge magnitude: {} (n-1 = {})",
            h.hyperedge_magnitude(),
            h.n() - 1
        );
        println!("linear: {}", h.is_linear());
        match h.uniform_size() {
            Some(s) => println!("uniform: {s}"),
            None => println!("uniform: no"),
        }
        println!("hypertree: {}", h.is_hypertree());
    }
    Ok(())
}

fn run_search(args: SearchArgs) -> Result<(), Failure> {
    if args.s == 3 {
        check_cap(
            args.max_n,
            caps::HYPERTREE_ENUM_MAX_N,
            "vertex count",
            args.allow_large,
        )?;
    }
    let report = search_csf_collisions(args.s, args.max_n).map_err(|e| match e {
        plurichrome_core::Error::Unsupported(msg) => Failure::Usage(msg),
        other => Failure::Usage(other.to_string()),
    })?;
    for (n, classes, pairs) in &report.per_n {
        println!("n={n}: {classes} classes, {pairs} equal-CSF non-isomorphic pairs");
    }
    for (a, b) in &report.collisions {
        println!("collision:\n{a}\n--\n{b}");
    }
    println!(
        "total: {} collision pair(s) for s={} up to n={}",
        report.total_collisions(),
        args.s,
        args.max_n
    );
    Ok(())
}

struct Verifier {
    failures: usize,
}

impl Verifier {
    fn check(&mut self, name: &str, ok: bool) {
        if ok {
            println!("ok   {name}");
        } else {
            println!("FAIL {name}");
            self.failures += 1;
        }
    }
}

/// Re-runs the worked identities end to end and reports one line each.
fn run_verify() -> Result<(), Failure> {
    let mut v = Verifier { failures: 0 };

    let g = Plurigraph::parse("plurigraph 4\nedge 1-3 2-4\nedge 1-2 3-4")?;
    let expected = NcSymExpr::parse("+1 p[1|2|3|4]\n-1 p[12|34]\n-1 p[13|24]\n+1 p[1234]")?;
    let by_enum = g.chromatic_ncsym_enum();
    let by_powersum = g.chromatic_ncsym_powersum();
    let by_delcon = g.chromatic_ncsym_delcon();
    v.check("worked example: enumeration matches the displayed powersum expansion",
        by_enum == expected);
    v.check("worked example: powersum expansion matches", by_powersum == expected);
    v.check("worked example: deletion-contraction matches", by_delcon == expected);

    let s_prime = Formula::parse("(x1 <= x2) & (x2 <= x3) & (x3 <= x4)", 4)?;
    let clause = Formula::parse("(x1 != x2) | (x3 != x4)", 4)?.expr().clone();
    let whole = Formula::parse(
        "(x1 <= x2) & (x2 <= x3) & (x3 <= x4) & ((x1 != x2) | (x3 != x4))",
        4,
    )?;
    let by_theorem = delcon_ncqsym(&s_prime, &clause)?;
    let by_enumeration = whole.scheduling_ncqsym();
    v.check(
        "scheduling deletion-contraction matches enumeration on the worked example",
        by_theorem == by_enumeration,
    );
    v.check(
        "the worked scheduling answer has its six displayed terms",
        by_theorem.num_terms() == 6
            && by_theorem.coefficient(&SetComposition::parse("(1,2,34)")?) == BigInt::from(1),
    );

    let contracted = s_prime.contract(&[1, 1])?;
    v.check(
        "S'↓_{(1,1)} simplifies to (x1 <= x2)",
        *contracted.expr() == Expr::Le(1, 2),
    );

    let phi = SetComposition::parse("(1,2)")?;
    v.check(
        "(1,2)↑^{(2,1)} = (12,345)",
        phi.induct(&[2, 1])? == SetComposition::parse("(12,345)")?,
    );
    v.check(
        "(12,345)↓_{(2,1)} = (1,2)",
        SetComposition::parse("(12,345)")?.contract(&[2, 1]) == Some(phi),
    );
    v.check(
        "(125,34)↓_{(2,1)} is undefined",
        SetComposition::parse("(125,34)")?.contract(&[2, 1]).is_none(),
    );

    let [h1, h2, h3, h4] = builtin_examples();
    v.check(
        "H1..H4 are 3-uniform hypertrees on 21 vertices",
        [&h1, &h2, &h3, &h4]
            .iter()
            .all(|h| h.n() == 21 && h.uniform_size() == Some(3) && h.is_hypertree()),
    );
    let (x1, x2, x3, x4) = (h1.csf(), h2.csf(), h3.csf(), h4.csf());
    v.check("X_H1 = X_H2", x1 == x2);
    v.check("X_H3 = X_H4", x3 == x4);
    v.check("X_H1 != X_H3", x1 != x3);
    v.check("H1 is not isomorphic to H2", !h1.is_isomorphic(&h2));
    v.check("H3 is not isomorphic to H4", !h3.is_isomorphic(&h4));
    v.check(
        "degree sequence of H1 recovered from its CSF",
        degree_sequence_from_csf(&x1, 3).map(|d| d == h1.degree_sequence()) == Ok(true),
    );
    v.check(
        "P_H1(2) = 2 * 3^10",
        h1.chromatic_polynomial(2) == BigInt::from(2) * BigInt::from(3u64.pow(10)),
    );

    let oriented = OrientedGraph::new(4, vec![(1, 2), (3, 4)])?;
    let expected_pluri = Plurigraph::parse("plurigraph 4\nedge 1-2\nedge 3-4\nedge 1-4 2-3")?;
    v.check(
        "oriented coloring example produces the displayed plurigraph",
        oriented_to_plurigraph(&oriented) == expected_pluri,
    );

    let square = Graph::new(4, vec![(1, 2), (2, 3), (3, 4), (1, 4)])?;
    let acyclic = acyclic_to_plurigraph(&square, None)?;
    v.check(
        "4-cycle acyclic encoding adds the pluriedge {13,24}",
        acyclic
            .pluriedges()
            .iter()
            .any(|pe| pe.edges() == [(1, 3), (2, 4)]),
    );

    if v.failures == 0 {
        println!("all checks passed");
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
