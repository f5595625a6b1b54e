//! `splitbasis` command-line workbench: builds partition lattices, certifies
//! splitting bases, tabulates bounded regions and runs the full suite.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 on usage or parameter errors.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use splitbasis::arrangement::{all_regions, bounded_regions, default_vector, to_q, verify_region_basis, zaslavsky_check};
use splitbasis::parallel;
use splitbasis::permutation::right_to_left_maxima;
use splitbasis::splitting::{basis_index_set, orbit_report, verify_splitting_basis, BasisIndex, IndexChoice, VerifyOptions};
use splitbasis::{CertificateReport, Error, FamilyKind, LatticeFamily, PartitionLattice};

#[derive(Parser)]
#[command(name = "splitbasis", version, about = "Splitting bases of partition lattice homology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a lattice and print its elements, covers, Möbius value and rank profile.
    Lattice(Instance),
    /// Certify the splitting basis (and the region basis when a slicing vector applies).
    Basis(BasisArgs),
    /// Tabulate the regions cut by the slicing hyperplane and mark the bounded ones.
    Regions(Instance),
    /// Orbits of the Young subgroup fixing n and T on the Pi_n(T) basis.
    Orbits(OrbitArgs),
    /// Run the whole acceptance matrix.
    Suite(SuiteArgs),
}

#[derive(Args, Clone)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Report 0 ms for every timing, making output byte-identical across runs.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args, Clone)]
struct Instance {
    #[arg(long, value_enum, ignore_case = true)]
    family: Family,
    #[arg(long)]
    n: usize,
    /// Comma-separated subset of [n] (DB) or [n-1] (AT).
    #[arg(long = "T", value_delimiter = ',')]
    t: Vec<usize>,
    /// Slicing vector, comma-separated; defaults to the standard one.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    vector: Option<Vec<i64>>,
    /// Raise the desk-scale ceiling on n.
    #[arg(long)]
    max_n: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct BasisArgs {
    #[command(flatten)]
    instance: Instance,
    #[arg(long, value_enum, default_value_t = Indices::Theorem)]
    indices: Indices,
    #[arg(long, hide = true)]
    inject_fault: Option<usize>,
}

#[derive(Args)]
struct OrbitArgs {
    #[arg(long)]
    n: usize,
    #[arg(long = "T", value_delimiter = ',', required = true)]
    t: Vec<usize>,
    #[arg(long)]
    max_n: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SuiteArgs {
    /// Add the larger instances (A6, AT6, B4 and D4 regions, DB4).
    #[arg(long)]
    slow: bool,
    /// Flip the sign of one coefficient of this cycle in the first basis row.
    #[arg(long, hide = true)]
    inject_fault: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    #[value(name = "D")]
    D,
    #[value(name = "DB")]
    Db,
    #[value(name = "AT")]
    At,
}

impl From<Family> for FamilyKind {
    fn from(f: Family) -> Self {
        match f {
            Family::A => FamilyKind::A,
            Family::B => FamilyKind::B,
            Family::D => FamilyKind::D,
            Family::Db => FamilyKind::DB,
            Family::At => FamilyKind::AT,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Indices {
    Theorem,
    All,
}

/// Failure modes that map to exit codes.
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameters(_) | Error::Parse(_) | Error::NotGeneric(_) | Error::GenericityViolated { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Internal(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn ceiling(kind: FamilyKind) -> usize {
    match kind {
        FamilyKind::A | FamilyKind::AT => 6,
        FamilyKind::B | FamilyKind::D | FamilyKind::DB => 4,
    }
}

fn family_of(kind: FamilyKind, n: usize, t: &[usize], max_n: Option<usize>) -> Result<LatticeFamily, Failure> {
    let limit = max_n.unwrap_or_else(|| ceiling(kind));
    if n > limit {
        return Err(Failure::Usage(format!(
            "n = {n} exceeds the ceiling {limit} for {kind}; pass --max-n to raise it"
        )));
    }
    if matches!(kind, FamilyKind::A | FamilyKind::B | FamilyKind::D) && !t.is_empty() {
        return Err(Failure::Usage(format!("--T does not apply to {kind}")));
    }
    let family = LatticeFamily::new(kind, n, t)?;
    if kind == FamilyKind::A && n < 2 {
        return Err(Failure::Usage("A needs n >= 2".into()));
    }
    Ok(family)
}

impl Instance {
    fn family(&self) -> Result<LatticeFamily, Failure> {
        family_of(self.family.into(), self.n, &self.t, self.max_n)
    }

    /// The slicing vector, or `None` for AT when none was given.
    fn vector(&self, family: &LatticeFamily) -> Result<Option<Vec<i64>>, Failure> {
        match (&self.vector, family.kind) {
            (Some(_), FamilyKind::AT) => Err(Failure::Usage("no slicing vector applies to AT".into())),
            (Some(v), _) if v.len() != family.n => Err(Failure::Usage(format!(
                "vector has {} entries, expected {}",
                v.len(),
                family.n
            ))),
            (Some(v), _) => Ok(Some(v.clone())),
            (None, FamilyKind::AT) => Ok(None),
            (None, _) => Ok(Some(default_vector(family)?)),
        }
    }
}

fn emit(output: &Output, text: String, json: impl Serialize) -> Result<(), Failure> {
    let body = match output.format {
        Format::Text => text,
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json).map_err(|e| Failure::Internal(e.to_string()))?;
            s.push('\n');
            s
        }
    };
    match &output.out {
        Some(path) => std::fs::write(path, body).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn scrub(mut r: CertificateReport, output: &Output) -> CertificateReport {
    if output.no_timing {
        r.millis = 0;
    }
    r
}

fn render_report(out: &mut String, r: &CertificateReport) {
    let status = if r.passed() { "PASS" } else { "FAIL" };
    let _ = write!(
        out,
        "{}: {status}  elements {}  chains {}  rank {}  basis {}",
        r.instance, r.counts.elements, r.counts.chains, r.counts.rank, r.counts.basis
    );
    if let Some(d) = &r.determinant {
        let _ = write!(out, "  det {d}");
    }
    if let Some(v) = &r.vector {
        let _ = write!(out, "  v = {v:?}");
    }
    let _ = writeln!(out, "  {} ms", r.millis);
    for c in &r.checks {
        let _ = writeln!(out, "  [{}] {}: {}", if c.pass { "ok" } else { "FAIL" }, c.name, c.detail);
    }
}

#[derive(Serialize, Deserialize)]
struct LatticeReport {
    instance: String,
    family: FamilyKind,
    n: usize,
    #[serde(rename = "T")]
    t: Vec<usize>,
    elements: Vec<String>,
    covers: Vec<(usize, usize)>,
    moebius: i64,
    top_degree: isize,
    top_rank: u64,
    rank_profile: Vec<usize>,
}

fn cmd_lattice(args: &Instance) -> Outcome {
    let family = args.family()?;
    let lattice = PartitionLattice::build(&family);
    let moebius = lattice.moebius_bottom_top();
    let report = LatticeReport {
        instance: format!("lattice {}", family.id()),
        family: family.kind,
        n: family.n,
        t: family.t.clone(),
        elements: lattice.elements().iter().map(ToString::to_string).collect(),
        covers: lattice.poset().covers().to_vec(),
        moebius,
        top_degree: family.top_degree(),
        top_rank: moebius.unsigned_abs(),
        rank_profile: lattice.rank_profile(),
    };
    let mut text = String::new();
    let _ = writeln!(text, "{}: {} elements, {} covers", report.instance, report.elements.len(), report.covers.len());
    let _ = writeln!(text, "mu(0,1) = {}", report.moebius);
    let _ = writeln!(text, "top homology degree {}, rank {}", report.top_degree, report.top_rank);
    let _ = writeln!(text, "rank profile {:?}", report.rank_profile);
    for (i, e) in report.elements.iter().enumerate() {
        let _ = writeln!(text, "  {i:>4}  {e}");
    }
    emit(&args.output, text, &report)?;
    Ok(true)
}

fn cmd_basis(args: &BasisArgs) -> Outcome {
    let inst = &args.instance;
    let family = inst.family()?;
    let vector = inst.vector(&family)?;
    let opts = VerifyOptions {
        indices: match args.indices {
            Indices::Theorem => IndexChoice::Theorem,
            Indices::All => IndexChoice::All,
        },
        flip_sign_in: args.inject_fault,
    };
    let mut reports = vec![verify_splitting_basis(&family, opts)?];
    if let Some(v) = vector {
        let r = verify_region_basis(&family, &v)?;
        if let Some(c) = r.checks.iter().find(|c| c.name == "generic" && !c.pass) {
            return Err(Failure::Usage(format!("vector {v:?} is not generic: {}", c.detail)));
        }
        reports.push(r);
    }
    let reports: Vec<_> = reports.into_iter().map(|r| scrub(r, &inst.output)).collect();
    let pass = reports.iter().all(CertificateReport::passed);
    let mut text = String::new();
    for r in &reports {
        render_report(&mut text, r);
    }
    emit(&inst.output, text, &reports)?;
    Ok(pass)
}

#[derive(Serialize, Deserialize)]
struct RegionRow {
    label: String,
    bounded: bool,
    predicate: bool,
    witness: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct ZaslavskySummary {
    bounded: usize,
    slice_moebius_sum: i64,
    moebius_bottom_top: i64,
    slice_isomorphic: bool,
    regions: usize,
    region_moebius_sum: i64,
    pass: bool,
}

#[derive(Serialize, Deserialize)]
struct RegionsReport {
    instance: String,
    family: FamilyKind,
    n: usize,
    #[serde(rename = "T")]
    t: Vec<usize>,
    vector: Vec<i64>,
    regions: Vec<RegionRow>,
    bounded: usize,
    predicate_matches: bool,
    zaslavsky: ZaslavskySummary,
    pass: bool,
}

fn witness(index: &BasisIndex) -> String {
    match index {
        BasisIndex::Perm(w) => format!("w({}) = {}", w.len(), w[w.len() - 1]),
        BasisIndex::Signed(w) => format!("right-to-left maxima at {:?} unbarred", right_to_left_maxima(w.omega())),
        BasisIndex::Tilde(w) => format!(
            "right-to-left maxima at {:?} unbarred, w(1) = {}",
            right_to_left_maxima(w.omega()),
            w.omega()[0]
        ),
    }
}

fn cmd_regions(args: &Instance) -> Outcome {
    let family = args.family()?;
    let Some(vector) = args.vector(&family)? else {
        return Err(Failure::Usage("no slicing vector applies to AT".into()));
    };
    let v = to_q(&vector);
    let bounded: BTreeSet<BasisIndex> = bounded_regions(&family, &v)?.into_iter().collect();
    let predicate: BTreeSet<BasisIndex> = basis_index_set(&family).into_iter().collect();
    let z = zaslavsky_check(&family, &v)?;
    let rows: Vec<RegionRow> = all_regions(&family)?
        .into_iter()
        .map(|r| {
            let p = predicate.contains(&r.label);
            RegionRow {
                label: r.label.to_string(),
                bounded: bounded.contains(&r.label),
                predicate: p,
                witness: p.then(|| witness(&r.label)),
            }
        })
        .collect();
    let predicate_matches = bounded == predicate;
    let report = RegionsReport {
        instance: format!("regions {}", family.id()),
        family: family.kind,
        n: family.n,
        t: family.t.clone(),
        vector,
        bounded: bounded.len(),
        predicate_matches,
        pass: predicate_matches && z.passed(),
        zaslavsky: ZaslavskySummary {
            bounded: z.bounded,
            slice_moebius_sum: z.slice_moebius_sum,
            moebius_bottom_top: z.moebius_bottom_top,
            slice_isomorphic: z.slice_isomorphic,
            regions: z.regions,
            region_moebius_sum: z.region_moebius_sum,
            pass: z.passed(),
        },
        regions: rows,
    };
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{}: {} bounded of {} regions, v = {:?}",
        report.instance,
        report.bounded,
        report.regions.len(),
        report.vector
    );
    for r in report.regions.iter().filter(|r| r.bounded || r.predicate) {
        let mark = match (r.bounded, r.predicate) {
            (true, true) => "bounded",
            (true, false) => "bounded, outside predicate",
            _ => "predicate only",
        };
        let _ = writeln!(text, "  {:<20} {mark}  {}", r.label, r.witness.as_deref().unwrap_or(""));
    }
    let z = &report.zaslavsky;
    let _ = writeln!(
        text,
        "predicate set {}; Zaslavsky {}: slice sum {}, |mu(0,1)| {}, slice isomorphic {}, regions {} = sum |mu| {}",
        if report.predicate_matches { "matches" } else { "DIFFERS" },
        if z.pass { "PASS" } else { "FAIL" },
        z.slice_moebius_sum,
        z.moebius_bottom_top.abs(),
        z.slice_isomorphic,
        z.regions,
        z.region_moebius_sum
    );
    emit(&args.output, text, &report)?;
    Ok(report.pass)
}

#[derive(Serialize, Deserialize)]
struct OrbitRow {
    instance: String,
    n: usize,
    #[serde(rename = "T")]
    t: Vec<usize>,
    group_order: usize,
    orbits: usize,
    expected_orbits: usize,
    sizes: Vec<usize>,
    regular: bool,
    action_permutes_cycles: bool,
    inverse_restores: bool,
    pass: bool,
}

fn orbit_row(n: usize, t: &[usize]) -> Result<OrbitRow, Failure> {
    let r = orbit_report(n, t)?;
    Ok(OrbitRow {
        instance: format!("orbits {}", LatticeFamily::at(n, t)?.id()),
        n,
        t: r.t.clone(),
        group_order: r.group_order,
        orbits: r.orbits.len(),
        expected_orbits: r.expected_orbits,
        sizes: r.orbits.iter().map(Vec::len).collect(),
        regular: r.regular,
        action_permutes_cycles: r.action_permutes_cycles,
        inverse_restores: r.inverse_restores,
        pass: r.passed(),
    })
}

fn render_orbit(out: &mut String, r: &OrbitRow) {
    let _ = writeln!(
        out,
        "{}: {}  {} orbits (expected {}), sizes {:?}, group order {}, regular {}, action {}",
        r.instance,
        if r.pass { "PASS" } else { "FAIL" },
        r.orbits,
        r.expected_orbits,
        r.sizes,
        r.group_order,
        r.regular,
        r.action_permutes_cycles && r.inverse_restores
    );
}

fn cmd_orbits(args: &OrbitArgs) -> Outcome {
    family_of(FamilyKind::AT, args.n, &args.t, args.max_n)?;
    let row = orbit_row(args.n, &args.t)?;
    let mut text = String::new();
    render_orbit(&mut text, &row);
    emit(&args.output, text, &row)?;
    Ok(row.pass)
}

#[derive(Serialize, Deserialize)]
struct SuiteReport {
    reports: Vec<CertificateReport>,
    orbits: Vec<OrbitRow>,
    passed: usize,
    total: usize,
    pass: bool,
}

fn subsets(max: usize, nonempty: bool) -> Vec<Vec<usize>> {
    (u32::from(nonempty)..(1 << max))
        .map(|m| (1..=max).filter(|i| m & (1 << (i - 1)) != 0).collect())
        .collect()
}

enum Row {
    Basis(LatticeFamily),
    Regions(LatticeFamily),
}

/// `(n, T)` for one orbit row.
type OrbitCase = (usize, Vec<usize>);

fn suite_rows(slow: bool) -> Result<(Vec<Row>, Vec<OrbitCase>), Error> {
    let mut rows = Vec::new();
    let a_max = if slow { 6 } else { 5 };
    for n in 3..=a_max {
        rows.push(Row::Basis(LatticeFamily::a(n)?));
    }
    for n in 2..=4 {
        rows.push(Row::Basis(LatticeFamily::b(n)?));
    }
    for n in 3..=4 {
        rows.push(Row::Basis(LatticeFamily::d(n)?));
    }
    let db_max = if slow { 4 } else { 3 };
    for n in 3..=db_max {
        for t in subsets(n, false) {
            rows.push(Row::Basis(LatticeFamily::db(n, &t)?));
        }
    }
    for n in 4..=a_max {
        for t in subsets(n - 1, true) {
            rows.push(Row::Basis(LatticeFamily::at(n, &t)?));
        }
    }
    for n in 2..=5 {
        rows.push(Row::Regions(LatticeFamily::a(n)?));
    }
    let bd_max = if slow { 4 } else { 3 };
    for n in 2..=bd_max {
        rows.push(Row::Regions(LatticeFamily::b(n)?));
        rows.push(Row::Regions(LatticeFamily::d(n)?));
    }
    for t in subsets(3, false) {
        rows.push(Row::Regions(LatticeFamily::db(3, &t)?));
    }
    let orbits = (4..=5).flat_map(|n| subsets(n - 1, true).into_iter().map(move |t| (n, t))).collect();
    Ok((rows, orbits))
}

fn cmd_suite(args: &SuiteArgs) -> Outcome {
    let (rows, orbit_rows) = suite_rows(args.slow)?;
    let fault_row = rows.iter().position(|r| matches!(r, Row::Basis(_)));
    let indexed: Vec<(usize, &Row)> = rows.iter().enumerate().collect();
    let reports = parallel::map(&indexed, |(i, row)| match row {
        Row::Basis(f) => {
            let opts = VerifyOptions {
                flip_sign_in: if Some(*i) == fault_row { args.inject_fault } else { None },
                ..VerifyOptions::default()
            };
            verify_splitting_basis(f, opts)
        }
        Row::Regions(f) => verify_region_basis(f, &default_vector(f)?),
    });
    let reports = reports
        .into_iter()
        .map(|r| r.map(|r| scrub(r, &args.output)))
        .collect::<Result<Vec<_>, _>>()?;
    let orbits = parallel::map(&orbit_rows, |(n, t)| orbit_row(*n, t))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;

    let total = reports.len() + orbits.len();
    let passed = reports.iter().filter(|r| r.passed()).count() + orbits.iter().filter(|r| r.pass).count();
    let report = SuiteReport {
        pass: passed == total,
        reports,
        orbits,
        passed,
        total,
    };
    let mut text = String::new();
    for r in &report.reports {
        if r.passed() {
            let _ = writeln!(
                text,
                "{}: PASS  rank {}  basis {}  det {}  {} ms",
                r.instance,
                r.counts.rank,
                r.counts.basis,
                r.determinant.as_deref().unwrap_or("-"),
                r.millis
            );
        } else {
            render_report(&mut text, r);
        }
    }
    for r in &report.orbits {
        render_orbit(&mut text, r);
    }
    let _ = writeln!(text, "suite: {}/{} rows pass", report.passed, report.total);
    emit(&args.output, text, &report)?;
    Ok(report.pass)
}

fn threads() -> Result<Option<usize>, Failure> {
    match std::env::var("WORKBENCH_THREADS") {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(t) if t > 0 => Ok(Some(t)),
            _ => Err(Failure::Usage(format!("WORKBENCH_THREADS must be a positive integer, got `{s}`"))),
        },
        Err(_) => Ok(None),
    }
}

fn run(cli: &Cli) -> Outcome {
    let go = || match &cli.command {
        Command::Lattice(a) => cmd_lattice(a),
        Command::Basis(a) => cmd_basis(a),
        Command::Regions(a) => cmd_regions(a),
        Command::Orbits(a) => cmd_orbits(a),
        Command::Suite(a) => cmd_suite(a),
    };
    match threads()? {
        Some(t) => parallel::with_threads(t, go),
        None => go(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
