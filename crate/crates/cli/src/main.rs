use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use quandle_lie::finalg::DEFAULT_ENUMERATION_BOUND;
use quandle_lie::linkdiag::{build_diagram, lookup_link, mirror, parse_pd, PRIME_LINKS_LE7};
use quandle_lie::quandle::{parse_quandle, parse_rack};
use quandle_lie::{
    AlgebraElement, AlgebraError, EnhancementReport, Error, ExponentMode, FiniteAlgebra, FiniteQuandle, GenPolynomial,
    Group, OrientedPDCode, UnitsQuandle,
};

#[derive(Parser)]
#[command(
    name = "quandle-lie",
    version,
    about = "Quandle counting invariants and Lie ideal enhancements of links"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the invariants of one link.
    Invariant {
        #[command(flatten)]
        link: LinkArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Print only this polynomial.
        #[arg(long, value_enum)]
        poly: Option<Poly>,
    },
    /// Compute one polynomial for a list of links.
    Tabulate {
        /// Comma-separated link names; `@prime-links-le7` expands to the
        /// prime links with up to seven crossings.
        #[arg(long, default_value = "")]
        links: String,
        #[command(flatten)]
        run: RunArgs,
        /// Polynomial to tabulate (default: lie with an algebra, else image).
        #[arg(long, value_enum)]
        poly: Option<Poly>,
        /// Group links sharing a polynomial into one row.
        #[arg(long)]
        grouped: bool,
    },
    /// Check a quandle matrix, Cayley table or PD file.
    Validate {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Auto)]
        kind: Kind,
        /// For matrices, check only the rack axioms.
        #[arg(long)]
        rack: bool,
    },
}

#[derive(Args)]
struct LinkArgs {
    /// Built-in link name, e.g. `3_1` or `L7a4`.
    #[arg(long, conflicts_with = "pd_file", required_unless_present = "pd_file")]
    link: Option<String>,
    /// Signed PD file.
    #[arg(long)]
    pd_file: Option<PathBuf>,
    /// Use the mirror image.
    #[arg(long)]
    mirror: bool,
}

#[derive(Args)]
struct RunArgs {
    /// `alexander:p:t`, `trivial:n`, `conj:G[:n]`, `symplectic:p:m`, `units`
    /// or `gens:v1/v2/...` with comma-separated coefficients.
    #[arg(long, conflicts_with = "quandle_file")]
    quandle: Option<String>,
    /// Quandle matrix file (1-based entries).
    #[arg(long)]
    quandle_file: Option<PathBuf>,
    /// `M<m>:<p>` or `GA:<p>:<group>`.
    #[arg(long)]
    algebra: Option<String>,
    /// Find the quandle file's quandle among the units of the algebra.
    #[arg(long, value_enum)]
    embed: Option<Embed>,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    n_fold: i64,
    #[arg(long, value_enum, default_value_t = Exponent::Card)]
    exponent: Exponent,
    /// Largest algebra (number of elements) to enumerate.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    bound: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Include the Lie ideal multiset.
    #[arg(long)]
    multiset: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Embed {
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum Exponent {
    Card,
    Rank,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Poly {
    Image,
    Lie,
    Assoc,
    Two,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Auto,
    Quandle,
    Group,
    Pd,
}

enum Failure {
    Input(String),
    Bound(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_bound_exceeded() {
            Failure::Bound(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Error::from(e).into()
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Bound(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Bound(m) => m,
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// A resolved coloring quandle, possibly living inside an algebra.
enum Target {
    Plain {
        q: FiniteQuandle,
        desc: String,
    },
    Units {
        uq: UnitsQuandle,
        alg: FiniteAlgebra,
        desc: String,
    },
}

impl Target {
    fn report(
        &self,
        link: &str,
        pd: &OrientedPDCode,
        mode: ExponentMode,
        multiset: bool,
    ) -> Result<EnhancementReport, Failure> {
        let d = build_diagram(pd);
        match self {
            Target::Plain { q, desc } => Ok(EnhancementReport::for_quandle(link, desc, &d, q)),
            Target::Units { uq, alg, desc } => {
                Ok(EnhancementReport::for_units(link, desc, &d, uq, alg, mode, multiset)?)
            }
        }
    }
}

fn parse_int<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, Failure> {
    s.parse()
        .map_err(|_| Failure::Input(format!("{what} {s:?} is not an integer")))
}

fn parse_element(alg: &FiniteAlgebra, text: &str) -> Result<AlgebraElement, Failure> {
    let coeffs = text
        .split(',')
        .map(|c| parse_int::<u32>(c.trim(), "coefficient"))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(alg.element(coeffs)?)
}

fn resolve_target(run: &RunArgs) -> Result<Target, Failure> {
    let bound = run.bound.map_or(DEFAULT_ENUMERATION_BOUND, u128::from);
    let alg = run.algebra.as_deref().map(FiniteAlgebra::from_spec).transpose()?;
    let need_alg = |what: &str| {
        alg.clone()
            .ok_or_else(|| Failure::Input(format!("{what} needs --algebra")))
    };

    if let Some(path) = &run.quandle_file {
        let q = parse_quandle(&read(path)?).map_err(input)?;
        let desc = path.display().to_string();
        return match (&alg, run.embed) {
            (None, _) => Ok(Target::Plain { q, desc }),
            (Some(alg), Some(Embed::Auto)) => {
                let uq = alg.embed_quandle(&q, run.n_fold, bound)?;
                Ok(Target::Units {
                    uq,
                    alg: alg.clone(),
                    desc,
                })
            }
            (Some(_), None) => Err(Failure::Input(
                "--quandle-file with --algebra needs --embed auto".into(),
            )),
        };
    }

    let spec = run
        .quandle
        .as_deref()
        .ok_or_else(|| Failure::Input("one of --quandle or --quandle-file is required".into()))?;
    let desc = spec.to_string();
    let parts: Vec<&str> = spec.split(':').collect();
    let plain = |q: FiniteQuandle| {
        if alg.is_some() {
            Err(Failure::Input(format!(
                "quandle {spec:?} is not built from --algebra; use units, gens or --embed auto"
            )))
        } else {
            Ok(Target::Plain { q, desc: desc.clone() })
        }
    };
    match parts.as_slice() {
        ["alexander", p, t] => {
            plain(FiniteQuandle::alexander(parse_int(p, "prime")?, parse_int(t, "t")?).map_err(input)?)
        }
        ["trivial", n] => {
            let n: usize = parse_int(n, "size")?;
            if n == 0 {
                return Err(Failure::Input("trivial quandle needs n ≥ 1".into()));
            }
            plain(FiniteQuandle::trivial(n))
        }
        ["conj", g] => plain(FiniteQuandle::conjugation(&Group::by_name(g).map_err(input)?, 1)),
        ["conj", g, n] => plain(FiniteQuandle::conjugation(
            &Group::by_name(g).map_err(input)?,
            parse_int(n, "n")?,
        )),
        ["symplectic", p, m] => {
            plain(FiniteQuandle::symplectic(parse_int(p, "prime")?, parse_int(m, "m")?).map_err(input)?)
        }
        ["units"] => {
            let alg = need_alg("units")?;
            let uq = alg.quandle_of_units(run.n_fold, bound)?;
            Ok(Target::Units { uq, alg, desc })
        }
        ["gens", list] => {
            let alg = need_alg("gens")?;
            let gens = list
                .split('/')
                .map(|g| parse_element(&alg, g))
                .collect::<Result<Vec<_>, _>>()?;
            let uq = alg.embed_elements(&gens, run.n_fold)?;
            Ok(Target::Units { uq, alg, desc })
        }
        _ => Err(Failure::Input(format!("unrecognized quandle spec {spec:?}"))),
    }
}

fn resolve_link(args: &LinkArgs) -> Result<(String, OrientedPDCode), Failure> {
    let (name, pd) = match (&args.link, &args.pd_file) {
        (Some(name), _) => (name.clone(), lookup_link(name).map_err(input)?),
        (None, Some(path)) => {
            let pd = parse_pd(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            (path.display().to_string(), pd)
        }
        (None, None) => return Err(Failure::Input("one of --link or --pd-file is required".into())),
    };
    if args.mirror {
        Ok((format!("{name} (mirror)"), mirror(&pd)))
    } else {
        Ok((name, pd))
    }
}

fn mode(run: &RunArgs) -> ExponentMode {
    match run.exponent {
        Exponent::Card => ExponentMode::Cardinality,
        Exponent::Rank => ExponentMode::Rank,
    }
}

fn pick(report: &EnhancementReport, poly: Poly) -> Result<String, Failure> {
    let missing = || Failure::Input("this polynomial needs a quandle inside an algebra (--algebra)".into());
    Ok(match poly {
        Poly::Image => report.phi_im.to_string(),
        Poly::Lie => report.phi_lie.as_ref().ok_or_else(missing)?.to_string(),
        Poly::Assoc => report.phi_assoc.as_ref().ok_or_else(missing)?.to_string(),
        Poly::Two => report.phi_two.as_ref().ok_or_else(missing)?.to_string(),
    })
}

fn opt_string<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(|p| p.to_string()).unwrap_or_default()
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(fields: &[String]) -> String {
    fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",")
}

fn cmd_invariant(link: &LinkArgs, run: &RunArgs, poly: Option<Poly>) -> Result<(), Failure> {
    let (name, pd) = resolve_link(link)?;
    let target = resolve_target(run)?;
    let report = target.report(&name, &pd, mode(run), run.multiset)?;
    if let Some(poly) = poly {
        let text = pick(&report, poly)?;
        match run.format {
            Format::Text => println!("{text}"),
            Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("report serializes")),
            Format::Csv => {
                println!("link,counting,polynomial");
                println!(
                    "{}",
                    csv_line(&[report.link.clone(), report.counting.to_string(), text])
                );
            }
        }
        return Ok(());
    }
    match run.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("report serializes")),
        Format::Csv => {
            println!("link,quandle,algebra,counting,phi_im,phi_lie,phi_assoc,phi_two,mode");
            println!(
                "{}",
                csv_line(&[
                    report.link.clone(),
                    report.quandle.clone(),
                    opt_string(&report.algebra),
                    report.counting.to_string(),
                    report.phi_im.to_string(),
                    opt_string(&report.phi_lie),
                    opt_string(&report.phi_assoc),
                    opt_string(&report.phi_two),
                    mode_name(report.mode).to_string(),
                ])
            );
        }
        Format::Text => {
            println!("link: {}", report.link);
            println!("quandle: {}", report.quandle);
            if let Some(a) = &report.algebra {
                println!("algebra: {a}");
            }
            println!("counting: {}", report.counting);
            println!("phi_im: {}", report.phi_im);
            if let (Some(lie), Some(assoc), Some(two)) = (&report.phi_lie, &report.phi_assoc, &report.phi_two) {
                println!("phi_lie: {lie}");
                println!("phi_assoc: {assoc}");
                println!("phi_two: {two}");
                println!("mode: {}", mode_name(report.mode));
            }
            if let Some(ms) = &report.ideal_multiset {
                println!("ideal_multiset:");
                for basis in ms {
                    let rows: Vec<String> = basis
                        .iter()
                        .map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
                        .collect();
                    println!("  rank {}: [{}]", basis.len(), rows.join("; "));
                }
            }
        }
    }
    Ok(())
}

fn mode_name(m: ExponentMode) -> &'static str {
    match m {
        ExponentMode::Cardinality => "card",
        ExponentMode::Rank => "rank",
    }
}

fn expand_links(spec: &str) -> Vec<String> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .flat_map(|s| match s {
            "@prime-links-le7" => PRIME_LINKS_LE7.iter().map(|n| n.to_string()).collect(),
            _ => vec![s.to_string()],
        })
        .collect()
}

/// Terms from the highest exponent down, for ordering table groups.
fn descending_terms(p: &GenPolynomial) -> Vec<(BigUint, u64)> {
    p.terms().iter().rev().map(|(e, &c)| (e.clone(), c)).collect()
}

/// Table groups keyed by ordering key, then rendered polynomial.
type Groups<'a> = BTreeMap<(Vec<(BigUint, u64)>, String), Vec<&'a Row>>;

struct Row {
    link: String,
    counting: u64,
    poly: String,
    key: Vec<(BigUint, u64)>,
}

fn cmd_tabulate(links: &str, run: &RunArgs, poly: Option<Poly>, grouped: bool) -> Result<(), Failure> {
    let names = expand_links(links);
    let target = if names.is_empty() {
        None
    } else {
        Some(resolve_target(run)?)
    };
    let poly = poly.unwrap_or(if run.algebra.is_some() { Poly::Lie } else { Poly::Image });
    let mut rows = Vec::new();
    let mut failed = 0;
    let mut worst_code = 0;
    for name in &names {
        let result = (|| {
            let pd = lookup_link(name).map_err(input)?;
            let report = target.as_ref().expect("resolved").report(name, &pd, mode(run), false)?;
            let text = pick(&report, poly)?;
            let p = match poly {
                Poly::Image => Some(&report.phi_im),
                Poly::Lie => report.phi_lie.as_ref(),
                Poly::Assoc => report.phi_assoc.as_ref(),
                Poly::Two => None,
            };
            let key = p.map(descending_terms).unwrap_or_default();
            Ok::<_, Failure>(Row {
                link: name.clone(),
                counting: report.counting,
                poly: text,
                key,
            })
        })();
        match result {
            Ok(row) => rows.push(row),
            Err(f) => {
                eprintln!("error: {name}: {}", f.message());
                failed += 1;
                worst_code = worst_code.max(f.code());
            }
        }
    }

    if grouped {
        let mut groups: Groups = BTreeMap::new();
        for r in &rows {
            groups.entry((r.key.clone(), r.poly.clone())).or_default().push(r);
        }
        match run.format {
            Format::Text => {
                let width = groups.keys().map(|(_, p)| p.len()).max().unwrap_or(0);
                for ((_, p), members) in &groups {
                    let names: Vec<&str> = members.iter().map(|r| r.link.as_str()).collect();
                    println!("{p:>width$} | {}", names.join(", "));
                }
            }
            Format::Csv => {
                println!("polynomial,links");
                for ((_, p), members) in &groups {
                    let names: Vec<&str> = members.iter().map(|r| r.link.as_str()).collect();
                    println!("{}", csv_line(&[p.clone(), names.join(" ")]));
                }
            }
            Format::Json => {
                let v: Vec<serde_json::Value> = groups
                    .iter()
                    .map(|((_, p), members)| {
                        serde_json::json!({
                            "polynomial": p,
                            "links": members.iter().map(|r| r.link.clone()).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&v).expect("serializes"));
            }
        }
    } else {
        match run.format {
            Format::Text => {
                let width = rows.iter().map(|r| r.link.len()).max().unwrap_or(0);
                for r in &rows {
                    println!("{:<width$}  {:>6}  {}", r.link, r.counting, r.poly);
                }
            }
            Format::Csv => {
                println!("link,counting,polynomial");
                for r in &rows {
                    println!(
                        "{}",
                        csv_line(&[r.link.clone(), r.counting.to_string(), r.poly.clone()])
                    );
                }
            }
            Format::Json => {
                let v: Vec<serde_json::Value> = rows
                    .iter()
                    .map(|r| serde_json::json!({"link": r.link, "counting": r.counting, "polynomial": r.poly}))
                    .collect();
                println!("{}", serde_json::to_string_pretty(&v).expect("serializes"));
            }
        }
    }
    match worst_code {
        0 => Ok(()),
        3 => Err(Failure::Bound(format!("{failed} row(s) skipped"))),
        _ => Err(Failure::Input(format!("{failed} row(s) skipped"))),
    }
}

fn looks_like_pd(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_none_or(|l| l.starts_with('X') || l.starts_with("components:"))
}

fn cmd_validate(path: &Path, kind: Kind, rack: bool) -> Result<(), Failure> {
    let text = read(path)?;
    let kind = match kind {
        Kind::Auto if looks_like_pd(&text) => Kind::Pd,
        Kind::Auto => Kind::Quandle,
        k => k,
    };
    let fail = |e: &dyn std::fmt::Display| Failure::Input(format!("{}: {e}", path.display()));
    match kind {
        Kind::Pd => {
            let pd = parse_pd(&text).map_err(|e| fail(&e))?;
            println!(
                "OK: PD code with {} crossing(s), {} component(s)",
                pd.crossing_count(),
                pd.component_count()
            );
        }
        Kind::Group => {
            let g = Group::parse(&text).map_err(|e| fail(&e))?;
            println!("OK: group of order {}", g.order());
        }
        Kind::Quandle if rack => {
            parse_rack(&text).map_err(|e| fail(&e))?;
            println!("OK: rack");
        }
        Kind::Quandle | Kind::Auto => {
            let q = parse_quandle(&text).map_err(|e| fail(&e))?;
            println!("OK: quandle of order {}", q.n());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Invariant { link, run, poly } => cmd_invariant(link, run, *poly),
        Command::Tabulate {
            links,
            run,
            poly,
            grouped,
        } => cmd_tabulate(links, run, *poly, *grouped),
        Command::Validate { path, kind, rack } => cmd_validate(path, *kind, *rack),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
