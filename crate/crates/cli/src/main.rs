//! `lamin`: construct graphs, solve spectra, inspect polynomials, search the
//! unicyclic class and run the claim checks.
//!
//! Reports go to stdout, diagnostics to stderr. Exit codes: 0 success, 1 a
//! checked claim failed, 2 usage error, 3 internal error.

use std::io::{self, Read, Write};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use lamin::charpoly::{char_poly, least_real_root, u_pq_poly, u_prime_poly, u_prime_poly_padded, IntPoly, DEFAULT_ROOT_TOL};
use lamin::eigen::{full_spectrum_with, EigenConfig, DEFAULT_GAP_TOL, DEFAULT_TOL};
use lamin::enumerate::{minimize, Objective, SearchConfig, DESK_BOUND};
use lamin::families::{complete, cycle, s3, s4, star, u_pq, u_prime};
use lamin::graph::{decode_graph6, encode_graph6, Graph};
use lamin::util::round15;
use lamin::verify::{check, Verdict, VerifyError, VerifyConfig, CLAIMS, DEFAULT_SIGN_TOL, DEFAULT_TRIALS};

#[derive(Parser)]
#[command(name = "lamin", version, about = "Least eigenvalues of complements of unicyclic graphs")]
struct Cli {
    /// Residual tolerance for eigenvectors
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Eigenvalues closer than this are treated as tied
    #[arg(long, global = true, default_value_t = DEFAULT_GAP_TOL)]
    gap_tol: f64,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest order for exhaustive work
    #[arg(long, global = true, default_value_t = DESK_BOUND)]
    max_n: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the graph6 string of a family member
    Construct(ConstructArgs),
    /// Spectrum and least eigenpair of a graph6 graph (argument or stdin)
    Spectrum { graph6: Option<String> },
    /// Exact characteristic polynomials
    Poly(PolyArgs),
    /// Exhaustive minimization over the unicyclic graphs of order n
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "lamin-complement", value_parser = Objective::from_str)]
        objective: Objective,
    },
    /// Run claim checks and stream verdicts
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Star,
    Cycle,
    Complete,
    S3,
    S4,
    U,
    Uprime,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    /// Emit the complement instead
    #[arg(long)]
    complement: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    /// Degree-7 polynomial of U(p, q)ᶜ
    F,
    /// Degree-5 polynomial of U'(p)ᶜ
    G,
    /// (λ + 1)² times g, degree 7
    Gbar,
    /// det(A − λI) of a graph6 graph
    Charpoly,
}

#[derive(Args)]
struct PolyArgs {
    #[arg(value_enum)]
    which: Which,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    /// Graph for `charpoly` (default: stdin)
    #[arg(long)]
    graph6: Option<String>,
    /// Also print a certified bracket around the least real root
    #[arg(long)]
    least_root: bool,
    /// Evaluate exactly at an integer, fraction `a/b` or decimal
    #[arg(long, allow_hyphen_values = true)]
    eval: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of lemma2.1, lemma2.2, lemma3.1, lemma3.2, lemma3.3, theorem3.4, remark-un, all
    claim: String,
    /// Inclusive order range `a:b`, or a single order
    #[arg(long)]
    n_range: Option<String>,
    /// Random instances per order for lemma3.1/lemma3.2
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, default_value_t = DEFAULT_SIGN_TOL)]
    sign_tol: f64,
}

enum Failure {
    Usage(String),
    Internal(String),
}

type Res<T> = Result<T, Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn internal(e: impl ToString) -> Failure {
    Failure::Internal(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Res<ExitCode> {
    if !(cli.tol > 0.0) {
        return Err(usage("--tol must be positive"));
    }
    if !(cli.gap_tol >= cli.tol) {
        return Err(usage("--gap-tol must be at least --tol"));
    }
    if cli.max_n > DESK_BOUND {
        eprintln!("warning: --max-n {} is above the default bound {DESK_BOUND}; exhaustive runs may be slow", cli.max_n);
    }
    let out = &mut io::stdout().lock();
    match &cli.cmd {
        Cmd::Construct(a) => construct(a, out)?,
        Cmd::Spectrum { graph6 } => spectrum(cli, graph6.as_deref(), out)?,
        Cmd::Poly(a) => poly(cli, a, out)?,
        Cmd::Search { n, objective } => search(cli, *n, *objective, out)?,
        Cmd::Verify(a) => return verify(cli, a, out),
    }
    Ok(ExitCode::SUCCESS)
}

fn read_graph(arg: Option<&str>) -> Res<Graph> {
    let text = match arg {
        Some(s) => s.to_string(),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(internal)?;
            s
        }
    };
    let line = text.lines().map(str::trim).find(|l| !l.is_empty()).ok_or_else(|| usage("no graph6 input"))?;
    decode_graph6(line).map_err(usage)
}

fn need(v: Option<usize>, flag: &str) -> Res<usize> {
    v.ok_or_else(|| usage(format!("--{flag} is required for this family")))
}

fn emit(out: &mut impl Write, s: &str) -> Res<()> {
    writeln!(out, "{s}").map_err(internal)
}

fn json_line(out: &mut impl Write, v: &impl Serialize) -> Res<()> {
    emit(out, &serde_json::to_string(v).map_err(internal)?)
}

fn csv_rows<R: Serialize>(out: &mut impl Write, rows: &[R]) -> Res<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(internal)?;
    }
    w.flush().map_err(internal)
}

fn construct(a: &ConstructArgs, out: &mut impl Write) -> Res<()> {
    let g = match a.family {
        Family::Star => star(need(a.n, "n")?).map_err(usage)?,
        Family::Cycle => cycle(need(a.n, "n")?).map_err(usage)?,
        Family::Complete => complete(need(a.n, "n")?).map_err(usage)?,
        Family::S3 => s3(need(a.n, "n")?).map_err(usage)?.graph,
        Family::S4 => s4(need(a.n, "n")?).map_err(usage)?.graph,
        Family::U => u_pq(need(a.p, "p")?, need(a.q, "q")?).map_err(usage)?.graph,
        Family::Uprime => u_prime(need(a.p, "p")?).map_err(usage)?.graph,
    };
    let g = if a.complement { g.complement() } else { g };
    // plain graph6 in every format, so it pipes into `spectrum` and `poly`
    emit(out, &encode_graph6(&g))
}

fn rounded(xs: &[f64]) -> Vec<f64> {
    xs.iter().map(|&x| round15(x)).collect()
}

fn spectrum(cli: &Cli, arg: Option<&str>, out: &mut impl Write) -> Res<()> {
    let g = read_graph(arg)?;
    let s = full_spectrum_with(&g, &EigenConfig { tol: cli.tol, gap_tol: cli.gap_tol }).map_err(internal)?;
    match cli.format {
        Format::Json => json_line(
            out,
            &json!({
                "graph6": encode_graph6(&g),
                "order": g.order(),
                "eigenvalues": rounded(&s.eigenvalues),
                "least_value": round15(s.least_value),
                "least_vector": rounded(s.least_vector.as_slice()),
                "least_multiplicity": s.least_multiplicity,
                "least_basis": s.least_basis.iter().map(|x| rounded(x.as_slice())).collect::<Vec<_>>(),
                "residual": s.residual,
            }),
        ),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                index: usize,
                eigenvalue: f64,
            }
            let rows: Vec<Row> =
                s.eigenvalues.iter().enumerate().map(|(index, &x)| Row { index, eigenvalue: round15(x) }).collect();
            csv_rows(out, &rows)
        }
        Format::Text => {
            emit(out, &format!("eigenvalues: {:?}", rounded(&s.eigenvalues)))?;
            emit(out, &format!("least: {} (multiplicity {})", round15(s.least_value), s.least_multiplicity))?;
            emit(out, &format!("least vector: {:?}", rounded(s.least_vector.as_slice())))?;
            emit(out, &format!("residual: {:e}", s.residual))
        }
    }
}

/// Parses `7`, `-3/4` or `-2.25` exactly.
fn parse_rational(s: &str) -> Res<BigRational> {
    let bad = || usage(format!("cannot parse '{s}' as a rational number"));
    if let Some((int, frac)) = s.split_once('.') {
        let digits = format!("{int}{frac}");
        let num = BigInt::from_str(&digits).map_err(|_| bad())?;
        let den = pow10(frac.len());
        return Ok(BigRational::new(num, den));
    }
    BigRational::from_str(s).map_err(|_| bad())
}

fn pow10(k: usize) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, _| acc * 10)
}

fn poly(cli: &Cli, a: &PolyArgs, out: &mut impl Write) -> Res<()> {
    let (name, params, p): (&str, Value, IntPoly) = match a.which {
        Which::F => {
            let (pp, q) = (need(a.p, "p")?, need(a.q, "q")?);
            ("f", json!({ "p": pp, "q": q }), u_pq_poly(pp, q).map_err(usage)?)
        }
        Which::G => {
            let pp = need(a.p, "p")?;
            ("g", json!({ "p": pp }), u_prime_poly(pp).map_err(usage)?)
        }
        Which::Gbar => {
            let pp = need(a.p, "p")?;
            ("gbar", json!({ "p": pp }), u_prime_poly_padded(pp).map_err(usage)?)
        }
        Which::Charpoly => {
            let g = read_graph(a.graph6.as_deref())?;
            ("charpoly", json!({ "graph6": encode_graph6(&g) }), char_poly(&g))
        }
    };
    let mut report = json!({
        "which": name,
        "parameters": params,
        "coefficients": p,
        "degree": p.degree(),
        "display": p.to_string(),
    });
    if a.least_root {
        let b = least_real_root(&p, DEFAULT_ROOT_TOL).map_err(internal)?;
        report["least_root"] = serde_json::to_value(&b).map_err(internal)?;
    }
    if let Some(at) = &a.eval {
        let x = parse_rational(at)?;
        report["eval"] = json!({ "at": x.to_string(), "value": p.eval(&x).to_string() });
    }
    match cli.format {
        Format::Json => json_line(out, &report),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                power: usize,
                coefficient: String,
            }
            let rows: Vec<Row> =
                p.coeffs().iter().enumerate().map(|(power, c)| Row { power, coefficient: c.to_string() }).collect();
            csv_rows(out, &rows)
        }
        Format::Text => {
            emit(out, &p.to_string())?;
            if let Some(b) = report.get("least_root") {
                emit(out, &format!("least root in [{}, {}]", b["lo"].as_str().unwrap_or(""), b["hi"].as_str().unwrap_or("")))?;
            }
            if let Some(e) = report.get("eval") {
                emit(out, &format!("value at {}: {}", e["at"].as_str().unwrap_or(""), e["value"].as_str().unwrap_or("")))?;
            }
            Ok(())
        }
    }
}

fn search(cli: &Cli, n: usize, objective: Objective, out: &mut impl Write) -> Res<()> {
    if n < 3 {
        return Err(usage("search needs n ≥ 3"));
    }
    let cfg = SearchConfig { tol: cli.tol, gap_tol: cli.gap_tol, threads: cli.threads, max_n: cli.max_n };
    let r = minimize(n, objective, &cfg).map_err(internal)?;
    match cli.format {
        Format::Json => json_line(out, &r),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                n: usize,
                objective: &'a str,
                class_size: usize,
                min_value: f64,
                graph6: &'a str,
                canonical_form: &'a str,
                value: f64,
                tie_resolution: String,
            }
            let tie = serde_json::to_value(r.tie_resolution).map_err(internal)?.as_str().unwrap_or("").to_string();
            let rows: Vec<Row> = r
                .minimizers
                .iter()
                .map(|m| Row {
                    n,
                    objective: objective.name(),
                    class_size: r.class_size,
                    min_value: round15(r.min_value),
                    graph6: &m.graph6,
                    canonical_form: m.canonical_form.as_str(),
                    value: round15(m.value),
                    tie_resolution: tie.clone(),
                })
                .collect();
            csv_rows(out, &rows)
        }
        Format::Text => {
            emit(out, &format!("n = {n}, {} graphs, objective {objective}", r.class_size))?;
            emit(out, &format!("minimum {} ({:?})", round15(r.min_value), r.tie_resolution))?;
            for m in &r.minimizers {
                emit(out, &format!("  {}  degrees {:?}", m.graph6, m.degree_sequence))?;
            }
            Ok(())
        }
    }
}

/// Orders each claim runs at when no range is given.
fn default_orders(claim: &str, max_n: usize) -> Vec<usize> {
    match claim {
        "lemma2.1" => (13..=40).collect(),
        "lemma2.2" => (20..=40).collect(),
        "lemma3.1" | "lemma3.2" => (5..=10).collect(),
        "lemma3.3" => (5..=9).collect(),
        "theorem3.4" => (5..=max_n.min(11)).chain(20..=40).collect(),
        _ => (6..=max_n.min(11)).collect(),
    }
}

fn parse_range(s: &str) -> Res<Vec<usize>> {
    let bad = || usage(format!("bad --n-range '{s}' (expected a:b or n)"));
    let (a, b) = match s.split_once(':') {
        Some((a, b)) => (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?),
        None => {
            let n = s.parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    if a > b {
        return Err(bad());
    }
    Ok((a..=b).collect())
}

fn verify(cli: &Cli, a: &VerifyArgs, out: &mut impl Write) -> Res<ExitCode> {
    let claims: Vec<&str> = match a.claim.as_str() {
        "all" => CLAIMS.to_vec(),
        c if CLAIMS.contains(&c) => vec![c],
        other => return Err(usage(format!("unknown claim '{other}'; expected one of {} or all", CLAIMS.join(", ")))),
    };
    let range = a.n_range.as_deref().map(parse_range).transpose()?;
    let cfg = VerifyConfig {
        tol: cli.tol,
        gap_tol: cli.gap_tol,
        threads: cli.threads,
        max_n: cli.max_n,
        seed: cli.seed,
        trials: a.trials,
        sign_tol: a.sign_tol,
    };
    let mut verdicts: Vec<Verdict> = Vec::new();
    let mut all_hold = true;
    for claim in claims {
        let orders = range.clone().unwrap_or_else(|| default_orders(claim, cli.max_n));
        for n in orders {
            let v = check(claim, n, &cfg).map_err(|e| match e {
                VerifyError::Order { .. } => usage(e),
                _ => internal(e),
            })?;
            all_hold &= v.holds;
            match cli.format {
                Format::Json => json_line(out, &v)?,
                Format::Csv => {
                    #[derive(Serialize)]
                    struct Row<'a> {
                        claim_id: &'a str,
                        n: usize,
                        holds: bool,
                        witnesses: usize,
                        notes: String,
                    }
                    let mut w = csv::WriterBuilder::new().has_headers(verdicts.is_empty()).from_writer(&mut *out);
                    w.serialize(Row {
                        claim_id: &v.claim_id,
                        n,
                        holds: v.holds,
                        witnesses: v.witnesses.len(),
                        notes: v.notes.join(" | "),
                    })
                    .map_err(internal)?;
                    w.flush().map_err(internal)?;
                }
                Format::Text => {
                    emit(out, &format!("{:<11} n = {:<3} {}", v.claim_id, n, if v.holds { "holds" } else { "FAILS" }))?;
                    for note in &v.notes {
                        emit(out, &format!("    note: {note}"))?;
                    }
                    for w in v.witnesses.iter().filter(|w| w.kind.is_failure()) {
                        let rival = w.rival_graph6.as_deref().map(|r| format!(" vs {r}")).unwrap_or_default();
                        emit(out, &format!("    witness {}{rival}: {}", w.graph6, w.detail))?;
                    }
                }
            }
            verdicts.push(v);
        }
    }
    if !all_hold {
        let failed: Vec<String> =
            verdicts.iter().filter(|v| !v.holds).map(|v| format!("{} n={}", v.claim_id, v.parameters["n"])).collect();
        eprintln!("failed: {}", failed.join(", "));
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}
