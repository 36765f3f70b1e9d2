//! Command-line front end for the `forbconf` library.
//!
//! Configurations and matrices are written in the family-spec grammar:
//! `1(k,l)`, `0(k,l)`, `I(k)`, `Ic(k)`, `T(k)`, `Q3(t=N)`, `Q3z(t=N)`, `b01`,
//! literal `[101;011]`, files `lit:@path`, and catalog names such as `F9`.
//! Factors are joined with `x`; families are comma separated.
//!
//! Exit codes: 0 success or contained, 1 a valid negative answer, 2 usage
//! error, 3 internal invariant violation.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use forbconf::analysis::{q3_stability_decompose, q9_classify, Q9Outcome, StabilityParams};
use forbconf::claims::{
    builtin_claims, parse_claims, table3, verify_claims, ClaimStatus, Table3Options, VerifyOptions,
};
use forbconf::constructions::{extremal_construction, extremal_names, ExtremalParams};
use forbconf::family_spec::{parse_family, parse_matrix, parse_spec};
use forbconf::search::goldens::{
    read_goldens, read_witness, witness_file_name, witness_path, write_goldens, GoldenRow,
};
use forbconf::search::{
    ex_graph, ex_hypergraph, forb_exact, induction_decompose, parse_graph, slope_estimate, SearchOptions, Status,
    SumRange,
};
use forbconf::{contains, contains_any, Error, SimpleMatrix};

#[derive(Parser)]
#[command(
    name = "forbconf",
    version,
    about = "Exact computation with forbidden configurations of (0,1)-matrices"
)]
struct Cli {
    /// Time budget per exact search, in seconds.
    #[arg(long, global = true, env = "FORBCONF_TIME_BUDGET", value_name = "SECONDS")]
    budget: Option<f64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether configuration F lies in matrix A.
    Contain { f: String, a: String },
    /// Exact forb(m, family) for each m of a range.
    Forb(ForbArgs),
    /// Print a named lower-bound construction or the matrix of a spec.
    Construct {
        /// Construction name, or a matrix spec such as `I(3)xIc(3)`.
        name: Option<String>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        /// List the named constructions.
        #[arg(long)]
        list: bool,
    },
    /// Check the builtin claims, or those of a claims file.
    Verify {
        #[arg(long)]
        claims: Option<PathBuf>,
        /// Factor sizes for claims about I, Ic and T, as `a..b` (inclusive).
        #[arg(long, default_value = "3..4")]
        sizes: String,
        /// Only claims whose id starts with one of these prefixes.
        #[arg(long)]
        id: Vec<String>,
    },
    /// Small-m evidence for every pair of the results table, as Markdown.
    Table3 {
        #[arg(long, default_value = "4..5")]
        m: String,
    },
    /// Turán numbers ex(m, G) by exhaustive search.
    Ex {
        /// `K(n)`, `K(r,s)`, `C(n)`, `P(n)`, `M(k)` or `E(n; 0-1, 1-2, ...)`.
        graph: String,
        #[arg(long)]
        m: String,
        /// Edge size for hypergraphs; defaults to 2.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Row-deletion or layered decompositions of a matrix.
    Decompose {
        #[command(subcommand)]
        kind: DecomposeCmd,
    },
    /// Block shape of the t-columns of a Q9-avoiding matrix.
    Classify {
        matrix: String,
        #[arg(long)]
        t: usize,
    },
    /// Log-log slope of forb over a range of m (a finite-m trend).
    Slope {
        #[arg(long)]
        family: String,
        #[arg(long)]
        m: String,
    },
}

#[derive(Subcommand)]
enum DecomposeCmd {
    /// Split at one row into B, C and D.
    Induction {
        matrix: String,
        #[arg(long)]
        row: usize,
    },
    /// Layers built on t·I_k copies of a Q3(t)-avoiding matrix.
    Stability {
        matrix: String,
        #[arg(long)]
        t: usize,
        /// Threshold for setting rows aside; defaults to 3t-2.
        #[arg(long)]
        few_ones: Option<usize>,
    },
}

#[derive(clap::Args)]
struct ForbArgs {
    #[arg(long)]
    family: String,
    /// A value or inclusive range `a..b`.
    #[arg(long)]
    m: String,
    /// Allowed column sums: `all`, `=n`, `>=n`, `<=n` or `a..b`.
    #[arg(long, default_value = "all")]
    sums: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write witnesses as matrix files into this directory.
    #[arg(long)]
    witness_dir: Option<PathBuf>,
    /// Compare against a golden CSV file.
    #[arg(long)]
    goldens: Option<PathBuf>,
    /// Rewrite the matching rows of the golden file and their witnesses.
    #[arg(long, requires = "goldens")]
    regenerate_goldens: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Md,
}

/// A command outcome: text for stdout and the exit code.
struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, Error> {
    let bad = || usage(format!("cannot parse range `{s}`; expected n or a..b"));
    let num = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
    let r = match s.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.strip_prefix('=').unwrap_or(b))?,
        None => num(s)?..=num(s)?,
    };
    if r.is_empty() {
        return Err(bad());
    }
    Ok(r)
}

fn search_options(budget: Option<Duration>) -> SearchOptions {
    SearchOptions {
        time_budget: budget,
        ..SearchOptions::default()
    }
}

fn simple(spec: &str) -> Result<SimpleMatrix, Error> {
    SimpleMatrix::new(parse_matrix(spec)?)
}

fn cmd_contain(f: &str, a: &str) -> Result<Outcome, Error> {
    let f = parse_spec(f)?.configuration()?;
    let a = parse_matrix(a)?;
    Ok(match contains(f.matrix(), &a) {
        Some(cert) => {
            if !cert.verify(f.matrix(), &a) {
                return Err(Error::Invariant(
                    "containment certificate failed re-verification".into(),
                ));
            }
            Outcome::ok(format!("CONTAINED\n{}", cert.to_text()))
        }
        None => Outcome {
            text: format!(
                "AVOIDED\nchecked: every placement of a {}x{} configuration in a {}x{} matrix\n",
                f.rows(),
                f.ncols(),
                a.rows(),
                a.ncols()
            ),
            code: 1,
        },
    })
}

fn cmd_forb(args: &ForbArgs, budget: Option<Duration>) -> Result<Outcome, Error> {
    let family = parse_family(&args.family)?;
    let ms = parse_range(&args.m)?;
    let sums: SumRange = args.sums.parse()?;
    let opts = search_options(budget).with_sums(sums);
    let spec_key = if sums == SumRange::ALL {
        args.family.clone()
    } else {
        format!("{} sums {sums}", args.family)
    };
    let mut text = String::new();
    match args.format {
        Format::Csv => text.push_str("m,value,status,witness\n"),
        Format::Md => text.push_str("| m | value | status | witness |\n|---|---|---|---|\n"),
    }
    let mut results = Vec::new();
    for m in ms {
        let r = forb_exact(m, &family, &opts)?;
        let witness = match &args.witness_dir {
            Some(dir) => {
                std::fs::create_dir_all(dir)?;
                let p = dir.join(witness_file_name(&spec_key, m));
                std::fs::write(&p, r.witness.to_text())?;
                p.display().to_string()
            }
            None => "-".to_string(),
        };
        match args.format {
            Format::Csv => writeln!(text, "{m},{},{},{witness}", r.value, r.status),
            Format::Md => writeln!(text, "| {m} | {} | {} | {witness} |", r.value, r.status),
        }
        .expect("write to string");
        results.push((m, r));
    }
    let mut code = 0;
    if let Some(path) = &args.goldens {
        if args.regenerate_goldens {
            regenerate_goldens(path, &spec_key, &results)?;
            writeln!(text, "goldens: rewrote {} row(s) in {}", results.len(), path.display()).expect("write");
        } else {
            let (report, ok) = check_goldens(path, &spec_key, &family, &results)?;
            text.push_str(&report);
            if !ok {
                code = 1;
            }
        }
    }
    Ok(Outcome { text, code })
}

fn regenerate_goldens(
    path: &Path,
    spec: &str,
    results: &[(usize, forbconf::search::SearchResult)],
) -> Result<(), Error> {
    let mut rows: BTreeMap<(String, usize), GoldenRow> = if path.exists() {
        read_goldens(path)?
            .into_iter()
            .map(|r| ((r.family_spec.clone(), r.m), r))
            .collect()
    } else {
        BTreeMap::new()
    };
    for (m, r) in results {
        let row = GoldenRow {
            family_spec: spec.to_string(),
            m: *m,
            value: r.value,
            status: r.status.to_string(),
            witness_file: witness_file_name(spec, *m),
        };
        std::fs::write(witness_path(path, &row), r.witness.to_text())?;
        rows.insert((spec.to_string(), *m), row);
    }
    write_goldens(path, &rows.into_values().collect::<Vec<_>>())
}

fn check_goldens(
    path: &Path,
    spec: &str,
    family: &[forbconf::Configuration],
    results: &[(usize, forbconf::search::SearchResult)],
) -> Result<(String, bool), Error> {
    let rows = read_goldens(path)?;
    let mut text = String::new();
    let mut ok = true;
    for (m, r) in results {
        let Some(g) = rows.iter().find(|g| g.family_spec == spec && g.m == *m) else {
            writeln!(text, "golden m={m}: no row for `{spec}`").expect("write");
            continue;
        };
        let witness = read_witness(path, g)?;
        let witness_ok = witness.is_simple() && witness.ncols() == g.value && contains_any(family, &witness).is_none();
        let line = if !witness_ok {
            ok = false;
            format!(
                "golden m={m}: MISMATCH stored witness does not avoid the family with {} columns",
                g.value
            )
        } else if r.status != Status::Exact {
            format!("golden m={m}: not compared ({}; lower bound {})", r.status, r.value)
        } else if r.value == g.value && r.status.to_string() == g.status {
            format!("golden m={m}: ok ({})", g.value)
        } else {
            ok = false;
            format!(
                "golden m={m}: MISMATCH computed {} {}, golden {} {}",
                r.value, r.status, g.value, g.status
            )
        };
        writeln!(text, "{line}").expect("write");
    }
    Ok((text, ok))
}

fn cmd_construct(
    name: Option<&str>,
    m: Option<usize>,
    k: Option<usize>,
    l: Option<usize>,
    list: bool,
) -> Result<Outcome, Error> {
    if list {
        let mut text = String::new();
        for (n, d) in extremal_names() {
            writeln!(text, "{n:<20} {d}").expect("write");
        }
        return Ok(Outcome::ok(text));
    }
    let name = name.ok_or_else(|| usage("construct needs a name or a matrix spec (see --list)"))?;
    if extremal_names().iter().any(|(n, _)| *n == name) {
        let m = m.ok_or_else(|| usage(format!("construction `{name}` needs --m")))?;
        let a = extremal_construction(name, m, ExtremalParams { k, l })?;
        return Ok(Outcome::ok(format!(
            "# {name} m={m} columns={}\n{}",
            a.ncols(),
            a.to_text()
        )));
    }
    let a = parse_matrix(name)?;
    Ok(Outcome::ok(format!(
        "# {name} rows={} columns={}\n{}",
        a.rows(),
        a.ncols(),
        a.to_text()
    )))
}

fn cmd_verify(claims: Option<&Path>, sizes: &str, ids: &[String], budget: Option<Duration>) -> Result<Outcome, Error> {
    let mut list = match claims {
        Some(p) => parse_claims(&std::fs::read_to_string(p)?)?,
        None => builtin_claims(),
    };
    if !ids.is_empty() {
        list.retain(|c| ids.iter().any(|p| c.id.starts_with(p.as_str())));
    }
    let opts = VerifyOptions {
        sizes: parse_range(sizes)?.collect(),
        time_budget: budget,
    };
    let results = verify_claims(&list, &opts)?;
    let mut text = String::new();
    let count = |s: ClaimStatus| results.iter().filter(|r| r.status == s).count();
    for r in &results {
        writeln!(text, "{}", r.line()).expect("write");
    }
    let failed = count(ClaimStatus::Fail);
    writeln!(
        text,
        "{} claims: {} passed, {failed} failed, {} skipped",
        results.len(),
        count(ClaimStatus::Pass),
        count(ClaimStatus::Skipped)
    )
    .expect("write");
    Ok(Outcome {
        text,
        code: u8::from(failed > 0),
    })
}

fn cmd_ex(graph: &str, m: &str, k: Option<usize>) -> Result<Outcome, Error> {
    let h = parse_graph(graph)?;
    let mut text = String::from("m,ex\n");
    for m in parse_range(m)? {
        let r = match k {
            None | Some(2) => ex_graph(m, &h)?,
            Some(k) => ex_hypergraph(m, k, &h)?,
        };
        writeln!(text, "{m},{}", r.value).expect("write");
    }
    Ok(Outcome::ok(text))
}

fn cmd_decompose(kind: &DecomposeCmd) -> Result<Outcome, Error> {
    match kind {
        DecomposeCmd::Induction { matrix, row } => {
            let a = simple(matrix)?;
            let d = induction_decompose(&a, *row)?;
            let mut text = String::new();
            for (label, part) in [("B", &d.b), ("C", &d.c), ("D", &d.d)] {
                writeln!(text, "{label} ({} columns)\n{}", part.ncols(), part.to_text()).expect("write");
            }
            writeln!(text, "|B| + 2|C| + |D| = {} = |A|", d.weighted_size()).expect("write");
            Ok(Outcome::ok(text))
        }
        DecomposeCmd::Stability { matrix, t, few_ones } => {
            let a = parse_matrix(matrix)?;
            let d = q3_stability_decompose(&a, *t, StabilityParams { few_ones: *few_ones })?;
            d.check_conditions(&a)
                .map_err(|e| Error::Invariant(format!("decomposition fails its conditions: {e}")))?;
            Ok(Outcome::ok(format!("{}conditions 1-3: verified\n", d.to_text())))
        }
    }
}

fn cmd_classify(matrix: &str, t: usize) -> Result<Outcome, Error> {
    let a = simple(matrix)?;
    Ok(match q9_classify(&a, t)? {
        Q9Outcome::Partition(p) => Outcome::ok(format!(
            "{}\na_rows: {:?}\nb_rows: {:?}\nc_rows: {:?}\ncolumns: {:?}\n",
            p.kind, p.a_rows, p.b_rows, p.c_rows, p.columns
        )),
        Q9Outcome::Contains(cert) => Outcome {
            text: format!("CONTAINS Q9\n{}", cert.to_text()),
            code: 1,
        },
    })
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let budget = match cli.budget {
        Some(s) if !(s.is_finite() && s >= 0.0) => {
            return Err(usage("time budget must be a nonnegative number of seconds"))
        }
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    match &cli.cmd {
        Cmd::Contain { f, a } => cmd_contain(f, a),
        Cmd::Forb(args) => cmd_forb(args, budget),
        Cmd::Construct { name, m, k, l, list } => cmd_construct(name.as_deref(), *m, *k, *l, *list),
        Cmd::Verify { claims, sizes, id } => cmd_verify(claims.as_deref(), sizes, id, budget),
        Cmd::Table3 { m } => {
            let mut opts = Table3Options {
                ms: parse_range(m)?,
                ..Table3Options::default()
            };
            if budget.is_some() {
                opts.time_budget = budget;
            }
            Ok(Outcome::ok(table3(&opts)?))
        }
        Cmd::Ex { graph, m, k } => cmd_ex(graph, m, *k),
        Cmd::Decompose { kind } => cmd_decompose(kind),
        Cmd::Classify { matrix, t } => cmd_classify(matrix, *t),
        Cmd::Slope { family, m } => {
            let fam = parse_family(family)?;
            Ok(Outcome::ok(
                slope_estimate(&fam, parse_range(m)?, &search_options(budget))?.to_text(),
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Invariant(_) | Error::SelfCheck { .. } => 3,
                _ => 2,
            })
        }
    }
}
