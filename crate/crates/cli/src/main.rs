use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use brauer_coend::characters::{stable_table, Convention};
use brauer_coend::combinatorics::{enumerate_partitions, enumerate_strict_partitions, FiniteSetPair};
use brauer_coend::graphs::graph_space_with;
use brauer_coend::guard::Limits;
use brauer_coend::presentation::comparison_map_with;
use brauer_coend::selftest::{run_selftest, Level};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "brauer-coend", version, about = "Exact walled Brauer, partition and coend computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Skip the size guardrails.
    #[arg(long, global = true)]
    force_size: bool,
    /// Require bijectivity where only surjectivity is checked by default.
    #[arg(long, global = true)]
    strict: bool,
    #[arg(long, global = true, default_value = "mu-dual")]
    convention: Convention,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension of P, P′ or the graph quotient at (p, q).
    Dims {
        #[arg(value_enum)]
        functor: Functor,
        p: Option<usize>,
        q: Option<usize>,
        #[arg(long = "p", conflicts_with = "p")]
        p_flag: Option<usize>,
        #[arg(long = "q", conflicts_with = "q")]
        q_flag: Option<usize>,
    },
    /// Compare the presented ring with the coend ring.
    Compare {
        #[arg(long)]
        n: Option<usize>,
        /// Inclusive range `a:b`.
        #[arg(long, conflicts_with = "n")]
        n_range: Option<String>,
        #[arg(long)]
        degree: usize,
    },
    /// Stable multiplicity table of a degree.
    Decompose {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        with_y: bool,
    },
    /// Run the built-in property suites.
    Selftest {
        #[arg(value_enum, default_value_t = SelftestLevel::Quick)]
        level: SelftestLevel,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Functor {
    #[value(name = "P")]
    P,
    #[value(name = "P'", alias = "Pprime")]
    PPrime,
    #[value(name = "graphs")]
    Graphs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SelftestLevel {
    Quick,
    Full,
}

/// A report in all three renderings.
struct Report {
    json: Value,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    ok: bool,
}

impl Report {
    fn render(&self, format: Format) -> anyhow::Result<String> {
        Ok(match format {
            Format::Json => serde_json::to_string_pretty(&self.json)? + "\n",
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                String::from_utf8(w.into_inner()?)?
            }
            Format::Text => {
                let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
                for row in &self.rows {
                    for (w, cell) in widths.iter_mut().zip(row) {
                        *w = (*w).max(cell.chars().count());
                    }
                }
                let line = |cells: Vec<&str>| {
                    let padded: Vec<String> = cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, &w)| format!("{c:<w$}"))
                        .collect();
                    padded.join("  ").trim_end().to_string() + "\n"
                };
                let mut out = line(self.header.clone());
                for row in &self.rows {
                    out += &line(row.iter().map(String::as_str).collect());
                }
                out
            }
        })
    }
}

fn parse_range(s: &str) -> anyhow::Result<(usize, usize)> {
    let (a, b) = s.split_once(':').context("expected a range of the form a:b")?;
    let (a, b) = (a.trim().parse()?, b.trim().parse()?);
    if a > b {
        bail!("empty range {s}");
    }
    Ok((a, b))
}

fn dims(functor: Functor, p: usize, q: usize, limits: &Limits) -> anyhow::Result<Report> {
    let (name, dim) = match functor {
        Functor::P => ("P", enumerate_partitions(p, q).len()),
        Functor::PPrime => ("P'", enumerate_strict_partitions(p, q).len()),
        Functor::Graphs => ("graphs", graph_space_with(&FiniteSetPair::standard(p, q), limits)?.dim),
    };
    Ok(Report {
        json: json!({ "functor": name, "p": p, "q": q, "dim": dim }),
        header: vec!["functor", "p", "q", "dim"],
        rows: vec![vec![name.into(), p.to_string(), q.to_string(), dim.to_string()]],
        ok: true,
    })
}

fn compare(ns: Vec<usize>, degree: usize, strict: bool, limits: &Limits) -> anyhow::Result<Report> {
    let results: Vec<_> = ns
        .par_iter()
        .map(|&n| comparison_map_with(n, degree, limits))
        .collect::<Result<_, _>>()?;
    let ok = results
        .iter()
        .all(|c| c.surjective && c.relations_vanish && (!strict || c.injective));
    let rows = results
        .iter()
        .map(|c| {
            vec![
                c.n.to_string(),
                c.degree.to_string(),
                c.dim.to_string(),
                c.coend_dim.to_string(),
                c.surjective.to_string(),
                c.injective.to_string(),
            ]
        })
        .collect();
    let json = if results.len() == 1 {
        serde_json::to_value(&results[0])?
    } else {
        serde_json::to_value(&results)?
    };
    Ok(Report {
        json,
        header: vec!["n", "degree", "dim_pres", "dim_coend", "surjective", "injective"],
        rows,
        ok,
    })
}

fn decompose(degree: usize, with_y: bool, convention: Convention) -> anyhow::Result<Report> {
    let tables = stable_table(degree, with_y, convention)?;
    let mut terms = Vec::new();
    let mut rows = Vec::new();
    for t in &tables {
        for (b, m) in &t.entries {
            terms.push(json!({ "lambda": b.lambda, "mu": b.mu, "mult": m, "y": t.y_monomial }));
            let y: Vec<String> = t.y_monomial.iter().map(|i| format!("y{}", 4 * i)).collect();
            rows.push(vec![b.to_string(), m.to_string(), y.join("·")]);
        }
    }
    let n_min = tables.iter().map(|t| t.n_min).max().unwrap_or(0);
    Ok(Report {
        json: json!({
            "degree": degree,
            "convention": convention.to_string(),
            "terms": terms,
            "n_min": n_min,
        }),
        header: vec!["bipartition", "mult", "y"],
        rows,
        ok: true,
    })
}

fn selftest(level: SelftestLevel, n_max: usize) -> anyhow::Result<Report> {
    let level = match level {
        SelftestLevel::Quick => Level::Quick,
        SelftestLevel::Full => Level::Full,
    };
    let summary = run_selftest(level, n_max);
    let mut rows: Vec<Vec<String>> = summary
        .checks
        .iter()
        .map(|c| vec![if c.passed { "PASS" } else { "FAIL" }.into(), c.name.clone(), c.detail.clone()])
        .collect();
    rows.push(vec![
        "TOTAL".into(),
        format!("{} passed, {} failed", summary.passed, summary.failed),
        String::new(),
    ]);
    Ok(Report {
        json: serde_json::to_value(&summary)?,
        header: vec!["status", "check", "detail"],
        rows,
        ok: summary.all_passed(),
    })
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let limits = if cli.force_size { Limits::forced() } else { Limits::from_env() };
    let report = match cli.command {
        Command::Dims {
            functor,
            p,
            q,
            p_flag,
            q_flag,
        } => {
            let p = p.or(p_flag).context("missing p")?;
            let q = q.or(q_flag).context("missing q")?;
            dims(functor, p, q, &limits)?
        }
        Command::Compare { n, n_range, degree } => {
            let ns: Vec<usize> = match (n, n_range) {
                (Some(n), _) => vec![n],
                (None, Some(r)) => {
                    let (a, b) = parse_range(&r)?;
                    (a..=b).collect()
                }
                (None, None) => bail!("pass --n or --n-range"),
            };
            compare(ns, degree, cli.strict, &limits)?
        }
        Command::Decompose { degree, with_y } => decompose(degree, with_y, cli.convention)?,
        Command::Selftest { level, n_max } => selftest(level, n_max)?,
    };
    let text = report.render(cli.format)?;
    match &cli.out {
        Some(path) => File::create(path)
            .and_then(|mut f| f.write_all(text.as_bytes()))
            .with_context(|| format!("writing {}", path.display()))?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(report.ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
