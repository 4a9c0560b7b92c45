use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;
use supertable::arcs::{enumerate_arc_sets, nst};
use supertable::chartable::{
    build_matrix, determinant, determinant_formula, numeric_determinant, run_checks, Check,
    MatrixKind,
};
use supertable::sequences::{
    aitken, arcs_seq, b3_counts, b3_recursion, b_counts, bell_numbers, dim_seq, nst_seq, Route,
};

/// Largest `n` for `table` and `verify` without `--allow-large`.
const TABLE_CAP: u32 = 7;
/// Largest `n` (or `--max-n`) for anything that enumerates set partitions.
const ENUMERATION_CAP: u32 = 12;

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "supertable",
    version,
    about = "Supercharacter tables of unitriangular groups over Z[q, q^-1]"
)]
struct Cli {
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the set partitions of [n] in total order.
    Partitions {
        #[arg(long)]
        n: u32,
        /// Include |λ|, dim, dimv, rnode and nst(λ,λ).
        #[arg(long)]
        stats: bool,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
        #[arg(long)]
        allow_large: bool,
    },
    /// Emit a transition matrix.
    Table {
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_kind)]
        kind: MatrixKind,
        /// Specialize q to this nonzero integer; entries become exact rationals.
        #[arg(long, value_parser = parse_q, allow_negative_numbers = true)]
        q: Option<BigInt>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        allow_large: bool,
    },
    /// Check the LU factorization and related identities; prints a JSON report.
    Verify {
        #[arg(long)]
        n: u32,
        /// Comma-separated check names; defaults to all checks.
        #[arg(long, value_delimiter = ',', value_parser = parse_check)]
        checks: Vec<Check>,
        #[arg(long)]
        allow_large: bool,
    },
    /// Determinant of the supercharacter table.
    Det {
        #[arg(long)]
        n: u32,
        /// Also evaluate the table at this integer and eliminate.
        #[arg(long, value_parser = parse_q, allow_negative_numbers = true)]
        q: Option<BigInt>,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
        #[arg(long)]
        allow_large: bool,
    },
    /// Integer sequences attached to set partitions.
    Seq {
        #[arg(long, value_enum)]
        name: SeqName,
        #[arg(long)]
        max_n: u32,
        #[arg(long, value_enum, default_value_t = RouteArg::Formula)]
        route: RouteArg,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Pretty,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeqName {
    Arcs,
    Dim,
    Nst,
    Bell,
    Aitken,
    B3,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Enumerate,
    Formula,
    Both,
}

fn parse_kind(s: &str) -> Result<MatrixKind, String> {
    let kind: MatrixKind = s.parse().map_err(|e: supertable::Error| e.to_string())?;
    if MatrixKind::BUILDABLE.contains(&kind) {
        Ok(kind)
    } else {
        Err("expected one of chi-kappa, rho-kappa, kappa-rho, chi-rho".into())
    }
}

fn parse_q(s: &str) -> Result<BigInt, String> {
    let q: BigInt = s.parse().map_err(|_| format!("{s:?} is not an integer"))?;
    if q == BigInt::from(0) {
        Err("q must be nonzero".into())
    } else {
        Ok(q)
    }
}

fn parse_check(s: &str) -> Result<Check, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = Check::ALL.iter().map(|c| c.name()).collect();
        format!("unknown check {s:?}; expected one of {}", names.join(", "))
    })
}

/// A rejected argument combination or range; exits with the usage status.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn check_cap(n: u32, cap: u32, allow_large: bool, what: &str) -> Result<()> {
    if n > cap && !allow_large {
        return Err(usage(format!(
            "{what} is capped at n <= {cap}; pass --allow-large to exceed it"
        )));
    }
    Ok(())
}

/// Rendered output and whether the command's checks all held.
struct Emitted {
    text: String,
    ok: bool,
}

impl From<String> for Emitted {
    fn from(text: String) -> Self {
        Emitted { text, ok: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command)
        .and_then(|out| write_output(cli.output.as_ref(), &out.text).map(|()| out.ok))
    {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAILURE),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::from(EXIT_FAILURE)
            }
        }
    }
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<Emitted> {
    match command {
        Command::Partitions {
            n,
            stats,
            format,
            allow_large,
        } => {
            check_cap(n, ENUMERATION_CAP, allow_large, "partitions")?;
            Ok(partitions(n, stats, format).into())
        }
        Command::Table {
            n,
            kind,
            q,
            format,
            allow_large,
        } => {
            check_cap(n, TABLE_CAP, allow_large, "table")?;
            let m = build_matrix(n, kind)?;
            let text = match q {
                None => match format {
                    Format::Csv => m.to_csv(),
                    Format::Json => m.to_json() + "\n",
                    Format::Pretty => m.to_pretty(),
                },
                Some(q) => {
                    let r = m.evaluate(&q.into())?;
                    match format {
                        Format::Csv => r.to_csv(),
                        Format::Json => r.to_json() + "\n",
                        Format::Pretty => r.to_pretty(),
                    }
                }
            };
            Ok(text.into())
        }
        Command::Verify {
            n,
            checks,
            allow_large,
        } => {
            check_cap(n, TABLE_CAP, allow_large, "verify")?;
            let checks = if checks.is_empty() {
                Check::ALL.to_vec()
            } else {
                checks
            };
            let report = run_checks(n, &checks)?;
            Ok(Emitted {
                text: report.to_json() + "\n",
                ok: report.passed,
            })
        }
        Command::Det {
            n,
            q,
            format,
            allow_large,
        } => {
            check_cap(n, TABLE_CAP, allow_large, "det")?;
            det(n, q, format)
        }
        Command::Seq {
            name,
            max_n,
            route,
            format,
        } => seq(name, max_n, route, format),
    }
}

fn partitions(n: u32, stats: bool, format: Format) -> String {
    let sets = enumerate_arc_sets(n);
    let row = |s: &supertable::ArcSet| {
        (
            s.canonical(),
            s.arc_count(),
            s.dim_stat(),
            s.dimv(),
            s.rnode(),
            nst(s.arcs(), s.arcs()),
        )
    };
    match format {
        Format::Json => {
            let items: Vec<serde_json::Value> = sets
                .iter()
                .map(|s| {
                    if !stats {
                        return json!(s.canonical());
                    }
                    let (canonical, arcs, dim, dimv, rnode, nest) = row(s);
                    json!({
                        "partition": canonical,
                        "arcs": arcs,
                        "dim": dim,
                        "dimv": dimv.parts(),
                        "rnode": rnode.parts(),
                        "nst": nest,
                    })
                })
                .collect();
            serde_json::to_string_pretty(&items).expect("json") + "\n"
        }
        Format::Csv => {
            let mut out = String::from(if stats {
                "partition,arcs,dim,dimv,rnode,nst\n"
            } else {
                "partition\n"
            });
            for s in &sets {
                if stats {
                    let (c, a, d, dv, rn, ns) = row(s);
                    out.push_str(&format!("{c},{a},{d},\"{dv}\",\"{rn}\",{ns}\n"));
                } else {
                    out.push_str(&s.canonical());
                    out.push('\n');
                }
            }
            out
        }
        Format::Pretty => {
            let width = sets.iter().map(|s| s.canonical().len()).max().unwrap_or(0);
            let mut out = String::new();
            for s in &sets {
                if stats {
                    let (c, a, d, dv, rn, ns) = row(s);
                    out.push_str(&format!(
                        "{c:<width$}  arcs={a} dim={d} dimv={dv} rnode={rn} nst={ns}\n"
                    ));
                } else {
                    out.push_str(&s.canonical());
                    out.push('\n');
                }
            }
            out
        }
    }
}

fn det(n: u32, q: Option<BigInt>, format: Format) -> Result<Emitted> {
    let symbolic = determinant(n)?;
    let formula = determinant_formula(n)?;
    let symbolic_match = symbolic == formula;
    let numeric = match &q {
        Some(q0) => {
            let value = numeric_determinant(n, q0)?;
            let expected = formula.eval(&q0.clone().into())?;
            let matches = expected.is_integer() && expected.to_integer() == value;
            Some((q0.clone(), value, expected, matches))
        }
        None => None,
    };
    let ok = symbolic_match && numeric.as_ref().is_none_or(|n| n.3);
    let text = match format {
        Format::Json => {
            let mut doc = json!({
                "n": n,
                "symbolic": symbolic.to_string(),
                "formula": formula.to_string(),
                "match": symbolic_match,
            });
            if let Some((q0, value, expected, matches)) = &numeric {
                doc["q"] = json!(q0.to_string());
                doc["numeric"] = json!(value.to_string());
                doc["formula_at_q"] = json!(expected.to_string());
                doc["numeric_match"] = json!(matches);
            }
            serde_json::to_string_pretty(&doc).expect("json") + "\n"
        }
        Format::Csv => {
            let mut out = String::from("quantity,value\n");
            out.push_str(&format!(
                "symbolic,{symbolic}\nformula,{formula}\nmatch,{symbolic_match}\n"
            ));
            if let Some((q0, value, expected, matches)) = &numeric {
                out.push_str(&format!(
                    "q,{q0}\nnumeric,{value}\nformula_at_q,{expected}\nnumeric_match,{matches}\n"
                ));
            }
            out
        }
        Format::Pretty => {
            let mut out =
                format!("symbolic: {symbolic}\nformula:  {formula}\nmatch:    {symbolic_match}\n");
            if let Some((q0, value, expected, matches)) = &numeric {
                out.push_str(&format!(
                    "numeric at q={q0}: {value}\nformula at q={q0}: {expected}\nnumeric match: {matches}\n"
                ));
            }
            out
        }
    };
    Ok(Emitted { text, ok })
}

/// One output row of `seq`: index tuple plus one or two values.
struct SeqRow {
    index: Vec<u32>,
    enumerate: Option<String>,
    formula: Option<String>,
}

fn seq(name: SeqName, max_n: u32, route: RouteArg, format: Format) -> Result<Emitted> {
    if max_n < 1 {
        return Err(usage("--max-n must be at least 1"));
    }
    let enumerates = route != RouteArg::Formula;
    // Aitken's array by enumeration needs partitions of [max_n + 1].
    let enum_cap = if name == SeqName::Aitken {
        ENUMERATION_CAP - 1
    } else {
        ENUMERATION_CAP
    };
    if enumerates && max_n > enum_cap {
        return Err(usage(format!(
            "enumeration routes are capped at --max-n <= {enum_cap}"
        )));
    }
    if name == SeqName::B3 && max_n < 3 {
        return Err(usage("b3 starts at n=3; use --max-n >= 3"));
    }
    if format == Format::Pretty && name == SeqName::Aitken && route == RouteArg::Formula {
        return Ok(aitken(max_n)?.to_staggered().into());
    }

    let want_e = route != RouteArg::Formula;
    let want_f = route != RouteArg::Enumerate;
    let mut rows: Vec<SeqRow> = Vec::new();
    let mut push = |index: Vec<u32>, e: Option<String>, f: Option<String>| {
        rows.push(SeqRow {
            index,
            enumerate: e,
            formula: f,
        });
    };
    match name {
        SeqName::Arcs | SeqName::Dim | SeqName::Nst => {
            let f: fn(u32, Route) -> supertable::Result<num_bigint::BigUint> = match name {
                SeqName::Arcs => arcs_seq,
                SeqName::Dim => dim_seq,
                _ => nst_seq,
            };
            for n in 1..=max_n {
                let e = want_e
                    .then(|| f(n, Route::Enumerate))
                    .transpose()?
                    .map(|v| v.to_string());
                let g = want_f
                    .then(|| f(n, Route::Formula))
                    .transpose()?
                    .map(|v| v.to_string());
                push(vec![n], e, g);
            }
        }
        SeqName::Bell => {
            let rec = bell_numbers(max_n);
            for n in 1..=max_n {
                let e = want_e.then(|| enumerate_arc_sets(n).len().to_string());
                let g = want_f.then(|| rec[n as usize].to_string());
                push(vec![n], e, g);
            }
        }
        SeqName::Aitken => {
            let table = aitken(max_n)?;
            for n in 1..=max_n {
                // a[n][k] counts partitions of [n+1] containing the arc k-(n+1).
                let counts = if want_e { Some(b_counts(n + 1)?) } else { None };
                for k in 1..=n {
                    let e = counts.as_ref().map(|c| c[k as usize - 1].to_string());
                    let g = want_f.then(|| table.get(n, k).to_string());
                    push(vec![n, k], e, g);
                }
            }
        }
        SeqName::B3 => {
            let rec = if want_f {
                Some(b3_recursion(max_n)?)
            } else {
                None
            };
            for n in 3..=max_n {
                let counts = if want_e { Some(b3_counts(n)?) } else { None };
                for k in 2..n {
                    for j in 1..k {
                        let e = counts.as_ref().map(|c| c[&(k, j)].to_string());
                        let g = rec
                            .as_ref()
                            .map(|r| r.get(n, k, j).expect("in range").to_string());
                        push(vec![n, k, j], e, g);
                    }
                }
            }
        }
    }

    let ok = rows.iter().all(|r| match (&r.enumerate, &r.formula) {
        (Some(a), Some(b)) => a == b,
        _ => true,
    });
    let text = render_seq(name, &rows, route, format);
    // Disagreement under --route both is a reported result, not an error, for b3.
    Ok(Emitted {
        text,
        ok: ok || name == SeqName::B3,
    })
}

fn index_names(name: SeqName) -> &'static [&'static str] {
    match name {
        SeqName::Aitken => &["n", "k"],
        SeqName::B3 => &["n", "k", "j"],
        _ => &["n"],
    }
}

fn render_seq(name: SeqName, rows: &[SeqRow], route: RouteArg, format: Format) -> String {
    let idx = index_names(name);
    let value = |r: &SeqRow| {
        r.formula
            .clone()
            .or_else(|| r.enumerate.clone())
            .unwrap_or_default()
    };
    match format {
        Format::Csv | Format::Pretty => {
            let sep = if format == Format::Csv { "," } else { " " };
            let mut header: Vec<&str> = idx.to_vec();
            if route == RouteArg::Both {
                header.extend(["enumerate", "formula", "match"]);
            } else {
                header.push("value");
            }
            let mut out = header.join(sep) + "\n";
            for r in rows {
                let mut cells: Vec<String> = r.index.iter().map(u32::to_string).collect();
                if route == RouteArg::Both {
                    let (e, f) = (
                        r.enumerate.clone().unwrap_or_default(),
                        r.formula.clone().unwrap_or_default(),
                    );
                    cells.push(e.clone());
                    cells.push(f.clone());
                    cells.push((e == f).to_string());
                } else {
                    cells.push(value(r));
                }
                out.push_str(&cells.join(sep));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    let mut obj = serde_json::Map::new();
                    for (key, v) in idx.iter().zip(&r.index) {
                        obj.insert((*key).to_string(), json!(v));
                    }
                    if route == RouteArg::Both {
                        obj.insert("enumerate".into(), json!(r.enumerate));
                        obj.insert("formula".into(), json!(r.formula));
                        obj.insert("match".into(), json!(r.enumerate == r.formula));
                    } else {
                        obj.insert("value".into(), json!(value(r)));
                    }
                    serde_json::Value::Object(obj)
                })
                .collect();
            serde_json::to_string_pretty(&items).expect("json") + "\n"
        }
    }
}
