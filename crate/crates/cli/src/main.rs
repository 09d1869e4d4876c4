use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use hyperspec::assoc::de_components;
use hyperspec::format::{emit_hypergraph, parse_hypergraph};
use hyperspec::invariants::{
    bound_suite, cheeger_constant_capped, cospectral_scan, enumerate_exact_spanning_pairs, enumerate_hypergraphs,
    exact_spanning_pairs_count, spanning_product, standard_corpus, EnumerationSpec, VerificationReport,
    DEFAULT_CHEEGER_CAP,
};
use hyperspec::matrices::{index_labels, matrix_json};
use hyperspec::paths::{profile_of, DistanceMode, PathEngine, DEFAULT_SEARCH_CAP};
use hyperspec::spectra::{integer_char_poly, kind_char_poly, matrix_spectrum, DEFAULT_TOL};
use hyperspec::{Error, Hypergraph, MatrixKind, Vertex};

#[derive(Parser)]
#[command(name = "hyperspec", version, about = "Unified matrices, spectra and exact-path structure of hypergraphs")]
struct Cli {
    /// Eigen residual tolerance.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Size cap for the exhaustive searches (path searches and the Cheeger constant).
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Human-readable output instead of compact JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// One of the unified matrices.
    Matrix {
        #[arg(long)]
        kind: MatrixKind,
        file: PathBuf,
    },
    /// Eigenvalues in descending order, plus the exact characteristic polynomial.
    Spectrum {
        #[arg(long)]
        kind: MatrixKind,
        file: PathBuf,
    },
    /// DE-components.
    Components { file: PathBuf },
    /// Distance between two vertices, or two parts (comma-separated members) in set modes.
    Distance {
        #[arg(long)]
        mode: DistanceMode,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        file: PathBuf,
    },
    /// One diameter, or every diameter with the connectedness profile.
    Diameter {
        #[arg(long)]
        mode: Option<DistanceMode>,
        file: PathBuf,
    },
    /// Exact unified Cheeger constant.
    Cheeger { file: PathBuf },
    /// Number of exact spanning pairs.
    Spanning {
        #[arg(long)]
        enumerate: bool,
        #[arg(long, default_value_t = 1000)]
        limit: usize,
        file: PathBuf,
    },
    /// Runs the bound suite on each file, or on the built-in corpus.
    Verify {
        #[arg(long, conflicts_with = "files")]
        corpus: bool,
        /// Include every record for every instance.
        #[arg(long)]
        full: bool,
        files: Vec<PathBuf>,
    },
    /// Simple hypergraphs on vertices 1..n.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_edge_size: Option<usize>,
        #[arg(long)]
        max_edges: Option<usize>,
        #[arg(long)]
        up_to_iso: bool,
    },
    /// Non-isomorphic cospectral groups among enumerated hypergraphs.
    Scan {
        #[arg(long)]
        kind: MatrixKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_edge_size: Option<usize>,
        #[arg(long)]
        max_edges: Option<usize>,
        /// Keep every labeled hypergraph instead of one per isomorphism class.
        #[arg(long)]
        labeled: bool,
    },
}

enum Failure {
    Hard(Value),
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn read_input(path: &Path) -> Result<Hypergraph, Error> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::InvalidInput(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?
    };
    Ok(parse_hypergraph(&text)?.hypergraph)
}

fn tidy(v: f64) -> Value {
    // eigenvalues within rounding of an integer print as that integer
    let r = v.round();
    if (v - r).abs() <= 1e-9 && r.abs() < 9.0e15 {
        json!(r as i64)
    } else {
        json!(v)
    }
}

fn part_arg(h: &Hypergraph, spec: &str) -> Result<hyperspec::PartSet, Error> {
    let members: Vec<Vertex> = spec.split(',').map(str::trim).filter(|t| !t.is_empty()).map(Vertex::parse).collect();
    h.part_of(&members)
}

fn vertex_arg(h: &Hypergraph, token: &str) -> Result<Vertex, Error> {
    let v = Vertex::parse(token.trim());
    h.vertex_index(&v).map(|_| v.clone()).ok_or_else(|| Error::InvalidVertex(format!("{v} is not a vertex")))
}

fn verify_summary(reports: &[(String, VerificationReport)], full: bool) -> Value {
    let mut hard_by_id: BTreeMap<&str, usize> = BTreeMap::new();
    let mut audit_by_id: BTreeMap<&str, usize> = BTreeMap::new();
    let mut instances = Vec::new();
    for (text, r) in reports {
        let hard: Vec<&str> = r.hard_failures().iter().map(|x| x.id.as_str()).collect();
        let audit: Vec<&str> = r.audit_failures().iter().map(|x| x.id.as_str()).collect();
        for id in &hard {
            *hard_by_id.entry(id).or_default() += 1;
        }
        for id in &audit {
            *audit_by_id.entry(id).or_default() += 1;
        }
        let mut entry = json!({
            "fingerprint": r.fingerprint,
            "hypergraph": text,
            "k": r.k,
            "applicable": r.applicable_count(),
            "hard_failures": hard,
            "audit_failures": audit,
        });
        if full {
            entry["records"] = json!(r.records);
        }
        instances.push(entry);
    }
    json!({
        "instances": reports.len(),
        "hard_failures": hard_by_id.values().sum::<usize>(),
        "audit_failures": audit_by_id.values().sum::<usize>(),
        "hard_by_record": hard_by_id,
        "audit_by_record": audit_by_id,
        "reports": instances,
    })
}

fn run(cli: &Cli) -> Result<Value, Failure> {
    let path_cap = cli.cap.unwrap_or(DEFAULT_SEARCH_CAP);
    let out = match &cli.cmd {
        Cmd::Matrix { kind, file } => matrix_json(&read_input(file)?, *kind),
        Cmd::Spectrum { kind, file } => {
            let h = read_input(file)?;
            let s = matrix_spectrum(&h, *kind, cli.tol)?;
            let mut v = json!({
                "kind": kind.to_string(),
                "order": s.len(),
                "values": s.values.iter().map(|&x| tidy(x)).collect::<Vec<_>>(),
                "residual": s.residual,
            });
            if kind.is_integer() {
                let p = integer_char_poly(&h, *kind)?;
                v["char_poly"] = json!(p);
                v["polynomial"] = json!(p.to_string());
            } else if h.is_loopless() {
                let p = kind_char_poly(&h, *kind)?;
                v["char_poly"] = json!(p.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>());
                v["polynomial"] = json!(p.to_string());
            }
            v
        }
        Cmd::Components { file } => {
            let h = read_input(file)?;
            let de = de_components(&h)?;
            let labels = index_labels(&h);
            let classes: Vec<Value> = de
                .classes
                .iter()
                .map(|c| {
                    json!({
                        "parts": c.members.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>(),
                        "trivial": c.is_trivial,
                        "odd_exact_cycle": c.has_odd_exact_cycle,
                        "induced_group": c.induced_group,
                    })
                })
                .collect();
            json!({
                "count": de.count(),
                "trivial": de.trivial_count(),
                "bipartite_nontrivial": de.bipartite_nontrivial_count(),
                "distinct_induced": de.distinct_induced_count(),
                "classes": classes,
            })
        }
        Cmd::Distance { mode, from, to, file } => {
            let h = read_input(file)?;
            let engine = PathEngine::with_cap(&h, path_cap)?;
            let d = if mode.is_set_mode() {
                engine.set_distance(part_arg(&h, from)?, part_arg(&h, to)?, *mode)?
            } else {
                engine.vertex_distance(&vertex_arg(&h, from)?, &vertex_arg(&h, to)?, *mode)?
            };
            json!({"mode": mode.to_string(), "from": from, "to": to, "distance": d})
        }
        Cmd::Diameter { mode, file } => {
            let h = read_input(file)?;
            let engine = PathEngine::with_cap(&h, path_cap)?;
            match mode {
                Some(m) => json!({"mode": m.to_string(), "diameter": engine.diameter(*m)?}),
                None => {
                    let p = profile_of(&engine)?;
                    let diameters: BTreeMap<String, _> = p.diameters.iter().map(|(m, d)| (m.to_string(), *d)).collect();
                    let mut v = json!(p);
                    v["diameters"] = json!(diameters);
                    v
                }
            }
        }
        Cmd::Cheeger { file } => {
            let h = read_input(file)?;
            json!(cheeger_constant_capped(&h, cli.cap.unwrap_or(DEFAULT_CHEEGER_CAP))?)
        }
        Cmd::Spanning { enumerate, limit, file } => {
            let h = read_input(file)?;
            let count = exact_spanning_pairs_count(&h)?;
            let mut v = json!({"count": count.to_string(), "product": spanning_product(&h)?});
            if *enumerate {
                let pairs = enumerate_exact_spanning_pairs(&h, *limit)?;
                v["pairs"] = json!(pairs.iter().map(|p| p.to_json()).collect::<Vec<_>>());
            }
            v
        }
        Cmd::Verify { corpus, full, files } => {
            let hs: Vec<Hypergraph> = if *corpus {
                standard_corpus()
            } else if files.is_empty() {
                return Err(Error::InvalidInput("verify needs files or --corpus".into()).into());
            } else {
                files.iter().map(|f| read_input(f)).collect::<Result<_, _>>()?
            };
            let reports: Vec<(String, VerificationReport)> =
                hs.iter().map(|h| Ok((emit_hypergraph(h), bound_suite(h)?))).collect::<Result<_, Error>>()?;
            let hard = reports.iter().any(|(_, r)| !r.passed());
            let v = if reports.len() == 1 && !*corpus {
                json!(reports[0].1)
            } else {
                verify_summary(&reports, *full)
            };
            if hard {
                return Err(Failure::Hard(v));
            }
            v
        }
        Cmd::Enumerate { n, max_edge_size, max_edges, up_to_iso } => {
            let mut spec = EnumerationSpec::new(*n, max_edge_size.unwrap_or(*n), *max_edges);
            if *up_to_iso {
                spec = spec.up_to_isomorphism();
            }
            let hs: Vec<String> = enumerate_hypergraphs(spec)?.map(|h| emit_hypergraph(&h)).collect();
            json!({"count": hs.len(), "hypergraphs": hs})
        }
        Cmd::Scan { kind, n, max_edge_size, max_edges, labeled } => {
            let mut spec = EnumerationSpec::new(*n, max_edge_size.unwrap_or(*n), *max_edges);
            if !*labeled {
                spec = spec.up_to_isomorphism();
            }
            let family: Vec<Hypergraph> = enumerate_hypergraphs(spec)?.collect();
            json!(cospectral_scan(&family, *kind)?)
        }
    };
    Ok(out)
}

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().enumerate().map(|(c, s)| if c == 0 { format!("{s:<w$}", w = widths[c]) } else { format!("{s:>w$}", w = widths[c]) }).collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    out
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Number(n) => match n.as_f64() {
            Some(f) if n.is_f64() => format!("{f:.6}"),
            _ => n.to_string(),
        },
        other => other.to_string(),
    }
}

fn pretty(cli: &Cli, v: &Value) -> String {
    match &cli.cmd {
        Cmd::Matrix { kind, file } => {
            let mut rows = Vec::new();
            let labels: Vec<String> = v["index_labels"]
                .as_array()
                .map(|a| a.iter().map(|l| l.as_array().map_or(String::new(), |m| m.iter().map(cell).collect::<Vec<_>>().join(""))).collect())
                .unwrap_or_default();
            let mut head = vec![String::new()];
            head.extend(labels.iter().cloned());
            rows.push(head);
            for (i, r) in v["rows"].as_array().into_iter().flatten().enumerate() {
                let mut row = vec![labels.get(i).cloned().unwrap_or_default()];
                row.extend(r.as_array().into_iter().flatten().map(cell));
                rows.push(row);
            }
            format!("{kind} of {}\n{}", file.display(), table(&rows))
        }
        Cmd::Spectrum { .. } => {
            let mut out = String::new();
            for (i, x) in v["values"].as_array().into_iter().flatten().enumerate() {
                let _ = writeln!(out, "{:>4}  {}", i + 1, cell(x));
            }
            if let Some(p) = v["polynomial"].as_str() {
                let _ = writeln!(out, "char poly: {p}");
            }
            out
        }
        Cmd::Verify { .. } if v.get("records").is_some() => {
            let mut rows = vec![["record", "status", "lhs", "rel", "rhs", "audit"].map(String::from).to_vec()];
            for r in v["records"].as_array().into_iter().flatten() {
                rows.push(vec![
                    cell(&r["id"]),
                    cell(&r["status"]),
                    cell(&r["lhs"]),
                    cell(&r["relation"]),
                    cell(&r["rhs"]),
                    if r["audit_only"] == json!(true) { "audit".into() } else { String::new() },
                ]);
            }
            table(&rows)
        }
        _ => serde_json::to_string_pretty(v).expect("json"),
    }
}

fn emit(cli: &Cli, v: &Value) {
    let mut s = if cli.pretty { pretty(cli, v) } else { v.to_string() };
    if !s.ends_with('\n') {
        s.push('\n');
    }
    // a closed pipe downstream is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            emit(&cli, &v);
            ExitCode::SUCCESS
        }
        Err(Failure::Hard(v)) => {
            emit(&cli, &v);
            ExitCode::from(1)
        }
        Err(Failure::Error(e)) => {
            let (kind, code) = match &e {
                Error::SizeCap(_) | Error::Truncated { .. } => ("size_cap", 3),
                Error::Parse { .. } => ("parse", 2),
                _ => ("input", 2),
            };
            println!("{}", json!({"error": kind, "detail": e.to_string()}));
            ExitCode::from(code)
        }
    }
}
