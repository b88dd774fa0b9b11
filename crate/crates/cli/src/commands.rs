//! One function per subcommand. Each writes its report to `out` and returns
//! the process exit code.

use std::io::{self, Write};

use serde_json::{json, Value};
use tutte_core::complex::build_complex_with_bound;
use tutte_core::graph::Family;
use tutte_core::homology::homology;
use tutte_core::theorems::corpus::standard_corpus;
use tutte_core::theorems::{check_tree, run_corpus};
use tutte_core::{recover_tutte, tutte_deletion_contraction, tutte_hat, Graph};

use crate::config::{load_graph, Format, RunConfig, UsageError};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;

fn single_input(cfg: &RunConfig) -> Result<(String, Graph), UsageError> {
    match cfg.inputs.as_slice() {
        [one] => Ok((one.clone(), load_graph(one)?)),
        _ => Err(UsageError("expected exactly one graph".into())),
    }
}

fn io_err(e: io::Error) -> UsageError {
    UsageError(e.to_string())
}

pub fn homology_cmd(cfg: &RunConfig, out: &mut dyn Write) -> Result<u8, UsageError> {
    let (name, g) = single_input(cfg)?;
    let c = build_complex_with_bound(&g, &cfg.system, cfg.max_edges)?;
    let h = homology(&c)?;
    let euler = h.graded_euler();
    match cfg.format {
        Format::Json => {
            let mut v = serde_json::to_value(&h).expect("homology serializes");
            v["graph"] = json!(g.to_string());
            v["system"] = json!(cfg.system.name);
            v["euler"] = serde_json::to_value(&euler).expect("polynomial serializes");
            writeln!(out, "{v}").map_err(io_err)?;
        }
        Format::Text => {
            writeln!(out, "graph  {name}: {g}").map_err(io_err)?;
            writeln!(out, "system {}\n", cfg.system.name).map_err(io_err)?;
            write!(out, "{}", h.to_table(c.top_degree())).map_err(io_err)?;
            writeln!(out, "\neuler  {euler}").map_err(io_err)?;
        }
    }
    Ok(EXIT_OK)
}

pub fn tutte_cmd(cfg: &RunConfig, out: &mut dyn Write) -> Result<u8, UsageError> {
    let (name, g) = single_input(cfg)?;
    let t = tutte_deletion_contraction(&g);
    let hat = tutte_hat(&g);
    let round_trip = recover_tutte(&hat).map(|r| r == t).unwrap_or(false);
    match cfg.format {
        Format::Json => {
            let v = json!({
                "graph": g.to_string(),
                "tutte": t,
                "tutte_hat": hat,
                "round_trip": if round_trip { "pass" } else { "fail" },
            });
            writeln!(out, "{v}").map_err(io_err)?;
        }
        Format::Text => {
            writeln!(out, "graph      {name}: {g}").map_err(io_err)?;
            writeln!(out, "T          {t}").map_err(io_err)?;
            writeln!(out, "T-hat      {hat}").map_err(io_err)?;
            writeln!(out, "round trip {}", if round_trip { "pass" } else { "FAIL" }).map_err(io_err)?;
        }
    }
    Ok(if round_trip { EXIT_OK } else { EXIT_FAILED })
}

pub fn verify_cmd(cfg: &RunConfig, out: &mut dyn Write) -> Result<u8, UsageError> {
    let mut graphs: Vec<Graph> = cfg.inputs.iter().map(|i| load_graph(i)).collect::<Result<_, _>>()?;
    if cfg.corpus {
        graphs.extend(standard_corpus(cfg.seed).into_iter().filter(|g| g.num_edges() <= cfg.max_edges));
    }
    if graphs.is_empty() {
        return Err(UsageError("nothing to verify: give graph files or --corpus".into()));
    }
    if let Some(g) = graphs.iter().find(|g| g.num_edges() > cfg.max_edges) {
        return Err(UsageError(format!("{g} has more than {} edges", cfg.max_edges)));
    }
    let mut reports = run_corpus(&graphs, &cfg.checks, &cfg.system, cfg.seed);
    if cfg.corpus {
        reports.extend((0..=cfg.max_edges.min(6)).map(check_tree));
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    match cfg.format {
        Format::Json => {
            let v: Vec<Value> = reports
                .iter()
                .map(|r| serde_json::to_value(r).expect("report serializes"))
                .collect();
            writeln!(out, "{}", Value::Array(v)).map_err(io_err)?;
        }
        Format::Text => {
            for r in &reports {
                writeln!(out, "{r}").map_err(io_err)?;
            }
            writeln!(out, "\n{} checks, {} passed, {failed} failed", reports.len(), reports.len() - failed)
                .map_err(io_err)?;
        }
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILED })
}

pub fn families_cmd(cfg: &RunConfig, out: &mut dyn Write) -> Result<u8, UsageError> {
    let rows: Vec<(&str, (usize, usize), String)> = Family::ALL
        .iter()
        .map(|f| {
            let (lo, hi) = f.bounds();
            let edges = if *f == Family::Complete { "n(n-1)/2" } else { "n" };
            (f.name(), (lo, hi), edges.to_string())
        })
        .collect();
    match cfg.format {
        Format::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|(name, (lo, hi), edges)| json!({"family": name, "min": lo, "max": hi, "edges": edges}))
                .collect();
            writeln!(out, "{}", Value::Array(v)).map_err(io_err)?;
        }
        Format::Text => {
            writeln!(out, "family     sizes   edges").map_err(io_err)?;
            for (name, (lo, hi), edges) in &rows {
                writeln!(out, "{name:<10} {lo}..={hi:<3} {edges}").map_err(io_err)?;
            }
            writeln!(out, "\nuse <family>:<n> in place of a graph file, e.g. cycle:4").map_err(io_err)?;
        }
    }
    Ok(EXIT_OK)
}
