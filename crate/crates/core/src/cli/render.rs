use super::tables::{CellResult, Quantity, Status, TableId, TableOptions};
use super::{BoundReport, Format};
use crate::homotopy::SolutionSet;
use crate::network::{to_pretty_json, CoefficientMode, Topology};
use num_bigint::BigUint;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt::Write;

fn edges_json(t: &Topology) -> Value {
    json!({ "buses": t.bus_count(), "edges": t.edges().map(|(i, j)| vec![i, j]).collect::<Vec<_>>() })
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

pub fn bounds(r: &BoundReport, emit_cells: bool, format: Format) -> String {
    let n = r.topology.n();
    let bkk = r.bkk.as_ref().map(|d| d.total.to_string());
    match format {
        Format::Json => {
            let mut v = json!({
                "topology": edges_json(&r.topology),
                "n": n,
                "seed": r.seed,
                "cb": r.cb.to_string(),
                "bblsy": r.bblsy.to_string(),
                "ap": r.ap.to_string(),
                "bkk": bkk,
            });
            if let (true, Some(d)) = (emit_cells, &r.bkk) {
                v["lifting_seed"] = json!(d.lifting.seed);
                v["cells"] = Value::Array(
                    d.cells
                        .iter()
                        .map(|c| {
                            json!({
                                "selection": c.selection.iter().map(|p| p.to_vec()).collect::<Vec<_>>(),
                                "normal": c.inner_normal.numerators.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                                "denominator": c.inner_normal.denominator.to_string(),
                                "volume": c.volume,
                            })
                        })
                        .collect(),
                );
            }
            with_newline(to_pretty_json(&v))
        }
        Format::Csv => {
            let mut s = String::from("buses,n,seed,cb,bblsy,ap,bkk\n");
            let _ = writeln!(
                s,
                "{},{n},{},{},{},{},{}",
                r.topology.bus_count(),
                r.seed,
                r.cb,
                r.bblsy,
                r.ap,
                bkk.clone().unwrap_or_default()
            );
            if let (true, Some(d)) = (emit_cells, &r.bkk) {
                s.push_str("\ncell,selection,normal,denominator,volume\n");
                for (k, c) in d.cells.iter().enumerate() {
                    let sel: Vec<String> = c.selection.iter().map(|[a, b]| format!("{a}-{b}")).collect();
                    let nrm: Vec<String> = c.inner_normal.numerators.iter().map(|x| x.to_string()).collect();
                    let _ = writeln!(s, "{k},{},{},{},{}", sel.join(" "), nrm.join(" "), c.inner_normal.denominator, c.volume);
                }
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "buses  {}", r.topology.bus_count());
            let _ = writeln!(s, "edges  {}", r.topology.edge_count());
            let _ = writeln!(s, "seed   {}", r.seed);
            let _ = writeln!(s, "CB     {}", r.cb);
            let _ = writeln!(s, "BBLSY  {}", r.bblsy);
            let _ = writeln!(s, "AP     {}", r.ap);
            let _ = writeln!(s, "BKK    {}", bkk.unwrap_or_else(|| "skipped".into()));
            if let (true, Some(d)) = (emit_cells, &r.bkk) {
                let _ = writeln!(s, "\n{} mixed cells (lifting seed {})", d.cells.len(), d.lifting.seed);
                for c in &d.cells {
                    let sel: Vec<String> = c.selection.iter().map(|[a, b]| format!("{a}-{b}")).collect();
                    let nrm: Vec<String> = c.inner_normal.numerators.iter().map(|x| x.to_string()).collect();
                    let _ = writeln!(
                        s,
                        "  vol {:>4}  [{}]  normal ({}) / {}",
                        c.volume,
                        sel.join(" "),
                        nrm.join(", "),
                        c.inner_normal.denominator
                    );
                }
            }
            s
        }
    }
}

fn point_json(x: &[num_complex::Complex64]) -> Value {
    Value::Array(x.iter().map(|z| json!([z.re, z.im])).collect())
}

pub fn solution(set: &SolutionSet, t: &Topology, mode: CoefficientMode, seed: u64, format: Format) -> String {
    let c = &set.counts;
    match format {
        Format::Json => with_newline(to_pretty_json(&json!({
            "topology": edges_json(t),
            "mode": mode.name(),
            "seed": seed,
            "bkk": set.bkk.to_string(),
            "counts": {
                "nondeficient": c.nondeficient,
                "deficient": c.deficient,
                "failures": c.failures,
                "paths_tracked": c.paths_tracked,
            },
            "solutions": set.solutions.iter().map(|x| point_json(x)).collect::<Vec<_>>(),
        }))),
        Format::Csv => {
            let d = t.n();
            let mut s = String::from("solution");
            for k in 1..=d {
                let _ = write!(s, ",v{k}_re,v{k}_im");
            }
            for k in 1..=d {
                let _ = write!(s, ",u{k}_re,u{k}_im");
            }
            s.push('\n');
            for (i, x) in set.solutions.iter().enumerate() {
                let _ = write!(s, "{i}");
                for z in x {
                    let _ = write!(s, ",{},{}", z.re, z.im);
                }
                s.push('\n');
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "buses          {}", t.bus_count());
            let _ = writeln!(s, "mode           {}", mode.name());
            let _ = writeln!(s, "seed           {seed}");
            let _ = writeln!(s, "BKK            {}", set.bkk);
            let _ = writeln!(s, "paths tracked  {}", c.paths_tracked);
            let _ = writeln!(s, "nondeficient   {}", c.nondeficient);
            let _ = writeln!(s, "deficient      {}", c.deficient);
            let _ = writeln!(s, "failures       {}", c.failures);
            s
        }
    }
}

fn joined(values: &[BigUint]) -> String {
    if values.is_empty() {
        return "-".into();
    }
    if values.iter().all(|v| *v == values[0]) {
        return values[0].to_string();
    }
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("|")
}

fn shown(q: &super::tables::QuantityResult) -> String {
    match q.status {
        Status::NotComputed => "-".into(),
        Status::Failed => "ERR".into(),
        Status::Mismatch => format!("{}*", joined(&q.computed)),
        Status::Match => joined(&q.computed),
    }
}

fn summary(results: &[CellResult]) -> BTreeMap<&'static str, usize> {
    let mut m = BTreeMap::new();
    for s in [Status::Match, Status::Mismatch, Status::NotComputed, Status::Failed] {
        m.insert(s.name(), 0);
    }
    for q in results.iter().flat_map(|c| &c.quantities) {
        *m.get_mut(q.status.name()).expect("all statuses present") += 1;
    }
    m
}

fn grid(rows: Vec<Vec<String>>) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut s = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, v)| if c == 0 { format!("{v:<w$}", w = widths[c]) } else { format!("{v:>w$}", w = widths[c]) })
            .collect();
        let _ = writeln!(s, "{}", line.join("  ").trim_end());
    }
    s
}

fn text_table(opts: &TableOptions, results: &[CellResult]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "table {}  max-size {}  seed {}  solve {}  mode {}",
        opts.table.name(),
        opts.max_size,
        opts.seed,
        if opts.solve { "yes" } else { "no" },
        opts.mode.name()
    );
    if opts.table == TableId::Tree {
        let _ = writeln!(s, "{} trees per size, {} coefficient draws per tree", opts.trees, opts.draws);
    }
    s.push('\n');
    let quantities: Vec<Quantity> = {
        let mut q: Vec<Quantity> = results.iter().flat_map(|c| c.quantities.iter().map(|q| q.quantity)).collect();
        q.sort();
        q.dedup();
        q
    };
    if opts.table.is_linear() {
        let mut rows = vec![std::iter::once("|B|".to_string())
            .chain(results.iter().map(|c| c.spec.col.to_string()))
            .collect::<Vec<_>>()];
        for &q in &quantities {
            let mut row = vec![q.name().to_string()];
            for c in results {
                row.push(c.quantities.iter().find(|r| r.quantity == q).map(shown).unwrap_or_default());
            }
            rows.push(row);
        }
        s.push_str(&grid(rows));
    } else {
        let rl = if opts.table == TableId::Chain { "c\\m" } else { "c1\\c2" };
        let _ = writeln!(s, "{}", quantities.iter().map(|q| q.name()).collect::<Vec<_>>().join("/"));
        let mut rkeys: Vec<usize> = results.iter().map(|c| c.spec.row).collect();
        let mut ckeys: Vec<usize> = results.iter().map(|c| c.spec.col).collect();
        rkeys.sort_unstable();
        rkeys.dedup();
        ckeys.sort_unstable();
        ckeys.dedup();
        let mut rows = vec![std::iter::once(rl.to_string()).chain(ckeys.iter().map(|c| c.to_string())).collect::<Vec<_>>()];
        for &r in &rkeys {
            let mut row = vec![r.to_string()];
            for &c in &ckeys {
                let cell = results.iter().find(|x| x.spec.row == r && x.spec.col == c);
                row.push(match cell {
                    None => String::new(),
                    Some(x) => quantities
                        .iter()
                        .map(|q| x.quantities.iter().find(|y| y.quantity == *q).map(shown).unwrap_or_else(|| "-".into()))
                        .collect::<Vec<_>>()
                        .join("/"),
                });
            }
            rows.push(row);
        }
        s.push_str(&grid(rows));
    }
    s.push('\n');
    let mut lines = Vec::new();
    for c in results {
        for q in &c.quantities {
            let expected = q.expected.map(|e| e.to_string()).unwrap_or_else(|| "-".into());
            let mut line = vec![c.spec.label.clone(), q.quantity.name().into(), joined(&q.computed), expected, q.status.name().into()];
            if let Some(e) = &q.error {
                line.push(e.clone());
            }
            lines.push(line);
        }
    }
    let mut rows = vec![vec!["cell".to_string(), "quantity".into(), "computed".into(), "expected".into(), "status".into()]];
    rows.extend(lines);
    s.push_str(&grid(rows));
    let notes: Vec<String> = results.iter().filter_map(|c| c.spec.note.as_ref().map(|n| format!("{}: {n}", c.spec.label))).collect();
    if !notes.is_empty() {
        s.push('\n');
        for n in notes {
            let _ = writeln!(s, "note {n}");
        }
    }
    let sum = summary(results);
    let _ = writeln!(
        s,
        "\n{} MATCH, {} MISMATCH, {} NOT-COMPUTED, {} ERROR",
        sum["MATCH"], sum["MISMATCH"], sum["NOT-COMPUTED"], sum["ERROR"]
    );
    s
}

pub fn table(opts: &TableOptions, results: &[CellResult], format: Format) -> String {
    match format {
        Format::Text => text_table(opts, results),
        Format::Csv => {
            let mut s = String::from("table,cell,quantity,computed,expected,status\n");
            for c in results {
                for q in &c.quantities {
                    let _ = writeln!(
                        s,
                        "{},{},{},{},{},{}",
                        opts.table.name(),
                        format!("\"{}\"", c.spec.label),
                        q.quantity.name(),
                        joined(&q.computed),
                        q.expected.map(|e| e.to_string()).unwrap_or_default(),
                        q.status.name()
                    );
                }
            }
            s
        }
        Format::Json => {
            let cells: Vec<Value> = results
                .iter()
                .map(|c| {
                    json!({
                        "cell": c.spec.label,
                        "note": c.spec.note,
                        "instances": c.spec.instances.iter().map(|i| json!({
                            "topology": edges_json(&i.topology),
                            "topology_seed": i.topology_seed,
                            "case_seeds": i.case_seeds,
                        })).collect::<Vec<_>>(),
                        "quantities": c.quantities.iter().map(|q| json!({
                            "quantity": q.quantity.name(),
                            "computed": q.computed.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                            "expected": q.expected.map(|e| e.to_string()),
                            "status": q.status.name(),
                            "error": q.error,
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            with_newline(to_pretty_json(&json!({
                "table": opts.table.name(),
                "max_size": opts.max_size.to_string(),
                "seed": opts.seed,
                "solve": opts.solve,
                "mode": opts.mode.name(),
                "trees": opts.trees,
                "draws": opts.draws,
                "cells": cells,
                "summary": summary(results),
            })))
        }
    }
}
