use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};

use dlchow::dlclass::{
    components_x, components_y_ss, equality_classes_streaming, transition_matrix, ClassKind, ClassReport,
    ComputationPath, EqualityGroup,
};
use dlchow::hecke::HeckeElement;
use dlchow::permgroup::{all_elements, Permutation, Twist};
use dlchow::polyring::QPoly;
use dlchow::schubert::{render_combination, schubert_poly, FlagRing};

use crate::error::CliError;
use crate::{Format, GlobalArgs};

type Out<'a> = &'a mut dyn Write;

fn elements(g: &GlobalArgs, w: Option<&str>) -> Result<Vec<Permutation>, CliError> {
    match w {
        Some(s) => Ok(vec![Permutation::parse(s, g.n)?]),
        None => Ok(all_elements(g.n).collect()),
    }
}

fn open_ring(g: &GlobalArgs) -> Result<FlagRing, CliError> {
    let ring = FlagRing::with_cache_dir(g.n, &g.cache_dir)?;
    let load = ring.cache_load();
    if load.rebuilt {
        let msg = format!(
            "structure-constant cache in {} was corrupt ({} bad lines); rebuilt from {} good records",
            g.cache_dir.display(),
            load.corrupt_lines,
            load.loaded
        );
        if g.strict_cache {
            return Err(CliError::Cache(msg));
        }
        eprintln!("warning: {msg}");
    }
    Ok(ring)
}

fn q_value(g: &GlobalArgs) -> Option<BigRational> {
    g.q.map(|q| BigRational::from_integer(BigInt::from(q)))
}

fn print_json(out: Out, value: &Value) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn csv_writer(out: Out<'_>) -> csv::Writer<&mut dyn Write> {
    csv::Writer::from_writer(out)
}

/// One line per element, or just the value when there is a single element.
fn print_labelled(out: Out, rows: &[(Permutation, String)]) -> Result<(), CliError> {
    if let [(_, value)] = rows {
        writeln!(out, "{value}")?;
    } else {
        for (w, value) in rows {
            writeln!(out, "{w}: {value}")?;
        }
    }
    Ok(())
}

pub fn class(
    g: &GlobalArgs,
    w: Option<&str>,
    kind: ClassKind,
    path: ComputationPath,
    out: Out,
) -> Result<(), CliError> {
    let ws = elements(g, w)?;
    let ring = open_ring(g)?;
    let twist: Twist = g.twist.into();
    let reports: Vec<ClassReport> =
        ws.par_iter().map(|w| ClassReport::compute(&ring, w, twist, kind, path)).collect::<Result<_, _>>()?;
    ring.finish()?;
    let reports: Vec<ClassReport> = match g.q {
        Some(q) => reports.iter().map(|r| r.evaluated(q)).collect(),
        None => reports,
    };
    match g.format {
        Format::Text => {
            let rows: Vec<_> = reports.iter().map(|r| (r.w.clone(), r.vector.render())).collect();
            print_labelled(out, &rows)?;
        }
        Format::Json => {
            let value = match reports.as_slice() {
                [single] => single.to_json(),
                many => Value::Array(many.iter().map(ClassReport::to_json).collect()),
            };
            print_json(out, &value)?;
        }
        Format::Csv => {
            let mut wr = csv_writer(out);
            wr.write_record(["w", "basis_element", "coefficient"])?;
            for r in &reports {
                for row in r.csv_rows() {
                    wr.write_record(&row)?;
                }
            }
            wr.flush()?;
        }
    }
    Ok(())
}

pub fn components(g: &GlobalArgs, w: Option<&str>, kind: ClassKind, out: Out) -> Result<(), CliError> {
    let ws = elements(g, w)?;
    let twist: Twist = if kind == ClassKind::DLFrobenius { g.twist.into() } else { Twist::Trivial };
    let q = q_value(g);
    let mut rows = Vec::with_capacity(ws.len());
    for w in ws {
        let count = match kind {
            ClassKind::DLFrobenius => {
                let p = components_x(&w, twist);
                match &q {
                    Some(v) => p.eval(v)?.to_string(),
                    None => p.render("q"),
                }
            }
            ClassKind::RegSemisimple => components_y_ss(&w).to_string(),
            ClassKind::RegUnipotent => "1".to_string(),
        };
        rows.push((w, count));
    }
    match g.format {
        Format::Text => print_labelled(out, &rows)?,
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|(w, c)| {
                    json!({ "n": g.n, "w": w.word_string(), "twist": twist.as_str(), "kind": kind.as_str(), "components": c })
                })
                .collect();
            let value = if items.len() == 1 { items[0].clone() } else { Value::Array(items) };
            print_json(out, &value)?;
        }
        Format::Csv => {
            let mut wr = csv_writer(out);
            wr.write_record(["w", "components"])?;
            for (w, c) in &rows {
                wr.write_record([w.word_string(), c.clone()])?;
            }
            wr.flush()?;
        }
    }
    Ok(())
}

pub fn transition(g: &GlobalArgs, out: Out) -> Result<(), CliError> {
    let ring = open_ring(g)?;
    let t = transition_matrix(&ring, g.twist.into())?;
    ring.finish()?;
    let q = q_value(g);
    let entry = |r: usize, c: usize| -> Result<String, CliError> {
        let e = t.entry(r, c);
        Ok(match &q {
            Some(v) => e.eval(v)?.to_string(),
            None => e.render("q"),
        })
    };
    let det_at_q = match &q {
        Some(v) => Some(t.det.eval(v)?.to_string()),
        None => None,
    };
    let size = t.size();
    match g.format {
        Format::Text => {
            let names: Vec<String> = t.order.iter().map(|w| w.word_string()).collect();
            writeln!(out, "columns: {}", names.join(", "))?;
            for (r, name) in names.iter().enumerate() {
                let cells: Vec<String> = (0..size).map(|c| entry(r, c)).collect::<Result<_, _>>()?;
                writeln!(out, "[{name}]: {}", cells.join(", "))?;
            }
            writeln!(out, "det = {}", t.factorization)?;
            if let Some(d) = det_at_q {
                writeln!(out, "det at q = {}: {d}", g.q.unwrap_or_default())?;
            }
        }
        Format::Json => {
            let matrix: Vec<Vec<String>> = (0..size)
                .map(|r| (0..size).map(|c| entry(r, c)).collect::<Result<_, _>>())
                .collect::<Result<_, _>>()?;
            let mut value = json!({
                "n": t.n,
                "twist": t.twist.as_str(),
                "order": t.order.iter().map(|w| w.word_string()).collect::<Vec<_>>(),
                "matrix": matrix,
                "det": t.det.render("q"),
                "factorization": t.factorization.to_string(),
            });
            if let Some(d) = det_at_q {
                value["det_at_q"] = Value::String(d);
            }
            print_json(out, &value)?;
        }
        Format::Csv => {
            let mut wr = csv_writer(out);
            wr.write_record(["row", "column", "entry"])?;
            for r in 0..size {
                for c in 0..size {
                    wr.write_record([t.order[r].word_string(), t.order[c].word_string(), entry(r, c)?])?;
                }
            }
            wr.flush()?;
        }
    }
    Ok(())
}

fn group_json(g: &EqualityGroup) -> Value {
    json!({
        "members": g.members.iter().map(|w| w.word_string()).collect::<Vec<_>>(),
        "explanation": g.explanation.as_str(),
    })
}

fn group_csv(index: usize, group: &EqualityGroup) -> Result<Vec<u8>, CliError> {
    let mut wr = csv::Writer::from_writer(Vec::new());
    for w in &group.members {
        wr.write_record([index.to_string(), w.word_string(), group.explanation.to_string()])?;
    }
    wr.into_inner().map_err(|e| CliError::Runtime(e.to_string()))
}

/// Text and CSV rows are written as each group is settled.
pub fn equal_classes(g: &GlobalArgs, out: Out) -> Result<(), CliError> {
    let ring = open_ring(g)?;
    if g.format == Format::Csv {
        writeln!(out, "group,w,explanation")?;
    }
    let mut failure: Option<CliError> = None;
    let mut count = 0usize;
    let groups = equality_classes_streaming(&ring, |group| {
        count += 1;
        let result = match g.format {
            Format::Text => {
                let names: Vec<String> = group.members.iter().map(|w| w.word_string()).collect();
                writeln!(out, "{{{}}}: {}", names.join(", "), group.explanation).map_err(CliError::from)
            }
            Format::Csv => group_csv(count, group).and_then(|bytes| out.write_all(&bytes).map_err(CliError::from)),
            Format::Json => Ok(()),
        };
        if let Err(e) = result.and_then(|_| out.flush().map_err(CliError::from)) {
            failure.get_or_insert(e);
        }
    })?;
    ring.finish()?;
    if let Some(e) = failure {
        return Err(e);
    }
    match g.format {
        Format::Text if groups.is_empty() => writeln!(out, "no nontrivial groups")?,
        Format::Json => {
            let value = json!({ "n": g.n, "groups": groups.iter().map(group_json).collect::<Vec<_>>() });
            print_json(out, &value)?;
        }
        _ => {}
    }
    Ok(())
}

pub fn hecke(g: &GlobalArgs, expr: &str, out: Out) -> Result<(), CliError> {
    let h = HeckeElement::parse(expr, g.n)?;
    let values: Vec<(String, QPoly)> = match q_value(g) {
        Some(v) => h
            .eval(&v)?
            .into_iter()
            .rev()
            .map(|(w, c)| (format!("T[{}]", w.word_string()), QPoly::constant(c)))
            .collect(),
        None => {
            let mut t: Vec<_> = h.terms().map(|(w, c)| (format!("T[{}]", w.word_string()), c.to_rational())).collect();
            t.reverse();
            t
        }
    };
    let rendered = render_combination(values.iter().map(|(b, c)| (c, b.clone())), "x");
    let terms: Vec<(String, String)> = values.iter().map(|(b, c)| (b.clone(), c.render("x"))).collect();
    match g.format {
        Format::Text => writeln!(out, "{rendered}")?,
        Format::Json => {
            let items: Vec<Value> = terms.iter().map(|(b, c)| json!({ "basis_element": b, "coeff": c })).collect();
            print_json(out, &json!({ "n": g.n, "expr": expr, "result": rendered, "terms": items }))?;
        }
        Format::Csv => {
            let mut wr = csv_writer(out);
            wr.write_record(["basis_element", "coefficient"])?;
            for (b, c) in &terms {
                wr.write_record([b, c])?;
            }
            wr.flush()?;
        }
    }
    Ok(())
}

pub fn schubert(g: &GlobalArgs, w: Option<&str>, out: Out) -> Result<(), CliError> {
    let rows: Vec<(Permutation, String)> = elements(g, w)?
        .into_iter()
        .map(|w| {
            let p = schubert_poly(&w).to_string();
            (w, p)
        })
        .collect();
    match g.format {
        Format::Text => print_labelled(out, &rows)?,
        Format::Json => {
            let items: Vec<Value> =
                rows.iter().map(|(w, p)| json!({ "n": g.n, "w": w.word_string(), "polynomial": p })).collect();
            let value = if items.len() == 1 { items[0].clone() } else { Value::Array(items) };
            print_json(out, &value)?;
        }
        Format::Csv => {
            let mut wr = csv_writer(out);
            wr.write_record(["w", "polynomial"])?;
            for (w, p) in &rows {
                wr.write_record([w.word_string(), p.clone()])?;
            }
            wr.flush()?;
        }
    }
    Ok(())
}
