//! Text, JSON and CSV renderings of every report. JSON numbers are decimal
//! strings, so output is byte-identical across runs with equal settings.

use std::fmt::Write as _;

use anyhow::Result;
use serde::Serialize;
use serde_json::json;

use crate::config::Format;
use zetarep::errata::ErrataLedger;
use zetarep::identities::IdentityReport;
use zetarep::laurent::{Agreement, CoeffView, FunctionKind, PowerSeries, SeriesView};
use zetarep::mellin::VerificationReport;

fn to_json<T: Serialize + ?Sized>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn to_csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn numbers(symbol: &str, rows: Vec<(u32, String)>, fmt: Format) -> Result<String> {
    match fmt {
        Format::Json => {
            let v: Vec<_> = rows.iter().map(|(n, value)| json!({ "n": n, "value": value })).collect();
            to_json(&v)
        }
        Format::Csv => to_csv(&["n", "value"], rows.into_iter().map(|(n, v)| vec![n.to_string(), v])),
        Format::Text if rows.len() == 1 => Ok(format!("{}\n", rows[0].1)),
        Format::Text => Ok(rows.iter().map(|(n, v)| format!("{symbol}({n}) = {v}\n")).collect()),
    }
}

pub fn scalar(params: &[(&str, String)], value: &str, fmt: Format) -> Result<String> {
    match fmt {
        Format::Json => {
            let mut map = serde_json::Map::new();
            for (k, v) in params {
                map.insert((*k).into(), json!(v));
            }
            map.insert("value".into(), json!(value));
            to_json(&map)
        }
        Format::Csv => {
            let mut header: Vec<&str> = params.iter().map(|(k, _)| *k).collect();
            header.push("value");
            let mut row: Vec<String> = params.iter().map(|(_, v)| v.clone()).collect();
            row.push(value.into());
            to_csv(&header, [row])
        }
        Format::Text => Ok(format!("{value}\n")),
    }
}

#[derive(Serialize)]
struct LaurentOut<'a> {
    kind: String,
    order: i32,
    exact: bool,
    series: SeriesView,
    agreement: &'a Agreement,
}

fn coeff_text(c: &CoeffView) -> String {
    match c {
        CoeffView::Exact(v) if v.den == "1" => v.num.clone(),
        CoeffView::Exact(v) => format!("{}/{}", v.num, v.den),
        CoeffView::Decimal(s) => s.clone(),
    }
}

pub fn laurent(
    kind: FunctionKind,
    order: i32,
    series: &PowerSeries,
    decimal: bool,
    agreement: &Agreement,
    digits: u32,
    fmt: Format,
) -> Result<String> {
    let shown = if decimal && series.is_exact() { series.promote(zetarep::PrecisionContext::new(digits)?.bits()) } else { series.clone() };
    let view = shown.view(digits);
    let exps = view.lowest..view.lowest + view.coeffs.len() as i32;
    match fmt {
        Format::Json => to_json(&LaurentOut { kind: kind.name(), order, exact: shown.is_exact(), series: view, agreement }),
        Format::Csv => to_csv(
            &["exponent", "coefficient"],
            exps.zip(&view.coeffs).map(|(e, c)| vec![e.to_string(), coeff_text(c)]),
        ),
        Format::Text => {
            let mut out = format!("{kind} through x^{} (radius {})\n", order - 1, view.radius);
            for (e, c) in exps.zip(&view.coeffs) {
                let t = coeff_text(c);
                if t != "0" {
                    writeln!(out, "  x^{e}: {t}")?;
                }
            }
            write!(out, "agreement with oracle ({}): {}", agreement.method, agreement.agree)?;
            if let Some(d) = &agreement.detail {
                write!(out, " at {d}")?;
            }
            out.push('\n');
            Ok(out)
        }
    }
}

pub fn mellin(reports: &[VerificationReport], many: bool, fmt: Format) -> Result<String> {
    match fmt {
        Format::Json if many => to_json(reports),
        Format::Json => to_json(&reports[0]),
        Format::Csv => to_csv(
            &["id", "s", "lhs", "rhs", "residual", "pass"],
            reports.iter().flat_map(|r| {
                r.points.iter().map(move |p| {
                    vec![r.id.clone(), p.s.clone(), p.lhs.clone(), p.rhs.clone(), p.residual.clone(), r.pass.to_string()]
                })
            }),
        ),
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                writeln!(
                    out,
                    "{:<4} {}  max residual {}  ({} digits)",
                    r.id,
                    if r.pass { "pass" } else { "FAIL" },
                    r.max_residual,
                    r.digits
                )?;
                for p in &r.points {
                    writeln!(out, "     s = {:<12} residual {}", p.s, p.residual)?;
                }
            }
            Ok(out)
        }
    }
}

fn identity_rows(r: &IdentityReport, rows: &mut Vec<Vec<String>>) {
    for i in &r.instances {
        rows.push(vec![
            r.id.clone(),
            i.n.to_string(),
            i.lhs.clone().unwrap_or_default(),
            i.rhs.clone().unwrap_or_default(),
            i.residual.as_ref().map(|x| x.to_string()).unwrap_or_default(),
            i.pass.to_string(),
            i.note.clone().unwrap_or_default(),
        ]);
    }
    if let Some(c) = &r.corrected {
        identity_rows(c, rows);
    }
}

fn identity_text(r: &IdentityReport, indent: &str, out: &mut String) -> Result<()> {
    let (first, last) = (r.instances.first().map_or(0, |i| i.n), r.instances.last().map_or(0, |i| i.n));
    writeln!(out, "{indent}{:<4} {}  ({} = {first}..{last})", r.id, r.verdict, r.parameter)?;
    writeln!(out, "{indent}     {}", r.statement)?;
    if let Some(bad) = r.instances.iter().find(|i| !i.pass) {
        match (&bad.residual, &bad.note) {
            (Some(res), _) => writeln!(out, "{indent}     first failure at {} = {}: residual {res}", r.parameter, bad.n)?,
            (None, Some(note)) => writeln!(out, "{indent}     {note}")?,
            _ => {}
        }
    }
    if let Some(c) = &r.corrected {
        identity_text(c, &format!("{indent}  "), out)?;
    }
    Ok(())
}

pub fn identities(reports: &[IdentityReport], many: bool, fmt: Format) -> Result<String> {
    match fmt {
        Format::Json if many => to_json(reports),
        Format::Json => to_json(&reports[0]),
        Format::Csv => {
            let mut rows = Vec::new();
            for r in reports {
                identity_rows(r, &mut rows);
            }
            to_csv(&["id", "n", "lhs", "rhs", "residual", "pass", "note"], rows)
        }
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                identity_text(r, "", &mut out)?;
            }
            Ok(out)
        }
    }
}

pub fn errata(ledger: &ErrataLedger, fmt: Format) -> Result<String> {
    let mut rows: Vec<Vec<String>> = Vec::new();
    for e in &ledger.identities {
        rows.push(vec![
            "identity".into(),
            e.id.clone(),
            format!("{} = {}", e.parameter, e.n),
            e.observed.clone(),
            e.corrected_statement.clone().unwrap_or_default(),
            e.verdict.to_string(),
        ]);
    }
    for p in &ledger.prefactors {
        rows.push(vec![
            "prefactor".into(),
            p.id.clone(),
            format!("s = {}", p.s),
            format!("printed {} leaves residual {}", p.printed, p.printed_residual),
            format!("{} (residual {})", p.corrected, p.corrected_residual),
            "corrected-passes".into(),
        ]);
    }
    for x in &ledger.expansions {
        rows.push(vec![
            "expansion".into(),
            x.id.clone(),
            format!("x = {}", x.x),
            format!("residual {}; first wrong coefficient at n = {}", x.printed_residual, x.first_wrong_index),
            format!("{} (residual {})", x.corrected, x.corrected_residual),
            "corrected-passes".into(),
        ]);
    }
    match fmt {
        Format::Json => to_json(ledger),
        Format::Csv => to_csv(&["kind", "id", "where", "observed", "correction", "status"], rows),
        Format::Text => {
            let mut out = format!("{} errata at {} digits\n", ledger.len(), ledger.digits);
            for r in rows {
                writeln!(out, "[{}] {} ({}): {}", r[0], r[1], r[5], r[2])?;
                writeln!(out, "    observed:   {}", r[3])?;
                if !r[4].is_empty() {
                    writeln!(out, "    correction: {}", r[4])?;
                }
            }
            for e in &ledger.identities {
                if e.corrected_id.is_none() {
                    writeln!(out, "note on {}: {}", e.id, e.note)?;
                }
            }
            for x in &ledger.expansions {
                writeln!(out, "note on {}: {}", x.id, x.note)?;
            }
            Ok(out)
        }
    }
}
