use num_bigint::BigInt;
use serde_json::{json, Value};

use dcmoments_core::charsums::{kloosterman, kloosterman_gl, moment_table, GlMethod};
use dcmoments_core::coset_codes::{
    dual_weight, family_constants, trace_multiplicities, weight_coefficient, weight_distribution, CosetCode, DoubleCosetFamily, MultiplicityMode,
    WeightMode,
};
use dcmoments_core::moments::{compare_with_oracle, MomentKind, RecursionInstance};
use dcmoments_core::orthogroup::{bruhat_cell_from, enumerate_parabolic, exp_sum_cell, group_counts as counts_for, SumMode};
use dcmoments_core::verify::run_all;
use dcmoments_core::{Error, Field, FieldElement, Result};

use crate::output::Rendered;
use crate::{KindArg, MethodArg};

fn element(field: &Field, hex: &str) -> Result<FieldElement> {
    field.parse_hex(hex)
}

fn family(name: &str, n: u32, r: u32) -> Result<DoubleCosetFamily> {
    DoubleCosetFamily::parse(name, n, r)
}

/// `enumerable` when the coset can be materialized, `formula-only` otherwise.
fn source_label(f: &DoubleCosetFamily) -> &'static str {
    if f.is_enumerable() {
        "enumerable"
    } else {
        "formula-only"
    }
}

fn constants_json(f: &DoubleCosetFamily) -> Value {
    let c = family_constants(f);
    json!({ "A": c.a.to_string(), "B": c.b.to_string(), "N": c.n.to_string() })
}

pub fn field_table(r: u32) -> Result<Rendered> {
    let field = Field::new(r)?;
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for x in field.elements() {
        let inv = if x.is_zero() { String::new() } else { field.inv(x)?.to_hex() };
        let sq = field.square(x).to_hex();
        let tr = field.trace(x);
        items.push(json!({ "element": x.to_hex(), "inverse": if inv.is_empty() { Value::Null } else { json!(inv) }, "square": sq, "trace": tr }));
        rows.push(vec![x.to_hex(), inv, sq, tr.to_string()]);
    }
    let trace: Vec<u8> = field.elements().map(|x| field.trace(x)).collect();
    let doc = json!({ "r": r, "q": field.q(), "modulus_hex": field.modulus_hex(), "trace": trace, "elements": items });
    Ok(Rendered::new(doc, vec!["element", "inverse", "square", "trace"], rows))
}

pub fn ksum(r: u32, a: &str, m: u32, c: &str) -> Result<Rendered> {
    let field = Field::new(r)?;
    let (a, c) = (element(&field, a)?, element(&field, c)?);
    let value = kloosterman(&field, a, m, c)?.value;
    let doc = json!({ "r": r, "q": field.q(), "a": a, "m": m, "c": c, "value": value.to_string() });
    Ok(Rendered::new(doc, vec!["q", "a", "m", "c", "value"], vec![vec![field.q().to_string(), a.to_hex(), m.to_string(), c.to_hex(), value.to_string()]]))
}

pub fn ksum_gl(r: u32, t: u32, a: &str, c: &str, method: MethodArg) -> Result<Rendered> {
    let field = Field::new(r)?;
    let (a, c) = (element(&field, a)?, element(&field, c)?);
    let methods: Vec<GlMethod> = match method {
        MethodArg::Recursion => vec![GlMethod::Recursion],
        MethodArg::ClosedForm => vec![GlMethod::ClosedForm],
        MethodArg::BruteForce => vec![GlMethod::BruteForce],
        MethodArg::All => GlMethod::ALL.to_vec(),
    };
    let mut results = Vec::new();
    let mut rows = Vec::new();
    let mut values: Vec<BigInt> = Vec::new();
    for m in methods {
        let v = kloosterman_gl(&field, t, a, c, m)?;
        let name = serde_json::to_value(m).map_err(|e| Error::Parameter(e.to_string()))?;
        rows.push(vec![name.as_str().unwrap_or_default().to_owned(), v.to_string()]);
        results.push(json!({ "method": name, "value": v.to_string() }));
        values.push(v);
    }
    let agree = values.windows(2).all(|w| w[0] == w[1]);
    let doc = json!({ "t": t, "q": field.q(), "a": a, "c": c, "results": results, "agree": agree });
    Ok(Rendered::new(doc, vec!["method", "value"], rows).with_status(agree))
}

pub fn moments_oracle(r: u32, m: u32, h_max: u32) -> Result<Rendered> {
    let field = Field::new(r)?;
    let table = moment_table(&field, m, h_max, field.one())?;
    let rows = table.values.iter().enumerate().map(|(h, v)| vec![h.to_string(), v.to_string()]).collect();
    let doc = serde_json::to_value(&table).map_err(|e| Error::Parameter(e.to_string()))?;
    Ok(Rendered::new(doc, vec!["h", "value"], rows))
}

pub fn moments_recursive(name: &str, n: u32, r: u32, h_max: u32, kind: Option<KindArg>, compare: bool) -> Result<Rendered> {
    let field = Field::new(r)?;
    let f = family(name, n, r)?;
    let kind = match kind {
        Some(KindArg::Plain) => MomentKind::Plain,
        Some(KindArg::TwoDim) => MomentKind::TwoDim,
        Some(KindArg::EvenPower) => MomentKind::EvenPower,
        None if f.i == 1 => MomentKind::Plain,
        None => MomentKind::EvenPower,
    };
    let inst = RecursionInstance::new(&field, &f, h_max)?;
    let mut ok = true;
    let (table, headers, rows): (Vec<Value>, Vec<&'static str>, Vec<Vec<String>>) = if compare {
        let cmp = compare_with_oracle(&field, &inst, kind)?;
        ok = cmp.iter().all(|row| row.matches);
        (
            cmp.iter().map(|row| json!({ "h": row.h, "recursive": row.recursive.to_string(), "oracle": row.oracle.to_string(), "match": row.matches })).collect(),
            vec!["h", "recursive", "oracle", "match"],
            cmp.iter().map(|row| vec![row.h.to_string(), row.recursive.to_string(), row.oracle.to_string(), row.matches.to_string()]).collect(),
        )
    } else {
        let values = inst.run(kind)?;
        (
            values.iter().enumerate().map(|(h, v)| json!({ "h": h, "recursive": v.to_string() })).collect(),
            vec!["h", "recursive"],
            values.iter().enumerate().map(|(h, v)| vec![h.to_string(), v.to_string()]).collect(),
        )
    };
    let doc = json!({
        "family": f.name(), "n": n, "q": f.q(), "kind": kind.as_str(),
        "constants": constants_json(&f), "source": "formula", "table": table,
    });
    Ok(Rendered::new(doc, headers, rows).with_status(ok))
}

pub fn group_enum(r: u32, n: u32, only: Option<u32>, with_elements: bool) -> Result<Rendered> {
    let field = Field::new(r)?;
    let counts = counts_for(n, field.q() as u64);
    if let Some(k) = only.filter(|&k| k > n) {
        return Err(Error::Parameter(format!("cell index {k} exceeds n = {n}")));
    }
    let parabolic = enumerate_parabolic(&field, n as usize)?;
    let mut cells = Vec::new();
    let mut rows = Vec::new();
    let mut ok = parabolic.len().to_string() == counts.parabolic.to_string();
    for k in (0..=n).filter(|k| only.map_or(true, |c| c == *k)) {
        let cell = bruhat_cell_from(&field, n as usize, k as usize, &parabolic);
        let expected = &counts.cell_sizes[k as usize];
        ok &= cell.len().to_string() == expected.to_string();
        let hist = cell.trace_histogram(&field);
        let mut entry = json!({ "r": k, "size": cell.len().to_string(), "expected_size": expected.to_string(), "trace_histogram": hist });
        if with_elements {
            entry["elements"] = json!(cell.elements.iter().map(|w| w.to_hex(&field)).collect::<Vec<_>>());
            rows.extend(cell.elements.iter().map(|w| vec![k.to_string(), w.to_hex(&field)]));
        } else {
            rows.push(vec![k.to_string(), cell.len().to_string(), expected.to_string()]);
        }
        cells.push(entry);
    }
    let headers = if with_elements { vec!["cell", "element"] } else { vec!["cell", "size", "expected_size"] };
    let doc = json!({ "n": n, "q": field.q(), "parabolic_order": parabolic.len().to_string(), "cells": cells });
    Ok(Rendered::new(doc, headers, rows).with_status(ok))
}

pub fn group_counts(r: u32, n: u32) -> Result<Rendered> {
    let field = Field::new(r)?;
    let counts = counts_for(n, field.q() as u64);
    let checks = counts.identities();
    let ok = checks.iter().all(|c| c.pass);
    let rows = (0..=n as usize)
        .map(|k| vec![k.to_string(), counts.q_binomials[k].to_string(), counts.a_r[k].to_string(), counts.cell_sizes[k].to_string()])
        .collect();
    let doc = json!({ "counts": counts, "checks": checks, "all_passed": ok });
    Ok(Rendered::new(doc, vec!["r", "q_binomial", "a_r", "cell_size"], rows).with_status(ok))
}

pub fn group_sum(r: u32, n: u32, cell: u32, c: &str, brute_force: bool) -> Result<Rendered> {
    let field = Field::new(r)?;
    let c = element(&field, c)?;
    let formula = exp_sum_cell(&field, n, cell, c, SumMode::Formula)?;
    let mut doc = json!({ "n": n, "q": field.q(), "cell": cell, "c": c, "formula": formula.to_string() });
    let mut row = vec![n.to_string(), field.q().to_string(), cell.to_string(), c.to_hex(), formula.to_string()];
    let mut ok = true;
    if brute_force {
        let brute = exp_sum_cell(&field, n, cell, c, SumMode::BruteForce)?;
        ok = brute == formula;
        doc["brute_force"] = json!(brute.to_string());
        doc["match"] = json!(ok);
        row.push(brute.to_string());
    } else {
        row.push(String::new());
    }
    Ok(Rendered::new(doc, vec!["n", "q", "cell", "c", "formula", "brute_force"], vec![row]).with_status(ok))
}

pub fn code_weights(name: &str, n: u32, r: u32, direct: bool) -> Result<Rendered> {
    let field = Field::new(r)?;
    let f = family(name, n, r)?;
    let code = if direct { Some(CosetCode::materialize(&field, &f)?) } else { None };
    let mut ok = true;
    let mut weights = Vec::new();
    let mut rows = Vec::new();
    for a in field.nonzero() {
        let w = dual_weight(&field, &f, a, WeightMode::Formula)?;
        let mut entry = json!({ "a": a, "weight": w.to_string() });
        let mut row = vec![a.to_hex(), w.to_string(), String::new()];
        if let Some(code) = &code {
            let d = code.dual_weight(&field, a);
            ok &= BigInt::from(d) == w;
            entry["direct"] = json!(d.to_string());
            row[2] = d.to_string();
        }
        weights.push(entry);
        rows.push(row);
    }
    let doc = json!({
        "family": f.name(), "n": n, "q": f.q(), "constants": constants_json(&f),
        "source": source_label(&f), "kernel_dimension": f.kernel_dimension(), "weights": weights,
    });
    Ok(Rendered::new(doc, vec!["a", "weight", "direct"], rows).with_status(ok))
}

pub fn code_dist(name: &str, n: u32, r: u32, j: Option<u64>) -> Result<Rendered> {
    let field = Field::new(r)?;
    let f = family(name, n, r)?;
    let counts = trace_multiplicities(&field, &f, MultiplicityMode::Formula)?;
    let base = json!({ "family": f.name(), "n": n, "q": f.q(), "length": family_constants(&f).n.to_string(), "source": source_label(&f) });
    match j {
        Some(j) => {
            let value = weight_coefficient(&counts, j);
            let mut doc = base;
            doc["j"] = json!(j);
            doc["value"] = json!(value.to_string());
            Ok(Rendered::new(doc, vec!["j", "value"], vec![vec![j.to_string(), value.to_string()]]))
        }
        None => {
            let dist = weight_distribution(&counts)?;
            let mut doc = base;
            doc["coefficients"] = json!(dist.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>());
            let rows = dist.coefficients.iter().enumerate().map(|(j, c)| vec![j.to_string(), c.to_string()]).collect();
            Ok(Rendered::new(doc, vec!["j", "value"], rows))
        }
    }
}

pub fn code_multiplicities(name: &str, n: u32, r: u32, brute_force: bool) -> Result<Rendered> {
    let field = Field::new(r)?;
    let f = family(name, n, r)?;
    let formula = trace_multiplicities(&field, &f, MultiplicityMode::Formula)?;
    let brute = if brute_force { Some(trace_multiplicities(&field, &f, MultiplicityMode::BruteForce)?) } else { None };
    let ok = brute.as_ref().map_or(true, |b| *b == formula);
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    for beta in field.elements() {
        let b = beta.bits() as usize;
        let mut entry = json!({ "beta": beta, "count": formula.counts[b].to_string() });
        let mut row = vec![beta.to_hex(), formula.counts[b].to_string(), String::new()];
        if let Some(brute) = &brute {
            entry["brute_force"] = json!(brute.counts[b].to_string());
            row[2] = brute.counts[b].to_string();
        }
        entries.push(entry);
        rows.push(row);
    }
    let doc = json!({ "family": f.name(), "n": n, "q": f.q(), "source": source_label(&f), "multiplicities": entries });
    Ok(Rendered::new(doc, vec!["beta", "count", "brute_force"], rows).with_status(ok))
}

pub fn verify_all(max_r: u32, max_n: u32) -> Result<Rendered> {
    let report = run_all(max_r, max_n)?;
    for failure in report.failures() {
        eprintln!("FAIL {} [{}]: expected {}, got {}", failure.name, failure.param_string(), failure.expected, failure.actual);
    }
    let rows = report
        .checks
        .iter()
        .map(|c| vec![c.name.clone(), c.param_string(), c.expected.clone(), c.actual.clone(), c.pass.to_string()])
        .collect();
    let doc = serde_json::to_value(&report).map_err(|e| Error::Parameter(e.to_string()))?;
    let headers = vec!["name", "parameters", "expected", "actual", "pass"];
    Ok(Rendered::new(doc, headers, rows).with_status(report.all_passed()))
}
