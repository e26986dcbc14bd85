//! The full cross-validation matrix behind `verify all`.
//!
//! `max_r` bounds the field degree everywhere. `max_n` bounds the group
//! enumerations, which additionally stay within the product budget. Moment
//! recursions are formula-only and always cover the families with `n <= 3`.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::charsums::{
    kloosterman_gl, kloosterman_range, verify_carlitz, verify_power_invariance, verify_theta_identities, verify_twisted_sums, within_weil_bound, GlMethod,
    GL_BUDGET,
};
use crate::combinat::gl_order;
use crate::coset_codes::{
    dual_distribution, dual_weight, family_constants, membership_consistency_from, pless_check, trace_multiplicities, weight_distribution,
    weight_distribution_macwilliams, CosetCode, DoubleCosetFamily, MultiplicityMode, Sign, WeightMode,
};
use crate::error::Result;
use crate::field::Field;
use crate::moments::{compare_with_oracle, verify_lhs_expansion, MomentKind, RecursionInstance};
use crate::orthogroup::{a_r_subgroup, bruhat_cell_from, check_enumerable, enumerate_parabolic, exp_sum_cell, group_counts, SumMode};
use crate::report::{Check, VerificationReport};

/// Recursions run to this exponent.
pub const MOMENT_H_MAX: u32 = 10;
/// Full weight distributions are compared only up to this length.
const DISTRIBUTION_LENGTH_CAP: u64 = 500;

type Task = Box<dyn Fn() -> Result<Vec<Check>> + Send + Sync>;

fn task(name: String, f: impl Fn() -> Result<Vec<Check>> + Send + Sync + 'static) -> (String, Task) {
    (name, Box::new(f))
}

/// Families with a given `n`, in index order.
pub fn families_for(n: u32, r: u32) -> Vec<DoubleCosetFamily> {
    [(1, Sign::Plus), (2, Sign::Plus), (1, Sign::Minus), (2, Sign::Minus)]
        .into_iter()
        .filter_map(|(i, s)| DoubleCosetFamily::new(i, s, n, r).ok())
        .collect()
}

fn field_checks(r: u32) -> Result<Vec<Check>> {
    let field = Field::new(r)?;
    let mut checks = Vec::new();
    let outside: Vec<_> = field.elements().filter(|b| !field.artin_schreier_image().contains(b)).collect();
    for a in field.nonzero() {
        checks.push(verify_carlitz(&field, a)?);
        for s in 1..r {
            checks.push(verify_power_invariance(&field, a, s)?);
        }
        checks.extend(verify_theta_identities(&field, a, None)?);
        for &b in &outside {
            checks.extend(verify_theta_identities(&field, a, Some(b))?.into_iter().skip(1));
        }
        let k = crate::charsums::kloosterman1(&field, a)?;
        checks.push(Check::new("weil_bound").with("q", field.q()).with("a", a).holds("K^2 <= 4q", k, within_weil_bound(field.q() as u64, k)));
    }
    for m in 1..=2 {
        checks.extend(verify_twisted_sums(&field, m)?);
    }
    if r >= 2 {
        let range = kloosterman_range(&field)?;
        checks.push(Check::new("kloosterman_range").with("q", field.q()).equal(format!("{:?}", range.predicted), format!("{:?}", range.attained)));
    }
    Ok(checks)
}

fn gl_checks(r: u32, t: u32) -> Result<Vec<Check>> {
    let field = Field::new(r)?;
    let mut checks = Vec::new();
    let scales: Vec<_> = field.nonzero().collect();
    for a in field.nonzero() {
        for &c in &scales {
            let values: Vec<BigInt> = GlMethod::ALL.iter().map(|&m| kloosterman_gl(&field, t, a, c, m)).collect::<Result<_>>()?;
            let tag = |name: &str| Check::new(name).with("t", t).with("q", field.q()).with("a", a).with("c", c);
            checks.push(tag("gl_kloosterman_closed_form").equal(&values[0], &values[1]));
            checks.push(tag("gl_kloosterman_brute_force").equal(&values[0], &values[2]));
        }
    }
    Ok(checks)
}

fn counts_checks(n: u32, r: u32) -> Vec<Check> {
    group_counts(n, 1 << r).identities()
}

/// Everything that needs the materialized cells of one `(n, q)`.
fn enumeration_checks(n: u32, r: u32) -> Result<Vec<Check>> {
    let field = Field::new(r)?;
    let q = field.q() as u64;
    let counts = group_counts(n, q);
    let parabolic = enumerate_parabolic(&field, n as usize)?;
    let tag = |name: &str| Check::new(name).with("n", n).with("q", q);
    let mut checks = vec![tag("parabolic_order").equal(&counts.parabolic, parabolic.len())];
    let mut total = 0usize;
    let mut cells = Vec::new();
    for k in 0..=n as usize {
        let cell = bruhat_cell_from(&field, n as usize, k, &parabolic);
        let stabilizer = a_r_subgroup(&field, n as usize, k, &parabolic)?;
        checks.push(tag("cell_size").with("r", k).equal(&counts.cell_sizes[k], cell.len()));
        checks.push(tag("a_r_order").with("r", k).equal(&counts.a_r[k], stabilizer.len()));
        total += cell.len();
        for c in field.nonzero() {
            let formula = exp_sum_cell(&field, n, k as u32, c, SumMode::Formula)?;
            checks.push(tag("cell_exponential_sum").with("r", k).with("c", c).equal(formula, cell.exp_sum(&field, c)));
        }
        cells.push(cell);
    }
    checks.push(tag("oplus_order_by_cells").equal(&counts.oplus_order, total));

    for f in families_for(n, r) {
        let cell = &cells[f.sigma_index() as usize];
        let ftag = |name: &str| Check::new(name).with("family", f.name()).with("n", n).with("q", q);
        let code = CosetCode::from_cell(&f, cell)?;
        let enumerated = code.multiplicities(&field);
        let formula = trace_multiplicities(&field, &f, MultiplicityMode::Formula)?;
        for beta in field.elements() {
            let b = beta.bits() as usize;
            checks.push(ftag("trace_multiplicity").with("beta", beta).equal(&formula.counts[b], &enumerated.counts[b]));
        }
        checks.push(ftag("family_size").equal(family_constants(&f).n, code.len()));
        checks.push(ftag("trace_weighted_sum").equal(0, enumerated.weighted_sum_bits()));
        checks.extend(membership_consistency_from(&field, &f, &enumerated)?);
        for a in field.nonzero() {
            let formula = dual_weight(&field, &f, a, WeightMode::Formula)?;
            checks.push(ftag("dual_weight").with("a", a).equal(formula, code.dual_weight(&field, a)));
        }
        let kernel_dim = code.kernel(&field).len().trailing_zeros();
        checks.push(ftag("dual_kernel_dimension").equal(f.kernel_dimension(), kernel_dim));
    }
    Ok(checks)
}

fn distribution_checks(n: u32, r: u32) -> Result<Vec<Check>> {
    let field = Field::new(r)?;
    let mut checks = Vec::new();
    for f in families_for(n, r) {
        let length = family_constants(&f).n;
        if length > BigInt::from(DISTRIBUTION_LENGTH_CAP) {
            continue;
        }
        let ftag = |name: &str| Check::new(name).with("family", f.name()).with("n", n).with("q", f.q());
        let dist = weight_distribution(&trace_multiplicities(&field, &f, MultiplicityMode::Formula)?)?;
        checks.push(ftag("distribution_symmetric").holds("C_j = C_{N-j}", dist.length, dist.is_symmetric()));
        let exponent = dist.length - f.dual_dimension() as u64;
        checks.push(ftag("distribution_total").equal(BigInt::from(1) << exponent, dist.total()));
        checks.push(ftag("distribution_macwilliams").equal(
            format!("{:?}", weight_distribution_macwilliams(&field, &f, None)?.coefficients),
            format!("{:?}", dist.coefficients),
        ));
        let dual = dual_distribution(&field, &f)?;
        for h in 0..=MOMENT_H_MAX {
            checks.push(pless_check(&dual, &dist, f.dual_dimension(), h)?.with("family", f.name()).with("q", f.q()));
        }
    }
    Ok(checks)
}

fn moment_checks(f: DoubleCosetFamily) -> Result<Vec<Check>> {
    let field = Field::new(f.r)?;
    let inst = RecursionInstance::new(&field, &f, MOMENT_H_MAX)?;
    let kinds: &[MomentKind] = if f.i == 1 { &[MomentKind::Plain] } else { &[MomentKind::TwoDim, MomentKind::EvenPower] };
    let mut checks = Vec::new();
    for &kind in kinds {
        for row in compare_with_oracle(&field, &inst, kind)?.into_iter().skip(1) {
            checks.push(
                Check::new(format!("moment_recursion_{}", kind.as_str()))
                    .with("family", f.name())
                    .with("n", f.n)
                    .with("q", f.q())
                    .with("h", row.h)
                    .equal(row.oracle, row.recursive),
            );
        }
    }
    for h in 0..=4 {
        checks.extend(verify_lhs_expansion(&field, &f, h)?);
    }
    Ok(checks)
}

fn tasks(max_r: u32, max_n: u32) -> Vec<(String, Task)> {
    let mut out = Vec::new();
    for r in 1..=max_r {
        out.push(task(format!("field r={r}"), move || field_checks(r)));
        // brute-force GL sums: t <= 3 over GF(2), t <= 2 up to GF(8)
        for t in 1..=3 {
            if gl_order(t, 1 << r) <= BigInt::from(GL_BUDGET) && (r == 1 || (t <= 2 && r <= 3)) {
                out.push(task(format!("gl t={t} r={r}"), move || gl_checks(r, t)));
            }
        }
        for n in 1..=max_n.max(3) {
            out.push(task(format!("counts n={n} r={r}"), move || Ok(counts_checks(n, r))));
        }
        for n in 1..=max_n {
            if check_enumerable(n, 1 << r).is_ok() {
                out.push(task(format!("enumeration n={n} r={r}"), move || enumeration_checks(n, r)));
            }
        }
        for n in 1..=3 {
            out.push(task(format!("distributions n={n} r={r}"), move || distribution_checks(n, r)));
            for f in families_for(n, r).into_iter().filter(|f| f.is_recursion_admissible()) {
                out.push(task(format!("moments {f}"), move || moment_checks(f)));
            }
        }
    }
    out
}

/// Runs the matrix. A task that errors becomes a single failed check.
pub fn run_all(max_r: u32, max_n: u32) -> Result<VerificationReport> {
    crate::field::Field::new(max_r)?;
    let checks: Vec<Check> = tasks(max_r, max_n)
        .into_par_iter()
        .flat_map_iter(|(name, run)| match run() {
            Ok(checks) => checks,
            Err(e) => vec![Check::new("task_error").with("task", &name).holds("task completes", e, false)],
        })
        .collect();
    Ok(VerificationReport::from_checks(checks))
}
