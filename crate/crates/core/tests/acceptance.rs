//! Acceptance criteria. Each criterion prints one PASS or FAIL line; the
//! process exits nonzero when any criterion fails. Every comparison is exact
//! integer equality.

mod common;

use std::fmt::Debug;
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use common::{big, constrained_distribution, dual_weight as naive_dual_weight, pless_sides, Gf};
use dcmoments_core::charsums::{
    gl_kloosterman_closed_form, gl_kloosterman_recursion, kloosterman_gl, kloosterman_range, verify_carlitz, verify_power_invariance,
    verify_theta_identities, verify_twisted_sums, within_weil_bound,
};
use dcmoments_core::coset_codes::{
    dual_distribution, dual_weight, dual_weights_formula, family_constants, membership_consistency, membership_consistency_from, pless_check, trace_multiplicities,
    weight_distribution, weight_distribution_macwilliams, weight_prefix, CosetCode, MultiplicityMode, TraceMultiplicityMap, WeightMode,
};
use dcmoments_core::moments::{carlitz_moment_check, verify_lhs_expansion};
use dcmoments_core::orthogroup::{a_r_subgroup, bruhat_cell_from, enumerate_parabolic, exp_sum_cell, group_counts, scan_oplus, BruhatCell};
use dcmoments_core::verify::families_for;
use dcmoments_core::{Check, DoubleCosetFamily, Field, GlMethod, MatrixGF, MomentKind, RecursionInstance, Result, Sign, SumMode};

#[derive(Default)]
struct Ledger {
    checked: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Ledger {
    fn eq<T: PartialEq + Debug>(&mut self, what: impl FnOnce() -> String, expected: T, actual: T) {
        self.checked += 1;
        if expected != actual {
            self.failures.push(format!("{}: expected {expected:?}, got {actual:?}", what()));
        }
    }

    fn truth(&mut self, what: impl FnOnce() -> String, pass: bool) {
        self.checked += 1;
        if !pass {
            self.failures.push(what());
        }
    }

    fn checks(&mut self, checks: impl IntoIterator<Item = Check>) {
        for c in checks {
            self.checked += 1;
            if !c.pass {
                self.failures.push(format!("{} [{}]: expected {}, got {}", c.name, c.param_string(), c.expected, c.actual));
            }
        }
    }
}

fn criterion(k: u32, title: &str, body: impl FnOnce(&mut Ledger) -> Result<()>) -> bool {
    let mut ledger = Ledger::default();
    let start = std::time::Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| body(&mut ledger)));
    match outcome {
        Ok(Ok(())) => {}
        Ok(Err(e)) => ledger.failures.push(format!("library error: {e}")),
        Err(panic) => {
            let msg = panic.downcast_ref::<String>().cloned().or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()));
            ledger.failures.push(format!("panic: {}", msg.unwrap_or_default()));
        }
    }
    let pass = ledger.failures.is_empty();
    println!(
        "{} criterion {k}: {title} ({} exact comparisons, {:.1}s)",
        if pass { "PASS" } else { "FAIL" },
        ledger.checked,
        start.elapsed().as_secs_f64()
    );
    for note in &ledger.notes {
        println!("    note: {note}");
    }
    for failure in ledger.failures.iter().take(10) {
        println!("    {failure}");
    }
    if ledger.failures.len() > 10 {
        println!("    ... {} more", ledger.failures.len() - 10);
    }
    pass
}

fn fam(i: u8, sign: Sign, n: u32, r: u32) -> DoubleCosetFamily {
    DoubleCosetFamily::new(i, sign, n, r).expect("valid family")
}

fn int(x: u64) -> BigInt {
    BigInt::from(x)
}

fn materialized_cells(field: &Field, n: u32) -> Result<(Vec<MatrixGF>, Vec<BruhatCell>)> {
    let parabolic = enumerate_parabolic(field, n as usize)?;
    let cells = (0..=n as usize).map(|k| bruhat_cell_from(field, n as usize, k, &parabolic)).collect();
    Ok((parabolic, cells))
}

/// `(n, r)` pairs whose cells are materialized by the acceptance run.
const ENUMERATED: [(u32, u32); 6] = [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1)];

/// Full distributions are checked up to this length.
const DP_LENGTH_CAP: u64 = 4_000;

/// `2 q^{n(n-1)} (q^n - 1) prod_{i<n} (q^{2i} - 1)`.
fn oplus_order(n: u32, q: u64) -> BigInt {
    let q = int(q);
    let mut out = BigInt::from(2) * q.pow(n * (n - 1)) * (q.pow(n) - 1u32);
    for i in 1..n {
        out *= q.pow(2 * i) - 1u32;
    }
    out
}

fn moment_recursion_vs_oracle(l: &mut Ledger) -> Result<()> {
    for r in [2u32, 3] {
        let field = Field::new(r)?;
        let gf = Gf::new(r);
        let plain = gf.moments(1, 20);
        let two_dim = gf.moments(2, 10);
        let mut dc1 = vec![fam(1, Sign::Plus, 2, r), fam(1, Sign::Minus, 3, r)];
        if r == 3 {
            dc1.push(fam(1, Sign::Minus, 1, r));
        }
        for f in dc1 {
            let got = RecursionInstance::new(&field, &f, 10)?.run(MomentKind::Plain)?;
            for h in 1..=10 {
                l.eq(|| format!("MK^{h} via {f}"), &plain[h], &got[h]);
            }
        }
        for f in [fam(2, Sign::Plus, 2, r), fam(2, Sign::Minus, 3, r)] {
            let inst = RecursionInstance::new(&field, &f, 10)?;
            let two = inst.run(MomentKind::TwoDim)?;
            let even = inst.run(MomentKind::EvenPower)?;
            for h in 1..=10 {
                l.eq(|| format!("MK_2^{h} via {f}"), &two_dim[h], &two[h]);
                l.eq(|| format!("MK^{} via {f}", 2 * h), &plain[2 * h], &even[h]);
            }
        }
    }
    Ok(())
}

fn family_specializations(l: &mut Ledger) -> Result<()> {
    for r in 1..=8u32 {
        let q = 1u64 << r;
        let field = Field::new(r)?;
        let gf = Gf::new(r);
        let qq = int(q);
        let q2m1 = &qq * &qq - 1u32;

        let f = fam(1, Sign::Plus, 2, r);
        let c = family_constants(&f);
        l.eq(|| format!("A of {f}"), &qq * &qq * &q2m1, c.a.clone());
        l.eq(|| format!("B of {f}"), BigRational::from_integer(q2m1.clone()), c.b.clone());
        l.eq(|| format!("N of {f}"), &qq * &qq * &q2m1 * &q2m1, c.n.clone());
        // q A^{-h} in closed form: q^{1-2h} (q^2-1)^{-h}
        for h in 1..=10i32 {
            let closed = BigRational::from_integer(qq.clone()).pow(1 - 2 * h) * BigRational::from_integer(q2m1.clone()).pow(-h);
            let general = BigRational::from_integer(qq.clone()) * BigRational::from_integer(c.a.clone()).pow(-h);
            l.eq(|| format!("q A^-{h} of {f}"), closed, general);
        }
        let closed: Vec<BigInt> = gf
            .elements()
            .map(|beta| match beta {
                0 => q.pow(3) * (q * q - 1),
                b if gf.trace(gf.inv(b)) == 0 => q * q * (q - 1) * (q + 1) * (q + 1),
                _ => q * q * (q + 1) * (q - 1) * (q - 1),
            })
            .map(int)
            .collect();
        l.eq(|| format!("multiplicities of {f}"), closed, trace_multiplicities(&field, &f, MultiplicityMode::Formula)?.counts);

        let f = fam(1, Sign::Minus, 1, r);
        let c = family_constants(&f);
        l.eq(|| format!("A of {f}"), BigInt::one(), c.a.clone());
        l.eq(|| format!("B of {f}"), BigRational::from_integer(int(q - 1)), c.b.clone());
        l.eq(|| format!("N of {f}"), int(q - 1), c.n.clone());
        let closed: Vec<BigInt> = gf
            .elements()
            .map(|beta| match beta {
                0 => 1,
                b if gf.trace(gf.inv(b)) == 0 => 2,
                _ => 0,
            })
            .map(int)
            .collect();
        l.eq(|| format!("multiplicities of {f}"), closed.clone(), trace_multiplicities(&field, &f, MultiplicityMode::Formula)?.counts);

        // the n = 1 recursion fed with the closed-form multiplicities
        if (3..=4).contains(&r) {
            let coefficients = weight_prefix(&TraceMultiplicityMap::new(closed)?, 10);
            let got = RecursionInstance::with_coefficients(&f, 10, coefficients)?.run(MomentKind::Plain)?;
            let oracle = gf.moments(1, 10);
            for h in 1..=10 {
                l.eq(|| format!("MK^{h} via closed-form C_j of {f}"), &oracle[h], &got[h]);
            }
        }
    }
    for r in [2u32, 3, 4] {
        let q = 1i64 << r;
        let field = Field::new(r)?;
        let oracle = Gf::new(r).moments(1, 2);
        l.eq(|| format!("oracle MK^1 at q={q}"), BigInt::one(), oracle[1].clone());
        l.eq(|| format!("oracle MK^2 at q={q}"), BigInt::from(q * q - q - 1), oracle[2].clone());
        let mut families = vec![fam(1, Sign::Plus, 2, r)];
        if r >= 3 {
            families.push(fam(1, Sign::Minus, 1, r));
        }
        for f in families {
            let got = RecursionInstance::new(&field, &f, 2)?.run(MomentKind::Plain)?;
            l.eq(|| format!("MK^1 via {f}"), BigInt::one(), got[1].clone());
            l.eq(|| format!("MK^2 via {f}"), BigInt::from(q * q - q - 1), got[2].clone());
        }
    }
    Ok(())
}

fn cell_exponential_sums(l: &mut Ledger) -> Result<()> {
    for (n, r) in ENUMERATED {
        let field = Field::new(r)?;
        let gf = Gf::new(r);
        let dim = 2 * n as usize;
        let (_, cells) = materialized_cells(&field, n)?;
        for (k, cell) in cells.iter().enumerate() {
            for c in field.nonzero() {
                let naive: i64 = cell.elements.iter().map(|w| gf.lambda(gf.mul(c.bits(), gf.mat_trace(w.entries(), dim)))).sum();
                let formula = exp_sum_cell(&field, n, k as u32, c, SumMode::Formula)?;
                l.eq(|| format!("cell sum n={n} q={} r={k} c={c}", field.q()), formula, BigInt::from(naive));
            }
        }
        if (n, r) == (2, 1) {
            l.eq(|| "cell sum n=2 q=2 r=1 c=1".into(), BigInt::from(12), exp_sum_cell(&field, 2, 1, field.one(), SumMode::Formula)?);
        }
    }
    Ok(())
}

fn order_bookkeeping(l: &mut Ledger) -> Result<()> {
    for (n, r) in ENUMERATED {
        let field = Field::new(r)?;
        let gf = Gf::new(r);
        let q = field.q() as u64;
        let counts = group_counts(n, q);
        let (parabolic, cells) = materialized_cells(&field, n)?;
        l.eq(|| format!("|P+| n={n} q={q}"), counts.parabolic.clone(), int(parabolic.len() as u64));
        let mut total = 0u64;
        for (k, cell) in cells.iter().enumerate() {
            let stabilizer = a_r_subgroup(&field, n as usize, k, &parabolic)?;
            l.eq(|| format!("|A_{k}| n={n} q={q}"), counts.a_r[k].clone(), int(stabilizer.len() as u64));
            l.eq(|| format!("|cell {k}| n={n} q={q}"), counts.cell_sizes[k].clone(), int(cell.len() as u64));
            total += cell.len() as u64;
        }
        l.eq(|| format!("sum of cells n={n} q={q}"), counts.oplus_order.clone(), int(total));
        l.eq(|| format!("|O+| n={n} q={q} against the classical order"), oplus_order(n, q), int(total));

        let vectors = gf.all_vectors(2 * n as usize);
        let all_isometries = cells.iter().flat_map(|c| &c.elements).all(|w| gf.is_isometry(n as usize, w.entries(), &vectors));
        l.truth(|| format!("materialized cells n={n} q={q} contain a non-isometry"), all_isometries);
    }
    let field = Field::new(1)?;
    let gf = Gf::new(1);
    let vectors = gf.all_vectors(4);
    let naive_scan = (0u32..1 << 16)
        .filter(|&bits| {
            let m: Vec<u8> = (0..16).map(|i| ((bits >> i) & 1) as u8).collect();
            gf.is_isometry(2, &m, &vectors)
        })
        .count() as u64;
    l.eq(|| "|O+(4,2)| by scanning all 2^16 matrices".into(), 72, naive_scan);
    l.eq(|| "|O+(4,2)| by the library scan".into(), 72, scan_oplus(&field, 2, 1 << 16)?.len() as u64);
    let (_, cells) = materialized_cells(&field, 2)?;
    l.eq(|| "|O+(4,2)| by cell union".into(), 72, cells.iter().map(|c| c.len() as u64).sum::<u64>());
    Ok(())
}

fn trace_multiplicities_and_positivity(l: &mut Ledger) -> Result<()> {
    for (n, r) in ENUMERATED {
        let field = Field::new(r)?;
        let gf = Gf::new(r);
        let dim = 2 * n as usize;
        let (_, cells) = materialized_cells(&field, n)?;
        for f in families_for(n, r) {
            let cell = &cells[f.sigma_index() as usize];
            let mut histogram = vec![BigInt::zero(); field.q()];
            for w in &cell.elements {
                histogram[gf.mat_trace(w.entries(), dim) as usize] += 1;
            }
            let formula = trace_multiplicities(&field, &f, MultiplicityMode::Formula)?;
            l.eq(|| format!("N(beta) for {f}"), histogram, formula.counts);
        }
    }
    for r in 1..=8u32 {
        let field = Field::new(r)?;
        let gf = Gf::new(r);
        let expected: Vec<BigInt> = gf
            .elements()
            .map(|b| match b {
                0 => 1u64,
                b if gf.trace(gf.inv(b)) == 0 => 2,
                _ => 0,
            })
            .map(int)
            .collect();
        let f = fam(1, Sign::Minus, 1, r);
        l.eq(|| format!("N(beta) triple {{1, 2, 0}} for {f}"), expected, trace_multiplicities(&field, &f, MultiplicityMode::Formula)?.counts);
    }
    let field = Field::new(1)?;
    let f = fam(2, Sign::Plus, 2, 1);
    let counts = trace_multiplicities(&field, &f, MultiplicityMode::BruteForce)?.counts;
    l.eq(|| format!("N(0) for {f}"), int(12), counts[0].clone());
    l.eq(|| format!("N(1) for {f}"), int(0), counts[1].clone());
    Ok(())
}

fn code_layer(l: &mut Ledger) -> Result<()> {
    for (n, r) in ENUMERATED {
        let field = Field::new(r)?;
        let gf = Gf::new(r);
        for f in families_for(n, r) {
            let code = CosetCode::materialize(&field, &f)?;
            let kernel: Vec<u8> = gf.elements().filter(|&a| naive_dual_weight(&gf, &code.traces, a) == 0).collect();
            for a in field.nonzero() {
                let direct = naive_dual_weight(&gf, &code.traces, a.bits());
                l.eq(|| format!("w(c({a})) for {f}"), dual_weight(&field, &f, a, WeightMode::Formula)?, int(direct));
            }
            let expected_kernel: Vec<u8> = if f.kernel_dimension() == 1 { vec![0, 1] } else { vec![0] };
            l.eq(|| format!("kernel of a -> c(a) for {f}"), expected_kernel, kernel);
        }
    }
    let special: Vec<String> = [fam(2, Sign::Plus, 2, 1), fam(1, Sign::Minus, 1, 1), fam(1, Sign::Minus, 1, 2)].iter().map(|f| f.to_string()).collect();
    for r in 1..=4u32 {
        let field = Field::new(r)?;
        for n in 1..=3 {
            for f in families_for(n, r) {
                let stated = special.contains(&f.to_string());
                l.eq(|| format!("kernel dimension of {f}"), u32::from(stated), f.kernel_dimension());
                if !stated {
                    let weights = dual_weights_formula(&field, &f)?;
                    l.truth(|| format!("{f} has a zero dual weight"), weights.iter().skip(1).all(|w| !w.is_zero()));
                }
            }
        }
    }
    Ok(())
}

fn weight_distributions(l: &mut Ledger) -> Result<()> {
    let mut kernel_cases = Vec::new();
    for r in 1..=4u32 {
        let field = Field::new(r)?;
        let gf = Gf::new(r);
        for n in 1..=3 {
            for f in families_for(n, r) {
                let length = family_constants(&f).n.to_u64().expect("small length");
                if length > DP_LENGTH_CAP {
                    continue;
                }
                let counts = trace_multiplicities(&field, &f, MultiplicityMode::Formula)?;
                let dist = weight_distribution(&counts)?;
                l.truth(|| format!("C_j != C_(N-j) for {f}"), dist.is_symmetric());
                // a nontrivial kernel shrinks the dual code to dimension r - 1
                let dual_dim = r - f.kernel_dimension();
                if dual_dim != r {
                    kernel_cases.push(f.to_string());
                }
                l.eq(|| format!("sum C_j for {f}"), BigInt::one() << (length - dual_dim as u64), dist.total());
                if length <= 20 {
                    let traces: Vec<u8> = if f.is_enumerable() {
                        CosetCode::materialize(&field, &f)?.traces
                    } else {
                        counts.counts.iter().enumerate().flat_map(|(b, c)| std::iter::repeat(b as u8).take(c.to_usize().unwrap())).collect()
                    };
                    l.eq(|| format!("DP vs subset enumeration for {f}"), big(&constrained_distribution(&gf, &traces)), dist.coefficients.clone());
                }
            }
        }
    }
    for (f, r) in [(fam(1, Sign::Minus, 1, 3), 3), (fam(1, Sign::Plus, 2, 1), 1)] {
        let field = Field::new(r)?;
        let dp = weight_distribution(&trace_multiplicities(&field, &f, MultiplicityMode::Formula)?)?;
        let mw = weight_distribution_macwilliams(&field, &f, None)?;
        l.eq(|| format!("DP vs MacWilliams for {f}"), dp.coefficients, mw.coefficients);
    }
    l.notes.push(format!("sum C_j = 2^(N-r+1) where a -> c(a) has kernel F_2: {}", kernel_cases.join(", ")));
    Ok(())
}

fn pless_identity(l: &mut Ledger) -> Result<()> {
    let toy = dcmoments_core::WeightDistribution::new(big(&[1, 0, 1]))?;
    for h in 0..=10 {
        l.checks([pless_check(&toy, &toy, 1, h)?]);
        let (lhs, rhs) = pless_sides(&toy.coefficients, &toy.coefficients, 2, 1, h);
        l.eq(|| format!("toy code oracle h={h}"), lhs, rhs);
    }
    let field = Field::new(3)?;
    let f = fam(1, Sign::Minus, 1, 3);
    let code = weight_distribution(&trace_multiplicities(&field, &f, MultiplicityMode::Formula)?)?;
    let dual = dual_distribution(&field, &f)?;
    let n = code.length;
    let k = n as u32 - f.dual_dimension();
    for h in 0..=10 {
        l.checks([pless_check(&code, &dual, k, h)?, pless_check(&dual, &code, f.dual_dimension(), h)?]);
        let (lhs, rhs) = pless_sides(&code.coefficients, &dual.coefficients, n, k, h);
        l.eq(|| format!("{f} oracle h={h}"), lhs, rhs);
        let (lhs, rhs) = pless_sides(&dual.coefficients, &code.coefficients, n, f.dual_dimension(), h);
        l.eq(|| format!("{f} dual oracle h={h}"), lhs, rhs);
    }
    Ok(())
}

fn identity_suite(l: &mut Ledger) -> Result<()> {
    for r in 1..=8u32 {
        let field = Field::new(r)?;
        let gf = Gf::new(r);
        let q = field.q() as i64;
        let k: Vec<i64> = gf.nonzero().map(|a| gf.kloosterman(a, 1, 1)).collect();
        let outside: Vec<_> = field.elements().filter(|b| !field.artin_schreier_image().contains(b)).collect();
        for a in field.nonzero() {
            let ka = k[a.bits() as usize - 1];
            l.checks([verify_carlitz(&field, a)?]);
            l.truth(|| format!("Weil bound at q={q} a={a}"), within_weil_bound(q as u64, ka) && ka * ka <= 4 * q);
            for s in 1..r {
                l.checks([verify_power_invariance(&field, a, s)?]);
                let power = (0..s).fold(a.bits(), |x, _| gf.mul(x, x));
                l.eq(|| format!("K(a^(2^{s})) at q={q} a={a}"), ka, k[power as usize - 1]);
            }
            l.checks(verify_theta_identities(&field, a, None)?);
            let theta: i64 = gf.elements().filter(|&x| x > 1).map(|x| gf.lambda(gf.mul(a.bits(), gf.inv(gf.mul(x, x) ^ x)))).sum();
            l.eq(|| format!("theta sum at q={q} beta={a}"), ka - 1, theta);
            for &b in &outside {
                l.checks(verify_theta_identities(&field, a, Some(b))?);
            }
        }
        l.checks(verify_twisted_sums(&field, 1)?);
        for beta in gf.elements() {
            let lhs: i64 = gf.nonzero().map(|a| gf.lambda(gf.mul(a, beta)) * k[a as usize - 1]).sum();
            let rhs = if beta == 0 { 1 } else { q * gf.lambda(gf.inv(beta)) + 1 };
            l.eq(|| format!("twisted sum m=1 at q={q} beta={beta}"), rhs, lhs);
        }
        l.checks(verify_twisted_sums(&field, 2)?);
        l.checks([carlitz_moment_check(&field)?]);
        for a in gf.nonzero() {
            let ka = k[a as usize - 1];
            l.eq(|| format!("K_2 = K^2 - q at q={q} a={a}"), ka * ka - q, gf.kloosterman(a, 2, 1));
        }
        if r >= 2 {
            let range = kloosterman_range(&field)?;
            let attained: std::collections::BTreeSet<i64> = k.iter().copied().collect();
            let predicted: std::collections::BTreeSet<i64> = (-2 * q..=2 * q).filter(|t| t * t < 4 * q && t.rem_euclid(4) == 3).collect();
            l.eq(|| format!("Kloosterman range at q={q}"), predicted.clone(), attained.clone());
            l.eq(|| format!("library Kloosterman range at q={q}"), (predicted, attained), (range.predicted, range.attained));
        }
        for t in 0..=6 {
            for a in field.nonzero() {
                let ka = k[a.bits() as usize - 1];
                l.eq(|| format!("GL recursion vs closed form t={t} q={q}"), gl_kloosterman_recursion(q as u64, t, ka), gl_kloosterman_closed_form(q as u64, t, ka));
            }
        }
    }
    for r in 1..=4u32 {
        let field = Field::new(r)?;
        let q = field.q() as u64;
        for n in 1..=3 {
            l.checks(group_counts(n, q).identities());
            for f in families_for(n, r) {
                if f.is_enumerable() {
                    l.checks(membership_consistency(&field, &f)?);
                } else {
                    l.checks(membership_consistency_from(&field, &f, &trace_multiplicities(&field, &f, MultiplicityMode::Formula)?)?);
                }
                for h in 0..=4 {
                    l.checks(verify_lhs_expansion(&field, &f, h)?);
                }
            }
        }
    }
    for (r, t_max) in [(1u32, 3u32), (2, 2), (3, 2)] {
        let field = Field::new(r)?;
        let gf = Gf::new(r);
        for t in 1..=t_max {
            for a in field.nonzero() {
                let naive = BigInt::from(gf.kloosterman_gl(t as usize, a.bits(), 1));
                for method in GlMethod::ALL {
                    l.eq(|| format!("K_GL({t},{}) a={a} by {method:?}", field.q()), naive.clone(), kloosterman_gl(&field, t, a, field.one(), method)?);
                }
            }
        }
    }
    Ok(())
}

fn main() {
    let results = [
        criterion(1, "moment recursions reproduce brute-force moments at q = 4, 8 for h = 1..10", moment_recursion_vs_oracle),
        criterion(2, "n = 2 plus-type and n = 1 minus-type specializations and spot moments", family_specializations),
        criterion(3, "double-coset exponential sums equal their closed forms", cell_exponential_sums),
        criterion(4, "materialized group orders match the order formulas; |O+(4,2)| = 72", order_bookkeeping),
        criterion(5, "trace multiplicities by formula equal enumeration; exceptional values", trace_multiplicities_and_positivity),
        criterion(6, "dual weights by formula equal direct counts; kernel of a -> c(a)", code_layer),
        criterion(7, "weight distributions: symmetry, totals, MacWilliams, subset enumeration", weight_distributions),
        criterion(8, "Pless power moment identity for h = 0..10", pless_identity),
        criterion(9, "character-sum, group-order and GL Kloosterman identity suite", identity_suite),
    ];
    let failed = results.iter().filter(|&&p| !p).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
