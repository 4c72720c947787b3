//! Exhaustive cross-checks of closed-form criteria against direct
//! computation. Each returns a report listing every disagreement.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::json;

use crate::error::Result;
use crate::field::{is_prime, FieldSpec};
use crate::gammal1::{
    contains, contains_direct, is_normal_direct, is_normal_in, is_transitive, knuth_full_cycle, largest_abelian_normal, simulate_full_cycle, standard_form, Gamma, StandardParams,
};
use crate::numtheory;
use crate::report::Report;
use crate::squaring::{biadditivity_criterion, Squaring};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Fast,
    Exhaustive,
}

/// (p, m) with p^m ≤ limit.
pub fn fields_up_to(limit: u64) -> Vec<(u32, u32)> {
    let mut out = vec![];
    for p in (2..=limit).filter(|&p| is_prime(p)) {
        let mut q = p;
        let mut m = 1;
        while q <= limit {
            out.push((p as u32, m));
            q *= p;
            m += 1;
        }
    }
    out
}

pub fn knuth_vs_simulation(max_modulus: u64) -> Report {
    let mut r = Report::new("Knuth full-period criterion agrees with simulation", format!("1 <= M <= {max_modulus}, 0 <= a, b < M"));
    for modulus in 1..=max_modulus {
        for a in 0..modulus {
            for b in 0..modulus {
                if knuth_full_cycle(a, b, modulus) != simulate_full_cycle(a, b, modulus) {
                    r.violation(json!({"a": a, "b": b, "M": modulus}));
                }
            }
        }
    }
    r
}

/// Standard form of the closure of the standard generators gives back the
/// parameters, and the orbit count formula matches the action.
pub fn standard_form_round_trip(limit: u64) -> Result<Report> {
    let mut r = Report::new("standard_form(generators(d,e,s)) = (d,e,s); transitivity criterion matches the action", format!("p^m <= {limit}"));
    for (p, m) in fields_up_to(limit) {
        let g = Gamma::new(p, m)?;
        for sp in StandardParams::all(p, m) {
            let back = standard_form(&g, &sp.generators(&g))?;
            if back != sp {
                r.violation(json!({"params": sp, "round_trip": back}));
            }
            let direct = g.orbit_count_of(&sp.generators(&g)) == 1;
            if direct != is_transitive(&sp) {
                r.violation(json!({"params": sp, "transitive_direct": direct}));
            }
        }
    }
    Ok(r)
}

pub fn containment_and_normality(limit: u64) -> Result<Report> {
    let mut r = Report::new("containment and normality criteria agree with element-wise checks", format!("p^m <= {limit}, all pairs of subgroups"));
    for (p, m) in fields_up_to(limit) {
        let all = StandardParams::all(p, m);
        let g = Gamma::new(p, m)?;
        let elems: Vec<_> = all.iter().map(|sp| sp.elements(&g)).collect();
        for (i, big) in all.iter().enumerate() {
            for (j, small) in all.iter().enumerate() {
                let direct = elems[j].is_subset_of(&g, &elems[i]);
                if contains(big, small)? != direct {
                    r.violation(json!({"big": big, "small": small, "contains_direct": direct}));
                    continue;
                }
                if direct && is_normal_in(small, big)? != is_normal_direct(small, big)? {
                    r.violation(json!({"sup": big, "sub": small, "normal_direct": !is_normal_in(small, big)?}));
                }
            }
        }
        // spot-check the one-subgroup helper against the subset test
        if let (Some(a), Some(b)) = (all.first(), all.last()) {
            if contains(a, b)? != contains_direct(a, b)? {
                r.violation(json!({"big": a, "small": b}));
            }
        }
    }
    Ok(r)
}

/// A cyclic subgroup transitive on nonzero elements is the full scalar group.
pub fn cyclic_transitive_uniqueness(limit: u64) -> Result<Report> {
    let mut r = Report::new("the only transitive cyclic subgroup is the scalar group", format!("p^m <= {limit}"));
    for (p, m) in fields_up_to(limit) {
        let g = Gamma::new(p, m)?;
        let n1 = g.units();
        for i in 0..g.order() as usize {
            let x = g.from_index(i);
            if g.orbit_count_of(&[x]) == 1 && (x.s_exp != 0 || crate::gammal1::gcd(x.e_exp, n1) != 1) {
                r.violation(json!({"p": p, "m": m, "generator": x}));
            }
        }
    }
    Ok(r)
}

/// Every transitive subgroup has a unique largest abelian normal subgroup,
/// its scalar part, except over F_9, where some have several maximal ones.
pub fn largest_abelian_normal_check(limit: u64) -> Result<Report> {
    let mut r = Report::new("unique largest abelian normal subgroup = A ∩ scalars, unless (p,m) = (3,2)", format!("p^m <= {limit}, transitive subgroups"));
    let mut exception_seen = false;
    for (p, m) in fields_up_to(limit) {
        for sp in StandardParams::all(p, m).into_iter().filter(is_transitive) {
            let maxima = largest_abelian_normal(&sp)?;
            let scalar_part = StandardParams { p, m, d: sp.d, e: 0, s: m };
            let unique_scalar = maxima == [scalar_part];
            if (p, m) == (3, 2) {
                exception_seen |= !unique_scalar;
            } else if !unique_scalar {
                r.violation(json!({"params": sp, "maxima": maxima}));
            }
            for k in &maxima {
                let g = Gamma::new(p, m)?;
                let [a, b] = k.generators(&g);
                if g.compose(a, b) != g.compose(b, a) {
                    r.violation(json!({"params": sp, "not_abelian": k}));
                }
            }
        }
    }
    if limit >= 9 && !exception_seen {
        r.violation(json!({"missing_exception": [3, 2]}));
    }
    Ok(r)
}

/// Random polynomial maps F_{2^m} → F_{2^m}: the digit criterion on the
/// interpolated coefficients matches the direct biadditivity and
/// nontriviality tests on the table.
pub fn biadditivity_criterion_random(max_m: u32, samples: usize, seed: u64) -> Result<Report> {
    let mut r = Report::new("digit criterion on coefficients agrees with the direct biadditivity test", format!("1 <= m <= {max_m}, {samples} random maps per m"));
    let mut rng = StdRng::seed_from_u64(seed);
    for m in 1..=max_m {
        let f = FieldSpec::binary(m)?;
        let q = f.order() as usize;
        let low: Vec<usize> = (1..q).filter(|i| i.count_ones() <= 2).collect();
        for _ in 0..samples {
            let mut coeffs = vec![0; q];
            // mostly supported on exponents with at most two digits, so that
            // both outcomes are common
            for _ in 0..rng.gen_range(1..=3) {
                let i = if rng.gen_bool(0.8) { low[rng.gen_range(0..low.len())] } else { rng.gen_range(0..q) };
                coeffs[i] = rng.gen_range(1..q as u32);
            }
            let table: Vec<u32> = f.elements().map(|x| f.evaluate(&coeffs, x)).collect();
            let crit = biadditivity_criterion(&f.interpolate(&table)?);
            let s = Squaring::new(m, m, table)?;
            let direct = s.is_biadditive();
            let nontrivial = direct && !s.form_is_trivial();
            if crit.biadditive != direct || (direct && crit.nontrivial != nontrivial) {
                r.violation(json!({"m": m, "coeffs": coeffs}));
            }
        }
    }
    Ok(r)
}

pub fn run_all(level: Level) -> Result<Vec<Report>> {
    let full = level == Level::Exhaustive;
    Ok(vec![
        knuth_vs_simulation(if full { 128 } else { 32 }),
        standard_form_round_trip(if full { 512 } else { 64 })?,
        containment_and_normality(if full { 512 } else { 64 })?,
        cyclic_transitive_uniqueness(if full { 1024 } else { 64 })?,
        largest_abelian_normal_check(if full { 512 } else { 64 })?,
        biadditivity_criterion_random(5, if full { 1000 } else { 200 }, 0x5eed)?,
        numtheory::block_lemma_checks(if full { 20 } else { 12 }, if full { 24 } else { 14 }),
        numtheory::gcd_bound_check(if full { 16 } else { 10 })?,
        numtheory::singer_parameter_equivalence(if full { 20 } else { 12 }),
    ])
}
