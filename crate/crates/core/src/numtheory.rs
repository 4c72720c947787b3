//! Binary digit combinatorics: valuations, primitive prime divisors, blocks,
//! the cyclic shift and complement on m-digit strings, and Δ_m.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::gammal1::gcd;
use crate::report::Report;

pub fn nu_p(k: u64, p: u64) -> Result<u32> {
    if k == 0 || p < 2 {
        return Err(Error::Precondition(format!("valuation needs k ≥ 1 and p ≥ 2 (k={k}, p={p})")));
    }
    let mut k = k;
    let mut v = 0;
    while k % p == 0 {
        k /= p;
        v += 1;
    }
    Ok(v)
}

pub fn p_part(k: u64, p: u64) -> Result<u64> {
    Ok(p.pow(nu_p(k, p)?))
}

/// Trial division; fine up to 2^40 or so.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = vec![];
    let mut r = 2u64;
    while r * r <= n {
        if n % r == 0 {
            let mut e = 0;
            while n % r == 0 {
                n /= r;
                e += 1;
            }
            out.push((r, e));
        }
        r += if r == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Primes dividing p^m - 1 but no p^d - 1 with d < m.
pub fn ppd_list(p: u64, m: u32) -> Result<Vec<u64>> {
    let q = (p as u128).checked_pow(m).filter(|&q| q <= 1 << 40 && m >= 1);
    let q = q.ok_or_else(|| Error::Precondition(format!("p^m = {p}^{m} is out of range")))?;
    Ok(factorize((q - 1) as u64)
        .into_iter()
        .map(|(r, _)| r)
        .filter(|&r| (1..m).all(|d| ((p as u128).pow(d) - 1) % r as u128 != 0))
        .collect())
}

pub fn no_ppd_divides_m(p: u64, m: u32) -> Result<bool> {
    Ok(ppd_list(p, m)?.iter().all(|&r| m as u64 % r != 0))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitProfile {
    pub k: u64,
    pub s2: u32,
    pub beta: u32,
    /// finite blocks from the lowest digit up: (position, length, digit)
    pub blocks: Vec<(u32, u32, u8)>,
}

pub fn digit_profile(k: u64) -> DigitProfile {
    let top = 64 - k.leading_zeros();
    let mut blocks: Vec<(u32, u32, u8)> = vec![];
    for t in 0..top {
        let d = (k >> t & 1) as u8;
        match blocks.last_mut() {
            Some(b) if b.2 == d => b.1 += 1,
            _ => blocks.push((t, 1, d)),
        }
    }
    DigitProfile { k, s2: k.count_ones(), beta: beta(k), blocks }
}

/// Number of 1-blocks.
pub fn beta(k: u64) -> u32 {
    (k & !(k << 1)).count_ones()
}

/// Length of the longest 1-block.
pub fn longest_one_block(mut k: u64) -> u32 {
    let mut l = 0;
    while k != 0 {
        k &= k >> 1;
        l += 1;
    }
    l
}

fn check_range(delta: u64, m: u32) -> Result<u64> {
    if m == 0 || m > 63 || delta >> m != 0 {
        return Err(Error::OutOfRange(delta));
    }
    Ok((1u64 << m) - 1)
}

/// Left cyclic shift of the m-digit string of δ.
pub fn shift_m(delta: u64, m: u32) -> Result<u64> {
    let full = check_range(delta, m)?;
    Ok((delta << 1 | delta >> (m - 1)) & full)
}

pub fn complement_m(delta: u64, m: u32) -> Result<u64> {
    Ok(check_range(delta, m)? - delta)
}

/// Longest run of equal digits when the m digits of δ are written on a circle.
pub fn lambda_m(delta: u64, m: u32) -> Result<u32> {
    let full = check_range(delta, m)?;
    if delta == 0 || delta == full {
        return Ok(m);
    }
    let mut best = 0;
    for d in [delta, full - delta] {
        // rotate so the string starts right after a 0, then runs cannot wrap
        let mut x = d;
        while x & 1 == 1 && x >> (m - 1) & 1 == 1 {
            x = shift_m(x, m)?;
        }
        best = best.max(longest_one_block(x));
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DeltaWitness {
    pub delta: u64,
    pub a: u64,
    pub b: u64,
}

/// Every (|a-b|, a, b) with a ≠ b in 1..2^m, a of exactly two digits,
/// b of at most two, and (2^m-1)/gcd(m, 2^m-1) dividing a - b.
pub fn delta_witnesses(m: u32) -> Result<Vec<DeltaWitness>> {
    if m == 0 || m > 62 {
        return Err(Error::Precondition(format!("m = {m} out of range")));
    }
    let full = (1u64 << m) - 1;
    let modulus = full / gcd(m as u64, full);
    let twos: Vec<u64> = (0..m).flat_map(|i| (i + 1..m).map(move |j| 1u64 << i | 1u64 << j)).collect();
    let ones = (0..m).map(|i| 1u64 << i);
    let bs: Vec<u64> = ones.chain(twos.iter().copied()).collect();
    let mut out = vec![];
    for &a in &twos {
        for &b in &bs {
            if a != b && a.abs_diff(b) % modulus == 0 {
                out.push(DeltaWitness { delta: a.abs_diff(b), a, b });
            }
        }
    }
    out.sort();
    Ok(out)
}

pub fn delta_set(m: u32) -> Result<Vec<u64>> {
    let mut d: Vec<u64> = delta_witnesses(m)?.into_iter().map(|w| w.delta).collect();
    d.dedup();
    Ok(d)
}

/// Whether (2^m-1)/gcd(m, 2^m-1) > 2^{5m/6} - 1, in exact arithmetic; when
/// true, Δ_m is empty because every element would need
/// gcd(δ, 2^m-1) ≤ 2^{5m/6} - 1 while being a multiple of the left side.
pub fn bound_excludes(m: u32) -> bool {
    let full = (BigUint::from(1u32) << m) - 1u32;
    let r = u64::try_from(&full % m as u64).expect("remainder is below m");
    let g = gcd(m as u64, r);
    let lhs = &full / g + 1u32;
    // lhs > 2^{5m/6}  ⇔  lhs^6 > 2^{5m}
    lhs.pow(6) > BigUint::from(1u32) << (5 * m)
}

/// Largest m with m < 6 + 6·log2(m), scanning up to `limit`.
pub fn analytic_cutoff(limit: u32) -> u32 {
    (1..=limit).filter(|&m| (m as f64) < 6.0 + 6.0 * (m as f64).log2()).max().unwrap_or(0)
}

/// Δ_m = ∅ exactly for m ≠ 6 (m ≤ max_m), together with the bound chain
/// β(δ) ≤ 3 and gcd(δ, 2^m-1) ≤ 2^{5m/6} - 1 for every δ found.
pub fn verify_unexpected(max_m: u32) -> Result<Report> {
    let mut r = Report::new("delta_set(m) is empty iff m != 6; every delta has beta <= 3 and gcd(delta, 2^m-1) <= 2^(5m/6)-1", format!("1 <= m <= {max_m}"));
    for m in 1..=max_m {
        let d = delta_set(m)?;
        if d.is_empty() != (m != 6) {
            r.violation(json!({"m": m, "delta_set": d}));
        }
        let full = (1u64 << m) - 1;
        for &delta in &d {
            let g = gcd(delta, full);
            let within = BigUint::from(g + 1).pow(6) <= BigUint::from(1u32) << (5 * m);
            if beta(delta) > 3 || !within {
                r.violation(json!({"m": m, "delta": delta, "beta": beta(delta), "gcd": g}));
            }
        }
    }
    if !delta_witnesses(6)?.contains(&DeltaWitness { delta: 21, a: 24, b: 3 }) {
        r.violation(json!({"m": 6, "missing_witness": [24, 3]}));
    }
    let cut = analytic_cutoff(1000);
    if cut != 37 {
        r.violation(json!({"analytic_cutoff": cut}));
    }
    // beyond the cutoff the divisibility bound alone rules Δ_m out
    for m in 38..=200 {
        if !bound_excludes(m) {
            r.violation(json!({"m": m, "bound_excludes": false}));
        }
    }
    Ok(r)
}

/// |β(k+2^t) - β(k)| ≤ 1, and s(k+2^t) ≥ s(k) - l_1 + 1 ≥ β(k) when β(k) ≥ 1.
pub fn block_lemma_checks(k_bits: u32, t_max: u32) -> Report {
    let mut r = Report::new("|beta(k+2^t)-beta(k)| <= 1 and s(k+2^t) >= s(k)-l1+1 >= beta(k)", format!("k < 2^{k_bits}, t < {t_max}"));
    for k in 0u64..(1 << k_bits) {
        let (b, s, l1) = (beta(k), k.count_ones(), longest_one_block(k));
        for t in 0..t_max {
            let k2 = k + (1 << t);
            if beta(k2).abs_diff(b) > 1 {
                r.violation(json!({"k": k, "t": t, "part": 1}));
            }
            if b >= 1 && (k2.count_ones() + l1 < s + 1 || s + 1 < l1 + b) {
                r.violation(json!({"k": k, "t": t, "part": 2}));
            }
        }
    }
    r
}

/// gcd(δ, 2^m-1) ≤ 2^{m-λ_m(δ)} - 1 and, with k = β(δ),
/// gcd(δ, 2^m-1) ≤ 2^{(1-1/(2k))m} - 1, for all δ in 1..2^m-1.
pub fn gcd_bound_check(max_m: u32) -> Result<Report> {
    let mut r = Report::new("gcd(delta, 2^m-1) <= 2^(m-lambda_m(delta))-1 and <= 2^((1-1/(2 beta))m)-1", format!("1 <= m <= {max_m}, 1 <= delta <= 2^m-2"));
    for m in 1..=max_m {
        let full = (1u64 << m) - 1;
        for delta in 1..full {
            let g = gcd(delta, full);
            let l = lambda_m(delta, m)?;
            if g > (1u64 << (m - l)) - 1 {
                r.violation(json!({"m": m, "delta": delta, "lambda": l, "gcd": g}));
            }
            let k = beta(delta);
            if BigUint::from(g + 1).pow(2 * k) > BigUint::from(1u32) << ((2 * k - 1) * m) {
                r.violation(json!({"m": m, "delta": delta, "beta": k, "gcd": g}));
            }
        }
    }
    Ok(r)
}

/// Whether u·(2^m-1)/(2^n-1) has exactly two digits with u odd, coprime to
/// 2^n - 1, n | m, checked directly.
pub fn singer_condition_direct(m: u32, n: u32, u: u64) -> bool {
    if n == 0 || m % n != 0 || u == 0 || u >= 1 << n || u % 2 == 0 {
        return false;
    }
    let nn = (1u64 << n) - 1;
    gcd(u, nn) == 1 && (u as u128 * (((1u128 << m) - 1) / nn as u128)).count_ones() == 2
}

/// The closed form: m = n ≥ 2 and u = 1 + 2^k with ν2(k) ≥ ν2(m), or m even,
/// n = m/2 and u = 1.
pub fn singer_condition_closed(m: u32, n: u32, u: u64) -> bool {
    let a = m == n && m >= 2 && u > 2 && (u - 1).is_power_of_two() && {
        let k = (u - 1).trailing_zeros();
        k < m && k.trailing_zeros() >= m.trailing_zeros()
    };
    let b = m % 2 == 0 && n == m / 2 && u == 1;
    a || b
}

pub fn singer_parameter_equivalence(max_m: u32) -> Report {
    let mut r = Report::new("direct two-digit condition agrees with the closed form", format!("n | m <= {max_m}, 1 <= u < 2^n"));
    for m in 1..=max_m {
        for n in (1..=m).filter(|n| m % n == 0) {
            for u in 1..1u64 << n {
                let (d, c) = (singer_condition_direct(m, n, u), singer_condition_closed(m, n, u));
                if d != c {
                    r.violation(json!({"m": m, "n": n, "u": u, "direct": d, "closed": c}));
                }
            }
        }
        // gcd(m, 2k) | k  ⇔  ν2(k) ≥ ν2(m)
        for k in 1..m {
            if (k as u64 % gcd(m as u64, 2 * k as u64) == 0) != (k.trailing_zeros() >= m.trailing_zeros()) {
                r.violation(json!({"m": m, "k": k, "part": "nu2"}));
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(nu_p(24, 2).unwrap(), 3);
        assert_eq!(p_part(24, 2).unwrap(), 8);
        assert_eq!(nu_p(7, 2).unwrap(), 0);
        assert!(nu_p(0, 2).is_err());
    }

    #[test]
    fn ppds() {
        assert_eq!(ppd_list(2, 6).unwrap(), Vec::<u64>::new());
        assert_eq!(ppd_list(2, 1).unwrap(), Vec::<u64>::new());
        assert_eq!(ppd_list(2, 4).unwrap(), vec![5]);
        assert_eq!(ppd_list(3, 2).unwrap(), Vec::<u64>::new());
        assert_eq!(ppd_list(2, 11).unwrap(), vec![23, 89]);
        for m in 1..=30 {
            assert!(no_ppd_divides_m(2, m).unwrap());
        }
        assert_eq!(factorize(1 << 20), vec![(2, 20)]);
        assert_eq!(factorize((1 << 36) - 1), vec![(3, 3), (5, 1), (7, 1), (13, 1), (19, 1), (37, 1), (73, 1), (109, 1)]);
    }

    #[test]
    fn digits() {
        let p = digit_profile(0b1101100);
        assert_eq!((p.s2, p.beta), (4, 2));
        assert_eq!(p.blocks, vec![(0, 2, 0), (2, 2, 1), (4, 1, 0), (5, 2, 1)]);
        assert_eq!(digit_profile(0).blocks, vec![]);
        assert_eq!(lambda_m(21, 6).unwrap(), 1);
        assert_eq!(lambda_m(0b100011, 6).unwrap(), 3);
        assert_eq!(lambda_m(0, 6).unwrap(), 6);
        assert_eq!(complement_m(0, 6).unwrap(), 63);
        assert!(shift_m(64, 6).is_err());
        let mut x = 0b100110;
        for _ in 0..6 {
            x = shift_m(x, 6).unwrap();
        }
        assert_eq!(x, 0b100110);
        assert_eq!(shift_m(0b100110, 6).unwrap(), 0b001101);
    }

    #[test]
    fn deltas() {
        assert_eq!(delta_set(6).unwrap(), vec![21, 42]);
        assert!(delta_witnesses(6).unwrap().contains(&DeltaWitness { delta: 21, a: 24, b: 3 }));
        assert!(delta_set(5).unwrap().is_empty());
        assert!(delta_set(12).unwrap().is_empty());
    }

    #[test]
    fn cutoff() {
        assert_eq!(analytic_cutoff(1000), 37);
        assert!(!bound_excludes(6));
        assert!(bound_excludes(38));
    }

    #[test]
    fn small_reports() {
        assert!(verify_unexpected(20).unwrap().ok());
        assert!(block_lemma_checks(10, 12).ok());
        assert!(gcd_bound_check(10).unwrap().ok());
        assert!(singer_parameter_equivalence(12).ok());
    }

    #[test]
    fn singer_examples() {
        assert!(singer_condition_direct(6, 6, 5) && singer_condition_closed(6, 6, 5));
        assert!(singer_condition_direct(6, 3, 1) && singer_condition_closed(6, 3, 1));
        assert!(!singer_condition_direct(4, 4, 3) && !singer_condition_closed(4, 4, 3));
    }
}
