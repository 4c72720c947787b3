//! ΓL_1(p^m) = Gal(F_{p^m}/F_p) ⋉ F_{p^m}^*, acting on the right.
//!
//! An element (s, e) maps x ↦ x^{p^s}·ω^e. On discrete logs this is the
//! affine map l ↦ p^s·l + e modulo p^m - 1, which is how most of the
//! enumerations below run.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{is_prime, Elem, FieldSpec};

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut v: Vec<u64> = (1..=n).take_while(|d| d * d <= n).filter(|d| n % d == 0).collect();
    let big: Vec<u64> = v.iter().rev().map(|d| n / d).filter(|&q| q * q != n).collect();
    v.extend(big);
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SemilinearMap {
    pub s_exp: u32,
    pub e_exp: u64,
}

/// The ambient group ΓL_1(p^m).
#[derive(Clone, Debug)]
pub struct Gamma {
    p: u32,
    m: u32,
    n1: u64,
    ppow: Vec<u64>,
}

impl Gamma {
    pub fn new(p: u32, m: u32) -> Result<Gamma> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p));
        }
        let q = (p as u64).checked_pow(m).filter(|&q| m >= 1 && q <= 1 << 24);
        let q = q.ok_or(Error::UnsupportedField { p, m })?;
        let n1 = q - 1;
        let ppow = (0..m).map(|i| (p as u64).pow(i) % n1.max(1)).collect();
        Ok(Gamma { p, m, n1, ppow })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    /// p^m - 1
    pub fn units(&self) -> u64 {
        self.n1
    }
    pub fn order(&self) -> u64 {
        self.m as u64 * self.n1
    }

    fn modn(&self, x: u64) -> u64 {
        if self.n1 == 1 {
            0
        } else {
            x % self.n1
        }
    }

    pub fn elem(&self, s: i64, e: i64) -> SemilinearMap {
        SemilinearMap {
            s_exp: s.rem_euclid(self.m as i64) as u32,
            e_exp: e.rem_euclid(self.n1 as i64) as u64,
        }
    }

    pub fn identity(&self) -> SemilinearMap {
        SemilinearMap { s_exp: 0, e_exp: 0 }
    }
    pub fn alpha(&self) -> SemilinearMap {
        self.elem(1, 0)
    }
    pub fn omega_hat(&self, k: i64) -> SemilinearMap {
        self.elem(0, k)
    }

    /// Apply a first, then b.
    pub fn compose(&self, a: SemilinearMap, b: SemilinearMap) -> SemilinearMap {
        SemilinearMap {
            s_exp: (a.s_exp + b.s_exp) % self.m,
            e_exp: self.modn(a.e_exp * self.ppow[b.s_exp as usize] + b.e_exp),
        }
    }

    pub fn inverse(&self, a: SemilinearMap) -> SemilinearMap {
        let s = (self.m - a.s_exp) % self.m;
        let e = self.modn(a.e_exp * self.ppow[s as usize]);
        SemilinearMap { s_exp: s, e_exp: self.modn(self.n1 - e) }
    }

    pub fn pow(&self, a: SemilinearMap, k: u64) -> SemilinearMap {
        let mut r = self.identity();
        for _ in 0..k {
            r = self.compose(r, a);
        }
        r
    }

    pub fn index(&self, a: SemilinearMap) -> usize {
        (a.s_exp as u64 * self.n1 + a.e_exp) as usize
    }

    pub fn from_index(&self, i: usize) -> SemilinearMap {
        SemilinearMap { s_exp: (i as u64 / self.n1) as u32, e_exp: i as u64 % self.n1 }
    }

    /// Action on the discrete log of a nonzero element.
    pub fn apply_log(&self, a: SemilinearMap, l: u64) -> u64 {
        self.modn(l * self.ppow[a.s_exp as usize] + a.e_exp)
    }

    /// x^{p^s}·ω^e, with 0 fixed.
    pub fn apply(&self, f: &FieldSpec, a: SemilinearMap, x: Elem) -> Elem {
        debug_assert!(f.p() == self.p && f.m() == self.m);
        if x == 0 {
            return 0;
        }
        f.mul(f.frobenius(x, a.s_exp as i64), f.omega_pow(a.e_exp as i64))
    }

    /// Every element of the subgroup generated by `gens`, sorted.
    pub fn closure(&self, gens: &[SemilinearMap]) -> Subgroup {
        let mut member = vec![false; self.order() as usize];
        let id = self.identity();
        member[self.index(id)] = true;
        let mut queue = VecDeque::from([id]);
        let mut elems = vec![id];
        while let Some(g) = queue.pop_front() {
            for &x in gens {
                let h = self.compose(g, x);
                let i = self.index(h);
                if !member[i] {
                    member[i] = true;
                    elems.push(h);
                    queue.push_back(h);
                }
            }
        }
        elems.sort();
        Subgroup { elems, member }
    }

    /// Number of orbits of ⟨gens⟩ on the nonzero field elements.
    pub fn orbit_count_of(&self, gens: &[SemilinearMap]) -> u64 {
        let n = self.n1 as usize;
        let mut seen = vec![false; n];
        let mut orbits = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            orbits += 1;
            seen[start] = true;
            let mut stack = vec![start as u64];
            while let Some(l) = stack.pop() {
                for &g in gens {
                    let k = self.apply_log(g, l) as usize;
                    if !seen[k] {
                        seen[k] = true;
                        stack.push(k as u64);
                    }
                }
            }
        }
        orbits
    }
}

#[derive(Clone, Debug)]
pub struct Subgroup {
    pub elems: Vec<SemilinearMap>,
    member: Vec<bool>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elems.len()
    }
    pub fn contains(&self, g: &Gamma, a: SemilinearMap) -> bool {
        self.member[g.index(a)]
    }
    pub fn is_subset_of(&self, g: &Gamma, other: &Subgroup) -> bool {
        self.elems.iter().all(|&a| other.contains(g, a))
    }
}

/// Standard parameters (d, e, s): the subgroup ⟨α^s ω̂^e, ω̂^d⟩.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StandardParams {
    pub p: u32,
    pub m: u32,
    pub d: u64,
    pub e: u64,
    pub s: u32,
}

impl StandardParams {
    pub fn new(p: u32, m: u32, d: u64, e: u64, s: u32) -> Result<StandardParams> {
        let sp = StandardParams { p, m, d, e, s };
        sp.validate()?;
        Ok(sp)
    }

    /// The full scalar group.
    pub fn scalars(p: u32, m: u32) -> StandardParams {
        StandardParams { p, m, d: 1, e: 0, s: m }
    }

    fn n1(&self) -> u64 {
        (self.p as u64).pow(self.m) - 1
    }

    fn ps1(&self) -> u64 {
        (self.p as u64).pow(self.s) - 1
    }

    pub fn validate(&self) -> Result<()> {
        let n1 = self.n1();
        let bad = |why: &str| Err(Error::Precondition(format!("{self:?}: {why}")));
        if self.d == 0 || n1 % self.d != 0 {
            return bad("d must divide p^m - 1");
        }
        if self.s == 0 || self.m % self.s != 0 {
            return bad("s must divide m");
        }
        if self.e >= self.d {
            return bad("e must lie in 0..d");
        }
        if (self.e as u128 * (n1 / self.ps1()) as u128) % self.d as u128 != 0 {
            return bad("d must divide e(p^m-1)/(p^s-1)");
        }
        Ok(())
    }

    pub fn generators(&self, g: &Gamma) -> [SemilinearMap; 2] {
        [g.elem(self.s as i64, self.e as i64), g.omega_hat(self.d as i64)]
    }

    pub fn order(&self) -> u64 {
        self.n1() / self.d * (self.m / self.s) as u64
    }

    pub fn elements(&self, g: &Gamma) -> Subgroup {
        g.closure(&self.generators(g))
    }

    /// Every subgroup of ΓL_1(p^m), by its standard parameters.
    pub fn all(p: u32, m: u32) -> Vec<StandardParams> {
        let n1 = (p as u64).pow(m) - 1;
        let mut out = vec![];
        for d in divisors(n1) {
            for s in divisors(m as u64) {
                for e in 0..d {
                    let sp = StandardParams { p, m, d, e, s: s as u32 };
                    if sp.validate().is_ok() {
                        out.push(sp);
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.s == self.m || (self.ps1() as u128 * self.d as u128) % self.n1() as u128 == 0
    }
}

/// Standard parameters of ⟨gens⟩, found by enumerating the subgroup.
pub fn standard_form(g: &Gamma, gens: &[SemilinearMap]) -> Result<StandardParams> {
    if gens.is_empty() {
        return Err(Error::Precondition("empty generator list".into()));
    }
    let h = g.closure(gens);
    let n1 = g.units();
    let d = h.elems.iter().filter(|a| a.s_exp == 0).fold(n1, |acc, a| gcd(acc, a.e_exp));
    let s = h.elems.iter().filter(|a| a.s_exp > 0).map(|a| a.s_exp).min().unwrap_or(g.m());
    let e = if s == g.m() {
        0
    } else {
        h.elems.iter().find(|a| a.s_exp == s).map(|a| a.e_exp % d).unwrap()
    };
    let sp = StandardParams { p: g.p(), m: g.m(), d, e, s };
    sp.validate()?;
    let regen = sp.elements(g);
    if regen.elems != h.elems || sp.order() as usize != h.order() {
        return Err(Error::Inconsistent(format!("{sp:?} does not regenerate the subgroup")));
    }
    Ok(sp)
}

/// Knuth's criterion for x ↦ ax + b (mod M) to be a single M-cycle.
pub fn knuth_full_cycle(a: u64, b: u64, modulus: u64) -> bool {
    if modulus == 1 {
        return true;
    }
    if gcd(b % modulus, modulus) != 1 {
        return false;
    }
    if prime_factors(modulus).iter().any(|&r| a % r != 1 % r) {
        return false;
    }
    !(modulus % 4 == 0 && a % 4 != 1)
}

pub fn simulate_full_cycle(a: u64, b: u64, modulus: u64) -> bool {
    let mut x = 0u64;
    for step in 1..=modulus {
        x = ((a as u128 * x as u128 + b as u128) % modulus as u128) as u64;
        if x == 0 {
            return step == modulus;
        }
    }
    false
}

/// The criterion, cross-checked by simulation when M ≤ bound.
pub fn knuth_full_cycle_checked(a: u64, b: u64, modulus: u64, bound: u64) -> Result<bool> {
    let c = knuth_full_cycle(a, b, modulus);
    if modulus <= bound && simulate_full_cycle(a, b, modulus) != c {
        return Err(Error::Inconsistent(format!("Knuth criterion disagrees at ({a},{b},{modulus})")));
    }
    Ok(c)
}

/// Whether the subgroup is transitive on F_{p^m}^*.
pub fn is_transitive(sp: &StandardParams) -> bool {
    let d = sp.d;
    if d == 1 {
        return true;
    }
    let ps1 = sp.ps1();
    sp.e > 0
        && gcd(d, sp.e) == 1
        && prime_factors(d).iter().all(|&r| ps1 % r == 0)
        && (d % 4 != 0 || ps1 % 4 == 0)
}

/// Number of orbits on F_{p^m}^*: the cycles of x ↦ p^s x + e on Z/dZ.
pub fn orbit_count(sp: &StandardParams) -> u64 {
    let d = sp.d;
    let a = (sp.p as u64).pow(sp.s) % d;
    let mut seen = vec![false; d as usize];
    let mut cycles = 0;
    for x0 in 0..d {
        if seen[x0 as usize] {
            continue;
        }
        cycles += 1;
        let mut x = x0;
        while !seen[x as usize] {
            seen[x as usize] = true;
            x = (a * x + sp.e) % d;
        }
    }
    cycles
}

/// Orbit count by letting the generators act on all nonzero elements.
pub fn orbit_count_direct(sp: &StandardParams) -> Result<u64> {
    let g = Gamma::new(sp.p, sp.m)?;
    Ok(g.orbit_count_of(&sp.generators(&g)))
}

fn same_ambient(a: &StandardParams, b: &StandardParams) -> Result<()> {
    if (a.p, a.m) != (b.p, b.m) {
        return Err(Error::Precondition("subgroups of different ambient groups".into()));
    }
    Ok(())
}

/// Whether `small` = (d1, e1, s1) is a subgroup of `big` = (d, e, s).
pub fn contains(big: &StandardParams, small: &StandardParams) -> Result<bool> {
    same_ambient(big, small)?;
    let (d, e, s) = (big.d as i128, big.e as i128, big.s);
    let (d1, e1, s1) = (small.d as i128, small.e as i128, small.s);
    if d1 % d != 0 || s1 % s != 0 {
        return Ok(false);
    }
    let p = big.p as i128;
    let t = (p.pow(s1) - 1) / (p.pow(s) - 1);
    Ok((e * t - e1) % d == 0)
}

pub fn contains_direct(big: &StandardParams, small: &StandardParams) -> Result<bool> {
    same_ambient(big, small)?;
    let g = Gamma::new(big.p, big.m)?;
    let b = big.elements(&g);
    Ok(small.generators(&g).iter().all(|&x| b.contains(&g, x)))
}

/// Normality of `sub` = (d1, e1, s1) in `sup` = (d, e, s); requires sub ≤ sup.
pub fn is_normal_in(sub: &StandardParams, sup: &StandardParams) -> Result<bool> {
    if !contains(sup, sub)? {
        return Err(Error::Precondition("subgroup is not contained in the supergroup".into()));
    }
    let p = sup.p as i128;
    let (d, e, s) = (sup.d as i128, sup.e as i128, sup.s);
    let (d1, e1, s1) = (sub.d as i128, sub.e as i128, sub.s);
    let c1 = (d * (p.pow(s1) - 1)) % d1 == 0;
    let c2 = (e1 * (p.pow(s) - 1) - e * (p.pow(s1) - 1)) % d1 == 0;
    Ok(c1 && c2)
}

/// Normality by conjugating the generators of `sub` with those of `sup`.
pub fn is_normal_direct(sub: &StandardParams, sup: &StandardParams) -> Result<bool> {
    same_ambient(sub, sup)?;
    let g = Gamma::new(sup.p, sup.m)?;
    let k = sub.elements(&g);
    for y in sup.generators(&g) {
        let yi = g.inverse(y);
        for x in sub.generators(&g) {
            if !k.contains(&g, g.compose(g.compose(yi, x), y)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The quotient sup/sub as ⟨x, y | x^{s1/s} = y^{-a}, y^{d1/d} = 1, y^x = y^{p^s}⟩.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientData {
    pub order: u64,
    pub a: i64,
    pub x_power: u32,
    pub y_order: u64,
    pub y_twist: u64,
    pub k: u64,
}

pub fn quotient_data(sub: &StandardParams, sup: &StandardParams) -> Result<QuotientData> {
    if !is_normal_in(sub, sup)? {
        return Err(Error::Precondition("subgroup is not normal".into()));
    }
    let p = sup.p as i128;
    let (d, e, s) = (sup.d as i128, sup.e as i128, sup.s);
    let (d1, e1, s1) = (sub.d as i128, sub.e as i128, sub.s);
    let num = e1 - e * ((p.pow(s1) - 1) / (p.pow(s) - 1));
    if num % d != 0 {
        return Err(Error::Inconsistent("relator exponent is not an integer".into()));
    }
    let a = (num / d) as i64;
    let y_order = (d1 / d) as u64;
    let x_power = s1 / s;
    Ok(QuotientData {
        order: y_order * x_power as u64,
        a,
        x_power,
        y_order,
        y_twist: (p.pow(s) as u64) % y_order.max(1),
        k: gcd(a.unsigned_abs(), y_order),
    })
}

/// Maximal abelian normal subgroups of a transitive subgroup.
pub fn largest_abelian_normal(sp: &StandardParams) -> Result<Vec<StandardParams>> {
    if !is_transitive(sp) {
        return Err(Error::Precondition(format!("{sp:?} is not transitive")));
    }
    let mut cands = vec![];
    for k in StandardParams::all(sp.p, sp.m) {
        if k.is_abelian() && contains(sp, &k)? && is_normal_in(&k, sp)? {
            cands.push(k);
        }
    }
    let mut out = vec![];
    for k in &cands {
        let dominated = cands.iter().any(|o| o != k && contains(o, k).unwrap());
        if !dominated {
            out.push(*k);
        }
    }
    Ok(out)
}

/// The largest abelian normal subgroup, when there is a unique maximal one.
pub fn largest_abelian_normal_unique(sp: &StandardParams) -> Result<StandardParams> {
    let v = largest_abelian_normal(sp)?;
    match v.as_slice() {
        [one] => Ok(*one),
        _ => Err(Error::Inconsistent(format!("{} maximal abelian normal subgroups", v.len()))),
    }
}

/// Transitive subgroups of ΓL_1(2^m) that do not contain all scalars.
pub fn enumerate_transitive_subgroups(m: u32) -> Vec<StandardParams> {
    let n1 = (1u64 << m) - 1;
    let mut out = vec![];
    for d in divisors(n1).into_iter().filter(|&d| d >= 2) {
        for s in (2..=m).filter(|&s| m as u64 % (d * s as u64) == 0) {
            let ps1 = (1u64 << s) - 1;
            if prime_factors(d).iter().any(|&r| ps1 % r != 0) || (d % 4 == 0 && ps1 % 4 != 0) {
                continue;
            }
            if (n1 / ps1) % d != 0 {
                continue;
            }
            for e in (1..d).filter(|&e| gcd(d, e) == 1) {
                out.push(StandardParams { p: 2, m, d, e, s });
            }
        }
    }
    out.sort();
    out
}

/// Parameters of a homomorphism φ from A = ⟨ξ, υ⟩ = ⟨α^s ω̂^e, ω̂^d⟩ onto a
/// transitive subgroup of ΓL_1(2^n), with Ω = Ω_0^u for Ω_0 = ω^{(2^m-1)/(2^n-1)}:
/// φ(ξ) = β^s followed by Ω̂^{e''}, φ(υ) = Ω̂^{d'}, and Ω^{d'} = (ω^d)^ε.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HomTarget {
    pub n: u32,
    pub u: u64,
    pub d_prime: u64,
    pub e_pp: u64,
    pub epsilon_exp: u64,
}

impl HomTarget {
    /// φ(ξ) and φ(υ) in ΓL_1(2^n), with scalars written as powers of Ω_0.
    pub fn images(&self, a: &StandardParams) -> Result<[SemilinearMap; 2]> {
        let gn = Gamma::new(2, self.n)?;
        Ok([
            gn.elem(a.s as i64, (self.u * self.e_pp) as i64),
            gn.omega_hat((self.u * self.d_prime) as i64),
        ])
    }

    /// ζ = Ω^{e''} ω^{-eε} as a power of ω.
    pub fn zeta_log(&self, a: &StandardParams) -> i64 {
        let big = (1i64 << a.m) - 1;
        let idx = big / ((1i64 << self.n) - 1);
        (idx * self.u as i64 * self.e_pp as i64 - a.e as i64 * self.epsilon_exp as i64).rem_euclid(big)
    }
}

fn prop_conditions(a: &StandardParams, n: u32, dp: u64, epp: u64) -> bool {
    let m = a.m;
    let big = (1u64 << m) - 1;
    let nn = (1u64 << n) - 1;
    let ps1 = (1u64 << a.s) - 1;
    if dp == 0 || gcd(n as u64, nn) % dp != 0 {
        return false;
    }
    if epp >= nn || gcd(epp, dp) != 1 {
        return false;
    }
    if (big / a.d) % (nn / dp) != 0 {
        return false;
    }
    let lhs = (epp as u128 * (big / ps1) as u128) % nn as u128;
    let t = big / (a.d * ps1);
    let rhs = (a.e as u128 * dp as u128 * t as u128) % nn as u128;
    if lhs != rhs {
        return false;
    }
    let l = lcm(n as u64, a.s as u64) as u32;
    if l >= 64 || ((1u64 << l) - 1) / ps1 % dp != 0 {
        return false;
    }
    prime_factors(dp).iter().all(|&r| ps1 % r == 0)
}

fn epsilon_for(a: &StandardParams, n: u32, u: u64, dp: u64) -> Option<u64> {
    let big = (1u64 << a.m) - 1;
    let nn = (1u64 << n) - 1;
    let md = big / a.d;
    if md % (nn / dp) != 0 {
        return None;
    }
    let k = md / (nn / dp);
    Some((u as u128 * k as u128 % md as u128) as u64)
}

/// Checks that the generator images extend to a homomorphism onto a
/// transitive group whose scalar part is the image of A's scalar part.
pub fn validate_hom_target(a: &StandardParams, t: &HomTarget) -> Result<()> {
    let fail = |why: String| Err(Error::Inconsistent(why));
    let gm = Gamma::new(2, a.m)?;
    let gn = Gamma::new(2, t.n)?;
    let src = a.generators(&gm);
    let dst = t.images(a)?;
    // Cayley graph walk assigning φ(g·x) = φ(g)·φ(x)
    let mut phi: Vec<Option<SemilinearMap>> = vec![None; gm.order() as usize];
    phi[0] = Some(gn.identity());
    let mut queue = VecDeque::from([gm.identity()]);
    while let Some(g) = queue.pop_front() {
        let img = phi[gm.index(g)].unwrap();
        for (x, y) in src.iter().zip(&dst) {
            let h = gm.compose(g, *x);
            let want = gn.compose(img, *y);
            match phi[gm.index(h)] {
                None => {
                    phi[gm.index(h)] = Some(want);
                    queue.push_back(h);
                }
                Some(have) if have != want => return fail(format!("{t:?}: relations not respected")),
                _ => {}
            }
        }
    }
    if gn.orbit_count_of(&dst) != 1 {
        return fail(format!("{t:?}: image is not transitive"));
    }
    let image = gn.closure(&dst);
    let a0: BTreeSet<SemilinearMap> = phi
        .iter()
        .enumerate()
        .filter(|(i, v)| v.is_some() && gm.from_index(*i).s_exp == 0)
        .map(|(_, v)| v.unwrap())
        .collect();
    let b0: BTreeSet<SemilinearMap> = image.elems.iter().copied().filter(|x| x.s_exp == 0).collect();
    if a0 != b0 {
        return fail(format!("{t:?}: image of the scalar part is not the scalar part of the image"));
    }
    let want_eps = epsilon_for(a, t.n, t.u, t.d_prime);
    if want_eps != Some(t.epsilon_exp) {
        return fail(format!("{t:?}: wrong epsilon"));
    }
    Ok(())
}

/// All homomorphism targets of degree n, filtered by the closed-form
/// conditions and then validated on generators.
pub fn enumerate_hom_targets(a: &StandardParams, n: u32) -> Result<Vec<HomTarget>> {
    enumerate_hom_targets_where(a, n, |_| true)
}

/// As `enumerate_hom_targets`, skipping every (d', u) whose ε is rejected
/// by `keep_eps` before anything else is computed.
pub fn enumerate_hom_targets_where(a: &StandardParams, n: u32, mut keep_eps: impl FnMut(u64) -> bool) -> Result<Vec<HomTarget>> {
    if a.p != 2 || !is_transitive(a) || n < 2 || a.m % n != 0 {
        return Err(Error::Precondition(format!("hom targets need p = 2, A transitive, 2 ≤ n | m (A = {a:?}, n = {n})")));
    }
    let nn = (1u64 << n) - 1;
    let mut out = vec![];
    for dp in divisors(nn) {
        let epps: Vec<u64> = (0..nn).filter(|&epp| prop_conditions(a, n, dp, epp)).collect();
        if epps.is_empty() {
            continue;
        }
        for u in (1..=nn).filter(|&u| gcd(u, nn) == 1) {
            let Some(eps) = epsilon_for(a, n, u, dp) else { continue };
            if !keep_eps(eps) {
                continue;
            }
            for &epp in &epps {
                let t = HomTarget { n, u, d_prime: dp, e_pp: epp, epsilon_exp: eps };
                validate_hom_target(a, &t)?;
                out.push(t);
            }
        }
    }
    out.sort_by_key(|t| (t.d_prime, t.u, t.e_pp));
    Ok(out)
}

/// Every (u, d', e'') that passes generator validation, ignoring the
/// closed-form conditions.
pub fn hom_targets_by_validation(a: &StandardParams, n: u32) -> Result<Vec<HomTarget>> {
    let nn = (1u64 << n) - 1;
    let mut out = vec![];
    for dp in divisors(nn) {
        for u in (1..=nn).filter(|&u| gcd(u, nn) == 1) {
            let Some(eps) = epsilon_for(a, n, u, dp) else { continue };
            for epp in 0..nn {
                let t = HomTarget { n, u, d_prime: dp, e_pp: epp, epsilon_exp: eps };
                if validate_hom_target(a, &t).is_ok() {
                    out.push(t);
                }
            }
        }
    }
    out.sort_by_key(|t| (t.d_prime, t.u, t.e_pp));
    Ok(out)
}

/// Groups targets by the generator-image map they induce.
pub fn hom_target_classes(a: &StandardParams, targets: &[HomTarget]) -> Result<Vec<([SemilinearMap; 2], Vec<HomTarget>)>> {
    let mut by: BTreeMap<[SemilinearMap; 2], Vec<HomTarget>> = BTreeMap::new();
    for t in targets {
        by.entry(t.images(a)?).or_default().push(*t);
    }
    Ok(by.into_iter().collect())
}
