//! Arithmetic in F_{p^m} through discrete log tables.
//!
//! Elements are plain integers. For p = 2 an element is the bit vector of its
//! coefficients (bit i = coefficient of X^i); for odd p it is Σ c_i p^i.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Elem = u32;

const NO_LOG: u32 = u32::MAX;

/// X^6 + X^4 + X^3 + X + 1
pub const GF64_MODULUS: [u32; 7] = [1, 1, 0, 1, 1, 0, 1];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpecData {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
    pub omega: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(into = "FieldSpecData", try_from = "FieldSpecData")]
pub struct FieldSpec {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    omega: Elem,
    exp: Vec<Elem>,
    log: Vec<u32>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus && self.omega == other.omega
    }
}
impl Eq for FieldSpec {}

impl From<FieldSpec> for FieldSpecData {
    fn from(f: FieldSpec) -> Self {
        FieldSpecData { p: f.p, m: f.m, modulus: f.modulus, omega: f.omega }
    }
}

impl TryFrom<FieldSpecData> for FieldSpec {
    type Error = Error;
    fn try_from(d: FieldSpecData) -> Result<Self> {
        FieldSpec::with_modulus(d.p, d.m, d.modulus, d.omega)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_order(p: u32, m: u32) -> Result<u32> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p));
    }
    let q = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
    let ok = m >= 1 && if p == 2 { m <= 16 } else { q <= 10_000 };
    if !ok {
        return Err(Error::UnsupportedField { p, m });
    }
    Ok(q as u32)
}

// Polynomials over F_p, coefficient vectors low to high, no trailing zeros.
mod poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64;
        let mut k = p - 2;
        while k > 0 {
            if k & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            k >>= 1;
        }
        r as u32
    }

    pub fn rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let df = f.len() - 1;
        let lead_inv = inv_mod(f[df], p) as u64;
        while r.len() > df {
            let dr = r.len() - 1;
            let c = r[dr] as u64 * lead_inv % p as u64;
            for i in 0..=df {
                let t = (c * f[i] as u64) % p as u64;
                r[dr - df + i] = ((r[dr - df + i] as u64 + p as u64 - t) % p as u64) as u32;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let r: Vec<u32> = r.into_iter().map(|c| c as u32).collect();
        rem(&r, f, p)
    }

    pub fn pow_mod(a: &[u32], mut k: u64, f: &[u32], p: u32) -> Vec<u32> {
        let mut r = rem(&[1], f, p);
        let mut b = rem(a, f, p);
        while k > 0 {
            if k & 1 == 1 {
                r = mul_mod(&r, &b, f, p);
            }
            b = mul_mod(&b, &b, f, p);
            k >>= 1;
        }
        r
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut r: Vec<u32> = (0..n)
            .map(|i| {
                let x = *a.get(i).unwrap_or(&0);
                let y = *b.get(i).unwrap_or(&0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut r);
        r
    }
}

/// Irreducibility over F_p: gcd(f, X^{p^k} - X) = 1 for every k ≤ deg f / 2.
pub fn is_irreducible(p: u32, modulus: &[u32]) -> bool {
    let mut f = modulus.to_vec();
    poly::trim(&mut f);
    if f.len() < 2 {
        return false;
    }
    let deg = f.len() - 1;
    let x = vec![0, 1];
    let mut xpk = poly::rem(&x, &f, p);
    for _ in 1..=deg / 2 {
        xpk = poly::pow_mod(&xpk, p as u64, &f, p);
        let g = poly::gcd(&f, &poly::sub(&xpk, &x, p), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn smallest_primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    (2..p)
        .find(|&g| {
            let mut x = 1u64;
            for k in 1..p {
                x = x * g as u64 % p as u64;
                if x == 1 {
                    return k == p - 1;
                }
            }
            false
        })
        .expect("every prime has a primitive root")
}

impl FieldSpec {
    /// The field F_{p^m} with its default modulus: X^6+X^4+X^3+X+1 for
    /// 2^6, X - g (g the least primitive root) for m = 1, and otherwise the
    /// first primitive polynomial in lexicographic order of coefficients.
    pub fn new(p: u32, m: u32) -> Result<FieldSpec> {
        checked_order(p, m)?;
        if p == 2 && m == 6 {
            return FieldSpec::with_modulus(2, 6, GF64_MODULUS.to_vec(), 2);
        }
        if m == 1 {
            let g = smallest_primitive_root(p);
            return FieldSpec::with_modulus(p, 1, vec![(p - g) % p, 1], g);
        }
        let count = (p as u64).pow(m);
        for code in 1..count {
            let mut modulus = Vec::with_capacity(m as usize + 1);
            let mut c = code;
            for _ in 0..m {
                modulus.push((c % p as u64) as u32);
                c /= p as u64;
            }
            modulus.push(1);
            if modulus[0] == 0 {
                continue;
            }
            if let Ok(f) = FieldSpec::with_modulus(p, m, modulus, p) {
                return Ok(f);
            }
        }
        Err(Error::UnsupportedField { p, m })
    }

    /// `new(2, m)`, built once per m.
    pub fn binary(m: u32) -> Result<FieldSpec> {
        static CACHE: [OnceLock<FieldSpec>; 17] = [const { OnceLock::new() }; 17];
        match CACHE.get(m as usize) {
            Some(cell) if m >= 1 => {
                if let Some(f) = cell.get() {
                    return Ok(f.clone());
                }
                let f = FieldSpec::new(2, m)?;
                Ok(cell.get_or_init(|| f).clone())
            }
            _ => FieldSpec::new(2, m),
        }
    }

    /// Builds the field from an explicit monic modulus and generator.
    pub fn with_modulus(p: u32, m: u32, modulus: Vec<u32>, omega: Elem) -> Result<FieldSpec> {
        let q = checked_order(p, m)?;
        if modulus.len() != m as usize + 1 || modulus[m as usize] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::Reducible(m));
        }
        if !is_irreducible(p, &modulus) {
            return Err(Error::Reducible(m));
        }
        if omega == 0 || omega >= q {
            return Err(Error::NotGenerator);
        }
        let mut f = FieldSpec { p, m, q, modulus, omega, exp: vec![], log: vec![] };
        let n = (q - 1) as usize;
        let mut exp = Vec::with_capacity(2 * n);
        let mut log = vec![NO_LOG; q as usize];
        let mut x: Elem = 1;
        for k in 0..n {
            if log[x as usize] != NO_LOG {
                return Err(Error::NotGenerator);
            }
            log[x as usize] = k as u32;
            exp.push(x);
            x = f.slow_mul(x, omega);
        }
        if x != 1 {
            return Err(Error::NotGenerator);
        }
        exp.extend_from_within(0..n);
        f.exp = exp;
        f.log = log;
        Ok(f)
    }

    fn digits(&self, a: Elem) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.m as usize);
        let mut a = a;
        for _ in 0..self.m {
            v.push(a % self.p);
            a /= self.p;
        }
        v
    }

    fn from_digits(&self, d: &[u32]) -> Elem {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    // Schoolbook product reduced by the modulus; only used to build tables.
    fn slow_mul(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            let poly: u32 = self.modulus.iter().enumerate().map(|(i, &c)| c << i).sum();
            let (mut a, mut b, mut r) = (a, b, 0u32);
            while b != 0 {
                if b & 1 == 1 {
                    r ^= a;
                }
                b >>= 1;
                a <<= 1;
                if a >> self.m & 1 == 1 {
                    a ^= poly;
                }
            }
            return r;
        }
        let pa = self.digits(a);
        let pb = self.digits(b);
        let r = poly::mul_mod(&pa, &pb, &self.modulus, self.p);
        let mut d = vec![0; self.m as usize];
        d[..r.len()].copy_from_slice(&r);
        self.from_digits(&d)
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    /// Number of elements p^m.
    pub fn order(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn omega(&self) -> Elem {
        self.omega
    }
    pub fn data(&self) -> FieldSpecData {
        self.clone().into()
    }

    pub fn contains(&self, a: Elem) -> bool {
        a < self.q
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p;
        let (mut a, mut b, mut r, mut w) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            r += (a % p + b % p) % p * w;
            a /= p;
            b /= p;
            w *= p;
        }
        r
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let (mut a, mut r, mut w) = (a, 0, 1);
        while a > 0 {
            r += (p - a % p) % p * w;
            a /= p;
            w *= p;
        }
        r
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let l = self.log[a as usize];
        Ok(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^k with 0^0 = 1.
    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        if a == 0 {
            return if k == 0 { 1 } else { 0 };
        }
        let n = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (k % n)) % n) as usize]
    }

    /// ω^k for any integer k.
    pub fn omega_pow(&self, k: i64) -> Elem {
        self.exp[k.rem_euclid((self.q - 1) as i64) as usize]
    }

    /// Discrete log base ω.
    pub fn log(&self, a: Elem) -> Option<u32> {
        match self.log.get(a as usize) {
            Some(&l) if l != NO_LOG => Some(l),
            _ => None,
        }
    }

    /// a^{p^i}; i is taken mod m.
    pub fn frobenius(&self, a: Elem, i: i64) -> Elem {
        if a == 0 {
            return 0;
        }
        let i = i.rem_euclid(self.m as i64) as u32;
        let n = (self.q - 1) as u64;
        let e = (self.p as u64).pow(i) % n;
        self.exp[((self.log[a as usize] as u64 * e) % n) as usize]
    }

    /// Whether a lies in F_{p^n}.
    pub fn in_subfield(&self, a: Elem, n: u32) -> Result<bool> {
        if n == 0 || self.m % n != 0 {
            return Err(Error::NotDivisor { n, m: self.m });
        }
        Ok(self.frobenius(a, n as i64) == a)
    }

    /// Exponent k with ω^k generating F_{p^n}^*: (p^m - 1)/(p^n - 1).
    pub fn subfield_index(&self, n: u32) -> Result<u32> {
        if n == 0 || self.m % n != 0 {
            return Err(Error::NotDivisor { n, m: self.m });
        }
        Ok((self.q - 1) / (self.p.pow(n) - 1))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q
    }

    /// Horner evaluation of Σ c_i x^i.
    pub fn evaluate(&self, coeffs: &[Elem], x: Elem) -> Elem {
        coeffs.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// The unique polynomial of degree at most q - 1 with the given values.
    /// `values[x]` is f(x); the result is checked by evaluating everywhere.
    pub fn interpolate(&self, values: &[Elem]) -> Result<Vec<Elem>> {
        let q = self.q as usize;
        if values.len() != q {
            return Err(Error::Precondition(format!("expected {q} values, got {}", values.len())));
        }
        let n = q - 1;
        let mut c = vec![0; q];
        c[0] = values[0];
        let mut total = 0;
        for &v in values {
            total = self.add(total, v);
        }
        c[n] = self.neg(total);
        let logs: Vec<(usize, usize)> = (1..q)
            .filter(|&x| values[x] != 0)
            .map(|x| (self.log[values[x] as usize] as usize, self.log[x] as usize))
            .collect();
        for (i, ci) in c.iter_mut().enumerate().take(n).skip(1) {
            let mut acc = 0;
            for &(lf, lx) in &logs {
                // f(x) x^{-i}
                let e = (lf + n - (lx * i) % n) % n;
                acc = self.add(acc, self.exp[e]);
            }
            *ci = self.neg(acc);
        }
        for (x, &v) in values.iter().enumerate() {
            if self.evaluate(&c, x as Elem) != v {
                return Err(Error::Inconsistent(format!("interpolant differs at {x}")));
            }
        }
        Ok(c)
    }

    /// Like `interpolate`, for an f with f(0) = 0 known to be supported on
    /// the given exponents (each in 1..q). Fails if that guess is wrong.
    pub fn interpolate_sparse(&self, values: &[Elem], support: &[usize]) -> Result<Vec<Elem>> {
        let q = self.q as usize;
        let n = q - 1;
        if values.len() != q || values[0] != 0 || support.iter().any(|&e| e == 0 || e > n) {
            return Err(Error::Precondition("sparse interpolation needs q values, f(0) = 0 and exponents in 1..q".into()));
        }
        let logs: Vec<(usize, usize)> = (1..q)
            .filter(|&x| values[x] != 0)
            .map(|x| (self.log[values[x] as usize] as usize, self.log[x] as usize))
            .collect();
        let mut c = vec![0; q];
        for &i in support {
            let mut acc = 0;
            for &(lf, lx) in &logs {
                acc = self.add(acc, self.exp[(lf + n - (lx * i) % n) % n]);
            }
            c[i] = self.neg(acc);
        }
        let terms: Vec<(usize, Elem)> = support.iter().map(|&i| (i, c[i])).filter(|&(_, ci)| ci != 0).collect();
        for x in 1..q {
            let lx = self.log[x] as usize;
            let v = terms.iter().fold(0, |acc, &(i, ci)| self.add(acc, self.mul(ci, self.exp[lx * i % n])));
            if v != values[x] {
                return Err(Error::Inconsistent(format!("not supported on the given exponents (differs at {x})")));
            }
        }
        Ok(c)
    }

    /// F_2-coordinates for the subfield F_{2^n}: bit i of a vector stands for Ω_0^i
    /// with Ω_0 = ω^{(2^m-1)/(2^n-1)}.
    pub fn subfield_coords(&self, n: u32) -> Result<SubfieldCoords> {
        if self.p != 2 {
            return Err(Error::Precondition("subfield coordinates need p = 2".into()));
        }
        let idx = self.subfield_index(n)?;
        let gen = if n == self.m { 0 } else { idx };
        let mut embed = Vec::with_capacity(1 << n);
        let mut project = vec![NO_LOG; self.q as usize];
        for v in 0u32..(1 << n) {
            let mut x = 0;
            for i in 0..n {
                if v >> i & 1 == 1 {
                    x ^= if n == self.m { 1 << i } else { self.omega_pow((gen * i) as i64) };
                }
            }
            embed.push(x);
            if project[x as usize] != NO_LOG {
                return Err(Error::Inconsistent("subfield basis is dependent".into()));
            }
            project[x as usize] = v;
        }
        Ok(SubfieldCoords { n, index: idx, embed, project })
    }
}

/// Linear identification F_2^n ≅ F_{2^n} ⊆ F_{2^m}. For n = m this is the
/// identity on bit vectors.
#[derive(Clone, Debug)]
pub struct SubfieldCoords {
    pub n: u32,
    /// (2^m - 1)/(2^n - 1)
    pub index: u32,
    embed: Vec<Elem>,
    project: Vec<u32>,
}

impl SubfieldCoords {
    pub fn embed(&self, v: u32) -> Elem {
        self.embed[v as usize]
    }

    pub fn project(&self, x: Elem) -> Result<u32> {
        match self.project.get(x as usize) {
            Some(&v) if v != NO_LOG => Ok(v),
            _ => Err(Error::NotInSubfield(x)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_interpolation_matches_full() {
        let f = FieldSpec::binary(6).unwrap();
        let w = f.omega();
        let vals: Vec<Elem> = f.elements().map(|x| f.add(f.mul(w, f.pow(x, 3)), f.pow(x, 24))).collect();
        let full = f.interpolate(&vals).unwrap();
        assert_eq!(f.interpolate_sparse(&vals, &[3, 24, 45]).unwrap(), full);
        assert!(f.interpolate_sparse(&vals, &[3, 45]).is_err());
    }

    #[test]
    fn pinned_modulus_vanishes_at_omega() {
        let f = FieldSpec::binary(6).unwrap();
        let w = f.omega();
        let s = [6, 4, 3, 1, 0].iter().fold(0, |acc, &k| f.add(acc, f.pow(w, k)));
        assert_eq!(s, 0);
        assert_eq!(f.modulus(), &GF64_MODULUS);
    }

    #[test]
    fn omega9_has_order_7() {
        let f = FieldSpec::binary(6).unwrap();
        let g = f.omega_pow(9);
        let mut x = g;
        let mut k = 1;
        while x != 1 {
            x = f.mul(x, g);
            k += 1;
        }
        assert_eq!(k, 7);
        assert!(f.in_subfield(g, 3).unwrap());
        assert!(!f.in_subfield(f.omega(), 3).unwrap());
        assert!(f.in_subfield(0, 2).unwrap() && f.in_subfield(1, 2).unwrap());
        assert!(f.in_subfield(1, 4).is_err());
    }

    #[test]
    fn pow_conventions() {
        let f = FieldSpec::new(3, 2).unwrap();
        assert_eq!(f.pow(0, 0), 1);
        assert_eq!(f.pow(0, 5), 0);
        for a in 1..9 {
            assert_eq!(f.pow(a, 8), 1);
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        assert_eq!(f.inv(0), Err(Error::ZeroInverse));
    }

    #[test]
    fn odd_prime_fields_build() {
        for (p, m) in [(3, 1), (3, 2), (3, 5), (5, 3), (7, 4), (97, 2), (9973, 1)] {
            let f = FieldSpec::new(p, m).unwrap();
            assert_eq!(f.order(), p.pow(m));
        }
        assert!(FieldSpec::new(3, 9).is_err());
        assert!(FieldSpec::new(4, 2).is_err());
    }

    #[test]
    fn reducible_modulus_rejected() {
        // X^2 + 1 = (X+1)^2 over F_2
        assert_eq!(FieldSpec::with_modulus(2, 2, vec![1, 0, 1], 2), Err(Error::Reducible(2)));
        // X^4+X^3+X^2+X+1 is irreducible but X has order 5
        assert_eq!(FieldSpec::with_modulus(2, 4, vec![1, 1, 1, 1, 1], 2), Err(Error::NotGenerator));
        assert!(FieldSpec::with_modulus(2, 4, vec![1, 1, 1, 1, 1], 3).is_ok());
    }

    #[test]
    fn interpolation_examples() {
        let f = FieldSpec::binary(6).unwrap();
        let id: Vec<Elem> = f.elements().collect();
        let c = f.interpolate(&id).unwrap();
        assert!(c.iter().enumerate().all(|(i, &x)| x == (i == 1) as u32));
        let cube: Vec<Elem> = f.elements().map(|x| f.pow(x, 3)).collect();
        let c = f.interpolate(&cube).unwrap();
        assert!(c.iter().enumerate().all(|(i, &x)| x == (i == 3) as u32));
        let g = FieldSpec::new(5, 2).unwrap();
        let vals: Vec<Elem> = g.elements().map(|x| g.add(g.pow(x, 24), 3)).collect();
        let c = g.interpolate(&vals).unwrap();
        assert_eq!(c[0], 3);
        assert_eq!(c[24], 1);
    }

    #[test]
    fn subfield_coords_roundtrip() {
        let f = FieldSpec::binary(6).unwrap();
        let c = f.subfield_coords(3).unwrap();
        assert_eq!(c.embed(0b010), f.omega_pow(9));
        for v in 0..8 {
            assert_eq!(c.project(c.embed(v)).unwrap(), v);
        }
        assert!(c.project(f.omega()).is_err());
        let id = f.subfield_coords(6).unwrap();
        assert_eq!(id.embed(37), 37);
    }

    #[test]
    fn serde_roundtrip() {
        let f = FieldSpec::binary(6).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"p":2,"m":6,"modulus":[1,1,0,1,1,0,1],"omega":2}"#);
        let g: FieldSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
        assert_eq!(g.mul(37, 11), f.mul(37, 11));
    }
}
