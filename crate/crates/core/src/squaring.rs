//! Squarings σ: F_2^m → F_2^n stored as explicit tables, with field views
//! through the subfield coordinates of F_{2^n} ⊆ F_{2^m}.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec, SubfieldCoords};
use crate::gammal1::{is_transitive, validate_hom_target, Gamma, HomTarget, SemilinearMap, StandardParams};
use crate::intertwine::{self, Mode};
use crate::linalg::{self, Echelon};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Squaring {
    pub m: u32,
    pub n: u32,
    pub table: Vec<u32>,
}

impl Squaring {
    pub fn new(m: u32, n: u32, table: Vec<u32>) -> Result<Squaring> {
        if m > 16 || n > 31 || table.len() != 1 << m {
            return Err(Error::Precondition(format!("table for m={m} needs {} entries", 1u64 << m)));
        }
        if let Some(&v) = table.iter().find(|&&v| v >> n != 0) {
            return Err(Error::OutOfRange(v as u64));
        }
        Ok(Squaring { m, n, table })
    }

    pub fn zero(m: u32, n: u32) -> Squaring {
        Squaring { m, n, table: vec![0; 1 << m] }
    }

    pub fn eval(&self, x: u32) -> u32 {
        self.table[x as usize]
    }

    /// [x, y] = σ(x+y) + σ(x) + σ(y)
    pub fn induced_form(&self, x: u32, y: u32) -> u32 {
        self.table[(x ^ y) as usize] ^ self.table[x as usize] ^ self.table[y as usize]
    }

    /// Exact test: for every z, x ↦ [x, z] is linear.
    pub fn is_biadditive(&self) -> bool {
        let size = 1u32 << self.m;
        if self.table[0] != 0 {
            return false;
        }
        for z in 0..size {
            let basis: Vec<u32> = (0..self.m).map(|i| self.induced_form(1 << i, z)).collect();
            if (0..size).any(|x| self.induced_form(x, z) != linalg::apply(&basis, x)) {
                return false;
            }
        }
        true
    }

    /// [x+y, z] = [x, z] + [y, z] over all triples.
    pub fn is_biadditive_bruteforce(&self) -> bool {
        let size = 1u32 << self.m;
        (0..size).all(|x| {
            (0..size).all(|y| (0..size).all(|z| self.induced_form(x ^ y, z) == self.induced_form(x, z) ^ self.induced_form(y, z)))
        })
    }

    pub fn form_is_trivial(&self) -> bool {
        let size = 1u32 << self.m;
        (0..size).all(|x| (0..size).all(|y| self.induced_form(x, y) == 0))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; 1 << self.n];
        for &v in &self.table {
            hit[v as usize] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// Whether the values span F_2^n.
    pub fn image_spans(&self) -> bool {
        let mut e = Echelon::default();
        for &v in &self.table {
            e.insert(v);
        }
        e.dim() == self.n
    }

    /// ^Uσ^T: x ↦ σ(xT)·U^{-1}.
    pub fn transform(&self, t: &[u32], u: &[u32]) -> Result<Squaring> {
        let ui = linalg::inverse(u).ok_or_else(|| Error::Precondition("U is singular".into()))?;
        if !linalg::is_invertible(t) || t.len() != self.m as usize || u.len() != self.n as usize {
            return Err(Error::Precondition("T must be invertible of size m".into()));
        }
        let table = (0..1u32 << self.m).map(|x| linalg::apply(&ui, self.eval(linalg::apply(t, x)))).collect();
        Ok(Squaring { m: self.m, n: self.n, table })
    }

    fn field_view(&self) -> Result<(FieldSpec, SubfieldCoords)> {
        if self.n == 0 || self.m % self.n != 0 {
            return Err(Error::NotDivisor { n: self.n, m: self.m });
        }
        let f = FieldSpec::binary(self.m)?;
        let c = f.subfield_coords(self.n)?;
        Ok((f, c))
    }

    /// Tabulates a field function F_{2^m} → F_{2^n} ⊆ F_{2^m}.
    pub fn from_field_fn(m: u32, n: u32, f: impl Fn(&FieldSpec, Elem) -> Elem) -> Result<Squaring> {
        let field = FieldSpec::binary(m)?;
        if n == 0 || m % n != 0 {
            return Err(Error::NotDivisor { n, m });
        }
        let c = field.subfield_coords(n)?;
        let table = field.elements().map(|x| c.project(f(&field, x))).collect::<Result<_>>()?;
        Ok(Squaring { m, n, table })
    }

    /// Values as elements of F_{2^m}.
    pub fn field_values(&self) -> Result<Vec<Elem>> {
        let (_, c) = self.field_view()?;
        Ok(self.table.iter().map(|&v| c.embed(v)).collect())
    }

    /// The polynomial criterion applied to the field view.
    pub fn field_criterion(&self) -> Result<Criterion> {
        let (f, _) = self.field_view()?;
        let c = f.interpolate(&self.field_values()?)?;
        Ok(biadditivity_criterion(&c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Criterion {
    pub biadditive: bool,
    pub nontrivial: bool,
    /// exponents with nonzero coefficient
    pub exponents: Vec<u32>,
}

/// A polynomial map induces a biadditive form iff it has no constant term
/// and every exponent has at most two binary digits; the form is nonzero iff
/// some exponent has exactly two.
pub fn biadditivity_criterion(coeffs: &[Elem]) -> Criterion {
    let exponents: Vec<u32> = (0..coeffs.len() as u32).filter(|&i| coeffs[i as usize] != 0).collect();
    let biadditive = exponents.iter().all(|&i| i != 0 && i.count_ones() <= 2);
    let nontrivial = exponents.iter().any(|&i| i.count_ones() == 2);
    Criterion { biadditive, nontrivial, exponents }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predatum {
    pub squaring: Squaring,
    pub a_params: StandardParams,
    pub target: HomTarget,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PredatumFailure {
    Shape(String),
    DomainNotTransitive,
    Homomorphism(String),
    Equivariance { generator: usize, x: u32 },
    NotBiadditive,
    TrivialForm,
    NotSurjective,
}

impl fmt::Display for PredatumFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredatumFailure::Shape(s) => write!(f, "shape mismatch: {s}"),
            PredatumFailure::DomainNotTransitive => write!(f, "A is not transitive"),
            PredatumFailure::Homomorphism(s) => write!(f, "bad homomorphism: {s}"),
            PredatumFailure::Equivariance { generator, x } => write!(f, "equivariance fails for generator {generator} at x = {x}"),
            PredatumFailure::NotBiadditive => write!(f, "induced form is not biadditive"),
            PredatumFailure::TrivialForm => write!(f, "induced form is trivial"),
            PredatumFailure::NotSurjective => write!(f, "squaring is not surjective"),
        }
    }
}

/// Acts with an element of ΓL_1(2^n), scalars written in powers of Ω_0,
/// on an element of the subfield F_{2^n} ⊆ F_{2^m}.
fn act_on_subfield(f: &FieldSpec, c: &SubfieldCoords, g: SemilinearMap, y: Elem) -> Elem {
    if y == 0 {
        return 0;
    }
    f.mul(f.frobenius(y, g.s_exp as i64), f.omega_pow(g.e_exp as i64 * c.index as i64))
}

impl Predatum {
    pub fn validate(&self) -> std::result::Result<(), PredatumFailure> {
        let sq = &self.squaring;
        let a = &self.a_params;
        let t = &self.target;
        if a.p != 2 || a.m != sq.m || t.n != sq.n || sq.n == 0 || sq.m % sq.n != 0 {
            return Err(PredatumFailure::Shape(format!("m={}, n={}, A over 2^{}, target degree {}", sq.m, sq.n, a.m, t.n)));
        }
        if !is_transitive(a) {
            return Err(PredatumFailure::DomainNotTransitive);
        }
        validate_hom_target(a, t).map_err(|e| PredatumFailure::Homomorphism(e.to_string()))?;
        let (f, c) = sq.field_view().map_err(|e| PredatumFailure::Shape(e.to_string()))?;
        let gm = Gamma::new(2, sq.m).map_err(|e| PredatumFailure::Shape(e.to_string()))?;
        let imgs = t.images(a).map_err(|e| PredatumFailure::Shape(e.to_string()))?;
        for (j, (g, h)) in a.generators(&gm).iter().zip(imgs).enumerate() {
            for x in f.elements() {
                let lhs = c.embed(sq.eval(gm.apply(&f, *g, x)));
                let rhs = act_on_subfield(&f, &c, h, c.embed(sq.eval(x)));
                if lhs != rhs {
                    return Err(PredatumFailure::Equivariance { generator: j, x });
                }
            }
        }
        if !sq.is_biadditive() {
            return Err(PredatumFailure::NotBiadditive);
        }
        if sq.form_is_trivial() {
            return Err(PredatumFailure::TrivialForm);
        }
        if !sq.is_surjective() {
            return Err(PredatumFailure::NotSurjective);
        }
        Ok(())
    }
}

pub fn validate_predatum(p: &Predatum) -> std::result::Result<(), PredatumFailure> {
    p.validate()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SingerVariant {
    /// n = m, e = 2^l(2^k + 1)
    A { l: u32, k: u32 },
    /// n = m/2, e = 2^l(2^n + 1)
    B { l: u32 },
}

pub fn nu2(k: u64) -> u32 {
    k.trailing_zeros()
}

/// σ(x) = s·x^e with A the full scalar group and φ: χ̂ ↦ χ̂^e, where
/// (2^m-1)/(2^n-1) divides e. `scalar` is a nonzero vector of F_2^n.
pub fn monomial_predatum(m: u32, n: u32, e: u64, scalar: u32) -> Result<Predatum> {
    let big = (1u64 << m) - 1;
    if e == 0 || e > big {
        return Err(Error::Precondition(format!("exponent {e} is not in 1..2^m")));
    }
    if scalar == 0 || scalar >> n != 0 {
        return Err(Error::Precondition("scalar must be a nonzero element of F_2^n".into()));
    }
    let field = FieldSpec::binary(m)?;
    let c = field.subfield_coords(n)?;
    if e % c.index as u64 != 0 {
        return Err(Error::Precondition(format!("x^{e} does not map into the subfield of degree {n}")));
    }
    let s = c.embed(scalar);
    let squaring = Squaring::from_field_fn(m, n, |f, x| f.mul(s, f.pow(x, e)))?;
    let nn = (1u64 << n) - 1;
    let u = if nn == 1 { 1 } else { e / c.index as u64 % nn };
    let target = HomTarget { n, u, d_prime: 1, e_pp: 0, epsilon_exp: e % big.max(1) };
    Ok(Predatum { squaring, a_params: StandardParams::scalars(2, m), target })
}

pub fn singer_exponent(m: u32, variant: SingerVariant) -> Result<(u32, u64)> {
    let (n, e) = match variant {
        SingerVariant::A { l, k } => {
            if k == 0 || k >= m || nu2(k as u64) < nu2(m as u64) {
                return Err(Error::Precondition(format!("k={k} is not legal for m={m}")));
            }
            (m, (1u64 << l) * ((1u64 << k) + 1))
        }
        SingerVariant::B { l } => {
            if m % 2 != 0 {
                return Err(Error::Precondition("variant (b) needs m even".into()));
            }
            (m / 2, (1u64 << l) * ((1u64 << (m / 2)) + 1))
        }
    };
    if e > (1u64 << m) - 1 {
        return Err(Error::Precondition(format!("exponent {e} exceeds 2^m - 1")));
    }
    Ok((n, e))
}

/// σ(x) = s·x^e with A the full scalar group and φ: χ̂ ↦ χ̂^e.
pub fn singer_squaring(m: u32, variant: SingerVariant, scalar: u32) -> Result<Predatum> {
    let (n, e) = singer_exponent(m, variant)?;
    monomial_predatum(m, n, e, scalar)
}

fn geometric(step: u32, count: u64, modulus: u64) -> u64 {
    // Σ_{i<count} 2^{i·step} mod modulus
    let mut acc = 0u128;
    let mut pw = 1u128;
    let md = modulus as u128;
    let ratio = (1u128 << step) % md;
    for _ in 0..count {
        acc = (acc + pw) % md;
        pw = pw * ratio % md;
    }
    acc as u64
}

/// The constraint σ(1)^{2^{ds}} = ζ^{-(2^{ds}-1)/(2^s-1)}·σ(1).
fn sigma1_ok(f: &FieldSpec, a: &StandardParams, zeta_log: i64, x: Elem) -> bool {
    let big = (1u64 << a.m) - 1;
    let g = geometric(a.s, a.d, big) as i64;
    let lhs = f.frobenius(x, (a.d * a.s as u64) as i64);
    let rhs = f.mul(f.omega_pow(-zeta_log * g), x);
    lhs == rhs
}

/// Nonzero σ(1) values compatible with A and the target, by exhaustive scan.
pub fn sigma1_solutions(a: &StandardParams, t: &HomTarget) -> Result<Vec<Elem>> {
    let f = FieldSpec::binary(a.m)?;
    let z = t.zeta_log(a);
    Ok((1..f.order()).filter(|&x| sigma1_ok(&f, a, z, x)).collect())
}

/// The A-equivariant field function with σ(1) = sigma1, as values in F_{2^m}.
pub fn coset_monomial_function(a: &StandardParams, t: &HomTarget, sigma1: Elem) -> Result<Vec<Elem>> {
    let f = FieldSpec::binary(a.m)?;
    if sigma1 == 0 || sigma1 >= f.order() {
        return Err(Error::Precondition("σ(1) must be a nonzero field element".into()));
    }
    let zl = t.zeta_log(a);
    if !sigma1_ok(&f, a, zl, sigma1) {
        return Err(Error::Precondition("σ(1) violates the fixed-point constraint".into()));
    }
    let big = (1u64 << a.m) - 1;
    let d = a.d;
    // coset index x has representative exponent e·(2^{xs}-1)/(2^s-1)
    let mut coset_of = vec![u32::MAX; d as usize];
    let mut coef = vec![0; d as usize];
    for x in 0..d {
        let g = geometric(a.s, x, big);
        let rep = ((a.e as u128 * g as u128) % d as u128) as usize;
        if coset_of[rep] != u32::MAX {
            return Err(Error::Precondition("A is not transitive".into()));
        }
        coset_of[rep] = x as u32;
        coef[x as usize] = f.mul(f.omega_pow(zl * g as i64), f.frobenius(sigma1, (x * a.s as u64) as i64));
    }
    let mut vals = vec![0; f.order() as usize];
    for chi in 1..f.order() {
        let l = f.log(chi).unwrap() as u64;
        let x = coset_of[(l % d) as usize] as usize;
        vals[chi as usize] = f.mul(coef[x], f.pow(chi, t.epsilon_exp));
    }
    // postcondition: equivariance for both generators
    let gm = Gamma::new(2, a.m)?;
    let [xi, up] = a.generators(&gm);
    let omega_big = f.omega_pow((t.u * (big / ((1u64 << t.n) - 1))) as i64);
    for chi in f.elements() {
        let y = vals[chi as usize];
        let want_xi = f.mul(f.frobenius(y, a.s as i64), f.pow(omega_big, t.e_pp));
        let want_up = f.mul(y, f.pow(omega_big, t.d_prime));
        if vals[gm.apply(&f, xi, chi) as usize] != want_xi || vals[gm.apply(&f, up, chi) as usize] != want_up {
            return Err(Error::Inconsistent(format!("coset-monomial function not equivariant at {chi}")));
        }
    }
    Ok(vals)
}

pub fn coset_monomial_squaring(a: &StandardParams, t: &HomTarget, sigma1: Elem) -> Result<Squaring> {
    let vals = coset_monomial_function(a, t, sigma1)?;
    let f = FieldSpec::binary(a.m)?;
    let c = f.subfield_coords(t.n)?;
    let table = vals.iter().map(|&v| c.project(v)).collect::<Result<_>>()?;
    Ok(Squaring { m: a.m, n: t.n, table })
}

/// χ ↦ cχ³ + c^8χ^24 on F_{2^6}, valued in F_8.
pub fn sigma_c(c: Elem) -> Result<Squaring> {
    Squaring::from_field_fn(6, 3, |f, x| f.add(f.mul(c, f.pow(x, 3)), f.mul(f.pow(c, 8), f.pow(x, 24))))
}

pub fn sigma_omega() -> Squaring {
    sigma_c(2).expect("σ_ω takes values in F_8")
}

/// σ(x) = x^e as a squaring into F_2^n (values must lie in the subfield).
pub fn monomial(m: u32, n: u32, e: u64) -> Result<Squaring> {
    Squaring::from_field_fn(m, n, |f, x| f.pow(x, e))
}

/// γ1 ∈ ΓL_1(2^m), γ2 ∈ ΓL_1(2^n) (scalars in powers of Ω_0) with
/// σ2 = γ2 ∘ σ1 ∘ γ1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaWitness {
    pub g1: SemilinearMap,
    pub g2: SemilinearMap,
}

pub fn gammal1_equivalent(s1: &Squaring, s2: &Squaring) -> Result<Option<GammaWitness>> {
    if (s1.m, s1.n) != (s2.m, s2.n) {
        return Err(Error::Precondition("squarings of different shapes".into()));
    }
    let (f, c) = s1.field_view()?;
    let v1 = s1.field_values()?;
    let v2 = s2.field_values()?;
    let gm = Gamma::new(2, s1.m)?;
    let nn = (1u64 << s1.n) - 1;
    let Some(x0) = f.elements().find(|&x| v2[x as usize] != 0) else {
        // σ2 = 0: equivalent exactly when σ1 = 0
        return Ok(v1.iter().all(|&y| y == 0).then_some(GammaWitness { g1: gm.identity(), g2: SemilinearMap { s_exp: 0, e_exp: 0 } }));
    };
    let target_log = f.log(v2[x0 as usize]).unwrap() as u64;
    for i in 0..gm.order() as usize {
        let g1 = gm.from_index(i);
        let w0 = v1[gm.apply(&f, g1, x0) as usize];
        if w0 == 0 {
            continue;
        }
        for s in 0..s1.n {
            // γ2 = (s, e) is forced by its value at σ1(γ1(x0))
            let y = f.log(f.frobenius(w0, s as i64)).unwrap() as u64;
            let diff = (target_log + f.order() as u64 - 1 - y) % (f.order() as u64 - 1);
            if diff % c.index as u64 != 0 {
                continue;
            }
            let g2 = SemilinearMap { s_exp: s, e_exp: diff / c.index as u64 % nn.max(1) };
            if f.elements().all(|x| act_on_subfield(&f, &c, g2, v1[gm.apply(&f, g1, x) as usize]) == v2[x as usize]) {
                return Ok(Some(GammaWitness { g1, g2 }));
            }
        }
    }
    Ok(None)
}

/// Checks a ΓL_1 witness pointwise.
pub fn check_gamma_witness(s1: &Squaring, s2: &Squaring, w: &GammaWitness) -> Result<bool> {
    let (f, c) = s1.field_view()?;
    let v1 = s1.field_values()?;
    let v2 = s2.field_values()?;
    let gm = Gamma::new(2, s1.m)?;
    Ok(f.elements().all(|x| act_on_subfield(&f, &c, w.g2, v1[gm.apply(&f, w.g1, x) as usize]) == v2[x as usize]))
}

/// (T, U) with σ2 = ^Uσ1^T, i.e. σ2(x)·U = σ1(xT).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlWitness {
    pub t: Vec<u32>,
    pub u: Vec<u32>,
}

/// Searches GL_m(2) × GL_n(2). `Err(Budget)` means the search was cut short
/// without a witness; `Ok(None)` means none exists.
pub fn gl_equivalent(s1: &Squaring, s2: &Squaring, budget: u64) -> Result<Option<GlWitness>> {
    if (s1.m, s1.n) != (s2.m, s2.n) {
        return Err(Error::Precondition("squarings of different shapes".into()));
    }
    let out = intertwine::search(&s2.table, &s1.table, s1.m, s1.n, Mode::First, budget)?;
    match out.found.into_iter().next() {
        Some(w) => Ok(Some(GlWitness { t: w.t, u: w.l })),
        None if out.complete => Ok(None),
        None => Err(Error::Budget(budget)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gammal1::enumerate_hom_targets;

    #[test]
    fn cube_on_f8() {
        let s = monomial(3, 3, 3).unwrap();
        let f = FieldSpec::binary(3).unwrap();
        for x in 0..8 {
            for y in 0..8 {
                let want = f.mul(f.mul(x, y), f.add(x, y));
                assert_eq!(s.induced_form(x, y), want);
            }
            assert_eq!(s.induced_form(x, x), 0);
        }
        assert!(s.is_biadditive() && s.is_biadditive_bruteforce());
        let s7 = monomial(3, 3, 7).unwrap();
        assert!(!s7.is_biadditive() && !s7.is_biadditive_bruteforce());
        assert!(Squaring::zero(3, 2).is_biadditive());
    }

    #[test]
    fn criterion_examples() {
        let mut c = vec![0; 64];
        c[3] = 1;
        let r = biadditivity_criterion(&c);
        assert!(r.biadditive && r.nontrivial);
        c[3] = 0;
        c[7] = 1;
        assert!(!biadditivity_criterion(&c).biadditive);
        let r = sigma_omega().field_criterion().unwrap();
        assert_eq!(r.exponents, vec![3, 24]);
        assert!(r.biadditive && r.nontrivial);
    }

    #[test]
    fn sigma_omega_values() {
        let s = sigma_omega();
        let f = FieldSpec::binary(6).unwrap();
        let v = s.field_values().unwrap();
        assert_eq!(v[0], 0);
        assert_eq!(v[1], f.add(f.omega(), f.omega_pow(8)));
        assert_ne!(v[1], 0);
        assert!(v.iter().all(|&y| f.pow(y, 8) == y));
        // with c = 1 the value at 1 vanishes
        assert_eq!(sigma_c(1).unwrap().eval(1), 0);
    }

    fn section5_target() -> (StandardParams, HomTarget) {
        let a = StandardParams::new(2, 6, 3, 1, 2).unwrap();
        let t = enumerate_hom_targets(&a, 3).unwrap().into_iter().find(|t| t.u == 1 && t.e_pp == 0).unwrap();
        (a, t)
    }

    #[test]
    fn sigma_omega_predatum() {
        let (a, t) = section5_target();
        let p = Predatum { squaring: sigma_omega(), a_params: a, target: t };
        assert_eq!(p.validate(), Ok(()));
        let bad = Predatum { target: HomTarget { e_pp: 1, ..t }, ..p.clone() };
        assert!(matches!(bad.validate(), Err(PredatumFailure::Equivariance { .. })));
    }

    #[test]
    fn singer_examples() {
        let a3 = singer_squaring(3, SingerVariant::A { l: 0, k: 1 }, 1).unwrap();
        assert_eq!(a3.squaring, monomial(3, 3, 3).unwrap());
        assert_eq!(a3.validate(), Ok(()));
        let q8 = singer_squaring(2, SingerVariant::B { l: 0 }, 1).unwrap();
        assert_eq!(q8.squaring.table, vec![0, 1, 1, 1]);
        assert_eq!(q8.validate(), Ok(()));
        let b3 = singer_squaring(6, SingerVariant::B { l: 0 }, 1).unwrap();
        assert_eq!(b3.squaring, monomial(6, 3, 9).unwrap());
        assert_eq!(b3.validate(), Ok(()));
        assert!(singer_squaring(4, SingerVariant::A { l: 0, k: 1 }, 1).is_err());
    }

    #[test]
    fn coset_monomial_reaches_sigma_omega() {
        let (a, t) = section5_target();
        let sols = sigma1_solutions(&a, &t).unwrap();
        assert!(!sols.is_empty());
        let om = sigma_omega();
        let mut hit = false;
        for s1 in sols {
            let vals = coset_monomial_function(&a, &t, s1).unwrap();
            assert_eq!(vals[1], s1);
            if let Ok(sq) = coset_monomial_squaring(&a, &t, s1) {
                if sq.is_biadditive() && !sq.form_is_trivial() && gammal1_equivalent(&sq, &om).unwrap().is_some() {
                    hit = true;
                }
            }
        }
        assert!(hit);
        let shifted = HomTarget { e_pp: 3, ..t };
        assert!(sigma1_solutions(&a, &shifted).unwrap().len() <= sigma1_solutions(&a, &t).unwrap().len());
    }

    #[test]
    fn gamma_equivalences() {
        let om = sigma_omega();
        let f = FieldSpec::binary(6).unwrap();
        let om2 = sigma_c(f.omega_pow(2)).unwrap();
        let w = gammal1_equivalent(&om, &om2).unwrap().unwrap();
        assert!(check_gamma_witness(&om, &om2, &w).unwrap());
        // β ∘ σ_ω ∘ α^{-1} is itself such a witness
        let g = GammaWitness { g1: SemilinearMap { s_exp: 5, e_exp: 0 }, g2: SemilinearMap { s_exp: 1, e_exp: 0 } };
        assert!(check_gamma_witness(&om, &om2, &g).unwrap());
        assert_eq!(gammal1_equivalent(&om, &monomial(6, 3, 9).unwrap()).unwrap(), None);
        let w = gammal1_equivalent(&om, &om).unwrap().unwrap();
        assert_eq!(w.g1, SemilinearMap { s_exp: 0, e_exp: 0 });
    }

    #[test]
    fn gl_equivalence_small() {
        let s = monomial(3, 3, 3).unwrap();
        let w = gl_equivalent(&s, &s, 1 << 20).unwrap().unwrap();
        assert_eq!(w.t, linalg::identity(3));
        let t = vec![6u32, 1, 3];
        let u = vec![2u32, 5, 1];
        let planted = s.transform(&t, &u).unwrap();
        let w = gl_equivalent(&s, &planted, 1 << 20).unwrap().unwrap();
        assert_eq!(s.transform(&w.t, &w.u).unwrap(), planted);
    }
}
