//! Pipelines producing the 3-orbit 2-groups: Singer predata, the search for
//! predata whose A contains no scalars, identification of the exceptional
//! group in Higman's coordinates, and the final list up to a given order.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::gammal1::{enumerate_hom_targets, enumerate_hom_targets_where, enumerate_transitive_subgroups, StandardParams};
use crate::group::{brute_force_orbits, invariant_profile, orbit_count, GroupSpec, InvariantProfile};
use crate::squaring::{
    biadditivity_criterion, coset_monomial_function, coset_monomial_squaring, gammal1_equivalent, monomial, monomial_predatum, nu2, sigma1_solutions, sigma_c, sigma_omega, singer_exponent, singer_squaring, GammaWitness, Predatum, SingerVariant, Squaring,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Label {
    Homocyclic(u32),
    Q8,
    /// A(n, θ) with θ = Frobenius^k, k ≤ n/2
    A { n: u32, k: u32 },
    /// B(n, 1, ε)
    B { n: u32 },
    /// B(3, θ, ε) with θ ≠ 1
    BExceptional,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Homocyclic(n) => write!(f, "Homocyclic({n})"),
            Label::Q8 => write!(f, "Q8"),
            Label::A { n, k: 1 } => write!(f, "A({n},Frob)"),
            Label::A { n, k } => write!(f, "A({n},Frob^{k})"),
            Label::B { n } => write!(f, "B({n},1)"),
            Label::BExceptional => write!(f, "B(3,theta,eps)"),
        }
    }
}

/// How a predatum was merged into its class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Merge {
    pub variant: SingerVariant,
    pub scalar: u32,
    /// canonical = γ2 ∘ member ∘ γ1
    pub witness: GammaWitness,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassEntry {
    pub label: Label,
    pub order: u64,
    pub witness: Predatum,
    pub provenance: String,
    pub spec: GroupSpec,
    pub merges: Vec<Merge>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SingerPredatum {
    pub m: u32,
    pub variant: SingerVariant,
    pub scalar: u32,
    pub predatum: Predatum,
}

/// Every Singer predatum on F_{2^m}: both variants, all shifts l, all k and
/// every nonzero scalar.
pub fn enumerate_singer(m: u32) -> Result<Vec<SingerPredatum>> {
    let mut variants = vec![];
    for k in (1..m).filter(|&k| nu2(k as u64) >= nu2(m as u64)) {
        variants.extend((0..m).map(|l| SingerVariant::A { l, k }));
    }
    if m % 2 == 0 {
        variants.extend((0..m).map(|l| SingerVariant::B { l }));
    }
    let mut out = vec![];
    for v in variants {
        let Ok((n, _)) = singer_exponent(m, v) else { continue };
        for scalar in 1..1u32 << n {
            let predatum = singer_squaring(m, v, scalar)?;
            predatum.validate().map_err(|e| Error::Inconsistent(format!("Singer predatum {v:?}, scalar {scalar}: {e}")))?;
            out.push(SingerPredatum { m, variant: v, scalar, predatum });
        }
    }
    Ok(out)
}

pub fn singer_label(m: u32, v: SingerVariant) -> Label {
    match v {
        SingerVariant::A { k, .. } => Label::A { n: m, k: k.min(m - k) },
        SingerVariant::B { .. } if m == 2 => Label::Q8,
        SingerVariant::B { .. } => Label::B { n: m / 2 },
    }
}

fn label_order(label: Label) -> u64 {
    match label {
        Label::Homocyclic(n) | Label::A { n, .. } => 1 << (2 * n),
        Label::Q8 => 8,
        Label::B { n } => 1 << (3 * n),
        Label::BExceptional => 512,
    }
}

/// Groups Singer predata by label. Every member is tied to the class
/// representative (l = 0, scalar 1, smallest k) by a recorded ΓL_1 witness;
/// a member without one is an error rather than a silent merge.
pub fn label_singer_classes(predata: &[SingerPredatum]) -> Result<Vec<ClassEntry>> {
    let mut groups: BTreeMap<(u32, Label), Vec<&SingerPredatum>> = BTreeMap::new();
    for p in predata {
        groups.entry((p.m, singer_label(p.m, p.variant))).or_default().push(p);
    }
    let mut out = vec![];
    for ((m, label), members) in groups {
        let key = |p: &&&SingerPredatum| match p.variant {
            SingerVariant::A { l, k } => (l, k, p.scalar),
            SingerVariant::B { l } => (l, 0, p.scalar),
        };
        let rep = *members.iter().min_by_key(key).unwrap();
        let mut merges = vec![];
        for p in &members {
            let w = gammal1_equivalent(&p.predatum.squaring, &rep.predatum.squaring)?
                .ok_or_else(|| Error::Inconsistent(format!("undecided: {:?} scalar {} has no ΓL_1 witness to the {label} representative", p.variant, p.scalar)))?;
            merges.push(Merge { variant: p.variant, scalar: p.scalar, witness: w });
        }
        let spec = GroupSpec::from_squaring(&rep.predatum.squaring)?;
        out.push(ClassEntry { label, order: spec.order(), witness: rep.predatum.clone(), provenance: format!("singer m={m} {:?}", rep.variant), spec, merges });
    }
    Ok(out)
}

pub fn homocyclic_entry(n: u32) -> Result<ClassEntry> {
    // x ↦ x² has a trivial induced form, so this predatum fails only the
    // nontriviality check
    let witness = monomial_predatum(n, n, if n == 1 { 1 } else { 2 }, 1)?;
    let spec = GroupSpec::from_squaring(&witness.squaring)?;
    Ok(ClassEntry { label: Label::Homocyclic(n), order: spec.order(), witness, provenance: format!("homocyclic n={n}"), spec, merges: vec![] })
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SearchStats {
    pub subgroups: usize,
    pub targets: usize,
    pub monomial_only: usize,
    pub candidates: usize,
    pub biadditive: usize,
    pub valid: usize,
    pub distinct_tables: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NonstandardClass {
    pub predatum: Predatum,
    pub members: usize,
    /// σ_ω = γ2 ∘ representative ∘ γ1, when m = 6
    pub sigma_omega_witness: Option<GammaWitness>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NonstandardOutcome {
    pub m: u32,
    pub classes: Vec<NonstandardClass>,
    pub stats: SearchStats,
    pub log: Vec<String>,
}

fn exponent_digits(m: u32, x: u64) -> u32 {
    let big = (1u64 << m) - 1;
    let r = x % big;
    // χ^0 and χ^{2^m-1} differ at 0; the interpolant uses the latter
    if r == 0 {
        m
    } else {
        r.count_ones()
    }
}

/// Predata whose A is transitive but contains no scalars, up to
/// ΓL_1-equivalence of squarings.
pub fn nonstandard_search(m: u32) -> Result<NonstandardOutcome> {
    if !(2..=16).contains(&m) {
        return Err(Error::Precondition(format!("m = {m} out of range")));
    }
    let mut stats = SearchStats::default();
    let mut log = vec![];
    let field = FieldSpec::binary(m)?;
    let big = (1u64 << m) - 1;
    let subgroups = enumerate_transitive_subgroups(m);
    stats.subgroups = subgroups.len();
    if subgroups.is_empty() {
        log.push(format!("m={m}: no transitive subgroup without scalars"));
    }
    let mut found: Vec<Predatum> = vec![];
    for a in &subgroups {
        for n in (2..=m).filter(|n| m % n == 0) {
            let step = big / a.d;
            // the interpolant lives on ε + j·step; it needs an exponent with
            // two binary digits, and a second one with at most two, since a
            // single such term gives a monomial
            let mut monomial_only = 0;
            let targets = enumerate_hom_targets_where(a, n, |eps| {
                let digits: Vec<u32> = (0..a.d).map(|x| exponent_digits(m, eps + x * step)).collect();
                let two = digits.iter().any(|&c| c == 2);
                let small = digits.iter().filter(|&&c| c <= 2).count();
                monomial_only += usize::from(two && small < 2);
                two && small >= 2
            })?;
            if monomial_only > 0 {
                log.push(format!("A={a:?} n={n}: {monomial_only} (d', u) with a single low-digit exponent; monomial, discarded"));
            }
            stats.monomial_only += monomial_only;
            stats.targets += targets.len();
            for t in targets {
                for s1 in sigma1_solutions(a, &t)? {
                    stats.candidates += 1;
                    let vals = coset_monomial_function(a, &t, s1)?;
                    let support: Vec<usize> = (0..a.d).map(|x| match (t.epsilon_exp + x * step) % big { 0 => big as usize, e => e as usize }).collect();
                    let crit = biadditivity_criterion(&field.interpolate_sparse(&vals, &support)?);
                    if !crit.biadditive || !crit.nontrivial {
                        continue;
                    }
                    stats.biadditive += 1;
                    let Ok(sq) = coset_monomial_squaring(a, &t, s1) else { continue };
                    if !sq.is_surjective() {
                        continue;
                    }
                    let p = Predatum { squaring: sq, a_params: *a, target: t };
                    if p.validate().is_ok() {
                        stats.valid += 1;
                        found.push(p);
                    }
                }
            }
        }
    }
    let mut seen = HashSet::new();
    found.retain(|p| seen.insert(p.squaring.table.clone()));
    stats.distinct_tables = found.len();
    let mut classes: Vec<NonstandardClass> = vec![];
    'next: for p in found {
        for c in classes.iter_mut() {
            if c.predatum.squaring.n == p.squaring.n && gammal1_equivalent(&p.squaring, &c.predatum.squaring)?.is_some() {
                c.members += 1;
                continue 'next;
            }
        }
        let sigma_omega_witness = if m == 6 && p.squaring.n == 3 { gammal1_equivalent(&p.squaring, &sigma_omega())? } else { None };
        classes.push(NonstandardClass { predatum: p, members: 1, sigma_omega_witness });
    }
    log.push(format!("m={m}: {} classes", classes.len()));
    Ok(NonstandardOutcome { m, classes, stats, log })
}

/// σ_c ∘ ι_ζ = λ·h_ε(κ) with h_ε(κ1, κ2) = κ1³ + εκ1²κ2 + κ2³, the
/// arguments of h swapped when `swap`. Exponents are powers of ω.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HigmanWitness {
    pub zeta_log: u32,
    pub eps_log: u32,
    pub c_log: u32,
    pub swap: bool,
    pub lambda_log: u32,
    /// σ_c = γ2 ∘ σ_ω ∘ γ1
    pub sigma_c_witness: GammaWitness,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExceptionalIdentification {
    pub sigma_omega_witness: GammaWitness,
    /// ε ∈ F_8 not of the form ρ^{-1} + ρ², as powers of ω
    pub admissible_eps_logs: Vec<u32>,
    pub witnesses: Vec<HigmanWitness>,
    pub equivalent_to_x9: bool,
    pub entry: ClassEntry,
}

pub const HIGMAN_ZETA_EPS: [(u32, u32); 3] = [(13, 9), (44, 18), (25, 36)];

/// Searches c ∈ {ω, ω², ω⁴}, a component swap and λ ∈ F_8^*.
pub fn higman_witness(f: &FieldSpec, zeta_log: u32, eps_log: u32) -> Result<Option<HigmanWitness>> {
    let zeta = f.omega_pow(zeta_log as i64);
    let eps = f.omega_pow(eps_log as i64);
    if f.in_subfield(zeta, 3)? || !f.in_subfield(eps, 3)? {
        return Err(Error::Precondition("ζ must lie outside F_8 and ε inside".into()));
    }
    let f8: Vec<Elem> = f.elements().filter(|&x| f.in_subfield(x, 3).unwrap()).collect();
    let h = |k1: Elem, k2: Elem| f.add(f.add(f.pow(k1, 3), f.mul(eps, f.mul(f.mul(k1, k1), k2))), f.pow(k2, 3));
    let om = sigma_omega();
    for c_log in [1u32, 2, 4] {
        let sc = sigma_c(f.omega_pow(c_log as i64))?;
        let vals = sc.field_values()?;
        for swap in [false, true] {
            for lambda_log in (0..63).step_by(9) {
                let lambda = f.omega_pow(lambda_log as i64);
                let hit = f8.iter().all(|&k1| {
                    f8.iter().all(|&k2| {
                        let x = f.add(k1, f.mul(k2, zeta));
                        let want = if swap { h(k2, k1) } else { h(k1, k2) };
                        vals[x as usize] == f.mul(lambda, want)
                    })
                });
                if hit {
                    let w = gammal1_equivalent(&om, &sc)?.ok_or_else(|| Error::Inconsistent(format!("σ_ω^{c_log} is not equivalent to σ_ω")))?;
                    return Ok(Some(HigmanWitness { zeta_log, eps_log, c_log, swap, lambda_log, sigma_c_witness: w }));
                }
            }
        }
    }
    Ok(None)
}

/// {ε ∈ F_8 : ε ≠ ρ^{-1} + ρ² for all ρ ∈ F_8^*} as powers of ω.
pub fn admissible_eps(f: &FieldSpec) -> Result<Vec<u32>> {
    let f8: Vec<Elem> = f.elements().filter(|&x| f.in_subfield(x, 3).unwrap()).collect();
    let mut hit = HashSet::new();
    for &r in f8.iter().filter(|&&r| r != 0) {
        hit.insert(f.add(f.inv(r)?, f.mul(r, r)));
    }
    let mut out: Vec<u32> = f8.iter().filter(|x| !hit.contains(x)).map(|&x| f.log(x).unwrap_or(u32::MAX)).collect();
    out.sort();
    Ok(out)
}

pub fn identify_exceptional(p: &Predatum) -> Result<ExceptionalIdentification> {
    let sq = &p.squaring;
    if (sq.m, sq.n) != (6, 3) {
        return Err(Error::Precondition("the exceptional group lives on F_64 → F_8".into()));
    }
    let f = FieldSpec::binary(6)?;
    let sigma_omega_witness =
        gammal1_equivalent(sq, &sigma_omega())?.ok_or_else(|| Error::Inconsistent("predatum is not ΓL_1-equivalent to σ_ω; check the modulus of F_64".into()))?;
    let admissible_eps_logs = admissible_eps(&f)?;
    let mut witnesses = vec![];
    for (z, e) in HIGMAN_ZETA_EPS {
        if !admissible_eps_logs.contains(&e) {
            return Err(Error::Inconsistent(format!("ω^{e} is not an admissible ε")));
        }
        let w = higman_witness(&f, z, e)?.ok_or_else(|| Error::Inconsistent(format!("no Higman witness for ζ = ω^{z}, ε = ω^{e}")))?;
        witnesses.push(w);
    }
    let equivalent_to_x9 = gammal1_equivalent(sq, &monomial(6, 3, 9)?)?.is_some();
    if equivalent_to_x9 {
        return Err(Error::Inconsistent("σ_ω is equivalent to x^9".into()));
    }
    let spec = GroupSpec::from_squaring(sq)?;
    let entry = ClassEntry { label: Label::BExceptional, order: spec.order(), witness: p.clone(), provenance: "nonstandard m=6".into(), spec, merges: vec![] };
    Ok(ExceptionalIdentification { sigma_omega_witness, admissible_eps_logs, witnesses, equivalent_to_x9, entry })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Distinction {
    Order,
    Profile(String),
    Undecided,
}

/// Why two entries are not isomorphic, by the first invariant that differs.
pub fn distinguish(a: &InvariantProfile, b: &InvariantProfile) -> Distinction {
    if a.order != b.order {
        return Distinction::Order;
    }
    let fields = [
        ("order_histogram", a.order_histogram != b.order_histogram),
        ("center", a.center != b.center),
        ("derived", a.derived != b.derived),
        ("commuting_pairs", a.commuting_pairs != b.commuting_pairs),
        ("isotropic_counts", a.isotropic_counts.is_some() && b.isotropic_counts.is_some() && a.isotropic_counts != b.isotropic_counts),
    ];
    match fields.iter().find(|f| f.1) {
        Some((name, _)) => Distinction::Profile(name.to_string()),
        None => Distinction::Undecided,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TheoremEntry {
    pub entry: ClassEntry,
    pub orbit_count: u64,
    /// brute-force count, for groups of order at most 64
    pub oracle_orbit_count: Option<u64>,
    pub profile: InvariantProfile,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TheoremList {
    pub max_order: u64,
    pub entries: Vec<TheoremEntry>,
    /// (i, j, reason) for every pair i < j
    pub distinctions: Vec<(usize, usize, Distinction)>,
    pub exceptional: Option<ExceptionalIdentification>,
    pub log: Vec<String>,
}

impl TheoremList {
    pub fn all_distinct(&self) -> bool {
        self.distinctions.iter().all(|d| d.2 != Distinction::Undecided)
    }
}

fn smallest_divisor_at_least_two(m: u32) -> u32 {
    (2..=m).find(|d| m % d == 0).unwrap_or(m)
}

/// All 3-orbit 2-groups of order at most `max_order` produced by the
/// pipelines, sorted by order then label.
pub fn theorem_list(max_order: u64) -> Result<TheoremList> {
    if !max_order.is_power_of_two() || max_order < 4 || max_order > 1 << 16 {
        return Err(Error::Precondition("max order must be a power of two in 4..=2^16".into()));
    }
    let kmax = max_order.trailing_zeros();
    let mut entries: Vec<ClassEntry> = vec![];
    let mut log = vec![];
    for n in (1..).take_while(|n| 2 * n <= kmax) {
        entries.push(homocyclic_entry(n)?);
    }
    for m in 1..=kmax {
        // A-type has order 2^{2m}, B-type 2^{3m/2}
        if 2 * m > kmax && (m % 2 == 1 || 3 * m / 2 > kmax) {
            continue;
        }
        let mut predata = enumerate_singer(m)?;
        predata.retain(|p| label_order(singer_label(m, p.variant)) <= max_order);
        entries.extend(label_singer_classes(&predata)?);
    }
    let mut exceptional = None;
    for m in (2..=kmax).filter(|&m| m + smallest_divisor_at_least_two(m) <= kmax) {
        let out = nonstandard_search(m)?;
        log.extend(out.log.iter().cloned());
        for c in out.classes {
            if 1u64 << (c.predatum.squaring.m + c.predatum.squaring.n) > max_order {
                continue;
            }
            let id = identify_exceptional(&c.predatum)?;
            entries.push(id.entry.clone());
            exceptional = Some(id);
        }
    }
    entries.sort_by_key(|e| (e.order, e.label));
    let mut out = vec![];
    for entry in entries {
        let orbit_count = orbit_count(&entry.spec)?;
        let oracle_orbit_count = if entry.order <= 64 { Some(brute_force_orbits(&entry.spec, 1 << 32)?) } else { None };
        let profile = invariant_profile(&entry.spec);
        out.push(TheoremEntry { entry, orbit_count, oracle_orbit_count, profile });
    }
    let mut distinctions = vec![];
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            distinctions.push((i, j, distinguish(&out[i].profile, &out[j].profile)));
        }
    }
    Ok(TheoremList { max_order, entries: out, distinctions, exceptional, log })
}

/// Spec for `construct`: A(n, Frob^k), B(n, 1), the exceptional group,
/// homocyclic or Q8.
pub fn construct_a(n: u32, k: u32) -> Result<GroupSpec> {
    GroupSpec::from_squaring(&singer_squaring(n, SingerVariant::A { l: 0, k }, 1)?.squaring)
}

pub fn construct_b(n: u32) -> Result<GroupSpec> {
    GroupSpec::from_squaring(&singer_squaring(2 * n, SingerVariant::B { l: 0 }, 1)?.squaring)
}

pub fn construct_exceptional() -> GroupSpec {
    GroupSpec::from_squaring(&sigma_omega()).expect("σ_ω is biadditive")
}

pub fn exceptional_predatum() -> Result<Predatum> {
    let a = StandardParams::new(2, 6, 3, 1, 2)?;
    let t = enumerate_hom_targets(&a, 3)?
        .into_iter()
        .find(|t| t.u == 1 && t.e_pp == 0)
        .ok_or_else(|| Error::Inconsistent("missing homomorphism target".into()))?;
    Ok(Predatum { squaring: sigma_omega(), a_params: a, target: t })
}

pub fn squaring_of(spec: &GroupSpec) -> Squaring {
    spec.squaring()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singer_counts() {
        let three = enumerate_singer(3).unwrap();
        assert!(three.iter().all(|p| matches!(p.variant, SingerVariant::A { .. })));
        let ks: HashSet<u32> = three.iter().map(|p| if let SingerVariant::A { k, .. } = p.variant { k } else { 0 }).collect();
        assert_eq!(ks, HashSet::from([1, 2]));
        let four = enumerate_singer(4).unwrap();
        assert!(four.iter().all(|p| matches!(p.variant, SingerVariant::B { .. })));
        assert!(!four.is_empty());
        let two = enumerate_singer(2).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(GroupSpec::from_squaring(&two[0].predatum.squaring).unwrap(), GroupSpec::q8());
    }

    #[test]
    fn labels_merge_with_witnesses() {
        let classes = label_singer_classes(&enumerate_singer(3).unwrap()).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].label, Label::A { n: 3, k: 1 });
        let six = label_singer_classes(&enumerate_singer(6).unwrap()).unwrap();
        let labels: Vec<Label> = six.iter().map(|c| c.label).collect();
        assert_eq!(labels, vec![Label::A { n: 6, k: 2 }, Label::B { n: 3 }]);
        assert_eq!(six[1].merges.len(), 3 * 7);
    }

    #[test]
    fn nonstandard_small() {
        for m in [2, 3, 4, 5, 7] {
            assert!(nonstandard_search(m).unwrap().classes.is_empty());
        }
        let six = nonstandard_search(6).unwrap();
        assert_eq!(six.classes.len(), 1);
        assert!(six.classes[0].sigma_omega_witness.is_some());
    }

    #[test]
    fn exceptional_identification() {
        let id = identify_exceptional(&exceptional_predatum().unwrap()).unwrap();
        assert_eq!(id.admissible_eps_logs, vec![9, 18, 36]);
        let got: Vec<(u32, u32, bool, u32)> = id.witnesses.iter().map(|w| (w.zeta_log, w.c_log, w.swap, w.lambda_log)).collect();
        assert_eq!(got, vec![(13, 1, false, 9), (44, 1, true, 9), (25, 2, true, 18)]);
        assert!(!id.equivalent_to_x9);
    }

    #[test]
    fn theorem_list_small() {
        let t = theorem_list(64).map_err(|e| e.to_string()).unwrap();
        let labels: Vec<String> = t.entries.iter().map(|e| e.entry.label.to_string()).collect();
        assert_eq!(labels, vec!["Homocyclic(1)", "Q8", "Homocyclic(2)", "Homocyclic(3)", "A(3,Frob)", "B(2,1)"]);
        assert!(t.entries.iter().all(|e| e.orbit_count == 3 && e.oracle_orbit_count == Some(3)));
        assert!(t.all_distinct());
    }
}
