//! The group G_P on F_2^m × F_2^n given by structure constants σ_i, π_{i,j},
//! its automorphism pair group S_P, and a brute-force orbit oracle that only
//! looks at the multiplication table.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::intertwine::{self, Mode};
use crate::linalg::{self, Echelon};
use crate::squaring::Squaring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub u: u32,
    pub v: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct GroupSpecData {
    m: u32,
    n: u32,
    sigma: Vec<u32>,
    #[serde(default)]
    pi: BTreeMap<String, u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "GroupSpecData", into = "GroupSpecData")]
pub struct GroupSpec {
    m: u32,
    n: u32,
    sigma: Vec<u32>,
    /// pi[i][j] for i < j (0-based)
    pi: Vec<Vec<u32>>,
    /// rows[j]: the linear map u2 ↦ u2_j σ_j + Σ_{i<j} u2_i π_{i,j}
    rows: Vec<Vec<u32>>,
    table: Option<Vec<u32>>,
}

impl PartialEq for GroupSpec {
    fn eq(&self, o: &Self) -> bool {
        (self.m, self.n, &self.sigma, &self.pi) == (o.m, o.n, &o.sigma, &o.pi)
    }
}
impl Eq for GroupSpec {}

impl From<GroupSpec> for GroupSpecData {
    fn from(g: GroupSpec) -> Self {
        let mut pi = BTreeMap::new();
        for i in 0..g.m as usize {
            for j in i + 1..g.m as usize {
                pi.insert(format!("{},{}", i + 1, j + 1), g.pi[i][j]);
            }
        }
        GroupSpecData { m: g.m, n: g.n, sigma: g.sigma, pi }
    }
}

impl TryFrom<GroupSpecData> for GroupSpec {
    type Error = Error;
    fn try_from(d: GroupSpecData) -> Result<GroupSpec> {
        let m = d.m as usize;
        let mut pi = vec![vec![0; m]; m];
        for (k, v) in d.pi {
            let parts: Vec<usize> = k.split(',').map(|s| s.trim().parse()).collect::<std::result::Result<_, _>>().map_err(|_| Error::Parse(format!("bad pi key {k:?}")))?;
            match parts[..] {
                [i, j] if 1 <= i && i < j && j <= m => pi[i - 1][j - 1] = v,
                _ => return Err(Error::Parse(format!("bad pi key {k:?}"))),
            }
        }
        GroupSpec::new(d.m, d.n, d.sigma, pi)
    }
}

impl GroupSpec {
    /// `pi[i][j]` is read for i < j only.
    pub fn new(m: u32, n: u32, sigma: Vec<u32>, pi: Vec<Vec<u32>>) -> Result<GroupSpec> {
        if m > 16 || n > 16 || sigma.len() != m as usize || pi.len() != m as usize || pi.iter().any(|r| r.len() != m as usize) {
            return Err(Error::Precondition(format!("structure constants do not fit m={m}, n={n}")));
        }
        let mut pi = pi;
        for (i, row) in pi.iter_mut().enumerate() {
            for x in row.iter_mut().take(i + 1) {
                *x = 0;
            }
        }
        if let Some(&v) = sigma.iter().chain(pi.iter().flatten()).find(|&&v| v >> n != 0) {
            return Err(Error::OutOfRange(v as u64));
        }
        let rows = (0..m as usize)
            .map(|j| (0..m as usize).map(|i| if i == j { sigma[j] } else if i < j { pi[i][j] } else { 0 }).collect())
            .collect();
        let mut g = GroupSpec { m, n, sigma, pi, rows, table: None };
        if m <= 9 {
            let size = 1u32 << m;
            let table = (0..size * size).map(|k| g.cocycle_direct(k / size, k % size)).collect();
            g.table = Some(table);
        }
        Ok(g)
    }

    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn sigma(&self) -> &[u32] {
        &self.sigma
    }
    /// π_{i,j} with 0-based i < j.
    pub fn pi(&self, i: usize, j: usize) -> u32 {
        self.pi[i][j]
    }
    pub fn order(&self) -> u64 {
        1 << (self.m + self.n)
    }

    fn cocycle_direct(&self, u1: u32, u2: u32) -> u32 {
        let mut r = 0;
        for j in 0..self.m as usize {
            if u1 >> j & 1 == 1 {
                r ^= linalg::apply(&self.rows[j], u2);
            }
        }
        r
    }

    /// Σ u1_i u2_i σ_i + Σ_{i<j} u1_j u2_i π_{i,j}
    pub fn cocycle(&self, u1: u32, u2: u32) -> u32 {
        match &self.table {
            Some(t) => t[((u1 as usize) << self.m) | u2 as usize],
            None => self.cocycle_direct(u1, u2),
        }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { u: 0, v: 0 }
    }

    pub fn multiply(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        GroupElement { u: a.u ^ b.u, v: a.v ^ b.v ^ self.cocycle(a.u, b.u) }
    }

    pub fn inverse(&self, a: GroupElement) -> GroupElement {
        GroupElement { u: a.u, v: a.v ^ self.cocycle(a.u, a.u) }
    }

    pub fn square(&self, a: GroupElement) -> GroupElement {
        GroupElement { u: 0, v: self.cocycle(a.u, a.u) }
    }

    /// [g, h] = g^{-1}h^{-1}gh
    pub fn commutator(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        let a = self.multiply(self.inverse(g), self.inverse(h));
        self.multiply(a, self.multiply(g, h))
    }

    pub fn element_order(&self, a: GroupElement) -> u32 {
        if a == self.identity() {
            1
        } else if self.square(a) == self.identity() {
            2
        } else {
            4
        }
    }

    /// u in the low m bits.
    pub fn pack(&self, a: GroupElement) -> u32 {
        a.u | a.v << self.m
    }

    pub fn unpack(&self, x: u32) -> GroupElement {
        GroupElement { u: x & ((1 << self.m) - 1), v: x >> self.m }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..1u32 << (self.m + self.n)).map(|x| self.unpack(x))
    }

    pub fn from_squaring(s: &Squaring) -> Result<GroupSpec> {
        if s.eval(0) != 0 || !s.is_biadditive() {
            return Err(Error::NotBiadditive);
        }
        let m = s.m as usize;
        let sigma = (0..m).map(|i| s.eval(1 << i)).collect();
        let mut pi = vec![vec![0; m]; m];
        for i in 0..m {
            for j in i + 1..m {
                pi[i][j] = s.induced_form(1 << i, 1 << j);
            }
        }
        GroupSpec::new(s.m, s.n, sigma, pi)
    }

    /// u ↦ the common square of the coset {u} × F_2^n.
    pub fn squaring(&self) -> Squaring {
        let table = (0..1u32 << self.m).map(|u| self.square(GroupElement { u, v: 0 }).v).collect();
        Squaring { m: self.m, n: self.n, table }
    }

    pub fn q8() -> GroupSpec {
        GroupSpec::new(2, 1, vec![1, 1], vec![vec![0, 1], vec![0, 0]]).unwrap()
    }

    pub fn elementary_abelian(m: u32, n: u32) -> GroupSpec {
        GroupSpec::new(m, n, vec![0; m as usize], vec![vec![0; m as usize]; m as usize]).unwrap()
    }

    /// (Z/4)^n from x ↦ x² on F_{2^n}.
    pub fn homocyclic(n: u32) -> Result<GroupSpec> {
        let f = FieldSpec::binary(n)?;
        let table = f.elements().map(|x| f.mul(x, x)).collect();
        GroupSpec::from_squaring(&Squaring::new(n, n, table)?)
    }

    /// Z/2 × Z/4 as the x_1 = order-4, x_2 = order-2 generator pair over Φ = Z/2.
    pub fn z2_z4() -> GroupSpec {
        GroupSpec::new(2, 1, vec![1, 0], vec![vec![0; 2]; 2]).unwrap()
    }

    pub fn export_pc(&self) -> String {
        let word = |v: u32| {
            let w: Vec<String> = (0..self.n).filter(|k| v >> k & 1 == 1).map(|k| format!("y{}", k + 1)).collect();
            if w.is_empty() {
                "1".to_string()
            } else {
                w.join("*")
            }
        };
        let mut out = format!("pc m={} n={}\n", self.m, self.n);
        for i in 0..self.m as usize {
            writeln!(out, "x{}^2 = {}", i + 1, word(self.sigma[i])).unwrap();
        }
        for i in 0..self.m as usize {
            for j in i + 1..self.m as usize {
                writeln!(out, "[x{},x{}] = {}", i + 1, j + 1, word(self.pi[i][j])).unwrap();
            }
        }
        for i in 0..self.m {
            for k in 0..self.n {
                writeln!(out, "[x{},y{}] = 1", i + 1, k + 1).unwrap();
            }
        }
        for k in 0..self.n {
            writeln!(out, "y{}^2 = 1", k + 1).unwrap();
        }
        for k in 0..self.n {
            for l in k + 1..self.n {
                writeln!(out, "[y{},y{}] = 1", k + 1, l + 1).unwrap();
            }
        }
        out
    }

    pub fn parse_pc(text: &str) -> Result<GroupSpec> {
        let bad = |s: &str| Error::Parse(s.to_string());
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| bad("empty presentation"))?;
        let mut m = None;
        let mut n = None;
        let mut it = header.split_whitespace();
        if it.next() != Some("pc") {
            return Err(bad("missing 'pc' header"));
        }
        for kv in it {
            match kv.split_once('=') {
                Some(("m", v)) => m = v.parse::<u32>().ok(),
                Some(("n", v)) => n = v.parse::<u32>().ok(),
                _ => return Err(bad(&format!("bad header field {kv:?}"))),
            }
        }
        let (m, n) = m.zip(n).ok_or_else(|| bad("header needs m and n"))?;
        if m > 16 || n > 16 {
            return Err(bad("m and n must be at most 16"));
        }
        let gen = |s: &str| -> Result<(char, usize)> {
            let c = s.chars().next().ok_or_else(|| bad("empty generator"))?;
            let i: usize = s[1..].parse().map_err(|_| bad(&format!("bad generator {s:?}")))?;
            let lim = if c == 'x' { m } else if c == 'y' { n } else { 0 } as usize;
            if i == 0 || i > lim {
                return Err(bad(&format!("unknown generator {s:?}")));
            }
            Ok((c, i - 1))
        };
        let word = |s: &str| -> Result<u32> {
            if s == "1" {
                return Ok(0);
            }
            let mut v = 0;
            for g in s.split('*') {
                match gen(g.trim())? {
                    ('y', k) => v ^= 1 << k,
                    _ => return Err(bad(&format!("right-hand side {s:?} must be a word in y"))),
                }
            }
            Ok(v)
        };
        let mut sigma = vec![0; m as usize];
        let mut pi = vec![vec![0; m as usize]; m as usize];
        for line in lines {
            let (lhs, rhs) = line.split_once('=').ok_or_else(|| bad(&format!("no '=' in {line:?}")))?;
            let (lhs, rhs) = (lhs.trim(), word(rhs.trim())?);
            if let Some(g) = lhs.strip_suffix("^2") {
                match gen(g)? {
                    ('x', i) => sigma[i] = rhs,
                    _ if rhs != 0 => return Err(bad(&format!("{lhs} must be trivial"))),
                    _ => {}
                }
            } else if let Some(inner) = lhs.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                let (a, b) = inner.split_once(',').ok_or_else(|| bad(&format!("bad commutator {lhs:?}")))?;
                match (gen(a.trim())?, gen(b.trim())?) {
                    (('x', i), ('x', j)) if i < j => pi[i][j] = rhs,
                    _ if rhs != 0 => return Err(bad(&format!("{lhs} must be trivial"))),
                    _ => {}
                }
            } else {
                return Err(bad(&format!("unrecognised relation {line:?}")));
            }
        }
        GroupSpec::new(m, n, sigma, pi)
    }
}

/// S_P as the list of pairs (ψ1, ψ2) with σ∘ψ1 = ψ2∘σ, matrices as row lists.
#[derive(Clone, Debug)]
pub struct AutPairGroup {
    pub m: u32,
    pub n: u32,
    pub pairs: Vec<(Vec<u32>, Vec<u32>)>,
}

impl AutPairGroup {
    pub fn order(&self) -> usize {
        self.pairs.len()
    }

    /// Orbits of A_P on F_2^m ∖ {0}.
    pub fn a_orbits(&self) -> u64 {
        orbits_of(self.m, self.pairs.iter().map(|p| &p.0))
    }

    /// Orbits of B_P on F_2^n ∖ {0}.
    pub fn b_orbits(&self) -> u64 {
        orbits_of(self.n, self.pairs.iter().map(|p| &p.1))
    }

    pub fn b_order(&self) -> usize {
        let mut b: Vec<&Vec<u32>> = self.pairs.iter().map(|p| &p.1).collect();
        b.sort();
        b.dedup();
        b.len()
    }
}

struct Orbits {
    parent: Vec<u32>,
    /// orbits on nonzero vectors
    count: u64,
}

impl Orbits {
    fn new(dim: u32) -> Orbits {
        let size = 1u32 << dim;
        Orbits { parent: (0..size).collect(), count: size as u64 - 1 }
    }

    fn find(&mut self, x: u32) -> u32 {
        let mut r = x;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = x;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, x: u32, y: u32) {
        let (a, b) = (self.find(x), self.find(y));
        if a != b {
            self.parent[a.max(b) as usize] = a.min(b);
            self.count -= 1;
        }
    }

    fn add(&mut self, rows: &[u32]) {
        for x in 1..self.parent.len() as u32 {
            self.merge(x, linalg::apply(rows, x));
        }
    }
}

fn orbits_of<'a>(dim: u32, maps: impl Iterator<Item = &'a Vec<u32>>) -> u64 {
    let mut o = Orbits::new(dim);
    for rows in maps {
        o.add(rows);
    }
    o.count
}

pub const DEFAULT_BUDGET: u64 = 1 << 32;

/// Requires the image of σ_P to span F_2^n, so that ψ2 is determined by ψ1.
pub fn aut_pair_group(spec: &GroupSpec, budget: u64) -> Result<AutPairGroup> {
    let s = spec.squaring();
    if !s.image_spans() {
        return Err(Error::NotSpanning);
    }
    let out = intertwine::search(&s.table, &s.table, s.m, s.n, Mode::All, budget)?;
    if !out.complete {
        return Err(Error::Budget(budget));
    }
    let mut pairs: Vec<(Vec<u32>, Vec<u32>)> = out.found.into_iter().map(|w| (w.t, w.l)).collect();
    pairs.sort();
    for (t, l) in &pairs {
        if (0..1u32 << s.m).any(|x| s.eval(linalg::apply(t, x)) != linalg::apply(l, s.eval(x))) {
            return Err(Error::Inconsistent("pair fails σ∘ψ1 = ψ2∘σ".into()));
        }
    }
    Ok(AutPairGroup { m: s.m, n: s.n, pairs })
}

/// Generators of S_P without listing it: for every k and c, one pair whose
/// T starts with the rows e_0, …, e_{k-1}, c. These are transversals of the
/// chain of pointwise stabilizers of e_0, e_1, …, so together they generate.
pub fn aut_pair_generators(spec: &GroupSpec, budget: u64) -> Result<Vec<(Vec<u32>, Vec<u32>)>> {
    let s = spec.squaring();
    if !s.image_spans() {
        return Err(Error::NotSpanning);
    }
    let mut gens = vec![];
    let mut spent = 0;
    for k in 0..s.m {
        let mut prefix: Vec<u32> = (0..k).map(|i| 1 << i).collect();
        prefix.push(0);
        for c in 1..1u32 << s.m {
            prefix[k as usize] = c;
            let (nodes, complete) = intertwine::search_each(&s.table, &s.table, s.m, s.n, &prefix, budget - spent, |w| {
                gens.push((w.t, w.l));
                false
            })?;
            spent += nodes;
            if !complete {
                return Err(Error::Budget(budget));
            }
        }
    }
    for (t, l) in &gens {
        if (0..1u32 << s.m).any(|x| s.eval(linalg::apply(t, x)) != linalg::apply(l, s.eval(x))) {
            return Err(Error::Inconsistent("pair fails σ∘ψ1 = ψ2∘σ".into()));
        }
    }
    gens.sort();
    gens.dedup();
    Ok(gens)
}

/// 1 + #(B_P-orbits on F_2^n∖0) + #(A_P-orbits on F_2^m∖0).
///
/// The central automorphisms (u, v) ↦ (u, v + uC) act transitively on each
/// coset {u} × F_2^n with u ≠ 0, since uC runs over F_2^n. So the orbits
/// outside Φ = {0} × F_2^n match the A_P-orbits, and those inside Φ ∖ 1
/// match the B_P-orbits.
pub fn orbit_count(spec: &GroupSpec) -> Result<u64> {
    let gens = aut_pair_generators(spec, DEFAULT_BUDGET)?;
    let a = orbits_of(spec.m, gens.iter().map(|g| &g.0));
    let b = orbits_of(spec.n, gens.iter().map(|g| &g.1));
    Ok(1 + b + a)
}

/// Orbit of a point under a permutation group given by generators.
fn orbit(gens: &[Vec<u16>], x: u16, size: usize) -> Vec<bool> {
    let mut seen = vec![false; size];
    seen[x as usize] = true;
    let mut stack = vec![x];
    while let Some(y) = stack.pop() {
        for g in gens {
            let z = g[y as usize];
            if !seen[z as usize] {
                seen[z as usize] = true;
                stack.push(z);
            }
        }
    }
    seen
}

struct Oracle {
    size: usize,
    mul: Vec<u16>,
    order: Vec<u8>,
    gens: Vec<u16>,
    img: Vec<u16>,
    pre: Vec<u16>,
    trail: Vec<u16>,
    nodes: u64,
    budget: u64,
}

const UNSET: u16 = u16::MAX;

impl Oracle {
    fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.size + b as usize]
    }

    /// Sets x ↦ y and closes under right multiplication by the first k+1
    /// generators. False on conflict (after which the caller undoes).
    fn assign(&mut self, k: usize, y: u16) -> bool {
        self.nodes += 1;
        let g = self.gens[k];
        if !self.set(g, y) {
            return false;
        }
        let mut i = 0;
        // trail doubles as the work queue; everything already known is
        // closed under the first k generators, so revisit it with g_k too
        let known: Vec<u16> = (0..self.size as u16).filter(|&x| self.img[x as usize] != UNSET).collect();
        let mut queue = known;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            let fx = self.img[x as usize];
            for j in 0..=k {
                let z = self.mul(x, self.gens[j]);
                let fz = self.mul(fx, self.img[self.gens[j] as usize]);
                match self.img[z as usize] {
                    UNSET => {
                        if !self.set(z, fz) {
                            return false;
                        }
                        queue.push(z);
                    }
                    have if have != fz => return false,
                    _ => {}
                }
            }
        }
        true
    }

    fn set(&mut self, x: u16, y: u16) -> bool {
        if self.img[x as usize] != UNSET {
            return self.img[x as usize] == y;
        }
        if self.pre[y as usize] != UNSET || self.order[x as usize] != self.order[y as usize] {
            return false;
        }
        self.img[x as usize] = y;
        self.pre[y as usize] = x;
        self.trail.push(x);
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().unwrap();
            self.pre[self.img[x as usize] as usize] = UNSET;
            self.img[x as usize] = UNSET;
        }
    }

    /// Extends the current assignment of g_0..g_{k-1} to an automorphism.
    fn complete(&mut self, k: usize) -> Result<bool> {
        if self.nodes > self.budget {
            return Err(Error::Budget(self.budget));
        }
        if k == self.gens.len() {
            return Ok(self.trail.len() == self.size);
        }
        let want = self.order[self.gens[k] as usize];
        for c in 0..self.size as u16 {
            if self.pre[c as usize] != UNSET || self.order[c as usize] != want {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(k, c) && self.complete(k + 1)? {
                return Ok(true);
            }
            self.undo(mark);
        }
        Ok(false)
    }
}

/// Orbit count of Aut(G) on G from the multiplication table alone.
///
/// Automorphisms are determined by the images of a minimal generating set
/// g_1..g_r. Generators of Aut(G) are collected along the stabilizer chain
/// of (g_1, ..., g_r), deepest level first: at level i every image of g_i not
/// yet reached by the generators found so far gets one automorphism fixing
/// g_1..g_{i-1}, found by backtracking over the remaining images.
pub fn brute_force_orbits(spec: &GroupSpec, budget: u64) -> Result<u64> {
    let size = spec.order() as usize;
    if size > 1 << 10 {
        return Err(Error::Budget(size as u64));
    }
    let mut mul = vec![0u16; size * size];
    for a in 0..size as u32 {
        for b in 0..size as u32 {
            mul[a as usize * size + b as usize] = spec.pack(spec.multiply(spec.unpack(a), spec.unpack(b))) as u16;
        }
    }
    let idt = (0..size).find(|&e| (0..size).all(|x| mul[e * size + x] == x as u16)).expect("identity exists") as u16;
    let order: Vec<u8> = (0..size)
        .map(|x| {
            let mut k = 1u8;
            let mut y = x as u16;
            while y != idt {
                y = mul[y as usize * size + x];
                k += 1;
            }
            k
        })
        .collect();
    let closure = |seeds: &[u16]| -> Vec<bool> {
        let mut inside = vec![false; size];
        inside[idt as usize] = true;
        let mut list = vec![idt];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            i += 1;
            for &s in seeds {
                let z = mul[x as usize * size + s as usize];
                if !inside[z as usize] {
                    inside[z as usize] = true;
                    list.push(z);
                }
            }
        }
        inside
    };
    let squares: Vec<u16> = (0..size).map(|x| mul[x * size + x]).collect();
    // Burnside basis: greedily add elements outside ⟨Φ, chosen⟩
    let mut seeds = squares.clone();
    let mut gens = vec![];
    let mut inside = closure(&seeds);
    while let Some(x) = (0..size).find(|&x| !inside[x]) {
        gens.push(x as u16);
        seeds.push(x as u16);
        inside = closure(&seeds);
    }
    if gens.is_empty() {
        return Ok(1);
    }
    let mut o = Oracle { size, mul, order, gens: gens.clone(), img: vec![UNSET; size], pre: vec![UNSET; size], trail: vec![], nodes: 0, budget };
    let mut auts: Vec<Vec<u16>> = vec![];
    let r = gens.len();
    for level in (0..r).rev() {
        for c in 0..size as u16 {
            if orbit(&auts, gens[level], size)[c as usize] {
                continue;
            }
            o.undo(0);
            let mut ok = true;
            for (k, &g) in gens.iter().enumerate().take(level) {
                ok = ok && o.assign(k, g);
            }
            let found = ok && o.assign(level, c) && o.complete(level + 1)?;
            if found {
                auts.push(o.img.clone());
            }
        }
    }
    o.undo(0);
    let mut orbits = Orbits::new(spec.m + spec.n);
    for a in &auts {
        for x in 1..size as u32 {
            orbits.merge(x, a[x as usize] as u32);
        }
    }
    Ok(1 + orbits.count)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantProfile {
    pub order: u64,
    /// element order → count
    pub order_histogram: BTreeMap<u32, u64>,
    pub center: u64,
    pub derived: u64,
    pub commuting_pairs: u64,
    /// number of k-dimensional subspaces of G/Φ with abelian preimage,
    /// k = 0..=m; only when Φ = {0} × F_2^n and m ≤ 8
    pub isotropic_counts: Option<Vec<u64>>,
}

pub fn invariant_profile(spec: &GroupSpec) -> InvariantProfile {
    let mut order_histogram = BTreeMap::new();
    for g in spec.elements() {
        *order_histogram.entry(spec.element_order(g)).or_insert(0) += 1;
    }
    let elems: Vec<GroupElement> = spec.elements().collect();
    let mut commuting_pairs = 0;
    let mut center = 0;
    let mut derived = Echelon::default();
    for &g in &elems {
        let mut central = true;
        for &h in &elems {
            let c = spec.commutator(g, h);
            derived.insert(c.v);
            if c == spec.identity() {
                commuting_pairs += 1;
            } else {
                central = false;
            }
        }
        if central {
            center += 1;
        }
    }
    let s = spec.squaring();
    let isotropic_counts = (spec.m <= 8 && s.image_spans()).then(|| {
        (0..=spec.m)
            .map(|k| {
                linalg::subspaces(spec.m, k)
                    .iter()
                    .filter(|b| b.iter().all(|&x| b.iter().all(|&y| s.induced_form(x, y) == 0)))
                    .count() as u64
            })
            .collect()
    });
    InvariantProfile { order: spec.order(), order_histogram, center, derived: 1 << derived.dim(), commuting_pairs, isotropic_counts }
}
