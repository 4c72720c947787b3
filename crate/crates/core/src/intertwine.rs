//! Backtracking search for pairs (T, L) of invertible matrices with
//! b(x·T) = a(x)·L for all x, where a and b are tables F_2^m → F_2^n.
//!
//! T is built one basis image at a time. Every new point of the span adds a
//! pair (a(x), b(xT)) to a partial linear map, so conflicts prune early.

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Extend, PartialMap};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Intertwiner {
    /// rows of T (images of the basis of F_2^m)
    pub t: Vec<u32>,
    /// rows of L
    pub l: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    First,
    All,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub found: Vec<Intertwiner>,
    pub nodes: u64,
    /// false when the budget ran out before the search space was exhausted
    pub complete: bool,
}

/// Per-point invariant preserved by every intertwiner: whether the value is
/// zero, and the dimension of the span of the polar form at x.
fn signatures(table: &[u32]) -> Vec<(bool, u32)> {
    let size = table.len();
    (0..size)
        .map(|x| {
            let mut e = Echelon::default();
            for y in 0..size {
                e.insert(table[x ^ y] ^ table[x] ^ table[y]);
            }
            (table[x] == 0, e.dim())
        })
        .collect()
}

struct Search<'a> {
    m: u32,
    n: u32,
    a: &'a [u32],
    b: &'a [u32],
    sig_a: Vec<(bool, u32)>,
    sig_b: Vec<(bool, u32)>,
    img: Vec<u32>,
    used: Vec<bool>,
    t: Vec<u32>,
    prefix: &'a [u32],
    budget: u64,
    nodes: u64,
    visit: &'a mut dyn FnMut(Intertwiner) -> bool,
    stopped: bool,
    exhausted: bool,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.exhausted || self.stopped
    }

    fn level(&mut self, k: u32, map: &PartialMap) {
        if k == self.m {
            self.stopped = !(self.visit)(Intertwiner { t: self.t.clone(), l: map.complete(self.n) });
            return;
        }
        let half = 1usize << k;
        let want = self.sig_a[half];
        let cands = match self.prefix.get(k as usize) {
            Some(&c) => c..c + 1,
            None => 0..1u32 << self.m,
        };
        for cand in cands {
            if self.done() {
                return;
            }
            if self.used[cand as usize] || self.sig_b[cand as usize] != want {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.exhausted = true;
                return;
            }
            let mut next = map.clone();
            let mut ok = true;
            for y in 0..half {
                let x = half + y;
                let v = self.img[y] ^ cand;
                self.img[x] = v;
                if self.sig_b[v as usize] != self.sig_a[x] || next.extend(self.a[x], self.b[v as usize]) == Extend::Conflict {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            for x in half..2 * half {
                self.used[self.img[x] as usize] = true;
            }
            self.t.push(cand);
            self.level(k + 1, &next);
            self.t.pop();
            for x in half..2 * half {
                self.used[self.img[x] as usize] = false;
            }
        }
    }
}

/// Finds invertible T and L with b(xT) = a(x)L. With `Mode::All` every T is
/// reported once; L is unique when the image of `a` spans F_2^n and is
/// otherwise completed arbitrarily.
pub fn search(a: &[u32], b: &[u32], m: u32, n: u32, mode: Mode, budget: u64) -> Result<Outcome> {
    let mut found = vec![];
    let (nodes, complete) = search_each(a, b, m, n, &[], budget, |w| {
        found.push(w);
        mode == Mode::All
    })?;
    Ok(Outcome { found, nodes, complete })
}

/// As `search`, restricted to T whose first rows are `prefix`, handing each
/// solution to `visit`, which returns false to stop. Returns the node count
/// and whether the budget sufficed.
pub fn search_each(a: &[u32], b: &[u32], m: u32, n: u32, prefix: &[u32], budget: u64, mut visit: impl FnMut(Intertwiner) -> bool) -> Result<(u64, bool)> {
    let size = 1usize << m;
    if a.len() != size || b.len() != size || m > 16 || n > 31 || prefix.len() > m as usize || prefix.iter().any(|&c| c as usize >= size) {
        return Err(Error::Precondition("tables must have 2^m entries".into()));
    }
    if a[0] != 0 || b[0] != 0 {
        return Ok((0, true));
    }
    let mut used = vec![false; size];
    used[0] = true;
    let mut s = Search {
        m,
        n,
        a,
        b,
        sig_a: signatures(a),
        sig_b: signatures(b),
        img: vec![0; size],
        used,
        t: vec![],
        prefix,
        budget,
        nodes: 0,
        visit: &mut visit,
        stopped: false,
        exhausted: false,
    };
    let mut root = PartialMap::default();
    root.extend(0, 0);
    s.level(0, &root);
    Ok((s.nodes, !s.exhausted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{apply, identity, inverse, is_invertible};

    fn cube_f8() -> Vec<u32> {
        let f = crate::field::FieldSpec::binary(3).unwrap();
        (0..8).map(|x| f.pow(x, 3)).collect()
    }

    #[test]
    fn finds_identity_for_equal_tables() {
        let a = cube_f8();
        let out = search(&a, &a, 3, 3, Mode::First, 1 << 20).unwrap();
        assert_eq!(out.found[0].t, identity(3));
        assert_eq!(out.found[0].l, identity(3));
    }

    #[test]
    fn all_mode_gl_sizes() {
        // zero map: every T works
        let zero = vec![0u32; 8];
        let out = search(&zero, &zero, 3, 0, Mode::All, 1 << 20).unwrap();
        assert_eq!(out.found.len(), 168);
        // x ↦ x: T = L
        let idt: Vec<u32> = (0..8).collect();
        let out = search(&idt, &idt, 3, 3, Mode::All, 1 << 20).unwrap();
        assert_eq!(out.found.len(), 168);
        assert!(out.found.iter().all(|w| w.t == w.l));
    }

    #[test]
    fn planted_witness_recovered() {
        let a = cube_f8();
        let t = vec![3u32, 6, 4];
        let u = vec![1u32, 3, 7];
        assert!(is_invertible(&t) && is_invertible(&u));
        let ui = inverse(&u).unwrap();
        // c(x) = a(xT)U^{-1}
        let c: Vec<u32> = (0..8).map(|x| apply(&ui, a[apply(&t, x) as usize])).collect();
        let out = search(&c, &a, 3, 3, Mode::First, 1 << 20).unwrap();
        let w = &out.found[0];
        for x in 0..8u32 {
            assert_eq!(a[apply(&w.t, x) as usize], apply(&w.l, c[x as usize]));
        }
    }

    #[test]
    fn budget_is_reported() {
        let zero = vec![0u32; 16];
        let out = search(&zero, &zero, 4, 0, Mode::All, 10).unwrap();
        assert!(!out.complete);
    }
}
