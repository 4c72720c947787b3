//! Bit-packed linear algebra over F_2.
//!
//! Vectors are row vectors packed into integers (bit i = coordinate i).
//! A matrix is the list of its rows, so row i is the image of e_i and
//! `apply(rows, x)` computes x·M.

pub fn apply(rows: &[u32], x: u32) -> u32 {
    let mut r = 0;
    let mut x = x;
    let mut i = 0;
    while x != 0 {
        if x & 1 == 1 {
            r ^= rows[i];
        }
        x >>= 1;
        i += 1;
    }
    r
}

/// Rows of the product A·B (apply A first).
pub fn compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().map(|&r| apply(b, r)).collect()
}

pub fn identity(n: u32) -> Vec<u32> {
    (0..n).map(|i| 1 << i).collect()
}

pub fn rank(vectors: impl IntoIterator<Item = u32>) -> u32 {
    let mut e = Echelon::default();
    vectors.into_iter().filter(|&v| e.insert(v)).count() as u32
}

pub fn is_invertible(rows: &[u32]) -> bool {
    rank(rows.iter().copied()) == rows.len() as u32
}

pub fn inverse(rows: &[u32]) -> Option<Vec<u32>> {
    let n = rows.len();
    // augmented rows: low n bits = row, next n bits = identity
    let mut aug: Vec<u64> = rows.iter().enumerate().map(|(i, &r)| r as u64 | (1u64 << (n + i))).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| aug[r] >> col & 1 == 1)?;
        aug.swap(col, piv);
        for r in 0..n {
            if r != col && aug[r] >> col & 1 == 1 {
                aug[r] ^= aug[col];
            }
        }
    }
    // aug now reads [I | R] where R·rows = I, so R holds the inverse rows
    Some(aug.iter().map(|&a| (a >> n) as u32 & ((1u64 << n) - 1) as u32).collect())
}

/// Reduced basis indexed by leading bit.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    piv: [u32; 32],
    dim: u32,
}

impl Echelon {
    pub fn reduce(&self, mut x: u32) -> u32 {
        while x != 0 {
            let b = 31 - x.leading_zeros();
            if self.piv[b as usize] == 0 {
                return x;
            }
            x ^= self.piv[b as usize];
        }
        0
    }

    /// Adds x to the span; false when x was already in it.
    pub fn insert(&mut self, x: u32) -> bool {
        let r = self.reduce(x);
        if r == 0 {
            return false;
        }
        self.piv[(31 - r.leading_zeros()) as usize] = r;
        self.dim += 1;
        true
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn contains(&self, x: u32) -> bool {
        self.reduce(x) == 0
    }

    pub fn basis(&self) -> Vec<u32> {
        self.piv.iter().copied().filter(|&v| v != 0).collect()
    }
}

/// A linear map known on a subspace, stored as echelon pairs (a, L(a)).
#[derive(Clone, Debug, Default)]
pub struct PartialMap {
    piv: [(u32, u32); 32],
    images: Echelon,
    dim: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extend {
    Known,
    Added,
    Conflict,
}

impl PartialMap {
    fn reduce(&self, mut a: u32, mut b: u32) -> (u32, u32) {
        while a != 0 {
            let k = 31 - a.leading_zeros();
            let (pa, pb) = self.piv[k as usize];
            if pa == 0 {
                break;
            }
            a ^= pa;
            b ^= pb;
        }
        (a, b)
    }

    /// Records L(a) = b, keeping L injective.
    pub fn extend(&mut self, a: u32, b: u32) -> Extend {
        let (ra, rb) = self.reduce(a, b);
        if ra == 0 {
            return if rb == 0 { Extend::Known } else { Extend::Conflict };
        }
        if !self.images.insert(rb) {
            return Extend::Conflict;
        }
        self.piv[(31 - ra.leading_zeros()) as usize] = (ra, rb);
        self.dim += 1;
        Extend::Added
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// L(a) if a lies in the domain.
    pub fn eval(&self, a: u32) -> Option<u32> {
        let (ra, rb) = self.reduce(a, 0);
        (ra == 0).then_some(rb)
    }

    /// Extends to an invertible map of F_2^n and returns its rows.
    pub fn complete(&self, n: u32) -> Vec<u32> {
        let mut m = self.clone();
        let mut free = Echelon::default();
        for v in self.images.basis() {
            free.insert(v);
        }
        let mut spare = (0..n).map(|i| 1u32 << i).filter(|&v| free.insert(v));
        for i in 0..n {
            if m.eval(1 << i).is_none() {
                let b = spare.next().expect("dimensions agree");
                m.extend(1 << i, b);
            }
        }
        (0..n).map(|i| m.eval(1 << i).unwrap()).collect()
    }
}

/// All k-dimensional subspaces of F_2^n, each as a basis in reduced row echelon form.
pub fn subspaces(n: u32, k: u32) -> Vec<Vec<u32>> {
    let mut out = vec![];
    if k > n {
        return out;
    }
    let mut pivots = vec![];
    choose(n, k, 0, &mut pivots, &mut out);
    out
}

fn choose(n: u32, k: u32, start: u32, pivots: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if pivots.len() as u32 == k {
        fill(n, pivots, out);
        return;
    }
    for p in start..n {
        pivots.push(p);
        choose(n, k, p + 1, pivots, out);
        pivots.pop();
    }
}

// Row r has its leading bit at pivots[r] (highest set bit) and may have free
// entries below it at non-pivot positions.
fn fill(n: u32, pivots: &[u32], out: &mut Vec<Vec<u32>>) {
    let _ = n;
    let pivot_mask: u32 = pivots.iter().map(|&p| 1 << p).sum();
    let free: Vec<Vec<u32>> = pivots
        .iter()
        .map(|&p| (0..p).filter(|&b| pivot_mask >> b & 1 == 0).collect())
        .collect();
    let total: u32 = free.iter().map(|f| f.len() as u32).sum();
    for bits in 0u64..(1u64 << total) {
        let mut shift = 0;
        let rows = pivots
            .iter()
            .zip(&free)
            .map(|(&p, f)| {
                let mut r = 1 << p;
                for (j, &b) in f.iter().enumerate() {
                    if bits >> (shift + j) & 1 == 1 {
                        r |= 1 << b;
                    }
                }
                shift += f.len();
                r
            })
            .collect();
        out.push(rows);
    }
}

/// Number of k-dimensional subspaces of F_2^n.
pub fn gaussian_binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num *= (1u64 << (n - i)) - 1;
        den *= (1u64 << (i + 1)) - 1;
    }
    num / den
}
