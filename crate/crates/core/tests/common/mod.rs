use proptest::prelude::*;

/// Invertible k×k matrices over F_2 (rows as bit vectors), built from the
/// identity by random row additions and swaps.
pub fn invertible(k: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec((0..k as usize, 0..k as usize, any::<bool>()), 0..4 * k as usize).prop_map(move |ops| {
        let mut rows: Vec<u32> = (0..k).map(|i| 1 << i).collect();
        for (i, j, swap) in ops {
            if swap {
                rows.swap(i, j);
            } else if i != j {
                rows[i] ^= rows[j];
            }
        }
        rows
    })
}
