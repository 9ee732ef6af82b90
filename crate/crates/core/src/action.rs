//! Action of words on a finite level of the binary tree.
//!
//! Vertices of level `L` are `L`-bit integers with the first letter of the
//! path as the most significant bit. A `K`-letter carries its portrait label
//! at the vertices `1^{m-1}0`; when that label is `P` it flips the bit after
//! position `m`.

use crate::oracle::Oracle;
use crate::sections::swaps;
use crate::words::{Letter, ReducedWord};

/// Image of `vertex` under a single generator.
pub fn act_letter(l: Letter, o: &Oracle, level: usize, vertex: u32) -> u32 {
    if level == 0 {
        return vertex;
    }
    match l {
        Letter::A => vertex ^ (1 << (level - 1)),
        Letter::K(k) => {
            // m = 1-based position of the first 0 bit
            for m in 1..level {
                let bit = (vertex >> (level - m)) & 1;
                if bit == 0 {
                    if swaps(k, o.at(m - 1)) {
                        return vertex ^ (1 << (level - m - 1));
                    }
                    return vertex;
                }
            }
            vertex
        }
    }
}

/// The permutation induced by `w` on level `level`, letters applied right
/// to left.
pub fn level_permutation(w: &ReducedWord, o: &Oracle, level: usize) -> Vec<u32> {
    (0..1u32 << level)
        .map(|v| {
            w.letters()
                .iter()
                .rev()
                .fold(v, |acc, &l| act_letter(l, o, level, acc))
        })
        .collect()
}

pub fn acts_trivially(w: &ReducedWord, o: &Oracle, level: usize) -> bool {
    level_permutation(w, o, level)
        .iter()
        .enumerate()
        .all(|(i, &v)| v == i as u32)
}
