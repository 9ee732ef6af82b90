//! Cayley balls and the metric on the space of 8-marked groups.
//!
//! Two marked groups have identical balls of radius `n` iff their identity
//! predicates agree on every word of length at most `2n`: vertices `u, v`
//! of the ball are joined or identified in one group iff `u v⁻¹` (length at
//! most `2n`) is trivial there. All comparisons here use that criterion.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::action::level_permutation;
use crate::error::{Error, Result};
use crate::wordproblem::{GroupSpec, MarkedGroup};
use crate::words::{normal_form_count, words_up_to, Letter, ReducedWord};

/// Tree level whose permutation is used to bucket ball elements before
/// calling the decider. Equal elements always share it: the modified groups
/// surject onto the overgroup, which acts faithfully on the tree.
const SIGNATURE_LEVEL: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    /// Maximum number of ball elements.
    pub max_elements: usize,
    /// Maximum number of words examined by word searches.
    pub max_words: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: 200_000,
            max_words: 5_000_000,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Ball {
    pub spec: GroupSpec,
    pub radius: usize,
    /// Shortlex-least representative of each element, in BFS order.
    pub representatives: Vec<ReducedWord>,
    /// `sizes[r] = |B(r)|`.
    pub sizes: Vec<usize>,
    /// True when the element cap stopped the enumeration early.
    pub partial: bool,
}

impl Ball {
    pub fn size(&self) -> usize {
        self.representatives.len()
    }

    /// Index of the representative equal to `w`, if `w` lies in the ball.
    pub fn locate(&self, group: &MarkedGroup, w: &ReducedWord) -> Option<usize> {
        let index = SignatureIndex::build(group, &self.representatives);
        index.find(group, &self.representatives, w)
    }

    /// Labeled Cayley ball in Graphviz format. Vertices are the
    /// representatives, an edge `u → v` labeled `i` means `u · sᵢ = v`.
    pub fn to_dot(&self, group: &MarkedGroup) -> String {
        let index = SignatureIndex::build(group, &self.representatives);
        let mut out = String::from("digraph ball {\n");
        let _ = writeln!(out, "  label=\"{} radius {}\";", self.spec, self.radius);
        for (i, w) in self.representatives.iter().enumerate() {
            let name = if w.is_empty() {
                "1".to_string()
            } else {
                w.to_string()
            };
            let _ = writeln!(out, "  n{i} [label=\"{name}\"];");
        }
        for (i, w) in self.representatives.iter().enumerate() {
            for (g, &l) in Letter::ALL.iter().enumerate() {
                if let Some(j) = index.find(group, &self.representatives, &w.push(l)) {
                    let _ = writeln!(out, "  n{i} -> n{j} [label=\"{g}\"];");
                }
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn growth_csv(&self) -> String {
        let mut out = String::from("r,size\n");
        for (r, s) in self.sizes.iter().enumerate() {
            let _ = writeln!(out, "{r},{s}");
        }
        out
    }
}

struct SignatureIndex {
    buckets: HashMap<Vec<u32>, Vec<usize>>,
}

impl SignatureIndex {
    fn build(group: &MarkedGroup, reps: &[ReducedWord]) -> Self {
        let mut idx = SignatureIndex {
            buckets: HashMap::new(),
        };
        for (i, w) in reps.iter().enumerate() {
            idx.buckets.entry(signature(group, w)).or_default().push(i);
        }
        idx
    }

    fn find(&self, group: &MarkedGroup, reps: &[ReducedWord], w: &ReducedWord) -> Option<usize> {
        self.find_with(group, reps, w, &signature(group, w))
    }

    fn find_with(
        &self,
        group: &MarkedGroup,
        reps: &[ReducedWord],
        w: &ReducedWord,
        sig: &[u32],
    ) -> Option<usize> {
        self.buckets
            .get(sig)?
            .iter()
            .copied()
            .find(|&i| group.equal(w, &reps[i]))
    }
}

fn signature(group: &MarkedGroup, w: &ReducedWord) -> Vec<u32> {
    level_permutation(w, group.spec().oracle(), SIGNATURE_LEVEL)
}

/// Breadth-first enumeration of the ball of radius `radius`.
///
/// Shortlex-least geodesics are prefix closed, so every new element at
/// distance `r` has a representative `u · s` with `u` a representative at
/// distance `r - 1`. Candidates of each layer are sorted before
/// deduplication, which makes the first representative found for an element
/// its shortlex-least one.
pub fn ball(group: &MarkedGroup, radius: usize, limits: Limits) -> Ball {
    let mut reps = vec![ReducedWord::empty()];
    let mut index = SignatureIndex {
        buckets: HashMap::new(),
    };
    index.buckets.insert(signature(group, &reps[0]), vec![0]);
    let mut sizes = vec![1];
    let mut layer_start = 0;
    let mut partial = false;

    'layers: for r in 1..=radius {
        let mut candidates: Vec<ReducedWord> = reps[layer_start..]
            .iter()
            .flat_map(|u| Letter::ALL.iter().map(move |&l| u.push(l)))
            .filter(|w| w.len() == r)
            .collect();
        candidates.sort();
        candidates.dedup();
        let next_start = reps.len();
        for w in candidates {
            let sig = signature(group, &w);
            if index.find_with(group, &reps, &w, &sig).is_some() {
                continue;
            }
            if reps.len() >= limits.max_elements {
                partial = true;
                sizes.push(reps.len());
                break 'layers;
            }
            index.buckets.entry(sig).or_default().push(reps.len());
            reps.push(w);
        }
        sizes.push(reps.len());
        layer_start = next_start;
    }

    Ball {
        spec: group.spec().clone(),
        radius,
        representatives: reps,
        sizes,
        partial,
    }
}

/// `[|B(0)|, …, |B(r_max)|]` together with the partial flag.
pub fn growth_values(group: &MarkedGroup, r_max: usize, limits: Limits) -> (Vec<usize>, bool) {
    let b = ball(group, r_max, limits);
    (b.sizes, b.partial)
}

/// Number of free-product normal forms of length at most `r`: the size the
/// ball would have if the group had no relations up to length `2r`.
pub fn free_ball_size(r: usize) -> u64 {
    (0..=r).map(normal_form_count).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallComparison {
    pub equal: bool,
    /// Shortest, then lexicographically least, word with differing verdicts.
    pub witness: Option<ReducedWord>,
}

pub fn balls_equal(g1: &MarkedGroup, g2: &MarkedGroup, n: usize) -> BallComparison {
    let witness = words_up_to(2 * n).find(|w| g1.is_identity(w) != g2.is_identity(w));
    BallComparison {
        equal: witness.is_none(),
        witness,
    }
}

/// Shortest (then lexicographically least) word on which the two
/// identity predicates disagree.
pub fn find_distinguishing_word(
    g1: &MarkedGroup,
    g2: &MarkedGroup,
    max_len: usize,
    max_words: u64,
) -> Result<Option<ReducedWord>> {
    for (examined, w) in words_up_to(max_len).enumerate() {
        if examined as u64 >= max_words {
            return Err(Error::ResourceCap(format!(
                "examined {max_words} words without separating {} and {}",
                g1.spec(),
                g2.spec()
            )));
        }
        if g1.is_identity(&w) != g2.is_identity(&w) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MetricResult {
    /// Balls agree up to radius `n` and differ at `n + 1`.
    Exact {
        n: usize,
        distance: f64,
        witness: ReducedWord,
    },
    /// Balls agree up to the exploration cap.
    UpperBound { radius: usize, distance: f64 },
}

impl MetricResult {
    pub fn distance(&self) -> f64 {
        match *self {
            MetricResult::Exact { distance, .. } | MetricResult::UpperBound { distance, .. } => {
                distance
            }
        }
    }
}

/// `d = 2⁻ⁿ` with `n` the largest radius of identical balls, explored up to
/// radius `cap`.
///
/// Scanning radii `0, 1, …` with [`balls_equal`] is the same as scanning
/// words in shortlex order: the first failing radius is `⌈L/2⌉` for the
/// shortest disagreement of length `L`.
pub fn metric(g1: &MarkedGroup, g2: &MarkedGroup, cap: usize) -> MetricResult {
    match words_up_to(2 * cap).find(|w| g1.is_identity(w) != g2.is_identity(w)) {
        Some(witness) => {
            let n = witness.len().div_ceil(2) - 1;
            MetricResult::Exact {
                n,
                distance: 0.5f64.powi(n as i32),
                witness,
            }
        }
        None => MetricResult::UpperBound {
            radius: cap,
            distance: 0.5f64.powi(cap as i32),
        },
    }
}
