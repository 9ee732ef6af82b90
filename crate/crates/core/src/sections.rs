//! Level-one decomposition `w ↦ (w|₀, w|₁)` and its iterates.
//!
//! A `K`-letter `k` at a level labelled by symbol `s` decomposes as
//! `k = (π₀(k, s), k)`: the first coordinate is `a` or trivial, the second is
//! the same letter over the shifted oracle. `π₀` is the GF(2) functional
//! `f_s` applied to the bits of `k`:
//!
//! | symbol | functional        |
//! |--------|-------------------|
//! | 0      | `β_b + β_c + β_x` |
//! | 1      | `β_b + β_x`       |
//! | 2      | `β_c + β_x`       |

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::{Oracle, Symbol};
use crate::words::{KElement, Letter, ReducedWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

pub fn a_parity(w: &ReducedWord) -> Parity {
    if w.a_count().is_multiple_of(2) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// Label of a generator's portrait at one vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FirstLevelAction {
    /// `I`
    Trivial,
    /// `P`, i.e. the letter `a`
    Swap,
}

impl FirstLevelAction {
    pub fn as_letter(self) -> Option<Letter> {
        match self {
            FirstLevelAction::Trivial => None,
            FirstLevelAction::Swap => Some(Letter::A),
        }
    }

    pub fn compose(self, other: FirstLevelAction) -> FirstLevelAction {
        if self == other {
            FirstLevelAction::Trivial
        } else {
            FirstLevelAction::Swap
        }
    }
}

const FUNCTIONAL_MASK: [u8; 3] = [0b111, 0b101, 0b110];

pub(crate) fn swaps(k: KElement, s: Symbol) -> bool {
    (k.bits() & FUNCTIONAL_MASK[s.index()]).count_ones() % 2 == 1
}

pub fn pi0(k: KElement, s: Symbol) -> FirstLevelAction {
    if swaps(k, s) {
        FirstLevelAction::Swap
    } else {
        FirstLevelAction::Trivial
    }
}

/// Splits a first-level stabilizer word at a level labelled `s`.
pub fn split_at_symbol(w: &ReducedWord, s: Symbol) -> Result<(ReducedWord, ReducedWord)> {
    let mut left = Vec::with_capacity(w.len());
    let mut right = Vec::with_capacity(w.len());
    let mut odd = false;
    for &l in w.letters() {
        match l {
            Letter::A => odd = !odd,
            Letter::K(k) => {
                let (own, other) = if odd {
                    (&mut left, &mut right)
                } else {
                    (&mut right, &mut left)
                };
                own.push(l);
                if swaps(k, s) {
                    other.push(Letter::A);
                }
            }
        }
    }
    if odd {
        return Err(Error::OddParity(w.to_string()));
    }
    Ok((ReducedWord::reduce(left), ReducedWord::reduce(right)))
}

/// `ψ(w) = (w|₀, w|₁)`, both read over `σω`.
pub fn split(w: &ReducedWord, o: &Oracle) -> Result<(ReducedWord, ReducedWord)> {
    split_at_symbol(w, o.head())
}

/// Binary strings name tree vertices; `i₁` is the most significant bit.
pub fn vertex_label(index: usize, depth: usize) -> String {
    (0..depth)
        .map(|i| {
            if (index >> (depth - 1 - i)) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

pub fn vertex_index(label: &str) -> Option<usize> {
    label.chars().try_fold(0usize, |acc, c| match c {
        '0' => Some(acc << 1),
        '1' => Some((acc << 1) | 1),
        _ => None,
    })
}

/// Sections of a word down to a fixed depth. `levels[l]` holds the `2ˡ`
/// sections at depth `l`, indexed by vertex number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionTree {
    oracle: Oracle,
    levels: Vec<Vec<ReducedWord>>,
}

impl SectionTree {
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn oracle(&self) -> &Oracle {
        &self.oracle
    }

    pub fn level(&self, l: usize) -> &[ReducedWord] {
        &self.levels[l]
    }

    pub fn leaves(&self) -> &[ReducedWord] {
        self.levels.last().unwrap()
    }

    pub fn section(&self, path: &str) -> Option<&ReducedWord> {
        let idx = vertex_index(path)?;
        self.levels.get(path.len())?.get(idx)
    }

    pub fn max_leaf_len(&self) -> usize {
        self.leaves()
            .iter()
            .map(ReducedWord::len)
            .max()
            .unwrap_or(0)
    }

    /// Leaves keyed by vertex label.
    pub fn leaf_map(&self) -> BTreeMap<String, String> {
        let d = self.depth();
        self.leaves()
            .iter()
            .enumerate()
            .map(|(i, w)| (vertex_label(i, d), w.to_string()))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let levels: Vec<BTreeMap<String, String>> = self
            .levels
            .iter()
            .enumerate()
            .map(|(d, ws)| {
                ws.iter()
                    .enumerate()
                    .map(|(i, w)| (vertex_label(i, d), w.to_string()))
                    .collect()
            })
            .collect();
        serde_json::json!({
            "depth": self.depth(),
            "oracle": self.oracle.to_string(),
            "sections": self.leaf_map(),
            "levels": levels,
        })
    }

    /// Graphviz rendering; node ids are `v` followed by the vertex label.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph sections {\n  node [shape=box];\n");
        for (d, ws) in self.levels.iter().enumerate() {
            for (i, w) in ws.iter().enumerate() {
                let label = vertex_label(i, d);
                let text = if w.is_empty() {
                    "1".to_string()
                } else {
                    w.to_string()
                };
                let _ = writeln!(out, "  \"v{label}\" [label=\"{text}\"];");
                if d > 0 {
                    let parent = vertex_label(i >> 1, d - 1);
                    let _ = writeln!(
                        out,
                        "  \"v{parent}\" -> \"v{label}\" [label=\"{}\"];",
                        i & 1
                    );
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    Tree(SectionTree),
    /// The section at `vertex` (a node at depth `level`) has odd a-parity.
    NotInStabilizer {
        level: usize,
        vertex: String,
    },
}

impl Decomposition {
    pub fn tree(&self) -> Option<&SectionTree> {
        match self {
            Decomposition::Tree(t) => Some(t),
            Decomposition::NotInStabilizer { .. } => None,
        }
    }
}

pub fn decompose(w: &ReducedWord, o: &Oracle, depth: usize) -> Decomposition {
    let mut levels = vec![vec![w.clone()]];
    let mut oracle = o.clone();
    for level in 0..depth {
        let s = oracle.head();
        let current = levels.last().unwrap();
        let mut next = Vec::with_capacity(current.len() * 2);
        for (i, sec) in current.iter().enumerate() {
            match split_at_symbol(sec, s) {
                Ok((l, r)) => {
                    next.push(l);
                    next.push(r);
                }
                Err(_) => {
                    return Decomposition::NotInStabilizer {
                        level,
                        vertex: vertex_label(i, level),
                    }
                }
            }
        }
        levels.push(next);
        oracle = oracle.shift();
    }
    Decomposition::Tree(SectionTree {
        oracle: o.clone(),
        levels,
    })
}

/// `⌈log₂ n⌉` with `ceil_log2(0) = ceil_log2(1) = 0`.
pub fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// Smallest depth at which the length bound forces every section to
/// length at most one.
pub fn nucleus_depth(w: &ReducedWord) -> usize {
    ceil_log2(w.len().max(1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nucleus {
    depth: usize,
    entries: Vec<Option<Letter>>,
}

impl Nucleus {
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn entries(&self) -> &[Option<Letter>] {
        &self.entries
    }

    pub fn entry(&self, path: &str) -> Option<Option<Letter>> {
        if path.len() != self.depth {
            return None;
        }
        vertex_index(path).and_then(|i| self.entries.get(i).copied())
    }

    pub fn is_all_empty(&self) -> bool {
        self.entries.iter().all(Option::is_none)
    }

    pub fn nonempty(&self) -> impl Iterator<Item = (String, Letter)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.map(|l| (vertex_label(i, self.depth), l)))
    }

    pub fn count_of(&self, entry: Option<Letter>) -> usize {
        self.entries.iter().filter(|&&e| e == entry).count()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let map: BTreeMap<String, String> = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, e)| {
                (
                    vertex_label(i, self.depth),
                    e.map(|l| l.to_string()).unwrap_or_default(),
                )
            })
            .collect();
        serde_json::json!({ "depth": self.depth, "entries": map })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NucleusOutcome {
    Nucleus(Nucleus),
    NotInStabilizer { level: usize, vertex: String },
}

impl NucleusOutcome {
    pub fn nucleus(&self) -> Option<&Nucleus> {
        match self {
            NucleusOutcome::Nucleus(n) => Some(n),
            NucleusOutcome::NotInStabilizer { .. } => None,
        }
    }
}

pub fn nucleus_at(w: &ReducedWord, o: &Oracle, depth: usize) -> Result<NucleusOutcome> {
    let required = nucleus_depth(w);
    if depth < required {
        return Err(Error::DepthTooSmall {
            depth,
            len: w.len(),
            required,
        });
    }
    Ok(match decompose(w, o, depth) {
        Decomposition::Tree(t) => {
            let entries = t
                .leaves()
                .iter()
                .map(|s| {
                    debug_assert!(s.len() <= 1, "length bound violated");
                    s.letters().first().copied()
                })
                .collect();
            NucleusOutcome::Nucleus(Nucleus { depth, entries })
        }
        Decomposition::NotInStabilizer { level, vertex } => {
            NucleusOutcome::NotInStabilizer { level, vertex }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    fn w(s: &str) -> ReducedWord {
        parse_word(s).unwrap()
    }

    fn o(s: &str) -> Oracle {
        s.parse().unwrap()
    }

    #[test]
    fn a_parity_examples() {
        assert_eq!(a_parity(&w("aba")), Parity::Even);
        assert_eq!(a_parity(&w("ab")), Parity::Odd);
        assert_eq!(a_parity(&w("")), Parity::Even);
    }

    /// Portrait tables for b, c, d read directly: the symbols at which each
    /// generator carries `P`. x is `P` everywhere and tilded = x · untilded.
    fn tabulated(k: KElement, s: Symbol) -> bool {
        let swap_set: &[usize] = match k {
            KElement::B => &[0, 1],
            KElement::C => &[0, 2],
            KElement::D => &[1, 2],
            KElement::X => &[0, 1, 2],
            _ => unreachable!(),
        };
        swap_set.contains(&s.index())
    }

    #[test]
    fn pi0_functionals_match_portrait_tables() {
        for s in Symbol::ALL {
            for k in [KElement::B, KElement::C, KElement::D, KElement::X] {
                assert_eq!(swaps(k, s), tabulated(k, s), "{k:?} at {s}");
            }
            for (t, base) in [
                (KElement::BT, KElement::B),
                (KElement::CT, KElement::C),
                (KElement::DT, KElement::D),
            ] {
                assert_eq!(swaps(t, s), tabulated(base, s) != tabulated(KElement::X, s));
            }
        }
    }

    #[test]
    fn pi0_examples() {
        assert_eq!(pi0(KElement::B, Symbol::Zero), FirstLevelAction::Swap);
        assert_eq!(pi0(KElement::D, Symbol::Zero), FirstLevelAction::Trivial);
        assert_eq!(pi0(KElement::BT, Symbol::Zero), FirstLevelAction::Trivial);
    }

    #[test]
    fn pi0_is_linear() {
        for s in Symbol::ALL {
            for k1 in KElement::NONTRIVIAL {
                for k2 in KElement::NONTRIVIAL {
                    let prod = k1.mul(k2);
                    let expected = pi0(k1, s).compose(pi0(k2, s));
                    let got = if prod.is_identity() {
                        FirstLevelAction::Trivial
                    } else {
                        pi0(prod, s)
                    };
                    assert_eq!(got, expected);
                }
            }
        }
    }

    #[test]
    fn split_examples() {
        assert_eq!(split(&w("b"), &o("(0)")).unwrap(), (w("a"), w("b")));
        assert_eq!(split(&w("aba"), &o("(0)")).unwrap(), (w("b"), w("a")));
        assert_eq!(split(&w("Baba"), &o("(1)")).unwrap(), (w("b"), w("Ba")));
        assert!(matches!(
            split(&w("ab"), &o("(0)")),
            Err(Error::OddParity(_))
        ));
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(
            decompose(&w("a"), &o("(012)"), 1),
            Decomposition::NotInStabilizer {
                level: 0,
                vertex: String::new()
            }
        );
        let t = decompose(&w(""), &o("(01)"), 3);
        let t = t.tree().unwrap();
        assert_eq!(t.leaves().len(), 8);
        assert!(t.leaves().iter().all(ReducedWord::is_empty));
    }

    #[test]
    fn decompose_witness_cascade() {
        // (b̃aba)⁴ over 121(0), traced by hand level by level:
        //   level 1 (symbol 1): (ε, (b̃a)⁴)
        //   level 2 (symbol 2): right half (ab̃)², (b̃a)²
        //   level 3 (symbol 1): right half b̃ at all four vertices
        //   level 4 (symbol 0): b̃ = (ε, b̃)
        let word = w("BabaBabaBabaBaba");
        let t = decompose(&word, &o("121(0)"), 4);
        let t = t.tree().unwrap();
        assert_eq!(t.section("0").unwrap(), &w(""));
        assert_eq!(t.section("1").unwrap(), &w("BaBaBaBa"));
        assert_eq!(t.section("10").unwrap(), &w("aBaB"));
        assert_eq!(t.section("11").unwrap(), &w("BaBa"));
        for v in ["100", "101", "110", "111"] {
            assert_eq!(t.section(v).unwrap(), &w("B"), "vertex {v}");
        }
        let leaves = t.leaf_map();
        let bt: Vec<_> = leaves
            .iter()
            .filter(|(_, s)| *s == "B")
            .map(|(k, _)| k.as_str())
            .collect();
        assert_eq!(bt, ["1001", "1011", "1101", "1111"]);
        assert_eq!(leaves.values().filter(|s| s.is_empty()).count(), 12);
    }

    #[test]
    fn nucleus_examples() {
        let n = nucleus_at(&w("B"), &o("(0)"), 1).unwrap();
        let n = n.nucleus().unwrap();
        assert_eq!(n.entry("0"), Some(None));
        assert_eq!(n.entry("1"), Some(Some(Letter::K(KElement::BT))));

        let n = nucleus_at(&w(""), &o("(2)"), 0).unwrap();
        assert_eq!(n.nucleus().unwrap().entries(), &[None]);

        let n = nucleus_at(&w("d"), &o("(0)"), 2).unwrap();
        let n = n.nucleus().unwrap();
        assert_eq!(
            n.entries(),
            &[None, None, None, Some(Letter::K(KElement::D))]
        );
    }

    #[test]
    fn nucleus_rejects_shallow_depth() {
        assert_eq!(
            nucleus_at(&w("abab"), &o("(0)"), 1),
            Err(Error::DepthTooSmall {
                depth: 1,
                len: 4,
                required: 2
            })
        );
    }

    #[test]
    fn ceil_log2_values() {
        let expected = [0, 0, 1, 2, 2, 3, 3, 3, 3, 4];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(ceil_log2(n), *e, "n = {n}");
        }
        assert_eq!(ceil_log2(16), 4);
        assert_eq!(ceil_log2(17), 5);
    }

    #[test]
    fn vertex_labels_round_trip() {
        for d in 0..5 {
            for i in 0..(1usize << d) {
                assert_eq!(vertex_index(&vertex_label(i, d)), Some(i));
            }
        }
    }
}
