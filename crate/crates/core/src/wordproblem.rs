//! Identity deciders for the exact overgroup and the modified groups defined
//! by the nucleus algorithms α and β_ij.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::{LastOccurrence, Oracle, Symbol};
use crate::sections::{decompose, nucleus_depth, split_at_symbol, swaps, Decomposition};
use crate::words::{KElement, Letter, ReducedWord};

/// Unordered pair `{i, j}` of symbols used by β_ij.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BetaPair {
    i: Symbol,
    j: Symbol,
}

impl BetaPair {
    pub fn new(i: Symbol, j: Symbol) -> Result<BetaPair> {
        if i == j {
            return Err(Error::InvalidSpec {
                spec: format!("beta-{i}{j}"),
                reason: "beta needs two distinct symbols".into(),
            });
        }
        // stored in the cyclic order of the name, so {1,0} and {0,1} coincide
        let (i, j) = if j.index() == (i.index() + 1) % 3 {
            (i, j)
        } else {
            (j, i)
        };
        Ok(BetaPair { i, j })
    }

    pub fn symbols(self) -> (Symbol, Symbol) {
        (self.i, self.j)
    }

    /// The symbol that must occur only finitely often.
    pub fn excluded(self) -> Symbol {
        self.i.third(self.j).unwrap()
    }

    /// `e_ij`: `e₀₁ = b̃`, `e₁₂ = d̃`, `e₂₀ = c̃`.
    pub fn tolerated(self) -> KElement {
        match self.excluded() {
            Symbol::Two => KElement::BT,
            Symbol::Zero => KElement::DT,
            Symbol::One => KElement::CT,
        }
    }

    /// Canonical name `01`, `12` or `20`.
    pub fn name(self) -> &'static str {
        match self.excluded() {
            Symbol::Two => "01",
            Symbol::Zero => "12",
            Symbol::One => "20",
        }
    }
}

impl PartialOrd for BetaPair {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BetaPair {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.name().cmp(other.name())
    }
}

impl Serialize for BetaPair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DeciderFamily {
    Exact,
    Alpha,
    Beta(BetaPair),
}

impl fmt::Display for DeciderFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeciderFamily::Exact => write!(f, "exact"),
            DeciderFamily::Alpha => write!(f, "alpha"),
            DeciderFamily::Beta(p) => write!(f, "beta-{}", p.name()),
        }
    }
}

/// One point of the space of 8-marked groups: a decider family and an
/// oracle, with the fixed marking `(a, b, c, d, x, b̃, c̃, d̃)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupSpec {
    family: DeciderFamily,
    oracle: Oracle,
}

impl GroupSpec {
    pub fn new(family: DeciderFamily, oracle: Oracle) -> Result<GroupSpec> {
        if let DeciderFamily::Beta(p) = family {
            let k = p.excluded();
            if oracle.last_occurrence(k) == LastOccurrence::Infinite {
                return Err(Error::InvalidSpec {
                    spec: format!("{family}@{oracle}"),
                    reason: format!("symbol {k} must occur only finitely often for {family}"),
                });
            }
        }
        Ok(GroupSpec { family, oracle })
    }

    pub fn exact(oracle: Oracle) -> GroupSpec {
        GroupSpec {
            family: DeciderFamily::Exact,
            oracle,
        }
    }

    pub fn alpha(oracle: Oracle) -> GroupSpec {
        GroupSpec {
            family: DeciderFamily::Alpha,
            oracle,
        }
    }

    pub fn beta(i: Symbol, j: Symbol, oracle: Oracle) -> Result<GroupSpec> {
        GroupSpec::new(DeciderFamily::Beta(BetaPair::new(i, j)?), oracle)
    }

    pub fn family(&self) -> DeciderFamily {
        self.family
    }

    pub fn oracle(&self) -> &Oracle {
        &self.oracle
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.family, self.oracle)
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// `<family>@<oracle>` with family one of `exact`, `alpha`, `beta-01`,
    /// `beta-12`, `beta-20` (`beta-10`, `beta-21`, `beta-02` are accepted).
    fn from_str(s: &str) -> Result<GroupSpec> {
        let invalid = |reason: &str| Error::InvalidSpec {
            spec: s.to_string(),
            reason: reason.to_string(),
        };
        let (fam, orc) = s
            .split_once('@')
            .ok_or_else(|| invalid("expected <family>@<oracle>"))?;
        let oracle: Oracle = orc.parse()?;
        let family = match fam.trim().to_ascii_lowercase().as_str() {
            "exact" => DeciderFamily::Exact,
            "alpha" => DeciderFamily::Alpha,
            other => {
                let digits = other
                    .strip_prefix("beta-")
                    .or_else(|| other.strip_prefix("beta"))
                    .ok_or_else(|| invalid("family must be exact, alpha or beta-ij"))?;
                let syms: Vec<Symbol> = digits.chars().filter_map(Symbol::from_digit).collect();
                if syms.len() != 2 || digits.chars().count() != 2 {
                    return Err(invalid("beta needs two symbols, e.g. beta-01"));
                }
                DeciderFamily::Beta(BetaPair::new(syms[0], syms[1])?)
            }
        };
        GroupSpec::new(family, oracle)
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// True iff `k` acts trivially on the whole tree under `o`: its portrait
/// label is `I` at every symbol occurring in `o`.
pub fn generator_trivial(k: KElement, o: &Oracle) -> bool {
    o.occurring().into_iter().all(|s| !swaps(k, s))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub identity: bool,
    /// Decomposition depth the decision rested on.
    pub depth_used: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementOrder {
    Finite(usize),
    Unknown,
}

/// A marked group with a memoized identity decider.
///
/// The exact decider caches verdicts keyed by `(section word, shifted
/// oracle)`; the set of shifted oracles is finite, so the cache is shared
/// across every query made through the same value. The cache sits behind a
/// mutex and only ever stores values computed from its key, so concurrent
/// callers observe the same answers in any interleaving.
pub struct MarkedGroup {
    spec: GroupSpec,
    cache: Mutex<HashMap<(ReducedWord, Oracle), (bool, usize)>>,
    max_cache: usize,
}

impl fmt::Debug for MarkedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MarkedGroup")
            .field("spec", &self.spec)
            .finish()
    }
}

pub const DEFAULT_MAX_CACHE: usize = 4_000_000;

impl MarkedGroup {
    pub fn new(spec: GroupSpec) -> MarkedGroup {
        MarkedGroup::with_cache_limit(spec, DEFAULT_MAX_CACHE)
    }

    /// Once `max_cache` entries are stored, new results are no longer kept.
    pub fn with_cache_limit(spec: GroupSpec, max_cache: usize) -> MarkedGroup {
        MarkedGroup {
            spec,
            cache: Mutex::new(HashMap::new()),
            max_cache,
        }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn cache_len(&self) -> usize {
        self.cache.lock().unwrap().len()
    }

    pub fn is_identity(&self, w: &ReducedWord) -> bool {
        self.verdict(w).identity
    }

    pub fn verdict(&self, w: &ReducedWord) -> Verdict {
        match self.spec.family {
            DeciderFamily::Exact => {
                let (identity, depth_used) = self.exact(w, &self.spec.oracle);
                Verdict {
                    identity,
                    depth_used,
                }
            }
            DeciderFamily::Alpha => {
                let depth = nucleus_depth(w);
                Verdict {
                    identity: nucleus_accepts(w, &self.spec.oracle, depth, None),
                    depth_used: depth,
                }
            }
            DeciderFamily::Beta(p) => {
                let n0 = match self.spec.oracle.last_occurrence(p.excluded()) {
                    LastOccurrence::Finite(n) => n,
                    LastOccurrence::Infinite => unreachable!("validated in GroupSpec::new"),
                };
                let depth = n0.max(nucleus_depth(w));
                Verdict {
                    identity: nucleus_accepts(w, &self.spec.oracle, depth, Some(p.tolerated())),
                    depth_used: depth,
                }
            }
        }
    }

    /// `u = v` iff `u v⁻¹ = 1`.
    pub fn equal(&self, u: &ReducedWord, v: &ReducedWord) -> bool {
        self.is_identity(&u.concat(&v.invert()))
    }

    pub fn element_order(&self, w: &ReducedWord, cap: usize) -> ElementOrder {
        let mut power = ReducedWord::empty();
        for m in 1..=cap {
            power = power.concat(w);
            if self.is_identity(&power) {
                return ElementOrder::Finite(m);
            }
        }
        ElementOrder::Unknown
    }

    // Termination: a reduced stabilizer word of length L ≥ 2 has sections of
    // length at most (L + 1) / 2 < L, and lengths 0 and 1 are base cases.
    fn exact(&self, w: &ReducedWord, o: &Oracle) -> (bool, usize) {
        match w.letters() {
            [] => return (true, 0),
            [Letter::A] => return (false, 0),
            [Letter::K(k)] => return (generator_trivial(*k, o), 0),
            _ => {}
        }
        if w.a_count() % 2 == 1 {
            return (false, 0);
        }
        let key = (w.clone(), o.clone());
        if let Some(&hit) = self.cache.lock().unwrap().get(&key) {
            return hit;
        }
        let (left, right) = split_at_symbol(w, o.head()).expect("even parity checked");
        let next = o.shift();
        let (l_ok, l_depth) = self.exact(&left, &next);
        let result = if l_ok {
            let (r_ok, r_depth) = self.exact(&right, &next);
            (r_ok, 1 + l_depth.max(r_depth))
        } else {
            (false, 1 + l_depth)
        };
        let mut cache = self.cache.lock().unwrap();
        if cache.len() < self.max_cache {
            cache.insert(key, result);
        }
        result
    }
}

fn nucleus_accepts(w: &ReducedWord, o: &Oracle, depth: usize, tolerated: Option<KElement>) -> bool {
    match decompose(w, o, depth) {
        Decomposition::NotInStabilizer { .. } => false,
        Decomposition::Tree(t) => t.leaves().iter().all(|s| match s.letters() {
            [] => true,
            [Letter::K(k)] => Some(*k) == tolerated,
            _ => false,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    fn w(s: &str) -> ReducedWord {
        parse_word(s).unwrap()
    }

    fn g(s: &str) -> MarkedGroup {
        MarkedGroup::new(s.parse().unwrap())
    }

    #[test]
    fn generator_trivial_examples() {
        assert!(generator_trivial(KElement::D, &"(0)".parse().unwrap()));
        for o in ["(0)", "(1)", "(2)", "(012)", "1(02)"] {
            assert!(!generator_trivial(KElement::X, &o.parse().unwrap()));
        }
        assert!(generator_trivial(KElement::B, &"(2)".parse().unwrap()));
        // a prefix symbol counts
        assert!(!generator_trivial(KElement::D, &"1(0)".parse().unwrap()));
    }

    #[test]
    fn is_identity_examples() {
        assert!(!g("alpha@(0)").is_identity(&w("d")));
        assert!(g("exact@(0)").is_identity(&w("d")));
        assert!(g("beta-01@(01)").is_identity(&w("B")));
        for spec in ["exact@(0)", "alpha@(012)", "beta-20@1(0)"] {
            assert!(g(spec).is_identity(&w("aa")));
        }
        assert!(!g("exact@(012)").is_identity(&w("abab")));
    }

    #[test]
    fn equal_examples() {
        assert!(g("exact@(0)").equal(&w("b"), &w("x")));
        assert!(!g("alpha@(0)").equal(&w("b"), &w("x")));
        let word = w("abxaCad");
        assert!(g("beta-12@0(1)").equal(&word, &word));
    }

    #[test]
    fn element_order_examples() {
        assert_eq!(
            g("exact@(012)").element_order(&w("b"), 8),
            ElementOrder::Finite(2)
        );
        assert_eq!(
            g("exact@(012)").element_order(&w("ax"), 64),
            ElementOrder::Unknown
        );
        assert_eq!(
            g("alpha@(01)").element_order(&w(""), 3),
            ElementOrder::Finite(1)
        );
        // ad generates a dihedral group of order 8 in the first Grigorchuk group
        assert_eq!(
            g("exact@(012)").element_order(&w("ad"), 16),
            ElementOrder::Finite(4)
        );
    }

    #[test]
    fn spec_parsing_and_validation() {
        let s: GroupSpec = "beta-01@121(0)".parse().unwrap();
        assert_eq!(s.to_string(), "beta-01@121(0)");
        let s: GroupSpec = "beta-02@(0)".parse().unwrap();
        assert_eq!(s.to_string(), "beta-20@(0)");
        assert!(matches!(
            "beta-01@(012)".parse::<GroupSpec>(),
            Err(Error::InvalidSpec { .. })
        ));
        assert!(matches!(
            "beta-00@(0)".parse::<GroupSpec>(),
            Err(Error::InvalidSpec { .. })
        ));
        assert!(matches!(
            "gamma@(0)".parse::<GroupSpec>(),
            Err(Error::InvalidSpec { .. })
        ));
        assert!(matches!(
            "exact(0)".parse::<GroupSpec>(),
            Err(Error::InvalidSpec { .. })
        ));
    }

    #[test]
    fn tolerated_letters() {
        let p = |i, j| {
            BetaPair::new(
                Symbol::from_index(i).unwrap(),
                Symbol::from_index(j).unwrap(),
            )
            .unwrap()
        };
        assert_eq!(p(0, 1).tolerated(), KElement::BT);
        assert_eq!(p(1, 2).tolerated(), KElement::DT);
        assert_eq!(p(2, 0).tolerated(), KElement::CT);
        assert_eq!(p(0, 2).tolerated(), KElement::CT);
    }

    #[test]
    fn beta_depth_reaches_last_excluded_symbol() {
        // b̃ is trivial over 0^∞ but swaps at a 2, so β₀₁ must look past it
        let grp = g("beta-01@2(0)");
        let v = grp.verdict(&w("B"));
        assert_eq!(v.depth_used, 1);
        assert!(!v.identity);
        assert!(g("beta-01@(0)").is_identity(&w("B")));
    }
}
