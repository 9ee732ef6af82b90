//! Witness words: the conjugates `v_n`, the substitutions `ξ₀, ξ₁`, the
//! vertex words `V_p`, the separating words `W(ij)` and the map `f`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::{LastOccurrence, Oracle, OracleClass, Symbol};
use crate::sections::swaps;
use crate::wordproblem::BetaPair;
use crate::words::{KElement, Letter, ReducedWord};

const A: Letter = Letter::A;
const X: Letter = Letter::K(KElement::X);

/// A nontrivial `K`-element used as the seed `y` of the words `v_n`.
///
/// Over an oracle where `y` never swaps at the first-level vertices, its
/// sections are `(1, y)` all the way down the rightmost path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpineLetter(KElement);

impl SpineLetter {
    pub fn new(y: KElement) -> Result<SpineLetter> {
        if y.is_identity() || y == KElement::X {
            return Err(Error::DisallowedLetter(y.name()));
        }
        Ok(SpineLetter(y))
    }

    pub fn element(self) -> KElement {
        self.0
    }

    pub fn letter(self) -> Letter {
        Letter::K(self.0)
    }

    /// Whether `y` acts trivially at the first `depth` spine vertices.
    pub fn is_spine_for(self, o: &Oracle, depth: usize) -> bool {
        (0..depth).all(|m| !swaps(self.0, o.at(m)))
    }
}

fn ax_power(n: usize) -> ReducedWord {
    ReducedWord::reduce([A, X]).pow(n)
}

/// `v_n = y^{(ax)^n}` for `n ≥ 0` and `y^{(ax)^{-n-1} a}` for `n < 0`.
pub fn v_word(y: SpineLetter, n: i64) -> ReducedWord {
    let h = if n >= 0 {
        ax_power(n as usize)
    } else {
        ax_power((-n - 1) as usize).push(A)
    };
    ReducedWord::letter(y.letter()).conjugate(&h)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XiRule {
    Zero,
    One,
}

impl XiRule {
    pub fn from_bit(c: char) -> Option<XiRule> {
        match c {
            '0' => Some(XiRule::Zero),
            '1' => Some(XiRule::One),
            _ => None,
        }
    }
}

/// `ξ₀: a ↦ x, x ↦ axa, y ↦ aya` and `ξ₁: a ↦ axa, x ↦ x, y ↦ y`.
pub fn xi(rule: XiRule, w: &ReducedWord, y: SpineLetter) -> Result<ReducedWord> {
    let mut out = Vec::with_capacity(3 * w.len());
    for &l in w.letters() {
        let image: &[Letter] = match (rule, l) {
            (XiRule::Zero, Letter::A) => &[X],
            (XiRule::Zero, l) if l == X => &[A, X, A],
            (XiRule::Zero, l) if l == y.letter() => &[A, l, A],
            (XiRule::One, Letter::A) => &[A, X, A],
            (XiRule::One, l) if l == X || l == y.letter() => &[l],
            (_, l) => return Err(Error::DisallowedLetter(l.char())),
        };
        out.extend_from_slice(image);
    }
    Ok(ReducedWord::reduce(out))
}

fn parse_path(path: &str) -> Result<Vec<XiRule>> {
    path.chars()
        .enumerate()
        .map(|(pos, c)| XiRule::from_bit(c).ok_or(Error::ParseWord { ch: c, pos }))
        .collect()
}

/// `V_{i₁…iₙ} = ξ_{i₁}(V_{i₂…iₙ})` with `V_∅ = v₀ = y`.
#[allow(non_snake_case)]
pub fn V_word(y: SpineLetter, path: &str) -> Result<ReducedWord> {
    let rules = parse_path(path)?;
    rules
        .into_iter()
        .rev()
        .try_fold(ReducedWord::letter(y.letter()), |w, r| xi(r, &w, y))
}

/// The index `k` with `V_path = v_k`.
pub fn v_index(path: &str) -> Result<i64> {
    let rules = parse_path(path)?;
    Ok(rules.into_iter().rev().fold(0i64, |k, r| match r {
        XiRule::One => 2 * k,
        XiRule::Zero => -2 * k - 1,
    }))
}

/// `ω = ω₁…ω_n ℓ^κ η₁…η_r i^∞` around the last run of the excluded symbol.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Omega2Shape {
    pub pair: BetaPair,
    pub tail: Symbol,
    pub excluded: Symbol,
    pub head: Vec<Symbol>,
    pub kappa: usize,
    pub eta: Vec<Symbol>,
}

impl Omega2Shape {
    /// `None` when the excluded symbol never occurs.
    pub fn of(o: &Oracle, i: Symbol, j: Symbol) -> Result<Option<Omega2Shape>> {
        let pair = BetaPair::new(i, j)?;
        let tail_start = match o.classify() {
            OracleClass::Omega2 {
                recurring,
                tail_start,
            } if recurring == i => tail_start,
            _ => {
                return Err(Error::InvalidSpec {
                    spec: format!("beta-{}@{o}", pair.name()),
                    reason: format!("W(ij) needs an eventually constant oracle with tail {i}"),
                })
            }
        };
        let excluded = pair.excluded();
        let last = match o.last_occurrence(excluded) {
            LastOccurrence::Finite(0) => return Ok(None),
            LastOccurrence::Finite(n) => n,
            LastOccurrence::Infinite => unreachable!("the tail is constant and differs from ℓ"),
        };
        let mut start = last;
        while start > 1 && o.at(start - 2) == excluded {
            start -= 1;
        }
        // `tail_start` is the 0-based index of the first tail symbol
        let symbols: Vec<Symbol> = (0..tail_start.max(last)).map(|m| o.at(m)).collect();
        Ok(Some(Omega2Shape {
            pair,
            tail: i,
            excluded,
            head: symbols[..start - 1].to_vec(),
            kappa: last - start + 1,
            eta: symbols[last..].to_vec(),
        }))
    }

    pub fn n(&self) -> usize {
        self.head.len()
    }

    pub fn r(&self) -> usize {
        self.eta.len()
    }

    pub fn reassemble(&self) -> Oracle {
        let mut prefix = self.head.clone();
        prefix.extend(std::iter::repeat_n(self.excluded, self.kappa));
        prefix.extend_from_slice(&self.eta);
        Oracle::new(prefix, vec![self.tail]).expect("non-empty period")
    }
}

/// `e_ij` together with its untilded partner `e_ij · x`.
fn witness_letters(pair: BetaPair) -> (Letter, Letter) {
    let tilded = pair.tolerated();
    (Letter::K(tilded), Letter::K(tilded.mul(KElement::X)))
}

/// The separating word `W(ij)` for an eventually constant oracle with tail
/// `i`: trivial under β_ij, nontrivial under α.
///
/// With `U = e_ij`, `u = U·x` and `X_m = U` if `ω_m = ℓ` else `u`, the tower
/// `C₁ = X₁^a`, `C_m = X_m^{C_{m-1}}` gives `Y = C_n` and
/// `W = ((U·Y)²)^{2^κ}`. When the oracle starts with the run of `ℓ`
/// (`n = 0`) the tower is empty and `Y = a` is used.
pub fn w_ij(o: &Oracle, i: Symbol, j: Symbol) -> Result<ReducedWord> {
    let pair = BetaPair::new(i, j)?;
    let (big_u, small_u) = witness_letters(pair);
    let Some(shape) = Omega2Shape::of(o, i, j)? else {
        return Ok(ReducedWord::letter(big_u));
    };
    let x_letter =
        |s: Symbol| ReducedWord::letter(if s == shape.excluded { big_u } else { small_u });
    let y = match shape.head.split_first() {
        None => ReducedWord::letter(A),
        Some((&first, rest)) => rest.iter().fold(
            x_letter(first).conjugate(&ReducedWord::letter(A)),
            |c, &s| x_letter(s).conjugate(&c),
        ),
    };
    let z = ReducedWord::letter(big_u).concat(&y).pow(2);
    Ok(z.pow(1 << shape.kappa))
}

/// `a, b, c, d ↦` themselves, `x ↦ b`, `b̃ ↦ 1`, `c̃ ↦ d`, `d̃ ↦ c`.
pub fn f_map(w: &ReducedWord) -> ReducedWord {
    ReducedWord::reduce(w.letters().iter().filter_map(|&l| match l {
        Letter::A => Some(A),
        Letter::K(k) => Letter::from_k(f_k(k)),
    }))
}

fn f_k(k: KElement) -> KElement {
    match k {
        KElement::X => KElement::B,
        KElement::BT => KElement::IDENTITY,
        KElement::CT => KElement::D,
        KElement::DT => KElement::C,
        k => k,
    }
}
