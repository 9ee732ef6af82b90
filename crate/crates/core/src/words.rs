//! The alphabet `a, b, c, d, x, b̃, c̃, d̃` and normal forms in `Z₂ * K`.
//!
//! The non-`a` generators together with the identity form the abelian group
//! `K ≅ Z₂³`. An element is stored as three bits over the basis `(b, c, x)`:
//! `d = b + c` and each tilded generator is its untilded partner plus `x`.
//! Under this encoding every simple contraction is a bitwise XOR, and the
//! numeric code of a letter (`a = 0`, otherwise the bits) coincides with the
//! fixed generator order `a < b < c < d < x < b̃ < c̃ < d̃`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KElement(u8);

impl KElement {
    pub const IDENTITY: KElement = KElement(0);
    pub const B: KElement = KElement(0b001);
    pub const C: KElement = KElement(0b010);
    pub const D: KElement = KElement(0b011);
    pub const X: KElement = KElement(0b100);
    pub const BT: KElement = KElement(0b101);
    pub const CT: KElement = KElement(0b110);
    pub const DT: KElement = KElement(0b111);

    /// The seven nontrivial elements in generator order.
    pub const NONTRIVIAL: [KElement; 7] = [
        Self::B,
        Self::C,
        Self::D,
        Self::X,
        Self::BT,
        Self::CT,
        Self::DT,
    ];

    pub fn from_bits(bits: u8) -> KElement {
        KElement(bits & 0b111)
    }

    /// `(β_b, β_c, β_x)` packed as bits 0, 1, 2.
    pub fn bits(self) -> u8 {
        self.0
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: KElement) -> KElement {
        KElement(self.0 ^ other.0)
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }

    pub fn name(self) -> char {
        b"1bcdxBCD"[self.0 as usize] as char
    }

    pub fn from_name(c: char) -> Option<KElement> {
        "bcdxBCD".find(c).map(|i| KElement::NONTRIVIAL[i])
    }

    /// Human-readable name using tildes, e.g. `b̃`.
    pub fn pretty(self) -> &'static str {
        ["1", "b", "c", "d", "x", "b̃", "c̃", "d̃"][self.0 as usize]
    }
}

impl fmt::Debug for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

impl fmt::Display for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A generator: `a`, or a nontrivial element of `K`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    A,
    K(KElement),
}

impl Letter {
    /// All eight generators in marking order.
    pub const ALL: [Letter; 8] = [
        Letter::A,
        Letter::K(KElement::B),
        Letter::K(KElement::C),
        Letter::K(KElement::D),
        Letter::K(KElement::X),
        Letter::K(KElement::BT),
        Letter::K(KElement::CT),
        Letter::K(KElement::DT),
    ];

    /// Position in the marking `(a, b, c, d, x, b̃, c̃, d̃)`.
    pub fn index(self) -> usize {
        match self {
            Letter::A => 0,
            Letter::K(k) => k.bits() as usize,
        }
    }

    pub fn from_index(i: usize) -> Option<Letter> {
        Letter::ALL.get(i).copied()
    }

    /// `None` for the identity of `K`.
    pub fn from_k(k: KElement) -> Option<Letter> {
        (!k.is_identity()).then_some(Letter::K(k))
    }

    pub fn char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::K(k) => k.name(),
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        if c == 'a' {
            Some(Letter::A)
        } else {
            KElement::from_name(c).map(Letter::K)
        }
    }

    pub fn is_a(self) -> bool {
        matches!(self, Letter::A)
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.index().cmp(&other.index())
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.char())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.char())
    }
}

/// A word in alternating normal form: no two adjacent letters are both `a`
/// and no two are both in `K`. Equal as sequences iff equal in `Z₂ * K`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord(Vec<Letter>);

impl ReducedWord {
    pub fn empty() -> ReducedWord {
        ReducedWord(Vec::new())
    }

    pub fn letter(l: Letter) -> ReducedWord {
        ReducedWord(vec![l])
    }

    /// Free-product reduction of an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(raw: I) -> ReducedWord {
        let mut stack: Vec<Letter> = Vec::new();
        for l in raw {
            push_reduced(&mut stack, l);
        }
        ReducedWord(stack)
    }

    /// Wraps a sequence that is already alternating. Panics otherwise.
    pub fn from_reduced(letters: Vec<Letter>) -> ReducedWord {
        assert!(is_alternating(&letters), "letters not in normal form");
        ReducedWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn a_count(&self) -> usize {
        self.0.iter().filter(|l| l.is_a()).count()
    }

    /// Every generator is an involution, so the inverse is the reversal.
    pub fn invert(&self) -> ReducedWord {
        ReducedWord(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &ReducedWord) -> ReducedWord {
        let mut stack = self.0.clone();
        for &l in &other.0 {
            push_reduced(&mut stack, l);
        }
        ReducedWord(stack)
    }

    pub fn push(&self, l: Letter) -> ReducedWord {
        let mut stack = self.0.clone();
        push_reduced(&mut stack, l);
        ReducedWord(stack)
    }

    pub fn pow(&self, n: usize) -> ReducedWord {
        (0..n).fold(ReducedWord::empty(), |acc, _| acc.concat(self))
    }

    /// `h⁻¹ · self · h`.
    pub fn conjugate(&self, h: &ReducedWord) -> ReducedWord {
        h.invert().concat(self).concat(h)
    }

    /// `[u, v] = u⁻¹ v⁻¹ u v`.
    pub fn commutator(&self, other: &ReducedWord) -> ReducedWord {
        self.invert()
            .concat(&other.invert())
            .concat(self)
            .concat(other)
    }

    pub fn single(&self) -> Option<Letter> {
        match self.0.as_slice() {
            [l] => Some(*l),
            _ => None,
        }
    }
}

fn push_reduced(stack: &mut Vec<Letter>, l: Letter) {
    match (stack.last().copied(), l) {
        (Some(Letter::A), Letter::A) => {
            stack.pop();
        }
        (Some(Letter::K(top)), Letter::K(k)) => {
            stack.pop();
            if let Some(merged) = Letter::from_k(top.mul(k)) {
                stack.push(merged);
            }
        }
        _ => stack.push(l),
    }
}

fn is_alternating(letters: &[Letter]) -> bool {
    letters.windows(2).all(|w| w[0].is_a() != w[1].is_a())
        && letters
            .iter()
            .all(|l| !matches!(l, Letter::K(k) if k.is_identity()))
}

/// Parses a word over `a b c d x B C D` (capitals are the tilded
/// generators), ignoring whitespace, and reduces it.
pub fn parse_word(text: &str) -> Result<ReducedWord> {
    parse_raw(text).map(ReducedWord::reduce)
}

/// Parses without reducing.
pub fn parse_raw(text: &str) -> Result<Vec<Letter>> {
    text.chars()
        .enumerate()
        .filter(|(_, c)| !c.is_whitespace())
        .map(|(pos, ch)| Letter::from_char(ch).ok_or(Error::ParseWord { ch, pos }))
        .collect()
}

pub fn format_word(w: &ReducedWord) -> String {
    w.to_string()
}

impl FromStr for ReducedWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<ReducedWord> {
        parse_word(s)
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "ε")
        } else {
            write!(f, "{self}")
        }
    }
}

impl Serialize for ReducedWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Number of normal forms of length exactly `len`.
pub fn normal_form_count(len: usize) -> u64 {
    if len == 0 {
        return 1;
    }
    let lo = (len / 2) as u32;
    let hi = len.div_ceil(2) as u32;
    7u64.pow(lo) + 7u64.pow(hi)
}

/// All normal forms of length exactly `len`, in lexicographic order of
/// generator indices.
pub fn words_of_length(len: usize) -> WordsOfLength {
    WordsOfLength::new(len)
}

/// Shortlex enumeration of all normal forms of length at most `max_len`.
pub fn words_up_to(max_len: usize) -> impl Iterator<Item = ReducedWord> {
    (0..=max_len).flat_map(words_of_length)
}

/// Odometer over alternating words of a fixed length.
pub struct WordsOfLength {
    len: usize,
    current: Option<Vec<Letter>>,
}

impl WordsOfLength {
    fn new(len: usize) -> Self {
        let current = if len == 0 {
            Some(Vec::new())
        } else {
            Some(first_from(Letter::A, len))
        };
        WordsOfLength { len, current }
    }
}

fn first_from(start: Letter, len: usize) -> Vec<Letter> {
    let mut v = Vec::with_capacity(len);
    let mut next = start;
    for _ in 0..len {
        v.push(next);
        next = if next.is_a() {
            Letter::K(KElement::B)
        } else {
            Letter::A
        };
    }
    v
}

impl Iterator for WordsOfLength {
    type Item = ReducedWord;

    fn next(&mut self) -> Option<ReducedWord> {
        let cur = self.current.take()?;
        let out = ReducedWord(cur.clone());
        if self.len == 0 {
            return Some(out);
        }
        let mut w = cur;
        // advance the rightmost position that still has a larger admissible letter
        let mut i = self.len;
        while i > 0 {
            i -= 1;
            let next = (w[i].index() + 1..8)
                .map(|j| Letter::ALL[j])
                .find(|l| i == 0 || l.is_a() != w[i - 1].is_a());
            if let Some(l) = next {
                w[i] = l;
                // refill the suffix with the least admissible letters
                for j in i + 1..self.len {
                    w[j] = if w[j - 1].is_a() {
                        Letter::K(KElement::B)
                    } else {
                        Letter::A
                    };
                }
                self.current = Some(w);
                break;
            }
        }
        Some(out)
    }
}
