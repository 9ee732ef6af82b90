//! Eventually periodic sequences over `{0, 1, 2}`.
//!
//! An [`Oracle`] is stored as `prefix · period^∞` in canonical form: the
//! period is primitive and the prefix is as short as possible. Two oracles
//! describe the same infinite sequence iff they compare equal.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Zero,
    One,
    Two,
}

impl Symbol {
    pub const ALL: [Symbol; 3] = [Symbol::Zero, Symbol::One, Symbol::Two];

    pub fn index(self) -> usize {
        match self {
            Symbol::Zero => 0,
            Symbol::One => 1,
            Symbol::Two => 2,
        }
    }

    pub fn from_index(i: usize) -> Option<Symbol> {
        Self::ALL.get(i).copied()
    }

    pub fn from_digit(c: char) -> Option<Symbol> {
        c.to_digit(10).and_then(|d| Symbol::from_index(d as usize))
    }

    pub fn digit(self) -> char {
        (b'0' + self.index() as u8) as char
    }

    /// The symbol that is neither `self` nor `other`.
    pub fn third(self, other: Symbol) -> Option<Symbol> {
        if self == other {
            return None;
        }
        Symbol::from_index(3 - self.index() - other.index())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.digit())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Oracle {
    prefix: Vec<Symbol>,
    period: Vec<Symbol>,
}

/// Position of an index relative to the occurrences of a symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LastOccurrence {
    /// Largest 1-based index, or 0 when the symbol never occurs.
    Finite(usize),
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum OracleClass {
    /// All three symbols recur.
    Omega0 { tail_start: usize },
    /// Exactly two symbols recur.
    Omega1 {
        recurring: [Symbol; 2],
        tail_start: usize,
    },
    /// Eventually constant.
    Omega2 {
        recurring: Symbol,
        tail_start: usize,
    },
}

impl OracleClass {
    pub fn tail_start(&self) -> usize {
        match *self {
            OracleClass::Omega0 { tail_start }
            | OracleClass::Omega1 { tail_start, .. }
            | OracleClass::Omega2 { tail_start, .. } => tail_start,
        }
    }

    pub fn index(&self) -> usize {
        match self {
            OracleClass::Omega0 { .. } => 0,
            OracleClass::Omega1 { .. } => 1,
            OracleClass::Omega2 { .. } => 2,
        }
    }
}

impl Serialize for Symbol {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.index() as u8)
    }
}

impl Oracle {
    pub fn new(prefix: Vec<Symbol>, period: Vec<Symbol>) -> Result<Oracle> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        let mut o = Oracle { prefix, period };
        o.canonicalize();
        Ok(o)
    }

    /// The constant sequence `s^∞`.
    pub fn constant(s: Symbol) -> Oracle {
        Oracle {
            prefix: Vec::new(),
            period: vec![s],
        }
    }

    fn canonicalize(&mut self) {
        let p = primitive_root_len(&self.period);
        self.period.truncate(p);
        while let Some(&last) = self.prefix.last() {
            if last != *self.period.last().unwrap() {
                break;
            }
            self.prefix.pop();
            self.period.rotate_right(1);
        }
    }

    pub fn prefix(&self) -> &[Symbol] {
        &self.prefix
    }

    pub fn period(&self) -> &[Symbol] {
        &self.period
    }

    /// The `n`-th symbol, 1-based.
    pub fn symbol_at(&self, n: usize) -> Result<Symbol> {
        if n == 0 {
            return Err(Error::IndexOutOfRange(n));
        }
        Ok(self.at(n - 1))
    }

    /// 0-based access used internally; never fails.
    pub(crate) fn at(&self, i: usize) -> Symbol {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    /// First symbol, `ω₁`.
    pub fn head(&self) -> Symbol {
        self.at(0)
    }

    pub fn shift(&self) -> Oracle {
        if self.prefix.is_empty() {
            let mut period = self.period.clone();
            period.rotate_left(1);
            Oracle {
                prefix: Vec::new(),
                period,
            }
        } else {
            Oracle {
                prefix: self.prefix[1..].to_vec(),
                period: self.period.clone(),
            }
        }
    }

    pub fn shift_by(&self, k: usize) -> Oracle {
        if k < self.prefix.len() {
            return Oracle {
                prefix: self.prefix[k..].to_vec(),
                period: self.period.clone(),
            };
        }
        let mut period = self.period.clone();
        let r = (k - self.prefix.len()) % period.len();
        period.rotate_left(r);
        Oracle {
            prefix: Vec::new(),
            period,
        }
    }

    /// All distinct shifts `σᵏω`, in order of first appearance.
    pub fn orbit(&self) -> Vec<Oracle> {
        (0..self.prefix.len() + self.period.len())
            .map(|k| self.shift_by(k))
            .collect()
    }

    /// Symbols occurring anywhere in the sequence.
    pub fn occurring(&self) -> BTreeSet<Symbol> {
        self.prefix.iter().chain(&self.period).copied().collect()
    }

    /// Symbols occurring infinitely often.
    pub fn recurring(&self) -> BTreeSet<Symbol> {
        self.period.iter().copied().collect()
    }

    pub fn classify(&self) -> OracleClass {
        let rec = self.recurring();
        let tail_start = self
            .prefix
            .iter()
            .rposition(|s| !rec.contains(s))
            .map_or(0, |i| i + 1);
        let syms: Vec<Symbol> = rec.into_iter().collect();
        match syms.len() {
            3 => OracleClass::Omega0 { tail_start },
            2 => OracleClass::Omega1 {
                recurring: [syms[0], syms[1]],
                tail_start,
            },
            _ => OracleClass::Omega2 {
                recurring: syms[0],
                tail_start,
            },
        }
    }

    pub fn last_occurrence(&self, s: Symbol) -> LastOccurrence {
        if self.period.contains(&s) {
            return LastOccurrence::Infinite;
        }
        LastOccurrence::Finite(
            self.prefix
                .iter()
                .rposition(|&t| t == s)
                .map_or(0, |i| i + 1),
        )
    }

    pub fn is_eventually_constant(&self) -> bool {
        self.period.len() == 1
    }
}

fn primitive_root_len(w: &[Symbol]) -> usize {
    let n = w.len();
    (1..=n)
        .find(|&p| n.is_multiple_of(p) && (p..n).all(|i| w[i] == w[i - p]))
        .unwrap_or(n)
}

impl fmt::Display for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.prefix {
            write!(f, "{s}")?;
        }
        write!(f, "(")?;
        for s in &self.period {
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Oracle({self})")
    }
}

impl FromStr for Oracle {
    type Err = Error;

    fn from_str(text: &str) -> Result<Oracle> {
        let err = |reason: &str| Error::ParseOracle {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let t = text.trim();
        let open = t.find('(').ok_or_else(|| err("missing `(`"))?;
        let body = t[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| err("must end with `)`"))?;
        let digits = |s: &str| -> Result<Vec<Symbol>> {
            s.chars()
                .map(|c| Symbol::from_digit(c).ok_or_else(|| err("symbols must be 0, 1 or 2")))
                .collect()
        };
        let prefix = digits(&t[..open])?;
        let period = digits(body)?;
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Oracle::new(prefix, period)
    }
}

impl Serialize for Oracle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
