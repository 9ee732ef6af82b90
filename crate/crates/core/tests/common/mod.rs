//! Reference evaluator built straight from the generator portraits, sharing
//! no code with the library's sections or deciders.
#![allow(dead_code)]

/// Eventually periodic sequence over {0,1,2}, parsed independently.
#[derive(Clone, Debug)]
pub struct Seq {
    pub prefix: Vec<u8>,
    pub period: Vec<u8>,
}

impl Seq {
    pub fn parse(s: &str) -> Seq {
        let open = s.find('(').expect("period");
        let digits = |t: &str| t.bytes().map(|b| b - b'0').collect::<Vec<u8>>();
        Seq {
            prefix: digits(&s[..open]),
            period: digits(&s[open + 1..s.len() - 1]),
        }
    }

    /// `ω_n`, 1-based.
    pub fn at(&self, n: usize) -> u8 {
        let i = n - 1;
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }
}

/// Portrait label `P` of a non-`a` generator at a vertex `1ⁿ⁻¹0` with
/// `ω_n = s`: b is `P` at 0, 1; c at 0, 2; d at 1, 2; x always; the tilded
/// generators carry the complementary labels.
pub fn label(g: char, s: u8) -> bool {
    match g {
        'b' => s != 2,
        'c' => s != 1,
        'd' => s != 0,
        'x' => true,
        'B' => s == 2,
        'C' => s == 1,
        'D' => s == 0,
        _ => panic!("not a K generator: {g}"),
    }
}

/// Applies one generator to a vertex given as its path of bits.
pub fn act(g: char, path: &mut [bool], seq: &Seq) {
    if path.is_empty() {
        return;
    }
    if g == 'a' {
        path[0] = !path[0];
        return;
    }
    if let Some(m) = path.iter().position(|&bit| !bit) {
        if m + 1 < path.len() && label(g, seq.at(m + 1)) {
            path[m + 1] = !path[m + 1];
        }
    }
}

/// Images of all vertices of `level`, letters applied right to left, with
/// the first path bit as the most significant.
pub fn permutation(word: &str, seq: &Seq, level: usize) -> Vec<u32> {
    (0..1u32 << level)
        .map(|v| {
            let mut path: Vec<bool> = (0..level)
                .map(|i| (v >> (level - 1 - i)) & 1 == 1)
                .collect();
            for g in word.chars().rev() {
                act(g, &mut path, seq);
            }
            path.iter().fold(0u32, |acc, &b| (acc << 1) | b as u32)
        })
        .collect()
}

pub fn ceil_log2(n: usize) -> usize {
    let mut k = 0;
    while (1usize << k) < n {
        k += 1;
    }
    k
}

/// Level deep enough to see every nontrivial element of length ≤ `len`:
/// below depth ⌈log₂ len⌉ sections are single generators, and a generator
/// over a shifted sequence moves a vertex within `|prefix| + |period| + 1`
/// further levels if it moves anything at all.
pub fn detection_level(len: usize, seq: &Seq) -> usize {
    ceil_log2(len.max(1)) + seq.prefix.len() + seq.period.len() + 1
}

pub fn exact_identity(word: &str, seq: &Seq) -> bool {
    let level = detection_level(word.chars().count(), seq);
    permutation(word, seq, level)
        .iter()
        .enumerate()
        .all(|(i, &v)| v == i as u32)
}

/// All alternating words over `a` and the seven `K` letters, shortlex.
pub fn alternating_words(max_len: usize) -> Vec<String> {
    const K: [char; 7] = ['b', 'c', 'd', 'x', 'B', 'C', 'D'];
    let mut all = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            let last_is_a = w.ends_with('a');
            if w.is_empty() || !last_is_a {
                next.push(format!("{w}a"));
            }
            if w.is_empty() || last_is_a {
                next.extend(K.iter().map(|k| format!("{w}{k}")));
            }
        }
        next.sort_by_key(|w| w.chars().map(rank).collect::<Vec<_>>());
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

/// Generator order a < b < c < d < x < B < C < D.
pub fn rank(c: char) -> usize {
    "abcdxBCD".find(c).expect("generator letter")
}

/// Number of distinct elements among words of length ≤ r, per r, in the
/// exact group: two words are equal iff they induce the same permutation
/// of a level deep enough for words of length `2r`.
pub fn exact_growth(seq: &Seq, r_max: usize) -> Vec<usize> {
    let words = alternating_words(r_max);
    let level = detection_level(2 * r_max, seq);
    let mut seen = std::collections::HashSet::new();
    let mut sizes = vec![0; r_max + 1];
    for w in &words {
        seen.insert(permutation(w, seq, level));
        let len = w.chars().count();
        for s in sizes.iter_mut().skip(len) {
            *s = seen.len();
        }
    }
    sizes
}
