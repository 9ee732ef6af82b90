//! Named invariant suites with machine-readable reports.
//!
//! Every suite is deterministic for fixed [`Knobs`]; randomized checks draw
//! from a ChaCha stream seeded by `Knobs::seed`.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::action::acts_trivially;
use crate::constructions::{f_map, v_index, v_word, w_ij, Omega2Shape, SpineLetter, V_word};
use crate::error::{Error, Result};
use crate::markedspace::{
    ball, balls_equal, find_distinguishing_word, free_ball_size, metric, Limits,
};
use crate::oracle::{Oracle, Symbol};
use crate::sections::{
    ceil_log2, decompose, nucleus_at, nucleus_depth, pi0, split, FirstLevelAction, NucleusOutcome,
};
use crate::wordproblem::{generator_trivial, ElementOrder, GroupSpec, MarkedGroup};
use crate::words::{
    normal_form_count, parse_word, words_of_length, words_up_to, KElement, Letter, ReducedWord,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Knobs {
    /// Word length for exhaustive decider comparisons.
    pub max_len: usize,
    /// Word length for the more expensive exhaustive checks.
    pub small_len: usize,
    /// Radius for ball comparisons.
    pub radius: usize,
    /// Largest radius for growth snapshots.
    pub growth_radius: usize,
    /// `|n|` bound for the `v_n` families.
    pub vn_range: i64,
    /// Length bound for distinguishing-word searches.
    pub distinct_len: usize,
    /// Number of random conjugators per relation.
    pub conjugators: usize,
    pub seed: u64,
    pub limits: Limits,
}

impl Default for Knobs {
    fn default() -> Self {
        Knobs {
            max_len: 8,
            small_len: 6,
            radius: 3,
            growth_radius: 5,
            vn_range: 4,
            distinct_len: 16,
            conjugators: 100,
            seed: 0x5eed,
            limits: Limits::default(),
        }
    }
}

impl Knobs {
    /// Reduced sizes for smoke runs.
    pub fn quick() -> Knobs {
        Knobs {
            max_len: 5,
            small_len: 4,
            radius: 2,
            growth_radius: 3,
            vn_range: 2,
            distinct_len: 10,
            conjugators: 10,
            ..Knobs::default()
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: &'static str,
    pub passed: bool,
    /// Summary on success, first counterexample on failure.
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn table(&self) -> String {
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        let mut out = format!("suite {}\n", self.suite);
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            let _ = writeln!(out, "  {:<width$}  {status}  {}", c.id, c.detail);
        }
        out
    }
}

/// Suites and the check ids each one reports, in report order.
pub const CATALOGUE: &[(&str, &[&str])] = &[
    (
        "words",
        &[
            "words.reduce-idempotent",
            "words.inverse-cancels",
            "words.normal-form-count",
            "words.shortlex-order",
        ],
    ),
    (
        "oracle",
        &[
            "oracle.canonical-equality",
            "oracle.shift-orbit",
            "oracle.classify",
        ],
    ),
    ("contraction-table", &["contraction.products"]),
    (
        "sections",
        &[
            "sections.portrait-tables",
            "sections.coordinate-convention",
            "sections.split-homomorphism",
            "sections.split-length-bound",
        ],
    ),
    (
        "oracle-equivalence",
        &["equivalence.alpha-exact-012", "equivalence.beta01-exact-01"],
    ),
    (
        "surjection",
        &[
            "surjection.alpha-implies-exact",
            "surjection.beta-implies-exact",
            "surjection.kernel-witnesses",
        ],
    ),
    (
        "decider",
        &[
            "decider.direct-action",
            "decider.congruence",
            "decider.element-order",
        ],
    ),
    (
        "balls",
        &[
            "balls.examples",
            "balls.representatives-distinct",
            "balls.cover",
            "balls.monotone",
            "balls.free-bound",
        ],
    ),
    ("oande", &["oande.balls-equal", "oande.metric"]),
    ("metric", &["metric.ultrametric", "metric.radius-monotone"]),
    (
        "convergence",
        &["convergence.monotone", "convergence.threshold"],
    ),
    ("growth", &["growth.exact-0", "growth.dominance"]),
    (
        "vn",
        &[
            "vn.involution",
            "vn.a-conjugate",
            "vn.commute",
            "vn.distinct",
            "vn.ax-shift",
            "vn.split-parity",
        ],
    ),
    (
        "figure3",
        &[
            "figure3.labels",
            "figure3.vertex-words",
            "figure3.local-sections",
        ],
    ),
    (
        "lamplighter",
        &[
            "lamplighter.commute",
            "lamplighter.involutions",
            "lamplighter.distinct",
            "lamplighter.shift",
            "lamplighter.products",
            "lamplighter.exact-collapse",
        ],
    ),
    (
        "wij",
        &[
            "wij.example",
            "wij.shape",
            "wij.contract",
            "wij.nucleus-letters",
        ],
    ),
    ("fmap", &["fmap.isomorphism"]),
    ("distinct", &["distinct.families", "distinct.oracles"]),
];

pub fn suite_names() -> impl Iterator<Item = &'static str> {
    CATALOGUE.iter().map(|(name, _)| *name)
}

pub fn run_suite(name: &str, knobs: &Knobs) -> Result<SuiteReport> {
    let (suite, _) = CATALOGUE
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::UnknownSuite(name.to_string()))?;
    let checks = match *suite {
        "words" => words_suite(knobs),
        "oracle" => oracle_suite(),
        "contraction-table" => contraction_suite(),
        "sections" => sections_suite(knobs),
        "oracle-equivalence" => equivalence_suite(knobs),
        "surjection" => surjection_suite(knobs),
        "decider" => decider_suite(knobs),
        "balls" => balls_suite(knobs),
        "oande" => oande_suite(knobs),
        "metric" => metric_suite(knobs),
        "convergence" => convergence_suite(knobs),
        "growth" => growth_suite(knobs),
        "vn" => vn_suite(knobs),
        "figure3" => figure3_suite(),
        "lamplighter" => lamplighter_suite(knobs),
        "wij" => wij_suite(),
        "fmap" => fmap_suite(knobs),
        "distinct" => distinct_suite(knobs),
        _ => unreachable!("catalogue and dispatch disagree"),
    };
    Ok(SuiteReport { suite, checks })
}

pub fn run_all(knobs: &Knobs) -> Vec<SuiteReport> {
    suite_names()
        .map(|n| run_suite(n, knobs).expect("catalogued suite"))
        .collect()
}

fn check(id: &'static str, failure: Option<String>, summary: impl Into<String>) -> CheckResult {
    match failure {
        None => CheckResult {
            id,
            passed: true,
            detail: summary.into(),
        },
        Some(detail) => CheckResult {
            id,
            passed: false,
            detail,
        },
    }
}

fn group(spec: &str) -> MarkedGroup {
    MarkedGroup::new(spec.parse().expect("built-in spec"))
}

fn oracle(s: &str) -> Oracle {
    s.parse().expect("built-in oracle")
}

fn word(s: &str) -> ReducedWord {
    parse_word(s).expect("built-in word")
}

/// Uniform length in `0..=max_len`, then uniform admissible letters.
pub fn random_word<R: Rng>(rng: &mut R, max_len: usize) -> ReducedWord {
    let len = rng.gen_range(0..=max_len);
    let mut letters = Vec::with_capacity(len);
    for i in 0..len {
        let l = if i > 0 && !letters.last().copied().is_some_and(Letter::is_a) {
            Letter::A
        } else if i > 0 {
            Letter::K(KElement::NONTRIVIAL[rng.gen_range(0..7)])
        } else {
            Letter::ALL[rng.gen_range(0..8)]
        };
        letters.push(l);
    }
    ReducedWord::from_reduced(letters)
}

fn first_failure<T, I, F>(items: I, mut fails: F) -> Option<String>
where
    I: IntoIterator<Item = T>,
    F: FnMut(&T) -> Option<String>,
{
    items.into_iter().find_map(|t| fails(&t))
}

fn words_suite(k: &Knobs) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(k.seed);
    let raws: Vec<Vec<Letter>> = (0..500)
        .map(|_| {
            let n = rng.gen_range(0..=2 * k.max_len);
            (0..n).map(|_| Letter::ALL[rng.gen_range(0..8)]).collect()
        })
        .collect();
    let idem = first_failure(&raws, |raw| {
        let w = ReducedWord::reduce(raw.iter().copied());
        let again = ReducedWord::reduce(w.letters().iter().copied());
        (w != again).then(|| format!("reduce not idempotent on {w}"))
    });
    let inverse = first_failure(&raws, |raw| {
        let w = ReducedWord::reduce(raw.iter().copied());
        (!w.concat(&w.invert()).is_empty()).then(|| format!("{w} · {w}⁻¹ ≠ ε"))
    });
    let count = first_failure(0..=k.max_len, |&len| {
        let got = words_of_length(len).count() as u64;
        (got != normal_form_count(len)).then(|| {
            format!(
                "length {len}: {got} words, closed form {}",
                normal_form_count(len)
            )
        })
    });
    let all: Vec<ReducedWord> = words_up_to(k.small_len).collect();
    let order = first_failure(all.windows(2), |pair| {
        let key = |w: &ReducedWord| (w.len(), w.clone());
        (key(&pair[0]) >= key(&pair[1])).then(|| format!("{} before {}", pair[0], pair[1]))
    });
    vec![
        check("words.reduce-idempotent", idem, "500 random letter strings"),
        check(
            "words.inverse-cancels",
            inverse,
            "500 random letter strings",
        ),
        check(
            "words.normal-form-count",
            count,
            format!("lengths 0..={}", k.max_len),
        ),
        check(
            "words.shortlex-order",
            order,
            format!("{} words strictly increasing", all.len()),
        ),
    ]
}

fn oracle_suite() -> Vec<CheckResult> {
    let same = [
        ("0(00)", "(0)"),
        ("1201(201)", "(120)"),
        ("12(1212)", "(12)"),
        ("(012012)", "(012)"),
        ("0(120)", "(012)"),
    ];
    let canonical = first_failure(same, |(a, b)| {
        (oracle(a) != oracle(b)).then(|| format!("{a} and {b} differ"))
    });
    let samples = [
        "(0)", "(012)", "121(0)", "10(0)", "2(01)", "0120(12)", "(0112)",
    ];
    let orbit = first_failure(samples, |s| {
        let o = oracle(s);
        let orbit = o.orbit();
        let bound = o.prefix().len() + o.period().len();
        if orbit.len() > bound {
            return Some(format!("{s}: orbit of size {} > {bound}", orbit.len()));
        }
        (0..2 * bound).find_map(|m| {
            let shifted = o.shift_by(m);
            (0..bound)
                .any(|n| shifted.at(n) != o.at(n + m))
                .then(|| format!("{s}: shift_by({m}) is not σ^{m}"))
        })
    });
    let classes = [
        ("(012)", 0),
        ("(01)", 1),
        ("2(01)", 1),
        ("(0)", 2),
        ("121(0)", 2),
        ("0(1120)", 0),
    ];
    let classify = first_failure(classes, |(s, c)| {
        let got = oracle(s).classify();
        (got.index() != *c).then(|| format!("{s} classified as {got:?}"))
    });
    vec![
        check(
            "oracle.canonical-equality",
            canonical,
            "5 equivalent notations",
        ),
        check(
            "oracle.shift-orbit",
            orbit,
            "7 oracles, orbit bound and shift",
        ),
        check("oracle.classify", classify, "6 oracles"),
    ]
}

/// The simple-contraction block: products of distinct elements of
/// `K \ {1}`, read off literally.
const CONTRACTIONS: [(&str, &str); 21] = [
    ("bc", "d"),
    ("cd", "b"),
    ("db", "c"),
    ("BC", "d"),
    ("CD", "b"),
    ("DB", "c"),
    ("bC", "D"),
    ("cD", "B"),
    ("dB", "C"),
    ("Bc", "D"),
    ("Cd", "B"),
    ("Db", "C"),
    ("bB", "x"),
    ("cC", "x"),
    ("dD", "x"),
    ("bx", "B"),
    ("cx", "C"),
    ("dx", "D"),
    ("Bx", "b"),
    ("Cx", "c"),
    ("Dx", "d"),
];

pub fn contraction_table_mismatches() -> Vec<String> {
    let el = |c: char| KElement::from_name(c).expect("table letter");
    let mut bad = Vec::new();
    for (pair, prod) in CONTRACTIONS {
        let mut cs = pair.chars();
        let (u, v) = (el(cs.next().unwrap()), el(cs.next().unwrap()));
        let p = el(prod.chars().next().unwrap());
        for (l, r) in [(u, v), (v, u)] {
            if l.mul(r) != p {
                bad.push(format!(
                    "{}·{} = {}, table says {}",
                    l.name(),
                    r.name(),
                    l.mul(r).name(),
                    p.name()
                ));
            }
        }
    }
    for k in KElement::NONTRIVIAL {
        if !k.mul(k).is_identity() {
            bad.push(format!("{}² ≠ 1", k.name()));
        }
    }
    bad
}

fn contraction_suite() -> Vec<CheckResult> {
    let bad = contraction_table_mismatches();
    vec![check(
        "contraction.products",
        bad.first().cloned(),
        "49/49 products match",
    )]
}

fn sections_suite(k: &Knobs) -> Vec<CheckResult> {
    // portrait labels P of b, c, d by symbol; x is P everywhere, tilded = x · untilded
    let table = [
        (KElement::B, [true, true, false]),
        (KElement::C, [true, false, true]),
        (KElement::D, [false, true, true]),
        (KElement::X, [true, true, true]),
    ];
    let portraits = first_failure(Symbol::ALL, |&s| {
        table.iter().find_map(|&(g, labels)| {
            let expect = |p: bool| {
                if p {
                    FirstLevelAction::Swap
                } else {
                    FirstLevelAction::Trivial
                }
            };
            let tilded = g.mul(KElement::X);
            if pi0(g, s) != expect(labels[s.index()]) {
                return Some(format!("{} at {s}", g.name()));
            }
            (g != KElement::X && pi0(tilded, s) != expect(!labels[s.index()]))
                .then(|| format!("{} at {s}", tilded.name()))
        })
    });
    let convention = {
        let (l, r) = split(&word("x"), &oracle("(012)")).expect("even word");
        (l != word("a") || r != word("x")).then(|| format!("x = ({l}, {r})"))
    };
    let oracles = ["(012)", "(0)", "121(0)", "(01)"];
    let even_words: Vec<ReducedWord> = words_up_to(k.small_len)
        .filter(|w| w.a_count() % 2 == 0)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(k.seed);
    let homomorphism = first_failure(oracles, |s| {
        let o = oracle(s);
        (0..200).find_map(|_| {
            let u = &even_words[rng.gen_range(0..even_words.len())];
            let v = &even_words[rng.gen_range(0..even_words.len())];
            let (ul, ur) = split(u, &o).ok()?;
            let (vl, vr) = split(v, &o).ok()?;
            let (pl, pr) = split(&u.concat(v), &o).ok()?;
            (pl != ul.concat(&vl) || pr != ur.concat(&vr))
                .then(|| format!("split not multiplicative on {u}·{v} at {s}"))
        })
    });
    let bound = first_failure(oracles, |s| {
        let o = oracle(s);
        even_words.iter().find_map(|w| {
            let (l, r) = split(w, &o).ok()?;
            let cap = w.len().div_ceil(2);
            (l.len() > cap || r.len() > cap).then(|| format!("{w} at {s}: ({l}, {r})"))
        })
    });
    vec![
        check(
            "sections.portrait-tables",
            portraits,
            "8 generators × 3 symbols",
        ),
        check("sections.coordinate-convention", convention, "x = (a, x)"),
        check(
            "sections.split-homomorphism",
            homomorphism,
            "800 random products",
        ),
        check(
            "sections.split-length-bound",
            bound,
            format!("{} even words × 4 oracles", even_words.len()),
        ),
    ]
}

fn disagreement(g1: &MarkedGroup, g2: &MarkedGroup, max_len: usize) -> Option<String> {
    words_up_to(max_len)
        .find(|w| g1.is_identity(w) != g2.is_identity(w))
        .map(|w| format!("{} and {} disagree on {w}", g1.spec(), g2.spec()))
}

fn equivalence_suite(k: &Knobs) -> Vec<CheckResult> {
    let n = format!("all words of length ≤ {}", k.max_len);
    vec![
        check(
            "equivalence.alpha-exact-012",
            disagreement(&group("alpha@(012)"), &group("exact@(012)"), k.max_len),
            n.clone(),
        ),
        check(
            "equivalence.beta01-exact-01",
            disagreement(&group("beta-01@(01)"), &group("exact@(01)"), k.max_len),
            n,
        ),
    ]
}

fn implication(modified: &MarkedGroup, exact: &MarkedGroup, max_len: usize) -> Option<String> {
    words_up_to(max_len)
        .find(|w| modified.is_identity(w) && !exact.is_identity(w))
        .map(|w| {
            format!(
                "{w} trivial in {} but not in {}",
                modified.spec(),
                exact.spec()
            )
        })
}

fn surjection_suite(k: &Knobs) -> Vec<CheckResult> {
    let oracles = ["(0)", "(01)", "10(0)"];
    let alpha = first_failure(oracles, |o| {
        implication(
            &group(&format!("alpha@{o}")),
            &group(&format!("exact@{o}")),
            k.max_len,
        )
    });
    // β₀₁ needs 2 finitely often, which all three oracles satisfy
    let beta = first_failure(oracles, |o| {
        implication(
            &group(&format!("beta-01@{o}")),
            &group(&format!("exact@{o}")),
            k.max_len,
        )
    });
    let witnesses = [("d", "(0)", "alpha"), ("B", "(01)", "alpha")];
    let kernel = first_failure(witnesses, |(w, o, fam)| {
        let exact = group(&format!("exact@{o}"));
        let modified = group(&format!("{fam}@{o}"));
        let w = word(w);
        (!exact.is_identity(&w) || modified.is_identity(&w))
            .then(|| format!("{w} is not an exact-only relation at {o}"))
    });
    let n = format!("all words of length ≤ {} at (0), (01), 10(0)", k.max_len);
    vec![
        check("surjection.alpha-implies-exact", alpha, n.clone()),
        check("surjection.beta-implies-exact", beta, n),
        check("surjection.kernel-witnesses", kernel, "d at (0), B at (01)"),
    ]
}

/// Identity via the tree action: trivial on level `N` and every depth-`N`
/// section a generator acting trivially below.
pub fn trivial_by_action(w: &ReducedWord, o: &Oracle) -> bool {
    let n = nucleus_depth(w);
    if !acts_trivially(w, o, n) {
        return false;
    }
    let below = o.shift_by(n);
    match nucleus_at(w, o, n).expect("depth is the nucleus depth") {
        NucleusOutcome::Nucleus(nuc) => nuc.entries().iter().all(|e| match e {
            None => true,
            Some(Letter::A) => false,
            Some(Letter::K(k)) => generator_trivial(*k, &below),
        }),
        NucleusOutcome::NotInStabilizer { .. } => false,
    }
}

fn decider_suite(k: &Knobs) -> Vec<CheckResult> {
    let oracles = ["(012)", "(0)", "(01)", "121(0)", "0(12)"];
    let direct = first_failure(oracles, |s| {
        let o = oracle(s);
        let g = MarkedGroup::new(GroupSpec::exact(o.clone()));
        words_up_to(k.max_len)
            .find(|w| g.is_identity(w) != trivial_by_action(w, &o))
            .map(|w| format!("{w} at {s}"))
    });
    let mut rng = ChaCha8Rng::seed_from_u64(k.seed);
    let specs = [
        "exact@(012)",
        "exact@(0)",
        "alpha@(0)",
        "alpha@(01)",
        "beta-01@(0)",
        "beta-20@1(0)",
    ];
    let congruence = first_failure(specs, |s| {
        let g = group(s);
        let relations: Vec<ReducedWord> = words_up_to(k.small_len.min(4))
            .filter(|w| !w.is_empty() && g.is_identity(w))
            .take(20)
            .collect();
        relations.iter().find_map(|r| {
            (0..k.conjugators).find_map(|_| {
                let u = random_word(&mut rng, 6);
                (!g.is_identity(&r.conjugate(&u))).then(|| format!("{s}: {r} conjugated by {u}"))
            })
        })
    });
    let orders = [
        ("exact@(012)", "b", ElementOrder::Finite(2)),
        ("exact@(012)", "", ElementOrder::Finite(1)),
        ("exact@(012)", "ad", ElementOrder::Finite(4)),
        ("exact@(012)", "ax", ElementOrder::Unknown),
    ];
    let order = first_failure(orders, |(s, w, expected)| {
        let got = group(s).element_order(&word(w), 64);
        (got != *expected).then(|| format!("order of {w} in {s}: {got:?}"))
    });
    vec![
        check(
            "decider.direct-action",
            direct,
            format!("words of length ≤ {} at 5 oracles", k.max_len),
        ),
        check(
            "decider.congruence",
            congruence,
            format!("{} random conjugators per relation", k.conjugators),
        ),
        check("decider.element-order", order, "4 orders"),
    ]
}

const BALL_SPECS: [&str; 6] = [
    "exact@(0)",
    "alpha@(0)",
    "exact@(01)",
    "alpha@(01)",
    "beta-01@(0)",
    "exact@(012)",
];

fn balls_suite(k: &Knobs) -> Vec<CheckResult> {
    let examples = {
        let b = ball(&group("exact@(0)"), 1, k.limits);
        let a = ball(&group("alpha@(0)"), 1, k.limits);
        if b.representatives != vec![word(""), word("a"), word("b")] {
            Some(format!("exact@(0) radius 1: {:?}", b.representatives))
        } else if a.size() != 9 {
            Some(format!("alpha@(0) radius 1 has {} elements", a.size()))
        } else {
            BALL_SPECS
                .iter()
                .find(|s| ball(&group(s), 0, k.limits).size() != 1)
                .map(|s| format!("{s}: radius 0 is not {{ε}}"))
        }
    };
    let r = k.radius;
    let balls: Vec<_> = BALL_SPECS
        .iter()
        .map(|s| {
            let g = group(s);
            let b = ball(&g, r, k.limits);
            (s, g, b)
        })
        .collect();
    let distinct = first_failure(&balls, |(s, g, b)| {
        let reps = &b.representatives;
        (0..reps.len()).find_map(|i| {
            (i + 1..reps.len())
                .find(|&j| g.equal(&reps[i], &reps[j]))
                .map(|j| format!("{s}: {} = {}", reps[i], reps[j]))
        })
    });
    let cover = first_failure(&balls, |(s, g, b)| {
        words_up_to(r.min(3)).find_map(|w| {
            let hits = b.representatives.iter().filter(|v| g.equal(&w, v)).count();
            (hits != 1).then(|| format!("{s}: {w} equals {hits} representatives"))
        })
    });
    let monotone = first_failure(&balls, |(s, _, b)| {
        (b.sizes.windows(2).any(|p| p[0] > p[1]) || b.partial)
            .then(|| format!("{s}: sizes {:?}", b.sizes))
    });
    let free = first_failure(&balls, |(s, _, b)| {
        b.sizes
            .iter()
            .enumerate()
            .find(|&(r, &n)| n as u64 > free_ball_size(r))
            .map(|(r, n)| format!("{s}: |B({r})| = {n} exceeds the free bound"))
    })
    .or_else(|| {
        let b = ball(&group("exact@(012)"), 4, k.limits);
        (b.size() as u64 >= free_ball_size(4))
            .then(|| format!("exact@(012) has a free ball of radius 4 ({})", b.size()))
    });
    vec![
        check("balls.examples", examples, "radius 0 and 1"),
        check(
            "balls.representatives-distinct",
            distinct,
            format!("6 specs, radius {r}"),
        ),
        check(
            "balls.cover",
            cover,
            format!("6 specs, words up to length {}", r.min(3)),
        ),
        check("balls.monotone", monotone, "6 specs"),
        check(
            "balls.free-bound",
            free,
            "never above the free bound, strictly below at radius 4 for exact@(012)",
        ),
    ]
}

fn oande_suite(k: &Knobs) -> Vec<CheckResult> {
    let g1 = group("exact@(012)");
    let g2 = group("exact@012(120)");
    let cmp = balls_equal(&g1, &g2, k.radius);
    let m = metric(&g1, &g2, k.radius);
    let bound = 0.5f64.powi(k.radius as i32);
    vec![
        check(
            "oande.balls-equal",
            cmp.witness.map(|w| format!("balls differ on {w}")),
            format!("radius {}", k.radius),
        ),
        check(
            "oande.metric",
            (m.distance() > bound).then(|| format!("{m:?}")),
            format!("distance ≤ {bound}"),
        ),
    ]
}

fn metric_suite(k: &Knobs) -> Vec<CheckResult> {
    let specs = [
        "exact@(0)",
        "alpha@(0)",
        "exact@(01)",
        "alpha@(01)",
        "exact@(012)",
        "beta-01@(0)",
    ];
    let groups: Vec<MarkedGroup> = specs.iter().map(|s| group(s)).collect();
    let r = k.radius;
    let mut dist = vec![vec![0.0; groups.len()]; groups.len()];
    for i in 0..groups.len() {
        for j in 0..groups.len() {
            dist[i][j] = metric(&groups[i], &groups[j], r).distance();
        }
    }
    let n = groups.len();
    let ultra = (0..n)
        .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |l| (i, j, l))))
        .find(|&(i, j, l)| dist[i][l] > dist[i][j].max(dist[j][l]))
        .map(|(i, j, l)| format!("{} / {} / {}", specs[i], specs[j], specs[l]));
    let monotone = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find_map(|(i, j)| {
            let eq: Vec<bool> = (0..=r)
                .map(|m| balls_equal(&groups[i], &groups[j], m).equal)
                .collect();
            eq.windows(2)
                .any(|p| !p[0] && p[1])
                .then(|| format!("{} vs {}: {eq:?}", specs[i], specs[j]))
        });
    vec![
        check(
            "metric.ultrametric",
            ultra,
            format!("all triples of 6 specs at radius {r}"),
        ),
        check("metric.radius-monotone", monotone, format!("radii 0..={r}")),
    ]
}

/// `ω⁽ᵐ⁾`: the first `m` symbols of `(01)^∞` followed by `(012)^∞`.
pub fn convergent_oracle(m: usize) -> Oracle {
    let prefix = (0..m).map(|i| Symbol::ALL[i % 2]).collect();
    Oracle::new(prefix, Symbol::ALL.to_vec()).expect("non-empty period")
}

fn convergence_suite(k: &Knobs) -> Vec<CheckResult> {
    let limit = group("alpha@(01)");
    let ms = [2usize, 4, 6, 8];
    let groups: Vec<MarkedGroup> = ms
        .iter()
        .map(|&m| MarkedGroup::new(GroupSpec::exact(convergent_oracle(m))))
        .collect();
    let dists: Vec<f64> = groups
        .iter()
        .map(|g| metric(g, &limit, k.radius).distance())
        .collect();
    let monotone = dists
        .windows(2)
        .any(|p| p[1] > p[0])
        .then(|| format!("distances {dists:?}"));
    let threshold = ms.iter().zip(&groups).find_map(|(&m, g)| {
        (1..=k.radius)
            .filter(|&r| (m as f64) > ((2 * r) as f64).log2())
            .find(|&r| !balls_equal(g, &limit, r).equal)
            .map(|r| format!("m = {m}: balls of radius {r} differ"))
    });
    vec![
        check(
            "convergence.monotone",
            monotone,
            format!("m ∈ {{2,4,6,8}}, distances {dists:?}"),
        ),
        check(
            "convergence.threshold",
            threshold,
            format!("radii ≤ {} with m > log₂(2r)", k.radius),
        ),
    ]
}

fn growth_suite(k: &Knobs) -> Vec<CheckResult> {
    let r = k.growth_radius;
    let dihedral = {
        let b = ball(&group("exact@(0)"), r, k.limits);
        let expected: Vec<usize> = (0..=r).map(|i| 2 * i + 1).collect();
        (b.sizes != expected).then(|| format!("sizes {:?}", b.sizes))
    };
    let alpha = ball(&group("alpha@(01)"), r, k.limits);
    let exact = ball(&group("exact@(01)"), r, k.limits);
    let dominance = if alpha.partial || exact.partial {
        Some("element cap reached".to_string())
    } else if alpha.sizes.iter().zip(&exact.sizes).any(|(a, e)| a < e) {
        Some(format!("alpha {:?} < exact {:?}", alpha.sizes, exact.sizes))
    } else if alpha.sizes == exact.sizes {
        Some(format!("no strict inequality up to radius {r}"))
    } else {
        None
    };
    vec![
        check("growth.exact-0", dihedral, "|B(r)| = 2r + 1"),
        check(
            "growth.dominance",
            dominance,
            format!("alpha {:?} ≥ exact {:?}", alpha.sizes, exact.sizes),
        ),
    ]
}

fn spine_letters() -> [SpineLetter; 3] {
    [KElement::D, KElement::BT, KElement::CT].map(|y| SpineLetter::new(y).expect("nontrivial"))
}

fn vn_suite(k: &Knobs) -> Vec<CheckResult> {
    let g = group("alpha@(0)");
    let o = oracle("(0)");
    let range: Vec<i64> = (-k.vn_range..=k.vn_range).collect();
    let a = word("a");
    let ax = word("ax");
    let mut results = vec![Vec::new(); 6];
    for y in spine_letters() {
        let v = |n: i64| v_word(y, n);
        let name = y.letter();
        results[0].push(first_failure(range.iter().copied(), |&n| {
            (g.is_identity(&v(n)) || !g.is_identity(&v(n).pow(2)))
                .then(|| format!("v({name})_{n} is not an involution ≠ 1"))
        }));
        results[1].push(first_failure(range.iter().copied(), |&n| {
            (!g.equal(&v(n).conjugate(&a), &v(-n - 1)))
                .then(|| format!("v({name})_{n}^a ≠ v_{}", -n - 1))
        }));
        results[2].push(first_failure(range.iter().copied(), |&m| {
            range.iter().find_map(|&n| {
                (!g.is_identity(&v(m).commutator(&v(n))))
                    .then(|| format!("[v({name})_{m}, v_{n}] ≠ 1"))
            })
        }));
        results[3].push(first_failure(range.iter().copied(), |&m| {
            range.iter().filter(|&&n| n != m).find_map(|&n| {
                g.equal(&v(m), &v(n))
                    .then(|| format!("v({name})_{m} = v_{n}"))
            })
        }));
        results[4].push(first_failure(range.iter().copied(), |&n| {
            (!g.equal(&v(n).conjugate(&ax), &v(n + 1)))
                .then(|| format!("v({name})_{n}^(ax) ≠ v_{}", n + 1))
        }));
        results[5].push(first_failure(range.iter().copied(), |&n| {
            let (l, r) = match split(&v(n), &o) {
                Ok(p) => p,
                Err(e) => return Some(format!("v({name})_{n}: {e}")),
            };
            let (el, er) = if n % 2 == 0 {
                (ReducedWord::empty(), v(n / 2))
            } else {
                (v(-(n + 1) / 2), ReducedWord::empty())
            };
            (!g.equal(&l, &el) || !g.equal(&r, &er)).then(|| format!("v({name})_{n} = ({l}, {r})"))
        }));
    }
    let ids = [
        "vn.involution",
        "vn.a-conjugate",
        "vn.commute",
        "vn.distinct",
        "vn.ax-shift",
        "vn.split-parity",
    ];
    let summary = format!("y ∈ {{d, B, C}}, |n| ≤ {} at alpha@(0)", k.vn_range);
    ids.iter()
        .zip(results)
        .map(|(id, r)| check(id, r.into_iter().flatten().next(), summary.clone()))
        .collect()
}

/// Figure labels `V_p = v_k` for the first three levels, vertex order.
pub const FIGURE3: [(&str, i64); 15] = [
    ("", 0),
    ("0", -1),
    ("1", 0),
    ("00", 1),
    ("01", -1),
    ("10", -2),
    ("11", 0),
    ("000", -3),
    ("001", 1),
    ("010", 3),
    ("011", -1),
    ("100", 2),
    ("101", -2),
    ("110", -4),
    ("111", 0),
];

fn figure3_suite() -> Vec<CheckResult> {
    let labels = first_failure(FIGURE3, |(p, k)| {
        let got = v_index(p).expect("binary path");
        (got != *k).then(|| format!("V_{p} = v_{got}, figure says v_{k}"))
    });
    let [d, ..] = spine_letters();
    let words = first_failure(FIGURE3, |(p, k)| {
        (V_word(d, p).expect("binary path") != v_word(d, *k))
            .then(|| format!("V_{p} ≠ v_{k} as words"))
    });
    let o = oracle("(0)");
    let local = first_failure(FIGURE3, |(p, _)| {
        let v = V_word(d, p).expect("binary path");
        let tree = decompose(&v, &o, p.len());
        let Some(tree) = tree.tree() else {
            return Some(format!("V_{p} leaves the level-{} stabilizer", p.len()));
        };
        let nonempty: Vec<_> = tree
            .leaf_map()
            .into_iter()
            .filter(|(_, w)| !w.is_empty())
            .collect();
        (nonempty != vec![(p.to_string(), "d".to_string())])
            .then(|| format!("V_{p} has sections {nonempty:?}"))
    });
    vec![
        check("figure3.labels", labels, "15/15 labels match"),
        check("figure3.vertex-words", words, "15 words"),
        check(
            "figure3.local-sections",
            local,
            "y = d exactly at the vertex",
        ),
    ]
}

fn lamplighter_suite(k: &Knobs) -> Vec<CheckResult> {
    let g = group("alpha@(0)");
    let range = k.vn_range.min(3);
    let gens: Vec<(String, ReducedWord)> = spine_letters()
        .iter()
        .flat_map(|&y| {
            (-range..=range).map(move |n| (format!("v({})_{n}", y.letter()), v_word(y, n)))
        })
        .collect();
    let commute = first_failure(0..gens.len(), |&i| {
        (i + 1..gens.len()).find_map(|j| {
            (!g.is_identity(&gens[i].1.commutator(&gens[j].1)))
                .then(|| format!("[{}, {}] ≠ 1", gens[i].0, gens[j].0))
        })
    });
    let involutions = first_failure(&gens, |(name, v)| {
        (!g.is_identity(&v.pow(2)) || g.is_identity(v)).then(|| name.to_string())
    });
    let distinct = first_failure(0..gens.len(), |&i| {
        (i + 1..gens.len()).find_map(|j| {
            g.equal(&gens[i].1, &gens[j].1)
                .then(|| format!("{} = {}", gens[i].0, gens[j].0))
        })
    });
    let ax = word("ax");
    let shift = first_failure(spine_letters(), |&y| {
        (-range..=range).find_map(|n| {
            (!g.equal(&v_word(y, n).conjugate(&ax), &v_word(y, n + 1)))
                .then(|| format!("v({})_{n}^(ax) ≠ v_{}", y.letter(), n + 1))
        })
    });
    let [d, bt, ct] = spine_letters();
    let products = first_failure(-range..=range, |&n| {
        let p = v_word(d, n).concat(&v_word(bt, n)).concat(&v_word(ct, n));
        (!g.is_identity(&p.pow(2))).then(|| format!("v(d)_{n}·v(B)_{n}·v(C)_{n} squared ≠ 1"))
    });
    let exact = group("exact@(0)");
    let collapse = first_failure(
        [
            ("b", "c"),
            ("c", "D"),
            ("D", "x"),
            ("d", ""),
            ("B", ""),
            ("C", ""),
        ],
        |(u, v)| (!exact.equal(&word(u), &word(v))).then(|| format!("{u} ≠ {v} at exact@(0)")),
    );
    let summary = format!("y ∈ {{d, B, C}}, |n| ≤ {range} at alpha@(0)");
    vec![
        check("lamplighter.commute", commute, summary.clone()),
        check("lamplighter.involutions", involutions, summary.clone()),
        check("lamplighter.distinct", distinct, summary.clone()),
        check("lamplighter.shift", shift, summary.clone()),
        check("lamplighter.products", products, summary),
        check(
            "lamplighter.exact-collapse",
            collapse,
            "b = c = D = x and d = B = C = 1",
        ),
    ]
}

/// Oracles and pairs `(tail, partner)` exercising every branch of `W(ij)`.
pub const WIJ_CASES: [(&str, Symbol, Symbol); 8] = [
    ("121(0)", Symbol::Zero, Symbol::One),
    ("(0)", Symbol::Zero, Symbol::One),
    ("2(0)", Symbol::Zero, Symbol::One),
    ("1221(0)", Symbol::Zero, Symbol::One),
    ("2102(0)", Symbol::Zero, Symbol::One),
    ("20(1)", Symbol::One, Symbol::Two),
    ("201(2)", Symbol::Two, Symbol::Zero),
    ("01(0)", Symbol::Zero, Symbol::Two),
];

/// Verdicts of the three deciders on `W(ij)`: β_ij, α and the other β.
pub fn wij_verdicts(o: &Oracle, i: Symbol, j: Symbol) -> Result<(ReducedWord, [bool; 3])> {
    let w = w_ij(o, i, j)?;
    let l = i.third(j).expect("distinct symbols");
    let beta = MarkedGroup::new(GroupSpec::beta(i, j, o.clone())?);
    let alpha = MarkedGroup::new(GroupSpec::alpha(o.clone()));
    let other = MarkedGroup::new(GroupSpec::beta(i, l, o.clone())?);
    let verdicts = [
        beta.is_identity(&w),
        alpha.is_identity(&w),
        other.is_identity(&w),
    ];
    Ok((w, verdicts))
}

fn wij_suite() -> Vec<CheckResult> {
    let example = {
        let w = w_ij(&oracle("121(0)"), Symbol::Zero, Symbol::One).expect("valid");
        (w != word("BabaBabaBabaBaba")).then(|| format!("W(01) = {w}"))
    };
    let shape = first_failure(WIJ_CASES, |(s, i, j)| {
        let o = oracle(s);
        match Omega2Shape::of(&o, *i, *j) {
            Ok(Some(sh)) => {
                (sh.reassemble() != o || sh.kappa == 0).then(|| format!("{s}: shape {sh:?}"))
            }
            Ok(None) => None,
            Err(e) => Some(format!("{s}: {e}")),
        }
    });
    let contract = first_failure(WIJ_CASES, |(s, i, j)| {
        match wij_verdicts(&oracle(s), *i, *j) {
            Ok((_, [true, false, false])) => None,
            Ok((w, v)) => Some(format!("{s} pair {i}{j}: W = {w}, verdicts β/α/β' = {v:?}")),
            Err(e) => Some(format!("{s}: {e}")),
        }
    });
    let letters = first_failure(WIJ_CASES, |(s, i, j)| {
        let o = oracle(s);
        let w = w_ij(&o, *i, *j).ok()?;
        let spec = GroupSpec::beta(*i, *j, o.clone()).ok()?;
        let tolerated = match spec.family() {
            crate::wordproblem::DeciderFamily::Beta(p) => Letter::K(p.tolerated()),
            _ => unreachable!(),
        };
        let depth = g_depth(&spec, &w);
        match nucleus_at(&w, &o, depth) {
            Ok(NucleusOutcome::Nucleus(n)) => n
                .entries()
                .iter()
                .any(|e| e.is_some_and(|l| l != tolerated))
                .then(|| format!("{s}: nucleus {}", n.to_json())),
            other => Some(format!("{s}: {other:?}")),
        }
    });
    vec![
        check("wij.example", example, "W(01) at 121(0) = (Baba)⁴"),
        check("wij.shape", shape, "8 oracles reassemble"),
        check(
            "wij.contract",
            contract,
            "β accepts, α and the other β reject, 8 cases",
        ),
        check(
            "wij.nucleus-letters",
            letters,
            "nucleus entries are ε or e_ij",
        ),
    ]
}

fn g_depth(spec: &GroupSpec, w: &ReducedWord) -> usize {
    MarkedGroup::new(spec.clone()).verdict(w).depth_used
}

fn fmap_suite(k: &Knobs) -> Vec<CheckResult> {
    let beta = group("beta-01@(0)");
    let alpha = group("alpha@(0)");
    let iso = words_up_to(k.small_len)
        .find(|w| beta.is_identity(w) != alpha.is_identity(&f_map(w)))
        .map(|w| format!("{w} ↦ {}", f_map(&w)));
    vec![check(
        "fmap.isomorphism",
        iso,
        format!("all words of length ≤ {}", k.small_len),
    )]
}

fn distinct_suite(k: &Knobs) -> Vec<CheckResult> {
    let specs = ["exact@(0)", "alpha@(0)", "beta-01@(0)", "beta-20@(0)"];
    let groups: Vec<MarkedGroup> = specs.iter().map(|s| group(s)).collect();
    let search = |g1: &MarkedGroup, g2: &MarkedGroup| match find_distinguishing_word(
        g1,
        g2,
        k.distinct_len,
        k.limits.max_words,
    ) {
        Ok(Some(w)) => Ok(w),
        Ok(None) => Err(format!(
            "{} and {} agree up to length {}",
            g1.spec(),
            g2.spec(),
            k.distinct_len
        )),
        Err(e) => Err(e.to_string()),
    };
    let mut found = Vec::new();
    let mut families = None;
    'pairs: for i in 0..groups.len() {
        for j in i + 1..groups.len() {
            match search(&groups[i], &groups[j]) {
                Ok(w) => found.push(format!("{}/{}: {w}", specs[i], specs[j])),
                Err(e) => {
                    families = Some(e);
                    break 'pairs;
                }
            }
        }
    }
    let (oracles, summary) = match search(&group("alpha@(0)"), &group("alpha@(1)")) {
        Ok(w) => (None, format!("alpha@(0)/alpha@(1): {w}")),
        Err(e) => (Some(e), String::new()),
    };
    vec![
        check("distinct.families", families, found.join(", ")),
        check("distinct.oracles", oracles, summary),
    ]
}

/// `⌈log₂(2r)⌉`, the prefix length beyond which balls of radius `r` agree.
pub fn agreement_prefix(r: usize) -> usize {
    ceil_log2(2 * r.max(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::OracleClass;

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(matches!(
            run_suite("nope", &Knobs::quick()),
            Err(Error::UnknownSuite(_))
        ));
    }

    #[test]
    fn catalogue_matches_reported_ids() {
        for (name, ids) in CATALOGUE {
            let report = run_suite(name, &Knobs::quick()).unwrap();
            let got: Vec<&str> = report.checks.iter().map(|c| c.id).collect();
            assert_eq!(&got, ids, "suite {name}");
            assert!(report.passed(), "{}", report.table());
        }
    }

    #[test]
    fn random_words_are_reduced_and_seeded() {
        let mut r1 = ChaCha8Rng::seed_from_u64(7);
        let mut r2 = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let w = random_word(&mut r1, 6);
            assert!(w.len() <= 6);
            assert_eq!(w, random_word(&mut r2, 6));
        }
    }

    #[test]
    fn convergent_oracles() {
        assert_eq!(
            convergent_oracle(2).to_string(),
            "01(012)".parse::<Oracle>().unwrap().to_string()
        );
        assert_eq!(convergent_oracle(3), "010(012)".parse().unwrap());
        assert!(matches!(
            convergent_oracle(4).classify(),
            OracleClass::Omega0 { .. }
        ));
    }
}
