mod common;

use overgroup::action::level_permutation;
use overgroup::constructions::{v_index, v_word, xi, SpineLetter, V_word, XiRule};
use overgroup::markedspace::{ball, balls_equal, metric, Limits};
use overgroup::sections::{split, split_at_symbol};
use overgroup::words::{parse_raw, parse_word};
use overgroup::{GroupSpec, KElement, Letter, MarkedGroup, Oracle, ReducedWord, Symbol};
use proptest::prelude::*;

const ORACLES: [&str; 8] = [
    "(0)", "(1)", "(01)", "(012)", "121(0)", "10(0)", "0(12)", "2(01)",
];

fn letter_string(max_len: usize) -> impl Strategy<Value = String> {
    prop::collection::vec(
        prop::sample::select("abcdxBCD".chars().collect::<Vec<_>>()),
        0..=max_len,
    )
    .prop_map(|cs| cs.into_iter().collect())
}

fn reduced(max_len: usize) -> impl Strategy<Value = ReducedWord> {
    letter_string(max_len).prop_map(|s| parse_word(&s).unwrap())
}

fn even_reduced(max_len: usize) -> impl Strategy<Value = ReducedWord> {
    reduced(max_len).prop_map(|w| {
        if w.a_count() % 2 == 1 {
            w.push(Letter::A)
        } else {
            w
        }
    })
}

fn oracle_text() -> impl Strategy<Value = &'static str> {
    prop::sample::select(ORACLES.to_vec())
}

fn symbols(min: usize, max: usize) -> impl Strategy<Value = Vec<Symbol>> {
    prop::collection::vec(prop::sample::select(Symbol::ALL.to_vec()), min..=max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reduction_is_idempotent(s in letter_string(24)) {
        let w = parse_word(&s).unwrap();
        let again = ReducedWord::reduce(w.letters().iter().copied());
        prop_assert_eq!(&again, &w);
        prop_assert!(w.len() <= s.len());
    }

    #[test]
    fn word_times_inverse_is_empty(w in reduced(20)) {
        prop_assert!(w.concat(&w.invert()).is_empty());
        prop_assert!(w.invert().concat(&w).is_empty());
    }

    #[test]
    fn reduction_respects_concatenation(s in letter_string(12), t in letter_string(12)) {
        let joined = parse_word(&format!("{s}{t}")).unwrap();
        prop_assert_eq!(joined, parse_word(&s).unwrap().concat(&parse_word(&t).unwrap()));
    }

    #[test]
    fn display_round_trips(w in reduced(16)) {
        prop_assert_eq!(parse_word(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn split_is_multiplicative(u in even_reduced(12), v in even_reduced(12), o in oracle_text()) {
        let o: Oracle = o.parse().unwrap();
        let (ul, ur) = split(&u, &o).unwrap();
        let (vl, vr) = split(&v, &o).unwrap();
        let (pl, pr) = split(&u.concat(&v), &o).unwrap();
        prop_assert_eq!(pl, ul.concat(&vl));
        prop_assert_eq!(pr, ur.concat(&vr));
    }

    #[test]
    fn sections_are_at_most_half_as_long(w in even_reduced(30), s in prop::sample::select(Symbol::ALL.to_vec())) {
        let (l, r) = split_at_symbol(&w, s).unwrap();
        prop_assert!(l.len() <= w.len().div_ceil(2));
        prop_assert!(r.len() <= w.len().div_ceil(2));
    }

    #[test]
    fn odd_words_do_not_split(w in reduced(12)) {
        let o: Oracle = "(012)".parse().unwrap();
        prop_assert_eq!(split(&w, &o).is_ok(), w.a_count() % 2 == 0);
    }

    #[test]
    fn tree_action_matches_portraits(s in letter_string(10), o in oracle_text(), level in 0usize..7) {
        let w = parse_word(&s).unwrap();
        let seq = common::Seq::parse(o);
        let o: Oracle = o.parse().unwrap();
        // the raw string and its reduction act identically
        prop_assert_eq!(level_permutation(&w, &o, level), common::permutation(&s, &seq, level));
    }

    #[test]
    fn exact_decider_matches_portrait_action(s in letter_string(12), o in oracle_text()) {
        let w = parse_word(&s).unwrap();
        let seq = common::Seq::parse(o);
        let g = MarkedGroup::new(GroupSpec::exact(o.parse().unwrap()));
        prop_assert_eq!(g.is_identity(&w), common::exact_identity(&w.to_string(), &seq), "{} at {}", w, o);
    }

    #[test]
    fn modified_relations_hold_in_the_overgroup(w in reduced(10), o in prop::sample::select(vec!["(0)", "(01)", "10(0)", "121(0)", "(1)"])) {
        let exact = MarkedGroup::new(format!("exact@{o}").parse().unwrap());
        for fam in ["alpha", "beta-01"] {
            let g = MarkedGroup::new(format!("{fam}@{o}").parse().unwrap());
            if g.is_identity(&w) {
                prop_assert!(exact.is_identity(&w), "{} trivial in {} only", w, g.spec());
            }
        }
    }

    #[test]
    fn relations_are_conjugation_invariant(
        r in prop::sample::select(vec!["d", "B", "adadadad", "BaBa", "bcd", "aBaBaBaB", "acacacac"]),
        u in reduced(6),
        spec in prop::sample::select(vec!["exact@(0)", "alpha@(0)", "beta-01@(0)", "exact@(01)", "alpha@(012)", "exact@(012)"]),
    ) {
        let g = MarkedGroup::new(spec.parse().unwrap());
        let r = parse_word(r).unwrap();
        prop_assert_eq!(g.is_identity(&r), g.is_identity(&r.conjugate(&u)));
    }

    #[test]
    fn equality_is_symmetric(u in reduced(6), v in reduced(6), spec in prop::sample::select(vec!["exact@(0)", "alpha@(01)", "beta-20@1(0)"])) {
        let g = MarkedGroup::new(spec.parse().unwrap());
        prop_assert_eq!(g.equal(&u, &v), g.equal(&v, &u));
        prop_assert!(g.equal(&u, &u));
    }

    #[test]
    fn oracle_shift_invariants(prefix in symbols(0, 5), period in symbols(1, 4), n in 1usize..20) {
        let o = Oracle::new(prefix.clone(), period.clone()).unwrap();
        let shifted = o.shift();
        prop_assert_eq!(shifted.symbol_at(n).unwrap(), o.symbol_at(n + 1).unwrap());
        prop_assert_eq!(o.shift_by(n).symbol_at(1).unwrap(), o.symbol_at(n + 1).unwrap());
        prop_assert!(o.orbit().len() <= prefix.len() + period.len());
        prop_assert!(o.orbit().contains(&o.shift_by(n)));
        prop_assert_eq!(o.to_string().parse::<Oracle>().unwrap(), o.clone());
        prop_assert_eq!(o.recurring().len(), period.iter().collect::<std::collections::BTreeSet<_>>().len());
    }

    #[test]
    fn oracles_are_equal_iff_sequences_are(p1 in symbols(0, 3), q1 in symbols(1, 3), p2 in symbols(0, 3), q2 in symbols(1, 3)) {
        let o1 = Oracle::new(p1, q1).unwrap();
        let o2 = Oracle::new(p2, q2).unwrap();
        // sequences agreeing on prefix + lcm of periods agree everywhere
        let same = (1..=3 + 3 + 6).all(|n| o1.symbol_at(n).unwrap() == o2.symbol_at(n).unwrap());
        prop_assert_eq!(o1 == o2, same);
    }

    #[test]
    fn xi_acts_on_indices(n in -30i64..30, y in prop::sample::select(vec![KElement::D, KElement::BT, KElement::CT])) {
        let y = SpineLetter::new(y).unwrap();
        prop_assert_eq!(xi(XiRule::One, &v_word(y, n), y).unwrap(), v_word(y, 2 * n));
        prop_assert_eq!(xi(XiRule::Zero, &v_word(y, n), y).unwrap(), v_word(y, -2 * n - 1));
    }

    #[test]
    fn vertex_words_are_indexed_conjugates(path in "[01]{0,7}") {
        let y = SpineLetter::new(KElement::D).unwrap();
        prop_assert_eq!(V_word(y, &path).unwrap(), v_word(y, v_index(&path).unwrap()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ball_invariants(spec in prop::sample::select(vec!["exact@(0)", "alpha@(0)", "exact@(01)", "beta-01@(0)", "exact@121(0)", "beta-20@1(0)"]), r in 0usize..3) {
        let g = MarkedGroup::new(spec.parse().unwrap());
        let b = ball(&g, r, Limits::default());
        prop_assert!(!b.partial);
        prop_assert_eq!(b.sizes.len(), r + 1);
        prop_assert!(b.sizes.windows(2).all(|p| p[0] <= p[1]));
        for (i, u) in b.representatives.iter().enumerate() {
            prop_assert!(u.len() <= r);
            for v in &b.representatives[i + 1..] {
                prop_assert!(!g.equal(u, v));
            }
        }
        for w in overgroup::words::words_up_to(r) {
            let hits = b.representatives.iter().filter(|v| g.equal(&w, v)).count();
            prop_assert_eq!(hits, 1, "{}", w);
            // representatives are shortlex-least
            let rep = b.representatives.iter().find(|v| g.equal(&w, v)).unwrap();
            prop_assert!((rep.len(), rep) <= (w.len(), &w));
        }
    }

    #[test]
    fn metric_is_symmetric_and_nested(
        s1 in prop::sample::select(vec!["exact@(0)", "alpha@(0)", "exact@(01)", "alpha@(01)", "beta-01@(0)"]),
        s2 in prop::sample::select(vec!["exact@(0)", "alpha@(0)", "exact@(01)", "alpha@(01)", "beta-01@(0)"]),
    ) {
        let g1 = MarkedGroup::new(s1.parse().unwrap());
        let g2 = MarkedGroup::new(s2.parse().unwrap());
        prop_assert_eq!(metric(&g1, &g2, 3), metric(&g2, &g1, 3));
        let eq: Vec<bool> = (0..=3).map(|n| balls_equal(&g1, &g2, n).equal).collect();
        prop_assert!(eq.windows(2).all(|p| p[0] || !p[1]));
        prop_assert!(eq[0]);
    }
}

#[test]
fn raw_parse_reports_position() {
    match parse_raw("ab q") {
        Err(overgroup::Error::ParseWord { ch, pos }) => {
            assert_eq!(ch, 'q');
            assert_eq!(pos, 3);
        }
        other => panic!("{other:?}"),
    }
}
