use std::cmp::Ordering;

use num_bigint::BigInt;
use proptest::prelude::*;

use valkit_core::geometry::{fixed_points, word_to_matrix};
use valkit_core::{markov_tree, PeriodicWord, QuadSurd};

fn word() -> impl Strategy<Value = PeriodicWord> {
    prop::collection::vec(1u64..=10, 1..=12).prop_map(|v| PeriodicWord::new(v).unwrap())
}

fn surd() -> impl Strategy<Value = QuadSurd> {
    (-50i64..50, 1i64..20, 1i64..30).prop_map(|(p, q, r)| QuadSurd::new(p, q, r, 7).unwrap())
}

proptest! {
    #[test]
    fn period_round_trip(w in word()) {
        let x = QuadSurd::value_of_period(&w).unwrap();
        let cf = x.cf_expand().unwrap();
        prop_assert!(cf.preperiod.is_empty());
        prop_assert_eq!(cf.period_word().unwrap(), w.primitive_root());
        let back = QuadSurd::value_of_period(&cf.period_word().unwrap()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn fixed_point_is_value_of_period(w in word()) {
        let m = word_to_matrix(&w.even_form()).unwrap();
        let fp = fixed_points(&m).unwrap();
        prop_assert_eq!(&fp.attracting, &QuadSurd::value_of_period(&w).unwrap());
        prop_assert_eq!(fp.attracting.mobius(&m).unwrap(), fp.attracting.clone());
        prop_assert!(fp.repelling.to_f64() < 0.0 && fp.repelling.to_f64() > -1.0);
    }

    #[test]
    fn field_arithmetic(a in surd(), b in surd()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a.clone());
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        let (n, den) = a.norm();
        let prod = &a * &a.conjugate();
        prop_assert_eq!(prod, QuadSurd::new(n, 0, den, 7).unwrap());
    }

    #[test]
    fn order_and_floor_agree_with_floats(a in surd(), b in surd()) {
        let (x, y) = (a.to_f64(), b.to_f64());
        if (x - y).abs() > 1e-9 {
            prop_assert_eq!(a.cmp_exact(&b), x.partial_cmp(&y).unwrap());
        }
        if (x - x.round()).abs() > 1e-9 {
            prop_assert_eq!(a.floor(), BigInt::from(x.floor() as i64));
        }
        prop_assert_eq!(a.cmp_exact(&a), Ordering::Equal);
    }

    #[test]
    fn word_laws(w in word(), i in 1usize..12, j in 1usize..12) {
        let n = w.len();
        let (i, j) = ((i - 1) % n + 1, (j - 1) % n + 1);
        let twice = w.rotation(i).unwrap().rotation(j).unwrap();
        prop_assert_eq!(twice, w.rotation((i + j - 2) % n + 1).unwrap());
        prop_assert_eq!(w.opposite().opposite(), w.clone());
        prop_assert_eq!(w.even_form().len() % 2, 0);
        let json = serde_json::to_string(&w).unwrap();
        let back: PeriodicWord = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, w);
    }
}

#[test]
fn tree_words_are_pair_aligned() {
    let tree = markov_tree(6).unwrap();
    assert_eq!(tree.nodes().len(), 127);
    for node in tree.nodes() {
        let w = node.word.letters();
        assert!(node.word.is_markov_alphabet());
        assert!(w.chunks(2).all(|p| p.len() == 2 && p[0] == p[1]), "{}", node.word);
        if let Some(p) = node.parent {
            assert_eq!(tree.nodes()[p].depth + 1, node.depth);
        }
    }
    // a word strictly between its neighbours in value
    for node in tree.nodes() {
        let v = QuadSurd::value_of_period(&node.word).unwrap();
        let l = QuadSurd::value_of_period(&node.left).unwrap();
        let r = QuadSurd::value_of_period(&node.right).unwrap();
        let (lo, hi) = if l.cmp_exact(&r) == Ordering::Less { (l, r) } else { (r, l) };
        assert_eq!(v.cmp_exact(&lo), Ordering::Greater);
        assert_eq!(v.cmp_exact(&hi), Ordering::Less);
    }
}

#[test]
fn rejects_bad_words() {
    assert!(PeriodicWord::new(vec![]).is_err());
    assert!(PeriodicWord::new(vec![0]).is_err());
    assert!(serde_json::from_str::<PeriodicWord>("[1,0]").is_err());
}
