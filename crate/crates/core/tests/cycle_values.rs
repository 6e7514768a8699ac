use num_bigint::BigInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use valkit_core::cycle::{check_goodbad, check_monotone_d, cycle_integral_direct, surd_period, DirectPath};
use valkit_core::modfunc::j_coefficients;
use valkit_core::{re_val, val_complex, Error, ModularFunction, PeriodicWord, Precision, QuadSurd, ValOptions};

fn w(v: &[u64]) -> PeriodicWord {
    PeriodicWord::new(v.to_vec()).unwrap()
}

fn val(v: &[u64]) -> f64 {
    re_val(&ModularFunction::j(), &w(v), &ValOptions::default()).unwrap().re_val
}

#[test]
fn pinned_values() {
    // computed once by this tool through both routes and pinned
    for (word, want) in [
        (&[1, 2][..], 709.7923590080),
        (&[2, 2, 1, 1][..], 708.90991972),
        (&[3, 1, 4, 1][..], 714.64058593),
    ] {
        assert!((val(word) - want).abs() < 1e-7, "{word:?}");
    }
}

#[test]
fn constant_function() {
    let r = re_val(&ModularFunction::one(), &w(&[1, 1]), &ValOptions::default()).unwrap();
    assert!((r.re_val - 1.0).abs() < 1e-12);
}

#[test]
fn extended_precision_agrees() {
    let opts = ValOptions {
        tol: 1e-11,
        precision: Precision::Extended { bits: 192 },
    };
    let hi = re_val(&ModularFunction::j(), &w(&[1, 2]), &opts).unwrap().re_val;
    assert!((hi - val(&[1, 2])).abs() < 1e-9);
}

#[test]
fn truncation_is_honest() {
    let short = ModularFunction::j();
    let long = ModularFunction::j_with_terms(120).unwrap();
    for t in [std::f64::consts::FRAC_PI_3, 1.3, std::f64::consts::FRAC_PI_2] {
        let z = Complex64::from_polar(1.0, t);
        let a = short.evaluate_reduced(z).unwrap();
        let b = long.evaluate_reduced(z).unwrap();
        assert!((a.value - b.value).norm() <= a.tail_bound.max(1e-12 * a.value.norm()));
    }
    let c = j_coefficients(3).unwrap();
    assert_eq!(c, vec![1.into(), 744.into(), 196884.into(), 21493760.into(), BigInt::from(864299970u64)]);
}

#[test]
fn surd_input_uses_its_period() {
    let x = QuadSurd::new(1, 1, 2, 3).unwrap();
    let (period, conj) = surd_period(&x).unwrap();
    assert_eq!(period, w(&[1, 2]));
    assert!(!conj);
    // one extra digit in front: same cycle, traversed in the conjugate sense
    let y = x.recip().unwrap().add_int(&BigInt::from(4));
    assert!(surd_period(&y).unwrap().1);
}

#[test]
fn rotation_and_opposite() {
    let j = ModularFunction::j();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let len = 2 * rng.random_range(2..=4);
        let word = PeriodicWord::new((0..len).map(|_| rng.random_range(1..=6)).collect()).unwrap();
        let v = val_complex(&j, &word, DirectPath::default(), 1e-11).unwrap();
        let im = v.im_val.unwrap();
        let odd = val_complex(&j, &word.rotation(2).unwrap(), DirectPath::default(), 1e-11).unwrap();
        let even = val_complex(&j, &word.rotation(3).unwrap(), DirectPath::default(), 1e-11).unwrap();
        let op = val_complex(&j, &word.opposite(), DirectPath::default(), 1e-11).unwrap();
        for (r, sign) in [(odd, -1.0), (even, 1.0), (op, 1.0)] {
            assert!((r.re_val - v.re_val).abs() < 1e-8);
            assert!((r.im_val.unwrap() - sign * im).abs() < 1e-8, "{word}");
        }
    }
}

#[test]
fn geodesic_path_refuses_long_words() {
    let r = cycle_integral_direct(&ModularFunction::j(), &w(&[5, 1, 7, 2, 9, 3]), DirectPath::Geodesic { tau0: None }, 1e-8);
    assert!(matches!(r, Err(Error::PathSingularity(_))));
}

#[test]
fn goodbad_on_random_words() {
    let grid: Vec<f64> = (0..=40).map(|k| std::f64::consts::FRAC_PI_3 + std::f64::consts::FRAC_PI_6 * k as f64 / 40.0).collect();
    assert!(check_goodbad(&w(&[1, 1]), &grid, 1e-10).unwrap().min_total.abs() < 1e-12);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let len = rng.random_range(1..=12);
        let word = PeriodicWord::new((0..len).map(|_| rng.random_range(1..=10)).collect()).unwrap();
        let rep = check_goodbad(&word, &grid, 1e-10).unwrap();
        assert!(rep.holds, "{word}: {rep:?}");
    }
}

#[test]
fn monotone_gap_of_a_word_with_itself() {
    let grid: Vec<f64> = (0..=16).map(|k| 1.05 + 0.03 * k as f64).collect();
    let rep = check_monotone_d(&w(&[3, 1]), &w(&[3, 1]), &grid, 0.0).unwrap();
    assert!(rep.decreasing && rep.criterion_holds);
    assert!(rep.max_step.abs() < 1e-15);
}
