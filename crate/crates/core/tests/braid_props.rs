use num_traits::One;
use proptest::prelude::*;

use qshuffle::braid::{all_permutations, deconcat_split, enumerate_shuffles, reduced_word};
use qshuffle::{Braiding, CartanDatum, Content, Field, Generic, LinComb, Letter, QField, Regime, WeightSpec, Word};

fn sl3() -> Braiding<Generic> {
    let d = CartanDatum::sl(3);
    let lam = WeightSpec::new(&d, vec![1, 1]).unwrap();
    Braiding::new(&d, Some(&lam), Regime::Generic).unwrap()
}

fn q(k: i64) -> Generic {
    Generic::qpow(Regime::Generic, k).unwrap()
}

fn letter() -> impl Strategy<Value = Letter> {
    prop_oneof![Just(Letter::F(0)), Just(Letter::F(1)), Just(Letter::V)]
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(), 0..=max).prop_map(|l| Word::from_letters(&l))
}

fn w(letters: &[Letter]) -> Word {
    Word::from_letters(letters)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn shuffle_is_associative(a in word(2), b in word(2), c in word(2)) {
        let br = sl3();
        let (a, b, c) = (LinComb::word(a), LinComb::word(b), LinComb::word(c));
        let left = br.shuffle_product(&br.shuffle_product(&a, &b), &c);
        let right = br.shuffle_product(&a, &br.shuffle_product(&b, &c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn shuffle_preserves_content(a in word(3), b in word(3)) {
        let br = sl3();
        let expect = a.content(2).add(&b.content(2));
        let p = br.shuffle_words(&a, &b);
        for (u, _) in p.iter() {
            prop_assert_eq!(u.content(2), expect.clone());
        }
    }

    #[test]
    fn symmetrizer_is_sum_over_permutations(x in word(4)) {
        let br = sl3();
        let n = x.len();
        let mut oracle = LinComb::zero();
        let base = LinComb::word(x.clone());
        for perm in all_permutations(n) {
            let t = br.matsumoto_action(&perm, &base).unwrap();
            oracle.add_scaled(&t, &Generic::one());
        }
        prop_assert_eq!(br.symmetrize_word(&x), oracle);
    }

    #[test]
    fn braid_relations_hold(x in word(4).prop_filter("needs three letters", |w| w.len() >= 3)) {
        let br = sl3();
        let base = LinComb::word(x.clone());
        for i in 1..x.len() - 1 {
            let l = br.apply_generators(&[i, i + 1, i], &base).unwrap();
            let r = br.apply_generators(&[i + 1, i, i + 1], &base).unwrap();
            prop_assert_eq!(l, r);
        }
    }

    #[test]
    fn reduced_words_have_inversion_length(perm in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle()) {
        let inversions = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        prop_assert_eq!(reduced_word(&perm).len(), inversions);
    }
}

#[test]
fn symmetrizer_examples() {
    let d = CartanDatum::sl(2);
    let br: Braiding<Generic> = Braiding::new(&d, None, Regime::Generic).unwrap();
    let m = br.total_symmetrizer(&Content::new(vec![2], 0));
    assert_eq!(m.to_dense(), vec![vec![q(0) + q(2)]]);

    let br3 = sl3();
    let m = br3.total_symmetrizer(&Content::new(vec![1, 1], 0));
    assert_eq!(m.to_dense(), vec![vec![q(0), q(-1)], vec![q(-1), q(0)]]);
}

#[test]
fn quantum_binomial_kills_serre_word() {
    // In sl2 at l = 3 the symmetrizer of F F F vanishes: [3]_q! = 0.
    let d = CartanDatum::sl(2);
    let br: Braiding<qshuffle::AtRootOfUnity> = Braiding::new(&d, None, Regime::root_of_unity(3).unwrap()).unwrap();
    let fff = w(&[Letter::F(0); 3]);
    assert!(br.symmetrize_word(&fff).is_zero());
    assert!(!br.symmetrize_word(&w(&[Letter::F(0); 2])).is_zero());
}

#[test]
fn v_letter_braiding() {
    let br = sl3();
    // e(F_i, v) = e(v, F_i) = -m_i and e(v, v) = 2
    assert_eq!(br.exponent(Letter::F(0), Letter::V), -1);
    assert_eq!(br.exponent(Letter::V, Letter::F(1)), -1);
    assert_eq!(br.exponent(Letter::V, Letter::V), 2);
    let s = br.shuffle_words(&w(&[Letter::F(0)]), &w(&[Letter::V]));
    assert_eq!(s.coeff(&w(&[Letter::F(0), Letter::V])), q(0));
    assert_eq!(s.coeff(&w(&[Letter::V, Letter::F(0)])), q(-1));
}

#[test]
fn deconcatenation_example() {
    let br = sl3();
    let x = br.symmetrize_word(&w(&[Letter::F(0), Letter::F(1)]));
    let parts = deconcat_split(&x, 1);
    assert_eq!(parts.len(), 2);
    for (a, b, c) in parts {
        assert_eq!(a.len(), 1);
        assert_eq!(b.len(), 1);
        assert!(c == q(0) || c == q(-1));
    }
    assert!(deconcat_split(&x, 3).is_empty());
}

#[test]
fn shuffle_counts() {
    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
    for p in 0..=4 {
        for r in 0..=4 {
            let s = enumerate_shuffles(p, r);
            assert_eq!(s.len(), binom(p + r, p));
            for perm in &s {
                let mut inv = vec![0; p + r];
                for (src, &dst) in perm.iter().enumerate() {
                    inv[dst] = src;
                }
                assert!(inv[..p].windows(2).all(|x| x[0] < x[1]));
                assert!(inv[p..].windows(2).all(|x| x[0] < x[1]));
            }
        }
    }
    assert_eq!(all_permutations(4).len(), 24);
}

#[test]
fn from_i64_agrees_with_units() {
    assert_eq!(Generic::from_i64(3), q(0) + q(0) + q(0));
}
