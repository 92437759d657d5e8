//! Property tests over the public API.

use proptest::collection::vec;
use proptest::prelude::*;

use tropvar::construct::{factor_witness, ut_separating_pair};
use tropvar::plactic::{knuth_closure, Rho, Tableau, CLOSURE_CAP};
use tropvar::tropical::{CompoundDigraph, Label, Permutation, TropMatrix, TropValue};
use tropvar::verify::{check_satisfaction, replay, SamplerConfig, Shape};
use tropvar::word::{Identity, Letter, Word};

fn arb_value() -> impl Strategy<Value = TropValue> {
    prop_oneof![1 => Just(TropValue::NEG_INF), 4 => (-9i64..=9).prop_map(TropValue::fin)]
}

fn arb_matrix(n: usize) -> impl Strategy<Value = TropMatrix> {
    vec(arb_value(), n * n).prop_map(move |v| TropMatrix::from_fn(n, |i, j| v[i * n + j].clone()))
}

fn arb_ut(n: usize) -> impl Strategy<Value = TropMatrix> {
    arb_matrix(n).prop_map(move |m| TropMatrix::from_fn(n, |i, j| if i > j { TropValue::NEG_INF } else { m.get(i, j).clone() }))
}

fn arb_word(max: usize) -> impl Strategy<Value = Word> {
    vec(prop_oneof![Just(Letter::A), Just(Letter::B)], 1..=max).prop_map(Word::new)
}

fn arb_invertible(n: usize) -> impl Strategy<Value = TropMatrix> {
    (Just((0..n).collect::<Vec<usize>>()).prop_shuffle(), vec(-9i64..=9, n)).prop_map(|(p, w)| {
        let w: Vec<TropValue> = w.into_iter().map(TropValue::fin).collect();
        TropMatrix::permutation(&Permutation::new(p).unwrap(), &w)
    })
}

fn eval(w: &Word, a: &TropMatrix, b: &TropMatrix) -> TropMatrix {
    w.letters()
        .iter()
        .map(|&l| if l == Letter::A { a.clone() } else { b.clone() })
        .reduce(|x, y| x.mul(&y).unwrap())
        .unwrap()
}

proptest! {
    #[test]
    fn ut_diagonals_commute((a, b) in (1usize..=6).prop_flat_map(|n| (arb_ut(n), arb_ut(n)))) {
        prop_assert_eq!(a.mul(&b).unwrap().diagonal(), b.mul(&a).unwrap().diagonal());
    }

    #[test]
    fn paths_match_products(w in arb_word(6), a in arb_matrix(4), b in arb_matrix(4)) {
        let g = CompoundDigraph::new(a.clone(), b.clone()).unwrap();
        let prod = eval(&w, &a, &b);
        for i in 0..4 {
            for j in 0..4 {
                prop_assert_eq!(&g.max_weight_labeled_path(&w.labels(), i, j).unwrap(), prod.get(i, j));
            }
        }
    }

    #[test]
    fn invertibles_compose(a in arb_invertible(5), b in arb_invertible(5)) {
        let pa = a.underlying_permutation().unwrap();
        let pb = b.underlying_permutation().unwrap();
        let ab = a.mul(&b).unwrap();
        prop_assert!(ab.is_invertible());
        prop_assert_eq!(ab.underlying_permutation().unwrap(), pa.then(&pb).unwrap());
    }

    /// A maximal path only sees the nodes it visits, and dropping nodes can
    /// only lose paths.
    #[test]
    fn restriction_to_visited_nodes(w in arb_word(6), a in arb_ut(5), b in arb_ut(5), i in 0usize..5, j in 0usize..5) {
        let g = CompoundDigraph::new(a.clone(), b.clone()).unwrap();
        let full = eval(&w, &a, &b);
        if let Some(path) = g.best_labeled_path(&w.labels(), i, j).unwrap() {
            let nodes = path.node_set();
            let (ra, rb) = (a.restrict(&nodes).unwrap(), b.restrict(&nodes).unwrap());
            let small = eval(&w, &ra.matrix, &rb.matrix);
            let (li, lj) = (ra.local(i).unwrap(), ra.local(j).unwrap());
            prop_assert_eq!(small.get(li, lj), full.get(i, j));
            for x in 0..nodes.len() {
                for y in 0..nodes.len() {
                    prop_assert!(small.get(x, y) <= full.get(nodes[x], nodes[y]));
                }
            }
        }
    }

    #[test]
    fn factor_witness_shape(f in arb_word(6)) {
        let fw = factor_witness(&f).unwrap();
        let n = fw.dim();
        let (ab, ba) = (fw.ab(), fw.ba());
        let c = &fw.params;
        prop_assert_eq!(c[0], 0);
        for k in 0..n - 1 {
            prop_assert_eq!(ab.get(k, k + 1), &TropValue::fin(c[k]));
            prop_assert_eq!(ba.get(k, k + 1), &TropValue::fin(c[k + 1]));
        }
        for m in [&ab, &ba] {
            prop_assert_eq!(m.get(0, 0), &TropValue::ZERO);
            prop_assert_eq!(m.get(n - 1, n - 1), &TropValue::ZERO);
        }
    }

    /// A factor of `u` that is not a factor of `v` separates them at the
    /// corner of the witness.
    #[test]
    fn factor_witness_separates(f in arb_word(4), pre in arb_word(4), post in arb_word(4), v in arb_word(10)) {
        let u = pre.concat(&f).concat(&post);
        prop_assume!(!f.is_factor_of(&v));
        let fw = factor_witness(&f).unwrap();
        prop_assert!(fw.corner(&u).unwrap() > fw.corner(&v).unwrap());
    }

    #[test]
    fn rho_is_a_morphism(x in vec(1u8..=4, 0..6), y in vec(1u8..=4, 0..6)) {
        let rho = Rho::new(4).unwrap();
        let xy: Vec<u8> = x.iter().chain(&y).copied().collect();
        prop_assert_eq!(rho.image(&x).unwrap().mul(&rho.image(&y).unwrap()).unwrap(), rho.image(&xy).unwrap());
    }

    #[test]
    fn knuth_classes_are_fibres(w in vec(1u8..=4, 1..=6)) {
        let t = Tableau::from_word(&w, 4).unwrap();
        let class = knuth_closure(&w, CLOSURE_CAP).unwrap();
        let read = t.reading_word();
        prop_assert!(class.contains(&read));
        for x in &class {
            prop_assert_eq!(&Tableau::from_word(x, 4).unwrap(), &t);
        }
    }

    #[test]
    fn identity_json_round_trip(u in arb_word(8), v in arb_word(8)) {
        prop_assume!(u != v);
        let id = Identity::from_words(&u, &v).unwrap();
        let back: Identity = serde_json::from_str(&serde_json::to_string(&id).unwrap()).unwrap();
        prop_assert_eq!(back.digest(), id.digest());
        prop_assert_eq!(back.lhs().expand(100).unwrap(), u);
    }

    #[test]
    fn matrix_json_round_trip(a in arb_matrix(3)) {
        let back: TropMatrix = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn labels_follow_letters() {
    assert_eq!(Word::parse("ab").unwrap().labels(), vec![Label::A, Label::B]);
}

#[test]
fn sampled_reports_replay() {
    for n in 1..=3 {
        let pair = ut_separating_pair(n).unwrap();
        let cfg = SamplerConfig::new(n + 1, Shape::UpperTriangular, 2_000, 9);
        let rep = check_satisfaction(&pair.identity, &cfg).unwrap();
        let again = check_satisfaction(&pair.identity, &cfg).unwrap();
        assert_eq!(rep, again);
        assert!(replay(&rep, &pair.identity).unwrap());
    }
}
