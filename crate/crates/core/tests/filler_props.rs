use hemicube_core::cube::{all_faces, boundary, coboundary};
use hemicube_core::filler::{
    c2_cofill, c2_fill, cube_cofill, cube_fill, cube_fill_constant, gen_cofill_k2, gen_fill_k2,
    hemi_cofill, hemi_fill, symmetric_fill, Rational,
};
use hemicube_core::{Chain, ClassicalCode, Error, QuotientComplex};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn ratio(a: usize, b: usize) -> Rational {
    Rational::new(a as i128, b as i128)
}

fn cube_chain(n: usize, p: usize, picks: &[usize]) -> Chain {
    let faces = all_faces(n, p);
    Chain::new(n, p, picks.iter().map(|&i| faces[i % faces.len()])).unwrap()
}

fn quotient_chain(qc: &QuotientComplex, dim: usize, picks: &[usize]) -> Chain {
    let faces = qc.enumerate_faces(dim);
    Chain::new(qc.n(), dim, picks.iter().map(|&i| faces[i % faces.len()])).unwrap()
}

/// (n, p) with 3 <= n <= 7 and 1 <= p <= n-2, plus up to 12 face picks.
fn hemi_case() -> impl Strategy<Value = (usize, usize, Vec<usize>)> {
    (3usize..=7)
        .prop_flat_map(|n| (Just(n), 1..=n - 2))
        .prop_flat_map(|(n, p)| {
            (
                Just(n),
                Just(p),
                proptest::collection::vec(0usize..10_000, 1..12),
            )
        })
}

fn k2_codes() -> Vec<ClassicalCode> {
    vec![
        ClassicalCode::from_generator_strings(&["111100", "001111"]).unwrap(),
        ClassicalCode::from_generator_strings(&["1111000", "0001111"]).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn cube_fill_exact_and_bounded(n in 2usize..=7, seed in proptest::collection::vec(0usize..10_000, 1..10), pp in 0usize..8) {
        let p = 1 + pp % n;
        let e = cube_chain(n, p, &seed);
        let z = boundary(&e).unwrap();
        let y = cube_fill(n, p, &z).unwrap();
        prop_assert_eq!(boundary(&y).unwrap(), z.clone());
        prop_assert!(ratio(y.weight(), 1) <= cube_fill_constant(n, p) * ratio(z.weight(), 1));
    }

    #[test]
    fn cube_cofill_exact_and_bounded(n in 2usize..=7, seed in proptest::collection::vec(0usize..10_000, 1..10), pp in 0usize..8) {
        let p = pp % n;
        let e = cube_chain(n, p, &seed);
        let z = coboundary(&e).unwrap();
        let y = cube_cofill(n, p, &z).unwrap();
        prop_assert_eq!(coboundary(&y).unwrap(), z.clone());
        prop_assert!(y.weight() <= z.weight());
    }

    #[test]
    fn hemi_fill_loose_bound((n, p, picks) in hemi_case()) {
        let qc = QuotientComplex::new(ClassicalCode::repetition(n).unwrap(), p).unwrap();
        let e = quotient_chain(&qc, p, &picks);
        let z = qc.lift(&qc.q_boundary(&e).unwrap()).unwrap();
        let f = hemi_fill(n, p, &z).unwrap();
        prop_assert_eq!(boundary(&f).unwrap(), z.clone());
        prop_assert!(qc.is_symmetric(&f));
        prop_assert!(2 * f.weight() <= (n - p) * z.weight());
    }

    #[test]
    fn hemi_cofill_loose_bound((n, p, picks) in hemi_case()) {
        let qc = QuotientComplex::new(ClassicalCode::repetition(n).unwrap(), p).unwrap();
        let e = quotient_chain(&qc, p, &picks);
        let z = qc.lift(&qc.q_coboundary(&e).unwrap()).unwrap();
        let f = hemi_cofill(n, p, &z).unwrap();
        prop_assert_eq!(coboundary(&f).unwrap(), z.clone());
        prop_assert!(qc.is_symmetric(&f));
        prop_assert!(f.weight() <= (p + 1) * z.weight());
    }

    #[test]
    fn k2_fillings_exact_and_symmetric(ci in 0usize..2, p in 1usize..=2, picks in proptest::collection::vec(0usize..10_000, 1..10)) {
        let code = k2_codes()[ci].clone();
        let qc = QuotientComplex::new(code, p).unwrap();
        let e = quotient_chain(&qc, p, &picks);
        let z = qc.lift(&qc.q_boundary(&e).unwrap()).unwrap();
        let f = gen_fill_k2(&qc, &z).unwrap();
        prop_assert_eq!(boundary(&f).unwrap(), z.clone());
        prop_assert!(qc.is_symmetric(&f));
        if !z.is_empty() {
            prop_assert!(ratio(f.weight(), z.weight()) <= c2_fill(qc.n(), p));
        }

        let z = qc.lift(&qc.q_coboundary(&e).unwrap()).unwrap();
        let f = gen_cofill_k2(&qc, &z).unwrap();
        prop_assert_eq!(coboundary(&f).unwrap(), z.clone());
        prop_assert!(qc.is_symmetric(&f));
        if !z.is_empty() {
            prop_assert!(ratio(f.weight(), z.weight()) <= c2_cofill(qc.n(), p));
        }
    }

    #[test]
    fn fillings_are_deterministic((n, p, picks) in hemi_case()) {
        let qc = QuotientComplex::new(ClassicalCode::repetition(n).unwrap(), p).unwrap();
        let e = quotient_chain(&qc, p, &picks);
        let z = qc.lift(&qc.q_boundary(&e).unwrap()).unwrap();
        prop_assert_eq!(hemi_fill(n, p, &z).unwrap(), hemi_fill(n, p, &z).unwrap());
    }

    #[test]
    fn odd_vertex_sets_are_not_boundaries(n in 2usize..=6, picks in subsequence((0..64usize).collect::<Vec<_>>(), 1..6)) {
        let z = cube_chain(n, 0, &picks);
        let r = cube_fill(n, 1, &z);
        if z.weight() % 2 == 1 {
            prop_assert_eq!(r, Err(Error::NotABoundary));
        } else {
            prop_assert_eq!(boundary(&r.unwrap()).unwrap(), z);
        }
    }
}

#[test]
fn hemi_fill_matches_brute_force_minimum_n3() {
    // Over every quotient 1-chain of the 3-hemicube, the filling is no larger
    // than (n-p)/2 times the syndrome and at least the true minimum.
    let qc = QuotientComplex::new(ClassicalCode::repetition(3).unwrap(), 1).unwrap();
    let faces = qc.qubits();
    let all: Vec<Chain> = (0u32..1 << faces.len())
        .map(|m| {
            Chain::new(
                3,
                1,
                (0..faces.len())
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| faces[i]),
            )
            .unwrap()
        })
        .collect();
    for e in &all {
        let s = qc.q_boundary(e).unwrap();
        let z = qc.lift(&s).unwrap();
        let f = qc.project(&hemi_fill(3, 1, &z).unwrap());
        assert_eq!(qc.q_boundary(&f).unwrap(), s);
        let min = all
            .iter()
            .filter(|c| qc.q_boundary(c).unwrap() == s)
            .map(Chain::weight)
            .min()
            .unwrap();
        assert!(f.weight() >= min);
        assert!(f.weight() <= s.weight());
    }
}

#[test]
fn symmetric_fill_rejects_k3() {
    let code = ClassicalCode::from_generator_strings(&["1111000", "1100110", "1010101"]).unwrap();
    let r = symmetric_fill(&code, 2, &Chain::empty(7, 1));
    assert!(matches!(r, Err(Error::Unsupported(_))));
}
