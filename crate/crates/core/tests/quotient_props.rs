use hemicube_core::cube::{boundary, coboundary, translate};
use hemicube_core::quotient::parse_descriptor;
use hemicube_core::{Chain, ClassicalCode, QuotientComplex};
use proptest::prelude::*;

/// Valid `(code, p)` pairs with n <= 8.
fn complexes() -> Vec<QuotientComplex> {
    let mut codes: Vec<ClassicalCode> = (3..=8)
        .map(|n| ClassicalCode::repetition(n).unwrap())
        .collect();
    for gens in [
        &["111100", "001111"][..],
        &["1111000", "0001111"],
        &["11111000", "00011111"],
        &["0001111", "0110011", "1010101"],
    ] {
        codes.push(ClassicalCode::from_generator_strings(gens).unwrap());
    }
    let mut out = Vec::new();
    for c in codes {
        for p in 1..=c.min_distance() - 2 {
            out.push(QuotientComplex::new(c.clone(), p).unwrap());
        }
    }
    out
}

fn quotient_chain(qc: &QuotientComplex, dim: usize, picks: &[usize]) -> Chain {
    let faces = qc.enumerate_faces(dim);
    Chain::new(qc.n(), dim, picks.iter().map(|i| faces[i % faces.len()])).unwrap()
}

fn case() -> impl Strategy<Value = (usize, usize, Vec<usize>, Vec<usize>)> {
    (
        0..complexes().len(),
        0usize..16,
        proptest::collection::vec(any::<usize>(), 0..12),
        proptest::collection::vec(any::<usize>(), 0..12),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn quotient_operators_square_to_zero((i, dsel, a, _) in case()) {
        let qc = &complexes()[i];
        let dim = dsel % (qc.n() + 1);
        let c = quotient_chain(qc, dim, &a);
        if dim >= 2 {
            prop_assert!(qc.q_boundary(&qc.q_boundary(&c).unwrap()).unwrap().is_empty());
        }
        if dim + 2 <= qc.n() {
            prop_assert!(qc.q_coboundary(&qc.q_coboundary(&c).unwrap()).unwrap().is_empty());
        }
    }

    #[test]
    fn quotient_operators_are_adjoint((i, _, a, b) in case()) {
        let qc = &complexes()[i];
        let p = qc.p();
        let a = quotient_chain(qc, p, &a);
        let b = quotient_chain(qc, p - 1, &b);
        prop_assert_eq!(
            qc.q_boundary(&a).unwrap().pairing(&b),
            a.pairing(&qc.q_coboundary(&b).unwrap())
        );
    }

    #[test]
    fn canonical_rep_is_a_class_function((i, dsel, a, _) in case()) {
        let qc = &complexes()[i];
        let dim = dsel % (qc.n() + 1);
        let faces = qc.enumerate_faces(dim);
        let f = faces[a.first().copied().unwrap_or(0) % faces.len()];
        for w in qc.code().codewords() {
            let g = f.translate(&w).unwrap();
            prop_assert_eq!(qc.canonical_rep(&g).unwrap(), f);
            prop_assert_eq!(qc.canonical_rep(&qc.canonical_rep(&g).unwrap()).unwrap(), f);
        }
    }

    #[test]
    fn operators_are_well_defined_on_classes((i, _, a, _) in case()) {
        let qc = &complexes()[i];
        let c = quotient_chain(qc, qc.p(), &a);
        for w in qc.code().codewords() {
            let moved = translate(&c, &w).unwrap();
            prop_assert_eq!(qc.image(&boundary(&moved).unwrap()).unwrap(), qc.q_boundary(&c).unwrap());
            prop_assert_eq!(qc.image(&coboundary(&moved).unwrap()).unwrap(), qc.q_coboundary(&c).unwrap());
        }
    }

    #[test]
    fn lift_project_round_trip((i, _, a, _) in case()) {
        let qc = &complexes()[i];
        let c = quotient_chain(qc, qc.p(), &a);
        let lifted = qc.lift(&c).unwrap();
        prop_assert!(qc.is_symmetric(&lifted));
        prop_assert_eq!(lifted.weight(), c.weight() << qc.k());
        prop_assert_eq!(qc.project(&lifted), c);
    }
}

#[test]
fn face_counts_match_formula() {
    for qc in complexes() {
        for dim in 0..qc.code().min_distance() {
            assert_eq!(
                qc.enumerate_faces(dim).len(),
                qc.face_count(dim),
                "{:?} dim {dim}",
                qc.code()
            );
        }
    }
}

#[test]
fn descriptor_round_trip() {
    for qc in complexes() {
        let text = hemicube_core::quotient::format_descriptor(qc.code(), qc.p());
        let d = parse_descriptor(&text).unwrap();
        assert_eq!(&d.code, qc.code());
        assert_eq!(d.p, Some(qc.p()));
    }
}
