use hemicube_core::cube::{all_faces, boundary, coboundary, translate};
use hemicube_core::{BitVector, Chain};
use proptest::prelude::*;

/// A random `dim`-chain of `Q^n`, 2 <= n <= 10.
fn chain() -> impl Strategy<Value = Chain> {
    (2usize..=10)
        .prop_flat_map(|n| (Just(n), 0..=n))
        .prop_flat_map(|(n, dim)| {
            (
                Just(n),
                Just(dim),
                proptest::collection::vec(any::<usize>(), 0..16),
            )
        })
        .prop_map(|(n, dim, picks)| {
            let faces = all_faces(n, dim);
            Chain::new(n, dim, picks.iter().map(|i| faces[i % faces.len()])).unwrap()
        })
}

fn random_chain(n: usize, dim: usize, picks: &[usize]) -> Chain {
    let faces = all_faces(n, dim);
    Chain::new(n, dim, picks.iter().map(|i| faces[i % faces.len()])).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn boundary_squares_to_zero(c in chain()) {
        if c.dim() >= 2 {
            prop_assert!(boundary(&boundary(&c).unwrap()).unwrap().is_empty());
        }
        if c.dim() + 2 <= c.width() {
            prop_assert!(coboundary(&coboundary(&c).unwrap()).unwrap().is_empty());
        }
    }

    #[test]
    fn boundary_and_coboundary_are_adjoint(
        n in 2usize..=9,
        dp in 0usize..9,
        a in proptest::collection::vec(any::<usize>(), 0..12),
        b in proptest::collection::vec(any::<usize>(), 0..12),
    ) {
        let p = 1 + dp % n;
        let a = random_chain(n, p, &a);
        let b = random_chain(n, p - 1, &b);
        prop_assert_eq!(boundary(&a).unwrap().pairing(&b), a.pairing(&coboundary(&b).unwrap()));
    }

    #[test]
    fn translation_commutes(c in chain(), y in any::<u64>()) {
        let n = c.width();
        let y = BitVector::from_indices(n, (0..n).filter(|i| y >> i & 1 == 1));
        if c.dim() >= 1 {
            prop_assert_eq!(
                translate(&boundary(&c).unwrap(), &y).unwrap(),
                boundary(&translate(&c, &y).unwrap()).unwrap()
            );
        }
        if c.dim() < n {
            prop_assert_eq!(
                translate(&coboundary(&c).unwrap(), &y).unwrap(),
                coboundary(&translate(&c, &y).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn single_face_weights(n in 1usize..=10, dp in 0usize..11, pick in any::<usize>()) {
        let p = dp % (n + 1);
        let f = random_chain(n, p, &[pick]);
        if p >= 1 {
            prop_assert_eq!(boundary(&f).unwrap().weight(), 2 * p);
        }
        if p < n {
            prop_assert_eq!(coboundary(&f).unwrap().weight(), n - p);
        }
    }

    #[test]
    fn literals_round_trip(c in chain()) {
        let text = c.to_literals();
        let lits: Vec<&str> = text.split(',').filter(|s| !s.is_empty()).collect();
        prop_assert_eq!(Chain::from_literals(c.width(), c.dim(), &lits).unwrap(), c);
    }
}
