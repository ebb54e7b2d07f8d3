use hemicube_core::csscode::logical_cycle_np;
use hemicube_core::cube::translate;
use hemicube_core::f2la::rank;
use hemicube_core::harness::distance_ladder;
use hemicube_core::{BitVector, ClassicalCode, CodeInstance};
use proptest::prelude::*;

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// All instances with n <= 8 over a fixed list of codes.
fn instances() -> Vec<CodeInstance> {
    let mut codes: Vec<ClassicalCode> = (3..=8)
        .map(|n| ClassicalCode::repetition(n).unwrap())
        .collect();
    for gens in [
        &["111100", "001111"][..],
        &["110110", "011011"],
        &["1111000", "0001111"],
        &["11111000", "00011111"],
        &["11110000", "00111100", "00001111"],
        &["0001111", "0110011", "1010101"],
    ] {
        codes.push(ClassicalCode::from_generator_strings(gens).unwrap());
    }
    let mut out = Vec::new();
    for c in codes {
        for p in 1..=c.min_distance() - 2 {
            out.push(CodeInstance::new(c.clone(), p).unwrap());
        }
    }
    out
}

#[test]
fn dimension_matches_formula() {
    for ci in instances() {
        let k = ci.qc().k();
        assert_eq!(
            ci.dimension(),
            binomial(ci.p() + k - 1, ci.p()),
            "{:?} p={}",
            ci.code(),
            ci.p()
        );
    }
}

#[test]
fn checks_commute() {
    for ci in instances() {
        let product = ci
            .hx()
            .to_dense()
            .mul(&ci.hz().to_dense().transpose())
            .unwrap();
        assert!(product.is_zero());
    }
}

#[test]
fn logical_bases_are_nontrivial_and_dual() {
    for ci in instances() {
        let set = ci.logical_basis().unwrap();
        for x in &set.x_logicals {
            assert!(
                ci.syndrome_x(x).unwrap().is_empty(),
                "{:?} p={} {x:?}",
                ci.code(),
                ci.p()
            );
            assert!(
                !ci.is_stabilizer_x(x).unwrap(),
                "{:?} p={} {x:?}",
                ci.code(),
                ci.p()
            );
        }
        for z in &set.z_logicals {
            assert!(ci.syndrome_z(z).unwrap().is_empty());
            assert!(!ci.is_stabilizer_z(z).unwrap());
        }
        assert_eq!(rank(&set.pairing_matrix()), ci.dimension());
    }
}

#[test]
fn ladder_agrees_with_formula_on_small_instances() {
    let mut checked = 0;
    for ci in instances() {
        let (dx, dz, _) = ci.distance_formula();
        if dx > 6 || dz > 6 || ci.num_qubits() > 64 {
            continue;
        }
        let cap = dx.max(dz);
        let Ok((fx, fz)) = distance_ladder(&ci, cap) else {
            continue;
        };
        assert_eq!(
            (fx, fz),
            (Some(dx), Some(dz)),
            "{:?} p={}",
            ci.code(),
            ci.p()
        );
        checked += 1;
    }
    assert!(checked >= 4, "only {checked} instances within reach");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn translated_bracket_is_homologous(n in 3usize..=8, dp in 0usize..6, y in any::<u64>()) {
        let p = 1 + dp % (n - 2);
        let ci = CodeInstance::repetition(n, p).unwrap();
        let l = logical_cycle_np(n, p).unwrap();
        let y = BitVector::from_indices(n, (0..n).filter(|i| y >> i & 1 == 1));
        let moved = ci.qc().image(&translate(&l, &y).unwrap()).unwrap();
        prop_assert!(ci.syndrome_x(&moved).unwrap().is_empty());
        prop_assert!(ci.is_stabilizer_x(&moved.xor(&l)).unwrap());
    }
}
