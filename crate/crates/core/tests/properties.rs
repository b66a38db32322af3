//! Property tests for the integer-lattice layer.

use arex_core::intlat::{
    contains, equal, hnf, lattice_from_generators, saturation, snf, IntMatrix,
};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r)
    })
}

fn lattice_of(rows: &[Vec<i64>]) -> arex_core::intlat::GenLattice {
    let cols = rows[0].len();
    let gens: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&e| BigInt::from(e)).collect())
        .collect();
    lattice_from_generators(cols, &gens).unwrap()
}

proptest! {
    #[test]
    fn hnf_is_idempotent(data in small_matrix()) {
        let m = IntMatrix::from_rows_i64(&data);
        let h = hnf(&m);
        prop_assert_eq!(hnf(&h), h);
    }

    #[test]
    fn hnf_preserves_row_span(data in small_matrix()) {
        let m = IntMatrix::from_rows_i64(&data);
        let h = hnf(&m);
        let rows: Vec<Vec<i64>> = data.clone();
        let hnf_rows: Vec<Vec<BigInt>> = (0..h.rows()).map(|i| h.row(i)).collect();
        let l1 = lattice_of(&rows);
        let l2 = lattice_from_generators(data[0].len(), &hnf_rows).unwrap();
        prop_assert!(equal(&l1, &l2).unwrap());
    }

    #[test]
    fn snf_factors_form_divisibility_chain(data in small_matrix()) {
        let m = IntMatrix::from_rows_i64(&data);
        let factors = snf(&m);
        for w in factors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn equality_is_mutual_containment(
        (a, b) in (1usize..=5).prop_flat_map(|c| {
            let m = (1usize..=5).prop_flat_map(move |r| {
                proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r)
            });
            (m.clone(), m)
        })
    ) {
        let la = lattice_of(&a);
        let lb = lattice_of(&b);
        let mutual = (0..lb.basis().rows())
            .all(|i| contains(&la, &lb.basis().row(i)).unwrap())
            && (0..la.basis().rows())
                .all(|i| contains(&lb, &la.basis().row(i)).unwrap());
        prop_assert_eq!(equal(&la, &lb).unwrap(), mutual);
    }

    #[test]
    fn saturation_is_idempotent_and_contains(data in small_matrix()) {
        let l = lattice_of(&data);
        let s = saturation(&l);
        prop_assert!(equal(&saturation(&s), &s).unwrap());
        for i in 0..l.basis().rows() {
            prop_assert!(contains(&s, &l.basis().row(i)).unwrap());
        }
    }
}
