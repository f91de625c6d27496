mod common;

use common::{all_vectors, matrix};
use minrank::{BitVec, Gf2Matrix, Limits, Subspace};
use proptest::prelude::*;

proptest! {
    #[test]
    fn rank_equals_transpose_rank(m in matrix(8, 8)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rank_nullity(m in matrix(8, 10)) {
        prop_assert_eq!(m.kernel().dim() + m.rank(), m.ncols());
        for v in m.kernel().basis() {
            prop_assert!(m.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn solve_is_sound_and_complete(m in matrix(6, 8), seed in any::<u64>()) {
        let b = BitVec::from_u64(m.nrows(), seed & ((1 << m.nrows()) - 1));
        match m.solve(&b) {
            Some(x) => prop_assert_eq!(m.mul_vec(&x), b),
            None => prop_assert!(all_vectors(m.ncols()).all(|x| m.mul_vec(&x) != b)),
        }
    }

    #[test]
    fn row_space_matches_span_of_rows(m in matrix(6, 6)) {
        let s = m.row_space();
        let t = Subspace::span(m.ncols(), m.rows().iter().cloned());
        prop_assert_eq!(s.dim(), m.rank());
        prop_assert_eq!(s, t);
    }
}

#[test]
fn complement_is_an_involution_on_every_subspace() {
    let l = Limits::default();
    for n in 0..=5 {
        let mut count = 0;
        for s in Subspace::enumerate(n, None, &l).unwrap() {
            let c = s.orthogonal_complement();
            assert_eq!(s.dim() + c.dim(), n);
            assert_eq!(c.orthogonal_complement(), s);
            for u in s.basis() {
                for v in c.basis() {
                    assert!(!u.dot(v));
                }
            }
            count += 1;
        }
        // Total number of subspaces of GF(2)^n (Galois numbers).
        assert_eq!(count, [1, 2, 5, 16, 67, 374][n]);
    }
}

#[test]
fn identity_has_full_rank() {
    for n in 1..=9 {
        assert_eq!(Gf2Matrix::identity(n).rank(), n);
    }
}
