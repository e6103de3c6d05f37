mod common;

use std::sync::Arc;

use proptest::prelude::*;
use recoll_core::algebra::Algebra;
use recoll_core::complex::{cone, ChainMap, Complex};
use recoll_core::linalg::{Matrix, DEFAULT_PRIME as P};
use recoll_core::module::{hom_basis, injective, projective, simple, RightModule};
use recoll_core::recollement::{Kind, Recollement, Side};

// small entries keep ranks interesting
fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop_oneof![3 => Just(0u64), 2 => 1u64..3, 1 => Just(P - 1)], r * c)
            .prop_map(move |d| Matrix::from_vec(P, r, c, d))
    })
}

proptest! {
    #[test]
    fn rank_plus_nullity(m in matrix(7)) {
        prop_assert_eq!(m.rank() + m.kernel_basis().rows(), m.cols());
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn kernels_are_annihilated(m in matrix(7)) {
        let k = m.kernel_basis();
        prop_assert!(m.mul(&k.transpose()).is_zero());
        let l = m.left_kernel();
        prop_assert!(l.mul(&m).is_zero());
    }

    #[test]
    fn rref_is_idempotent(m in matrix(7)) {
        let once = m.rref().matrix;
        prop_assert_eq!(once.rref().matrix, once);
    }

    #[test]
    fn consistent_systems_are_solved(m in matrix(6), seed in prop::collection::vec(0u64..P, 6)) {
        let x: Vec<u64> = seed.iter().cycle().take(m.cols()).copied().collect();
        let b = m.transpose().apply(&x);
        let y = m.solve(&b).unwrap().expect("b is in the column space");
        prop_assert_eq!(m.transpose().apply(&y), b);
    }

    #[test]
    fn inverse_is_two_sided(m in matrix(5)) {
        if let Some(inv) = m.inverse() {
            prop_assert_eq!(m.mul(&inv), Matrix::identity(P, m.rows()));
            prop_assert_eq!(inv.mul(&m), Matrix::identity(P, m.rows()));
        } else {
            prop_assert!(!m.is_square() || m.rank() < m.rows());
        }
    }
}

fn modules(r: &Recollement, kind: Kind) -> Vec<RightModule> {
    let a: &Arc<Algebra> = r.side(Side::Original).algebra(kind);
    let op = r.side(Side::Opposite).algebra(kind);
    (0..a.vertex_count())
        .flat_map(|x| [projective(a, x), injective(a, op, x).unwrap(), simple(a, x)])
        .collect()
}

// cone of a random combination of module maps, shifted
fn random_object(r: &Recollement, kind: Kind, i: usize, j: usize, coeffs: &[u64], shift: i32) -> Complex {
    let ms = modules(r, kind);
    let (m, n) = (&ms[i % ms.len()], &ms[j % ms.len()]);
    let h = hom_basis(m, n).unwrap();
    let f = h.combine(&coeffs[..h.dim().min(coeffs.len())], P);
    let (x, y) = (Complex::stalk(m, shift), Complex::stalk(n, shift));
    let f = if h.dim() == 0 { Matrix::zeros(P, m.dim(), n.dim()) } else { f };
    cone(&ChainMap::new(&x, &y, vec![f]).unwrap())
}

fn fixture(k: usize) -> Recollement {
    match k % 3 {
        0 => common::f1(),
        1 => common::f2(),
        _ => common::f3(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn replacement_preserves_homology(k in 0usize..3, i in 0usize..9, j in 0usize..9,
                                      c in prop::collection::vec(0u64..P, 4), s in -2i32..2) {
        let r = fixture(k);
        let x = random_object(&r, Kind::Ambient, i, j, &c, s);
        let (pc, q) = x.replacement().unwrap();
        prop_assert!(q.is_quasi_isomorphism());
        prop_assert_eq!(pc.homology_dim_vectors(), x.homology_dim_vectors());
        prop_assert_eq!(pc.euler_characteristic(), x.euler_characteristic());
    }

    #[test]
    fn serre_duality_dimensions(k in 0usize..3, kind in 0usize..3, i in 0usize..9, j in 0usize..9,
                                c in prop::collection::vec(0u64..P, 4), s in -1i32..2) {
        let r = fixture(k);
        let kind = [Kind::Ambient, Kind::Quotient, Kind::Corner][kind];
        let x = random_object(&r, kind, i, j, &c, 0);
        let y = random_object(&r, kind, j, i + 1, &c, s);
        let fx = r.serre_apply(kind, false, &x).unwrap();
        let g = r.serre_gram(kind, &x, &y).unwrap();
        prop_assert_eq!(r.hom(&x, &y).unwrap().dim(), r.hom(&y, &fx).unwrap().dim());
        prop_assert!(g.is_invertible());
    }

    #[test]
    fn embeddings_are_fully_faithful(k in 0usize..3, i in 0usize..9, j in 0usize..9,
                                     c in prop::collection::vec(0u64..P, 4), s in -1i32..2) {
        use recoll_core::recollement::{FunctorExpr, Prim};
        let r = fixture(k);
        let x = random_object(&r, Kind::Quotient, i, j, &c, 0);
        let y = random_object(&r, Kind::Quotient, j, i, &c, s);
        let e = FunctorExpr::single(Prim::Restrict);
        let (ex, ey) = (r.apply(&e, &x).unwrap(), r.apply(&e, &y).unwrap());
        prop_assert_eq!(r.hom(&x, &y).unwrap().dims_in(-4, 4), r.hom(&ex, &ey).unwrap().dims_in(-4, 4));
        let x = random_object(&r, Kind::Corner, i, j, &c, 0);
        let y = random_object(&r, Kind::Corner, j, i, &c, s);
        for p in [Prim::Induce, Prim::Coinduce] {
            let e = FunctorExpr::single(p);
            let (ex, ey) = (r.apply(&e, &x).unwrap(), r.apply(&e, &y).unwrap());
            prop_assert_eq!(r.hom(&x, &y).unwrap().dims_in(-4, 4), r.hom(&ex, &ey).unwrap().dims_in(-4, 4));
        }
    }
}
