use recoll_core::module::*;
use recoll_core::algebra::Algebra;
use recoll_core::linalg::Matrix;
use std::sync::Arc;
use recoll_core::algebra::{path_algebra, semisimple, Quiver};
use recoll_core::linalg::DEFAULT_PRIME as P;

fn alg(n: usize, arrows: &[(usize, usize)]) -> (Arc<Algebra>, Arc<Algebra>) {
    let a = path_algebra("A", &Quiver::new(n, arrows).unwrap(), P).unwrap();
    let op = a.opposite();
    (Arc::new(a), Arc::new(op))
}

fn menu(a: &Arc<Algebra>, op: &Arc<Algebra>) -> Vec<RightModule> {
    let mut out = Vec::new();
    for x in 0..a.vertex_count() {
        out.push(projective(a, x));
        out.push(simple(a, x));
        out.push(injective(a, op, x).unwrap());
    }
    out
}

#[test]
fn standard_modules_validate() {
    for arrows in [vec![(0, 1)], vec![(0, 1), (1, 2)], vec![(0, 1), (0, 1)]] {
        let n = arrows.iter().map(|&(s, t)| s.max(t)).max().unwrap() + 1;
        let (a, op) = alg(n, &arrows);
        for m in menu(&a, &op) {
            m.validate().unwrap();
        }
        let sum_p: usize = (0..n).map(|x| projective(&a, x).dim()).sum();
        let sum_i: usize = (0..n).map(|x| injective(&a, &op, x).unwrap().dim()).sum();
        assert_eq!(sum_p, a.dim());
        assert_eq!(sum_i, a.dim());
    }
}

#[test]
fn f1_projective_and_injective_dims() {
    let (a, op) = alg(2, &[(0, 1)]);
    assert_eq!(projective(&a, 0).dim(), 1);
    assert_eq!(projective(&a, 1).dim(), 2);
    assert_eq!(injective(&a, &op, 0).unwrap().dim(), 2);
    assert_eq!(injective(&a, &op, 1).unwrap().dim(), 1);
}

#[test]
fn f1_hom_dims() {
    let (a, _) = alg(2, &[(0, 1)]);
    let p1 = projective(&a, 0);
    let p2 = projective(&a, 1);
    assert_eq!(hom_basis(&p1, &p2).unwrap().dim(), 1);
    assert_eq!(hom_basis(&p2, &p1).unwrap().dim(), 0);
}

#[test]
fn hom_contains_identity_and_are_module_maps() {
    let (a, op) = alg(3, &[(0, 1), (1, 2)]);
    let mods = menu(&a, &op);
    for m in &mods {
        let h = hom_basis(m, m).unwrap();
        let c = h.coords(&m.identity());
        assert_eq!(h.combine(&c, P), m.identity());
        for n in &mods {
            for f in &hom_basis(m, n).unwrap().basis {
                assert!(m.is_hom_to(n, f));
            }
        }
    }
}

#[test]
fn hom_from_projective_is_graded_part() {
    let (a, op) = alg(2, &[(0, 1), (0, 1)]);
    for m in menu(&a, &op) {
        for x in 0..a.vertex_count() {
            assert_eq!(hom_basis(&projective(&a, x), &m).unwrap().dim(), m.graded_part(x).len());
        }
    }
}

#[test]
fn duality_preserves_hom_dims() {
    let (a, op) = alg(3, &[(0, 1), (1, 2)]);
    let mods = menu(&a, &op);
    for m in &mods {
        let dm = k_dual(m, &op).unwrap();
        dm.validate().unwrap();
        let ddm = k_dual(&dm, &a).unwrap();
        assert_eq!((0..m.algebra().dim()).map(|b| ddm.action(b).clone()).collect::<Vec<_>>(), (0..m.algebra().dim()).map(|b| m.action(b).clone()).collect::<Vec<_>>());
        for n in &mods {
            let dn = k_dual(n, &op).unwrap();
            assert_eq!(hom_basis(m, n).unwrap().dim(), hom_basis(&dn, &dm).unwrap().dim());
        }
    }
    let z = RightModule::zero(&a);
    assert_eq!(k_dual(&z, &op).unwrap().dim(), 0);
    assert!(k_dual(&z, &a).is_err());
}

#[test]
fn tensor_with_regular_is_identity() {
    let (a, op) = alg(2, &[(0, 1), (0, 1)]);
    let reg = Bimodule::regular(&a);
    reg.validate().unwrap();
    for m in menu(&a, &op) {
        let t = tensor_over(&m, &reg).unwrap();
        t.module.validate().unwrap();
        assert_eq!(t.module.dim(), m.dim());
        // v -> v (x) 1 is invertible and A-linear
        let mut canon = Matrix::zeros(P, m.dim(), t.module.dim());
        for i in 0..m.dim() {
            let mut unit = vec![0; m.dim()];
            unit[i] = 1;
            for x in 0..a.vertex_count() {
                let c = t.class_of_vec(&unit, a.vertex(x));
                for (k, v) in c.into_iter().enumerate() {
                    canon.add_at(i, k, v);
                }
            }
        }
        assert!(canon.is_invertible());
        assert!(m.is_hom_to(&t.module, &canon));
    }
}

#[test]
fn dual_bimodule_validates() {
    let (a, _) = alg(3, &[(0, 1), (1, 2)]);
    let da = Bimodule::regular(&a).k_dual();
    da.validate().unwrap();
}

#[test]
fn covers_and_resolutions() {
    let (a, _) = alg(3, &[(0, 1), (1, 2)]);
    let p2 = projective(&a, 1);
    assert_eq!(projective_resolution(&p2, 3).unwrap().length(), 0);
    // P1 = e1 A is simple projective; 0 -> P1 -> P2 -> S2 -> 0
    assert_eq!(projective_resolution(&simple(&a, 0), 3).unwrap().length(), 0);
    let res = projective_resolution(&simple(&a, 1), 3).unwrap();
    assert_eq!(res.length(), 1);
    assert_eq!(res.terms[0].summands(), Some(&[1][..]));
    assert_eq!(res.terms[1].summands(), Some(&[0][..]));
    assert_eq!(res.maps[0].mul(&res.augmentation), Matrix::zeros(P, 1, 1));
    let z = projective_resolution(&RightModule::zero(&a), 3).unwrap();
    assert!(z.terms.is_empty());
    let (cover, f) = projective_cover(&simple(&a, 2));
    assert_eq!(cover.dim(), 3);
    assert!(cover.is_hom_to(&simple(&a, 2), &f));
}

#[test]
fn global_dimensions() {
    let (a, _) = alg(2, &[(0, 1)]);
    assert_eq!(global_dimension(&a, 4).unwrap(), 1);
    let (a, _) = alg(3, &[(0, 1), (1, 2)]);
    assert_eq!(global_dimension(&a, 4).unwrap(), 1);
    let k2 = Arc::new(semisimple("K", 2, P).unwrap());
    assert_eq!(global_dimension(&k2, 1).unwrap(), 0);
}

#[test]
fn ext_between_simples_of_a2() {
    let (a, _) = alg(2, &[(0, 1)]);
    // Ext^1(S2, S1) = 1 since 0 -> S1 -> P2 -> S2 -> 0 does not split
    assert_eq!(ext_dims(&simple(&a, 1), &simple(&a, 0), 2, 4).unwrap(), vec![0, 1, 0]);
    assert_eq!(ext_dims(&simple(&a, 0), &simple(&a, 1), 2, 4).unwrap(), vec![0, 0, 0]);
}

#[test]
fn submodule_and_quotient() {
    let (a, _) = alg(2, &[(0, 1)]);
    let p2 = projective(&a, 1);
    // rad P2 = span{a} is S1
    let rows = Matrix::from_rows(P, 2, &[vec![0, 1]]);
    let (sub, _) = submodule(&p2, &rows);
    sub.validate().unwrap();
    assert_eq!(sub.grade(), &[0]);
    let (q, proj) = quotient_module(&p2, &rows);
    q.validate().unwrap();
    assert_eq!(q.grade(), &[1]);
    assert!(p2.is_hom_to(&q, &proj));
}
