use std::sync::Arc;

use recoll_core::algebra::{path_algebra, Algebra, Quiver};
use recoll_core::complex::{
    cone, derived_iso_certificate, derived_tensor, dual, lift_through_qis, projective_replacement,
    resolution_complex, shift, ChainMap, Complex, DerivedIsoCertificate, HomComplex,
};
use recoll_core::linalg::{Matrix, DEFAULT_PRIME as P};
use recoll_core::module::{
    ext_dims, hom_basis, injective, projective, projective_resolution, simple, Bimodule, RightModule,
};

fn alg(n: usize, arrows: &[(usize, usize)]) -> (Arc<Algebra>, Arc<Algebra>) {
    let a = path_algebra("A", &Quiver::new(n, arrows).unwrap(), P).unwrap();
    let op = a.opposite();
    (Arc::new(a), Arc::new(op))
}

fn examples() -> Vec<(Arc<Algebra>, Arc<Algebra>)> {
    vec![alg(2, &[(0, 1)]), alg(3, &[(0, 1), (1, 2)]), alg(2, &[(0, 1), (0, 1)]), alg(3, &[(0, 1), (0, 2)])]
}

fn modules(a: &Arc<Algebra>, op: &Arc<Algebra>) -> Vec<RightModule> {
    let mut out = Vec::new();
    for x in 0..a.vertex_count() {
        out.push(projective(a, x));
        out.push(simple(a, x));
        out.push(injective(a, op, x).unwrap());
    }
    out
}

// Stalks, shifted stalks and a two-term complex from a nonzero hom.
fn menu(a: &Arc<Algebra>, op: &Arc<Algebra>) -> Vec<Complex> {
    let ms = modules(a, op);
    let mut out: Vec<Complex> = ms.iter().map(|m| Complex::stalk(m, 0)).collect();
    out.push(Complex::stalk(&ms[1], -1));
    out.push(Complex::stalk(&ms[ms.len() - 2], 1));
    'outer: for m in &ms {
        for n in &ms {
            let h = hom_basis(m, n).unwrap();
            if h.dim() > 0 && m.dim() != n.dim() {
                out.push(Complex::new(a, -1, vec![m.clone(), n.clone()], vec![h.basis[0].clone()]).unwrap());
                break 'outer;
            }
        }
    }
    out
}

fn f1() -> (Arc<Algebra>, Arc<Algebra>) {
    alg(2, &[(0, 1)])
}

#[test]
fn cone_of_identity_is_acyclic() {
    for (a, op) in examples() {
        for x in menu(&a, &op) {
            assert!(cone(&ChainMap::identity(&x)).is_acyclic());
        }
    }
}

#[test]
fn shift_round_trip() {
    for (a, op) in examples() {
        for x in menu(&a, &op) {
            let y = shift(&shift(&x, 3), -3);
            assert_eq!(y.lo(), x.lo());
            assert_eq!(y.homology_dims(), x.homology_dims());
            for n in x.degrees() {
                assert_eq!(y.diff(n), x.diff(n));
            }
            let s = shift(&x, 1);
            for (n, d) in x.homology_vector() {
                assert_eq!(s.homology_dims()[&(n - 1)], d);
            }
        }
    }
}

#[test]
fn radical_inclusion_cone() {
    let (a, _) = f1();
    let p2 = projective(&a, 1);
    assert_eq!(projective(&a, 0).dim(), 1);
    assert_eq!(p2.dim(), 2);
    let s1 = simple(&a, 0);
    let h = hom_basis(&s1, &p2).unwrap();
    assert_eq!(h.dim(), 1);
    let x = Complex::stalk(&s1, 0);
    let y = Complex::stalk(&p2, 0);
    let f = ChainMap::new(&x, &y, vec![h.basis[0].clone()]).unwrap();
    let c = cone(&f);
    let total: usize = c.homology_vector().iter().map(|&(_, d)| d).sum();
    assert_eq!(total, 1);
    assert_eq!(c.homology_vector(), vec![(0, 1)]);
}

#[test]
fn simple_top_replacement_has_length_two() {
    let (a, _) = f1();
    let x = Complex::stalk(&simple(&a, 1), 0);
    let (pc, q) = projective_replacement(&x, 8).unwrap();
    assert_eq!((pc.lo(), pc.hi()), (-1, 0));
    assert!(pc.is_standard_projective());
    assert!(q.is_chain_map());
    assert!(q.is_quasi_isomorphism());
}

#[test]
fn replacement_matches_syzygy_resolution() {
    for (a, op) in examples() {
        for m in modules(&a, &op) {
            let x = Complex::stalk(&m, 0);
            let (pc, q) = projective_replacement(&x, 8).unwrap();
            assert!(q.is_quasi_isomorphism());
            let res = projective_resolution(&m, 8).unwrap();
            let (rc, aug) = resolution_complex(&res, &m);
            assert!(aug.is_quasi_isomorphism());
            // both minimal: term dimensions agree degreewise
            for n in -4..=1 {
                assert_eq!(pc.dim_at(n), rc.dim_at(n), "degree {n}");
            }
        }
    }
}

#[test]
fn replacement_of_complexes_is_quasi_isomorphic() {
    for (a, op) in examples() {
        for x in menu(&a, &op) {
            let (pc, q) = x.replacement().unwrap();
            assert!(pc.is_standard_projective() || pc.is_zero());
            assert!(q.is_chain_map());
            assert!(q.is_quasi_isomorphism());
            assert_eq!(pc.homology_vector(), x.homology_vector());
        }
    }
}

#[test]
fn hom_from_projective_reads_graded_part() {
    for (a, op) in examples() {
        for x in 0..a.vertex_count() {
            let px = Complex::stalk(&projective(&a, x), 0);
            for y in menu(&a, &op) {
                let h = HomComplex::new(&px, &y).unwrap();
                for n in -3..=3 {
                    // H^n Hom(P_x, Y) = H^n(Y) e_x, computed on the e_x-graded subcomplex
                    let idx = |k: i32| y.term(k).graded_part(x);
                    let sub = |k: i32| y.diff(k).select_rows(&idx(k)).select_cols(&idx(k + 1));
                    let expected = idx(n).len() - sub(n).rank() - sub(n - 1).rank();
                    assert_eq!(h.cohomology_dim(n), expected);
                }
            }
        }
    }
}

#[test]
fn derived_hom_between_modules_is_ext() {
    for (a, op) in examples() {
        let ms = modules(&a, &op);
        for m in &ms {
            for n in &ms {
                let (pm, _) = Complex::stalk(m, 0).replacement().unwrap();
                let h = HomComplex::new(&pm, &Complex::stalk(n, 0)).unwrap();
                let ext = ext_dims(m, n, 3, 8).unwrap();
                for (k, &e) in ext.iter().enumerate() {
                    assert_eq!(h.cohomology_dim(k as i32), e);
                }
            }
        }
    }
}

#[test]
fn tensor_with_dual_gives_injective() {
    for (a, op) in examples() {
        let da = Bimodule::regular(&a).k_dual();
        for x in 0..a.vertex_count() {
            let t = derived_tensor(&Complex::stalk(&projective(&a, x), 0), &da).unwrap();
            let inj = injective(&a, &op, x).unwrap();
            assert_eq!(t.complex.homology_vector(), vec![(0, inj.dim())]);
        }
    }
    let (a, _) = f1();
    let da = Bimodule::regular(&a).k_dual();
    let t = derived_tensor(&Complex::stalk(&projective(&a, 0), 0), &da).unwrap();
    assert_eq!(t.complex.homology_vector(), vec![(0, 2)]);
}

#[test]
fn euler_characteristic_of_cones() {
    for (a, op) in examples() {
        let xs = menu(&a, &op);
        for x in &xs {
            let from_homology: i64 =
                x.homology_vector().iter().map(|&(n, d)| if n % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
            assert_eq!(x.euler_characteristic(), from_homology);
            for y in &xs {
                let (px, _) = x.replacement().unwrap();
                let h = HomComplex::new(&px, y).unwrap();
                if h.cohomology_dim(0) == 0 {
                    continue;
                }
                let f = h.map_of_class(&vec![1; h.cohomology_dim(0)]);
                assert!(f.is_chain_map());
                let c = cone(&f);
                assert_eq!(c.euler_characteristic(), y.euler_characteristic() - px.euler_characteristic());
            }
        }
    }
}

#[test]
fn class_round_trip() {
    for (a, op) in examples() {
        let xs = menu(&a, &op);
        for x in &xs {
            let (px, _) = x.replacement().unwrap();
            for y in &xs {
                let h = HomComplex::new(&px, y).unwrap();
                let d = h.cohomology_dim(0);
                let class: Vec<u64> = (0..d as u64).map(|i| i * 7 + 2).collect();
                let f = h.map_of_class(&class);
                assert_eq!(h.class_of_map(&f), class);
            }
        }
    }
}

#[test]
fn lift_through_replacement() {
    for (a, op) in examples() {
        for x in menu(&a, &op) {
            let (px, q) = x.replacement().unwrap();
            let f = q.scale(3);
            let g = lift_through_qis(&f, &q).unwrap();
            assert!(g.is_chain_map());
            let h = HomComplex::new(&px, &x).unwrap();
            assert_eq!(h.class_of_map(&g.then(&q)), h.class_of_map(&f));
            let hp = HomComplex::new(&px, &px).unwrap();
            assert_eq!(hp.class_of_map(&g), hp.class_of_map(&ChainMap::identity(&px).scale(3)));
        }
    }
}

#[test]
fn homotopy_from_boundary() {
    let (a, _) = f1();
    let x = Complex::stalk(&simple(&a, 1), 0);
    let (px, _) = x.replacement().unwrap();
    let h = HomComplex::new(&px, &px).unwrap();
    // the null-homotopic map d h + h d for every degree -1 basis element
    for i in 0..h.dim(-1) {
        let mut v = vec![0u64; h.dim(-1)];
        v[i] = 1;
        let b = h.diff(-1).apply(&v);
        let f = h.to_chain_map(&b);
        assert!(f.is_chain_map());
        assert!(h.to_homotopy(&v).witnesses(&f, &ChainMap::zero(&px, &px)));
        assert!(h.class_of_map(&f).iter().all(|&c| c == 0));
    }
}

#[test]
fn duality_is_involutive() {
    for (a, op) in examples() {
        for x in menu(&a, &op) {
            let dx = dual(&x, &op).unwrap();
            let ddx = dual(&dx, &a).unwrap();
            assert_eq!(ddx.homology_dims(), x.homology_dims());
            for (n, d) in x.homology_vector() {
                assert_eq!(dx.homology_dims()[&(-n)], d);
            }
        }
    }
}

#[test]
fn certificates() {
    for (a, op) in examples() {
        let xs = menu(&a, &op);
        for x in &xs {
            let (px, _) = x.replacement().unwrap();
            assert!(derived_iso_certificate(&px, x, 16, 7).unwrap().is_isomorphic());
            assert!(derived_iso_certificate(x, x, 16, 7).unwrap().is_isomorphic());
            if !x.is_acyclic() {
                let c = derived_iso_certificate(x, &shift(x, 1), 16, 7).unwrap();
                assert!(matches!(c, DerivedIsoCertificate::NotIsomorphic { .. }));
            }
        }
    }
    let (a, _) = f1();
    let z = Complex::zero(&a);
    let acyc = cone(&ChainMap::identity(&Complex::stalk(&simple(&a, 0), 0)));
    assert!(matches!(
        derived_iso_certificate(&z, &acyc, 4, 0).unwrap(),
        DerivedIsoCertificate::Isomorphic { attempts: 0, .. }
    ));
}

#[test]
fn composition_factors_separate_equal_dimensions() {
    // S1 + S1 and P2 both have dimension 2 but different composition factors
    let (a, _) = f1();
    let s = simple(&a, 0);
    let two = recoll_core::module::direct_sum(&a, &[s.clone(), s]);
    let x = Complex::stalk(&two, 0);
    let y = Complex::stalk(&projective(&a, 1), 0);
    let c = derived_iso_certificate(&x, &y, 8, 1).unwrap();
    assert!(matches!(c, DerivedIsoCertificate::NotIsomorphic { .. }));
}

#[test]
fn zero_attempts_is_inconclusive() {
    let (a, _) = f1();
    let x = Complex::stalk(&projective(&a, 1), 0);
    let c = derived_iso_certificate(&x, &x, 0, 1).unwrap();
    assert!(matches!(c, DerivedIsoCertificate::Inconclusive { attempts: 0 }));
}

#[test]
fn graded_homology_of_projective() {
    let (a, _) = f1();
    let x = Complex::stalk(&projective(&a, 1), 0);
    assert_eq!(x.homology_dim_vectors(), vec![(0, vec![1, 1])]);
}

#[test]
fn invalid_complexes_rejected() {
    let (a, _) = f1();
    let p2 = projective(&a, 1);
    let bad = Matrix::identity(P, 2);
    assert!(Complex::new(&a, 0, vec![p2.clone(), p2.clone(), p2], vec![bad.clone(), bad]).is_err());
}
