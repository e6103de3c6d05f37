mod common;

use common::{f1, fixtures};
use recoll_core::complex::{derived_iso_certificate, Complex};
use recoll_core::module::{injective, projective, Bimodule};
use recoll_core::recollement::{Kind, Side};
use recoll_core::serre::{inverse_serre_functor, serre_functor};

#[test]
fn nakayama_sends_projectives_to_injectives() {
    for (name, r) in fixtures() {
        let a = r.algebra(Kind::Ambient);
        let op = r.side(Side::Opposite).ambient.clone();
        for x in 0..a.vertex_count() {
            let t = r.serre_apply(Kind::Ambient, false, &Complex::stalk(&projective(a, x), 0)).unwrap();
            let i = Complex::stalk(&injective(a, &op, x).unwrap(), 0);
            assert!(derived_iso_certificate(&t, &i, 16, 1).unwrap().is_isomorphic(), "{name} vertex {x}");
        }
    }
    let r = f1();
    let a = r.algebra(Kind::Ambient);
    let t = r.serre_apply(Kind::Ambient, false, &Complex::stalk(&projective(a, 0), 0)).unwrap();
    assert_eq!(t.homology_vector(), vec![(0, 2)]);
    let t = r.serre_apply(Kind::Ambient, false, &Complex::stalk(&projective(a, 1), 0)).unwrap();
    assert_eq!(t.homology_vector(), vec![(0, 1)]);
    assert!(r.serre_apply(Kind::Ambient, false, &Complex::zero(a)).unwrap().is_zero());
}

#[test]
fn trace_pairing_examples() {
    let r = f1();
    let a = r.algebra(Kind::Ambient);
    let p1 = Complex::stalk(&projective(a, 0), 0);
    let p2 = Complex::stalk(&projective(a, 1), 0);
    let w = r.serre_pairing(Kind::Ambient, &p1, &p2).unwrap();
    assert_eq!((w.gram.rows(), w.gram.cols()), (1, 1));
    assert!(w.is_nondegenerate());
    let w = r.serre_pairing(Kind::Ambient, &p1, &Complex::zero(a)).unwrap();
    assert_eq!((w.gram.rows(), w.gram.cols()), (0, 0));
    for (name, r) in fixtures() {
        let a = r.algebra(Kind::Ambient);
        let reg = Complex::stalk(&Bimodule::regular(a).as_right_module(), 0);
        let w = r.serre_pairing(Kind::Ambient, &reg, &reg).unwrap();
        assert_eq!(w.gram.rows(), a.dim(), "{name}");
    }
}

#[test]
fn induced_serre_examples() {
    let r = f1();
    let b = r.algebra(Kind::Quotient);
    let c = r.algebra(Kind::Corner);
    let breg = Complex::stalk(&Bimodule::regular(b).as_right_module(), 0);
    let creg = Complex::stalk(&Bimodule::regular(c).as_right_module(), 0);
    assert_eq!(r.serre_apply(Kind::Quotient, false, &breg).unwrap().homology_vector(), vec![(0, 1)]);
    assert_eq!(r.serre_apply(Kind::Corner, false, &creg).unwrap().homology_vector(), vec![(0, 1)]);
    assert!(r.serre_apply(Kind::Quotient, false, &Complex::zero(b)).unwrap().is_zero());
}

#[test]
fn all_pairings_nondegenerate() {
    for (name, r) in fixtures() {
        for kind in [Kind::Ambient, Kind::Quotient, Kind::Corner] {
            let menu = r.menu(kind).unwrap();
            for (xn, x) in &menu {
                for (yn, y) in &menu {
                    let g = r.serre_gram(kind, x, y).unwrap();
                    assert!(g.is_invertible(), "{name} {kind} right ({xn}, {yn}) {:?}", g.row_vecs());
                    let l = r.left_serre_gram(kind, x, y).unwrap();
                    assert!(l.is_invertible(), "{name} {kind} left ({xn}, {yn})");
                }
            }
        }
    }
}

#[test]
fn serre_axioms_hold_in_every_category() {
    for (name, r) in fixtures() {
        for kind in [Kind::Ambient, Kind::Quotient, Kind::Corner] {
            let menu = r.menu(kind).unwrap();
            let rep = r.serre_axiom_check(kind, &serre_functor(kind), &inverse_serre_functor(kind), &menu).unwrap();
            let bad: Vec<_> = rep.cells.iter().filter(|c| c.verdict != recoll_core::recollement::Verdict::Pass).collect();
            assert!(bad.is_empty(), "{name} {kind}: {bad:#?}");
        }
        for kind in [Kind::Quotient, Kind::Corner] {
            assert!(r.intrinsic_nakayama_check(kind).unwrap().all_pass(), "{name} {kind}");
        }
    }
}

// <a f, g> = <f, g T(a)> and <f b, g> = <f, b g> on sampled triples
#[test]
fn trace_pairing_is_natural() {
    use recoll_core::recollement::{FunctorExpr, Prim};
    let pair = |g: &recoll_core::linalg::Matrix, u: &[u64], v: &[u64]| -> u64 {
        let gv = g.apply(u);
        gv.iter().zip(v).fold(0, |acc, (a, b)| (acc + a * b) % g.prime())
    };
    let t = FunctorExpr::single(Prim::Nakayama);
    for (name, r) in fixtures() {
        let menu = r.menu(Kind::Ambient).unwrap();
        let mut checked = 0;
        for (_, x0) in &menu {
            for (_, x) in &menu {
                for (_, y) in &menu {
                    let ha = r.hom(x0, x).unwrap();
                    let hf = r.hom(x, y).unwrap();
                    let tx0 = r.apply(&t, x0).unwrap();
                    let hg = r.hom(y, &tx0).unwrap();
                    if ha.dim() == 0 || hf.dim() == 0 || hg.dim() == 0 {
                        continue;
                    }
                    let (a, f, g) = (&ha.basis()[0], &hf.basis()[hf.dim() - 1], &hg.basis()[0]);
                    let lhs = pair(&r.serre_gram(Kind::Ambient, x0, y).unwrap(), &r.hom(x0, y).unwrap().class_of(&a.then(f).unwrap()), &hg.class_of(g));
                    let ta = r.map(&t, a).unwrap();
                    let tx = r.apply(&t, x).unwrap();
                    let rhs = pair(&r.serre_gram(Kind::Ambient, x, y).unwrap(), &hf.class_of(f), &r.hom(y, &tx).unwrap().class_of(&g.then(&ta).unwrap()));
                    assert_eq!(lhs, rhs, "{name}");
                    checked += 1;
                }
            }
        }
        assert!(checked > 0, "{name}");
        for (xn, x) in &menu {
            for (yn, y) in &menu {
                for (y2n, y2) in &menu {
                    let tx = r.apply(&t, x).unwrap();
                    let (hf, hb, hg) = (r.hom(x, y).unwrap(), r.hom(y, y2).unwrap(), r.hom(y2, &tx).unwrap());
                    if hf.dim() == 0 || hb.dim() == 0 || hg.dim() == 0 {
                        continue;
                    }
                    let (f, b, g) = (&hf.basis()[0], &hb.basis()[hb.dim() - 1], &hg.basis()[0]);
                    let lhs = pair(&r.serre_gram(Kind::Ambient, x, y2).unwrap(), &r.hom(x, y2).unwrap().class_of(&f.then(b).unwrap()), &hg.class_of(g));
                    let rhs = pair(&r.serre_gram(Kind::Ambient, x, y).unwrap(), &hf.class_of(f), &r.hom(y, &tx).unwrap().class_of(&b.then(g).unwrap()));
                    assert_eq!(lhs, rhs, "{name} {xn} {yn} {y2n}");
                }
            }
        }
    }
}
