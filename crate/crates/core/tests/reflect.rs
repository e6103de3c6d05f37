mod common;

use std::collections::BTreeMap;

use common::{f1, f2, fixtures};
use recoll_core::complex::Complex;
use recoll_core::module::{projective, simple, Bimodule};
use recoll_core::recollement::{Diagram, Kind, Position, Prim, Verdict, VerificationReport};
use recoll_core::reflect::{new_adjoint_pipeline, reflected_diagram, Corruption, NewAdjoint, NewAdjunction, Variant};

fn failures(rep: &VerificationReport) -> Vec<String> {
    rep.cells
        .iter()
        .filter(|c| c.verdict != Verdict::Pass)
        .map(|c| format!("{} {:?} {:?} {:?} {:?}", c.axiom, c.objects, c.expected, c.actual, c.certificate))
        .collect()
}

#[test]
fn pipelines_expand_to_five_steps() {
    use Prim::*;
    assert_eq!(new_adjoint_pipeline(NewAdjoint::SubLeft).steps(), &[Restrict, Nakayama, Coextend, Restrict, InverseNakayama]);
    assert_eq!(new_adjoint_pipeline(NewAdjoint::QuotientLeft).steps(), &[Nakayama, Truncate, Coinduce, InverseNakayama, Truncate]);
    assert_eq!(new_adjoint_pipeline(NewAdjoint::QuotientRight).steps(), &[InverseNakayama, Truncate, Induce, Nakayama, Truncate]);
    assert_eq!(new_adjoint_pipeline(NewAdjoint::SubRight).steps(), &[Restrict, InverseNakayama, Extend, Restrict, Nakayama]);
    for a in NewAdjoint::ALL {
        assert_eq!(NewAdjoint::parse(a.name()), Some(a));
    }
}

#[test]
fn composite_iso_examples() {
    let r = f1();
    let a = r.algebra(Kind::Ambient);
    let b = r.algebra(Kind::Quotient);
    let breg = Complex::stalk(&Bimodule::regular(b).as_right_module(), 0);
    let p1 = Complex::stalk(&projective(a, 0), 0);
    let p2 = Complex::stalk(&projective(a, 1), 0);
    let m = r.composite_adjunction_iso(NewAdjunction::SubLeftExtend, &breg, &p1).unwrap();
    assert_eq!((m.rows(), m.cols()), (1, 1));
    assert!(m.is_invertible());
    let m = r.composite_adjunction_iso(NewAdjunction::SubLeftExtend, &breg, &p2).unwrap();
    assert_eq!((m.rows(), m.cols()), (0, 0));
    let m = r.composite_adjunction_iso(NewAdjunction::SubLeftExtend, &Complex::zero(b), &p1).unwrap();
    assert_eq!((m.rows(), m.cols()), (0, 0));
}

#[test]
fn diagram_shapes() {
    let up = reflected_diagram(Variant::Upper);
    let low = reflected_diagram(Variant::Lower);
    assert_eq!(up.functor(Position::JMiddle).steps(), &[Prim::Extend]);
    assert_eq!(up.functor(Position::IMiddle).steps(), &[Prim::Induce]);
    assert_eq!(low.functor(Position::IMiddle).steps(), &[Prim::Coinduce]);
    assert_eq!(low.functor(Position::JMiddle).steps(), &[Prim::Coextend]);
    for d in [&up, &low] {
        assert_eq!(d.functor(Position::JLeft).source(), Kind::Quotient);
        assert_eq!(d.sub, Kind::Corner);
    }
    assert_eq!(up.functor(Position::JRight).steps(), &[Prim::Restrict]);
    assert_eq!(low.functor(Position::JLeft).steps(), &[Prim::Restrict]);
    assert_eq!(up.functor(Position::IRight).steps(), &[Prim::Truncate]);
    assert_eq!(low.functor(Position::ILeft).steps(), &[Prim::Truncate]);
}

#[test]
fn original_diagram_verifies() {
    for (name, r) in fixtures() {
        let rep = r.verify_axioms(&Diagram::original(), &r.default_menus().unwrap()).unwrap();
        assert!(failures(&rep).is_empty(), "{name}: {:#?}", failures(&rep));
        for axiom in ["adjunction", "naturality", "vanishing j^*i_*", "embedding", "triangle i_*i^!", "triangle j_!j^*", "vanishing i^", "image"] {
            assert!(rep.cells_for(axiom).count() > 0, "{name} {axiom}");
        }
    }
}

#[test]
fn reflected_diagrams_verify() {
    for (name, r) in fixtures() {
        let menus = r.default_menus().unwrap();
        for v in [Variant::Upper, Variant::Lower] {
            let rep = r.verify_reflected(&r.reflected(v), &menus).unwrap();
            assert!(failures(&rep).is_empty(), "{name} {v:?}: {:#?}", failures(&rep));
        }
    }
}

#[test]
fn corrupted_diagrams_fail() {
    let r = f2();
    let menus = r.default_menus().unwrap();
    for c in [Corruption::SwapExtendCoextend, Corruption::SubRightForSubLeft] {
        let rep = r.verify_axioms(&c.diagram(), &menus).unwrap();
        assert!(rep.cells_for("adjunction").any(|c| c.verdict == Verdict::Fail), "{c:?}");
    }
    // the documented witness: S1 of B against P3
    let b = r.algebra(Kind::Quotient);
    let a = r.algebra(Kind::Ambient);
    let s1 = Complex::stalk(&simple(b, 0), 0);
    let p3 = Complex::stalk(&projective(a, 2), 0);
    let shriek = r.apply(&NewAdjoint::SubLeft.pipeline(), &s1).unwrap();
    let query = r.apply(&NewAdjoint::SubRight.pipeline(), &s1).unwrap();
    assert_ne!(r.hom(&shriek, &p3).unwrap().dims(), r.hom(&query, &p3).unwrap().dims());
}

#[test]
fn consistency_and_involution() {
    for (name, r) in fixtures() {
        let menus: BTreeMap<_, _> = r.default_menus().unwrap();
        let rep = r.sub_left_consistency(&menus[&Kind::Quotient]).unwrap();
        assert!(failures(&rep).is_empty(), "{name}: {:#?}", failures(&rep));
        let rep = r.involution_check(&menus[&Kind::Ambient], &menus[&Kind::Corner]).unwrap();
        assert!(failures(&rep).is_empty(), "{name}: {:#?}", failures(&rep));
    }
}
