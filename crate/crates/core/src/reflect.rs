//! Reflected recollements. The Serre functors supply four further adjoints
//!
//! ```text
//! i_! = T~ i_* S      (left of i^*)       i_? = T i_* S~      (right of i^!)
//! j^? = U~ j^* T      (left of j_!)       j^! = U j^* T~      (right of j_*)
//! ```
//!
//! and with them two new diagrams: the upper one has `U` embedded by `j_!`
//! and `S` by `i_!`, `i_*`; the lower one has `U` embedded by `j_*` and `S`
//! by `i_*`, `i_?`. Each new adjunction isomorphism is a chain of a left
//! Serre pairing, a primitive adjunction and a right Serre pairing.

use std::fmt;

use crate::complex::{derived_iso_certificate, derived_tensor, Complex};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::Bimodule;
use crate::recollement::{
    Adjunction, AdjunctionProvider, Cell, Diagram, FunctorExpr, Kind, Menu, Position, Prim, Recollement, VerificationReport,
};
use crate::serre::{certificate_verdict, inverse_serre_functor, serre_functor};

/// The four adjoints constructed from Serre functors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NewAdjoint {
    /// `i_!`, left adjoint of `i^*`.
    SubLeft,
    /// `j^?`, left adjoint of `j_!`.
    QuotientLeft,
    /// `i_?`, right adjoint of `i^!`.
    SubRight,
    /// `j^!`, right adjoint of `j_*`.
    QuotientRight,
}

impl NewAdjoint {
    pub const ALL: [NewAdjoint; 4] =
        [NewAdjoint::SubLeft, NewAdjoint::QuotientLeft, NewAdjoint::SubRight, NewAdjoint::QuotientRight];

    pub fn name(self) -> &'static str {
        match self {
            NewAdjoint::SubLeft => "i_!",
            NewAdjoint::QuotientLeft => "j^?",
            NewAdjoint::SubRight => "i_?",
            NewAdjoint::QuotientRight => "j^!",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.name() == s)
    }

    /// The expanded five-step pipeline, in order of application.
    pub fn pipeline(self) -> FunctorExpr {
        use Prim::*;
        let steps = match self {
            NewAdjoint::SubLeft => vec![Restrict, Nakayama, Coextend, Restrict, InverseNakayama],
            NewAdjoint::QuotientLeft => vec![Nakayama, Truncate, Coinduce, InverseNakayama, Truncate],
            NewAdjoint::SubRight => vec![Restrict, InverseNakayama, Extend, Restrict, Nakayama],
            NewAdjoint::QuotientRight => vec![InverseNakayama, Truncate, Induce, Nakayama, Truncate],
        };
        FunctorExpr::new(steps).expect("new adjoint pipelines compose")
    }
}

impl fmt::Display for NewAdjoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn new_adjoint_pipeline(which: NewAdjoint) -> FunctorExpr {
    which.pipeline()
}

/// The four adjoint pairs involving a new adjoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NewAdjunction {
    /// `i_! -| i^*`
    SubLeftExtend,
    /// `j^? -| j_!`
    QuotientLeftInduce,
    /// `i^! -| i_?`
    CoextendSubRight,
    /// `j_* -| j^!`
    CoinduceQuotientRight,
}

impl NewAdjunction {
    pub const ALL: [NewAdjunction; 4] = [
        NewAdjunction::SubLeftExtend,
        NewAdjunction::QuotientLeftInduce,
        NewAdjunction::CoextendSubRight,
        NewAdjunction::CoinduceQuotientRight,
    ];

    pub fn left(self) -> FunctorExpr {
        match self {
            NewAdjunction::SubLeftExtend => NewAdjoint::SubLeft.pipeline(),
            NewAdjunction::QuotientLeftInduce => NewAdjoint::QuotientLeft.pipeline(),
            NewAdjunction::CoextendSubRight => FunctorExpr::single(Prim::Coextend),
            NewAdjunction::CoinduceQuotientRight => FunctorExpr::single(Prim::Coinduce),
        }
    }

    pub fn right(self) -> FunctorExpr {
        match self {
            NewAdjunction::SubLeftExtend => FunctorExpr::single(Prim::Extend),
            NewAdjunction::QuotientLeftInduce => FunctorExpr::single(Prim::Induce),
            NewAdjunction::CoextendSubRight => NewAdjoint::SubRight.pipeline(),
            NewAdjunction::CoinduceQuotientRight => NewAdjoint::QuotientRight.pipeline(),
        }
    }

    fn label(self) -> (&'static str, &'static str) {
        match self {
            NewAdjunction::SubLeftExtend => ("i_!", "i^*"),
            NewAdjunction::QuotientLeftInduce => ("j^?", "j_!"),
            NewAdjunction::CoextendSubRight => ("i^!", "i_?"),
            NewAdjunction::CoinduceQuotientRight => ("j_*", "j^!"),
        }
    }
}

impl fmt::Display for NewAdjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r) = self.label();
        write!(f, "({l}, {r})")
    }
}

fn invert(m: &Matrix, what: &str) -> Result<Matrix> {
    m.inverse().ok_or_else(|| Error::SingularPairing(what.to_string()))
}

impl Recollement {
    /// `Hom(Fx, y) -> Hom(x, Gy)` for a new adjoint pair, in class
    /// coordinates.
    pub fn composite_adjunction_iso(&self, which: NewAdjunction, x: &Complex, y: &Complex) -> Result<Matrix> {
        let apply = |e: &FunctorExpr, z: &Complex| self.apply(e, z);
        let single = FunctorExpr::single;
        match which {
            NewAdjunction::SubLeftExtend => {
                // Hom(T~Z, y) = Hom(y, Z)^* = Hom(i^*y, Sx)^* = Hom(x, i^*y), Z = i_*Sx
                let sx = apply(&serre_functor(Kind::Quotient), x)?;
                let z = apply(&single(Prim::Restrict), &sx)?;
                let iy = apply(&single(Prim::Extend), y)?;
                let l = self.left_serre_gram(Kind::Ambient, y, &z)?;
                let phi = self.adjunction_iso(Adjunction::ExtendRestrict, y, &sx)?;
                let g = self.serre_gram(Kind::Quotient, x, &iy)?;
                Ok(l.transpose().mul(&phi.transpose()).mul(&invert(&g, "S pairing")?))
            }
            NewAdjunction::QuotientLeftInduce => {
                // Hom(U~m, n) = Hom(n, m)^* = Hom(j_!n, Tx)^* = Hom(x, j_!n), m = j^*Tx
                let tx = apply(&single(Prim::Nakayama), x)?;
                let m = apply(&single(Prim::Truncate), &tx)?;
                let jn = apply(&single(Prim::Induce), y)?;
                let l = self.left_serre_gram(Kind::Corner, y, &m)?;
                let phi = self.adjunction_iso(Adjunction::InduceTruncate, y, &tx)?;
                let g = self.serre_gram(Kind::Ambient, x, &jn)?;
                Ok(l.transpose().mul(&phi.transpose()).mul(&invert(&g, "T pairing")?))
            }
            NewAdjunction::CoextendSubRight => {
                // Hom(i^!x, b) = Hom(S~b, i^!x)^* = Hom(W, x)^* = Hom(x, TW), W = i_*S~b
                let sb = apply(&inverse_serre_functor(Kind::Quotient), y)?;
                let w = apply(&single(Prim::Restrict), &sb)?;
                let ix = apply(&single(Prim::Coextend), x)?;
                let l = self.left_serre_gram(Kind::Quotient, &ix, y)?;
                let phi = self.adjunction_iso(Adjunction::RestrictCoextend, &sb, x)?;
                let g = self.serre_gram(Kind::Ambient, &w, x)?;
                Ok(l.mul(&phi.transpose()).mul(&invert(&g, "T pairing")?.transpose()))
            }
            NewAdjunction::CoinduceQuotientRight => {
                // Hom(j_*n, y) = Hom(T~y, j_*n)^* = Hom(m, n)^* = Hom(n, Um), m = j^*T~y
                let ty = apply(&single(Prim::InverseNakayama), y)?;
                let m = apply(&single(Prim::Truncate), &ty)?;
                let jn = apply(&single(Prim::Coinduce), x)?;
                let l = self.left_serre_gram(Kind::Ambient, &jn, y)?;
                let phi = self.adjunction_iso(Adjunction::TruncateCoinduce, &ty, x)?;
                let g = self.serre_gram(Kind::Corner, &m, x)?;
                Ok(l.mul(&phi.transpose()).mul(&invert(&g, "U pairing")?.transpose()))
            }
        }
    }
}

/// Which of the two reflections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Upper,
    Lower,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Upper => "upper",
            Variant::Lower => "lower",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReflectedRecollement {
    pub variant: Variant,
    pub diagram: Diagram,
}

/// Deliberately wrong diagrams used as negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corruption {
    /// The original diagram with `i^*` and `i^!` exchanged.
    SwapExtendCoextend,
    /// The upper diagram with `i_?` in place of `i_!`.
    SubRightForSubLeft,
}

impl Corruption {
    pub fn diagram(self) -> Diagram {
        match self {
            Corruption::SwapExtendCoextend => {
                Diagram::original().swapped(Position::ILeft, Position::IRight, "corrupted: i^* and i^! exchanged")
            }
            Corruption::SubRightForSubLeft => reflected_diagram(Variant::Upper).with_functor(
                Position::JLeft,
                NewAdjoint::SubRight.pipeline(),
                "corrupted: i_? in place of i_!",
            ),
        }
    }
}

/// Pipelines and adjunction isomorphisms of a reflected diagram.
pub fn reflected_diagram(variant: Variant) -> Diagram {
    use AdjunctionProvider::{Composite, Primitive};
    let single = FunctorExpr::single;
    let (functors, providers) = match variant {
        Variant::Upper => (
            [
                NewAdjoint::QuotientLeft.pipeline(),
                single(Prim::Induce),
                single(Prim::Truncate),
                NewAdjoint::SubLeft.pipeline(),
                single(Prim::Extend),
                single(Prim::Restrict),
            ],
            [
                Some(Composite(NewAdjunction::QuotientLeftInduce)),
                Some(Primitive(Adjunction::InduceTruncate)),
                Some(Composite(NewAdjunction::SubLeftExtend)),
                Some(Primitive(Adjunction::ExtendRestrict)),
            ],
        ),
        Variant::Lower => (
            [
                single(Prim::Truncate),
                single(Prim::Coinduce),
                NewAdjoint::QuotientRight.pipeline(),
                single(Prim::Restrict),
                single(Prim::Coextend),
                NewAdjoint::SubRight.pipeline(),
            ],
            [
                Some(Primitive(Adjunction::TruncateCoinduce)),
                Some(Composite(NewAdjunction::CoinduceQuotientRight)),
                Some(Primitive(Adjunction::RestrictCoextend)),
                Some(Composite(NewAdjunction::CoextendSubRight)),
            ],
        ),
    };
    Diagram::new(variant.name(), Kind::Corner, Kind::Quotient, functors, providers).expect("reflected pipelines sit in position")
}

impl Recollement {
    pub fn reflected(&self, variant: Variant) -> ReflectedRecollement {
        ReflectedRecollement { variant, diagram: reflected_diagram(variant) }
    }

    /// All recollement axioms for a reflected diagram.
    pub fn verify_reflected(&self, rr: &ReflectedRecollement, menus: &std::collections::BTreeMap<Kind, Menu>) -> Result<VerificationReport> {
        self.verify_axioms(&rr.diagram, menus)
    }

    /// `i_!` through its expanded pipeline against `T~ i_*` applied to the
    /// Nakayama functor of `B` computed from `DB`.
    pub fn sub_left_consistency(&self, menu: &Menu) -> Result<VerificationReport> {
        let b = self.algebra(Kind::Quotient);
        let db = Bimodule::regular(b).k_dual();
        let tail = FunctorExpr::new(vec![Prim::Restrict, Prim::InverseNakayama])?;
        let mut rep = VerificationReport { diagram: "upper".into(), ..Default::default() };
        for (n, x) in menu {
            let direct = self.apply(&NewAdjoint::SubLeft.pipeline(), x)?;
            let via = self.apply(&tail, &derived_tensor(x, &db)?.complex)?;
            let c = derived_iso_certificate(&direct, &via, self.caps.attempts, self.caps.seed)?;
            let (verdict, note) = certificate_verdict(&c);
            rep.cells.push(Cell {
                axiom: "i_! = T~ i_* S".into(),
                diagram: rep.diagram.clone(),
                objects: vec![format!("{}:{n}", Kind::Quotient)],
                expected: via.homology_vector(),
                actual: direct.homology_vector(),
                verdict,
                certificate: Some(note),
            });
        }
        Ok(rep)
    }

    /// Reflecting the upper diagram downwards returns the original one: the
    /// new right adjoints `S i^* T~` and `T j_! U~` must agree with `i^!` and
    /// `j_*`.
    pub fn involution_check(&self, ambient: &Menu, corner: &Menu) -> Result<VerificationReport> {
        let mut rep = VerificationReport { diagram: "upper, reflected down".into(), ..Default::default() };
        let s_steps = serre_functor(Kind::Quotient);
        let coextend_again = FunctorExpr::new(vec![Prim::InverseNakayama, Prim::Extend])?.then(&s_steps)?;
        let coinduce_again = inverse_serre_functor(Kind::Corner).then(&FunctorExpr::new(vec![Prim::Induce, Prim::Nakayama])?)?;
        let cases = [
            ("involution i^! = S i^* T~", Kind::Ambient, ambient, coextend_again, FunctorExpr::single(Prim::Coextend)),
            ("involution j_* = T j_! U~", Kind::Corner, corner, coinduce_again, FunctorExpr::single(Prim::Coinduce)),
        ];
        for (axiom, kind, menu, again, orig) in cases {
            for (n, x) in menu {
                let a = self.apply(&again, x)?;
                let o = self.apply(&orig, x)?;
                let c = derived_iso_certificate(&a, &o, self.caps.attempts, self.caps.seed)?;
                let (verdict, note) = certificate_verdict(&c);
                rep.cells.push(Cell {
                    axiom: axiom.into(),
                    diagram: rep.diagram.clone(),
                    objects: vec![format!("{kind}:{n}")],
                    expected: o.homology_vector(),
                    actual: a.homology_vector(),
                    verdict,
                    certificate: Some(note),
                });
            }
        }
        Ok(rep)
    }
}

/// Resolves a functor name: the eight primitives, the induced Serre functors
/// `S`, `S~`, `U`, `U~` (tilde or combining tilde) and the four new adjoints.
pub fn named_functor(name: &str) -> Option<FunctorExpr> {
    if let Some(p) = Prim::parse(name) {
        return Some(FunctorExpr::single(p));
    }
    if let Some(a) = NewAdjoint::parse(name) {
        return Some(a.pipeline());
    }
    match name {
        "S" => Some(serre_functor(Kind::Quotient)),
        "S~" | "S\u{303}" => Some(inverse_serre_functor(Kind::Quotient)),
        "U" => Some(serre_functor(Kind::Corner)),
        "U~" | "U\u{303}" | "\u{168}" => Some(inverse_serre_functor(Kind::Corner)),
        _ => None,
    }
}
