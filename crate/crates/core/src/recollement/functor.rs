use std::fmt;
use std::sync::Arc;

use super::{Applied, Kind, Recollement, Side};
use crate::complex::{derived_tensor, dual_map, lift_through_qis, tensor_chain_map, ChainMap, Complex};
use crate::derived::Morphism;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::{Bimodule, RightModule};

/// The eight primitive functors of the diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Prim {
    /// `i_*`: restriction of scalars along `A -> B`.
    Restrict,
    /// `i^* = - (x)^L_A B`.
    Extend,
    /// `i^! = RHom_A(B, -)`.
    Coextend,
    /// `j_! = - (x)^L_C eA`.
    Induce,
    /// `j^* = - e`.
    Truncate,
    /// `j_* = RHom_C(Ae, -)`.
    Coinduce,
    /// `T = - (x)^L_A DA`.
    Nakayama,
    /// `T~ = RHom_A(DA, -)`.
    InverseNakayama,
}

impl Prim {
    pub const ALL: [Prim; 8] = [
        Prim::Restrict,
        Prim::Extend,
        Prim::Coextend,
        Prim::Induce,
        Prim::Truncate,
        Prim::Coinduce,
        Prim::Nakayama,
        Prim::InverseNakayama,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Prim::Restrict => "i_*",
            Prim::Extend => "i^*",
            Prim::Coextend => "i^!",
            Prim::Induce => "j_!",
            Prim::Truncate => "j^*",
            Prim::Coinduce => "j_*",
            Prim::Nakayama => "T",
            Prim::InverseNakayama => "T~",
        }
    }

    pub fn parse(s: &str) -> Option<Prim> {
        if s == "T\u{303}" {
            return Some(Prim::InverseNakayama);
        }
        Prim::ALL.into_iter().find(|p| p.name() == s)
    }

    pub fn source(self) -> Kind {
        match self {
            Prim::Restrict => Kind::Quotient,
            Prim::Induce | Prim::Coinduce => Kind::Corner,
            _ => Kind::Ambient,
        }
    }

    pub fn target(self) -> Kind {
        match self {
            Prim::Extend | Prim::Coextend => Kind::Quotient,
            Prim::Truncate => Kind::Corner,
            _ => Kind::Ambient,
        }
    }

    /// For functors computed through duality, the tensor functor used on
    /// the opposite side.
    fn dual_route(self) -> Option<Prim> {
        match self {
            Prim::Coextend => Some(Prim::Extend),
            Prim::Coinduce => Some(Prim::Induce),
            Prim::InverseNakayama => Some(Prim::Nakayama),
            _ => None,
        }
    }
}

impl fmt::Display for Prim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A composable pipeline of primitives, applied first to last.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunctorExpr {
    steps: Vec<Prim>,
}

impl FunctorExpr {
    pub fn new(steps: Vec<Prim>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::TagMismatch("empty pipeline".into()));
        }
        for w in steps.windows(2) {
            if w[0].target() != w[1].source() {
                return Err(Error::TagMismatch(format!(
                    "{} lands in {} but {} starts in {}",
                    w[0],
                    w[0].target(),
                    w[1],
                    w[1].source()
                )));
            }
        }
        Ok(FunctorExpr { steps })
    }

    pub fn single(p: Prim) -> Self {
        FunctorExpr { steps: vec![p] }
    }

    pub fn steps(&self) -> &[Prim] {
        &self.steps
    }

    pub fn source(&self) -> Kind {
        self.steps[0].source()
    }

    pub fn target(&self) -> Kind {
        self.steps[self.steps.len() - 1].target()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &FunctorExpr) -> Result<FunctorExpr> {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&next.steps);
        FunctorExpr::new(steps)
    }
}

impl fmt::Display for FunctorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // usual composition order: last applied first
        let names: Vec<&str> = self.steps.iter().rev().map(|p| p.name()).collect();
        f.write_str(&names.join(" "))
    }
}

impl Recollement {
    fn tensor_bimodule(&self, prim: Prim, side: Side) -> Option<&Bimodule> {
        let s = self.side(side);
        match prim {
            Prim::Extend => Some(&s.quotient_bimodule),
            Prim::Induce => Some(&s.left_corner_bimodule),
            Prim::Nakayama => Some(&s.dual_bimodule),
            _ => None,
        }
    }

    // graded coordinates kept by j^*
    fn truncation_index(&self, side: Side, m: &RightModule) -> Vec<usize> {
        let cv = &self.side(side).corner_vertices;
        (0..m.dim()).filter(|&i| cv.contains(&m.grade()[i])).collect()
    }

    fn exact_term(&self, prim: Prim, side: Side, m: &RightModule) -> RightModule {
        let s = self.side(side);
        match prim {
            Prim::Restrict => {
                let action = (0..s.ambient.dim()).map(|a| m.act_by(s.projection.row(a))).collect();
                let grade = m.grade().iter().map(|&g| s.quotient_vertices[g]).collect();
                RightModule::from_parts(s.ambient.clone(), action, grade, None)
            }
            Prim::Truncate => {
                let idx = self.truncation_index(side, m);
                let action = s.corner_basis.iter().map(|&b| m.action(b).select_rows(&idx).select_cols(&idx)).collect();
                let grade = idx
                    .iter()
                    .map(|&i| s.corner_vertices.iter().position(|&v| v == m.grade()[i]).expect("selected grade"))
                    .collect();
                RightModule::from_parts(s.corner.clone(), action, grade, None)
            }
            _ => unreachable!("not an exact primitive"),
        }
    }

    // termwise action of an exact primitive on a map between two terms
    fn exact_matrix(&self, prim: Prim, side: Side, src: &RightModule, tgt: &RightModule, f: &Matrix) -> Matrix {
        match prim {
            Prim::Restrict => f.clone(),
            Prim::Truncate => f.select_rows(&self.truncation_index(side, src)).select_cols(&self.truncation_index(side, tgt)),
            _ => unreachable!("not an exact primitive"),
        }
    }

    fn exact_complex(&self, prim: Prim, side: Side, x: &Complex) -> Complex {
        let target = self.side(side).algebra(prim.target()).clone();
        x.map_terms(&target, |m| self.exact_term(prim, side, m), |n, d| {
            self.exact_matrix(prim, side, &x.term(n), &x.term(n + 1), d)
        })
    }

    fn check_source(&self, prim: Prim, side: Side, x: &Complex) -> Result<()> {
        if Arc::ptr_eq(x.algebra(), self.side(side).algebra(prim.source())) {
            Ok(())
        } else {
            Err(Error::TagMismatch(format!("{} expects an object of {}", prim, prim.source())))
        }
    }

    pub(crate) fn apply_prim(&self, prim: Prim, side: Side, x: &Complex) -> Result<Applied> {
        self.check_source(prim, side, x)?;
        let key = (prim, side, x.id());
        if let Some(a) = self.applied.lock().expect("cache lock").get(&key) {
            return Ok(a.clone());
        }
        let applied = if let Some(w) = self.tensor_bimodule(prim, side) {
            let t = derived_tensor(x, w)?;
            Applied { complex: t.complex.clone(), tensor: Some(Arc::new(t)) }
        } else if let Some(base) = prim.dual_route() {
            let dx = self.dual(x)?;
            let b = self.apply_prim(base, side.flip(), &dx)?;
            Applied { complex: self.dual(&b.complex)?, tensor: None }
        } else {
            Applied { complex: self.exact_complex(prim, side, x), tensor: None }
        };
        self.applied.lock().expect("cache lock").insert(key, applied.clone());
        Ok(applied)
    }

    /// One primitive on one side.
    pub fn apply_on(&self, prim: Prim, side: Side, x: &Complex) -> Result<Complex> {
        Ok(self.apply_prim(prim, side, x)?.complex)
    }

    /// Evaluates a pipeline on an object of the original diagram.
    pub fn apply(&self, expr: &FunctorExpr, x: &Complex) -> Result<Complex> {
        let mut cur = x.clone();
        for &p in expr.steps() {
            cur = self.apply_on(p, Side::Original, &cur)?;
        }
        Ok(cur)
    }

    /// `D f: DY -> DX` for `f: X -> Y`.
    pub fn dual_morphism(&self, m: &Morphism) -> Result<Morphism> {
        let dx = self.dual(&m.source)?;
        let dy = self.dual(&m.target)?;
        let (px, qx) = m.source.replacement()?;
        let dpx = self.dual(&px)?;
        let t = dual_map(&m.map, &dpx, &dy);
        let s = dual_map(&qx, &dpx, &dx);
        let (_, qdy) = dy.replacement()?;
        let g = lift_through_qis(&qdy.then(&t), &s)?;
        Ok(Morphism::new(&dy, &dx, g))
    }

    pub fn map_on(&self, prim: Prim, side: Side, m: &Morphism) -> Result<Morphism> {
        let fx = self.apply_prim(prim, side, &m.source)?;
        let fy = self.apply_prim(prim, side, &m.target)?;
        if let (Some(tx), Some(ty)) = (&fx.tensor, &fy.tensor) {
            let lifted = m.lift()?;
            return Morphism::from_chain_map(&tensor_chain_map(&lifted, tx, ty));
        }
        if let Some(base) = prim.dual_route() {
            let d = self.dual_morphism(m)?;
            let b = self.map_on(base, side.flip(), &d)?;
            return self.dual_morphism(&b);
        }
        // exact: lift q_{EX} through E(q_X), then apply E to the representative
        let (px, qx) = m.source.replacement()?;
        let epx = self.apply_prim(prim, side, &px)?.complex;
        let on = |f: &ChainMap, src: &Complex, tgt: &Complex| {
            ChainMap::from_fn(src, tgt, |n| self.exact_matrix(prim, side, &f.source.term(n), &f.target.term(n), &f.component(n)))
        };
        let eq = on(&qx, &epx, &fx.complex);
        let ef = on(&m.map, &epx, &fy.complex);
        let (_, qex) = fx.complex.replacement()?;
        let g = lift_through_qis(&qex, &eq)?;
        Ok(Morphism::new(&fx.complex, &fy.complex, g.then(&ef)))
    }

    /// A pipeline applied to a morphism of the original diagram.
    pub fn map(&self, expr: &FunctorExpr, m: &Morphism) -> Result<Morphism> {
        let mut cur = m.clone();
        for &p in expr.steps() {
            cur = self.map_on(p, Side::Original, &cur)?;
        }
        Ok(cur)
    }
}
