use std::fmt;

use super::{Prim, Recollement, Side};
use crate::complex::{ChainMap, HomComplex};
use crate::derived::Morphism;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::complex::Complex;

/// The four adjoint pairs `F -| G` of the diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Adjunction {
    /// `i^* -| i_*`
    ExtendRestrict,
    /// `i_* -| i^!`
    RestrictCoextend,
    /// `j_! -| j^*`
    InduceTruncate,
    /// `j^* -| j_*`
    TruncateCoinduce,
}

impl Adjunction {
    pub const ALL: [Adjunction; 4] = [
        Adjunction::ExtendRestrict,
        Adjunction::RestrictCoextend,
        Adjunction::InduceTruncate,
        Adjunction::TruncateCoinduce,
    ];

    pub fn left(self) -> Prim {
        match self {
            Adjunction::ExtendRestrict => Prim::Extend,
            Adjunction::RestrictCoextend => Prim::Restrict,
            Adjunction::InduceTruncate => Prim::Induce,
            Adjunction::TruncateCoinduce => Prim::Truncate,
        }
    }

    pub fn right(self) -> Prim {
        match self {
            Adjunction::ExtendRestrict => Prim::Restrict,
            Adjunction::RestrictCoextend => Prim::Coextend,
            Adjunction::InduceTruncate => Prim::Truncate,
            Adjunction::TruncateCoinduce => Prim::Coinduce,
        }
    }

    // for right adjoints computed through duality: the tensor-side pair
    // on the opposite recollement whose inverse is used
    fn dual_pair(self) -> Option<Adjunction> {
        match self {
            Adjunction::RestrictCoextend => Some(Adjunction::ExtendRestrict),
            Adjunction::TruncateCoinduce => Some(Adjunction::InduceTruncate),
            _ => None,
        }
    }
}

impl fmt::Display for Adjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.left(), self.right())
    }
}

impl Recollement {
    /// Class of the identity of `z` in `Hom(z, z)`.
    pub fn identity_class(&self, z: &Complex) -> Result<Vec<u64>> {
        Ok(self.hom(z, z)?.class_of(&Morphism::identity(z)?))
    }

    /// Matrix of `D: Hom(X, Y) -> Hom(DY, DX)`.
    pub fn dual_matrix(&self, x: &Complex, y: &Complex) -> Result<Matrix> {
        let h = self.hom(x, y)?;
        let hd = self.hom(&self.dual(y)?, &self.dual(x)?)?;
        h.matrix_to(&hd, |m| self.dual_morphism(m))
    }

    /// Matrix of a pipeline step on morphisms, `Hom(X, Y) -> Hom(FX, FY)`.
    pub fn functor_matrix(&self, prim: Prim, side: Side, x: &Complex, y: &Complex) -> Result<Matrix> {
        let h = self.hom(x, y)?;
        let fx = self.apply_on(prim, side, x)?;
        let fy = self.apply_on(prim, side, y)?;
        let hf = self.hom(&fx, &fy)?;
        h.matrix_to(&hf, |m| self.map_on(prim, side, m))
    }

    /// The adjunction isomorphism `Hom(Fx, y) -> Hom(x, Gy)` as a matrix in
    /// class coordinates.
    pub fn adjunction_iso_on(&self, adj: Adjunction, side: Side, x: &Complex, y: &Complex) -> Result<Matrix> {
        match adj.dual_pair() {
            None => self.tensor_adjunction(adj, side, x, y),
            Some(pair) => {
                // Hom(Fx, y) -> Hom(Dy, DFx) -> Hom(F'Dy, Dx) -> Hom(x, DF'Dy)
                let fx = self.apply_on(adj.left(), side, x)?;
                let d1 = self.dual_matrix(&fx, y)?;
                let dx = self.dual(x)?;
                let dy = self.dual(y)?;
                let inner = self.tensor_adjunction(pair, side.flip(), &dy, &dx)?;
                let inv = inner.inverse().ok_or_else(|| Error::SingularPairing(format!("{pair} on the opposite side")))?;
                let fdy = self.apply_on(pair.left(), side.flip(), &dy)?;
                let d2 = self.dual_matrix(&fdy, &dx)?;
                Ok(d1.mul(&inv).mul(&d2))
            }
        }
    }

    pub fn adjunction_iso(&self, adj: Adjunction, x: &Complex, y: &Complex) -> Result<Matrix> {
        self.adjunction_iso_on(adj, Side::Original, x, y)
    }

    // Hom(P (x) W, y) = Hom(P, Gy) termwise: psi |-> (p |-> psi(p (x) unit))
    fn tensor_adjunction(&self, adj: Adjunction, side: Side, x: &Complex, y: &Complex) -> Result<Matrix> {
        let p = x.prime();
        let applied = self.apply_prim(adj.left(), side, x)?;
        let tc = applied.tensor.clone().expect("left adjoint is a tensor functor");
        let fx = &applied.complex;
        let gy = self.apply_on(adj.right(), side, y)?;
        let h_f = self.hom(fx, y)?;
        let h_g = self.hom(x, &gy)?;
        if h_f.dim() == 0 && h_g.dim() == 0 {
            return Ok(Matrix::zeros(p, 0, 0));
        }
        let h_t = HomComplex::new(fx, y)?;
        let (_, qfx) = fx.replacement()?;
        let pre = h_t.precompose_matrix(&h_f.hom, &qfx, 0);
        let q = h_t.induced_on_cohomology(&h_f.hom, &pre, 0);
        let s = self.side(side);
        let unit = match adj {
            Adjunction::ExtendRestrict => s.quotient.unit(),
            _ => s.idempotent_in_left_corner(),
        };
        let pc = &tc.resolution;
        let reps = h_t.cohomology(0).reps;
        let mut psi = Matrix::zeros(p, reps.rows(), h_g.dim());
        for r in 0..reps.rows() {
            let comps = h_t.components(0, reps.row(r));
            let phi = ChainMap::from_fn(pc, &gy, |k| {
                let zero = || Matrix::zeros(p, pc.dim_at(k), gy.dim_at(k));
                let (Some(part), Some(c)) = (tc.part(k), comps.get(&k)) else { return zero() };
                let mut e = Matrix::zeros(p, pc.dim_at(k), part.module.dim());
                for i in 0..pc.dim_at(k) {
                    let mut v = vec![0; pc.dim_at(k)];
                    v[i] = 1;
                    let mut row = vec![0u64; part.module.dim()];
                    for (j, &u) in unit.iter().enumerate() {
                        if u != 0 {
                            for (o, t) in row.iter_mut().zip(part.class_of_vec(&v, j)) {
                                *o = (*o + u * t) % p;
                            }
                        }
                    }
                    e.row_mut(i).copy_from_slice(&row);
                }
                let ec = e.mul(c);
                match adj {
                    Adjunction::ExtendRestrict => ec,
                    _ => {
                        let yk = y.term(k);
                        let cv = &s.corner_vertices;
                        let idx: Vec<usize> = (0..yk.dim()).filter(|&i| cv.contains(&yk.grade()[i])).collect();
                        ec.select_cols(&idx)
                    }
                }
            });
            debug_assert!(phi.is_chain_map());
            psi.row_mut(r).copy_from_slice(&h_g.hom.class_of_map(&phi));
        }
        let qinv = q.inverse().ok_or_else(|| Error::SingularPairing(format!("replacement comparison for {adj}")))?;
        Ok(qinv.mul(&psi))
    }

    /// Counit `F G y -> y`.
    pub fn counit_on(&self, adj: Adjunction, side: Side, y: &Complex) -> Result<Morphism> {
        let gy = self.apply_on(adj.right(), side, y)?;
        let fgy = self.apply_on(adj.left(), side, &gy)?;
        let phi = self.adjunction_iso_on(adj, side, &gy, y)?;
        let inv = phi.inverse().ok_or_else(|| Error::SingularPairing(format!("{adj}")))?;
        let id = self.identity_class(&gy)?;
        Ok(self.hom(&fgy, y)?.morphism(&inv.apply(&id)))
    }

    /// Unit `x -> G F x`.
    pub fn unit_on(&self, adj: Adjunction, side: Side, x: &Complex) -> Result<Morphism> {
        let fx = self.apply_on(adj.left(), side, x)?;
        let gfx = self.apply_on(adj.right(), side, &fx)?;
        let phi = self.adjunction_iso_on(adj, side, x, &fx)?;
        let id = self.identity_class(&fx)?;
        Ok(self.hom(x, &gfx)?.morphism(&phi.apply(&id)))
    }

    pub fn counit(&self, adj: Adjunction, y: &Complex) -> Result<Morphism> {
        self.counit_on(adj, Side::Original, y)
    }

    pub fn unit(&self, adj: Adjunction, x: &Complex) -> Result<Morphism> {
        self.unit_on(adj, Side::Original, x)
    }
}
