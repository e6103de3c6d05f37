//! The standard recollement attached to an idempotent `e` of `A`:
//!
//! ```text
//!            i^*              j_!
//!         <-------         <-------
//!  D(B)   --i_*-->   D(A)   --j^*-->   D(eAe)
//!         <-------         <-------
//!            i^!              j_*
//! ```
//!
//! with `B = A/AeA`. Left adjoints and `T` are derived tensor products; the
//! right adjoints and `T~` go through `k`-duality and the same construction
//! over the opposite algebras.

mod adjunction;
mod functor;
mod verify;

pub use adjunction::Adjunction;
pub use functor::{FunctorExpr, Prim};
pub use verify::{AdjunctionProvider, Cell, Diagram, Menu, Position, Verdict, VerificationReport};

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::algebra::{corner, idempotent_quotient, Algebra, IdempotentSet};
use crate::complex::{cone, derived_iso_certificate, derived_tensor, dual, ChainMap, Complex, TensorComplex};
use crate::derived::DerivedHom;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::{self, global_dimension, hom_basis, Bimodule, RightModule};

/// The three categories of the diagram: `D(A)`, `D(B)`, `D(eAe)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Ambient,
    Quotient,
    Corner,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Ambient => "T",
            Kind::Quotient => "S",
            Kind::Corner => "U",
        })
    }
}

/// The recollement of `A` or the one of `A^op`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Original,
    Opposite,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Original => Side::Opposite,
            Side::Opposite => Side::Original,
        }
    }
}

/// Algebras and kernel bimodules of one side.
#[derive(Debug)]
pub struct SideData {
    pub ambient: Arc<Algebra>,
    pub quotient: Arc<Algebra>,
    pub corner: Arc<Algebra>,
    /// `dim A x dim B`.
    pub projection: Matrix,
    /// Quotient vertex -> ambient vertex.
    pub quotient_vertices: Vec<usize>,
    /// Corner basis element -> ambient basis element.
    pub corner_basis: Vec<usize>,
    /// Corner vertex -> ambient vertex.
    pub corner_vertices: Vec<usize>,
    /// `B` as an `(A, B)`-bimodule.
    pub quotient_bimodule: Bimodule,
    /// `eA` as a `(C, A)`-bimodule.
    pub left_corner_bimodule: Bimodule,
    /// `Ae` as an `(A, C)`-bimodule.
    pub right_corner_bimodule: Bimodule,
    /// `DA` as an `(A, A)`-bimodule.
    pub dual_bimodule: Bimodule,
    // ambient basis element -> position in eA (usize::MAX outside)
    left_corner_index: Vec<usize>,
}

impl SideData {
    pub fn algebra(&self, kind: Kind) -> &Arc<Algebra> {
        match kind {
            Kind::Ambient => &self.ambient,
            Kind::Quotient => &self.quotient,
            Kind::Corner => &self.corner,
        }
    }

    /// The element `e` of `eA`.
    pub(crate) fn idempotent_in_left_corner(&self) -> Vec<u64> {
        let mut v = vec![0; self.left_corner_bimodule.dim()];
        for &x in &self.corner_vertices {
            v[self.left_corner_index[self.ambient.vertex(x)]] = 1;
        }
        v
    }
}

/// Caps and randomness for a build.
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub gldim: usize,
    pub attempts: usize,
    pub seed: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { gldim: 8, attempts: 64, seed: 0 }
    }
}

#[derive(Clone)]
pub(crate) struct Applied {
    pub complex: Complex,
    pub tensor: Option<Arc<TensorComplex>>,
}

/// The recollement of `A` along `e` together with its opposite.
pub struct Recollement {
    pub idempotent: IdempotentSet,
    pub caps: Caps,
    pub global_dimensions: [usize; 3],
    original: SideData,
    opposite: SideData,
    applied: Mutex<HashMap<(Prim, Side, u64), Applied>>,
    duals: Mutex<HashMap<u64, Complex>>,
    homs: Mutex<HashMap<(u64, u64), Arc<DerivedHom>>>,
}

impl fmt::Debug for Recollement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Recollement")
            .field("A", &self.original.ambient.name())
            .field("e", &self.idempotent.vertices())
            .finish()
    }
}

fn restrict_rows(m: &Matrix, idx: &[usize]) -> Matrix {
    m.select_rows(idx).select_cols(idx)
}

fn build_side(a: &Arc<Algebra>, b: &Arc<Algebra>, c: &Arc<Algebra>, q: &crate::algebra::Quotient, cr: &crate::algebra::Corner) -> Result<SideData> {
    let p = a.prime();
    let projection = q.projection.clone();
    let quotient_vertices = q.vertex_map.clone();
    let corner_basis = cr.basis_in_parent.clone();
    let corner_vertices = cr.vertex_map.clone();
    let corner_vertex_of = |x: usize| corner_vertices.iter().position(|&v| v == x);

    let db = b.dim();
    let quotient_bimodule = Bimodule::new(
        a.clone(),
        b.clone(),
        (0..a.dim())
            .map(|i| {
                let mut m = Matrix::zeros(p, db, db);
                for k in 0..db {
                    let c = projection.get(i, k);
                    if c != 0 {
                        m = m.add(&b.left_mult(k).scale(c));
                    }
                }
                m
            })
            .collect(),
        (0..db).map(|j| b.right_mult(j)).collect(),
        (0..db).map(|k| quotient_vertices[b.left_vertex(k)]).collect(),
        (0..db).map(|k| b.right_vertex(k)).collect(),
    )?;

    let left_rows: Vec<usize> = (0..a.dim()).filter(|&r| corner_vertex_of(a.left_vertex(r)).is_some()).collect();
    let mut left_corner_index = vec![usize::MAX; a.dim()];
    for (k, &r) in left_rows.iter().enumerate() {
        left_corner_index[r] = k;
    }
    let left_corner_bimodule = Bimodule::new(
        c.clone(),
        a.clone(),
        corner_basis.iter().map(|&cb| restrict_rows(&a.left_mult(cb), &left_rows)).collect(),
        (0..a.dim()).map(|j| restrict_rows(&a.right_mult(j), &left_rows)).collect(),
        left_rows.iter().map(|&r| corner_vertex_of(a.left_vertex(r)).expect("row in eA")).collect(),
        left_rows.iter().map(|&r| a.right_vertex(r)).collect(),
    )?;

    let right_rows: Vec<usize> = (0..a.dim()).filter(|&r| corner_vertex_of(a.right_vertex(r)).is_some()).collect();
    let right_corner_bimodule = Bimodule::new(
        a.clone(),
        c.clone(),
        (0..a.dim()).map(|i| restrict_rows(&a.left_mult(i), &right_rows)).collect(),
        corner_basis.iter().map(|&cb| restrict_rows(&a.right_mult(cb), &right_rows)).collect(),
        right_rows.iter().map(|&r| a.left_vertex(r)).collect(),
        right_rows.iter().map(|&r| corner_vertex_of(a.right_vertex(r)).expect("row in Ae")).collect(),
    )?;

    Ok(SideData {
        ambient: a.clone(),
        quotient: b.clone(),
        corner: c.clone(),
        projection,
        quotient_vertices,
        corner_basis,
        corner_vertices,
        quotient_bimodule,
        left_corner_bimodule,
        right_corner_bimodule,
        dual_bimodule: Bimodule::regular(a).k_dual(),
        left_corner_index,
    })
}

impl Recollement {
    /// Builds both sides, checks finite global dimensions and that `e` is
    /// stratifying: `Ae (x)^L_{eAe} eA -> AeA` is a quasi-isomorphism.
    pub fn new(a: Algebra, e: IdempotentSet, caps: Caps) -> Result<Self> {
        let a = Arc::new(a);
        let a_op = Arc::new(a.opposite());
        let q = idempotent_quotient(&a, &e)?;
        let cr = corner(&a, &e)?;
        let b = Arc::new(q.algebra.clone());
        let c = Arc::new(cr.algebra.clone());
        let b_op = Arc::new(b.opposite());
        let c_op = Arc::new(c.opposite());
        let original = build_side(&a, &b, &c, &q, &cr)?;
        let opposite = build_side(&a_op, &b_op, &c_op, &q, &cr)?;
        let mut global_dimensions = [0; 3];
        for (k, alg) in [&a, &b, &c].into_iter().enumerate() {
            global_dimensions[k] = global_dimension(alg, caps.gldim)?;
        }
        let r = Recollement {
            idempotent: e,
            caps,
            global_dimensions,
            original,
            opposite,
            applied: Mutex::new(HashMap::new()),
            duals: Mutex::new(HashMap::new()),
            homs: Mutex::new(HashMap::new()),
        };
        r.check_stratifying()?;
        Ok(r)
    }

    fn check_stratifying(&self) -> Result<()> {
        let s = &self.original;
        let ae = s.right_corner_bimodule.as_right_module();
        let t = derived_tensor(&Complex::stalk(&ae, 0), &s.left_corner_bimodule)?;
        let regular = Bimodule::regular(&s.ambient).as_right_module();
        let ideal = crate::algebra::idempotent_ideal(&s.ambient, &self.idempotent);
        let (aea, _) = module::submodule(&regular, &ideal);
        let expected = Complex::stalk(&aea, 0);
        let cert = derived_iso_certificate(&t.complex, &expected, self.caps.attempts.max(1), self.caps.seed)?;
        if !cert.is_isomorphic() {
            return Err(Error::NotStratifying {
                expected: aea.dim(),
                actual: t.complex.homology_vector(),
            });
        }
        Ok(())
    }

    pub fn side(&self, side: Side) -> &SideData {
        match side {
            Side::Original => &self.original,
            Side::Opposite => &self.opposite,
        }
    }

    pub fn algebra(&self, kind: Kind) -> &Arc<Algebra> {
        self.original.algebra(kind)
    }

    /// Which category a complex lives in.
    pub fn locate(&self, x: &Complex) -> Option<(Side, Kind)> {
        for side in [Side::Original, Side::Opposite] {
            for kind in [Kind::Ambient, Kind::Quotient, Kind::Corner] {
                if Arc::ptr_eq(self.side(side).algebra(kind), x.algebra()) {
                    return Some((side, kind));
                }
            }
        }
        None
    }

    /// Cached termwise dual.
    pub fn dual(&self, x: &Complex) -> Result<Complex> {
        if let Some(d) = self.duals.lock().expect("cache lock").get(&x.id()) {
            return Ok(d.clone());
        }
        let (side, kind) = self.locate(x).ok_or_else(|| Error::TagMismatch("complex over a foreign algebra".into()))?;
        let d = dual(x, self.side(side.flip()).algebra(kind))?;
        let mut cache = self.duals.lock().expect("cache lock");
        cache.insert(x.id(), d.clone());
        cache.insert(d.id(), x.clone());
        Ok(d)
    }

    /// Cached `Hom(X, Y[*])`.
    pub fn hom(&self, x: &Complex, y: &Complex) -> Result<Arc<DerivedHom>> {
        if let Some(h) = self.homs.lock().expect("cache lock").get(&(x.id(), y.id())) {
            return Ok(h.clone());
        }
        let h = Arc::new(DerivedHom::new(x, y)?);
        self.homs.lock().expect("cache lock").insert((x.id(), y.id()), h.clone());
        Ok(h)
    }

    /// Named test objects of one category: projective, injective and simple
    /// stalks for each vertex, one shift each way and the cone of a nonzero
    /// map between two of them.
    pub fn menu(&self, kind: Kind) -> Result<Vec<(String, Complex)>> {
        let alg = self.original.algebra(kind);
        let op = self.opposite.algebra(kind);
        let mut mods: Vec<(String, RightModule)> = Vec::new();
        for x in 0..alg.vertex_count() {
            let l = &alg.vertex_labels()[x];
            mods.push((format!("P{l}"), module::projective(alg, x)));
            mods.push((format!("I{l}"), module::injective(alg, op, x)?));
            mods.push((format!("S{l}"), module::simple(alg, x)));
        }
        let mut out: Vec<(String, Complex)> = mods.iter().map(|(n, m)| (n.clone(), Complex::stalk(m, 0))).collect();
        let first = &alg.vertex_labels()[0];
        let last = &alg.vertex_labels()[alg.vertex_count() - 1];
        out.push((format!("P{first}[1]"), Complex::stalk(&module::projective(alg, 0), -1)));
        out.push((format!("S{last}[-1]"), Complex::stalk(&module::simple(alg, alg.vertex_count() - 1), 1)));
        let before = out.len();
        'pairs: for (i, (ni, mi)) in mods.iter().enumerate() {
            for (j, (nj, mj)) in mods.iter().enumerate() {
                if i == j || mi.dim() == mj.dim() {
                    continue;
                }
                let h = hom_basis(mi, mj)?;
                if h.dim() > 0 {
                    let x = Complex::stalk(mi, 0);
                    let y = Complex::stalk(mj, 0);
                    let f = ChainMap::new(&x, &y, vec![h.basis[0].clone()])?;
                    out.push((format!("cone({ni}->{nj})"), cone(&f)));
                    break 'pairs;
                }
            }
        }
        if out.len() == before {
            // no nonzero map between distinct modules: a split two-term object
            let x = Complex::stalk(&module::projective(alg, 0), 0);
            let y = Complex::stalk(&module::simple(alg, alg.vertex_count() - 1), 0);
            out.push((format!("cone(P{first}-0->S{last})"), cone(&ChainMap::zero(&x, &y))));
        }
        Ok(out)
    }

    /// Looks up a menu object by name.
    pub fn object(&self, kind: Kind, name: &str) -> Result<Complex> {
        self.menu(kind)?
            .into_iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }
}
