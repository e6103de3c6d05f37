//! Morphisms of the derived category and their Hom spaces.
//!
//! A morphism `X -> Y` is stored as a chain map `P_X -> Y` out of the cached
//! projective replacement of `X`; two such maps are equal in the derived
//! category exactly when they are homotopic.

use std::collections::BTreeMap;

use crate::complex::{cone, lift_through_qis, ChainMap, Complex, HomComplex};
use crate::error::Result;
use crate::linalg::Matrix;

#[derive(Clone, Debug)]
pub struct Morphism {
    pub source: Complex,
    pub target: Complex,
    /// `P_source -> target`.
    pub map: ChainMap,
}

impl Morphism {
    pub fn new(source: &Complex, target: &Complex, map: ChainMap) -> Self {
        Morphism { source: source.clone(), target: target.clone(), map }
    }

    pub fn identity(x: &Complex) -> Result<Self> {
        let (_, q) = x.replacement()?;
        Ok(Morphism::new(x, x, q))
    }

    pub fn zero(x: &Complex, y: &Complex) -> Result<Self> {
        let (px, _) = x.replacement()?;
        Ok(Morphism::new(x, y, ChainMap::zero(&px, y)))
    }

    /// The morphism represented by an honest chain map `X -> Y`.
    pub fn from_chain_map(f: &ChainMap) -> Result<Self> {
        let (_, q) = f.source.replacement()?;
        Ok(Morphism::new(&f.source, &f.target, q.then(f)))
    }

    /// `P_source -> P_target` covering this morphism.
    pub fn lift(&self) -> Result<ChainMap> {
        let (_, q) = self.target.replacement()?;
        lift_through_qis(&self.map, &q)
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &Morphism) -> Result<Morphism> {
        Ok(Morphism::new(&self.source, &g.target, self.lift()?.then(&g.map)))
    }

    pub fn add(&self, g: &Morphism) -> Morphism {
        Morphism::new(&self.source, &self.target, self.map.add(&g.map))
    }

    pub fn scale(&self, c: u64) -> Morphism {
        Morphism::new(&self.source, &self.target, self.map.scale(c))
    }

    /// Invertible in the derived category.
    pub fn is_iso(&self) -> bool {
        self.map.is_quasi_isomorphism()
    }

    /// Third vertex of the triangle on this morphism.
    pub fn cone(&self) -> Complex {
        cone(&self.map)
    }
}

/// `Hom(X, Y[n])` for all `n`, with coordinates on the degree-0 part.
#[derive(Clone, Debug)]
pub struct DerivedHom {
    pub source: Complex,
    pub target: Complex,
    pub hom: HomComplex,
}

impl DerivedHom {
    pub fn new(x: &Complex, y: &Complex) -> Result<Self> {
        let (px, _) = x.replacement()?;
        Ok(DerivedHom { source: x.clone(), target: y.clone(), hom: HomComplex::new(&px, y)? })
    }

    /// `dim Hom(X, Y)`.
    pub fn dim(&self) -> usize {
        self.hom.cohomology_dim(0)
    }

    /// Nonzero `dim Hom(X, Y[n])`.
    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.hom.cohomology_dims()
    }

    pub fn dims_in(&self, lo: i32, hi: i32) -> Vec<usize> {
        (lo..=hi).map(|n| self.hom.cohomology_dim(n)).collect()
    }

    pub fn morphism(&self, class: &[u64]) -> Morphism {
        Morphism::new(&self.source, &self.target, self.hom.map_of_class(class))
    }

    pub fn basis(&self) -> Vec<Morphism> {
        (0..self.dim())
            .map(|i| {
                let mut v = vec![0; self.dim()];
                v[i] = 1;
                self.morphism(&v)
            })
            .collect()
    }

    pub fn class_of(&self, m: &Morphism) -> Vec<u64> {
        self.hom.class_of_map(&m.map)
    }

    /// Matrix of a linear map `Hom(X, Y) -> Hom(X', Y')` given on morphisms.
    pub fn matrix_to(&self, other: &DerivedHom, mut f: impl FnMut(&Morphism) -> Result<Morphism>) -> Result<Matrix> {
        let p = self.source.prime();
        let mut out = Matrix::zeros(p, self.dim(), other.dim());
        for (r, m) in self.basis().iter().enumerate() {
            let img = other.class_of(&f(m)?);
            out.row_mut(r).copy_from_slice(&img);
        }
        Ok(out)
    }
}
