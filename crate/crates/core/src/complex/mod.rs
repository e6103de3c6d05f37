//! Bounded cochain complexes of right modules: the concrete model of
//! `D^b(mod A)`.
//!
//! Differentials raise degree and `X[1]^n = X^{n+1}` with negated
//! differential. Maps are row-convention matrices, so "`f` then `g`" is
//! `f * g`.

mod cert;
mod hom;
mod replace;

pub use cert::{derived_iso_certificate, DerivedIsoCertificate};
pub use hom::{Cohomology, HomComplex};
pub use replace::{
    derived_tensor, lift_through_qis, projective_replacement, resolution_complex, tensor_chain_map, TensorComplex,
};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::{self, RightModule};

/// Safety net for cached replacements; global dimension is checked upstream.
pub const DEFAULT_REPLACEMENT_CAP: usize = 32;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

struct ComplexData {
    id: u64,
    algebra: Arc<Algebra>,
    lo: i32,
    terms: Vec<RightModule>,
    // diffs[k]: terms[k] -> terms[k + 1]
    diffs: Vec<Matrix>,
    replacement: OnceLock<Result<(Complex, ChainMap)>>,
    // set on termwise duals so that dualizing twice returns the original
    dual_of: Option<Complex>,
}

/// A bounded complex. Cloning is cheap and shares cached data.
#[derive(Clone)]
pub struct Complex(Arc<ComplexData>);

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<(i32, usize)> = self.degrees().map(|n| (n, self.dim_at(n))).collect();
        f.debug_struct("Complex").field("algebra", &self.0.algebra.name()).field("dims", &dims).finish()
    }
}

impl Complex {
    /// Builds a complex from terms starting in degree `lo`; validates shapes,
    /// module maps and `d * d = 0`.
    pub fn new(algebra: &Arc<Algebra>, lo: i32, terms: Vec<RightModule>, diffs: Vec<Matrix>) -> Result<Self> {
        let c = Self::from_parts(algebra, lo, terms, diffs);
        c.validate()?;
        Ok(c)
    }

    pub(crate) fn from_parts(algebra: &Arc<Algebra>, lo: i32, terms: Vec<RightModule>, diffs: Vec<Matrix>) -> Self {
        Self::assemble(algebra, lo, terms, diffs, None)
    }

    fn assemble(
        algebra: &Arc<Algebra>,
        lo: i32,
        terms: Vec<RightModule>,
        diffs: Vec<Matrix>,
        dual_of: Option<Complex>,
    ) -> Self {
        debug_assert_eq!(diffs.len(), terms.len().saturating_sub(1));
        // trim zero terms at both ends
        let first = terms.iter().position(|m| !m.is_zero());
        let (lo, terms, diffs) = match first {
            None => (0, vec![], vec![]),
            Some(s) => {
                let e = terms.iter().rposition(|m| !m.is_zero()).expect("nonzero term exists");
                let t = terms[s..=e].to_vec();
                let d = diffs[s..e].to_vec();
                (lo + s as i32, t, d)
            }
        };
        Complex(Arc::new(ComplexData {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            algebra: algebra.clone(),
            lo,
            terms,
            diffs,
            replacement: OnceLock::new(),
            dual_of,
        }))
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Self {
        Self::from_parts(algebra, 0, vec![], vec![])
    }

    /// Module `m` concentrated in degree `n`.
    pub fn stalk(m: &RightModule, n: i32) -> Self {
        Self::from_parts(m.algebra(), n, vec![m.clone()], vec![])
    }

    pub fn validate(&self) -> Result<()> {
        for n in self.degrees() {
            let d = self.diff(n);
            let (src, tgt) = (self.term(n), self.term(n + 1));
            if d.rows() != src.dim() || d.cols() != tgt.dim() {
                return Err(Error::InvalidComplex(format!("differential in degree {} has wrong shape", n)));
            }
            if !src.is_zero() && !tgt.is_zero() && !src.is_hom_to(&tgt, &d) {
                return Err(Error::InvalidComplex(format!("differential in degree {} is not a module map", n)));
            }
            if !d.mul(&self.diff(n + 1)).is_zero() {
                return Err(Error::InvalidComplex(format!("d * d != 0 at degree {}", n)));
            }
        }
        Ok(())
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.0.algebra
    }
    pub fn is_zero(&self) -> bool {
        self.0.terms.is_empty()
    }
    pub fn lo(&self) -> i32 {
        self.0.lo
    }
    /// Highest nonzero degree; `lo - 1` for the zero complex.
    pub fn hi(&self) -> i32 {
        self.0.lo + self.0.terms.len() as i32 - 1
    }
    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo()..=self.hi()
    }
    /// Number of degrees in the support window.
    pub fn span(&self) -> usize {
        self.0.terms.len()
    }

    pub fn term(&self, n: i32) -> RightModule {
        self.term_ref(n).cloned().unwrap_or_else(|| RightModule::zero(self.algebra()))
    }

    pub fn term_ref(&self, n: i32) -> Option<&RightModule> {
        if n < self.lo() || n > self.hi() {
            None
        } else {
            Some(&self.0.terms[(n - self.lo()) as usize])
        }
    }

    pub fn dim_at(&self, n: i32) -> usize {
        self.term_ref(n).map_or(0, RightModule::dim)
    }

    /// `d^n: X^n -> X^{n+1}` (a zero matrix of the right shape outside the support).
    pub fn diff(&self, n: i32) -> Matrix {
        if n >= self.lo() && n < self.hi() {
            self.0.diffs[(n - self.lo()) as usize].clone()
        } else {
            Matrix::zeros(self.prime(), self.dim_at(n), self.dim_at(n + 1))
        }
    }

    pub fn prime(&self) -> u64 {
        self.0.algebra.prime()
    }

    pub fn total_dim(&self) -> usize {
        self.0.terms.iter().map(RightModule::dim).sum()
    }

    /// True when every term is a standard projective.
    pub fn is_standard_projective(&self) -> bool {
        self.0.terms.iter().all(|m| m.summands().is_some())
    }

    /// `dim H^n` for every degree of the support (zeros included).
    pub fn homology_dims(&self) -> BTreeMap<i32, usize> {
        self.degrees()
            .map(|n| {
                let z = self.dim_at(n) - self.diff(n).rank();
                let b = self.diff(n - 1).rank();
                (n, z - b)
            })
            .collect()
    }

    /// Nonzero homology dimensions only.
    pub fn homology_vector(&self) -> Vec<(i32, usize)> {
        self.homology_dims().into_iter().filter(|&(_, d)| d > 0).collect()
    }

    /// Per-vertex dimensions of each nonzero homology module. Differentials
    /// preserve vertex grades, so `H^n e_x` is computed on the graded part.
    pub fn homology_dim_vectors(&self) -> Vec<(i32, Vec<usize>)> {
        let nv = self.algebra().vertex_count();
        let mut out = Vec::new();
        for n in self.degrees() {
            let v: Vec<usize> = (0..nv)
                .map(|x| {
                    let idx = |k: i32| self.term_ref(k).map_or(vec![], |m| m.graded_part(x));
                    let part = |k: i32| self.diff(k).select_rows(&idx(k)).select_cols(&idx(k + 1)).rank();
                    idx(n).len() - part(n) - part(n - 1)
                })
                .collect();
            if v.iter().any(|&d| d > 0) {
                out.push((n, v));
            }
        }
        out
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology_dims().values().all(|&d| d == 0)
    }

    /// Alternating sum of homology dimensions.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|n| if n.rem_euclid(2) == 0 { 1 } else { -1 } * self.dim_at(n) as i64).sum()
    }

    /// Same matrices re-tagged to an algebra with identical structure.
    pub fn retag(&self, algebra: &Arc<Algebra>) -> Complex {
        let terms = self.0.terms.iter().map(|m| m.retag(algebra)).collect();
        Complex::from_parts(algebra, self.lo(), terms, self.0.diffs.clone())
    }

    /// Applies a module-level functor degreewise.
    pub fn map_terms(
        &self,
        algebra: &Arc<Algebra>,
        mut on_term: impl FnMut(&RightModule) -> RightModule,
        mut on_diff: impl FnMut(i32, &Matrix) -> Matrix,
    ) -> Complex {
        let terms = self.0.terms.iter().map(&mut on_term).collect();
        let diffs = self.0.diffs.iter().enumerate().map(|(k, d)| on_diff(self.lo() + k as i32, d)).collect();
        Complex::from_parts(algebra, self.lo(), terms, diffs)
    }

    /// Cached projective replacement `P -> self`.
    pub fn replacement(&self) -> Result<(Complex, ChainMap)> {
        self.0
            .replacement
            .get_or_init(|| projective_replacement(self, DEFAULT_REPLACEMENT_CAP))
            .clone()
    }
}

/// `X[k]`: `X[k]^n = X^{n+k}`, differential multiplied by `(-1)^k`.
pub fn shift(x: &Complex, k: i32) -> Complex {
    let sign = k.rem_euclid(2) == 1;
    let diffs = x.0.diffs.iter().map(|d| if sign { d.neg() } else { d.clone() }).collect();
    Complex::from_parts(x.algebra(), x.lo() - k, x.0.terms.clone(), diffs)
}

/// Termwise `k`-dual: `(DX)^n = D(X^{-n})` over the opposite algebra.
/// Dualizing a dual returns the original complex itself.
pub fn dual(x: &Complex, target: &Arc<Algebra>) -> Result<Complex> {
    if let Some(orig) = &x.0.dual_of {
        if Arc::ptr_eq(orig.algebra(), target) {
            return Ok(orig.clone());
        }
    }
    if !module::is_opposite(x.algebra(), target) {
        return Err(Error::AlgebraMismatch { left: x.algebra().name().into(), right: target.name().into() });
    }
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    if !x.is_zero() {
        for n in (x.lo()..=x.hi()).rev() {
            terms.push(module::k_dual(&x.term(n), target)?);
            if n > x.lo() {
                diffs.push(x.diff(n - 1).transpose());
            }
        }
    }
    Ok(Complex::assemble(target, -x.hi(), terms, diffs, Some(x.clone())))
}

/// `D f: DY -> DX` for a chain map `f: X -> Y`, componentwise transpose.
pub fn dual_map(f: &ChainMap, dx: &Complex, dy: &Complex) -> ChainMap {
    ChainMap::from_fn(dy, dx, |n| f.component(-n).transpose())
}

/// A degree-zero chain map; `components` cover the source support.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: Complex,
    pub target: Complex,
    components: Vec<Matrix>,
}

impl ChainMap {
    /// `components[k]` is the map in degree `source.lo() + k`.
    pub fn new(source: &Complex, target: &Complex, components: Vec<Matrix>) -> Result<Self> {
        let f = Self::from_parts(source, target, components);
        if !f.is_chain_map() {
            return Err(Error::InvalidComplex("components do not commute with differentials".into()));
        }
        Ok(f)
    }

    pub(crate) fn from_parts(source: &Complex, target: &Complex, components: Vec<Matrix>) -> Self {
        debug_assert_eq!(components.len(), source.span());
        ChainMap { source: source.clone(), target: target.clone(), components }
    }

    /// Builds a map from a per-degree closure.
    pub fn from_fn(source: &Complex, target: &Complex, mut comp: impl FnMut(i32) -> Matrix) -> Self {
        let components = source.degrees().map(&mut comp).collect();
        Self::from_parts(source, target, components)
    }

    pub fn zero(source: &Complex, target: &Complex) -> Self {
        let p = source.prime();
        Self::from_fn(source, target, |n| Matrix::zeros(p, source.dim_at(n), target.dim_at(n)))
    }

    pub fn identity(x: &Complex) -> Self {
        let p = x.prime();
        Self::from_fn(x, x, |n| Matrix::identity(p, x.dim_at(n)))
    }

    pub fn component(&self, n: i32) -> Matrix {
        if n < self.source.lo() || n > self.source.hi() {
            Matrix::zeros(self.source.prime(), self.source.dim_at(n), self.target.dim_at(n))
        } else {
            self.components[(n - self.source.lo()) as usize].clone()
        }
    }

    pub fn is_chain_map(&self) -> bool {
        let lo = self.source.lo().min(self.target.lo()) - 1;
        let hi = self.source.hi().max(self.target.hi()) + 1;
        (lo..=hi).all(|n| {
            let c = self.component(n);
            if c.rows() != self.source.dim_at(n) || c.cols() != self.target.dim_at(n) {
                return false;
            }
            self.source.diff(n).mul(&self.component(n + 1)) == c.mul(&self.target.diff(n))
        })
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &ChainMap) -> ChainMap {
        ChainMap::from_fn(&self.source, &g.target, |n| self.component(n).mul(&g.component(n)))
    }

    pub fn sub(&self, g: &ChainMap) -> ChainMap {
        ChainMap::from_fn(&self.source, &self.target, |n| self.component(n).sub(&g.component(n)))
    }

    pub fn add(&self, g: &ChainMap) -> ChainMap {
        ChainMap::from_fn(&self.source, &self.target, |n| self.component(n).add(&g.component(n)))
    }

    pub fn scale(&self, c: u64) -> ChainMap {
        ChainMap::from_fn(&self.source, &self.target, |n| self.component(n).scale(c))
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    /// True when the cone is acyclic.
    pub fn is_quasi_isomorphism(&self) -> bool {
        cone(self).is_acyclic()
    }

    /// The same components viewed between two other complexes with identical terms.
    pub fn rebase(&self, source: &Complex, target: &Complex) -> ChainMap {
        ChainMap::from_fn(source, target, |n| self.component(n))
    }
}

/// Maps `h^n: X^n -> Y^{n-1}`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub source: Complex,
    pub target: Complex,
    components: Vec<Matrix>,
}

impl Homotopy {
    pub fn from_fn(source: &Complex, target: &Complex, comp: impl FnMut(i32) -> Matrix) -> Self {
        Homotopy { source: source.clone(), target: target.clone(), components: source.degrees().map(comp).collect() }
    }

    pub fn component(&self, n: i32) -> Matrix {
        if n < self.source.lo() || n > self.source.hi() {
            Matrix::zeros(self.source.prime(), self.source.dim_at(n), self.target.dim_at(n - 1))
        } else {
            self.components[(n - self.source.lo()) as usize].clone()
        }
    }

    /// Checks `f - g = d h + h d` degreewise.
    pub fn witnesses(&self, f: &ChainMap, g: &ChainMap) -> bool {
        self.source.degrees().all(|n| {
            let lhs = f.component(n).sub(&g.component(n));
            let rhs = self.component(n).mul(&self.target.diff(n - 1)).add(&self.source.diff(n).mul(&self.component(n + 1)));
            lhs == rhs
        })
    }
}

/// Mapping cone: `cone^n = X^{n+1} + Y^n`, `d(x, y) = (-x d_X, x f + y d_Y)`.
pub fn cone(f: &ChainMap) -> Complex {
    let x = &f.source;
    let y = &f.target;
    let a = x.algebra();
    let p = x.prime();
    if x.is_zero() && y.is_zero() {
        return Complex::zero(a);
    }
    let lo = if x.is_zero() { y.lo() } else if y.is_zero() { x.lo() - 1 } else { (x.lo() - 1).min(y.lo()) };
    let hi = if x.is_zero() { y.hi() } else if y.is_zero() { x.hi() - 1 } else { (x.hi() - 1).max(y.hi()) };
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    for n in lo..=hi {
        terms.push(module::direct_sum(a, &[x.term(n + 1), y.term(n)]));
        if n < hi {
            let (xn, yn) = (x.dim_at(n + 1), y.dim_at(n));
            let (xn1, yn1) = (x.dim_at(n + 2), y.dim_at(n + 1));
            let mut d = Matrix::zeros(p, xn + yn, xn1 + yn1);
            d.set_block(0, 0, &x.diff(n + 1).neg());
            d.set_block(0, xn1, &f.component(n + 1));
            d.set_block(xn, xn1, &y.diff(n));
            diffs.push(d);
        }
    }
    Complex::from_parts(a, lo, terms, diffs)
}

/// `Y -> cone(f)`, the second map of the standard triangle.
pub fn cone_inclusion(f: &ChainMap, c: &Complex) -> ChainMap {
    let p = c.prime();
    ChainMap::from_fn(&f.target, c, |n| {
        let xn = f.source.dim_at(n + 1);
        let yn = f.target.dim_at(n);
        let mut m = Matrix::zeros(p, yn, c.dim_at(n));
        m.set_block(0, xn, &Matrix::identity(p, yn));
        m
    })
}

