//! Right modules over a basic algebra, bimodules, Hom spaces, duality and
//! tensor products.
//!
//! Module bases are always vertex-graded: every basis vector `v` satisfies
//! `v * e_x = v` for exactly one vertex `x`. Elements are row vectors and
//! `v * b` is `v * action(b)`.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

#[derive(Clone, Debug)]
pub struct RightModule {
    algebra: Arc<Algebra>,
    action: Vec<Matrix>,
    grade: Vec<usize>,
    // vertices of the summands when the module is in standard projective form
    summands: Option<Vec<usize>>,
}

fn check_same(a: &Arc<Algebra>, b: &Arc<Algebra>) -> Result<()> {
    if Arc::ptr_eq(a, b) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch { left: a.name().into(), right: b.name().into() })
    }
}

impl RightModule {
    /// Builds a module and validates the action.
    pub fn new(algebra: Arc<Algebra>, action: Vec<Matrix>, grade: Vec<usize>) -> Result<Self> {
        let m = Self::from_parts(algebra, action, grade, None);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn from_parts(
        algebra: Arc<Algebra>,
        action: Vec<Matrix>,
        grade: Vec<usize>,
        summands: Option<Vec<usize>>,
    ) -> Self {
        debug_assert_eq!(action.len(), algebra.dim());
        RightModule { algebra, action, grade, summands }
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Self {
        let p = algebra.prime();
        let action = (0..algebra.dim()).map(|_| Matrix::zeros(p, 0, 0)).collect();
        RightModule { algebra: algebra.clone(), action, grade: vec![], summands: Some(vec![]) }
    }

    /// Checks `action(1) = id`, vertex grading and multiplicativity on all
    /// basis pairs.
    pub fn validate(&self) -> Result<()> {
        let a = &self.algebra;
        let m = self.dim();
        for (i, act) in self.action.iter().enumerate() {
            if act.rows() != m || act.cols() != m {
                return Err(Error::InvalidModule(format!("action of {} has wrong shape", a.labels()[i])));
            }
        }
        for x in 0..a.vertex_count() {
            let ex = &self.action[a.vertex(x)];
            for r in 0..m {
                for c in 0..m {
                    let want = u64::from(r == c && self.grade[r] == x);
                    if ex.get(r, c) != want {
                        return Err(Error::InvalidModule(format!(
                            "basis is not graded at vertex {}",
                            a.vertex_labels()[x]
                        )));
                    }
                }
            }
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.act_by(a.product(i, j));
                let rhs = self.action[i].mul(&self.action[j]);
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "action is not multiplicative on ({}, {})",
                        a.labels()[i],
                        a.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }
    pub fn dim(&self) -> usize {
        self.grade.len()
    }
    pub fn grade(&self) -> &[usize] {
        &self.grade
    }
    pub fn action(&self, b: usize) -> &Matrix {
        &self.action[b]
    }
    pub fn summands(&self) -> Option<&[usize]> {
        self.summands.as_deref()
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
    fn p(&self) -> u64 {
        self.algebra.prime()
    }

    /// Action matrix of an arbitrary algebra element given in coordinates.
    pub fn act_by(&self, x: &[u64]) -> Matrix {
        let p = self.p();
        let mut out = Matrix::zeros(p, self.dim(), self.dim());
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                out = out.add(&self.action[i].scale(c));
            }
        }
        out
    }

    /// Indices of basis vectors graded at vertex `x`, i.e. a basis of `M e_x`.
    pub fn graded_part(&self, x: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.grade[i] == x).collect()
    }

    /// Same matrices, re-tagged to an algebra with identical structure constants.
    pub fn retag(&self, algebra: &Arc<Algebra>) -> RightModule {
        debug_assert!(algebra.same_structure(&self.algebra));
        RightModule { algebra: algebra.clone(), ..self.clone() }
    }

    pub fn identity(&self) -> Matrix {
        Matrix::identity(self.p(), self.dim())
    }

    /// Is `f` (rows = source basis) a module map `self -> target`?
    pub fn is_hom_to(&self, target: &RightModule, f: &Matrix) -> bool {
        if f.rows() != self.dim() || f.cols() != target.dim() {
            return false;
        }
        (0..self.algebra.dim()).all(|b| self.action[b].mul(f) == f.mul(&target.action[b]))
    }
}

/// The indecomposable projective `e_x A` in its path basis.
pub fn projective(algebra: &Arc<Algebra>, x: usize) -> RightModule {
    let basis = algebra.projective_basis(x);
    let p = algebra.prime();
    let n = basis.len();
    let action = (0..algebra.dim())
        .map(|b| {
            let mut m = Matrix::zeros(p, n, n);
            for (r, &pi) in basis.iter().enumerate() {
                let prod = algebra.product(pi, b);
                for (c, &pj) in basis.iter().enumerate() {
                    m.set(r, c, prod[pj]);
                }
            }
            m
        })
        .collect();
    let grade = basis.iter().map(|&i| algebra.right_vertex(i)).collect();
    RightModule::from_parts(algebra.clone(), action, grade, Some(vec![x]))
}

/// `P_{x_1} + ... + P_{x_k}` in standard form.
pub fn projective_sum(algebra: &Arc<Algebra>, vertices: &[usize]) -> RightModule {
    let parts: Vec<RightModule> = vertices.iter().map(|&x| projective(algebra, x)).collect();
    direct_sum(algebra, &parts)
}

/// Offsets of the summand blocks of a standard projective.
pub fn summand_offsets(algebra: &Algebra, vertices: &[usize]) -> Vec<usize> {
    let mut offs = Vec::with_capacity(vertices.len());
    let mut o = 0;
    for &x in vertices {
        offs.push(o);
        o += algebra.projective_basis(x).len();
    }
    offs
}

pub fn simple(algebra: &Arc<Algebra>, x: usize) -> RightModule {
    let p = algebra.prime();
    let action = (0..algebra.dim())
        .map(|b| Matrix::scalar(p, 1, u64::from(b == algebra.vertex(x))))
        .collect();
    RightModule::from_parts(algebra.clone(), action, vec![x], None)
}

/// The injective `D(A e_x)`; `opposite` must be the opposite of `algebra`.
pub fn injective(algebra: &Arc<Algebra>, opposite: &Arc<Algebra>, x: usize) -> Result<RightModule> {
    k_dual(&projective(opposite, x), algebra)
}

pub fn direct_sum(algebra: &Arc<Algebra>, parts: &[RightModule]) -> RightModule {
    let p = algebra.prime();
    let mut action: Vec<Matrix> = (0..algebra.dim()).map(|_| Matrix::zeros(p, 0, 0)).collect();
    let mut grade = Vec::new();
    let mut summands = Some(Vec::new());
    for m in parts {
        for (b, act) in action.iter_mut().enumerate() {
            *act = act.direct_sum(&m.action[b]);
        }
        grade.extend_from_slice(&m.grade);
        match (&mut summands, &m.summands) {
            (Some(s), Some(t)) => s.extend_from_slice(t),
            _ => summands = None,
        }
    }
    RightModule::from_parts(algebra.clone(), action, grade, summands)
}

/// `Hom_k(M, k)` as a right module over the opposite algebra `target`.
pub fn k_dual(m: &RightModule, target: &Arc<Algebra>) -> Result<RightModule> {
    if !is_opposite(m.algebra(), target) {
        return Err(Error::AlgebraMismatch { left: m.algebra().name().into(), right: target.name().into() });
    }
    let action = m.action.iter().map(Matrix::transpose).collect();
    Ok(RightModule::from_parts(target.clone(), action, m.grade.clone(), None))
}

/// Dual of a module map `f: M -> N` is `f^T: DN -> DM`.
pub fn k_dual_map(f: &Matrix) -> Matrix {
    f.transpose()
}

pub fn is_opposite(a: &Algebra, b: &Algebra) -> bool {
    a.dim() == b.dim()
        && a.vertices() == b.vertices()
        && (0..a.dim()).all(|i| (0..a.dim()).all(|j| a.product(i, j) == b.product(j, i)))
}

/// A submodule spanned by `rows` (which must be closed under the action),
/// rebased to a graded basis. Returns the module and its inclusion matrix.
pub fn submodule(m: &RightModule, rows: &Matrix) -> (RightModule, Matrix) {
    let p = m.p();
    let a = m.algebra();
    let mut basis = Matrix::zeros(p, 0, m.dim());
    let mut grade = Vec::new();
    for x in 0..a.vertex_count() {
        let part = rows.mul(m.action(a.vertex(x))).image_basis();
        grade.extend(std::iter::repeat(x).take(part.rows()));
        basis = basis.vstack(&part);
    }
    let sub = Subspace::new(basis.clone());
    let n = basis.rows();
    let action = (0..a.dim())
        .map(|b| {
            let img = basis.mul(m.action(b));
            let mut out = Matrix::zeros(p, n, n);
            for r in 0..n {
                let c = sub.coords(img.row(r)).expect("submodule is closed under the action");
                out.row_mut(r).copy_from_slice(&c);
            }
            out
        })
        .collect();
    (RightModule::from_parts(a.clone(), action, grade, None), basis)
}

/// Quotient `M / N` for a submodule spanned by `rows`; returns the module and
/// the projection matrix `M -> M/N`.
pub fn quotient_module(m: &RightModule, rows: &Matrix) -> (RightModule, Matrix) {
    let p = m.p();
    let a = m.algebra();
    let sub_basis = rows.image_basis();
    // complement by graded unit vectors
    let mut span = sub_basis.clone();
    let mut chosen = Vec::new();
    for i in 0..m.dim() {
        let mut unit = Matrix::zeros(p, 1, m.dim());
        unit.set(0, i, 1);
        let cand = span.vstack(&unit);
        if cand.rank() == cand.rows() {
            span = cand;
            chosen.push(i);
        }
    }
    let q = chosen.len();
    let mut stacked = Matrix::zeros(p, q, m.dim());
    for (r, &i) in chosen.iter().enumerate() {
        stacked.set(r, i, 1);
    }
    let full = Subspace::new(stacked.vstack(&sub_basis));
    let mut proj = Matrix::zeros(p, m.dim(), q);
    for i in 0..m.dim() {
        let mut unit = vec![0; m.dim()];
        unit[i] = 1;
        let c = full.coords(&unit).expect("full basis");
        proj.row_mut(i).copy_from_slice(&c[..q]);
    }
    let action = (0..a.dim())
        .map(|b| stacked.mul(m.action(b)).mul(&proj))
        .collect();
    let grade = chosen.iter().map(|&i| m.grade[i]).collect();
    (RightModule::from_parts(a.clone(), action, grade, None), proj)
}

/// Basis of `Hom_A(M, N)` with coordinate extraction.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source_dim: usize,
    pub target_dim: usize,
    pub basis: Vec<Matrix>,
    // position (row, col) of the free unknown reading off each coordinate
    free: Vec<(usize, usize)>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a module map in `basis` (the map must be a module map).
    pub fn coords(&self, f: &Matrix) -> Vec<u64> {
        self.free.iter().map(|&(r, c)| f.get(r, c)).collect()
    }

    pub fn combine(&self, coords: &[u64], p: u64) -> Matrix {
        let mut out = Matrix::zeros(p, self.source_dim, self.target_dim);
        for (c, b) in coords.iter().zip(&self.basis) {
            if *c != 0 {
                out = out.add(&b.scale(*c));
            }
        }
        out
    }
}

pub fn hom_basis(m: &RightModule, n: &RightModule) -> Result<HomSpace> {
    check_same(m.algebra(), n.algebra())?;
    let a = m.algebra();
    let p = m.p();
    // unknowns: entries (i, j) with matching grades
    let mut index = vec![usize::MAX; m.dim() * n.dim()];
    let mut unknowns = Vec::new();
    for i in 0..m.dim() {
        for j in 0..n.dim() {
            if m.grade[i] == n.grade[j] {
                index[i * n.dim() + j] = unknowns.len();
                unknowns.push((i, j));
            }
        }
    }
    let u = unknowns.len();
    let mut eqs: Vec<Vec<u64>> = Vec::new();
    for &g in a.generators() {
        let rm = m.action(g);
        let rn = n.action(g);
        let (t, s) = (a.left_vertex(g), a.right_vertex(g));
        for i in m.graded_part(t) {
            for j in n.graded_part(s) {
                // (rho_M(g) F - F rho_N(g))[i][j] = 0
                let mut row = vec![0u64; u];
                let mut nonzero = false;
                for l in 0..m.dim() {
                    let c = rm.get(i, l);
                    if c != 0 {
                        let k = index[l * n.dim() + j];
                        if k != usize::MAX {
                            row[k] = (row[k] + c) % p;
                            nonzero = true;
                        }
                    }
                }
                for l in 0..n.dim() {
                    let c = rn.get(l, j);
                    if c != 0 {
                        let k = index[i * n.dim() + l];
                        if k != usize::MAX {
                            row[k] = (row[k] + p - c) % p;
                            nonzero = true;
                        }
                    }
                }
                if nonzero {
                    eqs.push(row);
                }
            }
        }
    }
    let system = Matrix::from_rows(p, u, &eqs);
    let (kernel, free) = system.kernel_with_free();
    let basis = (0..kernel.rows())
        .map(|r| {
            let mut f = Matrix::zeros(p, m.dim(), n.dim());
            for (k, &(i, j)) in unknowns.iter().enumerate() {
                f.set(i, j, kernel.get(r, k));
            }
            f
        })
        .collect();
    let free = free.into_iter().map(|k| unknowns[k]).collect();
    Ok(HomSpace { source_dim: m.dim(), target_dim: n.dim(), basis, free })
}

/// A bimodule with a left action of `left` and a right action of `right`.
///
/// The left action is stored as matrices `L(b)` with `b . w = w * L(b)`, so
/// `L(xy) = L(y) L(x)`.
#[derive(Clone, Debug)]
pub struct Bimodule {
    left: Arc<Algebra>,
    right: Arc<Algebra>,
    left_action: Vec<Matrix>,
    right_action: Vec<Matrix>,
    left_grade: Vec<usize>,
    right_grade: Vec<usize>,
}

impl Bimodule {
    pub fn new(
        left: Arc<Algebra>,
        right: Arc<Algebra>,
        left_action: Vec<Matrix>,
        right_action: Vec<Matrix>,
        left_grade: Vec<usize>,
        right_grade: Vec<usize>,
    ) -> Result<Self> {
        let w = Bimodule { left, right, left_action, right_action, left_grade, right_grade };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        self.as_right_module().validate()?;
        // left action: graded, multiplicative in reversed order, commuting
        let l = &self.left;
        let n = self.dim();
        for x in 0..l.vertex_count() {
            let ex = &self.left_action[l.vertex(x)];
            let want = Matrix::from_vec(
                l.prime(),
                n,
                n,
                (0..n * n)
                    .map(|k| u64::from(k / n == k % n && self.left_grade[k / n] == x))
                    .collect(),
            );
            if *ex != want {
                return Err(Error::InvalidModule("left action is not graded".into()));
            }
        }
        for i in 0..l.dim() {
            for j in 0..l.dim() {
                let lhs = self.left_act_by(l.product(i, j));
                let rhs = self.left_action[j].mul(&self.left_action[i]);
                if lhs != rhs {
                    return Err(Error::InvalidModule("left action is not multiplicative".into()));
                }
            }
        }
        for la in &self.left_action {
            for ra in &self.right_action {
                if la.mul(ra) != ra.mul(la) {
                    return Err(Error::InvalidModule("left and right actions do not commute".into()));
                }
            }
        }
        Ok(())
    }

    pub fn left(&self) -> &Arc<Algebra> {
        &self.left
    }
    pub fn right(&self) -> &Arc<Algebra> {
        &self.right
    }
    pub fn dim(&self) -> usize {
        self.right_grade.len()
    }
    pub fn left_action(&self, b: usize) -> &Matrix {
        &self.left_action[b]
    }
    pub fn right_action(&self, b: usize) -> &Matrix {
        &self.right_action[b]
    }
    pub fn left_grade(&self) -> &[usize] {
        &self.left_grade
    }
    pub fn right_grade(&self) -> &[usize] {
        &self.right_grade
    }

    fn left_act_by(&self, x: &[u64]) -> Matrix {
        let p = self.left.prime();
        let mut out = Matrix::zeros(p, self.dim(), self.dim());
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                out = out.add(&self.left_action[i].scale(c));
            }
        }
        out
    }

    pub fn as_right_module(&self) -> RightModule {
        RightModule::from_parts(self.right.clone(), self.right_action.clone(), self.right_grade.clone(), None)
    }

    /// The same space as a `(right^op, left^op)`-bimodule.
    pub fn opposite(&self, right_op: &Arc<Algebra>, left_op: &Arc<Algebra>) -> Result<Bimodule> {
        if !is_opposite(&self.right, right_op) || !is_opposite(&self.left, left_op) {
            return Err(Error::AlgebraMismatch { left: self.left.name().into(), right: self.right.name().into() });
        }
        Ok(Bimodule {
            left: right_op.clone(),
            right: left_op.clone(),
            left_action: self.right_action.clone(),
            right_action: self.left_action.clone(),
            left_grade: self.right_grade.clone(),
            right_grade: self.left_grade.clone(),
        })
    }

    /// `Hom_k(W, k)` as a `(right, left)`-bimodule.
    pub fn k_dual(&self) -> Bimodule {
        Bimodule {
            left: self.right.clone(),
            right: self.left.clone(),
            left_action: self.right_action.iter().map(Matrix::transpose).collect(),
            right_action: self.left_action.iter().map(Matrix::transpose).collect(),
            left_grade: self.right_grade.clone(),
            right_grade: self.left_grade.clone(),
        }
    }

    /// The regular bimodule `A` over itself.
    pub fn regular(a: &Arc<Algebra>) -> Bimodule {
        let d = a.dim();
        Bimodule {
            left: a.clone(),
            right: a.clone(),
            left_action: (0..d).map(|i| a.left_mult(i)).collect(),
            right_action: (0..d).map(|j| a.right_mult(j)).collect(),
            left_grade: (0..d).map(|i| a.left_vertex(i)).collect(),
            right_grade: (0..d).map(|i| a.right_vertex(i)).collect(),
        }
    }
}

/// `M (x)_R W` with the data needed to map into and lift out of it.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub module: RightModule,
    /// Surviving pure tensors `(i, j)` of basis vectors.
    pub pairs: Vec<(usize, usize)>,
    /// `pairs.len() x dim`: image of each pure tensor in the quotient.
    pub projection: Matrix,
    /// For each quotient basis vector, the pure tensor it is the class of.
    pub lift: Vec<(usize, usize)>,
    pair_index: Vec<usize>,
    w_dim: usize,
}

impl TensorProduct {
    /// Class of the pure tensor `m_i (x) w_j` as a quotient coordinate row.
    pub fn class_of(&self, i: usize, j: usize) -> Option<&[u64]> {
        let k = self.pair_index[i * self.w_dim + j];
        (k != usize::MAX).then(|| self.projection.row(k))
    }

    /// Class of `v (x) w_j` for an arbitrary vector `v` of the left factor.
    pub fn class_of_vec(&self, v: &[u64], j: usize) -> Vec<u64> {
        let p = self.module.algebra().prime();
        let mut out = vec![0u64; self.module.dim()];
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if let Some(row) = self.class_of(i, j) {
                for (o, &r) in out.iter_mut().zip(row) {
                    *o = (*o + c * r) % p;
                }
            }
        }
        out
    }
}

pub fn tensor_over(m: &RightModule, w: &Bimodule) -> Result<TensorProduct> {
    check_same(m.algebra(), w.left())?;
    let r = m.algebra();
    let s = w.right();
    let p = r.prime();
    let wd = w.dim();
    let mut pairs = Vec::new();
    for y in 0..s.vertex_count() {
        for i in 0..m.dim() {
            for j in 0..wd {
                if w.right_grade[j] == y && m.grade[i] == w.left_grade[j] {
                    pairs.push((i, j));
                }
            }
        }
    }
    let mut pair_index = vec![usize::MAX; m.dim() * wd];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        pair_index[i * wd + j] = k;
    }
    let np = pairs.len();
    let mut rels: Vec<Vec<u64>> = Vec::new();
    for &g in r.generators() {
        let (t, sv) = (r.left_vertex(g), r.right_vertex(g));
        let rm = m.action(g);
        let lw = w.left_action(g);
        for i in m.graded_part(t) {
            for j in (0..wd).filter(|&j| w.left_grade[j] == sv) {
                // (m_i g) (x) w_j - m_i (x) (g w_j)
                let mut row = vec![0u64; np];
                for k in 0..m.dim() {
                    let c = rm.get(i, k);
                    if c != 0 {
                        let idx = pair_index[k * wd + j];
                        debug_assert!(idx != usize::MAX);
                        row[idx] = (row[idx] + c) % p;
                    }
                }
                for l in 0..wd {
                    let c = lw.get(j, l);
                    if c != 0 {
                        let idx = pair_index[i * wd + l];
                        debug_assert!(idx != usize::MAX);
                        row[idx] = (row[idx] + p - c) % p;
                    }
                }
                if row.iter().any(|&c| c != 0) {
                    rels.push(row);
                }
            }
        }
    }
    let red = Matrix::from_rows(p, np, &rels).rref();
    let mut is_pivot = vec![false; np];
    for &c in &red.pivots {
        is_pivot[c] = true;
    }
    let kept: Vec<usize> = (0..np).filter(|&c| !is_pivot[c]).collect();
    let mut col_of = vec![usize::MAX; np];
    for (q, &c) in kept.iter().enumerate() {
        col_of[c] = q;
    }
    let q = kept.len();
    let mut projection = Matrix::zeros(p, np, q);
    for &c in &kept {
        projection.set(c, col_of[c], 1);
    }
    for (row, &c) in red.pivots.iter().enumerate() {
        for &k in &kept {
            let v = red.matrix.get(row, k);
            if v != 0 {
                projection.set(c, col_of[k], p - v);
            }
        }
    }
    let lift: Vec<(usize, usize)> = kept.iter().map(|&c| pairs[c]).collect();
    let action = (0..s.dim())
        .map(|b| {
            let rw = w.right_action(b);
            let mut out = Matrix::zeros(p, q, q);
            for (row, &(i, j)) in lift.iter().enumerate() {
                for l in 0..wd {
                    let c = rw.get(j, l);
                    if c == 0 {
                        continue;
                    }
                    let idx = pair_index[i * wd + l];
                    if idx == usize::MAX {
                        continue;
                    }
                    for col in 0..q {
                        let v = projection.get(idx, col);
                        if v != 0 {
                            out.add_at(row, col, c * v % p);
                        }
                    }
                }
            }
            out
        })
        .collect();
    let grade = lift.iter().map(|&(_, j)| w.right_grade[j]).collect();
    let module = RightModule::from_parts(s.clone(), action, grade, None);
    Ok(TensorProduct { module, pairs, projection, lift, pair_index, w_dim: wd })
}

/// `f (x) W : M (x) W -> M' (x) W` for a module map `f: M -> M'`.
pub fn tensor_map(f: &Matrix, src: &TensorProduct, tgt: &TensorProduct) -> Matrix {
    let p = f.prime();
    let mut out = Matrix::zeros(p, src.module.dim(), tgt.module.dim());
    for (row, &(i, j)) in src.lift.iter().enumerate() {
        let img = tgt.class_of_vec(f.row(i), j);
        out.row_mut(row).copy_from_slice(&img);
    }
    out
}

/// Generators of `sub` modulo `modulo` (both given as row spans inside `m`,
/// `modulo` contained in `sub`): graded vectors whose classes form a basis of
/// the top of `sub / modulo`.
pub fn top_generators(m: &RightModule, sub: &Matrix, modulo: &Matrix) -> Vec<(usize, Vec<u64>)> {
    let a = m.algebra();
    let p = m.p();
    let mut rad = modulo.clone();
    for &g in a.generators() {
        rad = rad.vstack(&sub.mul(m.action(g)));
    }
    let mut gens = Vec::new();
    for x in 0..a.vertex_count() {
        let ex = m.action(a.vertex(x));
        let mut span = rad.mul(ex).image_basis();
        let part = sub.mul(ex).image_basis();
        let mut rank = span.rows();
        for r in 0..part.rows() {
            let cand = span.vstack(&part.select_rows(&[r]));
            let nr = cand.rank();
            if nr > rank {
                gens.push((x, part.row(r).to_vec()));
                span = cand;
                rank = nr;
            }
        }
    }
    let _ = p;
    gens
}

/// Map `P_{x_1} + ... + P_{x_k} -> M` sending the `i`-th generator to `v_i`.
pub fn map_from_generators(m: &RightModule, gens: &[(usize, Vec<u64>)]) -> (RightModule, Matrix) {
    let a = m.algebra();
    let vertices: Vec<usize> = gens.iter().map(|(x, _)| *x).collect();
    let cover = projective_sum(a, &vertices);
    let mut f = Matrix::zeros(m.p(), cover.dim(), m.dim());
    let mut row = 0;
    for (x, v) in gens {
        for b in a.projective_basis(*x) {
            let img = m.action(b).apply(v);
            f.row_mut(row).copy_from_slice(&img);
            row += 1;
        }
    }
    (cover, f)
}

/// Minimal projective cover `P -> M`.
pub fn projective_cover(m: &RightModule) -> (RightModule, Matrix) {
    let gens = top_generators(m, &m.identity(), &Matrix::zeros(m.p(), 0, m.dim()));
    map_from_generators(m, &gens)
}

/// A projective resolution built by iterated syzygies:
/// `... -> P_1 -> P_0 -> M`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub terms: Vec<RightModule>,
    /// `maps[k]: P_{k+1} -> P_k`
    pub maps: Vec<Matrix>,
    pub augmentation: Matrix,
}

impl Resolution {
    pub fn length(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }
}

pub fn projective_resolution(m: &RightModule, cap: usize) -> Result<Resolution> {
    let p = m.p();
    if m.is_zero() {
        return Ok(Resolution { terms: vec![], maps: vec![], augmentation: Matrix::zeros(p, 0, 0) });
    }
    let (p0, aug) = projective_cover(m);
    let mut terms = vec![p0];
    let mut maps = Vec::new();
    let mut prev_map = aug.clone();
    loop {
        let last = terms.last().expect("nonempty");
        let ker = prev_map.left_kernel();
        if ker.rows() == 0 {
            break;
        }
        if terms.len() > cap {
            return Err(Error::ResolutionExceedsCap(cap));
        }
        let gens = top_generators(last, &ker, &Matrix::zeros(p, 0, last.dim()));
        let (next, f) = map_from_generators(last, &gens);
        maps.push(f.clone());
        terms.push(next);
        prev_map = f;
    }
    Ok(Resolution { terms, maps, augmentation: aug })
}

/// Projective dimension via syzygies.
pub fn projective_dimension(m: &RightModule, cap: usize) -> Result<usize> {
    Ok(projective_resolution(m, cap)?.length())
}

/// Maximum projective dimension of the simples; errors when some
/// resolution needs more than `cap` steps.
pub fn global_dimension(algebra: &Arc<Algebra>, cap: usize) -> Result<usize> {
    let mut gd = 0;
    for x in 0..algebra.vertex_count() {
        match projective_dimension(&simple(algebra, x), cap) {
            Ok(d) => gd = gd.max(d),
            Err(Error::ResolutionExceedsCap(_)) => return Err(Error::GlobalDimensionExceedsCap { cap, vertex: x }),
            Err(e) => return Err(e),
        }
    }
    Ok(gd)
}

/// `dim Ext^n(M, N)` for `n` in `0..=max_n`, computed directly from a syzygy
/// resolution of `M` and module-level Hom spaces.
pub fn ext_dims(m: &RightModule, n: &RightModule, max_n: usize, cap: usize) -> Result<Vec<usize>> {
    let res = projective_resolution(m, cap)?;
    let p = m.p();
    let homs: Vec<HomSpace> = res.terms.iter().map(|t| hom_basis(t, n)).collect::<Result<_>>()?;
    // delta_k: Hom(P_k, N) -> Hom(P_{k+1}, N), f -> maps[k] * f
    let delta = |k: usize| -> Matrix {
        let src = &homs[k];
        let tgt = &homs[k + 1];
        let mut out = Matrix::zeros(p, src.dim(), tgt.dim());
        for (r, f) in src.basis.iter().enumerate() {
            let g = res.maps[k].mul(f);
            out.row_mut(r).copy_from_slice(&tgt.coords(&g));
        }
        out
    };
    let mut dims = Vec::new();
    for k in 0..=max_n {
        if k >= homs.len() {
            dims.push(0);
            continue;
        }
        let out_rank = if k + 1 < homs.len() { delta(k).rank() } else { 0 };
        let in_rank = if k >= 1 { delta(k - 1).rank() } else { 0 };
        dims.push(homs[k].dim() - out_rank - in_rank);
    }
    Ok(dims)
}
