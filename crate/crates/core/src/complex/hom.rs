use std::collections::BTreeMap;

use super::{ChainMap, Complex, Homotopy};
use crate::error::Result;
use crate::linalg::{Matrix, Subspace};
use crate::module::{hom_basis, HomSpace};

/// One summand `Hom(P^k, Y^{k+n})` of a Hom complex degree.
#[derive(Clone, Debug)]
struct Block {
    k: i32,
    offset: usize,
    space: HomSpace,
}

#[derive(Clone, Debug)]
struct Degree {
    blocks: Vec<Block>,
    dim: usize,
}

/// Cohomology of one degree: class representatives and a solver that splits
/// a cycle into representative and boundary parts.
#[derive(Clone, Debug)]
pub struct Cohomology {
    /// Rows are cycle representatives, in Hom-complex coordinates.
    pub reps: Matrix,
    solver: Option<Subspace>,
}

impl Cohomology {
    pub fn dim(&self) -> usize {
        self.reps.rows()
    }

    /// Class coordinates of a cycle.
    pub fn class_of(&self, cycle: &[u64]) -> Option<Vec<u64>> {
        match &self.solver {
            None => cycle.iter().all(|&c| c == 0).then(Vec::new),
            Some(s) => s.coords(cycle).map(|c| c[..self.dim()].to_vec()),
        }
    }
}

/// The total Hom complex `Hom(P, Y)` with `(D f) = d_Y f - (-1)^n f d_P`,
/// meaning in row convention `D(f)_k = f_k d_Y - (-1)^n d_P f_{k+1}`.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub source: Complex,
    pub target: Complex,
    degrees: BTreeMap<i32, Degree>,
    diffs: BTreeMap<i32, Matrix>,
    cohomology: BTreeMap<i32, Cohomology>,
}

impl HomComplex {
    pub fn new(source: &Complex, target: &Complex) -> Result<Self> {
        let p = source.prime();
        let mut degrees = BTreeMap::new();
        if !source.is_zero() && !target.is_zero() {
            for n in (target.lo() - source.hi())..=(target.hi() - source.lo()) {
                let mut blocks = Vec::new();
                let mut offset = 0;
                for k in source.degrees() {
                    if source.dim_at(k) == 0 || target.dim_at(k + n) == 0 {
                        continue;
                    }
                    let space = hom_basis(&source.term(k), &target.term(k + n))?;
                    let d = space.dim();
                    if d > 0 {
                        blocks.push(Block { k, offset, space });
                        offset += d;
                    }
                }
                degrees.insert(n, Degree { blocks, dim: offset });
            }
        }
        let mut h = HomComplex {
            source: source.clone(),
            target: target.clone(),
            degrees,
            diffs: BTreeMap::new(),
            cohomology: BTreeMap::new(),
        };
        let ns: Vec<i32> = h.degrees.keys().copied().collect();
        for &n in &ns {
            let d = h.compute_diff(n);
            h.diffs.insert(n, d);
        }
        for &n in &ns {
            let z = h.diff(n).left_kernel();
            let b = h.diff(n - 1).image_basis();
            let mut span = b.clone();
            let mut reps = Matrix::zeros(p, 0, h.dim(n));
            let mut rank = span.rows();
            for r in 0..z.rows() {
                let row = z.select_rows(&[r]);
                let cand = span.vstack(&row);
                let nr = cand.rank();
                if nr > rank {
                    reps = reps.vstack(&row);
                    span = cand;
                    rank = nr;
                }
            }
            let stacked = reps.vstack(&b);
            let solver = (stacked.rows() > 0).then(|| Subspace::new(stacked));
            h.cohomology.insert(n, Cohomology { reps, solver });
        }
        Ok(h)
    }

    pub fn dim(&self, n: i32) -> usize {
        self.degrees.get(&n).map_or(0, |d| d.dim)
    }

    /// `dim H^n`.
    pub fn cohomology_dim(&self, n: i32) -> usize {
        self.cohomology.get(&n).map_or(0, Cohomology::dim)
    }

    pub fn cohomology(&self, n: i32) -> Cohomology {
        self.cohomology.get(&n).cloned().unwrap_or_else(|| Cohomology {
            reps: Matrix::zeros(self.source.prime(), 0, 0),
            solver: None,
        })
    }

    /// Nonzero cohomology dimensions.
    pub fn cohomology_dims(&self) -> BTreeMap<i32, usize> {
        self.cohomology.iter().map(|(&n, c)| (n, c.dim())).filter(|&(_, d)| d > 0).collect()
    }

    /// `D^n: Hom^n -> Hom^{n+1}` with rows indexed by the basis of `Hom^n`.
    pub fn diff(&self, n: i32) -> Matrix {
        self.diffs
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.source.prime(), self.dim(n), self.dim(n + 1)))
    }

    fn compute_diff(&self, n: i32) -> Matrix {
        let p = self.source.prime();
        let mut out = Matrix::zeros(p, self.dim(n), self.dim(n + 1));
        let Some(deg) = self.degrees.get(&n) else { return out };
        let sign_neg = n.rem_euclid(2) == 0; // -(-1)^n
        for block in &deg.blocks {
            for (b, f) in block.space.basis.iter().enumerate() {
                let row = block.offset + b;
                let mut comps: Vec<(i32, Matrix)> = Vec::new();
                // f_k d_Y lands in Hom(P^k, Y^{k+n+1})
                let fd = f.mul(&self.target.diff(block.k + n));
                comps.push((block.k, fd));
                // -(-1)^n d_P f lands in Hom(P^{k-1}, Y^{k+n})
                let df = self.source.diff(block.k - 1).mul(f);
                comps.push((block.k - 1, if sign_neg { df.neg() } else { df }));
                for (k, m) in comps {
                    let v = self.coords_in(n + 1, k, &m);
                    for (c, x) in v {
                        out.add_at(row, c, x);
                    }
                }
            }
        }
        out
    }

    // coordinates of a single component in degree n, block k (sparse)
    fn coords_in(&self, n: i32, k: i32, m: &Matrix) -> Vec<(usize, u64)> {
        if m.is_zero() {
            return vec![];
        }
        let deg = self.degrees.get(&n).expect("nonzero component implies degree exists");
        let block = deg.blocks.iter().find(|b| b.k == k).expect("nonzero component implies block exists");
        block.space.coords(m).into_iter().enumerate().map(|(i, c)| (block.offset + i, c)).collect()
    }

    /// Coordinates of a family of components `f_k: P^k -> Y^{k+n}`.
    pub fn coords_of(&self, n: i32, comp: impl Fn(i32) -> Matrix) -> Vec<u64> {
        let mut v = vec![0u64; self.dim(n)];
        if let Some(deg) = self.degrees.get(&n) {
            for block in &deg.blocks {
                let c = block.space.coords(&comp(block.k));
                v[block.offset..block.offset + c.len()].copy_from_slice(&c);
            }
        }
        v
    }

    /// Components `k -> Hom(P^k, Y^{k+n})` of a coordinate vector.
    pub fn components(&self, n: i32, coords: &[u64]) -> BTreeMap<i32, Matrix> {
        let p = self.source.prime();
        let mut out = BTreeMap::new();
        if let Some(deg) = self.degrees.get(&n) {
            for block in &deg.blocks {
                let c = &coords[block.offset..block.offset + block.space.dim()];
                out.insert(block.k, block.space.combine(c, p));
            }
        }
        out
    }

    /// The degree-0 element as a chain map.
    pub fn to_chain_map(&self, coords: &[u64]) -> ChainMap {
        let comps = self.components(0, coords);
        let p = self.source.prime();
        ChainMap::from_fn(&self.source, &self.target, |k| {
            comps.get(&k).cloned().unwrap_or_else(|| Matrix::zeros(p, self.source.dim_at(k), self.target.dim_at(k)))
        })
    }

    pub fn chain_map_coords(&self, f: &ChainMap) -> Vec<u64> {
        self.coords_of(0, |k| f.component(k))
    }

    pub fn to_homotopy(&self, coords: &[u64]) -> Homotopy {
        let comps = self.components(-1, coords);
        let p = self.source.prime();
        Homotopy::from_fn(&self.source, &self.target, |k| {
            comps.get(&k).cloned().unwrap_or_else(|| Matrix::zeros(p, self.source.dim_at(k), self.target.dim_at(k - 1)))
        })
    }

    /// Degree-0 class coordinates of a chain map.
    pub fn class_of_map(&self, f: &ChainMap) -> Vec<u64> {
        self.cohomology(0).class_of(&self.chain_map_coords(f)).expect("chain maps are cycles")
    }

    /// Representative chain map of a degree-0 class.
    pub fn map_of_class(&self, class: &[u64]) -> ChainMap {
        let h = self.cohomology(0);
        let v = if h.dim() == 0 { vec![0; self.dim(0)] } else { h.reps.apply(class) };
        self.to_chain_map(&v)
    }

    /// Matrix of postcomposition `Hom^n(P, Y) -> Hom^n(P, Y')` with `s: Y -> Y'`.
    pub fn postcompose_matrix(&self, other: &HomComplex, s: &ChainMap, n: i32) -> Matrix {
        let p = self.source.prime();
        let mut out = Matrix::zeros(p, self.dim(n), other.dim(n));
        if let Some(deg) = self.degrees.get(&n) {
            for block in &deg.blocks {
                for (b, f) in block.space.basis.iter().enumerate() {
                    let g = f.mul(&s.component(block.k + n));
                    let v = other.coords_in_opt(n, block.k, &g);
                    for (c, x) in v {
                        out.add_at(block.offset + b, c, x);
                    }
                }
            }
        }
        out
    }

    /// Matrix of precomposition `Hom^n(P, Y) -> Hom^n(P', Y)` with `u: P' -> P`.
    pub fn precompose_matrix(&self, other: &HomComplex, u: &ChainMap, n: i32) -> Matrix {
        let p = self.source.prime();
        let mut out = Matrix::zeros(p, self.dim(n), other.dim(n));
        if let Some(deg) = self.degrees.get(&n) {
            for block in &deg.blocks {
                for (b, f) in block.space.basis.iter().enumerate() {
                    let g = u.component(block.k).mul(f);
                    let v = other.coords_in_opt(n, block.k, &g);
                    for (c, x) in v {
                        out.add_at(block.offset + b, c, x);
                    }
                }
            }
        }
        out
    }

    fn coords_in_opt(&self, n: i32, k: i32, m: &Matrix) -> Vec<(usize, u64)> {
        if m.is_zero() {
            vec![]
        } else {
            self.coords_in(n, k, m)
        }
    }

    /// Map induced on `H^n` by a chain-level map `self -> other` given as a
    /// matrix on Hom-complex coordinates.
    pub fn induced_on_cohomology(&self, other: &HomComplex, chain: &Matrix, n: i32) -> Matrix {
        let src = self.cohomology(n);
        let tgt = other.cohomology(n);
        let p = self.source.prime();
        let mut out = Matrix::zeros(p, src.dim(), tgt.dim());
        for r in 0..src.dim() {
            let img = chain.apply(src.reps.row(r));
            let c = tgt.class_of(&img).expect("chain maps of Hom complexes send cycles to cycles");
            out.row_mut(r).copy_from_slice(&c);
        }
        out
    }
}
