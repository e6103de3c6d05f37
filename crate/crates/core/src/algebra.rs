//! Finite-dimensional basic algebras given by structure constants.
//!
//! Every algebra here carries a complete family of orthogonal vertex
//! idempotents, each of which is a basis element, and every basis element
//! `b` is homogeneous: `b = e_l * b * e_r` for a unique pair of vertices.
//! Paths compose right to left, so an arrow `a: 1 -> 2` satisfies
//! `a = e_2 * a * e_1`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{is_prime, Matrix, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertex_labels: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Vertices are labelled `1..=n`; arrows are labelled `a, b, c, ...`.
    pub fn new(vertices: usize, arrows: &[(usize, usize)]) -> Result<Self> {
        let labels = (1..=vertices).map(|v| v.to_string()).collect();
        let arrows = arrows
            .iter()
            .enumerate()
            .map(|(i, &(s, t))| Arrow { source: s, target: t, label: arrow_label(i) })
            .collect();
        Self::with_labels(labels, arrows)
    }

    pub fn with_labels(vertex_labels: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let n = vertex_labels.len();
        if n == 0 {
            return Err(Error::InvalidQuiver("quiver has no vertices".into()));
        }
        for a in &arrows {
            if a.source >= n || a.target >= n {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {} has endpoint out of range 0..{}",
                    a.label, n
                )));
            }
        }
        let q = Quiver { vertex_labels, arrows };
        if let Some(v) = q.find_cycle() {
            return Err(Error::CyclicQuiver(v));
        }
        Ok(q)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    pub fn reversed(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { source: a.target, target: a.source, label: a.label.clone() })
            .collect();
        Quiver { vertex_labels: self.vertex_labels.clone(), arrows }
    }

    fn find_cycle(&self) -> Option<usize> {
        // Kahn's algorithm; any vertex left over lies on or behind a cycle.
        let n = self.vertex_count();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    stack.push(a.target);
                }
            }
        }
        if seen == n {
            None
        } else {
            (0..n).find(|&v| indeg[v] > 0)
        }
    }

    /// All directed paths, vertex paths first, then by length. Each path is
    /// `(source, target, arrows in traversal order)`.
    pub fn paths(&self) -> Vec<(usize, usize, Vec<usize>)> {
        let n = self.vertex_count();
        let mut out: Vec<(usize, usize, Vec<usize>)> = (0..n).map(|v| (v, v, vec![])).collect();
        let mut frontier: Vec<(usize, usize, Vec<usize>)> = self
            .arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (a.source, a.target, vec![i]))
            .collect();
        while !frontier.is_empty() {
            out.extend(frontier.iter().cloned());
            let mut next = Vec::new();
            for (s, t, path) in &frontier {
                for (i, a) in self.arrows.iter().enumerate() {
                    if a.source == *t {
                        let mut q = path.clone();
                        q.push(i);
                        next.push((*s, a.target, q));
                    }
                }
            }
            frontier = next;
        }
        out
    }
}

fn arrow_label(i: usize) -> String {
    let letters = b"abcdefghijklmnopqrstuvwxyz";
    if i < letters.len() {
        (letters[i] as char).to_string()
    } else {
        format!("a{}", i)
    }
}

/// A subset of vertices selecting the idempotent `e = sum of e_x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentSet {
    vertices: BTreeSet<usize>,
}

impl IdempotentSet {
    pub fn new(vertex_count: usize, vertices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let vertices: BTreeSet<usize> = vertices.into_iter().collect();
        if vertices.is_empty() {
            return Err(Error::InvalidIdempotentSet("vertex set is empty".into()));
        }
        if let Some(&v) = vertices.iter().find(|&&v| v >= vertex_count) {
            return Err(Error::InvalidIdempotentSet(format!("vertex {} out of range", v)));
        }
        Ok(IdempotentSet { vertices })
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.vertices.iter().copied().collect()
    }
}

#[derive(Clone)]
pub struct Algebra {
    name: String,
    p: u64,
    labels: Vec<String>,
    // products[(i * d + j) * d + k]: coefficient of b_k in b_i * b_j
    products: Vec<u64>,
    vertices: Vec<usize>,
    vertex_labels: Vec<String>,
    left_vertex: Vec<usize>,
    right_vertex: Vec<usize>,
    generators: Vec<usize>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("name", &self.name)
            .field("p", &self.p)
            .field("basis", &self.labels)
            .field("vertices", &self.vertex_labels)
            .finish()
    }
}

impl Algebra {
    /// Builds and validates an algebra from structure constants.
    ///
    /// `vertices[x]` is the basis index of the idempotent at vertex `x`.
    pub fn from_structure(
        name: impl Into<String>,
        p: u64,
        labels: Vec<String>,
        products: Vec<u64>,
        vertices: Vec<usize>,
        vertex_labels: Vec<String>,
    ) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let d = labels.len();
        if products.len() != d * d * d {
            return Err(Error::InvalidAlgebra("structure constant table has wrong size".into()));
        }
        if vertices.len() != vertex_labels.len() {
            return Err(Error::InvalidAlgebra("vertex label count mismatch".into()));
        }
        let mut a = Algebra {
            name: name.into(),
            p,
            labels,
            products,
            vertices,
            vertex_labels,
            left_vertex: vec![],
            right_vertex: vec![],
            generators: vec![],
        };
        a.compute_homogeneity()?;
        a.validate()?;
        a.generators = a.compute_generators();
        Ok(a)
    }

    fn compute_homogeneity(&mut self) -> Result<()> {
        let d = self.dim();
        let mut left = Vec::with_capacity(d);
        let mut right = Vec::with_capacity(d);
        for i in 0..d {
            let unit_i = self.unit_vector(i);
            let l = (0..self.vertex_count()).find(|&x| self.product(self.vertices[x], i) == &unit_i[..]);
            let r = (0..self.vertex_count()).find(|&x| self.product(i, self.vertices[x]) == &unit_i[..]);
            match (l, r) {
                (Some(l), Some(r)) => {
                    left.push(l);
                    right.push(r);
                }
                _ => {
                    return Err(Error::InvalidAlgebra(format!(
                        "basis element {} is not vertex-homogeneous",
                        self.labels[i]
                    )))
                }
            }
        }
        self.left_vertex = left;
        self.right_vertex = right;
        Ok(())
    }

    /// Checks associativity on all basis triples, unit laws, and that the
    /// vertex idempotents are orthogonal and sum to one.
    pub fn validate(&self) -> Result<()> {
        let d = self.dim();
        let p = self.p;
        for i in 0..d {
            for j in 0..d {
                let ij = self.product(i, j).to_vec();
                for k in 0..d {
                    let lhs = self.mul_vec(&ij, &self.unit_vector(k));
                    let jk = self.product(j, k).to_vec();
                    let rhs = self.mul_vec(&self.unit_vector(i), &jk);
                    if lhs != rhs {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        let one = self.unit();
        for i in 0..d {
            let b = self.unit_vector(i);
            if self.mul_vec(&one, &b) != b || self.mul_vec(&b, &one) != b {
                return Err(Error::InvalidAlgebra(format!("unit law fails on {}", self.labels[i])));
            }
        }
        for (x, &ex) in self.vertices.iter().enumerate() {
            for (y, &ey) in self.vertices.iter().enumerate() {
                let prod = self.product(ex, ey);
                let expected = if x == y { self.unit_vector(ex) } else { vec![0; d] };
                if prod != &expected[..] {
                    return Err(Error::InvalidAlgebra(format!(
                        "idempotents at vertices {} and {} are not orthogonal idempotents",
                        x, y
                    )));
                }
            }
        }
        let _ = p;
        Ok(())
    }

    fn compute_generators(&self) -> Vec<usize> {
        // radical = span of non-vertex basis elements (basic, acyclic setting)
        let d = self.dim();
        let rad: Vec<usize> = (0..d).filter(|i| !self.vertices.contains(i)).collect();
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for &i in &rad {
            for &j in &rad {
                let v = self.product(i, j).to_vec();
                if v.iter().any(|&a| a != 0) {
                    rows.push(v);
                }
            }
        }
        let mut span = Matrix::from_rows(self.p, d, &rows);
        let mut rank = span.rank();
        let mut gens = Vec::new();
        for &i in &rad {
            let cand = span.vstack(&Matrix::from_rows(self.p, d, &[self.unit_vector(i)]));
            let r = cand.rank();
            if r > rank {
                gens.push(i);
                span = cand;
                rank = r;
            }
        }
        gens
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn prime(&self) -> u64 {
        self.p
    }
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
    /// Basis index of the idempotent at vertex `x`.
    pub fn vertex(&self, x: usize) -> usize {
        self.vertices[x]
    }
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }
    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }
    pub fn left_vertex(&self, i: usize) -> usize {
        self.left_vertex[i]
    }
    pub fn right_vertex(&self, i: usize) -> usize {
        self.right_vertex[i]
    }
    /// Basis indices of the arrows (a complement of rad^2 in rad).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }
    pub fn is_vertex(&self, i: usize) -> bool {
        self.vertices.contains(&i)
    }

    pub fn unit_vector(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    pub fn unit(&self) -> Vec<u64> {
        let mut v = vec![0; self.dim()];
        for &e in &self.vertices {
            v[e] = 1;
        }
        v
    }

    /// Coordinates of `b_i * b_j`.
    pub fn product(&self, i: usize, j: usize) -> &[u64] {
        let d = self.dim();
        &self.products[(i * d + j) * d..(i * d + j + 1) * d]
    }

    pub fn mul_vec(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let d = self.dim();
        let p = self.p;
        let mut out = vec![0u64; d];
        for i in 0..d {
            if x[i] == 0 {
                continue;
            }
            for j in 0..d {
                if y[j] == 0 {
                    continue;
                }
                let c = x[i] * y[j] % p;
                for (o, &s) in out.iter_mut().zip(self.product(i, j)) {
                    *o = (*o + c * s) % p;
                }
            }
        }
        out
    }

    /// Matrix of `x -> x * b_j` on the regular right module (row `i` = `b_i * b_j`).
    pub fn right_mult(&self, j: usize) -> Matrix {
        let d = self.dim();
        let rows: Vec<Vec<u64>> = (0..d).map(|i| self.product(i, j).to_vec()).collect();
        Matrix::from_rows(self.p, d, &rows)
    }

    /// Matrix of `x -> b_i * x` in row convention (row `j` = `b_i * b_j`).
    pub fn left_mult(&self, i: usize) -> Matrix {
        let d = self.dim();
        let rows: Vec<Vec<u64>> = (0..d).map(|j| self.product(i, j).to_vec()).collect();
        Matrix::from_rows(self.p, d, &rows)
    }

    /// Basis indices spanning `e_x A`.
    pub fn projective_basis(&self, x: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.left_vertex[i] == x).collect()
    }

    /// Basis indices spanning `A e_x`.
    pub fn left_projective_basis(&self, x: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.right_vertex[i] == x).collect()
    }

    /// Basis indices of `e_x A e_y`.
    pub fn between(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.left_vertex[i] == x && self.right_vertex[i] == y).collect()
    }

    /// Same basis, multiplication reversed.
    pub fn opposite(&self) -> Algebra {
        let d = self.dim();
        let mut products = vec![0; d * d * d];
        for i in 0..d {
            for j in 0..d {
                let src = self.product(j, i);
                products[(i * d + j) * d..(i * d + j + 1) * d].copy_from_slice(src);
            }
        }
        let name = match self.name.strip_suffix("^op") {
            Some(base) => base.to_string(),
            None => format!("{}^op", self.name),
        };
        Algebra {
            name,
            p: self.p,
            labels: self.labels.clone(),
            products,
            vertices: self.vertices.clone(),
            vertex_labels: self.vertex_labels.clone(),
            left_vertex: self.right_vertex.clone(),
            right_vertex: self.left_vertex.clone(),
            generators: self.generators.clone(),
        }
    }

    /// True when both algebras have identical structure constants.
    pub fn same_structure(&self, other: &Algebra) -> bool {
        self.p == other.p && self.products == other.products && self.vertices == other.vertices
    }
}

/// Path algebra of an acyclic quiver over GF(p).
pub fn path_algebra(name: &str, q: &Quiver, p: u64) -> Result<Algebra> {
    let paths = q.paths();
    let d = paths.len();
    let n = q.vertex_count();
    let labels: Vec<String> = paths
        .iter()
        .map(|(s, _, arrows)| {
            if arrows.is_empty() {
                format!("e{}", q.vertex_labels()[*s])
            } else {
                arrows.iter().rev().map(|&a| q.arrows()[a].label.as_str()).collect::<String>()
            }
        })
        .collect();
    let index_of = |s: usize, t: usize, arrows: &[usize]| -> usize {
        paths
            .iter()
            .position(|(ps, pt, pa)| *ps == s && *pt == t && pa == arrows)
            .expect("concatenation of paths is a path")
    };
    let mut products = vec![0u64; d * d * d];
    for (i, (si, ti, ai)) in paths.iter().enumerate() {
        for (j, (sj, tj, aj)) in paths.iter().enumerate() {
            // b_i * b_j: traverse b_j first, then b_i
            if tj != si {
                continue;
            }
            let mut cat = aj.clone();
            cat.extend_from_slice(ai);
            let k = index_of(*sj, *ti, &cat);
            products[(i * d + j) * d + k] = 1;
        }
    }
    Algebra::from_structure(name, p, labels, products, (0..n).collect(), q.vertex_labels().to_vec())
}

/// The corner algebra `eAe` with its inclusion into `A`.
#[derive(Clone, Debug)]
pub struct Corner {
    pub algebra: Algebra,
    /// Row `k` = coordinates in `A` of corner basis element `k`.
    pub inclusion: Matrix,
    /// Corner vertex `k` corresponds to vertex `vertex_map[k]` of `A`.
    pub vertex_map: Vec<usize>,
    /// Basis index in `A` of each corner basis element.
    pub basis_in_parent: Vec<usize>,
}

pub fn corner(a: &Algebra, e: &IdempotentSet) -> Result<Corner> {
    let d = a.dim();
    let p = a.prime();
    let mut ev = vec![0; d];
    for x in e.vertices() {
        ev[a.vertex(x)] = 1;
    }
    // two-sided truncation e * b_i * e, then greedy independent selection
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for i in 0..d {
        let v = a.mul_vec(&a.mul_vec(&ev, &a.unit_vector(i)), &ev);
        if v.iter().all(|&c| c == 0) {
            continue;
        }
        let mut cand = rows.clone();
        cand.push(v.clone());
        if Matrix::from_rows(p, d, &cand).rank() == cand.len() {
            if v != a.unit_vector(i) {
                return Err(Error::InvalidAlgebra("corner truncation is not basis-adapted".into()));
            }
            rows = cand;
            chosen.push(i);
        }
    }
    let inclusion = Matrix::from_rows(p, d, &rows);
    let sub = Subspace::new(inclusion.clone());
    let dc = chosen.len();
    let mut products = vec![0u64; dc * dc * dc];
    for (i, &ci) in chosen.iter().enumerate() {
        for (j, &cj) in chosen.iter().enumerate() {
            let coords = sub.coords(a.product(ci, cj)).expect("eAe is closed under products");
            products[(i * dc + j) * dc..(i * dc + j + 1) * dc].copy_from_slice(&coords);
        }
    }
    let vertex_map = e.vertices();
    let vertices = vertex_map
        .iter()
        .map(|&x| chosen.iter().position(|&c| c == a.vertex(x)).expect("e_x lies in eAe"))
        .collect();
    let labels = chosen.iter().map(|&c| a.labels()[c].clone()).collect();
    let vlabels = vertex_map.iter().map(|&x| a.vertex_labels()[x].clone()).collect();
    let algebra = Algebra::from_structure(format!("{}e", a.name()), p, labels, products, vertices, vlabels)?;
    Ok(Corner { algebra, inclusion, vertex_map, basis_in_parent: chosen })
}

/// The quotient `A / AeA` with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: Algebra,
    /// `dim A x dim B`; row `i` = image of `b_i`.
    pub projection: Matrix,
    /// Quotient vertex `k` corresponds to vertex `vertex_map[k]` of `A`.
    pub vertex_map: Vec<usize>,
    /// Basis of the ideal `AeA` as rows in `A`-coordinates.
    pub ideal: Matrix,
}

/// Span of `x * e_v * y` over basis elements `x, y` and `v` in `e`.
pub fn idempotent_ideal(a: &Algebra, e: &IdempotentSet) -> Matrix {
    let d = a.dim();
    let mut rows = Vec::new();
    for v in e.vertices() {
        let ev = a.vertex(v);
        for x in 0..d {
            let xe = a.product(x, ev).to_vec();
            if xe.iter().all(|&c| c == 0) {
                continue;
            }
            for y in 0..d {
                let r = a.mul_vec(&xe, &a.unit_vector(y));
                if r.iter().any(|&c| c != 0) {
                    rows.push(r);
                }
            }
        }
    }
    Matrix::from_rows(a.prime(), d, &rows).image_basis()
}

pub fn idempotent_quotient(a: &Algebra, e: &IdempotentSet) -> Result<Quotient> {
    let d = a.dim();
    let p = a.prime();
    let ideal = idempotent_ideal(a, e);
    if ideal.rows() == d {
        return Err(Error::IdealIsWholeAlgebra);
    }
    let mut chosen = Vec::new();
    let mut span = ideal.clone();
    for i in 0..d {
        let cand = span.vstack(&Matrix::from_rows(p, d, &[a.unit_vector(i)]));
        if cand.rank() == cand.rows() {
            span = cand;
            chosen.push(i);
        }
    }
    let db = chosen.len();
    // basis of A = chosen unit vectors followed by the ideal basis
    let mut stacked = Matrix::zeros(p, 0, d);
    for &c in &chosen {
        stacked = stacked.vstack(&Matrix::from_rows(p, d, &[a.unit_vector(c)]));
    }
    let stacked = stacked.vstack(&ideal);
    let sub = Subspace::new(stacked);
    let mut projection = Matrix::zeros(p, d, db);
    for i in 0..d {
        let c = sub.coords(&a.unit_vector(i)).expect("full basis");
        for k in 0..db {
            projection.set(i, k, c[k]);
        }
    }
    let mut products = vec![0u64; db * db * db];
    for (i, &ci) in chosen.iter().enumerate() {
        for (j, &cj) in chosen.iter().enumerate() {
            let img = projection.apply(a.product(ci, cj));
            products[(i * db + j) * db..(i * db + j + 1) * db].copy_from_slice(&img);
        }
    }
    let vertex_map: Vec<usize> = (0..a.vertex_count()).filter(|&x| !e.contains(x)).collect();
    let mut vertices = Vec::new();
    for &x in &vertex_map {
        match chosen.iter().position(|&c| c == a.vertex(x)) {
            Some(k) => vertices.push(k),
            None => {
                return Err(Error::InvalidAlgebra(format!(
                    "idempotent at vertex {} vanishes in the quotient",
                    a.vertex_labels()[x]
                )))
            }
        }
    }
    let labels = chosen.iter().map(|&c| a.labels()[c].clone()).collect();
    let vlabels = vertex_map.iter().map(|&x| a.vertex_labels()[x].clone()).collect();
    let algebra = Algebra::from_structure(format!("{}/AeA", a.name()), p, labels, products, vertices, vlabels)?;
    Ok(Quotient { algebra, projection, vertex_map, ideal })
}

/// Semisimple algebra `k^n` (one vertex per factor, no arrows).
pub fn semisimple(name: &str, n: usize, p: u64) -> Result<Algebra> {
    path_algebra(name, &Quiver::new(n, &[])?, p)
}
