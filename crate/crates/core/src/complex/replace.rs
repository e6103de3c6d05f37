use std::collections::BTreeMap;
use std::sync::Arc;

use super::{ChainMap, Complex, HomComplex};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::{self, map_from_generators, top_generators, Bimodule, RightModule, Resolution, TensorProduct};

/// A quasi-isomorphism `P -> X` from a bounded complex of standard
/// projectives, built degree by degree from the top so that the cone stays
/// exact. Complexes that are already standard projective are returned as is.
pub fn projective_replacement(x: &Complex, cap: usize) -> Result<(Complex, ChainMap)> {
    if x.is_zero() || x.is_standard_projective() {
        return Ok((x.clone(), ChainMap::identity(x)));
    }
    let a = x.algebra();
    let p = x.prime();
    // collected from the top: (degree, term, d_P^n : P^n -> P^{n+1}, f^n)
    let mut built: Vec<(i32, RightModule, Matrix, Matrix)> = Vec::new();
    let mut above = RightModule::zero(a);
    let mut d_above = Matrix::zeros(p, 0, 0); // d_P^{n+1}
    let mut f_above = Matrix::zeros(p, 0, x.dim_at(x.hi() + 1)); // f^{n+1}
    let mut n = x.hi();
    loop {
        let xn = x.term(n);
        let v = module::direct_sum(a, &[above.clone(), xn.clone()]);
        let (pd, xd) = (above.dim(), xn.dim());
        let (pd1, xd1) = (d_above.cols(), x.dim_at(n + 1));
        let mut delta = Matrix::zeros(p, pd + xd, pd1 + xd1);
        delta.set_block(0, 0, &d_above.neg());
        delta.set_block(0, pd1, &f_above);
        delta.set_block(pd, pd1, &x.diff(n));
        let z = delta.left_kernel();
        let below = x.diff(n - 1);
        let mut modulo = Matrix::zeros(p, below.rows(), pd + xd);
        modulo.set_block(0, pd, &below);
        let modulo = modulo.image_basis();
        let gens = top_generators(&v, &z, &modulo);
        if n < x.lo() && gens.is_empty() {
            break;
        }
        if n < x.lo() - cap as i32 {
            return Err(Error::ResolutionExceedsCap(cap));
        }
        let (pn, pi) = map_from_generators(&v, &gens);
        let d_n = pi.select_cols(&(0..pd).collect::<Vec<_>>()).neg();
        let f_n = pi.select_cols(&(pd..pd + xd).collect::<Vec<_>>());
        built.push((n, pn.clone(), d_n.clone(), f_n.clone()));
        above = pn;
        d_above = d_n;
        f_above = f_n;
        n -= 1;
    }
    built.reverse();
    let lo = built.first().map_or(0, |b| b.0);
    let terms: Vec<RightModule> = built.iter().map(|b| b.1.clone()).collect();
    let diffs: Vec<Matrix> = built.iter().take(built.len().saturating_sub(1)).map(|b| b.2.clone()).collect();
    let maps: BTreeMap<i32, Matrix> = built.iter().map(|b| (b.0, b.3.clone())).collect();
    let pc = Complex::from_parts(a, lo, terms, diffs);
    let q = ChainMap::from_fn(&pc, x, |k| {
        maps.get(&k).cloned().unwrap_or_else(|| Matrix::zeros(p, pc.dim_at(k), x.dim_at(k)))
    });
    debug_assert!(q.is_chain_map());
    Ok((pc, q))
}

/// The resolution `P_L -> ... -> P_0` in degrees `-L..=0` together with the
/// augmentation onto the stalk complex of the resolved module.
pub fn resolution_complex(res: &Resolution, m: &RightModule) -> (Complex, ChainMap) {
    let a = m.algebra();
    let len = res.terms.len() as i32;
    let terms: Vec<RightModule> = res.terms.iter().rev().cloned().collect();
    let diffs: Vec<Matrix> = res.maps.iter().rev().cloned().collect();
    let c = Complex::from_parts(a, 1 - len, terms, diffs);
    let stalk = Complex::stalk(m, 0);
    let p = a.prime();
    let aug = ChainMap::from_fn(&c, &stalk, |k| {
        if k == 0 {
            res.augmentation.clone()
        } else {
            Matrix::zeros(p, c.dim_at(k), stalk.dim_at(k))
        }
    });
    (c, aug)
}

/// Lifts `f: P -> Y` through a quasi-isomorphism `s: X -> Y` when `P` is a
/// bounded complex of projectives: returns `g: P -> X` with `g s` homotopic
/// to `f`.
pub fn lift_through_qis(f: &ChainMap, s: &ChainMap) -> Result<ChainMap> {
    let pcx = &f.source;
    let hx = HomComplex::new(pcx, &s.source)?;
    let hy = HomComplex::new(pcx, &s.target)?;
    let p = pcx.prime();
    let (g0, g1) = (hx.dim(0), hx.dim(1));
    let (h0, y0) = (hy.dim(-1), hy.dim(0));
    let mut m = Matrix::zeros(p, g0 + h0, g1 + y0);
    m.set_block(0, 0, &hx.diff(0));
    m.set_block(0, g1, &hx.postcompose_matrix(&hy, s, 0));
    m.set_block(g0, g1, &hy.diff(-1));
    let mut rhs = vec![0u64; g1];
    rhs.extend(hy.chain_map_coords(f));
    let sol = m.solve_left(&rhs)?.ok_or(Error::LiftSystemInconsistent)?;
    Ok(hx.to_chain_map(&sol[..g0]))
}

/// `X (x)^L W`: the termwise tensor of the projective replacement of `X`.
#[derive(Clone, Debug)]
pub struct TensorComplex {
    pub complex: Complex,
    pub resolution: Complex,
    pub quasi_iso: ChainMap,
    lo: i32,
    parts: Vec<TensorProduct>,
}

impl TensorComplex {
    pub fn part(&self, n: i32) -> Option<&TensorProduct> {
        let k = n - self.lo;
        (k >= 0).then(|| self.parts.get(k as usize)).flatten()
    }
}

pub fn derived_tensor(x: &Complex, w: &Bimodule) -> Result<TensorComplex> {
    let target: &Arc<_> = w.right();
    let (pc, q) = x.replacement()?;
    let mut parts = Vec::new();
    for n in pc.degrees() {
        parts.push(module::tensor_over(&pc.term(n), w)?);
    }
    let lo = pc.lo();
    let terms = parts.iter().map(|t| t.module.clone()).collect();
    let diffs = pc
        .degrees()
        .filter(|&n| n < pc.hi())
        .map(|n| {
            let (i, j) = ((n - lo) as usize, (n + 1 - lo) as usize);
            module::tensor_map(&pc.diff(n), &parts[i], &parts[j])
        })
        .collect();
    let complex = if pc.is_zero() { Complex::zero(target) } else { Complex::from_parts(target, lo, terms, diffs) };
    Ok(TensorComplex { complex, resolution: pc, quasi_iso: q, lo, parts })
}

/// `f (x) W` for a chain map between the replacements of two tensor complexes.
pub fn tensor_chain_map(f: &ChainMap, src: &TensorComplex, tgt: &TensorComplex) -> ChainMap {
    let p = f.source.prime();
    ChainMap::from_fn(&src.complex, &tgt.complex, |n| match (src.part(n), tgt.part(n)) {
        (Some(s), Some(t)) => module::tensor_map(&f.component(n), s, t),
        _ => Matrix::zeros(p, src.complex.dim_at(n), tgt.complex.dim_at(n)),
    })
}
