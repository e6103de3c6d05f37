use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ChainMap, Complex, HomComplex};
use crate::error::Result;

/// Outcome of a randomized search for a quasi-isomorphism `X -> Y`.
#[derive(Clone, Debug)]
pub enum DerivedIsoCertificate {
    /// A map `P_X -> Y` whose cone is acyclic.
    Isomorphic { map: ChainMap, attempts: usize },
    /// Homology dimension vectors differ, so no isomorphism exists.
    NotIsomorphic { source: Vec<(i32, Vec<usize>)>, target: Vec<(i32, Vec<usize>)> },
    /// Homology agrees but no sampled map was invertible.
    Inconclusive { attempts: usize },
}

impl DerivedIsoCertificate {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, DerivedIsoCertificate::Isomorphic { .. })
    }
}

/// Samples random degree-0 classes of `Hom(P_X, Y)` and tests each for
/// being a quasi-isomorphism.
pub fn derived_iso_certificate(x: &Complex, y: &Complex, attempts: usize, seed: u64) -> Result<DerivedIsoCertificate> {
    let hx = x.homology_dim_vectors();
    let hy = y.homology_dim_vectors();
    if hx != hy {
        return Ok(DerivedIsoCertificate::NotIsomorphic { source: hx, target: hy });
    }
    let (px, _) = x.replacement()?;
    if hx.is_empty() {
        return Ok(DerivedIsoCertificate::Isomorphic { map: ChainMap::zero(&px, y), attempts: 0 });
    }
    let hom = HomComplex::new(&px, y)?;
    let dim = hom.cohomology_dim(0);
    if dim == 0 {
        return Ok(DerivedIsoCertificate::Inconclusive { attempts: 0 });
    }
    let p = x.prime();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 1..=attempts {
        let class: Vec<u64> = (0..dim).map(|_| rng.gen_range(0..p)).collect();
        let f = hom.map_of_class(&class);
        if f.is_quasi_isomorphism() {
            return Ok(DerivedIsoCertificate::Isomorphic { map: f, attempts: t });
        }
    }
    Ok(DerivedIsoCertificate::Inconclusive { attempts })
}
