//! The Serre functor `T = - (x)^L DA` of `D^b(mod A)`, its quasi-inverse
//! `T~`, the trace pairing that witnesses `Hom(X, Y) = Hom(Y, TX)^*`, and the
//! induced Serre functors of the two outer categories:
//!
//! ```text
//! S = i^! T i_*     S~ = i^* T~ i_*     on D^b(B)
//! U = j^* T j_!     U~ = j^* T~ j_*     on D^b(eAe)
//! ```
//!
//! Pairings are returned as Gram matrices in the class coordinates of
//! [`DerivedHom`].

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complex::{derived_iso_certificate, derived_tensor, Complex, DerivedIsoCertificate};
use crate::derived::DerivedHom;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::{summand_offsets, Bimodule};
use crate::recollement::{Adjunction, Cell, FunctorExpr, Kind, Menu, Prim, Recollement, Side, Verdict, VerificationReport};

/// Right Serre functor of a category of the diagram.
pub fn serre_functor(kind: Kind) -> FunctorExpr {
    let steps = match kind {
        Kind::Ambient => vec![Prim::Nakayama],
        Kind::Quotient => vec![Prim::Restrict, Prim::Nakayama, Prim::Coextend],
        Kind::Corner => vec![Prim::Induce, Prim::Nakayama, Prim::Truncate],
    };
    FunctorExpr::new(steps).expect("serre pipelines compose")
}

/// Left Serre functor (quasi-inverse of [`serre_functor`]).
pub fn inverse_serre_functor(kind: Kind) -> FunctorExpr {
    let steps = match kind {
        Kind::Ambient => vec![Prim::InverseNakayama],
        Kind::Quotient => vec![Prim::Restrict, Prim::InverseNakayama, Prim::Extend],
        Kind::Corner => vec![Prim::Coinduce, Prim::InverseNakayama, Prim::Truncate],
    };
    FunctorExpr::new(steps).expect("serre pipelines compose")
}

/// Bases of `Hom(X, Y)` and of the dual side together with the Gram matrix.
#[derive(Clone, Debug)]
pub struct PairingWitness {
    pub hom: Arc<DerivedHom>,
    pub dual: Arc<DerivedHom>,
    /// `hom.dim() x dual.dim()`.
    pub gram: Matrix,
}

impl PairingWitness {
    pub fn is_nondegenerate(&self) -> bool {
        self.gram.is_invertible()
    }
}

// the embedding and its adjunction used to transport pairings
fn embedding(kind: Kind, left: bool) -> (Prim, Adjunction) {
    match (kind, left) {
        (Kind::Quotient, false) => (Prim::Restrict, Adjunction::RestrictCoextend),
        (Kind::Quotient, true) => (Prim::Restrict, Adjunction::ExtendRestrict),
        (Kind::Corner, false) => (Prim::Induce, Adjunction::InduceTruncate),
        (Kind::Corner, true) => (Prim::Coinduce, Adjunction::TruncateCoinduce),
        (Kind::Ambient, _) => unreachable!("ambient pairings are intrinsic"),
    }
}

impl Recollement {
    pub fn serre_apply(&self, kind: Kind, inverse: bool, x: &Complex) -> Result<Complex> {
        let f = if inverse { inverse_serre_functor(kind) } else { serre_functor(kind) };
        self.apply(&f, x)
    }

    // Sum over degrees of (-1)^k tr(h_k) for h: P_X -> P_X (x) DA, where tr
    // evaluates the diagonal block of each summand e_x A at e_x.
    fn trace_gram(&self, side: Side, x: &Complex, y: &Complex) -> Result<Matrix> {
        let p = x.prime();
        let applied = self.apply_prim(Prim::Nakayama, side, x)?;
        let tx = applied.complex.clone();
        let hxy = self.hom(x, y)?;
        let hyt = self.hom(y, &tx)?;
        let mut gram = Matrix::zeros(p, hxy.dim(), hyt.dim());
        if hxy.dim() == 0 || hyt.dim() == 0 {
            return Ok(gram);
        }
        let tc = applied.tensor.clone().expect("Nakayama is a tensor functor");
        let pc = &tc.resolution;
        let alg = self.side(side).algebra(Kind::Ambient);
        // per degree: (row of each generator, functional on the tensor term)
        let mut functionals: BTreeMap<i32, Vec<(usize, Vec<u64>)>> = BTreeMap::new();
        for k in pc.degrees() {
            let (Some(part), Some(term)) = (tc.part(k), pc.term_ref(k)) else { continue };
            let vertices = term.summands().expect("replacement is standard projective");
            let offs = summand_offsets(alg, vertices);
            let mut gens = Vec::new();
            for (b, &v) in vertices.iter().enumerate() {
                let basis = alg.projective_basis(v);
                let gen = offs[b] + basis.iter().position(|&q| q == alg.vertex(v)).expect("idempotent in e_x A");
                let func = part
                    .lift
                    .iter()
                    .map(|&(i, j)| {
                        let inside = i >= offs[b] && i < offs[b] + basis.len();
                        u64::from(inside && basis[i - offs[b]] == j)
                    })
                    .collect();
                gens.push((gen, func));
            }
            functionals.insert(k, gens);
        }
        let lifts = hxy.basis().iter().map(|f| f.lift()).collect::<Result<Vec<_>>>()?;
        let duals = hyt.basis();
        for (r, lf) in lifts.iter().enumerate() {
            for (c, g) in duals.iter().enumerate() {
                let h = lf.then(&g.map);
                let mut acc = 0u64;
                for (&k, gens) in &functionals {
                    let hk = h.component(k);
                    let mut t = 0u64;
                    for (gen, func) in gens {
                        for (a, b) in hk.row(*gen).iter().zip(func) {
                            t = (t + a * b) % p;
                        }
                    }
                    acc = if k % 2 == 0 { (acc + t) % p } else { (acc + p - t) % p };
                }
                gram.set(r, c, acc);
            }
        }
        Ok(gram)
    }

    /// Gram matrix of `Hom(X, Y) x Hom(Y, FX) -> k` for the right Serre
    /// functor `F` of the category of `X`.
    pub fn serre_gram(&self, kind: Kind, x: &Complex, y: &Complex) -> Result<Matrix> {
        if kind == Kind::Ambient {
            return self.trace_gram(Side::Original, x, y);
        }
        // Hom(y, G T E x) = Hom(E y, T E x) = Hom(E x, E y)^* = Hom(x, y)^*
        let (emb, adj) = embedding(kind, false);
        let e = FunctorExpr::single(emb);
        let (ex, ey) = (self.apply(&e, x)?, self.apply(&e, y)?);
        let tex = self.apply_on(Prim::Nakayama, Side::Original, &ex)?;
        let i = self.functor_matrix(emb, Side::Original, x, y)?;
        let g = self.trace_gram(Side::Original, &ex, &ey)?;
        let phi = self.adjunction_iso(adj, y, &tex)?;
        let inv = phi.inverse().ok_or_else(|| Error::SingularPairing(format!("{adj} in the {kind} pairing")))?;
        Ok(i.mul(&g).mul(&inv.transpose()))
    }

    /// Gram matrix of `Hom(X, Y) x Hom(F~Y, X) -> k` for the left Serre
    /// functor `F~` of the category of `X`.
    pub fn left_serre_gram(&self, kind: Kind, x: &Complex, y: &Complex) -> Result<Matrix> {
        if kind == Kind::Ambient {
            // Hom(T~y, x) = Hom(Dx, T'Dy) through duality
            let (dx, dy) = (self.dual(x)?, self.dual(y)?);
            let ty = self.apply_on(Prim::InverseNakayama, Side::Original, y)?;
            let g = self.trace_gram(Side::Opposite, &dy, &dx)?;
            let d1 = self.dual_matrix(x, y)?;
            let d2 = self.dual_matrix(&ty, x)?;
            return Ok(d1.mul(&g).mul(&d2.transpose()));
        }
        // Hom(G T~ E y, x) = Hom(T~ E y, E x) = Hom(E x, E y)^*
        let (emb, adj) = embedding(kind, true);
        let e = FunctorExpr::single(emb);
        let (ex, ey) = (self.apply(&e, x)?, self.apply(&e, y)?);
        let tey = self.apply_on(Prim::InverseNakayama, Side::Original, &ey)?;
        let i = self.functor_matrix(emb, Side::Original, x, y)?;
        let l = self.left_serre_gram(Kind::Ambient, &ex, &ey)?;
        let phi = self.adjunction_iso(adj, &tey, x)?;
        Ok(i.mul(&l).mul(&phi.transpose()))
    }

    /// The right Serre pairing with a nondegeneracy check.
    pub fn serre_pairing(&self, kind: Kind, x: &Complex, y: &Complex) -> Result<PairingWitness> {
        let fx = self.serre_apply(kind, false, x)?;
        let gram = self.serre_gram(kind, x, y)?;
        let w = PairingWitness { hom: self.hom(x, y)?, dual: self.hom(y, &fx)?, gram };
        if !w.is_nondegenerate() {
            return Err(Error::SingularPairing(format!("{kind}: {}x{}", w.gram.rows(), w.gram.cols())));
        }
        Ok(w)
    }

    /// Checks that `f` is a Serre functor with quasi-inverse `f_inv` on a
    /// finite menu. Pairings are only available for the canonical pipelines;
    /// other candidates get dimension checks.
    pub fn serre_axiom_check(&self, kind: Kind, f: &FunctorExpr, f_inv: &FunctorExpr, menu: &Menu) -> Result<VerificationReport> {
        let name = format!("serre {kind}");
        let mut rep = VerificationReport { diagram: name.clone(), ..Default::default() };
        if menu.is_empty() {
            rep.warnings.push(format!("{name}: empty test menu, all checks vacuous"));
            return Ok(rep);
        }
        for e in [f, f_inv] {
            if e.source() != kind || e.target() != kind {
                return Err(Error::TagMismatch(format!("{e} is not an endofunctor of {kind}")));
            }
        }
        let canonical = *f == serre_functor(kind) && *f_inv == inverse_serre_functor(kind);
        let span = menu.iter().map(|(_, c)| c.span()).max().unwrap_or(0);
        let w = (span + self.caps.gldim) as i32;
        let sparse = |v: Vec<usize>, flip: bool| -> Vec<(i32, usize)> {
            let mut out: Vec<(i32, usize)> = v
                .iter()
                .enumerate()
                .filter(|(_, &d)| d > 0)
                .map(|(i, &d)| {
                    let n = i as i32 - w;
                    (if flip { -n } else { n }, d)
                })
                .collect();
            out.sort();
            out
        };
        let tag = |n: &str| format!("{kind}:{n}");
        let mut cell = |axiom: &str, objects: Vec<String>, expected, actual, verdict, certificate| {
            rep.cells.push(Cell { axiom: axiom.into(), diagram: name.clone(), objects, expected, actual, verdict, certificate })
        };
        let applied: Vec<(Complex, Complex)> = menu
            .iter()
            .map(|(_, x)| Ok((self.apply(f, x)?, self.apply(f_inv, x)?)))
            .collect::<Result<_>>()?;
        for (a, (xn, x)) in menu.iter().enumerate() {
            for (b, (yn, y)) in menu.iter().enumerate() {
                let objects = vec![tag(xn), tag(yn)];
                let base = self.hom(x, y)?.dims_in(-w, w);
                let expected = sparse(base.clone(), false);

                let right = self.hom(y, &applied[a].0)?.dims_in(-w, w);
                let mut v = if sparse(right.clone(), true) == expected { Verdict::Pass } else { Verdict::Fail };
                let mut cert = None;
                if v == Verdict::Pass && canonical {
                    let g = self.serre_gram(kind, x, y)?;
                    v = if g.is_invertible() { Verdict::Pass } else { Verdict::Fail };
                    cert = Some(format!("{}x{} trace pairing, {}", g.rows(), g.cols(), if v == Verdict::Pass { "invertible" } else { "singular" }));
                }
                cell("serre right pairing", objects.clone(), expected.clone(), sparse(right, true), v, cert);

                let left = self.hom(&applied[b].1, x)?.dims_in(-w, w);
                let mut v = if sparse(left.clone(), true) == expected { Verdict::Pass } else { Verdict::Fail };
                let mut cert = None;
                if v == Verdict::Pass && canonical {
                    let g = self.left_serre_gram(kind, x, y)?;
                    v = if g.is_invertible() { Verdict::Pass } else { Verdict::Fail };
                    cert = Some(format!("{}x{} trace pairing, {}", g.rows(), g.cols(), if v == Verdict::Pass { "invertible" } else { "singular" }));
                }
                cell("serre left pairing", objects.clone(), expected.clone(), sparse(left, true), v, cert);

                let ff = self.hom(&applied[a].0, &applied[b].0)?.dims_in(-w, w);
                let v = if ff == base { Verdict::Pass } else { Verdict::Fail };
                cell("serre fully faithful", objects, expected, sparse(ff, false), v, None);
            }
        }
        for (a, (xn, x)) in menu.iter().enumerate() {
            for (label, z) in [
                ("serre quasi-inverse F F~ = id", self.apply(f, &applied[a].1)?),
                ("serre quasi-inverse F~ F = id", self.apply(f_inv, &applied[a].0)?),
            ] {
                let c = derived_iso_certificate(&z, x, self.caps.attempts, self.caps.seed)?;
                let (v, note) = certificate_verdict(&c);
                cell(label, vec![tag(xn)], x.homology_vector(), z.homology_vector(), v, Some(note));
            }
        }
        rep.sort();
        Ok(rep)
    }

    /// Compares the induced Serre functor of `B` or `eAe` with the
    /// Nakayama functor of that algebra computed from its own dual, on every
    /// indecomposable projective.
    pub fn intrinsic_nakayama_check(&self, kind: Kind) -> Result<VerificationReport> {
        let name = format!("serre {kind}");
        let mut rep = VerificationReport { diagram: name.clone(), ..Default::default() };
        let alg = self.algebra(kind);
        let da = Bimodule::regular(alg).k_dual();
        for v in 0..alg.vertex_count() {
            let px = Complex::stalk(&crate::module::projective(alg, v), 0);
            let induced = self.serre_apply(kind, false, &px)?;
            let intrinsic = derived_tensor(&px, &da)?.complex;
            let c = derived_iso_certificate(&induced, &intrinsic, self.caps.attempts, self.caps.seed)?;
            let (verdict, note) = certificate_verdict(&c);
            rep.cells.push(Cell {
                axiom: "serre intrinsic nakayama".into(),
                diagram: name.clone(),
                objects: vec![format!("{kind}:P{}", alg.vertex_labels()[v])],
                expected: intrinsic.homology_vector(),
                actual: induced.homology_vector(),
                verdict,
                certificate: Some(note),
            });
        }
        Ok(rep)
    }
}

pub(crate) fn certificate_verdict(c: &DerivedIsoCertificate) -> (Verdict, String) {
    match c {
        DerivedIsoCertificate::Isomorphic { attempts, .. } => {
            (Verdict::Pass, format!("quasi-isomorphism found after {attempts} samples"))
        }
        DerivedIsoCertificate::NotIsomorphic { .. } => (Verdict::Fail, "homology dimension vectors differ".into()),
        DerivedIsoCertificate::Inconclusive { attempts } => {
            (Verdict::Inconclusive, format!("no quasi-isomorphism among {attempts} samples"))
        }
    }
}
