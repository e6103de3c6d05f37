use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Adjunction, FunctorExpr, Kind, Prim, Recollement};
use crate::complex::{derived_iso_certificate, Complex, DerivedIsoCertificate};
use crate::derived::Morphism;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::reflect::NewAdjunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// One checked statement about one tuple of test objects.
#[derive(Clone, Debug, Serialize)]
pub struct Cell {
    pub axiom: String,
    pub diagram: String,
    pub objects: Vec<String>,
    /// Sparse `(degree, dim)` table of the side that should match.
    pub expected: Vec<(i32, usize)>,
    pub actual: Vec<(i32, usize)>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerificationReport {
    pub diagram: String,
    pub cells: Vec<Cell>,
    pub warnings: Vec<String>,
}

impl VerificationReport {
    pub fn count(&self, v: Verdict) -> usize {
        self.cells.iter().filter(|c| c.verdict == v).count()
    }

    pub fn all_pass(&self) -> bool {
        self.cells.iter().all(|c| c.verdict == Verdict::Pass)
    }

    /// Cells whose axiom id starts with `prefix`.
    pub fn cells_for<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Cell> + 'a {
        self.cells.iter().filter(move |c| c.axiom.starts_with(prefix))
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.cells.extend(other.cells);
        self.warnings.extend(other.warnings);
    }

    pub fn sort(&mut self) {
        self.cells.sort_by(|a, b| (&a.axiom, &a.diagram, &a.objects).cmp(&(&b.axiom, &b.diagram, &b.objects)));
    }
}

/// The six slots of a recollement diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Position {
    /// `i^*`
    ILeft,
    /// `i_*`
    IMiddle,
    /// `i^!`
    IRight,
    /// `j_!`
    JLeft,
    /// `j^*`
    JMiddle,
    /// `j_*`
    JRight,
}

impl Position {
    fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Position::ILeft => "i^*",
            Position::IMiddle => "i_*",
            Position::IRight => "i^!",
            Position::JLeft => "j_!",
            Position::JMiddle => "j^*",
            Position::JRight => "j_*",
        }
    }
}

/// How the adjunction isomorphism of one pair is produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdjunctionProvider {
    Primitive(Adjunction),
    Composite(NewAdjunction),
}

// the four pairs (left, right) of a diagram
const PAIRS: [(Position, Position); 4] = [
    (Position::ILeft, Position::IMiddle),
    (Position::IMiddle, Position::IRight),
    (Position::JLeft, Position::JMiddle),
    (Position::JMiddle, Position::JRight),
];

/// Six pipelines in recollement position plus the available adjunction
/// isomorphisms.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub name: String,
    /// Category embedded by `i_*`.
    pub sub: Kind,
    /// Category embedded by `j_!` and `j_*`.
    pub quotient: Kind,
    functors: [FunctorExpr; 6],
    providers: [Option<AdjunctionProvider>; 4],
}

impl Diagram {
    pub fn new(
        name: &str,
        sub: Kind,
        quotient: Kind,
        functors: [FunctorExpr; 6],
        providers: [Option<AdjunctionProvider>; 4],
    ) -> Result<Self> {
        let expect = [
            (Kind::Ambient, sub),
            (sub, Kind::Ambient),
            (Kind::Ambient, sub),
            (quotient, Kind::Ambient),
            (Kind::Ambient, quotient),
            (quotient, Kind::Ambient),
        ];
        for (f, (s, t)) in functors.iter().zip(expect) {
            if f.source() != s || f.target() != t {
                return Err(Error::TagMismatch(format!("{f} does not go from {s} to {t}")));
            }
        }
        Ok(Diagram { name: name.to_string(), sub, quotient, functors, providers })
    }

    /// The standard recollement with its primitive adjunctions.
    pub fn original() -> Self {
        let f = FunctorExpr::single;
        Diagram {
            name: "original".into(),
            sub: Kind::Quotient,
            quotient: Kind::Corner,
            functors: [
                f(Prim::Extend),
                f(Prim::Restrict),
                f(Prim::Coextend),
                f(Prim::Induce),
                f(Prim::Truncate),
                f(Prim::Coinduce),
            ],
            providers: [
                Some(AdjunctionProvider::Primitive(Adjunction::ExtendRestrict)),
                Some(AdjunctionProvider::Primitive(Adjunction::RestrictCoextend)),
                Some(AdjunctionProvider::Primitive(Adjunction::InduceTruncate)),
                Some(AdjunctionProvider::Primitive(Adjunction::TruncateCoinduce)),
            ],
        }
    }

    pub fn functor(&self, pos: Position) -> &FunctorExpr {
        &self.functors[pos.index()]
    }

    /// Replaces one slot. Adjunction isomorphisms touching the slot are
    /// dropped, so only dimension-level checks remain for those pairs.
    pub fn with_functor(mut self, pos: Position, expr: FunctorExpr, name: &str) -> Self {
        self.functors[pos.index()] = expr;
        for (k, (l, r)) in PAIRS.iter().enumerate() {
            if *l == pos || *r == pos {
                self.providers[k] = None;
            }
        }
        self.name = name.to_string();
        self
    }

    /// Exchanges two slots with the same source and target.
    pub fn swapped(self, a: Position, b: Position, name: &str) -> Self {
        let fa = self.functor(a).clone();
        let fb = self.functor(b).clone();
        self.with_functor(a, fb, name).with_functor(b, fa, name)
    }

    fn pair_label(k: usize) -> String {
        format!("({}, {})", PAIRS[k].0.name(), PAIRS[k].1.name())
    }
}

fn sparse(dims: &[usize], lo: i32) -> Vec<(i32, usize)> {
    dims.iter().enumerate().filter(|(_, &d)| d > 0).map(|(i, &d)| (lo + i as i32, d)).collect()
}

fn cert_note(c: &DerivedIsoCertificate) -> (Verdict, Option<String>) {
    match c {
        DerivedIsoCertificate::Isomorphic { attempts, .. } => {
            (Verdict::Pass, Some(format!("quasi-isomorphism found after {attempts} samples")))
        }
        DerivedIsoCertificate::NotIsomorphic { .. } => {
            (Verdict::Fail, Some("homology dimension vectors differ".into()))
        }
        DerivedIsoCertificate::Inconclusive { attempts } => {
            (Verdict::Inconclusive, Some(format!("no quasi-isomorphism among {attempts} samples")))
        }
    }
}

pub type Menu = Vec<(String, Complex)>;

impl Recollement {
    /// The adjunction isomorphism `Hom(Fx, y) -> Hom(x, Gy)` of a provider.
    pub fn provider_iso(&self, p: AdjunctionProvider, x: &Complex, y: &Complex) -> Result<Matrix> {
        match p {
            AdjunctionProvider::Primitive(a) => self.adjunction_iso(a, x, y),
            AdjunctionProvider::Composite(n) => self.composite_adjunction_iso(n, x, y),
        }
    }

    /// Counit `F G y -> y` from an adjunction isomorphism.
    pub fn counit_via(&self, p: AdjunctionProvider, f: &FunctorExpr, g: &FunctorExpr, y: &Complex) -> Result<Morphism> {
        let gy = self.apply(g, y)?;
        let fgy = self.apply(f, &gy)?;
        let phi = self.provider_iso(p, &gy, y)?;
        let inv = phi.inverse().ok_or_else(|| Error::SingularPairing("adjunction matrix".into()))?;
        let id = self.identity_class(&gy)?;
        Ok(self.hom(&fgy, y)?.morphism(&inv.apply(&id)))
    }

    /// Unit `x -> G F x` from an adjunction isomorphism.
    pub fn unit_via(&self, p: AdjunctionProvider, f: &FunctorExpr, g: &FunctorExpr, x: &Complex) -> Result<Morphism> {
        let fx = self.apply(f, x)?;
        let gfx = self.apply(g, &fx)?;
        let phi = self.provider_iso(p, x, &fx)?;
        let id = self.identity_class(&fx)?;
        Ok(self.hom(x, &gfx)?.morphism(&phi.apply(&id)))
    }

    /// Default menus for the three categories.
    pub fn default_menus(&self) -> Result<BTreeMap<Kind, Menu>> {
        let mut m = BTreeMap::new();
        for k in [Kind::Ambient, Kind::Quotient, Kind::Corner] {
            m.insert(k, self.menu(k)?);
        }
        Ok(m)
    }

    /// Checks every item of the recollement definition on finite menus.
    pub fn verify_axioms(&self, d: &Diagram, menus: &BTreeMap<Kind, Menu>) -> Result<VerificationReport> {
        let mut rep = VerificationReport { diagram: d.name.clone(), ..Default::default() };
        let empty = Vec::new();
        let menu = |k: Kind| menus.get(&k).unwrap_or(&empty);
        if menus.values().all(|m| m.is_empty()) {
            rep.warnings.push(format!("{}: empty test menu, all checks vacuous", d.name));
            return Ok(rep);
        }
        let span = menus.values().flatten().map(|(_, c)| c.span()).max().unwrap_or(0);
        let w = (span + self.caps.gldim) as i32;
        let tag = |k: Kind, n: &str| format!("{k}:{n}");
        let push = |rep: &mut VerificationReport, axiom: &str, objects: Vec<String>, e, a, v, cert| {
            rep.cells.push(Cell {
                axiom: axiom.to_string(),
                diagram: d.name.clone(),
                objects,
                expected: e,
                actual: a,
                verdict: v,
                certificate: cert,
            })
        };

        // adjunctions: Hom(Fx, y[n]) = Hom(x, Gy[n]) plus invertible matrices
        for (k, (lp, rp)) in PAIRS.iter().enumerate() {
            let (f, g) = (d.functor(*lp), d.functor(*rp));
            let label = Diagram::pair_label(k);
            for (xn, x) in menu(f.source()) {
                let fx = self.apply(f, x)?;
                for (yn, y) in menu(g.source()) {
                    let gy = self.apply(g, y)?;
                    let left = self.hom(&fx, y)?.dims_in(-w, w);
                    let right = self.hom(x, &gy)?.dims_in(-w, w);
                    let mut verdict = if left == right { Verdict::Pass } else { Verdict::Fail };
                    let mut cert = None;
                    if verdict == Verdict::Pass {
                        if let Some(p) = d.providers[k] {
                            match self.provider_iso(p, x, y) {
                                Ok(m) if m.is_invertible() => {
                                    cert = Some(format!("invertible {}x{} adjunction matrix", m.rows(), m.cols()));
                                }
                                Ok(_) | Err(Error::SingularPairing(_)) => {
                                    verdict = Verdict::Fail;
                                    cert = Some("adjunction matrix is singular".into());
                                }
                                Err(e) => return Err(e),
                            }
                        }
                    }
                    push(
                        &mut rep,
                        &format!("adjunction {label}"),
                        vec![tag(f.source(), xn), tag(g.source(), yn)],
                        sparse(&right, -w),
                        sparse(&left, -w),
                        verdict,
                        cert,
                    );
                }
            }
            if let Some(p) = d.providers[k] {
                self.naturality_cells(d, k, p, menu(f.source()), menu(g.source()), &mut rep)?;
            }
        }

        // j^* i_* = 0
        let (il, jm) = (d.functor(Position::IMiddle), d.functor(Position::JMiddle));
        for (yn, y) in menu(d.sub) {
            let z = self.apply(jm, &self.apply(il, y)?)?;
            let v = if z.is_acyclic() { Verdict::Pass } else { Verdict::Fail };
            push(&mut rep, "vanishing j^*i_*", vec![tag(d.sub, yn)], vec![], z.homology_vector(), v, None);
        }

        // fully faithful embeddings through units and counits
        let checks: [(usize, bool, Kind, &str); 4] = [
            (0, false, d.sub, "embedding counit i^*i_* -> id"),
            (1, true, d.sub, "embedding unit id -> i^!i_*"),
            (2, true, d.quotient, "embedding unit id -> j^*j_!"),
            (3, false, d.quotient, "embedding counit j^*j_* -> id"),
        ];
        for (k, is_unit, kind, axiom) in checks {
            let (f, g) = (d.functor(PAIRS[k].0), d.functor(PAIRS[k].1));
            for (n, y) in menu(kind) {
                let (v, cert, actual) = match d.providers[k] {
                    Some(p) => {
                        let m = if is_unit { self.unit_via(p, f, g, y)? } else { self.counit_via(p, f, g, y)? };
                        let c = m.cone();
                        let v = if c.is_acyclic() { Verdict::Pass } else { Verdict::Fail };
                        (v, Some("cone of the canonical map is acyclic".to_string()), c.homology_vector())
                    }
                    None => {
                        let z = if is_unit { self.apply(g, &self.apply(f, y)?)? } else { self.apply(f, &self.apply(g, y)?)? };
                        let c = derived_iso_certificate(&z, y, self.caps.attempts, self.caps.seed)?;
                        let (v, note) = cert_note(&c);
                        (v, note, z.homology_vector())
                    }
                };
                push(&mut rep, axiom, vec![tag(kind, n)], y.homology_vector(), actual, v, cert);
            }
        }

        // triangles i_*i^!X -> X -> j_*j^*X and j_!j^*X -> X -> i_*i^*X
        let tri: [(usize, Position, Position, &str); 2] =
            [(1, Position::JMiddle, Position::JRight, "triangle i_*i^! -> id -> j_*j^*"), (2, Position::ILeft, Position::IMiddle, "triangle j_!j^* -> id -> i_*i^*")];
        for (k, p1, p2, axiom) in tri {
            let (f, g) = (d.functor(PAIRS[k].0), d.functor(PAIRS[k].1));
            for (n, x) in menu(Kind::Ambient) {
                let third = self.apply(d.functor(p2), &self.apply(d.functor(p1), x)?)?;
                let Some(p) = d.providers[k] else {
                    rep.warnings.push(format!("{}: {axiom} skipped, no adjunction matrix for {}", d.name, Diagram::pair_label(k)));
                    break;
                };
                let e = self.counit_via(p, f, g, x)?;
                let c = e.cone();
                let cert = derived_iso_certificate(&c, &third, self.caps.attempts, self.caps.seed)?;
                let (v, note) = cert_note(&cert);
                push(&mut rep, axiom, vec![tag(Kind::Ambient, n)], third.homology_vector(), c.homology_vector(), v, note);
            }
        }

        // i^* j_! = 0 and i^! j_* = 0
        for (a, b, axiom) in [
            (Position::JLeft, Position::ILeft, "vanishing i^*j_!"),
            (Position::JRight, Position::IRight, "vanishing i^!j_*"),
        ] {
            for (n, y) in menu(d.quotient) {
                let z = self.apply(d.functor(b), &self.apply(d.functor(a), y)?)?;
                let v = if z.is_acyclic() { Verdict::Pass } else { Verdict::Fail };
                push(&mut rep, axiom, vec![tag(d.quotient, n)], vec![], z.homology_vector(), v, None);
            }
        }

        // objects killed by i^* lie in the image of j_!; the images j_!n are
        // added so the check never runs empty
        if let Some(p) = d.providers[2] {
            let (f, g) = (d.functor(Position::JLeft), d.functor(Position::JMiddle));
            let mut candidates: Vec<(String, Complex)> =
                menu(Kind::Ambient).iter().map(|(n, x)| (tag(Kind::Ambient, n), x.clone())).collect();
            for (n, y) in menu(d.quotient) {
                candidates.push((format!("T:j_!({})", tag(d.quotient, n)), self.apply(f, y)?));
            }
            for (n, x) in &candidates {
                if !self.apply(d.functor(Position::ILeft), x)?.is_acyclic() {
                    continue;
                }
                let e = self.counit_via(p, f, g, x)?;
                let c = e.cone();
                let v = if c.is_acyclic() { Verdict::Pass } else { Verdict::Fail };
                push(
                    &mut rep,
                    "image ker i^* = im j_!",
                    vec![n.clone()],
                    x.homology_vector(),
                    e.source.homology_vector(),
                    v,
                    Some("counit j_!j^*X -> X is a quasi-isomorphism".into()),
                );
            }
        }
        rep.sort();
        Ok(rep)
    }

    // sampled naturality squares in both variables
    fn naturality_cells(
        &self,
        d: &Diagram,
        k: usize,
        p: AdjunctionProvider,
        xs: &Menu,
        ys: &Menu,
        rep: &mut VerificationReport,
    ) -> Result<()> {
        const SQUARES: usize = 2;
        const BUDGET: usize = 60;
        let (f, g) = (d.functor(PAIRS[k].0), d.functor(PAIRS[k].1));
        let prime = match xs.first() { Some((_, x)) => x.prime(), None => return Ok(()) };
        let mut rng = ChaCha8Rng::seed_from_u64(self.caps.seed ^ (k as u64 + 1) * 0x9e37_79b9);
        let label = Diagram::pair_label(k);
        let random_class = |rng: &mut ChaCha8Rng, dim: usize| -> Vec<u64> { (0..dim).map(|_| rng.gen_range(0..prime)).collect() };
        let mut triples: Vec<(usize, usize, usize)> = Vec::new();
        for a in 0..xs.len() {
            for b in 0..ys.len() {
                for c in 0..xs.len().max(ys.len()) {
                    triples.push((a, b, c));
                }
            }
        }
        triples.shuffle(&mut rng);
        let (mut in_x, mut in_y) = (0, 0);
        for &(a, b, c) in triples.iter().take(BUDGET) {
            if in_x >= SQUARES && in_y >= SQUARES {
                break;
            }
            let (xn, x) = &xs[a];
            let (yn, y) = &ys[b];
            let fx = self.apply(f, x)?;
            let gy = self.apply(g, y)?;
            let h = self.hom(&fx, y)?;
            if h.dim() == 0 {
                continue;
            }
            let phi = self.provider_iso(p, x, y)?;
            let hxg = self.hom(x, &gy)?;
            let u = h.morphism(&random_class(&mut rng, h.dim()));
            let phiu = hxg.morphism(&phi.apply(&h.class_of(&u)));
            if in_y < SQUARES && c < ys.len() {
                let (y2n, y2) = &ys[c];
                let hg = self.hom(y, y2)?;
                if hg.dim() > 0 {
                    let gm = hg.morphism(&random_class(&mut rng, hg.dim()));
                    let phi2 = self.provider_iso(p, x, y2)?;
                    let lhs = phi2.apply(&self.hom(&fx, y2)?.class_of(&u.then(&gm)?));
                    let gy2 = self.apply(g, y2)?;
                    let rhs = self.hom(x, &gy2)?.class_of(&phiu.then(&self.map(g, &gm)?)?);
                    let v = if lhs == rhs { Verdict::Pass } else { Verdict::Fail };
                    rep.cells.push(Cell {
                        axiom: format!("naturality {label}"),
                        diagram: d.name.clone(),
                        objects: vec![xn.clone(), yn.clone(), y2n.clone()],
                        expected: vec![],
                        actual: vec![],
                        verdict: v,
                        certificate: Some("square in the second variable".into()),
                    });
                    in_y += 1;
                }
            }
            if in_x < SQUARES && c < xs.len() {
                let (x0n, x0) = &xs[c];
                let hf = self.hom(x0, x)?;
                if hf.dim() > 0 {
                    let fm = hf.morphism(&random_class(&mut rng, hf.dim()));
                    let fx0 = self.apply(f, x0)?;
                    let phi0 = self.provider_iso(p, x0, y)?;
                    let lhs = phi0.apply(&self.hom(&fx0, y)?.class_of(&self.map(f, &fm)?.then(&u)?));
                    let rhs = self.hom(x0, &gy)?.class_of(&fm.then(&phiu)?);
                    let v = if lhs == rhs { Verdict::Pass } else { Verdict::Fail };
                    rep.cells.push(Cell {
                        axiom: format!("naturality {label}"),
                        diagram: d.name.clone(),
                        objects: vec![x0n.clone(), xn.clone(), yn.clone()],
                        expected: vec![],
                        actual: vec![],
                        verdict: v,
                        certificate: Some("square in the first variable".into()),
                    });
                    in_x += 1;
                }
            }
        }
        if in_x + in_y == 0 {
            rep.warnings.push(format!("{}: no nonzero naturality square found for {label}", d.name));
        }
        Ok(())
    }
}
