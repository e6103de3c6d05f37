use std::fmt::Write;

use recoll_core::recollement::{Cell, Diagram, Kind, Menu, Recollement, Verdict, VerificationReport};
use recoll_core::reflect::Variant;
use recoll_core::serre::{inverse_serre_functor, serre_functor};
use recoll_core::Error;
use serde::Serialize;

use crate::scenario::{Scenario, VariantName};

#[derive(Debug, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub scenario: Scenario,
    pub coverage: String,
    pub warnings: Vec<String>,
    pub cells: Vec<Cell>,
    pub summary: Summary,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            1
        } else if self.summary.inconclusive > 0 {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Per-diagram counts followed by every cell that did not pass.
    pub fn text(&self) -> String {
        let mut diagrams: Vec<&str> = self.cells.iter().map(|c| c.diagram.as_str()).collect();
        diagrams.sort();
        diagrams.dedup();
        let mut out = String::new();
        for d in diagrams {
            let count = |v| self.cells.iter().filter(|c| c.diagram == d && c.verdict == v).count();
            let _ = writeln!(
                out,
                "{d}: {} pass, {} fail, {} inconclusive",
                count(Verdict::Pass),
                count(Verdict::Fail),
                count(Verdict::Inconclusive)
            );
        }
        for c in self.cells.iter().filter(|c| c.verdict != Verdict::Pass) {
            let _ = writeln!(out, "  {} [{}] {} ({})", c.verdict, c.diagram, c.axiom, c.objects.join(", "));
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        let overall = match self.exit_code() {
            0 => "PASS",
            1 => "FAIL",
            _ => "INCONCLUSIVE",
        };
        let _ = writeln!(out, "{overall}: {} cells, {}", self.cells.len(), self.coverage);
        out
    }
}

fn coverage(r: &Recollement, menus: &std::collections::BTreeMap<Kind, Menu>) -> String {
    let sizes: Vec<String> = menus.iter().map(|(k, m)| format!("{k} {}", m.len())).collect();
    let span = menus.values().flatten().map(|(_, c)| c.span()).max().unwrap_or(0);
    format!(
        "finite test menus ({}), degree window +-{}, sampled naturality squares",
        sizes.join(", "),
        span + r.caps.gldim
    )
}

pub fn verify(s: &Scenario) -> Result<Report, Error> {
    let r = s.build()?;
    let menus = s.menus(&r)?;
    let mut all = VerificationReport::default();
    for kind in [Kind::Ambient, Kind::Quotient, Kind::Corner] {
        all.merge(r.serre_axiom_check(kind, &serre_functor(kind), &inverse_serre_functor(kind), &menus[&kind])?);
    }
    for kind in [Kind::Quotient, Kind::Corner] {
        all.merge(r.intrinsic_nakayama_check(kind)?);
    }
    let mut variants = s.variants.clone();
    variants.sort();
    variants.dedup();
    for v in variants {
        match v {
            VariantName::Original => all.merge(r.verify_axioms(&Diagram::original(), &menus)?),
            VariantName::Upper => {
                all.merge(r.verify_reflected(&r.reflected(Variant::Upper), &menus)?);
                all.merge(r.sub_left_consistency(&menus[&Kind::Quotient])?);
                all.merge(r.involution_check(&menus[&Kind::Ambient], &menus[&Kind::Corner])?);
            }
            VariantName::Lower => all.merge(r.verify_reflected(&r.reflected(Variant::Lower), &menus)?),
        }
    }
    all.sort();
    let summary = Summary {
        pass: all.count(Verdict::Pass),
        fail: all.count(Verdict::Fail),
        inconclusive: all.count(Verdict::Inconclusive),
    };
    Ok(Report { scenario: s.clone(), coverage: coverage(&r, &menus), warnings: all.warnings, cells: all.cells, summary })
}

/// Homology dimensions of a named functor applied to a named menu object,
/// formatted as `{degree: dim, ...}`.
pub fn apply(s: &Scenario, functor: &str, object: &str) -> Result<String, Error> {
    let r = s.build()?;
    let f = recoll_core::reflect::named_functor(functor).ok_or_else(|| Error::UnknownName(functor.to_string()))?;
    let name = match object.split_once(':') {
        Some((k, n)) if k == f.source().to_string() => n,
        Some(_) => return Err(Error::UnknownName(format!("{object} is not an object of {}", f.source()))),
        None => object,
    };
    let x = r.object(f.source(), name)?;
    let y = r.apply(&f, &x)?;
    let parts: Vec<String> = y.homology_vector().iter().map(|(n, d)| format!("{n}: {d}")).collect();
    Ok(format!("{{{}}}", parts.join(", ")))
}
