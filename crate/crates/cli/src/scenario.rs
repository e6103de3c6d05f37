use std::collections::BTreeMap;

use recoll_core::algebra::{path_algebra, IdempotentSet, Quiver};
use recoll_core::linalg::DEFAULT_PRIME;
use recoll_core::recollement::{Caps, Kind, Menu, Recollement};
use recoll_core::Error;
use serde::{Deserialize, Serialize};

/// A verification run: algebra, idempotent, budgets and what to check.
/// Vertices are numbered from 1.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default = "default_prime")]
    pub p: u64,
    pub quiver: QuiverInput,
    pub e_vertices: Vec<usize>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub caps: CapsInput,
    /// Restricts the default menus to these `K:name` entries.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub menu: Option<Vec<String>>,
    #[serde(default = "default_variants")]
    pub variants: Vec<VariantName>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverInput {
    pub vertices: usize,
    #[serde(default)]
    pub arrows: Vec<[usize; 2]>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapsInput {
    #[serde(default = "default_gldim")]
    pub gldim: usize,
    #[serde(default = "default_attempts")]
    pub attempts: usize,
}

impl Default for CapsInput {
    fn default() -> Self {
        CapsInput { gldim: default_gldim(), attempts: default_attempts() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantName {
    Original,
    Upper,
    Lower,
}

fn default_prime() -> u64 {
    DEFAULT_PRIME
}
fn default_gldim() -> usize {
    Caps::default().gldim
}
fn default_attempts() -> usize {
    Caps::default().attempts
}
fn default_variants() -> Vec<VariantName> {
    vec![VariantName::Original, VariantName::Upper, VariantName::Lower]
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("scenario does not parse: {e}"))
    }

    pub fn build(&self) -> Result<Recollement, Error> {
        let n = self.quiver.vertices;
        let zero_based = |v: usize, what: &str| {
            if v == 0 || v > n {
                Err(Error::InvalidQuiver(format!("{what} {v} is not in 1..={n}")))
            } else {
                Ok(v - 1)
            }
        };
        let arrows = self
            .quiver
            .arrows
            .iter()
            .map(|&[s, t]| Ok((zero_based(s, "arrow endpoint")?, zero_based(t, "arrow endpoint")?)))
            .collect::<Result<Vec<_>, Error>>()?;
        let e = self.e_vertices.iter().map(|&v| zero_based(v, "e-vertex")).collect::<Result<Vec<_>, _>>()?;
        let a = path_algebra("A", &Quiver::new(n, &arrows)?, self.p)?;
        let caps = Caps { gldim: self.caps.gldim, attempts: self.caps.attempts, seed: self.seed };
        Recollement::new(a, IdempotentSet::new(n, e)?, caps)
    }

    pub fn menus(&self, r: &Recollement) -> Result<BTreeMap<Kind, Menu>, Error> {
        let mut menus = r.default_menus()?;
        if let Some(keep) = &self.menu {
            for (kind, menu) in menus.iter_mut() {
                menu.retain(|(name, _)| keep.iter().any(|k| *k == format!("{kind}:{name}")));
            }
            let known: Vec<String> =
                menus.iter().flat_map(|(k, m)| m.iter().map(move |(n, _)| format!("{k}:{n}"))).collect();
            if let Some(bad) = keep.iter().find(|k| !known.contains(k)) {
                return Err(Error::UnknownName(bad.clone()));
            }
        }
        Ok(menus)
    }
}
