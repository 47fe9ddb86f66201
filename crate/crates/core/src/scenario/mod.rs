//! JSON scenarios: a quiver over a prime field, an optional corner, named
//! modules, complexes and torsion pairs, and an ordered list of commands.
//!
//! ```json
//! {
//!   "version": 1,
//!   "field": 2,
//!   "quiver": { "vertices": [1, 2], "arrows": [[1, 2]] },
//!   "corner": [2],
//!   "pairs": { "std": { "torsion": ["S1"], "free": ["S2", "P1"] } },
//!   "bounds": { "dim": 2, "depth": 3 },
//!   "commands": [{ "cmd": "validate-pair", "pair": "std" }]
//! }
//! ```
//!
//! Modules are either descriptors `{"dims": [..], "arrows": [..]}` or names.
//! A name is looked up in the scenario's `modules` map first; otherwise
//! `S<v>`, `P<v>` and `I<v>` are the simple, projective and injective at the
//! vertex labelled `v`, and `0` is the zero module.

mod run;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complexes::Complex;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::modcat::{Algebra, Module, ModuleDescriptor, ModuleMap};
use crate::torsion::TorsionPair;

pub use run::{run, CommandReport, Report, RunOptions, Verdict};

pub const SCHEMA_VERSION: u32 = 1;
/// Largest per-vertex dimension a scenario may enumerate.
pub const MAX_DIM: usize = 3;
/// Largest total dimension of enumerated heart objects.
pub const MAX_HEART: usize = 4;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub version: u32,
    pub field: u32,
    pub quiver: QuiverSpec,
    #[serde(default)]
    pub corner: Vec<Label>,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleDescriptor>,
    #[serde(default)]
    pub complexes: BTreeMap<String, ComplexSpec>,
    #[serde(default)]
    pub pairs: BTreeMap<String, PairSpec>,
    #[serde(default)]
    pub bounds: Bounds,
    #[serde(default)]
    pub commands: Vec<Command>,
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self> {
        let s: Scenario = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if s.version != SCHEMA_VERSION {
            return Err(Error::Scenario(format!("unsupported version {} (expected {SCHEMA_VERSION})", s.version)));
        }
        Ok(s)
    }
}

/// A vertex label, written as a JSON number or string.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Number(i64),
    Name(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Number(n) => write!(f, "{n}"),
            Label::Name(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    pub vertices: Vec<Label>,
    #[serde(default)]
    pub arrows: Vec<(Label, Label)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Bounds {
    /// per-vertex dimension cap of the module universes
    pub dim: usize,
    /// resolution depth; resolutions over path algebras stop after one step
    /// past the support, so this is checked against the library's cap
    pub depth: usize,
    /// total dimension cap of heart objects
    pub heart: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { dim: 2, depth: 3, heart: 2 }
    }
}

impl Bounds {
    pub fn check(&self) -> Result<()> {
        if self.dim > MAX_DIM {
            return Err(Error::BoundExceeded(format!("dim {} exceeds the limit {MAX_DIM}", self.dim)));
        }
        if self.heart > MAX_HEART {
            return Err(Error::BoundExceeded(format!("heart {} exceeds the limit {MAX_HEART}", self.heart)));
        }
        if !(1..=crate::complexes::DEFAULT_DEPTH).contains(&self.depth) {
            return Err(Error::BoundExceeded(format!(
                "depth {} is outside 1..={}",
                self.depth,
                crate::complexes::DEFAULT_DEPTH
            )));
        }
        Ok(())
    }
}

/// Which algebra a pair or enumeration lives on: the ambient algebra `D` or
/// the corner `C`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    #[default]
    D,
    C,
}

/// Which localization a transport command goes through.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Localization {
    #[default]
    Giraud,
    CoGiraud,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleRef {
    Named(String),
    Inline(ModuleDescriptor),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    #[serde(default)]
    pub on: Side,
    pub torsion: Vec<ModuleRef>,
    pub free: Vec<ModuleRef>,
}

/// A bounded complex: components from degree `lo` upwards and one matrix
/// per vertex for each differential. `{"stalk": M, "degree": n}` is `M`
/// placed in degree `n`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum ComplexSpec {
    Stalk {
        stalk: ModuleRef,
        #[serde(default)]
        degree: i32,
    },
    Full {
        lo: i32,
        components: Vec<ModuleRef>,
        #[serde(default)]
        differentials: Vec<Vec<Vec<Vec<i64>>>>,
    },
}

impl ComplexSpec {
    /// The descriptor of a complex, with modules written inline.
    pub fn describe(c: &Complex) -> Self {
        let components = c.degrees().map(|n| ModuleRef::Inline(ModuleDescriptor::from(c.component(n)))).collect();
        let differentials = c.degrees().take_while(|&n| n < c.hi()).map(|n| matrices(&c.diff(n))).collect();
        ComplexSpec::Full { lo: c.lo(), components, differentials }
    }
}

fn matrices(f: &ModuleMap) -> Vec<Vec<Vec<i64>>> {
    f.blocks()
        .iter()
        .map(|b| (0..b.rows()).map(|r| b.row(r).iter().map(|&x| i64::from(x)).collect()).collect())
        .collect()
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ComplexRef {
    Named(String),
    Inline(ComplexSpec),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "cmd", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Command {
    ValidatePair {
        pair: String,
    },
    TransportHat {
        pair: String,
        #[serde(default)]
        via: Localization,
    },
    TransportPush {
        pair: String,
        #[serde(default)]
        via: Localization,
    },
    VerifyTt11 {},
    VerifyCoTt11 {},
    Truncate {
        pair: String,
        complex: ComplexRef,
        #[serde(default)]
        degree: i32,
    },
    TCohomology {
        pair: String,
        complex: ComplexRef,
        #[serde(default)]
        degree: i32,
    },
    HeartHom {
        pair: String,
        source: ComplexRef,
        target: ComplexRef,
    },
    HeartKernel {
        pair: String,
        source: ComplexRef,
        target: ComplexRef,
    },
    TiltedPair {
        pair: String,
    },
    LesCheck {
        pair: String,
        #[serde(default)]
        module: Option<ModuleRef>,
    },
    KvRoundtrip {
        #[serde(default)]
        pair: Option<String>,
        #[serde(default)]
        on: Side,
    },
    VerifyAdjhearts {
        pair: String,
    },
    VerifyCadjhearts {
        pair: String,
    },
    Reconstruct {
        pair: String,
    },
    EnumerateModules {
        #[serde(default)]
        on: Side,
    },
    EnumeratePairs {
        #[serde(default)]
        on: Side,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::ValidatePair { .. } => "validate-pair",
            Command::TransportHat { .. } => "transport-hat",
            Command::TransportPush { .. } => "transport-push",
            Command::VerifyTt11 {} => "verify-tt11",
            Command::VerifyCoTt11 {} => "verify-co-tt11",
            Command::Truncate { .. } => "truncate",
            Command::TCohomology { .. } => "t-cohomology",
            Command::HeartHom { .. } => "heart-hom",
            Command::HeartKernel { .. } => "heart-kernel",
            Command::TiltedPair { .. } => "tilted-pair",
            Command::LesCheck { .. } => "les-check",
            Command::KvRoundtrip { .. } => "kv-roundtrip",
            Command::VerifyAdjhearts { .. } => "verify-adjhearts",
            Command::VerifyCadjhearts { .. } => "verify-cadjhearts",
            Command::Reconstruct { .. } => "reconstruct",
            Command::EnumerateModules { .. } => "enumerate-modules",
            Command::EnumeratePairs { .. } => "enumerate-pairs",
        }
    }
}

/// Resolves names of a scenario against one algebra.
pub(crate) struct Resolver<'a> {
    pub scenario: &'a Scenario,
}

impl Resolver<'_> {
    pub fn module(&self, alg: &Arc<Algebra>, r: &ModuleRef) -> Result<Module> {
        match r {
            ModuleRef::Inline(d) => d.build(alg),
            ModuleRef::Named(name) => {
                if let Some(d) = self.scenario.modules.get(name) {
                    return d.build(alg);
                }
                builtin(alg, name).ok_or_else(|| Error::Scenario(format!("unresolved module name '{name}'")))?
            }
        }
    }

    pub fn complex(&self, alg: &Arc<Algebra>, r: &ComplexRef) -> Result<Complex> {
        let spec = match r {
            ComplexRef::Inline(spec) => spec,
            ComplexRef::Named(name) => self
                .scenario
                .complexes
                .get(name)
                .ok_or_else(|| Error::Scenario(format!("unresolved complex name '{name}'")))?,
        };
        match spec {
            ComplexSpec::Stalk { stalk, degree } => Ok(Complex::stalk(&self.module(alg, stalk)?, *degree)),
            ComplexSpec::Full { lo, components, differentials } => {
                let comps = components.iter().map(|m| self.module(alg, m)).collect::<Result<Vec<_>>>()?;
                if differentials.len() + 1 != comps.len().max(1) {
                    return Err(Error::InvalidComplex(format!(
                        "{} components need {} differentials, got {}",
                        comps.len(),
                        comps.len().saturating_sub(1),
                        differentials.len()
                    )));
                }
                let diffs = comps
                    .windows(2)
                    .zip(differentials)
                    .map(|(w, blocks)| map_from_rows(&w[0], &w[1], blocks))
                    .collect::<Result<Vec<_>>>()?;
                Complex::new(alg, *lo, comps, diffs)
            }
        }
    }

    pub fn pair_spec(&self, name: &str) -> Result<&PairSpec> {
        self.scenario.pairs.get(name).ok_or_else(|| Error::Scenario(format!("unresolved pair name '{name}'")))
    }

    pub fn pair(&self, alg: &Arc<Algebra>, spec: &PairSpec) -> Result<TorsionPair> {
        let torsion = spec.torsion.iter().map(|m| self.module(alg, m)).collect::<Result<Vec<_>>>()?;
        let free = spec.free.iter().map(|m| self.module(alg, m)).collect::<Result<Vec<_>>>()?;
        TorsionPair::from_generators(alg, torsion, free)
    }
}

fn map_from_rows(src: &Module, tgt: &Module, blocks: &[Vec<Vec<i64>>]) -> Result<ModuleMap> {
    let field = src.field();
    if blocks.len() != src.dims().len() {
        return Err(Error::InvalidMap(format!("expected {} vertex matrices, got {}", src.dims().len(), blocks.len())));
    }
    let mats = blocks
        .iter()
        .enumerate()
        .map(|(v, rows)| {
            let (r, c) = (tgt.dim_at(v), src.dim_at(v));
            let m = if rows.is_empty() || rows[0].is_empty() { Mat::zeros(field, rows.len().max(r), c) } else { Mat::from_rows(field, rows)? };
            if (m.rows(), m.cols()) != (r, c) {
                return Err(Error::InvalidMap(format!("vertex {v} needs a {r}x{c} matrix")));
            }
            Ok(m)
        })
        .collect::<Result<Vec<_>>>()?;
    ModuleMap::new(src, tgt, mats)
}

/// `S<v>`, `P<v>`, `I<v>` and `0`.
fn builtin(alg: &Arc<Algebra>, name: &str) -> Option<Result<Module>> {
    if name == "0" {
        return Some(Ok(Module::zero(alg)));
    }
    let mut chars = name.chars();
    let kind = chars.next()?;
    let label = chars.as_str();
    let v = alg.quiver().vertices.iter().position(|x| x == label);
    let make = match kind {
        'S' => Module::simple,
        'P' => Module::projective,
        'I' => Module::injective,
        _ => return None,
    };
    Some(v.map(|v| make(alg, v)).ok_or_else(|| Error::UnknownVertex(label.to_string())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcat::fixtures;

    #[test]
    fn builtin_names_resolve_by_label() {
        let a2 = fixtures::a2();
        assert_eq!(builtin(&a2, "S1").unwrap().unwrap(), fixtures::s1(&a2));
        assert_eq!(builtin(&a2, "P1").unwrap().unwrap(), fixtures::p1(&a2));
        assert!(builtin(&a2, "0").unwrap().unwrap().is_zero());
        assert!(matches!(builtin(&a2, "S7"), Some(Err(Error::UnknownVertex(_)))));
        assert!(builtin(&a2, "X1").is_none());
    }

    #[test]
    fn parse_errors_carry_positions() {
        match Scenario::parse("{\n  \"version\": 1,\n  \"field\": }") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected a parse error, got {other:?}"),
        }
        let unknown = r#"{"version":1,"field":2,"quiver":{"vertices":[1]},"commands":[{"cmd":"frobnicate"}]}"#;
        assert!(matches!(Scenario::parse(unknown), Err(Error::Parse { .. })));
        let extra = r#"{"version":1,"field":2,"quiver":{"vertices":[1]},"commands":[{"cmd":"verify-tt11","x":1}]}"#;
        assert!(matches!(Scenario::parse(extra), Err(Error::Parse { .. })));
    }

    #[test]
    fn complexes_roundtrip_through_descriptors() {
        let a2 = fixtures::a2();
        let s = Scenario::parse(r#"{"version":1,"field":2,"quiver":{"vertices":[1,2],"arrows":[[1,2]]}}"#).unwrap();
        let r = Resolver { scenario: &s };
        let c = Complex::two_term(&crate::modcat::hom_basis(&fixtures::s2(&a2), &fixtures::p1(&a2)).unwrap()[0]);
        let json = serde_json::to_string(&ComplexSpec::describe(&c)).unwrap();
        let spec: ComplexSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(r.complex(&a2, &ComplexRef::Inline(spec)).unwrap(), c);
    }
}
