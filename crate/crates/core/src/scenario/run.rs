use std::sync::{Arc, OnceLock};
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use super::{Bounds, Command, ComplexRef, ComplexSpec, Localization, PairSpec, Resolver, Scenario, Side};
use crate::complexes::{enumerate_complexes, stalks, Complex};
use crate::error::{Error, Result};
use crate::giraud::{CoGiraudContext, GiraudContext, PairSummary};
use crate::heart::{
    cokernel_is_universal, heart_cokernel, heart_hom, heart_kernel, kernel_is_universal, kv_extract, les_check,
    tilted_pair, CoimImage, HeartObject, HeartUniverse, InducedT, TStructure,
};
use crate::linalg::Field;
use crate::modcat::{enumerate_submodules, Algebra, Corner, DimBound, Module, ModuleDescriptor, Quiver, ShortExactSeq, Universe};
use crate::tiltbridge::{
    reconstruct_serre, verify_dl_comm, verify_heart_cogiraud, verify_heart_giraud, verify_s_on_h, HeartCoGiraudContext,
    HeartGiraudContext,
};
use crate::torsion::{enumerate_torsion_pairs, is_torsion_pair, TorsionPair};

/// Cap on the complexes enumerated for the commutation checks.
const COMPLEX_LIMIT: usize = 20_000;

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// overrides the scenario's per-vertex dimension bound
    pub bound: Option<usize>,
    /// leave timing fields out of the report
    pub no_timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// a construction with nothing to verify
    Info,
}

#[derive(Clone, Debug, Serialize)]
pub struct CommandReport {
    pub cmd: &'static str,
    pub verdict: Verdict,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_ms: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: u32,
    pub field: u32,
    pub bounds: Bounds,
    pub commands: Vec<CommandReport>,
    pub passed: bool,
}

impl Report {
    /// 0 when every verification passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

struct Outcome {
    verdict: Verdict,
    result: Value,
    witness: Option<Value>,
}

impl Outcome {
    fn check(passed: bool, result: Value) -> Self {
        Outcome { verdict: if passed { Verdict::Pass } else { Verdict::Fail }, result, witness: None }
    }

    fn info(result: Value) -> Self {
        Outcome { verdict: Verdict::Info, result, witness: None }
    }

    fn with_witness(mut self, w: Option<Value>) -> Self {
        self.witness = w;
        self
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn describe_module(m: &Module) -> Value {
    to_value(&ModuleDescriptor::from(m))
}

fn describe_complex(c: &Complex) -> Value {
    to_value(&ComplexSpec::describe(c))
}

/// Everything a scenario's commands share, built lazily.
struct Workspace<'a> {
    names: Resolver<'a>,
    bounds: Bounds,
    d: Arc<Algebra>,
    corner: Option<Arc<Corner>>,
    d_universe: OnceLock<Universe>,
    c_universe: OnceLock<Universe>,
}

impl<'a> Workspace<'a> {
    fn new(s: &'a Scenario, bounds: Bounds) -> Result<Self> {
        let field = Field::new(s.field)?;
        let labels: Vec<String> = s.quiver.vertices.iter().map(ToString::to_string).collect();
        let arrows: Vec<(String, String)> = s.quiver.arrows.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        let d = Algebra::path_algebra(Quiver::new(&labels, &arrows)?, field)?;
        let corner = if s.corner.is_empty() {
            None
        } else {
            let vs = s.corner.iter().map(|v| d.quiver().vertex_index(&v.to_string())).collect::<Result<Vec<_>>>()?;
            Some(Arc::new(Corner::new(&d, &vs)?))
        };
        Ok(Workspace {
            names: Resolver { scenario: s },
            bounds,
            d,
            corner,
            d_universe: OnceLock::new(),
            c_universe: OnceLock::new(),
        })
    }

    fn corner(&self) -> Result<&Arc<Corner>> {
        self.corner.as_ref().ok_or_else(|| Error::Scenario("the command needs a corner but the scenario has none".into()))
    }

    fn algebra(&self, side: Side) -> Result<&Arc<Algebra>> {
        match side {
            Side::D => Ok(&self.d),
            Side::C => Ok(self.corner()?.algebra()),
        }
    }

    fn universe(&self, side: Side) -> Result<&Universe> {
        let cell = match side {
            Side::D => &self.d_universe,
            Side::C => &self.c_universe,
        };
        if let Some(u) = cell.get() {
            return Ok(u);
        }
        let u = Universe::new(self.algebra(side)?, DimBound::per_vertex(self.bounds.dim))?;
        Ok(cell.get_or_init(|| u))
    }

    fn giraud(&self) -> Result<GiraudContext> {
        Ok(GiraudContext::from_corner(self.corner()?.clone()))
    }

    fn cogiraud(&self) -> Result<CoGiraudContext> {
        Ok(CoGiraudContext::from_corner(self.corner()?.clone()))
    }

    fn pair(&self, name: &str) -> Result<(&PairSpec, TorsionPair)> {
        let spec = self.names.pair_spec(name)?;
        Ok((spec, self.names.pair(self.algebra(spec.on)?, spec)?))
    }

    fn pair_on(&self, name: &str, side: Side) -> Result<TorsionPair> {
        let (spec, pair) = self.pair(name)?;
        if spec.on != side {
            return Err(Error::Scenario(format!("pair '{name}' lives on {:?}, the command needs {side:?}", spec.on)));
        }
        Ok(pair)
    }

    fn heart_universe(&self, ts: &InducedT, side: Side) -> Result<HeartUniverse> {
        HeartUniverse::new(ts, self.universe(side)?, self.bounds.heart)
    }

    fn heart_object(&self, ts: &InducedT, side: Side, r: &ComplexRef) -> Result<HeartObject> {
        HeartObject::new(ts, &self.names.complex(self.algebra(side)?, r)?)
    }

    /// Complexes in degrees `[-1, 1]` built from the indecomposables of the
    /// `D` universe and zero.
    fn test_complexes(&self) -> Result<Vec<Complex>> {
        let u = self.universe(Side::D)?;
        let mut mods = vec![Module::zero(&self.d)];
        mods.extend(u.indecomposables.iter().cloned());
        enumerate_complexes(&mods, -1, 1, COMPLEX_LIMIT)
    }
}

/// Runs every command of the scenario in order. Input errors abort the run;
/// a failed computation is recorded as a failing command.
pub fn run(s: &Scenario, opts: &RunOptions) -> Result<Report> {
    let mut bounds = s.bounds;
    if let Some(b) = opts.bound {
        bounds.dim = b;
    }
    bounds.check()?;
    let ws = Workspace::new(s, bounds)?;
    let mut commands = Vec::with_capacity(s.commands.len());
    for cmd in &s.commands {
        let start = Instant::now();
        let out = match execute(&ws, cmd) {
            Ok(o) => o,
            Err(e) if e.is_input_error() => return Err(e),
            Err(e) => Outcome { verdict: Verdict::Fail, result: json!({ "error": e.to_string() }), witness: None },
        };
        let time_ms = (!opts.no_timing).then(|| start.elapsed().as_millis() as u64);
        commands.push(CommandReport { cmd: cmd.name(), verdict: out.verdict, result: out.result, witness: out.witness, time_ms });
    }
    let passed = commands.iter().all(|c| c.verdict != Verdict::Fail);
    Ok(Report { version: s.version, field: s.field, bounds, commands, passed })
}

fn execute(ws: &Workspace<'_>, cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::ValidatePair { pair } => {
            let (spec, p) = ws.pair(pair)?;
            let report = is_torsion_pair(&p, ws.universe(spec.on)?)?;
            let witness = report.violations.first().map(to_value);
            Ok(Outcome::check(report.valid, to_value(&report)).with_witness(witness))
        }
        Command::TransportHat { pair, via } => {
            let p = ws.pair_on(pair, Side::C)?;
            let (ud, uc) = (ws.universe(Side::D)?, ws.universe(Side::C)?);
            let hat = match via {
                Localization::Giraud => ws.giraud()?.hat_pair(&p, ud, uc)?,
                Localization::CoGiraud => ws.cogiraud()?.co_hat_pair(&p, ud, uc)?,
            };
            let result = json!({
                "pair": PairSummary::from(&hat.pair),
                "validation": hat.validation,
                "l_torsion_matches": hat.l_torsion_matches,
                "l_free_matches": hat.l_free_matches,
                "i_torsion_inside": hat.i_torsion_inside,
                "i_free_inside": hat.i_free_inside,
            });
            let witness = hat.validation.violations.first().map(to_value);
            Ok(Outcome::check(hat.passed(), result).with_witness(witness))
        }
        Command::TransportPush { pair, via } => {
            let p = ws.pair_on(pair, Side::D)?;
            let uc = ws.universe(Side::C)?;
            let pushed = match via {
                Localization::Giraud => ws.giraud()?.push_pair(&p, uc),
                Localization::CoGiraud => ws.cogiraud()?.co_push_pair(&p, uc),
            };
            match pushed {
                Ok(o) => {
                    let result = json!({
                        "pair": PairSummary::from(&o.pair),
                        "validation": o.validation,
                        "preimage_matches": o.preimage_matches,
                        "outside_perp": o.outside_perp.as_ref().map(describe_module),
                    });
                    Ok(Outcome::check(o.validation.valid && o.preimage_matches, result))
                }
                Err(Error::IncompatiblePair { reason, witness }) => {
                    Ok(Outcome::check(false, json!({ "incompatible": reason })).with_witness(Some(describe_module(&witness))))
                }
                Err(e) => Err(e),
            }
        }
        Command::VerifyTt11 {} => {
            let r = ws.giraud()?.verify_bijection(ws.universe(Side::D)?, ws.universe(Side::C)?)?;
            Ok(Outcome::check(r.passed, to_value(&r)))
        }
        Command::VerifyCoTt11 {} => {
            let r = ws.cogiraud()?.verify_co_bijection(ws.universe(Side::D)?, ws.universe(Side::C)?)?;
            Ok(Outcome::check(r.passed, to_value(&r)))
        }
        Command::Truncate { pair, complex, degree } => {
            let (spec, p) = ws.pair(pair)?;
            let ts = InducedT::new(p);
            let c = ws.names.complex(ws.algebra(spec.on)?, complex)?;
            let t = ts.truncate_at(&c, *degree)?;
            let (exact, le_ok, ge_ok) = (t.is_exact(), ts.in_le(&t.le, *degree), ts.in_ge(&t.ge, degree + 1));
            let result = json!({
                "le": describe_complex(&t.le),
                "ge": describe_complex(&t.ge),
                "exact": exact,
                "le_in_aisle": le_ok,
                "ge_in_coaisle": ge_ok,
            });
            Ok(Outcome::check(exact && le_ok && ge_ok, result))
        }
        Command::TCohomology { pair, complex, degree } => {
            let (spec, p) = ws.pair(pair)?;
            let ts = InducedT::new(p);
            let c = ws.names.complex(ws.algebra(spec.on)?, complex)?;
            let h = ts.t_cohomology(&c, *degree)?;
            Ok(Outcome::info(json!({
                "object": describe_complex(h.complex()),
                "kernel": describe_module(&h.kernel_module()),
                "cokernel": describe_module(&h.cokernel_module()),
                "is_zero": h.is_zero(),
            })))
        }
        Command::HeartHom { pair, source, target } => {
            let (spec, p) = ws.pair(pair)?;
            let ts = InducedT::new(p);
            let x = ws.heart_object(&ts, spec.on, source)?;
            let y = ws.heart_object(&ts, spec.on, target)?;
            Ok(Outcome::info(json!({ "dim": heart_hom(&x, &y).dim() })))
        }
        Command::HeartKernel { pair, source, target } => {
            let (spec, p) = ws.pair(pair)?;
            let ts = InducedT::new(p);
            let x = ws.heart_object(&ts, spec.on, source)?;
            let y = ws.heart_object(&ts, spec.on, target)?;
            let hu = ws.heart_universe(&ts, spec.on)?;
            let hom = heart_hom(&x, &y);
            let (mut maps, mut failures, mut witness) = (0usize, 0usize, None);
            let mut objects = Vec::new();
            for (coords, f) in hom.coordinates().into_iter().zip(hom.elements()) {
                maps += 1;
                let k = heart_kernel(&ts, &f)?;
                let c = heart_cokernel(&ts, &f)?;
                let mut ok = true;
                for t in &hu.indecomposables {
                    ok = ok && kernel_is_universal(&f, &k, t)? && cokernel_is_universal(&f, &c, t)?;
                }
                ok = ok && CoimImage::from_parts(&ts, &f, k.clone(), c.clone())?.canonical.is_iso();
                if !ok {
                    failures += 1;
                    witness.get_or_insert_with(|| json!({ "coordinates": coords.clone() }));
                }
                objects.push(json!({
                    "coordinates": coords,
                    "kernel": describe_complex(k.source.complex()),
                    "cokernel": describe_complex(c.target.complex()),
                }));
            }
            let result = json!({ "hom_dim": hom.dim(), "maps": maps, "failures": failures, "test_objects": hu.indecomposables.len(), "maps_detail": objects });
            Ok(Outcome::check(failures == 0, result).with_witness(witness))
        }
        Command::TiltedPair { pair } => {
            let (spec, p) = ws.pair(pair)?;
            let ts = InducedT::new(p);
            let r = tilted_pair(&ts, &ws.heart_universe(&ts, spec.on)?)?;
            Ok(Outcome::check(r.passed, to_value(&r)))
        }
        Command::LesCheck { pair, module } => {
            let (spec, p) = ws.pair(pair)?;
            let alg = ws.algebra(spec.on)?;
            let ts = InducedT::new(p);
            let middles: Vec<Module> = match module {
                Some(m) => vec![ws.names.module(alg, m)?],
                None => ws.universe(spec.on)?.modules().cloned().collect(),
            };
            let (mut sequences, mut failures, mut witness) = (0usize, 0usize, None);
            for m in &middles {
                for sub in enumerate_submodules(m)? {
                    sequences += 1;
                    let ses = ShortExactSeq::from_submodule(&sub);
                    if !les_check(&ts, &ses)?.passed {
                        failures += 1;
                        witness.get_or_insert_with(|| json!({ "sub": describe_module(ses.left()), "middle": describe_module(m) }));
                    }
                }
            }
            Ok(Outcome::check(failures == 0, json!({ "sequences": sequences, "failures": failures })).with_witness(witness))
        }
        Command::KvRoundtrip { pair, on } => {
            let pairs = match pair {
                Some(name) => vec![ws.pair_on(name, *on)?],
                None => enumerate_torsion_pairs(ws.universe(*on)?)?,
            };
            let u = ws.universe(*on)?;
            let complexes = stalks(&u.indecomposables, -2..=2);
            let (mut failures, mut witness) = (0usize, None);
            for p in &pairs {
                let back = kv_extract(&InducedT::new(p.clone()), &complexes, u)?;
                if !(back.report.valid && back.pair.same_as(p)) {
                    failures += 1;
                    witness.get_or_insert_with(|| to_value(&PairSummary::from(p)));
                }
            }
            let result = json!({ "pairs": pairs.len(), "complexes": complexes.len(), "failures": failures });
            Ok(Outcome::check(failures == 0, result).with_witness(witness))
        }
        Command::VerifyAdjhearts { pair } => {
            let p = ws.pair_on(pair, Side::D)?;
            let h = match HeartGiraudContext::new(ws.giraud()?, p, ws.universe(Side::C)?) {
                Ok(h) => h,
                Err(e) => return incompatible(e),
            };
            let d_hu = ws.heart_universe(h.d_structure(), Side::D)?;
            let c_hu = ws.heart_universe(h.c_structure(), Side::C)?;
            let adj = verify_heart_giraud(&h, &d_hu, &c_hu, ws.universe(Side::D)?)?;
            let son = verify_s_on_h(&h, &d_hu, &c_hu)?;
            let comm = verify_dl_comm(&h, &ws.test_complexes()?)?;
            let passed = adj.passed && son.passed && comm.passed;
            let witness = adj.witnesses.first().or(son.witnesses.first()).cloned().or(comm.witness.clone()).map(Value::String);
            Ok(Outcome::check(passed, json!({ "adjunction": adj, "s_on_h": son, "dl_comm": comm })).with_witness(witness))
        }
        Command::VerifyCadjhearts { pair } => {
            let p = ws.pair_on(pair, Side::D)?;
            let h = match HeartCoGiraudContext::new(ws.cogiraud()?, p, ws.universe(Side::C)?) {
                Ok(h) => h,
                Err(e) => return incompatible(e),
            };
            let d_hu = ws.heart_universe(h.d_structure(), Side::D)?;
            let c_hu = ws.heart_universe(h.c_structure(), Side::C)?;
            let adj = verify_heart_cogiraud(&h, &d_hu, &c_hu, ws.universe(Side::D)?)?;
            let witness = adj.witnesses.first().cloned().map(Value::String);
            Ok(Outcome::check(adj.passed, to_value(&adj)).with_witness(witness))
        }
        Command::Reconstruct { pair } => {
            let p = ws.pair_on(pair, Side::D)?;
            let (ud, uc) = (ws.universe(Side::D)?, ws.universe(Side::C)?);
            let h = match HeartGiraudContext::new(ws.giraud()?, p, uc) {
                Ok(h) => h,
                Err(e) => return incompatible(e),
            };
            let d_hu = ws.heart_universe(h.d_structure(), Side::D)?;
            let c_hu = ws.heart_universe(h.c_structure(), Side::C)?;
            match reconstruct_serre(&h, ud, uc, &d_hu, &c_hu) {
                Ok(r) => {
                    let witness = r.predicate_witness.as_ref().map(to_value);
                    Ok(Outcome::check(r.passed, to_value(&r)).with_witness(witness))
                }
                Err(e) => incompatible(e),
            }
        }
        Command::EnumerateModules { on } => {
            let u = ws.universe(*on)?;
            let ind: Vec<Value> = u.indecomposables.iter().map(describe_module).collect();
            Ok(Outcome::info(json!({ "bound": u.bound, "indecomposables": ind, "modules": u.len() })))
        }
        Command::EnumeratePairs { on } => {
            let pairs = enumerate_torsion_pairs(ws.universe(*on)?)?;
            let summaries: Vec<PairSummary> = pairs.iter().map(PairSummary::from).collect();
            Ok(Outcome::info(json!({ "count": pairs.len(), "pairs": summaries })))
        }
    }
}

/// An incompatible pair is a failed verification with its witness.
fn incompatible(e: Error) -> Result<Outcome> {
    match e {
        Error::IncompatiblePair { reason, witness } => {
            Ok(Outcome::check(false, json!({ "incompatible": reason })).with_witness(Some(describe_module(&witness))))
        }
        Error::InvalidPair(reason) => Ok(Outcome::check(false, json!({ "invalid_pair": reason }))),
        e => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A2: &str = r#""version": 1, "field": 2, "quiver": {"vertices": [1, 2], "arrows": [[1, 2]]}, "corner": [2]"#;

    fn run_text(body: &str) -> Result<Report> {
        let s = Scenario::parse(&format!("{{{A2}, {body}}}"))?;
        run(&s, &RunOptions { no_timing: true, ..Default::default() })
    }

    #[test]
    fn empty_command_list_passes() {
        let r = run_text(r#""commands": []"#).unwrap();
        assert!(r.passed && r.commands.is_empty());
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn invalid_pair_fails_with_a_hom_witness() {
        let r = run_text(
            r#""pairs": {"bad": {"torsion": ["S2", "P1"], "free": ["S1"]}},
               "commands": [{"cmd": "validate-pair", "pair": "bad"}]"#,
        )
        .unwrap();
        assert_eq!(r.exit_code(), 1);
        let w = r.commands[0].witness.as_ref().unwrap();
        assert_eq!(w["axiom"], "hom-orthogonality");
    }

    #[test]
    fn unresolved_names_and_bounds_are_input_errors() {
        let e = run_text(r#""commands": [{"cmd": "validate-pair", "pair": "nope"}]"#).unwrap_err();
        assert!(e.is_input_error(), "{e}");
        let e = run_text(r#""bounds": {"dim": 9}"#).unwrap_err();
        assert!(matches!(e, Error::BoundExceeded(_)));
        let e = run_text(r#""pairs": {"p": {"torsion": ["S5"], "free": []}}, "commands": [{"cmd": "validate-pair", "pair": "p"}]"#)
            .unwrap_err();
        assert!(matches!(e, Error::UnknownVertex(_)));
    }

    #[test]
    fn reports_are_deterministic() {
        let body = r#""pairs": {"std": {"torsion": ["S1"], "free": ["S2", "P1"]}},
            "commands": [{"cmd": "enumerate-pairs"}, {"cmd": "truncate", "pair": "std", "complex": {"stalk": "P1"}},
                         {"cmd": "transport-push", "pair": "std"}]"#;
        let a = serde_json::to_string(&run_text(body).unwrap()).unwrap();
        let b = serde_json::to_string(&run_text(body).unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(!a.contains("time_ms"));
    }
}
