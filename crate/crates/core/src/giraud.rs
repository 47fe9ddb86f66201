//! Giraud and co-Giraud contexts realized by corner idempotents, and the
//! transport of torsion pairs between `D = A-Mod` and `C = eAe-Mod`.
//!
//! `S = Ker l` consists of the modules vanishing on `V'`. The Giraud side
//! uses `l ⊣ i` and the subcategory `S^⊥` (unit injective); the co-Giraud
//! side uses `j ⊣ r` and `⊥S` (counit surjective).

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::modcat::decompose::decompose;
use crate::modcat::hom::{hom_basis_unchecked, HomSpace};
use crate::modcat::{
    fiber_product, pushout, Algebra, Corner, Module, ModuleDescriptor, ModuleMap, ShortExactSeq, Submodule, Universe,
};
use crate::torsion::{
    enumerate_torsion_pairs, is_torsion_pair, preimage_torsion, preimage_torsionfree, AdditiveFunctor, ClassSpec,
    PairReport, Polarity, TorsionPair,
};

/// Indecomposable summands of a family of modules, up to isomorphism.
fn summand_class(alg: &Arc<Algebra>, mods: impl IntoIterator<Item = Module>, polarity: Polarity) -> Result<ClassSpec> {
    let mut gens = Vec::new();
    for m in mods {
        if !m.is_zero() {
            gens.extend(decompose(&m)?.summands);
        }
    }
    ClassSpec::new(alg, gens, polarity)
}

/// Report on the structural invariants of a context.
#[derive(Clone, Debug, Serialize)]
pub struct ContextReport {
    pub triangle_identities: bool,
    pub counit_iso: bool,
    pub restriction_exact: bool,
    pub adjunction_bijective: bool,
    pub passed: bool,
}

/// The Giraud context `(D, C, l, i)` of a corner.
#[derive(Clone, Debug)]
pub struct GiraudContext {
    corner: Arc<Corner>,
}

impl GiraudContext {
    pub fn new(alg: &Arc<Algebra>, vertices: &[usize]) -> Result<Self> {
        Ok(GiraudContext { corner: Arc::new(Corner::new(alg, vertices)?) })
    }

    pub fn from_corner(corner: Arc<Corner>) -> Self {
        GiraudContext { corner }
    }

    pub fn corner(&self) -> &Arc<Corner> {
        &self.corner
    }
    pub fn d(&self) -> &Arc<Algebra> {
        self.corner.ambient()
    }
    pub fn c(&self) -> &Arc<Algebra> {
        self.corner.algebra()
    }
    pub fn l_functor(&self) -> AdditiveFunctor {
        AdditiveFunctor::Corner(self.corner.clone())
    }
    pub fn i_functor(&self) -> AdditiveFunctor {
        AdditiveFunctor::HomSection(self.corner.clone())
    }
    pub fn l(&self, m: &Module) -> Module {
        self.corner.restrict(m)
    }
    pub fn l_map(&self, f: &ModuleMap) -> ModuleMap {
        self.corner.restrict_map(f)
    }
    pub fn i(&self, n: &Module) -> Module {
        self.corner.hom_section(n)
    }
    pub fn i_map(&self, g: &ModuleMap) -> ModuleMap {
        self.corner.hom_section_map(g)
    }
    pub fn il(&self, m: &Module) -> Module {
        self.i(&self.l(m))
    }
    pub fn unit(&self, m: &Module) -> ModuleMap {
        self.corner.unit(m)
    }
    pub fn counit(&self, n: &Module) -> ModuleMap {
        self.corner.counit(n)
    }

    pub fn in_s(&self, m: &Module) -> bool {
        self.l(m).is_zero()
    }

    /// `M ∈ S^⊥` iff the unit `M → il(M)` is injective.
    pub fn in_s_perp(&self, m: &Module) -> bool {
        self.unit(m).is_injective()
    }

    /// `S^⊥` by its definition: no nonzero map from a module of `S`.
    pub fn in_s_perp_by_hom(&self, m: &Module, universe: &Universe) -> bool {
        universe.indecomposables.iter().filter(|s| self.in_s(s)).all(|s| hom_basis_unchecked(s, m).is_empty())
    }

    pub fn validate(&self, d_universe: &Universe, c_universe: &Universe) -> Result<ContextReport> {
        let mut triangle = true;
        let mut adjunction = true;
        for m in d_universe.modules() {
            let lm = self.l(m);
            // ε_{lM} ∘ l(η_M) = id
            let t = self.counit(&lm).compose(&self.l_map(&self.unit(m)));
            triangle &= t.blocks() == ModuleMap::identity(&lm).blocks();
            for n in c_universe.modules() {
                adjunction &= self.adjunction_is_bijective(m, n);
            }
        }
        let mut counit_iso = true;
        for n in c_universe.modules() {
            let i_n = self.i(n);
            // i(ε_N) ∘ η_{iN} = id
            let t = self.i_map(&self.counit(n)).compose(&self.unit(&i_n));
            triangle &= t.blocks() == ModuleMap::identity(&i_n).blocks();
            counit_iso &= self.counit(n).is_iso();
        }
        let restriction_exact = self.l_functor().exactness_witness(d_universe)?.is_none();
        let passed = triangle && counit_iso && restriction_exact && adjunction;
        Ok(ContextReport { triangle_identities: triangle, counit_iso, restriction_exact, adjunction_bijective: adjunction, passed })
    }

    /// `Hom_C(lM, N) → Hom_D(M, iN)`, `φ ↦ i(φ) ∘ η_M`, is a linear bijection.
    pub fn adjunction_is_bijective(&self, m: &Module, n: &Module) -> bool {
        let lm = self.l(m);
        let from = hom_basis_unchecked(&lm, n);
        let to = HomSpace::new(m, &self.i(n));
        if from.len() != to.dim() {
            return false;
        }
        let eta = self.unit(m);
        let f = m.field();
        let mut mat = Mat::zeros(f, to.dim(), from.len());
        for (j, phi) in from.iter().enumerate() {
            let img = self.i_map(phi).compose(&eta);
            for (i, x) in to.coords(&img).into_iter().enumerate() {
                mat.set(i, j, x);
            }
        }
        mat.is_invertible() || from.is_empty()
    }

    /// The pair `(T̂, F̂) = (l^←(T), l^←(F) ∩ S^⊥)` on `D`.
    pub fn hat_pair(&self, pair: &TorsionPair, d_universe: &Universe, c_universe: &Universe) -> Result<HatOutcome> {
        let input = is_torsion_pair(pair, c_universe)?;
        if !input.valid {
            return Err(Error::InvalidPair(format!("{:?}", input.violations.first().map(|v| v.axiom))));
        }
        let l = self.l_functor();
        let torsion = preimage_torsion(&l, &pair.torsion, d_universe)?;
        let free_pre = preimage_torsionfree(&l, &pair.free, d_universe)?;
        let free_gens = free_pre.generators().iter().filter(|x| self.in_s_perp(x)).cloned().collect();
        let free = ClassSpec::new(self.d(), free_gens, Polarity::TorsionFree)?;
        let hat = TorsionPair::new(torsion, free)?;
        let validation = is_torsion_pair(&hat, d_universe)?;
        let l_t = summand_class(self.c(), hat.torsion.generators().iter().map(|x| self.l(x)), Polarity::Torsion)?;
        let l_f = summand_class(self.c(), hat.free.generators().iter().map(|x| self.l(x)), Polarity::TorsionFree)?;
        let i_t_inside = pair.torsion.generators().iter().all(|t| hat.in_torsion(&self.i(t)));
        let i_f_inside = pair.free.generators().iter().all(|f| hat.in_free(&self.i(f)));
        Ok(HatOutcome {
            l_torsion_matches: l_t.same_members(&pair.torsion),
            l_free_matches: l_f.same_members(&pair.free),
            i_torsion_inside: i_t_inside,
            i_free_inside: i_f_inside,
            pair: hat,
            validation,
        })
    }

    /// The decomposition of `D` from the fiber product
    /// `X = i(t(lD)) ×_{il(D)} D`, with `D/X` the torsion-free part.
    pub fn hat_decompose(&self, pair: &TorsionPair, m: &Module) -> Result<ShortExactSeq> {
        let lm = self.l(m);
        let (_, t_incl) = pair.radical(&lm);
        let (_, _, to_m) = fiber_product(&self.i_map(&t_incl), &self.unit(m))?;
        let sub = Submodule::new(m, crate::modcat::image_submodule(&to_m).spaces().to_vec())?;
        Ok(ShortExactSeq::from_submodule(&sub))
    }

    /// `il(y) ∈ Y` for every indecomposable of `Y`; the first failure.
    pub fn il_closure_witness(&self, pair: &TorsionPair) -> Option<Module> {
        pair.free.generators().iter().find(|y| !pair.in_free(&self.il(y))).cloned()
    }

    /// A generator of `Y` outside `S^⊥`, if any.
    pub fn perp_witness(&self, pair: &TorsionPair) -> Option<Module> {
        pair.free.generators().iter().find(|y| !self.in_s_perp(y)).cloned()
    }

    /// `(l(X), l(Y))` on `C`, defined iff `il(Y) ⊆ Y`.
    pub fn push_pair(&self, pair: &TorsionPair, c_universe: &Universe) -> Result<PushOutcome> {
        if let Some(w) = self.il_closure_witness(pair) {
            return Err(Error::IncompatiblePair { reason: "il(Y) is not contained in Y".into(), witness: Box::new(w) });
        }
        let torsion = summand_class(self.c(), pair.torsion.generators().iter().map(|x| self.l(x)), Polarity::Torsion)?;
        let free = summand_class(self.c(), pair.free.generators().iter().map(|x| self.l(x)), Polarity::TorsionFree)?;
        let pushed = TorsionPair::new(torsion, free)?;
        let validation = is_torsion_pair(&pushed, c_universe)?;
        // i^←(Y) = l(Y) on the indecomposables of C
        let preimage_matches = c_universe
            .indecomposables
            .iter()
            .all(|c| pair.in_free(&self.i(c)) == pushed.free.contains_indecomposable(c));
        Ok(PushOutcome { pair: pushed, validation, preimage_matches, outside_perp: self.perp_witness(pair) })
    }

    pub fn verify_bijection(&self, d_universe: &Universe, c_universe: &Universe) -> Result<BijectionReport> {
        let d_pairs = enumerate_torsion_pairs(d_universe)?;
        let c_pairs = enumerate_torsion_pairs(c_universe)?;
        let mut report = BijectionReport::new(d_universe, c_universe, d_pairs.len(), c_pairs.len());
        let mut compatible = Vec::new();
        for p in &d_pairs {
            let closed = self.il_closure_witness(p).is_none();
            let perp = self.perp_witness(p).is_none();
            report.tally(closed, perp);
            if closed && perp {
                compatible.push(p);
            }
        }
        report.compatible = compatible.len();
        for p in &compatible {
            let pushed = self.push_pair(p, c_universe)?;
            let back = self.hat_pair(&pushed.pair, d_universe, c_universe)?;
            report.d_roundtrips.push(back.pair.same_as(p) && pushed.validation.valid);
        }
        for q in &c_pairs {
            let hat = self.hat_pair(q, d_universe, c_universe)?;
            let lands = self.il_closure_witness(&hat.pair).is_none() && self.perp_witness(&hat.pair).is_none();
            let back = self.push_pair(&hat.pair, c_universe)?;
            report.c_roundtrips.push(lands && back.pair.same_as(q) && hat.validation.valid);
        }
        report.finish();
        Ok(report)
    }
}

/// Result of [`GiraudContext::hat_pair`] and its mirror.
#[derive(Clone, Debug)]
pub struct HatOutcome {
    pub pair: TorsionPair,
    pub validation: PairReport,
    pub l_torsion_matches: bool,
    pub l_free_matches: bool,
    /// `i(T) ⊆ T̂` (resp. `j(F) ⊆ F̂` on the co-side)
    pub i_torsion_inside: bool,
    pub i_free_inside: bool,
}

impl HatOutcome {
    pub fn passed(&self) -> bool {
        self.validation.valid && self.l_torsion_matches && self.l_free_matches && self.i_torsion_inside && self.i_free_inside
    }
}

/// Result of [`GiraudContext::push_pair`] and its mirror.
#[derive(Clone, Debug)]
pub struct PushOutcome {
    pub pair: TorsionPair,
    pub validation: PairReport,
    /// `i^←(Y) = l(Y)` (resp. `j^←(X) = r(X)`)
    pub preimage_matches: bool,
    /// a generator of `Y` outside `S^⊥` (resp. of `X` outside `⊥S`)
    pub outside_perp: Option<Module>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BijectionReport {
    pub d_bound: crate::modcat::DimBound,
    pub c_bound: crate::modcat::DimBound,
    pub d_pairs: usize,
    pub c_pairs: usize,
    /// pairs satisfying the closure condition (`il(Y) ⊆ Y` or `jr(X) ⊆ X`)
    pub closure_holds: usize,
    /// pairs satisfying the orthogonality condition (`Y ⊆ S^⊥` or `X ⊆ ⊥S`)
    pub perp_holds: usize,
    /// pairs satisfying exactly one of the two
    pub closure_without_perp: usize,
    pub perp_without_closure: usize,
    pub compatible: usize,
    pub d_roundtrips: Vec<bool>,
    pub c_roundtrips: Vec<bool>,
    pub passed: bool,
}

impl BijectionReport {
    fn new(d: &Universe, c: &Universe, d_pairs: usize, c_pairs: usize) -> Self {
        BijectionReport {
            d_bound: d.bound,
            c_bound: c.bound,
            d_pairs,
            c_pairs,
            closure_holds: 0,
            perp_holds: 0,
            closure_without_perp: 0,
            perp_without_closure: 0,
            compatible: 0,
            d_roundtrips: Vec::new(),
            c_roundtrips: Vec::new(),
            passed: false,
        }
    }

    fn tally(&mut self, closed: bool, perp: bool) {
        self.closure_holds += closed as usize;
        self.perp_holds += perp as usize;
        self.closure_without_perp += (closed && !perp) as usize;
        self.perp_without_closure += (perp && !closed) as usize;
    }

    fn finish(&mut self) {
        self.passed = self.compatible == self.c_pairs
            && self.d_roundtrips.iter().all(|&b| b)
            && self.c_roundtrips.iter().all(|&b| b);
    }
}

/// The co-Giraud context `(D, C, j, r)` of a corner.
#[derive(Clone, Debug)]
pub struct CoGiraudContext {
    corner: Arc<Corner>,
}

impl CoGiraudContext {
    pub fn new(alg: &Arc<Algebra>, vertices: &[usize]) -> Result<Self> {
        Ok(CoGiraudContext { corner: Arc::new(Corner::new(alg, vertices)?) })
    }

    pub fn from_corner(corner: Arc<Corner>) -> Self {
        CoGiraudContext { corner }
    }

    pub fn corner(&self) -> &Arc<Corner> {
        &self.corner
    }
    pub fn d(&self) -> &Arc<Algebra> {
        self.corner.ambient()
    }
    pub fn c(&self) -> &Arc<Algebra> {
        self.corner.algebra()
    }
    pub fn r_functor(&self) -> AdditiveFunctor {
        AdditiveFunctor::Corner(self.corner.clone())
    }
    pub fn j_functor(&self) -> AdditiveFunctor {
        AdditiveFunctor::TensorSection(self.corner.clone())
    }
    pub fn r(&self, m: &Module) -> Module {
        self.corner.restrict(m)
    }
    pub fn r_map(&self, f: &ModuleMap) -> ModuleMap {
        self.corner.restrict_map(f)
    }
    pub fn j(&self, n: &Module) -> Module {
        self.corner.tensor_section(n)
    }
    pub fn j_map(&self, g: &ModuleMap) -> ModuleMap {
        self.corner.tensor_section_map(g)
    }
    pub fn jr(&self, m: &Module) -> Module {
        self.j(&self.r(m))
    }
    /// `η_N: N → rj(N)`.
    pub fn unit(&self, n: &Module) -> ModuleMap {
        self.corner.co_unit(n)
    }
    /// `ε_M: jr(M) → M`.
    pub fn counit(&self, m: &Module) -> ModuleMap {
        self.corner.co_counit(m)
    }

    pub fn in_s(&self, m: &Module) -> bool {
        self.r(m).is_zero()
    }

    /// `M ∈ ⊥S` iff the counit `jr(M) → M` is surjective.
    pub fn in_perp_s(&self, m: &Module) -> bool {
        self.counit(m).is_surjective()
    }

    /// `⊥S` by its definition: no nonzero map to a module of `S`.
    pub fn in_perp_s_by_hom(&self, m: &Module, universe: &Universe) -> bool {
        universe.indecomposables.iter().filter(|s| self.in_s(s)).all(|s| hom_basis_unchecked(m, s).is_empty())
    }

    pub fn validate(&self, d_universe: &Universe, c_universe: &Universe) -> Result<ContextReport> {
        let mut triangle = true;
        let mut adjunction = true;
        for m in d_universe.modules() {
            let rm = self.r(m);
            // r(ε_M) ∘ η_{rM} = id
            let t = self.r_map(&self.counit(m)).compose(&self.unit(&rm));
            triangle &= t.blocks() == ModuleMap::identity(&rm).blocks();
            for n in c_universe.modules() {
                adjunction &= self.adjunction_is_bijective(n, m);
            }
        }
        let mut unit_iso = true;
        for n in c_universe.modules() {
            let jn = self.j(n);
            // ε_{jN} ∘ j(η_N) = id
            let t = self.counit(&jn).compose(&self.j_map(&self.unit(n)));
            triangle &= t.blocks() == ModuleMap::identity(&jn).blocks();
            unit_iso &= self.unit(n).is_iso();
        }
        let restriction_exact = self.r_functor().exactness_witness(d_universe)?.is_none();
        let passed = triangle && unit_iso && restriction_exact && adjunction;
        Ok(ContextReport { triangle_identities: triangle, counit_iso: unit_iso, restriction_exact, adjunction_bijective: adjunction, passed })
    }

    /// `Hom_C(N, rM) → Hom_D(jN, M)`, `φ ↦ ε_M ∘ j(φ)`, is a linear bijection.
    pub fn adjunction_is_bijective(&self, n: &Module, m: &Module) -> bool {
        let from = hom_basis_unchecked(n, &self.r(m));
        let to = HomSpace::new(&self.j(n), m);
        if from.len() != to.dim() {
            return false;
        }
        let eps = self.counit(m);
        let f = m.field();
        let mut mat = Mat::zeros(f, to.dim(), from.len());
        for (j, phi) in from.iter().enumerate() {
            let img = eps.compose(&self.j_map(phi));
            for (i, x) in to.coords(&img).into_iter().enumerate() {
                mat.set(i, j, x);
            }
        }
        mat.is_invertible() || from.is_empty()
    }

    /// `(T̂, F̂) = (r^←(T) ∩ ⊥S, r^←(F))`.
    pub fn co_hat_pair(&self, pair: &TorsionPair, d_universe: &Universe, c_universe: &Universe) -> Result<HatOutcome> {
        let input = is_torsion_pair(pair, c_universe)?;
        if !input.valid {
            return Err(Error::InvalidPair(format!("{:?}", input.violations.first().map(|v| v.axiom))));
        }
        let r = self.r_functor();
        let torsion_pre = preimage_torsion(&r, &pair.torsion, d_universe)?;
        let torsion_gens = torsion_pre.generators().iter().filter(|x| self.in_perp_s(x)).cloned().collect();
        let torsion = ClassSpec::new(self.d(), torsion_gens, Polarity::Torsion)?;
        let free = preimage_torsionfree(&r, &pair.free, d_universe)?;
        let hat = TorsionPair::new(torsion, free)?;
        let validation = is_torsion_pair(&hat, d_universe)?;
        let r_t = summand_class(self.c(), hat.torsion.generators().iter().map(|x| self.r(x)), Polarity::Torsion)?;
        let r_f = summand_class(self.c(), hat.free.generators().iter().map(|x| self.r(x)), Polarity::TorsionFree)?;
        Ok(HatOutcome {
            l_torsion_matches: r_t.same_members(&pair.torsion),
            l_free_matches: r_f.same_members(&pair.free),
            i_torsion_inside: pair.torsion.generators().iter().all(|t| hat.in_torsion(&self.j(t))),
            i_free_inside: pair.free.generators().iter().all(|f| hat.in_free(&self.j(f))),
            pair: hat,
            validation,
        })
    }

    /// The decomposition of `D` from the pushout `D ⊔_{jr(D)} j(rD / t(rD))`;
    /// the kernel of `D → pushout` is the torsion part.
    pub fn co_hat_decompose(&self, pair: &TorsionPair, m: &Module) -> Result<ShortExactSeq> {
        let rm = self.r(m);
        let free_part = pair.decompose(&rm);
        let (_, from_m, _) = pushout(&self.counit(m), &self.j_map(&free_part.epi))?;
        let sub = crate::modcat::kernel_submodule(&from_m);
        Ok(ShortExactSeq::from_submodule(&sub))
    }

    pub fn jr_closure_witness(&self, pair: &TorsionPair) -> Option<Module> {
        pair.torsion.generators().iter().find(|x| !pair.in_torsion(&self.jr(x))).cloned()
    }

    pub fn perp_witness(&self, pair: &TorsionPair) -> Option<Module> {
        pair.torsion.generators().iter().find(|x| !self.in_perp_s(x)).cloned()
    }

    /// `(r(X), r(Y))` on `C`, defined iff `jr(X) ⊆ X`.
    pub fn co_push_pair(&self, pair: &TorsionPair, c_universe: &Universe) -> Result<PushOutcome> {
        if let Some(w) = self.jr_closure_witness(pair) {
            return Err(Error::IncompatiblePair { reason: "jr(X) is not contained in X".into(), witness: Box::new(w) });
        }
        let torsion = summand_class(self.c(), pair.torsion.generators().iter().map(|x| self.r(x)), Polarity::Torsion)?;
        let free = summand_class(self.c(), pair.free.generators().iter().map(|x| self.r(x)), Polarity::TorsionFree)?;
        let pushed = TorsionPair::new(torsion, free)?;
        let validation = is_torsion_pair(&pushed, c_universe)?;
        // j^←(X) = r(X)
        let preimage_matches = c_universe
            .indecomposables
            .iter()
            .all(|c| pair.in_torsion(&self.j(c)) == pushed.torsion.contains_indecomposable(c));
        Ok(PushOutcome { pair: pushed, validation, preimage_matches, outside_perp: self.perp_witness(pair) })
    }

    pub fn verify_co_bijection(&self, d_universe: &Universe, c_universe: &Universe) -> Result<BijectionReport> {
        let d_pairs = enumerate_torsion_pairs(d_universe)?;
        let c_pairs = enumerate_torsion_pairs(c_universe)?;
        let mut report = BijectionReport::new(d_universe, c_universe, d_pairs.len(), c_pairs.len());
        let mut compatible = Vec::new();
        for p in &d_pairs {
            let closed = self.jr_closure_witness(p).is_none();
            let perp = self.perp_witness(p).is_none();
            report.tally(closed, perp);
            if closed && perp {
                compatible.push(p);
            }
        }
        report.compatible = compatible.len();
        for p in &compatible {
            let pushed = self.co_push_pair(p, c_universe)?;
            let back = self.co_hat_pair(&pushed.pair, d_universe, c_universe)?;
            report.d_roundtrips.push(back.pair.same_as(p) && pushed.validation.valid);
        }
        for q in &c_pairs {
            let hat = self.co_hat_pair(q, d_universe, c_universe)?;
            let lands = self.jr_closure_witness(&hat.pair).is_none() && self.perp_witness(&hat.pair).is_none();
            let back = self.co_push_pair(&hat.pair, c_universe)?;
            report.c_roundtrips.push(lands && back.pair.same_as(q) && hat.validation.valid);
        }
        report.finish();
        Ok(report)
    }
}

/// Serializable summary of a pair for reports.
#[derive(Clone, Debug, Serialize)]
pub struct PairSummary {
    pub torsion: Vec<ModuleDescriptor>,
    pub free: Vec<ModuleDescriptor>,
}

impl From<&TorsionPair> for PairSummary {
    fn from(p: &TorsionPair) -> Self {
        PairSummary {
            torsion: p.torsion.generators().iter().map(ModuleDescriptor::from).collect(),
            free: p.free.generators().iter().map(ModuleDescriptor::from).collect(),
        }
    }
}
