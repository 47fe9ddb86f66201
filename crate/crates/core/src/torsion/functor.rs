use std::sync::Arc;

use super::{ClassSpec, Polarity};
use crate::error::{Error, Result};
use crate::modcat::enumerate::enumerate_submodules;
use crate::modcat::{image_submodule, kernel_submodule, Algebra, Corner, Module, ModuleMap, ShortExactSeq, Universe};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctorKind {
    Identity,
    Corner,
    HomSection,
    TensorSection,
    Composite,
}

/// The additive functors between `A`-modules and corner modules.
#[derive(Clone, Debug)]
pub enum AdditiveFunctor {
    Identity(Arc<Algebra>),
    /// `e(-)`: `A`-modules to `eAe`-modules.
    Corner(Arc<Corner>),
    /// `Hom_{eAe}(eA, -)`: `eAe`-modules to `A`-modules.
    HomSection(Arc<Corner>),
    /// `Ae ⊗_{eAe} -`: `eAe`-modules to `A`-modules.
    TensorSection(Arc<Corner>),
    /// `outer ∘ inner`.
    Composite(Box<AdditiveFunctor>, Box<AdditiveFunctor>),
}

impl AdditiveFunctor {
    pub fn compose(outer: AdditiveFunctor, inner: AdditiveFunctor) -> Result<Self> {
        if !crate::modcat::same_algebra(inner.target(), outer.source()) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(AdditiveFunctor::Composite(Box::new(outer), Box::new(inner)))
    }

    pub fn kind(&self) -> FunctorKind {
        match self {
            AdditiveFunctor::Identity(_) => FunctorKind::Identity,
            AdditiveFunctor::Corner(_) => FunctorKind::Corner,
            AdditiveFunctor::HomSection(_) => FunctorKind::HomSection,
            AdditiveFunctor::TensorSection(_) => FunctorKind::TensorSection,
            AdditiveFunctor::Composite(..) => FunctorKind::Composite,
        }
    }

    pub fn source(&self) -> &Arc<Algebra> {
        match self {
            AdditiveFunctor::Identity(a) => a,
            AdditiveFunctor::Corner(c) => c.ambient(),
            AdditiveFunctor::HomSection(c) | AdditiveFunctor::TensorSection(c) => c.algebra(),
            AdditiveFunctor::Composite(_, inner) => inner.source(),
        }
    }

    pub fn target(&self) -> &Arc<Algebra> {
        match self {
            AdditiveFunctor::Identity(a) => a,
            AdditiveFunctor::Corner(c) => c.algebra(),
            AdditiveFunctor::HomSection(c) | AdditiveFunctor::TensorSection(c) => c.ambient(),
            AdditiveFunctor::Composite(outer, _) => outer.target(),
        }
    }

    pub fn apply(&self, m: &Module) -> Module {
        match self {
            AdditiveFunctor::Identity(_) => m.clone(),
            AdditiveFunctor::Corner(c) => c.restrict(m),
            AdditiveFunctor::HomSection(c) => c.hom_section(m),
            AdditiveFunctor::TensorSection(c) => c.tensor_section(m),
            AdditiveFunctor::Composite(outer, inner) => outer.apply(&inner.apply(m)),
        }
    }

    pub fn apply_map(&self, f: &ModuleMap) -> ModuleMap {
        match self {
            AdditiveFunctor::Identity(_) => f.clone(),
            AdditiveFunctor::Corner(c) => c.restrict_map(f),
            AdditiveFunctor::HomSection(c) => c.hom_section_map(f),
            AdditiveFunctor::TensorSection(c) => c.tensor_section_map(f),
            AdditiveFunctor::Composite(outer, inner) => outer.apply_map(&inner.apply_map(f)),
        }
    }

    pub fn left_exact(&self) -> bool {
        match self {
            AdditiveFunctor::Identity(_) | AdditiveFunctor::Corner(_) | AdditiveFunctor::HomSection(_) => true,
            AdditiveFunctor::TensorSection(c) => c.tensor_is_exact(),
            AdditiveFunctor::Composite(o, i) => o.left_exact() && i.left_exact(),
        }
    }

    pub fn right_exact(&self) -> bool {
        match self {
            AdditiveFunctor::Identity(_) | AdditiveFunctor::Corner(_) | AdditiveFunctor::TensorSection(_) => true,
            AdditiveFunctor::HomSection(c) => c.section_is_exact(),
            AdditiveFunctor::Composite(o, i) => o.right_exact() && i.right_exact(),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.left_exact() && self.right_exact()
    }

    /// `F(g ∘ f) = F(g) ∘ F(f)` and `F(id) = id` on one composable pair.
    pub fn preserves_composition(&self, f: &ModuleMap, g: &ModuleMap) -> bool {
        let lhs = self.apply_map(&g.compose(f));
        let rhs = self.apply_map(g).compose(&self.apply_map(f));
        let id = self.apply_map(&ModuleMap::identity(f.source()));
        lhs.blocks() == rhs.blocks() && id.blocks() == ModuleMap::identity(&self.apply(f.source())).blocks()
    }

    /// Checks the declared exactness on every short exact sequence
    /// `0 → U → M → M/U → 0` with `M` in the universe, returning the first
    /// sequence whose image fails.
    pub fn exactness_witness(&self, universe: &Universe) -> Result<Option<ShortExactSeq>> {
        let (left, right) = (self.left_exact(), self.right_exact());
        for m in universe.modules() {
            for sub in enumerate_submodules(m)? {
                let seq = ShortExactSeq::from_submodule(&sub);
                let (fm, fe) = (self.apply_map(&seq.mono), self.apply_map(&seq.epi));
                let middle = image_submodule(&fm).spaces() == kernel_submodule(&fe).spaces();
                let ok = middle && (!left || fm.is_injective()) && (!right || fe.is_surjective());
                if !ok {
                    return Ok(Some(seq));
                }
            }
        }
        Ok(None)
    }
}

/// `F^←(T) = {D : F(D) ∈ T}` for a right exact `F`, with generators the
/// indecomposables of the source universe that land in `T`.
pub fn preimage_torsion(functor: &AdditiveFunctor, class: &ClassSpec, universe: &Universe) -> Result<ClassSpec> {
    if !functor.right_exact() {
        return Err(Error::NotExact("right"));
    }
    preimage(functor, class, universe, Polarity::Torsion)
}

/// `F^←(F)` for a left exact functor.
pub fn preimage_torsionfree(functor: &AdditiveFunctor, class: &ClassSpec, universe: &Universe) -> Result<ClassSpec> {
    if !functor.left_exact() {
        return Err(Error::NotExact("left"));
    }
    preimage(functor, class, universe, Polarity::TorsionFree)
}

fn preimage(functor: &AdditiveFunctor, class: &ClassSpec, universe: &Universe, polarity: Polarity) -> Result<ClassSpec> {
    if !crate::modcat::same_algebra(functor.target(), class.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let gens = universe.indecomposables.iter().filter(|x| class.contains(&functor.apply(x))).cloned().collect();
    ClassSpec::new(functor.source(), gens, polarity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcat::{fixtures, DimBound};

    #[test]
    fn preimage_of_zero_under_the_a2_corner() {
        let corner = Arc::new(fixtures::a2_corner());
        let l = AdditiveFunctor::Corner(corner.clone());
        let u = Universe::new(corner.ambient(), DimBound::per_vertex(2)).unwrap();
        let zero = ClassSpec::empty(corner.algebra(), Polarity::Torsion);
        let pre = preimage_torsion(&l, &zero, &u).unwrap();
        assert_eq!(pre.generators(), &[fixtures::s1(corner.ambient())]);
        let zero_free = ClassSpec::empty(corner.algebra(), Polarity::TorsionFree);
        let pre = preimage_torsionfree(&l, &zero_free, &u).unwrap();
        assert_eq!(pre.generators(), &[fixtures::s1(corner.ambient())]);
        let uc = Universe::new(corner.algebra(), DimBound::per_vertex(2)).unwrap();
        let all = ClassSpec::new(corner.algebra(), uc.indecomposables.clone(), Polarity::Torsion).unwrap();
        assert_eq!(preimage_torsion(&l, &all, &u).unwrap().generators().len(), 3);
    }

    #[test]
    fn corner_functors_are_exact_and_functorial() {
        let corner = Arc::new(fixtures::a3_corner());
        let u = Universe::new(corner.ambient(), DimBound::per_vertex(1)).unwrap();
        let l = AdditiveFunctor::Corner(corner.clone());
        assert!(l.exactness_witness(&u).unwrap().is_none());
        let uc = Universe::new(corner.algebra(), DimBound::per_vertex(1)).unwrap();
        for f in [AdditiveFunctor::HomSection(corner.clone()), AdditiveFunctor::TensorSection(corner.clone())] {
            assert!(f.is_exact());
            assert!(f.exactness_witness(&uc).unwrap().is_none());
        }
        let il = AdditiveFunctor::compose(AdditiveFunctor::HomSection(corner.clone()), l).unwrap();
        assert_eq!(il.kind(), FunctorKind::Composite);
        let p1 = fixtures::p1(corner.ambient());
        let maps = crate::modcat::hom_basis(&p1, &p1).unwrap();
        assert!(il.preserves_composition(&maps[0], &maps[0]));
    }
}
