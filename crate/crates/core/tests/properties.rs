//! Structural invariants on random representations of `1 → 2 → 3`.

mod oracle;

use std::sync::Arc;

use proptest::prelude::*;
use tilted_giraud::complexes::{cone, derived_hom0, is_null_homotopic, Complex, GradedMap};
use tilted_giraud::giraud::{CoGiraudContext, GiraudContext};
use tilted_giraud::heart::{HeartObject, InducedT, TStructure};
use tilted_giraud::linalg::{Field, Mat};
use tilted_giraud::modcat::{
    cokernel, hom_basis, kernel_submodule, Algebra, DimBound, HomSpace, Module, ModuleMap, Quiver, ShortExactSeq,
    Universe,
};
use tilted_giraud::torsion::{enumerate_torsion_pairs, TorsionPair};

fn a3(p: u32) -> Arc<Algebra> {
    Algebra::path_algebra(Quiver::linear(3), Field::new(p).unwrap()).unwrap()
}

/// A representation with dimension at most `max` at each vertex.
fn module(p: u32, max: usize) -> impl Strategy<Value = Module> {
    proptest::collection::vec(0..=max, 3).prop_flat_map(move |dims| {
        let a = proptest::collection::vec(0..p, dims[0] * dims[1]);
        let b = proptest::collection::vec(0..p, dims[1] * dims[2]);
        (a, b).prop_map(move |(a, b)| {
            let alg = a3(p);
            let f = alg.field();
            let arrows = vec![Mat::from_vec(f, dims[1], dims[0], a), Mat::from_vec(f, dims[2], dims[1], b)];
            Module::new(&alg, dims.clone(), arrows).unwrap()
        })
    })
}

/// A module with a random homomorphism into a second module.
fn map(p: u32, max: usize) -> impl Strategy<Value = ModuleMap> {
    (module(p, max), module(p, max), proptest::collection::vec(0..p, 64)).prop_map(|(m, n, coords)| {
        let hom = HomSpace::new(&m, &n);
        hom.element(&coords[..hom.dim()])
    })
}

fn a3_pairs() -> (Universe, Vec<TorsionPair>) {
    let u = Universe::new(&a3(2), DimBound::per_vertex(1)).unwrap();
    let pairs = enumerate_torsion_pairs(&u).unwrap();
    (u, pairs)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn actions_respect_the_algebra(m in module(3, 2)) {
        prop_assert!(m.check_action());
    }

    #[test]
    fn hom_basis_matches_brute_force(m in module(2, 1), n in module(2, 2)) {
        let basis = hom_basis(&m, &n).unwrap();
        prop_assert!(basis.iter().all(ModuleMap::is_homomorphism));
        prop_assert_eq!(1usize << basis.len(), oracle::count_intertwiners(&m, &n));
    }

    #[test]
    fn kernel_and_cokernel_sequences_are_exact(f in map(3, 2)) {
        let ker = ShortExactSeq::from_submodule(&kernel_submodule(&f));
        prop_assert!(ker.is_exact());
        let (c, q) = cokernel(&f);
        prop_assert_eq!(c.dim() + f.rank(), f.target().dim());
        prop_assert!(q.compose(&f).is_zero());
        prop_assert!(q.is_surjective());
    }

    #[test]
    fn localization_functors_are_functorial(f in map(2, 2), g_coords in proptest::collection::vec(0u32..2, 64), k in module(2, 2)) {
        let g = {
            let hom = HomSpace::new(f.target(), &k);
            hom.element(&g_coords[..hom.dim()])
        };
        let ctx = GiraudContext::new(f.source().algebra(), &[0, 2]).unwrap();
        prop_assert_eq!(ctx.l_map(&g.compose(&f)), ctx.l_map(&g).compose(&ctx.l_map(&f)));
        prop_assert_eq!(ctx.l_map(&ModuleMap::identity(f.source())), ModuleMap::identity(&ctx.l(f.source())));
        let co = CoGiraudContext::new(f.source().algebra(), &[0, 2]).unwrap();
        prop_assert_eq!(co.r_map(&g.compose(&f)), co.r_map(&g).compose(&co.r_map(&f)));
        // l is exact: it carries kernel sequences to exact sequences
        let ses = ShortExactSeq::from_submodule(&kernel_submodule(&f));
        let image = ShortExactSeq::new(ctx.l_map(&ses.mono), ctx.l_map(&ses.epi)).unwrap();
        prop_assert!(image.is_exact());
    }

    #[test]
    fn counit_is_invertible_on_the_corner(m in module(2, 2)) {
        let ctx = GiraudContext::new(m.algebra(), &[0, 2]).unwrap();
        let n = ctx.l(&m);
        prop_assert!(ctx.counit(&n).is_iso());
        let unit = ctx.unit(&m);
        prop_assert_eq!(unit.source(), &m);
    }

    #[test]
    fn torsion_decompositions_split_into_classes(m in module(2, 2), which in 0usize..14) {
        let (_, pairs) = a3_pairs();
        let pair = &pairs[which % pairs.len()];
        let ses = pair.decompose(&m);
        prop_assert!(ses.is_exact());
        prop_assert!(pair.in_torsion(ses.left()));
        prop_assert!(pair.in_free(ses.right()));
        prop_assert!(tilted_giraud::modcat::hom_dim(ses.left(), ses.right()) == 0);
    }

    #[test]
    fn truncations_are_exact_and_land_in_their_aisles(f in map(2, 2), g in map(2, 1), which in 0usize..14, n in -1i32..=1) {
        let (_, pairs) = a3_pairs();
        let ts = InducedT::new(pairs[which % pairs.len()].clone());
        for c in [Complex::two_term(&f), Complex::two_term(&g).shift(1)] {
            let t = ts.truncate_at(&c, n).unwrap();
            prop_assert!(t.is_exact());
            prop_assert!(ts.in_le(&t.le, n));
            prop_assert!(ts.in_ge(&t.ge, n + 1));
            prop_assert!(t.incl.is_chain_map() && t.proj.is_chain_map());
        }
    }

    #[test]
    fn heart_objects_have_free_kernel_and_torsion_cokernel(f in map(2, 2), which in 0usize..14) {
        let (_, pairs) = a3_pairs();
        let ts = InducedT::new(pairs[which % pairs.len()].clone());
        let h = ts.t_cohomology(&Complex::two_term(&f), 0).unwrap();
        prop_assert!(ts.pair.in_free(&h.kernel_module()));
        prop_assert!(ts.pair.in_torsion(&h.cokernel_module()));
        prop_assert!(ts.in_le0(h.complex()) && ts.in_ge0(h.complex()));
        let again = HeartObject::new(&ts, h.complex()).unwrap();
        prop_assert!(again.is_iso_to(&h).unwrap());
    }

    #[test]
    fn cone_of_identity_is_acyclic(f in map(3, 2)) {
        let c = Complex::two_term(&f);
        let tri = cone(&GradedMap::identity(&c));
        prop_assert!(tri.cone.is_acyclic());
        prop_assert!(tri.into_cone.is_chain_map() && tri.out_of_cone.is_chain_map());
        prop_assert!(is_null_homotopic(&tri.into_cone.compose(&tri.map)));
    }

    #[test]
    fn derived_hom_matches_the_splitting_formula(f in map(2, 1), g in map(2, 1), shift in -1i32..=1) {
        let x = Complex::two_term(&f);
        let y = Complex::two_term(&g).shift(shift);
        prop_assert_eq!(derived_hom0(&x, &y).unwrap().dim(), oracle::splitting_hom_dim(&x, &y));
    }
}
