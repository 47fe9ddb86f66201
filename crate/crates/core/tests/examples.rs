//! Every example is compiled into this test binary and run once.

macro_rules! example {
    ($name:ident, $path:literal) => {
        mod $name {
            #![allow(dead_code)]
            include!($path);

            #[test]
            fn runs() {
                main().expect("example succeeds");
            }
        }
    };
}

example!(linear_algebra, "../examples/linear_algebra.rs");
example!(modules, "../examples/modules.rs");
example!(torsion_pairs, "../examples/torsion_pairs.rs");
example!(giraud_transport, "../examples/giraud_transport.rs");
example!(derived_category, "../examples/derived_category.rs");
example!(heart, "../examples/heart.rs");
example!(heart_localization, "../examples/heart_localization.rs");
example!(scenario, "../examples/scenario.rs");
