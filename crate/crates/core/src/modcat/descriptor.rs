use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Algebra, Module};
use crate::error::Result;

/// Serializable form of a representation: per-vertex dimensions and one
/// row-major matrix per arrow.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDescriptor {
    pub dims: Vec<usize>,
    pub arrows: Vec<Vec<Vec<i64>>>,
}

impl ModuleDescriptor {
    pub fn build(&self, alg: &Arc<Algebra>) -> Result<Module> {
        Module::from_rep(alg, &self.dims, &self.arrows)
    }
}

impl From<&Module> for ModuleDescriptor {
    fn from(m: &Module) -> Self {
        let arrows = m
            .arrow_maps()
            .iter()
            .map(|a| (0..a.rows()).map(|r| a.row(r).iter().map(|&x| x as i64).collect()).collect())
            .collect();
        ModuleDescriptor { dims: m.dims().to_vec(), arrows }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcat::fixtures;

    #[test]
    fn descriptors_roundtrip() {
        let a3 = fixtures::a3();
        for m in [fixtures::p1(&a3), Module::injective(&a3, 1), Module::zero(&a3)] {
            let d = ModuleDescriptor::from(&m);
            let json = serde_json::to_string(&d).unwrap();
            let back: ModuleDescriptor = serde_json::from_str(&json).unwrap();
            assert_eq!(back.build(&a3).unwrap(), m);
        }
    }
}
