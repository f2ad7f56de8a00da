//! Interchangeable ways of computing `dim Hom(t, u)` between indecomposables.

use crate::ar::hom_dim_closed;
use crate::dg::{AlgebraDescriptor, DgModule};
use crate::error::Result;
use crate::label::Indec;
use crate::linalg::PrimeField;
use crate::oracle::hom_dim_oracle;
use crate::registry::Registry;

pub trait HomBackend: Send + Sync {
    fn name(&self) -> &'static str;

    /// `dim_k Hom_T(t, u)` in the category generated by a `w`-spherical
    /// object.
    fn hom_dim(&self, w: i64, t: Indec, u: Indec) -> Result<usize>;
}

/// Reads dimensions off the AR quiver.
#[derive(Debug, Default, Clone, Copy)]
pub struct ClosedForm;

impl HomBackend for ClosedForm {
    fn name(&self) -> &'static str {
        "closed"
    }

    fn hom_dim(&self, w: i64, t: Indec, u: Indec) -> Result<usize> {
        Ok(hom_dim_closed(w, t, u))
    }
}

/// Builds both modules and runs the resolution computation.
#[derive(Debug, Default, Clone, Copy)]
pub struct Oracle {
    pub field: PrimeField,
}

impl Oracle {
    pub fn new(field: PrimeField) -> Self {
        Self { field }
    }
}

impl HomBackend for Oracle {
    fn name(&self) -> &'static str {
        "oracle"
    }

    fn hom_dim(&self, w: i64, t: Indec, u: Indec) -> Result<usize> {
        let alg = AlgebraDescriptor::new(w, self.field);
        let source = DgModule::indecomposable(alg, t);
        let target = DgModule::indecomposable(alg, u);
        hom_dim_oracle(&source, 0, &target)
    }
}

/// `closed` and `oracle`, in that order.
pub fn backend_registry(field: PrimeField) -> Registry<dyn HomBackend> {
    let mut reg: Registry<dyn HomBackend> = Registry::new("hom backend");
    reg.register("closed", Box::new(ClosedForm));
    reg.register("oracle", Box::new(Oracle::new(field)));
    reg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn backends_agree_on_samples() {
        let reg = backend_registry(PrimeField::default());
        let closed = reg.get("closed").unwrap();
        let oracle = reg.get("oracle").unwrap();
        let samples = [
            (1, Indec::new(0, 2), Indec::new(0, 3), 3),
            (1, Indec::new(0, 2), Indec::new(1, 3), 3),
            (0, Indec::new(0, 5), Indec::new(0, 5), 2),
            (2, Indec::new(0, 1), Indec::new(-1, 0), 0),
            (3, Indec::new(0, 0), Indec::new(-2, 1), 1),
            (5, Indec::new(0, 0), Indec::new(5, 0), 1),
        ];
        for (w, t, u, expected) in samples {
            assert_eq!(closed.hom_dim(w, t, u).unwrap(), expected);
            assert_eq!(oracle.hom_dim(w, t, u).unwrap(), expected);
        }
    }

    #[test]
    fn oracle_works_over_small_primes() {
        let oracle = Oracle::new(PrimeField::new(2).unwrap());
        assert_eq!(
            oracle
                .hom_dim(1, Indec::new(0, 4), Indec::new(0, 4))
                .unwrap(),
            5
        );
    }
}
