use std::collections::BTreeMap;

use super::{validate_module, DgModule};
use crate::error::{Error, Result};
use crate::label::Indec;
use crate::linalg::{Matrix, PrimeField};

/// Homology of a DG module together with the induced action of `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedModuleWithOperator {
    field: PrimeField,
    d: i64,
    dims: BTreeMap<i64, usize>,
    /// `op[n]`: `H_n → H_{n+d}`
    op: BTreeMap<i64, Matrix>,
}

impl GradedModuleWithOperator {
    pub fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn degree_of_operator(&self) -> i64 {
        self.d
    }

    pub fn op_at(&self, n: i64) -> Matrix {
        self.op
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field, self.dim(n + self.d), self.dim(n)))
    }

    /// Graded Jordan decomposition of the nilpotent operator.
    ///
    /// With `c(n, k) = rank(op^k : H_n → H_{n+kd})`, the number of chains
    /// starting in degree `n` with length at least `k + 1` is
    /// `c(n, k) - c(n - d, k + 1)`; differences in `k` give exact lengths.
    /// The same formula is the ungraded one when `d = 0`.
    pub fn jordan_labels(&self) -> Result<Vec<Indec>> {
        let d = self.d;
        let mut ranks: BTreeMap<(i64, usize), usize> = BTreeMap::new();
        for (&n, &h) in &self.dims {
            let mut power = Matrix::identity(self.field, h);
            let mut k = 0usize;
            loop {
                let rank = power.rank();
                if rank == 0 {
                    break;
                }
                ranks.insert((n, k), rank);
                if d == 0 && k > h {
                    return Err(Error::NotInCategory { degree: n });
                }
                power = self.op_at(n + k as i64 * d).mul(&power);
                k += 1;
            }
        }
        let c = |n: i64, k: usize| ranks.get(&(n, k)).copied().unwrap_or(0);
        let starts = |n: i64, k: usize| c(n, k) - c(n - d, k + 1);

        let mut labels = Vec::new();
        for &n in self.dims.keys() {
            let mut k = 0;
            while c(n, k) > 0 {
                let exact = starts(n, k) - starts(n, k + 1);
                labels.extend(std::iter::repeat_n(Indec::new(n, k), exact));
                k += 1;
            }
        }
        labels.sort();
        Ok(labels)
    }
}

/// Per-degree data for a chosen homology basis: the columns of `basis` are
/// a basis of the cycles, the first `boundaries` of them spanning the
/// boundaries and the rest representing homology classes.
struct CycleBasis {
    basis: Matrix,
    boundaries: usize,
}

impl CycleBasis {
    fn classes(&self) -> usize {
        self.basis.cols() - self.boundaries
    }

    fn representatives(&self) -> Matrix {
        let idx: Vec<usize> = (self.boundaries..self.basis.cols()).collect();
        self.basis.select_columns(&idx)
    }
}

fn cycle_basis(m: &DgModule, n: i64) -> CycleBasis {
    let f = m.field();
    let cycles = m.diff_at(n).kernel();
    let incoming = m.diff_at(n + 1);
    let boundaries = incoming.select_columns(&incoming.independent_columns());
    let both = Matrix::hstack(f, m.dim(n), &[&boundaries, &cycles]);
    // boundaries are independent and come first, so they are all pivots
    let basis = both.select_columns(&both.independent_columns());
    CycleBasis {
        boundaries: boundaries.cols(),
        basis,
    }
}

/// Homology of `m` with the induced `T`-action.
pub fn homology_with_action(m: &DgModule) -> Result<GradedModuleWithOperator> {
    validate_module(m).into_result()?;
    let d = m.algebra().d();
    let bases: BTreeMap<i64, CycleBasis> = m.degrees().map(|n| (n, cycle_basis(m, n))).collect();

    let mut dims = BTreeMap::new();
    let mut op = BTreeMap::new();
    for (&n, cb) in &bases {
        if cb.classes() == 0 {
            continue;
        }
        dims.insert(n, cb.classes());
        let Some(target) = bases.get(&(n + d)).filter(|t| t.classes() > 0) else {
            continue;
        };
        let image = m.tmul_at(n).mul(&cb.representatives());
        let coords = target
            .basis
            .solve(&image)
            .ok_or_else(|| Error::InvalidModule {
                degree: n,
                reason: "T does not preserve cycles".into(),
            })?;
        let rows: Vec<usize> = (target.boundaries..target.basis.cols()).collect();
        let induced = coords.transpose().select_columns(&rows).transpose();
        if !induced.is_zero() {
            op.insert(n, induced);
        }
    }
    Ok(GradedModuleWithOperator {
        field: m.field(),
        d,
        dims,
        op,
    })
}

/// Indecomposable summands of `m` as a sorted multiset of labels; empty for
/// an acyclic module.
pub fn decompose(m: &DgModule) -> Result<Vec<Indec>> {
    homology_with_action(m)?.jordan_labels()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dg::{assemble, make_algebra, AlgebraDescriptor};

    fn alg(w: i64) -> AlgebraDescriptor {
        make_algebra(w, 32003).unwrap()
    }

    #[test]
    fn indecomposable_homology_is_itself() {
        for w in -2..=3 {
            let a = alg(w);
            for r in 0..4 {
                let t = Indec::new(1, r);
                let m = DgModule::indecomposable(a, t);
                let h = homology_with_action(&m).unwrap();
                assert_eq!(h.dims(), m.dims());
                assert_eq!(h.jordan_labels().unwrap(), vec![t]);
            }
        }
    }

    #[test]
    fn contractible_pair_is_zero() {
        let a = alg(2);
        let f = a.field();
        let dims = BTreeMap::from([(0, 1), (1, 1)]);
        let diff = BTreeMap::from([(1, Matrix::identity(f, 1))]);
        let m = DgModule::new(a, dims, diff, BTreeMap::new()).unwrap();
        let h = homology_with_action(&m).unwrap();
        assert_eq!(h.total_dim(), 0);
        assert!(decompose(&m).unwrap().is_empty());
    }

    #[test]
    fn truncated_resolution_of_k() {
        // w = 2, d = 1. Basis: e (deg 0), Te (deg 1), f (deg 2), with
        // ∂f = Te and T e = Te. Homology is k in degree 0.
        let a = alg(2);
        let f = a.field();
        let dims = BTreeMap::from([(0, 1), (1, 1), (2, 1)]);
        let diff = BTreeMap::from([(2, Matrix::identity(f, 1))]);
        let tmul = BTreeMap::from([(0, Matrix::identity(f, 1))]);
        let m = DgModule::new(a, dims, diff, tmul).unwrap();
        let h = homology_with_action(&m).unwrap();
        assert_eq!(h.dims(), &BTreeMap::from([(0, 1)]));
        assert_eq!(decompose(&m).unwrap(), vec![Indec::new(0, 0)]);
    }

    #[test]
    fn decompose_sum() {
        let a = alg(2);
        let m = assemble(a, &[Indec::new(0, 2), Indec::new(1, 0)]);
        assert_eq!(
            decompose(&m).unwrap(),
            vec![Indec::new(0, 2), Indec::new(1, 0)]
        );
    }

    #[test]
    fn decompose_overlapping_tube_blocks() {
        let a = alg(1);
        let labels = vec![
            Indec::new(0, 0),
            Indec::new(0, 2),
            Indec::new(0, 2),
            Indec::new(0, 3),
            Indec::new(2, 1),
        ];
        assert_eq!(decompose(&assemble(a, &labels)).unwrap(), labels);
    }

    #[test]
    fn non_nilpotent_tube_object_is_rejected() {
        // w = 1: k[T]/(T - 1) in degree 0
        let a = alg(1);
        let f = a.field();
        let dims = BTreeMap::from([(0, 1)]);
        let tmul = BTreeMap::from([(0, Matrix::identity(f, 1))]);
        let m = DgModule::new(a, dims, BTreeMap::new(), tmul).unwrap();
        assert_eq!(decompose(&m), Err(Error::NotInCategory { degree: 0 }));
    }

    #[test]
    fn invalid_module_is_rejected() {
        let a = alg(3);
        let f = a.field();
        let dims = BTreeMap::from([(0, 1), (1, 1), (2, 1)]);
        let diff = BTreeMap::from([(1, Matrix::identity(f, 1)), (2, Matrix::identity(f, 1))]);
        let m = DgModule::new(a, dims, diff, BTreeMap::new()).unwrap();
        assert!(matches!(
            homology_with_action(&m),
            Err(Error::InvalidModule { .. })
        ));
    }
}
