use std::collections::BTreeMap;

use super::{assemble, decompose, validate_module, AlgebraDescriptor, DgModule};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::registry::Registry;

/// A way of cutting a DG module into a sub-module and the quotient by it
/// along a homological threshold.
pub trait Truncation: Send + Sync {
    fn name(&self) -> &'static str;

    /// Whether the strategy is defined over this algebra.
    fn supports(&self, algebra: &AlgebraDescriptor) -> bool;

    /// Returns `(sub, quot)` for the short exact sequence `sub → m → quot`.
    fn truncate(&self, m: &DgModule, threshold: i64) -> Result<(DgModule, DgModule)>;
}

/// Smart truncation for chain algebras (`d ≥ 1`): everything above the
/// threshold plus the cycles at it.
#[derive(Debug, Default, Clone, Copy)]
pub struct SmartTruncation;

/// Hard truncation for cochain algebras (`d ≤ -1`): split the degree
/// support at the threshold.
#[derive(Debug, Default, Clone, Copy)]
pub struct HardTruncation;

/// `d = 0`: every object is a sum of indecomposables concentrated in single
/// degrees, so the triangle splits by shift.
#[derive(Debug, Default, Clone, Copy)]
pub struct ShiftSplit;

impl Truncation for SmartTruncation {
    fn name(&self) -> &'static str {
        "smart"
    }

    fn supports(&self, algebra: &AlgebraDescriptor) -> bool {
        algebra.d() >= 1
    }

    fn truncate(&self, m: &DgModule, threshold: i64) -> Result<(DgModule, DgModule)> {
        truncate_smart(m, threshold)
    }
}

impl Truncation for HardTruncation {
    fn name(&self) -> &'static str {
        "hard"
    }

    fn supports(&self, algebra: &AlgebraDescriptor) -> bool {
        algebra.d() <= -1
    }

    fn truncate(&self, m: &DgModule, threshold: i64) -> Result<(DgModule, DgModule)> {
        truncate_hard(m, threshold)
    }
}

impl Truncation for ShiftSplit {
    fn name(&self) -> &'static str {
        "split"
    }

    fn supports(&self, algebra: &AlgebraDescriptor) -> bool {
        algebra.d() == 0
    }

    fn truncate(&self, m: &DgModule, threshold: i64) -> Result<(DgModule, DgModule)> {
        let alg = m.algebra();
        if alg.d() != 0 {
            return Err(Error::WrongSign {
                op: "split truncation",
                w: alg.w(),
            });
        }
        let (upper, lower): (Vec<_>, Vec<_>) = decompose(m)?
            .into_iter()
            .partition(|t| t.shift >= threshold);
        Ok((assemble(alg, &upper), assemble(alg, &lower)))
    }
}

/// Truncation strategies by name: `smart`, `hard`, `split`.
pub fn truncation_registry() -> Registry<dyn Truncation> {
    let mut reg: Registry<dyn Truncation> = Registry::new("truncation");
    reg.register("smart", Box::new(SmartTruncation));
    reg.register("hard", Box::new(HardTruncation));
    reg.register("split", Box::new(ShiftSplit));
    reg
}

/// Smart truncation at `n`. The sub-module is `... → m_{n+1} → ker ∂_n`,
/// the quotient `m_n / ker ∂_n → m_{n-1} → ...`.
pub fn truncate_smart(m: &DgModule, n: i64) -> Result<(DgModule, DgModule)> {
    let alg = m.algebra();
    let d = alg.d();
    if d <= 0 {
        return Err(Error::WrongSign {
            op: "smart truncation",
            w: alg.w(),
        });
    }
    validate_module(m).into_result()?;
    let f = m.field();
    let dim_n = m.dim(n);

    let kernel = m.diff_at(n).kernel();
    let k = kernel.cols();
    // complete the kernel basis with standard vectors
    let id = Matrix::identity(f, dim_n);
    let pivots = Matrix::hstack(f, dim_n, &[&kernel, &id]).independent_columns();
    let complement: Vec<usize> = pivots.iter().filter(|&&c| c >= k).map(|&c| c - k).collect();
    let complement_basis = id.select_columns(&complement);
    let change = Matrix::hstack(f, dim_n, &[&kernel, &complement_basis])
        .inverse()
        .expect("kernel plus complement is a basis");
    let first_rows = |range: std::ops::Range<usize>| -> Matrix {
        change
            .transpose()
            .select_columns(&range.collect::<Vec<_>>())
            .transpose()
    };
    let to_kernel = first_rows(0..k);
    let to_quotient = first_rows(k..dim_n);

    let mut sub_dims = BTreeMap::new();
    let mut sub_diff = BTreeMap::new();
    let mut sub_tmul = BTreeMap::new();
    let mut quot_dims = BTreeMap::new();
    let mut quot_diff = BTreeMap::new();
    let mut quot_tmul = BTreeMap::new();

    for deg in m.degrees() {
        if deg > n {
            sub_dims.insert(deg, m.dim(deg));
        } else if deg < n {
            quot_dims.insert(deg, m.dim(deg));
        }
    }
    sub_dims.insert(n, k);
    quot_dims.insert(n, dim_n - k);

    for (&deg, mat) in m.diff_map() {
        if deg > n + 1 {
            sub_diff.insert(deg, mat.clone());
        } else if deg == n + 1 {
            sub_diff.insert(deg, to_kernel.mul(mat));
        } else if deg == n {
            quot_diff.insert(deg, mat.mul(&complement_basis));
        } else {
            quot_diff.insert(deg, mat.clone());
        }
    }
    for (&deg, mat) in m.tmul_map() {
        let target = deg + d;
        if deg > n {
            sub_tmul.insert(deg, mat.clone());
        } else if deg == n {
            sub_tmul.insert(deg, mat.mul(&kernel));
        } else if target < n {
            quot_tmul.insert(deg, mat.clone());
        } else if target == n {
            quot_tmul.insert(deg, to_quotient.mul(mat));
        }
    }
    let sub = DgModule::new(alg, sub_dims, sub_diff, sub_tmul)?;
    let quot = DgModule::new(alg, quot_dims, quot_diff, quot_tmul)?;
    Ok((sub, quot))
}

/// Hard truncation at `n`: `(m_{≤n}, m_{>n})`.
pub fn truncate_hard(m: &DgModule, n: i64) -> Result<(DgModule, DgModule)> {
    let alg = m.algebra();
    if alg.d() >= 0 {
        return Err(Error::WrongSign {
            op: "hard truncation",
            w: alg.w(),
        });
    }
    validate_module(m).into_result()?;
    Ok((m.restrict(|deg| deg <= n), m.restrict(|deg| deg > n)))
}
