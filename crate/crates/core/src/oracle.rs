//! Hom dimensions computed from resolutions, independent of the AR-quiver
//! combinatorics in [`crate::ar`].
//!
//! `X_r` has the semifree resolution `P` with generators `e` in degree 0 and
//! `f` in degree `(r+1)d + 1`, `∂f = T^{r+1} e` (the cone of multiplication
//! by `T^{r+1}` on `A`). A degree-`m` map `P → N` is a pair
//! `(φ(e), φ(f)) ∈ N_m ⊕ N_{m+F}` with `F = (r+1)d + 1`, and
//! `Hom_T(X_r, N) = H_0 Hom_A(P, N)`.

use std::collections::BTreeMap;

use crate::dg::{decompose, AlgebraDescriptor, DgModule};
use crate::error::{Error, Result};
use crate::linalg::{homology_dim, Matrix};

/// The two-generator resolution of `X_r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Resolution {
    pub width: usize,
    pub d: i64,
}

impl Resolution {
    pub fn e_degree(&self) -> i64 {
        0
    }

    pub fn f_degree(&self) -> i64 {
        (self.width as i64 + 1) * self.d + 1
    }
}

pub fn resolution_of_width(alg: &AlgebraDescriptor, r: usize) -> Resolution {
    Resolution {
        width: r,
        d: alg.d(),
    }
}

/// The piece `Hom_1 → Hom_0 → Hom_{-1}` of `Hom_A(P, N)`.
#[derive(Debug, Clone)]
pub struct HomComplexSlice {
    pub d_in: Matrix,
    pub d_out: Matrix,
}

impl HomComplexSlice {
    pub fn new(res: &Resolution, target: &DgModule) -> Self {
        Self {
            d_in: hom_differential(res, target, 1),
            d_out: hom_differential(res, target, 0),
        }
    }

    pub fn homology(&self) -> Result<usize> {
        homology_dim(&self.d_in, &self.d_out)
    }
}

/// `D_m : Hom_m → Hom_{m-1}`,
/// `(a, b) ↦ (∂a, ∂b - (-1)^{m + m(r+1)d} T^{r+1} a)`.
fn hom_differential(res: &Resolution, n: &DgModule, m: i64) -> Matrix {
    let f = n.field();
    let big_f = res.f_degree();
    let tw = (res.width as i64 + 1) * res.d;
    let sign = f.sign(m + m * tw);
    let t_pow = n.t_power(res.width + 1, m).scale(f.neg(sign));
    let upper_right = Matrix::zeros(f, n.dim(m - 1), n.dim(m + big_f));
    Matrix::block2(&n.diff_at(m), &upper_right, &t_pow, &n.diff_at(m + big_f))
}

/// `dim Hom(X_r, N)` for the resolution of `X_r`.
pub fn hom_from_resolution(res: &Resolution, target: &DgModule) -> Result<usize> {
    HomComplexSlice::new(res, target).homology()
}

/// `dim Hom_T(m, Σ^n target)`: decompose the source, then sum the
/// resolution computation over its summands.
pub fn hom_dim_oracle(m: &DgModule, n: i64, target: &DgModule) -> Result<usize> {
    Ok(*hom_table(m, target, n, n)?.get(&n).unwrap_or(&0))
}

/// `dim Hom_T(m, Σ^n target)` for every `n` in `n_min..=n_max`.
pub fn hom_table(
    m: &DgModule,
    target: &DgModule,
    n_min: i64,
    n_max: i64,
) -> Result<BTreeMap<i64, usize>> {
    let alg = m.algebra();
    if target.algebra() != alg {
        return Err(Error::AlgebraMismatch);
    }
    let source = decompose(m)?;
    // membership in T for the target
    decompose(target)?;
    let mut table = BTreeMap::new();
    for n in n_min..=n_max {
        let mut total = 0;
        for t in &source {
            let res = resolution_of_width(&alg, t.width);
            total += hom_from_resolution(&res, &target.suspend(n - t.shift))?;
        }
        table.insert(n, total);
    }
    Ok(table)
}
