//! DG modules over `A = k[T]`, with `T` in homological degree `d = w - 1`
//! and zero differential.
//!
//! Grading is homological: the differential has degree `-1`, `T` has degree
//! `d` and `Σ` raises degrees by one. Modules satisfy
//! `∂(T·x) = (-1)^d T·∂(x)`.

mod homology;
mod json;
mod truncation;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::label::Indec;
use crate::linalg::{Matrix, PrimeField};

pub use homology::{decompose, homology_with_action, GradedModuleWithOperator};
pub use json::{ComponentJson, DgModuleJson, MapJson};
pub use truncation::{
    truncate_hard, truncate_smart, truncation_registry, HardTruncation, ShiftSplit,
    SmartTruncation, Truncation,
};

/// The DG algebra `k[T]` for a given spherical dimension `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraDescriptor {
    w: i64,
    d: i64,
    field: PrimeField,
}

impl AlgebraDescriptor {
    pub fn new(w: i64, field: PrimeField) -> Self {
        Self { w, d: w - 1, field }
    }

    pub fn w(&self) -> i64 {
        self.w
    }

    /// Degree of `T`.
    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }
}

pub fn make_algebra(w: i64, p: u64) -> Result<AlgebraDescriptor> {
    Ok(AlgebraDescriptor::new(w, PrimeField::new(p)?))
}

/// Which DG-module axiom failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomViolation {
    D2Nonzero,
    Leibniz,
}

impl AxiomViolation {
    pub fn as_str(&self) -> &'static str {
        match self {
            AxiomViolation::D2Nonzero => "d2_nonzero",
            AxiomViolation::Leibniz => "leibniz",
        }
    }
}

/// Outcome of [`validate_module`]: the first violating degree, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModuleCheck {
    pub violation: Option<(i64, AxiomViolation)>,
}

impl ModuleCheck {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }

    pub fn reason(&self) -> Option<&'static str> {
        self.violation.map(|(_, v)| v.as_str())
    }

    pub fn into_result(self) -> Result<()> {
        match self.violation {
            None => Ok(()),
            Some((degree, v)) => Err(Error::InvalidModule {
                degree,
                reason: v.as_str().to_string(),
            }),
        }
    }
}

/// A finite-dimensional DG module over `k[T]`.
///
/// Only nonzero components and nonzero maps are stored; `diff[n]` goes from
/// degree `n` to `n - 1` and `tmul[n]` from degree `n` to `n + d`.
#[derive(Clone, PartialEq, Eq)]
pub struct DgModule {
    algebra: AlgebraDescriptor,
    dims: BTreeMap<i64, usize>,
    diff: BTreeMap<i64, Matrix>,
    tmul: BTreeMap<i64, Matrix>,
}

impl fmt::Debug for DgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DgModule")
            .field("w", &self.algebra.w)
            .field("dims", &self.dims)
            .field("diff", &self.diff)
            .field("tmul", &self.tmul)
            .finish()
    }
}

impl DgModule {
    /// Assembles a module, checking matrix shapes against the dimensions.
    /// The DG axioms are not checked here; see [`validate_module`].
    pub fn new(
        algebra: AlgebraDescriptor,
        dims: BTreeMap<i64, usize>,
        diff: BTreeMap<i64, Matrix>,
        tmul: BTreeMap<i64, Matrix>,
    ) -> Result<Self> {
        let dims: BTreeMap<i64, usize> = dims.into_iter().filter(|&(_, n)| n > 0).collect();
        let dim = |n: i64| dims.get(&n).copied().unwrap_or(0);
        let d = algebra.d;
        for (&n, m) in &diff {
            if m.shape() != (dim(n - 1), dim(n)) {
                return Err(Error::ShapeMismatch(format!(
                    "differential from degree {n} is {:?}, expected {:?}",
                    m.shape(),
                    (dim(n - 1), dim(n))
                )));
            }
        }
        for (&n, m) in &tmul {
            if m.shape() != (dim(n + d), dim(n)) {
                return Err(Error::ShapeMismatch(format!(
                    "T-action from degree {n} is {:?}, expected {:?}",
                    m.shape(),
                    (dim(n + d), dim(n))
                )));
            }
        }
        if diff
            .values()
            .chain(tmul.values())
            .any(|m| m.field() != algebra.field)
        {
            return Err(Error::AlgebraMismatch);
        }
        let nonzero = |maps: BTreeMap<i64, Matrix>| -> BTreeMap<i64, Matrix> {
            maps.into_iter().filter(|(_, m)| !m.is_zero()).collect()
        };
        Ok(Self {
            algebra,
            dims,
            diff: nonzero(diff),
            tmul: nonzero(tmul),
        })
    }

    pub fn zero(algebra: AlgebraDescriptor) -> Self {
        Self {
            algebra,
            dims: BTreeMap::new(),
            diff: BTreeMap::new(),
            tmul: BTreeMap::new(),
        }
    }

    /// `Σ^i X_r`: basis `1, T, ..., T^r` placed in degrees `i + j d`, zero
    /// differential, `T` moving each basis vector to the next.
    pub fn indecomposable(algebra: AlgebraDescriptor, t: Indec) -> Self {
        let f = algebra.field;
        let d = algebra.d;
        let r = t.width;
        let mut dims = BTreeMap::new();
        let mut tmul = BTreeMap::new();
        if d == 0 {
            dims.insert(t.shift, r + 1);
            tmul.insert(
                t.shift,
                Matrix::from_fn(f, r + 1, r + 1, |i, j| (i == j + 1) as i64),
            );
        } else {
            for j in 0..=r as i64 {
                dims.insert(t.shift + j * d, 1);
                if j < r as i64 {
                    tmul.insert(t.shift + j * d, Matrix::identity(f, 1));
                }
            }
        }
        Self::new(algebra, dims, BTreeMap::new(), tmul).expect("indecomposable shapes")
    }

    pub fn algebra(&self) -> AlgebraDescriptor {
        self.algebra
    }

    pub fn field(&self) -> PrimeField {
        self.algebra.field
    }

    pub fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    /// Degrees with a nonzero component, ascending.
    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.dims.keys().copied()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Differential out of degree `n`, as a `dim(n-1) × dim(n)` matrix.
    pub fn diff_at(&self, n: i64) -> Matrix {
        self.diff
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field(), self.dim(n - 1), self.dim(n)))
    }

    /// `T` out of degree `n`, as a `dim(n+d) × dim(n)` matrix.
    pub fn tmul_at(&self, n: i64) -> Matrix {
        let d = self.algebra.d;
        self.tmul
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field(), self.dim(n + d), self.dim(n)))
    }

    /// `T^k` out of degree `n`.
    pub fn t_power(&self, k: usize, n: i64) -> Matrix {
        let d = self.algebra.d;
        let mut acc = Matrix::identity(self.field(), self.dim(n));
        for j in 0..k as i64 {
            acc = self.tmul_at(n + j * d).mul(&acc);
        }
        acc
    }

    pub(crate) fn diff_map(&self) -> &BTreeMap<i64, Matrix> {
        &self.diff
    }

    pub(crate) fn tmul_map(&self) -> &BTreeMap<i64, Matrix> {
        &self.tmul
    }

    /// `Σ^k` of the module, with the Koszul signs `(-1)^k` on the
    /// differential and `(-1)^{kd}` on the `T`-action.
    pub fn suspend(&self, k: i64) -> DgModule {
        let f = self.field();
        let d = self.algebra.d;
        let shift = |maps: &BTreeMap<i64, Matrix>, sign: u64| -> BTreeMap<i64, Matrix> {
            maps.iter().map(|(&n, m)| (n + k, m.scale(sign))).collect()
        };
        DgModule {
            algebra: self.algebra,
            dims: self.dims.iter().map(|(&n, &v)| (n + k, v)).collect(),
            diff: shift(&self.diff, f.sign(k)),
            tmul: shift(&self.tmul, f.sign(k * d)),
        }
    }

    /// Conjugates by a degreewise change of basis `P_n` (identity where no
    /// matrix is given): `∂_n ↦ P_{n-1} ∂_n P_n^{-1}`, `T_n ↦ P_{n+d} T_n P_n^{-1}`.
    pub fn base_change(&self, changes: &BTreeMap<i64, Matrix>) -> Result<DgModule> {
        let f = self.field();
        let d = self.algebra.d;
        let mut fwd = BTreeMap::new();
        let mut inv = BTreeMap::new();
        for &n in self.dims.keys() {
            let p = changes
                .get(&n)
                .cloned()
                .unwrap_or_else(|| Matrix::identity(f, self.dim(n)));
            if p.shape() != (self.dim(n), self.dim(n)) {
                return Err(Error::ShapeMismatch(format!(
                    "base change in degree {n} has shape {:?}",
                    p.shape()
                )));
            }
            inv.insert(n, p.inverse().ok_or(Error::Singular(n))?);
            fwd.insert(n, p);
        }
        let conj = |maps: &BTreeMap<i64, Matrix>, step: i64| -> BTreeMap<i64, Matrix> {
            maps.iter()
                .map(|(&n, m)| (n, fwd[&(n + step)].mul(m).mul(&inv[&n])))
                .collect()
        };
        DgModule::new(
            self.algebra,
            self.dims.clone(),
            conj(&self.diff, -1),
            conj(&self.tmul, d),
        )
    }

    /// Keeps the components in degrees satisfying `keep` and every map
    /// between kept degrees.
    pub(crate) fn restrict(&self, keep: impl Fn(i64) -> bool) -> DgModule {
        let d = self.algebra.d;
        let filter = |maps: &BTreeMap<i64, Matrix>, step: i64| -> BTreeMap<i64, Matrix> {
            maps.iter()
                .filter(|(&n, _)| keep(n) && keep(n + step))
                .map(|(&n, m)| (n, m.clone()))
                .collect()
        };
        DgModule {
            algebra: self.algebra,
            dims: self
                .dims
                .iter()
                .filter(|(&n, _)| keep(n))
                .map(|(&n, &v)| (n, v))
                .collect(),
            diff: filter(&self.diff, -1),
            tmul: filter(&self.tmul, d),
        }
    }
}

/// Checks `∂∂ = 0` and `∂T = (-1)^d T∂`, degree by degree in ascending
/// order, and reports the first failure.
pub fn validate_module(m: &DgModule) -> ModuleCheck {
    let f = m.field();
    let d = m.algebra.d;
    for n in m.degrees() {
        let dd = m.diff_at(n - 1).mul(&m.diff_at(n));
        if !dd.is_zero() {
            return ModuleCheck {
                violation: Some((n, AxiomViolation::D2Nonzero)),
            };
        }
        let lhs = m.diff_at(n + d).mul(&m.tmul_at(n));
        let rhs = m.tmul_at(n - 1).mul(&m.diff_at(n)).scale(f.sign(d));
        if lhs != rhs {
            return ModuleCheck {
                violation: Some((n, AxiomViolation::Leibniz)),
            };
        }
    }
    ModuleCheck { violation: None }
}

/// Degreewise block-diagonal sum. The empty sum is the zero module, which
/// needs an algebra to live over.
pub fn direct_sum(algebra: AlgebraDescriptor, ms: &[DgModule]) -> Result<DgModule> {
    if ms.iter().any(|m| m.algebra != algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let f = algebra.field;
    let d = algebra.d;
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    // offsets[k][n]: start of summand k inside degree n
    let mut offsets: Vec<BTreeMap<i64, usize>> = Vec::with_capacity(ms.len());
    for m in ms {
        let mut off = BTreeMap::new();
        for (&n, &v) in &m.dims {
            let slot = dims.entry(n).or_insert(0);
            off.insert(n, *slot);
            *slot += v;
        }
        offsets.push(off);
    }
    let dim = |n: i64| dims.get(&n).copied().unwrap_or(0);
    let mut diff: BTreeMap<i64, Matrix> = BTreeMap::new();
    let mut tmul: BTreeMap<i64, Matrix> = BTreeMap::new();
    for (m, off) in ms.iter().zip(&offsets) {
        for (maps, out, step) in [(&m.diff, &mut diff, -1), (&m.tmul, &mut tmul, d)] {
            for (&n, blk) in maps {
                let target = out
                    .entry(n)
                    .or_insert_with(|| Matrix::zeros(f, dim(n + step), dim(n)));
                let (r0, c0) = (off[&(n + step)], off[&n]);
                for i in 0..blk.rows() {
                    for j in 0..blk.cols() {
                        target.set(r0 + i, c0 + j, blk.get(i, j));
                    }
                }
            }
        }
    }
    DgModule::new(algebra, dims, diff, tmul)
}

/// `⊕ Σ^{i_k} X_{r_k}` for a list of labels.
pub fn assemble(algebra: AlgebraDescriptor, labels: &[Indec]) -> DgModule {
    let parts: Vec<DgModule> = labels
        .iter()
        .map(|&t| DgModule::indecomposable(algebra, t))
        .collect();
    direct_sum(algebra, &parts).expect("summands share the algebra")
}
