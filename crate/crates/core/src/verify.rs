//! Exhaustive sweeps over windows of labels.

use std::time::Instant;

use rayon::prelude::*;

use crate::ar::serre;
use crate::backend::{ClosedForm, HomBackend, Oracle};
use crate::error::Result;
use crate::label::{Indec, Window};
use crate::linalg::PrimeField;
use crate::report::{Report, Violation};

/// Values of `w` covered by the standard sweeps.
pub const SWEEP_W: [i64; 7] = [-3, -2, -1, 0, 1, 2, 3];

/// Runs `check` on every pair in parallel and collects the violations. The
/// result does not depend on evaluation order.
pub fn sweep_pairs<F>(name: impl Into<String>, pairs: &[(Indec, Indec)], check: F) -> Result<Report>
where
    F: Fn(Indec, Indec) -> Result<Option<Violation>> + Sync,
{
    let started = Instant::now();
    let found: Vec<Option<Violation>> = pairs
        .par_iter()
        .map(|&(t, u)| check(t, u))
        .collect::<Result<_>>()?;
    let violations = found.into_iter().flatten().collect();
    Ok(Report::new(name, violations, pairs.len() as u64, started))
}

pub fn window_pairs(win: &Window) -> Vec<(Indec, Indec)> {
    let labels = win.labels();
    labels
        .iter()
        .flat_map(|&t| labels.iter().map(move |&u| (t, u)))
        .collect()
}

fn mismatch(t: Indec, u: Indec, expected: usize, actual: usize) -> Option<Violation> {
    (expected != actual).then_some(Violation {
        t,
        u,
        expected: expected as i64,
        actual: actual as i64,
    })
}

/// Closed form against the oracle on every window pair; `expected` in a
/// violation is the oracle value.
pub fn closed_vs_oracle(w: i64, win: &Window, field: PrimeField) -> Result<Report> {
    compare_backends(w, win, &Oracle::new(field), &ClosedForm)
}

pub fn compare_backends(
    w: i64,
    win: &Window,
    reference: &dyn HomBackend,
    candidate: &dyn HomBackend,
) -> Result<Report> {
    sweep_pairs(
        format!("{} vs {} (w={w})", candidate.name(), reference.name()),
        &window_pairs(win),
        |t, u| {
            Ok(mismatch(
                t,
                u,
                reference.hom_dim(w, t, u)?,
                candidate.hom_dim(w, t, u)?,
            ))
        },
    )
}

/// `dim Hom(t, u) = dim Hom(u, Σ^w t)` on every window pair.
pub fn serre_duality(w: i64, win: &Window, backend: &dyn HomBackend) -> Result<Report> {
    sweep_pairs(
        format!("serre duality via {} (w={w})", backend.name()),
        &window_pairs(win),
        |t, u| {
            Ok(mismatch(
                t,
                u,
                backend.hom_dim(w, t, u)?,
                backend.hom_dim(w, u, serre(w, t))?,
            ))
        },
    )
}

/// Graded endomorphisms of `X_0` form `k[X]/(X²)` with `X` in degree `w`:
/// `dim Hom(X_0, Σ^n X_0) = [n = 0] + [n = w]`.
pub fn sphericity(w: i64, n_min: i64, n_max: i64, backend: &dyn HomBackend) -> Result<Report> {
    let x0 = Indec::new(0, 0);
    let pairs: Vec<(Indec, Indec)> = (n_min..=n_max).map(|n| (x0, x0.suspend(n))).collect();
    sweep_pairs(
        format!("sphericity via {} (w={w})", backend.name()),
        &pairs,
        |t, u| {
            let expected = usize::from(u.shift == 0) + usize::from(u.shift == w);
            Ok(mismatch(t, u, expected, backend.hom_dim(w, t, u)?))
        },
    )
}
