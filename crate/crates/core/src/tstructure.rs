//! Canonical t- and co-t-structures, their hearts and co-hearts, and the
//! window checks that back up the classification: orthogonality sweeps,
//! constructive truncation triangles, sparseness evidence and thick-closure
//! saturation.
//!
//! None of these sweeps proves a statement about all subcategories; the
//! reports are evidence on finite windows.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::ar::{ar_triangle, hom_dim_closed, serre};
use crate::backend::HomBackend;
use crate::dg::{decompose, truncation_registry, DgModule};
use crate::error::{Error, Result};
use crate::label::{Indec, Window};
use crate::report::{Report, Violation};
use crate::verify::sweep_pairs;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// `Σ M ⊆ M`
    T,
    /// `Σ^{-1} M ⊆ M`
    Cot,
}

pub type LabelPredicate = Arc<dyn Fn(Indec) -> bool + Send + Sync>;

/// A candidate torsion pair `(M, N)`, given by membership predicates on
/// indecomposables.
#[derive(Clone)]
pub struct TorsionSpec {
    pub kind: Kind,
    pub name: String,
    first: LabelPredicate,
    second: LabelPredicate,
}

impl fmt::Debug for TorsionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TorsionSpec")
            .field("kind", &self.kind)
            .field("name", &self.name)
            .finish_non_exhaustive()
    }
}

impl TorsionSpec {
    pub fn new(
        kind: Kind,
        name: impl Into<String>,
        first: impl Fn(Indec) -> bool + Send + Sync + 'static,
        second: impl Fn(Indec) -> bool + Send + Sync + 'static,
    ) -> Self {
        Self {
            kind,
            name: name.into(),
            first: Arc::new(first),
            second: Arc::new(second),
        }
    }

    pub fn in_first(&self, t: Indec) -> bool {
        (self.first)(t)
    }

    pub fn in_second(&self, t: Indec) -> bool {
        (self.second)(t)
    }

    /// `(Σ^k M, Σ^k N)`.
    pub fn shifted(&self, k: i64) -> TorsionSpec {
        let (first, second) = (self.first.clone(), self.second.clone());
        TorsionSpec {
            kind: self.kind,
            name: format!("Σ^{k} {}", self.name),
            first: Arc::new(move |t| first(t.suspend(-k))),
            second: Arc::new(move |t| second(t.suspend(-k))),
        }
    }

    /// Checks on `win` that the first class is closed under `Σ` (t) or
    /// `Σ^{-1}` (co-t).
    pub fn closure_check(&self, win: &Window) -> Report {
        let started = Instant::now();
        let step = match self.kind {
            Kind::T => 1,
            Kind::Cot => -1,
        };
        let mut checked = 0;
        let mut violations = Vec::new();
        for t in win.labels() {
            let next = t.suspend(step);
            if self.in_first(t) && win.contains(next) {
                checked += 1;
                if !self.in_first(next) {
                    violations.push(Violation {
                        t,
                        u: next,
                        expected: 1,
                        actual: 0,
                    });
                }
            }
        }
        Report::new(
            format!("shift closure of {}", self.name),
            violations,
            checked,
            started,
        )
    }
}

/// The canonical structure: a t-structure for `w ≥ 1` (homology in degrees
/// `≥ 0` against `< 0`), a co-t-structure for `w ≤ 0` (`≤ 0` against `> 0`).
///
/// `Σ^i X_r` has homology in degrees `i, i + d, ..., i + r d`.
pub fn canonical_spec(w: i64) -> TorsionSpec {
    let d = w - 1;
    if w >= 1 {
        TorsionSpec::new(
            Kind::T,
            format!("canonical t-structure (w={w})"),
            |t| t.shift >= 0,
            move |t| t.shift + t.width as i64 * d < 0,
        )
    } else {
        TorsionSpec::new(
            Kind::Cot,
            format!("canonical co-t-structure (w={w})"),
            |t| t.shift <= 0,
            move |t| t.shift + t.width as i64 * d > 0,
        )
    }
}

/// `Hom(M, N) = 0` on the window.
pub fn orthogonality_check(
    w: i64,
    spec: &TorsionSpec,
    win: &Window,
    backend: &dyn HomBackend,
) -> Result<Report> {
    let labels = win.labels();
    let pairs: Vec<(Indec, Indec)> = labels
        .iter()
        .filter(|t| spec.in_first(**t))
        .flat_map(|&t| {
            labels
                .iter()
                .filter(|u| spec.in_second(**u))
                .map(move |&u| (t, u))
        })
        .collect();
    sweep_pairs(
        format!("orthogonality of {} via {}", spec.name, backend.name()),
        &pairs,
        |t, u| {
            let dim = backend.hom_dim(w, t, u)?;
            Ok((dim != 0).then_some(Violation {
                t,
                u,
                expected: 0,
                actual: dim as i64,
            }))
        },
    )
}

/// A truncation triangle `sub → m → quot` with both ends decomposed.
#[derive(Debug, Clone)]
pub struct TruncationTriangle {
    pub sub: DgModule,
    pub quot: DgModule,
    pub sub_labels: Vec<Indec>,
    pub quot_labels: Vec<Indec>,
}

impl TruncationTriangle {
    /// Every summand of `sub` lies in the first class and every summand of
    /// `quot` in the second.
    pub fn respects(&self, spec: &TorsionSpec) -> bool {
        self.sub_labels.iter().all(|&t| spec.in_first(t))
            && self.quot_labels.iter().all(|&t| spec.in_second(t))
    }
}

/// The canonical decomposition triangle of `m` at threshold 0: smart
/// truncation for `w ≥ 2`, hard truncation for `w ≤ 0`, and the split
/// triangle by shift sign for `w = 1`.
pub fn decomposition_triangle(w: i64, m: &DgModule) -> Result<TruncationTriangle> {
    let alg = m.algebra();
    if alg.w() != w {
        return Err(Error::AlgebraMismatch);
    }
    let registry = truncation_registry();
    let strategy = registry
        .find(|s| s.supports(&alg))
        .expect("every sign of d has a truncation");
    let (sub, quot) = strategy.truncate(m, 0)?;
    Ok(TruncationTriangle {
        sub_labels: decompose(&sub)?,
        quot_labels: decompose(&quot)?,
        sub,
        quot,
    })
}

/// Heart `X ∩ ΣY`: labels `t` with `t ∈ X` and `Σ^{-1} t ∈ Y`.
pub fn heart_window(spec: &TorsionSpec, win: &Window) -> BTreeSet<Indec> {
    win.labels()
        .into_iter()
        .filter(|&t| spec.in_first(t) && spec.in_second(t.suspend(-1)))
        .collect()
}

/// Co-heart `A ∩ Σ^{-1}B`: labels `t` with `t ∈ A` and `Σ t ∈ B`.
pub fn coheart_window(spec: &TorsionSpec, win: &Window) -> BTreeSet<Indec> {
    win.labels()
        .into_iter()
        .filter(|&t| spec.in_first(t) && spec.in_second(t.suspend(1)))
        .collect()
}

/// `Hom(H, Σ^{<0} H) = 0` (t) or `Hom(C, Σ^{>0} C) = 0` (co-t), for shifts
/// `i_min..=-1` respectively `1..=i_max` of the window.
pub fn heart_orthogonality(
    w: i64,
    hearts: &BTreeSet<Indec>,
    win: &Window,
    mode: Kind,
    backend: &dyn HomBackend,
) -> Result<Report> {
    let shifts: Vec<i64> = match mode {
        Kind::T => (win.i_min..=win.i_max.min(-1)).collect(),
        Kind::Cot => (win.i_min.max(1)..=win.i_max).collect(),
    };
    let pairs: Vec<(Indec, Indec)> = hearts
        .iter()
        .flat_map(|&h| {
            let shifts = &shifts;
            hearts
                .iter()
                .flat_map(move |&g| shifts.iter().map(move |&n| (h, g.suspend(n))))
        })
        .collect();
    let label = match mode {
        Kind::T => "heart",
        Kind::Cot => "co-heart",
    };
    sweep_pairs(
        format!("{label} orthogonality via {} (w={w})", backend.name()),
        &pairs,
        |t, u| {
            let dim = backend.hom_dim(w, t, u)?;
            Ok((dim != 0).then_some(Violation {
                t,
                u,
                expected: 0,
                actual: dim as i64,
            }))
        },
    )
}

/// A nonzero map exhibited for a label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub label: Indec,
    pub target: Indec,
    pub dim: usize,
}

/// Evidence that hearts must be small when `w ≤ 0`.
#[derive(Debug, Clone, Serialize)]
pub struct SparsenessEvidence {
    pub report: Report,
    pub witnesses: Vec<Witness>,
    /// Base-line labels `Σ^i X_0` with their endomorphism dimension
    /// (`w = 0` only).
    pub baseline: Vec<Witness>,
}

/// For `w ≤ -1`: every label `t` has `Hom(t, St) ≠ 0`; since `St = Σ^w t`
/// with `w < 0`, no nonzero object can sit in a heart.
///
/// For `w = 0`: every label off the base line has `Hom(t, Σ^{-1} t) ≠ 0`;
/// the base-line labels have no such map and a 2-dimensional endomorphism
/// ring.
pub fn sparseness_evidence(w: i64, win: &Window) -> Result<SparsenessEvidence> {
    if w >= 1 {
        return Err(Error::WrongSign {
            op: "sparseness evidence",
            w,
        });
    }
    let started = Instant::now();
    let mut violations = Vec::new();
    let mut witnesses = Vec::new();
    let mut baseline = Vec::new();
    let labels = win.labels();
    let mut require = |t: Indec, u: Indec, ok: bool, dim: usize, expected: i64| {
        if !ok {
            violations.push(Violation {
                t,
                u,
                expected,
                actual: dim as i64,
            });
        }
    };
    for &t in &labels {
        if w <= -1 {
            let target = serre(w, t);
            let dim = hom_dim_closed(w, t, target);
            require(t, target, dim >= 1, dim, 1);
            witnesses.push(Witness {
                label: t,
                target,
                dim,
            });
        } else if t.width >= 1 {
            let target = t.suspend(-1);
            let dim = hom_dim_closed(w, t, target);
            require(t, target, dim >= 1, dim, 1);
            witnesses.push(Witness {
                label: t,
                target,
                dim,
            });
        } else {
            let below = hom_dim_closed(w, t, t.suspend(-1));
            require(t, t.suspend(-1), below == 0, below, 0);
            let end = hom_dim_closed(w, t, t);
            require(t, t, end == 2, end, 2);
            baseline.push(Witness {
                label: t,
                target: t,
                dim: end,
            });
        }
    }
    let report = Report::new(
        format!("sparseness evidence (w={w})"),
        violations,
        labels.len() as u64,
        started,
    );
    Ok(SparsenessEvidence {
        report,
        witnesses,
        baseline,
    })
}

/// `Hom(X_0, Σ^n X_0) = 0` for `1 ≤ n ≤ n_max`, i.e. `X_0` is silting.
pub fn silting_vanishing(w: i64, n_max: i64, backend: &dyn HomBackend) -> Result<Report> {
    if w >= 0 {
        return Err(Error::WrongSign {
            op: "silting check",
            w,
        });
    }
    let x0 = Indec::new(0, 0);
    let pairs: Vec<(Indec, Indec)> = (1..=n_max).map(|n| (x0, x0.suspend(n))).collect();
    sweep_pairs(
        format!("silting evidence via {} (w={w})", backend.name()),
        &pairs,
        |t, u| {
            let dim = backend.hom_dim(w, t, u)?;
            Ok((dim != 0).then_some(Violation {
                t,
                u,
                expected: 0,
                actual: dim as i64,
            }))
        },
    )
}

/// Labels reached by saturating a seed inside a window.
#[derive(Debug, Clone, Serialize)]
pub struct ClosureResult {
    pub reached: BTreeSet<Indec>,
    /// Labels whose AR triangle lies entirely inside the window.
    pub interior: BTreeSet<Indec>,
    /// Interior labels that were not reached.
    pub missing: Vec<Indec>,
    pub note: Option<String>,
}

impl ClosureResult {
    pub fn covers_interior(&self) -> bool {
        self.missing.is_empty() && self.note.is_none()
    }
}

/// Saturates `{seed}` inside `win` under `Σ^{±1}` and the two-out-of-three
/// rule on AR triangles (a triangle with two of its three terms present
/// contributes the third; the middle term counts as present when all its
/// summands are). This under-approximates the thick closure.
pub fn thick_closure_window(w: i64, seed: Indec, win: &Window) -> ClosureResult {
    let triangles: Vec<_> = win
        .labels()
        .into_iter()
        .map(|t| ar_triangle(w, t))
        .filter(|tri| tri.members().all(|m| win.contains(m)))
        .collect();
    let interior: BTreeSet<Indec> = triangles.iter().map(|tri| tri.end).collect();

    if !win.contains(seed) {
        return ClosureResult {
            reached: BTreeSet::new(),
            interior,
            missing: Vec::new(),
            note: Some(format!("seed {seed} lies outside the window")),
        };
    }

    let mut reached = BTreeSet::from([seed]);
    loop {
        let before = reached.len();
        let current: Vec<Indec> = reached.iter().copied().collect();
        for t in current {
            for step in [-1, 1] {
                let s = t.suspend(step);
                if win.contains(s) {
                    reached.insert(s);
                }
            }
        }
        for tri in &triangles {
            let start = reached.contains(&tri.start);
            let end = reached.contains(&tri.end);
            let middle = tri.middle.iter().all(|m| reached.contains(m));
            if usize::from(start) + usize::from(end) + usize::from(middle) >= 2 {
                reached.extend(tri.members());
            }
        }
        if reached.len() == before {
            break;
        }
    }
    let missing = interior.difference(&reached).copied().collect();
    ClosureResult {
        reached,
        interior,
        missing,
        note: None,
    }
}
