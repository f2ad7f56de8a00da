//! Combinatorics on labels `Σ^i X_r`: AR translation, Serre functor, the
//! hammock regions `F^±`, closed-form Hom dimensions and the AR quiver.
//!
//! For `w ≠ 1` each component of the AR quiver is a copy of `ℤA∞`. We lay it
//! out with `Σ^{-d}` moving one column to the right and the width `r` as
//! the row, so `τ = Σ^d` moves one column to the left. For `w = 1` the
//! components are homogeneous tubes, one per shift.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use petgraph::algo::connected_components;
use petgraph::graph::{NodeIndex, UnGraph};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::label::{Indec, Window};

/// AR translation `τ = Σ^d`.
pub fn tau(w: i64, t: Indec) -> Indec {
    t.suspend(w - 1)
}

/// Serre functor `S = Σ^w`.
pub fn serre(w: i64, t: Indec) -> Indec {
    t.suspend(w)
}

pub fn same_component(w: i64, t: Indec, u: Indec) -> bool {
    let d = w - 1;
    if d == 0 {
        t.shift == u.shift
    } else {
        (t.shift - u.shift) % d == 0
    }
}

/// Number of columns `u` sits to the right of `t`, when both are in the same
/// `ℤA∞` component.
fn column_offset(d: i64, t: Indec, u: Indec) -> Option<i64> {
    let diff = t.shift - u.shift;
    (diff % d == 0).then(|| diff / d)
}

/// `u ∈ F^+(t)`: the half-strip running right from `t`, bounded by the two
/// diagonals through `t` and the base line.
pub fn in_f_plus(w: i64, t: Indec, u: Indec) -> Result<bool> {
    let d = w - 1;
    if d == 0 {
        return Err(Error::UndefinedForTube);
    }
    Ok(match column_offset(d, t, u) {
        Some(p) if p >= 0 => {
            let s = u.width as i64;
            p <= s && s <= p + t.width as i64
        }
        _ => false,
    })
}

/// `u ∈ F^-(t)`: the half-strip running left from `t` and up to infinity.
pub fn in_f_minus(w: i64, t: Indec, u: Indec) -> Result<bool> {
    let d = w - 1;
    if d == 0 {
        return Err(Error::UndefinedForTube);
    }
    Ok(match column_offset(d, t, u) {
        Some(p) => {
            let q = -p;
            let r = t.width as i64;
            (0..=r).contains(&q) && u.width as i64 >= r - q
        }
        None => false,
    })
}

/// `dim Hom(t, u)` from the AR-quiver description.
///
/// For `w ≠ 1` this is `[u ∈ F^+(t)] + [u ∈ F^-(St)]`; the two regions only
/// meet when `w = 0` and `u = t`. For `w = 1` it is `min(r, s) + 1` when `u`
/// is `Σ^i X_s` or `Σ^{i+1} X_s` and zero otherwise.
pub fn hom_dim_closed(w: i64, t: Indec, u: Indec) -> usize {
    if w == 1 {
        return match u.shift - t.shift {
            0 | 1 => t.width.min(u.width) + 1,
            _ => 0,
        };
    }
    let plus = in_f_plus(w, t, u).expect("w != 1");
    let minus = in_f_minus(w, serre(w, t), u).expect("w != 1");
    plus as usize + minus as usize
}

/// An AR triangle `start → ⊕ middle → end`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArTriangleData {
    pub start: Indec,
    pub middle: Vec<Indec>,
    pub end: Indec,
}

impl ArTriangleData {
    pub fn members(&self) -> impl Iterator<Item = Indec> + '_ {
        std::iter::once(self.start)
            .chain(self.middle.iter().copied())
            .chain(std::iter::once(self.end))
    }
}

/// The AR triangle ending in `t = Σ^i X_r`:
/// `Σ^{i+d} X_r → Σ^{i+d} X_{r-1} ⊕ Σ^i X_{r+1} → Σ^i X_r`, the first
/// middle term dropped when `r = 0`.
pub fn ar_triangle(w: i64, t: Indec) -> ArTriangleData {
    let start = tau(w, t);
    let mut middle = Vec::with_capacity(2);
    if t.width > 0 {
        middle.push(Indec::new(start.shift, t.width - 1));
    }
    middle.push(Indec::new(t.shift, t.width + 1));
    middle.sort();
    ArTriangleData {
        start,
        middle,
        end: t,
    }
}

/// Where a label sits in the drawing of its component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LatticePos {
    pub component: i64,
    pub col: i64,
    pub row: i64,
}

pub fn lattice_position(w: i64, t: Indec) -> LatticePos {
    let d = w - 1;
    let r = t.width as i64;
    if d == 0 {
        return LatticePos {
            component: t.shift,
            col: r,
            row: 0,
        };
    }
    let component = t.shift.rem_euclid(d.abs());
    LatticePos {
        component,
        col: -2 * (t.shift - component) / d - r,
        row: r,
    }
}

/// The part of the AR quiver spanned by the labels of a window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Quiver {
    pub w: i64,
    pub vertices: Vec<Indec>,
    pub arrows: Vec<(Indec, Indec)>,
}

/// Vertices are the window labels; arrows are the irreducible maps
/// `Σ^i X_r → Σ^{i-d} X_{r+1}` and `Σ^i X_r → Σ^i X_{r-1}` with both ends in
/// the window.
pub fn quiver_window(w: i64, win: &Window) -> Quiver {
    let d = w - 1;
    let vertices = win.labels();
    let mut arrows = Vec::new();
    for &v in &vertices {
        let up = Indec::new(v.shift - d, v.width + 1);
        if win.contains(up) {
            arrows.push((v, up));
        }
        if v.width > 0 {
            let down = Indec::new(v.shift, v.width - 1);
            if win.contains(down) {
                arrows.push((v, down));
            }
        }
    }
    arrows.sort();
    Quiver {
        w,
        vertices,
        arrows,
    }
}

impl Quiver {
    pub fn component_count(&self) -> usize {
        let index: BTreeMap<Indec, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(k, &v)| (v, k))
            .collect();
        let mut g: UnGraph<(), ()> = UnGraph::with_capacity(self.vertices.len(), self.arrows.len());
        for _ in &self.vertices {
            g.add_node(());
        }
        for (a, b) in &self.arrows {
            g.add_edge(NodeIndex::new(index[a]), NodeIndex::new(index[b]), ());
        }
        connected_components(&g)
    }

    /// Graphviz rendering; node attributes carry the lattice coordinates so
    /// `neato -n` reproduces the usual picture.
    pub fn to_dot(&self) -> String {
        let id = |t: &Indec| format!("\"{},{}\"", t.shift, t.width);
        let mut out = String::new();
        writeln!(out, "digraph ar_quiver {{").unwrap();
        writeln!(out, "  graph [w={}];", self.w).unwrap();
        writeln!(out, "  node [shape=plaintext];").unwrap();
        for v in &self.vertices {
            let pos = lattice_position(self.w, *v);
            let y = if self.w == 1 {
                -2 * pos.component
            } else {
                pos.row
            };
            writeln!(
                out,
                "  {} [label=\"{}\", component={}, col={}, row={}, pos=\"{},{}!\"];",
                id(v),
                v,
                pos.component,
                pos.col,
                pos.row,
                pos.col,
                y
            )
            .unwrap();
        }
        for (a, b) in &self.arrows {
            writeln!(out, "  {} -> {};", id(a), id(b)).unwrap();
        }
        writeln!(out, "}}").unwrap();
        out
    }
}

/// Connected components of the window's quiver. The window must cover at
/// least `|d|` consecutive shifts (at least one for `w = 1`).
pub fn component_count(w: i64, win: &Window) -> Result<usize> {
    let needed = (w - 1).abs().max(1);
    if win.span() < needed {
        return Err(Error::WindowTooSmall {
            span: win.span(),
            needed,
        });
    }
    Ok(quiver_window(w, win).component_count())
}
