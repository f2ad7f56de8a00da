use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The indecomposable `Σ^shift X_width`, where `X_r = k[T]/(T^{r+1})`.
///
/// Ordering is lexicographic on `(shift, width)`; every sorted output in the
/// crate uses it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[i64; 2]", try_from = "[i64; 2]")]
pub struct Indec {
    pub shift: i64,
    pub width: usize,
}

impl Indec {
    pub const fn new(shift: i64, width: usize) -> Self {
        Self { shift, width }
    }

    /// `Σ^k` applied to the label.
    pub const fn suspend(self, k: i64) -> Self {
        Self {
            shift: self.shift + k,
            width: self.width,
        }
    }

    /// Homological degrees carrying the homology of `Σ^i X_r` for `T` of
    /// degree `d`: `i, i + d, ..., i + r d`.
    pub fn degrees(self, d: i64) -> impl Iterator<Item = i64> {
        (0..=self.width as i64).map(move |j| self.shift + j * d)
    }
}

impl From<Indec> for [i64; 2] {
    fn from(t: Indec) -> Self {
        [t.shift, t.width as i64]
    }
}

impl TryFrom<[i64; 2]> for Indec {
    type Error = Error;

    fn try_from([i, r]: [i64; 2]) -> Result<Self> {
        if r < 0 {
            return Err(Error::Parse(format!("negative width {r}")));
        }
        Ok(Indec::new(i, r as usize))
    }
}

impl fmt::Display for Indec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shift {
            0 => write!(f, "X_{}", self.width),
            1 => write!(f, "ΣX_{}", self.width),
            i => write!(f, "Σ^{i}X_{}", self.width),
        }
    }
}

/// Parses the command-line syntax `i,r`.
impl FromStr for Indec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (i, r) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected `i,r`, got `{s}`")))?;
        let shift = i
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad shift `{i}`")))?;
        let width = r
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad width `{r}`")))?;
        Ok(Indec::new(shift, width))
    }
}

/// A finite sweep domain: shifts `i_min..=i_max`, widths `0..=r_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub i_min: i64,
    pub i_max: i64,
    pub r_max: usize,
}

impl Default for Window {
    fn default() -> Self {
        Self {
            i_min: -8,
            i_max: 8,
            r_max: 6,
        }
    }
}

impl Window {
    pub fn new(i_min: i64, i_max: i64, r_max: usize) -> Result<Self> {
        if i_min > i_max {
            return Err(Error::Parse(format!(
                "window shift bounds out of order: {i_min} > {i_max}"
            )));
        }
        Ok(Self {
            i_min,
            i_max,
            r_max,
        })
    }

    /// Window with no labels.
    pub const fn empty() -> Self {
        Self {
            i_min: 1,
            i_max: 0,
            r_max: 0,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.i_min > self.i_max
    }

    /// Number of shifts covered.
    pub fn span(&self) -> i64 {
        (self.i_max - self.i_min + 1).max(0)
    }

    pub fn contains(&self, t: Indec) -> bool {
        (self.i_min..=self.i_max).contains(&t.shift) && t.width <= self.r_max
    }

    /// All labels, sorted.
    pub fn labels(&self) -> Vec<Indec> {
        (self.i_min..=self.i_max)
            .flat_map(|i| (0..=self.r_max).map(move |r| Indec::new(i, r)))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.span() as usize * (self.r_max + 1)
    }
}
