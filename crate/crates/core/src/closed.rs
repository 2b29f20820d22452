//! Closed vertex sets: checking, peeling and minimum-size search.
//!
//! A nonempty set `U` is closed when every distance realized from a member
//! `u` to the whole graph is also realized from `u` to some member of `U`.
//! Because a connected graph realizes every distance `0..=ecc(u)`, this is the
//! same as asking that the distances from `u` into `U` cover `0..=ecc(u)`.

use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Largest graph the subset searches will accept.
pub const MAX_SEARCH_VERTICES: usize = 24;

fn full_spectrum(ecc: u32) -> u64 {
    match 1u64.checked_shl(ecc + 1) {
        Some(bit) => bit - 1,
        None => u64::MAX,
    }
}

/// Whether `u` has every distance `0..=ecc(u)` realized inside `set`.
fn covers(dm: &DistanceMatrix, u: usize, set: VertexSet) -> bool {
    dm.spectrum(u, set) == full_spectrum(dm.ecc(u))
}

pub fn is_closed(dm: &DistanceMatrix, set: VertexSet) -> Result<bool> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(set.iter().all(|u| covers(dm, u, set)))
}

/// Outcome of repeatedly stripping the members that cannot be confined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelResult {
    /// The largest closed subset of the input, or empty if there is none.
    pub core: VertexSet,
    /// `layers[i]` holds the members removed in round `i + 1`.
    pub layers: Vec<VertexSet>,
}

impl PeelResult {
    /// Round in which `v` was removed (1-based). From the token at `v` the
    /// Explorer can force a visit outside the input within that many moves.
    /// `None` for core members and vertices outside the input.
    pub fn escape_depth(&self, v: usize) -> Option<usize> {
        self.layers
            .iter()
            .position(|l| l.contains(v))
            .map(|i| i + 1)
    }

    pub fn removed(&self) -> VertexSet {
        self.layers
            .iter()
            .fold(VertexSet::EMPTY, |a, &l| a.union(l))
    }
}

pub fn peel(dm: &DistanceMatrix, set: VertexSet) -> Result<PeelResult> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut current = set;
    let mut layers = Vec::new();
    while !current.is_empty() {
        let escaping: VertexSet = current
            .iter()
            .filter(|&u| !covers(dm, u, current))
            .collect();
        if escaping.is_empty() {
            break;
        }
        layers.push(escaping);
        current = current.difference(escaping);
    }
    Ok(PeelResult {
        core: current,
        layers,
    })
}

/// Smallest closed set, ties broken by lexicographically smallest member list.
pub fn min_closed_size(dm: &DistanceMatrix) -> Result<(usize, VertexSet)> {
    min_closed_superset(dm, VertexSet::EMPTY)
}

/// Smallest closed set containing `v`, same ordering as [`min_closed_size`].
pub fn min_closed_containing(dm: &DistanceMatrix, v: usize) -> Result<(usize, VertexSet)> {
    if v >= dm.n() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: dm.n(),
        });
    }
    min_closed_superset(dm, VertexSet::singleton(v))
}

fn min_closed_superset(dm: &DistanceMatrix, required: VertexSet) -> Result<(usize, VertexSet)> {
    let n = dm.n();
    if n > MAX_SEARCH_VERTICES {
        return Err(Error::TooLarge {
            n,
            cap: MAX_SEARCH_VERTICES,
        });
    }
    // A closed set containing u needs ecc(u) + 1 distinct distances.
    let floor = required
        .iter()
        .map(|v| dm.ecc(v) as usize + 1)
        .max()
        .unwrap_or(dm.radius() as usize + 1)
        .max(required.len());
    for size in floor..=n {
        let mut search = SubsetSearch {
            dm,
            size,
            required,
            allowed: (0..n).filter(|&v| (dm.ecc(v) as usize) < size).collect(),
        };
        if let Some(found) = search.run(VertexSet::EMPTY, 0) {
            return Ok((size, found));
        }
    }
    unreachable!("the full vertex set is closed")
}

struct SubsetSearch<'a> {
    dm: &'a DistanceMatrix,
    size: usize,
    required: VertexSet,
    /// Vertices whose eccentricity fits in a set of this size.
    allowed: VertexSet,
}

impl SubsetSearch<'_> {
    fn run(&mut self, chosen: VertexSet, next: usize) -> Option<VertexSet> {
        let slots = self.size - chosen.len();
        if slots == 0 {
            let ok = self.required.is_subset(chosen)
                && chosen.iter().all(|u| covers(self.dm, u, chosen));
            return ok.then_some(chosen);
        }
        let n = self.dm.n();
        let tail = self
            .allowed
            .intersection(VertexSet::full(n).difference(VertexSet::full(next)));
        // Every member still missing distances must be able to pick them up
        // from the vertices not yet considered.
        for u in chosen {
            let have = self.dm.spectrum(u, chosen);
            let missing = full_spectrum(self.dm.ecc(u)) & !have;
            if missing.count_ones() as usize > slots || missing & !self.dm.spectrum(u, tail) != 0 {
                return None;
            }
        }
        for j in tail {
            // Skipping past a required vertex would leave it out for good.
            if self.required.difference(chosen).iter().any(|r| r < j) {
                break;
            }
            if tail.len() - tail.intersection(VertexSet::full(j)).len() < slots {
                break;
            }
            if let Some(found) = self.run(chosen.with(j), j + 1) {
                return Some(found);
            }
        }
        None
    }
}
