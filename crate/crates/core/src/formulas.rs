//! Closed-form values and bounds for cycles, trees and rectangular lattices,
//! plus the explicit closed sets behind the lattice upper bounds.

use crate::distance::{apsp, DistanceMatrix};
use crate::error::{Error, Result};
use crate::families::lattice_index;
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundPair {
    pub lower: u32,
    pub upper: u32,
}

impl BoundPair {
    pub fn exact(value: u32) -> Self {
        BoundPair {
            lower: value,
            upper: value,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn contains(&self, value: u32) -> bool {
        self.lower <= value && value <= self.upper
    }
}

/// Visited count on the `n`-cycle: `n` for powers of two, otherwise
/// `n (p - 1) / p` with `p` the smallest odd prime factor of `n`.
pub fn f_star_cycle(n: u64) -> Result<u64> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle length {n} < 3")));
    }
    let odd = n >> n.trailing_zeros();
    if odd == 1 {
        return Ok(n);
    }
    let p = (3..)
        .step_by(2)
        .find(|p| odd.is_multiple_of(*p))
        .expect("an odd number > 1 has an odd prime factor");
    Ok(n / p * (p - 1))
}

fn tree_distances(g: &Graph) -> Result<DistanceMatrix> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    Ok(apsp(g))
}

/// `diam + ℓ(v) + 1` for a tree, where `ℓ(v)` is the distance from `v` to
/// the nearest vertex on a longest path.
pub fn tree_value(g: &Graph, v: usize) -> Result<u32> {
    let dm = tree_distances(g)?;
    if v >= g.n() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: g.n(),
        });
    }
    Ok(dm.diameter() + dm.ell(v) + 1)
}

pub fn tree_lower_bound(g: &Graph) -> Result<u32> {
    Ok(tree_distances(g)?.diameter() + 1)
}

/// Lower bound from a set the Explorer can force the token into.
pub fn ecc_lower_bound(dm: &DistanceMatrix, set: VertexSet) -> Result<u32> {
    set.iter()
        .map(|v| dm.ecc(v) + 1)
        .min()
        .ok_or(Error::EmptySet)
}

type CellMap = fn(usize, usize, usize) -> (usize, usize);
type Relabel = Box<dyn Fn(usize) -> usize>;

/// Rectangular lattice geometry in 1-based `(col, row)` coordinates with
/// `cols >= rows`.
#[derive(Clone, Copy, Debug)]
struct Lattice {
    cols: usize,
    rows: usize,
}

impl Lattice {
    fn index(&self, col: usize, row: usize) -> usize {
        lattice_index(self.cols, col, row)
    }

    fn coords(&self, v: usize) -> (usize, usize) {
        crate::families::lattice_coords(self.cols, v)
    }

    fn column(&self, col: usize) -> VertexSet {
        (1..=self.rows).map(|r| self.index(col, r)).collect()
    }

    fn row(&self, row: usize) -> VertexSet {
        (1..=self.cols).map(|c| self.index(c, row)).collect()
    }

    /// Two short sides plus the square's column segment, for `cols == rows`.
    fn square_boundary_set(&self) -> VertexSet {
        let n = self.cols;
        let mut set = self.column(1).union(self.column(n));
        for c in 3..=n.saturating_sub(2) {
            set.insert(self.index(c, n - 1));
        }
        set
    }

    /// Images of `set` under the eight symmetries of a square lattice.
    fn square_symmetric_images(&self, set: VertexSet) -> Vec<VertexSet> {
        let n = self.cols;
        let maps: [CellMap; 8] = [
            |_, c, r| (c, r),
            |n, c, r| (n + 1 - c, r),
            |n, c, r| (c, n + 1 - r),
            |n, c, r| (n + 1 - c, n + 1 - r),
            |_, c, r| (r, c),
            |n, c, r| (n + 1 - r, c),
            |n, c, r| (r, n + 1 - c),
            |n, c, r| (n + 1 - r, n + 1 - c),
        ];
        maps.iter()
            .map(|f| {
                set.iter()
                    .map(|v| {
                        let (c, r) = self.coords(v);
                        let (c2, r2) = f(n, c, r);
                        self.index(c2, r2)
                    })
                    .collect()
            })
            .collect()
    }
}

/// Puts `(n, m, v)` in the `n >= m` orientation. Returns the lattice, the
/// vertex in that orientation and a map back to the caller's labels.
fn normalize(n: usize, m: usize, v: usize) -> Result<(Lattice, usize, Relabel)> {
    if n < 2 || m < 2 {
        return Err(Error::InvalidParameter(format!(
            "lattice {n}x{m} needs both sides >= 2"
        )));
    }
    if n * m > crate::vertex_set::MAX_SET_VERTICES {
        return Err(Error::TooLarge {
            n: n * m,
            cap: crate::vertex_set::MAX_SET_VERTICES,
        });
    }
    if v >= n * m {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: n * m,
        });
    }
    if n >= m {
        return Ok((Lattice { cols: n, rows: m }, v, Box::new(|x| x)));
    }
    // Transpose: (col, row) in n x m becomes (row, col) in m x n.
    let lat = Lattice { cols: m, rows: n };
    let (c, r) = crate::families::lattice_coords(n, v);
    let back = move |x: usize| {
        let (c2, r2) = crate::families::lattice_coords(m, x);
        lattice_index(n, r2, c2)
    };
    Ok((lat, lattice_index(m, r, c), Box::new(back)))
}

/// Bounds on the visited count for lattice `n x m` from vertex `v`.
pub fn lattice_bounds(n: usize, m: usize, v: usize) -> Result<BoundPair> {
    let (lat, v, _) = normalize(n, m, v)?;
    let (big, small) = (lat.cols as u32, lat.rows as u32);
    if big % 2 == 1 || small % 2 == 1 {
        return Ok(BoundPair::exact(big + small - 1));
    }
    let mut upper = 2 * small + big - 2;
    // The boundary set only beats 2m + n - 2 on squares of side 4 or more.
    if big == small && big >= 4 {
        let b = lat.square_boundary_set();
        if lat
            .square_symmetric_images(b)
            .iter()
            .any(|img| img.contains(v))
        {
            upper = upper.min(3 * big - 4);
        }
    }
    Ok(BoundPair {
        lower: big + small,
        upper,
    })
}

/// A closed set containing `v` realizing the lattice upper bound.
///
/// With an odd side this is a geodesic corner-to-corner staircase through `v`
/// and the central vertices. Write `p` for the row and `q` for the column, let
/// `a` be the corner farthest from `v` and `b` its antipode. Starting at `b`
/// the staircase changes `q` up to `v`'s column, then `p` through `v` to the
/// nearest central row, `q` to the nearest central column, `p` across the
/// central rows, `q` to `a`'s column and finally `p` to `a`'s row.
///
/// With both sides even it is the two short sides plus `v`'s long line, of
/// size `2m + n - 2`.
pub fn lattice_closed_witness(n: usize, m: usize, v: usize) -> Result<VertexSet> {
    let (lat, v, back) = normalize(n, m, v)?;
    let (cols, rows) = (lat.cols, lat.rows);
    let (vq, vp) = lat.coords(v);
    let local: VertexSet = if cols % 2 == 0 && rows % 2 == 0 {
        lat.column(1).union(lat.column(cols)).union(lat.row(vp))
    } else {
        let far = |x: usize, len: usize| if x - 1 > len - x { 1 } else { len };
        let centers = |len: usize| {
            if len % 2 == 1 {
                (len.div_ceil(2), len.div_ceil(2))
            } else {
                (len / 2, len / 2 + 1)
            }
        };
        let (ap, aq) = (far(vp, rows), far(vq, cols));
        let (bp, bq) = (rows + 1 - ap, cols + 1 - aq);
        let nearest = |(c1, c2): (usize, usize), x: usize| {
            if c1.abs_diff(x) <= c2.abs_diff(x) {
                (c1, c2)
            } else {
                (c2, c1)
            }
        };
        let (p_near, p_far) = nearest(centers(rows), vp);
        let (q_near, _) = nearest(centers(cols), vq);

        let mut path = VertexSet::singleton(lat.index(bq, bp));
        let (mut p, mut q) = (bp, bq);
        let walk_q = |p: usize, q: &mut usize, to: usize, path: &mut VertexSet| {
            while *q != to {
                *q = if to > *q { *q + 1 } else { *q - 1 };
                path.insert(lat.index(*q, p));
            }
        };
        walk_q(p, &mut q, vq, &mut path);
        let walk_p = |p: &mut usize, q: usize, to: usize, path: &mut VertexSet| {
            while *p != to {
                *p = if to > *p { *p + 1 } else { *p - 1 };
                path.insert(lat.index(q, *p));
            }
        };
        walk_p(&mut p, q, p_near, &mut path);
        walk_q(p, &mut q, q_near, &mut path);
        walk_p(&mut p, q, p_far, &mut path);
        walk_q(p, &mut q, aq, &mut path);
        walk_p(&mut p, q, ap, &mut path);
        debug_assert_eq!(path.len(), cols + rows - 1);
        path
    };
    Ok(local.iter().map(back).collect())
}
