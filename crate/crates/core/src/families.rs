//! Named graph families and small-graph enumeration.
//!
//! Index conventions (tests address named vertices through these):
//!
//! * `path:n` is `0 - 1 - ... - (n-1)`; `cycle:n` adds the edge `(n-1, 0)`.
//! * `star:k` has center `0` and leaves `1..=k`.
//! * `lattice:NxM` has `N` columns and `M` rows. Cell `(col, row)` with
//!   `col in 1..=N`, `row in 1..=M` gets index `(row-1)*N + (col-1)`.
//! * `lollipop:b,k` is a clique on `0..c` with `c = b-k+2`, followed by the
//!   path `c-1 - c - ... - (b-1)`.
//! * `spider:h;l1,l2,...` has center `0`, handle `1..=h` ending at the leaf
//!   `h`, then each leg as a consecutive index run starting next to the center.
//! * `randtree:n,seed` decodes a Prüfer sequence drawn from a ChaCha8 stream.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Star(usize),
    Lattice { n: usize, m: usize },
    Lollipop { b: usize, k: usize },
    Spider { handle: usize, legs: Vec<usize> },
    RandomTree { n: usize, seed: u64 },
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidFamily(format!("{self}: {msg}")));
        match *self {
            FamilySpec::Path(n) | FamilySpec::Complete(n) if n < 1 => bad("need n >= 1"),
            FamilySpec::Cycle(n) if n < 3 => bad("need n >= 3"),
            FamilySpec::Star(k) if k < 1 => bad("need k >= 1"),
            FamilySpec::Lattice { n, m } if n < 1 || m < 1 => bad("need n, m >= 1"),
            FamilySpec::Lollipop { b, k } if !(2 <= k && k <= b) => bad("need 2 <= k <= b"),
            FamilySpec::Spider { ref legs, .. } if legs.is_empty() || legs.contains(&0) => {
                bad("need at least one leg, all of positive length")
            }
            FamilySpec::RandomTree { n, .. } if n < 1 => bad("need n >= 1"),
            _ => Ok(()),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            FamilySpec::Path(n)
            | FamilySpec::Cycle(n)
            | FamilySpec::Complete(n)
            | FamilySpec::RandomTree { n, .. } => n,
            FamilySpec::Star(k) => k + 1,
            FamilySpec::Lattice { n, m } => n * m,
            FamilySpec::Lollipop { b, .. } => b,
            FamilySpec::Spider { handle, ref legs } => 1 + handle + legs.iter().sum::<usize>(),
        }
    }

    pub fn generate(&self) -> Result<Graph> {
        self.generate_with_cap(crate::graph::DEFAULT_VERTEX_CAP)
    }

    pub fn generate_with_cap(&self, cap: usize) -> Result<Graph> {
        self.validate()?;
        let n = self.vertex_count();
        if n > cap {
            return Err(Error::TooLarge { n, cap });
        }
        Graph::with_cap(n, self.edges(), cap)
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        match *self {
            FamilySpec::Path(n) => (1..n).map(|i| (i - 1, i)).collect(),
            FamilySpec::Cycle(n) => (0..n).map(|i| (i, (i + 1) % n)).collect(),
            FamilySpec::Complete(n) => clique(0, n),
            FamilySpec::Star(k) => (1..=k).map(|i| (0, i)).collect(),
            FamilySpec::Lattice { n, m } => {
                let mut e = Vec::new();
                for row in 0..m {
                    for col in 0..n {
                        let i = row * n + col;
                        if col + 1 < n {
                            e.push((i, i + 1));
                        }
                        if row + 1 < m {
                            e.push((i, i + n));
                        }
                    }
                }
                e
            }
            FamilySpec::Lollipop { b, k } => {
                let c = b - k + 2;
                let mut e = clique(0, c);
                e.extend((c..b).map(|i| (i - 1, i)));
                e
            }
            FamilySpec::Spider { handle, ref legs } => {
                let mut e: Vec<_> = (1..=handle).map(|i| (i - 1, i)).collect();
                let mut next = handle + 1;
                for &len in legs {
                    e.push((0, next));
                    for i in next + 1..next + len {
                        e.push((i - 1, i));
                    }
                    next += len;
                }
                e
            }
            FamilySpec::RandomTree { n, seed } => random_tree_edges(n, seed),
        }
    }
}

fn clique(start: usize, len: usize) -> Vec<(usize, usize)> {
    let mut e = Vec::new();
    for u in start..start + len {
        for v in u + 1..start + len {
            e.push((u, v));
        }
    }
    e
}

/// Lattice index of cell `(col, row)` in a lattice with `n` columns, using
/// 1-based coordinates.
pub fn lattice_index(n: usize, col: usize, row: usize) -> usize {
    (row - 1) * n + (col - 1)
}

/// Inverse of [`lattice_index`].
pub fn lattice_coords(n: usize, index: usize) -> (usize, usize) {
    (index % n + 1, index / n + 1)
}

/// Index of the handle leaf of `spider:h;...` (the center when `h = 0`).
pub fn spider_handle_leaf(handle: usize) -> usize {
    handle
}

/// Indices of the leg tips of `spider:h;legs`.
pub fn spider_leg_tips(handle: usize, legs: &[usize]) -> Vec<usize> {
    let mut tips = Vec::with_capacity(legs.len());
    let mut end = handle;
    for &len in legs {
        end += len;
        tips.push(end);
    }
    tips
}

fn random_tree_edges(n: usize, seed: u64) -> Vec<(usize, usize)> {
    if n < 2 {
        return Vec::new();
    }
    if n == 2 {
        return vec![(0, 1)];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    prufer_decode(n, &code)
}

/// Decodes a Prüfer sequence of length `n - 2` into the edges of a labeled tree.
pub fn prufer_decode(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    debug_assert_eq!(code.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let leaf = (0..n)
            .find(|&v| degree[v] == 1)
            .expect("a leaf always exists");
        edges.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// A seeded random connected graph on `n` vertices: each edge present with
/// probability 1/2, resampled until connected.
pub fn random_connected_graph(n: usize, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.5) {
                    edges.push((u, v));
                }
            }
        }
        match Graph::new(n, edges) {
            Err(Error::Disconnected) => continue,
            other => return other,
        }
    }
}

fn pair_list(n: usize) -> Vec<(usize, usize)> {
    clique(0, n)
}

/// Every connected labeled graph on `n` vertices, ordered by edge bitmask.
pub fn all_connected_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 7, "labeled enumeration is only practical for n <= 7");
    let pairs = pair_list(n);
    (0u64..1 << pairs.len())
        .filter_map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e);
            Graph::new(n, edges).ok()
        })
        .collect()
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices (the labeling with the smallest edge bitmask).
pub fn connected_graphs_up_to_isomorphism(n: usize) -> Vec<Graph> {
    assert!(
        n <= 6,
        "isomorphism enumeration is only practical for n <= 6"
    );
    let pairs = pair_list(n);
    let index = |u: usize, v: usize| {
        let (a, b) = (u.min(v), u.max(v));
        pairs.iter().position(|&p| p == (a, b)).unwrap()
    };
    let perms = permutations(n);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in all_connected_graphs(n) {
        let canon = perms
            .iter()
            .map(|p| {
                g.edges()
                    .iter()
                    .fold(0u64, |acc, &(u, v)| acc | 1 << index(p[u], p[v]))
            })
            .min()
            .unwrap_or(0);
        if seen.insert(canon) {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| canon >> i & 1 == 1)
                .map(|(_, &e)| e);
            out.push(Graph::new(n, edges).expect("relabeling keeps connectivity"));
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::Complete(n) => write!(f, "complete:{n}"),
            FamilySpec::Star(k) => write!(f, "star:{k}"),
            FamilySpec::Lattice { n, m } => write!(f, "lattice:{n}x{m}"),
            FamilySpec::Lollipop { b, k } => write!(f, "lollipop:{b},{k}"),
            FamilySpec::Spider { handle, legs } => {
                let legs: Vec<String> = legs.iter().map(|l| l.to_string()).collect();
                write!(f, "spider:{handle};{}", legs.join(","))
            }
            FamilySpec::RandomTree { n, seed } => write!(f, "randtree:{n},{seed}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidFamily(s.to_string());
        let (tag, args) = s.split_once(':').ok_or_else(bad)?;
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let pair = |sep: char| -> Result<(usize, usize)> {
            let (a, b) = args.split_once(sep).ok_or_else(bad)?;
            Ok((num(a)?, num(b)?))
        };
        let spec = match tag.trim() {
            "path" => FamilySpec::Path(num(args)?),
            "cycle" => FamilySpec::Cycle(num(args)?),
            "complete" => FamilySpec::Complete(num(args)?),
            "star" => FamilySpec::Star(num(args)?),
            "lattice" => {
                let (n, m) = pair('x')?;
                FamilySpec::Lattice { n, m }
            }
            "lollipop" => {
                let (b, k) = pair(',')?;
                FamilySpec::Lollipop { b, k }
            }
            "spider" => {
                let (h, legs) = args.split_once(';').ok_or_else(bad)?;
                let legs = legs.split(',').map(num).collect::<Result<Vec<_>>>()?;
                FamilySpec::Spider {
                    handle: num(h)?,
                    legs,
                }
            }
            "randtree" => {
                let (n, seed) = args.split_once(',').ok_or_else(bad)?;
                FamilySpec::RandomTree {
                    n: num(n)?,
                    seed: seed.trim().parse().map_err(|_| bad())?,
                }
            }
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().generate().unwrap()
    }

    #[test]
    fn lattice_two_by_two_is_four_cycle() {
        let l = gen("lattice:2x2");
        assert_eq!(l.edges().len(), 4);
        assert!((0..4).all(|v| l.degree(v) == 2));
        // 0-1-3-2-0
        assert!(l.has_edge(0, 1) && l.has_edge(1, 3) && l.has_edge(3, 2) && l.has_edge(2, 0));
    }

    #[test]
    fn lollipop_six_four() {
        let g = gen("lollipop:6,4");
        assert_eq!(g.n(), 6);
        assert_eq!(g.edges().len(), 6 + 2);
        for u in 0..4 {
            for v in u + 1..4 {
                assert!(g.has_edge(u, v));
            }
        }
        assert!(g.has_edge(3, 4) && g.has_edge(4, 5));
        assert_eq!(g.degree(5), 1);
    }

    #[test]
    fn counterexample_spider() {
        let g = gen("spider:4;5,5");
        assert_eq!(g.n(), 15);
        assert!(g.is_tree());
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.degree(spider_handle_leaf(4)), 1);
        assert_eq!(spider_leg_tips(4, &[5, 5]), vec![9, 14]);
        assert!(g.has_edge(0, 5) && g.has_edge(0, 10));
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in [
            "path:9",
            "cycle:7",
            "complete:5",
            "star:4",
            "lattice:4x5",
            "lollipop:8,3",
            "spider:4;5,5",
            "randtree:10,42",
        ] {
            let spec: FamilySpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
            let g = spec.generate().unwrap();
            assert_eq!(g.n(), spec.vertex_count());
            assert_eq!(Graph::parse(&g.to_edge_list()).unwrap(), g);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        for s in [
            "cycle:2",
            "lollipop:5,6",
            "lollipop:5,1",
            "spider:1;",
            "lattice:0x3",
            "foo:3",
            "path",
        ] {
            assert!(s.parse::<FamilySpec>().is_err(), "{s}");
        }
        assert!(matches!(
            FamilySpec::Path(30).generate(),
            Err(Error::TooLarge { n: 30, .. })
        ));
    }

    #[test]
    fn random_trees_are_deterministic_trees() {
        for n in 1..=12 {
            let a = FamilySpec::RandomTree { n, seed: 7 }.generate().unwrap();
            let b = FamilySpec::RandomTree { n, seed: 7 }.generate().unwrap();
            assert_eq!(a, b);
            assert!(a.is_tree());
        }
    }

    #[test]
    fn enumeration_counts() {
        // connected labeled graphs: 1, 1, 4, 38, 728
        let counts: Vec<usize> = (1..=5).map(|n| all_connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 38, 728]);
        // connected unlabeled graphs: 1, 1, 2, 6, 21, 112
        let iso: Vec<usize> = (1..=6)
            .map(|n| connected_graphs_up_to_isomorphism(n).len())
            .collect();
        assert_eq!(iso, vec![1, 1, 2, 6, 21, 112]);
    }
}
