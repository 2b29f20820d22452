//! All-pairs hop distances and the quantities derived from them.

use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Geodesic distances of a connected graph, with eccentricities and
/// per-vertex spheres precomputed.
#[derive(Clone, Debug)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
    ecc: Vec<u32>,
    diameter: u32,
    radius: u32,
    centers: VertexSet,
    /// `spheres[u][d]` is the set of vertices at distance exactly `d` from `u`.
    spheres: Vec<Vec<VertexSet>>,
}

/// Breadth-first search from every vertex.
pub fn apsp(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let mut dist = vec![u32::MAX; n * n];
    let mut spheres = Vec::with_capacity(n);
    for s in 0..n {
        let mut layers = vec![VertexSet::singleton(s)];
        let mut seen = VertexSet::singleton(s);
        dist[s * n + s] = 0;
        loop {
            let mut next = VertexSet::EMPTY;
            for v in *layers.last().unwrap() {
                next = next.union(g.neighbors(v));
            }
            let next = next.difference(seen);
            if next.is_empty() {
                break;
            }
            let d = layers.len() as u32;
            for v in next {
                dist[s * n + v] = d;
            }
            seen = seen.union(next);
            layers.push(next);
        }
        spheres.push(layers);
    }
    let ecc: Vec<u32> = spheres.iter().map(|l| l.len() as u32 - 1).collect();
    let diameter = *ecc.iter().max().unwrap();
    let radius = *ecc.iter().min().unwrap();
    let centers = (0..n).filter(|&v| ecc[v] == radius).collect();
    DistanceMatrix {
        n,
        dist,
        ecc,
        diameter,
        radius,
        centers,
        spheres,
    }
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dist(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }

    pub fn ecc(&self, v: usize) -> u32 {
        self.ecc[v]
    }

    pub fn diameter(&self) -> u32 {
        self.diameter
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn centers(&self) -> VertexSet {
        self.centers
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Vertices at distance exactly `d` from `v`; empty past the eccentricity.
    pub fn sphere(&self, v: usize, d: u32) -> VertexSet {
        self.spheres[v]
            .get(d as usize)
            .copied()
            .unwrap_or(VertexSet::EMPTY)
    }

    /// Whether `u` lies on some geodesic whose length is the diameter.
    pub fn on_diameter_path(&self, u: usize) -> bool {
        let diam = self.diameter;
        (0..self.n).any(|a| {
            self.ecc[a] == diam
                && self
                    .sphere(a, diam)
                    .iter()
                    .any(|b| self.dist(a, u) + self.dist(u, b) == diam)
        })
    }

    /// All vertices lying on some diameter geodesic.
    pub fn diameter_path_vertices(&self) -> VertexSet {
        (0..self.n).filter(|&u| self.on_diameter_path(u)).collect()
    }

    /// Distance from `v` to the nearest vertex on a diameter geodesic.
    pub fn ell(&self, v: usize) -> u32 {
        self.diameter_path_vertices()
            .iter()
            .map(|u| self.dist(u, v))
            .min()
            .expect("a diameter path always exists")
    }

    /// The set of distances from `u` realized by members of `set`, as a bitmask
    /// over distances.
    pub fn spectrum(&self, u: usize, set: VertexSet) -> u64 {
        set.iter().fold(0u64, |acc, x| acc | 1 << self.dist(u, x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{lattice_index, FamilySpec};
    use proptest::prelude::*;

    fn dm(s: &str) -> DistanceMatrix {
        apsp(
            &s.parse::<FamilySpec>()
                .unwrap()
                .generate_with_cap(32)
                .unwrap(),
        )
    }

    #[test]
    fn path_three() {
        let d = dm("path:3");
        assert_eq!(d.dist(0, 2), 2);
        assert_eq!(d.diameter(), 2);
        assert_eq!(d.radius(), 1);
        assert_eq!(d.centers().to_vec(), vec![1]);
    }

    #[test]
    fn four_cycle_eccentricities() {
        let d = dm("cycle:4");
        assert_eq!(d.dist(0, 2), 2);
        assert!((0..4).all(|v| d.ecc(v) == 2));
    }

    #[test]
    fn lattice_corner_distance() {
        let d = dm("lattice:5x5");
        assert_eq!(d.dist(lattice_index(5, 1, 1), lattice_index(5, 5, 5)), 8);
        assert_eq!(d.ecc(lattice_index(5, 1, 1)), 8);
    }

    #[test]
    fn spheres() {
        assert_eq!(dm("cycle:6").sphere(0, 3).to_vec(), vec![3]);
        assert_eq!(dm("path:4").sphere(1, 2).to_vec(), vec![3]);
        let l = dm("lattice:2x2");
        let expect: VertexSet = [lattice_index(2, 2, 1), lattice_index(2, 1, 2)]
            .into_iter()
            .collect();
        assert_eq!(l.sphere(lattice_index(2, 1, 1), 1), expect);
        assert_eq!(dm("path:4").sphere(0, 7), VertexSet::EMPTY);
        assert_eq!(dm("path:4").sphere(2, 0).to_vec(), vec![2]);
    }

    #[test]
    fn diameter_path_membership() {
        assert!(dm("path:4").on_diameter_path(1));
        assert!(dm("star:3").on_diameter_path(0));
        let spider = dm("spider:4;5,5");
        // Brute force over endpoint pairs: only the two leg tips realize 10.
        let pairs: Vec<(usize, usize)> = (0..15)
            .flat_map(|a| (a + 1..15).map(move |b| (a, b)))
            .filter(|&(a, b)| spider.dist(a, b) == 10)
            .collect();
        assert_eq!(pairs, vec![(9, 14)]);
        assert!(!spider.on_diameter_path(4));
        assert!(spider.on_diameter_path(0));
    }

    #[test]
    fn ell_values() {
        let p = dm("path:7");
        assert!((0..7).all(|v| p.ell(v) == 0));
        let spider = dm("spider:4;5,5");
        assert_eq!(spider.ell(4), 4);
        assert!(!spider.on_diameter_path(4));
        let star = dm("star:4");
        assert!((1..=4).all(|v| star.ell(v) == 0));
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (2usize..=9, any::<u64>())
            .prop_map(|(n, seed)| crate::families::random_connected_graph(n, seed).unwrap())
    }

    proptest! {
        #[test]
        fn metric_axioms(g in arb_graph()) {
            let d = apsp(&g);
            let n = g.n();
            for u in 0..n {
                for v in 0..n {
                    prop_assert_eq!(d.dist(u, v), d.dist(v, u));
                    prop_assert_eq!(d.dist(u, v) == 0, u == v);
                    prop_assert_eq!(d.dist(u, v) == 1, g.has_edge(u, v));
                    for w in 0..n {
                        prop_assert!(d.dist(u, v) <= d.dist(u, w) + d.dist(w, v));
                    }
                }
                // every distance up to the eccentricity is realized
                let realized: std::collections::BTreeSet<u32> = (0..n).map(|x| d.dist(u, x)).collect();
                prop_assert_eq!(realized, (0..=d.ecc(u)).collect());
                // spheres partition the vertex set
                let mut union = VertexSet::EMPTY;
                for r in 0..=d.ecc(u) {
                    let s = d.sphere(u, r);
                    prop_assert!(!s.intersects(union));
                    union = union.union(s);
                }
                prop_assert_eq!(union, g.vertices());
            }
            prop_assert!(d.radius() <= d.diameter() && d.diameter() <= 2 * d.radius());
        }

        #[test]
        fn tree_diameter_vertices_induce_connected_subgraph(n in 1usize..=14, seed in any::<u64>()) {
            let t = FamilySpec::RandomTree { n, seed }.generate().unwrap();
            let d = apsp(&t);
            let on = d.diameter_path_vertices();
            prop_assert!(!on.is_empty());
            let start = on.first().unwrap();
            let mut seen = VertexSet::singleton(start);
            let mut frontier = seen;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for v in frontier {
                    next = next.union(t.neighbors(v).intersection(on));
                }
                frontier = next.difference(seen);
                seen = seen.union(next);
            }
            prop_assert_eq!(seen, on);
        }
    }
}
