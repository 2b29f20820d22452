//! Depth-limited minimax over the explicit game tree, used to cross-check
//! the solver on small graphs.
//!
//! Within a layer `U` the Explorer gets at most `|U|·(n−|U|) + 1` moves that
//! stay inside `U`; if no new vertex has been visited by then the play is
//! scored `|U|`. Values can rise at most `|U|·(n−|U|)` times in total, so the
//! horizon is long enough to reach the true value.

use std::collections::HashMap;

use crate::distance::{apsp, DistanceMatrix};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

pub const ORACLE_CAP: usize = 7;

pub fn brute_oracle(g: &Graph, start: usize) -> Result<u32> {
    let n = g.n();
    if n > ORACLE_CAP {
        return Err(Error::TooLarge { n, cap: ORACLE_CAP });
    }
    if start >= n {
        return Err(Error::VertexOutOfRange { vertex: start, n });
    }
    let dm = apsp(g);
    let mut oracle = Oracle {
        dm: &dm,
        memo: HashMap::new(),
    };
    let first = VertexSet::singleton(start);
    Ok(oracle.value(first, start, horizon(n, first)))
}

fn horizon(n: usize, visited: VertexSet) -> u32 {
    let k = visited.len();
    (k * (n - k) + 1) as u32
}

struct Oracle<'a> {
    dm: &'a DistanceMatrix,
    memo: HashMap<(VertexSet, usize, u32), u32>,
}

impl Oracle<'_> {
    fn value(&mut self, visited: VertexSet, token: usize, moves_left: u32) -> u32 {
        if moves_left == 0 {
            return visited.len() as u32;
        }
        if let Some(&v) = self.memo.get(&(visited, token, moves_left)) {
            return v;
        }
        let n = self.dm.n();
        let mut best = visited.len() as u32;
        for d in 1..=self.dm.ecc(token) {
            let mut worst = u32::MAX;
            for w in self.dm.sphere(token, d) {
                let v = if visited.contains(w) {
                    self.value(visited, w, moves_left - 1)
                } else {
                    let next = visited.with(w);
                    self.value(next, w, horizon(n, next))
                };
                worst = worst.min(v);
            }
            best = best.max(worst);
        }
        self.memo.insert((visited, token, moves_left), best);
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilySpec;

    fn graph(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().generate().unwrap()
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(brute_oracle(&graph("complete:4"), 0).unwrap(), 2);
        assert_eq!(brute_oracle(&graph("path:4"), 0).unwrap(), 4);
        assert_eq!(brute_oracle(&graph("cycle:5"), 0).unwrap(), 4);
        assert_eq!(brute_oracle(&graph("cycle:4"), 1).unwrap(), 4);
        assert!(matches!(
            brute_oracle(&graph("path:8"), 0),
            Err(Error::TooLarge { n: 8, cap: 7 })
        ));
    }
}
