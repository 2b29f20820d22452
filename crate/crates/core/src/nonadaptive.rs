//! Nonadaptive Explorer strategies: distance sequences fixed in advance.
//!
//! A sequence is scored against a Director who knows it entirely and replies
//! adversarially. Calling a distance larger than the token's eccentricity is
//! not a legal move, so a sequence that can be driven into such a call on any
//! Director line is rejected rather than scored.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::distance::{apsp, DistanceMatrix};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::solver::{solve_with, GameState, Solution, SolverConfig};
use crate::vertex_set::VertexSet;

/// Default length bound for [`search_perfect_sequence`].
pub const DEFAULT_SEARCH_LEN: usize = 8;
/// Hard bound on the search length; the search is exponential in it.
pub const MAX_SEARCH_LEN: usize = 12;

/// A finite list of positive distances.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrategySequence(Vec<u32>);

impl StrategySequence {
    pub fn new(moves: Vec<u32>) -> Result<Self> {
        if let Some(i) = moves.iter().position(|&d| d == 0) {
            return Err(Error::InvalidParameter(format!(
                "sequence entry {} is 0; distances must be positive",
                i + 1
            )));
        }
        Ok(StrategySequence(moves))
    }

    pub fn moves(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &StrategySequence) -> StrategySequence {
        StrategySequence(self.0.iter().chain(&other.0).copied().collect())
    }

    /// Every entry is at most the diameter, i.e. no entry is illegal from
    /// every vertex.
    pub fn fits(&self, dm: &DistanceMatrix) -> bool {
        self.0.iter().all(|&d| d <= dm.diameter())
    }
}

impl fmt::Display for StrategySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for StrategySequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(StrategySequence::default());
        }
        let moves = s
            .split(',')
            .map(|t| {
                t.trim().parse::<u32>().map_err(|e| Error::Parse {
                    line: 1,
                    message: format!("bad distance {t:?}: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        StrategySequence::new(moves)
    }
}

impl From<StrategySequence> for Vec<u32> {
    fn from(s: StrategySequence) -> Self {
        s.0
    }
}

fn check_graph(g: &Graph, v: usize, config: &SolverConfig) -> Result<DistanceMatrix> {
    if g.n() > config.max_vertices {
        return Err(Error::TooLarge {
            n: g.n(),
            cap: config.max_vertices,
        });
    }
    if v >= g.n() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: g.n(),
        });
    }
    Ok(apsp(g))
}

type Frontier = Vec<GameState>;

/// All states reachable after each prefix of `s`, checking legality step by
/// step. `layers[k]` holds the states after `k` moves.
fn frontiers(dm: &DistanceMatrix, v: usize, s: &StrategySequence) -> Result<Vec<Frontier>> {
    let mut layers = vec![vec![GameState::start(v)]];
    for (i, &d) in s.moves().iter().enumerate() {
        let current = layers.last().unwrap();
        let mut next = FxHashSet::default();
        for &state in current {
            let ecc = dm.ecc(state.token);
            if d > ecc {
                return Err(Error::InvalidSequence {
                    step: i + 1,
                    distance: d,
                    vertex: state.token,
                    ecc,
                });
            }
            next.extend(dm.sphere(state.token, d).iter().map(|w| state.moved_to(w)));
        }
        let mut next: Vec<_> = next.into_iter().collect();
        next.sort_unstable();
        layers.push(next);
    }
    Ok(layers)
}

/// Visited count `s` guarantees from `v` against an adversarial Director.
///
/// Uses the solver's default size cap; see [`score_with`].
pub fn score(g: &Graph, v: usize, s: &StrategySequence) -> Result<u32> {
    score_with(g, v, s, &SolverConfig::default())
}

pub fn score_with(g: &Graph, v: usize, s: &StrategySequence, config: &SolverConfig) -> Result<u32> {
    let dm = check_graph(g, v, config)?;
    score_on(&dm, v, s)
}

fn score_on(dm: &DistanceMatrix, v: usize, s: &StrategySequence) -> Result<u32> {
    let layers = frontiers(dm, v, s)?;
    // Backward minimax over the layered states (index, token, visited).
    let mut below: FxHashMap<GameState, u32> = layers
        .last()
        .unwrap()
        .iter()
        .map(|st| (*st, st.visited.len() as u32))
        .collect();
    for (k, layer) in layers.iter().enumerate().rev().skip(1) {
        let d = s.moves()[k];
        below = layer
            .iter()
            .map(|&st| {
                let worst = dm
                    .sphere(st.token, d)
                    .iter()
                    .map(|w| below[&st.moved_to(w)])
                    .min()
                    .expect("legal call has a reply");
                (st, worst)
            })
            .collect();
    }
    Ok(below[&GameState::start(v)])
}

/// One call of a sequence with the Director's legal replies to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForcedStep {
    pub distance: u32,
    pub replies: VertexSet,
    pub chosen: usize,
}

impl ForcedStep {
    pub fn forced(&self) -> bool {
        self.replies.len() == 1
    }
}

/// One Director line through a sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForcedRun {
    /// Token positions, starting with the start vertex.
    pub trace: Vec<usize>,
    pub steps: Vec<ForcedStep>,
}

impl ForcedRun {
    pub fn forced(&self) -> Vec<bool> {
        self.steps.iter().map(ForcedStep::forced).collect()
    }

    pub fn all_forced(&self) -> bool {
        self.steps.iter().all(ForcedStep::forced)
    }

    /// 1-based index of the first step with more than one legal reply.
    pub fn first_unforced(&self) -> Option<usize> {
        self.steps.iter().position(|s| !s.forced()).map(|i| i + 1)
    }

    pub fn visited(&self) -> VertexSet {
        self.trace.iter().copied().collect()
    }

    /// Whether the trace never repeats a vertex.
    pub fn visits_each_once(&self) -> bool {
        self.visited().len() == self.trace.len()
    }
}

/// Plays `s` from `v` with the Director always answering its smallest legal
/// reply, recording which steps left it no choice.
pub fn forced_run(g: &Graph, v: usize, s: &StrategySequence) -> Result<ForcedRun> {
    let dm = check_graph(
        g,
        v,
        &SolverConfig::with_cap(crate::vertex_set::MAX_SET_VERTICES),
    )?;
    let mut run = ForcedRun {
        trace: vec![v],
        steps: Vec::with_capacity(s.len()),
    };
    let mut token = v;
    for (i, &d) in s.moves().iter().enumerate() {
        let ecc = dm.ecc(token);
        if d > ecc {
            return Err(Error::InvalidSequence {
                step: i + 1,
                distance: d,
                vertex: token,
                ecc,
            });
        }
        let replies = dm.sphere(token, d);
        token = replies.first().expect("legal call has a reply");
        run.trace.push(token);
        run.steps.push(ForcedStep {
            distance: d,
            replies,
            chosen: token,
        });
    }
    Ok(run)
}

/// Every Director line through `s`, in lexicographic order of replies.
/// Errors if any line makes an illegal call.
pub fn forced_run_all_branches(
    g: &Graph,
    v: usize,
    s: &StrategySequence,
) -> Result<Vec<ForcedRun>> {
    let dm = check_graph(
        g,
        v,
        &SolverConfig::with_cap(crate::vertex_set::MAX_SET_VERTICES),
    )?;
    let mut runs = vec![ForcedRun {
        trace: vec![v],
        steps: Vec::new(),
    }];
    for (i, &d) in s.moves().iter().enumerate() {
        let mut next = Vec::with_capacity(runs.len());
        for run in runs {
            let token = *run.trace.last().unwrap();
            let ecc = dm.ecc(token);
            if d > ecc {
                return Err(Error::InvalidSequence {
                    step: i + 1,
                    distance: d,
                    vertex: token,
                    ecc,
                });
            }
            let replies = dm.sphere(token, d);
            for w in replies {
                let mut r = run.clone();
                r.trace.push(w);
                r.steps.push(ForcedStep {
                    distance: d,
                    replies,
                    chosen: w,
                });
                next.push(r);
            }
        }
        runs = next;
    }
    Ok(runs)
}

/// Sequence for the path on `2k` vertices from an endpoint: a single step
/// followed by alternating calls of `k` and `k - 1`.
pub fn even_path_sequence(k: u32) -> Result<StrategySequence> {
    if k < 1 {
        return Err(Error::InvalidParameter("even path needs k >= 1".into()));
    }
    let mut moves = vec![1];
    for _ in 1..k {
        moves.extend([k, k - 1]);
    }
    StrategySequence::new(moves)
}

/// Sequence for the path `v_0 .. v_{2k}` from `v_x`, for `x <= k`. Starts
/// beyond the center are handled by mirroring: use `2k - x`.
pub fn odd_path_sequence(k: u32, x: u32) -> Result<StrategySequence> {
    if k < 1 || x > k {
        return Err(Error::InvalidParameter(format!(
            "odd path needs k >= 1 and 0 <= x <= k, got k={k}, x={x}"
        )));
    }
    if x == k {
        let mut moves = vec![k];
        let mut rest = odd_path_sequence(k, 0)?.0;
        rest.pop();
        moves.extend(rest);
        return StrategySequence::new(moves);
    }
    let mut moves = Vec::with_capacity(2 * k as usize);
    for _ in 0..k - 1 - x {
        moves.extend([k + 1, k]);
    }
    moves.push(k + 1);
    moves.push(k - x);
    if x >= 1 {
        moves.extend((0..2 * x - 1).map(|i| if i % 2 == 0 { k + 1 } else { k }));
        moves.push(k);
    }
    StrategySequence::new(moves)
}

/// Whether the tree has a single center `c`, each component of the tree
/// minus `c` holds at most one endpoint of a longest path, and `v` lies on a
/// longest path.
pub fn qualifies_centered(g: &Graph, v: usize) -> Result<bool> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    if v >= g.n() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: g.n(),
        });
    }
    let dm = apsp(g);
    let centers = dm.centers();
    if centers.len() != 1 {
        return Ok(false);
    }
    let c = centers.first().unwrap();
    let endpoints: VertexSet = (0..g.n()).filter(|&u| dm.ecc(u) == dm.diameter()).collect();
    // Components of T - c are indexed by the neighbor of c they contain: u is
    // in the component of the neighbor y with d(c, y) + d(y, u) = d(c, u).
    for y in g.neighbors(c) {
        let in_component = endpoints
            .iter()
            .filter(|&u| dm.dist(c, y) + dm.dist(y, u) == dm.dist(c, u))
            .count();
        if in_component > 1 {
            return Ok(false);
        }
    }
    Ok(dm.on_diameter_path(v))
}

/// The explicit sequence for qualifying centered trees: blocks
/// `(i, L-i, i, L-i)` for `i = 1..R-1` and a final `R`, with `L` the diameter
/// and `R` the radius. Starts inside a longest path first call their
/// eccentricity to jump to an endpoint.
///
/// For `L <= 3` the blocks degenerate, and the shortest perfect sequence is
/// searched for instead.
pub fn centered_tree_sequence(g: &Graph, v: usize) -> Result<StrategySequence> {
    if !qualifies_centered(g, v)? {
        return Err(Error::InvalidParameter(format!(
            "tree does not satisfy the centered-tree conditions from vertex {v}"
        )));
    }
    let dm = apsp(g);
    let (l, r) = (dm.diameter(), dm.radius());
    if l <= 3 {
        let config = SolverConfig::with_cap(g.n().max(crate::solver::DEFAULT_SOLVER_CAP));
        return search_perfect_sequence_with(g, v, DEFAULT_SEARCH_LEN, &config)?.ok_or_else(|| {
            Error::InvalidParameter(format!(
                "no perfect sequence of length <= {DEFAULT_SEARCH_LEN} from vertex {v}"
            ))
        });
    }
    let mut moves = Vec::new();
    if dm.ecc(v) < l {
        moves.push(dm.ecc(v));
    }
    for i in 1..r {
        moves.extend([i, l - i, i, l - i]);
    }
    moves.push(r);
    StrategySequence::new(moves)
}

/// Shortest (then lexicographically smallest) sequence of length at most
/// `max_len` whose score equals the adaptive value, if one exists.
pub fn search_perfect_sequence(
    g: &Graph,
    v: usize,
    max_len: usize,
) -> Result<Option<StrategySequence>> {
    search_perfect_sequence_with(g, v, max_len, &SolverConfig::default())
}

pub fn search_perfect_sequence_with(
    g: &Graph,
    v: usize,
    max_len: usize,
    config: &SolverConfig,
) -> Result<Option<StrategySequence>> {
    if max_len > MAX_SEARCH_LEN {
        return Err(Error::InvalidParameter(format!(
            "search length {max_len} exceeds the limit {MAX_SEARCH_LEN}"
        )));
    }
    let solution = solve_with(g, v, config)?;
    let search = Search {
        solution: &solution,
        dm: solution.distances(),
        target: solution.value(),
    };
    let root = vec![GameState::start(v)];
    for len in 0..=max_len {
        let found = if len == 0 {
            search.dfs(&root, 0, &mut Vec::new()).then(Vec::new)
        } else {
            // Split by first call; the first hit in call order is the
            // lexicographically smallest.
            let max_first = search.legal_max(&root);
            (1..=max_first).into_par_iter().find_map_first(|d| {
                let next = search.advance(&root, d);
                let mut prefix = vec![d];
                search.dfs(&next, len - 1, &mut prefix).then_some(prefix)
            })
        };
        if let Some(moves) = found {
            return Ok(Some(StrategySequence(moves)));
        }
    }
    Ok(None)
}

struct Search<'a> {
    solution: &'a Solution,
    dm: &'a DistanceMatrix,
    target: u32,
}

impl Search<'_> {
    fn legal_max(&self, frontier: &[GameState]) -> u32 {
        frontier
            .iter()
            .map(|s| self.dm.ecc(s.token))
            .min()
            .unwrap_or(0)
    }

    fn advance(&self, frontier: &[GameState], d: u32) -> Vec<GameState> {
        let mut next: Vec<GameState> = frontier
            .iter()
            .flat_map(|&s| {
                self.dm
                    .sphere(s.token, d)
                    .iter()
                    .map(move |w| s.moved_to(w))
            })
            .collect();
        next.sort_unstable();
        next.dedup();
        next
    }

    /// Whether some continuation of exactly `left` calls from `frontier`
    /// guarantees the target, appending it to `prefix` if so.
    fn dfs(&self, frontier: &[GameState], left: usize, prefix: &mut Vec<u32>) -> bool {
        // The Director can steer into any frontier state, and from there even
        // adaptive play cannot beat that state's value.
        let table = self.solution.table();
        if frontier
            .iter()
            .any(|&s| table.value(s).expect("reachable state") < self.target)
        {
            return false;
        }
        if frontier
            .iter()
            .all(|s| s.visited.len() as u32 >= self.target)
        {
            // Shorter lengths were searched first, so only an exact fit counts.
            return left == 0;
        }
        if left == 0 {
            return false;
        }
        for d in 1..=self.legal_max(frontier) {
            let next = self.advance(frontier, d);
            prefix.push(d);
            if self.dfs(&next, left - 1, prefix) {
                return true;
            }
            prefix.pop();
        }
        false
    }
}
