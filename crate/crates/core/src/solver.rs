//! Exact game values by layered least-fixed-point iteration.
//!
//! A state is the visited set `U` together with the token position `u ∈ U`.
//! Moves either stay inside `U` (same layer) or visit a new vertex `w`, which
//! lands in the strictly larger layer `U ∪ {w}`. Layers are therefore solved
//! bottom-up from the full vertex set, and only layers reachable from the
//! start are materialized.
//!
//! Inside one layer the value is the least fixed point of
//!
//! ```text
//! T(val)(u) = max_{d in 1..=ecc(u)} min_{w in sphere(u, d)} (w ∈ U ? val(w) : exit(U ∪ {w}, w))
//! ```
//!
//! iterated upward from `val = |U|`: a play that never leaves `U` ends with
//! `|U|` visited vertices, and the maximizing Explorer only gets credit for
//! exits it can force in finitely many moves.

use std::collections::{HashMap, HashSet, VecDeque};

use rustc_hash::FxHashMap;

use crate::closed::peel;
use crate::distance::{apsp, DistanceMatrix};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Default largest graph the solver accepts.
///
/// Each materialized layer costs roughly `3n + 64` bytes, and up to `2^n`
/// layers can be reachable, so every extra vertex at most doubles memory:
/// about 2 MB at 14 vertices, 70 MB at 19, 2.5 GB at 24.
pub const DEFAULT_SOLVER_CAP: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    pub max_vertices: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_vertices: DEFAULT_SOLVER_CAP,
        }
    }
}

impl SolverConfig {
    pub fn with_cap(max_vertices: usize) -> Self {
        SolverConfig { max_vertices }
    }
}

/// Visited set plus token position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GameState {
    pub visited: VertexSet,
    pub token: usize,
}

impl GameState {
    pub fn start(v: usize) -> Self {
        GameState {
            visited: VertexSet::singleton(v),
            token: v,
        }
    }

    /// The state after the token moves to `w`.
    pub fn moved_to(self, w: usize) -> Self {
        GameState {
            visited: self.visited.with(w),
            token: w,
        }
    }
}

#[derive(Clone, Debug)]
struct Layer {
    /// Indexed by vertex; entries for non-members are unused.
    values: Box<[u8]>,
    /// Explorer's chosen distance per member, 0 when the token has no move.
    explorer: Box<[u8]>,
    sweeps: u32,
}

/// Values of every materialized state.
#[derive(Clone, Debug, Default)]
pub struct ValueTable {
    layers: FxHashMap<VertexSet, Layer>,
}

impl ValueTable {
    pub fn value(&self, state: GameState) -> Option<u32> {
        if !state.visited.contains(state.token) {
            return None;
        }
        self.layers
            .get(&state.visited)
            .map(|l| l.values[state.token] as u32)
    }

    pub fn layer_count(&self) -> usize {
        self.layers.len()
    }

    pub fn len(&self) -> usize {
        self.layers.keys().map(|u| u.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// Every `(state, value)` pair, in no particular order.
    pub fn iter(&self) -> impl Iterator<Item = (GameState, u32)> + '_ {
        self.layers.iter().flat_map(|(&visited, layer)| {
            visited
                .iter()
                .map(move |token| (GameState { visited, token }, layer.values[token] as u32))
        })
    }

    /// Number of sweeps the fixed-point iteration took on the layer `visited`.
    pub fn sweeps(&self, visited: VertexSet) -> Option<u32> {
        self.layers.get(&visited).map(|l| l.sweeps)
    }
}

/// Result of solving from one start vertex.
#[derive(Clone, Debug)]
pub struct Solution {
    dm: DistanceMatrix,
    start: usize,
    value: u32,
    table: ValueTable,
}

pub fn solve(g: &Graph, start: usize) -> Result<Solution> {
    solve_with(g, start, &SolverConfig::default())
}

pub fn solve_with(g: &Graph, start: usize, config: &SolverConfig) -> Result<Solution> {
    let n = g.n();
    if n > config.max_vertices {
        return Err(Error::TooLarge {
            n,
            cap: config.max_vertices,
        });
    }
    if start >= n {
        return Err(Error::VertexOutOfRange { vertex: start, n });
    }
    let dm = apsp(g);
    let mut table = ValueTable::default();
    let first = VertexSet::singleton(start);
    LayerSolver {
        dm: &dm,
        table: &mut table,
    }
    .ensure(first);
    let value = table.layers[&first].values[start] as u32;
    Ok(Solution {
        dm,
        start,
        value,
        table,
    })
}

struct LayerSolver<'a> {
    dm: &'a DistanceMatrix,
    table: &'a mut ValueTable,
}

/// Per-distance move summary: in-layer replies and the cheapest exit.
#[derive(Clone, Copy)]
struct MoveSummary {
    inside: VertexSet,
    exit: u8,
}

impl LayerSolver<'_> {
    fn ensure(&mut self, visited: VertexSet) {
        if self.table.layers.contains_key(&visited) {
            return;
        }
        let layer = self.compute(visited);
        self.table.layers.insert(visited, layer);
    }

    fn compute(&mut self, visited: VertexSet) -> Layer {
        let n = self.dm.n();
        let size = visited.len() as u8;
        if visited.len() == n {
            let explorer = (0..n).map(|u| (self.dm.ecc(u) > 0) as u8).collect();
            return Layer {
                values: vec![size; n].into_boxed_slice(),
                explorer,
                sweeps: 1,
            };
        }

        // Flattened per (member, distance) summaries; offsets[i] starts member i.
        // Value of entering the layer above through each unvisited vertex.
        let mut exit_value = [u8::MAX; crate::vertex_set::MAX_SET_VERTICES];
        for w in visited.complement(n) {
            let next = visited.with(w);
            self.ensure(next);
            exit_value[w] = self.table.layers[&next].values[w];
        }

        let members: Vec<usize> = visited.iter().collect();
        let mut summaries = Vec::new();
        let mut offsets = Vec::with_capacity(members.len() + 1);
        for &u in &members {
            offsets.push(summaries.len());
            for d in 1..=self.dm.ecc(u) {
                let sphere = self.dm.sphere(u, d);
                let exit = sphere
                    .difference(visited)
                    .iter()
                    .map(|w| exit_value[w])
                    .fold(u8::MAX, u8::min);
                summaries.push(MoveSummary {
                    inside: sphere.intersection(visited),
                    exit,
                });
            }
        }
        offsets.push(summaries.len());

        let best = |vals: &[u8], options: &[MoveSummary]| -> (u8, u8) {
            let mut best = (0u8, 0u8);
            for (i, m) in options.iter().enumerate() {
                let mut worst = m.exit;
                for w in m.inside {
                    worst = worst.min(vals[w]);
                }
                if worst > best.0 {
                    best = (worst, i as u8 + 1);
                }
            }
            best
        };

        let mut values = vec![0u8; n].into_boxed_slice();
        let mut explorer = vec![0u8; n].into_boxed_slice();
        for &u in &members {
            values[u] = size;
        }
        let mut old = values.clone();
        let mut sweeps = 0;
        loop {
            sweeps += 1;
            old.copy_from_slice(&values);
            let mut changed = false;
            for (i, &u) in members.iter().enumerate() {
                let (val, d) = best(&old, &summaries[offsets[i]..offsets[i + 1]]);
                if val > old[u] {
                    values[u] = val;
                    // The distance that first secured the current value keeps
                    // the Explorer making progress instead of cycling.
                    explorer[u] = d;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for (i, &u) in members.iter().enumerate() {
            if explorer[u] == 0 {
                explorer[u] = best(&values, &summaries[offsets[i]..offsets[i + 1]]).1;
            }
        }
        Layer {
            values,
            explorer,
            sweeps,
        }
    }
}

/// One move of a recorded play.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub distance: u32,
    pub vertex: usize,
    pub visited: usize,
}

impl std::fmt::Display for TraceStep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "step d={} -> {} visited={}",
            self.distance, self.vertex, self.visited
        )
    }
}

impl Solution {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn table(&self) -> &ValueTable {
        &self.table
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dm
    }

    pub fn policy(&self) -> Policy<'_> {
        Policy {
            dm: &self.dm,
            table: &self.table,
        }
    }

    pub fn start_state(&self) -> GameState {
        GameState::start(self.start)
    }

    /// The game is over once the Explorer can no longer force a new visit.
    pub fn is_over(&self, state: GameState) -> bool {
        self.table.value(state) == Some(state.visited.len() as u32)
    }

    /// Largest sweep count over all layers.
    pub fn max_sweeps(&self) -> u32 {
        self.table
            .layers
            .values()
            .map(|l| l.sweeps)
            .max()
            .unwrap_or(0)
    }

    /// A shortest line of optimal play: the Director follows the policy, the
    /// Explorer only makes value-preserving calls, and the line stops once no
    /// further visit can be forced.
    pub fn optimal_trace(&self) -> Vec<TraceStep> {
        let policy = self.policy();
        let start = self.start_state();
        let mut parent: HashMap<GameState, (GameState, u32, usize)> = HashMap::new();
        let mut queue = VecDeque::from([start]);
        let mut seen = HashSet::from([start]);
        let mut end = None;
        while let Some(state) = queue.pop_front() {
            if self.is_over(state) {
                end = Some(state);
                break;
            }
            let target = self.table.value(state).expect("reachable state");
            for d in 1..=self.dm.ecc(state.token) {
                let Some(w) = policy.director_move(state, d) else {
                    continue;
                };
                if policy.successor_value(state, w) != Some(target) {
                    continue;
                }
                let next = state.moved_to(w);
                if seen.insert(next) {
                    parent.insert(next, (state, d, w));
                    queue.push_back(next);
                }
            }
        }
        let mut state = end.expect("optimal play always terminates");
        let mut trace = Vec::new();
        while let Some(&(prev, d, w)) = parent.get(&state) {
            trace.push(TraceStep {
                distance: d,
                vertex: w,
                visited: state.visited.len(),
            });
            state = prev;
        }
        trace.reverse();
        trace
    }

    /// Advances `state` by one move. `None` for either player means "use the
    /// policy's move".
    pub fn play_step(
        &self,
        state: GameState,
        explorer: Option<u32>,
        director: Option<usize>,
    ) -> Result<StepOutcome> {
        if self.table.value(state).is_none() {
            return Err(Error::InvalidParameter(format!(
                "state {} @ {} is not reachable from the start",
                state.visited, state.token
            )));
        }
        let policy = self.policy();
        let ecc = self.dm.ecc(state.token);
        let distance = match explorer {
            Some(d) if d == 0 || d > ecc => {
                return Err(Error::IllegalDistance {
                    vertex: state.token,
                    distance: d,
                    ecc,
                })
            }
            Some(d) => d,
            None => policy.explorer_move(state).ok_or(Error::IllegalDistance {
                vertex: state.token,
                distance: 0,
                ecc,
            })?,
        };
        let reply = match director {
            Some(w) if !self.dm.sphere(state.token, distance).contains(w) => {
                return Err(Error::IllegalReply {
                    from: state.token,
                    distance,
                    reply: w,
                })
            }
            Some(w) => w,
            None => policy
                .director_move(state, distance)
                .expect("legal distance has a reply"),
        };
        let scoring = !self.is_over(state);
        let next = state.moved_to(reply);
        Ok(StepOutcome {
            state: next,
            distance,
            reply,
            scoring,
            game_over: self.is_over(next),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepOutcome {
    pub state: GameState,
    pub distance: u32,
    pub reply: usize,
    /// False when the move was made after the game had already ended.
    pub scoring: bool,
    pub game_over: bool,
}

/// Deterministic optimal moves read off a [`ValueTable`].
///
/// The Explorer plays the smallest distance that secured its value in the
/// fixed-point iteration; the Director answers with the smallest vertex of
/// minimum successor value.
#[derive(Clone, Copy, Debug)]
pub struct Policy<'a> {
    dm: &'a DistanceMatrix,
    table: &'a ValueTable,
}

impl Policy<'_> {
    pub fn explorer_move(&self, state: GameState) -> Option<u32> {
        let layer = self.table.layers.get(&state.visited)?;
        match layer.explorer[state.token] {
            0 => None,
            d => Some(d as u32),
        }
    }

    /// Value of moving the token to `w`.
    pub fn successor_value(&self, state: GameState, w: usize) -> Option<u32> {
        self.table.value(state.moved_to(w))
    }

    pub fn director_move(&self, state: GameState, distance: u32) -> Option<usize> {
        self.dm
            .sphere(state.token, distance)
            .iter()
            .filter_map(|w| self.successor_value(state, w).map(|v| (v, w)))
            .min()
            .map(|(_, w)| w)
    }
}

/// Final visited set after optimal play, with its peel core.
pub fn final_visited(solution: &Solution) -> (VertexSet, VertexSet) {
    let mut visited = solution.start_state().visited;
    for step in solution.optimal_trace() {
        visited.insert(step.vertex);
    }
    let core = peel(solution.distances(), visited)
        .expect("visited set is nonempty")
        .core;
    (visited, core)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilySpec;

    fn graph(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().generate().unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(solve(&graph("path:2"), 0).unwrap().value(), 2);
        for v in 0..4 {
            assert_eq!(solve(&graph("cycle:4"), v).unwrap().value(), 4);
            assert_eq!(solve(&graph("complete:5"), v).unwrap().value(), 2);
        }
        assert_eq!(solve(&graph("cycle:6"), 0).unwrap().value(), 4);
        assert_eq!(solve(&graph("path:1"), 0).unwrap().value(), 1);
    }

    #[test]
    fn cap_and_range_errors() {
        let g = graph("path:15");
        assert_eq!(
            solve(&g, 0).unwrap_err(),
            Error::TooLarge { n: 15, cap: 14 }
        );
        assert_eq!(
            solve_with(&g, 0, &SolverConfig::with_cap(15))
                .unwrap()
                .value(),
            15
        );
        assert_eq!(
            solve(&graph("path:3"), 3).unwrap_err(),
            Error::VertexOutOfRange { vertex: 3, n: 3 }
        );
    }

    #[test]
    fn traces() {
        let s = solve(&graph("path:2"), 0).unwrap();
        assert_eq!(
            s.optimal_trace(),
            vec![TraceStep {
                distance: 1,
                vertex: 1,
                visited: 2
            }]
        );
        let s = solve(&graph("cycle:4"), 0).unwrap();
        let t = s.optimal_trace();
        assert_eq!(t.len(), 3);
        assert_eq!(t.last().unwrap().visited, 4);
        assert_eq!(
            t[0].to_string(),
            format!("step d={} -> {} visited=2", t[0].distance, t[0].vertex)
        );
    }

    #[test]
    fn play_step_examples() {
        let s = solve(&graph("cycle:4"), 0).unwrap();
        let out = s.play_step(GameState::start(0), Some(2), None).unwrap();
        assert_eq!(
            out.state,
            GameState {
                visited: [0, 2].into_iter().collect(),
                token: 2
            }
        );
        assert!(out.scoring);

        let s = solve(&graph("path:3"), 0).unwrap();
        assert_eq!(
            s.play_step(GameState::start(0), Some(3), None).unwrap_err(),
            Error::IllegalDistance {
                vertex: 0,
                distance: 3,
                ecc: 2
            }
        );
        assert_eq!(
            s.play_step(GameState::start(0), Some(1), Some(2))
                .unwrap_err(),
            Error::IllegalReply {
                from: 0,
                distance: 1,
                reply: 2
            }
        );

        let s = solve(&graph("complete:3"), 0).unwrap();
        let state = GameState {
            visited: [0, 1].into_iter().collect(),
            token: 1,
        };
        assert!(s.is_over(state));
        let out = s.play_step(state, Some(1), None).unwrap();
        assert_eq!(out.reply, 0);
        assert!(!out.scoring);
        assert!(out.game_over);
    }

    #[test]
    fn value_bounds_and_escape_characterization() {
        for spec in [
            "cycle:7",
            "lattice:3x3",
            "spider:2;2,2",
            "lollipop:7,4",
            "star:4",
        ] {
            let g = graph(spec);
            let n = g.n() as u32;
            for v in 0..g.n() {
                let s = solve(&g, v).unwrap();
                for (state, value) in s.table().iter() {
                    let size = state.visited.len() as u32;
                    assert!(size <= value && value <= n);
                    let core = peel(s.distances(), state.visited).unwrap().core;
                    assert_eq!(
                        value > size,
                        !core.contains(state.token),
                        "{spec} {state:?}"
                    );
                    let limit = size * (n - size) + 1;
                    assert!(s.table().sweeps(state.visited).unwrap() <= limit);
                }
            }
        }
    }
}
