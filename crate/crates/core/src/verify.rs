//! Cross-checks between the solver, the closed-set search, the closed forms
//! and the nonadaptive constructions, packaged as named suites.
//!
//! Every suite produces its cases in a fixed order, so reports are identical
//! whether or not the cases ran in parallel.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::closed::{min_closed_containing, min_closed_size};
use crate::distance::apsp;
use crate::error::{Error, Result};
use crate::families::{
    connected_graphs_up_to_isomorphism, random_connected_graph, spider_handle_leaf,
    spider_leg_tips, FamilySpec,
};
use crate::formulas::{f_star_cycle, lattice_bounds, tree_value};
use crate::graph::Graph;
use crate::nonadaptive::{
    centered_tree_sequence, even_path_sequence, forced_run, forced_run_all_branches,
    odd_path_sequence, score_with, search_perfect_sequence_with, ForcedStep, StrategySequence,
};
use crate::oracle::brute_oracle;
use crate::solver::{final_visited, solve_with, SolverConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Cycles,
    Trees,
    Lattices,
    Closed,
    Traces,
    Oracle,
    Paths,
    Centered,
    Counterexample,
    Lollipop,
    Bounds,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Cycles,
        Suite::Trees,
        Suite::Lattices,
        Suite::Closed,
        Suite::Traces,
        Suite::Oracle,
        Suite::Paths,
        Suite::Centered,
        Suite::Counterexample,
        Suite::Lollipop,
        Suite::Bounds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Cycles => "cycles",
            Suite::Trees => "trees",
            Suite::Lattices => "lattices",
            Suite::Closed => "closed",
            Suite::Traces => "traces",
            Suite::Oracle => "oracle",
            Suite::Paths => "paths",
            Suite::Centered => "centered",
            Suite::Counterexample => "counterexample",
            Suite::Lollipop => "lollipop",
            Suite::Bounds => "bounds",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite {s:?}")))
    }
}

/// Size knobs for the suites. `None` means the suite's default.
#[derive(Clone, Debug, Default)]
pub struct SuiteParams {
    pub max_n: Option<usize>,
    pub count: Option<usize>,
    pub seed: Option<u64>,
    pub max_len: Option<usize>,
    pub parallel: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case {
    pub label: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Case {
    fn check<T: fmt::Display + PartialEq>(
        label: impl Into<String>,
        expected: T,
        actual: T,
    ) -> Case {
        Case {
            label: label.into(),
            pass: expected == actual,
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }

    fn failed(label: impl Into<String>, expected: impl fmt::Display, err: Error) -> Case {
        Case {
            label: label.into(),
            expected: expected.to_string(),
            actual: format!("error: {err}"),
            pass: false,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        write!(
            f,
            "{tag} {}: expected {}, got {}",
            self.label, self.expected, self.actual
        )
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: Suite,
    pub cases: Vec<Case>,
}

impl Report {
    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.pass).count()
    }

    pub fn all_passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {}/{} pass",
            self.suite,
            self.passed(),
            self.cases.len()
        )
    }
}

fn run_cases<T, F>(items: Vec<T>, parallel: bool, f: F) -> Vec<Case>
where
    T: Send + Sync,
    F: Fn(&T) -> Case + Send + Sync,
{
    if parallel {
        items.par_iter().map(&f).collect()
    } else {
        items.iter().map(&f).collect()
    }
}

fn family(spec: &str) -> Graph {
    spec.parse::<FamilySpec>()
        .and_then(|f| f.generate())
        .expect("built-in family specs are valid")
}

fn cap(n: usize) -> SolverConfig {
    SolverConfig::with_cap(n.max(crate::solver::DEFAULT_SOLVER_CAP))
}

fn value(g: &Graph, v: usize) -> Result<u32> {
    Ok(solve_with(g, v, &cap(g.n()))?.value())
}

/// Minimum solver value over all starts.
fn min_value(g: &Graph) -> Result<u32> {
    (0..g.n())
        .map(|v| value(g, v))
        .try_fold(u32::MAX, |m, x| Ok(m.min(x?)))
}

pub fn run(suite: Suite, params: &SuiteParams) -> Result<Report> {
    let par = params.parallel;
    let cases = match suite {
        Suite::Cycles => {
            let max_n = params.max_n.unwrap_or(12);
            if !(3..=crate::solver::DEFAULT_SOLVER_CAP).contains(&max_n) {
                return Err(Error::InvalidParameter(format!(
                    "cycles: max-n must be in 3..=14, got {max_n}"
                )));
            }
            run_cases((3..=max_n).collect(), par, |&n| {
                let expected = f_star_cycle(n as u64).unwrap() as u32;
                match value(&family(&format!("cycle:{n}")), 0) {
                    Ok(v) => Case::check(format!("C_{n}"), expected, v),
                    Err(e) => Case::failed(format!("C_{n}"), expected, e),
                }
            })
        }
        Suite::Trees => {
            let trees = random_trees(params)?;
            run_cases(trees, par, |spec| {
                let g = spec.generate().unwrap();
                let label = spec.to_string();
                let mut bad = Vec::new();
                for v in 0..g.n() {
                    match (tree_value(&g, v), value(&g, v)) {
                        (Ok(e), Ok(a)) if e == a => {}
                        (Ok(e), Ok(a)) => bad.push(format!("v{v}: {a}≠{e}")),
                        (Err(e), _) | (_, Err(e)) => return Case::failed(label, "diam+ℓ+1", e),
                    }
                }
                all_starts_case(label, "diam+ℓ+1 at every start", bad)
            })
        }
        Suite::Lattices => {
            let mut items: Vec<(usize, usize, Vec<usize>, u32)> = [(2, 3), (3, 3), (4, 3)]
                .into_iter()
                .map(|(n, m)| (n, m, (0..n * m).collect(), (n + m - 1) as u32))
                .collect();
            items.push((2, 2, (0..4).collect(), 4));
            items.push((4, 2, (0..8).collect(), 6));
            // A corner and an edge vertex cover the boundary up to symmetry.
            items.push((4, 4, vec![0, 1], 8));
            run_cases(items, par, |(n, m, starts, expected)| {
                let g = family(&format!("lattice:{n}x{m}"));
                let label = format!("L_{{{n},{m}}}");
                let mut bad = Vec::new();
                for &v in starts {
                    match (value(&g, v), lattice_bounds(*n, *m, v)) {
                        (Ok(a), Ok(b)) if a == *expected && b.contains(a) => {}
                        (Ok(a), Ok(b)) => {
                            bad.push(format!("v{v}: {a} (bounds {}..{})", b.lower, b.upper))
                        }
                        (Err(e), _) | (_, Err(e)) => return Case::failed(label, expected, e),
                    }
                }
                all_starts_case(label, format!("{expected} at starts {starts:?}"), bad)
            })
        }
        Suite::Closed => {
            let graphs = iso_classes(params.max_n.unwrap_or(6))?;
            run_cases(graphs, par, |(label, g)| {
                let closed = min_closed_size(&apsp(g)).map(|(k, _)| k as u32);
                match (closed, min_value(g)) {
                    (Ok(k), Ok(v)) => Case::check(label.clone(), k, v),
                    (Err(e), _) | (_, Err(e)) => Case::failed(label.clone(), "min closed size", e),
                }
            })
        }
        Suite::Traces => {
            let graphs = bridge_graphs(params)?;
            run_cases(graphs, par, |(label, g)| {
                let mut empty = Vec::new();
                for v in 0..g.n() {
                    match solve_with(g, v, &cap(g.n())) {
                        Ok(sol) => {
                            let (visited, core) = final_visited(&sol);
                            if core.is_empty() {
                                empty.push(format!("v{v}: {visited}"));
                            }
                        }
                        Err(e) => return Case::failed(label.clone(), "nonempty core", e),
                    }
                }
                all_starts_case(label.clone(), "nonempty core of final visited set", empty)
            })
        }
        Suite::Oracle => {
            let mut graphs = iso_classes(params.max_n.unwrap_or(6))?;
            let seed = params.seed.unwrap_or(7);
            let count = params.count.unwrap_or(50);
            graphs.extend((0..count as u64).map(|i| {
                let s = seed.wrapping_add(i);
                (
                    format!("gnp(7,1/2) seed {s}"),
                    random_connected_graph(7, s).unwrap(),
                )
            }));
            run_cases(graphs, par, |(label, g)| {
                let mut bad = Vec::new();
                for v in 0..g.n() {
                    match (brute_oracle(g, v), value(g, v)) {
                        (Ok(o), Ok(s)) if o == s => {}
                        (Ok(o), Ok(s)) => bad.push(format!("v{v}: solver {s}, oracle {o}")),
                        (Err(e), _) | (_, Err(e)) => {
                            return Case::failed(label.clone(), "oracle value", e)
                        }
                    }
                }
                all_starts_case(label.clone(), "solver = oracle at every start", bad)
            })
        }
        Suite::Paths => {
            let max_k = params.max_n.unwrap_or(8) as u32;
            let mut items = Vec::new();
            for k in 1..=max_k {
                items.push((k, None));
                items.extend((0..=k).map(|x| (k, Some(x))));
            }
            run_cases(items, par, |&(k, x)| path_case(k, x))
        }
        Suite::Centered => {
            let mut items = Vec::new();
            for legs in 3..=5 {
                for len in 2..=4 {
                    items.push((legs, len));
                }
            }
            run_cases(items, par, |&(legs, len)| {
                let lens = vec![len; legs];
                let spec = FamilySpec::Spider {
                    handle: 0,
                    legs: lens.clone(),
                };
                let label = spec.to_string();
                let g = spec.generate().unwrap();
                let tip = spider_leg_tips(0, &lens)[0];
                let config = cap(g.n());
                let l = 2 * len as u32;
                let run = || -> Result<(u32, u32)> {
                    let s = centered_tree_sequence(&g, tip)?;
                    Ok((
                        score_with(&g, tip, &s, &config)?,
                        solve_with(&g, tip, &config)?.value(),
                    ))
                };
                match run() {
                    Ok((sc, sv)) => Case {
                        label,
                        expected: format!("score = solve = {}", l + 1),
                        actual: format!("score {sc}, solve {sv}"),
                        pass: sc == l + 1 && sv == l + 1,
                    },
                    Err(e) => Case::failed(label, l + 1, e),
                }
            })
        }
        Suite::Counterexample => {
            let max_len = params.max_len.unwrap_or(6);
            counterexample_cases(max_len)
        }
        Suite::Lollipop => {
            let b = params.max_n.unwrap_or(6);
            if !(2..=crate::solver::DEFAULT_SOLVER_CAP).contains(&b) {
                return Err(Error::InvalidParameter(format!(
                    "lollipop: b must be in 2..=14, got {b}"
                )));
            }
            run_cases((2..=b).collect(), par, |&k| {
                let spec = FamilySpec::Lollipop { b, k };
                let label = spec.to_string();
                let g = spec.generate().unwrap();
                match (min_closed_size(&apsp(&g)), min_value(&g)) {
                    (Ok((c, _)), Ok(v)) => Case {
                        label,
                        expected: format!("closed = solve = {k}"),
                        actual: format!("closed {c}, solve {v}"),
                        pass: c == k && v as usize == k,
                    },
                    (Err(e), _) | (_, Err(e)) => Case::failed(label, k, e),
                }
            })
        }
        Suite::Bounds => {
            let graphs = bridge_graphs(params)?;
            run_cases(graphs, par, |(label, g)| {
                let dm = apsp(g);
                let mut bad = Vec::new();
                for v in 0..g.n() {
                    match (value(g, v), min_closed_containing(&dm, v)) {
                        (Ok(f), Ok((c, _))) if dm.radius() < f && f as usize <= c => {}
                        (Ok(f), Ok((c, _))) => {
                            bad.push(format!("v{v}: {}≤{f}≤{c} fails", dm.radius() + 1))
                        }
                        (Err(e), _) | (_, Err(e)) => {
                            return Case::failed(label.clone(), "sandwich", e)
                        }
                    }
                }
                all_starts_case(
                    label.clone(),
                    "radius+1 ≤ value ≤ min closed set containing start",
                    bad,
                )
            })
        }
    };
    Ok(Report { suite, cases })
}

fn all_starts_case(label: String, expected: impl Into<String>, bad: Vec<String>) -> Case {
    Case {
        label,
        expected: expected.into(),
        actual: if bad.is_empty() {
            "ok".into()
        } else {
            bad.join("; ")
        },
        pass: bad.is_empty(),
    }
}

/// Every graph exercised by the cycle, tree, lattice and closed-set suites.
fn bridge_graphs(params: &SuiteParams) -> Result<Vec<(String, Graph)>> {
    let mut graphs: Vec<(String, Graph)> = (3..=12)
        .map(|n| format!("cycle:{n}"))
        .chain(["2x3", "3x3", "4x3", "2x2", "4x2", "4x4"].map(|l| format!("lattice:{l}")))
        .map(|spec| {
            let g = family(&spec);
            (spec, g)
        })
        .collect();
    let trees = SuiteParams {
        max_n: None,
        ..params.clone()
    };
    for spec in random_trees(&trees)? {
        graphs.push((spec.to_string(), spec.generate().unwrap()));
    }
    graphs.extend(iso_classes(6)?);
    Ok(graphs)
}

fn iso_classes(max_n: usize) -> Result<Vec<(String, Graph)>> {
    if max_n > 6 {
        return Err(Error::InvalidParameter(format!(
            "exhaustive graph suites support max-n <= 6, got {max_n}"
        )));
    }
    let mut out = Vec::new();
    for n in 1..=max_n {
        for (i, g) in connected_graphs_up_to_isomorphism(n)
            .into_iter()
            .enumerate()
        {
            out.push((format!("n={n} class {i}"), g));
        }
    }
    Ok(out)
}

/// The seeded tree sample shared by the tree suites.
pub fn random_trees(params: &SuiteParams) -> Result<Vec<FamilySpec>> {
    let count = params.count.unwrap_or(200);
    let max_n = params.max_n.unwrap_or(10);
    if !(1..=crate::solver::DEFAULT_SOLVER_CAP).contains(&max_n) {
        return Err(Error::InvalidParameter(format!(
            "trees: max-n must be in 1..=14, got {max_n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed.unwrap_or(42));
    Ok((0..count)
        .map(|_| FamilySpec::RandomTree {
            n: rng.gen_range(1..=max_n),
            seed: rng.gen(),
        })
        .collect())
}

/// `x = None` is the even path on `2k` vertices from an endpoint; `Some(x)`
/// the odd path on `2k + 1` vertices from `v_x`.
fn path_case(k: u32, x: Option<u32>) -> Case {
    let (label, n, start, seq) = match x {
        None => (
            format!("P_{} from v0", 2 * k),
            2 * k,
            0,
            even_path_sequence(k),
        ),
        Some(x) => (
            format!("P_{} from v{x}", 2 * k + 1),
            2 * k + 1,
            x,
            odd_path_sequence(k, x),
        ),
    };
    let g = family(&format!("path:{n}"));
    let seq = match seq {
        Ok(s) => s,
        Err(e) => return Case::failed(label, "every vertex once", e),
    };
    let center = x == Some(k);
    let check = || -> Result<Option<String>> {
        let runs = if center {
            forced_run_all_branches(&g, start as usize, &seq)?
        } else {
            vec![forced_run(&g, start as usize, &seq)?]
        };
        for run in &runs {
            let skip = usize::from(center);
            if center && run.steps[0].replies.len() != 2 {
                return Ok(Some(format!(
                    "first step has replies {}",
                    run.steps[0].replies
                )));
            }
            if !run.steps[skip..].iter().all(ForcedStep::forced) {
                return Ok(Some(format!("unforced step {:?}", run.first_unforced())));
            }
            if !run.visits_each_once() || run.trace.len() != n as usize {
                return Ok(Some(format!("trace {:?}", run.trace)));
            }
        }
        Ok(None)
    };
    match check() {
        Ok(None) => Case {
            label,
            expected: "every vertex once, forced".into(),
            actual: format!("ok with {seq}"),
            pass: true,
        },
        Ok(Some(why)) => Case {
            label,
            expected: "every vertex once, forced".into(),
            actual: why,
            pass: false,
        },
        Err(e) => Case::failed(label, "every vertex once", e),
    }
}

fn counterexample_cases(max_len: usize) -> Vec<Case> {
    let g = family("spider:4;5,5");
    let a = spider_handle_leaf(4);
    let config = cap(g.n());
    let mut cases = Vec::new();
    match solve_with(&g, a, &config) {
        Ok(s) => cases.push(Case::check("spider:4;5,5 from a: value", 15, s.value())),
        Err(e) => cases.push(Case::failed("spider:4;5,5 from a: value", 15, e)),
    }
    let ones = StrategySequence::new(vec![1; 2 * g.n()]).unwrap();
    match score_with(&g, a, &ones, &config) {
        Ok(s) => cases.push(Case {
            label: format!("all-ones sequence of length {}", ones.len()),
            expected: "≤ 2".into(),
            actual: s.to_string(),
            pass: s <= 2,
        }),
        Err(e) => cases.push(Case::failed("all-ones sequence", "≤ 2", e)),
    }
    let label = format!("no perfect sequence of length ≤ {max_len}");
    match search_perfect_sequence_with(&g, a, max_len, &config) {
        Ok(found) => cases.push(Case {
            label,
            expected: "none".into(),
            actual: found.as_ref().map_or("none".into(), |s| s.to_string()),
            pass: found.is_none(),
        }),
        Err(e) => cases.push(Case::failed(label, "none", e)),
    }
    cases
}
