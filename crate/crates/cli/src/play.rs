//! Line-oriented play against the optimal policy.

use std::io::{self, BufRead, Write};

use clap::ValueEnum;
use exdir_core::{GameState, Solution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Role {
    Explorer,
    Director,
}

/// Final state of a session.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub state: GameState,
    pub finished: bool,
}

/// Runs a session, reading one move per line from `input`. `quit` or end of
/// input stops early; illegal moves are reported and asked for again.
pub fn session<R: BufRead, W: Write>(
    solution: &Solution,
    role: Role,
    mut input: R,
    out: &mut W,
) -> io::Result<Outcome> {
    let value = solution.value();
    let mut state = solution.start_state();
    writeln!(out, "start at {}; optimal value {value}", state.token)?;
    match role {
        Role::Explorer => writeln!(out, "you call distances; the Director answers optimally")?,
        Role::Director => writeln!(
            out,
            "you answer with vertices; the Explorer calls optimally"
        )?,
    }
    let mut line = String::new();
    loop {
        if solution.is_over(state) {
            writeln!(
                out,
                "game over: {} vertices visited {}",
                state.visited.len(),
                state.visited
            )?;
            match role {
                Role::Explorer => writeln!(out, "the optimal Explorer guarantees {value}")?,
                Role::Director => writeln!(out, "the Explorer guaranteed at least {value}")?,
            }
            return Ok(Outcome {
                state,
                finished: true,
            });
        }
        let ecc = solution.distances().ecc(state.token);
        let policy_call = solution.policy().explorer_move(state);
        match role {
            Role::Explorer => write!(
                out,
                "token at {}, visited {}; distance (1..={ecc})> ",
                state.token,
                state.visited.len()
            )?,
            Role::Director => {
                let d = policy_call.expect("a live game has an Explorer move");
                let sphere = solution.distances().sphere(state.token, d);
                write!(
                    out,
                    "token at {}, Explorer calls {d}; reply from {sphere}> ",
                    state.token
                )?;
            }
        }
        out.flush()?;
        line.clear();
        if input.read_line(&mut line)? == 0 || line.trim() == "quit" {
            writeln!(out)?;
            writeln!(
                out,
                "session ended: {} vertices visited {}",
                state.visited.len(),
                state.visited
            )?;
            return Ok(Outcome {
                state,
                finished: false,
            });
        }
        let text = line.trim();
        let step = match role {
            Role::Explorer => match text.parse::<u32>() {
                Ok(d) => solution.play_step(state, Some(d), None),
                Err(_) => {
                    writeln!(out, "not a distance: {text:?}")?;
                    continue;
                }
            },
            Role::Director => match text.parse::<usize>() {
                Ok(w) => solution.play_step(state, policy_call, Some(w)),
                Err(_) => {
                    writeln!(out, "not a vertex: {text:?}")?;
                    continue;
                }
            },
        };
        match step {
            Ok(step) => {
                writeln!(
                    out,
                    "d={} -> {} visited={}",
                    step.distance,
                    step.reply,
                    step.state.visited.len()
                )?;
                state = step.state;
            }
            Err(e) => writeln!(out, "illegal move: {e}")?,
        }
    }
}
