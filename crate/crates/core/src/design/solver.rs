//! Backtracking search for 0/1 solutions of `A x = lambda 1` (or `>=`).

use serde::Serialize;

use crate::error::{Error, Result};

/// Whether every row must be hit exactly `lambda` times or at least that often.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    Exact,
    AtLeast,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "exact" => Ok(Mode::Exact),
            "at-least" => Ok(Mode::AtLeast),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::AtLeast => "at-least",
        })
    }
}

/// Limits on the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchLimits {
    /// Maximum number of search nodes before giving up with `BudgetExceeded`.
    pub node_budget: u64,
    /// Stop after this many solutions; the outcome is then marked incomplete.
    pub max_solutions: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            node_budget: 50_000_000,
            max_solutions: 16,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    /// Solutions in lexicographic order of the 0/1 vectors.
    pub solutions: Vec<Vec<u8>>,
    /// True when the whole tree was explored; false when the solution cap
    /// stopped the search early.
    pub complete: bool,
    pub nodes: u64,
}

struct Search<'a> {
    cols: &'a [Vec<(usize, u32)>],
    suffix: Vec<Vec<u64>>,
    lambda: u64,
    mode: Mode,
    limits: SearchLimits,
    sums: Vec<u64>,
    x: Vec<u8>,
    nodes: u64,
    solutions: Vec<Vec<u8>>,
}

impl Search<'_> {
    /// Returns `Ok(false)` when the solution cap was reached.
    fn run(&mut self, j: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.limits.node_budget {
            return Err(Error::BudgetExceeded(format!(
                "search exceeded {} nodes",
                self.limits.node_budget
            )));
        }
        if j == self.cols.len() {
            self.solutions.push(self.x.clone());
            return Ok(self.solutions.len() < self.limits.max_solutions);
        }
        // x_j = 0: rows touched by column j must still be completable
        let completable = self.cols[j]
            .iter()
            .all(|&(i, _)| self.sums[i] + self.suffix[i][j + 1] >= self.lambda);
        if completable && !self.run(j + 1)? {
            return Ok(false);
        }
        // x_j = 1
        let fits = self.mode == Mode::AtLeast
            || self.cols[j]
                .iter()
                .all(|&(i, a)| self.sums[i] + a as u64 <= self.lambda);
        if fits {
            for &(i, a) in &self.cols[j] {
                self.sums[i] += a as u64;
            }
            self.x[j] = 1;
            let keep_going = self.run(j + 1);
            self.x[j] = 0;
            for &(i, a) in &self.cols[j] {
                self.sums[i] -= a as u64;
            }
            if !keep_going? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// All 0/1 vectors `x` with `A x = lambda` (exact) or `A x >= lambda`
/// (at-least), searched column by column with `x_j = 0` tried first.
///
/// Rows are pruned with two bounds: the running sum may not pass `lambda`
/// (exact mode), and the running sum plus everything still available in later
/// columns must reach `lambda`.
pub fn solve_01(
    matrix: &[Vec<u32>],
    lambda: u64,
    mode: Mode,
    limits: SearchLimits,
) -> Result<SearchOutcome> {
    let ncols = matrix.first().map_or(0, Vec::len);
    if matrix.iter().any(|r| r.len() != ncols) {
        return Err(Error::DimensionMismatch("ragged incidence matrix".into()));
    }
    if limits.max_solutions == 0 {
        return Err(Error::BadParameters("solution cap must be >= 1".into()));
    }
    let mut cols = vec![Vec::new(); ncols];
    for (i, row) in matrix.iter().enumerate() {
        for (j, &a) in row.iter().enumerate() {
            if a > 0 {
                cols[j].push((i, a));
            }
        }
    }
    let suffix: Vec<Vec<u64>> = matrix
        .iter()
        .map(|row| {
            let mut s = vec![0u64; ncols + 1];
            for j in (0..ncols).rev() {
                s[j] = s[j + 1] + row[j] as u64;
            }
            s
        })
        .collect();
    if suffix.iter().any(|s| s[0] < lambda) {
        return Ok(SearchOutcome {
            solutions: Vec::new(),
            complete: true,
            nodes: 0,
        });
    }
    let mut search = Search {
        cols: &cols,
        suffix,
        lambda,
        mode,
        limits,
        sums: vec![0; matrix.len()],
        x: vec![0; ncols],
        nodes: 0,
        solutions: Vec::new(),
    };
    let complete = search.run(0)?;
    Ok(SearchOutcome {
        solutions: search.solutions,
        complete,
        nodes: search.nodes,
    })
}
