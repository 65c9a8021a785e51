//! Designs over finite fields: verification, Kramer-Mesner search, and the
//! graphs and constant-weight codes derived from a design.

pub mod arcs;
pub mod sets;
pub mod solver;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::OnceLock;

use serde::Serialize;

use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::Graph;
use crate::group::{orbit_subspaces, GroupSpec};
use crate::subspace::{
    enumerate_subspaces, gaussian_binomial, grassmannian_size, Subspace, SubspaceIter,
    ENUMERATION_BUDGET,
};

pub use solver::{solve_01, Mode, SearchLimits, SearchOutcome};

/// A family of `k`-subspaces of `F_q^n` claimed to be a `t`-design.
#[derive(Debug)]
pub struct DesignInstance {
    field: Field,
    n: usize,
    t: usize,
    k: usize,
    blocks: Vec<Subspace>,
    lambda: u64,
    mode: Mode,
    report: OnceLock<DesignReport>,
}

impl Clone for DesignInstance {
    fn clone(&self) -> Self {
        DesignInstance {
            field: self.field.clone(),
            n: self.n,
            t: self.t,
            k: self.k,
            blocks: self.blocks.clone(),
            lambda: self.lambda,
            mode: self.mode,
            report: self.report.clone(),
        }
    }
}

/// The first `t`-subspace whose coverage breaks the design condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Basis rows as element codes.
    pub subspace: Vec<Vec<u32>>,
    pub coverage: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DesignReport {
    pub ok: bool,
    pub mode: Mode,
    pub lambda: u64,
    pub lambda_min: u64,
    pub lambda_max: u64,
    pub t_subspaces: u64,
    pub blocks: usize,
    pub violation: Option<Violation>,
}

fn rows_of(s: &Subspace) -> Vec<Vec<u32>> {
    (0..s.dim())
        .map(|i| s.basis().row(i).iter().map(|e| e.code()).collect())
        .collect()
}

impl DesignInstance {
    pub fn new(
        field: &Field,
        n: usize,
        t: usize,
        k: usize,
        blocks: Vec<Subspace>,
        lambda: u64,
        mode: Mode,
    ) -> Result<DesignInstance> {
        if t > k || k > n {
            return Err(Error::BadParameters(format!(
                "need t <= k <= n, got t={t} k={k} n={n}"
            )));
        }
        let mut seen = HashSet::new();
        for b in &blocks {
            if b.ambient() != n {
                return Err(Error::AmbientMismatch(b.ambient(), n));
            }
            if b.field() != field {
                return Err(Error::FieldMismatch);
            }
            if b.dim() != k {
                return Err(Error::DimensionMismatch(format!(
                    "block of dimension {} in a design with k={k}",
                    b.dim()
                )));
            }
            if !seen.insert(b) {
                return Err(Error::BadParameters(format!(
                    "duplicate block {:?}",
                    rows_of(b)
                )));
            }
        }
        Ok(DesignInstance {
            field: field.clone(),
            n,
            t,
            k,
            blocks,
            lambda,
            mode,
            report: OnceLock::new(),
        })
    }

    /// Every `k`-subspace of `F_q^n`, declared with
    /// `lambda = [n-t choose k-t]_q`.
    pub fn complete(field: &Field, n: usize, t: usize, k: usize) -> Result<DesignInstance> {
        let blocks = enumerate_subspaces(field, n, k, ENUMERATION_BUDGET)?;
        let lambda = gaussian_binomial((n - t) as u64, (k - t) as u64, field.q() as u64);
        let lambda = u64::try_from(lambda).map_err(|_| Error::SizeExceeded("lambda".into()))?;
        DesignInstance::new(field, n, t, k, blocks, lambda, Mode::Exact)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn blocks(&self) -> &[Subspace] {
        &self.blocks
    }

    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Verification result, computed once with the default enumeration budget.
    pub fn report(&self) -> Result<&DesignReport> {
        if let Some(r) = self.report.get() {
            return Ok(r);
        }
        let r = verify_design_with_budget(self, ENUMERATION_BUDGET)?;
        Ok(self.report.get_or_init(|| r))
    }
}

/// Checks the design condition for every `t`-subspace and reports the
/// measured coverage range.
pub fn verify_design(design: &DesignInstance) -> Result<DesignReport> {
    design.report().cloned()
}

pub fn verify_design_with_budget(design: &DesignInstance, budget: u64) -> Result<DesignReport> {
    let total =
        grassmannian_size(&design.field, design.n, design.t, budget).map_err(|e| match e {
            Error::SizeExceeded(s) => Error::BudgetExceeded(s),
            other => other,
        })?;
    let mut coverage: HashMap<Subspace, u64> = HashMap::new();
    for b in &design.blocks {
        for s in b.subspaces_within(design.t)? {
            *coverage.entry(s).or_default() += 1;
        }
    }
    let mut min = u64::MAX;
    let mut max = 0;
    let mut violation = None;
    for s in SubspaceIter::new(&design.field, design.n, design.t) {
        let c = coverage.get(&s).copied().unwrap_or(0);
        min = min.min(c);
        max = max.max(c);
        let bad = match design.mode {
            Mode::Exact => c != design.lambda,
            Mode::AtLeast => c < design.lambda,
        };
        if bad && violation.is_none() {
            violation = Some(Violation {
                subspace: rows_of(&s),
                coverage: c,
            });
        }
    }
    Ok(DesignReport {
        ok: violation.is_none(),
        mode: design.mode,
        lambda: design.lambda,
        lambda_min: if total == 0 { 0 } else { min },
        lambda_max: max,
        t_subspaces: total,
        blocks: design.blocks.len(),
        violation,
    })
}

/// The Kramer-Mesner matrix: rows are `t`-subspace orbits (each with a fixed
/// representative, its least member), columns are `k`-subspace orbits, and
/// entry `(i, j)` counts the blocks of orbit `j` containing representative `i`.
/// Without a group every orbit is a singleton and entries are 0/1.
#[derive(Clone, Debug)]
pub struct IncidenceSystem {
    pub field: Field,
    pub n: usize,
    pub t: usize,
    pub k: usize,
    pub row_orbits: Vec<Vec<Subspace>>,
    pub col_orbits: Vec<Vec<Subspace>>,
    pub matrix: Vec<Vec<u32>>,
}

impl IncidenceSystem {
    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.col_orbits.len()
    }

    /// The blocks selected by a 0/1 column vector.
    pub fn expand(&self, x: &[u8]) -> Vec<Subspace> {
        let mut blocks: Vec<Subspace> = x
            .iter()
            .zip(&self.col_orbits)
            .filter(|(&xi, _)| xi == 1)
            .flat_map(|(_, orbit)| orbit.iter().cloned())
            .collect();
        blocks.sort();
        blocks
    }
}

pub fn incidence_matrix(
    field: &Field,
    n: usize,
    t: usize,
    k: usize,
    group: Option<&GroupSpec>,
    budget: u64,
) -> Result<IncidenceSystem> {
    if t > k || k > n {
        return Err(Error::BadParameters(format!(
            "need t <= k <= n, got t={t} k={k} n={n}"
        )));
    }
    let as_budget = |e: Error| match e {
        Error::SizeExceeded(s) => Error::BudgetExceeded(s),
        other => other,
    };
    let (row_orbits, col_orbits) = match group {
        Some(g) => {
            if g.field() != field || g.n() != n {
                return Err(Error::BadParameters("group does not act on F_q^n".into()));
            }
            (
                orbit_subspaces(g, t, budget)?,
                orbit_subspaces(g, k, budget)?,
            )
        }
        None => {
            let single = |d| -> Result<Vec<Vec<Subspace>>> {
                Ok(enumerate_subspaces(field, n, d, budget)
                    .map_err(as_budget)?
                    .into_iter()
                    .map(|s| vec![s])
                    .collect())
            };
            (single(t)?, single(k)?)
        }
    };
    let rep_index: HashMap<&Subspace, usize> = row_orbits
        .iter()
        .enumerate()
        .map(|(i, o)| (&o[0], i))
        .collect();
    let mut matrix = vec![vec![0u32; col_orbits.len()]; row_orbits.len()];
    for (j, orbit) in col_orbits.iter().enumerate() {
        for block in orbit {
            for s in block.subspaces_within(t)? {
                if let Some(&i) = rep_index.get(&s) {
                    matrix[i][j] += 1;
                }
            }
        }
    }
    Ok(IncidenceSystem {
        field: field.clone(),
        n,
        t,
        k,
        row_orbits,
        col_orbits,
        matrix,
    })
}

/// Outcome of a Kramer-Mesner search.
#[derive(Clone, Debug)]
pub struct KmResult {
    pub outcome: SearchOutcome,
    /// Block sets of each solution, in canonical order.
    pub designs: Vec<Vec<Subspace>>,
}

/// Solves the Kramer-Mesner system and re-verifies every solution by
/// expanding its orbits and checking the design condition directly.
pub fn km_solve(
    sys: &IncidenceSystem,
    lambda: u64,
    mode: Mode,
    limits: SearchLimits,
) -> Result<KmResult> {
    if lambda == 0 {
        return Err(Error::BadParameters("lambda must be >= 1".into()));
    }
    let outcome = solve_01(&sys.matrix, lambda, mode, limits)?;
    let mut designs = Vec::with_capacity(outcome.solutions.len());
    for x in &outcome.solutions {
        let blocks = sys.expand(x);
        let d = DesignInstance::new(&sys.field, sys.n, sys.t, sys.k, blocks, lambda, mode)?;
        let report = verify_design(&d)?;
        if !report.ok {
            return Err(Error::VerificationFailed(format!(
                "solution {x:?} does not verify: coverage {}..{}",
                report.lambda_min, report.lambda_max
            )));
        }
        designs.push(d.blocks);
    }
    Ok(KmResult { outcome, designs })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LargeSetReport {
    pub ok: bool,
    pub disjoint: bool,
    pub covers_grassmannian: bool,
    pub designs_verified: bool,
    pub total_blocks: usize,
    pub grassmannian_size: u64,
}

/// Whether the designs partition the `k`-subspaces of `F_q^n` and each one
/// verifies.
pub fn large_set_check(designs: &[DesignInstance]) -> Result<LargeSetReport> {
    let first = designs
        .first()
        .ok_or_else(|| Error::BadParameters("no designs given".into()))?;
    for d in designs {
        if d.field() != first.field()
            || d.n() != first.n()
            || d.k() != first.k()
            || d.t() != first.t()
        {
            return Err(Error::MixedParameters(
                "designs differ in field, n, t or k".into(),
            ));
        }
    }
    let size = grassmannian_size(first.field(), first.n(), first.k(), ENUMERATION_BUDGET).map_err(
        |e| match e {
            Error::SizeExceeded(s) => Error::BudgetExceeded(s),
            other => other,
        },
    )?;
    let mut seen = HashSet::new();
    let mut disjoint = true;
    let mut total = 0;
    for d in designs {
        for b in d.blocks() {
            total += 1;
            disjoint &= seen.insert(b);
        }
    }
    let covers = seen.len() as u64 == size;
    let mut verified = true;
    for d in designs {
        verified &= verify_design(d)?.ok;
    }
    Ok(LargeSetReport {
        ok: disjoint && covers && verified,
        disjoint,
        covers_grassmannian: covers,
        designs_verified: verified,
        total_blocks: total,
        grassmannian_size: size,
    })
}

/// Incidence structure between the points (1-subspaces) of `F_q^n` and the
/// blocks: point `i` lies in block `j` iff `i` is in `blocks[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointIncidence {
    pub points: usize,
    pub blocks: Vec<Vec<usize>>,
}

pub fn point_incidence(design: &DesignInstance) -> Result<PointIncidence> {
    grassmannian_size(design.field(), design.n(), 1, ENUMERATION_BUDGET).map_err(|e| match e {
        Error::SizeExceeded(s) => Error::BudgetExceeded(s),
        other => other,
    })?;
    let points: Vec<Subspace> = SubspaceIter::new(design.field(), design.n(), 1).collect();
    let index: HashMap<&Subspace, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut blocks = Vec::with_capacity(design.blocks().len());
    for b in design.blocks() {
        let mut pts: Vec<usize> = b.subspaces_within(1)?.iter().map(|p| index[p]).collect();
        pts.sort_unstable();
        blocks.push(pts);
    }
    Ok(PointIncidence {
        points: points.len(),
        blocks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DesignGraphReport {
    pub design_verified: bool,
    pub regular: bool,
    pub degree: Option<usize>,
    pub is_two_design_graph: bool,
}

/// The graph on the points of `F_q^n` joining two points when some block
/// contains both.
pub fn design_to_graph(design: &DesignInstance) -> Result<(Graph, DesignGraphReport)> {
    let inc = point_incidence(design)?;
    let mut edges = BTreeSet::new();
    for b in &inc.blocks {
        for (i, &u) in b.iter().enumerate() {
            for &v in &b[i + 1..] {
                edges.insert((u.min(v), u.max(v)));
            }
        }
    }
    let graph = Graph::new(inc.points, false, edges.into_iter().collect(), None)?;
    let degrees = graph.out_degrees();
    let regular = degrees.windows(2).all(|w| w[0] == w[1]);
    let report = DesignGraphReport {
        design_verified: verify_design(design)?.ok,
        regular,
        degree: regular.then(|| degrees.first().copied().unwrap_or(0)),
        is_two_design_graph: two_design_graph_check(&graph, 1),
    };
    Ok((graph, report))
}

/// Whether an undirected graph is regular with every pair of distinct
/// vertices having exactly `lambda` common neighbours.
pub fn two_design_graph_check(graph: &Graph, lambda: u64) -> bool {
    let adj = graph.adjacency();
    let v = graph.vertices();
    let nbrs: Vec<Vec<bool>> = adj
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &c)| c > 0 && i != j)
                .collect()
        })
        .collect();
    let degrees: Vec<usize> = nbrs
        .iter()
        .map(|r| r.iter().filter(|&&b| b).count())
        .collect();
    if degrees.windows(2).any(|w| w[0] != w[1]) {
        return false;
    }
    for a in 0..v {
        for b in a + 1..v {
            let common = (0..v).filter(|&c| nbrs[a][c] && nbrs[b][c]).count() as u64;
            if common != lambda {
                return false;
            }
        }
    }
    true
}

/// Parameters of the binary code formed by the block incidence vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CwCodeReport {
    pub length: usize,
    pub words: usize,
    pub constant_weight: bool,
    pub weight: Option<usize>,
    pub min_distance: Option<usize>,
    /// Largest number of points shared by two distinct blocks.
    pub max_intersection: Option<usize>,
    /// Whether `d = 2 (w - s)` holds for the measured values.
    pub distance_matches: Option<bool>,
    pub incidence_vectors: Vec<String>,
}

pub fn design_to_cw_code(design: &DesignInstance) -> Result<CwCodeReport> {
    let inc = point_incidence(design)?;
    let sets: Vec<HashSet<usize>> = inc
        .blocks
        .iter()
        .map(|b| b.iter().copied().collect())
        .collect();
    let weights: Vec<usize> = inc.blocks.iter().map(Vec::len).collect();
    let constant_weight = weights.windows(2).all(|w| w[0] == w[1]);
    let weight = constant_weight.then(|| weights.first().copied()).flatten();
    let mut min_distance: Option<usize> = None;
    let mut max_inter: Option<usize> = None;
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let inter = sets[i].intersection(&sets[j]).count();
            let dist = weights[i] + weights[j] - 2 * inter;
            min_distance = Some(min_distance.map_or(dist, |d| d.min(dist)));
            max_inter = Some(max_inter.map_or(inter, |s| s.max(inter)));
        }
    }
    let distance_matches = match (weight, min_distance, max_inter) {
        (Some(w), Some(d), Some(s)) => Some(d == 2 * (w - s)),
        _ => None,
    };
    let incidence_vectors = inc
        .blocks
        .iter()
        .map(|b| {
            let mut v = vec!['0'; inc.points];
            for &p in b {
                v[p] = '1';
            }
            v.into_iter().collect()
        })
        .collect();
    Ok(CwCodeReport {
        length: inc.points,
        words: inc.blocks.len(),
        constant_weight,
        weight,
        min_distance,
        max_intersection: max_inter,
        distance_matches,
        incidence_vectors,
    })
}

/// The lines of `PG(2, p)`: all 2-subspaces of `F_p^3`. As a subspace design it
/// is the `2-(3, 2, 1; p)` design; on points it is the classical
/// `2-(p^2+p+1, p+1, 1)` design.
pub fn pg2_line_design(p: u64) -> Result<DesignInstance> {
    let field = Field::prime(p)?;
    grassmannian_size(&field, 3, 2, ENUMERATION_BUDGET)?;
    let blocks = enumerate_subspaces(&field, 3, 2, ENUMERATION_BUDGET)?;
    DesignInstance::new(&field, 3, 2, 2, blocks, 1, Mode::Exact)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeFamilyReport {
    pub codes: usize,
    pub distinct_blocks: usize,
    pub t: usize,
    pub mode: Mode,
    pub lambda_min: u64,
    pub lambda_max: u64,
    /// Whether the measured coverage is the same positive number everywhere
    /// (exact mode) or positive everywhere (at-least mode).
    pub is_design: bool,
}

/// Treats each code as a block (a `k`-subspace of `F_q^n`), drops repeats, and
/// measures `t`-subspace coverage.
pub fn verify_code_family_design(
    codes: &[LinearCode],
    t: usize,
    mode: Mode,
) -> Result<CodeFamilyReport> {
    let first = codes
        .first()
        .ok_or_else(|| Error::BadParameters("no codes given".into()))?;
    for c in codes {
        if c.n() != first.n() || c.k() != first.k() || c.field() != first.field() {
            return Err(Error::MixedParameters(format!(
                "[{}, {}] code over GF({}) next to [{}, {}] over GF({})",
                c.n(),
                c.k(),
                c.field().spec(),
                first.n(),
                first.k(),
                first.field().spec()
            )));
        }
    }
    let mut seen = HashSet::new();
    let mut blocks = Vec::new();
    for c in codes {
        if seen.insert(c.subspace().clone()) {
            blocks.push(c.subspace().clone());
        }
    }
    blocks.sort();
    let distinct = blocks.len();
    let d = DesignInstance::new(
        first.field(),
        first.n(),
        t,
        first.k(),
        blocks,
        1,
        Mode::AtLeast,
    )?;
    let r = verify_design(&d)?;
    let is_design = match mode {
        Mode::Exact => r.lambda_min == r.lambda_max && r.lambda_min > 0,
        Mode::AtLeast => r.lambda_min > 0,
    };
    Ok(CodeFamilyReport {
        codes: codes.len(),
        distinct_blocks: distinct,
        t,
        mode,
        lambda_min: r.lambda_min,
        lambda_max: r.lambda_max,
        is_design,
    })
}
