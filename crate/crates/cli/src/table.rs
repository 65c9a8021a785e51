//! Designs on the elements of small matrix groups, for the rows of the
//! group/design tables.
//!
//! The points are the elements of a group `G <= GL(2, q)` and `G` acts on
//! them by right multiplication, so every orbit of `k`-subsets is a
//! `G`-invariant block set. The Kramer-Mesner matrix of that action is built
//! with subsets stored as `u64` bitmasks.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use clap::ValueEnum;
use qdesign::arith::{binomial, is_prime, prime_power};
use qdesign::design::sets::verify_block_design;
use qdesign::design::{solve_01, Mode, SearchLimits};
use qdesign::group::{frobenius_matrix, primitive_polynomial, torus_generators, GlElem, GroupSpec};
use qdesign::{Elem, Error, Field, Matrix};
use serde::Serialize;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum GroupType {
    /// Cyclic of order q - 1 (q an odd prime, 3 | q - 1).
    CyclicQMinus1,
    /// Cyclic of order q + 1 (q an odd prime, 3 | q + 1).
    CyclicQPlus1,
    /// Cyclic of order q (q odd, 3 | q).
    CyclicQ,
    /// Elementary abelian of order q = p^e.
    AbelianP,
    /// Dihedral of order 2(q - 1), q odd.
    DihedralQMinus1,
    /// Dihedral of order 2(q + 1), q even.
    DihedralQPlus1,
    /// Borel subgroup, not supported.
    Borel,
}

#[derive(Debug, Error)]
pub enum TableError {
    #[error("unsupported table row: {0}")]
    UnsupportedRow(String),
    #[error(transparent)]
    Core(#[from] Error),
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub group: GroupType,
    pub q: u64,
    /// Exponent for the abelian row's block size `p^l`.
    pub l: Option<u32>,
    /// Overrides for the tabulated strength and block size.
    pub t: Option<usize>,
    pub k: Option<usize>,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct TableLimits {
    /// Cap on the number of `k`-subsets (and `t`-subsets) enumerated.
    pub subset_budget: u64,
    /// Kramer-Mesner searches are run for `lambda = 1..=lambda_max`.
    pub lambda_max: u64,
    pub node_budget: u64,
}

impl Default for TableLimits {
    fn default() -> Self {
        TableLimits {
            subset_budget: 1_000_000,
            lambda_max: 2,
            node_budget: 1_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Shape {
    pub t: usize,
    pub n: usize,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitDesign {
    pub orbit: usize,
    pub size: usize,
    pub lambda: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KmStatus {
    Found,
    Infeasible,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KmAttempt {
    pub lambda: u64,
    pub status: KmStatus,
    pub nodes: Option<u64>,
    /// Column orbits used by the first solution.
    pub orbits: Option<Vec<usize>>,
    pub blocks: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub row: GroupType,
    pub q: u64,
    pub group: String,
    pub group_order: usize,
    pub generators: Vec<String>,
    /// Parameters as tabulated for this `q`.
    pub tabulated: Shape,
    /// Parameters actually checked (differs only with overrides).
    pub checked: Shape,
    /// `t > k`: no block contains a `t`-subset, so nothing is searched.
    pub degenerate: bool,
    pub t_orbits: usize,
    pub k_orbits: usize,
    /// orbit size -> number of `k`-orbits of that size
    pub k_orbit_sizes: BTreeMap<usize, usize>,
    /// Number of single `k`-orbits that are `t`-designs.
    pub single_orbit_designs: usize,
    /// The first few of them.
    pub single_orbit_examples: Vec<OrbitDesign>,
    pub km: Vec<KmAttempt>,
    pub measured_lambdas: Vec<u64>,
    /// Every reported design re-verified by counting `t`-subsets directly.
    pub consistent: bool,
}

const EXAMPLES: usize = 16;

/// Tabulated `(t, n, k)` and the group realizing the row.
fn build_row(row: &TableRow) -> Result<(Shape, String, Vec<GlElem>), TableError> {
    let q = row.q;
    let bad = |msg: String| TableError::Core(Error::BadParameters(msg));
    if q > 31 {
        return Err(bad(format!("table rows assume q <= 31, got {q}")));
    }
    let (p, e) = prime_power(q).ok_or_else(|| bad(format!("{q} is not a prime power")))?;
    let field = Field::with_order(q)?;
    let odd_prime = || {
        if is_prime(q) && q % 2 == 1 {
            Ok(())
        } else {
            Err(bad(format!("row needs an odd prime q, got {q}")))
        }
    };
    let shape = |t: usize, n: u64, k: u64| Shape {
        t,
        n: n as usize,
        k: k as usize,
    };
    match row.group {
        GroupType::CyclicQMinus1 => {
            odd_prime()?;
            if (q - 1) % 3 != 0 {
                return Err(bad(format!("row needs 3 | q - 1, got q = {q}")));
            }
            let (split, _) = torus_generators(&field)?;
            Ok((
                shape(3, q - 1, (q - 1) / 3),
                "split torus diag(w, 1)".into(),
                vec![split],
            ))
        }
        GroupType::CyclicQPlus1 => {
            odd_prime()?;
            if (q + 1) % 3 != 0 {
                return Err(bad(format!("row needs 3 | q + 1, got q = {q}")));
            }
            let (_, nonsplit) = torus_generators(&field)?;
            Ok((
                shape(3, q + 1, (q + 1) / 3),
                "non-split torus".into(),
                vec![nonsplit],
            ))
        }
        GroupType::CyclicQ => {
            if q % 2 == 0 || q % 3 != 0 {
                return Err(bad(format!("row needs q odd with 3 | q, got {q}")));
            }
            if e > 1 {
                return Err(TableError::UnsupportedRow(format!(
                    "GL(2, {q}) has no element of order {q}: its unipotent elements have order {p}"
                )));
            }
            let u = GlElem::new(Matrix::from_codes(&field, 2, 2, &[1, 1, 0, 1])?)?;
            Ok((
                shape(3, q, q / 3),
                "unipotent [[1, 1], [0, 1]]".into(),
                vec![u],
            ))
        }
        GroupType::AbelianP => {
            let l = row.l.unwrap_or(if e > 1 { 1 } else { 0 });
            if e > 1 && l >= e {
                return Err(bad(format!("row needs l < e = {e}, got l = {l}")));
            }
            let gens = (0..e)
                .map(|i| {
                    let a = field.from_digits(&unit_digits(i as usize, e as usize));
                    unipotent(&field, a)
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok((
                shape(p as usize, q, p.pow(l)),
                "unipotent [[1, a], [0, 1]], a in F_q".into(),
                gens,
            ))
        }
        GroupType::DihedralQMinus1 => {
            if q % 2 == 0 {
                return Err(bad(format!("row needs q odd, got {q}")));
            }
            let w = field.primitive_element();
            let data = vec![w, Elem::ZERO, Elem::ZERO, field.inv(w)];
            let tau = GlElem::new(Matrix::new(&field, 2, 2, data)?)?;
            let sigma = GlElem::new(Matrix::from_codes(&field, 2, 2, &[0, 1, 1, 0])?)?;
            Ok((
                shape(3, 2 * (q - 1), q - 1),
                "diag(w, 1/w) with the coordinate swap".into(),
                vec![tau, sigma],
            ))
        }
        GroupType::DihedralQPlus1 => {
            if q % 2 == 1 || q < 4 {
                return Err(bad(format!("row needs q even and at least 4, got {q}")));
            }
            let (_, tau) = torus_generators(&field)?;
            let sigma = frobenius_matrix(&primitive_polynomial(&field, 2)?)?;
            Ok((
                shape(2, 2 * (q + 1), q + 1),
                "non-split torus with the Frobenius".into(),
                vec![tau, sigma],
            ))
        }
        GroupType::Borel => Err(TableError::UnsupportedRow(
            "the Borel row acts on q(q-1) points with a group of order q(q-1)^2; \
             no regular action is available and the subset counts leave the budget"
                .into(),
        )),
    }
}

fn unit_digits(i: usize, e: usize) -> Vec<u32> {
    (0..e).map(|j| u32::from(j == i)).collect()
}

fn unipotent(field: &Field, a: Elem) -> qdesign::Result<GlElem> {
    GlElem::new(Matrix::new(
        field,
        2,
        2,
        vec![Elem::ONE, a, Elem::ZERO, Elem::ONE],
    )?)
}

/// All `k`-subsets of `n` bits in increasing order (Gosper's hack).
fn subsets(n: usize, k: usize) -> Vec<u64> {
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let mut x: u64 = (1u64 << k) - 1;
    let limit = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    while x <= limit && x != 0 {
        out.push(x);
        let c = x & x.wrapping_neg();
        let r = x.wrapping_add(c);
        if r == 0 {
            break;
        }
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}

fn permute(mask: u64, perm: &[usize]) -> u64 {
    let mut out = 0;
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        out |= 1 << perm[i];
        m &= m - 1;
    }
    out
}

/// Orbits of the permutation group on `masks` (sorted), each sorted and
/// ordered by least member.
fn orbits(masks: &[u64], perms: &[Vec<usize>]) -> Vec<Vec<u64>> {
    let mut seen = vec![false; masks.len()];
    let mut out = Vec::new();
    for start in 0..masks.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut members = vec![masks[start]];
        let mut head = 0;
        while head < members.len() {
            let m = members[head];
            head += 1;
            for p in perms {
                let img = permute(m, p);
                let j = masks
                    .binary_search(&img)
                    .expect("images stay in the subset list");
                if !seen[j] {
                    seen[j] = true;
                    members.push(img);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

fn mask_points(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

pub fn table_check(row: &TableRow, limits: &TableLimits) -> Result<TableReport, TableError> {
    let (tabulated, description, generators) = build_row(row)?;
    let field = generators[0].field().clone();
    let spec = GroupSpec::new(&field, 2, generators.clone())?;
    let elements = spec.closure(100_000)?;
    if elements.len() != tabulated.n {
        return Err(Error::VerificationFailed(format!(
            "built a group of order {}, expected {}",
            elements.len(),
            tabulated.n
        ))
        .into());
    }
    let n = elements.len();
    let checked = Shape {
        t: row.t.unwrap_or(tabulated.t),
        n,
        k: row.k.unwrap_or(tabulated.k),
    };
    let (t, k) = (checked.t, checked.k);
    let mut report = TableReport {
        row: row.group,
        q: row.q,
        group: description,
        group_order: n,
        generators: generators.iter().map(|g| g.matrix().to_text()).collect(),
        tabulated,
        checked,
        degenerate: t > k,
        t_orbits: 0,
        k_orbits: 0,
        k_orbit_sizes: BTreeMap::new(),
        single_orbit_designs: 0,
        single_orbit_examples: Vec::new(),
        km: Vec::new(),
        measured_lambdas: Vec::new(),
        consistent: true,
    };
    if k == 0 || k > n {
        return Err(Error::BadParameters(format!("block size {k} on {n} points")).into());
    }
    if report.degenerate {
        return Ok(report);
    }
    if n > 64 {
        return Err(TableError::UnsupportedRow(format!(
            "{n} points do not fit a 64-bit subset mask"
        )));
    }
    for (size, what) in [(k, "block"), (t, "t")] {
        let c = binomial(n as u64, size as u64);
        if c > limits.subset_budget {
            return Err(Error::BudgetExceeded(format!(
                "{c} {what}-subsets of {n} points (budget {})",
                limits.subset_budget
            ))
            .into());
        }
    }

    let index: HashMap<&GlElem, usize> = elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let perms: Vec<Vec<usize>> = generators
        .iter()
        .map(|g| elements.iter().map(|x| index[&x.mul(g)]).collect())
        .collect();
    let row_orbits = orbits(&subsets(n, t), &perms);
    let col_orbits = orbits(&subsets(n, k), &perms);
    report.t_orbits = row_orbits.len();
    report.k_orbits = col_orbits.len();
    for o in &col_orbits {
        *report.k_orbit_sizes.entry(o.len()).or_default() += 1;
    }
    let matrix: Vec<Vec<u32>> = row_orbits
        .iter()
        .map(|ro| {
            let rep = ro[0];
            col_orbits
                .iter()
                .map(|co| co.iter().filter(|&&b| b & rep == rep).count() as u32)
                .collect()
        })
        .collect();

    let mut lambdas = BTreeSet::new();
    let verify = |blocks: &[u64], lambda: u64| -> qdesign::Result<bool> {
        let lists: Vec<Vec<usize>> = blocks.iter().map(|&b| mask_points(b)).collect();
        Ok(verify_block_design(n, &lists, t, lambda, limits.subset_budget)?.ok)
    };
    for (j, orbit) in col_orbits.iter().enumerate() {
        let first = matrix[0][j];
        if first > 0 && matrix.iter().all(|r| r[j] == first) {
            report.single_orbit_designs += 1;
            lambdas.insert(first as u64);
            if report.single_orbit_examples.len() < EXAMPLES {
                report.consistent &= verify(orbit, first as u64)?;
                report.single_orbit_examples.push(OrbitDesign {
                    orbit: j,
                    size: orbit.len(),
                    lambda: first as u64,
                });
            }
        }
    }

    for lambda in 1..=limits.lambda_max {
        let search = SearchLimits {
            node_budget: limits.node_budget,
            max_solutions: 1,
        };
        let attempt = match solve_01(&matrix, lambda, Mode::Exact, search) {
            Ok(out) => match out.solutions.first() {
                Some(x) => {
                    let chosen: Vec<usize> = (0..x.len()).filter(|&j| x[j] == 1).collect();
                    let blocks: Vec<u64> = chosen
                        .iter()
                        .flat_map(|&j| col_orbits[j].iter().copied())
                        .collect();
                    report.consistent &= verify(&blocks, lambda)?;
                    lambdas.insert(lambda);
                    KmAttempt {
                        lambda,
                        status: KmStatus::Found,
                        nodes: Some(out.nodes),
                        orbits: Some(chosen),
                        blocks: Some(blocks.len()),
                    }
                }
                None => KmAttempt {
                    lambda,
                    status: KmStatus::Infeasible,
                    nodes: Some(out.nodes),
                    orbits: None,
                    blocks: None,
                },
            },
            Err(Error::BudgetExceeded(_)) => KmAttempt {
                lambda,
                status: KmStatus::BudgetExceeded,
                nodes: None,
                orbits: None,
                blocks: None,
            },
            Err(e) => return Err(e.into()),
        };
        report.km.push(attempt);
    }
    report.measured_lambdas = lambdas.into_iter().collect();
    Ok(report)
}
