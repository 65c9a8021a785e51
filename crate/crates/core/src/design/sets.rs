//! Classical set systems: group divisible designs and `t-(v, k, lambda)` designs.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::arith::binomial;
use crate::error::{Error, Result};

/// Points, a partition of them into groups, and blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetSystem {
    pub points: Vec<u64>,
    pub groups: Vec<Vec<u64>>,
    pub blocks: Vec<Vec<u64>>,
}

impl SetSystem {
    /// Validates that the groups partition the point set exactly.
    pub fn new(
        points: Vec<u64>,
        groups: Vec<Vec<u64>>,
        blocks: Vec<Vec<u64>>,
    ) -> Result<SetSystem> {
        let point_set: BTreeSet<u64> = points.iter().copied().collect();
        if point_set.len() != points.len() {
            return Err(Error::BadParameters("repeated point".into()));
        }
        let mut covered = BTreeSet::new();
        for g in &groups {
            for &x in g {
                if !point_set.contains(&x) {
                    return Err(Error::BadParameters(format!(
                        "group point {x} is not a point"
                    )));
                }
                if !covered.insert(x) {
                    return Err(Error::BadParameters(format!(
                        "point {x} lies in two groups"
                    )));
                }
            }
        }
        if covered != point_set {
            return Err(Error::BadParameters(
                "groups do not cover every point".into(),
            ));
        }
        Ok(SetSystem {
            points,
            groups,
            blocks,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GddReport {
    pub ok: bool,
    pub violation: Option<String>,
}

/// Checks that every block meets every group in at most one point and that
/// every pair of points from different groups lies in exactly one block.
pub fn verify_gdd(s: &SetSystem) -> GddReport {
    let fail = |msg: String| GddReport {
        ok: false,
        violation: Some(msg),
    };
    let group_of: HashMap<u64, usize> = s
        .groups
        .iter()
        .enumerate()
        .flat_map(|(i, g)| g.iter().map(move |&x| (x, i)))
        .collect();
    let mut pair_count: BTreeMap<(u64, u64), u32> = BTreeMap::new();
    for (bi, block) in s.blocks.iter().enumerate() {
        let mut per_group: HashMap<usize, u64> = HashMap::new();
        for &x in block {
            let Some(&g) = group_of.get(&x) else {
                return fail(format!("block {bi} contains {x}, which is not a point"));
            };
            if let Some(prev) = per_group.insert(g, x) {
                return fail(format!(
                    "block {bi} meets group {g} in more than one point ({prev} and {x})"
                ));
            }
        }
        let mut sorted = block.clone();
        sorted.sort_unstable();
        sorted.dedup();
        for (i, &a) in sorted.iter().enumerate() {
            for &b in &sorted[i + 1..] {
                *pair_count.entry((a, b)).or_default() += 1;
            }
        }
    }
    let mut pts = s.points.clone();
    pts.sort_unstable();
    for (i, &a) in pts.iter().enumerate() {
        for &b in &pts[i + 1..] {
            if group_of[&a] == group_of[&b] {
                continue;
            }
            let c = pair_count.get(&(a, b)).copied().unwrap_or(0);
            if c != 1 {
                return fail(format!("pair ({a}, {b}) is covered {c} times"));
            }
        }
    }
    GddReport {
        ok: true,
        violation: None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDesignReport {
    pub ok: bool,
    pub v: usize,
    pub t: usize,
    pub lambda: u64,
    pub lambda_min: u64,
    pub lambda_max: u64,
    pub violation: Option<Vec<usize>>,
}

/// Checks that every `t`-subset of `{0, ..., v-1}` lies in exactly `lambda`
/// blocks. Blocks must be sorted lists of distinct points.
pub fn verify_block_design(
    v: usize,
    blocks: &[Vec<usize>],
    t: usize,
    lambda: u64,
    budget: u64,
) -> Result<BlockDesignReport> {
    let total = binomial(v as u64, t as u64);
    if total > budget {
        return Err(Error::BudgetExceeded(format!(
            "{total} {t}-subsets of {v} points"
        )));
    }
    let mut count: HashMap<Vec<usize>, u64> = HashMap::new();
    for b in blocks {
        if b.iter().any(|&x| x >= v) || b.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadParameters(format!(
                "block {b:?} is not a sorted subset of the points"
            )));
        }
        for_each_subset(b, t, |s| *count.entry(s.to_vec()).or_default() += 1);
    }
    let all: Vec<usize> = (0..v).collect();
    let (mut min, mut max) = (u64::MAX, 0);
    let mut violation = None;
    for_each_subset(&all, t, |s| {
        let c = count.get(s).copied().unwrap_or(0);
        min = min.min(c);
        max = max.max(c);
        if c != lambda && violation.is_none() {
            violation = Some(s.to_vec());
        }
    });
    Ok(BlockDesignReport {
        ok: violation.is_none(),
        v,
        t,
        lambda,
        lambda_min: if min == u64::MAX { 0 } else { min },
        lambda_max: max,
        violation,
    })
}

/// Calls `f` on every `t`-subset of `items` in lexicographic order.
pub fn for_each_subset<T: Copy>(items: &[T], t: usize, mut f: impl FnMut(&[T])) {
    if t > items.len() {
        return;
    }
    let mut idx: Vec<usize> = (0..t).collect();
    let mut buf: Vec<T> = idx.iter().map(|&i| items[i]).collect();
    loop {
        f(&buf);
        let mut i = t;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < items.len() - t + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..t {
            idx[j] = idx[j - 1] + 1;
        }
        for j in i..t {
            buf[j] = items[idx[j]];
        }
    }
}
