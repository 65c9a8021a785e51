//! Arcs in projective space and the normal rational curve.

use crate::arith::binomial;
use crate::design::sets::for_each_subset;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::Matrix;

/// The `q + 1` points `(1, x, ..., x^n)` for `x` in code order, followed by
/// the point at infinity `(0, ..., 0, 1)`, as vectors of `F_q^{n+1}`.
pub fn nrc_points(field: &Field, n: usize) -> Vec<Vec<Elem>> {
    let mut pts: Vec<Vec<Elem>> = field
        .elements()
        .map(|x| (0..=n).map(|i| field.pow(x, i as u64)).collect())
        .collect();
    let mut inf = vec![Elem::ZERO; n + 1];
    inf[n] = Elem::ONE;
    pts.push(inf);
    pts
}

/// Whether every `s` of the points (every point set if fewer than `s`) are
/// linearly independent, which makes every smaller subset independent too.
pub fn arc_check(field: &Field, points: &[Vec<Elem>], s: usize, budget: u64) -> Result<bool> {
    let dim = points.first().map_or(0, Vec::len);
    if points.iter().any(|p| p.len() != dim) {
        return Err(Error::DimensionMismatch(
            "points of different lengths".into(),
        ));
    }
    let s = s.min(points.len());
    let subsets = binomial(points.len() as u64, s as u64);
    if subsets > budget {
        return Err(Error::BudgetExceeded(format!(
            "{subsets} subsets of size {s}"
        )));
    }
    let idx: Vec<usize> = (0..points.len()).collect();
    let mut ok = true;
    for_each_subset(&idx, s, |sub| {
        if !ok {
            return;
        }
        let rows: Vec<Vec<Elem>> = sub.iter().map(|&i| points[i].clone()).collect();
        let m = Matrix::from_rows(field, dim, &rows).expect("rows have equal length");
        ok = m.rank() == s;
    });
    Ok(ok)
}
