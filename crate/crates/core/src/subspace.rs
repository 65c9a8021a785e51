//! Subspaces of `F_q^n` in canonical reduced row-echelon form.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::Matrix;

/// Default cap on the number of subspaces materialized by enumeration.
pub const ENUMERATION_BUDGET: u64 = 10_000_000;

/// A subspace of `F_q^n`, stored as the unique RREF basis of its row space.
#[derive(Clone)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.basis.hash(state);
    }
}

/// Orders first by ambient dimension and dimension, then in enumeration
/// order: pivot sets lexicographically, then free entries row by row.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient()
            .cmp(&other.ambient())
            .then(self.dim().cmp(&other.dim()))
            .then_with(|| self.pivots.cmp(&other.pivots))
            .then_with(|| self.basis.data().cmp(other.basis.data()))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}: ", self.dim(), self.ambient())?;
        let rows: Vec<String> = (0..self.dim())
            .map(|i| {
                self.basis
                    .row(i)
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join("")
            })
            .collect();
        write!(f, "[{}])", rows.join(","))
    }
}

impl Subspace {
    /// Row space of `m`.
    pub fn row_space(m: &Matrix) -> Subspace {
        let (r, pivots) = m.rref_with_pivots();
        Subspace {
            basis: r.take_rows(pivots.len()),
            pivots,
        }
    }

    /// Span of the given vectors in `F_q^n`.
    pub fn span(field: &Field, n: usize, vectors: &[Vec<Elem>]) -> Result<Subspace> {
        Ok(Subspace::row_space(&Matrix::from_rows(field, n, vectors)?))
    }

    /// Wraps a matrix that must already be in RREF with full row rank.
    pub fn from_rref(m: Matrix) -> Result<Subspace> {
        let s = Subspace::row_space(&m);
        if s.basis != m {
            return Err(Error::Parse(
                "matrix is not in reduced row-echelon form with full rank".into(),
            ));
        }
        Ok(s)
    }

    pub fn zero(field: &Field, n: usize) -> Subspace {
        Subspace {
            basis: Matrix::zeros(field, 0, n),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Field, n: usize) -> Subspace {
        Subspace {
            basis: Matrix::identity(field, n),
            pivots: (0..n).collect(),
        }
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient() != other.ambient() {
            return Err(Error::AmbientMismatch(self.ambient(), other.ambient()));
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// Whether `v` lies in the subspace (read off against the pivots).
    pub fn contains_vector(&self, v: &[Elem]) -> bool {
        let f = self.field();
        let mut rest = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = rest[pc];
            if c.is_zero() {
                continue;
            }
            for (j, r) in rest.iter_mut().enumerate() {
                *r = f.sub(*r, f.mul(c, self.basis.get(i, j)));
            }
        }
        rest.iter().all(|e| e.is_zero())
    }

    /// Whether `other` is a subspace of `self`.
    pub fn contains(&self, other: &Subspace) -> bool {
        other.dim() <= self.dim()
            && (0..other.dim()).all(|i| self.contains_vector(other.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::row_space(&self.basis.stack(&other.basis)?))
    }

    /// Intersection by the Zassenhaus method: reduce `[[U, U], [W, 0]]`; the
    /// rows whose left half vanishes span `U ∩ W` in the right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let n = self.ambient();
        let f = self.field();
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for i in 0..self.dim() {
            let r = self.basis.row(i);
            rows.push([r, r].concat());
        }
        for i in 0..other.dim() {
            let mut r = other.basis.row(i).to_vec();
            r.extend(std::iter::repeat(Elem::ZERO).take(n));
            rows.push(r);
        }
        let (red, _) = Matrix::from_rows(f, 2 * n, &rows)?.rref_with_pivots();
        let mut out = Vec::new();
        for i in 0..red.rows() {
            let row = red.row(i);
            if row[..n].iter().all(|e| e.is_zero()) && row[n..].iter().any(|e| !e.is_zero()) {
                out.push(row[n..].to_vec());
            }
        }
        Subspace::span(f, n, &out)
    }

    /// The subspace distance `dim(U + W) - dim(U ∩ W)`, computed as
    /// `2 dim(U + W) - dim U - dim W`.
    pub fn distance(&self, other: &Subspace) -> Result<usize> {
        let s = self.sum(other)?.dim();
        Ok(2 * s - self.dim() - other.dim())
    }

    /// Orthogonal complement under the standard bilinear form.
    pub fn dual(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.field(), self.ambient());
        }
        Subspace::row_space(&self.basis.nullspace())
    }

    /// The image `U A` under the right action of a square matrix.
    pub fn apply(&self, a: &Matrix) -> Result<Subspace> {
        if a.rows() != self.ambient() || !a.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix acting on F_q^{}",
                a.rows(),
                a.cols(),
                self.ambient()
            )));
        }
        Ok(Subspace::row_space(&self.basis.checked_mul(a)?))
    }

    /// All `t`-dimensional subspaces contained in `self`, obtained by mapping
    /// the `t`-subspaces of coordinate space `F_q^{dim}` through the basis.
    pub fn subspaces_within(&self, t: usize) -> Result<Vec<Subspace>> {
        if t > self.dim() {
            return Ok(Vec::new());
        }
        let inner = enumerate_subspaces(self.field(), self.dim(), t, ENUMERATION_BUDGET)?;
        Ok(inner
            .iter()
            .map(|c| Subspace::row_space(&c.basis.mul(&self.basis)))
            .collect())
    }

    /// All vectors of the subspace, in order of coordinate codes with the first
    /// coordinate most significant.
    pub fn vectors(&self) -> Vec<Vec<Elem>> {
        let f = self.field();
        let q = f.q() as usize;
        let k = self.dim();
        let total = q.pow(k as u32);
        let mut out = Vec::with_capacity(total);
        let mut coords = vec![Elem::ZERO; k];
        for idx in 0..total {
            let mut x = idx;
            for c in coords.iter_mut().rev() {
                *c = Elem((x % q) as u32);
                x /= q;
            }
            out.push(self.basis.vec_mul(&coords));
        }
        out
    }

    /// Text form of the basis matrix.
    pub fn to_text(&self) -> String {
        self.basis.to_text()
    }
}

/// Number of `k`-dimensional subspaces of `F_q^n`:
/// `prod_{i<k} (q^{n-i} - 1) / (q^{i+1} - 1)`.
pub fn gaussian_binomial(n: u64, k: u64, q: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let qb = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= qb.pow((n - i) as u32) - 1u32;
        den *= qb.pow((i + 1) as u32) - 1u32;
    }
    num / den
}

/// The projective count of `r`-flats in `PG(n, q)`, equal to the number of
/// `(r+1)`-subspaces of `F_q^{n+1}`.
pub fn projective_binomial(r: u64, n: u64, q: u64) -> BigUint {
    gaussian_binomial(n + 1, r + 1, q)
}

/// `gaussian_binomial` as a `u64`, or `SizeExceeded` when above `budget`.
pub fn grassmannian_size(field: &Field, n: usize, k: usize, budget: u64) -> Result<u64> {
    let count = gaussian_binomial(n as u64, k as u64, field.q() as u64);
    count.to_u64().filter(|&c| c <= budget).ok_or_else(|| {
        Error::SizeExceeded(format!(
            "{count} subspaces of dimension {k} in GF({})^{n} (budget {budget})",
            field.spec()
        ))
    })
}

/// Streams every `k`-subspace of `F_q^n` in canonical order.
pub struct SubspaceIter {
    field: Field,
    n: usize,
    k: usize,
    pivots: Option<Vec<usize>>,
    /// (row, col) positions that are free for the current pivot set.
    free: Vec<(usize, usize)>,
    counter: Vec<u32>,
    exhausted_pivot: bool,
}

impl SubspaceIter {
    pub fn new(field: &Field, n: usize, k: usize) -> SubspaceIter {
        let pivots = (k <= n).then(|| (0..k).collect::<Vec<_>>());
        let mut it = SubspaceIter {
            field: field.clone(),
            n,
            k,
            pivots,
            free: Vec::new(),
            counter: Vec::new(),
            exhausted_pivot: false,
        };
        it.reset_free();
        it
    }

    fn reset_free(&mut self) {
        self.free.clear();
        if let Some(piv) = &self.pivots {
            for (r, &pc) in piv.iter().enumerate() {
                for c in pc + 1..self.n {
                    if !piv.contains(&c) {
                        self.free.push((r, c));
                    }
                }
            }
        }
        self.counter = vec![0; self.free.len()];
        self.exhausted_pivot = false;
    }

    fn advance_pivots(&mut self) {
        let Some(piv) = &mut self.pivots else { return };
        let (n, k) = (self.n, self.k);
        let mut i = k;
        loop {
            if i == 0 {
                self.pivots = None;
                return;
            }
            i -= 1;
            if piv[i] < n - k + i {
                piv[i] += 1;
                for j in i + 1..k {
                    piv[j] = piv[j - 1] + 1;
                }
                break;
            }
        }
        self.reset_free();
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.exhausted_pivot {
            self.advance_pivots();
        }
        let piv = self.pivots.clone()?;
        let mut m = Matrix::zeros(&self.field, self.k, self.n);
        for (r, &pc) in piv.iter().enumerate() {
            m.set(r, pc, Elem::ONE);
        }
        for (&(r, c), &v) in self.free.iter().zip(&self.counter) {
            m.set(r, c, Elem(v));
        }
        // increment the counter, last free position least significant
        let q = self.field.q();
        let mut carried = true;
        for v in self.counter.iter_mut().rev() {
            *v += 1;
            if *v < q {
                carried = false;
                break;
            }
            *v = 0;
        }
        if carried {
            self.exhausted_pivot = true;
        }
        Some(Subspace {
            basis: m,
            pivots: piv,
        })
    }
}

/// All `k`-subspaces of `F_q^n` in canonical order, refusing to materialize
/// more than `budget` of them.
pub fn enumerate_subspaces(
    field: &Field,
    n: usize,
    k: usize,
    budget: u64,
) -> Result<Vec<Subspace>> {
    if k > n {
        return Err(Error::BadParameters(format!(
            "dimension {k} exceeds ambient {n}"
        )));
    }
    let size = grassmannian_size(field, n, k, budget)?;
    let mut out = Vec::with_capacity(size as usize);
    out.extend(SubspaceIter::new(field, n, k));
    debug_assert_eq!(out.len() as u64, size);
    Ok(out)
}

/// Every subspace of `F_q^n`, by dimension.
pub fn all_subspaces(field: &Field, n: usize, budget: u64) -> Result<Vec<Subspace>> {
    let mut out = Vec::new();
    for k in 0..=n {
        out.extend(enumerate_subspaces(field, n, k, budget)?);
    }
    Ok(out)
}
