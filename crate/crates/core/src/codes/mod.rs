//! Linear codes over `F_q`.

pub mod goppa;

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::factor_xn_minus_1;
use crate::field::{Elem, Field};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::subspace::Subspace;

pub use goppa::goppa_code;

/// Default cap on `q^k` for codeword enumeration.
pub const CODEWORD_BUDGET: u64 = 1 << 20;

/// An `[n, k]` code, stored as the row space of its RREF generator matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearCode {
    space: Subspace,
}

impl LinearCode {
    /// The row space of `generator` (dependent rows are dropped).
    pub fn from_generator(generator: &Matrix) -> LinearCode {
        LinearCode {
            space: Subspace::row_space(generator),
        }
    }

    pub fn from_subspace(space: Subspace) -> LinearCode {
        LinearCode { space }
    }

    pub fn field(&self) -> &Field {
        self.space.field()
    }

    pub fn n(&self) -> usize {
        self.space.ambient()
    }

    pub fn k(&self) -> usize {
        self.space.dim()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.space
    }

    /// The RREF generator matrix.
    pub fn generator(&self) -> &Matrix {
        self.space.basis()
    }

    /// A parity-check matrix: the RREF generator of the dual code.
    pub fn parity_check(&self) -> Matrix {
        self.space.dual().basis().clone()
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode {
            space: self.space.dual(),
        }
    }

    pub fn contains(&self, word: &[Elem]) -> bool {
        word.len() == self.n() && self.space.contains_vector(word)
    }

    fn check_budget(&self, budget: u64) -> Result<u64> {
        let q = self.field().q() as u64;
        q.checked_pow(self.k() as u32)
            .filter(|&c| c <= budget)
            .ok_or_else(|| {
                Error::BudgetExceeded(format!("{q}^{} codewords (budget {budget})", self.k()))
            })
    }

    /// All codewords, messages in code order with the first coordinate most
    /// significant.
    pub fn codewords(&self, budget: u64) -> Result<Vec<Vec<Elem>>> {
        self.check_budget(budget)?;
        Ok(self.space.vectors())
    }

    /// Minimum Hamming weight of a nonzero codeword; `None` for the zero code.
    pub fn min_distance(&self, budget: u64) -> Result<Option<usize>> {
        self.check_budget(budget)?;
        let g = self.generator();
        let q = self.field().q() as u64;
        let k = self.k();
        let mut best: Option<usize> = None;
        let mut msg = vec![Elem::ZERO; k];
        for idx in 1..q.pow(k as u32) {
            let mut x = idx;
            for m in msg.iter_mut().rev() {
                *m = Elem((x % q) as u32);
                x /= q;
            }
            let w = weight(&g.vec_mul(&msg));
            if best.map_or(true, |b| w < b) {
                best = Some(w);
            }
        }
        Ok(best)
    }

    /// `[n,k,d]_q`, with `d` omitted when it was not computed.
    pub fn params(&self, d: Option<usize>) -> String {
        match d {
            Some(d) => format!("[{},{},{}]_{}", self.n(), self.k(), d, self.field().q()),
            None => format!("[{},{}]_{}", self.n(), self.k(), self.field().q()),
        }
    }
}

/// Number of nonzero coordinates.
pub fn weight(word: &[Elem]) -> usize {
    word.iter().filter(|e| !e.is_zero()).count()
}

/// The evaluation code `{(f(a_1), ..., f(a_n)) : deg f < k}`.
pub fn rs_code(field: &Field, points: &[Elem], k: usize) -> Result<LinearCode> {
    let n = points.len();
    if k > n {
        return Err(Error::BadDimension { n, k });
    }
    let mut sorted = points.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DuplicatePoints);
    }
    let mut data = Vec::with_capacity(k * n);
    for j in 0..k {
        data.extend(points.iter().map(|&a| field.pow(a, j as u64)));
    }
    let code = LinearCode::from_generator(&Matrix::new(field, k, n, data)?);
    if code.k() != k {
        return Err(Error::VerificationFailed(
            "evaluation map is not injective".into(),
        ));
    }
    Ok(code)
}

/// The cyclic code of length `n` generated by `g` (made monic), spanned by
/// the shifts `x^i g` for `i < n - deg g`.
pub fn cyclic_code(field: &Field, n: usize, g: &Poly) -> Result<LinearCode> {
    if g.is_zero() {
        return Err(Error::NotADivisor(n));
    }
    let g = g.monic();
    let target = Poly::x_pow_minus_one(field, n);
    if !target.is_divisible_by(&g) {
        return Err(Error::NotADivisor(n));
    }
    let r = g.degree().unwrap_or(0);
    let k = n - r;
    let mut m = Matrix::zeros(field, k, n);
    for i in 0..k {
        for (j, &c) in g.coeffs().iter().enumerate() {
            m.set(i, i + j, c);
        }
    }
    Ok(LinearCode::from_generator(&m))
}

/// The image of every codeword under `v -> v T^s` for the coordinate shift `T`.
pub fn shift_code(code: &LinearCode, s: usize) -> LinearCode {
    let t = Matrix::shift(code.field(), code.n()).pow(s as u64);
    LinearCode {
        space: code.space.apply(&t).expect("square shift of matching size"),
    }
}

/// The least `l >= 1` dividing `n` with `T^l(C) = C`, and the co-index `n / l`.
pub fn quasi_cyclic_index(code: &LinearCode) -> (usize, usize) {
    let n = code.n();
    if n == 0 {
        return (1, 0);
    }
    let l = (1..=n)
        .filter(|l| n % l == 0)
        .find(|&l| shift_code(code, l) == *code)
        .unwrap_or(n);
    (l, n / l)
}

/// `C^s = {c s : c in C}` for an invertible `n x n` matrix `s`.
pub fn code_action(code: &LinearCode, sigma: &Matrix) -> Result<LinearCode> {
    if sigma.rows() != code.n() || !sigma.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix acting on codes of length {}",
            sigma.rows(),
            sigma.cols(),
            code.n()
        )));
    }
    if sigma.rank() != sigma.rows() {
        return Err(Error::NotInvertible);
    }
    Ok(LinearCode {
        space: code.space.apply(sigma)?,
    })
}

/// `dim(C1 + C2) - dim(C1 ∩ C2)`.
pub fn code_pair_distance(a: &LinearCode, b: &LinearCode) -> Result<usize> {
    a.space.distance(&b.space)
}

/// The permutation matrix reversing coordinate order.
pub fn reversal(field: &Field, n: usize) -> Matrix {
    let perm: Vec<usize> = (0..n).rev().collect();
    Matrix::permutation(field, &perm).expect("reversal is a permutation")
}

pub fn is_reversible(code: &LinearCode) -> bool {
    code_action(code, &reversal(code.field(), code.n())).is_ok_and(|c| c == *code)
}

/// Counts of cyclic codes of length `n` by dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicCodeCount {
    /// Degrees of the irreducible factors of `x^n - 1`.
    pub factor_degrees: Vec<usize>,
    /// dimension -> number of cyclic codes, as decimal strings.
    pub by_dimension: BTreeMap<usize, String>,
    pub total: String,
    /// dimension -> `(q)_k / (q^2 - q)` with `(q)_k` the falling factorial,
    /// as a reduced fraction.
    pub falling_factorial_ratio: BTreeMap<usize, String>,
}

/// Counts divisors of `x^n - 1` by degree: a cyclic code of dimension `k`
/// corresponds to a set of irreducible factors of total degree `n - k`.
pub fn count_cyclic_codes(field: &Field, n: usize) -> Result<CyclicCodeCount> {
    let factors = factor_xn_minus_1(field, n)?;
    let degrees: Vec<usize> = factors.iter().map(|f| f.degree().unwrap_or(0)).collect();
    let mut ways = vec![BigUint::zero(); n + 1];
    ways[0] = BigUint::one();
    for &d in &degrees {
        for s in (d..=n).rev() {
            let add = ways[s - d].clone();
            ways[s] += add;
        }
    }
    let mut by_dimension = BTreeMap::new();
    let mut total = BigUint::zero();
    for (deg, w) in ways.iter().enumerate() {
        if !w.is_zero() {
            by_dimension.insert(n - deg, w.to_string());
            total += w;
        }
    }
    let q = BigInt::from(field.q());
    let den = &q * &q - &q;
    let mut ratio = BTreeMap::new();
    let mut falling = BigInt::one();
    for k in 0..=n {
        if k > 0 {
            falling *= &q - BigInt::from(k - 1);
        }
        let g = falling.gcd(&den);
        let (a, b) = if g.is_zero() {
            (falling.clone(), den.clone())
        } else {
            (&falling / &g, &den / &g)
        };
        let text = if b.is_one() {
            a.to_string()
        } else {
            format!("{a}/{b}")
        };
        ratio.insert(k, text);
    }
    Ok(CyclicCodeCount {
        factor_degrees: degrees,
        by_dimension,
        total: total.to_string(),
        falling_factorial_ratio: ratio,
    })
}

/// A minimum-weight word of `v + C`, ties broken by the smallest codes read
/// left to right.
pub fn coset_leader(code: &LinearCode, v: &[Elem], budget: u64) -> Result<Vec<Elem>> {
    if v.len() != code.n() {
        return Err(Error::DimensionMismatch(format!(
            "word of length {} for a code of length {}",
            v.len(),
            code.n()
        )));
    }
    let f = code.field();
    let mut best: Option<(usize, Vec<Elem>)> = None;
    for c in code.codewords(budget)? {
        let w: Vec<Elem> = v.iter().zip(&c).map(|(&a, &b)| f.add(a, b)).collect();
        let key = weight(&w);
        let better = match &best {
            None => true,
            Some((bw, bv)) => key < *bw || (key == *bw && w < *bv),
        };
        if better {
            best = Some((key, w));
        }
    }
    Ok(best.map(|(_, w)| w).expect("a code contains the zero word"))
}
