//! Dense matrices over `F_q`.

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::text::parse_field_spec;

/// A row-major matrix over a [`Field`].
#[derive(Clone)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
            && self.field == other.field
    }
}

impl Eq for Matrix {}

impl Hash for Matrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Matrix[{}] {}x{} [",
            self.field.spec(),
            self.rows,
            self.cols
        )?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|e| e.code() >= field.q()) {
            return Err(Error::BadParameters(format!(
                "entry {bad} out of range for GF({})",
                field.spec()
            )));
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn from_codes(field: &Field, rows: usize, cols: usize, codes: &[u32]) -> Result<Matrix> {
        let data = codes
            .iter()
            .map(|&c| field.elem(c))
            .collect::<Result<Vec<_>>>()?;
        Matrix::new(field, rows, cols, data)
    }

    /// Builds a matrix from equal-length rows.
    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<Elem>]) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Matrix::new(field, rows.len(), cols, data)
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Elem::ONE;
        }
        m
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(field: &Field, diag: &[Elem]) -> Matrix {
        let n = diag.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = d;
        }
        m
    }

    /// The permutation matrix with `P[i][perm[i]] = 1`, so that `v P` moves
    /// coordinate `i` to position `perm[i]`.
    pub fn permutation(field: &Field, perm: &[usize]) -> Result<Matrix> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &j in perm {
            if j >= n || std::mem::replace(&mut seen[j], true) {
                return Err(Error::BadParameters(format!(
                    "{perm:?} is not a permutation"
                )));
            }
        }
        let mut m = Matrix::zeros(field, n, n);
        for (i, &j) in perm.iter().enumerate() {
            m.data[i * n + j] = Elem::ONE;
        }
        Ok(m)
    }

    /// The cyclic coordinate shift `(v_0, ..., v_{n-1}) -> (v_{n-1}, v_0, ...)`.
    pub fn shift(field: &Field, n: usize) -> Matrix {
        let perm: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        Matrix::permutation(field, &perm).expect("rotation is a permutation")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn codes(&self) -> Vec<u32> {
        self.data.iter().map(|e| e.code()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Reduced row-echelon form (zero rows kept at the bottom) and the pivot
    /// columns.
    pub fn rref_with_pivots(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    m.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c));
            if inv != Elem::ONE {
                for j in c..self.cols {
                    let v = f.mul(m.get(r, j), inv);
                    m.set(r, j, v);
                }
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Reduced row-echelon form and rank.
    pub fn rref(&self) -> (Matrix, usize) {
        let (m, pivots) = self.rref_with_pivots();
        (m, pivots.len())
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// First `n` rows.
    pub fn take_rows(&self, n: usize) -> Matrix {
        let n = n.min(self.rows);
        Matrix {
            field: self.field.clone(),
            rows: n,
            cols: self.cols,
            data: self.data[..n * self.cols].to_vec(),
        }
    }

    /// A basis (as rows, in reduced echelon form) of `{v : self * v^T = 0}`.
    pub fn nullspace(&self) -> Matrix {
        let f = &self.field;
        let (r, pivots) = self.rref_with_pivots();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, Elem::ONE);
            for (i, &pc) in pivots.iter().enumerate() {
                out.set(k, pc, f.neg(r.get(i, fc)));
            }
        }
        out.rref().0
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    /// Matrix product; panics on incompatible shapes.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.checked_mul(other).expect("incompatible matrix shapes")
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.rows, "vector length must match row count");
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(a, self.get(i, j)));
            }
        }
        out
    }

    pub fn pow(&self, mut n: u64) -> Matrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.field, self.rows);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols)
                    .all(|j| self.get(i, j) == if i == j { Elem::ONE } else { Elem::ZERO })
            })
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotInvertible);
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, Elem::ONE);
        }
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::NotInvertible);
        }
        let mut inv = Matrix::zeros(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Ok(inv)
    }

    /// Text form: a header `"p^e rows cols"` followed by one line per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}", self.field.spec(), self.rows, self.cols);
        for i in 0..self.rows {
            s.push('\n');
            let row: Vec<String> = self.row(i).iter().map(|e| e.code().to_string()).collect();
            s.push_str(&row.join(" "));
        }
        s
    }

    /// Parses [`Matrix::to_text`] output. The field is built from the header.
    pub fn parse(text: &str) -> Result<Matrix> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("bad matrix header {header:?}")));
        }
        let field = parse_field_spec(parts[0])?;
        let dim = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad dimension {s:?}")))
        };
        let (rows, cols) = (dim(parts[1])?, dim(parts[2])?);
        let mut codes = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("expected {rows} rows")))?;
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad entry {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != cols {
                return Err(Error::Parse(format!(
                    "row {line:?} does not have {cols} entries"
                )));
            }
            codes.extend(row);
        }
        if let Some(extra) = lines.next() {
            return Err(Error::Parse(format!("unexpected trailing line {extra:?}")));
        }
        Matrix::from_codes(&field, rows, cols, &codes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(field: &Field, rows: usize, cols: usize, codes: &[u32]) -> Matrix {
        Matrix::from_codes(field, rows, cols, codes).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f2 = Field::prime(2).unwrap();
        let id = Matrix::identity(&f2, 3);
        assert_eq!(id.rref(), (id.clone(), 3));
        assert_eq!(
            m(&f2, 2, 2, &[1, 1, 1, 1]).rref(),
            (m(&f2, 2, 2, &[1, 1, 0, 0]), 1)
        );
        assert_eq!(
            m(&f2, 2, 3, &[0, 1, 1, 1, 0, 1]).rref(),
            (m(&f2, 2, 3, &[1, 0, 1, 0, 1, 1]), 2)
        );
    }

    #[test]
    fn inverse_and_nullspace() {
        let f5 = Field::prime(5).unwrap();
        let a = m(&f5, 2, 2, &[1, 2, 3, 4]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert_eq!(
            m(&f5, 2, 2, &[1, 2, 2, 4]).inverse().unwrap_err(),
            Error::NotInvertible
        );
        let b = m(&f5, 1, 3, &[1, 2, 3]);
        let k = b.nullspace();
        assert_eq!(k.rows(), 2);
        assert!(b.mul(&k.transpose()).data().iter().all(|e| e.is_zero()));
    }

    #[test]
    fn text_round_trip() {
        let f4 = Field::new(2, 2).unwrap();
        let a = m(&f4, 2, 3, &[0, 1, 2, 3, 0, 1]);
        let t = a.to_text();
        assert_eq!(t, "2^2 2 3\n0 1 2\n3 0 1");
        assert_eq!(Matrix::parse(&t).unwrap(), a);
        assert!(Matrix::parse("2^2 1 2\n0 4").is_err());
        assert!(Matrix::parse("2^2 2 2\n0 1").is_err());
    }

    #[test]
    fn shift_moves_coordinates_right() {
        let f2 = Field::prime(2).unwrap();
        let s = Matrix::shift(&f2, 4);
        let v = [Elem::ONE, Elem::ONE, Elem::ZERO, Elem::ZERO];
        assert_eq!(
            s.vec_mul(&v),
            vec![Elem::ZERO, Elem::ONE, Elem::ONE, Elem::ZERO]
        );
        assert!(s.pow(4).is_identity());
    }
}
