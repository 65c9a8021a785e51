//! Integer polynomials and cyclotomic polynomials.

use std::fmt;

use crate::arith::{divisors, moebius};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// Largest `n` accepted by [`cyclotomic_poly`].
pub const MAX_CYCLOTOMIC_INDEX: u64 = 1 << 16;

/// A polynomial with integer coefficients, lowest degree first, normalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> IntPoly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn one() -> IntPoly {
        IntPoly { coeffs: vec![1] }
    }

    /// `x^d - 1`.
    pub fn x_pow_minus_one(d: usize) -> IntPoly {
        let mut coeffs = vec![0; d + 1];
        coeffs[0] = -1;
        coeffs[d] += 1;
        IntPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn checked_mul(&self, other: &IntPoly) -> Option<IntPoly> {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Some(IntPoly::new(Vec::new()));
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].checked_add(a.checked_mul(b)?)?;
            }
        }
        Some(IntPoly::new(out))
    }

    /// Exact division by a monic divisor; `None` on a nonzero remainder or
    /// overflow.
    fn div_exact_monic(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let dd = divisor.degree()?;
        debug_assert_eq!(divisor.coeffs[dd], 1);
        let Some(nd) = self.degree() else {
            return Some(IntPoly::new(Vec::new()));
        };
        if nd < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0i64; nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = rem[i + dd];
            quot[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].checked_sub(c.checked_mul(d)?)?;
            }
        }
        rem.iter().all(|&r| r == 0).then(|| IntPoly::new(quot))
    }

    /// Reduction modulo the characteristic of `field`.
    pub fn reduce(&self, field: &Field) -> Poly {
        Poly::new(
            field,
            self.coeffs.iter().map(|&c| field.from_int(c)).collect(),
        )
    }

    /// Space-separated integer coefficients, lowest degree first.
    pub fn to_text(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{a}*x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{a}*x^{i}")?,
            }
        }
        Ok(())
    }
}

/// The `n`-th cyclotomic polynomial `prod_{d | n} (x^d - 1)^{mu(n/d)}`,
/// multiplying out the positive factors and then dividing exactly by the
/// negative ones.
pub fn cyclotomic_poly(n: u64) -> Result<IntPoly> {
    if n == 0 {
        return Err(Error::BadParameters("n must be >= 1".into()));
    }
    if n > MAX_CYCLOTOMIC_INDEX {
        return Err(Error::SizeExceeded(format!("cyclotomic index {n}")));
    }
    let overflow = || Error::SizeExceeded(format!("coefficients of Phi_{n} overflow i64"));
    let mut acc = IntPoly::one();
    let mut denominators = Vec::new();
    for d in divisors(n) {
        match moebius(n / d) {
            1 => {
                acc = acc
                    .checked_mul(&IntPoly::x_pow_minus_one(d as usize))
                    .ok_or_else(overflow)?
            }
            -1 => denominators.push(d),
            _ => {}
        }
    }
    for d in denominators {
        acc = acc
            .div_exact_monic(&IntPoly::x_pow_minus_one(d as usize))
            .ok_or_else(overflow)?;
    }
    Ok(acc)
}
