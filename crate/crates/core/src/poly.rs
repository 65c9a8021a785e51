//! Dense univariate polynomials over a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::prime_factors;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// A polynomial with coefficients lowest degree first and no trailing zeros.
/// The zero polynomial has no coefficients.
#[derive(Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.field.spec(), self.to_text())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c.code()) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}*x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// From integer element codes, lowest degree first.
    pub fn from_codes(field: &Field, codes: &[u32]) -> Result<Poly> {
        let coeffs = codes
            .iter()
            .map(|&c| field.elem(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(field, coeffs))
    }

    pub fn zero(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, Elem::ONE)
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::new(field, vec![c])
    }

    /// The polynomial `x`.
    pub fn x(field: &Field) -> Poly {
        Poly::monomial(field, Elem::ONE, 1)
    }

    /// `c * x^deg`.
    pub fn monomial(field: &Field, c: Elem, deg: usize) -> Poly {
        let mut coeffs = vec![Elem::ZERO; deg + 1];
        coeffs[deg] = c;
        Poly::new(field, coeffs)
    }

    /// `x - a`.
    pub fn linear(field: &Field, a: Elem) -> Poly {
        Poly::new(field, vec![field.neg(a), Elem::ONE])
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(field: &Field, n: usize) -> Poly {
        let mut coeffs = vec![Elem::ZERO; n + 1];
        coeffs[0] = field.neg(Elem::ONE);
        coeffs[n] = field.add(coeffs[n], Elem::ONE);
        Poly::new(field, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Elem::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Scaled to leading coefficient one; zero stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading());
        self.scale(inv)
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Euclidean division, returning `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZeroPoly)?;
        let f = &self.field;
        let Some(nd) = self.degree() else {
            return Ok((Poly::zero(f), Poly::zero(f)));
        };
        if nd < dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let lead_inv = f.inv(divisor.leading());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Elem::ZERO; nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = f.mul(rem[i + dd], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[i] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(rem[i + j], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// True iff `divisor` divides `self` (the zero divisor divides only zero).
    pub fn is_divisible_by(&self, divisor: &Poly) -> bool {
        if divisor.is_zero() {
            return self.is_zero();
        }
        self.rem(divisor).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic greatest common divisor (zero iff both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s2 = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let c = f.inv(r0.leading());
        (r0.scale(c), s0.scale(c), t0.scale(c))
    }

    /// Inverse of `self` modulo `modulus`, if it exists.
    pub fn inverse_mod(&self, modulus: &Poly) -> Option<Poly> {
        let (g, s, _) = self.ext_gcd(modulus);
        (g.degree() == Some(0)).then(|| s.rem(modulus).expect("nonzero modulus"))
    }

    pub fn mul_mod(&self, other: &Poly, modulus: &Poly) -> Poly {
        (self * other).rem(modulus).expect("nonzero modulus")
    }

    /// `self^n mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, mut n: u64, modulus: &Poly) -> Poly {
        let mut base = self.rem(modulus).expect("nonzero modulus");
        let mut acc = Poly::one(&self.field)
            .rem(modulus)
            .expect("nonzero modulus");
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_mod(&base, modulus);
            }
            base = base.mul_mod(&base, modulus);
            n >>= 1;
        }
        acc
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one(&self.field);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Rabin's irreducibility test: `f` of degree `d >= 1` is irreducible iff
    /// `x^{q^d} = x (mod f)` and `gcd(x^{q^{d/r}} - x, f) = 1` for every prime
    /// `r | d`.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else { return false };
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        let f = self.monic();
        let field = &self.field;
        let q = field.q() as u64;
        let x = Poly::x(field);
        // frob[i] = x^{q^i} mod f
        let mut frob = Vec::with_capacity(d + 1);
        frob.push(x.rem(&f).expect("nonzero"));
        for i in 1..=d {
            let next = frob[i - 1].pow_mod(q, &f);
            frob.push(next);
        }
        if frob[d] != frob[0] {
            return false;
        }
        prime_factors(d as u64).into_iter().all(|r| {
            let h = &frob[d / r as usize] - &x;
            h.gcd(&f).degree() == Some(0)
        })
    }

    /// Roots in the field with multiplicities, in code order of the root.
    pub fn roots(&self) -> Vec<(Elem, usize)> {
        let mut out = Vec::new();
        if self.is_zero() {
            return out;
        }
        for a in self.field.elements() {
            let lin = Poly::linear(&self.field, a);
            let mut rest = self.clone();
            let mut m = 0;
            loop {
                let (q, r) = rest.div_rem(&lin).expect("nonzero");
                if !r.is_zero() || rest.is_constant() {
                    break;
                }
                rest = q;
                m += 1;
            }
            if m > 0 {
                out.push((a, m));
            }
        }
        out
    }

    /// Coefficients of `self` in powers of `(x - a)`: `self = sum c_i (x-a)^i`.
    pub fn taylor_at(&self, a: Elem) -> Vec<Elem> {
        let lin = Poly::linear(&self.field, a);
        let mut out = Vec::new();
        let mut rest = self.clone();
        while !rest.is_zero() {
            let (q, r) = rest.div_rem(&lin).expect("nonzero");
            out.push(r.coeff(0));
            rest = q;
        }
        out
    }

    /// Sort key matching the integer encoding `sum c_i q^i` within a degree:
    /// degree first, then coefficients from the top down.
    pub fn sort_key(&self) -> (usize, Vec<u32>) {
        (
            self.coeffs.len(),
            self.coeffs.iter().rev().map(|c| c.code()).collect(),
        )
    }

    /// Text form: space-separated codes, lowest degree first. Zero is `"0"`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.code().to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses the text form produced by [`Poly::to_text`].
    pub fn parse(field: &Field, text: &str) -> Result<Poly> {
        let codes = text
            .split_whitespace()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Poly::from_codes(field, &codes)
    }

    fn zip_with(&self, other: &Poly, op: impl Fn(Elem, Elem) -> Elem) -> Poly {
        debug_assert!(
            self.field == other.field,
            "polynomials over different fields"
        );
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| op(self.coeff(i), other.coeff(i))).collect();
        Poly::new(&self.field, coeffs)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let f = self.field.clone();
        self.zip_with(rhs, |a, b| f.add(a, b))
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let f = self.field.clone();
        self.zip_with(rhs, |a, b| f.sub(a, b))
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.neg(a)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        debug_assert!(self.field == rhs.field, "polynomials over different fields");
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }
}
