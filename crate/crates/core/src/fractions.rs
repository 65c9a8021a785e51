//! Continued fractions and partial fractions of rational functions over `F_q`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Elem;
use crate::poly::Poly;

/// Quotients `q_1, ..., q_k` of the Euclidean algorithm on `(f, g)`, so that
/// `f/g = q_1 + 1/(q_2 + 1/(... + 1/q_k))`. When `deg f < deg g` the first
/// quotient is the zero constant.
pub fn continued_fraction(f: &Poly, g: &Poly) -> Result<Vec<Poly>> {
    if g.is_zero() {
        return Err(Error::DivisionByZeroPoly);
    }
    let mut out = Vec::new();
    let (mut a, mut b) = (f.clone(), g.clone());
    loop {
        let (q, r) = a.div_rem(&b)?;
        out.push(q);
        if r.is_zero() {
            return Ok(out);
        }
        a = std::mem::replace(&mut b, r);
    }
}

/// Folds a quotient list back into `(numerator, denominator)` via the
/// convergent recurrence. The result is in lowest terms; it equals `f/g`
/// as a fraction but is not normalized to a monic denominator.
pub fn from_continued_fraction(quotients: &[Poly]) -> Option<(Poly, Poly)> {
    let field = quotients.first()?.field().clone();
    let (mut h_prev, mut h) = (Poly::zero(&field), Poly::one(&field));
    let (mut k_prev, mut k) = (Poly::one(&field), Poly::zero(&field));
    for q in quotients {
        let h_next = &(q * &h) + &h_prev;
        let k_next = &(q * &k) + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
    Some((h, k))
}

/// One term `numerator / (x - root)^power`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialFraction {
    #[serde(serialize_with = "serialize_poly")]
    pub numerator: Poly,
    #[serde(serialize_with = "serialize_elem")]
    pub root: Elem,
    pub power: usize,
}

fn serialize_poly<S: serde::Serializer>(p: &Poly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_text())
}

fn serialize_elem<S: serde::Serializer>(e: &Elem, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u32(e.code())
}

/// Decomposes `f/g` into `sum c_{i,j} / (x - a_i)^j` for `g` splitting into
/// linear factors. Terms with a zero numerator are omitted; the rest are
/// sorted by root code, then power.
pub fn partial_fractions(f: &Poly, g: &Poly) -> Result<Vec<PartialFraction>> {
    let gd = g.degree().ok_or(Error::DivisionByZeroPoly)?;
    if f.degree().is_some_and(|fd| fd >= gd) {
        return Err(Error::DegreeOrder);
    }
    let field = g.field();
    let roots = g.roots();
    if roots.iter().map(|&(_, m)| m).sum::<usize>() != gd {
        return Err(Error::NonSplittingDenominator);
    }
    let mut terms = Vec::new();
    for (a, m) in roots {
        let lin = Poly::linear(field, a);
        let lin_m = lin.pow(m as u32);
        let cofactor = g.div_rem(&lin_m)?.0;
        // f/g = (f/h) / (x-a)^m; the principal part at a comes from the
        // Taylor coefficients of f/h mod (x-a)^m
        let h_inv = cofactor
            .inverse_mod(&lin_m)
            .expect("cofactor is coprime to (x - a)^m");
        let u = f.mul_mod(&h_inv, &lin_m);
        let taylor = u.taylor_at(a);
        for power in 1..=m {
            let c = taylor.get(m - power).copied().unwrap_or(Elem::ZERO);
            if !c.is_zero() {
                terms.push(PartialFraction {
                    numerator: Poly::constant(field, c),
                    root: a,
                    power,
                });
            }
        }
    }
    terms.sort_by_key(|t| (t.root, t.power));
    Ok(terms)
}

/// Sums the terms over the common denominator `prod (x - a_i)^{max power}`,
/// returning `(numerator, denominator)`.
pub fn recombine(field: &crate::field::Field, terms: &[PartialFraction]) -> (Poly, Poly) {
    let mut den = Poly::one(field);
    let mut maxpow: Vec<(Elem, usize)> = Vec::new();
    for t in terms {
        match maxpow.iter_mut().find(|(a, _)| *a == t.root) {
            Some(entry) => entry.1 = entry.1.max(t.power),
            None => maxpow.push((t.root, t.power)),
        }
    }
    for &(a, m) in &maxpow {
        den = &den * &Poly::linear(field, a).pow(m as u32);
    }
    let mut num = Poly::zero(field);
    for t in terms {
        let part = den
            .div_rem(&Poly::linear(field, t.root).pow(t.power as u32))
            .expect("nonzero")
            .0;
        num = &num + &(&t.numerator * &part);
    }
    (num, den)
}
