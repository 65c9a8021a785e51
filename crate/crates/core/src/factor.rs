//! Factorization of `x^n - 1` over `F_q` for `gcd(n, q) = 1`.

use crate::arith::{cyclotomic_cosets, gcd};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// Largest `n` accepted by [`factor_xn_minus_1`].
pub const MAX_FACTOR_LENGTH: usize = 1 << 12;

/// Monic irreducible factors of `x^n - 1`, sorted by degree then by
/// coefficient code from the top down.
///
/// The coset sums `v_C = sum_{j in C} x^j`, one per cyclotomic coset of `q`
/// modulo `n`, are fixed by Frobenius in `F_q[x]/(x^n - 1)` and so reduce to a
/// constant modulo each irreducible factor. Splitting by `gcd(h, v_C - s)`
/// over all constants `s` separates every pair of factors.
pub fn factor_xn_minus_1(field: &Field, n: usize) -> Result<Vec<Poly>> {
    if n == 0 {
        return Err(Error::BadParameters("n must be >= 1".into()));
    }
    let p = field.p() as u64;
    if gcd(n as u64, p) != 1 {
        return Err(Error::NotCoprimeCharacteristic { p, n: n as u64 });
    }
    if n > MAX_FACTOR_LENGTH {
        return Err(Error::SizeExceeded(format!("x^{n} - 1")));
    }
    let target = Poly::x_pow_minus_one(field, n);
    let cosets = cyclotomic_cosets(field.q() as u64, n as u64);
    let mut factors = vec![target.clone()];
    for coset in &cosets {
        if factors.len() == cosets.len() {
            break;
        }
        let mut coeffs = vec![field.zero(); n];
        for &j in coset {
            coeffs[j as usize] = field.one();
        }
        let v = Poly::new(field, coeffs);
        let mut next = Vec::with_capacity(factors.len());
        for h in factors {
            if h.degree() == Some(1) {
                next.push(h);
                continue;
            }
            let v_mod = v.rem(&h)?;
            let mut rest = h.clone();
            for s in field.elements() {
                if rest.degree() == Some(0) {
                    break;
                }
                let shifted = &v_mod - &Poly::constant(field, s);
                let g = rest.gcd(&shifted);
                if g.degree().unwrap_or(0) >= 1 {
                    rest = rest.div_rem(&g)?.0;
                    next.push(g);
                }
            }
        }
        factors = next;
    }
    if factors.len() != cosets.len() {
        return Err(Error::VerificationFailed(format!(
            "found {} factors of x^{n} - 1, expected {}",
            factors.len(),
            cosets.len()
        )));
    }
    if let Some(bad) = factors.iter().find(|f| !f.is_irreducible()) {
        return Err(Error::VerificationFailed(format!(
            "factor {bad} is reducible"
        )));
    }
    let product = factors.iter().fold(Poly::one(field), |acc, f| &acc * f);
    if product != target {
        return Err(Error::VerificationFailed(format!(
            "factors do not multiply back to x^{n} - 1"
        )));
    }
    factors.sort_by_key(|f| f.sort_key());
    Ok(factors)
}
