//! Closed-form counts of polynomials over `F_q`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::arith::{divisors, euler_phi, gcd, moebius, prime_power};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// Largest `q^m` for which [`count_invariant_irreducible`] enumerates
/// candidates instead of using the closed form.
pub const INVARIANT_ENUMERATION_LIMIT: u64 = 1 << 20;

fn check_q(q: u64) -> Result<()> {
    if prime_power(q).is_none() {
        return Err(Error::BadParameters(format!("{q} is not a prime power")));
    }
    Ok(())
}

/// Number of monic irreducible polynomials of degree `l` over `F_q`:
/// `(1/l) * sum_{d | l} mu(d) q^{l/d}`.
pub fn count_irreducible(q: u64, l: u32) -> Result<BigUint> {
    check_q(q)?;
    if l == 0 {
        return Err(Error::BadParameters("degree must be >= 1".into()));
    }
    let qb = BigInt::from(q);
    let mut sum = BigInt::zero();
    for d in divisors(l as u64) {
        let mu = moebius(d);
        if mu != 0 {
            sum += BigInt::from(mu) * qb.pow(l / d as u32);
        }
    }
    let (quot, rem) = (sum.clone() / l, sum % l);
    debug_assert!(rem.is_zero());
    Ok(quot.to_biguint().expect("count is nonnegative"))
}

/// The separable count in its closed form `q^l`. The number of monic
/// squarefree polynomials of degree `l >= 2` is smaller, `q^l - q^(l-1)`.
pub fn count_separable(q: u64, l: u32) -> Result<BigUint> {
    check_q(q)?;
    if l == 0 {
        return Err(Error::BadParameters("degree must be >= 1".into()));
    }
    Ok(BigUint::from(q).pow(l))
}

/// The same quantity as the telescoping sum `sum_{i=2}^{l} (q^i - q^{i-1}) + q`.
pub fn count_separable_sum(q: u64, l: u32) -> Result<BigUint> {
    check_q(q)?;
    if l == 0 {
        return Err(Error::BadParameters("degree must be >= 1".into()));
    }
    let qb = BigUint::from(q);
    let mut total = qb.clone();
    for i in 2..=l {
        total += qb.pow(i) - qb.pow(i - 1);
    }
    Ok(total)
}

/// How [`count_invariant_irreducible`] arrived at its answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    Enumeration,
    ClosedForm,
}

fn check_invariant_params(q: u64, k: u64, m: u32) -> Result<()> {
    check_q(q)?;
    if k < 2 || m == 0 {
        return Err(Error::BadParameters("need k >= 2 and m >= 1".into()));
    }
    if (q - 1) % k != 0 {
        return Err(Error::OrderMismatch {
            k,
            group_order: q - 1,
        });
    }
    Ok(())
}

/// Number of monic irreducible `f` of degree `n = k m` over `F_q` with
/// `f(a x) = f(x)`, where `a` has multiplicative order `k`.
///
/// Such `f` are exactly the irreducible `g(x^k)` with `g` monic of degree `m`,
/// so candidates are enumerated when `q^m` is small; otherwise the closed form
/// `phi(k)/(k m) * sum_{d | m, gcd(d,k) = 1} mu(d) (q^{m/d} - 1)` is used.
pub fn count_invariant_irreducible(q: u64, k: u64, m: u32) -> Result<(BigUint, CountMethod)> {
    check_invariant_params(q, k, m)?;
    let small = q
        .checked_pow(m)
        .is_some_and(|c| c <= INVARIANT_ENUMERATION_LIMIT)
        && q <= crate::field::MAX_FIELD_ORDER;
    if small {
        Ok((
            invariant_irreducible_by_enumeration(q, k, m)?,
            CountMethod::Enumeration,
        ))
    } else {
        Ok((
            invariant_irreducible_closed_form(q, k, m)?,
            CountMethod::ClosedForm,
        ))
    }
}

/// Enumerates monic `g` of degree `m` and tests `g(x^k)` for irreducibility.
pub fn invariant_irreducible_by_enumeration(q: u64, k: u64, m: u32) -> Result<BigUint> {
    check_invariant_params(q, k, m)?;
    let total = q
        .checked_pow(m)
        .filter(|&c| c <= INVARIANT_ENUMERATION_LIMIT)
        .ok_or_else(|| Error::SizeExceeded(format!("{q}^{m} candidates")))?;
    let field = Field::with_order(q)?;
    let (k, m) = (k as usize, m as usize);
    let mut count = 0u64;
    let mut coeffs = vec![0u32; k * m + 1];
    coeffs[k * m] = 1;
    for low in 0..total {
        let mut x = low;
        for i in 0..m {
            coeffs[i * k] = (x % q) as u32;
            x /= q;
        }
        if Poly::from_codes(&field, &coeffs)?.is_irreducible() {
            count += 1;
        }
    }
    Ok(BigUint::from(count))
}

/// The closed form only; see [`count_invariant_irreducible`].
pub fn invariant_irreducible_closed_form(q: u64, k: u64, m: u32) -> Result<BigUint> {
    check_invariant_params(q, k, m)?;
    let qb = BigInt::from(q);
    let mut sum = BigInt::zero();
    for d in divisors(m as u64) {
        if gcd(d, k) != 1 {
            continue;
        }
        let mu = moebius(d);
        if mu != 0 {
            sum += BigInt::from(mu) * (qb.pow(m / d as u32) - BigInt::one());
        }
    }
    let num = sum * BigInt::from(euler_phi(k));
    let den = BigInt::from(k) * BigInt::from(m);
    if !(num.clone() % den.clone()).is_zero() {
        return Err(Error::VerificationFailed(format!(
            "closed form is not integral for q={q}, k={k}, m={m}"
        )));
    }
    Ok((num / den).to_biguint().expect("count is nonnegative"))
}
