//! Key exchange in the rotation subgroup of a dihedral group, with a
//! brute-force discrete logarithm. Insecure by construction.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::cayley::GroupElement;

/// Largest rotation order accepted by [`dlp_bruteforce`].
pub const MAX_DLP_ORDER: u64 = 1_000_000;

/// `tau^r sigma^s` in the dihedral group of order `2n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Dihedral {
    pub n: u64,
    pub r: u64,
    pub s: bool,
}

impl Dihedral {
    pub fn new(n: u64, r: u64, s: bool) -> Dihedral {
        assert!(n > 0, "dihedral group needs n >= 1");
        Dihedral { n, r: r % n, s }
    }

    pub fn identity(n: u64) -> Dihedral {
        Dihedral::new(n, 0, false)
    }

    pub fn rotation(n: u64) -> Dihedral {
        Dihedral::new(n, 1, false)
    }

    pub fn reflection(n: u64) -> Dihedral {
        Dihedral::new(n, 0, true)
    }

    pub fn is_identity(&self) -> bool {
        self.r == 0 && !self.s
    }

    /// `(r1, s1)(r2, s2) = (r1 + (-1)^{s1} r2, s1 xor s2)`.
    pub fn mul(&self, other: &Dihedral) -> Dihedral {
        debug_assert_eq!(self.n, other.n);
        let r2 = if self.s {
            (self.n - other.r) % self.n
        } else {
            other.r
        };
        Dihedral::new(self.n, self.r + r2, self.s ^ other.s)
    }

    pub fn inv(&self) -> Dihedral {
        if self.s {
            *self
        } else {
            Dihedral::new(self.n, self.n - self.r, false)
        }
    }
}

impl GroupElement for Dihedral {
    fn op(&self, other: &Self) -> Self {
        self.mul(other)
    }

    fn inverse(&self) -> Self {
        self.inv()
    }

    fn label(&self) -> String {
        match self.s {
            false => format!("r{}", self.r),
            true => format!("r{}s", self.r),
        }
    }
}

/// `g^m` by square and multiply.
pub fn dihedral_pow(g: &Dihedral, mut m: u64) -> Dihedral {
    let mut base = *g;
    let mut acc = Dihedral::identity(g.n);
    while m > 0 {
        if m & 1 == 1 {
            acc = acc.mul(&base);
        }
        base = base.mul(&base);
        m >>= 1;
    }
    acc
}

/// Everything both parties see and compute. Group elements are written as
/// rotation exponents since the exchange never leaves the rotations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DhTranscript {
    pub q: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub d: u64,
    pub e: u64,
    /// `tau^d`
    #[serde(rename = "D")]
    pub big_d: u64,
    /// `tau^e`
    #[serde(rename = "E")]
    pub big_e: u64,
    /// `(tau^e)^d` as computed by the first party.
    pub shared_first: u64,
    /// `(tau^d)^e` as computed by the second party.
    pub shared_second: u64,
    pub shared: u64,
}

/// Runs the exchange in the dihedral group of order `2(q-1)` with secrets
/// drawn uniformly from `1..q-1` by a SplitMix64 stream seeded with `seed`.
pub fn dh_exchange(q: u64, seed: u64) -> Result<DhTranscript> {
    let n = rotation_order(q)?;
    let mut rng = SplitMix64::seed_from_u64(seed);
    let d = uniform_secret(&mut rng, n);
    let e = uniform_secret(&mut rng, n);
    dh_exchange_with(q, d, e)
}

/// The exchange with both secrets given.
pub fn dh_exchange_with(q: u64, d: u64, e: u64) -> Result<DhTranscript> {
    let n = rotation_order(q)?;
    if !(1..n).contains(&d) || !(1..n).contains(&e) {
        return Err(Error::BadParameters(format!("secrets must lie in 1..{n}")));
    }
    let tau = Dihedral::rotation(n);
    let big_d = dihedral_pow(&tau, d);
    let big_e = dihedral_pow(&tau, e);
    let first = dihedral_pow(&big_e, d);
    let second = dihedral_pow(&big_d, e);
    if first != second {
        return Err(Error::VerificationFailed(
            "parties disagree on the shared value".into(),
        ));
    }
    Ok(DhTranscript {
        q,
        n,
        d,
        e,
        big_d: big_d.r,
        big_e: big_e.r,
        shared_first: first.r,
        shared_second: second.r,
        shared: first.r,
    })
}

fn rotation_order(q: u64) -> Result<u64> {
    match q.checked_sub(1) {
        Some(n) if n >= 3 => Ok(n),
        _ => Err(Error::DegenerateGroup(q.saturating_sub(1))),
    }
}

/// Uniform in `1..n` (needs `n >= 2`) by rejecting the biased top of the range.
fn uniform_secret(rng: &mut impl RngCore, n: u64) -> u64 {
    let m = n - 1;
    let zone = (u64::MAX / m) * m;
    loop {
        let x = rng.next_u64();
        if x < zone {
            return 1 + x % m;
        }
    }
}

/// The least `m >= 0` with `base^m = target`.
pub fn dlp_bruteforce(base: &Dihedral, target: &Dihedral) -> Result<u64> {
    if base.s {
        return Err(Error::BadParameters("base must be a rotation".into()));
    }
    if base.n != target.n {
        return Err(Error::BadParameters(format!(
            "base in D_{} but target in D_{}",
            2 * base.n,
            2 * target.n
        )));
    }
    if base.n > MAX_DLP_ORDER {
        return Err(Error::BudgetExceeded(format!(
            "rotation order {} > {MAX_DLP_ORDER}",
            base.n
        )));
    }
    let mut acc = Dihedral::identity(base.n);
    for m in 0..base.n {
        if acc == *target {
            return Ok(m);
        }
        acc = acc.mul(base);
    }
    Err(Error::NotInCyclicSubgroup)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_output() {
        let mut rng = SplitMix64::seed_from_u64(0);
        assert_eq!(rng.next_u64(), 0xe220a8397b1dcdaf);
    }

    #[test]
    fn powers() {
        let tau = Dihedral::rotation(4);
        assert!(dihedral_pow(&tau, 0).is_identity());
        assert_eq!(
            dihedral_pow(&dihedral_pow(&tau, 3), 2),
            dihedral_pow(&tau, 2)
        );
        let sigma = Dihedral::reflection(4);
        assert!(dihedral_pow(&sigma, 2).is_identity());
    }

    #[test]
    fn group_axioms() {
        for n in 1..=12 {
            let all: Vec<Dihedral> = (0..n)
                .flat_map(|r| [Dihedral::new(n, r, false), Dihedral::new(n, r, true)])
                .collect();
            for a in &all {
                assert!(a.mul(&a.inv()).is_identity());
                for b in &all {
                    for c in &all {
                        assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                    }
                }
            }
            let (s, t) = (Dihedral::reflection(n), Dihedral::rotation(n));
            assert_eq!(s.mul(&t).mul(&s), t.inv());
        }
    }

    #[test]
    fn forced_exchanges() {
        let t = dh_exchange_with(5, 3, 2).unwrap();
        assert_eq!((t.big_d, t.big_e, t.shared), (3, 2, 2));
        assert_eq!(dh_exchange_with(7, 1, 1).unwrap().shared, 1);
        assert_eq!(dh_exchange(3, 0).unwrap_err(), Error::DegenerateGroup(2));
    }

    #[test]
    fn seeded_exchanges_agree() {
        for q in (5..=31).step_by(2) {
            for seed in 0..80 {
                let t = dh_exchange(q, seed).unwrap();
                assert_eq!(t.shared_first, t.shared_second);
                assert_eq!(t.shared, (t.d * t.e) % t.n);
                assert!(t.d > 0 && t.d < t.n && t.e > 0 && t.e < t.n);
                assert_eq!(dh_exchange(q, seed).unwrap(), t);
            }
        }
    }

    #[test]
    fn discrete_logs() {
        for n in 1..=64 {
            let tau = Dihedral::rotation(n);
            for d in 0..n {
                assert_eq!(dlp_bruteforce(&tau, &dihedral_pow(&tau, d)).unwrap(), d);
            }
            assert_eq!(
                dlp_bruteforce(&tau, &Dihedral::reflection(n)).unwrap_err(),
                Error::NotInCyclicSubgroup
            );
        }
        let tau2 = Dihedral::new(6, 2, false);
        assert_eq!(
            dlp_bruteforce(&tau2, &Dihedral::new(6, 1, false)).unwrap_err(),
            Error::NotInCyclicSubgroup
        );
    }
}
