//! Finite fields `F_{p^e}` with table-driven arithmetic.
//!
//! An element of `F_{p^e} = F_p[x]/(m(x))` is stored as its integer code
//! `sum c_i p^i`, where `c_0 + c_1 x + ... + c_{e-1} x^{e-1}` is the reduced
//! representative. The code order is the total order used for every
//! canonical sort in the crate.
//!
//! The modulus `m(x)` is the monic irreducible polynomial of degree `e` whose
//! lower coefficients have the smallest code, so a field is fully determined
//! by `(p, e)`.

use std::fmt;
use std::sync::Arc;

use crate::arith::{is_prime, prime_factors, prime_power};
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Largest field order supported.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// A field element, interpreted relative to a [`Field`].
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// The integer code of this element.
    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Inner {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus over F_p, lowest coefficient first, length e+1.
    modulus: Vec<u32>,
    primitive: u32,
    /// exp[i] = g^i for i in 0..2(q-1), g the primitive element.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// Full addition table for small odd-characteristic extension fields.
    add: Option<Vec<u16>>,
    pow_p: Vec<u32>,
}

/// The finite field `F_{p^e}`. Cloning is cheap (shared tables).
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.e == other.inner.e
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.spec())
    }
}

impl Field {
    /// Builds `F_{p^e}` with the lexicographically smallest monic irreducible
    /// modulus of degree `e`.
    pub fn new(p: u64, e: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::BadParameters("extension degree must be >= 1".into()));
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or_else(|| Error::SizeExceeded(format!("{p}^{e} exceeds 2^16")))?;
        if e == 1 {
            return Ok(Self::build(p as u32, 1, vec![0, 1]));
        }
        let base = Field::new(p, 1)?;
        for low in 0..q {
            let mut coeffs = digits(low as u32, p as u32, e as usize);
            coeffs.push(1);
            let candidate = Poly::from_codes(&base, &coeffs)?;
            if candidate.is_irreducible() {
                return Ok(Self::build(p as u32, e, coeffs));
            }
        }
        unreachable!("an irreducible polynomial of every degree exists over F_p")
    }

    /// Builds the field of order `q`, which must be a prime power.
    pub fn with_order(q: u64) -> Result<Field> {
        let (p, e) = prime_power(q)
            .ok_or_else(|| Error::BadParameters(format!("{q} is not a prime power")))?;
        Field::new(p, e)
    }

    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1)
    }

    fn build(p: u32, e: u32, modulus: Vec<u32>) -> Field {
        let q = p.pow(e);
        let pow_p: Vec<u32> = (0..e).map(|i| p.pow(i)).collect();
        let slow = SlowArith {
            p,
            e: e as usize,
            modulus: &modulus,
        };
        let primitive = if q == 2 {
            1
        } else {
            let factors = prime_factors((q - 1) as u64);
            (1..q)
                .find(|&g| {
                    factors
                        .iter()
                        .all(|&r| slow.pow(g, (q as u64 - 1) / r) != 1)
                })
                .expect("the multiplicative group of a finite field is cyclic")
        };
        let order = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * order.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..order {
            exp[i] = x;
            log[x as usize] = i as u32;
            x = slow.mul(x, primitive);
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        if order == 0 {
            exp[0] = 1;
        }
        let add = if e > 1 && p != 2 && q <= 256 {
            let mut table = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = digit_add(a, b, p, &pow_p) as u16;
                }
            }
            Some(table)
        } else {
            None
        };
        Field {
            inner: Arc::new(Inner {
                p,
                e,
                q,
                modulus,
                primitive,
                exp,
                log,
                add,
                pow_p,
            }),
        }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.inner.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.inner.e
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.inner.q
    }

    /// Modulus coefficients over `F_p`, lowest degree first (monic, length `e+1`).
    /// For prime fields this is the polynomial `x` and plays no role.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    /// The field spec string `"p^e"`.
    pub fn spec(&self) -> String {
        format!("{}^{}", self.inner.p, self.inner.e)
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.e == 1
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// Element with the given code.
    pub fn elem(&self, code: u32) -> Result<Elem> {
        if code < self.inner.q {
            Ok(Elem(code))
        } else {
            Err(Error::BadParameters(format!(
                "element code {code} out of range for GF({})",
                self.spec()
            )))
        }
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.inner.p as i64) as u32)
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.inner.q).map(Elem)
    }

    /// The nonzero element of smallest code with multiplicative order `q-1`.
    pub fn primitive_element(&self) -> Elem {
        Elem(self.inner.primitive)
    }

    /// Coordinates over `F_p` in the power basis `1, x, ..., x^{e-1}`.
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        digits(a.0, self.inner.p, self.inner.e as usize)
    }

    pub fn from_digits(&self, ds: &[u32]) -> Elem {
        debug_assert!(ds.len() <= self.inner.e as usize);
        Elem(
            ds.iter()
                .zip(&self.inner.pow_p)
                .map(|(&d, &w)| (d % self.inner.p) * w)
                .sum(),
        )
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let inner = &*self.inner;
        if inner.e == 1 {
            let s = a.0 + b.0;
            Elem(if s >= inner.p { s - inner.p } else { s })
        } else if inner.p == 2 {
            Elem(a.0 ^ b.0)
        } else if let Some(t) = &inner.add {
            Elem(t[(a.0 * inner.q + b.0) as usize] as u32)
        } else {
            Elem(digit_add(a.0, b.0, inner.p, &inner.pow_p))
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let inner = &*self.inner;
        if a.0 == 0 || inner.p == 2 {
            a
        } else if inner.e == 1 {
            Elem(inner.p - a.0)
        } else {
            let mut out = 0;
            let mut x = a.0;
            for &w in &inner.pow_p {
                let d = x % inner.p;
                x /= inner.p;
                out += ((inner.p - d) % inner.p) * w;
            }
            Elem(out)
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let inner = &*self.inner;
        Elem(inner.exp[(inner.log[a.0 as usize] + inner.log[b.0 as usize]) as usize])
    }

    /// Multiplicative inverse, `None` for zero.
    #[inline]
    pub fn checked_inv(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return None;
        }
        let inner = &*self.inner;
        let order = inner.q - 1;
        let l = inner.log[a.0 as usize];
        Some(Elem(inner.exp[((order - l) % order.max(1)) as usize]))
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.checked_inv(a).expect("inverse of zero")
    }

    /// `a / b`; panics if `b` is zero.
    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, n: u64) -> Elem {
        if n == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let inner = &*self.inner;
        let order = (inner.q - 1) as u64;
        let l = inner.log[a.0 as usize] as u64;
        Elem(inner.exp[((l * (n % order)) % order) as usize])
    }

    /// Discrete logarithm to the base of the primitive element.
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a.0 != 0).then(|| self.inner.log[a.0 as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Elem) -> Option<u64> {
        let l = self.log(a)? as u64;
        let order = (self.inner.q - 1) as u64;
        Some(order / crate::arith::gcd(l, order).max(1))
    }

    /// Whether `a` lies in the prime subfield `F_p`.
    pub fn in_prime_subfield(&self, a: Elem) -> bool {
        a.0 < self.inner.p
    }
}

fn digits(mut code: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(code % p);
        code /= p;
    }
    out
}

fn digit_add(mut a: u32, mut b: u32, p: u32, pow_p: &[u32]) -> u32 {
    let mut out = 0;
    for &w in pow_p {
        out += ((a % p + b % p) % p) * w;
        a /= p;
        b /= p;
    }
    out
}

/// Schoolbook arithmetic on codes, used only to build the log tables.
struct SlowArith<'a> {
    p: u32,
    e: usize,
    modulus: &'a [u32],
}

impl SlowArith<'_> {
    fn mul(&self, a: u32, b: u32) -> u32 {
        let (p, e) = (self.p as u64, self.e);
        let da = digits(a, self.p, e);
        let db = digits(b, self.p, e);
        let mut prod = vec![0u64; 2 * e];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for deg in (e..2 * e).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            // x^e = -(m_0 + ... + m_{e-1} x^{e-1})
            for (i, &m) in self.modulus[..e].iter().enumerate() {
                let idx = deg - e + i;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
            prod[deg] = 0;
        }
        let mut code = 0u32;
        for i in (0..e).rev() {
            code = code * self.p + prod[i] as u32;
        }
        code
    }

    fn pow(&self, a: u32, mut n: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }
}
