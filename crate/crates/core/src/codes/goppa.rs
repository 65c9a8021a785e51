//! Subfield codes cut out by `sum a_i / (x - alpha_i) = 0 mod f`.

use super::LinearCode;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::Matrix;
use crate::poly::Poly;

/// The code over the prime field `F_p` of all `a` with
/// `sum a_i (x - alpha_i)^{-1} = 0 (mod f)`, where the locators `alpha_i` and
/// the coefficients of `f` live in `F_{p^e}`.
///
/// The parity checks `alpha_i^j / f(alpha_i)` for `j < deg f` are written out
/// in the power basis of `F_{p^e}` and the kernel is taken over `F_p`. Every
/// basis word of the result is then checked against the congruence directly.
pub fn goppa_code(locators: &[Elem], f: &Poly) -> Result<LinearCode> {
    let big = f.field();
    let small = Field::prime(big.p() as u64)?;
    if f.is_zero() {
        return Err(Error::BadParameters("zero Goppa polynomial".into()));
    }
    let mut sorted = locators.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DuplicatePoints);
    }
    for &a in locators {
        big.elem(a.code())?;
        if f.eval(a).is_zero() {
            return Err(Error::RootInLocatorSet);
        }
    }
    let n = locators.len();
    let r = f.degree().unwrap_or(0);
    let e = big.e() as usize;
    let scale: Vec<Elem> = locators.iter().map(|&a| big.inv(f.eval(a))).collect();
    let mut h = Matrix::zeros(&small, r * e, n);
    for j in 0..r {
        for (i, &a) in locators.iter().enumerate() {
            let entry = big.mul(big.pow(a, j as u64), scale[i]);
            for (d, digit) in big.digits(entry).into_iter().enumerate() {
                h.set(j * e + d, i, Elem(digit));
            }
        }
    }
    let code = LinearCode::from_generator(&h.nullspace());
    for row in code.generator().row_vecs() {
        if !satisfies_congruence(locators, f, &row) {
            return Err(Error::VerificationFailed(format!(
                "word {:?} misses the congruence",
                row.iter().map(|c| c.code()).collect::<Vec<_>>()
            )));
        }
    }
    Ok(code)
}

/// Evaluates `sum a_i (x - alpha_i)^{-1} mod f` with polynomial inverses and
/// tests it for zero. Word entries are prime-field codes, which coincide with
/// their codes in the extension.
pub fn satisfies_congruence(locators: &[Elem], f: &Poly, word: &[Elem]) -> bool {
    let big = f.field();
    if f.is_constant() {
        return true;
    }
    let mut acc = Poly::zero(big);
    for (&a, &c) in locators.iter().zip(word) {
        if c.is_zero() {
            continue;
        }
        let inv = Poly::linear(big, a)
            .inverse_mod(f)
            .expect("locator is not a root of f");
        acc = &acc + &inv.scale(c);
    }
    acc.rem(f).expect("f is nonzero").is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repetition_from_f4() {
        let f4 = Field::new(2, 2).unwrap();
        let w = f4.primitive_element();
        let locs = vec![Elem::ONE, w, f4.mul(w, w)];
        let code = goppa_code(&locs, &Poly::x(&f4)).unwrap();
        assert_eq!((code.n(), code.k()), (3, 1));
        assert_eq!(code.generator().codes(), vec![1, 1, 1]);
        assert_eq!(code.min_distance(100).unwrap(), Some(3));
    }

    #[test]
    fn constant_polynomial_gives_everything() {
        let f4 = Field::new(2, 2).unwrap();
        let code = goppa_code(&[Elem(1), Elem(2)], &Poly::one(&f4)).unwrap();
        assert_eq!(code.k(), 2);
    }

    #[test]
    fn errors() {
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(
            goppa_code(&[Elem(0), Elem(1)], &Poly::x(&f4)).unwrap_err(),
            Error::RootInLocatorSet
        );
        assert_eq!(
            goppa_code(&[Elem(1), Elem(1)], &Poly::x(&f4)).unwrap_err(),
            Error::DuplicatePoints
        );
    }

    #[test]
    fn binary_goppa_from_f8() {
        // x^2 + x + 1 has no roots in F_8, so all 8 elements are locators
        let f8 = Field::new(2, 3).unwrap();
        let g = Poly::from_codes(&f8, &[1, 1, 1]).unwrap();
        let locs: Vec<Elem> = f8.elements().collect();
        let code = goppa_code(&locs, &g).unwrap();
        assert!(code.k() >= 8 - 2 * 3);
        // binary Goppa with squarefree g of degree r has d >= 2r + 1
        assert!(code.min_distance(1 << 10).unwrap().unwrap() >= 5);
        for w in code.codewords(1 << 10).unwrap() {
            assert!(satisfies_congruence(&locs, &g, &w));
        }
    }
}
