use std::collections::HashSet;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use qdesign::codes::goppa::satisfies_congruence;
use qdesign::codes::{
    code_pair_distance, coset_leader, cyclic_code, goppa_code, quasi_cyclic_index, rs_code,
    shift_code, weight, LinearCode,
};
use qdesign::factor::factor_xn_minus_1;
use qdesign::{Elem, Field, Matrix, Poly};

fn random_code(f: &Field, n: usize) -> impl Strategy<Value = LinearCode> {
    let f = f.clone();
    let q = f.q();
    (0..=n).prop_flat_map(move |rows| {
        let f = f.clone();
        prop::collection::vec(0..q, rows * n).prop_map(move |codes| {
            LinearCode::from_generator(&Matrix::from_codes(&f, rows, n, &codes).unwrap())
        })
    })
}

/// Minimum weight over all nonzero words of `F_q^n` that pass the parity
/// checks, a path independent of the generator.
fn min_distance_by_parity(c: &LinearCode) -> Option<usize> {
    let f = c.field();
    let h = c.parity_check();
    let q = f.q() as u64;
    let n = c.n();
    let mut best = None;
    for idx in 1..q.pow(n as u32) {
        let v: Vec<Elem> = (0..n)
            .map(|i| f.elem(((idx / q.pow(i as u32)) % q) as u32).unwrap())
            .collect();
        let syndrome_zero = (0..h.rows()).all(|r| {
            h.row(r)
                .iter()
                .zip(&v)
                .fold(Elem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
                .is_zero()
        });
        if syndrome_zero {
            let w = weight(&v);
            best = Some(best.map_or(w, |b: usize| b.min(w)));
        }
    }
    best
}

#[test]
fn parity_checks_and_double_duals() {
    for p in [2u64, 3, 5] {
        let f = Field::prime(p).unwrap();
        let mut runner = TestRunner::new(Config::with_cases(100));
        runner
            .run(&(1usize..=6).prop_flat_map(|n| random_code(&f, n)), |c| {
                let h = c.parity_check();
                prop_assert_eq!(h.rows(), c.n() - c.k());
                prop_assert_eq!(h.rank(), c.n() - c.k());
                if c.k() > 0 && h.rows() > 0 {
                    let prod = c.generator().mul(&h.transpose());
                    prop_assert!(prod.data().iter().all(|e| e.is_zero()));
                }
                prop_assert_eq!(c.dual().dual(), c);
                Ok(())
            })
            .unwrap_or_else(|e| panic!("F_{p}: {e}"));
    }
}

#[test]
fn singleton_bound_and_independent_distance() {
    for p in [2u64, 3] {
        let f = Field::prime(p).unwrap();
        let mut runner = TestRunner::new(Config::with_cases(60));
        runner
            .run(&(1usize..=5).prop_flat_map(|n| random_code(&f, n)), |c| {
                let d = c.min_distance(1 << 20).unwrap();
                prop_assert_eq!(d, min_distance_by_parity(&c));
                if let Some(d) = d {
                    prop_assert!(d <= c.n() - c.k() + 1);
                }
                Ok(())
            })
            .unwrap();
    }
}

#[test]
fn reed_solomon_codes_are_mds() {
    for q in [8u64, 9, 11] {
        let f = Field::with_order(q).unwrap();
        let nonzero: Vec<Elem> = f.elements().skip(1).collect();
        for n in 1..=8usize.min(nonzero.len()) {
            for k in 1..=n {
                let c = rs_code(&f, &nonzero[..n], k).unwrap();
                assert_eq!(c.k(), k);
                if q.pow(k as u32) <= 1 << 16 {
                    assert_eq!(
                        c.min_distance(1 << 16).unwrap(),
                        Some(n - k + 1),
                        "q={q} n={n} k={k}"
                    );
                }
            }
        }
    }
}

#[test]
fn every_cyclic_code_is_shift_invariant() {
    for (p, n) in [(2u64, 7usize), (2, 9), (2, 15), (3, 8), (3, 4), (5, 6)] {
        let f = Field::prime(p).unwrap();
        let factors = factor_xn_minus_1(&f, n).unwrap();
        for mask in 0u32..1 << factors.len() {
            let g = factors
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(Poly::one(&f), |acc, (_, h)| &acc * h);
            let c = cyclic_code(&f, n, &g).unwrap();
            assert_eq!(c.k(), n - g.degree().unwrap());
            assert_eq!(shift_code(&c, 1), c);
            assert_eq!(quasi_cyclic_index(&c).0, 1);
        }
    }
}

#[test]
fn quasi_cyclic_index_is_minimal() {
    let f = Field::prime(2).unwrap();
    let mut runner = TestRunner::new(Config::with_cases(200));
    runner
        .run(&random_code(&f, 6), |c| {
            let (l, m) = quasi_cyclic_index(&c);
            prop_assert_eq!(l * m, 6);
            prop_assert_eq!(shift_code(&c, l), c.clone());
            for smaller in (1..l).filter(|s| 6 % s == 0) {
                prop_assert!(shift_code(&c, smaller) != c);
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn goppa_words_satisfy_the_congruence() {
    for (p, e) in [(2u64, 3u32), (2, 4), (3, 2)] {
        let f = Field::new(p, e).unwrap();
        let q = f.q();
        let mut runner = TestRunner::new(Config::with_cases(30));
        runner
            .run(&prop::collection::vec(0..q, 2..=3), |mut g| {
                *g.last_mut().unwrap() = 1;
                let goppa = Poly::from_codes(&f, &g).unwrap();
                let locators: Vec<Elem> =
                    f.elements().filter(|&a| !goppa.eval(a).is_zero()).collect();
                prop_assume!(locators.len() >= 2);
                let c = goppa_code(&locators, &goppa).unwrap();
                let r = goppa.degree().unwrap();
                prop_assert!(c.k() + r * e as usize >= locators.len());
                for w in c.codewords(1 << 16).unwrap() {
                    prop_assert!(satisfies_congruence(&locators, &goppa, &w));
                }
                // and nothing outside the code does
                let sub = Field::prime(p).unwrap();
                let n = locators.len();
                if p.pow(n as u32) <= 1 << 12 {
                    let count = (0..p.pow(n as u32))
                        .filter(|idx| {
                            let v: Vec<Elem> = (0..n)
                                .map(|i| sub.elem(((idx / p.pow(i as u32)) % p) as u32).unwrap())
                                .collect();
                            satisfies_congruence(&locators, &goppa, &v)
                        })
                        .count() as u64;
                    prop_assert_eq!(count, p.pow(c.k() as u32));
                }
                Ok(())
            })
            .unwrap_or_else(|err| panic!("F_{q}: {err}"));
    }
}

#[test]
fn pair_distance_is_a_metric() {
    let f = Field::prime(3).unwrap();
    let mut runner = TestRunner::new(Config::with_cases(300));
    runner
        .run(
            &(random_code(&f, 5), random_code(&f, 5), random_code(&f, 5)),
            |(a, b, c)| {
                let ab = code_pair_distance(&a, &b).unwrap();
                prop_assert_eq!(ab, code_pair_distance(&b, &a).unwrap());
                prop_assert_eq!(ab == 0, a == b);
                prop_assert!(
                    code_pair_distance(&a, &c).unwrap() <= ab + code_pair_distance(&b, &c).unwrap()
                );
                Ok(())
            },
        )
        .unwrap();
}

fn all_words(f: &Field, n: usize) -> Vec<Vec<Elem>> {
    let q = f.q() as u64;
    (0..q.pow(n as u32))
        .map(|idx| {
            (0..n)
                .map(|i| f.elem(((idx / q.pow(i as u32)) % q) as u32).unwrap())
                .collect()
        })
        .collect()
}

#[test]
fn cosets_partition_the_space() {
    let f = Field::prime(2).unwrap();
    let hamming = cyclic_code(&f, 7, &Poly::from_codes(&f, &[1, 1, 0, 1]).unwrap()).unwrap();
    let rep = LinearCode::from_generator(&Matrix::from_codes(&f, 1, 5, &[1; 5]).unwrap());
    let qc = LinearCode::from_generator(
        &Matrix::from_codes(&f, 2, 4, &[1, 1, 0, 0, 0, 0, 1, 1]).unwrap(),
    );
    for c in [hamming, rep, qc] {
        let n = c.n();
        let words = c.codewords(1 << 16).unwrap();
        let mut cosets: Vec<HashSet<Vec<Elem>>> = Vec::new();
        for v in all_words(&f, n) {
            let coset: HashSet<Vec<Elem>> = words
                .iter()
                .map(|w| v.iter().zip(w).map(|(&a, &b)| f.add(a, b)).collect())
                .collect();
            if let Some(existing) = cosets.iter().find(|s| s.contains(&v)) {
                assert_eq!(existing, &coset, "cosets sharing a word coincide");
            } else {
                assert!(cosets.iter().all(|s| s.is_disjoint(&coset)));
                cosets.push(coset);
            }
            let leader = coset_leader(&c, &v, 1 << 16).unwrap();
            let coset_of_v = cosets.iter().find(|s| s.contains(&v)).unwrap();
            assert!(coset_of_v.contains(&leader));
            assert_eq!(
                weight(&leader),
                coset_of_v.iter().map(|w| weight(w)).min().unwrap()
            );
        }
        let total: usize = cosets.iter().map(HashSet::len).sum();
        assert_eq!(total, 1 << n);
        assert_eq!(cosets.len(), 1 << (n - c.k()));
    }
}
