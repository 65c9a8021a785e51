//! Inputs shared by the benchmarks.

use qdesign::design::{incidence_matrix, IncidenceSystem};
use qdesign::group::{singer_cycle, GroupSpec};
use qdesign::subspace::ENUMERATION_BUDGET;
use qdesign::{Field, LinearCode, Poly};

pub fn field(q: u64) -> Field {
    Field::with_order(q).expect("benchmark fields are prime powers")
}

/// The cyclic group generated by a Singer cycle of `GL(n, q)`.
pub fn singer_group(q: u64, n: usize) -> GroupSpec {
    let f = field(q);
    GroupSpec::new(&f, n, vec![singer_cycle(&f, n).unwrap()]).unwrap()
}

/// Kramer-Mesner system for `t`-designs of `k`-subspaces under a Singer cycle.
pub fn singer_system(q: u64, n: usize, t: usize, k: usize) -> IncidenceSystem {
    let g = singer_group(q, n);
    incidence_matrix(g.field(), n, t, k, Some(&g), ENUMERATION_BUDGET).unwrap()
}

/// The binary Golay code as the cyclic code of length 23.
pub fn golay() -> LinearCode {
    let f = field(2);
    let g = Poly::from_codes(&f, &[1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1]).unwrap();
    qdesign::codes::cyclic_code(&f, 23, &g).unwrap()
}
