//! Matrix groups inside `GL(n, q)` and their action on subspaces.

pub mod cayley;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::arith::prime_factors;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::subspace::{enumerate_subspaces, grassmannian_size, Subspace, SubspaceIter};

/// Hard cap on the size of a materialized group or on an element order.
pub const MAX_GROUP_BUDGET: usize = 1_000_000;

/// Largest `q^n` for which a Singer cycle is constructed.
pub const MAX_SINGER_ORDER: u64 = 1 << 20;

/// An invertible square matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GlElem {
    matrix: Matrix,
}

impl fmt::Debug for GlElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GlElem({:?})", self.matrix)
    }
}

impl PartialOrd for GlElem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GlElem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.n()
            .cmp(&other.n())
            .then_with(|| self.matrix.data().cmp(other.matrix.data()))
    }
}

impl GlElem {
    pub fn new(matrix: Matrix) -> Result<GlElem> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix is not square",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix.rank() != matrix.rows() {
            return Err(Error::NotInvertible);
        }
        Ok(GlElem { matrix })
    }

    pub fn identity(field: &Field, n: usize) -> GlElem {
        GlElem {
            matrix: Matrix::identity(field, n),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn field(&self) -> &Field {
        self.matrix.field()
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn mul(&self, other: &GlElem) -> GlElem {
        GlElem {
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    pub fn inverse(&self) -> GlElem {
        GlElem {
            matrix: self.matrix.inverse().expect("invertible by construction"),
        }
    }

    pub fn pow(&self, e: u64) -> GlElem {
        GlElem {
            matrix: self.matrix.pow(e),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }
}

/// Least `m >= 1` with `g^m = 1`, found by iterating powers.
pub fn element_order(g: &GlElem, budget: usize) -> Result<u64> {
    let budget = budget.min(MAX_GROUP_BUDGET);
    let mut x = g.clone();
    for m in 1..=budget as u64 {
        if x.is_identity() {
            return Ok(m);
        }
        x = x.mul(g);
    }
    Err(Error::BudgetExceeded(format!(
        "element order exceeds {budget}"
    )))
}

/// Whether `g^order = 1` and `g^{order/r} != 1` for every prime `r | order`.
pub fn has_order(g: &GlElem, order: u64) -> bool {
    order >= 1
        && g.pow(order).is_identity()
        && prime_factors(order)
            .into_iter()
            .all(|r| !g.pow(order / r).is_identity())
}

/// A subgroup of `GL(n, q)` given by generators.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    field: Field,
    n: usize,
    generators: Vec<GlElem>,
}

impl GroupSpec {
    pub fn new(field: &Field, n: usize, generators: Vec<GlElem>) -> Result<GroupSpec> {
        for g in &generators {
            if g.n() != n {
                return Err(Error::DimensionMismatch(format!(
                    "{0}x{0} generator in GL({n}, q)",
                    g.n()
                )));
            }
            if g.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(GroupSpec {
            field: field.clone(),
            n,
            generators,
        })
    }

    /// The trivial group.
    pub fn trivial(field: &Field, n: usize) -> GroupSpec {
        GroupSpec {
            field: field.clone(),
            n,
            generators: Vec::new(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[GlElem] {
        &self.generators
    }

    /// All group elements in breadth-first order from the identity, each new
    /// element found as `x g` for an earlier `x` and a generator `g`.
    pub fn closure(&self, budget: usize) -> Result<Vec<GlElem>> {
        if budget > MAX_GROUP_BUDGET {
            return Err(Error::BadParameters(format!(
                "closure budget {budget} above {MAX_GROUP_BUDGET}"
            )));
        }
        let id = GlElem::identity(&self.field, self.n);
        let mut seen: HashSet<GlElem> = HashSet::from([id.clone()]);
        let mut out = vec![id];
        let mut head = 0;
        while head < out.len() {
            let x = out[head].clone();
            head += 1;
            for g in &self.generators {
                let y = x.mul(g);
                if seen.insert(y.clone()) {
                    if out.len() >= budget {
                        return Err(Error::BudgetExceeded(format!(
                            "group has more than {budget} elements"
                        )));
                    }
                    out.push(y);
                }
            }
        }
        Ok(out)
    }

    pub fn order(&self, budget: usize) -> Result<usize> {
        Ok(self.closure(budget)?.len())
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| a.mul(b) == b.mul(a))
        })
    }
}

/// Smallest-code monic polynomial of degree `n` over `field` whose root has
/// order `q^n - 1`.
pub fn primitive_polynomial(field: &Field, n: usize) -> Result<Poly> {
    if n == 0 {
        return Err(Error::BadParameters("degree must be >= 1".into()));
    }
    let q = field.q() as u64;
    let size = q
        .checked_pow(n as u32)
        .filter(|&s| s <= MAX_SINGER_ORDER)
        .ok_or_else(|| Error::SizeExceeded(format!("{q}^{n} exceeds 2^20")))?;
    let order = size - 1;
    let factors = prime_factors(order);
    let x = Poly::x(field);
    let one = Poly::one(field);
    for low in 0..size {
        let mut codes = Vec::with_capacity(n + 1);
        let mut r = low;
        for _ in 0..n {
            codes.push((r % q) as u32);
            r /= q;
        }
        if codes[0] == 0 {
            continue;
        }
        codes.push(1);
        let f = Poly::from_codes(field, &codes)?;
        if !f.is_irreducible() {
            continue;
        }
        let one_mod = one.rem(&f)?;
        if x.pow_mod(order, &f) == one_mod
            && factors.iter().all(|&r| x.pow_mod(order / r, &f) != one_mod)
        {
            return Ok(f);
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

/// The companion matrix of a monic `f`: row `i` holds the coordinates of
/// `x^{i+1} mod f`, so `v C` is multiplication by `x` on coefficient vectors.
pub fn companion_matrix(f: &Poly) -> Result<Matrix> {
    let n = f.degree().filter(|&d| d >= 1).ok_or_else(|| {
        Error::BadParameters("companion matrix needs a polynomial of degree >= 1".into())
    })?;
    if !f.is_monic() {
        return Err(Error::BadParameters(
            "companion matrix needs a monic polynomial".into(),
        ));
    }
    let field = f.field();
    let mut m = Matrix::zeros(field, n, n);
    for i in 0..n - 1 {
        m.set(i, i + 1, Elem::ONE);
    }
    for j in 0..n {
        m.set(n - 1, j, field.neg(f.coeff(j)));
    }
    Ok(m)
}

/// A Singer cycle of `GL(n, q)`: the companion matrix of the first primitive
/// polynomial of degree `n`, with its order `q^n - 1` checked.
pub fn singer_cycle(field: &Field, n: usize) -> Result<GlElem> {
    let f = primitive_polynomial(field, n)?;
    let g = GlElem::new(companion_matrix(&f)?)?;
    let order = (field.q() as u64).pow(n as u32) - 1;
    if !has_order(&g, order) {
        return Err(Error::VerificationFailed(format!(
            "Singer cycle order is not {order}"
        )));
    }
    Ok(g)
}

/// `diag(g, 1)` for the primitive element `g`; order `q - 1`.
pub fn split_torus(field: &Field) -> Result<GlElem> {
    if field.q() == 2 {
        return Err(Error::DegenerateField(2));
    }
    GlElem::new(Matrix::diagonal(
        field,
        &[field.primitive_element(), Elem::ONE],
    ))
}

/// The `(q-1)`-th power of the Singer cycle of `GL(2, q)`: multiplication by
/// an element of order `q + 1` in `F_{q^2}`.
pub fn nonsplit_torus(field: &Field) -> Result<GlElem> {
    let q = field.q() as u64;
    Ok(singer_cycle(field, 2)?.pow(q - 1))
}

/// Generators of the split and nonsplit tori of `GL(2, q)`, with orders
/// `q - 1` and `q + 1` verified by iterating powers.
pub fn torus_generators(field: &Field) -> Result<(GlElem, GlElem)> {
    let q = field.q() as u64;
    let split = split_torus(field)?;
    let nonsplit = nonsplit_torus(field)?;
    let budget = MAX_GROUP_BUDGET;
    if element_order(&split, budget)? != q - 1 {
        return Err(Error::VerificationFailed("split torus order".into()));
    }
    if element_order(&nonsplit, budget)? != q + 1 {
        return Err(Error::VerificationFailed("nonsplit torus order".into()));
    }
    Ok((split, nonsplit))
}

/// The Frobenius map `u -> u^q` of `F_{q^2} = F_q[x]/(f)` in the basis
/// `1, x`, as a matrix acting on row vectors.
pub fn frobenius_matrix(f: &Poly) -> Result<GlElem> {
    if f.degree() != Some(2) {
        return Err(Error::BadParameters(
            "Frobenius matrix needs a quadratic modulus".into(),
        ));
    }
    let field = f.field();
    let xq = Poly::x(field).pow_mod(field.q() as u64, f);
    let m = Matrix::from_rows(
        field,
        2,
        &[vec![Elem::ONE, Elem::ZERO], vec![xq.coeff(0), xq.coeff(1)]],
    )?;
    GlElem::new(m)
}

/// A generating set of `GL(n, q)`: `diag(w, 1, ..., 1)` for a primitive `w`,
/// the transvection `I + E_{01}`, the transposition `(0 1)` and the `n`-cycle.
pub fn general_linear_generators(field: &Field, n: usize) -> Vec<GlElem> {
    if n == 0 {
        return Vec::new();
    }
    let mut gens: Vec<Matrix> = Vec::new();
    let mut diag = vec![Elem::ONE; n];
    diag[0] = field.primitive_element();
    gens.push(Matrix::diagonal(field, &diag));
    if n >= 2 {
        let mut t = Matrix::identity(field, n);
        t.set(0, 1, Elem::ONE);
        gens.push(t);
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        gens.push(Matrix::permutation(field, &swap).expect("permutation"));
        if n > 2 {
            gens.push(Matrix::shift(field, n));
        }
    }
    let mut out: Vec<GlElem> = Vec::new();
    for m in gens {
        let g = GlElem::new(m).expect("invertible generator");
        if !g.is_identity() && !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

/// The orbits of `group` on the `k`-subspaces of `F_q^n` under
/// `U -> rref(U A)`. Each orbit is sorted, and orbits are ordered by their
/// least member, so the result is canonical.
pub fn orbit_subspaces(group: &GroupSpec, k: usize, budget: u64) -> Result<Vec<Vec<Subspace>>> {
    let field = group.field();
    let all = enumerate_subspaces(field, group.n(), k, budget).map_err(|e| match e {
        Error::SizeExceeded(s) => Error::BudgetExceeded(s),
        other => other,
    })?;
    let index: HashMap<&Subspace, usize> = all.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut orbit_of = vec![usize::MAX; all.len()];
    let mut orbits = Vec::new();
    for start in 0..all.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        orbit_of[start] = id;
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for g in group.generators() {
                let image = all[i].apply(g.matrix())?;
                let j = index[&image];
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = id;
                    members.push(j);
                    queue.push_back(j);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members.into_iter().map(|i| all[i].clone()).collect());
    }
    Ok(orbits)
}

/// Whether `W + T W + ... + T^{d-1} W` is all of `F_q^n` with total dimension
/// `n`, i.e. a direct sum.
pub fn is_splitting(w: &Subspace, t: &GlElem, d: usize) -> Result<bool> {
    let n = w.ambient();
    if t.n() != n {
        return Err(Error::DimensionMismatch(format!(
            "{0}x{0} operator on F_q^{n}",
            t.n()
        )));
    }
    if w.dim() * d != n {
        return Err(Error::DimensionMismatch(format!(
            "{d} copies of a {}-dimensional subspace cannot split F_q^{n}",
            w.dim()
        )));
    }
    let mut stacked = w.basis().clone();
    let mut image = w.basis().clone();
    for _ in 1..d {
        image = image.mul(t.matrix());
        stacked = stacked.stack(&image)?;
    }
    Ok(stacked.rank() == n)
}

/// Number of `T`-splitting `r`-subspaces, each tested with `n / r` summands.
pub fn count_splitting(t: &GlElem, r: usize, budget: u64) -> Result<u64> {
    let n = t.n();
    if r == 0 || n % r != 0 {
        return Err(Error::DimensionMismatch(format!("{r} does not divide {n}")));
    }
    grassmannian_size(t.field(), n, r, budget).map_err(|e| match e {
        Error::SizeExceeded(s) => Error::BudgetExceeded(s),
        other => other,
    })?;
    let d = n / r;
    let mut count = 0;
    for w in SubspaceIter::new(t.field(), n, r) {
        if is_splitting(&w, t, d)? {
            count += 1;
        }
    }
    Ok(count)
}

/// Conjugacy type of a `2 x 2` matrix, read off its characteristic polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pgl2Class {
    Central,
    Unipotent,
    SemisimpleSplit,
    SemisimpleNonsplit,
}

pub fn classify_pgl2(a: &GlElem) -> Result<Pgl2Class> {
    let m = a.matrix();
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::NotTwoByTwo(m.rows(), m.cols()));
    }
    let f = a.field();
    let (a11, a12, a21, a22) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    if a12.is_zero() && a21.is_zero() && a11 == a22 {
        return Ok(Pgl2Class::Central);
    }
    let trace = f.add(a11, a22);
    let det = f.sub(f.mul(a11, a22), f.mul(a12, a21));
    let charpoly = Poly::new(f, vec![det, f.neg(trace), Elem::ONE]);
    let roots = charpoly.roots();
    Ok(match roots.as_slice() {
        [(_, 2)] => Pgl2Class::Unipotent,
        [_, _] => Pgl2Class::SemisimpleSplit,
        _ => Pgl2Class::SemisimpleNonsplit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace::ENUMERATION_BUDGET;

    fn m(field: &Field, n: usize, codes: &[u32]) -> GlElem {
        GlElem::new(Matrix::from_codes(field, n, n, codes).unwrap()).unwrap()
    }

    #[test]
    fn singer_orders() {
        for (q, n) in [
            (2u64, 2usize),
            (2, 3),
            (2, 4),
            (3, 2),
            (3, 3),
            (5, 2),
            (4, 2),
        ] {
            let f = Field::with_order(q).unwrap();
            let s = singer_cycle(&f, n).unwrap();
            assert_eq!(
                element_order(&s, MAX_GROUP_BUDGET).unwrap(),
                q.pow(n as u32) - 1
            );
        }
        let f2 = Field::prime(2).unwrap();
        assert_eq!(
            primitive_polynomial(&f2, 3).unwrap(),
            Poly::from_codes(&f2, &[1, 1, 0, 1]).unwrap()
        );
        assert!(singer_cycle(&f2, 1).unwrap().is_identity());
        assert!(matches!(singer_cycle(&f2, 21), Err(Error::SizeExceeded(_))));
    }

    #[test]
    fn tori() {
        for q in [3u64, 4, 5, 7, 8, 9] {
            let f = Field::with_order(q).unwrap();
            let (s, ns) = torus_generators(&f).unwrap();
            assert_eq!(element_order(&s, 100).unwrap(), q - 1);
            assert_eq!(element_order(&ns, 100).unwrap(), q + 1);
        }
        let f2 = Field::prime(2).unwrap();
        assert_eq!(
            torus_generators(&f2).unwrap_err(),
            Error::DegenerateField(2)
        );
    }

    #[test]
    fn frobenius_normalizes_nonsplit_torus() {
        for q in [3u64, 4, 5, 7] {
            let f = Field::with_order(q).unwrap();
            let poly = primitive_polynomial(&f, 2).unwrap();
            let phi = frobenius_matrix(&poly).unwrap();
            let tau = nonsplit_torus(&f).unwrap();
            assert!(phi.mul(&phi).is_identity());
            assert_eq!(phi.mul(&tau).mul(&phi.inverse()), tau.inverse());
        }
    }

    #[test]
    fn closure_sizes() {
        let f2 = Field::prime(2).unwrap();
        let trivial = GroupSpec::trivial(&f2, 3);
        assert_eq!(trivial.closure(10).unwrap().len(), 1);
        let singer = GroupSpec::new(&f2, 3, vec![singer_cycle(&f2, 3).unwrap()]).unwrap();
        assert_eq!(singer.closure(100).unwrap().len(), 7);
        let gl32 = GroupSpec::new(&f2, 3, general_linear_generators(&f2, 3)).unwrap();
        assert_eq!(gl32.order(1000).unwrap(), 168);
        let f3 = Field::prime(3).unwrap();
        let gl23 = GroupSpec::new(&f3, 2, general_linear_generators(&f3, 2)).unwrap();
        assert_eq!(gl23.order(1000).unwrap(), 48);
        let f4 = Field::new(2, 2).unwrap();
        let gl24 = GroupSpec::new(&f4, 2, general_linear_generators(&f4, 2)).unwrap();
        assert_eq!(gl24.order(1000).unwrap(), 180);
        let f5 = Field::prime(5).unwrap();
        let (s, ns) = torus_generators(&f5).unwrap();
        let g = GroupSpec::new(&f5, 2, vec![s, ns]).unwrap();
        assert!(matches!(g.closure(5), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn element_orders() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(element_order(&GlElem::identity(&f5, 3), 10).unwrap(), 1);
        assert_eq!(element_order(&m(&f5, 2, &[2, 0, 0, 1]), 10).unwrap(), 4);
        assert!(matches!(
            element_order(&m(&f5, 2, &[2, 0, 0, 1]), 3),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn orbits_on_lines() {
        let f2 = Field::prime(2).unwrap();
        let gl = GroupSpec::new(&f2, 2, general_linear_generators(&f2, 2)).unwrap();
        let orbits = orbit_subspaces(&gl, 1, ENUMERATION_BUDGET).unwrap();
        assert_eq!(orbits.iter().map(Vec::len).collect::<Vec<_>>(), vec![3]);
        let trivial = GroupSpec::trivial(&f2, 2);
        assert_eq!(
            orbit_subspaces(&trivial, 1, ENUMERATION_BUDGET)
                .unwrap()
                .len(),
            3
        );
        let singer = GroupSpec::new(&f2, 3, vec![singer_cycle(&f2, 3).unwrap()]).unwrap();
        let orbits = orbit_subspaces(&singer, 1, ENUMERATION_BUDGET).unwrap();
        assert_eq!(orbits.iter().map(Vec::len).collect::<Vec<_>>(), vec![7]);
    }

    #[test]
    fn splitting() {
        let f2 = Field::prime(2).unwrap();
        let t = singer_cycle(&f2, 2).unwrap();
        assert_eq!(count_splitting(&t, 1, ENUMERATION_BUDGET).unwrap(), 3);
        assert_eq!(count_splitting(&t, 2, ENUMERATION_BUDGET).unwrap(), 1);
        let t3 = singer_cycle(&f2, 3).unwrap();
        assert!(matches!(
            count_splitting(&t3, 2, ENUMERATION_BUDGET),
            Err(Error::DimensionMismatch(_))
        ));
        let one = Subspace::span(&f2, 2, &[vec![Elem::ONE, Elem::ZERO]]).unwrap();
        assert!(is_splitting(&one, &t, 2).unwrap());
        // an invariant line of a diagonal operator never grows
        let f3 = Field::prime(3).unwrap();
        let d = m(&f3, 2, &[2, 0, 0, 1]);
        let e1 = Subspace::span(&f3, 2, &[vec![Elem::ONE, Elem::ZERO]]).unwrap();
        assert!(!is_splitting(&e1, &d, 2).unwrap());
        assert!(matches!(
            is_splitting(&e1, &d, 3),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn pgl2_classes() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(
            classify_pgl2(&m(&f5, 2, &[1, 1, 0, 1])).unwrap(),
            Pgl2Class::Unipotent
        );
        assert_eq!(
            classify_pgl2(&m(&f5, 2, &[2, 0, 0, 3])).unwrap(),
            Pgl2Class::SemisimpleSplit
        );
        assert_eq!(
            classify_pgl2(&m(&f5, 2, &[3, 0, 0, 3])).unwrap(),
            Pgl2Class::Central
        );
        let f2 = Field::prime(2).unwrap();
        // companion matrix of x^2 + x + 1
        assert_eq!(
            classify_pgl2(&m(&f2, 2, &[0, 1, 1, 1])).unwrap(),
            Pgl2Class::SemisimpleNonsplit
        );
        assert_eq!(
            classify_pgl2(&GlElem::identity(&f2, 3)).unwrap_err(),
            Error::NotTwoByTwo(3, 3)
        );
    }
}
