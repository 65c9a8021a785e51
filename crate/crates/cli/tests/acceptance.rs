//! Acceptance suite: one PASS/FAIL line per criterion, each checked against
//! its time limit. Exits nonzero when any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::time::{Duration, Instant};

use qdesign::codes::{
    code_pair_distance, cyclic_code, goppa_code, quasi_cyclic_index, rs_code, weight, LinearCode,
};
use qdesign::counting::count_irreducible;
use qdesign::crypto::{dh_exchange, dlp_bruteforce, Dihedral};
use qdesign::design::sets::verify_block_design;
use qdesign::design::{
    incidence_matrix, km_solve, pg2_line_design, point_incidence, verify_design, DesignInstance,
    Mode, SearchLimits,
};
use qdesign::factor::factor_xn_minus_1;
use qdesign::group::{element_order, is_splitting, singer_cycle, torus_generators, GroupSpec};
use qdesign::subspace::{
    all_subspaces, enumerate_subspaces, gaussian_binomial, ENUMERATION_BUDGET,
};
use qdesign::{Elem, Error, Field, Matrix, Poly, Subspace};
use qdesign_cli::table::{table_check, GroupType, TableError, TableLimits, TableRow};
use rand_xoshiro::rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(err: impl std::fmt::Display) -> String {
    err.to_string()
}

fn c1_gaussian_binomial() -> Check {
    let mut cases = 0;
    for q in [2u64, 3] {
        let f = Field::prime(q).map_err(e)?;
        for n in 0..=5usize {
            for k in 0..=n {
                let count = enumerate_subspaces(&f, n, k, ENUMERATION_BUDGET)
                    .map_err(e)?
                    .len();
                let formula = gaussian_binomial(n as u64, k as u64, q);
                ensure(formula == count.into(), || {
                    format!("q={q} n={n} k={k}: {formula} vs {count}")
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases"))
}

/// Monic polynomials of degree `d` over `f`, by coefficient index.
fn monic(f: &Field, d: usize) -> Vec<Poly> {
    let q = f.q() as u64;
    (0..q.pow(d as u32))
        .map(|idx| {
            let mut codes: Vec<u32> = (0..d)
                .map(|i| ((idx / q.pow(i as u32)) % q) as u32)
                .collect();
            codes.push(1);
            Poly::from_codes(f, &codes).unwrap()
        })
        .collect()
}

/// Irreducibility by trial division with every monic polynomial of degree
/// `1..=deg/2`.
fn irreducible_by_trial_division(g: &Poly, divisors: &[Vec<Poly>]) -> bool {
    let d = g.degree().unwrap();
    (1..=d / 2).all(|k| divisors[k].iter().all(|h| !g.rem(h).unwrap().is_zero()))
}

fn c2_irreducible_counts() -> Check {
    let mut shown = Vec::new();
    for q in [2u64, 3] {
        let f = Field::prime(q).map_err(e)?;
        let by_degree: Vec<Vec<Poly>> = (0..=6).map(|d| monic(&f, d)).collect();
        for l in 1..=6u32 {
            let brute = by_degree[l as usize]
                .iter()
                .filter(|g| irreducible_by_trial_division(g, &by_degree))
                .count() as u64;
            let formula = count_irreducible(q, l).map_err(e)?;
            ensure(formula == brute.into(), || {
                format!("q={q} l={l}: {formula} vs {brute}")
            })?;
            if q == 2 && (3..=4).contains(&l) {
                shown.push(format!("({q},{l})->{brute}"));
            }
        }
    }
    Ok(shown.join(" "))
}

fn c3_factor_x8_minus_1() -> Check {
    let f = Field::prime(5).map_err(e)?;
    let factors = factor_xn_minus_1(&f, 8).map_err(e)?;
    let mut degrees: Vec<usize> = factors.iter().map(|g| g.degree().unwrap_or(0)).collect();
    degrees.sort_unstable();
    ensure(degrees == [1, 1, 1, 1, 2, 2], || {
        format!("degrees {degrees:?}")
    })?;
    let product = factors.iter().fold(Poly::one(&f), |acc, g| &acc * g);
    ensure(product == Poly::x_pow_minus_one(&f, 8), || {
        "product is not x^8 - 1".into()
    })?;
    for g in &factors {
        // a quadratic is irreducible iff it has no root
        let roots = f.elements().filter(|&a| g.eval(a).is_zero()).count();
        ensure(g.degree() == Some(1) || roots == 0, || {
            format!("{} has a root", g.to_text())
        })?;
    }
    let text: Vec<String> = factors.iter().map(Poly::to_text).collect();
    Ok(format!(
        "factors (low degree first) [{}]; six factors of total degree 8, so a seven-factor \
         listing such as (x-1)(x+1)(x-2)(x+2)(x^2+1)(x^2-2)(x^2+2) has degree 10 and cannot be \
         x^8-1 (besides, x^2+1 = (x-2)(x+2) and x^2-2 = x^2+3 over F_5)",
        text.join("] [")
    ))
}

fn c4_complete_designs() -> Check {
    let mut cases = 0;
    for q in [2u64, 3] {
        let f = Field::prime(q).map_err(e)?;
        for n in 1..=5usize {
            for k in 1..=n {
                for t in 0..k {
                    let d = DesignInstance::complete(&f, n, t, k).map_err(e)?;
                    let r = verify_design(&d).map_err(e)?;
                    let lambda =
                        u64::try_from(gaussian_binomial((n - t) as u64, (k - t) as u64, q))
                            .unwrap();
                    ensure(
                        r.ok && r.lambda_min == lambda && r.lambda_max == lambda,
                        || {
                            format!(
                                "q={q} n={n} t={t} k={k}: {}..{} vs {lambda}",
                                r.lambda_min, r.lambda_max
                            )
                        },
                    )?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} designs"))
}

/// Number of blocks containing each `t`-subspace, by containment tests.
fn coverage(f: &Field, n: usize, t: usize, blocks: &[Subspace]) -> Vec<u64> {
    enumerate_subspaces(f, n, t, ENUMERATION_BUDGET)
        .unwrap()
        .iter()
        .map(|u| blocks.iter().filter(|b| b.contains(u)).count() as u64)
        .collect()
}

fn c5_kramer_mesner() -> Check {
    let f = Field::prime(2).map_err(e)?;
    let singer = GroupSpec::new(&f, 4, vec![singer_cycle(&f, 4).map_err(e)?]).map_err(e)?;
    let limits = SearchLimits {
        node_budget: 1 << 24,
        max_solutions: 1 << 16,
    };
    let mut summary = Vec::new();
    for (name, group) in [("Singer group", Some(&singer)), ("no group", None)] {
        let sys = incidence_matrix(&f, 4, 2, 3, group, ENUMERATION_BUDGET).map_err(e)?;
        let mut found = BTreeMap::new();
        for lambda in 1..=3 {
            let res = km_solve(&sys, lambda, Mode::Exact, limits).map_err(e)?;
            ensure(res.outcome.complete, || {
                format!("{name}, lambda={lambda}: search incomplete")
            })?;
            for blocks in &res.designs {
                let cov = coverage(&f, 4, 2, blocks);
                ensure(cov.iter().all(|&c| c == lambda), || {
                    format!("{name}, lambda={lambda}: coverage {cov:?}")
                })?;
            }
            if lambda == 3 {
                ensure(res.outcome.solutions.contains(&vec![1; sys.cols()]), || {
                    format!("{name}: all-ones solution missing")
                })?;
            }
            found.insert(lambda, res.designs.len());
        }
        summary.push(format!(
            "{name}: {} x {} system, solutions by lambda {found:?}",
            sys.rows(),
            sys.cols()
        ));
    }
    Ok(summary.join("; "))
}

fn c6_pg2() -> Check {
    let mut out = Vec::new();
    for p in [2u64, 3, 5] {
        let d = pg2_line_design(p).map_err(e)?;
        ensure(verify_design(&d).map_err(e)?.ok, || {
            format!("p={p}: subspace design fails")
        })?;
        let inc = point_incidence(&d).map_err(e)?;
        let v = (p * p + p + 1) as usize;
        ensure(inc.points == v && inc.blocks.len() == v, || {
            format!("p={p}: v={} b={}", inc.points, inc.blocks.len())
        })?;
        let r = verify_block_design(v, &inc.blocks, 2, 1, 1 << 20).map_err(e)?;
        ensure(r.ok && r.lambda_min == 1 && r.lambda_max == 1, || {
            format!("p={p}: pairs covered {}..{}", r.lambda_min, r.lambda_max)
        })?;
        out.push(format!("p={p}: v=b={v}"));
    }
    Ok(out.join(", "))
}

/// Minimum weight over all nonzero combinations of the generator rows.
fn brute_distance(c: &LinearCode) -> usize {
    let f = c.field();
    let g = c.generator();
    let q = f.q() as u64;
    (1..q.pow(c.k() as u32))
        .map(|idx| {
            let mut word = vec![Elem::ZERO; c.n()];
            for r in 0..c.k() {
                let a = f.elem(((idx / q.pow(r as u32)) % q) as u32).unwrap();
                for (w, &x) in word.iter_mut().zip(g.row(r)) {
                    *w = f.add(*w, f.mul(a, x));
                }
            }
            weight(&word)
        })
        .min()
        .unwrap()
}

fn c7_code_parameters() -> Check {
    let f2 = Field::prime(2).map_err(e)?;
    let hamming =
        cyclic_code(&f2, 7, &Poly::from_codes(&f2, &[1, 1, 0, 1]).map_err(e)?).map_err(e)?;
    let d = brute_distance(&hamming);
    ensure(hamming.k() == 4 && d == 3, || {
        format!("cyclic code [7,{},{d}]", hamming.k())
    })?;
    let f5 = Field::prime(5).map_err(e)?;
    let pts: Vec<Elem> = (1..=4).map(|i| f5.from_int(i)).collect();
    let rs = rs_code(&f5, &pts, 2).map_err(e)?;
    let d_rs = brute_distance(&rs);
    ensure(d_rs == 3 && d_rs == rs.n() - rs.k() + 1, || {
        format!("RS distance {d_rs}")
    })?;
    let f4 = Field::new(2, 2).map_err(e)?;
    let locators: Vec<Elem> = f4.elements().skip(1).collect();
    let goppa = goppa_code(&locators, &Poly::x(&f4)).map_err(e)?;
    let repetition =
        LinearCode::from_generator(&Matrix::from_codes(&f2, 1, 3, &[1, 1, 1]).map_err(e)?);
    ensure(goppa == repetition, || {
        format!("Goppa code has generator {:?}", goppa.generator().codes())
    })?;
    Ok(format!(
        "{}, {}, Goppa {}",
        hamming.params(Some(d)),
        rs.params(Some(d_rs)),
        goppa.params(Some(brute_distance(&goppa)))
    ))
}

fn c8_quasi_cyclic() -> Check {
    let f2 = Field::prime(2).map_err(e)?;
    let qc = LinearCode::from_generator(
        &Matrix::from_codes(&f2, 2, 4, &[1, 1, 0, 0, 0, 0, 1, 1]).map_err(e)?,
    );
    let (l, m) = quasi_cyclic_index(&qc);
    ensure((l, m) == (2, 2), || format!("index {l}, co-index {m}"))?;
    let mut cyclic = 0;
    for n in [3usize, 7, 9, 15] {
        let factors = factor_xn_minus_1(&f2, n).map_err(e)?;
        for mask in 0u32..1 << factors.len() {
            let g = factors
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(Poly::one(&f2), |acc, (_, h)| &acc * h);
            let c = cyclic_code(&f2, n, &g).map_err(e)?;
            ensure(quasi_cyclic_index(&c).0 == 1, || {
                format!("n={n}: cyclic code not index 1")
            })?;
            cyclic += 1;
        }
    }
    Ok(format!(
        "index 2, co-index 2; {cyclic} cyclic codes at index 1"
    ))
}

fn c9_splitting() -> Check {
    let f2 = Field::prime(2).map_err(e)?;
    let t = singer_cycle(&f2, 2).map_err(e)?;
    let count = qdesign::group::count_splitting(&t, 1, 1000).map_err(e)?;
    ensure(count == 3, || format!("count {count}"))?;
    let lines = enumerate_subspaces(&f2, 2, 1, 1000).map_err(e)?;
    ensure(lines.len() == 3, || "F_2^2 should have three lines".into())?;
    for w in &lines {
        ensure(is_splitting(w, &t, 2).map_err(e)?, || {
            "a line does not split".into()
        })?;
    }
    Ok("3 of 3 lines split".into())
}

fn c10_torus_orders() -> Check {
    for q in [3u64, 4, 5, 7, 8, 9, 11] {
        let f = Field::with_order(q).map_err(e)?;
        let (split, nonsplit) = torus_generators(&f).map_err(e)?;
        let a = element_order(&split, 1000).map_err(e)?;
        let b = element_order(&nonsplit, 1000).map_err(e)?;
        ensure((a, b) == (q - 1, q + 1), || {
            format!("q={q}: orders {a}, {b}")
        })?;
    }
    Ok("q in {3,4,5,7,8,9,11}".into())
}

fn c11_dh_and_dlp() -> Check {
    let mut exchanges = 0;
    for q in 5u64..=31 {
        for seed in 0..1000 {
            let t = dh_exchange(q, seed).map_err(e)?;
            let expected = t.d * t.e % t.n;
            ensure(
                t.shared_first == expected && t.shared_second == expected && t.shared == expected,
                || format!("q={q} seed={seed}: {t:?}"),
            )?;
            exchanges += 1;
        }
    }
    let mut logs = 0;
    for n in 1u64..=64 {
        let tau = Dihedral::rotation(n);
        for m in 0..n {
            let got = dlp_bruteforce(&tau, &Dihedral::new(n, m, false)).map_err(e)?;
            ensure(got == m, || format!("N={n}: log of tau^{m} gave {got}"))?;
            let refl = dlp_bruteforce(&tau, &Dihedral::new(n, m, true));
            ensure(refl == Err(Error::NotInCyclicSubgroup), || {
                format!("N={n}: reflection {m} gave {refl:?}")
            })?;
            logs += 1;
        }
    }
    Ok(format!("{exchanges} exchanges, {logs} logarithms"))
}

/// `2 dim(U + W) - dim U - dim W`, with the sum's dimension from a stacked rank.
fn distance_oracle(u: &Subspace, w: &Subspace) -> usize {
    let sum_dim = if u.dim() + w.dim() == 0 {
        0
    } else {
        u.basis().stack(w.basis()).unwrap().rank()
    };
    2 * sum_dim - u.dim() - w.dim()
}

fn metric_on(spaces: &[Subspace], triples: &[(usize, usize, usize)]) -> Result<(), String> {
    let codes: Vec<LinearCode> = spaces
        .iter()
        .cloned()
        .map(LinearCode::from_subspace)
        .collect();
    let ds = |i: usize, j: usize| spaces[i].distance(&spaces[j]).unwrap();
    let dc = |i: usize, j: usize| code_pair_distance(&codes[i], &codes[j]).unwrap();
    for &(i, j, k) in triples {
        for d in [&ds as &dyn Fn(usize, usize) -> usize, &dc] {
            ensure(d(i, j) == distance_oracle(&spaces[i], &spaces[j]), || {
                format!("distance {i},{j}")
            })?;
            ensure(d(i, j) == d(j, i), || format!("symmetry {i},{j}"))?;
            ensure((d(i, j) == 0) == (spaces[i] == spaces[j]), || {
                format!("identity {i},{j}")
            })?;
            ensure(d(i, k) <= d(i, j) + d(j, k), || {
                format!("triangle {i},{j},{k}")
            })?;
        }
    }
    Ok(())
}

fn random_subspace(f: &Field, rng: &mut SplitMix64) -> Subspace {
    let q = f.q() as u64;
    let rows = (rng.next_u64() % 5) as usize;
    let codes: Vec<u32> = (0..rows * 4).map(|_| (rng.next_u64() % q) as u32).collect();
    if rows == 0 {
        return Subspace::zero(f, 4);
    }
    Subspace::row_space(&Matrix::from_codes(f, rows, 4, &codes).unwrap())
}

fn c12_metric_axioms() -> Check {
    let f2 = Field::prime(2).map_err(e)?;
    let all = all_subspaces(&f2, 4, ENUMERATION_BUDGET).map_err(e)?;
    let m = all.len();
    // every pair, with each pair's triangle checked through every third space
    let pairs: Vec<(usize, usize, usize)> = (0..m)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, (i * 7 + j * 13) % m))
        .collect();
    metric_on(&all, &pairs)?;
    let mut dist = vec![vec![0usize; m]; m];
    for i in 0..m {
        for j in 0..m {
            dist[i][j] = all[i].distance(&all[j]).map_err(e)?;
        }
    }
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                ensure(dist[i][k] <= dist[i][j] + dist[j][k], || {
                    format!("triangle {i},{j},{k}")
                })?;
            }
        }
    }
    let f3 = Field::prime(3).map_err(e)?;
    let mut rng = SplitMix64::seed_from_u64(12);
    let spaces: Vec<Subspace> = (0..3000).map(|_| random_subspace(&f3, &mut rng)).collect();
    let triples: Vec<(usize, usize, usize)> =
        (0..1000).map(|i| (3 * i, 3 * i + 1, 3 * i + 2)).collect();
    metric_on(&spaces, &triples)?;
    Ok(format!(
        "{m} subspaces of F_2^4 ({} pairs), 1000 triples in F_3^4",
        m * m
    ))
}

fn c13_table_rows() -> Check {
    let limits = TableLimits::default();
    let rows = [
        GroupType::CyclicQMinus1,
        GroupType::CyclicQPlus1,
        GroupType::AbelianP,
        GroupType::DihedralQMinus1,
        GroupType::DihedralQPlus1,
    ];
    let prime_powers = [
        2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31,
    ];
    let mut lines = Vec::new();
    for group in rows {
        let (mut run, mut skipped, mut budget) = (0, 0, 0);
        let mut lambdas = Vec::new();
        for q in prime_powers {
            let row = TableRow {
                group,
                q,
                l: None,
                t: None,
                k: None,
            };
            match table_check(&row, &limits) {
                Ok(r) => {
                    ensure(r.consistent, || {
                        format!("{group:?} q={q}: inconsistent report")
                    })?;
                    ensure(r.group_order == r.tabulated.n, || {
                        format!("{group:?} q={q}: group order")
                    })?;
                    run += 1;
                    if !r.measured_lambdas.is_empty() {
                        lambdas.push(format!("q={q}:{:?}", r.measured_lambdas));
                    }
                }
                Err(TableError::Core(Error::BadParameters(_))) => skipped += 1,
                Err(TableError::Core(Error::BudgetExceeded(_))) => budget += 1,
                Err(other) => return Err(format!("{group:?} q={q}: {other}")),
            }
        }
        ensure(run > 0, || format!("{group:?}: no q <= 31 ran"))?;
        lines.push(format!(
            "{group:?}: {run} run, {skipped} outside the row's conditions, {budget} over budget, measured lambda {}",
            if lambdas.is_empty() { "none".to_string() } else { lambdas.join(" ") }
        ));
    }
    Ok(lines.join("; "))
}

fn c14_singer_search() -> Check {
    let args = [
        "qdesign",
        "km-search",
        "--q",
        "2",
        "--n",
        "6",
        "--t",
        "2",
        "--k",
        "3",
        "--lambda",
        "3",
    ];
    let first = qdesign_cli::run(args);
    let second = qdesign_cli::run(args);
    ensure(first == second, || "reports differ between runs".into())?;
    let report: serde_json::Value = serde_json::from_str(&first.stdout).map_err(e)?;
    let result = &report["result"];
    ensure(result["complete"] == true, || {
        format!("search incomplete: {report}")
    })?;
    let verdict = result["verdict"].as_str().unwrap_or("missing").to_string();
    ensure((verdict == "feasible") == (first.code == 0), || {
        "verdict and exit code disagree".into()
    })?;
    let sizes: BTreeSet<u64> = result["k_orbit_sizes"]
        .as_array()
        .unwrap()
        .iter()
        .filter_map(|v| v.as_u64())
        .collect();
    Ok(format!(
        "verdict {verdict} (exit {}), {} t-orbits, {} k-orbits of sizes {sizes:?}, {} nodes",
        first.code, result["t_orbits"], result["k_orbits"], result["nodes"]
    ))
}

type Criterion = (u32, &'static str, u64, fn() -> Check);

fn main() {
    let criteria: [Criterion; 14] = [
        (
            1,
            "Gaussian binomial equals enumeration",
            10,
            c1_gaussian_binomial,
        ),
        (
            2,
            "irreducible counts equal brute force",
            5,
            c2_irreducible_counts,
        ),
        (3, "x^8 - 1 over F_5", 1, c3_factor_x8_minus_1),
        (4, "complete designs", 60, c4_complete_designs),
        (5, "Kramer-Mesner round trip", 30, c5_kramer_mesner),
        (6, "PG(2,p) line designs", 10, c6_pg2),
        (7, "code parameters", 5, c7_code_parameters),
        (8, "quasi-cyclic index", 1, c8_quasi_cyclic),
        (9, "splitting count", 1, c9_splitting),
        (10, "torus orders", 5, c10_torus_orders),
        (
            11,
            "dihedral key exchange and logarithms",
            10,
            c11_dh_and_dlp,
        ),
        (12, "metric axioms", 30, c12_metric_axioms),
        (13, "table rows", 600, c13_table_rows),
        (
            14,
            "Singer-prescribed 2-(6,3,3) search",
            600,
            c14_singer_search,
        ),
    ];
    let only: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    let stdout = std::io::stdout();
    for (id, name, limit, check) in criteria {
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(limit) => Err(format!(
                "took {:.2}s, limit {limit}s ({detail})",
                elapsed.as_secs_f64()
            )),
            other => other,
        };
        let mut out = stdout.lock();
        match outcome {
            Ok(detail) => {
                writeln!(
                    out,
                    "PASS {id:>2} {name} [{:.2}s]: {detail}",
                    elapsed.as_secs_f64()
                )
                .unwrap();
            }
            Err(why) => {
                failed += 1;
                writeln!(
                    out,
                    "FAIL {id:>2} {name} [{:.2}s]: {why}",
                    elapsed.as_secs_f64()
                )
                .unwrap();
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
