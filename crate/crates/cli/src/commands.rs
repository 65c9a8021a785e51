use std::path::Path;

use qdesign::arith::{euler_phi, prime_power};
use qdesign::codes::{
    code_action, code_pair_distance, coset_leader, count_cyclic_codes, cyclic_code, goppa_code,
    is_reversible, quasi_cyclic_index, reversal, rs_code, weight,
};
use qdesign::counting::{count_invariant_irreducible, count_irreducible, count_separable};
use qdesign::cyclotomic::cyclotomic_poly;
use qdesign::design::arcs::{arc_check, nrc_points};
use qdesign::design::sets::{verify_block_design, verify_gdd, SetSystem};
use qdesign::design::{
    incidence_matrix, km_solve, large_set_check, pg2_line_design, point_incidence,
    verify_design_with_budget, SearchLimits,
};
use qdesign::factor::factor_xn_minus_1;
use qdesign::fractions::{
    continued_fraction, from_continued_fraction, partial_fractions, recombine,
};
use qdesign::group::cayley::{cayley_graph, sum_free_check, Cyclic};
use qdesign::group::{
    general_linear_generators, has_order, orbit_subspaces, singer_cycle, GroupSpec,
    MAX_GROUP_BUDGET,
};
use qdesign::subspace::{enumerate_subspaces, gaussian_binomial};
use qdesign::text::{
    code_to_json, design_to_json, parse_code, parse_design, parse_field_spec, parse_group,
};
use qdesign::{
    crypto, BigUint, DesignInstance, Elem, Error, Field, LinearCode, Matrix, Mode, Poly, Subspace,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::table::{table_check, TableLimits, TableRow};
use crate::{CliError, Command, GenKind, GroupArgs, ModeArg, Outcome};

type Res = Result<Outcome, CliError>;

pub(crate) fn dispatch(cmd: &Command) -> (&'static str, Value, Res) {
    fn cfg(a: &impl Serialize) -> Value {
        serde_json::to_value(a).expect("arguments serialize")
    }
    match cmd {
        Command::Gauss(a) => ("gauss", cfg(a), gauss(a)),
        Command::Subspaces(a) => ("subspaces", cfg(a), subspaces(a)),
        Command::Orbits(a) => ("orbits", cfg(a), orbits(a)),
        Command::Singer(a) => ("singer", cfg(a), singer(a)),
        Command::SplittingCount(a) => ("splitting-count", cfg(a), splitting(a)),
        Command::DesignVerify(a) => ("design-verify", cfg(a), design_verify(a)),
        Command::KmSearch(a) => ("km-search", cfg(a), km_search(a)),
        Command::GddVerify(a) => ("gdd-verify", cfg(a), gdd_verify(&a.file)),
        Command::LargesetCheck(a) => ("largeset-check", cfg(a), largeset(&a.files)),
        Command::Pg2(a) => ("pg2", cfg(a), pg2(a.p)),
        Command::NrcArc(a) => ("nrc-arc", cfg(a), nrc_arc(a)),
        Command::CodeRs(a) => ("code-rs", cfg(a), code_rs(a)),
        Command::CodeCyclic(a) => ("code-cyclic", cfg(a), code_cyclic(a)),
        Command::CodeGoppa(a) => ("code-goppa", cfg(a), code_goppa(a)),
        Command::CodeDual(a) => ("code-dual", cfg(a), code_dual(a)),
        Command::CodeMindist(a) => ("code-mindist", cfg(a), code_mindist(a)),
        Command::CodeQcIndex(a) => ("code-qc-index", cfg(a), code_qc(a)),
        Command::CodeAction(a) => ("code-action", cfg(a), code_act(a)),
        Command::CodeCountCyclic(a) => ("code-count-cyclic", cfg(a), code_count(a)),
        Command::CodeCoset(a) => ("code-coset", cfg(a), code_coset(a)),
        Command::PolyFactorXn1(a) => ("poly-factor-xn1", cfg(a), factor_xn1(a)),
        Command::PolyCyclotomic(a) => ("poly-cyclotomic", cfg(a), cyclotomic(a)),
        Command::PolyCountIrr(a) => ("poly-count-irr", cfg(a), count_irr(a)),
        Command::PolyPartfrac(a) => ("poly-partfrac", cfg(a), partfrac(a)),
        Command::PolyContfrac(a) => ("poly-contfrac", cfg(a), contfrac(a)),
        Command::Dh(a) => ("dh", cfg(a), dh(a)),
        Command::Dlp(a) => ("dlp", cfg(a), dlp(a)),
        Command::Cayley(a) => ("cayley", cfg(a), cayley(a)),
        Command::TableCheck(a) => ("table-check", cfg(a), table(a)),
    }
}

fn ok(result: impl Serialize) -> Res {
    Ok(Outcome::new(result, true))
}

fn big(v: &BigUint) -> Value {
    match u64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn field(spec: &str) -> Result<Field, CliError> {
    Ok(parse_field_spec(spec)?)
}

fn numbers(text: &str) -> Result<Vec<u64>, CliError> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| CliError::Usage(format!("bad number {t:?}")))
        })
        .collect()
}

fn elems(f: &Field, text: &str) -> Result<Vec<Elem>, CliError> {
    numbers(text)?
        .into_iter()
        .map(|c| {
            let c =
                u32::try_from(c).map_err(|_| Error::Parse(format!("no element with code {c}")))?;
            Ok(f.elem(c)?)
        })
        .collect()
}

/// Coefficients lowest first, separated by spaces or commas.
fn poly(f: &Field, text: &str) -> Result<Poly, CliError> {
    Ok(Poly::parse(f, &text.replace(',', " "))?)
}

fn codes(v: &[Elem]) -> Vec<u32> {
    v.iter().map(|e| e.code()).collect()
}

fn rows(s: &Subspace) -> Vec<Vec<u32>> {
    s.basis().row_vecs().iter().map(|r| codes(r)).collect()
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<u32>> {
    m.row_vecs().iter().map(|r| codes(r)).collect()
}

fn budget_error(e: Error) -> Error {
    match e {
        Error::SizeExceeded(s) => Error::BudgetExceeded(s),
        other => other,
    }
}

fn group(a: &GroupArgs) -> Result<GroupSpec, CliError> {
    if let Some(path) = &a.group_file {
        return Ok(parse_group(&read(path)?)?);
    }
    let (Some(q), Some(n)) = (&a.q, a.n) else {
        return Err(CliError::Usage(
            "give --group-file or both --q and --n".into(),
        ));
    };
    let f = field(q)?;
    let gens = match a.generators {
        GenKind::Singer => vec![singer_cycle(&f, n)?],
        GenKind::Gl => general_linear_generators(&f, n),
        GenKind::Trivial => Vec::new(),
    };
    Ok(GroupSpec::new(&f, n, gens)?)
}

fn gauss(a: &crate::GaussArgs) -> Res {
    if prime_power(a.q).is_none() {
        return Err(Error::BadParameters(format!("{} is not a prime power", a.q)).into());
    }
    ok(json!({ "value": big(&gaussian_binomial(a.n, a.k, a.q)) }))
}

fn subspaces(a: &crate::SubspacesArgs) -> Res {
    let f = field(&a.q)?;
    let all = enumerate_subspaces(&f, a.n, a.k, a.budget).map_err(budget_error)?;
    let mut out = json!({ "count": all.len() });
    if a.list {
        out["subspaces"] = json!(all.iter().map(rows).collect::<Vec<_>>());
    }
    ok(out)
}

fn orbits(a: &crate::OrbitsArgs) -> Res {
    let g = group(&a.group)?;
    let orbits = orbit_subspaces(&g, a.k, a.budget).map_err(budget_error)?;
    let sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
    ok(json!({
        "group_order": g.order(MAX_GROUP_BUDGET).ok(),
        "orbits": orbits.len(),
        "total": sizes.iter().sum::<usize>(),
        "sizes": sizes,
        "representatives": orbits.iter().map(|o| rows(&o[0])).collect::<Vec<_>>(),
    }))
}

fn singer(a: &crate::SingerArgs) -> Res {
    let f = field(&a.q)?;
    let s = singer_cycle(&f, a.n)?;
    let order = (f.q() as u64).pow(a.n as u32) - 1;
    let verified = has_order(&s, order);
    if !verified {
        return Err(
            Error::VerificationFailed(format!("Singer cycle does not have order {order}")).into(),
        );
    }
    ok(json!({ "matrix": matrix_rows(s.matrix()), "order": order }))
}

fn splitting(a: &crate::SplittingArgs) -> Res {
    let f = field(&a.q)?;
    let t = singer_cycle(&f, a.n)?;
    let count = qdesign::group::count_splitting(&t, a.r, a.budget).map_err(budget_error)?;
    ok(json!({ "count": count, "summands": a.n / a.r.max(1) }))
}

fn design_verify(a: &crate::DesignVerifyArgs) -> Res {
    let d = parse_design(&read(&a.file)?)?;
    let r = verify_design_with_budget(&d, a.budget).map_err(budget_error)?;
    let good = r.ok;
    Ok(Outcome::new(r, good))
}

fn km_search(a: &crate::KmArgs) -> Res {
    let g = group(&a.group)?;
    let mode = match a.mode {
        ModeArg::Exact => Mode::Exact,
        ModeArg::AtLeast => Mode::AtLeast,
    };
    let sys =
        incidence_matrix(g.field(), g.n(), a.t, a.k, Some(&g), a.budget).map_err(budget_error)?;
    let limits = SearchLimits {
        node_budget: a.node_budget,
        max_solutions: a.max_solutions,
    };
    let res = km_solve(&sys, a.lambda, mode, limits)?;
    let feasible = !res.designs.is_empty();
    if let (Some(path), Some(blocks)) = (&a.save_design, res.designs.first()) {
        let d = DesignInstance::new(g.field(), g.n(), a.t, a.k, blocks.clone(), a.lambda, mode)?;
        write(path, &design_to_json(&d))?;
    }
    let solutions: Vec<Value> = res
        .outcome
        .solutions
        .iter()
        .zip(&res.designs)
        .map(|(x, blocks)| {
            let chosen: Vec<usize> = x
                .iter()
                .enumerate()
                .filter(|(_, &v)| v == 1)
                .map(|(i, _)| i)
                .collect();
            json!({ "orbits": chosen, "blocks": blocks.len() })
        })
        .collect();
    let result = json!({
        "verdict": if feasible { "feasible" } else { "infeasible" },
        "group_order": g.order(MAX_GROUP_BUDGET).ok(),
        "t_orbits": sys.rows(),
        "k_orbits": sys.cols(),
        "k_orbit_sizes": sys.col_orbits.iter().map(Vec::len).collect::<Vec<_>>(),
        "complete": res.outcome.complete,
        "nodes": res.outcome.nodes,
        "solutions": solutions,
    });
    Ok(Outcome::new(result, feasible))
}

fn gdd_verify(path: &Path) -> Res {
    let raw: SetSystem =
        serde_json::from_str(&read(path)?).map_err(|e| Error::Parse(e.to_string()))?;
    let s = SetSystem::new(raw.points, raw.groups, raw.blocks)?;
    let r = verify_gdd(&s);
    let good = r.ok;
    Ok(Outcome::new(r, good))
}

fn largeset(files: &[std::path::PathBuf]) -> Res {
    let designs = files
        .iter()
        .map(|p| Ok(parse_design(&read(p)?)?))
        .collect::<Result<Vec<_>, CliError>>()?;
    let r = large_set_check(&designs)?;
    let good = r.ok;
    Ok(Outcome::new(r, good))
}

fn pg2(p: u64) -> Res {
    let d = pg2_line_design(p)?;
    let sub = verify_design_with_budget(&d, qdesign::subspace::ENUMERATION_BUDGET)?;
    let inc = point_incidence(&d)?;
    let classical =
        verify_block_design(inc.points, &inc.blocks, 2, 1, 1 << 24).map_err(budget_error)?;
    let good = sub.ok && classical.ok && inc.blocks.len() == inc.points;
    Ok(Outcome::new(
        json!({
            "v": inc.points,
            "b": inc.blocks.len(),
            "block_size": p + 1,
            "subspace_design": sub,
            "block_design": classical,
        }),
        good,
    ))
}

fn nrc_arc(a: &crate::NrcArgs) -> Res {
    let f = field(&a.q)?;
    let pts = nrc_points(&f, a.n);
    let s = a.s.unwrap_or(a.n + 1);
    let arc = arc_check(&f, &pts, s, a.budget).map_err(budget_error)?;
    Ok(Outcome::new(
        json!({ "points": pts.len(), "s": s, "arc": arc }),
        arc,
    ))
}

fn code_summary(c: &LinearCode, budget: u64) -> Result<Value, CliError> {
    let d = c.min_distance(budget)?;
    Ok(json!({
        "n": c.n(),
        "k": c.k(),
        "d": d,
        "params": c.params(d),
        "generator": matrix_rows(c.generator()),
    }))
}

fn save_code(path: &Option<std::path::PathBuf>, c: &LinearCode) -> Result<(), CliError> {
    match path {
        Some(p) => write(p, &code_to_json(c)),
        None => Ok(()),
    }
}

fn code_rs(a: &crate::CodeRsArgs) -> Res {
    let f = field(&a.q)?;
    let pts = elems(&f, &a.points)?;
    let c = rs_code(&f, &pts, a.k)?;
    save_code(&a.save, &c)?;
    let mut out = code_summary(&c, a.budget)?;
    out["mds"] = json!(out["d"].as_u64() == Some((c.n() - c.k() + 1) as u64));
    ok(out)
}

fn code_cyclic(a: &crate::CodeCyclicArgs) -> Res {
    let f = field(&a.q)?;
    let g = poly(&f, &a.g)?;
    let c = cyclic_code(&f, a.n, &g)?;
    save_code(&a.save, &c)?;
    let mut out = code_summary(&c, a.budget)?;
    out["qc_index"] = json!(quasi_cyclic_index(&c).0);
    out["reversible"] = json!(is_reversible(&c));
    ok(out)
}

fn code_goppa(a: &crate::CodeGoppaArgs) -> Res {
    let f = field(&a.q)?;
    let g = poly(&f, &a.g)?;
    let locators = if a.locators.trim() == "all" {
        f.elements().filter(|&x| !g.eval(x).is_zero()).collect()
    } else {
        elems(&f, &a.locators)?
    };
    let c = goppa_code(&locators, &g)?;
    save_code(&a.save, &c)?;
    let mut out = code_summary(&c, a.budget)?;
    out["subfield"] = json!(c.field().spec());
    out["locators"] = json!(codes(&locators));
    ok(out)
}

fn load_code(path: &Path) -> Result<LinearCode, CliError> {
    Ok(parse_code(&read(path)?)?)
}

fn code_dual(a: &crate::CodeFileArgs) -> Res {
    let c = load_code(&a.file)?;
    let dual = c.dual();
    save_code(&a.save, &dual)?;
    ok(json!({
        "n": dual.n(),
        "k": dual.k(),
        "generator": matrix_rows(dual.generator()),
        "self_dual": dual == c,
        "self_orthogonal": dual.subspace().contains(c.subspace()),
    }))
}

fn code_mindist(a: &crate::CodeFileArgs) -> Res {
    let c = load_code(&a.file)?;
    let d = c.min_distance(a.budget)?;
    ok(json!({ "d": d, "params": c.params(d), "singleton_bound": c.n() - c.k() + 1 }))
}

fn code_qc(a: &crate::CodeFileArgs) -> Res {
    let c = load_code(&a.file)?;
    let (l, m) = quasi_cyclic_index(&c);
    ok(json!({ "index": l, "co_index": m, "cyclic": l == 1 }))
}

fn code_act(a: &crate::CodeActionArgs) -> Res {
    let c = load_code(&a.file)?;
    let f = c.field();
    let sigma = if let Some(perm) = &a.perm {
        let perm: Vec<usize> = numbers(perm)?.into_iter().map(|x| x as usize).collect();
        Matrix::permutation(f, &perm)?
    } else if let Some(path) = &a.matrix {
        let m = Matrix::parse(&read(path)?)?;
        if m.field() != f {
            return Err(Error::FieldMismatch.into());
        }
        m
    } else if a.reversal {
        reversal(f, c.n())
    } else {
        return Err(CliError::Usage(
            "give --perm, --matrix or --reversal".into(),
        ));
    };
    let image = code_action(&c, &sigma)?;
    save_code(&a.save, &image)?;
    ok(json!({
        "k": image.k(),
        "generator": matrix_rows(image.generator()),
        "fixed": image == c,
        "distance": code_pair_distance(&c, &image)?,
    }))
}

fn code_count(a: &crate::QnArgs) -> Res {
    ok(count_cyclic_codes(&field(&a.q)?, a.n)?)
}

fn code_coset(a: &crate::CodeCosetArgs) -> Res {
    let c = load_code(&a.file)?;
    let v = elems(c.field(), &a.word)?;
    let leader = coset_leader(&c, &v, a.budget)?;
    ok(json!({
        "leader": codes(&leader),
        "weight": weight(&leader),
        "in_code": c.contains(&v),
    }))
}

fn factor_xn1(a: &crate::QnArgs) -> Res {
    let f = field(&a.q)?;
    let factors = factor_xn_minus_1(&f, a.n)?;
    let product = factors.iter().fold(Poly::one(&f), |acc, g| &acc * g);
    if product != Poly::x_pow_minus_one(&f, a.n) {
        return Err(Error::VerificationFailed("factors do not multiply to x^n - 1".into()).into());
    }
    ok(json!({
        "factors": factors.iter().map(Poly::to_text).collect::<Vec<_>>(),
        "degrees": factors.iter().map(|g| g.degree().unwrap_or(0)).collect::<Vec<_>>(),
        "all_irreducible": factors.iter().all(Poly::is_irreducible),
    }))
}

fn cyclotomic(a: &crate::CyclotomicArgs) -> Res {
    let phi = cyclotomic_poly(a.n)?;
    let mut out =
        json!({ "coefficients": phi.to_text(), "degree": phi.degree(), "phi": euler_phi(a.n) });
    if let Some(q) = &a.q {
        let f = field(q)?;
        out["reduced"] = json!(phi.reduce(&f).to_text());
    }
    ok(out)
}

fn count_irr(a: &crate::CountIrrArgs) -> Res {
    let mut out = json!({
        "irreducible": big(&count_irreducible(a.q, a.l)?),
        "separable": big(&count_separable(a.q, a.l)?),
        "squarefree": big(&squarefree(a.q, a.l)),
    });
    if let Some(k) = a.invariant_k {
        if k == 0 || a.l as u64 % k != 0 {
            return Err(
                Error::BadParameters(format!("k = {k} does not divide l = {}", a.l)).into(),
            );
        }
        let (n, method) = count_invariant_irreducible(a.q, k, a.l / k as u32)?;
        out["invariant"] =
            json!({ "k": k, "m": a.l as u64 / k, "count": big(&n), "method": method });
    }
    ok(out)
}

/// Monic squarefree polynomials of degree `l`: `q^l - q^(l-1)` for `l >= 2`.
fn squarefree(q: u64, l: u32) -> BigUint {
    let q = BigUint::from(q);
    if l < 2 {
        q.pow(l)
    } else {
        q.pow(l) - q.pow(l - 1)
    }
}

fn fg(a: &crate::FgArgs) -> Result<(Poly, Poly), CliError> {
    let f = field(&a.q)?;
    Ok((poly(&f, &a.f)?, poly(&f, &a.g)?))
}

/// `a/b` and `c/d` are equal as rational functions.
fn same_fraction(a: &Poly, b: &Poly, c: &Poly, d: &Poly) -> bool {
    a * d == b * c
}

fn partfrac(a: &crate::FgArgs) -> Res {
    let (f, g) = fg(a)?;
    let terms = partial_fractions(&f, &g)?;
    let (num, den) = recombine(g.field(), &terms);
    if !same_fraction(&num, &den, &f, &g) {
        return Err(Error::VerificationFailed("terms do not recombine to f/g".into()).into());
    }
    ok(json!({ "terms": terms }))
}

fn contfrac(a: &crate::FgArgs) -> Res {
    let (f, g) = fg(a)?;
    let quotients = continued_fraction(&f, &g)?;
    match from_continued_fraction(&quotients) {
        Some((num, den)) if same_fraction(&num, &den, &f, &g) => {}
        _ => return Err(Error::VerificationFailed("quotients do not rebuild f/g".into()).into()),
    }
    ok(json!({ "quotients": quotients.iter().map(Poly::to_text).collect::<Vec<_>>() }))
}

fn dh(a: &crate::DhArgs) -> Res {
    let t = match (a.d, a.e) {
        (Some(d), Some(e)) => crypto::dh_exchange_with(a.q, d, e)?,
        _ => crypto::dh_exchange(a.q, a.seed)?,
    };
    ok(t)
}

fn dlp(a: &crate::DlpArgs) -> Res {
    if a.n == 0 {
        return Err(Error::BadParameters("N must be positive".into()).into());
    }
    let base = crypto::Dihedral::new(a.n, a.base, false);
    let target = crypto::Dihedral::new(a.n, a.target, a.reflection);
    ok(json!({ "m": crypto::dlp_bruteforce(&base, &target)? }))
}

fn cayley(a: &crate::CayleyArgs) -> Res {
    let (graph, sum_free) = if let Some(m) = a.cyclic {
        if m == 0 || m > MAX_GROUP_BUDGET as u64 {
            return Err(Error::BadParameters(format!("cyclic order {m} out of range")).into());
        }
        let elements = Cyclic::group(m);
        let s: Vec<Cyclic> = numbers(a.set.as_deref().unwrap_or(""))?
            .into_iter()
            .map(|v| Cyclic::new(m, v))
            .collect();
        (
            cayley_graph(&elements, &s)?,
            Some(sum_free_check(&s, &elements)?),
        )
    } else {
        let path = a
            .group_file
            .as_ref()
            .expect("clap requires one of the group options");
        let g = parse_group(&read(path)?)?;
        let elements = g.closure(MAX_GROUP_BUDGET).map_err(budget_error)?;
        (cayley_graph(&elements, g.generators())?, None)
    };
    if let Some(path) = &a.dot {
        write(path, &graph.to_dot())?;
    }
    ok(json!({ "graph": graph.summary(), "sum_free": sum_free }))
}

fn table(a: &crate::TableArgs) -> Res {
    let row = TableRow {
        group: a.row,
        q: a.q,
        l: a.l,
        t: a.t,
        k: a.k,
    };
    let limits = TableLimits {
        subset_budget: a.subset_budget,
        lambda_max: a.lambda_max,
        node_budget: a.node_budget,
    };
    let r = table_check(&row, &limits)?;
    let good = r.consistent;
    Ok(Outcome::new(r, good))
}
