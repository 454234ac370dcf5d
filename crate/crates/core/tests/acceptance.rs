//! Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use resurf::agcodes::{
    canonical_form_omega0, check_delta_convenient, construct_convenient_pair, differential_code, functional_code, g_mn,
    pencil, ZeroCycle,
};
use resurf::codes::{rs_code, tensor_hull, LinearCode};
use resurf::fuzz::{case_rng, random_bipoly, random_code_of_dim, random_cv, random_line_form, random_nonzero, random_series};
use resurf::laurent::{expand_rational, jacobian, pullback_form, substitute_cv, TruncCtx};
use resurf::surface::{
    intersect, res2, res2_truncated, res2_two_step, verify_rf1, verify_rf2, verify_rf3, Curve, Divisor, Surface,
    TwoForm,
};
use resurf::{BiPoly, Error, Field, Result, UniRat};

const SEED: u64 = 20_240_917;
/// Per-field wall-clock limits.
const LIMIT_TENSOR: Duration = Duration::from_secs(10);
const LIMIT_DIFF: Duration = Duration::from_secs(60);
const LIMIT_RF: Duration = Duration::from_secs(120);
/// u-precision for the series fuzz suites.
const U_PRECISION: i64 = 24;
/// Starting total-degree window of the truncated oracle.
const HIGH_PRECISION_WINDOW: i64 = 12;

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { pass, detail: detail.into() })
}

fn field(q: u64) -> Field {
    Field::with_order(q).expect("desk-scale field")
}

fn crit1() -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut pass = true;
    for q in [4u64, 5, 7] {
        let t = Instant::now();
        let f = field(q);
        let s = Surface::p1xp1(f);
        let grid = ZeroCycle::grid(&s);
        let mut bad = Vec::new();
        for m in 0..q as i64 {
            for n in 0..q as i64 {
                let c = functional_code(&s, &grid, &g_mn(&s, m, n))?;
                let t = rs_code(f, m as usize + 1)?.tensor(&rs_code(f, n as usize + 1)?)?;
                if c != t {
                    bad.push(format!("({m},{n})"));
                }
            }
        }
        let el = t.elapsed();
        pass &= bad.is_empty() && el < LIMIT_TENSOR;
        notes.push(format!("q={q}: {} pairs, {} mismatches, {:.2}s", q * q, bad.len(), el.as_secs_f64()));
    }
    ok(pass, notes.join("; "))
}

/// Codes for the P¹×P¹ grid example at one field, for all 0 ≤ m, n ≤ q − 2.
struct GridRun {
    q: i64,
    elapsed: Duration,
    /// (m, n, C_L(G), C_Ω(D1,D3,G), C_Ω(D2,D3,G))
    rows: Vec<(i64, i64, LinearCode, LinearCode, LinearCode)>,
    s: Surface,
    grid: ZeroCycle,
}

fn grid_run(q: u64) -> Result<GridRun> {
    let t = Instant::now();
    let f = field(q);
    let s = Surface::p1xp1(f);
    let grid = ZeroCycle::grid(&s);
    let p13 = check_delta_convenient(&s, &pencil(&s, 1), &pencil(&s, 3), &grid)?;
    let p23 = check_delta_convenient(&s, &pencil(&s, 2), &pencil(&s, 3), &grid)?;
    let q = q as i64;
    let mut rows = Vec::new();
    for m in 0..=q - 2 {
        for n in 0..=q - 2 {
            let g = g_mn(&s, m, n);
            let fun = functional_code(&s, &grid, &g)?;
            let c13 = differential_code(&s, &grid, &p13, &g)?.code;
            let c23 = differential_code(&s, &grid, &p23, &g)?.code;
            rows.push((m, n, fun, c13, c23));
        }
    }
    Ok(GridRun { q, elapsed: t.elapsed(), rows, s, grid })
}

fn crit2(runs: &[GridRun]) -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut pass = true;
    for r in runs.iter().filter(|r| r.q != 4) {
        let q = r.q;
        let t = Instant::now();
        let mut bad = Vec::new();
        for (m, n, _, c13, _) in &r.rows {
            let target = functional_code(&r.s, &r.grid, &g_mn(&r.s, 2 * q - 2 - m, q - 2 - n))?;
            if *c13 != target {
                bad.push(format!("({m},{n})"));
            }
        }
        // K - G + D = (2q-2-m)E + (q-2-n)F exactly when (ω₀) + D = (2q-2)E + (q-2)F.
        let pair = construct_convenient_pair(&r.s, &r.grid)?;
        let w0 = canonical_form_omega0(&r.s, &pair, &r.grid)?;
        let k_plus_d = w0.form.divisor()?.add(&pair.d());
        let k_ok = w0.g.total_degree() == Some(0) && k_plus_d == g_mn(&r.s, 2 * q - 2, q - 2);
        let el = r.elapsed + t.elapsed();
        pass &= bad.is_empty() && k_ok && el < LIMIT_DIFF;
        notes.push(format!(
            "q={q}: {} pairs, {} mismatches, (w0)+D = {k_plus_d}, {:.2}s",
            r.rows.len(),
            bad.len(),
            el.as_secs_f64()
        ));
    }
    ok(pass, notes.join("; "))
}

fn crit3(runs: &[GridRun]) -> Result<Outcome> {
    let mut pass = true;
    let mut notes = Vec::new();
    for r in runs.iter().filter(|r| r.q != 4) {
        let q = r.q;
        let mut gaps = Vec::new();
        for (m, n, fun, c13, c23) in &r.rows {
            let dual = fun.dual();
            let inc = dual.contains(c13)? && dual.contains(c23)?;
            let strict = dual.dim() > c13.dim() && dual.dim() > c23.dim();
            pass &= inc && (strict || !(*m < q - 2 && *n < q - 2));
            if *m < q - 2 && *n < q - 2 {
                gaps.push(dual.dim() - c13.dim());
            }
        }
        let (lo, hi) = (gaps.iter().min().copied().unwrap_or(0), gaps.iter().max().copied().unwrap_or(0));
        notes.push(format!("q={q}: dimension gaps for D1,D3 over m,n<q-2 in {lo}..={hi}"));
    }
    // Pairs built for scattered points on P², G = kL∞ and G with an affine line.
    for q in [5u64, 7] {
        let f = field(q);
        let s = Surface::p2(f);
        let pt = |a, b| s.affine_point(f.from_int(a), f.from_int(b));
        let delta = ZeroCycle::new(&s, vec![pt(0, 0), pt(1, 2), pt(2, 4), pt(3, 1)])?;
        let pair = construct_convenient_pair(&s, &delta)?;
        let away = Curve::line(f.one(), f.from_int(2), f.one())?;
        for g in [Divisor::zero(), Divisor::single(Curve::linf(f), 1), Divisor::single(away, 1)] {
            let fun = functional_code(&s, &delta, &g)?;
            let c = differential_code(&s, &delta, &pair, &g)?.code;
            let inc = fun.dual().contains(&c)?;
            pass &= inc;
            notes.push(format!("q={q} P2 |Δ|=4 G={g}: included={inc} gap={}", fun.dual().dim() - c.dim()));
        }
    }
    ok(pass, notes.join("; "))
}

fn crit4(runs: &[GridRun]) -> Result<Outcome> {
    let mut pass = true;
    let mut notes = Vec::new();
    for r in runs {
        let q = r.q;
        let f = r.s.field;
        let full = LinearCode::full(f, q as usize);
        let (mut eq, mut dims, mut rs_ok, mut elem) = (0, 0, 0, 0);
        for (_, n, fun, c13, c23) in &r.rows {
            if c13.sum(c23)? == fun.dual() {
                eq += 1;
            }
            if c13.dim() as i64 == q * (q - 1 - n) {
                dims += 1;
            }
            if *c13 == full.tensor(&rs_code(f, (q - 1 - n) as usize)?)? {
                rs_ok += 1;
            }
            let (u, _, el) = tensor_hull(c13, q as usize, q as usize)?;
            if el && u == full {
                elem += 1;
            }
        }
        let k = r.rows.len();
        pass &= eq == k && dims == k && rs_ok == k && elem == k;
        notes.push(format!(
            "q={q}: sum=dual {eq}/{k}, dim C(D1,D3)=q(q-1-n) {dims}/{k}, = F^q⊗RS(q-1-n) {rs_ok}/{k}, elementary {elem}/{k}"
        ));
    }
    ok(pass, notes.join("; "))
}

fn pole_curves(w: &TwoForm) -> Result<Vec<(Curve, i64)>> {
    Ok(w.divisor()?.iter().filter(|(_, &k)| k < 0).map(|(c, &k)| (c.clone(), -k)).collect())
}

fn crit5() -> Result<Outcome> {
    let t = Instant::now();
    let (mut n1, mut n2, mut n3) = (0usize, 0usize, 0usize);
    let mut fails = Vec::new();
    for q in [4u64, 5, 7] {
        let f = field(q);
        for case in 0..100u64 {
            let s = if case % 2 == 0 { Surface::p2(f) } else { Surface::p1xp1(f) };
            let mut rng = case_rng(SEED + q, case);
            let (w, lines) = random_line_form(&mut rng, s, 2 + (case % 3) as usize);
            let poles = pole_curves(&w)?;
            for (c, _) in &poles {
                n1 += 1;
                if !verify_rf1(&w, c)?.pass {
                    fails.push(format!("RF1 q={q} case {case}"));
                }
            }
            for o in intersect(&s, &lines[0], &lines[1])? {
                if o.degree() == 1 {
                    n2 += 1;
                    if !verify_rf2(&w, o.representative())?.pass {
                        fails.push(format!("RF2 q={q} case {case}"));
                    }
                }
            }
            let (mut da, mut db) = (Divisor::zero(), Divisor::zero());
            for (i, (c, k)) in poles.into_iter().enumerate() {
                if i % 2 == 0 {
                    da.add_term(c, k)
                } else {
                    db.add_term(c, k)
                }
            }
            if !db.is_zero() {
                n3 += 1;
                if !verify_rf3(&w, &da, &db)?.pass {
                    fails.push(format!("RF3 q={q} case {case}"));
                }
            }
        }
    }
    let el = t.elapsed();
    ok(
        fails.is_empty() && el < LIMIT_RF,
        format!("RF1 {n1} sums, RF2 {n2} points, RF3 {n3} pairs, {} nonzero, {:.2}s {:?}", fails.len(), el.as_secs_f64(), fails),
    )
}

fn ctx(q: u64) -> TruncCtx {
    TruncCtx { field: field(q), u_precision: U_PRECISION }
}

fn crit6() -> Result<Outcome> {
    let mut bad = 0;
    let mut nonzero = 0;
    for q in [4u64, 5, 7] {
        let c = ctx(q);
        for case in 0..200u64 {
            let mut rng = case_rng(SEED + q, 1000 + case);
            let s = random_series(&mut rng, c, 1 + (case % 4) as i64, 3, 2);
            let (f, g) = random_cv(&mut rng, c, 10);
            let before = s.residue2_coeff()?;
            let after = pullback_form(&s, &f, &g)?.residue2_coeff()?;
            bad += (before != after) as usize;
            nonzero += !before.is_zero() as usize;
        }
    }
    ok(bad == 0, format!("600 cases, {bad} mismatches, {nonzero} with nonzero residue"))
}

fn crit7() -> Result<Outcome> {
    let (mut jac_bad, mut rho_bad) = (0, 0);
    for case in 0..100u64 {
        let q = [4u64, 5, 7][case as usize % 3];
        let c = ctx(q);
        let mut rng = case_rng(SEED, 2000 + case);
        let a = random_series(&mut rng, c, 2, 3, 4);
        let b = random_series(&mut rng, c, 2, 3, 4);
        let j = jacobian(&a, &b)?;
        let (f, g) = random_cv(&mut rng, c, 10);
        let pulled = substitute_cv(&j, &f, &g)?.mul(&jacobian(&f, &g)?)?;
        jac_bad += !pulled.residue2_coeff()?.is_zero() as usize;
        // Exact rational A, B with poles along both axes.
        let fl = c.field;
        let den = |rng: &mut _| {
            let d = &random_bipoly(rng, fl, 2, 2) + &BiPoly::constant(random_nonzero(rng, fl));
            &d * &BiPoly::from_terms(fl, &[(1, 1, 1)])
        };
        let (n1, d1) = (random_bipoly(&mut rng, fl, 2, 2), den(&mut rng));
        let (n2, d2) = (random_bipoly(&mut rng, fl, 2, 2), den(&mut rng));
        let ea = expand_rational::<UniRat>(&n1, &d1, fl, 6)?;
        let eb = expand_rational::<UniRat>(&n2, &d2, fl, 6)?;
        jac_bad += !jacobian(&ea, &eb)?.residue2_coeff()?.is_zero() as usize;
        rho_bad += !j.rho()?.residue()?.is_zero() as usize;
    }
    ok(jac_bad + rho_bad == 0, format!("100 cases: Jac residue nonzero {jac_bad}, u^-1 of rho(Jac) nonzero {rho_bad}"))
}

fn tensor_checks(f: Field, na: usize, nb: usize, ka: usize, kb: usize, seed: u64) -> Result<(bool, bool, bool)> {
    let mut rng = case_rng(seed, 3000);
    let a = random_code_of_dim(&mut rng, f, na, ka);
    let b = random_code_of_dim(&mut rng, f, nb, kb);
    let (fa, fb) = (LinearCode::full(f, na), LinearCode::full(f, nb));
    let orth = a.tensor(&b)?.dual() == a.dual().tensor(&fb)?.sum(&fa.tensor(&b.dual())?)?;
    let lem = a.tensor(&fb)?.intersect(&fa.tensor(&b)?)? == a.tensor(&b)?;
    let proper = |k: usize, n: usize| k > 0 && k < n;
    let hull = if proper(ka, na) && proper(kb, nb) {
        !tensor_hull(&a.tensor(&fb)?.sum(&fa.tensor(&b)?)?, na, nb)?.2
    } else {
        true
    };
    Ok((orth, lem, hull))
}

fn crit8() -> Result<Outcome> {
    let mut fails = Vec::new();
    let f5 = field(5);
    let mut cases = 0;
    for ka in 0..=5 {
        for kb in 0..=5 {
            cases += 1;
            let r = tensor_checks(f5, 5, 5, ka, kb, (ka * 6 + kb) as u64)?;
            if r != (true, true, true) {
                fails.push(format!("q=5 ({ka},{kb}) {r:?}"));
            }
        }
    }
    let f7 = field(7);
    for case in 0..100u64 {
        let mut rng = case_rng(SEED, 4000 + case);
        use rand::Rng;
        let (na, nb) = (rng.gen_range(1..=7), rng.gen_range(1..=7));
        let (ka, kb) = (rng.gen_range(0..=na), rng.gen_range(0..=nb));
        cases += 1;
        let r = tensor_checks(f7, na, nb, ka, kb, 5000 + case)?;
        if r != (true, true, true) {
            fails.push(format!("q=7 case {case} {r:?}"));
        }
    }
    ok(fails.is_empty(), format!("{cases} cases, failures {fails:?}"))
}

fn crit9() -> Result<Outcome> {
    let f = field(5);
    let p2 = Surface::p2(f);
    let l = |a, b, c| Curve::line(f.from_int(a), f.from_int(b), f.from_int(c));
    let grid = ZeroCycle::grid(&p2);
    let ex1 = check_delta_convenient(&p2, &pencil(&p2, 1), &pencil(&p2, 2), &grid).is_ok();
    let pt = |a, b| p2.affine_point(f.from_int(a), f.from_int(b));
    let delta = ZeroCycle::new(&p2, vec![pt(0, 0), pt(1, 0), pt(0, 1)])?;
    let da = Divisor::from_terms([(l(0, 1, 0)?, 1), (l(0, 1, -1)?, 1)]);
    let db = Divisor::from_terms([(l(1, 0, 0)?, 1), (l(1, 0, -1)?, 1), (l(1, 1, -2)?, -1)]);
    let ex2 = check_delta_convenient(&p2, &da, &db, &delta).is_ok();
    let named = |r: Result<_>, cond: &str| matches!(r, Err(Error::NotConvenient(m)) if m.contains(cond));
    let shared = named(check_delta_convenient(&p2, &da, &da, &delta), "condition (i)");
    let one = ZeroCycle::new(&p2, vec![pt(0, 0)])?;
    let parabola = Curve::affine(BiPoly::from_terms(f, &[(0, 1, 1), (2, 0, -1)]))?;
    let tangent = named(
        check_delta_convenient(&p2, &Divisor::single(l(0, 1, 0)?, 1), &Divisor::single(parabola, 1), &one),
        "condition (1) fails at (0,0)",
    );
    ok(
        ex1 && ex2 && shared && tangent,
        format!("grid pencils {ex1}, noneffective pair {ex2}, shared component rejected {shared}, tangency rejected {tangent}"),
    )
}

fn crit10() -> Result<Outcome> {
    let (mut points, mut two_step, mut bad) = (0, 0, 0);
    for case in 0..50u64 {
        let q = [4u64, 5, 7][case as usize % 3];
        let f = field(q);
        let s = if case % 2 == 0 { Surface::p2(f) } else { Surface::p1xp1(f) };
        let mut rng = case_rng(SEED, 6000 + case);
        let (w, lines) = random_line_form(&mut rng, s, 3);
        let c = &lines[0];
        for other in &lines[1..] {
            for o in intersect(&s, c, other)?.into_iter().filter(|o| o.degree() == 1) {
                let p = o.representative();
                points += 1;
                let exact = res2(&w, c, p)?;
                bad += (res2_truncated(&w, c, p, HIGH_PRECISION_WINDOW, false)? != exact) as usize;
                if let Some(r) = res2_two_step(&w, c, p)? {
                    two_step += 1;
                    bad += (r != exact) as usize;
                }
            }
        }
    }
    ok(bad == 0 && two_step > 0, format!("50 forms, {points} points, {two_step} two-step comparisons, {bad} disagreements"))
}

fn main() -> ExitCode {
    let runs: Result<Vec<GridRun>> = [4u64, 5, 7].into_iter().map(grid_run).collect();
    let runs = match runs {
        Ok(r) => r,
        Err(e) => {
            println!("FAIL grid pipeline: {e}");
            return ExitCode::FAILURE;
        }
    };
    let criteria: Vec<(&str, Box<dyn Fn() -> Result<Outcome> + '_>)> = vec![
        ("1 functional code on the grid equals RS(m+1)⊗RS(n+1)", Box::new(crit1)),
        ("2 differential code equals the functional code of K-G+D", Box::new(|| crit2(&runs))),
        ("3 differential code in the dual of the functional code, strictly", Box::new(|| crit3(&runs))),
        ("4 sum of the two differential codes equals the dual", Box::new(|| crit4(&runs))),
        ("5 residue formulas RF1 RF2 RF3 on random line arrangements", Box::new(crit5)),
        ("6 2-residue invariant under change of variables", Box::new(crit6)),
        ("7 Jacobians have no residue", Box::new(crit7)),
        ("8 tensor product duality and intersection", Box::new(crit8)),
        ("9 convenience criterion examples", Box::new(crit9)),
        ("10 exact, truncated and two-step residues agree", Box::new(crit10)),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        let (pass, detail) = match run() {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        failed += !pass as usize;
        println!("{} [{name}] {detail} ({:.2}s)", if pass { "PASS" } else { "FAIL" }, t.elapsed().as_secs_f64());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
