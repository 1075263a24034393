//! Acceptance run: one PASS/FAIL line per criterion with its wall-clock time
//! and limit. A criterion passes when every check holds and it finishes
//! within its limit. Exits nonzero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use dlaurent::binomial::{
    check_f12, check_poly_interpolation, check_vandermonde_shift, gen_binom, phi_closed_form, phi_composition_sum,
};
use dlaurent::completion::{centralizer_solve, evaluate, make_generators, rebase};
use dlaurent::deformation::{coproduct_formal, DeformationSpec, DiffOp};
use dlaurent::series::{lambda_coeff, DeformedSeries};
use dlaurent::weyl::{embed, symbol_of_weyl, DegreeParams, GradedSymbol, WeylElement};
use dlaurent::{Degree, Error, Poly, Rat, RatFun};
use rand::Rng;

/// First failing check, if any.
type Check = Result<(), String>;

/// Name, runtime limit in seconds and the check itself.
type Criterion = (&'static str, u64, fn() -> Check);

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

fn frac(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

fn err(e: Error) -> String {
    e.to_string()
}

fn lambda_specialization() -> Check {
    let spec = spec(0, 1);
    for i in -10..=10 {
        for k in 0..=8 {
            let got = lambda_coeff(&spec, i, k).map_err(err)?;
            ensure(got == gen_binom(&int(i), k), || format!("lambda({i},{k}) = {got}"))?;
        }
    }
    Ok(())
}

fn commutator_identity() -> Check {
    for (r, s) in SPECS {
        let spec = spec(r, s);
        let nu = r + s;
        let alpha = DeformedSeries::alpha(&spec, -15);
        for n in -6..=6 {
            let c = DeformedSeries::t_pow(&spec, n, -15).commutator(&alpha).map_err(err)?;
            let terms: Vec<(i64, RatFun)> = c.coeffs().iter().map(|(k, v)| (*k, v.clone())).collect();
            let expected = if n == 0 { vec![] } else { vec![(n - nu, RatFun::constant(frac(n, s)))] };
            let resolved = c.floor().is_some_and(|f| f < n - nu);
            ensure(terms == expected && resolved, || format!("({r},{s}) [T^{n}, alpha] = {c:?}"))?;
        }
    }
    Ok(())
}

fn weyl_relation() -> Check {
    for (r, s) in SPECS {
        let spec = spec(r, s);
        let p = embed(&spec, &WeylElement::p(), -20).map_err(err)?;
        let q = embed(&spec, &WeylElement::q(), -20).map_err(err)?;
        let c = q.mul(&p).map_err(err)?.sub(&p.mul(&q).map_err(err)?).map_err(err)?;
        let terms: Vec<(i64, RatFun)> = c.coeffs().iter().map(|(k, v)| (*k, v.clone())).collect();
        let exact = terms == vec![(0, RatFun::one())] && c.floor().is_some_and(|f| f <= -10);
        ensure(exact, || format!("({r},{s}) eta(q)eta(p) - eta(p)eta(q) = {c:?}"))?;
    }
    Ok(())
}

fn associativity() -> Check {
    let mut rng = rng(101);
    for (r, s) in SPECS {
        let spec = spec(r, s);
        for _ in 0..100 {
            let (a, b, c) =
                (series(&mut rng, &spec, 2, -10), series(&mut rng, &spec, 2, -10), series(&mut rng, &spec, 2, -10));
            let lhs = a.mul(&b).and_then(|ab| ab.mul(&c)).map_err(err)?;
            let rhs = b.mul(&c).and_then(|bc| a.mul(&bc)).map_err(err)?;
            ensure(lhs.agrees_with(&rhs), || format!("({r},{s}) a={a:?} b={b:?} c={c:?}"))?;
        }
    }
    Ok(())
}

fn oracle_equivalence() -> Check {
    let mut rng = rng(102);
    for (r, s) in SPECS {
        let spec = spec(r, s);
        for _ in 0..200 {
            let (a, b) = (series(&mut rng, &spec, 2, -10), series(&mut rng, &spec, 2, -10));
            let fast = a.mul(&b).map_err(err)?;
            let oracle = a.mul_oracle(&b).map_err(err)?;
            ensure(fast == oracle, || format!("({r},{s}) a={a:?} b={b:?}"))?;
        }
    }
    Ok(())
}

fn inversion() -> Check {
    let mut rng = rng(103);
    for (r, s) in SPECS {
        let spec = spec(r, s);
        let one = DeformedSeries::one(&spec, i64::MIN / 2);
        for _ in 0..100 {
            let z = series(&mut rng, &spec, 2, -10);
            let inv = z.inverse().map_err(err)?;
            let right = z.mul(&inv).map_err(err)?;
            let left = inv.mul(&z).map_err(err)?;
            ensure(right.agrees_with(&one) && left.agrees_with(&one), || format!("({r},{s}) z={z:?}"))?;
        }
    }
    Ok(())
}

fn delta_condition() -> Check {
    let mut rng = rng(104);
    for (r, s) in SPECS {
        let spec = spec(r, s);
        for _ in 0..20 {
            let (a, b) = (ratfun(&mut rng, 2), ratfun(&mut rng, 2));
            for i in -12..=0 {
                let ok = spec.check_condition(i, &a, &b).map_err(err)?;
                ensure(ok, || format!("({r},{s}) i={i} a={a} b={b}"))?;
            }
        }
    }
    let broken = DeformationSpec::custom([(0, DiffOp::multiplication(RatFun::x()))]).map_err(err)?;
    let (a, b) = (ratfun(&mut rng, 2), nonconstant_ratfun(&mut rng, 2));
    let fails = broken.check_condition(0, &a, &b).map_err(err)?;
    ensure(!fails, || "condition holds for delta_0 = multiplication by alpha".into())
}

fn coproduct_remark() -> Check {
    // 1⊗δᵢ + δᵢ⊗1 + the binomial terms, with C(0,1) = 0, C(−1,1) = −1,
    // C(−2,1) = −2 and C(−1,2) = 1
    let expected: [(i64, &[&str]); 4] = [
        (0, &["1*1⊗d0", "1*d0⊗1"]),
        (-1, &["1*1⊗d-1", "1*d-1⊗1"]),
        (-2, &["1*1⊗d-2", "1*d-2⊗1", "-1*d-1⊗d0"]),
        (-3, &["1*1⊗d-3", "1*d-3⊗1", "-1*d-1⊗d-1", "-2*d-2⊗d0", "1*d-1⊗d0*d0"]),
    ];
    for (i, lines) in expected {
        let mut got: Vec<String> = coproduct_formal(i).map_err(err)?.iter().map(|t| t.to_string()).collect();
        let mut want: Vec<String> = lines.iter().map(|s| s.to_string()).collect();
        got.sort();
        want.sort();
        ensure(got == want, || format!("i={i}: {got:?}"))?;
    }
    Ok(())
}

fn combinatorial_grids() -> Check {
    let mut params: Vec<Rat> = (-3..=5).map(int).collect();
    params.extend([frac(1, 2), frac(-1, 3), frac(7, 2)]);
    for a in &params {
        for m in 0..=6 {
            for t in 0..=6 {
                ensure(check_vandermonde_shift(a, m, t), || format!("vandermonde a={a} m={m} t={t}"))?;
            }
        }
    }
    let mut rng = rng(109);
    let mut points: Vec<Rat> = (-3..=5).map(int).collect();
    points.push(frac(1, 2));
    for l in 0..=5u32 {
        for z in &points {
            let coeffs: Vec<i64> = (0..=rng.gen_range(0..=l)).map(|_| rng.gen_range(-9..=9)).collect();
            let p = Poly::from_ints(&coeffs);
            let ok = check_poly_interpolation(l, &p, z).map_err(err)?;
            ensure(ok, || format!("interpolation l={l} z={z} p={coeffs:?}"))?;
        }
    }
    for nu in 1..=5 {
        for l in 1..=7 {
            for i in 1..=l {
                let ok = phi_composition_sum(i, l, nu).map_err(err)? == phi_closed_form(i, l, nu).map_err(err)?;
                ensure(ok, || format!("phi i={i} l={l} nu={nu}"))?;
            }
        }
        for l in 0..=5 {
            for u in 0..=5 {
                ensure(check_f12(l, u, nu), || format!("f12 l={l} u={u} nu={nu}"))?;
            }
        }
    }
    Ok(())
}

fn weyl_oracle() -> Check {
    let mut rng = rng(110);
    let one = int(1);
    for _ in 0..100 {
        let (u, v) = (word(&mut rng, 6), word(&mut rng, 6));
        let lhs = normal_order(&[(u.clone(), one.clone())]).mul(&normal_order(&[(v.clone(), one.clone())]));
        let joined: Vec<u8> = u.iter().chain(&v).copied().collect();
        let rhs = normal_order(&[(joined, one.clone())]);
        ensure(lhs == rhs, || format!("{} * {}", String::from_utf8_lossy(&u), String::from_utf8_lossy(&v)))?;
    }
    let pq = WeylElement::p().mul(&WeylElement::q());
    let expected = WeylElement::from_terms([((2, 2), one.clone()), ((1, 1), one)]);
    ensure(pq.mul(&pq) == expected, || format!("(pq)^2 = {}", pq.mul(&pq).render()))
}

fn degree_laws() -> Check {
    let mut rng = rng(111);
    let weights = [(int(1), int(1)), (int(0), int(1)), (int(1), int(-1)), (int(2), int(3)), (frac(1, 2), frac(1, 3))];
    for (rho, sigma) in weights {
        let v = DegreeParams::new(rho.clone(), sigma.clone()).map_err(err)?;
        for _ in 0..100 {
            let (a, b) = (weyl(&mut rng, 4, 3), weyl(&mut rng, 4, 3));
            let mult = v.v_degree(&a.mul(&b)) == v.v_degree(&a) + v.v_degree(&b);
            let sub = v.v_degree(&a.add(&b)) <= v.v_degree(&a).max(v.v_degree(&b));
            ensure(mult && sub, || format!("({rho},{sigma}) a={} b={}", a.render(), b.render()))?;
        }
    }
    ensure(
        DegreeParams::new(int(0), int(1)).map_err(err)?.v_degree(&WeylElement::zero()) == Degree::NegInfinity,
        || "degree of zero".into(),
    )
}

fn rebase_round_trip() -> Check {
    let mut rng = rng(112);
    for (r, s) in [(0, 1), (1, 1), (1, 2), (3, 2), (2, -1)] {
        let pair = make_generators(r, s, -10).map_err(err)?;
        for _ in 0..20 {
            let w = weyl(&mut rng, 3, 2);
            let z = embed(pair.spec(), &w, -10).map_err(err)?;
            let back = rebase(&pair, &z).and_then(|x| evaluate(&pair, &x)).map_err(err)?;
            ensure(back.equal_to_floor(&z, -10), || format!("({r},{s}) z = eta({})", w.render()))?;
        }
    }
    let pair = make_generators(1, 2, -10).map_err(err)?;
    match rebase(&pair, &DeformedSeries::alpha(pair.spec(), -10)) {
        Err(Error::NotInCompletion { .. }) => Ok(()),
        other => Err(format!("rebase(alpha) with s = 2 gave {other:?}")),
    }
}

fn centralizer() -> Check {
    let mut rng = rng(113);
    for idx in 0..10 {
        let (r, s) = SPECS[idx % SPECS.len()];
        let spec = spec(r, s);
        let lower: Vec<(i64, RatFun)> = (1..=3).map(|k| (-k, ratfun(&mut rng, 1))).collect();
        let terms = std::iter::once((0, nonconstant_ratfun(&mut rng, 1))).chain(lower);
        let z = DeformedSeries::from_terms(&spec, terms, -20);
        let b0s: Vec<RatFun> = (0..3).map(|_| ratfun(&mut rng, 1)).collect();
        let mut solved = Vec::new();
        for b0 in &b0s {
            let w = centralizer_solve(&z, b0, -10).map_err(err)?;
            let c = z.commutator(&w).map_err(err)?;
            let commutes = c.is_zero_to_floor() && c.floor().is_none_or(|f| f <= -10);
            ensure(commutes, || format!("({r},{s}) z={z:?} b0={b0} [z,w]={c:?}"))?;
            let again = centralizer_solve(&z, b0, -10).map_err(err)?;
            ensure(again == w, || format!("({r},{s}) re-solve differs for b0={b0}"))?;
            solved.push(w);
        }
        // the solution with b₀ = a₀ is z itself
        let own = centralizer_solve(&z, &z.coeff(0), -10).map_err(err)?;
        ensure(own.equal_to_floor(&z, -10), || format!("({r},{s}) solution for a0 is not z"))?;
        let sum = centralizer_solve(&z, &(&b0s[0] + &b0s[1]), -10).map_err(err)?;
        let added = solved[0].add(&solved[1]).map_err(err)?;
        ensure(sum.equal_to_floor(&added, -10), || format!("({r},{s}) additivity in b0"))?;
    }
    Ok(())
}

fn symbol_map() -> Check {
    let mut rng = rng(114);
    for (r, s) in SPECS {
        let sym = |z: &WeylElement| symbol_of_weyl(r, s, z).map_err(err);
        ensure(sym(&WeylElement::p())? == GradedSymbol::Term { a: RatFun::x(), n: r }, || {
            format!("({r},{s}) symbol(p)")
        })?;
        ensure(sym(&WeylElement::q())? == GradedSymbol::Term { a: RatFun::one(), n: s }, || {
            format!("({r},{s}) symbol(q)")
        })?;
        for _ in 0..50 {
            let (a, b) = (weyl(&mut rng, 3, 2), weyl(&mut rng, 3, 2));
            let ok = sym(&a.mul(&b))? == sym(&a)?.mul(&sym(&b)?);
            ensure(ok, || format!("({r},{s}) a={} b={}", a.render(), b.render()))?;
        }
    }
    Ok(())
}

fn cli_golden() -> Check {
    let cases = golden::cases();
    ensure(cases.len() >= 13, || format!("only {} golden cases", cases.len()))?;
    for case in &cases {
        let actual = golden::run_case(case);
        ensure(actual == golden::expected(case), || format!("{} differs:\n{actual}", case.display()))?;
    }
    let stdout = |name: &str| golden::run_case(&golden::golden_dir().join(format!("{name}.args")));
    ensure(stdout("01_commutator_t3_alpha") == "exit: 0\n3/1*T^1\n", || "comm(T^3, alpha)".into())?;
    ensure(stdout("02_weyl_qp") == "exit: 0\np*q + 1\n", || "q*p".into())?;
    ensure(stdout("03_embed_inv_q") == "exit: 0\nT^-1\n", || "inv(q)".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 15] = [
        ("lambda specialization for (r,s) = (0,1)", 1, lambda_specialization),
        ("commutator [T^n, alpha] = n/s T^(n-nu)", 5, commutator_identity),
        ("Weyl relation through the embedding", 2, weyl_relation),
        ("associativity on random triples", 60, associativity),
        ("closed-form product matches tuple oracle", 60, oracle_equivalence),
        ("two-sided inverses", 30, inversion),
        ("delta-family compatibility condition", 30, delta_condition),
        ("coproduct of delta_0 .. delta_-3", 1, coproduct_remark),
        ("combinatorial identity grids", 30, combinatorial_grids),
        ("Weyl product vs rewriting oracle", 10, weyl_oracle),
        ("degree-map laws", 10, degree_laws),
        ("rebase round trip", 120, rebase_round_trip),
        ("centralizer solver", 60, centralizer),
        ("symbol map multiplicativity", 10, symbol_map),
        ("CLI golden files", 5, cli_golden),
    ];
    let mut failed = 0;
    for (idx, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let status = if result.is_ok() && in_time { "PASS" } else { "FAIL" };
        println!("{status} {:>2}. {name:<44} {:>8.3}s (limit {limit}s)", idx + 1, elapsed.as_secs_f64());
        if let Err(what) = &result {
            println!("        {what}");
        } else if !in_time {
            println!("        exceeded the runtime limit");
        }
        if status == "FAIL" {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
