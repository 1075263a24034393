//! Randomized identity suites behind `dlaurent verify`. Every check is pure,
//! so the (suite, spec) tasks are spread over worker threads.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use clap::ValueEnum;
use dlaurent::binomial::{check_f12, check_vandermonde_shift, phi_closed_form, phi_composition_sum};
use dlaurent::completion::{evaluate, make_generators, rebase};
use dlaurent::deformation::{make_spec, DeformationSpec};
use dlaurent::series::DeformedSeries;
use dlaurent::weyl::{embed, symbol_of_weyl, WeylElement};
use dlaurent::{Poly, Rat, RatFun, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub const DEFAULT_SPECS: [(i64, i64); 6] = [(0, 1), (1, 1), (1, 2), (2, 1), (2, -1), (-1, 3)];

const FLOOR: i64 = -10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Commutator,
    WeylRelation,
    Associativity,
    Oracle,
    Inverse,
    Condition,
    Rebase,
    Symbol,
    Binomial,
}

impl Suite {
    fn per_spec(self) -> bool {
        self != Suite::Binomial
    }

    fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

pub struct Options {
    pub suites: Vec<Suite>,
    pub specs: Vec<(i64, i64)>,
    pub samples: usize,
    pub seed: u64,
    pub threads: usize,
}

#[derive(Debug)]
pub struct Outcome {
    pub suite: Suite,
    pub spec: Option<(i64, i64)>,
    pub checks: usize,
    pub failures: Vec<String>,
    /// Set when the suite does not apply to the spec or a computation errored.
    pub note: Option<String>,
    pub errored: bool,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && !self.errored
    }

    pub fn label(&self) -> String {
        match self.spec {
            Some((r, s)) => format!("{} (r={r}, s={s})", self.suite.name()),
            None => self.suite.name(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite.name(),
            "spec": self.spec.map(|(r, s)| json!({"r": r, "s": s})),
            "checks": self.checks,
            "failures": self.failures,
            "note": self.note,
            "passed": self.passed(),
        })
    }
}

/// Tally of one task: number of checks and a description of each failure.
#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
    skipped: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

pub fn run(opts: &Options) -> Vec<Outcome> {
    let mut tasks: Vec<(Suite, Option<(i64, i64)>)> = Vec::new();
    for &suite in &opts.suites {
        if suite.per_spec() {
            tasks.extend(opts.specs.iter().map(|&spec| (suite, Some(spec))));
        } else {
            tasks.push((suite, None));
        }
    }
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<(usize, Outcome)>> = Mutex::new(Vec::with_capacity(tasks.len()));
    std::thread::scope(|scope| {
        for _ in 0..opts.threads.clamp(1, tasks.len().max(1)) {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(suite, spec)) = tasks.get(idx) else { break };
                let seed = opts.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(idx as u64);
                let outcome = run_task(suite, spec, opts.samples, seed);
                results.lock().expect("worker panicked").push((idx, outcome));
            });
        }
    });
    let mut results = results.into_inner().expect("worker panicked");
    results.sort_by_key(|(idx, _)| *idx);
    results.into_iter().map(|(_, o)| o).collect()
}

fn run_task(suite: Suite, spec: Option<(i64, i64)>, samples: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::default();
    let result = match spec {
        None => binomial_grid(&mut tally),
        Some((r, s)) => make_spec(r, s).and_then(|spec| {
            let spec = Arc::new(spec);
            let rng = &mut rng;
            match suite {
                Suite::Commutator => commutator(&spec, &mut tally),
                Suite::WeylRelation => weyl_relation(&spec, &mut tally),
                Suite::Associativity => associativity(&spec, rng, samples, &mut tally),
                Suite::Oracle => oracle(&spec, rng, samples, &mut tally),
                Suite::Inverse => inverse(&spec, rng, samples, &mut tally),
                Suite::Condition => condition(&spec, rng, samples, &mut tally),
                Suite::Rebase => rebase_round_trip(r, s, rng, samples, &mut tally),
                Suite::Symbol => symbol(r, s, rng, samples, &mut tally),
                Suite::Binomial => unreachable!("spec-independent suite"),
            }
        }),
    };
    let (note, errored) = match result {
        Ok(()) => (tally.skipped.take(), false),
        Err(e) => (Some(e.to_string()), true),
    };
    Outcome { suite, spec, checks: tally.checks, failures: tally.failures, note, errored }
}

fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    Rat::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=5).into())
}

fn poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    let mut coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-9..=9)).collect();
    if coeffs[deg] == 0 {
        coeffs[deg] = 1;
    }
    Poly::from_ints(&coeffs)
}

fn ratfun(rng: &mut ChaCha8Rng, max_deg: usize) -> RatFun {
    RatFun::new(poly(rng, max_deg), poly(rng, max_deg)).expect("leading coefficient is nonzero")
}

fn series(rng: &mut ChaCha8Rng, spec: &Arc<DeformationSpec>) -> DeformedSeries {
    loop {
        let n = rng.gen_range(1..=4);
        let terms: Vec<(i64, RatFun)> = (0..n).map(|_| (rng.gen_range(-3..=3), ratfun(rng, 2))).collect();
        let z = DeformedSeries::from_terms(spec, terms, FLOOR);
        if z.leading().is_some() {
            return z;
        }
    }
}

fn weyl(rng: &mut ChaCha8Rng) -> WeylElement {
    loop {
        let n = rng.gen_range(1..=3);
        let z = WeylElement::from_terms((0..n).map(|_| ((rng.gen_range(0..=2), rng.gen_range(0..=2)), small_rat(rng))));
        if !z.is_zero() {
            return z;
        }
    }
}

fn commutator(spec: &Arc<DeformationSpec>, tally: &mut Tally) -> Result<()> {
    let (Some((_, s)), Some(nu)) = (spec.params(), spec.nu()) else {
        tally.skipped = Some("needs a concrete spec".into());
        return Ok(());
    };
    let alpha = DeformedSeries::alpha(spec, -15);
    for n in -6..=6 {
        let c = DeformedSeries::t_pow(spec, n, -15).commutator(&alpha)?;
        let coeff = RatFun::constant(Rat::new(n.into(), s.into()));
        let expected = DeformedSeries::monomial(spec, coeff, n - nu, -15);
        let single = c.coeffs().len() == usize::from(n != 0);
        tally.record(single && c.equal_to_floor(&expected, -15), || format!("[T^{n}, alpha] = {}", c.render()));
    }
    Ok(())
}

fn weyl_relation(spec: &Arc<DeformationSpec>, tally: &mut Tally) -> Result<()> {
    let p = embed(spec, &WeylElement::p(), FLOOR - 8)?;
    let q = embed(spec, &WeylElement::q(), FLOOR - 8)?;
    let c = q.commutator(&p)?;
    let ok = c.floor().is_some_and(|f| f <= FLOOR) && c.equal_to_floor(&DeformedSeries::one(spec, FLOOR), FLOOR);
    tally.record(ok, || format!("[eta(q), eta(p)] = {c:?}"));
    Ok(())
}

fn associativity(spec: &Arc<DeformationSpec>, rng: &mut ChaCha8Rng, samples: usize, tally: &mut Tally) -> Result<()> {
    for _ in 0..samples {
        let (a, b, c) = (series(rng, spec), series(rng, spec), series(rng, spec));
        let lhs = a.mul(&b)?.mul(&c)?;
        let rhs = a.mul(&b.mul(&c)?)?;
        tally.record(lhs.agrees_with(&rhs), || format!("({a})({b})({c})"));
    }
    Ok(())
}

fn oracle(spec: &Arc<DeformationSpec>, rng: &mut ChaCha8Rng, samples: usize, tally: &mut Tally) -> Result<()> {
    for _ in 0..samples {
        let (a, b) = (series(rng, spec), series(rng, spec));
        let ok = a.mul(&b)? == a.mul_oracle(&b)?;
        tally.record(ok, || format!("({a})*({b})"));
    }
    Ok(())
}

fn inverse(spec: &Arc<DeformationSpec>, rng: &mut ChaCha8Rng, samples: usize, tally: &mut Tally) -> Result<()> {
    for _ in 0..samples {
        let z = series(rng, spec);
        let inv = z.inverse()?;
        let one = DeformedSeries::one(spec, i64::MIN / 2);
        let ok = z.mul(&inv)?.agrees_with(&one) && inv.mul(&z)?.agrees_with(&one);
        tally.record(ok, || format!("inverse of {z}"));
    }
    Ok(())
}

fn condition(spec: &Arc<DeformationSpec>, rng: &mut ChaCha8Rng, samples: usize, tally: &mut Tally) -> Result<()> {
    for _ in 0..samples {
        let (a, b) = (ratfun(rng, 2), ratfun(rng, 2));
        for i in -12..=0 {
            let ok = spec.check_condition(i, &a, &b)?;
            tally.record(ok, || format!("i={i}, a={a}, b={b}"));
        }
    }
    Ok(())
}

fn rebase_round_trip(r: i64, s: i64, rng: &mut ChaCha8Rng, samples: usize, tally: &mut Tally) -> Result<()> {
    let Ok(pair) = make_generators(r, s, FLOOR) else {
        tally.skipped = Some("generators need gcd(r, s) = 1 and r + s > 0".into());
        return Ok(());
    };
    for _ in 0..samples {
        let w = weyl(rng);
        let z = embed(pair.spec(), &w, FLOOR)?;
        let back = evaluate(&pair, &rebase(&pair, &z)?)?;
        tally.record(back.equal_to_floor(&z, FLOOR), || format!("rebase of eta({})", w.render()));
    }
    Ok(())
}

fn symbol(r: i64, s: i64, rng: &mut ChaCha8Rng, samples: usize, tally: &mut Tally) -> Result<()> {
    for _ in 0..samples {
        let (a, b) = (weyl(rng), weyl(rng));
        let lhs = symbol_of_weyl(r, s, &a.mul(&b))?;
        let rhs = symbol_of_weyl(r, s, &a)?.mul(&symbol_of_weyl(r, s, &b)?);
        tally.record(lhs == rhs, || format!("symbol of ({})({})", a.render(), b.render()));
    }
    Ok(())
}

fn binomial_grid(tally: &mut Tally) -> Result<()> {
    let mut params: Vec<Rat> = (-3..=5).map(|a: i64| Rat::from_integer(a.into())).collect();
    params.extend([(1, 2), (-1, 3), (7, 2)].map(|(n, d): (i64, i64)| Rat::new(n.into(), d.into())));
    for a in &params {
        for m in 0..=6 {
            for t in 0..=6 {
                tally.record(check_vandermonde_shift(a, m, t), || format!("vandermonde a={a}, m={m}, t={t}"));
            }
        }
    }
    for nu in 1..=5 {
        for l in 1..=7 {
            for i in 1..=l {
                let ok = phi_composition_sum(i, l, nu)? == phi_closed_form(i, l, nu)?;
                tally.record(ok, || format!("phi i={i}, l={l}, nu={nu}"));
            }
        }
        for l in 0..=5 {
            for u in 0..=5 {
                tally.record(check_f12(l, u, nu), || format!("f12 l={l}, u={u}, nu={nu}"));
            }
        }
    }
    Ok(())
}
