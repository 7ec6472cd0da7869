//! The verification suites: every exact identity the engine is expected to
//! uphold, checked over finite parameter ranges with seeded sampling.
//!
//! Each suite produces a `VerificationReport` with the case counts, the
//! first failing case printed canonically on both sides, the seed, and the
//! wall time. Case inputs are generated sequentially from the seed before
//! any parallel evaluation, so reports are reproducible run to run.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::commutative::{CommAlphabet, CommAtom, CommMonomial, CommutativeElement};
use crate::differentiator::{
    check_commutator_formulas, check_linear_relations, lowering_reduce, omega, DifferentiatorKey,
};
use crate::error::Error;
use crate::expr::{parse, Element, RingTag};
use crate::grading::Degree;
use crate::linalg::{degree_zero_generation_check, one_sided_generation_check, SpanBasis};
use crate::morphism::{
    phi, psi, psi_generator, psi_infty_omega_closed_form, step_psi_s, step_s, StepVariant,
};
use crate::report::{CaseFailure, CheckOutcome};
use crate::sample::Sampler;
use crate::scalar::{binomial_rat, Rational};
use crate::target::{c_bar, gr_quotient, phi_map, TargetContext, TargetElement};
use crate::witt::{sym, WittElement};

pub const DEFAULT_SEED: u64 = 20250809;

/// Bounds and knobs for the suites. Unset fields fall back to the
/// acceptance-criteria defaults, which differ per suite.
#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    pub n: Option<u32>,
    pub m_max: Option<u32>,
    pub order_bound: Option<u32>,
    pub index_bound: Option<i64>,
    pub k_max: Option<u32>,
    pub seed: Option<u64>,
    pub jobs: Option<usize>,
}

impl SuiteOptions {
    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }
}

/// Result of one suite run.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub suite: String,
    pub cases_run: usize,
    pub cases_passed: usize,
    pub seed: u64,
    pub wall_ms: u128,
    pub first_failure: Option<CaseFailure>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.cases_passed == self.cases_run
    }

    fn from_outcome(suite: &str, seed: u64, outcome: CheckOutcome, wall_ms: u128) -> Self {
        let failed = outcome.failures.len();
        VerificationReport {
            suite: suite.to_string(),
            cases_run: outcome.cases,
            cases_passed: outcome.cases - failed.min(outcome.cases),
            seed,
            wall_ms,
            first_failure: outcome.failures.into_iter().next(),
            notes: outcome.notes,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "passed": self.passed(),
            "cases_run": self.cases_run,
            "cases_passed": self.cases_passed,
            "seed": self.seed,
            "wall_ms": self.wall_ms,
            "first_failure": self.first_failure.as_ref().map(|f| json!({
                "case": f.case,
                "lhs": f.lhs,
                "rhs": f.rhs,
            })),
            "notes": self.notes,
        })
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "[{}] {}: {}/{} cases in {} ms (seed {})",
            if self.passed() { "PASS" } else { "FAIL" },
            self.suite,
            self.cases_passed,
            self.cases_run,
            self.wall_ms,
            self.seed,
        )?;
        for note in &self.notes {
            writeln!(f, "    note: {note}")?;
        }
        if let Some(fail) = &self.first_failure {
            writeln!(f, "    first failure: {}", fail.case)?;
            writeln!(f, "      lhs = {}", fail.lhs)?;
            writeln!(f, "      rhs = {}", fail.rhs)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Kernel,
    Image,
    Step,
    Commutators,
    Relations,
    Lowering,
    OneSided,
    DegreeZero,
    Morphisms,
    PiPhi,
    Engine,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Kernel,
        Suite::Image,
        Suite::Step,
        Suite::Commutators,
        Suite::Relations,
        Suite::Lowering,
        Suite::OneSided,
        Suite::DegreeZero,
        Suite::Morphisms,
        Suite::PiPhi,
        Suite::Engine,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Kernel => "kernel",
            Suite::Image => "image",
            Suite::Step => "step",
            Suite::Commutators => "commutators",
            Suite::Relations => "relations",
            Suite::Lowering => "lowering",
            Suite::OneSided => "one-sided",
            Suite::DegreeZero => "degree-zero",
            Suite::Morphisms => "morphisms",
            Suite::PiPhi => "pi-phi",
            Suite::Engine => "engine",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Suite::ALL
            .iter()
            .copied()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse {
                position: 0,
                message: format!("unknown suite `{s}`"),
            })
    }
}

/// Runs `f` in a rayon pool capped at `jobs` threads (or the global pool).
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(j) if j > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .expect("thread pool")
            .install(f),
        _ => f(),
    }
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> VerificationReport {
    let start = Instant::now();
    let outcome = with_jobs(opts.jobs, || match suite {
        Suite::Kernel => suite_kernel(opts),
        Suite::Image => suite_image(opts),
        Suite::Step => suite_step(opts),
        Suite::Commutators => suite_commutators(opts),
        Suite::Relations => suite_relations(opts),
        Suite::Lowering => suite_lowering(opts),
        Suite::OneSided => suite_one_sided(opts),
        Suite::DegreeZero => suite_degree_zero(opts),
        Suite::Morphisms => suite_morphisms(opts),
        Suite::PiPhi => suite_pi_phi(opts),
        Suite::Engine => suite_engine(opts),
    });
    VerificationReport::from_outcome(
        suite.name(),
        opts.seed(),
        outcome,
        start.elapsed().as_millis(),
    )
}

/// Runs every suite in order.
pub fn run_all(opts: &SuiteOptions) -> Vec<VerificationReport> {
    Suite::ALL
        .iter()
        .map(|suite| run_suite(*suite, opts))
        .collect()
}

/// Evaluates pre-generated cases in parallel, keeping report order stable.
fn run_cases<T: Sync + Send>(
    cases: Vec<(String, T)>,
    check: impl Fn(&T) -> Option<(String, String)> + Sync,
) -> CheckOutcome {
    let results: Vec<Option<CaseFailure>> = cases
        .par_iter()
        .map(|(label, input)| {
            check(input).map(|(lhs, rhs)| CaseFailure { case: label.clone(), lhs, rhs })
        })
        .collect();
    let mut outcome = CheckOutcome { cases: cases.len(), ..Default::default() };
    outcome.failures.extend(results.into_iter().flatten());
    outcome
}

fn e(i: i64) -> WittElement {
    WittElement::generator(i).expect("index >= -1")
}

fn key(m: u32, k: i64, s: i64) -> DifferentiatorKey {
    DifferentiatorKey::new(m, k, s).expect("key in domain")
}

/// Solves `x = c·base` exactly; `None` if not proportional (or c = 0).
fn proportional_to(x: &TargetElement, base: &TargetElement) -> Option<Rational> {
    let (mono, coeff) = base.terms().next()?;
    let c = &x.coefficient(mono) * &coeff.inv().ok()?;
    if c.is_zero() || *x != base.scale(&c) {
        None
    } else {
        Some(c)
    }
}

// ---- kernel -------------------------------------------------------------

fn suite_kernel(opts: &SuiteOptions) -> CheckOutcome {
    let n_max = opts.n.unwrap_or(4);
    let mut cases: Vec<(String, (u32, WittElement))> = Vec::new();

    for n in 1..=n_max {
        let k = key(2 * n + 2, 2 * n as i64 + 1, -1);
        cases.push((format!("Psi_{n}({k}) = 0"), (n, omega(&k))));
    }
    for n in 1..=n_max.min(3) {
        let mut sampler = Sampler::derive(opts.seed(), &format!("kernel two-sided n={n}"));
        let generator = omega(&key(2 * n + 2, 2 * n as i64 + 1, -1));
        for case in 0..30 {
            let x = sampler.witt_element(2, 2, 6);
            let y = sampler.witt_element(2, 2, 6);
            let product = &(&x * &generator) * &y;
            cases.push((
                format!("Psi_{n}(x * Omega^{}_({},-1) * y) = 0, sample {case}", 2 * n + 2, 2 * n + 1),
                (n, product),
            ));
        }
    }

    run_cases(cases, |(n, element)| {
        let image = psi(TargetContext::N(*n), element).expect("psi is total");
        if image.is_zero() {
            None
        } else {
            Some((image.to_string(), "0".to_string()))
        }
    })
}

// ---- image --------------------------------------------------------------

fn suite_image(opts: &SuiteOptions) -> CheckOutcome {
    let n_max = opts.n.unwrap_or(5).max(2);
    let mut outcome = CheckOutcome::default();

    // Ψ_n(Ω^{2n}_{2n-1,-1}) = (-1)^n C(2n,n) v_{n-1}^2
    for n in 2..=n_max {
        let ctx = TargetContext::N(n);
        let image = psi(ctx, &omega(&key(2 * n, 2 * n as i64 - 1, -1))).expect("psi total");
        let mut constant = binomial_rat(2 * n as i64, n);
        if n % 2 == 1 {
            constant = -constant;
        }
        let expected = TargetElement::mode(ctx, n - 1)
            .expect("n-1 < n")
            .pow(2)
            .expect("same context")
            .scale(&constant);
        outcome.record(
            format!("Psi_{n}(Omega^{}_({},-1)) = ({constant})*v[{}]^2", 2 * n, 2 * n - 1, n - 1),
            image.to_string(),
            expected.to_string(),
            image == expected,
        );
    }

    // closed form of Ψ_∞(Ω^{2n}_{2n-1,-1}) and its quotient to T_n
    for n in 1..=n_max.min(4) {
        let closed = psi_infty_omega_closed_form(n);
        let direct = psi(
            TargetContext::Infinity,
            &omega(&key(2 * n, 2 * n as i64 - 1, -1)),
        )
        .expect("psi total");
        outcome.record(
            format!("closed form = Psi_inf(Omega^{}_({},-1))", 2 * n, 2 * n - 1),
            closed.to_string(),
            direct.to_string(),
            closed == direct,
        );
        outcome.record(
            format!("closed form for n={n} lies in L"),
            format!("{}", closed.in_l().expect("T_infinity element")),
            "true".to_string(),
            closed.in_l().expect("T_infinity element"),
        );
        let quotient = closed.quotient(n).expect("m = n is valid");
        let expected = if n >= 2 {
            let mut constant = binomial_rat(2 * n as i64, n);
            if n % 2 == 1 {
                constant = -constant;
            }
            TargetElement::mode(TargetContext::N(n), n - 1)
                .expect("valid mode")
                .pow(2)
                .expect("same context")
                .scale(&constant)
        } else {
            // n = 1: -2 (v_0^2 - v_0)
            let v0 = TargetElement::mode(TargetContext::N(1), 0).expect("valid mode");
            v0.pow(2)
                .expect("same context")
                .sub(&v0)
                .expect("same context")
                .scale(&Rational::from_int(-2))
        };
        outcome.record(
            format!("quotient of closed form to T_{n}"),
            quotient.to_string(),
            expected.to_string(),
            quotient == expected,
        );
    }

    // B_1: Ψ_1(Ω^2_{k,-1}) is a nonzero multiple of t^{k-1}(v_0^2 - v_0)
    let ctx1 = TargetContext::N(1);
    let v0 = TargetElement::mode(ctx1, 0).expect("valid mode");
    let v0_poly = v0.pow(2).expect("ctx").sub(&v0).expect("ctx");
    for k in 1..=5i64 {
        let image = psi(ctx1, &omega(&key(2, k, -1))).expect("psi total");
        let base = TargetElement::t(ctx1)
            .pow((k - 1) as u32)
            .expect("ctx")
            .mul(&v0_poly)
            .expect("ctx");
        let scalar = proportional_to(&image, &base);
        let ok = match (&scalar, k) {
            (Some(c), 1) => *c == Rational::from_int(-2),
            (Some(_), _) => true,
            (None, _) => false,
        };
        outcome.record(
            format!("Psi_1(Omega^2_({k},-1)) in k^x * t^{}(v[0]^2 - v[0])", k - 1),
            image.to_string(),
            match scalar {
                Some(c) => format!("({c}) * {base}"),
                None => format!("multiple of {base}"),
            },
            ok,
        );
    }

    outcome
}

// ---- step ---------------------------------------------------------------

fn suite_step(opts: &SuiteOptions) -> CheckOutcome {
    let m_max = opts.m_max.unwrap_or(10);
    let cases: Vec<(String, u32)> = (0..=m_max)
        .filter(|m| m % 2 == 0)
        .map(|m| {
            (
                format!(
                    "S(Omega^{m}_({},-1)) = (m^2-9m+12) Omega^{}_({},-1) at m={m}",
                    m as i64 - 1,
                    m + 2,
                    m + 1
                ),
                m,
            )
        })
        .collect();
    run_cases(cases, |&m| {
        let m_i = m as i64;
        let lhs = step_s(&omega(&key(m, m_i - 1, -1)));
        let scalar = Rational::from_int(m_i * m_i - 9 * m_i + 12);
        let rhs = omega(&key(m + 2, m_i + 1, -1)).scale(&scalar);
        if lhs == rhs {
            None
        } else {
            Some((lhs.to_string(), rhs.to_string()))
        }
    })
}

// ---- commutators ----------------------------------------------------------

fn suite_commutators(opts: &SuiteOptions) -> CheckOutcome {
    let m_max = opts.m_max.unwrap_or(5);
    let k_max = opts.index_bound.unwrap_or(7);
    let s_max = opts.index_bound.unwrap_or(5).min(k_max);
    check_commutator_formulas(m_max, k_max, s_max)
}

// ---- relations ------------------------------------------------------------

fn suite_relations(opts: &SuiteOptions) -> CheckOutcome {
    let n_max = opts.n.unwrap_or(4);
    let s_max = opts.index_bound.unwrap_or(5);
    check_linear_relations(n_max, s_max)
}

// ---- lowering -------------------------------------------------------------

fn suite_lowering(opts: &SuiteOptions) -> CheckOutcome {
    let n_max = opts.n.unwrap_or(3);
    let mut cases: Vec<(String, (DifferentiatorKey, u32))> = Vec::new();
    for n in 1..=n_max {
        let n_i = n as i64;
        for m in [2 * n + 1, 2 * n + 2] {
            for k in (m as i64 - 1)..=(2 * n_i + 7) {
                for s in -1..=(2 * n_i + 6 - k) {
                    if k + s > 2 * n_i + 6 {
                        continue;
                    }
                    let Ok(dk) = DifferentiatorKey::new(m, k, s) else { continue };
                    if dk.is_zero_diagonal() {
                        continue;
                    }
                    cases.push((format!("lowering of {dk} at n={n}"), (dk, n)));
                }
            }
        }
    }
    run_cases(cases, |(dk, n)| match lowering_reduce(dk, *n) {
        Ok((mult, terminal)) => {
            // lowering_reduce already guarantees positivity and integrality
            debug_assert!(mult.is_integer() && !mult.is_negative() && !mult.is_zero());
            let _ = terminal;
            None
        }
        Err(err) => Some((err.to_string(), "positive integer multiple".to_string())),
    })
}

// ---- one-sided ------------------------------------------------------------

fn suite_one_sided(opts: &SuiteOptions) -> CheckOutcome {
    let n_max = opts.n.unwrap_or(2);
    let order_bound = opts.order_bound.unwrap_or(2);
    let index_bound = opts.index_bound.unwrap_or(6);
    let mut outcome = CheckOutcome::default();
    for n in 1..=n_max {
        let report = one_sided_generation_check(n, order_bound, index_bound, opts.seed(), 12);
        outcome.merge(report.outcome);
    }
    outcome
}

// ---- degree-zero ----------------------------------------------------------

fn suite_degree_zero(opts: &SuiteOptions) -> CheckOutcome {
    let k_max = opts.k_max.unwrap_or(4);
    let order_bound = opts.order_bound.unwrap_or(10);
    degree_zero_generation_check(k_max, order_bound).outcome
}

// ---- morphisms ------------------------------------------------------------

fn all_contexts(n_max: u32) -> Vec<TargetContext> {
    let mut ctxs: Vec<TargetContext> = (0..=n_max).map(TargetContext::N).collect();
    ctxs.push(TargetContext::Infinity);
    ctxs
}

fn suite_morphisms(opts: &SuiteOptions) -> CheckOutcome {
    let n_max = opts.n.unwrap_or(4);
    let seed = opts.seed();
    let mut outcome = CheckOutcome::default();
    let contexts = all_contexts(n_max);

    // homomorphism: Ψ(x·y) = Ψ(x)·Ψ(y)
    {
        let mut sampler = Sampler::derive(seed, "morphisms hom");
        let cases: Vec<(String, (TargetContext, WittElement, WittElement))> = (0..100)
            .map(|i| {
                let ctx = contexts[sampler.int_range(0, contexts.len() as i64 - 1) as usize];
                let x = sampler.witt_element(2, 2, 6);
                let y = sampler.witt_element(2, 2, 6);
                (format!("Psi hom in {ctx}, sample {i}"), (ctx, x, y))
            })
            .collect();
        outcome.merge(run_cases(cases, |(ctx, x, y)| {
            let lhs = psi(*ctx, &(x * y)).expect("psi total");
            let rhs = psi(*ctx, x)
                .expect("psi total")
                .mul(&psi(*ctx, y).expect("psi total"))
                .expect("same context");
            if lhs == rhs {
                None
            } else {
                Some((lhs.to_string(), rhs.to_string()))
            }
        }));
    }

    // Φ is a homomorphism on commutative inputs
    {
        let mut sampler = Sampler::derive(seed, "morphisms phi hom");
        let cases: Vec<(String, (TargetContext, CommutativeElement, CommutativeElement))> = (0..100)
            .map(|i| {
                let ctx = contexts[sampler.int_range(0, contexts.len() as i64 - 1) as usize];
                let x = sampler.sym_element(2, 2, 6);
                let y = sampler.sym_element(2, 2, 6);
                (format!("Phi hom in gr {ctx}, sample {i}"), (ctx, x, y))
            })
            .collect();
        outcome.merge(run_cases(cases, |(ctx, x, y)| {
            let lhs = phi(*ctx, &x.mul(y).expect("same alphabet")).expect("phi total");
            let rhs = phi(*ctx, x)
                .expect("phi total")
                .mul(&phi(*ctx, y).expect("phi total"))
                .expect("same alphabet");
            if lhs == rhs {
                None
            } else {
                Some((lhs.to_string(), rhs.to_string()))
            }
        }));
    }

    // graded: degree(Ψ(x)) = degree(x) on homogeneous x with nonzero image
    {
        let mut sampler = Sampler::derive(seed, "morphisms graded");
        let cases: Vec<(String, (TargetContext, WittElement))> = (0..100)
            .map(|i| {
                let ctx = contexts[sampler.int_range(0, contexts.len() as i64 - 1) as usize];
                let order = sampler.int_range(1, 3) as u32;
                let x = WittElement::monomial(sampler.witt_monomial(order, 6))
                    .scale(&sampler.coefficient());
                (format!("degree preserved in {ctx}, sample {i}"), (ctx, x))
            })
            .collect();
        outcome.merge(run_cases(cases, |(ctx, x)| {
            let image = psi(*ctx, x).expect("psi total");
            if image.is_zero() {
                return None; // zero image carries no degree
            }
            let lhs = image.degree().expect("nonzero");
            let rhs = x.degree().expect("nonzero");
            if lhs == rhs {
                None
            } else {
                Some((lhs.to_string(), rhs.to_string()))
            }
        }));
    }

    // filtered: t_order(Ψ(x)) ≤ order(x)
    {
        let mut sampler = Sampler::derive(seed, "morphisms filtered");
        let cases: Vec<(String, (TargetContext, WittElement))> = (0..100)
            .map(|i| {
                let ctx = contexts[sampler.int_range(0, contexts.len() as i64 - 1) as usize];
                let x = sampler.witt_element(3, 3, 6);
                (format!("order bounded in {ctx}, sample {i}"), (ctx, x))
            })
            .collect();
        outcome.merge(run_cases(cases, |(ctx, x)| {
            let image = psi(*ctx, x).expect("psi total");
            if image.is_zero() {
                return None;
            }
            let lhs = image.order().expect("nonzero");
            let rhs = x.order().expect("nonzero");
            if lhs <= rhs {
                None
            } else {
                Some((lhs.to_string(), format!("<= {rhs}")))
            }
        }));
    }

    // compatibility: quotient(Ψ_n(x), m) = Ψ_m(x) for m ≤ n (or from T_∞)
    {
        let mut sampler = Sampler::derive(seed, "morphisms quotient");
        let cases: Vec<(String, (TargetContext, u32, WittElement))> = (0..100)
            .map(|i| {
                let ctx = contexts[sampler.int_range(0, contexts.len() as i64 - 1) as usize];
                let m = match ctx {
                    TargetContext::N(n) => sampler.int_range(0, n as i64) as u32,
                    TargetContext::Infinity => sampler.int_range(0, n_max as i64) as u32,
                };
                let x = sampler.witt_element(2, 2, 6);
                (format!("quotient from {ctx} to T_{m}, sample {i}"), (ctx, m, x))
            })
            .collect();
        outcome.merge(run_cases(cases, |(ctx, m, x)| {
            let lhs = psi(*ctx, x)
                .expect("psi total")
                .quotient(*m)
                .expect("m <= n by construction");
            let rhs = psi(TargetContext::N(*m), x).expect("psi total");
            if lhs == rhs {
                None
            } else {
                Some((lhs.to_string(), rhs.to_string()))
            }
        }));
    }

    // a named anchor from the commuting diagram: quotient(Ψ_5(e_4), 2) = Ψ_2(e_4)
    {
        let lhs = psi(TargetContext::N(5), &e(4))
            .expect("psi total")
            .quotient(2)
            .expect("2 <= 5");
        let rhs = psi(TargetContext::N(2), &e(4)).expect("psi total");
        outcome.record(
            "quotient(Psi_5(e[4]), 2) = Psi_2(e[4])".to_string(),
            lhs.to_string(),
            rhs.to_string(),
            lhs == rhs,
        );
    }

    // injectivity spot-check: {Ψ_∞(e_i) | -1 ≤ i ≤ 8} is independent
    {
        let vectors: Vec<_> = (-1..=8i64)
            .map(|i| {
                psi_generator(TargetContext::Infinity, i)
                    .expect("valid index")
                    .coordinates()
            })
            .collect();
        let rank = SpanBasis::rref(&vectors).rank();
        outcome.record(
            "rank of {Psi_inf(e_i) : -1 <= i <= 8}".to_string(),
            rank.to_string(),
            "10".to_string(),
            rank == 10,
        );
    }

    // step compatibility: Ψ_∞(S(x)) = Ψ_S(Ψ_∞(x)) on the even ladder
    for j in 0..=3u32 {
        let x = omega(&key(2 * j, 2 * j as i64 - 1, -1));
        let lhs = psi(TargetContext::Infinity, &step_s(&x)).expect("psi total");
        let rhs = step_psi_s(
            StepVariant::E2,
            &psi(TargetContext::Infinity, &x).expect("psi total"),
        )
        .expect("T_infinity element");
        outcome.record(
            format!("Psi_inf(S(Omega^{}_({},-1))) = Psi_S(Psi_inf(...))", 2 * j, 2 * j as i64 - 1),
            lhs.to_string(),
            rhs.to_string(),
            lhs == rhs,
        );
    }

    // Ψ_S preserves L
    {
        let mut sampler = Sampler::derive(seed, "morphisms psi_s L");
        let cases: Vec<(String, TargetElement)> = (0..50)
            .map(|i| (format!("Psi_S preserves L, sample {i}"), sampler.l_element(3, 3, 6)))
            .collect();
        outcome.merge(run_cases(cases, |x| {
            debug_assert!(x.in_l().expect("T_infinity"));
            let image = step_psi_s(StepVariant::E2, x).expect("T_infinity element");
            if image.in_l().expect("T_infinity") {
                None
            } else {
                Some((image.to_string(), "an element of L".to_string()))
            }
        }));
    }

    outcome
}

// ---- pi-phi ---------------------------------------------------------------

fn suite_pi_phi(opts: &SuiteOptions) -> CheckOutcome {
    let n_max = opts.n.unwrap_or(4);
    let seed = opts.seed();
    let mut outcome = CheckOutcome::default();

    // φ(c̄_i) three-case formula
    for n in 1..=n_max {
        let ctx = TargetContext::N(n);
        let alphabet = CommAlphabet::GrTarget(ctx);
        for i in -1..=10i64 {
            let image = phi_map(&c_bar(i, ctx).expect("i >= -1")).expect("gr T input");
            let expected = if i == -1 {
                CommutativeElement::atom(alphabet, CommAtom::DBar).expect("valid atom")
            } else if i < n as i64 {
                CommutativeElement::zero(alphabet)
            } else {
                let mut c = binomial_rat(i, n);
                if n % 2 == 1 {
                    c = -c;
                }
                CommutativeElement::from_atom_word(
                    alphabet,
                    &[vec![CommAtom::TBar; (i + 1) as usize], vec![CommAtom::DBar]].concat(),
                )
                .expect("valid atoms")
                .scale(&c)
            };
            outcome.record(
                format!("phi(c_bar({i})) in gr T_{n}"),
                image.to_string(),
                expected.to_string(),
                image == expected,
            );
        }
    }

    // φ is multiplicative
    {
        let mut sampler = Sampler::derive(seed, "pi-phi multiplicative");
        let cases: Vec<(String, (CommutativeElement, CommutativeElement))> = (0..50)
            .map(|i| {
                let n = sampler.int_range(1, 3) as u32;
                let ctx = TargetContext::N(n);
                let x = sampler.gr_target_element(ctx, 2, 2, 2, 6);
                let y = sampler.gr_target_element(ctx, 2, 2, 2, 6);
                (format!("phi multiplicative in gr T_{n}, sample {i}"), (x, y))
            })
            .collect();
        outcome.merge(run_cases(cases, |(x, y)| {
            let lhs = phi_map(&x.mul(y).expect("same alphabet")).expect("gr T input");
            let rhs = phi_map(x)
                .expect("gr T input")
                .mul(&phi_map(y).expect("gr T input"))
                .expect("same alphabet");
            if lhs == rhs {
                None
            } else {
                Some((lhs.to_string(), rhs.to_string()))
            }
        }));
    }

    // Π anchors from the image-theorem computation
    for n in 1..=n_max as i64 {
        let ctx = TargetContext::Infinity;
        let a = psi_generator(ctx, 2 * n - 1).expect("valid index");
        let b = psi_generator(ctx, -1).expect("valid index");
        let de = TargetElement::d(ctx)
            .mul(&TargetElement::mode(ctx, (2 * n - 1) as u32).expect("valid mode"))
            .expect("same context");

        let lhs = a.mul(&b).expect("ctx").pi_projection().expect("T_infinity");
        outcome.record(
            format!("Pi(Psi_inf(e_{}) Psi_inf(e_-1)) = d E[{}]", 2 * n - 1, 2 * n - 1),
            lhs.to_string(),
            de.to_string(),
            lhs == de,
        );

        let lhs = b.mul(&a).expect("ctx").pi_projection().expect("T_infinity");
        let rhs = de
            .add(
                &TargetElement::mode(ctx, (2 * n - 2) as u32)
                    .expect("valid mode")
                    .scale(&Rational::from_int(2 * n)),
            )
            .expect("ctx");
        outcome.record(
            format!(
                "Pi(Psi_inf(e_-1) Psi_inf(e_{})) = d E[{}] + {} E[{}]",
                2 * n - 1,
                2 * n - 1,
                2 * n,
                2 * n - 2
            ),
            lhs.to_string(),
            rhs.to_string(),
            lhs == rhs,
        );
    }

    // in_L(x) ⇔ Π(x) = x, and Π(t·x) = 0
    {
        let mut sampler = Sampler::derive(seed, "pi-phi fixed point");
        let ctx = TargetContext::Infinity;
        let cases: Vec<(String, TargetElement)> = (0..50)
            .map(|i| {
                let x = if i % 2 == 0 {
                    sampler.target_element(ctx, 3, 3, 2, 6)
                } else {
                    sampler.l_element(3, 3, 6)
                };
                (format!("in_L(x) iff Pi(x) = x, sample {i}"), x)
            })
            .collect();
        outcome.merge(run_cases(cases, |x| {
            let fixed = x.pi_projection().expect("T_infinity") == *x;
            let member = x.in_l().expect("T_infinity");
            if fixed == member {
                None
            } else {
                Some((format!("Pi fixed: {fixed}"), format!("in L: {member}")))
            }
        }));

        let mut sampler = Sampler::derive(seed, "pi-phi t-kill");
        let cases: Vec<(String, TargetElement)> = (0..20)
            .map(|i| {
                let x = sampler.target_element(ctx, 3, 3, 2, 6);
                let tx = TargetElement::t(ctx).mul(&x).expect("ctx");
                (format!("Pi(t * x) = 0, sample {i}"), tx)
            })
            .collect();
        outcome.merge(run_cases(cases, |tx| {
            let p = tx.pi_projection().expect("T_infinity");
            if p.is_zero() {
                None
            } else {
                Some((p.to_string(), "0".to_string()))
            }
        }));
    }

    // quotient is a ring homomorphism
    {
        let mut sampler = Sampler::derive(seed, "pi-phi quotient hom");
        let cases: Vec<(String, (TargetElement, TargetElement, u32))> = (0..30)
            .map(|i| {
                let n = sampler.int_range(1, 3) as u32;
                let ctx = TargetContext::N(n);
                let m = sampler.int_range(0, n as i64) as u32;
                let a = sampler.target_element(ctx, 2, 2, 2, 6);
                let b = sampler.target_element(ctx, 2, 2, 2, 6);
                (format!("quotient hom T_{n} -> T_{m}, sample {i}"), (a, b, m))
            })
            .collect();
        outcome.merge(run_cases(cases, |(a, b, m)| {
            let lhs = a.mul(b).expect("ctx").quotient(*m).expect("m <= n");
            let rhs = a
                .quotient(*m)
                .expect("m <= n")
                .mul(&b.quotient(*m).expect("m <= n"))
                .expect("ctx");
            if lhs == rhs {
                None
            } else {
                Some((lhs.to_string(), rhs.to_string()))
            }
        }));
    }

    // c̄ quotient compatibility: π_{n,m}(c̄_i in gr T_n) = c̄_i in gr T_m
    for (n, m, i) in [(3u32, 1u32, 4i64), (4, 2, 6), (3, 3, 2), (2, 0, 3)] {
        let from = c_bar(i, TargetContext::N(n)).expect("i >= -1");
        let lhs = gr_quotient(&from, m).expect("m <= n");
        let rhs = c_bar(i, TargetContext::N(m)).expect("i >= -1");
        outcome.record(
            format!("pi_({n},{m})(c_bar({i})) = c_bar({i}) in gr T_{m}"),
            lhs.to_string(),
            rhs.to_string(),
            lhs == rhs,
        );
    }

    // algebraic independence of {t̄, c̄_{-1}, …, c̄_{n-1}} at bounded degree
    for n in 1..=n_max {
        let ctx = TargetContext::N(n);
        let mut monomial_images: Vec<crate::linalg::Vector<CommMonomial>> = Vec::new();
        let vars: Vec<CommutativeElement> = std::iter::once(
            CommutativeElement::atom(CommAlphabet::GrTarget(ctx), CommAtom::TBar)
                .expect("valid atom"),
        )
        .chain((-1..n as i64).map(|i| c_bar(i, ctx).expect("i >= -1")))
        .collect();
        // all exponent vectors with total degree ≤ 3
        let num_vars = vars.len();
        let mut stack: Vec<Vec<u32>> = vec![Vec::new()];
        for _ in 0..num_vars {
            let mut next = Vec::new();
            for partial in &stack {
                let used: u32 = partial.iter().sum();
                for d in 0..=(3 - used) {
                    let mut grown = partial.clone();
                    grown.push(d);
                    next.push(grown);
                }
            }
            stack = next;
        }
        for exps in &stack {
            let mut prod = CommutativeElement::one(CommAlphabet::GrTarget(ctx));
            for (v, &d) in vars.iter().zip(exps.iter()) {
                prod = prod.mul(&v.pow(d).expect("alphabet")).expect("alphabet");
            }
            monomial_images.push(prod.coordinates());
        }
        let rank = SpanBasis::rref(&monomial_images).rank();
        outcome.record(
            format!("monomials in t_bar, c_bar(-1..{}) of degree <= 3 are independent (n={n})", n as i64 - 1),
            rank.to_string(),
            monomial_images.len().to_string(),
            rank == monomial_images.len(),
        );
    }

    outcome
}

// ---- engine ---------------------------------------------------------------

fn suite_engine(opts: &SuiteOptions) -> CheckOutcome {
    let seed = opts.seed();
    let mut outcome = CheckOutcome::default();

    // associativity in U(W_{≥-1})
    {
        let mut sampler = Sampler::derive(seed, "engine witt associativity");
        let cases: Vec<(String, (WittElement, WittElement, WittElement))> = (0..200)
            .map(|i| {
                (
                    format!("U(W) associativity, sample {i}"),
                    (
                        sampler.witt_element(2, 3, 6),
                        sampler.witt_element(2, 3, 6),
                        sampler.witt_element(2, 3, 6),
                    ),
                )
            })
            .collect();
        outcome.merge(run_cases(cases, |(a, b, c)| {
            let lhs = &(a * b) * c;
            let rhs = a * &(b * c);
            if lhs == rhs {
                None
            } else {
                Some((lhs.to_string(), rhs.to_string()))
            }
        }));
    }

    // associativity in T_3 and T_∞
    for ctx in [TargetContext::N(3), TargetContext::Infinity] {
        let mut sampler = Sampler::derive(seed, &format!("engine target associativity {ctx}"));
        let cases: Vec<(String, (TargetElement, TargetElement, TargetElement))> = (0..200)
            .map(|i| {
                (
                    format!("{ctx} associativity, sample {i}"),
                    (
                        sampler.target_element(ctx, 2, 3, 2, 5),
                        sampler.target_element(ctx, 2, 3, 2, 5),
                        sampler.target_element(ctx, 2, 3, 2, 5),
                    ),
                )
            })
            .collect();
        outcome.merge(run_cases(cases, |(a, b, c)| {
            let lhs = a.mul(b).expect("ctx").mul(c).expect("ctx");
            let rhs = a.mul(&b.mul(c).expect("ctx")).expect("ctx");
            if lhs == rhs {
                None
            } else {
                Some((lhs.to_string(), rhs.to_string()))
            }
        }));
    }

    // gr ∘ sym = id on S(W_{≥-1})
    {
        let mut sampler = Sampler::derive(seed, "engine gr sym");
        let cases: Vec<(String, CommutativeElement)> = (0..50)
            .map(|i| {
                // keep the polynomial order-homogeneous so gr sees all of it
                let order = sampler.int_range(1, 4) as u32;
                let mut x = CommutativeElement::zero(CommAlphabet::SymWitt);
                for _ in 0..sampler.int_range(1, 3) {
                    let mono = CommMonomial::from_exponents(
                        (0..order).map(|_| (CommAtom::EBar(sampler.int_range(-1, 6)), 1)),
                    );
                    x.add_term(mono, sampler.coefficient()).expect("valid atoms");
                }
                if x.is_zero() {
                    x = CommutativeElement::atom(CommAlphabet::SymWitt, CommAtom::EBar(0))
                        .expect("valid atom");
                }
                (format!("gr(sym(x)) = x, sample {i}"), x)
            })
            .collect();
        outcome.merge(run_cases(cases, |x| {
            let back = sym(x).expect("SymWitt input").gr().expect("nonzero");
            if back == *x {
                None
            } else {
                Some((back.to_string(), x.to_string()))
            }
        }));
    }

    // parse ∘ print round-trip in every ring
    {
        let mut sampler = Sampler::derive(seed, "engine round trip");
        let mut cases: Vec<(String, (RingTag, Element))> = Vec::new();
        for i in 0..40 {
            cases.push((
                format!("round-trip uw, sample {i}"),
                (RingTag::Witt, Element::Witt(sampler.witt_element(3, 3, 6))),
            ));
            cases.push((
                format!("round-trip t:2, sample {i}"),
                (
                    RingTag::Target(TargetContext::N(2)),
                    Element::Target(sampler.target_element(TargetContext::N(2), 3, 3, 2, 6)),
                ),
            ));
            cases.push((
                format!("round-trip t:inf, sample {i}"),
                (
                    RingTag::Target(TargetContext::Infinity),
                    Element::Target(sampler.target_element(TargetContext::Infinity, 3, 3, 2, 6)),
                ),
            ));
            cases.push((
                format!("round-trip s, sample {i}"),
                (RingTag::Sym, Element::Commutative(sampler.sym_element(3, 3, 6))),
            ));
            cases.push((
                format!("round-trip grt:2, sample {i}"),
                (
                    RingTag::GrTarget(TargetContext::N(2)),
                    Element::Commutative(sampler.gr_target_element(TargetContext::N(2), 3, 3, 2, 6)),
                ),
            ));
        }
        outcome.merge(run_cases(cases, |(ring, x)| {
            let text = x.canonical();
            match parse(&text, *ring) {
                Ok(back) if back == *x => None,
                Ok(back) => Some((back.canonical(), text)),
                Err(err) => Some((err.to_string(), text)),
            }
        }));
    }

    // Π is a right L-module map: Π(x·r) = Π(x)·r for r ∈ L
    {
        let mut sampler = Sampler::derive(seed, "engine pi module");
        let ctx = TargetContext::Infinity;
        let cases: Vec<(String, (TargetElement, TargetElement))> = (0..50)
            .map(|i| {
                (
                    format!("Pi(x r) = Pi(x) r, sample {i}"),
                    (
                        sampler.target_element(ctx, 3, 2, 2, 5),
                        sampler.l_element(2, 2, 5),
                    ),
                )
            })
            .collect();
        outcome.merge(run_cases(cases, |(x, r)| {
            let lhs = x.mul(r).expect("ctx").pi_projection().expect("T_infinity");
            let rhs = x
                .pi_projection()
                .expect("T_infinity")
                .mul(r)
                .expect("ctx");
            if lhs == rhs {
                None
            } else {
                Some((lhs.to_string(), rhs.to_string()))
            }
        }));
    }

    outcome
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_opts() -> SuiteOptions {
        SuiteOptions { n: Some(2), m_max: Some(4), seed: Some(7), ..Default::default() }
    }

    #[test]
    fn reports_are_reproducible() {
        let opts = quick_opts();
        let a = run_suite(Suite::Kernel, &opts);
        let b = run_suite(Suite::Kernel, &opts);
        assert_eq!(a.cases_run, b.cases_run);
        assert_eq!(a.cases_passed, b.cases_passed);
        assert!(a.passed());
    }

    #[test]
    fn step_suite_small() {
        let report = run_suite(Suite::Step, &quick_opts());
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn relations_suite_small() {
        let opts = SuiteOptions { n: Some(2), index_bound: Some(3), ..Default::default() };
        let report = run_suite(Suite::Relations, &opts);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(Suite::from_str(suite.name()).unwrap(), suite);
        }
        assert!(Suite::from_str("bogus").is_err());
    }
}
