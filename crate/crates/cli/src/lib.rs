//! Verification suites behind `padic-cuntz verify`.
//!
//! Every suite runs exact identity checks and collects the failing cases into
//! a [`SuiteReport`]. Randomized checks draw from a ChaCha stream seeded by
//! `--seed`, so a report is reproducible up to its `wall_time`.

use std::collections::btree_map::{BTreeMap, Entry};
use std::fmt::Display;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use padic_cuntz::coherent::{
    af_relation_residual, build_x_truncated, check_t_operators, eigen_residual, leibnitz_residual_on, pairing_series,
    phi_map, renormalized_pairing, state_closed_form, t_dagger, t_op, CoherentState, DEFAULT_STABILIZATION_MARGIN,
};
use padic_cuntz::rep::{apply_annihilation, apply_creation, apply_operator_word, cyclicity_basis, gns_state};
use padic_cuntz::sample::{random_coherent_state, random_scalar, random_step_function_upto};
use padic_cuntz::{AntifockVacuum, Error, LambdaPoly, OperatorWord, Prime, Result, Scalar, StepFunction, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Cuntz,
    Gns,
    Pairing,
    Trep,
    Af,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Cuntz => "cuntz",
            Suite::Gns => "gns",
            Suite::Pairing => "pairing",
            Suite::Trep => "trep",
            Suite::Af => "af",
            Suite::All => "all",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        [
            Suite::Cuntz,
            Suite::Gns,
            Suite::Pairing,
            Suite::Trep,
            Suite::Af,
            Suite::All,
        ]
        .into_iter()
        .find(|x| x.name() == s)
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub p: Prime,
    pub depth: usize,
    pub trunc: usize,
    pub seed: u64,
    /// Random inputs per randomized check family.
    pub cases: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub case_id: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Parameters {
    pub depth: usize,
    pub trunc: usize,
    pub seed: u64,
    pub cases: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub p: u32,
    pub parameters: Parameters,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub wall_time: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Default)]
struct Tally {
    cases: usize,
    failures: Vec<Failure>,
}

impl Tally {
    fn check(&mut self, case_id: impl Display, ok: bool, expected: impl Display, actual: impl Display) {
        self.cases += 1;
        if !ok {
            self.failures.push(Failure {
                case_id: case_id.to_string(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    fn eq<T: PartialEq + Display>(&mut self, case_id: impl Display, expected: &T, actual: &T) {
        self.check(case_id, expected == actual, expected, actual);
    }

    fn ok<T>(&mut self, case_id: impl Display, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => {
                self.cases += 1;
                Some(v)
            }
            Err(e) => {
                self.check(case_id, false, "success", e);
                None
            }
        }
    }
}

fn describe(f: &StepFunction) -> String {
    padic_cuntz::json::step_function_to_string(f)
}

/// Rejects parameters whose dense arrays would blow past the size cap.
pub fn check_resources(cfg: &SuiteConfig, suite: Suite) -> Result<()> {
    cfg.p.pow(cfg.depth + 1)?;
    if matches!(suite, Suite::Pairing | Suite::Trep | Suite::Af | Suite::All) {
        cfg.p.pow(cfg.trunc + 1)?;
    }
    if matches!(suite, Suite::Gns | Suite::Pairing | Suite::Af | Suite::All) {
        let words: usize = (0..=cfg.depth).map(|k| cfg.p.pow(k)).sum::<Result<usize>>()?;
        let cap = padic_cuntz::scalar::DEFAULT_SIZE_CAP;
        if words.saturating_mul(words) > cap {
            return Err(Error::SizeCap {
                p: cfg.p.get(),
                depth: cfg.depth,
                cap,
            });
        }
    }
    Ok(())
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteReport> {
    check_resources(cfg, suite)?;
    let start = Instant::now();
    let mut tally = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    match suite {
        Suite::Cuntz => cuntz(cfg, &mut rng, &mut tally),
        Suite::Gns => gns(cfg, &mut rng, &mut tally),
        Suite::Pairing => pairing(cfg, &mut rng, &mut tally),
        Suite::Trep => trep(cfg, &mut rng, &mut tally),
        Suite::Af => af(cfg, &mut rng, &mut tally),
        Suite::All => {
            cuntz(cfg, &mut rng, &mut tally);
            gns(cfg, &mut rng, &mut tally);
            pairing(cfg, &mut rng, &mut tally);
            trep(cfg, &mut rng, &mut tally);
            af(cfg, &mut rng, &mut tally);
        }
    }
    Ok(SuiteReport {
        suite: suite.name().to_string(),
        p: cfg.p.get(),
        parameters: Parameters {
            depth: cfg.depth,
            trunc: cfg.trunc,
            seed: cfg.seed,
            cases: cfg.cases,
        },
        cases: tally.cases,
        failures: tally.failures,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

/// Cuntz relations, adjointness and isometry on random step functions.
fn cuntz(cfg: &SuiteConfig, rng: &mut ChaCha8Rng, t: &mut Tally) {
    let p = cfg.p;
    for c in 0..cfg.cases {
        let f = random_step_function_upto(p, cfg.depth, rng);
        let g = random_step_function_upto(p, cfg.depth, rng);
        let mut sum = StepFunction::zero(p, f.depth().max(1)).expect("within cap");
        for i in 0..p.get() {
            for j in 0..p.get() {
                let id = format!("cuntz/f{c}/A{i}A{j}*");
                let Some(out) = t.ok(&id, apply_creation(j, &f).and_then(|h| apply_annihilation(i, &h))) else {
                    continue;
                };
                let expected = if i == j { f.clone() } else { f.scale(&Scalar::zero(p)) };
                t.check(&id, out == expected, describe(&expected), describe(&out));
            }
            let back = apply_annihilation(i, &f).and_then(|h| apply_creation(i, &h));
            if let Some(back) = t.ok(format!("cuntz/f{c}/A{i}*A{i}"), back) {
                sum = &sum + &back;
            }
            let lhs = apply_creation(i, &f).and_then(|h| h.l2_inner(&g));
            let rhs = apply_annihilation(i, &g).and_then(|h| f.l2_inner(&h));
            if let (Ok(l), Ok(r)) = (&lhs, &rhs) {
                t.eq(format!("cuntz/f{c}/adjoint{i}"), r, l);
            } else {
                t.check(format!("cuntz/f{c}/adjoint{i}"), false, "success", "error");
            }
            let norm = apply_creation(i, &f).and_then(|h| h.l2_inner(&h));
            let base = f.l2_inner(&f).expect("same prime");
            match norm {
                Ok(n) => t.eq(format!("cuntz/f{c}/isometry{i}"), &base, &n),
                Err(e) => t.check(format!("cuntz/f{c}/isometry{i}"), false, base, e),
            }
        }
        let expected = f.refine(f.depth().max(1)).expect("within cap");
        t.check(
            format!("cuntz/f{c}/sum"),
            sum == expected,
            describe(&expected),
            describe(&sum),
        );
    }
}

/// Vacuum state table, cyclicity of `1` and positivity of the state.
fn gns(cfg: &SuiteConfig, rng: &mut ChaCha8Rng, t: &mut Tally) {
    let p = cfg.p;
    let words: Vec<Word> = Word::all_up_to(p, cfg.depth).collect();
    for i in &words {
        for j in &words {
            let id = format!("gns/I={i}/J={j}");
            if let Some(v) = t.ok(&id, gns_state(p, i, j)) {
                t.eq(&id, &state_closed_form(p, i, j), &v);
            }
        }
    }
    for k in 0..=cfg.depth {
        t.ok(format!("gns/cyclic/k={k}"), cyclicity_basis(p, k));
    }
    let one = StepFunction::one(p);
    for c in 0..cfg.cases {
        let mut v = StepFunction::zero(p, 0).expect("depth 0");
        for _ in 0..3 {
            let i = &words[rand::Rng::random_range(rng, 0..words.len())];
            let j = &words[rand::Rng::random_range(rng, 0..words.len())];
            let coef = random_scalar(p, rng);
            let term = apply_operator_word(&OperatorWord::monomial(i, j), &one).expect("valid word");
            v = &v + &term.scale(&coef);
        }
        let n = v.l2_inner(&v).expect("same prime");
        t.check(format!("gns/positive/{c}"), n.is_nonneg_real(), ">= 0", n);
    }
}

/// Renormalized Gram matrix against the `L²` Gram matrix, the `X_I`
/// expansion, and the cascade condition.
fn pairing(cfg: &SuiteConfig, rng: &mut ChaCha8Rng, t: &mut Tally) {
    let p = cfg.p;
    let words: Vec<Word> = Word::all_up_to(p, cfg.depth).collect();
    let states: Vec<CoherentState> = words
        .iter()
        .map(|w| CoherentState::indicator_state(p, w).expect("within cap"))
        .collect();
    for (wa, a) in words.iter().zip(&states) {
        for (wb, b) in words.iter().zip(&states) {
            let id = format!("pairing/X_{wa}/X_{wb}");
            let Some(series) = t.ok(&id, pairing_series(a, b)) else {
                continue;
            };
            let l2 = phi_map(a).l2_inner(&phi_map(b)).expect("same prime");
            t.eq(&id, &l2, &series.value);
            let bound = wa.len().max(wb.len());
            t.check(
                format!("{id}/stabilized"),
                series.stabilized_at <= bound,
                bound,
                series.stabilized_at,
            );
        }
    }
    let n = cfg.trunc.max(cfg.depth);
    for w in &words {
        t.ok(format!("pairing/expansion/X_{w}/N={n}"), build_x_truncated(p, w, n));
    }
    for c in 0..cfg.cases {
        let a = random_coherent_state(p, cfg.depth, rng);
        let b = random_coherent_state(p, cfg.depth, rng);
        let id = format!("pairing/random{c}");
        if let Some(v) = t.ok(&id, renormalized_pairing(&a, &b)) {
            t.eq(&id, &phi_map(&a).l2_inner(&phi_map(&b)).expect("same prime"), &v);
        }
        for w in Word::all_up_to(p, cfg.depth + 1) {
            let children = (0..p.get()).map(|i| a.coefficient(&w.pushed(i)));
            let sum = padic_cuntz::scalar::sum_in(p, &children.collect::<Vec<_>>());
            t.eq(format!("pairing/cascade{c}/{w}"), &a.coefficient(&w), &sum);
        }
    }
}

fn trep_states(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Vec<(String, CoherentState)> {
    let p = cfg.p;
    let mut out: Vec<(String, CoherentState)> = Word::all_up_to(p, cfg.depth)
        .map(|w| {
            (
                format!("X_{w}"),
                CoherentState::indicator_state(p, &w).expect("within cap"),
            )
        })
        .collect();
    for c in 0..cfg.cases {
        out.push((format!("random{c}"), random_coherent_state(p, cfg.depth, rng)));
    }
    out
}

/// The `T`-representation: Cuntz relations, intertwining with the p-adic
/// representation, word-level cross-checks and adjointness.
fn trep(cfg: &SuiteConfig, rng: &mut ChaCha8Rng, t: &mut Tally) {
    let p = cfg.p;
    let states = trep_states(cfg, rng);
    for (k, (name, s)) in states.iter().enumerate() {
        let mut sum = CoherentState::zero(p);
        for i in 0..p.get() {
            for j in 0..p.get() {
                let id = format!("trep/{name}/T{i}T{j}*");
                let Some(out) = t.ok(&id, t_dagger(j, s).and_then(|x| t_op(i, &x))) else {
                    continue;
                };
                let expected = if i == j { s.clone() } else { CoherentState::zero(p) };
                t.check(
                    &id,
                    out.same_state(&expected),
                    describe(expected.generator()),
                    describe(out.generator()),
                );
            }
            if let Some(x) = t.ok(
                format!("trep/{name}/T{i}*T{i}"),
                t_op(i, s).and_then(|x| t_dagger(i, &x)),
            ) {
                sum = sum.try_add(&x).expect("same prime");
            }
            let id = format!("trep/{name}/intertwine{i}");
            let (td, tt) = (t_dagger(i, s), t_op(i, s));
            let (cd, ca) = (apply_creation(i, &phi_map(s)), apply_annihilation(i, &phi_map(s)));
            let ok = matches!((&td, &cd), (Ok(a), Ok(b)) if phi_map(a) == *b)
                && matches!((&tt, &ca), (Ok(a), Ok(b)) if phi_map(a) == *b);
            t.check(&id, ok, "φ∘T = A∘φ", "mismatch");
            t.ok(
                format!("trep/{name}/words{i}"),
                check_t_operators(i, s, cfg.trunc.max(1)),
            );

            let (_, other) = &states[(k + 1) % states.len()];
            let id = format!("trep/{name}/adjoint{i}");
            let lhs = t_op(i, s).and_then(|x| renormalized_pairing(&x, other));
            let rhs = t_dagger(i, other).and_then(|x| renormalized_pairing(s, &x));
            match (lhs, rhs) {
                (Ok(l), Ok(r)) => t.eq(&id, &r, &l),
                _ => t.check(&id, false, "success", "error"),
            }
        }
        t.check(
            format!("trep/{name}/sum"),
            sum.same_state(s),
            describe(s.generator()),
            describe(sum.generator()),
        );
    }
}

/// Antifock state values and the truncation-boundary residuals.
fn af(cfg: &SuiteConfig, rng: &mut ChaCha8Rng, t: &mut Tally) {
    let p = cfg.p;
    let words: Vec<Word> = Word::all_up_to(p, cfg.depth).collect();
    let mut vacua: BTreeMap<usize, AntifockVacuum> = BTreeMap::new();
    for i in &words {
        for j in &words {
            let n = i.len() + j.len() + DEFAULT_STABILIZATION_MARGIN;
            let id = format!("af/I={i}/J={j}/N={n}");
            let vacuum = match vacua.entry(n) {
                Entry::Occupied(e) => e.into_mut(),
                Entry::Vacant(e) => e.insert(AntifockVacuum::new(p, n).expect("within cap")),
            };
            if let Some(v) = t.ok(&id, vacuum.value(i, j)) {
                t.eq(&id, &state_closed_form(p, i, j), &v);
            }
        }
    }
    let n = cfg.trunc.max(1);
    for c in 0..cfg.cases {
        let s = random_coherent_state(p, cfg.depth, rng);
        let id = format!("af/random{c}/eigen");
        if let Some(r) = t.ok(&id, eigen_residual(&s, n)) {
            let mut expected = padic_cuntz::FockVector::zero(p);
            for w in Word::all_of_len(p, n) {
                expected.add_term(w.clone(), &LambdaPoly::monomial(-s.coefficient(&w), n as u32 + 1));
            }
            t.check(&id, r == expected, "−λ^{N+1}Ψ_J at |J| = N only", "other support");
        }
        let bases = std::iter::once(Word::empty()).chain(Word::all_of_len(p, 1));
        for b in bases {
            let id = format!("af/random{c}/leibnitz/on={b}");
            if let Some(r) = t.ok(&id, leibnitz_residual_on(&s, &b, n)) {
                let below = r.below_length(n);
                t.check(&id, below.is_zero(), "zero below N", "nonzero");
            }
        }
        for i in 0..p.get() {
            let id = format!("af/random{c}/relations{i}");
            if let Some((first, second)) = t.ok(&id, af_relation_residual(i, &s, n)) {
                t.check(
                    &id,
                    first.below_length(n).is_zero() && second.below_length(n).is_zero(),
                    "zero below N",
                    "nonzero",
                );
            }
        }
    }
}
