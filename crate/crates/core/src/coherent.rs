//! Free coherent states of finite type.
//!
//! A state is stored through its generator `g`, a step function on `Z_p`.
//! Its coefficients are disk masses, `Ψ_I = ∫_{D_I} g dμ` where `D_I` reads
//! the word `I` least-significant-digit first, so the cascade
//! `Ψ_I = Σ_i Ψ_{Ii}` holds by additivity of the measure. The Fock-space form
//! is `Ψ = Σ_I λ^{|I|} Ψ_I A†_I Ω`.
//!
//! The renormalized pairing `lim_{λ→√p−0} (1 − λ²/p)⟨Ψ, Φ⟩` is computed from
//! the per-length contributions `c_k` evaluated at `λ = √p`: with `t = λ²/p`
//! the series is `Σ_k t^k c_k`, the `c_k` are eventually constant for finite
//! type states, and the Abel limit of `(1 − t) Σ t^k c_k` is that constant.

use crate::error::{Error, Result};
use crate::fock::FockVector;
use crate::padic::{make_indicator, word_to_center, CenterConvention, StepFunction};
use crate::poly::LambdaPoly;
use crate::rep::{apply_annihilation, apply_creation, gns_closed_form, OpKind, OperatorWord};
use crate::scalar::{Prime, Scalar};
use crate::word::Word;

pub const DEFAULT_TRUNCATION: usize = 8;
pub const DEFAULT_STABILIZATION_MARGIN: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherentState {
    generator: StepFunction,
}

/// Per-length contributions to a renormalized pairing and their limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingSeries {
    pub terms: Vec<Scalar>,
    pub stabilized_at: usize,
    pub value: Scalar,
}

impl CoherentState {
    pub fn from_step(f: StepFunction) -> Self {
        CoherentState { generator: f }
    }

    /// `X_I`, the state whose generator is `p^{|I|}·θ_{|I|}(x − I)` (lsd-first).
    pub fn indicator_state(p: Prime, word: &Word) -> Result<Self> {
        let disk = word_to_center(p, word, CenterConvention::LsdFirst);
        let theta = make_indicator(&disk)?;
        let weight = Scalar::sqrt_p_pow(p, 2 * word.len() as i64);
        Ok(CoherentState::from_step(theta.scale(&weight)))
    }

    pub fn zero(p: Prime) -> Self {
        CoherentState::from_step(StepFunction::constant(p, Scalar::zero(p)))
    }

    pub fn prime(&self) -> Prime {
        self.generator.prime()
    }

    pub fn depth(&self) -> usize {
        self.generator.depth()
    }

    pub fn generator(&self) -> &StepFunction {
        &self.generator
    }

    /// `Ψ_I`, without the `λ^{|I|}` factor.
    pub fn coefficient(&self, word: &Word) -> Scalar {
        let disk = word_to_center(self.prime(), word, CenterConvention::LsdFirst);
        self.generator.integrate_over(&disk)
    }

    pub fn try_add(&self, other: &CoherentState) -> Result<Self> {
        Ok(CoherentState::from_step(self.generator.try_add(&other.generator)?))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        CoherentState::from_step(self.generator.scale(c))
    }

    /// Equality as states (generators compared as functions on `Z_p`).
    pub fn same_state(&self, other: &CoherentState) -> bool {
        self.generator.same_function(&other.generator)
    }

    /// `Σ_{|I| ≤ N} λ^{|I|} Ψ_I A†_I Ω`.
    pub fn to_fock_truncated(&self, n: usize) -> Result<FockVector> {
        let p = self.prime();
        let mut v = FockVector::zero(p).with_truncation(n);
        for k in 0..=n {
            for (idx, mass) in self.generator.disk_masses(k)?.iter().enumerate() {
                if !mass.is_zero() {
                    let w = Word::from_coset_index(p, idx, k);
                    v.add_term(w, &LambdaPoly::monomial(mass.clone(), k as u32));
                }
            }
        }
        Ok(v)
    }
}

pub fn coherent_from_step(f: StepFunction) -> CoherentState {
    CoherentState::from_step(f)
}

pub fn phi_map(s: &CoherentState) -> StepFunction {
    s.generator.clone()
}

pub fn phi_inverse(f: &StepFunction) -> CoherentState {
    CoherentState::from_step(f.clone())
}

/// `λ^{|I|} A†_I Ω` built by creators, the earliest letter first.
fn creator_chain(p: Prime, word: &Word, n: usize) -> Result<FockVector> {
    let mut v = FockVector::vacuum(p).with_truncation(n);
    for &i in word.letters() {
        v = v.fock_create(i)?;
    }
    v.shift_lambda(word.len() as i64)
}

/// Expands
///
/// ```text
/// X_I = Σ_{k≥0} λ^k ((1/p) Σ_i A†_i)^k λ^{|I|} A†_I Ω
///     + Σ_{l=1}^{|I|} λ^{−l} (Σ_i A_i)^l λ^{|I|} A†_I Ω
/// ```
///
/// through word length `n` with Fock-space operators, then checks every
/// coefficient against the generator `p^{|I|}θ_{|I|}(x − I)`.
pub fn build_x_truncated(p: Prime, word: &Word, n: usize) -> Result<FockVector> {
    if n < word.len() {
        return Err(Error::TruncationTooSmall {
            got: n,
            needed: word.len(),
        });
    }
    let base = creator_chain(p, word, n)?;
    let step = LambdaPoly::monomial(Scalar::from_ratio(p, 1, p.get() as i64), 1);

    let mut total = base.clone();
    let mut cur = base.clone();
    for _ in word.len()..n {
        cur = cur.sum_create().mul_poly(&step);
        total = total.try_add(&cur)?;
    }
    let mut cur = base;
    for l in 1..=word.len() {
        cur = cur.sum_annihilate();
        total = total.try_add(&cur.shift_lambda(-(l as i64))?)?;
    }

    let expected = CoherentState::indicator_state(p, word)?.to_fock_truncated(n)?;
    if total != expected {
        let bad = Word::all_up_to(p, n)
            .find(|w| total.coeff(w) != expected.coeff(w))
            .unwrap_or_default();
        return Err(Error::mismatch(
            format!("X_{word} expansion at word {bad:?}"),
            expected.coeff(&bad),
            total.coeff(&bad),
        ));
    }
    Ok(total)
}

/// `(Σ_i A_i − λ) Ψ_N` for the truncation `Ψ_N`; nonzero only at length `N`.
pub fn eigen_residual(s: &CoherentState, n: usize) -> Result<FockVector> {
    let v = s.to_fock_truncated(n)?;
    v.sum_annihilate().try_sub(&v.shift_lambda(1)?)
}

fn stabilization_start(terms: &[Scalar]) -> usize {
    let Some(last) = terms.last() else { return 0 };
    terms.iter().rposition(|t| t != last).map_or(0, |k| k + 1)
}

/// `c_k = p^k Σ_{|I|=k} conj(Ψᵃ_I) Ψᵇ_I` for `k` through
/// `max(depth) + margin`, and its stabilized value.
pub fn pairing_series(a: &CoherentState, b: &CoherentState) -> Result<PairingSeries> {
    let p = a.prime();
    if b.prime() != p {
        return Err(Error::PrimeMismatch {
            left: p.get(),
            right: b.prime().get(),
        });
    }
    let bound = a.depth().max(b.depth());
    let last = bound + DEFAULT_STABILIZATION_MARGIN;
    let mut terms = Vec::with_capacity(last + 1);
    for k in 0..=last {
        let (ma, mb) = (a.generator.disk_masses(k)?, b.generator.disk_masses(k)?);
        let mut s = Scalar::zero(p);
        for (x, y) in ma.iter().zip(&mb) {
            if !x.is_zero() && !y.is_zero() {
                s += &(&x.conj() * y);
            }
        }
        let pk = Scalar::sqrt_p_pow(p, 2 * k as i64);
        terms.push(&s * &pk);
    }
    let k0 = stabilization_start(&terms);
    if k0 > bound {
        return Err(Error::NotStabilized {
            computed: last,
            needed: k0 + DEFAULT_STABILIZATION_MARGIN,
        });
    }
    let value = terms[last].clone();
    Ok(PairingSeries {
        terms,
        stabilized_at: k0,
        value,
    })
}

/// `lim_{λ→√p−0} (1 − λ²/p) ⟨a, b⟩`.
pub fn renormalized_pairing(a: &CoherentState, b: &CoherentState) -> Result<Scalar> {
    Ok(pairing_series(a, b)?.value)
}

fn check_letter(p: Prime, i: u32) -> Result<()> {
    if i >= p.get() {
        return Err(Error::InvalidLetter { letter: i, p: p.get() });
    }
    Ok(())
}

/// `T†_i` through the generator: `φ(T†_i s) = A†_i φ(s)`.
pub fn t_dagger(i: u32, s: &CoherentState) -> Result<CoherentState> {
    Ok(CoherentState::from_step(apply_creation(i, &s.generator)?))
}

/// `T_i` through the generator: `φ(T_i s) = A_i φ(s)`.
pub fn t_op(i: u32, s: &CoherentState) -> Result<CoherentState> {
    Ok(CoherentState::from_step(apply_annihilation(i, &s.generator)?))
}

/// `T†_i Φ = p^{−1/2} (λ A†_Φ A†_i + Φ_∅) Ω` on the truncation `Φ_N`;
/// `A†_Φ A†_i Ω` prepends `i` as the innermost letter.
pub fn t_dagger_words(i: u32, s: &CoherentState, n: usize) -> Result<FockVector> {
    let p = s.prime();
    check_letter(p, i)?;
    let inv = Scalar::sqrt_p_pow(p, -1);
    let v = s.to_fock_truncated(n)?;
    let shifted = v.af_create(i)?.shift_lambda(1)?;
    let vac = FockVector::vacuum(p).scale(&s.coefficient(&Word::empty()));
    Ok(shifted.try_add(&vac)?.scale(&inv))
}

/// `T_i Φ = √p λ^{−1} (A_i A†^{op}_Φ)^{op} Ω` on `Φ_N`: words starting with
/// `i` lose that letter. Valid through length `N − 1`.
pub fn t_op_words(i: u32, s: &CoherentState, n: usize) -> Result<FockVector> {
    let p = s.prime();
    check_letter(p, i)?;
    let v = s.to_fock_truncated(n)?;
    Ok(v.af_annihilate(i)?.shift_lambda(-1)?.scale(&Scalar::sqrt_p(p)))
}

/// Compares the generator-level `T†_i`, `T_i` with their word-level forms on
/// all words the truncation determines.
pub fn check_t_operators(i: u32, s: &CoherentState, n: usize) -> Result<()> {
    if n < 1 {
        return Err(Error::TruncationTooSmall { got: n, needed: 1 });
    }
    let by_gen = t_dagger(i, s)?.to_fock_truncated(n)?;
    let by_words = t_dagger_words(i, s, n)?;
    if by_gen != by_words {
        return Err(Error::mismatch(
            format!("T†_{i} word level"),
            "generator level",
            "differs",
        ));
    }
    let by_gen = t_op(i, s)?.to_fock_truncated(n - 1)?;
    let by_words = t_op_words(i, s, n)?;
    if by_gen != by_words {
        return Err(Error::mismatch(
            format!("T_{i} word level"),
            "generator level",
            "differs",
        ));
    }
    Ok(())
}

/// `(Σ_i A_i A†_Φ − λ A†_Φ − Φ_∅ Σ_i A_i) b` with `A†_Φ` the truncation at
/// length `N` and `b` a basis word.
pub fn leibnitz_residual_on(s: &CoherentState, base: &Word, n: usize) -> Result<FockVector> {
    let p = s.prime();
    let b = FockVector::basis(p, base.clone(), LambdaPoly::constant(Scalar::one(p))).with_truncation(n);
    let phi = FockVector::right_product(&b, &s.to_fock_truncated(n)?)?;
    let lhs = phi.sum_annihilate();
    let rhs = phi
        .shift_lambda(1)?
        .try_add(&b.sum_annihilate().scale(&s.coefficient(&Word::empty())))?;
    lhs.try_sub(&rhs)
}

/// Leibnitz residual on the vacuum, where the `Φ_∅ Σ A_i` term vanishes.
pub fn leibnitz_residual(s: &CoherentState, n: usize) -> Result<FockVector> {
    leibnitz_residual_on(s, &Word::empty(), n)
}

/// The two displayed antifock relations evaluated on `Φ_N`:
///
/// ```text
/// T†_i Φ − (λ/√p) AF(A†_i) Φ − p^{−1/2} Φ_∅ Ω
/// λ T_i Φ − √p AF(A_i) Φ
/// ```
pub fn af_relation_residual(i: u32, s: &CoherentState, n: usize) -> Result<(FockVector, FockVector)> {
    let p = s.prime();
    check_letter(p, i)?;
    if n < 1 {
        return Err(Error::TruncationTooSmall { got: n, needed: 1 });
    }
    let inv = Scalar::sqrt_p_pow(p, -1);
    let v = s.to_fock_truncated(n)?;

    let first = t_dagger(i, s)?
        .to_fock_truncated(n)?
        .try_sub(&v.af_create(i)?.shift_lambda(1)?.scale(&inv))?
        .try_sub(&FockVector::vacuum(p).scale(&(&s.coefficient(&Word::empty()) * &inv)))?;

    let second = t_op(i, s)?
        .to_fock_truncated(n)?
        .shift_lambda(1)?
        .try_sub(&v.af_annihilate(i)?.scale(&Scalar::sqrt_p(p)))?;
    Ok((first, second))
}

/// `AF(X) v`: the word `X` acting by right multiplication, last factor first.
pub fn af_apply(x: &OperatorWord, v: &FockVector) -> Result<FockVector> {
    let p = v.prime();
    let mut acc: Option<FockVector> = None;
    // runs of equal kind collapse into one prefix operation
    for run in x.factors().chunk_by(|a, b| a.kind == b.kind).rev() {
        let cur = acc.as_ref().unwrap_or(v);
        let letters: Vec<u32> = run.iter().map(|f| f.letter).collect();
        acc = Some(match run[0].kind {
            OpKind::Create => cur.af_prepend(&Word::new(p, letters)?)?,
            OpKind::Annihilate => {
                let mut strip = letters;
                strip.reverse();
                cur.af_strip_prefix(&Word::new(p, strip)?)?
            }
        });
    }
    Ok(acc.unwrap_or_else(|| v.clone()))
}

/// The truncated vacuum `1̂ = X_∅` at a fixed truncation, reusable across
/// many antifock state evaluations.
#[derive(Debug, Clone)]
pub struct AntifockVacuum {
    n: usize,
    one_hat: FockVector,
}

impl AntifockVacuum {
    pub fn new(p: Prime, n: usize) -> Result<Self> {
        let one_hat = CoherentState::indicator_state(p, &Word::empty())?.to_fock_truncated(n)?;
        Ok(AntifockVacuum { n, one_hat })
    }

    pub fn truncation(&self) -> usize {
        self.n
    }

    /// `(1̂, AF(A†_I A_J) 1̂)` as a stabilized per-length series.
    pub fn series(&self, creators: &Word, annihilators: &Word, margin: usize) -> Result<PairingSeries> {
        let (p, n) = (self.one_hat.prime(), self.n);
        let needed = creators.len() + annihilators.len() + margin;
        if n < needed {
            return Err(Error::TruncationTooSmall { got: n, needed });
        }
        let x = OperatorWord::monomial(creators, annihilators);
        let v = af_apply(&x, &self.one_hat)?;
        // Output words of length k come from input words of length k − |I| + |J|,
        // which the truncation keeps only up to n.
        let valid = (n + creators.len()).saturating_sub(annihilators.len()).min(n);
        let by_len = self.one_hat.inner_by_length(&v)?;
        let terms: Vec<Scalar> = (0..=valid)
            .map(|k| by_len.get(k).map_or_else(|| Scalar::zero(p), |t| t.eval_sqrt_p(p)))
            .collect();
        let k0 = stabilization_start(&terms);
        if valid - k0 < margin {
            return Err(Error::NotStabilized {
                computed: valid,
                needed: n + margin - (valid - k0),
            });
        }
        let value = terms[valid].clone();
        Ok(PairingSeries {
            terms,
            stabilized_at: k0,
            value,
        })
    }

    pub fn value(&self, creators: &Word, annihilators: &Word) -> Result<Scalar> {
        Ok(self.series(creators, annihilators, DEFAULT_STABILIZATION_MARGIN)?.value)
    }
}

/// `(1̂, AF(A†_I A_J) 1̂)` as a stabilized per-length series, `1̂ = X_∅`.
pub fn af_state_series(
    p: Prime,
    creators: &Word,
    annihilators: &Word,
    n: usize,
    margin: usize,
) -> Result<PairingSeries> {
    let needed = creators.len() + annihilators.len() + margin;
    if n < needed {
        return Err(Error::TruncationTooSmall { got: n, needed });
    }
    AntifockVacuum::new(p, n)?.series(creators, annihilators, margin)
}

/// `⟨A†_I A_J⟩` computed in the antifock picture.
pub fn af_state_value(p: Prime, creators: &Word, annihilators: &Word, n: usize) -> Result<Scalar> {
    Ok(af_state_series(p, creators, annihilators, n, DEFAULT_STABILIZATION_MARGIN)?.value)
}

/// The closed form `p^{−(|I|+|J|)/2}` both state computations must reproduce.
pub fn state_closed_form(p: Prime, creators: &Word, annihilators: &Word) -> Scalar {
    gns_closed_form(p, creators.len() + annihilators.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::DiskAddress;
    use crate::scalar::rational;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn w(pr: Prime, s: &str) -> Word {
        Word::parse(pr, s).unwrap()
    }

    fn x(pr: Prime, s: &str) -> CoherentState {
        CoherentState::indicator_state(pr, &w(pr, s)).unwrap()
    }

    fn lam(c: Scalar, e: u32) -> LambdaPoly {
        LambdaPoly::monomial(c, e)
    }

    #[test]
    fn from_step_examples() {
        let p2 = p(2);
        let one = coherent_from_step(StepFunction::one(p2));
        for k in 0..4 {
            for word in Word::all_of_len(p2, k) {
                assert_eq!(one.coefficient(&word), Scalar::from_ratio(p2, 1, 1 << k));
            }
        }
        assert_eq!(one, x(p2, ""));
        let theta = make_indicator(&DiskAddress::new(p2, vec![1]).unwrap()).unwrap();
        assert_eq!(coherent_from_step(theta.scale(&Scalar::from_int(p2, 2))), x(p2, "1"));
        let zero = CoherentState::zero(p2);
        assert!(Word::all_up_to(p2, 3).all(|word| zero.coefficient(&word).is_zero()));
    }

    #[test]
    fn coefficient_examples() {
        let p2 = p(2);
        assert_eq!(x(p2, "0").coefficient(&Word::empty()), Scalar::one(p2));
        assert!(x(p2, "0").coefficient(&w(p2, "1")).is_zero());
        assert_eq!(x(p2, "0").coefficient(&w(p2, "0")), Scalar::one(p2));
        assert_eq!(x(p2, "0").coefficient(&w(p2, "01")), Scalar::from_ratio(p2, 1, 2));
    }

    #[test]
    fn build_x_examples() {
        let p2 = p(2);
        let v = build_x_truncated(p2, &Word::empty(), 2).unwrap();
        for word in Word::all_up_to(p2, 2) {
            let k = word.len() as u32;
            assert_eq!(v.coeff(&word), lam(Scalar::from_ratio(p2, 1, 1 << k), k));
        }
        let v = build_x_truncated(p2, &w(p2, "0"), 4).unwrap();
        assert_eq!(v.coeff(&Word::empty()), LambdaPoly::constant(Scalar::one(p2)));
        assert_eq!(v.coeff(&w(p2, "01")), lam(Scalar::from_ratio(p2, 1, 2), 2));
        assert_eq!(
            build_x_truncated(p2, &w(p2, "011"), 2),
            Err(Error::TruncationTooSmall { got: 2, needed: 3 })
        );
    }

    #[test]
    fn to_fock_examples() {
        let p2 = p(2);
        assert!(CoherentState::zero(p2).to_fock_truncated(3).unwrap().is_zero());
        let v = x(p2, "").to_fock_truncated(1).unwrap();
        let mut expected = FockVector::vacuum(p2);
        for l in ["0", "1"] {
            expected.add_term(w(p2, l), &lam(Scalar::from_ratio(p2, 1, 2), 1));
        }
        assert_eq!(v, expected);
    }

    #[test]
    fn to_fock_is_linear() {
        let p3 = p(3);
        let (a, b) = (x(p3, "21"), x(p3, "0"));
        let (ca, cb) = (Scalar::from_ratio(p3, 2, 3), Scalar::imag_unit(p3));
        let lhs = a
            .scale(&ca)
            .try_add(&b.scale(&cb))
            .unwrap()
            .to_fock_truncated(4)
            .unwrap();
        let rhs = a
            .to_fock_truncated(4)
            .unwrap()
            .scale(&ca)
            .try_add(&b.to_fock_truncated(4).unwrap().scale(&cb))
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn eigen_residual_examples() {
        let p2 = p(2);
        let r = eigen_residual(&x(p2, ""), 3).unwrap();
        assert_eq!(r.support_lengths(), Some((3, 3)));
        for word in Word::all_of_len(p2, 3) {
            assert_eq!(r.coeff(&word), lam(Scalar::from_ratio(p2, -1, 8), 4));
        }
        assert!(eigen_residual(&CoherentState::zero(p2), 3).unwrap().is_zero());
    }

    #[test]
    fn pairing_examples() {
        let p2 = p(2);
        let v = |a: &str, b: &str| renormalized_pairing(&x(p2, a), &x(p2, b)).unwrap();
        assert_eq!(v("", ""), Scalar::one(p2));
        assert_eq!(v("0", "0"), Scalar::from_int(p2, 2));
        assert!(v("0", "1").is_zero());
        assert_eq!(v("01", "0"), Scalar::from_int(p2, 2));
        let s = pairing_series(&x(p2, "01"), &x(p2, "0")).unwrap();
        assert!(s.stabilized_at <= 2);
        assert!(s.terms[s.stabilized_at..].iter().all(|t| t == &s.value));
    }

    #[test]
    fn phi_examples() {
        let p2 = p(2);
        let theta = make_indicator(&DiskAddress::new(p2, vec![1]).unwrap()).unwrap();
        assert_eq!(phi_map(&x(p2, "1")), theta.scale(&Scalar::from_int(p2, 2)));
        assert_eq!(phi_map(&x(p2, "")), StepFunction::one(p2));
        let s = x(p2, "10");
        assert_eq!(phi_inverse(&phi_map(&s)), s);
    }

    #[test]
    fn t_operator_examples() {
        let p2 = p(2);
        let inv = Scalar::sqrt_p_pow(p2, -1);
        let s2 = Scalar::sqrt_p(p2);
        assert!(t_dagger(0, &x(p2, "")).unwrap().same_state(&x(p2, "0").scale(&inv)));
        assert!(t_dagger(1, &x(p2, "0")).unwrap().same_state(&x(p2, "10").scale(&inv)));
        // T_i X_∅ = p^{-1/2} X_∅; a factor √p here would break Σ T†_i T_i = 1.
        assert!(t_op(0, &x(p2, "")).unwrap().same_state(&x(p2, "").scale(&inv)));
        assert!(t_op(1, &x(p2, "0")).unwrap().generator().is_zero());
        assert!(t_op(0, &x(p2, "01")).unwrap().same_state(&x(p2, "1").scale(&s2)));
        let wrong = (0..2)
            .map(|i| t_dagger(i, &x(p2, "").scale(&s2)).unwrap())
            .reduce(|a, b| a.try_add(&b).unwrap())
            .unwrap();
        assert!(!wrong.same_state(&x(p2, "")));
        assert!(t_dagger(2, &x(p2, "")).is_err());
        assert!(t_op(2, &x(p2, "")).is_err());
    }

    #[test]
    fn t_coefficient_contracts() {
        let p3 = p(3);
        let s = x(p3, "12")
            .scale(&Scalar::from_ratio(p3, 5, 2))
            .try_add(&x(p3, "2"))
            .unwrap();
        for i in 0..3 {
            let td = t_dagger(i, &s).unwrap();
            let t = t_op(i, &s).unwrap();
            for word in Word::all_up_to(p3, 3) {
                assert_eq!(
                    t.coefficient(&word),
                    &s.coefficient(&word.prepended(i)) * &Scalar::sqrt_p(p3)
                );
                assert_eq!(
                    td.coefficient(&word.prepended(i)),
                    &s.coefficient(&word) * &Scalar::sqrt_p_pow(p3, -1)
                );
            }
            check_t_operators(i, &s, 5).unwrap();
        }
    }

    #[test]
    fn leibnitz_examples() {
        let p2 = p(2);
        let r = leibnitz_residual(&x(p2, ""), 3).unwrap();
        assert_eq!(r.support_lengths(), Some((3, 3)));
        assert!(leibnitz_residual(&CoherentState::zero(p2), 3).unwrap().is_zero());
        let r = leibnitz_residual_on(&x(p2, "0"), &w(p2, "1"), 4).unwrap();
        assert_eq!(r.support_lengths().map(|s| s.0), Some(4));
        assert_eq!(r.support_lengths().map(|s| s.1), Some(4));
    }

    #[test]
    fn af_state_examples() {
        let p2 = p(2);
        let e = Word::empty();
        assert_eq!(af_state_value(p2, &e, &e, 3).unwrap(), Scalar::one(p2));
        assert_eq!(
            af_state_value(p2, &w(p2, "0"), &e, 4).unwrap(),
            Scalar::sqrt_p(p2).scale(&rational(1, 2))
        );
        assert_eq!(
            af_state_value(p2, &w(p2, "0"), &w(p2, "1"), 5).unwrap(),
            Scalar::from_ratio(p2, 1, 2)
        );
        assert_eq!(
            af_state_value(p2, &w(p2, "0"), &w(p2, "1"), 4),
            Err(Error::TruncationTooSmall { got: 4, needed: 5 })
        );
    }

    #[test]
    fn af_relation_examples() {
        let p2 = p(2);
        let (first, _) = af_relation_residual(0, &x(p2, ""), 4).unwrap();
        assert!(first.below_length(4).is_zero());
        let (a, b) = af_relation_residual(0, &CoherentState::zero(p2), 4).unwrap();
        assert!(a.is_zero() && b.is_zero());
        let (_, second) = af_relation_residual(1, &x(p2, "1"), 4).unwrap();
        assert!(second.below_length(3).is_zero());
        assert!(second.below_length(4).is_zero());
    }
}
