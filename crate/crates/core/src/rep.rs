//! The Cuntz algebra acting on step functions over `Z_p`:
//!
//! ```text
//! A†_i ξ(x) = √p · θ₁(x − i) · ξ([x/p])
//! A_i  ξ(x) = ξ(i + px) / √p
//! ```
//!
//! plus the vacuum state `⟨X⟩ = ∫ X·1 dμ` and the cyclicity of `1`.

use std::fmt;

use crate::error::{Error, Result};
use crate::padic::{make_indicator, word_to_center, CenterConvention, StepFunction};
use crate::scalar::{Prime, Scalar};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpKind {
    Create,
    Annihilate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Factor {
    pub kind: OpKind,
    pub letter: u32,
}

/// A product of ladder operators, stored leftmost (outermost) first; the
/// last factor acts first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct OperatorWord {
    factors: Vec<Factor>,
}

impl OperatorWord {
    pub fn new(p: Prime, factors: Vec<Factor>) -> Result<Self> {
        if let Some(f) = factors.iter().find(|f| f.letter >= p.get()) {
            return Err(Error::InvalidLetter {
                letter: f.letter,
                p: p.get(),
            });
        }
        Ok(OperatorWord { factors })
    }

    pub fn identity() -> Self {
        OperatorWord::default()
    }

    /// `A†_I = A†_{i_{k−1}} ⋯ A†_{i₀}`.
    pub fn creators(word: &Word) -> Self {
        let factors = word
            .letters()
            .iter()
            .rev()
            .map(|&letter| Factor {
                kind: OpKind::Create,
                letter,
            })
            .collect();
        OperatorWord { factors }
    }

    /// `A_J = (A†_J)^* = A_{j₀} ⋯ A_{j_{m−1}}`.
    pub fn annihilators(word: &Word) -> Self {
        let factors = word
            .letters()
            .iter()
            .map(|&letter| Factor {
                kind: OpKind::Annihilate,
                letter,
            })
            .collect();
        OperatorWord { factors }
    }

    /// The normally ordered monomial `A†_I A_J`.
    pub fn monomial(creators: &Word, annihilators: &Word) -> Self {
        Self::creators(creators).then(&Self::annihilators(annihilators))
    }

    /// `self · other`: `other` acts first.
    pub fn then(&self, other: &OperatorWord) -> Self {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        OperatorWord { factors }
    }

    /// The adjoint word: reversed, with creators and annihilators swapped.
    pub fn adjoint(&self) -> Self {
        let factors = self
            .factors
            .iter()
            .rev()
            .map(|f| Factor {
                kind: match f.kind {
                    OpKind::Create => OpKind::Annihilate,
                    OpKind::Annihilate => OpKind::Create,
                },
                letter: f.letter,
            })
            .collect();
        OperatorWord { factors }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Parses `"a1* a0* a1"` (= `A†₁A†₀A₁`): whitespace-separated factors,
    /// `a<i>*` a creator and `a<i>` an annihilator.
    pub fn parse(p: Prime, s: &str) -> Result<Self> {
        let mut factors = Vec::new();
        let mut pos = 0;
        for token in s.split_whitespace() {
            let start = pos + s[pos..].find(token).unwrap_or(0);
            pos = start + token.len();
            let err = |msg: String| Error::Parse { pos: start, msg };
            let body = token
                .strip_prefix('a')
                .ok_or_else(|| err(format!("factor {token:?} must start with 'a'")))?;
            let (digits, kind) = match body.strip_suffix('*') {
                Some(d) => (d, OpKind::Create),
                None => (body, OpKind::Annihilate),
            };
            let letter: u32 = digits
                .parse()
                .map_err(|_| err(format!("bad letter index in {token:?}")))?;
            if letter >= p.get() {
                return Err(Error::InvalidDigit {
                    digit: letter,
                    p: p.get(),
                });
            }
            factors.push(Factor { kind, letter });
        }
        Ok(OperatorWord { factors })
    }
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|x| match x.kind {
                OpKind::Create => format!("a{}*", x.letter),
                OpKind::Annihilate => format!("a{}", x.letter),
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

fn check_letter(p: Prime, i: u32) -> Result<()> {
    if i >= p.get() {
        return Err(Error::InvalidLetter { letter: i, p: p.get() });
    }
    Ok(())
}

/// `A†_i f`: depth grows by one; value at `(d₀, d₁, …, d_k)` is
/// `√p·δ_{d₀ i}·f(d₁, …, d_k)`.
pub fn apply_creation(i: u32, f: &StepFunction) -> Result<StepFunction> {
    let p = f.prime();
    check_letter(p, i)?;
    let n = p.pow(f.depth() + 1)?;
    let pu = p.get() as usize;
    let mut values = vec![Scalar::zero(p); n];
    for (m, v) in f.values().iter().enumerate() {
        if !v.is_zero() {
            values[i as usize + pu * m] = v.mul_sqrt_p();
        }
    }
    Ok(StepFunction::from_values_unchecked(p, f.depth() + 1, values))
}

/// `A_i f`: value at `(d₀, …, d_{k−2})` is `f(i, d₀, …, d_{k−2}) / √p`;
/// constants stay at depth 0.
pub fn apply_annihilation(i: u32, f: &StepFunction) -> Result<StepFunction> {
    let p = f.prime();
    check_letter(p, i)?;
    if f.depth() == 0 {
        return Ok(f.scale(&Scalar::sqrt_p_pow(p, -1)));
    }
    let pu = p.get() as usize;
    let values = (0..f.values().len() / pu)
        .map(|m| f.values()[i as usize + pu * m].div_sqrt_p())
        .collect();
    Ok(StepFunction::from_values_unchecked(p, f.depth() - 1, values))
}

pub fn apply_operator_word(w: &OperatorWord, f: &StepFunction) -> Result<StepFunction> {
    w.factors.iter().rev().try_fold(f.clone(), |acc, x| match x.kind {
        OpKind::Create => apply_creation(x.letter, &acc),
        OpKind::Annihilate => apply_annihilation(x.letter, &acc),
    })
}

/// `⟨A†_I A_J⟩ = ∫ A†_I A_J 1 dμ`, checked against the closed form
/// `p^{−(|I|+|J|)/2}`.
pub fn gns_state(p: Prime, creators: &Word, annihilators: &Word) -> Result<Scalar> {
    let x = OperatorWord::monomial(creators, annihilators);
    let integral = apply_operator_word(&x, &StepFunction::one(p))?.integrate();
    let closed = gns_closed_form(p, creators.len() + annihilators.len());
    if integral != closed {
        return Err(Error::mismatch(format!("state of {x}"), &closed, &integral));
    }
    Ok(integral)
}

/// `p^{−m/2}`.
pub fn gns_closed_form(p: Prime, m: usize) -> Scalar {
    Scalar::sqrt_p_pow(p, -(m as i64))
}

/// `{A†_I 1 : |I| = k}` in lexicographic order of `I`. Each element is checked
/// to be `p^{k/2}` times the indicator of the msd-first disk of `I`, and the
/// disks are checked to tile `Z_p`.
pub fn cyclicity_basis(p: Prime, k: usize) -> Result<Vec<StepFunction>> {
    let count = p.pow(k)?;
    let scale = Scalar::sqrt_p_pow(p, k as i64);
    let mut seen = vec![false; count];
    let mut out = Vec::with_capacity(count);
    for word in Word::all_of_len(p, k) {
        let f = apply_operator_word(&OperatorWord::creators(&word), &StepFunction::one(p))?;
        let disk = word_to_center(p, &word, CenterConvention::MsdFirst);
        let expected = make_indicator(&disk)?.scale(&scale);
        if f != expected {
            return Err(Error::mismatch(
                format!("A†_{word} 1"),
                format!("{scale} × indicator of coset {}", disk.center()),
                "a different function",
            ));
        }
        if std::mem::replace(&mut seen[disk.center()], true) {
            return Err(Error::mismatch(
                "cyclicity",
                "distinct disks",
                format!("coset {} hit twice", disk.center()),
            ));
        }
        out.push(f);
    }
    Ok(out)
}
