//! Polynomials in the formal real parameter `λ` with [`Scalar`] coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Prime, Scalar};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct LambdaPoly {
    // exponent -> nonzero coefficient
    coeffs: BTreeMap<u32, Scalar>,
}

impl LambdaPoly {
    pub fn zero() -> Self {
        LambdaPoly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, 0)
    }

    /// `c·λ^e`.
    pub fn monomial(c: Scalar, e: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        LambdaPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: u32) -> Option<&Scalar> {
        self.coeffs.get(&e)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Scalar)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    pub fn add_term(&mut self, e: u32, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&e) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.coeffs.remove(&e);
                }
            }
            None => {
                self.coeffs.insert(e, c.clone());
            }
        }
    }

    pub fn add_assign(&mut self, other: &LambdaPoly) {
        for (e, c) in other.terms() {
            self.add_term(e, c);
        }
    }

    pub fn sub_assign(&mut self, other: &LambdaPoly) {
        for (e, c) in other.terms() {
            self.add_term(e, &-c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = LambdaPoly::zero();
        for (e, x) in self.terms() {
            out.add_term(e, &(x * c));
        }
        out
    }

    pub fn mul(&self, other: &LambdaPoly) -> Self {
        let mut out = LambdaPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }

    /// Multiplication by `λ^shift`; a negative shift divides and must stay a
    /// polynomial.
    pub fn shift(&self, shift: i64) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for (&e, c) in &self.coeffs {
            let ne = e as i64 + shift;
            if ne < 0 {
                return Err(Error::mismatch("λ-shift", "nonnegative exponent", format!("λ^{ne}")));
            }
            coeffs.insert(ne as u32, c.clone());
        }
        Ok(LambdaPoly { coeffs })
    }

    /// Conjugates coefficients; `λ` is real.
    pub fn conj(&self) -> Self {
        LambdaPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, c.conj())).collect(),
        }
    }

    /// Exact value at `λ = √p`.
    pub fn eval_sqrt_p(&self, p: Prime) -> Scalar {
        let mut acc = Scalar::zero(p);
        for (e, c) in self.terms() {
            acc += &(c * &Scalar::sqrt_p_pow(p, e as i64));
        }
        acc
    }
}

impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(e, c)| match e {
                0 => format!("({c})"),
                1 => format!("({c})λ"),
                _ => format!("({c})λ^{e}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LambdaPoly[{self}]")
    }
}
