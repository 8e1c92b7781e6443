//! Random exact inputs for the randomized verification suites.

use rand::Rng;

use crate::coherent::CoherentState;
use crate::padic::StepFunction;
use crate::scalar::{rational, Prime, Rational, Scalar};

pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    rational(rng.random_range(-12..=12), rng.random_range(1..=9))
}

/// A random scalar; about a third of the draws are zero so that supports
/// stay sparse, and the `√p` and imaginary parts are each present half the
/// time.
pub fn random_scalar<R: Rng + ?Sized>(p: Prime, rng: &mut R) -> Scalar {
    if rng.random_bool(1.0 / 3.0) {
        return Scalar::zero(p);
    }
    let with_surd = rng.random_bool(0.5);
    let with_imag = rng.random_bool(0.5);
    let mut part = |on: bool| {
        if on {
            random_rational(rng)
        } else {
            rational(0, 1)
        }
    };
    let re_a = part(true);
    let re_b = part(with_surd);
    let im_a = part(with_imag);
    let im_b = part(with_surd && with_imag);
    Scalar::from_parts(p, re_a, re_b, im_a, im_b)
}

/// Rational-valued variant, for criteria stated over rational data.
pub fn random_rational_scalar<R: Rng + ?Sized>(p: Prime, rng: &mut R) -> Scalar {
    if rng.random_bool(1.0 / 3.0) {
        return Scalar::zero(p);
    }
    Scalar::from_rational(p, random_rational(rng))
}

pub fn random_step_function<R: Rng + ?Sized>(p: Prime, depth: usize, rng: &mut R) -> StepFunction {
    let n = (p.get() as usize).pow(depth as u32);
    let values = (0..n).map(|_| random_scalar(p, rng)).collect();
    StepFunction::from_values(p, depth, values).expect("length matches p^depth")
}

/// A random step function with depth drawn uniformly from `0..=max_depth`.
pub fn random_step_function_upto<R: Rng + ?Sized>(p: Prime, max_depth: usize, rng: &mut R) -> StepFunction {
    let depth = rng.random_range(0..=max_depth);
    random_step_function(p, depth, rng)
}

pub fn random_coherent_state<R: Rng + ?Sized>(p: Prime, max_depth: usize, rng: &mut R) -> CoherentState {
    CoherentState::from_step(random_step_function_upto(p, max_depth, rng))
}
