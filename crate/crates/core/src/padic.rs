//! Locally constant functions on `Z_p`, Haar integration and the `L²` pairing.
//!
//! A [`StepFunction`] of depth `k` stores one value per coset `n + p^k Z_p`,
//! `0 <= n < p^k`. The coset index `n = d₀ + d₁p + … + d_{k−1}p^{k−1}` keeps the
//! least significant p-adic digit first, so the children of coset `n` at depth
//! `k + 1` are `n + m·p^k` for `m in 0..p`, and the substitution `x ↦ i + px`
//! is the index map `n ↦ i + p·n`.

use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::{sum_in, Prime, Rational, Scalar, DEFAULT_SIZE_CAP};
use crate::word::Word;

/// How a multi-index is read as the center of a p-adic disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CenterConvention {
    /// `i₀` is the least significant digit: center `Σ i_j p^j`.
    LsdFirst,
    /// `i₀` is the most significant digit: center `Σ i_j p^{k−1−j}`.
    MsdFirst,
}

/// The disk `D(c, p^{−k})` given by the `k` p-adic digits of `c`, least
/// significant first. The empty address is all of `Z_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiskAddress {
    p: Prime,
    digits: Vec<u32>,
}

impl DiskAddress {
    pub fn new(p: Prime, digits: Vec<u32>) -> Result<Self> {
        if let Some(&digit) = digits.iter().find(|&&d| d >= p.get()) {
            return Err(Error::InvalidDigit { digit, p: p.get() });
        }
        Ok(DiskAddress { p, digits })
    }

    pub fn whole(p: Prime) -> Self {
        DiskAddress { p, digits: vec![] }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn depth(&self) -> usize {
        self.digits.len()
    }

    /// Coset index of the disk at its own depth (also the integer center).
    pub fn center(&self) -> usize {
        let p = self.p.get() as usize;
        self.digits.iter().rev().fold(0, |acc, &d| acc * p + d as usize)
    }
}

/// Reads `word` as a disk address under the given digit convention.
pub fn word_to_center(p: Prime, word: &Word, convention: CenterConvention) -> DiskAddress {
    let digits = match convention {
        CenterConvention::LsdFirst => word.letters().to_vec(),
        CenterConvention::MsdFirst => word.letters().iter().rev().copied().collect(),
    };
    DiskAddress { p, digits }
}

/// A locally constant complex function on `Z_p` at uniform depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepFunction {
    p: Prime,
    depth: usize,
    values: Vec<Scalar>,
}

impl StepFunction {
    pub fn from_values(p: Prime, depth: usize, values: Vec<Scalar>) -> Result<Self> {
        let expected = p.pow(depth)?;
        if values.len() != expected {
            return Err(Error::BadLength {
                got: values.len(),
                expected,
            });
        }
        if let Some(v) = values.iter().find(|v| v.prime() != p) {
            return Err(Error::PrimeMismatch {
                left: p.get(),
                right: v.prime().get(),
            });
        }
        Ok(StepFunction { p, depth, values })
    }

    pub(crate) fn from_values_unchecked(p: Prime, depth: usize, values: Vec<Scalar>) -> Self {
        debug_assert_eq!(values.len(), (p.get() as usize).pow(depth as u32));
        StepFunction { p, depth, values }
    }

    pub fn constant(p: Prime, c: Scalar) -> Self {
        StepFunction {
            p,
            depth: 0,
            values: vec![c],
        }
    }

    /// The constant function `1`, the indicator of `Z_p`.
    pub fn one(p: Prime) -> Self {
        Self::constant(p, Scalar::one(p))
    }

    pub fn zero(p: Prime, depth: usize) -> Result<Self> {
        let n = p.pow(depth)?;
        Ok(StepFunction {
            p,
            depth,
            values: vec![Scalar::zero(p); n],
        })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        StepFunction {
            p: self.p,
            depth: self.depth,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn refine(&self, k_new: usize) -> Result<Self> {
        self.refine_capped(k_new, DEFAULT_SIZE_CAP)
    }

    pub fn refine_capped(&self, k_new: usize, cap: usize) -> Result<Self> {
        if k_new < self.depth {
            return Err(Error::DepthDecrease {
                from: self.depth,
                to: k_new,
            });
        }
        if k_new == self.depth {
            return Ok(self.clone());
        }
        let n = self.p.pow_capped(k_new, cap)?;
        let len = self.values.len();
        let values = (0..n).map(|i| self.values[i % len].clone()).collect();
        Ok(StepFunction {
            p: self.p,
            depth: k_new,
            values,
        })
    }

    /// Integral against the normalized Haar measure: `p^{−k} Σ values`.
    pub fn integrate(&self) -> Scalar {
        sum_in(self.p, &self.values).scale(&inv_pow(self.p, self.depth))
    }

    /// Haar measure of `self` restricted to the addressed disk.
    pub fn integrate_over(&self, disk: &DiskAddress) -> Scalar {
        let k = disk.depth();
        let p = self.p.get() as usize;
        if k >= self.depth {
            let idx = disk.center() % self.values.len();
            return self.values[idx].scale(&inv_pow(self.p, k));
        }
        let stride = p.pow(k as u32);
        let start = disk.center();
        sum_in(self.p, self.values[start..].iter().step_by(stride)).scale(&inv_pow(self.p, self.depth))
    }

    /// Masses of all `p^k` depth-`k` disks, indexed by coset index.
    pub fn disk_masses(&self, k: usize) -> Result<Vec<Scalar>> {
        let n = self.p.pow(k)?;
        if k >= self.depth {
            let w = inv_pow(self.p, k);
            let len = self.values.len();
            return Ok((0..n).map(|i| self.values[i % len].scale(&w)).collect());
        }
        let w = inv_pow(self.p, self.depth);
        let mut masses = vec![Scalar::zero(self.p); n];
        for (i, v) in self.values.iter().enumerate() {
            if !v.is_zero() {
                masses[i % n] += v;
            }
        }
        Ok(masses.into_iter().map(|m| m.scale(&w)).collect())
    }

    /// `⟨f, g⟩ = ∫ conj(f)·g dμ`, refining both operands to a common depth.
    pub fn l2_inner(&self, other: &StepFunction) -> Result<Scalar> {
        self.same_prime(other)?;
        let k = self.depth.max(other.depth);
        let n = self.p.pow(k)?;
        let (la, lb) = (self.values.len(), other.values.len());
        let mut acc = Scalar::zero(self.p);
        for i in 0..n {
            let (a, b) = (&self.values[i % la], &other.values[i % lb]);
            if !a.is_zero() && !b.is_zero() {
                acc += &(&a.conj() * b);
            }
        }
        Ok(acc.scale(&inv_pow(self.p, k)))
    }

    /// Equality as functions on `Z_p`, ignoring the storage depth.
    pub fn same_function(&self, other: &StepFunction) -> bool {
        if self.p != other.p {
            return false;
        }
        let n = self.values.len().max(other.values.len());
        let (la, lb) = (self.values.len(), other.values.len());
        (0..n).all(|i| self.values[i % la] == other.values[i % lb])
    }

    fn same_prime(&self, other: &StepFunction) -> Result<()> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch {
                left: self.p.get(),
                right: other.p.get(),
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &StepFunction, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Self> {
        self.same_prime(other)?;
        let depth = self.depth.max(other.depth);
        let n = self.p.pow(depth)?;
        let (la, lb) = (self.values.len(), other.values.len());
        let values = (0..n).map(|i| f(&self.values[i % la], &other.values[i % lb])).collect();
        Ok(StepFunction {
            p: self.p,
            depth,
            values,
        })
    }

    pub fn try_add(&self, other: &StepFunction) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &StepFunction) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }
}

impl<'a> Add<&'a StepFunction> for &'a StepFunction {
    type Output = StepFunction;
    /// Panics if the primes differ; use [`StepFunction::try_add`] otherwise.
    fn add(self, rhs: &StepFunction) -> StepFunction {
        self.try_add(rhs).expect("step function addition")
    }
}

impl<'a> Sub<&'a StepFunction> for &'a StepFunction {
    type Output = StepFunction;
    fn sub(self, rhs: &StepFunction) -> StepFunction {
        self.try_sub(rhs).expect("step function subtraction")
    }
}

/// `θ` of the addressed disk: 1 on it, 0 elsewhere, at the disk's depth.
pub fn make_indicator(address: &DiskAddress) -> Result<StepFunction> {
    let p = address.prime();
    let mut f = StepFunction::zero(p, address.depth())?;
    f.values[address.center()] = Scalar::one(p);
    Ok(f)
}

pub(crate) fn inv_pow(p: Prime, k: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(p.get()).pow(k as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;
    use proptest::prelude::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn ints(p: Prime, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::from_int(p, x)).collect()
    }

    fn indicator(p: Prime, digits: &[u32]) -> StepFunction {
        make_indicator(&DiskAddress::new(p, digits.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn indicator_examples() {
        let p2 = p(2);
        assert_eq!(indicator(p2, &[1]).values(), ints(p2, &[0, 1]).as_slice());
        let p3 = p(3);
        assert_eq!(indicator(p3, &[]), StepFunction::one(p3));
        let f = indicator(p2, &[0, 1]);
        assert_eq!(f.depth(), 2);
        assert_eq!(f.values(), ints(p2, &[0, 0, 1, 0]).as_slice());
    }

    #[test]
    fn indicator_rejects_bad_digit() {
        assert_eq!(
            DiskAddress::new(p(3), vec![0, 3]),
            Err(Error::InvalidDigit { digit: 3, p: 3 })
        );
    }

    #[test]
    fn refine_examples() {
        let p2 = p(2);
        let c = Scalar::from_ratio(p2, 3, 7);
        let f = StepFunction::constant(p2, c.clone());
        assert_eq!(f.refine(1).unwrap().values(), &[c.clone(), c]);
        let g = indicator(p2, &[1]).refine(2).unwrap();
        assert_eq!(g.values(), ints(p2, &[0, 1, 0, 1]).as_slice());
        let h = indicator(p(3), &[2, 1]);
        assert_eq!(h.refine(3).unwrap().refine(4).unwrap(), h.refine(4).unwrap());
    }

    #[test]
    fn refine_errors() {
        let f = indicator(p(2), &[0, 1]);
        assert_eq!(f.refine(1), Err(Error::DepthDecrease { from: 2, to: 1 }));
        assert!(matches!(f.refine_capped(5, 16), Err(Error::SizeCap { .. })));
        assert!(matches!(f.refine(40), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn integrate_examples() {
        let p2 = p(2);
        assert_eq!(indicator(p2, &[0]).integrate(), Scalar::from_ratio(p2, 1, 2));
        assert_eq!(StepFunction::one(p(3)).integrate(), Scalar::one(p(3)));
        assert_eq!(indicator(p2, &[0, 1]).integrate(), Scalar::from_ratio(p2, 1, 4));
    }

    #[test]
    fn l2_examples() {
        let p2 = p(2);
        let a = indicator(p2, &[0]);
        let b = indicator(p2, &[1]);
        assert!(a.l2_inner(&b).unwrap().is_zero());
        let two = Scalar::from_int(p2, 2);
        let a2 = a.scale(&two);
        assert_eq!(a2.l2_inner(&a2).unwrap(), two);
        let one = StepFunction::one(p2);
        assert_eq!(one.l2_inner(&one).unwrap(), Scalar::one(p2));
    }

    #[test]
    fn l2_brute_force_oracle() {
        // ⟨2θ₁, 2θ₁⟩ summed coset by coset at depth 3: 8 cosets of measure 1/8,
        // four of them carry |2|² = 4.
        let p2 = p(2);
        let f = indicator(p2, &[0]).scale(&Scalar::from_int(p2, 2)).refine(3).unwrap();
        let brute: Rational = f
            .values()
            .iter()
            .map(|v| v.as_rational().unwrap() * v.as_rational().unwrap() * rational(1, 8))
            .sum();
        assert_eq!(brute, rational(2, 1));
        assert_eq!(f.l2_inner(&f).unwrap(), Scalar::from_rational(p2, brute));
    }

    #[test]
    fn conjugate_linear_first_slot() {
        let p2 = p(2);
        let i = Scalar::imag_unit(p2);
        let f = indicator(p2, &[1]);
        let lhs = f.scale(&i).l2_inner(&f).unwrap();
        assert_eq!(lhs, &(-&i) * &f.l2_inner(&f).unwrap());
    }

    #[test]
    fn word_centers() {
        let p2 = p(2);
        let w = Word::parse(p2, "01").unwrap();
        let lsd = word_to_center(p2, &w, CenterConvention::LsdFirst);
        assert_eq!(lsd.digits(), &[0, 1]);
        assert_eq!(lsd.center(), 2);
        let msd = word_to_center(p2, &w, CenterConvention::MsdFirst);
        assert_eq!(msd.digits(), &[1, 0]);
        assert_eq!(msd.center(), 1);
        for conv in [CenterConvention::LsdFirst, CenterConvention::MsdFirst] {
            assert_eq!(word_to_center(p2, &Word::empty(), conv), DiskAddress::whole(p2));
        }
    }

    #[test]
    fn depth_one_indicators_partition_unity() {
        for n in [2, 3, 5, 7] {
            let pr = p(n);
            let total = (0..n as u32)
                .map(|d| indicator(pr, &[d]))
                .reduce(|a, b| &a + &b)
                .unwrap();
            assert!(total.same_function(&StepFunction::one(pr)));
        }
    }

    #[test]
    fn disk_masses_match_integrate_over() {
        let pr = p(3);
        let vals = (0..27).map(|i| Scalar::from_ratio(pr, i - 5, 1 + i % 4)).collect();
        let f = StepFunction::from_values(pr, 3, vals).unwrap();
        for k in 0..5 {
            let masses = f.disk_masses(k).unwrap();
            for (n, m) in masses.iter().enumerate() {
                let w = Word::from_coset_index(pr, n, k);
                let disk = word_to_center(pr, &w, CenterConvention::LsdFirst);
                assert_eq!(disk.center(), n);
                assert_eq!(&f.integrate_over(&disk), m);
            }
            assert_eq!(sum_in(pr, &masses), f.integrate());
        }
    }

    #[test]
    fn from_values_validates() {
        let p2 = p(2);
        assert_eq!(
            StepFunction::from_values(p2, 2, ints(p2, &[1, 2, 3])),
            Err(Error::BadLength { got: 3, expected: 4 })
        );
        assert!(matches!(
            StepFunction::from_values(p2, 0, ints(p(3), &[1])),
            Err(Error::PrimeMismatch { .. })
        ));
    }

    fn arb_step() -> impl Strategy<Value = (StepFunction, StepFunction, usize)> {
        (
            prop_oneof![Just(2u64), Just(3), Just(5)],
            0usize..4,
            0usize..4,
            0usize..3,
        )
            .prop_flat_map(|(pn, da, db, extra)| {
                let pr = Prime::new(pn).unwrap();
                let val = (-9i64..9, 1i64..7, -3i64..3, -3i64..3).prop_map(move |(a, d, b, c)| {
                    Scalar::from_parts(
                        pr,
                        rational(a, d),
                        rational(b, d),
                        rational(c, 2),
                        Rational::from_integer(0.into()),
                    )
                });
                let na = (pn as usize).pow(da as u32);
                let nb = (pn as usize).pow(db as u32);
                (
                    proptest::collection::vec(val.clone(), na),
                    proptest::collection::vec(val, nb),
                )
                    .prop_map(move |(va, vb)| {
                        (
                            StepFunction::from_values(pr, da, va).unwrap(),
                            StepFunction::from_values(pr, db, vb).unwrap(),
                            da.max(db) + extra,
                        )
                    })
            })
    }

    proptest! {
        #[test]
        fn refinement_invariance((f, g, k) in arb_step()) {
            let (rf, rg) = (f.refine(k).unwrap(), g.refine(k).unwrap());
            prop_assert_eq!(rf.integrate(), f.integrate());
            prop_assert_eq!(rf.l2_inner(&rg).unwrap(), f.l2_inner(&g).unwrap());
        }

        #[test]
        fn l2_norm_nonnegative((f, _g, _k) in arb_step()) {
            prop_assert!(f.l2_inner(&f).unwrap().is_nonneg_real());
        }

        #[test]
        fn l2_hermitian((f, g, _k) in arb_step()) {
            prop_assert_eq!(f.l2_inner(&g).unwrap().conj(), g.l2_inner(&f).unwrap());
        }
    }
}
