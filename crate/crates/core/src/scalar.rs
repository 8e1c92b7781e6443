//! Exact scalars in `Q(√p) ⊕ i·Q(√p)`.
//!
//! A [`Scalar`] is `(re_a + re_b·√p) + i·(im_a + im_b·√p)` with rational
//! coefficients. Every operator coefficient and every state value produced by
//! the library lives in this field, so identities are checked with `==`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default cap on the number of values a dense step function may hold.
pub const DEFAULT_SIZE_CAP: usize = 10_000_000;

/// A prime `p`, the number of letters / the residue field size of `Z_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// `p^k` as a value count, failing when it exceeds `cap`.
    pub fn pow_capped(self, k: usize, cap: usize) -> Result<usize> {
        let err = Error::SizeCap {
            p: self.0,
            depth: k,
            cap,
        };
        let k32 = u32::try_from(k).map_err(|_| err.clone())?;
        match (self.0 as usize).checked_pow(k32) {
            Some(n) if n <= cap => Ok(n),
            _ => Err(err),
        }
    }

    pub fn pow(self, k: usize) -> Result<usize> {
        self.pow_capped(k, DEFAULT_SIZE_CAP)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Sign of `a + b·√p` evaluated exactly.
pub fn quad_sign(a: &Rational, b: &Rational, p: u32) -> Ordering {
    let sa = a.cmp(&Rational::zero());
    let sb = b.cmp(&Rational::zero());
    match (sa, sb) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (x, y) if x == y => x,
        // opposite signs: compare a^2 with p·b^2
        (sa, _) => {
            let a2 = a * a;
            let pb2 = b * b * Rational::from_integer(BigInt::from(p));
            match a2.cmp(&pb2) {
                Ordering::Greater => sa,
                Ordering::Less => sa.reverse(),
                Ordering::Equal => Ordering::Equal,
            }
        }
    }
}

/// Exact element `(re_a + re_b·√p) + i·(im_a + im_b·√p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    p: u32,
    re_a: Rational,
    re_b: Rational,
    im_a: Rational,
    im_b: Rational,
}

impl Scalar {
    pub fn from_parts(p: Prime, re_a: Rational, re_b: Rational, im_a: Rational, im_b: Rational) -> Self {
        Scalar {
            p: p.get(),
            re_a,
            re_b,
            im_a,
            im_b,
        }
    }

    pub fn zero(p: Prime) -> Self {
        Self::from_rational(p, Rational::zero())
    }

    pub fn one(p: Prime) -> Self {
        Self::from_rational(p, Rational::one())
    }

    pub fn from_rational(p: Prime, q: Rational) -> Self {
        Scalar::from_parts(p, q, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn from_int(p: Prime, n: i64) -> Self {
        Self::from_rational(p, Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(p: Prime, num: i64, den: i64) -> Self {
        Self::from_rational(p, rational(num, den))
    }

    pub fn sqrt_p(p: Prime) -> Self {
        Scalar::from_parts(p, Rational::zero(), Rational::one(), Rational::zero(), Rational::zero())
    }

    pub fn imag_unit(p: Prime) -> Self {
        Scalar::from_parts(p, Rational::zero(), Rational::zero(), Rational::one(), Rational::zero())
    }

    /// `(√p)^e` for any integer exponent.
    pub fn sqrt_p_pow(p: Prime, e: i64) -> Self {
        let half = e.div_euclid(2);
        let odd = e.rem_euclid(2) == 1;
        let base = BigInt::from(p.get()).pow(half.unsigned_abs() as u32);
        let q = if half >= 0 {
            Rational::from_integer(base)
        } else {
            Rational::new(BigInt::one(), base)
        };
        if odd {
            Scalar::from_parts(p, Rational::zero(), q, Rational::zero(), Rational::zero())
        } else {
            Scalar::from_rational(p, q)
        }
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        Prime(self.p)
    }

    pub fn parts(&self) -> [&Rational; 4] {
        [&self.re_a, &self.re_b, &self.im_a, &self.im_b]
    }

    pub fn is_zero(&self) -> bool {
        self.re_a.is_zero() && self.re_b.is_zero() && self.im_a.is_zero() && self.im_b.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im_a.is_zero() && self.im_b.is_zero()
    }

    /// The value as a plain rational, when it has no `√p` or imaginary part.
    pub fn as_rational(&self) -> Option<&Rational> {
        (self.re_b.is_zero() && self.is_real()).then_some(&self.re_a)
    }

    pub fn conj(&self) -> Self {
        Scalar {
            p: self.p,
            re_a: self.re_a.clone(),
            re_b: self.re_b.clone(),
            im_a: -&self.im_a,
            im_b: -&self.im_b,
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Scalar {
            p: self.p,
            re_a: &self.re_a * q,
            re_b: &self.re_b * q,
            im_a: &self.im_a * q,
            im_b: &self.im_b * q,
        }
    }

    /// Multiplication by `√p`: `(a + b√p)·√p = p·b + a·√p`.
    pub fn mul_sqrt_p(&self) -> Self {
        Scalar {
            p: self.p,
            re_a: times_int(&self.re_b, self.p),
            re_b: self.re_a.clone(),
            im_a: times_int(&self.im_b, self.p),
            im_b: self.im_a.clone(),
        }
    }

    /// Division by `√p`: `(a + b√p)/√p = b + (a/p)·√p`.
    pub fn div_sqrt_p(&self) -> Self {
        Scalar {
            p: self.p,
            re_a: self.re_b.clone(),
            re_b: over_int(&self.re_a, self.p),
            im_a: self.im_b.clone(),
            im_b: over_int(&self.im_a, self.p),
        }
    }

    pub fn real_sign(&self) -> Ordering {
        quad_sign(&self.re_a, &self.re_b, self.p)
    }

    /// True when the value is real and `>= 0`.
    pub fn is_nonneg_real(&self) -> bool {
        self.is_real() && self.real_sign() != Ordering::Less
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // z / w = z·conj(w) / |w|^2 with |w|^2 = e + f√p real and positive.
        let norm = rhs * &rhs.conj();
        let (e, f) = (&norm.re_a, &norm.re_b);
        let p = Rational::from_integer(BigInt::from(self.p));
        let den = e * e - &p * f * f;
        let inv = Scalar {
            p: self.p,
            re_a: e / &den,
            re_b: -(f / &den),
            im_a: Rational::zero(),
            im_b: Rational::zero(),
        };
        Ok(&(self * &rhs.conj()) * &inv)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let s = (self.p as f64).sqrt();
        let f = |q: &Rational| q.to_f64().unwrap_or(f64::NAN);
        (f(&self.re_a) + f(&self.re_b) * s, f(&self.im_a) + f(&self.im_b) * s)
    }

    /// Exact form followed by a decimal annotation when the value is irrational
    /// or non-real, e.g. `1/2·√2 ≈ 0.70710678`.
    pub fn display_with_decimal(&self) -> String {
        if self.as_rational().is_some() {
            return self.to_string();
        }
        let (re, im) = self.to_f64();
        if self.is_real() {
            format!("{self} ≈ {re:.8}")
        } else {
            let sign = if im < 0.0 { '-' } else { '+' };
            format!("{self} ≈ {re:.8} {sign} {:.8}i", im.abs())
        }
    }

    fn check(&self, other: &Scalar) {
        assert_eq!(self.p, other.p, "scalars over different primes combined");
    }
}

fn times_int(q: &Rational, n: u32) -> Rational {
    if q.is_zero() {
        return Rational::zero();
    }
    q * BigInt::from(n)
}

fn over_int(q: &Rational, n: u32) -> Rational {
    if q.is_zero() {
        return Rational::zero();
    }
    q / BigInt::from(n)
}

fn fmt_quad(a: &Rational, b: &Rational, p: u32) -> String {
    let surd = |b: &Rational| {
        if b.is_one() {
            format!("√{p}")
        } else if (-b).is_one() {
            format!("-√{p}")
        } else {
            format!("{b}·√{p}")
        }
    };
    match (a.is_zero(), b.is_zero()) {
        (true, true) => "0".to_string(),
        (false, true) => a.to_string(),
        (true, false) => surd(b),
        (false, false) => {
            if b.is_negative() {
                format!("{a} - {}", surd(&-b))
            } else {
                format!("{a} + {}", surd(b))
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = fmt_quad(&self.re_a, &self.re_b, self.p);
        if self.is_real() {
            return f.write_str(&re);
        }
        let im = fmt_quad(&self.im_a, &self.im_b, self.p);
        let im = if self.im_a.is_zero() || self.im_b.is_zero() {
            format!("{im}·i")
        } else {
            format!("({im})·i")
        };
        if self.re_a.is_zero() && self.re_b.is_zero() {
            f.write_str(&im)
        } else {
            write!(f, "{re} + {im}")
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar[p={}]({})", self.p, self)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        Scalar {
            p: self.p,
            re_a: &self.re_a + &rhs.re_a,
            re_b: &self.re_b + &rhs.re_b,
            im_a: &self.im_a + &rhs.im_a,
            im_b: &self.im_b + &rhs.im_b,
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        Scalar {
            p: self.p,
            re_a: &self.re_a - &rhs.re_a,
            re_b: &self.re_b - &rhs.re_b,
            im_a: &self.im_a - &rhs.im_a,
            im_b: &self.im_b - &rhs.im_b,
        }
    }
}

// (a + b s)(c + d s) = (ac + p bd) + (ad + bc) s
fn quad_mul(a: &Rational, b: &Rational, c: &Rational, d: &Rational, p: u32) -> (Rational, Rational) {
    if b.is_zero() && d.is_zero() {
        return (a * c, Rational::zero());
    }
    let pbd = b * d * Rational::from_integer(BigInt::from(p));
    (a * c + pbd, a * d + b * c)
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        let p = self.p;
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero(Prime(p));
        }
        let (xr_a, xr_b) = quad_mul(&self.re_a, &self.re_b, &rhs.re_a, &rhs.re_b, p);
        if self.is_real() && rhs.is_real() {
            return Scalar {
                p,
                re_a: xr_a,
                re_b: xr_b,
                im_a: Rational::zero(),
                im_b: Rational::zero(),
            };
        }
        let (yv_a, yv_b) = quad_mul(&self.im_a, &self.im_b, &rhs.im_a, &rhs.im_b, p);
        let (xv_a, xv_b) = quad_mul(&self.re_a, &self.re_b, &rhs.im_a, &rhs.im_b, p);
        let (yu_a, yu_b) = quad_mul(&self.im_a, &self.im_b, &rhs.re_a, &rhs.re_b, p);
        Scalar {
            p,
            re_a: xr_a - yv_a,
            re_b: xr_b - yv_b,
            im_a: xv_a + yu_a,
            im_b: xv_b + yu_b,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            p: self.p,
            re_a: -&self.re_a,
            re_b: -&self.re_b,
            im_a: -&self.im_a,
            im_b: -&self.im_b,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.check(rhs);
        self.re_a += &rhs.re_a;
        self.re_b += &rhs.re_b;
        self.im_a += &rhs.im_a;
        self.im_b += &rhs.im_b;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.check(rhs);
        self.re_a -= &rhs.re_a;
        self.re_b -= &rhs.re_b;
        self.im_a -= &rhs.im_a;
        self.im_b -= &rhs.im_b;
    }
}

pub fn sum_in<'a>(p: Prime, iter: impl IntoIterator<Item = &'a Scalar>) -> Scalar {
    let mut acc = Scalar::zero(p);
    for x in iter {
        if !x.is_zero() {
            acc += x;
        }
    }
    acc
}
