//! Truncated free (Boltzmann) Fock space over `p` letters.
//!
//! Basis vectors are words: the word `I` stands for `A†_I Ω`. Left ("Fock")
//! ladder operators act on the outermost letter, which is the last one in the
//! word; right ("antifock") ladder operators act on the innermost letter,
//! the first one.
//!
//! A truncation `N` drops every word longer than `N`. Dropped words are not
//! errors: they are tallied in [`FockVector::spilled`].

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::LambdaPoly;
use crate::scalar::{Prime, Scalar};
use crate::word::Word;

#[derive(Debug, Clone)]
pub struct FockVector {
    p: Prime,
    terms: BTreeMap<Word, LambdaPoly>,
    truncation: Option<usize>,
    spilled: usize,
}

impl PartialEq for FockVector {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.terms == other.terms
    }
}

impl FockVector {
    pub fn zero(p: Prime) -> Self {
        FockVector {
            p,
            terms: BTreeMap::new(),
            truncation: None,
            spilled: 0,
        }
    }

    /// The vacuum `Ω`.
    pub fn vacuum(p: Prime) -> Self {
        Self::basis(p, Word::empty(), LambdaPoly::constant(Scalar::one(p)))
    }

    /// `c · A†_w Ω`.
    pub fn basis(p: Prime, w: Word, c: LambdaPoly) -> Self {
        let mut v = FockVector::zero(p);
        v.add_term(w, &c);
        v
    }

    pub fn with_truncation(mut self, n: usize) -> Self {
        self.truncation = Some(n);
        let before = self.terms.len();
        self.terms.retain(|w, _| w.len() <= n);
        self.spilled += before - self.terms.len();
        self
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn truncation(&self) -> Option<usize> {
        self.truncation
    }

    /// Number of words dropped by the truncation over this vector's history.
    pub fn spilled(&self) -> usize {
        self.spilled
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &LambdaPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> LambdaPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Longest and shortest word lengths present.
    pub fn support_lengths(&self) -> Option<(usize, usize)> {
        let mut lens = self.terms.keys().map(Word::len);
        let first = lens.next()?;
        Some(lens.fold((first, first), |(lo, hi), l| (lo.min(l), hi.max(l))))
    }

    pub fn add_term(&mut self, w: Word, c: &LambdaPoly) {
        if c.is_zero() {
            return;
        }
        if self.truncation.is_some_and(|n| w.len() > n) {
            self.spilled += 1;
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign(c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn empty_like(&self) -> Self {
        FockVector {
            p: self.p,
            terms: BTreeMap::new(),
            truncation: self.truncation,
            spilled: self.spilled,
        }
    }

    fn check_letter(&self, i: u32) -> Result<()> {
        if i >= self.p.get() {
            return Err(Error::InvalidLetter {
                letter: i,
                p: self.p.get(),
            });
        }
        Ok(())
    }

    fn check_prime(&self, other: &FockVector) -> Result<()> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch {
                left: self.p.get(),
                right: other.p.get(),
            });
        }
        Ok(())
    }

    fn map_words(&self, f: impl Fn(&Word) -> Option<Word>) -> Self {
        let mut out = self.empty_like();
        for (w, c) in &self.terms {
            if let Some(nw) = f(w) {
                out.add_term(nw, c);
            }
        }
        out
    }

    pub fn try_add(&self, other: &FockVector) -> Result<Self> {
        self.check_prime(other)?;
        let mut out = self.clone();
        out.spilled += other.spilled;
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &FockVector) -> Result<Self> {
        self.try_add(&other.scale(&Scalar::from_int(self.p, -1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = self.empty_like();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), &x.scale(c));
        }
        out
    }

    pub fn mul_poly(&self, c: &LambdaPoly) -> Self {
        let mut out = self.empty_like();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), &x.mul(c));
        }
        out
    }

    /// Multiplication by `λ^shift`; fails if a negative shift leaves a
    /// negative power.
    pub fn shift_lambda(&self, shift: i64) -> Result<Self> {
        let mut out = self.empty_like();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), &x.shift(shift)?);
        }
        Ok(out)
    }

    /// Restriction to words shorter than `len`.
    pub fn below_length(&self, len: usize) -> Self {
        let mut out = self.empty_like();
        for (w, x) in self.terms.iter().filter(|(w, _)| w.len() < len) {
            out.add_term(w.clone(), x);
        }
        out
    }

    /// `A†_i v`: appends `i` as the outermost letter.
    pub fn fock_create(&self, i: u32) -> Result<Self> {
        self.check_letter(i)?;
        Ok(self.map_words(|w| Some(w.pushed(i))))
    }

    /// `A_i v`: strips a last letter equal to `i`, kills everything else.
    pub fn fock_annihilate(&self, i: u32) -> Result<Self> {
        self.check_letter(i)?;
        Ok(self.map_words(|w| (w.last() == Some(i)).then(|| w.without_last())))
    }

    /// `AF(A†_i) v`: prepends `i` as the innermost letter.
    pub fn af_create(&self, i: u32) -> Result<Self> {
        self.check_letter(i)?;
        Ok(self.map_words(|w| Some(w.prepended(i))))
    }

    /// `AF(A_i) v`: strips a first letter equal to `i`.
    pub fn af_annihilate(&self, i: u32) -> Result<Self> {
        self.check_letter(i)?;
        // words starting with `i` form one contiguous lexicographic range
        let from = Word::new(self.p, vec![i])?;
        let mut out = self.empty_like();
        for (w, c) in self.terms.range(from..) {
            if w.first() != Some(i) {
                break;
            }
            out.add_term(w.without_first(), c);
        }
        Ok(out)
    }

    /// `AF(A_P)`-style prefix strip: keeps words starting with `prefix` and
    /// removes it. Equals stripping the letters of `prefix` one at a time,
    /// first letter first.
    pub fn af_strip_prefix(&self, prefix: &Word) -> Result<Self> {
        let mut out = self.empty_like();
        for (w, c) in self.terms.range(prefix.clone()..) {
            if !prefix.is_prefix_of(w) {
                break;
            }
            out.add_term(Word::new(self.p, w.letters()[prefix.len()..].to_vec())?, c);
        }
        Ok(out)
    }

    /// Prepends `prefix` to every word: prepending its letters one at a time,
    /// last letter first.
    pub fn af_prepend(&self, prefix: &Word) -> Result<Self> {
        Word::new(self.p, prefix.letters().to_vec())?;
        Ok(self.map_words(|w| Some(prefix.concat(w))))
    }

    /// `Σ_i A†_i v`.
    pub fn sum_create(&self) -> Self {
        let mut out = self.empty_like();
        for i in 0..self.p.get() {
            for (w, c) in &self.terms {
                out.add_term(w.pushed(i), c);
            }
        }
        out
    }

    /// `Σ_i A_i v`: every nonempty word loses its last letter.
    pub fn sum_annihilate(&self) -> Self {
        self.map_words(|w| (!w.is_empty()).then(|| w.without_last()))
    }

    /// The tensor-algebra product with `inner`'s words innermost:
    /// `Σ c_w d_I · word(w·I)`, i.e. `A†_outer` applied to `inner`.
    pub fn right_product(inner: &FockVector, outer: &FockVector) -> Result<Self> {
        inner.check_prime(outer)?;
        let mut out = inner.empty_like();
        for (w, c) in &inner.terms {
            for (iw, d) in &outer.terms {
                out.add_term(w.concat(iw), &c.mul(d));
            }
        }
        Ok(out)
    }

    /// `⟨v, w⟩ = Σ_I conj(v_I) w_I`.
    pub fn fock_inner(&self, other: &FockVector) -> Result<LambdaPoly> {
        self.check_prime(other)?;
        let mut acc = LambdaPoly::zero();
        for (w, c) in &self.terms {
            if let Some(d) = other.terms.get(w) {
                acc.add_assign(&c.conj().mul(d));
            }
        }
        Ok(acc)
    }

    /// The inner product split by word length: entry `k` collects the words
    /// of length `k`.
    pub fn inner_by_length(&self, other: &FockVector) -> Result<Vec<LambdaPoly>> {
        self.check_prime(other)?;
        let mut out: Vec<LambdaPoly> = Vec::new();
        let mut add = |w: &Word, c: &LambdaPoly, d: &LambdaPoly| {
            if out.len() <= w.len() {
                out.resize(w.len() + 1, LambdaPoly::zero());
            }
            out[w.len()].add_assign(&c.conj().mul(d));
        };
        if self.terms.len() <= other.terms.len() {
            for (w, c) in &self.terms {
                if let Some(d) = other.terms.get(w) {
                    add(w, c, d);
                }
            }
        } else {
            for (w, d) in &other.terms {
                if let Some(c) = self.terms.get(w) {
                    add(w, c, d);
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;
    use proptest::prelude::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn word(pr: Prime, s: &str) -> FockVector {
        FockVector::basis(pr, Word::parse(pr, s).unwrap(), LambdaPoly::constant(Scalar::one(pr)))
    }

    #[test]
    fn creation_examples() {
        let p2 = p(2);
        let om = FockVector::vacuum(p2);
        assert_eq!(om.fock_create(0).unwrap(), word(p2, "0"));
        assert_eq!(word(p2, "0").fock_create(1).unwrap(), word(p2, "01"));
        let c = Scalar::from_ratio(p2, 3, 5);
        assert_eq!(om.scale(&c).fock_create(1).unwrap(), word(p2, "1").scale(&c));
        assert_eq!(om.fock_create(2), Err(Error::InvalidLetter { letter: 2, p: 2 }));
    }

    #[test]
    fn annihilation_examples() {
        let p2 = p(2);
        assert!(FockVector::vacuum(p2).fock_annihilate(0).unwrap().is_zero());
        assert_eq!(word(p2, "01").fock_annihilate(1).unwrap(), word(p2, "0"));
        assert!(word(p2, "01").fock_annihilate(0).unwrap().is_zero());
        assert!(FockVector::vacuum(p2).fock_annihilate(5).is_err());
    }

    #[test]
    fn antifock_examples() {
        let p2 = p(2);
        assert_eq!(FockVector::vacuum(p2).af_create(0).unwrap(), word(p2, "0"));
        assert_eq!(word(p2, "0").af_create(1).unwrap(), word(p2, "10"));
        assert_eq!(word(p2, "01").af_annihilate(0).unwrap(), word(p2, "1"));
        assert!(word(p2, "01").af_annihilate(1).unwrap().is_zero());
        assert!(FockVector::vacuum(p2).af_annihilate(1).unwrap().is_zero());
        assert!(FockVector::vacuum(p2).af_create(3).is_err());
    }

    #[test]
    fn inner_examples() {
        let p2 = p(2);
        let one = LambdaPoly::constant(Scalar::one(p2));
        assert_eq!(word(p2, "0").fock_inner(&word(p2, "0")).unwrap(), one);
        assert!(word(p2, "0").fock_inner(&word(p2, "1")).unwrap().is_zero());
        let lom = FockVector::vacuum(p2).mul_poly(&LambdaPoly::monomial(Scalar::one(p2), 1));
        assert_eq!(lom.fock_inner(&lom).unwrap(), LambdaPoly::monomial(Scalar::one(p2), 2));
    }

    #[test]
    fn truncation_spills() {
        let p2 = p(2);
        let v = word(p2, "01").with_truncation(2);
        let w = v.fock_create(0).unwrap();
        assert!(w.is_zero());
        assert_eq!(w.spilled(), 1);
        let s = FockVector::vacuum(p2).with_truncation(1).sum_create().sum_create();
        assert!(s.is_zero());
        assert_eq!(s.spilled(), 4);
    }

    #[test]
    fn right_product_concatenates() {
        let p2 = p(2);
        let v = FockVector::right_product(&word(p2, "1"), &word(p2, "01")).unwrap();
        assert_eq!(v, word(p2, "101"));
    }

    // Random vectors: words up to length 3 with small exact coefficients.
    fn arb_vec() -> impl Strategy<Value = FockVector> {
        (prop_oneof![Just(2u64), Just(3)]).prop_flat_map(|pn| {
            let pr = Prime::new(pn).unwrap();
            proptest::collection::vec(
                (
                    proptest::collection::vec(0..pn as u32, 0..4),
                    -5i64..5,
                    1i64..4,
                    0u32..3,
                ),
                0..8,
            )
            .prop_map(move |entries| {
                let mut v = FockVector::zero(pr);
                for (letters, n, d, e) in entries {
                    let c = LambdaPoly::monomial(Scalar::from_rational(pr, rational(n, d)), e);
                    v.add_term(Word::new(pr, letters).unwrap(), &c);
                }
                v
            })
        })
    }

    fn pair() -> impl Strategy<Value = (FockVector, FockVector)> {
        (arb_vec(), arb_vec()).prop_filter("same p", |(a, b)| a.prime() == b.prime())
    }

    proptest! {
        #[test]
        fn annihilate_after_create((v, _w) in pair()) {
            let pn = v.prime().get();
            for i in 0..pn {
                for j in 0..pn {
                    let lhs = v.fock_create(j).unwrap().fock_annihilate(i).unwrap();
                    let rhs = if i == j { v.clone() } else { FockVector::zero(v.prime()) };
                    prop_assert_eq!(&lhs, &rhs);
                    let lhs = v.af_create(j).unwrap().af_annihilate(i).unwrap();
                    prop_assert_eq!(&lhs, &rhs);
                }
            }
        }

        #[test]
        fn cuntz_off_vacuum((v, _w) in pair()) {
            let pr = v.prime();
            let mut left = FockVector::zero(pr);
            let mut right = FockVector::zero(pr);
            for i in 0..pr.get() {
                left = left.try_add(&v.fock_annihilate(i).unwrap().fock_create(i).unwrap()).unwrap();
                right = right.try_add(&v.af_annihilate(i).unwrap().af_create(i).unwrap()).unwrap();
            }
            let vac = FockVector::basis(pr, Word::empty(), v.coeff(&Word::empty()));
            let expected = v.try_sub(&vac).unwrap();
            prop_assert_eq!(left, expected.clone());
            prop_assert_eq!(right, expected);
        }

        #[test]
        fn ladder_adjointness((v, w) in pair()) {
            for i in 0..v.prime().get() {
                prop_assert_eq!(
                    v.fock_create(i).unwrap().fock_inner(&w).unwrap(),
                    v.fock_inner(&w.fock_annihilate(i).unwrap()).unwrap()
                );
                prop_assert_eq!(
                    v.af_create(i).unwrap().fock_inner(&w).unwrap(),
                    v.fock_inner(&w.af_annihilate(i).unwrap()).unwrap()
                );
            }
        }

        #[test]
        fn left_and_right_commute((v, _w) in pair()) {
            let pr = v.prime();
            // restrict to words of length >= 1
            let mut v1 = FockVector::zero(pr);
            for (w, c) in v.terms().filter(|(w, _)| !w.is_empty()) {
                v1.add_term(w.clone(), c);
            }
            for i in 0..pr.get() {
                for j in 0..pr.get() {
                    prop_assert_eq!(
                        v1.fock_create(j).unwrap().af_create(i).unwrap(),
                        v1.af_create(i).unwrap().fock_create(j).unwrap()
                    );
                    prop_assert_eq!(
                        v1.fock_create(j).unwrap().af_annihilate(i).unwrap(),
                        v1.af_annihilate(i).unwrap().fock_create(j).unwrap()
                    );
                    prop_assert_eq!(
                        v1.fock_annihilate(j).unwrap().af_create(i).unwrap(),
                        v1.af_create(i).unwrap().fock_annihilate(j).unwrap()
                    );
                }
            }
        }

        #[test]
        fn prefix_ops_match_letterwise((v, _w) in pair(), letters in proptest::collection::vec(0u32..2, 0..4)) {
            let pr = v.prime();
            let prefix = Word::new(pr, letters.clone()).unwrap();
            let mut stripped = v.clone();
            let mut prepended = v.clone();
            for &l in &letters {
                stripped = stripped.af_annihilate(l).unwrap();
            }
            for &l in letters.iter().rev() {
                prepended = prepended.af_create(l).unwrap();
            }
            prop_assert_eq!(v.af_strip_prefix(&prefix).unwrap(), stripped);
            prop_assert_eq!(v.af_prepend(&prefix).unwrap(), prepended);
        }
    }
}
