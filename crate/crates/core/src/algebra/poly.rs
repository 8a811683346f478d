use alloc::vec::Vec;
use core::hash::BuildHasherDefault;
use core::ops::{Add, Mul, Neg, Sub};

use hashbrown::HashMap;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHasher;

use super::monomial::Monomial;
use crate::{Error, Result};

pub(crate) type FxMap<K, V> = HashMap<K, V, BuildHasherDefault<FxHasher>>;

/// A Laurent polynomial with rational coefficients.
///
/// Stored as integer coefficients over one positive common denominator,
/// reduced so that the denominator shares no factor with the content. Terms
/// are sorted by monomial and never zero, so structural equality is equality
/// of polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    den: BigInt,
    terms: Vec<(Monomial, BigInt)>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, den: BigInt::one(), terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::term(nvars, Monomial::ONE, c)
    }

    pub fn rational(nvars: usize, c: &BigRational) -> Self {
        let mut p = LaurentPoly {
            nvars,
            den: c.denom().clone(),
            terms: alloc::vec![(Monomial::ONE, c.numer().clone())],
        };
        p.normalize();
        p
    }

    pub fn monomial(nvars: usize, m: Monomial) -> Self {
        Self::term(nvars, m, 1)
    }

    pub fn term(nvars: usize, m: Monomial, c: impl Into<BigInt>) -> Self {
        debug_assert!(m.support_len() <= nvars);
        let c = c.into();
        let terms = if c.is_zero() { Vec::new() } else { alloc::vec![(m, c)] };
        LaurentPoly { nvars, den: BigInt::one(), terms }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        Self::monomial(nvars, Monomial::var(index))
    }

    /// Sums duplicate monomials.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut acc: FxMap<Monomial, BigInt> = FxMap::default();
        for (m, c) in terms {
            debug_assert!(m.support_len() <= nvars);
            *acc.entry(m).or_default() += c;
        }
        Self::from_map(nvars, BigInt::one(), acc)
    }

    fn from_map(nvars: usize, den: BigInt, acc: FxMap<Monomial, BigInt>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|a| a.0);
        let mut p = LaurentPoly { nvars, den, terms };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        if self.terms.is_empty() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -core::mem::take(&mut self.den);
            for (_, c) in &mut self.terms {
                *c = -core::mem::take(c);
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                return;
            }
        }
        self.den /= &g;
        for (_, c) in &mut self.terms {
            *c /= &g;
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common denominator of the coefficients.
    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// Integer numerators, sorted by monomial; divide by [`Self::denominator`].
    pub fn integer_terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, BigRational)> + '_ {
        self.terms
            .iter()
            .map(|(m, c)| (*m, BigRational::new(c.clone(), self.den.clone())))
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        match self.terms.binary_search_by(|(k, _)| k.cmp(m)) {
            Ok(i) => BigRational::new(self.terms[i].1.clone(), self.den.clone()),
            Err(_) => BigRational::zero(),
        }
    }

    /// The single term of a monomial, if `self` is one.
    pub fn as_term(&self) -> Option<(Monomial, BigRational)> {
        match self.terms.as_slice() {
            [(m, c)] => Some((*m, BigRational::new(c.clone(), self.den.clone()))),
            _ => None,
        }
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(m, c)] if m.is_one() => Some(BigRational::new(c.clone(), self.den.clone())),
            _ => None,
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::VariableMismatch { left: self.nvars, right: other.nvars })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.combine(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.combine(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.product(other))
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other.clone() } else { other.clone() };
        }
        let (den, fa, fb) = if self.den == other.den {
            (self.den.clone(), None, None)
        } else {
            let l = self.den.lcm(&other.den);
            let fa = &l / &self.den;
            let fb = &l / &other.den;
            (l, Some(fa), Some(fb))
        };
        let scale = |c: &BigInt, f: &Option<BigInt>| match f {
            Some(f) => c * f,
            None => c.clone(),
        };
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => core::cmp::Ordering::Less,
                _ => core::cmp::Ordering::Greater,
            };
            match ord {
                core::cmp::Ordering::Less => {
                    terms.push((a[i].0, scale(&a[i].1, &fa)));
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    let c = scale(&b[j].1, &fb);
                    terms.push((b[j].0, if negate { -c } else { c }));
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    let x = scale(&a[i].1, &fa);
                    let y = scale(&b[j].1, &fb);
                    let c = if negate { x - y } else { x + y };
                    if !c.is_zero() {
                        terms.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        let mut p = LaurentPoly { nvars: self.nvars, den, terms };
        p.normalize();
        p
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        let den = &self.den * &other.den;
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            let terms = large.terms.iter().map(|(k, d)| (k.mul(m), c * d)).collect();
            let mut p = LaurentPoly { nvars: self.nvars, den, terms };
            p.normalize();
            return p;
        }
        let mut acc: FxMap<Monomial, BigInt> = FxMap::default();
        acc.reserve(large.len() * 2);
        for (m1, c1) in &large.terms {
            for (m2, c2) in &small.terms {
                let m = m1.mul(m2);
                match acc.get_mut(&m) {
                    Some(v) => *v += c1 * c2,
                    None => {
                        acc.insert(m, c1 * c2);
                    }
                }
            }
        }
        Self::from_map(self.nvars, den, acc)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut p = LaurentPoly {
            nvars: self.nvars,
            den: &self.den * c.denom(),
            terms: self.terms.iter().map(|(m, x)| (*m, x * c.numer())).collect(),
        };
        p.normalize();
        p
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&BigRational::from_integer(c.into()))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            den: self.den.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    /// Applies a monomial substitution `m ↦ f(m)` into a table with
    /// `target_nvars` variables.
    pub fn map_monomials(&self, target_nvars: usize, f: impl Fn(&Monomial) -> Monomial) -> Self {
        let mut acc: FxMap<Monomial, BigInt> = FxMap::default();
        for (m, c) in &self.terms {
            *acc.entry(f(m)).or_default() += c;
        }
        Self::from_map(target_nvars, self.den.clone(), acc)
    }

    /// Adams operation: every exponent multiplied by `n`.
    pub fn psi(&self, n: u32) -> Self {
        assert!(n >= 1);
        LaurentPoly {
            nvars: self.nvars,
            den: self.den.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.pow(n as i32), c.clone())).collect(),
        }
    }

    /// Sets variable `index` to 1.
    pub fn at_one(&self, index: usize) -> Self {
        self.map_monomials(self.nvars, |m| m.with_exponent(index, 0))
    }

    pub fn min_degree(&self, index: usize) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m.exponent(index)).min()
    }

    pub fn max_degree(&self, index: usize) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m.exponent(index)).max()
    }

    /// Whether any term has a nonzero exponent at `index`.
    pub fn involves(&self, index: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(index) != 0)
    }

    /// Splits by the exponent of variable `index`: `(e, coefficient with that
    /// variable removed)`, ascending in `e`.
    pub fn graded_by(&self, index: usize) -> Vec<(i32, LaurentPoly)> {
        let mut buckets: alloc::collections::BTreeMap<i32, Vec<(Monomial, BigInt)>> = Default::default();
        for (m, c) in &self.terms {
            buckets.entry(m.exponent(index)).or_default().push((m.with_exponent(index, 0), c.clone()));
        }
        buckets
            .into_iter()
            .map(|(e, mut terms)| {
                terms.sort_unstable_by_key(|a| a.0);
                let mut p = LaurentPoly { nvars: self.nvars, den: self.den.clone(), terms };
                p.normalize();
                (e, p)
            })
            .collect()
    }

    /// Rebuilds from integer terms already reduced by a common factor; the
    /// caller guarantees they are sorted, deduplicated and nonzero.
    pub(crate) fn from_sorted(nvars: usize, den: BigInt, terms: Vec<(Monomial, BigInt)>) -> Self {
        let mut p = LaurentPoly { nvars, den, terms };
        p.normalize();
        p
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for (_, c) in &mut self.terms {
            *c = -core::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).expect("variable table mismatch")
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
