use alloc::collections::BTreeMap;
use alloc::string::String;
use core::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Inv;

use super::cyclotomic::{div_atom, BinomialFactor, CycloAtom};
use super::monomial::{Monomial, VarTable};
use super::poly::LaurentPoly;
use crate::{Error, Result};

/// A Laurent polynomial over a product of cyclotomic atoms.
///
/// Sums use the least common multiple of the atom multisets and then cancel
/// every atom that divides the numerator, so fractions stay reduced.
/// Equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct Fraction {
    num: LaurentPoly,
    den: BTreeMap<CycloAtom, u32>,
}

impl Fraction {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly::zero(nvars).into()
    }

    pub fn one(nvars: usize) -> Self {
        LaurentPoly::one(nvars).into()
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    /// `num / Π factors`.
    pub fn over_binomials(num: LaurentPoly, factors: &[BinomialFactor]) -> Self {
        let nvars = num.nvars();
        let mut f = Fraction::from(num);
        for b in factors {
            let (unit, atoms) = b.decompose(nvars);
            f.divide_by_unit(&unit);
            for a in atoms {
                *f.den.entry(a).or_insert(0) += 1;
            }
        }
        f
    }

    /// `num / Π atoms^k`, reduced.
    pub fn over_atoms(num: LaurentPoly, atoms: impl IntoIterator<Item = (CycloAtom, u32)>) -> Self {
        let mut f = Fraction::from(num);
        for (a, k) in atoms {
            *f.den.entry(a).or_insert(0) += k;
        }
        f.den.retain(|_, k| *k > 0);
        f.reduce();
        f
    }

    fn divide_by_unit(&mut self, unit: &LaurentPoly) {
        let (m, c) = unit.as_term().expect("units are single terms");
        self.num = self.num.mul_monomial(&m.inv()).scale(&c.inv());
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> impl Iterator<Item = (&CycloAtom, u32)> {
        self.den.iter().map(|(a, k)| (a, *k))
    }

    pub fn denominator_poly(&self) -> LaurentPoly {
        self.den
            .iter()
            .fold(LaurentPoly::one(self.nvars()), |acc, (a, k)| &acc * &a.to_poly(self.nvars()).pow(*k))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    /// Cancels every denominator atom that divides the numerator.
    pub fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        for (atom, mult) in self.den.iter_mut() {
            while *mult > 0 {
                match div_atom(&self.num, atom) {
                    Some(q) => {
                        self.num = q;
                        *mult -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|_, k| *k > 0);
    }

    /// Clears the denominator exactly, failing if the numerator is not
    /// divisible by it.
    pub fn to_poly(&self) -> Result<LaurentPoly> {
        let mut num = self.num.clone();
        for (atom, mult) in &self.den {
            for _ in 0..*mult {
                num = div_atom(&num, atom).ok_or_else(|| {
                    Error::NotDivisible(alloc::format!("Phi_{}{:?}", atom.order(), &atom.base().exponents()[..]))
                })?;
            }
        }
        Ok(num)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.nvars() == other.nvars() {
            Ok(())
        } else {
            Err(Error::VariableMismatch { left: self.nvars(), right: other.nvars() })
        }
    }

    /// Numerator lifted to `lcm` of the denominators.
    fn lift(&self, lcm: &BTreeMap<CycloAtom, u32>) -> LaurentPoly {
        let mut num = self.num.clone();
        for (atom, &k) in lcm {
            let have = self.den.get(atom).copied().unwrap_or(0);
            if k > have {
                num = &num * &atom.to_poly(self.nvars()).pow(k - have);
            }
        }
        num
    }

    fn lcm(&self, other: &Self) -> BTreeMap<CycloAtom, u32> {
        let mut l = self.den.clone();
        for (a, &k) in &other.den {
            let e = l.entry(*a).or_insert(0);
            *e = (*e).max(k);
        }
        l
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let l = self.lcm(other);
        let mut f = Fraction { num: &self.lift(&l) + &other.lift(&l), den: l };
        f.reduce();
        Ok(f)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars()));
        }
        let mut den = self.den.clone();
        for (a, &k) in &other.den {
            *den.entry(*a).or_insert(0) += k;
        }
        Ok(Fraction { num: &self.num * &other.num, den })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut f = Fraction { num: self.num.scale(c), den: self.den.clone() };
        if f.num.is_zero() {
            f.den.clear();
        }
        f
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        let mut f = Fraction { num: &self.num * p, den: self.den.clone() };
        f.reduce();
        f
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Fraction { num: self.num.mul_monomial(m), den: self.den.clone() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Fraction::one(self.nvars());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Adams operation: every variable raised to the `n`-th power.
    pub fn psi(&self, n: u32) -> Self {
        if n == 1 {
            return self.clone();
        }
        let nvars = self.nvars();
        let mut f = Fraction::from(self.num.psi(n));
        for (atom, &k) in &self.den {
            let (unit, atoms) = atom.psi(n, nvars);
            for _ in 0..k {
                f.divide_by_unit(&unit);
            }
            for a in atoms {
                *f.den.entry(a).or_insert(0) += k;
            }
        }
        f
    }

    /// Monomial substitution `m ↦ f(m)` into a table of `target_nvars`
    /// variables. Fails if a denominator atom maps to zero.
    pub fn substitute(&self, target_nvars: usize, f: impl Fn(&Monomial) -> Monomial) -> Result<Self> {
        let mut out = Fraction::from(self.num.map_monomials(target_nvars, &f));
        for (atom, &k) in &self.den {
            let (unit, atoms) = atom.substituted(&f(atom.base()), target_nvars)?;
            for _ in 0..k {
                out.divide_by_unit(&unit);
            }
            for a in atoms {
                *out.den.entry(a).or_insert(0) += k;
            }
        }
        out.reduce();
        Ok(out)
    }

    pub fn checked_eq(&self, other: &Self) -> Result<bool> {
        self.check(other)?;
        let l = self.lcm(other);
        Ok(self.lift(&l) == other.lift(&l))
    }

    pub fn display(&self, table: &VarTable) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        let _ = write!(s, "({})", super::format_poly(&self.num, table));
        for (a, k) in &self.den {
            let _ = write!(s, " / {}", a.display(table));
            if *k > 1 {
                let _ = write!(s, "^{k}");
            }
        }
        s
    }
}

impl From<LaurentPoly> for Fraction {
    fn from(num: LaurentPoly) -> Self {
        Fraction { num, den: BTreeMap::new() }
    }
}

impl PartialEq for Fraction {
    fn eq(&self, other: &Self) -> bool {
        self.checked_eq(other).unwrap_or(false)
    }
}

impl Eq for Fraction {}

impl Neg for Fraction {
    type Output = Fraction;
    fn neg(self) -> Fraction {
        Fraction { num: -self.num, den: self.den }
    }
}

impl Neg for &Fraction {
    type Output = Fraction;
    fn neg(self) -> Fraction {
        -self.clone()
    }
}

impl Add<&Fraction> for &Fraction {
    type Output = Fraction;
    fn add(self, rhs: &Fraction) -> Fraction {
        self.checked_add(rhs).expect("variable table mismatch")
    }
}

impl Sub<&Fraction> for &Fraction {
    type Output = Fraction;
    fn sub(self, rhs: &Fraction) -> Fraction {
        self.checked_add(&-rhs).expect("variable table mismatch")
    }
}

impl Mul<&Fraction> for &Fraction {
    type Output = Fraction;
    fn mul(self, rhs: &Fraction) -> Fraction {
        self.checked_mul(rhs).expect("variable table mismatch")
    }
}

impl Add for Fraction {
    type Output = Fraction;
    fn add(self, rhs: Fraction) -> Fraction {
        &self + &rhs
    }
}

impl Sub for Fraction {
    type Output = Fraction;
    fn sub(self, rhs: Fraction) -> Fraction {
        &self - &rhs
    }
}

impl Mul for Fraction {
    type Output = Fraction;
    fn mul(self, rhs: Fraction) -> Fraction {
        &self * &rhs
    }
}

/// `1 / Π factors`.
pub fn inverse_of_binomials(nvars: usize, factors: &[BinomialFactor]) -> Fraction {
    Fraction::over_binomials(LaurentPoly::one(nvars), factors)
}

pub(crate) fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::monomial::{alpha, Q, T};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    const NV: usize = 3;

    fn var(i: usize) -> LaurentPoly {
        LaurentPoly::var(NV, i)
    }

    fn one() -> LaurentPoly {
        LaurentPoly::one(NV)
    }

    #[test]
    fn opposite_fractions_cancel() {
        let b = BinomialFactor::new(Monomial::var(Q), Monomial::ONE);
        let a = inverse_of_binomials(NV, &[b]);
        let sum = &a + &(-&a);
        assert!(sum.is_zero());
        assert!(sum.is_polynomial());
    }

    #[test]
    fn multiplying_back_the_denominator_clears_it() {
        let b = BinomialFactor::one_minus(Monomial::var(T));
        let a = inverse_of_binomials(NV, &[b]);
        let p = a.mul_poly(&(&one() - &var(T)));
        assert!(p.is_polynomial());
        assert_eq!(p.to_poly().unwrap(), one());
    }

    #[test]
    fn partial_fractions_recombine() {
        // 1/(1 − t) + 1/(1 + t) = 2/(1 − t²)
        let t = Monomial::var(T);
        let a = inverse_of_binomials(NV, &[BinomialFactor::one_minus(t)]);
        let b = Fraction::over_atoms(one(), [(CycloAtom::new(t, 2), 1)]);
        assert_eq!(b.denominator_poly(), &one() + &var(T));
        let direct = Fraction::over_binomials(LaurentPoly::constant(NV, 2), &[BinomialFactor::one_minus(t.pow(2))]);
        let sum = &a + &b;
        assert_eq!(sum, direct);
        assert_eq!(sum.denominator().count(), 2);
    }

    #[test]
    fn adams_on_fraction() {
        // ψ₂(1/(q − t)) = 1/(q² − t²)
        let f = inverse_of_binomials(NV, &[BinomialFactor::new(Monomial::var(Q), Monomial::var(T))]);
        let g = inverse_of_binomials(NV, &[BinomialFactor::new(Monomial::var(Q).pow(2), Monomial::var(T).pow(2))]);
        assert_eq!(f.psi(2), g);
        let m = Monomial::from_exponents(&[1, 1, -1]);
        let x = Fraction::from(LaurentPoly::monomial(NV, m));
        assert_eq!(x.psi(2).to_poly().unwrap(), LaurentPoly::monomial(NV, m.pow(2)));
    }

    #[test]
    fn substitution_hitting_zero_fails() {
        let f = inverse_of_binomials(NV, &[BinomialFactor::one_minus(Monomial::var(T))]);
        assert_eq!(f.substitute(NV, |m| m.with_exponent(T, 0)).unwrap_err(), Error::ZeroDenominator);
        let g = f.substitute(NV, |m| m.with_exponent(T, 2 * m.exponent(T))).unwrap();
        assert_eq!(g, f.psi(2).substitute(NV, |m| m.with_exponent(Q, m.exponent(Q) / 2)).unwrap());
    }

    #[test]
    fn clearing_fails_loudly() {
        let f = Fraction::over_binomials(var(Q), &[BinomialFactor::one_minus(Monomial::var(alpha(0)))]);
        assert!(matches!(f.to_poly(), Err(Error::NotDivisible(_))));
    }

    fn small_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec(((0i32..3, 0i32..3, -1i32..2), -3i64..4), 1..4).prop_map(|terms| {
            LaurentPoly::from_terms(
                NV,
                terms.into_iter().map(|((a, b, c), k)| (Monomial::from_exponents(&[a, b, c]), BigInt::from(k))),
            )
        })
    }

    fn binomial() -> impl Strategy<Value = BinomialFactor> {
        ((0i32..3, 0i32..3, -1i32..2), (0i32..3, 0i32..3, -1i32..2))
            .prop_filter("distinct", |(a, b)| a != b)
            .prop_map(|((a, b, c), (d, e, f))| {
                BinomialFactor::new(Monomial::from_exponents(&[a, b, c]), Monomial::from_exponents(&[d, e, f]))
            })
    }

    fn fraction() -> impl Strategy<Value = Fraction> {
        (small_poly(), prop::collection::vec(binomial(), 0..3))
            .prop_map(|(p, bs)| Fraction::over_binomials(p, &bs))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn ring_axioms(a in fraction(), b in fraction(), c in fraction()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
        }
    }

    proptest! {
        #[test]
        fn adams_is_a_ring_homomorphism(a in fraction(), b in fraction(), n in 1u32..4) {
            prop_assert_eq!((&a + &b).psi(n), &a.psi(n) + &b.psi(n));
            prop_assert_eq!((&a * &b).psi(n), &a.psi(n) * &b.psi(n));
        }

        #[test]
        fn adams_composition(a in fraction()) {
            prop_assert_eq!(a.psi(3).psi(2), a.psi(6));
            prop_assert_eq!(a.psi(2).psi(3), a.psi(6));
            prop_assert_eq!(a.psi(1), a.clone());
        }

        #[test]
        fn reduced_sum_matches_expanded_denominators(a in fraction(), b in fraction()) {
            // Independent route: compare (a + b)·D_a·D_b with a·D_a·D_b + b·D_a·D_b as polynomials.
            let da = a.denominator_poly();
            let db = b.denominator_poly();
            let lhs = (&a + &b).mul_poly(&(&da * &db)).to_poly().unwrap();
            let rhs = &(&a.numerator().clone() * &db) + &(&b.numerator().clone() * &da);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
