use alloc::vec::Vec;

use num_rational::BigRational;

use super::fraction::{rational, Fraction};
use super::poly::LaurentPoly;
use crate::util::{divisors, mobius, par_map};
use crate::{Error, Result};

/// A power series `c₀ + c₁T + … + c_R T^R` in an external variable `T`,
/// truncated at order `R`, with [`Fraction`] coefficients.
///
/// Adams operations act on the coefficients and send `T ↦ Tⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<Fraction>,
}

impl TruncSeries {
    pub fn zero(order: usize, nvars: usize) -> Self {
        TruncSeries { coeffs: (0..=order).map(|_| Fraction::zero(nvars)).collect() }
    }

    pub fn one(order: usize, nvars: usize) -> Self {
        let mut s = Self::zero(order, nvars);
        s.coeffs[0] = Fraction::one(nvars);
        s
    }

    /// Pads with zeros or drops coefficients past `order`. Panics on an empty
    /// vector.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<Fraction>) -> Self {
        let nvars = coeffs.first().expect("at least one coefficient").nvars();
        coeffs.truncate(order + 1);
        while coeffs.len() < order + 1 {
            coeffs.push(Fraction::zero(nvars));
        }
        TruncSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn nvars(&self) -> usize {
        self.coeffs[0].nvars()
    }

    pub fn coeff(&self, k: usize) -> &Fraction {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Fraction] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Fraction> {
        self.coeffs
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        if self.nvars() != other.nvars() {
            return Err(Error::VariableMismatch { left: self.nvars(), right: other.nvars() });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(TruncSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let order = self.order();
        let coeffs = (0..=order)
            .map(|k| {
                (0..=k)
                    .filter(|&j| !self.coeffs[j].is_zero() && !other.coeffs[k - j].is_zero())
                    .map(|j| &self.coeffs[j] * &other.coeffs[k - j])
                    .fold(Fraction::zero(self.nvars()), |acc, x| &acc + &x)
            })
            .collect();
        Ok(TruncSeries { coeffs })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect() }
    }

    /// Multiplies every coefficient by `p`.
    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|x| x.mul_poly(p)).collect() }
    }

    /// `ψ_n`: coefficient of `T^d` moves to `T^{nd}` under `ψ_n`.
    pub fn psi(&self, n: u32) -> Self {
        assert!(n >= 1);
        let order = self.order();
        let mut out = Self::zero(order, self.nvars());
        for (d, c) in self.coeffs.iter().enumerate() {
            let target = d * n as usize;
            if target > order {
                break;
            }
            out.coeffs[target] = c.psi(n);
        }
        out
    }

    /// Ordinary logarithm of a series with constant term one.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != Fraction::one(self.nvars()) {
            return Err(Error::ConstantTermNotOne);
        }
        // k L_k = k B_k − Σ_{j<k} j L_j B_{k−j}
        let order = self.order();
        let nvars = self.nvars();
        let mut logs: Vec<Fraction> = alloc::vec![Fraction::zero(nvars)];
        for k in 1..=order {
            let js: Vec<usize> = (1..k).filter(|&j| !logs[j].is_zero() && !self.coeffs[k - j].is_zero()).collect();
            let products = par_map(&js, |&j| (&logs[j] * &self.coeffs[k - j]).scale(&rational(j as i64, 1)));
            let correction = sum(nvars, products);
            let lk = &self.coeffs[k] - &correction.scale(&rational(1, k as i64));
            logs.push(lk);
        }
        Ok(TruncSeries { coeffs: logs })
    }

    /// Ordinary exponential of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstantTerm);
        }
        // k E_k = Σ_{j=1}^{k} j S_j E_{k−j}
        let order = self.order();
        let nvars = self.nvars();
        let mut exps: Vec<Fraction> = alloc::vec![Fraction::one(nvars)];
        for k in 1..=order {
            let js: Vec<usize> = (1..=k).filter(|&j| !self.coeffs[j].is_zero() && !exps[k - j].is_zero()).collect();
            let products = par_map(&js, |&j| (&self.coeffs[j] * &exps[k - j]).scale(&rational(j as i64, 1)));
            exps.push(sum(nvars, products).scale(&rational(1, k as i64)));
        }
        Ok(TruncSeries { coeffs: exps })
    }

    /// `Exp[A] = exp(Σ_{n≥1} ψ_n(A)/n)`.
    pub fn pleth_exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstantTerm);
        }
        let order = self.order();
        let mut total = Self::zero(order, self.nvars());
        for n in 1..=order.max(1) {
            total = total.checked_add(&self.psi(n as u32).scale(&rational(1, n as i64)))?;
        }
        total.exp()
    }

    /// `Log[B] = Σ_{n≥1} μ(n)/n · ψ_n(log B)`.
    pub fn pleth_log(&self) -> Result<Self> {
        let logs = self.log()?;
        let order = self.order();
        let nvars = self.nvars();
        let ranks: Vec<usize> = (1..=order).collect();
        let mut coeffs = alloc::vec![Fraction::zero(nvars)];
        coeffs.extend(par_map(&ranks, |&r| {
            let terms: Vec<Fraction> = divisors(r as u64)
                .into_iter()
                .filter_map(|n| {
                    let mu = mobius(n);
                    let inner = &logs.coeffs[r / n as usize];
                    (mu != 0 && !inner.is_zero()).then(|| inner.psi(n as u32).scale(&rational(mu as i64, n as i64)))
                })
                .collect();
            sum(nvars, terms)
        }));
        Ok(TruncSeries { coeffs })
    }
}

/// Balanced sum, so intermediate denominators stay as small as the inputs allow.
pub(crate) fn sum(nvars: usize, mut items: Vec<Fraction>) -> Fraction {
    if items.is_empty() {
        return Fraction::zero(nvars);
    }
    while items.len() > 1 {
        let mut next = Vec::with_capacity(items.len().div_ceil(2));
        let mut it = items.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(&a + &b),
                None => next.push(a),
            }
        }
        items = next;
    }
    items.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cyclotomic::BinomialFactor;
    use crate::algebra::monomial::{Monomial, Q, T};
    use proptest::prelude::*;

    const NV: usize = 2;

    fn series(order: usize, coeffs: &[Fraction]) -> TruncSeries {
        TruncSeries::from_coeffs(order, coeffs.to_vec())
    }

    fn poly(p: LaurentPoly) -> Fraction {
        p.into()
    }

    fn int(c: i64) -> Fraction {
        LaurentPoly::constant(NV, c).into()
    }

    #[test]
    fn exp_of_t_is_geometric() {
        let a = series(6, &[int(0), int(1)]);
        let e = a.pleth_exp().unwrap();
        assert!(e.coeffs().iter().all(|c| *c == int(1)));
        assert_eq!(e.pleth_log().unwrap(), a);
    }

    #[test]
    fn exp_of_one_plus_q() {
        // Exp[(1 + q)T] = 1/((1 − T)(1 − qT)): coefficient of T^k is 1 + q + … + q^k.
        let q = LaurentPoly::var(NV, Q);
        let a = series(5, &[int(0), poly(&LaurentPoly::one(NV) + &q)]);
        let e = a.pleth_exp().unwrap();
        for k in 0..=5u32 {
            let expected = (0..=k).fold(LaurentPoly::zero(NV), |acc, i| &acc + &q.pow(i));
            assert_eq!(e.coeff(k as usize).to_poly().unwrap(), expected);
        }
    }

    #[test]
    fn exp_of_zero_and_errors() {
        let z = TruncSeries::zero(4, NV);
        assert_eq!(z.pleth_exp().unwrap(), TruncSeries::one(4, NV));
        assert_eq!(TruncSeries::one(4, NV).pleth_exp(), Err(Error::NonZeroConstantTerm));
        assert_eq!(z.pleth_log(), Err(Error::ConstantTermNotOne));
    }

    #[test]
    fn log_of_one_plus_t() {
        // Log[1 + T] = T − T² + 0·T³ + 0·T⁴ (Log[1+T] = Log[(1−T²)/(1−T)]).
        let b = series(4, &[int(1), int(1)]);
        let l = b.pleth_log().unwrap();
        assert_eq!(l, series(4, &[int(0), int(1), int(-1), int(0), int(0)]));
    }

    #[test]
    fn adams_on_series_moves_degrees() {
        let q = LaurentPoly::var(NV, Q);
        let s = series(5, &[int(1), poly(q.clone()), int(3)]);
        let s2 = s.psi(2);
        assert_eq!(*s2.coeff(2), poly(q.psi(2)));
        assert_eq!(*s2.coeff(4), int(3));
        assert!(s2.coeff(1).is_zero());
        assert_eq!(s.psi(2).psi(3), s.psi(6));
    }

    #[test]
    fn order_mismatch() {
        let a = TruncSeries::zero(3, NV);
        let b = TruncSeries::zero(4, NV);
        assert_eq!(a.checked_add(&b), Err(Error::OrderMismatch(3, 4)));
    }

    fn coefficient() -> impl Strategy<Value = Fraction> {
        (prop::collection::vec(((0i32..2, 0i32..2), -2i64..3), 0..3), prop::bool::ANY).prop_map(|(terms, denom)| {
            let p = LaurentPoly::from_terms(
                NV,
                terms.into_iter().map(|((a, b), c)| (Monomial::from_exponents(&[a, b]), c.into())),
            );
            if denom {
                Fraction::over_binomials(p, &[BinomialFactor::new(Monomial::var(Q), Monomial::var(T))])
            } else {
                p.into()
            }
        })
    }

    fn small_series(order: usize) -> impl Strategy<Value = TruncSeries> {
        prop::collection::vec(coefficient(), order).prop_map(move |mut cs| {
            cs.insert(0, Fraction::zero(NV));
            TruncSeries::from_coeffs(order, cs)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn exp_log_round_trip(a in small_series(5)) {
            let e = a.pleth_exp().unwrap();
            prop_assert_eq!(e.pleth_log().unwrap(), a.clone());
            let l = a.checked_add(&TruncSeries::one(5, NV)).unwrap().pleth_log().unwrap();
            prop_assert_eq!(l.pleth_exp().unwrap(), a.checked_add(&TruncSeries::one(5, NV)).unwrap());
        }

        #[test]
        fn exp_is_additive(a in small_series(5), b in small_series(5)) {
            let lhs = a.checked_add(&b).unwrap().pleth_exp().unwrap();
            let rhs = a.pleth_exp().unwrap().checked_mul(&b.pleth_exp().unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
