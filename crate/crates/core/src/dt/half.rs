use alloc::format;
use alloc::string::String;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::algebra::{format_poly, LaurentPoly, Monomial, VarTable, Q};
use crate::{Error, Result};

/// `sign · q^{half_exp/2} · body`, so that half-integral powers of `q` never
/// reach a [`Monomial`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfPowerValue {
    half_exp: i64,
    sign: i8,
    body: LaurentPoly,
}

impl HalfPowerValue {
    /// Normalizes so the leading coefficient of `body` is positive.
    pub fn new(half_exp: i64, sign: i8, body: LaurentPoly) -> Self {
        assert!(sign == 1 || sign == -1);
        let negative = body.terms().last().is_some_and(|(_, c)| c.is_negative());
        if negative {
            HalfPowerValue { half_exp, sign: -sign, body: -body }
        } else {
            HalfPowerValue { half_exp, sign, body }
        }
    }

    pub fn half_exp(&self) -> i64 {
        self.half_exp
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn body(&self) -> &LaurentPoly {
        &self.body
    }

    /// Multiplies by `q^{k/2}`.
    pub fn mul_half_power(&self, k: i64) -> Self {
        HalfPowerValue { half_exp: self.half_exp + k, ..self.clone() }
    }

    /// `sign · body`, dropping the half power.
    pub fn signed_body(&self) -> LaurentPoly {
        if self.sign < 0 {
            -self.body.clone()
        } else {
            self.body.clone()
        }
    }

    /// The value as a Laurent polynomial, if the power of `q` is integral.
    pub fn to_poly(&self) -> Option<LaurentPoly> {
        (self.half_exp % 2 == 0)
            .then(|| self.signed_body().mul_monomial(&Monomial::var(Q).pow((self.half_exp / 2) as i32)))
    }

    /// Evaluates at `q = q0` when the power of `q` is integral and `body`
    /// involves no variable other than `q`.
    pub fn eval_at(&self, q0: &BigRational) -> Result<BigRational> {
        let poly = self
            .to_poly()
            .ok_or_else(|| Error::InvalidParams(format!("q^({}/2) is not rational", self.half_exp)))?;
        eval_q(&poly, q0)
    }

    pub fn display(&self, table: &VarTable) -> String {
        let sign = if self.sign < 0 { "-" } else { "" };
        let power = match self.half_exp {
            0 => String::new(),
            k if k % 2 == 0 => format!("q^{} * ", k / 2),
            k => format!("q^({k}/2) * "),
        };
        format!("{sign}{power}({})", format_poly(&self.body, table))
    }
}

/// Exact value of a polynomial in `q` alone at `q = q0`.
pub(crate) fn eval_q(poly: &LaurentPoly, q0: &BigRational) -> Result<BigRational> {
    let mut acc = BigRational::zero();
    for (m, c) in poly.terms() {
        if m.with_exponent(Q, 0) != Monomial::ONE {
            return Err(Error::LeftoverVariable(format!("{m:?}")));
        }
        let e = m.exponent(Q);
        let base = if e >= 0 { q0.clone() } else { q0.recip() };
        acc += c * num_traits::pow(base, e.unsigned_abs() as usize);
    }
    Ok(acc)
}

