use alloc::format;
use alloc::vec::Vec;

use super::{clear_log, q_pow, series_from_terms, t_pow, zstar_term, CurveParams, Mode};
use crate::algebra::{alpha, BinomialFactor, Fraction, LaurentPoly, Monomial, TruncSeries, Q, T};
use crate::partitions::{partitions_up_to, Partition};
use crate::{Error, Result};

/// `Z_X(x) = Π_i (1 − α_i x)(1 − α_i⁻¹ q x) / ((1 − x)(1 − q x))` at a monomial `x`.
pub fn zx_factor(x: &Monomial, genus: usize, nvars: usize) -> Fraction {
    let one = LaurentPoly::one(nvars);
    let qx = x.mul(&Monomial::var(Q));
    let num = (0..genus).fold(one.clone(), |acc, i| {
        let a = Monomial::var(alpha(i));
        let f1 = &one - &LaurentPoly::monomial(nvars, a.mul(x));
        let f2 = &one - &LaurentPoly::monomial(nvars, a.inv().mul(&qx));
        &(&acc * &f1) * &f2
    });
    Fraction::over_binomials(num, &[BinomialFactor::one_minus(*x), BinomialFactor::one_minus(qx)])
}

/// The `λ`-term `Π_s (−t^{a−l} q^a)^p t^{(1−g)(2l+1)} Z_X(t^h q^a)`.
pub fn alt_h_term(lambda: &Partition, cp: &CurveParams) -> Fraction {
    let nvars = cp.nvars();
    let (g, p) = (cp.genus() as i64, cp.p());
    let mut out = Fraction::one(nvars);
    for (a, l) in lambda.arm_legs() {
        let (a, l) = (a as i64, l as i64);
        let t_exp = (a - l) * p + (1 - g) * (2 * l + 1);
        let m = q_pow((a * p) as i32).mul(&t_pow(t_exp as i32));
        let x = t_pow((a + l + 1) as i32).mul(&q_pow(a as i32));
        out = zx_factor(&x, cp.genus(), nvars).mul_monomial(&m).checked_mul(&out).expect("same table");
        if p % 2 != 0 {
            out = -out;
        }
    }
    out
}

fn require_twisted(cp: &CurveParams) -> Result<()> {
    if cp.mode() != Mode::Twisted {
        return Err(Error::InvalidParams("the zeta-function series needs p > 0".into()));
    }
    Ok(())
}

/// The series `H(T,q,t)` truncated at `T^order`.
pub fn alt_h_series(cp: &CurveParams, order: usize) -> Result<TruncSeries> {
    require_twisted(cp)?;
    Ok(series_from_terms(cp.nvars(), order, |lambda| alt_h_term(lambda, cp)))
}

/// `H°_1 … H°_order`: coefficients of `(1 − t)(1 − qt) Log H`.
pub fn alt_idt(cp: &CurveParams, order: usize) -> Result<Vec<LaurentPoly>> {
    let nvars = cp.nvars();
    let one = LaurentPoly::one(nvars);
    let t = LaurentPoly::var(nvars, T);
    let qt = LaurentPoly::monomial(nvars, Monomial::var(Q).mul(&Monomial::var(T)));
    clear_log(&alt_h_series(cp, order)?, &(&(&one - &t) * &(&one - &qt)))
}

/// Checks, for every `|λ| ≤ order`, that the `λ`-term of `H` under
/// `q ↦ qt, t ↦ t⁻¹` equals the `λ`-term of `Z°`. Returns the first
/// offending partition as an error.
pub fn substitution_identity_check(cp: &CurveParams, order: usize) -> Result<()> {
    require_twisted(cp)?;
    let nvars = cp.nvars();
    for lambda in partitions_up_to(order) {
        let h = alt_h_term(&lambda, cp)
            .substitute(nvars, |m| m.with_exponent(T, m.exponent(Q) - m.exponent(T)))?;
        if h != zstar_term(&lambda, cp) {
            return Err(Error::CheckFailed(format!("substitution identity fails at λ = {lambda}")));
        }
    }
    Ok(())
}
