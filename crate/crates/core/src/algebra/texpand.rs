use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::cyclotomic::{cyclotomic, euler_phi};
use super::fraction::Fraction;
use super::monomial::T;
use super::poly::LaurentPoly;
use crate::{Error, Result};

/// Expands `x` as a power series in `t` and returns the coefficients of
/// `t⁰ … t^depth`. Denominator atoms free of `t` stay in the coefficients;
/// the others are expanded as geometric series in their `t`-positive base.
///
/// Fails if the expansion has a nonzero coefficient at a negative power of `t`.
pub fn t_expand(x: &Fraction, depth: usize) -> Result<Vec<Fraction>> {
    let nvars = x.nvars();
    let mut coefficient_atoms = Vec::new();
    let mut num = x.numerator().clone();
    let mut series_atoms = Vec::new();
    for (atom, k) in x.denominator() {
        let e = atom.base().exponent(T);
        if e == 0 {
            coefficient_atoms.push((*atom, k));
            continue;
        }
        // Reorient so the base has positive t-degree.
        let (w, unit) = if e > 0 {
            (*atom.base(), None)
        } else {
            let w = atom.base().inv();
            let d = atom.order();
            // 1/Φ_d(w⁻¹) = w^{φ(d)}/Φ_d(w), and 1/(w⁻¹ − 1) = −w/(w − 1).
            let m = w.pow(euler_phi(d) as i32);
            (w, Some(LaurentPoly::term(nvars, m, if d == 1 { -1 } else { 1 })))
        };
        for _ in 0..k {
            if let Some(u) = &unit {
                num = &num * u;
            }
            series_atoms.push((w, atom.order()));
        }
    }
    if num.is_zero() {
        return Ok((0..=depth).map(|_| Fraction::zero(nvars)).collect());
    }
    let low = num.min_degree(T).unwrap_or(0);
    // Coefficients at t-degree `low + i`, with t stripped.
    let span = (depth as i64 - low as i64).max(-1);
    let budget = if span < 0 { 0 } else { span as usize };
    let mut acc: Vec<LaurentPoly> = vec![LaurentPoly::zero(nvars); budget + 1];
    for (deg, part) in num.graded_by(T) {
        let i = (deg - low) as usize;
        if i <= budget {
            acc[i] = part.map_monomials(nvars, |m| m.with_exponent(T, 0));
        }
    }
    for (w, d) in series_atoms {
        let step = w.exponent(T) as usize;
        let stripped = w.with_exponent(T, 0);
        let inverse = inverse_series(d, budget / step);
        let mut next = vec![LaurentPoly::zero(nvars); budget + 1];
        for (j, c) in inverse.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let factor = LaurentPoly::term(nvars, stripped.pow(j as i32), BigInt::from(*c));
            for (i, a) in acc.iter().enumerate() {
                let target = i + j * step;
                if target > budget {
                    break;
                }
                if !a.is_zero() {
                    next[target] = &next[target] + &(a * &factor);
                }
            }
        }
        acc = next;
    }
    let mut out = Vec::with_capacity(depth + 1);
    for (i, c) in acc.into_iter().enumerate() {
        let deg = low as i64 + i as i64;
        if deg < 0 {
            if !c.is_zero() {
                return Err(Error::TExpansion(format!("nonzero coefficient at t^{deg}")));
            }
            continue;
        }
        out.push((deg as usize, c));
    }
    let mut result: Vec<Fraction> = (0..=depth).map(|_| Fraction::zero(nvars)).collect();
    for (deg, c) in out {
        if deg <= depth {
            result[deg] = Fraction::over_atoms(c, coefficient_atoms.iter().copied());
        }
    }
    Ok(result)
}

/// Power series of `1/Φ_d(w)` up to `w^n`.
fn inverse_series(d: u32, n: usize) -> Vec<i64> {
    let phi = cyclotomic(d);
    let c0 = phi[0];
    debug_assert!(c0 == 1 || c0 == -1);
    let mut out = Vec::with_capacity(n + 1);
    out.push(c0);
    for j in 1..=n {
        let s: i64 = (1..=j.min(phi.len() - 1)).map(|i| phi[i] * out[j - i]).sum();
        out.push(-c0 * s);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cyclotomic::BinomialFactor;
    use crate::algebra::monomial::{Monomial, Q};

    const NV: usize = 2;

    fn t() -> Monomial {
        Monomial::var(T)
    }

    fn q() -> Monomial {
        Monomial::var(Q)
    }

    fn c(v: i64) -> Fraction {
        LaurentPoly::constant(NV, v).into()
    }

    #[test]
    fn inverse_series_small() {
        assert_eq!(inverse_series(1, 4), vec![-1, -1, -1, -1, -1]);
        assert_eq!(inverse_series(2, 4), vec![1, -1, 1, -1, 1]);
        assert_eq!(inverse_series(3, 5), vec![1, -1, 0, 1, -1, 0]);
    }

    #[test]
    fn geometric() {
        let x = Fraction::over_binomials(LaurentPoly::one(NV), &[BinomialFactor::one_minus(t())]);
        assert_eq!(t_expand(&x, 4).unwrap(), vec![c(1); 5]);
        // 1/(1 − t⁻¹) = −t/(1 − t)
        let y = Fraction::over_binomials(LaurentPoly::one(NV), &[BinomialFactor::one_minus(t().inv())]);
        assert_eq!(t_expand(&y, 3).unwrap(), vec![c(0), c(-1), c(-1), c(-1)]);
    }

    #[test]
    fn mixed_atoms() {
        // 1/((1 − q)(1 − qt²)) = Σ q^k t^{2k} / (1 − q)
        let x = Fraction::over_binomials(
            LaurentPoly::one(NV),
            &[BinomialFactor::one_minus(q()), BinomialFactor::one_minus(q().mul(&t().pow(2)))],
        );
        let got = t_expand(&x, 4).unwrap();
        let inv = Fraction::over_binomials(LaurentPoly::one(NV), &[BinomialFactor::one_minus(q())]);
        assert_eq!(got[0], inv);
        assert!(got[1].is_zero() && got[3].is_zero());
        assert_eq!(got[4], inv.mul_monomial(&q().pow(2)));
    }

    #[test]
    fn negative_degree_rejected() {
        let x: Fraction = LaurentPoly::monomial(NV, t().inv()).into();
        assert!(matches!(t_expand(&x, 2), Err(Error::TExpansion(_))));
    }

    #[test]
    fn cancellation_through_low_degree() {
        let num = &LaurentPoly::monomial(NV, t().inv()) - &LaurentPoly::one(NV);
        let x = Fraction::over_binomials(num, &[BinomialFactor::one_minus(t())]);
        // (t⁻¹ − 1)/(1 − t) = t⁻¹
        assert!(t_expand(&x, 2).is_err());
        assert_eq!(t_expand(&x.mul_monomial(&t()), 2).unwrap(), vec![c(1), c(0), c(0)]);
    }

    #[test]
    fn expansion_matches_product() {
        // (1 + t)/((1 − t)(1 − qt)) against the series product.
        let num = &LaurentPoly::one(NV) + &LaurentPoly::monomial(NV, t());
        let x = Fraction::over_binomials(
            num,
            &[BinomialFactor::one_minus(t()), BinomialFactor::one_minus(q().mul(&t()))],
        );
        let got = t_expand(&x, 5).unwrap();
        // Check by multiplying back: Σ got_k t^k · (1 − t)(1 − qt) ≡ 1 + t mod t⁶.
        let den = &(&LaurentPoly::one(NV) - &LaurentPoly::monomial(NV, t()))
            * &(&LaurentPoly::one(NV) - &LaurentPoly::monomial(NV, q().mul(&t())));
        let series = got
            .iter()
            .enumerate()
            .fold(LaurentPoly::zero(NV), |acc, (k, f)| &acc + &f.to_poly().unwrap().mul_monomial(&t().pow(k as i32)));
        let prod = &series * &den;
        for (deg, part) in prod.graded_by(T) {
            if deg <= 5 {
                let expected = LaurentPoly::constant(NV, if deg <= 1 { 1 } else { 0 });
                assert_eq!(part, expected, "t^{deg}");
            }
        }
    }
}
