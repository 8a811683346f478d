//! The hook-product series `Z°`, its integral invariants `IDT°_r`, the
//! invariants `Ω_r`, moduli volumes, the canonical-bundle mode and the
//! zeta-function formulation.

mod alt;
mod half;

use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{alpha, BinomialFactor, Fraction, LaurentPoly, Monomial, TruncSeries, VarTable, Q, T};
use crate::partitions::{enumerate_partitions, Partition};
use crate::util::{gcd, par_map};
use crate::{Error, Result};

pub use alt::{alt_h_series, alt_h_term, alt_idt, substitution_identity_check, zx_factor};
pub use half::HalfPowerValue;

/// Which line bundle the Higgs field is twisted by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `deg L = ℓ > 2g − 2`.
    Twisted,
    /// `L` is the canonical bundle.
    Canonical,
}

/// Genus and twist of the problem, with `p = ℓ − (2g − 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CurveParams {
    genus: usize,
    ell: i64,
    mode: Mode,
}

impl CurveParams {
    pub fn twisted(genus: usize, ell: i64) -> Result<Self> {
        let cp = CurveParams { genus, ell, mode: Mode::Twisted };
        if cp.p() <= 0 {
            return Err(Error::InvalidParams(format!(
                "twisted mode needs p = ℓ − (2g − 2) > 0, got p = {}",
                cp.p()
            )));
        }
        cp.check_arity()?;
        Ok(cp)
    }

    pub fn canonical(genus: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidParams("canonical mode needs g ≥ 1".into()));
        }
        let cp = CurveParams { genus, ell: 2 * genus as i64 - 2, mode: Mode::Canonical };
        cp.check_arity()?;
        Ok(cp)
    }

    fn check_arity(&self) -> Result<()> {
        VarTable::new(self.genus).map(|_| ())
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn ell(&self) -> i64 {
        self.ell
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn p(&self) -> i64 {
        self.ell - (2 * self.genus as i64 - 2)
    }

    /// Variables `q, t, a1 … ag`.
    pub fn table(&self) -> VarTable {
        VarTable::new(self.genus).expect("arity checked at construction")
    }

    pub fn nvars(&self) -> usize {
        2 + self.genus
    }
}

fn q_pow(a: i32) -> Monomial {
    Monomial::var(Q).pow(a)
}

fn t_pow(a: i32) -> Monomial {
    Monomial::var(T).pow(a)
}

/// `N_λ(u,q,t) = Π_s (q^a − u t^{l+1})(q^{a+1} − u⁻¹ t^l)`, with `q` and `t`
/// read from the given variable slots.
pub fn n_lambda_in(lambda: &Partition, u: &Monomial, q: usize, t: usize, nvars: usize) -> LaurentPoly {
    let qm = Monomial::var(q);
    let tm = Monomial::var(t);
    let mut out = LaurentPoly::one(nvars);
    for (a, l) in lambda.arm_legs() {
        let (a, l) = (a as i32, l as i32);
        let first = LaurentPoly::monomial(nvars, qm.pow(a)) - LaurentPoly::monomial(nvars, u.mul(&tm.pow(l + 1)));
        let second = LaurentPoly::monomial(nvars, qm.pow(a + 1)) - LaurentPoly::monomial(nvars, u.inv().mul(&tm.pow(l)));
        out = &(&out * &first) * &second;
    }
    out
}

/// `N_λ(u,q,t)` over the standard `q, t` slots.
pub fn n_lambda(lambda: &Partition, u: &Monomial, nvars: usize) -> LaurentPoly {
    n_lambda_in(lambda, u, Q, T, nvars)
}

/// The binomial factors of `N_λ(1,q,t)`.
pub fn n_lambda_factors(lambda: &Partition) -> Vec<BinomialFactor> {
    let mut out = Vec::with_capacity(2 * lambda.weight());
    for (a, l) in lambda.arm_legs() {
        let (a, l) = (a as i32, l as i32);
        out.push(BinomialFactor::new(q_pow(a), t_pow(l + 1)));
        out.push(BinomialFactor::new(q_pow(a + 1), t_pow(l)));
    }
    out
}

/// `Π_i N_λ(α_i⁻¹, q, t)`.
fn alpha_numerator(lambda: &Partition, genus: usize, nvars: usize) -> LaurentPoly {
    if genus == 0 {
        return LaurentPoly::one(nvars);
    }
    let first = n_lambda(lambda, &Monomial::var(alpha(0)).inv(), nvars);
    let mut out = first.clone();
    for i in 1..genus {
        let moved = first.map_monomials(nvars, |m| {
            m.with_exponent(alpha(0), 0).with_exponent(alpha(i), m.exponent(alpha(0)))
        });
        out = &out * &moved;
    }
    out
}

/// The coefficient `((−1)^{|λ|} q^{n(λ')} t^{n(λ)})^p Π_i N_λ(α_i⁻¹)/N_λ(1)` of
/// `T^{|λ|}` contributed by `λ`.
pub fn zstar_term(lambda: &Partition, cp: &CurveParams) -> Fraction {
    let nvars = cp.nvars();
    let p = cp.p();
    let sign = if p % 2 != 0 && lambda.weight() % 2 == 1 { -1 } else { 1 };
    let pre = q_pow((lambda.conjugate().n_stat() as i64 * p) as i32).mul(&t_pow((lambda.n_stat() as i64 * p) as i32));
    let num = alpha_numerator(lambda, cp.genus, nvars).mul_monomial(&pre).scale_int(sign);
    Fraction::over_binomials(num, &n_lambda_factors(lambda))
}

/// `Z°` truncated at `T^order`.
pub fn zstar_series(cp: &CurveParams, order: usize) -> TruncSeries {
    series_from_terms(cp.nvars(), order, |lambda| zstar_term(lambda, cp))
}

pub(crate) fn series_from_terms(
    nvars: usize,
    order: usize,
    term: impl Fn(&Partition) -> Fraction + Sync + Send,
) -> TruncSeries {
    let partitions: Vec<Partition> = (1..=order).flat_map(enumerate_partitions).collect();
    let terms = par_map(&partitions, &term);
    let mut by_weight: Vec<Vec<Fraction>> = (0..=order).map(|_| Vec::new()).collect();
    for (lambda, t) in partitions.iter().zip(terms) {
        by_weight[lambda.weight()].push(t);
    }
    let mut coeffs = alloc::vec![Fraction::one(nvars)];
    coeffs.extend(by_weight.into_iter().skip(1).map(|ts| crate::algebra::sum(nvars, ts)));
    TruncSeries::from_coeffs(order, coeffs)
}

/// Multiplies each `T^r` coefficient of `Log(series)` by `prefactor` and clears
/// it to a Laurent polynomial with integer coefficients.
pub(crate) fn clear_log(series: &TruncSeries, prefactor: &LaurentPoly) -> Result<Vec<LaurentPoly>> {
    let log = series.pleth_log()?;
    let ranks: Vec<usize> = (1..=series.order()).collect();
    par_map(&ranks, |&r| {
        let c = log.coeff(r).mul_poly(prefactor);
        let p = c.to_poly().map_err(|e| Error::Integrality { rank: r, detail: format!("{e}") })?;
        if !p.is_integral() {
            return Err(Error::Integrality { rank: r, detail: format!("denominator {}", p.denominator()) });
        }
        Ok(p)
    })
    .into_iter()
    .collect()
}

/// `IDT°_1 … IDT°_order`: coefficients of `(q − 1)(1 − t) Log Z°`.
pub fn idt_star(cp: &CurveParams, order: usize) -> Result<Vec<LaurentPoly>> {
    let nvars = cp.nvars();
    let q = LaurentPoly::var(nvars, Q);
    let t = LaurentPoly::var(nvars, T);
    let one = LaurentPoly::one(nvars);
    clear_log(&zstar_series(cp, order), &(&(&q - &one) * &(&one - &t)))
}

/// `IDT°_r` for `r = 1 … order`, with the quantities derived from them.
#[derive(Clone, Debug)]
pub struct IdtTable {
    params: CurveParams,
    idt: Vec<LaurentPoly>,
}

impl IdtTable {
    pub fn compute(cp: &CurveParams, order: usize) -> Result<Self> {
        Ok(IdtTable { params: *cp, idt: idt_star(cp, order)? })
    }

    pub fn params(&self) -> &CurveParams {
        &self.params
    }

    pub fn order(&self) -> usize {
        self.idt.len()
    }

    /// `IDT°_r(q,t)`, `1 ≤ r ≤ order`.
    pub fn idt(&self, r: usize) -> &LaurentPoly {
        &self.idt[r - 1]
    }

    /// `IDT°_r(q,1)`.
    pub fn idt_at_one(&self, r: usize) -> LaurentPoly {
        self.idt(r).at_one(T)
    }

    /// `Ω_r`, the same for every degree `d`: `q^{pr/2} IDT°_r(q,1)` when
    /// twisted, `q IDT°_r(q,1)` for the canonical bundle.
    pub fn omega(&self, r: usize) -> HalfPowerValue {
        let half = match self.params.mode {
            Mode::Twisted => self.params.p() * r as i64,
            Mode::Canonical => 2,
        };
        HalfPowerValue::new(half, 1, self.idt_at_one(r))
    }

    /// Volume of the moduli space of stable pairs for coprime `(r, d)`:
    /// `(−1)^{pr} q^{(g−1)r² + p r(r+1)/2} IDT°_r(q,1)`.
    pub fn moduli_volume(&self, r: usize, d: i64) -> Result<LaurentPoly> {
        if self.params.mode != Mode::Twisted {
            return Err(Error::InvalidParams("moduli volume needs twisted mode".into()));
        }
        if gcd(r as i64, d) != 1 {
            return Err(Error::NotCoprime { rank: r, degree: d });
        }
        let (g, p, r) = (self.params.genus as i64, self.params.p(), r as i64);
        let exp = (g - 1) * r * r + p * r * (r + 1) / 2;
        let sign = if (p * r) % 2 == 0 { 1 } else { -1 };
        Ok(self.idt_at_one(r as usize).mul_monomial(&q_pow(exp as i32)).scale_int(sign))
    }

    /// Canonical mode: the count `A_{r,d} = IDT°_r(q,1)` of absolutely
    /// indecomposable bundles.
    pub fn indecomposable_count(&self, r: usize) -> Result<LaurentPoly> {
        if self.params.mode != Mode::Canonical {
            return Err(Error::InvalidParams("indecomposable counts need canonical mode".into()));
        }
        Ok(self.idt_at_one(r))
    }
}

/// Whether `poly` is unchanged by every swap `α_i ↔ α_j` and every
/// substitution `α_i ↦ q α_i⁻¹`.
pub fn weil_symmetry_check(poly: &LaurentPoly, genus: usize) -> bool {
    let nvars = poly.nvars();
    for i in 0..genus {
        let flipped = poly.map_monomials(nvars, |m| {
            let e = m.exponent(alpha(i));
            m.with_exponent(alpha(i), -e).with_exponent(Q, m.exponent(Q) + e)
        });
        if flipped != *poly {
            return false;
        }
        for j in i + 1..genus {
            let swapped = poly.map_monomials(nvars, |m| {
                m.with_exponent(alpha(i), m.exponent(alpha(j))).with_exponent(alpha(j), m.exponent(alpha(i)))
            });
            if swapped != *poly {
                return false;
            }
        }
    }
    true
}

/// `Π_{i=1}^g (1 − α_i) (1 − q α_i⁻¹)`, the point count of the Jacobian.
pub fn jacobian_polynomial(genus: usize) -> LaurentPoly {
    let nvars = 2 + genus;
    let one = LaurentPoly::one(nvars);
    let q = LaurentPoly::var(nvars, Q);
    (0..genus).fold(one.clone(), |acc, i| {
        let a = LaurentPoly::var(nvars, alpha(i));
        let a_inv = LaurentPoly::monomial(nvars, Monomial::var(alpha(i)).inv());
        &(&acc * &(&one - &a)) * &(&one - &(&q * &a_inv))
    })
}

/// `(−1)^p Π_i (1 − α_i⁻¹ t)(q − α_i)`, the rank-one invariant in closed form.
pub fn rank_one_closed_form(cp: &CurveParams) -> LaurentPoly {
    let nvars = cp.nvars();
    let one = LaurentPoly::one(nvars);
    let q = LaurentPoly::var(nvars, Q);
    let prod = (0..cp.genus).fold(one.clone(), |acc, i| {
        let a = LaurentPoly::var(nvars, alpha(i));
        let at = LaurentPoly::monomial(nvars, Monomial::var(alpha(i)).inv().mul(&Monomial::var(T)));
        &(&acc * &(&one - &at)) * &(&q - &a)
    });
    if cp.p() % 2 == 0 {
        prod
    } else {
        -prod
    }
}
