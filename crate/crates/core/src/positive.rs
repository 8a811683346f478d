//! The symmetrized rational function `f`, its specializations `f_λ`, the
//! positive series `Z⁺` and the comparison of its invariants with `IDT°`.

use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{alpha, t_expand, BinomialFactor, Fraction, LaurentPoly, Monomial, TruncSeries, VarTable, Q, T};
use crate::dt::{series_from_terms, zstar_term, CurveParams, IdtTable, Mode};
use crate::partitions::Partition;
use crate::util::{par_map, permutations};
use crate::{Error, Result};

/// Variables `q, t, α_1 … α_g, z_1 … z_n` for the symbolic `f`.
#[derive(Clone, Debug)]
pub struct FContext {
    table: VarTable,
}

impl FContext {
    pub fn new(n: usize, genus: usize) -> Result<Self> {
        Ok(FContext { table: VarTable::with_z(genus, n)? })
    }

    pub fn n(&self) -> usize {
        self.table.z_count()
    }

    pub fn genus(&self) -> usize {
        self.table.genus()
    }

    pub fn table(&self) -> &VarTable {
        &self.table
    }

    pub fn nvars(&self) -> usize {
        self.table.arity()
    }

    /// The monomial `z_{i+1}` (0-based `i`).
    pub fn z(&self, i: usize) -> Monomial {
        Monomial::var(self.table.z(i))
    }
}

/// The σ-term of `f` at `z_i = zs[i]`, without the symmetric prefactor.
fn sigma_term(zs: &[Monomial], sigma: &[usize], genus: usize, nvars: usize) -> Fraction {
    let one = LaurentPoly::one(nvars);
    let q = Monomial::var(Q);
    let n = zs.len();
    let mut num = one.clone();
    let mut den = Vec::new();
    for i in 0..n {
        for j in 0..i {
            let w = zs[sigma[i]].div(&zs[sigma[j]]);
            den.push(BinomialFactor::one_minus(w));
            for k in 0..genus {
                let a = Monomial::var(alpha(k)).inv();
                num = &num * &(&one - &LaurentPoly::monomial(nvars, a.mul(&w)));
                den.push(BinomialFactor::one_minus(q.mul(&a).mul(&w)));
            }
            if i > j + 1 {
                num = &num * &(&one - &LaurentPoly::monomial(nvars, q.mul(&w)));
            }
        }
        if i >= 1 {
            num = &num * &(&one - &LaurentPoly::monomial(nvars, zs[sigma[i]]));
        }
    }
    Fraction::over_binomials(num, &den)
}

/// `Π_i Π_k (1 − α_k⁻¹)/(1 − α_k⁻¹ z_i)`.
fn prefactor(zs: &[Monomial], genus: usize, nvars: usize) -> Fraction {
    let one = LaurentPoly::one(nvars);
    let mut num = one.clone();
    let mut den = Vec::new();
    for z in zs {
        for k in 0..genus {
            let a = Monomial::var(alpha(k)).inv();
            num = &num * &(&one - &LaurentPoly::monomial(nvars, a));
            den.push(BinomialFactor::one_minus(a.mul(z)));
        }
    }
    let mut f = Fraction::over_binomials(num, &den);
    f.reduce();
    f
}

/// `f` evaluated at `z_i = zs[i]`, each σ-term specialized before summing.
pub fn f_at(zs: &[Monomial], genus: usize, nvars: usize) -> Fraction {
    let perms = permutations(zs.len());
    let terms = par_map(&perms, |sigma| sigma_term(zs, sigma, genus, nvars));
    let total = crate::algebra::sum(nvars, terms);
    &prefactor(zs, genus, nvars) * &total
}

/// `f(z_1, …, z_n)` as a fraction over `q, α, z`.
pub fn f_symbolic(ctx: &FContext) -> Fraction {
    let zs: Vec<Monomial> = (0..ctx.n()).map(|i| ctx.z(i)).collect();
    f_at(&zs, ctx.genus(), ctx.nvars())
}

/// `f_λ`: `f` at `z_i = q^{i−n} t^{λ_i}`, with `λ` padded by zeros to length `n`.
pub fn f_lambda(lambda: &Partition, genus: usize, n: usize) -> Result<Fraction> {
    if n < lambda.len() {
        return Err(Error::InvalidParams(format!("padding {n} is shorter than {lambda}")));
    }
    let nvars = 2 + genus;
    let zs: Vec<Monomial> = (1..=n)
        .map(|i| {
            let part = if i <= lambda.len() { lambda.part(i) } else { 0 };
            Monomial::var(Q).pow(i as i32 - n as i32).mul(&Monomial::var(T).pow(part as i32))
        })
        .collect();
    Ok(f_at(&zs, genus, nvars))
}

/// `f(1, z_1, …, z_n) = f(q z_1, …, q z_n)`.
pub fn inductive_property_check(n: usize, genus: usize) -> Result<bool> {
    let big = FContext::new(n + 1, genus)?;
    let small = FContext::new(n, genus)?;
    let nvars = small.nvars();
    let z0 = big.table().z(0);
    let base = 2 + genus;
    let lhs = f_symbolic(&big).substitute(nvars, |m| {
        let mut out = m.with_exponent(z0, 0);
        for i in 0..n {
            out = out.with_exponent(base + i, m.exponent(base + i + 1));
        }
        out.with_exponent(base + n, 0)
    })?;
    let rhs = f_symbolic(&small).substitute(nvars, |m| {
        let shift: i32 = (0..n).map(|i| m.exponent(base + i)).sum();
        m.with_exponent(Q, m.exponent(Q) + shift)
    })?;
    lhs.checked_eq(&rhs)
}

/// Whether `f · Π_k (Π_i (1 − α_k⁻¹ z_i) Π_{i≠j} (1 − q α_k⁻¹ z_i/z_j))` is a
/// Laurent polynomial.
pub fn laurent_property_check(n: usize, genus: usize) -> Result<bool> {
    let ctx = FContext::new(n, genus)?;
    let nvars = ctx.nvars();
    let one = LaurentPoly::one(nvars);
    let q = Monomial::var(Q);
    let mut clearing = one.clone();
    for k in 0..genus {
        let a = Monomial::var(alpha(k)).inv();
        for i in 0..n {
            clearing = &clearing * &(&one - &LaurentPoly::monomial(nvars, a.mul(&ctx.z(i))));
            for j in 0..n {
                if i != j {
                    let w = q.mul(&a).mul(&ctx.z(i)).div(&ctx.z(j));
                    clearing = &clearing * &(&one - &LaurentPoly::monomial(nvars, w));
                }
            }
        }
    }
    Ok(f_symbolic(&ctx).mul_poly(&clearing).is_polynomial())
}

/// The `λ`-term of `Z⁺(q^{−p/2} T, t)`: the `Z°` term times `f_{λ'}`.
pub fn zplus_term(lambda: &Partition, cp: &CurveParams) -> Fraction {
    let conj = lambda.conjugate();
    let f = f_lambda(&conj, cp.genus(), conj.len()).expect("padding equals length");
    &zstar_term(lambda, cp) * &f
}

fn require_twisted(cp: &CurveParams) -> Result<()> {
    if cp.mode() != Mode::Twisted {
        return Err(Error::InvalidParams("the positive series needs p > 0".into()));
    }
    Ok(())
}

/// `Z⁺(q^{−p/2} T, t)` truncated at `T^order`.
pub fn zplus_series(cp: &CurveParams, order: usize) -> Result<TruncSeries> {
    require_twisted(cp)?;
    Ok(series_from_terms(cp.nvars(), order, |lambda| zplus_term(lambda, cp)))
}

/// `q^{−pr/2} Ω⁺_{r,d}` for `1 ≤ r ≤ rank`, `0 ≤ d ≤ depth`.
#[derive(Clone, Debug)]
pub struct OmegaPlusTable {
    depth: usize,
    values: Vec<Vec<Fraction>>,
}

impl OmegaPlusTable {
    pub fn rank(&self) -> usize {
        self.values.len()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn get(&self, r: usize, d: usize) -> &Fraction {
        &self.values[r - 1][d]
    }

    /// Values for `d = 0 … depth` at rank `r`.
    pub fn row(&self, r: usize) -> &[Fraction] {
        &self.values[r - 1]
    }
}

/// Coefficients of `T^r t^d` in `(q − 1) Log Z⁺(q^{−p/2} T, t)`.
pub fn omega_plus(cp: &CurveParams, rank: usize, depth: usize) -> Result<OmegaPlusTable> {
    let nvars = cp.nvars();
    let log = zplus_series(cp, rank)?.pleth_log()?;
    let q_minus_one = &LaurentPoly::var(nvars, Q) - &LaurentPoly::one(nvars);
    let ranks: Vec<usize> = (1..=rank).collect();
    let values = par_map(&ranks, |&r| t_expand(&log.coeff(r).mul_poly(&q_minus_one), depth))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(OmegaPlusTable { depth, values })
}

/// `max(8, r(ℓ + 2))`.
pub fn default_depth(cp: &CurveParams, r: usize) -> usize {
    8.max(r * (cp.ell().max(0) as usize + 2))
}

/// Outcome of comparing the positive invariants at one rank with `IDT°_r(q,1)`.
#[derive(Clone, Debug)]
pub struct StabilizationReport {
    pub rank: usize,
    pub depth: usize,
    /// Least `d₀ ≤ depth − r` with `Ω⁺_{r,d+r} = Ω⁺_{r,d}` for `d₀ ≤ d ≤ depth − r`.
    pub d0: Option<usize>,
    /// Whether every value on `[d₀, depth]` equals the target.
    pub matches: bool,
    pub target: LaurentPoly,
    pub values: Vec<Fraction>,
}

impl StabilizationReport {
    pub fn passed(&self) -> bool {
        self.d0.is_some() && self.matches
    }
}

/// Finds the stable window of `q^{−pr/2} Ω⁺_{r,d}` within `d ≤ depth` and
/// compares its value with `IDT°_r(q,1)`.
pub fn stabilization_check(cp: &CurveParams, r: usize, depth: usize) -> Result<StabilizationReport> {
    if r == 0 {
        return Err(Error::InvalidParams("rank must be positive".into()));
    }
    let table = omega_plus(cp, r, depth)?;
    let target = IdtTable::compute(cp, r)?.idt_at_one(r);
    let values = table.row(r).to_vec();
    let d0 = (depth >= r)
        .then(|| {
            let mut d0 = depth - r;
            while d0 > 0 && values[d0 - 1 + r] == values[d0 - 1] {
                d0 -= 1;
            }
            d0
        });
    let target_fraction = Fraction::from(target.clone());
    let matches = d0.is_some_and(|d0| values[d0..].iter().all(|v| *v == target_fraction));
    Ok(StabilizationReport { rank: r, depth, d0, matches, target, values })
}
