//! Irreducible denominator atoms `Φ_d(y)`.
//!
//! Every binomial `m₁ − m₂` factors as a unit monomial times
//! `Π_{d | k} Φ_d(w)` where `m₁/m₂ = w^k` with `w` primitive. For primitive
//! `w` the polynomial `Φ_d(w)` is irreducible in the Laurent ring (a
//! unimodular change of variables sends `w` to a coordinate), so multisets of
//! atoms have honest least common multiples. Adams operations and monomial
//! substitutions send atoms to products of atoms.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::monomial::{Monomial, VarTable};
use super::poly::{FxMap, LaurentPoly};
use crate::util::{divisors, mobius};
use crate::{Error, Result};

/// Coefficients of `Φ_d`, constant term first.
pub fn cyclotomic(d: u32) -> Vec<i64> {
    assert!(d >= 1);
    let d = d as u64;
    let mut num: Vec<i64> = alloc::vec![1];
    let mut dens = Vec::new();
    for e in divisors(d) {
        match mobius(d / e) {
            1 => num = mul_xe_minus_one(&num, e as usize),
            -1 => dens.push(e as usize),
            _ => {}
        }
    }
    for e in dens {
        num = div_xe_minus_one(&num, e);
    }
    num
}

fn mul_xe_minus_one(p: &[i64], e: usize) -> Vec<i64> {
    let mut out = alloc::vec![0i64; p.len() + e];
    for (i, &c) in p.iter().enumerate() {
        out[i + e] += c;
        out[i] -= c;
    }
    out
}

fn div_xe_minus_one(p: &[i64], e: usize) -> Vec<i64> {
    let mut rem = p.to_vec();
    let deg = p.len() - 1;
    let mut quot = alloc::vec![0i64; deg + 1 - e];
    for i in (e..=deg).rev() {
        let c = rem[i];
        quot[i - e] = c;
        rem[i] = 0;
        rem[i - e] += c;
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

pub fn euler_phi(d: u32) -> u32 {
    (1..=d).filter(|&k| crate::util::gcd(k as i64, d as i64) == 1).count() as u32
}

/// `Φ_d(1)`: zero for `d = 1`, `p` for prime powers `p^k`, otherwise 1.
fn cyclotomic_at_one(d: u32) -> i64 {
    if d == 1 {
        return 0;
    }
    let mut n = d;
    let mut p = 2;
    while !n.is_multiple_of(p) {
        p += 1;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    if n == 1 {
        p as i64
    } else {
        1
    }
}

/// `Φ_order(base)` with `base` primitive and oriented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycloAtom {
    base: Monomial,
    order: u32,
}

impl CycloAtom {
    pub fn new(base: Monomial, order: u32) -> Self {
        debug_assert!(order >= 1);
        debug_assert!(matches!(base.primitive_root(), Some((_, 1))));
        CycloAtom { base, order }
    }

    pub fn base(&self) -> &Monomial {
        &self.base
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> u32 {
        euler_phi(self.order)
    }

    pub fn to_poly(&self, nvars: usize) -> LaurentPoly {
        let terms = cyclotomic(self.order)
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c != 0)
            .map(|(k, c)| (self.base.pow(k as i32), BigInt::from(c)));
        LaurentPoly::from_terms(nvars, terms)
    }

    /// Writes `Φ_d(y')`, with `y'` the image of the base, as a unit times
    /// atoms. The unit is a signed monomial times a positive integer.
    pub fn substituted(&self, image: &Monomial, nvars: usize) -> Result<(LaurentPoly, Vec<CycloAtom>)> {
        let d = self.order;
        let Some((w, k)) = image.primitive_root() else {
            return match cyclotomic_at_one(d) {
                0 => Err(Error::ZeroDenominator),
                v => Ok((LaurentPoly::constant(nvars, v), Vec::new())),
            };
        };
        let big_k = k.unsigned_abs();
        // Φ_d(w^K) = Π Φ_e(w) over e | Kd with e / gcd(e, K) = d.
        let atoms: Vec<CycloAtom> = divisors(big_k as u64 * d as u64)
            .into_iter()
            .map(|e| e as u32)
            .filter(|&e| e / crate::util::gcd(e as i64, big_k as i64) as u32 == d)
            .map(|e| CycloAtom::new(w, e))
            .collect();
        let unit = if k > 0 {
            LaurentPoly::one(nvars)
        } else {
            // Φ_d(x⁻¹) = x^{-φ(d)} Φ_d(x) for d ≥ 2; x⁻¹ − 1 = −x⁻¹(x − 1).
            let m = w.pow(-(big_k as i32) * euler_phi(d) as i32);
            LaurentPoly::term(nvars, m, if d == 1 { -1 } else { 1 })
        };
        Ok((unit, atoms))
    }

    pub fn psi(&self, n: u32, nvars: usize) -> (LaurentPoly, Vec<CycloAtom>) {
        self.substituted(&self.base.pow(n as i32), nvars)
            .expect("Adams operations never send a nontrivial monomial to 1")
    }

    pub fn display<'a>(&self, table: &'a VarTable) -> impl fmt::Display + 'a {
        DisplayAtom { atom: *self, table }
    }
}

struct DisplayAtom<'a> {
    atom: CycloAtom,
    table: &'a VarTable,
}

impl fmt::Display for DisplayAtom<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Phi_{}({})", self.atom.order, self.table.format_monomial(&self.atom.base))
    }
}

/// `m₁ − m₂` with `m₁ ≠ m₂`, oriented so that `m₁ > m₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinomialFactor {
    lead: Monomial,
    trail: Monomial,
    /// Whether the stored orientation is the negative of the requested one.
    flipped: bool,
}

impl BinomialFactor {
    /// `m1 − m2`. Panics if the monomials coincide.
    pub fn new(m1: Monomial, m2: Monomial) -> Self {
        assert!(m1 != m2, "degenerate binomial");
        if m1 > m2 {
            BinomialFactor { lead: m1, trail: m2, flipped: false }
        } else {
            BinomialFactor { lead: m2, trail: m1, flipped: true }
        }
    }

    /// `1 − m`.
    pub fn one_minus(m: Monomial) -> Self {
        Self::new(Monomial::ONE, m)
    }

    /// Canonically oriented pair; equals `±(m₁ − m₂)` as requested.
    pub fn monomials(&self) -> (Monomial, Monomial) {
        (self.lead, self.trail)
    }

    /// `-1` if the canonical orientation negated the requested binomial.
    pub fn sign(&self) -> i64 {
        if self.flipped {
            -1
        } else {
            1
        }
    }

    /// The binomial as written, `m1 − m2`.
    pub fn to_poly(&self, nvars: usize) -> LaurentPoly {
        let p = &LaurentPoly::monomial(nvars, self.lead) - &LaurentPoly::monomial(nvars, self.trail);
        if self.flipped {
            -p
        } else {
            p
        }
    }

    /// `m1 − m2 = unit · Π atoms`.
    pub fn decompose(&self, nvars: usize) -> (LaurentPoly, Vec<CycloAtom>) {
        // m₁ − m₂ = m₂ (x − 1) with x = m₁/m₂, and x − 1 = Φ₁(x).
        let x = self.lead.div(&self.trail);
        let phi1 = CycloAtom { base: Monomial::var(0), order: 1 };
        let (unit, atoms) = phi1.substituted(&x, nvars).expect("x ≠ 1");
        let unit = unit.mul_monomial(&self.trail).scale_int(self.sign());
        (unit, atoms)
    }
}

/// Exact division by `Φ_d(w)`; `None` if it does not divide.
///
/// Monomials split into cosets of the line spanned by `w`; within a coset the
/// polynomial is univariate in `w`, and the division happens there.
pub fn div_atom(p: &LaurentPoly, atom: &CycloAtom) -> Option<LaurentPoly> {
    if p.is_zero() {
        return Some(p.clone());
    }
    let v = atom.base;
    let pivot = v.exponents().iter().position(|&e| e != 0).unwrap();
    let step = v.exponent(pivot);
    let phi = cyclotomic(atom.order);
    let deg = phi.len() - 1;

    let mut cosets: FxMap<Monomial, Vec<(i32, &BigInt)>> = FxMap::default();
    for (m, c) in p.integer_terms() {
        let k = m.exponent(pivot).div_euclid(step);
        cosets.entry(m.div(&v.pow(k))).or_default().push((k, c));
    }

    let mut out: Vec<(Monomial, BigInt)> = Vec::with_capacity(p.len());
    for (rep, entries) in cosets {
        let kmin = entries.iter().map(|e| e.0).min().unwrap();
        let kmax = entries.iter().map(|e| e.0).max().unwrap();
        let len = (kmax - kmin) as usize + 1;
        if len <= deg {
            return None;
        }
        let mut dense = alloc::vec![BigInt::zero(); len];
        for (k, c) in entries {
            dense[(k - kmin) as usize] = c.clone();
        }
        let mut quot = alloc::vec![BigInt::zero(); len - deg];
        for i in (deg..len).rev() {
            let c = core::mem::take(&mut dense[i]);
            if c.is_zero() {
                continue;
            }
            for (j, &f) in phi[..deg].iter().enumerate() {
                if f != 0 {
                    dense[i - deg + j] -= &c * f;
                }
            }
            quot[i - deg] = c;
        }
        if dense[..deg].iter().any(|c| !c.is_zero()) {
            return None;
        }
        for (i, c) in quot.into_iter().enumerate() {
            if !c.is_zero() {
                out.push((rep.mul(&v.pow(kmin + i as i32)), c));
            }
        }
    }
    out.sort_unstable_by_key(|a| a.0);
    Some(LaurentPoly::from_sorted(p.nvars(), p.denominator().clone(), out))
}

/// Exact division by a binomial.
pub fn exact_divide(p: &LaurentPoly, f: &BinomialFactor) -> Result<LaurentPoly> {
    let (unit, atoms) = f.decompose(p.nvars());
    let mut q = p.clone();
    for atom in &atoms {
        q = div_atom(&q, atom).ok_or_else(|| not_divisible(f))?;
    }
    let (m, c) = unit.as_term().expect("unit is a monomial");
    Ok(q.mul_monomial(&m.inv()).scale(&num_traits::Inv::inv(c)))
}

fn not_divisible(f: &BinomialFactor) -> Error {
    let (a, b) = f.monomials();
    Error::NotDivisible(alloc::format!("{:?} - {:?}", a.exponents(), b.exponents()))
}
