use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::FiniteField;
use crate::dt::{CurveParams, IdtTable};
use crate::util::gcd;
use crate::{Error, Result};

/// Default bound on the number of Higgs fields enumerated per splitting type.
pub const DEFAULT_CAP: u128 = 1 << 28;

/// Degrees `a_1 ≥ … ≥ a_r` of `O(a_1) ⊕ … ⊕ O(a_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplittingType(Vec<i64>);

impl SplittingType {
    pub fn new(degrees: Vec<i64>) -> Result<Self> {
        if degrees.is_empty() || degrees.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParams(format!("{degrees:?} is not a weakly decreasing type")));
        }
        Ok(SplittingType(degrees))
    }

    pub fn degrees(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn spread(&self) -> i64 {
        self.0[0] - self.0[self.0.len() - 1]
    }

    /// Tensoring with `O(k)`.
    pub fn twist(&self, k: i64) -> Self {
        SplittingType(self.0.iter().map(|a| a + k).collect())
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

fn gl_order(m: usize, q: &BigInt) -> BigInt {
    let qm = num_traits::pow(q.clone(), m);
    (0..m).fold(BigInt::one(), |acc, i| acc * (&qm - num_traits::pow(q.clone(), i)))
}

/// `#Aut(O(a_1) ⊕ … ⊕ O(a_r))` over `F_q`.
pub fn aut_count(ty: &SplittingType, q: u64) -> Result<BigInt> {
    FiniteField::new(q)?;
    let qb = BigInt::from(q);
    let a = ty.degrees();
    let mut out = BigInt::one();
    let mut i = 0;
    while i < a.len() {
        let block = a[i..].iter().take_while(|&&x| x == a[i]).count();
        out *= gl_order(block, &qb);
        i += block;
    }
    let unipotent: i64 = (0..a.len())
        .flat_map(|i| (i + 1..a.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| a[i] > a[j])
        .map(|(i, j)| a[i] - a[j] + 1)
        .sum();
    Ok(out * num_traits::pow(qb, unipotent as usize))
}

/// Sections `(s₁, s₂)` of a rank-two bundle, up to scaling.
type SectionPair = (Vec<u8>, Vec<u8>);

/// Enumeration limits.
#[derive(Clone, Copy, Debug)]
pub struct OracleOptions {
    pub cap: u128,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { cap: DEFAULT_CAP }
    }
}

/// Binary forms on the projective line as coefficient vectors.
struct Forms<'a> {
    f: &'a FiniteField,
}

impl Forms<'_> {
    fn mul_add(&self, acc: &mut [u8], x: &[u8], y: &[u8]) {
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                acc[i + j] = self.f.add(acc[i + j], self.f.mul(a, b));
            }
        }
    }

    fn mul_sub(&self, acc: &mut [u8], x: &[u8], y: &[u8]) {
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                acc[i + j] = self.f.sub(acc[i + j], self.f.mul(a, b));
            }
        }
    }
}

fn section_len(deg: i64) -> usize {
    if deg < 0 {
        0
    } else {
        deg as usize + 1
    }
}

/// Nonzero pairs `(s_1, s_2)` up to scalars, `s_i ∈ H⁰(O(a_i − m))`.
fn projective_sections(len1: usize, len2: usize, q: usize) -> Vec<SectionPair> {
    let total = len1 + len2;
    let mut out = Vec::new();
    // Normalize the first nonzero coordinate to 1.
    for lead in 0..total {
        let free = total - lead - 1;
        for idx in 0..q.pow(free as u32) {
            let mut v = vec![0u8; total];
            v[lead] = 1;
            let mut x = idx;
            for c in v.iter_mut().skip(lead + 1) {
                *c = (x % q) as u8;
                x /= q;
            }
            out.push((v[..len1].to_vec(), v[len1..].to_vec()));
        }
    }
    out
}

/// Number of Higgs fields `φ: E → E(ℓ)` on `E` of the given type such that
/// `(E, φ)` is semistable.
pub fn semistable_count(ty: &SplittingType, ell: i64, q: u64, options: OracleOptions) -> Result<BigInt> {
    let field = FiniteField::new(q)?;
    let qs = field.size();
    let a = ty.degrees();
    let r = ty.rank();
    if r > 2 {
        return Err(Error::UnsupportedRank(r));
    }
    let len = |i: usize, j: usize| section_len(a[j] - a[i] + ell);
    let dims: Vec<usize> = (0..r).flat_map(|i| (0..r).map(move |j| (i, j))).map(|(i, j)| len(i, j)).collect();
    let total_dim: usize = dims.iter().sum();
    let count = (qs as u128).checked_pow(total_dim as u32).unwrap_or(u128::MAX);
    if count > options.cap {
        return Err(Error::EnumerationCap { count, cap: options.cap });
    }
    if r == 1 {
        return Ok(BigInt::from(count));
    }
    let d = ty.degree();
    // Candidate destabilizing line subsheaves O(m), 2m > d.
    let m_min = d.div_euclid(2) + 1;
    let tests: Vec<(i64, Vec<SectionPair>)> = (m_min..=a[0])
        .map(|m| (m, projective_sections(section_len(a[0] - m), section_len(a[1] - m), qs)))
        .collect();
    let forms = Forms { f: &field };
    let unstable = |phi: &[Vec<u8>]| -> bool {
        // phi[2i + j] is the (i, j) entry, O(a_i) → O(a_j + ℓ).
        for (m, sections) in &tests {
            let out_len = |j: usize| section_len(a[j] + ell - m);
            let cross_len = section_len(a[0] + a[1] - 2 * m + ell);
            for (s1, s2) in sections {
                let mut img = [vec![0u8; out_len(0)], vec![0u8; out_len(1)]];
                for (j, target) in img.iter_mut().enumerate() {
                    forms.mul_add(target, &phi[j], s1);
                    forms.mul_add(target, &phi[2 + j], s2);
                }
                let mut cross = vec![0u8; cross_len];
                forms.mul_add(&mut cross, s1, &img[1]);
                forms.mul_sub(&mut cross, s2, &img[0]);
                if cross.iter().all(|&c| c == 0) {
                    return true;
                }
            }
        }
        false
    };
    let chunks: Vec<(u128, u128)> = {
        let size = 1u128 << 14;
        (0..count.div_ceil(size)).map(|c| (c * size, ((c + 1) * size).min(count))).collect()
    };
    let partial = crate::util::par_map(&chunks, |&(lo, hi)| {
        let mut phi: Vec<Vec<u8>> = dims.iter().map(|&n| vec![0u8; n]).collect();
        let mut stable = 0u64;
        for idx in lo..hi {
            let mut x = idx;
            for entry in phi.iter_mut() {
                for c in entry.iter_mut() {
                    *c = (x % qs as u128) as u8;
                    x /= qs as u128;
                }
            }
            if !unstable(&phi) {
                stable += 1;
            }
        }
        stable
    });
    Ok(partial.into_iter().map(BigInt::from).sum())
}

/// Splitting types of rank `r ≤ 2` and degree `d` with spread at most `bound`.
fn types_within(r: usize, d: i64, bound: i64) -> Vec<SplittingType> {
    match r {
        1 => vec![SplittingType(vec![d])],
        _ => (0..=bound)
            .filter(|s| (d - s).rem_euclid(2) == 0)
            .map(|s| SplittingType(vec![(d + s) / 2, (d - s) / 2]))
            .collect(),
    }
}

/// The stack volume and how the spread bound was validated.
#[derive(Clone, Debug)]
pub struct VolumeReport {
    pub volume: BigRational,
    /// Spread bound finally used.
    pub bound: i64,
    /// Types just beyond the bound that were enumerated, with their counts.
    pub boundary: Vec<(SplittingType, BigInt)>,
    /// Set when a boundary type contributed and the bound had to grow.
    pub widened: bool,
}

/// `Σ_E #{φ semistable} / #Aut(E)` over splitting types of rank `r` and
/// degree `d`, for `r ≤ 2`.
pub fn stack_volume_p1(r: usize, d: i64, ell: i64, q: u64, options: OracleOptions) -> Result<VolumeReport> {
    if r == 0 || r > 2 {
        return Err(Error::UnsupportedRank(r));
    }
    if ell < 1 {
        return Err(Error::InvalidParams(format!("twist degree {ell} must be positive")));
    }
    let mut bound = (r as i64 - 1) * ell;
    let mut widened = false;
    loop {
        let mut volume = BigRational::zero();
        for ty in types_within(r, d, bound) {
            let count = semistable_count(&ty, ell, q, options)?;
            volume += BigRational::new(count, aut_count(&ty, q)?);
        }
        let mut boundary = Vec::new();
        if r == 2 {
            for ty in types_within(r, d, bound + 2).into_iter().filter(|t| t.spread() > bound) {
                let count = semistable_count(&ty, ell, q, options)?;
                boundary.push((ty, count));
            }
        }
        if boundary.iter().all(|(_, c)| c.is_zero()) {
            return Ok(VolumeReport { volume, bound, boundary, widened });
        }
        widened = true;
        bound += 2;
    }
}

/// Brute-force volume against `(−q^{1/2})^{ℓr²} Ω_r / (q − 1)` in genus zero.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub rank: usize,
    pub degree: i64,
    pub ell: i64,
    pub q: u64,
    pub oracle: VolumeReport,
    pub formula: BigRational,
}

impl Comparison {
    pub fn agrees(&self) -> bool {
        self.oracle.volume == self.formula
    }
}

pub fn compare_with_formula(r: usize, d: i64, ell: i64, q: u64, options: OracleOptions) -> Result<Comparison> {
    if gcd(r as i64, d) != 1 {
        return Err(Error::NotCoprime { rank: r, degree: d });
    }
    let cp = CurveParams::twisted(0, ell)?;
    let omega = IdtTable::compute(&cp, r)?.omega(r);
    let ell_r2 = ell * (r * r) as i64;
    let stacky = omega.mul_half_power(ell_r2);
    let sign = if ell_r2 % 2 == 0 { 1 } else { -1 };
    let qr = BigRational::from_integer(q.into());
    let formula = stacky.eval_at(&qr)? * BigRational::from_integer(sign.into()) / (qr - BigRational::one());
    let oracle = stack_volume_p1(r, d, ell, q, options)?;
    Ok(Comparison { rank: r, degree: d, ell, q, oracle, formula })
}
