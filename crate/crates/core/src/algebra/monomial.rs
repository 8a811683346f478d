use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::{Error, Result};

/// Maximum number of variables a [`VarTable`] may hold.
pub const MAX_VARS: usize = 12;

/// Index of `q` in every table.
pub const Q: usize = 0;
/// Index of `t` in every table.
pub const T: usize = 1;

/// Index of `α_{i+1}` (0-based `i`).
pub const fn alpha(i: usize) -> usize {
    2 + i
}

/// A Laurent monomial: one integer exponent per variable. Unused trailing
/// slots are zero, so the derived order is lexicographic on the table.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub(crate) [i32; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn var(index: usize) -> Self {
        Self::ONE.with_exponent(index, 1)
    }

    pub fn from_exponents(exps: &[i32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "monomial has too many variables");
        let mut out = [0; MAX_VARS];
        out[..exps.len()].copy_from_slice(exps);
        Monomial(out)
    }

    pub fn exponent(&self, index: usize) -> i32 {
        self.0[index]
    }

    pub fn exponents(&self) -> &[i32; MAX_VARS] {
        &self.0
    }

    pub fn with_exponent(mut self, index: usize, e: i32) -> Self {
        self.0[index] = e;
        self
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0;
        for (o, e) in out.iter_mut().zip(other.0.iter()) {
            *o += e;
        }
        Monomial(out)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        let mut out = self.0;
        for (o, e) in out.iter_mut().zip(other.0.iter()) {
            *o -= e;
        }
        Monomial(out)
    }

    pub fn inv(&self) -> Monomial {
        self.pow(-1)
    }

    pub fn pow(&self, k: i32) -> Monomial {
        Monomial(self.0.map(|e| e * k))
    }

    /// Highest index with a nonzero exponent, plus one.
    pub fn support_len(&self) -> usize {
        self.0.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1)
    }

    /// Writes `self = w^k` with `w` primitive and oriented (first nonzero
    /// exponent positive). `None` for the unit monomial.
    pub fn primitive_root(&self) -> Option<(Monomial, i32)> {
        let lead = *self.0.iter().find(|&&e| e != 0)?;
        let content = self.0.iter().fold(0i64, |g, &e| crate::util::gcd(g, e as i64)) as i32;
        let k = if lead > 0 { content } else { -content };
        Some((Monomial(self.0.map(|e| e / k)), k))
    }
}

/// Names of the variables of a computation, in exponent order:
/// `q, t, α_1 … α_g, z_1 … z_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    genus: usize,
    z_count: usize,
}

impl VarTable {
    /// `q, t, a1 … ag`.
    pub fn new(genus: usize) -> Result<Self> {
        Self::with_z(genus, 0)
    }

    /// `q, t, a1 … ag, z1 … zn`.
    pub fn with_z(genus: usize, z_count: usize) -> Result<Self> {
        let arity = 2 + genus + z_count;
        if arity > MAX_VARS {
            return Err(Error::TooManyVariables(arity));
        }
        let mut names: Vec<String> = ["q".to_string(), "t".to_string()].into();
        names.extend((1..=genus).map(|i| format!("a{i}")));
        names.extend((1..=z_count).map(|i| format!("z{i}")));
        Ok(VarTable { names, genus, z_count })
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn z_count(&self) -> usize {
        self.z_count
    }

    /// Index of `z_{j+1}` (0-based `j`).
    pub fn z(&self, j: usize) -> usize {
        assert!(j < self.z_count);
        2 + self.genus + j
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// `"q^2 t^1 a1^-1"`; the unit monomial prints as `"1"`.
    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = self
            .names
            .iter()
            .zip(m.0.iter())
            .filter(|(_, &e)| e != 0)
            .map(|(name, e)| format!("{name}^{e}"))
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }

    /// Inverse of [`VarTable::format_monomial`].
    pub fn parse_monomial(&self, s: &str) -> Result<Monomial> {
        let mut m = Monomial::ONE;
        let s = s.trim();
        if s == "1" {
            return Ok(m);
        }
        for token in s.split_whitespace() {
            let (name, exp) = match token.split_once('^') {
                Some((name, exp)) => {
                    (name, exp.parse::<i32>().map_err(|_| Error::LeftoverVariable(token.to_string()))?)
                }
                None => (token, 1),
            };
            let index = self.index_of(name).ok_or_else(|| Error::LeftoverVariable(name.to_string()))?;
            m.0[index] += exp;
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_root_orients_and_extracts_power() {
        let m = Monomial::from_exponents(&[-4, 6]);
        let (w, k) = m.primitive_root().unwrap();
        assert_eq!(w, Monomial::from_exponents(&[2, -3]));
        assert_eq!(k, -2);
        assert_eq!(w.pow(k), m);
        assert!(Monomial::ONE.primitive_root().is_none());
        let (w, k) = Monomial::from_exponents(&[0, 3]).primitive_root().unwrap();
        assert_eq!((w, k), (Monomial::var(T), 3));
    }

    #[test]
    fn formatting_round_trips() {
        let table = VarTable::new(2).unwrap();
        let m = Monomial::from_exponents(&[2, 1, -1, 0]);
        let s = table.format_monomial(&m);
        assert_eq!(s, "q^2 t^1 a1^-1");
        assert_eq!(table.parse_monomial(&s).unwrap(), m);
        assert_eq!(table.format_monomial(&Monomial::ONE), "1");
        assert_eq!(table.parse_monomial("1").unwrap(), Monomial::ONE);
        assert!(table.parse_monomial("z1^2").is_err());
    }

    #[test]
    fn table_layout() {
        let table = VarTable::with_z(2, 3).unwrap();
        assert_eq!(table.arity(), 7);
        assert_eq!(table.z(0), 4);
        assert_eq!(table.names()[alpha(1)], "a2");
        assert!(VarTable::with_z(8, 3).is_err());
    }
}
