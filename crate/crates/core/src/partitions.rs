//! Integer partitions and the hook statistics of their Young diagrams.
//!
//! Boxes are addressed as `(row, col)` with both indices starting at 1, row
//! `i` holding `λ_i` boxes. Iteration over boxes is row-major.

use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

/// A box of a Young diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

impl Partition {
    /// Trailing zeros are dropped; any other zero or an increase is rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition);
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `λ_i` with the convention `λ_i = 0` past the length (1-based).
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row >= 1 && cell.col >= 1 && cell.col <= self.part(cell.row)
    }

    /// Boxes in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |j| Cell::new(i + 1, j)))
    }

    fn check(&self, cell: Cell) -> Result<()> {
        if self.contains(cell) {
            Ok(())
        } else {
            Err(Error::OutsideDiagram { row: cell.row, col: cell.col })
        }
    }

    /// `a(s) = λ_i − j`.
    pub fn arm(&self, cell: Cell) -> Result<usize> {
        self.check(cell)?;
        Ok(self.part(cell.row) - cell.col)
    }

    /// `l(s) = λ'_j − i`, computed without materializing `λ'`.
    pub fn leg(&self, cell: Cell) -> Result<usize> {
        self.check(cell)?;
        let column = self.parts.iter().take_while(|&&p| p >= cell.col).count();
        Ok(column - cell.row)
    }

    pub fn hook(&self, cell: Cell) -> Result<usize> {
        Ok(self.arm(cell)? + self.leg(cell)? + 1)
    }

    /// `(a(s), l(s))` for every box, row-major.
    pub fn arm_legs(&self) -> Vec<(usize, usize)> {
        let conj = self.conjugate();
        self.cells()
            .map(|s| (self.part(s.row) - s.col, conj.part(s.col) - s.row))
            .collect()
    }

    /// `n(λ) = Σ_i (i − 1) λ_i`.
    pub fn n_stat(&self) -> usize {
        self.parts.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    /// `⟨λ, λ⟩ = Σ_j (λ'_j)²`.
    pub fn norm_form(&self) -> usize {
        self.conjugate().parts.iter().map(|&c| c * c).sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// All partitions of `n`, lexicographically decreasing: `(n)` first, `(1^n)`
/// last.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, &mut current, &mut out);
    out
}

fn fill(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: current.clone() });
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        fill(remaining - part, part, current, out);
        current.pop();
    }
}

/// All partitions of weight at most `n`, grouped by weight.
pub fn partitions_up_to(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(enumerate_partitions).collect()
}
