//! Exact arithmetic: Laurent polynomials in `q, t, α_i, z_j` over `Q`,
//! fractions whose denominators are products of cyclotomic polynomials in
//! monomials, and truncated series in an external variable `T`.

mod cyclotomic;
mod fraction;
mod monomial;
mod poly;
mod series;
mod texpand;

use alloc::string::String;

pub use cyclotomic::{cyclotomic, div_atom, euler_phi, exact_divide, BinomialFactor, CycloAtom};
pub use fraction::{inverse_of_binomials, Fraction};
pub use monomial::{alpha, Monomial, VarTable, MAX_VARS, Q, T};
pub use poly::LaurentPoly;
pub use series::TruncSeries;
pub use texpand::t_expand;

#[allow(unused_imports)]
pub(crate) use fraction::rational;
#[allow(unused_imports)]
pub(crate) use poly::FxMap;
#[allow(unused_imports)]
pub(crate) use series::sum;

/// Human-readable form, e.g. `"q^2 t^1 - 3/2 a1^-1"`.
pub fn format_poly(p: &LaurentPoly, table: &VarTable) -> String {
    use core::fmt::Write;
    if p.is_zero() {
        return String::from("0");
    }
    let mut s = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let negative = c < num_rational::BigRational::from_integer(0.into());
        let abs = if negative { -c } else { c };
        if i == 0 {
            if negative {
                s.push('-');
            }
        } else {
            s.push_str(if negative { " - " } else { " + " });
        }
        if m.is_one() {
            let _ = write!(s, "{abs}");
        } else {
            if !num_traits::One::is_one(&abs) {
                let _ = write!(s, "{abs} ");
            }
            s.push_str(&table.format_monomial(&m));
        }
    }
    s
}
