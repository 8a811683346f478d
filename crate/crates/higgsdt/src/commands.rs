use std::io::Write;

use anyhow::Result;
use higgsdt_core::dt::{CurveParams, IdtTable, Mode};
use higgsdt_core::oracle::{compare_with_formula, stack_volume_p1, OracleOptions};
use higgsdt_core::zeta::{specialize_integer, ZetaData};
use num_complex::Complex64;
use num_integer::Integer;
use serde_json::json;

use crate::cli::{ComputeArgs, OracleArgs, SpecializeArgs, ZetaArgs};
use crate::emit::{Cell, Document};
use crate::{Status, UsageError};

pub(crate) fn curve_params_json(doc: &mut Document, cp: &CurveParams) {
    doc.param("genus", cp.genus());
    doc.param("ell", cp.ell());
    doc.param("p", cp.p());
    doc.param("mode", if cp.mode() == Mode::Canonical { "canonical" } else { "twisted" });
}

/// Smallest `d ≥ 0` coprime to `r`.
fn sample_degree(r: usize) -> i64 {
    (0..).find(|d: &i64| d.gcd(&(r as i64)) == 1).unwrap()
}

pub(crate) fn compute(args: &ComputeArgs, out: &mut dyn Write) -> Result<Status> {
    let cp = args.curve.params()?;
    let table = IdtTable::compute(&cp, args.rmax)?;
    let twisted = cp.mode() == Mode::Twisted;
    let last = if twisted { "volume" } else { "indecomposable" };
    let columns: &[&str] =
        if twisted { &["r", "idt", "idt_t1", "omega", "d", last] } else { &["r", "idt", "idt_t1", "omega", last] };
    let mut doc = Document::new("compute", cp.table(), columns);
    curve_params_json(&mut doc, &cp);
    doc.param("rmax", args.rmax);
    for r in 1..=args.rmax {
        let mut row = vec![
            Cell::from(r),
            Cell::Poly(table.idt(r).clone()),
            Cell::Poly(table.idt_at_one(r)),
            Cell::Omega(table.omega(r)),
        ];
        if twisted {
            let d = sample_degree(r);
            row.push(Cell::from(d));
            row.push(Cell::Poly(table.moduli_volume(r, d)?));
        } else {
            row.push(Cell::Poly(table.indecomposable_count(r)?));
        }
        doc.push(row);
    }
    doc.write(args.format, out)?;
    Ok(Status::Ok)
}

pub(crate) fn oracle(args: &OracleArgs, out: &mut dyn Write) -> Result<Status> {
    let opts = OracleOptions { cap: args.cap };
    let cp = CurveParams::twisted(0, args.ell)?;
    let mut doc = Document::new(
        "oracle-p1",
        cp.table(),
        &["rank", "deg", "oracle", "formula", "verdict", "spread_bound", "widened"],
    );
    doc.param("q", args.q);
    doc.param("ell", args.ell);
    doc.param("rank", args.rank);
    doc.param("deg", args.deg);
    doc.param("cap", args.cap.to_string());
    let coprime = (args.rank as i64).gcd(&args.deg) == 1;
    let (report, formula, status) = if coprime {
        let c = compare_with_formula(args.rank, args.deg, args.ell, args.q, opts)?;
        let agrees = c.agrees();
        (c.oracle, Cell::Rat(c.formula), if agrees { Status::Ok } else { Status::Failed })
    } else {
        (stack_volume_p1(args.rank, args.deg, args.ell, args.q, opts)?, Cell::Null, Status::Ok)
    };
    let verdict = match (coprime, status) {
        (false, _) => "no-formula",
        (true, Status::Ok) => "agree",
        (true, Status::Failed) => "mismatch",
    };
    doc.push(vec![
        Cell::from(args.rank),
        Cell::from(args.deg),
        Cell::Rat(report.volume),
        formula,
        Cell::from(verdict),
        Cell::from(report.bound),
        Cell::from(report.widened),
    ]);
    doc.summary.insert("passed".into(), json!(status == Status::Ok));
    doc.write(args.format, out)?;
    Ok(status)
}

fn parse_weil(s: &str) -> Result<Vec<Complex64>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|pair| {
            let (re, im) = pair
                .split_once(':')
                .ok_or_else(|| UsageError(format!("Weil number {pair:?} is not of the form re:im")))?;
            let parse = |x: &str| {
                x.trim().parse::<f64>().map_err(|_| UsageError(format!("bad number {x:?} in Weil number {pair:?}")))
            };
            Ok(Complex64::new(parse(re)?, parse(im)?))
        })
        .collect()
}

/// Numeric zeta data from `--q0` with `--trace` or `--weil`; `None` when absent.
pub(crate) fn zeta_data(args: &ZetaArgs) -> Result<Option<ZetaData>> {
    let Some(q0) = args.q0 else {
        if !args.trace.is_empty() || args.weil.is_some() {
            return Err(UsageError("--trace and --weil need --q0".into()).into());
        }
        return Ok(None);
    };
    let zd = match &args.weil {
        Some(w) => ZetaData::from_weil(q0, parse_weil(w)?)?,
        None => ZetaData::from_traces(q0, &args.trace)?,
    };
    Ok(Some(zd))
}

pub(crate) fn specialize(args: &SpecializeArgs, out: &mut dyn Write) -> Result<Status> {
    let zd = zeta_data(&args.zeta)?.ok_or_else(|| UsageError("specialize needs --q0".into()))?;
    let g = zd.genus();
    let cp = if args.canonical {
        CurveParams::canonical(g)?
    } else {
        CurveParams::twisted(g, args.ell.unwrap_or((2 * g as i64 - 1).max(1)))?
    };
    let table = IdtTable::compute(&cp, args.rmax)?;
    let mut doc = Document::new("specialize", cp.table(), &["r", "idt_t1", "value", "residual", "exact"]);
    curve_params_json(&mut doc, &cp);
    doc.param("q0", zd.q0());
    if let Some(tr) = zd.traces() {
        doc.param("trace", tr.to_vec());
    }
    if let Some(w) = zd.weil() {
        doc.param("weil", w.iter().map(|z| json!([z.re, z.im])).collect::<Vec<_>>());
    }
    doc.param("rmax", args.rmax);
    doc.param("tol", args.tol);
    for r in 1..=args.rmax {
        let x = table.idt_at_one(r);
        let s = specialize_integer(&x, &zd, args.tol)?;
        doc.push(vec![Cell::from(r), Cell::Poly(x), Cell::Int(s.value), Cell::Float(s.residual), Cell::from(s.exact)]);
    }
    doc.write(args.format, out)?;
    Ok(Status::Ok)
}
