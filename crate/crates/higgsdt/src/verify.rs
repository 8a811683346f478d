//! Named verification suites behind `higgsdt verify`.

use std::io::Write;

use anyhow::Result;
use higgsdt_core::algebra::{alpha, BinomialFactor, Fraction, LaurentPoly, Monomial, TruncSeries, Q, T};
use higgsdt_core::dt::{
    alt_idt, idt_star, jacobian_polynomial, n_lambda, n_lambda_in, rank_one_closed_form, substitution_identity_check,
    weil_symmetry_check, CurveParams, IdtTable,
};
use higgsdt_core::oracle::{compare_with_formula, stack_volume_p1, OracleOptions};
use higgsdt_core::partitions::{enumerate_partitions, partitions_up_to};
use higgsdt_core::positive::{
    default_depth, f_symbolic, inductive_property_check, laurent_property_check, stabilization_check, FContext,
};
use higgsdt_core::zeta::{point_counts, point_counts_exact, specialize_integer, ZetaData, DEFAULT_TOL};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::cli::{Suite, VerifyArgs};
use crate::commands::{curve_params_json, zeta_data};
use crate::emit::{Cell, Document};
use crate::Status;

const SEED: u64 = 0x5eed_1234;
const EXP_LOG_CASES: usize = 25;
const EXP_LOG_ORDER: usize = 5;

struct Check {
    suite: &'static str,
    name: String,
    passed: bool,
    detail: String,
}

struct Runner<'a> {
    args: &'a VerifyArgs,
    checks: Vec<Check>,
}

type Outcome = higgsdt_core::Result<(bool, String)>;

impl Runner<'_> {
    fn record(&mut self, suite: &'static str, name: impl Into<String>, outcome: Outcome) {
        let (passed, detail) = outcome.unwrap_or_else(|e| (false, e.to_string()));
        self.checks.push(Check { suite, name: name.into(), passed, detail });
    }

    fn curve(&self) -> higgsdt_core::Result<CurveParams> {
        self.args.curve.params()
    }
}

fn ok(cond: bool, detail: impl Into<String>) -> Outcome {
    Ok((cond, detail.into()))
}

fn exp_log(run: &mut Runner) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let one = TruncSeries::one(EXP_LOG_ORDER, 2);
    let outcome = (|| -> Outcome {
        for case in 0..EXP_LOG_CASES {
            let a = random_series(&mut rng);
            let b = random_series(&mut rng);
            let ea = a.pleth_exp()?;
            if ea.pleth_log()? != a {
                return ok(false, format!("case {case}: Log Exp is not the identity"));
            }
            let shifted = a.checked_add(&one)?;
            if shifted.pleth_log()?.pleth_exp()? != shifted {
                return ok(false, format!("case {case}: Exp Log is not the identity"));
            }
            if a.checked_add(&b)?.pleth_exp()? != ea.checked_mul(&b.pleth_exp()?)? {
                return ok(false, format!("case {case}: Exp is not additive"));
            }
            if a.psi(2).psi(3) != a.psi(6) {
                return ok(false, format!("case {case}: ψ₂ψ₃ ≠ ψ₆"));
            }
        }
        ok(true, format!("{EXP_LOG_CASES} random series of order {EXP_LOG_ORDER}"))
    })();
    run.record("exp-log", "roundtrip, additivity, adams", outcome);
}

fn random_series(rng: &mut ChaCha8Rng) -> TruncSeries {
    let nv = 2;
    let q = Monomial::var(Q);
    let t = Monomial::var(T);
    let dens = [BinomialFactor::new(q, t), BinomialFactor::one_minus(t), BinomialFactor::new(q, Monomial::ONE)];
    let mut coeffs = vec![Fraction::zero(nv)];
    for _ in 0..EXP_LOG_ORDER {
        let terms: Vec<_> = (0..rng.gen_range(0..3))
            .map(|_| {
                let m = Monomial::from_exponents(&[rng.gen_range(-1..3), rng.gen_range(0..3)]);
                (m, BigInt::from(rng.gen_range(-3..4)))
            })
            .collect();
        let k = rng.gen_range(0..=dens.len());
        coeffs.push(Fraction::over_binomials(LaurentPoly::from_terms(nv, terms), &dens[..k]));
    }
    TruncSeries::from_coeffs(EXP_LOG_ORDER, coeffs)
}

fn integrality(run: &mut Runner) {
    let rmax = run.args.rmax;
    let outcome = run.curve().and_then(|cp| {
        let idt = idt_star(&cp, rmax)?;
        let bad: Vec<usize> = (1..=idt.len()).filter(|&r| !idt[r - 1].is_integral()).collect();
        ok(bad.is_empty(), if bad.is_empty() { format!("r ≤ {rmax}") } else { format!("non-integral at r ∈ {bad:?}") })
    });
    run.record("integrality", format!("IDT r ≤ {rmax}"), outcome);
}

fn rank_one(run: &mut Runner) {
    let outcome = run.curve().and_then(|cp| {
        let idt = idt_star(&cp, 1)?;
        let at_one = idt[0].at_one(T);
        let jac = jacobian_polynomial(cp.genus());
        let signed = if cp.p() % 2 == 0 { jac } else { -jac };
        ok(
            idt[0] == rank_one_closed_form(&cp) && at_one == signed,
            "closed form and Jacobian polynomial at t = 1",
        )
    });
    run.record("rank-one", "closed form", outcome);
}

fn weyl(run: &mut Runner) {
    let rmax = run.args.rmax;
    let outcome = run.curve().and_then(|cp| {
        let table = IdtTable::compute(&cp, rmax)?;
        let bad: Vec<usize> = (1..=rmax).filter(|&r| !weil_symmetry_check(&table.idt_at_one(r), cp.genus())).collect();
        ok(bad.is_empty(), if bad.is_empty() { format!("r ≤ {rmax}") } else { format!("not invariant at r ∈ {bad:?}") })
    });
    run.record("weyl", format!("IDT(q,1) r ≤ {rmax}"), outcome);
}

fn alternative(run: &mut Runner) {
    let rmax = run.args.rmax;
    let cp = run.curve();
    let sub = cp.clone().and_then(|cp| substitution_identity_check(&cp, rmax).map(|_| (true, format!("|λ| ≤ {rmax}"))));
    run.record("alternative", "termwise substitution", sub);
    let agree = cp.and_then(|cp| {
        let alt = alt_idt(&cp, rmax)?;
        let idt = idt_star(&cp, rmax)?;
        let bad: Vec<usize> = (1..=rmax).filter(|&r| alt[r - 1].at_one(T) != idt[r - 1].at_one(T)).collect();
        ok(bad.is_empty(), if bad.is_empty() { format!("r ≤ {rmax}") } else { format!("differ at r ∈ {bad:?}") })
    });
    run.record("alternative", "agreement at t = 1", agree);
}

fn stabilization(run: &mut Runner) {
    let cp = match run.curve() {
        Ok(cp) => cp,
        Err(e) => return run.record("stabilization", "parameters", Err(e)),
    };
    for r in 1..=run.args.rmax {
        let depth = run.args.depth.unwrap_or_else(|| default_depth(&cp, r));
        let outcome = stabilization_check(&cp, r, depth).map(|rep| {
            let d0 = rep.d0.map_or("none".to_string(), |d| d.to_string());
            (rep.passed(), format!("depth {depth}, d0 = {d0}"))
        });
        run.record("stabilization", format!("r = {r}"), outcome);
    }
}

fn combinatorics(run: &mut Runner) {
    let nv = 3;
    let u = Monomial::var(alpha(0)).inv();
    let bad = partitions_up_to(6).into_iter().find(|l| n_lambda(l, &u, nv) != n_lambda_in(&l.conjugate(), &u, T, Q, nv));
    run.record("combinatorics", "hook product under conjugation", ok(bad.is_none(), match bad {
        None => "|λ| ≤ 6".into(),
        Some(l) => format!("fails at {l}"),
    }));
    let bad = partitions_up_to(10).into_iter().find(|l| {
        let legs: usize = l.arm_legs().iter().map(|&(_, leg)| leg).sum();
        let squares: usize = l.conjugate().parts().iter().map(|c| c * c).sum();
        squares != 2 * legs + l.weight() || l.norm_form() != squares
    });
    run.record("combinatorics", "quadratic form", ok(bad.is_none(), match bad {
        None => "|λ| ≤ 10".into(),
        Some(l) => format!("fails at {l}"),
    }));
    // Euler's pentagonal recurrence.
    let n_max = 20usize;
    let mut p = vec![1i64; n_max + 1];
    for n in 1..=n_max {
        let mut s = 0i64;
        for k in 1.. {
            let k = k as i64;
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let mut any = false;
            for g in [k * (3 * k - 1) / 2, k * (3 * k + 1) / 2] {
                if g as usize <= n {
                    s += sign * p[n - g as usize];
                    any = true;
                }
            }
            if !any {
                break;
            }
        }
        p[n] = s;
    }
    let bad = (0..=n_max).find(|&n| enumerate_partitions(n).len() as i64 != p[n]);
    run.record("combinatorics", "partition counts", ok(bad.is_none(), match bad {
        None => format!("n ≤ {n_max}"),
        Some(n) => format!("count differs at n = {n}"),
    }));
}

fn f_function(run: &mut Runner) {
    let g = run.args.curve.genus;
    for n in 0..=2 {
        run.record("f-function", format!("inductive n = {n}"), inductive_property_check(n, g).map(|b| (b, format!("g = {g}"))));
        run.record("f-function", format!("laurent n = {n}"), laurent_property_check(n, g).map(|b| (b, format!("g = {g}"))));
    }
    for n in 0..=3 {
        let outcome = FContext::new(n, 0).map(|ctx| (f_symbolic(&ctx) == Fraction::one(ctx.nvars()), "g = 0".into()));
        run.record("f-function", format!("no Weil numbers n = {n}"), outcome);
    }
}

fn oracle(run: &mut Runner) {
    let q = run.args.q;
    let ell = if run.args.curve.canonical { Err(()) } else { Ok(run.args.curve.ell.unwrap_or(1)) };
    let Ok(ell) = ell else {
        return run.record("oracle", "parameters", ok(false, "the oracle needs a positive twist"));
    };
    let opts = OracleOptions::default();
    for (r, d) in [(1usize, 0i64), (2, 1)] {
        let outcome = compare_with_formula(r, d, ell, q, opts).map(|c| {
            (c.agrees(), format!("oracle {} formula {}", c.oracle.volume, c.formula))
        });
        run.record("oracle", format!("r = {r} d = {d} ℓ = {ell} q = {q}"), outcome);
    }
    let outcome = stack_volume_p1(2, 1, ell, q, opts)
        .and_then(|a| stack_volume_p1(2, -1, ell, q, opts).map(|b| (a.volume == b.volume, format!("{}", a.volume))));
    run.record("oracle", "twist invariance r = 2", outcome);
}

fn specialize(run: &mut Runner) {
    let data: Vec<(ZetaData, CurveParams)> = match zeta_data(&run.args.zeta) {
        Ok(Some(zd)) => {
            let g = zd.genus();
            let cp = if run.args.curve.canonical {
                CurveParams::canonical(g)
            } else {
                CurveParams::twisted(g, run.args.curve.ell.unwrap_or((2 * g as i64 - 1).max(1)))
            };
            match cp {
                Ok(cp) => vec![(zd, cp)],
                Err(e) => return run.record("specialize", "parameters", Err(e)),
            }
        }
        Ok(None) => (-2..=2)
            .map(|a| (ZetaData::from_traces(2, &[a]).unwrap(), CurveParams::twisted(1, 1).unwrap()))
            .collect(),
        Err(e) => return run.record("specialize", "parameters", ok(false, format!("{e:#}"))),
    };
    for (zd, cp) in data {
        let label = match (zd.q0(), zd.traces()) {
            (Some(q0), Some(tr)) => format!("q0 = {q0} traces {tr:?}"),
            (Some(q0), None) => format!("q0 = {q0} Weil numbers"),
            _ => "symbolic".into(),
        };
        let outcome = (|| -> Outcome {
            let idt = IdtTable::compute(&cp, 1)?.idt_at_one(1);
            let got = specialize_integer(&idt, &zd, DEFAULT_TOL)?;
            let jac = specialize_integer(&jacobian_polynomial(zd.genus()), &zd, DEFAULT_TOL)?.value;
            let expected = if cp.p() % 2 == 0 { jac } else { -jac };
            let mut passed = got.value == expected;
            if let (Some(q0), Some(tr)) = (zd.q0(), zd.traces()) {
                let exact: BigInt = tr.iter().map(|&a| BigInt::from(q0 as i64 + 1 - a)).product();
                let exact = if cp.p() % 2 == 0 { exact } else { -exact };
                passed &= got.value == exact;
            }
            let counts = point_counts(&zd, 4)?;
            let counts_exact = point_counts_exact(&zd, 4)?;
            let consistent = counts_exact.iter().enumerate().all(|(i, c)| {
                let z = counts.get(i + 1);
                (z.re - c.to_string().parse::<f64>().unwrap_or(f64::NAN)).abs() < 1e-6 * (1.0 + z.re.abs())
            });
            ok(passed && consistent, format!("IDT_1 = {} (residual {:.1e})", got.value, got.residual))
        })();
        run.record("specialize", label, outcome);
    }
}

fn canonical(run: &mut Runner) {
    let g = run.args.curve.genus.max(1);
    let rmax = run.args.rmax.min(2);
    let outcome = CurveParams::canonical(g).and_then(|cp| {
        let table = IdtTable::compute(&cp, rmax)?;
        let a1 = table.indecomposable_count(1)?;
        let mut passed = a1 == jacobian_polynomial(g);
        for r in 1..=rmax {
            passed &= weil_symmetry_check(&table.indecomposable_count(r)?, g);
        }
        ok(passed, format!("g = {g}, A_1 is the Jacobian polynomial, r ≤ {rmax} invariant"))
    });
    run.record("canonical", "indecomposable counts", outcome);
}

pub(crate) fn run(args: &VerifyArgs, out: &mut dyn Write) -> Result<Status> {
    let mut runner = Runner { args, checks: Vec::new() };
    let suites: &[Suite] = match args.suite {
        Suite::All => &[
            Suite::ExpLog,
            Suite::Integrality,
            Suite::RankOne,
            Suite::Weyl,
            Suite::Alternative,
            Suite::Stabilization,
            Suite::Combinatorics,
            Suite::FFunction,
            Suite::Oracle,
            Suite::Specialize,
            Suite::Canonical,
        ],
        ref s => std::slice::from_ref(s),
    };
    for suite in suites {
        match suite {
            Suite::ExpLog => exp_log(&mut runner),
            Suite::Integrality => integrality(&mut runner),
            Suite::RankOne => rank_one(&mut runner),
            Suite::Weyl => weyl(&mut runner),
            Suite::Alternative => alternative(&mut runner),
            Suite::Stabilization => stabilization(&mut runner),
            Suite::Combinatorics => combinatorics(&mut runner),
            Suite::FFunction => f_function(&mut runner),
            Suite::Oracle => oracle(&mut runner),
            Suite::Specialize => specialize(&mut runner),
            Suite::Canonical => canonical(&mut runner),
            Suite::All => unreachable!(),
        }
    }
    let passed = runner.checks.iter().all(|c| c.passed);
    let vars = args.curve.params().map(|cp| cp.table()).or_else(|_| higgsdt_core::algebra::VarTable::new(0))?;
    let mut doc = Document::new("verify", vars, &["suite", "check", "passed", "detail"]);
    doc.param("suite", format!("{:?}", args.suite).to_lowercase());
    if let Ok(cp) = args.curve.params() {
        curve_params_json(&mut doc, &cp);
    }
    doc.param("rmax", args.rmax);
    doc.param("q", args.q);
    for c in &runner.checks {
        doc.push(vec![Cell::from(c.suite), Cell::from(c.name.clone()), Cell::from(c.passed), Cell::from(c.detail.clone())]);
    }
    doc.summary.insert("passed".into(), json!(passed));
    doc.write(args.format, out)?;
    Ok(if passed { Status::Ok } else { Status::Failed })
}
