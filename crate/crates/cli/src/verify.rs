//! Verification suites. Each check prints one `PASS`, `FAIL` or `SKIP`
//! line; a check is skipped when the requested order is too small for it.

use apery_core::apery::{apery_sequences, convergent_errors_decreasing, zeta3_convergent};
use apery_core::diff_ops::ThetaOperator;
use apery_core::family;
use apery_core::frobenius::{beukers, frobenius_basis, monodromy_shift, CanonicalBasis};
use apery_core::instanton::{lambert_extract, lambert_synthesize, Period};
use apery_core::logseries::LogSeries;
use apery_core::mirror::yukawa_from_prepotential;
use apery_core::modular::{eta_quotient, f_spec, h_series, hexagonal_theta, hexagonal_theta_product, t_spec};
use apery_core::rational::{frac, int, BigRational};
use apery_core::series::{PowerSeries, Var};
use clap::ValueEnum;

use crate::commands::{Context, Family};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Apery,
    Frobenius,
    Modular,
    Yukawa,
    Instanton,
    Dwork,
}

impl Suite {
    pub fn default_order(self) -> usize {
        match self {
            Suite::All => 0,
            Suite::Apery => 300,
            Suite::Frobenius => 60,
            Suite::Modular | Suite::Yukawa => 100,
            Suite::Instanton => 120,
            Suite::Dwork => 40,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Apery => "apery",
            Suite::Frobenius => "frobenius",
            Suite::Modular => "modular",
            Suite::Yukawa => "yukawa",
            Suite::Instanton => "instanton",
            Suite::Dwork => "dwork",
        }
    }
}

pub enum Status {
    Pass(String),
    Fail(String),
    Skip(String),
}

pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub status: Status,
}

impl Check {
    pub fn line(&self) -> String {
        let (tag, detail) = match &self.status {
            Status::Pass(d) => ("PASS", d),
            Status::Fail(d) => ("FAIL", d),
            Status::Skip(d) => ("SKIP", d),
        };
        format!("{tag} {}/{}: {detail}", self.suite, self.name)
    }

    pub fn failed(&self) -> bool {
        matches!(self.status, Status::Fail(_))
    }
}

type Outcome = Result<String, String>;

struct Runner {
    suite: &'static str,
    order: usize,
    checks: Vec<Check>,
}

impl Runner {
    fn check(&mut self, name: &'static str, needs: usize, f: impl FnOnce() -> Outcome) {
        let status = if self.order < needs {
            Status::Skip(format!("needs --order >= {needs}"))
        } else {
            match f() {
                Ok(d) => Status::Pass(d),
                Err(d) => Status::Fail(d),
            }
        };
        let check = Check { suite: self.suite, name, status };
        println!("{}", check.line());
        self.checks.push(check);
    }
}

fn ensure(cond: bool, ok: String, err: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(ok)
    } else {
        Err(err())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn ints(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| int(x)).collect()
}

fn prefix(s: &PowerSeries, expect: &[BigRational]) -> Outcome {
    let got = &s.coeffs()[..expect.len()];
    let show = |v: &[BigRational]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    ensure(got == expect, show(got), || format!("got {}, expected {}", show(got), show(expect)))
}

/// Runs `suite` at `order` (0 picks each suite's default) and returns
/// every check made.
pub fn run(ctx: &Context, suite: Suite, order: usize) -> Vec<Check> {
    if suite == Suite::All {
        return [Suite::Apery, Suite::Frobenius, Suite::Modular, Suite::Yukawa, Suite::Instanton, Suite::Dwork]
            .into_iter()
            .flat_map(|s| run(ctx, s, order))
            .collect();
    }
    let order = if order == 0 { suite.default_order() } else { order };
    let mut r = Runner { suite: suite.name(), order, checks: Vec::new() };
    match suite {
        Suite::Apery => apery(&mut r),
        Suite::Frobenius => frobenius(ctx, &mut r),
        Suite::Modular => modular(ctx, &mut r),
        Suite::Yukawa => yukawa(ctx, &mut r),
        Suite::Instanton => instanton(ctx, &mut r),
        Suite::Dwork => dwork(ctx, &mut r),
        Suite::All => unreachable!(),
    }
    r.checks
}

fn apery(r: &mut Runner) {
    let n = r.order;
    let pair = apery_sequences(n);
    r.check("integrality", 1, || {
        pair.as_ref().map(|_| format!("A_n and d_n^3 B_n integral for n <= {n}")).map_err(e)
    });
    let Ok(pair) = pair else { return };
    r.check("first values", 4, || {
        prefix(&PowerSeries::new(pair.a.iter().cloned().map(BigRational::from_integer).collect(), Var::X), &ints(&[1, 5, 73, 1445]))?;
        let b = [int(0), int(6), frac(351, 4), frac(62531, 36), frac(11424695, 288)];
        ensure(pair.b[..5] == b, "B_1..B_4 match".into(), || "B_1..B_4 differ".into())
    });
    r.check("convergent error decreasing", 3, || {
        let to = n.min(50);
        match convergent_errors_decreasing(2, to).map_err(e)? {
            None => Ok(format!("strictly decreasing for 2 <= n <= {to}")),
            Some(k) => Err(format!("could not separate errors at n = {k}")),
        }
    });
    r.check("convergent B_10/A_10", 10, || {
        let c = zeta3_convergent(10).map_err(e)?;
        let ok = c.error_bound < frac(1, 100_000_000_000_000);
        ensure(ok, format!("|B_10/A_10 - zeta(3)| <= {}", c.error_bound_decimal()), || {
            format!("error bound {} too large", c.error_bound_decimal())
        })
    });
}

fn kills(op: &ThetaOperator, s: &LogSeries) -> bool {
    op.apply(s).is_zero()
}

fn binomial_monodromy(b: &CanonicalBasis) -> bool {
    let w = b.solutions();
    w.iter().enumerate().all(|(j, wj)| {
        let mut expect = wj.scale(&int(0));
        let mut c = 1i64;
        for (i, wi) in w.iter().enumerate().take(j + 1) {
            expect = expect.add(&wi.scale(&int(c)));
            c = c * (j - i) as i64 / (i as i64 + 1);
        }
        monodromy_shift(wj) == expect
    })
}

fn frobenius(ctx: &Context, r: &mut Runner) {
    let n = r.order;
    let basis = ctx.basis(Family::Beukers, n);
    let Ok(rec) = basis else {
        r.check("recursion route", 0, || Err("could not build the recursion basis".into()));
        return;
    };
    r.check("routes agree", 1, || {
        let eps = beukers::frobenius_route(n).map_err(e)?;
        let same = rec.w0() == eps.w0() && (1..=3).all(|j| rec.h(j) == eps.h(j));
        ensure(same, format!("recursion and eps-ring routes agree to order {n}"), || "routes differ".into())
    });
    r.check("h1 prefix", 3, || prefix(rec.h(1), &ints(&[0, 12, 210, 4438])));
    r.check("h2 prefix", 3, || prefix(rec.h(2), &ints(&[0, 0, 144, 4320])));
    r.check("h3 prefix", 3, || prefix(rec.h(3), &[int(0), int(-42), frac(-3033, 4), frac(-522389, 36)]));
    let w = rec.solutions();
    r.check("L annihilates w0..w2", 1, || {
        let l = family::beukers_l();
        ensure(w[..3].iter().all(|s| kills(&l, s)), format!("to order {n}"), || "nonzero residual".into())
    });
    r.check("D annihilates w0..w3", 1, || {
        let d = family::beukers_d();
        ensure(w.iter().all(|s| kills(&d, s)), format!("to order {n}"), || "nonzero residual".into())
    });
    r.check("quadratic relation", 2, || {
        let p = |i: usize, j: usize| w[i].mul(&w[j]).map(|s| s.truncate(n)).map_err(e);
        ensure(p(0, 2)? == p(1, 1)?, "w0 w2 = w1^2".into(), || "w0 w2 != w1^2".into())?;
        ensure(p(0, 3)? != p(1, 2)?, "w0 w2 = w1^2, w0 w3 != w1 w2".into(), || "w0 w3 = w1 w2".into())
    });
    r.check("monodromy", 1, || {
        ensure(binomial_monodromy(&rec), "L -> L+1 acts by the binomial matrix".into(), || "wrong matrix".into())
    });
}

fn modular(ctx: &Context, r: &mut Runner) {
    let n = r.order;
    let t = eta_quotient(&t_spec(), n.max(1));
    let f = eta_quotient(&f_spec(), n.max(1));
    r.check("T prefix", 4, || prefix(&t, &ints(&[0, 1, -12, 66, -220])));
    r.check("F prefix", 3, || prefix(&f, &ints(&[1, 5, 13, 23])));
    r.check("H prefix", 3, || prefix(&h_series(n), &ints(&[1, -12, -12, -12])));
    r.check("integral T and F", 1, || {
        ensure(t.is_integral() && f.is_integral(), format!("to order {n}"), || "non-integral coefficient".into())
    });
    r.check("hexagonal theta routes", 1, || {
        let same = hexagonal_theta(n) == hexagonal_theta_product(n);
        ensure(same, format!("lattice sum = theta products to order {n}"), || "routes differ".into())
    });
    r.check("F = sum A_n T^n", 1, || {
        let w0 = ctx.basis(Family::Beukers, n).map_err(|e| e.to_string())?.w0().clone();
        let same = w0.compose(&t).map_err(e)? == f;
        ensure(same, format!("to order {n}"), || "mismatch".into())
    });
    r.check("mirror map = T", 1, || {
        let m = ctx.mirror(Family::Beukers, n).map_err(|e| e.to_string())?;
        ensure(m.phi_of_q == t, format!("phi(q) = T(q) to order {n}"), || "mismatch".into())
    });
}

fn yukawa(ctx: &Context, r: &mut Runner) {
    let n = r.order;
    let m = match ctx.mirror(Family::Beukers, n) {
        Ok(m) => m,
        Err(err) => {
            r.check("mirror", 0, || Err(err.to_string()));
            return;
        }
    };
    let y = m.yukawa_d();
    r.check("prefix", 6, || {
        let y = y.as_ref().map_err(e)?;
        prefix(y, &ints(&[6, -42, -354, -1230, -2850, -5292, -8886]))
    });
    r.check("Y = 6 F H", 1, || {
        let y = y.as_ref().map_err(e)?;
        let fh = (&eta_quotient(&f_spec(), n) * &h_series(n)).scale(&int(6));
        ensure(*y == fh, format!("to order {n}"), || "mismatch".into())
    });
    r.check("Y/6 integral", 1, || {
        let y = y.as_ref().map_err(e)?;
        ensure(y.scale(&frac(1, 6)).is_integral(), format!("to order {n}"), || "non-integral".into())
    });
    r.check("prepotential ambiguity", 1, || {
        let f = m.prepotential().map_err(e)?;
        let k = f.order();
        let extra = LogSeries::new(vec![
            PowerSeries::constant(Var::Q, k, frac(-2, 7)),
            PowerSeries::constant(Var::Q, k, int(3)),
            PowerSeries::constant(Var::Q, k, frac(5, 2)),
        ])
        .map_err(e)?;
        let same = yukawa_from_prepotential(&f.add(&extra)).map_err(e)? == yukawa_from_prepotential(&f).map_err(e)?;
        ensure(same, "adding c2 L^2 + c1 L + c0 leaves Y unchanged".into(), || "Y changed".into())
    });
    r.check("normalized Y_bp", 1, || {
        let k = ctx.mirror(Family::Beukers, n + 1).and_then(|m| m.yukawa_bp_normalized().map_err(crate::commands::core_error));
        let k = k.map_err(|e| e.to_string())?;
        ensure(k == PowerSeries::one(Var::Q, k.order()), format!("constant 1 to order {}", k.order()), || "not constant".into())
    });
    r.check("rival denominators", 1, || {
        let m30 = ctx.mirror(Family::Beukers, 30).map_err(|e| e.to_string())?;
        let tilde = frobenius_basis(&family::beukers_d_tilde(), 4, 30).map_err(e)?;
        let y = m30.yukawa_variant(tilde.h(3)).map_err(e)?;
        let (a, b) = (y.truncate(10).denominator_lcm(), y.truncate(30).denominator_lcm());
        ensure(b > a, format!("lcm of denominators {a} (order 10) < {b} (order 30)"), || {
            format!("lcm did not grow: {a} -> {b}")
        })
    });
}

fn instanton(ctx: &Context, r: &mut Runner) {
    let n = r.order;
    let y = ctx.mirror(Family::Beukers, n).and_then(|m| m.yukawa_d().map_err(crate::commands::core_error));
    let y = match y {
        Ok(y) => y,
        Err(err) => {
            r.check("yukawa", 0, || Err(err.to_string()));
            return;
        }
    };
    let t = lambert_extract(&y);
    r.check("first six", 6, || {
        let s = PowerSeries::new(t.numbers[..6].to_vec(), Var::X);
        prefix(&s, &ints(&[-42, -39, -44, -39, -42, -34]))
    });
    r.check("integral", 1, || {
        ensure(t.all_integral(), format!("N_k integral for k <= {n}"), || {
            format!("N_{} not integral", t.first_non_integral().unwrap_or(0))
        })
    });
    r.check("period", 18, || match t.detect_period() {
        p @ Period::Found { period: 6, .. } => Ok(p.to_string()),
        p => Err(p.to_string()),
    });
    r.check("lambert round trip", 1, || {
        let back = lambert_synthesize(&t, n).map_err(e)?;
        ensure(back == y, format!("synthesis reproduces Y to order {n}"), || "mismatch".into())
    });
}

fn dwork(ctx: &Context, r: &mut Runner) {
    let n = r.order;
    let b = match ctx.basis(Family::Dwork, n) {
        Ok(b) => b,
        Err(err) => {
            r.check("closed form vs frobenius", 0, || Err(err.to_string()));
            return;
        }
    };
    r.check("closed form vs frobenius", 1, || Ok(format!("W0, h1 routes agree to order {n}")));
    r.check("W0 prefix", 3, || prefix(b.w0(), &ints(&[1, 24, 2520, 369600])));
    r.check("quadratic relation", 1, || {
        let w = b.solutions();
        let p = |i: usize, j: usize| w[i].mul(&w[j]).map(|s| s.truncate(n)).map_err(e);
        ensure(p(0, 2)? == p(1, 1)?, "W0 W2 = W1^2".into(), || "W0 W2 != W1^2".into())
    });
    r.check("annihilators", 1, || {
        let w = b.solutions();
        let ok = w[..3].iter().all(|s| kills(&family::dwork_l(), s)) && w.iter().all(|s| kills(&family::dwork_d(), s));
        ensure(ok, "L_dk kills W0..W2, D_dk kills W0..W3".into(), || "nonzero residual".into())
    });
    let m = match ctx.mirror(Family::Dwork, n) {
        Ok(m) => m,
        Err(err) => {
            r.check("mirror", 0, || Err(err.to_string()));
            return;
        }
    };
    r.check("mirror map prefix", 4, || prefix(&m.phi_of_q, &ints(&[0, 1, -104, 6444, -311744])));
    let y = m.yukawa_d();
    r.check("yukawa prefix", 4, || prefix(y.as_ref().map_err(e)?, &ints(&[6, -480, -2400, -13440, -17760])));
    let t = y.as_ref().map(lambert_extract);
    r.check("N_1, N_2", 2, || {
        let t = t.as_ref().map_err(e)?;
        prefix(&PowerSeries::new(t.numbers[..2].to_vec(), Var::X), &ints(&[-480, -240]))
    });
    r.check("integral", 1, || {
        let t = t.as_ref().map_err(e)?;
        ensure(t.all_integral(), format!("N_k integral for k <= {n}"), || "non-integral N_k".into())
    });
    r.check("period", 6, || match t.as_ref().map_err(e)?.detect_period() {
        p @ Period::Found { period: 2, .. } => Ok(p.to_string()),
        p => Err(p.to_string()),
    });
    r.check("normalized Y_bp", 1, || {
        let k = ctx.mirror(Family::Dwork, n + 1).and_then(|m| m.yukawa_bp_normalized().map_err(crate::commands::core_error));
        let k = k.map_err(|e| e.to_string())?;
        ensure(k == PowerSeries::one(Var::Q, k.order()), format!("constant 1 to order {}", k.order()), || "not constant".into())
    });
}
