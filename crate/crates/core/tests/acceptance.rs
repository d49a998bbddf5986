//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion does. All comparisons are exact and the
//! runtime limits are enforced.

use std::time::{Duration, Instant};

use apery_core::apery::apery_sequences;
use apery_core::diff_ops::ThetaOperator;
use apery_core::dwork::dwork_mirror_yukawa;
use apery_core::family;
use apery_core::frobenius::{beukers, frobenius_basis, monodromy_shift, CanonicalBasis};
use apery_core::instanton::{lambert_extract, lambert_synthesize, InstantonTable, Period};
use apery_core::logseries::LogSeries;
use apery_core::mirror::{build_mirror, MirrorData};
use apery_core::modular::{eta_quotient, f_spec, h_series, t_spec};
use apery_core::rational::{frac, int, BigRational};
use apery_core::series::{PowerSeries, Var};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<E: std::fmt::Debug>(err: E) -> String {
    format!("{err:?}")
}

fn phi(v: &[BigRational]) -> PowerSeries {
    PowerSeries::new(v.to_vec(), Var::Phi)
}

fn prefix_eq(s: &PowerSeries, expect: &[BigRational], what: &str) -> Result<(), String> {
    let got = &s.coeffs()[..expect.len()];
    ensure(got == expect, format!("{what}: got {got:?}"))
}

fn beukers_mirror(order: usize) -> Result<MirrorData, String> {
    build_mirror(&beukers::recursion_basis(order).map_err(e)?, order).map_err(e)
}

fn c1_apery() -> Outcome {
    let p = apery_sequences(300).map_err(e)?;
    let a: Vec<BigInt> = [1, 5, 73, 1445].iter().map(|&v| BigInt::from(v)).collect();
    ensure(p.a[..4] == a[..], "A_0..A_3")?;
    let b = [int(6), frac(351, 4), frac(62531, 36), frac(11424695, 288)];
    ensure(p.b[1..5] == b, "B_1..B_4")?;
    Ok("A_n, d_n^3 B_n integral for n <= 300".into())
}

fn c2_frobenius() -> Outcome {
    let order = 60;
    let rec = beukers::recursion_basis(order).map_err(e)?;
    let eps = beukers::frobenius_route(order).map_err(e)?;
    for j in 1..=3 {
        ensure(rec.h(j) == eps.h(j), format!("h{j} differs between routes"))?;
    }
    ensure(rec.w0() == eps.w0(), "w0 differs between routes")?;
    prefix_eq(rec.h(1), &[int(0), int(12), int(210), int(4438)], "h1")?;
    prefix_eq(rec.h(2), &[int(0), int(0), int(144), int(4320)], "h2")?;
    prefix_eq(rec.h(3), &[int(0), int(-42), frac(-3033, 4), frac(-522389, 36)], "h3")?;
    Ok("recursion and eps-ring routes agree to order 60".into())
}

fn c3_mirror_map() -> Outcome {
    let m = beukers_mirror(100)?;
    let t = eta_quotient(&t_spec(), 100);
    ensure(m.phi_of_q == t, "phi(q) != T(q)")?;
    Ok("phi(q) = T(q) to order 100".into())
}

fn c4_modular_reexpansion() -> Outcome {
    let order = 80;
    let w0 = phi(&apery_sequences(order).map_err(e)?.a.into_iter().map(BigRational::from_integer).collect::<Vec<_>>());
    let t = eta_quotient(&t_spec(), order);
    let composed = w0.compose(&t).map_err(e)?;
    ensure(composed == eta_quotient(&f_spec(), order), "F != sum A_n T^n")?;
    Ok("F(q) = sum A_n T(q)^n to order 80".into())
}

fn c5_yukawa_identity() -> Outcome {
    let order = 100;
    let y = beukers_mirror(order)?.yukawa_d().map_err(e)?;
    let fh = (&eta_quotient(&f_spec(), order) * &h_series(order)).scale(&int(6));
    ensure(y == fh, "Y_D != 6 F H")?;
    ensure(y.scale(&frac(1, 6)).is_integral(), "Y_D / 6 not integral")?;
    Ok("Y_D = 6 F H to order 100".into())
}

fn c6_instantons() -> Outcome {
    let order = 120;
    let t = lambert_extract(&beukers_mirror(order)?.yukawa_d().map_err(e)?);
    let first: Vec<BigRational> = [-42, -39, -44, -39, -42, -34].iter().map(|&v| int(v)).collect();
    ensure(t.numbers[..6] == first[..], format!("N_1..N_6 = {:?}", &t.numbers[..6]))?;
    ensure(t.all_integral(), format!("N_{:?} not integral", t.first_non_integral()))?;
    match t.detect_period() {
        Period::Found { period: 6, verified_to } if verified_to >= 120 => {
            Ok(format!("N_1..N_6 match, integral, period 6 verified to k = {verified_to}"))
        }
        other => Err(format!("period: {other}")),
    }
}

fn c7_trivial_k3() -> Outcome {
    let k = beukers_mirror(81)?.yukawa_bp_normalized().map_err(e)?;
    ensure(k.order() >= 80, format!("only known to order {}", k.order()))?;
    ensure(k == PowerSeries::one(Var::Q, k.order()), "normalized Y_bp is not 1")?;
    Ok(format!("normalized Y_bp = 1 to order {}", k.order()))
}

fn c8_rival() -> Outcome {
    let order = 30;
    let tilde = frobenius_basis(&family::beukers_d_tilde(), 4, order).map_err(e)?;
    prefix_eq(tilde.h(3), &[int(0), int(-48), frac(-6765, 8), frac(-3507923, 216)], "h3 tilde")?;
    let m = beukers_mirror(order)?;
    ensure(tilde.h(1) == m.basis.h(1) && tilde.h(2) == m.basis.h(2), "h1, h2 of D tilde differ from D")?;
    let y = m.yukawa_variant(tilde.h(3)).map_err(e)?;
    let lcm10 = y.truncate(10).denominator_lcm();
    let lcm30 = y.truncate(30).denominator_lcm();
    ensure(lcm30 > lcm10, format!("lcm grows {lcm10} -> {lcm30}"))?;
    Ok(format!("denominator lcm {lcm10} (order 10) < {lcm30} (order 30)"))
}

fn c9_dwork() -> Outcome {
    let r = dwork_mirror_yukawa(40).map_err(e)?;
    prefix_eq(&r.mirror.phi_of_q, &[int(0), int(1), int(-104), int(6444), int(-311744)], "phi(q)")?;
    prefix_eq(&r.yukawa, &[int(6), int(-480), int(-2400), int(-13440), int(-17760)], "Y")?;
    ensure(r.instantons.numbers[..2] == [int(-480), int(-240)], "N_1, N_2")?;
    ensure(r.instantons.all_integral(), "non-integral N_k")?;
    match r.instantons.detect_period() {
        Period::Found { period: 2, verified_to } if verified_to >= 40 => {
            Ok(format!("N_1 = -480, N_2 = -240, period 2 verified to k = {verified_to}"))
        }
        other => Err(format!("period: {other}")),
    }
}

fn annihilates(op: &ThetaOperator, s: &LogSeries) -> bool {
    op.apply(s).is_zero()
}

fn c10_structure() -> Outcome {
    let b: CanonicalBasis = beukers::recursion_basis(40).map_err(e)?;
    let w = b.solutions();
    let l = family::beukers_l();
    let d = family::beukers_d();
    ensure(w[..3].iter().all(|s| annihilates(&l, s)), "L does not annihilate w0..w2")?;
    ensure(!annihilates(&l, &w[3]), "L annihilates w3")?;
    ensure(w.iter().all(|s| annihilates(&d, s)), "D does not annihilate w0..w3")?;
    let prod = |i: usize, j: usize| w[i].mul(&w[j]).map(|p| p.truncate(40)).map_err(e);
    ensure(prod(0, 2)? == prod(1, 1)?, "w0 w2 != w1^2")?;
    ensure(prod(0, 3)? != prod(1, 2)?, "w0 w3 == w1 w2")?;
    for (j, wj) in w.iter().enumerate() {
        let mut expect = wj.scale(&BigRational::zero());
        for (i, wi) in w.iter().enumerate().take(j + 1) {
            expect = expect.add(&wi.scale(&int(binom(j, i))));
        }
        ensure(monodromy_shift(wj) == expect, format!("monodromy on w{j}"))?;
    }
    Ok("annihilators, quadratic relation, binomial monodromy at order 40".into())
}

fn binom(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

fn rational_coeffs(len: usize) -> impl Strategy<Value = Vec<BigRational>> {
    proptest::collection::vec((-40i64..=40, 1i64..=9), len).prop_map(|v| {
        v.into_iter().map(|(n, d)| frac(n, d)).collect()
    })
}

fn c11_kernel_properties() -> Outcome {
    let mut runner = TestRunner::new(Config { cases: 100, failure_persistence: None, ..Config::default() });
    runner
        .run(&rational_coeffs(10), |mut c| {
            c[0] = BigRational::zero();
            c[1] = int(1);
            let f = PowerSeries::new(c, Var::X);
            let g = f.revert().unwrap();
            prop_assert_eq!(f.compose(&g).unwrap(), PowerSeries::x(Var::X, 9));
            prop_assert_eq!(g.compose(&f).unwrap(), PowerSeries::x(Var::X, 9));
            Ok(())
        })
        .map_err(|err| format!("reversion: {err}"))?;
    runner
        .run(&rational_coeffs(10), |mut c| {
            c[0] = BigRational::zero();
            let f = PowerSeries::new(c, Var::X);
            prop_assert_eq!(f.exp().unwrap().log().unwrap(), f);
            Ok(())
        })
        .map_err(|err| format!("exp/log: {err}"))?;
    runner
        .run(&rational_coeffs(16), |c| {
            let y = PowerSeries::new(c, Var::Q);
            let t: InstantonTable = lambert_extract(&y);
            prop_assert_eq!(lambert_synthesize(&t, 15).unwrap(), y);
            Ok(())
        })
        .map_err(|err| format!("lambert: {err}"))?;
    Ok("reversion, exp/log, Lambert round trips on 100 random series each".into())
}

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { id: 1, name: "apery sequences", limit: secs(5), run: c1_apery },
        Criterion { id: 2, name: "frobenius coefficients", limit: secs(10), run: c2_frobenius },
        Criterion { id: 3, name: "mirror map", limit: secs(30), run: c3_mirror_map },
        Criterion { id: 4, name: "modular re-expansion", limit: None, run: c4_modular_reexpansion },
        Criterion { id: 5, name: "yukawa identity", limit: None, run: c5_yukawa_identity },
        Criterion { id: 6, name: "instanton numbers", limit: secs(60), run: c6_instantons },
        Criterion { id: 7, name: "trivial k3 yukawa", limit: None, run: c7_trivial_k3 },
        Criterion { id: 8, name: "rival operator", limit: None, run: c8_rival },
        Criterion { id: 9, name: "dwork family", limit: secs(30), run: c9_dwork },
        Criterion { id: 10, name: "structural properties", limit: None, run: c10_structure },
        Criterion { id: 11, name: "kernel properties", limit: None, run: c11_kernel_properties },
    ];
    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let mut outcome = (c.run)();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, c.limit) {
            if elapsed > limit {
                outcome = Err(format!("took {elapsed:.2?}, limit {limit:?}"));
            }
        }
        let limit = c.limit.map_or(String::new(), |l| format!(", limit {l:?}"));
        match outcome {
            Ok(detail) => println!("PASS [{:>2}] {}: {detail} ({elapsed:.2?}{limit})", c.id, c.name),
            Err(why) => {
                println!("FAIL [{:>2}] {}: {why} ({elapsed:.2?}{limit})", c.id, c.name);
                failed.push(c.id);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed.len(), criteria.len());
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
