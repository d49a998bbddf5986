//! Apéry's sequences `A_n`, `B_n` with the bound `d_n³ B_n ∈ Z`, and the
//! convergents `B_n / A_n → ζ(3)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::frobenius::{beukers::apery_recursion, run_recursion};
use crate::rational::{frac, int, is_integral, to_sci_upper, BigRational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AperyPair {
    pub a: Vec<BigInt>,
    pub b: Vec<BigRational>,
    pub n_max: usize,
}

/// `A_0..A_{n_max}` and `B_0..B_{n_max}`. Fails if either arithmetic
/// property (integral `A_n`, integral `d_n³ B_n`) breaks.
pub fn apery_sequences(n_max: usize) -> Result<AperyPair> {
    if n_max < 1 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let a = run_recursion(&apery_recursion(int(1), int(5)), n_max + 1)?;
    let b = run_recursion(&apery_recursion(int(0), int(6)), n_max + 1)?;
    let mut a_int = Vec::with_capacity(a.len());
    for (n, v) in a.into_iter().enumerate() {
        if !is_integral(&v) {
            return Err(Error::InvariantViolated(format!("A_{n} = {v} is not an integer")));
        }
        a_int.push(v.to_integer());
    }
    let mut d = BigInt::one();
    for (n, v) in b.iter().enumerate() {
        if n > 0 {
            d = d.lcm(&BigInt::from(n));
        }
        if !(d.pow(3) % v.denom()).is_zero() {
            return Err(Error::InvariantViolated(format!(
                "denominator of B_{n} does not divide d_{n}^3"
            )));
        }
    }
    Ok(AperyPair { a: a_int, b, n_max })
}

/// `lcm(1, 2, ..., n)`; 1 for `n = 0`.
pub fn lcm_to(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc.lcm(&BigInt::from(k)))
}

/// Rigorous rational bounds `lower <= ζ(3) <= upper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zeta3Enclosure {
    pub lower: BigRational,
    pub upper: BigRational,
}

impl Zeta3Enclosure {
    pub fn width(&self) -> BigRational {
        &self.upper - &self.lower
    }

    /// Largest possible `|x - ζ(3)|`.
    pub fn max_distance(&self, x: &BigRational) -> BigRational {
        let a = (x - &self.lower).abs();
        let b = (x - &self.upper).abs();
        a.max(b)
    }
}

/// Encloses ζ(3) with the partial sum of `Σ 1/k³` over `k <= terms` and
/// the integral tail bounds for the convex summand:
/// `1/(2m²) + 1/(2m³) <= Σ_{k>=m} 1/k³ <= 1/(2(m - 1/2)²)`, `m = terms + 1`.
///
/// The partial sum is itself enclosed in fixed point with `digits` decimal
/// digits (floor and ceiling of each term), so the bounds stay exact
/// rationals of modest size.
pub fn zeta3_enclosure(terms: u64, digits: u32) -> Zeta3Enclosure {
    assert!(terms >= 1);
    let scale = num_traits::pow(BigInt::from(10), digits as usize);
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    for k in 1..=terms {
        let cube = BigInt::from(k).pow(3);
        let (q, r) = scale.div_rem(&cube);
        if !r.is_zero() {
            hi += 1;
        }
        lo += &q;
        hi += q;
    }
    let m = BigInt::from(terms + 1);
    let tail_lo = BigRational::new(BigInt::one(), BigInt::from(2) * m.pow(2))
        + BigRational::new(BigInt::one(), BigInt::from(2) * m.pow(3));
    let two_k_plus_one = BigInt::from(2 * terms + 1);
    let tail_hi = BigRational::new(BigInt::from(2), two_k_plus_one.pow(2));
    Zeta3Enclosure {
        lower: BigRational::new(lo, scale.clone()) + tail_lo,
        upper: BigRational::new(hi, scale) + tail_hi,
    }
}

/// Encloses ζ(3) with the alternating series
/// `ζ(3) = (5/2) Σ_{k>=1} (-1)^(k+1) / (k³ C(2k, k))`: consecutive partial
/// sums bracket the limit. Gains about 0.6 digits per term.
pub fn zeta3_enclosure_alternating(terms: u64) -> Zeta3Enclosure {
    assert!(terms >= 1);
    let mut sum = BigRational::zero();
    let mut central = BigInt::one();
    let mut prev = BigRational::zero();
    for k in 1..=terms + 1 {
        // C(2k, k) = C(2k-2, k-1) * (2k)(2k-1) / k²
        central = central * BigInt::from(2 * k) * BigInt::from(2 * k - 1) / BigInt::from(k * k);
        let term = BigRational::new(BigInt::one(), BigInt::from(k).pow(3) * &central);
        prev = sum.clone();
        if k % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let five_halves = frac(5, 2);
    let a = &prev * &five_halves;
    let b = &sum * &five_halves;
    if a <= b {
        Zeta3Enclosure { lower: a, upper: b }
    } else {
        Zeta3Enclosure { lower: b, upper: a }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zeta3Convergent {
    pub n: usize,
    pub value: BigRational,
    /// Upper bound on `|B_n/A_n - ζ(3)|`.
    pub error_bound: BigRational,
}

impl Zeta3Convergent {
    pub fn error_bound_decimal(&self) -> String {
        to_sci_upper(&self.error_bound, 3)
    }
}

const CONVERGENT_ORACLE_TERMS: u64 = 20_000;
const CONVERGENT_ORACLE_DIGITS: u32 = 40;

/// `B_n / A_n` with an error bound against the `Σ 1/k³` enclosure.
/// The bound cannot drop below the enclosure width (about 2e-18).
pub fn zeta3_convergent(n: usize) -> Result<Zeta3Convergent> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let pair = apery_sequences(n)?;
    let value = &pair.b[n] / BigRational::from_integer(pair.a[n].clone());
    let zeta = zeta3_enclosure(CONVERGENT_ORACLE_TERMS, CONVERGENT_ORACLE_DIGITS);
    let error_bound = zeta.max_distance(&value);
    Ok(Zeta3Convergent { n, value, error_bound })
}

/// Certifies that `|B_n/A_n - ζ(3)|` strictly decreases for
/// `from <= n <= to`, using interval enclosures of the errors.
/// Returns the first `n` where the enclosures cannot separate, if any.
pub fn convergent_errors_decreasing(from: usize, to: usize) -> Result<Option<usize>> {
    let pair = apery_sequences(to.max(1))?;
    let zeta = zeta3_enclosure_alternating(6 * to as u64 + 20);
    let x = |n: usize| &pair.b[n] / BigRational::from_integer(pair.a[n].clone());
    // distance interval [lo, hi] for each n
    let dist = |n: usize| {
        let v = x(n);
        let a = &zeta.lower - &v;
        let b = &zeta.upper - &v;
        if a.is_positive() {
            (a, b)
        } else if b.is_negative() {
            (-b, -a)
        } else {
            (BigRational::zero(), a.abs().max(b.abs()))
        }
    };
    for n in from..to {
        let (lo_n, _) = dist(n);
        let (_, hi_next) = dist(n + 1);
        if hi_next >= lo_n {
            return Ok(Some(n));
        }
    }
    Ok(None)
}
