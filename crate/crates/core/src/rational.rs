//! Helpers around [`BigRational`], the coefficient domain of every series.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational;

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integral(r: &BigRational) -> bool {
    r.denom().is_one()
}

/// Least common multiple of the denominators.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Parses `"a"` or `"a/b"`.
pub fn parse(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Renders `|r|` in scientific notation with `digits` significant digits,
/// rounded away from zero so the printed value is an upper bound.
pub fn to_sci_upper(r: &BigRational, digits: usize) -> String {
    let r = r.abs();
    if r.is_zero() {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let ten = BigInt::from(10);
    // find e with 10^e <= r < 10^(e+1)
    let mut e: i64 = (r.numer().to_string().len() as i64) - (r.denom().to_string().len() as i64);
    let pow10 = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            BigRational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while pow10(e) > r {
        e -= 1;
    }
    while pow10(e + 1) <= r {
        e += 1;
    }
    let scaled = &r / pow10(e - (digits as i64 - 1));
    let mut mant = scaled.ceil().to_integer();
    if mant >= num_traits::pow(ten.clone(), digits) {
        mant /= &ten;
        e += 1;
    }
    let m = mant.to_string();
    let (head, tail) = m.split_at(1);
    if tail.is_empty() {
        format!("{head}e{e}")
    } else {
        format!("{head}.{tail}e{e}")
    }
}

/// Accumulates a sum of rationals over a running common denominator and
/// reduces once at the end.
#[derive(Clone, Debug)]
pub(crate) struct RationalSum {
    num: BigInt,
    den: BigInt,
}

impl RationalSum {
    pub(crate) fn new() -> Self {
        RationalSum { num: BigInt::zero(), den: BigInt::one() }
    }

    pub(crate) fn add_product(&mut self, a: &BigRational, b: &BigRational) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let n = a.numer() * b.numer();
        if a.denom().is_one() && b.denom().is_one() {
            self.add_parts(n, None);
        } else {
            self.add_parts(n, Some(a.denom() * b.denom()));
        }
    }

    pub(crate) fn add(&mut self, a: &BigRational) {
        if a.is_zero() {
            return;
        }
        if a.denom().is_one() {
            self.add_parts(a.numer().clone(), None);
        } else {
            self.add_parts(a.numer().clone(), Some(a.denom().clone()));
        }
    }

    fn add_parts(&mut self, n: BigInt, d: Option<BigInt>) {
        match d {
            None => {
                if self.den.is_one() {
                    self.num += n;
                } else {
                    self.num += n * &self.den;
                }
            }
            Some(d) => {
                if d == self.den {
                    self.num += n;
                } else if self.den.is_one() {
                    self.num = &self.num * &d + n;
                    self.den = d;
                } else {
                    let l = self.den.lcm(&d);
                    let fa = &l / &self.den;
                    let fb = &l / &d;
                    self.num = &self.num * fa + n * fb;
                    self.den = l;
                }
            }
        }
    }

    pub(crate) fn finish(self) -> BigRational {
        BigRational::new(self.num, self.den)
    }
}
