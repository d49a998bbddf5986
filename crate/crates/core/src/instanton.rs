//! Lambert-series inversion `Y = c0 + Σ_k k³ N_k q^k / (1 - q^k)`.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{int, is_integral, BigRational};
use crate::series::{PowerSeries, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstantonTable {
    pub c0: BigRational,
    /// `numbers[k - 1] = N_k`.
    pub numbers: Vec<BigRational>,
    pub integral: Vec<bool>,
}

/// Outcome of a period search. A period is only ever reported together
/// with the range it was checked on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Period {
    /// `N_{k+period} = N_k` for every `k + period <= verified_to`.
    Found { period: usize, verified_to: usize },
    /// No period fits at least three times into the table.
    NotFound,
    /// Fewer than three entries: nothing can be tested.
    Undetermined,
}

impl Period {
    pub fn period(self) -> Option<usize> {
        match self {
            Period::Found { period, .. } => Some(period),
            _ => None,
        }
    }
}

impl fmt::Display for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Period::Found { period, verified_to } => {
                write!(f, "period {period} (verified to k = {verified_to})")
            }
            Period::NotFound => f.write_str("no period"),
            Period::Undetermined => f.write_str("undetermined"),
        }
    }
}

fn k_cubed(k: usize) -> BigRational {
    int(k as i64).pow(3)
}

fn proper_divisors(n: usize) -> impl Iterator<Item = usize> {
    (1..n).filter(move |&d| n.is_multiple_of(d))
}

/// Solves `c_n = Σ_{d|n} d³ N_d` for `n = 1..=order`.
pub fn lambert_extract(y: &PowerSeries) -> InstantonTable {
    let c = y.coeffs();
    let mut numbers: Vec<BigRational> = Vec::with_capacity(y.order());
    for (n, cn) in c.iter().enumerate().skip(1) {
        let mut rest = cn.clone();
        for d in proper_divisors(n) {
            rest -= k_cubed(d) * &numbers[d - 1];
        }
        numbers.push(rest / k_cubed(n));
    }
    let integral = numbers.iter().map(is_integral).collect();
    InstantonTable { c0: c[0].clone(), numbers, integral }
}

/// `c0 + Σ_k k³ N_k (q^k + q^{2k} + ...)` truncated at `order`.
pub fn lambert_synthesize(t: &InstantonTable, order: usize) -> Result<PowerSeries> {
    if t.numbers.len() < order {
        return Err(Error::InvalidArgument(format!(
            "table holds {} instanton numbers, order {order} needs that many",
            t.numbers.len()
        )));
    }
    let mut c = vec![BigRational::zero(); order + 1];
    c[0] = t.c0.clone();
    for k in 1..=order {
        let term = k_cubed(k) * &t.numbers[k - 1];
        if term.is_zero() {
            continue;
        }
        for m in (k..=order).step_by(k) {
            c[m] += &term;
        }
    }
    Ok(PowerSeries::new(c, Var::Q))
}

impl InstantonTable {
    pub fn len(&self) -> usize {
        self.numbers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numbers.is_empty()
    }

    /// `N_k` for `k >= 1`.
    pub fn n(&self, k: usize) -> &BigRational {
        &self.numbers[k - 1]
    }

    pub fn all_integral(&self) -> bool {
        self.integral.iter().all(|&b| b)
    }

    /// First `k` with a non-integral `N_k`.
    pub fn first_non_integral(&self) -> Option<usize> {
        self.integral.iter().position(|&b| !b).map(|i| i + 1)
    }

    pub fn detect_period(&self) -> Period {
        detect_period(&self.numbers)
    }
}

/// Smallest `p <= len/3` with `N_{k+p} = N_k` on the whole table.
pub fn detect_period<T: PartialEq>(numbers: &[T]) -> Period {
    let len = numbers.len();
    if len < 3 {
        return Period::Undetermined;
    }
    (1..=len / 3)
        .find(|&p| (0..len - p).all(|i| numbers[i] == numbers[i + p]))
        .map_or(Period::NotFound, |period| Period::Found { period, verified_to: len })
}
