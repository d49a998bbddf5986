//! Polynomials in a formal logarithm `L = log x` with power-series
//! coefficients: `f0 + f1 L + f2 L^2 + f3 L^3`.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{int, BigRational};
use crate::series::{PowerSeries, Var};

pub const MAX_LOG_DEGREE: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogSeries {
    parts: Vec<PowerSeries>,
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

impl LogSeries {
    /// `parts[j]` is the coefficient of `L^j`. Trailing parts whose known
    /// coefficients all vanish are dropped.
    pub fn new(mut parts: Vec<PowerSeries>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidArgument("log-series needs at least one part".into()));
        }
        while parts.len() > 1 && parts.last().is_some_and(PowerSeries::is_zero) {
            parts.pop();
        }
        if parts.len() > MAX_LOG_DEGREE + 1 {
            return Err(Error::LogDegreeOverflow(parts.len() - 1));
        }
        Ok(LogSeries { parts })
    }

    pub fn from_series(f: PowerSeries) -> Self {
        LogSeries { parts: vec![f] }
    }

    /// The bare symbol `L`.
    pub fn log_symbol(var: Var, order: usize) -> Self {
        LogSeries {
            parts: vec![PowerSeries::zero(var, order), PowerSeries::one(var, order)],
        }
    }

    pub fn parts(&self) -> &[PowerSeries] {
        &self.parts
    }

    /// Coefficient of `L^j`; zero above the degree.
    pub fn part(&self, j: usize) -> PowerSeries {
        self.parts
            .get(j)
            .cloned()
            .unwrap_or_else(|| PowerSeries::zero(self.var(), self.order()))
    }

    pub fn degree(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn order(&self) -> usize {
        self.parts.iter().map(PowerSeries::order).min().unwrap()
    }

    pub fn var(&self) -> Var {
        self.parts[0].var()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(PowerSeries::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        LogSeries { parts: self.parts.iter().map(|p| p.truncate(order)).collect() }
    }

    /// θ(f L^j) = (θf) L^j + j f L^(j-1).
    pub fn theta(&self) -> Self {
        let order = self.order();
        let mut out: Vec<PowerSeries> = self.parts.iter().map(|p| p.truncate(order).theta()).collect();
        for j in 1..self.parts.len() {
            let extra = self.parts[j].truncate(order).scale(&int(j as i64));
            out[j - 1] = &out[j - 1] + &extra;
        }
        LogSeries::new(out).expect("theta does not raise the log degree")
    }

    pub fn theta_pow(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |s, _| s.theta())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        LogSeries::new(self.parts.iter().map(|p| p.scale(c)).collect()).unwrap()
    }

    pub fn mul_series(&self, f: &PowerSeries) -> Self {
        LogSeries::new(self.parts.iter().map(|p| p * f).collect()).unwrap()
    }

    pub fn add(&self, other: &LogSeries) -> Self {
        let n = self.parts.len().max(other.parts.len());
        let order = self.order().min(other.order());
        let parts = (0..n)
            .map(|j| &self.part(j).truncate(order) + &other.part(j).truncate(order))
            .collect();
        LogSeries::new(parts).unwrap()
    }

    pub fn sub(&self, other: &LogSeries) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    /// Product; fails if the L-degree would exceed 3.
    pub fn mul(&self, other: &LogSeries) -> Result<Self> {
        let deg = self.degree() + other.degree();
        if deg > MAX_LOG_DEGREE {
            return Err(Error::LogDegreeOverflow(deg));
        }
        let mut out: Vec<Option<PowerSeries>> = vec![None; deg + 1];
        for (i, a) in self.parts.iter().enumerate() {
            for (j, b) in other.parts.iter().enumerate() {
                let prod = a * b;
                out[i + j] = Some(match out[i + j].take() {
                    None => prod,
                    Some(acc) => &acc + &prod,
                });
            }
        }
        LogSeries::new(out.into_iter().map(Option::unwrap).collect())
    }

    /// Substitutes `L ↦ L + 1`: the local monodromy around `x = 0` in the
    /// normalization where `log x` shifts by one unit.
    pub fn shift_log(&self) -> Self {
        let order = self.order();
        let var = self.var();
        let parts = (0..self.parts.len())
            .map(|i| {
                (i..self.parts.len()).fold(PowerSeries::zero(var, order), |acc, j| {
                    let c = BigRational::from_integer(binomial(j, i).into());
                    &acc + &self.parts[j].truncate(order).scale(&c)
                })
            })
            .collect();
        LogSeries::new(parts).unwrap()
    }
}

impl fmt::Display for LogSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, p) in self.parts.iter().enumerate() {
            if p.is_zero() && !(first && j + 1 == self.parts.len()) {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "({p})")?,
                1 => write!(f, "({p})*L")?,
                _ => write!(f, "({p})*L^{j}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
