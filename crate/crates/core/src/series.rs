//! Truncated formal power series with exact rational coefficients.
//!
//! A [`PowerSeries`] of order `N` knows the coefficients of `x^0 .. x^N`
//! exactly and nothing beyond: it stands for `Σ a_n x^n + O(x^(N+1))`.
//! Every operation returns the largest order its inputs justify.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{denominator_lcm, int, is_integral, BigRational, RationalSum};

/// Name of the expansion variable. Metadata only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Var {
    #[default]
    X,
    Phi,
    Q,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Phi => "phi",
            Var::Q => "q",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
    var: Var,
}

/// Equality compares order and coefficients; the variable tag is ignored.
impl PartialEq for PowerSeries {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for PowerSeries {}

impl PowerSeries {
    /// Builds a series of order `coeffs.len() - 1`.
    ///
    /// Panics on an empty coefficient list: a series always knows at least
    /// its constant term.
    pub fn new(coeffs: Vec<BigRational>, var: Var) -> Self {
        assert!(!coeffs.is_empty(), "a power series needs at least one coefficient");
        PowerSeries { coeffs, var }
    }

    pub fn from_ints(coeffs: &[i64], var: Var) -> Self {
        PowerSeries::new(coeffs.iter().map(|&c| int(c)).collect(), var)
    }

    pub fn from_fn(order: usize, var: Var, f: impl FnMut(usize) -> BigRational) -> Self {
        PowerSeries::new((0..=order).map(f).collect(), var)
    }

    pub fn zero(var: Var, order: usize) -> Self {
        PowerSeries::new(vec![BigRational::zero(); order + 1], var)
    }

    pub fn one(var: Var, order: usize) -> Self {
        PowerSeries::monomial(var, order, 0, BigRational::one())
    }

    pub fn constant(var: Var, order: usize, c: BigRational) -> Self {
        PowerSeries::monomial(var, order, 0, c)
    }

    /// The variable itself, `x + O(x^(order+1))`.
    pub fn x(var: Var, order: usize) -> Self {
        PowerSeries::monomial(var, order, 1, BigRational::one())
    }

    /// `c x^k`, known to `order`. A monomial above `order` truncates to zero.
    pub fn monomial(var: Var, order: usize, k: usize, c: BigRational) -> Self {
        let mut s = PowerSeries::zero(var, order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// An exact polynomial viewed as a series known to `order`.
    pub fn from_poly(p: &Poly, var: Var, order: usize) -> Self {
        PowerSeries::from_fn(order, var, |k| p.coeff(k))
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    /// Highest exponent with a known coefficient.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRational> {
        self.coeffs
    }

    /// Coefficient of `x^n`, or `None` past the truncation order.
    pub fn coeff(&self, n: usize) -> Option<&BigRational> {
        self.coeffs.get(n)
    }

    /// Index of the first nonzero coefficient, `None` if every known
    /// coefficient vanishes.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Lower bound on the true valuation: the first nonzero index, or
    /// `order + 1` when nothing nonzero is known.
    fn known_valuation(&self) -> usize {
        self.valuation().unwrap_or(self.coeffs.len())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        PowerSeries::new(self.coeffs[..=n].to_vec(), self.var)
    }

    /// True when both series agree on every coefficient they both know.
    pub fn agrees_with(&self, other: &PowerSeries) -> bool {
        let n = self.order().min(other.order());
        self.coeffs[..=n] == other.coeffs[..=n]
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(is_integral)
    }

    pub fn denominator_lcm(&self) -> BigInt {
        denominator_lcm(&self.coeffs)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        PowerSeries::new(self.coeffs.iter().map(|c| c * s).collect(), self.var)
    }

    /// Multiplies by `x^k`; the order grows by `k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        PowerSeries::new(coeffs, self.var)
    }

    /// Divides by `x^k`; the first `k` coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::InvalidArgument(format!(
                "cannot divide a series of order {} by x^{k}",
                self.order()
            )));
        }
        if let Some(i) = self.coeffs[..k].iter().position(|c| !c.is_zero()) {
            return Err(Error::ExponentUnderflow { index: i, valuation: k });
        }
        Ok(PowerSeries::new(self.coeffs[k..].to_vec(), self.var))
    }

    /// `f(x^k)`, known to `k (N + 1) - 1`.
    pub fn substitute_power(&self, k: usize) -> Self {
        assert!(k >= 1, "substitution power must be positive");
        let order = k * (self.order() + 1) - 1;
        let mut out = PowerSeries::zero(self.var, order);
        for (n, c) in self.coeffs.iter().enumerate() {
            out.coeffs[n * k] = c.clone();
        }
        out
    }

    /// θ = x d/dx, coefficientwise `a_n ↦ n a_n`.
    pub fn theta(&self) -> Self {
        PowerSeries::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c * int(n as i64))
                .collect(),
            self.var,
        )
    }

    pub fn theta_pow(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |s, _| s.theta())
    }

    /// Ordinary derivative d/dx. The order drops by one; a series of order 0
    /// has no known derivative coefficient.
    pub fn derivative(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::InvalidArgument(
                "derivative of an order-0 series is unknown".into(),
            ));
        }
        Ok(PowerSeries::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| c * int(n as i64))
                .collect(),
            self.var,
        ))
    }

    pub fn checked_div(&self, rhs: &PowerSeries) -> Result<Self> {
        let v = rhs.valuation().ok_or(Error::DivisionByZero)?;
        if let Some(i) = self.coeffs.iter().take(v).position(|c| !c.is_zero()) {
            return Err(Error::ExponentUnderflow { index: i, valuation: v });
        }
        let top = self.order().min(rhs.order());
        if top < v {
            return Err(Error::InvalidArgument(format!(
                "dividing by a series of valuation {v} leaves no known coefficients (orders {} and {})",
                self.order(),
                rhs.order()
            )));
        }
        let order = top - v;
        let coeffs = div_raw(&self.coeffs[v..], &rhs.coeffs[v..], order);
        Ok(PowerSeries::new(coeffs, self.var))
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::NotInvertible);
        }
        PowerSeries::one(self.var, self.order()).checked_div(self)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = PowerSeries::one(self.var, self.order());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self ∘ inner`. The inner series must have zero constant term; the
    /// result carries the inner series' variable tag.
    pub fn compose(&self, inner: &PowerSeries) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let v = inner.known_valuation().max(1);
        let order = inner.order().min((self.order() + 1) * v - 1);
        Ok(PowerSeries::new(compose_raw(&self.coeffs, &inner.coeffs, order), inner.var))
    }

    /// Compositional inverse of `x + a_2 x^2 + ...` by Newton iteration,
    /// doubling the number of correct coefficients each round.
    pub fn revert(&self) -> Result<Self> {
        self.check_revertible()?;
        let n = self.order();
        let df = self.derivative()?;
        let mut g = vec![BigRational::zero(), BigRational::one()];
        let mut prec = 1usize;
        while prec < n {
            let next = (2 * prec + 1).min(n);
            g.resize(next + 1, BigRational::zero());
            let fg = compose_raw(&self.coeffs[..=next], &g, next);
            let dfg = compose_raw(&df.coeffs[..next.min(df.order()) + 1], &g, next);
            let mut residual = fg;
            residual[1] -= BigRational::one();
            let correction = div_raw(&residual, &dfg, next);
            for (gi, ci) in g.iter_mut().zip(correction) {
                *gi -= ci;
            }
            prec = next;
        }
        g.truncate(n + 1);
        Ok(PowerSeries::new(g, self.var))
    }

    /// Compositional inverse by Lagrange inversion,
    /// `[x^n] g = (1/n) [x^(n-1)] (x / f)^n`. Cubic cost; kept as an
    /// independent check on [`PowerSeries::revert`].
    pub fn revert_lagrange(&self) -> Result<Self> {
        self.check_revertible()?;
        let n = self.order();
        let x_over_f = self.shift_down(1)?.inverse()?;
        let mut g = vec![BigRational::zero(); n + 1];
        let mut power = PowerSeries::one(self.var, n - 1);
        for (k, gk) in g.iter_mut().enumerate().skip(1) {
            power = &power * &x_over_f;
            *gk = &power.coeffs[k - 1] / int(k as i64);
        }
        Ok(PowerSeries::new(g, self.var))
    }

    fn check_revertible(&self) -> Result<()> {
        if self.order() < 1 {
            return Err(Error::NotRevertible("order must be at least 1".into()));
        }
        if !self.coeffs[0].is_zero() {
            return Err(Error::NotRevertible("nonzero constant term".into()));
        }
        if !self.coeffs[1].is_one() {
            return Err(Error::NotRevertible(format!(
                "linear coefficient is {}, expected 1",
                self.coeffs[1]
            )));
        }
        Ok(())
    }

    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ExpDomain);
        }
        let n = self.order();
        let df = self.theta();
        let mut e = vec![BigRational::one()];
        for m in 1..=n {
            let mut s = RationalSum::new();
            for k in 1..=m {
                s.add_product(&df.coeffs[k], &e[m - k]);
            }
            e.push(s.finish() / int(m as i64));
        }
        Ok(PowerSeries::new(e, self.var))
    }

    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::LogDomain);
        }
        let q = self.theta().checked_div(self)?;
        Ok(PowerSeries::from_fn(q.order(), self.var, |m| {
            if m == 0 {
                BigRational::zero()
            } else {
                &q.coeffs[m] / int(m as i64)
            }
        }))
    }

    /// Multiplies by an exact polynomial. The order grows by the
    /// polynomial's valuation.
    pub fn mul_poly(&self, p: &Poly) -> Self {
        let Some(vp) = p.valuation() else {
            return PowerSeries::zero(self.var, self.order());
        };
        let order = self.order() + vp;
        let coeffs = mul_raw(p.coeffs(), &self.coeffs, order);
        PowerSeries::new(coeffs, self.var)
    }
}

/// Product truncated at `order`; entries past either slice are zero.
pub(crate) fn mul_raw(a: &[BigRational], b: &[BigRational], order: usize) -> Vec<BigRational> {
    let va = a.iter().position(|c| !c.is_zero());
    let vb = b.iter().position(|c| !c.is_zero());
    let mut out = vec![BigRational::zero(); order + 1];
    let (Some(va), Some(vb)) = (va, vb) else {
        return out;
    };
    for (n, slot) in out.iter_mut().enumerate().skip(va + vb) {
        let lo = va.max(n.saturating_sub(b.len() - 1));
        let hi = (n - vb).min(a.len() - 1);
        if lo > hi {
            continue;
        }
        let mut s = RationalSum::new();
        for i in lo..=hi {
            s.add_product(&a[i], &b[n - i]);
        }
        *slot = s.finish();
    }
    out
}

/// `a / b` truncated at `order`, for `b[0] != 0`.
pub(crate) fn div_raw(a: &[BigRational], b: &[BigRational], order: usize) -> Vec<BigRational> {
    let b0 = b[0].clone();
    let unit = b0.is_one();
    let mut c: Vec<BigRational> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut s = RationalSum::new();
        if let Some(an) = a.get(n) {
            s.add(an);
        }
        for i in 1..=n.min(b.len() - 1) {
            s.add_product(&-&b[i], &c[n - i]);
        }
        let v = s.finish();
        c.push(if unit { v } else { v / &b0 });
    }
    c
}

/// `f ∘ g` truncated at `order`, for `g[0] == 0`.
pub(crate) fn compose_raw(f: &[BigRational], g: &[BigRational], order: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); order + 1];
    out[0] = f[0].clone();
    let vg = match g.iter().position(|c| !c.is_zero()) {
        Some(v) => v,
        None => return out,
    };
    let mut power: Vec<BigRational> = g[..g.len().min(order + 1)].to_vec();
    power.resize(order + 1, BigRational::zero());
    for (k, fk) in f.iter().enumerate().skip(1) {
        if k * vg > order {
            break;
        }
        if !fk.is_zero() {
            for (o, p) in out.iter_mut().zip(&power).skip(k * vg) {
                if !p.is_zero() {
                    *o += fk * p;
                }
            }
        }
        if (k + 1) * vg <= order && k + 1 < f.len() {
            power = mul_raw(&power, g, order);
        }
    }
    out
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        PowerSeries::new(
            (0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
            self.var,
        )
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        PowerSeries::new(
            (0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
            self.var,
        )
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let order = (self.order() + rhs.known_valuation()).min(rhs.order() + self.known_valuation());
        PowerSeries::new(mul_raw(&self.coeffs, &rhs.coeffs, order), self.var)
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries::new(self.coeffs.iter().map(|c| -c).collect(), self.var)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PowerSeries {
            type Output = PowerSeries;
            fn $m(self, rhs: PowerSeries) -> PowerSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.var.name();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        write!(f, "{v}")?;
                    } else {
                        write!(f, "{v}^{k}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O({v}^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn s(c: &[i64]) -> PowerSeries {
        PowerSeries::from_ints(c, Var::X)
    }

    #[test]
    fn difference_of_squares() {
        let p = &s(&[1, 1, 0, 0]) * &s(&[1, -1, 0, 0]);
        assert_eq!(p, s(&[1, 0, -1, 0]));
    }

    #[test]
    fn apery_square_by_convolution() {
        // (1 + 5x + 73x^2)^2 = 1 + 10x + (2*73 + 25)x^2
        let w0 = s(&[1, 5, 73]);
        assert_eq!(&w0 * &w0, s(&[1, 10, 171]));
    }

    #[test]
    fn division_by_monomial_shifts() {
        let a = PowerSeries::new(
            vec![int(0), int(0), int(6), frac(351, 4), frac(62531, 36)],
            Var::Phi,
        );
        let b = s(&[0, 0, 1, 0, 0]);
        let q = a.checked_div(&b).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(q.coeffs(), &[int(6), frac(351, 4), frac(62531, 36)]);
    }

    #[test]
    fn division_errors() {
        assert_eq!(s(&[1, 2]).checked_div(&s(&[0, 0])), Err(Error::DivisionByZero));
        assert!(matches!(
            s(&[1, 2, 3]).checked_div(&s(&[0, 1, 0])),
            Err(Error::ExponentUnderflow { index: 0, valuation: 1 })
        ));
    }

    #[test]
    fn product_order_uses_valuations() {
        // (x + O(x^5)) * (known to x^3) is known to x^4
        let p = &s(&[0, 1, 0, 0, 0]) * &s(&[1, 2, 3, 4]);
        assert_eq!(p.order(), 4);
        assert_eq!(p, s(&[0, 1, 2, 3, 4]));
    }

    #[test]
    fn compose_identity_outer() {
        let inner = s(&[0, 3, -1, 7, 2]);
        assert_eq!(s(&[0, 1, 0, 0, 0]).compose(&inner).unwrap(), inner);
    }

    #[test]
    fn compose_rejects_constant_inner() {
        assert_eq!(s(&[1, 1]).compose(&s(&[1, 1])), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn exp_of_log_one_plus_x() {
        let n = 12;
        let log1p = PowerSeries::from_fn(n, Var::X, |k| {
            if k == 0 {
                BigRational::zero()
            } else {
                frac(if k % 2 == 1 { 1 } else { -1 }, k as i64)
            }
        });
        let e = PowerSeries::from_fn(n, Var::X, |k| {
            let f: i64 = (1..=k as i64).product();
            frac(1, f)
        })
        .with_var(Var::X);
        let exp_minus_one = &e - &PowerSeries::one(Var::X, n);
        assert_eq!(exp_minus_one.compose(&log1p).unwrap(), PowerSeries::x(Var::X, n));
        assert_eq!(log1p.exp().unwrap(), s(&[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn exp_of_zero_is_one() {
        assert_eq!(PowerSeries::zero(Var::X, 5).exp().unwrap(), PowerSeries::one(Var::X, 5));
    }

    #[test]
    fn exp_log_domains() {
        assert_eq!(s(&[1, 1]).exp(), Err(Error::ExpDomain));
        assert_eq!(s(&[2, 1]).log(), Err(Error::LogDomain));
    }

    #[test]
    fn revert_identity() {
        let x = PowerSeries::x(Var::X, 7);
        assert_eq!(x.revert().unwrap(), x);
    }

    #[test]
    fn revert_truncated_t() {
        // hand Lagrange reversion: g = q + 12 q^2 + (2*144 - 66) q^3
        let t = s(&[0, 1, -12, 66, -220]);
        let g = t.revert().unwrap();
        assert_eq!(&g.coeffs()[..4], &[int(0), int(1), int(12), int(222)]);
        assert_eq!(g, t.revert_lagrange().unwrap());
    }

    #[test]
    fn revert_preconditions() {
        assert!(matches!(s(&[0, 2, 1]).revert(), Err(Error::NotRevertible(_))));
        assert!(matches!(s(&[1, 1, 1]).revert(), Err(Error::NotRevertible(_))));
        assert!(matches!(s(&[0]).revert(), Err(Error::NotRevertible(_))));
    }

    #[test]
    fn theta_on_apery_prefix() {
        assert_eq!(s(&[1, 5, 73]).theta(), s(&[0, 5, 146]));
    }

    #[test]
    fn theta_cubed_of_geometric_is_cube_sum() {
        let n = 10;
        let geo = PowerSeries::from_fn(n, Var::Q, |k| if k == 0 { int(0) } else { int(1) });
        let expected = PowerSeries::from_fn(n, Var::Q, |k| int((k * k * k) as i64));
        assert_eq!(geo.theta_pow(3), expected);
    }

    #[test]
    fn substitute_power_order() {
        let f = s(&[1, 2, 3]);
        let g = f.substitute_power(2);
        assert_eq!(g, s(&[1, 0, 2, 0, 3, 0]));
    }

    #[test]
    fn display_format() {
        assert_eq!(s(&[1, -12, 0, 66]).to_string(), "1 - 12*x + 66*x^3 + O(x^4)");
    }
}
