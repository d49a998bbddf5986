//! Linear differential operators `Σ p_k(φ) θ^k` with θ = φ d/dφ.
//!
//! Coefficient polynomials always sit to the left of the θ powers. The
//! commutation rule is `θ φ^m = φ^m (θ + m)`.

use std::fmt;
use std::ops::{Add, Mul};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::logseries::LogSeries;
use crate::poly::Poly;
use crate::rational::{int, BigRational};
use crate::series::PowerSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaOperator {
    /// `coeffs[k]` multiplies `θ^k`.
    coeffs: Vec<Poly>,
}

/// Result of rewriting an operator in the coordinate `1/φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pullback {
    pub operator: ThetaOperator,
    /// The pulled-back operator was multiplied on the left by
    /// `φ^cleared_power` to make its coefficients polynomial.
    pub cleared_power: usize,
}

impl ThetaOperator {
    /// Panics if every coefficient is zero.
    pub fn new(mut coeffs: Vec<Poly>) -> Self {
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        assert!(!coeffs.is_empty(), "zero operator");
        ThetaOperator { coeffs }
    }

    /// Builds `Σ_j φ^j P_j(θ)` from the θ-polynomials `P_j`.
    pub fn from_theta_polys(polys: &[Poly]) -> Self {
        let rank = polys.iter().filter_map(Poly::degree).max().unwrap_or(0);
        let coeffs = (0..=rank)
            .map(|k| Poly::new(polys.iter().map(|p| p.coeff(k)).collect()))
            .collect();
        ThetaOperator::new(coeffs)
    }

    pub fn identity() -> Self {
        ThetaOperator::new(vec![Poly::from_ints(&[1])])
    }

    pub fn theta() -> Self {
        ThetaOperator::new(vec![Poly::zero(), Poly::from_ints(&[1])])
    }

    /// Multiplication by `φ^k`.
    pub fn phi_power(k: usize) -> Self {
        ThetaOperator::new(vec![Poly::monomial(k, BigRational::one())])
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn leading(&self) -> &Poly {
        self.coeffs.last().unwrap()
    }

    /// The θ-polynomials `P_j` with `self = Σ_j φ^j P_j(θ)`.
    pub fn theta_polys(&self) -> Vec<Poly> {
        let deg = self.coeffs.iter().filter_map(Poly::degree).max().unwrap_or(0);
        (0..=deg)
            .map(|j| Poly::new(self.coeffs.iter().map(|p| p.coeff(j)).collect()))
            .collect()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        ThetaOperator::new(self.coeffs.iter().map(|p| p.scale(c)).collect())
    }

    /// Left multiplication by `φ^k`.
    pub fn mul_phi_power(&self, k: usize) -> Self {
        ThetaOperator::new(self.coeffs.iter().map(|p| p.shift_up(k)).collect())
    }

    /// Divides out the largest common power of φ; returns it alongside.
    pub fn normalized(&self) -> (ThetaOperator, usize) {
        let v = self.coeffs.iter().filter_map(Poly::valuation).min().unwrap_or(0);
        let coeffs = self.coeffs.iter().map(|p| p.shift_down(v).unwrap()).collect();
        (ThetaOperator::new(coeffs), v)
    }

    /// Equality after clearing common monomial factors on both sides.
    pub fn eq_up_to_monomial(&self, other: &ThetaOperator) -> bool {
        self.normalized().0 == other.normalized().0
    }

    /// `Σ p_k(0) ε^k`, computed after clearing the common power of φ.
    pub fn indicial_polynomial(&self) -> Poly {
        let (n, _) = self.normalized();
        Poly::new(n.coeffs.iter().map(|p| p.coeff(0)).collect())
    }

    /// Applies the operator to a log-series.
    pub fn apply(&self, s: &LogSeries) -> LogSeries {
        let mut acc: Option<LogSeries> = None;
        let mut power = s.clone();
        for (k, p) in self.coeffs.iter().enumerate() {
            if k > 0 {
                power = power.theta();
            }
            if p.is_zero() {
                continue;
            }
            let parts: Vec<PowerSeries> = power.parts().iter().map(|f| f.mul_poly(p)).collect();
            let term = LogSeries::new(parts).expect("degree unchanged");
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term),
            });
        }
        acc.unwrap_or_else(|| s.scale(&BigRational::zero()))
    }

    pub fn apply_series(&self, f: &PowerSeries) -> PowerSeries {
        self.apply(&LogSeries::from_series(f.clone())).part(0)
    }

    /// The composite `self ∘ rhs`.
    pub fn compose(&self, rhs: &ThetaOperator) -> ThetaOperator {
        let rank = self.rank() + rhs.rank();
        let mut out = vec![Poly::zero(); rank + 1];
        // a_i(φ) θ^i · b_{j,m} φ^m θ^j = a_i(φ) φ^m b_{j,m} (θ + m)^i θ^j
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                for (m, bm) in b.coeffs().iter().enumerate() {
                    if bm.is_zero() {
                        continue;
                    }
                    let base = a.shift_up(m).scale(bm);
                    let shifted = Poly::from_ints(&[0, 1])
                        .translate(&int(m as i64));
                    let expanded = (0..i).fold(Poly::from_ints(&[1]), |acc, _| &acc * &shifted);
                    for (t, c) in expanded.coeffs().iter().enumerate() {
                        out[t + j] = &out[t + j] + &base.scale(c);
                    }
                }
            }
        }
        ThetaOperator::new(out)
    }

    /// Rewrites the operator in the coordinate `ψ = 1/φ`, where θ becomes
    /// `-θ_ψ`, then clears denominators with the smallest power of ψ.
    pub fn pullback_inversion(&self) -> Pullback {
        let width = self.coeffs.iter().filter_map(Poly::degree).max().unwrap_or(0);
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, p)| {
                let r = p.reversed(width);
                if k % 2 == 1 {
                    -&r
                } else {
                    r
                }
            })
            .collect();
        Pullback { operator: ThetaOperator::new(coeffs), cleared_power: width }
    }

    /// The rank-3 operator annihilating every product of two solutions of a
    /// rank-2 operator, with common polynomial factors removed and the
    /// leading coefficient scaled to have lowest nonzero coefficient 1.
    pub fn sym_square(&self) -> Result<ThetaOperator> {
        if self.rank() != 2 {
            return Err(Error::WrongRank { expected: 2, found: self.rank() });
        }
        let r = &self.coeffs[0];
        let q = &self.coeffs[1];
        let p = &self.coeffs[2];
        let dp = p.theta();
        // Vectors over the basis (y^2, y y', y'^2), ' = θ, using p y'' = -q y' - r y.
        // `p_theta(v)` is p · θ(v).
        let two = int(2);
        let p_theta = |v: &[Poly; 3]| -> [Poly; 3] {
            let [c0, c1, c2] = v;
            [
                &(p * &c0.theta()) - &(r * c1),
                &(&(&(p * c0).scale(&two) + &(p * &c1.theta())) - &(q * c1)) - &(r * c2).scale(&two),
                &(&(p * c1) + &(p * &c2.theta())) - &(q * c2).scale(&two),
            ]
        };
        // θ^k (y^2) = v_k / p^k
        let mut v: Vec<[Poly; 3]> = vec![[Poly::from_ints(&[1]), Poly::zero(), Poly::zero()]];
        for k in 0..3 {
            let d = p_theta(&v[k]);
            let kk = int(k as i64);
            let prev = &v[k];
            let next = [
                &d[0] - &(&dp * &prev[0]).scale(&kk),
                &d[1] - &(&dp * &prev[1]).scale(&kk),
                &d[2] - &(&dp * &prev[2]).scale(&kk),
            ];
            v.push(next);
        }
        // columns c_k = p^(3-k) v_k; kernel by signed 3x3 minors
        let p_pow = |e: usize| (0..e).fold(Poly::from_ints(&[1]), |acc, _| &acc * p);
        let cols: Vec<[Poly; 3]> = v
            .iter()
            .enumerate()
            .map(|(k, vk)| {
                let f = p_pow(3 - k);
                [&f * &vk[0], &f * &vk[1], &f * &vk[2]]
            })
            .collect();
        let det3 = |a: &[Poly; 3], b: &[Poly; 3], c: &[Poly; 3]| -> Poly {
            let t1 = &a[0] * &(&(&b[1] * &c[2]) - &(&b[2] * &c[1]));
            let t2 = &b[0] * &(&(&a[1] * &c[2]) - &(&a[2] * &c[1]));
            let t3 = &c[0] * &(&(&a[1] * &b[2]) - &(&a[2] * &b[1]));
            &(&t1 - &t2) + &t3
        };
        let mut alpha = Vec::with_capacity(4);
        for k in 0..4 {
            let rest: Vec<&[Poly; 3]> = (0..4).filter(|&i| i != k).map(|i| &cols[i]).collect();
            let d = det3(rest[0], rest[1], rest[2]);
            alpha.push(if k % 2 == 1 { -&d } else { d });
        }
        let g = alpha.iter().fold(Poly::zero(), |acc, a| acc.gcd(a));
        let mut alpha: Vec<Poly> = alpha.iter().map(|a| a.div_rem(&g).0).collect();
        let lead = alpha[3].valuation().map(|v| alpha[3].coeff(v)).ok_or_else(|| {
            Error::InvariantViolated("symmetric square has a vanishing leading coefficient".into())
        })?;
        let inv = lead.recip();
        for a in alpha.iter_mut() {
            *a = a.scale(&inv);
        }
        Ok(ThetaOperator::new(alpha))
    }
}

impl Add for &ThetaOperator {
    type Output = ThetaOperator;
    fn add(self, rhs: &ThetaOperator) -> ThetaOperator {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Poly::zero();
        ThetaOperator::new(
            (0..n)
                .map(|k| {
                    let a = self.coeffs.get(k).unwrap_or(&zero);
                    let b = rhs.coeffs.get(k).unwrap_or(&zero);
                    a + b
                })
                .collect(),
        )
    }
}

impl Mul for &ThetaOperator {
    type Output = ThetaOperator;
    fn mul(self, rhs: &ThetaOperator) -> ThetaOperator {
        self.compose(rhs)
    }
}

impl fmt::Display for ThetaOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, p) in self.coeffs.iter().enumerate().rev() {
            if p.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({})", p.display_with("phi"))?;
            match k {
                0 => {}
                1 => f.write_str("*theta")?,
                _ => write!(f, "*theta^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Var;

    fn op(coeffs: &[&[i64]]) -> ThetaOperator {
        ThetaOperator::new(coeffs.iter().map(|c| Poly::from_ints(c)).collect())
    }

    #[test]
    fn theta_times_theta() {
        let t = ThetaOperator::theta();
        assert_eq!(&t * &t, op(&[&[0], &[0], &[1]]));
    }

    #[test]
    fn commutation_rule() {
        // θ ∘ φ = φ (θ + 1) = φ θ + φ
        let got = ThetaOperator::theta().compose(&ThetaOperator::phi_power(1));
        assert_eq!(got, op(&[&[0, 1], &[0, 1]]));
    }

    #[test]
    fn pullback_of_theta() {
        let pb = ThetaOperator::theta().pullback_inversion();
        assert_eq!(pb.operator, op(&[&[0], &[-1]]));
        assert_eq!(pb.cleared_power, 0);
    }

    #[test]
    fn double_pullback_is_involution_up_to_monomial() {
        let o = op(&[&[2, -5], &[-7, 32], &[9, -78], &[-5, 85], &[1, -34, 1]]);
        let twice = o.pullback_inversion().operator.pullback_inversion().operator;
        assert!(twice.eq_up_to_monomial(&o));
        let o2 = op(&[&[0, 0, 3], &[0, 1, 0, 2]]);
        let twice = o2.pullback_inversion().operator.pullback_inversion().operator;
        assert!(twice.eq_up_to_monomial(&o2));
    }

    #[test]
    fn sym_square_of_theta_squared() {
        let s = op(&[&[0], &[0], &[1]]).sym_square().unwrap();
        assert_eq!(s, op(&[&[0], &[0], &[0], &[1]]));
        let n = 5;
        let one = LogSeries::from_series(PowerSeries::one(Var::Phi, n));
        let l = LogSeries::log_symbol(Var::Phi, n);
        let l2 = l.mul(&l).unwrap();
        for sol in [one, l, l2] {
            assert!(s.apply(&sol).is_zero());
        }
    }

    #[test]
    fn sym_square_rejects_wrong_rank() {
        assert_eq!(
            ThetaOperator::theta().sym_square(),
            Err(Error::WrongRank { expected: 2, found: 1 })
        );
    }

    #[test]
    fn apply_theta_to_log() {
        let n = 4;
        let l = LogSeries::log_symbol(Var::Phi, n);
        let out = ThetaOperator::theta().apply(&l);
        assert_eq!(out.degree(), 0);
        assert_eq!(out.part(0), PowerSeries::one(Var::Phi, n));
    }

    #[test]
    fn indicial_after_clearing_monomial() {
        let o = op(&[&[0, 0, 5], &[0, 0, 1, 1]]);
        assert_eq!(o.indicial_polynomial(), Poly::from_ints(&[5, 1]));
    }
}
