//! q-expansions of the eta quotients `T`, `F` and of the hexagonal
//! lattice theta, from which `H` is built.

use num_traits::Zero;

use crate::rational::{frac, int, BigRational};
use crate::series::{PowerSeries, Var};

/// `q^q_power · Π_d Π_{n>=1} (1 - q^{dn})^{e_d}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaQuotientSpec {
    pub factors: Vec<(u32, i64)>,
    pub q_power: usize,
}

/// `T = q η(q)^12 η(6q)^12 / (η(2q)^12 η(3q)^12)` in product form.
pub fn t_spec() -> EtaQuotientSpec {
    EtaQuotientSpec { factors: vec![(1, 12), (6, 12), (2, -12), (3, -12)], q_power: 1 }
}

/// `F = η(2q)^7 η(3q)^7 / (η(q)^5 η(6q)^5)`.
pub fn f_spec() -> EtaQuotientSpec {
    EtaQuotientSpec { factors: vec![(2, 7), (3, 7), (1, -5), (6, -5)], q_power: 0 }
}

/// Expansion to `q^order` through the logarithm
/// `Σ_d e_d Σ_n log(1 - q^{dn}) = -Σ_d e_d Σ_{n,m} q^{dnm}/m`.
pub fn eta_quotient(spec: &EtaQuotientSpec, order: usize) -> PowerSeries {
    assert!(order >= 1, "order must be positive");
    if spec.q_power > order {
        return PowerSeries::zero(Var::Q, order);
    }
    let n = order - spec.q_power;
    let mut log = vec![BigRational::zero(); n + 1];
    for &(d, e) in &spec.factors {
        assert!(d >= 1, "eta divisor must be positive");
        let d = d as usize;
        if e == 0 {
            continue;
        }
        for dn in (d..=n).step_by(d) {
            for (m, k) in (dn..=n).step_by(dn).enumerate() {
                log[k] -= frac(e, m as i64 + 1);
            }
        }
    }
    let product = PowerSeries::new(log, Var::Q).exp().expect("log has zero constant term");
    product.shift_up(spec.q_power)
}

fn lattice_bound(order: usize) -> i64 {
    // m² + mn + n² >= 3m²/4, so |m|, |n| <= sqrt(4N/3)
    ((4.0 * order as f64 / 3.0).sqrt().ceil() as i64) + 1
}

/// `Σ_{(m,n) ∈ Z²} q^{m² + mn + n²}` by direct enumeration.
pub fn hexagonal_theta(order: usize) -> PowerSeries {
    assert!(order >= 1, "order must be positive");
    let b = lattice_bound(order);
    let mut counts = vec![0i64; order + 1];
    for m in -b..=b {
        for n in -b..=b {
            let norm = m * m + m * n + n * n;
            if norm as usize <= order {
                counts[norm as usize] += 1;
            }
        }
    }
    PowerSeries::from_ints(&counts, Var::Q)
}

/// `θ3(x) = Σ_{n∈Z} x^{n²}`.
pub fn theta3(order: usize) -> PowerSeries {
    let mut c = vec![0i64; order + 1];
    let mut n = 0usize;
    while n * n <= order {
        c[n * n] += if n == 0 { 1 } else { 2 };
        n += 1;
    }
    PowerSeries::from_ints(&c, Var::Q)
}

/// `x^{-1/4} θ2(x) = Σ_{n∈Z} x^{n² + n}`.
pub fn theta2_reduced(order: usize) -> PowerSeries {
    let mut c = vec![0i64; order + 1];
    let mut n = 0usize;
    while n * n + n <= order {
        c[n * n + n] += 2;
        n += 1;
    }
    PowerSeries::from_ints(&c, Var::Q)
}

/// The hexagonal theta as `θ3(q)θ3(q³) + θ2(q)θ2(q³)` under the nome
/// `θ3(x) = Σ x^{n²}`, `θ2(x) = Σ x^{(n+1/2)²}`; the quarter powers
/// combine to a single `q`.
pub fn hexagonal_theta_product(order: usize) -> PowerSeries {
    assert!(order >= 1, "order must be positive");
    let cube = |s: PowerSeries| s.substitute_power(3).truncate(order);
    let even = &theta3(order) * &cube(theta3(order / 3 + 1));
    let odd = (&theta2_reduced(order) * &cube(theta2_reduced(order / 3 + 1))).shift_up(1);
    (&even + &odd).truncate(order)
}

/// `H(q) = 2Θ(q²)² - Θ(q)²`.
pub fn h_series(order: usize) -> PowerSeries {
    let theta = hexagonal_theta(order);
    let sq = &theta * &theta;
    let sq2 = hexagonal_theta(order / 2 + 1);
    let sq2 = (&sq2 * &sq2).substitute_power(2).truncate(order);
    &sq2.scale(&int(2)) - &sq
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> PowerSeries {
        PowerSeries::from_ints(v, Var::Q)
    }

    #[test]
    fn t_prefix() {
        assert_eq!(eta_quotient(&t_spec(), 5), ints(&[0, 1, -12, 66, -220, 495]));
    }

    #[test]
    fn f_prefix() {
        assert_eq!(eta_quotient(&f_spec(), 3), ints(&[1, 5, 13, 23]));
    }

    #[test]
    fn trivial_spec() {
        let spec = EtaQuotientSpec { factors: vec![(1, 0), (4, 0)], q_power: 0 };
        assert_eq!(eta_quotient(&spec, 6), PowerSeries::one(Var::Q, 6));
    }

    #[test]
    fn euler_pentagonal() {
        let spec = EtaQuotientSpec { factors: vec![(1, 1)], q_power: 0 };
        assert_eq!(
            eta_quotient(&spec, 12),
            ints(&[1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1])
        );
    }

    #[test]
    fn hexagonal_prefix() {
        assert_eq!(hexagonal_theta(7), ints(&[1, 6, 0, 6, 6, 0, 0, 12]));
    }

    #[test]
    fn hexagonal_routes_agree() {
        for n in [1, 2, 3, 10, 37] {
            assert_eq!(hexagonal_theta(n), hexagonal_theta_product(n), "order {n}");
        }
    }

    #[test]
    fn h_prefix() {
        assert_eq!(h_series(3), ints(&[1, -12, -12, -12]));
    }
}
