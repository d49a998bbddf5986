//! Mirror map and Yukawa couplings in the hatted normalization. Every
//! `2πi` is absorbed, so τ-derivatives become `q d/dq` and the cubic term
//! of the prepotential contributes the constant 6.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::frobenius::CanonicalBasis;
use crate::logseries::LogSeries;
use crate::rational::int;
use crate::series::{PowerSeries, Var};

#[derive(Clone, Debug)]
pub struct MirrorData {
    pub basis: CanonicalBasis,
    /// `q = φ exp(h1/w0)`, a series in φ.
    pub q_of_phi: PowerSeries,
    /// The inverse of `q_of_phi`, a series in q.
    pub phi_of_q: PowerSeries,
    /// `h3 - h1³/w0²`.
    pub rho: PowerSeries,
}

fn correction(basis: &CanonicalBasis, h3: &PowerSeries) -> Result<PowerSeries> {
    let w0 = basis.w0();
    let h1 = basis.h(1);
    let cube = &(h1 * h1) * h1;
    Ok(h3 - &cube.checked_div(&(w0 * w0))?)
}

/// Needs a rank-4 basis known to at least `order`.
pub fn build_mirror(basis: &CanonicalBasis, order: usize) -> Result<MirrorData> {
    if basis.rank() != 4 {
        return Err(Error::WrongRank { expected: 4, found: basis.rank() });
    }
    if order < 1 || basis.order() < order {
        return Err(Error::InvalidArgument(format!(
            "mirror order {order} needs a basis known to that order (have {})",
            basis.order()
        )));
    }
    let basis = basis.truncate(order);
    let t = basis.h(1).checked_div(basis.w0())?;
    let q_of_phi = t.exp()?.shift_up(1).truncate(order);
    let phi_of_q = q_of_phi.revert()?.with_var(Var::Q);
    let rho = correction(&basis, basis.h(3))?;
    Ok(MirrorData { basis, q_of_phi, phi_of_q, rho })
}

impl MirrorData {
    pub fn order(&self) -> usize {
        self.phi_of_q.order()
    }

    /// `(ρ'/w0)(φ(q))` for a correction `ρ'`.
    fn instanton_part(&self, rho: &PowerSeries) -> Result<PowerSeries> {
        rho.checked_div(self.basis.w0())?.compose(&self.phi_of_q)
    }

    /// `w3/w0` re-expanded in `L = log q`: `L³ + (ρ/w0)(φ(q))`. The
    /// lower log terms cancel because `w0 h2 = h1²`.
    pub fn prepotential(&self) -> Result<LogSeries> {
        self.prepotential_with(&self.rho)
    }

    fn prepotential_with(&self, rho: &PowerSeries) -> Result<LogSeries> {
        let g = self.instanton_part(rho)?;
        let n = g.order();
        LogSeries::new(vec![
            g,
            PowerSeries::zero(Var::Q, n),
            PowerSeries::zero(Var::Q, n),
            PowerSeries::one(Var::Q, n),
        ])
    }

    /// The Yukawa coupling of the `D` basis.
    pub fn yukawa_d(&self) -> Result<PowerSeries> {
        yukawa_from_prepotential(&self.prepotential()?)
    }

    /// Same pipeline with `h3` replaced by `h3_alt`.
    pub fn yukawa_variant(&self, h3_alt: &PowerSeries) -> Result<PowerSeries> {
        if !h3_alt.coeffs()[0].is_zero() {
            return Err(Error::InvalidArgument("h3_alt must vanish at 0".into()));
        }
        let h3 = h3_alt.truncate(self.basis.order().min(h3_alt.order()));
        let rho = correction(&self.basis.truncate(h3.order()), &h3)?;
        yukawa_from_prepotential(&self.prepotential_with(&rho)?)
    }

    /// `(θ_q φ)² / (w0(φ)² φ² disc(φ))` with `φ = φ(q)`, scaled so the
    /// constant term is 1.
    pub fn yukawa_bp_normalized(&self) -> Result<PowerSeries> {
        let phi = &self.phi_of_q;
        let n = phi.order();
        let ratio = phi.theta().checked_div(phi)?;
        let w0 = self.basis.w0().compose(phi)?;
        let disc = PowerSeries::from_poly(self.basis.discriminant(), Var::Phi, n).compose(phi)?;
        let k = (&ratio * &ratio).checked_div(&(&(&w0 * &w0) * &disc))?;
        let c = k.coeffs()[0].clone();
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(k.scale(&(int(1) / c)))
    }
}

/// `(q d/dq)³ F` for a prepotential in `L = log q`; the result must be log-free.
pub fn yukawa_from_prepotential(f: &LogSeries) -> Result<PowerSeries> {
    let y = f.theta_pow(3);
    if y.parts().iter().skip(1).any(|p| !p.is_zero()) {
        return Err(Error::InvariantViolated(
            "third derivative of the prepotential still carries log terms".into(),
        ));
    }
    Ok(y.part(0))
}
