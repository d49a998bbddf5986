//! The Dwork family of quartic K3 surfaces run through the same pipeline.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::family::{self, FamilyTag};
use crate::frobenius::{frobenius_basis, CanonicalBasis};
use crate::instanton::{lambert_extract, InstantonTable};
use crate::logseries::LogSeries;
use crate::mirror::{build_mirror, MirrorData};
use crate::rational::{int, BigRational};
use crate::series::{PowerSeries, Var};

#[derive(Clone, Debug)]
pub struct DworkBasis {
    pub w0: PowerSeries,
    pub h1: PowerSeries,
    pub h2: PowerSeries,
    pub h3: PowerSeries,
    /// Rank-4 basis of `D_dk = θ L_dk`.
    pub basis: CanonicalBasis,
}

impl DworkBasis {
    /// `W0 .. W3`.
    pub fn solutions(&self) -> Vec<LogSeries> {
        self.basis.solutions()
    }
}

/// `W0_n = (4n)!/(n!)⁴` and `h1_n = 4 W0_n (H_{4n} - H_n)` for `n <= order`.
pub fn closed_forms(order: usize) -> (PowerSeries, PowerSeries) {
    let mut w0 = Vec::with_capacity(order + 1);
    let mut h1 = Vec::with_capacity(order + 1);
    let mut term = BigInt::one();
    let mut harmonic_gap = BigRational::from_integer(0.into());
    for n in 0..=order {
        if n > 0 {
            // W0_n / W0_{n-1} = (4n)(4n-1)(4n-2)(4n-3) / n⁴
            let n4 = 4 * n as u64;
            term = term * (n4 * (n4 - 1) * (n4 - 2) * (n4 - 3)) / BigInt::from(n as u64).pow(4);
            for k in n4 - 3..=n4 {
                harmonic_gap += BigRational::new(BigInt::one(), BigInt::from(k));
            }
            harmonic_gap -= BigRational::new(BigInt::one(), BigInt::from(n as u64));
        }
        let w = BigRational::from_integer(term.clone());
        h1.push(int(4) * &w * &harmonic_gap);
        w0.push(w);
    }
    (PowerSeries::new(w0, Var::Phi), PowerSeries::new(h1, Var::Phi))
}

fn mismatch(what: &str, route: &str) -> Error {
    Error::RouteMismatch(format!("{what}: closed form and {route} disagree"))
}

/// Closed forms for `W0`, `h1`; the Frobenius engine on `L_dk` and `D_dk`
/// for the rest. All overlapping data must agree.
pub fn dwork_basis(order: usize) -> Result<DworkBasis> {
    if order < 1 {
        return Err(Error::InvalidArgument("order must be at least 1".into()));
    }
    let (w0, h1) = closed_forms(order);
    let l = frobenius_basis(&family::dwork_l(), 3, order)?;
    let d = frobenius_basis(&family::dwork_d(), 4, order)?.with_family(FamilyTag::Dwork);
    for (name, b) in [("L_dk basis", &l), ("D_dk basis", &d)] {
        if b.w0() != &w0 {
            return Err(mismatch("W0", name));
        }
        if b.h(1) != &h1 {
            return Err(mismatch("h1", name));
        }
    }
    if l.h(2) != d.h(2) {
        return Err(Error::RouteMismatch("h2: L_dk and D_dk bases disagree".into()));
    }
    Ok(DworkBasis { w0, h1, h2: d.h(2).clone(), h3: d.h(3).clone(), basis: d })
}

#[derive(Clone, Debug)]
pub struct DworkPipeline {
    pub mirror: MirrorData,
    pub yukawa: PowerSeries,
    pub instantons: InstantonTable,
}

pub fn dwork_mirror_yukawa(order: usize) -> Result<DworkPipeline> {
    if order < 2 {
        return Err(Error::InvalidArgument("order must be at least 2".into()));
    }
    let b = dwork_basis(order)?;
    let mirror = build_mirror(&b.basis, order)?;
    let yukawa = mirror.yukawa_d()?;
    let instantons = lambert_extract(&yukawa);
    Ok(DworkPipeline { mirror, yukawa, instantons })
}
