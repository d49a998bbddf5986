//! The operators of the two K3 families and their descriptors.

use std::fmt;
use std::str::FromStr;

use crate::diff_ops::ThetaOperator;
use crate::poly::Poly;
use crate::rational::frac;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyTag {
    Beukers,
    Dwork,
    Custom,
}

impl FamilyTag {
    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::Beukers => "beukers",
            FamilyTag::Dwork => "dwork",
            FamilyTag::Custom => "custom",
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyTag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "beukers" => Ok(FamilyTag::Beukers),
            "dwork" => Ok(FamilyTag::Dwork),
            "custom" => Ok(FamilyTag::Custom),
            other => Err(format!("unknown family '{other}'")),
        }
    }
}

/// A one-parameter family: its third-order Picard–Fuchs operator and the
/// fourth-order operator `θ ∘ L` (up to a monomial) carrying the extra
/// canonical solution.
#[derive(Clone, Debug)]
pub struct Family {
    pub tag: FamilyTag,
    pub picard_fuchs: ThetaOperator,
    pub extended: ThetaOperator,
}

impl Family {
    pub fn beukers() -> Self {
        Family { tag: FamilyTag::Beukers, picard_fuchs: beukers_l(), extended: beukers_d() }
    }

    pub fn dwork() -> Self {
        Family { tag: FamilyTag::Dwork, picard_fuchs: dwork_l(), extended: dwork_d() }
    }

    pub fn of(tag: FamilyTag) -> Option<Self> {
        match tag {
            FamilyTag::Beukers => Some(Family::beukers()),
            FamilyTag::Dwork => Some(Family::dwork()),
            FamilyTag::Custom => None,
        }
    }

    /// Leading θ-coefficient of the Picard–Fuchs operator:
    /// `1 - 34φ + φ²` for Beukers, `1 - 256φ` for Dwork.
    pub fn discriminant(&self) -> Poly {
        self.picard_fuchs.leading().clone()
    }
}

/// `θ³ - φ(34θ³ + 51θ² + 27θ + 5) + φ²(θ + 1)³`.
pub fn beukers_l() -> ThetaOperator {
    ThetaOperator::from_theta_polys(&[
        Poly::from_ints(&[0, 0, 0, 1]),
        Poly::from_ints(&[-5, -27, -51, -34]),
        Poly::from_ints(&[1, 3, 3, 1]),
    ])
}

/// `(1 - 34φ + φ²)θ² - φ(17 - φ)θ - φ(10 - φ)/4`, whose symmetric square
/// annihilates the periods of [`beukers_l`].
pub fn beukers_root() -> ThetaOperator {
    ThetaOperator::new(vec![
        Poly::new(vec![frac(0, 1), frac(-10, 4), frac(1, 4)]),
        Poly::from_ints(&[0, -17, 1]),
        Poly::from_ints(&[1, -34, 1]),
    ])
}

/// The fourth-order operator annihilating `Σ B_n φ^(n+1)`, written in the
/// coordinate where that series lives (the inverse of the K3 parameter).
pub fn beukers_d_inverse_coordinate() -> ThetaOperator {
    ThetaOperator::new(vec![
        Poly::from_ints(&[2, -5]),
        Poly::from_ints(&[-7, 32]),
        Poly::from_ints(&[9, -78]),
        Poly::from_ints(&[-5, 85]),
        Poly::from_ints(&[1, -34, 1]),
    ])
}

/// [`beukers_d_inverse_coordinate`] pulled back to the K3 parameter, with
/// denominators cleared. Equals `θ ∘ beukers_l()`.
pub fn beukers_d() -> ThetaOperator {
    beukers_d_inverse_coordinate().pullback_inversion().operator
}

/// The rival operator `D + φ L`.
pub fn beukers_d_tilde() -> ThetaOperator {
    &beukers_d() + &beukers_l().mul_phi_power(1)
}

/// `θ³ - 4φ(4θ + 1)(4θ + 2)(4θ + 3)`.
pub fn dwork_l() -> ThetaOperator {
    ThetaOperator::from_theta_polys(&[
        Poly::from_ints(&[0, 0, 0, 1]),
        Poly::from_ints(&[-24, -176, -384, -256]),
    ])
}

/// `θ ∘ dwork_l()`.
pub fn dwork_d() -> ThetaOperator {
    ThetaOperator::theta().compose(&dwork_l())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_is_theta_after_l() {
        let pb = beukers_d_inverse_coordinate().pullback_inversion();
        assert_eq!(pb.cleared_power, 2);
        assert_eq!(pb.operator, ThetaOperator::theta().compose(&beukers_l()));
    }

    #[test]
    fn discriminants() {
        assert_eq!(Family::beukers().discriminant(), Poly::from_ints(&[1, -34, 1]));
        assert_eq!(Family::dwork().discriminant(), Poly::from_ints(&[1, -256]));
    }

    #[test]
    fn indicial_polynomials() {
        let eps3 = Poly::from_ints(&[0, 0, 0, 1]);
        let eps4 = Poly::from_ints(&[0, 0, 0, 0, 1]);
        assert_eq!(beukers_l().indicial_polynomial(), eps3);
        assert_eq!(dwork_l().indicial_polynomial(), eps3);
        assert_eq!(beukers_d().indicial_polynomial(), eps4);
        assert_eq!(beukers_d_tilde().indicial_polynomial(), eps4);
        assert_eq!(dwork_d().indicial_polynomial(), eps4);
        // (ε - 1)^3 (ε - 2) in the inverse coordinate
        assert_eq!(
            beukers_d_inverse_coordinate().indicial_polynomial(),
            Poly::from_ints(&[2, -7, 9, -5, 1])
        );
    }

    #[test]
    fn tag_round_trip() {
        for t in [FamilyTag::Beukers, FamilyTag::Dwork, FamilyTag::Custom] {
            assert_eq!(t.name().parse::<FamilyTag>().unwrap(), t);
        }
        assert!("quintic".parse::<FamilyTag>().is_err());
    }
}
