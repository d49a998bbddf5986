//! Output documents. JSON is emitted compact with sorted keys; rationals
//! are decimal `[numerator, denominator]` string pairs.

use apery_core::instanton::{InstantonTable, Period};
use apery_core::rational::{self, BigRational};
use apery_core::series::{PowerSeries, Var};
use serde::{Deserialize, Serialize};

pub type Fraction = [String; 2];

pub fn fraction(r: &BigRational) -> Fraction {
    [r.numer().to_string(), r.denom().to_string()]
}

pub fn parse_fraction(f: &Fraction) -> Option<BigRational> {
    if f[1].starts_with('-') {
        return None;
    }
    let r = rational::parse(&format!("{}/{}", f[0], f[1]))?;
    // only reduced fractions are canonical
    (fraction(&r) == *f).then_some(r)
}

pub fn canonical_json<T: Serialize>(value: &T) -> String {
    serde_json::to_value(value).expect("documents serialize").to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub family: Option<String>,
    pub normalization: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDocument {
    pub object: String,
    pub variable: String,
    pub order: usize,
    pub coefficients: Vec<Fraction>,
    pub provenance: Provenance,
}

impl SeriesDocument {
    pub fn new(object: &str, s: &PowerSeries, family: Option<&str>, normalization: &str) -> Self {
        SeriesDocument {
            object: object.to_string(),
            variable: s.var().name().to_string(),
            order: s.order(),
            coefficients: s.coeffs().iter().map(fraction).collect(),
            provenance: Provenance {
                family: family.map(str::to_string),
                normalization: normalization.to_string(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        canonical_json(self)
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        let doc: SeriesDocument = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if doc.coefficients.len() != doc.order + 1 {
            return Err(format!(
                "order {} needs {} coefficients, found {}",
                doc.order,
                doc.order + 1,
                doc.coefficients.len()
            ));
        }
        Ok(doc)
    }

    pub fn to_series(&self) -> Result<PowerSeries, String> {
        let var = match self.variable.as_str() {
            "phi" => Var::Phi,
            "q" => Var::Q,
            "x" => Var::X,
            other => return Err(format!("unknown variable {other:?}")),
        };
        let coeffs = self
            .coefficients
            .iter()
            .map(|f| parse_fraction(f).ok_or_else(|| format!("bad coefficient {f:?}")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PowerSeries::new(coeffs, var))
    }

    pub fn to_csv(&self) -> String {
        csv(self.coefficients.iter().enumerate())
    }
}

fn csv<'a>(rows: impl Iterator<Item = (usize, &'a Fraction)>) -> String {
    let mut out = String::from("index,numerator,denominator\n");
    for (i, [n, d]) in rows {
        out.push_str(&format!("{i},{n},{d}\n"));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstantonEntry {
    pub k: usize,
    pub value: Fraction,
    pub integral: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstantonDocument {
    pub family: String,
    pub order: usize,
    pub c0: Fraction,
    pub numbers: Vec<InstantonEntry>,
    pub integral: bool,
    pub period: Option<usize>,
    /// `found`, `none`, `undetermined` or `unchecked`.
    pub period_status: String,
    pub period_verified_to: Option<usize>,
}

impl InstantonDocument {
    pub fn new(family: &str, t: &InstantonTable, period: Option<Period>) -> Self {
        let (status, verified_to) = match period {
            None => ("unchecked", None),
            Some(Period::Found { verified_to, .. }) => ("found", Some(verified_to)),
            Some(Period::NotFound) => ("none", None),
            Some(Period::Undetermined) => ("undetermined", None),
        };
        InstantonDocument {
            family: family.to_string(),
            order: t.len(),
            c0: fraction(&t.c0),
            numbers: t
                .numbers
                .iter()
                .zip(&t.integral)
                .enumerate()
                .map(|(i, (n, &integral))| InstantonEntry { k: i + 1, value: fraction(n), integral })
                .collect(),
            integral: t.all_integral(),
            period: period.and_then(Period::period),
            period_status: status.to_string(),
            period_verified_to: verified_to,
        }
    }

    pub fn to_json(&self) -> String {
        canonical_json(self)
    }

    /// One row per `N_k`, `k >= 1`.
    pub fn to_csv(&self) -> String {
        csv(self.numbers.iter().map(|e| (e.k, &e.value)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use apery_core::rational::{frac, int};

    fn doc() -> SeriesDocument {
        let s = PowerSeries::new(vec![int(0), frac(-3, 4), int(12)], Var::Phi);
        SeriesDocument::new("h1", &s, Some("beukers"), "hatted")
    }

    #[test]
    fn json_is_canonical_and_round_trips() {
        let text = doc().to_json();
        assert_eq!(
            text,
            r#"{"coefficients":[["0","1"],["-3","4"],["12","1"]],"object":"h1","order":2,"provenance":{"family":"beukers","normalization":"hatted"},"variable":"phi"}"#
        );
        let back = SeriesDocument::from_json(&text).unwrap();
        assert_eq!(back.to_json(), text);
        assert_eq!(back.to_series().unwrap().coeffs()[1], frac(-3, 4));
    }

    #[test]
    fn csv_layout() {
        assert_eq!(doc().to_csv(), "index,numerator,denominator\n0,0,1\n1,-3,4\n2,12,1\n");
    }

    #[test]
    fn rejects_unreduced() {
        assert_eq!(parse_fraction(&["2".into(), "4".into()]), None);
        assert_eq!(parse_fraction(&["1".into(), "-2".into()]), None);
        assert_eq!(parse_fraction(&["1".into(), "0".into()]), None);
        assert_eq!(parse_fraction(&["-1".into(), "2".into()]), Some(frac(-1, 2)));
    }

    #[test]
    fn order_mismatch_is_rejected() {
        let text = doc().to_json().replace(r#""order":2"#, r#""order":5"#);
        assert!(SeriesDocument::from_json(&text).is_err());
    }
}
