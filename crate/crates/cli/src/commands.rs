use apery_core::apery::{apery_sequences, zeta3_convergent};
use apery_core::dwork::dwork_basis;
use apery_core::family;
use apery_core::frobenius::{beukers, frobenius_basis, CanonicalBasis};
use apery_core::instanton::{lambert_extract, InstantonTable};
use apery_core::mirror::{build_mirror, MirrorData};
use apery_core::modular::{eta_quotient, f_spec, h_series, hexagonal_theta, t_spec};
use apery_core::series::PowerSeries;
use apery_core::FamilyTag;
use clap::ValueEnum;
use serde::Serialize;

use crate::cache::Cache;
use crate::document::{canonical_json, fraction, Fraction, InstantonDocument, SeriesDocument};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Beukers,
    Dwork,
}

impl Family {
    pub fn tag(self) -> FamilyTag {
        match self {
            Family::Beukers => FamilyTag::Beukers,
            Family::Dwork => FamilyTag::Dwork,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Object {
    W0,
    H1,
    H2,
    H3,
    #[value(name = "T")]
    T,
    #[value(name = "F")]
    F,
    #[value(name = "H")]
    H,
    ThetaHex,
    PhiOfQ,
    QOfPhi,
    Rho,
    Yukawa,
    YukawaVariant,
    YukawaBpNormalized,
}

impl Object {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }

    /// Objects attached to the Beukers family only.
    fn beukers_only(self) -> bool {
        matches!(self, Object::T | Object::F | Object::H | Object::ThetaHex | Object::YukawaVariant)
    }

    fn normalization(self) -> &'static str {
        match self {
            Object::W0 | Object::H1 | Object::H2 | Object::H3 => {
                "hatted: w_j = sum_i C(j,i) h_(j-i) log(phi)^i, (2 pi i)^j absorbed"
            }
            Object::T | Object::F => "eta quotient",
            Object::H => "2 theta_hex(q^2)^2 - theta_hex(q)^2",
            Object::ThetaHex => "sum over (m,n) of q^(m^2+mn+n^2)",
            Object::PhiOfQ | Object::QOfPhi => "q = phi exp(h1/w0)",
            Object::Rho => "h3 - h1^3/w0^2",
            Object::Yukawa => "6 + (q d/dq)^3 (rho/w0)(phi(q))",
            Object::YukawaVariant => "6 + (q d/dq)^3 (rho~/w0)(phi(q)), h3 from theta L + phi L",
            Object::YukawaBpNormalized => {
                "(q dphi/dq)^2 / (w0(phi)^2 phi^2 disc(phi)), constant term scaled to 1"
            }
        }
    }
}

pub fn core_error(e: apery_core::Error) -> CliError {
    CliError::Failure(e.to_string())
}

pub struct Context {
    cache: Option<Cache>,
}

impl Context {
    pub fn new(use_cache: bool) -> Self {
        Context { cache: if use_cache { Cache::from_env() } else { None } }
    }

    pub fn basis(&self, family: Family, order: usize) -> Result<CanonicalBasis, CliError> {
        let tag = family.tag();
        if let Some(b) = self.cache.as_ref().and_then(|c| c.load(tag, order)) {
            return Ok(b);
        }
        let b = match family {
            Family::Beukers => beukers::recursion_basis(order).map_err(core_error)?,
            Family::Dwork => dwork_basis(order.max(1)).map_err(core_error)?.basis.truncate(order),
        };
        if let Some(c) = &self.cache {
            if let Err(e) = c.store(&b) {
                eprintln!("warning: could not write cache in {}: {e}", c.dir().display());
            }
        }
        Ok(b)
    }

    pub fn mirror(&self, family: Family, order: usize) -> Result<MirrorData, CliError> {
        let order = order.max(1);
        build_mirror(&self.basis(family, order)?, order).map_err(core_error)
    }

    pub fn instantons(&self, family: Family, order: usize) -> Result<InstantonTable, CliError> {
        let y = self.mirror(family, order)?.yukawa_d().map_err(core_error)?;
        Ok(lambert_extract(&y))
    }
}

fn fit(s: PowerSeries, order: usize) -> Result<PowerSeries, CliError> {
    if s.order() < order {
        return Err(CliError::Failure(format!("only {} coefficients are known", s.order() + 1)));
    }
    Ok(s.truncate(order))
}

pub fn expand(ctx: &Context, object: Object, family: Family, order: usize) -> Result<SeriesDocument, CliError> {
    if object.beukers_only() && family != Family::Beukers {
        return Err(CliError::Usage(format!(
            "{} is only defined for the beukers family",
            object.name()
        )));
    }
    let n = order.max(1);
    let s = match object {
        Object::W0 => ctx.basis(family, order)?.w0().clone(),
        Object::H1 | Object::H2 | Object::H3 => {
            let j = match object {
                Object::H1 => 1,
                Object::H2 => 2,
                _ => 3,
            };
            ctx.basis(family, order)?.h(j).clone()
        }
        Object::T => eta_quotient(&t_spec(), n),
        Object::F => eta_quotient(&f_spec(), n),
        Object::H => h_series(n),
        Object::ThetaHex => hexagonal_theta(n),
        Object::PhiOfQ => ctx.mirror(family, n)?.phi_of_q,
        Object::QOfPhi => ctx.mirror(family, n)?.q_of_phi,
        Object::Rho => ctx.mirror(family, n)?.rho,
        Object::Yukawa => ctx.mirror(family, n)?.yukawa_d().map_err(core_error)?,
        Object::YukawaVariant => {
            let tilde = frobenius_basis(&family::beukers_d_tilde(), 4, n).map_err(core_error)?;
            ctx.mirror(family, n)?.yukawa_variant(tilde.h(3)).map_err(core_error)?
        }
        Object::YukawaBpNormalized => ctx.mirror(family, n + 1)?.yukawa_bp_normalized().map_err(core_error)?,
    };
    let s = fit(s, order)?;
    let family_name = family.tag().name();
    let provenance = match object {
        Object::T | Object::F | Object::H | Object::ThetaHex => None,
        _ => Some(family_name),
    };
    Ok(SeriesDocument::new(&object.name(), &s, provenance, object.normalization()))
}

pub fn instantons(
    ctx: &Context,
    family: Family,
    order: usize,
    check_period: bool,
) -> Result<InstantonDocument, CliError> {
    if order < 1 {
        return Err(CliError::Usage("--order must be at least 1".into()));
    }
    let t = ctx.instantons(family, order)?;
    let period = check_period.then(|| t.detect_period());
    Ok(InstantonDocument::new(family.tag().name(), &t, period))
}

#[derive(Serialize)]
pub struct AperyDocument {
    pub n_max: usize,
    pub a: Vec<String>,
    pub b: Vec<Fraction>,
    pub convergent: Fraction,
    /// Upper bound on `|B_n/A_n - zeta(3)|` at `n = n_max`.
    pub error_bound: String,
}

impl AperyDocument {
    pub fn to_json(&self) -> String {
        canonical_json(self)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,a,b_numerator,b_denominator\n");
        for (i, (a, [bn, bd])) in self.a.iter().zip(&self.b).enumerate() {
            out.push_str(&format!("{i},{a},{bn},{bd}\n"));
        }
        out
    }
}

pub fn apery(order: usize) -> Result<AperyDocument, CliError> {
    if order < 1 {
        return Err(CliError::Usage("--order must be at least 1".into()));
    }
    let p = apery_sequences(order).map_err(core_error)?;
    let c = zeta3_convergent(order).map_err(core_error)?;
    Ok(AperyDocument {
        n_max: order,
        a: p.a.iter().map(ToString::to_string).collect(),
        b: p.b.iter().map(fraction).collect(),
        convergent: fraction(&c.value),
        error_bound: c.error_bound_decimal(),
    })
}
