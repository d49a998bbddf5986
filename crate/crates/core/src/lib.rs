//! Exact power series and θ-operators over `BigRational`, with the
//! Frobenius-to-instanton pipeline for the Apéry Calabi–Yau families.

pub mod apery;
pub mod diff_ops;
pub mod dwork;
pub mod error;
pub mod family;
pub mod frobenius;
pub mod instanton;
pub mod logseries;
pub mod mirror;
pub mod modular;
pub mod poly;
pub mod rational;
pub mod series;

pub use error::{Error, Result};
pub use family::{Family, FamilyTag};
pub use logseries::LogSeries;
pub use poly::Poly;
pub use rational::BigRational;
pub use series::{PowerSeries, Var};
