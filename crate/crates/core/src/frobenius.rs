//! Canonical solutions at a point of maximally unipotent monodromy.
//!
//! Two independent routes produce the same data:
//!
//! - [`frobenius_basis`] works in `Q[ε]/(ε^r)`: it solves
//!   `O(φ^ε Σ a_k(ε) φ^k) ≡ 0` term by term and reads off the log-solutions
//!   as `j! · [ε^j] φ^ε Σ a_k(ε) φ^k`.
//! - [`beukers`] holds the explicit three-term recursions for the Apéry
//!   numbers and the tails `c_{1,n}`, `c_{2,n}`, `c_{3,n}`, run through
//!   [`run_recursion`].

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::family::FamilyTag;
use crate::logseries::LogSeries;
use crate::poly::Poly;
use crate::rational::{int, BigRational};
use crate::series::{PowerSeries, Var};
use crate::diff_ops::ThetaOperator;

/// A sequence entering a recursion as an inhomogeneous term.
#[derive(Clone, Debug)]
pub struct Forcing {
    /// `coeffs[i]` multiplies `sequence[n + 1 - i]`.
    pub coeffs: Vec<Poly>,
    pub sequence: Vec<BigRational>,
}

/// `Σ_i own[i](n) x_{n+1-i} + Σ forcing terms = 0`, solved for `x_{n+1}`.
/// Terms with negative index are zero.
#[derive(Clone, Debug)]
pub struct HolonomicRecursion {
    pub own: Vec<Poly>,
    pub forcing: Vec<Forcing>,
    pub initial: Vec<BigRational>,
}

impl HolonomicRecursion {
    pub fn homogeneous(own: Vec<Poly>, initial: Vec<BigRational>) -> Self {
        HolonomicRecursion { own, forcing: Vec::new(), initial }
    }

    pub fn band_width(&self) -> usize {
        self.own.len()
    }
}

/// Runs the recursion until `count` values `x_0 .. x_{count-1}` exist.
pub fn run_recursion(rec: &HolonomicRecursion, count: usize) -> Result<Vec<BigRational>> {
    if rec.initial.is_empty() || rec.own.is_empty() {
        return Err(Error::InvalidArgument("recursion needs initial values and coefficients".into()));
    }
    if count < rec.initial.len() {
        return Err(Error::InvalidArgument(format!(
            "count {count} is below the {} initial values",
            rec.initial.len()
        )));
    }
    let mut x = rec.initial.clone();
    for k in rec.initial.len()..count {
        let n = k as i64 - 1;
        let lead = rec.own[0].eval_int(n);
        if lead.is_zero() {
            return Err(Error::SingularRecursion(n));
        }
        let mut sum = BigRational::zero();
        for (i, p) in rec.own.iter().enumerate().skip(1) {
            if i <= k {
                sum += p.eval_int(n) * &x[k - i];
            }
        }
        for f in &rec.forcing {
            for (i, p) in f.coeffs.iter().enumerate() {
                if i > k {
                    continue;
                }
                let idx = k - i;
                let v = f.sequence.get(idx).ok_or(Error::ForcingTooShort {
                    needed: idx,
                    available: f.sequence.len(),
                })?;
                sum += p.eval_int(n) * v;
            }
        }
        x.push(-sum / lead);
    }
    Ok(x)
}

/// Fundamental solution `w0` and tails `h_1 .. h_{r-1}`. The log-solutions
/// are `ŵ_j = Σ_i C(j,i) h_{j-i} L^i` with `h_0 = w0`; the `(2πi)^j`
/// prefactors are absorbed so every coefficient is rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalBasis {
    family: FamilyTag,
    discriminant: Poly,
    w0: PowerSeries,
    tails: Vec<PowerSeries>,
}

fn binomial(n: usize, k: usize) -> BigRational {
    let v = (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1));
    BigRational::from_integer(v.into())
}

impl CanonicalBasis {
    pub fn new(
        family: FamilyTag,
        discriminant: Poly,
        w0: PowerSeries,
        tails: Vec<PowerSeries>,
    ) -> Result<Self> {
        if !w0.coeffs()[0].is_one() {
            return Err(Error::InvariantViolated("w0(0) must be 1".into()));
        }
        if let Some(j) = tails.iter().position(|h| !h.coeffs()[0].is_zero()) {
            return Err(Error::InvariantViolated(format!("h{}(0) must be 0", j + 1)));
        }
        if tails.len() > 3 {
            return Err(Error::LogDegreeOverflow(tails.len()));
        }
        Ok(CanonicalBasis { family, discriminant, w0, tails })
    }

    pub fn family(&self) -> FamilyTag {
        self.family
    }

    /// Leading coefficient polynomial of the operator the basis solves.
    pub fn discriminant(&self) -> &Poly {
        &self.discriminant
    }

    pub fn with_family(mut self, family: FamilyTag) -> Self {
        self.family = family;
        self
    }

    pub fn rank(&self) -> usize {
        self.tails.len() + 1
    }

    pub fn order(&self) -> usize {
        self.tails.iter().map(PowerSeries::order).fold(self.w0.order(), usize::min)
    }

    pub fn w0(&self) -> &PowerSeries {
        &self.w0
    }

    /// `h_j` for `1 <= j < rank`.
    pub fn h(&self, j: usize) -> &PowerSeries {
        assert!(j >= 1 && j <= self.tails.len(), "h{j} is not part of a rank-{} basis", self.rank());
        &self.tails[j - 1]
    }

    pub fn truncate(&self, order: usize) -> Self {
        CanonicalBasis {
            family: self.family,
            discriminant: self.discriminant.clone(),
            w0: self.w0.truncate(order),
            tails: self.tails.iter().map(|h| h.truncate(order)).collect(),
        }
    }

    /// Replaces `h_{rank-1}`, keeping the lower tails.
    pub fn with_top_tail(&self, top: PowerSeries) -> Result<Self> {
        let mut tails = self.tails.clone();
        *tails.last_mut().ok_or_else(|| Error::InvalidArgument("rank-1 basis has no tail".into()))? = top;
        CanonicalBasis::new(self.family, self.discriminant.clone(), self.w0.clone(), tails)
    }

    pub fn solution(&self, j: usize) -> LogSeries {
        assert!(j < self.rank());
        let order = self.order();
        let parts = (0..=j)
            .map(|i| {
                let h = if j == i { &self.w0 } else { &self.tails[j - i - 1] };
                h.truncate(order).scale(&binomial(j, i))
            })
            .collect();
        LogSeries::new(parts).expect("degree at most 3")
    }

    pub fn solutions(&self) -> Vec<LogSeries> {
        (0..self.rank()).map(|j| self.solution(j)).collect()
    }
}

/// `L ↦ L + 1` on a log-series.
pub fn monodromy_shift(s: &LogSeries) -> LogSeries {
    s.shift_log()
}

type Eps = Vec<BigRational>;

fn eps_mul(a: &Eps, b: &Eps) -> Eps {
    let r = a.len();
    (0..r)
        .map(|k| (0..=k).fold(BigRational::zero(), |acc, i| acc + &a[i] * &b[k - i]))
        .collect()
}

fn eps_inv(a: &Eps) -> Eps {
    let r = a.len();
    let inv0 = a[0].recip();
    let mut x: Eps = vec![BigRational::zero(); r];
    x[0] = inv0.clone();
    for k in 1..r {
        let s = (1..=k).fold(BigRational::zero(), |acc, i| acc + &a[i] * &x[k - i]);
        x[k] = -s * &inv0;
    }
    x
}

/// `p(m + ε)` in `Q[ε]/(ε^r)`.
fn eps_eval(p: &Poly, m: i64, r: usize) -> Eps {
    let t = p.translate(&int(m));
    (0..r).map(|k| t.coeff(k)).collect()
}

fn describe_roots(p: &Poly) -> String {
    match p.rational_roots() {
        Some(roots) if !roots.is_empty() => roots
            .iter()
            .map(|(r, m)| if *m > 1 { format!("{r} (x{m})") } else { r.to_string() })
            .collect::<Vec<_>>()
            .join(", "),
        Some(_) => "no rational roots".into(),
        None => "not enumerated".into(),
    }
}

/// Canonical basis of `op` at φ = 0 up to `order`, by the ε-ring method.
///
/// The indicial polynomial must be `c·ε^rank`.
pub fn frobenius_basis(op: &ThetaOperator, rank: usize, order: usize) -> Result<CanonicalBasis> {
    if !(1..=4).contains(&rank) {
        return Err(Error::InvalidArgument(format!("rank {rank} outside 1..=4")));
    }
    let (op, _) = op.normalized();
    let indicial = op.indicial_polynomial();
    let mum = indicial.degree() == Some(rank) && indicial.valuation() == Some(rank);
    if !mum {
        return Err(Error::NotMaximallyUnipotent {
            polynomial: indicial.display_with("eps"),
            roots: describe_roots(&indicial),
        });
    }
    let polys = op.theta_polys();
    let mut a: Vec<Eps> = Vec::with_capacity(order + 1);
    let mut unit = vec![BigRational::zero(); rank];
    unit[0] = BigRational::one();
    a.push(unit);
    for n in 1..=order {
        let mut s: Eps = vec![BigRational::zero(); rank];
        for (j, pj) in polys.iter().enumerate().skip(1) {
            if j > n || pj.is_zero() {
                continue;
            }
            let term = eps_mul(&eps_eval(pj, (n - j) as i64, rank), &a[n - j]);
            for (si, ti) in s.iter_mut().zip(term) {
                *si += ti;
            }
        }
        let lead_inv = eps_inv(&eps_eval(&polys[0], n as i64, rank));
        let an: Eps = eps_mul(&lead_inv, &s).into_iter().map(|c| -c).collect();
        a.push(an);
    }
    // h_m = m! [ε^m] a(ε)
    let mut series: Vec<PowerSeries> = (0..rank)
        .scan(BigRational::one(), |factorial, m| {
            if m > 0 {
                *factorial *= int(m as i64);
            }
            Some(PowerSeries::from_fn(order, Var::Phi, |n| &a[n][m] * &*factorial))
        })
        .collect();
    let w0 = series.remove(0);
    CanonicalBasis::new(FamilyTag::Custom, op.leading().clone(), w0, series)
}

/// The explicit recursions of the Beukers–Peters family.
pub mod beukers {
    use super::*;
    use crate::family;
    use crate::rational::frac;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    /// `(n+1)³, -(34n³ + 51n² + 27n + 5), n³`.
    fn apery_band() -> Vec<Poly> {
        vec![p(&[1, 3, 3, 1]), p(&[-5, -27, -51, -34]), p(&[0, 0, 0, 1])]
    }

    /// The Apéry recursion with the given `x_0, x_1`.
    pub fn apery_recursion(x0: BigRational, x1: BigRational) -> HolonomicRecursion {
        HolonomicRecursion::homogeneous(apery_band(), vec![x0, x1])
    }

    pub fn c1_recursion(a: &[BigRational]) -> HolonomicRecursion {
        HolonomicRecursion {
            own: apery_band(),
            forcing: vec![Forcing {
                coeffs: vec![p(&[3, 6, 3]), p(&[-27, -102, -102]), p(&[0, 0, 3])],
                sequence: a.to_vec(),
            }],
            initial: vec![int(0), int(12), int(210)],
        }
    }

    pub fn c2_recursion(a: &[BigRational], c1: &[BigRational]) -> HolonomicRecursion {
        HolonomicRecursion {
            own: apery_band(),
            forcing: vec![
                Forcing {
                    coeffs: vec![p(&[6, 12, 6]), p(&[-54, -204, -204]), p(&[0, 0, 6])],
                    sequence: c1.to_vec(),
                },
                Forcing {
                    coeffs: vec![p(&[6, 6]), p(&[-102, -204]), p(&[0, 6])],
                    sequence: a.to_vec(),
                },
            ],
            initial: vec![int(0), int(0), int(144)],
        }
    }

    pub fn c3_recursion(a: &[BigRational], c1: &[BigRational], c2: &[BigRational]) -> HolonomicRecursion {
        HolonomicRecursion {
            own: vec![p(&[1, 4, 6, 4, 1]), p(&[-5, -32, -78, -85, -34]), p(&[0, 0, 0, 1, 1])],
            forcing: vec![
                Forcing {
                    coeffs: vec![p(&[12, 36, 36, 12]), p(&[-96, -468, -765, -408]), p(&[0, 0, 9, 12])],
                    sequence: c2.to_vec(),
                },
                Forcing {
                    coeffs: vec![p(&[36, 72, 36]), p(&[-468, -1530, -1224]), p(&[0, 18, 36])],
                    sequence: c1.to_vec(),
                },
                Forcing {
                    coeffs: vec![p(&[24, 24]), p(&[-510, -816]), p(&[6, 24])],
                    sequence: a.to_vec(),
                },
            ],
            initial: vec![int(0), int(-42), frac(-3033, 4)],
        }
    }

    /// `A_n` and `c_{j,n}` for `n <= order`.
    #[derive(Clone, Debug)]
    pub struct RecursionRoute {
        pub a: Vec<BigRational>,
        pub c1: Vec<BigRational>,
        pub c2: Vec<BigRational>,
        pub c3: Vec<BigRational>,
    }

    pub fn recursion_route(order: usize) -> Result<RecursionRoute> {
        let count = order + 1;
        let take = |mut v: Vec<BigRational>| {
            v.truncate(count);
            v
        };
        let a = run_recursion(&apery_recursion(int(1), int(5)), count.max(2))?;
        let c1 = run_recursion(&c1_recursion(&a), count.max(3))?;
        let c2 = run_recursion(&c2_recursion(&a, &c1), count.max(3))?;
        let c3 = run_recursion(&c3_recursion(&a, &c1, &c2), count.max(3))?;
        Ok(RecursionRoute { a: take(a), c1: take(c1), c2: take(c2), c3: take(c3) })
    }

    /// The rank-4 canonical basis of `D` assembled from the recursions.
    pub fn recursion_basis(order: usize) -> Result<CanonicalBasis> {
        let r = recursion_route(order)?;
        let s = |v: Vec<BigRational>| PowerSeries::new(v, Var::Phi);
        CanonicalBasis::new(
            FamilyTag::Beukers,
            family::beukers_d().leading().clone(),
            s(r.a),
            vec![s(r.c1), s(r.c2), s(r.c3)],
        )
    }

    /// The rank-4 canonical basis of `D` from the ε-ring engine.
    pub fn frobenius_route(order: usize) -> Result<CanonicalBasis> {
        Ok(frobenius_basis(&family::beukers_d(), 4, order)?.with_family(FamilyTag::Beukers))
    }
}
