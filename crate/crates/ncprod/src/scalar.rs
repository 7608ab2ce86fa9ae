//! Scalar fields: exact Gaussian rationals and tolerance-tagged complex
//! floats, plus rational parametrization of spheres.
//!
//! Every identity verified by this crate is polynomial in the entries of
//! an R-matrix, so with `GaussianRational` coefficients every check is
//! binary: a defect either is exactly zero or it is not. `ApproxComplex`
//! is the opt-in floating alternative for irrational parameters (cos θ for
//! θ not a Pythagorean angle); its equality is componentwise up to a
//! tolerance carried by the values themselves.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

/// The coefficient field interface: a commutative *-field with a
/// distinguished square root of −1 and an embedding of the rationals.
///
/// Implementations must have value semantics (`Clone` + `Send` + `Sync`),
/// so every check in the crate can be evaluated in parallel with no shared
/// mutable state.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    /// The imaginary unit i.
    fn i() -> Self;
    /// Complex conjugate.
    fn conj(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// Whether the value is (tolerance-aware, where applicable) zero.
    fn is_zero(&self) -> bool;
    /// Embed an exact rational number.
    fn from_rational(r: &BigRational) -> Self;
    /// Embed a small rational p/q. Panics if q = 0.
    fn rat(p: i64, q: i64) -> Self {
        Self::from_rational(&BigRational::new(BigInt::from(p), BigInt::from(q)))
    }
    /// Embed a small integer.
    fn int(n: i64) -> Self {
        Self::rat(n, 1)
    }
    /// Approximate magnitude |z| as a float, for pivot selection and for
    /// residual summaries in reports. Exactness of computations never
    /// depends on this value.
    fn magnitude(&self) -> f64;
    /// JSON encoding: a bare "p/q" string when the imaginary part is zero,
    /// otherwise {"re": "p/q", "im": "p/q"} (floats use plain numbers).
    fn to_json(&self) -> serde_json::Value;
    /// Inverse of [`Scalar::to_json`]; accepts both encodings.
    fn from_json(v: &serde_json::Value) -> Result<Self, ScalarParseError>;
}

/// Errors from parsing scalar literals.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarParseError {
    #[error("malformed rational literal {0:?} (expected \"p/q\" or integer)")]
    BadRational(String),
    #[error("zero denominator in rational literal {0:?}")]
    ZeroDenominator(String),
    #[error("malformed scalar value: {0}")]
    BadValue(String),
}

/// Parse "p/q", "p", or a JSON integer into an exact rational.
pub fn parse_rational(v: &serde_json::Value) -> Result<BigRational, ScalarParseError> {
    match v {
        serde_json::Value::String(s) => parse_rational_str(s),
        serde_json::Value::Number(n) => {
            if let Some(k) = n.as_i64() {
                Ok(BigRational::from_integer(BigInt::from(k)))
            } else {
                Err(ScalarParseError::BadRational(n.to_string()))
            }
        }
        other => Err(ScalarParseError::BadValue(format!(
            "expected rational, got {other}"
        ))),
    }
}

/// Parse a "p/q" or "p" string into an exact rational.
pub fn parse_rational_str(s: &str) -> Result<BigRational, ScalarParseError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = num
        .parse()
        .map_err(|_| ScalarParseError::BadRational(s.to_string()))?;
    let q: BigInt = den
        .parse()
        .map_err(|_| ScalarParseError::BadRational(s.to_string()))?;
    if q.is_zero() {
        return Err(ScalarParseError::ZeroDenominator(s.to_string()));
    }
    Ok(BigRational::new(p, q))
}

/// Format a rational as "p/q" (or "p" when the denominator is one).
pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An exact Gaussian rational a + b i with arbitrary-precision rational
/// components. The default scalar of the crate.
///
/// `num_rational::BigRational` keeps denominators positive and
/// gcd-reduced, so the normalization invariants hold by construction.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_parts(re_p: i64, re_q: i64, im_p: i64, im_q: i64) -> Self {
        GaussianRational {
            re: BigRational::new(BigInt::from(re_p), BigInt::from(re_q)),
            im: BigRational::new(BigInt::from(im_p), BigInt::from(im_q)),
        }
    }

    /// Squared modulus z z̄ as a rational (always real).
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Whether the imaginary part vanishes.
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GaussianRational::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GaussianRational::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        GaussianRational::new(re, im)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", rational_string(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}i", rational_string(&self.im))
        } else if self.im.is_negative() {
            write!(
                f,
                "{}-{}i",
                rational_string(&self.re),
                rational_string(&-self.im.clone())
            )
        } else {
            write!(
                f,
                "{}+{}i",
                rational_string(&self.re),
                rational_string(&self.im)
            )
        }
    }
}

impl Scalar for GaussianRational {
    fn zero() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::zero())
    }

    fn one() -> Self {
        GaussianRational::new(BigRational::one(), BigRational::zero())
    }

    fn i() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::one())
    }

    fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(GaussianRational::new(c.re / &n, c.im / &n))
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn from_rational(r: &BigRational) -> Self {
        GaussianRational::new(r.clone(), BigRational::zero())
    }

    fn magnitude(&self) -> f64 {
        let re = self.re.to_f64().unwrap_or(f64::NAN);
        let im = self.im.to_f64().unwrap_or(f64::NAN);
        (re * re + im * im).sqrt()
    }

    fn to_json(&self) -> serde_json::Value {
        if self.im.is_zero() {
            serde_json::Value::String(rational_string(&self.re))
        } else {
            serde_json::json!({
                "re": rational_string(&self.re),
                "im": rational_string(&self.im),
            })
        }
    }

    fn from_json(v: &serde_json::Value) -> Result<Self, ScalarParseError> {
        match v {
            serde_json::Value::Object(map) => {
                let re = map
                    .get("re")
                    .map(parse_rational)
                    .transpose()?
                    .unwrap_or_else(BigRational::zero);
                let im = map
                    .get("im")
                    .map(parse_rational)
                    .transpose()?
                    .unwrap_or_else(BigRational::zero);
                Ok(GaussianRational::new(re, im))
            }
            other => Ok(GaussianRational::from_rational(&parse_rational(other)?)),
        }
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        GaussianRational::from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// Default tolerance for [`ApproxComplex`] comparisons.
pub const DEFAULT_TOL: f64 = 1e-12;

/// A complex double with an equality tolerance carried along.
///
/// Equality means componentwise |Δ| ≤ tol, where the tolerance of a
/// comparison (and of an arithmetic result) is the larger of the operand
/// tolerances. This deliberately non-transitive equality is what makes the
/// axiom checks meaningful in float mode.
#[derive(Clone, Copy, Debug)]
pub struct ApproxComplex {
    pub re: f64,
    pub im: f64,
    pub tol: f64,
}

impl ApproxComplex {
    pub fn new(re: f64, im: f64) -> Self {
        ApproxComplex {
            re,
            im,
            tol: DEFAULT_TOL,
        }
    }

    pub fn with_tol(re: f64, im: f64, tol: f64) -> Self {
        assert!(tol > 0.0, "tolerance must be positive");
        ApproxComplex { re, im, tol }
    }

    fn join_tol(&self, other: &Self) -> f64 {
        self.tol.max(other.tol)
    }
}

impl PartialEq for ApproxComplex {
    fn eq(&self, other: &Self) -> bool {
        let tol = self.join_tol(other);
        (self.re - other.re).abs() <= tol && (self.im - other.im).abs() <= tol
    }
}

impl Add for ApproxComplex {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        ApproxComplex {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
            tol: self.join_tol(&rhs),
        }
    }
}

impl Sub for ApproxComplex {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        ApproxComplex {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
            tol: self.join_tol(&rhs),
        }
    }
}

impl Mul for ApproxComplex {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        ApproxComplex {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
            tol: self.join_tol(&rhs),
        }
    }
}

impl Neg for ApproxComplex {
    type Output = Self;
    fn neg(self) -> Self {
        ApproxComplex {
            re: -self.re,
            im: -self.im,
            tol: self.tol,
        }
    }
}

impl fmt::Display for ApproxComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0.0 {
            write!(f, "{}", self.re)
        } else if self.im < 0.0 {
            write!(f, "{}-{}i", self.re, -self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Scalar for ApproxComplex {
    fn zero() -> Self {
        ApproxComplex::new(0.0, 0.0)
    }

    fn one() -> Self {
        ApproxComplex::new(1.0, 0.0)
    }

    fn i() -> Self {
        ApproxComplex::new(0.0, 1.0)
    }

    fn conj(&self) -> Self {
        ApproxComplex {
            re: self.re,
            im: -self.im,
            tol: self.tol,
        }
    }

    fn inv(&self) -> Option<Self> {
        let n = self.re * self.re + self.im * self.im;
        if n.sqrt() <= self.tol {
            return None;
        }
        Some(ApproxComplex {
            re: self.re / n,
            im: -self.im / n,
            tol: self.tol,
        })
    }

    fn is_zero(&self) -> bool {
        self.re.abs() <= self.tol && self.im.abs() <= self.tol
    }

    fn from_rational(r: &BigRational) -> Self {
        ApproxComplex::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn magnitude(&self) -> f64 {
        (self.re * self.re + self.im * self.im).sqrt()
    }

    fn to_json(&self) -> serde_json::Value {
        if self.im == 0.0 {
            serde_json::json!(self.re)
        } else {
            serde_json::json!({ "re": self.re, "im": self.im })
        }
    }

    fn from_json(v: &serde_json::Value) -> Result<Self, ScalarParseError> {
        fn part(v: &serde_json::Value) -> Result<f64, ScalarParseError> {
            match v {
                serde_json::Value::Number(n) => n
                    .as_f64()
                    .ok_or_else(|| ScalarParseError::BadValue(n.to_string())),
                serde_json::Value::String(s) => {
                    let r = parse_rational_str(s)?;
                    Ok(r.to_f64().unwrap_or(f64::NAN))
                }
                other => Err(ScalarParseError::BadValue(other.to_string())),
            }
        }
        match v {
            serde_json::Value::Object(map) => {
                let re = map.get("re").map(part).transpose()?.unwrap_or(0.0);
                let im = map.get("im").map(part).transpose()?.unwrap_or(0.0);
                Ok(ApproxComplex::new(re, im))
            }
            other => Ok(ApproxComplex::new(part(other)?, 0.0)),
        }
    }
}

/// Sphere kinds accepted by [`sphere_point`]: the unit circle S¹ ⊂ ℝ²,
/// the sphere S² ⊂ ℝ³, and the sphere S³ ⊂ ℝ⁴.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SphereKind {
    Circle,
    Sphere2,
    Sphere3,
}

impl SphereKind {
    /// Ambient dimension d with S^{d−1} ⊂ ℝ^d.
    pub fn ambient_dim(self) -> usize {
        match self {
            SphereKind::Circle => 2,
            SphereKind::Sphere2 => 3,
            SphereKind::Sphere3 => 4,
        }
    }
}

/// Errors from [`sphere_point`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpherePointError {
    #[error("seed must not be the zero vector")]
    ZeroSeed,
    #[error("seed has {got} entries, expected {expected}")]
    WrongLength { expected: usize, got: usize },
}

/// Whether a nonnegative rational is the square of a rational; returns the
/// exact square root when it is.
fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer();
    let den = r.denom();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

/// Produce a rational point of squared norm exactly 1 on the chosen
/// sphere, deterministically from a nonzero rational seed.
///
/// If ‖seed‖² is a perfect rational square the seed is scaled by
/// 1/‖seed‖. Otherwise the first d−1 seed coordinates t feed the
/// stereographic parametrization u = (2t, ‖t‖²−1)/(‖t‖²+1), which is a
/// rational point of S^{d−1} for every rational t.
pub fn sphere_point(
    kind: SphereKind,
    seed: &[BigRational],
) -> Result<Vec<BigRational>, SpherePointError> {
    let d = kind.ambient_dim();
    if seed.len() != d {
        return Err(SpherePointError::WrongLength {
            expected: d,
            got: seed.len(),
        });
    }
    if seed.iter().all(|s| s.is_zero()) {
        return Err(SpherePointError::ZeroSeed);
    }
    let norm2: BigRational = seed.iter().map(|s| s * s).sum();
    if let Some(norm) = rational_sqrt(&norm2) {
        return Ok(seed.iter().map(|s| s / &norm).collect());
    }
    let t = &seed[..d - 1];
    let t2: BigRational = t.iter().map(|s| s * s).sum();
    let denom = &t2 + BigRational::one();
    let mut out: Vec<BigRational> = t
        .iter()
        .map(|ti| BigRational::from_integer(BigInt::from(2)) * ti / &denom)
        .collect();
    out.push((&t2 - BigRational::one()) / &denom);
    Ok(out)
}
