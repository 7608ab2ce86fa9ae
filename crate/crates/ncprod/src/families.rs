//! Named families of R-matrices of the ansatz form
//! R^{λα}_{βμ} = A_{λμ} B_{αβ} + i C_{λμ} D_{αβ}, together with the exact
//! validation of the conditions the ansatz matrices must satisfy:
//!
//! * A, B symmetric and real; C, D antisymmetric and real;
//! * [A, C] = 0 and [B, D] = 0;
//! * A²⊗B² + C²⊗D² = 𝟙⊗𝟙 (the unit-norm coupling, which for each family
//!   reduces to a scalar constraint on its parameters).
//!
//! Families are described by a JSON [`FamilySpec`] with rational
//! parameters; every constraint is checked exactly before the R-matrix is
//! constructed.  The 8-dimensional kinds are built from the quaternionic
//! J^±-matrices and force block sizes (4, 4); `theta4` forces (2, 2).

use crate::linalg::Mat;
use crate::quaternion::{j_of_vector, Sign};
use crate::rmatrix::{RMatrix, RMatrixError};
use crate::scalar::{parse_rational, rational_string, Scalar};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FamilyError {
    #[error("missing parameter `{0}`")]
    MissingParam(String),
    #[error("parameter `{name}`: {reason}")]
    BadParam { name: String, reason: String },
    #[error("`{0}` must be a unit vector (Σ components² = 1)")]
    NotUnitVector(String),
    #[error("`{0}` and `{1}` must be orthogonal")]
    NotOrthogonal(String, String),
    #[error("constraint {constraint} violated: left-hand side is {value}")]
    ConstraintViolated { constraint: String, value: String },
    #[error("ansatz conditions failed: {}", .0.join(", "))]
    AnsatzViolated(Vec<String>),
    #[error("kind `{kind}` has block sizes ({expected_n1}, {expected_n2}); got ({got_n1}, {got_n2})")]
    BadDimensions {
        kind: FamilyKind,
        expected_n1: usize,
        expected_n2: usize,
        got_n1: usize,
        got_n2: usize,
    },
    #[error(transparent)]
    RMatrix(#[from] RMatrixError),
}

/// The named constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Classical,
    Theta4,
    Toric8,
    Quaternionic,
    Stratum1,
    Stratum2,
    Abcd,
}

impl std::fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            FamilyKind::Classical => "classical",
            FamilyKind::Theta4 => "theta4",
            FamilyKind::Toric8 => "toric8",
            FamilyKind::Quaternionic => "quaternionic",
            FamilyKind::Stratum1 => "stratum1",
            FamilyKind::Stratum2 => "stratum2",
            FamilyKind::Abcd => "abcd",
        };
        f.write_str(name)
    }
}

/// Which scalar arithmetic a run should use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exact,
    Float,
}

fn default_sign() -> Sign {
    Sign::Plus
}

/// JSON description of a family member: its kind, the ± choice where the
/// kind comes in a pair, rational parameters by name, and (for kinds with
/// free dimensions) the block sizes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    #[serde(default = "default_sign")]
    pub sign: Sign,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n1: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n2: Option<usize>,
    #[serde(default, skip_serializing_if = "serde_json::Map::is_empty")]
    pub params: serde_json::Map<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
}

impl FamilySpec {
    pub fn from_value(value: serde_json::Value) -> Result<Self, serde_json::Error> {
        serde_json::from_value(value)
    }

    pub fn mode(&self) -> Mode {
        self.mode.unwrap_or_default()
    }
}

fn get_param<'a>(
    params: &'a serde_json::Map<String, serde_json::Value>,
    name: &str,
) -> Result<&'a serde_json::Value, FamilyError> {
    params
        .get(name)
        .ok_or_else(|| FamilyError::MissingParam(name.to_string()))
}

fn rational_param(
    params: &serde_json::Map<String, serde_json::Value>,
    name: &str,
) -> Result<BigRational, FamilyError> {
    parse_rational(get_param(params, name)?).map_err(|e| FamilyError::BadParam {
        name: name.to_string(),
        reason: e.to_string(),
    })
}

fn vector3_param(
    params: &serde_json::Map<String, serde_json::Value>,
    name: &str,
) -> Result<Vec<BigRational>, FamilyError> {
    let value = get_param(params, name)?;
    let arr = value.as_array().ok_or_else(|| FamilyError::BadParam {
        name: name.to_string(),
        reason: "expected an array of three rationals".to_string(),
    })?;
    if arr.len() != 3 {
        return Err(FamilyError::BadParam {
            name: name.to_string(),
            reason: format!("expected 3 components, got {}", arr.len()),
        });
    }
    arr.iter()
        .map(|v| {
            parse_rational(v).map_err(|e| FamilyError::BadParam {
                name: name.to_string(),
                reason: e.to_string(),
            })
        })
        .collect()
}

fn matrix_param(
    params: &serde_json::Map<String, serde_json::Value>,
    name: &str,
) -> Result<Vec<Vec<BigRational>>, FamilyError> {
    let value = get_param(params, name)?;
    let bad = |reason: &str| FamilyError::BadParam {
        name: name.to_string(),
        reason: reason.to_string(),
    };
    let rows = value
        .as_array()
        .ok_or_else(|| bad("expected an array of rows"))?;
    if rows.is_empty() {
        return Err(bad("matrix must be nonempty"));
    }
    let n = rows.len();
    let mut out = Vec::with_capacity(n);
    for row in rows {
        let row = row.as_array().ok_or_else(|| bad("expected an array row"))?;
        if row.len() != n {
            return Err(bad("matrix must be square"));
        }
        out.push(
            row.iter()
                .map(|v| {
                    parse_rational(v).map_err(|e| FamilyError::BadParam {
                        name: name.to_string(),
                        reason: e.to_string(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    Ok(out)
}

fn dot(u: &[BigRational], v: &[BigRational]) -> BigRational {
    u.iter()
        .zip(v)
        .map(|(a, b)| a * b)
        .fold(BigRational::zero(), |acc, x| acc + x)
}

fn norm_sqr(v: &[BigRational]) -> BigRational {
    dot(v, v)
}

fn require_unit(name: &str, v: &[BigRational]) -> Result<(), FamilyError> {
    if norm_sqr(v) == BigRational::one() {
        Ok(())
    } else {
        Err(FamilyError::NotUnitVector(name.to_string()))
    }
}

fn require_constraint(constraint: &str, lhs: BigRational) -> Result<(), FamilyError> {
    if lhs == BigRational::one() {
        Ok(())
    } else {
        Err(FamilyError::ConstraintViolated {
            constraint: constraint.to_string(),
            value: rational_string(&lhs),
        })
    }
}

fn embed_matrix<S: Scalar>(m: &[Vec<BigRational>]) -> Mat<S> {
    Mat::from_fn(m.len(), m[0].len(), |i, j| S::from_rational(&m[i][j]))
}

/// Exact validation of the ansatz conditions for (A, B, C, D).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnsatzReport {
    pub a_symmetric_real: bool,
    pub b_symmetric_real: bool,
    pub c_antisymmetric_real: bool,
    pub d_antisymmetric_real: bool,
    pub ac_commute: bool,
    pub bd_commute: bool,
    pub unit_norm_coupling: bool,
    pub all_pass: bool,
}

impl AnsatzReport {
    pub fn failing(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.a_symmetric_real {
            out.push("a_symmetric_real");
        }
        if !self.b_symmetric_real {
            out.push("b_symmetric_real");
        }
        if !self.c_antisymmetric_real {
            out.push("c_antisymmetric_real");
        }
        if !self.d_antisymmetric_real {
            out.push("d_antisymmetric_real");
        }
        if !self.ac_commute {
            out.push("ac_commute");
        }
        if !self.bd_commute {
            out.push("bd_commute");
        }
        if !self.unit_norm_coupling {
            out.push("unit_norm_coupling");
        }
        out
    }
}

pub fn validate_abcd<S: Scalar>(a: &Mat<S>, b: &Mat<S>, c: &Mat<S>, d: &Mat<S>) -> AnsatzReport {
    let a_symmetric_real = a.is_symmetric() && a.is_real();
    let b_symmetric_real = b.is_symmetric() && b.is_real();
    let c_antisymmetric_real = c.is_antisymmetric() && c.is_real();
    let d_antisymmetric_real = d.is_antisymmetric() && d.is_real();
    let ac_commute = a.mul(c) == c.mul(a);
    let bd_commute = b.mul(d) == d.mul(b);

    // A²⊗B² + C²⊗D² = 𝟙⊗𝟙, checked entrywise on the tensor factors.
    let a2 = a.mul(a);
    let b2 = b.mul(b);
    let c2 = c.mul(c);
    let d2 = d.mul(d);
    let n1 = a.rows;
    let n2 = b.rows;
    let mut unit_norm_coupling = true;
    'outer: for l in 0..n1 {
        for m in 0..n1 {
            for al in 0..n2 {
                for be in 0..n2 {
                    let lhs = a2.at(l, m).clone() * b2.at(al, be).clone()
                        + c2.at(l, m).clone() * d2.at(al, be).clone();
                    let rhs = if l == m && al == be {
                        S::one()
                    } else {
                        S::zero()
                    };
                    if lhs != rhs {
                        unit_norm_coupling = false;
                        break 'outer;
                    }
                }
            }
        }
    }

    let all_pass = a_symmetric_real
        && b_symmetric_real
        && c_antisymmetric_real
        && d_antisymmetric_real
        && ac_commute
        && bd_commute
        && unit_norm_coupling;
    AnsatzReport {
        a_symmetric_real,
        b_symmetric_real,
        c_antisymmetric_real,
        d_antisymmetric_real,
        ac_commute,
        bd_commute,
        unit_norm_coupling,
        all_pass,
    }
}

fn forced_dims(kind: FamilyKind) -> Option<(usize, usize)> {
    match kind {
        FamilyKind::Theta4 => Some((2, 2)),
        FamilyKind::Toric8
        | FamilyKind::Quaternionic
        | FamilyKind::Stratum1
        | FamilyKind::Stratum2 => Some((4, 4)),
        FamilyKind::Classical | FamilyKind::Abcd => None,
    }
}

fn check_forced_dims(spec: &FamilySpec) -> Result<(), FamilyError> {
    if let Some((n1, n2)) = forced_dims(spec.kind) {
        let got_n1 = spec.n1.unwrap_or(n1);
        let got_n2 = spec.n2.unwrap_or(n2);
        if (got_n1, got_n2) != (n1, n2) {
            return Err(FamilyError::BadDimensions {
                kind: spec.kind,
                expected_n1: n1,
                expected_n2: n2,
                got_n1,
                got_n2,
            });
        }
    }
    Ok(())
}

/// Build the R-matrix a [`FamilySpec`] describes, validating every
/// constraint exactly before construction.
pub fn make_family<S: Scalar>(spec: &FamilySpec) -> Result<RMatrix<S>, FamilyError> {
    check_forced_dims(spec)?;
    let params = &spec.params;
    let sign = spec.sign;

    let (a, b, c, d): (Mat<S>, Mat<S>, Mat<S>, Mat<S>) = match spec.kind {
        FamilyKind::Classical => {
            let n1 = spec.n1.ok_or_else(|| FamilyError::MissingParam("n1".into()))?;
            let n2 = spec.n2.ok_or_else(|| FamilyError::MissingParam("n2".into()))?;
            if n1 == 0 || n2 == 0 {
                return Err(FamilyError::RMatrix(RMatrixError::EmptyBlock));
            }
            (
                Mat::identity(n1),
                Mat::identity(n2),
                Mat::zeros(n1, n1),
                Mat::zeros(n2, n2),
            )
        }
        FamilyKind::Theta4 => {
            let u = rational_param(params, "u")?;
            let v = rational_param(params, "v")?;
            require_constraint("u² + v² = 1", &u * &u + &v * &v)?;
            let a = Mat::identity(2).scale(&S::from_rational(&u));
            let b = Mat::identity(2);
            let c = Mat::<S>::from_int_rows(&[vec![0, -1], vec![1, 0]])
                .scale(&S::from_rational(&v));
            let d = Mat::from_int_rows(&[vec![0, 1], vec![-1, 0]]);
            (a, b, c, d)
        }
        FamilyKind::Toric8 => {
            let u = rational_param(params, "u")?;
            let v = rational_param(params, "v")?;
            let n_hat = vector3_param(params, "n_hat")?;
            require_unit("n_hat", &n_hat)?;
            require_constraint("u² + v² = 1", &u * &u + &v * &v)?;
            let a = Mat::identity(4).scale(&S::from_rational(&u));
            let b = Mat::identity(4);
            let c = j_of_vector::<S>(sign, &n_hat);
            let d = j_of_vector::<S>(sign.flip(), &n_hat).scale(&S::from_rational(&v));
            (a, b, c, d)
        }
        FamilyKind::Quaternionic => {
            let u0 = rational_param(params, "u0")?;
            let u1 = rational_param(params, "u1")?;
            let u2 = rational_param(params, "u2")?;
            let n1_hat = vector3_param(params, "n1_hat")?;
            let n2_hat = vector3_param(params, "n2_hat")?;
            require_unit("n1_hat", &n1_hat)?;
            require_unit("n2_hat", &n2_hat)?;
            if !dot(&n1_hat, &n2_hat).is_zero() {
                return Err(FamilyError::NotOrthogonal(
                    "n1_hat".into(),
                    "n2_hat".into(),
                ));
            }
            require_constraint(
                "(u⁰)² + (u¹)² + (u²)² = 1",
                &u0 * &u0 + &u1 * &u1 + &u2 * &u2,
            )?;
            let u_vec: Vec<BigRational> = (0..3)
                .map(|k| &u1 * &n1_hat[k] + &u2 * &n2_hat[k])
                .collect();
            let a = Mat::identity(4).scale(&S::from_rational(&u0));
            let b = Mat::identity(4);
            let c = j_of_vector::<S>(sign, &n1_hat);
            let d = j_of_vector::<S>(sign, &u_vec);
            (a, b, c, d)
        }
        FamilyKind::Stratum1 => {
            let u = rational_param(params, "u")?;
            let n_hat = vector3_param(params, "n_hat")?;
            let v_vec = vector3_param(params, "v_vec")?;
            let w_vec = vector3_param(params, "w_vec")?;
            require_unit("n_hat", &n_hat)?;
            require_constraint(
                "‖v‖²‖w‖² + u² = 1",
                norm_sqr(&v_vec) * norm_sqr(&w_vec) + &u * &u,
            )?;
            let a = j_of_vector::<S>(sign, &n_hat).mul(&j_of_vector(sign.flip(), &v_vec));
            let b = j_of_vector::<S>(sign.flip(), &n_hat).mul(&j_of_vector(sign, &w_vec));
            let c = j_of_vector::<S>(sign, &n_hat).scale(&S::from_rational(&u));
            let d = j_of_vector::<S>(sign.flip(), &n_hat);
            (a, b, c, d)
        }
        FamilyKind::Stratum2 => {
            let u1 = rational_param(params, "u1")?;
            let u2 = rational_param(params, "u2")?;
            let t = rational_param(params, "t")?;
            let n1_hat = vector3_param(params, "n1_hat")?;
            let n2_hat = vector3_param(params, "n2_hat")?;
            let v_vec = vector3_param(params, "v_vec")?;
            let w_vec = vector3_param(params, "w_vec")?;
            require_unit("n1_hat", &n1_hat)?;
            require_unit("n2_hat", &n2_hat)?;
            if !dot(&n1_hat, &n2_hat).is_zero() {
                return Err(FamilyError::NotOrthogonal(
                    "n1_hat".into(),
                    "n2_hat".into(),
                ));
            }
            let u_vec: Vec<BigRational> = (0..3)
                .map(|k| &u1 * &n1_hat[k] + &u2 * &n2_hat[k])
                .collect();
            require_constraint(
                "‖u‖²(t² + ‖w‖²‖v‖²) = 1",
                norm_sqr(&u_vec) * (&t * &t + norm_sqr(&w_vec) * norm_sqr(&v_vec)),
            )?;
            let a = j_of_vector::<S>(sign, &n1_hat).mul(&j_of_vector(sign.flip(), &v_vec));
            let b = j_of_vector::<S>(sign, &u_vec).mul(&j_of_vector(sign.flip(), &w_vec));
            let c = j_of_vector::<S>(sign, &n1_hat);
            let d = j_of_vector::<S>(sign, &u_vec).scale(&S::from_rational(&t));
            (a, b, c, d)
        }
        FamilyKind::Abcd => {
            let a = embed_matrix::<S>(&matrix_param(params, "a")?);
            let b = embed_matrix::<S>(&matrix_param(params, "b")?);
            let c = embed_matrix::<S>(&matrix_param(params, "c")?);
            let d = embed_matrix::<S>(&matrix_param(params, "d")?);
            if let (Some(n1), n) = (spec.n1, a.rows) {
                if n1 != n {
                    return Err(FamilyError::BadDimensions {
                        kind: spec.kind,
                        expected_n1: n,
                        expected_n2: b.rows,
                        got_n1: n1,
                        got_n2: spec.n2.unwrap_or(b.rows),
                    });
                }
            }
            (a, b, c, d)
        }
    };

    let report = validate_abcd(&a, &b, &c, &d);
    if !report.all_pass {
        return Err(FamilyError::AnsatzViolated(
            report.failing().iter().map(|s| s.to_string()).collect(),
        ));
    }
    Ok(RMatrix::from_abcd(&a, &b, &c, &d)?)
}

/// A catalog entry: what the kind is, its parameter constraint, and a
/// worked example spec that validates.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyTemplate {
    pub kind: FamilyKind,
    pub description: String,
    pub constraint: String,
    pub example: FamilySpec,
}

/// The built-in catalog, one template per kind.
pub fn family_catalog() -> Vec<FamilyTemplate> {
    let spec = |v: serde_json::Value| FamilySpec::from_value(v).expect("valid template");
    vec![
        FamilyTemplate {
            kind: FamilyKind::Classical,
            description: "commuting coordinates: R is the flip δ^λ_μ δ^α_β".into(),
            constraint: "none (any block sizes)".into(),
            example: spec(serde_json::json!({"kind": "classical", "n1": 2, "n2": 2})),
        },
        FamilyTemplate {
            kind: FamilyKind::Theta4,
            description: "4-dimensional deformation R = u δδ + i v C⊗D on ℝ²×ℝ²".into(),
            constraint: "u² + v² = 1".into(),
            example: spec(serde_json::json!({
                "kind": "theta4",
                "params": {"u": "3/5", "v": "4/5"},
            })),
        },
        FamilyTemplate {
            kind: FamilyKind::Toric8,
            description: "8-dimensional toric family R^± = u δδ + i v J^±_n̂ ⊗ J^∓_n̂".into(),
            constraint: "u² + v² = 1, n̂ a unit 3-vector".into(),
            example: spec(serde_json::json!({
                "kind": "toric8",
                "sign": "+",
                "params": {"u": "3/5", "v": "4/5", "n_hat": [0, 0, 1]},
            })),
        },
        FamilyTemplate {
            kind: FamilyKind::Quaternionic,
            description:
                "quaternionic family R^± = u⁰ δδ + i J^±_{n̂₁} ⊗ J^±_{u}, u = u¹n̂₁ + u²n̂₂"
                    .into(),
            constraint: "(u⁰)² + (u¹)² + (u²)² = 1, n̂₁ ⊥ n̂₂ unit 3-vectors".into(),
            example: spec(serde_json::json!({
                "kind": "quaternionic",
                "sign": "+",
                "params": {
                    "u0": "1/3", "u1": "2/3", "u2": "2/3",
                    "n1_hat": [1, 0, 0], "n2_hat": [0, 1, 0],
                },
            })),
        },
        FamilyTemplate {
            kind: FamilyKind::Stratum1,
            description:
                "disconnected family A = J^±_n̂ J^∓_v, B = J^∓_n̂ J^±_w, C = u J^±_n̂, D = J^∓_n̂"
                    .into(),
            constraint: "‖v‖²‖w‖² + u² = 1, n̂ a unit 3-vector".into(),
            example: spec(serde_json::json!({
                "kind": "stratum1",
                "sign": "+",
                "params": {
                    "u": "3/5", "n_hat": [0, 0, 1],
                    "v_vec": ["4/5", 0, 0], "w_vec": [1, 0, 0],
                },
            })),
        },
        FamilyTemplate {
            kind: FamilyKind::Stratum2,
            description:
                "disconnected family A = J^±_{n̂₁} J^∓_v, B = J^±_u J^∓_w, C = J^±_{n̂₁}, D = t J^±_u"
                    .into(),
            constraint: "‖u‖²(t² + ‖w‖²‖v‖²) = 1, u = u¹n̂₁ + u²n̂₂, n̂₁ ⊥ n̂₂ unit".into(),
            example: spec(serde_json::json!({
                "kind": "stratum2",
                "sign": "+",
                "params": {
                    "u1": "3/5", "u2": "4/5", "t": "3/5",
                    "n1_hat": [1, 0, 0], "n2_hat": [0, 1, 0],
                    "v_vec": ["4/5", 0, 0], "w_vec": [1, 0, 0],
                },
            })),
        },
        FamilyTemplate {
            kind: FamilyKind::Abcd,
            description: "explicit ansatz matrices A, B, C, D given entrywise".into(),
            constraint: "symmetry/antisymmetry, commutation, A²⊗B² + C²⊗D² = 𝟙⊗𝟙".into(),
            example: spec(serde_json::json!({
                "kind": "abcd",
                "params": {
                    "a": [["3/5", 0], [0, "3/5"]],
                    "b": [[1, 0], [0, 1]],
                    "c": [[0, "-4/5"], ["4/5", 0]],
                    "d": [[0, 1], [-1, 0]],
                },
            })),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::j_matrix;
    use crate::rmatrix::check_axioms;
    use crate::scalar::GaussianRational;

    type Q = GaussianRational;

    fn build(json: serde_json::Value) -> Result<RMatrix<Q>, FamilyError> {
        make_family(&FamilySpec::from_value(json).unwrap())
    }

    #[test]
    fn theta4_from_spec_matches_direct_construction() {
        let r = build(serde_json::json!({
            "kind": "theta4",
            "params": {"u": "3/5", "v": "4/5"},
        }))
        .unwrap();
        assert_eq!(r.get(0, 0, 0, 0), &Q::rat(3, 5));
        assert_eq!(r.get(0, 0, 1, 1), &-(Q::i() * Q::rat(4, 5)));
        assert_eq!(r.nonzero_count(), 8);
    }

    #[test]
    fn constraint_violations_are_rejected_before_construction() {
        for kind in ["theta4", "toric8"] {
            let mut params = serde_json::json!({"u": 1, "v": 1});
            if kind == "toric8" {
                params["n_hat"] = serde_json::json!([0, 0, 1]);
            }
            let err = build(serde_json::json!({"kind": kind, "params": params})).unwrap_err();
            match err {
                FamilyError::ConstraintViolated { constraint, value } => {
                    assert_eq!(constraint, "u² + v² = 1");
                    assert_eq!(value, "2");
                }
                other => panic!("expected ConstraintViolated, got {other:?}"),
            }
        }
    }

    #[test]
    fn unit_and_orthogonality_requirements() {
        let err = build(serde_json::json!({
            "kind": "quaternionic",
            "params": {
                "u0": "1/3", "u1": "2/3", "u2": "2/3",
                "n1_hat": [1, 1, 0], "n2_hat": [0, 0, 1],
            },
        }))
        .unwrap_err();
        assert_eq!(err, FamilyError::NotUnitVector("n1_hat".into()));

        let err = build(serde_json::json!({
            "kind": "quaternionic",
            "params": {
                "u0": "1/3", "u1": "2/3", "u2": "2/3",
                "n1_hat": [1, 0, 0], "n2_hat": [1, 0, 0],
            },
        }))
        .unwrap_err();
        assert_eq!(
            err,
            FamilyError::NotOrthogonal("n1_hat".into(), "n2_hat".into())
        );
    }

    #[test]
    fn quaternionic_at_the_pole_is_classical() {
        let r = build(serde_json::json!({
            "kind": "quaternionic",
            "sign": "+",
            "params": {
                "u0": 1, "u1": 0, "u2": 0,
                "n1_hat": [1, 0, 0], "n2_hat": [0, 1, 0],
            },
        }))
        .unwrap();
        assert_eq!(r, RMatrix::classical(4, 4));
    }

    #[test]
    fn toric8_sign_pair_is_related_by_block_exchange() {
        let plus_flipped = build(serde_json::json!({
            "kind": "toric8", "sign": "+",
            "params": {"u": "3/5", "v": "-4/5", "n_hat": [0, 0, 1]},
        }))
        .unwrap();
        let minus = build(serde_json::json!({
            "kind": "toric8", "sign": "-",
            "params": {"u": "3/5", "v": "4/5", "n_hat": [0, 0, 1]},
        }))
        .unwrap();
        assert_eq!(plus_flipped.exchange_blocks(), minus);
        // And the matrices themselves differ: the pair is not trivially equal.
        assert_ne!(plus_flipped, minus);
    }

    #[test]
    fn every_catalog_example_builds_and_passes_the_axioms() {
        for template in family_catalog() {
            let r: RMatrix<Q> = make_family(&template.example)
                .unwrap_or_else(|e| panic!("{} example: {e}", template.kind));
            let report = check_axioms(&r);
            assert!(
                report.all_pass,
                "{} example fails: {:?}",
                template.kind,
                report.failing_names()
            );
        }
    }

    #[test]
    fn ansatz_validation_flags_exactly_the_broken_condition() {
        let a: Mat<Q> = Mat::identity(4);
        let b: Mat<Q> = Mat::identity(4);
        let c: Mat<Q> = j_matrix(crate::quaternion::Sign::Plus, 1);
        let d: Mat<Q> = j_matrix(crate::quaternion::Sign::Plus, 1);
        let report = validate_abcd(&a, &b, &c, &d);
        assert!(!report.all_pass);
        assert_eq!(report.failing(), vec!["unit_norm_coupling"]);
        assert!(report.ac_commute && report.bd_commute);

        // The same data through the abcd kind is rejected.
        let err = build(serde_json::json!({
            "kind": "abcd",
            "params": {
                "a": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]],
                "b": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]],
                "c": [[0,-1,0,0],[1,0,0,0],[0,0,0,-1],[0,0,1,0]],
                "d": [[0,-1,0,0],[1,0,0,0],[0,0,0,-1],[0,0,1,0]],
            },
        }))
        .unwrap_err();
        assert_eq!(
            err,
            FamilyError::AnsatzViolated(vec!["unit_norm_coupling".into()])
        );
    }

    #[test]
    fn family_spec_json_round_trip() {
        let spec = FamilySpec::from_value(serde_json::json!({
            "kind": "toric8",
            "sign": "-",
            "params": {"u": "3/5", "v": "4/5", "n_hat": [0, 0, 1]},
            "mode": "exact",
        }))
        .unwrap();
        let text = serde_json::to_string(&spec).unwrap();
        let back: FamilySpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
        assert_eq!(back.sign, Sign::Minus);
        assert_eq!(back.mode(), Mode::Exact);
    }
}
