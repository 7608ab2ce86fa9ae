//! Quaternions ℍ, their left/right multiplication matrices on ℝ⁴, and the
//! derived structures used to build 8-dimensional R-matrices:
//!
//! * the imaginary units satisfy e_a e_b = −δ_{ab} + Σ_c ε_{abc} e_c for
//!   a, b ∈ {1,2,3}, with e₀ = 1 central;
//! * `J⁺_a` is the matrix of left multiplication by e_a and
//!   `J⁻_a` is **minus** the matrix of right multiplication by e_a, in the
//!   basis (e₀, e₁, e₂, e₃); both triples then satisfy the quaternion
//!   relations J^±_a J^±_b = −δ_{ab}𝟙 + Σ_c ε_{abc} J^±_c, and every J⁺
//!   commutes with every J⁻;
//! * viewed as 2-forms on ℝ⁴, the J⁺_a are self-dual and the J⁻_a are
//!   anti-self-dual for the Hodge star with ε₀₁₂₃ = +1.
//!
//! Quaternion components are indexed 0..=3 (the scalar slot is 0); the
//! imaginary-unit label `a` in `j_matrix` runs over 1..=3.

use crate::linalg::Mat;
use crate::scalar::Scalar;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuaternionError {
    #[error("quaternion components must be real (fixed by conjugation)")]
    NotReal,
    #[error("a 2-form matrix must be 4×4 and antisymmetric")]
    NotAntisymmetric,
    #[error("imaginary-unit index must lie in 1..=3, got {0}")]
    BadUnitIndex(usize),
}

/// Which member of a ± pair of structures (J-matrices, R-matrix families).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Side of a quaternionic multiplication action on ℝ⁴ ≅ ℍ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Sign of a permutation given as a slice; 0 on repeated entries.
fn permutation_sign(idx: &[usize]) -> i64 {
    let n = idx.len();
    let mut sign = 1i64;
    for i in 0..n {
        for j in (i + 1)..n {
            match idx[i].cmp(&idx[j]) {
                std::cmp::Ordering::Equal => return 0,
                std::cmp::Ordering::Greater => sign = -sign,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    sign
}

/// Totally antisymmetric symbol on {1,2,3} with ε₁₂₃ = +1.
pub fn epsilon3(a: usize, b: usize, c: usize) -> i64 {
    assert!(
        (1..=3).contains(&a) && (1..=3).contains(&b) && (1..=3).contains(&c),
        "epsilon3 indices must lie in 1..=3"
    );
    permutation_sign(&[a, b, c])
}

/// Totally antisymmetric symbol on {0,1,2,3} with ε₀₁₂₃ = +1.
pub fn epsilon4(m: usize, n: usize, r: usize, s: usize) -> i64 {
    assert!(
        m < 4 && n < 4 && r < 4 && s < 4,
        "epsilon4 indices must lie in 0..=3"
    );
    permutation_sign(&[m, n, r, s])
}

/// A quaternion with real (conjugation-fixed) components in a scalar field.
#[derive(Clone, PartialEq, Debug)]
pub struct Quaternion<S> {
    pub c: [S; 4],
}

impl<S: Scalar> Quaternion<S> {
    pub fn new(c: [S; 4]) -> Result<Self, QuaternionError> {
        if c.iter().any(|x| x.conj() != *x) {
            return Err(QuaternionError::NotReal);
        }
        Ok(Quaternion { c })
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        Quaternion {
            c: [S::int(c[0]), S::int(c[1]), S::int(c[2]), S::int(c[3])],
        }
    }

    pub fn from_rationals(c: &[BigRational; 4]) -> Self {
        Quaternion {
            c: [
                S::from_rational(&c[0]),
                S::from_rational(&c[1]),
                S::from_rational(&c[2]),
                S::from_rational(&c[3]),
            ],
        }
    }

    pub fn one() -> Self {
        Quaternion::from_ints([1, 0, 0, 0])
    }

    /// The basis quaternion e_μ, μ ∈ 0..=3.
    pub fn basis(mu: usize) -> Self {
        let mut c = [S::zero(), S::zero(), S::zero(), S::zero()];
        c[mu] = S::one();
        Quaternion { c }
    }

    pub fn conj_q(&self) -> Self {
        Quaternion {
            c: [
                self.c[0].clone(),
                -self.c[1].clone(),
                -self.c[2].clone(),
                -self.c[3].clone(),
            ],
        }
    }

    pub fn norm_sqr(&self) -> S {
        let mut acc = S::zero();
        for x in &self.c {
            acc = acc + x.clone() * x.clone();
        }
        acc
    }

    pub fn is_unit(&self) -> bool {
        self.norm_sqr() == S::one()
    }

    /// Quaternion product: (pq)⁰ = p⁰q⁰ − Σ_a p^a q^a and
    /// (pq)^a = p⁰q^a + q⁰p^a + Σ_{bc} ε_{abc} p^b q^c.
    #[allow(clippy::needless_range_loop)] // the index loops mirror the ε-contraction
    pub fn mul(&self, other: &Self) -> Self {
        let p = &self.c;
        let q = &other.c;
        let mut out = [S::zero(), S::zero(), S::zero(), S::zero()];
        out[0] = p[0].clone() * q[0].clone()
            - (p[1].clone() * q[1].clone()
                + p[2].clone() * q[2].clone()
                + p[3].clone() * q[3].clone());
        for a in 1..=3 {
            let mut acc = p[0].clone() * q[a].clone() + q[0].clone() * p[a].clone();
            for b in 1..=3 {
                for c in 1..=3 {
                    let e = epsilon3(a, b, c);
                    if e != 0 {
                        acc = acc + S::int(e) * p[b].clone() * q[c].clone();
                    }
                }
            }
            out[a] = acc;
        }
        Quaternion { c: out }
    }
}

/// Matrix of multiplication by q on ℍ ≅ ℝ⁴: column ν holds the components
/// of q·e_ν (`Side::Left`) or e_ν·q (`Side::Right`).
pub fn action_matrix<S: Scalar>(side: Side, q: &Quaternion<S>) -> Mat<S> {
    let mut m = Mat::zeros(4, 4);
    for nu in 0..4 {
        let basis = Quaternion::basis(nu);
        let image = match side {
            Side::Left => q.mul(&basis),
            Side::Right => basis.mul(q),
        };
        for mu in 0..4 {
            m.set(mu, nu, image.c[mu].clone());
        }
    }
    m
}

/// The matrix J^±_a for a ∈ 1..=3:
///
/// ```text
/// (J^±_a)_{μν} = ∓(δ_{0μ} δ_{aν} − δ_{aμ} δ_{0ν}) + Σ_{b,c} ε_{abc} δ_{bν} δ_{cμ}
/// ```
///
/// equivalently J⁺_a = action_matrix(Left, e_a) and
/// J⁻_a = −action_matrix(Right, e_a).
pub fn j_matrix<S: Scalar>(sign: Sign, a: usize) -> Mat<S> {
    assert!((1..=3).contains(&a), "j_matrix index must lie in 1..=3");
    let time_sign = match sign {
        Sign::Plus => -1i64,
        Sign::Minus => 1i64,
    };
    Mat::from_fn(4, 4, |mu, nu| {
        let mut v = 0i64;
        if mu == 0 && nu == a {
            v += time_sign;
        }
        if mu == a && nu == 0 {
            v -= time_sign;
        }
        if (1..=3).contains(&mu) && (1..=3).contains(&nu) {
            v += epsilon3(a, nu, mu);
        }
        S::int(v)
    })
}

/// Σ_a u^a J^±_a for a rational 3-vector u = (u¹, u², u³).
pub fn j_of_vector<S: Scalar>(sign: Sign, u: &[BigRational]) -> Mat<S> {
    assert_eq!(u.len(), 3, "j_of_vector takes a 3-vector");
    let mut m = Mat::zeros(4, 4);
    for (k, comp) in u.iter().enumerate() {
        let coeff = S::from_rational(comp);
        if coeff.is_zero() {
            continue;
        }
        m = m.add(&j_matrix::<S>(sign, k + 1).scale(&coeff));
    }
    m
}

/// J^±_q = q⁰𝟙 + Σ_a q^a J^±_a.  For unit q these are orthogonal: J⁺_q is
/// left multiplication by q, and J⁻_q is right multiplication by q̄.
pub fn j_of_quaternion<S: Scalar>(sign: Sign, q: &Quaternion<S>) -> Mat<S> {
    let mut m = Mat::identity(4).scale(&q.c[0]);
    for a in 1..=3 {
        if q.c[a].is_zero() {
            continue;
        }
        m = m.add(&j_matrix::<S>(sign, a).scale(&q.c[a]));
    }
    m
}

/// An antisymmetric 4×4 matrix viewed as a 2-form on ℝ⁴.
#[derive(Clone, PartialEq, Debug)]
pub struct TwoForm<S> {
    m: Mat<S>,
}

impl<S: Scalar> TwoForm<S> {
    pub fn try_new(m: Mat<S>) -> Result<Self, QuaternionError> {
        if m.rows != 4 || m.cols != 4 || !m.is_antisymmetric() {
            return Err(QuaternionError::NotAntisymmetric);
        }
        Ok(TwoForm { m })
    }

    pub fn matrix(&self) -> &Mat<S> {
        &self.m
    }

    /// Hodge star: (★F)_{μν} = ½ Σ_{ρσ} ε_{μνρσ} F_{ρσ}.
    pub fn hodge_star(&self) -> TwoForm<S> {
        let m = Mat::from_fn(4, 4, |mu, nu| {
            let mut acc = S::zero();
            for rho in 0..4 {
                for sigma in 0..4 {
                    let e = epsilon4(mu, nu, rho, sigma);
                    if e != 0 {
                        acc = acc + S::rat(e, 2) * self.m.at(rho, sigma).clone();
                    }
                }
            }
            acc
        });
        TwoForm { m }
    }
}

/// The per-block reflection diag(1, −1, −1, −1); conjugation by it swaps
/// J⁺_a and J⁻_a.
pub fn reflection_matrix<S: Scalar>() -> Mat<S> {
    Mat::from_fn(4, 4, |i, j| {
        if i != j {
            S::zero()
        } else if i == 0 {
            S::one()
        } else {
            S::int(-1)
        }
    })
}
