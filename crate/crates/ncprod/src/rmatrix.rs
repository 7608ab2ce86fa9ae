//! R-matrices for quadratic *-algebras with two generator blocks, and the
//! battery of exact checks they must satisfy.
//!
//! An `RMatrix` stores the coefficients R^{λα}_{βμ} of the mixed exchange
//! relation x₁^λ x₂^α = R^{λα}_{βμ} x₂^β x₁^μ (block-1 indices λ, μ range
//! over 0..n1, block-2 indices α, β over 0..n2; summation over repeated
//! lower indices).  The checks are:
//!
//! * **reality** — R̄^{λα}_{βμ} R^{μβ}_{γν} = δ^λ_ν δ^α_γ, which makes the
//!   exchange relation consistent with the *-structure;
//! * **involution** — the combined endomorphism 𝓡 of E⊗E (flip on the two
//!   pure blocks, R and R̄ on the mixed blocks) squares to the identity;
//! * **yang_baxter** — six braid-type cubic identities (two sum patterns,
//!   each in a direct, conjugate and mixed form);
//! * **centrality** — the contractions that make ‖x₁‖² and ‖x₂‖² central;
//! * **euclidean** — the transpose/conjugate symmetries and the inverse
//!   contraction that characterize the Euclidean (self-transposed) case.
//!
//! All index reporting in defects is 0-based, in storage order.

use crate::linalg::Mat;
use crate::scalar::Scalar;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RMatrixError {
    #[error("expected {expected} entries for block sizes ({n1}, {n2}), got {got}")]
    WrongEntryCount {
        n1: usize,
        n2: usize,
        expected: usize,
        got: usize,
    },
    #[error("block sizes must be positive")]
    EmptyBlock,
    #[error("coefficient matrices must be square with matching block sizes")]
    ShapeMismatch,
    #[error("malformed R-matrix JSON: {0}")]
    BadJson(String),
}

/// Coefficients R^{λα}_{βμ}, stored at ((λ·n2 + α)·n2 + β)·n1 + μ.
#[derive(Clone, PartialEq, Debug)]
pub struct RMatrix<S> {
    n1: usize,
    n2: usize,
    entries: Vec<S>,
}

impl<S: Scalar> RMatrix<S> {
    pub fn new(n1: usize, n2: usize, entries: Vec<S>) -> Result<Self, RMatrixError> {
        if n1 == 0 || n2 == 0 {
            return Err(RMatrixError::EmptyBlock);
        }
        let expected = n1 * n2 * n2 * n1;
        if entries.len() != expected {
            return Err(RMatrixError::WrongEntryCount {
                n1,
                n2,
                expected,
                got: entries.len(),
            });
        }
        Ok(RMatrix { n1, n2, entries })
    }

    pub fn from_fn(n1: usize, n2: usize, mut f: impl FnMut(usize, usize, usize, usize) -> S) -> Self {
        assert!(n1 > 0 && n2 > 0);
        let mut entries = Vec::with_capacity(n1 * n2 * n2 * n1);
        for l in 0..n1 {
            for a in 0..n2 {
                for b in 0..n2 {
                    for m in 0..n1 {
                        entries.push(f(l, a, b, m));
                    }
                }
            }
        }
        RMatrix { n1, n2, entries }
    }

    /// The flip R^{λα}_{βμ} = δ^λ_μ δ^α_β, under which both blocks commute.
    pub fn classical(n1: usize, n2: usize) -> Self {
        RMatrix::from_fn(n1, n2, |l, a, b, m| {
            if l == m && a == b {
                S::one()
            } else {
                S::zero()
            }
        })
    }

    /// R^{λα}_{βμ} = A_{λμ} B_{αβ} + i C_{λμ} D_{αβ}.
    pub fn from_abcd(a: &Mat<S>, b: &Mat<S>, c: &Mat<S>, d: &Mat<S>) -> Result<Self, RMatrixError> {
        let n1 = a.rows;
        let n2 = b.rows;
        if a.cols != n1 || b.cols != n2 || c.rows != n1 || c.cols != n1 || d.rows != n2 || d.cols != n2
        {
            return Err(RMatrixError::ShapeMismatch);
        }
        if n1 == 0 || n2 == 0 {
            return Err(RMatrixError::EmptyBlock);
        }
        let i = S::i();
        Ok(RMatrix::from_fn(n1, n2, |l, al, be, m| {
            a.at(l, m).clone() * b.at(al, be).clone()
                + i.clone() * c.at(l, m).clone() * d.at(al, be).clone()
        }))
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    /// Total number of generators N = N₁ + N₂.
    pub fn n(&self) -> usize {
        self.n1 + self.n2
    }

    #[inline]
    pub fn get(&self, l: usize, a: usize, b: usize, m: usize) -> &S {
        &self.entries[((l * self.n2 + a) * self.n2 + b) * self.n1 + m]
    }

    /// Transport of the relations under the generator exchange
    /// x₁ ↔ x₂: if 𝒜_R has relations x₁^λ x₂^α = R^{λα}_{βμ} x₂^β x₁^μ,
    /// then relabeling the blocks turns them into the relations of
    /// 𝒜_{R'} with R'^{αλ}_{μβ} = conj R^{λα}_{βμ}.  Blocks swap sizes.
    pub fn exchange_blocks(&self) -> RMatrix<S> {
        RMatrix::from_fn(self.n2, self.n1, |a, b, c, d| {
            self.get(b, a, d, c).conj()
        })
    }

    /// Entrywise conjugate R̄.
    pub fn conj_entries(&self) -> Self {
        RMatrix {
            n1: self.n1,
            n2: self.n2,
            entries: self.entries.iter().map(|v| v.conj()).collect(),
        }
    }

    pub fn map_entries<T: Scalar>(&self, f: impl Fn(&S) -> T) -> RMatrix<T> {
        RMatrix {
            n1: self.n1,
            n2: self.n2,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|v| !v.is_zero()).count()
    }

    /// For each (λ, α), the nonzero (β, μ, R^{λα}_{βμ}): the sparse form
    /// of the forward exchange rewrite x₁^λ x₂^α → Σ R^{λα}_{βμ} x₂^β x₁^μ.
    pub fn rewrite_rows(&self) -> Vec<Vec<(usize, usize, S)>> {
        let mut rows = vec![Vec::new(); self.n1 * self.n2];
        for l in 0..self.n1 {
            for a in 0..self.n2 {
                let row = &mut rows[l * self.n2 + a];
                for b in 0..self.n2 {
                    for m in 0..self.n1 {
                        let v = self.get(l, a, b, m);
                        if !v.is_zero() {
                            row.push((b, m, v.clone()));
                        }
                    }
                }
            }
        }
        rows
    }

    /// For each (β, μ), the nonzero (λ, α, R^{λα}_{βμ}): the sparse form
    /// of contractions over the upper index pair.
    pub fn rewrite_cols(&self) -> Vec<Vec<(usize, usize, S)>> {
        let mut cols = vec![Vec::new(); self.n2 * self.n1];
        for l in 0..self.n1 {
            for a in 0..self.n2 {
                for b in 0..self.n2 {
                    for m in 0..self.n1 {
                        let v = self.get(l, a, b, m);
                        if !v.is_zero() {
                            cols[b * self.n1 + m].push((l, a, v.clone()));
                        }
                    }
                }
            }
        }
        cols
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut outer = Vec::with_capacity(self.n1);
        for l in 0..self.n1 {
            let mut level_a = Vec::with_capacity(self.n2);
            for a in 0..self.n2 {
                let mut level_b = Vec::with_capacity(self.n2);
                for b in 0..self.n2 {
                    let mut level_m = Vec::with_capacity(self.n1);
                    for m in 0..self.n1 {
                        level_m.push(self.get(l, a, b, m).to_json());
                    }
                    level_b.push(serde_json::Value::Array(level_m));
                }
                level_a.push(serde_json::Value::Array(level_b));
            }
            outer.push(serde_json::Value::Array(level_a));
        }
        serde_json::json!({
            "n1": self.n1,
            "n2": self.n2,
            "entries": outer,
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, RMatrixError> {
        let bad = |msg: &str| RMatrixError::BadJson(msg.to_string());
        let obj = value.as_object().ok_or_else(|| bad("expected an object"))?;
        let n1 = obj
            .get("n1")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| bad("missing n1"))? as usize;
        let n2 = obj
            .get("n2")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| bad("missing n2"))? as usize;
        if n1 == 0 || n2 == 0 {
            return Err(RMatrixError::EmptyBlock);
        }
        let outer = obj
            .get("entries")
            .and_then(|v| v.as_array())
            .ok_or_else(|| bad("missing entries array"))?;
        let mut entries = Vec::with_capacity(n1 * n2 * n2 * n1);
        if outer.len() != n1 {
            return Err(bad("entries must have n1 outer elements"));
        }
        for level_a in outer {
            let level_a = level_a.as_array().ok_or_else(|| bad("expected nested array"))?;
            if level_a.len() != n2 {
                return Err(bad("second nesting level must have n2 elements"));
            }
            for level_b in level_a {
                let level_b = level_b.as_array().ok_or_else(|| bad("expected nested array"))?;
                if level_b.len() != n2 {
                    return Err(bad("third nesting level must have n2 elements"));
                }
                for level_m in level_b {
                    let level_m = level_m.as_array().ok_or_else(|| bad("expected nested array"))?;
                    if level_m.len() != n1 {
                        return Err(bad("innermost level must have n1 elements"));
                    }
                    for v in level_m {
                        entries.push(
                            S::from_json(v).map_err(|e| RMatrixError::BadJson(e.to_string()))?,
                        );
                    }
                }
            }
        }
        RMatrix::new(n1, n2, entries)
    }
}

impl<S: Scalar> Serialize for RMatrix<S> {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for RMatrix<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        RMatrix::from_json(&value).map_err(D::Error::custom)
    }
}

/// The exchange endomorphism 𝓡 of E⊗E on combined indices 0..N (block 1
/// first, so x₂^α carries index N₁+α).  On basis tensors it acts as
///
/// ```text
/// 𝓡(x₁^λ ⊗ x₁^μ) = x₁^μ ⊗ x₁^λ
/// 𝓡(x₂^α ⊗ x₂^β) = x₂^β ⊗ x₂^α
/// 𝓡(x₁^λ ⊗ x₂^α) = Σ R^{λα}_{βμ}  x₂^β ⊗ x₁^μ      (the exchange rule)
/// 𝓡(x₂^β ⊗ x₁^μ) = Σ R̄^{μβ}_{αλ}  x₁^λ ⊗ x₂^α      (its inverse)
/// ```
///
/// with all remaining matrix entries zero.  The quadratic relations are
/// exactly the image of 1 − 𝓡, so by involutivity the relation span is
/// the full −1 eigenspace ker(1 + 𝓡), of dimension C(N, 2).
#[derive(Clone, PartialEq, Debug)]
pub struct BigR<S> {
    n1: usize,
    n2: usize,
    entries: Vec<S>,
}

/// Assemble 𝓡 from R per the table above.
pub fn assemble_big_r<S: Scalar>(r: &RMatrix<S>) -> BigR<S> {
    let n1 = r.n1();
    let n2 = r.n2();
    let n = n1 + n2;
    let mut entries = vec![S::zero(); n * n * n * n];
    let idx = |a: usize, b: usize, c: usize, d: usize| ((a * n + b) * n + c) * n + d;
    for a in 0..n {
        for b in 0..n {
            match (a < n1, b < n1) {
                (true, true) => {
                    // pure block 1: flip
                    entries[idx(a, b, b, a)] = S::one();
                }
                (false, false) => {
                    // pure block 2: flip
                    entries[idx(a, b, b, a)] = S::one();
                }
                (false, true) => {
                    // rows x₂^β ⊗ x₁^μ, columns x₁^λ ⊗ x₂^α: the
                    // exchange rule itself.
                    let be = a - n1;
                    let m = b;
                    for l in 0..n1 {
                        for al in 0..n2 {
                            let v = r.get(l, al, be, m);
                            if !v.is_zero() {
                                entries[idx(a, b, l, n1 + al)] = v.clone();
                            }
                        }
                    }
                }
                (true, false) => {
                    // rows x₁^λ ⊗ x₂^α, columns x₂^β ⊗ x₁^μ: the reverse
                    // rule R̄^{μβ}_{αλ}, inverse to the forward one by the
                    // reality condition.
                    let l = a;
                    let al = b - n1;
                    for be in 0..n2 {
                        for m in 0..n1 {
                            let v = r.get(m, be, al, l);
                            if !v.is_zero() {
                                entries[idx(a, b, n1 + be, m)] = v.conj();
                            }
                        }
                    }
                }
            }
        }
    }
    BigR { n1, n2, entries }
}

impl<S: Scalar> BigR<S> {
    pub fn n(&self) -> usize {
        self.n1 + self.n2
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> &S {
        let n = self.n();
        &self.entries[((a * n + b) * n + c) * n + d]
    }

    /// 𝓡 as an N²×N² matrix: row a·N + b, column c·N + d.
    pub fn as_matrix(&self) -> Mat<S> {
        let n = self.n();
        Mat::from_fn(n * n, n * n, |row, col| {
            self.get(row / n, row % n, col / n, col % n).clone()
        })
    }
}

/// Cap on the number of individually reported defects per check.
pub const DEFECT_CAP: usize = 12;

/// One failing index tuple of a check, with the residual value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Defect {
    pub indices: Vec<usize>,
    pub value: String,
}

/// Outcome of one exact check: pass/fail, the largest residual magnitude,
/// and up to [`DEFECT_CAP`] failing index tuples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub pass: bool,
    pub max_residual: f64,
    pub defect_count: usize,
    pub defects: Vec<Defect>,
}

/// Accumulates residuals for one check.
#[derive(Default)]
pub struct DefectCollector {
    max_residual: f64,
    defect_count: usize,
    defects: Vec<Defect>,
}

impl DefectCollector {
    pub fn new() -> Self {
        DefectCollector::default()
    }

    pub fn record<S: Scalar>(&mut self, indices: &[usize], residual: &S) {
        if residual.is_zero() {
            return;
        }
        self.defect_count += 1;
        self.max_residual = self.max_residual.max(residual.magnitude());
        if self.defects.len() < DEFECT_CAP {
            self.defects.push(Defect {
                indices: indices.to_vec(),
                value: format!("{residual}"),
            });
        }
    }

    pub fn finish(self) -> CheckOutcome {
        CheckOutcome {
            pass: self.defect_count == 0,
            max_residual: self.max_residual,
            defect_count: self.defect_count,
            defects: self.defects,
        }
    }
}

/// A check outcome labeled by which identity it verified.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedCheck {
    pub name: String,
    pub outcome: CheckOutcome,
}

/// Results of the whole axiom battery for one R-matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub reality: CheckOutcome,
    pub involution: CheckOutcome,
    pub yang_baxter: Vec<NamedCheck>,
    pub centrality: Vec<NamedCheck>,
    pub euclidean: Vec<NamedCheck>,
    pub all_pass: bool,
}

impl AxiomReport {
    /// The preconditions for word rewriting to be well defined: reality,
    /// involution and all six Yang–Baxter identities.
    pub fn engine_ready(&self) -> bool {
        self.reality.pass
            && self.involution.pass
            && self.yang_baxter.iter().all(|c| c.outcome.pass)
    }

    pub fn failing_names(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.reality.pass {
            out.push("reality".to_string());
        }
        if !self.involution.pass {
            out.push("involution".to_string());
        }
        for group in [&self.yang_baxter, &self.centrality, &self.euclidean] {
            for check in group {
                if !check.outcome.pass {
                    out.push(check.name.clone());
                }
            }
        }
        out
    }
}

fn check_reality<S: Scalar>(r: &RMatrix<S>) -> CheckOutcome {
    let (n1, n2) = (r.n1(), r.n2());
    let mut col = DefectCollector::new();
    for l in 0..n1 {
        for a in 0..n2 {
            for g in 0..n2 {
                for nu in 0..n1 {
                    let mut acc = S::zero();
                    for b in 0..n2 {
                        for m in 0..n1 {
                            acc = acc + r.get(l, a, b, m).conj() * r.get(m, b, g, nu).clone();
                        }
                    }
                    if l == nu && a == g {
                        acc = acc - S::one();
                    }
                    col.record(&[l, a, g, nu], &acc);
                }
            }
        }
    }
    col.finish()
}

fn check_involution<S: Scalar>(r: &RMatrix<S>) -> CheckOutcome {
    let big = assemble_big_r(r);
    let m = big.as_matrix();
    let square = m.mul(&m);
    let n = big.n();
    let mut col = DefectCollector::new();
    for row in 0..n * n {
        for c in 0..n * n {
            let mut v = square.at(row, c).clone();
            if row == c {
                v = v - S::one();
            }
            col.record(&[row / n, row % n, c / n, c % n], &v);
        }
    }
    col.finish()
}

/// The six Yang–Baxter identities.  The first three exchange one block-1
/// letter with two block-2 letters (internal sum over block 1); the last
/// three exchange two block-1 letters with one block-2 letter (internal
/// sum over block 2).  Within each triple the three variants use (R, R),
/// (R̄, R̄) and the mixed pair.
fn check_yang_baxter<S: Scalar>(r: &RMatrix<S>) -> Vec<NamedCheck> {
    let (n1, n2) = (r.n1(), r.n2());
    let rc = r.conj_entries();

    // Σ_ρ P^{λα}_{γρ} Q^{ρβ}_{δμ} − Σ_ρ Q'^{λβ}_{δρ} P'^{ρα}_{γμ}
    // with (P, Q, Q', P') chosen per variant.
    let one_two = |p: &RMatrix<S>, q: &RMatrix<S>, qp: &RMatrix<S>, pp: &RMatrix<S>| {
        let mut col = DefectCollector::new();
        for l in 0..n1 {
            for a in 0..n2 {
                for b in 0..n2 {
                    for g in 0..n2 {
                        for d in 0..n2 {
                            for m in 0..n1 {
                                let mut acc = S::zero();
                                for rho in 0..n1 {
                                    acc = acc
                                        + p.get(l, a, g, rho).clone() * q.get(rho, b, d, m).clone()
                                        - qp.get(l, b, d, rho).clone()
                                            * pp.get(rho, a, g, m).clone();
                                }
                                col.record(&[l, a, b, g, d, m], &acc);
                            }
                        }
                    }
                }
            }
        }
        col.finish()
    };

    // Σ_γ P^{λα}_{γν} Q^{μγ}_{βρ} − Σ_γ Q'^{μα}_{γρ} P'^{λγ}_{βν}
    let two_one = |p: &RMatrix<S>, q: &RMatrix<S>, qp: &RMatrix<S>, pp: &RMatrix<S>| {
        let mut col = DefectCollector::new();
        for l in 0..n1 {
            for m in 0..n1 {
                for a in 0..n2 {
                    for b in 0..n2 {
                        for nu in 0..n1 {
                            for rho in 0..n1 {
                                let mut acc = S::zero();
                                for g in 0..n2 {
                                    acc = acc
                                        + p.get(l, a, g, nu).clone() * q.get(m, g, b, rho).clone()
                                        - qp.get(m, a, g, rho).clone()
                                            * pp.get(l, g, b, nu).clone();
                                }
                                col.record(&[l, m, a, b, nu, rho], &acc);
                            }
                        }
                    }
                }
            }
        }
        col.finish()
    };

    let named = |name: &str, outcome: CheckOutcome| NamedCheck {
        name: name.to_string(),
        outcome,
    };
    vec![
        named("ybe1_direct", one_two(r, r, r, r)),
        named("ybe1_conjugate", one_two(&rc, &rc, &rc, &rc)),
        named("ybe1_mixed", one_two(&rc, r, r, &rc)),
        named("ybe2_direct", two_one(r, r, r, r)),
        named("ybe2_conjugate", two_one(&rc, &rc, &rc, &rc)),
        named("ybe2_mixed", two_one(r, &rc, &rc, r)),
    ]
}

fn check_centrality<S: Scalar>(r: &RMatrix<S>) -> Vec<NamedCheck> {
    let (n1, n2) = (r.n1(), r.n2());

    // Σ_{λ,β} R^{λγ}_{βν} R^{λβ}_{αμ} = δ^γ_α δ_{μν}
    let mut col1 = DefectCollector::new();
    for g in 0..n2 {
        for a in 0..n2 {
            for nu in 0..n1 {
                for m in 0..n1 {
                    let mut acc = S::zero();
                    for l in 0..n1 {
                        for b in 0..n2 {
                            acc = acc + r.get(l, g, b, nu).clone() * r.get(l, b, a, m).clone();
                        }
                    }
                    if g == a && m == nu {
                        acc = acc - S::one();
                    }
                    col1.record(&[g, a, nu, m], &acc);
                }
            }
        }
    }

    // Σ_{α,ρ} R^{λα}_{βρ} R^{ρα}_{γμ} = δ^λ_μ δ_{βγ}
    let mut col2 = DefectCollector::new();
    for l in 0..n1 {
        for m in 0..n1 {
            for b in 0..n2 {
                for g in 0..n2 {
                    let mut acc = S::zero();
                    for a in 0..n2 {
                        for rho in 0..n1 {
                            acc = acc + r.get(l, a, b, rho).clone() * r.get(rho, a, g, m).clone();
                        }
                    }
                    if l == m && b == g {
                        acc = acc - S::one();
                    }
                    col2.record(&[l, m, b, g], &acc);
                }
            }
        }
    }

    vec![
        NamedCheck {
            name: "centrality_sum_block1".to_string(),
            outcome: col1.finish(),
        },
        NamedCheck {
            name: "centrality_sum_block2".to_string(),
            outcome: col2.finish(),
        },
    ]
}

fn check_euclidean<S: Scalar>(r: &RMatrix<S>, yang_baxter: &[NamedCheck]) -> Vec<NamedCheck> {
    let (n1, n2) = (r.n1(), r.n2());

    // R^{λβ}_{αμ} = R^{μα}_{βλ}
    let mut transpose = DefectCollector::new();
    // R^{λβ}_{αμ} = R̄^{μβ}_{αλ}
    let mut conjugate = DefectCollector::new();
    for l in 0..n1 {
        for a in 0..n2 {
            for b in 0..n2 {
                for m in 0..n1 {
                    let here = r.get(l, a, b, m).clone();
                    let t = here.clone() - r.get(m, b, a, l).clone();
                    transpose.record(&[l, a, b, m], &t);
                    let c = here - r.get(m, a, b, l).conj();
                    conjugate.record(&[l, a, b, m], &c);
                }
            }
        }
    }

    // Σ_{β,μ} R^{λ'β}_{α'μ} R^{λα}_{βμ} = δ^λ_{λ'} δ^α_{α'}
    let mut inverse = DefectCollector::new();
    for lp in 0..n1 {
        for ap in 0..n2 {
            for l in 0..n1 {
                for a in 0..n2 {
                    let mut acc = S::zero();
                    for b in 0..n2 {
                        for m in 0..n1 {
                            acc = acc + r.get(lp, b, ap, m).clone() * r.get(l, a, b, m).clone();
                        }
                    }
                    if lp == l && ap == a {
                        acc = acc - S::one();
                    }
                    inverse.record(&[lp, ap, l, a], &acc);
                }
            }
        }
    }

    let find = |name: &str| {
        yang_baxter
            .iter()
            .find(|c| c.name == name)
            .expect("yang_baxter checks computed first")
            .outcome
            .clone()
    };

    vec![
        NamedCheck {
            name: "euclidean_transpose_symmetry".to_string(),
            outcome: transpose.finish(),
        },
        NamedCheck {
            name: "euclidean_conjugate_symmetry".to_string(),
            outcome: conjugate.finish(),
        },
        NamedCheck {
            name: "euclidean_inverse_contraction".to_string(),
            outcome: inverse.finish(),
        },
        NamedCheck {
            name: "euclidean_ybe1".to_string(),
            outcome: find("ybe1_direct"),
        },
        NamedCheck {
            name: "euclidean_ybe2".to_string(),
            outcome: find("ybe2_direct"),
        },
    ]
}

/// Run the whole battery.  Every check is exact: a residual is a defect
/// regardless of size (for approximate scalars, up to their tolerance).
pub fn check_axioms<S: Scalar>(r: &RMatrix<S>) -> AxiomReport {
    let (reality, (involution, (yang_baxter, centrality))) = rayon::join(
        || check_reality(r),
        || {
            rayon::join(
                || check_involution(r),
                || rayon::join(|| check_yang_baxter(r), || check_centrality(r)),
            )
        },
    );
    let euclidean = check_euclidean(r, &yang_baxter);
    let all_pass = reality.pass
        && involution.pass
        && yang_baxter.iter().all(|c| c.outcome.pass)
        && centrality.iter().all(|c| c.outcome.pass)
        && euclidean.iter().all(|c| c.outcome.pass);
    AxiomReport {
        reality,
        involution,
        yang_baxter,
        centrality,
        euclidean,
        all_pass,
    }
}
