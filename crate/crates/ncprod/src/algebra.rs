//! The quadratic algebra 𝒜_R as a rewriting engine.
//!
//! 𝒜_R is generated by two commuting-within-block families x₁^λ
//! (λ = 0..N₁−1) and x₂^α (α = 0..N₂−1) subject to the exchange relations
//!
//! ```text
//! x₁^λ x₂^α = Σ_{β,μ} R^{λα}_{βμ} x₂^β x₁^μ .
//! ```
//!
//! Words rewrite to the normal order "x₂-block ascending, then x₁-block
//! ascending"; the monomials in that order form a basis when the R-matrix
//! satisfies the reality, involution and Yang–Baxter identities, which
//! [`Engine::new`] therefore insists on.  On top of normal forms the
//! engine provides products, graded dimensions, centrality tests, the
//! sphere/torus quotient reductions, substitution-invariance checks for
//! the quaternionic symmetries, and randomized confluence sampling.
//!
//! Calibration of the symmetry check: the right action uses the matrices
//! J⁻_q and the left action uses J⁺_q (see [`crate::quaternion`]); this is
//! the convention under which the stated invariances of the ± families
//! hold, and it is what [`Engine::check_relation_invariance`] implements.

use crate::linalg::{svec_normalize, Mat, RowSpace, SVec};
use crate::quaternion::{j_of_quaternion, Quaternion, Side, Sign};
use crate::rmatrix::{check_axioms, RMatrix};
use crate::scalar::{Scalar, ScalarParseError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("the R-matrix fails rewrite preconditions: {}", .failing.join(", "))]
    AxiomsNotVerified { failing: Vec<String> },
    #[error("ideal generator {generator} is not central")]
    IdealNotCentral { generator: String },
    #[error("quaternion is not a unit: ‖q‖² = {value}")]
    NotUnit { value: String },
    #[error("operation requires block sizes ({expected_n1}, {expected_n2}); got ({got_n1}, {got_n2})")]
    BadDimensions {
        expected_n1: usize,
        expected_n2: usize,
        got_n1: usize,
        got_n2: usize,
    },
}

/// Which generator family a letter belongs to.  `X2 < X1` so that sorting
/// letters puts the x₂ block on the left, which is the normal order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Block {
    X2,
    X1,
}

/// A single generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Gen {
    pub block: Block,
    pub index: usize,
}

impl Gen {
    pub fn x1(index: usize) -> Gen {
        Gen {
            block: Block::X1,
            index,
        }
    }

    pub fn x2(index: usize) -> Gen {
        Gen {
            block: Block::X2,
            index,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.block {
            Block::X1 => write!(f, "x1_{}", self.index),
            Block::X2 => write!(f, "x2_{}", self.index),
        }
    }
}

/// A word in the generators, not necessarily normally ordered.
pub type Word = Vec<Gen>;

/// A normally ordered monomial, stored as the multidegree of each block:
/// it stands for (x₂-block ascending)(x₁-block ascending).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NormalMonomial {
    pub m2: Vec<usize>,
    pub m1: Vec<usize>,
}

impl NormalMonomial {
    pub fn unit(n1: usize, n2: usize) -> Self {
        NormalMonomial {
            m2: vec![0; n2],
            m1: vec![0; n1],
        }
    }

    pub fn generator(n1: usize, n2: usize, g: Gen) -> Self {
        let mut m = Self::unit(n1, n2);
        match g.block {
            Block::X1 => m.m1[g.index] += 1,
            Block::X2 => m.m2[g.index] += 1,
        }
        m
    }

    /// The multidegree of a word (letter order is forgotten).
    pub fn from_word(n1: usize, n2: usize, w: &[Gen]) -> Self {
        let mut m = Self::unit(n1, n2);
        for g in w {
            match g.block {
                Block::X1 => m.m1[g.index] += 1,
                Block::X2 => m.m2[g.index] += 1,
            }
        }
        m
    }

    /// The normally ordered word this monomial stands for.
    pub fn to_word(&self) -> Word {
        let mut w = Vec::with_capacity(self.degree());
        for (a, &k) in self.m2.iter().enumerate() {
            w.extend(std::iter::repeat_n(Gen::x2(a), k));
        }
        for (l, &k) in self.m1.iter().enumerate() {
            w.extend(std::iter::repeat_n(Gen::x1(l), k));
        }
        w
    }

    pub fn degree(&self) -> usize {
        self.m2.iter().sum::<usize>() + self.m1.iter().sum::<usize>()
    }
}

impl fmt::Display for NormalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return f.write_str("1");
        }
        let mut first = true;
        let mut item = |name: &str, i: usize, k: usize, f: &mut fmt::Formatter<'_>| {
            if k == 0 {
                return Ok(());
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if k == 1 {
                write!(f, "{name}_{i}")
            } else {
                write!(f, "{name}_{i}^{k}")
            }
        };
        for (i, &k) in self.m2.iter().enumerate() {
            item("x2", i, k, f)?;
        }
        for (i, &k) in self.m1.iter().enumerate() {
            item("x1", i, k, f)?;
        }
        Ok(())
    }
}

/// A finite linear combination of normal monomials with no zero
/// coefficients stored.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<S> {
    terms: BTreeMap<NormalMonomial, S>,
}

impl<S: Scalar> AlgebraElement<S> {
    pub fn zero() -> Self {
        AlgebraElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(m: NormalMonomial, c: S) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (NormalMonomial, S)>) -> Self {
        let mut e = Self::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NormalMonomial, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &NormalMonomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    /// Add `c·m`, keeping the no-zero-coefficients invariant.
    pub fn add_term(&mut self, m: NormalMonomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        self.map_coeffs(|c| c.clone() * s.clone())
    }

    pub fn map_coeffs(&self, f: impl Fn(&S) -> S) -> Self {
        Self::from_terms(self.terms().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Maximal total degree among the terms; `None` for the zero element.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// JSON encoding: a list of `{"m2": […], "m1": […], "coeff": …}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms()
                .map(|(m, c)| {
                    serde_json::json!({
                        "m2": m.m2,
                        "m1": m.m1,
                        "coeff": c.to_json(),
                    })
                })
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, ScalarParseError> {
        let bad = |msg: &str| ScalarParseError::BadValue(msg.to_string());
        let arr = v.as_array().ok_or_else(|| bad("expected a list of terms"))?;
        let mut out = Self::zero();
        for term in arr {
            let obj = term
                .as_object()
                .ok_or_else(|| bad("expected a term object"))?;
            let degrees = |key: &str| -> Result<Vec<usize>, ScalarParseError> {
                obj.get(key)
                    .and_then(|x| x.as_array())
                    .ok_or_else(|| bad("missing multidegree"))?
                    .iter()
                    .map(|k| {
                        k.as_u64()
                            .map(|k| k as usize)
                            .ok_or_else(|| bad("multidegree entries must be nonnegative integers"))
                    })
                    .collect()
            };
            let m = NormalMonomial {
                m2: degrees("m2")?,
                m1: degrees("m1")?,
            };
            let c = S::from_json(obj.get("coeff").ok_or_else(|| bad("missing coefficient"))?)?;
            out.add_term(m, c);
        }
        Ok(out)
    }
}

impl<S: Scalar> fmt::Display for AlgebraElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})·{m}")?;
        }
        Ok(())
    }
}

/// Which adjacent bad pair a rewriting pass resolves first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Resolve the leftmost out-of-order pair first (the default).
    Leftmost,
    /// Resolve the rightmost out-of-order pair first; used as the
    /// independent oracle in confluence checks.
    Rightmost,
}

/// The sphere ideals the quotient reduction supports.  `Torus` and
/// `ProductSpheres` both impose ‖x₁‖² = ‖x₂‖² = 1 (the former is the name
/// used for the deformed 8-dimensional case); `SevenSphere` imposes the
/// single relation ‖x‖² = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuotientKind {
    Torus,
    SevenSphere,
    ProductSpheres,
}

/// Result of a family of relation-preservation checks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub relations_checked: usize,
    /// Labels of relations whose image did not reduce to zero, with the
    /// residual element rendered for diagnostics.
    pub failures: Vec<String>,
}

impl InvarianceReport {
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Result of randomized confluence sampling.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfluenceReport {
    pub words_checked: usize,
    /// Words whose leftmost and rightmost reductions disagree.
    pub strategy_disagreements: usize,
    /// Normal words that the reverse-then-forward double rewrite failed
    /// to reproduce exactly.
    pub involution_failures: usize,
}

impl ConfluenceReport {
    pub fn all_pass(&self) -> bool {
        self.strategy_disagreements == 0 && self.involution_failures == 0
    }
}

/// The rewriting engine for one R-matrix.  Immutable once constructed, so
/// independent reductions may run concurrently.
#[derive(Clone, Debug)]
pub struct Engine<S: Scalar> {
    r: RMatrix<S>,
    /// (λ·N₂ + α) → nonzero (β, μ, R^{λα}_{βμ}): x₁^λ x₂^α → Σ R x₂^β x₁^μ.
    fwd_rows: Vec<Vec<(usize, usize, S)>>,
    /// (λ·N₂ + α) → nonzero (β, μ, R̄^{λα}_{βμ}): x₂^α x₁^λ → Σ R̄ x₁^μ x₂^β.
    bwd_rows: Vec<Vec<(usize, usize, S)>>,
}

impl<S: Scalar> Engine<S> {
    /// Build an engine after verifying the identities that make rewriting
    /// well defined (reality, involution, Yang–Baxter).
    pub fn new(r: RMatrix<S>) -> Result<Self, AlgebraError> {
        let report = check_axioms(&r);
        if !report.engine_ready() {
            return Err(AlgebraError::AxiomsNotVerified {
                failing: report.failing_names(),
            });
        }
        Ok(Self::new_unchecked(r))
    }

    /// Build an engine without the precondition check.  Reductions still
    /// terminate for arbitrary entries, but normal forms are only
    /// canonical when the identities hold; this constructor exists so
    /// tests can demonstrate non-confluence on broken input.
    pub fn new_unchecked(r: RMatrix<S>) -> Self {
        let fwd_rows = r.rewrite_rows();
        let bwd_rows = r.conj_entries().rewrite_rows();
        Engine {
            r,
            fwd_rows,
            bwd_rows,
        }
    }

    pub fn r(&self) -> &RMatrix<S> {
        &self.r
    }

    pub fn n1(&self) -> usize {
        self.r.n1()
    }

    pub fn n2(&self) -> usize {
        self.r.n2()
    }

    /// Total number of generators.
    pub fn n(&self) -> usize {
        self.r.n()
    }

    /// All generators in the combined-index order: the x₁ block, then the
    /// x₂ block.
    pub fn generators(&self) -> Vec<Gen> {
        let mut out = Vec::with_capacity(self.n());
        for l in 0..self.n1() {
            out.push(Gen::x1(l));
        }
        for a in 0..self.n2() {
            out.push(Gen::x2(a));
        }
        out
    }

    /// Combined index of a generator: x₁^λ → λ, x₂^α → N₁ + α.
    pub fn flat_index(&self, g: Gen) -> usize {
        match g.block {
            Block::X1 => g.index,
            Block::X2 => self.n1() + g.index,
        }
    }

    pub fn gen_of_flat(&self, a: usize) -> Gen {
        if a < self.n1() {
            Gen::x1(a)
        } else {
            Gen::x2(a - self.n1())
        }
    }

    pub fn one(&self) -> AlgebraElement<S> {
        AlgebraElement::monomial(NormalMonomial::unit(self.n1(), self.n2()), S::one())
    }

    pub fn gen_elem(&self, g: Gen) -> AlgebraElement<S> {
        AlgebraElement::monomial(
            NormalMonomial::generator(self.n1(), self.n2(), g),
            S::one(),
        )
    }

    /// Index of the first bad adjacent pair under the given strategy, or
    /// `None` when the word is normally ordered.
    fn find_bad_pair(&self, w: &[Gen], strategy: Strategy) -> Option<usize> {
        let bad = |i: usize| -> bool {
            let (g, h) = (w[i], w[i + 1]);
            match (g.block, h.block) {
                (Block::X1, Block::X2) => true,
                _ if g.block == h.block => g.index > h.index,
                _ => false,
            }
        };
        match strategy {
            Strategy::Leftmost => (0..w.len().saturating_sub(1)).find(|&i| bad(i)),
            Strategy::Rightmost => (0..w.len().saturating_sub(1)).rev().find(|&i| bad(i)),
        }
    }

    /// Normal form of a single word with coefficient 1, leftmost strategy.
    pub fn normal_form(&self, w: &[Gen]) -> AlgebraElement<S> {
        self.normal_form_with(w, S::one(), Strategy::Leftmost)
    }

    /// Normal form of `c·w` under the chosen strategy.  A worklist of
    /// words with merged coefficients is processed until every word is
    /// normally ordered; each cross-block rewrite strictly decreases the
    /// number of (x₁ … x₂) inversions and each in-block swap the number
    /// of in-block inversions, so the loop terminates for any entries.
    pub fn normal_form_with(&self, w: &[Gen], c: S, strategy: Strategy) -> AlgebraElement<S> {
        let n2 = self.n2();
        let mut result = AlgebraElement::zero();
        let mut pending: BTreeMap<Word, S> = BTreeMap::new();
        add_merged(&mut pending, w.to_vec(), c);
        while let Some((word, coeff)) = pending.pop_first() {
            match self.find_bad_pair(&word, strategy) {
                None => result.add_term(
                    NormalMonomial::from_word(self.n1(), n2, &word),
                    coeff,
                ),
                Some(i) => {
                    let (g, h) = (word[i], word[i + 1]);
                    if g.block == h.block {
                        let mut swapped = word;
                        swapped.swap(i, i + 1);
                        add_merged(&mut pending, swapped, coeff);
                    } else {
                        // g = x₁^λ, h = x₂^α.
                        for (b, m, v) in &self.fwd_rows[g.index * n2 + h.index] {
                            let mut next = word.clone();
                            next[i] = Gen::x2(*b);
                            next[i + 1] = Gen::x1(*m);
                            add_merged(&mut pending, next, coeff.clone() * v.clone());
                        }
                    }
                }
            }
        }
        result
    }

    /// Rewrite toward the opposite order (x₁ block first, then x₂), using
    /// the conjugate rows.  Returns the terminal words with coefficients;
    /// the words are *not* normal monomials of the algebra's own order,
    /// which is why this returns raw words.
    fn reversed_normal_form(&self, w: &[Gen], c: S) -> BTreeMap<Word, S> {
        let n2 = self.n2();
        let bad = |w: &[Gen], i: usize| -> bool {
            let (g, h) = (w[i], w[i + 1]);
            match (g.block, h.block) {
                (Block::X2, Block::X1) => true,
                _ if g.block == h.block => g.index > h.index,
                _ => false,
            }
        };
        let mut result: BTreeMap<Word, S> = BTreeMap::new();
        let mut pending: BTreeMap<Word, S> = BTreeMap::new();
        add_merged(&mut pending, w.to_vec(), c);
        while let Some((word, coeff)) = pending.pop_first() {
            match (0..word.len().saturating_sub(1)).find(|&i| bad(&word, i)) {
                None => add_merged(&mut result, word, coeff),
                Some(i) => {
                    let (g, h) = (word[i], word[i + 1]);
                    if g.block == h.block {
                        let mut swapped = word;
                        swapped.swap(i, i + 1);
                        add_merged(&mut pending, swapped, coeff);
                    } else {
                        // g = x₂^α, h = x₁^λ: apply x₂^α x₁^λ → Σ R̄ x₁^μ x₂^β.
                        for (b, m, v) in &self.bwd_rows[h.index * n2 + g.index] {
                            let mut next = word.clone();
                            next[i] = Gen::x1(*m);
                            next[i + 1] = Gen::x2(*b);
                            add_merged(&mut pending, next, coeff.clone() * v.clone());
                        }
                    }
                }
            }
        }
        result
    }

    /// Product of two elements: concatenate normal words pairwise and
    /// reduce.
    pub fn multiply(&self, a: &AlgebraElement<S>, b: &AlgebraElement<S>) -> AlgebraElement<S> {
        let mut out = AlgebraElement::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let mut w = ma.to_word();
                w.extend(mb.to_word());
                let nf = self.normal_form_with(&w, ca.clone() * cb.clone(), Strategy::Leftmost);
                out = out.add(&nf);
            }
        }
        out
    }

    /// Number of normal monomials of total degree `n`, counted by honest
    /// enumeration rather than by the closed form C(N+n−1, n).
    pub fn graded_dimension(&self, n: usize) -> usize {
        monomials_of_degree(self.n1(), self.n2(), n).len()
    }

    /// The defining quadratic relations as labelled vectors in the
    /// N²-dimensional space of ordered generator pairs, index a·N + b in
    /// the combined order.  Covers the exchange relations plus both
    /// blocks' commutators; their span has dimension C(N, 2).
    pub fn defining_relations(&self) -> Vec<(String, SVec<S>)> {
        relation_vectors(&self.r)
    }

    /// Dimension of the degree-2 component computed from the relation
    /// span rather than from monomial counting: N² − rank(relations).
    pub fn quadratic_dimension_from_relations(&self) -> usize {
        let mut space = RowSpace::new();
        for (_, v) in self.defining_relations() {
            space.insert(v);
        }
        self.n() * self.n() - space.rank()
    }

    /// True iff the element commutes with every generator.
    pub fn is_central(&self, a: &AlgebraElement<S>) -> bool {
        self.generators().into_iter().all(|g| {
            let ge = self.gen_elem(g);
            self.multiply(&ge, a) == self.multiply(a, &ge)
        })
    }

    /// ‖x₁‖² or ‖x₂‖²: the sum of squares of one block's generators.
    pub fn norm_square(&self, block: Block) -> AlgebraElement<S> {
        let count = match block {
            Block::X1 => self.n1(),
            Block::X2 => self.n2(),
        };
        AlgebraElement::from_terms((0..count).map(|i| {
            let mut m = NormalMonomial::unit(self.n1(), self.n2());
            match block {
                Block::X1 => m.m1[i] = 2,
                Block::X2 => m.m2[i] = 2,
            }
            (m, S::one())
        }))
    }

    /// ‖x‖² = ‖x₁‖² + ‖x₂‖².
    pub fn norm_square_total(&self) -> AlgebraElement<S> {
        self.norm_square(Block::X1).add(&self.norm_square(Block::X2))
    }

    /// Reduce an element modulo the chosen sphere ideal, after verifying
    /// the ideal generators are central.  Canonical form: the top-index
    /// squared generator of each constrained block is eliminated via
    /// (x^top)² → 1 − Σ (other squares), so reduced monomials carry that
    /// exponent at most once.  Idempotent on its own output.
    pub fn reduce_mod_spheres(
        &self,
        a: &AlgebraElement<S>,
        kind: QuotientKind,
    ) -> Result<AlgebraElement<S>, AlgebraError> {
        let ideal: Vec<(&str, AlgebraElement<S>)> = match kind {
            QuotientKind::Torus | QuotientKind::ProductSpheres => vec![
                ("‖x1‖²", self.norm_square(Block::X1)),
                ("‖x2‖²", self.norm_square(Block::X2)),
            ],
            QuotientKind::SevenSphere => vec![("‖x‖²", self.norm_square_total())],
        };
        for (label, g) in &ideal {
            if !self.is_central(g) {
                return Err(AlgebraError::IdealNotCentral {
                    generator: label.to_string(),
                });
            }
        }

        let (n1, n2) = (self.n1(), self.n2());
        let (top1, top2) = (n1 - 1, n2 - 1);
        let both_blocks = !matches!(kind, QuotientKind::SevenSphere);
        let mut result = AlgebraElement::zero();
        let mut pending: BTreeMap<NormalMonomial, S> = BTreeMap::new();
        for (m, c) in a.terms() {
            merge_term(&mut pending, m.clone(), c.clone());
        }
        // Each substitution either lowers the x₁ (resp. x₂) degree by two
        // or keeps it and lowers the top exponent by two, so the loop
        // terminates.
        while let Some((m, c)) = pending.pop_first() {
            if m.m1[top1] >= 2 {
                let mut base = m.clone();
                base.m1[top1] -= 2;
                // (x₁^top)² → 1 − Σ_{λ<top} (x₁^λ)² [− Σ_α (x₂^α)²].
                merge_term(&mut pending, base.clone(), c.clone());
                for l in 0..top1 {
                    let mut t = base.clone();
                    t.m1[l] += 2;
                    merge_term(&mut pending, t, -c.clone());
                }
                if !both_blocks {
                    for al in 0..n2 {
                        // The x₂² factor enters on the right of the x₁
                        // letters, so this branch needs a real reduction.
                        let mut w = base.to_word();
                        w.push(Gen::x2(al));
                        w.push(Gen::x2(al));
                        let nf = self.normal_form_with(&w, -c.clone(), Strategy::Leftmost);
                        for (t, tc) in nf.terms() {
                            merge_term(&mut pending, t.clone(), tc.clone());
                        }
                    }
                }
            } else if both_blocks && m.m2[top2] >= 2 {
                let mut base = m.clone();
                base.m2[top2] -= 2;
                merge_term(&mut pending, base.clone(), c.clone());
                for al in 0..top2 {
                    let mut t = base.clone();
                    t.m2[al] += 2;
                    merge_term(&mut pending, t, -c.clone());
                }
            } else {
                result.add_term(m, c);
            }
        }
        Ok(result)
    }

    /// Substitute x₁ → J_{q1} x₁ and x₂ → J_{q2} x₂ into every defining
    /// relation and test that each image reduces to zero.  The action
    /// matrices follow the calibration in the module docs: `Right` uses
    /// J⁻ and `Left` uses J⁺.
    pub fn check_relation_invariance(
        &self,
        q1: &Quaternion<S>,
        q2: &Quaternion<S>,
        side: Side,
    ) -> Result<InvarianceReport, AlgebraError> {
        if (self.n1(), self.n2()) != (4, 4) {
            return Err(AlgebraError::BadDimensions {
                expected_n1: 4,
                expected_n2: 4,
                got_n1: self.n1(),
                got_n2: self.n2(),
            });
        }
        for q in [q1, q2] {
            if !q.is_unit() {
                return Err(AlgebraError::NotUnit {
                    value: format!("{:?}", q.norm_sqr()),
                });
            }
        }
        let sign = match side {
            Side::Right => Sign::Minus,
            Side::Left => Sign::Plus,
        };
        let m1 = j_of_quaternion(sign, q1);
        let m2 = j_of_quaternion(sign, q2);
        check_substitution_invariance(self, self, &m1, &m2)
    }

    /// Randomized confluence evidence: for `trials` random words of
    /// length ≤ `max_len`, (a) the leftmost and rightmost reduction
    /// strategies must agree, and (b) rewriting the word's normal
    /// monomials into the opposite order and back must reproduce them
    /// exactly (the double-rewrite involution).
    pub fn check_confluence_sample(
        &self,
        trials: usize,
        max_len: usize,
        seed: u64,
    ) -> ConfluenceReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.n();
        let mut report = ConfluenceReport {
            words_checked: trials,
            strategy_disagreements: 0,
            involution_failures: 0,
        };
        for _ in 0..trials {
            let len = rng.random_range(1..=max_len.max(1));
            let word: Word = (0..len)
                .map(|_| self.gen_of_flat(rng.random_range(0..n)))
                .collect();
            let left = self.normal_form_with(&word, S::one(), Strategy::Leftmost);
            let right = self.normal_form_with(&word, S::one(), Strategy::Rightmost);
            if left != right {
                report.strategy_disagreements += 1;
            }
            // Involution on the sorted word's monomial.
            let m = NormalMonomial::from_word(self.n1(), self.n2(), &word);
            if !self.double_rewrite_fixes(&m) {
                report.involution_failures += 1;
            }
        }
        report
    }

    /// Whether rewriting the monomial's word into x₁-first order and back
    /// reproduces exactly the monomial.
    pub fn double_rewrite_fixes(&self, m: &NormalMonomial) -> bool {
        let reversed = self.reversed_normal_form(&m.to_word(), S::one());
        let mut back = AlgebraElement::zero();
        for (w, c) in reversed {
            back = back.add(&self.normal_form_with(&w, c, Strategy::Leftmost));
        }
        back == AlgebraElement::monomial(m.clone(), S::one())
    }
}

fn add_merged<S: Scalar>(map: &mut BTreeMap<Word, S>, w: Word, c: S) {
    if c.is_zero() {
        return;
    }
    match map.entry(w) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let sum = e.get().clone() + c;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

fn merge_term<S: Scalar>(map: &mut BTreeMap<NormalMonomial, S>, m: NormalMonomial, c: S) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let sum = e.get().clone() + c;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

/// All normal monomials of the given total degree, in the order induced
/// by ascending multidegree.  Block-1 exponents come first in the
/// multidegree vector, matching the combined generator order.
pub fn monomials_of_degree(n1: usize, n2: usize, degree: usize) -> Vec<NormalMonomial> {
    fn fill(slots: usize, total: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for k in 0..=total {
            prefix.push(k);
            fill(slots - 1, total - k, prefix, out);
            prefix.pop();
        }
    }
    let mut multidegrees = Vec::new();
    fill(n1 + n2, degree, &mut Vec::new(), &mut multidegrees);
    multidegrees
        .into_iter()
        .map(|v| NormalMonomial {
            m1: v[..n1].to_vec(),
            m2: v[n1..].to_vec(),
        })
        .collect()
}

/// The defining quadratic relations of the algebra attached to `r`, as
/// labelled vectors in the N²-dimensional space of ordered generator
/// pairs (index a·N + b in the combined order).  Exchange relations
/// first, then both blocks' commutators; the span has dimension C(N, 2).
/// Available without axiom gating so the relation space of a candidate
/// tensor can be examined even when the rewriting engine would refuse it.
pub fn relation_vectors<S: Scalar>(r: &RMatrix<S>) -> Vec<(String, SVec<S>)> {
    let (n1, n2) = (r.n1(), r.n2());
    let n = n1 + n2;
    let rows = r.rewrite_rows();
    let mut out = Vec::new();
    for l in 0..n1 {
        for a in 0..n2 {
            let mut v: SVec<S> = vec![(l * n + (n1 + a), S::one())];
            for (b, m, coeff) in &rows[l * n2 + a] {
                v.push(((n1 + b) * n + m, -coeff.clone()));
            }
            out.push((format!("x1_{l} x2_{a} exchange"), svec_normalize(v)));
        }
    }
    for a in 0..n1 {
        for b in (a + 1)..n1 {
            let v = vec![(a * n + b, S::one()), (b * n + a, -S::one())];
            out.push((format!("x1_{a} x1_{b} commutator"), v));
        }
    }
    for a in 0..n2 {
        for b in (a + 1)..n2 {
            let v = vec![
                ((n1 + a) * n + (n1 + b), S::one()),
                ((n1 + b) * n + (n1 + a), -S::one()),
            ];
            out.push((format!("x2_{a} x2_{b} commutator"), v));
        }
    }
    out
}

/// Substitute x₁ → M1·x₁ and x₂ → M2·x₂ (per block, x^a ↦ Σ_b M_{ab} x^b)
/// into every defining relation of `source`, reduce each image in
/// `target`, and report the relations whose image is nonzero.  With
/// `source = target` this checks invariance of one algebra under the
/// substitution; with two engines it checks that the substitution maps
/// the first algebra's relations into the second's ideal.
pub fn check_substitution_invariance<S: Scalar>(
    source: &Engine<S>,
    target: &Engine<S>,
    m1: &Mat<S>,
    m2: &Mat<S>,
) -> Result<InvarianceReport, AlgebraError> {
    let (n1, n2, n) = (source.n1(), source.n2(), source.n());
    if (target.n1(), target.n2()) != (n1, n2)
        || (m1.rows, m1.cols) != (n1, n1)
        || (m2.rows, m2.cols) != (n2, n2)
    {
        return Err(AlgebraError::BadDimensions {
            expected_n1: n1,
            expected_n2: n2,
            got_n1: target.n1().min(m1.rows),
            got_n2: target.n2().min(m2.rows),
        });
    }
    let entry = |a: usize, b: usize| -> &S {
        // Coefficient of x^b in the image of x^a (blocks never mix).
        if a < n1 {
            m1.at(a, b)
        } else {
            m2.at(a - n1, b - n1)
        }
    };
    let same_block = |a: usize, b: usize| (a < n1) == (b < n1);

    let mut report = InvarianceReport {
        relations_checked: 0,
        failures: Vec::new(),
    };
    for (label, relation) in source.defining_relations() {
        report.relations_checked += 1;
        let mut image = AlgebraElement::zero();
        for (idx, c) in &relation {
            let (a, b) = (idx / n, idx % n);
            for ap in 0..n {
                if !same_block(a, ap) {
                    continue;
                }
                let ca = entry(a, ap);
                if ca.is_zero() {
                    continue;
                }
                for bp in 0..n {
                    if !same_block(b, bp) {
                        continue;
                    }
                    let cb = entry(b, bp);
                    if cb.is_zero() {
                        continue;
                    }
                    let w = vec![target.gen_of_flat(ap), target.gen_of_flat(bp)];
                    let coeff = c.clone() * ca.clone() * cb.clone();
                    image = image.add(&target.normal_form_with(
                        &w,
                        coeff,
                        Strategy::Leftmost,
                    ));
                }
            }
        }
        if !image.is_zero() {
            report.failures.push(format!("{label}: residual {image}"));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_family, FamilySpec};
    use crate::quaternion::reflection_matrix;
    use crate::scalar::GaussianRational;
    use num_rational::BigRational;

    type Q = GaussianRational;

    fn engine(json: serde_json::Value) -> Engine<Q> {
        let spec = FamilySpec::from_value(json).unwrap();
        Engine::new(make_family::<Q>(&spec).unwrap()).unwrap()
    }

    fn classical_engine(n1: usize, n2: usize) -> Engine<Q> {
        Engine::new(RMatrix::classical(n1, n2)).unwrap()
    }

    fn theta4_engine() -> Engine<Q> {
        engine(serde_json::json!({
            "kind": "theta4",
            "params": {"u": "3/5", "v": "4/5"},
        }))
    }

    fn quaternionic_engine(sign: &str) -> Engine<Q> {
        engine(serde_json::json!({
            "kind": "quaternionic",
            "sign": sign,
            "params": {
                "u0": "1/3", "u1": "2/3", "u2": "2/3",
                "n1_hat": [1, 0, 0], "n2_hat": [0, 1, 0],
            },
        }))
    }

    fn mono(e: &Engine<Q>, w: &[Gen]) -> AlgebraElement<Q> {
        AlgebraElement::monomial(NormalMonomial::from_word(e.n1(), e.n2(), w), Q::one())
    }

    fn sample_element(e: &Engine<Q>, rng: &mut ChaCha8Rng, max_deg: usize) -> AlgebraElement<Q> {
        let mut out = AlgebraElement::zero();
        for _ in 0..3 {
            let len = rng.random_range(0..=max_deg);
            let w: Word = (0..len)
                .map(|_| e.gen_of_flat(rng.random_range(0..e.n())))
                .collect();
            let c = Q::rat(rng.random_range(-3..=3), rng.random_range(1..=3));
            out = out.add(&e.normal_form_with(&w, c, Strategy::Leftmost));
        }
        out
    }

    #[test]
    fn words_sort_into_normal_order() {
        let e = classical_engine(2, 3);
        // Same-block letters commute into ascending order.
        assert_eq!(
            e.normal_form(&[Gen::x1(1), Gen::x1(0)]),
            mono(&e, &[Gen::x1(0), Gen::x1(1)])
        );
        assert_eq!(
            e.normal_form(&[Gen::x2(2), Gen::x2(0), Gen::x2(1)]),
            mono(&e, &[Gen::x2(0), Gen::x2(1), Gen::x2(2)])
        );
        // The classical cross rewrite is the plain flip.
        assert_eq!(
            e.normal_form(&[Gen::x1(0), Gen::x2(1)]),
            mono(&e, &[Gen::x2(1), Gen::x1(0)])
        );
        // Already-normal words are fixed.
        let w = [Gen::x2(0), Gen::x2(2), Gen::x1(0), Gen::x1(1)];
        assert_eq!(e.normal_form(&w), mono(&e, &w));
    }

    #[test]
    fn theta4_cross_rewrite_is_the_expected_combination() {
        let e = theta4_engine();
        // x1_0 x2_0 → (3/5)·x2_0 x1_0 − (4/5)i·x2_1 x1_1.
        let nf = e.normal_form(&[Gen::x1(0), Gen::x2(0)]);
        let expected = AlgebraElement::from_terms([
            (
                NormalMonomial::from_word(2, 2, &[Gen::x2(0), Gen::x1(0)]),
                Q::rat(3, 5),
            ),
            (
                NormalMonomial::from_word(2, 2, &[Gen::x2(1), Gen::x1(1)]),
                -(Q::i() * Q::rat(4, 5)),
            ),
        ]);
        assert_eq!(nf, expected);

        // The double rewrite fixes every length-2 normal word exactly.
        for a in 0..2 {
            for l in 0..2 {
                let m = NormalMonomial::from_word(2, 2, &[Gen::x2(a), Gen::x1(l)]);
                assert!(e.double_rewrite_fixes(&m), "failed at x2_{a} x1_{l}");
            }
        }
    }

    #[test]
    fn engine_construction_requires_the_axioms() {
        let a: Mat<Q> = Mat::identity(4);
        let b: Mat<Q> = Mat::identity(4);
        let c: Mat<Q> = crate::quaternion::j_matrix(Sign::Plus, 1);
        let r = RMatrix::from_abcd(&a, &b, &c, &c).unwrap();
        let err = Engine::new(r).unwrap_err();
        match err {
            AlgebraError::AxiomsNotVerified { failing } => {
                assert!(failing.iter().any(|n| n == "reality"), "{failing:?}");
            }
            other => panic!("expected AxiomsNotVerified, got {other:?}"),
        }
    }

    #[test]
    fn multiply_matches_literal_normal_form_and_is_associative() {
        let e = theta4_engine();
        let words: [&[Gen]; 4] = [
            &[Gen::x1(0)],
            &[Gen::x1(1), Gen::x2(0)],
            &[Gen::x2(1), Gen::x1(0)],
            &[Gen::x1(0), Gen::x1(1), Gen::x2(1)],
        ];
        for w1 in words {
            for w2 in words {
                let product = e.multiply(&e.normal_form(w1), &e.normal_form(w2));
                let mut cat = w1.to_vec();
                cat.extend_from_slice(w2);
                assert_eq!(product, e.normal_form(&cat), "{w1:?} · {w2:?}");
            }
        }
        // Associativity on a few sampled triples of degree ≤ 3.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let x = sample_element(&e, &mut rng, 3);
            let y = sample_element(&e, &mut rng, 3);
            let z = sample_element(&e, &mut rng, 3);
            assert_eq!(
                e.multiply(&e.multiply(&x, &y), &z),
                e.multiply(&x, &e.multiply(&y, &z))
            );
        }
        // Linearity against the sum of the two-letter expansions.
        let sum = e
            .normal_form(&[Gen::x1(0), Gen::x2(0)])
            .add(&e.normal_form(&[Gen::x1(1), Gen::x2(0)]));
        let lhs = e.multiply(
            &e.gen_elem(Gen::x1(0)).add(&e.gen_elem(Gen::x1(1))),
            &e.gen_elem(Gen::x2(0)),
        );
        assert_eq!(lhs, sum);
    }

    #[test]
    fn graded_dimensions_match_the_closed_form() {
        fn binomial(n: usize, k: usize) -> usize {
            let mut v = 1usize;
            for i in 0..k {
                v = v * (n - i) / (i + 1);
            }
            v
        }
        let e = theta4_engine();
        for n in 0..=5 {
            assert_eq!(e.graded_dimension(n), binomial(n + 3, n), "degree {n}");
        }
        assert_eq!(e.quadratic_dimension_from_relations(), 10);

        let q = quaternionic_engine("+");
        assert_eq!(q.graded_dimension(2), 36);
        assert_eq!(q.graded_dimension(3), 120);
        assert_eq!(q.graded_dimension(4), 330);
        assert_eq!(q.quadratic_dimension_from_relations(), 36);
        // The relation span has the complementary dimension C(8,2).
        let mut space = RowSpace::new();
        for (_, v) in q.defining_relations() {
            space.insert(v);
        }
        assert_eq!(space.rank(), 28);
    }

    #[test]
    fn norm_squares_are_central_and_generators_are_not() {
        let e = theta4_engine();
        assert!(e.is_central(&e.norm_square(Block::X1)));
        assert!(e.is_central(&e.norm_square(Block::X2)));
        assert!(e.is_central(&e.norm_square_total()));
        assert!(e.is_central(&e.one()));
        assert!(!e.is_central(&e.gen_elem(Gen::x1(0))));
    }

    #[test]
    fn torus_reduction_matches_the_defining_substitutions() {
        let e = theta4_engine();
        // ‖x1‖² → 1.
        assert_eq!(
            e.reduce_mod_spheres(&e.norm_square(Block::X1), QuotientKind::Torus)
                .unwrap(),
            e.one()
        );
        // x2_0·‖x1‖² → x2_0 (centrality lets the factor pass through).
        let lhs = e.multiply(&e.gen_elem(Gen::x2(0)), &e.norm_square(Block::X1));
        assert_eq!(
            e.reduce_mod_spheres(&lhs, QuotientKind::Torus).unwrap(),
            e.gen_elem(Gen::x2(0))
        );
        // (x1_1)² → 1 − (x1_0)².
        let top_sq = AlgebraElement::monomial(
            NormalMonomial {
                m2: vec![0, 0],
                m1: vec![0, 2],
            },
            Q::one(),
        );
        let expected = e.one().sub(&AlgebraElement::monomial(
            NormalMonomial {
                m2: vec![0, 0],
                m1: vec![2, 0],
            },
            Q::one(),
        ));
        assert_eq!(
            e.reduce_mod_spheres(&top_sq, QuotientKind::Torus).unwrap(),
            expected
        );
        // Idempotence and multiplicativity on random samples.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let x = sample_element(&e, &mut rng, 4);
            let y = sample_element(&e, &mut rng, 3);
            let rx = e.reduce_mod_spheres(&x, QuotientKind::Torus).unwrap();
            assert_eq!(
                e.reduce_mod_spheres(&rx, QuotientKind::Torus).unwrap(),
                rx
            );
            let xy = e.reduce_mod_spheres(&e.multiply(&x, &y), QuotientKind::Torus).unwrap();
            let ry = e.reduce_mod_spheres(&y, QuotientKind::Torus).unwrap();
            let rxy = e
                .reduce_mod_spheres(&e.multiply(&rx, &ry), QuotientKind::Torus)
                .unwrap();
            assert_eq!(xy, rxy);
        }
    }

    #[test]
    fn seven_sphere_reduction_eliminates_the_top_square() {
        let e = quaternionic_engine("+");
        // (x1_3)² → 1 − Σ over every other generator's square.
        let top_sq = AlgebraElement::monomial(
            NormalMonomial {
                m2: vec![0; 4],
                m1: vec![0, 0, 0, 2],
            },
            Q::one(),
        );
        let mut expected = e.one();
        for l in 0..3 {
            let mut m = NormalMonomial::unit(4, 4);
            m.m1[l] = 2;
            expected.add_term(m, -Q::one());
        }
        for a in 0..4 {
            let mut m = NormalMonomial::unit(4, 4);
            m.m2[a] = 2;
            expected.add_term(m, -Q::one());
        }
        assert_eq!(
            e.reduce_mod_spheres(&top_sq, QuotientKind::SevenSphere)
                .unwrap(),
            expected
        );
        // Idempotence and multiplicativity on random samples.
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..4 {
            let x = sample_element(&e, &mut rng, 3);
            let y = sample_element(&e, &mut rng, 2);
            let rx = e.reduce_mod_spheres(&x, QuotientKind::SevenSphere).unwrap();
            assert_eq!(
                e.reduce_mod_spheres(&rx, QuotientKind::SevenSphere).unwrap(),
                rx
            );
            let xy = e
                .reduce_mod_spheres(&e.multiply(&x, &y), QuotientKind::SevenSphere)
                .unwrap();
            let ry = e.reduce_mod_spheres(&y, QuotientKind::SevenSphere).unwrap();
            let rxy = e
                .reduce_mod_spheres(&e.multiply(&rx, &ry), QuotientKind::SevenSphere)
                .unwrap();
            assert_eq!(xy, rxy);
        }
    }

    #[test]
    fn quotient_reduction_rejects_non_central_ideals() {
        // An engine whose R-matrix passes the rewrite preconditions but
        // not the centrality sums would be needed here; instead check the
        // error path cheaply on a broken tensor via the unchecked
        // constructor, where ‖x1‖² genuinely fails is_central.
        let a: Mat<Q> = Mat::identity(4);
        let c: Mat<Q> = crate::quaternion::j_matrix(Sign::Plus, 1);
        let r = RMatrix::from_abcd(&a, &a, &c, &c).unwrap();
        let e = Engine::new_unchecked(r);
        assert!(!e.is_central(&e.norm_square(Block::X1)));
        let err = e
            .reduce_mod_spheres(&e.one(), QuotientKind::Torus)
            .unwrap_err();
        assert_eq!(
            err,
            AlgebraError::IdealNotCentral {
                generator: "‖x1‖²".into()
            }
        );
    }

    #[test]
    fn relation_invariance_holds_for_the_stated_actions() {
        let plus = quaternionic_engine("+");
        let one = Quaternion::<Q>::one();
        let q1 = Quaternion::from_rationals(&[
            BigRational::new(1.into(), 3.into()),
            BigRational::new(2.into(), 3.into()),
            BigRational::new(2.into(), 3.into()),
            BigRational::new(0.into(), 1.into()),
        ]);
        let q2 = Quaternion::from_rationals(&[
            BigRational::new(3.into(), 5.into()),
            BigRational::new(0.into(), 1.into()),
            BigRational::new(4.into(), 5.into()),
            BigRational::new(0.into(), 1.into()),
        ]);
        // Identity substitution always passes.
        let id = plus
            .check_relation_invariance(&one, &one, Side::Right)
            .unwrap();
        assert!(id.all_pass());
        // The + family is invariant under the right action.
        let right = plus.check_relation_invariance(&q1, &q2, Side::Right).unwrap();
        assert!(right.all_pass(), "{:?}", right.failures);
        // And the − family under the left action.
        let minus = quaternionic_engine("-");
        let left = minus.check_relation_invariance(&q1, &q2, Side::Left).unwrap();
        assert!(left.all_pass(), "{:?}", left.failures);
        // The complementary action at a generic point does not preserve
        // the relations (recorded as a computed fact, not an axiom).
        let cross = plus.check_relation_invariance(&q1, &q2, Side::Left).unwrap();
        assert!(!cross.all_pass());

        // Error paths: non-unit quaternion, wrong block sizes.
        let bad = Quaternion::from_ints([1, 1, 0, 0]);
        assert!(matches!(
            plus.check_relation_invariance(&bad, &one, Side::Right),
            Err(AlgebraError::NotUnit { .. })
        ));
        let small = theta4_engine();
        assert!(matches!(
            small.check_relation_invariance(&one, &one, Side::Right),
            Err(AlgebraError::BadDimensions { .. })
        ));
    }

    #[test]
    fn reflection_carries_plus_relations_onto_minus() {
        let plus = quaternionic_engine("+");
        let minus = quaternionic_engine("-");
        let t: Mat<Q> = reflection_matrix();
        let report = check_substitution_invariance(&plus, &minus, &t, &t).unwrap();
        assert!(report.all_pass(), "{:?}", report.failures);
        // The identity map does not: the two sets of relations differ.
        let id: Mat<Q> = Mat::identity(4);
        let trivial = check_substitution_invariance(&plus, &minus, &id, &id).unwrap();
        assert!(!trivial.all_pass());
    }

    #[test]
    fn confluence_sampling_accepts_valid_families_and_flags_broken_input() {
        for e in [
            classical_engine(2, 2),
            theta4_engine(),
            quaternionic_engine("+"),
        ] {
            let report = e.check_confluence_sample(100, 4, 42);
            assert!(report.all_pass(), "{report:?}");
        }
        // Corrupt one entry of the theta4 tensor: rewriting still
        // terminates, but normal forms are order-dependent.
        let spec = FamilySpec::from_value(serde_json::json!({
            "kind": "theta4",
            "params": {"u": "3/5", "v": "4/5"},
        }))
        .unwrap();
        let good = make_family::<Q>(&spec).unwrap();
        let broken = RMatrix::from_fn(2, 2, |l, a, b, m| {
            if (l, a, b, m) == (0, 0, 0, 0) {
                Q::one()
            } else {
                good.get(l, a, b, m).clone()
            }
        });
        assert!(!check_axioms(&broken).engine_ready());
        let e = Engine::new_unchecked(broken);
        let mut mismatches = 0;
        let gens: Vec<Gen> = (0..4).map(|i| e.gen_of_flat(i)).collect();
        for &a in &gens {
            for &b in &gens {
                for &c in &gens {
                    let w = vec![a, b, c];
                    let left = e.normal_form_with(&w, Q::one(), Strategy::Leftmost);
                    let right = e.normal_form_with(&w, Q::one(), Strategy::Rightmost);
                    if left != right {
                        mismatches += 1;
                    }
                }
            }
        }
        assert!(mismatches > 0, "expected some order-dependent word");
    }

    #[test]
    fn element_json_round_trip() {
        let e = theta4_engine();
        let x = e
            .normal_form(&[Gen::x1(0), Gen::x2(0), Gen::x1(1)])
            .scale(&Q::rat(5, 3));
        let json = x.to_json();
        let back = AlgebraElement::<Q>::from_json(&json).unwrap();
        assert_eq!(back, x);
        assert!(AlgebraElement::<Q>::from_json(&serde_json::json!([{"m2": [0]}])).is_err());
    }
}
