//! Koszul duality and the Clifford deformation for the algebras 𝒜_R.
//!
//! Throughout, E is the N-dimensional span of the generators in the
//! combined index order (block 1, then block 2) and tensors over E use
//! the flat index a·N + b, matching
//! [`relation_vectors`](crate::algebra::relation_vectors).
//!
//! The quadratic dual 𝒜^! is generated by odd coordinates θ_a subject to
//!
//! ```text
//! (θ_a)² = 0,        θ_b θ_a = −θ_a θ_b          (same block, a < b),
//! θ²_β θ¹_μ = −Σ_{λ,α} R^{λα}_{βμ} θ¹_λ θ²_α ,
//! ```
//!
//! whose relation vectors pair to zero with the relations of 𝒜_R under the
//! bilinear dot product; [`koszul_dual_relations`] constructs them and
//! [`dual_relations_annihilate`] verifies the pairing.  Replacing
//! (θ_a)² = 0 by (Γ_a)² = 𝟙 gives the Clifford algebra Cℓ_R, the central
//! extension in which Γ(x) = Σ_a Γ_a ⊗ x^a squares to 𝟙 ⊗ ‖x‖²
//! ([`verify_gamma_square`]).  One rewriting engine, [`SkewEngine`],
//! handles both: its normal monomials are the strictly increasing θ-words,
//! so each graded component has the binomial dimension C(N, n) and the
//! whole algebra has dimension 2^N.  Whether the inhomogeneous Clifford
//! relations really deform 𝒜^! flatly is decided exactly by the two
//! Poincaré–Birkhoff–Witt conditions of [`check_pbw_conditions`].
//!
//! The dual's graded components also have a rewriting-free model: with
//! 𝓡 the big exchange involution on E⊗E,
//!
//! ```text
//! B_n = ∩_{j=0..n−2}  E^{⊗j} ⊗ ker(1+𝓡) ⊗ E^{⊗(n−2−j)} ,
//! ```
//!
//! computed by [`koszul_intersection_bases`] and cross-validating the
//! rewrite engine's dimensions.  The B_n are the coefficient spaces of the
//! Koszul chain complex C_n = 𝒜_{w−n} ⊗ B_n with boundary
//! b(m ⊗ v₀⊗v₁⊗…) = (m·v₀) ⊗ v₁⊗…, whose homology
//! ([`koszul_homology`]) vanishes in positive degrees exactly when 𝒜_R is
//! Koszul; the zeroth homology is ℂ, concentrated in weight 0.

use crate::algebra::{
    monomials_of_degree, relation_vectors, AlgebraElement, AlgebraError, Block, Engine, Gen,
    NormalMonomial, Strategy,
};
use crate::linalg::{
    null_combinations, nullspace, rank_of, svec_add_scaled, svec_collect, svec_dot,
    svec_from_dense, Mat, RowSpace, SpanSolver, SVec,
};
use crate::rmatrix::{assemble_big_r, check_axioms, RMatrix};
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// The span of the defining quadratic relations of 𝒜_R inside E⊗E.
/// Constructible from any tensor (no axiom gating), so the relation span
/// of a broken candidate can still be inspected.
#[derive(Clone, Debug)]
pub struct RelationSpace<S: Scalar> {
    /// Total number of generators N; vectors live in the N²-dimensional
    /// space of ordered pairs.
    pub n: usize,
    pub labels: Vec<String>,
    pub vectors: Vec<SVec<S>>,
}

impl<S: Scalar> RelationSpace<S> {
    pub fn of_rmatrix(r: &RMatrix<S>) -> Self {
        let (labels, vectors) = relation_vectors(r).into_iter().unzip();
        RelationSpace {
            n: r.n(),
            labels,
            vectors,
        }
    }

    pub fn rank(&self) -> usize {
        rank_of(self.vectors.iter().cloned())
    }
}

/// One defining relation of the Koszul dual, as a vector in E⊗E.
#[derive(Clone, Debug)]
pub struct DualRelation<S> {
    pub label: String,
    pub tensor: SVec<S>,
}

fn gen_label(n1: usize, a: usize) -> String {
    if a < n1 {
        format!("theta1_{a}")
    } else {
        format!("theta2_{}", a - n1)
    }
}

/// The C(N+1, 2) defining relations of 𝒜^!: the squares θ_a⊗θ_a, the
/// same-block symmetrizers θ_a⊗θ_b + θ_b⊗θ_a, and the cross relations
/// θ²_β⊗θ¹_μ + Σ R^{λα}_{βμ} θ¹_λ⊗θ²_α.
pub fn koszul_dual_relations<S: Scalar>(r: &RMatrix<S>) -> Vec<DualRelation<S>> {
    let (n1, n2) = (r.n1(), r.n2());
    let n = n1 + n2;
    let cols = r.rewrite_cols();
    let mut out = Vec::new();
    for a in 0..n {
        out.push(DualRelation {
            label: format!("{} squared", gen_label(n1, a)),
            tensor: vec![(a * n + a, S::one())],
        });
    }
    for a in 0..n1 {
        for b in (a + 1)..n1 {
            out.push(DualRelation {
                label: format!("theta1_{a} theta1_{b} symmetric"),
                tensor: vec![(a * n + b, S::one()), (b * n + a, S::one())],
            });
        }
    }
    for a in 0..n2 {
        for b in (a + 1)..n2 {
            out.push(DualRelation {
                label: format!("theta2_{a} theta2_{b} symmetric"),
                tensor: vec![
                    ((n1 + a) * n + (n1 + b), S::one()),
                    ((n1 + b) * n + (n1 + a), S::one()),
                ],
            });
        }
    }
    for b in 0..n2 {
        for m in 0..n1 {
            let mut t: Vec<(usize, S)> = vec![((n1 + b) * n + m, S::one())];
            for (l, a, v) in &cols[b * n1 + m] {
                t.push((l * n + (n1 + a), v.clone()));
            }
            out.push(DualRelation {
                label: format!("theta2_{b} theta1_{m} cross"),
                tensor: svec_collect(t),
            });
        }
    }
    out
}

/// Every dual relation pairs to zero with every relation of 𝒜_R under the
/// plain bilinear dot on E⊗E — the defining property of the dual.
pub fn dual_relations_annihilate<S: Scalar>(r: &RMatrix<S>) -> bool {
    let rels = relation_vectors(r);
    koszul_dual_relations(r)
        .iter()
        .all(|d| rels.iter().all(|(_, v)| svec_dot(&d.tensor, v).is_zero()))
}

/// A normally ordered monomial in the θ (or Γ) generators: a strictly
/// increasing list of combined generator indices.  Ascending combined
/// order puts the whole block-1 word before the block-2 word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SkewMonomial {
    pub letters: Vec<usize>,
}

impl SkewMonomial {
    pub fn unit() -> Self {
        SkewMonomial {
            letters: Vec::new(),
        }
    }

    pub fn generator(a: usize) -> Self {
        SkewMonomial { letters: vec![a] }
    }

    pub fn degree(&self) -> usize {
        self.letters.len()
    }
}

/// An element of 𝒜^! or Cℓ_R: a finite sum of normal monomials with
/// nonzero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewElement<S: Scalar> {
    terms: BTreeMap<SkewMonomial, S>,
}

impl<S: Scalar> SkewElement<S> {
    pub fn zero() -> Self {
        SkewElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(m: SkewMonomial, c: S) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SkewMonomial, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &SkewMonomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, m: SkewMonomial, c: S) {
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

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero();
        for (m, c) in self.terms() {
            out.add_term(m.clone(), c.clone() * s.clone());
        }
        out
    }
}

/// Whether a repeated letter rewrites to zero (the dual 𝒜^!) or to the
/// unit (the Clifford algebra Cℓ_R).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkewKind {
    Dual,
    Clifford,
}

/// Rewriting engine for 𝒜^! and Cℓ_R.  Rules, applied to adjacent pairs
/// that are not strictly increasing:
///
/// ```text
/// θ_a θ_a → 0 (dual) or 𝟙 (Clifford),
/// θ_b θ_a → −θ_a θ_b                       (same block, a < b),
/// θ²_β θ¹_μ → −Σ R^{λα}_{βμ} θ¹_λ θ²_α    (block 2 past block 1).
/// ```
pub struct SkewEngine<S: Scalar> {
    n1: usize,
    n2: usize,
    kind: SkewKind,
    /// (β·N₁ + μ) → nonzero (λ, α, R^{λα}_{βμ}) for the cross rule.
    cross: Vec<Vec<(usize, usize, S)>>,
}

impl<S: Scalar> SkewEngine<S> {
    /// The Koszul dual's engine, gated on the same identities that make
    /// the 𝒜_R rewriting canonical.
    pub fn dual(r: &RMatrix<S>) -> Result<Self, AlgebraError> {
        Self::checked(r, SkewKind::Dual)
    }

    /// The Clifford algebra's engine, same gating.
    pub fn clifford(r: &RMatrix<S>) -> Result<Self, AlgebraError> {
        Self::checked(r, SkewKind::Clifford)
    }

    fn checked(r: &RMatrix<S>, kind: SkewKind) -> Result<Self, AlgebraError> {
        let report = check_axioms(r);
        if !report.engine_ready() {
            return Err(AlgebraError::AxiomsNotVerified {
                failing: report.failing_names(),
            });
        }
        Ok(Self::unchecked(r, kind))
    }

    /// Build without the precondition check; rewriting still terminates,
    /// but normal forms are only canonical when the identities hold.
    pub fn unchecked(r: &RMatrix<S>, kind: SkewKind) -> Self {
        SkewEngine {
            n1: r.n1(),
            n2: r.n2(),
            kind,
            cross: r.rewrite_cols(),
        }
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn n(&self) -> usize {
        self.n1 + self.n2
    }

    pub fn kind(&self) -> SkewKind {
        self.kind
    }

    pub fn one(&self) -> SkewElement<S> {
        SkewElement::monomial(SkewMonomial::unit(), S::one())
    }

    pub fn gen_elem(&self, a: usize) -> SkewElement<S> {
        SkewElement::monomial(SkewMonomial::generator(a), S::one())
    }

    /// Human-readable form of a monomial, with block-aware letter names.
    pub fn render(&self, m: &SkewMonomial) -> String {
        if m.letters.is_empty() {
            return "1".into();
        }
        let stem = match self.kind {
            SkewKind::Dual => "theta",
            SkewKind::Clifford => "gamma",
        };
        m.letters
            .iter()
            .map(|&a| {
                if a < self.n1 {
                    format!("{stem}1_{a}")
                } else {
                    format!("{stem}2_{}", a - self.n1)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn find_bad_pair(&self, w: &[usize], strategy: Strategy) -> Option<usize> {
        let bad = |i: usize| w[i] >= w[i + 1];
        match strategy {
            Strategy::Leftmost => (0..w.len().saturating_sub(1)).find(|&i| bad(i)),
            Strategy::Rightmost => (0..w.len().saturating_sub(1)).rev().find(|&i| bad(i)),
        }
    }

    /// Normal form of `c·w` under the chosen strategy.  Each cross rewrite
    /// strictly decreases the number of block-2-before-block-1 inversions
    /// and the other rules shorten the word or decrease in-block
    /// inversions, so the worklist terminates.
    pub fn normal_form_with(&self, w: &[usize], c: S, strategy: Strategy) -> SkewElement<S> {
        let mut work: BTreeMap<Vec<usize>, S> = BTreeMap::new();
        add_word(&mut work, w.to_vec(), c);
        let mut out = SkewElement::zero();
        while let Some((word, coeff)) = work.pop_first() {
            if coeff.is_zero() {
                continue;
            }
            let Some(i) = self.find_bad_pair(&word, strategy) else {
                out.add_term(SkewMonomial { letters: word }, coeff);
                continue;
            };
            let (a, b) = (word[i], word[i + 1]);
            if a == b {
                if self.kind == SkewKind::Clifford {
                    let mut shorter = word.clone();
                    shorter.drain(i..i + 2);
                    add_word(&mut work, shorter, coeff);
                }
                // Dual: the word vanishes.
            } else if (a < self.n1) == (b < self.n1) {
                let mut swapped = word.clone();
                swapped.swap(i, i + 1);
                add_word(&mut work, swapped, -coeff);
            } else {
                // a in block 2 past b in block 1 (descending across blocks).
                let (beta, mu) = (a - self.n1, b);
                for (l, al, v) in &self.cross[beta * self.n1 + mu] {
                    let mut next = word.clone();
                    next[i] = *l;
                    next[i + 1] = self.n1 + al;
                    add_word(&mut work, next, -(v.clone() * coeff.clone()));
                }
            }
        }
        out
    }

    pub fn normal_form(&self, w: &[usize]) -> SkewElement<S> {
        self.normal_form_with(w, S::one(), Strategy::Leftmost)
    }

    pub fn multiply(&self, a: &SkewElement<S>, b: &SkewElement<S>) -> SkewElement<S> {
        let mut out = SkewElement::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let mut w = ma.letters.clone();
                w.extend_from_slice(&mb.letters);
                out = out.add(&self.normal_form_with(
                    &w,
                    ca.clone() * cb.clone(),
                    Strategy::Leftmost,
                ));
            }
        }
        out
    }

    /// All normal monomials of the given degree: the strictly increasing
    /// k-subsets of the N letters, in lexicographic order.
    pub fn basis_of_degree(&self, k: usize) -> Vec<SkewMonomial> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(k);
        subsets(0, self.n(), k, &mut current, &mut out);
        out
    }

    /// dim of the degree-k component by basis enumeration (C(N, k)).
    pub fn graded_dimension(&self, k: usize) -> usize {
        self.basis_of_degree(k).len()
    }

    /// Total dimension by enumeration over all degrees (2^N).
    pub fn total_dimension(&self) -> usize {
        (0..=self.n()).map(|k| self.graded_dimension(k)).sum()
    }

    /// Rank of the span of the normal forms of all length-k generator
    /// words — an independent route to the degree-k dimension that
    /// exercises the rewriting instead of the subset count.  (For the
    /// Clifford kind lower-degree terms appear; the rank is taken inside
    /// the full 2^N-dimensional space.)
    pub fn spanned_dimension_of_degree(&self, k: usize) -> usize {
        let mut space = RowSpace::new();
        let mut word = vec![0usize; k];
        loop {
            space.insert(self.element_as_svec(&self.normal_form(&word)));
            // Advance the odometer over the alphabet 0..N.
            let mut pos = k;
            loop {
                if pos == 0 {
                    return space.rank();
                }
                pos -= 1;
                word[pos] += 1;
                if word[pos] < self.n() {
                    break;
                }
                word[pos] = 0;
            }
        }
    }

    /// Rank of the span of all pairwise products of basis monomials,
    /// inside the 2^N-dimensional monomial space.  Equals 2^N exactly when
    /// the multiplication does not collapse the basis.
    pub fn product_span_dimension(&self) -> usize {
        let basis: Vec<SkewMonomial> = (0..=self.n())
            .flat_map(|k| self.basis_of_degree(k))
            .collect();
        let mut space = RowSpace::new();
        for u in &basis {
            for v in &basis {
                let prod = self.multiply(
                    &SkewElement::monomial(u.clone(), S::one()),
                    &SkewElement::monomial(v.clone(), S::one()),
                );
                space.insert(self.element_as_svec(&prod));
            }
        }
        space.rank()
    }

    /// A sparse vector over the 2^N monomial basis, indexed by the subset
    /// bitmask of the letters.
    fn element_as_svec(&self, e: &SkewElement<S>) -> SVec<S> {
        svec_collect(
            e.terms()
                .map(|(m, c)| {
                    let mask = m.letters.iter().fold(0usize, |acc, &a| acc | (1 << a));
                    (mask, c.clone())
                })
                .collect(),
        )
    }
}

fn add_word<S: Scalar>(map: &mut BTreeMap<Vec<usize>, S>, w: Vec<usize>, c: S) {
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

fn subsets(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<SkewMonomial>) {
    if current.len() == k {
        out.push(SkewMonomial {
            letters: current.clone(),
        });
        return;
    }
    for a in start..n {
        current.push(a);
        subsets(a + 1, n, k, current, out);
        current.pop();
    }
}

/// Sparse columns of the big exchange involution: for each pair index
/// (c·N + d), the nonzero (c′·N + d′, 𝓡^{c′d′}_{cd}).
fn big_r_cols<S: Scalar>(r: &RMatrix<S>) -> Vec<Vec<(usize, S)>> {
    let big = assemble_big_r(r);
    let n = big.n();
    let mut cols = vec![Vec::new(); n * n];
    for cp in 0..n {
        for dp in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let v = big.get(cp, dp, c, d);
                    if !v.is_zero() {
                        cols[c * n + d].push((cp * n + dp, v.clone()));
                    }
                }
            }
        }
    }
    cols
}

/// Bases of B_n = ∩_j E^j ⊗ ker(1+𝓡) ⊗ E^{n−2−j} for n = 0..=max_n,
/// each vector sparse over E^{⊗n} with index Σ aᵢ·N^{n−1−i}.
///
/// B₀ = span(1) and B₁ = E; B₂ = ker(1+𝓡); higher levels come from the
/// recursion B_{n+1} = (B_n ⊗ E) ∩ (E^{n−1} ⊗ ker(1+𝓡)), solved by
/// finding the combinations of the candidates b⊗e_a annihilated by 1+𝓡
/// acting on the last two slots.
pub fn koszul_intersection_bases<S: Scalar>(r: &RMatrix<S>, max_n: usize) -> Vec<Vec<SVec<S>>> {
    let n = r.n();
    let mut bases: Vec<Vec<SVec<S>>> = Vec::with_capacity(max_n + 1);
    bases.push(vec![vec![(0, S::one())]]);
    if max_n == 0 {
        return bases;
    }
    bases.push((0..n).map(|a| vec![(a, S::one())]).collect());
    if max_n == 1 {
        return bases;
    }
    let big = assemble_big_r(r).as_matrix();
    let one_plus = big.add(&Mat::identity(n * n));
    bases.push(
        nullspace(&one_plus)
            .iter()
            .map(|v| svec_from_dense(v))
            .collect(),
    );
    let cols = big_r_cols(r);
    for k in 2..max_n {
        let bk = &bases[k];
        let mut candidates: Vec<SVec<S>> = Vec::new();
        for b in bk {
            for a in 0..n {
                // (1 ⊗ … ⊗ (1+𝓡)) applied to b⊗e_a: the identity part plus
                // 𝓡 acting on the pair (last letter of b, a).
                let mut t: Vec<(usize, S)> = Vec::new();
                for (idx, c) in b {
                    let prefix = idx / n;
                    let last = idx % n;
                    t.push((idx * n + a, c.clone()));
                    for (cd, rv) in &cols[last * n + a] {
                        t.push((prefix * n * n + cd, c.clone() * rv.clone()));
                    }
                }
                candidates.push(svec_collect(t));
            }
        }
        let combos = null_combinations(candidates);
        let mut next: Vec<SVec<S>> = Vec::with_capacity(combos.len());
        for combo in combos {
            let mut v: Vec<(usize, S)> = Vec::new();
            for (j, coeff) in combo {
                let (i, a) = (j / n, j % n);
                for (idx, c) in &bases[k][i] {
                    v.push((idx * n + a, coeff.clone() * c.clone()));
                }
            }
            next.push(svec_collect(v));
        }
        bases.push(next);
    }
    bases
}

/// Dimensions of the intersection spaces B_0..=B_max_n.
pub fn koszul_intersection_dims<S: Scalar>(r: &RMatrix<S>, max_n: usize) -> Vec<usize> {
    koszul_intersection_bases(r, max_n)
        .iter()
        .map(Vec::len)
        .collect()
}

/// One homology entry of the Koszul complex at a fixed weight.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomologyRow {
    pub weight: usize,
    pub n: usize,
    #[serde(rename = "dim_H")]
    pub dim_h: usize,
    /// Dimensions of the chain spaces C_k = 𝒜_{w−k} ⊗ B_k at this weight.
    pub dims: Vec<usize>,
}

/// Homology of the Koszul complex for all weights up to a cap.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomologyTable {
    pub rows: Vec<HomologyRow>,
    /// Whether applying the boundary twice gave zero on every chain basis
    /// vector that was reached.
    pub boundary_square_is_zero: bool,
}

impl HomologyTable {
    pub fn dim_h(&self, weight: usize, n: usize) -> Option<usize> {
        self.rows
            .iter()
            .find(|r| r.weight == weight && r.n == n)
            .map(|r| r.dim_h)
    }

    /// H_n = 0 for every n ≥ 1 in every computed weight.
    pub fn positive_degrees_vanish(&self) -> bool {
        self.rows.iter().filter(|r| r.n >= 1).all(|r| r.dim_h == 0)
    }

    /// The complex resolves ℂ: H_0 is 1-dimensional in weight 0 and
    /// everything else vanishes.
    pub fn is_resolution_of_scalars(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.dim_h == usize::from(r.weight == 0 && r.n == 0))
            && self.dim_h(0, 0) == Some(1)
    }

    /// JSON shape: a list of {"weight", "n", "dim_H", "dims"} objects.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(&self.rows).expect("homology rows serialize")
    }
}

/// Homology of the Koszul complex of 𝒜_R, weight by weight up to
/// `max_weight`.  For each weight w the complex is
///
/// ```text
/// 0 → 𝒜_{w−n_max}⊗B_{n_max} → … → 𝒜_{w−1}⊗E → 𝒜_w → 0 ,
/// ```
///
/// the boundary multiplies the first tensor slot into the algebra factor,
/// and H_n = dim C_n − rank b_n − rank b_{n+1}.  Requires a valid R-matrix
/// (the algebra multiplication must be canonical).
pub fn koszul_homology<S: Scalar>(
    r: &RMatrix<S>,
    max_weight: usize,
) -> Result<HomologyTable, AlgebraError> {
    let engine = Engine::new(r.clone())?;
    let (n1, n2, nn) = (engine.n1(), engine.n2(), engine.n());
    // One level past N when the weights reach it, so that emptiness of
    // B_{N+1} is computed rather than assumed.
    let max_n = max_weight.min(nn + 1);
    let bases = koszul_intersection_bases(r, max_n);
    let solvers: Vec<SpanSolver<S>> = bases
        .iter()
        .map(|basis| {
            let mut s = SpanSolver::new();
            for b in basis {
                s.insert(b.clone());
            }
            s
        })
        .collect();
    let mono_lists: Vec<Vec<NormalMonomial>> = (0..=max_weight)
        .map(|d| monomials_of_degree(n1, n2, d))
        .collect();
    let mono_index: Vec<BTreeMap<NormalMonomial, usize>> = mono_lists
        .iter()
        .map(|list| {
            list.iter()
                .enumerate()
                .map(|(i, m)| (m.clone(), i))
                .collect()
        })
        .collect();

    let mut rows = Vec::new();
    let mut boundary_square_is_zero = true;
    for weight in 0..=max_weight {
        let top = weight.min(max_n);
        let dims: Vec<usize> = (0..=top)
            .map(|k| mono_lists[weight - k].len() * bases[k].len())
            .collect();
        let mut ranks = vec![0usize; top + 2];
        let mut prev_images: Vec<SVec<S>> = Vec::new();
        for k in 1..=top {
            let deg_src = weight - k;
            let dim_b_tgt = bases[k - 1].len();
            let mut images: Vec<SVec<S>> = Vec::new();
            for m in &mono_lists[deg_src] {
                let m_elem = AlgebraElement::monomial(m.clone(), S::one());
                for bvec in &bases[k] {
                    images.push(boundary_image(
                        &engine,
                        k,
                        &m_elem,
                        bvec,
                        &solvers[k - 1],
                        &mono_index[deg_src + 1],
                        dim_b_tgt,
                    ));
                }
            }
            if k >= 2 {
                for img in &images {
                    let mut acc: SVec<S> = Vec::new();
                    for (flat, c) in img {
                        acc = svec_add_scaled(&acc, &prev_images[*flat], c);
                    }
                    if !acc.is_empty() {
                        boundary_square_is_zero = false;
                    }
                }
            }
            ranks[k] = rank_of(images.iter().cloned());
            prev_images = images;
        }
        for n in 0..=top {
            // dim ker − dim im; the saturation can only engage when the
            // boundary fails to square to zero, which the table flags.
            rows.push(HomologyRow {
                weight,
                n,
                dim_h: dims[n].saturating_sub(ranks[n] + ranks[n + 1]),
                dims: dims.clone(),
            });
        }
    }
    Ok(HomologyTable {
        rows,
        boundary_square_is_zero,
    })
}

/// Boundary of the chain m ⊗ v with v ∈ B_k: split off the first tensor
/// slot, multiply it into the algebra factor, and express the remaining
/// B_{k−1} component in the target chain basis (index = monomial·dim B + b).
fn boundary_image<S: Scalar>(
    engine: &Engine<S>,
    k: usize,
    m_elem: &AlgebraElement<S>,
    bvec: &SVec<S>,
    target_solver: &SpanSolver<S>,
    target_mono_index: &BTreeMap<NormalMonomial, usize>,
    dim_b_tgt: usize,
) -> SVec<S> {
    let nn = engine.n();
    let stride = nn.pow((k - 1) as u32);
    let mut slices: Vec<SVec<S>> = vec![Vec::new(); nn];
    for (idx, c) in bvec {
        slices[idx / stride].push((idx % stride, c.clone()));
    }
    let mut out: Vec<(usize, S)> = Vec::new();
    for (a, slice) in slices.into_iter().enumerate() {
        if slice.is_empty() {
            continue;
        }
        let coords = target_solver
            .solve(slice)
            .expect("first-slot slices of an intersection vector stay one level down");
        let prod = engine.multiply(m_elem, &engine.gen_elem(engine.gen_of_flat(a)));
        for (mono, c2) in prod.terms() {
            let mi = target_mono_index[mono];
            for (bi, c3) in &coords {
                out.push((mi * dim_b_tgt + bi, c2.clone() * c3.clone()));
            }
        }
    }
    svec_collect(out)
}

/// Outcome of expanding (Γ(x))² in Cℓ ⊗ 𝒜 for Γ(x) = Σ_a Γ_a ⊗ x^a.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaSquareReport {
    /// Σ_{λμ} Γ¹_λΓ¹_μ ⊗ x₁^λx₁^μ = 𝟙 ⊗ ‖x₁‖².
    pub block1: bool,
    /// Σ_{αβ} Γ²_αΓ²_β ⊗ x₂^αx₂^β = 𝟙 ⊗ ‖x₂‖².
    pub block2: bool,
    /// The cross terms cancel: Σ Γ¹Γ² ⊗ x₁x₂ + Σ Γ²Γ¹ ⊗ x₂x₁ = 0.
    pub mixed: bool,
    /// The full square equals 𝟙 ⊗ ‖x‖².
    pub total: bool,
}

impl GammaSquareReport {
    pub fn all_pass(&self) -> bool {
        self.block1 && self.block2 && self.mixed && self.total
    }
}

type TensorMap<S> = BTreeMap<(SkewMonomial, NormalMonomial), S>;

fn tensor_add<S: Scalar>(map: &mut TensorMap<S>, cl: &SkewElement<S>, alg: &AlgebraElement<S>) {
    for (mc, cc) in cl.terms() {
        for (ma, ca) in alg.terms() {
            let key = (mc.clone(), ma.clone());
            let add = cc.clone() * ca.clone();
            match map.entry(key) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(add);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get().clone() + add;
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
    }
}

fn squared_monomial(n1: usize, n2: usize, g: Gen) -> NormalMonomial {
    let mut m = NormalMonomial::unit(n1, n2);
    match g.block {
        Block::X1 => m.m1[g.index] += 2,
        Block::X2 => m.m2[g.index] += 2,
    }
    m
}

/// Expand (Γ(x))² = Σ_{a,b} Γ_aΓ_b ⊗ x^a x^b with the Γ's reduced in `cl`
/// and the x's in `alg`, and compare each block of the sum with its value
/// in the central extension: the same-block sums give 𝟙 ⊗ ‖x₁‖² and
/// 𝟙 ⊗ ‖x₂‖², the cross terms cancel, and the total is 𝟙 ⊗ ‖x‖².  All
/// four hold exactly when the two engines reduce by matching relation
/// sets; a mismatch shows up in the mixed (and total) terms.
pub fn verify_gamma_square<S: Scalar>(
    cl: &SkewEngine<S>,
    alg: &Engine<S>,
) -> Result<GammaSquareReport, AlgebraError> {
    if cl.n1() != alg.n1() || cl.n2() != alg.n2() {
        return Err(AlgebraError::BadDimensions {
            expected_n1: cl.n1(),
            expected_n2: cl.n2(),
            got_n1: alg.n1(),
            got_n2: alg.n2(),
        });
    }
    let (n1, n2, n) = (alg.n1(), alg.n2(), alg.n());
    let pair = |a: usize, b: usize| -> (SkewElement<S>, AlgebraElement<S>) {
        (
            cl.normal_form(&[a, b]),
            alg.normal_form(&[alg.gen_of_flat(a), alg.gen_of_flat(b)]),
        )
    };
    let block_sum = |range_a: std::ops::Range<usize>, range_b: std::ops::Range<usize>| {
        let mut map = TensorMap::new();
        for a in range_a {
            for b in range_b.clone() {
                let (c, x) = pair(a, b);
                tensor_add(&mut map, &c, &x);
            }
        }
        map
    };
    let expected_squares = |range: std::ops::Range<usize>| {
        let mut map = TensorMap::new();
        for a in range {
            map.insert(
                (
                    SkewMonomial::unit(),
                    squared_monomial(n1, n2, alg.gen_of_flat(a)),
                ),
                S::one(),
            );
        }
        map
    };

    let block1 = block_sum(0..n1, 0..n1) == expected_squares(0..n1);
    let block2 = block_sum(n1..n, n1..n) == expected_squares(n1..n);
    let mut mixed_map = block_sum(0..n1, n1..n);
    for ((m, x), c) in block_sum(n1..n, 0..n1) {
        match mixed_map.entry((m, x)) {
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
    let mixed = mixed_map.is_empty();
    let total = block_sum(0..n, 0..n) == expected_squares(0..n);
    Ok(GammaSquareReport {
        block1,
        block2,
        mixed,
        total,
    })
}

/// One inhomogeneous Clifford relation: the quadratic part q (a vector in
/// E⊗E) together with its constant term, so that q − ψ₀·𝟙 vanishes in Cℓ.
#[derive(Clone, Debug)]
pub struct CliffordRelation<S: Scalar> {
    pub label: String,
    pub quadratic: SVec<S>,
    pub psi0: S,
}

/// The C(N+1, 2) Clifford relations: squares Γ_a⊗Γ_a with constant term 1,
/// same-block symmetrizers and cross relations with constant term 0.
pub fn clifford_relations<S: Scalar>(r: &RMatrix<S>) -> Vec<CliffordRelation<S>> {
    koszul_dual_relations(r)
        .into_iter()
        .enumerate()
        .map(|(i, rel)| {
            let is_square = i < r.n();
            debug_assert_eq!(is_square, rel.label.ends_with("squared"));
            CliffordRelation {
                label: rel.label,
                quadratic: rel.tensor,
                psi0: if is_square { S::one() } else { S::zero() },
            }
        })
        .collect()
}

/// Result of the two Poincaré–Birkhoff–Witt conditions for the filtered
/// relations {q − ψ₀(q)}.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PbwReport {
    pub relation_count: usize,
    pub relation_rank: usize,
    /// (i) the quadratic parts are linearly independent, so ψ₀ extends to
    /// a well-defined functional on their span.
    pub condition_i: bool,
    /// Dimension of the overlap space R⊗E ∩ E⊗R.
    pub overlap_kernel_dim: usize,
    pub failing_overlaps: usize,
    /// (ii) ψ₀⊗1 and 1⊗ψ₀ agree on every overlap element.
    pub condition_ii: bool,
}

impl PbwReport {
    pub fn all_pass(&self) -> bool {
        self.condition_i && self.condition_ii
    }
}

/// Check the PBW conditions for an arbitrary list of filtered quadratic
/// relations over N generators.  Condition (ii) is evaluated on a spanning
/// set of R⊗E ∩ E⊗R obtained as the null combinations of the cubic
/// tensors q_i⊗e_a and e_a⊗q_i: for a combination Σ c·(q⊗e) + Σ c′·(e⊗q)
/// that vanishes in E^{⊗3}, the common value t = Σ c·(q⊗e) = −Σ c′·(e⊗q)
/// ranges over the whole overlap space, and (ψ₀⊗1 − 1⊗ψ₀)(t) = 0 becomes
/// the vanishing of Σ over all terms of c·ψ₀(q)·e_a in E.
pub fn check_pbw_of_relations<S: Scalar>(
    n: usize,
    relations: &[CliffordRelation<S>],
) -> PbwReport {
    let relation_count = relations.len();
    let relation_rank = rank_of(relations.iter().map(|rel| rel.quadratic.clone()));
    let condition_i = relation_rank == relation_count;

    let mut candidates: Vec<SVec<S>> = Vec::new();
    let mut meta: Vec<(usize, usize)> = Vec::new();
    for (i, rel) in relations.iter().enumerate() {
        for a in 0..n {
            candidates.push(
                rel.quadratic
                    .iter()
                    .map(|(pq, c)| (pq * n + a, c.clone()))
                    .collect(),
            );
            meta.push((i, a));
        }
    }
    for a in 0..n {
        for (i, rel) in relations.iter().enumerate() {
            candidates.push(
                rel.quadratic
                    .iter()
                    .map(|(pq, c)| (a * n * n + pq, c.clone()))
                    .collect(),
            );
            meta.push((i, a));
        }
    }
    let combos = null_combinations(candidates);
    let overlap_kernel_dim = combos.len();
    let mut failing_overlaps = 0;
    for combo in &combos {
        let mut e_part = vec![S::zero(); n];
        for (k, c) in combo {
            let (i, a) = meta[*k];
            e_part[a] = e_part[a].clone() + c.clone() * relations[i].psi0.clone();
        }
        if e_part.iter().any(|v| !v.is_zero()) {
            failing_overlaps += 1;
        }
    }
    PbwReport {
        relation_count,
        relation_rank,
        condition_i,
        overlap_kernel_dim,
        failing_overlaps,
        condition_ii: failing_overlaps == 0,
    }
}

/// The PBW conditions for the Clifford relations of `r`.  No axiom gating:
/// the conditions themselves are the test.
pub fn check_pbw_conditions<S: Scalar>(r: &RMatrix<S>) -> PbwReport {
    check_pbw_of_relations(r.n(), &clifford_relations(r))
}
