//! Exact-arithmetic computer algebra for noncommutative products of
//! Euclidean spaces.
//!
//! The objects of study are quadratic *-algebras 𝒜_R generated by two
//! families of hermitian elements x₁^λ (λ = 1..N₁) and x₂^α (α = 1..N₂)
//! subject to
//!
//! ```text
//! x₁^λ x₁^μ = x₁^μ x₁^λ,   x₂^α x₂^β = x₂^β x₂^α,
//! x₁^λ x₂^α = R^{λα}_{βμ} x₂^β x₁^μ,
//! ```
//!
//! for an R-matrix subject to a reality condition, the Yang–Baxter
//! equation, and centrality/Euclidean conditions. The crate constructs the
//! known solution families (classical, 4-dimensional θ-deformations and
//! their 8-dimensional toric, quaternionic and stratum generalisations
//! built from quaternionic J-matrices), and machine-verifies every
//! structural identity these algebras satisfy: axiom batteries on R,
//! Poincaré-series dimension counts, Koszul dual relations and Koszul
//! complex homology, generalized Clifford algebras with their Γ(x)² and
//! PBW properties, central sphere quotients (quaternionic tori and
//! seven-spheres), and the SU(2)×SU(2) symmetry of the quaternionic
//! families.
//!
//! All computations default to exact Gaussian-rational arithmetic; a
//! tolerance-tagged complex floating mode is available for irrational
//! parameters.
//!
//! Index conventions used throughout: letters λ, μ, ν, ρ index the first
//! block (1..N₁); α, β, γ, δ index the second block (1..N₂). The R tensor
//! is stored under the fixed index order (λ, α, β, μ).

pub mod algebra;
pub mod cli;
pub mod families;
pub mod koszul;
pub mod linalg;
pub mod quaternion;
pub mod rmatrix;
pub mod scalar;
