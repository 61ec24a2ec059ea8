//! Cones of divisors on Grassmann bundles over a base with known cone data.
//!
//! For a semistable bundle E of rank r with vanishing discriminant, the
//! pseudoeffective cone of the bundle of k-dimensional quotients is spanned
//! by the normalized tautological class λ = ξ − (k/r)·π*c1(E) together with
//! the pullbacks of the effective generators of the base. Over a surface
//! whose closed cone of curves is polyhedral, the nef cone is cut out by
//! y₀ ≥ 0 and one inequality k·y₀·μ(E|_C) + γ·C ≥ 0 per curve generator C.
//!
//! Divisor classes on the Grassmann bundle are written in the basis
//! (ξ, π*b₁, …, π*b_ρ) extending the base lattice basis; towers of fiber
//! products prepend one ξ coordinate per stage.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cone::Cone;
use crate::error::Error;
use crate::rational::{self, Rational};
use crate::surface::{self, SurfaceBundle, SurfaceLattice};
use crate::vector::RatVec;
use crate::Result;

/// A cone of divisor classes together with the labels of its basis.
#[derive(Clone, Debug)]
pub struct GrassmannCone {
    pub basis_labels: Vec<String>,
    pub cone: Cone,
}

/// The normalized tautological class λ = ξ − (k/r)·π*c1(E), the extra
/// extremal ray of the pseudoeffective cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaClass {
    coefficients: RatVec,
}

impl LambdaClass {
    /// Coordinates (1, −(k/r)·c1) in the Grassmann divisor basis.
    pub fn coefficients(&self) -> &RatVec {
        &self.coefficients
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut result = BigInt::one();
    for i in 0..k {
        result = result * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    result
}

/// Builds λ for a rank-r bundle with the given first Chern class. The
/// normalization against the Plücker line bundle is
/// c1(∧ᵏE)/rk(∧ᵏE) = C(r−1,k−1)/C(r,k)·c1 and the binomial ratio is computed
/// exactly and checked against its closed form k/r.
pub fn lambda_class(rank: u32, k: u32, c1: &RatVec) -> Result<LambdaClass> {
    if k == 0 || k > rank {
        return Err(Error::KOutOfRange { k, rank });
    }
    let ratio = Rational::new(binomial(rank - 1, k - 1), binomial(rank, k));
    let expected = rational::ratio(i64::from(k), i64::from(rank));
    assert_eq!(ratio, expected, "binomial identity C(r-1,k-1)/C(r,k) = k/r must hold");
    Ok(LambdaClass {
        coefficients: c1.scale(&-ratio).prepend(rational::int(1)),
    })
}

fn grassmann_labels(lattice: &SurfaceLattice) -> Vec<String> {
    let mut labels = Vec::with_capacity(1 + lattice.rho());
    labels.push(String::from("xi"));
    labels.extend(lattice.basis_labels().iter().map(|l| alloc::format!("pi*{l}")));
    labels
}

fn check_k(bundle: &SurfaceBundle, k: u32) -> Result<()> {
    if k == 0 || k > bundle.rank() {
        return Err(Error::KOutOfRange {
            k,
            rank: bundle.rank(),
        });
    }
    Ok(())
}

/// The pseudoeffective cone: canonical generators of
/// cone{λ} + cone{π* of each base effective generator}.
///
/// The bundle must be semistable with vanishing discriminant; this is
/// checked for decomposable bundles and taken on the caller's assertion
/// otherwise. A failed precondition is an error, never a wrong answer.
pub fn eff_cone(
    lattice: &SurfaceLattice,
    bundle: &SurfaceBundle,
    k: u32,
    base_eff_generators: &[RatVec],
) -> Result<GrassmannCone> {
    check_k(bundle, k)?;
    if base_eff_generators.is_empty() {
        return Err(Error::EmptyBaseGenerators);
    }
    surface::ensure_semistable_with_zero_discriminant(lattice, bundle)?;
    let lambda = lambda_class(bundle.rank(), k, bundle.c1())?;
    let mut gens = Vec::with_capacity(1 + base_eff_generators.len());
    gens.push(lambda.coefficients().clone());
    for g in base_eff_generators {
        gens.push(g.prepend(Rational::zero()));
    }
    let cone = Cone::from_generators(1 + lattice.rho(), gens)?.canonicalize()?;
    Ok(GrassmannCone {
        basis_labels: grassmann_labels(lattice),
        cone,
    })
}

/// The nef cone over a base with polyhedral cone of curves: half-spaces
/// y₀ ≥ 0 and (k·μ(E|_{C_j}), γ ↦ γ·C_j) for every curve generator C_j,
/// converted to canonical generators. The returned cone carries both the
/// inequality system (primitive, in construction order) and the generators.
pub fn nef_cone_surface(
    lattice: &SurfaceLattice,
    bundle: &SurfaceBundle,
    k: u32,
) -> Result<GrassmannCone> {
    check_k(bundle, k)?;
    if lattice.curve_generators().is_empty() {
        return Err(Error::MissingCurveGenerators);
    }
    surface::ensure_semistable_with_zero_discriminant(lattice, bundle)?;
    let dim = 1 + lattice.rho();
    let mut halfspaces = Vec::with_capacity(1 + lattice.curve_generators().len());
    halfspaces.push(RatVec::unit(dim, 0));
    for curve in lattice.curve_generators() {
        let functional = lattice.curve_functional(curve)?;
        let slope = surface::restricted_slope(lattice, bundle, curve)?;
        let head = rational::int(i64::from(k)) * slope;
        halfspaces.push(functional.prepend(head).primitive());
    }
    let cone = Cone::from_halfspaces(dim, halfspaces)?.generator_form()?;
    Ok(GrassmannCone {
        basis_labels: grassmann_labels(lattice),
        cone,
    })
}

/// Equality of the nef and pseudoeffective cones, on the base and on the
/// Grassmann bundle. The two verdicts agree whenever the preconditions
/// genuinely hold; a disagreement means an asserted hypothesis is false.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EqualityReport {
    pub base_equal: bool,
    pub gr_equal: bool,
}

impl EqualityReport {
    pub fn is_coherent(&self) -> bool {
        self.base_equal == self.gr_equal
    }
}

/// Computes the base nef cone from the curve generators, compares it with
/// the cone spanned by the supplied base effective generators, and compares
/// the two Grassmann-bundle cones.
pub fn nef_eff_equality_report(
    lattice: &SurfaceLattice,
    bundle: &SurfaceBundle,
    k: u32,
    base_eff_generators: &[RatVec],
) -> Result<EqualityReport> {
    if base_eff_generators.is_empty() {
        return Err(Error::EmptyBaseGenerators);
    }
    let base_nef = base_nef_cone(lattice)?;
    let base_eff =
        Cone::from_generators(lattice.rho(), base_eff_generators.to_vec())?.canonicalize()?;
    let base_equal = base_nef.equals(&base_eff)?;

    let gr_eff = eff_cone(lattice, bundle, k, base_eff_generators)?;
    let gr_nef = nef_cone_surface(lattice, bundle, k)?;
    let gr_equal = gr_eff.cone.equals(&gr_nef.cone)?;
    Ok(EqualityReport {
        base_equal,
        gr_equal,
    })
}

/// Nef cone of the base itself, cut out by the curve-generator functionals.
pub fn base_nef_cone(lattice: &SurfaceLattice) -> Result<Cone> {
    if lattice.curve_generators().is_empty() {
        return Err(Error::MissingCurveGenerators);
    }
    let functionals = lattice
        .curve_generators()
        .iter()
        .map(|c| Ok(lattice.curve_functional(c)?.primitive()))
        .collect::<Result<Vec<_>>>()?;
    Cone::from_halfspaces(lattice.rho(), functionals)?.generator_form()
}

/// One stage of a tower of fiber products: a bundle and the quotient
/// dimension of its Grassmann bundle.
#[derive(Clone, Debug)]
pub struct TowerStage {
    pub bundle: SurfaceBundle,
    pub k: u32,
}

/// Cones of the tower Gr(k₁,E₁) ×_X … ×_X Gr(k_l,E_l), one per stage.
///
/// The base must have equal nef and pseudoeffective cones (computed from the
/// curve generators and checked against the cone they span; on a surface
/// divisor and curve classes share the lattice). Each stage extends the
/// basis by one leading ξ coordinate: stage i lives in (ξ_i, …, ξ_1, base),
/// is spanned by λ of the pulled-back bundle — base coordinates of c1 padded
/// with zeros in the ξ slots — together with the pullbacks of the previous
/// stage's generators, and equals both the nef and pseudoeffective cone of
/// that stage.
pub fn tower_cones(lattice: &SurfaceLattice, stages: &[TowerStage]) -> Result<Vec<GrassmannCone>> {
    if stages.is_empty() {
        return Err(Error::EmptyInput);
    }
    let base_nef = base_nef_cone(lattice)?;
    let base_eff = Cone::from_generators(
        lattice.rho(),
        lattice.curve_generators().to_vec(),
    )?
    .canonicalize()?;
    if !base_nef.equals(&base_eff)? {
        return Err(Error::BaseConesDiffer);
    }

    let mut labels: Vec<String> = lattice
        .basis_labels()
        .iter()
        .map(|l| alloc::format!("pi*{l}"))
        .collect();
    let mut gens: Vec<RatVec> = base_nef.generators().expect("canonical cone").to_vec();
    let mut out = Vec::with_capacity(stages.len());

    for (index, stage) in stages.iter().enumerate() {
        check_k(&stage.bundle, stage.k)?;
        surface::ensure_semistable_with_zero_discriminant(lattice, &stage.bundle)?;
        let lambda = lambda_class(stage.bundle.rank(), stage.k, stage.bundle.c1())?;
        let (head, tail) = {
            let entries = lambda.coefficients().entries();
            (entries[0].clone(), &entries[1..])
        };
        // ξ slots of the pulled-back c1 are zero: (1, 0…0, −(k/r)c1)
        let mut padded = Vec::with_capacity(1 + gens[0].dim().max(lattice.rho()));
        padded.push(head);
        padded.extend(core::iter::repeat_n(Rational::zero(), index));
        padded.extend(tail.iter().cloned());
        let mut stage_gens = Vec::with_capacity(1 + gens.len());
        stage_gens.push(RatVec::new(padded));
        for g in &gens {
            stage_gens.push(g.prepend(Rational::zero()));
        }
        let dim = 1 + index + lattice.rho();
        let cone = Cone::from_generators(dim, stage_gens)?.canonicalize()?;
        labels.insert(0, alloc::format!("xi_{}", index + 1));
        gens = cone.generators().expect("canonical cone").to_vec();
        out.push(GrassmannCone {
            basis_labels: labels.clone(),
            cone,
        });
    }
    Ok(out)
}
