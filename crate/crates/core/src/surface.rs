//! Numerical intersection theory on surfaces (and curves viewed as
//! one-dimensional bases).
//!
//! A base enters through a [`SurfaceLattice`]: a basis of its divisor classes
//! with a symmetric rational intersection matrix and a list of effective
//! curve classes generating the closed cone of curves. Bundles carry only
//! their numerical invariants — rank, first Chern class, the degree of the
//! second Chern class — or, when completely decomposable, the classes of
//! their line-bundle summands, from which the invariants are derived.
//!
//! Semistability comes in two flavors. For decomposable bundles it is
//! *checked*: the bundle is semistable exactly when all summands have the
//! same slope against the polarization. For anything else it is *asserted*:
//! the caller vouches for it (as for pullbacks of semistable bundles), and a
//! false assertion produces garbage downstream.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::Error;
use crate::rational::{self, Rational};
use crate::vector::RatVec;
use crate::Result;

/// Whether the lattice models a surface or a curve.
///
/// On a surface, divisor classes and curve classes live in the same lattice
/// and both pairings are the intersection form. On a curve there is no
/// product of divisors (`c1² = 0`), while a divisor pairs with the curve
/// class itself by its degree; `curve_base` encodes that by a zero gram
/// matrix together with the identity divisor/curve pairing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseKind {
    Surface,
    Curve,
}

#[derive(Clone, Debug)]
pub struct SurfaceLattice {
    kind: BaseKind,
    basis_labels: Vec<String>,
    gram: Vec<Vec<Rational>>,
    curve_generators: Vec<RatVec>,
    ample_class: Option<RatVec>,
}

impl SurfaceLattice {
    /// A surface lattice from its intersection matrix, effective curve
    /// generators, and an optional ample class (validated against the
    /// generators when present).
    pub fn surface(
        basis_labels: Vec<String>,
        gram: Vec<Vec<Rational>>,
        curve_generators: Vec<RatVec>,
        ample_class: Option<RatVec>,
    ) -> Result<Self> {
        Self::build(BaseKind::Surface, basis_labels, gram, curve_generators, ample_class)
    }

    /// The projective plane: one basis class `H` with `H² = 1`, the line as
    /// curve generator and ample class.
    pub fn projective_plane() -> Self {
        Self::surface(
            alloc::vec![String::from("H")],
            alloc::vec![alloc::vec![rational::int(1)]],
            alloc::vec![RatVec::from_ints(&[1])],
            Some(RatVec::from_ints(&[1])),
        )
        .expect("built-in lattice is valid")
    }

    /// A smooth curve as a one-dimensional base: basis class the fiber/point
    /// class `f`, zero self-pairing, degree pairing against the curve itself.
    pub fn curve_base() -> Self {
        Self::build(
            BaseKind::Curve,
            alloc::vec![String::from("f")],
            alloc::vec![alloc::vec![Rational::zero()]],
            alloc::vec![RatVec::from_ints(&[1])],
            Some(RatVec::from_ints(&[1])),
        )
        .expect("built-in lattice is valid")
    }

    /// The blow-up at a point of a section of the trivial ruled surface over
    /// an elliptic curve. Basis (C₁, C₂, C₃) = (ρ*f − Eₓ, ρ*ζ − Eₓ, Eₓ);
    /// these three classes generate the closed cone of curves, and their
    /// pairwise products give the stated gram matrix. Only the trivial twist
    /// `deg W = 0` is built in.
    pub fn blowup_ruled_elliptic(deg_w: i64) -> Result<Self> {
        if deg_w != 0 {
            return Err(Error::UnsupportedBlowup(deg_w));
        }
        let gram: Vec<Vec<Rational>> = [[-1, 0, 1], [0, -1, 1], [1, 1, -1]]
            .iter()
            .map(|row| row.iter().map(|&v| rational::int(v)).collect())
            .collect();
        Self::surface(
            alloc::vec![String::from("C1"), String::from("C2"), String::from("C3")],
            gram,
            alloc::vec![
                RatVec::from_ints(&[1, 0, 0]),
                RatVec::from_ints(&[0, 1, 0]),
                RatVec::from_ints(&[0, 0, 1]),
            ],
            Some(RatVec::from_ints(&[2, 2, 3])),
        )
    }

    fn build(
        kind: BaseKind,
        basis_labels: Vec<String>,
        gram: Vec<Vec<Rational>>,
        curve_generators: Vec<RatVec>,
        ample_class: Option<RatVec>,
    ) -> Result<Self> {
        let rho = basis_labels.len();
        if rho == 0 {
            return Err(Error::ZeroDimension);
        }
        if gram.len() != rho || gram.iter().any(|row| row.len() != rho) {
            return Err(Error::DimensionMismatch {
                expected: rho,
                found: gram.len(),
            });
        }
        #[allow(clippy::needless_range_loop)] // compares mirrored entries
        for i in 0..rho {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::GramNotSymmetric);
                }
            }
        }
        for c in &curve_generators {
            if c.dim() != rho {
                return Err(Error::DimensionMismatch {
                    expected: rho,
                    found: c.dim(),
                });
            }
        }
        let lattice = SurfaceLattice {
            kind,
            basis_labels,
            gram,
            curve_generators,
            ample_class: None,
        };
        let lattice = match ample_class {
            Some(a) => {
                lattice.validate_polarization(&a)?;
                SurfaceLattice {
                    ample_class: Some(a),
                    ..lattice
                }
            }
            None => lattice,
        };
        Ok(lattice)
    }

    pub fn kind(&self) -> BaseKind {
        self.kind
    }

    /// Picard number: the rank of the divisor class lattice.
    pub fn rho(&self) -> usize {
        self.basis_labels.len()
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn curve_generators(&self) -> &[RatVec] {
        &self.curve_generators
    }

    pub fn ample_class(&self) -> Option<&RatVec> {
        self.ample_class.as_ref()
    }

    fn check_dim(&self, v: &RatVec) -> Result<()> {
        if v.dim() != self.rho() {
            return Err(Error::DimensionMismatch {
                expected: self.rho(),
                found: v.dim(),
            });
        }
        Ok(())
    }

    /// Intersection product of two divisor classes: `aᵀ · gram · b`.
    pub fn intersect(&self, a: &RatVec, b: &RatVec) -> Result<Rational> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        let mut total = Rational::zero();
        for (ai, row) in a.entries().iter().zip(&self.gram) {
            if ai.is_zero() {
                continue;
            }
            for (gij, bj) in row.iter().zip(b.entries()) {
                total += ai * gij * bj;
            }
        }
        Ok(total)
    }

    /// The linear functional `γ ↦ γ·C` of a curve class, as a vector against
    /// divisor coordinates: `gram·C` on a surface, `C` itself on a curve.
    pub fn curve_functional(&self, curve: &RatVec) -> Result<RatVec> {
        self.check_dim(curve)?;
        match self.kind {
            BaseKind::Surface => {
                let entries: Vec<Rational> = self
                    .gram
                    .iter()
                    .map(|row| row.iter().zip(curve.entries()).map(|(g, c)| g * c).sum())
                    .collect();
                Ok(RatVec::new(entries))
            }
            BaseKind::Curve => Ok(curve.clone()),
        }
    }

    /// Degree of a divisor class on a curve class.
    pub fn degree_on_curve(&self, class: &RatVec, curve: &RatVec) -> Result<Rational> {
        self.check_dim(class)?;
        Ok(self.curve_functional(curve)?.dot(class))
    }

    /// Ampleness against the supplied curve generators: positive on each of
    /// them, plus positive self-intersection on a surface. This is the only
    /// ampleness test available from finite data; the generators are trusted
    /// to generate the closed cone of curves.
    pub fn validate_polarization(&self, polarization: &RatVec) -> Result<()> {
        self.check_dim(polarization)?;
        use num_traits::Signed;
        if self.kind == BaseKind::Surface
            && !self.intersect(polarization, polarization)?.is_positive()
        {
            return Err(Error::NotAmple);
        }
        for c in &self.curve_generators {
            if !self.degree_on_curve(polarization, c)?.is_positive() {
                return Err(Error::NotAmple);
            }
        }
        Ok(())
    }
}

/// Numerical data of a vector bundle on a lattice base.
#[derive(Clone, Debug)]
pub struct SurfaceBundle {
    rank: u32,
    c1: RatVec,
    c2_number: Rational,
    summands: Option<Vec<RatVec>>,
    asserted_semistable: bool,
}

impl SurfaceBundle {
    /// A bundle known only through its invariants. Semistability is unknown
    /// until asserted.
    pub fn from_invariants(rank: u32, c1: RatVec, c2_number: Rational) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(SurfaceBundle {
            rank,
            c1,
            c2_number,
            summands: None,
            asserted_semistable: false,
        })
    }

    /// A completely decomposable bundle `M₁ ⊕ … ⊕ M_r`, with
    /// `c1 = Σ Mᵢ` and `c2 = Σ_{i<j} Mᵢ·Mⱼ` derived through the lattice.
    pub fn decomposable(lattice: &SurfaceLattice, summands: Vec<RatVec>) -> Result<Self> {
        if summands.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut c1 = RatVec::zero(lattice.rho());
        for m in &summands {
            if m.dim() != lattice.rho() {
                return Err(Error::DimensionMismatch {
                    expected: lattice.rho(),
                    found: m.dim(),
                });
            }
            c1 = c1.add(m);
        }
        let mut c2 = Rational::zero();
        for i in 0..summands.len() {
            for j in 0..i {
                c2 += lattice.intersect(&summands[i], &summands[j])?;
            }
        }
        Ok(SurfaceBundle {
            rank: summands.len() as u32,
            c1,
            c2_number: c2,
            summands: Some(summands),
            asserted_semistable: false,
        })
    }

    /// On a rank-one lattice with ample generator `L`: the decomposable
    /// bundle `⊕ O(dᵢ·L)`.
    pub fn line_sum(lattice: &SurfaceLattice, degrees: &[Rational]) -> Result<Self> {
        if lattice.rho() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: lattice.rho(),
            });
        }
        Self::decomposable(
            lattice,
            degrees
                .iter()
                .map(|d| RatVec::new(alloc::vec![d.clone()]))
                .collect(),
        )
    }

    /// Marks the bundle as semistable on the caller's authority, for bundles
    /// whose semistability cannot be checked from the stored data.
    pub fn assert_semistable(mut self) -> Self {
        self.asserted_semistable = true;
        self
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn c1(&self) -> &RatVec {
        &self.c1
    }

    pub fn c2_number(&self) -> &Rational {
        &self.c2_number
    }

    pub fn summands(&self) -> Option<&[RatVec]> {
        self.summands.as_deref()
    }

    pub fn is_asserted_semistable(&self) -> bool {
        self.asserted_semistable
    }
}

/// Degree of the restriction `E|_C`: `c1(E)·C`.
pub fn restricted_degree(
    lattice: &SurfaceLattice,
    bundle: &SurfaceBundle,
    curve: &RatVec,
) -> Result<Rational> {
    lattice.degree_on_curve(bundle.c1(), curve)
}

/// Slope of the restriction `E|_C`: `c1(E)·C / r`.
pub fn restricted_slope(
    lattice: &SurfaceLattice,
    bundle: &SurfaceBundle,
    curve: &RatVec,
) -> Result<Rational> {
    Ok(restricted_degree(lattice, bundle, curve)? / rational::int(i64::from(bundle.rank())))
}

/// The discriminant `c2(End E) = 2r·c2(E) − (r−1)·c1(E)²`, evaluated as a
/// rational number through the lattice pairing.
pub fn discriminant(lattice: &SurfaceLattice, bundle: &SurfaceBundle) -> Result<Rational> {
    let c1_sq = lattice.intersect(bundle.c1(), bundle.c1())?;
    let r = i64::from(bundle.rank());
    Ok(rational::int(2 * r) * bundle.c2_number() - rational::int(r - 1) * c1_sq)
}

/// Checked semistability for decomposable bundles: true exactly when every
/// summand has the same slope against the polarization. Bundles without
/// summand data cannot be checked; that is reported as
/// [`Error::SemistabilityUnknown`], distinct from `false`.
pub fn is_semistable_decomposable(
    lattice: &SurfaceLattice,
    bundle: &SurfaceBundle,
    polarization: &RatVec,
) -> Result<bool> {
    lattice.validate_polarization(polarization)?;
    let summands = bundle.summands().ok_or(Error::SemistabilityUnknown)?;
    let mut degrees = summands
        .iter()
        .map(|m| lattice.degree_on_curve(m, polarization));
    let first = degrees.next().expect("decomposable bundles have summands")?;
    for d in degrees {
        if d? != first {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Gate for the cone constructions: the bundle must be semistable with
/// vanishing discriminant. Decomposable bundles are checked against the
/// lattice's ample class; everything else must carry the caller's assertion.
/// A checkable failure wins over an assertion.
pub(crate) fn ensure_semistable_with_zero_discriminant(
    lattice: &SurfaceLattice,
    bundle: &SurfaceBundle,
) -> Result<()> {
    let disc = discriminant(lattice, bundle)?;
    if !disc.is_zero() {
        return Err(Error::NonzeroDiscriminant(disc));
    }
    if bundle.summands().is_some() {
        if let Some(ample) = lattice.ample_class() {
            if !is_semistable_decomposable(lattice, bundle, ample)? {
                return Err(Error::NotSemistable);
            }
            return Ok(());
        }
    }
    if bundle.is_asserted_semistable() {
        Ok(())
    } else {
        Err(Error::SemistabilityUnknown)
    }
}
