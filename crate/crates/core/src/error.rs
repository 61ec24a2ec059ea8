use alloc::fmt;

use crate::rational::Rational;

/// Errors from cone, curve, surface and Grassmann computations.
///
/// Two kinds of failure are distinguished: malformed input (dimension
/// mismatches, out-of-range indices, inconsistent data) and violated
/// mathematical hypotheses (a bundle that is not semistable, a nonzero
/// discriminant). [`Error::is_hypothesis_failure`] tells them apart so
/// callers can report them differently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    DimensionMismatch { expected: usize, found: usize },
    ZeroDimension,
    EmptyInput,
    KOutOfRange { k: u32, rank: u32 },
    SlopesNotDecreasing,
    ZeroRank,
    GramNotSymmetric,
    UnsupportedBlowup(i64),
    InconsistentBundle(&'static str),
    NoGenerators,
    NoHalfspaces,
    /// The supplied polarization is not positive on the curve generators
    /// (or has non-positive self-intersection on a surface).
    NotAmple,
    MissingCurveGenerators,
    EmptyBaseGenerators,
    /// Checked semistability failed: the line-bundle summands have unequal
    /// slopes against the polarization, so the bundle has a destabilizing
    /// subbundle.
    NotSemistable,
    /// Semistability is not decidable from `(rank, c1, c2)` alone; it must
    /// either be checked from summand data or asserted by the caller.
    SemistabilityUnknown,
    /// The discriminant `2r·c2 − (r−1)·c1²` is nonzero; the cone formulas
    /// require a semistable bundle with vanishing discriminant.
    NonzeroDiscriminant(Rational),
    /// The nef and pseudoeffective cones of the base differ; the tower
    /// construction needs them to coincide.
    BaseConesDiffer,
}

impl Error {
    /// True when the error reports a violated mathematical hypothesis rather
    /// than malformed input.
    pub fn is_hypothesis_failure(&self) -> bool {
        matches!(
            self,
            Error::NotAmple
                | Error::MissingCurveGenerators
                | Error::EmptyBaseGenerators
                | Error::NotSemistable
                | Error::SemistabilityUnknown
                | Error::NonzeroDiscriminant(_)
                | Error::BaseConesDiffer
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::ZeroDimension => write!(f, "dimension must be positive"),
            Error::EmptyInput => write!(f, "input list must be nonempty"),
            Error::KOutOfRange { k, rank } => {
                write!(f, "k = {k} is out of range 1..={rank}")
            }
            Error::SlopesNotDecreasing => {
                write!(f, "Harder-Narasimhan slopes must be strictly decreasing")
            }
            Error::ZeroRank => write!(f, "ranks must be positive"),
            Error::GramNotSymmetric => write!(f, "intersection matrix must be symmetric"),
            Error::UnsupportedBlowup(d) => {
                write!(f, "unsupported ruled-surface twist deg W = {d}; only deg W = 0 is built in")
            }
            Error::InconsistentBundle(msg) => write!(f, "inconsistent bundle data: {msg}"),
            Error::NoGenerators => write!(f, "cone has no generator representation"),
            Error::NoHalfspaces => write!(f, "cone has no half-space representation"),
            Error::NotAmple => write!(
                f,
                "polarization is not ample: it must pair positively with every curve generator \
                 and have positive self-intersection"
            ),
            Error::MissingCurveGenerators => {
                write!(f, "the lattice carries no curve generators; the nef cone needs them")
            }
            Error::EmptyBaseGenerators => {
                write!(f, "no effective generators supplied for the base")
            }
            Error::NotSemistable => write!(
                f,
                "bundle is not semistable: its line-bundle summands have unequal slopes, so a \
                 maximal-slope summand destabilizes it"
            ),
            Error::SemistabilityUnknown => write!(
                f,
                "semistability is not decidable from (rank, c1, c2) alone; supply summand data \
                 or assert it explicitly"
            ),
            Error::NonzeroDiscriminant(d) => write!(
                f,
                "discriminant 2r·c2 − (r−1)·c1² = {} is nonzero; the cone formulas require a \
                 semistable bundle with vanishing discriminant",
                crate::rational::display(d)
            ),
            Error::BaseConesDiffer => write!(
                f,
                "the nef and pseudoeffective cones of the base differ; the tower construction \
                 requires them to coincide"
            ),
        }
    }
}

impl core::error::Error for Error {}
