//! Numerical bundle data over a smooth curve.
//!
//! A bundle enters only through the numerical shadow of its
//! Harder-Narasimhan filtration: the ordered list of (rank, slope) pairs of
//! the semistable quotients, with strictly decreasing slopes. From that data
//! the thresholds θ and ζ give the boundary slopes of the nef and
//! pseudoeffective cones of the Grassmann bundle of k-dimensional quotients,
//! in the basis (ξ, f) of the tautological class and a fiber.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::cone::Cone;
use crate::error::Error;
use crate::rational::{self, Rational};
use crate::vector::RatVec;
use crate::Result;

/// One semistable quotient of the Harder-Narasimhan filtration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnPiece {
    pub rank: u32,
    pub slope: Rational,
}

/// Harder-Narasimhan data: quotient ranks and strictly decreasing slopes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnData {
    pieces: Vec<HnPiece>,
}

impl HnData {
    pub fn new(pieces: Vec<(u32, Rational)>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::EmptyInput);
        }
        for window in pieces.windows(2) {
            if window[0].1 <= window[1].1 {
                return Err(Error::SlopesNotDecreasing);
            }
        }
        if pieces.iter().any(|&(rank, _)| rank == 0) {
            return Err(Error::ZeroRank);
        }
        Ok(HnData {
            pieces: pieces
                .into_iter()
                .map(|(rank, slope)| HnPiece { rank, slope })
                .collect(),
        })
    }

    /// Single-piece data of a semistable bundle.
    pub fn semistable(rank: u32, slope: Rational) -> Result<Self> {
        HnData::new(alloc::vec![(rank, slope)])
    }

    pub fn pieces(&self) -> &[HnPiece] {
        &self.pieces
    }

    pub fn is_semistable(&self) -> bool {
        self.pieces.len() == 1
    }

    /// Total rank of the bundle.
    pub fn rank(&self) -> u32 {
        self.pieces.iter().map(|p| p.rank).sum()
    }

    /// Total degree Σ rankᵢ·slopeᵢ.
    pub fn degree(&self) -> Rational {
        self.pieces
            .iter()
            .map(|p| rational::int(i64::from(p.rank)) * &p.slope)
            .sum()
    }

    fn check_k(&self, k: u32) -> Result<()> {
        let rank = self.rank();
        if k == 0 || k > rank {
            Err(Error::KOutOfRange { k, rank })
        } else {
            Ok(())
        }
    }
}

/// Harder-Narasimhan data of a direct sum of line bundles of the given
/// degrees: summands of equal degree form one semistable piece, and the
/// pieces are ordered by decreasing degree.
pub fn hn_of_line_bundle_sum(degrees: &[Rational]) -> Result<HnData> {
    if degrees.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut sorted = degrees.to_vec();
    sorted.sort();
    sorted.reverse();
    let mut pieces: Vec<(u32, Rational)> = Vec::new();
    for d in sorted {
        match pieces.last_mut() {
            Some((rank, slope)) if *slope == d => *rank += 1,
            _ => pieces.push((1, d)),
        }
    }
    HnData::new(pieces)
}

/// Nef-cone threshold θ: with t the smallest index such that
/// rk(E/E_t) < k, returns (k − rk(E/E_t))·μ(E_t/E_{t−1}) + deg(E/E_t).
/// Such a t always exists because rk(E/E_l) = 0. For semistable data this is
/// k·μ(E).
pub fn theta(hn: &HnData, k: u32) -> Result<Rational> {
    hn.check_k(k)?;
    let pieces = hn.pieces();
    let mut suffix_rank: u32 = pieces.iter().map(|p| p.rank).sum();
    for (idx, piece) in pieces.iter().enumerate() {
        suffix_rank -= piece.rank;
        if suffix_rank < k {
            let suffix_degree: Rational = pieces[idx + 1..]
                .iter()
                .map(|p| rational::int(i64::from(p.rank)) * &p.slope)
                .sum();
            let partial = rational::int(i64::from(k - suffix_rank)) * &piece.slope;
            return Ok(partial + suffix_degree);
        }
    }
    unreachable!("the final quotient has rank 0 < k")
}

/// Pseudoeffective-cone threshold ζ: with t the smallest index such that
/// rk(E_{t+1}) > k, returns (k − rk(E_t))·μ(E_{t+1}/E_t) + deg(E_t), with
/// deg(E_0) = 0. When no such t exists (k equals the rank), the coefficient
/// k − rk(E_l) vanishes and ζ = deg(E).
pub fn zeta(hn: &HnData, k: u32) -> Result<Rational> {
    hn.check_k(k)?;
    let mut prefix_rank: u32 = 0;
    let mut prefix_degree = Rational::zero();
    for piece in hn.pieces() {
        if prefix_rank + piece.rank > k {
            let partial = rational::int(i64::from(k - prefix_rank)) * &piece.slope;
            return Ok(partial + prefix_degree);
        }
        prefix_rank += piece.rank;
        prefix_degree += rational::int(i64::from(piece.rank)) * &piece.slope;
    }
    Ok(prefix_degree)
}

/// The nef and pseudoeffective cones of the Grassmann bundle of
/// k-dimensional quotients over a curve, in the (ξ, f) basis.
#[derive(Clone, Debug)]
pub struct CurveGrassmannCones {
    pub k: u32,
    pub theta: Rational,
    pub zeta: Rational,
    pub nef: Cone,
    pub eff: Cone,
}

impl CurveGrassmannCones {
    pub const BASIS: [&'static str; 2] = ["xi", "f"];
}

/// Builds nef = cone{ξ − θf, f} and eff = cone{ξ − ζf, f}, canonicalized.
pub fn curve_cones(hn: &HnData, k: u32) -> Result<CurveGrassmannCones> {
    let theta = theta(hn, k)?;
    let zeta = zeta(hn, k)?;
    let nef = threshold_cone(&theta)?;
    let eff = threshold_cone(&zeta)?;
    debug_assert!(nef
        .generators()
        .unwrap()
        .iter()
        .all(|g| eff.contains(g).unwrap()));
    Ok(CurveGrassmannCones {
        k,
        theta,
        zeta,
        nef,
        eff,
    })
}

fn threshold_cone(threshold: &Rational) -> Result<Cone> {
    let gens = alloc::vec![
        RatVec::new(alloc::vec![rational::int(1), -threshold.clone()]),
        RatVec::from_ints(&[0, 1]),
    ];
    Cone::from_generators(2, gens)?.canonicalize()
}

/// Nef and pseudoeffective cones of a fiber product of two Grassmann bundles
/// over the same curve, in the (ξ, η, F) basis.
#[derive(Clone, Debug)]
pub struct FiberProductCones {
    pub nef: Cone,
    pub eff: Cone,
}

impl FiberProductCones {
    pub const BASIS: [&'static str; 3] = ["xi", "eta", "F"];
}

/// nef = cone{ξ − θ_{E,k}F, η − θ_{E',k'}F, F} and the same shape with ζ for
/// the pseudoeffective cone.
pub fn fiber_product_cones(
    first: &HnData,
    k: u32,
    second: &HnData,
    k2: u32,
) -> Result<FiberProductCones> {
    let nef = product_cone(&theta(first, k)?, &theta(second, k2)?)?;
    let eff = product_cone(&zeta(first, k)?, &zeta(second, k2)?)?;
    Ok(FiberProductCones { nef, eff })
}

fn product_cone(a: &Rational, b: &Rational) -> Result<Cone> {
    let gens = alloc::vec![
        RatVec::new(alloc::vec![rational::int(1), Rational::zero(), -a.clone()]),
        RatVec::new(alloc::vec![Rational::zero(), rational::int(1), -b.clone()]),
        RatVec::from_ints(&[0, 0, 1]),
    ];
    Cone::from_generators(3, gens)?.canonicalize()
}

#[cfg(test)]
mod tests {
    #![allow(clippy::needless_range_loop)] // index loops mirror the matrix algebra

    use super::*;
    use crate::rational::{int, ratio};
    use alloc::vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn hn(pieces: &[(u32, i64)]) -> HnData {
        HnData::new(pieces.iter().map(|&(r, s)| (r, int(s))).collect()).unwrap()
    }

    fn ints(vs: &[&[i64]]) -> Vec<RatVec> {
        vs.iter().map(|v| RatVec::from_ints(v)).collect()
    }

    // Enumeration oracles, independent of the indexed scan in the
    // implementation: walk every candidate index and take the defining one.

    fn oracle_theta(data: &HnData, k: u32) -> Rational {
        let pieces = data.pieces();
        let t = (1..=pieces.len())
            .find(|&t| {
                let suffix: u32 = pieces[t..].iter().map(|p| p.rank).sum();
                suffix < k
            })
            .expect("t = l always qualifies");
        let suffix: u32 = pieces[t..].iter().map(|p| p.rank).sum();
        let deg_suffix: Rational = pieces[t..]
            .iter()
            .map(|p| int(i64::from(p.rank)) * &p.slope)
            .sum();
        int(i64::from(k - suffix)) * &pieces[t - 1].slope + deg_suffix
    }

    fn oracle_zeta(data: &HnData, k: u32) -> Rational {
        let pieces = data.pieces();
        let prefix = |t: usize| -> u32 { pieces[..t].iter().map(|p| p.rank).sum() };
        let deg_prefix = |t: usize| -> Rational {
            pieces[..t]
                .iter()
                .map(|p| int(i64::from(p.rank)) * &p.slope)
                .sum()
        };
        match (0..pieces.len()).find(|&t| prefix(t + 1) > k) {
            Some(t) => int(i64::from(k - prefix(t))) * &pieces[t].slope + deg_prefix(t),
            None => deg_prefix(pieces.len()),
        }
    }

    // Second route: θ is the sum of the k smallest slopes of the slope
    // multiset (with multiplicity the ranks), ζ the sum of the k largest.

    fn slope_multiset(data: &HnData) -> Vec<Rational> {
        let mut slopes = Vec::new();
        for p in data.pieces() {
            for _ in 0..p.rank {
                slopes.push(p.slope.clone());
            }
        }
        slopes.sort();
        slopes
    }

    fn oracle_theta_bottom_k(data: &HnData, k: u32) -> Rational {
        slope_multiset(data).iter().take(k as usize).sum()
    }

    fn oracle_zeta_top_k(data: &HnData, k: u32) -> Rational {
        slope_multiset(data).iter().rev().take(k as usize).sum()
    }

    fn random_hn(rng: &mut ChaCha8Rng, max_pieces: usize, max_rank: u32) -> HnData {
        let count = rng.gen_range(1..=max_pieces);
        let mut slopes: Vec<i64> = Vec::new();
        while slopes.len() < count {
            let s = rng.gen_range(-10..=10);
            if !slopes.contains(&s) {
                slopes.push(s);
            }
        }
        slopes.sort_unstable();
        slopes.reverse();
        HnData::new(
            slopes
                .into_iter()
                .map(|s| (rng.gen_range(1..=max_rank), int(s)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn line_bundle_sum_groups_and_sorts() {
        assert_eq!(
            hn_of_line_bundle_sum(&[int(3), int(1), int(1)]).unwrap(),
            hn(&[(1, 3), (2, 1)])
        );
        assert_eq!(hn_of_line_bundle_sum(&[int(2), int(2), int(2)]).unwrap(), hn(&[(3, 2)]));
        assert_eq!(hn_of_line_bundle_sum(&[int(0)]).unwrap(), hn(&[(1, 0)]));
        assert_eq!(hn_of_line_bundle_sum(&[]).unwrap_err(), Error::EmptyInput);
    }

    #[test]
    fn line_bundle_sum_is_permutation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(1..=6);
            let degs: Vec<Rational> = (0..n).map(|_| int(rng.gen_range(-4..=4))).collect();
            let base = hn_of_line_bundle_sum(&degs).unwrap();
            let mut shuffled = degs.clone();
            for i in (1..shuffled.len()).rev() {
                shuffled.swap(i, rng.gen_range(0..=i));
            }
            assert_eq!(hn_of_line_bundle_sum(&shuffled).unwrap(), base);
            assert_eq!(base.rank() as usize, degs.len());
        }
    }

    #[test]
    fn theta_frozen_examples() {
        let data = hn(&[(1, 3), (2, 1)]);
        assert_eq!(theta(&data, 2).unwrap(), int(2));
        assert_eq!(theta(&data, 1).unwrap(), int(1));
        assert_eq!(oracle_theta(&data, 2), int(2));
        assert_eq!(oracle_theta(&data, 1), int(1));
    }

    #[test]
    fn zeta_frozen_examples() {
        let data = hn(&[(1, 3), (2, 1)]);
        assert_eq!(zeta(&data, 2).unwrap(), int(4));
        assert_eq!(zeta(&data, 1).unwrap(), int(3));
        assert_eq!(oracle_zeta(&data, 2), int(4));
        assert_eq!(oracle_zeta(&data, 1), int(3));
    }

    #[test]
    fn semistable_thresholds_are_k_mu() {
        let data = HnData::semistable(4, ratio(3, 2)).unwrap();
        for k in 1..=4 {
            assert_eq!(theta(&data, k).unwrap(), int(i64::from(k)) * ratio(3, 2));
            assert_eq!(zeta(&data, k).unwrap(), theta(&data, k).unwrap());
        }
    }

    #[test]
    fn k_out_of_range_is_rejected() {
        let data = hn(&[(2, 1)]);
        assert_eq!(theta(&data, 0).unwrap_err(), Error::KOutOfRange { k: 0, rank: 2 });
        assert_eq!(zeta(&data, 3).unwrap_err(), Error::KOutOfRange { k: 3, rank: 2 });
    }

    #[test]
    fn invalid_hn_data_is_rejected() {
        assert_eq!(
            HnData::new(vec![(1, int(1)), (1, int(1))]).unwrap_err(),
            Error::SlopesNotDecreasing
        );
        assert_eq!(
            HnData::new(vec![(1, int(0)), (1, int(2))]).unwrap_err(),
            Error::SlopesNotDecreasing
        );
        assert_eq!(HnData::new(vec![(0, int(1))]).unwrap_err(), Error::ZeroRank);
        assert_eq!(HnData::new(vec![]).unwrap_err(), Error::EmptyInput);
    }

    #[test]
    fn thresholds_match_oracles_on_random_data() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let data = random_hn(&mut rng, 4, 5);
            for k in 1..=data.rank() {
                let th = theta(&data, k).unwrap();
                let ze = zeta(&data, k).unwrap();
                assert_eq!(th, oracle_theta(&data, k));
                assert_eq!(ze, oracle_zeta(&data, k));
                assert_eq!(th, oracle_theta_bottom_k(&data, k));
                assert_eq!(ze, oracle_zeta_top_k(&data, k));
            }
        }
    }

    #[test]
    fn top_exterior_power_thresholds_equal_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..100 {
            let data = random_hn(&mut rng, 4, 5);
            let r = data.rank();
            assert_eq!(theta(&data, r).unwrap(), data.degree());
            assert_eq!(zeta(&data, r).unwrap(), data.degree());
        }
    }

    #[test]
    fn curve_cones_frozen_examples() {
        let semi = curve_cones(&hn(&[(2, 1)]), 1).unwrap();
        assert_eq!(semi.nef.generators().unwrap(), ints(&[&[0, 1], &[1, -1]]));
        assert!(semi.nef.equals(&semi.eff).unwrap());

        let unstable = curve_cones(&hn(&[(1, 3), (2, 1)]), 2).unwrap();
        assert_eq!(unstable.nef.generators().unwrap(), ints(&[&[0, 1], &[1, -2]]));
        assert_eq!(unstable.eff.generators().unwrap(), ints(&[&[0, 1], &[1, -4]]));
        assert!(!unstable.nef.equals(&unstable.eff).unwrap());
    }

    #[test]
    fn curve_cones_handle_rational_thresholds() {
        // slopes 3/2: nef boundary ray becomes the primitive (2,-3)
        let data = HnData::semistable(2, ratio(3, 2)).unwrap();
        let cones = curve_cones(&data, 1).unwrap();
        assert_eq!(cones.nef.generators().unwrap(), ints(&[&[0, 1], &[2, -3]]));
    }

    #[test]
    fn curve_cones_invariants_on_random_data() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let fiber = RatVec::from_ints(&[0, 1]);
        for _ in 0..100 {
            let data = random_hn(&mut rng, 4, 5);
            for k in 1..=data.rank() {
                let cones = curve_cones(&data, k).unwrap();
                // two extremal rays, pointed, containing the fiber class
                assert_eq!(cones.nef.generators().unwrap().len(), 2);
                assert_eq!(cones.eff.generators().unwrap().len(), 2);
                assert!(cones.nef.contains(&fiber).unwrap());
                for g in cones.nef.generators().unwrap() {
                    assert!(cones.eff.contains(g).unwrap());
                }
            }
        }
    }

    #[test]
    fn fiber_product_frozen_example() {
        let cones = fiber_product_cones(&hn(&[(1, 3), (2, 1)]), 2, &hn(&[(1, 0)]), 1).unwrap();
        assert_eq!(
            cones.nef.generators().unwrap(),
            ints(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, -2]])
        );
        assert_eq!(
            cones.eff.generators().unwrap(),
            ints(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, -4]])
        );
    }

    #[test]
    fn fiber_product_semistable_pairs_have_equal_cones() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..50 {
            let a = HnData::semistable(rng.gen_range(1..=5), int(rng.gen_range(-5..=5))).unwrap();
            let b = HnData::semistable(rng.gen_range(1..=5), int(rng.gen_range(-5..=5))).unwrap();
            let k = rng.gen_range(1..=a.rank());
            let k2 = rng.gen_range(1..=b.rank());
            let cones = fiber_product_cones(&a, k, &b, k2).unwrap();
            assert!(cones.nef.equals(&cones.eff).unwrap());
        }
    }

    #[test]
    fn fiber_product_nef_inside_eff_even_when_unstable() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let a = random_hn(&mut rng, 3, 4);
            let b = random_hn(&mut rng, 3, 4);
            let k = rng.gen_range(1..=a.rank());
            let k2 = rng.gen_range(1..=b.rank());
            let cones = fiber_product_cones(&a, k, &b, k2).unwrap();
            for g in cones.nef.generators().unwrap() {
                assert!(cones.eff.contains(g).unwrap());
            }
        }
    }
}
