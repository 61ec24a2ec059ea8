//! Rational polyhedral cones: representation conversion, duality, membership,
//! inclusion, equality, canonicalization.
//!
//! A cone is carried in generator form (V-representation), half-space form
//! (H-representation, each vector `h` meaning `{x : h·x ≥ 0}`), or both. The
//! double-description conversion is done in exact integer arithmetic after
//! clearing denominators, so boundary membership is decided exactly.
//!
//! Canonical generator form: every generator is a primitive integer vector,
//! extremal, pairwise distinct, sorted lexicographically. Non-pointed cones
//! carry their lineality directions as ± generator pairs; the zero cone and
//! the full space are legal values (empty generator list, empty half-space
//! list).

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::linalg;
use crate::rational::Rational;
use crate::vector::RatVec;
use crate::Result;

#[derive(Clone, Debug)]
pub struct Cone {
    dim: usize,
    generators: Option<Vec<RatVec>>,
    halfspaces: Option<Vec<RatVec>>,
    canonical: bool,
}

impl Cone {
    /// Cone spanned by nonnegative combinations of `generators`. An empty
    /// list is the zero cone.
    pub fn from_generators(dim: usize, generators: Vec<RatVec>) -> Result<Self> {
        check_dims(dim, &generators)?;
        Ok(Cone {
            dim,
            generators: Some(generators),
            halfspaces: None,
            canonical: false,
        })
    }

    /// Cone cut out by `{x : h·x ≥ 0}` for every `h`. An empty list is the
    /// full space.
    pub fn from_halfspaces(dim: usize, halfspaces: Vec<RatVec>) -> Result<Self> {
        check_dims(dim, &halfspaces)?;
        Ok(Cone {
            dim,
            generators: None,
            halfspaces: Some(halfspaces),
            canonical: false,
        })
    }

    pub fn zero(dim: usize) -> Result<Self> {
        Cone::from_generators(dim, Vec::new())
    }

    pub fn full_space(dim: usize) -> Result<Self> {
        Cone::from_halfspaces(dim, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> Option<&[RatVec]> {
        self.generators.as_deref()
    }

    pub fn halfspaces(&self) -> Option<&[RatVec]> {
        self.halfspaces.as_deref()
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    /// The canonical generator list, converting from half-spaces if needed.
    pub fn canonical_generators(&self) -> Result<Vec<RatVec>> {
        Ok(self.canonicalize()?.generators.expect("canonical cone has generators"))
    }

    /// Attaches a half-space representation, keeping the generators.
    ///
    /// The computed half-space normals are the canonical generators of the
    /// dual cone, so `{x : h·x ≥ 0 ∀h}` equals the cone spanned by the
    /// generators.
    pub fn halfspace_form(&self) -> Result<Cone> {
        let gens = self.generators.as_ref().ok_or(Error::NoGenerators)?;
        let hs = extreme_rays_of_halfspaces(self.dim, gens);
        Ok(Cone {
            dim: self.dim,
            generators: self.generators.clone(),
            halfspaces: Some(hs),
            canonical: self.canonical,
        })
    }

    /// Attaches the canonical generator representation computed from the
    /// half-spaces. Lineality directions come out as ± pairs; the zero cone
    /// yields an empty generator list.
    pub fn generator_form(&self) -> Result<Cone> {
        let hs = self.halfspaces.as_ref().ok_or(Error::NoHalfspaces)?;
        let gens = extreme_rays_of_halfspaces(self.dim, hs);
        Ok(Cone {
            dim: self.dim,
            generators: Some(gens),
            halfspaces: Some(hs.clone()),
            canonical: true,
        })
    }

    /// The dual cone `{y : y·x ≥ 0 for all x in self}`, in canonical
    /// generator form.
    pub fn dual(&self) -> Result<Cone> {
        if let Some(gens) = &self.generators {
            // y is in the dual exactly when y·g ≥ 0 for every generator, so
            // the generators serve as the dual's half-spaces.
            let dual_gens = extreme_rays_of_halfspaces(self.dim, gens);
            Ok(Cone {
                dim: self.dim,
                generators: Some(dual_gens),
                halfspaces: Some(gens.clone()),
                canonical: true,
            })
        } else {
            // The dual of {x : h·x ≥ 0} is the cone spanned by the h's.
            let hs = self.halfspaces.as_ref().expect("cone has a representation");
            Cone::from_generators(self.dim, hs.clone())?.canonicalize()
        }
    }

    /// Membership: `v` is a nonnegative rational combination of the
    /// generators, equivalently satisfies every half-space.
    pub fn contains(&self, v: &RatVec) -> Result<bool> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.dim(),
            });
        }
        let check = |hs: &[RatVec]| hs.iter().all(|h| !h.dot(v).is_negative());
        match &self.halfspaces {
            Some(hs) => Ok(check(hs)),
            None => {
                let gens = self.generators.as_ref().expect("cone has a representation");
                Ok(check(&extreme_rays_of_halfspaces(self.dim, gens)))
            }
        }
    }

    /// Equality as cones, decided by comparing canonical generator lists.
    pub fn equals(&self, other: &Cone) -> Result<bool> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(self.canonical_generators()? == other.canonical_generators()?)
    }

    /// Canonical form: primitive integer generators, extremal, pairwise
    /// distinct, sorted lexicographically. Idempotent.
    pub fn canonicalize(&self) -> Result<Cone> {
        if self.canonical && self.generators.is_some() {
            return Ok(self.clone());
        }
        if let Some(hs) = &self.halfspaces {
            let gens = extreme_rays_of_halfspaces(self.dim, hs);
            return Ok(Cone {
                dim: self.dim,
                generators: Some(gens),
                halfspaces: Some(hs.clone()),
                canonical: true,
            });
        }
        let gens = self.generators.as_ref().expect("cone has a representation");
        let dual_gens = extreme_rays_of_halfspaces(self.dim, gens);
        let canon = extreme_rays_of_halfspaces(self.dim, &dual_gens);
        Ok(Cone {
            dim: self.dim,
            generators: Some(canon),
            halfspaces: Some(dual_gens),
            canonical: true,
        })
    }
}

fn check_dims(dim: usize, vectors: &[RatVec]) -> Result<()> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    for v in vectors {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.dim(),
            });
        }
    }
    Ok(())
}

/// Canonical generators of `{x : h·x ≥ 0 for all h in halfspaces}`.
///
/// The lineality space (the common kernel of the half-spaces) is split off
/// first and emitted as ± pairs of primitive vectors; the pointed remainder
/// is enumerated by incremental double description in the coordinates of the
/// half-space row space. The output depends only on the cone, not on the
/// presentation, which is what makes it usable as an equality certificate.
fn extreme_rays_of_halfspaces(dim: usize, halfspaces: &[RatVec]) -> Vec<RatVec> {
    let active: Vec<&RatVec> = halfspaces.iter().filter(|h| !h.is_zero()).collect();
    let rows: Vec<Vec<Rational>> = active.iter().map(|h| h.entries().to_vec()).collect();
    let (basis, pivots) = linalg::rref(rows, dim);
    let rank = basis.len();

    let mut out: Vec<RatVec> = Vec::new();

    for v in linalg::nullspace(&basis, &pivots, dim) {
        let rep = RatVec::new(v).primitive().sign_normalized();
        out.push(rep.neg());
        out.push(rep);
    }

    if rank > 0 {
        // Coordinates on the row space: x = Σ u_j b_j turns h·x ≥ 0 into
        // (h·b_1, …, h·b_r)·u ≥ 0, and the restricted cone there is pointed.
        let projected: Vec<Vec<BigInt>> = active
            .iter()
            .map(|h| {
                let coords: Vec<Rational> = basis.iter().map(|b| row_dot(b, h)).collect();
                RatVec::new(coords).primitive_integer_entries()
            })
            .collect();
        for u in dd_pointed(rank, &projected) {
            let mut x = alloc::vec![Rational::zero(); dim];
            for (uj, bj) in u.iter().zip(&basis) {
                let uj = Rational::from_integer(uj.clone());
                for (xe, be) in x.iter_mut().zip(bj) {
                    *xe += &uj * be;
                }
            }
            out.push(RatVec::new(x).primitive());
        }
    }

    out.sort_by(RatVec::lex_cmp);
    out.dedup();
    out
}

fn row_dot(row: &[Rational], v: &RatVec) -> Rational {
    row.iter().zip(v.entries()).map(|(a, b)| a * b).sum()
}

/// Extreme rays of `{u : rows·u ≥ 0}` where the rows have full column rank
/// `n` (so the cone is pointed). Incremental double description with the
/// combinatorial adjacency test; rays are primitive integer vectors.
fn dd_pointed(n: usize, rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let nbits = rows.len();

    // Seed with a simplicial cone from n linearly independent rows.
    let chosen = independent_rows(n, rows);
    debug_assert_eq!(chosen.len(), n);
    let seed: Vec<Vec<Rational>> = chosen
        .iter()
        .map(|&i| rows[i].iter().map(|e| Rational::from_integer(e.clone())).collect())
        .collect();
    let inv = linalg::invert(&seed).expect("seed rows are linearly independent");

    let mut processed: Vec<usize> = chosen.clone();
    let mut rays: Vec<DdRay> = (0..n)
        .map(|j| {
            let col: Vec<Rational> = (0..n).map(|i| inv[i][j].clone()).collect();
            let v = RatVec::new(col).primitive_integer_entries();
            let zero = zero_set(&v, rows, &processed, nbits);
            DdRay { v, zero }
        })
        .collect();

    for i in 0..rows.len() {
        if chosen.contains(&i) {
            continue;
        }
        insert_halfspace(n, i, rows, &mut rays, &mut processed, nbits);
        if rays.is_empty() {
            break;
        }
    }
    rays.into_iter().map(|r| r.v).collect()
}

struct DdRay {
    v: Vec<BigInt>,
    zero: BitSet,
}

fn insert_halfspace(
    n: usize,
    i: usize,
    rows: &[Vec<BigInt>],
    rays: &mut Vec<DdRay>,
    processed: &mut Vec<usize>,
    nbits: usize,
) {
    let evals: Vec<BigInt> = rays.iter().map(|r| int_dot(&rows[i], &r.v)).collect();

    if evals.iter().all(|e| !e.is_negative()) {
        processed.push(i);
        for (ray, e) in rays.iter_mut().zip(&evals) {
            if e.is_zero() {
                ray.zero.set(i);
            }
        }
        return;
    }
    if evals.iter().all(|e| e.is_negative()) {
        rays.clear();
        processed.push(i);
        return;
    }

    let positives: Vec<usize> = (0..rays.len()).filter(|&j| evals[j].is_positive()).collect();
    let negatives: Vec<usize> = (0..rays.len()).filter(|&j| evals[j].is_negative()).collect();

    let mut created: Vec<Vec<BigInt>> = Vec::new();
    for &p in &positives {
        for &ng in &negatives {
            if !adjacent(n, rays, p, ng) {
                continue;
            }
            // w = (row·p) n − (row·n) p lies on the new hyperplane and inside
            // the old cone.
            let w: Vec<BigInt> = rays[ng]
                .v
                .iter()
                .zip(&rays[p].v)
                .map(|(nv, pv)| &evals[p] * nv - &evals[ng] * pv)
                .collect();
            let w = primitive_int(w);
            debug_assert!(!w.iter().all(Zero::is_zero));
            if !created.contains(&w) {
                created.push(w);
            }
        }
    }

    processed.push(i);
    let mut next: Vec<DdRay> = Vec::with_capacity(rays.len() + created.len());
    for (j, ray) in rays.drain(..).enumerate() {
        if evals[j].is_negative() {
            continue;
        }
        let mut ray = ray;
        if evals[j].is_zero() {
            ray.zero.set(i);
        }
        next.push(ray);
    }
    for w in created {
        let zero = zero_set(&w, rows, processed, nbits);
        next.push(DdRay { v: w, zero });
    }
    *rays = next;
}

/// Rays `p` and `ng` span a two-dimensional face exactly when no third
/// extreme ray is tight on every half-space they are both tight on. A
/// two-face of a pointed cone in dimension n is cut out by at least n−2
/// tight half-spaces, which rejects most pairs before the scan.
fn adjacent(n: usize, rays: &[DdRay], p: usize, ng: usize) -> bool {
    let face = rays[p].zero.intersection(&rays[ng].zero);
    if face.count() + 2 < n {
        return false;
    }
    rays.iter()
        .enumerate()
        .all(|(j, r)| j == p || j == ng || !face.is_subset_of(&r.zero))
}

fn zero_set(v: &[BigInt], rows: &[Vec<BigInt>], processed: &[usize], nbits: usize) -> BitSet {
    let mut z = BitSet::new(nbits);
    for &j in processed {
        if int_dot(&rows[j], v).is_zero() {
            z.set(j);
        }
    }
    z
}

/// Greedy choice of `n` linearly independent rows, in input order.
fn independent_rows(n: usize, rows: &[Vec<BigInt>]) -> Vec<usize> {
    let mut chosen = Vec::with_capacity(n);
    let mut echelon: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        if chosen.len() == n {
            break;
        }
        let mut cand: Vec<Rational> = row.iter().map(|e| Rational::from_integer(e.clone())).collect();
        for reduced in &echelon {
            let pivot = reduced.iter().position(|e| !e.is_zero()).expect("echelon rows nonzero");
            if !cand[pivot].is_zero() {
                let factor = &cand[pivot] / &reduced[pivot];
                for (c, r) in cand.iter_mut().zip(reduced) {
                    *c = &*c - &(&factor * r);
                }
            }
        }
        if cand.iter().any(|e| !e.is_zero()) {
            echelon.push(cand);
            chosen.push(i);
        }
    }
    chosen
}

fn int_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primitive_int(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for e in &v {
        g = g.gcd(e);
    }
    if !g.is_zero() && !g.is_one() {
        for e in &mut v {
            *e /= &g;
        }
    }
    v
}

#[derive(Clone)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(nbits: usize) -> Self {
        BitSet {
            words: alloc::vec![0; nbits.div_ceil(64)],
        }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn intersection(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_subset_of(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }
}

#[cfg(test)]
mod tests {
    #![allow(clippy::needless_range_loop)] // index loops mirror the matrix algebra

    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn gens(dim: usize, vs: &[&[i64]]) -> Cone {
        Cone::from_generators(dim, vs.iter().map(|v| RatVec::from_ints(v)).collect()).unwrap()
    }

    fn halfspaces(dim: usize, vs: &[&[i64]]) -> Cone {
        Cone::from_halfspaces(dim, vs.iter().map(|v| RatVec::from_ints(v)).collect()).unwrap()
    }

    fn vecs(vs: &[&[i64]]) -> Vec<RatVec> {
        vs.iter().map(|v| RatVec::from_ints(v)).collect()
    }

    #[test]
    fn first_orthant_is_self_dual() {
        let c = gens(2, &[&[1, 0], &[0, 1]]);
        let h = c.halfspace_form().unwrap();
        assert_eq!(h.halfspaces().unwrap(), vecs(&[&[0, 1], &[1, 0]]));
        assert_eq!(h.generators().unwrap(), c.generators().unwrap());
    }

    #[test]
    fn v_to_h_by_hand_elimination() {
        // nonnegative combinations x = a(1,0)+b(1,1) satisfy x2 ≥ 0, x1−x2 ≥ 0
        let c = gens(2, &[&[1, 0], &[1, 1]]);
        let h = c.halfspace_form().unwrap();
        assert_eq!(h.halfspaces().unwrap(), vecs(&[&[0, 1], &[1, -1]]));
    }

    #[test]
    fn v_to_h_round_trip_in_dim_3() {
        let c = gens(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, -1]]);
        let round = c.halfspace_form().unwrap().generator_form().unwrap();
        assert!(round.equals(&c).unwrap());
    }

    #[test]
    fn h_to_v_first_orthant() {
        let c = halfspaces(2, &[&[1, 0], &[0, 1]]);
        let g = c.generator_form().unwrap();
        assert_eq!(g.generators().unwrap(), vecs(&[&[0, 1], &[1, 0]]));
        assert!(g.is_canonical());
    }

    #[test]
    fn h_to_v_inverse_of_hand_elimination() {
        let c = halfspaces(2, &[&[0, 1], &[1, -1]]);
        let g = c.generator_form().unwrap();
        assert_eq!(g.generators().unwrap(), vecs(&[&[1, 0], &[1, 1]]));
    }

    #[test]
    fn h_to_v_rank_one_surface_shape() {
        // {y0 ≥ 0, y0 + y1 ≥ 0} has extreme rays (0,1) and (1,-1)
        let c = halfspaces(2, &[&[1, 0], &[1, 1]]);
        let g = c.generator_form().unwrap();
        assert_eq!(g.generators().unwrap(), vecs(&[&[0, 1], &[1, -1]]));
        let dd = c.dual().unwrap().dual().unwrap();
        assert!(dd.equals(&c).unwrap());
    }

    #[test]
    fn dual_examples() {
        let orthant = gens(2, &[&[1, 0], &[0, 1]]);
        assert!(orthant.dual().unwrap().equals(&orthant).unwrap());

        let c = gens(2, &[&[1, 0], &[1, 1]]);
        assert_eq!(c.dual().unwrap().generators().unwrap(), vecs(&[&[0, 1], &[1, -1]]));

        let dd = c.dual().unwrap().dual().unwrap();
        assert!(dd.equals(&c).unwrap());
    }

    #[test]
    fn contains_examples() {
        let orthant = gens(2, &[&[1, 0], &[0, 1]]);
        assert!(orthant.contains(&RatVec::from_ints(&[1, 2])).unwrap());

        let c = gens(2, &[&[1, 0], &[1, 1]]);
        assert!(!c.contains(&RatVec::from_ints(&[0, -1])).unwrap());
        assert!(c.contains(&RatVec::from_ints(&[2, 1])).unwrap());
    }

    #[test]
    fn equals_examples() {
        let a = gens(2, &[&[1, 0], &[0, 1]]);
        let b = gens(2, &[&[0, 2], &[3, 0]]);
        assert!(a.equals(&b).unwrap());

        let c = gens(2, &[&[1, 0], &[1, 1]]);
        assert!(!c.equals(&a).unwrap());

        // (1,1) = ½(1,0) + ½(1,2) is redundant
        let with_mid = gens(2, &[&[1, 0], &[1, 1], &[1, 2]]);
        let without = gens(2, &[&[1, 0], &[1, 2]]);
        assert!(with_mid.equals(&without).unwrap());
    }

    #[test]
    fn redundant_generator_dropped_from_canonical_form() {
        let c = gens(2, &[&[1, 0], &[1, 1], &[1, 2]]);
        assert_eq!(c.canonical_generators().unwrap(), vecs(&[&[1, 0], &[1, 2]]));
    }

    #[test]
    fn zero_cone_and_full_space() {
        let zero = Cone::zero(2).unwrap();
        let h = zero.halfspace_form().unwrap();
        // the dual of the origin is the whole plane, cut out by ± unit normals
        assert_eq!(h.halfspaces().unwrap(), vecs(&[&[-1, 0], &[0, -1], &[0, 1], &[1, 0]]));
        assert!(zero.contains(&RatVec::zero(2)).unwrap());
        assert!(!zero.contains(&RatVec::from_ints(&[1, 0])).unwrap());

        let full = Cone::full_space(2).unwrap();
        let g = full.generator_form().unwrap();
        assert_eq!(g.generators().unwrap(), vecs(&[&[-1, 0], &[0, -1], &[0, 1], &[1, 0]]));
        assert!(full.contains(&RatVec::from_ints(&[-3, 5])).unwrap());
        assert!(full.equals(&g).unwrap());

        // and their duals swap
        assert!(zero.dual().unwrap().equals(&full).unwrap());
        assert!(full.dual().unwrap().equals(&zero).unwrap());
    }

    #[test]
    fn halfplane_emits_lineality_pair() {
        let c = halfspaces(2, &[&[1, 0]]);
        let g = c.generator_form().unwrap();
        assert_eq!(g.generators().unwrap(), vecs(&[&[0, -1], &[0, 1], &[1, 0]]));
    }

    #[test]
    fn empty_interior_halfspace_cone() {
        // x ≥ 0 and −x ≥ 0 pin the first coordinate to zero
        let c = halfspaces(2, &[&[1, 0], &[-1, 0], &[0, 1]]);
        let g = c.generator_form().unwrap();
        assert_eq!(g.generators().unwrap(), vecs(&[&[0, 1]]));

        // fully contradictory system leaves only the origin
        let z = halfspaces(1, &[&[1], &[-1]]);
        assert_eq!(z.generator_form().unwrap().generators().unwrap(), Vec::<RatVec>::new());
    }

    #[test]
    fn canonicalization_is_idempotent_bit_for_bit() {
        let c = gens(3, &[&[2, 4, 0], &[1, 1, -1], &[0, 0, 3], &[1, 2, 0]]);
        let once = c.canonicalize().unwrap();
        let again = Cone::from_generators(3, once.generators().unwrap().to_vec())
            .unwrap()
            .canonicalize()
            .unwrap();
        assert_eq!(once.generators().unwrap(), again.generators().unwrap());
        assert!(once.generators().unwrap().iter().all(RatVec::is_primitive_integer));
    }

    #[test]
    fn canonical_generators_are_extremal() {
        let c = gens(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, -1], &[1, 1, 0]]);
        let canon = c.canonical_generators().unwrap();
        for (i, g) in canon.iter().enumerate() {
            let others: Vec<RatVec> = canon
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| v.clone())
                .collect();
            let sub = Cone::from_generators(3, others).unwrap();
            assert!(
                !sub.contains(g).unwrap(),
                "generator {g} is a nonnegative combination of the others"
            );
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let err = Cone::from_generators(
            2,
            vec![RatVec::from_ints(&[1, 0]), RatVec::from_ints(&[1, 0, 0])],
        )
        .unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, found: 3 });

        let c = gens(2, &[&[1, 0]]);
        assert!(c.contains(&RatVec::from_ints(&[1, 0, 0])).is_err());
    }

    // --- independent membership oracle -----------------------------------
    //
    // v lies in cone(G) exactly when some linearly independent subset of G of
    // size ≤ dim expresses v with nonnegative coefficients. The solver below
    // is deliberately separate from the double-description path it checks.

    fn oracle_contains(generators: &[RatVec], v: &RatVec) -> bool {
        if v.is_zero() {
            return true;
        }
        let dim = v.dim();
        let n = generators.len();
        for mask in 1u32..(1 << n) {
            if (mask.count_ones() as usize) > dim {
                continue;
            }
            let subset: Vec<&RatVec> = (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| &generators[i]).collect();
            if solve_nonneg(&subset, v) {
                return true;
            }
        }
        false
    }

    /// Solves Σ λ_i g_i = v by elimination; true when the g_i are linearly
    /// independent, the system is consistent, and every λ_i ≥ 0.
    fn solve_nonneg(cols: &[&RatVec], v: &RatVec) -> bool {
        let dim = v.dim();
        let s = cols.len();
        let mut m: Vec<Vec<Rational>> = (0..dim)
            .map(|r| {
                let mut row: Vec<Rational> = cols.iter().map(|c| c.get(r).clone()).collect();
                row.push(v.get(r).clone());
                row
            })
            .collect();

        let mut pivot_rows = Vec::new();
        let mut rank = 0;
        for col in 0..s {
            let Some(pr) = (rank..dim).find(|&r| !m[r][col].is_zero()) else {
                return false; // dependent subset; a smaller one will cover it
            };
            m.swap(rank, pr);
            let inv = Rational::one() / m[rank][col].clone();
            for e in m[rank].iter_mut() {
                *e = &*e * &inv;
            }
            for r in 0..dim {
                if r != rank && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in 0..=s {
                        let delta = &m[rank][c] * &f;
                        m[r][c] = &m[r][c] - &delta;
                    }
                }
            }
            pivot_rows.push(rank);
            rank += 1;
        }
        // consistency: rows beyond the rank must have zero RHS
        for r in rank..dim {
            if !m[r][s].is_zero() {
                return false;
            }
        }
        (0..s).all(|i| !m[pivot_rows[i]][s].is_negative())
    }

    #[test]
    fn oracle_agrees_on_fixed_cases() {
        let g = vecs(&[&[1, 0], &[1, 1]]);
        assert!(oracle_contains(&g, &RatVec::from_ints(&[2, 1])));
        assert!(!oracle_contains(&g, &RatVec::from_ints(&[0, -1])));
    }

    // --- property tests ---------------------------------------------------

    fn arb_cone() -> impl Strategy<Value = Cone> {
        (1usize..=4).prop_flat_map(|dim| {
            proptest::collection::vec(
                proptest::collection::vec(-5i64..=5, dim),
                1..=6,
            )
            .prop_map(move |vs| {
                let gens: Vec<RatVec> = vs.iter().map(|v| RatVec::from_ints(v)).collect();
                Cone::from_generators(dim, gens).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn biduality(c in arb_cone()) {
            let dd = c.dual().unwrap().dual().unwrap();
            prop_assert!(dd.equals(&c).unwrap());
            let canon = c.canonicalize().unwrap();
            prop_assert_eq!(dd.generators().unwrap(), canon.generators().unwrap());
        }

        #[test]
        fn h_v_round_trip(c in arb_cone()) {
            let round = c.halfspace_form().unwrap().generator_form().unwrap();
            prop_assert!(round.equals(&c).unwrap());
        }

        #[test]
        fn membership_matches_caratheodory_oracle(
            (c, v) in arb_cone().prop_flat_map(|c| {
                let dim = c.dim();
                (Just(c), proptest::collection::vec(-6i64..=6, dim))
            })
        ) {
            let v = RatVec::from_ints(&v);
            let via_halfspaces = c.contains(&v).unwrap();
            let via_oracle = oracle_contains(c.generators().unwrap(), &v);
            prop_assert_eq!(via_halfspaces, via_oracle);
        }

        #[test]
        fn canonical_form_is_stable(c in arb_cone()) {
            let once = c.canonicalize().unwrap();
            let again = Cone::from_generators(once.dim(), once.generators().unwrap().to_vec())
                .unwrap()
                .canonicalize()
                .unwrap();
            prop_assert_eq!(once.generators().unwrap(), again.generators().unwrap());
        }
    }
}
