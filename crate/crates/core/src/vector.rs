//! Vectors of exact rationals: coordinates of divisor classes in a named basis.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{self, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatVec {
    entries: Vec<Rational>,
}

impl RatVec {
    pub fn new(entries: Vec<Rational>) -> Self {
        RatVec { entries }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        RatVec::new(values.iter().map(|&v| rational::int(v)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        RatVec::new(alloc::vec![Rational::zero(); dim])
    }

    /// The standard basis vector `e_index`.
    pub fn unit(dim: usize, index: usize) -> Self {
        let mut v = RatVec::zero(dim);
        v.entries[index] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.entries
    }

    pub fn get(&self, index: usize) -> &Rational {
        &self.entries[index]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    /// Standard dot product. Callers are responsible for matching dimensions;
    /// the public cone and lattice operations validate them first.
    pub fn dot(&self, other: &RatVec) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn scale(&self, factor: &Rational) -> RatVec {
        RatVec::new(self.entries.iter().map(|e| e * factor).collect())
    }

    pub fn add(&self, other: &RatVec) -> RatVec {
        debug_assert_eq!(self.dim(), other.dim());
        RatVec::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn neg(&self) -> RatVec {
        RatVec::new(self.entries.iter().map(|e| -e).collect())
    }

    /// New vector `(head, self...)`, used to extend a divisor basis by one
    /// leading coordinate.
    pub fn prepend(&self, head: Rational) -> RatVec {
        let mut entries = Vec::with_capacity(self.dim() + 1);
        entries.push(head);
        entries.extend(self.entries.iter().cloned());
        RatVec::new(entries)
    }

    /// The primitive integer vector spanning the same ray: denominators are
    /// cleared and the gcd of the entries divided out. The direction is
    /// preserved; the zero vector stays zero.
    pub fn primitive(&self) -> RatVec {
        RatVec::from_integer_entries(self.primitive_integer_entries())
    }

    /// Integer entries of [`RatVec::primitive`].
    pub(crate) fn primitive_integer_entries(&self) -> Vec<BigInt> {
        let mut lcm = BigInt::one();
        for e in &self.entries {
            lcm = lcm.lcm(e.denom());
        }
        let mut ints: Vec<BigInt> = self
            .entries
            .iter()
            .map(|e| e.numer() * (&lcm / e.denom()))
            .collect();
        let mut gcd = BigInt::zero();
        for v in &ints {
            gcd = gcd.gcd(v);
        }
        if !gcd.is_zero() && !gcd.is_one() {
            for v in &mut ints {
                *v /= &gcd;
            }
        }
        ints
    }

    pub(crate) fn from_integer_entries(entries: Vec<BigInt>) -> RatVec {
        RatVec::new(entries.into_iter().map(Rational::from_integer).collect())
    }

    /// True when the entries are integers with gcd 1 (or the vector is zero).
    pub fn is_primitive_integer(&self) -> bool {
        if !self.entries.iter().all(|e| e.denom().is_one()) {
            return false;
        }
        let mut gcd = BigInt::zero();
        for e in &self.entries {
            gcd = gcd.gcd(e.numer());
        }
        gcd.is_zero() || gcd.is_one()
    }

    pub fn lex_cmp(&self, other: &RatVec) -> Ordering {
        for (a, b) in self.entries.iter().zip(&other.entries) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.dim().cmp(&other.dim())
    }

    /// Flips the sign so the first nonzero entry is positive. Only meaningful
    /// where a sign choice is free, e.g. when picking the representative of a
    /// lineality direction emitted as a ± pair.
    pub(crate) fn sign_normalized(&self) -> RatVec {
        match self.entries.iter().find(|e| !e.is_zero()) {
            Some(first) if first.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", rational::display(e))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
