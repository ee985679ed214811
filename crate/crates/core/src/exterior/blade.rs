use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported dimension.
pub const MAX_DIM: usize = 31;

/// A basis monomial e^{i₁…i_k}, i₁ < … < i_k, stored as a bit set
/// (bit i for index i, 1-based).
///
/// Blades order by degree, then lexicographically on the index tuple.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Blade(u32);

impl Blade {
    pub const EMPTY: Blade = Blade(0);

    pub fn from_bits(bits: u32) -> Self {
        Blade(bits & !1)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn single(i: usize) -> Self {
        debug_assert!((1..=MAX_DIM).contains(&i));
        Blade(1 << i)
    }

    /// The blade of a strictly increasing index list.
    pub fn sorted(indices: &[usize]) -> Result<Self> {
        let (b, sign) = Self::from_unsorted(indices)?;
        debug_assert_eq!(sign, 1, "indices must be increasing");
        Ok(b)
    }

    /// e^{i₁}∧…∧e^{i_k} = sign · e^{sorted}. Fails on a repeated index.
    pub fn from_unsorted(indices: &[usize]) -> Result<(Self, i8)> {
        let mut bits = 0u32;
        let mut sign = 1i8;
        for &i in indices {
            if i == 0 || i > MAX_DIM {
                return Err(Error::IndexOutOfRange { index: i, dim: MAX_DIM });
            }
            if bits & (1 << i) != 0 {
                return Err(Error::RepeatedIndex(i));
            }
            // e^{…} ∧ e^i: move e^i left past every larger index already present
            if (bits >> (i + 1)).count_ones() % 2 == 1 {
                sign = -sign;
            }
            bits |= 1 << i;
        }
        Ok((Blade(bits), sign))
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        i <= MAX_DIM && self.0 & (1 << i) != 0
    }

    pub fn max_index(self) -> usize {
        if self.0 == 0 {
            0
        } else {
            31 - self.0.leading_zeros() as usize
        }
    }

    pub fn indices(self) -> Vec<usize> {
        (1..=MAX_DIM).filter(|&i| self.contains(i)).collect()
    }

    pub fn is_disjoint(self, other: Blade) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Blade) -> Blade {
        Blade(self.0 | other.0)
    }

    pub fn without(self, i: usize) -> Blade {
        Blade(self.0 & !(1 << i))
    }

    /// Number of indices of the blade below `i`.
    pub fn count_below(self, i: usize) -> usize {
        (self.0 & ((1u32 << i) - 1)).count_ones() as usize
    }

    /// Sign of e^A ∧ e^B relative to e^{A∪B}, or `None` when they overlap.
    pub fn wedge_sign(self, other: Blade) -> Option<i8> {
        if !self.is_disjoint(other) {
            return None;
        }
        // parity of pairs (i in A, j in B) with i > j
        let mut inversions = 0u32;
        let mut b = other.0;
        while b != 0 {
            let j = b.trailing_zeros();
            inversions += (self.0 >> (j + 1)).count_ones();
            b &= b - 1;
        }
        Some(if inversions % 2 == 0 { 1 } else { -1 })
    }

    /// The complement inside {1, …, n}.
    pub fn complement(self, n: usize) -> Blade {
        let full = ((1u64 << (n + 1)) - 2) as u32;
        Blade(full & !self.0)
    }

    pub fn fits(self, n: usize) -> bool {
        self.max_index() <= n
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let x = self.0 ^ other.0;
        if x == 0 {
            return Ordering::Equal;
        }
        let low = x & x.wrapping_neg();
        if self.0 & low != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx = self.indices();
        let body: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
        if idx.iter().any(|&i| i > 9) {
            write!(f, "e^{{{}}}", body.join(","))
        } else {
            write!(f, "e^{{{}}}", body.concat())
        }
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
