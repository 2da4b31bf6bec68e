//! Exact enumeration of lattice shells: all integer coordinate vectors with
//! `x^T G x = 2N`, and theta prefixes obtained by repeated enumeration.
//!
//! The enumerator is a depth-first interval search on the exact rational
//! LDL^T of the Gram matrix. Writing `y_i = x_i + sum_{j>i} L_ji x_j`, the
//! form is `sum_i d_i y_i^2`; coordinates are chosen from the last level
//! down, each level's interval computed in exact rational arithmetic (an
//! integer square root gives the estimate, exact comparisons trim it). At
//! the innermost level the remaining quadratic equation is solved exactly
//! rather than scanned, so no tolerance appears anywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::GramLattice;
use crate::linalg::{ldlt, Ldlt};

/// The set of lattice vectors of norm `N` (squared length `2N`), sorted
/// lexicographically. Closed under negation; both members of each antipodal
/// pair are stored.
#[derive(Clone, Debug)]
pub struct Shell {
    pub lattice: GramLattice,
    pub norm: u32,
    pub vectors: Vec<Vec<i64>>,
}

impl Shell {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.vectors
            .binary_search_by(|w| w.as_slice().cmp(v))
            .is_ok()
    }

    /// One representative per antipodal pair: the member whose first nonzero
    /// coordinate is positive, in lexicographic order.
    pub fn antipodal_representatives(&self) -> Vec<Vec<i64>> {
        self.vectors
            .iter()
            .filter(|v| v.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0))
            .cloned()
            .collect()
    }

    /// Reads the same coordinate set as a shell of another lattice; the
    /// caller asserts the norms match (used for the rescaling identity
    /// between a lattice and its Gram-rescaled copies).
    pub fn reinterpret(&self, lattice: &GramLattice, norm: u32) -> Shell {
        Shell {
            lattice: lattice.clone(),
            norm,
            vectors: self.vectors.clone(),
        }
    }
}

/// Shell counts `1, #S_1, #S_2, ...` up to `max_norm`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaPrefix {
    pub lattice: String,
    pub max_norm: u32,
    pub coefficients: Vec<u64>,
}

struct Enumerator<'a> {
    gram: &'a GramLattice,
    decomposition: Ldlt,
}

impl<'a> Enumerator<'a> {
    fn new(lattice: &'a GramLattice) -> Result<Self> {
        Ok(Enumerator {
            gram: lattice,
            decomposition: ldlt(&lattice.gram)?,
        })
    }

    fn enumerate(&self, norm: u32) -> Vec<Vec<i64>> {
        assert!(norm > 0, "shell norm must be positive");
        let n = self.gram.rank();
        let target = BigRational::from_integer(BigInt::from(2u64 * u64::from(norm)));
        let mut x = vec![0i64; n];
        let mut out = Vec::new();
        self.descend(n - 1, &target, &mut x, &mut out);
        out.sort_unstable();
        debug_assert!(out.windows(2).all(|w| w[0] < w[1]), "duplicate vectors");
        out
    }

    /// Chooses `x[level]` given fixed `x[level+1..]` and the remaining
    /// budget `sum_{i <= level} d_i y_i^2 = budget`.
    fn descend(
        &self,
        level: usize,
        budget: &BigRational,
        x: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        let l = &self.decomposition.l;
        let d = &self.decomposition.d[level];
        let n = x.len();
        // y = x[level] + c with c determined by the levels already fixed
        let mut c = BigRational::zero();
        for j in level + 1..n {
            if x[j] != 0 {
                c += &l[(j, level)] * BigRational::from_integer(BigInt::from(x[j]));
            }
        }

        if level == 0 {
            // solve d * (x + c)^2 = budget exactly
            let r2 = budget / d;
            if r2.is_negative() {
                return;
            }
            let (num, den) = (r2.numer(), r2.denom());
            let ns = num.sqrt();
            let ds = den.sqrt();
            if &(&ns * &ns) != num || &(&ds * &ds) != den {
                return;
            }
            let root = BigRational::new(ns, ds);
            for candidate in [-&root - &c, &root - &c] {
                if candidate.is_integer() {
                    x[0] = candidate
                        .to_integer()
                        .to_i64()
                        .expect("shell coordinate exceeds i64; beyond the supported desk scale");
                    out.push(x.clone());
                }
                if root.is_zero() {
                    break;
                }
            }
            return;
        }

        // interval: d * (x + c)^2 <= budget
        if budget.is_negative() {
            return;
        }
        let fits = |value: i64| {
            let y = BigRational::from_integer(BigInt::from(value)) + &c;
            &(&y * &y) * d <= *budget
        };
        let r2 = budget / d;
        // floor(sqrt(p/q)) = isqrt(floor(p/q)) for nonnegative integers
        let s = r2.numer().div_floor(r2.denom()).sqrt();
        let s_rat = BigRational::from_integer(s);

        let overflow = "shell coordinate bound exceeds i64; beyond the supported desk scale";
        let mut hi = (&s_rat - &c).floor().to_integer().to_i64().expect(overflow);
        while fits(hi + 1) {
            hi += 1;
        }
        let mut lo = (-&s_rat - &c).ceil().to_integer().to_i64().expect(overflow);
        while fits(lo - 1) {
            lo -= 1;
        }
        while lo <= hi && !fits(lo) {
            lo += 1;
        }
        while lo <= hi && !fits(hi) {
            hi -= 1;
        }

        for value in lo..=hi {
            x[level] = value;
            let y = BigRational::from_integer(BigInt::from(value)) + &c;
            let spent = &(&y * &y) * d;
            let child = budget - spent;
            self.descend(level - 1, &child, x, out);
        }
        x[level] = 0;
    }
}

/// Enumerates the complete shell `S_N`: every integer solution of
/// `x^T G x = 2N`, duplicate-free and lexicographically sorted.
pub fn enumerate_shell(lattice: &GramLattice, norm: u32) -> Result<Shell> {
    if norm == 0 {
        return Err(Error::ZeroNorm);
    }
    let enumerator = Enumerator::new(lattice)?;
    let vectors = enumerator.enumerate(norm);
    debug_assert!(vectors
        .iter()
        .all(|v| lattice.norm_doubled(v) == BigInt::from(2u64 * u64::from(norm))));
    Ok(Shell {
        lattice: lattice.clone(),
        norm,
        vectors,
    })
}

/// Shell sizes for `N = 1..=max_norm`; coefficient 0 is always 1 for the
/// zero vector. The LDL^T is factored once and reused.
pub fn theta_prefix(lattice: &GramLattice, max_norm: u32) -> Result<ThetaPrefix> {
    let enumerator = Enumerator::new(lattice)?;
    let mut coefficients = Vec::with_capacity(max_norm as usize + 1);
    coefficients.push(1);
    for n in 1..=max_norm {
        coefficients.push(enumerator.enumerate(n).len() as u64);
    }
    Ok(ThetaPrefix {
        lattice: lattice.name.clone(),
        max_norm,
        coefficients,
    })
}
