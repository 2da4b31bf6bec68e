//! The explicit isometry from the intermediate lattice onto the rescaled
//! cubic lattice, and signed-permutation orbit decompositions of its shells.
//!
//! Once a lattice has an orthogonal first-shell frame of squared length 2,
//! the frame is a cubic basis and every shell becomes a set of integer
//! points on a sphere. Signed permutations act on those points, and the
//! orbits are indexed by the multiset of absolute coordinate values; each
//! orbit size has the closed form `2^k * multinomial`, which the
//! decomposition verifies against the actual counts.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::lattice::GramLattice;
use crate::linalg::IntMatrix;
use crate::shells::{enumerate_shell, Shell};

/// Change of basis identifying a lattice with the cubic model scaled so the
/// standard basis vectors have squared length 2.
#[derive(Clone, Debug)]
pub struct CubicIsometry {
    pub lattice: String,
    /// One representative per antipodal pair of the first shell, in lattice
    /// coordinates; their Gram matrix is `2 * I`.
    pub frame: Vec<Vec<i64>>,
    /// Unimodular matrix sending lattice coordinates to cubic coordinates.
    pub to_cubic: IntMatrix,
}

impl CubicIsometry {
    /// Cubic coordinates of a lattice vector.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let n = v.len();
        (0..n)
            .map(|i| {
                let mut acc = BigInt::from(0);
                for j in 0..n {
                    acc += &self.to_cubic[(i, j)] * BigInt::from(v[j]);
                }
                i64::try_from(&acc).expect("cubic coordinate out of i64 range")
            })
            .collect()
    }
}

/// Builds the cubic identification from the first shell: it must consist of
/// the lattice rank's worth of orthogonal antipodal pairs of squared length
/// 2, and the chosen representatives must span the whole lattice.
pub fn build_cubic_isometry(lattice: &GramLattice) -> Result<CubicIsometry> {
    let n = lattice.rank();
    let first = enumerate_shell(lattice, 1)?;
    if first.len() != 2 * n {
        return Err(Error::FirstShellNotOrthoplex(format!(
            "first shell has {} vectors, expected {}",
            first.len(),
            2 * n
        )));
    }
    // descending lexicographic order keeps an already-cubic lattice on the
    // identity change of basis
    let mut frame = first.antipodal_representatives();
    frame.reverse();
    let two_i = IntMatrix::diagonal(&vec![2i64; n]);
    let frame_gram = IntMatrix::from_fn(n, n, |i, j| lattice.inner(&frame[i], &frame[j]));
    if frame_gram != two_i {
        return Err(Error::FirstShellNotOrthoplex(format!(
            "representative Gram is {frame_gram}, expected 2*I"
        )));
    }
    // columns of W are the frame vectors; x = W c links cubic coordinates c
    // to lattice coordinates x
    let w = IntMatrix::from_fn(n, n, |i, j| BigInt::from(frame[j][i]));
    let det = w.det();
    if det.abs() != BigInt::one() {
        return Err(Error::FirstShellNotOrthoplex(format!(
            "frame spans a sublattice of index {}",
            det.abs()
        )));
    }
    let to_cubic = w
        .to_rational()
        .inverse()
        .expect("unimodular frame is invertible")
        .to_int()
        .expect("inverse of a unimodular integer matrix is integral");
    Ok(CubicIsometry {
        lattice: lattice.name.clone(),
        frame,
        to_cubic,
    })
}

/// Multiset of absolute coordinate values, sorted descending. Complete
/// invariant of a signed-permutation orbit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrbitSignature(pub Vec<u32>);

impl OrbitSignature {
    pub fn of(cubic_vector: &[i64]) -> Self {
        let mut sig: Vec<u32> = cubic_vector
            .iter()
            .map(|&c| c.unsigned_abs() as u32)
            .collect();
        sig.sort_unstable_by(|a, b| b.cmp(a));
        OrbitSignature(sig)
    }

    pub fn nonzeros(&self) -> usize {
        self.0.iter().filter(|&&c| c != 0).count()
    }

    /// `2^k * (n; multiplicities)`: sign choices for the k nonzero slots
    /// times the placements of the value multiset.
    pub fn orbit_size(&self) -> u64 {
        let n = self.0.len();
        let mut mult: BTreeMap<u32, u64> = BTreeMap::new();
        for &v in &self.0 {
            *mult.entry(v).or_insert(0) += 1;
        }
        let mut size: u64 = 1u64 << self.nonzeros();
        // multinomial n! / prod(m_v!) built up without overflow
        let mut numerator = 1u128;
        for k in 2..=n as u128 {
            numerator *= k;
        }
        let mut denominator = 1u128;
        for &m in mult.values() {
            for k in 2..=m as u128 {
                denominator *= k;
            }
        }
        size *= u64::try_from(numerator / denominator).expect("orbit size fits u64");
        size
    }
}

impl fmt::Display for OrbitSignature {
    /// Compact run form, e.g. `(2,1,0^6)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut runs: Vec<(u32, usize)> = Vec::new();
        for &v in &self.0 {
            match runs.last_mut() {
                Some((prev, count)) if *prev == v => *count += 1,
                _ => runs.push((v, 1)),
            }
        }
        write!(f, "(")?;
        for (i, (v, count)) in runs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if *count == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{count}")?;
            }
        }
        write!(f, ")")
    }
}

/// Partition of a shell into signed-permutation orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitDecomposition {
    pub lattice: String,
    pub norm: u32,
    pub parts: BTreeMap<OrbitSignature, u64>,
}

impl OrbitDecomposition {
    pub fn total(&self) -> u64 {
        self.parts.values().sum()
    }
}

/// Pushes a shell through the cubic identification, groups by signature and
/// verifies every group against its closed-form orbit size. A count
/// mismatch would falsify the isometry, so it is an error, not a report.
pub fn orbit_decompose(shell: &Shell, iso: &CubicIsometry) -> Result<OrbitDecomposition> {
    let mut parts: BTreeMap<OrbitSignature, u64> = BTreeMap::new();
    for v in &shell.vectors {
        let cubic = iso.apply(v);
        let norm: i64 = cubic.iter().map(|c| c * c).sum();
        debug_assert_eq!(norm as u64, u64::from(shell.norm), "cubic norm mismatch");
        *parts.entry(OrbitSignature::of(&cubic)).or_insert(0) += 1;
    }
    for (sig, &count) in &parts {
        let predicted = sig.orbit_size();
        if predicted != count {
            return Err(Error::OrbitCountMismatch {
                signature: sig.to_string(),
                got: count,
                want: predicted,
            });
        }
    }
    debug_assert_eq!(
        parts.values().sum::<u64>(),
        shell.len() as u64,
        "orbit parts must partition the shell"
    );
    Ok(OrbitDecomposition {
        lattice: shell.lattice.name.clone(),
        norm: shell.norm,
        parts,
    })
}

/// Number of integer points of squared length `n` in dimension 8, by
/// three doublings of the one-dimensional representation counts. This is
/// the convolution oracle: it never touches the enumerator.
pub fn r8_oracle(n: u32) -> u64 {
    r8_prefix(n)[n as usize]
}

/// `r8(0..=max)` as a table.
pub fn r8_prefix(max: u32) -> Vec<u64> {
    let len = max as usize + 1;
    let mut r1 = vec![0u64; len];
    r1[0] = 1;
    for k in 1.. {
        let sq = k * k;
        if sq >= len {
            break;
        }
        r1[sq] = 2;
    }
    let convolve = |a: &[u64], b: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; len];
        for i in 0..len {
            if a[i] == 0 {
                continue;
            }
            for j in 0..len - i {
                out[i + j] += a[i] * b[j];
            }
        }
        out
    };
    let r2 = convolve(&r1, &r1);
    let r4 = convolve(&r2, &r2);
    convolve(&r4, &r4)
}
