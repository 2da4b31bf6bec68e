//! Shell-level certificates: antipodality, rank, centroid, the exact
//! degree-two moment identity, and norm divisibility of a lattice.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::GramLattice;
use crate::linalg::{IntMatrix, RatMatrix};
use crate::shells::Shell;

/// Exact certificate of the basic geometric properties of a shell.
///
/// `design2` holds the moment eigenvalue `lambda` precisely when
/// `sum_{x in S} x x^T * G = lambda * I` as an exact matrix identity; the
/// value is then forced to `2 N |S| / rank` by taking traces.
#[derive(Clone, Debug)]
pub struct ShellReport {
    pub lattice: String,
    pub norm: u32,
    pub count: usize,
    pub antipodal: bool,
    pub rank: usize,
    pub centroid_zero: bool,
    pub design2: Option<BigRational>,
}

impl ShellReport {
    /// All certified properties hold, including the moment identity.
    pub fn passes(&self, ambient_rank: usize) -> bool {
        self.antipodal && self.rank == ambient_rank && self.centroid_zero && self.design2.is_some()
    }
}

/// Analyzes a nonempty shell; every check is an exact integer computation.
pub fn analyze(shell: &Shell) -> Result<ShellReport> {
    if shell.is_empty() {
        return Err(Error::EmptyShell);
    }
    let n = shell.lattice.rank();

    let set: HashSet<&[i64]> = shell.vectors.iter().map(|v| v.as_slice()).collect();
    let antipodal = shell
        .vectors
        .iter()
        .all(|v| set.contains(v.iter().map(|c| -c).collect::<Vec<_>>().as_slice()));

    let centroid_zero = (0..n).all(|i| shell.vectors.iter().map(|v| v[i]).sum::<i64>() == 0);

    let rank = span_rank(&shell.vectors, n);

    // second moment matrix A = sum x x^T, then check A G = lambda I
    let mut moment = vec![vec![0i64; n]; n];
    for v in &shell.vectors {
        for i in 0..n {
            for j in 0..n {
                moment[i][j] += v[i] * v[j];
            }
        }
    }
    let a = IntMatrix::from_rows(moment);
    let ag = a.mul(&shell.lattice.gram);
    let lambda = BigRational::new(
        BigInt::from(2u64 * u64::from(shell.norm)) * BigInt::from(shell.len()),
        BigInt::from(n),
    );
    let is_design = lambda.is_integer()
        && (0..n).all(|i| {
            (0..n).all(|j| {
                let want = if i == j {
                    lambda.to_integer()
                } else {
                    BigInt::zero()
                };
                ag[(i, j)] == want
            })
        });

    Ok(ShellReport {
        lattice: shell.lattice.name.clone(),
        norm: shell.norm,
        count: shell.len(),
        antipodal,
        rank,
        centroid_zero,
        design2: is_design.then_some(lambda),
    })
}

fn span_rank(vectors: &[Vec<i64>], n: usize) -> usize {
    // incremental echelon form; stops as soon as the span is full
    let mut echelon = RatMatrix::zeros(n, n);
    let mut rank = 0;
    'next: for v in vectors {
        let mut row: Vec<BigRational> = v
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        for r in 0..rank {
            let lead = (0..n).find(|&j| !echelon[(r, j)].is_zero()).unwrap();
            if !row[lead].is_zero() {
                let f = &row[lead] / &echelon[(r, lead)];
                for j in 0..n {
                    let s = &f * &echelon[(r, j)];
                    row[j] = &row[j] - s;
                }
            }
        }
        if row.iter().all(|e| e.is_zero()) {
            continue 'next;
        }
        for j in 0..n {
            echelon[(rank, j)] = row[j].clone();
        }
        rank += 1;
        if rank == n {
            break;
        }
    }
    rank
}

/// The largest `m` for which the Gram matrix alone forces `N(x)` to be a
/// multiple of `m`: diagonal entries contribute once and off-diagonal
/// entries twice to `x^T G x`, so `m = gcd(gcd(diag)/2, gcd(offdiag))`.
pub fn norm_divisibility(lattice: &GramLattice) -> BigInt {
    let n = lattice.rank();
    let mut diag_gcd = BigInt::zero();
    let mut off_gcd = BigInt::zero();
    for i in 0..n {
        for j in 0..n {
            let e = &lattice.gram[(i, j)];
            if i == j {
                diag_gcd = diag_gcd.gcd(e);
            } else {
                off_gcd = off_gcd.gcd(e);
            }
        }
    }
    assert!(
        diag_gcd.is_even(),
        "norm divisibility needs an even lattice"
    );
    let half_diag = diag_gcd / 2;
    if off_gcd.is_zero() {
        // diagonal Gram: the halved diagonal gcd is the answer
        half_diag
    } else {
        half_diag.gcd(&off_gcd)
    }
}

/// Gram matrix of the antipodal representatives of a shell consisting of
/// exactly `rank` antipodal pairs (the orthoplex certificate).
pub fn gram_of_representatives(shell: &Shell) -> Result<IntMatrix> {
    let n = shell.lattice.rank();
    let report_antipodal = {
        let set: HashSet<&[i64]> = shell.vectors.iter().map(|v| v.as_slice()).collect();
        shell
            .vectors
            .iter()
            .all(|v| set.contains(v.iter().map(|c| -c).collect::<Vec<_>>().as_slice()))
    };
    if !report_antipodal {
        return Err(Error::NotAntipodal);
    }
    if shell.len() != 2 * n {
        return Err(Error::WrongShellCardinality {
            got: shell.len(),
            want: 2 * n,
        });
    }
    let reps = shell.antipodal_representatives();
    debug_assert_eq!(reps.len(), n);
    Ok(IntMatrix::from_fn(n, n, |i, j| {
        shell.lattice.inner(&reps[i], &reps[j])
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::builtin;
    use crate::shells::enumerate_shell;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn gosset_shell_is_a_two_design_with_lambda_60() {
        let e8 = builtin("E8").unwrap();
        let s = enumerate_shell(&e8, 1).unwrap();
        let report = analyze(&s).unwrap();
        assert!(report.antipodal);
        assert_eq!(report.rank, 8);
        assert!(report.centroid_zero);
        assert_eq!(report.design2, Some(BigRational::from_integer(bi(60))));
        assert!(report.passes(8));
    }

    #[test]
    fn antipodal_pair_in_rank_one() {
        let a1 = builtin("A1").unwrap();
        let s = enumerate_shell(&a1, 1).unwrap();
        let report = analyze(&s).unwrap();
        assert!(report.antipodal && report.centroid_zero);
        assert_eq!(report.rank, 1);
    }

    #[test]
    fn empty_shell_is_an_error() {
        let lok = builtin("L_Ok").unwrap();
        let s = enumerate_shell(&lok, 1).unwrap();
        assert!(matches!(analyze(&s), Err(Error::EmptyShell)));
    }

    #[test]
    fn cross_polytope_representative_gram() {
        let lok = builtin("L_Ok").unwrap();
        let s = enumerate_shell(&lok, 4).unwrap();
        let gram = gram_of_representatives(&s).unwrap();
        assert_eq!(gram, IntMatrix::diagonal(&[8i64; 8]));
    }

    #[test]
    fn intermediate_lattice_first_shell_gram() {
        let m = builtin("M").unwrap();
        let s = enumerate_shell(&m, 1).unwrap();
        let gram = gram_of_representatives(&s).unwrap();
        assert_eq!(gram, IntMatrix::diagonal(&[2i64; 8]));
    }

    #[test]
    fn square_lattice_first_shell_gram() {
        let sq = builtin("square").unwrap();
        let s = enumerate_shell(&sq, 1).unwrap();
        assert_eq!(
            gram_of_representatives(&s).unwrap(),
            IntMatrix::diagonal(&[2i64; 2])
        );
    }

    #[test]
    fn representative_gram_needs_an_orthoplex_count() {
        let e8 = builtin("E8").unwrap();
        let s = enumerate_shell(&e8, 1).unwrap();
        assert!(matches!(
            gram_of_representatives(&s),
            Err(Error::WrongShellCardinality { got: 240, want: 16 })
        ));
    }

    #[test]
    fn norm_divisibility_of_the_chain() {
        assert_eq!(norm_divisibility(&builtin("L_Ok").unwrap()), bi(4));
        assert_eq!(norm_divisibility(&builtin("E8").unwrap()), bi(1));
        let m = builtin("M").unwrap();
        assert_eq!(norm_divisibility(&m), bi(1));
        // and M indeed has vectors already at norm 1
        assert_eq!(enumerate_shell(&m, 1).unwrap().len(), 16);
    }

    #[test]
    fn higher_okubo_shells_certify() {
        let lok = builtin("L_Ok").unwrap();
        for n in [12u32, 16] {
            let s = enumerate_shell(&lok, n).unwrap();
            let report = analyze(&s).unwrap();
            assert!(report.passes(8), "S_{n} report failed: {report:?}");
        }
    }
}
