//! Integral lattices presented by exact Gram matrices, the builtin registry
//! of named lattices, and the constructions (conductor scaling, rescaling,
//! direct sums) that relate them.
//!
//! Norm convention: for a lattice with Gram matrix `G`, the norm of an
//! integer coordinate vector `x` is `N(x) = x^T G x / 2`, so root-length
//! vectors of an even lattice have norm 1.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{ldlt, IntMatrix};
use crate::octonion::coxeter_dickson_basis;

/// A rank-n integral lattice presented by a symmetric positive definite
/// Gram matrix, with a name recording its provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramLattice {
    pub name: String,
    pub gram: IntMatrix,
}

impl GramLattice {
    /// Validates symmetry and positive definiteness (via exact LDL^T pivots).
    pub fn new(name: impl Into<String>, gram: IntMatrix) -> Result<Self> {
        assert!(gram.is_square(), "Gram matrix must be square");
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        ldlt(&gram)?;
        Ok(GramLattice {
            name: name.into(),
            gram,
        })
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    /// Even means every vector has even squared length; for integral
    /// symmetric Gram matrices this is equivalent to an even diagonal.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    pub fn det(&self) -> BigInt {
        self.gram.det()
    }

    /// `x^T G y` for integer coordinate vectors.
    pub fn inner(&self, x: &[i64], y: &[i64]) -> BigInt {
        assert!(x.len() == self.rank() && y.len() == self.rank());
        let mut total = BigInt::zero();
        for i in 0..x.len() {
            let mut row = BigInt::zero();
            for j in 0..y.len() {
                row += &self.gram[(i, j)] * BigInt::from(y[j]);
            }
            total += BigInt::from(x[i]) * row;
        }
        total
    }

    /// `x^T G x`, i.e. twice the norm.
    pub fn norm_doubled(&self, x: &[i64]) -> BigInt {
        self.inner(x, x)
    }
}

/// A sublattice embedded in an overlattice: `basis_map` column `i` gives the
/// coordinates of the i-th sublattice basis vector in the overlattice basis.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub sub: GramLattice,
    pub sup: GramLattice,
    pub basis_map: IntMatrix,
}

impl Embedding {
    /// Validates `B^T G_sup B = G_sub` and that `B` is nonsingular.
    pub fn new(sub: GramLattice, sup: GramLattice, basis_map: IntMatrix) -> Result<Self> {
        let carried = basis_map.transpose().mul(&sup.gram).mul(&basis_map);
        if carried != sub.gram {
            return Err(Error::EmbeddingGramMismatch);
        }
        if basis_map.det().is_zero() {
            return Err(Error::SingularBasisMap);
        }
        Ok(Embedding {
            sub,
            sup,
            basis_map,
        })
    }

    /// Index `[sup : sub] = |det B|`.
    pub fn index(&self) -> BigInt {
        self.basis_map.det().abs()
    }

    pub fn identity(l: &GramLattice) -> Self {
        Embedding {
            sub: l.clone(),
            sup: l.clone(),
            basis_map: IntMatrix::identity(l.rank()),
        }
    }
}

/// Diagonal conductor embedding: the sublattice spanned by `diag[i] * b_i`.
pub fn conductor(base: &GramLattice, diag: &[i64]) -> Result<Embedding> {
    if diag.len() != base.rank() {
        return Err(Error::ConductorLength {
            got: diag.len(),
            want: base.rank(),
        });
    }
    if let Some(bad) = diag.iter().find(|&&d| d <= 0) {
        return Err(Error::ConductorNotPositive(bad.to_string()));
    }
    let b = IntMatrix::diagonal(diag);
    let gram = b.transpose().mul(&base.gram).mul(&b);
    let name = format!(
        "{}*diag[{}]",
        base.name,
        diag.iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    let sub = GramLattice::new(name, gram)?;
    Embedding::new(sub, base.clone(), b)
}

/// Multiplies the Gram matrix by an exact rational factor. Rescaling vectors
/// by `s` rescales the Gram by `s^2`; shells move accordingly, with the
/// coordinate vectors untouched.
pub fn rescale_gram(l: &GramLattice, factor: &BigRational) -> Result<GramLattice> {
    assert!(factor.is_positive(), "rescale factor must be positive");
    let scaled = l.gram.to_rational().scale(factor);
    let gram = scaled.to_int()?;
    GramLattice::new(format!("{}*({})", l.name, factor), gram)
}

/// Orthogonal direct sum with block-diagonal Gram matrix.
pub fn direct_sum(l1: &GramLattice, l2: &GramLattice) -> GramLattice {
    let (r1, r2) = (l1.rank(), l2.rank());
    let gram = IntMatrix::from_fn(r1 + r2, r1 + r2, |i, j| {
        if i < r1 && j < r1 {
            l1.gram[(i, j)].clone()
        } else if i >= r1 && j >= r1 {
            l2.gram[(i - r1, j - r1)].clone()
        } else {
            BigInt::zero()
        }
    });
    GramLattice {
        name: format!("{}(+){}", l1.name, l2.name),
        gram,
    }
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &[
    "A1", "A2", "square", "cubic4", "A2xA2", "D4", "cubic8", "A2^4", "D4xD4", "E8", "L_Ok", "M",
    "sqrt2Z8",
];

/// Conductor diagonal that carves the Okubo shadow out of the rank-8 lattice.
pub const OKUBO_CONDUCTOR: [i64; 8] = [2, 2, 2, 2, 4, 4, 4, 4];

fn named(name: &str, gram: IntMatrix) -> GramLattice {
    GramLattice {
        name: name.to_string(),
        gram,
    }
}

/// Constructs one of the named lattices of the registry.
///
/// Root lattices use their standard even Gram matrices (roots of squared
/// length 2); `square`, `cubic4`, `cubic8` and `sqrt2Z8` are scaled cubic
/// lattices `2*I_n`; `E8` comes from the octonion basis; `L_Ok` is the
/// conductor sublattice `diag(2,2,2,2,4,4,4,4)` of `E8`; `M` has Gram
/// `gram(L_Ok)/4`.
pub fn builtin(name: &str) -> Result<GramLattice> {
    let l = match name {
        "A1" => named("A1", IntMatrix::from_rows(vec![vec![2i64]])),
        "A2" => named(
            "A2",
            IntMatrix::from_rows(vec![vec![2i64, -1], vec![-1, 2]]),
        ),
        "square" => named("square", IntMatrix::diagonal(&[2i64; 2])),
        "cubic4" => named("cubic4", IntMatrix::diagonal(&[2i64; 4])),
        "cubic8" => named("cubic8", IntMatrix::diagonal(&[2i64; 8])),
        "sqrt2Z8" => named("sqrt2Z8", IntMatrix::diagonal(&[2i64; 8])),
        "D4" => named(
            "D4",
            IntMatrix::from_rows(vec![
                vec![2i64, -1, 0, 0],
                vec![-1, 2, -1, -1],
                vec![0, -1, 2, 0],
                vec![0, -1, 0, 2],
            ]),
        ),
        "A2xA2" => {
            let a2 = builtin("A2")?;
            let mut l = direct_sum(&a2, &a2);
            l.name = "A2xA2".into();
            l
        }
        "A2^4" => {
            let a2 = builtin("A2")?;
            let pair = direct_sum(&a2, &a2);
            let mut l = direct_sum(&pair, &pair);
            l.name = "A2^4".into();
            l
        }
        "D4xD4" => {
            let d4 = builtin("D4")?;
            let mut l = direct_sum(&d4, &d4);
            l.name = "D4xD4".into();
            l
        }
        "E8" => named("E8", coxeter_dickson_basis().gram),
        "L_Ok" => {
            let emb = conductor(&builtin("E8")?, &OKUBO_CONDUCTOR)?;
            named("L_Ok", emb.sub.gram)
        }
        "M" => {
            let lok = builtin("L_Ok")?;
            let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
            let m = rescale_gram(&lok, &quarter)?;
            named("M", m.gram)
        }
        other => return Err(Error::UnknownLattice(other.to_string())),
    };
    Ok(l)
}

/// The embeddings of the two-adic chain, plus identities.
pub fn known_embedding(sub_name: &str, sup_name: &str) -> Result<Embedding> {
    if sub_name == sup_name {
        return Ok(Embedding::identity(&builtin(sub_name)?));
    }
    let map = match (sub_name, sup_name) {
        ("L_Ok", "E8") => IntMatrix::diagonal(&OKUBO_CONDUCTOR),
        ("M", "E8") => IntMatrix::diagonal(&[1i64, 1, 1, 1, 2, 2, 2, 2]),
        ("L_Ok", "M") => IntMatrix::diagonal(&[2i64; 8]),
        _ => {
            return Err(Error::UnknownEmbedding(
                sub_name.to_string(),
                sup_name.to_string(),
            ))
        }
    };
    Embedding::new(builtin(sub_name)?, builtin(sup_name)?, map)
}

/// Name-indexed collection of lattices; the CLI and audit battery resolve
/// lattices through one of these so tests can inject modified fixtures.
pub struct Registry {
    lattices: BTreeMap<String, GramLattice>,
}

impl Registry {
    pub fn standard() -> Self {
        let mut lattices = BTreeMap::new();
        for name in BUILTIN_NAMES {
            lattices.insert(
                name.to_string(),
                builtin(name).expect("builtin lattice must construct"),
            );
        }
        Registry { lattices }
    }

    pub fn get(&self, name: &str) -> Result<&GramLattice> {
        self.lattices
            .get(name)
            .ok_or_else(|| Error::UnknownLattice(name.to_string()))
    }

    pub fn insert(&mut self, l: GramLattice) {
        self.lattices.insert(l.name.clone(), l);
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.lattices.keys().map(|s| s.as_str())
    }

    /// Like [`known_embedding`] but the endpoint lattices come from the
    /// registry, so fixture substitutions propagate.
    pub fn embedding(&self, sub_name: &str, sup_name: &str) -> Result<Embedding> {
        if sub_name == sup_name {
            return Ok(Embedding::identity(self.get(sub_name)?));
        }
        let map = match (sub_name, sup_name) {
            ("L_Ok", "E8") => IntMatrix::diagonal(&OKUBO_CONDUCTOR),
            ("M", "E8") => IntMatrix::diagonal(&[1i64, 1, 1, 1, 2, 2, 2, 2]),
            ("L_Ok", "M") => IntMatrix::diagonal(&[2i64; 8]),
            _ => {
                return Err(Error::UnknownEmbedding(
                    sub_name.to_string(),
                    sup_name.to_string(),
                ))
            }
        };
        Embedding::new(
            self.get(sub_name)?.clone(),
            self.get(sup_name)?.clone(),
            map,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn builtin_names_all_construct_and_validate() {
        for name in BUILTIN_NAMES {
            let l = builtin(name).unwrap();
            let validated = GramLattice::new(l.name.clone(), l.gram.clone());
            assert!(validated.is_ok(), "{name} failed validation");
            assert!(l.is_even(), "{name} should be even");
        }
        assert!(matches!(builtin("E9"), Err(Error::UnknownLattice(_))));
    }

    #[test]
    fn okubo_gram_entries_divisible_by_eight() {
        let lok = builtin("L_Ok").unwrap();
        for e in lok.gram.entries() {
            assert!((e % bi(8)).is_zero(), "entry {e} not divisible by 8");
        }
        assert_eq!(lok.det(), bi(1) << 24);
    }

    #[test]
    fn intermediate_lattice_has_determinant_256() {
        let m = builtin("M").unwrap();
        assert_eq!(m.det(), bi(256));
        assert!(m.is_even());
    }

    #[test]
    fn conductor_indices() {
        let e8 = builtin("E8").unwrap();
        let emb = conductor(&e8, &OKUBO_CONDUCTOR).unwrap();
        assert_eq!(emb.index(), bi(4096));

        let id = conductor(&e8, &[1; 8]).unwrap();
        assert_eq!(id.index(), bi(1));
        assert_eq!(id.sub.gram, e8.gram);

        let half = conductor(&e8, &[1, 1, 1, 1, 2, 2, 2, 2]).unwrap();
        assert_eq!(half.index(), bi(16));
        assert_eq!(half.sub.gram, builtin("M").unwrap().gram);
    }

    #[test]
    fn conductor_rejects_bad_diagonals() {
        let e8 = builtin("E8").unwrap();
        assert!(matches!(
            conductor(&e8, &[1, 2, 3]),
            Err(Error::ConductorLength { .. })
        ));
        assert!(matches!(
            conductor(&e8, &[1, 1, 1, 1, 1, 1, 1, 0]),
            Err(Error::ConductorNotPositive(_))
        ));
    }

    #[test]
    fn rescale_quarters_the_conductor_gram() {
        let lok = builtin("L_Ok").unwrap();
        let quarter = BigRational::new(bi(1), bi(4));
        let m = rescale_gram(&lok, &quarter).unwrap();
        assert_eq!(m.gram, builtin("M").unwrap().gram);

        let same = rescale_gram(&lok, &BigRational::one()).unwrap();
        assert_eq!(same.gram, lok.gram);

        let four = BigRational::from_integer(bi(4));
        let back = rescale_gram(&builtin("M").unwrap(), &four).unwrap();
        assert_eq!(back.gram, lok.gram);
    }

    #[test]
    fn rescale_rejects_non_integral_result() {
        let a2 = builtin("A2").unwrap();
        let third = BigRational::new(bi(1), bi(3));
        assert!(matches!(
            rescale_gram(&a2, &third),
            Err(Error::NonIntegralEntry { .. })
        ));
    }

    #[test]
    fn embedding_validation_catches_wrong_gram() {
        let e8 = builtin("E8").unwrap();
        let a2 = builtin("A2").unwrap();
        let bad = Embedding::new(a2, e8.clone(), IntMatrix::identity(8));
        assert!(matches!(bad, Err(Error::EmbeddingGramMismatch)));
    }

    #[test]
    fn embedding_determinant_identity() {
        for (sub, sup) in [("L_Ok", "E8"), ("M", "E8"), ("L_Ok", "M")] {
            let emb = known_embedding(sub, sup).unwrap();
            let idx = emb.index();
            assert_eq!(emb.sub.det(), emb.sup.det() * (&idx * &idx));
        }
    }

    #[test]
    fn direct_sum_blocks() {
        let a1 = builtin("A1").unwrap();
        let sq = direct_sum(&a1, &a1);
        assert_eq!(sq.gram, IntMatrix::diagonal(&[2i64, 2]));
    }
}
