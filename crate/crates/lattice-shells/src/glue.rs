//! Discriminant groups, isotropic gluing, overlattice construction, and
//! binary glue codes.
//!
//! For an even lattice `L` with Gram matrix `G`, the dual quotient `L*/L`
//! has order `det G` and carries the quadratic form `q(x) = <x,x> mod 2`.
//! A sublattice chain `S < L` projects `L` onto a subgroup of `S*/S` (the
//! glue group); adjoining isotropic glue cosets to `S` rebuilds an even
//! overlattice whose determinant drops by the square of the glue order.
//! When the glue group is an elementary 2-group and the sublattice has a
//! cubic model, reducing the cosets mod the sublattice yields a binary code.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Embedding, GramLattice};
use crate::linalg::{invariant_factors, row_hermite, smith_normal_form, IntMatrix, RatMatrix};
use crate::orbits::CubicIsometry;

/// The finite quadratic form `(L*/L, q)` of an even lattice.
#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    pub lattice: String,
    /// Invariant factors of the Gram matrix, including trivial ones.
    pub invariant_factors: Vec<BigInt>,
    /// Coset representatives generating the nontrivial cyclic factors, as
    /// rational vectors in lattice coordinates, reduced into `[0,1)^n`.
    pub generators: Vec<Vec<BigRational>>,
    /// `q(g) = <g,g> mod 2` for each generator, reduced into `[0,2)`.
    pub qvalues: Vec<BigRational>,
}

impl DiscriminantGroup {
    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }
}

fn mod_one(v: &[BigRational]) -> Vec<BigRational> {
    v.iter().map(|c| c - c.floor()).collect()
}

fn mod_two(q: &BigRational) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    let m = (q / &two).floor() * &two;
    q - m
}

fn q_value(gram: &RatMatrix, v: &[BigRational]) -> BigRational {
    let gv = gram.matvec(v);
    v.iter().zip(&gv).map(|(a, b)| a * b).sum()
}

/// Discriminant group of an even lattice, with exact generator q-values.
pub fn discriminant(lattice: &GramLattice) -> Result<DiscriminantGroup> {
    if !lattice.is_even() {
        return Err(Error::OddLattice);
    }
    let snf = smith_normal_form(&lattice.gram);
    let factors = snf.invariant_factors();
    let gram_rat = lattice.gram.to_rational();
    let g_inv = gram_rat.inverse().expect("Gram of a lattice is invertible");
    let u_inv = snf
        .u
        .to_rational()
        .inverse()
        .expect("unimodular transform is invertible");
    // generator of the i-th cyclic factor: class of G^-1 U^-1 e_i
    let pullback = g_inv.mul(&u_inv);
    let mut generators = Vec::new();
    let mut qvalues = Vec::new();
    for (i, d) in factors.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        let column: Vec<BigRational> = (0..lattice.rank())
            .map(|r| pullback[(r, i)].clone())
            .collect();
        let rep = mod_one(&column);
        qvalues.push(mod_two(&q_value(&gram_rat, &rep)));
        generators.push(rep);
    }
    Ok(DiscriminantGroup {
        lattice: lattice.name.clone(),
        invariant_factors: factors,
        generators,
        qvalues,
    })
}

/// Invariant factors of the quotient `sup/sub`, from the SNF of the basis
/// map; their product is the embedding index.
pub fn quotient(embedding: &Embedding) -> Vec<BigInt> {
    invariant_factors(&embedding.basis_map)
}

/// All cosets generated by the given classes under addition mod 1.
fn subgroup_closure(n: usize, generators: &[Vec<BigRational>]) -> BTreeSet<Vec<BigRational>> {
    let zero = vec![BigRational::zero(); n];
    let mut elements = BTreeSet::new();
    elements.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(e) = frontier.pop() {
        for g in generators {
            let sum: Vec<BigRational> = e.iter().zip(g).map(|(a, b)| a + b).collect();
            let rep = mod_one(&sum);
            if elements.insert(rep.clone()) {
                frontier.push(rep);
            }
        }
    }
    elements
}

/// A binary linear code presented by its full word list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryCode {
    pub length: usize,
    pub dimension: usize,
    /// Minimum nonzero weight; 0 for the zero code.
    pub min_weight: usize,
    /// `weight_enumerator[w]` counts codewords of weight `w`.
    pub weight_enumerator: Vec<u64>,
    pub words: Vec<Vec<u8>>,
}

impl BinaryCode {
    fn from_words(words: BTreeSet<Vec<u8>>) -> Self {
        let length = words.iter().next().map_or(0, |w| w.len());
        let count = words.len();
        assert!(count.is_power_of_two(), "codeword count must be 2^k");
        let dimension = count.trailing_zeros() as usize;
        let mut weight_enumerator = vec![0u64; length + 1];
        let mut min_weight = 0usize;
        for w in &words {
            let weight = w.iter().filter(|&&b| b != 0).count();
            weight_enumerator[weight] += 1;
            if weight > 0 && (min_weight == 0 || weight < min_weight) {
                min_weight = weight;
            }
        }
        debug_assert!(
            {
                let list: Vec<&Vec<u8>> = words.iter().collect();
                list.iter().all(|a| {
                    list.iter().all(|b| {
                        let xor: Vec<u8> = a.iter().zip(b.iter()).map(|(x, y)| x ^ y).collect();
                        words.contains(&xor)
                    })
                })
            },
            "glue words must form a linear code"
        );
        BinaryCode {
            length,
            dimension,
            min_weight,
            weight_enumerator,
            words: words.into_iter().collect(),
        }
    }

    /// Every weight divisible by four.
    pub fn is_doubly_even(&self) -> bool {
        self.weight_enumerator
            .iter()
            .enumerate()
            .all(|(w, &count)| count == 0 || w % 4 == 0)
    }

    /// Human form of the weight enumerator, e.g. `1 + 14w^4 + w^8`.
    pub fn weight_enumerator_string(&self) -> String {
        let mut terms = Vec::new();
        for (w, &count) in self.weight_enumerator.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let term = match (w, count) {
                (0, 1) => "1".to_string(),
                (0, c) => c.to_string(),
                (_, 1) => format!("w^{w}"),
                (_, c) => format!("{c}w^{w}"),
            };
            terms.push(term);
        }
        terms.join(" + ")
    }
}

/// Result of checking an embedding's glue group inside the sublattice's
/// discriminant form.
#[derive(Clone, Debug)]
pub struct GlueResult {
    pub sub: String,
    pub sup: String,
    pub quotient_factors: Vec<BigInt>,
    pub glue_order: BigInt,
    /// Nonzero classes of the overlattice basis in `sub*/sub`, reduced mod 1.
    pub glue_generators: Vec<Vec<BigRational>>,
    /// Every glue coset has `q = 0 mod 2`; errors out otherwise, so this is
    /// always true on a returned value.
    pub isotropic: bool,
    /// `|glue|^2 = det(sub) / det(sup)`, the determinant form of maximality.
    pub maximal: bool,
    /// The overlattice rebuilt from the sublattice plus glue vectors.
    pub overlattice: GramLattice,
    /// Binary code of the cosets in cubic coordinates, when the quotient is
    /// an elementary 2-group and a cubic model was supplied.
    pub glue_code: Option<BinaryCode>,
}

/// Expresses the overlattice's basis classes inside `sub*/sub`, verifies the
/// glue subgroup is isotropic and maximal for the determinant identity, and
/// rebuilds the overlattice from the glue data.
pub fn verify_isotropic_glue(
    embedding: &Embedding,
    cubic: Option<&CubicIsometry>,
) -> Result<GlueResult> {
    let sub = &embedding.sub;
    let sup = &embedding.sup;
    let n = sub.rank();
    let quotient_factors = quotient(embedding);
    let index = embedding.index();

    let b_inv = embedding
        .basis_map
        .to_rational()
        .inverse()
        .expect("embedding basis map is nonsingular");
    let mut generators: Vec<Vec<BigRational>> = Vec::new();
    for j in 0..n {
        let column: Vec<BigRational> = (0..n).map(|i| b_inv[(i, j)].clone()).collect();
        let rep = mod_one(&column);
        if rep.iter().any(|c| !c.is_zero()) {
            generators.push(rep);
        }
    }
    generators.sort();
    generators.dedup();

    let cosets = subgroup_closure(n, &generators);
    let glue_order = BigInt::from(cosets.len());
    if glue_order != index {
        return Err(Error::GlueOrderMismatch {
            got: glue_order.to_string(),
            want: index.to_string(),
        });
    }

    let gram_rat = sub.gram.to_rational();
    for coset in &cosets {
        let q = mod_two(&q_value(&gram_rat, coset));
        if !q.is_zero() {
            return Err(Error::NotIsotropic {
                coset: format!("{coset:?}"),
                q: q.to_string(),
            });
        }
    }

    let maximal = sub.det() == sup.det() * (&glue_order * &glue_order);
    let overlattice = build_overlattice(sub, &generators)?;

    let glue_code = match cubic {
        Some(iso) if quotient_factors.iter().all(|f| *f <= BigInt::from(2)) => {
            Some(code_of_cosets(&cosets, iso)?)
        }
        _ => None,
    };

    Ok(GlueResult {
        sub: sub.name.clone(),
        sup: sup.name.clone(),
        quotient_factors,
        glue_order,
        glue_generators: generators,
        isotropic: true,
        maximal,
        overlattice,
        glue_code,
    })
}

/// Adjoins dual vectors to a lattice: every generator must lie in the dual
/// lattice and generate isotropic cosets; the result is the even overlattice
/// spanned by the lattice and the glue vectors, with basis obtained by
/// integer row reduction of the stacked generators.
pub fn build_overlattice(
    lattice: &GramLattice,
    glue_generators: &[Vec<BigRational>],
) -> Result<GramLattice> {
    let n = lattice.rank();
    if glue_generators.is_empty() {
        return Ok(lattice.clone());
    }
    let gram_rat = lattice.gram.to_rational();
    for g in glue_generators {
        assert_eq!(g.len(), n, "glue vector has wrong dimension");
        let gv = gram_rat.matvec(g);
        if gv.iter().any(|c| !c.is_integer()) {
            return Err(Error::NotInDualLattice(format!("{g:?}")));
        }
    }
    for coset in subgroup_closure(n, glue_generators) {
        let q = mod_two(&q_value(&gram_rat, &coset));
        if !q.is_zero() {
            return Err(Error::NotIsotropic {
                coset: format!("{coset:?}"),
                q: q.to_string(),
            });
        }
    }

    // common denominator k, then Hermite reduction of k*(generators | identity)
    let mut k = BigInt::one();
    for g in glue_generators {
        for c in g {
            k = k.lcm(c.denom());
        }
    }
    let mut stacked: Vec<Vec<BigInt>> = Vec::with_capacity(glue_generators.len() + n);
    for g in glue_generators {
        stacked.push(
            g.iter()
                .map(|c| {
                    let scaled = c * BigRational::from_integer(k.clone());
                    debug_assert!(scaled.is_integer());
                    scaled.to_integer()
                })
                .collect(),
        );
    }
    for i in 0..n {
        let mut row = vec![BigInt::zero(); n];
        row[i] = k.clone();
        stacked.push(row);
    }
    let reduced = row_hermite(&IntMatrix::from_rows(stacked));
    assert_eq!(reduced.rows(), n, "overlattice basis must have full rank");

    let k_rat = BigRational::from_integer(k);
    let basis = reduced.to_rational().scale(&k_rat.recip());
    let gram = basis
        .mul(&gram_rat)
        .mul(&basis.transpose())
        .to_int()
        .map_err(|_| Error::NotIsotropic {
            coset: "stacked basis".into(),
            q: "non-integral Gram".into(),
        })?;
    GramLattice::new(format!("glued({})", lattice.name), gram)
}

fn code_of_cosets(cosets: &BTreeSet<Vec<BigRational>>, iso: &CubicIsometry) -> Result<BinaryCode> {
    let to_cubic = iso.to_cubic.to_rational();
    let mut words = BTreeSet::new();
    let two = BigRational::from_integer(BigInt::from(2));
    for coset in cosets {
        let cubic = to_cubic.matvec(coset);
        let mut word = Vec::with_capacity(cubic.len());
        for c in &cubic {
            let doubled = c * &two;
            if !doubled.is_integer() {
                return Err(Error::NotElementaryTwoGroup(c.to_string()));
            }
            let bit = doubled.to_integer().mod_floor(&BigInt::from(2));
            word.push(u8::from(bit.is_one()));
        }
        words.insert(word);
    }
    Ok(BinaryCode::from_words(words))
}

/// Binary code of the glue cosets in cubic dual coordinates. The embedding's
/// quotient must be an elementary 2-group.
pub fn glue_code(embedding: &Embedding, iso: &CubicIsometry) -> Result<BinaryCode> {
    let factors = quotient(embedding);
    if let Some(bad) = factors.iter().find(|f| **f > BigInt::from(2)) {
        return Err(Error::NotElementaryTwoGroup(bad.to_string()));
    }
    let result = verify_isotropic_glue(embedding, Some(iso))?;
    result
        .glue_code
        .ok_or_else(|| Error::NotElementaryTwoGroup("missing cubic model".into()))
}

/// Exhaustive search over dimension-`dim` subspaces of `F_2^length` whose
/// words all have weight divisible by four. This is the glue-candidate
/// search in the cubic model, where isotropy of a coset class is exactly
/// double evenness of its word.
pub fn search_doubly_even_subspaces(length: usize, dim: usize) -> Vec<BinaryCode> {
    assert!(length <= 16 && dim <= length);
    let mut found = Vec::new();
    let mut pivots = (0..dim).collect::<Vec<usize>>();
    loop {
        // free slots of the reduced row echelon form for this pivot choice
        let mut free_slots: Vec<(usize, usize)> = Vec::new();
        for (r, &p) in pivots.iter().enumerate() {
            for col in p + 1..length {
                if !pivots.contains(&col) {
                    free_slots.push((r, col));
                }
            }
        }
        let combos = 1u64 << free_slots.len();
        for assignment in 0..combos {
            let mut basis = vec![0u16; dim];
            for (r, &p) in pivots.iter().enumerate() {
                basis[r] |= 1 << p;
            }
            for (bit, &(r, col)) in free_slots.iter().enumerate() {
                if assignment >> bit & 1 == 1 {
                    basis[r] |= 1 << col;
                }
            }
            let mut ok = true;
            let mut words = BTreeSet::new();
            for mask in 0u32..1 << dim {
                let mut word = 0u16;
                for (r, b) in basis.iter().enumerate() {
                    if mask >> r & 1 == 1 {
                        word ^= b;
                    }
                }
                if !word.count_ones().is_multiple_of(4) {
                    ok = false;
                    break;
                }
                words.insert(
                    (0..length)
                        .map(|i| u8::from(word >> i & 1 == 1))
                        .collect::<Vec<u8>>(),
                );
            }
            if ok {
                found.push(BinaryCode::from_words(words));
            }
        }

        // next pivot combination in lexicographic order
        let mut i = dim;
        loop {
            if i == 0 {
                return found;
            }
            i -= 1;
            if pivots[i] < length - (dim - i) {
                pivots[i] += 1;
                for j in i + 1..dim {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{builtin, direct_sum, known_embedding};
    use crate::orbits::build_cubic_isometry;
    use crate::roots::{certify_root_system, DynkinComponent, DynkinType};
    use crate::shells::enumerate_shell;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn br(p: i64, q: i64) -> BigRational {
        BigRational::new(bi(p), bi(q))
    }

    #[test]
    fn quotient_of_the_chain() {
        let emb = known_embedding("M", "E8").unwrap();
        assert_eq!(quotient(&emb), [1, 1, 1, 1, 2, 2, 2, 2].map(bi).to_vec());

        let lok = known_embedding("L_Ok", "E8").unwrap();
        let product: BigInt = quotient(&lok).iter().product();
        assert_eq!(product, bi(4096));

        let id = known_embedding("E8", "E8").unwrap();
        assert_eq!(quotient(&id), vec![bi(1); 8]);
    }

    #[test]
    fn rank_one_discriminant() {
        let a1 = builtin("A1").unwrap();
        let d = discriminant(&a1).unwrap();
        assert_eq!(d.invariant_factors, vec![bi(2)]);
        assert_eq!(d.generators, vec![vec![br(1, 2)]]);
        assert_eq!(d.qvalues, vec![br(1, 2)]);
    }

    #[test]
    fn unimodular_discriminant_is_trivial() {
        let e8 = builtin("E8").unwrap();
        let d = discriminant(&e8).unwrap();
        assert_eq!(d.order(), bi(1));
        assert!(d.generators.is_empty());
    }

    #[test]
    fn cubic_model_discriminant() {
        let c = builtin("sqrt2Z8").unwrap();
        let d = discriminant(&c).unwrap();
        assert_eq!(d.order(), bi(256));
        assert_eq!(d.invariant_factors, vec![bi(2); 8]);
        assert_eq!(d.qvalues, vec![br(1, 2); 8]);
    }

    #[test]
    fn intermediate_lattice_discriminant() {
        let m = builtin("M").unwrap();
        let d = discriminant(&m).unwrap();
        assert_eq!(d.order(), bi(256));
        assert_eq!(d.invariant_factors, vec![bi(2); 8]);
        // generators of an elementary 2-group carry half-integer q-values
        for q in &d.qvalues {
            assert!(
                *q == br(1, 2) || *q == br(3, 2),
                "generator q-value {q} is not an odd half-integer"
            );
        }
    }

    #[test]
    fn odd_lattice_rejected() {
        let odd = GramLattice::new("Z", IntMatrix::from_rows(vec![vec![1i64]])).unwrap();
        assert!(matches!(discriminant(&odd), Err(Error::OddLattice)));
    }

    #[test]
    fn glue_of_m_in_e8() {
        let emb = known_embedding("M", "E8").unwrap();
        let result = verify_isotropic_glue(&emb, None).unwrap();
        assert_eq!(result.glue_order, bi(16));
        assert!(result.isotropic && result.maximal);
        assert_eq!(result.overlattice.det(), bi(1));
        assert!(result.overlattice.is_even());
        assert_eq!(enumerate_shell(&result.overlattice, 1).unwrap().len(), 240);
    }

    #[test]
    fn glued_overlattice_matches_the_benchmark_in_every_invariant() {
        let emb = known_embedding("M", "E8").unwrap();
        let result = verify_isotropic_glue(&emb, None).unwrap();
        let over = &result.overlattice;
        let e8 = builtin("E8").unwrap();
        assert_eq!(over.det(), e8.det());
        assert_eq!(over.is_even(), e8.is_even());
        // same shell counts up to N = 3
        let theta_over = crate::shells::theta_prefix(over, 3).unwrap();
        let theta_e8 = crate::shells::theta_prefix(&e8, 3).unwrap();
        assert_eq!(theta_over.coefficients, theta_e8.coefficients);
        let shell = enumerate_shell(over, 1).unwrap();
        let cert = certify_root_system(&shell).unwrap();
        assert_eq!(cert.dynkin, DynkinType::new(vec![DynkinComponent::E(8)]));
    }

    #[test]
    fn glue_of_the_conductor() {
        let emb = known_embedding("L_Ok", "E8").unwrap();
        let result = verify_isotropic_glue(&emb, None).unwrap();
        assert_eq!(result.glue_order, bi(4096));
        assert!(result.maximal);
        assert_eq!(&result.glue_order * &result.glue_order, bi(1) << 24);
        assert_eq!(result.overlattice.det(), bi(1));
    }

    #[test]
    fn middle_link_of_the_chain_glues_back() {
        // L_Ok = 2M sits in M with quotient (Z/2)^8
        let emb = known_embedding("L_Ok", "M").unwrap();
        assert_eq!(quotient(&emb), vec![bi(2); 8]);
        let result = verify_isotropic_glue(&emb, None).unwrap();
        assert_eq!(result.glue_order, bi(256));
        assert!(result.isotropic && result.maximal);
        let over = &result.overlattice;
        assert_eq!(over.det(), bi(256));
        // same shell counts as M: the gluing rebuilt the middle lattice
        let m = builtin("M").unwrap();
        for n in 1u32..=2 {
            assert_eq!(
                enumerate_shell(over, n).unwrap().len(),
                enumerate_shell(&m, n).unwrap().len()
            );
        }
    }

    #[test]
    fn identity_embedding_has_trivial_glue() {
        let e8 = builtin("E8").unwrap();
        let emb = Embedding::identity(&e8);
        let result = verify_isotropic_glue(&emb, None).unwrap();
        assert_eq!(result.glue_order, bi(1));
        assert!(result.glue_generators.is_empty());
        assert_eq!(result.overlattice.gram, e8.gram);
    }

    #[test]
    fn empty_glue_returns_the_lattice() {
        let m = builtin("M").unwrap();
        let over = build_overlattice(&m, &[]).unwrap();
        assert_eq!(over.gram, m.gram);
    }

    #[test]
    fn non_isotropic_glue_is_rejected() {
        let a1 = builtin("A1").unwrap();
        let square = direct_sum(&a1, &a1);
        // q((1/2, 1/2)) = 1 under Gram 2I, not 0 mod 2
        let glue = vec![vec![br(1, 2), br(1, 2)]];
        assert!(matches!(
            build_overlattice(&square, &glue),
            Err(Error::NotIsotropic { .. })
        ));
    }

    #[test]
    fn vectors_outside_the_dual_are_rejected() {
        let a1 = builtin("A1").unwrap();
        let glue = vec![vec![br(1, 3)]];
        assert!(matches!(
            build_overlattice(&a1, &glue),
            Err(Error::NotInDualLattice(_))
        ));
    }

    #[test]
    fn glue_code_is_the_8_4_4_code() {
        let emb = known_embedding("M", "E8").unwrap();
        let iso = build_cubic_isometry(&builtin("M").unwrap()).unwrap();
        let code = glue_code(&emb, &iso).unwrap();
        assert_eq!((code.length, code.dimension, code.min_weight), (8, 4, 4));
        let mut expected = vec![0u64; 9];
        expected[0] = 1;
        expected[4] = 14;
        expected[8] = 1;
        assert_eq!(code.weight_enumerator, expected);
        assert!(code.is_doubly_even());
        assert_eq!(code.weight_enumerator_string(), "1 + 14w^4 + w^8");
    }

    #[test]
    fn identity_embedding_gives_the_zero_code() {
        let c = builtin("sqrt2Z8").unwrap();
        let emb = Embedding::identity(&c);
        let iso = build_cubic_isometry(&c).unwrap();
        let code = glue_code(&emb, &iso).unwrap();
        assert_eq!((code.length, code.dimension, code.min_weight), (8, 0, 0));
    }

    #[test]
    fn non_elementary_quotient_rejected() {
        let emb = known_embedding("L_Ok", "E8").unwrap();
        let iso = build_cubic_isometry(&builtin("M").unwrap()).unwrap();
        assert!(matches!(
            glue_code(&emb, &iso),
            Err(Error::NotElementaryTwoGroup(_))
        ));
    }

    #[test]
    fn doubly_even_search_finds_thirty_maximal_codes() {
        let codes = search_doubly_even_subspaces(8, 4);
        assert_eq!(codes.len(), 30);
        for code in &codes {
            assert_eq!((code.length, code.dimension, code.min_weight), (8, 4, 4));
            assert_eq!(code.weight_enumerator_string(), "1 + 14w^4 + w^8");
        }
    }
}
