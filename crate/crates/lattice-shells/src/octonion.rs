//! Octonion arithmetic over the rationals and the eight-vector basis whose
//! Gram matrix is the even unimodular rank-8 lattice.
//!
//! The multiplication table is the Cayley-Dickson doubling of the quaternions
//! with `e4` as the doubling unit: writing `x = a + b*e4` with quaternions
//! `a, b` over `(1, e1, e2, e3)`,
//!
//! ```text
//! (a + b*e4)(c + d*e4) = (a*c - conj(d)*b) + (d*a + b*conj(c))*e4
//! ```
//!
//! so that `e5 = e1*e4`, `e6 = e2*e4`, `e7 = e3*e4`. Any doubling convention
//! yields the same lattice up to isometry; the constructor checks the
//! invariants (even, unimodular) that the rest of the crate relies on and
//! panics if the table ever drifts.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::linalg::IntMatrix;

/// Octonion with exact rational coordinates over the basis `(1, e1, ..., e7)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Octonion {
    pub coords: [BigRational; 8],
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

type Quaternion = [BigRational; 4];

fn q_conj(a: &Quaternion) -> Quaternion {
    [a[0].clone(), -a[1].clone(), -a[2].clone(), -a[3].clone()]
}

fn q_mul(a: &Quaternion, b: &Quaternion) -> Quaternion {
    let (a0, a1, a2, a3) = (&a[0], &a[1], &a[2], &a[3]);
    let (b0, b1, b2, b3) = (&b[0], &b[1], &b[2], &b[3]);
    [
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ]
}

fn q_sub(a: &Quaternion, b: &Quaternion) -> Quaternion {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2], &a[3] - &b[3]]
}

fn q_add(a: &Quaternion, b: &Quaternion) -> Quaternion {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2], &a[3] + &b[3]]
}

impl Octonion {
    pub fn zero() -> Self {
        Octonion {
            coords: std::array::from_fn(|_| BigRational::zero()),
        }
    }

    pub fn one() -> Self {
        Self::unit(0)
    }

    /// The basis octonion `e_i` (`e_0 = 1`).
    pub fn unit(i: usize) -> Self {
        assert!(i < 8);
        let mut o = Self::zero();
        o.coords[i] = BigRational::one();
        o
    }

    pub fn from_coords(coords: [BigRational; 8]) -> Self {
        Octonion { coords }
    }

    fn halves(&self) -> (Quaternion, Quaternion) {
        (
            std::array::from_fn(|i| self.coords[i].clone()),
            std::array::from_fn(|i| self.coords[i + 4].clone()),
        )
    }

    fn from_halves(a: Quaternion, b: Quaternion) -> Self {
        let mut coords: [BigRational; 8] = std::array::from_fn(|_| BigRational::zero());
        for i in 0..4 {
            coords[i] = a[i].clone();
            coords[i + 4] = b[i].clone();
        }
        Octonion { coords }
    }

    pub fn re(&self) -> BigRational {
        self.coords[0].clone()
    }

    /// Conjugation negates the seven imaginary coordinates.
    pub fn conj(&self) -> Self {
        let mut o = self.clone();
        for c in o.coords.iter_mut().skip(1) {
            *c = -c.clone();
        }
        o
    }

    /// Composition norm `N(x)`, the sum of squared coordinates.
    pub fn norm(&self) -> BigRational {
        self.coords.iter().map(|c| c * c).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut o = self.clone();
        for (c, d) in o.coords.iter_mut().zip(&other.coords) {
            *c += d;
        }
        o
    }

    pub fn scale(&self, f: &BigRational) -> Self {
        let mut o = self.clone();
        for c in o.coords.iter_mut() {
            *c *= f;
        }
        o
    }

    /// Bilinear pairing `<x, y> = 2 Re(x * conj(y))`, which for these
    /// orthonormal coordinates is twice the coordinate dot product.
    pub fn inner(&self, other: &Self) -> BigRational {
        let dot: BigRational = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum();
        dot * rat(2)
    }
}

/// Octonion product under the doubling convention fixed in the module docs.
pub fn oct_mul(x: &Octonion, y: &Octonion) -> Octonion {
    let (a, b) = x.halves();
    let (c, d) = y.halves();
    let first = q_sub(&q_mul(&a, &c), &q_mul(&q_conj(&d), &b));
    let second = q_add(&q_mul(&d, &a), &q_mul(&b, &q_conj(&c)));
    Octonion::from_halves(first, second)
}

/// The eight basis octonions `b0..b7` together with their Gram matrix.
#[derive(Clone, Debug)]
pub struct BasisSystem {
    pub vectors: [Octonion; 8],
    pub gram: IntMatrix,
}

/// Builds the basis `1, e1, e2, e3, h, e1*h, e2*h, e3*h` with
/// `h = (e1 + e2 + e3 + e4) / 2` and derives its Gram matrix from the
/// pairing `<x, y> = 2 Re(x * conj(y))`.
///
/// Panics if the resulting Gram matrix is not even unimodular; that would
/// mean the multiplication table no longer matches the documented convention.
pub fn coxeter_dickson_basis() -> BasisSystem {
    let h = Octonion::unit(1)
        .add(&Octonion::unit(2))
        .add(&Octonion::unit(3))
        .add(&Octonion::unit(4))
        .scale(&half());
    let vectors: [Octonion; 8] = [
        Octonion::one(),
        Octonion::unit(1),
        Octonion::unit(2),
        Octonion::unit(3),
        h.clone(),
        oct_mul(&Octonion::unit(1), &h),
        oct_mul(&Octonion::unit(2), &h),
        oct_mul(&Octonion::unit(3), &h),
    ];

    let mut gram = IntMatrix::zeros(8, 8);
    for i in 0..8 {
        for j in 0..8 {
            let e = vectors[i].inner(&vectors[j]);
            assert!(
                e.is_integer(),
                "basis pairing <b{i}, b{j}> = {e} is not integral"
            );
            gram[(i, j)] = e.to_integer();
        }
    }
    for i in 0..8 {
        assert!(
            (&gram[(i, i)] % BigInt::from(2)).is_zero(),
            "Gram diagonal entry {} is odd; wrong multiplication convention",
            gram[(i, i)]
        );
    }
    assert!(
        gram.det().is_one(),
        "Gram determinant is {}, expected 1; wrong multiplication convention",
        gram.det()
    );
    BasisSystem { vectors, gram }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::XorShift;

    fn random_octonion(rng: &mut XorShift) -> Octonion {
        Octonion::from_coords(std::array::from_fn(|_| {
            BigRational::new(
                BigInt::from(rng.range(-6, 6)),
                BigInt::from(rng.range(1, 4)),
            )
        }))
    }

    #[test]
    fn imaginary_units_square_to_minus_one() {
        let minus_one = Octonion::one().scale(&rat(-1));
        for i in 1..8 {
            let e = Octonion::unit(i);
            assert_eq!(oct_mul(&e, &e), minus_one, "e{i}^2 != -1");
        }
    }

    #[test]
    fn one_is_a_two_sided_unit() {
        let mut rng = XorShift::new(0x0c70);
        let one = Octonion::one();
        for _ in 0..20 {
            let x = random_octonion(&mut rng);
            assert_eq!(oct_mul(&one, &x), x);
            assert_eq!(oct_mul(&x, &one), x);
        }
    }

    #[test]
    fn composition_law_holds() {
        let mut rng = XorShift::new(0x0c71);
        for _ in 0..100 {
            let x = random_octonion(&mut rng);
            let y = random_octonion(&mut rng);
            assert_eq!(oct_mul(&x, &y).norm(), x.norm() * y.norm());
        }
    }

    #[test]
    fn pairing_agrees_with_real_part_form() {
        let mut rng = XorShift::new(0x0c72);
        for _ in 0..20 {
            let x = random_octonion(&mut rng);
            let y = random_octonion(&mut rng);
            let via_mul = oct_mul(&x, &y.conj()).re() * rat(2);
            assert_eq!(x.inner(&y), via_mul);
        }
    }

    #[test]
    fn half_vector_has_norm_one() {
        let basis = coxeter_dickson_basis();
        // <b4, b4> = 2 N(h) = 2 * 4 * (1/2)^2
        assert_eq!(basis.vectors[4].inner(&basis.vectors[4]), rat(2));
    }

    #[test]
    fn gram_matches_hand_derived_matrix() {
        let basis = coxeter_dickson_basis();
        let expected = IntMatrix::from_rows(vec![
            vec![2i64, 0, 0, 0, 0, -1, -1, -1],
            vec![0, 2, 0, 0, 1, 0, 1, -1],
            vec![0, 0, 2, 0, 1, -1, 0, 1],
            vec![0, 0, 0, 2, 1, 1, -1, 0],
            vec![0, 1, 1, 1, 2, 0, 0, 0],
            vec![-1, 0, -1, 1, 0, 2, 0, 0],
            vec![-1, 1, 0, -1, 0, 0, 2, 0],
            vec![-1, -1, 1, 0, 0, 0, 0, 2],
        ]);
        assert_eq!(basis.gram, expected);
    }

    #[test]
    fn gram_is_even_unimodular_with_orthonormal_head() {
        let basis = coxeter_dickson_basis();
        assert!(basis.gram.is_symmetric());
        assert_eq!(basis.gram.det(), BigInt::one());
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 2 } else { 0 };
                assert_eq!(basis.gram[(i, j)], BigInt::from(want));
            }
        }
    }
}
