//! Acceptance suite: every headline property of the lattice chain is
//! verified exactly, printing one pass/fail line per criterion.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use lattice_shells::analysis::{analyze, gram_of_representatives};
use lattice_shells::audit::{audit_all, d8_reference_cartan};
use lattice_shells::glue::{glue_code, quotient, verify_isotropic_glue};
use lattice_shells::lattice::{builtin, known_embedding, Registry};
use lattice_shells::linalg::{ldlt, smith_normal_form, IntMatrix};
use lattice_shells::orbits::{build_cubic_isometry, orbit_decompose, r8_prefix, OrbitSignature};
use lattice_shells::roots::{
    cartan_permutation_equivalent, certify_root_system, DynkinComponent, DynkinType, RefusalStage,
};
use lattice_shells::shells::{enumerate_shell, theta_prefix};

fn criterion(id: u32, name: &str, body: impl FnOnce() -> Result<(), String>) {
    match body() {
        Ok(()) => println!("criterion {id:02} ({name}): PASS"),
        Err(e) => {
            println!("criterion {id:02} ({name}): FAIL - {e}");
            panic!("criterion {id:02} ({name}) failed: {e}");
        }
    }
}

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        if !($cond) {
            return Err(format!($($msg)+));
        }
    };
}

fn bi(n: i64) -> BigInt {
    BigInt::from(n)
}

fn dynkin(components: Vec<DynkinComponent>) -> DynkinType {
    DynkinType::new(components)
}

#[test]
fn criterion_01_e8_construction() {
    criterion(1, "E8 construction", || {
        let e8 = builtin("E8").map_err(|e| e.to_string())?;
        check!(e8.is_even(), "Gram is not even");
        check!(e8.det() == bi(1), "det is {}, expected 1", e8.det());
        let shell = enumerate_shell(&e8, 1).map_err(|e| e.to_string())?;
        check!(
            shell.len() == 240,
            "first shell has {} vectors",
            shell.len()
        );
        let cert = certify_root_system(&shell).map_err(|r| r.to_string())?;
        check!(
            cert.dynkin == dynkin(vec![DynkinComponent::E(8)]),
            "type is {}, expected E8",
            cert.dynkin
        );
        check!(cert.orbit_size == 240, "orbit size {}", cert.orbit_size);
        Ok(())
    });
}

#[test]
fn criterion_02_e8_theta() {
    criterion(2, "E8 theta", || {
        let e8 = builtin("E8").map_err(|e| e.to_string())?;
        let theta = theta_prefix(&e8, 5).map_err(|e| e.to_string())?;
        let expected = [1u64, 240, 2160, 6720, 17520, 30240];
        check!(
            theta.coefficients == expected,
            "theta is {:?}, expected {expected:?}",
            theta.coefficients
        );
        Ok(())
    });
}

#[test]
fn criterion_03_conductor_arithmetic() {
    criterion(3, "conductor arithmetic", || {
        let emb = known_embedding("L_Ok", "E8").map_err(|e| e.to_string())?;
        check!(emb.index() == bi(1) << 12, "index is {}", emb.index());
        check!(
            emb.sub.det() == bi(1) << 24,
            "determinant is {}",
            emb.sub.det()
        );
        let all_mod8 = emb.sub.gram.entries().all(|e| (e % bi(8)) == bi(0));
        check!(all_mod8, "some Gram entry is not divisible by 8");
        Ok(())
    });
}

#[test]
fn criterion_04_okubo_shell_table() {
    criterion(4, "conductor shell table N=1..16", || {
        let lok = builtin("L_Ok").map_err(|e| e.to_string())?;
        let theta = theta_prefix(&lok, 16).map_err(|e| e.to_string())?;
        let expected: [u64; 16] = [0, 0, 0, 16, 0, 0, 0, 112, 0, 0, 0, 448, 0, 0, 0, 1136];
        check!(
            theta.coefficients[1..] == expected,
            "shell counts are {:?}",
            &theta.coefficients[1..]
        );
        Ok(())
    });
}

#[test]
fn criterion_05_cross_polytope() {
    criterion(5, "cross-polytope shell", || {
        let lok = builtin("L_Ok").map_err(|e| e.to_string())?;
        let shell = enumerate_shell(&lok, 4).map_err(|e| e.to_string())?;
        let gram = gram_of_representatives(&shell).map_err(|e| e.to_string())?;
        check!(
            gram == IntMatrix::diagonal(&[8i64; 8]),
            "representative Gram is {gram}"
        );
        let cert = certify_root_system(&shell).map_err(|r| r.to_string())?;
        check!(
            cert.dynkin == dynkin(vec![DynkinComponent::A(1); 8]),
            "type is {}",
            cert.dynkin
        );
        Ok(())
    });
}

#[test]
fn criterion_06_d8_certificate() {
    criterion(6, "D8 certificate", || {
        let lok = builtin("L_Ok").map_err(|e| e.to_string())?;
        let shell = enumerate_shell(&lok, 8).map_err(|e| e.to_string())?;
        let cert = certify_root_system(&shell).map_err(|r| r.to_string())?;
        check!(
            cert.dynkin == dynkin(vec![DynkinComponent::D(8)]),
            "type is {}",
            cert.dynkin
        );
        check!(
            cartan_permutation_equivalent(&cert.cartan, &d8_reference_cartan()),
            "Cartan matrix {} is not permutation-equivalent to the reference",
            cert.cartan
        );
        check!(cert.orbit_size == 112, "orbit size {}", cert.orbit_size);
        Ok(())
    });
}

#[test]
fn criterion_07_higher_shell_properties() {
    criterion(7, "higher-shell properties", || {
        let lok = builtin("L_Ok").map_err(|e| e.to_string())?;
        for n in [12u32, 16] {
            let shell = enumerate_shell(&lok, n).map_err(|e| e.to_string())?;
            let report = analyze(&shell).map_err(|e| e.to_string())?;
            check!(report.antipodal, "S_{n} is not antipodal");
            check!(report.rank == 8, "S_{n} has rank {}", report.rank);
            check!(report.centroid_zero, "S_{n} centroid is nonzero");
            check!(
                report.design2.is_some(),
                "S_{n} fails the exact second-moment identity"
            );
        }
        let m = builtin("M").map_err(|e| e.to_string())?;
        let s3 = enumerate_shell(&m, 3).map_err(|e| e.to_string())?;
        match certify_root_system(&s3) {
            Err(refusal) => check!(
                refusal.stage() == RefusalStage::ReflectionClosure,
                "S3 refused at {}, expected reflection-closure",
                refusal.stage()
            ),
            Ok(_) => return Err("S3 of the cubic model certified unexpectedly".into()),
        }
        Ok(())
    });
}

#[test]
fn criterion_08_intermediate_lattice() {
    criterion(8, "intermediate lattice", || {
        let emb = known_embedding("M", "E8").map_err(|e| e.to_string())?;
        check!(emb.index() == bi(16), "index is {}", emb.index());
        check!(emb.sub.det() == bi(256), "det is {}", emb.sub.det());
        let lok = builtin("L_Ok").map_err(|e| e.to_string())?;
        let m = builtin("M").map_err(|e| e.to_string())?;
        for k in 1u32..=4 {
            let a = enumerate_shell(&lok, 4 * k).map_err(|e| e.to_string())?;
            let b = enumerate_shell(&m, k).map_err(|e| e.to_string())?;
            check!(
                a.vectors == b.vectors,
                "coordinate sets differ at k={k}: {} vs {} vectors",
                a.len(),
                b.len()
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_09_cubic_identification() {
    criterion(9, "cubic identification", || {
        let m = builtin("M").map_err(|e| e.to_string())?;
        let iso = build_cubic_isometry(&m).map_err(|e| e.to_string())?;
        let frame_gram = IntMatrix::from_fn(8, 8, |i, j| m.inner(&iso.frame[i], &iso.frame[j]));
        check!(
            frame_gram == IntMatrix::diagonal(&[2i64; 8]),
            "frame Gram is {frame_gram}"
        );
        let det = iso.to_cubic.det();
        check!(
            det == bi(1) || det == bi(-1),
            "change of basis has determinant {det}"
        );
        let theta = theta_prefix(&m, 16).map_err(|e| e.to_string())?;
        let listed: [u64; 13] = [
            1, 16, 112, 448, 1136, 2016, 3136, 5504, 9328, 12112, 14112, 21312, 31808,
        ];
        check!(
            theta.coefficients[..=12] == listed,
            "theta to 12 is {:?}",
            &theta.coefficients[..=12]
        );
        let oracle = r8_prefix(16);
        check!(
            theta.coefficients == oracle,
            "enumerated theta {:?} disagrees with the convolution oracle {:?}",
            theta.coefficients,
            oracle
        );
        Ok(())
    });
}

#[test]
fn criterion_10_orbit_decompositions() {
    criterion(10, "orbit decompositions", || {
        let m = builtin("M").map_err(|e| e.to_string())?;
        let iso = build_cubic_isometry(&m).map_err(|e| e.to_string())?;
        let sig = |values: &[u32]| {
            let mut v = values.to_vec();
            v.sort_unstable_by(|a, b| b.cmp(a));
            OrbitSignature(v)
        };
        let expected: [Vec<(OrbitSignature, u64)>; 5] = [
            vec![(sig(&[1, 0, 0, 0, 0, 0, 0, 0]), 16)],
            vec![(sig(&[1, 1, 0, 0, 0, 0, 0, 0]), 112)],
            vec![(sig(&[1, 1, 1, 0, 0, 0, 0, 0]), 448)],
            vec![
                (sig(&[2, 0, 0, 0, 0, 0, 0, 0]), 16),
                (sig(&[1, 1, 1, 1, 0, 0, 0, 0]), 1120),
            ],
            vec![
                (sig(&[2, 1, 0, 0, 0, 0, 0, 0]), 224),
                (sig(&[1, 1, 1, 1, 1, 0, 0, 0]), 1792),
            ],
        ];
        for (n, want) in (1u32..=5).zip(expected) {
            let shell = enumerate_shell(&m, n).map_err(|e| e.to_string())?;
            let decomp = orbit_decompose(&shell, &iso).map_err(|e| e.to_string())?;
            let want: std::collections::BTreeMap<_, _> = want.into_iter().collect();
            check!(
                decomp.parts == want,
                "S_{n} decomposes as {:?}",
                decomp.parts
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_11_gluing() {
    criterion(11, "two-adic gluing", || {
        let emb = known_embedding("M", "E8").map_err(|e| e.to_string())?;
        let factors = quotient(&emb);
        check!(
            factors == [1, 1, 1, 1, 2, 2, 2, 2].map(bi).to_vec(),
            "quotient factors are {factors:?}"
        );
        let result = verify_isotropic_glue(&emb, None).map_err(|e| e.to_string())?;
        check!(result.isotropic, "glue is not isotropic");
        check!(result.maximal, "glue fails the determinant identity");
        check!(
            result.overlattice.is_even(),
            "glued overlattice is not even"
        );
        check!(
            result.overlattice.det() == bi(1),
            "glued overlattice has det {}",
            result.overlattice.det()
        );
        let shell = enumerate_shell(&result.overlattice, 1).map_err(|e| e.to_string())?;
        check!(shell.len() == 240, "glued first shell has {}", shell.len());
        let cert = certify_root_system(&shell).map_err(|r| r.to_string())?;
        check!(
            cert.dynkin == dynkin(vec![DynkinComponent::E(8)]),
            "glued overlattice certifies as {}",
            cert.dynkin
        );
        Ok(())
    });
}

#[test]
fn criterion_12_glue_code() {
    criterion(12, "glue code", || {
        let emb = known_embedding("M", "E8").map_err(|e| e.to_string())?;
        let m = builtin("M").map_err(|e| e.to_string())?;
        let iso = build_cubic_isometry(&m).map_err(|e| e.to_string())?;
        let code = glue_code(&emb, &iso).map_err(|e| e.to_string())?;
        check!(
            (code.length, code.dimension, code.min_weight) == (8, 4, 4),
            "code parameters are [{}, {}, {}]",
            code.length,
            code.dimension,
            code.min_weight
        );
        let mut expected = vec![0u64; 9];
        expected[0] = 1;
        expected[4] = 14;
        expected[8] = 1;
        check!(
            code.weight_enumerator == expected,
            "weight enumerator is {:?}",
            code.weight_enumerator
        );
        Ok(())
    });
}

#[test]
fn criterion_13_classical_table() {
    criterion(13, "classical first-shell table", || {
        let rows = [
            ("A1", 2usize),
            ("A2", 6),
            ("square", 4),
            ("cubic4", 8),
            ("A2xA2", 12),
            ("D4", 24),
            ("cubic8", 16),
            ("A2^4", 24),
            ("D4xD4", 48),
            ("E8", 240),
        ];
        for (name, expected) in rows {
            let l = builtin(name).map_err(|e| e.to_string())?;
            let got = enumerate_shell(&l, 1).map_err(|e| e.to_string())?.len();
            check!(
                got == expected,
                "{name} first shell has {got}, expected {expected}"
            );
        }
        for (sum, part) in [("A2xA2", "A2"), ("A2^4", "A2xA2"), ("D4xD4", "D4")] {
            let ts = theta_prefix(&builtin(sum).map_err(|e| e.to_string())?, 4)
                .map_err(|e| e.to_string())?
                .coefficients;
            let tp = theta_prefix(&builtin(part).map_err(|e| e.to_string())?, 4)
                .map_err(|e| e.to_string())?
                .coefficients;
            for n in 0..=4usize {
                let conv: u64 = (0..=n).map(|a| tp[a] * tp[n - a]).sum();
                check!(
                    ts[n] == conv,
                    "{sum}: convolution identity fails at N={n} ({} vs {conv})",
                    ts[n]
                );
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_14_property_suites() {
    criterion(14, "property suites", || {
        // enumerator vs independent box-scan oracle, 1000 random instances
        let mut rng = common::XorShift::new(0xacce97);
        for trial in 0..1000 {
            let rank = (trial % 3) + 1;
            let gram_rows = common::random_pd_gram(&mut rng, rank);
            let norm = rng.range(1, 3) as u32;
            let oracle = common::box_scan_shell(&gram_rows, 2 * i64::from(norm));
            let lattice = lattice_shells::lattice::GramLattice::new(
                format!("random-{trial}"),
                IntMatrix::from_rows(gram_rows.clone()),
            )
            .map_err(|e| e.to_string())?;
            let shell = enumerate_shell(&lattice, norm).map_err(|e| e.to_string())?;
            check!(
                shell.vectors == oracle,
                "trial {trial}: enumerator found {} vectors, oracle {} (gram {gram_rows:?}, N={norm})",
                shell.len(),
                oracle.len()
            );
        }

        // SNF and LDL^T reassembly identities on random matrices
        for trial in 0..200 {
            let n = (trial % 3) + 1;
            let a = IntMatrix::from_fn(n, n, |_, _| bi(rng.range(-9, 9)));
            let snf = smith_normal_form(&a);
            check!(
                snf.u.mul(&a).mul(&snf.v) == snf.s,
                "SNF identity fails on {a}"
            );
            check!(
                snf.u.det().abs() == bi(1) && snf.v.det().abs() == bi(1),
                "SNF transforms are not unimodular for {a}"
            );
            let factors = snf.invariant_factors();
            for w in factors.windows(2) {
                let chain_ok = if w[0] == bi(0) {
                    w[1] == bi(0)
                } else {
                    (&w[1] % &w[0]) == bi(0)
                };
                check!(chain_ok, "divisibility chain broken: {factors:?}");
            }

            let pd = common::random_pd_gram(&mut rng, n);
            let pd_matrix = IntMatrix::from_rows(pd);
            let f = ldlt(&pd_matrix).map_err(|e| e.to_string())?;
            check!(
                f.reassemble() == pd_matrix.to_rational(),
                "LDL^T reassembly fails on {pd_matrix}"
            );
            let pivot_product: BigRational = f.d.iter().product();
            check!(
                pivot_product == BigRational::from_integer(pd_matrix.det()),
                "pivot product disagrees with the determinant on {pd_matrix}"
            );
        }

        // antipodality and zero centroid on every shell the suite touches
        let e8 = builtin("E8").map_err(|e| e.to_string())?;
        let lok = builtin("L_Ok").map_err(|e| e.to_string())?;
        let m = builtin("M").map_err(|e| e.to_string())?;
        let mut shells = Vec::new();
        for n in 1u32..=5 {
            shells.push(enumerate_shell(&e8, n).map_err(|e| e.to_string())?);
        }
        for n in 1u32..=16 {
            shells.push(enumerate_shell(&lok, n).map_err(|e| e.to_string())?);
        }
        for n in (1u32..=8).chain([12, 16]) {
            shells.push(enumerate_shell(&m, n).map_err(|e| e.to_string())?);
        }
        for shell in shells.iter().filter(|s| !s.is_empty()) {
            let report = analyze(shell).map_err(|e| e.to_string())?;
            check!(
                report.antipodal && report.centroid_zero,
                "{} shell N={} is not antipodal/centered",
                shell.lattice.name,
                shell.norm
            );
        }

        // determinism: two full audit runs must emit identical bytes
        let registry = Registry::standard();
        let first = audit_all(&registry).map_err(|e| e.to_string())?;
        let second = audit_all(&registry).map_err(|e| e.to_string())?;
        check!(first.all_pass(), "audit battery has failures");
        check!(
            first.to_jsonl() == second.to_jsonl(),
            "certificate stream is not byte-identical across runs"
        );
        Ok(())
    });
}
