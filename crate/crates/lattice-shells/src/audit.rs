//! The audit battery: every headline fact about the lattice chain is
//! recomputed from scratch and compared, exactly, against a manifest of
//! expected values. Each comparison is emitted as a [`Certificate`] record;
//! the stream is deterministic and ordered, so reruns are byte-identical.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::analysis::{analyze, gram_of_representatives, norm_divisibility, ShellReport};
use crate::error::{Error, Result};
use crate::glue::{glue_code, verify_isotropic_glue};
use crate::lattice::Registry;
use crate::linalg::IntMatrix;
use crate::orbits::{build_cubic_isometry, orbit_decompose, r8_prefix, OrbitDecomposition};
use crate::roots::{cartan_permutation_equivalent, certify_root_system};
use crate::shells::{enumerate_shell, theta_prefix, ThetaPrefix};

/// One audited claim: the exact computed value next to the expected value
/// and its provenance. `pass` holds exactly when the rendered values match.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub claim: String,
    pub inputs: String,
    pub computed: String,
    pub expected: String,
    pub source: String,
    pub pass: bool,
}

/// Ordered certificate stream.
#[derive(Clone, Debug, Default)]
pub struct AuditReport {
    pub certificates: Vec<Certificate>,
}

impl AuditReport {
    pub fn all_pass(&self) -> bool {
        self.certificates.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Certificate> {
        self.certificates.iter().filter(|c| !c.pass)
    }

    /// One JSON record per line, in manifest order.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for c in &self.certificates {
            out.push_str(&serde_json::to_string(c).expect("certificate serializes"));
            out.push('\n');
        }
        out
    }

    /// Aligned text rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.certificates {
            let verdict = if c.pass { "pass" } else { "FAIL" };
            out.push_str(&format!(
                "{verdict}  {:<34} computed {}\n",
                c.claim, c.computed
            ));
            if !c.pass {
                out.push_str(&format!("      expected {}  [{}]\n", c.expected, c.source));
            }
        }
        let failed = self.certificates.iter().filter(|c| !c.pass).count();
        out.push_str(&format!(
            "{} certificates, {} failed\n",
            self.certificates.len(),
            failed
        ));
        out
    }
}

/// Expected value and provenance per claim, in emission order.
/// This is the single source of comparison values for the whole battery;
/// nothing here is ever fed back into a computation.
const MANIFEST: &[(&str, &str, &str)] = &[
    (
        "classical.first_shell.A1",
        "2",
        "integral-system table, audited first-shell count",
    ),
    (
        "classical.first_shell.A2",
        "6",
        "integral-system table, audited first-shell count",
    ),
    (
        "classical.first_shell.square",
        "4",
        "integral-system table, audited first-shell count",
    ),
    (
        "classical.first_shell.cubic4",
        "8",
        "integral-system table, audited first-shell count",
    ),
    (
        "classical.first_shell.A2xA2",
        "12",
        "integral-system table, audited first-shell count",
    ),
    (
        "classical.first_shell.D4",
        "24",
        "integral-system table, audited first-shell count",
    ),
    (
        "classical.first_shell.cubic8",
        "16",
        "integral-system table, audited first-shell count",
    ),
    (
        "classical.first_shell.A2^4",
        "24",
        "integral-system table, audited first-shell count",
    ),
    (
        "classical.first_shell.D4xD4",
        "48",
        "integral-system table, audited first-shell count",
    ),
    (
        "classical.first_shell.E8",
        "240",
        "integral-system table, audited first-shell count",
    ),
    (
        "classical.convolution.A2xA2",
        "true",
        "orthogonal-sum shell convolution identity, N <= 4",
    ),
    (
        "classical.convolution.A2^4",
        "true",
        "orthogonal-sum shell convolution identity, N <= 4",
    ),
    (
        "classical.convolution.D4xD4",
        "true",
        "orthogonal-sum shell convolution identity, N <= 4",
    ),
    (
        "e8.gram.even",
        "true",
        "even unimodular rank-8 lattice invariants",
    ),
    (
        "e8.gram.det",
        "1",
        "even unimodular rank-8 lattice invariants",
    ),
    (
        "e8.shell1.count",
        "240",
        "minimal-vector count of the rank-8 even unimodular lattice",
    ),
    (
        "e8.root.type",
        "E8",
        "root certification of the minimal shell",
    ),
    (
        "e8.root.orbit",
        "240",
        "reflection orbit of the certified base",
    ),
    (
        "e8.theta",
        "[1, 240, 2160, 6720, 17520, 30240]",
        "theta coefficients of the rank-8 even unimodular lattice, N <= 5",
    ),
    (
        "okubo.index",
        "4096",
        "conductor index in the rank-8 even unimodular lattice",
    ),
    ("okubo.det", "16777216", "conductor determinant"),
    (
        "okubo.gram_mod8",
        "true",
        "entrywise divisibility of the conductor Gram by 8",
    ),
    (
        "okubo.norm_divisibility",
        "4",
        "norm divisibility forced by the conductor",
    ),
    (
        "okubo.shells",
        "[0, 0, 0, 16, 0, 0, 0, 112, 0, 0, 0, 448, 0, 0, 0, 1136]",
        "conductor shell-count table, N = 1..16",
    ),
    (
        "okubo.cross.gram",
        "8*I_8",
        "cross-polytope representative Gram of the first visible shell",
    ),
    (
        "okubo.cross.type",
        "A1^8",
        "rescaled root certificate of the first visible shell",
    ),
    (
        "okubo.d8.count",
        "112",
        "second visible shell of the conductor",
    ),
    (
        "okubo.d8.type",
        "D8",
        "root certificate of the second visible shell",
    ),
    (
        "okubo.d8.cartan",
        "true",
        "permutation equivalence with the reference D8 Cartan matrix",
    ),
    (
        "okubo.d8.orbit",
        "112",
        "reflection orbit of the certified D8 base",
    ),
    (
        "okubo.s12.analysis",
        "antipodal=true rank=8 centroid=true design2=1344",
        "degree-two design properties of the N=12 shell",
    ),
    (
        "okubo.s16.analysis",
        "antipodal=true rank=8 centroid=true design2=4544",
        "degree-two design properties of the N=16 shell",
    ),
    (
        "okubo.theta_compression",
        "true",
        "theta support compression onto multiples of four",
    ),
    (
        "m.index",
        "16",
        "intermediate lattice index in the rank-8 even unimodular lattice",
    ),
    ("m.det", "256", "intermediate lattice determinant"),
    (
        "m.shell_identity.k1",
        "true",
        "coordinate identity between conductor shell 4k and half-lattice shell k",
    ),
    (
        "m.shell_identity.k2",
        "true",
        "coordinate identity between conductor shell 4k and half-lattice shell k",
    ),
    (
        "m.shell_identity.k3",
        "true",
        "coordinate identity between conductor shell 4k and half-lattice shell k",
    ),
    (
        "m.shell_identity.k4",
        "true",
        "coordinate identity between conductor shell 4k and half-lattice shell k",
    ),
    (
        "m.s3.refusal",
        "reflection-closure",
        "cubic norm-3 shell fails reflection closure",
    ),
    (
        "m.cubic.frame_gram",
        "2*I_8",
        "orthogonal frame from the first shell",
    ),
    (
        "m.cubic.unimodular",
        "true",
        "frame change of basis is unimodular",
    ),
    (
        "m.theta",
        "[1, 16, 112, 448, 1136, 2016, 3136, 5504, 9328, 12112, 14112, 21312, 31808]",
        "theta coefficients of the intermediate lattice, N <= 12",
    ),
    (
        "m.r8_agreement",
        "true",
        "sum-of-eight-squares convolution oracle vs enumeration, N <= 16",
    ),
    (
        "m.orbits.s1",
        "{(1,0^7): 16}",
        "signed-permutation orbit decomposition",
    ),
    (
        "m.orbits.s2",
        "{(1^2,0^6): 112}",
        "signed-permutation orbit decomposition",
    ),
    (
        "m.orbits.s3",
        "{(1^3,0^5): 448}",
        "signed-permutation orbit decomposition",
    ),
    (
        "m.orbits.s4",
        "{(1^4,0^4): 1120, (2,0^7): 16}",
        "signed-permutation orbit decomposition",
    ),
    (
        "m.orbits.s5",
        "{(1^5,0^3): 1792, (2,1,0^6): 224}",
        "signed-permutation orbit decomposition",
    ),
    (
        "glue.quotient",
        "[1, 1, 1, 1, 2, 2, 2, 2]",
        "elementary 2-group quotient of the intermediate embedding",
    ),
    (
        "glue.order",
        "16",
        "glue group order equals the embedding index",
    ),
    ("glue.isotropic", "true", "every glue coset has q = 0 mod 2"),
    (
        "glue.maximal",
        "true",
        "determinant identity |glue|^2 = det(sub)/det(sup)",
    ),
    (
        "glue.overlattice.det",
        "1",
        "unimodular overlattice recovered by gluing",
    ),
    (
        "glue.overlattice.even",
        "true",
        "overlattice stays even under isotropic gluing",
    ),
    (
        "glue.overlattice.shell1",
        "240",
        "minimal shell of the glued overlattice",
    ),
    (
        "glue.overlattice.type",
        "E8",
        "root certificate of the glued overlattice",
    ),
    (
        "gluecode.parameters",
        "[8, 4, 4]",
        "binary glue code in cubic coordinates",
    ),
    (
        "gluecode.weights",
        "1 + 14w^4 + w^8",
        "weight enumerator by coset enumeration",
    ),
];

fn manifest_entry(claim: &str) -> (&'static str, &'static str) {
    MANIFEST
        .iter()
        .find(|(c, _, _)| *c == claim)
        .map(|(_, expected, source)| (*expected, *source))
        .unwrap_or_else(|| panic!("claim `{claim}` missing from the manifest"))
}

/// The reference Cartan matrix for the D8 certificate, in path-plus-fork
/// node order.
pub fn d8_reference_cartan() -> IntMatrix {
    IntMatrix::from_rows(vec![
        vec![2i64, -1, 0, 0, 0, 0, 0, 0],
        vec![-1, 2, -1, 0, 0, 0, 0, 0],
        vec![0, -1, 2, -1, 0, 0, 0, 0],
        vec![0, 0, -1, 2, -1, 0, 0, 0],
        vec![0, 0, 0, -1, 2, -1, 0, 0],
        vec![0, 0, 0, 0, -1, 2, -1, -1],
        vec![0, 0, 0, 0, 0, -1, 2, 0],
        vec![0, 0, 0, 0, 0, -1, 0, 2],
    ])
}

fn seq<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let inner = items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    format!("[{inner}]")
}

fn scalar_matrix_string(m: &IntMatrix) -> String {
    if m.is_square() {
        let n = m.rows();
        let d = m[(0, 0)].clone();
        let scalar = (0..n)
            .all(|i| (0..n).all(|j| m[(i, j)] == if i == j { d.clone() } else { BigInt::zero() }));
        if scalar {
            return format!("{d}*I_{n}");
        }
    }
    m.to_string()
}

fn report_string(r: &ShellReport) -> String {
    format!(
        "antipodal={} rank={} centroid={} design2={}",
        r.antipodal,
        r.rank,
        r.centroid_zero,
        r.design2
            .as_ref()
            .map_or_else(|| "none".to_string(), |l| l.to_string())
    )
}

fn decomposition_string(d: &OrbitDecomposition) -> String {
    let inner = d
        .parts
        .iter()
        .map(|(sig, count)| format!("{sig}: {count}"))
        .collect::<Vec<_>>()
        .join(", ");
    format!("{{{inner}}}")
}

struct Auditor<'r> {
    registry: &'r Registry,
    only: Option<String>,
    certificates: Vec<Certificate>,
    theta_okubo: Option<ThetaPrefix>,
    theta_intermediate: Option<ThetaPrefix>,
}

impl<'r> Auditor<'r> {
    fn new(registry: &'r Registry, only: Option<&str>) -> Self {
        Auditor {
            registry,
            only: only.map(str::to_string),
            certificates: Vec::new(),
            theta_okubo: None,
            theta_intermediate: None,
        }
    }

    /// Whether any claim with this prefix survives the filter.
    fn wants(&self, prefix: &str) -> bool {
        match &self.only {
            None => true,
            Some(only) => MANIFEST
                .iter()
                .any(|(c, _, _)| c.starts_with(prefix) && c.starts_with(only.as_str())),
        }
    }

    fn selected(&self, claim: &str) -> bool {
        self.only
            .as_deref()
            .is_none_or(|only| claim.starts_with(only))
    }

    fn push(&mut self, claim: &str, inputs: impl Into<String>, computed: impl Into<String>) {
        if !self.selected(claim) {
            return;
        }
        let (expected, source) = manifest_entry(claim);
        let computed = computed.into();
        let pass = computed == expected;
        self.certificates.push(Certificate {
            claim: claim.to_string(),
            inputs: inputs.into(),
            computed,
            expected: expected.to_string(),
            source: source.to_string(),
            pass,
        });
    }

    /// A computation that could not even produce a value still yields its
    /// certificates, failing with the error as the computed column. Keeps
    /// the claim sequence identical for corrupted fixtures.
    fn push_errors(&mut self, claims: &[&str], inputs: &str, err: &Error) {
        for claim in claims {
            self.push(claim, inputs, format!("error: {err}"));
        }
    }

    fn theta_okubo(&mut self) -> Result<&ThetaPrefix> {
        if self.theta_okubo.is_none() {
            let lok = self.registry.get("L_Ok")?;
            self.theta_okubo = Some(theta_prefix(lok, 16)?);
        }
        Ok(self.theta_okubo.as_ref().unwrap())
    }

    fn theta_intermediate(&mut self) -> Result<&ThetaPrefix> {
        if self.theta_intermediate.is_none() {
            let m = self.registry.get("M")?;
            self.theta_intermediate = Some(theta_prefix(m, 16)?);
        }
        Ok(self.theta_intermediate.as_ref().unwrap())
    }

    fn classical(&mut self) -> Result<()> {
        if !self.wants("classical.") {
            return Ok(());
        }
        for name in [
            "A1", "A2", "square", "cubic4", "A2xA2", "D4", "cubic8", "A2^4", "D4xD4", "E8",
        ] {
            let l = self.registry.get(name)?;
            let count = enumerate_shell(l, 1)?.len();
            self.push(
                &format!("classical.first_shell.{name}"),
                format!("lattice={name} norm=1"),
                count.to_string(),
            );
        }
        for (name, left, right) in [
            ("A2xA2", "A2", "A2"),
            ("A2^4", "A2xA2", "A2xA2"),
            ("D4xD4", "D4", "D4"),
        ] {
            let sum = self.registry.get(name)?;
            let l = self.registry.get(left)?;
            let r = self.registry.get(right)?;
            let ts = theta_prefix(sum, 4)?.coefficients;
            let tl = theta_prefix(l, 4)?.coefficients;
            let tr = theta_prefix(r, 4)?.coefficients;
            let holds =
                (0..=4usize).all(|n| ts[n] == (0..=n).map(|a| tl[a] * tr[n - a]).sum::<u64>());
            self.push(
                &format!("classical.convolution.{name}"),
                format!("lattice={name} parts={left},{right} max_norm=4"),
                holds.to_string(),
            );
        }
        Ok(())
    }

    fn gosset(&mut self) -> Result<()> {
        if !self.wants("e8.") {
            return Ok(());
        }
        let e8 = self.registry.get("E8")?.clone();
        self.push("e8.gram.even", "lattice=E8", e8.is_even().to_string());
        self.push("e8.gram.det", "lattice=E8", e8.det().to_string());
        let shell = enumerate_shell(&e8, 1)?;
        self.push(
            "e8.shell1.count",
            "lattice=E8 norm=1",
            shell.len().to_string(),
        );
        match certify_root_system(&shell) {
            Ok(cert) => {
                self.push("e8.root.type", "lattice=E8 norm=1", cert.dynkin.to_string());
                self.push(
                    "e8.root.orbit",
                    "lattice=E8 norm=1",
                    cert.orbit_size.to_string(),
                );
            }
            Err(refusal) => {
                self.push(
                    "e8.root.type",
                    "lattice=E8 norm=1",
                    format!("refused: {refusal}"),
                );
                self.push("e8.root.orbit", "lattice=E8 norm=1", "refused".to_string());
            }
        }
        let theta = theta_prefix(&e8, 5)?;
        self.push(
            "e8.theta",
            "lattice=E8 max_norm=5",
            seq(theta.coefficients.iter()),
        );
        Ok(())
    }

    fn okubo(&mut self) -> Result<()> {
        if !self.wants("okubo.") {
            return Ok(());
        }
        // the index claim is about the conductor map itself, so it is
        // computed from the diagonal applied to the registry's E8; the
        // Gram-dependent claims below read the registry's L_Ok and fail
        // individually if that fixture is off
        let emb =
            crate::lattice::conductor(self.registry.get("E8")?, &crate::lattice::OKUBO_CONDUCTOR)?;
        self.push("okubo.index", "sub=L_Ok sup=E8", emb.index().to_string());
        let lok = self.registry.get("L_Ok")?.clone();
        self.push("okubo.det", "lattice=L_Ok", lok.det().to_string());
        let all_mod8 = lok.gram.entries().all(|e| (e % BigInt::from(8)).is_zero());
        self.push("okubo.gram_mod8", "lattice=L_Ok", all_mod8.to_string());
        self.push(
            "okubo.norm_divisibility",
            "lattice=L_Ok",
            norm_divisibility(&lok).to_string(),
        );

        let counts: Vec<u64> = self.theta_okubo()?.coefficients[1..=16].to_vec();
        self.push(
            "okubo.shells",
            "lattice=L_Ok norms=1..16",
            seq(counts.iter()),
        );

        let cross = enumerate_shell(&lok, 4)?;
        let gram_string = match gram_of_representatives(&cross) {
            Ok(gram) => scalar_matrix_string(&gram),
            Err(e) => format!("error: {e}"),
        };
        self.push("okubo.cross.gram", "lattice=L_Ok norm=4", gram_string);
        let cross_type = if cross.is_empty() {
            "error: empty shell".to_string()
        } else {
            match certify_root_system(&cross) {
                Ok(cert) => cert.dynkin.to_string(),
                Err(refusal) => format!("refused: {refusal}"),
            }
        };
        self.push("okubo.cross.type", "lattice=L_Ok norm=4", cross_type);

        let d8_shell = enumerate_shell(&lok, 8)?;
        self.push(
            "okubo.d8.count",
            "lattice=L_Ok norm=8",
            d8_shell.len().to_string(),
        );
        if d8_shell.is_empty() {
            let msg = "error: empty shell";
            self.push("okubo.d8.type", "lattice=L_Ok norm=8", msg);
            self.push("okubo.d8.cartan", "lattice=L_Ok norm=8", msg);
            self.push("okubo.d8.orbit", "lattice=L_Ok norm=8", msg);
        } else {
            match certify_root_system(&d8_shell) {
                Ok(cert) => {
                    self.push(
                        "okubo.d8.type",
                        "lattice=L_Ok norm=8",
                        cert.dynkin.to_string(),
                    );
                    self.push(
                        "okubo.d8.cartan",
                        "lattice=L_Ok norm=8",
                        cartan_permutation_equivalent(&cert.cartan, &d8_reference_cartan())
                            .to_string(),
                    );
                    self.push(
                        "okubo.d8.orbit",
                        "lattice=L_Ok norm=8",
                        cert.orbit_size.to_string(),
                    );
                }
                Err(refusal) => {
                    let msg = format!("refused: {refusal}");
                    self.push("okubo.d8.type", "lattice=L_Ok norm=8", msg.clone());
                    self.push("okubo.d8.cartan", "lattice=L_Ok norm=8", msg.clone());
                    self.push("okubo.d8.orbit", "lattice=L_Ok norm=8", msg);
                }
            }
        }

        for n in [12u32, 16] {
            let shell = enumerate_shell(&lok, n)?;
            let report_line = match analyze(&shell) {
                Ok(report) => report_string(&report),
                Err(e) => format!("error: {e}"),
            };
            self.push(
                &format!("okubo.s{n}.analysis"),
                format!("lattice=L_Ok norm={n}"),
                report_line,
            );
        }

        let theta_m = self.theta_intermediate()?.coefficients.clone();
        let theta_lok = &self.theta_okubo()?.coefficients;
        let compressed = (1..=16usize).all(|n| {
            if n % 4 == 0 {
                theta_lok[n] == theta_m[n / 4]
            } else {
                theta_lok[n] == 0
            }
        });
        self.push(
            "okubo.theta_compression",
            "lattice=L_Ok vs M max_norm=16",
            compressed.to_string(),
        );
        Ok(())
    }

    fn intermediate(&mut self) -> Result<()> {
        if !self.wants("m.") {
            return Ok(());
        }
        let emb = crate::lattice::conductor(self.registry.get("E8")?, &[1, 1, 1, 1, 2, 2, 2, 2])?;
        self.push("m.index", "sub=M sup=E8", emb.index().to_string());
        let m = self.registry.get("M")?.clone();
        self.push("m.det", "lattice=M", m.det().to_string());

        let lok = self.registry.get("L_Ok")?.clone();
        for k in 1u32..=4 {
            let shell_lok = enumerate_shell(&lok, 4 * k)?;
            let shell_m = enumerate_shell(&m, k)?;
            self.push(
                &format!("m.shell_identity.k{k}"),
                format!("lattice=L_Ok norm={} vs lattice=M norm={k}", 4 * k),
                (shell_lok.vectors == shell_m.vectors).to_string(),
            );
        }

        let s3 = enumerate_shell(&m, 3)?;
        let refusal = if s3.is_empty() {
            "error: empty shell".to_string()
        } else {
            match certify_root_system(&s3) {
                Err(r) => r.stage().to_string(),
                Ok(_) => "certified".to_string(),
            }
        };
        self.push("m.s3.refusal", "lattice=M norm=3", refusal);

        let iso = build_cubic_isometry(&m);
        match &iso {
            Ok(iso) => {
                let frame_gram = IntMatrix::from_fn(m.rank(), m.rank(), |i, j| {
                    m.inner(&iso.frame[i], &iso.frame[j])
                });
                self.push(
                    "m.cubic.frame_gram",
                    "lattice=M norm=1",
                    scalar_matrix_string(&frame_gram),
                );
                let det = iso.to_cubic.det();
                self.push(
                    "m.cubic.unimodular",
                    "lattice=M",
                    (det == BigInt::one() || det == -BigInt::one()).to_string(),
                );
            }
            Err(e) => {
                self.push_errors(
                    &["m.cubic.frame_gram", "m.cubic.unimodular"],
                    "lattice=M",
                    e,
                );
            }
        }

        let theta = self.theta_intermediate()?.coefficients.clone();
        self.push("m.theta", "lattice=M max_norm=12", seq(theta[..=12].iter()));
        let oracle = r8_prefix(16);
        let agree = (0..=16usize).all(|n| theta[n] == oracle[n]);
        self.push("m.r8_agreement", "lattice=M max_norm=16", agree.to_string());

        for n in 1u32..=5 {
            let line = match &iso {
                Ok(iso) => {
                    let shell = enumerate_shell(&m, n)?;
                    match orbit_decompose(&shell, iso) {
                        Ok(decomp) => decomposition_string(&decomp),
                        Err(e) => format!("error: {e}"),
                    }
                }
                Err(e) => format!("error: {e}"),
            };
            self.push(
                &format!("m.orbits.s{n}"),
                format!("lattice=M norm={n}"),
                line,
            );
        }
        Ok(())
    }

    fn gluing(&mut self) -> Result<()> {
        if !self.wants("glue") {
            return Ok(());
        }
        const GLUE_CLAIMS: [&str; 10] = [
            "glue.quotient",
            "glue.order",
            "glue.isotropic",
            "glue.maximal",
            "glue.overlattice.det",
            "glue.overlattice.even",
            "glue.overlattice.shell1",
            "glue.overlattice.type",
            "gluecode.parameters",
            "gluecode.weights",
        ];
        let prerequisites = (|| {
            let emb = self.registry.embedding("M", "E8")?;
            let iso = build_cubic_isometry(self.registry.get("M")?)?;
            let result = verify_isotropic_glue(&emb, Some(&iso))?;
            Ok((result, emb, iso))
        })();
        let (result, emb, iso) = match prerequisites {
            Ok(v) => v,
            Err(e) => {
                self.push_errors(&GLUE_CLAIMS, "sub=M sup=E8", &e);
                return Ok(());
            }
        };
        self.push(
            "glue.quotient",
            "sub=M sup=E8",
            seq(result.quotient_factors.iter()),
        );
        self.push("glue.order", "sub=M sup=E8", result.glue_order.to_string());
        self.push(
            "glue.isotropic",
            "sub=M sup=E8",
            result.isotropic.to_string(),
        );
        self.push("glue.maximal", "sub=M sup=E8", result.maximal.to_string());
        self.push(
            "glue.overlattice.det",
            "sub=M sup=E8",
            result.overlattice.det().to_string(),
        );
        self.push(
            "glue.overlattice.even",
            "sub=M sup=E8",
            result.overlattice.is_even().to_string(),
        );
        let shell = enumerate_shell(&result.overlattice, 1)?;
        self.push(
            "glue.overlattice.shell1",
            "lattice=glued(M) norm=1",
            shell.len().to_string(),
        );
        match certify_root_system(&shell) {
            Ok(cert) => self.push(
                "glue.overlattice.type",
                "lattice=glued(M) norm=1",
                cert.dynkin.to_string(),
            ),
            Err(refusal) => self.push(
                "glue.overlattice.type",
                "lattice=glued(M) norm=1",
                format!("refused: {refusal}"),
            ),
        }

        match glue_code(&emb, &iso) {
            Ok(code) => {
                self.push(
                    "gluecode.parameters",
                    "sub=M sup=E8",
                    seq([code.length, code.dimension, code.min_weight]),
                );
                self.push(
                    "gluecode.weights",
                    "sub=M sup=E8",
                    code.weight_enumerator_string(),
                );
            }
            Err(e) => {
                self.push_errors(
                    &["gluecode.parameters", "gluecode.weights"],
                    "sub=M sup=E8",
                    &e,
                );
            }
        }
        Ok(())
    }
}

/// Runs the full battery against a registry.
pub fn audit_all(registry: &Registry) -> Result<AuditReport> {
    audit_filtered(registry, None)
}

/// Runs the battery, keeping only claims that start with `only` when given.
/// Certificates are emitted in manifest order.
pub fn audit_filtered(registry: &Registry, only: Option<&str>) -> Result<AuditReport> {
    let mut auditor = Auditor::new(registry, only);
    auditor.classical()?;
    auditor.gosset()?;
    auditor.okubo()?;
    auditor.intermediate()?;
    auditor.gluing()?;
    Ok(AuditReport {
        certificates: auditor.certificates,
    })
}

/// The four summary tables, rendered from live computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Classical,
    OkuboShells,
    LatticeChain,
    ShellPolytopes,
}

impl std::str::FromStr for TableKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical" => Ok(TableKind::Classical),
            "okubo-shells" => Ok(TableKind::OkuboShells),
            "lattice-chain" => Ok(TableKind::LatticeChain),
            "shell-polytopes" => Ok(TableKind::ShellPolytopes),
            other => Err(Error::UnknownTable(other.to_string())),
        }
    }
}

pub fn emit_table(registry: &Registry, kind: TableKind) -> Result<String> {
    match kind {
        TableKind::Classical => classical_table(registry),
        TableKind::OkuboShells => okubo_shell_table(registry),
        TableKind::LatticeChain => lattice_chain_table(registry),
        TableKind::ShellPolytopes => shell_polytope_table(registry),
    }
}

fn classical_table(registry: &Registry) -> Result<String> {
    let rows = [
        ("Integers", "A1"),
        ("Eisenstein", "A2"),
        ("Gaussian", "square"),
        ("Hamilton", "cubic4"),
        ("Hybrid", "A2xA2"),
        ("Hurwitz", "D4"),
        ("Cayley-Graves", "cubic8"),
        ("Comp. Eisenstein", "A2^4"),
        ("Coupled Hurwitz", "D4xD4"),
        ("Coxeter-Dickson", "E8"),
    ];
    let mut out = String::from(
        "name              lattice   #S1   first-shell type\n\
         ----------------  --------  ----  ----------------\n",
    );
    for (name, lattice) in rows {
        let l = registry.get(lattice)?;
        let shell = enumerate_shell(l, 1)?;
        let type_string = match certify_root_system(&shell) {
            Ok(cert) => cert.dynkin.to_string(),
            Err(refusal) => format!("refused at {}", refusal.stage()),
        };
        out.push_str(&format!(
            "{name:<16}  {lattice:<8}  {:>4}  {type_string}\n",
            shell.len()
        ));
    }
    Ok(out)
}

fn okubo_shell_table(registry: &Registry) -> Result<String> {
    let lok = registry.get("L_Ok")?;
    let m = registry.get("M")?;
    let iso = build_cubic_isometry(m).ok();
    let mut out = String::from(
        " N  <x,x>  count  interpretation\n\
         --  -----  -----  --------------\n",
    );
    for n in 1u32..=16 {
        let shell = enumerate_shell(lok, n)?;
        let interpretation = if shell.is_empty() {
            "empty".to_string()
        } else {
            match certify_root_system(&shell) {
                Ok(cert) => format!("{} root polytope", cert.dynkin),
                Err(_) => match &iso {
                    Some(iso) => {
                        let as_m = shell.reinterpret(m, n / 4);
                        let decomp = orbit_decompose(&as_m, iso)?;
                        format!("orbits {}", decomposition_string(&decomp))
                    }
                    None => "unclassified".to_string(),
                },
            }
        };
        out.push_str(&format!(
            "{n:>2}  {:>5}  {:>5}  {interpretation}\n",
            2 * n,
            shell.len()
        ));
    }
    Ok(out)
}

fn lattice_chain_table(registry: &Registry) -> Result<String> {
    let mut out = String::from(
        "lattice  index-in-E8  det       first nonempty shell\n\
         -------  -----------  --------  --------------------\n",
    );
    for name in ["L_Ok", "M", "E8"] {
        let l = registry.get(name)?;
        let index = registry.embedding(name, "E8")?.index();
        let det = l.det();
        let (first_n, count) = (1u32..)
            .find_map(|n| {
                let len = enumerate_shell(l, n).ok()?.len();
                (len > 0).then_some((n, len))
            })
            .expect("positive definite lattice has nonempty shells");
        out.push_str(&format!(
            "{name:<7}  {index:>11}  {det:>8}  {count} vectors at N={first_n}\n"
        ));
    }
    Ok(out)
}

fn shell_polytope_table(registry: &Registry) -> Result<String> {
    let m = registry.get("M")?;
    let iso = build_cubic_isometry(m)?;
    let mut out = String::from(
        "lattice  N   vertices  type / orbits in cubic coordinates\n\
         -------  --  --------  ----------------------------------\n",
    );
    let e8 = registry.get("E8")?;
    let shell = enumerate_shell(e8, 1)?;
    let e8_type = match certify_root_system(&shell) {
        Ok(cert) => format!("{} root polytope", cert.dynkin),
        Err(refusal) => format!("refused at {}", refusal.stage()),
    };
    out.push_str(&format!("E8       1   {:>8}  {e8_type}\n", shell.len()));

    let lok = registry.get("L_Ok")?;
    for (lattice_name, l, norms, scale) in [
        ("L_Ok", lok, [4u32, 8, 12, 16], 4u32),
        ("M", m, [1, 2, 3, 4], 1),
    ] {
        for n in norms {
            let shell = enumerate_shell(l, n)?;
            let as_m = shell.reinterpret(m, n / scale);
            let decomp = orbit_decompose(&as_m, &iso)?;
            let mut label = match certify_root_system(&shell) {
                Ok(cert) => format!("{}; ", cert.dynkin),
                Err(_) => String::new(),
            };
            label.push_str(&format!("orbits {}", decomposition_string(&decomp)));
            out.push_str(&format!(
                "{lattice_name:<7}  {n:<2}  {:>8}  {label}\n",
                shell.len()
            ));
        }
    }
    Ok(out)
}
