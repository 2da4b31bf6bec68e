//! Root-system certification of shells: simple-root extraction, Cartan
//! matrices, simply-laced Dynkin classification, and reflection closure.
//!
//! A shell only earns a root certificate when reflections in the extracted
//! base map the shell onto itself and their orbit recovers the whole shell;
//! a shell with the right cardinality but no reflection structure is
//! refused with the stage that failed. The refusal is itself a certified
//! outcome: every check is an exact integer computation.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::shells::Shell;

/// Certification stages, in the order they run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RefusalStage {
    EqualNorm,
    Base,
    ReflectionClosure,
    CartanShape,
    OrbitSpan,
}

impl std::fmt::Display for RefusalStage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            RefusalStage::EqualNorm => "equal-norm",
            RefusalStage::Base => "base",
            RefusalStage::ReflectionClosure => "reflection-closure",
            RefusalStage::CartanShape => "cartan-shape",
            RefusalStage::OrbitSpan => "orbit-span",
        };
        f.write_str(s)
    }
}

/// Typed refusal: the expected outcome for shells that are not root
/// configurations.
#[derive(Debug, Error)]
pub enum RootRefusal {
    #[error("shell members do not all have squared length {0}")]
    NotEqualNorm(String),

    #[error("no valid base: |<x,y>| = {inner} exceeds the bound {bound} for a candidate pair")]
    NoValidBase { inner: String, bound: String },

    #[error("reflection by {root:?} fails on {vector:?}: {why}")]
    ReflectionNotClosed {
        root: Vec<i64>,
        vector: Vec<i64>,
        why: String,
    },

    #[error("Cartan matrix is not finite simply-laced: {0}")]
    CartanShape(String),

    #[error("reflection orbit of the base has {orbit} vectors, shell has {shell}")]
    OrbitNotSpanning { orbit: usize, shell: usize },
}

impl RootRefusal {
    pub fn stage(&self) -> RefusalStage {
        match self {
            RootRefusal::NotEqualNorm(_) => RefusalStage::EqualNorm,
            RootRefusal::NoValidBase { .. } => RefusalStage::Base,
            RootRefusal::ReflectionNotClosed { .. } => RefusalStage::ReflectionClosure,
            RootRefusal::CartanShape(_) => RefusalStage::CartanShape,
            RootRefusal::OrbitNotSpanning { .. } => RefusalStage::OrbitSpan,
        }
    }
}

/// Irreducible simply-laced component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum DynkinComponent {
    A(usize),
    D(usize),
    E(usize),
}

impl std::fmt::Display for DynkinComponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DynkinComponent::A(n) => write!(f, "A{n}"),
            DynkinComponent::D(n) => write!(f, "D{n}"),
            DynkinComponent::E(n) => write!(f, "E{n}"),
        }
    }
}

/// Multiset of irreducible components, canonically sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinType(Vec<DynkinComponent>);

impl DynkinType {
    pub fn new(mut components: Vec<DynkinComponent>) -> Self {
        components.sort();
        DynkinType(components)
    }

    pub fn components(&self) -> &[DynkinComponent] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0
            .iter()
            .map(|c| match c {
                DynkinComponent::A(n) | DynkinComponent::D(n) | DynkinComponent::E(n) => *n,
            })
            .sum()
    }
}

impl std::fmt::Display for DynkinType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return f.write_str("(empty)");
        }
        let mut runs: Vec<(DynkinComponent, usize)> = Vec::new();
        for c in &self.0 {
            match runs.last_mut() {
                Some((prev, count)) if prev == c => *count += 1,
                _ => runs.push((*c, 1)),
            }
        }
        let mut first = true;
        for (c, count) in runs {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if count == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}^{count}")?;
            }
        }
        Ok(())
    }
}

/// A fully verified root-system certificate for a shell.
#[derive(Clone, Debug)]
pub struct RootCertificate {
    pub lattice: String,
    pub norm: u32,
    /// `scale * <x,x> = 2` on the shell.
    pub scale: BigRational,
    pub simple_roots: Vec<Vec<i64>>,
    pub cartan: IntMatrix,
    pub dynkin: DynkinType,
    pub orbit_size: usize,
    /// Reflections in the base map the shell to itself and their orbit covers
    /// it; always true on an emitted certificate.
    pub closure_verified: bool,
}

fn inner_i64(gram: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    let mut total = 0i64;
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        let row = &gram[i];
        let mut acc = 0i64;
        for (j, &yj) in y.iter().enumerate() {
            acc += row[j] * yj;
        }
        total += xi * acc;
    }
    total
}

fn gram_rows(shell: &Shell) -> Vec<Vec<i64>> {
    shell
        .lattice
        .gram
        .to_i64_rows()
        .expect("Gram entries exceed i64; beyond the supported desk scale")
}

/// Reflection `s_alpha(x) = x - (2<x,alpha>/<alpha,alpha>) alpha` computed
/// from the Gram form. Fails when the Cartan number is not an integer,
/// which already certifies that the pair is not part of a root configuration.
pub fn reflect(x: &[i64], alpha: &[i64], gram: &IntMatrix) -> Result<Vec<i64>> {
    let rows = gram
        .to_i64_rows()
        .expect("Gram entries exceed i64; beyond the supported desk scale");
    reflect_in(&rows, x, alpha).map_err(Error::NonIntegralCartan)
}

fn reflect_in(
    gram: &[Vec<i64>],
    x: &[i64],
    alpha: &[i64],
) -> std::result::Result<Vec<i64>, String> {
    let alpha_sq = inner_i64(gram, alpha, alpha);
    assert!(alpha_sq > 0, "reflection axis must have positive norm");
    let twice = 2 * inner_i64(gram, x, alpha);
    if twice % alpha_sq != 0 {
        return Err(format!("{twice}/{alpha_sq}"));
    }
    let c = twice / alpha_sq;
    Ok(x.iter().zip(alpha).map(|(&xi, &ai)| xi - c * ai).collect())
}

/// Smallest positive integer `t` for which `f(x) = sum t^i x_i` vanishes
/// nowhere on the shell.
fn generic_functional(shell: &Shell, start: i64) -> i64 {
    let n = shell.lattice.rank();
    't: for t in start.. {
        let weights: Vec<i128> = (0..n)
            .scan(1i128, |acc, _| {
                let w = *acc;
                *acc *= t as i128;
                Some(w)
            })
            .collect();
        for v in &shell.vectors {
            let f: i128 = v.iter().zip(&weights).map(|(&c, &w)| c as i128 * w).sum();
            if f == 0 {
                continue 't;
            }
        }
        return t;
    }
    unreachable!("a finite shell omits some functional")
}

fn positive_part(shell: &Shell, t: i64) -> Vec<Vec<i64>> {
    let n = shell.lattice.rank();
    let weights: Vec<i128> = (0..n)
        .scan(1i128, |acc, _| {
            let w = *acc;
            *acc *= t as i128;
            Some(w)
        })
        .collect();
    shell
        .vectors
        .iter()
        .filter(|v| {
            v.iter()
                .zip(&weights)
                .map(|(&c, &w)| c as i128 * w)
                .sum::<i128>()
                > 0
        })
        .cloned()
        .collect()
}

fn indecomposables(positive: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let set: HashSet<&[i64]> = positive.iter().map(|v| v.as_slice()).collect();
    let mut base: Vec<Vec<i64>> = positive
        .iter()
        .filter(|x| {
            // x = y + z with y, z positive means x - y is positive for some y
            !positive.iter().any(|y| {
                y.as_slice() != x.as_slice()
                    && set.contains(
                        x.iter()
                            .zip(y.iter())
                            .map(|(a, b)| a - b)
                            .collect::<Vec<_>>()
                            .as_slice(),
                    )
            })
        })
        .cloned()
        .collect();
    base.sort_unstable();
    base
}

/// Deterministic simple-root base: the indecomposable members of the
/// positive part of the shell under the first generic coordinate functional.
pub fn simple_roots(shell: &Shell) -> Vec<Vec<i64>> {
    simple_roots_from(shell, 1).1
}

/// Same extraction but starting the functional search at `min_t`; exposed so
/// base-invariance can be tested with different functionals.
pub fn simple_roots_from(shell: &Shell, min_t: i64) -> (i64, Vec<Vec<i64>>) {
    let t = generic_functional(shell, min_t);
    let positive = positive_part(shell, t);
    (t, indecomposables(&positive))
}

/// Runs the full certification pipeline on a nonempty equal-norm shell:
/// equal norm, base extraction, reflection closure of the whole shell,
/// Cartan shape and classification, and reflection-orbit span.
pub fn certify_root_system(shell: &Shell) -> std::result::Result<RootCertificate, RootRefusal> {
    assert!(!shell.is_empty(), "cannot certify an empty shell");
    let gram = gram_rows(shell);
    let norm_sq = 2 * i64::from(shell.norm);

    for v in &shell.vectors {
        if inner_i64(&gram, v, v) != norm_sq {
            return Err(RootRefusal::NotEqualNorm(norm_sq.to_string()));
        }
    }

    let base = simple_roots(shell);
    for (i, x) in base.iter().enumerate() {
        for y in base.iter().skip(i + 1) {
            let inner = inner_i64(&gram, x, y);
            if inner.abs() > norm_sq {
                return Err(RootRefusal::NoValidBase {
                    inner: inner.to_string(),
                    bound: norm_sq.to_string(),
                });
            }
        }
    }

    let index: HashSet<&[i64]> = shell.vectors.iter().map(|v| v.as_slice()).collect();
    for alpha in &base {
        for x in &shell.vectors {
            match reflect_in(&gram, x, alpha) {
                Ok(image) => {
                    if !index.contains(image.as_slice()) {
                        return Err(RootRefusal::ReflectionNotClosed {
                            root: alpha.clone(),
                            vector: x.clone(),
                            why: format!("image {image:?} is not in the shell"),
                        });
                    }
                }
                Err(ratio) => {
                    return Err(RootRefusal::ReflectionNotClosed {
                        root: alpha.clone(),
                        vector: x.clone(),
                        why: format!("Cartan number {ratio} is not an integer"),
                    });
                }
            }
        }
    }

    // Cartan numbers of base pairs are integral now: base members are shell
    // members and closure verified divisibility for every pair.
    let m = base.len();
    let cartan = IntMatrix::from_fn(m, m, |i, j| {
        BigInt::from(2 * inner_i64(&gram, &base[i], &base[j]) / norm_sq)
    });
    let dynkin = match classify_dynkin(&cartan) {
        Ok(d) => d,
        Err(e) => return Err(RootRefusal::CartanShape(e.to_string())),
    };

    let orbit = reflection_orbit(&gram, &base);
    if orbit.len() != shell.len() {
        return Err(RootRefusal::OrbitNotSpanning {
            orbit: orbit.len(),
            shell: shell.len(),
        });
    }
    debug_assert!(orbit.iter().all(|v| index.contains(v.as_slice())));

    Ok(RootCertificate {
        lattice: shell.lattice.name.clone(),
        norm: shell.norm,
        scale: BigRational::new(BigInt::one(), BigInt::from(shell.norm)),
        simple_roots: base,
        cartan,
        dynkin,
        orbit_size: orbit.len(),
        closure_verified: true,
    })
}

/// Orbit of the base under the reflections it generates, as a sorted set.
fn reflection_orbit(gram: &[Vec<i64>], base: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let mut orbit: BTreeSet<Vec<i64>> = base.iter().cloned().collect();
    let mut frontier: Vec<Vec<i64>> = orbit.iter().cloned().collect();
    while let Some(x) = frontier.pop() {
        for alpha in base {
            let image =
                reflect_in(gram, &x, alpha).expect("closure stage already verified integrality");
            if orbit.insert(image.clone()) {
                frontier.push(image);
            }
        }
    }
    orbit
}

/// Recognizes a symmetric matrix with diagonal 2 and off-diagonal entries in
/// {0, -1} as a disjoint union of finite simply-laced diagrams.
pub fn classify_dynkin(cartan: &IntMatrix) -> Result<DynkinType> {
    if !cartan.is_symmetric() {
        return Err(Error::NotSimplyLaced("matrix is not symmetric".into()));
    }
    let n = cartan.rows();
    let two = BigInt::from(2);
    let minus_one = BigInt::from(-1);
    for i in 0..n {
        if cartan[(i, i)] != two {
            return Err(Error::NotSimplyLaced(format!(
                "diagonal entry {} at {i}",
                cartan[(i, i)]
            )));
        }
        for j in 0..n {
            if i != j && !cartan[(i, j)].is_zero() && cartan[(i, j)] != minus_one {
                return Err(Error::NotSimplyLaced(format!(
                    "off-diagonal entry {} at ({i},{j})",
                    cartan[(i, j)]
                )));
            }
        }
    }

    let adjacency: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && cartan[(i, j)] == minus_one)
                .collect()
        })
        .collect();

    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut nodes = Vec::new();
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            nodes.push(v);
            for &w in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        components.push(classify_component(&nodes, &adjacency)?);
    }
    Ok(DynkinType::new(components))
}

fn classify_component(nodes: &[usize], adjacency: &[Vec<usize>]) -> Result<DynkinComponent> {
    let m = nodes.len();
    let edges: usize = nodes.iter().map(|&v| adjacency[v].len()).sum::<usize>() / 2;
    if edges != m - 1 {
        return Err(Error::NotFiniteSimplyLaced(format!(
            "component with {m} nodes has {edges} edges (a cycle)"
        )));
    }
    if let Some(&v) = nodes.iter().find(|&&v| adjacency[v].len() >= 4) {
        return Err(Error::NotFiniteSimplyLaced(format!(
            "vertex {v} has degree {}",
            adjacency[v].len()
        )));
    }
    let forks: Vec<usize> = nodes
        .iter()
        .copied()
        .filter(|&v| adjacency[v].len() == 3)
        .collect();
    match forks.len() {
        0 => Ok(DynkinComponent::A(m)),
        1 => {
            let fork = forks[0];
            let mut lengths: Vec<usize> = adjacency[fork]
                .iter()
                .map(|&first| {
                    // walk away from the fork to the leaf
                    let mut length = 1;
                    let mut prev = fork;
                    let mut cur = first;
                    while let Some(&next) = adjacency[cur].iter().find(|&&w| w != prev) {
                        prev = cur;
                        cur = next;
                        length += 1;
                    }
                    length
                })
                .collect();
            lengths.sort_unstable();
            match lengths.as_slice() {
                [1, 1, _] => Ok(DynkinComponent::D(m)),
                [1, 2, 2] => Ok(DynkinComponent::E(6)),
                [1, 2, 3] => Ok(DynkinComponent::E(7)),
                [1, 2, 4] => Ok(DynkinComponent::E(8)),
                _ => Err(Error::NotFiniteSimplyLaced(format!(
                    "branch profile {lengths:?}"
                ))),
            }
        }
        _ => Err(Error::NotFiniteSimplyLaced(format!(
            "{} branch vertices",
            forks.len()
        ))),
    }
}

/// Whether two Cartan matrices agree after some simultaneous row/column
/// permutation. Backtracking over degree-compatible assignments; the inputs
/// here have at most eight rows.
pub fn cartan_permutation_equivalent(a: &IntMatrix, b: &IntMatrix) -> bool {
    if a.rows() != b.rows() || a.cols() != b.cols() || !a.is_square() {
        return false;
    }
    let n = a.rows();
    let mut assignment: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];

    fn compatible(
        a: &IntMatrix,
        b: &IntMatrix,
        assignment: &[Option<usize>],
        i: usize,
        target: usize,
    ) -> bool {
        if a[(i, i)] != b[(target, target)] {
            return false;
        }
        for (j, slot) in assignment.iter().enumerate() {
            if let Some(t) = slot {
                if a[(i, j)] != b[(target, *t)] || a[(j, i)] != b[(*t, target)] {
                    return false;
                }
            }
        }
        true
    }

    fn search(
        a: &IntMatrix,
        b: &IntMatrix,
        assignment: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        i: usize,
    ) -> bool {
        let n = a.rows();
        if i == n {
            return true;
        }
        for target in 0..n {
            if !used[target] && compatible(a, b, assignment, i, target) {
                assignment[i] = Some(target);
                used[target] = true;
                if search(a, b, assignment, used, i + 1) {
                    return true;
                }
                assignment[i] = None;
                used[target] = false;
            }
        }
        false
    }

    search(a, b, &mut assignment, &mut used, 0)
}
