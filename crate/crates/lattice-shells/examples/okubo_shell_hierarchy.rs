//! Walks the shell hierarchy of the Okubo conductor lattice
//! `L_Ok = diag(2,2,2,2,4,4,4,4) * E8`: norm divisibility empties every
//! shell with 4 not dividing N, the first visible shell is a cross-polytope,
//! the second is a D8 root polytope, and the higher ones are certified as
//! designs without any root structure.

use lattice_shells::analysis::{analyze, gram_of_representatives, norm_divisibility};
use lattice_shells::lattice::{builtin, known_embedding};
use lattice_shells::roots::certify_root_system;
use lattice_shells::shells::enumerate_shell;
use lattice_shells::Result;

fn main() -> Result<()> {
    let lok = builtin("L_Ok")?;
    let emb = known_embedding("L_Ok", "E8")?;
    println!("conductor lattice L_Ok");
    println!("  index in E8       {}", emb.index());
    println!("  determinant       {}", lok.det());
    println!("  norm divisibility {}", norm_divisibility(&lok));
    println!();

    println!(" N  count  interpretation");
    for n in 1u32..=16 {
        let shell = enumerate_shell(&lok, n)?;
        let label = if shell.is_empty() {
            "empty (4 does not divide N)".to_string()
        } else {
            match certify_root_system(&shell) {
                Ok(cert) => format!("{} root polytope, orbit {}", cert.dynkin, cert.orbit_size),
                Err(refusal) => format!("no root structure (refused at {})", refusal.stage()),
            }
        };
        println!("{n:>2}  {:>5}  {label}", shell.len());
    }
    println!();

    let cross = enumerate_shell(&lok, 4)?;
    println!(
        "S4 representative Gram: {}",
        gram_of_representatives(&cross)?
    );
    println!();

    for n in [12u32, 16] {
        let report = analyze(&enumerate_shell(&lok, n)?)?;
        println!(
            "S{n}: antipodal={} rank={} centered={} second-moment lambda={}",
            report.antipodal,
            report.rank,
            report.centroid_zero,
            report.design2.map_or_else(|| "-".into(), |l| l.to_string())
        );
    }
    Ok(())
}
