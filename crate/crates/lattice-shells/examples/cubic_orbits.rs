//! Identifies the intermediate lattice with the rescaled cubic lattice via
//! its first-shell frame, then decomposes the first five shells into
//! signed-permutation orbits with closed-form cardinalities.

use lattice_shells::lattice::builtin;
use lattice_shells::orbits::{build_cubic_isometry, orbit_decompose};
use lattice_shells::shells::enumerate_shell;
use lattice_shells::Result;

fn main() -> Result<()> {
    let m = builtin("M")?;
    let iso = build_cubic_isometry(&m)?;
    println!("orthogonal frame of the first shell (lattice coordinates):");
    for w in &iso.frame {
        println!("  {w:?}");
    }
    println!();
    println!("change of basis to cubic coordinates (unimodular):");
    println!("  {}", iso.to_cubic);
    println!();

    for n in 1u32..=5 {
        let shell = enumerate_shell(&m, n)?;
        let decomp = orbit_decompose(&shell, &iso)?;
        println!("S{n}: {} vectors", shell.len());
        for (sig, count) in &decomp.parts {
            println!("  orbit {sig:<12} {count:>5}  (= 2^k * placement multinomial)");
        }
    }
    println!();
    println!("every orbit count above is verified against its closed form;");
    println!("a mismatch would falsify the cubic identification.");
    Ok(())
}
