//! Builds the even unimodular rank-8 lattice from the octonion basis
//! `1, e1, e2, e3, h, e1*h, e2*h, e3*h` with `h = (e1+e2+e3+e4)/2`, then
//! certifies its minimal shell as the E8 root system.

use lattice_shells::octonion::coxeter_dickson_basis;
use lattice_shells::roots::certify_root_system;
use lattice_shells::shells::enumerate_shell;
use lattice_shells::{GramLattice, Result};

fn main() -> Result<()> {
    let basis = coxeter_dickson_basis();
    println!("Gram matrix of the octonion basis:");
    for i in 0..8 {
        let row = (0..8)
            .map(|j| format!("{:>3}", basis.gram[(i, j)]))
            .collect::<Vec<_>>()
            .join(" ");
        println!("  {row}");
    }
    println!();
    println!("determinant     {}", basis.gram.det());
    println!(
        "even diagonal   {}",
        (0..8).all(|i| &basis.gram[(i, i)] % 2 == 0.into())
    );

    let e8 = GramLattice::new("E8", basis.gram)?;
    let shell = enumerate_shell(&e8, 1)?;
    println!("minimal vectors {}", shell.len());

    let cert = certify_root_system(&shell).expect("the minimal shell is a root system");
    println!();
    println!("root certificate");
    println!("  type        {}", cert.dynkin);
    println!("  scale       {}", cert.scale);
    println!("  orbit size  {}", cert.orbit_size);
    println!("  simple roots:");
    for root in &cert.simple_roots {
        println!("    {root:?}");
    }
    Ok(())
}
