//! Theta prefixes across the lattice chain, with two independent checks:
//! the intermediate lattice's counts equal the sum-of-eight-squares
//! convolution, and the conductor's theta is the intermediate theta with
//! its support stretched onto multiples of four.

use lattice_shells::lattice::builtin;
use lattice_shells::orbits::r8_prefix;
use lattice_shells::shells::theta_prefix;
use lattice_shells::Result;

fn main() -> Result<()> {
    let e8 = builtin("E8")?;
    let theta_e8 = theta_prefix(&e8, 5)?;
    println!("E8 theta, N = 0..5");
    println!("  {:?}", theta_e8.coefficients);
    println!();

    let m = builtin("M")?;
    let theta_m = theta_prefix(&m, 16)?;
    println!("intermediate lattice theta, N = 0..16");
    println!("  {:?}", theta_m.coefficients);
    let oracle = r8_prefix(16);
    println!(
        "  matches the r8 convolution oracle: {}",
        theta_m.coefficients == oracle
    );
    println!();

    let lok = builtin("L_Ok")?;
    let theta_lok = theta_prefix(&lok, 16)?;
    println!("conductor theta, N = 0..16");
    println!("  {:?}", theta_lok.coefficients);
    let compressed = (1..=16usize).all(|n| {
        if n % 4 == 0 {
            theta_lok.coefficients[n] == theta_m.coefficients[n / 4]
        } else {
            theta_lok.coefficients[n] == 0
        }
    });
    println!("  equals the intermediate theta evaluated at q^4: {compressed}");
    Ok(())
}
