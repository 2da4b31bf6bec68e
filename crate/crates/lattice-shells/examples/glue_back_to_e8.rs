//! Recovers the even unimodular rank-8 lattice from the intermediate
//! lattice by maximal isotropic gluing: the quotient is (Z/2)^4, its cosets
//! all have q = 0 mod 2, and adjoining them yields an even determinant-1
//! overlattice whose minimal shell certifies as E8.

use lattice_shells::glue::{discriminant, verify_isotropic_glue};
use lattice_shells::lattice::{builtin, known_embedding};
use lattice_shells::roots::certify_root_system;
use lattice_shells::shells::enumerate_shell;
use lattice_shells::Result;

fn main() -> Result<()> {
    let m = builtin("M")?;
    let disc = discriminant(&m)?;
    println!("discriminant group of the intermediate lattice");
    println!("  order             {}", disc.order());
    println!(
        "  invariant factors {:?}",
        disc.invariant_factors
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
    );
    println!(
        "  generator q-values {:?}",
        disc.qvalues
            .iter()
            .map(|q| q.to_string())
            .collect::<Vec<_>>()
    );
    println!();

    let emb = known_embedding("M", "E8")?;
    let result = verify_isotropic_glue(&emb, None)?;
    println!("glue of M in E8");
    println!(
        "  quotient factors {:?}",
        result
            .quotient_factors
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
    );
    println!("  glue order       {}", result.glue_order);
    println!("  isotropic        {}", result.isotropic);
    println!("  maximal          {}", result.maximal);
    println!();

    let over = &result.overlattice;
    println!("glued overlattice");
    println!("  determinant {}", over.det());
    println!("  even        {}", over.is_even());
    let shell = enumerate_shell(over, 1)?;
    println!("  first shell {}", shell.len());
    let cert = certify_root_system(&shell).expect("glued shell is a root system");
    println!("  type        {}", cert.dynkin);
    Ok(())
}
