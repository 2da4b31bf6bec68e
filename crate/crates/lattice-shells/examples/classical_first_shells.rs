//! First-shell census of the classical integral systems: each row names the
//! integral system, the lattice that carries its metric, the exact size of
//! the first shell, and the root type certified from that shell.

use lattice_shells::audit::{emit_table, TableKind};
use lattice_shells::lattice::Registry;
use lattice_shells::Result;

fn main() -> Result<()> {
    let registry = Registry::standard();
    print!("{}", emit_table(&registry, TableKind::Classical)?);
    println!();
    println!("The square and cubic rows have first-shell type A1^n: their");
    println!("traditional non-simply-laced labels need longer vectors from");
    println!("higher shells, which the first-shell census deliberately omits.");
    Ok(())
}
