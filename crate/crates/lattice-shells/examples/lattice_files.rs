//! The lattice spec file format: explicit Gram rows or a construction
//! (conductor, direct_sum, rescale) over builtin names and nested specs.
//! Writes a spec to a temporary file, loads it back, and enumerates a shell
//! from it, which is exactly what `lattice-audit shell --lattice @file` does.

use lattice_shells::lattice_file::LatticeSpec;
use lattice_shells::shells::enumerate_shell;
use lattice_shells::Result;

fn main() -> Result<()> {
    let spec_text = r#"{
        "name": "half-conductor",
        "construct": "rescale",
        "base": {"construct": "conductor", "base": "E8", "diag": [2, 2, 2, 2, 4, 4, 4, 4]},
        "factor": "1/4"
    }"#;

    let spec = LatticeSpec::parse(spec_text)?;
    println!("parsed spec (canonical form): {}", spec.to_json());
    println!();

    let lattice = spec.resolve()?;
    println!("resolved lattice `{}`", lattice.name);
    println!("  rank {}", lattice.rank());
    println!("  det  {}", lattice.det());

    let path = std::env::temp_dir().join("half-conductor.json");
    std::fs::write(&path, spec.to_json())?;
    let reloaded = LatticeSpec::load(&path)?;
    println!(
        "  reloaded from {} -> same Gram: {}",
        path.display(),
        reloaded.gram == lattice.gram
    );
    std::fs::remove_file(&path).ok();

    let shell = enumerate_shell(&lattice, 1)?;
    println!("  first shell has {} vectors", shell.len());
    println!();

    let gram_form = r#"{"name": "hexagonal", "gram": [[2, -1], [-1, 2]]}"#;
    let hex = LatticeSpec::parse(gram_form)?.resolve()?;
    println!(
        "gram-form spec `{}`: first shell {}",
        hex.name,
        enumerate_shell(&hex, 1)?.len()
    );
    Ok(())
}
