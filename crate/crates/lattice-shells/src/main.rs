//! Thin command-line front end over the library: every subcommand resolves
//! its lattices, calls one library entry point, and prints the result as a
//! text table or JSON records.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use lattice_shells::audit::{audit_filtered, emit_table, TableKind};
use lattice_shells::glue::{glue_code, verify_isotropic_glue};
use lattice_shells::lattice::{GramLattice, Registry};
use lattice_shells::lattice_file::LatticeSpec;
use lattice_shells::orbits::{build_cubic_isometry, orbit_decompose};
use lattice_shells::roots::certify_root_system;
use lattice_shells::shells::{enumerate_shell, theta_prefix};
use lattice_shells::{analyze, Error};

#[derive(Parser)]
#[command(
    name = "lattice-audit",
    about = "Exact lattice shell enumeration, root certificates, and gluing audits",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct LatticeArg {
    /// Builtin lattice name (A1, A2, square, cubic4, A2xA2, D4, cubic8,
    /// A2^4, D4xD4, E8, L_Ok, M, sqrt2Z8) or `@path` to a lattice spec file.
    #[arg(long)]
    lattice: String,
}

impl LatticeArg {
    fn resolve(&self, registry: &Registry) -> Result<GramLattice, Error> {
        if let Some(path) = self.lattice.strip_prefix('@') {
            LatticeSpec::load(&PathBuf::from(path))
        } else {
            registry.get(&self.lattice).cloned()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the certificate battery.
    Audit {
        #[command(subcommand)]
        action: AuditAction,
    },
    /// Enumerate one shell.
    Shell {
        #[command(flatten)]
        lattice: LatticeArg,
        /// Norm N; the shell solves x^T G x = 2N.
        #[arg(long)]
        norm: u32,
        /// Print only the vector count.
        #[arg(long)]
        count_only: bool,
        #[arg(long)]
        json: bool,
    },
    /// Antipodality, rank, centroid, and the degree-two moment identity.
    Analyze {
        #[command(flatten)]
        lattice: LatticeArg,
        #[arg(long)]
        norm: u32,
        #[arg(long)]
        json: bool,
    },
    /// Root-system certificate of a shell, or its typed refusal.
    Roots {
        #[command(flatten)]
        lattice: LatticeArg,
        #[arg(long)]
        norm: u32,
        #[arg(long)]
        json: bool,
    },
    /// Shell counts up to a bound.
    Theta {
        #[command(flatten)]
        lattice: LatticeArg,
        #[arg(long)]
        max_norm: u32,
        #[arg(long)]
        json: bool,
    },
    /// Signed-permutation orbit decomposition in the cubic model.
    Orbits {
        #[command(flatten)]
        lattice: LatticeArg,
        #[arg(long)]
        norm: u32,
        #[arg(long)]
        json: bool,
    },
    /// Verify the isotropic glue group of a registered embedding.
    Glue {
        #[arg(long)]
        sub: String,
        #[arg(long)]
        sup: String,
        #[arg(long)]
        json: bool,
    },
    /// Binary glue code of an elementary 2-group quotient.
    Gluecode {
        #[arg(long)]
        sub: String,
        #[arg(long)]
        sup: String,
        #[arg(long)]
        json: bool,
    },
    /// Print one of the computed summary tables.
    Table {
        /// classical | okubo-shells | lattice-chain | shell-polytopes
        #[arg(long)]
        which: String,
    },
}

#[derive(Subcommand)]
enum AuditAction {
    /// Recompute every audited claim and compare against the manifest.
    Run {
        /// Keep only claims starting with this prefix.
        #[arg(long)]
        only: Option<String>,
        /// Directory for `certificates.jsonl`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let registry = Registry::standard();
    match cli.command {
        Command::Audit {
            action: AuditAction::Run { only, out },
        } => {
            let report = audit_filtered(&registry, only.as_deref())?;
            if let Some(dir) = out {
                std::fs::create_dir_all(&dir)?;
                std::fs::write(dir.join("certificates.jsonl"), report.to_jsonl())?;
            }
            print!("{}", report.to_text());
            Ok(if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Shell {
            lattice,
            norm,
            count_only,
            json,
        } => {
            let l = lattice.resolve(&registry)?;
            let shell = enumerate_shell(&l, norm)?;
            if json {
                let record = if count_only {
                    json!({"lattice": l.name, "norm": norm, "count": shell.len()})
                } else {
                    json!({
                        "lattice": l.name,
                        "norm": norm,
                        "count": shell.len(),
                        "vectors": shell.vectors,
                    })
                };
                println!("{record}");
            } else {
                println!("# {} shell N={} ({} vectors)", l.name, norm, shell.len());
                if !count_only {
                    for v in &shell.vectors {
                        let row = v
                            .iter()
                            .map(|c| format!("{c:>3}"))
                            .collect::<Vec<_>>()
                            .join(" ");
                        println!("{row}");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Analyze {
            lattice,
            norm,
            json,
        } => {
            let l = lattice.resolve(&registry)?;
            let shell = enumerate_shell(&l, norm)?;
            let report = analyze(&shell)?;
            if json {
                println!(
                    "{}",
                    json!({
                        "lattice": report.lattice,
                        "norm": report.norm,
                        "count": report.count,
                        "antipodal": report.antipodal,
                        "rank": report.rank,
                        "centroid_zero": report.centroid_zero,
                        "design2": report.design2.as_ref().map(|l| l.to_string()),
                    })
                );
            } else {
                println!("lattice        {}", report.lattice);
                println!("norm           {}", report.norm);
                println!("count          {}", report.count);
                println!("antipodal      {}", report.antipodal);
                println!("rank           {}", report.rank);
                println!("centroid zero  {}", report.centroid_zero);
                match &report.design2 {
                    Some(lambda) => println!("design2        lambda = {lambda}"),
                    None => println!("design2        does not hold"),
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Roots {
            lattice,
            norm,
            json,
        } => {
            let l = lattice.resolve(&registry)?;
            let shell = enumerate_shell(&l, norm)?;
            match certify_root_system(&shell) {
                Ok(cert) => {
                    if json {
                        println!(
                            "{}",
                            json!({
                                "lattice": cert.lattice,
                                "norm": cert.norm,
                                "certified": true,
                                "scale": cert.scale.to_string(),
                                "type": cert.dynkin.to_string(),
                                "simple_roots": cert.simple_roots,
                                "cartan": format!("{}", cert.cartan),
                                "orbit_size": cert.orbit_size,
                            })
                        );
                    } else {
                        println!("certified root system: {}", cert.dynkin);
                        println!("scale          {}", cert.scale);
                        println!("orbit size     {}", cert.orbit_size);
                        println!("cartan         {}", cert.cartan);
                        println!("simple roots:");
                        for r in &cert.simple_roots {
                            println!("  {r:?}");
                        }
                    }
                }
                Err(refusal) => {
                    if json {
                        println!(
                            "{}",
                            json!({
                                "lattice": l.name,
                                "norm": norm,
                                "certified": false,
                                "stage": refusal.stage().to_string(),
                                "reason": refusal.to_string(),
                            })
                        );
                    } else {
                        println!("refused at stage: {}", refusal.stage());
                        println!("reason: {refusal}");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Theta {
            lattice,
            max_norm,
            json,
        } => {
            let l = lattice.resolve(&registry)?;
            let theta = theta_prefix(&l, max_norm)?;
            if json {
                println!(
                    "{}",
                    json!({
                        "lattice": theta.lattice,
                        "max_norm": theta.max_norm,
                        "coefficients": theta.coefficients,
                    })
                );
            } else {
                println!("# theta prefix of {} up to N={}", theta.lattice, max_norm);
                for (n, c) in theta.coefficients.iter().enumerate() {
                    println!("{n:>3}  {c}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Orbits {
            lattice,
            norm,
            json,
        } => {
            let l = lattice.resolve(&registry)?;
            let iso = build_cubic_isometry(&l)?;
            let shell = enumerate_shell(&l, norm)?;
            let decomp = orbit_decompose(&shell, &iso)?;
            if json {
                let parts: Vec<_> = decomp
                    .parts
                    .iter()
                    .map(|(sig, count)| json!({"signature": sig.to_string(), "count": count}))
                    .collect();
                println!(
                    "{}",
                    json!({"lattice": decomp.lattice, "norm": decomp.norm, "orbits": parts})
                );
            } else {
                println!(
                    "# orbit decomposition of {} shell N={} ({} vectors)",
                    decomp.lattice,
                    decomp.norm,
                    decomp.total()
                );
                for (sig, count) in &decomp.parts {
                    println!("{sig:<14} {count}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Glue { sub, sup, json } => {
            let embedding = registry.embedding(&sub, &sup)?;
            let iso = build_cubic_isometry(&embedding.sub).ok();
            let result = verify_isotropic_glue(&embedding, iso.as_ref())?;
            if json {
                println!(
                    "{}",
                    json!({
                        "sub": result.sub,
                        "sup": result.sup,
                        "quotient_factors": result.quotient_factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                        "glue_order": result.glue_order.to_string(),
                        "isotropic": result.isotropic,
                        "maximal": result.maximal,
                        "overlattice_det": result.overlattice.det().to_string(),
                        "overlattice_even": result.overlattice.is_even(),
                    })
                );
            } else {
                println!("glue of {} in {}", result.sub, result.sup);
                let factors = result
                    .quotient_factors
                    .iter()
                    .map(|f| f.to_string())
                    .collect::<Vec<_>>()
                    .join(", ");
                println!("quotient factors   [{factors}]");
                println!("glue order         {}", result.glue_order);
                println!("isotropic          {}", result.isotropic);
                println!("maximal            {}", result.maximal);
                println!("overlattice det    {}", result.overlattice.det());
                println!("overlattice even   {}", result.overlattice.is_even());
                println!("overlattice gram   {}", result.overlattice.gram);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gluecode { sub, sup, json } => {
            let embedding = registry.embedding(&sub, &sup)?;
            let iso = build_cubic_isometry(&embedding.sub)?;
            let code = glue_code(&embedding, &iso)?;
            if json {
                println!(
                    "{}",
                    json!({
                        "length": code.length,
                        "dimension": code.dimension,
                        "min_weight": code.min_weight,
                        "weight_enumerator": code.weight_enumerator,
                        "words": code.words,
                    })
                );
            } else {
                println!(
                    "[{}, {}, {}] code, weight enumerator {}",
                    code.length,
                    code.dimension,
                    code.min_weight,
                    code.weight_enumerator_string()
                );
                for w in &code.words {
                    let bits: String = w.iter().map(|b| char::from(b'0' + b)).collect();
                    println!("{bits}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Table { which } => {
            let kind: TableKind = which.parse()?;
            print!("{}", emit_table(&registry, kind)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}
