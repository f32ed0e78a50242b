//! `hb` — command-line surface over the computational-topology toolkit.
//!
//! Every subcommand reads JSON from a file flag (or standard input when
//! the flag is omitted or `-`), writes one JSON payload to standard
//! output, and reports diagnostics on standard error. Exit codes: 0 for
//! a clean result, 1 when a checked property is falsified, 2 for input
//! errors, 3 when a work budget is exceeded.

use std::io::Read as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use hb_core::budget::Budget;
use hb_core::chain_map::StaircaseTriangulation;
use hb_core::complex::SimplicialComplex;
use hb_core::construction::{
    almost_embedding_verdict, build_constrained, verify_constrained, BuildOutcome,
};
use hb_core::error::Error;
use hb_core::families::{
    gamma3_prime, gamma_family, interval_family, skeleton_family, tight_family,
    vertex_deletion_family,
};
use hb_core::helly::SetFamily;
use hb_core::homology::BoundaryComplex;
use hb_core::json::{
    parse_bundle, parse_complex, parse_family, BundleWire, ComplexWire, FamilyWire,
};
use hb_core::obstruction::{obstruction_nonzero, ObstructionWitness};
use hb_core::oracle::grid_maximal_chains;
use hb_core::selftest::run_selftest;

#[derive(Parser)]
#[command(
    name = "hb",
    version,
    about = "Simplicial homology, Helly numbers, embedding obstructions, and constrained chain maps"
)]
struct Cli {
    /// Override both work budgets (cells and family size); the HB_BUDGET
    /// environment variable does the same with lower precedence.
    #[arg(long, global = true)]
    budget: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Betti numbers of a complex, one per dimension.
    Betti {
        /// Complex JSON (file, or stdin when omitted or "-").
        #[arg(long)]
        complex: Option<String>,
        /// Report reduced Betti numbers.
        #[arg(long)]
        reduced: bool,
    },
    /// Helly number of a set family.
    Helly {
        /// Family JSON (file, or stdin when omitted or "-").
        #[arg(long)]
        family: Option<String>,
    },
    /// Reduced-Betti audit of every proper subfamily intersection.
    Audit {
        /// Family JSON (file, or stdin when omitted or "-").
        #[arg(long)]
        family: Option<String>,
        /// Ambient dimension: degrees 0 ≤ i ≤ ⌈dim/2⌉−1 are audited.
        #[arg(long)]
        dim: usize,
        /// Fail (exit 1) if any audited Betti number exceeds this bound.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Embedding obstruction of a complex in dimension `dim`.
    Obstruction {
        /// Complex JSON (file, or stdin when omitted or "-").
        #[arg(long)]
        complex: Option<String>,
        /// Target dimension.
        #[arg(long)]
        dim: usize,
        /// Write the full analysis (cocycle and witness) to this file.
        #[arg(long)]
        witness: Option<String>,
    },
    /// Cell counts and Betti numbers of the deleted product.
    DeletedProduct {
        /// Complex JSON (file, or stdin when omitted or "-").
        #[arg(long)]
        complex: Option<String>,
    },
    /// Barycentric subdivision, emitted in the complex format.
    Subdivide {
        /// Complex JSON (file, or stdin when omitted or "-").
        #[arg(long)]
        complex: Option<String>,
    },
    /// Staircase triangulation of the product of two simplices.
    Eml {
        /// Dimension of the first simplex factor.
        #[arg(long)]
        p: usize,
        /// Dimension of the second simplex factor.
        #[arg(long)]
        q: usize,
    },
    /// Generators for the example families.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
    /// Build a constrained chain map of a complex over a family.
    BuildCcm {
        /// Complex JSON (file, or "-" for stdin).
        #[arg(long)]
        complex: String,
        /// Family JSON (file, or "-" for stdin).
        #[arg(long)]
        family: String,
        /// Betti bound the family is assumed to satisfy.
        #[arg(long)]
        b: usize,
        /// Build for the skeleton of this dimension instead of the full
        /// complex.
        #[arg(long = "dim-cap")]
        dim_cap: Option<usize>,
    },
    /// Verify stored objects.
    Verify {
        #[command(subcommand)]
        what: VerifyWhat,
    },
    /// Run the full self-check suite; exits 0 iff every check passes.
    Selftest,
}

#[derive(Subcommand)]
enum ExamplesAction {
    /// Generate a family in the family JSON format.
    Gen {
        #[command(subcommand)]
        kind: ExampleKind,
    },
}

#[derive(Subcommand)]
enum ExampleKind {
    /// Disjoint coned spheres with their vertex-deletion family
    /// (Helly number b(d+2)).
    Gamma {
        #[arg(long)]
        b: usize,
        #[arg(long)]
        d: usize,
    },
    /// The 8-tetrahedron complex with its vertex-deletion family.
    #[command(name = "gamma3prime")]
    Gamma3Prime,
    /// Skeleton of a simplex with its vertex-deletion family.
    Skeleton {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Complements of intervals along a path.
    Interval {
        #[arg(long)]
        n: usize,
    },
    /// The certified-tight skeleton-family parameter cases.
    Tight {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum VerifyWhat {
    /// Re-run the constrained-chain-map audit on a stored bundle.
    Constrained {
        /// Bundle JSON (file, or stdin when omitted or "-").
        #[arg(long)]
        bundle: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = resolve_budget(cli.budget);
    match run(cli.command, &budget) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("hb: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn resolve_budget(flag: Option<usize>) -> Budget {
    let mut budget = Budget::from_env();
    if let Some(n) = flag {
        if n > 0 {
            budget.cells = n;
            budget.family = n;
        }
    }
    budget
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::Input(_)
        | Error::InvalidConfig(_)
        | Error::DuplicateVertex(_)
        | Error::UnknownVertex(_)
        | Error::MissingSimplex(_)
        | Error::SkeletonDimension { .. }
        | Error::MemberIndex { .. }
        | Error::NotASubcomplex { .. }
        | Error::NotSimplicial(_)
        | Error::Selection(_) => 2,
        _ => 1,
    }
}

fn read_input(path: Option<&str>, what: &str) -> Result<String, Error> {
    match path {
        None | Some("-") => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Error::Input(format!("reading {what} from stdin: {e}")))?;
            Ok(text)
        }
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| Error::Input(format!("reading {what} from {p}: {e}"))),
    }
}

fn read_complex(path: Option<&str>) -> Result<SimplicialComplex, Error> {
    parse_complex(&read_input(path, "complex")?)
}

fn read_family(path: Option<&str>) -> Result<SetFamily, Error> {
    parse_family(&read_input(path, "family")?)
}

fn emit(value: &serde_json::Value) {
    println!("{value}");
}

fn run(command: Command, budget: &Budget) -> Result<u8, Error> {
    match command {
        Command::Betti { complex, reduced } => {
            let k = read_complex(complex.as_deref())?;
            let betti = BoundaryComplex::from_simplicial(&k).betti_vector(reduced);
            emit(&json!({ "betti": betti }));
            Ok(0)
        }
        Command::Helly { family } => {
            let f = read_family(family.as_deref())?;
            let analysis = f.helly_number(budget)?;
            emit(&json!({ "helly": analysis.helly_number }));
            Ok(0)
        }
        Command::Audit { family, dim, bound } => {
            let f = read_family(family.as_deref())?;
            let report = f.hypothesis_audit(dim, budget)?;
            emit(&serde_json::to_value(&report).map_err(|e| Error::Input(e.to_string()))?);
            match bound {
                Some(b) if report.max_betti > b => {
                    eprintln!(
                        "hb: audit bound {b} exceeded: max reduced Betti number is {}",
                        report.max_betti
                    );
                    Ok(1)
                }
                _ => Ok(0),
            }
        }
        Command::Obstruction {
            complex,
            dim,
            witness,
        } => {
            let k = read_complex(complex.as_deref())?;
            let analysis = obstruction_nonzero(&k, dim, budget)?;
            if let Some(path) = witness {
                let (kind, support) = match &analysis.witness {
                    ObstructionWitness::FillingCochain(c) => {
                        ("filling-cochain", c.ones().collect::<Vec<_>>())
                    }
                    ObstructionWitness::CertificateCycle(c) => {
                        ("certificate-cycle", c.ones().collect::<Vec<_>>())
                    }
                };
                let full = json!({
                    "d": analysis.d,
                    "nonzero": analysis.nonzero,
                    "cocycle_support": analysis.cocycle.ones().collect::<Vec<_>>(),
                    "witness": { "kind": kind, "support": support },
                });
                std::fs::write(&path, format!("{full}\n"))
                    .map_err(|e| Error::Input(format!("writing witness to {path}: {e}")))?;
            }
            emit(&json!({ "nonzero": analysis.nonzero }));
            Ok(0)
        }
        Command::DeletedProduct { complex } => {
            let k = read_complex(complex.as_deref())?;
            let dp = hb_core::cell::deleted_product(&k, budget)?;
            let cells: Vec<usize> = (0..=dp.dim().max(-1))
                .filter(|&d| d >= 0)
                .map(|d| dp.size(d))
                .collect();
            emit(&json!({
                "dim": dp.dim(),
                "cells": cells,
                "betti": dp.betti_vector(false),
            }));
            Ok(0)
        }
        Command::Subdivide { complex } => {
            let k = read_complex(complex.as_deref())?;
            let sd = k.barycentric_subdivision();
            let wire = ComplexWire::from_complex(&sd.complex);
            emit(&serde_json::to_value(&wire).map_err(|e| Error::Input(e.to_string()))?);
            Ok(0)
        }
        Command::Eml { p, q } => {
            let st = StaircaseTriangulation::new(p, q);
            let staircases: Vec<Vec<usize>> = st
                .staircases()
                .iter()
                .map(|s| s.vertices().to_vec())
                .collect();
            let tiles = {
                let as_set: std::collections::BTreeSet<_> =
                    st.staircases().iter().cloned().collect();
                as_set.len() == st.count() && as_set == grid_maximal_chains(p, q)
            };
            emit(&json!({
                "p": p,
                "q": q,
                "count": st.count(),
                "flip_equivariant": st.flip_check(),
                "tiles_grid_chains": tiles,
                "staircases": staircases,
            }));
            Ok(0)
        }
        Command::Examples { action } => {
            let ExamplesAction::Gen { kind } = action;
            let family = match kind {
                ExampleKind::Gamma { b, d } => gamma_family(b, d)?,
                ExampleKind::Gamma3Prime => vertex_deletion_family(gamma3_prime())?,
                ExampleKind::Skeleton { n, k } => skeleton_family(n, k)?,
                ExampleKind::Interval { n } => interval_family(n)?,
                ExampleKind::Tight { d, k, n } => tight_family(d, k, n)?,
            };
            let wire = FamilyWire::from_family(&family);
            emit(&serde_json::to_value(&wire).map_err(|e| Error::Input(e.to_string()))?);
            Ok(0)
        }
        Command::BuildCcm {
            complex,
            family,
            b,
            dim_cap,
        } => {
            if complex == "-" && family == "-" {
                return Err(Error::Input(
                    "at most one of --complex and --family may read from stdin".into(),
                ));
            }
            let k = read_complex(Some(complex.as_str()))?;
            let f = read_family(Some(family.as_str()))?;
            let k = match dim_cap {
                Some(cap) => k.skeleton(cap as isize),
                None => k,
            };
            match build_constrained(&k, &f, b, budget)? {
                BuildOutcome::Built { bundle, trace } => {
                    let report = verify_constrained(&bundle)?;
                    let embeds = almost_embedding_verdict(&bundle)?;
                    emit(&json!({
                        "outcome": "built",
                        "bundle": serde_json::to_value(BundleWire::from_bundle(&bundle)?)
                            .map_err(|e| Error::Input(e.to_string()))?,
                        "report": serde_json::to_value(&report)
                            .map_err(|e| Error::Input(e.to_string()))?,
                        "trace": serde_json::to_value(&trace)
                            .map_err(|e| Error::Input(e.to_string()))?,
                        "almost_embedding": embeds,
                    }));
                    Ok(0)
                }
                BuildOutcome::Insufficient(i) => {
                    emit(&json!({
                        "outcome": "insufficient",
                        "stage": i.stage,
                        "detail": i.detail,
                    }));
                    Ok(0)
                }
            }
        }
        Command::Verify { what } => {
            let VerifyWhat::Constrained { bundle } = what;
            let b = parse_bundle(&read_input(bundle.as_deref(), "bundle")?)?;
            let report = verify_constrained(&b)?;
            let ok = report.is_ok();
            let embeds = if ok {
                Some(almost_embedding_verdict(&b)?)
            } else {
                None
            };
            emit(&json!({
                "ok": ok,
                "violations": serde_json::to_value(&report.violations)
                    .map_err(|e| Error::Input(e.to_string()))?,
                "almost_embedding": embeds,
            }));
            Ok(if ok { 0 } else { 1 })
        }
        Command::Selftest => {
            let report = run_selftest(budget);
            emit(&serde_json::to_value(&report).map_err(|e| Error::Input(e.to_string()))?);
            Ok(if report.all_passed { 0 } else { 1 })
        }
    }
}
