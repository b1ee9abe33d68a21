//! Command-line frontend: ingest group files or built-in catalog names, run
//! automorphism, isomorphism-class, genus, simplification-condition, and
//! oracle-sweep computations, and emit deterministic text or JSON reports.
//!
//! Exit codes: 0 success, 2 input validation failure, 3 budget exceeded,
//! 4 internal invariant violation.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use amalgenus_core::amalgam::{
    count_classes_fixed_subgroups, count_classes_pushout_family, sweep_catalog, FixedPairContext,
};
use amalgenus_core::catalog::{builtin_catalog, builtin_entry, CatalogEntry};
use amalgenus_core::error::Error;
use amalgenus_core::genus::{
    check_simplifications_ctx, derive_genus_input_ctx, genus_fixed, genus_pushout,
};
use amalgenus_core::group::Subgroup;
use amalgenus_core::io;
use amalgenus_core::morphism::{compute_aut, out_quotient};
use amalgenus_core::Limits;

#[derive(Parser)]
#[command(
    name = "amalgenus",
    about = "Isomorphism classes and profinite genus of amalgamated free products of finite groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format: text or json.
    #[arg(long, global = true, default_value = "text")]
    format: String,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Node budget for generator-image searches (also env AMALGENUS_BUDGET).
    #[arg(long, global = true)]
    budget_nodes: Option<u64>,
    /// Largest orbit carrier the oracle will enumerate.
    #[arg(long, global = true)]
    budget_carrier: Option<usize>,
    /// Largest accepted group order.
    #[arg(long, global = true)]
    max_group_order: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Automorphism group of one group: order, inner/outer parts, map tables.
    Aut {
        #[arg(long)]
        group: String,
    },
    /// Enumerate all subgroups of one group.
    Subgroups {
        #[arg(long)]
        group: String,
    },
    /// Count isomorphism classes of amalgams over a pair of subgroups.
    IsoClasses {
        #[arg(long)]
        g1: String,
        #[arg(long)]
        h1: String,
        #[arg(long)]
        g2: String,
        #[arg(long)]
        h2: String,
        /// Family: "fixed" (both images pinned) or "pushout" (all injections).
        #[arg(long, default_value = "fixed")]
        family: String,
    },
    /// Genus of the amalgam with both subgroup images fixed.
    Genus {
        #[arg(long)]
        g1: Option<String>,
        #[arg(long)]
        h1: Option<String>,
        #[arg(long)]
        g2: Option<String>,
        #[arg(long)]
        h2: Option<String>,
        /// Normalizer-subset policy: lower, upper, or exact (abstract input).
        #[arg(long, default_value = "upper")]
        nplus_policy: String,
        /// Abstract Out(H)-level input file; replaces the group flags.
        #[arg(long = "abstract")]
        abstract_file: Option<PathBuf>,
    },
    /// Genus over the push-out family (summed over subgroup-orbit pairs).
    GenusPushout {
        #[arg(long)]
        g1: String,
        #[arg(long)]
        h1: String,
        #[arg(long)]
        g2: String,
        #[arg(long)]
        h2: String,
        #[arg(long, default_value = "upper")]
        nplus_policy: String,
    },
    /// Cross-check the double-coset formulas against the orbit oracle.
    OracleSweep {
        /// Catalog file; the built-in catalog when omitted.
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, default_value_t = 12)]
        max_order: usize,
        #[arg(long, default_value_t = 6)]
        max_subgroup: usize,
    },
    /// Evaluate the simplification conditions for one amalgam.
    Conditions {
        #[arg(long)]
        g1: String,
        #[arg(long)]
        h1: String,
        #[arg(long)]
        g2: String,
        #[arg(long)]
        h2: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = build_limits(&cli);
    match std::panic::catch_unwind(|| run(&cli, &limits)) {
        Ok(Ok(output)) => match write_output(&cli.out, &output) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded(_) | Error::SizeExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
        Err(_) => {
            eprintln!("error: internal invariant violation (this is a bug)");
            ExitCode::from(4)
        }
    }
}

fn build_limits(cli: &Cli) -> Limits {
    let mut limits = Limits::default();
    if let Ok(v) = std::env::var("AMALGENUS_BUDGET") {
        if let Ok(n) = v.parse::<u64>() {
            limits.search_nodes = n;
        }
    }
    if let Some(n) = cli.budget_nodes {
        limits.search_nodes = n;
    }
    if let Some(n) = cli.budget_carrier {
        limits.oracle_carrier = n;
    }
    if let Some(n) = cli.max_group_order {
        limits.max_order = n;
    }
    limits
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Resolve a group spec: an existing file path, else a built-in catalog name.
fn resolve_group(spec: &str, limits: &Limits) -> Result<CatalogEntry, Error> {
    if Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec)
            .map_err(|e| Error::InvalidInput(format!("cannot read {spec}: {e}")))?;
        return io::parse_group_file(&text, limits);
    }
    builtin_entry(spec).ok_or_else(|| {
        Error::InvalidInput(format!(
            "{spec:?} is neither a file nor a built-in group (try one of: {})",
            amalgenus_core::catalog::builtin_names().join(", ")
        ))
    })
}

/// Resolve a subgroup spec against a group entry: a named subgroup,
/// "trivial", "whole", "gen:i,j,..." (generated), or "elems:i,j,..." (exact).
fn resolve_subgroup(entry: &CatalogEntry, spec: &str) -> Result<Subgroup, Error> {
    if let Some(s) = entry.subgroups.get(spec) {
        return Ok(s.clone());
    }
    match spec {
        "trivial" => return Ok(Subgroup::trivial(&entry.group)),
        "whole" => return Ok(Subgroup::whole(&entry.group)),
        _ => {}
    }
    let parse_list = |body: &str| -> Result<Vec<usize>, Error> {
        body.split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidInput(format!("bad element index {p:?}")))
            })
            .collect()
    };
    if let Some(body) = spec.strip_prefix("gen:") {
        return Subgroup::generated(&entry.group, &parse_list(body)?);
    }
    if let Some(body) = spec.strip_prefix("elems:") {
        return Subgroup::new(Arc::clone(&entry.group), parse_list(body)?);
    }
    Err(Error::InvalidInput(format!(
        "unknown subgroup {spec:?} for group {:?} (named: {})",
        entry.name,
        entry
            .subgroups
            .keys()
            .cloned()
            .collect::<Vec<_>>()
            .join(", ")
    )))
}

fn json_line<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}

fn run(cli: &Cli, limits: &Limits) -> Result<String, Error> {
    let json = match cli.format.as_str() {
        "json" => true,
        "text" => false,
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown format {other:?} (expected text or json)"
            )))
        }
    };
    match &cli.command {
        Command::Aut { group } => {
            let entry = resolve_group(group, limits)?;
            let aut = Arc::new(compute_aut(&entry.group, limits)?);
            let out = out_quotient(&aut)?;
            let report = io::AutReportJson {
                schema: io::SCHEMA,
                group: entry.name.clone(),
                aut_order: aut.len(),
                inn_order: aut.inn().len(),
                out_order: out.order(),
                maps: aut.maps().to_vec(),
                inn_indices: aut.inn().elements().to_vec(),
            };
            Ok(if json {
                json_line(&report)
            } else {
                format!(
                    "group {}: |Aut| = {}, |Inn| = {}, |Out| = {}\n",
                    report.group, report.aut_order, report.inn_order, report.out_order
                )
            })
        }
        Command::Subgroups { group } => {
            let entry = resolve_group(group, limits)?;
            let subs = amalgenus_core::group::enumerate_subgroups(&entry.group, limits)?;
            let report = io::SubgroupsReportJson {
                schema: io::SCHEMA,
                group: entry.name.clone(),
                count: subs.len(),
                subgroups: subs
                    .items()
                    .iter()
                    .map(|s| io::SubgroupSpec {
                        elements: s.elements().to_vec(),
                    })
                    .collect(),
            };
            Ok(if json {
                json_line(&report)
            } else {
                let mut text = format!("group {}: {} subgroups\n", report.group, report.count);
                for s in &report.subgroups {
                    text.push_str(&format!(
                        "  order {:>3}: {:?}\n",
                        s.elements.len(),
                        s.elements
                    ));
                }
                text
            })
        }
        Command::IsoClasses {
            g1,
            h1,
            g2,
            h2,
            family,
        } => {
            let e1 = resolve_group(g1, limits)?;
            let e2 = resolve_group(g2, limits)?;
            let s1 = resolve_subgroup(&e1, h1)?;
            let s2 = resolve_subgroup(&e2, h2)?;
            let report = match family.as_str() {
                "fixed" => count_classes_fixed_subgroups(&e1.group, &s1, &e2.group, &s2, limits)?,
                "pushout" => {
                    let (h_abs, _) = s1.as_group(Some(format!("{}-sub", e1.name)));
                    count_classes_pushout_family(&Arc::new(h_abs), &e1.group, &e2.group, limits)?
                }
                other => {
                    return Err(Error::InvalidInput(format!(
                        "unknown family {other:?} (expected fixed or pushout)"
                    )))
                }
            };
            let doc = io::iso_classes_json(&report);
            Ok(if json {
                json_line(&doc)
            } else {
                format!(
                    "iso classes ({}, {}): {}\n",
                    doc.family,
                    if doc.symmetric {
                        "symmetric"
                    } else {
                        "non-symmetric"
                    },
                    doc.count
                )
            })
        }
        Command::Genus {
            g1,
            h1,
            g2,
            h2,
            nplus_policy,
            abstract_file,
        } => {
            if let Some(path) = abstract_file {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    Error::InvalidInput(format!("cannot read {}: {e}", path.display()))
                })?;
                let (input, out) = io::parse_genus_input_file(&text, limits)?;
                let report = genus_fixed(&input)?;
                let doc = io::genus_report_json(&report, &out, None);
                return Ok(if json {
                    json_line(&doc)
                } else {
                    format!(
                        "genus = {} [{}; mode {}; nplus {}]\n",
                        doc.value, doc.formula, doc.mode, doc.nplus_policy
                    )
                });
            }
            let (g1, h1, g2, h2) = match (g1, h1, g2, h2) {
                (Some(g1), Some(h1), Some(g2), Some(h2)) => (g1, h1, g2, h2),
                _ => {
                    return Err(Error::InvalidInput(
                        "genus needs --g1/--h1/--g2/--h2 or --abstract".into(),
                    ))
                }
            };
            let policy = io::policy_from_str(nplus_policy)?;
            let e1 = resolve_group(g1, limits)?;
            let e2 = resolve_group(g2, limits)?;
            let s1 = resolve_subgroup(&e1, h1)?;
            let s2 = resolve_subgroup(&e2, h2)?;
            let ctx = FixedPairContext::new(&e1.group, &s1, &e2.group, &s2, limits)?;
            let input = derive_genus_input_ctx(&ctx, policy, None)?;
            let mut report = genus_fixed(&input)?;
            report.conditions = Some(check_simplifications_ctx(&ctx, limits)?);
            let classes = amalgenus_core::amalgam::count_classes_fixed_subgroups_ctx(&ctx)?;
            let doc = io::genus_report_json(&report, &ctx.out_h, Some(classes.count));
            Ok(if json {
                json_line(&doc)
            } else {
                format!(
                    "genus(W) = {}, iso classes = {} [mode {}; nplus {}; |Out(H)| = {}]\n",
                    doc.value, classes.count, doc.mode, doc.nplus_policy, doc.out_order
                )
            })
        }
        Command::GenusPushout {
            g1,
            h1,
            g2,
            h2,
            nplus_policy,
        } => {
            let policy = io::policy_from_str(nplus_policy)?;
            let e1 = resolve_group(g1, limits)?;
            let e2 = resolve_group(g2, limits)?;
            let s1 = resolve_subgroup(&e1, h1)?;
            let s2 = resolve_subgroup(&e2, h2)?;
            let report = genus_pushout(&e1.group, &s1, &e2.group, &s2, policy, None, limits)?;
            let ctx = FixedPairContext::new(&e1.group, &s1, &e2.group, &s2, limits)?;
            let doc = io::pushout_genus_json(&report, &ctx.out_h);
            Ok(if json {
                json_line(&doc)
            } else {
                format!(
                    "genus(F) = {} over {} subgroup pair(s) [k1 = {:?}, k2 = {:?}]\n",
                    doc.total,
                    doc.pairs.len(),
                    report.k1,
                    report.k2
                )
            })
        }
        Command::OracleSweep {
            catalog,
            max_order,
            max_subgroup,
        } => {
            let (entries, pairs) = match catalog {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| {
                        Error::InvalidInput(format!("cannot read {}: {e}", path.display()))
                    })?;
                    io::parse_catalog_file(&text, limits)?
                }
                None => (builtin_catalog(), Vec::new()),
            };
            let results = if pairs.is_empty() {
                sweep_catalog(&entries, *max_order, *max_subgroup, limits)?
            } else {
                // Explicit instances: one cross-check per declared pair.
                let find = |label: &str| {
                    entries
                        .iter()
                        .find(|e| e.name == label)
                        .cloned()
                        .or_else(|| builtin_entry(label))
                        .ok_or_else(|| {
                            Error::InvalidInput(format!("catalog pair names unknown group {label:?}"))
                        })
                };
                let mut results = Vec::new();
                for pair in &pairs {
                    let e1 = find(&pair.g1)?;
                    let e2 = find(&pair.g2)?;
                    let s1 = resolve_subgroup(&e1, &pair.h1)?;
                    let _s2 = resolve_subgroup(&e2, &pair.h2)?;
                    let (h_abs, _) = s1.as_group(Some(format!("{}-{}", pair.g1, pair.h1)));
                    results.push(amalgenus_core::amalgam::oracle_cross_check(
                        &e1.group,
                        &e2.group,
                        &Arc::new(h_abs),
                        limits,
                    )?);
                }
                results
            };
            let doc = io::sweep_report_json(&results);
            Ok(if json {
                json_line(&doc)
            } else {
                let mut text = format!(
                    "oracle sweep: {} instances, {}\n",
                    doc.instance_count,
                    if doc.all_agree {
                        "all agree"
                    } else {
                        "DISAGREEMENTS FOUND"
                    }
                );
                for inst in doc.instances.iter().filter(|i| !i.agree) {
                    text.push_str(&format!(
                        "  DISAGREE {}/{}/{}: family {} vs formula {} vs pairwise {}\n",
                        inst.g1,
                        inst.g2,
                        inst.h,
                        inst.family_orbit_count,
                        inst.formula_sum,
                        inst.pairwise_distinct
                    ));
                }
                text
            })
        }
        Command::Conditions { g1, h1, g2, h2 } => {
            let e1 = resolve_group(g1, limits)?;
            let e2 = resolve_group(g2, limits)?;
            let s1 = resolve_subgroup(&e1, h1)?;
            let s2 = resolve_subgroup(&e2, h2)?;
            let ctx = FixedPairContext::new(&e1.group, &s1, &e2.group, &s2, limits)?;
            let c = check_simplifications_ctx(&ctx, limits)?;
            let doc = io::conditions_json(&c);
            Ok(if json {
                json_line(&doc)
            } else {
                format!(
                    "central: {:?}\ndirect factor of normalizer: {:?}\nout abelian: {}\nself-normalizing: {:?}\nretract: {:?}\nnplus eliminable: {}\nany simplification holds: {}\n",
                    doc.central,
                    doc.direct_factor_of_normalizer,
                    doc.out_abelian,
                    doc.self_normalizing,
                    doc.retract,
                    doc.nplus_eliminable,
                    doc.any_holds
                )
            })
        }
    }
}
