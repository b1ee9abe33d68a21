//! JSON schemas: group input files, abstract genus inputs, and the report
//! documents emitted by the command-line frontend. All serialization is
//! deterministic (fixed field order, sorted maps, canonical element order).

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::amalgam::{InstanceComparison, IsoClassReport, PairComparison};
use crate::catalog::CatalogEntry;
use crate::error::{Error, Result};
use crate::genus::{
    ConditionVector, GenusInput, GenusReport, NplusPolicy, PushoutGenusReport, SymmetryMode,
};
use crate::group::{FiniteGroup, Subgroup};
use crate::morphism::{compute_aut, out_quotient, OutQuotient};
use crate::Limits;

pub const SCHEMA: &str = "amalgenus/1";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubgroupSpec {
    pub elements: Vec<usize>,
}

/// A group input document: exactly one of `table` or `permgens`, an optional
/// label, and optional named subgroups. All indices 0-based.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupFile {
    #[serde(default = "default_schema")]
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permgens: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub subgroups: BTreeMap<String, SubgroupSpec>,
}

fn default_schema() -> String {
    SCHEMA.to_string()
}

pub fn parse_group_file(text: &str, limits: &Limits) -> Result<CatalogEntry> {
    let file: GroupFile =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("bad group JSON: {e}")))?;
    if file.schema != SCHEMA {
        return Err(Error::InvalidInput(format!(
            "unsupported schema {:?}, expected {SCHEMA:?}",
            file.schema
        )));
    }
    let group = match (&file.table, &file.permgens) {
        (Some(table), None) => FiniteGroup::from_table(table.clone(), file.label.clone(), limits)?,
        (None, Some(gens)) => {
            FiniteGroup::from_permutations(gens.clone(), file.label.clone(), limits)?
        }
        _ => {
            return Err(Error::InvalidInput(
                "group file needs exactly one of \"table\" or \"permgens\"".into(),
            ))
        }
    };
    let group = Arc::new(group);
    let mut subgroups = BTreeMap::new();
    for (name, spec) in &file.subgroups {
        let s = Subgroup::new(Arc::clone(&group), spec.elements.iter().copied())
            .map_err(|e| Error::InvalidInput(format!("subgroup {name:?}: {e}")))?;
        subgroups.insert(name.clone(), s);
    }
    let name = file.label.unwrap_or_else(|| "group".into());
    Ok(CatalogEntry {
        name,
        group,
        subgroups,
    })
}

pub fn group_file_of(entry: &CatalogEntry) -> GroupFile {
    GroupFile {
        schema: SCHEMA.into(),
        label: Some(entry.name.clone()),
        table: Some(entry.group.table().to_vec()),
        permgens: None,
        subgroups: entry
            .subgroups
            .iter()
            .map(|(k, v)| {
                (
                    k.clone(),
                    SubgroupSpec {
                        elements: v.elements().to_vec(),
                    },
                )
            })
            .collect(),
    }
}

/// One explicit sweep instance: group labels plus named subgroups.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairSpec {
    pub g1: String,
    pub h1: String,
    pub g2: String,
    pub h2: String,
}

/// A catalog document: a list of group files for sweep runs, optionally with
/// explicit subgroup pairs to check instead of the automatic enumeration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogFile {
    #[serde(default = "default_schema")]
    pub schema: String,
    pub groups: Vec<GroupFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pairs: Vec<PairSpec>,
}

pub fn parse_catalog_file(text: &str, limits: &Limits) -> Result<(Vec<CatalogEntry>, Vec<PairSpec>)> {
    let file: CatalogFile = serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("bad catalog JSON: {e}")))?;
    if file.schema != SCHEMA {
        return Err(Error::InvalidInput(format!(
            "unsupported schema {:?}, expected {SCHEMA:?}",
            file.schema
        )));
    }
    let entries = file
        .groups
        .iter()
        .map(|g| parse_group_file(&serde_json::to_string(g).unwrap(), limits))
        .collect::<Result<Vec<_>>>()?;
    Ok((entries, file.pairs))
}

pub fn mode_to_str(mode: SymmetryMode) -> &'static str {
    match mode {
        SymmetryMode::ProfinitelyNonsymmetric => "profinitely-nonsymmetric",
        SymmetryMode::ProfinitelySymmetricNonsymmetric => "profinitely-symmetric-nonsymmetric",
        SymmetryMode::Symmetric => "symmetric",
        SymmetryMode::Double => "double",
    }
}

pub fn mode_from_str(s: &str) -> Result<SymmetryMode> {
    match s {
        "profinitely-nonsymmetric" => Ok(SymmetryMode::ProfinitelyNonsymmetric),
        "profinitely-symmetric-nonsymmetric" => Ok(SymmetryMode::ProfinitelySymmetricNonsymmetric),
        "symmetric" => Ok(SymmetryMode::Symmetric),
        "double" => Ok(SymmetryMode::Double),
        other => Err(Error::InvalidInput(format!("unknown symmetry mode {other:?}"))),
    }
}

pub fn policy_to_str(policy: NplusPolicy) -> &'static str {
    match policy {
        NplusPolicy::Exact => "exact",
        NplusPolicy::LowerProxy => "lower",
        NplusPolicy::UpperProxy => "upper",
    }
}

pub fn policy_from_str(s: &str) -> Result<NplusPolicy> {
    match s {
        "exact" => Ok(NplusPolicy::Exact),
        "lower" => Ok(NplusPolicy::LowerProxy),
        "upper" => Ok(NplusPolicy::UpperProxy),
        other => Err(Error::InvalidInput(format!("unknown nplus policy {other:?}"))),
    }
}

/// Abstract genus input: the subgroup `H` inline, and every `Out(H)`-level
/// set given by automorphism map tables (canonical coset representatives).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GenusInputFile {
    #[serde(default = "default_schema")]
    pub schema: String,
    pub h: GroupFile,
    pub mode: String,
    pub a1: Vec<Vec<usize>>,
    pub a2: Vec<Vec<usize>>,
    pub ahat1: Vec<Vec<usize>>,
    pub ahat2: Vec<Vec<usize>>,
    pub nplus: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n1: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n2: Option<Vec<Vec<usize>>>,
}

pub fn parse_genus_input_file(text: &str, limits: &Limits) -> Result<(GenusInput, Arc<OutQuotient>)> {
    let file: GenusInputFile = serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("bad genus input JSON: {e}")))?;
    let h_entry = parse_group_file(&serde_json::to_string(&file.h).unwrap(), limits)?;
    let aut = Arc::new(compute_aut(&h_entry.group, limits)?);
    let out = Arc::new(out_quotient(&aut)?);
    let locate_set = |tables: &[Vec<usize>], what: &str| -> Result<Vec<usize>> {
        let mut out_indices = Vec::new();
        for t in tables {
            let ai = aut.index_of(t).ok_or_else(|| {
                Error::InvalidInput(format!("{what}: table {t:?} is not an automorphism of H"))
            })?;
            out_indices.push(out.project(ai));
        }
        out_indices.sort_unstable();
        out_indices.dedup();
        Ok(out_indices)
    };
    let subgroup_of = |tables: &[Vec<usize>], what: &str| -> Result<Subgroup> {
        let elems = locate_set(tables, what)?;
        Subgroup::new(Arc::clone(out.group()), elems)
            .map_err(|e| Error::InvalidGenusInput(format!("{what}: {e}")))
    };
    let mut nplus = locate_set(&file.nplus, "nplus")?;
    let identity = out.group().identity();
    if !nplus.contains(&identity) {
        nplus.push(identity);
        nplus.sort_unstable();
    }
    let xi = match &file.xi {
        Some(t) => {
            let ai = aut
                .index_of(t)
                .ok_or_else(|| Error::InvalidInput("xi is not an automorphism of H".into()))?;
            Some(out.project(ai))
        }
        None => None,
    };
    let n1 = file.n1.as_deref().map(|t| subgroup_of(t, "n1")).transpose()?;
    let n2 = file.n2.as_deref().map(|t| subgroup_of(t, "n2")).transpose()?;
    let input = GenusInput {
        out: Arc::clone(&out),
        a1: subgroup_of(&file.a1, "a1")?,
        a2: subgroup_of(&file.a2, "a2")?,
        ahat1: subgroup_of(&file.ahat1, "ahat1")?,
        ahat2: subgroup_of(&file.ahat2, "ahat2")?,
        nplus,
        nplus_policy: NplusPolicy::Exact,
        xi,
        mode: mode_from_str(&file.mode)?,
        n1,
        n2,
    };
    input.validate()?;
    Ok((input, out))
}

#[derive(Debug, Clone, Serialize)]
pub struct AutReportJson {
    pub schema: &'static str,
    pub group: String,
    pub aut_order: usize,
    pub inn_order: usize,
    pub out_order: usize,
    pub maps: Vec<Vec<usize>>,
    pub inn_indices: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SubgroupsReportJson {
    pub schema: &'static str,
    pub group: String,
    pub count: usize,
    pub subgroups: Vec<SubgroupSpec>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MorphismJson {
    pub source: String,
    pub target: String,
    pub map: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PushOutJson {
    pub lambda: MorphismJson,
    pub mu: MorphismJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct IsoClassesJson {
    pub schema: &'static str,
    pub family: String,
    pub method: String,
    pub symmetric: bool,
    pub count: usize,
    pub representatives: Vec<PushOutJson>,
}

pub fn iso_classes_json(report: &IsoClassReport) -> IsoClassesJson {
    let label = |g: &FiniteGroup| g.label().unwrap_or("group").to_string();
    IsoClassesJson {
        schema: SCHEMA,
        family: match report.family {
            crate::amalgam::ClassFamily::PushoutFamily => "pushout-family".into(),
            crate::amalgam::ClassFamily::FixedSubgroups => "fixed-subgroups".into(),
        },
        method: match report.method {
            crate::amalgam::CountMethod::Formula => "formula".into(),
            crate::amalgam::CountMethod::Oracle => "oracle".into(),
        },
        symmetric: report.symmetric,
        count: report.count,
        representatives: report
            .representatives
            .iter()
            .map(|p| PushOutJson {
                lambda: MorphismJson {
                    source: label(p.h()),
                    target: label(p.g1()),
                    map: p.lambda().map().to_vec(),
                },
                mu: MorphismJson {
                    source: label(p.h()),
                    target: label(p.g2()),
                    map: p.mu().map().to_vec(),
                },
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassJson {
    /// Canonical automorphism map table of the class representative.
    pub rep: Vec<usize>,
    pub members: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct C2Json {
    pub fixed: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionsJson {
    pub central: [bool; 2],
    pub direct_factor_of_normalizer: [bool; 2],
    pub out_abelian: bool,
    pub self_normalizing: [bool; 2],
    pub retract: [bool; 2],
    pub nplus_eliminable: bool,
    pub any_holds: bool,
}

pub fn conditions_json(c: &ConditionVector) -> ConditionsJson {
    ConditionsJson {
        central: c.central,
        direct_factor_of_normalizer: c.direct_factor_of_normalizer,
        out_abelian: c.out_abelian,
        self_normalizing: c.self_normalizing,
        retract: c.retract,
        nplus_eliminable: c.nplus_eliminable,
        any_holds: c.any_holds(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GenusReportJson {
    pub schema: &'static str,
    pub value: usize,
    pub is_bound: bool,
    pub formula: String,
    pub mode: String,
    pub nplus_policy: String,
    pub out_order: usize,
    /// Carrier sets as canonical automorphism map tables.
    pub k_set: Vec<Vec<usize>>,
    pub s_set: Vec<Vec<usize>>,
    pub classes: Vec<ClassJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c2: Option<C2Json>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conditions: Option<ConditionsJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iso_classes: Option<usize>,
}

pub fn genus_report_json(
    report: &GenusReport,
    out: &OutQuotient,
    iso_classes: Option<usize>,
) -> GenusReportJson {
    let table_of = |out_idx: usize| out.aut().map_table(out.rep(out_idx)).to_vec();
    GenusReportJson {
        schema: SCHEMA,
        value: report.value,
        is_bound: report.is_bound,
        formula: report.formula.clone(),
        mode: mode_to_str(report.mode).into(),
        nplus_policy: policy_to_str(report.policy).into(),
        out_order: out.order(),
        k_set: report.k_set.iter().map(|&x| table_of(x)).collect(),
        s_set: report.s_set.iter().map(|&x| table_of(x)).collect(),
        classes: report
            .decomposition
            .classes()
            .iter()
            .map(|c| ClassJson {
                rep: table_of(c.rep),
                members: c.members.iter().map(|&m| table_of(m)).collect(),
            })
            .collect(),
        c2: report.c2.as_ref().map(|c| C2Json {
            fixed: c.fixed.clone(),
            pairs: c.pairs.clone(),
        }),
        conditions: report.conditions.as_ref().map(conditions_json),
        iso_classes,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PushoutGenusJson {
    pub schema: &'static str,
    pub total: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k1: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k2: Option<usize>,
    pub pairs: Vec<(String, GenusReportJson)>,
}

pub fn pushout_genus_json(report: &PushoutGenusReport, out: &OutQuotient) -> PushoutGenusJson {
    PushoutGenusJson {
        schema: SCHEMA,
        total: report.total,
        k1: report.k1,
        k2: report.k2,
        pairs: report
            .pairs
            .iter()
            .map(|(label, r)| (label.clone(), genus_report_json(r, out, None)))
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairComparisonJson {
    pub h1_elements: Vec<usize>,
    pub h2_elements: Vec<usize>,
    pub formula_count: usize,
    pub restricted_orbit_count: usize,
    pub symmetric: bool,
    pub agree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceComparisonJson {
    pub g1: String,
    pub g2: String,
    pub h: String,
    pub family_orbit_count: usize,
    pub formula_sum: usize,
    pub pairwise_distinct: usize,
    pub pairs: Vec<PairComparisonJson>,
    pub agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReportJson {
    pub schema: &'static str,
    pub instances: Vec<InstanceComparisonJson>,
    pub instance_count: usize,
    pub all_agree: bool,
}

pub fn instance_comparison_json(c: &InstanceComparison) -> InstanceComparisonJson {
    let pair_json = |p: &PairComparison| PairComparisonJson {
        h1_elements: p.h1_elements.clone(),
        h2_elements: p.h2_elements.clone(),
        formula_count: p.formula_count,
        restricted_orbit_count: p.restricted_orbit_count,
        symmetric: p.symmetric,
        agree: p.agree(),
    };
    InstanceComparisonJson {
        g1: c.g1.clone(),
        g2: c.g2.clone(),
        h: c.h.clone(),
        family_orbit_count: c.family_orbit_count,
        formula_sum: c.formula_sum,
        pairwise_distinct: c.pairwise_distinct,
        pairs: c.pairs.iter().map(pair_json).collect(),
        agree: c.agree,
        note: c.note.clone(),
    }
}

pub fn sweep_report_json(instances: &[InstanceComparison]) -> SweepReportJson {
    SweepReportJson {
        schema: SCHEMA,
        instances: instances.iter().map(instance_comparison_json).collect(),
        instance_count: instances.len(),
        all_agree: instances.iter().all(|c| c.agree),
    }
}
