//! Fundamental-domain sweeps and their JSON reports.
//!
//! Schema (all integers as decimal strings):
//!
//! ```text
//! { "params": {"n","t","N"}, "lambdas": [tag…], "include_infinite": bool,
//!   "entries": [ { "index", "kind", "i1" | "i", "j", "lambda", "dim",
//!                  "soc_types": [[i,j]…], "class", "verdict": NicholsVerdict | null } … ],
//!   "iso_classes": [ { "class", "representative", "label", "members": [index…] } … ] }
//! ```

use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use super::SessionConfig;
use crate::braiding::{classify_nichols, graded_nichols_dims, NicholsVerdict};
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::hopf::TaftParams;
use crate::yd::{in_standard_set, iso_test, lambda_tag, socle, ModuleKind, ModuleSpecifier, YdModule};

#[derive(Clone, Debug, Serialize)]
pub struct SweepEntry {
    pub index: String,
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i1: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<String>,
    pub j: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    pub dim: String,
    pub soc_types: Vec<[String; 2]>,
    pub class: String,
    pub verdict: Option<NicholsVerdict>,
    #[serde(skip)]
    pub spec: Option<ModuleSpecifier>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsoClass {
    pub class: String,
    pub representative: String,
    pub label: String,
    pub members: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub params: TaftParams,
    pub lambdas: Vec<String>,
    pub include_infinite: bool,
    pub entries: Vec<SweepEntry>,
    pub iso_classes: Vec<IsoClass>,
}

#[derive(Serialize)]
pub struct SweepSummary {
    pub file: String,
    pub entries: String,
    pub iso_classes: String,
}

impl SweepReport {
    pub fn summary_json(&self, path: &Path) -> SweepSummary {
        SweepSummary {
            file: path.display().to_string(),
            entries: self.entries.len().to_string(),
            iso_classes: self.iso_classes.len().to_string(),
        }
    }

    /// Number of classes whose entries carry λ = `tag`.
    pub fn classes_with_lambda(&self, tag: &str) -> usize {
        self.iso_classes
            .iter()
            .filter(|c| {
                let rep: usize = c.representative.parse().unwrap_or(usize::MAX);
                self.entries.get(rep).and_then(|e| e.lambda.as_deref()) == Some(tag)
            })
            .count()
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))
    }
}

/// Graded dimensions up to `bound`, stopping at the last degree within the budget.
pub(crate) fn probe_within_budget(module: &YdModule, bound: usize, budget: u64) -> Result<Vec<(usize, usize)>> {
    let mut top = 0;
    while top < bound && (module.dim as u64).checked_pow(top as u32 + 1).is_some_and(|w| w <= budget) {
        top += 1;
    }
    Ok(graded_nichols_dims(module, top, budget)?.into_iter().enumerate().collect())
}

fn entry(cfg: &SessionConfig, spec: ModuleSpecifier, probe: bool) -> Result<SweepEntry> {
    let module = spec.build()?;
    let soc_types = socle(&module)
        .types()
        .iter()
        .map(|(a, b)| [a.to_string(), b.to_string()])
        .collect();
    let (kind, i1, i, j, lambda, verdict) = match &spec.kind {
        ModuleKind::Finite { i1, j, lambda } => {
            let mut v = classify_nichols(spec.params, *i1, *j, lambda);
            if probe && v.finite {
                v.probe = Some(probe_within_budget(&module, cfg.probe_bound, cfg.symmetrizer_budget)?);
            }
            ("finite", Some(i1.to_string()), None, *j, Some(lambda_tag(lambda)), Some(v))
        }
        ModuleKind::Infinite { i, j, .. } => ("infinite", None, Some(i.to_string()), *j, None, None),
        ModuleKind::Custom { .. } => return Err(Error::Unsupported("sweeps cover constructed modules only".into())),
    };
    Ok(SweepEntry {
        index: String::new(),
        kind,
        i1,
        i,
        j: j.to_string(),
        lambda,
        dim: module.dim.to_string(),
        soc_types,
        class: String::new(),
        verdict,
        spec: Some(spec),
    })
}

/// Enumerates i (or i₁) ascending then j ascending over {0..n−1}², one
/// stratum per λ in the given order, then the infinite windows. Entries are
/// built in parallel; class assignment runs in that canonical order, the
/// first member of each class being its representative.
pub fn run_sweep(cfg: &SessionConfig, lambdas: &[CycNum], include_infinite: bool, probe: bool) -> Result<SweepReport> {
    let params = cfg.params()?;
    let n = params.n() as i64;
    let mut specs = Vec::new();
    for lambda in lambdas {
        for i1 in 0..n {
            for j in 0..n {
                specs.push(ModuleSpecifier::finite(params, i1, j, lambda.clone()));
            }
        }
    }
    if include_infinite {
        for i in (0..n).filter(|&i| in_standard_set(params, i)) {
            for j in 0..n {
                specs.push(ModuleSpecifier::infinite(params, i, j, cfg.truncation_k));
            }
        }
    }
    let mut entries = specs
        .into_par_iter()
        .map(|s| entry(cfg, s, probe))
        .collect::<Result<Vec<_>>>()?;

    let mut classes: Vec<IsoClass> = Vec::new();
    let mut reps: Vec<usize> = Vec::new();
    for idx in 0..entries.len() {
        entries[idx].index = idx.to_string();
        let spec = entries[idx].spec.clone().expect("sweep entries carry their specifier");
        let mut found = None;
        for (c, &r) in reps.iter().enumerate() {
            let other = entries[r].spec.as_ref().expect("sweep entries carry their specifier");
            if iso_test(other, &spec)? {
                found = Some(c);
                break;
            }
        }
        let c = found.unwrap_or_else(|| {
            reps.push(idx);
            classes.push(IsoClass {
                class: classes.len().to_string(),
                representative: idx.to_string(),
                label: spec.describe(),
                members: Vec::new(),
            });
            classes.len() - 1
        });
        classes[c].members.push(idx.to_string());
        entries[idx].class = c.to_string();
    }
    Ok(SweepReport {
        params,
        lambdas: lambdas.iter().map(lambda_tag).collect(),
        include_infinite,
        entries,
        iso_classes: classes,
    })
}

pub fn write_sweep(report: &SweepReport, path: &Path) -> Result<()> {
    let mut s = report.to_json()?;
    s.push('\n');
    std::fs::write(path, s).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::yd::parse_lambda;

    fn sweep(n: u32, t: u32, lams: &[&str]) -> SweepReport {
        let cfg = SessionConfig::new(n, t);
        let l: Vec<CycNum> = lams.iter().map(|s| parse_lambda(s, n).unwrap()).collect();
        run_sweep(&cfg, &l, false, false).unwrap()
    }

    #[test]
    fn class_counts() {
        assert_eq!(sweep(3, 1, &["0"]).iso_classes.len(), 9);
        assert_eq!(sweep(2, 1, &["0"]).iso_classes.len(), 4);
    }

    #[test]
    fn lambda_strata_are_disjoint() {
        let r = sweep(5, 2, &["0", "1"]);
        for c in &r.iso_classes {
            let tags: std::collections::BTreeSet<_> = c
                .members
                .iter()
                .map(|m| r.entries[m.parse::<usize>().unwrap()].lambda.clone())
                .collect();
            assert_eq!(tags.len(), 1);
        }
        assert!(r.classes_with_lambda("0") > 0 && r.classes_with_lambda("1") > 0);
    }

    #[test]
    fn deterministic_json() {
        let a = sweep(4, 2, &["0", "zeta^1"]).to_json().unwrap();
        let b = sweep(4, 2, &["0", "zeta^1"]).to_json().unwrap();
        assert_eq!(a, b);
    }
}
