//! End-to-end runs shared by the command-line front end and the acceptance tests.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::AlgebraElement;
use crate::component::{wedderburn_summary, ComponentDescriptor, ComponentOptions, WedderburnSummary};
use crate::corpus;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, DEFAULT_CLOSURE_CAP, DEFAULT_SUBGROUP_CAP};
use crate::idempotents::{matrix_units, primitive_idempotent_set, MatrixUnits, PrimitiveIdempotentSet};
use crate::io;
use crate::shoda::{complete_irredundant_set, verify_declared_pairs, ClassificationReport, DeclaredPair, DEFAULT_CHAIN_BUDGET};
use crate::units::{unit_report, UnitReport};

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub subgroup_cap: usize,
    pub closure_cap: usize,
    pub height_budget: i64,
    pub candidate_budget: usize,
    pub chain_budget: usize,
    pub declared_pairs: Option<Vec<DeclaredPair>>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let opts = ComponentOptions::default();
        RunConfig {
            subgroup_cap: DEFAULT_SUBGROUP_CAP,
            closure_cap: DEFAULT_CLOSURE_CAP,
            height_budget: opts.max_height,
            candidate_budget: opts.candidate_budget,
            chain_budget: DEFAULT_CHAIN_BUDGET,
            declared_pairs: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.subgroup_cap == 0 || self.closure_cap == 0 || self.height_budget <= 0 || self.candidate_budget == 0 || self.chain_budget == 0 {
            return Err(Error::ParameterInvalid("all budgets must be positive".into()));
        }
        Ok(())
    }

    fn component_options(&self) -> ComponentOptions {
        ComponentOptions { max_height: self.height_budget, candidate_budget: self.candidate_budget }
    }
}

/// Classification plus one descriptor per classified pair.
pub struct Analysis {
    pub group: Arc<FiniteGroup>,
    pub report: ClassificationReport,
    pub components: Vec<ComponentDescriptor>,
}

pub fn classify(group: &Arc<FiniteGroup>, cfg: &RunConfig) -> Result<ClassificationReport> {
    cfg.validate()?;
    match &cfg.declared_pairs {
        Some(d) => verify_declared_pairs(group, d),
        None => complete_irredundant_set(group, cfg.subgroup_cap, cfg.chain_budget),
    }
}

pub fn analyze(group: &Arc<FiniteGroup>, cfg: &RunConfig) -> Result<Analysis> {
    let report = classify(group, cfg)?;
    let opts = cfg.component_options();
    let components = report
        .pairs
        .iter()
        .map(|p| ComponentDescriptor::build(&p.pair, &p.chain, &opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(Analysis { group: group.clone(), report, components })
}

impl Analysis {
    pub fn coverage_complete(&self) -> bool {
        self.report.coverage.is_one()
    }

    pub fn wedderburn(&self) -> Result<WedderburnSummary> {
        wedderburn_summary(&self.components, self.coverage_complete())
    }

    pub fn wedderburn_json(&self) -> Result<Value> {
        let mut v = self.wedderburn()?.to_json();
        v["verdict"] = json!(self.report.verdict.as_str());
        v["coverage_is_one"] = json!(self.coverage_complete());
        Ok(v)
    }

    /// Primitive idempotents per component; unsupported components are reported, not fatal.
    pub fn idempotent_sets(&self) -> Vec<Result<PrimitiveIdempotentSet>> {
        self.components.iter().map(primitive_idempotent_set).collect()
    }

    pub fn idempotents_json(&self) -> Result<Value> {
        let mut comps = Vec::new();
        for (i, (c, set)) in self.components.iter().zip(self.idempotent_sets()).enumerate() {
            let mut v = json!({"index": i, "pair": c.summary_json()["pair"].clone(), "e": c.e.to_json()});
            match set {
                Ok(s) => {
                    v["status"] = json!("ok");
                    v["idempotents"] = s.members.iter().map(|(_, f)| f.to_json()).collect::<Vec<_>>().into();
                    v["detail"] = s.to_json(c);
                }
                Err(e) => reported(&mut v, e)?,
            }
            comps.push(v);
        }
        Ok(json!({"group_order": self.group.order(), "components": comps}))
    }

    pub fn matrix_units_json(&self) -> Result<Value> {
        let mut comps = Vec::new();
        for (i, (c, set)) in self.components.iter().zip(self.idempotent_sets()).enumerate() {
            let mut v = json!({"index": i, "pair": c.summary_json()["pair"].clone(), "e": c.e.to_json()});
            match set.and_then(|s| matrix_units(c, &s)) {
                Ok(mu) => {
                    v["status"] = json!("ok");
                    v["matrix_units"] = matrix_units_value(&mu);
                    v["labels"] = mu
                        .labels
                        .iter()
                        .map(|&(t, i)| json!({"t": c.group.word(c.transversal[t]), "i": i}))
                        .collect::<Vec<_>>()
                        .into();
                }
                Err(e) => reported(&mut v, e)?,
            }
            comps.push(v);
        }
        Ok(json!({"group_order": self.group.order(), "components": comps}))
    }

    pub fn units(&self) -> Result<UnitReport> {
        unit_report(&self.group, &self.components)
    }

    pub fn units_json(&self) -> Result<Value> {
        let mut v = self.units()?.to_json();
        v["group_order"] = json!(self.group.order());
        Ok(v)
    }
}

// Components outside the supported range are part of the answer; anything else is fatal.
fn reported(v: &mut Value, e: Error) -> Result<()> {
    match e {
        Error::SchurIndexNotOne | Error::ExceptionalComponent => {
            v["status"] = json!(e.reason());
            v["reason"] = json!(e.to_string());
            Ok(())
        }
        other => Err(other),
    }
}

fn matrix_units_value(mu: &MatrixUnits) -> Value {
    mu.units
        .iter()
        .map(|row| row.iter().map(AlgebraElement::to_json).collect::<Vec<_>>())
        .collect::<Vec<_>>()
        .into()
}

pub fn group_info_json(group: &FiniteGroup, cfg: &RunConfig) -> Result<Value> {
    let classes = group.conjugacy_classes();
    let mut orders = std::collections::BTreeMap::new();
    for g in 0..group.order() {
        *orders.entry(group.element_order(g)).or_insert(0usize) += 1;
    }
    let subgroups = if group.order() <= cfg.subgroup_cap {
        Some(group.all_subgroups(cfg.subgroup_cap)?.len())
    } else {
        None
    };
    Ok(json!({
        "order": group.order(),
        "generators": group.labels(),
        "abelian": group.is_abelian(),
        "derived_subgroup_order": group.derived_subgroup().order(),
        "class_sizes": classes.iter().map(Vec::len).collect::<Vec<_>>(),
        "class_representatives": classes.iter().map(|c| group.word(c[0])).collect::<Vec<_>>(),
        "element_orders": orders.iter().map(|(k, v)| json!([k, v])).collect::<Vec<_>>(),
        "subgroup_count": subgroups,
    }))
}

/// Re-checks a bundle emitted by the `idempotents`, `matrix-units` or `units` reports.
pub fn verify_bundle(group: &Arc<FiniteGroup>, bundle: &Value) -> Result<Value> {
    if let Some(n) = bundle.get("group_order").and_then(Value::as_u64) {
        if n as usize != group.order() {
            return Err(Error::DimensionMismatch(format!("bundle is for a group of order {n}")));
        }
    }
    let mut checked = json!({"idempotent_sets": 0, "matrix_unit_systems": 0, "units": 0});
    let empty = Vec::new();
    let comps = bundle.get("components").and_then(Value::as_array).unwrap_or(&empty);
    for (ci, c) in comps.iter().enumerate() {
        let e = io::element(group, io::field(c, "e")?)?;
        if let Some(list) = c.get("idempotents").and_then(Value::as_array) {
            let fs = list.iter().map(|v| io::element(group, v)).collect::<Result<Vec<_>>>()?;
            verify_idempotent_list(&fs, &e).map_err(|m| Error::InvariantBreach(format!("component {ci}: {m}")))?;
            checked["idempotent_sets"] = json!(checked["idempotent_sets"].as_u64().unwrap_or(0) + 1);
        }
        if let Some(rows) = c.get("matrix_units").and_then(Value::as_array) {
            let units = rows
                .iter()
                .map(|r| r.as_array().ok_or_else(|| Error::Parse("matrix unit row".into()))?.iter().map(|v| io::element(group, v)).collect())
                .collect::<Result<Vec<Vec<_>>>>()?;
            verify_matrix_unit_system(&units, &e).map_err(|m| Error::MatrixUnitRelationFailed(format!("component {ci}: {m}")))?;
            checked["matrix_unit_systems"] = json!(checked["matrix_unit_systems"].as_u64().unwrap_or(0) + 1);
        }
    }
    if let Some(gens) = bundle.get("generators").and_then(Value::as_array) {
        for (i, u) in gens.iter().enumerate() {
            let value = io::element(group, io::field(u, "value")?)?;
            let inverse = io::element(group, io::field(u, "inverse")?)?;
            if !value.is_integral() || !inverse.is_integral() {
                return Err(Error::NonIntegralInverse);
            }
            if !(&value * &inverse).is_one() || !(&inverse * &value).is_one() {
                return Err(Error::InvariantBreach(format!("generator {i}: value times inverse is not one")));
            }
        }
        checked["units"] = json!(gens.len());
    }
    Ok(json!({"status": "ok", "checked": checked}))
}

fn verify_idempotent_list(fs: &[AlgebraElement], e: &AlgebraElement) -> std::result::Result<(), String> {
    for i in 0..fs.len() {
        for j in 0..fs.len() {
            if i != j && !(&fs[i] * &fs[j]).is_zero() {
                return Err(format!("orthogonality fails for members {i} and {j}"));
            }
        }
    }
    let mut sum = AlgebraElement::zero(e.group());
    for (i, f) in fs.iter().enumerate() {
        if !f.is_idempotent() {
            return Err(format!("member {i} is not idempotent"));
        }
        sum = &sum + f;
    }
    if &sum != e {
        return Err("members do not sum to the central idempotent".into());
    }
    if !e.is_idempotent() || !e.is_central() {
        return Err("stated central idempotent is not a central idempotent".into());
    }
    Ok(())
}

fn verify_matrix_unit_system(units: &[Vec<AlgebraElement>], e: &AlgebraElement) -> std::result::Result<(), String> {
    let n = units.len();
    if units.iter().any(|r| r.len() != n) {
        return Err("matrix unit table is not square".into());
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let p = &units[a][b] * &units[c][d];
                    let ok = if b == c { p == units[a][d] } else { p.is_zero() };
                    if !ok {
                        return Err(format!("relation ({a},{b})·({c},{d}) fails"));
                    }
                }
            }
        }
    }
    let mut trace = AlgebraElement::zero(e.group());
    for (a, row) in units.iter().enumerate() {
        trace = &trace + &row[a];
    }
    if &trace != e {
        return Err("diagonal units do not sum to the central idempotent".into());
    }
    Ok(())
}

/// Deterministic digest of one corpus group: no timings, no element dumps.
pub fn corpus_entry(name: &str, cfg: &RunConfig) -> Result<Value> {
    let group = corpus::builtin(name)?;
    let mut cfg = cfg.clone();
    if let Some(d) = corpus::declared_pairs(name, &group)? {
        cfg.declared_pairs = Some(d);
    }
    let a = analyze(&group, &cfg)?;
    let w = a.wedderburn()?;
    let mut comps = Vec::new();
    for (c, set) in a.components.iter().zip(a.idempotent_sets()) {
        let mut v = json!({
            "pair": [c.pair.h.order(), c.pair.k.order()],
            "chain_orders": c.chain.tower.iter().map(|s| s.order()).collect::<Vec<_>>(),
            "k": c.k(),
            "galois_size": c.galois_size(),
            "center_dimension": c.center_dimension(),
            "contribution": c.contribution(),
            "trivialized": c.trivialized,
            "exceptional": crate::units::exceptional_screen(c).as_str(),
        });
        match set {
            Ok(s) => {
                let mu = matrix_units(c, &s)?;
                v["idempotents"] = json!(s.len());
                v["matrix_units"] = json!(mu.units.len() * mu.units.len());
            }
            Err(e) => reported(&mut v, e)?,
        }
        comps.push(v);
    }
    let units = a.units()?;
    let count = |f: fn(&crate::units::Provenance) -> bool| units.generators.iter().filter(|u| f(&u.provenance)).count();
    use crate::units::Provenance as P;
    Ok(json!({
        "group": name,
        "order": group.order(),
        "verdict": a.report.verdict.as_str(),
        "coverage_is_one": a.coverage_complete(),
        "total_dimension": w.total,
        "components": comps,
        "units": {
            "bass_cyclic": count(|p| matches!(p, P::BassCyclic { .. })),
            "generalized_bass": count(|p| matches!(p, P::GeneralizedBass { .. })),
            "bicyclic": count(|p| matches!(p, P::Bicyclic { .. })),
            "elementary": count(|p| matches!(p, P::Elementary { .. })),
            "exceptional_components": units.exceptional.len(),
        },
    }))
}

pub fn corpus_run(cfg: &RunConfig, include_slow: bool) -> Result<Value> {
    let mut names: Vec<&str> = corpus::CORPUS.to_vec();
    if include_slow {
        names.extend(corpus::SLOW_CORPUS);
    }
    let entries = names.iter().map(|n| corpus_entry(n, cfg)).collect::<Result<Vec<_>>>()?;
    Ok(json!({"corpus": entries}))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_reports_round_trip() {
        let g = corpus::builtin("s3").unwrap();
        let a = analyze(&g, &RunConfig::default()).unwrap();
        assert_eq!(a.wedderburn().unwrap().total, 6);
        let idem = a.idempotents_json().unwrap();
        verify_bundle(&g, &idem).unwrap();
        let mu = a.matrix_units_json().unwrap();
        verify_bundle(&g, &mu).unwrap();
        let units = a.units_json().unwrap();
        let checked = verify_bundle(&g, &units).unwrap();
        assert!(checked["checked"]["units"].as_u64().unwrap() > 0);
    }

    #[test]
    fn tampered_bundle_is_rejected() {
        let g = corpus::builtin("s3").unwrap();
        let a = analyze(&g, &RunConfig::default()).unwrap();
        let mut idem = a.idempotents_json().unwrap();
        let comp = idem["components"]
            .as_array_mut()
            .unwrap()
            .iter_mut()
            .find(|c| c["idempotents"].as_array().is_some_and(|l| l.len() == 2))
            .unwrap();
        comp["idempotents"][0]["coeffs"]["0"] = json!(["1", "7"]);
        let err = verify_bundle(&g, &idem).unwrap_err();
        assert!(err.to_string().contains("orthogonality"), "{err}");
    }

    #[test]
    fn quaternion_component_is_reported() {
        let g = corpus::builtin("q8").unwrap();
        let a = analyze(&g, &RunConfig::default()).unwrap();
        let v = a.idempotents_json().unwrap();
        let statuses: Vec<&str> = v["components"].as_array().unwrap().iter().map(|c| c["status"].as_str().unwrap()).collect();
        assert_eq!(statuses.iter().filter(|s| **s == "schur_index_not_one").count(), 1);
        assert_eq!(statuses.iter().filter(|s| **s == "ok").count(), 4);
    }

    #[test]
    fn bad_config() {
        let cfg = RunConfig { chain_budget: 0, ..RunConfig::default() };
        assert!(classify(&corpus::builtin("s3").unwrap(), &cfg).is_err());
    }
}
