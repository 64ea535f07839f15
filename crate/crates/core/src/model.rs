//! The persisted diagnostic model: a compiled rule base together with the
//! membership families and engine settings it was built with.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzcore::{
    build_family, FamilyKind, FamilyTerm, InferenceEngine, MembershipFamily, MembershipFn, OutputUniverse, ShapeParams,
    DEFAULT_ACTIVATION_FLOOR, DEFAULT_GRID_POINTS,
};
use crate::intervalgebra::{FuzzyRule, Interval, RuleBase, Term};
use crate::state::MachineState;

pub const RULEBASE_SCHEMA: &str = "ittflm-rulebase/1";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EngineSettings {
    pub grid_points: usize,
    pub activation_floor: f64,
    pub sigma_divisor: f64,
    pub shoulder: f64,
}

impl Default for EngineSettings {
    fn default() -> Self {
        let shape = ShapeParams::default();
        EngineSettings {
            grid_points: DEFAULT_GRID_POINTS,
            activation_floor: DEFAULT_ACTIVATION_FLOOR,
            sigma_divisor: shape.sigma_divisor,
            shoulder: shape.shoulder,
        }
    }
}

impl EngineSettings {
    pub fn shape(&self) -> ShapeParams {
        ShapeParams { sigma_divisor: self.sigma_divisor, shoulder: self.shoulder }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticModel {
    pub rule_base: RuleBase,
    pub kind: FamilyKind,
    pub v_family: MembershipFamily,
    pub g_family: MembershipFamily,
    pub settings: EngineSettings,
}

impl DiagnosticModel {
    pub fn build(rule_base: RuleBase, kind: FamilyKind, settings: EngineSettings) -> Result<Self> {
        let shape = settings.shape();
        let v_family = build_family(rule_base.v_terms(), kind, &shape)?;
        let g_family = build_family(rule_base.g_terms(), kind, &shape)?;
        Ok(DiagnosticModel { rule_base, kind, v_family, g_family, settings })
    }

    pub fn engine(&self) -> Result<InferenceEngine> {
        InferenceEngine::new(
            &self.rule_base,
            self.v_family.clone(),
            self.g_family.clone(),
            OutputUniverse::new(self.settings.grid_points)?,
            self.settings.activation_floor,
        )
    }

    pub fn to_json(&self) -> Result<String> {
        let rb = &self.rule_base;
        let terms = |ts: &[Term]| -> Vec<TermWire> {
            ts.iter().map(|t| TermWire { id: t.id.clone(), lo: t.interval.lo(), hi: t.interval.hi() }).collect()
        };
        let wire = ModelWire {
            schema: RULEBASE_SCHEMA.to_string(),
            v_terms: terms(rb.v_terms()),
            g_terms: terms(rb.g_terms()),
            rules: rb
                .rules()
                .iter()
                .map(|r| RuleWire { iv: rb.v_id(r).to_string(), ig: rb.g_id(r).to_string(), then: r.consequent })
                .collect(),
            families: FamiliesWire {
                kind: self.kind,
                terms: self
                    .v_family
                    .terms
                    .iter()
                    .chain(&self.g_family.terms)
                    .map(|t| ParamsWire { id: t.id.clone(), params: t.mf.params() })
                    .collect(),
            },
            engine: self.settings,
        };
        Ok(serde_json::to_string_pretty(&wire)? + "\n")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: ModelWire = serde_json::from_str(text).map_err(|e| Error::Schema(format!("rule base: {e}")))?;
        if wire.schema != RULEBASE_SCHEMA {
            return Err(Error::Schema(format!("expected schema {RULEBASE_SCHEMA:?}, found {:?}", wire.schema)));
        }
        let schema_err = |e: Error| Error::Schema(e.to_string());
        let terms = |ws: &[TermWire]| -> Result<Vec<Term>> {
            ws.iter().map(|w| Ok(Term { id: w.id.clone(), interval: Interval::new(w.lo, w.hi)? })).collect()
        };
        let v_terms = terms(&wire.v_terms).map_err(schema_err)?;
        let g_terms = terms(&wire.g_terms).map_err(schema_err)?;
        let index = |ts: &[Term], id: &str| {
            ts.iter()
                .position(|t| t.id == id)
                .ok_or_else(|| Error::Schema(format!("rule references unknown term {id:?}")))
        };
        let rules = wire
            .rules
            .iter()
            .map(|r| {
                Ok(FuzzyRule { v_term: index(&v_terms, &r.iv)?, g_term: index(&g_terms, &r.ig)?, consequent: r.then })
            })
            .collect::<Result<Vec<_>>>()?;

        let family = |ts: &[Term]| -> Result<MembershipFamily> {
            let terms =
                ts.iter()
                    .map(|t| {
                        let p =
                            wire.families.terms.iter().find(|p| p.id == t.id).ok_or_else(|| {
                                Error::Schema(format!("no membership parameters for term {:?}", t.id))
                            })?;
                        let mf = MembershipFn::from_params(wire.families.kind, &p.params).map_err(schema_err)?;
                        Ok(FamilyTerm { id: t.id.clone(), mf })
                    })
                    .collect::<Result<Vec<_>>>()?;
            Ok(MembershipFamily { kind: wire.families.kind, terms })
        };
        let v_family = family(&v_terms)?;
        let g_family = family(&g_terms)?;
        let rule_base = RuleBase::new(v_terms, g_terms, rules).map_err(schema_err)?;
        wire.engine.shape().validate().map_err(schema_err)?;
        Ok(DiagnosticModel { rule_base, kind: wire.families.kind, v_family, g_family, settings: wire.engine })
    }
}

#[derive(Serialize, Deserialize)]
struct ModelWire {
    schema: String,
    v_terms: Vec<TermWire>,
    g_terms: Vec<TermWire>,
    rules: Vec<RuleWire>,
    families: FamiliesWire,
    #[serde(default)]
    engine: EngineSettings,
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    id: String,
    lo: f64,
    hi: f64,
}

#[derive(Serialize, Deserialize)]
struct RuleWire {
    iv: String,
    ig: String,
    then: MachineState,
}

#[derive(Serialize, Deserialize)]
struct FamiliesWire {
    kind: FamilyKind,
    terms: Vec<ParamsWire>,
}

#[derive(Serialize, Deserialize)]
struct ParamsWire {
    id: String,
    params: Vec<f64>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intervalgebra::compile_rules;
    use crate::vibdata::{StateIntervalTable, StateIntervals};

    fn model(kind: FamilyKind) -> DiagnosticModel {
        let table = StateIntervalTable::from_rows([
            (
                MachineState::Nr,
                StateIntervals { iv: Interval::new(0.0, 1.0).unwrap(), ig: Interval::new(0.0, 4.0).unwrap() },
            ),
            (
                MachineState::Im,
                StateIntervals { iv: Interval::new(2.0, 3.0).unwrap(), ig: Interval::new(1.0, 2.0).unwrap() },
            ),
        ])
        .unwrap();
        DiagnosticModel::build(compile_rules(&table), kind, EngineSettings::default()).unwrap()
    }

    #[test]
    fn json_round_trip_per_family() {
        for kind in FamilyKind::ALL {
            let m = model(kind);
            let text = m.to_json().unwrap();
            assert!(text.contains(RULEBASE_SCHEMA));
            assert!(text.contains(&format!("\"kind\": \"{kind}\"")));
            assert_eq!(DiagnosticModel::from_json(&text).unwrap(), m);
        }
    }

    #[test]
    fn malformed_files_are_schema_errors() {
        let text = model(FamilyKind::Triangular).to_json().unwrap();
        for bad in [
            text.replace(RULEBASE_SCHEMA, "ittflm-rulebase/0"),
            text.replace("\"iv\": \"Iv1\"", "\"iv\": \"Iv9\""),
            text.replace("\"kind\": \"triangular\"", "\"kind\": \"gaussian\""),
            "not json".to_string(),
        ] {
            assert!(matches!(DiagnosticModel::from_json(&bad), Err(Error::Schema(_))), "{bad}");
        }
    }
}
