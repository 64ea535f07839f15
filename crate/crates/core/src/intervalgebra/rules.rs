use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::state::MachineState;
use crate::vibdata::StateIntervalTable;

use super::iic::{detect_overlaps, reduce_iic, OverlapReport, Reduction};
use super::interval::Interval;
use super::truth_table::{build_truth_table, TruthTable};

/// A linguistic term: a labelled interval on one input variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub id: String,
    pub interval: Interval,
}

/// `if x_v is v_term and x_g is g_term then consequent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FuzzyRule {
    /// Index into [`RuleBase::v_terms`].
    pub v_term: usize,
    /// Index into [`RuleBase::g_terms`].
    pub g_term: usize,
    pub consequent: MachineState,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RuleBase {
    v_terms: Vec<Term>,
    g_terms: Vec<Term>,
    rules: Vec<FuzzyRule>,
}

impl RuleBase {
    pub fn new(v_terms: Vec<Term>, g_terms: Vec<Term>, rules: Vec<FuzzyRule>) -> Result<Self> {
        if rules.is_empty() {
            return Err(Error::invalid("rule base has no rules"));
        }
        for terms in [&v_terms, &g_terms] {
            let mut ids = HashSet::new();
            if let Some(dup) = terms.iter().find(|t| !ids.insert(t.id.as_str())) {
                return Err(Error::invalid(format!("duplicate term id {}", dup.id)));
            }
        }
        let mut seen = HashSet::new();
        for rule in &rules {
            if rule.v_term >= v_terms.len() || rule.g_term >= g_terms.len() {
                return Err(Error::invalid(format!("rule {rule:?} references a missing term")));
            }
            if !seen.insert(*rule) {
                return Err(Error::invalid(format!("duplicate rule {rule:?}")));
            }
        }
        Ok(RuleBase { v_terms, g_terms, rules })
    }

    pub fn v_terms(&self) -> &[Term] {
        &self.v_terms
    }

    pub fn g_terms(&self) -> &[Term] {
        &self.g_terms
    }

    pub fn rules(&self) -> &[FuzzyRule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn v_id(&self, rule: &FuzzyRule) -> &str {
        &self.v_terms[rule.v_term].id
    }

    pub fn g_id(&self, rule: &FuzzyRule) -> &str {
        &self.g_terms[rule.g_term].id
    }
}

impl fmt::Display for RuleBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, rule) in self.rules.iter().enumerate() {
            writeln!(
                f,
                "{:>3}  if x_v is {} and x_g is {} then {}",
                k + 1,
                self.v_id(rule),
                self.g_id(rule),
                rule.consequent.name()
            )?;
        }
        Ok(())
    }
}

/// Everything produced while compiling a table, kept for reporting.
#[derive(Debug, Clone)]
pub struct Compilation {
    pub rule_base: RuleBase,
    pub truth_table: TruthTable,
    pub states: Vec<MachineState>,
    pub v_reduction: Reduction,
    pub g_reduction: Reduction,
    pub v_overlaps: OverlapReport,
    pub g_overlaps: OverlapReport,
}

impl Compilation {
    /// Text listing of detected inclusions and intersections.
    pub fn diagnostics(&self) -> String {
        let mut out = String::new();
        for (axis, report) in [("v", &self.v_overlaps), ("g", &self.g_overlaps)] {
            let label = |i: usize| format!("I{axis}{}", self.states[i].severity() + 1);
            if report.is_disjoint() {
                out.push_str(&format!("I_{axis}: no inclusions detected, no intersections detected\n"));
                continue;
            }
            if report.inclusions.is_empty() {
                out.push_str(&format!("I_{axis}: no inclusions detected\n"));
            }
            for &(a, b) in &report.inclusions {
                out.push_str(&format!("I_{axis}: inclusion {} ⊆ {}\n", label(a), label(b)));
            }
            for &(a, b) in &report.intersections {
                out.push_str(&format!("I_{axis}: intersection {} ∩ {}\n", label(a), label(b)));
            }
        }
        out
    }
}

/// Compiles an interval table into a minimized rule base.
pub fn compile_rules(table: &StateIntervalTable) -> RuleBase {
    compile(table).rule_base
}

/// Truth table, inclusion reduction on each axis, then one rule per state.
pub fn compile(table: &StateIntervalTable) -> Compilation {
    let states: Vec<MachineState> = table.states().collect();
    let iv: Vec<Interval> = table.rows().map(|(_, r)| r.iv).collect();
    let ig: Vec<Interval> = table.rows().map(|(_, r)| r.ig).collect();

    let truth_table = build_truth_table(table);
    let v_reduction = reduce_iic(&iv);
    let g_reduction = reduce_iic(&ig);

    let terms = |axis: &str, set: &[Interval], red: &Reduction| -> Vec<Term> {
        red.survivors
            .iter()
            .map(|&i| Term { id: format!("I{axis}{}", states[i].severity() + 1), interval: set[i] })
            .collect()
    };
    let v_terms = terms("v", &iv, &v_reduction);
    let g_terms = terms("g", &ig, &g_reduction);
    let position =
        |red: &Reduction, i: usize| red.survivors.binary_search(&red.remap[i]).expect("remap targets a survivor");

    let mut rules: Vec<FuzzyRule> = truth_table
        .rows
        .iter()
        .filter_map(|row| {
            let s = row.consequent()?;
            Some(FuzzyRule {
                v_term: position(&v_reduction, row.iv_index),
                g_term: position(&g_reduction, row.ig_index),
                consequent: states[s],
            })
        })
        .collect();
    rules.sort_by_key(|r| r.consequent);

    let rule_base = RuleBase::new(v_terms, g_terms, rules).expect("compiled rule base is well formed");
    Compilation {
        rule_base,
        truth_table,
        states,
        v_reduction,
        g_reduction,
        v_overlaps: detect_overlaps(&iv),
        g_overlaps: detect_overlaps(&ig),
    }
}
