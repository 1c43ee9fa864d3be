//! JSON views of traces and reports. Atom sets are arrays of names in canonical order.

use defkernel_core::induction::InductionTrace;
use defkernel_core::order::{Classification, OrderReport, Witness};
use defkernel_core::safety::SafetyReport;
use defkernel_core::{AtomSet, Problem};
use serde_json::{json, Value};

fn names(problem: &Problem, set: &AtomSet) -> Value {
    json!(problem.names(set))
}

/// `{"stages": [[...], ...], "terminal": bool}`; each stage lists the atoms added at that stage.
pub fn trace(problem: &Problem, trace: &InductionTrace) -> Value {
    let mut stages = vec![names(problem, trace.start())];
    for i in 0..trace.steps() {
        stages.push(names(problem, &trace.derived_at(i)));
    }
    json!({ "stages": stages, "terminal": trace.is_terminal(problem) })
}

pub fn report(problem: &Problem, r: &SafetyReport) -> Value {
    json!({
        "true": names(problem, &r.defined_true),
        "false": names(problem, &r.defined_false),
        "undecided": names(problem, &r.undecided),
        "saturated": r.saturated,
        "fixpoint": r.is_fixpoint,
        "minimal": r.minimal_fixpoint,
        "unique": r.unique_fixpoint,
    })
}

pub fn witness(problem: &Problem, w: &Option<Witness>) -> Value {
    match w {
        None => Value::Null,
        Some(w) => json!({
            "atom": problem.name(w.atom),
            "a": names(problem, &w.a),
            "b": names(problem, &w.b),
        }),
    }
}

pub fn order_report(problem: &Problem, r: &OrderReport) -> Value {
    json!({
        "transitive": r.transitive,
        "irreflexive": r.irreflexive,
        "asymmetric": r.asymmetric,
        "strict_part_well_founded": r.strict_part_well_founded,
        "cycle": r.cycle.as_ref().map(|c| c.iter().map(|&a| problem.name(a)).collect::<Vec<_>>()),
        "is_dependency": r.is_dependency,
        "dependency_witness": witness(problem, &r.dependency_witness),
        "is_monotone_dependency": r.is_monotone_dependency,
        "monotone_witness": witness(problem, &r.monotone_witness),
        "strictly_orders": r.strictly_orders,
        "monotonically_orders": r.monotonically_orders,
    })
}

pub fn classification(problem: &Problem, c: &Classification) -> Value {
    json!({
        "positive": c.positive,
        "monotone": c.monotone,
        "monotone_witness": witness(problem, &c.monotone_witness),
        "declared": c.declared.as_ref().map(|r| order_report(problem, r)),
        "ordered": c.ordered,
        "iterated": c.iterated,
        "uncertified": c.uncertified,
    })
}
