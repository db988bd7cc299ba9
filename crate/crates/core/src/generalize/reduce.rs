use crate::logic::{clause_order, theta_subsumes, Clause, HornProgram};
use crate::semantics::{least_model_bounded, SemanticsError};

/// Removes clauses θ-subsumed by another remaining clause and ground facts
/// derivable (within `depth_bound`) from the rest, largest clauses first,
/// until nothing more can go.
pub fn reduce_program(p: &HornProgram, depth_bound: usize) -> Result<HornProgram, SemanticsError> {
    let mut current = p.clone();
    'outer: loop {
        let mut order: Vec<&Clause> = current.clauses().collect();
        order.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| clause_order(a, b)));
        for c in order {
            let rest = current.without(c);
            let subsumed = rest.clauses().any(|d| theta_subsumes(d, c).is_some());
            let derivable = !subsumed
                && c.is_fact()
                && least_model_bounded(&rest, depth_bound)?.contains(c.head().unwrap());
            if subsumed || derivable {
                log::debug!("reduce: dropping {c}");
                current = rest;
                continue 'outer;
            }
        }
        return Ok(current);
    }
}
