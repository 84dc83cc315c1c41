use crate::process::{FuzzyProcess, FuzzySubset};
use crate::universe::Universe;

fn members(subset: &FuzzySubset) -> String {
    let parts: Vec<String> = subset.iter().map(|(label, g)| format!("{label}={g}")).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Canonical one-line `process` statement: labels in universe order, grades
/// as reduced fractions, zero grades omitted.
pub fn format_process(name: &str, p: &FuzzyProcess) -> String {
    format!(
        "process {name} {{ delta: {}; gamma: {}; }}",
        members(p.delta()),
        members(p.gamma())
    )
}

pub fn format_universe(universe: &Universe) -> String {
    format!("universe {}", universe.labels().join(" "))
}

/// A complete script declaring `p`'s universe and `p` itself.
pub fn format_script(name: &str, p: &FuzzyProcess) -> String {
    format!("{}\n{}\n", format_universe(p.universe()), format_process(name, p))
}
