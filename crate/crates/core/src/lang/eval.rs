use std::collections::HashMap;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use super::ast::{Assertion, Expr, Member, Relation, Script, Statement};
use super::error::ScriptError;
use super::lexer::Pos;
use crate::error::Error;
use crate::grade::MembershipGrade;
use crate::process::{
    constant, first_difference, make_process, refinement_failure, BlockingPolicy, EqualityMode, FuzzyProcess,
};
use crate::universe::Universe;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssertionOutcome {
    /// 1-based position among the script's assertions.
    pub index: usize,
    pub line: usize,
    pub relation: Option<Relation>,
    pub holds: bool,
    /// First label, in universe order, where the assertion fails.
    pub witness: Option<String>,
}

#[derive(Debug, Clone)]
pub struct EvalReport {
    pub universe: Universe,
    /// Every `process` and `let` binding in definition order.
    pub bindings: Vec<(String, FuzzyProcess)>,
    pub assertions: Vec<AssertionOutcome>,
}

impl EvalReport {
    pub fn binding(&self, name: &str) -> Option<&FuzzyProcess> {
        self.bindings.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    pub fn all_hold(&self) -> bool {
        self.assertions.iter().all(|a| a.holds)
    }
}

/// Evaluation environment: the script's universe plus everything bound so far.
#[derive(Debug, Clone)]
pub struct Env {
    universe: Universe,
    values: HashMap<String, FuzzyProcess>,
}

impl Env {
    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn eval(&self, expr: &Expr) -> crate::error::Result<FuzzyProcess> {
        Ok(match expr {
            Expr::Var(name) => self
                .values
                .get(name)
                .cloned()
                .expect("identifiers are resolved by the parser"),
            Expr::Const(kind) => constant(*kind, &self.universe),
            Expr::Reflect(inner) => crate::algebra::reflect(&self.eval(inner)?),
            Expr::Binary(op, lhs, rhs) => op.apply(&self.eval(lhs)?, &self.eval(rhs)?)?,
        })
    }
}

fn build_process(universe: &Universe, delta: &[Member], gamma: &[Member]) -> Result<FuzzyProcess, (Pos, Error)> {
    let grades = |members: &[Member]| -> Result<Vec<(String, MembershipGrade)>, (Pos, Error)> {
        members
            .iter()
            .map(|m| {
                MembershipGrade::from_ratio(m.grade)
                    .map(|g| (m.label.clone(), g))
                    .map_err(|e| (m.pos, e))
            })
            .collect()
    };
    let (d, g) = (grades(delta)?, grades(gamma)?);
    // report label problems at the offending member
    for m in delta.iter().chain(gamma) {
        if !universe.contains(&m.label) {
            return Err((m.pos, Error::UnknownLabel(m.label.clone())));
        }
    }
    for members in [delta, gamma] {
        for (i, m) in members.iter().enumerate() {
            if members[..i].iter().any(|prev| prev.label == m.label) {
                return Err((m.pos, Error::DuplicateLabel(m.label.clone())));
            }
        }
    }
    make_process(universe, &d, &g, BlockingPolicy::Strict).map_err(|e| (Pos::START, e))
}

fn check(env: &Env, a: &Assertion) -> crate::error::Result<(bool, Option<String>)> {
    let lhs = env.eval(&a.lhs)?;
    let failure = match &a.check {
        None => lhs.first_blocking().map(str::to_string),
        Some((rel, rhs)) => {
            let rhs = env.eval(rhs)?;
            let at = match rel {
                Relation::ValueEq => first_difference(&lhs, &rhs, EqualityMode::ValueLevel)?,
                Relation::SupportEq => first_difference(&lhs, &rhs, EqualityMode::SupportLevel)?,
                Relation::Refines => refinement_failure(&lhs, &rhs)?,
            };
            at.map(|i| env.universe.label(i).to_string())
        }
    };
    Ok((failure.is_none(), failure))
}

/// Runs a script top to bottom. Failed assertions are recorded and
/// evaluation continues; construction and operator errors abort.
pub fn evaluate(script: &Script) -> Result<EvalReport, ScriptError> {
    Ok(evaluate_env(script)?.0)
}

/// [`evaluate`], also returning the final environment for further queries.
pub fn evaluate_env(script: &Script) -> Result<(EvalReport, Env), ScriptError> {
    let universe = match script.statements.first() {
        Some(Statement::Universe(labels)) => Universe::new(labels.iter().cloned())
            .map_err(|source| ScriptError::Eval { pos: Pos::START, source })?,
        _ => return Err(ScriptError::MissingUniverse),
    };
    let mut env = Env { universe: universe.clone(), values: HashMap::new() };
    let mut bindings = Vec::new();
    let mut assertions = Vec::new();

    for stmt in &script.statements[1..] {
        match stmt {
            Statement::Universe(_) => {
                return Err(ScriptError::DuplicateDefinition { name: "universe".into(), pos: Pos::START })
            }
            Statement::Process(def) => {
                let p = build_process(&universe, &def.delta, &def.gamma).map_err(|(pos, source)| {
                    let pos = if pos == Pos::START { def.pos } else { pos };
                    ScriptError::Eval { pos, source }
                })?;
                env.values.insert(def.name.clone(), p.clone());
                bindings.push((def.name.clone(), p));
            }
            Statement::Let(binding) => {
                let p = env
                    .eval(&binding.expr)
                    .map_err(|source| ScriptError::Eval { pos: binding.pos, source })?;
                env.values.insert(binding.name.clone(), p.clone());
                bindings.push((binding.name.clone(), p));
            }
            Statement::Assert(a) => {
                let (holds, witness) = check(&env, a).map_err(|source| ScriptError::Eval { pos: a.pos, source })?;
                assertions.push(AssertionOutcome {
                    index: assertions.len() + 1,
                    line: a.pos.line,
                    relation: a.check.as_ref().map(|(r, _)| *r),
                    holds,
                    witness,
                });
            }
        }
    }
    Ok((EvalReport { universe, bindings, assertions }, env))
}

/// `{"delta": {...}, "gamma": {...}}` without the universe.
struct Channels<'a>(&'a FuzzyProcess);

impl Serialize for Channels<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Channels", 2)?;
        s.serialize_field("delta", self.0.delta())?;
        s.serialize_field("gamma", self.0.gamma())?;
        s.end()
    }
}

struct Bindings<'a>(&'a [(String, FuzzyProcess)]);

impl Serialize for Bindings<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (name, p) in self.0 {
            map.serialize_entry(name, &Channels(p))?;
        }
        map.end()
    }
}

impl Serialize for AssertionOutcome {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("AssertionOutcome", 4)?;
        s.serialize_field("index", &self.index)?;
        s.serialize_field("relation", &self.relation.map(Relation::symbol))?;
        s.serialize_field("holds", &self.holds)?;
        s.serialize_field("witness", &self.witness)?;
        s.end()
    }
}

impl Serialize for EvalReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("EvalReport", 3)?;
        s.serialize_field("universe", self.universe.labels())?;
        s.serialize_field("bindings", &Bindings(&self.bindings))?;
        s.serialize_field("assertions", &self.assertions)?;
        s.end()
    }
}

/// A process rendered as `{"delta": ..., "gamma": ...}`.
pub fn channels_json(p: &FuzzyProcess) -> serde_json::Value {
    serde_json::to_value(Channels(p)).expect("channel maps serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::parse_script;

    const FIXTURES: &str = "universe a b c
process p { delta: {a=4/5, b=1/2}; gamma: {a=2/5, c=7/10}; }
process q { delta: {a=3/5, c=9/10}; gamma: {a=1, b=3/10}; }
";

    fn run(extra: &str) -> Result<EvalReport, ScriptError> {
        evaluate(&parse_script(&format!("{FIXTURES}{extra}")).unwrap())
    }

    #[test]
    fn de_morgan_holds() {
        let r = run("assert -(p * q) == -p + -q\nlet lhs = -(p * q)").unwrap();
        assert!(r.all_hold());
        let lhs = r.binding("lhs").unwrap();
        assert_eq!(lhs.delta().iter().map(|(l, g)| format!("{l}={g}")).collect::<Vec<_>>(), ["a=2/5", "b=3/10", "c=7/10"]);
        assert_eq!(lhs.gamma().iter().map(|(l, g)| format!("{l}={g}")).collect::<Vec<_>>(), ["a=3/5"]);
    }

    #[test]
    fn identity_holds_and_refinement_fails_at_c() {
        let r = run("assert p * OMEGA == p\nassert p <= q\nassert p * TOP ~= TOP\nassert p * TOP == TOP\nassert p").unwrap();
        let got: Vec<_> = r.assertions.iter().map(|a| (a.index, a.holds, a.witness.clone())).collect();
        assert_eq!(
            got,
            [
                (1, true, None),
                (2, false, Some("c".to_string())),
                (3, true, None),
                (4, false, Some("a".to_string())),
                (5, true, None),
            ]
        );
        assert_eq!(r.assertions[4].relation, None);
    }

    #[test]
    fn construction_errors_carry_positions() {
        let e = evaluate(&parse_script("universe a b\nprocess p { delta: {a=1}; gamma: {}; }").unwrap()).unwrap_err();
        assert_eq!(e, ScriptError::Eval { pos: Pos { line: 2, column: 1 }, source: Error::BlockingViolation("b".into()) });
        let e = evaluate(&parse_script("universe a\nprocess p { delta: {a=3/2}; gamma: {}; }").unwrap()).unwrap_err();
        assert!(matches!(e, ScriptError::Eval { source: Error::GradeOutOfRange(_), pos } if pos.column == 21));
        let e = evaluate(&parse_script("universe a\nprocess p { delta: {a=1, z=1}; gamma: {}; }").unwrap()).unwrap_err();
        assert!(matches!(e, ScriptError::Eval { source: Error::UnknownLabel(_), .. }));
        let e = evaluate(&parse_script("universe a\nprocess p { delta: {a=1, a=1/2}; gamma: {}; }").unwrap()).unwrap_err();
        assert!(matches!(e, ScriptError::Eval { source: Error::DuplicateLabel(_), .. }));
    }

    #[test]
    fn json_shape() {
        let r = run("assert p <= q").unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["universe"], serde_json::json!(["a", "b", "c"]));
        assert_eq!(v["bindings"]["p"]["delta"], serde_json::json!({"a": "4/5", "b": "1/2"}));
        assert_eq!(
            v["assertions"][0],
            serde_json::json!({"index": 1, "relation": "<=", "holds": false, "witness": "c"})
        );
    }

    #[test]
    fn deterministic() {
        let a = serde_json::to_string(&run("let r = p & q | -p\nassert r <= p").unwrap()).unwrap();
        let b = serde_json::to_string(&run("let r = p & q | -p\nassert r <= p").unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
