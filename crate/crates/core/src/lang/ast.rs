use std::fmt;

use num_rational::Ratio;

use super::lexer::Pos;
use crate::algebra::BinaryOp;
use crate::process::Constant;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Var(String),
    Const(Constant),
    Reflect(Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    pub fn reflect(e: Expr) -> Expr {
        Expr::Reflect(Box::new(e))
    }

    pub fn binary(op: BinaryOp, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Binary(op, Box::new(lhs), Box::new(rhs))
    }
}

/// Fully parenthesized binary nodes, so the printed form shows the parse.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(name) => f.write_str(name),
            Expr::Const(Constant::Omega) => f.write_str("OMEGA"),
            Expr::Const(Constant::Top) => f.write_str("TOP"),
            Expr::Const(Constant::Bottom) => f.write_str("BOT"),
            Expr::Reflect(inner) => write!(f, "-{inner}"),
            Expr::Binary(op, lhs, rhs) => write!(f, "({lhs} {} {rhs})", op.symbol()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `==`
    ValueEq,
    /// `~=`
    SupportEq,
    /// `<=`
    Refines,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::ValueEq => "==",
            Relation::SupportEq => "~=",
            Relation::Refines => "<=",
        }
    }
}

/// One `(label, grade)` entry of a membership literal. The grade is kept as
/// written; range checks happen at evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Member {
    pub label: String,
    pub grade: Ratio<u64>,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcessDef {
    pub name: String,
    pub delta: Vec<Member>,
    pub gamma: Vec<Member>,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetBinding {
    pub name: String,
    pub expr: Expr,
    pub pos: Pos,
}

/// `assert lhs [relation rhs]`. Without a relation the assertion only
/// requires `lhs` to evaluate to a blocking-free process.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assertion {
    pub lhs: Expr,
    pub check: Option<(Relation, Expr)>,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Universe(Vec<String>),
    Process(ProcessDef),
    Let(LetBinding),
    Assert(Assertion),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Script {
    pub statements: Vec<Statement>,
}

impl Script {
    /// Labels of the universe declaration (always the first statement).
    pub fn universe_labels(&self) -> &[String] {
        match self.statements.first() {
            Some(Statement::Universe(labels)) => labels,
            _ => &[],
        }
    }

    /// Names bound by `process` and `let`, in definition order.
    pub fn defined_names(&self) -> impl Iterator<Item = &str> {
        self.statements.iter().filter_map(|s| match s {
            Statement::Process(p) => Some(p.name.as_str()),
            Statement::Let(l) => Some(l.name.as_str()),
            _ => None,
        })
    }

    pub fn assertions(&self) -> impl Iterator<Item = &Assertion> {
        self.statements.iter().filter_map(|s| match s {
            Statement::Assert(a) => Some(a),
            _ => None,
        })
    }
}
