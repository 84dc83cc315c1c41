//! A small text language for declaring a universe and processes, binding
//! operator expressions, and asserting identities between them.

mod ast;
mod error;
mod eval;
mod format;
mod lexer;
mod parser;

pub use ast::{Assertion, Expr, LetBinding, Member, ProcessDef, Relation, Script, Statement};
pub use error::{ParseError, ScriptError};
pub use eval::{channels_json, evaluate, evaluate_env, AssertionOutcome, Env, EvalReport};
pub use format::{format_process, format_script, format_universe};
pub use lexer::Pos;
pub use parser::{parse_expression, parse_script};
