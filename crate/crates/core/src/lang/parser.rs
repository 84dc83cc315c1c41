//! Recursive-descent parser for process scripts.
//!
//! ```text
//! script  := { stmt }
//! stmt    := "universe" ident { ident }
//!          | "process" ident "{" "delta" ":" memb ";" "gamma" ":" memb ";" "}"
//!          | "let" ident "=" expr
//!          | "assert" expr [ ("==" | "~=" | "<=") expr ]
//! memb    := "{" [ ident "=" number { "," ident "=" number } ] "}"
//! expr    := term { ("+" | "|") term }
//! term    := factor { ("*" | "&") factor }
//! factor  := "-" factor | ident | "OMEGA" | "TOP" | "BOT" | "(" expr ")"
//! ```
//!
//! Identifier resolution happens during parsing: a name must be defined by an
//! earlier statement and may not be redefined.

use std::collections::HashSet;

use super::ast::{Assertion, Expr, LetBinding, Member, ProcessDef, Relation, Script, Statement};
use super::error::{ParseError, ScriptError};
use super::lexer::{tokenize, Pos, Tok, Token};
use crate::algebra::BinaryOp;
use crate::grade::parse_rational;
use crate::process::Constant;

type PResult<T> = Result<T, ScriptError>;

struct Parser {
    tokens: Vec<Token>,
    at: usize,
    /// Descriptions of what would have been accepted at `at`; cleared on advance.
    expected: Vec<&'static str>,
    defined: HashSet<String>,
}

impl Parser {
    fn new(text: &str) -> PResult<Self> {
        Ok(Parser {
            tokens: tokenize(text)?,
            at: 0,
            expected: Vec::new(),
            defined: HashSet::new(),
        })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.at]
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if t.tok != Tok::Eof {
            self.at += 1;
        }
        self.expected.clear();
        t
    }

    /// Consumes the next token if it equals `tok`.
    fn eat(&mut self, tok: Tok, what: &'static str) -> bool {
        if self.peek().tok == tok {
            self.advance();
            true
        } else {
            self.expected.push(what);
            false
        }
    }

    fn error(&mut self) -> ScriptError {
        let t = self.peek().clone();
        let mut expected: Vec<String> = Vec::new();
        for e in self.expected.drain(..) {
            if !expected.iter().any(|x| x == e) {
                expected.push(e.to_string());
            }
        }
        ParseError {
            line: t.pos.line,
            column: t.pos.column,
            found: t.tok.to_string(),
            expected,
        }
        .into()
    }

    fn expect(&mut self, tok: Tok, what: &'static str) -> PResult<Pos> {
        let pos = self.peek().pos;
        if self.eat(tok, what) {
            Ok(pos)
        } else {
            Err(self.error())
        }
    }

    fn ident(&mut self) -> PResult<(String, Pos)> {
        if let Tok::Ident(name) = &self.peek().tok {
            let name = name.clone();
            let pos = self.advance().pos;
            return Ok((name, pos));
        }
        self.expected.push("identifier");
        Err(self.error())
    }

    fn keyword(&mut self, word: &'static str) -> PResult<()> {
        if matches!(&self.peek().tok, Tok::Ident(w) if w == word) {
            self.advance();
            return Ok(());
        }
        self.expected.push(word);
        Err(self.error())
    }

    fn define(&mut self, name: String, pos: Pos) -> PResult<String> {
        if !self.defined.insert(name.clone()) {
            return Err(ScriptError::DuplicateDefinition { name, pos });
        }
        Ok(name)
    }

    fn script(&mut self) -> PResult<Script> {
        let mut statements = Vec::new();
        loop {
            let pos = self.peek().pos;
            let stmt = match self.peek().tok {
                Tok::Eof => break,
                Tok::Universe => self.universe_decl(statements.is_empty(), pos)?,
                _ if statements.is_empty() => {
                    if matches!(self.peek().tok, Tok::Process | Tok::Let | Tok::Assert) {
                        return Err(ScriptError::MissingUniverse);
                    }
                    self.expected.push("universe");
                    return Err(self.error());
                }
                Tok::Process => Statement::Process(self.process_def()?),
                Tok::Let => Statement::Let(self.let_binding()?),
                Tok::Assert => Statement::Assert(self.assertion()?),
                _ => {
                    self.expected.extend(["universe", "process", "let", "assert", "end of input"]);
                    return Err(self.error());
                }
            };
            statements.push(stmt);
        }
        if statements.is_empty() {
            return Err(ScriptError::MissingUniverse);
        }
        Ok(Script { statements })
    }

    fn universe_decl(&mut self, first: bool, pos: Pos) -> PResult<Statement> {
        if !first {
            return Err(ScriptError::DuplicateDefinition { name: "universe".into(), pos });
        }
        self.advance();
        let mut labels = vec![self.ident()?.0];
        while let Tok::Ident(_) = self.peek().tok {
            let (label, pos) = self.ident()?;
            if labels.contains(&label) {
                return Err(ScriptError::DuplicateDefinition { name: label, pos });
            }
            labels.push(label);
        }
        self.expected.push("identifier");
        Ok(Statement::Universe(labels))
    }

    fn process_def(&mut self) -> PResult<ProcessDef> {
        let pos = self.advance().pos;
        let (name, name_pos) = self.ident()?;
        let name = self.define(name, name_pos)?;
        self.expect(Tok::LBrace, "`{`")?;
        self.keyword("delta")?;
        self.expect(Tok::Colon, "`:`")?;
        let delta = self.membership()?;
        self.expect(Tok::Semi, "`;`")?;
        self.keyword("gamma")?;
        self.expect(Tok::Colon, "`:`")?;
        let gamma = self.membership()?;
        self.expect(Tok::Semi, "`;`")?;
        self.expect(Tok::RBrace, "`}`")?;
        Ok(ProcessDef { name, delta, gamma, pos })
    }

    fn membership(&mut self) -> PResult<Vec<Member>> {
        self.expect(Tok::LBrace, "`{`")?;
        let mut members = Vec::new();
        if self.eat(Tok::RBrace, "`}`") {
            return Ok(members);
        }
        loop {
            let (label, pos) = self.ident()?;
            self.expect(Tok::Assign, "`=`")?;
            let grade = self.number()?;
            members.push(Member { label, grade, pos });
            if self.eat(Tok::Comma, "`,`") {
                continue;
            }
            self.expect(Tok::RBrace, "`}`")?;
            return Ok(members);
        }
    }

    fn number(&mut self) -> PResult<num_rational::Ratio<u64>> {
        if let Tok::Number(text) = &self.peek().tok {
            if let Some(value) = parse_rational(text) {
                self.advance();
                return Ok(value);
            }
        }
        self.expected.push("number");
        Err(self.error())
    }

    fn let_binding(&mut self) -> PResult<LetBinding> {
        let pos = self.advance().pos;
        let (name, name_pos) = self.ident()?;
        if self.defined.contains(&name) {
            return Err(ScriptError::DuplicateDefinition { name, pos: name_pos });
        }
        self.expect(Tok::Assign, "`=`")?;
        let expr = self.expr()?;
        let name = self.define(name, name_pos)?;
        Ok(LetBinding { name, expr, pos })
    }

    fn assertion(&mut self) -> PResult<Assertion> {
        let pos = self.advance().pos;
        let lhs = self.expr()?;
        let relation = match self.peek().tok {
            Tok::ValueEq => Some(Relation::ValueEq),
            Tok::SupportEq => Some(Relation::SupportEq),
            Tok::Refines => Some(Relation::Refines),
            _ => {
                self.expected.extend(["`==`", "`~=`", "`<=`"]);
                None
            }
        };
        let check = match relation {
            Some(rel) => {
                self.advance();
                Some((rel, self.expr()?))
            }
            None => None,
        };
        Ok(Assertion { lhs, check, pos })
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().tok {
                Tok::Plus => BinaryOp::Sum,
                Tok::Bar => BinaryOp::Join,
                _ => {
                    self.expected.extend(["`+`", "`|`"]);
                    return Ok(lhs);
                }
            };
            self.advance();
            lhs = Expr::binary(op, lhs, self.term()?);
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek().tok {
                Tok::Star => BinaryOp::Product,
                Tok::Amp => BinaryOp::Meet,
                _ => {
                    self.expected.extend(["`*`", "`&`"]);
                    return Ok(lhs);
                }
            };
            self.advance();
            lhs = Expr::binary(op, lhs, self.factor()?);
        }
    }

    fn factor(&mut self) -> PResult<Expr> {
        let t = self.peek().clone();
        let e = match t.tok {
            Tok::Minus => {
                self.advance();
                return Ok(Expr::reflect(self.factor()?));
            }
            Tok::Ident(name) => {
                if !self.defined.contains(&name) {
                    return Err(ScriptError::UnknownIdentifier { name, pos: t.pos });
                }
                Expr::Var(name)
            }
            Tok::Omega => Expr::Const(Constant::Omega),
            Tok::Top => Expr::Const(Constant::Top),
            Tok::Bot => Expr::Const(Constant::Bottom),
            Tok::LParen => {
                self.advance();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                return Ok(inner);
            }
            _ => {
                self.expected.extend(["`-`", "identifier", "OMEGA", "TOP", "BOT", "`(`"]);
                return Err(self.error());
            }
        };
        self.advance();
        Ok(e)
    }
}

/// Parses a whole script.
pub fn parse_script(text: &str) -> Result<Script, ScriptError> {
    let mut parser = Parser::new(text)?;
    parser.script()
}

/// Parses a single expression whose identifiers must be bound in `script`.
pub fn parse_expression(text: &str, script: &Script) -> Result<Expr, ScriptError> {
    let mut parser = Parser::new(text)?;
    parser.defined = script.defined_names().map(str::to_string).collect();
    let e = parser.expr()?;
    if parser.peek().tok != Tok::Eof {
        parser.expected.push("end of input");
        return Err(parser.error());
    }
    Ok(e)
}
