use std::fmt;

use super::error::ParseError;

/// 1-based line and column (columns count characters).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl Pos {
    pub const START: Pos = Pos { line: 1, column: 1 };
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Number(String),
    Universe,
    Process,
    Let,
    Assert,
    Omega,
    Top,
    Bot,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Colon,
    Semi,
    Comma,
    Assign,
    ValueEq,
    SupportEq,
    Refines,
    Star,
    Plus,
    Amp,
    Bar,
    Minus,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) | Tok::Number(s) => return write!(f, "`{s}`"),
            Tok::Universe => "universe",
            Tok::Process => "process",
            Tok::Let => "let",
            Tok::Assert => "assert",
            Tok::Omega => "OMEGA",
            Tok::Top => "TOP",
            Tok::Bot => "BOT",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Colon => ":",
            Tok::Semi => ";",
            Tok::Comma => ",",
            Tok::Assign => "=",
            Tok::ValueEq => "==",
            Tok::SupportEq => "~=",
            Tok::Refines => "<=",
            Tok::Star => "*",
            Tok::Plus => "+",
            Tok::Amp => "&",
            Tok::Bar => "|",
            Tok::Minus => "-",
            Tok::Eof => return f.write_str("end of input"),
        };
        write!(f, "`{s}`")
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

fn keyword(word: &str) -> Option<Tok> {
    Some(match word {
        "universe" => Tok::Universe,
        "process" => Tok::Process,
        "let" => Tok::Let,
        "assert" => Tok::Assert,
        "OMEGA" => Tok::Omega,
        "TOP" => Tok::Top,
        "BOT" => Tok::Bot,
        _ => return None,
    })
}

/// Splits `text` into tokens, always ending with `Eof`.
///
/// The `Eof` token sits on the last character of the last real token, so an
/// expression cut short points at its dangling operator.
pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut column) = (0, 1, 1);
    let mut last_end = Pos::START;

    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column };
        let advance = |n: usize, column: &mut usize, i: &mut usize| {
            *i += n;
            *column += n;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                column = 1;
                continue;
            }
            c if c.is_whitespace() => {
                advance(1, &mut column, &mut i);
                continue;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    advance(1, &mut column, &mut i);
                }
                continue;
            }
            _ => {}
        }

        let (tok, len) = if c.is_ascii_alphabetic() || c == '_' {
            let len = chars[i..]
                .iter()
                .take_while(|c| c.is_ascii_alphanumeric() || **c == '_')
                .count();
            let word: String = chars[i..i + len].iter().collect();
            (keyword(&word).unwrap_or(Tok::Ident(word)), len)
        } else if c.is_ascii_digit() {
            let len = number_len(&chars[i..]).ok_or_else(|| {
                let bad: String = chars[i..].iter().take_while(|c| c.is_ascii_alphanumeric() || matches!(c, '.' | '/')).collect();
                ParseError::new(pos, format!("`{bad}`"), ["number"])
            })?;
            (Tok::Number(chars[i..i + len].iter().collect()), len)
        } else {
            let next = chars.get(i + 1).copied();
            match (c, next) {
                ('=', Some('=')) => (Tok::ValueEq, 2),
                ('~', Some('=')) => (Tok::SupportEq, 2),
                ('<', Some('=')) => (Tok::Refines, 2),
                ('=', _) => (Tok::Assign, 1),
                ('{', _) => (Tok::LBrace, 1),
                ('}', _) => (Tok::RBrace, 1),
                ('(', _) => (Tok::LParen, 1),
                (')', _) => (Tok::RParen, 1),
                (':', _) => (Tok::Colon, 1),
                (';', _) => (Tok::Semi, 1),
                (',', _) => (Tok::Comma, 1),
                ('*', _) => (Tok::Star, 1),
                ('+', _) => (Tok::Plus, 1),
                ('&', _) => (Tok::Amp, 1),
                ('|', _) => (Tok::Bar, 1),
                ('-', _) => (Tok::Minus, 1),
                _ => {
                    return Err(ParseError::new(pos, format!("`{c}`"), Vec::<String>::new()));
                }
            }
        };
        out.push(Token { tok, pos });
        last_end = Pos { line, column: column + len - 1 };
        advance(len, &mut column, &mut i);
    }
    out.push(Token { tok: Tok::Eof, pos: last_end });
    Ok(out)
}

/// Length of `digits [ "." digits ] [ "/" digits ]`, or `None` if a `.` or
/// `/` is not followed by a digit.
fn number_len(chars: &[char]) -> Option<usize> {
    let digits = |from: usize| chars[from..].iter().take_while(|c| c.is_ascii_digit()).count();
    let mut len = digits(0);
    for sep in ['.', '/'] {
        if chars.get(len) == Some(&sep) {
            let more = digits(len + 1);
            if more == 0 {
                return None;
            }
            len += 1 + more;
        }
    }
    if chars.get(len).is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_' || *c == '.' || *c == '/') {
        return None;
    }
    Some(len)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn basic_tokens() {
        assert_eq!(
            toks("let r = -p*q # comment\n"),
            [
                Tok::Let,
                Tok::Ident("r".into()),
                Tok::Assign,
                Tok::Minus,
                Tok::Ident("p".into()),
                Tok::Star,
                Tok::Ident("q".into()),
                Tok::Eof
            ]
        );
        assert_eq!(toks("a<=b ~= c==d")[1], Tok::Refines);
        assert_eq!(toks("4/5 0.25 1")[..3], [Tok::Number("4/5".into()), Tok::Number("0.25".into()), Tok::Number("1".into())]);
    }

    #[test]
    fn positions_and_eof() {
        let t = tokenize("universe a\r\n  process").unwrap();
        assert_eq!(t[2].pos, Pos { line: 2, column: 3 });
        assert_eq!(t[3].pos, Pos { line: 2, column: 9 });
        let t = tokenize("let r = p *").unwrap();
        assert_eq!(t.last().unwrap().pos, Pos { line: 1, column: 11 });
    }

    #[test]
    fn bad_characters_and_numbers() {
        let e = tokenize("a ? b").unwrap_err();
        assert_eq!((e.line, e.column), (1, 3));
        let e = tokenize("x = 1/").unwrap_err();
        assert_eq!((e.line, e.column), (1, 5));
        assert!(tokenize("x = 1.2.3").is_err());
        assert!(tokenize("x = 12ab").is_err());
    }
}
