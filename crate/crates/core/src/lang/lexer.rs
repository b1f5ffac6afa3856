use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;

use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Int(BigUint),
    Ident(String),
    Str(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Eq,
    DotDot,
    Eof,
}

impl Tok {
    /// Rendering used in error messages.
    pub fn describe(&self) -> String {
        match self {
            Tok::Int(n) => n.to_str_radix(10),
            Tok::Ident(s) => s.clone(),
            Tok::Str(s) => alloc::format!("\"{s}\""),
            Tok::Eof => "end of input".into(),
            other => String::from(other.symbol()),
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::Caret => "^",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::Eq => "=",
            Tok::DotDot => "..",
            Tok::Int(_) => "integer",
            Tok::Ident(_) => "identifier",
            Tok::Str(_) => "string",
            Tok::Eof => "end of input",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

/// Splits `src` into tokens; `#` starts a comment running to end of line.
pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let single = |t: Tok| Token { tok: t, line: tl, col: tc };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
                continue;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            '0'..='9' => {
                let s = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[s..i].iter().collect();
                col += i - s;
                let n = BigUint::parse_bytes(text.as_bytes(), 10).expect("digits");
                out.push(Token { tok: Tok::Int(n), line: tl, col: tc });
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let s = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                col += i - s;
                out.push(Token { tok: Tok::Ident(chars[s..i].iter().collect()), line: tl, col: tc });
                continue;
            }
            '"' => {
                let s = i + 1;
                let mut j = s;
                while j < chars.len() && chars[j] != '"' && chars[j] != '\n' {
                    j += 1;
                }
                if j >= chars.len() || chars[j] != '"' {
                    return Err(ParseError::syntax(tl, tc, "unterminated string", &["\""]));
                }
                out.push(Token { tok: Tok::Str(chars[s..j].iter().collect()), line: tl, col: tc });
                col += j + 1 - i;
                i = j + 1;
                continue;
            }
            '.' if chars.get(i + 1) == Some(&'.') => {
                out.push(single(Tok::DotDot));
                i += 2;
                col += 2;
                continue;
            }
            _ => {}
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            '=' => Tok::Eq,
            other => {
                let found = alloc::format!("unexpected character '{other}'");
                return Err(ParseError::syntax(tl, tc, &found, &[]));
            }
        };
        out.push(single(tok));
        i += 1;
        col += 1;
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}
