//! Tokenizer for the field expression language.

use super::{ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq)]
pub enum Token {
    Number(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

impl Token {
    pub fn describe(&self) -> String {
        match self {
            Token::Number(v) => format!("number `{v:?}`"),
            Token::Ident(s) => format!("identifier `{s}`"),
            Token::Plus => "`+`".into(),
            Token::Minus => "`-`".into(),
            Token::Star => "`*`".into(),
            Token::Slash => "`/`".into(),
            Token::Caret => "`^`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::Comma => "`,`".into(),
            Token::End => "end of input".into(),
        }
    }
}

/// A token plus the byte offset where it starts.
#[derive(Debug, Clone, PartialEq)]
pub struct Spanned {
    pub token: Token,
    pub offset: usize,
}

pub fn tokenize(source: &str) -> Result<Vec<Spanned>, ParseError> {
    let bytes = source.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' => {
                out.push(Spanned {
                    token: Token::Plus,
                    offset: i,
                });
                i += 1;
            }
            b'-' => {
                out.push(Spanned {
                    token: Token::Minus,
                    offset: i,
                });
                i += 1;
            }
            b'*' => {
                out.push(Spanned {
                    token: Token::Star,
                    offset: i,
                });
                i += 1;
            }
            b'/' => {
                out.push(Spanned {
                    token: Token::Slash,
                    offset: i,
                });
                i += 1;
            }
            b'^' => {
                out.push(Spanned {
                    token: Token::Caret,
                    offset: i,
                });
                i += 1;
            }
            b'(' => {
                out.push(Spanned {
                    token: Token::LParen,
                    offset: i,
                });
                i += 1;
            }
            b')' => {
                out.push(Spanned {
                    token: Token::RParen,
                    offset: i,
                });
                i += 1;
            }
            b',' => {
                out.push(Spanned {
                    token: Token::Comma,
                    offset: i,
                });
                i += 1;
            }
            b'0'..=b'9' => {
                let (value, len) = lex_number(source, i)?;
                out.push(Spanned {
                    token: Token::Number(value),
                    offset: i,
                });
                i += len;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Spanned {
                    token: Token::Ident(source[start..i].to_string()),
                    offset: start,
                });
            }
            _ => {
                return Err(ParseError {
                    offset: i,
                    kind: ParseErrorKind::InvalidCharacter {
                        found: source[i..].chars().next().unwrap_or('?'),
                    },
                })
            }
        }
    }
    out.push(Spanned {
        token: Token::End,
        offset: bytes.len(),
    });
    Ok(out)
}

// digits [ '.' digits ] [ ('e'|'E') ['+'|'-'] digits ]
fn lex_number(source: &str, start: usize) -> Result<(f64, usize), ParseError> {
    let bytes = source.as_bytes();
    let mut i = start;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    if i < bytes.len() && bytes[i] == b'.' {
        i += 1;
        if i >= bytes.len() || !bytes[i].is_ascii_digit() {
            return Err(ParseError {
                offset: i,
                kind: ParseErrorKind::MalformedNumber,
            });
        }
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
    }
    if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
        let mut j = i + 1;
        if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
            j += 1;
        }
        if j < bytes.len() && bytes[j].is_ascii_digit() {
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            i = j;
        }
        // a bare trailing 'e' is left for the identifier lexer ("2e" is "2" then "e")
    }
    let text = &source[start..i];
    let value: f64 = text.parse().map_err(|_| ParseError {
        offset: start,
        kind: ParseErrorKind::MalformedNumber,
    })?;
    if !value.is_finite() {
        return Err(ParseError {
            offset: start,
            kind: ParseErrorKind::LiteralOverflow {
                text: text.to_string(),
            },
        });
    }
    Ok((value, i - start))
}
