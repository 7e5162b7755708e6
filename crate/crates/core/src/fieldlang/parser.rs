//! Recursive-descent parser.
//!
//! Grammar (LL(1), `^` binds tightest and is right-associative, unary minus
//! sits between `^` and `*`/`/`):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' unary)?
//! atom    := number | 'pi' | 'e' | variable | function '(' args ')' | '(' expr ')'
//! args    := expr (',' expr)*
//! ```
//!
//! Variables are `x0 … x{D-1}` for the dimension `D` supplied at parse time.

use super::lexer::{tokenize, Spanned, Token};
use super::{BinaryOp, Function, Node, ParseError, ParseErrorKind};

pub struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    dimension: usize,
}

impl Parser {
    pub fn new(source: &str, dimension: usize) -> Result<Self, ParseError> {
        Ok(Self {
            tokens: tokenize(source)?,
            pos: 0,
            dimension,
        })
    }

    pub fn parse(mut self) -> Result<Node, ParseError> {
        let node = self.expr()?;
        let current = self.current().clone();
        match current.token {
            Token::End => Ok(node),
            _ => Err(self.unexpected(
                &current,
                &["`+`", "`-`", "`*`", "`/`", "`^`", "end of input"],
            )),
        }
    }

    fn current(&self) -> &Spanned {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let s = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        s
    }

    fn unexpected(&self, at: &Spanned, expected: &[&str]) -> ParseError {
        ParseError {
            offset: at.offset,
            kind: ParseErrorKind::UnexpectedToken {
                found: at.token.describe(),
                expected: expected.iter().map(|s| s.to_string()).collect(),
            },
        }
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let mut node = self.term()?;
        loop {
            match self.current().token {
                Token::Plus => {
                    self.bump();
                    let rhs = self.term()?;
                    node = Node::Binary(BinaryOp::Add, Box::new(node), Box::new(rhs));
                }
                Token::Minus => {
                    self.bump();
                    let rhs = self.term()?;
                    node = Node::Binary(BinaryOp::Sub, Box::new(node), Box::new(rhs));
                }
                _ => return Ok(node),
            }
        }
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut node = self.unary()?;
        loop {
            match self.current().token {
                Token::Star => {
                    self.bump();
                    let rhs = self.unary()?;
                    node = Node::Binary(BinaryOp::Mul, Box::new(node), Box::new(rhs));
                }
                Token::Slash => {
                    self.bump();
                    let rhs = self.unary()?;
                    node = Node::Binary(BinaryOp::Div, Box::new(node), Box::new(rhs));
                }
                _ => return Ok(node),
            }
        }
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        if self.current().token == Token::Minus {
            self.bump();
            let inner = self.unary()?;
            return Ok(Node::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.atom()?;
        if self.current().token == Token::Caret {
            self.bump();
            // right-associative; the exponent may carry a unary minus
            let exponent = self.unary()?;
            return Ok(Node::Binary(
                BinaryOp::Pow,
                Box::new(base),
                Box::new(exponent),
            ));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        let current = self.current().clone();
        match &current.token {
            Token::Number(v) => {
                self.bump();
                Ok(Node::Literal(*v))
            }
            Token::LParen => {
                self.bump();
                let inner = self.expr()?;
                let next = self.current().clone();
                if next.token != Token::RParen {
                    return Err(self.unexpected(&next, &["`)`"]));
                }
                self.bump();
                Ok(inner)
            }
            Token::Ident(name) => {
                self.bump();
                self.ident(name, current.offset)
            }
            _ => Err(self.unexpected(&current, &["number", "identifier", "`(`", "`-`"])),
        }
    }

    fn ident(&mut self, name: &str, offset: usize) -> Result<Node, ParseError> {
        match name {
            "pi" => return Ok(Node::Pi),
            "e" => return Ok(Node::Euler),
            _ => {}
        }
        if let Some(function) = Function::from_name(name) {
            let next = self.current().clone();
            if next.token != Token::LParen {
                return Err(self.unexpected(&next, &["`(`"]));
            }
            self.bump();
            let mut args = vec![self.expr()?];
            while self.current().token == Token::Comma {
                self.bump();
                args.push(self.expr()?);
            }
            let close = self.current().clone();
            if close.token != Token::RParen {
                return Err(self.unexpected(&close, &["`,`", "`)`"]));
            }
            self.bump();
            if args.len() != 1 {
                return Err(ParseError {
                    offset,
                    kind: ParseErrorKind::ArityMismatch {
                        function: name.to_string(),
                        expected: 1,
                        found: args.len(),
                    },
                });
            }
            return Ok(Node::Call(function, Box::new(args.pop().unwrap())));
        }
        if let Some(rest) = name.strip_prefix('x') {
            if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                let index: usize = rest.parse().map_err(|_| ParseError {
                    offset,
                    kind: ParseErrorKind::UnknownIdentifier {
                        name: name.to_string(),
                    },
                })?;
                if index >= self.dimension {
                    return Err(ParseError {
                        offset,
                        kind: ParseErrorKind::VariableOutOfRange {
                            name: name.to_string(),
                            dimension: self.dimension,
                        },
                    });
                }
                return Ok(Node::Variable(index));
            }
        }
        Err(ParseError {
            offset,
            kind: ParseErrorKind::UnknownIdentifier {
                name: name.to_string(),
            },
        })
    }
}
