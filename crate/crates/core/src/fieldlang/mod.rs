//! Expression language for metric components, diffeomorphism components,
//! and scale functions.
//!
//! Expressions are parsed once against a fixed dimension and are immutable
//! afterwards; evaluation is pure, so concurrent use is safe. Two evaluation
//! modes are provided: plain values, and dual numbers carrying the exact
//! directional derivative along a supplied direction. Domain violations
//! (logarithm of a nonpositive value, division by zero, fractional powers of
//! nonpositive bases, overflow to infinity) are reported as errors, never as
//! silent NaN or infinity.

mod dual;
mod lexer;
mod parser;

use std::fmt;

use thiserror::Error;

use crate::real::Real;

pub use dual::Dual;

/// Unary functions available in the language.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Function {
    Sin,
    Cos,
    Exp,
    Log,
    Sqrt,
    Abs,
    Tanh,
}

impl Function {
    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "sin" => Function::Sin,
            "cos" => Function::Cos,
            "exp" => Function::Exp,
            "log" => Function::Log,
            "sqrt" => Function::Sqrt,
            "abs" => Function::Abs,
            "tanh" => Function::Tanh,
            _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            Function::Sin => "sin",
            Function::Cos => "cos",
            Function::Exp => "exp",
            Function::Log => "log",
            Function::Sqrt => "sqrt",
            Function::Abs => "abs",
            Function::Tanh => "tanh",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

/// Abstract syntax tree node.
///
/// Parsing never produces negative literals: `-3` is `Neg(Literal(3))`, which
/// keeps the print/parse round trip structurally exact.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Variable(usize),
    Literal(f64),
    Pi,
    Euler,
    Neg(Box<Node>),
    Binary(BinaryOp, Box<Node>, Box<Node>),
    Call(Function, Box<Node>),
}

/// A parsed expression bound to a fixed dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Expression {
    dimension: usize,
    root: Node,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("syntax error at byte {offset}: {kind}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected {found}, expected {}", expected.join(", "))]
    UnexpectedToken {
        found: String,
        expected: Vec<String>,
    },
    #[error("invalid character `{found}`")]
    InvalidCharacter { found: char },
    #[error("malformed number literal")]
    MalformedNumber,
    #[error("literal `{text}` overflows a double")]
    LiteralOverflow { text: String },
    #[error("unknown identifier `{name}`")]
    UnknownIdentifier { name: String },
    #[error("variable `{name}` is out of range for dimension {dimension}")]
    VariableOutOfRange { name: String, dimension: usize },
    #[error("function `{function}` takes {expected} argument(s), got {found}")]
    ArityMismatch {
        function: String,
        expected: usize,
        found: usize,
    },
    #[error("empty source")]
    EmptySource,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{kind} in `{subexpression}`")]
pub struct EvalError {
    pub kind: EvalErrorKind,
    /// Rendering of the subexpression where the violation occurred.
    pub subexpression: String,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalErrorKind {
    #[error("point has dimension {found}, expression expects {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("logarithm of nonpositive value {value}")]
    LogNonpositive { value: f64 },
    #[error("square root of negative value {value}")]
    SqrtNegative { value: f64 },
    #[error("square-root derivative is unbounded at zero")]
    SqrtDerivativeAtZero,
    #[error("division by zero")]
    DivisionByZero,
    #[error("power with nonpositive base {base} and non-integer exponent {exponent}")]
    PowNonpositiveBase { base: f64, exponent: f64 },
    #[error("zero base raised to negative exponent {exponent}")]
    PowZeroToNegative { exponent: f64 },
    #[error("result is not finite")]
    NonFinite,
}

/// Parses `source` against the given dimension.
///
/// Errors report the byte offset of the offending token and, for syntax
/// errors, the set of tokens that would have been accepted.
pub fn parse(source: &str, dimension: usize) -> Result<Expression, ParseError> {
    if source.trim().is_empty() {
        return Err(ParseError {
            offset: 0,
            kind: ParseErrorKind::EmptySource,
        });
    }
    let root = parser::Parser::new(source, dimension)?.parse()?;
    Ok(Expression { dimension, root })
}

impl Expression {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    /// A constant expression, usable in any evaluation context of `dimension`.
    pub fn constant(dimension: usize, value: f64) -> Self {
        let root = if value < 0.0 {
            Node::Neg(Box::new(Node::Literal(-value)))
        } else {
            Node::Literal(value)
        };
        Expression { dimension, root }
    }

    /// `self - other`, used to form difference fields.
    pub fn difference(&self, other: &Expression) -> Expression {
        assert_eq!(self.dimension, other.dimension, "dimension mismatch");
        Expression {
            dimension: self.dimension,
            root: Node::Binary(
                BinaryOp::Sub,
                Box::new(self.root.clone()),
                Box::new(other.root.clone()),
            ),
        }
    }

    /// `factor * self`.
    pub fn scaled(&self, factor: f64) -> Expression {
        let factor_node = if factor < 0.0 {
            Node::Neg(Box::new(Node::Literal(-factor)))
        } else {
            Node::Literal(factor)
        };
        Expression {
            dimension: self.dimension,
            root: Node::Binary(
                BinaryOp::Mul,
                Box::new(factor_node),
                Box::new(self.root.clone()),
            ),
        }
    }

    /// Evaluates at `point` in IEEE double (or single) precision.
    pub fn evaluate<T: Real>(&self, point: &[T]) -> Result<T, EvalError> {
        self.check_dimension(point)?;
        eval_value(&self.root, point)
    }

    /// Evaluates value and exact directional derivative along `direction`.
    pub fn evaluate_dual<T: Real>(
        &self,
        point: &[T],
        direction: &[T],
    ) -> Result<Dual<T>, EvalError> {
        self.check_dimension(point)?;
        self.check_dimension(direction)?;
        eval_dual(&self.root, point, direction)
    }

    fn check_dimension<T>(&self, point: &[T]) -> Result<(), EvalError> {
        if point.len() != self.dimension {
            return Err(EvalError {
                kind: EvalErrorKind::DimensionMismatch {
                    expected: self.dimension,
                    found: point.len(),
                },
                subexpression: self.to_string(),
            });
        }
        Ok(())
    }
}

fn domain_error(kind: EvalErrorKind, node: &Node) -> EvalError {
    EvalError {
        kind,
        subexpression: render(node),
    }
}

fn finite_or<T: Real>(value: T, node: &Node) -> Result<T, EvalError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(domain_error(EvalErrorKind::NonFinite, node))
    }
}

fn eval_value<T: Real>(node: &Node, point: &[T]) -> Result<T, EvalError> {
    let value = match node {
        Node::Variable(i) => point[*i],
        Node::Literal(v) => T::lit(*v),
        Node::Pi => T::PI(),
        Node::Euler => T::E(),
        Node::Neg(inner) => -eval_value(inner, point)?,
        Node::Binary(op, lhs, rhs) => {
            let a = eval_value(lhs, point)?;
            let b = eval_value(rhs, point)?;
            match op {
                BinaryOp::Add => a + b,
                BinaryOp::Sub => a - b,
                BinaryOp::Mul => a * b,
                BinaryOp::Div => {
                    if b == T::zero() {
                        return Err(domain_error(EvalErrorKind::DivisionByZero, node));
                    }
                    a / b
                }
                BinaryOp::Pow => pow_value(a, b, node)?,
            }
        }
        Node::Call(f, arg) => {
            let a = eval_value(arg, point)?;
            match f {
                Function::Sin => a.sin(),
                Function::Cos => a.cos(),
                Function::Exp => a.exp(),
                Function::Log => {
                    if a <= T::zero() {
                        return Err(domain_error(
                            EvalErrorKind::LogNonpositive {
                                value: a.to_f64_lossy(),
                            },
                            node,
                        ));
                    }
                    a.ln()
                }
                Function::Sqrt => {
                    if a < T::zero() {
                        return Err(domain_error(
                            EvalErrorKind::SqrtNegative {
                                value: a.to_f64_lossy(),
                            },
                            node,
                        ));
                    }
                    a.sqrt()
                }
                Function::Abs => a.abs(),
                Function::Tanh => a.tanh(),
            }
        }
    };
    finite_or(value, node)
}

fn pow_value<T: Real>(base: T, exponent: T, node: &Node) -> Result<T, EvalError> {
    if let Some(n) = as_small_integer(exponent) {
        if base == T::zero() && n < 0 {
            return Err(domain_error(
                EvalErrorKind::PowZeroToNegative {
                    exponent: exponent.to_f64_lossy(),
                },
                node,
            ));
        }
        return Ok(base.powi(n));
    }
    if base <= T::zero() {
        return Err(domain_error(
            EvalErrorKind::PowNonpositiveBase {
                base: base.to_f64_lossy(),
                exponent: exponent.to_f64_lossy(),
            },
            node,
        ));
    }
    Ok(base.powf(exponent))
}

fn eval_dual<T: Real>(node: &Node, point: &[T], direction: &[T]) -> Result<Dual<T>, EvalError> {
    let value = match node {
        Node::Variable(i) => Dual::new(point[*i], direction[*i]),
        Node::Literal(v) => Dual::constant(T::lit(*v)),
        Node::Pi => Dual::constant(T::PI()),
        Node::Euler => Dual::constant(T::E()),
        Node::Neg(inner) => -eval_dual(inner, point, direction)?,
        Node::Binary(op, lhs, rhs) => {
            let a = eval_dual(lhs, point, direction)?;
            let b = eval_dual(rhs, point, direction)?;
            match op {
                BinaryOp::Add => a + b,
                BinaryOp::Sub => a - b,
                BinaryOp::Mul => a * b,
                BinaryOp::Div => {
                    if b.value == T::zero() {
                        return Err(domain_error(EvalErrorKind::DivisionByZero, node));
                    }
                    a / b
                }
                BinaryOp::Pow => pow_dual(a, b, node)?,
            }
        }
        Node::Call(f, arg) => {
            let a = eval_dual(arg, point, direction)?;
            match f {
                Function::Sin => a.sin(),
                Function::Cos => a.cos(),
                Function::Exp => a.exp(),
                Function::Log => {
                    if a.value <= T::zero() {
                        return Err(domain_error(
                            EvalErrorKind::LogNonpositive {
                                value: a.value.to_f64_lossy(),
                            },
                            node,
                        ));
                    }
                    a.ln()
                }
                Function::Sqrt => {
                    if a.value < T::zero() {
                        return Err(domain_error(
                            EvalErrorKind::SqrtNegative {
                                value: a.value.to_f64_lossy(),
                            },
                            node,
                        ));
                    }
                    if a.value == T::zero() && a.derivative != T::zero() {
                        return Err(domain_error(EvalErrorKind::SqrtDerivativeAtZero, node));
                    }
                    if a.value == T::zero() {
                        Dual::constant(T::zero())
                    } else {
                        a.sqrt()
                    }
                }
                Function::Abs => a.abs(),
                Function::Tanh => a.tanh(),
            }
        }
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(domain_error(EvalErrorKind::NonFinite, node))
    }
}

fn pow_dual<T: Real>(base: Dual<T>, exponent: Dual<T>, node: &Node) -> Result<Dual<T>, EvalError> {
    if exponent.derivative == T::zero() {
        if let Some(n) = as_small_integer(exponent.value) {
            if base.value == T::zero() && n < 0 {
                return Err(domain_error(
                    EvalErrorKind::PowZeroToNegative {
                        exponent: exponent.value.to_f64_lossy(),
                    },
                    node,
                ));
            }
            return Ok(base.powi(n));
        }
        if base.value <= T::zero() {
            return Err(domain_error(
                EvalErrorKind::PowNonpositiveBase {
                    base: base.value.to_f64_lossy(),
                    exponent: exponent.value.to_f64_lossy(),
                },
                node,
            ));
        }
        return Ok(base.powf_const(exponent.value));
    }
    if base.value <= T::zero() {
        return Err(domain_error(
            EvalErrorKind::PowNonpositiveBase {
                base: base.value.to_f64_lossy(),
                exponent: exponent.value.to_f64_lossy(),
            },
            node,
        ));
    }
    Ok(base.pow_general(exponent))
}

fn as_small_integer<T: Real>(v: T) -> Option<i32> {
    if v.fract() != T::zero() {
        return None;
    }
    let f = v.to_f64_lossy();
    if f.abs() > i32::MAX as f64 / 2.0 {
        return None;
    }
    Some(f as i32)
}

// Printing with enough parentheses that parse(print(ast)) == ast.
// Precedence: Add/Sub 1, Mul/Div 2, Neg 3, Pow 4, atoms 5.
fn precedence(node: &Node) -> u8 {
    match node {
        Node::Binary(BinaryOp::Add | BinaryOp::Sub, _, _) => 1,
        Node::Binary(BinaryOp::Mul | BinaryOp::Div, _, _) => 2,
        Node::Neg(_) => 3,
        Node::Binary(BinaryOp::Pow, _, _) => 4,
        _ => 5,
    }
}

fn render(node: &Node) -> String {
    let mut out = String::new();
    write_node(&mut out, node);
    out
}

fn write_node(out: &mut String, node: &Node) {
    match node {
        Node::Variable(i) => {
            out.push('x');
            out.push_str(&i.to_string());
        }
        Node::Literal(v) => out.push_str(&format!("{v:?}")),
        Node::Pi => out.push_str("pi"),
        Node::Euler => out.push('e'),
        Node::Neg(inner) => {
            out.push('-');
            write_child(out, inner, 3, false);
        }
        Node::Binary(op, lhs, rhs) => {
            let (sym, prec) = match op {
                BinaryOp::Add => ("+", 1),
                BinaryOp::Sub => ("-", 1),
                BinaryOp::Mul => ("*", 2),
                BinaryOp::Div => ("/", 2),
                BinaryOp::Pow => ("^", 4),
            };
            match op {
                // left-associative: parenthesize right children of equal precedence
                BinaryOp::Add | BinaryOp::Sub | BinaryOp::Mul | BinaryOp::Div => {
                    write_child(out, lhs, prec, false);
                    out.push_str(sym);
                    write_child(out, rhs, prec, true);
                }
                // right-associative
                BinaryOp::Pow => {
                    write_child(out, lhs, prec, true);
                    out.push_str(sym);
                    write_child(out, rhs, prec, false);
                }
            }
        }
        Node::Call(f, arg) => {
            out.push_str(f.name());
            out.push('(');
            write_node(out, arg);
            out.push(')');
        }
    }
}

fn write_child(out: &mut String, child: &Node, parent_prec: u8, strict: bool) {
    let needs_parens = if strict {
        precedence(child) <= parent_prec
    } else {
        precedence(child) < parent_prec
    };
    if needs_parens {
        out.push('(');
        write_node(out, child);
        out.push(')');
    } else {
        write_node(out, child);
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.root))
    }
}
