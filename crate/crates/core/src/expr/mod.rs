//! Real-valued expressions in named variables.
//!
//! Expressions are parsed by a small recursive-descent parser, evaluated in
//! binary64, and differentiated symbolically. The differentiator folds
//! constant subtrees and drops neutral/absorbing elements (`x*1`, `x+0`,
//! `x*0`) but performs no other simplification.

mod diff;
mod eval;
mod lexer;
mod parser;
mod print;

use std::sync::Arc;

use thiserror::Error;

pub use self::parser::parse;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("undeclared identifier '{name}' at position {position}")]
    UndeclaredVariable { name: String, position: usize },

    #[error("unknown function '{name}' at position {position}")]
    UnknownFunction { name: String, position: usize },

    #[error("domain error in '{subexpr}': {reason}")]
    Domain { subexpr: String, reason: String },

    #[error("variable '{0}' is not declared for this expression")]
    NotDeclared(String),

    #[error("missing binding for variable '{0}'")]
    Unbound(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Ln,
    Sqrt,
    Sinh,
    Cosh,
    Abs,
    /// Sign function; appears as the derivative of `abs`. Undefined at 0.
    Sgn,
}

impl Func {
    pub const ALL: [Func; 10] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Exp,
        Func::Ln,
        Func::Sqrt,
        Func::Sinh,
        Func::Cosh,
        Func::Abs,
        Func::Sgn,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Abs => "abs",
            Func::Sgn => "sgn",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constant {
    Pi,
    E,
}

impl Constant {
    pub fn value(self) -> f64 {
        match self {
            Constant::Pi => std::f64::consts::PI,
            Constant::E => std::f64::consts::E,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Constant::Pi => "pi",
            Constant::E => "e",
        }
    }
}

/// Expression tree node. Variables are indices into the owning
/// [`Expression`]'s variable list.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Num(f64),
    Const(Constant),
    Var(usize),
    Neg(Box<Node>),
    Bin(BinOp, Box<Node>, Box<Node>),
    Call(Func, Box<Node>),
}

impl Node {
    pub(crate) fn as_num(&self) -> Option<f64> {
        match self {
            Node::Num(x) => Some(*x),
            _ => None,
        }
    }

    /// Whether the subtree mentions variable `var`.
    pub fn depends_on(&self, var: usize) -> bool {
        match self {
            Node::Num(_) | Node::Const(_) => false,
            Node::Var(i) => *i == var,
            Node::Neg(a) | Node::Call(_, a) => a.depends_on(var),
            Node::Bin(_, a, b) => a.depends_on(var) || b.depends_on(var),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Node::Num(_) | Node::Const(_) | Node::Var(_) => 1,
            Node::Neg(a) | Node::Call(_, a) => 1 + a.size(),
            Node::Bin(_, a, b) => 1 + a.size() + b.size(),
        }
    }
}

/// A parsed expression together with its declared variables.
///
/// Immutable; cloning is cheap for the variable list and deep for the tree.
#[derive(Debug, Clone, PartialEq)]
pub struct Expression {
    vars: Arc<[String]>,
    root: Node,
}

impl Expression {
    /// Build from a raw tree. Every `Var` index must be in range.
    pub fn from_node(vars: &[&str], root: Node) -> Result<Self, ExprError> {
        fn check(n: &Node, len: usize) -> Result<(), ExprError> {
            match n {
                Node::Var(i) if *i >= len => Err(ExprError::NotDeclared(format!("#{i}"))),
                Node::Neg(a) | Node::Call(_, a) => check(a, len),
                Node::Bin(_, a, b) => {
                    check(a, len)?;
                    check(b, len)
                }
                _ => Ok(()),
            }
        }
        check(&root, vars.len())?;
        Ok(Expression {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            root,
        })
    }

    pub(crate) fn with_root(&self, root: Node) -> Expression {
        Expression {
            vars: self.vars.clone(),
            root,
        }
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Whether the expression is a numeric literal after folding.
    pub fn constant_value(&self) -> Option<f64> {
        self.root.as_num()
    }

    /// Evaluate with positional values in declaration order.
    pub fn eval(&self, values: &[f64]) -> Result<f64, ExprError> {
        if values.len() < self.vars.len() {
            return Err(ExprError::Unbound(self.vars[values.len()].clone()));
        }
        eval::eval_node(&self.root, values, &self.vars)
    }

    /// Evaluate with named bindings. Every declared variable must be bound.
    pub fn evaluate(&self, bindings: &[(&str, f64)]) -> Result<f64, ExprError> {
        let mut values = Vec::with_capacity(self.vars.len());
        for v in self.vars.iter() {
            let value = bindings
                .iter()
                .find(|(name, _)| name == v)
                .map(|(_, x)| *x)
                .ok_or_else(|| ExprError::Unbound(v.clone()))?;
            values.push(value);
        }
        self.eval(&values)
    }

    /// Exact symbolic partial derivative with respect to `var`.
    pub fn differentiate(&self, var: &str) -> Result<Expression, ExprError> {
        let idx = self
            .var_index(var)
            .ok_or_else(|| ExprError::NotDeclared(var.to_string()))?;
        Ok(self.with_root(diff::derivative(&self.root, idx)))
    }
}

impl std::fmt::Display for Expression {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        print::write_node(f, &self.root, &self.vars)
    }
}

