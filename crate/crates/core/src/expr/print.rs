//! Printing back to parseable source. Parentheses are emitted wherever the
//! tree shape would otherwise change on reparse, so a round trip preserves
//! evaluation order exactly.

use std::fmt::{self, Write};

use super::{BinOp, Node};

const ADD: u8 = 1;
const MUL: u8 = 2;
const UNARY: u8 = 3;
const POW: u8 = 4;
const ATOM: u8 = 5;

fn precedence(node: &Node) -> u8 {
    match node {
        Node::Num(x) if x.is_sign_negative() => UNARY,
        Node::Num(_) | Node::Const(_) | Node::Var(_) | Node::Call(..) => ATOM,
        Node::Neg(_) => UNARY,
        Node::Bin(BinOp::Add | BinOp::Sub, ..) => ADD,
        Node::Bin(BinOp::Mul | BinOp::Div, ..) => MUL,
        Node::Bin(BinOp::Pow, ..) => POW,
    }
}

fn child<W: Write>(w: &mut W, node: &Node, vars: &[String], parens: bool) -> fmt::Result {
    if parens {
        w.write_char('(')?;
        write_node(w, node, vars)?;
        w.write_char(')')
    } else {
        write_node(w, node, vars)
    }
}

pub(super) fn write_node<W: Write>(w: &mut W, node: &Node, vars: &[String]) -> fmt::Result {
    match node {
        Node::Num(x) => write!(w, "{x}"),
        Node::Const(c) => w.write_str(c.name()),
        Node::Var(i) => w.write_str(&vars[*i]),
        Node::Neg(a) => {
            w.write_char('-')?;
            child(w, a, vars, precedence(a) < UNARY)
        }
        Node::Call(f, a) => {
            write!(w, "{}(", f.name())?;
            write_node(w, a, vars)?;
            w.write_char(')')
        }
        Node::Bin(BinOp::Pow, a, b) => {
            child(w, a, vars, precedence(a) < ATOM)?;
            w.write_char('^')?;
            child(w, b, vars, precedence(b) < UNARY)
        }
        Node::Bin(op, a, b) => {
            let (prec, sym) = match op {
                BinOp::Add => (ADD, '+'),
                BinOp::Sub => (ADD, '-'),
                BinOp::Mul => (MUL, '*'),
                BinOp::Div => (MUL, '/'),
                BinOp::Pow => unreachable!(),
            };
            child(w, a, vars, precedence(a) < prec)?;
            w.write_char(sym)?;
            // Same-level right operands keep their parentheses: a-(b-c), a+(b+c).
            child(w, b, vars, precedence(b) <= prec)
        }
    }
}

pub(super) fn node_to_string(node: &Node, vars: &[String]) -> String {
    let mut s = String::new();
    let _ = write_node(&mut s, node, vars);
    s
}
