//! Symbolic differentiation with constant folding.

use super::eval::{apply, pow as fpow};
use super::{BinOp, Func, Node};

fn num(x: f64) -> Node {
    Node::Num(x)
}

fn is_num(n: &Node, x: f64) -> bool {
    n.as_num() == Some(x)
}

/// Folded result if finite, otherwise `None` so the node is kept symbolic.
fn folded(x: f64) -> Option<Node> {
    x.is_finite().then(|| num(x))
}

pub(crate) fn neg(a: Node) -> Node {
    match a {
        Node::Num(x) => num(-x),
        Node::Neg(inner) => *inner,
        other => Node::Neg(Box::new(other)),
    }
}

pub(crate) fn add(a: Node, b: Node) -> Node {
    if let (Some(x), Some(y)) = (a.as_num(), b.as_num()) {
        return num(x + y);
    }
    if is_num(&a, 0.0) {
        return b;
    }
    if is_num(&b, 0.0) {
        return a;
    }
    Node::Bin(BinOp::Add, Box::new(a), Box::new(b))
}

pub(crate) fn sub(a: Node, b: Node) -> Node {
    if let (Some(x), Some(y)) = (a.as_num(), b.as_num()) {
        return num(x - y);
    }
    if is_num(&b, 0.0) {
        return a;
    }
    if is_num(&a, 0.0) {
        return neg(b);
    }
    Node::Bin(BinOp::Sub, Box::new(a), Box::new(b))
}

pub(crate) fn mul(a: Node, b: Node) -> Node {
    if let (Some(x), Some(y)) = (a.as_num(), b.as_num()) {
        return num(x * y);
    }
    if is_num(&a, 0.0) || is_num(&b, 0.0) {
        return num(0.0);
    }
    if is_num(&a, 1.0) {
        return b;
    }
    if is_num(&b, 1.0) {
        return a;
    }
    if is_num(&a, -1.0) {
        return neg(b);
    }
    if is_num(&b, -1.0) {
        return neg(a);
    }
    Node::Bin(BinOp::Mul, Box::new(a), Box::new(b))
}

pub(crate) fn div(a: Node, b: Node) -> Node {
    if let (Some(x), Some(y)) = (a.as_num(), b.as_num()) {
        if y != 0.0 {
            if let Some(n) = folded(x / y) {
                return n;
            }
        }
    }
    if is_num(&a, 0.0) && !is_num(&b, 0.0) {
        return num(0.0);
    }
    if is_num(&b, 1.0) {
        return a;
    }
    Node::Bin(BinOp::Div, Box::new(a), Box::new(b))
}

pub(crate) fn pow(a: Node, b: Node) -> Node {
    if let (Some(x), Some(y)) = (a.as_num(), b.as_num()) {
        if !(x == 0.0 && y < 0.0) {
            if let Some(n) = folded(fpow(x, y)) {
                return n;
            }
        }
    }
    if is_num(&b, 1.0) {
        return a;
    }
    if is_num(&b, 0.0) {
        return num(1.0);
    }
    Node::Bin(BinOp::Pow, Box::new(a), Box::new(b))
}

pub(crate) fn call(f: Func, a: Node) -> Node {
    if let Some(x) = a.as_num() {
        if let Some(n) = apply(f, x).ok().and_then(folded) {
            return n;
        }
    }
    Node::Call(f, Box::new(a))
}

/// d(node)/d(var).
pub(super) fn derivative(node: &Node, var: usize) -> Node {
    if !node.depends_on(var) {
        return num(0.0);
    }
    match node {
        Node::Num(_) | Node::Const(_) => num(0.0),
        Node::Var(i) => num(if *i == var { 1.0 } else { 0.0 }),
        Node::Neg(a) => neg(derivative(a, var)),
        Node::Bin(op, a, b) => {
            let (a, b) = (a.as_ref(), b.as_ref());
            let da = derivative(a, var);
            let db = derivative(b, var);
            match op {
                BinOp::Add => add(da, db),
                BinOp::Sub => sub(da, db),
                BinOp::Mul => add(mul(da, b.clone()), mul(a.clone(), db)),
                BinOp::Div => div(
                    sub(mul(da, b.clone()), mul(a.clone(), db)),
                    pow(b.clone(), num(2.0)),
                ),
                BinOp::Pow => {
                    if !b.depends_on(var) {
                        // b * a^(b-1) * a'
                        let reduced = sub(b.clone(), num(1.0));
                        mul(mul(b.clone(), pow(a.clone(), reduced)), da)
                    } else if !a.depends_on(var) {
                        // a^b * ln(a) * b'
                        mul(mul(node.clone(), call(Func::Ln, a.clone())), db)
                    } else {
                        // a^b * (b' ln a + b a'/a)
                        let inner = add(
                            mul(db, call(Func::Ln, a.clone())),
                            div(mul(b.clone(), da), a.clone()),
                        );
                        mul(node.clone(), inner)
                    }
                }
            }
        }
        Node::Call(f, a) => {
            let a = a.as_ref();
            let da = derivative(a, var);
            let outer = match f {
                Func::Sin => call(Func::Cos, a.clone()),
                Func::Cos => neg(call(Func::Sin, a.clone())),
                Func::Tan => div(num(1.0), pow(call(Func::Cos, a.clone()), num(2.0))),
                Func::Exp => call(Func::Exp, a.clone()),
                Func::Ln => div(num(1.0), a.clone()),
                Func::Sqrt => div(num(1.0), mul(num(2.0), call(Func::Sqrt, a.clone()))),
                Func::Sinh => call(Func::Cosh, a.clone()),
                Func::Cosh => call(Func::Sinh, a.clone()),
                Func::Abs => call(Func::Sgn, a.clone()),
                // Piecewise constant away from 0.
                Func::Sgn => num(0.0),
            };
            mul(outer, da)
        }
    }
}
