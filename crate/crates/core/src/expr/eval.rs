use super::print::node_to_string;
use super::{BinOp, ExprError, Func, Node};

pub(super) fn eval_node(node: &Node, values: &[f64], vars: &[String]) -> Result<f64, ExprError> {
    let domain = |reason: &str| ExprError::Domain {
        subexpr: node_to_string(node, vars),
        reason: reason.to_string(),
    };
    let value = match node {
        Node::Num(x) => *x,
        Node::Const(c) => c.value(),
        Node::Var(i) => values[*i],
        Node::Neg(a) => -eval_node(a, values, vars)?,
        Node::Bin(op, a, b) => {
            let x = eval_node(a, values, vars)?;
            let y = eval_node(b, values, vars)?;
            match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
                BinOp::Div => {
                    if y == 0.0 {
                        return Err(domain("division by zero"));
                    }
                    x / y
                }
                BinOp::Pow => {
                    let r = pow(x, y);
                    if r.is_nan() {
                        return Err(domain("negative base with non-integer exponent"));
                    }
                    if x == 0.0 && y < 0.0 {
                        return Err(domain("zero raised to a negative power"));
                    }
                    r
                }
            }
        }
        Node::Call(func, a) => {
            let x = eval_node(a, values, vars)?;
            apply(*func, x).map_err(domain)?
        }
    };
    if !value.is_finite() {
        return Err(domain("non-finite result"));
    }
    Ok(value)
}

pub(super) fn pow(x: f64, y: f64) -> f64 {
    if y.fract() == 0.0 && y.abs() <= 64.0 {
        x.powi(y as i32)
    } else {
        x.powf(y)
    }
}

pub(super) fn apply(func: Func, x: f64) -> Result<f64, &'static str> {
    Ok(match func {
        Func::Sin => x.sin(),
        Func::Cos => x.cos(),
        Func::Tan => x.tan(),
        Func::Exp => x.exp(),
        Func::Ln => {
            if x <= 0.0 {
                return Err("logarithm of a non-positive number");
            }
            x.ln()
        }
        Func::Sqrt => {
            if x < 0.0 {
                return Err("square root of a negative number");
            }
            x.sqrt()
        }
        Func::Sinh => x.sinh(),
        Func::Cosh => x.cosh(),
        Func::Abs => x.abs(),
        Func::Sgn => {
            if x == 0.0 {
                return Err("sign is undefined at 0 (abs is not differentiable there)");
            }
            x.signum()
        }
    })
}
