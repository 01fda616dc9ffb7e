//! Recursive-descent parser.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | power
//! power   := primary ('^' unary)?          right-associative
//! primary := number | constant | variable | func '(' expr ')' | '(' expr ')'
//! ```

use super::lexer::{tokenize, Tok, Token};
use super::{BinOp, Constant, ExprError, Expression, Func, Node};

/// Parse `source` as an expression over the declared `variables`.
pub fn parse(source: &str, variables: &[&str]) -> Result<Expression, ExprError> {
    let tokens = tokenize(source)?;
    if tokens.is_empty() {
        return Err(ExprError::Syntax {
            position: 0,
            message: "empty expression".into(),
        });
    }
    let mut p = Parser {
        tokens,
        cursor: 0,
        end: source.len(),
        vars: variables,
    };
    let root = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(ExprError::Syntax {
            position: t.pos,
            message: format!("unexpected {} after complete expression", t.tok.describe()),
        });
    }
    Expression::from_node(variables, root)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    cursor: usize,
    end: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.cursor)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.cursor).cloned();
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().map(|t| &t.tok) == Some(tok) {
            self.cursor += 1;
            true
        } else {
            false
        }
    }

    fn unexpected_end(&self, wanted: &str) -> ExprError {
        ExprError::Syntax {
            position: self.end,
            message: format!("unexpected end of input, expected {wanted}"),
        }
    }

    fn expr(&mut self) -> Result<Node, ExprError> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat(&Tok::Plus) {
                BinOp::Add
            } else if self.eat(&Tok::Minus) {
                BinOp::Sub
            } else {
                break;
            };
            let rhs = self.term()?;
            lhs = Node::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Node, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat(&Tok::Star) {
                BinOp::Mul
            } else if self.eat(&Tok::Slash) {
                BinOp::Div
            } else {
                break;
            };
            let rhs = self.unary()?;
            lhs = Node::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node, ExprError> {
        if self.eat(&Tok::Minus) {
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        if self.eat(&Tok::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, ExprError> {
        let base = self.primary()?;
        if self.eat(&Tok::Caret) {
            let exponent = self.unary()?;
            return Ok(Node::Bin(BinOp::Pow, Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Node, ExprError> {
        let Some(token) = self.next() else {
            return Err(self.unexpected_end("an operand"));
        };
        match token.tok {
            Tok::Num(x) => Ok(Node::Num(x)),
            Tok::LParen => {
                let inner = self.expr()?;
                self.close_paren(token.pos)?;
                Ok(inner)
            }
            Tok::Ident(name) => self.identifier(name, token.pos),
            other => Err(ExprError::Syntax {
                position: token.pos,
                message: format!("unexpected {}, expected an operand", other.describe()),
            }),
        }
    }

    fn close_paren(&mut self, open_pos: usize) -> Result<(), ExprError> {
        match self.next() {
            Some(Token {
                tok: Tok::RParen, ..
            }) => Ok(()),
            Some(t) => Err(ExprError::Syntax {
                position: t.pos,
                message: format!(
                    "unexpected {}, expected ')' to close '(' at {open_pos}",
                    t.tok.describe()
                ),
            }),
            None => Err(self.unexpected_end("')'")),
        }
    }

    fn identifier(&mut self, name: String, pos: usize) -> Result<Node, ExprError> {
        let call_follows = self.peek().map(|t| &t.tok) == Some(&Tok::LParen);
        if !call_follows {
            if let Some(i) = self.vars.iter().position(|v| *v == name) {
                return Ok(Node::Var(i));
            }
            return match name.as_str() {
                "pi" => Ok(Node::Const(Constant::Pi)),
                "e" => Ok(Node::Const(Constant::E)),
                _ if Func::from_name(&name).is_some() => Err(ExprError::Syntax {
                    position: pos,
                    message: format!("function '{name}' requires a parenthesized argument"),
                }),
                _ => Err(ExprError::UndeclaredVariable {
                    name,
                    position: pos,
                }),
            };
        }
        let Some(func) = Func::from_name(&name) else {
            return Err(ExprError::UnknownFunction {
                name,
                position: pos,
            });
        };
        let open = self.next().map(|t| t.pos).unwrap_or(pos);
        let arg = self.expr()?;
        self.close_paren(open)?;
        Ok(Node::Call(func, Box::new(arg)))
    }
}
