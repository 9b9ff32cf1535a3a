//! Lexer, parser and printer for diagram expressions.
//!
//! ```text
//! expr   := term (';' term)*
//! term   := factor ('*' factor)*
//! factor := NAME | '(' expr ')'
//! NAME   := [a-zA-Z_][a-zA-Z0-9_']*
//! ```
//! `;` stacks diagrams top to bottom, `*` juxtaposes them and binds tighter.
//! Both operators associate to the left.

use std::fmt;

use crate::error::{Error, Result};

/// Byte range plus the line/column (1-based) of its start.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone)]
pub enum Node {
    Gen(String),
    Tensor(Box<Expr>, Box<Expr>),
    Seq(Box<Expr>, Box<Expr>),
}

/// A diagram expression. Equality ignores source spans.
#[derive(Debug, Clone)]
pub struct Expr {
    pub node: Node,
    pub span: Span,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        match (&self.node, &other.node) {
            (Node::Gen(a), Node::Gen(b)) => a == b,
            (Node::Tensor(a, b), Node::Tensor(c, d)) | (Node::Seq(a, b), Node::Seq(c, d)) => a == c && b == d,
            _ => false,
        }
    }
}

impl Eq for Expr {}

impl Expr {
    pub fn gen(name: &str) -> Expr {
        Expr {
            node: Node::Gen(name.to_string()),
            span: Span::default(),
        }
    }

    pub fn tensor(a: Expr, b: Expr) -> Expr {
        Expr {
            node: Node::Tensor(Box::new(a), Box::new(b)),
            span: Span::default(),
        }
    }

    pub fn seq(a: Expr, b: Expr) -> Expr {
        Expr {
            node: Node::Seq(Box::new(a), Box::new(b)),
            span: Span::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    Semi,
    Star,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(Tok, Span)>> {
        let mut lx = Lexer {
            src,
            pos: 0,
            line: 1,
            col: 1,
        };
        let mut out = Vec::new();
        loop {
            lx.skip_ws();
            let start = (lx.pos, lx.line, lx.col);
            let Some(c) = lx.peek() else {
                out.push((Tok::End, lx.span_from(start)));
                return Ok(out);
            };
            let tok = match c {
                ';' => {
                    lx.bump();
                    Tok::Semi
                }
                '*' => {
                    lx.bump();
                    Tok::Star
                }
                '(' => {
                    lx.bump();
                    Tok::LParen
                }
                ')' => {
                    lx.bump();
                    Tok::RParen
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    while lx.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'') {
                        lx.bump();
                    }
                    Tok::Name(src[start.0..lx.pos].to_string())
                }
                other => {
                    return Err(Error::Parse {
                        line: lx.line,
                        column: lx.col,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            };
            out.push((tok, lx.span_from(start)));
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek() {
            self.pos += c.len_utf8();
            if c == '\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn span_from(&self, (start, line, column): (usize, usize, usize)) -> Span {
        Span {
            start,
            end: self.pos,
            line,
            column,
        }
    }
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    i: usize,
}

fn join(a: &Span, b: &Span) -> Span {
    Span {
        start: a.start,
        end: b.end,
        line: a.line,
        column: a.column,
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn span(&self) -> Span {
        self.toks[self.i].1
    }

    fn error(&self, message: String) -> Error {
        let s = self.span();
        Error::Parse {
            line: s.line,
            column: s.column,
            message,
        }
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Name(n) => format!("`{n}`"),
            Tok::Semi => "`;`".into(),
            Tok::Star => "`*`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while *self.peek() == Tok::Semi {
            self.i += 1;
            let rhs = self.term()?;
            let span = join(&lhs.span, &rhs.span);
            lhs = Expr {
                node: Node::Seq(Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Star {
            self.i += 1;
            let rhs = self.factor()?;
            let span = join(&lhs.span, &rhs.span);
            lhs = Expr {
                node: Node::Tensor(Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Name(n) => {
                self.i += 1;
                Ok(Expr {
                    node: Node::Gen(n),
                    span,
                })
            }
            Tok::LParen => {
                self.i += 1;
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(format!("expected `)`, found {}", Self::describe(self.peek()))));
                }
                let close = self.span();
                self.i += 1;
                Ok(Expr {
                    node: inner.node,
                    span: join(&span, &close),
                })
            }
            t => Err(self.error(format!("expected a generator or `(`, found {}", Self::describe(&t)))),
        }
    }
}

/// Parses a diagram expression.
pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: Lexer::tokens(text)?,
        i: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(format!("unexpected {}", Parser::describe(p.peek()))));
    }
    Ok(e)
}

/// Prints with the minimal parentheses needed to parse back to the same tree.
pub fn print(e: &Expr) -> String {
    match &e.node {
        Node::Gen(n) => n.clone(),
        Node::Seq(a, b) => {
            let rhs = match b.node {
                Node::Seq(..) => format!("({})", print(b)),
                _ => print(b),
            };
            format!("{} ; {}", print(a), rhs)
        }
        Node::Tensor(a, b) => {
            let side = |x: &Expr, wrap_tensor: bool| match x.node {
                Node::Seq(..) => format!("({})", print(x)),
                Node::Tensor(..) if wrap_tensor => format!("({})", print(x)),
                _ => print(x),
            };
            format!("{} * {}", side(a, false), side(b, true))
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: &str) -> Expr {
        Expr::gen(n)
    }

    #[test]
    fn precedence_and_associativity() {
        let e = parse("delta ; (id * eps)").unwrap();
        assert_eq!(e, Expr::seq(g("delta"), Expr::tensor(g("id"), g("eps"))));
        let e = parse("a * b ; c").unwrap();
        assert_eq!(e, Expr::seq(Expr::tensor(g("a"), g("b")), g("c")));
        let e = parse("a ; b ; c").unwrap();
        assert_eq!(e, Expr::seq(Expr::seq(g("a"), g("b")), g("c")));
    }

    #[test]
    fn primed_names_and_whitespace() {
        let e = parse("  M'\n;\tN_2 ").unwrap();
        assert_eq!(e, Expr::seq(g("M'"), g("N_2")));
    }

    #[test]
    fn errors_carry_positions() {
        match parse("delta ;\n (id * )") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 8)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("id $"), Err(Error::Parse { column: 4, .. })));
        assert!(matches!(parse("(id"), Err(Error::Parse { .. })));
        assert!(matches!(parse("id id"), Err(Error::Parse { .. })));
    }

    #[test]
    fn spans_cover_subexpressions() {
        let e = parse("cv ; (eps * eps)").unwrap();
        assert_eq!((e.span.start, e.span.end), (0, 16));
        if let Node::Seq(_, b) = &e.node {
            assert_eq!((b.span.start, b.span.end), (5, 16));
        } else {
            panic!()
        }
    }

    #[test]
    fn printing_round_trips() {
        for s in ["a ; (b ; c)", "a * (b * c)", "(a ; b) * c", "(cv * id * e) ; (id * mu * id) ; (id * ev)"] {
            let e = parse(s).unwrap();
            assert_eq!(parse(&print(&e)).unwrap(), e, "{s}");
        }
    }
}
