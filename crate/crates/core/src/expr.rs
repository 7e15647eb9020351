//! A small expression language for module arithmetic.
//!
//! ```text
//! expr := ind(e, zeta, t) | sum(expr, ...) | tensor(expr, expr)
//!       | dual(expr) | twist(expr, m) | restrict(expr, f) | ext2(expr)
//! ```
//!
//! `ind(e, zeta, t)` is `V_{α,t}` with `α = ζ·q^e`. Rationals are written
//! `p` or `p/r`.

use std::fmt;

use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::rat::{is_integer, parse_rational, Rational};
use crate::wd::SSModule;
use crate::weil::{ResidueCard, WeilMonomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Ind { e: Rational, zeta: Rational, t: u32 },
    Sum(Vec<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
    Dual(Box<Expr>),
    Twist(Box<Expr>, i64),
    Restrict(Box<Expr>, u32),
    Ext2(Box<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Ind { e, zeta, t } => write!(f, "ind({e}, {zeta}, {t})"),
            Expr::Sum(xs) => {
                write!(f, "sum(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Expr::Tensor(a, b) => write!(f, "tensor({a}, {b})"),
            Expr::Dual(a) => write!(f, "dual({a})"),
            Expr::Twist(a, m) => write!(f, "twist({a}, {m})"),
            Expr::Restrict(a, k) => write!(f, "restrict({a}, {k})"),
            Expr::Ext2(a) => write!(f, "ext2({a})"),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser { src, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

pub fn eval(e: &Expr, q: ResidueCard) -> Result<SSModule> {
    Ok(match e {
        Expr::Ind { e, zeta, t } => {
            SSModule::block(q, WeilMonomial::new(e.clone(), zeta.clone()), *t)
        }
        Expr::Sum(xs) => {
            let mut it = xs.iter();
            let first = eval(it.next().expect("sum has at least one term"), q)?;
            it.try_fold(first, |acc, x| acc.direct_sum(&eval(x, q)?))?
        }
        Expr::Tensor(a, b) => eval(a, q)?.tensor(&eval(b, q)?)?,
        Expr::Dual(a) => eval(a, q)?.dual(),
        Expr::Twist(a, m) => eval(a, q)?.tate_twist(*m),
        Expr::Restrict(a, f) => eval(a, q)?.restrict(*f)?,
        Expr::Ext2(a) => eval(a, q)?.exterior_square_2dim()?,
    })
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else if self.rest().is_empty() {
            Err(self.error(format!("expected `{c}`, found end of input")))
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    /// Consumes `,` and returns true, or returns false before `)`.
    fn separator(&mut self) -> Result<bool> {
        self.skip_ws();
        match self.rest().chars().next() {
            Some(',') => {
                self.pos += 1;
                Ok(true)
            }
            Some(')') => Ok(false),
            None => Err(self.error("expected `,` or `)`, found end of input")),
            Some(_) => Err(self.error("expected `,` or `)`")),
        }
    }

    fn ident(&mut self) -> Result<(usize, &str)> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_alphanumeric())
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Err(if self.rest().is_empty() {
                self.error("expected an expression, found end of input")
            } else {
                self.error("expected an expression")
            });
        }
        self.pos += len;
        Ok((start, &self.src[start..start + len]))
    }

    fn rational(&mut self) -> Result<(usize, Rational)> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_digit() || c == '-' || c == '/' || c == '+'))
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.error("expected a rational number"));
        }
        let text = &self.src[start..start + len];
        let x = parse_rational(text).map_err(|_| Error::Parse {
            offset: start,
            message: format!("invalid rational `{text}`"),
        })?;
        self.pos += len;
        Ok((start, x))
    }

    fn integer<T: TryFrom<i64>>(&mut self, what: &str, positive: bool) -> Result<T> {
        let (at, x) = self.rational()?;
        let bad = || Error::Parse {
            offset: at,
            message: format!("{what} must be a{} integer, got {x}", if positive { " positive" } else { "n" }),
        };
        if !is_integer(&x) || (positive && !x.is_positive()) {
            return Err(bad());
        }
        x.to_integer()
            .to_i64()
            .and_then(|n| T::try_from(n).ok())
            .ok_or_else(bad)
    }

    fn expr(&mut self) -> Result<Expr> {
        let (at, name) = self.ident()?;
        let name = name.to_string();
        self.expect('(')?;
        let e = match name.as_str() {
            "ind" => {
                let (_, e) = self.rational()?;
                self.expect(',')?;
                let (_, zeta) = self.rational()?;
                self.expect(',')?;
                let t = self.integer::<u32>("block length t", false)?;
                Expr::Ind { e, zeta, t }
            }
            "sum" => {
                let mut xs = vec![self.expr()?];
                while self.separator()? {
                    xs.push(self.expr()?);
                }
                Expr::Sum(xs)
            }
            "tensor" => {
                let a = self.expr()?;
                self.expect(',')?;
                Expr::Tensor(Box::new(a), Box::new(self.expr()?))
            }
            "dual" => Expr::Dual(Box::new(self.expr()?)),
            "ext2" => Expr::Ext2(Box::new(self.expr()?)),
            "twist" => {
                let a = self.expr()?;
                self.expect(',')?;
                Expr::Twist(Box::new(a), self.integer("twist", false)?)
            }
            "restrict" => {
                let a = self.expr()?;
                self.expect(',')?;
                Expr::Restrict(Box::new(a), self.integer("residue degree", true)?)
            }
            other => {
                return Err(Error::Parse {
                    offset: at,
                    message: format!("unknown constructor `{other}`"),
                })
            }
        };
        if self.separator()? {
            return Err(Error::Parse {
                offset: self.pos - 1,
                message: format!("too many arguments to `{name}`"),
            });
        }
        self.expect(')')?;
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn q() -> ResidueCard {
        ResidueCard::new(3).unwrap()
    }

    #[test]
    fn parse_examples() {
        let e = parse("tensor(ind(1,0,1), ind(1,0,1))").unwrap();
        let leaf = Expr::Ind {
            e: int(1),
            zeta: int(0),
            t: 1,
        };
        assert_eq!(e, Expr::Tensor(Box::new(leaf.clone()), Box::new(leaf)));
        let d = parse("dual(dual(ind(1/2,1/2,0)))").unwrap();
        assert_eq!(eval(&d, q()).unwrap(), eval(&parse("ind(1/2, 1/2, 0)").unwrap(), q()).unwrap());
    }

    #[test]
    fn parse_errors() {
        let err = |s: &str| match parse(s) {
            Err(Error::Parse { offset, .. }) => offset,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(err("sum("), 4);
        assert_eq!(err("foo(ind(1,0,0))"), 0);
        assert_eq!(err("ind(1,0)"), 7);
        assert_eq!(err("dual(ind(1,0,0), ind(1,0,0))"), 15);
        assert_eq!(err("ind(1,0,1/2)"), 8);
        assert_eq!(err("restrict(ind(1,0,0), 0)"), 21);
        assert_eq!(err("ind(1,0,0) x"), 11);
        assert_eq!(err("ind(a,0,0)"), 4);
    }

    #[test]
    fn eval_examples() {
        let st = "ind(1/2, 0, 1)";
        let e = parse(&format!("tensor({st}, {st})")).unwrap();
        let out = eval(&e, q()).unwrap();
        let expected = SSModule::block(q(), WeilMonomial::q_power(int(1)), 2)
            .direct_sum(&SSModule::block(q(), WeilMonomial::q_power(int(0)), 0))
            .unwrap();
        assert_eq!(out, expected);
        let one = eval(&parse("ind(1,0,0)").unwrap(), q()).unwrap();
        assert_eq!(one, SSModule::block(q(), WeilMonomial::q_power(int(1)), 0));
        assert_eq!(eval(&e, q()).unwrap().to_string(), out.to_string());
        let twisted = eval(&parse("twist(ind(1, 1/3, 0), -2)").unwrap(), q()).unwrap();
        assert_eq!(twisted, SSModule::block(q(), WeilMonomial::new(int(3), rat(1, 3)), 0));
    }

    #[test]
    fn canonical_print_roundtrip() {
        for s in [
            "sum(ind(1/2, 1/3, 0), ext2(sum(ind(0, 0, 0), ind(1, 0, 0))))",
            "restrict(twist(dual(ind(-3/2, 5/6, 2)), -1), 3)",
        ] {
            let e = parse(s).unwrap();
            assert_eq!(e.to_string(), s);
            assert_eq!(parse(&e.to_string()).unwrap(), e);
        }
        assert_eq!(parse(" sum ( ind(1,0,0) ,ind( 2 , 0 , 0 ) ) ").unwrap().to_string(), "sum(ind(1, 0, 0), ind(2, 0, 0))");
    }
}
