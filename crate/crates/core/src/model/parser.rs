//! Recursive-descent parser for the monoid description language.
//!
//! ```text
//! expr   := scaled ( "union" scaled )*
//! scaled := [ rat "*" ] atom
//! atom   := "N" | "<" rat ("," rat)* ">" | "S(" rat ")" | "T(" rat ")"
//!         | "PR" | "PF" | "ID" | "FA(" int "," int "," int ")" | "(" expr ")"
//! rat    := int [ "/" int ]
//! ```
//!
//! Whitespace is insignificant. Positions in errors are byte offsets.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{ToPrimitive, Zero};

use super::{ModelError, MonoidExpr};
use crate::exact::Rat;

const MAX_NESTING: usize = 200;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int { negative: bool, value: BigUint },
    Word(String),
    Punct(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl Lexer<'_> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn next(&mut self) -> Result<(Tok, usize), ModelError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let Some(c) = rest.chars().next() else {
            return Ok((Tok::End, start));
        };
        if c == '-' || c.is_ascii_digit() {
            let body = if c == '-' { &rest[1..] } else { rest };
            let len = body
                .find(|ch: char| !ch.is_ascii_digit())
                .unwrap_or(body.len());
            if len == 0 {
                return Err(syntax(start + 1, "digit after '-'"));
            }
            let value = BigUint::parse_bytes(&body.as_bytes()[..len], 10).expect("digits only");
            self.pos = start + (rest.len() - body.len()) + len;
            return Ok((
                Tok::Int {
                    negative: c == '-',
                    value,
                },
                start,
            ));
        }
        if c.is_ascii_alphabetic() {
            let len = rest
                .find(|ch: char| !ch.is_ascii_alphabetic())
                .unwrap_or(rest.len());
            self.pos = start + len;
            return Ok((Tok::Word(rest[..len].to_string()), start));
        }
        if "<>(),*/".contains(c) {
            self.pos = start + 1;
            return Ok((Tok::Punct(c), start));
        }
        Err(syntax(start, "a token"))
    }
}

fn syntax(position: usize, expected: &str) -> ModelError {
    ModelError::Syntax {
        position,
        expected: expected.to_string(),
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    at: usize,
    nesting: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Parser<'a>, ModelError> {
        let mut lexer = Lexer { src, pos: 0 };
        let (tok, at) = lexer.next()?;
        Ok(Parser {
            lexer,
            tok,
            at,
            nesting: 0,
        })
    }

    fn bump(&mut self) -> Result<(Tok, usize), ModelError> {
        let (tok, at) = self.lexer.next()?;
        let prev = std::mem::replace(&mut self.tok, tok);
        let prev_at = std::mem::replace(&mut self.at, at);
        Ok((prev, prev_at))
    }

    fn expect_punct(&mut self, c: char) -> Result<(), ModelError> {
        if self.tok == Tok::Punct(c) {
            self.bump()?;
            Ok(())
        } else {
            Err(syntax(self.at, &format!("'{c}'")))
        }
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(&self.tok, Tok::Word(s) if s == w)
    }

    fn expr(&mut self) -> Result<MonoidExpr, ModelError> {
        let mut parts = vec![self.scaled()?];
        while self.is_word("union") {
            self.bump()?;
            parts.push(self.scaled()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("one part")
        } else {
            MonoidExpr::union_all(parts)
        })
    }

    fn scaled(&mut self) -> Result<MonoidExpr, ModelError> {
        if matches!(self.tok, Tok::Int { .. }) {
            let at = self.at;
            let c = self.rat()?;
            self.expect_punct('*')?;
            let inner = self.atom()?;
            MonoidExpr::scale(c, inner).map_err(|e| e.at(at))
        } else {
            self.atom()
        }
    }

    fn int(&mut self) -> Result<(bool, BigUint, usize), ModelError> {
        match self.bump()? {
            (Tok::Int { negative, value }, at) => Ok((negative, value, at)),
            (_, at) => Err(syntax(at, "integer")),
        }
    }

    fn rat(&mut self) -> Result<Rat, ModelError> {
        let (neg_n, num, at) = self.int()?;
        let (neg_d, den) = if self.tok == Tok::Punct('/') {
            self.bump()?;
            let (neg, den, _) = self.int()?;
            (neg, den)
        } else {
            (false, BigUint::from(1u32))
        };
        if den.is_zero() {
            return Err(ModelError::Validation {
                position: at,
                message: "zero denominator".into(),
            });
        }
        if neg_n != neg_d && !num.is_zero() {
            let text = format!(
                "-{num}{}",
                if den == BigUint::from(1u32) {
                    String::new()
                } else {
                    format!("/{den}")
                }
            );
            return Err(ModelError::NegativeGenerator {
                position: at,
                value: text,
            });
        }
        let sign = |neg: bool| if neg { Sign::Minus } else { Sign::Plus };
        Rat::new(
            BigInt::from_biguint(sign(neg_n), num),
            BigInt::from_biguint(sign(neg_d), den),
        )
        .map_err(|e| ModelError::Validation {
            position: at,
            message: e.to_string(),
        })
    }

    fn small_int(&mut self) -> Result<u64, ModelError> {
        let (negative, value, at) = self.int()?;
        if negative && !value.is_zero() {
            return Err(ModelError::NegativeGenerator {
                position: at,
                value: format!("-{value}"),
            });
        }
        value.to_u64().ok_or_else(|| ModelError::Validation {
            position: at,
            message: format!("{value} exceeds 64 bits"),
        })
    }

    fn paren_rat(&mut self) -> Result<Rat, ModelError> {
        self.expect_punct('(')?;
        let r = self.rat()?;
        self.expect_punct(')')?;
        Ok(r)
    }

    fn atom(&mut self) -> Result<MonoidExpr, ModelError> {
        let at = self.at;
        match self.tok.clone() {
            Tok::Punct('<') => {
                self.bump()?;
                let mut gens = vec![self.rat()?];
                while self.tok == Tok::Punct(',') {
                    self.bump()?;
                    gens.push(self.rat()?);
                }
                self.expect_punct('>')?;
                MonoidExpr::finite_gen(gens).map_err(|e| e.at(at))
            }
            Tok::Punct('(') => {
                self.nesting += 1;
                if self.nesting > MAX_NESTING {
                    return Err(syntax(at, "at most 200 nested parentheses"));
                }
                self.bump()?;
                let inner = self.expr()?;
                self.expect_punct(')')?;
                self.nesting -= 1;
                Ok(inner)
            }
            Tok::Word(w) => {
                self.bump()?;
                match w.as_str() {
                    "N" => Ok(MonoidExpr::naturals()),
                    "PR" => Ok(MonoidExpr::PrimeReciprocal),
                    "PF" => Ok(MonoidExpr::PrimeFracIncreasing),
                    "ID" => Ok(MonoidExpr::IncreasingDenom),
                    "S" => {
                        let r = self.paren_rat()?;
                        MonoidExpr::cyclic_semiring(r).map_err(|e| e.at(at))
                    }
                    "T" => {
                        let r = self.paren_rat()?;
                        MonoidExpr::dense_tail(r).map_err(|e| e.at(at))
                    }
                    "FA" => {
                        self.expect_punct('(')?;
                        let m = self.small_int()?;
                        self.expect_punct(',')?;
                        let p = self.small_int()?;
                        self.expect_punct(',')?;
                        let q = self.small_int()?;
                        self.expect_punct(')')?;
                        MonoidExpr::finite_atom_example(m, p, q).map_err(|e| e.at(at))
                    }
                    _ => Err(syntax(
                        at,
                        "a monoid (N, <..>, S(..), T(..), PR, PF, ID, FA(..) or '(')",
                    )),
                }
            }
            _ => Err(syntax(
                at,
                "a monoid (N, <..>, S(..), T(..), PR, PF, ID, FA(..) or '(')",
            )),
        }
    }
}

/// Parses a monoid description into canonical form.
pub fn parse(text: &str) -> Result<MonoidExpr, ModelError> {
    let mut p = Parser::new(text)?;
    let m = p.expr()?;
    if p.tok != Tok::End {
        return Err(syntax(p.at, "'union' or end of input"));
    }
    Ok(m)
}
