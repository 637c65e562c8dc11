//! Expression syntax:
//!
//! ```text
//! expr   := [+|-] term (( + | - ) term)*
//! term   := factor factor*            (juxtaposition is the product)
//! factor := atom '*'*                 (postfix star)
//! atom   := NUMBER ['/' NUMBER] | IDENT | '(' expr ')'
//! ```
//!
//! An identifier that is not declared in the graph but splits uniquely into
//! declared ids is read as their product, so `ab` means `a b` when only `a`
//! and `b` exist. A star after such an identifier applies to its last piece.
//! `·` may be used as an explicit product sign.

use crate::algebra::{AlgebraError, Algebra, RawElement, Symbol};
use crate::graph::GraphItem;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(String),
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, AlgebraError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            c if c.is_whitespace() || c == '·' => i += 1,
            '+' => {
                out.push((Tok::Plus, col));
                i += 1;
            }
            '-' | '−' => {
                out.push((Tok::Minus, col));
                i += 1;
            }
            '*' => {
                out.push((Tok::Star, col));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, col));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && chars[i] == '/' {
                    i += 1;
                    let den = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    if den == i {
                        return Err(AlgebraError::Syntax {
                            column: i + 1,
                            message: "expected a denominator after `/`".into(),
                        });
                    }
                }
                out.push((Tok::Number(chars[start..i].iter().collect()), col));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            }
            other => {
                return Err(AlgebraError::Syntax {
                    column: col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a, 'g> {
    alg: &'a Algebra<'g>,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

pub(crate) fn parse(alg: &Algebra<'_>, text: &str) -> Result<RawElement, AlgebraError> {
    let mut p = Parser {
        alg,
        toks: tokenize(text)?,
        pos: 0,
        end_col: text.chars().count() + 1,
    };
    if p.toks.is_empty() {
        return Err(AlgebraError::Syntax {
            column: 1,
            message: "empty expression".into(),
        });
    }
    let x = p.expr()?;
    if let Some((t, col)) = p.toks.get(p.pos) {
        return Err(AlgebraError::Syntax {
            column: *col,
            message: format!("unexpected {t:?}"),
        });
    }
    Ok(x)
}

impl Parser<'_, '_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn expr(&mut self) -> Result<RawElement, AlgebraError> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Plus) => self.pos += 1,
            Some(Tok::Minus) => {
                negate = true;
                self.pos += 1;
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.add(self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RawElement, AlgebraError> {
        let mut acc = self.factor()?;
        while matches!(
            self.peek(),
            Some(Tok::Ident(_) | Tok::Number(_) | Tok::LParen)
        ) {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RawElement, AlgebraError> {
        let col = self.col();
        let tok = self.peek().cloned();
        let one = self.alg.one();
        match tok {
            Some(Tok::Number(n)) => {
                self.pos += 1;
                let c = self.alg.field().parse_scalar(&n)?;
                let mut x = RawElement::word(c, vec![]);
                while self.peek() == Some(&Tok::Star) {
                    self.pos += 1;
                    x = x.star();
                }
                Ok(x)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let mut word = self.resolve(&name, col)?;
                while self.peek() == Some(&Tok::Star) {
                    self.pos += 1;
                    let last = word.last_mut().expect("resolved identifiers are nonempty");
                    *last = last.star();
                }
                Ok(RawElement::word(one, word))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(AlgebraError::Syntax {
                        column: self.col(),
                        message: "expected `)`".into(),
                    });
                }
                self.pos += 1;
                let mut x = inner;
                while self.peek() == Some(&Tok::Star) {
                    self.pos += 1;
                    x = x.star();
                }
                Ok(x)
            }
            Some(t) => Err(AlgebraError::Syntax {
                column: col,
                message: format!("unexpected {t:?}"),
            }),
            None => Err(AlgebraError::Syntax {
                column: col,
                message: "unexpected end of input".into(),
            }),
        }
    }

    fn resolve(&self, name: &str, column: usize) -> Result<Vec<Symbol>, AlgebraError> {
        let g = self.alg.graph();
        let to_symbol = |item: GraphItem| match item {
            GraphItem::Vertex(v) => Symbol::Vertex(v),
            GraphItem::Edge(e) => Symbol::Edge(e),
        };
        if let Some(item) = g.lookup(name) {
            return Ok(vec![to_symbol(item)]);
        }
        // ways[i]: number of splittings of name[i..] (capped at 2) and the first piece length.
        let chars: Vec<char> = name.chars().collect();
        let n = chars.len();
        let mut ways = vec![(0u8, 0usize); n + 1];
        ways[n] = (1, 0);
        for i in (0..n).rev() {
            for j in i + 1..=n {
                let piece: String = chars[i..j].iter().collect();
                if ways[j].0 > 0 && g.lookup(&piece).is_some() {
                    let total = (ways[i].0 + ways[j].0).min(2);
                    if ways[i].0 == 0 {
                        ways[i].1 = j - i;
                    }
                    ways[i].0 = total;
                }
            }
        }
        if ways[0].0 != 1 {
            return Err(AlgebraError::Undeclared {
                name: name.to_string(),
                column,
            });
        }
        let mut out = Vec::new();
        let mut i = 0;
        while i < n {
            let len = ways[i].1;
            let piece: String = chars[i..i + len].iter().collect();
            out.push(to_symbol(g.lookup(&piece).expect("piece was matched")));
            i += len;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use crate::algebra::{AlgebraError, Algebra};
    use crate::fixtures;
    use crate::scalar::Field;

    #[test]
    fn examples() {
        let g4 = fixtures::g4();
        let alg = Algebra::new(&g4, Field::Rational);
        assert_eq!(alg.render(&alg.parse("v + 2 g").unwrap()), "2 g + v");
        assert_eq!(alg.render(&alg.parse("(v + g)*").unwrap()), "g* + v");
        assert_eq!(alg.render(&alg.parse("2/4 g g").unwrap()), "1/2 g g");
    }

    #[test]
    fn juxtaposed_ids_split_uniquely() {
        let g = fixtures::g8();
        let alg = Algebra::new(&g, Field::Rational);
        assert_eq!(alg.parse("u - ab").unwrap(), alg.parse("u - a b").unwrap());
        assert_eq!(alg.parse("ab*").unwrap(), alg.parse("a b*").unwrap());
    }

    #[test]
    fn errors_carry_columns() {
        let g = fixtures::g1();
        let alg = Algebra::new(&g, Field::Rational);
        assert_eq!(
            alg.parse("e1 + x"),
            Err(AlgebraError::Undeclared {
                name: "x".into(),
                column: 6
            })
        );
        assert!(matches!(alg.parse("(e1"), Err(AlgebraError::Syntax { column: 4, .. })));
        assert!(matches!(alg.parse("e1 ? e2"), Err(AlgebraError::Syntax { column: 4, .. })));
        assert!(matches!(alg.parse(""), Err(AlgebraError::Syntax { .. })));
        assert!(matches!(alg.parse("e1 +"), Err(AlgebraError::Syntax { .. })));
        assert!(alg.parse("1/0 v").is_err());
    }
}
