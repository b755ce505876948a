//! Text grammars for forests, polynomials and indices.
//!
//! ```text
//! forest sum  := term (('+' | '-') term)*
//! term        := [coeff ['*']] body | coeff
//! body        := '1' | tree+
//! tree        := '[' tree* ']'
//! polynomial  := term (('+' | '-') term)*   with body := '1' | letter+
//! letter      := 'x' | 'y' digits
//! coeff       := digits ['/' digits]
//! index       := k (',' k)* ';' j (',' j)*
//! ```
//!
//! A leading sign is allowed. Offsets in errors are byte offsets.

use crate::error::{Error, Result};
use crate::hopf::{Forest, ForestSum, Tree};
use crate::rational::Rational;
use crate::words::{Letter, MLVIndex, NCPoly, RootIndex, Word, MAX_MODULUS};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek_raw()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn eat(&mut self, want: char) -> bool {
        if self.peek() == Some(want) {
            self.pos += want.len_utf8();
            true
        } else {
            false
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { offset: self.pos, message: message.into() })
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek_raw().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.text[start..self.pos])
    }

    fn at_digit(&mut self) -> bool {
        self.peek().is_some_and(|c| c.is_ascii_digit())
    }

    /// `digits ['/' digits]`, cursor on the first digit.
    fn rational(&mut self) -> Result<Rational> {
        let start = self.pos;
        self.digits();
        if self.peek_raw() == Some('/') {
            self.pos += 1;
            if self.digits().is_none() {
                return self.error("expected denominator");
            }
        }
        let lit = &self.text[start..self.pos];
        lit.parse::<Rational>().map_err(|_| Error::Syntax {
            offset: start,
            message: format!("bad coefficient {lit}"),
        })
    }

    fn finished(&mut self) -> bool {
        self.peek().is_none()
    }
}

/// Parses a signed sum of terms, delegating each body to `body`.
///
/// `body` returns `None` when there is no body at the cursor.
fn parse_sum<T>(
    cur: &mut Cursor<'_>,
    unit: T,
    mut body: impl FnMut(&mut Cursor<'_>) -> Result<Option<T>>,
    mut push: impl FnMut(T, Rational),
) -> Result<()>
where
    T: Clone,
{
    if cur.finished() {
        return cur.error("empty input");
    }
    let mut first = true;
    loop {
        let mut sign = Rational::from_integer(1);
        if cur.eat('-') {
            sign = -sign;
        } else if !cur.eat('+') && !first {
            return cur.error("expected '+' or '-'");
        }
        first = false;
        if cur.finished() {
            return cur.error("expected a term");
        }
        let mut coeff = Rational::from_integer(1);
        if cur.at_digit() {
            let c = cur.rational()?;
            let starred = cur.eat('*');
            if starred || body_follows(cur) {
                coeff = c;
            } else {
                push(unit.clone(), &sign * &c);
                if cur.finished() {
                    return Ok(());
                }
                continue;
            }
        }
        match body(cur)? {
            Some(t) => push(t, &sign * &coeff),
            None => return cur.error("expected a term"),
        }
        if cur.finished() {
            return Ok(());
        }
    }
}

fn body_follows(cur: &mut Cursor<'_>) -> bool {
    matches!(cur.peek(), Some('[' | 'x' | 'y' | '1'))
}

fn parse_tree(cur: &mut Cursor<'_>) -> Result<Tree> {
    if !cur.eat('[') {
        return cur.error("expected '['");
    }
    let mut children = Vec::new();
    loop {
        match cur.peek() {
            Some('[') => children.push(parse_tree(cur)?),
            Some(']') => {
                cur.bump();
                return Ok(Tree::from_children(children));
            }
            None => return cur.error("expected ']'"),
            Some(c) => return cur.error(format!("unexpected '{c}' in tree")),
        }
    }
}

fn forest_body(cur: &mut Cursor<'_>) -> Result<Option<Forest>> {
    if cur.peek() == Some('1') {
        cur.bump();
        return Ok(Some(Forest::unit()));
    }
    let mut trees = Vec::new();
    while cur.peek() == Some('[') {
        trees.push(parse_tree(cur)?);
    }
    Ok((!trees.is_empty()).then(|| Forest::from_trees(trees)))
}

/// Parses a forest sum such as `[] [] - 2*[[]]`. `1` is the empty forest.
pub fn parse_forest(text: &str) -> Result<ForestSum> {
    let mut cur = Cursor::new(text);
    let mut out = ForestSum::zero();
    if cur.peek() == Some('0') && text.trim() == "0" {
        return Ok(out);
    }
    parse_sum(&mut cur, Forest::unit(), forest_body, |f, c| out.add_term(f, c))?;
    Ok(out)
}

fn parse_letter(cur: &mut Cursor<'_>, r: u32) -> Result<Option<Letter>> {
    match cur.peek() {
        Some('x') => {
            cur.bump();
            Ok(Some(Letter::X))
        }
        Some('y') => {
            let start = cur.pos;
            cur.bump();
            let Some(d) = cur.digits() else {
                return cur.error("expected twist exponent after 'y'");
            };
            let j: u32 = d.parse().map_err(|_| Error::Syntax { offset: start, message: "twist too large".into() })?;
            if j >= r {
                return Err(Error::TwistOutOfRange { j, r });
            }
            Ok(Some(Letter::y(j)))
        }
        _ => Ok(None),
    }
}

fn word_body(cur: &mut Cursor<'_>, r: u32) -> Result<Option<Word>> {
    if cur.peek() == Some('1') {
        cur.bump();
        return Ok(Some(Word::empty()));
    }
    let mut letters = Vec::new();
    while let Some(l) = parse_letter(cur, r)? {
        letters.push(l);
    }
    Ok((!letters.is_empty()).then(|| Word::from_letters(&letters)))
}

fn check_r(r: u32) -> Result<()> {
    if (1..=MAX_MODULUS).contains(&r) {
        Ok(())
    } else {
        Err(Error::BadModulus(r))
    }
}

/// Parses a polynomial such as `1/2*x y1 - y1 x` for modulus `r`.
pub fn parse_poly(text: &str, r: u32) -> Result<NCPoly> {
    check_r(r)?;
    let mut cur = Cursor::new(text);
    let mut out = NCPoly::zero(r);
    if text.trim() == "0" {
        return Ok(out);
    }
    parse_sum(&mut cur, Word::empty(), |c| word_body(c, r), |w, c| out.add_term(w, c))?;
    Ok(out)
}

/// Alias of [`parse_poly`]; a single word is a one-term polynomial.
pub fn parse_word(text: &str, r: u32) -> Result<NCPoly> {
    parse_poly(text, r)
}

fn int_list(cur: &mut Cursor<'_>) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    loop {
        cur.skip_ws();
        let start = cur.pos;
        let Some(d) = cur.digits() else {
            return cur.error("expected an integer");
        };
        out.push(d.parse().map_err(|_| Error::Syntax { offset: start, message: "integer too large".into() })?);
        if !cur.eat(',') {
            return Ok(out);
        }
    }
}

/// Parses `k1,…,kl;j1,…,jl` where `jᵢ` is the exponent of `sᵢ = exp(2πi jᵢ/r)`.
pub fn parse_index(text: &str, r: u32) -> Result<MLVIndex> {
    check_r(r)?;
    let mut cur = Cursor::new(text);
    let k = int_list(&mut cur)?;
    if !cur.eat(';') {
        return cur.error("expected ';'");
    }
    let j = int_list(&mut cur)?;
    if !cur.finished() {
        return cur.error("trailing input");
    }
    if let Some(&bad) = j.iter().find(|&&j| j >= r) {
        return Err(Error::TwistOutOfRange { j: bad, r });
    }
    if k.len() != j.len() {
        return Err(Error::InvalidArgument(format!("{} exponents but {} twists", k.len(), j.len())));
    }
    MLVIndex::new(k, j.into_iter().map(|j| RootIndex::new(j, r)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{forest_sum, ForestSumDisplay};

    #[test]
    fn cherry() {
        let got = parse_forest("[[][]]").unwrap();
        assert_eq!(got, forest_sum(Forest::tree(Tree::corolla(2))));
    }

    #[test]
    fn forest_sum_literal() {
        let got = parse_forest("[] [] - 2*[[]]").unwrap();
        let mut want = forest_sum(Forest::from_trees(vec![Tree::vertex(), Tree::vertex()]));
        want.add_term(Forest::tree(Tree::ladder(2)), Rational::from_integer(-2));
        assert_eq!(got, want);
        assert_eq!(ForestSumDisplay(&got).to_string(), "[] [] - 2*[[]]");
    }

    #[test]
    fn unit_and_constants() {
        assert_eq!(parse_forest("1").unwrap(), forest_sum(Forest::unit()));
        let got = parse_forest("3 - 1/2*[]").unwrap();
        assert_eq!(got.coeff(&Forest::unit()), Rational::from_integer(3));
        assert_eq!(got.coeff(&Forest::tree(Tree::vertex())), Rational::new(-1, 2));
        assert!(parse_forest("0").unwrap().is_zero());
    }

    #[test]
    fn unclosed_tree_offset() {
        assert_eq!(parse_forest("[[]"), Err(Error::Syntax { offset: 3, message: "expected ']'".into() }));
    }

    #[test]
    fn forest_errors() {
        assert!(matches!(parse_forest(""), Err(Error::Syntax { offset: 0, .. })));
        assert!(matches!(parse_forest("[] ]"), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse_forest("2*"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_forest("[] +"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn words() {
        let p = parse_word("x y0 y0", 1).unwrap();
        assert_eq!(p, NCPoly::word(1, Word::from_letters(&[Letter::X, Letter::Y, Letter::Y])));
        let q = parse_poly("1/2*x y1 - y1 x", 2).unwrap();
        assert_eq!(q.len(), 2);
        assert_eq!(q.coeff(&Word::from_letters(&[Letter::X, Letter::y(1)])), Rational::new(1, 2));
        assert_eq!(q.coeff(&Word::from_letters(&[Letter::y(1), Letter::X])), Rational::from_integer(-1));
        assert_eq!(parse_poly(&q.to_string(), 2).unwrap(), q);
        assert_eq!(parse_word("y3", 2), Err(Error::TwistOutOfRange { j: 3, r: 2 }));
        assert_eq!(parse_poly("1 + x", 1).unwrap().to_string(), "x + 1");
        assert_eq!(parse_poly("1 x", 1).unwrap().to_string(), "x");
        assert!(parse_poly("0", 3).unwrap().is_zero());
        assert!(matches!(parse_poly("x z", 1), Err(Error::Syntax { offset: 2, .. })));
    }

    #[test]
    fn indices() {
        let ix = parse_index("2,1;0,1", 2).unwrap();
        assert_eq!(ix.k, vec![2, 1]);
        assert_eq!(ix.j(), vec![0, 1]);
        assert!(matches!(parse_index("1;0", 1), Ok(ix) if !ix.is_admissible()));
        assert!(parse_index("1;2", 2).is_err());
        assert!(parse_index("1,2;0", 2).is_err());
    }
}
