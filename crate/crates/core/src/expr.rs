//! The element-expression language shared by every ring, and the JSON
//! mirror of the canonical text form.
//!
//! Grammar (whitespace-insensitive, explicit `*` only):
//!
//! ```text
//! expr     := ['-'] term (('+' | '-') term)*
//! term     := rational ['*' factor ('*' factor)*]
//!           | factor ('*' factor)*
//! factor   := atom ['^' nat]
//! atom     := 'e[' int ']' | 'E[' nat ']' | 'v[' nat ']' | 't' | 'd'
//! rational := nat ['/' nat]
//! ```
//!
//! `d` denotes ∂; the Unicode character `∂` is accepted on input only.
//! Which atoms are legal depends on the declared ring, and expressions are
//! normal-ordered in that ring as they are parsed, so `parse` ∘ `print`
//! is the identity on canonical forms.

use std::str::FromStr;

use serde_json::{json, Value};

use crate::commutative::{CommAlphabet, CommAtom, CommutativeElement};
use crate::error::{Error, Result};
use crate::scalar::Rational;
use crate::target::{TargetContext, TargetElement};
use crate::witt::WittElement;

/// The ring an expression is parsed into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingTag {
    /// U(W_{≥-1}); atoms e[i].
    Witt,
    /// T_n or T_∞; atoms t, d, v[j] (finite) or E[j] (infinite).
    Target(TargetContext),
    /// S(W_{≥-1}); atoms e[i] read as ē_i.
    Sym,
    /// gr T_n or gr T_∞; atoms t, d, v[j] / E[j] read as bars.
    GrTarget(TargetContext),
}

impl FromStr for RingTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_n = |suffix: &str, whole: &str| -> Result<TargetContext> {
            if suffix == "inf" || suffix == "infinity" {
                Ok(TargetContext::Infinity)
            } else {
                suffix
                    .parse::<u32>()
                    .map(TargetContext::N)
                    .map_err(|_| Error::Parse {
                        position: 0,
                        message: format!("unknown ring tag `{whole}`"),
                    })
            }
        };
        match s {
            "uw" => Ok(RingTag::Witt),
            "s" => Ok(RingTag::Sym),
            _ => {
                if let Some(rest) = s.strip_prefix("grt:") {
                    Ok(RingTag::GrTarget(parse_n(rest, s)?))
                } else if let Some(rest) = s.strip_prefix("t:") {
                    Ok(RingTag::Target(parse_n(rest, s)?))
                } else {
                    Err(Error::Parse {
                        position: 0,
                        message: format!("unknown ring tag `{s}`"),
                    })
                }
            }
        }
    }
}

/// A parsed element of whichever ring the tag selected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Witt(WittElement),
    Target(TargetElement),
    Commutative(CommutativeElement),
}

impl Element {
    pub fn canonical(&self) -> String {
        match self {
            Element::Witt(x) => x.to_string(),
            Element::Target(x) => x.to_string(),
            Element::Commutative(x) => x.to_string(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Element::Witt(x) => x.is_zero(),
            Element::Target(x) => x.is_zero(),
            Element::Commutative(x) => x.is_zero(),
        }
    }
}

impl std::fmt::Display for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.canonical())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(u64),
    Ident(char),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LBracket,
    RBracket,
}

struct Lexer {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    len: usize,
}

impl Lexer {
    fn new(text: &str) -> Result<Self> {
        let mut tokens = Vec::new();
        let bytes: Vec<(usize, char)> = text.char_indices().collect();
        let mut i = 0;
        while i < bytes.len() {
            let (at, c) = bytes[i];
            match c {
                ' ' | '\t' | '\n' | '\r' => {
                    i += 1;
                }
                '+' => {
                    tokens.push((at, Token::Plus));
                    i += 1;
                }
                '-' => {
                    tokens.push((at, Token::Minus));
                    i += 1;
                }
                '*' => {
                    tokens.push((at, Token::Star));
                    i += 1;
                }
                '/' => {
                    tokens.push((at, Token::Slash));
                    i += 1;
                }
                '^' => {
                    tokens.push((at, Token::Caret));
                    i += 1;
                }
                '[' => {
                    tokens.push((at, Token::LBracket));
                    i += 1;
                }
                ']' => {
                    tokens.push((at, Token::RBracket));
                    i += 1;
                }
                '0'..='9' => {
                    let mut value: u64 = 0;
                    while i < bytes.len() && bytes[i].1.is_ascii_digit() {
                        value = value
                            .checked_mul(10)
                            .and_then(|v| v.checked_add(bytes[i].1 as u64 - '0' as u64))
                            .ok_or(Error::Parse {
                                position: at,
                                message: "integer literal too large".into(),
                            })?;
                        i += 1;
                    }
                    tokens.push((at, Token::Int(value)));
                }
                'e' | 'E' | 'v' | 't' | 'd' => {
                    tokens.push((at, Token::Ident(c)));
                    i += 1;
                }
                '∂' => {
                    tokens.push((at, Token::Ident('d')));
                    i += 1;
                }
                other => {
                    return Err(Error::Parse {
                        position: at,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            }
        }
        let len = text.len();
        Ok(Lexer { tokens, pos: 0, len })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.len)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<()> {
        let at = self.here();
        match self.next() {
            Some(t) if t == want => Ok(()),
            _ => Err(Error::Parse { position: at, message: format!("expected {what}") }),
        }
    }
}

/// Ring-generic accumulation: a term is a coefficient times an ordered
/// product of powered atoms, multiplied out (and so normal-ordered) in the
/// declared ring.
enum Builder {
    Witt(WittElement),
    Target(TargetElement),
    Commutative(CommutativeElement),
}

impl Builder {
    fn scalar(ring: RingTag, c: Rational) -> Self {
        match ring {
            RingTag::Witt => Builder::Witt(WittElement::scalar(c)),
            RingTag::Target(ctx) => Builder::Target(TargetElement::scalar(ctx, c)),
            RingTag::Sym => {
                Builder::Commutative(CommutativeElement::scalar(CommAlphabet::SymWitt, c))
            }
            RingTag::GrTarget(ctx) => {
                Builder::Commutative(CommutativeElement::scalar(CommAlphabet::GrTarget(ctx), c))
            }
        }
    }

    fn into_element(self) -> Element {
        match self {
            Builder::Witt(x) => Element::Witt(x),
            Builder::Target(x) => Element::Target(x),
            Builder::Commutative(x) => Element::Commutative(x),
        }
    }
}

struct Parser {
    lexer: Lexer,
    ring: RingTag,
}

impl Parser {
    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: self.lexer.here(), message: message.into() })
    }

    fn parse_expr(&mut self) -> Result<Element> {
        let mut negate = false;
        if matches!(self.lexer.peek(), Some(Token::Minus)) {
            self.lexer.next();
            negate = true;
        }
        let mut acc = self.parse_term(negate)?;
        loop {
            match self.lexer.peek() {
                None => return Ok(acc.into_element()),
                Some(Token::Plus) => {
                    self.lexer.next();
                    let term = self.parse_term(false)?;
                    acc = self.combine(acc, term)?;
                }
                Some(Token::Minus) => {
                    self.lexer.next();
                    let term = self.parse_term(true)?;
                    acc = self.combine(acc, term)?;
                }
                Some(_) => return self.fail("expected `+`, `-`, or end of expression"),
            }
        }
    }

    fn combine(&self, acc: Builder, term: Builder) -> Result<Builder> {
        Ok(match (acc, term) {
            (Builder::Witt(a), Builder::Witt(b)) => Builder::Witt(&a + &b),
            (Builder::Target(a), Builder::Target(b)) => Builder::Target(a.add(&b)?),
            (Builder::Commutative(a), Builder::Commutative(b)) => Builder::Commutative(a.add(&b)?),
            _ => unreachable!("terms of one expression share the ring"),
        })
    }

    fn parse_term(&mut self, negate: bool) -> Result<Builder> {
        let mut coeff = Rational::one();
        let mut saw_coefficient = false;
        if let Some(Token::Int(_)) = self.lexer.peek() {
            coeff = self.parse_rational()?;
            saw_coefficient = true;
        }
        if negate {
            coeff = -coeff;
        }
        let mut acc = Builder::scalar(self.ring, coeff);
        if saw_coefficient {
            match self.lexer.peek() {
                Some(Token::Star) => {
                    self.lexer.next();
                }
                // a bare rational constant term
                _ => return Ok(acc),
            }
        }
        loop {
            acc = self.parse_factor(acc)?;
            match self.lexer.peek() {
                Some(Token::Star) => {
                    self.lexer.next();
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_rational(&mut self) -> Result<Rational> {
        let p = match self.lexer.next() {
            Some(Token::Int(p)) => p,
            _ => return self.fail("expected an integer"),
        };
        if matches!(self.lexer.peek(), Some(Token::Slash)) {
            self.lexer.next();
            let at = self.lexer.here();
            let q = match self.lexer.next() {
                Some(Token::Int(q)) if q > 0 => q,
                Some(Token::Int(_)) => {
                    return Err(Error::Parse {
                        position: at,
                        message: "denominator must be positive".into(),
                    })
                }
                _ => return self.fail("expected a positive denominator"),
            };
            Ok(Rational::new(p as i64, q as i64).expect("q > 0"))
        } else {
            Ok(Rational::from_int(p as i64))
        }
    }

    /// Parses one powered atom and multiplies it onto `acc` in ring order.
    fn parse_factor(&mut self, acc: Builder) -> Result<Builder> {
        let at = self.lexer.here();
        let name = match self.lexer.next() {
            Some(Token::Ident(c)) => c,
            _ => {
                return Err(Error::Parse {
                    position: at,
                    message: "expected an atom (e[i], E[j], v[j], t, d)".into(),
                })
            }
        };
        let index = match name {
            'e' | 'E' | 'v' => Some(self.parse_index()?),
            _ => None,
        };
        let power = self.parse_power()?;
        self.apply_atom(acc, name, index, power, at)
    }

    fn parse_index(&mut self) -> Result<i64> {
        self.lexer.expect(Token::LBracket, "`[`")?;
        let mut sign = 1i64;
        if matches!(self.lexer.peek(), Some(Token::Minus)) {
            self.lexer.next();
            sign = -1;
        }
        let at = self.lexer.here();
        let value = match self.lexer.next() {
            Some(Token::Int(v)) => v as i64,
            _ => {
                return Err(Error::Parse { position: at, message: "expected an index".into() })
            }
        };
        self.lexer.expect(Token::RBracket, "`]`")?;
        Ok(sign * value)
    }

    fn parse_power(&mut self) -> Result<u32> {
        if !matches!(self.lexer.peek(), Some(Token::Caret)) {
            return Ok(1);
        }
        self.lexer.next();
        let at = self.lexer.here();
        match self.lexer.next() {
            Some(Token::Int(v)) if v >= 1 => u32::try_from(v).map_err(|_| Error::Parse {
                position: at,
                message: "exponent too large".into(),
            }),
            _ => Err(Error::Parse {
                position: at,
                message: "expected a positive integer exponent".into(),
            }),
        }
    }

    fn apply_atom(
        &self,
        acc: Builder,
        name: char,
        index: Option<i64>,
        power: u32,
        at: usize,
    ) -> Result<Builder> {
        let context_error = |atom: String| Error::Parse {
            position: at,
            message: format!("atom {atom} is not part of the declared ring"),
        };
        let index_error = |atom: String| Error::Parse {
            position: at,
            message: format!("index out of domain for {atom}"),
        };
        match acc {
            Builder::Witt(x) => {
                if name != 'e' {
                    return Err(context_error(name.to_string()));
                }
                let i = index.expect("e carries an index");
                if i < -1 {
                    return Err(index_error(format!("e[{i}]")));
                }
                let gen = WittElement::generator(i).expect("index checked");
                Ok(Builder::Witt(&x * &gen.pow(power)))
            }
            Builder::Target(x) => {
                let ctx = x.context();
                let factor = match (name, ctx) {
                    ('t', _) => TargetElement::t(ctx),
                    ('d', _) => TargetElement::d(ctx),
                    ('v', TargetContext::N(_)) | ('E', TargetContext::Infinity) => {
                        let j = index.expect("mode carries an index");
                        if j < 0 {
                            return Err(index_error(format!("{name}[{j}]")));
                        }
                        TargetElement::mode(ctx, j as u32)
                            .map_err(|_| index_error(format!("{name}[{j}]")))?
                    }
                    _ => return Err(context_error(name.to_string())),
                };
                Ok(Builder::Target(x.mul(&factor.pow(power)?)?))
            }
            Builder::Commutative(x) => {
                let alphabet = x.alphabet();
                let atom = match (name, alphabet) {
                    ('e', CommAlphabet::SymWitt) => {
                        let i = index.expect("e carries an index");
                        if i < -1 {
                            return Err(index_error(format!("e[{i}]")));
                        }
                        CommAtom::EBar(i)
                    }
                    ('t', CommAlphabet::GrTarget(_)) => CommAtom::TBar,
                    ('d', CommAlphabet::GrTarget(_)) => CommAtom::DBar,
                    ('v', CommAlphabet::GrTarget(TargetContext::N(_)))
                    | ('E', CommAlphabet::GrTarget(TargetContext::Infinity)) => {
                        let j = index.expect("mode carries an index");
                        if j < 0 {
                            return Err(index_error(format!("{name}[{j}]")));
                        }
                        CommAtom::VBar(j as u32)
                    }
                    _ => return Err(context_error(name.to_string())),
                };
                let factor = CommutativeElement::atom_pow(alphabet, atom, power)
                    .map_err(|_| index_error(alphabet.atom_name(atom)))?;
                Ok(Builder::Commutative(x.mul(&factor)?))
            }
        }
    }
}

/// Parses `text` in the declared ring, normal-ordering as it goes.
pub fn parse(text: &str, ring: RingTag) -> Result<Element> {
    let lexer = Lexer::new(text)?;
    let mut parser = Parser { lexer, ring };
    if parser.lexer.tokens.is_empty() {
        return Err(Error::Parse { position: 0, message: "empty expression".into() });
    }
    parser.parse_expr()
}

/// Canonical text of any element: same as its `Display`.
pub fn print_canonical(x: &Element) -> String {
    x.canonical()
}

/// JSON mirror of the canonical form:
/// `{"terms": [{"coeff": "p/q", "monomial": [[atom, index, exp], ...]}]}`
/// with atoms "e"/"E"/"v"/"t"/"d"; indexless atoms carry index 0.
pub fn to_json(x: &Element) -> Value {
    let terms: Vec<Value> = match x {
        Element::Witt(x) => x
            .print_terms()
            .into_iter()
            .map(|(m, c)| {
                let monomial: Vec<Value> = m
                    .exponents()
                    .iter()
                    .map(|&(i, mult)| json!(["e", i, mult]))
                    .collect();
                json!({ "coeff": c.to_string(), "monomial": monomial })
            })
            .collect(),
        Element::Target(x) => {
            let mode_atom = match x.context() {
                TargetContext::N(_) => "v",
                TargetContext::Infinity => "E",
            };
            x.print_terms()
                .into_iter()
                .map(|(m, c)| {
                    let mut monomial: Vec<Value> = Vec::new();
                    if m.t_exp() > 0 {
                        monomial.push(json!(["t", 0, m.t_exp()]));
                    }
                    if m.d_exp() > 0 {
                        monomial.push(json!(["d", 0, m.d_exp()]));
                    }
                    for &(j, mult) in m.modes() {
                        monomial.push(json!([mode_atom, j, mult]));
                    }
                    json!({ "coeff": c.to_string(), "monomial": monomial })
                })
                .collect()
        }
        Element::Commutative(x) => {
            let mode_atom = match x.alphabet() {
                CommAlphabet::GrTarget(TargetContext::Infinity) => "E",
                _ => "v",
            };
            x.print_terms()
                .into_iter()
                .map(|(m, c)| {
                    let monomial: Vec<Value> = m
                        .exponents()
                        .iter()
                        .map(|&(atom, mult)| match atom {
                            CommAtom::EBar(i) => json!(["e", i, mult]),
                            CommAtom::TBar => json!(["t", 0, mult]),
                            CommAtom::DBar => json!(["d", 0, mult]),
                            CommAtom::VBar(j) => json!([mode_atom, j, mult]),
                        })
                        .collect();
                    json!({ "coeff": c.to_string(), "monomial": monomial })
                })
                .collect()
        }
    };
    json!({ "terms": terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::differentiator::omega_mks;

    #[test]
    fn parses_omega_expression() {
        // Ω^2_{1,-1} written out longhand
        let parsed = parse("e[1]*e[-1] - 2*e[0]^2 + e[-1]*e[1]", RingTag::Witt).unwrap();
        let expected = omega_mks(2, 1, -1).unwrap();
        assert_eq!(parsed, Element::Witt(expected));
    }

    #[test]
    fn parses_weyl_relation() {
        let parsed = parse("d*t", RingTag::Target(TargetContext::N(2))).unwrap();
        assert_eq!(parsed.canonical(), "t*d + 1");
        // ∂ alias on input
        let parsed2 = parse("∂*t", RingTag::Target(TargetContext::N(2))).unwrap();
        assert_eq!(parsed, parsed2);
    }

    #[test]
    fn rejects_out_of_context_atoms() {
        assert!(matches!(
            parse("t", RingTag::Witt),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse("v[5]", RingTag::Target(TargetContext::N(2))),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse("v[0]", RingTag::Target(TargetContext::Infinity)),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse("e[-2]", RingTag::Witt),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn reports_positions() {
        match parse("e[1] ++ e[2]", RingTag::Witt) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 6),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn zero_and_constants() {
        assert!(parse("0", RingTag::Witt).unwrap().is_zero());
        let c = parse("5/3", RingTag::Sym).unwrap();
        assert_eq!(c.canonical(), "5/3");
        let neg = parse("-1/2*e[1]", RingTag::Witt).unwrap();
        assert_eq!(neg.canonical(), "-1/2*e[1]");
    }

    #[test]
    fn round_trips_canonical_text() {
        let samples = [
            ("e[-1]^2*e[3] - 1/2*e[1]", RingTag::Witt),
            ("t*d + 1", RingTag::Target(TargetContext::N(2))),
            ("E[3]*E[5] + d^2", RingTag::Target(TargetContext::Infinity)),
            ("t^2*d + 2*t*v[0] + v[1]", RingTag::GrTarget(TargetContext::N(2))),
            ("e[0]*e[1] - 7/3", RingTag::Sym),
        ];
        for (text, ring) in samples {
            let parsed = parse(text, ring).unwrap();
            assert_eq!(parsed.canonical(), text);
            let reparsed = parse(&parsed.canonical(), ring).unwrap();
            assert_eq!(parsed, reparsed);
        }
    }

    #[test]
    fn json_shape() {
        let x = parse("e[-1]^2*e[3] - 1/2*e[1]", RingTag::Witt).unwrap();
        let v = to_json(&x);
        assert_eq!(v["terms"][0]["coeff"], "1");
        assert_eq!(v["terms"][0]["monomial"][0][0], "e");
        assert_eq!(v["terms"][0]["monomial"][0][1], -1);
        assert_eq!(v["terms"][0]["monomial"][0][2], 2);
        assert_eq!(v["terms"][1]["coeff"], "-1/2");
    }
}
