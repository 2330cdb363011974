//! Recursive-descent parser for the `.lie` structure-equation language.
//!
//! ```text
//! file    := header line*
//! header  := "generators" INT
//! line    := "d" GEN "=" expr | blank
//! expr    := "0" | term (("+"|"-") term)*
//! term    := [scalar "*"?] GEN "^" GEN
//! GEN     := "f" INT | "~f" INT
//! scalar  := RAT | RAT "i" | "i" | "(" gaussian ")"
//! ```
//!
//! `#` starts a comment. In form expressions a term may wedge any number of
//! generators, and a bare scalar denotes a constant.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{Form, Monomial, Scalar, MAX_GENERATORS};
use crate::model::StructureEquations;

/// Position of a token: 1-based line and column, byte range in the input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub start: usize,
    pub end: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    UnknownGenerator,
    DegreeMismatch,
    DuplicateDefinition,
    BadScalar,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::UnknownGenerator => "unknown generator",
            ParseErrorKind::DegreeMismatch => "degree mismatch",
            ParseErrorKind::DuplicateDefinition => "duplicate definition",
            ParseErrorKind::BadScalar => "bad scalar",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{span}: {kind}: {message}")]
pub struct ParseError {
    pub span: SourceSpan,
    pub kind: ParseErrorKind,
    pub message: String,
}

/// A well-formed but suspicious construct, such as a term that wedges to
/// zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lint {
    pub span: SourceSpan,
    pub message: String,
}

impl fmt::Display for Lint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: warning: {}", self.span, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Slash,
    I,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Caret,
    Eq,
    Gen { conj: bool, index: usize },
    Word(String),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    span: SourceSpan,
}

fn err(span: SourceSpan, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
    ParseError { span, kind, message: message.into() }
}

/// Splits one line into tokens. `base` is the byte offset of the line.
fn tokenize(line: &str, line_no: usize, base: usize) -> Result<Vec<Token>, ParseError> {
    let bytes = line.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    let span = |start: usize, end: usize| SourceSpan {
        line: line_no,
        column: line[..start].chars().count() + 1,
        start: base + start,
        end: base + end,
    };
    while pos < bytes.len() {
        let c = line[pos..].chars().next().unwrap();
        let start = pos;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            pos += c.len_utf8();
            continue;
        }
        let single = match c {
            '/' => Some(Tok::Slash),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '=' => Some(Tok::Eq),
            _ => None,
        };
        if let Some(tok) = single {
            pos += 1;
            out.push(Token { tok, span: span(start, pos) });
            continue;
        }
        if c.is_ascii_digit() {
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos < bytes.len() && (bytes[pos] == b'.' || bytes[pos] == b'e' || bytes[pos] == b'E') {
                let mut end = pos + 1;
                while end < bytes.len() && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'.') {
                    end += 1;
                }
                return Err(err(span(start, end), ParseErrorKind::BadScalar, "floating-point scalars are not allowed"));
            }
            let n: BigInt = line[start..pos].parse().expect("digits");
            out.push(Token { tok: Tok::Int(n), span: span(start, pos) });
            continue;
        }
        let conj = c == '~';
        let word_start = if conj { pos + 1 } else { pos };
        let mut end = word_start;
        while end < bytes.len() && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_') {
            end += 1;
        }
        if end == word_start {
            return Err(err(
                span(start, start + c.len_utf8()),
                ParseErrorKind::Syntax,
                format!("unexpected character '{c}'"),
            ));
        }
        let word = &line[word_start..end];
        let tok = if let Some(digits) =
            word.strip_prefix('f').filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
        {
            let index = digits.parse().unwrap_or(usize::MAX);
            Tok::Gen { conj, index }
        } else if conj {
            return Err(err(span(start, end), ParseErrorKind::Syntax, "'~' must be followed by a generator fK"));
        } else if word == "i" {
            Tok::I
        } else {
            Tok::Word(word.to_string())
        };
        pos = end;
        out.push(Token { tok, span: span(start, pos) });
    }
    Ok(out)
}

struct Cursor<'t> {
    toks: &'t [Token],
    pos: usize,
    eol: SourceSpan,
}

impl<'t> Cursor<'t> {
    fn peek(&self) -> Option<&'t Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn span(&self) -> SourceSpan {
        self.toks.get(self.pos).map_or(self.eol, |t| t.span)
    }

    fn prev_span(&self) -> SourceSpan {
        // Past the end means the last bump found nothing: point at end of line.
        if self.pos > self.toks.len() {
            return self.eol;
        }
        self.pos.checked_sub(1).map_or(self.eol, |i| self.toks[i].span)
    }

    fn bump(&mut self) -> Option<&'t Token> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &Tok, what: &str) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(err(self.span(), ParseErrorKind::Syntax, format!("expected {what}")))
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }
}

fn join(a: SourceSpan, b: SourceSpan) -> SourceSpan {
    SourceSpan { end: b.end, ..a }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Right-hand side of a structure equation: wedges of exactly two
    /// generators.
    Structure,
    /// Arbitrary forms.
    Form,
}

struct ExprParser<'a> {
    m: usize,
    mode: Mode,
    lints: &'a mut Vec<Lint>,
}

impl ExprParser<'_> {
    /// `INT ["/" INT] ["i"] | "i"`, returning the scalar.
    fn simple_scalar(&self, cur: &mut Cursor<'_>) -> Result<Option<Scalar>, ParseError> {
        let start = cur.span();
        match cur.peek() {
            Some(Tok::I) => {
                cur.bump();
                Ok(Some(Scalar::i()))
            }
            Some(Tok::Int(n)) => {
                cur.bump();
                let mut den = BigInt::one();
                if cur.eat(&Tok::Slash) {
                    match cur.bump().map(|t| &t.tok) {
                        Some(Tok::Int(d)) => den = d.clone(),
                        _ => return Err(err(cur.prev_span(), ParseErrorKind::BadScalar, "expected a denominator")),
                    }
                    if den.is_zero() {
                        return Err(err(join(start, cur.prev_span()), ParseErrorKind::BadScalar, "zero denominator"));
                    }
                }
                let q = BigRational::new(n.clone(), den);
                if cur.eat(&Tok::I) {
                    Ok(Some(Scalar::new(BigRational::zero(), q)))
                } else {
                    Ok(Some(Scalar::from_rational(q)))
                }
            }
            _ => Ok(None),
        }
    }

    /// `"(" [sign] simple (("+"|"-") simple)* ")"`.
    fn paren_scalar(&self, cur: &mut Cursor<'_>) -> Result<Scalar, ParseError> {
        cur.expect(&Tok::LParen, "'('")?;
        let mut acc = Scalar::zero();
        let mut negative = cur.eat(&Tok::Minus);
        if !negative {
            cur.eat(&Tok::Plus);
        }
        loop {
            let Some(s) = self.simple_scalar(cur)? else {
                return Err(err(cur.span(), ParseErrorKind::BadScalar, "expected a number inside parentheses"));
            };
            acc = if negative { &acc - &s } else { &acc + &s };
            if cur.eat(&Tok::Plus) {
                negative = false;
            } else if cur.eat(&Tok::Minus) {
                negative = true;
            } else {
                break;
            }
        }
        cur.expect(&Tok::RParen, "')'")?;
        Ok(acc)
    }

    fn generator(&self, cur: &mut Cursor<'_>) -> Result<Monomial, ParseError> {
        match cur.peek() {
            Some(&Tok::Gen { conj, index }) => {
                let span = cur.span();
                cur.bump();
                if index == 0 || index > self.m {
                    return Err(err(
                        span,
                        ParseErrorKind::UnknownGenerator,
                        format!("generator index {index} outside 1..={}", self.m),
                    ));
                }
                Ok(if conj { Monomial::anti_gen(index - 1) } else { Monomial::holo_gen(index - 1) })
            }
            _ => Err(err(cur.span(), ParseErrorKind::Syntax, "expected a generator fK or ~fK")),
        }
    }

    /// One term, returned as `(coefficient, monomial)` with the monomial
    /// already sorted; `None` monomial means the term wedged to zero.
    fn term(&mut self, cur: &mut Cursor<'_>) -> Result<(Scalar, Option<Monomial>, bool), ParseError> {
        let start = cur.span();
        let scalar = match cur.peek() {
            Some(Tok::LParen) => Some(self.paren_scalar(cur)?),
            _ => self.simple_scalar(cur)?,
        };
        if scalar.is_some() {
            cur.eat(&Tok::Star);
        }
        let has_gen = matches!(cur.peek(), Some(Tok::Gen { .. }));
        if !has_gen {
            return match scalar {
                Some(c) => Ok((c, Some(Monomial::ONE), false)),
                None => Err(err(cur.span(), ParseErrorKind::Syntax, "expected a term")),
            };
        }
        let mut mono = Some(self.generator(cur)?);
        let mut negative = false;
        let mut factors = 1;
        while cur.eat(&Tok::Caret) {
            let g = self.generator(cur)?;
            factors += 1;
            mono = mono.and_then(|acc| acc.wedge(&g)).map(|(neg, m)| {
                negative ^= neg;
                m
            });
        }
        let span = join(start, cur.prev_span());
        if self.mode == Mode::Structure && factors != 2 {
            return Err(err(
                span,
                ParseErrorKind::DegreeMismatch,
                format!("term wedges {factors} generators, a differential needs exactly 2"),
            ));
        }
        if mono.is_none() {
            self.lints.push(Lint { span, message: "term wedges to zero (repeated generator)".into() });
        }
        let c = scalar.unwrap_or_else(Scalar::one);
        Ok((if negative { -c } else { c }, mono, true))
    }

    fn expr(&mut self, cur: &mut Cursor<'_>) -> Result<Form, ParseError> {
        let mut form = Form::zero(self.m);
        let mut negative = cur.eat(&Tok::Minus);
        if !negative {
            cur.eat(&Tok::Plus);
        }
        loop {
            let term_span = cur.span();
            let (c, mono, has_gen) = self.term(cur)?;
            if !has_gen && self.mode == Mode::Structure && !c.is_zero() {
                return Err(err(
                    join(term_span, cur.prev_span()),
                    ParseErrorKind::DegreeMismatch,
                    "a differential cannot have a constant term",
                ));
            }
            if let Some(mono) = mono {
                form.add_term(mono, if negative { -c } else { c });
            }
            if cur.eat(&Tok::Plus) {
                negative = false;
            } else if cur.eat(&Tok::Minus) {
                negative = true;
            } else {
                break;
            }
        }
        Ok(form)
    }
}

/// Parses a form written in the term language, with wedges of any length.
pub fn parse_form_expr(text: &str, m: usize) -> Result<Form, ParseError> {
    let mut lints = Vec::new();
    parse_form_expr_with_lints(text, m, &mut lints)
}

pub(crate) fn parse_form_expr_with_lints(text: &str, m: usize, lints: &mut Vec<Lint>) -> Result<Form, ParseError> {
    let eol = SourceSpan { line: 1, column: text.chars().count() + 1, start: text.len(), end: text.len() };
    if text.contains('\n') {
        let at = text.find('\n').unwrap();
        return Err(err(
            SourceSpan { line: 1, column: text[..at].chars().count() + 1, start: at, end: at + 1 },
            ParseErrorKind::Syntax,
            "a form expression is a single line",
        ));
    }
    let toks = tokenize(text, 1, 0)?;
    let mut cur = Cursor { toks: &toks, pos: 0, eol };
    let mut p = ExprParser { m, mode: Mode::Form, lints };
    let form = p.expr(&mut cur)?;
    if !cur.at_end() {
        return Err(err(cur.span(), ParseErrorKind::Syntax, "unexpected token after expression"));
    }
    Ok(form)
}

/// Parses a `.lie` file.
pub fn parse_structure_file(text: &str) -> Result<StructureEquations, ParseError> {
    parse_structure_file_with_lints(text).map(|(eq, _)| eq)
}

/// Parses a `.lie` file, also returning lint warnings.
pub fn parse_structure_file_with_lints(text: &str) -> Result<(StructureEquations, Vec<Lint>), ParseError> {
    let mut lints = Vec::new();
    let mut m: Option<usize> = None;
    let mut diffs: Vec<Option<(Form, SourceSpan)>> = Vec::new();
    let mut offset = 0;
    let mut last_line = 0;
    for (idx, raw) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let base = offset;
        offset += raw.len() + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let toks = tokenize(line, line_no, base)?;
        if toks.is_empty() {
            continue;
        }
        let eol = SourceSpan {
            line: line_no,
            column: line.chars().count() + 1,
            start: base + line.len(),
            end: base + line.len(),
        };
        let mut cur = Cursor { toks: &toks, pos: 0, eol };
        let Some(count) = m else {
            // Header.
            match cur.bump().map(|t| &t.tok) {
                Some(Tok::Word(w)) if w == "generators" => {}
                _ => return Err(err(toks[0].span, ParseErrorKind::Syntax, "file must start with 'generators N'")),
            }
            let n = match cur.bump().map(|t| &t.tok) {
                Some(Tok::Int(n)) => n.clone(),
                _ => return Err(err(cur.prev_span(), ParseErrorKind::Syntax, "expected the generator count")),
            };
            let n: usize = n.try_into().ok().filter(|n| (1..=MAX_GENERATORS).contains(n)).ok_or_else(|| {
                err(cur.prev_span(), ParseErrorKind::Syntax, format!("generator count must be in 1..={MAX_GENERATORS}"))
            })?;
            if !cur.at_end() {
                return Err(err(cur.span(), ParseErrorKind::Syntax, "unexpected token after header"));
            }
            m = Some(n);
            diffs = vec![None; n];
            continue;
        };
        match cur.bump().map(|t| &t.tok) {
            Some(Tok::Word(w)) if w == "d" => {}
            _ => return Err(err(toks[0].span, ParseErrorKind::Syntax, "expected 'd fK = ...'")),
        }
        let gen_span = cur.span();
        let index = match cur.bump().map(|t| &t.tok) {
            Some(&Tok::Gen { conj: false, index }) => index,
            Some(Tok::Gen { conj: true, .. }) => {
                return Err(err(
                    gen_span,
                    ParseErrorKind::Syntax,
                    "differentials are given for (1,0)-generators only; d of ~fK follows by conjugation",
                ))
            }
            _ => return Err(err(gen_span, ParseErrorKind::Syntax, "expected a generator after 'd'")),
        };
        if index == 0 || index > count {
            return Err(err(
                gen_span,
                ParseErrorKind::UnknownGenerator,
                format!("generator index {index} outside 1..={count}"),
            ));
        }
        cur.expect(&Tok::Eq, "'='")?;
        let mut p = ExprParser { m: count, mode: Mode::Structure, lints: &mut lints };
        let form = p.expr(&mut cur)?;
        if !cur.at_end() {
            return Err(err(cur.span(), ParseErrorKind::Syntax, "unexpected token after expression"));
        }
        if let Some((_, first)) = &diffs[index - 1] {
            return Err(err(
                gen_span,
                ParseErrorKind::DuplicateDefinition,
                format!("d f{index} already defined on line {}", first.line),
            ));
        }
        diffs[index - 1] = Some((form, gen_span));
    }
    let Some(m) = m else {
        let span = SourceSpan { line: last_line.max(1), column: 1, start: text.len(), end: text.len() };
        return Err(err(span, ParseErrorKind::Syntax, "missing 'generators N' header"));
    };
    let diffs = diffs.into_iter().map(|d| d.map_or_else(|| Form::zero(m), |(f, _)| f)).collect();
    let eq = StructureEquations::new(m, diffs).expect("grammar guarantees 2-forms");
    Ok((eq, lints))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iwasawa_file() {
        let eq = parse_structure_file("generators 3\nd f3 = -f1^f2").unwrap();
        assert_eq!(eq, StructureEquations::iwasawa());
    }

    #[test]
    fn header_only_is_a_torus() {
        assert_eq!(parse_structure_file("generators 2\n").unwrap(), StructureEquations::torus(2).unwrap());
    }

    #[test]
    fn repeated_generator_lints() {
        let (eq, lints) = parse_structure_file_with_lints("generators 2\nd f1 = f1^f1").unwrap();
        assert!(eq.diffs()[0].is_zero());
        assert_eq!(lints.len(), 1);
        assert_eq!(lints[0].span.line, 2);
        assert_eq!(lints[0].span.column, 8);
    }

    #[test]
    fn scalars() {
        let eq = parse_structure_file(
            "# comment\ngenerators 2\nd f2 = 1/2 f1^~f1 + (1/2+3/4i)*f1^~f2 - 3i*~f1^f1 + i f1^f2 # trailing\n",
        )
        .unwrap();
        let d = &eq.diffs()[1];
        let m = |h, a| Monomial::new(h, a);
        assert_eq!(d.coefficient(&m(1, 1)), &Scalar::ratio(1, 2) + &Scalar::gaussian((0, 1), (3, 1)));
        assert_eq!(d.coefficient(&m(1, 2)), Scalar::gaussian((1, 2), (3, 4)));
        assert_eq!(d.coefficient(&m(3, 0)), Scalar::i());
    }

    #[test]
    fn zero_rhs() {
        let eq = parse_structure_file("generators 2\nd f1 = 0\n").unwrap();
        assert!(eq.diffs()[0].is_zero());
    }

    #[test]
    fn error_kinds_and_spans() {
        let cases: &[(&str, ParseErrorKind, usize, usize)] = &[
            ("generators 2\nd f3 = f1^f2", ParseErrorKind::UnknownGenerator, 2, 3),
            ("generators 2\nd f2 = f1^f3", ParseErrorKind::UnknownGenerator, 2, 11),
            ("generators 2\nd f2 = f1", ParseErrorKind::DegreeMismatch, 2, 8),
            ("generators 3\nd f3 = f1^f2^f3", ParseErrorKind::DegreeMismatch, 2, 8),
            ("generators 2\nd f2 = f1^f2\nd f2 = 0", ParseErrorKind::DuplicateDefinition, 3, 3),
            ("generators 2\nd f2 = 1.5*f1^~f1", ParseErrorKind::BadScalar, 2, 8),
            ("generators 2\nd f2 = 1/0*f1^~f1", ParseErrorKind::BadScalar, 2, 8),
            ("generators 2\nd f2 = f1 ^", ParseErrorKind::Syntax, 2, 12),
            ("generators 2\nd f2 f1^f2", ParseErrorKind::Syntax, 2, 6),
            ("d f1 = 0", ParseErrorKind::Syntax, 1, 1),
            ("generators 2\nd ~f1 = f1^f2", ParseErrorKind::Syntax, 2, 3),
            ("generators 2\nd f1 = 2", ParseErrorKind::DegreeMismatch, 2, 8),
            ("generators 70", ParseErrorKind::Syntax, 1, 12),
            ("generators 2\nd f1 = f1^f2 )", ParseErrorKind::Syntax, 2, 14),
            ("generators 2\nd f1 = f1 $ f2", ParseErrorKind::Syntax, 2, 11),
            ("generators # 3", ParseErrorKind::Syntax, 1, 15),
            ("generators 2\nd f2 = 1/", ParseErrorKind::BadScalar, 2, 10),
        ];
        for &(text, kind, line, column) in cases {
            let e = parse_structure_file(text).unwrap_err();
            assert_eq!((e.kind, e.span.line, e.span.column), (kind, line, column), "{text:?}: {e}");
            assert!(e.span.start <= e.span.end && e.span.end <= text.len());
        }
    }

    #[test]
    fn form_expressions() {
        let b = parse_form_expr("~f4^~f2", 6).unwrap();
        assert_eq!(b, Form::anti_gen(6, 3).wedge(&Form::anti_gen(6, 1)).unwrap());
        assert!(parse_form_expr("0", 3).unwrap().is_zero());
        assert!(parse_form_expr("f1^f1", 3).unwrap().is_zero());
        assert_eq!(parse_form_expr("-f2^f1^~f3", 3).unwrap(), parse_form_expr("f1^f2^~f3", 3).unwrap());
        assert_eq!(parse_form_expr("2", 3).unwrap(), Form::constant(3, Scalar::from_int(2)));
        assert_eq!(parse_form_expr("f4", 3).unwrap_err().kind, ParseErrorKind::UnknownGenerator);
    }
}
