use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::lexer::{syntax, tokenize, Kind, Token};
use crate::error::{Error, Result};
use crate::exterior::{Blade, KForm, SquareMatrix};
use crate::liealg::LieAlgebra;
use crate::scalars::{NumberField, ParamExpr, Rational};

/// A parsed text file.
#[derive(Clone, Debug)]
pub struct Document {
    pub field: NumberField,
    pub algebra: Option<LieAlgebra<ParamExpr>>,
    /// Named forms in file order, each in the dimension of the algebra when
    /// one is present, otherwise of its largest index.
    pub forms: Vec<(String, KForm<ParamExpr>)>,
    /// Matrices in file order; an unnamed matrix gets the empty name.
    pub matrices: Vec<(String, SquareMatrix<ParamExpr>)>,
}

impl Document {
    pub fn form(&self, name: &str) -> Option<&KForm<ParamExpr>> {
        self.forms.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    pub fn matrix(&self, name: &str) -> Option<&SquareMatrix<ParamExpr>> {
        self.matrices.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }
}

/// A homogeneous sum of monomials; empty means zero of any degree.
#[derive(Clone, Debug)]
struct Value {
    terms: BTreeMap<Blade, ParamExpr>,
}

impl Value {
    fn scalar(c: ParamExpr) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Blade::EMPTY, c);
        }
        Value { terms }
    }

    fn degree(&self) -> Option<usize> {
        self.terms.keys().next().map(|b| b.degree())
    }

    fn max_index(&self) -> usize {
        self.terms.keys().map(|b| b.max_index()).max().unwrap_or(0)
    }

    fn add(mut self, other: Value, tok: &Token) -> Result<Value> {
        if let (Some(a), Some(b)) = (self.degree(), other.degree()) {
            if a != b {
                return Err(syntax(tok.line, tok.col, format!("adding forms of degrees {a} and {b}")));
            }
        }
        for (b, c) in other.terms {
            let s = match self.terms.remove(&b) {
                Some(x) => x.checked_add(&c)?,
                None => c,
            };
            if !s.is_zero() {
                self.terms.insert(b, s);
            }
        }
        Ok(self)
    }

    fn neg(self) -> Value {
        Value {
            terms: self.terms.into_iter().map(|(b, c)| (b, c.neg())).collect(),
        }
    }

    fn mul(self, other: Value, tok: &Token) -> Result<Value> {
        let mut out = Value { terms: BTreeMap::new() };
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let Some(sign) = a.wedge_sign(*b) else { continue };
                let c = x
                    .checked_mul(y)
                    .map_err(|e| syntax(tok.line, tok.col, e.to_string()))?;
                let c = if sign < 0 { c.neg() } else { c };
                let t = Value {
                    terms: [(a.union(*b), c)].into_iter().collect(),
                };
                out = out.add(t, tok)?;
            }
        }
        Ok(out)
    }

    fn into_form(self, dim: usize, degree: usize, tok: &Token) -> Result<KForm<ParamExpr>> {
        if let Some(d) = self.degree() {
            if d != degree {
                return Err(syntax(tok.line, tok.col, format!("expected a {degree}-form, found degree {d}")));
            }
        }
        if self.max_index() > dim {
            return Err(Error::IndexOutOfRange {
                index: self.max_index(),
                dim,
            });
        }
        KForm::from_terms(dim, degree, self.terms)
    }

    fn into_scalar(self, tok: &Token) -> Result<ParamExpr> {
        match self.degree() {
            None => Ok(ParamExpr::zero()),
            Some(0) => Ok(self.terms.into_values().next().expect("one term")),
            Some(d) => Err(syntax(tok.line, tok.col, format!("expected a scalar, found a {d}-form"))),
        }
    }
}

pub(crate) struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    field: NumberField,
    allow_params: bool,
    end: Token,
}

impl Parser {
    pub(crate) fn new(text: &str, field: NumberField) -> Result<Self> {
        let tokens = tokenize(text)?;
        let end = match tokens.last() {
            Some(t) => Token {
                kind: Kind::Newline,
                line: t.line,
                col: t.col + 1,
            },
            None => Token {
                kind: Kind::Newline,
                line: 1,
                col: 1,
            },
        };
        Ok(Parser {
            tokens,
            pos: 0,
            field,
            allow_params: true,
            end,
        })
    }

    fn skip_newlines(&mut self) {
        while matches!(self.peek_kind(), Some(Kind::Newline)) {
            self.pos += 1;
        }
    }

    fn peek_kind(&self) -> Option<&Kind> {
        self.tokens.get(self.pos).map(|t| &t.kind)
    }

    /// Next significant token (newlines are whitespace inside expressions).
    fn peek(&mut self) -> Option<&Token> {
        self.skip_newlines();
        self.tokens.get(self.pos)
    }

    fn here(&mut self) -> Token {
        self.peek().cloned().unwrap_or_else(|| self.end.clone())
    }

    fn next(&mut self) -> Token {
        let t = self.here();
        self.pos += 1;
        t
    }

    /// Like [`at`](Self::at) without looking past a line break.
    fn same_line(&self, k: &Kind) -> bool {
        self.peek_kind() == Some(k)
    }

    fn at(&mut self, k: &Kind) -> bool {
        self.peek().map(|t| &t.kind == k).unwrap_or(false)
    }

    fn expect(&mut self, k: Kind, what: &str) -> Result<Token> {
        let t = self.here();
        if t.kind == k && self.pos < self.tokens.len() {
            self.pos += 1;
            Ok(t)
        } else {
            Err(syntax(t.line, t.col, format!("expected {what}")))
        }
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn sum(&mut self) -> Result<Value> {
        let first = self.here();
        let mut acc = match first.kind {
            Kind::Minus => {
                self.next();
                self.product()?.neg()
            }
            Kind::Plus => {
                self.next();
                self.product()?
            }
            _ => self.product()?,
        };
        loop {
            let t = self.here();
            match t.kind {
                Kind::Plus if self.pos < self.tokens.len() => {
                    self.next();
                    let v = self.product()?;
                    acc = acc.add(v, &t)?;
                }
                Kind::Minus if self.pos < self.tokens.len() => {
                    self.next();
                    let v = self.product()?;
                    acc = acc.add(v.neg(), &t)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(&mut self) -> bool {
        matches!(
            self.peek().map(|t| &t.kind),
            Some(Kind::Int(_) | Kind::Ident(_) | Kind::Basis(_) | Kind::LParen)
        )
    }

    fn product(&mut self) -> Result<Value> {
        let mut acc = self.factor()?;
        loop {
            // juxtaposition multiplies only within one line
            let newline = matches!(self.peek_kind(), Some(Kind::Newline));
            let t = self.here();
            if t.kind == Kind::Star && self.pos < self.tokens.len() {
                self.next();
            } else if newline || !self.starts_factor() {
                return Ok(acc);
            }
            let v = self.factor()?;
            acc = acc.mul(v, &t)?;
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        let t = self.next();
        match t.kind {
            Kind::Int(n) => Ok(n),
            _ => Err(syntax(t.line, t.col, "expected an integer")),
        }
    }

    fn factor(&mut self) -> Result<Value> {
        let t = self.next();
        if self.pos > self.tokens.len() {
            return Err(syntax(t.line, t.col, "unexpected end of input"));
        }
        match t.kind.clone() {
            Kind::Int(n) => {
                let mut r = Rational::from_integer(n);
                if self.same_line(&Kind::Slash) {
                    self.next();
                    let den = self.int()?;
                    if den.is_zero() {
                        return Err(syntax(t.line, t.col, "zero denominator"));
                    }
                    r /= Rational::from_integer(den);
                }
                Ok(Value::scalar(ParamExpr::constant(self.field.from_rational(r))))
            }
            Kind::Ident(name) if name == self.field.generator_name() => {
                if self.field.is_rationals() {
                    return Err(syntax(
                        t.line,
                        t.col,
                        format!("generator `{name}` used without a `field:` declaration"),
                    ));
                }
                let mut exp = 1;
                if self.same_line(&Kind::Caret) {
                    self.next();
                    let e = self.int()?;
                    exp = e.to_i32().ok_or_else(|| syntax(t.line, t.col, "exponent too large"))?;
                }
                let g = self.field.generator().pow(exp)?;
                Ok(Value::scalar(ParamExpr::constant(g)))
            }
            Kind::Ident(name) => {
                if !self.allow_params || name == "e" || name == "x" {
                    return Err(syntax(t.line, t.col, format!("parameter `{name}` not allowed here")));
                }
                Ok(Value::scalar(ParamExpr::param(&name)))
            }
            Kind::Basis(idx) => {
                let (b, sign) = Blade::from_unsorted(&idx)?;
                let c = if sign < 0 { ParamExpr::one().neg() } else { ParamExpr::one() };
                Ok(Value {
                    terms: [(b, c)].into_iter().collect(),
                })
            }
            Kind::LParen => {
                let v = self.sum()?;
                self.expect(Kind::RParen, "`)`")?;
                Ok(v)
            }
            _ => Err(syntax(t.line, t.col, "expected a number, parameter, e^{…} or `(`")),
        }
    }

    /// "(" sum ("," sum)* ")" as the structure equations of an algebra.
    pub(crate) fn algebra(&mut self) -> Result<LieAlgebra<ParamExpr>> {
        let open = self.expect(Kind::LParen, "`(`")?;
        let saved = self.allow_params;
        let mut raw = vec![(self.here(), self.sum()?)];
        while self.at(&Kind::Comma) {
            self.next();
            raw.push((self.here(), self.sum()?));
        }
        self.expect(Kind::RParen, "`)` closing the structure equations")?;
        self.allow_params = saved;
        let n = raw.len();
        if n < 1 {
            return Err(syntax(open.line, open.col, "empty algebra"));
        }
        let diffs = raw
            .into_iter()
            .map(|(tok, v)| v.into_form(n, 2, &tok))
            .collect::<Result<Vec<_>>>()?;
        LieAlgebra::new(diffs, false)
    }

    pub(crate) fn matrix(&mut self) -> Result<SquareMatrix<ParamExpr>> {
        let open = self.expect(Kind::LBracket, "`[`")?;
        let mut rows = vec![self.row()?];
        while self.at(&Kind::Semi) {
            self.next();
            if self.at(&Kind::RBracket) {
                break;
            }
            rows.push(self.row()?);
        }
        self.expect(Kind::RBracket, "`]`")?;
        SquareMatrix::from_rows(rows).map_err(|e| syntax(open.line, open.col, e.to_string()))
    }

    fn row(&mut self) -> Result<Vec<ParamExpr>> {
        let mut row = Vec::new();
        loop {
            let t = self.here();
            row.push(self.sum()?.into_scalar(&t)?);
            if !self.at(&Kind::Comma) {
                return Ok(row);
            }
            self.next();
        }
    }

    /// A single expression of the given dimension (degree inferred).
    pub(crate) fn form(&mut self, dim: usize) -> Result<KForm<ParamExpr>> {
        let t = self.here();
        let v = self.sum()?;
        let degree = v.degree().unwrap_or(0);
        v.into_form(dim, degree, &t)
    }

    pub(crate) fn scalar(&mut self) -> Result<ParamExpr> {
        let t = self.here();
        self.sum()?.into_scalar(&t)
    }

    pub(crate) fn position(&mut self) -> (usize, usize) {
        let t = self.here();
        (t.line, t.col)
    }

    pub(crate) fn document(&mut self, params_in_algebra: bool) -> Result<Document> {
        let mut doc = Document {
            field: self.field.clone(),
            algebra: None,
            forms: Vec::new(),
            matrices: Vec::new(),
        };
        let mut pending_forms: Vec<(String, Token, Value)> = Vec::new();
        while !self.at_end() {
            let t = self.here();
            match &t.kind {
                Kind::LParen => {
                    if doc.algebra.is_some() {
                        return Err(syntax(t.line, t.col, "a file holds at most one algebra"));
                    }
                    self.allow_params = params_in_algebra;
                    doc.algebra = Some(self.algebra()?);
                    self.allow_params = true;
                }
                Kind::LBracket => doc.matrices.push((String::new(), self.matrix()?)),
                Kind::Ident(name) => {
                    let name = name.clone();
                    self.next();
                    self.expect(Kind::Equals, "`=` after a name")?;
                    if self.at(&Kind::LBracket) {
                        doc.matrices.push((name, self.matrix()?));
                    } else {
                        let start = self.here();
                        pending_forms.push((name, start, self.sum()?));
                    }
                }
                _ => return Err(syntax(t.line, t.col, "expected `(`, `[` or `name =`")),
            }
        }
        let alg_dim = doc.algebra.as_ref().map(LieAlgebra::dim);
        for (name, tok, v) in pending_forms {
            let dim = alg_dim.unwrap_or_else(|| v.max_index());
            let degree = v.degree().unwrap_or(0);
            doc.forms.push((name, v.into_form(dim, degree, &tok)?));
        }
        Ok(doc)
    }
}

/// Splits off a leading `field:` line and returns the declared field with
/// the remaining text (the header line is blanked so positions survive).
pub(crate) fn split_header(text: &str) -> Result<(NumberField, String)> {
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    for (i, line) in lines.iter_mut().enumerate() {
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some(rest) = trimmed.strip_prefix("field") else { break };
        let Some(poly) = rest.trim_start().strip_prefix(':') else { break };
        let offset = line.len() - poly.len();
        let field = parse_min_poly(poly, i + 1, offset + 1)?;
        *line = String::new();
        return Ok((field, lines.join("\n")));
    }
    Ok((NumberField::rationals(), text.to_string()))
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[Rational], b: &[Rational], sign: i64) -> Vec<Rational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x + y * Rational::from_integer(sign.into())
        })
        .collect()
}

/// Parses a polynomial in `x` with rational coefficients.
fn parse_min_poly(text: &str, line: usize, col: usize) -> Result<NumberField> {
    let toks = tokenize(text).map_err(|e| match e {
        Error::Syntax { column, message, .. } => syntax(line, col + column - 1, message),
        other => other,
    })?;
    let toks: Vec<Token> = toks.into_iter().filter(|t| t.kind != Kind::Newline).collect();
    let err = |t: Option<&Token>, m: &str| {
        let c = t.map(|t| t.col).unwrap_or(text.len() + 1);
        syntax(line, col + c - 1, m)
    };
    let mut pos = 0;
    let mut acc: Vec<Rational> = vec![Rational::zero()];
    let mut sign = 1;
    if let Some(Kind::Minus) = toks.first().map(|t| &t.kind) {
        sign = -1;
        pos += 1;
    }
    loop {
        // term := factor ("*"? factor)*, factor := INT["/"INT] | "x"["^"INT]
        let mut term = vec![Rational::one()];
        let mut any = false;
        while let Some(t) = toks.get(pos) {
            match &t.kind {
                Kind::Int(n) => {
                    let mut r = Rational::from_integer(n.clone());
                    pos += 1;
                    if matches!(toks.get(pos).map(|t| &t.kind), Some(Kind::Slash)) {
                        match toks.get(pos + 1).map(|t| &t.kind) {
                            Some(Kind::Int(d)) if !d.is_zero() => r /= Rational::from_integer(d.clone()),
                            _ => return Err(err(toks.get(pos + 1), "expected a nonzero denominator")),
                        }
                        pos += 2;
                    }
                    term = term.into_iter().map(|c| c * &r).collect();
                }
                Kind::Ident(v) if v == "x" => {
                    pos += 1;
                    let mut e = 1usize;
                    if matches!(toks.get(pos).map(|t| &t.kind), Some(Kind::Caret)) {
                        match toks.get(pos + 1).map(|t| &t.kind) {
                            Some(Kind::Int(n)) => e = n.to_usize().ok_or_else(|| err(toks.get(pos + 1), "exponent too large"))?,
                            _ => return Err(err(toks.get(pos + 1), "expected an exponent")),
                        }
                        pos += 2;
                    }
                    let mut mono = vec![Rational::zero(); e + 1];
                    mono[e] = Rational::one();
                    term = poly_mul(&term, &mono);
                }
                _ => return Err(err(Some(t), "expected a coefficient or `x`")),
            }
            any = true;
            if matches!(toks.get(pos).map(|t| &t.kind), Some(Kind::Star)) {
                pos += 1;
                continue;
            }
            if matches!(toks.get(pos).map(|t| &t.kind), Some(Kind::Int(_) | Kind::Ident(_))) {
                continue;
            }
            break;
        }
        if !any {
            return Err(err(toks.get(pos), "expected a term"));
        }
        acc = poly_add(&acc, &term, sign);
        match toks.get(pos).map(|t| &t.kind) {
            None => break,
            Some(Kind::Plus) => sign = 1,
            Some(Kind::Minus) => sign = -1,
            Some(_) => return Err(err(toks.get(pos), "expected `+`, `-` or end of line")),
        }
        pos += 1;
    }
    NumberField::new(acc).map_err(|e| syntax(line, col, e.to_string()))
}
