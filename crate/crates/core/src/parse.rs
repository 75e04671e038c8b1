//! Parsing of the textual exchange formats.
//!
//! One expression grammar covers every algebraic string in the input
//! documents:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('@' | '#') factor)*          tensor legs, smash pairs
//! factor := signed (('*' | '/' | '.') signed)*    '.' concatenates words
//! signed := ('-' | '+') signed | power
//! power  := atom ('^' exponent)?
//! atom   := integer | name | '(' expr ')'
//! ```
//!
//! Exponents are integers: a bare (optionally negated) literal or name, or a
//! parenthesized integer expression such as `^(3*s0)`. Names resolve in
//! order: declared parameters, then module generators, then Hopf generators,
//! then `z` for the root of unity of a cyclotomic field. Which generators
//! are in scope depends on the entry point, so `parse_poly` sees only module
//! generators while `parse_smash` sees both kinds and accepts `#`.
//!
//! The document loaders read TOML. A Hopf section is either a builtin
//! reference (`builtin = "Uqsl2"`, `n = 3`) or a full presentation with
//! `[[generator]]` entries, a `[swaps]` table keyed by the reordered pair
//! `"later.earlier"`, and coproduct/antipode strings per skew-primitive
//! generator. A system document combines `[hopf]`, `[params]`, `[algebra]`
//! with its `[action]` matrices, an optional second factor (`[second]` or
//! `[opposite]`), a `[braiding]` given as an `r_matrix` string or a
//! `[braiding.twist]` table of images keyed `"y.x"`, and a `[product]` kind.
//! Deformation maps and ansatz spaces load against an existing module
//! algebra by relation label.

use std::collections::BTreeMap;

use num::ToPrimitive;

use crate::action::{ActionSpec, Matrix, ModuleAlgebra, QuadraticAlgebra};
use crate::deform::{AnsatzSpace, KappaMap};
use crate::error::Error;
use crate::freealg::{GenSet, NcPoly};
use crate::hopf::{
    self, GenClass, Hopf, HopfElem, HopfGen, HopfPresentation, RawWord, SwapRule, TensorElem,
};
use crate::products::{
    braided_opposite, braided_product, twisted_tensor, BraidingSpec, CrossMap, SmashElem,
};
use crate::scalar::{Field, Scalar};
use crate::Result;

/// A named substitution available while parsing. Integers feed exponent
/// expressions and coerce to scalars; scalars must already live in the
/// target field. Text values carry options (like a half-power convention)
/// past the parser; they have no meaning inside an expression.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Int(i64),
    Scalar(Scalar),
    Str(String),
}

pub type Params = BTreeMap<String, ParamValue>;

// ---------------------------------------------------------------------------
// Tokens and syntax trees
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(i64),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Dot,
    Caret,
    Hash,
    At,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '.' => {
                out.push(Tok::Dot);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '#' => {
                out.push(Tok::Hash);
                i += 1;
            }
            '@' => {
                out.push(Tok::At);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &src[start..i];
                let n: i64 = text
                    .parse()
                    .map_err(|_| Error::Parse(format!("integer {text} is too large")))?;
                out.push(Tok::Num(n));
            }
            'A'..='Z' | 'a'..='z' | '_' => {
                let start = i;
                while i < b.len()
                    && (b[i].is_ascii_alphanumeric() || b[i] == b'_' || b[i] == b'\'')
                {
                    i += 1;
                }
                out.push(Tok::Name(src[start..i].to_string()));
            }
            _ => {
                return Err(Error::Parse(format!(
                    "unexpected character {c:?} in {src:?}"
                )))
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Ast {
    Num(i64),
    Name(String),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, Box<Ast>),
    Tensor(Box<Ast>, Box<Ast>),
    Smash(Box<Ast>, Box<Ast>),
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect_rparen(&mut self) -> Result<()> {
        match self.bump() {
            Some(Tok::RParen) => Ok(()),
            _ => Err(Error::Parse("missing closing parenthesis".into())),
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut a = self.tensor_level()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    a = Ast::Add(Box::new(a), Box::new(self.tensor_level()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    a = Ast::Sub(Box::new(a), Box::new(self.tensor_level()?));
                }
                _ => return Ok(a),
            }
        }
    }

    fn tensor_level(&mut self) -> Result<Ast> {
        let mut a = self.mul_level()?;
        loop {
            match self.peek() {
                Some(Tok::At) => {
                    self.bump();
                    a = Ast::Tensor(Box::new(a), Box::new(self.mul_level()?));
                }
                Some(Tok::Hash) => {
                    self.bump();
                    a = Ast::Smash(Box::new(a), Box::new(self.mul_level()?));
                }
                _ => return Ok(a),
            }
        }
    }

    fn mul_level(&mut self) -> Result<Ast> {
        let mut a = self.signed()?;
        loop {
            match self.peek() {
                Some(Tok::Star) | Some(Tok::Dot) => {
                    self.bump();
                    a = Ast::Mul(Box::new(a), Box::new(self.signed()?));
                }
                Some(Tok::Slash) => {
                    self.bump();
                    a = Ast::Div(Box::new(a), Box::new(self.signed()?));
                }
                _ => return Ok(a),
            }
        }
    }

    fn signed(&mut self) -> Result<Ast> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(Ast::Neg(Box::new(self.signed()?)))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.signed()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let e = self.exponent()?;
            return Ok(Ast::Pow(Box::new(base), Box::new(e)));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<Ast> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Ast::Num(n)),
            Some(Tok::Name(n)) => Ok(Ast::Name(n)),
            Some(Tok::Minus) => match self.bump() {
                Some(Tok::Num(n)) => Ok(Ast::Neg(Box::new(Ast::Num(n)))),
                Some(Tok::Name(n)) => Ok(Ast::Neg(Box::new(Ast::Name(n)))),
                _ => Err(Error::Parse("an exponent follows ^".into())),
            },
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect_rparen()?;
                Ok(e)
            }
            _ => Err(Error::Parse(
                "an exponent is an integer, a name, or a parenthesized integer expression".into(),
            )),
        }
    }

    fn atom(&mut self) -> Result<Ast> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Ast::Num(n)),
            Some(Tok::Name(n)) => Ok(Ast::Name(n)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect_rparen()?;
                Ok(e)
            }
            Some(t) => Err(Error::Parse(format!("expected a value, found {t:?}"))),
            None => Err(Error::Parse("expected a value, found end of input".into())),
        }
    }
}

fn parse_ast(src: &str) -> Result<Ast> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(Error::Parse(format!("empty expression in {src:?}")));
    }
    let mut p = Parser { toks, pos: 0 };
    let a = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!(
            "trailing input after position {} in {src:?}",
            p.pos
        )));
    }
    Ok(a)
}

// ---------------------------------------------------------------------------
// Integer expressions
// ---------------------------------------------------------------------------

fn eval_int(ast: &Ast, params: &Params) -> Result<i64> {
    let overflow = || Error::Parse("integer expression overflows".into());
    match ast {
        Ast::Num(n) => Ok(*n),
        Ast::Name(n) => match params.get(n) {
            Some(ParamValue::Int(i)) => Ok(*i),
            Some(ParamValue::Scalar(s)) => s
                .as_rational()
                .filter(|r| r.is_integer())
                .and_then(|r| r.to_integer().to_i64())
                .ok_or_else(|| Error::Parse(format!("parameter {n} is not an integer"))),
            Some(ParamValue::Str(_)) => {
                Err(Error::Parse(format!("parameter {n} is text, not an integer")))
            }
            None => Err(Error::Parse(format!("unknown integer parameter {n:?}"))),
        },
        Ast::Neg(a) => eval_int(a, params)?.checked_neg().ok_or_else(overflow),
        Ast::Add(a, b) => eval_int(a, params)?
            .checked_add(eval_int(b, params)?)
            .ok_or_else(overflow),
        Ast::Sub(a, b) => eval_int(a, params)?
            .checked_sub(eval_int(b, params)?)
            .ok_or_else(overflow),
        Ast::Mul(a, b) => eval_int(a, params)?
            .checked_mul(eval_int(b, params)?)
            .ok_or_else(overflow),
        Ast::Div(a, b) => {
            let x = eval_int(a, params)?;
            let y = eval_int(b, params)?;
            if y == 0 || x % y != 0 {
                return Err(Error::Parse(format!("{x}/{y} is not an integer")));
            }
            Ok(x / y)
        }
        Ast::Pow(a, b) => {
            let x = eval_int(a, params)?;
            let e = eval_int(b, params)?;
            let e: u32 = e
                .try_into()
                .map_err(|_| Error::Parse("integer exponents are nonnegative".into()))?;
            x.checked_pow(e).ok_or_else(overflow)
        }
        Ast::Tensor(..) | Ast::Smash(..) => {
            Err(Error::Parse("not an integer operation".into()))
        }
    }
}

/// Evaluate an integer expression such as `3*s0 + 1` against the parameters.
pub fn parse_int_expr(src: &str, params: &Params) -> Result<i64> {
    eval_int(&parse_ast(src)?, params)
}

// ---------------------------------------------------------------------------
// Algebra expressions
// ---------------------------------------------------------------------------

enum Scope<'a> {
    /// Values in a concrete algebra: module generators become words, Hopf
    /// generators become Hopf elements, `#` forms smash elements when an
    /// action is present.
    Normal {
        field: &'a Field,
        gens: Option<&'a GenSet>,
        hopf: Option<&'a Hopf>,
        action: Option<&'a ActionSpec>,
    },
    /// Presentation mode: names become unnormalized raw words, used while
    /// the Hopf algebra they describe does not exist yet.
    Raw {
        field: &'a Field,
        names: &'a [String],
    },
}

impl<'a> Scope<'a> {
    fn field(&self) -> &'a Field {
        match self {
            Scope::Normal { field, .. } => field,
            Scope::Raw { field, .. } => field,
        }
    }
}

enum Value {
    Num(Scalar),
    Poly(NcPoly),
    Hopf(HopfElem),
    Tensor(TensorElem),
    Smash(SmashElem),
    Raw(Vec<(Scalar, RawWord)>),
    RawTensor(Vec<(Scalar, RawWord, RawWord)>),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Num(_) => "a scalar",
            Value::Poly(_) => "a word element",
            Value::Hopf(_) => "a Hopf element",
            Value::Tensor(_) => "a tensor",
            Value::Smash(_) => "a smash element",
            Value::Raw(_) => "a presentation word",
            Value::RawTensor(_) => "a presentation tensor",
        }
    }
}

fn mismatch(op: &str, a: &Value, b: &Value) -> Error {
    Error::Parse(format!("cannot {op} {} and {}", a.kind(), b.kind()))
}

fn resolve_name(n: &str, scope: &Scope, params: &Params) -> Result<Value> {
    if let Some(p) = params.get(n) {
        return Ok(Value::Num(match p {
            ParamValue::Int(i) => scope.field().integer(*i),
            ParamValue::Scalar(s) => {
                if s.field() != scope.field() {
                    return Err(Error::FieldMismatch(
                        s.field().describe(),
                        scope.field().describe(),
                    ));
                }
                s.clone()
            }
            ParamValue::Str(_) => {
                return Err(Error::Parse(format!(
                    "parameter {n} is text; it has no value in an expression"
                )));
            }
        }));
    }
    match scope {
        Scope::Normal { field, gens, hopf, .. } => {
            if let Some(gs) = gens {
                if let Some(i) = gs.index_of(n) {
                    return Ok(Value::Poly(NcPoly::gen(gs, i, field)));
                }
            }
            if let Some(h) = hopf {
                if let Some(i) = h.gen_index(n) {
                    return Ok(Value::Hopf(HopfElem::gen(h, i)?));
                }
            }
        }
        Scope::Raw { field, names } => {
            if let Some(i) = names.iter().position(|m| m == n) {
                return Ok(Value::Raw(vec![(field.one(), vec![(i as u8, 1)])]));
            }
        }
    }
    if n == "z" {
        return Ok(Value::Num(scope.field().zeta()));
    }
    Err(Error::Parse(format!("unknown name {n:?}")))
}

fn neg_value(v: Value) -> Value {
    match v {
        Value::Num(x) => Value::Num(-&x),
        Value::Poly(p) => Value::Poly(p.neg()),
        Value::Hopf(h) => Value::Hopf(h.neg()),
        Value::Tensor(t) => {
            let m = t.hopf().field().integer(-1);
            Value::Tensor(t.scale(&m))
        }
        Value::Smash(m) => Value::Smash(m.neg()),
        Value::Raw(v) => Value::Raw(v.into_iter().map(|(c, w)| (-&c, w)).collect()),
        Value::RawTensor(v) => {
            Value::RawTensor(v.into_iter().map(|(c, a, b)| (-&c, a, b)).collect())
        }
    }
}

fn add_values(a: Value, b: Value) -> Result<Value> {
    use Value::*;
    Ok(match (a, b) {
        (Num(x), Num(y)) => Num(x.checked_add(&y)?),
        (Num(x), Poly(p)) | (Poly(p), Num(x)) => {
            let unit = NcPoly::one(p.gens(), p.field()).scale(&x);
            Poly(p.add(&unit)?)
        }
        (Num(x), Hopf(h)) | (Hopf(h), Num(x)) => {
            let unit = HopfElem::one(h.hopf()).scale(&x);
            Hopf(h.add(&unit)?)
        }
        (Num(x), Tensor(t)) | (Tensor(t), Num(x)) => {
            let unit = TensorElem::unit(t.hopf(), t.legs()).scale(&x);
            Tensor(t.add(&unit)?)
        }
        (Num(x), Smash(m)) | (Smash(m), Num(x)) => {
            let unit = SmashElem::one(m.action()).scale(&x);
            Smash(m.add(&unit)?)
        }
        (Num(x), Raw(mut v)) | (Raw(mut v), Num(x)) => {
            v.push((x, Vec::new()));
            Raw(v)
        }
        (Num(x), RawTensor(mut v)) | (RawTensor(mut v), Num(x)) => {
            v.push((x, Vec::new(), Vec::new()));
            RawTensor(v)
        }
        (Poly(p), Poly(q)) => Poly(p.add(&q)?),
        (Hopf(g), Hopf(h)) => Hopf(g.add(&h)?),
        (Tensor(s), Tensor(t)) => Tensor(s.add(&t)?),
        (Smash(m), Smash(n)) => Smash(m.add(&n)?),
        (Raw(mut v), Raw(w)) => {
            v.extend(w);
            Raw(v)
        }
        (RawTensor(mut v), RawTensor(w)) => {
            v.extend(w);
            RawTensor(v)
        }
        (a, b) => return Err(mismatch("add", &a, &b)),
    })
}

fn mul_values(a: Value, b: Value) -> Result<Value> {
    use Value::*;
    Ok(match (a, b) {
        (Num(x), Num(y)) => Num(x.checked_mul(&y)?),
        (Num(x), Poly(p)) | (Poly(p), Num(x)) => Poly(p.scale(&x)),
        (Num(x), Hopf(h)) | (Hopf(h), Num(x)) => Hopf(h.scale(&x)),
        (Num(x), Tensor(t)) | (Tensor(t), Num(x)) => Tensor(t.scale(&x)),
        (Num(x), Smash(m)) | (Smash(m), Num(x)) => Smash(m.scale(&x)),
        (Num(x), Raw(v)) | (Raw(v), Num(x)) => {
            Raw(v.into_iter().map(|(c, w)| (&c * &x, w)).collect())
        }
        (Num(x), RawTensor(v)) | (RawTensor(v), Num(x)) => {
            RawTensor(v.into_iter().map(|(c, a, b)| (&c * &x, a, b)).collect())
        }
        (Poly(p), Poly(q)) => Poly(p.nc_mul(&q)?),
        (Hopf(g), Hopf(h)) => Hopf(g.mul(&h)?),
        (Tensor(s), Tensor(t)) => Tensor(s.mul(&t)?),
        (Smash(m), Smash(n)) => Smash(m.mul(&n)?),
        (Raw(v), Raw(w)) => {
            let mut out = Vec::new();
            for (c1, w1) in &v {
                for (c2, w2) in &w {
                    let mut ww = w1.clone();
                    ww.extend(w2.iter().copied());
                    out.push((c1 * c2, ww));
                }
            }
            Raw(out)
        }
        (Poly(_), Hopf(_)) | (Hopf(_), Poly(_)) => {
            return Err(Error::Parse(
                "attach a Hopf part to a word part with #, not *".into(),
            ))
        }
        (a, b) => return Err(mismatch("multiply", &a, &b)),
    })
}

fn div_values(a: Value, b: Value) -> Result<Value> {
    match b {
        Value::Num(d) => mul_values(a, Value::Num(d.invert()?)),
        b => Err(Error::Parse(format!(
            "division is by scalars only, not {}",
            b.kind()
        ))),
    }
}

fn tensor_values(a: Value, b: Value, scope: &Scope) -> Result<Value> {
    use Value::*;
    match (a, b) {
        (Hopf(g), Hopf(h)) => Ok(Tensor(TensorElem::pure(&[g, h])?)),
        (Tensor(t), Hopf(h)) => {
            let mut out = TensorElem::zero(t.hopf(), t.legs() + 1);
            for (ws, c) in t.terms() {
                for (hw, d) in h.terms() {
                    let mut v = ws.clone();
                    v.push(hw.clone());
                    out.add_term(v, c * d);
                }
            }
            Ok(Tensor(out))
        }
        (Hopf(h), Tensor(t)) => {
            let mut out = TensorElem::zero(t.hopf(), t.legs() + 1);
            for (ws, c) in t.terms() {
                for (hw, d) in h.terms() {
                    let mut v = ws.clone();
                    v.insert(0, hw.clone());
                    out.add_term(v, c * d);
                }
            }
            Ok(Tensor(out))
        }
        (Num(x), Hopf(h)) => {
            let unit = HopfElem::one(h.hopf()).scale(&x);
            Ok(Tensor(TensorElem::pure(&[unit, h])?))
        }
        (Hopf(h), Num(x)) => {
            let unit = HopfElem::one(h.hopf()).scale(&x);
            Ok(Tensor(TensorElem::pure(&[h, unit])?))
        }
        (Num(x), Num(y)) => match scope {
            Scope::Normal { hopf: Some(h), .. } => {
                Ok(Tensor(TensorElem::unit(h, 2).scale(&(&x * &y))))
            }
            Scope::Normal { .. } => Err(Error::Parse(
                "tensor legs need Hopf elements in scope".into(),
            )),
            Scope::Raw { .. } => Ok(RawTensor(vec![(&x * &y, Vec::new(), Vec::new())])),
        },
        (Raw(v), Raw(w)) => {
            let mut out = Vec::new();
            for (c1, w1) in &v {
                for (c2, w2) in &w {
                    out.push((c1 * c2, w1.clone(), w2.clone()));
                }
            }
            Ok(RawTensor(out))
        }
        (Num(x), Raw(w)) => tensor_values(Raw(vec![(x, Vec::new())]), Raw(w), scope),
        (Raw(v), Num(x)) => tensor_values(Raw(v), Raw(vec![(x, Vec::new())]), scope),
        (RawTensor(_), _) | (_, RawTensor(_)) => Err(Error::Parse(
            "a presentation tensor has exactly two legs".into(),
        )),
        (a, b) => Err(mismatch("tensor", &a, &b)),
    }
}

fn smash_values(a: Value, b: Value, scope: &Scope) -> Result<Value> {
    let action = match scope {
        Scope::Normal {
            action: Some(act), ..
        } => *act,
        _ => {
            return Err(Error::Parse(
                "a # expression needs a module action in scope".into(),
            ))
        }
    };
    let field = scope.field();
    let p = match a {
        Value::Poly(p) => p,
        Value::Num(x) => NcPoly::one(action.module(), field).scale(&x),
        v => {
            return Err(Error::Parse(format!(
                "the left side of # is a word part, found {}",
                v.kind()
            )))
        }
    };
    let h = match b {
        Value::Hopf(h) => h,
        Value::Num(x) => HopfElem::one(action.hopf()).scale(&x),
        v => {
            return Err(Error::Parse(format!(
                "the right side of # is a Hopf part, found {}",
                v.kind()
            )))
        }
    };
    Ok(Value::Smash(SmashElem::smash(action, &p, &h)?))
}

fn hopf_pow(h: &HopfElem, k: i64) -> Result<HopfElem> {
    let hopf = h.hopf();
    if k == 0 {
        return Ok(HopfElem::one(hopf));
    }
    if h.num_terms() == 1 {
        let (w, c) = h.terms().next().expect("one term");
        let cp = c.pow(k)?;
        let letters = w.letters();
        if letters.len() <= 1 {
            let raw: RawWord = letters
                .iter()
                .map(|&(g, e)| {
                    e.checked_mul(k)
                        .map(|ek| (g, ek))
                        .ok_or_else(|| Error::Parse("exponent overflows".into()))
                })
                .collect::<Result<_>>()?;
            return HopfElem::from_raw(hopf, vec![(cp, raw)]);
        }
        let mut raw = Vec::new();
        if k > 0 {
            for _ in 0..k {
                raw.extend(letters.iter().copied());
            }
        } else {
            let inv: Vec<(u8, i64)> = letters.iter().rev().map(|&(g, e)| (g, -e)).collect();
            for _ in 0..-k {
                raw.extend(inv.iter().copied());
            }
        }
        return HopfElem::from_raw(hopf, vec![(cp, raw)]);
    }
    if k < 0 {
        return Err(Error::Parse(format!(
            "cannot invert a sum: ({})^{k}",
            h.render()
        )));
    }
    let mut acc = HopfElem::one(hopf);
    for _ in 0..k {
        acc = acc.mul(h)?;
    }
    Ok(acc)
}

fn raw_pow(terms: Vec<(Scalar, RawWord)>, k: i64, field: &Field) -> Result<Vec<(Scalar, RawWord)>> {
    if k == 0 {
        return Ok(vec![(field.one(), Vec::new())]);
    }
    if terms.len() == 1 {
        let (c, w) = &terms[0];
        let cp = c.pow(k)?;
        if w.len() <= 1 {
            let raw: RawWord = w
                .iter()
                .map(|&(g, e)| {
                    e.checked_mul(k)
                        .map(|ek| (g, ek))
                        .ok_or_else(|| Error::Parse("exponent overflows".into()))
                })
                .collect::<Result<_>>()?;
            return Ok(vec![(cp, raw)]);
        }
        let mut raw = Vec::new();
        if k > 0 {
            for _ in 0..k {
                raw.extend(w.iter().copied());
            }
        } else {
            let inv: Vec<(u8, i64)> = w.iter().rev().map(|&(g, e)| (g, -e)).collect();
            for _ in 0..-k {
                raw.extend(inv.iter().copied());
            }
        }
        return Ok(vec![(cp, raw)]);
    }
    if k < 0 {
        return Err(Error::Parse("cannot invert a sum of words".into()));
    }
    let mut acc = Value::Raw(vec![(field.one(), Vec::new())]);
    for _ in 0..k {
        acc = mul_values(acc, Value::Raw(terms.clone()))?;
    }
    match acc {
        Value::Raw(v) => Ok(v),
        _ => unreachable!(),
    }
}

fn pow_value(v: Value, k: i64, scope: &Scope) -> Result<Value> {
    match v {
        Value::Num(x) => Ok(Value::Num(x.pow(k)?)),
        Value::Hopf(h) => Ok(Value::Hopf(hopf_pow(&h, k)?)),
        Value::Poly(p) => {
            if k < 0 {
                return Err(Error::Parse("negative power of a word element".into()));
            }
            let mut acc = NcPoly::one(p.gens(), p.field());
            for _ in 0..k {
                acc = acc.nc_mul(&p)?;
            }
            Ok(Value::Poly(acc))
        }
        Value::Raw(terms) => Ok(Value::Raw(raw_pow(terms, k, scope.field())?)),
        Value::Tensor(t) => {
            if k < 0 {
                return Err(Error::Parse("negative power of a tensor".into()));
            }
            let mut acc = TensorElem::unit(t.hopf(), t.legs());
            for _ in 0..k {
                acc = acc.mul(&t)?;
            }
            Ok(Value::Tensor(acc))
        }
        Value::Smash(m) => {
            if k < 0 {
                return Err(Error::Parse("negative power of a smash element".into()));
            }
            let mut acc = SmashElem::one(m.action());
            for _ in 0..k {
                acc = acc.mul(&m)?;
            }
            Ok(Value::Smash(acc))
        }
        Value::RawTensor(_) => Err(Error::Parse("cannot raise a tensor to a power".into())),
    }
}

fn eval(ast: &Ast, scope: &Scope, params: &Params) -> Result<Value> {
    match ast {
        Ast::Num(n) => Ok(Value::Num(scope.field().integer(*n))),
        Ast::Name(n) => resolve_name(n, scope, params),
        Ast::Neg(a) => Ok(neg_value(eval(a, scope, params)?)),
        Ast::Add(a, b) => add_values(eval(a, scope, params)?, eval(b, scope, params)?),
        Ast::Sub(a, b) => add_values(
            eval(a, scope, params)?,
            neg_value(eval(b, scope, params)?),
        ),
        Ast::Mul(a, b) => mul_values(eval(a, scope, params)?, eval(b, scope, params)?),
        Ast::Div(a, b) => div_values(eval(a, scope, params)?, eval(b, scope, params)?),
        Ast::Pow(a, e) => {
            let k = eval_int(e, params)?;
            pow_value(eval(a, scope, params)?, k, scope)
        }
        Ast::Tensor(a, b) => tensor_values(
            eval(a, scope, params)?,
            eval(b, scope, params)?,
            scope,
        ),
        Ast::Smash(a, b) => smash_values(
            eval(a, scope, params)?,
            eval(b, scope, params)?,
            scope,
        ),
    }
}

/// Parse a scalar such as `-3/2` or `1/2*z^2 - 1`.
pub fn parse_scalar(src: &str, field: &Field, params: &Params) -> Result<Scalar> {
    let scope = Scope::Normal {
        field,
        gens: None,
        hopf: None,
        action: None,
    };
    match eval(&parse_ast(src)?, &scope, params)? {
        Value::Num(s) => Ok(s),
        v => Err(Error::Parse(format!(
            "expected a scalar, found {} in {src:?}",
            v.kind()
        ))),
    }
}

/// Parse a noncommutative polynomial such as `u.v - q^2*v.u` over the named
/// generators.
pub fn parse_poly(src: &str, gens: &GenSet, field: &Field, params: &Params) -> Result<NcPoly> {
    let scope = Scope::Normal {
        field,
        gens: Some(gens),
        hopf: None,
        action: None,
    };
    match eval(&parse_ast(src)?, &scope, params)? {
        Value::Poly(p) => Ok(p),
        Value::Num(s) => Ok(NcPoly::one(gens, field).scale(&s)),
        v => Err(Error::Parse(format!(
            "expected a word element, found {} in {src:?}",
            v.kind()
        ))),
    }
}

/// Parse a Hopf algebra element such as `3*g + 1` or `alpha*K^(3*s0)`.
pub fn parse_hopf_elem(src: &str, hopf: &Hopf, params: &Params) -> Result<HopfElem> {
    let scope = Scope::Normal {
        field: hopf.field(),
        gens: None,
        hopf: Some(hopf),
        action: None,
    };
    match eval(&parse_ast(src)?, &scope, params)? {
        Value::Hopf(h) => Ok(h),
        Value::Num(s) => Ok(HopfElem::one(hopf).scale(&s)),
        v => Err(Error::Parse(format!(
            "expected a Hopf element, found {} in {src:?}",
            v.kind()
        ))),
    }
}

/// Parse a two-leg element of H (x) H written with `@`, such as an R-matrix.
pub fn parse_tensor(src: &str, hopf: &Hopf, params: &Params) -> Result<TensorElem> {
    let scope = Scope::Normal {
        field: hopf.field(),
        gens: None,
        hopf: Some(hopf),
        action: None,
    };
    match eval(&parse_ast(src)?, &scope, params)? {
        Value::Tensor(t) => Ok(t),
        Value::Num(s) => Ok(TensorElem::unit(hopf, 2).scale(&s)),
        Value::Hopf(_) => Err(Error::Parse(format!(
            "{src:?} has a single leg; join legs with @"
        ))),
        v => Err(Error::Parse(format!(
            "expected a tensor, found {} in {src:?}",
            v.kind()
        ))),
    }
}

/// Parse a smash product element such as `u#g + 2*v#g.x - 1`.
pub fn parse_smash(src: &str, action: &ActionSpec, params: &Params) -> Result<SmashElem> {
    let scope = Scope::Normal {
        field: action.hopf().field(),
        gens: Some(action.module()),
        hopf: Some(action.hopf()),
        action: Some(action),
    };
    match eval(&parse_ast(src)?, &scope, params)? {
        Value::Smash(m) => Ok(m),
        Value::Poly(p) => SmashElem::from_poly(action, &p),
        Value::Hopf(h) => SmashElem::from_hopf(action, &h),
        Value::Num(s) => Ok(SmashElem::one(action).scale(&s)),
        v => Err(Error::Parse(format!(
            "expected a smash element, found {} in {src:?}",
            v.kind()
        ))),
    }
}

fn parse_raw_terms(
    src: &str,
    names: &[String],
    field: &Field,
    params: &Params,
) -> Result<Vec<(Scalar, RawWord)>> {
    let scope = Scope::Raw { field, names };
    match eval(&parse_ast(src)?, &scope, params)? {
        Value::Raw(v) => Ok(v),
        Value::Num(s) => Ok(vec![(s, Vec::new())]),
        v => Err(Error::Parse(format!(
            "expected a sum of words, found {} in {src:?}",
            v.kind()
        ))),
    }
}

fn parse_raw_tensor(
    src: &str,
    names: &[String],
    field: &Field,
    params: &Params,
) -> Result<Vec<(Scalar, RawWord, RawWord)>> {
    let scope = Scope::Raw { field, names };
    match eval(&parse_ast(src)?, &scope, params)? {
        Value::RawTensor(v) => Ok(v),
        Value::Num(s) => Ok(vec![(s, Vec::new(), Vec::new())]),
        Value::Raw(_) => Err(Error::Parse(format!(
            "{src:?} needs two legs joined with @"
        ))),
        v => Err(Error::Parse(format!(
            "expected a two-leg sum, found {} in {src:?}",
            v.kind()
        ))),
    }
}

// ---------------------------------------------------------------------------
// TOML documents
// ---------------------------------------------------------------------------

type Table = toml::map::Map<String, toml::Value>;

fn toml_root(src: &str) -> Result<Table> {
    src.parse::<Table>()
        .map_err(|e| Error::Parse(format!("document is not valid TOML: {e}")))
}

fn section<'a>(t: &'a Table, key: &str) -> Result<Option<&'a Table>> {
    match t.get(key) {
        None => Ok(None),
        Some(toml::Value::Table(x)) => Ok(Some(x)),
        Some(_) => Err(Error::Parse(format!("[{key}] must be a table"))),
    }
}

fn want_str<'a>(v: &'a toml::Value, what: &str) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| Error::Parse(format!("{what} must be a string")))
}

fn opt_str<'a>(t: &'a Table, key: &str) -> Result<Option<&'a str>> {
    match t.get(key) {
        None => Ok(None),
        Some(v) => Ok(Some(want_str(v, key)?)),
    }
}

fn opt_int(t: &Table, key: &str) -> Result<Option<i64>> {
    match t.get(key) {
        None => Ok(None),
        Some(toml::Value::Integer(i)) => Ok(Some(*i)),
        Some(_) => Err(Error::Parse(format!("{key} must be an integer"))),
    }
}

fn opt_bool(t: &Table, key: &str) -> Result<Option<bool>> {
    match t.get(key) {
        None => Ok(None),
        Some(toml::Value::Boolean(b)) => Ok(Some(*b)),
        Some(_) => Err(Error::Parse(format!("{key} must be a boolean"))),
    }
}

fn str_list(t: &Table, key: &str) -> Result<Option<Vec<String>>> {
    match t.get(key) {
        None => Ok(None),
        Some(toml::Value::Array(a)) => a
            .iter()
            .map(|v| want_str(v, key).map(str::to_string))
            .collect::<Result<Vec<_>>>()
            .map(Some),
        Some(_) => Err(Error::Parse(format!("{key} must be an array of strings"))),
    }
}

fn check_keys(t: &Table, allowed: &[&str], what: &str) -> Result<()> {
    for k in t.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(Error::Parse(format!("unknown key {k:?} in {what}")));
        }
    }
    Ok(())
}

fn scalar_entry(v: &toml::Value, field: &Field, params: &Params, what: &str) -> Result<Scalar> {
    match v {
        toml::Value::Integer(i) => Ok(field.integer(*i)),
        toml::Value::String(s) => parse_scalar(s, field, params),
        _ => Err(Error::Parse(format!(
            "{what} entries are integers or exact scalar strings"
        ))),
    }
}

fn field_from(t: &Table) -> Result<Option<Field>> {
    match t.get("field") {
        None => Ok(None),
        Some(toml::Value::String(s)) if s == "rationals" => Ok(Some(Field::rationals())),
        Some(toml::Value::Table(ft)) => {
            check_keys(ft, &["cyclotomic"], "field")?;
            let m = opt_int(ft, "cyclotomic")?
                .ok_or_else(|| Error::Parse("field tables name a cyclotomic order".into()))?;
            if !(1..=10_000).contains(&m) {
                return Err(Error::BadParams(format!("cyclotomic order {m} out of range")));
            }
            Ok(Some(Field::cyclotomic(m as u32)))
        }
        Some(_) => Err(Error::Parse(
            "field is \"rationals\" or { cyclotomic = m }".into(),
        )),
    }
}

fn build_hopf(t: &Table) -> Result<(Hopf, Params)> {
    if let Some(builtin) = opt_str(t, "builtin")? {
        check_keys(t, &["builtin", "n", "field"], "the Hopf section")?;
        return match builtin {
            "kC2" => {
                let field = field_from(t)?.unwrap_or_else(Field::rationals);
                Ok((hopf::kc2(&field)?, Params::new()))
            }
            "T2" => {
                let field = field_from(t)?.unwrap_or_else(Field::rationals);
                Ok((hopf::sweedler(&field)?, Params::new()))
            }
            "Uqsl2" | "Uqgl2" => {
                let n = opt_int(t, "n")?.ok_or_else(|| {
                    Error::Parse(format!("builtin {builtin} needs n, the order of q"))
                })?;
                if !(1..=10_000).contains(&n) {
                    return Err(Error::BadParams(format!("order n = {n} out of range")));
                }
                let field = Field::cyclotomic(n as u32);
                let q = field.zeta();
                let h = if builtin == "Uqsl2" {
                    hopf::uqsl2(&field, &q)?
                } else {
                    hopf::uqgl2(&field, &q)?
                };
                let mut p = Params::new();
                p.insert("q".into(), ParamValue::Scalar(q));
                p.insert("n".into(), ParamValue::Int(n));
                Ok((h, p))
            }
            other => Err(Error::Parse(format!(
                "unknown builtin Hopf algebra {other:?}"
            ))),
        };
    }

    check_keys(
        t,
        &["name", "field", "generator", "swaps", "basis"],
        "the Hopf section",
    )?;
    let name = opt_str(t, "name")?
        .ok_or_else(|| Error::Parse("a Hopf section needs builtin or name".into()))?
        .to_string();
    let field = field_from(t)?.unwrap_or_else(Field::rationals);
    let empty = Params::new();

    let gen_tables: Vec<&Table> = match t.get("generator") {
        Some(toml::Value::Array(a)) => a
            .iter()
            .map(|v| {
                v.as_table()
                    .ok_or_else(|| Error::Parse("each [[generator]] is a table".into()))
            })
            .collect::<Result<_>>()?,
        _ => {
            return Err(Error::Parse(
                "a Hopf presentation needs [[generator]] entries".into(),
            ))
        }
    };
    if gen_tables.len() > u8::MAX as usize {
        return Err(Error::Parse("too many generators".into()));
    }

    let mut names = Vec::new();
    let mut gens = Vec::new();
    for gt in &gen_tables {
        check_keys(
            gt,
            &["name", "grouplike", "skew_primitive", "delta", "antipode"],
            "a generator entry",
        )?;
        let gname = opt_str(gt, "name")?
            .ok_or_else(|| Error::Parse("a generator entry needs a name".into()))?
            .to_string();
        let class = match (opt_int(gt, "grouplike")?, opt_int(gt, "skew_primitive")?) {
            (Some(o), None) => GenClass::Grouplike {
                order: o
                    .try_into()
                    .map_err(|_| Error::Parse(format!("bad order {o} for {gname}")))?,
            },
            (None, Some(n)) => GenClass::SkewPrimitive {
                nil: n
                    .try_into()
                    .map_err(|_| Error::Parse(format!("bad nil index {n} for {gname}")))?,
            },
            _ => {
                return Err(Error::Parse(format!(
                    "generator {gname} needs exactly one of grouplike or skew_primitive"
                )))
            }
        };
        names.push(gname.clone());
        gens.push(HopfGen { name: gname, class });
    }

    let mut skew_delta = BTreeMap::new();
    let mut skew_antipode = BTreeMap::new();
    for (idx, gt) in gen_tables.iter().enumerate() {
        if let Some(d) = opt_str(gt, "delta")? {
            skew_delta.insert(idx as u8, parse_raw_tensor(d, &names, &field, &empty)?);
        }
        if let Some(s) = opt_str(gt, "antipode")? {
            skew_antipode.insert(idx as u8, parse_raw_terms(s, &names, &field, &empty)?);
        }
    }

    let mut swaps = BTreeMap::new();
    if let Some(st) = section(t, "swaps")? {
        for (key, v) in st {
            let mut parts = key.split('.');
            let (hi_name, lo_name) = match (parts.next(), parts.next(), parts.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => {
                    return Err(Error::Parse(format!(
                        "swap keys are written \"later.earlier\", not {key:?}"
                    )))
                }
            };
            let hi = names
                .iter()
                .position(|n| n == hi_name)
                .ok_or_else(|| Error::Parse(format!("unknown generator {hi_name:?}")))?
                as u8;
            let lo = names
                .iter()
                .position(|n| n == lo_name)
                .ok_or_else(|| Error::Parse(format!("unknown generator {lo_name:?}")))?
                as u8;
            if hi <= lo {
                return Err(Error::Parse(format!(
                    "swap key {key:?} must put the later generator first"
                )));
            }
            let terms = parse_raw_terms(want_str(v, "a swap rule")?, &names, &field, &empty)?;
            let rule = if terms.len() == 1 && terms[0].1 == vec![(lo, 1), (hi, 1)] {
                SwapRule::Commute(terms[0].0.clone())
            } else {
                SwapRule::General(terms)
            };
            swaps.insert((hi, lo), rule);
        }
    }

    let finite_basis = match t.get("basis") {
        None => None,
        Some(toml::Value::Array(a)) => {
            let mut words = Vec::new();
            for v in a {
                let s = want_str(v, "a basis entry")?;
                let terms = parse_raw_terms(s, &names, &field, &empty)?;
                match terms.as_slice() {
                    [(c, w)] if c.is_one() => words.push(w.clone()),
                    _ => {
                        return Err(Error::Parse(format!(
                            "basis entries are single words, not {s:?}"
                        )))
                    }
                }
            }
            Some(words)
        }
        Some(_) => return Err(Error::Parse("basis must be an array of words".into())),
    };

    let h = Hopf::new(HopfPresentation {
        name,
        field,
        gens,
        swaps,
        skew_delta,
        skew_antipode,
        finite_basis,
    })?;
    Ok((h, Params::new()))
}

/// Load a Hopf algebra from a TOML document, either the whole document or
/// its `[hopf]` section. Returns the algebra and any parameters it implies,
/// such as `q` and `n` for the quantized enveloping builtins.
pub fn parse_hopf_doc(src: &str) -> Result<(Hopf, Params)> {
    let root = toml_root(src)?;
    match section(&root, "hopf")? {
        Some(t) => build_hopf(t),
        None => build_hopf(&root),
    }
}

/// A system assembled from a TOML document: the Hopf algebra, the module
/// algebra (a single factor, or a braided or twisted product), the braiding
/// if one was given, and the resolved parameters.
pub struct BuiltSystem {
    pub hopf: Hopf,
    pub module: ModuleAlgebra,
    pub braiding: Option<BraidingSpec>,
    pub params: Params,
}

fn build_factor(
    t: &Table,
    action_table: Option<&Table>,
    hopf: &Hopf,
    params: &Params,
    what: &str,
) -> Result<ModuleAlgebra> {
    let names = str_list(t, "generators")?
        .ok_or_else(|| Error::Parse(format!("[{what}] needs a generators list")))?;
    let gens = GenSet::new(names)?;
    let field = hopf.field();
    let mut labels = Vec::new();
    let mut rels = Vec::new();
    if let Some(rt) = section(t, "relations")? {
        for (label, v) in rt {
            labels.push(label.clone());
            rels.push(parse_poly(
                want_str(v, "a relation")?,
                &gens,
                field,
                params,
            )?);
        }
    }
    let alg = QuadraticAlgebra::new(&gens, field, labels, rels)?;
    let at = action_table
        .ok_or_else(|| Error::Parse(format!("[{what}] needs an action section")))?;
    for key in at.keys() {
        if hopf.gen_index(key).is_none() {
            return Err(Error::Parse(format!(
                "{key:?} in the action section is not a Hopf generator"
            )));
        }
    }
    let mut mats = Vec::new();
    for idx in 0..hopf.num_gens() {
        let gname = hopf.gen_name(idx as u8);
        let mv = at.get(gname).ok_or_else(|| {
            Error::Parse(format!("the action section is missing the matrix for {gname}"))
        })?;
        mats.push(parse_matrix(mv, gens.len(), field, params, gname)?);
    }
    ModuleAlgebra::new(alg, ActionSpec::new(hopf, &gens, mats)?)
}

fn parse_matrix(
    v: &toml::Value,
    n: usize,
    field: &Field,
    params: &Params,
    what: &str,
) -> Result<Matrix> {
    let rows_v = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("the matrix for {what} must be an array of rows")))?;
    if rows_v.len() != n {
        return Err(Error::Parse(format!(
            "the matrix for {what} must be {n} x {n}"
        )));
    }
    let mut rows = Vec::new();
    for rv in rows_v {
        let row_v = rv
            .as_array()
            .ok_or_else(|| Error::Parse(format!("each row for {what} must be an array")))?;
        if row_v.len() != n {
            return Err(Error::Parse(format!(
                "the matrix for {what} must be {n} x {n}"
            )));
        }
        let mut row = Vec::new();
        for ev in row_v {
            row.push(scalar_entry(ev, field, params, "matrix")?);
        }
        rows.push(row);
    }
    Matrix::from_rows(field, rows)
}

fn build_twist(
    tt: &Table,
    x: &ModuleAlgebra,
    y: &ModuleAlgebra,
    params: &Params,
) -> Result<CrossMap> {
    let xg = x.alg().gens();
    let yg = y.alg().gens();
    let combined = xg.concat(yg)?;
    let field = x.alg().field();
    let nx = xg.len();
    let mut seen = vec![false; nx * yg.len()];
    let mut entries = Vec::new();
    for (key, v) in tt {
        let mut parts = key.split('.');
        let (yname, xname) = match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(Error::Parse(format!(
                    "twist keys are written \"y.x\", not {key:?}"
                )))
            }
        };
        let j = yg
            .index_of(yname)
            .ok_or_else(|| Error::Parse(format!("{yname:?} is not a right-factor generator")))?
            as usize;
        let i = xg
            .index_of(xname)
            .ok_or_else(|| Error::Parse(format!("{xname:?} is not a left-factor generator")))?
            as usize;
        if seen[j * nx + i] {
            return Err(Error::Parse(format!("duplicate twist entry {key:?}")));
        }
        seen[j * nx + i] = true;
        let p = parse_poly(want_str(v, "a twist image")?, &combined, field, params)?;
        let mut targets = Vec::new();
        for (w, c) in p.terms() {
            let ok = w.0.len() == 2 && (w.0[0] as usize) < nx && (w.0[1] as usize) >= nx;
            if !ok {
                return Err(Error::Parse(format!(
                    "twist images are sums of x.y words, got {}",
                    p.render()
                )));
            }
            targets.push(((w.0[0] as usize, w.0[1] as usize - nx), c.clone()));
        }
        entries.push(((j, i), targets));
    }
    if let Some(flat) = seen.iter().position(|s| !s) {
        let (j, i) = (flat / nx, flat % nx);
        return Err(Error::Parse(format!(
            "twist table is missing the pair \"{}.{}\"",
            yg.name(j as u8),
            xg.name(i as u8)
        )));
    }
    CrossMap::from_entries(xg, yg, field, &entries)
}

/// Assemble a system document. `overrides` take precedence over the
/// document's own `[params]` section.
pub fn parse_system(src: &str, overrides: &Params) -> Result<BuiltSystem> {
    let root = toml_root(src)?;
    check_keys(
        &root,
        &[
            "hopf", "params", "algebra", "action", "braiding", "opposite", "second", "product",
        ],
        "a system document",
    )?;
    let ht = section(&root, "hopf")?
        .ok_or_else(|| Error::Parse("a system document needs a [hopf] section".into()))?;
    let (hopf, mut params) = build_hopf(ht)?;
    let field = hopf.field().clone();

    if let Some(pt) = section(&root, "params")? {
        for (k, v) in pt {
            let pv = match v {
                toml::Value::Integer(i) => ParamValue::Int(*i),
                toml::Value::String(s) => ParamValue::Scalar(parse_scalar(s, &field, &params)?),
                _ => {
                    return Err(Error::Parse(format!(
                        "parameter {k} must be an integer or an exact scalar string"
                    )))
                }
            };
            params.insert(k.clone(), pv);
        }
    }
    for (k, v) in overrides {
        params.insert(k.clone(), v.clone());
    }

    let at = section(&root, "algebra")?
        .ok_or_else(|| Error::Parse("a system document needs an [algebra] section".into()))?;
    check_keys(at, &["generators", "relations"], "[algebra]")?;
    let x = build_factor(at, section(&root, "action")?, &hopf, &params, "algebra")?;

    let bt = section(&root, "braiding")?;
    if let Some(bt) = bt {
        check_keys(bt, &["r_matrix", "twist"], "[braiding]")?;
    }
    let mut braiding = None;
    if let Some(bt) = bt {
        if let Some(rs) = opt_str(bt, "r_matrix")? {
            let t = parse_tensor(rs, &hopf, &params)?;
            if t.legs() != 2 {
                return Err(Error::Parse(format!(
                    "an R-matrix has two legs, this one has {}",
                    t.legs()
                )));
            }
            braiding = Some(BraidingSpec::RMatrix(t));
        }
    }

    let second = section(&root, "second")?;
    let opposite = section(&root, "opposite")?;
    if second.is_some() && opposite.is_some() {
        return Err(Error::Parse(
            "give either [second] or [opposite], not both".into(),
        ));
    }
    let y = if let Some(ot) = opposite {
        check_keys(ot, &["generators", "prefix"], "[opposite]")?;
        let names = str_list(ot, "generators")?
            .ok_or_else(|| Error::Parse("[opposite] needs a generators list".into()))?;
        let primed = GenSet::new(names)?;
        let prefix = opt_str(ot, "prefix")?.unwrap_or("s");
        let spec = braiding
            .as_ref()
            .ok_or_else(|| Error::Parse("[opposite] needs a braiding".into()))?;
        Some(braided_opposite(&x, spec, &primed, prefix)?)
    } else if let Some(st) = second {
        check_keys(st, &["generators", "relations", "action"], "[second]")?;
        Some(build_factor(
            st,
            section(st, "action")?,
            &hopf,
            &params,
            "second",
        )?)
    } else {
        None
    };

    let twist_table = match bt {
        Some(bt) => section(bt, "twist")?,
        None => None,
    };
    let product = section(&root, "product")?;
    if let Some(pt) = product {
        check_keys(pt, &["kind"], "[product]")?;
    }

    let module = match y {
        None => {
            if product.is_some() {
                return Err(Error::Parse(
                    "[product] needs a second factor, [second] or [opposite]".into(),
                ));
            }
            x
        }
        Some(y) => {
            let kind = match product {
                Some(pt) => opt_str(pt, "kind")?
                    .ok_or_else(|| Error::Parse("[product] needs a kind".into()))?
                    .to_string(),
                None => {
                    if twist_table.is_some() {
                        "twisted".to_string()
                    } else {
                        "braided".to_string()
                    }
                }
            };
            match kind.as_str() {
                "braided" => {
                    let spec = braiding
                        .as_ref()
                        .ok_or_else(|| Error::Parse("a braided product needs a braiding".into()))?;
                    braided_product(&x, &y, spec)?
                }
                "twisted" => {
                    let tt = twist_table.ok_or_else(|| {
                        Error::Parse("a twisted product needs a [braiding.twist] table".into())
                    })?;
                    let cross = build_twist(tt, &x, &y, &params)?;
                    twisted_tensor(&x, &y, &cross)?
                }
                other => {
                    return Err(Error::Parse(format!(
                        "unknown product kind {other:?}; use braided or twisted"
                    )))
                }
            }
        }
    };

    Ok(BuiltSystem {
        hopf,
        module,
        braiding,
        params,
    })
}

/// Load a deformation map document with `[constant]` and `[linear]` tables
/// keyed by relation label.
pub fn parse_kappa_doc(
    src: &str,
    module: &ModuleAlgebra,
    params: &Params,
) -> Result<KappaMap> {
    let root = toml_root(src)?;
    check_keys(&root, &["constant", "linear"], "a deformation map document")?;
    let mut kappa = KappaMap::zero(module);
    if let Some(t) = section(&root, "constant")? {
        for (label, v) in t {
            let value = parse_hopf_elem(want_str(v, label)?, module.hopf(), params)?;
            kappa.set_constant(label, value)?;
        }
    }
    if let Some(t) = section(&root, "linear")? {
        for (label, v) in t {
            let value = parse_smash(want_str(v, label)?, module.action(), params)?;
            kappa.set_linear(label, value)?;
        }
    }
    Ok(kappa)
}

/// Load an ansatz document: `full = true` for the whole finite basis on
/// every relation, or an `[ansatz]` table of candidate lists per relation
/// label. Relations without an entry get no candidates.
pub fn parse_ansatz_doc(
    src: &str,
    module: &ModuleAlgebra,
    params: &Params,
) -> Result<AnsatzSpace> {
    let root = toml_root(src)?;
    check_keys(&root, &["full", "ansatz"], "an ansatz document")?;
    if opt_bool(&root, "full")? == Some(true) {
        return AnsatzSpace::full(module);
    }
    let t = section(&root, "ansatz")?
        .ok_or_else(|| Error::Parse("an ansatz document needs [ansatz] or full = true".into()))?;
    let labels = module.alg().labels();
    for key in t.keys() {
        if !labels.iter().any(|l| l == key) {
            return Err(Error::RelationMismatch(format!(
                "{key} is not a relation label"
            )));
        }
    }
    let mut candidates = Vec::new();
    for label in labels {
        let list = match t.get(label) {
            None => Vec::new(),
            Some(toml::Value::Array(a)) => a
                .iter()
                .map(|v| {
                    parse_hopf_elem(want_str(v, label)?, module.hopf(), params)
                })
                .collect::<Result<Vec<_>>>()?,
            Some(_) => {
                return Err(Error::Parse(format!(
                    "{label} must be an array of Hopf element strings"
                )))
            }
        };
        candidates.push(list);
    }
    AnsatzSpace::new(module, candidates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::Word;
    use crate::hopf::HWord;

    fn ints(list: &[(&str, i64)]) -> Params {
        list.iter()
            .map(|(k, v)| (k.to_string(), ParamValue::Int(*v)))
            .collect()
    }

    fn sweedler_plane(field: &Field, hopf: &Hopf) -> ModuleAlgebra {
        let gens = GenSet::new(vec!["u", "v"]).unwrap();
        let m_g = Matrix::from_rows(
            field,
            vec![
                vec![field.one(), field.zero()],
                vec![field.zero(), field.integer(-1)],
            ],
        )
        .unwrap();
        let m_x = Matrix::from_rows(
            field,
            vec![
                vec![field.zero(), field.one()],
                vec![field.zero(), field.zero()],
            ],
        )
        .unwrap();
        let mut r = NcPoly::term(&gens, Word(vec![0, 1]), field.one());
        r.add_term(Word(vec![1, 0]), field.integer(-1));
        let alg = QuadraticAlgebra::new(&gens, field, vec!["r".into()], vec![r]).unwrap();
        ModuleAlgebra::new(alg, ActionSpec::new(hopf, &gens, vec![m_g, m_x]).unwrap()).unwrap()
    }

    fn r_matrix(hopf: &Hopf, lambda: i64) -> TensorElem {
        let field = hopf.field();
        let half = field.ratio(1, 2).unwrap();
        let lh = field.ratio(lambda, 2).unwrap();
        let e: RawWord = vec![];
        let g = vec![(0u8, 1i64)];
        let x = vec![(1u8, 1i64)];
        let gx = vec![(0u8, 1i64), (1u8, 1i64)];
        let mut r = TensorElem::zero(hopf, 2);
        for (a, b, c) in [
            (e.clone(), e.clone(), half.clone()),
            (e.clone(), g.clone(), half.clone()),
            (g.clone(), e.clone(), half.clone()),
            (g.clone(), g.clone(), -&half),
            (x.clone(), x.clone(), lh.clone()),
            (x.clone(), gx.clone(), lh.clone()),
            (gx.clone(), gx.clone(), lh.clone()),
            (gx.clone(), x.clone(), -&lh),
        ] {
            r.add_term(vec![HWord(a), HWord(b)], c);
        }
        r
    }

    #[test]
    fn scalar_strings_round_trip_through_display() {
        let f = Field::cyclotomic(12);
        let none = Params::new();
        let z = f.zeta();
        let built = &(&z.pow(2).unwrap() * &f.ratio(1, 2).unwrap()) + &f.integer(-1);
        assert_eq!(parse_scalar("1/2*z^2 - 1", &f, &none).unwrap(), built);
        for s in [
            f.ratio(-3, 2).unwrap(),
            z.clone(),
            built,
            f.zero(),
            f.integer(5),
        ] {
            assert_eq!(parse_scalar(&format!("{s}"), &f, &none).unwrap(), s);
        }
        let q = Field::rationals();
        assert_eq!(
            parse_scalar("7/3", &q, &none).unwrap(),
            q.ratio(7, 3).unwrap()
        );
    }

    #[test]
    fn integer_expressions_resolve_named_parameters() {
        let p = ints(&[("s0", 2), ("n", 5)]);
        assert_eq!(parse_int_expr("3*s0 + 2^3 - -1", &p).unwrap(), 15);
        assert_eq!(parse_int_expr("(n - 1)*(n + 1)", &p).unwrap(), 24);
        assert!(parse_int_expr("7/2", &p).is_err());
        assert!(parse_int_expr("2^-1", &p).is_err());
    }

    #[test]
    fn polynomial_strings_use_dots_for_word_concatenation() {
        let f = Field::cyclotomic(3);
        let gens = GenSet::new(vec!["u", "v", "u'", "v'"]).unwrap();
        let mut p = Params::new();
        p.insert("q".into(), ParamValue::Scalar(f.zeta()));
        let parsed = parse_poly("u.v' - q^2*v'.u", &gens, &f, &p).unwrap();
        let mut built = NcPoly::term(&gens, Word(vec![0, 3]), f.one());
        built.add_term(Word(vec![3, 0]), -&f.zeta().pow(2).unwrap());
        assert_eq!(parsed, built);
        let c = parse_poly("5 - 5", &gens, &f, &p).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn hopf_strings_normalize_like_the_builtin_product() {
        let f = Field::cyclotomic(3);
        let q = f.zeta();
        let h = hopf::uqsl2(&f, &q).unwrap();
        let mut p = Params::new();
        p.insert("q".into(), ParamValue::Scalar(q));
        let commutator = parse_hopf_elem("E.F - F.E", &h, &p).unwrap();
        let casimir = parse_hopf_elem("(K - K^-1)/(q - q^-1)", &h, &p).unwrap();
        assert_eq!(commutator, casimir);

        let powered = parse_hopf_elem("K^(3*s)", &h, &ints(&[("s", 2)])).unwrap();
        let direct = HopfElem::from_raw(&h, vec![(f.one(), vec![(1, 6)])]).unwrap();
        assert_eq!(powered, direct);

        let inv = parse_hopf_elem("K^-1", &h, &p).unwrap();
        let k = HopfElem::gen(&h, 1).unwrap();
        assert_eq!(inv.mul(&k).unwrap(), HopfElem::one(&h));
    }

    #[test]
    fn tensor_strings_build_two_leg_elements() {
        let f = Field::rationals();
        let h = hopf::sweedler(&f).unwrap();
        let mut p = Params::new();
        p.insert("lambda".into(), ParamValue::Int(1));
        let src = "1/2*(1@1 + 1@g + g@1 - g@g) \
                   + lambda/2*(x@x + x@g.x + g.x@g.x - g.x@x)";
        let parsed = parse_tensor(src, &h, &p).unwrap();
        assert_eq!(parsed.legs(), 2);
        assert_eq!(parsed, r_matrix(&h, 1));
    }

    #[test]
    fn smash_strings_attach_hopf_tails() {
        let f = Field::rationals();
        let h = hopf::sweedler(&f).unwrap();
        let plane = sweedler_plane(&f, &h);
        let action = plane.action();
        let none = Params::new();
        let parsed = parse_smash("u#g + 2*v#g.x - 1", action, &none).unwrap();

        let gens = plane.alg().gens();
        let u = NcPoly::gen(gens, 0, &f);
        let v = NcPoly::gen(gens, 1, &f);
        let g = HopfElem::gen(&h, 0).unwrap();
        let gx = g.mul(&HopfElem::gen(&h, 1).unwrap()).unwrap();
        let built = SmashElem::smash(action, &u, &g)
            .unwrap()
            .add(&SmashElem::smash(action, &v, &gx).unwrap().scale(&f.integer(2)))
            .unwrap()
            .sub(&SmashElem::one(action))
            .unwrap();
        assert_eq!(parsed, built);

        let word = parse_smash("u.v#x", action, &none).unwrap();
        assert_eq!(word.num_terms(), 1);
    }

    #[test]
    fn kappa_documents_fill_constant_and_linear_parts() {
        let f = Field::rationals();
        let h = hopf::sweedler(&f).unwrap();
        let plane = sweedler_plane(&f, &h);
        let none = Params::new();
        let doc = r#"
            [constant]
            r = "3*g + 1"
            [linear]
            r = "u#g"
        "#;
        let kappa = parse_kappa_doc(doc, &plane, &none).unwrap();
        let g = HopfElem::gen(&h, 0).unwrap();
        let expected = g.scale(&f.integer(3)).add(&HopfElem::one(&h)).unwrap();
        assert_eq!(kappa.constant(0), &expected);
        let u = NcPoly::gen(plane.alg().gens(), 0, &f);
        let lin = SmashElem::smash(plane.action(), &u, &g).unwrap();
        assert_eq!(kappa.linear(0), &lin);

        let bad = r#"
            [constant]
            s = "g"
        "#;
        assert!(parse_kappa_doc(bad, &plane, &none).is_err());
    }

    #[test]
    fn ansatz_documents_list_candidates_by_relation() {
        let f = Field::rationals();
        let h = hopf::sweedler(&f).unwrap();
        let plane = sweedler_plane(&f, &h);
        let none = Params::new();
        let doc = r#"
            [ansatz]
            r = ["1", "g", "x", "g.x"]
        "#;
        let ansatz = parse_ansatz_doc(doc, &plane, &none).unwrap();
        assert_eq!(ansatz.num_unknowns(), 4);
        let full = parse_ansatz_doc("full = true", &plane, &none).unwrap();
        assert_eq!(full.num_unknowns(), 4);
        let bad = r#"
            [ansatz]
            nope = ["1"]
        "#;
        assert!(parse_ansatz_doc(bad, &plane, &none).is_err());
    }

    #[test]
    fn presentation_documents_match_the_builtin_sweedler() {
        let doc = r#"
            name = "T2"
            basis = ["1", "g", "x", "g.x"]

            [[generator]]
            name = "g"
            grouplike = 2

            [[generator]]
            name = "x"
            skew_primitive = 2
            delta = "x@1 + g@x"
            antipode = "-g.x"

            [swaps]
            "x.g" = "-g.x"
        "#;
        let (h, params) = parse_hopf_doc(doc).unwrap();
        assert!(params.is_empty());
        assert_eq!(h, hopf::sweedler(&Field::rationals()).unwrap());
    }

    #[test]
    fn system_documents_assemble_braided_products() {
        let doc = r#"
            [hopf]
            builtin = "T2"

            [params]
            lambda = 1

            [algebra]
            generators = ["u", "v"]

            [algebra.relations]
            r = "u.v - v.u"

            [action]
            g = [["1", "0"], ["0", "-1"]]
            x = [["0", "1"], ["0", "0"]]

            [braiding]
            r_matrix = "1/2*(1@1 + 1@g + g@1 - g@g) + lambda/2*(x@x + x@g.x + g.x@g.x - g.x@x)"

            [opposite]
            generators = ["u'", "v'"]
            prefix = "s"

            [product]
            kind = "braided"
        "#;
        let sys = parse_system(doc, &Params::new()).unwrap();
        assert_eq!(sys.hopf.num_gens(), 2);
        assert!(sys.braiding.is_some());
        let alg = sys.module.alg();
        assert_eq!(alg.num_relations(), 6);
        let r4 = parse_poly("v.v' + v'.v - u.u'", alg.gens(), alg.field(), &sys.params).unwrap();
        assert!(alg.rel_space().contains(&r4).unwrap());
    }

    #[test]
    fn system_documents_assemble_twisted_products() {
        let doc = r#"
            [hopf]
            builtin = "kC2"

            [algebra]
            generators = ["u", "v"]

            [algebra.relations]
            a1 = "u.v - v.u"

            [action]
            g = [["-1", "0"], ["0", "-1"]]

            [second]
            generators = ["w", "t"]

            [second.relations]
            b1 = "w.t - t.w"

            [second.action]
            g = [["-1", "0"], ["0", "-1"]]

            [braiding.twist]
            "w.u" = "u.w"
            "w.v" = "v.w"
            "t.u" = "u.t"
            "t.v" = "v.t"

            [product]
            kind = "twisted"
        "#;
        let sys = parse_system(doc, &Params::new()).unwrap();
        assert_eq!(sys.module.alg().num_relations(), 6);
        assert_eq!(
            sys.module.alg().gens().names(),
            ["u", "v", "w", "t"]
        );
    }

    #[test]
    fn parse_errors_name_the_offense() {
        let f = Field::rationals();
        let none = Params::new();
        assert!(matches!(
            parse_scalar("mystery", &f, &none),
            Err(Error::Parse(_))
        ));
        assert!(parse_scalar("1 2", &f, &none).is_err());
        assert!(matches!(
            parse_scalar("1/0", &f, &none),
            Err(Error::DivisionByZero)
        ));

        let h = hopf::sweedler(&f).unwrap();
        assert!(parse_hopf_elem("g@g", &h, &none).is_err());
        assert!(parse_hopf_elem("x^-1", &h, &none).is_err());

        let gens = GenSet::new(vec!["u", "v"]).unwrap();
        assert!(parse_poly("u#g", &gens, &f, &none).is_err());
        assert!(parse_poly("u.(v", &gens, &f, &none).is_err());
    }
}
