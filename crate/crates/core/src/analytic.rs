//! Exact scalar functions of one variable.
//!
//! A [`ScalarFunction`] is a finite sum of terms `c * t^p * B(r t)` where the
//! basis factor `B` is `1`, `sin`, `cos`, or `exp`. This family is closed
//! under differentiation, reflection `t -> c - t`, and argument rescaling
//! `t -> t / lambda`, so every derivative and every endpoint expansion used
//! elsewhere in the crate is computed exactly (no finite differencing).

use crate::error::{Error, Result};
use std::fmt;

/// Basis factor of a single term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Basis {
    /// Constant factor 1.
    One,
    /// sin(rate * t)
    Sin,
    /// cos(rate * t)
    Cos,
    /// exp(rate * t)
    Exp,
}

/// One summand `coeff * t^power * basis(rate * t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub coeff: f64,
    pub power: u32,
    pub kind: Basis,
    pub rate: f64,
}

impl Term {
    /// Rewrites the term so that `Sin`/`Cos` rates are positive and zero
    /// rates degrade to the constant basis. Returns `None` when the term is
    /// identically zero.
    fn canonical(mut self) -> Option<Term> {
        match self.kind {
            Basis::One => self.rate = 0.0,
            Basis::Sin => {
                if self.rate == 0.0 {
                    return None;
                }
                if self.rate < 0.0 {
                    self.rate = -self.rate;
                    self.coeff = -self.coeff;
                }
            }
            Basis::Cos => {
                if self.rate == 0.0 {
                    self.kind = Basis::One;
                } else if self.rate < 0.0 {
                    self.rate = -self.rate;
                }
            }
            Basis::Exp => {
                if self.rate == 0.0 {
                    self.kind = Basis::One;
                }
            }
        }
        if self.coeff == 0.0 {
            None
        } else {
            Some(self)
        }
    }

    fn sort_key(&self) -> (u8, f64, u32) {
        let rank = match self.kind {
            Basis::One => 0,
            Basis::Sin => 1,
            Basis::Cos => 2,
            Basis::Exp => 3,
        };
        (rank, self.rate, self.power)
    }

    fn evaluate(&self, t: f64) -> f64 {
        let basis = match self.kind {
            Basis::One => 1.0,
            Basis::Sin => (self.rate * t).sin(),
            Basis::Cos => (self.rate * t).cos(),
            Basis::Exp => (self.rate * t).exp(),
        };
        self.coeff * t.powi(self.power as i32) * basis
    }
}

/// Finite sum of [`Term`]s kept in a sorted, merged normal form.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScalarFunction {
    terms: Vec<Term>,
}

fn binomial(n: u32, k: u32) -> f64 {
    let mut acc = 1.0f64;
    for j in 0..k {
        acc = acc * (n - j) as f64 / (j + 1) as f64;
    }
    acc
}

impl ScalarFunction {
    /// The zero function.
    pub fn zero() -> Self {
        ScalarFunction { terms: Vec::new() }
    }

    /// Constant function `c`.
    pub fn constant(c: f64) -> Self {
        Self::from_terms(vec![Term {
            coeff: c,
            power: 0,
            kind: Basis::One,
            rate: 0.0,
        }])
    }

    /// Monomial `c * t^p`.
    pub fn monomial(c: f64, p: u32) -> Self {
        Self::from_terms(vec![Term {
            coeff: c,
            power: p,
            kind: Basis::One,
            rate: 0.0,
        }])
    }

    /// Single term `c * t^p * basis(rate t)`.
    pub fn term(c: f64, p: u32, kind: Basis, rate: f64) -> Self {
        Self::from_terms(vec![Term {
            coeff: c,
            power: p,
            kind,
            rate,
        }])
    }

    /// `sin(rate t)`
    pub fn sin(rate: f64) -> Self {
        Self::term(1.0, 0, Basis::Sin, rate)
    }

    /// `cos(rate t)`
    pub fn cos(rate: f64) -> Self {
        Self::term(1.0, 0, Basis::Cos, rate)
    }

    /// `exp(rate t)`
    pub fn exp(rate: f64) -> Self {
        Self::term(1.0, 0, Basis::Exp, rate)
    }

    /// `sinh(rate t)` expanded into exponentials.
    pub fn sinh(rate: f64) -> Self {
        Self::from_terms(vec![
            Term {
                coeff: 0.5,
                power: 0,
                kind: Basis::Exp,
                rate,
            },
            Term {
                coeff: -0.5,
                power: 0,
                kind: Basis::Exp,
                rate: -rate,
            },
        ])
    }

    /// `cosh(rate t)` expanded into exponentials.
    pub fn cosh(rate: f64) -> Self {
        Self::from_terms(vec![
            Term {
                coeff: 0.5,
                power: 0,
                kind: Basis::Exp,
                rate,
            },
            Term {
                coeff: 0.5,
                power: 0,
                kind: Basis::Exp,
                rate: -rate,
            },
        ])
    }

    /// Normalizes an arbitrary term list: canonical rates, sorted, merged,
    /// exact zeros pruned.
    pub fn from_terms(terms: Vec<Term>) -> Self {
        let mut ts: Vec<Term> = terms.into_iter().filter_map(Term::canonical).collect();
        ts.sort_by(|a, b| {
            let (ra, sa, pa) = a.sort_key();
            let (rb, sb, pb) = b.sort_key();
            ra.cmp(&rb).then(sa.total_cmp(&sb)).then(pa.cmp(&pb))
        });
        let mut merged: Vec<Term> = Vec::with_capacity(ts.len());
        for t in ts {
            match merged.last_mut() {
                Some(last)
                    if last.kind == t.kind
                        && last.power == t.power
                        && last.rate.total_cmp(&t.rate).is_eq() =>
                {
                    last.coeff += t.coeff;
                    if last.coeff == 0.0 {
                        merged.pop();
                    }
                }
                _ => merged.push(t),
            }
        }
        ScalarFunction { terms: merged }
    }

    /// Read-only view of the normal-form terms.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// True when the normal form has no terms.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Pointwise sum.
    pub fn add(&self, other: &ScalarFunction) -> ScalarFunction {
        let mut ts = self.terms.clone();
        ts.extend_from_slice(&other.terms);
        Self::from_terms(ts)
    }

    /// Pointwise difference.
    pub fn sub(&self, other: &ScalarFunction) -> ScalarFunction {
        self.add(&other.neg())
    }

    /// Pointwise negation.
    pub fn neg(&self) -> ScalarFunction {
        self.scale(-1.0)
    }

    /// Pointwise multiple `c * f`.
    pub fn scale(&self, c: f64) -> ScalarFunction {
        let ts = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: c * t.coeff,
                ..*t
            })
            .collect();
        Self::from_terms(ts)
    }

    /// Exact derivative.
    pub fn differentiate(&self) -> ScalarFunction {
        let mut out = Vec::with_capacity(2 * self.terms.len());
        for t in &self.terms {
            if t.power > 0 {
                out.push(Term {
                    coeff: t.coeff * t.power as f64,
                    power: t.power - 1,
                    ..*t
                });
            }
            match t.kind {
                Basis::One => {}
                Basis::Sin => out.push(Term {
                    coeff: t.coeff * t.rate,
                    power: t.power,
                    kind: Basis::Cos,
                    rate: t.rate,
                }),
                Basis::Cos => out.push(Term {
                    coeff: -t.coeff * t.rate,
                    power: t.power,
                    kind: Basis::Sin,
                    rate: t.rate,
                }),
                Basis::Exp => out.push(Term {
                    coeff: t.coeff * t.rate,
                    power: t.power,
                    kind: Basis::Exp,
                    rate: t.rate,
                }),
            }
        }
        Self::from_terms(out)
    }

    /// Value at `t`.
    pub fn evaluate(&self, t: f64) -> f64 {
        self.terms.iter().map(|term| term.evaluate(t)).sum()
    }

    /// Taylor coefficients `c_0 .. c_order` at `t0`, computed by exact
    /// iterated differentiation: `c_k = f^(k)(t0) / k!`.
    pub fn taylor_at(&self, t0: f64, order: usize) -> Vec<f64> {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut f = self.clone();
        let mut factorial = 1.0f64;
        for k in 0..=order {
            if k > 0 {
                factorial *= k as f64;
                f = f.differentiate();
            }
            coeffs.push(f.evaluate(t0) / factorial);
        }
        coeffs
    }

    /// Exact substitution `t -> c - t` (reflection through `c / 2`).
    pub fn reflect(&self, c: f64) -> ScalarFunction {
        let mut out: Vec<Term> = Vec::new();
        for t in &self.terms {
            // (c - t)^p expanded binomially.
            for j in 0..=t.power {
                let poly = t.coeff
                    * binomial(t.power, j)
                    * c.powi((t.power - j) as i32)
                    * if j % 2 == 0 { 1.0 } else { -1.0 };
                match t.kind {
                    Basis::One => {
                        out.push(Term {
                            coeff: poly,
                            power: j,
                            kind: Basis::One,
                            rate: 0.0,
                        });
                    }
                    Basis::Sin => {
                        // sin(rc - rt) = sin(rc)cos(rt) - cos(rc)sin(rt)
                        let (s, co) = (t.rate * c).sin_cos();
                        out.push(Term {
                            coeff: poly * s,
                            power: j,
                            kind: Basis::Cos,
                            rate: t.rate,
                        });
                        out.push(Term {
                            coeff: -poly * co,
                            power: j,
                            kind: Basis::Sin,
                            rate: t.rate,
                        });
                    }
                    Basis::Cos => {
                        // cos(rc - rt) = cos(rc)cos(rt) + sin(rc)sin(rt)
                        let (s, co) = (t.rate * c).sin_cos();
                        out.push(Term {
                            coeff: poly * co,
                            power: j,
                            kind: Basis::Cos,
                            rate: t.rate,
                        });
                        out.push(Term {
                            coeff: poly * s,
                            power: j,
                            kind: Basis::Sin,
                            rate: t.rate,
                        });
                    }
                    Basis::Exp => {
                        // exp(rc - rt) = exp(rc) exp(-rt)
                        out.push(Term {
                            coeff: poly * (t.rate * c).exp(),
                            power: j,
                            kind: Basis::Exp,
                            rate: -t.rate,
                        });
                    }
                }
            }
        }
        Self::from_terms(out)
    }

    /// Exact substitution `t -> t / lambda`.
    pub fn rescale_arg(&self, lambda: f64) -> Result<ScalarFunction> {
        if lambda == 0.0 || !lambda.is_finite() {
            return Err(Error::Config(format!(
                "rescale factor must be finite and nonzero, got {lambda}"
            )));
        }
        let ts = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff / lambda.powi(t.power as i32),
                power: t.power,
                kind: t.kind,
                rate: t.rate / lambda,
            })
            .collect();
        Ok(Self::from_terms(ts))
    }

    /// Parses expressions like `4sin(t)`, `2exp(1t) - 2exp(-1t)`,
    /// `3.4641016151377544cos(t) + 2sin(t)`, `t^2`, `sinh(2t)`, `0.5`.
    /// Terms are split at top-level `+`/`-`; each term is an optional
    /// coefficient, an optional power of `t`, and an optional
    /// `sin|cos|exp|sinh|cosh` factor with a linear argument.
    pub fn parse(input: &str) -> Result<ScalarFunction> {
        let chars: Vec<char> = input.chars().collect();
        if chars.iter().all(|c| c.is_whitespace()) {
            return Err(Error::Parse("empty expression".into()));
        }
        let mut pieces: Vec<(f64, String)> = Vec::new();
        let mut depth = 0i32;
        let mut start = 0usize;
        let mut sign = 1.0f64;
        let mut unary_seen = false;
        for i in 0..chars.len() {
            match chars[i] {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth < 0 {
                        return Err(Error::Parse(format!("unbalanced `)` in `{input}`")));
                    }
                }
                c @ ('+' | '-') if depth == 0 => {
                    // A sign directly after `e`/`E` of a float literal is an
                    // exponent sign, not a term separator.
                    let exponent_sign = i >= 2
                        && (chars[i - 1] == 'e' || chars[i - 1] == 'E')
                        && (chars[i - 2].is_ascii_digit() || chars[i - 2] == '.');
                    if exponent_sign {
                        continue;
                    }
                    let piece: String = chars[start..i].iter().collect();
                    if piece.trim().is_empty() {
                        // At most one unary sign, and only at the very front.
                        if !pieces.is_empty() || unary_seen {
                            return Err(Error::Parse(format!("empty term in `{input}`")));
                        }
                        unary_seen = true;
                        if c == '-' {
                            sign = -1.0;
                        }
                    } else {
                        pieces.push((sign, piece));
                        sign = if c == '-' { -1.0 } else { 1.0 };
                    }
                    start = i + 1;
                }
                _ => {}
            }
        }
        if depth != 0 {
            return Err(Error::Parse(format!("unbalanced `(` in `{input}`")));
        }
        let last: String = chars[start..].iter().collect();
        if last.trim().is_empty() {
            return Err(Error::Parse(format!("dangling sign in `{input}`")));
        }
        pieces.push((sign, last));

        let mut terms = Vec::new();
        for (piece_sign, piece) in pieces {
            parse_piece(&piece, piece_sign, &mut terms)
                .map_err(|e| Error::Parse(format!("in `{piece}`: {e}")))?;
        }
        Ok(Self::from_terms(terms))
    }
}

/// Character cursor for [`parse_piece`].
struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(s: &str) -> Cursor {
        Cursor {
            chars: s.chars().collect(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn done(&self) -> bool {
        self.pos >= self.chars.len()
    }

    /// Parses a float literal (digits, optional dot, optional exponent).
    /// Does not consume anything on failure. An `e` not followed by a valid
    /// exponent is left unconsumed so `2exp(t)` scans as `2` + `exp(t)`.
    fn parse_number(&mut self) -> Option<f64> {
        let len = self.chars.len();
        let mut j = self.pos;
        while j < len && (self.chars[j].is_ascii_digit() || self.chars[j] == '.') {
            j += 1;
        }
        if j == self.pos {
            return None;
        }
        let mut k = j;
        if k < len && (self.chars[k] == 'e' || self.chars[k] == 'E') {
            let mut m = k + 1;
            if m < len && (self.chars[m] == '+' || self.chars[m] == '-') {
                m += 1;
            }
            if m < len && self.chars[m].is_ascii_digit() {
                m += 1;
                while m < len && self.chars[m].is_ascii_digit() {
                    m += 1;
                }
                k = m;
            }
        }
        let text: String = self.chars[self.pos..k].iter().collect();
        match text.parse::<f64>() {
            Ok(v) => {
                self.pos = k;
                Some(v)
            }
            Err(_) => None,
        }
    }

    fn parse_u32(&mut self) -> Option<u32> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return None;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().ok()
    }

    /// Parses a lowercase identifier, but refuses to consume a lone `t`
    /// (that is the variable, handled separately).
    fn parse_ident(&mut self) -> Option<String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        if self.pos == start {
            return None;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        if text == "t" {
            self.pos = start;
            return None;
        }
        Some(text)
    }
}

fn parse_piece(piece: &str, sign: f64, out: &mut Vec<Term>) -> Result<()> {
    let mut c = Cursor::new(piece);
    c.skip_ws();
    let explicit_coeff = c.parse_number();
    let coeff = sign * explicit_coeff.unwrap_or(1.0);
    c.skip_ws();
    c.eat('*');
    c.skip_ws();

    let mut power = 0u32;
    // A `t` followed by more letters is the start of an identifier, not the
    // variable; there is no such identifier in the grammar, so peeking one
    // char ahead is enough.
    let is_bare_t = c.peek() == Some('t')
        && !matches!(c.chars.get(c.pos + 1), Some(ch) if ch.is_ascii_alphabetic());
    if is_bare_t {
        c.pos += 1;
        power = 1;
        if c.eat('^') {
            power = c
                .parse_u32()
                .ok_or_else(|| Error::Parse("expected integer exponent after `^`".into()))?;
        }
        c.skip_ws();
        c.eat('*');
        c.skip_ws();
    }

    if let Some(name) = c.parse_ident() {
        c.skip_ws();
        if !c.eat('(') {
            return Err(Error::Parse(format!("expected `(` after `{name}`")));
        }
        c.skip_ws();
        let mut rate_sign = 1.0;
        if c.eat('-') {
            rate_sign = -1.0;
        }
        c.skip_ws();
        let rate_mag = c.parse_number().unwrap_or(1.0);
        c.skip_ws();
        c.eat('*');
        c.skip_ws();
        if !c.eat('t') {
            return Err(Error::Parse(format!(
                "expected `t` in argument of `{name}`"
            )));
        }
        c.skip_ws();
        if !c.eat(')') {
            return Err(Error::Parse(format!(
                "expected `)` closing argument of `{name}`"
            )));
        }
        let rate = rate_sign * rate_mag;
        match name.as_str() {
            "sin" => out.push(Term {
                coeff,
                power,
                kind: Basis::Sin,
                rate,
            }),
            "cos" => out.push(Term {
                coeff,
                power,
                kind: Basis::Cos,
                rate,
            }),
            "exp" => out.push(Term {
                coeff,
                power,
                kind: Basis::Exp,
                rate,
            }),
            "sinh" => {
                out.push(Term {
                    coeff: 0.5 * coeff,
                    power,
                    kind: Basis::Exp,
                    rate,
                });
                out.push(Term {
                    coeff: -0.5 * coeff,
                    power,
                    kind: Basis::Exp,
                    rate: -rate,
                });
            }
            "cosh" => {
                out.push(Term {
                    coeff: 0.5 * coeff,
                    power,
                    kind: Basis::Exp,
                    rate,
                });
                out.push(Term {
                    coeff: 0.5 * coeff,
                    power,
                    kind: Basis::Exp,
                    rate: -rate,
                });
            }
            other => {
                return Err(Error::Parse(format!("unknown function `{other}`")));
            }
        }
    } else {
        if explicit_coeff.is_none() && power == 0 {
            return Err(Error::Parse(
                "expected a coefficient, `t`, or a function".into(),
            ));
        }
        out.push(Term {
            coeff,
            power,
            kind: Basis::One,
            rate: 0.0,
        });
    }
    c.skip_ws();
    if !c.done() {
        let rest: String = c.chars[c.pos..].iter().collect();
        return Err(Error::Parse(format!("unexpected trailing input `{rest}`")));
    }
    Ok(())
}

impl fmt::Display for ScalarFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, term) in self.terms.iter().enumerate() {
            let mag = term.coeff.abs();
            if i == 0 {
                if term.coeff < 0.0 {
                    write!(f, "-")?;
                }
            } else if term.coeff < 0.0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let pure_constant = term.power == 0 && term.kind == Basis::One;
            if mag != 1.0 || pure_constant {
                write!(f, "{mag}")?;
            }
            if term.power >= 1 {
                write!(f, "t")?;
            }
            if term.power >= 2 {
                write!(f, "^{}", term.power)?;
            }
            if term.power >= 1 && term.kind != Basis::One {
                // `tcos(t)` would scan as one identifier.
                write!(f, " ")?;
            }
            if term.kind != Basis::One {
                let name = match term.kind {
                    Basis::Sin => "sin",
                    Basis::Cos => "cos",
                    Basis::Exp => "exp",
                    Basis::One => unreachable!(),
                };
                if term.rate == 1.0 {
                    write!(f, "{name}(t)")?;
                } else if term.rate == -1.0 {
                    write!(f, "{name}(-t)")?;
                } else {
                    write!(f, "{name}({}t)", term.rate)?;
                }
            }
        }
        Ok(())
    }
}
