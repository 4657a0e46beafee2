use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{ArithError, Rational};

/// An ordered set of parameter names, fixed for the lifetime of a
/// computation. Cloning is cheap.
#[derive(Clone)]
pub struct ParamSet(Arc<[String]>);

impl ParamSet {
    pub fn new<I, S>(names: I) -> Result<Self, ArithError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            let mut chars = name.chars();
            let valid = chars
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(ArithError::InvalidParamSet(format!(
                    "`{name}` is not an identifier"
                )));
            }
            if name == "q" || name == "t" {
                return Err(ArithError::InvalidParamSet(format!(
                    "`{name}` is reserved for a series variable"
                )));
            }
            if names[..i].contains(name) {
                return Err(ArithError::InvalidParamSet(format!("duplicate `{name}`")));
            }
        }
        Ok(ParamSet(names.into()))
    }

    pub fn empty() -> Self {
        ParamSet(Arc::from(Vec::<String>::new()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    pub(crate) fn ensure_same(&self, other: &ParamSet) -> Result<(), ArithError> {
        if self == other {
            Ok(())
        } else {
            Err(ArithError::ParamMismatch {
                left: self.0.join(", "),
                right: other.0.join(", "),
            })
        }
    }
}

impl PartialEq for ParamSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for ParamSet {}

impl fmt::Debug for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// A polynomial in the parameters of a [`ParamSet`] with rational
/// coefficients.
///
/// Terms are keyed by exponent vectors (one entry per declared parameter)
/// and kept in lexicographic order. No zero coefficient is ever stored, so
/// structural equality is value equality.
#[derive(Clone, PartialEq, Eq)]
pub struct ParamPoly {
    params: ParamSet,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl ParamPoly {
    pub fn zero(params: &ParamSet) -> Self {
        ParamPoly {
            params: params.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(params: &ParamSet) -> Self {
        Self::constant(params, Rational::one())
    }

    pub fn constant(params: &ParamSet, c: Rational) -> Self {
        let mut p = Self::zero(params);
        if !c.is_zero() {
            p.terms.insert(vec![0; params.len()], c);
        }
        p
    }

    /// The polynomial consisting of the single parameter `name`.
    pub fn var(params: &ParamSet, name: &str) -> Result<Self, ArithError> {
        let idx = params
            .index_of(name)
            .ok_or_else(|| ArithError::UnknownParameter(name.to_string()))?;
        let mut exps = vec![0; params.len()];
        exps[idx] = 1;
        Ok(Self::monomial(params, exps, Rational::one()))
    }

    /// `coeff * prod(params[i]^exps[i])`.
    ///
    /// Panics if `exps` does not have one entry per parameter.
    pub fn monomial(params: &ParamSet, exps: Vec<u32>, coeff: Rational) -> Self {
        assert_eq!(exps.len(), params.len(), "exponent vector length");
        let mut p = Self::zero(params);
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// The value of a parameter-free polynomial.
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (exps, c) = self.terms.iter().next()?;
                exps.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (lexicographic exponent) order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Total degree in the parameters, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn checked_add(&self, rhs: &ParamPoly) -> Result<ParamPoly, ArithError> {
        self.params.ensure_same(&rhs.params)?;
        let mut out = self.clone();
        out.add_assign_compatible(rhs);
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &ParamPoly) -> Result<ParamPoly, ArithError> {
        self.params.ensure_same(&rhs.params)?;
        let mut out = self.clone();
        out.sub_assign_compatible(rhs);
        Ok(out)
    }

    pub fn checked_mul(&self, rhs: &ParamPoly) -> Result<ParamPoly, ArithError> {
        self.params.ensure_same(&rhs.params)?;
        let mut out = ParamPoly::zero(&self.params);
        out.add_product_compatible(self, rhs);
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero(&self.params);
        }
        ParamPoly {
            params: self.params.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, exponent: u32) -> ParamPoly {
        let mut acc = ParamPoly::one(&self.params);
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes every parameter and returns the resulting number.
    /// Parameters that do not occur in `self` need no value.
    pub fn eval(&self, assignment: &BTreeMap<String, Rational>) -> Result<Rational, ArithError> {
        let mut values = Vec::with_capacity(self.params.len());
        for (i, name) in self.params.names().iter().enumerate() {
            let used = self.terms.keys().any(|e| e[i] > 0);
            match assignment.get(name) {
                Some(v) => values.push(v.clone()),
                None if !used => values.push(Rational::zero()),
                None => return Err(ArithError::MissingParameter(name.clone())),
            }
        }
        let mut total = Rational::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (v, &e) in values.iter().zip(exps) {
                if e > 0 {
                    term *= &v.pow(e);
                }
            }
            total += &term;
        }
        Ok(total)
    }

    /// Substitutes the assigned parameters only; the parameter set is kept.
    pub fn specialize(
        &self,
        assignment: &BTreeMap<String, Rational>,
    ) -> Result<ParamPoly, ArithError> {
        let mut slots: Vec<Option<&Rational>> = vec![None; self.params.len()];
        for (name, v) in assignment {
            let i = self
                .params
                .index_of(name)
                .ok_or_else(|| ArithError::UnknownParameter(name.clone()))?;
            slots[i] = Some(v);
        }
        let mut out = ParamPoly::zero(&self.params);
        for (exps, c) in &self.terms {
            let mut coeff = c.clone();
            let mut kept = exps.clone();
            for (i, slot) in slots.iter().enumerate() {
                if let Some(v) = slot {
                    coeff *= &v.pow(kept[i]);
                    kept[i] = 0;
                }
            }
            out.add_term(kept, coeff);
        }
        Ok(out)
    }

    /// Parses the canonical text form, e.g. `"1 - 3/2*a^2*x + x"`.
    pub fn parse(params: &ParamSet, input: &str) -> Result<ParamPoly, ArithError> {
        Parser::new(params, input).parse()
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub(crate) fn add_assign_compatible(&mut self, rhs: &ParamPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub(crate) fn sub_assign_compatible(&mut self, rhs: &ParamPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c);
        }
    }

    /// `self += a * b`, without allocating the intermediate product.
    pub(crate) fn add_product_compatible(&mut self, a: &ParamPoly, b: &ParamPoly) {
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                self.add_term(exps, ca * cb);
            }
        }
    }

    pub(crate) fn neg_in_place(&mut self) {
        for c in self.terms.values_mut() {
            *c = -&*c;
        }
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (exps, c)) in self.terms.iter().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            for (name, &e) in self.params.names().iter().zip(exps) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            let magnitude = c.abs();
            let body = if factors.is_empty() {
                magnitude.to_string()
            } else if magnitude.is_one() {
                factors.join("*")
            } else {
                format!("{magnitude}*{}", factors.join("*"))
            };
            match (i, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPoly({self})")
    }
}

// The operator forms panic on mismatched parameter sets; use the checked_*
// methods where the sets are not known to agree.
impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        self.checked_add(rhs).expect("ParamPoly addition")
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        self.checked_sub(rhs).expect("ParamPoly subtraction")
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        self.checked_mul(rhs).expect("ParamPoly multiplication")
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        let mut out = self.clone();
        out.neg_in_place();
        out
    }
}

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(mut self) -> ParamPoly {
        self.neg_in_place();
        self
    }
}

struct Parser<'a> {
    params: &'a ParamSet,
    input: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(params: &'a ParamSet, input: &'a str) -> Self {
        Parser {
            params,
            input,
            chars: input
                .chars()
                .map(|c| if c == '\u{2212}' { '-' } else { c })
                .collect(),
            pos: 0,
        }
    }

    fn error(&self, reason: impl Into<String>) -> ArithError {
        ArithError::Parse {
            input: self.input.to_string(),
            reason: format!("{} at offset {}", reason.into(), self.pos),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<ParamPoly, ArithError> {
        let mut out = ParamPoly::zero(self.params);
        let mut negative = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            Some(_) => false,
            None => return Err(self.error("empty polynomial")),
        };
        loop {
            let (exps, mut coeff) = self.term()?;
            if negative {
                coeff = -coeff;
            }
            out.add_term(exps, coeff);
            match self.peek() {
                None => return Ok(out),
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(c) => return Err(self.error(format!("unexpected `{c}`"))),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(Vec<u32>, Rational), ArithError> {
        let mut exps = vec![0u32; self.params.len()];
        let mut coeff = Rational::one();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let numer = self.integer()?;
                    let value = if self.peek() == Some('/') {
                        self.pos += 1;
                        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                            return Err(self.error("expected denominator"));
                        }
                        let denom = self.integer()?;
                        format!("{numer}/{denom}").parse::<Rational>()?
                    } else {
                        numer.parse::<Rational>()?
                    };
                    coeff *= &value;
                }
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                    let start = self.pos;
                    while self
                        .chars
                        .get(self.pos)
                        .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
                    {
                        self.pos += 1;
                    }
                    let name: String = self.chars[start..self.pos].iter().collect();
                    let idx = self
                        .params
                        .index_of(&name)
                        .ok_or(ArithError::UnknownParameter(name))?;
                    let power = if self.peek() == Some('^') {
                        self.pos += 1;
                        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                            return Err(self.error("expected exponent"));
                        }
                        self.integer()?
                            .parse::<u32>()
                            .map_err(|_| self.error("exponent too large"))?
                    } else {
                        1
                    };
                    exps[idx] += power;
                }
                Some(c) => return Err(self.error(format!("unexpected `{c}`"))),
                None => return Err(self.error("unexpected end of input")),
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                return Ok((exps, coeff));
            }
        }
    }

    fn integer(&mut self) -> Result<String, ArithError> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }
}
