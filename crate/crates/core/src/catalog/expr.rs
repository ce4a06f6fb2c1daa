//! Coefficient expressions: polynomials and quotients of polynomials in the
//! family parameters, with `Q(i)` coefficients.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Sorted `(variable, exponent)` pairs with positive exponents.
pub type Monomial = Vec<(String, u32)>;

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut m: BTreeMap<String, u32> = a.iter().cloned().collect();
    for (v, e) in b {
        *m.entry(v.clone()).or_insert(0) += e;
    }
    m.into_iter().collect()
}

fn degree(m: &Monomial) -> u32 {
    m.iter().map(|(_, e)| e).sum()
}

/// Graded order key: total degree, then the variables spelled out with repetition.
fn order_key(m: &Monomial) -> (u32, Vec<&str>) {
    let letters = m
        .iter()
        .flat_map(|(v, e)| std::iter::repeat_n(v.as_str(), *e as usize))
        .collect();
    (degree(m), letters)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Poly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn var(name: &str) -> Self {
        let mut p = Poly::zero();
        p.add_term(vec![(name.to_string(), 1)], Scalar::one());
        p
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|m| m.iter().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut p = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                p.add_term(mono_mul(m1, m2), c1 * c2);
            }
        }
        p
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let mut p = Poly::zero();
        for (m, x) in &self.terms {
            p.add_term(m.clone(), x * c);
        }
        p
    }

    pub fn eval(&self, env: &HashMap<&str, &Scalar>) -> Result<Scalar> {
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m {
                let x = env
                    .get(v.as_str())
                    .ok_or_else(|| Error::parse(v.clone(), "unbound symbol"))?;
                t *= &x.pow(*e);
            }
            total += &t;
        }
        Ok(total)
    }

    /// Substitutes polynomials for variables.
    pub fn substitute(&self, env: &HashMap<String, Poly>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for (v, e) in m {
                let base = env.get(v).cloned().unwrap_or_else(|| Poly::var(v));
                for _ in 0..*e {
                    t = t.mul(&base);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Splits off the terms containing `var` to the first power, dividing it out.
    /// Returns `None` if `var` appears with a higher power.
    fn linear_part(&self, var: &str) -> Option<(Poly, Poly)> {
        let mut with = Poly::zero();
        let mut without = Poly::zero();
        for (m, c) in &self.terms {
            match m.iter().find(|(v, _)| v == var) {
                Some((_, 1)) => {
                    let rest: Monomial = m.iter().filter(|(v, _)| v != var).cloned().collect();
                    with.add_term(rest, c.clone());
                }
                Some(_) => return None,
                None => without.add_term(m.clone(), c.clone()),
            }
        }
        Some((with, without))
    }
}

fn render_coeff_term(c: &Scalar, m: &Monomial) -> String {
    let mono: Vec<String> = m
        .iter()
        .map(|(v, e)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    let mono = mono.join("*");
    if m.is_empty() {
        return if c.is_real() { c.to_string() } else { format!("({c})") };
    }
    if c.is_one() {
        mono
    } else if (-c).is_one() {
        format!("-{mono}")
    } else if c.is_real() {
        format!("{c}*{mono}")
    } else {
        format!("({c})*{mono}")
    }
}

/// Terms by ascending total degree, then lexicographically by monomial.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| order_key(a.0).cmp(&order_key(b.0)));
        for (n, (m, c)) in terms.into_iter().enumerate() {
            let t = render_coeff_term(c, m);
            match (n, t.strip_prefix('-')) {
                (0, _) => f.write_str(&t)?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {t}")?,
            }
        }
        Ok(())
    }
}

/// A quotient `num / den`; a constant denominator is always folded into `num`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    pub num: Poly,
    pub den: Poly,
}

impl RatFunc {
    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::constant(Scalar::one()),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    fn normalized(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::constant(Scalar::zero()));
        }
        if let Some(c) = den.as_constant() {
            return Ok(RatFunc::from_poly(num.scale(&c.inv()?)));
        }
        Ok(RatFunc { num, den })
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        let d = self.den.as_constant()?;
        Some(&self.num.as_constant()? / &d)
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut v = self.num.variables();
        v.extend(self.den.variables());
        v
    }

    pub fn add(&self, o: &RatFunc) -> Result<RatFunc> {
        if self.den == o.den {
            return Self::normalized(self.num.add(&o.num), self.den.clone());
        }
        Self::normalized(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &RatFunc) -> Result<RatFunc> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> Result<RatFunc> {
        Self::normalized(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        Self::normalized(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn pow(&self, e: u32) -> Result<RatFunc> {
        let mut r = RatFunc::constant(Scalar::one());
        for _ in 0..e {
            r = r.mul(self)?;
        }
        Ok(r)
    }

    pub fn eval(&self, env: &HashMap<&str, &Scalar>) -> Result<Scalar> {
        let d = self.den.eval(env)?;
        self.num.eval(env)?.checked_div(&d)
    }

    pub fn substitute(&self, env: &HashMap<String, Poly>) -> Result<RatFunc> {
        Self::normalized(self.num.substitute(env), self.den.substitute(env))
    }

    /// Reads `sum_k c_k * e_k` as coefficients per basis index (0-based).
    pub fn linear_combination(&self, dim: usize) -> Result<Vec<(usize, RatFunc)>> {
        let basis: Vec<String> = (1..=dim).map(|k| format!("e{k}")).collect();
        let not_linear = || Error::parse(self.to_string(), "not a linear combination of basis vectors");
        if self.den.variables().iter().any(|v| basis.contains(v)) {
            return Err(not_linear());
        }
        let mut rest = self.num.clone();
        let mut out = Vec::new();
        for (k, e) in basis.iter().enumerate() {
            let (coeff, remainder) = rest.linear_part(e).ok_or_else(not_linear)?;
            rest = remainder;
            if !coeff.is_zero() {
                if coeff.variables().iter().any(|v| basis.contains(v)) {
                    return Err(not_linear());
                }
                out.push((k, Self::normalized(coeff, self.den.clone())?));
            }
        }
        if !rest.is_zero() {
            if let Some(v) = rest.variables().iter().find(|v| v.starts_with('e') && v[1..].parse::<usize>().is_ok()) {
                return Err(Error::parse(v.clone(), format!("basis vector outside 1..={dim}")));
            }
            return Err(not_linear());
        }
        Ok(out)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().is_some() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Parses `+ - * / ^`, parentheses, integers, identifiers and the imaginary unit `i`.
pub fn parse_expr(text: &str) -> Result<RatFunc> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0, text };
    let e = p.sum()?;
    if p.pos != p.tokens.len() {
        return Err(Error::parse(text, format!("unexpected `{}`", p.tokens[p.pos])));
    }
    Ok(e)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Op(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "{n}"),
            Tok::Ident(s) => f.write_str(s),
            Tok::Op(c) => write!(f, "{c}"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let s: String = chars[start..k].iter().collect();
            let n = s.parse().map_err(|_| Error::parse(s.clone(), "integer too large"))?;
            out.push(Tok::Num(n));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push(Tok::Ident(chars[start..k].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            k += 1;
        } else {
            return Err(Error::parse(c.to_string(), format!("unexpected character in `{text}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Tok>,
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn sum(&mut self) -> Result<RatFunc> {
        let mut acc = self.product()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.product()?;
            acc = if op == '+' { acc.add(&rhs)? } else { acc.sub(&rhs)? };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == '*' {
                acc.mul(&rhs)?
            } else {
                acc.div(&rhs).map_err(|_| Error::parse(self.text, "division by zero"))?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            match self.tokens.get(self.pos) {
                Some(Tok::Num(e)) if *e <= 64 => {
                    self.pos += 1;
                    return base.pow(*e as u32);
                }
                _ => return Err(Error::parse(self.text, "exponent must be a small integer")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc> {
        let tok = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::parse(self.text, "unexpected end of expression"))?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(RatFunc::constant(Scalar::from(n))),
            Tok::Ident(s) if s == "i" => Ok(RatFunc::constant(Scalar::i())),
            Tok::Ident(s) => Ok(RatFunc::from_poly(Poly::var(&s))),
            Tok::Op('(') => {
                let e = self.sum()?;
                if self.peek_op() != Some(')') {
                    return Err(Error::parse(self.text, "missing `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Tok::Op(c) => Err(Error::parse(c.to_string(), format!("unexpected operator in `{}`", self.text))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(text: &str, vars: &[(&str, Scalar)]) -> Scalar {
        let env: HashMap<&str, &Scalar> = vars.iter().map(|(k, v)| (*k, v)).collect();
        parse_expr(text).unwrap().eval(&env).unwrap()
    }

    #[test]
    fn arithmetic() {
        assert_eq!(eval("1/2*3", &[]), Scalar::ratio(3, 2));
        assert_eq!(eval("-b^2/c", &[("b", Scalar::from(3)), ("c", Scalar::from(2))]), Scalar::ratio(-9, 2));
        assert_eq!(eval("(1+alpha)/(1-alpha)", &[("alpha", Scalar::from(3))]), Scalar::from(-2));
        assert_eq!(eval("i*i", &[]), Scalar::from(-1));
    }

    #[test]
    fn singular_evaluation() {
        let env_val = Scalar::one();
        let env: HashMap<&str, &Scalar> = [("alpha", &env_val)].into_iter().collect();
        let e = parse_expr("1/(1-alpha)").unwrap();
        assert!(matches!(e.eval(&env), Err(Error::DivisionByZero)));
    }

    #[test]
    fn canonical_rendering() {
        assert_eq!(parse_expr("alpha + 1").unwrap().to_string(), "1 + alpha");
        assert_eq!(parse_expr("b*a - a^2 + 2").unwrap().to_string(), "2 - a^2 + a*b");
        assert_eq!(parse_expr("(1+alpha)/(1-alpha)").unwrap().to_string(), "(1 + alpha)/(1 - alpha)");
        assert_eq!(parse_expr("x/2").unwrap().to_string(), "1/2*x");
    }

    #[test]
    fn combinations() {
        let c = parse_expr("lambda*e3 + (1+alpha)*e4").unwrap().linear_combination(4).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].0, 2);
        assert_eq!(c[1].1.to_string(), "1 + alpha");
        assert!(parse_expr("e1*e2").unwrap().linear_combination(4).is_err());
        assert!(parse_expr("e1 + 1").unwrap().linear_combination(4).is_err());
        assert!(parse_expr("e5").unwrap().linear_combination(4).is_err());
    }

    #[test]
    fn syntax_errors() {
        assert!(parse_expr("1 +").is_err());
        assert!(parse_expr("(1").is_err());
        assert!(parse_expr("2 $ 3").is_err());
        assert!(parse_expr("1/0").is_err());
    }
}
