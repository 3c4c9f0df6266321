//! The coefficient field Q(r,s): fractions of Laurent polynomials, the
//! (r,s)-integers, and the one-parameter specialization r -> q^{-1}, s -> q.

use crate::laurent::{LaurentRS, Rational};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ScalarError {
    #[error("division by zero scalar")]
    DivisionByZero,
    #[error("pole at the specialization point: denominator vanishes")]
    Pole,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Exact rational function in `r` and `s`. Stored canonically: numerator and
/// denominator coprime, denominator an ordinary polynomial (no negative
/// exponents, no monomial content) with leading coefficient 1 under deglex.
#[derive(Clone)]
pub struct ScalarRS {
    num: LaurentRS,
    den: LaurentRS,
}

impl ScalarRS {
    pub fn zero() -> Self {
        Self {
            num: LaurentRS::zero(),
            den: LaurentRS::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentRS::one())
    }

    pub fn from_laurent(num: LaurentRS) -> Self {
        Self {
            num,
            den: LaurentRS::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_laurent(LaurentRS::from_int(n))
    }

    pub fn from_rat(c: Rational) -> Self {
        Self::from_laurent(LaurentRS::monomial(0, 0, c))
    }

    /// `c * r^a * s^b`
    pub fn monomial(a: i64, b: i64, c: Rational) -> Self {
        Self::from_laurent(LaurentRS::monomial(a, b, c))
    }

    pub fn var_r() -> Self {
        Self::monomial(1, 0, Rational::one())
    }

    pub fn var_s() -> Self {
        Self::monomial(0, 1, Rational::one())
    }

    pub fn new(num: LaurentRS, den: LaurentRS) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self { num, den }.canonicalize())
    }

    pub fn numerator(&self) -> &LaurentRS {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentRS {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    fn canonicalize(self) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        let g = self.num.gcd(&self.den);
        let mut num = self.num.exact_div(&g).expect("gcd divides numerator");
        let mut den = self.den.exact_div(&g).expect("gcd divides denominator");
        // Push the denominator's unit part (monomial content and leading
        // coefficient) into the numerator.
        let (a, b) = den.monomial_content();
        den = den.mul_monomial(-a, -b);
        num = num.mul_monomial(-a, -b);
        let (_, lc) = den.leading().expect("nonzero denominator");
        let lc = lc.clone();
        if !lc.is_one() {
            let inv = Rational::one() / lc;
            den = den.scale(&inv);
            num = num.scale(&inv);
        }
        Self { num, den }
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self { num, den }.canonicalize()
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        // Cross-cancel first to keep intermediate products small.
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = other.den.exact_div(&g1).unwrap();
        let n2 = other.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        Self {
            num: n1.mul(&n2),
            den: d1.mul(&d2),
        }
        .canonicalize()
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        if other.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(self.mul(&Self {
            num: other.den.clone(),
            den: other.num.clone(),
        }))
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        Self::one().div(self)
    }

    pub fn pow(&self, k: i64) -> Result<Self, ScalarError> {
        if k < 0 && self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let base = if k >= 0 { self.clone() } else { self.inv()? };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    pub fn scale_rat(&self, c: &Rational) -> Self {
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
        .canonicalize()
    }

    /// Evaluate at a rational point; errors when the denominator vanishes or
    /// a negative exponent meets a zero coordinate.
    pub fn eval(&self, r0: &Rational, s0: &Rational) -> Result<Rational, ScalarError> {
        let den = self.den.eval(r0, s0);
        if den.is_zero() {
            return Err(ScalarError::Pole);
        }
        Ok(self.num.eval(r0, s0) / den)
    }

    /// Specialize `r -> q^{-1}`, `s -> q`.
    pub fn specialize_one_param(&self) -> Result<ScalarQ, ScalarError> {
        let num = specialize_laurent(&self.num);
        let den = specialize_laurent(&self.den);
        if den.is_empty() {
            return Err(ScalarError::Pole);
        }
        Ok(ScalarQ { num, den }.canonicalize())
    }
}

/// `[k]_{r,s} = (s^k - r^k)/(s - r)` as the geometric sum.
pub fn rs_bracket(k: u32) -> Result<ScalarRS, ScalarError> {
    if k == 0 {
        return Err(ScalarError::Parse("rs_bracket requires k >= 1".into()));
    }
    let mut acc = LaurentRS::zero();
    for j in 0..k as i64 {
        acc = acc.add(&LaurentRS::monomial(j, k as i64 - 1 - j, Rational::one()));
    }
    Ok(ScalarRS::from_laurent(acc))
}

/// `[k]_{r,s}! = [1][2]...[k]`, with the empty product equal to 1.
pub fn rs_factorial(k: u32) -> ScalarRS {
    let mut acc = ScalarRS::one();
    for j in 1..=k {
        acc = acc.mul(&rs_bracket(j).expect("j >= 1"));
    }
    acc
}

impl PartialEq for ScalarRS {
    fn eq(&self, other: &Self) -> bool {
        // Cross-multiplication; independent of canonicalization.
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}
impl Eq for ScalarRS {}

// ---------------------------------------------------------------------------
// One-parameter image
// ---------------------------------------------------------------------------

/// Laurent polynomial in the single parameter `q`.
pub type LaurentQ = std::collections::BTreeMap<i64, Rational>;

fn specialize_laurent(p: &LaurentRS) -> LaurentQ {
    let mut out = LaurentQ::new();
    for (&(a, b), c) in p.terms() {
        let e = b - a;
        let entry = out.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            out.remove(&e);
        }
    }
    out
}

/// Exact rational function in `q`, the image of `ScalarRS` under
/// `r -> q^{-1}`, `s -> q`.
#[derive(Clone, Debug)]
pub struct ScalarQ {
    num: LaurentQ,
    den: LaurentQ,
}

fn laurent_q_mul(a: &LaurentQ, b: &LaurentQ) -> LaurentQ {
    let mut out = LaurentQ::new();
    for (e1, c1) in a {
        for (e2, c2) in b {
            let e = e1 + e2;
            let entry = out.entry(e).or_insert_with(Rational::zero);
            *entry += c1 * c2;
            if entry.is_zero() {
                out.remove(&e);
            }
        }
    }
    out
}

impl ScalarQ {
    pub fn one() -> Self {
        let mut num = LaurentQ::new();
        num.insert(0, Rational::one());
        Self {
            num: num.clone(),
            den: num,
        }
        .canonicalize()
    }

    pub fn monomial(e: i64, c: Rational) -> Self {
        let mut num = LaurentQ::new();
        if !c.is_zero() {
            num.insert(e, c);
        }
        let mut den = LaurentQ::new();
        den.insert(0, Rational::one());
        Self { num, den }
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    fn canonicalize(mut self) -> Self {
        // Univariate gcd over Q after shifting to nonnegative exponents.
        if self.num.is_empty() {
            let mut den = LaurentQ::new();
            den.insert(0, Rational::one());
            return Self {
                num: LaurentQ::new(),
                den,
            };
        }
        let to_vec = |p: &LaurentQ| -> (i64, Vec<Rational>) {
            let min = *p.keys().next().unwrap();
            let max = *p.keys().last().unwrap();
            let mut v = vec![Rational::zero(); (max - min + 1) as usize];
            for (e, c) in p {
                v[(e - min) as usize] = c.clone();
            }
            (min, v)
        };
        let (nmin, nv) = to_vec(&self.num);
        let (dmin, dv) = to_vec(&self.den);
        let g = uni_gcd(&nv, &dv);
        let nq = uni_exact_div(&nv, &g);
        let dq = uni_exact_div(&dv, &g);
        let from_vec = |min: i64, v: Vec<Rational>| -> LaurentQ {
            v.into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (min + i as i64, c))
                .collect()
        };
        let mut num = from_vec(nmin, nq);
        let mut den = from_vec(dmin, dq);
        // Normalize: den monic with minimal exponent 0.
        let dshift = *den.keys().next().unwrap();
        let dlead = den.values().last().unwrap().clone();
        num = num
            .iter()
            .map(|(e, c)| (e - dshift, c / &dlead))
            .collect();
        den = den
            .iter()
            .map(|(e, c)| (e - dshift, c / &dlead))
            .collect();
        self.num = num;
        self.den = den;
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        let num_a = laurent_q_mul(&self.num, &other.den);
        let num_b = laurent_q_mul(&other.num, &self.den);
        let mut num = num_a;
        for (e, c) in num_b {
            let entry = num.entry(e).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                num.remove(&e);
            }
        }
        Self {
            num,
            den: laurent_q_mul(&self.den, &other.den),
        }
        .canonicalize()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            num: laurent_q_mul(&self.num, &other.num),
            den: laurent_q_mul(&self.den, &other.den),
        }
        .canonicalize()
    }

    pub fn sub(&self, other: &Self) -> Self {
        let neg = Self {
            num: other.num.iter().map(|(e, c)| (*e, -c)).collect(),
            den: other.den.clone(),
        };
        self.add(&neg)
    }
}

impl PartialEq for ScalarQ {
    fn eq(&self, other: &Self) -> bool {
        laurent_q_mul(&self.num, &other.den) == laurent_q_mul(&other.num, &self.den)
    }
}
impl Eq for ScalarQ {}

fn uni_trim(v: &mut Vec<Rational>) {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

fn uni_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    uni_trim(&mut r);
    let mut bv = b.to_vec();
    uni_trim(&mut bv);
    while r.len() >= bv.len() && !r.is_empty() {
        let q = r.last().unwrap() / bv.last().unwrap();
        let shift = r.len() - bv.len();
        for (i, c) in bv.iter().enumerate() {
            let val = r[i + shift].clone() - &q * c;
            r[i + shift] = val;
        }
        uni_trim(&mut r);
    }
    r
}

fn uni_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    uni_trim(&mut x);
    uni_trim(&mut y);
    while !y.is_empty() {
        let r = uni_rem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(lead) = x.last().cloned() {
        for c in &mut x {
            *c /= &lead;
        }
    }
    x
}

fn uni_exact_div(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    uni_trim(&mut r);
    let mut bv = b.to_vec();
    uni_trim(&mut bv);
    let mut q = vec![Rational::zero(); r.len().saturating_sub(bv.len()) + 1];
    while r.len() >= bv.len() && !r.is_empty() {
        let c = r.last().unwrap() / bv.last().unwrap();
        let shift = r.len() - bv.len();
        q[shift] = c.clone();
        for (i, bc) in bv.iter().enumerate() {
            let val = r[i + shift].clone() - &c * bc;
            r[i + shift] = val;
        }
        uni_trim(&mut r);
    }
    debug_assert!(r.is_empty(), "inexact univariate division");
    q
}

// ---------------------------------------------------------------------------
// Textual form
// ---------------------------------------------------------------------------

/// Render one Laurent polynomial as `c*r^a*s^b` terms, deglex-descending.
pub fn format_laurent(p: &LaurentRS) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<(&(i64, i64), &Rational)> = p.terms().collect();
    terms.sort_by(|x, y| {
        let kx = (x.0 .0 + x.0 .1, x.0 .0);
        let ky = (y.0 .0 + y.0 .1, y.0 .0);
        ky.cmp(&kx)
    });
    let mut out = String::new();
    for (i, (&(a, b), c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = if neg { -(*c).clone() } else { (*c).clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        if !mag.is_one() || (a == 0 && b == 0) {
            factors.push(format_rat(&mag));
        }
        if a != 0 {
            factors.push(if a == 1 {
                "r".to_string()
            } else {
                format!("r^{}", a)
            });
        }
        if b != 0 {
            factors.push(if b == 1 {
                "s".to_string()
            } else {
                format!("s^{}", b)
            });
        }
        out.push_str(&factors.join("*"));
    }
    out
}

fn format_rat(c: &Rational) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for ScalarRS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", format_laurent(&self.num))
        } else {
            write!(
                f,
                "({})/({})",
                format_laurent(&self.num),
                format_laurent(&self.den)
            )
        }
    }
}

impl fmt::Debug for ScalarRS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_lq = |p: &LaurentQ| -> String {
            if p.is_empty() {
                return "0".into();
            }
            let mut terms: Vec<(&i64, &Rational)> = p.iter().collect();
            terms.sort_by(|x, y| y.0.cmp(x.0));
            let mut out = String::new();
            for (i, (&e, c)) in terms.iter().enumerate() {
                let neg = c.is_negative();
                let mag = if neg { -(*c).clone() } else { (*c).clone() };
                if i == 0 {
                    if neg {
                        out.push('-');
                    }
                } else {
                    out.push_str(if neg { " - " } else { " + " });
                }
                let mut factors: Vec<String> = Vec::new();
                if !mag.is_one() || e == 0 {
                    factors.push(format_rat(&mag));
                }
                if e != 0 {
                    factors.push(if e == 1 {
                        "q".to_string()
                    } else {
                        format!("q^{}", e)
                    });
                }
                out.push_str(&factors.join("*"));
            }
            out
        };
        let den_is_one = self.den.len() == 1
            && self.den.get(&0).map(|c| c.is_one()).unwrap_or(false);
        if den_is_one {
            write!(f, "{}", fmt_lq(&self.num))
        } else {
            write!(f, "({})/({})", fmt_lq(&self.num), fmt_lq(&self.den))
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing (round-trips the textual form exactly)
// ---------------------------------------------------------------------------

pub fn parse_scalar(input: &str) -> Result<ScalarRS, ScalarError> {
    let t = input.trim();
    // Fraction form "(num)/(den)": find the matching close paren of a
    // leading '(' and require "/(...)" after it.
    if let Some(stripped) = t.strip_prefix('(') {
        if let Some(close) = matching_paren(stripped) {
            let rest = stripped[close + 1..].trim_start();
            if let Some(den_part) = rest.strip_prefix('/') {
                let den_part = den_part.trim();
                let den_inner = den_part
                    .strip_prefix('(')
                    .and_then(|x| x.strip_suffix(')'))
                    .ok_or_else(|| ScalarError::Parse("malformed denominator".into()))?;
                let num = parse_laurent(&stripped[..close])?;
                let den = parse_laurent(den_inner)?;
                return ScalarRS::new(num, den);
            }
        }
    }
    Ok(ScalarRS::from_laurent(parse_laurent(t)?))
}

fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 1usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

fn parse_laurent(input: &str) -> Result<LaurentRS, ScalarError> {
    let t = input.trim();
    if t.is_empty() {
        return Err(ScalarError::Parse("empty scalar".into()));
    }
    if t == "0" {
        return Ok(LaurentRS::zero());
    }
    let mut acc = LaurentRS::zero();
    let mut rest = t;
    let mut sign = Rational::one();
    if let Some(r2) = rest.strip_prefix('-') {
        sign = -sign;
        rest = r2.trim_start();
    } else if let Some(r2) = rest.strip_prefix('+') {
        rest = r2.trim_start();
    }
    loop {
        // term ends at next top-level " + " or " - "
        let (term, next) = split_term(rest);
        let parsed = parse_term(term.trim())?;
        acc = acc.add(&parsed.scale(&sign));
        match next {
            Some((next_sign, tail)) => {
                sign = if next_sign { -Rational::one() } else { Rational::one() };
                rest = tail;
            }
            None => break,
        }
    }
    Ok(acc)
}

/// Split at the first ` + ` / ` - ` separator; returns (term, Some((is_minus, rest))).
fn split_term(s: &str) -> (&str, Option<(bool, &str)>) {
    let bytes = s.as_bytes();
    let mut i = 0;
    while i + 2 < bytes.len() {
        if bytes[i] == b' ' && (bytes[i + 1] == b'+' || bytes[i + 1] == b'-') && bytes[i + 2] == b' '
        {
            let minus = bytes[i + 1] == b'-';
            return (&s[..i], Some((minus, &s[i + 3..])));
        }
        i += 1;
    }
    (s, None)
}

fn parse_term(term: &str) -> Result<LaurentRS, ScalarError> {
    let mut coeff = Rational::one();
    let mut a = 0i64;
    let mut b = 0i64;
    for factor in term.split('*') {
        let f = factor.trim();
        if f.is_empty() {
            return Err(ScalarError::Parse(format!("empty factor in '{}'", term)));
        }
        if let Some(exp) = f.strip_prefix("r^") {
            a += exp
                .parse::<i64>()
                .map_err(|e| ScalarError::Parse(e.to_string()))?;
        } else if let Some(exp) = f.strip_prefix("s^") {
            b += exp
                .parse::<i64>()
                .map_err(|e| ScalarError::Parse(e.to_string()))?;
        } else if f == "r" {
            a += 1;
        } else if f == "s" {
            b += 1;
        } else {
            coeff *= parse_rat(f)?;
        }
    }
    Ok(LaurentRS::monomial(a, b, coeff))
}

fn parse_rat(s: &str) -> Result<Rational, ScalarError> {
    if let Some((n, d)) = s.split_once('/') {
        let n: num_bigint::BigInt = n
            .trim()
            .parse()
            .map_err(|_| ScalarError::Parse(format!("bad rational '{}'", s)))?;
        let d: num_bigint::BigInt = d
            .trim()
            .parse()
            .map_err(|_| ScalarError::Parse(format!("bad rational '{}'", s)))?;
        if d.is_zero() {
            return Err(ScalarError::Parse("zero denominator".into()));
        }
        Ok(Rational::new(n, d))
    } else {
        let n: num_bigint::BigInt = s
            .trim()
            .parse()
            .map_err(|_| ScalarError::Parse(format!("bad integer '{}'", s)))?;
        Ok(Rational::from_integer(n))
    }
}

/// Deterministic ordering key used when scalar values must be sorted in
/// output (based on the canonical display form).
pub fn scalar_sort_key(x: &ScalarRS) -> String {
    x.to_string()
}

impl PartialOrd for ScalarRS {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.to_string().cmp(&other.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{rat, rat_frac};

    fn r() -> ScalarRS {
        ScalarRS::var_r()
    }
    fn s() -> ScalarRS {
        ScalarRS::var_s()
    }

    #[test]
    fn additive_cancellation() {
        assert_eq!(r().add(&s()).add(&r().neg()), s());
    }

    #[test]
    fn difference_of_squares() {
        let lhs = s().sub(&r()).mul(&s().add(&r()));
        let rhs = s().mul(&s()).sub(&r().mul(&r()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_quotient() {
        // (s^2 - r^2)/(s - r) = s + r, checked by cross-multiplication:
        // (s+r)(s-r) = s^2-r^2.
        let q = s()
            .mul(&s())
            .sub(&r().mul(&r()))
            .div(&s().sub(&r()))
            .unwrap();
        assert_eq!(q, s().add(&r()));
        assert!(q.denominator().is_one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(r().div(&ScalarRS::zero()), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn bracket_values() {
        assert_eq!(rs_bracket(1).unwrap(), ScalarRS::one());
        assert_eq!(rs_bracket(2).unwrap(), r().add(&s()));
        let three = r()
            .mul(&r())
            .add(&r().mul(&s()))
            .add(&s().mul(&s()));
        assert_eq!(rs_bracket(3).unwrap(), three);
        assert!(rs_bracket(0).is_err());
    }

    #[test]
    fn bracket_identity_up_to_12() {
        for k in 1..=12u32 {
            let lhs = rs_bracket(k).unwrap().mul(&s().sub(&r()));
            let rhs = s().pow(k as i64).unwrap().sub(&r().pow(k as i64).unwrap());
            assert_eq!(lhs, rhs, "k={}", k);
        }
    }

    #[test]
    fn factorial_values() {
        assert_eq!(rs_factorial(0), ScalarRS::one());
        assert_eq!(rs_factorial(2), r().add(&s()));
        let expected = r()
            .add(&s())
            .mul(&rs_bracket(3).unwrap());
        assert_eq!(rs_factorial(3), expected);
    }

    #[test]
    fn specialization_examples() {
        // rs -> 1
        assert!(r().mul(&s()).specialize_one_param().unwrap().is_one());
        // [2] = r+s -> q^{-1} + q
        let two = rs_bracket(2).unwrap().specialize_one_param().unwrap();
        let expected = ScalarQ::monomial(1, rat(1)).add(&ScalarQ::monomial(-1, rat(1)));
        assert_eq!(two, expected);
        // s - r -> q - q^{-1}
        let d = s().sub(&r()).specialize_one_param().unwrap();
        let expected = ScalarQ::monomial(1, rat(1)).sub(&ScalarQ::monomial(-1, rat(1)));
        assert_eq!(d, expected);
    }

    #[test]
    fn specialization_pole_detected() {
        // 1/(rs - 1) has a pole at rs = 1.
        let x = ScalarRS::one()
            .div(&r().mul(&s()).sub(&ScalarRS::one()))
            .unwrap();
        assert_eq!(x.specialize_one_param(), Err(ScalarError::Pole));
    }

    #[test]
    fn canonicalization_idempotent() {
        let x = ScalarRS::new(
            LaurentRS::var_s().sub(&LaurentRS::var_r()).mul(&LaurentRS::var_r()),
            LaurentRS::var_r().scale(&rat(3)),
        )
        .unwrap();
        let y = x.clone().canonicalize();
        assert_eq!(x.num, y.num);
        assert_eq!(x.den, y.den);
    }

    #[test]
    fn display_roundtrip() {
        let samples = vec![
            ScalarRS::zero(),
            ScalarRS::one(),
            r().add(&s()),
            ScalarRS::monomial(-2, 3, rat_frac(-3, 2)),
            ScalarRS::one().div(&rs_factorial(3)).unwrap(),
            s().sub(&r()).div(&r().add(&s())).unwrap(),
        ];
        for x in samples {
            let text = x.to_string();
            let back = parse_scalar(&text).unwrap();
            assert_eq!(x, back, "text: {}", text);
        }
    }
}
