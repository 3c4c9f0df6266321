//! Laurent polynomials in the two parameters `r`, `s` over exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Exact rational number with arbitrary-precision numerator and denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exponent pair `(a, b)` standing for the monomial `r^a s^b`.
pub type Exponents = (i64, i64);

/// A Laurent polynomial in `r` and `s`: a finite map from exponent pairs to
/// nonzero rational coefficients. The empty map is zero; equal values have
/// identical term maps.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentRS {
    terms: BTreeMap<Exponents, Rational>,
}

/// Degree-lexicographic comparison of exponent pairs (total degree first,
/// then `r`-exponent). Used to pick leading terms deterministically.
fn deglex(x: &Exponents, y: &Exponents) -> std::cmp::Ordering {
    (x.0 + x.1, x.0).cmp(&(y.0 + y.1, y.0))
}

impl LaurentRS {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, Rational::one())
    }

    pub fn monomial(a: i64, b: i64, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        Self { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::monomial(0, 0, rat(n))
    }

    pub fn var_r() -> Self {
        Self::monomial(1, 0, Rational::one())
    }

    pub fn var_s() -> Self {
        Self::monomial(0, 1, Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&(0, 0))
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: Exponents) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    fn insert_add(terms: &mut BTreeMap<Exponents, Rational>, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::insert_add(&mut terms, *e, c.clone());
        }
        Self { terms }
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = (
                    e1.0.checked_add(e2.0).expect("exponent overflow in r"),
                    e1.1.checked_add(e2.1).expect("exponent overflow in s"),
                );
                Self::insert_add(&mut terms, e, c1 * c2);
            }
        }
        Self { terms }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, a: i64, b: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ((e.0 + a, e.1 + b), c.clone()))
                .collect(),
        }
    }

    /// Leading term under deglex.
    pub fn leading(&self) -> Option<(Exponents, &Rational)> {
        self.terms
            .iter()
            .max_by(|x, y| deglex(x.0, y.0))
            .map(|(e, c)| (*e, c))
    }

    /// Componentwise minimum exponents: the monomial content `r^a s^b`
    /// dividing every term.
    pub fn monomial_content(&self) -> Exponents {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(e) => *e,
            None => return (0, 0),
        };
        it.fold(first, |acc, e| (acc.0.min(e.0), acc.1.min(e.1)))
    }

    /// Rational content: gcd of coefficient numerators over lcm of
    /// denominators, signed to match the leading coefficient.
    pub fn rational_content(&self) -> Rational {
        use num_integer::Integer;
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return Rational::one();
        }
        let mut content = Rational::new(num_gcd, den_lcm);
        if let Some((_, lc)) = self.leading() {
            if lc.is_negative() {
                content = -content;
            }
        }
        content
    }

    /// Exact division; `None` when `other` does not divide `self` in the
    /// Laurent ring. Monomial factors are units, so both operands are first
    /// shifted into the ordinary polynomial ring and divided there.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        assert!(!other.is_zero(), "division by zero Laurent polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let shift_self = self.monomial_content();
        let shift_other = other.monomial_content();
        let f = self.mul_monomial(-shift_self.0, -shift_self.1);
        let g = other.mul_monomial(-shift_other.0, -shift_other.1);
        let (lead_e, lead_c) = g.leading().unwrap();
        let lead_c = lead_c.clone();
        let mut rem = f;
        let mut quot = Self::zero();
        while !rem.is_zero() {
            let (re, rc) = rem.leading().unwrap();
            if re.0 < lead_e.0 || re.1 < lead_e.1 {
                return None; // leading monomial not divisible
            }
            let qmono = Self::monomial(re.0 - lead_e.0, re.1 - lead_e.1, rc / &lead_c);
            rem = rem.sub(&qmono.mul(&g));
            quot = quot.add(&qmono);
        }
        Some(quot.mul_monomial(shift_self.0 - shift_other.0, shift_self.1 - shift_other.1))
    }

    /// Evaluate at a rational point `(r0, s0)`; both values must be nonzero
    /// when negative exponents occur.
    pub fn eval(&self, r0: &Rational, s0: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            acc += c * rat_pow(r0, e.0) * rat_pow(s0, e.1);
        }
        acc
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.make_primitive();
        }
        if other.is_zero() {
            return self.make_primitive();
        }
        let a = self.positive_part();
        let b = other.positive_part();
        poly_gcd(&RecPoly::from_laurent(&a), &RecPoly::from_laurent(&b)).to_laurent()
    }

    /// Strip monomial content so all exponents are nonnegative with zero
    /// componentwise minimum.
    pub fn positive_part(&self) -> Self {
        let (a, b) = self.monomial_content();
        self.mul_monomial(-a, -b)
    }

    fn make_primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let p = self.positive_part();
        let c = p.rational_content();
        p.scale(&(Rational::one() / c))
    }
}

pub fn rat_pow(base: &Rational, exp: i64) -> Rational {
    if exp == 0 {
        return Rational::one();
    }
    let mut acc = Rational::one();
    let positive = if exp > 0 {
        base.clone()
    } else {
        assert!(!base.is_zero(), "negative power of zero");
        Rational::one() / base
    };
    for _ in 0..exp.unsigned_abs() {
        acc *= &positive;
    }
    acc
}

// ---------------------------------------------------------------------------
// Bivariate gcd via primitive PRS in Q[s][r].
// ---------------------------------------------------------------------------

/// Univariate polynomial in `s` over Q, dense from degree 0.
#[derive(Clone, PartialEq)]
struct UniPoly {
    coeffs: Vec<Rational>, // no trailing zeros
}

impl UniPoly {
    fn zero() -> Self {
        Self { coeffs: vec![] }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn normalize(mut self) -> Self {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
        self
    }
    fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
    fn lead(&self) -> &Rational {
        self.coeffs.last().expect("lead of zero")
    }
    fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut coeffs = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in o.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        Self { coeffs }.normalize()
    }
    fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|k| k * c).collect(),
        }
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self { coeffs }.normalize()
    }
    fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }
    fn rem(&self, o: &Self) -> Self {
        let mut r = self.clone();
        while !r.is_zero() && r.deg() >= o.deg() {
            let q = r.lead() / o.lead();
            let shift = r.deg() - o.deg();
            r = r.add(&o.shift(shift).scale(&(-q)));
        }
        r
    }
    /// Scale so coefficients are coprime integers; keeps Euclid's
    /// remainders from blowing up in rational size.
    fn reduce_content(self) -> Self {
        use num_integer::Integer;
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.coeffs.iter().filter(|c| !c.is_zero()) {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return self;
        }
        self.scale(&(Rational::new(den, num)))
    }

    fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (
            self.clone().reduce_content(),
            o.clone().reduce_content(),
        );
        while !b.is_zero() {
            let r = a.rem(&b).reduce_content();
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lc = a.lead().clone();
        a.scale(&(Rational::one() / lc))
    }
    fn exact_div(&self, o: &Self) -> Self {
        let mut r = self.clone();
        let mut q = Self::zero();
        while !r.is_zero() && r.deg() >= o.deg() {
            let c = r.lead() / o.lead();
            let shift = r.deg() - o.deg();
            let term = Self {
                coeffs: {
                    let mut v = vec![Rational::zero(); shift + 1];
                    v[shift] = c;
                    v
                },
            };
            r = r.add(&o.mul(&term).scale(&rat(-1)));
            q = q.add(&term);
        }
        debug_assert!(r.is_zero(), "inexact univariate division");
        q
    }
}

/// Polynomial in `r` with `UniPoly` (in `s`) coefficients, dense from degree 0.
#[derive(Clone)]
struct RecPoly {
    coeffs: Vec<UniPoly>, // no trailing zeros
}

impl RecPoly {
    fn from_laurent(p: &LaurentRS) -> Self {
        let mut coeffs: Vec<UniPoly> = vec![];
        for (&(a, b), c) in p.terms() {
            let (a, b) = (a as usize, b as usize);
            while coeffs.len() <= a {
                coeffs.push(UniPoly::zero());
            }
            let u = &mut coeffs[a];
            while u.coeffs.len() <= b {
                u.coeffs.push(Rational::zero());
            }
            u.coeffs[b] += c;
        }
        for u in &mut coeffs {
            *u = u.clone().normalize();
        }
        Self { coeffs }.normalize()
    }

    fn to_laurent(&self) -> LaurentRS {
        let mut acc = LaurentRS::zero();
        for (a, u) in self.coeffs.iter().enumerate() {
            for (b, c) in u.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    acc = acc.add(&LaurentRS::monomial(a as i64, b as i64, c.clone()));
                }
            }
        }
        acc
    }

    fn normalize(mut self) -> Self {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
        self
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
    fn lead(&self) -> &UniPoly {
        self.coeffs.last().expect("lead of zero")
    }
    fn content(&self) -> UniPoly {
        let mut g = UniPoly::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }
    fn div_content(&self, content: &UniPoly) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.exact_div(content)).collect(),
        }
    }
    fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        self.div_content(&c)
    }
    fn scale_uni(&self, u: &UniPoly) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.mul(u)).collect(),
        }
        .normalize()
    }
    /// Pseudo-remainder of `self` by `o` in (Q[s])[r].
    fn prem(&self, o: &Self) -> Self {
        let mut r = self.clone();
        let lead = o.lead().clone();
        while !r.is_zero() && r.deg() >= o.deg() {
            let shift = r.deg() - o.deg();
            let rl = r.lead().clone();
            let mut scaled = r.scale_uni(&lead);
            // subtract o * r.lead() * x^shift
            let mut sub = o.clone();
            sub.coeffs = {
                let mut v = vec![UniPoly::zero(); shift];
                v.extend(sub.coeffs.iter().cloned());
                v
            };
            let sub = sub.scale_uni(&rl);
            for (i, c) in sub.coeffs.iter().enumerate() {
                while scaled.coeffs.len() <= i {
                    scaled.coeffs.push(UniPoly::zero());
                }
                scaled.coeffs[i] = scaled.coeffs[i].add(&c.scale(&rat(-1)));
            }
            r = scaled.normalize();
        }
        r
    }
}

fn poly_gcd(f: &RecPoly, g: &RecPoly) -> RecPoly {
    if f.is_zero() {
        return g.primitive();
    }
    if g.is_zero() {
        return f.primitive();
    }
    let cf = f.content();
    let cg = g.content();
    let content_gcd = cf.gcd(&cg);
    let (mut a, mut b) = (f.primitive(), g.primitive());
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = a.prem(&b).primitive();
        a = b;
        b = r;
    }
    let mut result = a.primitive();
    result = result.scale_uni(&content_gcd);
    // Positive leading rational coefficient for determinism.
    let lead_sign = result
        .lead()
        .lead()
        .clone();
    if lead_sign.is_negative() {
        result = result.scale_uni(&UniPoly {
            coeffs: vec![rat(-1)],
        });
    }
    result
}

impl fmt::Debug for LaurentRS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::scalar::format_laurent(self))
    }
}
