//! Noncommutative polynomials: words in a fixed generator alphabet with
//! exact Q(r,s) coefficients, ordered degree-first then lexicographically.

use crate::scalar::ScalarRS;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Generator families across all presented algebras. `copy` distinguishes
/// the two sides of a tensor-square presentation (0 = left, 1 = right).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GenFamily {
    T,
    LPlus,
    LPlusDiagInv,
    LMinus,
    LMinusDiagInv,
    DjE,
    DjF,
    DjA,
    DjAInv,
    DjB,
    DjBInv,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct GeneratorId {
    pub family: GenFamily,
    pub i: u8,
    pub j: u8,
    pub copy: u8,
}

impl GeneratorId {
    pub fn t(i: u8, j: u8) -> Self {
        Self {
            family: GenFamily::T,
            i,
            j,
            copy: 0,
        }
    }

    /// `l+[i,j]`, defined only for i <= j.
    pub fn l_plus(i: u8, j: u8) -> Self {
        assert!(i <= j, "l+ is upper triangular");
        Self {
            family: GenFamily::LPlus,
            i,
            j,
            copy: 0,
        }
    }

    /// `l-[i,j]`, defined only for i >= j.
    pub fn l_minus(i: u8, j: u8) -> Self {
        assert!(i >= j, "l- is lower triangular");
        Self {
            family: GenFamily::LMinus,
            i,
            j,
            copy: 0,
        }
    }

    pub fn k_plus_inv(i: u8) -> Self {
        Self {
            family: GenFamily::LPlusDiagInv,
            i,
            j: i,
            copy: 0,
        }
    }

    pub fn k_minus_inv(i: u8) -> Self {
        Self {
            family: GenFamily::LMinusDiagInv,
            i,
            j: i,
            copy: 0,
        }
    }

    pub fn with_copy(mut self, copy: u8) -> Self {
        self.copy = copy;
        self
    }

    /// Precedence key: copy-major, then family group, then (j, i) so that
    /// t[2,1] < t[1,2] and the Example relations orient descending pairs to
    /// ascending ones; each diagonal inverse ranks immediately after its
    /// base generator.
    fn precedence(&self) -> (u8, u8, u8, u8, u8) {
        let (group, inv) = match self.family {
            GenFamily::T => (0, 0),
            GenFamily::LPlus => (1, 0),
            GenFamily::LPlusDiagInv => (1, 1),
            GenFamily::LMinus => (2, 0),
            GenFamily::LMinusDiagInv => (2, 1),
            GenFamily::DjE => (3, 0),
            GenFamily::DjF => (4, 0),
            GenFamily::DjA => (5, 0),
            GenFamily::DjAInv => (5, 1),
            GenFamily::DjB => (6, 0),
            GenFamily::DjBInv => (6, 1),
        };
        (self.copy, group, self.j, self.i, inv)
    }
}

impl PartialOrd for GeneratorId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GeneratorId {
    fn cmp(&self, other: &Self) -> Ordering {
        self.precedence().cmp(&other.precedence())
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.family {
            GenFamily::T => format!("t[{},{}]", self.i, self.j),
            GenFamily::LPlus => format!("l+[{},{}]", self.i, self.j),
            GenFamily::LPlusDiagInv => format!("k+inv[{}]", self.i),
            GenFamily::LMinus => format!("l-[{},{}]", self.i, self.j),
            GenFamily::LMinusDiagInv => format!("k-inv[{}]", self.i),
            GenFamily::DjE => format!("e[{}]", self.i),
            GenFamily::DjF => format!("f[{}]", self.i),
            GenFamily::DjA => format!("a[{}]", self.i),
            GenFamily::DjAInv => format!("a-inv[{}]", self.i),
            GenFamily::DjB => format!("b[{}]", self.i),
            GenFamily::DjBInv => format!("b-inv[{}]", self.i),
        };
        if self.copy == 0 {
            write!(f, "{}", base)
        } else {
            write!(f, "{}'", base)
        }
    }
}

/// A word in the free monoid on generators. The `Ord` impl is the
/// degree-lexicographic monomial order used for rule orientation.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub Vec<GeneratorId>);

impl Word {
    pub fn empty() -> Self {
        Self(vec![])
    }

    pub fn single(g: GeneratorId) -> Self {
        Self(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(other.0.iter()).cloned().collect())
    }

    pub fn subword(&self, start: usize, len: usize) -> Word {
        Word(self.0[start..start + len].to_vec())
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for g in &self.0 {
            write!(f, "{}", g)?;
        }
        Ok(())
    }
}

/// Marker for the word order in use: degree first, then lexicographic by
/// generator precedence. Compatible with concatenation and a well-order.
#[derive(Clone, Copy, Debug, Default)]
pub struct MonomialOrder;

impl MonomialOrder {
    pub fn compare(&self, a: &Word, b: &Word) -> Ordering {
        a.cmp(b)
    }
}

/// Finite linear combination of words with nonzero Q(r,s) coefficients.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, ScalarRS>,
}

impl NCPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_term(Word::empty(), ScalarRS::one())
    }

    pub fn gen(g: GeneratorId) -> Self {
        Self::from_term(Word::single(g), ScalarRS::one())
    }

    pub fn from_word(w: Word) -> Self {
        Self::from_term(w, ScalarRS::one())
    }

    pub fn from_term(w: Word, c: ScalarRS) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        Self { terms }
    }

    pub fn from_scalar(c: ScalarRS) -> Self {
        Self::from_term(Word::empty(), c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &ScalarRS)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> ScalarRS {
        self.terms.get(w).cloned().unwrap_or_else(ScalarRS::zero)
    }

    /// Largest word under the monomial order, with its coefficient.
    pub fn leading(&self) -> Option<(&Word, &ScalarRS)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, w: Word, c: ScalarRS) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &ScalarRS) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(w, k)| (w.clone(), k.mul(c)))
                .collect(),
        }
    }

    /// Divide by the leading coefficient so the leading term is monic.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some((_, lc)) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Apply a word homomorphism: each generator maps to a polynomial.
    pub fn substitute(&self, map: impl Fn(&GeneratorId) -> NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            let mut acc = NCPoly::from_scalar(c.clone());
            for g in &w.0 {
                acc = acc.mul(&map(g));
            }
            out = out.add(&acc);
        }
        out
    }

    /// Move every generator to the given tensor-square copy.
    pub fn to_copy(&self, copy: u8) -> NCPoly {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| {
                    (
                        Word(w.0.iter().map(|g| g.with_copy(copy)).collect()),
                        c.clone(),
                    )
                })
                .collect(),
        }
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // ascending word order: normal-ordered products read naturally
        for (idx, (w, c)) in self.terms.iter().enumerate() {
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) if !rest.contains(" + ") && !rest.contains(" - ") => {
                    (true, rest.to_string())
                }
                _ => (false, text),
            };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let needs_parens = mag.contains(" + ") || mag.contains(" - ") || mag.starts_with('-');
            let coeff_part = if mag == "1" && !w.is_empty() {
                String::new()
            } else if w.is_empty() {
                if needs_parens {
                    format!("({})", mag)
                } else {
                    mag.clone()
                }
            } else if needs_parens {
                format!("({})*", mag)
            } else {
                format!("{}*", mag)
            };
            write!(f, "{}{}", coeff_part, if w.is_empty() { String::new() } else { w.to_string() })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(i: u8, j: u8) -> NCPoly {
        NCPoly::gen(GeneratorId::t(i, j))
    }

    #[test]
    fn identity_word() {
        assert_eq!(t(1, 1).mul(&NCPoly::one()), t(1, 1));
    }

    #[test]
    fn distributivity_without_reordering() {
        let p = t(1, 1).add(&t(2, 2)).mul(&t(1, 2));
        assert_eq!(p.num_terms(), 2);
        let w1 = Word(vec![GeneratorId::t(1, 1), GeneratorId::t(1, 2)]);
        let w2 = Word(vec![GeneratorId::t(2, 2), GeneratorId::t(1, 2)]);
        assert!(p.coeff(&w1).is_one());
        assert!(p.coeff(&w2).is_one());
    }

    #[test]
    fn cancellation() {
        let c = ScalarRS::var_s().sub(&ScalarRS::var_r());
        let w = t(2, 1).mul(&t(1, 2));
        assert!(w.scale(&c).sub(&w.scale(&c)).is_zero());
    }

    #[test]
    fn deglex_ordering() {
        let short = Word(vec![GeneratorId::t(2, 2)]);
        let long = Word(vec![GeneratorId::t(1, 1), GeneratorId::t(1, 1)]);
        assert!(short < long);
        let a = Word(vec![GeneratorId::t(1, 1), GeneratorId::t(2, 2)]);
        let b = Word(vec![GeneratorId::t(2, 1), GeneratorId::t(1, 2)]);
        assert!(a < b); // first letter decides
    }

    #[test]
    fn leading_term() {
        let p = t(1, 1).mul(&t(1, 2)).add(&t(1, 2).mul(&t(1, 1)).scale(&ScalarRS::var_r()));
        let (lead, c) = p.leading().unwrap();
        assert_eq!(*lead, Word(vec![GeneratorId::t(1, 2), GeneratorId::t(1, 1)]));
        assert_eq!(*c, ScalarRS::var_r());
    }

    #[test]
    fn display_matches_expected_format() {
        let det = t(1, 1)
            .mul(&t(2, 2))
            .sub(&t(2, 1).mul(&t(1, 2)).scale(&ScalarRS::var_s()));
        assert_eq!(det.to_string(), "t[1,1]t[2,2] - s*t[2,1]t[1,2]");
    }
}
