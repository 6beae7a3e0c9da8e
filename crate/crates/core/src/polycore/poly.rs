//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Variables carry structured names (`x_1_2`, `p_1_3_2`, `u`) and are totally
//! ordered by base name, then index tuple, so that `x_{i,j}` sorts row-major.
//! A `Polynomial` is stored canonically as a map from `Monomial` to a nonzero
//! coefficient; the map order is storage only, monomial orders are applied on
//! demand through `MonomialOrder`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::polycore::scalar::{format_scalar, parse_scalar, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Var {
    base: String,
    index: Vec<u32>,
}

impl Var {
    pub fn new(base: &str, index: &[u32]) -> Self {
        Self {
            base: base.to_string(),
            index: index.to_vec(),
        }
    }

    pub fn named(base: &str) -> Self {
        Self::new(base, &[])
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn index(&self) -> &[u32] {
        &self.index
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.base)?;
        for i in &self.index {
            write!(f, "_{i}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split('_');
        let base = parts.next().unwrap_or("");
        let ok_base = base.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && base.chars().all(|c| c.is_ascii_alphanumeric());
        if !ok_base {
            return invalid(format!("bad variable name `{s}`"));
        }
        let index = parts
            .map(|p| p.parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidInput(format!("bad variable index in `{s}`")))?;
        Ok(Var::new(base, &index))
    }
}

/// Product of variable powers, sorted by variable with no zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Self(vec![(v, 1)])
    }

    pub fn from_powers(powers: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut acc: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in powers {
            *acc.entry(v).or_insert(0) += e;
        }
        Self(acc.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    pub fn powers(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(v))
            .map_or(0, |i| self.0[i].1)
    }

    pub fn vars(&self) -> impl Iterator<Item = &Var> {
        self.0.iter().map(|(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|(v, e)| other.exponent(v) >= *e)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other
                .0
                .iter()
                .filter_map(|(v, e)| {
                    let r = e - self.exponent(v);
                    (r > 0).then(|| (v.clone(), r))
                })
                .collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let vars: BTreeSet<&Var> = self.vars().chain(other.vars()).collect();
        Monomial(
            vars.into_iter()
                .map(|v| (v.clone(), self.exponent(v).max(other.exponent(v))))
                .collect(),
        )
    }

    fn write_text(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" * ")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Monomial orders. Variables are ranked by `Var` ordering, the smallest
/// variable being the most significant (`x_1_1 > x_1_2 > ...`).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    #[default]
    DegRevLex,
    /// Product of degree-reverse-lexicographic orders on the listed blocks,
    /// earlier blocks dominating. Variables not listed form a final block.
    Block(Vec<Vec<Var>>),
}

impl MonomialOrder {
    /// Elimination order for `kill`: those variables dominate everything else.
    pub fn elimination(kill: &[Var]) -> Self {
        MonomialOrder::Block(vec![kill.to_vec()])
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => lex_cmp(a, b),
            MonomialOrder::DegRevLex => grevlex_cmp(a, b, |_| true),
            MonomialOrder::Block(blocks) => {
                for block in blocks {
                    let set: BTreeSet<&Var> = block.iter().collect();
                    let c = grevlex_cmp(a, b, |v| set.contains(v));
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                let listed: BTreeSet<&Var> = blocks.iter().flatten().collect();
                grevlex_cmp(a, b, |v| !listed.contains(v))
            }
        }
    }
}

fn lex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    let vars: BTreeSet<&Var> = a.vars().chain(b.vars()).collect();
    for v in vars {
        let c = a.exponent(v).cmp(&b.exponent(v));
        if c != Ordering::Equal {
            return c;
        }
    }
    Ordering::Equal
}

fn grevlex_cmp(a: &Monomial, b: &Monomial, keep: impl Fn(&Var) -> bool) -> Ordering {
    let deg = |m: &Monomial| -> u32 { m.0.iter().filter(|(v, _)| keep(v)).map(|(_, e)| e).sum() };
    let c = deg(a).cmp(&deg(b));
    if c != Ordering::Equal {
        return c;
    }
    let vars: BTreeSet<&Var> = a.vars().chain(b.vars()).filter(|v| keep(v)).collect();
    for v in vars.into_iter().rev() {
        let c = a.exponent(v).cmp(&b.exponent(v));
        if c != Ordering::Equal {
            return c.reverse();
        }
    }
    Ordering::Equal
}

/// Assignment of exact values to variables.
pub type Assignment = BTreeMap<Var, Scalar>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        Self::term(Scalar::one(), Monomial::var(v))
    }

    pub fn term(c: Scalar, m: Monomial) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars().cloned()).collect()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Terms sorted from largest to smallest under `ord`.
    pub fn sorted_terms(&self, ord: &MonomialOrder) -> Vec<(&Monomial, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| ord.compare(b.0, a.0));
        v
    }

    pub fn leading_term(&self, ord: &MonomialOrder) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().max_by(|a, b| ord.compare(a.0, b.0))
    }

    /// The unique scalar multiple `±self` with positive leading coefficient
    /// under `ord`.
    pub fn sign_normalized(&self, ord: &MonomialOrder) -> Polynomial {
        match self.leading_term(ord) {
            Some((_, c)) if c.is_negative() => -self.clone(),
            _ => self.clone(),
        }
    }

    /// Divide by the leading coefficient under `ord`.
    pub fn monic(&self, ord: &MonomialOrder) -> Polynomial {
        match self.leading_term(ord) {
            Some((_, c)) => self.scale(&c.recip()),
            None => Polynomial::zero(),
        }
    }

    pub fn evaluate(&self, point: &Assignment) -> Result<Scalar> {
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.powers() {
                let x = point
                    .get(v)
                    .ok_or_else(|| Error::InvalidInput(format!("variable {v} is unassigned")))?;
                for _ in 0..*e {
                    t *= x;
                }
            }
            total += t;
        }
        Ok(total)
    }

    pub fn derivative(&self, v: &Var) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let powers = m
                .powers()
                .iter()
                .map(|(w, f)| if w == v { (w.clone(), f - 1) } else { (w.clone(), *f) });
            out.add_term(Monomial::from_powers(powers), c * Scalar::from_integer(e.into()));
        }
        out
    }

    /// Apply a variable renaming to every monomial.
    pub fn rename(&self, f: impl Fn(&Var) -> Var) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| {
            (
                Monomial::from_powers(m.powers().iter().map(|(v, e)| (f(v), *e))),
                c.clone(),
            )
        }))
    }

    /// Render in the polynomial text format with terms sorted by `ord`.
    pub fn to_text(&self, ord: &MonomialOrder) -> String {
        struct Text<'a>(&'a Polynomial, &'a MonomialOrder);
        impl fmt::Display for Text<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.write_text(f, self.1)
            }
        }
        Text(self, ord).to_string()
    }

    fn write_text(&self, f: &mut fmt::Formatter<'_>, ord: &MonomialOrder) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.sorted_terms(ord).into_iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                f.write_str(&format_scalar(&a))?;
            } else {
                if !a.is_one() {
                    write!(f, "{} * ", format_scalar(&a))?;
                }
                m.write_text(f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_text(f, &MonomialOrder::DegRevLex)
    }
}

impl std::str::FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_polynomial(s)
    }
}

impl From<Var> for Polynomial {
    fn from(v: Var) -> Self {
        Polynomial::var(v)
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Scalar),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                toks.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                toks.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                toks.push(Tok::Star);
                i += 1;
            }
            '^' => {
                toks.push(Tok::Caret);
                i += 1;
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                let q = parse_scalar(&lit)
                    .ok_or_else(|| Error::InvalidInput(format!("bad coefficient `{lit}`")))?;
                toks.push(Tok::Num(q));
            }
            a if a.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return invalid(format!("unexpected character `{other}`")),
        }
    }
    Ok(toks)
}

/// Parse the text format: `c * x_1_2^e * ... + ...`, `/` for rational
/// coefficients.
pub fn parse_polynomial(s: &str) -> Result<Polynomial> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return invalid("empty polynomial");
    }
    let mut pos = 0;
    let mut out = Polynomial::zero();
    let mut first = true;
    while pos < toks.len() {
        let mut sign = Scalar::one();
        match toks[pos] {
            Tok::Plus => pos += 1,
            Tok::Minus => {
                sign = -sign;
                pos += 1;
            }
            _ if first => {}
            _ => return invalid("expected `+` or `-` between terms"),
        }
        first = false;
        let mut coeff = sign;
        let mut mono = Monomial::one();
        loop {
            match toks.get(pos) {
                Some(Tok::Num(q)) => {
                    coeff *= q;
                    pos += 1;
                }
                Some(Tok::Ident(name)) => {
                    let v: Var = name.parse()?;
                    pos += 1;
                    let mut e = 1;
                    if toks.get(pos) == Some(&Tok::Caret) {
                        match toks.get(pos + 1) {
                            Some(Tok::Num(q)) if q.is_integer() && !q.is_negative() => {
                                e = q.numer().to_string().parse::<u32>().map_err(|_| {
                                    Error::InvalidInput("exponent too large".into())
                                })?;
                                pos += 2;
                            }
                            _ => return invalid("expected nonnegative integer exponent"),
                        }
                    }
                    mono = mono.mul(&Monomial::from_powers([(v, e)]));
                }
                _ => return invalid("expected coefficient or variable"),
            }
            if toks.get(pos) == Some(&Tok::Star) {
                pos += 1;
                continue;
            }
            break;
        }
        out.add_term(mono, coeff);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::scalar::{frac, int};

    fn x(i: u32, j: u32) -> Polynomial {
        Polynomial::var(Var::new("x", &[i, j]))
    }

    #[test]
    fn var_names_roundtrip() {
        let v: Var = "x_1_12".parse().unwrap();
        assert_eq!(v, Var::new("x", &[1, 12]));
        assert_eq!(v.to_string(), "x_1_12");
        assert!("1x".parse::<Var>().is_err());
        assert!("t_aux".parse::<Var>().is_err());
        assert!(Var::new("x", &[1, 2]) < Var::new("x", &[1, 10]));
        assert!(Var::new("x", &[1, 7]) < Var::new("x", &[2, 1]));
    }

    #[test]
    fn commutator_vanishes() {
        let (a, b) = (x(1, 1), x(2, 2));
        assert!((&a * &b - &b * &a).is_zero());
    }

    #[test]
    fn text_format_is_stable() {
        let p = x(1, 1) * x(2, 2) - x(1, 2) * x(2, 1);
        assert_eq!(p.to_string(), "-x_1_2 * x_2_1 + x_1_1 * x_2_2");
        let q = Polynomial::constant(frac(3, 2)) * x(1, 1).pow(2) - Polynomial::constant(int(5));
        assert_eq!(q.to_string(), "3/2 * x_1_1^2 - 5");
        assert_eq!(q.to_string().parse::<Polynomial>().unwrap(), q);
        assert_eq!("x_1_1*x_2_2-x_1_2*x_2_1".parse::<Polynomial>().unwrap(), p);
        assert_eq!("0".parse::<Polynomial>().unwrap(), Polynomial::zero());
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert!("x_1 x_2".parse::<Polynomial>().is_err());
        assert!("x^-1".parse::<Polynomial>().is_err());
    }

    #[test]
    fn orders_agree_with_textbook_examples() {
        let m = |s: &str| s.parse::<Polynomial>().unwrap().terms().next().unwrap().0.clone();
        // x > y > z by variable ranking
        let (a, b) = (m("x * z^2"), m("y^3"));
        assert_eq!(MonomialOrder::Lex.compare(&a, &b), Ordering::Greater);
        assert_eq!(MonomialOrder::DegRevLex.compare(&a, &b), Ordering::Less);
        let (c, d) = (m("x^2 * z"), m("x * y^2"));
        assert_eq!(MonomialOrder::DegRevLex.compare(&c, &d), Ordering::Less);
        assert_eq!(MonomialOrder::Lex.compare(&c, &d), Ordering::Greater);
        let elim = MonomialOrder::elimination(&[Var::named("z")]);
        assert_eq!(elim.compare(&m("z"), &m("x^5")), Ordering::Greater);
    }

    #[test]
    fn evaluation_and_derivative() {
        let p: Polynomial = "2 * x^2 * y - y + 1/3".parse().unwrap();
        let mut pt = Assignment::new();
        pt.insert(Var::named("x"), int(3));
        pt.insert(Var::named("y"), frac(1, 2));
        assert_eq!(p.evaluate(&pt).unwrap(), int(9) - frac(1, 2) + frac(1, 3));
        assert_eq!(p.derivative(&Var::named("x")), "4 * x * y".parse().unwrap());
        pt.remove(&Var::named("y"));
        assert!(p.evaluate(&pt).is_err());
    }

    #[test]
    fn sign_normalization_makes_leading_coefficient_positive() {
        let p: Polynomial = "-x * y + z^2".parse().unwrap();
        let n = p.sign_normalized(&MonomialOrder::DegRevLex);
        assert_eq!(n, "x * y - z^2".parse().unwrap());
        assert_eq!(n.sign_normalized(&MonomialOrder::DegRevLex), n);
    }
}
