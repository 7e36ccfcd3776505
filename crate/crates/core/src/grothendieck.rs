//! Free polynomial model of the Grothendieck ring of varieties, localized at
//! the class `L` of the affine line.
//!
//! An element is an integer combination of monomials `L^k * s1^e1 * ...`
//! where `k` may be negative and the `s_i` are opaque class symbols (the
//! class of an abelian quotient, of a stratum cover, ...). No relations hold
//! between symbols beyond the commutative ring laws; identities such as
//! `[P^2] = L^2 + L + 1` are imposed with [`GrothElem::substitute_relations`].
//!
//! Canonical text form lists terms by descending `L` exponent, then by
//! descending symbol degree, then lexicographically on the symbol word:
//! `L^2*b - 2*L*b + b`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::poly::QPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrothError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid class symbol `{0}`")]
    InvalidSymbol(String),
    #[error("relation cycle through symbols: {}", .0.join(" -> "))]
    RelationCycle(Vec<String>),
    #[error("no image given for class symbol `{0}`")]
    UnmappedSymbol(String),
    #[error("negative power of L needs an invertible image of L, got {0}")]
    NonInvertible(String),
}

/// Name of a class in the Grothendieck ring. Never equal to `L`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassSymbol(String);

impl ClassSymbol {
    pub fn new(name: impl Into<String>) -> Result<Self, GrothError> {
        let name = name.into();
        let mut chars = name.chars();
        let ok = match chars.next() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
            }
            _ => false,
        };
        if !ok || name == "L" {
            return Err(GrothError::InvalidSymbol(name));
        }
        Ok(Self(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ClassSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// `L^l_exp` times a product of symbol powers (sorted by name, exponents > 0).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    l_exp: i64,
    syms: Vec<(ClassSymbol, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self { l_exp: 0, syms: Vec::new() }
    }

    pub fn l_pow(k: i64) -> Self {
        Self { l_exp: k, syms: Vec::new() }
    }

    pub fn l_exp(&self) -> i64 {
        self.l_exp
    }

    pub fn symbols(&self) -> &[(ClassSymbol, u32)] {
        &self.syms
    }

    pub fn symbol_degree(&self) -> u64 {
        self.syms.iter().map(|(_, e)| u64::from(*e)).sum()
    }

    fn word(&self) -> Vec<&ClassSymbol> {
        self.syms
            .iter()
            .flat_map(|(s, e)| std::iter::repeat_n(s, *e as usize))
            .collect()
    }

    fn mul(&self, other: &Self) -> Self {
        let mut syms: BTreeMap<ClassSymbol, u32> = self.syms.iter().cloned().collect();
        for (s, e) in &other.syms {
            *syms.entry(s.clone()).or_insert(0) += e;
        }
        Self { l_exp: self.l_exp + other.l_exp, syms: syms.into_iter().collect() }
    }

    fn render(&self) -> String {
        let mut parts = Vec::new();
        match self.l_exp {
            0 => {}
            1 => parts.push("L".to_string()),
            k => parts.push(format!("L^{k}")),
        }
        for (s, e) in &self.syms {
            if *e == 1 {
                parts.push(s.to_string());
            } else {
                parts.push(format!("{s}^{e}"));
            }
        }
        parts.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .l_exp
            .cmp(&self.l_exp)
            .then_with(|| other.symbol_degree().cmp(&self.symbol_degree()))
            .then_with(|| self.word().cmp(&other.word()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of the free model. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GrothElem {
    terms: BTreeMap<Monomial, BigInt>,
}

impl GrothElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn int(n: impl Into<BigInt>) -> Self {
        Self::from_term(Monomial::one(), n.into())
    }

    /// The class `L` of the affine line.
    pub fn l() -> Self {
        Self::l_pow(1)
    }

    pub fn l_pow(k: i64) -> Self {
        Self::from_term(Monomial::l_pow(k), BigInt::one())
    }

    /// `L - 1`, the class of the multiplicative group.
    pub fn gm() -> Self {
        Self::l() - Self::one()
    }

    pub fn symbol(s: ClassSymbol) -> Self {
        Self::from_term(Monomial { l_exp: 0, syms: vec![(s, 1)] }, BigInt::one())
    }

    /// Shorthand for a symbol given by name; panics on an invalid name.
    pub fn sym(name: &str) -> Self {
        Self::symbol(ClassSymbol::new(name).expect("valid class symbol"))
    }

    pub fn from_term(m: Monomial, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn symbols(&self) -> BTreeSet<ClassSymbol> {
        self.terms
            .keys()
            .flat_map(|m| m.syms.iter().map(|(s, _)| s.clone()))
            .collect()
    }

    pub fn has_symbols(&self) -> bool {
        self.terms.keys().any(|m| !m.syms.is_empty())
    }

    /// Integer value when the element is a constant.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                (m.l_exp == 0 && m.syms.is_empty()).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Multiply by `L^k`.
    pub fn shift_l(&self, k: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial { l_exp: m.l_exp + k, syms: m.syms.clone() }, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
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

    /// Inverse of a unit `±L^k`.
    pub fn unit_inverse(&self) -> Option<Self> {
        let (m, c) = self.single_term()?;
        if !m.syms.is_empty() || !c.abs().is_one() {
            return None;
        }
        Some(Self::from_term(Monomial::l_pow(-m.l_exp), c.clone()))
    }

    fn single_term(&self) -> Option<(&Monomial, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Eliminate every symbol in `relations` by its image, recursively.
    /// The relation graph must be acyclic.
    pub fn substitute_relations(
        &self,
        relations: &BTreeMap<ClassSymbol, GrothElem>,
    ) -> Result<GrothElem, GrothError> {
        let expanded = expand_relations(relations)?;
        Ok(self.substitute_resolved(&expanded))
    }

    fn substitute_resolved(&self, resolved: &BTreeMap<ClassSymbol, GrothElem>) -> GrothElem {
        let mut out = GrothElem::zero();
        for (m, c) in &self.terms {
            let mut kept = Monomial::l_pow(m.l_exp);
            let mut factor = GrothElem::one();
            for (s, e) in &m.syms {
                match resolved.get(s) {
                    Some(img) => factor = &factor * &img.pow(*e),
                    None => kept = kept.mul(&Monomial { l_exp: 0, syms: vec![(s.clone(), *e)] }),
                }
            }
            out += &(&factor * &GrothElem::from_term(kept, c.clone()));
        }
        out
    }

    /// Image under a ring morphism to univariate rational polynomials.
    pub fn specialize(&self, s: &Specialization) -> Result<QPoly, GrothError> {
        let mut inv_l: Option<QPoly> = None;
        let mut out = QPoly::zero();
        for (m, c) in &self.terms {
            let mut term = QPoly::constant(BigRational::from_integer(c.clone()));
            if m.l_exp >= 0 {
                term = &term * &s.image_of_l.pow(m.l_exp as u32);
            } else {
                if inv_l.is_none() {
                    let k = s
                        .image_of_l
                        .as_constant()
                        .filter(|k| !k.is_zero())
                        .ok_or_else(|| GrothError::NonInvertible(s.image_of_l.to_string()))?;
                    inv_l = Some(QPoly::constant(BigRational::one() / k));
                }
                term = &term * &inv_l.as_ref().unwrap().pow((-m.l_exp) as u32);
            }
            for (sym, e) in &m.syms {
                let img = s
                    .image_of_symbol
                    .get(sym)
                    .ok_or_else(|| GrothError::UnmappedSymbol(sym.to_string()))?;
                term = &term * &img.pow(*e);
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Maximum over monomials of `L`-exponent plus symbol dimensions;
    /// `None` stands for the zero element (dimension minus infinity).
    pub fn virtual_dimension(
        &self,
        dims: &BTreeMap<ClassSymbol, i64>,
    ) -> Result<Option<i64>, GrothError> {
        let mut best: Option<i64> = None;
        for m in self.terms.keys() {
            let mut d = m.l_exp;
            for (s, e) in &m.syms {
                let sd = dims.get(s).ok_or_else(|| GrothError::UnmappedSymbol(s.to_string()))?;
                d += sd * i64::from(*e);
            }
            best = Some(best.map_or(d, |b| b.max(d)));
        }
        Ok(best)
    }
}

/// Fully expand each relation so that right-hand sides mention no mapped
/// symbol. Fails on a cycle.
fn expand_relations(
    relations: &BTreeMap<ClassSymbol, GrothElem>,
) -> Result<BTreeMap<ClassSymbol, GrothElem>, GrothError> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Active,
        Done,
    }
    fn visit(
        s: &ClassSymbol,
        relations: &BTreeMap<ClassSymbol, GrothElem>,
        marks: &mut BTreeMap<ClassSymbol, Mark>,
        stack: &mut Vec<ClassSymbol>,
        out: &mut BTreeMap<ClassSymbol, GrothElem>,
    ) -> Result<(), GrothError> {
        match marks.get(s) {
            Some(Mark::Done) => return Ok(()),
            Some(Mark::Active) => {
                let start = stack.iter().position(|x| x == s).unwrap_or(0);
                let mut cycle: Vec<String> = stack[start..].iter().map(|x| x.to_string()).collect();
                cycle.push(s.to_string());
                return Err(GrothError::RelationCycle(cycle));
            }
            None => {}
        }
        marks.insert(s.clone(), Mark::Active);
        stack.push(s.clone());
        let rhs = &relations[s];
        for dep in rhs.symbols() {
            if relations.contains_key(&dep) {
                visit(&dep, relations, marks, stack, out)?;
            }
        }
        let expanded = rhs.substitute_resolved(out);
        out.insert(s.clone(), expanded);
        stack.pop();
        marks.insert(s.clone(), Mark::Done);
        Ok(())
    }

    let mut marks = BTreeMap::new();
    let mut out = BTreeMap::new();
    let mut stack = Vec::new();
    for s in relations.keys() {
        visit(s, relations, &mut marks, &mut stack, &mut out)?;
    }
    Ok(out)
}

/// Ring morphism from the free model to `Q[x]`, fixed by the images of `L`
/// and of each class symbol.
#[derive(Clone, Debug, PartialEq)]
pub struct Specialization {
    pub image_of_l: QPoly,
    pub image_of_symbol: BTreeMap<ClassSymbol, QPoly>,
}

impl Specialization {
    /// Euler characteristic: `L -> 1`, symbols to the given integers.
    pub fn euler_characteristic(symbols: impl IntoIterator<Item = (ClassSymbol, i64)>) -> Self {
        Self {
            image_of_l: QPoly::one(),
            image_of_symbol: symbols
                .into_iter()
                .map(|(s, v)| (s, QPoly::constant(BigRational::from_integer(v.into()))))
                .collect(),
        }
    }

    /// Rational value of a specialization whose codomain is constant.
    pub fn apply_constant(&self, x: &GrothElem) -> Result<Option<BigRational>, GrothError> {
        Ok(x.specialize(self)?.as_constant())
    }
}

impl fmt::Display for GrothElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono = m.render();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for GrothElem {
    type Err = GrothError;
    fn from_str(s: &str) -> Result<Self, GrothError> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(v)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> GrothError {
        GrothError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<GrothElem, GrothError> {
        let mut acc = GrothElem::zero();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { acc - t } else { acc + t };
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<GrothElem, GrothError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<GrothElem, GrothError> {
        let base = self.primary()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let paren = self.peek() == Some(b'(');
        if paren {
            self.pos += 1;
        }
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let e = self
            .integer()?
            .to_u32()
            .ok_or_else(|| self.err("exponent out of range"))?;
        if paren {
            if self.peek() != Some(b')') {
                return Err(self.err("expected `)`"));
            }
            self.pos += 1;
        }
        if neg {
            let inv = base
                .unit_inverse()
                .ok_or_else(|| self.err("negative exponent on a non-unit"))?;
            Ok(inv.pow(e))
        } else {
            Ok(base.pow(e))
        }
    }

    fn integer(&mut self) -> Result<BigInt, GrothError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse as integer"))
    }

    fn primary(&mut self) -> Result<GrothElem, GrothError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(GrothElem::int(self.integer()?)),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii ident");
                if name == "L" {
                    Ok(GrothElem::l())
                } else {
                    Ok(GrothElem::symbol(ClassSymbol::new(name)?))
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

impl AddAssign<&GrothElem> for GrothElem {
    fn add_assign(&mut self, rhs: &GrothElem) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Add for &GrothElem {
    type Output = GrothElem;
    fn add(self, rhs: &GrothElem) -> GrothElem {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &GrothElem {
    type Output = GrothElem;
    fn sub(self, rhs: &GrothElem) -> GrothElem {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &GrothElem {
    type Output = GrothElem;
    fn mul(self, rhs: &GrothElem) -> GrothElem {
        let mut out = GrothElem::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &GrothElem {
    type Output = GrothElem;
    fn neg(self) -> GrothElem {
        GrothElem { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GrothElem {
            type Output = GrothElem;
            fn $m(self, rhs: GrothElem) -> GrothElem {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for GrothElem {
    type Output = GrothElem;
    fn neg(self) -> GrothElem {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(s: &str) -> GrothElem {
        s.parse().unwrap()
    }

    fn sym(s: &str) -> ClassSymbol {
        ClassSymbol::new(s).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(g("L+1") + g("L^2"), g("L^2 + L + 1"));
        assert_eq!((g("L+1") + g("L^2")).to_string(), "L^2 + L + 1");
        let x = g("3*L^-2*b - c");
        assert_eq!(&x + &GrothElem::zero(), x);
    }

    #[test]
    fn projective_plane_relation() {
        let rel = BTreeMap::from([(sym("P2"), g("L^2 + L + 1"))]);
        let x = g("P2 - L^2 - L - 1");
        assert!(x.substitute_relations(&rel).unwrap().is_zero());
        assert_eq!(g("P2").substitute_relations(&rel).unwrap(), g("L^2+L+1"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(g("L-1") * g("L+1"), g("L^2 - 1"));
        let x = g("b*L - 7");
        assert_eq!(GrothElem::one() * x.clone(), x);
        let y = g("L-1").pow(2) * g("b");
        assert_eq!(y.to_string(), "L^2*b - 2*L*b + b");
    }

    #[test]
    fn substitution_examples() {
        let x = g("b^2*c");
        assert_eq!(x.substitute_relations(&BTreeMap::new()).unwrap(), x);
        let rel = BTreeMap::from([(sym("b"), g("L+1"))]);
        assert_eq!(g("b^2").substitute_relations(&rel).unwrap(), g("L^2 + 2*L + 1"));
        // chained relations expand transitively
        let rel = BTreeMap::from([(sym("a"), g("b*L")), (sym("b"), g("L+1"))]);
        assert_eq!(g("a").substitute_relations(&rel).unwrap(), g("L^2 + L"));
    }

    #[test]
    fn substitution_rejects_cycles() {
        let rel = BTreeMap::from([(sym("a"), g("b + 1")), (sym("b"), g("L*a"))]);
        match g("a").substitute_relations(&rel) {
            Err(GrothError::RelationCycle(c)) => assert!(c.len() >= 3, "{c:?}"),
            other => panic!("expected cycle, got {other:?}"),
        }
        let selfloop = BTreeMap::from([(sym("a"), g("a*L"))]);
        assert!(g("1").substitute_relations(&selfloop).is_err());
    }

    #[test]
    fn specialize_euler() {
        let chi = Specialization::euler_characteristic([(sym("b"), 0)]);
        let val = |x: &str| chi.apply_constant(&g(x)).unwrap().unwrap();
        assert_eq!(val("L"), BigRational::one());
        assert_eq!(val("L^2+L+1"), BigRational::from_integer(3.into()));
        assert_eq!(val("(L-1)*b"), BigRational::zero());
        assert_eq!(val("L^-3*5"), BigRational::from_integer(5.into()));
    }

    #[test]
    fn specialize_errors() {
        let chi = Specialization::euler_characteristic([]);
        assert_eq!(
            g("b*L").specialize(&chi),
            Err(GrothError::UnmappedSymbol("b".into()))
        );
        let poly_l = Specialization {
            image_of_l: QPoly::monomial(BigRational::one(), 1),
            image_of_symbol: BTreeMap::new(),
        };
        assert!(matches!(g("L^-1").specialize(&poly_l), Err(GrothError::NonInvertible(_))));
        assert_eq!(g("L^2").specialize(&poly_l).unwrap().to_string(), "t^2");
    }

    #[test]
    fn virtual_dimension_examples() {
        let dims = BTreeMap::from([(sym("b"), 1)]);
        assert_eq!(g("L^3").virtual_dimension(&dims).unwrap(), Some(3));
        assert_eq!(GrothElem::zero().virtual_dimension(&dims).unwrap(), None);
        assert_eq!(g("L*b + L^2").virtual_dimension(&dims).unwrap(), Some(2));
        assert!(g("c").virtual_dimension(&dims).is_err());
    }

    #[test]
    fn canonical_printing() {
        assert_eq!(g("b - 6").to_string(), "b - 6");
        assert_eq!(g("1 + c^2 + b*c + b^2").to_string(), "b^2 + b*c + c^2 + 1");
        assert_eq!(g("-L^-1").to_string(), "-L^-1");
        assert_eq!(g("L^(-2)*3").to_string(), "3*L^-2");
        assert_eq!(GrothElem::zero().to_string(), "0");
    }

    #[test]
    fn parse_errors() {
        assert!("L +".parse::<GrothElem>().is_err());
        assert!("2**L".parse::<GrothElem>().is_err());
        assert!("b^-1".parse::<GrothElem>().is_err());
        assert!("(L".parse::<GrothElem>().is_err());
        assert!(ClassSymbol::new("L").is_err());
        assert!(ClassSymbol::new("9a").is_err());
    }

    pub(crate) fn arb_elem() -> impl Strategy<Value = GrothElem> {
        let mono = (-3i64..4, prop::collection::vec((0usize..3, 1u32..3), 0..3), -5i64..6);
        prop::collection::vec(mono, 0..5).prop_map(|terms| {
            let names = ["a", "b", "c"];
            let mut out = GrothElem::zero();
            for (l, syms, c) in terms {
                let mut t = GrothElem::l_pow(l).scale(&BigInt::from(c));
                for (i, e) in syms {
                    t = &t * &GrothElem::sym(names[i]).pow(e);
                }
                out += &t;
            }
            out
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn ring_axioms(x in arb_elem(), y in arb_elem(), z in arb_elem()) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x - &x, GrothElem::zero());
        }

        #[test]
        fn canonical_round_trip(x in arb_elem()) {
            let s = x.to_string();
            let back: GrothElem = s.parse().unwrap();
            prop_assert_eq!(back.to_string(), s);
            prop_assert_eq!(back, x);
        }

        #[test]
        fn substitution_is_a_ring_map(x in arb_elem(), y in arb_elem(), img in arb_elem()) {
            let mut img = img;
            img = img.substitute_relations(&BTreeMap::from([(sym("a"), GrothElem::l())])).unwrap();
            let rel = BTreeMap::from([(sym("a"), img)]);
            let s = |e: &GrothElem| e.substitute_relations(&rel).unwrap();
            prop_assert_eq!(s(&(&x + &y)), &s(&x) + &s(&y));
            prop_assert_eq!(s(&(&x * &y)), &s(&x) * &s(&y));
        }
    }
}
