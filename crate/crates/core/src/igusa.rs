//! Brute-force side of the p-adic picture: counts `N_m` of solutions of
//! `f = 0` modulo `p^{m+1}`, the truncated Poincaré series, rational fitting,
//! the Igusa zeta function of a monomial, and the relation
//! `P(p^{-n} T) = p^n (1 - Z(T)) / (1 - T)` with `T = p^{-s}`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::poly::{QPoly, ZPoly};

/// Default number of candidate evaluations a count may perform.
pub const DEFAULT_BUDGET: u64 = 100_000_000;
/// Largest `p^{n(m+1)}` the flat enumerator accepts.
pub const FLAT_LIMIT: u64 = 100_000_000;

const VARS: [char; 4] = ['x', 'y', 'z', 'w'];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IgusaError {
    #[error("polynomial parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("polynomial is constant")]
    Constant,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("counting up to m = {m} needs {needed} more evaluations, budget is {budget}{}",
            match .suggested_m { Some(s) => format!("; largest feasible M is {s}"), None => String::new() })]
    Budget { m: u32, needed: u128, budget: u64, suggested_m: Option<u32> },
    #[error("flat enumeration of p^(n(m+1)) = {size} points exceeds {limit}")]
    FlatGuard { size: String, limit: u64 },
    #[error("modulus p^{0} does not fit the 62-bit arithmetic used for counting")]
    Modulus(u32),
    #[error("fitting needs at least 7 terms (M >= 6), got {0}")]
    TooShort(usize),
    #[error("closed form disagrees with the truncated sum at order {0}")]
    SelfCheck(usize),
}

/// Integer polynomial in up to four variables `x, y, z, w`. The affine space
/// it lives in is spanned by the variables that actually occur.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    vars: Vec<char>,
    /// exponent vector (indexed like `vars`) to nonzero coefficient
    terms: BTreeMap<Vec<u32>, BigInt>,
}

type Dense = BTreeMap<[u32; 4], BigInt>;

fn add_into(acc: &mut Dense, k: [u32; 4], c: BigInt) {
    let e = acc.entry(k).or_insert_with(BigInt::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&k);
    }
}

fn mul_dense(a: &Dense, b: &Dense) -> Dense {
    let mut out = Dense::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            let k = [ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2], ka[3] + kb[3]];
            add_into(&mut out, k, ca * cb);
        }
    }
    out
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    vars: &'a [char],
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, IgusaError> {
        Err(IgusaError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.s.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<BigInt, IgusaError> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        match text.parse() {
            Ok(n) => Ok(n),
            Err(_) => {
                self.pos = start;
                self.err("expected a number")
            }
        }
    }

    fn expr(&mut self) -> Result<Dense, IgusaError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    for (k, c) in self.term()? {
                        add_into(&mut acc, k, c);
                    }
                }
                Some(b'-') => {
                    self.pos += 1;
                    for (k, c) in self.term()? {
                        add_into(&mut acc, k, -c);
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Dense, IgusaError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = mul_dense(&acc, &self.unary()?);
                }
                // juxtaposition such as `3x` or `x(y+1)`
                Some(c) if c.is_ascii_digit() || c == b'(' || self.vars.contains(&(c as char)) => {
                    acc = mul_dense(&acc, &self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Dense, IgusaError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.into_iter().map(|(k, c)| (k, -c)).collect())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Dense, IgusaError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.peek();
            let e = self.number()?;
            let e = e.to_u32().filter(|&e| e <= 1000).map_or_else(|| self.err("exponent too large"), Ok)?;
            let mut out = Dense::from([([0; 4], BigInt::one())]);
            for _ in 0..e {
                out = mul_dense(&out, &base);
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Dense, IgusaError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                let mut out = Dense::new();
                add_into(&mut out, [0; 4], n);
                Ok(out)
            }
            Some(c) => match self.vars.iter().position(|&v| v as u8 == c) {
                Some(i) => {
                    self.pos += 1;
                    let mut k = [0; 4];
                    k[i] = 1;
                    Ok(Dense::from([(k, BigInt::one())]))
                }
                None => self.err(format!("unexpected `{}`", c as char)),
            },
            None => self.err("unexpected end of input"),
        }
    }
}

impl FromStr for IntPoly {
    type Err = IgusaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { s: s.as_bytes(), pos: 0, vars: &VARS };
        let dense = p.expr()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        let used: Vec<usize> = (0..4).filter(|&i| dense.keys().any(|k| k[i] > 0)).collect();
        if used.is_empty() {
            return Err(IgusaError::Constant);
        }
        let vars = used.iter().map(|&i| VARS[i]).collect();
        let terms = dense.into_iter().map(|(k, c)| (used.iter().map(|&i| k[i]).collect(), c)).collect();
        Ok(IntPoly { vars, terms })
    }
}

/// Integer polynomial in the single variable `var`, e.g. `"t^2 - t + 1"`.
pub fn parse_univariate(text: &str, var: char) -> Result<ZPoly, IgusaError> {
    let vars = [var];
    let mut p = Parser { s: text.as_bytes(), pos: 0, vars: &vars };
    let dense = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    let deg = dense.keys().map(|k| k[0] as usize).max().unwrap_or(0);
    let mut coeffs = vec![BigInt::zero(); deg + 1];
    for (k, c) in dense {
        coeffs[k[0] as usize] = c;
    }
    Ok(ZPoly::new(coeffs))
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // highest total degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (i, (k, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono: Vec<String> = k
                .iter()
                .zip(&self.vars)
                .filter(|(e, _)| **e > 0)
                .map(|(&e, v)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
                .collect();
            let a = c.abs();
            match (mono.is_empty(), a.is_one()) {
                (true, _) => write!(f, "{a}")?,
                (false, true) => f.write_str(&mono.join("*"))?,
                (false, false) => write!(f, "{a}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl IntPoly {
    /// Number of variables of the ambient affine space.
    pub fn n_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[char] {
        &self.vars
    }

    /// `f(a) mod q`, coordinates already reduced.
    fn eval_mod(&self, reduced: &[(u128, Vec<u32>)], a: &[u64], q: u128) -> u128 {
        let mut acc = 0u128;
        for (c, k) in reduced {
            let mut t = *c;
            for (&ai, &e) in a.iter().zip(k) {
                for _ in 0..e {
                    t = t * u128::from(ai) % q;
                }
            }
            acc = (acc + t) % q;
        }
        acc
    }

    fn reduced_terms(&self, q: u128) -> Vec<(u128, Vec<u32>)> {
        let qb = BigInt::from(q);
        self.terms
            .iter()
            .map(|(k, c)| {
                let r = ((c % &qb) + &qb) % &qb;
                (r.to_u128().expect("reduced below q"), k.clone())
            })
            .collect()
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u64) -> Result<(), IgusaError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(IgusaError::NotPrime(p))
    }
}

/// `p^k` when it stays below `2^62`.
fn modulus(p: u64, k: u32) -> Result<u128, IgusaError> {
    let q = u128::from(p).checked_pow(k).ok_or(IgusaError::Modulus(k))?;
    if q >= 1 << 62 {
        return Err(IgusaError::Modulus(k));
    }
    Ok(q)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountSeries {
    pub p: u64,
    /// `N_0, ..., N_M`
    pub values: Vec<BigInt>,
    /// Candidate evaluations spent.
    pub work: u64,
}

/// `N_0..=N_max_m` by lifting: every solution mod `p^{m+1}` is tried with all
/// `p^n` lifts mod `p^{m+2}`. Refuses before a level whose work would exceed
/// `budget`.
pub fn poincare_truncated(f: &IntPoly, p: u64, max_m: u32, budget: u64) -> Result<CountSeries, IgusaError> {
    check_prime(p)?;
    let n = f.n_vars();
    let pn = u128::from(p).checked_pow(n as u32).expect("at most four variables");
    modulus(p, max_m + 1)?;
    let mut spent: u128 = 0;
    let refuse = |m: u32, needed: u128| IgusaError::Budget {
        m,
        needed,
        budget,
        suggested_m: m.checked_sub(1),
    };
    if pn > u128::from(budget) {
        return Err(refuse(0, pn));
    }
    // level 0: all residues mod p
    let q0 = modulus(p, 1)?;
    let red = f.reduced_terms(q0);
    let mut level: Vec<u64> = Vec::new();
    let mut point = vec![0u64; n];
    for idx in 0..pn {
        let mut rest = idx;
        for slot in point.iter_mut() {
            *slot = (rest % u128::from(p)) as u64;
            rest /= u128::from(p);
        }
        if f.eval_mod(&red, &point, q0) == 0 {
            level.extend_from_slice(&point);
        }
    }
    spent += pn;
    let mut values = vec![BigInt::from(level.len() / n)];
    for m in 1..=max_m {
        let count = (level.len() / n) as u128;
        let needed = count * pn;
        if spent + needed > u128::from(budget) {
            return Err(refuse(m, needed));
        }
        spent += needed;
        let step = modulus(p, m)? as u64;
        let q = modulus(p, m + 1)?;
        let red = f.reduced_terms(q);
        let mut next = Vec::new();
        let mut cand = vec![0u64; n];
        for base in level.chunks_exact(n) {
            for idx in 0..pn {
                let mut rest = idx;
                for (slot, &b) in cand.iter_mut().zip(base) {
                    *slot = b + step * (rest % u128::from(p)) as u64;
                    rest /= u128::from(p);
                }
                if f.eval_mod(&red, &cand, q) == 0 {
                    next.extend_from_slice(&cand);
                }
            }
        }
        level = next;
        values.push(BigInt::from(level.len() / n));
    }
    Ok(CountSeries { p, values, work: spent as u64 })
}

/// `N_m` alone; same lifting search as [`poincare_truncated`].
pub fn count_solutions(f: &IntPoly, p: u64, m: u32, budget: u64) -> Result<BigInt, IgusaError> {
    Ok(poincare_truncated(f, p, m, budget)?.values.pop().expect("m + 1 values"))
}

/// Exhaustive enumeration of `(Z/p^{m+1})^n`, for cross-checking at small sizes.
pub fn count_solutions_flat(f: &IntPoly, p: u64, m: u32) -> Result<u64, IgusaError> {
    check_prime(p)?;
    let n = f.n_vars() as u32;
    let size = BigInt::from(p).pow(n * (m + 1));
    if size > BigInt::from(FLAT_LIMIT) {
        return Err(IgusaError::FlatGuard { size: size.to_string(), limit: FLAT_LIMIT });
    }
    let q = modulus(p, m + 1)?;
    let red = f.reduced_terms(q);
    let size = size.to_u64().expect("below the flat limit");
    let mut point = vec![0u64; n as usize];
    let mut hits = 0;
    for idx in 0..size {
        let mut rest = idx;
        for slot in point.iter_mut() {
            *slot = rest % q as u64;
            rest /= q as u64;
        }
        if f.eval_mod(&red, &point, q) == 0 {
            hits += 1;
        }
    }
    Ok(hits)
}

/// `A(T) / B(T)` in lowest terms with `B(0) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFit {
    pub numerator: QPoly,
    pub denominator: QPoly,
}

impl RationalFit {
    pub fn expand(&self, n: usize) -> Vec<BigRational> {
        self.numerator.series_div(&self.denominator, n).expect("B(0) = 1")
    }
}

impl fmt::Display for RationalFit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.numerator.render_ascending("T");
        let num = if self.numerator.coeffs().len() > 1 { format!("({num})") } else { num };
        if self.denominator == QPoly::one() {
            f.write_str(&num)
        } else {
            write!(f, "{num}/({})", self.denominator.render_ascending("T"))
        }
    }
}

/// Shortest linear recurrence over the rationals (Berlekamp-Massey), accepted
/// only when its order is at most `floor(M/2) - 1` and the resulting rational
/// function reproduces every supplied term. `None` means no fit.
pub fn fit_rational(values: &[BigInt]) -> Result<Option<RationalFit>, IgusaError> {
    if values.len() < 7 {
        return Err(IgusaError::TooShort(values.len()));
    }
    let m = values.len() - 1;
    let s: Vec<BigRational> = values.iter().map(|v| BigRational::from_integer(v.clone())).collect();
    let mut c = vec![BigRational::one()];
    let mut b = vec![BigRational::one()];
    let mut order = 0usize;
    let mut shift = 1usize;
    let mut last_disc = BigRational::one();
    for k in 0..s.len() {
        let mut disc = s[k].clone();
        for i in 1..=order.min(c.len() - 1) {
            disc += &c[i] * &s[k - i];
        }
        if disc.is_zero() {
            shift += 1;
            continue;
        }
        let coef = &disc / &last_disc;
        let prev = c.clone();
        if c.len() < b.len() + shift {
            c.resize(b.len() + shift, BigRational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + shift] -= &coef * bi;
        }
        if 2 * order <= k {
            order = k + 1 - order;
            b = prev;
            last_disc = disc;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    if order > (m / 2).saturating_sub(1) {
        return Ok(None);
    }
    c.resize(order + 1, BigRational::zero());
    let den = QPoly::new(c);
    let prod: Vec<BigRational> = (0..order)
        .map(|k| (0..=k).map(|i| den.coeff(i) * &s[k - i]).fold(BigRational::zero(), |a, x| a + x))
        .collect();
    let num = QPoly::new(prod);
    let g = num.gcd(&den);
    let (mut num, mut den) = if g.degree().unwrap_or(0) > 0 {
        (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
    } else {
        (num, den)
    };
    let d0 = den.coeff(0);
    if d0.is_zero() {
        return Ok(None);
    }
    let inv = BigRational::one() / d0;
    num = num.scale(&inv);
    den = den.scale(&inv);
    let fit = RationalFit { numerator: num, denominator: den };
    if fit.expand(s.len()) != s {
        return Ok(None);
    }
    Ok(Some(fit))
}

/// `Z(s) = (1 - 1/p) / (1 - p^{-1} u^k)` for `f = x^k` in one variable, `u = p^{-s}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialZeta {
    pub k: u32,
    pub p: u64,
    pub numerator: QPoly,
    pub denominator: QPoly,
}

/// Terms of the truncated sum used to check [`zeta_monomial`].
pub const MONOMIAL_CHECK_TERMS: u32 = 50;

pub fn zeta_monomial(k: u32, p: u64) -> Result<MonomialZeta, IgusaError> {
    assert!(k >= 1, "monomial degree must be positive");
    check_prime(p)?;
    let inv_p = BigRational::new(BigInt::one(), BigInt::from(p));
    let numerator = QPoly::constant(BigRational::one() - &inv_p);
    let denominator = &QPoly::one() - &QPoly::monomial(inv_p.clone(), k as usize);
    let z = MonomialZeta { k, p, numerator, denominator };
    // sum_{j <= J} u^{kj} (p^{-j} - p^{-j-1}): the set where ord_p x = j has measure p^{-j}(1 - 1/p)
    let len = (k * MONOMIAL_CHECK_TERMS) as usize + 1;
    let mut truncated = vec![BigRational::zero(); len];
    let mut pj = BigRational::one();
    for j in 0..=MONOMIAL_CHECK_TERMS as usize {
        truncated[k as usize * j] = &pj - &pj * &inv_p;
        pj *= &inv_p;
    }
    let series = z.series(len);
    if let Some(i) = (0..len).find(|&i| series[i] != truncated[i]) {
        return Err(IgusaError::SelfCheck(i));
    }
    Ok(z)
}

impl MonomialZeta {
    /// Coefficients of `u^0..u^{n-1}`.
    pub fn series(&self, n: usize) -> Vec<BigRational> {
        self.numerator.series_div(&self.denominator, n).expect("constant term 1")
    }

    pub fn eval(&self, u: &BigRational) -> BigRational {
        self.numerator.eval(u) / self.denominator.eval(u)
    }
}

impl fmt::Display for MonomialZeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) / ({})",
            self.numerator.render_ascending("u"),
            self.denominator.render_ascending("u")
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoinZetaReport {
    pub k: u32,
    pub p: u64,
    pub order: u32,
    /// `N_m p^{-m}`: coefficients of `P(p^{-1} T)` from counting.
    pub lhs: Vec<String>,
    /// Coefficients of `p (1 - Z(T)) / (1 - T)`.
    pub rhs: Vec<String>,
    pub first_mismatch: Option<u32>,
    pub pass: bool,
}

/// Compare both sides of `P(p^{-1} T) = p (1 - Z(T)) / (1 - T)` for `f = x^k`
/// through `T^order`. `perturb` adds 1 to the coefficient of `T^j` in `Z`
/// (used to confirm the check can fail).
pub fn check_poinzeta(
    k: u32,
    p: u64,
    order: u32,
    perturb: Option<u32>,
    budget: u64,
) -> Result<PoinZetaReport, IgusaError> {
    let f: IntPoly = if k == 1 { "x".parse()? } else { format!("x^{k}").parse()? };
    let counts = poincare_truncated(&f, p, order, budget)?;
    let len = order as usize + 1;
    let pb = BigInt::from(p);
    let lhs: Vec<BigRational> = counts
        .values
        .iter()
        .enumerate()
        .map(|(m, n)| BigRational::new(n.clone(), pb.pow(m as u32)))
        .collect();
    let mut z = zeta_monomial(k, p)?.series(len);
    if let Some(j) = perturb {
        if let Some(c) = z.get_mut(j as usize) {
            *c += BigRational::one();
        }
    }
    // p (1 - Z) / (1 - T): partial sums of p * (delta_0 - z_i)
    let pq = BigRational::from_integer(pb);
    let mut rhs = Vec::with_capacity(len);
    let mut acc = BigRational::zero();
    for (i, zi) in z.iter().enumerate() {
        let one_minus = if i == 0 { BigRational::one() - zi } else { -zi.clone() };
        acc += &pq * one_minus;
        rhs.push(acc.clone());
    }
    let first_mismatch = (0..len).find(|&i| lhs[i] != rhs[i]).map(|i| i as u32);
    Ok(PoinZetaReport {
        k,
        p,
        order,
        lhs: lhs.iter().map(ToString::to_string).collect(),
        rhs: rhs.iter().map(ToString::to_string).collect(),
        first_mismatch,
        pass: first_mismatch.is_none(),
    })
}

/// `N_{m+1} = p^{n-1} N_m` for every consecutive pair.
pub fn smooth_recurrence_holds(series: &CountSeries, n_vars: usize) -> bool {
    let factor = BigInt::from(series.p).pow(n_vars as u32 - 1);
    series.values.windows(2).all(|w| w[1] == &w[0] * &factor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(poly("x^2 + y^3 - 7").to_string(), "y^3 + x^2 - 7");
        assert_eq!(poly("(x+1)^2 - 2x - 1").to_string(), "x^2");
        assert_eq!(poly("3*x*y^2 - x").n_vars(), 2);
        assert_eq!(poly("z + w").vars(), &['z', 'w']);
        assert_eq!("7".parse::<IntPoly>(), Err(IgusaError::Constant));
        assert_eq!("x - x".parse::<IntPoly>(), Err(IgusaError::Constant));
        assert!(matches!("x + q".parse::<IntPoly>(), Err(IgusaError::Parse { pos: 4, .. })));
        assert!("(x".parse::<IntPoly>().is_err());
    }

    #[test]
    fn univariate_parse() {
        assert_eq!(parse_univariate("t^2 - t + 1", 't').unwrap().to_string(), "t^2 - t + 1");
        assert_eq!(parse_univariate("(t+1)^2", 't').unwrap().to_string(), "t^2 + 2*t + 1");
        assert!(parse_univariate("x + 1", 't').is_err());
    }

    #[test]
    fn count_examples() {
        for p in [2, 3, 5, 7] {
            for m in 0..4 {
                assert_eq!(count_solutions(&poly("x"), p, m, DEFAULT_BUDGET).unwrap(), BigInt::one());
            }
        }
        assert_eq!(count_solutions(&poly("x^2"), 3, 1, DEFAULT_BUDGET).unwrap(), BigInt::from(3));
        assert_eq!(count_solutions_flat(&poly("x^2"), 3, 1).unwrap(), 3);
        assert_eq!(count_solutions(&poly("x + y^2"), 5, 2, DEFAULT_BUDGET).unwrap(), BigInt::from(125));
        assert_eq!(count_solutions(&poly("x"), 4, 1, DEFAULT_BUDGET), Err(IgusaError::NotPrime(4)));
    }

    #[test]
    fn poincare_examples() {
        let s = poincare_truncated(&poly("x"), 2, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.values, ints(&[1, 1, 1, 1]));
        let s = poincare_truncated(&poly("x^2"), 3, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.values, ints(&[1, 3, 3, 9]));
        let s = poincare_truncated(&poly("x + y^2"), 5, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.values, ints(&[5, 25, 125]));
    }

    #[test]
    fn budget_refusal_suggests_smaller_m() {
        let f = poly("x + y^2");
        let full = poincare_truncated(&f, 5, 4, DEFAULT_BUDGET).unwrap();
        let tight = full.work - 1;
        match poincare_truncated(&f, 5, 4, tight) {
            Err(IgusaError::Budget { m: 4, suggested_m: Some(3), .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(poincare_truncated(&f, 5, 3, tight).is_ok());
        assert!(matches!(poincare_truncated(&poly("x*y*z*w"), 7, 1, 100), Err(IgusaError::Budget { m: 0, .. })));
        assert!(matches!(count_solutions_flat(&f, 5, 8), Err(IgusaError::FlatGuard { .. })));
    }

    #[test]
    fn fit_examples() {
        let fit = fit_rational(&ints(&[1; 7])).unwrap().unwrap();
        assert_eq!(fit.to_string(), "1/(1 - T)");
        let s = poincare_truncated(&poly("x + y^2"), 5, 8, DEFAULT_BUDGET).unwrap();
        assert_eq!(fit_rational(&s.values).unwrap().unwrap().to_string(), "5/(1 - 5*T)");
        let s = poincare_truncated(&poly("x^2"), 3, 10, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.values, ints(&[1, 3, 3, 9, 9, 27, 27, 81, 81, 243, 243]));
        assert_eq!(fit_rational(&s.values).unwrap().unwrap().to_string(), "(1 + 3*T)/(1 - 3*T^2)");
        assert_eq!(fit_rational(&ints(&[1, 2])), Err(IgusaError::TooShort(2)));
        // 1, 2, 4, 8, ... then a break: the order needed exceeds the guard
        assert_eq!(fit_rational(&ints(&[1, 2, 4, 8, 16, 32, 64, 0])).unwrap(), None);
    }

    #[test]
    fn monomial_zeta_examples() {
        let z = zeta_monomial(1, 2).unwrap();
        assert_eq!(z.to_string(), "(1/2) / (1 - 1/2*u)");
        let z = zeta_monomial(2, 3).unwrap();
        assert_eq!(z.to_string(), "(2/3) / (1 - 1/3*u^2)");
        for p in [2, 3, 5, 7] {
            assert_eq!(zeta_monomial(3, p).unwrap().eval(&BigRational::one()), BigRational::one());
        }
        for k in 1..=5 {
            for p in [2, 3, 5, 7] {
                zeta_monomial(k, p).unwrap();
            }
        }
    }

    #[test]
    fn poinzeta_examples() {
        assert!(check_poinzeta(1, 2, 10, None, DEFAULT_BUDGET).unwrap().pass);
        assert!(check_poinzeta(2, 3, 10, None, DEFAULT_BUDGET).unwrap().pass);
        let bad = check_poinzeta(2, 3, 10, Some(4), DEFAULT_BUDGET).unwrap();
        assert!(!bad.pass);
        assert_eq!(bad.first_mismatch, Some(4));
    }

    #[test]
    fn lifting_agrees_with_flat() {
        for f in ["x^2 - y^2", "x*y - 1", "x^3 + y^3 + 1", "x^2 + y^2 + z^2", "2*x - 6"] {
            let f = poly(f);
            for p in [2u64, 3, 5] {
                for m in 0..4u32 {
                    let size = (p as f64).powi((f.n_vars() as u32 * (m + 1)) as i32);
                    if size > 1e5 {
                        continue;
                    }
                    let lifted = count_solutions(&f, p, m, DEFAULT_BUDGET).unwrap();
                    assert_eq!(lifted, BigInt::from(count_solutions_flat(&f, p, m).unwrap()), "{f} p={p} m={m}");
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn fit_round_trips(num in proptest::collection::vec(-20i64..20, 1..3),
                           den in proptest::collection::vec(-5i64..6, 1..3)) {
            let mut d = vec![1i64];
            d.extend(den);
            let qn = QPoly::new(num.iter().map(|&x| BigRational::from_integer(x.into())).collect());
            let qd = QPoly::new(d.iter().map(|&x| BigRational::from_integer(x.into())).collect());
            let terms: Vec<BigInt> = qn.series_div(&qd, 12).unwrap().into_iter().map(|c| c.to_integer()).collect();
            if let Some(fit) = fit_rational(&terms).unwrap() {
                let back: Vec<BigInt> = fit.expand(12).into_iter().map(|c| c.to_integer()).collect();
                prop_assert_eq!(back, terms);
            } else {
                prop_assert!(false, "no fit for a degree <= 2 rational function");
            }
        }

        #[test]
        fn counts_respect_bounds(a in -3i64..4, b in -3i64..4, c in -3i64..4, p in prop::sample::select(vec![2u64, 3, 5])) {
            let f: IntPoly = match format!("{a}*x^2 + {b}*x*y + {c}*y + 1").parse() {
                Ok(f) => f,
                Err(_) => return Ok(()),
            };
            let s = poincare_truncated(&f, p, 3, DEFAULT_BUDGET).unwrap();
            let pn = BigInt::from(p).pow(f.n_vars() as u32);
            for (m, w) in s.values.windows(2).enumerate() {
                prop_assert!(w[1] <= &w[0] * &pn, "m = {}", m);
            }
            for (m, v) in s.values.iter().enumerate() {
                prop_assert!(*v <= pn.pow(m as u32 + 1));
            }
        }
    }
}
