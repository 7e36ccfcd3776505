//! Rational generating functions in `T` over the Grothendieck model.
//!
//! A [`ZetaRational`] is a polynomial numerator in `T` (coefficients in
//! [`GrothElem`]) over a product of factors `(1 - L^a T^b)^m` with `b >= 1`.
//! Under `T = L^{-s}` the factor `(1 - L^a T^b)` vanishes at `s = a/b`, which
//! is how pole locations are read off after [`ZetaRational::normalize`].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::grothendieck::GrothElem;
use crate::sncd::SncdModel;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZetaError {
    #[error("denominator factor (1 - L^{a} T^{b}) needs b >= 1 and multiplicity >= 1")]
    InvalidFactor { a: i64, b: u32 },
    #[error("residue {r} is not in 0..{e}")]
    InvalidResidue { r: u32, e: u32 },
    #[error("exponent of L is not an integer: {0}")]
    NonIntegralExponent(String),
}

/// `(1 - L^a T^b)^multiplicity`
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DenomFactor {
    pub a: i64,
    pub b: u32,
    pub multiplicity: u32,
}

impl DenomFactor {
    pub fn new(a: i64, b: u32) -> Self {
        Self { a, b, multiplicity: 1 }
    }

    /// Pole location `a/b` of this factor under `T = L^{-s}`.
    pub fn ratio(&self) -> BigRational {
        BigRational::new(self.a.into(), self.b.into())
    }
}

/// Key ordering factors by `(b, a)`.
type FactorKey = (u32, i64);

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZetaRational {
    numerator: Vec<GrothElem>,
    denominator: BTreeMap<FactorKey, u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pole {
    #[serde(rename = "s", serialize_with = "crate::ser_rational")]
    pub location: BigRational,
    pub order: u32,
}

/// Pole locations with orders, sorted by decreasing location.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PoleReport {
    pub entries: Vec<Pole>,
    /// Set when the numerator involves class symbols: the poles are certified
    /// only relative to the free-symbol model.
    pub symbolic_caveat: bool,
}

impl PoleReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(&self.entries).expect("poles serialize")
    }

    pub fn largest(&self) -> Option<&Pole> {
        self.entries.first()
    }
}

impl ZetaRational {
    pub fn new(
        numerator: Vec<GrothElem>,
        factors: impl IntoIterator<Item = DenomFactor>,
    ) -> Result<Self, ZetaError> {
        let mut z = Self::polynomial(numerator);
        for f in factors {
            if f.b == 0 || f.multiplicity == 0 {
                return Err(ZetaError::InvalidFactor { a: f.a, b: f.b });
            }
            *z.denominator.entry((f.b, f.a)).or_insert(0) += f.multiplicity;
        }
        Ok(z)
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn polynomial(mut numerator: Vec<GrothElem>) -> Self {
        while numerator.last().is_some_and(|c| c.is_zero()) {
            numerator.pop();
        }
        Self { numerator, denominator: BTreeMap::new() }
    }

    pub fn numerator(&self) -> &[GrothElem] {
        &self.numerator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    pub fn factors(&self) -> Vec<DenomFactor> {
        self.denominator
            .iter()
            .map(|(&(b, a), &m)| DenomFactor { a, b, multiplicity: m })
            .collect()
    }

    pub fn scale(&self, c: &GrothElem) -> Self {
        let mut z = self.clone();
        z.numerator = z.numerator.iter().map(|x| x * c).collect();
        z.trim();
        z
    }

    fn trim(&mut self) {
        while self.numerator.last().is_some_and(|c| c.is_zero()) {
            self.numerator.pop();
        }
        if self.numerator.is_empty() {
            self.denominator.clear();
        }
    }

    /// Numerator multiplied by the factors of `target` that exceed our own.
    fn lift_numerator(&self, target: &BTreeMap<FactorKey, u32>) -> Vec<GrothElem> {
        let mut num = self.numerator.clone();
        for (&(b, a), &m) in target {
            let have = self.denominator.get(&(b, a)).copied().unwrap_or(0);
            for _ in have..m {
                num = mul_binomial(&num, a, b);
            }
        }
        num
    }

    /// Sum over the least common multiple of the factor multisets.
    pub fn add(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let mut den = self.denominator.clone();
        for (k, &m) in &other.denominator {
            let e = den.entry(*k).or_insert(0);
            *e = (*e).max(m);
        }
        let x = self.lift_numerator(&den);
        let y = other.lift_numerator(&den);
        let n = x.len().max(y.len());
        let num = (0..n)
            .map(|k| match (x.get(k), y.get(k)) {
                (Some(p), Some(q)) => p + q,
                (Some(p), None) | (None, Some(p)) => p.clone(),
                (None, None) => GrothElem::zero(),
            })
            .collect();
        let mut z = Self { numerator: num, denominator: den };
        z.trim();
        z
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut num = vec![GrothElem::zero(); self.numerator.len() + other.numerator.len() - 1];
        for (i, a) in self.numerator.iter().enumerate() {
            for (j, b) in other.numerator.iter().enumerate() {
                num[i + j] += &(a * b);
            }
        }
        let mut den = self.denominator.clone();
        for (k, m) in &other.denominator {
            *den.entry(*k).or_insert(0) += m;
        }
        let mut z = Self { numerator: num, denominator: den };
        z.trim();
        z
    }

    /// Coefficients of `T^0 .. T^n` of the `T`-adic expansion.
    pub fn coefficients(&self, n: usize) -> Vec<GrothElem> {
        let mut c: Vec<GrothElem> = (0..=n)
            .map(|k| self.numerator.get(k).cloned().unwrap_or_default())
            .collect();
        // dividing by (1 - L^a T^b) is the running recurrence c_k += L^a c_{k-b}
        for (&(b, a), &m) in &self.denominator {
            let b = b as usize;
            for _ in 0..m {
                for k in b..=n {
                    let prev = c[k - b].shift_l(a);
                    c[k] += &prev;
                }
            }
        }
        c
    }

    /// Coefficients of `T^1 .. T^{d_max}`.
    pub fn series_expand(&self, d_max: usize) -> Vec<GrothElem> {
        let mut c = self.coefficients(d_max);
        c.remove(0);
        c
    }

    /// Divide out every denominator factor that divides the numerator
    /// exactly, and halve `(1 - X^2)` factors whose `(1 + X)` part divides the
    /// numerator. Repeats until no factor is removable.
    pub fn normalize(&self) -> Self {
        let mut z = self.clone();
        z.trim();
        loop {
            let mut changed = false;
            let keys: Vec<FactorKey> = z.denominator.keys().copied().collect();
            for (b, a) in keys {
                while z.denominator.get(&(b, a)).copied().unwrap_or(0) > 0 {
                    match divide_binomial(&z.numerator, a, b, false) {
                        Some(q) => {
                            z.numerator = q;
                            decrement(&mut z.denominator, (b, a));
                            changed = true;
                        }
                        None => break,
                    }
                }
            }
            let keys: Vec<FactorKey> = z.denominator.keys().copied().collect();
            for (b, a) in keys {
                if b % 2 != 0 || a % 2 != 0 {
                    continue;
                }
                let (hb, ha) = (b / 2, a / 2);
                while z.denominator.get(&(b, a)).copied().unwrap_or(0) > 0 {
                    match divide_binomial(&z.numerator, ha, hb, true) {
                        Some(q) => {
                            z.numerator = q;
                            decrement(&mut z.denominator, (b, a));
                            *z.denominator.entry((hb, ha)).or_insert(0) += 1;
                            changed = true;
                        }
                        None => break,
                    }
                }
            }
            if !changed {
                break;
            }
        }
        z.trim();
        z
    }

    /// Poles of `Z(L^{-s})` read from the denominator factors as they stand;
    /// call on a normalized value. The order at `s0` is the total multiplicity
    /// of factors with `a/b = s0`.
    pub fn poles(&self) -> PoleReport {
        let mut by_loc: BTreeMap<BigRational, u32> = BTreeMap::new();
        if !self.is_zero() {
            for f in self.factors() {
                *by_loc.entry(f.ratio()).or_insert(0) += f.multiplicity;
            }
        }
        PoleReport {
            entries: by_loc
                .into_iter()
                .rev()
                .map(|(location, order)| Pole { location, order })
                .collect(),
            symbolic_caveat: self.numerator.iter().any(|c| c.has_symbols()),
        }
    }

    /// Distinct ratios `a/b` over the current denominator factors.
    pub fn candidate_locations(&self) -> Vec<BigRational> {
        let mut v: Vec<BigRational> = self.factors().iter().map(DenomFactor::ratio).collect();
        v.sort();
        v.dedup();
        v
    }

    fn render_numerator(&self) -> (String, usize) {
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.numerator.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let tpow = match k {
                0 => String::new(),
                1 => "T".to_string(),
                _ => format!("T^{k}"),
            };
            let cs = c.to_string();
            let single = c.terms().count() == 1;
            let (neg, body) = if single && cs.starts_with('-') {
                (true, cs[1..].to_string())
            } else {
                (false, cs)
            };
            let piece = if tpow.is_empty() {
                body
            } else if body == "1" {
                tpow
            } else if single {
                format!("{body}*{tpow}")
            } else {
                format!("({body})*{tpow}")
            };
            if parts.is_empty() {
                parts.push(if neg { format!("-{piece}") } else { piece });
            } else {
                parts.push(format!("{} {piece}", if neg { "-" } else { "+" }));
            }
        }
        let n = parts.len();
        (if n == 0 { "0".to_string() } else { parts.join(" ") }, n)
    }
}

impl fmt::Display for ZetaRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, nterms) = self.render_numerator();
        if self.denominator.is_empty() {
            return f.write_str(&num);
        }
        let den: Vec<String> = self
            .denominator
            .iter()
            .map(|(&(b, a), &m)| {
                let mut x = GrothElem::l_pow(a).to_string();
                let t = if b == 1 { "T".to_string() } else { format!("T^{b}") };
                x = if x == "1" { t } else { format!("{x}*{t}") };
                if m == 1 {
                    format!("(1 - {x})")
                } else {
                    format!("(1 - {x})^{m}")
                }
            })
            .collect();
        if nterms > 1 {
            write!(f, "({num}) / {}", den.join("*"))
        } else {
            write!(f, "{num} / {}", den.join("*"))
        }
    }
}

fn decrement(den: &mut BTreeMap<FactorKey, u32>, k: FactorKey) {
    if let Some(m) = den.get_mut(&k) {
        *m -= 1;
        if *m == 0 {
            den.remove(&k);
        }
    }
}

/// `num * (1 - L^a T^b)`
fn mul_binomial(num: &[GrothElem], a: i64, b: u32) -> Vec<GrothElem> {
    let b = b as usize;
    let mut out = vec![GrothElem::zero(); num.len() + b];
    for (k, c) in num.iter().enumerate() {
        out[k] += c;
        out[k + b] += &(-&c.shift_l(a));
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

/// Exact quotient of `num` by `(1 - L^a T^b)` (or `(1 + L^a T^b)` when `plus`),
/// `None` when the division leaves a remainder. The divisor has unit constant
/// and leading coefficients, so integer arithmetic suffices.
fn divide_binomial(num: &[GrothElem], a: i64, b: u32, plus: bool) -> Option<Vec<GrothElem>> {
    if num.is_empty() {
        return None;
    }
    let b = b as usize;
    let n = num.len() - 1;
    if n < b {
        return None;
    }
    let qdeg = n - b;
    let mut q: Vec<GrothElem> = Vec::with_capacity(qdeg + 1);
    for i in 0..=n {
        let mut v = num[i].clone();
        if i >= b {
            let carried = q.get(i - b).map(|x| x.shift_l(a)).unwrap_or_default();
            if plus {
                v = &v - &carried;
            } else {
                v += &carried;
            }
        }
        if i <= qdeg {
            q.push(v);
        } else if !v.is_zero() {
            return None;
        }
    }
    Some(q)
}

/// `scale * sum_{d >= 1, d = r mod e} d^t L^{(alpha/e) d + beta} T^d` in closed
/// form over `(1 - L^alpha T^e)^{t+1}`.
pub fn closed_sum(
    r: u32,
    e: u32,
    t: u32,
    alpha: i64,
    beta: &BigRational,
    scale: &GrothElem,
) -> Result<ZetaRational, ZetaError> {
    if e == 0 || r >= e {
        return Err(ZetaError::InvalidResidue { r, e });
    }
    let first = if r == 0 { e } else { r };
    let gamma = BigRational::new(BigInt::from(alpha) * BigInt::from(first), BigInt::from(e)) + beta;
    if !gamma.is_integer() {
        return Err(ZetaError::NonIntegralExponent(gamma.to_string()));
    }
    let gamma = gamma
        .to_integer()
        .to_i64()
        .ok_or_else(|| ZetaError::NonIntegralExponent(gamma.to_string()))?;
    if scale.is_zero() {
        return Ok(ZetaRational::zero());
    }
    // sum_j (first + e j)^t X^j = N(X) / (1 - X)^{t+1} with deg N <= t
    let n = t as usize + 1;
    let vals: Vec<BigInt> = (0..n)
        .map(|j| num_traits::pow(BigInt::from(first) + BigInt::from(e) * BigInt::from(j), t as usize))
        .collect();
    let binom: Vec<BigInt> = {
        let mut row = vec![BigInt::one()];
        for i in 1..=n {
            let prev = row[i - 1].clone();
            row.push(prev * BigInt::from(n - i + 1) / BigInt::from(i));
        }
        row
    };
    let mut numerator = vec![GrothElem::zero(); first as usize + e as usize * t as usize + 1];
    for k in 0..n {
        let mut nk = BigInt::zero();
        for i in 0..=k {
            let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            nk += sign * &binom[i] * &vals[k - i];
        }
        if nk.is_zero() {
            continue;
        }
        let pos = first as usize + e as usize * k;
        numerator[pos] = scale.shift_l(gamma + alpha * k as i64).scale(&nk);
    }
    ZetaRational::new(numerator, [DenomFactor { a: alpha, b: e, multiplicity: t + 1 }])
}

/// Sum over nonempty strata `J` of
/// `(L-1)^{|J|-1} [cover_J] prod_{j in J} L^{-mu_j} T^{N_j} / (1 - L^{-mu_j} T^{N_j})`.
pub fn assemble_from_sncd(model: &SncdModel) -> ZetaRational {
    let mut total = ZetaRational::zero();
    for stratum in model.strata() {
        let mut mono_l = 0i64;
        let mut mono_t = 0usize;
        let mut factors = Vec::new();
        for &j in stratum.members() {
            let c = &model.components()[j];
            mono_l -= c.mu;
            mono_t += c.n as usize;
            factors.push(DenomFactor::new(-c.mu, c.n));
        }
        let coeff = &GrothElem::gm().pow(stratum.members().len() as u32 - 1) * stratum.cover_class();
        let mut numerator = vec![GrothElem::zero(); mono_t + 1];
        numerator[mono_t] = coeff.shift_l(mono_l);
        let term = ZetaRational::new(numerator, factors).expect("validated model has N >= 1");
        total = total.add(&term);
    }
    total
}
