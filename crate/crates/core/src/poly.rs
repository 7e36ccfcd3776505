//! Dense univariate polynomials over `BigInt` and `BigRational`.
//!
//! [`ZPoly`] carries characteristic polynomials, cyclotomic polynomials and
//! monodromy factors; [`QPoly`] is the codomain of specializations and the
//! carrier for fitted generating functions.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficient ring of a [`UniPoly`].
pub trait Coeff:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + fmt::Display
{
    /// `self / rhs` when the quotient exists in the ring.
    fn exact_div(&self, rhs: &Self) -> Option<Self>;
    fn is_negative_coeff(&self) -> bool;
    fn abs_coeff(&self) -> Self;
}

impl Coeff for BigInt {
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = num_integer::Integer::div_rem(self, rhs);
        r.is_zero().then_some(q)
    }
    fn is_negative_coeff(&self) -> bool {
        self.is_negative()
    }
    fn abs_coeff(&self) -> Self {
        self.abs()
    }
}

impl Coeff for BigRational {
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self / rhs)
    }
    fn is_negative_coeff(&self) -> bool {
        self.is_negative()
    }
    fn abs_coeff(&self) -> Self {
        self.abs()
    }
}

/// Polynomial in one variable, coefficients stored from degree 0 upwards with
/// no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly<C> {
    coeffs: Vec<C>,
}

pub type ZPoly = UniPoly<BigInt>;
pub type QPoly = UniPoly<BigRational>;

impl<C: Coeff> UniPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: C, k: usize) -> Self {
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `t^n - 1`
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![C::zero(); n + 1];
        coeffs[0] = -C::one();
        coeffs[n] = coeffs[n].clone() + &C::one();
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn as_constant(&self) -> Option<C> {
        match self.coeffs.len() {
            0 => Some(C::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn eval(&self, x: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c).collect())
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

    /// Long division. Returns `None` when the divisor is zero or a leading
    /// coefficient quotient does not exist in the coefficient ring.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dlead = divisor.leading()?.clone();
        let ddeg = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= ddeg {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![C::zero(); rem.len() - ddeg];
        for k in (0..quot.len()).rev() {
            let top = rem[k + ddeg].clone();
            if top.is_zero() {
                continue;
            }
            let q = top.exact_div(&dlead)?;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - &(q.clone() * dc);
            }
            quot[k] = q;
        }
        Some((Self::new(quot), Self::new(rem)))
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor)?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.exact_div(self).is_some()
    }

    /// Power series expansion of `self / den` through degree `n - 1`.
    /// Requires an invertible constant term in `den`.
    pub fn series_div(&self, den: &Self, n: usize) -> Option<Vec<C>> {
        let d0 = den.coeffs.first()?.clone();
        let mut out: Vec<C> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeff(k);
            for j in 1..=k.min(den.coeffs.len().saturating_sub(1)) {
                acc = acc - &(den.coeffs[j].clone() * &out[k - j]);
            }
            out.push(acc.exact_div(&d0)?);
        }
        Some(out)
    }

    /// Render with the given variable name, highest degree first.
    pub fn render(&self, var: &str) -> String {
        self.render_in_order(var, (0..self.coeffs.len()).rev())
    }

    /// Render lowest degree first, as for power series: `1 - 5*T`.
    pub fn render_ascending(&self, var: &str) -> String {
        self.render_in_order(var, 0..self.coeffs.len())
    }

    fn render_in_order(&self, var: &str, order: impl Iterator<Item = usize>) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for k in order {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative_coeff();
            let a = c.abs_coeff();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }
}

impl QPoly {
    /// Monic greatest common divisor over the rationals.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor over a field");
            a = b;
            b = r;
        }
        match a.leading().cloned() {
            Some(lc) => a.scale(&(BigRational::one() / lc)),
            None => a,
        }
    }

    pub fn from_zpoly(p: &ZPoly) -> Self {
        Self::new(
            p.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Integer polynomial when every coefficient is integral.
    pub fn to_zpoly(&self) -> Option<ZPoly> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(ZPoly::new)
    }
}

impl ZPoly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }
}

impl<C: Coeff> fmt::Display for UniPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

impl<C: Coeff> Add for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn add(self, rhs: Self) -> UniPoly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<C: Coeff> Sub for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn sub(self, rhs: Self) -> UniPoly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<C: Coeff> Mul for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn mul(self, rhs: Self) -> UniPoly<C> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + &(a.clone() * b);
            }
        }
        UniPoly::new(out)
    }
}

impl<C: Coeff> Neg for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn neg(self) -> UniPoly<C> {
        UniPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr for UniPoly<C> {
            type Output = UniPoly<C>;
            fn $m(self, rhs: Self) -> UniPoly<C> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
