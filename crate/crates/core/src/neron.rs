//! Zeta functions of abelian varieties from per-residue-class Néron data.
//!
//! For `d = r (mod e)` the Chevalley decomposition of the identity component
//! after degree-`d` base change has toric rank `t_r`, unipotent rank `u_r` and
//! abelian quotient `B_r`; the component group has `phi0_r * d^phit_r`
//! elements, and `ord_A(d) = c*d + ord_intercept_r`. Then
//! `Z_A(T) = sum_d phi_A(d) (L-1)^{t_A(d)} L^{u_A(d) + ord_A(d)} [B_A(d)] T^d`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::grothendieck::{ClassSymbol, GrothElem, GrothError, Specialization};
use crate::poly::ZPoly;
use crate::zeta::{closed_sum, ZetaError, ZetaRational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NeronError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("{at}: {msg}")]
    Schema { at: String, msg: String },
    #[error("{at}: {msg}")]
    Invariant { at: String, msg: String },
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error(transparent)]
    Groth(#[from] GrothError),
}

fn schema(at: impl Into<String>, msg: impl Into<String>) -> NeronError {
    NeronError::Schema { at: at.into(), msg: msg.into() }
}

fn invariant(at: impl Into<String>, msg: impl Into<String>) -> NeronError {
    NeronError::Invariant { at: at.into(), msg: msg.into() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueClass {
    pub r: u32,
    pub t: u32,
    pub u: u32,
    pub b: GrothElem,
    pub phi0: BigInt,
    pub phit: u32,
    pub ord_intercept: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeronData {
    g: u32,
    e: u32,
    c: BigRational,
    classes: Vec<ResidueClass>,
    dims: BTreeMap<ClassSymbol, i64>,
}

impl NeronData {
    /// Validate and build. `classes` may come in any order; exactly one per residue.
    pub fn new(
        g: u32,
        e: u32,
        c: BigRational,
        classes: Vec<ResidueClass>,
        dims: BTreeMap<ClassSymbol, i64>,
    ) -> Result<Self, NeronError> {
        if g == 0 {
            return Err(invariant("g", "must be positive"));
        }
        if e == 0 {
            return Err(invariant("e", "must be positive"));
        }
        if c.is_negative() {
            return Err(invariant("c", "must be >= 0"));
        }
        if !(&c * BigInt::from(e)).is_integer() {
            return Err(invariant("c", format!("c*e = {} is not an integer", &c * BigInt::from(e))));
        }
        let mut slots: Vec<Option<ResidueClass>> = vec![None; e as usize];
        for (i, cl) in classes.into_iter().enumerate() {
            let at = format!("classes[{i}]");
            if cl.r >= e {
                return Err(invariant(format!("{at}.r"), format!("residue {} not below e = {e}", cl.r)));
            }
            if !cl.phi0.is_positive() {
                return Err(invariant(format!("{at}.phi0"), "must be positive"));
            }
            let dim_b = cl
                .b
                .virtual_dimension(&dims)?
                .ok_or_else(|| invariant(format!("{at}.B"), "abelian quotient class is zero"))?;
            if i64::from(cl.t) + i64::from(cl.u) + dim_b != i64::from(g) {
                return Err(invariant(
                    at,
                    format!("t + u + dim B = {} + {} + {dim_b} differs from g = {g}", cl.t, cl.u),
                ));
            }
            let first = if cl.r == 0 { e } else { cl.r };
            let ord_first = &c * BigInt::from(first) + &cl.ord_intercept;
            if !ord_first.is_integer() || ord_first.is_negative() {
                return Err(invariant(
                    format!("{at}.ord_intercept"),
                    format!("ord_A({first}) = {ord_first} is not a natural number"),
                ));
            }
            let r = cl.r as usize;
            if slots[r].is_some() {
                return Err(invariant(format!("{at}.r"), format!("residue {r} listed twice")));
            }
            slots[r] = Some(cl);
        }
        let classes: Vec<ResidueClass> = slots
            .into_iter()
            .enumerate()
            .map(|(r, s)| s.ok_or_else(|| invariant("classes", format!("residue {r} mod {e} missing"))))
            .collect::<Result<_, _>>()?;
        let data = Self { g, e, c, classes, dims };
        let one = data.class_of(1);
        if !data.ord(1).is_zero() {
            return Err(invariant(
                format!("classes[r={}]", one.r),
                format!("ord_A(1) = {} but a distinguished gauge form has order 0", data.ord(1)),
            ));
        }
        if data.classes[0].u != 0 {
            return Err(invariant("classes[r=0]", "reduction after degree-e base change is not semi-abelian (u > 0)"));
        }
        if data.c.is_zero() != (one.u == 0) {
            return Err(invariant("c", "c = 0 must hold exactly when d = 1 has semi-abelian reduction (u = 0)"));
        }
        Ok(data)
    }

    pub fn parse(text: &str) -> Result<Self, NeronError> {
        let v: Value = serde_json::from_str(text).map_err(|e| NeronError::Json(e.to_string()))?;
        Self::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<Self, NeronError> {
        let g = small(v, "g", "$")?;
        let e = small(v, "e", "$")?;
        let c = rational(v, "c", "$")?;
        let mut dims = BTreeMap::new();
        if let Some(d) = v.get("dims") {
            let obj = d.as_object().ok_or_else(|| schema("dims", "expected an object"))?;
            for (name, dim) in obj {
                let sym = ClassSymbol::new(name.clone()).map_err(|err| schema(format!("dims.{name}"), err.to_string()))?;
                let dim = dim.as_i64().ok_or_else(|| schema(format!("dims.{name}"), "expected an integer"))?;
                dims.insert(sym, dim);
            }
        }
        let arr = v
            .get("classes")
            .and_then(Value::as_array)
            .ok_or_else(|| schema("classes", "missing or not an array"))?;
        let mut classes = Vec::with_capacity(arr.len());
        for (i, cl) in arr.iter().enumerate() {
            let at = format!("classes[{i}]");
            let b_text = cl
                .get("B")
                .and_then(Value::as_str)
                .ok_or_else(|| schema(format!("{at}.B"), "missing or not a string"))?;
            let b: GrothElem = b_text.parse().map_err(|err: GrothError| schema(format!("{at}.B"), err.to_string()))?;
            let phi0 = cl
                .get("phi0")
                .and_then(Value::as_u64)
                .ok_or_else(|| schema(format!("{at}.phi0"), "missing or not a natural number"))?;
            classes.push(ResidueClass {
                r: small(cl, "r", &at)?,
                t: small(cl, "t", &at)?,
                u: small(cl, "u", &at)?,
                b,
                phi0: phi0.into(),
                phit: small(cl, "phit", &at)?,
                ord_intercept: rational(cl, "ord_intercept", &at)?,
            });
        }
        Self::new(g, e, c, classes, dims)
    }

    pub fn to_json(&self) -> Value {
        let classes: Vec<Value> = self
            .classes
            .iter()
            .map(|cl| {
                json!({"r": cl.r, "t": cl.t, "u": cl.u, "B": cl.b.to_string(),
                       "phi0": cl.phi0.to_u64(), "phit": cl.phit,
                       "ord_intercept": cl.ord_intercept.to_string()})
            })
            .collect();
        let mut v = json!({"g": self.g, "e": self.e, "c": self.c.to_string(), "classes": classes});
        if !self.dims.is_empty() {
            let dims: serde_json::Map<String, Value> =
                self.dims.iter().map(|(s, d)| (s.as_str().to_string(), json!(d))).collect();
            v["dims"] = Value::Object(dims);
        }
        v
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// Base change conductor.
    pub fn c(&self) -> &BigRational {
        &self.c
    }

    /// Indexed by residue.
    pub fn classes(&self) -> &[ResidueClass] {
        &self.classes
    }

    pub fn class_of(&self, d: u64) -> &ResidueClass {
        &self.classes[(d % u64::from(self.e)) as usize]
    }

    /// Potential toric rank, `max_r t_r`.
    pub fn t_pot(&self) -> u32 {
        self.classes.iter().map(|c| c.t).max().unwrap_or(0)
    }

    pub fn ord(&self, d: u64) -> BigInt {
        let cl = self.class_of(d);
        (&self.c * BigInt::from(d) + &cl.ord_intercept).to_integer()
    }

    pub fn phi(&self, d: u64) -> BigInt {
        let cl = self.class_of(d);
        &cl.phi0 * num_traits::pow(BigInt::from(d), cl.phit as usize)
    }

    /// Coefficient of `T^d` straight from the definition.
    pub fn coefficient(&self, d: u64) -> GrothElem {
        let cl = self.class_of(d);
        let exp = i64::from(cl.u) + self.ord(d).to_i64().expect("ord fits in i64");
        (&GrothElem::gm().pow(cl.t) * &cl.b).shift_l(exp).scale(&self.phi(d))
    }

    /// Closed form, one `closed_sum` per residue class.
    pub fn assemble_zeta(&self) -> Result<ZetaRational, NeronError> {
        let alpha = (&self.c * BigInt::from(self.e)).to_integer().to_i64().ok_or_else(|| {
            invariant("c", "slope exceeds 64 bits")
        })?;
        let mut total = ZetaRational::zero();
        for cl in &self.classes {
            let scale = (&GrothElem::gm().pow(cl.t) * &cl.b).scale(&cl.phi0);
            let beta = &cl.ord_intercept + BigRational::from_integer(cl.u.into());
            total = total.add(&closed_sum(cl.r, self.e, cl.phit, alpha, &beta, &scale)?);
        }
        Ok(total)
    }

    /// Series coefficients from the definition, for `d = 1..=d_max`.
    pub fn direct_series(&self, d_max: usize) -> Vec<GrothElem> {
        (1..=d_max as u64).map(|d| self.coefficient(d)).collect()
    }
}

fn small(v: &Value, key: &str, at: &str) -> Result<u32, NeronError> {
    v.get(key)
        .and_then(Value::as_u64)
        .and_then(|x| u32::try_from(x).ok())
        .ok_or_else(|| schema(format!("{at}.{key}"), "missing or not a natural number below 2^32"))
}

fn rational(v: &Value, key: &str, at: &str) -> Result<BigRational, NeronError> {
    let s = v
        .get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| schema(format!("{at}.{key}"), "missing or not a string \"p/q\""))?;
    parse_rational(s).ok_or_else(|| schema(format!("{at}.{key}"), format!("`{s}` is not a rational \"p/q\"")))
}

/// `"p"` or `"p/q"` with `q != 0`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse::<BigInt>().ok()?, q.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if q.is_zero() {
        return None;
    }
    Some(BigRational::new(p, q))
}

/// Smallest `n >= 1` with `n*q` an integer: the order of `q` in `Q/Z`.
pub fn tau(q: &BigRational) -> BigInt {
    q.denom().abs()
}

/// `Phi_n` via `t^n - 1 = prod_{d | n} Phi_d`.
pub fn cyclotomic(n: usize) -> ZPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut memo: BTreeMap<usize, ZPoly> = BTreeMap::new();
    cyclotomic_memo(n, &mut memo)
}

fn cyclotomic_memo(n: usize, memo: &mut BTreeMap<usize, ZPoly>) -> ZPoly {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut den = ZPoly::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            den = &den * &cyclotomic_memo(d, memo);
        }
    }
    let p = ZPoly::x_pow_minus_one(n).exact_div(&den).expect("t^n - 1 is divisible by its proper cyclotomic factors");
    memo.insert(n, p.clone());
    p
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniquePoleReport {
    pub poles: Value,
    #[serde(serialize_with = "crate::ser_rational")]
    pub expected_location: BigRational,
    pub expected_order: u32,
    pub pass: bool,
}

/// Unique pole at `s = c` of order `t_pot + 1`.
pub fn verify_unique_pole(nd: &NeronData) -> Result<UniquePoleReport, NeronError> {
    let report = nd.assemble_zeta()?.normalize().poles();
    let expected_order = nd.t_pot() + 1;
    let pass = report.entries.len() == 1
        && report.entries[0].location == *nd.c()
        && report.entries[0].order == expected_order;
    Ok(UniquePoleReport { poles: report.to_json(), expected_location: nd.c().clone(), expected_order, pass })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GmpEntry {
    #[serde(serialize_with = "crate::ser_rational")]
    pub s: BigRational,
    pub order: u32,
    pub tau: String,
    pub cyclotomic: String,
    /// Index `i` of the first supplied polynomial (`H^i`) divisible by `Phi_tau`.
    pub matched: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GmpReport {
    pub entries: Vec<GmpEntry>,
    pub pass: bool,
}

/// Largest `tau` for which `Phi_tau` is built; larger ones are reported unmatched.
const TAU_LIMIT: u64 = 100_000;

/// Every pole `s` of the normalized zeta needs `Phi_{tau(s)}` to divide one of `char_polys`.
pub fn gmp_check(z: &ZetaRational, char_polys: &[ZPoly]) -> GmpReport {
    let poles = z.normalize().poles();
    let mut entries = Vec::with_capacity(poles.entries.len());
    for p in &poles.entries {
        let t = tau(&p.location);
        let (cyc, matched) = match t.to_u64().filter(|&n| n <= TAU_LIMIT) {
            Some(n) => {
                let phi = cyclotomic(n as usize);
                let matched = char_polys.iter().position(|cp| !cp.is_zero() && phi.divides(cp));
                (phi.to_string(), matched)
            }
            None => (format!("Phi_{t}"), None),
        };
        entries.push(GmpEntry { s: p.location.clone(), order: p.order, tau: t.to_string(), cyclotomic: cyc, matched });
    }
    let pass = entries.iter().all(|e| e.matched.is_some());
    GmpReport { entries, pass }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerTraceEntry {
    pub d: u64,
    pub chi: String,
    pub expected: String,
    pub additive: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerTraceReport {
    pub entries: Vec<EulerTraceEntry>,
    pub pass: bool,
}

/// Compare `chi(coefficient of T^d)` with `phi_A(d)` for purely additive `d`
/// (`t = 0`, `u = g`) and with 0 otherwise. `chi_symbols` gives `chi` of
/// every class symbol; `L` goes to 1.
pub fn euler_trace_check(
    nd: &NeronData,
    d_max: usize,
    chi_symbols: &BTreeMap<ClassSymbol, i64>,
) -> Result<EulerTraceReport, NeronError> {
    let chi = Specialization::euler_characteristic(chi_symbols.iter().map(|(s, v)| (s.clone(), *v)));
    let series = nd.assemble_zeta()?.series_expand(d_max);
    let mut entries = Vec::with_capacity(d_max);
    for (i, coeff) in series.iter().enumerate() {
        let d = i as u64 + 1;
        let cl = nd.class_of(d);
        let value = chi.apply_constant(coeff)?.expect("L maps to a constant");
        let additive = cl.t == 0 && cl.u == nd.g();
        let expected = if additive { BigRational::from_integer(nd.phi(d)) } else { BigRational::zero() };
        entries.push(EulerTraceEntry {
            d,
            chi: value.to_string(),
            expected: expected.to_string(),
            additive,
            pass: value == expected,
        });
    }
    let pass = entries.iter().all(|e| e.pass);
    Ok(EulerTraceReport { entries, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn good() -> NeronData {
        NeronData::parse(
            r#"{"g":1,"e":1,"c":"0","dims":{"b":1},
                "classes":[{"r":0,"t":0,"u":0,"B":"b","phi0":1,"phit":0,"ord_intercept":"0"}]}"#,
        )
        .unwrap()
    }

    fn multiplicative(n: u64) -> NeronData {
        NeronData::parse(&format!(
            r#"{{"g":1,"e":1,"c":"0",
                "classes":[{{"r":0,"t":1,"u":0,"B":"1","phi0":{n},"phit":1,"ord_intercept":"0"}}]}}"#
        ))
        .unwrap()
    }

    const TYPE_II: &str = r#"{"g":1,"e":6,"c":"1/6","dims":{"b":1},"classes":[
        {"r":0,"t":0,"u":0,"B":"b","phi0":1,"phit":0,"ord_intercept":"0"},
        {"r":1,"t":0,"u":1,"B":"1","phi0":1,"phit":0,"ord_intercept":"-1/6"},
        {"r":2,"t":0,"u":1,"B":"1","phi0":3,"phit":0,"ord_intercept":"-1/3"},
        {"r":3,"t":0,"u":1,"B":"1","phi0":4,"phit":0,"ord_intercept":"-1/2"},
        {"r":4,"t":0,"u":1,"B":"1","phi0":3,"phit":0,"ord_intercept":"-2/3"},
        {"r":5,"t":0,"u":1,"B":"1","phi0":1,"phit":0,"ord_intercept":"-5/6"}]}"#;

    #[test]
    fn assemble_examples() {
        assert_eq!(good().assemble_zeta().unwrap().to_string(), "b*T / (1 - T)");
        let z = multiplicative(3).assemble_zeta().unwrap().normalize();
        assert_eq!(z.to_string(), "(3*L - 3)*T / (1 - T)^2");
        let ii = NeronData::parse(TYPE_II).unwrap();
        let poles = ii.assemble_zeta().unwrap().normalize().poles();
        assert_eq!(poles.to_json(), json!([{"s": "1/6", "order": 1}]));
    }

    #[test]
    fn closed_form_matches_definition() {
        for nd in [good(), multiplicative(5), NeronData::parse(TYPE_II).unwrap()] {
            assert_eq!(nd.assemble_zeta().unwrap().series_expand(30), nd.direct_series(30));
        }
    }

    #[test]
    fn unique_pole_examples() {
        let r = verify_unique_pole(&good()).unwrap();
        assert!(r.pass);
        assert_eq!((r.expected_location.clone(), r.expected_order), (q(0, 1), 1));
        let r = verify_unique_pole(&multiplicative(2)).unwrap();
        assert!(r.pass);
        assert_eq!(r.poles, json!([{"s": "0", "order": 2}]));
    }

    #[test]
    fn invariants_rejected() {
        let bad_rank = r#"{"g":1,"e":1,"c":"0","classes":[{"r":0,"t":1,"u":1,"B":"1","phi0":1,"phit":0,"ord_intercept":"0"}]}"#;
        assert!(NeronData::parse(bad_rank).unwrap_err().to_string().contains("differs from g"));
        let non_integral = r#"{"g":1,"e":2,"c":"1/2","classes":[
            {"r":0,"t":1,"u":0,"B":"1","phi0":1,"phit":1,"ord_intercept":"0"},
            {"r":1,"t":0,"u":1,"B":"1","phi0":4,"phit":0,"ord_intercept":"-1/3"}]}"#;
        assert!(NeronData::parse(non_integral).unwrap_err().to_string().contains("natural number"));
        let not_distinguished = r#"{"g":1,"e":1,"c":"0","dims":{"b":1},
            "classes":[{"r":0,"t":0,"u":0,"B":"b","phi0":1,"phit":0,"ord_intercept":"1"}]}"#;
        assert!(NeronData::parse(not_distinguished).unwrap_err().to_string().contains("distinguished"));
        let missing = r#"{"g":1,"e":2,"c":"1/2","classes":[
            {"r":1,"t":0,"u":1,"B":"1","phi0":4,"phit":0,"ord_intercept":"-1/2"}]}"#;
        assert!(NeronData::parse(missing).unwrap_err().to_string().contains("missing"));
        let no_dim = r#"{"g":1,"e":1,"c":"0","classes":[{"r":0,"t":0,"u":0,"B":"b","phi0":1,"phit":0,"ord_intercept":"0"}]}"#;
        assert!(NeronData::parse(no_dim).is_err());
        let c_mismatch = r#"{"g":1,"e":1,"c":"0","classes":[{"r":0,"t":0,"u":1,"B":"1","phi0":1,"phit":0,"ord_intercept":"0"}]}"#;
        assert!(NeronData::parse(c_mismatch).is_err());
    }

    #[test]
    fn json_round_trip() {
        let nd = NeronData::parse(TYPE_II).unwrap();
        assert_eq!(NeronData::from_json(&nd.to_json()).unwrap(), nd);
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(&q(0, 1)), 1.into());
        assert_eq!(tau(&q(1, 6)), 6.into());
        assert_eq!(tau(&q(5, 6)), 6.into());
        assert_eq!(tau(&q(-3, 4)), 4.into());
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(1).to_string(), "t - 1");
        assert_eq!(cyclotomic(2).to_string(), "t + 1");
        assert_eq!(cyclotomic(6).to_string(), "t^2 - t + 1");
        assert_eq!(cyclotomic(105).coeff(7), BigInt::from(-2));
    }

    #[test]
    fn gmp_examples() {
        let ii = NeronData::parse(TYPE_II).unwrap().assemble_zeta().unwrap();
        let h0 = ZPoly::from_i64(&[-1, 1]);
        let phi6 = ZPoly::from_i64(&[1, -1, 1]);
        let r = gmp_check(&ii, &[h0.clone(), phi6, h0.clone()]);
        assert!(r.pass);
        assert_eq!(r.entries[0].matched, Some(1));
        assert_eq!(r.entries[0].cyclotomic, "t^2 - t + 1");
        let good_z = good().assemble_zeta().unwrap();
        assert_eq!(gmp_check(&good_z, std::slice::from_ref(&h0)).entries[0].matched, Some(0));
        // pole at 1/4 with nothing divisible by Phi_4
        let mut num = vec![GrothElem::zero(); 5];
        num[4] = GrothElem::l();
        let quarter = ZetaRational::new(num, [crate::zeta::DenomFactor::new(1, 4)]).unwrap();
        let r = gmp_check(&quarter, &[h0.clone(), ZPoly::from_i64(&[1, 1]).pow(2), h0]);
        assert!(!r.pass);
        assert_eq!(r.entries[0].tau, "4");
    }

    #[test]
    fn euler_trace_examples() {
        let chi = BTreeMap::from([(ClassSymbol::new("b").unwrap(), 0)]);
        let r = euler_trace_check(&multiplicative(4), 10, &chi).unwrap();
        assert!(r.pass && r.entries.iter().all(|e| !e.additive && e.chi == "0"));
        let r = euler_trace_check(&NeronData::parse(TYPE_II).unwrap(), 12, &chi).unwrap();
        assert!(r.pass);
        assert_eq!((r.entries[0].additive, r.entries[0].chi.as_str()), (true, "1"));
        assert_eq!(r.entries[2].chi, "4");
        assert!(euler_trace_check(&good(), 5, &chi).unwrap().pass);
        assert!(euler_trace_check(&good(), 5, &BTreeMap::new()).is_err());
    }

    #[test]
    fn cyclotomic_product_identity() {
        for n in 1..=30usize {
            let prod = (1..=n).filter(|d| n % d == 0).fold(ZPoly::one(), |acc, d| &acc * &cyclotomic(d));
            assert_eq!(prod, ZPoly::x_pow_minus_one(n), "n = {n}");
        }
    }

    proptest! {
        #[test]
        fn tau_is_minimal(p in -500i64..500, q_ in 1i64..200) {
            let x = q(p, q_);
            let t = tau(&x).to_i64().unwrap();
            prop_assert!((&x * BigInt::from(t)).is_integer());
            for k in 1..t {
                prop_assert!(!(&x * BigInt::from(k)).is_integer());
            }
        }
    }
}
