//! Strict-normal-crossings special fibres as combinatorial data.
//!
//! A model lists components `E_i` with multiplicity `N_i`, the order `mu_i`
//! of the gauge form along `E_i` and the Euler characteristic of the open
//! part `E_i^o`, together with every nonempty stratum `E_J` and the class of
//! its cover. From this data the crate computes the log canonical threshold,
//! the degeneracy index, candidate poles, the monodromy zeta function via
//! A'Campo's formula and the zeta function itself (see
//! [`crate::zeta::assemble_from_sncd`]).
//!
//! In hypersurface mode the `mu` slots carry the numerical data `nu_i` of an
//! embedded resolution; any shift between the two conventions is expected to
//! be absorbed into the input values.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use serde_json::{json, Value};
use thiserror::Error;

use crate::grothendieck::GrothElem;
use crate::poly::ZPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("{at}: {msg}")]
    Schema { at: String, msg: String },
    #[error("{at}: unknown component id `{id}`")]
    DanglingId { at: String, id: String },
    #[error("{at}: stratum {stratum:?} is listed but its face {missing:?} is not")]
    DownwardClosure { at: String, stratum: Vec<String>, missing: Vec<String> },
    #[error("dual graph is disconnected: {0:?} cannot be reached from the first component")]
    Disconnected(Vec<String>),
    #[error("component `{0}` has no euler_open value")]
    MissingEuler(String),
    #[error("convention violated or bad Euler data: {0}")]
    BadEulerData(String),
}

fn schema(at: impl Into<String>, msg: impl Into<String>) -> ModelError {
    ModelError::Schema { at: at.into(), msg: msg.into() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    CalabiYau,
    Hypersurface,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::CalabiYau => "calabi_yau",
            Mode::Hypersurface => "hypersurface",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub id: String,
    /// Multiplicity `N_i >= 1`.
    pub n: u32,
    /// Order of the gauge form along the component (or `nu_i` in
    /// hypersurface mode).
    pub mu: i64,
    /// Euler characteristic of `E_i^o`.
    pub euler_open: Option<i64>,
}

impl Component {
    pub fn new(id: impl Into<String>, n: u32, mu: i64, euler_open: Option<i64>) -> Self {
        Self { id: id.into(), n, mu, euler_open }
    }

    /// `mu_i / N_i`
    pub fn ratio(&self) -> BigRational {
        BigRational::new(self.mu.into(), self.n.into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    members: Vec<usize>,
    cover_class: GrothElem,
    gcd: u32,
}

impl Stratum {
    /// Indices into [`SncdModel::components`], ascending.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// Class of the cover of `E_J^o`.
    pub fn cover_class(&self) -> &GrothElem {
        &self.cover_class
    }

    /// `N_J = gcd{N_j : j in J}`, always recomputed from the components.
    pub fn n_j(&self) -> u32 {
        self.gcd
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SncdModel {
    mode: Mode,
    components: Vec<Component>,
    strata: Vec<Stratum>,
    warnings: Vec<String>,
}

/// `prod_n (t^n - 1)^{e_n}`
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MonodromyZeta {
    factors: BTreeMap<u32, i64>,
}

impl SncdModel {
    /// Build and validate a model. Strata are given as lists of component ids.
    pub fn new(
        mode: Mode,
        components: Vec<Component>,
        strata: Vec<(Vec<String>, GrothElem)>,
    ) -> Result<Self, ModelError> {
        if components.is_empty() {
            return Err(schema("components", "at least one component is required"));
        }
        let mut index: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, c) in components.iter().enumerate() {
            if c.n == 0 {
                return Err(schema(format!("components[{i}].N"), "must be >= 1"));
            }
            if index.insert(c.id.as_str(), i).is_some() {
                return Err(schema(format!("components[{i}].id"), format!("duplicate id `{}`", c.id)));
            }
        }
        let mut built: Vec<Stratum> = Vec::with_capacity(strata.len());
        let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for (si, (ids, class)) in strata.into_iter().enumerate() {
            let at = format!("strata[{si}].J");
            if ids.is_empty() {
                return Err(schema(at, "must be nonempty"));
            }
            if ids.len() > components.len() {
                return Err(schema(at, "more members than components"));
            }
            let mut members = Vec::with_capacity(ids.len());
            for (k, id) in ids.iter().enumerate() {
                let &i = index
                    .get(id.as_str())
                    .ok_or_else(|| ModelError::DanglingId { at: format!("{at}[{k}]"), id: id.clone() })?;
                members.push(i);
            }
            members.sort_unstable();
            if members.windows(2).any(|w| w[0] == w[1]) {
                return Err(schema(at, "repeated component id"));
            }
            if let Some(prev) = seen.insert(members.clone(), si) {
                return Err(schema(at, format!("same stratum as strata[{prev}]")));
            }
            let gcd = members.iter().fold(0u32, |g, &i| g.gcd(&components[i].n));
            built.push(Stratum { members, cover_class: class, gcd });
        }
        for (i, c) in components.iter().enumerate() {
            if !seen.contains_key(&vec![i]) {
                return Err(schema("strata", format!("component `{}` has no stratum of its own", c.id)));
            }
        }
        for (si, s) in built.iter().enumerate() {
            if s.members.len() < 2 {
                continue;
            }
            for skip in 0..s.members.len() {
                let face: Vec<usize> =
                    s.members.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &i)| i).collect();
                if !seen.contains_key(&face) {
                    let names = |v: &[usize]| v.iter().map(|&i| components[i].id.clone()).collect();
                    return Err(ModelError::DownwardClosure {
                        at: format!("strata[{si}]"),
                        stratum: names(&s.members),
                        missing: names(&face),
                    });
                }
            }
        }
        let mut model = Self { mode, components, strata: built, warnings: Vec::new() };
        if mode == Mode::CalabiYau {
            let unreached = model.unreachable_components();
            if !unreached.is_empty() {
                return Err(ModelError::Disconnected(unreached));
            }
            let reduced: Vec<i64> = model.components.iter().filter(|c| c.n == 1).map(|c| c.mu).collect();
            match reduced.iter().min() {
                None => model
                    .warnings
                    .push("no component of multiplicity 1: normalization of the gauge form cannot be checked".into()),
                Some(&m) if m != 0 => model.warnings.push(format!(
                    "min mu over multiplicity-1 components is {m}, expected 0 for a distinguished gauge form"
                )),
                _ => {}
            }
        }
        Ok(model)
    }

    pub fn parse(text: &str) -> Result<Self, ModelError> {
        let v: Value = serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))?;
        Self::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<Self, ModelError> {
        let obj = v.as_object().ok_or_else(|| schema("$", "expected an object"))?;
        let mode = match obj.get("mode").and_then(Value::as_str) {
            Some("calabi_yau") => Mode::CalabiYau,
            Some("hypersurface") => Mode::Hypersurface,
            Some(other) => return Err(schema("mode", format!("unknown mode `{other}`"))),
            None => return Err(schema("mode", "missing or not a string")),
        };
        let comps = obj
            .get("components")
            .and_then(Value::as_array)
            .ok_or_else(|| schema("components", "missing or not an array"))?;
        let mut components = Vec::with_capacity(comps.len());
        for (i, c) in comps.iter().enumerate() {
            let at = format!("components[{i}]");
            let id = c
                .get("id")
                .and_then(Value::as_str)
                .ok_or_else(|| schema(format!("{at}.id"), "missing or not a string"))?;
            let n = int_field(c, "N", &at)?;
            let n = u32::try_from(n).map_err(|_| schema(format!("{at}.N"), "must be a positive integer"))?;
            let mu = int_field(c, "mu", &at)?;
            let euler = match c.get("euler_open") {
                None | Some(Value::Null) => None,
                Some(_) => Some(int_field(c, "euler_open", &at)?),
            };
            components.push(Component::new(id, n, mu, euler));
        }
        let strata_json = obj
            .get("strata")
            .and_then(Value::as_array)
            .ok_or_else(|| schema("strata", "missing or not an array"))?;
        let mut strata = Vec::with_capacity(strata_json.len());
        for (i, s) in strata_json.iter().enumerate() {
            let at = format!("strata[{i}]");
            let ids = s
                .get("J")
                .and_then(Value::as_array)
                .ok_or_else(|| schema(format!("{at}.J"), "missing or not an array"))?
                .iter()
                .enumerate()
                .map(|(k, x)| {
                    x.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| schema(format!("{at}.J[{k}]"), "not a string"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let class_text = s
                .get("class")
                .and_then(Value::as_str)
                .ok_or_else(|| schema(format!("{at}.class"), "missing or not a string"))?;
            let class: GrothElem = class_text
                .parse()
                .map_err(|e| schema(format!("{at}.class"), format!("{e}")))?;
            strata.push((ids, class));
        }
        Self::new(mode, components, strata)
    }

    /// Serialize in the input format, classes in canonical form.
    pub fn to_json(&self) -> Value {
        let comps: Vec<Value> = self
            .components
            .iter()
            .map(|c| {
                let mut o = json!({"id": c.id, "N": c.n, "mu": c.mu});
                if let Some(e) = c.euler_open {
                    o["euler_open"] = json!(e);
                }
                o
            })
            .collect();
        let strata: Vec<Value> = self
            .strata
            .iter()
            .map(|s| {
                let ids: Vec<&str> = s.members.iter().map(|&i| self.components[i].id.as_str()).collect();
                json!({"J": ids, "class": s.cover_class.to_string()})
            })
            .collect();
        json!({"mode": self.mode.as_str(), "components": comps, "strata": strata})
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    /// Non-fatal findings of validation.
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Pairs of distinct components that meet.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.strata
            .iter()
            .filter(|s| s.members.len() == 2)
            .map(|s| (s.members[0], s.members[1]))
            .collect()
    }

    fn unreachable_components(&self) -> Vec<String> {
        let n = self.components.len();
        let mut adj = vec![Vec::new(); n];
        for (a, b) in self.edges() {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        (0..n).filter(|&i| !seen[i]).map(|i| self.components[i].id.clone()).collect()
    }

    /// `min mu_i / N_i`
    pub fn lct(&self) -> BigRational {
        self.components.iter().map(Component::ratio).min().expect("model has components")
    }

    /// Largest `|J|` over strata whose members all realize the threshold, minus one.
    pub fn delta(&self) -> u32 {
        let lct = self.lct();
        self.strata
            .iter()
            .filter(|s| s.members.iter().all(|&i| self.components[i].ratio() == lct))
            .map(|s| s.members.len() as u32)
            .max()
            .expect("the minimizing component has its own stratum")
            - 1
    }

    /// `{-mu_i / N_i}`
    pub fn candidate_poles(&self) -> BTreeSet<BigRational> {
        self.components.iter().map(|c| -c.ratio()).collect()
    }

    /// `sum_i N_i chi(E_i^o)`, the Euler characteristic of a nearby fibre.
    pub fn nearby_euler_characteristic(&self) -> Result<i64, ModelError> {
        self.components
            .iter()
            .map(|c| {
                c.euler_open
                    .map(|e| i64::from(c.n) * e)
                    .ok_or_else(|| ModelError::MissingEuler(c.id.clone()))
            })
            .sum()
    }

    /// A'Campo: `prod_i (t^{N_i} - 1)^{-chi(E_i^o)}`.
    pub fn monodromy_zeta(&self) -> Result<MonodromyZeta, ModelError> {
        let mut factors: BTreeMap<u32, i64> = BTreeMap::new();
        for c in &self.components {
            let e = c.euler_open.ok_or_else(|| ModelError::MissingEuler(c.id.clone()))?;
            *factors.entry(c.n).or_insert(0) -= e;
        }
        factors.retain(|_, e| *e != 0);
        Ok(MonodromyZeta { factors })
    }

    /// Characteristic polynomial of monodromy on `H^1` of a genus-one fibre,
    /// assuming trivial action on `H^0` and `H^2`: `zeta(t) (t - 1)^2`.
    pub fn h1_char_poly(&self) -> Result<ZPoly, ModelError> {
        let z = self.monodromy_zeta()?;
        let num = &z.numerator() * &ZPoly::x_pow_minus_one(1).pow(2);
        let den = z.denominator();
        let p = num
            .exact_div(&den)
            .ok_or_else(|| ModelError::BadEulerData(format!("zeta(t)*(t-1)^2 = {z} * (t - 1)^2 is not a polynomial")))?;
        if p.degree() != Some(2) || !p.is_monic() {
            return Err(ModelError::BadEulerData(format!(
                "H^1 characteristic polynomial {p} is not monic of degree 2"
            )));
        }
        Ok(p)
    }
}

fn int_field(obj: &Value, key: &str, at: &str) -> Result<i64, ModelError> {
    match obj.get(key) {
        None => Err(schema(format!("{at}.{key}"), "missing")),
        Some(v) => v
            .as_i64()
            .ok_or_else(|| schema(format!("{at}.{key}"), format!("expected an integer within 64 bits, got {v}"))),
    }
}

impl MonodromyZeta {
    pub fn from_factors(factors: impl IntoIterator<Item = (u32, i64)>) -> Self {
        let mut map = BTreeMap::new();
        for (n, e) in factors {
            *map.entry(n).or_insert(0) += e;
        }
        map.retain(|_, e: &mut i64| *e != 0);
        Self { factors: map }
    }

    pub fn factors(&self) -> &BTreeMap<u32, i64> {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Degree as a rational function, `sum_n n e_n`.
    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|(&n, &e)| i64::from(n) * e).sum()
    }

    pub fn numerator(&self) -> ZPoly {
        self.part(|e| e > 0)
    }

    pub fn denominator(&self) -> ZPoly {
        self.part(|e| e < 0)
    }

    fn part(&self, keep: impl Fn(i64) -> bool) -> ZPoly {
        self.factors
            .iter()
            .filter(|(_, &e)| keep(e))
            .fold(ZPoly::one(), |acc, (&n, &e)| &acc * &ZPoly::x_pow_minus_one(n as usize).pow(e.unsigned_abs() as u32))
    }
}

impl fmt::Display for MonodromyZeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |pos: bool| -> Vec<String> {
            self.factors
                .iter()
                .filter(|(_, &e)| (e > 0) == pos)
                .map(|(&n, &e)| {
                    let base = if n == 1 { "(t - 1)".to_string() } else { format!("(t^{n} - 1)") };
                    match e.unsigned_abs() {
                        1 => base,
                        k => format!("{base}^{k}"),
                    }
                })
                .collect()
        };
        let num = side(true);
        let den = side(false);
        let num_s = if num.is_empty() { "1".to_string() } else { num.join("*") };
        match den.len() {
            0 => f.write_str(&num_s),
            1 => write!(f, "{num_s} / {}", den[0]),
            _ => write!(f, "{num_s} / ({})", den.join("*")),
        }
    }
}
