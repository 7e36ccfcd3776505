//! Bundled Kodaira fibre types: sncd models of the minimal regular model and
//! Néron data of the generic fibre, for each of the ten types.
//!
//! Both routes name the genus-one class differently. In the sncd files the
//! cover of the unique elliptic stratum is `Etilde`, in the Néron files the
//! abelian quotient after good-reduction base change is `b`. They are the same
//! curve, so comparisons go through [`identification`].

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::grothendieck::{ClassSymbol, GrothElem};
use crate::neron::{NeronData, NeronError, ResidueClass};
use crate::poly::ZPoly;
use crate::sncd::{Component, Mode, ModelError, SncdModel};

/// `n` used by the bundled `kodaira_In.json` / `neron_In.json`.
pub const BUNDLED_IN: u32 = 3;
/// `n` used by the bundled `kodaira_Instar.json` / `neron_Instar.json`.
pub const BUNDLED_INSTAR: u32 = 2;

pub const TAGS: [&str; 10] = ["I0", "In", "II", "III", "IV", "I0star", "Instar", "IVstar", "IIIstar", "IIstar"];

#[derive(Debug, Error)]
pub enum KodairaError {
    #[error("unknown Kodaira type `{0}`; available: I0, In, II, III, IV, I0star, Instar, IVstar, IIIstar, IIstar (In and Instar take --n, or write e.g. I4, I2star)")]
    UnknownTag(String),
    #[error("{0} needs n >= {1}")]
    BadN(&'static str, u32),
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error("{file}: {source}")]
    Model { file: String, source: ModelError },
    #[error("{file}: {source}")]
    Neron { file: String, source: NeronError },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KodairaType {
    I0,
    In(u32),
    II,
    III,
    IV,
    I0star,
    Instar(u32),
    IVstar,
    IIIstar,
    IIstar,
}

/// Where bundled data files are read from.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum DataSource {
    /// Copies compiled into the binary.
    #[default]
    Bundled,
    /// A directory laid out like `data/`: `kodaira/kodaira_<tag>.json`, `neron/neron_<tag>.json`.
    Dir(PathBuf),
}

fn bundled_text(name: &str) -> Option<&'static str> {
    Some(match name {
        "kodaira/kodaira_I0.json" => include_str!("../data/kodaira/kodaira_I0.json"),
        "kodaira/kodaira_I1.json" => include_str!("../data/kodaira/kodaira_I1.json"),
        "kodaira/kodaira_In.json" => include_str!("../data/kodaira/kodaira_In.json"),
        "kodaira/kodaira_II.json" => include_str!("../data/kodaira/kodaira_II.json"),
        "kodaira/kodaira_III.json" => include_str!("../data/kodaira/kodaira_III.json"),
        "kodaira/kodaira_IV.json" => include_str!("../data/kodaira/kodaira_IV.json"),
        "kodaira/kodaira_I0star.json" => include_str!("../data/kodaira/kodaira_I0star.json"),
        "kodaira/kodaira_Instar.json" => include_str!("../data/kodaira/kodaira_Instar.json"),
        "kodaira/kodaira_IVstar.json" => include_str!("../data/kodaira/kodaira_IVstar.json"),
        "kodaira/kodaira_IIIstar.json" => include_str!("../data/kodaira/kodaira_IIIstar.json"),
        "kodaira/kodaira_IIstar.json" => include_str!("../data/kodaira/kodaira_IIstar.json"),
        "neron/neron_I0.json" => include_str!("../data/neron/neron_I0.json"),
        "neron/neron_In.json" => include_str!("../data/neron/neron_In.json"),
        "neron/neron_II.json" => include_str!("../data/neron/neron_II.json"),
        "neron/neron_III.json" => include_str!("../data/neron/neron_III.json"),
        "neron/neron_IV.json" => include_str!("../data/neron/neron_IV.json"),
        "neron/neron_I0star.json" => include_str!("../data/neron/neron_I0star.json"),
        "neron/neron_Instar.json" => include_str!("../data/neron/neron_Instar.json"),
        "neron/neron_IVstar.json" => include_str!("../data/neron/neron_IVstar.json"),
        "neron/neron_IIIstar.json" => include_str!("../data/neron/neron_IIIstar.json"),
        "neron/neron_IIstar.json" => include_str!("../data/neron/neron_IIstar.json"),
        "sncd/one_component.json" => include_str!("../data/sncd/one_component.json"),
        "sncd/cusp_hypersurface.json" => include_str!("../data/sncd/cusp_hypersurface.json"),
        _ => return None,
    })
}

impl DataSource {
    /// Text of a data file given relative to the data root, e.g. `"neron/neron_II.json"`.
    pub fn read(&self, rel: &str) -> Result<String, KodairaError> {
        match self {
            DataSource::Bundled => bundled_text(rel)
                .map(str::to_string)
                .ok_or_else(|| KodairaError::Io { path: rel.to_string(), msg: "no such bundled file".into() }),
            DataSource::Dir(root) => {
                let path = root.join(rel);
                std::fs::read_to_string(&path)
                    .map_err(|e| KodairaError::Io { path: path.display().to_string(), msg: e.to_string() })
            }
        }
    }

    pub fn sncd(&self, rel: &str) -> Result<SncdModel, KodairaError> {
        SncdModel::parse(&self.read(rel)?).map_err(|source| KodairaError::Model { file: rel.to_string(), source })
    }

    pub fn neron(&self, rel: &str) -> Result<NeronData, KodairaError> {
        NeronData::parse(&self.read(rel)?).map_err(|source| KodairaError::Neron { file: rel.to_string(), source })
    }

    pub fn root(&self) -> Option<&Path> {
        match self {
            DataSource::Bundled => None,
            DataSource::Dir(p) => Some(p),
        }
    }
}

/// `Etilde -> b`
pub fn identification() -> BTreeMap<ClassSymbol, GrothElem> {
    BTreeMap::from([(ClassSymbol::new("Etilde").expect("valid symbol"), GrothElem::sym("b"))])
}

impl KodairaType {
    /// The ten bundled types, `I_n` and `I_n^*` at their bundled `n`.
    pub fn bundled() -> [KodairaType; 10] {
        use KodairaType::*;
        [I0, In(BUNDLED_IN), II, III, IV, I0star, Instar(BUNDLED_INSTAR), IVstar, IIIstar, IIstar]
    }

    /// Accepts the tags of [`TAGS`] (with `n` for `In`/`Instar`) and the
    /// explicit forms `I5`, `I2star`, `I2*`.
    pub fn parse_tag(tag: &str, n: Option<u32>) -> Result<Self, KodairaError> {
        use KodairaType::*;
        let t = match tag {
            "I0" => I0,
            "II" => II,
            "III" => III,
            "IV" => IV,
            "I0star" | "I0*" => I0star,
            "IVstar" | "IV*" => IVstar,
            "IIIstar" | "III*" => IIIstar,
            "IIstar" | "II*" => IIstar,
            "In" => In(n.unwrap_or(BUNDLED_IN)),
            "Instar" | "In*" => Instar(n.unwrap_or(BUNDLED_INSTAR)),
            other => {
                let body = other.strip_prefix('I').ok_or_else(|| KodairaError::UnknownTag(other.into()))?;
                let (digits, star) = match body.strip_suffix("star").or_else(|| body.strip_suffix('*')) {
                    Some(d) => (d, true),
                    None => (body, false),
                };
                let k: u32 = digits.parse().map_err(|_| KodairaError::UnknownTag(other.into()))?;
                match (star, k) {
                    (false, 0) => I0,
                    (false, k) => In(k),
                    (true, 0) => I0star,
                    (true, k) => Instar(k),
                }
            }
        };
        match t {
            In(0) => Err(KodairaError::BadN("In", 1)),
            Instar(0) => Err(KodairaError::BadN("Instar", 1)),
            t => Ok(t),
        }
    }

    /// File tag, `n` omitted.
    pub fn tag(&self) -> &'static str {
        use KodairaType::*;
        match self {
            I0 => "I0",
            In(_) => "In",
            II => "II",
            III => "III",
            IV => "IV",
            I0star => "I0star",
            Instar(_) => "Instar",
            IVstar => "IVstar",
            IIIstar => "IIIstar",
            IIstar => "IIstar",
        }
    }

    fn bundled_n(&self) -> bool {
        match self {
            KodairaType::In(n) => *n == BUNDLED_IN || *n == 1,
            KodairaType::Instar(n) => *n == BUNDLED_INSTAR,
            _ => true,
        }
    }

    /// Sncd model of the minimal regular model, made snc by blowing up where needed.
    pub fn sncd_model(&self, src: &DataSource) -> Result<SncdModel, KodairaError> {
        match *self {
            KodairaType::In(1) => src.sncd("kodaira/kodaira_I1.json"),
            KodairaType::In(n) if !self.bundled_n() => Ok(in_model(n)),
            KodairaType::Instar(n) if !self.bundled_n() => Ok(instar_model(n)),
            _ => src.sncd(&format!("kodaira/kodaira_{}.json", self.tag())),
        }
    }

    pub fn neron_data(&self, src: &DataSource) -> Result<NeronData, KodairaError> {
        match *self {
            KodairaType::In(n) if !self.bundled_n() || n == 1 => Ok(in_neron(n)),
            KodairaType::Instar(n) if !self.bundled_n() => Ok(instar_neron(n)),
            _ => src.neron(&format!("neron/neron_{}.json", self.tag())),
        }
    }

    /// Monodromy on `H^1`, derived from the Euler data of the sncd model.
    pub fn h1_char_poly(&self, src: &DataSource) -> Result<ZPoly, KodairaError> {
        let file = format!("kodaira/kodaira_{}.json", self.tag());
        self.sncd_model(src)?
            .h1_char_poly()
            .map_err(|source| KodairaError::Model { file, source })
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::In(n) => write!(f, "I{n}"),
            KodairaType::Instar(n) => write!(f, "I{n}*"),
            KodairaType::I0star => f.write_str("I0*"),
            KodairaType::IVstar => f.write_str("IV*"),
            KodairaType::IIIstar => f.write_str("III*"),
            KodairaType::IIstar => f.write_str("II*"),
            other => f.write_str(other.tag()),
        }
    }
}

fn build(components: Vec<Component>, strata: Vec<(Vec<&str>, &str)>) -> SncdModel {
    let strata = strata
        .into_iter()
        .map(|(j, c)| (j.into_iter().map(str::to_string).collect(), c.parse().expect("valid class")))
        .collect();
    SncdModel::new(Mode::CalabiYau, components, strata).expect("generated model is valid")
}

/// `I_n`: a cycle of `n` rational curves; `I_1` is the nodal curve with its node blown up.
pub fn in_model(n: u32) -> SncdModel {
    assert!(n >= 1);
    if n == 1 {
        return build(
            vec![Component::new("A", 1, 0, Some(0)), Component::new("B", 2, 0, Some(0))],
            vec![(vec!["A"], "L - 1"), (vec!["B"], "L - 1"), (vec!["A", "B"], "2")],
        );
    }
    let ids: Vec<String> = (0..n).map(|i| format!("C{i}")).collect();
    let components = ids.iter().map(|id| Component::new(id.as_str(), 1, 0, Some(0))).collect();
    let mut strata: Vec<(Vec<&str>, &str)> = ids.iter().map(|id| (vec![id.as_str()], "L - 1")).collect();
    if n == 2 {
        strata.push((vec!["C0", "C1"], "2"));
    } else {
        for i in 0..n as usize {
            strata.push((vec![ids[i].as_str(), ids[(i + 1) % n as usize].as_str()], "1"));
        }
    }
    build(components, strata)
}

/// `I_n^*`: a chain `c0..cn` of multiplicity-2 curves with two reduced leaves at each end.
pub fn instar_model(n: u32) -> SncdModel {
    assert!(n >= 1);
    let chain: Vec<String> = (0..=n).map(|i| format!("c{i}")).collect();
    let last = chain.last().expect("nonempty chain").as_str();
    let mut components: Vec<Component> =
        ["a1", "a2", "b1", "b2"].iter().map(|id| Component::new(*id, 1, 0, Some(1))).collect();
    for (i, id) in chain.iter().enumerate() {
        let end = i == 0 || i == n as usize;
        components.push(Component::new(id.as_str(), 2, -1, Some(if end { -1 } else { 0 })));
    }
    let mut strata: Vec<(Vec<&str>, &str)> = ["a1", "a2", "b1", "b2"].iter().map(|id| (vec![*id], "L")).collect();
    for (i, id) in chain.iter().enumerate() {
        let end = i == 0 || i == n as usize;
        strata.push((vec![id.as_str()], if end { "L - 3" } else { "2*L - 2" }));
    }
    strata.push((vec!["a1", "c0"], "1"));
    strata.push((vec!["a2", "c0"], "1"));
    for w in chain.windows(2) {
        strata.push((vec![w[0].as_str(), w[1].as_str()], "2"));
    }
    strata.push((vec!["b1", last], "1"));
    strata.push((vec!["b2", last], "1"));
    build(components, strata)
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn class(r: u32, t: u32, u: u32, phi0: u32, phit: u32, intercept: BigRational) -> ResidueClass {
    ResidueClass { r, t, u, b: GrothElem::one(), phi0: BigInt::from(phi0), phit, ord_intercept: intercept }
}

/// Split multiplicative reduction: `phi(d) = n d`.
pub fn in_neron(n: u32) -> NeronData {
    NeronData::new(1, 1, rational(0, 1), vec![class(0, 1, 0, n, 1, rational(0, 1))], BTreeMap::new())
        .expect("valid I_n data")
}

/// Quadratic twist of `I_n`: type `I_{nd}^*` for odd `d`, `I_{nd}` for even `d`.
pub fn instar_neron(n: u32) -> NeronData {
    NeronData::new(
        1,
        2,
        rational(1, 2),
        vec![class(0, 1, 0, n, 1, rational(0, 1)), class(1, 0, 1, 4, 0, rational(-1, 2))],
        BTreeMap::new(),
    )
    .expect("valid I_n^* data")
}
