//! Symbolic model of the spectrum of finite spectra.
//!
//! Points are `C_{p,n}` for primes `p` and heights `2 ≤ n ≤ ∞`, plus one
//! generic point `C_1` shared by all primes. The closure of `C_{p,n}` is
//! `{C_{p,m} : m ≥ n}`; the closure of `C_1` is everything. A subset is stored
//! column by column as a threshold: `from(n)` means `{C_{p,m} : m ≥ n}`.

use std::collections::BTreeMap;
use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::Prime;

/// A chromatic height `n ≥ 2`, possibly infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Height {
    Finite(u32),
    Infinite,
}

impl Height {
    pub const BOTTOM: Height = Height::Finite(2);

    pub fn finite(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::Document(format!(
                "column heights start at 2, got {n}"
            )));
        }
        Ok(Height::Finite(n))
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Height::Finite(_))
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(n) => write!(f, "{n}"),
            Height::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Height {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Height::Finite(n) => s.serialize_u32(*n),
            Height::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Height {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(u32),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(n) => Height::finite(n).map_err(serde::de::Error::custom),
            Repr::Text(t) if t == "inf" => Ok(Height::Infinite),
            Repr::Text(t) => Err(serde::de::Error::custom(format!("bad height `{t}`"))),
        }
    }
}

/// A point of the chromatic model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChromaticPoint {
    Generic,
    At(Prime, Height),
}

/// The ambient space: an explicit list of primes, plus one symbolic column
/// standing for every other prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChromaticSpace {
    primes: Vec<Prime>,
}

impl ChromaticSpace {
    pub fn new(primes: impl IntoIterator<Item = Prime>) -> Self {
        let mut primes: Vec<Prime> = primes.into_iter().collect();
        primes.sort();
        primes.dedup();
        ChromaticSpace { primes }
    }

    pub fn primes(&self) -> &[Prime] {
        &self.primes
    }
}

/// A subset of the chromatic model; see the module docs for the encoding.
///
/// Invariant: if the generic point is included then every column, including
/// the default, is `from(2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChromaticSubset {
    columns: BTreeMap<Prime, Option<Height>>,
    default: Option<Height>,
    generic: bool,
}

impl ChromaticSubset {
    pub fn new(
        columns: BTreeMap<Prime, Option<Height>>,
        default: Option<Height>,
        generic: bool,
    ) -> Result<Self> {
        if generic
            && (default != Some(Height::BOTTOM)
                || columns.values().any(|c| *c != Some(Height::BOTTOM)))
        {
            return Err(Error::Document(
                "a subset containing the generic point must contain every column from height 2"
                    .into(),
            ));
        }
        Ok(ChromaticSubset {
            columns,
            default,
            generic,
        })
    }

    pub fn empty() -> Self {
        ChromaticSubset {
            columns: BTreeMap::new(),
            default: None,
            generic: false,
        }
    }

    pub fn whole() -> Self {
        ChromaticSubset {
            columns: BTreeMap::new(),
            default: Some(Height::BOTTOM),
            generic: true,
        }
    }

    /// `closure({C_{p,n}})`.
    pub fn point_closure(p: Prime, n: Height) -> Self {
        ChromaticSubset {
            columns: BTreeMap::from([(p, Some(n))]),
            default: None,
            generic: false,
        }
    }

    /// `⋃_{q≠p} closure({C_{q,2}})`: the subset whose finite localization is
    /// localization at `p`.
    pub fn away_from(p: Prime) -> Self {
        ChromaticSubset {
            columns: BTreeMap::from([(p, None)]),
            default: Some(Height::BOTTOM),
            generic: false,
        }
    }

    pub fn columns(&self) -> &BTreeMap<Prime, Option<Height>> {
        &self.columns
    }

    pub fn default_threshold(&self) -> Option<Height> {
        self.default
    }

    pub fn includes_generic(&self) -> bool {
        self.generic
    }

    /// Threshold of the column at `p`: explicit if listed, else the default.
    pub fn threshold(&self, p: Prime) -> Option<Height> {
        self.columns.get(&p).copied().unwrap_or(self.default)
    }

    pub fn contains(&self, point: ChromaticPoint) -> bool {
        match point {
            ChromaticPoint::Generic => self.generic,
            ChromaticPoint::At(p, n) => self.threshold(p).is_some_and(|t| t <= n),
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.generic && self.default.is_none() && self.columns.values().all(Option::is_none)
    }

    pub fn is_whole(&self) -> bool {
        self.generic
    }

    /// Thresholds in play: every explicitly listed column, plus the default.
    fn all_thresholds(&self) -> impl Iterator<Item = Option<Height>> + '_ {
        self.columns
            .values()
            .copied()
            .chain(std::iter::once(self.default))
    }

    pub fn union(&self, other: &Self) -> Self {
        let keys: Vec<Prime> = self
            .columns
            .keys()
            .chain(other.columns.keys())
            .copied()
            .collect();
        let min = |a: Option<Height>, b: Option<Height>| match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) | (None, x) => x,
        };
        ChromaticSubset {
            columns: keys
                .into_iter()
                .map(|p| (p, min(self.threshold(p), other.threshold(p))))
                .collect(),
            default: min(self.default, other.default),
            generic: self.generic || other.generic,
        }
    }

    pub fn to_document(&self) -> ChromaticDocument {
        ChromaticDocument {
            columns: self
                .columns
                .iter()
                .map(|(p, t)| (p.to_string(), t.map(|from| Threshold { from })))
                .collect(),
            default: self.default.map(|from| Threshold { from }),
            generic: self.generic,
        }
    }
}

/// `{"from": n}` with `n` an integer ≥ 2 or `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Threshold {
    pub from: Height,
}

/// JSON form of a [`ChromaticSubset`]:
/// `{"columns":{"2":{"from":2},"5":null},"default":{"from":2},"generic":false}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChromaticDocument {
    pub columns: IndexMap<String, Option<Threshold>>,
    pub default: Option<Threshold>,
    pub generic: bool,
}

impl TryFrom<ChromaticDocument> for ChromaticSubset {
    type Error = Error;

    fn try_from(doc: ChromaticDocument) -> Result<Self> {
        let mut columns = BTreeMap::new();
        for (key, t) in doc.columns {
            let p: u64 = key
                .parse()
                .map_err(|_| Error::Document(format!("column key `{key}` is not a prime")))?;
            columns.insert(Prime::new(p)?, t.map(|t| t.from));
        }
        ChromaticSubset::new(columns, doc.default.map(|t| t.from), doc.generic)
    }
}

impl Serialize for ChromaticSubset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_document().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ChromaticSubset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = ChromaticDocument::deserialize(d)?;
        ChromaticSubset::try_from(doc).map_err(serde::de::Error::custom)
    }
}

/// Compactness locus of the finite localization of `SH` away from a
/// Thomason subset `Y`: every point whose closure avoids `Y`.
///
/// Columns of `space` are always listed explicitly in the result. The
/// generic point survives only when `Y` is empty.
pub fn sh_localization_locus(
    space: &ChromaticSpace,
    y: &ChromaticSubset,
) -> Result<ChromaticSubset> {
    if y.includes_generic() && !y.is_whole() {
        return Err(Error::IllegalThomason(
            "contains the generic point but not the whole space".into(),
        ));
    }
    if y.all_thresholds().any(|t| t == Some(Height::Infinite)) {
        return Err(Error::IllegalThomason(
            "a column starting at infinite height is closed but not Thomason".into(),
        ));
    }
    // Every column closure contains C_{p,∞}, so a column survives only if Y
    // misses it entirely.
    let survive = |t: Option<Height>| match t {
        None => Some(Height::BOTTOM),
        Some(_) => None,
    };
    let columns = space
        .primes()
        .iter()
        .chain(y.columns.keys())
        .map(|&p| (p, survive(y.threshold(p))))
        .collect();
    let generic = y.is_empty();
    ChromaticSubset::new(columns, survive(y.default), generic)
}
