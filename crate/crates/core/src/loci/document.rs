use std::collections::HashMap;
use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::{EqLocus, EqSpectrum, PrimeTag};
use crate::error::{Error, Result};
use crate::group::SubgroupLattice;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocusKind {
    Inflation,
    GeometricFixedPoints,
    OrbitSupport,
    NFree,
}

/// JSON form of an [`EqLocus`]:
///
/// ```json
/// {"group":"D10","normal":"C5","kind":"inflation","classes":[
///   {"order":10,"label":"D10","class_size":1,"rep":"...",
///    "columns":{"2":true,"5":true,"generic":true},"height_one":true}]}
/// ```
///
/// Classes appear in canonical order; columns list primes ascending, then
/// `generic`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocusDocument {
    pub group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<String>,
    pub kind: LocusKind,
    pub classes: Vec<ClassEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassEntry {
    pub order: usize,
    pub label: String,
    pub class_size: usize,
    pub rep: String,
    pub columns: IndexMap<String, bool>,
    pub height_one: bool,
    /// Membership of the class in the ambient subset the locus sits inside,
    /// when there is one (for geometric fixed points: classes containing `N`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<bool>,
}

/// Display labels for the classes of a lattice: `1` for the trivial class,
/// the group's name for the whole group, `C<n>` for other cyclic classes and
/// `H<n>` for the rest, with `a`, `b`, … appended where labels collide.
pub fn class_labels(lattice: &SubgroupLattice, group_name: &str) -> Vec<String> {
    let group = lattice.group();
    let whole = lattice.whole_class();
    let raw: Vec<String> = lattice
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if i == 0 {
                "1".to_string()
            } else if i == whole {
                group_name.to_string()
            } else if c.representative().is_cyclic(group) {
                format!("C{}", c.order())
            } else {
                format!("H{}", c.order())
            }
        })
        .collect();
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for l in &raw {
        *counts.entry(l.as_str()).or_default() += 1;
    }
    let mut seen: HashMap<&str, usize> = HashMap::new();
    raw.iter()
        .map(|l| {
            if counts[l.as_str()] == 1 {
                return l.clone();
            }
            let k = seen.entry(l.as_str()).or_default();
            let suffix = suffix(*k);
            *k += 1;
            format!("{l}{suffix}")
        })
        .collect()
}

fn suffix(mut k: usize) -> String {
    let mut out = Vec::new();
    loop {
        out.push(b'a' + (k % 26) as u8);
        if k < 26 {
            break;
        }
        k = k / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).expect("ascii")
}

impl LocusDocument {
    pub fn from_locus(locus: &EqLocus, group_name: &str, kind: LocusKind) -> Self {
        let spectrum = locus.spectrum();
        let lattice = spectrum.lattice();
        let labels = class_labels(lattice, group_name);
        let classes = lattice
            .classes()
            .iter()
            .enumerate()
            .map(|(i, c)| ClassEntry {
                order: c.order(),
                label: labels[i].clone(),
                class_size: c.class_size(),
                rep: c.representative().describe(lattice.group()),
                columns: spectrum
                    .tags()
                    .iter()
                    .enumerate()
                    .map(|(t, tag)| (tag.to_string(), locus.tall_column(i, t)))
                    .collect(),
                height_one: locus.includes_height_one(i),
                ambient: None,
            })
            .collect();
        LocusDocument {
            group: group_name.to_string(),
            normal: None,
            subgroup: None,
            kind,
            classes,
        }
    }

    pub fn with_normal(mut self, name: impl Into<String>) -> Self {
        self.normal = Some(name.into());
        self
    }

    pub fn with_subgroup(mut self, name: impl Into<String>) -> Self {
        self.subgroup = Some(name.into());
        self
    }

    pub fn with_ambient(mut self, ambient: &[bool]) -> Self {
        for (entry, &a) in self.classes.iter_mut().zip(ambient) {
            entry.ambient = Some(a);
        }
        self
    }

    /// Column tags shared by all classes.
    pub fn tags(&self) -> Result<Vec<PrimeTag>> {
        let Some(first) = self.classes.first() else {
            return Ok(vec![PrimeTag::Generic]);
        };
        first.columns.keys().map(|k| k.parse()).collect()
    }

    /// Checks the structural invariants of the schema.
    pub fn validate(&self) -> Result<()> {
        if self.classes.is_empty() {
            return Err(Error::Document("no classes".into()));
        }
        let tags = self.tags()?;
        if tags.last() != Some(&PrimeTag::Generic) || !tags.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Document(
                "columns must list primes ascending, then `generic`".into(),
            ));
        }
        for (i, c) in self.classes.iter().enumerate() {
            let keys: Vec<PrimeTag> = c.columns.keys().map(|k| k.parse()).collect::<Result<_>>()?;
            if keys != tags {
                return Err(Error::Document(format!("class {i}: column keys differ")));
            }
            if c.height_one && !c.columns.values().all(|&v| v) {
                return Err(Error::Document(format!(
                    "class {i}: height-one point included without every column"
                )));
            }
            if c.ambient == Some(false) && (c.height_one || c.columns.values().any(|&v| v)) {
                return Err(Error::Document(format!(
                    "class {i}: locus leaves its ambient subset"
                )));
            }
        }
        Ok(())
    }

    /// Rebuilds the locus on `spectrum`, which must have the same classes
    /// and columns.
    pub fn to_locus(&self, spectrum: &Arc<EqSpectrum>) -> Result<EqLocus> {
        self.validate()?;
        if self.tags()? != spectrum.tags() {
            return Err(Error::SpectrumMismatch);
        }
        let lattice = spectrum.lattice();
        if self.classes.len() != lattice.len()
            || self
                .classes
                .iter()
                .zip(lattice.classes())
                .any(|(e, c)| e.order != c.order() || e.class_size != c.class_size())
        {
            return Err(Error::SpectrumMismatch);
        }
        EqLocus::from_rows(
            spectrum,
            self.classes
                .iter()
                .map(|c| (c.columns.values().copied().collect(), c.height_one))
                .collect(),
        )
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: LocusDocument =
            serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
        doc.validate()?;
        Ok(doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{catalog, Caps};
    use crate::loci::inflation_locus;

    #[test]
    fn labels() {
        let s = EqSpectrum::from_group(catalog::group("D10").unwrap(), Caps::default()).unwrap();
        assert_eq!(
            class_labels(s.lattice(), "D10"),
            vec!["1", "C2", "C5", "D10"]
        );
        let s = EqSpectrum::from_group(catalog::group("S4").unwrap(), Caps::default()).unwrap();
        let labels = class_labels(s.lattice(), "S4");
        assert!(labels.contains(&"C2a".to_string()));
        assert!(labels.contains(&"H4a".to_string()));
        assert!(labels.contains(&"C4".to_string()));
        assert_eq!(suffix(0), "a");
        assert_eq!(suffix(26), "aa");
    }

    #[test]
    fn json_round_trip() {
        let s = EqSpectrum::from_group(catalog::group("D10").unwrap(), Caps::default()).unwrap();
        let z = inflation_locus(&s, 2).unwrap();
        let doc = LocusDocument::from_locus(&z, "D10", LocusKind::Inflation).with_normal("C5");
        let json = doc.to_json();
        assert!(json.contains(
            r#""columns": {
        "2": true,
        "5": false,
        "generic": true
      }"#
        ));
        let back = LocusDocument::from_json(&json).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json(), json);
        assert_eq!(back.to_locus(&s).unwrap(), z);
    }

    #[test]
    fn validation_failures() {
        let s = EqSpectrum::from_group(catalog::group("C2").unwrap(), Caps::default()).unwrap();
        let z = inflation_locus(&s, 1).unwrap();
        let mut doc = LocusDocument::from_locus(&z, "C2", LocusKind::Inflation);
        doc.classes[1].height_one = true;
        assert!(doc.validate().is_err());
        let mut doc = LocusDocument::from_locus(&z, "C2", LocusKind::Inflation);
        doc.classes[0].columns.swap_indices(0, 1);
        assert!(doc.validate().is_err());
        let c3 = EqSpectrum::from_group(catalog::group("C3").unwrap(), Caps::default()).unwrap();
        let doc = LocusDocument::from_locus(&z, "C2", LocusKind::Inflation);
        assert_eq!(doc.to_locus(&c3), Err(Error::SpectrumMismatch));
    }
}
