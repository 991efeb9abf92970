use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite spectral space, given by its specialization preorder.
///
/// `x ⤳ y` means `y` lies in the closure of `x`. The relation is stored
/// reflexively and transitively closed, and must be antisymmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    reach: Vec<Vec<bool>>,
}

impl FinitePoset {
    /// Builds the poset generated by the given specializations `(x, y)`,
    /// meaning `x ⤳ y`.
    pub fn new(names: Vec<String>, specializations: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::Document(format!("duplicate point `{name}`")));
            }
        }
        let mut reach = vec![vec![false; n]; n];
        for (i, row) in reach.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(x, y) in specializations {
            if x >= n || y >= n {
                return Err(Error::UnknownPoint(format!("#{}", x.max(y))));
            }
            reach[x][y] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if reach[i][k] {
                    for j in 0..n {
                        if reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if reach[i][j] && reach[j][i] {
                    return Err(Error::NotAntisymmetric(names[i].clone(), names[j].clone()));
                }
            }
        }
        Ok(FinitePoset {
            names,
            index,
            reach,
        })
    }

    /// Anonymous points named `0, 1, …`.
    pub fn unnamed(n: usize, specializations: &[(usize, usize)]) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()).collect(), specializations)
    }

    /// Parses the text format: `point a` declares a point, `spec a b` says
    /// `a` specializes to `b`. `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut names = Vec::new();
        let mut index = HashMap::new();
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            match words.as_slice() {
                ["point", name] => {
                    if index.insert(name.to_string(), names.len()).is_some() {
                        return Err(Error::parse(line_no, format!("duplicate point `{name}`")));
                    }
                    names.push(name.to_string());
                }
                ["spec", a, b] => {
                    let lookup = |s: &str| {
                        index
                            .get(s)
                            .copied()
                            .ok_or_else(|| Error::parse(line_no, format!("unknown point `{s}`")))
                    };
                    edges.push((lookup(a)?, lookup(b)?));
                }
                _ => {
                    return Err(Error::parse(
                        line_no,
                        format!("expected `point NAME` or `spec A B`, got `{line}`"),
                    ))
                }
            }
        }
        Self::new(names, &edges)
    }

    /// Text form listing every point and the Hasse (covering) relations.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for name in &self.names {
            out.push_str(&format!("point {name}\n"));
        }
        for (x, y) in self.hasse_edges() {
            out.push_str(&format!("spec {} {}\n", self.names[x], self.names[y]));
        }
        out
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownPoint(name.to_string()))
    }

    pub fn specializes_to(&self, x: usize, y: usize) -> bool {
        self.reach[x][y]
    }

    /// `closure({x}) = {y : x ⤳ y}`.
    pub fn closure(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&y| self.reach[x][y])
    }

    pub fn points(&self) -> BTreeSet<usize> {
        (0..self.len()).collect()
    }

    pub fn is_specialization_closed(&self, set: &BTreeSet<usize>) -> bool {
        set.iter()
            .all(|&x| self.closure(x).all(|y| set.contains(&y)))
    }

    pub fn is_generization_closed(&self, set: &BTreeSet<usize>) -> bool {
        set.iter()
            .all(|&y| (0..self.len()).all(|x| !self.reach[x][y] || set.contains(&x)))
    }

    /// Covering pairs `x ⤳ y` with nothing strictly between.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x == y || !self.reach[x][y] {
                    continue;
                }
                let covered =
                    (0..n).any(|z| z != x && z != y && self.reach[x][z] && self.reach[z][y]);
                if !covered {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Length of the longest chain of proper generizations below each point
    /// (generic points sit at level 0).
    pub fn levels(&self) -> Vec<usize> {
        let n = self.len();
        let mut level = vec![0; n];
        // A topological order: fewer generizations first.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&y| (0..n).filter(|&x| self.reach[x][y]).count());
        for &y in &order {
            level[y] = (0..n)
                .filter(|&x| x != y && self.reach[x][y])
                .map(|x| level[x] + 1)
                .max()
                .unwrap_or(0);
        }
        level
    }

    /// Connected components of the comparability graph, each sorted, in
    /// order of their least point.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            comp[start] = id;
            while let Some(x) = stack.pop() {
                members.push(x);
                for y in 0..n {
                    if comp[y] == usize::MAX && (self.reach[x][y] || self.reach[y][x]) {
                        comp[y] = id;
                        stack.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}

/// What a [`PosetSubset`] promises about itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Closed,
    Open,
    Arbitrary,
}

/// A subset of a [`FinitePoset`], with its flavor checked at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetSubset {
    members: BTreeSet<usize>,
    flavor: Flavor,
}

impl PosetSubset {
    pub fn new(
        poset: &FinitePoset,
        members: impl IntoIterator<Item = usize>,
        flavor: Flavor,
    ) -> Result<Self> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&x| x >= poset.len()) {
            return Err(Error::UnknownPoint(format!("#{bad}")));
        }
        match flavor {
            Flavor::Closed if !poset.is_specialization_closed(&members) => {
                return Err(Error::NotClosed)
            }
            Flavor::Open if !poset.is_generization_closed(&members) => {
                return Err(Error::FlavorMismatch(
                    "open subset is not generization-closed",
                ))
            }
            _ => {}
        }
        Ok(PosetSubset { members, flavor })
    }

    pub fn arbitrary(
        poset: &FinitePoset,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        Self::new(poset, members, Flavor::Arbitrary)
    }

    pub fn closed(poset: &FinitePoset, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::new(poset, members, Flavor::Closed)
    }

    pub fn by_names<'a>(
        poset: &FinitePoset,
        names: impl IntoIterator<Item = &'a str>,
        flavor: Flavor,
    ) -> Result<Self> {
        let members = names
            .into_iter()
            .map(|n| poset.index_of(n))
            .collect::<Result<Vec<_>>>()?;
        Self::new(poset, members, flavor)
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(&x)
    }

    pub fn complement(&self, poset: &FinitePoset) -> BTreeSet<usize> {
        (0..poset.len())
            .filter(|x| !self.members.contains(x))
            .collect()
    }

    pub fn to_document(&self, poset: &FinitePoset) -> SubsetDocument {
        SubsetDocument {
            members: self
                .members
                .iter()
                .map(|&x| poset.name(x).to_string())
                .collect(),
            closed: poset.is_specialization_closed(&self.members),
        }
    }
}

/// JSON form of a poset subset: `{"members":[...],"closed":bool}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetDocument {
    pub members: Vec<String>,
    pub closed: bool,
}

impl SubsetDocument {
    pub fn to_subset(&self, poset: &FinitePoset) -> Result<PosetSubset> {
        let flavor = if self.closed {
            Flavor::Closed
        } else {
            Flavor::Arbitrary
        };
        PosetSubset::by_names(poset, self.members.iter().map(String::as_str), flavor)
    }
}

/// Compactness locus of the finite localization away from a closed `Y`:
/// `{x : closure(x) ⊆ X∖Y}`, the largest closed subset of `V = X∖Y`.
pub fn finite_localization_locus(poset: &FinitePoset, y: &PosetSubset) -> Result<PosetSubset> {
    if !poset.is_specialization_closed(y.members()) {
        return Err(Error::NotClosed);
    }
    let members = (0..poset.len()).filter(|&x| poset.closure(x).all(|z| !y.contains(z)));
    PosetSubset::closed(poset, members)
}

/// Whether `Y` is both closed and open. Finite localization at `Y` satisfies
/// Grothendieck–Neeman duality exactly in this case.
pub fn is_clopen(poset: &FinitePoset, y: &PosetSubset) -> bool {
    poset.is_specialization_closed(y.members()) && poset.is_generization_closed(y.members())
}

/// `{x : closure(x) ⊆ U}`: the largest specialization-closed subset of `U`.
pub fn largest_specialization_closed_inside(poset: &FinitePoset, u: &PosetSubset) -> PosetSubset {
    let members = (0..poset.len()).filter(|&x| poset.closure(x).all(|z| u.contains(z)));
    PosetSubset::closed(poset, members).expect("closure-contained points form a closed set")
}
