//! Loci inside the symbolic spectrum of `SH(G)^c` for a finite group `G`.
//!
//! The spectrum has points `P(H,p,n)` for each conjugacy class `H`, prime `p`
//! and height `2 ≤ n ≤ ∞`, and one point `P(H,1)` per class shared by all
//! primes. Every locus computed here is uniform in `n ≥ 2`, so a locus is
//! stored as one flag per `(class, prime)` column plus one flag per class
//! for the height-one point. Primes not dividing `|G|` all behave the same
//! way and share a single `generic` column.

mod document;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{
    family_from_predicate, is_p_perfect, p_residual, prime_divisors, Caps, FamilyKind, PermGroup,
    Prime, Subgroup, SubgroupLattice,
};
use crate::space::{ChromaticSubset, Height};

pub use document::{class_labels, ClassEntry, LocusDocument, LocusKind};

/// A column label: an explicit prime, or the tag standing for all primes
/// not listed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimeTag {
    Prime(Prime),
    Generic,
}

impl fmt::Display for PrimeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeTag::Prime(p) => write!(f, "{p}"),
            PrimeTag::Generic => f.write_str("generic"),
        }
    }
}

impl std::str::FromStr for PrimeTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "generic" {
            return Ok(PrimeTag::Generic);
        }
        let p: u64 = s
            .parse()
            .map_err(|_| Error::Document(format!("bad column key `{s}`")))?;
        Ok(PrimeTag::Prime(Prime::new(p)?))
    }
}

/// The symbolic spectrum of `SH(G)^c`: subgroup classes of `G` and the
/// column tags (primes dividing `|G|`, any extra primes, then `generic`).
#[derive(Debug)]
pub struct EqSpectrum {
    lattice: Arc<SubgroupLattice>,
    tags: Vec<PrimeTag>,
}

impl EqSpectrum {
    pub fn new(lattice: Arc<SubgroupLattice>) -> Self {
        Self::with_extra_primes(lattice, [])
    }

    /// Lists `extra` primes as explicit columns in addition to the divisors
    /// of `|G|`.
    pub fn with_extra_primes(
        lattice: Arc<SubgroupLattice>,
        extra: impl IntoIterator<Item = Prime>,
    ) -> Self {
        let mut primes = prime_divisors(lattice.group().order());
        primes.extend(extra);
        primes.sort();
        primes.dedup();
        let tags = primes
            .into_iter()
            .map(PrimeTag::Prime)
            .chain(std::iter::once(PrimeTag::Generic))
            .collect();
        EqSpectrum { lattice, tags }
    }

    pub fn from_group(group: PermGroup, caps: Caps) -> Result<Arc<Self>> {
        let lattice = SubgroupLattice::new(Arc::new(group), caps)?;
        Ok(Arc::new(Self::new(Arc::new(lattice))))
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    pub fn group(&self) -> &PermGroup {
        self.lattice.group()
    }

    pub fn tags(&self) -> &[PrimeTag] {
        &self.tags
    }

    pub fn num_classes(&self) -> usize {
        self.lattice.len()
    }

    pub fn primes(&self) -> impl Iterator<Item = Prime> + '_ {
        self.tags.iter().filter_map(|t| match t {
            PrimeTag::Prime(p) => Some(*p),
            PrimeTag::Generic => None,
        })
    }

    /// Column holding prime `p`: its own if listed, otherwise `generic`.
    pub fn column_of(&self, p: Prime) -> usize {
        self.tags
            .iter()
            .position(|t| *t == PrimeTag::Prime(p))
            .unwrap_or(self.tags.len() - 1)
    }
}

impl PartialEq for EqSpectrum {
    fn eq(&self, other: &Self) -> bool {
        self.tags == other.tags && self.group() == other.group()
    }
}

/// A point of the symbolic equivariant spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EqPoint {
    /// `P(H,1)`.
    HeightOne { class: usize },
    /// `P(H,p,n)` with `n ≥ 2`.
    Tower {
        class: usize,
        prime: Prime,
        height: Height,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Row {
    columns: Vec<bool>,
    height_one: bool,
}

/// A subset of an [`EqSpectrum`] that is uniform in heights `n ≥ 2`.
///
/// Invariant: a class whose height-one point is included has every column
/// included.
#[derive(Clone, Debug)]
pub struct EqLocus {
    spectrum: Arc<EqSpectrum>,
    rows: Vec<Row>,
}

impl PartialEq for EqLocus {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && *self.spectrum == *other.spectrum
    }
}

impl EqLocus {
    pub fn empty(spectrum: &Arc<EqSpectrum>) -> Self {
        Self::filled(spectrum, false)
    }

    pub fn whole(spectrum: &Arc<EqSpectrum>) -> Self {
        Self::filled(spectrum, true)
    }

    fn filled(spectrum: &Arc<EqSpectrum>, value: bool) -> Self {
        let row = Row {
            columns: vec![value; spectrum.tags().len()],
            height_one: value,
        };
        EqLocus {
            spectrum: Arc::clone(spectrum),
            rows: vec![row; spectrum.num_classes()],
        }
    }

    /// Builds a locus from explicit flags: one `(columns, height_one)` per
    /// class, columns in tag order.
    pub fn from_rows(spectrum: &Arc<EqSpectrum>, rows: Vec<(Vec<bool>, bool)>) -> Result<Self> {
        if rows.len() != spectrum.num_classes() {
            return Err(Error::Document(format!(
                "expected {} classes, got {}",
                spectrum.num_classes(),
                rows.len()
            )));
        }
        let mut out = Vec::with_capacity(rows.len());
        for (i, (columns, height_one)) in rows.into_iter().enumerate() {
            if columns.len() != spectrum.tags().len() {
                return Err(Error::Document(format!(
                    "class {i}: wrong number of columns"
                )));
            }
            if height_one && !columns.iter().all(|&c| c) {
                return Err(Error::Document(format!(
                    "class {i}: height-one point included without every column"
                )));
            }
            out.push(Row {
                columns,
                height_one,
            });
        }
        Ok(EqLocus {
            spectrum: Arc::clone(spectrum),
            rows: out,
        })
    }

    /// Evaluates a per-column criterion; the height-one point is included
    /// exactly when every column is.
    pub fn from_column_criterion(
        spectrum: &Arc<EqSpectrum>,
        mut criterion: impl FnMut(usize, PrimeTag) -> bool,
    ) -> Self {
        let rows = (0..spectrum.num_classes())
            .map(|class| {
                let columns: Vec<bool> = spectrum
                    .tags()
                    .iter()
                    .map(|&t| criterion(class, t))
                    .collect();
                let height_one = columns.iter().all(|&c| c);
                Row {
                    columns,
                    height_one,
                }
            })
            .collect();
        EqLocus {
            spectrum: Arc::clone(spectrum),
            rows,
        }
    }

    pub fn spectrum(&self) -> &Arc<EqSpectrum> {
        &self.spectrum
    }

    /// Whether `P(H,p,n)` is included for all `2 ≤ n ≤ ∞`, for the column at
    /// position `tag` of the spectrum's tag list.
    pub fn tall_column(&self, class: usize, tag: usize) -> bool {
        self.rows[class].columns[tag]
    }

    pub fn column(&self, class: usize, tag: PrimeTag) -> bool {
        let i = match tag {
            PrimeTag::Prime(p) => self.spectrum.column_of(p),
            PrimeTag::Generic => self.spectrum.tags().len() - 1,
        };
        self.rows[class].columns[i]
    }

    pub fn includes_height_one(&self, class: usize) -> bool {
        self.rows[class].height_one
    }

    pub fn contains(&self, point: EqPoint) -> bool {
        match point {
            EqPoint::HeightOne { class } => self.rows[class].height_one,
            EqPoint::Tower { class, prime, .. } => {
                self.rows[class].columns[self.spectrum.column_of(prime)]
            }
        }
    }

    pub fn is_whole(&self) -> bool {
        self.rows.iter().all(|r| r.height_one)
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|r| r.columns.iter().all(|&c| !c))
    }

    /// Classes with at least one point in the locus.
    pub fn touched_classes(&self) -> Vec<usize> {
        (0..self.rows.len())
            .filter(|&i| self.rows[i].columns.iter().any(|&c| c))
            .collect()
    }

    fn zip_with(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Result<Self> {
        if *self.spectrum != *other.spectrum {
            return Err(Error::SpectrumMismatch);
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| Row {
                columns: a
                    .columns
                    .iter()
                    .zip(&b.columns)
                    .map(|(&x, &y)| op(x, y))
                    .collect(),
                height_one: op(a.height_one, b.height_one),
            })
            .collect();
        Ok(EqLocus {
            spectrum: Arc::clone(&self.spectrum),
            rows,
        })
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a && b)
    }

    /// Whether `other ⊆ self`.
    pub fn contains_locus(&self, other: &Self) -> Result<bool> {
        let implied = other.zip_with(self, |a, b| !a || b)?;
        Ok(implied
            .rows
            .iter()
            .all(|r| r.height_one && r.columns.iter().all(|&c| c)))
    }
}

fn normal_representative(spectrum: &EqSpectrum, normal: usize) -> Result<&Subgroup> {
    let class = spectrum.lattice().class(normal);
    if !class.is_normal() {
        return Err(Error::NotNormal);
    }
    Ok(class.representative())
}

/// Inflation criterion at one column: `N ∩ H ⊆ O^p(H)`. For primes not
/// dividing `|G|`, `O^p(H) = H` and the criterion holds.
pub fn inflation_criterion(group: &PermGroup, n: &Subgroup, h: &Subgroup, tag: PrimeTag) -> bool {
    match tag {
        PrimeTag::Prime(p) => n.intersection(h).is_subgroup_of(&p_residual(group, h, p)),
        PrimeTag::Generic => n.intersection(h).is_subgroup_of(h),
    }
}

/// Geometric fixed point criterion at one column: `O^p(H) ⊇ N`, which for
/// primes not dividing `|G|` reads `H ⊇ N`.
pub fn geometric_fixed_criterion(
    group: &PermGroup,
    n: &Subgroup,
    h: &Subgroup,
    tag: PrimeTag,
) -> bool {
    match tag {
        PrimeTag::Prime(p) => n.is_subgroup_of(&p_residual(group, h, p)),
        PrimeTag::Generic => n.is_subgroup_of(h),
    }
}

/// Compactness locus of inflation `SH(G/N) → SH(G)`.
pub fn inflation_locus(spectrum: &Arc<EqSpectrum>, normal: usize) -> Result<EqLocus> {
    let n = normal_representative(spectrum, normal)?;
    let lattice = spectrum.lattice();
    Ok(EqLocus::from_column_criterion(spectrum, |class, tag| {
        inflation_criterion(
            lattice.group(),
            n,
            lattice.class(class).representative(),
            tag,
        )
    }))
}

/// Compactness locus of the relative geometric fixed points
/// `SH(G) → SH(G/N)`.
pub fn geometric_fixed_locus(spectrum: &Arc<EqSpectrum>, normal: usize) -> Result<EqLocus> {
    let n = normal_representative(spectrum, normal)?;
    let lattice = spectrum.lattice();
    Ok(EqLocus::from_column_criterion(spectrum, |class, tag| {
        geometric_fixed_criterion(
            lattice.group(),
            n,
            lattice.class(class).representative(),
            tag,
        )
    }))
}

/// Classes containing `N`: the part of the spectrum identified with the
/// spectrum of `SH(G/N)^c` under geometric fixed points.
pub fn containing_classes(spectrum: &EqSpectrum, normal: usize) -> Result<Vec<bool>> {
    let n = normal_representative(spectrum, normal)?;
    Ok(spectrum
        .lattice()
        .classes()
        .iter()
        .map(|c| n.is_subgroup_of(c.representative()))
        .collect())
}

/// Compactness locus of the absolute geometric fixed points
/// `Φ^H : SH(G) → SH`, as a subset of the chromatic model.
///
/// The column at `p` is present iff `H` is `p`-perfect; primes not dividing
/// `|H|` are always present. The generic point is present iff `H` is
/// `p`-perfect for every `p`.
pub fn absolute_geometric_fixed_locus(group: &PermGroup, h: &Subgroup) -> ChromaticSubset {
    let columns: std::collections::BTreeMap<Prime, Option<Height>> = prime_divisors(h.order())
        .into_iter()
        .map(|p| (p, is_p_perfect(group, h, p).then_some(Height::BOTTOM)))
        .collect();
    let generic = columns.values().all(Option::is_some);
    ChromaticSubset::new(columns, Some(Height::BOTTOM), generic)
        .expect("generic is set only when every column is full")
}

/// Support of the orbit `G/H_+`: every point over every class subconjugate
/// to `H`.
pub fn orbit_support(spectrum: &Arc<EqSpectrum>, class: usize) -> EqLocus {
    let lattice = spectrum.lattice();
    EqLocus::from_column_criterion(spectrum, |k, _| lattice.is_subconjugate(k, class))
}

/// Union of orbit supports over the family `F(N) = {K : K ∩ N = 1}`: the
/// locus corresponding to `N`-free `G`-spectra.
pub fn n_free_locus(spectrum: &Arc<EqSpectrum>, normal: usize) -> Result<EqLocus> {
    let family = family_from_predicate(spectrum.lattice(), normal, FamilyKind::NFree)?;
    family
        .members()
        .iter()
        .try_fold(EqLocus::empty(spectrum), |acc, &h| {
            acc.union(&orbit_support(spectrum, h))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    fn spectrum(name: &str) -> Arc<EqSpectrum> {
        EqSpectrum::from_group(catalog::group(name).unwrap(), Caps::default()).unwrap()
    }

    fn p(n: u64) -> PrimeTag {
        PrimeTag::Prime(Prime::new(n).unwrap())
    }

    // (class, [(tag, expected)], height_one)
    fn assert_rows(locus: &EqLocus, expected: &[(usize, &[(PrimeTag, bool)], bool)]) {
        for (class, cols, h1) in expected {
            for (tag, want) in *cols {
                assert_eq!(locus.column(*class, *tag), *want, "class {class} tag {tag}");
            }
            assert_eq!(
                locus.includes_height_one(*class),
                *h1,
                "class {class} height one"
            );
        }
    }

    #[test]
    fn tags_are_divisors_then_generic() {
        let s = spectrum("D10");
        assert_eq!(s.tags(), &[p(2), p(5), PrimeTag::Generic]);
        assert_eq!(s.column_of(Prime::new(7).unwrap()), 2);
    }

    #[test]
    fn trivial_normal_subgroup_gives_whole_spectrum() {
        let s = spectrum("D10");
        assert!(inflation_locus(&s, 0).unwrap().is_whole());
        assert!(geometric_fixed_locus(&s, 0).unwrap().is_whole());
        assert!(n_free_locus(&s, 0).unwrap().is_whole());
    }

    #[test]
    fn inflation_for_cyclic_prime_order() {
        for q in [2u64, 3, 5, 7] {
            let s = spectrum(&format!("C{q}"));
            let z = inflation_locus(&s, 1).unwrap();
            assert_rows(
                &z,
                &[
                    (0, &[(p(q), true), (PrimeTag::Generic, true)], true),
                    (1, &[(p(q), false), (PrimeTag::Generic, true)], false),
                ],
            );
        }
    }

    #[test]
    fn inflation_d10() {
        let s = spectrum("D10");
        let g = PrimeTag::Generic;
        let full = inflation_locus(&s, 3).unwrap();
        assert_rows(
            &full,
            &[
                (0, &[(p(2), true), (p(5), true), (g, true)], true),
                (1, &[(p(2), false), (p(5), true), (g, true)], false),
                (2, &[(p(2), true), (p(5), false), (g, true)], false),
                (3, &[(p(2), false), (p(5), true), (g, true)], false),
            ],
        );
        let c5 = inflation_locus(&s, 2).unwrap();
        assert_rows(
            &c5,
            &[
                (0, &[(p(2), true), (p(5), true), (g, true)], true),
                (1, &[(p(2), true), (p(5), true), (g, true)], true),
                (2, &[(p(2), true), (p(5), false), (g, true)], false),
                (3, &[(p(2), true), (p(5), true), (g, true)], true),
            ],
        );
    }

    #[test]
    fn geometric_fixed_points() {
        let g = PrimeTag::Generic;
        for q in [2u64, 3, 5] {
            let s = spectrum(&format!("C{q}"));
            let z = geometric_fixed_locus(&s, 1).unwrap();
            assert_rows(
                &z,
                &[
                    (0, &[(p(q), false), (g, false)], false),
                    (1, &[(p(q), false), (g, true)], false),
                ],
            );
        }
        let s = spectrum("D10");
        let z = geometric_fixed_locus(&s, 2).unwrap();
        assert_rows(
            &z,
            &[
                (0, &[(p(2), false), (p(5), false), (g, false)], false),
                (1, &[(p(2), false), (p(5), false), (g, false)], false),
                (2, &[(p(2), true), (p(5), false), (g, true)], false),
                (3, &[(p(2), true), (p(5), true), (g, true)], true),
            ],
        );
    }

    #[test]
    fn absolute_fixed_points() {
        let c1 = catalog::group("C1").unwrap();
        assert!(absolute_geometric_fixed_locus(&c1, &Subgroup::whole(&c1)).is_whole());

        let c2 = catalog::group("C2").unwrap();
        let z = absolute_geometric_fixed_locus(&c2, &Subgroup::whole(&c2));
        let two = Prime::new(2).unwrap();
        assert_eq!(z.threshold(two), None);
        assert_eq!(z.threshold(Prime::new(3).unwrap()), Some(Height::BOTTOM));
        assert!(!z.includes_generic());

        let a5 = catalog::group("A5").unwrap();
        assert!(absolute_geometric_fixed_locus(&a5, &Subgroup::whole(&a5)).is_whole());
    }

    #[test]
    fn orbit_supports() {
        let s = spectrum("D10");
        assert!(orbit_support(&s, 3).is_whole());
        assert_eq!(orbit_support(&s, 0).touched_classes(), vec![0]);
        assert_eq!(orbit_support(&s, 1).touched_classes(), vec![0, 1]);
        assert!(orbit_support(&s, 1).includes_height_one(1));
    }

    #[test]
    fn n_free_and_comparison() {
        let s = spectrum("D10");
        assert_eq!(n_free_locus(&s, 3).unwrap().touched_classes(), vec![0]);
        assert_eq!(n_free_locus(&s, 2).unwrap().touched_classes(), vec![0, 1]);
        for n in [2, 3] {
            let infl = inflation_locus(&s, n).unwrap();
            let free = n_free_locus(&s, n).unwrap();
            assert!(infl.contains_locus(&free).unwrap());
            assert!(!free.contains_locus(&infl).unwrap());
        }
        assert_eq!(n_free_locus(&s, 1), Err(Error::NotNormal));
    }

    #[test]
    fn set_algebra() {
        let s = spectrum("D10");
        let x = inflation_locus(&s, 3).unwrap();
        assert_eq!(x.union(&EqLocus::empty(&s)).unwrap(), x);
        assert_eq!(x.intersect(&x).unwrap(), x);
        let other = spectrum("C5");
        assert_eq!(
            x.union(&EqLocus::empty(&other)),
            Err(Error::SpectrumMismatch)
        );
    }

    #[test]
    fn from_rows_checks_invariant() {
        let s = spectrum("C2");
        assert!(
            EqLocus::from_rows(&s, vec![(vec![true, false], true), (vec![false; 2], false)])
                .is_err()
        );
        assert!(
            EqLocus::from_rows(&s, vec![(vec![true, true], true), (vec![false; 2], false)]).is_ok()
        );
    }
}
