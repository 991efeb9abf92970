//! Named groups: `C<n>`, `D<2n>`, `S<n>`, `A<n>` and `C<n>xC<m>`.

use super::perm::Permutation;
use super::perm_group::{Caps, PermGroup};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogName {
    Cyclic(usize),
    /// Dihedral group of the given order (`D10` has order 10).
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    CyclicProduct(usize, usize),
}

impl CatalogName {
    pub fn parse(name: &str) -> Option<Self> {
        let name = name.trim();
        let num = |s: &str| s.parse::<usize>().ok().filter(|&n| n >= 1);
        if let Some((a, b)) = name.split_once(['x', 'X']) {
            let n = num(a.strip_prefix('C')?)?;
            let m = num(b.strip_prefix('C')?)?;
            return Some(CatalogName::CyclicProduct(n, m));
        }
        let (head, tail) = name.split_at(name.find(|c: char| c.is_ascii_digit())?);
        let n = num(tail)?;
        match head {
            "C" => Some(CatalogName::Cyclic(n)),
            "D" if n % 2 == 0 => Some(CatalogName::Dihedral(n)),
            "S" => Some(CatalogName::Symmetric(n)),
            "A" => Some(CatalogName::Alternating(n)),
            _ => None,
        }
    }

    /// Order of the named group, without building it.
    pub fn order(self) -> usize {
        match self {
            CatalogName::Cyclic(n) | CatalogName::Dihedral(n) => n,
            CatalogName::Symmetric(n) => (1..=n).product(),
            CatalogName::Alternating(n) => ((1..=n).product::<usize>() / 2).max(1),
            CatalogName::CyclicProduct(n, m) => n * m,
        }
    }

    pub fn build(self, caps: Caps) -> Result<PermGroup> {
        if self.order() > caps.max_order {
            return Err(Error::CapExceeded {
                what: "group order",
                size: self.order(),
                limit: caps.max_order,
            });
        }
        let (degree, cycles): (usize, Vec<Vec<Vec<usize>>>) = match self {
            CatalogName::Cyclic(n) => (n, vec![vec![(0..n).collect()]]),
            CatalogName::Dihedral(2) => (2, vec![vec![vec![0, 1]]]),
            CatalogName::Dihedral(4) => (
                4,
                vec![vec![vec![0, 1], vec![2, 3]], vec![vec![0, 2], vec![1, 3]]],
            ),
            CatalogName::Dihedral(order) => {
                let n = order / 2;
                let reflection = (1..n)
                    .map(|i| (i, n - i))
                    .filter(|(i, j)| i < j)
                    .map(|(i, j)| vec![i, j])
                    .collect();
                (n, vec![vec![(0..n).collect()], reflection])
            }
            CatalogName::Symmetric(n) if n < 2 => (n, vec![]),
            CatalogName::Symmetric(n) => (n, vec![vec![vec![0, 1]], vec![(0..n).collect()]]),
            CatalogName::Alternating(n) => (
                n,
                (0..n.saturating_sub(2))
                    .map(|i| vec![vec![i, i + 1, i + 2]])
                    .collect(),
            ),
            CatalogName::CyclicProduct(n, m) => (
                n + m,
                vec![vec![(0..n).collect()], vec![(n..n + m).collect()]],
            ),
        };
        let gens = cycles
            .iter()
            .map(|c| {
                let c: Vec<Vec<usize>> = c.iter().filter(|c| c.len() > 1).cloned().collect();
                Permutation::from_cycles(degree, &c)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|p| !p.is_identity())
            .collect();
        PermGroup::from_generators_with_caps(degree, gens, caps)
    }
}

/// Builds a catalog group with the default caps.
pub fn group(name: &str) -> Result<PermGroup> {
    CatalogName::parse(name)
        .ok_or_else(|| Error::UnknownGroup(name.to_string()))?
        .build(Caps::default())
}

/// Names of the builtin catalog with order at most `max_order`:
/// `C_n` (n ≤ 64), `D_2n` (2 ≤ n ≤ 32), `S_n` (2 ≤ n ≤ 5), `A_n` (3 ≤ n ≤ 5),
/// `C_n×C_m` (2 ≤ n ≤ m, nm ≤ 64).
pub fn builtin_names(max_order: usize) -> Vec<String> {
    let mut names = Vec::new();
    for n in 1..=64 {
        names.push(format!("C{n}"));
    }
    for n in 2..=32 {
        names.push(format!("D{}", 2 * n));
    }
    for n in 2..=5 {
        names.push(format!("S{n}"));
    }
    for n in 3..=5 {
        names.push(format!("A{n}"));
    }
    for n in 2..=8 {
        for m in n..=64 / n {
            names.push(format!("C{n}xC{m}"));
        }
    }
    names
        .into_iter()
        .filter(|name| {
            CatalogName::parse(name)
                .expect("builtin names parse")
                .order()
                <= max_order
        })
        .collect()
}
