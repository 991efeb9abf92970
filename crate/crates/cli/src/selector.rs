//! Resolving `--normal` and `--subgroup` arguments to subgroup classes.
//!
//! Accepted forms, tried in order:
//!
//! - `1` and `G` for the trivial and whole group;
//! - `ORDER:INDEX`, the INDEX-th (0-based) candidate class of that order;
//! - an element list `(1 2 3); (1 2)`, the subgroup those elements generate;
//! - a class label as printed in the JSON output (`C2`, `H4a`, …);
//! - a catalog name (`C5`, `C2xC2`, `A4`), matched by order and element
//!   orders.
//!
//! A name that matches more than one class is ambiguous.

use std::collections::BTreeMap;

use locus_core::group::{
    catalog::CatalogName, Caps, PermGroup, Permutation, Subgroup, SubgroupLattice,
};
use locus_core::Error;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Want {
    Normal,
    Any,
}

pub fn resolve(
    lattice: &SubgroupLattice,
    labels: &[String],
    text: &str,
    want: Want,
) -> Result<usize, CliError> {
    let text = text.trim();
    let group = lattice.group();
    let candidates: Vec<usize> = match want {
        Want::Normal => lattice.normal_classes().collect(),
        Want::Any => (0..lattice.len()).collect(),
    };
    let check = |i: usize| -> Result<usize, CliError> {
        if want == Want::Normal && !lattice.class(i).is_normal() {
            return Err(Error::NotNormal.into());
        }
        Ok(i)
    };

    if text == "1" {
        return Ok(lattice.trivial_class());
    }
    if text == "G" {
        return Ok(lattice.whole_class());
    }
    if let Some((order, index)) = text.split_once(':') {
        let order: usize = order
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad order in selector `{text}`")))?;
        let index: usize = index
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad index in selector `{text}`")))?;
        let of_order: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&i| lattice.class(i).order() == order)
            .collect();
        return of_order.get(index).copied().ok_or_else(|| {
            CliError::Usage(format!(
                "selector `{text}`: {} candidate class(es) of order {order}",
                of_order.len()
            ))
        });
    }
    if text.starts_with('(') {
        let h = element_list(group, text)?;
        let class = lattice
            .class_of(&h)
            .expect("every subgroup lies in some class");
        if want == Want::Normal && !h.is_normal_in(group, &Subgroup::whole(group)) {
            return Err(Error::NotNormal.into());
        }
        return Ok(class);
    }
    if let Some(i) = labels.iter().position(|l| l == text) {
        return check(i);
    }
    if let Some(name) = CatalogName::parse(text).filter(|n| n.order() <= group.order()) {
        let target = name.build(Caps::default()).map_err(CliError::from)?;
        let profile = order_profile(&target, (0..target.order()).collect::<Vec<_>>());
        let matches: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&i| {
                let rep = lattice.class(i).representative();
                rep.order() == target.order()
                    && order_profile(group, rep.elements().to_vec()) == profile
            })
            .collect();
        return match matches.as_slice() {
            [i] => Ok(*i),
            [] => Err(CliError::Usage(format!(
                "no {}subgroup class matches `{text}`",
                if want == Want::Normal { "normal " } else { "" }
            ))),
            many => Err(CliError::Ambiguous(format!(
                "`{text}` matches {} classes ({}); use ORDER:INDEX or an element list",
                many.len(),
                many.iter()
                    .map(|&i| labels[i].as_str())
                    .collect::<Vec<_>>()
                    .join(", ")
            ))),
        };
    }
    Err(CliError::Usage(format!(
        "cannot read subgroup selector `{text}`"
    )))
}

/// Generators in 1-based cycle notation separated by `;`.
fn element_list(group: &PermGroup, text: &str) -> Result<Subgroup, CliError> {
    let mut gens = Vec::new();
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let p = Permutation::parse_cycles(group.degree(), part)?;
        let i = group
            .index_of(&p)
            .ok_or_else(|| CliError::Usage(format!("`{part}` is not an element of the group")))?;
        gens.push(i);
    }
    Ok(Subgroup::generated_by(group, gens))
}

fn order_profile(group: &PermGroup, elements: Vec<usize>) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for x in elements {
        *out.entry(group.element_order(x)).or_default() += 1;
    }
    out
}
