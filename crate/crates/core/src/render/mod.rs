//! Figures of loci and posets as SVG 1.1, Graphviz DOT, or ASCII art.
//!
//! Equivariant loci are drawn as "flowers": one base point `P(H,1)` per
//! subgroup class with one chromatic tower per prime column above it.
//! Each tower shows heights 2 through 7, an ellipsis, and the point at
//! infinity. Shading has two levels: the locus itself (light) and an
//! ambient subset containing it (dark).

mod flower;
mod poset;

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::Prime;
use crate::loci::{LocusDocument, LocusKind};
use crate::space::{ChromaticSpace, ChromaticSubset, Height};

pub use poset::render_poset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Format {
    Svg,
    Dot,
    Ascii,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "svg" => Ok(Format::Svg),
            "dot" => Ok(Format::Dot),
            "ascii" | "txt" => Ok(Format::Ascii),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

/// How a point is drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shade {
    Outside,
    Ambient,
    Locus,
}

impl Shade {
    fn glyph(self) -> char {
        match self {
            Shade::Locus => '#',
            Shade::Ambient => '+',
            Shade::Outside => '.',
        }
    }

    fn fill(self) -> &'static str {
        match self {
            Shade::Locus => "#bcd3f0",
            Shade::Ambient => "#4a7cc4",
            Shade::Outside => "none",
        }
    }
}

/// Heights drawn explicitly in every tower; an ellipsis and `∞` follow.
pub const DRAWN_HEIGHTS: std::ops::RangeInclusive<u32> = 2..=7;

/// Points per tower: the drawn heights, then `∞`.
pub const TOWER_CELLS: usize = 7;

/// Height of the point drawn in cell `i` of a tower.
pub fn cell_height(i: usize) -> Height {
    if i + 1 == TOWER_CELLS {
        Height::Infinite
    } else {
        Height::Finite(*DRAWN_HEIGHTS.start() + i as u32)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    pub label: String,
    /// Shades of heights 2..=7 and then `∞`.
    pub cells: [Shade; TOWER_CELLS],
}

impl Tower {
    pub fn uniform(label: impl Into<String>, shade: Shade) -> Self {
        Tower {
            label: label.into(),
            cells: [shade; TOWER_CELLS],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flower {
    pub label: String,
    pub base: Shade,
    pub towers: Vec<Tower>,
}

/// Everything needed to draw a flower figure, in drawing order: flowers
/// left to right, towers left to right within a flower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FigureLayout {
    pub title: String,
    pub flowers: Vec<Flower>,
}

impl FigureLayout {
    /// One flower per class (canonical order), one tower per column
    /// (primes ascending, `generic` last).
    pub fn from_locus_document(doc: &LocusDocument) -> Result<Self> {
        doc.validate()?;
        let shade = |inside: bool, ambient: Option<bool>| {
            if inside {
                Shade::Locus
            } else if ambient == Some(true) {
                Shade::Ambient
            } else {
                Shade::Outside
            }
        };
        let flowers = doc
            .classes
            .iter()
            .map(|c| Flower {
                label: c.label.clone(),
                base: shade(c.height_one, c.ambient),
                towers: c
                    .columns
                    .iter()
                    .map(|(tag, &inside)| Tower::uniform(tag.clone(), shade(inside, c.ambient)))
                    .collect(),
            })
            .collect();
        let kind = match doc.kind {
            LocusKind::Inflation => "Inflation locus",
            LocusKind::GeometricFixedPoints => "Geometric fixed point locus",
            LocusKind::OrbitSupport => "Orbit support",
            LocusKind::NFree => "N-free locus",
        };
        let mut title = format!("{kind} for G = {}", doc.group);
        if let Some(n) = &doc.normal {
            title.push_str(&format!(", N = {n}"));
        }
        if let Some(h) = &doc.subgroup {
            title.push_str(&format!(", H = {h}"));
        }
        Ok(FigureLayout { title, flowers })
    }

    /// A single flower over the generic point with one tower per listed
    /// prime and a final `other` tower for the default column.
    pub fn from_chromatic(
        title: &str,
        space: &ChromaticSpace,
        subset: &ChromaticSubset,
        ambient: Option<&ChromaticSubset>,
    ) -> Self {
        let primes = listed_primes(space, [Some(subset), ambient]);
        chromatic_flower(
            title,
            &primes,
            |p, h| chromatic_member(subset, p, h),
            |p, h| ambient.is_some_and(|a| chromatic_member(a, p, h)),
        )
    }

    /// The localization picture: the locus `z` light, the rest of the
    /// complement of `y` dark.
    pub fn from_chromatic_localization(
        title: &str,
        space: &ChromaticSpace,
        y: &ChromaticSubset,
        z: &ChromaticSubset,
    ) -> Self {
        let primes = listed_primes(space, [Some(y), Some(z)]);
        chromatic_flower(
            title,
            &primes,
            |p, h| chromatic_member(z, p, h),
            |p, h| !chromatic_member(y, p, h),
        )
    }

    pub fn render(&self, format: Format) -> Vec<u8> {
        match format {
            Format::Svg => flower::svg(self),
            Format::Dot => flower::dot(self),
            Format::Ascii => flower::ascii(self),
        }
        .into_bytes()
    }
}

/// Renders a locus document.
pub fn render_eq_locus(doc: &LocusDocument, format: Format) -> Result<Vec<u8>> {
    Ok(FigureLayout::from_locus_document(doc)?.render(format))
}

/// Renders a chromatic subset, optionally nested inside an ambient subset.
pub fn render_chromatic(
    title: &str,
    space: &ChromaticSpace,
    subset: &ChromaticSubset,
    ambient: Option<&ChromaticSubset>,
    format: Format,
) -> Vec<u8> {
    FigureLayout::from_chromatic(title, space, subset, ambient).render(format)
}

fn listed_primes<const N: usize>(
    space: &ChromaticSpace,
    subsets: [Option<&ChromaticSubset>; N],
) -> Vec<Prime> {
    let mut primes: Vec<Prime> = space.primes().to_vec();
    for s in subsets.into_iter().flatten() {
        primes.extend(s.columns().keys().copied());
    }
    primes.sort();
    primes.dedup();
    primes
}

// `None` as prime is the default column, `None` as height the generic point.
fn chromatic_member(s: &ChromaticSubset, p: Option<Prime>, h: Option<Height>) -> bool {
    match h {
        None => s.includes_generic(),
        Some(h) => p
            .map_or(s.default_threshold(), |p| s.threshold(p))
            .is_some_and(|t| t <= h),
    }
}

fn chromatic_flower(
    title: &str,
    primes: &[Prime],
    inner: impl Fn(Option<Prime>, Option<Height>) -> bool,
    outer: impl Fn(Option<Prime>, Option<Height>) -> bool,
) -> FigureLayout {
    let shade = |p, h| {
        if inner(p, h) {
            Shade::Locus
        } else if outer(p, h) {
            Shade::Ambient
        } else {
            Shade::Outside
        }
    };
    let tower = |label: String, p: Option<Prime>| Tower {
        label,
        cells: std::array::from_fn(|i| shade(p, Some(cell_height(i)))),
    };
    let mut towers: Vec<Tower> = primes
        .iter()
        .map(|&p| tower(p.to_string(), Some(p)))
        .collect();
    towers.push(tower("other".into(), None));
    FigureLayout {
        title: title.to_string(),
        flowers: vec![Flower {
            label: "C_1".into(),
            base: shade(None, None),
            towers,
        }],
    }
}

pub(crate) fn escape_xml(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(c),
        }
    }
    out
}

pub(crate) fn escape_dot(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
