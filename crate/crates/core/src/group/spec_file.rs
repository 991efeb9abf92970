//! Group-spec text format:
//!
//! ```text
//! degree 5
//! (1 2 3 4 5)
//! (2 5)(3 4)
//! ```
//!
//! Points are 1-based, fixed points are omitted. Blank lines and lines
//! starting with `#` are ignored.

use super::perm::Permutation;
use super::perm_group::{Caps, PermGroup};
use crate::error::{Error, Result};

/// Parses the degree and generators of a group-spec file.
pub fn parse_generators(text: &str) -> Result<(usize, Vec<Permutation>)> {
    let mut degree = None;
    let mut gens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match degree {
            None => {
                let rest = line
                    .strip_prefix("degree")
                    .ok_or_else(|| Error::parse(line_no, "expected `degree N` header"))?;
                let n: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad degree `{}`", rest.trim())))?;
                if n == 0 {
                    return Err(Error::parse(line_no, "degree must be positive"));
                }
                degree = Some(n);
            }
            Some(n) => {
                let p = Permutation::parse_cycles(n, line)
                    .map_err(|e| Error::parse(line_no, e.to_string()))?;
                gens.push(p);
            }
        }
    }
    let degree = degree.ok_or_else(|| Error::parse(1, "missing `degree N` header"))?;
    Ok((degree, gens))
}

pub fn parse_group(text: &str, caps: Caps) -> Result<PermGroup> {
    let (degree, gens) = parse_generators(text)?;
    PermGroup::from_generators_with_caps(degree, gens, caps)
}

/// Renders a group back into the text format.
pub fn format_group(group: &PermGroup) -> String {
    let mut out = format!("degree {}\n", group.degree());
    for g in group.generators() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_dihedral_ten() {
        let text = "# D10\ndegree 5\n(1 2 3 4 5)\n\n(2 5)(3 4)\n";
        let g = parse_group(text, Caps::default()).unwrap();
        assert_eq!(g.order(), 10);
        assert_eq!(format_group(&g), "degree 5\n(1 2 3 4 5)\n(2 5)(3 4)\n");
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert!(matches!(
            parse_generators("(1 2)\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_generators("degree 3\n(1 2)\n(1 4)\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(parse_generators(""), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_generators("degree x"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn degree_one_without_generators_is_trivial() {
        let g = parse_group("degree 1\n", Caps::default()).unwrap();
        assert_eq!(g.order(), 1);
    }
}
