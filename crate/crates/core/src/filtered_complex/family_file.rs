//! Text format for user-supplied families.
//!
//! One record per line, `subset ; generator ; polynomial`, where the subset
//! is a comma list of generators or `-` for the empty set:
//!
//! ```text
//! # A2
//! - ; 1 ; 1 - q
//! - ; 2 ; 1 - q
//! 2 ; 1 ; 1 - q + q^2
//! 1 ; 2 ; -(1 - q + q^2)
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. The number of
//! generators is the largest index mentioned. Loading validates totality,
//! extreme coefficients and the cocycle relation.

use std::collections::HashMap;
use std::fmt::Write;

use super::{PolynomialFamily, MAX_FAMILY_GENERATORS};
use crate::error::FamilyFileError;
use crate::laurent::{parse_polynomial, CoefficientDomain, LaurentPoly};
use crate::subset::Subset;

fn at(line: usize, message: impl Into<String>) -> FamilyFileError {
    FamilyFileError {
        line: Some(line),
        message: message.into(),
    }
}

fn parse_generator(s: &str, line: usize) -> Result<usize, FamilyFileError> {
    let g: usize = s
        .trim()
        .parse()
        .map_err(|_| at(line, format!("`{}` is not a generator index", s.trim())))?;
    if g == 0 || g > MAX_FAMILY_GENERATORS {
        return Err(at(line, format!("generator {g} outside 1..={MAX_FAMILY_GENERATORS}")));
    }
    Ok(g)
}

fn parse_subset(s: &str, line: usize) -> Result<Subset, FamilyFileError> {
    let s = s.trim();
    if s == "-" {
        return Ok(Subset::EMPTY);
    }
    let mut delta = Subset::EMPTY;
    for part in s.split(',') {
        let g = parse_generator(part, line)?;
        if delta.contains(g) {
            return Err(at(line, format!("generator {g} repeated in subset")));
        }
        delta = delta.with(g);
    }
    Ok(delta)
}

/// Parse and validate a family file over `domain`.
pub fn load_family(text: &str, domain: CoefficientDomain) -> Result<PolynomialFamily, FamilyFileError> {
    let mut records: HashMap<(Subset, usize), (LaurentPoly, usize)> = HashMap::new();
    let mut n = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.splitn(3, ';').collect();
        if fields.len() != 3 {
            return Err(at(line, "expected `subset ; generator ; polynomial`"));
        }
        let delta = parse_subset(fields[0], line)?;
        let w = parse_generator(fields[1], line)?;
        if delta.contains(w) {
            return Err(at(line, format!("generator {w} belongs to subset {delta}")));
        }
        let p = parse_polynomial(fields[2].trim(), domain).map_err(|e| at(line, format!("bad polynomial: {e}")))?;
        if !p.extremes_invertible() {
            return Err(at(
                line,
                format!("polynomial {p} is zero or has non-invertible extreme coefficients over {domain}"),
            ));
        }
        if let Some((_, first)) = records.get(&(delta, w)) {
            return Err(at(line, format!("duplicate entry for subset {delta}, generator {w} (first on line {first})")));
        }
        n = n.max(w).max(delta.max_generator());
        records.insert((delta, w), (p, line));
    }

    let mut family = PolynomialFamily::new(domain, n).expect("generator indices are bounded");
    let mut lines: HashMap<(Subset, usize), usize> = HashMap::new();
    for ((delta, w), (p, line)) in records {
        family.set(delta, w, p);
        lines.insert((delta, w), line);
    }
    if let Some((delta, w)) = family.first_missing() {
        return Err(FamilyFileError {
            line: None,
            message: format!("missing entry for subset {delta}, generator {w}"),
        });
    }
    let violation = family.first_cocycle_violation().expect("family is total");
    if let Some((delta, w, v)) = violation {
        let line = [(delta, w), (delta.with(w), v), (delta, v), (delta.with(v), w)]
            .iter()
            .map(|k| lines[k])
            .max()
            .unwrap();
        return Err(at(
            line,
            format!("cocycle relation fails for subset {delta}, generators {w} and {v}"),
        ));
    }
    Ok(family)
}

/// Serialize a family in the format read by [`load_family`].
pub fn write_family(family: &PolynomialFamily) -> String {
    let mut out = String::new();
    for (delta, w) in family.admissible_pairs() {
        if let Some(p) = family.get(delta, w) {
            writeln!(out, "{delta} ; {w} ; {p}").unwrap();
        }
    }
    out
}
