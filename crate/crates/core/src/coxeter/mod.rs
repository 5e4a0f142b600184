//! Finite Coxeter systems with a fixed total order on the generators.
//!
//! Generator numbering per type (generators are `1..=n`):
//!
//! * `A_n`: chain `1 - 2 - ... - n`.
//! * `B_n`: chain with `m(1,2) = 4`, all other bonds 3.
//! * `D_n`: chain `1 - ... - (n-2)`, with `n-1` and `n` both attached to
//!   `n-2`. `D_2` is `A_1 x A_1`, `D_3` is `A_3` (centre node 1).
//! * `E_6, E_7, E_8`: chain `1 - 3 - 4 - 5 - ... - n`, node 2 attached to 4.
//! * `F_4`: chain with `m(2,3) = 4`.
//! * `H_3, H_4`: chain with `m(1,2) = 5`.
//! * `I_2(m)`: `m(1,2) = m`.

mod classify;
mod enumerate;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::CoxeterError;
use crate::laurent::{q_bracket, CoefficientDomain, LaurentPoly};
use crate::subset::{Subset, MAX_GENERATORS};

pub use classify::parabolic_components;
pub use enumerate::{poincare_poly_bruteforce, DEFAULT_ENUMERATION_BOUND};

/// Name of a finite irreducible Coxeter diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiniteTypeLabel {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    I2(u32),
}

impl FiniteTypeLabel {
    pub fn rank(self) -> usize {
        match self {
            FiniteTypeLabel::A(n) | FiniteTypeLabel::B(n) | FiniteTypeLabel::D(n) => n,
            FiniteTypeLabel::E6 => 6,
            FiniteTypeLabel::E7 => 7,
            FiniteTypeLabel::E8 => 8,
            FiniteTypeLabel::F4 | FiniteTypeLabel::H4 => 4,
            FiniteTypeLabel::H3 => 3,
            FiniteTypeLabel::I2(_) => 2,
        }
    }

    fn validate(self) -> Result<Self, CoxeterError> {
        let bad = |family: &str, rank: usize| CoxeterError::InvalidRank {
            family: family.to_string(),
            rank,
        };
        match self {
            FiniteTypeLabel::A(0) => Err(bad("A", 0)),
            FiniteTypeLabel::B(n) if n < 2 => Err(bad("B", n)),
            FiniteTypeLabel::D(n) if n < 2 => Err(bad("D", n)),
            FiniteTypeLabel::I2(m) if m < 2 => Err(bad("I2", m as usize)),
            l if l.rank() > MAX_GENERATORS => Err(bad(&l.family(), l.rank())),
            l => Ok(l),
        }
    }

    fn family(self) -> String {
        let s = self.to_string();
        s.trim_end_matches(|c: char| c.is_ascii_digit()).to_string()
    }

    /// Degrees of the basic invariants.
    pub fn degrees(self) -> Vec<u32> {
        match self {
            FiniteTypeLabel::A(n) => (2..=n as u32 + 1).collect(),
            FiniteTypeLabel::B(n) => (1..=n as u32).map(|i| 2 * i).collect(),
            FiniteTypeLabel::D(n) => {
                let mut d: Vec<u32> = (1..n as u32).map(|i| 2 * i).collect();
                d.push(n as u32);
                d
            }
            FiniteTypeLabel::E6 => vec![2, 5, 6, 8, 9, 12],
            FiniteTypeLabel::E7 => vec![2, 6, 8, 10, 12, 14, 18],
            FiniteTypeLabel::E8 => vec![2, 8, 12, 14, 18, 20, 24, 30],
            FiniteTypeLabel::F4 => vec![2, 6, 8, 12],
            FiniteTypeLabel::H3 => vec![2, 6, 10],
            FiniteTypeLabel::H4 => vec![2, 12, 20, 30],
            FiniteTypeLabel::I2(m) => vec![2, m],
        }
    }

    /// Group order, the product of the degrees.
    pub fn order(self) -> u128 {
        self.degrees().iter().map(|&d| d as u128).product()
    }

    /// `D_2` and `I_2(2)` are the reducible `A_1 x A_1`.
    pub fn is_irreducible(self) -> bool {
        !matches!(self, FiniteTypeLabel::D(2) | FiniteTypeLabel::I2(2))
    }

    /// `Π [d_i]_q` over the integers.
    pub fn poincare_poly(self) -> LaurentPoly {
        let z = CoefficientDomain::Integers;
        self.degrees()
            .into_iter()
            .fold(LaurentPoly::one(z), |acc, d| &acc * &q_bracket(d, z))
    }
}

impl fmt::Display for FiniteTypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteTypeLabel::A(n) => write!(f, "A{n}"),
            FiniteTypeLabel::B(n) => write!(f, "B{n}"),
            FiniteTypeLabel::D(n) => write!(f, "D{n}"),
            FiniteTypeLabel::E6 => write!(f, "E6"),
            FiniteTypeLabel::E7 => write!(f, "E7"),
            FiniteTypeLabel::E8 => write!(f, "E8"),
            FiniteTypeLabel::F4 => write!(f, "F4"),
            FiniteTypeLabel::H3 => write!(f, "H3"),
            FiniteTypeLabel::H4 => write!(f, "H4"),
            FiniteTypeLabel::I2(m) => write!(f, "I2({m})"),
        }
    }
}

impl Serialize for FiniteTypeLabel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for FiniteTypeLabel {
    type Err = CoxeterError;

    /// Parses `A3`, `B4`, `D5`, `E6`, `F4`, `H3`, `I2(7)` (case-insensitive family letter).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CoxeterError::BadLabel(s.to_string());
        let t = s.trim();
        let mut chars = t.chars();
        let family = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let rest = chars.as_str();
        if family == 'I' {
            let inner = rest
                .strip_prefix("2(")
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(bad)?;
            let m: u32 = parse_small(inner).ok_or_else(bad)?;
            return FiniteTypeLabel::I2(m).validate();
        }
        let n = parse_small(rest).ok_or_else(bad)? as usize;
        let label = match (family, n) {
            ('A', n) => FiniteTypeLabel::A(n),
            ('B', n) => FiniteTypeLabel::B(n),
            ('D', n) => FiniteTypeLabel::D(n),
            ('E', 6) => FiniteTypeLabel::E6,
            ('E', 7) => FiniteTypeLabel::E7,
            ('E', 8) => FiniteTypeLabel::E8,
            ('F', 4) => FiniteTypeLabel::F4,
            ('H', 3) => FiniteTypeLabel::H3,
            ('H', 4) => FiniteTypeLabel::H4,
            ('E' | 'F' | 'H', n) => {
                return Err(CoxeterError::InvalidRank {
                    family: family.to_string(),
                    rank: n,
                })
            }
            _ => return Err(bad()),
        };
        label.validate()
    }
}

fn parse_small(s: &str) -> Option<u32> {
    if s.is_empty() || s.len() > 9 || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Parses a type label or a product of labels joined by `x`, e.g. `A2xA1`.
pub fn parse_type_spec(s: &str) -> Result<Vec<FiniteTypeLabel>, CoxeterError> {
    let parts: Vec<&str> = s.split(['x', 'X', '×']).collect();
    if parts.iter().any(|p| p.trim().is_empty()) {
        return Err(CoxeterError::BadLabel(s.to_string()));
    }
    parts.into_iter().map(str::parse).collect()
}

/// A Coxeter matrix on the ordered generators `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterSystem {
    m: Vec<Vec<u32>>,
    labels: Vec<FiniteTypeLabel>,
}

impl CoxeterSystem {
    /// Validates a symmetric Coxeter matrix with unit diagonal and finite
    /// off-diagonal entries `>= 2`.
    pub fn from_matrix(m: Vec<Vec<u32>>) -> Result<Self, CoxeterError> {
        let n = m.len();
        if n > MAX_GENERATORS {
            return Err(CoxeterError::InvalidMatrix(format!("{n} generators")));
        }
        for (i, row) in m.iter().enumerate() {
            if row.len() != n {
                return Err(CoxeterError::InvalidMatrix("matrix is not square".into()));
            }
            for (j, &v) in row.iter().enumerate() {
                if v != m[j][i] {
                    return Err(CoxeterError::InvalidMatrix("matrix is not symmetric".into()));
                }
                if (i == j) != (v == 1) || v == 0 {
                    return Err(CoxeterError::InvalidMatrix(format!("bad entry m({},{}) = {v}", i + 1, j + 1)));
                }
            }
        }
        Ok(CoxeterSystem { m, labels: Vec::new() })
    }

    pub fn rank(&self) -> usize {
        self.m.len()
    }

    /// `m(s, s')` for 1-based generators.
    pub fn m(&self, s: usize, t: usize) -> u32 {
        self.m[s - 1][t - 1]
    }

    /// The labels this system was built from, if any.
    pub fn labels(&self) -> &[FiniteTypeLabel] {
        &self.labels
    }

    pub fn generators(&self) -> Subset {
        Subset::full(self.rank())
    }

    /// True when the Coxeter diagram is connected (and nonempty).
    pub fn is_irreducible(&self) -> bool {
        match parabolic_components(self, self.generators()) {
            Ok(c) => c.len() == 1 && c[0].0.is_irreducible(),
            Err(_) => false,
        }
    }

    pub(crate) fn check_subset(&self, delta: Subset) -> Result<(), CoxeterError> {
        if delta.max_generator() > self.rank() {
            return Err(CoxeterError::GeneratorOutOfRange(delta.max_generator()));
        }
        Ok(())
    }

    /// Disjoint union of several systems; generators are renumbered consecutively.
    pub fn product(labels: &[FiniteTypeLabel]) -> Result<Self, CoxeterError> {
        let blocks = labels
            .iter()
            .map(|&l| finite_type_system(l))
            .collect::<Result<Vec<_>, _>>()?;
        let n: usize = blocks.iter().map(CoxeterSystem::rank).sum();
        if n > MAX_GENERATORS {
            return Err(CoxeterError::InvalidMatrix(format!("{n} generators")));
        }
        let mut m = vec![vec![2u32; n]; n];
        let mut offset = 0;
        for b in &blocks {
            for i in 0..b.rank() {
                for j in 0..b.rank() {
                    m[offset + i][offset + j] = b.m[i][j];
                }
            }
            offset += b.rank();
        }
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        Ok(CoxeterSystem {
            m,
            labels: labels.to_vec(),
        })
    }
}

/// Coxeter matrix of the named diagram under the numbering documented on this module.
pub fn finite_type_system(label: FiniteTypeLabel) -> Result<CoxeterSystem, CoxeterError> {
    let label = label.validate()?;
    let n = label.rank();
    let mut m = vec![vec![2u32; n]; n];
    let mut bond = |a: usize, b: usize, v: u32| {
        m[a - 1][b - 1] = v;
        m[b - 1][a - 1] = v;
    };
    match label {
        FiniteTypeLabel::A(_) | FiniteTypeLabel::B(_) | FiniteTypeLabel::F4 | FiniteTypeLabel::H3 | FiniteTypeLabel::H4 => {
            for i in 1..n {
                bond(i, i + 1, 3);
            }
            match label {
                FiniteTypeLabel::B(_) => bond(1, 2, 4),
                FiniteTypeLabel::F4 => bond(2, 3, 4),
                FiniteTypeLabel::H3 | FiniteTypeLabel::H4 => bond(1, 2, 5),
                _ => {}
            }
        }
        FiniteTypeLabel::D(_) => {
            if n >= 3 {
                for i in 1..n - 2 {
                    bond(i, i + 1, 3);
                }
                bond(n - 2, n - 1, 3);
                bond(n - 2, n, 3);
            }
        }
        FiniteTypeLabel::E6 | FiniteTypeLabel::E7 | FiniteTypeLabel::E8 => {
            bond(1, 3, 3);
            bond(2, 4, 3);
            for i in 3..n {
                bond(i, i + 1, 3);
            }
        }
        FiniteTypeLabel::I2(k) => bond(1, 2, k),
    }
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    Ok(CoxeterSystem {
        m,
        labels: vec![label],
    })
}

/// `W_Δ(q)`: the product over irreducible components of `Π [d_i]_q`. Integer coefficients.
pub fn poincare_poly(system: &CoxeterSystem, delta: Subset) -> Result<LaurentPoly, CoxeterError> {
    system.check_subset(delta)?;
    let z = CoefficientDomain::Integers;
    Ok(parabolic_components(system, delta)?
        .into_iter()
        .fold(LaurentPoly::one(z), |acc, (label, _)| &acc * &label.poincare_poly()))
}

/// `W_{Δ ∪ {j}}(q) / W_Δ(q)`; the division is exact for every finite type.
pub fn poincare_quotient(system: &CoxeterSystem, delta: Subset, j: usize) -> Result<LaurentPoly, CoxeterError> {
    if j == 0 || j > system.rank() {
        return Err(CoxeterError::GeneratorOutOfRange(j));
    }
    if delta.contains(j) {
        return Err(CoxeterError::InvalidMatrix(format!("generator {j} already in {delta:?}")));
    }
    let big = poincare_poly(system, delta.with(j))?;
    let small = poincare_poly(system, delta)?;
    big.div_exact(&small).map_err(|_| CoxeterError::NotDivisible)
}
