//! Poincaré polynomials by breadth-first enumeration of a regular orbit.
//!
//! The parabolic subgroup acts on its geometric representation. A point is
//! stored through its pairings `c_i = B(α_i, v)` with the simple roots; the
//! simple reflection `s_j` maps them to `c_i + 2cos(π/m_ij) c_j` (`i != j`)
//! and `-c_j`. Starting from `c = (1, ..., 1)`, a point in the open
//! fundamental chamber, the orbit is regular and the breadth-first level of
//! `w·ρ` is the length of `w`.
//!
//! `2cos(π/m) = ζ + ζ^-1` for `ζ` a primitive `2m`-th root of unity, so all
//! coordinates live in the cyclotomic integers `Z[ζ_L] = Z[x]/Φ_L(x)` with
//! `L` the least common multiple of the `2m`. Their power-basis coordinates
//! are canonical, which makes exact hashing possible.

use std::collections::HashSet;

use num_traits::ToPrimitive;

use super::{parabolic_components, CoxeterSystem};
use crate::error::CoxeterError;
use crate::laurent::{cyclotomic, CoefficientDomain, LaurentPoly};
use crate::subset::Subset;

pub const DEFAULT_ENUMERATION_BOUND: usize = 1_000_000;

/// Multiplication table of `Z[x]/Φ_L`.
struct CyclotomicIntegers {
    dim: usize,
    /// `x^k mod Φ_L` in the power basis, for `k < dim + L`.
    powers: Vec<Vec<i64>>,
    order: usize,
}

impl CyclotomicIntegers {
    fn new(order: usize) -> Self {
        let phi = cyclotomic(order as u32, CoefficientDomain::Integers);
        let phi: Vec<i64> = phi
            .coefficients()
            .iter()
            .map(|c| c.to_integer().to_i64().expect("small cyclotomic coefficients"))
            .collect();
        let dim = phi.len() - 1;
        let mut powers: Vec<Vec<i64>> = Vec::with_capacity(dim + order);
        for k in 0..dim + order {
            let mut v = vec![0i64; dim];
            if k < dim {
                v[k] = 1;
            } else {
                // x^k = x * x^{k-1}; reduce x^dim = -Σ phi_i x^i
                let prev = &powers[k - 1];
                let carry = prev[dim - 1];
                for i in (1..dim).rev() {
                    v[i] = prev[i - 1];
                }
                v[0] = 0;
                for i in 0..dim {
                    v[i] -= carry * phi[i];
                }
            }
            powers.push(v);
        }
        CyclotomicIntegers { dim, powers, order }
    }

    /// Matrix (column-major rows of the image) of multiplication by `ζ^a + ζ^{-a}`.
    fn two_cos_matrix(&self, a: usize) -> Vec<Vec<i64>> {
        let b = (self.order - a) % self.order;
        (0..self.dim)
            .map(|i| {
                self.powers[i + a]
                    .iter()
                    .zip(&self.powers[i + b])
                    .map(|(x, y)| x + y)
                    .collect()
            })
            .collect()
    }
}

fn lcm(a: usize, b: usize) -> usize {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// `Σ_{w ∈ W_Δ} q^{ℓ(w)}` by orbit enumeration. Integer coefficients.
///
/// Fails with `GroupTooLarge` when the diagram classifies as finite with
/// order above `bound`, and with `InfiniteGroup` when the orbit exceeds
/// `bound` points.
pub fn poincare_poly_bruteforce(
    system: &CoxeterSystem,
    delta: Subset,
    bound: usize,
) -> Result<LaurentPoly, CoxeterError> {
    system.check_subset(delta)?;
    if let Ok(components) = parabolic_components(system, delta) {
        let order: u128 = components.iter().map(|(l, _)| l.order()).product();
        if order > bound as u128 {
            return Err(CoxeterError::GroupTooLarge { order, bound });
        }
    }
    let gens: Vec<usize> = delta.iter().collect();
    let k = gens.len();
    let order = gens
        .iter()
        .flat_map(|&g| gens.iter().map(move |&h| (g, h)))
        .map(|(g, h)| system.m(g, h) as usize)
        .filter(|&m| m >= 3)
        .fold(2, |acc, m| lcm(acc, 2 * m));
    let ring = CyclotomicIntegers::new(order);
    let dim = ring.dim;

    // couplings[j] = [(i, matrix of 2cos(π/m_ij))] for i != j with m_ij >= 3
    let couplings: Vec<Vec<(usize, Vec<Vec<i64>>)>> = (0..k)
        .map(|j| {
            (0..k)
                .filter(|&i| i != j)
                .filter_map(|i| {
                    let m = system.m(gens[i], gens[j]) as usize;
                    (m >= 3).then(|| (i, ring.two_cos_matrix(order / (2 * m))))
                })
                .collect()
        })
        .collect();

    let reflect = |c: &[i64], j: usize| -> Result<Vec<i64>, CoxeterError> {
        let mut out = c.to_vec();
        let cj = &c[j * dim..(j + 1) * dim];
        for (i, mat) in &couplings[j] {
            for (col, &x) in cj.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (row, &t) in mat[col].iter().enumerate() {
                    let slot = &mut out[i * dim + row];
                    *slot = t
                        .checked_mul(x)
                        .and_then(|v| slot.checked_add(v))
                        .ok_or(CoxeterError::Overflow)?;
                }
            }
        }
        for v in &mut out[j * dim..(j + 1) * dim] {
            *v = -*v;
        }
        Ok(out)
    };

    let mut start = vec![0i64; k * dim];
    for i in 0..k {
        start[i * dim] = 1;
    }
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(start.clone());
    let mut frontier = vec![start];
    let mut counts: Vec<i64> = Vec::new();
    while !frontier.is_empty() {
        counts.push(frontier.len() as i64);
        let mut next = Vec::new();
        for c in &frontier {
            for j in 0..k {
                let image = reflect(c, j)?;
                if seen.insert(image.clone()) {
                    if seen.len() > bound {
                        return Err(CoxeterError::InfiniteGroup(bound));
                    }
                    next.push(image);
                }
            }
        }
        frontier = next;
    }
    Ok(LaurentPoly::from_ints(CoefficientDomain::Integers, 0, &counts))
}
