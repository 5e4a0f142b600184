use super::{CoxeterSystem, FiniteTypeLabel};
use crate::error::CoxeterError;
use crate::subset::Subset;

/// Connected components of the Coxeter diagram induced on `delta`, each
/// classified. Components are listed by smallest generator; each carries its
/// generators in increasing order.
pub fn parabolic_components(
    system: &CoxeterSystem,
    delta: Subset,
) -> Result<Vec<(FiniteTypeLabel, Vec<usize>)>, CoxeterError> {
    system.check_subset(delta)?;
    let mut seen = Subset::EMPTY;
    let mut out = Vec::new();
    for start in delta.iter() {
        if seen.contains(start) {
            continue;
        }
        let mut comp = Subset::EMPTY.with(start);
        let mut stack = vec![start];
        while let Some(g) = stack.pop() {
            for h in delta.iter() {
                if !comp.contains(h) && system.m(g, h) >= 3 {
                    comp = comp.with(h);
                    stack.push(h);
                }
            }
        }
        seen = seen.union(comp);
        let gens: Vec<usize> = comp.iter().collect();
        let label = classify_connected(system, &gens).ok_or_else(|| CoxeterError::NotFiniteType(gens.clone()))?;
        out.push((label, gens));
    }
    Ok(out)
}

fn classify_connected(system: &CoxeterSystem, gens: &[usize]) -> Option<FiniteTypeLabel> {
    let k = gens.len();
    let edges: Vec<(usize, usize, u32)> = gens
        .iter()
        .enumerate()
        .flat_map(|(a, &g)| gens[a + 1..].iter().map(move |&h| (g, h)))
        .filter_map(|(g, h)| {
            let m = system.m(g, h);
            (m >= 3).then_some((g, h, m))
        })
        .collect();
    if k == 1 {
        return Some(FiniteTypeLabel::A(1));
    }
    if edges.len() != k - 1 {
        return None;
    }
    if k == 2 {
        return Some(match edges[0].2 {
            3 => FiniteTypeLabel::A(2),
            4 => FiniteTypeLabel::B(2),
            m => FiniteTypeLabel::I2(m),
        });
    }
    let degree = |g: usize| edges.iter().filter(|e| e.0 == g || e.1 == g).count();
    let max_degree = gens.iter().map(|&g| degree(g)).max().unwrap_or(0);
    let heavy: Vec<&(usize, usize, u32)> = edges.iter().filter(|e| e.2 >= 4).collect();
    if heavy.iter().any(|e| e.2 >= 6) || heavy.len() > 1 {
        return None;
    }
    if let Some(&&(a, b, m)) = heavy.first() {
        if max_degree > 2 {
            return None;
        }
        let at_end = degree(a) == 1 || degree(b) == 1;
        return match (m, at_end, k) {
            (4, true, _) => Some(FiniteTypeLabel::B(k)),
            (4, false, 4) => Some(FiniteTypeLabel::F4),
            (5, true, 3) => Some(FiniteTypeLabel::H3),
            (5, true, 4) => Some(FiniteTypeLabel::H4),
            _ => None,
        };
    }
    match max_degree {
        0..=2 => Some(FiniteTypeLabel::A(k)),
        3 => {
            let branches: Vec<usize> = gens.iter().copied().filter(|&g| degree(g) == 3).collect();
            if branches.len() != 1 {
                return None;
            }
            let centre = branches[0];
            let mut arms: Vec<usize> = edges
                .iter()
                .filter_map(|e| match e {
                    (a, b, _) if *a == centre => Some(*b),
                    (a, b, _) if *b == centre => Some(*a),
                    _ => None,
                })
                .map(|first| arm_length(&edges, centre, first))
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, c] => Some(FiniteTypeLabel::D(c + 3)),
                [1, 2, 2] => Some(FiniteTypeLabel::E6),
                [1, 2, 3] => Some(FiniteTypeLabel::E7),
                [1, 2, 4] => Some(FiniteTypeLabel::E8),
                _ => None,
            }
        }
        _ => None,
    }
}

/// Number of nodes on the arm starting at `first`, walking away from `centre`.
fn arm_length(edges: &[(usize, usize, u32)], centre: usize, first: usize) -> usize {
    let (mut prev, mut cur, mut len) = (centre, first, 1);
    loop {
        let next = edges.iter().find_map(|&(a, b, _)| {
            if a == cur && b != prev {
                Some(b)
            } else if b == cur && a != prev {
                Some(a)
            } else {
                None
            }
        });
        match next {
            Some(n) => {
                prev = cur;
                cur = n;
                len += 1;
            }
            None => return len,
        }
    }
}
