//! Report data and its pretty, JSON and CSV renderings.
//!
//! Everything here is plain data in a fixed order, so identical runs give
//! byte-identical output. Polynomials serialize as canonical strings.

use std::fmt::Write;

use salvetti::homalg::{InvariantFactors, ShiftDegree};
use salvetti::laurent::{CoefficientDomain, LaurentPoly};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub source: SourceInfo,
    pub results: Vec<FieldResult>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct SourceInfo {
    /// `"type"` or `"family"`.
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    pub generators: usize,
    /// Ranks of the cochain groups `C^0, ..., C^n`.
    pub ranks: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub irreducible: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldResult {
    pub coefficients: CoefficientDomain,
    pub d_squared_zero: bool,
    pub well_filtered: WellFiltered,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cohomology: Option<Vec<DegreeGroup>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homology: Option<Vec<DegreeGroup>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub milnor: Option<MilnorReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift: Option<ShiftSection>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WellFiltered {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    pub complexes_checked: usize,
}

/// One degree of `H^*` or `H_*`: `R^free_rank ⊕ ⊕ R/(f_i)`.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeGroup {
    pub degree: usize,
    pub free_rank: usize,
    pub torsion: Vec<LaurentPoly>,
    pub torsion_dimension: usize,
}

impl From<&InvariantFactors> for DegreeGroup {
    fn from(h: &InvariantFactors) -> Self {
        DegreeGroup {
            degree: h.degree,
            free_rank: h.free_rank,
            torsion: h.torsion.clone(),
            torsion_dimension: h.torsion_dimension(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MilnorReport {
    pub irreducible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub degrees: Vec<MilnorDegree>,
    pub provenance: Provenance,
}

/// `H^k(F_W; A)` with the monodromy action.
#[derive(Clone, Debug, Serialize)]
pub struct MilnorDegree {
    pub degree: usize,
    pub betti: usize,
    pub charpoly: LaurentPoly,
    /// Orders `n` of the eigenvalues (roots of `Φ_n`) with multiplicity.
    pub eigenvalues: Vec<Eigenvalue>,
    /// Part of the charpoly not accounted for by `Φ_1, ..., Φ_120`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub non_cyclotomic: Option<LaurentPoly>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Eigenvalue {
    pub order: u32,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub betti: String,
    pub charpoly: String,
    pub eigenvalues: String,
    pub shift: String,
}

impl Provenance {
    pub fn standard() -> Self {
        Provenance {
            betti: "dim_A of the torsion of H^{k+1}(G_W; R), R = A[q, q^-1] with each standard generator acting by q \
                    (degree shift from the Milnor fiber to the Artin group)"
                .into(),
            charpoly: "product of the invariant factors of H^{k+1}(G_W; R); q acts as the geometric monodromy".into(),
            eigenvalues: "trial division of the charpoly by cyclotomic polynomials".into(),
            shift: "independent window computation of H^k(C ⊗ M) with M = A[[q, q^-1]], compared with the Betti number"
                .into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ShiftSection {
    pub all_match: bool,
    pub degrees: Vec<ShiftDegree>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub ok: bool,
    pub problems: Vec<String>,
}

pub fn to_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

fn join(ps: &[LaurentPoly]) -> String {
    ps.iter().map(ToString::to_string).collect::<Vec<_>>().join(" | ")
}

fn module(g: &DegreeGroup) -> String {
    let mut parts = Vec::new();
    if g.free_rank > 0 {
        parts.push(if g.free_rank == 1 { "R".to_string() } else { format!("R^{}", g.free_rank) });
    }
    parts.extend(g.torsion.iter().map(|f| format!("R/({f})")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ⊕ ")
    }
}

pub fn to_pretty(report: &Report) -> String {
    let mut s = String::new();
    let src = &report.source;
    let name = src.label.as_deref().or(src.path.as_deref()).unwrap_or("?");
    let _ = writeln!(s, "{} {} ({} generators, ranks {:?})", report.command, name, src.generators, src.ranks);
    if src.irreducible == Some(false) {
        let _ = writeln!(s, "reducible type");
    }
    for r in &report.results {
        let _ = writeln!(s, "\n[coefficients {}]", r.coefficients);
        let _ = writeln!(s, "  d∘d = 0: {}", if r.d_squared_zero { "yes" } else { "NO" });
        let wf = &r.well_filtered;
        match &wf.failure {
            None => {
                let _ = writeln!(s, "  well filtered: yes ({} complexes checked)", wf.complexes_checked);
            }
            Some(f) => {
                let _ = writeln!(s, "  well filtered: no, {f}");
            }
        }
        if let Some(h) = &r.cohomology {
            let _ = writeln!(s, "  cohomology H^k(G_W; R):");
            for g in h {
                let _ = writeln!(s, "    H^{} = {}", g.degree, module(g));
            }
        }
        if let Some(h) = &r.homology {
            let _ = writeln!(s, "  homology H_k(G_W; R):");
            for g in h {
                let _ = writeln!(s, "    H_{} = {}", g.degree, module(g));
            }
        }
        if let Some(m) = &r.milnor {
            let _ = writeln!(s, "  Milnor fiber:");
            if let Some(note) = &m.note {
                let _ = writeln!(s, "    note: {note}");
            }
            let _ = writeln!(s, "    {:>3}  {:>6}  {:<30}  eigenvalue orders", "k", "b_k", "charpoly");
            for d in &m.degrees {
                let eig = d
                    .eigenvalues
                    .iter()
                    .map(|e| {
                        if e.multiplicity == 1 {
                            format!("{}", e.order)
                        } else {
                            format!("{}^{}", e.order, e.multiplicity)
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ");
                let _ = writeln!(s, "    {:>3}  {:>6}  {:<30}  {}", d.degree, d.betti, d.charpoly.to_string(), eig);
                if let Some(rest) = &d.non_cyclotomic {
                    let _ = writeln!(s, "         non-cyclotomic part: {rest}");
                }
            }
        }
        if let Some(sh) = &r.shift {
            let _ = writeln!(s, "  shift check (dim H^k(C ⊗ M) vs torsion dim H^(k+1)(C)):");
            for d in &sh.degrees {
                let _ = writeln!(
                    s,
                    "    k={}: {} vs {} (radius {}/{}) {}",
                    d.degree,
                    d.m_side,
                    d.r_side,
                    d.radius,
                    d.radius_large,
                    if d.matches { "ok" } else { "MISMATCH" }
                );
            }
        }
    }
    let _ = writeln!(s, "\nverdict: {}", if report.verdict.ok { "ok" } else { "FAILED" });
    for p in &report.verdict.problems {
        let _ = writeln!(s, "  - {p}");
    }
    s
}

/// Long format: `coefficients,section,degree,key,value`.
pub fn to_csv(report: &Report) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["coefficients", "section", "degree", "key", "value"])
        .expect("in-memory csv write");
    let mut row = |c: &str, section: &str, degree: Option<usize>, key: &str, value: String| {
        let degree = degree.map(|d| d.to_string()).unwrap_or_default();
        w.write_record([c, section, degree.as_str(), key, value.as_str()])
            .expect("in-memory csv write");
    };
    for r in &report.results {
        let c = r.coefficients.to_string();
        let c = c.as_str();
        row(c, "complex", None, "d_squared_zero", r.d_squared_zero.to_string());
        row(c, "well_filtered", None, "holds", r.well_filtered.holds.to_string());
        if let Some(f) = &r.well_filtered.failure {
            row(c, "well_filtered", None, "failure", f.clone());
        }
        for (section, groups) in [("cohomology", &r.cohomology), ("homology", &r.homology)] {
            for g in groups.iter().flatten() {
                row(c, section, Some(g.degree), "free_rank", g.free_rank.to_string());
                row(c, section, Some(g.degree), "torsion", join(&g.torsion));
                row(c, section, Some(g.degree), "torsion_dimension", g.torsion_dimension.to_string());
            }
        }
        if let Some(m) = &r.milnor {
            row(c, "milnor", None, "irreducible", m.irreducible.to_string());
            for d in &m.degrees {
                row(c, "milnor", Some(d.degree), "betti", d.betti.to_string());
                row(c, "milnor", Some(d.degree), "charpoly", d.charpoly.to_string());
                let eig = d
                    .eigenvalues
                    .iter()
                    .map(|e| format!("{}^{}", e.order, e.multiplicity))
                    .collect::<Vec<_>>()
                    .join(" ");
                row(c, "milnor", Some(d.degree), "eigenvalue_orders", eig);
            }
        }
        if let Some(sh) = &r.shift {
            for d in &sh.degrees {
                row(c, "shift", Some(d.degree), "m_side", d.m_side.to_string());
                row(c, "shift", Some(d.degree), "r_side", d.r_side.to_string());
                row(c, "shift", Some(d.degree), "matches", d.matches.to_string());
            }
        }
    }
    row("", "verdict", None, "ok", report.verdict.ok.to_string());
    for p in &report.verdict.problems {
        row("", "verdict", None, "problem", p.clone());
    }
    drop(row);
    String::from_utf8(w.into_inner().expect("flush in-memory csv")).expect("csv is utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let q = CoefficientDomain::Rationals;
        let p: LaurentPoly = salvetti::laurent::parse_polynomial("q - 1", q).unwrap();
        Report {
            schema: SCHEMA_VERSION,
            command: "cohomology".into(),
            source: SourceInfo {
                kind: "type".into(),
                label: Some("A1".into()),
                path: None,
                generators: 1,
                ranks: vec![1, 1],
                irreducible: Some(true),
            },
            results: vec![FieldResult {
                coefficients: q,
                d_squared_zero: true,
                well_filtered: WellFiltered {
                    holds: true,
                    failure: None,
                    complexes_checked: 1,
                },
                cohomology: Some(vec![DegreeGroup {
                    degree: 1,
                    free_rank: 0,
                    torsion: vec![p],
                    torsion_dimension: 1,
                }]),
                homology: None,
                milnor: None,
                shift: None,
            }],
            verdict: Verdict {
                ok: true,
                problems: vec![],
            },
        }
    }

    #[test]
    fn json_uses_strings() {
        let v: serde_json::Value = serde_json::from_str(&to_json(&sample())).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["results"][0]["coefficients"], "Q");
        assert_eq!(v["results"][0]["cohomology"][0]["torsion"][0], "q - 1");
        assert!(v["results"][0].get("homology").is_none());
    }

    #[test]
    fn csv_rows() {
        let text = to_csv(&sample());
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("coefficients,section,degree,key,value"));
        assert!(text.contains("Q,cohomology,1,torsion,q - 1"));
        assert!(text.ends_with(",verdict,,ok,true\n"));
    }

    #[test]
    fn pretty_module_names() {
        let text = to_pretty(&sample());
        assert!(text.contains("H^1 = R/(q - 1)"), "{text}");
        assert!(text.contains("verdict: ok"));
    }
}
