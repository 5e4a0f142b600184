//! Driver behind the `salvetti` binary: builds the complex for a Coxeter
//! type or a family file, runs the field pipelines and assembles a report.
//!
//! Exit codes: 0 success, 1 a mathematical red flag (shift mismatch, a
//! Salvetti complex that is not well filtered or has `d∘d ≠ 0`, nonzero
//! free rank on a well-filtered complex, a disconnected Milnor fiber for an
//! irreducible type), 2 an input error.

pub mod config;
pub mod report;

use std::io::Write;
use std::sync::Mutex;
use std::time::Instant;

use salvetti::coxeter::CoxeterSystem;
use salvetti::error::{HomalgError, SeriesError};
use salvetti::filtered_complex::{
    build_generic_complex, build_salvetti_complex, check_d_squared, is_well_filtered, load_family, salvetti_family,
    standard_filtration, write_family, CochainComplex,
};
use salvetti::homalg::{cohomology, homology, monodromy_char_poly, verify_shift_theorem_with, InvariantFactors};
use salvetti::laurent::CoefficientDomain;

use config::{Command, Format, RunConfig, Source};
use report::{
    DegreeGroup, Eigenvalue, FieldResult, MilnorDegree, MilnorReport, Provenance, Report, ShiftSection, SourceInfo,
    Verdict, WellFiltered, SCHEMA_VERSION,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RED_FLAG: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct InputError(pub String);

impl InputError {
    pub fn new(msg: impl Into<String>) -> Self {
        InputError(msg.into())
    }
}

/// What a run produced: the rendered artifact and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub exit_code: i32,
    pub report: Option<Report>,
    pub rendered: String,
}

/// Where the complex comes from, resolved once per run.
enum Input {
    Type(CoxeterSystem),
    Family(salvetti::filtered_complex::PolynomialFamily),
}

impl Input {
    fn complex(&self, domain: CoefficientDomain) -> Result<CochainComplex, String> {
        match self {
            Input::Type(sys) => build_salvetti_complex(sys, domain).map_err(|e| e.to_string()),
            Input::Family(f) => f
                .change_domain(domain)
                .and_then(|f| build_generic_complex(&f))
                .map_err(|e| e.to_string()),
        }
    }

    fn is_type(&self) -> bool {
        matches!(self, Input::Type(_))
    }
}

fn resolve(config: &RunConfig) -> Result<Input, InputError> {
    match &config.source {
        Source::Type { labels, .. } => CoxeterSystem::product(labels)
            .map(Input::Type)
            .map_err(|e| InputError::new(e.to_string())),
        Source::Family(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| InputError::new(format!("cannot read {}: {e}", path.display())))?;
            load_family(&text, config.coeff)
                .map(Input::Family)
                .map_err(|e| InputError::new(format!("{}: {e}", path.display())))
        }
    }
}

struct Progress {
    quiet: bool,
    start: Instant,
    lock: Mutex<()>,
}

impl Progress {
    fn say(&self, msg: std::fmt::Arguments<'_>) {
        if self.quiet {
            return;
        }
        let _g = self.lock.lock().unwrap_or_else(|e| e.into_inner());
        eprintln!("[{:>8.2}s] {msg}", self.start.elapsed().as_secs_f64());
    }
}

/// Problems found by one field pipeline, split by exit code.
#[derive(Default)]
struct Findings {
    red_flags: Vec<String>,
    input: Vec<String>,
}

fn groups(h: &[InvariantFactors], config: &RunConfig) -> Vec<DegreeGroup> {
    h.iter().filter(|e| config.wants_degree(e.degree)).map(DegreeGroup::from).collect()
}

fn well_filtered(c: &CochainComplex) -> WellFiltered {
    match standard_filtration(c) {
        Ok(f) => {
            let check = is_well_filtered(c, &f);
            WellFiltered {
                holds: check.holds(),
                failure: check.failure.map(|f| format!("well-filtered {f}")),
                complexes_checked: check.visited,
            }
        }
        Err(e) => WellFiltered {
            holds: false,
            failure: Some(e.to_string()),
            complexes_checked: 0,
        },
    }
}

fn milnor_section(h: &[InvariantFactors], irreducible: bool, config: &RunConfig) -> Result<MilnorReport, HomalgError> {
    let mono = monodromy_char_poly(h)?;
    let degrees = mono
        .iter()
        .filter_map(|m| m.fiber_degree().map(|k| (k, m)))
        .filter(|&(k, _)| config.wants_degree(k))
        .map(|(k, m)| MilnorDegree {
            degree: k,
            betti: h[k + 1].torsion_dimension(),
            charpoly: m.charpoly.clone(),
            eigenvalues: m
                .factorization
                .factors
                .iter()
                .map(|&(order, multiplicity)| Eigenvalue { order, multiplicity })
                .collect(),
            non_cyclotomic: (!m.factorization.is_fully_cyclotomic()).then(|| m.factorization.remainder.clone()),
        })
        .collect();
    Ok(MilnorReport {
        irreducible,
        note: (!irreducible).then(|| {
            "reducible type: outside the irreducibility hypothesis of the Milnor fiber identification; \
             numbers are reported but not interpreted"
                .to_string()
        }),
        degrees,
        provenance: Provenance::standard(),
    })
}

/// The integral pass: only the construction checks make sense over `Z`.
fn integral_pass(input: &Input) -> Result<(FieldResult, Findings), String> {
    let c = input.complex(CoefficientDomain::Integers)?;
    let mut findings = Findings::default();
    let d2 = check_d_squared(&c);
    let wf = well_filtered(&c);
    if input.is_type() {
        if !d2 {
            findings.red_flags.push("Z: d∘d ≠ 0 on the Salvetti complex".into());
        }
        if let Some(f) = &wf.failure {
            findings.red_flags.push(format!("Z: Salvetti complex not well filtered: {f}"));
        }
    }
    Ok((
        FieldResult {
            coefficients: CoefficientDomain::Integers,
            d_squared_zero: d2,
            well_filtered: wf,
            cohomology: None,
            homology: None,
            milnor: None,
            shift: None,
        },
        findings,
    ))
}

fn field_pass(
    input: &Input,
    domain: CoefficientDomain,
    irreducible: bool,
    config: &RunConfig,
    progress: &Progress,
) -> Result<(FieldResult, Findings), String> {
    let c = input.complex(domain)?;
    let mut findings = Findings::default();
    let is_type = input.is_type();
    let d2 = check_d_squared(&c);
    if !d2 {
        findings.red_flags.push(format!("{domain}: d∘d ≠ 0"));
    }
    let wf = well_filtered(&c);
    progress.say(format_args!(
        "{domain}: well filtered: {}",
        if wf.holds { "yes" } else { "no" }
    ));
    if let Some(f) = &wf.failure {
        if is_type {
            findings.red_flags.push(format!("{domain}: Salvetti complex not well filtered: {f}"));
        } else if matches!(config.command, Command::Verify | Command::Family) {
            findings.input.push(format!("{domain}: family is not well filtered: {f}"));
        }
    }

    let want_shift = config.shift_check && wf.holds && config.command != Command::Cohomology;
    let (h, shift) = if want_shift {
        progress.say(format_args!("{domain}: computing invariant factors"));
        let result = verify_shift_theorem_with(
            &c,
            config.window,
            |k| config.wants_degree(k),
            |d| {
                progress.say(format_args!(
                    "{domain}: shift degree {}: window {} vs torsion {} (radius {}) {}",
                    d.degree,
                    d.m_side,
                    d.r_side,
                    d.radius,
                    if d.matches { "ok" } else { "MISMATCH" }
                ))
            },
        );
        match result {
            Ok(r) => {
                for d in r.degrees.iter().filter(|d| !d.matches) {
                    findings.red_flags.push(format!(
                        "{domain}: shift mismatch in degree {}: dim H^{}(C ⊗ M) = {}, torsion dim H^{}(C) = {}, free rank {}",
                        d.degree,
                        d.degree,
                        d.m_side,
                        d.degree + 1,
                        d.r_side,
                        d.free_rank
                    ));
                }
                let section = ShiftSection {
                    all_match: r.all_match(),
                    degrees: r.degrees,
                };
                (r.cohomology, Some(section))
            }
            Err(HomalgError::Series(e @ SeriesError::NotStabilized { .. })) => {
                findings.red_flags.push(format!("{domain}: {e}"));
                (cohomology(&c).map_err(|e| e.to_string())?, None)
            }
            Err(e) => return Err(e.to_string()),
        }
    } else {
        progress.say(format_args!("{domain}: computing invariant factors"));
        (cohomology(&c).map_err(|e| e.to_string())?, None)
    };

    if wf.holds {
        for e in h.iter().filter(|e| e.free_rank > 0) {
            findings.red_flags.push(format!(
                "{domain}: H^{} has free rank {} on a well-filtered complex",
                e.degree, e.free_rank
            ));
        }
    }

    let homology_groups = if matches!(config.command, Command::Verify | Command::Family) {
        let hh = homology(&c).map_err(|e| e.to_string())?;
        for (k, e) in hh.iter().enumerate() {
            let expected = h.get(k + 1).map_or(0, InvariantFactors::torsion_dimension);
            if e.torsion_dimension() != expected {
                findings.red_flags.push(format!(
                    "{domain}: torsion dim H_{k} = {} but torsion dim H^{} = {expected}",
                    e.torsion_dimension(),
                    k + 1
                ));
            }
        }
        Some(groups(&hh, config))
    } else {
        None
    };

    let milnor = if config.command == Command::Milnor {
        let m = milnor_section(&h, irreducible, config).map_err(|e| e.to_string())?;
        if irreducible && h.get(1).map_or(0, InvariantFactors::torsion_dimension) != 1 {
            findings
                .red_flags
                .push(format!("{domain}: b_0 ≠ 1 for an irreducible type (Milnor fiber must be connected)"));
        }
        Some(m)
    } else {
        None
    };

    Ok((
        FieldResult {
            coefficients: domain,
            d_squared_zero: d2,
            well_filtered: wf,
            cohomology: (config.command != Command::Milnor).then(|| groups(&h, config)),
            homology: homology_groups,
            milnor,
            shift,
        },
        findings,
    ))
}

fn input_failure(msg: impl std::fmt::Display) -> Outcome {
    Outcome {
        exit_code: EXIT_INPUT,
        report: None,
        rendered: format!("error: {msg}\n"),
    }
}

/// Run one configuration. Nothing is printed to stdout; progress goes to stderr.
pub fn execute(config: &RunConfig) -> Outcome {
    let input = match resolve(config) {
        Ok(i) => i,
        Err(e) => return input_failure(e),
    };

    // `family --type X` prints the Salvetti family of X in file format.
    if config.command == Command::Family {
        if let Input::Type(sys) = &input {
            let domain = if config.coeff.is_field() {
                config.coeff
            } else {
                CoefficientDomain::Integers
            };
            return match salvetti_family(sys, domain) {
                Ok(f) => Outcome {
                    exit_code: EXIT_OK,
                    report: None,
                    rendered: write_family(&f),
                },
                Err(e) => input_failure(e),
            };
        }
    }

    let (irreducible, generators) = match &input {
        Input::Type(sys) => (sys.is_irreducible(), sys.rank()),
        Input::Family(f) => (false, f.generator_count()),
    };
    let progress = Progress {
        quiet: config.quiet,
        start: Instant::now(),
        lock: Mutex::new(()),
    };
    let fields = config.fields();
    let integral = config.coeff == CoefficientDomain::Integers;

    let passes: Vec<Result<(FieldResult, Findings), String>> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        if integral {
            handles.push(scope.spawn(|| integral_pass(&input)));
        }
        for &d in &fields {
            let (input, progress) = (&input, &progress);
            handles.push(scope.spawn(move || field_pass(input, d, irreducible, config, progress)));
        }
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err("internal error: worker panicked".into())))
            .collect()
    });

    let mut results = Vec::new();
    let mut red_flags = Vec::new();
    let mut input_problems = Vec::new();
    for pass in passes {
        match pass {
            Ok((r, f)) => {
                results.push(r);
                red_flags.extend(f.red_flags);
                input_problems.extend(f.input);
            }
            Err(e) => return input_failure(e),
        }
    }

    let ranks = results
        .first()
        .and_then(|_| input.complex(fields[0]).ok())
        .map(|c| c.ranks().to_vec())
        .unwrap_or_default();
    let source = match &config.source {
        Source::Type { spec, .. } => SourceInfo {
            kind: "type".into(),
            label: Some(spec.clone()),
            path: None,
            generators,
            ranks,
            irreducible: Some(irreducible),
        },
        Source::Family(path) => SourceInfo {
            kind: "family".into(),
            label: None,
            path: Some(path.display().to_string()),
            generators,
            ranks,
            irreducible: None,
        },
    };
    let exit_code = if !red_flags.is_empty() {
        EXIT_RED_FLAG
    } else if !input_problems.is_empty() {
        EXIT_INPUT
    } else {
        EXIT_OK
    };
    let problems: Vec<String> = red_flags.into_iter().chain(input_problems).collect();
    let report = Report {
        schema: SCHEMA_VERSION,
        command: config.command.name().into(),
        source,
        results,
        verdict: Verdict {
            ok: problems.is_empty(),
            problems,
        },
    };
    let rendered = match config.format {
        Format::Pretty => report::to_pretty(&report),
        Format::Json => report::to_json(&report),
        Format::Csv => report::to_csv(&report),
    };
    Outcome {
        exit_code,
        report: Some(report),
        rendered,
    }
}

/// [`execute`], then write the artifact to `--out` or stdout. Returns the exit code.
pub fn run(config: &RunConfig) -> i32 {
    let outcome = execute(config);
    if outcome.report.is_none() && outcome.exit_code != EXIT_OK {
        eprint!("{}", outcome.rendered);
        return outcome.exit_code;
    }
    let written = match &config.out {
        Some(path) => std::fs::write(path, &outcome.rendered)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(outcome.rendered.as_bytes())
            .map_err(|e| format!("cannot write to stdout: {e}")),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_INPUT;
    }
    if let Some(r) = &outcome.report {
        for p in &r.verdict.problems {
            eprintln!("problem: {p}");
        }
    }
    outcome.exit_code
}
