//! Command-line surface and the validated run configuration.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use salvetti::coxeter::{parse_type_spec, FiniteTypeLabel};
use salvetti::homalg::WindowPolicy;
use salvetti::laurent::CoefficientDomain;

use crate::InputError;

#[derive(Parser, Debug)]
#[command(name = "salvetti", version, about = "Local-system cohomology of finite-type Artin groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandLine,
}

#[derive(Subcommand, Debug)]
pub enum CommandLine {
    /// Invariant factors of H^*(G_W; R) for the rank-one local system.
    Cohomology(CommonArgs),
    /// Betti numbers and monodromy of the Milnor fiber.
    Milnor(CommonArgs),
    /// Well-filtered check and the degree-shift comparison with M = A[[q, q^-1]].
    Verify(CommonArgs),
    /// Load and validate a custom family file and run the full pipeline.
    /// With `--type`, print the Salvetti family of that type in file format.
    Family(CommonArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Coxeter type, e.g. `A2`, `I2(5)` or a product `A2xA1`.
    #[arg(long = "type", value_name = "LABEL")]
    pub type_label: Option<String>,
    /// Family file (`subset ; generator ; polynomial` per line).
    #[arg(long, value_name = "PATH")]
    pub family: Option<PathBuf>,
    /// Coefficients: `Q`, `Zp:<p>`, or `Z` (runs Q and each of `--primes`).
    #[arg(long, default_value = "Q")]
    pub coeff: String,
    /// Primes used when `--coeff Z`.
    #[arg(long, value_delimiter = ',', default_value = "2,3,5,7")]
    pub primes: Vec<u64>,
    /// Fixed starting window radius instead of the size-derived default.
    #[arg(long, value_name = "N")]
    pub window_radius: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
    /// Degrees to report, e.g. `0,2-3`.
    #[arg(long, value_name = "LIST")]
    pub degrees: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Skip the window comparison (it dominates the running time on E7/E8).
    #[arg(long)]
    pub no_shift_check: bool,
    /// Do not stream per-degree progress to stderr.
    #[arg(long, short)]
    pub quiet: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Cohomology,
    Milnor,
    Verify,
    Family,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Cohomology => "cohomology",
            Command::Milnor => "milnor",
            Command::Verify => "verify",
            Command::Family => "family",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Type { spec: String, labels: Vec<FiniteTypeLabel> },
    Family(PathBuf),
}

/// Inclusive degree ranges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeFilter(Vec<(usize, usize)>);

impl DegreeFilter {
    pub fn parse(s: &str) -> Result<Self, InputError> {
        let bad = || InputError::new(format!("bad degree list `{s}` (expected e.g. `0,2-3`)"));
        let mut ranges = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            let (a, b) = match part.split_once('-') {
                Some((a, b)) => (a.trim(), b.trim()),
                None => (part, part),
            };
            let a: usize = a.parse().map_err(|_| bad())?;
            let b: usize = b.parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            ranges.push((a, b));
        }
        Ok(DegreeFilter(ranges))
    }

    pub fn contains(&self, k: usize) -> bool {
        self.0.iter().any(|&(a, b)| a <= k && k <= b)
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub source: Source,
    pub coeff: CoefficientDomain,
    pub primes: Vec<CoefficientDomain>,
    pub window: WindowPolicy,
    pub format: Format,
    pub degrees: Option<DegreeFilter>,
    pub out: Option<PathBuf>,
    pub shift_check: bool,
    pub quiet: bool,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, InputError> {
        let (command, args) = match cli.command {
            CommandLine::Cohomology(a) => (Command::Cohomology, a),
            CommandLine::Milnor(a) => (Command::Milnor, a),
            CommandLine::Verify(a) => (Command::Verify, a),
            CommandLine::Family(a) => (Command::Family, a),
        };
        Self::new(command, args)
    }

    pub fn new(command: Command, args: CommonArgs) -> Result<Self, InputError> {
        let source = match (args.type_label, args.family) {
            (Some(spec), None) => {
                let labels = parse_type_spec(&spec).map_err(|e| InputError::new(e.to_string()))?;
                Source::Type { spec, labels }
            }
            (None, Some(path)) => Source::Family(path),
            (Some(_), Some(_)) => return Err(InputError::new("give either --type or --family, not both")),
            (None, None) => return Err(InputError::new("one of --type or --family is required")),
        };
        if command == Command::Milnor && matches!(source, Source::Family(_)) {
            return Err(InputError::new("milnor needs a Coxeter type (--type)"));
        }
        let coeff: CoefficientDomain = args.coeff.parse().map_err(|e: salvetti::error::LaurentError| InputError::new(e.to_string()))?;
        let primes = args
            .primes
            .iter()
            .map(|&p| CoefficientDomain::prime_field(p).map_err(|e| InputError::new(format!("--primes: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(r) = args.window_radius {
            if r < 1 {
                return Err(InputError::new("--window-radius must be positive"));
            }
        }
        let degrees = args.degrees.as_deref().map(DegreeFilter::parse).transpose()?;
        Ok(RunConfig {
            command,
            source,
            coeff,
            primes,
            window: WindowPolicy {
                initial_radius: args.window_radius,
                ..WindowPolicy::default()
            },
            format: args.format,
            degrees,
            out: args.out,
            shift_check: !args.no_shift_check,
            quiet: args.quiet,
        })
    }

    /// The field pipelines to run: the chosen field, or Q plus the primes for Z.
    pub fn fields(&self) -> Vec<CoefficientDomain> {
        match self.coeff {
            CoefficientDomain::Integers => {
                let mut v = vec![CoefficientDomain::Rationals];
                for &p in &self.primes {
                    if !v.contains(&p) {
                        v.push(p);
                    }
                }
                v
            }
            d => vec![d],
        }
    }

    pub fn wants_degree(&self, k: usize) -> bool {
        self.degrees.as_ref().map_or(true, |f| f.contains(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args() -> CommonArgs {
        CommonArgs {
            type_label: Some("A2".into()),
            family: None,
            coeff: "Q".into(),
            primes: vec![2, 3],
            window_radius: None,
            format: Format::Json,
            degrees: None,
            out: None,
            no_shift_check: false,
            quiet: true,
        }
    }

    #[test]
    fn degree_filter() {
        let f = DegreeFilter::parse("0, 2-3").unwrap();
        assert!(f.contains(0) && !f.contains(1) && f.contains(2) && f.contains(3) && !f.contains(4));
        assert!(DegreeFilter::parse("3-1").is_err());
        assert!(DegreeFilter::parse("x").is_err());
        assert!(DegreeFilter::parse("").is_err());
    }

    #[test]
    fn exactly_one_source() {
        let mut a = args();
        a.family = Some("f.txt".into());
        assert!(RunConfig::new(Command::Verify, a).is_err());
        let mut a = args();
        a.type_label = None;
        assert!(RunConfig::new(Command::Verify, a).is_err());
    }

    #[test]
    fn integer_coefficients_expand() {
        let mut a = args();
        a.coeff = "Z".into();
        let c = RunConfig::new(Command::Cohomology, a).unwrap();
        let names: Vec<String> = c.fields().iter().map(ToString::to_string).collect();
        assert_eq!(names, ["Q", "Zp:2", "Zp:3"]);
    }

    #[test]
    fn rejects_bad_inputs() {
        let mut a = args();
        a.primes = vec![4];
        assert!(RunConfig::new(Command::Cohomology, a).is_err());
        let mut a = args();
        a.type_label = Some("Q7".into());
        assert!(RunConfig::new(Command::Cohomology, a).is_err());
        let mut a = args();
        a.type_label = None;
        a.family = Some("f.txt".into());
        assert!(RunConfig::new(Command::Milnor, a).is_err());
    }
}
