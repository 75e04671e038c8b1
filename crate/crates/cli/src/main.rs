//! Batch front end: construct the built-in products, run the solver and the
//! verifier, and emit deterministic text or JSON reports.
//!
//! Exit codes: 0 on success, 1 when a mathematical condition is violated,
//! 2 on input errors (unknown example, bad flags, unparsable documents).

use std::path::PathBuf;
use std::process::ExitCode;

use braided_pbw::catalog::{build_example, family_kappa, ExampleBundle};
use braided_pbw::deform::{
    check_invariance, check_overlap, overlap_intersection, solve_kappa, AnsatzSpace,
};
use braided_pbw::grading::hilbert_prefix;
use braided_pbw::hopf::check_hopf_axioms;
use braided_pbw::parse::{parse_ansatz_doc, parse_kappa_doc, ParamValue, Params};
use braided_pbw::products::{braiding_cross, check_cross_module_map, check_quasitriangular, BraidingSpec};
use braided_pbw::report::{
    AxiomsReport, BuildReport, CheckOutcome, DimsReport, ListReport, SolveReport, VerifyReport,
};
use braided_pbw::Error;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Environment variable holding the default degree bound for `check-axioms`
/// and `dims` when `--degree` is not given.
const DEGREE_ENV: &str = "BPBW_DEGREE_BOUND";
const DEGREE_DEFAULT: usize = 4;

#[derive(Parser)]
#[command(
    name = "bpbw",
    version,
    about = "braided and twisted tensor products of Hopf-module algebras and \
             the parameter spaces of their deformations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in examples and the parameters they accept
    List {
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Construct an example and report its presentation and action table
    Build {
        /// Example name, as shown by `list`
        name: String,
        #[command(flatten)]
        params: ParamOpts,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Solve for the full space of deformation maps
    Solve {
        /// Example name, as shown by `list`
        name: String,
        /// Restrict the solve to an ansatz document instead of the full
        /// Hopf-basis ansatz
        #[arg(long, value_name = "FILE")]
        ansatz: Option<PathBuf>,
        #[command(flatten)]
        params: ParamOpts,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Check one deformation map against both conditions
    Verify {
        /// Example name, as shown by `list`
        name: String,
        /// Deformation map document; defaults to the example's documented
        /// family with parameters taken from the flags
        #[arg(long, value_name = "FILE")]
        kappa: Option<PathBuf>,
        #[command(flatten)]
        params: ParamOpts,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Run the structural checks behind an example
    CheckAxioms {
        /// Example name, as shown by `list`
        name: String,
        /// Degree bound for the Hopf axiom sweep
        #[arg(long)]
        degree: Option<usize>,
        #[command(flatten)]
        params: ParamOpts,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Graded dimensions of an example's algebra
    Dims {
        /// Example name, as shown by `list`
        name: String,
        /// Largest degree to compute
        #[arg(long)]
        degree: Option<usize>,
        #[command(flatten)]
        params: ParamOpts,
        #[command(flatten)]
        out: OutputOpts,
    },
}

#[derive(Args)]
struct ParamOpts {
    /// Root-of-unity order for the quantum examples
    #[arg(long)]
    n: Option<i64>,
    /// R-matrix parameter of the Sweedler plane
    #[arg(long)]
    lambda: Option<i64>,
    /// First three-generator coefficient
    #[arg(long)]
    a: Option<i64>,
    /// Second three-generator coefficient
    #[arg(long)]
    b: Option<i64>,
    /// Third three-generator coefficient
    #[arg(long)]
    c: Option<i64>,
    /// Square-root convention for the quantum parameter
    #[arg(long, value_parser = ["odd", "extend", "auto"])]
    half: Option<String>,
    /// Grouplike exponent in the documented families
    #[arg(long)]
    s: Option<i64>,
    /// Families with several exponents: the mixed-pair exponent
    #[arg(long)]
    s0: Option<i64>,
    /// Families with several exponents: the first relation's exponent
    #[arg(long)]
    s1: Option<i64>,
    /// Families with several exponents: the second relation's exponent
    #[arg(long)]
    s2: Option<i64>,
    /// Scalar coefficient in the documented families
    #[arg(long)]
    alpha: Option<i64>,
    /// Extra integer parameter for map and ansatz documents (repeatable)
    #[arg(long = "set", value_name = "KEY=INT")]
    set: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct OutputOpts {
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to a file instead of stdout
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

/// A failed run: what to print on stderr and which code to exit with.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn math(message: impl Into<String>) -> Failure {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::UnknownExample(_)
            | Error::BadParams(_)
            | Error::Parse(_)
            | Error::FiniteBasisRequired(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::List { out } => {
            let report = ListReport::new();
            emit(&out, report.render(), to_json(&report))
        }
        Command::Build { name, params, out } => {
            let bundle = build_example(&name, &params.build_params()?)?;
            let report = BuildReport::new(&bundle)?;
            emit(&out, report.render(), to_json(&report))
        }
        Command::Solve {
            name,
            ansatz,
            params,
            out,
        } => {
            let bundle = build_example(&name, &params.build_params()?)?;
            let (space, desc, expected) = match &ansatz {
                Some(path) => {
                    let src = read(path)?;
                    let resolved = doc_params(&bundle, &params.doc_params()?);
                    let space = parse_ansatz_doc(&src, &bundle.module, &resolved)?;
                    // A restricted ansatz solves a smaller problem, so the
                    // documented full-space dimension is not compared.
                    (space, format!("document {}", path.display()), None)
                }
                None => (
                    AnsatzSpace::full(&bundle.module)?,
                    "full Hopf-basis ansatz".to_string(),
                    bundle.expected.parameter_dim,
                ),
            };
            let solution = solve_kappa(&bundle.module, &space)?;
            let report =
                SolveReport::new(&name, &bundle.module, &desc, &space, &solution, expected)?;
            emit(&out, report.render(), to_json(&report))?;
            match expected {
                Some(want) if want != report.dimension => Err(Failure::math(format!(
                    "solved dimension {} differs from the documented {want}",
                    report.dimension
                ))),
                _ => Ok(()),
            }
        }
        Command::Verify {
            name,
            kappa,
            params,
            out,
        } => {
            let bundle = build_example(&name, &params.build_params()?)?;
            let extra = params.doc_params()?;
            let map = match &kappa {
                Some(path) => {
                    let src = read(path)?;
                    parse_kappa_doc(&src, &bundle.module, &doc_params(&bundle, &extra))?
                }
                None => family_kappa(&bundle, &extra)?,
            };
            let overlaps = overlap_intersection(bundle.module.alg())?;
            let invariance = check_invariance(&map)?;
            let overlap = check_overlap(&map, &overlaps)?;
            let report =
                VerifyReport::new(&name, &map, vec![(&invariance).into(), (&overlap).into()]);
            let pass = report.pass;
            emit(&out, report.render(), to_json(&report))?;
            if pass {
                Ok(())
            } else {
                Err(Failure::math("one or more conditions failed"))
            }
        }
        Command::CheckAxioms {
            name,
            degree,
            params,
            out,
        } => {
            let bundle = build_example(&name, &params.build_params()?)?;
            let bound = degree_bound(degree)?;
            let report = AxiomsReport::new(&name, axiom_checks(&bundle, bound));
            let pass = report.pass;
            emit(&out, report.render(), to_json(&report))?;
            if pass {
                Ok(())
            } else {
                Err(Failure::math("one or more structural checks failed"))
            }
        }
        Command::Dims {
            name,
            degree,
            params,
            out,
        } => {
            let bundle = build_example(&name, &params.build_params()?)?;
            let max_degree = degree_bound(degree)?;
            let dims = hilbert_prefix(bundle.module.alg(), max_degree)?;
            let factor_cross_check = match &bundle.factors {
                Some((x, y)) => {
                    let dx = hilbert_prefix(x.alg(), max_degree)?;
                    let dy = hilbert_prefix(y.alg(), max_degree)?;
                    Some(
                        (0..=max_degree)
                            .map(|d| (0..=d).map(|i| dx[i] * dy[d - i]).sum())
                            .collect::<Vec<usize>>(),
                    )
                }
                None => None,
            };
            let report = DimsReport {
                name: name.clone(),
                max_degree,
                dims,
                factor_cross_check,
                notes: bundle.warnings.clone(),
            };
            let consistent = report
                .factor_cross_check
                .as_ref()
                .map_or(true, |cross| cross == &report.dims);
            emit(&out, report.render(), to_json(&report))?;
            if consistent {
                Ok(())
            } else {
                Err(Failure::math(
                    "graded dimensions differ from the factor cross-check",
                ))
            }
        }
    }
}

impl ParamOpts {
    /// The construction parameters an example accepts; anything the example
    /// does not declare is rejected by the catalog.
    fn build_params(&self) -> Result<Params, Failure> {
        let mut p = Params::new();
        let ints = [
            ("n", self.n),
            ("lambda", self.lambda),
            ("a", self.a),
            ("b", self.b),
            ("c", self.c),
        ];
        for (key, v) in ints {
            if let Some(v) = v {
                p.insert(key.to_string(), ParamValue::Int(v));
            }
        }
        if let Some(h) = &self.half {
            p.insert("half".to_string(), ParamValue::Str(h.clone()));
        }
        Ok(p)
    }

    /// The parameters available to map and ansatz documents.
    fn doc_params(&self) -> Result<Params, Failure> {
        let mut p = Params::new();
        let ints = [
            ("s", self.s),
            ("s0", self.s0),
            ("s1", self.s1),
            ("s2", self.s2),
            ("alpha", self.alpha),
        ];
        for (key, v) in ints {
            if let Some(v) = v {
                p.insert(key.to_string(), ParamValue::Int(v));
            }
        }
        for item in &self.set {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Failure::input(format!("--set wants KEY=INT, got {item:?}")))?;
            let value: i64 = value
                .parse()
                .map_err(|_| Failure::input(format!("--set {key}: {value:?} is not an integer")))?;
            p.insert(key.to_string(), ParamValue::Int(value));
        }
        Ok(p)
    }
}

/// Documents resolve names against the bundle parameters, then the family
/// defaults, then anything passed on the command line.
fn doc_params(bundle: &ExampleBundle, extra: &Params) -> Params {
    let mut p = bundle.params.clone();
    if let Some(family) = &bundle.expected.family {
        for (k, v) in &family.defaults {
            p.entry(k.clone()).or_insert(ParamValue::Int(*v));
        }
    }
    for (k, v) in extra {
        p.insert(k.clone(), v.clone());
    }
    p
}

fn degree_bound(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(d) = flag {
        return Ok(d);
    }
    match std::env::var(DEGREE_ENV) {
        Ok(raw) => raw
            .parse()
            .map_err(|_| Failure::input(format!("{DEGREE_ENV}={raw:?} is not a degree"))),
        Err(_) => Ok(DEGREE_DEFAULT),
    }
}

fn axiom_checks(bundle: &ExampleBundle, bound: usize) -> Vec<CheckOutcome> {
    let mut results = vec![];
    let mut record = |check: &str, outcome: braided_pbw::Result<()>, detail: &str| match outcome {
        Ok(()) => results.push(CheckOutcome::passed(check, detail)),
        Err(e) => results.push(CheckOutcome::failed(check, &e.to_string())),
    };

    record(
        "Hopf axioms",
        check_hopf_axioms(&bundle.hopf, bound as u32),
        &format!("verified to degree {bound}"),
    );
    record(
        "module algebra",
        braided_pbw::action::ModuleAlgebra::new(
            bundle.module.alg().clone(),
            bundle.module.action().clone(),
        )
        .map(|_| ()),
        "relations invariant under the action",
    );
    if let Some((x, y)) = &bundle.factors {
        match &bundle.braiding {
            Some(BraidingSpec::RMatrix(r)) => {
                record(
                    "quasitriangular R-matrix",
                    check_quasitriangular(&bundle.hopf, r, &[x.action().clone(), y.action().clone()]),
                    "hexagons, counit, intertwining, braid relation",
                );
            }
            Some(spec @ BraidingSpec::WeightFormula { .. }) => {
                record(
                    "weight-formula braiding",
                    braiding_cross(y.action(), x.action(), spec)
                        .and_then(|cross| check_cross_module_map(y.action(), x.action(), &cross)),
                    "cross map commutes with the action",
                );
            }
            None => {}
        }
        if let Some(twist) = &bundle.twist {
            record(
                "twist",
                check_cross_module_map(y.action(), x.action(), twist),
                "cross map commutes with the action",
            );
        }
    }
    results
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

fn emit(out: &OutputOpts, text: String, json: String) -> Result<(), Failure> {
    let body = match out.format {
        Format::Text => text,
        Format::Json => json,
    };
    match &out.output {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}
