//! Subcommands.

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mcred::dgla::{adjoint_orbit_flow, check_nondegenerate_on_cohomology, validate_dgla, validate_form, Nondegeneracy};
use mcred::flow::{ControlPath, EquivalencePath};
use mcred::graded::{format_rational, parse_rational};
use mcred::hamiltonian::{
    build_brst, build_linfty, check_brst_square_zero, check_mc_equals_fiber, default_cap, quadratic_specialization,
    validate_hamiltonian_system, BrstAlgebra, HamiltonianSystem, Normalization,
};
use mcred::linfty::{adjoint_equivalence_flow, check_invariance, gauge_equivalence_flow, validate_linfty, LInftyAlgebra};
use mcred::maurer_cartan::{
    check_equivariance, check_gauge_homomorphism, check_moment_identity, curvature, gauge_flow, max_curvature_drift,
    mc_solve, CurvatureModel, NewtonOptions, OrbitSpec, Sampling, ToFloatModel,
};
use mcred::reduction::{
    certify_symplectic, check_self_duality, orbit_corrected_complex, reduced_tangent, tangent_complex_at,
    SymplecticCertificate,
};
use mcred::{dgla::DglAlgebra, Error, GradedSpace, GradedVector, Matrix, Parity, Rational, Scalar};
use serde_json::{json, Map, Value};

use crate::files::{self, AlgebraFile, HamiltonianFile, Input};
use crate::report::{InputDigest, Report};
use crate::CliError;

pub const DEFAULT_SEED: u64 = 0x6d63_5eed;

#[derive(Debug, Parser)]
#[command(name = "mcred", version, about = "Maurer-Cartan equations, tangent complexes and Hamiltonian L∞-structures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "FILE")]
    pub report: Option<PathBuf>,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the axioms of an algebra or Hamiltonian system file.
    Validate(ValidateArgs),
    /// Solve the Maurer-Cartan equation Φ(x) = base by Newton iteration.
    Mc(McArgs),
    /// Tangent complex, self-duality and the symplectic certificate at a point.
    Tangent(TangentArgs),
    /// Integrate a gauge or adjoint flow under piecewise-constant controls.
    Flow(FlowArgs),
    /// Build the L∞-algebra, BRST differential and quadratic specialization of a Hamiltonian system.
    FromHamiltonian(FromHamiltonianArgs),
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    pub file: PathBuf,
    /// Highest arity of the L∞ Jacobi identities (default 2K−1 for top bracket l_K, at least 3).
    #[arg(long)]
    pub max_arity: Option<usize>,
    /// Also check the gauge homomorphism, moment and equivariance identities at sample points.
    #[arg(long)]
    pub identities: bool,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Random sample points per identity.
    #[arg(long, default_value_t = 100)]
    pub points: usize,
}

#[derive(Debug, Args)]
pub struct McArgs {
    pub file: PathBuf,
    /// Orbit base as `label=value,...` (default 0).
    #[arg(long, default_value = "")]
    pub base: String,
    /// Starting point as `label=value,...`.
    #[arg(long)]
    pub seed: String,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, default_value_t = 50)]
    pub max_iter: usize,
}

#[derive(Debug, Args)]
pub struct TangentArgs {
    pub file: PathBuf,
    /// Point as `label=value,...` with exact values (default 0).
    #[arg(long, default_value = "")]
    pub point: String,
    /// Orbit base (default 0).
    #[arg(long, default_value = "")]
    pub base: String,
    /// Quotient the last term by the orbit directions; needed when the base is not fixed.
    #[arg(long)]
    pub orbit_corrected: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FlowKind {
    Gauge,
    Adjoint,
}

#[derive(Debug, Args)]
pub struct FlowArgs {
    pub file: PathBuf,
    /// Initial value: an odd point for gauge flows, an even vector for adjoint flows.
    #[arg(long, default_value = "")]
    pub start: String,
    /// Segments `label=value,...@duration` separated by `;`.
    #[arg(long)]
    pub controls: String,
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = FlowKind::Gauge)]
    pub kind: FlowKind,
    /// Starting point of the gauge path carried along by an L∞ adjoint flow (default 0).
    #[arg(long, default_value = "")]
    pub point: String,
    /// Write the trajectory as CSV.
    #[arg(long, value_name = "FILE")]
    pub csv: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-8)]
    pub drift_tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormalizationArg {
    Factorial,
    Literal,
}

impl From<NormalizationArg> for Normalization {
    fn from(n: NormalizationArg) -> Self {
        match n {
            NormalizationArg::Factorial => Normalization::Factorial,
            NormalizationArg::Literal => Normalization::Literal,
        }
    }
}

#[derive(Debug, Args)]
pub struct FromHamiltonianArgs {
    pub file: PathBuf,
    #[arg(long, value_enum, default_value_t = NormalizationArg::Factorial)]
    pub normalization: NormalizationArg,
    /// Write the L∞-algebra as an algebra file.
    #[arg(long, value_name = "FILE")]
    pub emit_linfty: Option<PathBuf>,
    /// Write the BRST generator images as JSON.
    #[arg(long, value_name = "FILE")]
    pub emit_brst: Option<PathBuf>,
    /// Write the Lie superalgebra of a quadratic system as an algebra file.
    #[arg(long, value_name = "FILE")]
    pub emit_specialization: Option<PathBuf>,
    /// Run the L∞, fibre, specialization and BRST checks.
    #[arg(long)]
    pub check: bool,
    /// BRST degree cap (default 2·max deg H + 2).
    #[arg(long)]
    pub cap: Option<usize>,
    /// Highest arity of the L∞ Jacobi identities (default 2K−1, at least 4).
    #[arg(long)]
    pub max_arity: Option<usize>,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::Mc(_) => "mc",
            Command::Tangent(_) => "tangent",
            Command::Flow(_) => "flow",
            Command::FromHamiltonian(_) => "from-hamiltonian",
        }
    }

    fn file(&self) -> &Path {
        match self {
            Command::Validate(a) => &a.file,
            Command::Mc(a) => &a.file,
            Command::Tangent(a) => &a.file,
            Command::Flow(a) => &a.file,
            Command::FromHamiltonian(a) => &a.file,
        }
    }
}

/// Runs the command, prints the report and returns the exit code.
pub fn execute(cli: &Cli) -> i32 {
    match run(cli) {
        Ok(report) => {
            if cli.json {
                print!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if let Some(path) = &cli.report {
                if let Err(e) = std::fs::write(path, report.to_json()) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return 2;
                }
            }
            if report.passed() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let path = cli.command.file();
    let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let mut report = Report::new(cli.command.name(), InputDigest::of(&bytes));
    let text = std::str::from_utf8(&bytes).map_err(|_| CliError::Input("input is not UTF-8".into()))?;
    let input = files::parse_input(text)?;
    report.set("kind", input.kind());
    let start = Instant::now();
    match &cli.command {
        Command::Validate(a) => validate(&input, a, &mut report)?,
        Command::Mc(a) => mc(input, a, &mut report)?,
        Command::Tangent(a) => tangent(input, a, &mut report)?,
        Command::Flow(a) => flow(input, a, &mut report)?,
        Command::FromHamiltonian(a) => from_hamiltonian(input, a, &mut report)?,
    }
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

/// A model the Maurer-Cartan commands can work with. Hamiltonian systems
/// are turned into their L∞-algebra.
enum Model {
    Dgla(DglAlgebra<Rational>),
    LInfty(LInftyAlgebra<Rational>),
}

fn model(input: Input) -> Result<Model, CliError> {
    Ok(match input {
        Input::Dgla(g) => Model::Dgla(g),
        Input::LInfty(l) => Model::LInfty(l),
        Input::Hamiltonian(s) => Model::LInfty(build_linfty(&s, Normalization::Factorial)?),
    })
}

macro_rules! with_model {
    ($m:expr, $g:ident => $body:expr) => {
        match $m {
            Model::Dgla($g) => $body,
            Model::LInfty($g) => $body,
        }
    };
}

/// `label=value,...` pairs; the empty string gives none.
fn assignments(text: &str) -> Result<Vec<(String, Rational)>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let (label, value) =
                s.split_once('=').ok_or_else(|| CliError::Input(format!("expected label=value, found {s:?}")))?;
            Ok((label.trim().to_string(), parse_rational(value)?))
        })
        .collect()
}

fn exact_vector(space: &Arc<GradedSpace>, text: &str) -> Result<GradedVector<Rational>, CliError> {
    let pairs = assignments(text)?;
    Ok(GradedVector::from_labels(space, pairs.iter().map(|(l, v)| (l.as_str(), v.clone())))?)
}

fn to_float(v: &GradedVector<Rational>) -> Result<GradedVector<f64>, CliError> {
    Ok(GradedVector::from_coeffs(v.space(), v.coeffs().iter().map(|c| c.to_f64()).collect())?)
}

fn controls(space: &Arc<GradedSpace>, text: &str) -> Result<ControlPath<f64>, CliError> {
    let mut segments = Vec::new();
    for seg in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (values, duration) = match seg.rsplit_once('@') {
            Some((v, d)) => (v, parse_rational(d)?.to_f64()),
            None => (seg, 1.0),
        };
        segments.push((duration, to_float(&exact_vector(space, values)?)?));
    }
    Ok(ControlPath::new(segments)?)
}

fn exact_map(v: &GradedVector<Rational>) -> Map<String, Value> {
    let sp = v.space();
    v.coeffs().iter().enumerate().map(|(i, c)| (sp.label(i).to_string(), Value::from(format_rational(c)))).collect()
}

fn float_map(v: &GradedVector<f64>) -> Map<String, Value> {
    let sp = v.space();
    v.coeffs().iter().enumerate().map(|(i, c)| (sp.label(i).to_string(), json!(c))).collect()
}

fn matrix_strings(m: &Matrix<Rational>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(format_rational).collect()).collect()
}

fn space_summary(space: &GradedSpace) -> Value {
    let comps: Vec<Value> = space.components().iter().map(|c| json!({"degree": c.degree, "basis": c.labels})).collect();
    json!({
        "grading": format!("{:?}", space.kind()),
        "dim": space.dim(),
        "even": space.even_indices().len(),
        "odd": space.odd_indices().len(),
        "components": comps,
    })
}

fn validate(input: &Input, a: &ValidateArgs, r: &mut Report) -> Result<(), CliError> {
    let sampling = Sampling { seed: a.seed, random_points: a.points };
    match input {
        Input::Dgla(g) => {
            r.set("space", space_summary(g.space()));
            r.add_checks(validate_dgla(g)?);
            if g.form().is_some() {
                r.add_checks(validate_form(g)?);
                let witness = match check_nondegenerate_on_cohomology(g) {
                    Ok(Nondegeneracy::Nondegenerate) => None,
                    Ok(Nondegeneracy::Degenerate { parity, witness }) => Some(format!(
                        "{} class of {} pairs to zero with every class",
                        if parity == Parity::Odd { "odd" } else { "even" },
                        witness.display()
                    )),
                    Err(Error::Precondition(m)) => Some(m),
                    Err(e) => return Err(e.into()),
                };
                r.check("nondegenerate_on_cohomology", 2, witness);
            }
            if a.identities {
                identities(g, sampling, r)?;
            }
        }
        Input::LInfty(l) => {
            r.set("space", space_summary(l.space()));
            let up_to = a.max_arity.unwrap_or((2 * l.max_arity()).saturating_sub(1).max(3));
            r.set("max_arity", up_to);
            r.add_checks(validate_linfty(l, up_to)?);
            if let Some(f) = l.form() {
                r.add_checks(check_invariance(l, f));
            }
            if a.identities {
                identities(l, sampling, r)?;
            }
        }
        Input::Hamiltonian(s) => {
            r.set("lie_algebra", s.algebra().labels());
            r.set("symplectic_space", s.symplectic().labels());
            r.add_checks(validate_hamiltonian_system(s));
            if a.identities && r.passed() {
                let l = build_linfty(s, Normalization::Factorial)?;
                identities(&l, sampling, r)?;
            }
        }
    }
    Ok(())
}

fn identities<M: CurvatureModel<Rational>>(g: &M, sampling: Sampling, r: &mut Report) -> Result<(), CliError> {
    r.seed = Some(sampling.seed);
    r.add_checks(check_gauge_homomorphism(g, sampling));
    if g.form().is_some() {
        r.add_checks(check_moment_identity(g, sampling)?);
    }
    r.add_checks(check_equivariance(g, sampling));
    Ok(())
}

fn mc(input: Input, a: &McArgs, r: &mut Report) -> Result<(), CliError> {
    let m = model(input)?;
    with_model!(&m, g => mc_with(g, a, r))
}

fn mc_with<M>(g: &M, a: &McArgs, r: &mut Report) -> Result<(), CliError>
where
    M: CurvatureModel<Rational> + ToFloatModel,
{
    let sp = g.space();
    let orbit = OrbitSpec::new(exact_vector(sp, &a.base)?)?;
    let seed = to_float(&exact_vector(sp, &a.seed)?)?;
    let opts = NewtonOptions { tol: a.tol, max_iter: a.max_iter, ..NewtonOptions::default() };
    let sol = mc_solve(g, &orbit, &seed, opts)?;
    r.check(
        "converged",
        1,
        (!sol.converged()).then(|| format!("{:?} after {} iterations, residual {:e}", sol.status, sol.iterations, sol.residual)),
    );
    if let Some(x) = &sol.exact {
        let witness = (!sol.exact_verified).then(|| {
            let phi = curvature(g, x).map(|v| v.display()).unwrap_or_default();
            format!("rationalized point {} has Φ = {phi}", x.display())
        });
        r.check("exact_recheck", 1, witness);
    }
    r.set("status", format!("{:?}", sol.status));
    r.set("iterations", sol.iterations);
    r.set("residual", sol.residual);
    r.set("point", float_map(&sol.point));
    r.set("exact", sol.exact.as_ref().map(exact_map));
    r.set("exact_verified", sol.exact_verified);
    r.set("history", &sol.history);
    Ok(())
}

fn tangent(input: Input, a: &TangentArgs, r: &mut Report) -> Result<(), CliError> {
    let m = model(input)?;
    with_model!(&m, g => tangent_with(g, a, r))
}

fn tangent_with<M: CurvatureModel<Rational>>(g: &M, a: &TangentArgs, r: &mut Report) -> Result<(), CliError> {
    let sp = g.space();
    let x = exact_vector(sp, &a.point)?;
    let orbit = OrbitSpec::new(exact_vector(sp, &a.base)?)?;
    let t = if a.orbit_corrected { orbit_corrected_complex(g, &orbit, &x)? } else { tangent_complex_at(g, &orbit, &x)? };
    let duality = check_self_duality(g, &t)?;
    let self_dual = duality.all_passed();
    r.add_checks(duality);
    let h = t.cohomology_dims()?;
    r.check(
        "euler_characteristic",
        1,
        (!t.euler_characteristic_holds()?).then(|| format!("terms {:?}, cohomology {:?}", t.dims(), h)),
    );
    if self_dual {
        r.check("dual_dimensions", 1, (h[0] != h[2]).then(|| format!("h⁻¹ = {} but h¹ = {}", h[0], h[2])));
    }
    r.set("point", exact_map(&x));
    r.set("orbit_corrected", t.is_orbit_corrected());
    r.set("dims", t.dims());
    r.set("h", h);
    match reduced_tangent(g, &t) {
        Ok(red) => {
            r.check("form_descends", 1, None);
            r.set("induced_form", matrix_strings(&red.induced_form));
            r.set("pairing", matrix_strings(&red.pairing));
        }
        Err(Error::Structural(m)) => {
            r.check("form_descends", 1, Some(m));
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    }
    match certify_symplectic(g, &t)? {
        SymplecticCertificate::Certified { .. } => {
            r.check("symplectic_certificate", 1, None);
            r.set("certificate", json!({"certified": true}));
        }
        SymplecticCertificate::Failed { reason, witness } => {
            let w: Vec<String> = witness.iter().map(format_rational).collect();
            r.check("symplectic_certificate", 1, Some(format!("{reason}; kernel vector [{}]", w.join(", "))));
            r.set("certificate", json!({"certified": false, "reason": reason, "witness": w}));
        }
    }
    Ok(())
}

fn flow(input: Input, a: &FlowArgs, r: &mut Report) -> Result<(), CliError> {
    let m = model(input)?;
    let sp = with_model!(&m, g => g.space().clone());
    let ctl = controls(&sp, &a.controls)?;
    let start = exact_vector(&sp, &a.start)?;
    r.set("steps", a.steps);
    r.set("duration", ctl.duration());
    r.set("control_norm", ctl.norm_inf());
    let path = match a.kind {
        FlowKind::Gauge => with_model!(&m, g => gauge_with(g, &start, &ctl, a, r)?),
        FlowKind::Adjoint => {
            start.require_parity(Parity::Even, "start")?;
            let b0 = to_float(&start)?;
            let (path, form) = match &m {
                Model::Dgla(g) => {
                    let gf = g.to_f64();
                    (adjoint_orbit_flow(&gf, &b0, &ctl, a.steps)?, gf.form().cloned())
                }
                Model::LInfty(l) => {
                    let x0 = exact_vector(&sp, &a.point)?;
                    let lf = l.to_f64();
                    let xs = gauge_equivalence_flow(&lf, &to_float(&x0)?, &ctl, a.steps)?;
                    r.set("point", exact_map(&x0));
                    (adjoint_equivalence_flow(&lf, &b0, &ctl, &xs, a.steps)?, lf.form().cloned())
                }
            };
            match form {
                Some(f) => {
                    let q0 = f.eval(b0.coeffs(), b0.coeffs());
                    let drift = path
                        .points
                        .iter()
                        .map(|b| (f.eval(b.coeffs(), b.coeffs()) - q0).abs())
                        .fold(0.0, f64::max);
                    r.set("form_value", q0);
                    r.set("form_drift", drift);
                    r.check(
                        "form_conservation",
                        path.points.len() as u64,
                        (drift > a.drift_tol).then(|| format!("max |β(b,b) − β(b₀,b₀)| = {drift:e}")),
                    )
                    .with_note(format!("max drift {drift:.3e}"));
                }
                None => r.set("form_value", Value::Null),
            }
            path
        }
    };
    r.set("endpoint", float_map(path.endpoint()));
    if let Some(csv_path) = &a.csv {
        write_csv(csv_path, &path)?;
    }
    Ok(())
}

fn gauge_with<M>(
    g: &M,
    start: &GradedVector<Rational>,
    ctl: &ControlPath<f64>,
    a: &FlowArgs,
    r: &mut Report,
) -> Result<EquivalencePath<f64>, CliError>
where
    M: CurvatureModel<Rational> + ToFloatModel,
{
    start.require_parity(Parity::Odd, "start")?;
    let gf = g.to_float();
    let path = gauge_flow(&gf, &to_float(start)?, ctl, a.steps)?;
    let drift = max_curvature_drift(&gf, &path);
    let phi = curvature(g, start)?;
    r.set("start_curvature", phi.display());
    r.set("max_curvature", drift);
    if phi.is_zero() {
        r.check(
            "curvature_drift",
            path.points.len() as u64,
            (drift > a.drift_tol).then(|| format!("max ‖Φ(x(t))‖∞ = {drift:e}")),
        )
        .with_note(format!("max drift {drift:.3e}"));
    }
    Ok(path)
}

fn write_csv(path: &Path, p: &EquivalencePath<f64>) -> Result<(), CliError> {
    let io = |e: csv::Error| CliError::Input(format!("cannot write {}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    let sp = p.start().space();
    let mut header = vec!["t".to_string()];
    header.extend(sp.labels().iter().cloned());
    w.write_record(&header).map_err(io)?;
    for (t, x) in p.times.iter().zip(&p.points) {
        let mut row = vec![t.to_string()];
        row.extend(x.coeffs().iter().map(|c| c.to_string()));
        w.write_record(&row).map_err(io)?;
    }
    w.flush().map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

fn write_json(path: &Path, value: &impl serde::Serialize) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

/// `l_k(x, y) = 2*z + ...` lines for every stored entry.
fn bracket_lines(file: &AlgebraFile) -> Vec<String> {
    file.brackets
        .iter()
        .map(|b| {
            let out: Vec<String> = b.output.iter().map(|(l, c)| format!("{c}*{l}")).collect();
            format!("l_{}({}) = {}", b.arity, b.inputs.join(", "), out.join(" + "))
        })
        .collect()
}

fn brst_json(b: &BrstAlgebra<Rational>) -> Value {
    let gens: Vec<Value> = (0..b.generator_count())
        .map(|g| {
            json!({
                "label": b.labels()[g],
                "ghost_number": b.ghost_number(g),
                "parity": if b.is_odd(g) { "odd" } else { "even" },
                "image": b.display(b.image(g)),
            })
        })
        .collect();
    json!({"schema_version": files::SCHEMA_VERSION, "kind": "brst", "cap": b.cap(), "generators": gens})
}

fn from_hamiltonian(input: Input, a: &FromHamiltonianArgs, r: &mut Report) -> Result<(), CliError> {
    let Input::Hamiltonian(s) = input else {
        return Err(CliError::Input(format!("expected a hamiltonian file, found {}", input.kind())));
    };
    let l = build_linfty(&s, a.normalization.into())?;
    let file = AlgebraFile::from_linfty(&l, Some("linfty".into()));
    r.set("normalization", format!("{:?}", Normalization::from(a.normalization)));
    r.set("space", space_summary(l.space()));
    r.set("brackets", bracket_lines(&file));
    if let Some(p) = &a.emit_linfty {
        write_json(p, &file)?;
    }
    if a.check {
        let up_to = a.max_arity.unwrap_or((2 * l.max_arity()).saturating_sub(1).max(4));
        r.set("max_arity", up_to);
        r.add_checks(validate_linfty(&l, up_to)?);
        if let Some(f) = l.form() {
            r.add_checks(check_invariance(&l, f));
        }
        let base = vec![Rational::from_i64(0); s.algebra().dim()];
        r.add_checks(check_mc_equals_fiber(&l, &s, &base)?);
    }
    specialization(&s, a, r)?;
    if a.check || a.emit_brst.is_some() {
        let cap = a.cap.unwrap_or_else(|| default_cap(&s));
        let b = build_brst(&s, cap)?;
        r.set("brst_cap", cap);
        if a.check {
            r.add_checks_prefixed("brst", check_brst_square_zero(&b)?);
        }
        if let Some(p) = &a.emit_brst {
            write_json(p, &brst_json(&b))?;
        }
    }
    Ok(())
}

fn specialization(s: &HamiltonianSystem<Rational>, a: &FromHamiltonianArgs, r: &mut Report) -> Result<(), CliError> {
    match quadratic_specialization(s) {
        Ok(q) => {
            r.set("quadratic_specialization", "applicable");
            if a.check {
                r.add_checks_prefixed("superalgebra", q.report.clone());
            }
            if let Some(p) = &a.emit_specialization {
                write_json(p, &AlgebraFile::from_dgla(&q.algebra, Some("specialization".into())))?;
            }
        }
        Err(Error::Precondition(m)) => {
            r.set("quadratic_specialization", format!("not applicable: {m}"));
            if a.emit_specialization.is_some() {
                return Err(CliError::Input(m));
            }
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

/// Re-emits a parsed document in canonical form.
pub fn canonical(input: &Input) -> Value {
    match input {
        Input::Dgla(g) => serde_json::to_value(AlgebraFile::from_dgla(g, None)),
        Input::LInfty(l) => serde_json::to_value(AlgebraFile::from_linfty(l, None)),
        Input::Hamiltonian(s) => serde_json::to_value(HamiltonianFile::from_system(s, None)),
    }
    .expect("serializable")
}
