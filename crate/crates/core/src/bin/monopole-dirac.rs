// NaN must fail these range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use monopole_dirac::analytic::{
    hmw_phase, nonrel_energy_variant, relativistic_energy, settings_table, NonRelVariant,
    RadialFunction, SpectrumResult, SpinorField,
};
use monopole_dirac::oracle::{adjudicate_nonrel, channel_agreement, residual_scan, DEFAULT_MESH};
use monopole_dirac::sweep::{figure_spec, format_f64, render_table, run_sweep, SweepSpec, TableFormat};
use monopole_dirac::{parallel, Error, HalfInteger, PhysicalParameters, QuantumState, Sign};

const EXIT_FAILED_CHECK: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_DEGENERATE: u8 = 3;
const EXIT_MESH: u8 = 4;

/// Closed-form bound states of a planar Dirac fermion with an electric dipole
/// moment and position-dependent mass in a monopole-line field.
#[derive(Parser, Debug)]
#[command(name = "monopole-dirac", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// E±, η, ξ, m_s, z₀ and the HMW phase for one state.
    Spectrum {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        state: StateArgs,
    },
    /// The eight (m_j sign, s, σ) settings for |m_j|, |d| and n.
    SettingsTable {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: Option<u32>,
        /// |m_j| as a fraction; the sign is taken from the table.
        #[arg(long, allow_hyphen_values = true)]
        mj: Option<HalfInteger>,
    },
    /// R_+ and R_− on a uniform ρ grid.
    Radial {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Both spinor components on a uniform ρ grid at fixed θ and t.
    Spinor {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t: f64,
    },
    /// Closed form against the finite-difference oracle and the ODE residual.
    /// Without --kappa the grid κ ∈ {0.5, 2, 5} is used.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        mj: Option<HalfInteger>,
        #[arg(long, default_value_t = 3)]
        levels: usize,
        #[arg(long, default_value_t = DEFAULT_MESH)]
        mesh: usize,
        /// Relative tolerance on η²; also the mesh-error budget.
        #[arg(long, default_value_t = 1e-4)]
        tolerance: f64,
        #[arg(long, default_value_t = 1e-8)]
        residual_tolerance: f64,
    },
    /// Energy tables against κ or λ_m, from --figure or a "sweep" config entry.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        figure: Option<u8>,
    },
    /// The nonrelativistic level ε_{n,m}.
    Nonrel {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        m: Option<i64>,
        #[arg(long, value_enum, default_value_t = VariantArg::Printed)]
        variant: VariantArg,
        /// Also solve the radial Schrödinger equation numerically.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_MESH)]
        mesh: usize,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// JSON file with "params", "state" and "sweep" entries; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    #[arg(short, long, action = ArgAction::Count)]
    verbose: u8,
    /// ħ = c = m₀ = 1.
    #[arg(long)]
    natural_units: bool,
    #[arg(long)]
    m0: Option<f64>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    hbar: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    lambda_m: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<f64>,
}

#[derive(Args, Debug)]
struct StateArgs {
    #[arg(long)]
    n: Option<u32>,
    /// m_j as a fraction, e.g. 1/2 or -3/2.
    #[arg(long, allow_hyphen_values = true)]
    mj: Option<HalfInteger>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<Sign>,
    #[arg(long, allow_hyphen_values = true)]
    branch: Option<Sign>,
}

#[derive(Args, Debug)]
struct GridArgs {
    #[arg(long, default_value_t = 0.0)]
    rho_min: f64,
    /// Defaults to 40/η.
    #[arg(long)]
    rho_max: Option<f64>,
    #[arg(long, default_value_t = 401)]
    points: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Printed,
    Absolute,
    Exact,
}

impl From<VariantArg> for NonRelVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Printed => NonRelVariant::Printed,
            VariantArg::Absolute => NonRelVariant::Absolute,
            VariantArg::Exact => NonRelVariant::Exact,
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(default)]
    natural_units: bool,
    #[serde(default)]
    params: ParamsFile,
    #[serde(default)]
    state: StateFile,
    sweep: Option<SweepSpec>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsFile {
    m0: Option<f64>,
    c: Option<f64>,
    hbar: Option<f64>,
    d: Option<f64>,
    lambda_m: Option<f64>,
    kappa: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    n: Option<u32>,
    mj_numerator: Option<HalfInteger>,
    s: Option<Sign>,
    branch: Option<Sign>,
}

enum CliError {
    Lib(Error),
    Usage(String),
    CheckFailed,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidParameter(_) | Error::Format { .. } => EXIT_VALIDATION,
        Error::DegenerateChannel { .. } | Error::SpectrumDivergence => EXIT_DEGENERATE,
        Error::MeshTooCoarse { .. } => EXIT_MESH,
        _ => EXIT_FAILED_CHECK,
    }
}

struct Context {
    file: ConfigFile,
    verbose: u8,
}

impl Context {
    fn load(common: &Common) -> CliResult<Self> {
        let file = match &common.config {
            None => ConfigFile::default(),
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                    path: path.clone(),
                    source,
                })?;
                serde_json::from_str(&text).map_err(|e| Error::Format {
                    path: path.clone(),
                    message: e.to_string(),
                })?
            }
        };
        Ok(Context {
            file,
            verbose: common.verbose,
        })
    }

    fn kappa(&self, common: &Common) -> Option<f64> {
        common.kappa.or(self.file.params.kappa)
    }

    /// Parameters with κ taken from `kappa` when given.
    fn params_with(&self, common: &Common, kappa: Option<f64>) -> CliResult<PhysicalParameters> {
        let f = &self.file.params;
        let m0 = common.m0.or(f.m0);
        let c = common.c.or(f.c);
        let hbar = common.hbar.or(f.hbar);
        let natural = common.natural_units || self.file.natural_units;
        let (m0, c, hbar) = match (m0, c, hbar) {
            (None, None, None) => (1.0, 1.0, 1.0),
            _ if natural => {
                return Err(usage("--natural-units conflicts with explicit --m0/--c/--hbar"))
            }
            (Some(m0), Some(c), Some(hbar)) => (m0, c, hbar),
            _ => return Err(usage("--m0, --c and --hbar must be given together")),
        };
        let d = common.d.or(f.d).ok_or_else(|| usage("missing --d"))?;
        let lambda_m = common
            .lambda_m
            .or(f.lambda_m)
            .ok_or_else(|| usage("missing --lambda-m"))?;
        let kappa = kappa
            .or(self.kappa(common))
            .ok_or_else(|| usage("missing --kappa"))?;
        Ok(PhysicalParameters::new(m0, c, hbar, d, lambda_m, kappa)?)
    }

    fn params(&self, common: &Common) -> CliResult<PhysicalParameters> {
        self.params_with(common, None)
    }

    fn n(&self, flag: Option<u32>) -> u32 {
        flag.or(self.file.state.n).unwrap_or(0)
    }

    fn mj(&self, flag: Option<HalfInteger>) -> CliResult<HalfInteger> {
        flag.or(self.file.state.mj_numerator)
            .ok_or_else(|| usage("missing --mj"))
    }

    fn state(&self, a: &StateArgs) -> CliResult<QuantumState> {
        let st = &self.file.state;
        let s = a.s.or(st.s).ok_or_else(|| usage("missing --s"))?;
        let branch = a.branch.or(st.branch).unwrap_or(Sign::Plus);
        Ok(QuantumState::new(self.n(a.n), self.mj(a.mj)?, s, branch))
    }
}

/// Writes `content` to `--out` through a temporary file in the same
/// directory, or to stdout.
fn emit(out: Option<&Path>, content: &str) -> CliResult<()> {
    let Some(path) = out else {
        let mut stdout = std::io::stdout().lock();
        return stdout
            .write_all(content.as_bytes())
            .and_then(|_| stdout.flush())
            .map_err(|source| {
                Error::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                }
                .into()
            });
    };
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(content.as_bytes()).map_err(io)?;
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        tmp.as_file()
            .set_permissions(std::fs::Permissions::from_mode(0o644))
            .map_err(io)?;
    }
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

/// Renders `key = value` lines, a one-row CSV or a flat JSON object.
fn render_record(fields: &[(&str, Value)], format: OutputFormat) -> String {
    let plain = |v: &Value| match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".to_string(),
        Value::Number(x) if x.is_f64() => x.as_f64().expect("f64").to_string(),
        other => other.to_string(),
    };
    match format {
        OutputFormat::Text => {
            let width = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            let mut out = String::new();
            for (k, v) in fields {
                let _ = writeln!(out, "{k:<width$} = {}", plain(v));
            }
            out
        }
        OutputFormat::Csv => {
            let keys: Vec<&str> = fields.iter().map(|(k, _)| *k).collect();
            let vals: Vec<String> = fields.iter().map(|(_, v)| plain(v)).collect();
            format!("{}\n{}\n", keys.join(","), vals.join(","))
        }
        OutputFormat::Json => {
            let map: serde_json::Map<String, Value> = fields
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect();
            json_text(&Value::Object(map))
        }
    }
}

fn f(x: f64) -> Value {
    json!(x)
}

fn cmd_spectrum(common: &Common, state: &StateArgs) -> CliResult<String> {
    let ctx = Context::load(common)?;
    let p = ctx.params(common)?;
    let q = ctx.state(state)?;
    let r = relativistic_energy(&p, &q)?;
    let plus = relativistic_energy(&p, &q.with_branch(Sign::Plus))?;
    let minus = relativistic_energy(&p, &q.with_branch(Sign::Minus))?;
    let fields = [
        ("n", json!(q.n)),
        ("mj", json!(q.mj.to_string())),
        ("s", json!(q.s.value() as i8)),
        ("branch", json!(q.branch.value() as i8)),
        ("energy", f(r.energy)),
        ("energy_plus", f(plus.energy)),
        ("energy_minus", f(minus.energy)),
        ("binding_energy", f(r.binding_energy)),
        ("eta", f(r.eta)),
        ("xi", f(r.derived.xi)),
        ("m_s", f(r.derived.m_s)),
        ("rho0", f(r.derived.rho0)),
        ("z0", r.z0.map_or(Value::Null, f)),
        ("hmw_phase", f(hmw_phase(&p))),
        ("continuum_edge", json!(r.continuum_edge)),
    ];
    Ok(render_record(&fields, common.format.unwrap_or(OutputFormat::Text)))
}

fn cmd_settings_table(common: &Common, n: Option<u32>, mj: Option<HalfInteger>) -> CliResult<String> {
    let ctx = Context::load(common)?;
    let p = ctx.params(common)?;
    let rows = settings_table(&p, ctx.n(n), ctx.mj(mj)?)?;
    let header = ["setting", "mj", "s", "sigma", "energy", "eta", "xi", "m_s"];
    let cells: Vec<[String; 8]> = rows
        .iter()
        .map(|r| {
            [
                r.setting.to_string(),
                r.mj.to_string(),
                (r.s.value() as i8).to_string(),
                (r.sigma.value() as i8).to_string(),
                r.spectrum.energy.to_string(),
                r.spectrum.eta.to_string(),
                r.spectrum.derived.xi.to_string(),
                r.spectrum.derived.m_s.to_string(),
            ]
        })
        .collect();
    let mut out = String::new();
    match common.format.unwrap_or(OutputFormat::Text) {
        OutputFormat::Text => {
            let mut widths = header.map(str::len);
            for row in &cells {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.len());
                }
            }
            let line = |cols: Vec<&str>| {
                cols.iter()
                    .zip(widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            let _ = writeln!(out, "{}", line(header.to_vec()));
            for row in &cells {
                let _ = writeln!(out, "{}", line(row.iter().map(String::as_str).collect()));
            }
        }
        OutputFormat::Csv => {
            let _ = writeln!(out, "{}", header.join(","));
            for row in &cells {
                let _ = writeln!(out, "{}", row.join(","));
            }
        }
        OutputFormat::Json => {
            let list: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "setting": r.setting,
                        "mj": r.mj.to_string(),
                        "s": r.s.value() as i8,
                        "sigma": r.sigma.value() as i8,
                        "energy": r.spectrum.energy,
                        "eta": r.spectrum.eta,
                        "xi": r.spectrum.derived.xi,
                        "m_s": r.spectrum.derived.m_s,
                    })
                })
                .collect();
            out = json_text(&Value::Array(list));
        }
    }
    Ok(out)
}

fn grid(spec: &SpectrumResult, g: &GridArgs) -> CliResult<Vec<f64>> {
    let rho_max = g.rho_max.unwrap_or(40.0 / spec.eta);
    if g.points < 2 {
        return Err(usage("--points must be at least 2"));
    }
    if !(g.rho_min >= 0.0 && rho_max > g.rho_min && rho_max.is_finite()) {
        return Err(usage("need 0 <= --rho-min < --rho-max"));
    }
    let step = (rho_max - g.rho_min) / (g.points - 1) as f64;
    Ok((0..g.points)
        .map(|i| g.rho_min + step * i as f64)
        .collect())
}

/// A numeric table as CSV (17 significant digits) or JSON columns.
fn render_columns(header: &[&str], rows: &[Vec<f64>], format: OutputFormat) -> CliResult<String> {
    match format {
        OutputFormat::Csv | OutputFormat::Text => {
            let mut out = header.join(",");
            out.push('\n');
            for row in rows {
                let cells: Vec<String> = row.iter().map(|&x| format_f64(x)).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            Ok(out)
        }
        OutputFormat::Json => {
            let map: serde_json::Map<String, Value> = header
                .iter()
                .enumerate()
                .map(|(i, k)| (k.to_string(), json!(rows.iter().map(|r| r[i]).collect::<Vec<_>>())))
                .collect();
            Ok(json_text(&Value::Object(map)))
        }
    }
}

fn cmd_radial(common: &Common, state: &StateArgs, g: &GridArgs) -> CliResult<String> {
    let ctx = Context::load(common)?;
    let p = ctx.params(common)?;
    let q = ctx.state(state)?;
    let spec = relativistic_energy(&p, &q)?;
    let plus = RadialFunction::new(&p, &q, &spec, Sign::Plus)?;
    let minus = RadialFunction::new(&p, &q, &spec, Sign::Minus)?;
    let rows: Vec<Vec<f64>> = grid(&spec, g)?
        .into_iter()
        .map(|rho| vec![rho, plus.eval(rho), minus.eval(rho)])
        .collect();
    render_columns(
        &["rho", "r_plus", "r_minus"],
        &rows,
        common.format.unwrap_or(OutputFormat::Csv),
    )
}

fn cmd_spinor(common: &Common, state: &StateArgs, g: &GridArgs, theta: f64, t: f64) -> CliResult<String> {
    let ctx = Context::load(common)?;
    let p = ctx.params(common)?;
    let q = ctx.state(state)?;
    let spec = relativistic_energy(&p, &q)?;
    let field = SpinorField::new(&p, &q, &spec)?;
    let rows: Vec<Vec<f64>> = grid(&spec, g)?
        .into_iter()
        .map(|rho| {
            let v = field.eval(t, rho, theta);
            vec![rho, v.upper.re, v.upper.im, v.lower.re, v.lower.im]
        })
        .collect();
    render_columns(
        &["rho", "upper_re", "upper_im", "lower_re", "lower_im"],
        &rows,
        common.format.unwrap_or(OutputFormat::Csv),
    )
}

struct VerifyRow {
    kappa: f64,
    n: u32,
    s: Sign,
    eta2: f64,
    lambda: f64,
    relative_error: f64,
    mesh_estimate: f64,
    residual: f64,
    zeros: usize,
}

fn cmd_verify(
    common: &Common,
    mj: Option<HalfInteger>,
    levels: usize,
    mesh: usize,
    tolerance: f64,
    residual_tolerance: f64,
) -> CliResult<(String, bool)> {
    let ctx = Context::load(common)?;
    let mj = ctx.mj(mj)?;
    let kappas = match ctx.kappa(common) {
        Some(k) => vec![k],
        None => vec![0.5, 2.0, 5.0],
    };
    if levels == 0 {
        return Err(usage("--levels must be positive"));
    }
    if !(tolerance > 0.0) {
        return Err(usage("--tolerance must be positive"));
    }
    let mut jobs = Vec::new();
    for &k in &kappas {
        let p = ctx.params_with(common, Some(k))?;
        for s in [Sign::Plus, Sign::Minus] {
            jobs.push((p, QuantumState::new(0, mj, s, Sign::Plus)));
        }
    }
    let results: Vec<monopole_dirac::Result<Vec<VerifyRow>>> = parallel::install(|| {
        jobs.par_iter()
            .map(|(p, q)| {
                let rows = channel_agreement(p, q, levels, mesh, Some(tolerance))?;
                rows.into_iter()
                    .map(|a| {
                        let state = q.with_n(a.n);
                        let spec = relativistic_energy(p, &state)?;
                        Ok(VerifyRow {
                            kappa: p.kappa,
                            n: a.n,
                            s: a.s,
                            eta2: a.eta2_analytic,
                            lambda: a.oracle.lambda,
                            relative_error: a.relative_error,
                            mesh_estimate: a.oracle.relative_error_estimate(),
                            residual: residual_scan(p, &state, &spec, 64)?,
                            zeros: a.oracle.sign_changes,
                        })
                    })
                    .collect()
            })
            .collect()
    });
    let mut rows = Vec::new();
    for r in results {
        rows.extend(r?);
    }
    let mut pass = true;
    let mut out = String::new();
    let format = common.format.unwrap_or(OutputFormat::Text);
    let header = "kappa,n,s,eta2_analytic,lambda_oracle,relative_error,mesh_estimate,residual,zeros,status";
    let mut records = Vec::new();
    if format != OutputFormat::Json {
        let _ = writeln!(out, "{header}");
    }
    for r in &rows {
        let ok = r.relative_error <= tolerance
            && r.residual <= residual_tolerance
            && r.zeros == r.n as usize;
        pass &= ok;
        let status = if ok { "PASS" } else { "FAIL" };
        if format == OutputFormat::Json {
            records.push(json!({
                "kappa": r.kappa, "n": r.n, "s": r.s.value() as i8,
                "eta2_analytic": r.eta2, "lambda_oracle": r.lambda,
                "relative_error": r.relative_error, "mesh_estimate": r.mesh_estimate,
                "residual": r.residual, "zeros": r.zeros, "status": status,
            }));
        } else {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{:e},{:e},{:e},{},{status}",
                r.kappa,
                r.n,
                r.s.value() as i8,
                r.eta2,
                r.lambda,
                r.relative_error,
                r.mesh_estimate,
                r.residual,
                r.zeros,
            );
        }
    }
    let verdict = if pass { "PASS" } else { "FAIL" };
    if format == OutputFormat::Json {
        out = json_text(&json!({
            "tolerance": tolerance,
            "residual_tolerance": residual_tolerance,
            "mesh": mesh,
            "rows": records,
            "result": verdict,
        }));
    } else {
        let worst = rows.iter().map(|r| r.relative_error).fold(0.0, f64::max);
        let worst_res = rows.iter().map(|r| r.residual).fold(0.0, f64::max);
        let _ = writeln!(
            out,
            "# {verdict}: max relative error {worst:e} (tolerance {tolerance:e}), max residual {worst_res:e} (tolerance {residual_tolerance:e})"
        );
    }
    if ctx.verbose > 0 {
        eprintln!("verified {} states on a {mesh}-point mesh", rows.len());
    }
    Ok((out, pass))
}

fn cmd_sweep(common: &Common, figure: Option<u8>) -> CliResult<String> {
    let ctx = Context::load(common)?;
    let spec = match (figure, &ctx.file.sweep) {
        (Some(_), Some(_)) => return Err(usage("--figure and a config sweep are exclusive")),
        (Some(fig), None) => figure_spec(fig)?,
        (None, Some(spec)) => spec.clone(),
        (None, None) => return Err(usage("need --figure or a \"sweep\" entry in --config")),
    };
    let table = run_sweep(&spec)?;
    for d in &table.diagnostics {
        eprintln!("skipped {}={} n={}: {}", spec.axis.name(), d.axis_value, d.n, d.message);
    }
    if ctx.verbose > 0 {
        eprintln!("{} rows, {} diagnostics", table.rows.len(), table.diagnostics.len());
    }
    let format = match common.format.unwrap_or(OutputFormat::Csv) {
        OutputFormat::Json => TableFormat::Json,
        OutputFormat::Csv => TableFormat::Csv,
        OutputFormat::Text => return Err(usage("sweep writes csv or json")),
    };
    Ok(render_table(&table, format))
}

fn cmd_nonrel(
    common: &Common,
    n: Option<u32>,
    m: Option<i64>,
    variant: VariantArg,
    oracle: bool,
    mesh: usize,
) -> CliResult<String> {
    let ctx = Context::load(common)?;
    let p = ctx.params(common)?;
    let n = ctx.n(n);
    let m = m.ok_or_else(|| usage("missing --m"))?;
    let r = nonrel_energy_variant(&p, n, m, variant.into())?;
    let mut fields = vec![
        ("n", json!(n)),
        ("m", json!(m)),
        ("variant", json!(format!("{variant:?}").to_lowercase())),
        ("epsilon", f(r.epsilon)),
        ("l", f(r.l)),
        ("eta_bar", f(r.eta_bar)),
        ("denominator", f(r.denominator)),
    ];
    if oracle {
        let adj = adjudicate_nonrel(&p, n, m, mesh)?;
        let accepted: Vec<String> = adj
            .accepted(1e-4)
            .iter()
            .map(|v| format!("{v:?}").to_lowercase())
            .collect();
        fields.push(("epsilon_oracle", f(adj.epsilon_oracle)));
        fields.push(("oracle_estimate", f(adj.estimate)));
        fields.push(("accepted", json!(accepted.join(" "))));
    }
    Ok(render_record(&fields, common.format.unwrap_or(OutputFormat::Text)))
}

fn run(cli: &Cli) -> CliResult<()> {
    let (common, out) = match &cli.command {
        Command::Spectrum { common, state } => (common, cmd_spectrum(common, state)?),
        Command::SettingsTable { common, n, mj } => (common, cmd_settings_table(common, *n, *mj)?),
        Command::Radial { common, state, grid } => (common, cmd_radial(common, state, grid)?),
        Command::Spinor {
            common,
            state,
            grid,
            theta,
            t,
        } => (common, cmd_spinor(common, state, grid, *theta, *t)?),
        Command::Verify {
            common,
            mj,
            levels,
            mesh,
            tolerance,
            residual_tolerance,
        } => {
            let (out, pass) = cmd_verify(common, *mj, *levels, *mesh, *tolerance, *residual_tolerance)?;
            emit(common.out.as_deref(), &out)?;
            return if pass { Ok(()) } else { Err(CliError::CheckFailed) };
        }
        Command::Sweep { common, figure } => (common, cmd_sweep(common, *figure)?),
        Command::Nonrel {
            common,
            n,
            m,
            variant,
            oracle,
            mesh,
        } => (common, cmd_nonrel(common, *n, *m, *variant, *oracle, *mesh)?),
    };
    emit(common.out.as_deref(), &out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_VALIDATION)
        }
        Err(CliError::CheckFailed) => ExitCode::from(EXIT_FAILED_CHECK),
    }
}
