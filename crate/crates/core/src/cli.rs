//! Command-line front end. Every command renders to a string so the binary
//! only has to print it and pick the exit code.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::models::tables::{table1, table2, table_alphas};
use crate::models::{degeneracy, level_energies, AxisModel, ModelND, ModelSpec, StateSelection};
use crate::numeric::report::{convergence_csv, convergence_study, verify_axis, OracleConfig, SpectrumReport};
use crate::numeric::Scheme;
use crate::potential::Domain;
use crate::ratpoly::{format_rational, parse_rational, ExpPolyFunction, Rational};

#[derive(Debug, Parser)]
#[command(name = "rextosc", version, about = "Rationally extended harmonic oscillators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Selection {
    Listed,
    Complete,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Half-line potentials for m = 0..3, alpha = -1/2, 1/2.
    Table1,
    /// Half-line eigenfunction families for m = 0..3, alpha = -1/2, 1/2.
    Table2,
    /// Normalized half-line eigenfunctions sampled on (0, L].
    Figure1 {
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// `-1/2`, `1/2`, or both when omitted.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, value_delimiter = ',', default_value = "0,1,2,3")]
        n: Vec<usize>,
        #[arg(long = "grid-N", default_value_t = 200)]
        grid_n: usize,
        #[arg(long = "grid-L", default_value_t = 10.0)]
        grid_l: f64,
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
    },
    /// Exact lowest levels of a model.
    Spectrum {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 6)]
        k: usize,
    },
    /// Oracle eigenvalues against the exact spectrum.
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 6)]
        k: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = SchemeArg::Numerov)]
        scheme: SchemeArg,
        #[arg(long = "grid-N", default_value_t = 4000)]
        grid_n: usize,
        #[arg(long = "grid-L")]
        grid_l: Option<f64>,
        /// Emit the oracle convergence study (h, error, scheme) instead.
        #[arg(long)]
        convergence: bool,
    },
    /// States sharing one exact energy.
    Degeneracy {
        #[command(flatten)]
        model: ModelArgs,
        /// Energy in units of the first axis frequency, e.g. `8` or `17/2`.
        #[arg(long, allow_hyphen_values = true)]
        energy: String,
        #[arg(long = "n-max", default_value_t = 20)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Selection::Listed)]
        selection: Selection,
    },
    /// Closed-form potential of every axis.
    Potential {
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Closed-form eigenstates; CSV samples one-axis states on a grid.
    States {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long = "grid-N", default_value_t = 200)]
        grid_n: usize,
        #[arg(long = "grid-L", default_value_t = 8.0)]
        grid_l: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Fd2,
    Numerov,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Fd2 => Scheme::Fd2,
            SchemeArg::Numerov => Scheme::Numerov,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DomainArg {
    Full,
    Half,
}

/// A model from `--model` (JSON file, inline JSON, or `all` for verify) or
/// from the one-axis shorthand flags. `--gamma` selects the cylindrical model
/// with `m1 = --m`, `m2 = --m2`.
#[derive(Clone, Debug, Default, Args)]
pub struct ModelArgs {
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long, value_enum)]
    pub domain: Option<DomainArg>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<i64>,
    #[arg(long)]
    pub m2: Option<usize>,
    #[arg(long = "omega-z")]
    pub omega_z: Option<f64>,
}

/// What a command produced and whether its checks passed.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

/// Exit code of an error: 2 for bad input, 1 for numerical failure.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ConvergenceFailure { .. } | Error::PotentialPoleOnGrid { .. } => 1,
        _ => 2,
    }
}

/// Rounds to 12 significant digits so output is stable across platforms.
pub fn sig12(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{v:.11e}").parse().unwrap_or(v)
}

fn fmt12(v: f64) -> String {
    let r = sig12(v);
    if r == 0.0 {
        "0".into()
    } else if r.abs() < 1e-4 || r.abs() >= 1e15 {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

fn parse_exact(s: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| Error::InvalidSpec(format!("not a rational number: {s:?}")))
}

impl ModelArgs {
    pub fn is_all(&self) -> bool {
        self.model.as_deref() == Some("all")
    }

    pub fn build(&self) -> Result<ModelND> {
        if let Some(m) = &self.model {
            let text = if m.trim_start().starts_with('{') {
                m.clone()
            } else {
                std::fs::read_to_string(m).map_err(|e| Error::InvalidSpec(format!("cannot read {m}: {e}")))?
            };
            return ModelSpec::from_json(&text)?.build();
        }
        let omega = self.omega.unwrap_or(1.0);
        let m = self.m.unwrap_or(0);
        if let Some(gamma) = self.gamma {
            return crate::models::cylindrical_model(
                gamma,
                m,
                self.m2.unwrap_or(0),
                omega,
                self.omega_z.unwrap_or(omega),
            );
        }
        let axis = match (self.domain, &self.alpha) {
            (Some(DomainArg::Full), None) | (None, None) => AxisModel::full(m, omega)?,
            (Some(DomainArg::Full), Some(_)) => return Err(Error::InvalidSpec("full-line axes take no alpha".into())),
            (Some(DomainArg::Half), None) => {
                return Err(Error::InvalidSpec("half-line axes need --alpha -1/2 or 1/2".into()))
            }
            (_, Some(a)) => AxisModel::half(m, parse_exact(a)?, omega)?,
        };
        crate::models::assemble_tensor(vec![axis])
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable output");
    s.push('\n');
    s
}

fn round_report(mut r: SpectrumReport) -> SpectrumReport {
    r.runtime_ms = None;
    r.grid_l = sig12(r.grid_l);
    for v in r
        .analytic
        .iter_mut()
        .chain(r.oracle.iter_mut())
        .chain(r.abs_error.iter_mut())
    {
        *v = sig12(*v);
    }
    r
}

fn csv_reports(reports: &[SpectrumReport]) -> String {
    let mut out = String::from("model,level,analytic_exact,analytic,oracle,abs_error,pass\n");
    for r in reports {
        for i in 0..r.oracle.len() {
            out.push_str(&format!(
                "\"{}\",{i},{},{},{},{},{}\n",
                r.model,
                r.analytic_exact[i],
                fmt12(r.analytic[i]),
                fmt12(r.oracle[i]),
                fmt12(r.abs_error[i]),
                r.abs_error[i] <= r.tolerance
            ));
        }
    }
    out
}

/// Every axis family the catalog knows, for `verify --model all`.
pub fn catalog_axes() -> Result<Vec<AxisModel>> {
    let mut axes = Vec::new();
    for m in [0, 2, 4] {
        axes.push(AxisModel::full(m, 1.0)?);
    }
    for m in 0..=3 {
        for a in table_alphas() {
            axes.push(AxisModel::half(m, a, 1.0)?);
        }
    }
    axes.push(AxisModel::radial(1, 1, 1.0)?);
    axes.push(AxisModel::radial(0, -2, 1.0)?);
    axes.push(AxisModel::full(2, 2.0)?);
    Ok(axes)
}

fn state_json(axis_states: &[(Domain, &ExpPolyFunction)]) -> Value {
    Value::Array(
        axis_states
            .iter()
            .map(|(d, f)| {
                json!({
                    "domain": d,
                    "power": format_rational(f.power()),
                    "numerator": f.num(),
                    "denominator": f.den(),
                    "prefactor": sig12(f.prefactor()),
                    "scale": sig12(f.scale()),
                })
            })
            .collect(),
    )
}

fn figure1(m: usize, alpha: Option<&str>, ns: &[usize], grid_n: usize, grid_l: f64, omega: f64) -> Result<String> {
    if grid_n == 0 || grid_l.is_nan() || grid_l <= 0.0 {
        return Err(Error::InvalidSpec("figure1 needs --grid-N > 0 and --grid-L > 0".into()));
    }
    let alphas = match alpha {
        Some(a) => vec![parse_exact(a)?],
        None => table_alphas().to_vec(),
    };
    let mut columns = Vec::new();
    let mut header = vec!["x".to_string()];
    for a in &alphas {
        let axis = AxisModel::half(m, a.clone(), omega)?;
        for &n in ns {
            header.push(format!("psi_{n}_alpha_{}", format_rational(a)));
            columns.push(axis.state(n)?.factors.remove(0));
        }
    }
    let mut out = header.join(",");
    out.push('\n');
    for i in 0..=grid_n {
        let x = grid_l * i as f64 / grid_n as f64;
        let mut row = vec![fmt12(x)];
        for f in &columns {
            row.push(fmt12(f.eval(x)?));
        }
        out.push_str(&row.join(","));
        out.push('\n');
    }
    Ok(out)
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    let ok = |text: String| Ok(Outcome { text, passed: true });
    match &cli.command {
        Command::Table1 => {
            let rows = table1()?;
            match cli.format {
                Format::Json => ok(to_json(&rows)),
                Format::Csv => {
                    let mut out = String::from("m,alpha,potential\n");
                    for r in rows {
                        out.push_str(&format!("{},{},\"{}\"\n", r.m, r.alpha, r.display));
                    }
                    ok(out)
                }
            }
        }
        Command::Table2 => {
            let rows = table2()?;
            match cli.format {
                Format::Json => ok(to_json(&rows)),
                Format::Csv => {
                    let mut out = String::from("m,alpha,eigenfunction\n");
                    for r in rows {
                        out.push_str(&format!("{},{},\"{}\"\n", r.m, r.alpha, r.display));
                    }
                    ok(out)
                }
            }
        }
        Command::Figure1 {
            m,
            alpha,
            n,
            grid_n,
            grid_l,
            omega,
        } => ok(figure1(*m, alpha.as_deref(), n, *grid_n, *grid_l, *omega)?),
        Command::Spectrum { model, k } => {
            let model = model.build()?;
            let names = ["omega_1", "omega_2", "omega_3"];
            let levels = if model.dim() == 1 {
                let a = &model.axes()[0];
                (0..*k)
                    .map(|i| {
                        let e = model.energy(&[i])?;
                        Ok(json!({"indices": [i], "exact": e.render(&names[..1]), "value": sig12(crate::numeric::verify::energy_value(a, i))}))
                    })
                    .collect::<Result<Vec<_>>>()?
            } else {
                let mut n_max = *k;
                let mut levels = level_energies(&model, n_max, StateSelection::Complete)?;
                while levels.len() < *k {
                    n_max = 2 * n_max + 1;
                    levels = level_energies(&model, n_max, StateSelection::Complete)?;
                }
                levels
                    .into_iter()
                    .take(*k)
                    .map(|l| {
                        json!({
                            "exact": format!("{}*omega_1", format_rational(&l.energy)),
                            "value": sig12(l.value),
                            "degeneracy": l.count,
                            "indices": l.witnesses,
                        })
                    })
                    .collect()
            };
            match cli.format {
                Format::Json => ok(to_json(
                    &json!({"model": model.label(), "omegas": model.omegas(), "levels": levels}),
                )),
                Format::Csv => {
                    let mut out = String::from("level,exact,value\n");
                    for (i, l) in levels.iter().enumerate() {
                        out.push_str(&format!("{i},{},{}\n", l["exact"].as_str().unwrap_or(""), l["value"]));
                    }
                    ok(out)
                }
            }
        }
        Command::Verify {
            model,
            k,
            tol,
            scheme,
            grid_n,
            grid_l,
            convergence,
        } => {
            if *convergence {
                let s = Scheme::from(*scheme);
                let counts = match s {
                    Scheme::Fd2 => [200, 401, 803, 1607],
                    Scheme::Numerov => [100, 201, 403, 807],
                };
                let rows = convergence_study(s, &counts, 10.0)?;
                return ok(convergence_csv(&rows));
            }
            let config = OracleConfig {
                n_points: *grid_n,
                l: *grid_l,
                scheme: (*scheme).into(),
                tolerance: *tol,
            };
            let axes = if model.is_all() {
                catalog_axes()?
            } else {
                model.build()?.axes().to_vec()
            };
            let reports = axes
                .par_iter()
                .map(|a| verify_axis(a, *k, &config).map(round_report))
                .collect::<Result<Vec<_>>>()?;
            let passed = reports.iter().all(|r| r.pass);
            let text = match cli.format {
                Format::Json => to_json(&reports),
                Format::Csv => csv_reports(&reports),
            };
            Ok(Outcome { text, passed })
        }
        Command::Degeneracy {
            model,
            energy,
            n_max,
            selection,
        } => {
            let model = model.build()?;
            let selection = match selection {
                Selection::Listed => StateSelection::Listed,
                Selection::Complete => StateSelection::Complete,
            };
            let report = degeneracy(&model, &parse_exact(energy)?, *n_max, selection)?;
            match cli.format {
                Format::Json => ok(to_json(&json!({"model": model.label(), "report": report}))),
                Format::Csv => {
                    let mut out = String::from("witness\n");
                    for w in &report.witnesses {
                        let parts: Vec<String> = w.iter().map(usize::to_string).collect();
                        out.push_str(&format!("\"{}\"\n", parts.join(",")));
                    }
                    ok(out)
                }
            }
        }
        Command::Potential { model } => {
            let model = model.build()?;
            let axes = model
                .axes()
                .iter()
                .map(|a| {
                    let v = a.potential()?;
                    Ok(json!({
                        "axis": a.label(),
                        "omega": a.omega(),
                        "epsilon": format!("{}*omega", format_rational(&a.epsilon())),
                        "display": v.render(),
                        "reduced": v.reduced(),
                        "terms": v.terms(),
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            match cli.format {
                Format::Json => ok(to_json(&json!({"model": model.label(), "axes": axes}))),
                Format::Csv => {
                    let mut out = String::from("axis,potential\n");
                    for a in &axes {
                        out.push_str(&format!(
                            "\"{}\",\"{}\"\n",
                            a["axis"].as_str().unwrap_or(""),
                            a["display"].as_str().unwrap_or("")
                        ));
                    }
                    ok(out)
                }
            }
        }
        Command::States {
            model,
            k,
            grid_n,
            grid_l,
        } => {
            let model = model.build()?;
            match cli.format {
                Format::Json => {
                    let mut states = Vec::new();
                    let mut idx = vec![0usize; model.dim()];
                    loop {
                        let s = model.state(&idx)?;
                        let names = ["omega_1", "omega_2", "omega_3"];
                        let factors: Vec<(Domain, &ExpPolyFunction)> =
                            s.domains.iter().cloned().zip(s.factors.iter()).collect();
                        states.push(json!({
                            "indices": s.indices,
                            "energy": s.energy.render(&names[..model.dim()]),
                            "energy_value": sig12(s.energy_value()),
                            "listed": model.is_listed(&s.indices),
                            "factors": state_json(&factors),
                        }));
                        let mut axis = model.dim();
                        loop {
                            if axis == 0 {
                                return ok(to_json(&json!({"model": model.label(), "states": states})));
                            }
                            axis -= 1;
                            if idx[axis] + 1 < *k {
                                idx[axis] += 1;
                                break;
                            }
                            idx[axis] = 0;
                        }
                    }
                }
                Format::Csv => {
                    if model.dim() != 1 {
                        return Err(Error::InvalidSpec("CSV state samples need a one-axis model".into()));
                    }
                    if *grid_n == 0 || grid_l.is_nan() || *grid_l <= 0.0 {
                        return Err(Error::InvalidSpec("states needs --grid-N > 0 and --grid-L > 0".into()));
                    }
                    let axis = &model.axes()[0];
                    let fs = (0..*k)
                        .map(|i| Ok(axis.state(i)?.factors.remove(0)))
                        .collect::<Result<Vec<_>>>()?;
                    let a = if axis.domain() == Domain::Full { -*grid_l } else { 0.0 };
                    let mut out = String::from("x");
                    for i in 0..*k {
                        out.push_str(&format!(",psi_{i}"));
                    }
                    out.push('\n');
                    for i in 0..=*grid_n {
                        let x = a + (*grid_l - a) * i as f64 / *grid_n as f64;
                        out.push_str(&fmt12(x));
                        for f in &fs {
                            out.push(',');
                            out.push_str(&fmt12(f.eval(x)?));
                        }
                        out.push('\n');
                    }
                    ok(out)
                }
            }
        }
    }
}
