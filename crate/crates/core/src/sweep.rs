//! Parameter sweeps over κ or λ_m, and their CSV/JSON serialization.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{nonrel_energy, relativistic_energy};
use crate::error::{Error, Result};
use crate::model::{HalfInteger, PhysicalParameters, QuantumState, Sign};
use crate::parallel::install;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    Kappa,
    LambdaM,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::Kappa => "kappa",
            SweepAxis::LambdaM => "lambda_m",
        }
    }
}

impl std::str::FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kappa" => Ok(SweepAxis::Kappa),
            "lambda_m" | "lambda-m" => Ok(SweepAxis::LambdaM),
            other => Err(Error::invalid(format!("unknown sweep axis {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SweepTarget {
    Relativistic {
        mj_numerator: HalfInteger,
        s: Sign,
        branch: Sign,
    },
    Nonrelativistic {
        m: i64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    pub levels: Vec<u32>,
    pub params: PhysicalParameters,
    pub target: SweepTarget,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.min.is_finite() && self.max.is_finite() && self.min < self.max) {
            return Err(Error::invalid(format!(
                "sweep range needs min < max, got [{}, {}]",
                self.min, self.max
            )));
        }
        if self.min < 0.0 {
            return Err(Error::invalid(format!(
                "{} cannot be negative, got min {}",
                self.axis.name(),
                self.min
            )));
        }
        if self.steps < 2 {
            return Err(Error::invalid(format!("sweep needs >= 2 steps, got {}", self.steps)));
        }
        if self.levels.is_empty() {
            return Err(Error::invalid("sweep needs at least one level"));
        }
        self.params.validate()
    }

    pub fn axis_values(&self) -> Vec<f64> {
        let span = self.max - self.min;
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.max
                } else {
                    self.min + span * i as f64 / last
                }
            })
            .collect()
    }

    fn energy_at(&self, value: f64, n: u32) -> Result<f64> {
        let p = match self.axis {
            SweepAxis::Kappa => self.params.with_kappa(value)?,
            SweepAxis::LambdaM => self.params.with_lambda_m(value)?,
        };
        match self.target {
            SweepTarget::Relativistic {
                mj_numerator,
                s,
                branch,
            } => {
                let q = QuantumState::new(n, mj_numerator, s, branch);
                // antiparticle levels are tabulated in modulus
                Ok(relativistic_energy(&p, &q)?.energy.abs())
            }
            SweepTarget::Nonrelativistic { m } => Ok(nonrel_energy(&p, n, m)?.epsilon),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub axis_value: f64,
    pub n: u32,
    pub energy: f64,
}

/// A grid point that produced no row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub axis_value: f64,
    pub n: u32,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
    pub diagnostics: Vec<Diagnostic>,
}

impl SweepTable {
    /// Energies for level `n` in axis order.
    pub fn column(&self, n: u32) -> Vec<f64> {
        self.rows.iter().filter(|r| r.n == n).map(|r| r.energy).collect()
    }
}

/// Evaluates every (level, axis value) point. Rows are ordered by (n, axis
/// value); failures become diagnostics and never abort the sweep.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    spec.validate()?;
    let values = spec.axis_values();
    let mut levels = spec.levels.clone();
    levels.sort_unstable();
    levels.dedup();
    let points: Vec<(u32, f64)> = levels
        .iter()
        .flat_map(|&n| values.iter().map(move |&v| (n, v)))
        .collect();
    let results: Vec<Result<f64>> =
        install(|| points.par_iter().map(|&(n, v)| spec.energy_at(v, n)).collect());

    let mut rows = Vec::with_capacity(points.len());
    let mut diagnostics = Vec::new();
    for (&(n, axis_value), res) in points.iter().zip(results) {
        match res {
            Ok(energy) => rows.push(SweepRow {
                axis_value,
                n,
                energy,
            }),
            Err(e) => diagnostics.push(Diagnostic {
                axis_value,
                n,
                message: e.to_string(),
            }),
        }
    }
    Ok(SweepTable {
        spec: spec.clone(),
        rows,
        diagnostics,
    })
}

/// Default specs reproducing the four published sweeps.
pub fn figure_spec(figure: u8) -> Result<SweepSpec> {
    let setting4 = SweepTarget::Relativistic {
        mj_numerator: HalfInteger::from_numerator(1)?,
        s: Sign::Minus,
        branch: Sign::Plus,
    };
    let spec = match figure {
        1 => SweepSpec {
            axis: SweepAxis::Kappa,
            min: 0.1,
            max: 10.0,
            steps: 100,
            levels: vec![0, 1, 2],
            params: PhysicalParameters::natural(-1.0, 1.0, 0.0)?,
            target: setting4,
            note: Some("setting 4 (m_j=1/2, s=-1, sigma=-1), lambda_m=1".into()),
        },
        2 => SweepSpec {
            axis: SweepAxis::LambdaM,
            min: 0.1,
            max: 10.0,
            steps: 100,
            levels: vec![0, 1, 2],
            params: PhysicalParameters::natural(-1.0, 0.0, 2.0)?,
            target: setting4,
            note: Some("setting 4 (m_j=1/2, s=-1, sigma=-1), kappa=2".into()),
        },
        3 => SweepSpec {
            axis: SweepAxis::Kappa,
            min: 0.001,
            max: 0.1,
            steps: 100,
            levels: vec![0, 1, 2],
            params: PhysicalParameters::natural(-1.0, 1.0, 0.0)?,
            target: SweepTarget::Nonrelativistic { m: 0 },
            note: Some("m=0, d=-1, lambda_m=1; kappa capped at 0.1 (small-kappa regime)".into()),
        },
        4 => SweepSpec {
            axis: SweepAxis::LambdaM,
            min: 0.1,
            max: 10.0,
            steps: 100,
            levels: vec![0, 1, 2],
            params: PhysicalParameters::natural(-1.0, 0.0, 0.01)?,
            target: SweepTarget::Nonrelativistic { m: 0 },
            note: Some("m=0, d=-1, kappa=0.01".into()),
        },
        other => return Err(Error::invalid(format!("no default sweep for figure {other}"))),
    };
    Ok(spec)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

pub const CSV_HEADER: &str = "axis,axis_value,n,energy";

/// Scientific notation with 17 significant digits.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn table_to_csv(table: &SweepTable) -> String {
    let axis = table.spec.axis.name();
    let mut out = String::with_capacity(64 * (table.rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in &table.rows {
        let _ = writeln!(
            out,
            "{axis},{},{},{}",
            format_f64(r.axis_value),
            r.n,
            format_f64(r.energy)
        );
    }
    out
}

pub fn table_to_json(table: &SweepTable) -> String {
    let mut s = serde_json::to_string_pretty(table).expect("sweep table serializes");
    s.push('\n');
    s
}

pub fn render_table(table: &SweepTable, format: TableFormat) -> String {
    match format {
        TableFormat::Csv => table_to_csv(table),
        TableFormat::Json => table_to_json(table),
    }
}

pub fn write_table(table: &SweepTable, format: TableFormat, path: &Path) -> Result<()> {
    fs::write(path, render_table(table, format)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads rows back from a CSV written by [`write_table`].
pub fn read_csv(path: &Path) -> Result<(SweepAxis, Vec<SweepRow>)> {
    let bad = |message: String| Error::Format {
        path: path.to_path_buf(),
        message,
    };
    let mut reader = csv::Reader::from_path(path).map_err(|e| bad(e.to_string()))?;
    let headers = reader.headers().map_err(|e| bad(e.to_string()))?.clone();
    if headers.iter().collect::<Vec<_>>().join(",") != CSV_HEADER {
        return Err(bad(format!("unexpected header {headers:?}")));
    }
    let mut axis = None;
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| bad(e.to_string()))?;
        let a: SweepAxis = record[0].parse()?;
        if *axis.get_or_insert(a) != a {
            return Err(bad("mixed axes in one table".into()));
        }
        let parse = |i: usize| -> Result<f64> {
            record[i]
                .parse()
                .map_err(|_| bad(format!("bad number {:?}", &record[i])))
        };
        rows.push(SweepRow {
            axis_value: parse(1)?,
            n: record[2]
                .parse()
                .map_err(|_| bad(format!("bad level {:?}", &record[2])))?,
            energy: parse(3)?,
        });
    }
    let axis = axis.ok_or_else(|| bad("empty table".into()))?;
    Ok((axis, rows))
}
