//! Tables behind the `lattice-average` command.
//!
//! Every command evaluates one table on a linear grid of `t` (or `R`)
//! values and writes it as CSV or JSON.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;

use lattice_average::averaging::{
    average_exact_from_shells, average_radius_from_shells, radius_rescaling_gap_from_shells, radius_to_t,
    rescaled_t,
};
use lattice_average::lattice::{count, spectrum_shells, weyl_term, SpectrumShells};
use lattice_average::series::{average_bessel, g1, g2};
use lattice_average::surfaces::SurfaceCount;
use lattice_average::{EllipseForm, Error, SeriesControl};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(Error::InvalidArgument { .. } | Error::UnsupportedOrder { .. }) => 2,
            CliError::Compute(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub form: EllipseForm,
    pub tol: f64,
    pub t_min: f64,
    pub t_max: f64,
    /// Number of grid points, `t_min` and `t_max` included.
    pub steps: usize,
    /// Standard output when absent.
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            form: EllipseForm::unit_disk(),
            tol: 1e-6,
            t_min: 1.0,
            t_max: 1000.0,
            steps: 100,
            output: None,
            format: Format::Csv,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> CliResult<()> {
        self.form.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(CliError::Usage(format!("tol must be positive, got {}", self.tol)));
        }
        if !(self.t_min.is_finite() && self.t_min >= 0.0) {
            return Err(CliError::Usage(format!("tmin must be >= 0, got {}", self.t_min)));
        }
        if !self.t_max.is_finite() || self.t_max < self.t_min {
            return Err(CliError::Usage(format!(
                "tmax must be finite and >= tmin, got [{}, {}]",
                self.t_min, self.t_max
            )));
        }
        if self.steps == 0 {
            return Err(CliError::Usage("steps must be >= 1".into()));
        }
        if self.steps == 1 && self.t_max != self.t_min {
            return Err(CliError::Usage("a single step needs tmin == tmax".into()));
        }
        Ok(())
    }

    /// `steps` evenly spaced points from `t_min` to `t_max`.
    pub fn grid(&self) -> CliResult<Vec<f64>> {
        self.validate()?;
        if self.steps == 1 {
            return Ok(vec![self.t_min]);
        }
        let h = (self.t_max - self.t_min) / (self.steps - 1) as f64;
        Ok((0..self.steps)
            .map(|i| if i + 1 == self.steps { self.t_max } else { self.t_min + h * i as f64 })
            .collect())
    }

    fn control(&self) -> SeriesControl {
        SeriesControl::with_tol(self.tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Missing,
}

impl Cell {
    fn csv(&self, out: &mut String) {
        match self {
            Cell::Int(v) => write!(out, "{v}").unwrap(),
            Cell::Real(v) => write!(out, "{v:.16e}").unwrap(),
            Cell::Missing => {}
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Cell::Int(v) => Some(v as f64),
            Cell::Real(v) => Some(v),
            Cell::Missing => None,
        }
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        if v.is_finite() {
            Cell::Real(v)
        } else {
            Cell::Missing
        }
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Missing, Cell::from)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Header line, then one line per row; reals carry 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                cell.csv(&mut out);
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("tables serialize");
        out.push('\n');
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// `(t, N, D)`
pub fn cmd_count(config: &RunConfig) -> CliResult<Table> {
    let mut table = Table::new(&["t", "N", "D"]);
    for t in config.grid()? {
        let n = count(&config.form, t)?;
        table.push(vec![t.into(), n.into(), (n as f64 - weyl_term(&config.form, t)).into()]);
    }
    Ok(table)
}

/// Every path for `A(R)` plus the radius average and rescaling gap.
pub fn cmd_average(config: &RunConfig) -> CliResult<Table> {
    let mut table = Table::new(&["R", "A_exact", "A_series", "A_asym1", "A_asym2", "A_tilde", "rescaling_gap"]);
    let grid = positive_grid(config)?;
    let form = &config.form;
    let r_max = grid.iter().copied().fold(0.0, f64::max);
    let shells = spectrum_shells(form, r_max.max(radius_to_t(r_max)).max(rescaled_t(r_max)))?;
    let ctl = config.control();
    for r in grid {
        let exact = average_exact_from_shells(form, &shells, r)?;
        let series = average_bessel(form, r, &ctl)?;
        let x = r.sqrt();
        let asym1 = g1(form, x, &ctl)? * r.powf(-0.25);
        let asym2 = if form.is_unit_disk() {
            Some(asym1 + g2(x, &ctl)? * r.powf(-0.75))
        } else {
            None
        };
        table.push(vec![
            r.into(),
            exact.into(),
            series.into(),
            asym1.into(),
            asym2.into(),
            average_radius_from_shells(form, &shells, r)?.into(),
            radius_rescaling_gap_from_shells(form, &shells, r)?.into(),
        ]);
    }
    Ok(table)
}

pub const FIGURE_COLUMNS: [&str; 12] = [
    "D",
    "t^-1/4 D",
    "A",
    "t^1/4 A",
    "g(sqrt t)",
    "t^1/4 A - g(sqrt t)",
    "sqrt t (t^1/4 A - g(sqrt t))",
    "A_tilde",
    "A(2 pi t^2) / (2 sqrt(2 pi))",
    "A(2 pi t^2) / (2 sqrt(2 pi)) - A_tilde",
    "g(sqrt t) ellipse",
    "t^1/4 A - g(sqrt t) ellipse",
];

/// `(t, value)` for figure `id ∈ 1..=12`.
pub fn cmd_figures(id: u32, config: &RunConfig) -> CliResult<Table> {
    let column = usize::try_from(id)
        .ok()
        .and_then(|i| i.checked_sub(1))
        .and_then(|i| FIGURE_COLUMNS.get(i))
        .ok_or_else(|| CliError::Usage(format!("figure must be in 1..=12, got {id}")))?;
    let grid = config.grid()?;
    let ellipse = EllipseForm::new(2.0, 0.5, 0.0)?;
    let form = if matches!(id, 11 | 12) { ellipse } else { config.form };
    let ctl = config.control();
    let t_max = grid.iter().copied().fold(0.0, f64::max);
    let shell_t = match id {
        3 | 4 | 6 | 7 | 12 => t_max,
        8 => radius_to_t(t_max),
        9 => rescaled_t(t_max),
        10 => radius_to_t(t_max).max(rescaled_t(t_max)),
        _ => 0.0,
    };
    let shells = if shell_t > 0.0 { Some(spectrum_shells(&form, shell_t)?) } else { None };
    let mut table = Table::new(&["t", column]);
    for t in grid {
        let value = figure_value(id, &form, shells.as_ref(), t, &ctl)?;
        table.push(vec![t.into(), value.into()]);
    }
    Ok(table)
}

fn figure_value(
    id: u32,
    form: &EllipseForm,
    shells: Option<&SpectrumShells>,
    t: f64,
    ctl: &SeriesControl,
) -> CliResult<Option<f64>> {
    let remainder = || -> CliResult<f64> { Ok(count(form, t)? as f64 - weyl_term(form, t)) };
    if id == 1 {
        return Ok(Some(remainder()?));
    }
    // Everything else is singular or undefined at t = 0.
    if t <= 0.0 {
        return Ok(None);
    }
    let shells = || shells.expect("figure needs shells");
    let average = |r: f64| -> CliResult<f64> { Ok(average_exact_from_shells(form, shells(), r)?) };
    let g = || -> CliResult<f64> { Ok(g1(form, t.sqrt(), ctl)?) };
    let rescaled = || -> CliResult<f64> { Ok(average(rescaled_t(t))? / (2.0 * (2.0 * PI).sqrt())) };
    let radius = || -> CliResult<f64> { Ok(average_radius_from_shells(form, shells(), t)?) };
    let value = match id {
        2 => t.powf(-0.25) * remainder()?,
        3 => average(t)?,
        4 => t.powf(0.25) * average(t)?,
        5 | 11 => g()?,
        6 | 12 => t.powf(0.25) * average(t)? - g()?,
        7 => t.sqrt() * (t.powf(0.25) * average(t)? - g()?),
        8 => radius()?,
        9 => rescaled()?,
        10 => rescaled()? - radius()?,
        _ => unreachable!("figure id checked by the caller"),
    };
    Ok(Some(value))
}

/// `(t, N_T12, N_KB, kb_residual, N_T22, N_PP, pp_residual)`
pub fn cmd_surfaces(config: &RunConfig) -> CliResult<Table> {
    let mut table = Table::new(&["t", "N_T12", "N_KB", "kb_residual", "N_T22", "N_PP", "pp_residual"]);
    for t in config.grid()? {
        let kb = SurfaceCount::klein_bottle(t)?;
        let pp = SurfaceCount::projective_plane(t)?;
        table.push(vec![
            t.into(),
            kb.n_torus.into(),
            kb.n_surface.into(),
            kb.identity_residual.into(),
            pp.n_torus.into(),
            pp.n_surface.into(),
            pp.identity_residual.into(),
        ]);
    }
    Ok(table)
}

fn positive_grid(config: &RunConfig) -> CliResult<Vec<f64>> {
    let grid = config.grid()?;
    if grid[0] <= 0.0 {
        return Err(CliError::Usage("averages need tmin > 0".into()));
    }
    Ok(grid)
}
