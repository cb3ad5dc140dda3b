use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use dpo_core::analytic::correlation::{g2, upper_level_population};
use dpo_core::analytic::spectrum::{default_grid, half_width, spectrum, LightKind};
use dpo_core::analytic::variances;
use dpo_core::{SystemParams, UniformGrid};
use rayon::prelude::*;
use serde::Serialize;

use crate::output::{to_json_pretty, write_atomic, OutputFormat, Table};
use crate::{CliError, GridOverride, Result, VERSION};

/// γ_c/κ used by every figure.
pub const FIGURE_GAMMA_C: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Figure {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
    Fig9,
}

impl Figure {
    pub const ALL: [Figure; 8] = [
        Figure::Fig2,
        Figure::Fig3,
        Figure::Fig4,
        Figure::Fig5,
        Figure::Fig6,
        Figure::Fig7,
        Figure::Fig8,
        Figure::Fig9,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
            Figure::Fig4 => "fig4",
            Figure::Fig5 => "fig5",
            Figure::Fig6 => "fig6",
            Figure::Fig7 => "fig7",
            Figure::Fig8 => "fig8",
            Figure::Fig9 => "fig9",
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            Figure::Fig2 => "power spectrum of the fluorescent light",
            Figure::Fig3 => "second-order correlation function of the fluorescent light",
            Figure::Fig4 => "upper-level population versus gamma_c t",
            Figure::Fig5 => "quadrature variance of the cavity mode",
            Figure::Fig6 => "quadrature variance of the signal light",
            Figure::Fig7 => "quadrature variance of the fluorescent light",
            Figure::Fig8 => "power spectrum of the cavity mode",
            Figure::Fig9 => "power spectrum of the signal light",
        }
    }

    pub fn x_name(&self) -> &'static str {
        match self {
            Figure::Fig2 | Figure::Fig8 | Figure::Fig9 => "omega_over_kappa",
            Figure::Fig3 => "tau_kappa",
            Figure::Fig4 => "gamma_c_t",
            Figure::Fig5 | Figure::Fig6 | Figure::Fig7 => "epsilon_over_kappa",
        }
    }

    pub fn default_grid(&self) -> UniformGrid {
        let grid = |min, max, points| UniformGrid { min, max, points };
        match self {
            Figure::Fig2 => default_grid(LightKind::Fluorescent),
            Figure::Fig8 => default_grid(LightKind::Cavity),
            Figure::Fig9 => default_grid(LightKind::Signal),
            Figure::Fig3 => grid(0.0, 500.0, 501),
            Figure::Fig4 => grid(0.0, 5.0, 501),
            Figure::Fig5 | Figure::Fig6 | Figure::Fig7 => grid(0.0, 0.45, 46),
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Figure {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| CliError::UnknownFigure(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveInfo {
    pub file: String,
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon_over_kappa: Option<f64>,
    pub gamma_c_over_kappa: f64,
    pub kappa: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial_upper_population: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub half_width: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sidecar {
    pub figure: String,
    pub description: String,
    pub version: String,
    pub x_name: String,
    pub grid: UniformGrid,
    pub curves: Vec<CurveInfo>,
}

impl Sidecar {
    pub fn half_widths(&self) -> Vec<f64> {
        self.curves.iter().filter_map(|c| c.half_width).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureData {
    pub figure: Figure,
    pub tables: Vec<Table>,
    pub sidecar: Sidecar,
}

struct CurvePlan {
    label: &'static str,
    stem: String,
    params: SystemParams,
    epsilon: Option<f64>,
}

fn pump_curves(figure: Figure, eps: [f64; 2]) -> Result<Vec<CurvePlan>> {
    eps.iter()
        .zip(["solid", "dotted"])
        .map(|(&e, label)| {
            Ok(CurvePlan {
                label,
                stem: format!("{figure}_epsilon_{e}"),
                params: SystemParams::new(e, FIGURE_GAMMA_C)?,
                epsilon: Some(e),
            })
        })
        .collect()
}

fn swept_curves(figure: Figure, gamma_c: &[f64]) -> Result<Vec<CurvePlan>> {
    gamma_c
        .iter()
        .zip(["solid", "dotted"])
        .map(|(&gc, label)| {
            let stem = if gamma_c.len() == 1 {
                figure.name().to_string()
            } else {
                format!("{figure}_gamma_c_{gc}")
            };
            Ok(CurvePlan {
                label,
                stem,
                params: SystemParams::new(0.0, gc)?,
                epsilon: None,
            })
        })
        .collect()
}

fn spectrum_kind(figure: Figure) -> Option<LightKind> {
    match figure {
        Figure::Fig2 => Some(LightKind::Fluorescent),
        Figure::Fig8 => Some(LightKind::Cavity),
        Figure::Fig9 => Some(LightKind::Signal),
        _ => None,
    }
}

fn variance_kind(figure: Figure) -> Option<LightKind> {
    match figure {
        Figure::Fig5 => Some(LightKind::Cavity),
        Figure::Fig6 => Some(LightKind::Signal),
        Figure::Fig7 => Some(LightKind::Fluorescent),
        _ => None,
    }
}

/// Computes every curve of `figure` on its (possibly overridden) grid.
pub fn build(figure: Figure, grid: GridOverride) -> Result<FigureData> {
    let grid = grid.apply(figure.default_grid())?;
    let xs = grid.values();
    let plans = match figure {
        Figure::Fig2 | Figure::Fig8 | Figure::Fig9 => pump_curves(figure, [0.25, 0.35])?,
        Figure::Fig3 => pump_curves(figure, [0.10, 0.35])?,
        Figure::Fig4 => pump_curves(figure, [0.3, 0.0])?,
        Figure::Fig6 => swept_curves(figure, &[FIGURE_GAMMA_C, 0.0])?,
        Figure::Fig5 | Figure::Fig7 => swept_curves(figure, &[FIGURE_GAMMA_C])?,
    };
    if variance_kind(figure).is_some() {
        // Validate the whole ε axis up front.
        for &e in &xs {
            SystemParams::new(e, FIGURE_GAMMA_C)?;
        }
    }

    let mut tables = Vec::new();
    let mut curves = Vec::new();
    for plan in plans {
        let p = plan.params;
        let rates = p.rates();
        let mut half = None;
        let mut rho0 = None;
        let values = if let Some(kind) = spectrum_kind(figure) {
            half = Some(half_width(kind, &p)?);
            spectrum(kind, &p, &xs)?.values
        } else if let Some(kind) = variance_kind(figure) {
            xs.par_iter()
                .map(|&e| Ok(variances(kind, &p.with_epsilon(e)?).minus))
                .collect::<Result<Vec<f64>>>()?
        } else if figure == Figure::Fig3 {
            g2(&rates, &xs)?.values
        } else {
            rho0 = Some(1.0);
            let t: Vec<f64> = xs.iter().map(|x| x / p.gamma_c_over_kappa()).collect();
            upper_level_population(&p, &rates, 1.0, &t)?.values
        };
        tables.push(Table::new(figure.x_name(), xs.clone(), vec![values]));
        curves.push(CurveInfo {
            file: plan.stem,
            label: plan.label.to_string(),
            epsilon_over_kappa: plan.epsilon,
            gamma_c_over_kappa: p.gamma_c_over_kappa(),
            kappa: p.kappa(),
            initial_upper_population: rho0,
            half_width: half,
        });
    }

    Ok(FigureData {
        figure,
        tables,
        sidecar: Sidecar {
            figure: figure.name().to_string(),
            description: figure.description().to_string(),
            version: VERSION.to_string(),
            x_name: figure.x_name().to_string(),
            grid,
            curves,
        },
    })
}

/// Writes one file per curve plus `<figure>.json`; returns the paths in
/// that order.
pub fn write(data: &FigureData, dir: &Path, format: OutputFormat) -> Result<Vec<PathBuf>> {
    let mut sidecar = data.sidecar.clone();
    let mut paths = Vec::new();
    for (table, curve) in data.tables.iter().zip(sidecar.curves.iter_mut()) {
        curve.file = format!("{}.{}", curve.file, format.extension());
        paths.push(write_atomic(dir, &curve.file, &table.render(format))?);
    }
    paths.push(write_atomic(
        dir,
        &format!("{}.json", data.figure),
        &to_json_pretty(&sidecar),
    )?);
    Ok(paths)
}
