//! Sweep execution: turns a validated [`SweepConfig`] into a [`Dataset`].
//!
//! Rows are evaluated family-major (one block of rows per family value, in
//! listed order) and ascending in the swept parameter within each block.
//! Every library call is pure, so identical configs yield identical tables.

use std::collections::BTreeMap;

use optowork_core::gaussian::logarithmic_negativity;
use optowork_core::system1::{closed_form_blocks, stability_check, Coupling, System1Params};
use optowork_core::system2::{optic_optic_cm, System2Params};
use optowork_core::thermo::{
    work_double, work_max, work_separable_bound, work_single, DoubleMeasurementSpec,
    MeasurementKind,
};
use optowork_core::{Error as CoreError, TwoModeStandardForm};

use crate::config::{Block, Quantity, SweepConfig, SystemId};
use crate::dataset::{Dataset, Provenance};
use crate::error::CliError;

/// Run-level settings that travel into the provenance record.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepOptions {
    /// Scale factor applied to all work columns (bath temperature in the
    /// caller's energy units; 1 keeps `k_B T` units).
    pub kbt: f64,
    /// Preset id when the config came from a preset.
    pub preset: Option<String>,
    /// Free-form provenance notes (grid choices, legend-derived values).
    pub notes: Vec<String>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            kbt: 1.0,
            preset: None,
            notes: Vec::new(),
        }
    }
}

/// Evaluates the sweep described by `config`.
///
/// Undefined maximal works become empty cells; any other domain failure
/// aborts with the offending row index. The returned dataset has one column
/// for the swept parameter, one for the family parameter when present, then
/// one per requested quantity.
pub fn run_sweep(config: &SweepConfig, options: &SweepOptions) -> Result<Dataset, CliError> {
    if !(options.kbt.is_finite() && options.kbt > 0.0) {
        return Err(CliError::config(format!(
            "kbt must be positive, got {}",
            options.kbt
        )));
    }

    let mut columns = vec![config.swept.name.clone()];
    if let Some(family) = &config.family {
        columns.push(family.name.clone());
    }
    columns.extend(
        config
            .quantities
            .iter()
            .map(|q| q.column_name().to_string()),
    );

    let swept_values = config.swept.values();
    let family_values: Vec<Option<f64>> = match &config.family {
        Some(family) => family.values.iter().copied().map(Some).collect(),
        None => vec![None],
    };

    let mut rows = Vec::with_capacity(swept_values.len() * family_values.len());
    for family_value in &family_values {
        for &swept_value in &swept_values {
            let mut params: BTreeMap<String, f64> = config.fixed.clone();
            if let (Some(value), Some(family)) = (family_value, &config.family) {
                params.insert(family.name.clone(), *value);
            }
            params.insert(config.swept.name.clone(), swept_value);

            let row_index = rows.len();
            let forms = evaluate_forms(config, &params)
                .map_err(|e| annotate_row(e, row_index, &config.swept.name, swept_value))?;

            let mut row = Vec::with_capacity(columns.len());
            row.push(Some(swept_value));
            if let Some(value) = family_value {
                row.push(Some(*value));
            }
            for quantity in &config.quantities {
                let cell = evaluate_quantity(*quantity, &forms, config).map_err(|e| {
                    annotate_row(e.into(), row_index, &config.swept.name, swept_value)
                })?;
                row.push(match cell {
                    Some(v) if quantity.is_work() => Some(v * options.kbt),
                    other => other,
                });
            }
            rows.push(row);
        }
    }

    let provenance = Provenance::new(
        options.preset.clone(),
        options.kbt,
        config.swept.count,
        options.notes.clone(),
        config.to_config_text(),
    );
    Dataset::new(columns, rows, provenance)
}

/// Everything a row's quantities are computed from: the block-resolved
/// standard form for works and the per-block entanglement values.
struct PointForms {
    ln_mirror: Option<f64>,
    ln_optic: f64,
    work_form: TwoModeStandardForm,
}

fn evaluate_forms(
    config: &SweepConfig,
    params: &BTreeMap<String, f64>,
) -> Result<PointForms, CliError> {
    match config.system {
        SystemId::SqueezedCavities => {
            let kappa = params.get("kappa").copied().unwrap_or(1.0);
            let coupling = if let Some(&c) = params.get("C") {
                Coupling::Cooperativity(c)
            } else {
                Coupling::Rate(params["G"])
            };
            let p = System1Params::new(
                kappa,
                params["gamma"],
                coupling,
                params["r"],
                params["n_th"],
            )?;
            let stability = stability_check(&p);
            if !stability.is_stable {
                return Err(CliError::Domain(format!(
                    "drift matrix is not stable (max eigenvalue real part {:.3e})",
                    stability.max_real_part
                )));
            }
            let blocks = closed_form_blocks(&p);
            Ok(PointForms {
                ln_mirror: Some(logarithmic_negativity(&blocks.mirror_mirror)),
                ln_optic: logarithmic_negativity(&blocks.optic_optic),
                work_form: match config.block {
                    Block::Mirror => blocks.mirror_mirror,
                    Block::Optic => blocks.optic_optic,
                },
            })
        }
        SystemId::VibratingMirror => {
            let p = System2Params::new(params["x"], params["omega_t"])?;
            let form = optic_optic_cm(&p)?;
            Ok(PointForms {
                ln_mirror: None,
                ln_optic: logarithmic_negativity(&form),
                work_form: form,
            })
        }
    }
}

fn evaluate_quantity(
    quantity: Quantity,
    forms: &PointForms,
    config: &SweepConfig,
) -> Result<Option<f64>, CoreError> {
    let f = &forms.work_form;
    let (x, y) = (f.x(), f.y());
    match quantity {
        Quantity::LnMirror => Ok(forms.ln_mirror),
        Quantity::LnOptic => Ok(Some(forms.ln_optic)),
        Quantity::W0 => Ok(Some(work_single(f, MeasurementKind::Homodyne))),
        Quantity::W1 => Ok(Some(work_single(f, MeasurementKind::Heterodyne))),
        Quantity::W0Sep => work_separable_bound(x, y, MeasurementKind::Homodyne).map(Some),
        Quantity::W1Sep => work_separable_bound(x, y, MeasurementKind::Heterodyne).map(Some),
        Quantity::W0Max => optional_max(work_max(x, y, MeasurementKind::Homodyne)),
        Quantity::W1Max => optional_max(work_max(x, y, MeasurementKind::Heterodyne)),
        Quantity::W00 => work_double(
            f,
            &DoubleMeasurementSpec::new(MeasurementKind::Homodyne, config.theta, config.phi),
        )
        .map(Some),
        Quantity::W11 => work_double(
            f,
            &DoubleMeasurementSpec::new(MeasurementKind::Heterodyne, config.theta, config.phi),
        )
        .map(Some),
    }
}

fn optional_max(result: Result<f64, CoreError>) -> Result<Option<f64>, CoreError> {
    match result {
        Ok(v) => Ok(Some(v)),
        Err(CoreError::MaxWorkUndefined { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn annotate_row(e: CliError, row: usize, name: &str, value: f64) -> CliError {
    match e {
        CliError::Domain(msg) => CliError::Domain(format!("row {row} ({name}={value}): {msg}")),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn parse(text: &str) -> SweepConfig {
        SweepConfig::parse_str(text).unwrap()
    }

    #[test]
    fn rows_match_independent_evaluations() {
        let config = parse(
            "system = 1\nswept_parameter = n_th:0:4:5\nfixed_parameters.C = 34\n\
             fixed_parameters.gamma = 0.05\nfixed_parameters.r = 1\nquantities = W0, L_N_mirror\n",
        );
        let d = run_sweep(&config, &SweepOptions::default()).unwrap();
        assert_eq!(d.columns, vec!["n_th", "W0", "L_N_mirror"]);
        assert_eq!(d.rows.len(), 5);
        for (i, row) in d.rows.iter().enumerate() {
            let p = System1Params::from_cooperativity(1.0, 0.05, 34.0, 1.0, i as f64).unwrap();
            let mirror = closed_form_blocks(&p).mirror_mirror;
            assert_eq!(row[0], Some(i as f64));
            assert_eq!(
                row[1],
                Some(work_single(&mirror, MeasurementKind::Homodyne))
            );
            assert_eq!(row[2], Some(logarithmic_negativity(&mirror)));
        }
    }

    #[test]
    fn phase_sweep_endpoints_agree_over_one_period() {
        let config = parse(
            "system = 2\nswept_parameter = omega_t:0:6.283185307179586:9\n\
             fixed_parameters.x = 1.5\nquantities = L_N_optic, W0, W1, W11\n",
        );
        let d = run_sweep(&config, &SweepOptions::default()).unwrap();
        let first = &d.rows[0];
        let last = &d.rows[8];
        for col in 1..d.columns.len() {
            assert_abs_diff_eq!(first[col].unwrap(), last[col].unwrap(), epsilon = 1e-12);
        }
    }

    #[test]
    fn family_blocks_are_emitted_in_listed_order() {
        let config = parse(
            "system = 1\nswept_parameter = n_th:0:2:3\nfamily = r:0.5,1\n\
             fixed_parameters.C = 34\nfixed_parameters.gamma = 0.05\nquantities = W0\n",
        );
        let d = run_sweep(&config, &SweepOptions::default()).unwrap();
        assert_eq!(d.columns, vec!["n_th", "r", "W0"]);
        assert_eq!(d.rows.len(), 6);
        let family: Vec<f64> = d.rows.iter().map(|r| r[1].unwrap()).collect();
        assert_eq!(family, vec![0.5, 0.5, 0.5, 1.0, 1.0, 1.0]);
        let swept: Vec<f64> = d.rows.iter().map(|r| r[0].unwrap()).collect();
        assert_eq!(swept, vec![0.0, 1.0, 2.0, 0.0, 1.0, 2.0]);
    }

    #[test]
    fn kbt_scales_work_columns_only() {
        let config = parse(
            "system = 1\nswept_parameter = n_th:0:2:3\nfixed_parameters.C = 34\n\
             fixed_parameters.gamma = 0.05\nfixed_parameters.r = 1\n\
             quantities = L_N_mirror, W0, W1_max\n",
        );
        let base = run_sweep(&config, &SweepOptions::default()).unwrap();
        let scaled = run_sweep(
            &config,
            &SweepOptions {
                kbt: 2.5,
                ..SweepOptions::default()
            },
        )
        .unwrap();
        for (b, s) in base.rows.iter().zip(&scaled.rows) {
            assert_eq!(b[1], s[1]);
            assert_eq!(s[2], Some(b[2].unwrap() * 2.5));
            assert_eq!(s[3], Some(b[3].unwrap() * 2.5));
        }
    }

    #[test]
    fn domain_failures_name_the_row() {
        let config = parse(
            "system = 1\nswept_parameter = n_th:-1:1:3\nfixed_parameters.C = 34\n\
             fixed_parameters.gamma = 0.05\nfixed_parameters.r = 1\nquantities = W0\n",
        );
        match run_sweep(&config, &SweepOptions::default()) {
            Err(CliError::Domain(msg)) => {
                assert!(msg.contains("row 0"), "message: {msg}");
                assert!(msg.contains("n_th=-1"), "message: {msg}");
            }
            other => panic!("expected a domain error, got {other:?}"),
        }
    }

    #[test]
    fn undefined_max_work_yields_empty_cells() {
        let config = parse(
            "system = 2\nswept_parameter = omega_t:0:3:4\nfixed_parameters.x = 1.5\n\
             quantities = W0_max\n",
        );
        let d = run_sweep(&config, &SweepOptions::default()).unwrap();
        assert!(d.rows[0][1].is_some());
        assert!(d.rows.iter().any(|r| r[1].is_none()));
    }
}
