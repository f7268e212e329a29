//! Subcommand implementations.

use std::f64::consts::PI;
use std::path::PathBuf;

use bc_spectra_core::algebra::to_params;
use bc_spectra_core::oracle::{cross_validate_with, ode_check_boundary_matrices, CrossValidateOpts};
use bc_spectra_core::solver::{
    max_pointwise_x_deviation, solve_spectrum, ScanWindow, Tolerances,
};
use bc_spectra_core::spectral::{zero_mode_condition, DimlessEnergy};
use bc_spectra_core::symmetry::{
    hamiltonian_space_locus, is_parity_symmetric, isospectral_family, parity_family,
    SpectralClass, PARITY_TOL,
};
use bc_spectra_core::exec;

use crate::input::{parse_grid, parse_pair};
use crate::physical::PhysicalScale;
use crate::records::{
    classify_json, family_json, fmt_f64, spectrum_csv, spectrum_json, verify_json,
    ClassifyReport, FamilyVerification, OdeSummary,
};
use crate::{BcFlags, CliError, Format, Observable};

fn write_out(output: Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn spectrum(
    bc: &BcFlags,
    max_x: f64,
    kappa_max: f64,
    format: Format,
    physical: Option<String>,
    output: Option<PathBuf>,
) -> Result<i32, CliError> {
    let spec = bc.spec()?;
    let u = spec.resolve()?;
    let phys = match physical {
        Some(s) => {
            let (l, m) = parse_pair(&s, "--physical")?;
            Some(PhysicalScale::new(l, m)?)
        }
        None => None,
    };
    let window = ScanWindow::new(max_x, kappa_max)?;
    let s = solve_spectrum(&u, &window, &Tolerances::default())?;
    let text = match format {
        Format::Json => spectrum_json(&spec.echo_json(), &u, &s, phys.as_ref()),
        Format::Csv => spectrum_csv(&s, phys.as_ref()),
    };
    write_out(output, &text)?;
    Ok(0)
}

pub fn family(
    bc: &BcFlags,
    samples: usize,
    max_x: f64,
    output: Option<PathBuf>,
) -> Result<i32, CliError> {
    if samples < 1 {
        return Err(CliError::Input("--samples must be at least 1".to_string()));
    }
    let spec = bc.spec()?;
    let u = spec.resolve()?;
    let fam = isospectral_family(&u, samples);
    let window = ScanWindow::new(max_x, 60.0)?;
    let tol = Tolerances::default();

    let base = solve_spectrum(&u, &window, &tol)?;
    let member_spectra = exec::map_slice(&fam.samples, |(_, m)| solve_spectrum(m, &window, &tol));
    let mut worst = 0.0_f64;
    let mut structurally_equal = true;
    for s in member_spectra {
        match max_pointwise_x_deviation(&base, &s?) {
            Some(d) => worst = worst.max(d),
            None => structurally_equal = false,
        }
    }
    let pointwise_tol = 1e-9;
    let verification = FamilyVerification {
        compared: fam.samples.len(),
        max_x_deviation: worst,
        tol: pointwise_tol,
        agree: structurally_equal && worst <= pointwise_tol,
    };
    let parity_symmetric = is_parity_symmetric(&u, PARITY_TOL);
    let text = family_json(
        &spec.echo_json(),
        &u,
        &fam.samples,
        parity_symmetric,
        &verification,
    );
    write_out(output, &text)?;
    Ok(0)
}

pub fn classify(bc: &BcFlags, output: Option<PathBuf>) -> Result<i32, CliError> {
    let spec = bc.spec()?;
    let u = spec.resolve()?;
    let report = ClassifyReport {
        parity_symmetric: is_parity_symmetric(&u, PARITY_TOL),
        locus: hamiltonian_space_locus(&u).to_string(),
        zero_mode: zero_mode_condition(&u),
        time_reversal_fixed: to_params(&u).m2.abs() < PARITY_TOL,
    };
    let text = classify_json(&spec.echo_json(), &u, &report);
    write_out(output, &text)?;
    Ok(0)
}

pub fn sweep(
    grid: &str,
    observable: Observable,
    max_x: f64,
    kappa_max: f64,
    output: Option<PathBuf>,
) -> Result<i32, CliError> {
    let (rows, cols) = parse_grid(grid)?;
    let window = ScanWindow::new(max_x, kappa_max)?;
    let tol = Tolerances::default();

    let cell = |idx: usize| -> Result<(f64, f64, f64), bc_spectra_core::Error> {
        let i = idx / cols;
        let j = idx % cols;
        let eta = i as f64 * PI / rows as f64;
        let theta = j as f64 * 2.0 * PI / cols as f64;
        let value = match observable {
            Observable::ZeroModeResidual => {
                let class = SpectralClass {
                    eta,
                    m0: theta.cos(),
                    m1: theta.sin(),
                };
                class.zero_mode_residual().abs()
            }
            Observable::GroundState | Observable::Gap => {
                let u = parity_family(eta, theta);
                let s = solve_spectrum(&u, &window, &tol)?;
                let levels = s.eigenvalues_expanded();
                match observable {
                    Observable::GroundState => *levels.first().ok_or_else(|| {
                        bc_spectra_core::Error::InvalidParameter(
                            "window too small: no level found".to_string(),
                        )
                    })?,
                    _ => {
                        if levels.len() < 2 {
                            return Err(bc_spectra_core::Error::InvalidParameter(
                                "window too small for a gap".to_string(),
                            ));
                        }
                        levels[1] - levels[0]
                    }
                }
            }
        };
        Ok((eta, theta, value))
    };

    // cells are independent; output order is row-major regardless of scheduling
    let results = exec::map_range(rows * cols, cell);
    let mut text = String::from("eta,theta,value\r\n");
    for r in results {
        let (eta, theta, value) = r?;
        text.push_str(&format!(
            "{},{},{}\r\n",
            fmt_f64(eta),
            fmt_f64(theta),
            fmt_f64(value)
        ));
    }
    write_out(output, &text)?;
    Ok(0)
}

pub fn verify(
    bc: &BcFlags,
    grids: &str,
    k: usize,
    rtol: f64,
    steps: usize,
    output: Option<PathBuf>,
) -> Result<i32, CliError> {
    let spec = bc.spec()?;
    let u = spec.resolve()?;
    let (g1, g2) = parse_pair(grids, "--grids")?;
    if g1.fract() != 0.0 || g2.fract() != 0.0 || g1 < 1.0 || g2 < 1.0 {
        return Err(CliError::Input(format!(
            "--grids expects two positive integers, got '{grids}'"
        )));
    }
    let opts = CrossValidateOpts {
        rtol,
        ..Default::default()
    };
    let report = cross_validate_with(&u, (g1 as usize, g2 as usize), k, &opts)?;

    let energies = [PI * PI, -4.0, 100.0, -100.0, 1e-6];
    let mut ode_max = 0.0_f64;
    for &e in &energies {
        ode_max = ode_max.max(ode_check_boundary_matrices(DimlessEnergy::new(e), steps)?);
    }
    let ode = OdeSummary {
        energies: energies.to_vec(),
        steps,
        max_deviation: ode_max,
        passed: ode_max < 1e-8,
    };
    let passed = report.passed && ode.passed;

    // human-readable summary on stderr; the JSON report owns stdout
    eprintln!(
        "verify: grids ({}, {}), k = {k}, rtol = {rtol:.1e}",
        report.grids.0, report.grids.1
    );
    eprintln!(
        "  solver eigenvalues: {}",
        report
            .reference
            .iter()
            .map(|v| format!("{v:.6}"))
            .collect::<Vec<_>>()
            .join(", ")
    );
    eprintln!(
        "  fine-grid deviations: {}",
        report
            .deviation_fine
            .iter()
            .map(|v| format!("{v:.2e}"))
            .collect::<Vec<_>>()
            .join(", ")
    );
    match report.order_median {
        Some(p) => eprintln!("  fitted convergence order: {p:.3}"),
        None => eprintln!("  fitted convergence order: all deviations at the floor"),
    }
    eprintln!(
        "  negative-branch agreement: {}",
        if report.negatives_agree { "yes" } else { "NO" }
    );
    eprintln!("  ode boundary-matrix max deviation: {ode_max:.2e} (tol 1e-8)");
    for note in &report.notes {
        eprintln!("  note: {note}");
    }
    eprintln!("  result: {}", if passed { "PASS" } else { "FAIL" });

    let text = verify_json(&spec.echo_json(), &report, &ode, rtol, passed);
    write_out(output, &text)?;
    Ok(if passed { 0 } else { 4 })
}
