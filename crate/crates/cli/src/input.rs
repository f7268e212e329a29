//! Boundary-condition input resolution.

use bc_spectra_core::algebra::{from_params, BoundaryParams, Complex, Mat2, Unitary2};
use bc_spectra_core::{presets, symmetry};

use crate::records::{fmt_f64, json_escape};
use crate::CliError;

/// How the boundary condition was specified on the command line.
#[derive(Clone, Debug)]
pub enum BcSpec {
    Preset { name: String, alpha: Option<f64> },
    Family { eta: f64, theta: f64 },
    Params { eta: f64, m: [f64; 4] },
    Matrix { entries: [Complex; 4] },
}

impl BcSpec {
    pub fn resolve(&self) -> Result<Unitary2, CliError> {
        match self {
            BcSpec::Preset { name, alpha } => match (name.as_str(), alpha) {
                ("dirichlet", None) => Ok(presets::dirichlet()),
                ("neumann", None) => Ok(presets::neumann()),
                ("periodic", None) => Ok(presets::periodic()),
                ("antiperiodic", None) => Ok(presets::antiperiodic()),
                ("quasiperiodic", Some(a)) => Ok(presets::quasiperiodic(*a)),
                ("quasiperiodic", None) => Err(CliError::Input(
                    "preset 'quasiperiodic' requires --alpha".to_string(),
                )),
                (other, Some(_)) => Err(CliError::Input(format!(
                    "--alpha only applies to the quasiperiodic preset, not '{other}'"
                ))),
                (other, None) => Err(CliError::Input(format!(
                    "unknown preset '{other}' (expected dirichlet, neumann, periodic, \
                     antiperiodic or quasiperiodic)"
                ))),
            },
            BcSpec::Family { eta, theta } => Ok(symmetry::parity_family(*eta, *theta)),
            BcSpec::Params { eta, m } => {
                let p = BoundaryParams::new(*eta, m[0], m[1], m[2], m[3])
                    .map_err(|e| CliError::Input(e.to_string()))?;
                Ok(from_params(&p))
            }
            BcSpec::Matrix { entries } => {
                let m = Mat2::new(entries[0], entries[1], entries[2], entries[3]);
                Unitary2::new(m).map_err(|e| CliError::Input(e.to_string()))
            }
        }
    }

    /// Input echo for serialized records.
    pub fn echo_json(&self) -> String {
        match self {
            BcSpec::Preset { name, alpha } => {
                let alpha = match alpha {
                    Some(a) => fmt_f64(*a),
                    None => "null".to_string(),
                };
                format!(
                    "{{\"kind\":\"preset\",\"name\":\"{}\",\"alpha\":{}}}",
                    json_escape(name),
                    alpha
                )
            }
            BcSpec::Family { eta, theta } => format!(
                "{{\"kind\":\"family\",\"eta\":{},\"theta\":{}}}",
                fmt_f64(*eta),
                fmt_f64(*theta)
            ),
            BcSpec::Params { eta, m } => format!(
                "{{\"kind\":\"params\",\"eta\":{},\"m0\":{},\"m1\":{},\"m2\":{},\"m3\":{}}}",
                fmt_f64(*eta),
                fmt_f64(m[0]),
                fmt_f64(m[1]),
                fmt_f64(m[2]),
                fmt_f64(m[3])
            ),
            BcSpec::Matrix { entries } => {
                let entries: Vec<String> = entries
                    .iter()
                    .map(|z| format!("[{},{}]", fmt_f64(z.re), fmt_f64(z.im)))
                    .collect();
                format!(
                    "{{\"kind\":\"matrix\",\"entries\":[{}]}}",
                    entries.join(",")
                )
            }
        }
    }
}

/// Build a [`BcSpec`] from the shared CLI flags, requiring exactly one
/// input mode.
#[allow(clippy::too_many_arguments)]
pub fn spec_from_flags(
    preset: Option<String>,
    alpha: Option<f64>,
    eta: Option<f64>,
    theta: Option<f64>,
    m0: Option<f64>,
    m1: Option<f64>,
    m2: Option<f64>,
    m3: Option<f64>,
    matrix: Option<String>,
) -> Result<BcSpec, CliError> {
    let ms = [m0, m1, m2, m3];
    let any_m = ms.iter().any(Option::is_some);
    match (preset, matrix, eta, theta, any_m) {
        (Some(name), None, None, None, false) => Ok(BcSpec::Preset { name, alpha }),
        (None, Some(spec), None, None, false) => Ok(BcSpec::Matrix {
            entries: parse_matrix(&spec)?,
        }),
        (None, None, Some(eta), Some(theta), false) => Ok(BcSpec::Family { eta, theta }),
        (None, None, Some(eta), None, true) => {
            let all: Option<Vec<f64>> = ms.iter().copied().collect();
            match all {
                Some(v) => Ok(BcSpec::Params {
                    eta,
                    m: [v[0], v[1], v[2], v[3]],
                }),
                None => Err(CliError::Input(
                    "explicit parameters need all of --m0 --m1 --m2 --m3".to_string(),
                )),
            }
        }
        _ => Err(CliError::Input(
            "specify the boundary condition as --preset NAME, --eta E --theta T, \
             --eta E --m0 .. --m3, or --matrix \"z11,z12,z21,z22\""
                .to_string(),
        )),
    }
}

/// Parse one complex number: `1.5`, `-2i`, `0.3+0.4i`, `1e-3-2.5e2i`, `i`.
pub fn parse_complex(s: &str) -> Result<Complex, CliError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(CliError::Input("empty complex number".to_string()));
    }
    let bad = || CliError::Input(format!("cannot parse complex number '{s}'"));
    if let Some(body) = t.strip_suffix(['i', 'j']) {
        // find the split between real and imaginary parts: the last +/-
        // that is not an exponent sign and not the leading sign
        let bytes = body.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let c = bytes[idx] as char;
            if (c == '+' || c == '-') && !matches!(bytes[idx - 1] as char, 'e' | 'E') {
                split = Some(idx);
                break;
            }
        }
        match split {
            Some(idx) => {
                let re: f64 = body[..idx].parse().map_err(|_| bad())?;
                let imag_str = &body[idx..];
                let im: f64 = match imag_str {
                    "+" => 1.0,
                    "-" => -1.0,
                    _ => imag_str.parse().map_err(|_| bad())?,
                };
                finite(re, im, bad)
            }
            None => {
                let im: f64 = match body {
                    "" => 1.0,
                    "-" => -1.0,
                    "+" => 1.0,
                    _ => body.parse().map_err(|_| bad())?,
                };
                finite(0.0, im, bad)
            }
        }
    } else {
        let re: f64 = t.parse().map_err(|_| bad())?;
        finite(re, 0.0, bad)
    }
}

fn finite(
    re: f64,
    im: f64,
    bad: impl Fn() -> CliError,
) -> Result<Complex, CliError> {
    if re.is_finite() && im.is_finite() {
        Ok(Complex { re, im })
    } else {
        Err(bad())
    }
}

/// Row-major 2×2 complex matrix: four comma-separated complex numbers.
pub fn parse_matrix(s: &str) -> Result<[Complex; 4], CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(CliError::Input(format!(
            "--matrix expects 4 comma-separated complex entries, got {}",
            parts.len()
        )));
    }
    let mut out = [Complex { re: 0.0, im: 0.0 }; 4];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = parse_complex(part)?;
    }
    Ok(out)
}

/// Comma-separated pair, e.g. `--grids 500,1000` or `--physical 1e-6,9.1e-31`.
pub fn parse_pair(s: &str, what: &str) -> Result<(f64, f64), CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::Input(format!(
            "{what} expects two comma-separated values"
        )));
    }
    let a: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| CliError::Input(format!("cannot parse '{}'", parts[0])))?;
    let b: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| CliError::Input(format!("cannot parse '{}'", parts[1])))?;
    Ok((a, b))
}

/// Grid shape `RxC`.
pub fn parse_grid(s: &str) -> Result<(usize, usize), CliError> {
    let parts: Vec<&str> = s.split(['x', 'X']).collect();
    if parts.len() != 2 {
        return Err(CliError::Input(format!(
            "--grid expects ROWSxCOLS, got '{s}'"
        )));
    }
    let r: usize = parts[0]
        .parse()
        .map_err(|_| CliError::Input(format!("cannot parse grid rows '{}'", parts[0])))?;
    let c: usize = parts[1]
        .parse()
        .map_err(|_| CliError::Input(format!("cannot parse grid cols '{}'", parts[1])))?;
    if r < 2 || c < 2 {
        return Err(CliError::Input(
            "sweep grid must be at least 2x2".to_string(),
        ));
    }
    Ok((r, c))
}
