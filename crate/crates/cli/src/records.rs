//! Deterministic JSON and CSV emission.
//!
//! Records are written by hand so that field order is fixed and every
//! float is printed with 17 significant digits; two identical invocations
//! produce byte-identical output. The schema is documented in
//! docs/schema.md and pinned by golden tests.

use bc_spectra_core::algebra::{to_params, Unitary2};
use bc_spectra_core::oracle::OracleReport;
use bc_spectra_core::solver::Spectrum;
use bc_spectra_core::spectral::Branch;
use bc_spectra_core::symmetry::SpectralClass;

use crate::physical::PhysicalScale;

pub const SCHEMA_VERSION: u32 = 1;

/// 17 significant digits, scientific; stable across runs. Negative zero
/// is folded into zero so equal values always print identically.
pub fn fmt_f64(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{:.16e}", x)
}

pub fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// RFC-4180 field quoting.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') || s.contains('\r') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn json_str_list(items: &[String]) -> String {
    let quoted: Vec<String> = items
        .iter()
        .map(|s| format!("\"{}\"", json_escape(s)))
        .collect();
    format!("[{}]", quoted.join(","))
}

pub fn json_f64_list(items: &[f64]) -> String {
    let vals: Vec<String> = items.iter().map(|v| fmt_f64(*v)).collect();
    format!("[{}]", vals.join(","))
}

pub fn matrix_json(u: &Unitary2) -> String {
    let m = u.matrix();
    let entries: Vec<String> = [m.e11, m.e12, m.e21, m.e22]
        .iter()
        .map(|z| format!("[{},{}]", fmt_f64(z.re), fmt_f64(z.im)))
        .collect();
    format!("[{}]", entries.join(","))
}

pub fn params_json(u: &Unitary2) -> String {
    let p = to_params(u);
    format!(
        "{{\"eta\":{},\"m0\":{},\"m1\":{},\"m2\":{},\"m3\":{}}}",
        fmt_f64(p.eta),
        fmt_f64(p.m0),
        fmt_f64(p.m1),
        fmt_f64(p.m2),
        fmt_f64(p.m3)
    )
}

pub fn class_json(class: &SpectralClass) -> String {
    format!(
        "{{\"eta\":{},\"m0\":{},\"m1\":{}}}",
        fmt_f64(class.eta),
        fmt_f64(class.m0),
        fmt_f64(class.m1)
    )
}

pub fn branch_name(b: Branch) -> &'static str {
    match b {
        Branch::Positive => "positive",
        Branch::Zero => "zero",
        Branch::Negative => "negative",
    }
}

fn header_fields(command: &str, input_echo: &str) -> String {
    format!(
        "\"schema_version\":{SCHEMA_VERSION},\"tool\":\"bc-spectra\",\"version\":\"{}\",\
         \"command\":\"{command}\",\"input\":{input_echo}",
        env!("CARGO_PKG_VERSION")
    )
}

pub fn spectrum_json(
    input_echo: &str,
    u: &Unitary2,
    s: &Spectrum,
    physical: Option<&PhysicalScale>,
) -> String {
    let class = SpectralClass::of(u);
    let mut out = String::new();
    out.push('{');
    out.push_str(&header_fields("spectrum", input_echo));
    out.push_str(&format!(",\"boundary_params\":{}", params_json(u)));
    out.push_str(&format!(",\"spectral_class\":{}", class_json(&class)));
    out.push_str(&format!(",\"zero_mode\":{}", s.zero_mode));
    out.push_str(&format!(
        ",\"window\":{{\"x_max\":{},\"kappa_max\":{}}}",
        fmt_f64(s.window.x_max),
        fmt_f64(s.window.kappa_max)
    ));
    let t = &s.tolerances;
    out.push_str(&format!(
        ",\"tolerances\":{{\"grid_step\":{},\"refine_x\":{},\"tangent_rel\":{},\
         \"root_residual\":{},\"multiplicity\":{},\"zero_mode\":{}}}",
        fmt_f64(t.grid_step),
        fmt_f64(t.refine_x),
        fmt_f64(t.tangent_rel),
        fmt_f64(t.root_residual),
        fmt_f64(t.multiplicity),
        fmt_f64(t.zero_mode)
    ));
    match physical {
        Some(p) => out.push_str(&format!(
            ",\"physical\":{{\"length_m\":{},\"mass_kg\":{},\"hbar_js\":{}}}",
            fmt_f64(p.length_m),
            fmt_f64(p.mass_kg),
            fmt_f64(p.hbar_js)
        )),
        None => out.push_str(",\"physical\":null"),
    }
    out.push_str(",\"points\":[");
    for (i, p) in s.points.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!(
            "{{\"x\":{},\"eps_hat\":{},\"branch\":\"{}\",\"multiplicity\":{}",
            fmt_f64(p.x),
            fmt_f64(p.eps_hat),
            branch_name(p.branch),
            p.multiplicity
        ));
        if let Some(scale) = physical {
            out.push_str(&format!(",\"energy_j\":{}", fmt_f64(scale.energy(p.eps_hat))));
        }
        out.push('}');
    }
    out.push(']');
    out.push_str(&format!(
        ",\"diagnostics\":{}",
        json_str_list(&s.diagnostics)
    ));
    out.push('}');
    out.push('\n');
    out
}

pub fn spectrum_csv(s: &Spectrum, physical: Option<&PhysicalScale>) -> String {
    let mut out = String::new();
    if physical.is_some() {
        out.push_str("x,eps_hat,branch,multiplicity,energy_j\r\n");
    } else {
        out.push_str("x,eps_hat,branch,multiplicity\r\n");
    }
    for p in &s.points {
        let mut row = format!(
            "{},{},{},{}",
            fmt_f64(p.x),
            fmt_f64(p.eps_hat),
            csv_field(branch_name(p.branch)),
            p.multiplicity
        );
        if let Some(scale) = physical {
            row.push_str(&format!(",{}", fmt_f64(scale.energy(p.eps_hat))));
        }
        out.push_str(&row);
        out.push_str("\r\n");
    }
    out
}

pub struct ClassifyReport {
    pub parity_symmetric: bool,
    pub locus: String,
    pub zero_mode: bool,
    pub time_reversal_fixed: bool,
}

pub fn classify_json(input_echo: &str, u: &Unitary2, r: &ClassifyReport) -> String {
    let class = SpectralClass::of(u);
    format!(
        "{{{},\"matrix\":{},\"boundary_params\":{},\"spectral_class\":{},\
         \"parity_symmetric\":{},\"locus\":\"{}\",\"zero_mode\":{},\
         \"time_reversal_fixed\":{}}}\n",
        header_fields("classify", input_echo),
        matrix_json(u),
        params_json(u),
        class_json(&class),
        r.parity_symmetric,
        r.locus,
        r.zero_mode,
        r.time_reversal_fixed
    )
}

pub struct FamilyVerification {
    pub compared: usize,
    pub max_x_deviation: f64,
    pub tol: f64,
    pub agree: bool,
}

pub fn family_json(
    input_echo: &str,
    u: &Unitary2,
    members: &[(f64, Unitary2)],
    parity_symmetric: bool,
    verification: &FamilyVerification,
) -> String {
    let class = SpectralClass::of(u);
    let mut out = String::new();
    out.push('{');
    out.push_str(&header_fields("family", input_echo));
    out.push_str(&format!(",\"spectral_class\":{}", class_json(&class)));
    out.push_str(&format!(",\"parity_symmetric\":{parity_symmetric}"));
    if parity_symmetric {
        out.push_str(
            ",\"note\":\"boundary point of the spectral space: the isospectral circle \
             degenerates to this single boundary condition\"",
        );
    } else {
        out.push_str(",\"note\":null");
    }
    out.push_str(&format!(",\"n_members\":{}", members.len()));
    out.push_str(",\"members\":[");
    for (i, (delta, m)) in members.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!(
            "{{\"delta\":{},\"matrix\":{}}}",
            fmt_f64(*delta),
            matrix_json(m)
        ));
    }
    out.push(']');
    out.push_str(&format!(
        ",\"verification\":{{\"compared_members\":{},\"max_x_deviation\":{},\
         \"tolerance\":{},\"agree\":{}}}",
        verification.compared,
        fmt_f64(verification.max_x_deviation),
        fmt_f64(verification.tol),
        verification.agree
    ));
    out.push('}');
    out.push('\n');
    out
}

pub struct OdeSummary {
    pub energies: Vec<f64>,
    pub steps: usize,
    pub max_deviation: f64,
    pub passed: bool,
}

pub fn verify_json(
    input_echo: &str,
    report: &OracleReport,
    ode: &OdeSummary,
    rtol: f64,
    passed: bool,
) -> String {
    let orders: Vec<String> = report
        .order_estimates
        .iter()
        .map(|o| match o {
            Some(p) => fmt_f64(*p),
            None => "null".to_string(),
        })
        .collect();
    let order_median = match report.order_median {
        Some(p) => fmt_f64(p),
        None => "null".to_string(),
    };
    format!(
        "{{{},\"grids\":[{},{}],\"k\":{},\"rtol\":{},\"reference\":{},\"coarse\":{},\
         \"fine\":{},\"deviation_coarse\":{},\"deviation_fine\":{},\
         \"order_estimates\":[{}],\"order_median\":{},\"negatives_agree\":{},\
         \"count_mismatch\":{},\"oracle_passed\":{},\
         \"ode\":{{\"energies\":{},\"steps\":{},\"max_deviation\":{},\"passed\":{}}},\
         \"passed\":{},\"notes\":{}}}\n",
        header_fields("verify", input_echo),
        report.grids.0,
        report.grids.1,
        report.k,
        fmt_f64(rtol),
        json_f64_list(&report.reference),
        json_f64_list(&report.coarse),
        json_f64_list(&report.fine),
        json_f64_list(&report.deviation_coarse),
        json_f64_list(&report.deviation_fine),
        orders.join(","),
        order_median,
        report.negatives_agree,
        report.count_mismatch,
        report.passed,
        json_f64_list(&ode.energies),
        ode.steps,
        fmt_f64(ode.max_deviation),
        ode.passed,
        passed,
        json_str_list(&report.notes)
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_is_17_digits() {
        assert_eq!(fmt_f64(std::f64::consts::PI), "3.1415926535897931e0");
        assert_eq!(fmt_f64(0.0), "0.0000000000000000e0");
        assert_eq!(fmt_f64(-1.0), "-1.0000000000000000e0");
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }

    #[test]
    fn json_escaping() {
        assert_eq!(json_escape("a\"b\\c\n"), "a\\\"b\\\\c\\n");
    }
}
