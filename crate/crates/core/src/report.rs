//! Grid sweeps and the shared float formatting of reports.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactpoly::RootBracket;
use crate::extremal::{verify_counterexample, CounterexampleReport, SearchConfig};

/// `x` rounded to 12 significant digits.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String, String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    s.push('\n');
    Ok(s)
}

/// One `(p, q, k)` instance of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridRow {
    pub p: u64,
    pub q: u64,
    pub k: u64,
    pub e: Option<u64>,
    pub verdict: Option<bool>,
    pub rho_pm: Option<f64>,
    pub rho_pm_numeric: Option<f64>,
    pub rho_best_candidate: Option<f64>,
    pub rho_best_candidate_numeric: Option<f64>,
    /// `rho_pm − rho_best_candidate`.
    pub gap: Option<f64>,
    /// Least linear coefficient of `f_a − g` over the candidates.
    pub cert_x_coeff: Option<String>,
    /// Constant of `f_a − g`, shared by every candidate.
    pub cert_const: Option<String>,
    pub all_certified: Option<bool>,
    pub rho_pm_squared: Option<RootBracket>,
    pub rho_best_candidate_squared: Option<RootBracket>,
    pub error: Option<String>,
}

impl GridRow {
    fn failed(p: u64, q: u64, k: u64, error: String) -> Self {
        Self {
            p,
            q,
            k,
            e: q.checked_sub(k).and_then(|t| p.checked_mul(t)),
            verdict: None,
            rho_pm: None,
            rho_pm_numeric: None,
            rho_best_candidate: None,
            rho_best_candidate_numeric: None,
            gap: None,
            cert_x_coeff: None,
            cert_const: None,
            all_certified: None,
            rho_pm_squared: None,
            rho_best_candidate_squared: None,
            error: Some(error),
        }
    }

    pub fn from_report(report: &CounterexampleReport) -> Self {
        let (p, q, k) = (report.p, report.q, report.k);
        let Some(best) = report.best_candidate() else {
            return GridRow::failed(p, q, k, "no candidates".into());
        };
        GridRow {
            p,
            q,
            k,
            e: Some(report.e),
            verdict: Some(report.verdict),
            rho_pm: Some(report.rho_pm),
            rho_pm_numeric: Some(report.rho_pm_numeric),
            rho_best_candidate: Some(best.rho),
            rho_best_candidate_numeric: Some(best.rho_numeric),
            gap: Some(sig12(report.rho_pm - best.rho)),
            cert_x_coeff: report.least_cert_x_coeff().map(|c| c.to_string()),
            cert_const: Some(best.certificate.diff.coeff(0).to_string()),
            all_certified: Some(report.candidates.iter().all(|c| c.certificate.is_certified())),
            rho_pm_squared: Some(report.rho_pm_squared.clone()),
            rho_best_candidate_squared: Some(best.rho_squared.clone()),
            error: None,
        }
    }
}

pub fn grid_row(p: u64, q: u64, k: u64, cfg: &SearchConfig) -> GridRow {
    match verify_counterexample(p, q, k, cfg) {
        Ok(r) => GridRow::from_report(&r),
        Err(e) => GridRow::failed(p, q, k, e.to_string()),
    }
}

/// Rows for every `p`, `k` and `q = kp + offset`, ordered by `(p, k, offset)`.
pub fn grid(ps: &[u64], ks: &[u64], offsets: &[u64], cfg: &SearchConfig) -> Vec<GridRow> {
    let params: Vec<(u64, u64, u64)> = ps
        .iter()
        .flat_map(|&p| {
            ks.iter()
                .flat_map(move |&k| offsets.iter().map(move |&o| (p, k * p + o, k)))
        })
        .collect();
    params.into_par_iter().map(|(p, q, k)| grid_row(p, q, k, cfg)).collect()
}

pub const GRID_COLUMNS: [&str; 11] = [
    "p",
    "q",
    "k",
    "e",
    "verdict",
    "rho_pm",
    "rho_best_candidate",
    "gap",
    "cert_x_coeff",
    "cert_const",
    "error",
];

fn cell<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(ToString::to_string).unwrap_or_default()
}

pub fn grid_csv(rows: &[GridRow]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(GRID_COLUMNS)?;
    for r in rows {
        w.write_record([
            r.p.to_string(),
            r.q.to_string(),
            r.k.to_string(),
            cell(&r.e),
            cell(&r.verdict),
            cell(&r.rho_pm),
            cell(&r.rho_best_candidate),
            cell(&r.gap),
            cell(&r.cert_x_coeff),
            cell(&r.cert_const),
            cell(&r.error),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).unwrap_or_default())
}
