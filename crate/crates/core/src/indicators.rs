//! Yearbook-style series ingestion: log-difference growth rates for
//! technology input (α), output technological content (β), and labour (n),
//! combined into the firm coefficient `T = (α+β)/(1+n)`.

use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// One raw observation. `employment` may be omitted when both
/// `business_income` and `per_capita_income` are present; the headcount is
/// then derived as their quotient.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize, Serialize)]
pub struct RawRow {
    pub year: i32,
    pub rnd_input: f64,
    pub active_patents: f64,
    pub employment: Option<f64>,
    pub business_income: Option<f64>,
    pub per_capita_income: Option<f64>,
}

impl RawRow {
    /// Employment headcount: the direct column when present, otherwise
    /// `business_income / per_capita_income`.
    pub fn effective_employment(&self) -> Result<f64> {
        match (self.employment, self.business_income, self.per_capita_income) {
            (Some(e), _, _) => Ok(e),
            (None, Some(bi), Some(pci)) => derive_employment(bi, pci),
            _ => Err(Error::Domain(format!(
                "year {}: needs employment, or business_income and per_capita_income",
                self.year
            ))),
        }
    }
}

/// A validated raw table: years strictly consecutive, all supplied values
/// positive, and every row resolvable to an employment figure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RawSeries {
    rows: Vec<RawRow>,
}

impl RawSeries {
    pub fn new(rows: Vec<RawRow>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Domain("raw series is empty".into()));
        }
        for w in rows.windows(2) {
            if w[1].year != w[0].year + 1 {
                return Err(Error::Domain(format!(
                    "years must be strictly increasing and consecutive, got {} then {}",
                    w[0].year, w[1].year
                )));
            }
        }
        for row in &rows {
            let positive = |name: &str, v: f64| -> Result<()> {
                if v > 0.0 {
                    Ok(())
                } else {
                    Err(Error::Domain(format!(
                        "year {}: {name} must be positive, got {v}",
                        row.year
                    )))
                }
            };
            positive("rnd_input", row.rnd_input)?;
            positive("active_patents", row.active_patents)?;
            if let Some(e) = row.employment {
                positive("employment", e)?;
            }
            if let Some(bi) = row.business_income {
                positive("business_income", bi)?;
            }
            if let Some(pci) = row.per_capita_income {
                positive("per_capita_income", pci)?;
            }
            row.effective_employment()?;
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[RawRow] {
        &self.rows
    }

    /// Parses CSV with the header
    /// `year,rnd_input,active_patents,employment,business_income,per_capita_income`;
    /// empty cells stand for omitted optional values.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut csv_reader = csv::Reader::from_reader(reader);
        let mut rows = Vec::new();
        for record in csv_reader.deserialize() {
            let row: RawRow =
                record.map_err(|e| Error::Domain(format!("malformed CSV input: {e}")))?;
            rows.push(row);
        }
        Self::new(rows)
    }

    pub fn from_csv_path<P: AsRef<Path>>(path: P) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| {
            Error::Domain(format!("cannot open {}: {e}", path.display()))
        })?;
        Self::from_csv_reader(file)
    }
}

/// Log-difference growth rates: `output[k] = ln(series[k+1]) − ln(series[k])`.
/// Needs at least two strictly positive values; the output is one shorter
/// than the input.
pub fn log_diff(series: &[f64]) -> Result<Vec<f64>> {
    if series.len() < 2 {
        return Err(Error::Domain(format!(
            "log-difference needs at least 2 values, got {}",
            series.len()
        )));
    }
    if let Some(bad) = series.iter().find(|v| !(**v > 0.0)) {
        return Err(Error::Domain(format!(
            "log-difference needs positive values, got {bad}"
        )));
    }
    Ok(series.windows(2).map(|w| w[1].ln() - w[0].ln()).collect())
}

/// Headcount implied by aggregate and per-capita income.
pub fn derive_employment(business_income: f64, per_capita_income: f64) -> Result<f64> {
    if !(business_income > 0.0) {
        return Err(Error::Domain(format!(
            "business_income must be positive, got {business_income}"
        )));
    }
    if !(per_capita_income > 0.0) {
        return Err(Error::Domain(format!(
            "per_capita_income must be positive, got {per_capita_income}"
        )));
    }
    Ok(business_income / per_capita_income)
}

/// One year of derived indicators. The composite columns are exact
/// arithmetic on the stored rates: `alpha_plus_beta = alpha + beta`,
/// `one_plus_n = 1 + n`, `t = alpha_plus_beta / one_plus_n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IndicatorRow {
    pub year: i32,
    pub alpha: f64,
    pub beta: f64,
    pub n: f64,
    pub alpha_plus_beta: f64,
    pub one_plus_n: f64,
    pub t: f64,
}

/// Derived indicators for every year after the first (differencing consumes
/// one observation).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndicatorTable {
    pub rows: Vec<IndicatorRow>,
}

impl IndicatorTable {
    /// Renders CSV with header `year,alpha,beta,n,alpha_plus_beta,one_plus_n,T`.
    /// With `four_decimals` the numeric cells are rounded (half-to-even) to
    /// four places for presentation; otherwise they print in full shortest
    /// round-trip precision. Stored values are never rounded.
    pub fn to_csv_string(&self, four_decimals: bool) -> String {
        let mut out = String::from("year,alpha,beta,n,alpha_plus_beta,one_plus_n,T\n");
        for row in &self.rows {
            let cells = [
                row.alpha,
                row.beta,
                row.n,
                row.alpha_plus_beta,
                row.one_plus_n,
                row.t,
            ];
            out.push_str(&row.year.to_string());
            for v in cells {
                out.push(',');
                if four_decimals {
                    out.push_str(&format!("{v:.4}"));
                } else {
                    out.push_str(&v.to_string());
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Computes α, β, n as log-differences of R&D input, active patents, and
/// (possibly derived) employment, plus the composite columns. Rejects any
/// year with `1 + n ≤ 0` (labour collapse makes the coefficient
/// meaningless); a zero growth year yields `t = 0`, which downstream
/// parameter validation surfaces explicitly.
pub fn build_indicators(raw: &RawSeries) -> Result<IndicatorTable> {
    let rows = raw.rows();
    if rows.len() < 2 {
        return Err(Error::Domain(format!(
            "need at least 2 raw rows to difference, got {}",
            rows.len()
        )));
    }
    let rnd: Vec<f64> = rows.iter().map(|r| r.rnd_input).collect();
    let patents: Vec<f64> = rows.iter().map(|r| r.active_patents).collect();
    let employment: Vec<f64> = rows
        .iter()
        .map(|r| r.effective_employment())
        .collect::<Result<_>>()?;

    let alpha = log_diff(&rnd)?;
    let beta = log_diff(&patents)?;
    let n = log_diff(&employment)?;

    let mut out = Vec::with_capacity(alpha.len());
    for k in 0..alpha.len() {
        let alpha_plus_beta = alpha[k] + beta[k];
        let one_plus_n = 1.0 + n[k];
        if !(one_plus_n > 0.0) {
            return Err(Error::Domain(format!(
                "year {}: 1+n must be positive, got {one_plus_n}",
                rows[k + 1].year
            )));
        }
        out.push(IndicatorRow {
            year: rows[k + 1].year,
            alpha: alpha[k],
            beta: beta[k],
            n: n[k],
            alpha_plus_beta,
            one_plus_n,
            t: alpha_plus_beta / one_plus_n,
        });
    }
    Ok(IndicatorTable { rows: out })
}

/// The regulation intensity that reaches a target composite parameter:
/// `target_r / T`. The caller decides whether the result lies inside the
/// admissible `(0, 10)` range.
pub fn infer_epsilon(target_r: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("T must be positive, got {t}")));
    }
    Ok(target_r / t)
}
