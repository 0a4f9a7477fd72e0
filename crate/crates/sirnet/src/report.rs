//! CSV output. Every report starts with a `# sirnet <schema> v<N>` comment,
//! optionally followed by `# key=value` lines, then a header row. Columns are
//! only ever appended; reordering bumps the version.

use std::io::Write;

use serde::Serialize;

use crate::error::AppError;

pub const SCHEMA_VERSION: u32 = 1;

pub struct Report<W: Write> {
    csv: csv::Writer<W>,
}

impl<W: Write> Report<W> {
    pub fn new(mut out: W, schema: &str, meta: &[(&str, String)]) -> Result<Self, AppError> {
        writeln!(out, "# sirnet {schema} v{SCHEMA_VERSION}")?;
        for (k, v) in meta {
            writeln!(out, "# {k}={v}")?;
        }
        Ok(Self {
            csv: csv::Writer::from_writer(out),
        })
    }

    pub fn row<S: Serialize>(&mut self, row: &S) -> Result<(), AppError> {
        Ok(self.csv.serialize(row)?)
    }

    pub fn finish(mut self) -> Result<(), AppError> {
        Ok(self.csv.flush()?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Series,
    Quadrature,
    Bound,
    Optimization,
    MonteCarlo,
}

/// Generic row for `contention` and `outage`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub quantity: &'static str,
    pub class: String,
    pub alpha: Option<f64>,
    pub theta: Option<f64>,
    pub p: Option<f64>,
    pub m: Option<u32>,
    pub value: Option<f64>,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub stderr: Option<f64>,
    pub z: Option<f64>,
    pub method: Method,
    pub note: String,
}

impl ReportRow {
    pub fn new(quantity: &'static str, class: String, value: f64, method: Method) -> Self {
        Self {
            quantity,
            class,
            alpha: None,
            theta: None,
            p: None,
            m: None,
            value: Some(value),
            lower: None,
            upper: None,
            stderr: None,
            z: None,
            method,
            note: String::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatalogRow {
    pub row: usize,
    pub u_l: u8,
    pub u_f: u8,
    pub u_a: u8,
    pub dim: &'static str,
    pub formula: &'static str,
    pub remark: &'static str,
    pub alpha: f64,
    pub theta: f64,
    pub theta_db: f64,
    pub value: f64,
    /// Independent special-case value where one exists.
    pub check: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TdmaRow {
    pub theta_db: f64,
    pub m_lower: f64,
    pub m_upper: f64,
    pub m_hat: u32,
    pub m_exact: u32,
    #[serde(rename = "pT")]
    pub p_t: f64,
    #[serde(rename = "pT_hat")]
    pub p_t_hat: f64,
    pub ps_exact: f64,
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlohaRow {
    pub class: String,
    pub theta: f64,
    pub duplex: &'static str,
    pub gamma: f64,
    pub p_opt: f64,
    pub value: f64,
    pub lower_bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateRow {
    pub alpha: f64,
    pub dim: u32,
    pub duplex: &'static str,
    pub theta_opt: f64,
    pub theta_opt_db: f64,
    pub p_opt: f64,
    pub t_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PppCapacityRow {
    pub alpha: f64,
    pub dim: u32,
    pub p: f64,
    pub c_p: f64,
    pub capacity: f64,
    pub closed_form: Option<f64>,
    pub lower: Option<f64>,
    pub high_sir: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TdmaCapacityRow {
    pub alpha: f64,
    pub m: u32,
    pub capacity: f64,
    pub per_m: f64,
    pub lower: f64,
    pub log_lower: Option<f64>,
    pub upper: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpatialRow {
    pub alpha: f64,
    pub duplex: &'static str,
    pub p_opt: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationRow {
    pub check: &'static str,
    pub class: String,
    pub mac: String,
    pub theta: f64,
    pub analytic: f64,
    pub estimate: Option<f64>,
    pub stderr: Option<f64>,
    pub z: Option<f64>,
    pub pass: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_empty_options() {
        let mut buf = Vec::new();
        let mut r = Report::new(&mut buf, "test", &[("seed", "7".into())]).unwrap();
        r.row(&SpatialRow {
            alpha: 4.0,
            duplex: "half",
            p_opt: 0.11,
            value: 0.5,
        })
        .unwrap();
        let mut row = ReportRow::new("gamma", "ppp2:a4".into(), 1.5, Method::ClosedForm);
        row.alpha = Some(4.0);
        r.finish().unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "# sirnet test v1\n# seed=7\nalpha,duplex,p_opt,value\n4.0,half,0.11,0.5\n"
        );

        let mut buf = Vec::new();
        let mut r = Report::new(&mut buf, "report", &[]).unwrap();
        r.row(&row).unwrap();
        r.finish().unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(
            lines[1],
            "quantity,class,alpha,theta,p,m,value,lower,upper,stderr,z,method,note"
        );
        assert_eq!(lines[2], "gamma,ppp2:a4,4.0,,,,1.5,,,,,closed_form,");
    }
}
