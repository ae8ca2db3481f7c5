//! Verification reports and their JSON/text renderings.

use std::fmt;

use charpoly::polyring::PolyRepr;
use charpoly::{QPoly, QSeries};
use serde::{Deserialize, Serialize};

/// Version of the JSON layout written by the CLI.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    OpenConjecturePass,
    OpenConjectureMismatch,
}

impl Status {
    fn of(ok: bool, open: bool) -> Self {
        match (ok, open) {
            (true, false) => Self::Pass,
            (false, false) => Self::Fail,
            (true, true) => Self::OpenConjecturePass,
            (false, true) => Self::OpenConjectureMismatch,
        }
    }

    pub fn is_ok(self) -> bool {
        matches!(self, Self::Pass | Self::OpenConjecturePass)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pass => "PASS",
            Self::Fail => "FAIL",
            Self::OpenConjecturePass => "OPEN-PASS",
            Self::OpenConjectureMismatch => "OPEN-MISMATCH",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shapes: Option<usize>,
}

impl Params {
    pub fn km(k: usize, m: usize) -> Self {
        Self {
            k: Some(k),
            m: Some(m),
            ..Self::default()
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut push = |name: &str, v: Option<String>| {
            if let Some(v) = v {
                parts.push(format!("{name}={v}"));
            }
        };
        push("k", self.k.map(|v| v.to_string()));
        push("mu", self.mu.clone());
        push("m", self.m.map(|v| v.to_string()));
        push("order", self.order.map(|v| v.to_string()));
        push("i", self.index.map(|v| v.to_string()));
        push("shapes", self.shapes.map(|v| v.to_string()));
        f.write_str(&parts.join(" "))
    }
}

/// A nonzero difference between the two sides of a check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    pub difference: PolyRepr,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: Params,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl VerificationReport {
    /// Builds a report from labelled differences; the check passes when
    /// every difference is zero.
    pub fn from_differences(
        check: &str,
        params: Params,
        open: bool,
        differences: impl IntoIterator<Item = (String, QPoly)>,
    ) -> Self {
        let witness: Vec<Witness> = differences
            .into_iter()
            .filter(|(_, d)| !d.is_zero())
            .map(|(label, d)| Witness {
                label,
                difference: d.to_repr(),
            })
            .collect();
        Self {
            check: check.into(),
            params,
            status: Status::of(witness.is_empty(), open),
            witness,
            wall_time_ms: None,
        }
    }

    pub fn compare(check: &str, params: Params, open: bool, lhs: &QPoly, rhs: &QPoly) -> Self {
        Self::from_differences(check, params, open, [("lhs - rhs".to_string(), lhs - rhs)])
    }

    /// Compares two series coefficient by coefficient.
    pub fn compare_series(check: &str, params: Params, lhs: &QSeries, rhs: &QSeries) -> Self {
        let n = lhs.order().min(rhs.order());
        Self::from_differences(
            check,
            params,
            false,
            (0..=n).map(|i| (format!("[x^{i}]"), lhs.coeff(i) - rhs.coeff(i))),
        )
    }

    pub fn residual(check: &str, params: Params, r: &QSeries) -> Self {
        Self::from_differences(
            check,
            params,
            false,
            r.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (format!("[x^{i}]"), c.clone())),
        )
    }

    pub fn with_time(mut self, ms: f64) -> Self {
        self.wall_time_ms = Some(ms);
        self
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.status, self.check, self.params)?;
        if let Some(ms) = self.wall_time_ms {
            write!(f, " ({ms:.1} ms)")?;
        }
        for w in &self.witness {
            let poly = QPoly::from_repr(&w.difference)
                .map(|p| p.to_string())
                .unwrap_or_else(|e| e.to_string());
            write!(f, "\n    {}: {poly}", w.label)?;
        }
        Ok(())
    }
}

/// The top-level JSON document of a `verify` run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportSet {
    pub schema_version: u32,
    pub reports: Vec<VerificationReport>,
}

impl ReportSet {
    pub fn new(reports: Vec<VerificationReport>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            reports,
        }
    }

    /// 1 if any check failed, else 2 if an open-conjecture check found a
    /// mismatch, else 0.
    pub fn exit_code(&self) -> u8 {
        let has = |s| self.reports.iter().any(|r| r.status == s);
        if has(Status::Fail) {
            1
        } else if has(Status::OpenConjectureMismatch) {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

impl fmt::Display for ReportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.reports {
            writeln!(f, "{r}")?;
        }
        let passed = self.reports.iter().filter(|r| r.status.is_ok()).count();
        write!(f, "{passed}/{} checks passed", self.reports.len())
    }
}
