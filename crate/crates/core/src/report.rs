//! Pass/fail rows shared by the verification commands.

use serde::{Deserialize, Serialize};

/// One verified quantity: numeric with a tolerance, or an exact expression
/// compared symbolically.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub quantity: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expression: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_expression: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub error_bound: f64,
    pub citation: String,
    pub status: Status,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

impl Check {
    /// `|value - expected| < tolerance`.
    pub fn new(quantity: &str, value: f64, expected: f64, tolerance: f64, error_bound: f64, citation: &str) -> Check {
        let ok = (value - expected).abs() < tolerance && value.is_finite();
        Check {
            quantity: quantity.into(),
            value: Some(value),
            expression: None,
            expected: Some(expected),
            expected_expression: None,
            tolerance: Some(tolerance),
            error_bound,
            citation: citation.into(),
            status: Status::from_bool(ok),
        }
    }

    /// Exact comparison; `equal` is decided by the caller on the underlying
    /// exact objects, the strings are their renderings.
    pub fn exact(quantity: &str, expression: String, expected: String, equal: bool, citation: &str) -> Check {
        Check {
            quantity: quantity.into(),
            value: None,
            expression: Some(expression),
            expected: None,
            expected_expression: Some(expected),
            tolerance: None,
            error_bound: 0.0,
            citation: citation.into(),
            status: Status::from_bool(equal),
        }
    }

    /// A computed value without a reference; passes when finite.
    pub fn computed(quantity: &str, value: f64, error_bound: f64, citation: &str) -> Check {
        Check {
            quantity: quantity.into(),
            value: Some(value),
            expression: None,
            expected: None,
            expected_expression: None,
            tolerance: None,
            error_bound,
            citation: citation.into(),
            status: Status::from_bool(value.is_finite()),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Numeric value, NaN for symbolic rows.
    pub fn number(&self) -> f64 {
        self.value.unwrap_or(f64::NAN)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}
