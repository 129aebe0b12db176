//! The machine-readable run report.
//!
//! Eigenvalue endpoints are printed as decimal strings that outward-round
//! the binary64 endpoints: shortest-round-trip digits padded to 17
//! significant places, with the last digit widened away from the interval.
//! Reparsing the strings therefore brackets the binary interval; failed
//! eigenvalues carry no endpoints at all.

use crate::hankel::{EigenEnclosure, EigenStatus};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub window: [f64; 2],
    pub m: usize,
    #[serde(rename = "L")]
    pub block_size: usize,
    #[serde(rename = "M")]
    pub moment_order: usize,
    #[serde(rename = "N")]
    pub quadrature_nodes: usize,
    pub delta: f64,
    pub solver_path: String,
    pub eigenvalues: Vec<ReportEigenvalue>,
    pub certificates: Certificates,
    pub timings_ms: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moments: Option<Vec<MomentDump>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ReportEigenvalue {
    pub index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inf: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sup: Option<String>,
    pub status: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Certificates {
    #[serde(rename = "lambda_min_B")]
    pub lambda_min_b: Option<f64>,
    pub lambda_hat_lower: Option<f64>,
}

/// Flag-gated moment diagnostics.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MomentDump {
    pub order: usize,
    pub center_re: Vec<f64>,
    pub center_im: Vec<f64>,
    pub radius: Vec<f64>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn all_verified(&self) -> bool {
        !self.eigenvalues.is_empty() && self.eigenvalues.iter().all(|e| e.status == "verified")
    }

    pub fn any_verified(&self) -> bool {
        self.eigenvalues.iter().any(|e| e.status == "verified")
    }
}

/// Expand per-cluster enclosures into the m per-eigenvalue report rows.
pub fn eigenvalue_rows(enclosures: &[EigenEnclosure]) -> Vec<ReportEigenvalue> {
    let mut rows = Vec::new();
    let mut index = 1usize;
    for e in enclosures {
        for _ in 0..e.cluster_size {
            match (e.status, e.interval) {
                (EigenStatus::Verified, Some(iv)) => rows.push(ReportEigenvalue {
                    index,
                    inf: Some(decimal_endpoint(iv.inf, false)),
                    sup: Some(decimal_endpoint(iv.sup, true)),
                    status: "verified".into(),
                }),
                _ => rows.push(ReportEigenvalue {
                    index,
                    inf: None,
                    sup: None,
                    status: "failed".into(),
                }),
            }
            index += 1;
        }
    }
    rows
}

/// Decimal string weakly below (up = false) or above (up = true) the given
/// binary64 value: 17 significant digits with the final digit moved outward.
pub fn decimal_endpoint(x: f64, up: bool) -> String {
    assert!(x.is_finite());
    if x == 0.0 {
        return "0".into();
    }
    let neg = x < 0.0;
    let s = format!("{:.16e}", x.abs());
    let (mant, exp) = s.split_once('e').expect("scientific format");
    let mut digits: Vec<u8> = mant
        .bytes()
        .filter(|&b| b != b'.')
        .map(|b| b - b'0')
        .collect();
    debug_assert_eq!(digits.len(), 17);
    let mut exp: i32 = exp.parse().expect("exponent");

    // widening direction in terms of magnitude
    let increase = up != neg;
    if increase {
        let mut k = digits.len();
        loop {
            if k == 0 {
                digits.insert(0, 1);
                digits.pop();
                exp += 1;
                break;
            }
            k -= 1;
            if digits[k] == 9 {
                digits[k] = 0;
            } else {
                digits[k] += 1;
                break;
            }
        }
    } else {
        let mut k = digits.len();
        loop {
            k -= 1;
            if digits[k] == 0 {
                digits[k] = 9;
            } else {
                digits[k] -= 1;
                break;
            }
        }
        if digits[0] == 0 {
            digits.remove(0);
            digits.push(0);
            exp -= 1;
        }
    }

    format_digits(neg, &digits, exp)
}

/// Render sign + digit vector + power-of-ten exponent, plain decimal for
/// moderate exponents and scientific otherwise. Trailing zeros are trimmed
/// (value-preserving).
fn format_digits(neg: bool, digits: &[u8], exp: i32) -> String {
    let mut digits = digits.to_vec();
    while digits.len() > 1 && *digits.last().unwrap() == 0 {
        digits.pop();
    }
    let body = if (0..=16).contains(&exp) {
        let e = exp as usize;
        let int_part: String = (0..=e)
            .map(|i| char::from(b'0' + digits.get(i).copied().unwrap_or(0)))
            .collect();
        let frac: String = digits
            .iter()
            .skip(e + 1)
            .map(|&d| char::from(b'0' + d))
            .collect();
        if frac.is_empty() {
            int_part
        } else {
            format!("{int_part}.{frac}")
        }
    } else if (-4..0).contains(&exp) {
        let zeros = "0".repeat((-exp - 1) as usize);
        let frac: String = digits.iter().map(|&d| char::from(b'0' + d)).collect();
        format!("0.{zeros}{frac}")
    } else {
        let first = char::from(b'0' + digits[0]);
        let rest: String = digits
            .iter()
            .skip(1)
            .map(|&d| char::from(b'0' + d))
            .collect();
        if rest.is_empty() {
            format!("{first}e{exp}")
        } else {
            format!("{first}.{rest}e{exp}")
        }
    };
    if neg { format!("-{body}") } else { body }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::RealInterval;

    #[test]
    fn endpoints_bracket_on_reparse() {
        let cases = [
            1.9908051,
            -1.9908052,
            0.5,
            2.0,
            1e-30,
            -3.25e17,
            123456.789,
            f64::MIN_POSITIVE,
        ];
        for &x in &cases {
            let lo: f64 = decimal_endpoint(x, false).parse().unwrap();
            let hi: f64 = decimal_endpoint(x, true).parse().unwrap();
            assert!(lo <= x && x <= hi, "{x}: [{lo}, {hi}]");
            // and tight: within a couple of decimal ulps
            assert!(hi - lo <= 4e-16 * x.abs().max(f64::MIN_POSITIVE), "{x}");
        }
        assert_eq!(decimal_endpoint(0.0, false), "0");
    }

    #[test]
    fn endpoint_strings_strictly_outward_as_decimals() {
        // exact rational comparison through a second parse at higher scale
        let x = 1.9908051f64;
        let lo = decimal_endpoint(x, false);
        let hi = decimal_endpoint(x, true);
        assert!(lo.starts_with("1.99080509999999"));
        assert!(hi.starts_with("1.99080510000000"));
    }

    #[test]
    fn pass_through_and_failed_rows() {
        let verified = EigenEnclosure {
            interval: Some(RealInterval::new(1.9908051, 1.9908052).unwrap()),
            cluster_size: 1,
            status: EigenStatus::Verified,
            approx: 1.99080515,
        };
        let failed = EigenEnclosure {
            interval: None,
            cluster_size: 1,
            status: EigenStatus::Failed,
            approx: 2.1,
        };
        let rows = eigenvalue_rows(&[verified, failed]);
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].status, "verified");
        assert!(rows[0].inf.as_deref().unwrap().starts_with("1.9908050"));
        assert_eq!(rows[1].status, "failed");
        assert!(rows[1].inf.is_none() && rows[1].sup.is_none());
    }

    #[test]
    fn cluster_rows_share_enclosure() {
        let cluster = EigenEnclosure {
            interval: Some(RealInterval::new(1.0, 1.1).unwrap()),
            cluster_size: 3,
            status: EigenStatus::Verified,
            approx: 1.05,
        };
        let rows = eigenvalue_rows(&[cluster]);
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].inf, rows[2].inf);
        assert_eq!(rows.iter().map(|r| r.index).collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    #[test]
    fn report_roundtrips_through_json() {
        let report = Report {
            window: [1.98, 2.02],
            m: 4,
            block_size: 2,
            moment_order: 2,
            quadrature_nodes: 32,
            delta: 1e-15,
            solver_path: "fast-pd".into(),
            eigenvalues: vec![ReportEigenvalue {
                index: 1,
                inf: Some("1.99".into()),
                sup: Some("2.0".into()),
                status: "verified".into(),
            }],
            certificates: Certificates {
                lambda_min_b: Some(0.99),
                lambda_hat_lower: Some(1.25),
            },
            timings_ms: BTreeMap::new(),
            warnings: Vec::new(),
            moments: None,
        };
        let json = report.to_json();
        assert!(json.contains("\"lambda_min_B\""));
        assert!(json.contains("\"L\": 2"));
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        assert!(report.all_verified());
    }
}
