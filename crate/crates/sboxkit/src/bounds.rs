//! Theoretical bounds catalogue for every metric, plus the verdict policy
//! grading a computed value inside its [LB, UB] range.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Which end of the range the designer wants to be near.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "target")]
pub enum IdealDirection {
    TowardLb,
    TowardUb,
    Exact(f64),
}

/// One catalogue row instantiated for concrete (n, m).
#[derive(Debug, Clone, Serialize)]
pub struct BoundsEntry {
    pub property: String,
    pub lb: f64,
    pub ub: f64,
    pub lb_exclusive: bool,
    pub ub_exclusive: bool,
    pub ideal: IdealDirection,
    /// Tighter lower bound that applies only to balanced boxes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub balanced_lb: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Ideal,
    Acceptable,
    Poor,
    OutOfBounds,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Ideal => "ideal",
            Verdict::Acceptable => "acceptable",
            Verdict::Poor => "poor",
            Verdict::OutOfBounds => "out_of_bounds",
        };
        f.write_str(s)
    }
}

/// Band widths for the qualitative verdicts. The 25% split is a tooling
/// policy, not a published threshold; outputs label it as such.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct VerdictPolicy {
    pub ideal_fraction: f64,
}

impl Default for VerdictPolicy {
    fn default() -> VerdictPolicy {
        VerdictPolicy {
            ideal_fraction: 0.25,
        }
    }
}

/// All property ids with a catalogue row, in presentation order.
pub const BOUNDED_PROPERTIES: [&str; 22] = [
    "op", "fp", "ofp", "bic", "sac", "ai", "ssi", "lat", "lap", "nl", "lbn", "ls", "ci", "du",
    "dbn", "pc", "udb", "bu", "dlu", "ad", "dpa_snr", "to",
];

/// Instantiates the catalogue row for a property at dimensions (n, m).
pub fn bounds_for(property: &str, n: u32, m: u32) -> Result<BoundsEntry> {
    let size = (1u64 << n) as f64;
    let entry = |lb: f64, ub: f64, ideal: IdealDirection| BoundsEntry {
        property: property.to_string(),
        lb,
        ub,
        lb_exclusive: false,
        ub_exclusive: false,
        ideal,
        balanced_lb: None,
        note: None,
    };
    let e = match property {
        "op" => entry(1.0, size, IdealDirection::TowardLb),
        "fp" | "ofp" => entry(0.0, size, IdealDirection::TowardLb),
        "bic" => entry(0.0, 1.0, IdealDirection::Exact(0.0)),
        "sac" => entry(0.0, 1.0, IdealDirection::Exact(0.5)),
        "ai" => entry(
            (size * size / (size - 1.0)).sqrt(),
            size,
            IdealDirection::TowardLb,
        ),
        "ssi" => entry(
            (size * size) as f64,
            2f64.powi((3 * n + m) as i32),
            IdealDirection::TowardLb,
        ),
        "lat" => entry(0.0, size / 2.0, IdealDirection::TowardLb),
        "lap" => entry(0.0, 0.5, IdealDirection::TowardLb),
        "nl" => {
            let ub = if n % 2 == 0 {
                size / 2.0 - 2f64.powi(n as i32 / 2 - 1)
            } else {
                size / 2.0 - 2f64.powi((n as i32 - 1) / 2)
            };
            let mut e = entry(0.0, ub, IdealDirection::TowardUb);
            e.ub_exclusive = true;
            if n == 4 && m == 4 {
                e.note = Some("attainable maximum for bijective 4-bit boxes is 4".to_string());
            }
            e
        }
        "lbn" => entry(2.0, (n - 1) as f64, IdealDirection::TowardUb),
        "ls" => entry(0.0, 2f64.powi((n + m) as i32), IdealDirection::TowardLb),
        "ci" => entry(0.0, n as f64, IdealDirection::TowardLb),
        "du" => entry(2.0, size, IdealDirection::TowardLb),
        "dbn" => entry(2.0, ((2 * n + 2) / 3) as f64, IdealDirection::TowardUb),
        "pc" => entry(0.0, n as f64, IdealDirection::TowardUb),
        "udb" => {
            let mut e = entry(0.0, 0.0, IdealDirection::Exact(0.0));
            e.note = Some("aspirational bound; nonzero counts are flagged, not rejected".to_string());
            e
        }
        "bu" => entry(2.0, size, IdealDirection::TowardLb),
        "dlu" => {
            let mut e = entry(
                2f64.powf(n as f64 / 2.0 - 1.0),
                size / 2.0,
                IdealDirection::TowardLb,
            );
            e.lb_exclusive = true;
            e
        }
        "ad" => entry(1.0, (n - 1) as f64, IdealDirection::TowardUb),
        "dpa_snr" => {
            let mut e = entry(0.0, 2f64.powf(n as f64 / 2.0), IdealDirection::TowardLb);
            e.balanced_lb = Some(1.0);
            e.note = Some("lower bound 1 applies to balanced boxes".to_string());
            e
        }
        "to" => entry(0.0, m as f64, IdealDirection::TowardLb),
        _ => return Err(Error::UnknownProperty(property.to_string())),
    };
    debug_assert!(e.lb <= e.ub);
    Ok(e)
}

impl BoundsEntry {
    /// The range the report prints: the balanced-box lower bound when the
    /// box is balanced and one exists, the general range otherwise.
    pub fn effective_lb(&self, balanced: bool) -> f64 {
        match self.balanced_lb {
            Some(lb) if balanced => lb,
            _ => self.lb,
        }
    }
}

/// Grades a value against a catalogue row under the given band policy.
pub fn verdict_with(value: f64, entry: &BoundsEntry, policy: VerdictPolicy) -> Verdict {
    let below = if entry.lb_exclusive {
        value <= entry.lb
    } else {
        value < entry.lb
    };
    let above = if entry.ub_exclusive {
        value >= entry.ub
    } else {
        value > entry.ub
    };
    if below || above {
        return Verdict::OutOfBounds;
    }
    let span = entry.ub - entry.lb;
    if span == 0.0 {
        return Verdict::Ideal;
    }
    let position = (value - entry.lb) / span;
    let distance = match entry.ideal {
        IdealDirection::TowardLb => position,
        IdealDirection::TowardUb => 1.0 - position,
        IdealDirection::Exact(target) => {
            let reach = (entry.ub - target).max(target - entry.lb);
            (value - target).abs() / reach
        }
    };
    if distance <= policy.ideal_fraction {
        Verdict::Ideal
    } else if distance >= 1.0 - policy.ideal_fraction {
        Verdict::Poor
    } else {
        Verdict::Acceptable
    }
}

pub fn verdict(value: f64, entry: &BoundsEntry) -> Verdict {
    verdict_with(value, entry, VerdictPolicy::default())
}

/// The whole catalogue instantiated at (n, m), for the JSON dump.
pub fn catalogue(n: u32, m: u32) -> Result<Vec<BoundsEntry>> {
    BOUNDED_PROPERTIES
        .iter()
        .map(|p| bounds_for(p, n, m))
        .collect()
}
