//! Closed-form lag-length rules of thumb.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LagRule {
    /// ⌊4 (T/100)^(1/4)⌋
    Schwert4,
    /// ⌊12 (T/100)^(1/4)⌋
    Schwert12,
    /// ⌊4 (T/100)^(2/9)⌋
    NeweyWest,
    /// ⌊3 √T / 13⌋, the short KPSS default.
    KpssShort,
}

impl LagRule {
    pub const ALL: [LagRule; 4] = [
        LagRule::Schwert4,
        LagRule::Schwert12,
        LagRule::NeweyWest,
        LagRule::KpssShort,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LagRule::Schwert4 => "schwert4",
            LagRule::Schwert12 => "schwert12",
            LagRule::NeweyWest => "newey_west",
            LagRule::KpssShort => "kpss_short",
        }
    }

    pub fn lag(self, t: usize) -> usize {
        match self {
            LagRule::Schwert4 => schwert4(t),
            LagRule::Schwert12 => schwert12(t),
            LagRule::NeweyWest => newey_west(t),
            LagRule::KpssShort => kpss_short(t),
        }
    }
}

impl std::str::FromStr for LagRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LagRule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown lag rule `{s}`")))
    }
}

/// Floor that snaps values within 1e-9 of an integer onto it first.
fn snapped_floor(x: f64) -> usize {
    let nearest = x.round();
    let v = if (x - nearest).abs() < 1e-9 {
        nearest
    } else {
        x.floor()
    };
    v.max(0.0) as usize
}

pub fn schwert4(t: usize) -> usize {
    snapped_floor(4.0 * (t as f64 / 100.0).powf(0.25))
}

pub fn schwert12(t: usize) -> usize {
    snapped_floor(12.0 * (t as f64 / 100.0).powf(0.25))
}

pub fn newey_west(t: usize) -> usize {
    snapped_floor(4.0 * (t as f64 / 100.0).powf(2.0 / 9.0))
}

pub fn kpss_short(t: usize) -> usize {
    snapped_floor(3.0 * (t as f64).sqrt() / 13.0)
}
