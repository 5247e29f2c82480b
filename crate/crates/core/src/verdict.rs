use serde::{Deserialize, Serialize};

/// Three-way membership classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    Interior,
    ClosureBoundary,
    Outside,
}

impl Region {
    /// Stable integer code used by the CLI exit status and slice grids.
    pub fn code(self) -> i32 {
        match self {
            Region::Interior => 0,
            Region::ClosureBoundary => 1,
            Region::Outside => 2,
        }
    }

    pub fn from_margin(margin: f64, tol: f64) -> Region {
        if margin > tol {
            Region::Interior
        } else if margin < -tol {
            Region::Outside
        } else {
            Region::ClosureBoundary
        }
    }

    pub fn in_closure(self) -> bool {
        self != Region::Outside
    }
}

/// Result of a membership test.
///
/// `margin` is the signed slack of the binding inequality: positive inside,
/// negative outside. A margin within `±tol` is reported as
/// [`Region::ClosureBoundary`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub region: Region,
    pub shilov: Option<bool>,
    pub margin: f64,
    pub tol: f64,
}

impl MembershipVerdict {
    pub fn from_margin(margin: f64, tol: f64) -> Self {
        Self {
            region: Region::from_margin(margin, tol),
            shilov: None,
            margin,
            tol,
        }
    }

    pub fn is_interior(&self) -> bool {
        self.region == Region::Interior
    }

    pub fn in_closure(&self) -> bool {
        self.region.in_closure()
    }

    /// True when the margin is far enough from zero that float noise cannot
    /// flip the verdict: `|margin| > k·tol`.
    pub fn is_decisive(&self, k: f64) -> bool {
        self.margin.abs() > k * self.tol
    }

    pub(crate) fn with_shilov(mut self, flag: bool) -> Self {
        self.shilov = Some(flag && self.region == Region::ClosureBoundary);
        self
    }
}

/// Smallest of several slacks, so that the verdict is governed by the most
/// binding inequality.
pub(crate) fn min_slack(slacks: &[f64]) -> f64 {
    slacks.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Flags a strict disagreement between two equivalent criteria.
pub(crate) fn strictly_opposed(m1: f64, m2: f64, tol: f64) -> bool {
    (m1 > tol && m2 < -tol) || (m1 < -tol && m2 > tol)
}
