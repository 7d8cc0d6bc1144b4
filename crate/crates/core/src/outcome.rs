//! Outcome of evaluating one predicate: a dimensionless residual or a reason it does not apply.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NaKind {
    /// The sample lies outside the predicate's stated validity domain.
    OutOfDomain,
    /// A point or circle the predicate needs does not exist or is ill-conditioned here.
    Unconstructible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NaReason {
    pub kind: NaKind,
    pub detail: &'static str,
}

impl NaReason {
    pub const fn domain(detail: &'static str) -> NaReason {
        NaReason {
            kind: NaKind::OutOfDomain,
            detail,
        }
    }

    pub const fn unconstructible(detail: &'static str) -> NaReason {
        NaReason {
            kind: NaKind::Unconstructible,
            detail,
        }
    }
}

pub type Outcome = Result<f64, NaReason>;

/// Combine per-side outcomes: the worst residual wins; NA only if every part is NA.
pub fn worst(parts: impl IntoIterator<Item = Outcome>) -> Outcome {
    let mut best: Option<f64> = None;
    let mut na = None;
    for p in parts {
        match p {
            Ok(r) => best = Some(best.map_or(r, |b: f64| if r.is_nan() || r > b { r } else { b })),
            Err(e) => na = na.or(Some(e)),
        }
    }
    match (best, na) {
        (Some(r), _) => Ok(r),
        (None, Some(e)) => Err(e),
        (None, None) => Err(NaReason::domain("no parts")),
    }
}

/// Every part must apply; the first NA short-circuits.
pub fn all_of(parts: impl IntoIterator<Item = Outcome>) -> Outcome {
    let mut r = 0.0f64;
    for p in parts {
        let v = p?;
        r = if v.is_nan() || v > r { v } else { r };
    }
    Ok(r)
}

/// `|lhs − rhs|` normalized by the largest magnitude among both sides and `terms`.
pub fn rel(lhs: f64, rhs: f64, terms: &[f64]) -> f64 {
    let scale = terms
        .iter()
        .fold(lhs.abs().max(rhs.abs()), |m, t| m.max(t.abs()));
    if scale == 0.0 {
        return 0.0;
    }
    (lhs - rhs).abs() / scale
}
