//! The table engine.
//!
//! Only the b-side tables (`b b M'`, `M b b`, `b a b`) and the middle chart
//! `a M b` are evaluated directly. Every a-side chart is conjugated by zeta
//! into its b-side twin and the answer is mapped back. Each table produces the
//! set of semistable derived points; the curve sets follow from it because a
//! curve is semistable exactly when all its generators are.

mod middle;
mod phases;
pub mod sets;
mod tables;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact_angles::Phase;
use crate::quiver_core::{ExcObject, Kind, NCCurve};
use crate::stability::{zeta_inv_point, zeta_point, Family, StabilityPoint};

pub use middle::{find_transfer_index, MiddleCase};
pub use sets::{Card, CurveSet, DerivedSet, IntSet};

/// Default bound on `|j - start|` in index searches.
pub const SEARCH_CAP: i64 = 1_000_000;

/// Intermediate quantities of the row that fired, in the frame where the
/// table was evaluated.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<Phase>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<Phase>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<Phase>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<Phase>,
    #[serde(rename = "U", skip_serializing_if = "Option::is_none")]
    pub big_u: Option<Phase>,
    #[serde(rename = "V", skip_serializing_if = "Option::is_none")]
    pub big_v: Option<Phase>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<i64>,
    /// Row 4 of the `b b M'` table also asserts `q < phi(M) + 1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub footnote: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transfer_index: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub derived_ss: DerivedSet,
    pub c0_ss: CurveSet,
    pub c1_s: BTreeSet<NCCurve>,
    pub c1_ss: BTreeSet<NCCurve>,
    pub witnesses: Witnesses,
}

impl Classification {
    pub fn from_derived(derived_ss: DerivedSet, witnesses: Witnesses) -> Self {
        let mut c1_s = BTreeSet::new();
        let mut c1_ss = BTreeSet::new();
        for (curve, set) in [(NCCurve::A, &derived_ss.a), (NCCurve::B, &derived_ss.b)] {
            if !set.card().is_finite() {
                c1_s.insert(curve);
            }
            if set.is_all() {
                c1_ss.insert(curve);
            }
        }
        let c0_ss = derived_ss.genus0_curves();
        Classification { derived_ss, c0_ss, c1_s, c1_ss, witnesses }
    }

    /// Equality of the four sets, ignoring witnesses.
    pub fn same_sets(&self, o: &Classification) -> bool {
        self.derived_ss == o.derived_ss && self.c0_ss == o.c0_ss && self.c1_s == o.c1_s && self.c1_ss == o.c1_ss
    }

    pub fn zeta(&self) -> Classification {
        Classification::from_derived(self.derived_ss.zeta(), self.witnesses.clone())
    }

    pub fn zeta_inv(&self) -> Classification {
        Classification::from_derived(self.derived_ss.zeta_inv(), self.witnesses.clone())
    }

    pub fn to_json(&self) -> Value {
        let curves = |s: &BTreeSet<NCCurve>| s.iter().map(|c| c.to_string()).collect::<Vec<_>>();
        json!({
            "derived_ss": self.derived_ss.to_json(),
            "c0_ss": self.c0_ss.to_json(),
            "c1_s": curves(&self.c1_s),
            "c1_ss": curves(&self.c1_ss),
            "witnesses": self.witnesses,
            "cardinalities": {"c0": self.c0_ss.card(), "derived": self.derived_ss.card()},
            "c0_cardinality": self.c0_ss.card(),
        })
    }
}

/// Which rule produced the answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    Table(u8),
    Middle(MiddleCase),
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Table(r) => write!(f, "row {r}"),
            Rule::Middle(c) => write!(f, "case {c}"),
        }
    }
}

/// The chart in which the answer was read off, expressed in the caller's
/// frame, with the phases the rule pinned down beyond the chart's own.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub point: StabilityPoint,
    pub rule: Rule,
    pub extras: Vec<(Kind, Phase)>,
    pub trail: Vec<String>,
}

impl Resolution {
    pub fn to_json(&self) -> Value {
        json!({"chart": self.point.chart().to_string(), "rule": self.rule.to_string(), "trail": self.trail})
    }
}

/// Output of a single direct table or case evaluation.
#[derive(Debug)]
pub(crate) struct Outcome {
    pub derived: DerivedSet,
    pub rule: Rule,
    pub w: Witnesses,
    pub extras: Vec<(Kind, Phase)>,
}

pub(crate) fn pick_row(point: &StabilityPoint, guards: &[(u8, bool)]) -> Result<u8> {
    let fired: Vec<u8> = guards.iter().filter(|g| g.1).map(|g| g.0).collect();
    match fired.as_slice() {
        [r] => Ok(*r),
        [] => Err(Error::NoRowFired(point.chart().to_string())),
        many => Err(Error::MultipleRowsFired(format!("{} rows {many:?}", point.chart()))),
    }
}

/// Largest `j` with `pred(j)`, for a predicate that holds on a down-set of
/// the integers; doubling away from `start`, then bisection.
pub fn find_threshold(start: i64, what: &str, mut pred: impl FnMut(i64) -> Result<bool>) -> Result<i64> {
    let budget = |j: i64| {
        if (j - start).abs() > SEARCH_CAP {
            Err(Error::SearchBudgetExceeded { what: what.to_string(), cap: SEARCH_CAP })
        } else {
            Ok(())
        }
    };
    let (mut lo, mut hi);
    let mut step = 1i64;
    if pred(start)? {
        lo = start;
        loop {
            let j = start + step;
            budget(j)?;
            if pred(j)? {
                lo = j;
                step *= 2;
            } else {
                hi = j;
                break;
            }
        }
    } else {
        hi = start;
        loop {
            let j = start - step;
            budget(j)?;
            if pred(j)? {
                lo = j;
                break;
            }
            hi = j;
            step *= 2;
        }
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pred(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

fn resolve(p: &StabilityPoint, depth: u32) -> Result<(Outcome, Resolution)> {
    if depth > 6 {
        return Err(Error::NoRowFired(format!("transfer loop at {}", p.chart())));
    }
    let chart = p.chart();
    if chart.family.is_a_side() {
        let (out, res) = resolve(&zeta_point(p), depth + 1)?;
        let extras: Vec<(Kind, Phase)> = out.extras.iter().map(|(k, ph)| (k.zeta_inv(), ph.clone())).collect();
        let mut trail = vec![format!("{chart} -> zeta -> {}", chart.zeta())];
        trail.extend(res.trail);
        let res = Resolution {
            point: zeta_inv_point(&res.point),
            rule: res.rule,
            extras: res.extras.iter().map(|(k, ph)| (k.zeta_inv(), ph.clone())).collect(),
            trail,
        };
        let out = Outcome { derived: out.derived.zeta_inv(), rule: out.rule, w: out.w, extras };
        return Ok((out, res));
    }
    match chart.family {
        Family::BBMp | Family::MBB | Family::BAB => {
            let out = match chart.family {
                Family::BBMp => tables::bbmp(p)?,
                Family::MBB => tables::mbb(p)?,
                _ => tables::bab(p)?,
            };
            let res = Resolution {
                point: p.clone(),
                rule: out.rule,
                extras: out.extras.clone(),
                trail: vec![format!("{chart} {}", out.rule)],
            };
            Ok((out, res))
        }
        Family::AMB => match middle::amb(p)? {
            middle::Step::Direct(out) => {
                let res = Resolution {
                    point: p.clone(),
                    rule: out.rule,
                    extras: out.extras.clone(),
                    trail: vec![format!("{chart} {}", out.rule)],
                };
                Ok((out, res))
            }
            middle::Step::Transfer { case, target, extras, w } => {
                let (mut out, mut res) = resolve(&target, depth + 1)?;
                let mut trail = vec![format!("{chart} case {case} -> {}", target.chart())];
                trail.extend(res.trail);
                res.trail = trail;
                out.w.transfer_index = w.transfer_index.or(out.w.transfer_index);
                for e in extras {
                    if !res.extras.iter().any(|(k, _)| *k == e.0) {
                        res.extras.push(e);
                    }
                }
                out.extras = res.extras.clone();
                Ok((out, res))
            }
        },
        _ => unreachable!("a-side families are conjugated above"),
    }
}

/// Classification together with the chart and rule that produced it.
pub fn classify_full(p: &StabilityPoint) -> Result<(Classification, Resolution)> {
    let (out, res) = resolve(p, 0)?;
    Ok((Classification::from_derived(out.derived, out.w), res))
}

pub fn classify(p: &StabilityPoint) -> Result<Classification> {
    classify_full(p).map(|x| x.0)
}

/// Phase of `obj` if it is semistable at `p`.
pub fn semistable(p: &StabilityPoint, obj: ExcObject) -> Result<Option<Phase>> {
    let (c, res) = classify_full(p)?;
    semistable_with(&c, &res, obj)
}

/// As [`semistable`], reusing an existing classification.
pub fn semistable_with(c: &Classification, res: &Resolution, obj: ExcObject) -> Result<Option<Phase>> {
    if !c.derived_ss.contains(obj.kind) {
        return Ok(None);
    }
    let ph = phases::phase_of(c, res, obj.kind)?;
    Ok(Some(ph.add_int(obj.shift)))
}

/// `(N, u)` of the row-7 search of the `b b M'` / `M b b` tables (or their
/// a-side twins), read from the classification.
pub fn find_n_u(p: &StabilityPoint) -> Result<(i64, i64)> {
    let (c, res) = classify_full(p)?;
    match (res.rule, c.witnesses.n, c.witnesses.u) {
        (Rule::Table(7), Some(n), Some(u)) => Ok((n, u)),
        _ => Err(Error::Precondition(format!("{} is not in a row with an N/u window ({})", p.chart(), res.rule))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_search() {
        for x in [-5000, -3, 0, 1, 7, 123456] {
            for start in [-10, 0, 4] {
                assert_eq!(find_threshold(start, "t", |j| Ok(j <= x)).unwrap(), x);
            }
        }
        assert!(matches!(
            find_threshold(0, "t", |_| Ok(true)),
            Err(Error::SearchBudgetExceeded { .. })
        ));
    }
}
