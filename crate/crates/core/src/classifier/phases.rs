//! Phases of semistable objects.
//!
//! A nonzero `hom^d(E, X)` between semistable objects forces
//! `phi(E) <= phi(X) + d`, so the phases already known (the resolved chart
//! and whatever the rule pinned down) bracket the phase of every other
//! semistable object. The charge then picks the representative, since two
//! candidates differ by 2.

use crate::error::{Error, Result};
use crate::exact_angles::{arg_in_window, Closure, Phase};
use crate::quiver_core::{base_degree, Kind};
use crate::stability::StabilityPoint;

use super::{Classification, Resolution};

/// Widest index window searched for intermediate anchors.
const POOL_SPAN: i64 = 400;

enum Bracket {
    Unique(Phase),
    Ambiguous,
}

fn bracket(pt: &StabilityPoint, known: &[(Kind, Phase)], k: Kind) -> Result<Bracket> {
    let mut lower: Option<Phase> = None;
    let mut upper: Option<Phase> = None;
    for (e, ph) in known {
        if let Some(d) = base_degree(*e, k) {
            let b = ph.add_int(-d);
            if lower.as_ref().is_none_or(|l| b > *l) {
                lower = Some(b);
            }
        }
        if let Some(d) = base_degree(k, *e) {
            let b = ph.add_int(d);
            if upper.as_ref().is_none_or(|u| b < *u) {
                upper = Some(b);
            }
        }
    }
    let (Some(lo), Some(hi)) = (lower, upper) else {
        return Ok(Bracket::Ambiguous);
    };
    let z = pt.charge_kind(k);
    let first = arg_in_window(&z, &lo, Closure::ClosedOpen).or_else(|_| arg_in_window(&z, &lo.add_int(1), Closure::ClosedOpen))?;
    if first > hi {
        return Err(Error::PhaseUndetermined(format!("{k}: empty bracket [{lo}, {hi}]")));
    }
    if first.add_int(2) <= hi {
        return Ok(Bracket::Ambiguous);
    }
    Ok(Bracket::Unique(first))
}

fn index(k: Kind) -> Option<i64> {
    match k {
        Kind::A(j) | Kind::B(j) => Some(j),
        _ => None,
    }
}

pub(crate) fn phase_of(c: &Classification, res: &Resolution, kind: Kind) -> Result<Phase> {
    let pt = &res.point;
    let mut known: Vec<(Kind, Phase)> = pt.chart().objects().into_iter().zip(pt.phases().iter().cloned()).collect();
    for (k, ph) in &res.extras {
        if !known.iter().any(|(e, _)| e == k) {
            known.push((*k, ph.clone()));
        }
    }
    if let Some((_, ph)) = known.iter().find(|(e, _)| *e == kind) {
        return Ok(ph.clone());
    }
    let centre = pt.chart().index;
    let target = index(kind).unwrap_or(centre);
    let lo = centre.min(target) - 3;
    let hi = centre.max(target) + 3;
    let mut pool = vec![kind, Kind::M, Kind::Mp];
    let span: Vec<i64> = if hi - lo <= POOL_SPAN {
        (lo..=hi).collect()
    } else {
        (centre - 3..=centre + 3).chain(target - 3..=target + 3).collect()
    };
    for j in span {
        pool.push(Kind::A(j));
        pool.push(Kind::B(j));
    }
    pool.retain(|k| c.derived_ss.contains(*k) && !known.iter().any(|(e, _)| e == k));
    pool.dedup();
    loop {
        let mut progress = false;
        let mut i = 0;
        while i < pool.len() {
            match bracket(pt, &known, pool[i])? {
                Bracket::Unique(ph) => {
                    let k = pool.remove(i);
                    if k == kind {
                        return Ok(ph);
                    }
                    known.push((k, ph));
                    progress = true;
                }
                Bracket::Ambiguous => i += 1,
            }
        }
        if !progress {
            return Err(Error::PhaseUndetermined(kind.to_string()));
        }
    }
}
