//! The middle chart `(a^p, M, b^{p+1})`.
//!
//! Most cases move the point into a side chart and let the tables answer;
//! the remaining ones are answered here.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact_angles::{arg_in_window, Closure, Phase};
use crate::quiver_core::{Kind, DELTA};
use crate::stability::{make_point_with_phases, reexpress, ChartId, Family, StabilityPoint};

use super::sets::DerivedSet;
use super::{find_threshold, Outcome, Rule, Witnesses};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MiddleCase {
    A1,
    A21,
    A22,
    A23,
    B,
    C,
    D,
    E,
    F,
}

impl fmt::Display for MiddleCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MiddleCase::A1 => "a.1",
            MiddleCase::A21 => "a.2.1",
            MiddleCase::A22 => "a.2.2",
            MiddleCase::A23 => "a.2.3",
            MiddleCase::B => "b",
            MiddleCase::C => "c",
            MiddleCase::D => "d",
            MiddleCase::E => "e",
            MiddleCase::F => "f",
        };
        f.write_str(s)
    }
}

pub(crate) enum Step {
    Direct(Outcome),
    Transfer { case: MiddleCase, target: StabilityPoint, extras: Vec<(Kind, Phase)>, w: Witnesses },
}

struct Analysis {
    case: MiddleCase,
    /// `phi(M')` whenever the case determines it.
    phi_mp: Option<Phase>,
}

fn analyse(pt: &StabilityPoint) -> Result<Analysis> {
    let [fa, fm, fb] = pt.phases().clone();
    let p = pt.chart().index;
    let m1 = fm.add_int(1);
    let mp_phase = |lower: &Phase| arg_in_window(&(pt.charge_kind(Kind::A(p)) - pt.charge_kind(Kind::B(p + 1))), lower, Closure::OpenOpen);
    let guards = [
        (MiddleCase::A1, fb < m1 && fa < fm),
        // a.2, split further below once phi(M') is known
        (MiddleCase::A21, fb < m1 && fa >= fm),
        (MiddleCase::B, m1 < fb && fm < fa),
        (MiddleCase::C, m1 < fb && fa <= fm),
        (MiddleCase::D, m1 == fb && fa < fm),
        (MiddleCase::E, m1 == fb && fa > fm),
        (MiddleCase::F, m1 == fb && fa == fm),
    ];
    let fired: Vec<MiddleCase> = guards.iter().filter(|g| g.1).map(|g| g.0).collect();
    let case = match fired.as_slice() {
        [c] => *c,
        [] => return Err(Error::NoRowFired(format!("{} middle cases", pt.chart()))),
        many => return Err(Error::MultipleRowsFired(format!("{} cases {many:?}", pt.chart()))),
    };
    Ok(match case {
        MiddleCase::A21 => {
            let phi_mp = mp_phase(&fb.add_int(-1))?;
            let case = match phi_mp.cmp(&fm) {
                std::cmp::Ordering::Less => MiddleCase::A21,
                std::cmp::Ordering::Greater => MiddleCase::A22,
                std::cmp::Ordering::Equal => MiddleCase::A23,
            };
            Analysis { case, phi_mp: Some(phi_mp) }
        }
        MiddleCase::E => Analysis { case, phi_mp: Some(mp_phase(&fa.add_int(-1))?) },
        MiddleCase::F => Analysis { case, phi_mp: Some(fm.clone()) },
        _ => Analysis { case, phi_mp: None },
    })
}

/// Target chart of a far transfer at index `j`, with candidate phases read in
/// `(t, t+1)` where `t` is the phase of `Z(delta)` between `phi(M)` and `phi(M')`.
fn far_candidate(pt: &StabilityPoint, family: Family, j: i64, t: &Phase, phi_mp: &Phase) -> Result<Option<StabilityPoint>> {
    let chart = ChartId::new(family, j);
    let objs = chart.objects();
    let fixed = match family {
        Family::AAM => pt.phase(1).clone(),
        _ => phi_mp.clone(),
    };
    let mut ph = Vec::with_capacity(3);
    for k in &objs[..2] {
        match arg_in_window(&pt.charge_kind(*k), t, Closure::OpenOpen) {
            Ok(x) => ph.push(x),
            Err(Error::OutsideWindow { .. }) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    ph.push(fixed);
    let phases: [Phase; 3] = ph.try_into().expect("three phases");
    match make_point_with_phases(chart, objs.map(|k| pt.charge_kind(k)), &phases) {
        Ok(q) => Ok(Some(q)),
        Err(Error::ChartViolation(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn far_transfer(pt: &StabilityPoint, family: Family, phi_mp: &Phase) -> Result<(i64, StabilityPoint)> {
    let fm = pt.phase(1);
    let lo = if fm < phi_mp { fm } else { phi_mp };
    let hi = if fm < phi_mp { phi_mp } else { fm };
    let t = arg_in_window(&pt.central_charge().of_class(DELTA), lo, Closure::OpenOpen)?;
    if t >= *hi {
        return Err(Error::Precondition(format!("phase of Z(delta) not between phi(M) and phi(M') at {}", pt.chart())));
    }
    let j = find_threshold(pt.chart().index, "transfer index", |j| Ok(far_candidate(pt, family, j, &t, phi_mp)?.is_some()))?;
    let q = far_candidate(pt, family, j, &t, phi_mp)?.expect("threshold search returns a valid index");
    Ok((j, q))
}

fn transfer(pt: &StabilityPoint, an: &Analysis) -> Result<Option<(i64, StabilityPoint)>> {
    let p = pt.chart().index;
    let [fa, fm, fb] = pt.phases().clone();
    Ok(Some(match an.case {
        MiddleCase::A1 => {
            let phi = arg_in_window(&(pt.charge_kind(Kind::B(p + 1)) - pt.charge_kind(Kind::M)), &fb, Closure::OpenClosed)?;
            (p, reexpress(pt, ChartId::new(Family::AAM, p), &[fa, phi, fm])?)
        }
        MiddleCase::B => {
            let phi = arg_in_window(&(pt.charge_kind(Kind::M) + pt.charge_kind(Kind::A(p))), &fm, Closure::OpenClosed)?;
            (p, reexpress(pt, ChartId::new(Family::MBB, p), &[fm, phi, fb])?)
        }
        MiddleCase::A21 => far_transfer(pt, Family::AAM, an.phi_mp.as_ref().expect("a.2 has phi(M')"))?,
        MiddleCase::A22 | MiddleCase::E => far_transfer(pt, Family::BBMp, an.phi_mp.as_ref().expect("phi(M') known"))?,
        _ => return Ok(None),
    }))
}

/// Index of a side chart of the given family that contains the point, for
/// the cases whose answer is read from a side table.
pub fn find_transfer_index(pt: &StabilityPoint, target: Family) -> Result<i64> {
    if pt.chart().family != Family::AMB {
        return Err(Error::Precondition(format!("{} is not a middle chart with M", pt.chart())));
    }
    let an = analyse(pt)?;
    match transfer(pt, &an)? {
        Some((j, q)) if q.chart().family == target => Ok(j),
        _ => Err(Error::Precondition(format!("case {} does not transfer into {target}", an.case))),
    }
}

pub(crate) fn amb(pt: &StabilityPoint) -> Result<Step> {
    let p = pt.chart().index;
    let an = analyse(pt)?;
    let [fa, fm, fb] = pt.phases().clone();
    let mut extras = vec![(Kind::A(p), fa.clone()), (Kind::M, fm.clone()), (Kind::B(p + 1), fb.clone())];
    if let Some(x) = &an.phi_mp {
        extras.push((Kind::Mp, x.clone()));
    }
    if let Some((j, target)) = transfer(pt, &an)? {
        let w = Witnesses { transfer_index: Some(j), ..Default::default() };
        return Ok(Step::Transfer { case: an.case, target, extras, w });
    }
    let derived = match an.case {
        MiddleCase::A23 | MiddleCase::F => DerivedSet::everything(),
        MiddleCase::C => {
            let mut d = DerivedSet::of(&[Kind::M, Kind::A(p), Kind::B(p + 1)]);
            if fa == fm {
                d.insert(Kind::B(p));
            }
            d
        }
        MiddleCase::D => DerivedSet::of(&[Kind::M, Kind::A(p), Kind::A(p + 1), Kind::B(p + 1)]),
        c => unreachable!("case {c} transfers"),
    };
    Ok(Step::Direct(Outcome { derived, rule: Rule::Middle(an.case), w: Witnesses::default(), extras }))
}
