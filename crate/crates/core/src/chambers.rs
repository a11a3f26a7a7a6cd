//! Walls and chambers for the stable genus 1 curves.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::classifier::{classify_full, Classification, MiddleCase, Resolution, Rule};
use crate::error::{Error, Result};
use crate::exact_angles::{phase_from_charge, rat, GaussianRational, Phase};
use crate::quiver_core::NCCurve;
use crate::stability::{make_point, Family, StabilityPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChamberLocation {
    ChAInterior,
    ChBInterior,
    /// Chamber with no stable genus 1 curve. The index is the one of the
    /// chart the point was resolved in, so it is only meaningful per chart.
    O(i64),
    WaaM(i64),
    WMpAa(i64),
    WbbMp(i64),
    WMbb(i64),
    W0AB,
    GaMb(i64),
    GbMpa(i64),
}

impl ChamberLocation {
    /// Stable genus 1 curves on this stratum.
    pub fn signature(self) -> BTreeSet<NCCurve> {
        use ChamberLocation::*;
        match self {
            ChAInterior | WaaM(_) | WMpAa(_) => [NCCurve::A].into(),
            ChBInterior | WbbMp(_) | WMbb(_) => [NCCurve::B].into(),
            W0AB | GaMb(_) | GbMpa(_) => [NCCurve::A, NCCurve::B].into(),
            O(_) => BTreeSet::new(),
        }
    }

    pub fn is_wall(self) -> bool {
        !matches!(self, ChamberLocation::ChAInterior | ChamberLocation::ChBInterior | ChamberLocation::O(_))
    }
}

impl fmt::Display for ChamberLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ChamberLocation::*;
        match self {
            ChAInterior => write!(f, "ChA_interior"),
            ChBInterior => write!(f, "ChB_interior"),
            O(m) => write!(f, "O({m})"),
            WaaM(m) => write!(f, "W_aaM({m})"),
            WMpAa(m) => write!(f, "W_MpAa({m})"),
            WbbMp(m) => write!(f, "W_bbMp({m})"),
            WMbb(m) => write!(f, "W_Mbb({m})"),
            W0AB => write!(f, "W0_AB"),
            GaMb(m) => write!(f, "G_aMb({m})"),
            GbMpa(m) => write!(f, "G_bMpa({m})"),
        }
    }
}

impl Serialize for ChamberLocation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn locate(p: &StabilityPoint) -> Result<ChamberLocation> {
    let (c, res) = classify_full(p)?;
    Ok(locate_with(&c, &res))
}

/// Location read off an existing classification. Codimension 2 strata take
/// precedence over walls, and walls over chamber interiors.
pub fn locate_with(c: &Classification, res: &Resolution) -> ChamberLocation {
    use ChamberLocation::*;
    let pt = &res.point;
    let k = pt.chart().index;
    let ph = pt.phases();
    let family = pt.chart().family;
    match res.rule {
        Rule::Middle(MiddleCase::F) if family == Family::BMpA => return GbMpa(k),
        Rule::Middle(MiddleCase::F) => return GaMb(k),
        Rule::Middle(MiddleCase::A23) => return W0AB,
        Rule::Middle(MiddleCase::C | MiddleCase::D) => return O(k),
        _ => {}
    }
    match family {
        Family::AAM if ph[1] == ph[0].add_int(1) => return WaaM(k),
        Family::BBMp if ph[1] == ph[0].add_int(1) => return WbbMp(k),
        Family::MpAA if ph[2] == ph[1].add_int(1) => return WMpAa(k),
        Family::MBB if ph[2] == ph[1].add_int(1) => return WMbb(k),
        Family::ABA | Family::BAB => return O(k),
        _ => {}
    }
    let a = c.c1_ss.contains(&NCCurve::A);
    let b = c.c1_ss.contains(&NCCurve::B);
    match (a, b) {
        (true, false) => ChAInterior,
        (false, true) => ChBInterior,
        (false, false) => O(k),
        (true, true) => W0AB,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WalkEntry {
    pub step: u32,
    pub location: String,
    pub transition: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// The representative of `z` within distance 1 of `prev`, if any.
fn continue_phase(z: &GaussianRational, prev: &Phase) -> Option<Phase> {
    let (lo, hi) = (prev.add_int(-1), prev.add_int(1));
    (prev.sheet() - 1..=prev.sheet() + 1)
        .filter_map(|s| phase_from_charge(z, s).ok())
        .find(|ph| *ph > lo && *ph < hi)
}

/// Samples the straight segment between two points of one chart. Sheets
/// follow the phases continuously from the start point.
pub fn walk(start: &StabilityPoint, end: &StabilityPoint, steps: u32) -> Result<Vec<WalkEntry>> {
    if start.chart() != end.chart() {
        return Err(Error::Invalid(format!("walk endpoints lie in different charts {} and {}", start.chart(), end.chart())));
    }
    if steps == 0 {
        return Err(Error::Invalid("steps must be positive".into()));
    }
    let mut out: Vec<WalkEntry> = Vec::new();
    let mut prev_phases: Option<[Phase; 3]> = Some(start.phases().clone());
    let mut prev_loc: Option<(String, bool)> = None;
    for k in 0..=steps {
        let f = rat(k as i64, steps as i64);
        let charges: Vec<GaussianRational> =
            start.charges().iter().zip(end.charges()).map(|(s, e)| s + &(e - s).scale(&f)).collect();
        let mut note = None;
        let point = match &prev_phases {
            None => None,
            Some(prev) => {
                let phases: Option<Vec<Phase>> = charges.iter().zip(prev).map(|(z, p)| continue_phase(z, p)).collect();
                phases.and_then(|ph| {
                    let sheets = [ph[0].sheet(), ph[1].sheet(), ph[2].sheet()];
                    make_point(start.chart(), charges.clone().try_into().expect("three charges"), sheets).ok()
                })
            }
        };
        let (loc, wall) = match &point {
            Some(pt) => {
                let l = crate::chambers::locate(pt)?;
                (l.to_string(), l.is_wall())
            }
            None => ("left_chart".to_string(), false),
        };
        let transition = prev_loc.as_ref().is_some_and(|(l, _)| *l != loc);
        if transition && point.is_some() {
            let prev_wall = prev_loc.as_ref().is_some_and(|x| x.1);
            note = Some(if wall {
                format!("lands on {loc}")
            } else if prev_wall {
                format!("leaves {}", prev_loc.as_ref().map(|x| x.0.as_str()).unwrap_or_default())
            } else {
                format!("wall crossed between steps {} and {k}", k - 1)
            });
        }
        if k == steps {
            if let Some(pt) = &point {
                if pt.sheets() != end.sheets() {
                    note = Some(format!("path reaches the end charges on sheets {:?}", pt.sheets()));
                }
            }
        }
        prev_phases = point.as_ref().map(|p| p.phases().clone());
        prev_loc = Some((loc.clone(), wall));
        out.push(WalkEntry { step: k, location: loc, transition, note });
    }
    Ok(out)
}

/// Valid points obtained by moving one charge by `±1/q` along an axis.
pub fn perturbations(p: &StabilityPoint, q: i64) -> Vec<StabilityPoint> {
    let eps = rat(1, q);
    let mut out = Vec::new();
    for i in 0..3 {
        for (dre, dim) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            let d = GaussianRational::new(eps.clone() * rat(dre, 1), eps.clone() * rat(dim, 1));
            let mut cs = p.charges().clone();
            cs[i] = &cs[i] + &d;
            let mut sheets = p.sheets();
            if let Some(ph) = continue_phase(&cs[i], p.phase(i)) {
                sheets[i] = ph.sheet();
                if let Ok(np) = make_point(p.chart(), cs, sheets) {
                    out.push(np);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stability::ChartId;

    fn pt(f: Family, m: i64, c: [&str; 3], s: [i64; 3]) -> StabilityPoint {
        make_point(ChartId::new(f, m), c.map(|x| GaussianRational::parse(x).unwrap()), s).unwrap()
    }

    #[test]
    fn locate_examples() {
        let row7 = pt(Family::BBMp, 0, ["-1+i", "-2+i", "-4+i"], [0, 0, 0]);
        assert_eq!(locate(&row7).unwrap(), ChamberLocation::ChBInterior);
        let f = pt(Family::AMB, 0, ["i", "2i", "-3i"], [0, 0, 1]);
        assert_eq!(locate(&f).unwrap(), ChamberLocation::GaMb(0));
        let w0 = pt(Family::AMB, 0, ["-1+2i", "i", "-1+i"], [0, 0, 0]);
        assert_eq!(locate(&w0).unwrap(), ChamberLocation::W0AB);
        let wall = pt(Family::BBMp, 0, ["1+i", "-1-i", "1-2i"], [0, 1, 1]);
        assert_eq!(locate(&wall).unwrap(), ChamberLocation::WbbMp(0));
        assert_eq!(locate(&wall).unwrap().to_string(), "W_bbMp(0)");
    }

    #[test]
    fn constant_walk() {
        let p = pt(Family::BBMp, 0, ["-1+i", "-2+i", "-4+i"], [0, 0, 0]);
        let w = walk(&p, &p, 4).unwrap();
        assert_eq!(w.len(), 5);
        assert!(w.iter().all(|e| !e.transition && e.location == "ChB_interior"));
    }

    #[test]
    fn walk_onto_wall() {
        let a = pt(Family::BBMp, 0, ["1+i", "-1-3i", "-1-5i"], [0, 1, 1]);
        let b = pt(Family::BBMp, 0, ["1+i", "-1-i", "-1-5i"], [0, 1, 1]);
        let w = walk(&a, &b, 4).unwrap();
        assert_eq!(w.last().unwrap().location, "W_bbMp(0)");
        assert!(w.iter().any(|e| e.transition));
    }

    #[test]
    fn walk_into_g_stratum() {
        let c = pt(Family::AMB, 0, ["1+i", "i", "1-i"], [0, 0, 1]);
        let f = pt(Family::AMB, 0, ["i", "2i", "-3i"], [0, 0, 1]);
        let w = walk(&c, &f, 3).unwrap();
        assert_eq!(w.first().unwrap().location, "O(0)");
        assert_eq!(w.last().unwrap().location, "G_aMb(0)");
    }
}
