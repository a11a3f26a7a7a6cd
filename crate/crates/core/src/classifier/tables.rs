//! Direct evaluation of the b-side tables.

use crate::error::Result;
use crate::exact_angles::{arg_in_window, Closure, Phase};
use crate::quiver_core::Kind;
use crate::stability::{chart_t, StabilityPoint};

use super::sets::{DerivedSet, IntSet};
use super::{find_threshold, pick_row, Outcome, Rule, Witnesses};

fn all_b(extra: &[Kind]) -> DerivedSet {
    let mut d = DerivedSet::of(extra);
    d.b = IntSet::all();
    d
}

/// `phi(b^j)` taken in `(t, t+1)`, where all b-phases live once
/// `phi(b^{p+1}) < phi(b^p) + 1`.
fn phi_b(p: &StabilityPoint, t: &Phase, j: i64) -> Result<Phase> {
    arg_in_window(&p.charge_kind(Kind::B(j)), t, Closure::OpenOpen)
}

/// `N = max{j : phi(b^j) < lower}` and `u = max{j : phi(b^j) <= upper}`.
fn window_n_u(p: &StabilityPoint, t: &Phase, lower: &Phase, upper: &Phase) -> Result<(i64, i64)> {
    let start = p.chart().index;
    let n = find_threshold(start, "N", |j| Ok(phi_b(p, t, j)? < *lower))?;
    let u = find_threshold(start, "u", |j| Ok(phi_b(p, t, j)? <= *upper))?;
    Ok((n, u))
}

/// Chart `(b^p, b^{p+1}, M')`.
pub(crate) fn bbmp(pt: &StabilityPoint) -> Result<Outcome> {
    let p = pt.chart().index;
    let [f0, f1, q] = pt.phases().clone();
    let v = f0.add_int(1);
    let t = if f1 < v { Some(chart_t(pt)?) } else { None };
    let row = pick_row(
        pt,
        &[
            (1, f1 > v && q > f1),
            (2, f1 > v && q <= f1),
            (3, f1 == v && q > v),
            (4, f1 == v && q < v),
            (5, f1 == v && q == v),
            (6, t.as_ref().is_some_and(|t| q.add_int(-1) >= *t)),
            (7, t.as_ref().is_some_and(|t| q.add_int(-1) < *t)),
        ],
    )?;
    let mut w = Witnesses { t: t.clone(), q: Some(q.clone()), v: Some(v.clone()), ..Default::default() };
    let mut extras = Vec::new();
    let derived = match row {
        1 => DerivedSet::of(&[Kind::B(p), Kind::B(p + 1), Kind::Mp]),
        2 => {
            let phi_a = arg_in_window(&pt.charge_kind(Kind::A(p)), &q, Closure::ClosedOpen)?;
            let mut d = DerivedSet::of(&[Kind::A(p), Kind::B(p), Kind::B(p + 1), Kind::Mp]);
            d.m = phi_a <= v;
            extras.push((Kind::A(p), phi_a));
            d
        }
        3 => all_b(&[Kind::Mp]),
        4 => {
            let mut d = all_b(&[Kind::M, Kind::Mp]);
            d.a = IntSet::single(p);
            // hom(M', M[1]) and hom(M, b^p) squeeze phi(M) into [q - 1, phi(b^p)]
            let phi_m = arg_in_window(&pt.charge_kind(Kind::M), &q.add_int(-1), Closure::ClosedOpen)?;
            w.footnote = Some(q < phi_m.add_int(1));
            extras.push((Kind::M, phi_m));
            d
        }
        5 => {
            let mut d = all_b(&[Kind::M, Kind::Mp]);
            d.a = IntSet::at_least(p);
            d
        }
        6 => {
            let t = t.as_ref().expect("row 6 has t");
            let mut d = all_b(&[Kind::Mp]);
            d.m = q == t.add_int(1);
            d
        }
        _ => {
            let t = t.as_ref().expect("row 7 has t");
            let big_u = arg_in_window(&-pt.charge_kind(Kind::M), t, Closure::OpenOpen)?;
            let (n, u) = window_n_u(pt, t, &q, &big_u)?;
            w.big_u = Some(big_u);
            w.n = Some(n);
            w.u = Some(u);
            let mut d = all_b(&[Kind::M, Kind::Mp]);
            d.a = IntSet::range(n, u);
            d
        }
    };
    Ok(Outcome { derived, rule: Rule::Table(row), w, extras })
}

/// Chart `(M, b^p, b^{p+1})`.
pub(crate) fn mbb(pt: &StabilityPoint) -> Result<Outcome> {
    let p = pt.chart().index;
    let [f0, f1, f2] = pt.phases().clone();
    let v = f2.add_int(-1);
    let s = f0.add_int(1);
    let t = if v < f1 { Some(chart_t(pt)?) } else { None };
    let row = pick_row(
        pt,
        &[
            (1, v > f1 && s < f1),
            (2, v > f1 && s >= f1),
            (3, v == f1 && s < f1),
            (4, v == f1 && s > f1),
            (5, v == f1 && s == f1),
            (6, t.as_ref().is_some_and(|t| s <= *t)),
            (7, t.as_ref().is_some_and(|t| s > *t)),
        ],
    )?;
    let mut w = Witnesses { t: t.clone(), s: Some(s.clone()), v: Some(v.clone()), ..Default::default() };
    let mut extras = Vec::new();
    let derived = match row {
        1 => DerivedSet::of(&[Kind::B(p), Kind::B(p + 1), Kind::M]),
        2 => {
            let phi_a = arg_in_window(&pt.charge_kind(Kind::A(p)), &f0, Closure::OpenClosed)?;
            let mut d = DerivedSet::of(&[Kind::A(p), Kind::B(p), Kind::B(p + 1), Kind::M]);
            d.mp = v <= phi_a;
            extras.push((Kind::A(p), phi_a));
            d
        }
        3 => all_b(&[Kind::M]),
        4 => {
            let mut d = all_b(&[Kind::M, Kind::Mp]);
            d.a = IntSet::single(p);
            d
        }
        5 => {
            let mut d = all_b(&[Kind::M, Kind::Mp]);
            d.a = IntSet::at_most(p);
            d
        }
        6 => {
            let t = t.as_ref().expect("row 6 has t");
            let mut d = all_b(&[Kind::M]);
            d.mp = s == *t;
            d
        }
        _ => {
            let t = t.as_ref().expect("row 7 has t");
            let big_v = arg_in_window(&pt.charge_kind(Kind::Mp), t, Closure::OpenOpen)?;
            let (n, u) = window_n_u(pt, t, &big_v, &s)?;
            w.big_v = Some(big_v);
            w.n = Some(n);
            w.u = Some(u);
            let mut d = all_b(&[Kind::M, Kind::Mp]);
            d.a = IntSet::range(n, u);
            d
        }
    };
    Ok(Outcome { derived, rule: Rule::Table(row), w, extras })
}

/// Chart `(b^p, a^p, b^{p+1})`; a single row with two independent flags.
pub(crate) fn bab(pt: &StabilityPoint) -> Result<Outcome> {
    let p = pt.chart().index;
    let [f0, f1, f2] = pt.phases().clone();
    let mut d = DerivedSet::of(&[Kind::B(p), Kind::A(p), Kind::B(p + 1)]);
    d.mp = f2.add_int(-1) <= f1 && f1 < f2;
    d.m = f1.add_int(-1) <= f0 && f0 < f1;
    Ok(Outcome { derived: d, rule: Rule::Table(1), w: Witnesses::default(), extras: Vec::new() })
}
