//! Stability points in chart coordinates.
//!
//! A point is a chart (a full exceptional triple), the exact charges of the
//! three objects and the sheet of each phase. The central charge on the
//! simples is solved from the triple, whose classes always form a basis.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact_angles::{arg_in_window, phase_from_charge, Closure, GaussianRational, Phase};
use crate::quiver_core::{class_of, ExcObject, KClass, Kind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    MpAA,
    ABA,
    AAM,
    AMB,
    BMpA,
    MBB,
    BAB,
    BBMp,
}

pub const FAMILIES: [Family; 8] = [
    Family::MpAA,
    Family::ABA,
    Family::AAM,
    Family::AMB,
    Family::BMpA,
    Family::MBB,
    Family::BAB,
    Family::BBMp,
];

/// `phi[i] + offset < phi[j]`
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ineq {
    pub i: usize,
    pub j: usize,
    pub offset: i64,
}

const fn iq(i: usize, j: usize, offset: i64) -> Ineq {
    Ineq { i, j, offset }
}

const SIDE: [Ineq; 3] = [iq(0, 1, 0), iq(0, 2, 1), iq(1, 2, 0)];
const TAIL: [Ineq; 3] = [iq(0, 1, 0), iq(0, 2, 0), iq(1, 2, -1)];
const MIDDLE: [Ineq; 3] = [iq(0, 1, -1), iq(0, 2, 0), iq(1, 2, 0)];

impl Family {
    pub fn wire_name(self) -> &'static str {
        match self {
            Family::MpAA => "Mp_a_a",
            Family::ABA => "a_b_a",
            Family::AAM => "a_a_M",
            Family::AMB => "a_M_b",
            Family::BMpA => "b_Mp_a",
            Family::MBB => "M_b_b",
            Family::BAB => "b_a_b",
            Family::BBMp => "b_b_Mp",
        }
    }

    pub fn inequalities(self) -> &'static [Ineq; 3] {
        match self {
            Family::MpAA | Family::MBB | Family::ABA | Family::BAB => &SIDE,
            Family::AAM | Family::BBMp => &TAIL,
            Family::AMB | Family::BMpA => &MIDDLE,
        }
    }

    /// Whether the family's triple is built from the a-family first, so that
    /// its tables are the zeta-conjugates of b-side ones.
    pub fn is_a_side(self) -> bool {
        matches!(self, Family::MpAA | Family::ABA | Family::AAM | Family::BMpA)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.wire_name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FAMILIES
            .iter()
            .copied()
            .find(|f| f.wire_name() == s || format!("{f:?}") == s)
            .ok_or_else(|| Error::Invalid(format!("unknown chart family {s:?}")))
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.wire_name())
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChartId {
    pub family: Family,
    pub index: i64,
}

impl ChartId {
    pub const fn new(family: Family, index: i64) -> Self {
        ChartId { family, index }
    }

    pub fn objects(self) -> [Kind; 3] {
        use Kind::*;
        let m = self.index;
        match self.family {
            Family::MpAA => [Mp, A(m), A(m + 1)],
            Family::ABA => [A(m), B(m + 1), A(m + 1)],
            Family::AAM => [A(m), A(m + 1), M],
            Family::AMB => [A(m), M, B(m + 1)],
            Family::BMpA => [B(m), Mp, A(m)],
            Family::MBB => [M, B(m), B(m + 1)],
            Family::BAB => [B(m), A(m), B(m + 1)],
            Family::BBMp => [B(m), B(m + 1), Mp],
        }
    }

    /// The chart whose triple is the zeta-image of this one, in order.
    pub fn zeta(self) -> ChartId {
        let m = self.index;
        let (f, k) = match self.family {
            Family::AAM => (Family::BBMp, m),
            Family::BBMp => (Family::AAM, m - 1),
            Family::MpAA => (Family::MBB, m),
            Family::MBB => (Family::MpAA, m - 1),
            Family::ABA => (Family::BAB, m),
            Family::BAB => (Family::ABA, m - 1),
            Family::AMB => (Family::BMpA, m),
            Family::BMpA => (Family::AMB, m - 1),
        };
        ChartId::new(f, k)
    }

    pub fn zeta_inv(self) -> ChartId {
        let m = self.index;
        let (f, k) = match self.family {
            Family::BBMp => (Family::AAM, m),
            Family::AAM => (Family::BBMp, m + 1),
            Family::MBB => (Family::MpAA, m),
            Family::MpAA => (Family::MBB, m + 1),
            Family::BAB => (Family::ABA, m),
            Family::ABA => (Family::BAB, m + 1),
            Family::BMpA => (Family::AMB, m),
            Family::AMB => (Family::BMpA, m + 1),
        };
        ChartId::new(f, k)
    }
}

impl fmt::Display for ChartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family, self.index)
    }
}

/// Central charge on the simples, ordered `(x, z, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralCharge {
    pub x: GaussianRational,
    pub z: GaussianRational,
    pub y: GaussianRational,
}

impl CentralCharge {
    pub fn of_class(&self, c: KClass) -> GaussianRational {
        &(&self.x.scale_int(c.x) + &self.z.scale_int(c.z)) + &self.y.scale_int(c.y)
    }

    /// Solves `Z` from its values on three classes forming a basis.
    pub fn solve(classes: [KClass; 3], values: &[GaussianRational; 3]) -> CentralCharge {
        let m = classes.map(|c| c.coords());
        let det = det3(&m);
        assert!(det == 1 || det == -1, "chart triple is not a basis (det {det})");
        // inverse = adjugate / det, entries stay integral
        let mut inv = [[0i64; 3]; 3];
        for (r, row) in inv.iter_mut().enumerate() {
            for (c, e) in row.iter_mut().enumerate() {
                let minor = |i: usize, j: usize| m[(c + i) % 3][(r + j) % 3];
                *e = (minor(1, 1) * minor(2, 2) - minor(1, 2) * minor(2, 1)) * det;
            }
        }
        let sim = |r: usize| {
            let mut acc = GaussianRational::zero();
            for (c, v) in values.iter().enumerate() {
                acc = &acc + &v.scale_int(inv[r][c]);
            }
            acc
        };
        CentralCharge { x: sim(0), z: sim(1), y: sim(2) }
    }
}

fn det3(m: &[[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// A validated point. Fields are private so every instance has passed
/// [`make_point`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityPoint {
    chart: ChartId,
    charges: [GaussianRational; 3],
    sheets: [i64; 3],
    phases: [Phase; 3],
    z: CentralCharge,
}

impl StabilityPoint {
    pub fn chart(&self) -> ChartId {
        self.chart
    }

    pub fn charges(&self) -> &[GaussianRational; 3] {
        &self.charges
    }

    pub fn sheets(&self) -> [i64; 3] {
        self.sheets
    }

    pub fn phases(&self) -> &[Phase; 3] {
        &self.phases
    }

    pub fn phase(&self, i: usize) -> &Phase {
        &self.phases[i]
    }

    pub fn central_charge(&self) -> &CentralCharge {
        &self.z
    }

    pub fn charge(&self, obj: ExcObject) -> GaussianRational {
        self.z.of_class(class_of(obj))
    }

    pub fn charge_kind(&self, k: Kind) -> GaussianRational {
        self.z.of_class(k.class())
    }
}

fn violations(family: Family, phases: &[Phase; 3], objs: &[Kind; 3]) -> Vec<String> {
    family
        .inequalities()
        .iter()
        .filter(|q| phases[q.i].add_int(q.offset) >= phases[q.j])
        .map(|q| {
            let lhs = match q.offset {
                0 => format!("phi({})", objs[q.i]),
                k if k > 0 => format!("phi({}) + {k}", objs[q.i]),
                k => format!("phi({}) - {}", objs[q.i], -k),
            };
            format!("{lhs} < phi({})", objs[q.j])
        })
        .collect()
}

pub fn make_point(chart: ChartId, charges: [GaussianRational; 3], sheets: [i64; 3]) -> Result<StabilityPoint> {
    let objs = chart.objects();
    for (c, o) in charges.iter().zip(objs) {
        if c.is_zero() {
            return Err(Error::ZeroCharge(o.to_string()));
        }
    }
    let mut ph = Vec::with_capacity(3);
    for (c, s) in charges.iter().zip(sheets) {
        ph.push(phase_from_charge(c, s)?);
    }
    let phases: [Phase; 3] = ph.try_into().expect("three phases");
    let bad = violations(chart.family, &phases, &objs);
    if !bad.is_empty() {
        return Err(Error::ChartViolation(bad));
    }
    let z = CentralCharge::solve(objs.map(|k| k.class()), &charges);
    Ok(StabilityPoint { chart, charges, sheets, phases, z })
}

/// Builds the point from phases instead of sheets; the charges must lie on
/// the given phases.
pub fn make_point_with_phases(chart: ChartId, charges: [GaussianRational; 3], phases: &[Phase; 3]) -> Result<StabilityPoint> {
    for (c, p) in charges.iter().zip(phases) {
        if !p.is_direction_of(c) {
            return Err(Error::SheetMismatch { charge: c.to_string(), sheet: p.sheet() });
        }
    }
    make_point(chart, charges, [phases[0].sheet(), phases[1].sheet(), phases[2].sheet()])
}

pub fn charge_of(point: &StabilityPoint, obj: ExcObject) -> GaussianRational {
    point.charge(obj)
}

/// Phase of `Z(delta)` in the unit window just below the first object of the
/// chart's consecutive pair (`b^p` or `a^p`).
pub fn chart_t(p: &StabilityPoint) -> Result<Phase> {
    let i = match p.chart.family {
        Family::AAM | Family::BBMp => 0,
        Family::MBB | Family::MpAA => 1,
        f => return Err(Error::Precondition(format!("t is not defined on {f} charts"))),
    };
    let delta = &p.charges[i] - &p.charges[i + 1];
    arg_in_window(&delta, &p.phases[i].add_int(-1), Closure::OpenOpen)
}

/// The zeta-translate of the point: the same charges and phases read on the
/// image triple.
pub fn zeta_point(p: &StabilityPoint) -> StabilityPoint {
    let chart = p.chart.zeta();
    let z = CentralCharge::solve(chart.objects().map(|k| k.class()), &p.charges);
    StabilityPoint { chart, charges: p.charges.clone(), sheets: p.sheets, phases: p.phases.clone(), z }
}

pub fn zeta_inv_point(p: &StabilityPoint) -> StabilityPoint {
    let chart = p.chart.zeta_inv();
    let z = CentralCharge::solve(chart.objects().map(|k| k.class()), &p.charges);
    StabilityPoint { chart, charges: p.charges.clone(), sheets: p.sheets, phases: p.phases.clone(), z }
}

/// Expresses the same stability condition in another chart, given the phases
/// of the target triple. Those phases come from a licensed transfer formula;
/// objects shared with the current chart keep their known phases.
pub fn reexpress(p: &StabilityPoint, target: ChartId, phases: &[Phase; 3]) -> Result<StabilityPoint> {
    let objs = target.objects();
    for (i, k) in objs.iter().enumerate() {
        if let Some(j) = p.chart.objects().iter().position(|o| o == k) {
            if p.phases[j] != phases[i] {
                return Err(Error::Precondition(format!("phase of {k} changed under transfer to {target}")));
            }
        }
    }
    make_point_with_phases(target, objs.map(|k| p.charge_kind(k)), phases)
}

/// Flexible charge input: `{"re":"1/2","im":"3"}` or a literal like `"1/2+3i"`.
#[derive(Deserialize)]
#[serde(untagged)]
enum ChargeWire {
    Literal(String),
    Parts(GaussianRational),
}

#[derive(Deserialize)]
struct PointWire {
    chart: ChartId,
    charges: [ChargeWire; 3],
    sheets: [i64; 3],
}

#[derive(Serialize)]
struct PointOut<'a> {
    chart: ChartId,
    charges: &'a [GaussianRational; 3],
    sheets: [i64; 3],
}

impl Serialize for StabilityPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PointOut { chart: self.chart, charges: &self.charges, sheets: self.sheets }.serialize(s)
    }
}

/// Parses and validates a point from its JSON form.
pub fn point_from_json(v: &serde_json::Value) -> Result<StabilityPoint> {
    let w: PointWire = serde_json::from_value(v.clone()).map_err(|e| Error::Invalid(format!("point: {e}")))?;
    let mut cs = Vec::with_capacity(3);
    for c in w.charges {
        cs.push(match c {
            ChargeWire::Literal(s) => GaussianRational::parse(&s)?,
            ChargeWire::Parts(g) => g,
        });
    }
    make_point(w.chart, cs.try_into().expect("three charges"), w.sheets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver_core::DELTA;

    fn g(s: &str) -> GaussianRational {
        GaussianRational::parse(s).unwrap()
    }

    fn pt(f: Family, m: i64, c: [&str; 3], s: [i64; 3]) -> Result<StabilityPoint> {
        make_point(ChartId::new(f, m), c.map(g), s)
    }

    #[test]
    fn make_point_examples() {
        let p = pt(Family::BBMp, 0, ["-1+i", "-2+i", "-4+i"], [0, 0, 0]).unwrap();
        assert!(p.phase(0) < p.phase(1) && p.phase(1) < p.phase(2));
        let q = pt(Family::AMB, 0, ["i", "2i", "-3i"], [0, 0, 1]).unwrap();
        assert_eq!(q.phase(0), q.phase(1));
        match pt(Family::BBMp, 0, ["-1+i", "-1+i", "-4+i"], [0, 0, 0]) {
            Err(Error::ChartViolation(v)) => assert_eq!(v, vec!["phi(b:0) < phi(b:1)".to_string()]),
            other => panic!("{other:?}"),
        }
        assert!(matches!(pt(Family::BBMp, 0, ["-1+i", "-2+i", "-4+i"], [1, 0, 0]), Err(Error::SheetMismatch { .. })));
        assert!(matches!(pt(Family::BBMp, 0, ["0", "-2+i", "-4+i"], [0, 0, 0]), Err(Error::ZeroCharge(_))));
    }

    #[test]
    fn charge_examples() {
        let p = pt(Family::BBMp, 0, ["-1+i", "-2+i", "-4+i"], [0, 0, 0]).unwrap();
        assert_eq!(p.central_charge().of_class(DELTA), g("1"));
        assert_eq!(p.charge_kind(Kind::B(3)), g("-4+i"));
        assert_eq!(p.charge_kind(Kind::M), g("5-i"));
        let o = ExcObject::new(Kind::A(2), 1);
        assert_eq!(p.charge(o), -p.charge_kind(Kind::A(2)));
        for (k, c) in p.chart().objects().iter().zip(p.charges()) {
            assert_eq!(&p.charge_kind(*k), c);
        }
    }

    #[test]
    fn zeta_chart_table_is_consistent() {
        for f in FAMILIES {
            for m in -3..=3 {
                let c = ChartId::new(f, m);
                assert_eq!(c.zeta().zeta_inv(), c);
                assert_eq!(c.zeta().objects(), c.objects().map(|k| k.zeta()));
                assert_eq!(c.zeta().family.inequalities(), f.inequalities());
                assert_ne!(c.zeta().family.is_a_side(), f.is_a_side());
            }
        }
    }

    #[test]
    fn every_chart_is_a_basis() {
        for f in FAMILIES {
            for m in -20..=20 {
                let c = ChartId::new(f, m).objects().map(|k| k.class().coords());
                assert_eq!(det3(&c).abs(), 1, "{f:?} {m}");
            }
        }
    }

    #[test]
    fn zeta_point_transports_charges() {
        let p = pt(Family::AAM, 2, ["-1+i", "-2+i", "-4+i"], [0, 0, 0]).unwrap();
        let q = zeta_point(&p);
        assert_eq!(q.chart(), ChartId::new(Family::BBMp, 2));
        for k in crate::quiver_core::catalog(6) {
            assert_eq!(q.charge_kind(k.zeta()), p.charge_kind(k));
        }
        assert_eq!(zeta_inv_point(&q), p);
    }

    #[test]
    fn json_round_trip() {
        let p = pt(Family::MBB, -1, ["1-i", "-1+i", "-2+i"], [-1, 0, 0]).unwrap();
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v["chart"]["family"], "M_b_b");
        assert_eq!(v["charges"][0]["re"], "1/1");
        assert_eq!(point_from_json(&v).unwrap(), p);
        let lit = serde_json::json!({"chart":{"family":"M_b_b","index":-1},"charges":["1-i","-1+i",{"re":"-2","im":"1"}],"sheets":[-1,0,0]});
        assert_eq!(point_from_json(&lit).unwrap(), p);
    }

    #[test]
    fn reexpress_identity() {
        let p = pt(Family::BBMp, 0, ["-1+i", "-2+i", "-4+i"], [0, 0, 0]).unwrap();
        assert_eq!(reexpress(&p, p.chart(), p.phases()).unwrap(), p);
    }
}
