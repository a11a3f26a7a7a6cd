//! Hand-built exact points for every row of the classification tables.
//!
//! Expected answers are transcribed directly from each table, a-side tables
//! included, so the a-side fixtures check the conjugation path against an
//! independent source rather than against itself.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use serde_json::{json, Value};

use crate::classifier::{classify_full, CurveSet, DerivedSet, IntSet};
use crate::error::Result;
use crate::exact_angles::GaussianRational;
use crate::quiver_core::{Kind, NCCurve};
use crate::stability::{make_point, ChartId, Family, StabilityPoint};

/// What a table row says about a point. `None` means the row leaves that
/// set to another table (the middle-chart transfers).
#[derive(Clone, Debug)]
pub struct Expected {
    pub derived: Option<DerivedSet>,
    pub c0: Option<CurveSet>,
    pub c1_s: BTreeSet<NCCurve>,
    pub c1_ss: BTreeSet<NCCurve>,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub table: &'static str,
    pub row: &'static str,
    pub note: &'static str,
    pub chart: ChartId,
    pub charges: [&'static str; 3],
    pub sheets: [i64; 3],
    /// Substring of the resolution trail naming the rule that must fire.
    pub route: &'static str,
    pub expected: Expected,
}

impl Fixture {
    pub fn point(&self) -> Result<StabilityPoint> {
        let charges = [0, 1, 2].map(|i| GaussianRational::parse(self.charges[i]));
        let [a, b, c] = charges;
        make_point(self.chart, [a?, b?, c?], self.sheets)
    }

    pub fn name(&self) -> String {
        if self.note.is_empty() {
            format!("{} {}", self.table, self.row)
        } else {
            format!("{} {} ({})", self.table, self.row, self.note)
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "chart": self.chart,
            "charges": self.charges,
            "sheets": self.sheets,
        })
    }
}

fn curves(c: &[NCCurve]) -> BTreeSet<NCCurve> {
    c.iter().copied().collect()
}

fn dset(kinds: &[Kind], a: IntSet, b: IntSet) -> DerivedSet {
    let mut d = DerivedSet::of(kinds);
    d.a = d.a.union(&a);
    d.b = d.b.union(&b);
    d
}

fn cset(alpha: IntSet, beta: IntSet) -> CurveSet {
    CurveSet { alpha, beta }
}

fn none() -> IntSet {
    IntSet::empty()
}

fn one(j: i64) -> IntSet {
    IntSet::single(j)
}

fn exp(derived: DerivedSet, c0: CurveSet, c1_s: &[NCCurve], c1_ss: &[NCCurve]) -> Expected {
    Expected { derived: Some(derived), c0: Some(c0), c1_s: curves(c1_s), c1_ss: curves(c1_ss) }
}

use Kind::{Mp, M};
use NCCurve::{A as CA, B as CB};

struct Builder(Vec<Fixture>);

impl Builder {
    #[allow(clippy::too_many_arguments)]
    fn add(
        &mut self,
        table: &'static str,
        row: &'static str,
        note: &'static str,
        chart: ChartId,
        charges: [&'static str; 3],
        sheets: [i64; 3],
        route: &'static str,
        expected: Expected,
    ) {
        self.0.push(Fixture { table, row, note, chart, charges, sheets, route, expected });
    }
}

/// `b b M'` and its a-side twin `a a M` share charges: the same numbers in
/// `(a^p, a^{p+1}, M)` are the zeta-preimage of the b-side point.
fn tail_tables(f: &mut Builder) {
    const BB: &str = "b b M'";
    const AA: &str = "a a M";
    struct Case {
        row: &'static str,
        note: &'static str,
        p: i64,
        charges: [&'static str; 3],
        sheets: [i64; 3],
        route: &'static str,
        m_ss: bool,
        nu: Option<(i64, i64)>,
    }
    let cases = [
        Case { row: "1", note: "", p: 0, charges: ["1+i", "-1-3i", "-1-5i"], sheets: [0, 1, 1], route: "row 1", m_ss: false, nu: None },
        Case { row: "2", note: "extra object not semistable", p: 0, charges: ["1+i", "-1-3i", "-1"], sheets: [0, 1, 0], route: "row 2", m_ss: false, nu: None },
        Case { row: "2", note: "extra object semistable", p: 0, charges: ["1+i", "-1-3i", "-3+i"], sheets: [0, 1, 0], route: "row 2", m_ss: true, nu: None },
        Case { row: "2", note: "equality in the criterion", p: 0, charges: ["1+i", "-1-3i", "2i"], sheets: [0, 1, 0], route: "row 2", m_ss: true, nu: None },
        Case { row: "3", note: "", p: 0, charges: ["1+i", "-1-i", "1-2i"], sheets: [0, 1, 1], route: "row 3", m_ss: false, nu: None },
        Case { row: "4", note: "", p: 0, charges: ["1+i", "-1-i", "i"], sheets: [0, 1, 0], route: "row 4", m_ss: true, nu: None },
        Case { row: "5", note: "", p: 0, charges: ["1+i", "-1-i", "-2-2i"], sheets: [0, 1, 1], route: "row 5", m_ss: true, nu: None },
        Case { row: "5", note: "shifted index", p: -2, charges: ["1+i", "-1-i", "-2-2i"], sheets: [0, 1, 1], route: "row 5", m_ss: true, nu: None },
        Case { row: "6", note: "extra object semistable", p: 0, charges: ["-1+i", "-2+i", "-1"], sheets: [0, 0, 0], route: "row 6", m_ss: true, nu: None },
        Case { row: "6", note: "extra object not semistable", p: 0, charges: ["-1+i", "-2+i", "-1-i"], sheets: [0, 0, 1], route: "row 6", m_ss: false, nu: None },
        Case { row: "7", note: "", p: 0, charges: ["-1+i", "-2+i", "-4+i"], sheets: [0, 0, 0], route: "row 7", m_ss: true, nu: Some((2, 4)) },
        Case { row: "7", note: "shifted index", p: 3, charges: ["-1+i", "-2+i", "-4+i"], sheets: [0, 0, 0], route: "row 7", m_ss: true, nu: Some((5, 7)) },
    ];
    for c in cases {
        let p = c.p;
        let (b_side, a_side) = match c.row {
            "1" => (
                exp(dset(&[Mp], none(), IntSet::of(&[p, p + 1])), CurveSet::default(), &[], &[]),
                exp(dset(&[M], IntSet::of(&[p, p + 1]), none()), CurveSet::default(), &[], &[]),
            ),
            "2" => {
                let (bm, am) = if c.m_ss { (vec![Mp, M], vec![M, Mp]) } else { (vec![Mp], vec![M]) };
                let c0_b = cset(one(p), if c.m_ss { one(p) } else { none() });
                let c0_a = cset(if c.m_ss { one(p) } else { none() }, one(p + 1));
                (
                    exp(dset(&bm, one(p), IntSet::of(&[p, p + 1])), c0_b, &[], &[]),
                    exp(dset(&am, IntSet::of(&[p, p + 1]), one(p + 1)), c0_a, &[], &[]),
                )
            }
            "3" => (
                exp(dset(&[Mp], none(), IntSet::all()), CurveSet::default(), &[CB], &[CB]),
                exp(dset(&[M], IntSet::all(), none()), CurveSet::default(), &[CA], &[CA]),
            ),
            "4" => (
                exp(dset(&[M, Mp], one(p), IntSet::all()), cset(one(p), one(p)), &[CB], &[CB]),
                exp(dset(&[M, Mp], IntSet::all(), one(p + 1)), cset(one(p), one(p + 1)), &[CA], &[CA]),
            ),
            "5" => (
                exp(dset(&[M, Mp], IntSet::at_least(p), IntSet::all()), cset(IntSet::at_least(p), IntSet::at_least(p)), &[CA, CB], &[CB]),
                exp(
                    dset(&[M, Mp], IntSet::all(), IntSet::at_least(p + 1)),
                    cset(IntSet::at_least(p), IntSet::at_least(p + 1)),
                    &[CA, CB],
                    &[CA],
                ),
            ),
            "6" => {
                let (bm, am) = if c.m_ss { (vec![Mp, M], vec![M, Mp]) } else { (vec![Mp], vec![M]) };
                (
                    exp(dset(&bm, none(), IntSet::all()), CurveSet::default(), &[CB], &[CB]),
                    exp(dset(&am, IntSet::all(), none()), CurveSet::default(), &[CA], &[CA]),
                )
            }
            _ => {
                let (n, u) = c.nu.expect("row 7 fixtures carry (N, u)");
                (
                    exp(dset(&[M, Mp], IntSet::range(n, u), IntSet::all()), cset(IntSet::range(n, u), IntSet::range(n, u)), &[CB], &[CB]),
                    exp(
                        dset(&[M, Mp], IntSet::all(), IntSet::range(n + 1, u + 1)),
                        cset(IntSet::range(n, u), IntSet::range(n + 1, u + 1)),
                        &[CA],
                        &[CA],
                    ),
                )
            }
        };
        f.add(BB, c.row, c.note, ChartId::new(Family::BBMp, p), c.charges, c.sheets, c.route, b_side);
        f.add(AA, c.row, c.note, ChartId::new(Family::AAM, p), c.charges, c.sheets, c.route, a_side);
    }
}

/// `M b b` and its twin `M' a a`, again sharing charges.
fn side_tables(f: &mut Builder) {
    const MB: &str = "M b b";
    const MA: &str = "M' a a";
    struct Case {
        row: &'static str,
        note: &'static str,
        p: i64,
        charges: [&'static str; 3],
        sheets: [i64; 3],
        route: &'static str,
        extra_ss: bool,
        nu: Option<(i64, i64)>,
    }
    let cases = [
        Case { row: "1", note: "", p: 0, charges: ["4+i", "-1-i", "1+2i"], sheets: [0, 1, 2], route: "row 1", extra_ss: false, nu: None },
        Case { row: "2", note: "extra object not semistable", p: 0, charges: ["i", "-1-i", "1+3i"], sheets: [0, 1, 2], route: "row 2", extra_ss: false, nu: None },
        Case { row: "2", note: "extra object semistable", p: 0, charges: ["i", "-1-i", "2+3i"], sheets: [0, 1, 2], route: "row 2", extra_ss: true, nu: None },
        Case { row: "2", note: "equality in the criterion", p: 0, charges: ["i", "-1-i", "1+2i"], sheets: [0, 1, 2], route: "row 2", extra_ss: true, nu: None },
        Case { row: "3", note: "", p: 0, charges: ["4+i", "-1-i", "1+i"], sheets: [0, 1, 2], route: "row 3", extra_ss: false, nu: None },
        Case { row: "4", note: "", p: 0, charges: ["i", "-1-i", "1+i"], sheets: [0, 1, 2], route: "row 4", extra_ss: true, nu: None },
        Case { row: "5", note: "", p: 0, charges: ["1+i", "-1-i", "1+i"], sheets: [0, 1, 2], route: "row 5", extra_ss: true, nu: None },
        Case { row: "5", note: "shifted index", p: 4, charges: ["1+i", "-1-i", "1+i"], sheets: [0, 1, 2], route: "row 5", extra_ss: true, nu: None },
        Case { row: "6", note: "extra object semistable", p: 0, charges: ["-1", "-1+i", "-2+i"], sheets: [-2, 0, 0], route: "row 6", extra_ss: true, nu: None },
        Case { row: "6", note: "extra object not semistable", p: 0, charges: ["-1+i", "-1+i", "-2+i"], sheets: [-2, 0, 0], route: "row 6", extra_ss: false, nu: None },
        Case { row: "7", note: "", p: 0, charges: ["1-i", "-1+i", "-2+i"], sheets: [-1, 0, 0], route: "row 7", extra_ss: true, nu: Some((-2, 0)) },
        Case { row: "7", note: "narrower window", p: 0, charges: ["1-2i", "-1+i", "-2+i"], sheets: [-1, 0, 0], route: "row 7", extra_ss: true, nu: Some((-2, -1)) },
    ];
    for c in cases {
        let p = c.p;
        let (b_side, a_side) = match c.row {
            "1" => (
                exp(dset(&[M], none(), IntSet::of(&[p, p + 1])), CurveSet::default(), &[], &[]),
                exp(dset(&[Mp], IntSet::of(&[p, p + 1]), none()), CurveSet::default(), &[], &[]),
            ),
            "2" => {
                let (bm, am) = if c.extra_ss { (vec![M, Mp], vec![Mp, M]) } else { (vec![M], vec![Mp]) };
                let c0_b = cset(if c.extra_ss { one(p) } else { none() }, one(p));
                let c0_a = cset(one(p), if c.extra_ss { one(p + 1) } else { none() });
                (
                    exp(dset(&bm, one(p), IntSet::of(&[p, p + 1])), c0_b, &[], &[]),
                    exp(dset(&am, IntSet::of(&[p, p + 1]), one(p + 1)), c0_a, &[], &[]),
                )
            }
            "3" => (
                exp(dset(&[M], none(), IntSet::all()), CurveSet::default(), &[CB], &[CB]),
                exp(dset(&[Mp], IntSet::all(), none()), CurveSet::default(), &[CA], &[CA]),
            ),
            "4" => (
                exp(dset(&[M, Mp], one(p), IntSet::all()), cset(one(p), one(p)), &[CB], &[CB]),
                exp(dset(&[M, Mp], IntSet::all(), one(p + 1)), cset(one(p), one(p + 1)), &[CA], &[CA]),
            ),
            "5" => (
                exp(dset(&[M, Mp], IntSet::at_most(p), IntSet::all()), cset(IntSet::at_most(p), IntSet::at_most(p)), &[CA, CB], &[CB]),
                exp(
                    dset(&[M, Mp], IntSet::all(), IntSet::at_most(p + 1)),
                    cset(IntSet::at_most(p), IntSet::at_most(p + 1)),
                    &[CA, CB],
                    &[CA],
                ),
            ),
            "6" => {
                let (bm, am) = if c.extra_ss { (vec![M, Mp], vec![Mp, M]) } else { (vec![M], vec![Mp]) };
                (
                    exp(dset(&bm, none(), IntSet::all()), CurveSet::default(), &[CB], &[CB]),
                    exp(dset(&am, IntSet::all(), none()), CurveSet::default(), &[CA], &[CA]),
                )
            }
            _ => {
                let (n, u) = c.nu.expect("row 7 fixtures carry (N, u)");
                (
                    exp(dset(&[M, Mp], IntSet::range(n, u), IntSet::all()), cset(IntSet::range(n, u), IntSet::range(n, u)), &[CB], &[CB]),
                    exp(
                        dset(&[M, Mp], IntSet::all(), IntSet::range(n + 1, u + 1)),
                        cset(IntSet::range(n, u), IntSet::range(n + 1, u + 1)),
                        &[CA],
                        &[CA],
                    ),
                )
            }
        };
        f.add(MB, c.row, c.note, ChartId::new(Family::MBB, p), c.charges, c.sheets, c.route, b_side);
        f.add(MA, c.row, c.note, ChartId::new(Family::MpAA, p), c.charges, c.sheets, c.route, a_side);
    }
}

/// `b a b` and `a b a`. Charges are picked by phase:
/// `1+i` sits at 1/4, `-1` at 1, `-1-i` (sheet 1) at 5/4, `-i` (sheet 1)
/// at 3/2, and on sheet 2 `1+i`, `i`, `-1+i` sit at 9/4, 5/2, 11/4.
fn exchange_tables(f: &mut Builder) {
    let cases: [(&'static str, [&'static str; 3], [i64; 3], bool, bool); 6] = [
        ("both extra objects", ["1+i", "-1", "-i"], [0, 0, 1], true, true),
        ("neither", ["1+i", "-i", "-1+i"], [0, 1, 2], false, false),
        ("last pair only", ["1+i", "-i", "1+i"], [0, 1, 2], true, false),
        ("first pair only", ["1+i", "-1", "i"], [0, 0, 2], false, true),
        ("first pair at equality", ["1+i", "-1-i", "i"], [0, 1, 2], false, true),
        ("last pair at equality", ["1+i", "-i", "i"], [0, 1, 2], true, false),
    ];
    for (note, charges, sheets, last, first) in cases {
        let p = 0;
        // (b^p, a^p, b^{p+1}): M' from the last pair, M from the first.
        let mut d = DerivedSet::of(&[Kind::B(p), Kind::A(p), Kind::B(p + 1)]);
        d.mp = last;
        d.m = first;
        let c0 = cset(if last { one(p) } else { none() }, if first { one(p) } else { none() });
        f.add("b a b", "1", note, ChartId::new(Family::BAB, p), charges, sheets, "row 1", exp(d, c0, &[], &[]));
        // (a^p, b^{p+1}, a^{p+1}): M from the last pair, M' from the first.
        let mut d = DerivedSet::of(&[Kind::A(p), Kind::B(p + 1), Kind::A(p + 1)]);
        d.m = last;
        d.mp = first;
        let c0 = cset(if first { one(p) } else { none() }, if last { one(p + 1) } else { none() });
        f.add("a b a", "1", note, ChartId::new(Family::ABA, p), charges, sheets, "row 1", exp(d, c0, &[], &[]));
    }
}

/// Every case of the middle chart `(a^p, M, b^{p+1})`.
fn middle_chart(f: &mut Builder) {
    const T: &str = "a M b";
    let amb = ChartId::new(Family::AMB, 0);
    let everything = || exp(DerivedSet::everything(), cset(IntSet::all(), IntSet::all()), &[CA, CB], &[CA, CB]);
    let only = |c: NCCurve| Expected { derived: None, c0: None, c1_s: curves(&[c]), c1_ss: curves(&[c]) };

    // a.1 lands in (a^0, a^1, M), row 7 with (N, u) = (0, 1).
    f.add(
        T,
        "a.1",
        "",
        amb,
        ["1+i", "i", "-1+i"],
        [0, 0, 0],
        "case a.1",
        exp(dset(&[M, Mp], IntSet::all(), IntSet::range(1, 2)), cset(IntSet::range(0, 1), IntSet::range(1, 2)), &[CA], &[CA]),
    );
    f.add(T, "a.2.1", "", amb, ["-1+2i", "i", "-2+i"], [0, 0, 0], "case a.2.1", only(CA));
    f.add(T, "a.2.2", "", amb, ["-2+2i", "i", "-1"], [0, 0, 0], "case a.2.2", only(CB));
    f.add(T, "a.2.3", "", amb, ["-1+2i", "i", "-1+i"], [0, 0, 0], "case a.2.3", everything());
    // b lands in (M, b^0, b^1), row 2 with the extra object semistable.
    f.add(
        T,
        "b",
        "",
        amb,
        ["i", "1+i", "-i"],
        [0, 0, 1],
        "case b",
        exp(dset(&[M, Mp], one(0), IntSet::of(&[0, 1])), cset(one(0), one(0)), &[], &[]),
    );
    f.add(
        T,
        "c",
        "strict",
        amb,
        ["1+i", "i", "1-i"],
        [0, 0, 1],
        "case c",
        exp(dset(&[M], one(0), one(1)), CurveSet::default(), &[], &[]),
    );
    f.add(
        T,
        "c",
        "equal phases",
        amb,
        ["1+i", "2+2i", "-i"],
        [0, 0, 1],
        "case c",
        exp(dset(&[M], one(0), IntSet::of(&[0, 1])), cset(none(), one(0)), &[], &[]),
    );
    f.add(
        T,
        "d",
        "",
        amb,
        ["1+i", "i", "-i"],
        [0, 0, 1],
        "case d",
        exp(dset(&[M], IntSet::of(&[0, 1]), one(1)), cset(none(), one(1)), &[], &[]),
    );
    f.add(T, "e", "", amb, ["i", "1+i", "-1-i"], [0, 0, 1], "case e", only(CB));
    f.add(T, "f", "", amb, ["i", "2i", "-3i"], [0, 0, 1], "case f", everything());
}

/// Points outside both tail regions without both M and M' semistable, in
/// either middle chart. The `b M' a` points reuse the `a M b` charges.
fn outside_tables(f: &mut Builder) {
    const TA: &str = "outside a M b";
    const TB: &str = "outside b M' a";
    let amb = ChartId::new(Family::AMB, 0);
    let bmpa = ChartId::new(Family::BMpA, 0);
    let cases: [(&'static str, [&'static str; 3], [i64; 3], &'static str); 3] = [
        ("a", ["1+i", "2+2i", "-i"], [0, 0, 1], "case c"),
        ("b", ["1+i", "i", "-i"], [0, 0, 1], "case d"),
        ("c", ["1+i", "i", "1-i"], [0, 0, 1], "case c"),
    ];
    for (row, charges, sheets, route) in cases {
        let (ea, eb) = match row {
            "a" => (
                exp(dset(&[M], one(0), IntSet::of(&[0, 1])), cset(none(), one(0)), &[], &[]),
                exp(dset(&[Mp], IntSet::of(&[-1, 0]), one(0)), cset(one(-1), none()), &[], &[]),
            ),
            "b" => (
                exp(dset(&[M], IntSet::of(&[0, 1]), one(1)), cset(none(), one(1)), &[], &[]),
                exp(dset(&[Mp], one(0), IntSet::of(&[0, 1])), cset(one(0), none()), &[], &[]),
            ),
            _ => (
                exp(dset(&[M], one(0), one(1)), CurveSet::default(), &[], &[]),
                exp(dset(&[Mp], one(0), one(0)), CurveSet::default(), &[], &[]),
            ),
        };
        f.add(TA, row, "", amb, charges, sheets, route, ea);
        f.add(TB, row, "", bmpa, charges, sheets, route, eb);
    }
}

pub fn all() -> Vec<Fixture> {
    let mut b = Builder(Vec::new());
    tail_tables(&mut b);
    side_tables(&mut b);
    exchange_tables(&mut b);
    middle_chart(&mut b);
    outside_tables(&mut b);
    b.0
}

/// Looks a fixture up by table, row and note.
pub fn find(table: &str, row: &str, note: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.table == table && f.row == row && f.note == note)
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureResult {
    pub name: String,
    pub table: &'static str,
    pub row: &'static str,
    pub ok: bool,
    pub mismatches: Vec<String>,
}

pub fn check(f: &Fixture) -> FixtureResult {
    let mut mismatches = Vec::new();
    match f.point().and_then(|p| classify_full(&p)) {
        Err(e) => mismatches.push(format!("error: {e}")),
        Ok((c, res)) => {
            let trail = res.trail.join(" | ");
            if !trail.contains(f.route) {
                mismatches.push(format!("route: expected {}, got {trail}", f.route));
            }
            if let Some(d) = &f.expected.derived {
                if *d != c.derived_ss {
                    mismatches.push(format!("derived_ss: expected {}, got {}", d.to_json(), c.derived_ss.to_json()));
                }
            }
            if let Some(c0) = &f.expected.c0 {
                if *c0 != c.c0_ss {
                    mismatches.push(format!("c0_ss: expected {}, got {}", c0.to_json(), c.c0_ss.to_json()));
                }
            }
            if f.expected.c1_s != c.c1_s {
                mismatches.push(format!("c1_s: expected {:?}, got {:?}", f.expected.c1_s, c.c1_s));
            }
            if f.expected.c1_ss != c.c1_ss {
                mismatches.push(format!("c1_ss: expected {:?}, got {:?}", f.expected.c1_ss, c.c1_ss));
            }
        }
    }
    FixtureResult { name: f.name(), table: f.table, row: f.row, ok: mismatches.is_empty(), mismatches }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub results: Vec<FixtureResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.ok)
    }

    /// `table -> row -> (passed, total)`.
    pub fn coverage(&self) -> BTreeMap<&'static str, BTreeMap<&'static str, (usize, usize)>> {
        let mut m: BTreeMap<&'static str, BTreeMap<&'static str, (usize, usize)>> = BTreeMap::new();
        for r in &self.results {
            let e = m.entry(r.table).or_default().entry(r.row).or_default();
            e.1 += 1;
            if r.ok {
                e.0 += 1;
            }
        }
        m
    }

    pub fn matrix(&self) -> String {
        let mut out = String::new();
        for (table, rows) in self.coverage() {
            let cells: Vec<String> = rows.iter().map(|(row, (ok, n))| format!("{row}:{ok}/{n}")).collect();
            out.push_str(&format!("{table:<16} {}\n", cells.join("  ")));
        }
        let bad: Vec<&FixtureResult> = self.results.iter().filter(|r| !r.ok).collect();
        out.push_str(&format!("{} fixtures, {} mismatches\n", self.results.len(), bad.len()));
        for r in bad {
            out.push_str(&format!("MISMATCH {}: {}\n", r.name, r.mismatches.join("; ")));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let coverage: BTreeMap<&str, BTreeMap<&str, String>> = self
            .coverage()
            .into_iter()
            .map(|(t, rows)| (t, rows.into_iter().map(|(r, (ok, n))| (r, format!("{ok}/{n}"))).collect()))
            .collect();
        json!({"passed": self.passed(), "coverage": coverage, "results": self.results})
    }
}

pub fn run_suite() -> SuiteReport {
    SuiteReport { results: all().iter().map(check).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_matches_its_row() {
        let r = run_suite();
        assert!(r.passed(), "{}", r.matrix());
    }

    #[test]
    fn coverage_spans_all_tables() {
        let cov = run_suite().coverage();
        for (table, rows) in [
            ("b b M'", 7),
            ("a a M", 7),
            ("M b b", 7),
            ("M' a a", 7),
            ("b a b", 1),
            ("a b a", 1),
            ("a M b", 9),
            ("outside a M b", 3),
            ("outside b M' a", 3),
        ] {
            assert_eq!(cov[table].len(), rows, "{table}");
        }
    }
}
