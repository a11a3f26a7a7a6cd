//! Symbolic sets of integers, derived points and genus 0 curves.

use std::fmt;

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::quiver_core::{Kind, NCCurve};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Card {
    Finite(u64),
    Infinite,
}

impl Card {
    pub fn is_finite(self) -> bool {
        matches!(self, Card::Finite(_))
    }

    pub fn add(self, o: Card) -> Card {
        match (self, o) {
            (Card::Finite(a), Card::Finite(b)) => Card::Finite(a + b),
            _ => Card::Infinite,
        }
    }
}

impl fmt::Display for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Card::Finite(n) => write!(f, "{n}"),
            Card::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Card {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A closed interval of integers; `None` bounds are infinite.
pub type Interval = (Option<i64>, Option<i64>);

/// A finite union of integer intervals, kept sorted, disjoint and
/// non-adjacent so that equal sets compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntSet {
    parts: Vec<Interval>,
}

fn lo_key(lo: Option<i64>) -> i128 {
    lo.map_or(i128::MIN, i128::from)
}

fn hi_key(hi: Option<i64>) -> i128 {
    hi.map_or(i128::MAX, i128::from)
}

impl IntSet {
    pub fn empty() -> Self {
        IntSet::default()
    }

    pub fn all() -> Self {
        IntSet { parts: vec![(None, None)] }
    }

    pub fn range(lo: i64, hi: i64) -> Self {
        IntSet::from_parts(vec![(Some(lo), Some(hi))])
    }

    pub fn single(j: i64) -> Self {
        IntSet::range(j, j)
    }

    pub fn at_least(lo: i64) -> Self {
        IntSet { parts: vec![(Some(lo), None)] }
    }

    pub fn at_most(hi: i64) -> Self {
        IntSet { parts: vec![(None, Some(hi))] }
    }

    pub fn of(items: &[i64]) -> Self {
        IntSet::from_parts(items.iter().map(|&j| (Some(j), Some(j))).collect())
    }

    pub fn from_parts(mut v: Vec<Interval>) -> Self {
        v.retain(|&(lo, hi)| lo_key(lo) <= hi_key(hi));
        v.sort_by_key(|&(lo, _)| lo_key(lo));
        let mut out: Vec<Interval> = Vec::with_capacity(v.len());
        for (lo, hi) in v {
            if let Some(last) = out.last_mut() {
                if lo_key(lo) <= hi_key(last.1).saturating_add(1) {
                    if hi_key(hi) > hi_key(last.1) {
                        last.1 = hi;
                    }
                    continue;
                }
            }
            out.push((lo, hi));
        }
        IntSet { parts: out }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_all(&self) -> bool {
        self.parts == [(None, None)]
    }

    pub fn contains(&self, j: i64) -> bool {
        self.parts.iter().any(|&(lo, hi)| lo_key(lo) <= j as i128 && j as i128 <= hi_key(hi))
    }

    pub fn card(&self) -> Card {
        let mut n = 0u64;
        for &(lo, hi) in &self.parts {
            match (lo, hi) {
                (Some(a), Some(b)) => n += (b - a + 1) as u64,
                _ => return Card::Infinite,
            }
        }
        Card::Finite(n)
    }

    pub fn union(&self, o: &IntSet) -> IntSet {
        IntSet::from_parts(self.parts.iter().chain(&o.parts).copied().collect())
    }

    pub fn intersect(&self, o: &IntSet) -> IntSet {
        let mut v = Vec::new();
        for &(a0, a1) in &self.parts {
            for &(b0, b1) in &o.parts {
                let lo = if lo_key(a0) >= lo_key(b0) { a0 } else { b0 };
                let hi = if hi_key(a1) <= hi_key(b1) { a1 } else { b1 };
                v.push((lo, hi));
            }
        }
        IntSet::from_parts(v)
    }

    pub fn shift(&self, k: i64) -> IntSet {
        IntSet { parts: self.parts.iter().map(|&(lo, hi)| (lo.map(|x| x + k), hi.map(|x| x + k))).collect() }
    }

    /// Elements within `[lo, hi]`, for enumeration.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).filter(|&j| self.contains(j)).collect()
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = |x: Option<i64>, inf: &str| x.map_or(inf.to_string(), |v| v.to_string());
        let s: Vec<String> = self
            .parts
            .iter()
            .map(|&(lo, hi)| if lo == hi { b(lo, "") } else { format!("[{},{}]", b(lo, "-inf"), b(hi, "inf")) })
            .collect();
        write!(f, "{{{}}}", s.join(","))
    }
}

/// Semistable derived points: index sets for the two families plus the two
/// isolated points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DerivedSet {
    pub a: IntSet,
    pub b: IntSet,
    pub m: bool,
    pub mp: bool,
}

impl DerivedSet {
    pub fn everything() -> Self {
        DerivedSet { a: IntSet::all(), b: IntSet::all(), m: true, mp: true }
    }

    pub fn of(kinds: &[Kind]) -> Self {
        let mut d = DerivedSet::default();
        for &k in kinds {
            d.insert(k);
        }
        d
    }

    pub fn insert(&mut self, k: Kind) {
        match k {
            Kind::A(j) => self.a = self.a.union(&IntSet::single(j)),
            Kind::B(j) => self.b = self.b.union(&IntSet::single(j)),
            Kind::M => self.m = true,
            Kind::Mp => self.mp = true,
        }
    }

    pub fn contains(&self, k: Kind) -> bool {
        match k {
            Kind::A(j) => self.a.contains(j),
            Kind::B(j) => self.b.contains(j),
            Kind::M => self.m,
            Kind::Mp => self.mp,
        }
    }

    pub fn card(&self) -> Card {
        self.a.card().add(self.b.card()).add(Card::Finite(self.m as u64 + self.mp as u64))
    }

    pub fn is_everything(&self) -> bool {
        *self == DerivedSet::everything()
    }

    /// Image under zeta: `a^j -> b^j`, `b^j -> a^{j-1}`, `M <-> M'`.
    pub fn zeta(&self) -> DerivedSet {
        DerivedSet { a: self.b.shift(-1), b: self.a.clone(), m: self.mp, mp: self.m }
    }

    pub fn zeta_inv(&self) -> DerivedSet {
        DerivedSet { a: self.b.clone(), b: self.a.shift(1), m: self.mp, mp: self.m }
    }

    /// Genus 0 curves all of whose generators lie in the set.
    pub fn genus0_curves(&self) -> CurveSet {
        let alpha = if self.mp { self.a.intersect(&self.b.shift(-1)) } else { IntSet::empty() };
        let beta = if self.m { self.a.intersect(&self.b) } else { IntSet::empty() };
        CurveSet { alpha, beta }
    }

    pub fn to_json(&self) -> Value {
        let mut finite = Vec::new();
        let mut ranges = Vec::new();
        for (fam, set, ctor) in [("da", &self.a, Kind::A as fn(i64) -> Kind), ("db", &self.b, Kind::B)] {
            for &(lo, hi) in set.parts() {
                match (lo, hi) {
                    (Some(x), Some(y)) if x == y => finite.push(ctor(x).to_string()),
                    _ => ranges.push(json!({"family": fam, "lower": lo, "upper": hi})),
                }
            }
        }
        let mut constants = Vec::new();
        if self.m {
            constants.push("M");
        }
        if self.mp {
            constants.push("M'");
        }
        json!({"finite": finite, "ranges": ranges, "constants": constants})
    }
}

impl fmt::Display for DerivedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{} b{}", self.a, self.b)?;
        if self.m {
            write!(f, " M")?;
        }
        if self.mp {
            write!(f, " M'")?;
        }
        Ok(())
    }
}

/// Genus 0 curves, as index sets of the alpha and beta families.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CurveSet {
    pub alpha: IntSet,
    pub beta: IntSet,
}

impl CurveSet {
    pub fn of(curves: &[NCCurve]) -> Self {
        let mut alpha = IntSet::empty();
        let mut beta = IntSet::empty();
        for c in curves {
            match *c {
                NCCurve::Alpha(j) => alpha = alpha.union(&IntSet::single(j)),
                NCCurve::Beta(j) => beta = beta.union(&IntSet::single(j)),
                _ => panic!("{c} is not of genus 0"),
            }
        }
        CurveSet { alpha, beta }
    }

    pub fn contains(&self, c: NCCurve) -> bool {
        match c {
            NCCurve::Alpha(j) => self.alpha.contains(j),
            NCCurve::Beta(j) => self.beta.contains(j),
            _ => false,
        }
    }

    pub fn card(&self) -> Card {
        self.alpha.card().add(self.beta.card())
    }

    pub fn zeta(&self) -> CurveSet {
        CurveSet { alpha: self.beta.shift(-1), beta: self.alpha.clone() }
    }

    pub fn zeta_inv(&self) -> CurveSet {
        CurveSet { alpha: self.beta.clone(), beta: self.alpha.shift(1) }
    }

    /// Ranges are paired with the beta range when it equals the alpha range
    /// or its translate by one, which covers every shape the tables produce.
    pub fn to_json(&self) -> Value {
        let mut finite = Vec::new();
        let mut ranges = Vec::new();
        let mut beta_left: Vec<Interval> = self.beta.parts().to_vec();
        let shift = |iv: Interval, k: i64| (iv.0.map(|x| x + k), iv.1.map(|x| x + k));
        let single = |iv: Interval| matches!(iv, (Some(x), Some(y)) if x == y);
        for &iv in self.alpha.parts() {
            if single(iv) {
                finite.push(NCCurve::Alpha(iv.0.unwrap()).to_string());
                continue;
            }
            let mut paired = false;
            for (k, rule) in [(0, "alpha^j,beta^j"), (1, "alpha^j,beta^{j+1}")] {
                if let Some(pos) = beta_left.iter().position(|&b| b == shift(iv, k)) {
                    beta_left.remove(pos);
                    ranges.push(json!({"family": "alpha,beta", "pairing": rule, "lower": iv.0, "upper": iv.1}));
                    paired = true;
                    break;
                }
            }
            if !paired {
                ranges.push(json!({"family": "alpha", "lower": iv.0, "upper": iv.1}));
            }
        }
        for iv in beta_left {
            if single(iv) {
                finite.push(NCCurve::Beta(iv.0.unwrap()).to_string());
            } else {
                ranges.push(json!({"family": "beta", "lower": iv.0, "upper": iv.1}));
            }
        }
        json!({"finite": finite, "ranges": ranges, "constants": []})
    }
}

impl fmt::Display for CurveSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha{} beta{}", self.alpha, self.beta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalization() {
        let s = IntSet::from_parts(vec![(Some(3), Some(5)), (Some(0), Some(2)), (Some(9), Some(9))]);
        assert_eq!(s.parts(), &[(Some(0), Some(5)), (Some(9), Some(9))]);
        assert_eq!(s.card(), Card::Finite(7));
        assert_eq!(IntSet::at_least(2).union(&IntSet::at_most(1)), IntSet::all());
        assert_eq!(IntSet::at_least(2).intersect(&IntSet::at_most(4)), IntSet::range(2, 4));
        assert!(IntSet::at_least(5).intersect(&IntSet::at_most(4)).is_empty());
        assert_eq!(IntSet::all().card(), Card::Infinite);
        assert_eq!(IntSet::range(3, 2), IntSet::empty());
    }

    #[test]
    fn genus0_membership_rules() {
        let mut d = DerivedSet::of(&[Kind::M, Kind::Mp]);
        d.a = IntSet::range(2, 4);
        d.b = IntSet::all();
        let c = d.genus0_curves();
        assert_eq!(c.alpha, IntSet::range(2, 4));
        assert_eq!(c.beta, IntSet::range(2, 4));
        assert_eq!(c.card(), Card::Finite(6));
        let j = c.to_json();
        assert_eq!(j["ranges"][0]["pairing"], "alpha^j,beta^j");
        let d2 = DerivedSet::of(&[Kind::B(0), Kind::B(1), Kind::Mp, Kind::A(0)]);
        assert_eq!(d2.genus0_curves(), CurveSet::of(&[NCCurve::Alpha(0)]));
    }

    #[test]
    fn json_shapes() {
        let mut d = DerivedSet::of(&[Kind::A(0), Kind::M]);
        d.b = IntSet::at_least(3);
        let v = d.to_json();
        assert_eq!(v["finite"], json!(["a:0"]));
        assert_eq!(v["ranges"], json!([{"family":"db","lower":3,"upper":null}]));
        assert_eq!(v["constants"], json!(["M"]));
        let c = CurveSet { alpha: IntSet::at_least(0), beta: IntSet::at_least(1) };
        assert_eq!(c.to_json()["ranges"][0]["pairing"], "alpha^j,beta^{j+1}");
    }

    fn arb_set() -> impl Strategy<Value = IntSet> {
        let bound = prop_oneof![Just(None), (-6i64..6).prop_map(Some)];
        prop::collection::vec((bound.clone(), bound), 0..4).prop_map(IntSet::from_parts)
    }

    proptest! {
        #[test]
        fn set_ops_match_pointwise(x in arb_set(), y in arb_set(), k in -3i64..3) {
            for j in -12..12 {
                prop_assert_eq!(x.union(&y).contains(j), x.contains(j) || y.contains(j));
                prop_assert_eq!(x.intersect(&y).contains(j), x.contains(j) && y.contains(j));
                prop_assert_eq!(x.shift(k).contains(j), x.contains(j - k));
            }
            prop_assert_eq!(IntSet::from_parts(x.parts().to_vec()), x.clone());
        }

        #[test]
        fn zeta_is_invertible_on_sets(a in arb_set(), b in arb_set(), m: bool, mp: bool) {
            let d = DerivedSet { a, b, m, mp };
            prop_assert_eq!(d.zeta().zeta_inv(), d.clone());
            prop_assert_eq!(d.zeta().genus0_curves(), d.genus0_curves().zeta());
            let c = d.genus0_curves();
            prop_assert_eq!(c.zeta_inv().zeta(), c);
        }
    }
}
