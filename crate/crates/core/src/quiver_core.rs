//! K-theory, the catalog of exceptional objects, hom profiles and the
//! autoequivalence zeta.
//!
//! Vertices are ordered `(x, z, y)` with arrows `x -> z`, `x -> y`, `y -> z`.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct KClass {
    pub x: i64,
    pub z: i64,
    pub y: i64,
}

impl KClass {
    pub const fn new(x: i64, z: i64, y: i64) -> Self {
        KClass { x, z, y }
    }

    pub fn scale(self, k: i64) -> Self {
        KClass::new(self.x * k, self.z * k, self.y * k)
    }

    pub fn coords(self) -> [i64; 3] {
        [self.x, self.z, self.y]
    }
}

impl Add for KClass {
    type Output = KClass;
    fn add(self, o: KClass) -> KClass {
        KClass::new(self.x + o.x, self.z + o.z, self.y + o.y)
    }
}

impl Sub for KClass {
    type Output = KClass;
    fn sub(self, o: KClass) -> KClass {
        KClass::new(self.x - o.x, self.z - o.z, self.y - o.y)
    }
}

impl Neg for KClass {
    type Output = KClass;
    fn neg(self) -> KClass {
        KClass::new(-self.x, -self.z, -self.y)
    }
}

pub const DELTA: KClass = KClass::new(1, 1, 1);

/// Euler form of the path algebra: `sum d_v e_v` minus one term per arrow.
pub fn euler_form(d: KClass, e: KClass) -> i64 {
    d.x * e.x + d.z * e.z + d.y * e.y - (d.x * e.z + d.x * e.y + d.y * e.z)
}

/// Shift-free exceptional object, which is also the generator of a derived point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    A(i64),
    B(i64),
    M,
    Mp,
}

impl Kind {
    pub fn class(self) -> KClass {
        match self {
            Kind::A(m) if m <= 0 => KClass::new(1 - m, -m, -m),
            Kind::A(m) => -KClass::new(m - 1, m, m),
            Kind::B(m) if m <= 0 => KClass::new(1 - m, -m, 1 - m),
            Kind::B(m) => -KClass::new(m - 1, m, m - 1),
            Kind::M => KClass::new(0, 0, 1),
            Kind::Mp => KClass::new(1, 1, 0),
        }
    }

    pub fn zeta(self) -> Kind {
        match self {
            Kind::A(m) => Kind::B(m),
            Kind::B(m) => Kind::A(m - 1),
            Kind::M => Kind::Mp,
            Kind::Mp => Kind::M,
        }
    }

    pub fn zeta_inv(self) -> Kind {
        match self {
            Kind::B(m) => Kind::A(m),
            Kind::A(m) => Kind::B(m + 1),
            Kind::M => Kind::Mp,
            Kind::Mp => Kind::M,
        }
    }

    pub fn obj(self) -> ExcObject {
        ExcObject { kind: self, shift: 0 }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::A(m) => write!(f, "a:{m}"),
            Kind::B(m) => write!(f, "b:{m}"),
            Kind::M => write!(f, "M"),
            Kind::Mp => write!(f, "M'"),
        }
    }
}

/// Derived points are shift classes of exceptional objects, so they are
/// identified with the shift-free kind.
pub type DerivedPoint = Kind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExcObject {
    pub kind: Kind,
    pub shift: i64,
}

impl ExcObject {
    pub fn new(kind: Kind, shift: i64) -> Self {
        ExcObject { kind, shift }
    }

    pub fn shifted(self, k: i64) -> Self {
        ExcObject { kind: self.kind, shift: self.shift + k }
    }

    pub fn derived_point(self) -> DerivedPoint {
        self.kind
    }
}

pub fn class_of(obj: ExcObject) -> KClass {
    let c = obj.kind.class();
    if obj.shift.rem_euclid(2) == 0 {
        c
    } else {
        -c
    }
}

pub fn zeta(obj: ExcObject) -> ExcObject {
    ExcObject { kind: obj.kind.zeta(), shift: obj.shift }
}

pub fn zeta_point(p: DerivedPoint) -> DerivedPoint {
    p.zeta()
}

impl fmt::Display for ExcObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shift == 0 {
            write!(f, "{}", self.kind)
        } else {
            write!(f, "{}[{}]", self.kind, self.shift)
        }
    }
}

impl FromStr for ExcObject {
    type Err = Error;

    /// `a:3`, `b:-2`, `M`, `M'`, each optionally followed by `[k]`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::Invalid(format!("not an object literal: {s:?}"));
        let (body, shift) = match t.strip_suffix(']') {
            Some(rest) => {
                let (b, k) = rest.split_once('[').ok_or_else(bad)?;
                (b, k.trim().parse::<i64>().map_err(|_| bad())?)
            }
            None => (t, 0),
        };
        let kind = match body.trim() {
            "M" => Kind::M,
            "M'" | "Mp" => Kind::Mp,
            b => {
                let (fam, idx) = b.split_once(':').ok_or_else(bad)?;
                let m = idx.trim().parse::<i64>().map_err(|_| bad())?;
                match fam.trim() {
                    "a" => Kind::A(m),
                    "b" => Kind::B(m),
                    _ => return Err(bad()),
                }
            }
        };
        Ok(ExcObject { kind, shift })
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let o: ExcObject = s.parse()?;
        if o.shift != 0 {
            return Err(Error::Invalid(format!("derived point literal carries a shift: {s:?}")));
        }
        Ok(o.kind)
    }
}

macro_rules! string_serde {
    ($t:ty) => {
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }
        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

string_serde!(ExcObject);
string_serde!(Kind);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NCCurve {
    A,
    B,
    Alpha(i64),
    Beta(i64),
}

impl NCCurve {
    /// Generators of the curve: a strong exceptional pair for genus 1, the
    /// three derived points whose joint semistability defines a genus 0 curve.
    pub fn generators(self) -> Vec<Kind> {
        match self {
            NCCurve::A => vec![Kind::A(0), Kind::A(1)],
            NCCurve::B => vec![Kind::B(0), Kind::B(1)],
            NCCurve::Alpha(m) => vec![Kind::Mp, Kind::A(m), Kind::B(m + 1)],
            NCCurve::Beta(m) => vec![Kind::M, Kind::B(m), Kind::A(m)],
        }
    }

    pub fn genus(self) -> u32 {
        match self {
            NCCurve::A | NCCurve::B => 1,
            _ => 0,
        }
    }
}

pub fn zeta_curve(c: NCCurve) -> NCCurve {
    match c {
        NCCurve::A => NCCurve::B,
        NCCurve::B => NCCurve::A,
        NCCurve::Alpha(m) => NCCurve::Beta(m),
        NCCurve::Beta(m) => NCCurve::Alpha(m - 1),
    }
}

pub fn zeta_curve_inv(c: NCCurve) -> NCCurve {
    match c {
        NCCurve::A => NCCurve::B,
        NCCurve::B => NCCurve::A,
        NCCurve::Beta(m) => NCCurve::Alpha(m),
        NCCurve::Alpha(m) => NCCurve::Beta(m + 1),
    }
}

impl fmt::Display for NCCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NCCurve::A => write!(f, "A"),
            NCCurve::B => write!(f, "B"),
            NCCurve::Alpha(m) => write!(f, "alpha:{m}"),
            NCCurve::Beta(m) => write!(f, "beta:{m}"),
        }
    }
}

impl FromStr for NCCurve {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("not a curve literal: {s:?}"));
        match s.trim() {
            "A" => Ok(NCCurve::A),
            "B" => Ok(NCCurve::B),
            t => {
                let (fam, idx) = t.split_once(':').ok_or_else(bad)?;
                let m = idx.trim().parse::<i64>().map_err(|_| bad())?;
                match fam {
                    "alpha" => Ok(NCCurve::Alpha(m)),
                    "beta" => Ok(NCCurve::Beta(m)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

string_serde!(NCCurve);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomProfile {
    pub degree: Option<i64>,
    pub dim: u64,
}

/// Nonvanishing degree of `hom^*(x, y)` for shift-free objects, transcribed
/// as a decision table. `None` means every degree vanishes. Pairs not listed
/// fall back to the sign of the Euler form.
pub fn base_degree(x: Kind, y: Kind) -> Option<i64> {
    use Kind::*;
    // hom(X, X) is one-dimensional in degree 0, ext vanishes
    if x == y {
        return Some(0);
    }
    let family = |m: i64, n: i64| {
        if n == m - 1 {
            None
        } else if m <= n {
            Some(0)
        } else {
            Some(1)
        }
    };
    match (x, y) {
        (Mp, A(_)) | (M, B(_)) => Some(0),
        (A(_), Mp) | (B(_), M) => None,
        (A(_), M) | (B(_), Mp) => Some(1),
        (M, Mp) | (Mp, M) => Some(1),
        (B(m), A(n)) => {
            if n == m - 1 {
                None
            } else if m <= n {
                Some(0)
            } else {
                Some(1)
            }
        }
        (A(m), B(n)) => {
            if n == m {
                None
            } else if n > m {
                Some(0)
            } else {
                Some(1)
            }
        }
        (A(m), A(n)) | (B(m), B(n)) => family(m, n),
        _ => {
            let chi = euler_form(x.class(), y.class());
            match chi.signum() {
                1 => Some(0),
                -1 => Some(1),
                _ => None,
            }
        }
    }
}

pub fn hom_profile(x: ExcObject, y: ExcObject) -> HomProfile {
    match base_degree(x.kind, y.kind) {
        None => HomProfile { degree: None, dim: 0 },
        Some(d) => HomProfile {
            // Hom(X[k], Y[l][d]) = Hom(X, Y[d + l - k])
            degree: Some(d + x.shift - y.shift),
            dim: euler_form(x.kind.class(), y.kind.class()).unsigned_abs(),
        },
    }
}

/// Catalog objects with index in `[-bound, bound]`.
pub fn catalog(bound: i64) -> Vec<Kind> {
    let mut v = vec![Kind::M, Kind::Mp];
    for m in -bound..=bound {
        v.push(Kind::A(m));
        v.push(Kind::B(m));
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> ExcObject {
        s.parse().unwrap()
    }

    #[test]
    fn class_examples() {
        assert_eq!(class_of(o("M")), KClass::new(0, 0, 1));
        assert_eq!(class_of(o("a:-1")), KClass::new(2, 1, 1));
        assert_eq!(class_of(o("a:1")), KClass::new(0, -1, -1));
        assert_eq!(class_of(o("a:1[1]")), KClass::new(0, 1, 1));
        assert_eq!(class_of(o("M'")), KClass::new(1, 1, 0));
        assert_eq!(class_of(o("b:0")), KClass::new(1, 0, 1));
        assert_eq!(class_of(o("b:1")), KClass::new(0, -1, 0));
    }

    #[test]
    fn delta_relations() {
        assert_eq!(Kind::M.class() + Kind::Mp.class(), DELTA);
        // E_1^0 + M + E_3^0 with E_3^0 = b^1[-1]
        assert_eq!(Kind::A(0).class() + Kind::M.class() - Kind::B(1).class(), DELTA);
        for m in -50..=50 {
            assert_eq!(Kind::A(m).class() - Kind::A(m + 1).class(), DELTA);
            assert_eq!(Kind::B(m).class() - Kind::B(m + 1).class(), DELTA);
            assert_eq!(Kind::A(m).class(), Kind::Mp.class() + Kind::B(m + 1).class());
            assert_eq!(Kind::B(m).class(), Kind::M.class() + Kind::A(m).class());
        }
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_form(KClass::new(1, 0, 0), KClass::new(0, 1, 1)), -2);
        assert_eq!(euler_form(KClass::new(1, 1, 0), KClass::new(1, 1, 0)), 1);
        assert_eq!(euler_form(KClass::new(0, 0, 1), KClass::new(1, 1, 0)), -1);
    }

    #[test]
    fn hom_examples() {
        assert_eq!(hom_profile(o("M'"), o("a:0")), HomProfile { degree: Some(0), dim: 1 });
        assert_eq!(hom_profile(o("a:0"), o("b:0")), HomProfile { degree: None, dim: 0 });
        assert_eq!(hom_profile(o("a:0"), o("a:1")), HomProfile { degree: Some(0), dim: 2 });
        assert_eq!(hom_profile(o("a:0[1]"), o("a:1")), HomProfile { degree: Some(1), dim: 2 });
        assert_eq!(hom_profile(o("M"), o("M'")).degree, Some(1));
        assert_eq!(hom_profile(o("M'"), o("M")).degree, Some(1));
    }

    #[test]
    fn exceptional_objects_have_trivial_endomorphisms() {
        for k in catalog(20) {
            assert_eq!(hom_profile(k.obj(), k.obj()), HomProfile { degree: Some(0), dim: 1 });
            assert_eq!(euler_form(k.class(), k.class()), 1);
        }
    }

    #[test]
    fn zeta_examples() {
        assert_eq!(zeta(o("a:0")), o("b:0"));
        assert_eq!(zeta(o("b:0")), o("a:-1"));
        assert_eq!(zeta(o("M[2]")), o("M'[2]"));
        assert_eq!(zeta_curve(NCCurve::Beta(3)), NCCurve::Alpha(2));
        assert_eq!(zeta_curve(NCCurve::Alpha(3)), NCCurve::Beta(3));
        for k in catalog(10) {
            assert_eq!(k.zeta().zeta_inv(), k);
            assert_eq!(k.zeta_inv().zeta(), k);
        }
    }

    #[test]
    fn literal_round_trip() {
        for s in ["a:3", "b:-2", "M", "M'", "a:3[1]", "M'[-2]"] {
            assert_eq!(o(s).to_string(), s);
        }
        assert!("c:1".parse::<ExcObject>().is_err());
        assert!("a:".parse::<ExcObject>().is_err());
        assert!("a:1[".parse::<ExcObject>().is_err());
        assert_eq!("alpha:-4".parse::<NCCurve>().unwrap(), NCCurve::Alpha(-4));
    }
}
