//! Exact complex numbers with rational coordinates and exact real phases.
//!
//! A phase is stored as a canonical direction plus an integer sheet, so two
//! phases compare by sheet first and by the sign of a cross product second.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q` or `p` with decimal integers and an optional sign.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Wire format: always `p/q` with `q > 0`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational::new(int(re), int(im))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn cross(&self, other: &Self) -> Rational {
        &self.re * &other.im - &self.im * &other.re
    }

    pub fn dot(&self, other: &Self) -> Rational {
        &self.re * &other.re + &self.im * &other.im
    }

    /// Squared modulus; the modulus itself is never needed.
    pub fn norm2(&self) -> Rational {
        self.dot(self)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        GaussianRational::new(&self.re * k, &self.im * k)
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&int(k))
    }

    /// Closed upper half-plane without the non-negative real axis.
    pub fn is_canonical(&self) -> bool {
        self.im.is_positive() || (self.im.is_zero() && self.re.is_negative())
    }

    /// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i` with rational `a`, `b`.
    pub fn parse(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Invalid(format!("not a Gaussian rational: {s:?}"));
        if t.is_empty() {
            return Err(bad());
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(GaussianRational::new(parse_rational(&t)?, Rational::zero()));
        };
        // split at the last sign that is not leading and not part of an exponent-free fraction
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .last();
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            x => parse_rational(x.strip_prefix('+').unwrap_or(x)).map_err(|_| bad())?,
        };
        Ok(GaussianRational::new(parse_rational(re).map_err(|_| bad())?, im))
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = format_rational(&self.re);
        let im = format_rational(&self.im.abs());
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{re}{sign}{im}i")
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: GaussianRational) -> GaussianRational {
        &self + &o
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: GaussianRational) -> GaussianRational {
        &self - &o
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct GaussianWire {
    re: String,
    im: String,
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GaussianWire { re: format_rational(&self.re), im: format_rational(&self.im) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = GaussianWire::deserialize(d)?;
        let re = parse_rational(&w.re).map_err(serde::de::Error::custom)?;
        let im = parse_rational(&w.im).map_err(serde::de::Error::custom)?;
        Ok(GaussianRational::new(re, im))
    }
}

/// The real number in `(sheet, sheet + 1]` whose exponential is positively
/// proportional to `(-1)^sheet * dir`.
#[derive(Clone)]
pub struct Phase {
    dir: GaussianRational,
    sheet: i64,
}

fn parity_sign(z: &GaussianRational, sheet: i64) -> GaussianRational {
    if sheet.is_even() {
        z.clone()
    } else {
        -z
    }
}

impl Phase {
    pub fn new(dir: GaussianRational, sheet: i64) -> Result<Phase> {
        if !dir.is_canonical() {
            return Err(Error::Invalid(format!("phase direction {dir} is not canonical")));
        }
        Ok(Phase { dir, sheet })
    }

    pub fn dir(&self) -> &GaussianRational {
        &self.dir
    }

    pub fn sheet(&self) -> i64 {
        self.sheet
    }

    /// A charge vector with this phase.
    pub fn charge_direction(&self) -> GaussianRational {
        parity_sign(&self.dir, self.sheet)
    }

    pub fn add_int(&self, k: i64) -> Phase {
        Phase { dir: self.dir.clone(), sheet: self.sheet + k }
    }

    /// Whether `z` points along this phase (positively).
    pub fn is_direction_of(&self, z: &GaussianRational) -> bool {
        let d = self.charge_direction();
        d.cross(z).is_zero() && d.dot(z).is_positive()
    }

    /// Floating-point value, for display only.
    pub fn approx(&self) -> f64 {
        let re = self.dir.re.to_f64().unwrap_or(0.0);
        let im = self.dir.im.to_f64().unwrap_or(0.0);
        let mut a = im.atan2(re) / std::f64::consts::PI;
        if a <= 0.0 {
            a += 1.0;
        }
        a + self.sheet as f64
    }
}

pub fn phase_from_charge(z: &GaussianRational, sheet: i64) -> Result<Phase> {
    let dir = parity_sign(z, sheet);
    if !dir.is_canonical() {
        return Err(Error::SheetMismatch { charge: z.to_string(), sheet });
    }
    Ok(Phase { dir, sheet })
}

pub fn phase_compare(p: &Phase, q: &Phase) -> Ordering {
    p.cmp(q)
}

impl PartialEq for Phase {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Phase {}

impl PartialOrd for Phase {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Phase {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.sheet.cmp(&other.sheet) {
            Ordering::Equal => {}
            o => return o,
        }
        // both directions sit in the half-open upper half-turn, so the cross
        // product sign is the angular order
        let c = self.dir.cross(&other.dir);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Phase({}, sheet {} ~ {:.4})", self.dir, self.sheet, self.approx())
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.4}", self.approx())
    }
}

#[derive(Serialize, Deserialize)]
struct PhaseWire {
    dir: GaussianRational,
    sheet: i64,
}

impl Serialize for Phase {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PhaseWire { dir: self.dir.clone(), sheet: self.sheet }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Phase {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = PhaseWire::deserialize(d)?;
        Phase::new(w.dir, w.sheet).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Closure {
    OpenOpen,
    OpenClosed,
    ClosedOpen,
}

/// The unique phase of `w` in the unit window above `a` with the given
/// endpoint convention.
pub fn arg_in_window(w: &GaussianRational, a: &Phase, closure: Closure) -> Result<Phase> {
    if w.is_zero() {
        return Err(Error::ZeroCharge("argument of zero".into()));
    }
    // the representatives of w are 2 apart, so exactly one lies in
    // (a.sheet, a.sheet + 2], which contains every admissible window
    let s = a.sheet;
    let cand = phase_from_charge(w, s).or_else(|_| phase_from_charge(w, s + 1))?;
    let upper = a.add_int(1);
    let lower_ok = match closure {
        Closure::ClosedOpen => *a <= cand,
        _ => *a < cand,
    };
    let upper_ok = match closure {
        Closure::OpenClosed => cand <= upper,
        _ => cand < upper,
    };
    if lower_ok && upper_ok {
        Ok(cand)
    } else {
        Err(Error::OutsideWindow { w: w.to_string(), lower: format!("{a:?}") })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HalfPlane {
    Plus,
    Minus,
    OnLine,
}

/// Which side of the line through `v` the vector `w` lies on.
pub fn halfplane_side(w: &GaussianRational, v: &GaussianRational) -> HalfPlane {
    let c = v.cross(w);
    if c.is_positive() {
        HalfPlane::Plus
    } else if c.is_negative() {
        HalfPlane::Minus
    } else {
        HalfPlane::OnLine
    }
}

/// Best rational approximation of `x` with denominator at most `max_den`.
pub fn best_rational(x: f64, max_den: u64) -> Rational {
    let max_den = max_den.max(1) as i128;
    let neg = x < 0.0;
    let mut v = x.abs();
    let (mut p0, mut q0, mut p1, mut q1): (i128, i128, i128, i128) = (0, 1, 1, 0);
    for _ in 0..64 {
        let a = v.floor();
        if a > 1e18 {
            break;
        }
        let a = a as i128;
        let (p2, q2) = (a * p1 + p0, a * q1 + q0);
        if q2 > max_den {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = v - a as f64;
        if frac < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    if q1 == 0 {
        return Rational::zero();
    }
    let r = Rational::new(BigInt::from(p1), BigInt::from(q1));
    if neg {
        -r
    } else {
        r
    }
}

/// Converts a (radius, decimal phase) pair into a nearby exact charge and the
/// sheet of the phase. The result is approximate by construction.
pub fn approx_charge(radius: f64, phase: f64, max_den: u64) -> Result<(GaussianRational, i64)> {
    if !(radius.is_finite() && phase.is_finite()) || radius <= 0.0 {
        return Err(Error::Invalid(format!("bad polar input ({radius}, {phase})")));
    }
    let sheet = phase.ceil() as i64 - 1;
    let ang = std::f64::consts::PI * phase;
    let z = GaussianRational::new(
        best_rational(radius * ang.cos(), max_den),
        best_rational(radius * ang.sin(), max_den),
    );
    if z.is_zero() {
        return Err(Error::Invalid("charge rounds to zero".into()));
    }
    phase_from_charge(&z, sheet)?;
    Ok((z, sheet))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        GaussianRational::parse(s).unwrap()
    }

    fn ph(s: &str, n: i64) -> Phase {
        phase_from_charge(&g(s), n).unwrap()
    }

    #[test]
    fn parses_literals() {
        assert_eq!(g("i"), GaussianRational::from_ints(0, 1));
        assert_eq!(g("-i"), GaussianRational::from_ints(0, -1));
        assert_eq!(g("3i"), GaussianRational::from_ints(0, 3));
        assert_eq!(g("-1+2i"), GaussianRational::from_ints(-1, 2));
        assert_eq!(g("1/2-3/4i"), GaussianRational::new(rat(1, 2), rat(-3, 4)));
        assert_eq!(g("-5"), GaussianRational::from_ints(-5, 0));
        assert!(GaussianRational::parse("1+").is_err());
        assert_eq!(g(&g("-7/3+2/5i").to_string()), g("-7/3+2/5i"));
    }

    #[test]
    fn phase_from_charge_examples() {
        let p = ph("i", 0);
        assert_eq!(p.sheet(), 0);
        assert!((p.approx() - 0.5).abs() < 1e-12);
        let p = ph("-1-i", 1);
        assert_eq!(p.dir(), &g("1+i"));
        assert!((p.approx() - 1.25).abs() < 1e-12);
        assert!(matches!(phase_from_charge(&g("1+i"), 1), Err(Error::SheetMismatch { .. })));
        // positive real axis is only reachable from odd sheets
        assert!(phase_from_charge(&g("1"), 0).is_err());
        assert!((ph("1", -1).approx()).abs() < 1e-12);
    }

    #[test]
    fn compare_examples() {
        assert_eq!(phase_compare(&ph("1+i", 0), &ph("1+2i", 0)), Ordering::Less);
        assert_eq!(phase_compare(&ph("2+2i", 0), &ph("1+i", 0)), Ordering::Equal);
        assert_eq!(phase_compare(&ph("1", 1), &ph("i", 0)), Ordering::Greater);
        assert_eq!(phase_compare(&ph("-1", 0), &ph("-1+i", 0)), Ordering::Greater);
    }

    #[test]
    fn add_int_round_trip() {
        let p = ph("i", 0);
        assert!((p.add_int(1).approx() - 1.5).abs() < 1e-12);
        let q = ph("1+i", 0).add_int(-2);
        assert_eq!(q.sheet(), -2);
        assert_eq!(q.add_int(5).add_int(-5), q);
    }

    #[test]
    fn window_examples() {
        let a = ph("1+i", 0);
        let r = arg_in_window(&g("i"), &a, Closure::OpenOpen).unwrap();
        assert_eq!(r, ph("i", 0));
        let r = arg_in_window(&g("-1-i"), &a, Closure::OpenClosed).unwrap();
        assert_eq!(r, ph("-1-i", 1));
        assert!(matches!(
            arg_in_window(&g("-1-i"), &a, Closure::OpenOpen),
            Err(Error::OutsideWindow { .. })
        ));
        let r = arg_in_window(&g("1+i"), &a, Closure::ClosedOpen).unwrap();
        assert_eq!(r, a);
        assert!(arg_in_window(&g("1+i"), &a, Closure::OpenClosed).is_err());
        // window starting on an even sheet boundary wraps to the next sheet
        let r = arg_in_window(&g("1-i"), &ph("-1", 0), Closure::OpenOpen).unwrap();
        assert!((r.approx() - 1.75).abs() < 1e-12);
    }

    #[test]
    fn halfplane_examples() {
        assert_eq!(halfplane_side(&g("i"), &g("1")), HalfPlane::Plus);
        assert_eq!(halfplane_side(&g("-2"), &g("1")), HalfPlane::OnLine);
        assert_eq!(halfplane_side(&g("1-i"), &g("1+i")), HalfPlane::Minus);
    }

    #[test]
    fn wire_round_trip() {
        let z = g("-3/4+5i");
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, r#"{"re":"-3/4","im":"5/1"}"#);
        let back: GaussianRational = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z);
        let p = ph("-1-i", 1);
        let s = serde_json::to_string(&p).unwrap();
        let back: Phase = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Phase>(r#"{"dir":{"re":"1","im":"-1"},"sheet":0}"#).is_err());
    }

    #[test]
    fn approximate_converter() {
        let (z, n) = approx_charge(2.0, 0.25, 64).unwrap();
        assert_eq!(n, 0);
        let p = phase_from_charge(&z, n).unwrap();
        assert!((p.approx() - 0.25).abs() < 1e-3);
        let (z, n) = approx_charge(1.0, 1.4371, 1000).unwrap();
        assert_eq!(n, 1);
        assert!((phase_from_charge(&z, n).unwrap().approx() - 1.4371).abs() < 1e-3);
        assert_eq!(best_rational(0.333333, 10), rat(1, 3));
    }
}
