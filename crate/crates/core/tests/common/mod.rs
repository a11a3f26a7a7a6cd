//! Random valid points and a floating-point cross-check used by the
//! integration tests.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

use triquiver::exact_angles::{phase_from_charge, rat, GaussianRational};
use triquiver::stability::{make_point, ChartId, Family, StabilityPoint};

fn small_rational<R: Rng>(rng: &mut R, span: i64) -> num_rational::BigRational {
    let den = *[1, 1, 1, 2, 3].choose(rng).unwrap();
    rat(rng.gen_range(-span..=span), den)
}

pub fn random_charge<R: Rng>(rng: &mut R, span: i64) -> GaussianRational {
    loop {
        let z = GaussianRational::new(small_rational(rng, span), small_rational(rng, span));
        if !z.is_zero() {
            return z;
        }
    }
}

/// A valid point of `chart` with small charges. Some charges are chosen
/// parallel to earlier ones so that the equality rows get hit too.
pub fn random_point<R: Rng>(rng: &mut R, chart: ChartId) -> StabilityPoint {
    for _ in 0..100_000 {
        let mut zs: Vec<GaussianRational> = Vec::with_capacity(3);
        for i in 0..3 {
            if i > 0 && rng.gen_bool(0.2) {
                let base = zs[rng.gen_range(0..i)].clone();
                let k = rat(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 }, rng.gen_range(1..=2));
                zs.push(base.scale(&k));
            } else {
                zs.push(random_charge(rng, 4));
            }
        }
        let s0 = rng.gen_range(-1..=1);
        let mut sheets = [s0, 0, 0];
        for s in sheets.iter_mut().skip(1) {
            *s = s0 + rng.gen_range(-1..=2);
        }
        if zs.iter().zip(sheets).any(|(z, s)| phase_from_charge(z, s).is_err()) {
            continue;
        }
        if let Ok(p) = make_point(chart, zs.try_into().unwrap(), sheets) {
            return p;
        }
    }
    panic!("no valid point found for {chart}");
}

pub fn random_chart<R: Rng>(rng: &mut R, family: Family) -> ChartId {
    ChartId::new(family, rng.gen_range(-3..=3))
}

/// Floating-point representative of the phase of `(re, im)` in `(lo, lo + 1)`,
/// with `strict_hi = false` allowing the right endpoint.
pub fn float_arg(re: f64, im: f64, lo: f64, closed_hi: bool) -> Option<f64> {
    let mut x = im.atan2(re) / std::f64::consts::PI;
    while x <= lo + 1e-12 {
        x += 2.0;
    }
    while x > lo + 2.0 + 1e-12 {
        x -= 2.0;
    }
    let hi = lo + 1.0;
    if x < hi - 1e-12 || (closed_hi && (x - hi).abs() <= 1e-12) {
        Some(x)
    } else {
        None
    }
}

pub fn to_f64(z: &GaussianRational) -> (f64, f64) {
    use num_traits::ToPrimitive;
    (z.re.to_f64().unwrap(), z.im.to_f64().unwrap())
}

/// `(N, u)` of a row-7 point of `b b M'` or `M b b`, by a linear scan over
/// floating-point phases of `b^j = b^p - (j - p) delta`.
pub fn float_n_u(p: &StabilityPoint) -> (i64, i64) {
    const EPS: f64 = 1e-12;
    let idx = p.chart().index;
    let ph: Vec<f64> = p.phases().iter().map(|x| x.approx()).collect();
    let cs: Vec<(f64, f64)> = p.charges().iter().map(to_f64).collect();
    let (bp, bp1, lower, upper, phi_bp) = match p.chart().family {
        Family::BBMp => {
            let (b0, b1, mp) = (cs[0], cs[1], cs[2]);
            let delta = (b0.0 - b1.0, b0.1 - b1.1);
            let m = (delta.0 - mp.0, delta.1 - mp.1);
            let t = float_arg(delta.0, delta.1, ph[0] - 1.0, false).unwrap();
            let big_u = float_arg(-m.0, -m.1, t, false).unwrap();
            (b0, b1, ph[2], big_u, (t, ph[0]))
        }
        Family::MBB => {
            let (m, b0, b1) = (cs[0], cs[1], cs[2]);
            let delta = (b0.0 - b1.0, b0.1 - b1.1);
            let mp = (delta.0 - m.0, delta.1 - m.1);
            let t = float_arg(delta.0, delta.1, ph[1] - 1.0, false).unwrap();
            let big_v = float_arg(mp.0, mp.1, t, false).unwrap();
            (b0, b1, big_v, ph[0] + 1.0, (t, ph[1]))
        }
        f => panic!("no row 7 in {f}"),
    };
    let (t, _) = phi_bp;
    let delta = (bp.0 - bp1.0, bp.1 - bp1.1);
    let phi = |j: i64| {
        let k = (j - idx) as f64;
        float_arg(bp.0 - k * delta.0, bp.1 - k * delta.1, t, false).unwrap()
    };
    let range = idx - 400..=idx + 400;
    let n = range.clone().filter(|&j| phi(j) < lower - EPS).max().unwrap();
    let u = range.filter(|&j| phi(j) <= upper + EPS).max().unwrap();
    (n, u)
}
