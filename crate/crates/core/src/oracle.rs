//! Brute-force semistability on the standard heart.
//!
//! The catalog modules are written down with 0/1 matrices and every triple
//! of subspaces over the two-element field is tried, so subrepresentations
//! come from exhaustive search rather than from any structure theory.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::{Mutex, OnceLock};

use num_traits::Signed;
use serde::Serialize;

use crate::classifier::{classify_full, semistable_with};
use crate::error::{Error, Result};
use crate::exact_angles::{phase_from_charge, GaussianRational, Phase};
use crate::quiver_core::{catalog, ExcObject, KClass, Kind};
use crate::stability::{make_point, CentralCharge, ChartId, Family, StabilityPoint};

pub const DEFAULT_CAP: usize = 12;
/// Subspaces are bitmasks over the vectors of a space, so one vertex holds
/// at most 64 vectors.
const MAX_VERTEX_DIM: usize = 6;

/// A linear map over the two-element field, stored as the images of the
/// basis vectors (bit `i` is coordinate `i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Map {
    pub cols: Vec<u8>,
}

impl F2Map {
    fn from_fn(n: usize, f: impl Fn(usize) -> Option<usize>) -> Self {
        F2Map { cols: (0..n).map(|i| f(i).map_or(0, |j| 1u8 << j)).collect() }
    }

    pub fn apply(&self, v: u8) -> u8 {
        self.cols.iter().enumerate().filter(|(i, _)| v >> i & 1 == 1).fold(0, |acc, (_, c)| acc ^ c)
    }
}

/// Which of the module families a representation belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Module {
    E1(usize),
    E2(usize),
    E3(usize),
    E4(usize),
    M,
    Mp,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRep {
    pub module: Module,
    /// Dimensions at `(x, z, y)`.
    pub dims: [usize; 3],
    pub xz: F2Map,
    pub xy: F2Map,
    pub yz: F2Map,
}

impl MatrixRep {
    pub fn class(&self) -> KClass {
        KClass::new(self.dims[0] as i64, self.dims[1] as i64, self.dims[2] as i64)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// Drops the last coordinate.
fn pi_plus(n: usize) -> F2Map {
    F2Map::from_fn(n, |i| (i + 1 < n).then_some(i))
}

/// Drops the first coordinate.
fn pi_minus(n: usize) -> F2Map {
    F2Map::from_fn(n, |i| i.checked_sub(1))
}

/// Pads a zero at the end.
fn j_plus(n: usize) -> F2Map {
    F2Map::from_fn(n, Some)
}

/// Pads a zero at the front.
fn j_minus(n: usize) -> F2Map {
    F2Map::from_fn(n, |i| Some(i + 1))
}

fn id(n: usize) -> F2Map {
    F2Map::from_fn(n, Some)
}

fn zero(n: usize) -> F2Map {
    F2Map::from_fn(n, |_| None)
}

pub fn module_rep(m: Module) -> MatrixRep {
    let (dims, xz, xy, yz) = match m {
        Module::E1(k) => ([k + 1, k, k], pi_plus(k + 1), pi_minus(k + 1), id(k)),
        Module::E2(k) => ([k, k + 1, k + 1], j_plus(k), j_minus(k), id(k + 1)),
        Module::E3(k) => ([k, k + 1, k], j_plus(k), id(k), j_minus(k)),
        Module::E4(k) => ([k + 1, k, k + 1], pi_plus(k + 1), id(k + 1), pi_minus(k + 1)),
        Module::M => ([0, 0, 1], zero(0), zero(0), zero(1)),
        Module::Mp => ([1, 1, 0], id(1), zero(1), zero(0)),
    };
    MatrixRep { module: m, dims, xz, xy, yz }
}

/// The module `R` and the shift `k` with `obj = R[k]`.
pub fn rep_of(obj: ExcObject) -> (MatrixRep, i64) {
    let (m, s) = match obj.kind {
        Kind::A(j) if j <= 0 => (Module::E1((-j) as usize), 0),
        Kind::A(j) => (Module::E2((j - 1) as usize), 1),
        Kind::B(j) if j <= 0 => (Module::E4((-j) as usize), 0),
        Kind::B(j) => (Module::E3((j - 1) as usize), 1),
        Kind::M => (Module::M, 0),
        Kind::Mp => (Module::Mp, 0),
    };
    (module_rep(m), s + obj.shift)
}

/// All subspaces of the space of dimension `n`, each as the bitmask of its
/// vectors.
fn subspaces(n: usize) -> Vec<u64> {
    let mut seen: HashSet<u64> = HashSet::from([1u64]);
    let mut frontier = vec![1u64];
    while let Some(s) = frontier.pop() {
        for v in 1..(1u64 << n) {
            if s >> v & 1 == 1 {
                continue;
            }
            let mut t = s;
            for w in 0..(1u64 << n) {
                if s >> w & 1 == 1 {
                    t |= 1 << (w ^ v);
                }
            }
            if seen.insert(t) {
                frontier.push(t);
            }
        }
    }
    let mut out: Vec<u64> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

fn image(f: &F2Map, s: u64) -> u64 {
    (0..64u32).filter(|v| s >> v & 1 == 1).fold(0u64, |acc, v| acc | 1 << f.apply(v as u8))
}

fn dim_of(s: u64) -> i64 {
    s.count_ones().trailing_zeros() as i64
}

fn compute_subreps(r: &MatrixRep) -> Vec<KClass> {
    let [nx, nz, ny] = r.dims;
    let (sx, sz, sy) = (subspaces(nx), subspaces(nz), subspaces(ny));
    let mut out = BTreeSet::new();
    for &ux in &sx {
        let to_z = image(&r.xz, ux);
        let to_y = image(&r.xy, ux);
        for &uy in sy.iter().filter(|&&uy| to_y & !uy == 0) {
            let need_z = to_z | image(&r.yz, uy);
            for &uz in sz.iter().filter(|&&uz| need_z & !uz == 0) {
                out.insert((dim_of(ux), dim_of(uz), dim_of(uy)));
            }
        }
    }
    out.into_iter().map(|(x, z, y)| KClass::new(x, z, y)).collect()
}

fn cache() -> &'static Mutex<HashMap<Module, Vec<KClass>>> {
    static CACHE: OnceLock<Mutex<HashMap<Module, Vec<KClass>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Dimension vectors of all subrepresentations, including 0 and `R`.
pub fn subrep_dim_vectors(r: &MatrixRep, cap: usize) -> Result<Vec<KClass>> {
    if r.total_dim() > cap || r.dims.iter().any(|&d| d > MAX_VERTEX_DIM) {
        return Err(Error::CapExceeded { dim: r.total_dim(), cap });
    }
    if let Some(v) = cache().lock().expect("cache lock").get(&r.module) {
        return Ok(v.clone());
    }
    let v = compute_subreps(r);
    cache().lock().expect("cache lock").insert(r.module, v.clone());
    Ok(v)
}

fn check_heart(z: &CentralCharge) -> Result<()> {
    for (name, c) in [("x", &z.x), ("z", &z.z), ("y", &z.y)] {
        if !c.im.is_positive() {
            return Err(Error::Precondition(format!("Im Z(S_{name}) must be positive, got {c}")));
        }
    }
    Ok(())
}

pub fn king_phase(r: &MatrixRep, z: &CentralCharge) -> Result<Phase> {
    check_heart(z)?;
    phase_from_charge(&z.of_class(r.class()), 0)
}

pub fn king_semistable(r: &MatrixRep, z: &CentralCharge, cap: usize) -> Result<bool> {
    let top = king_phase(r, z)?;
    let d = r.class();
    for f in subrep_dim_vectors(r, cap)? {
        if f == KClass::default() || f == d {
            continue;
        }
        if phase_from_charge(&z.of_class(f), 0)? > top {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The point of chart `(a^0, M, b^1)` whose heart is the representations,
/// for the central charge given on the simples.
pub fn heart_point(z: &CentralCharge) -> Result<StabilityPoint> {
    check_heart(z)?;
    make_point(ChartId::new(Family::AMB, 0), [z.x.clone(), z.y.clone(), -z.z.clone()], [0, 0, 1])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub object: String,
    pub oracle: bool,
    pub classifier: bool,
    pub phase_match: bool,
}

impl CheckRow {
    pub fn agrees(&self) -> bool {
        self.oracle == self.classifier && self.phase_match
    }
}

/// Compares the oracle with the classifier on every catalog object with
/// index at most `bound` whose module fits under `cap`.
pub fn cross_check(z: &CentralCharge, bound: i64, cap: usize) -> Result<Vec<CheckRow>> {
    let pt = heart_point(z)?;
    let (c, res) = classify_full(&pt)?;
    let mut rows = Vec::new();
    for k in catalog(bound) {
        let obj = k.obj();
        let (rep, shift) = rep_of(obj);
        if rep.total_dim() > cap {
            continue;
        }
        let oracle = king_semistable(&rep, z, cap)?;
        let ours = semistable_with(&c, &res, obj)?;
        let phase_match = match (&ours, oracle) {
            (Some(ph), true) => *ph == king_phase(&rep, z)?.add_int(shift),
            (None, false) => true,
            _ => false,
        };
        rows.push(CheckRow { object: k.to_string(), oracle, classifier: ours.is_some(), phase_match });
    }
    Ok(rows)
}

/// Parses `"i,3i,2i"` as charges of `(S_x, S_z, S_y)`.
pub fn parse_simple_charges(s: &str) -> Result<CentralCharge> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Invalid(format!("expected three charges, got {s:?}")));
    }
    Ok(CentralCharge {
        x: GaussianRational::parse(parts[0])?,
        z: GaussianRational::parse(parts[1])?,
        y: GaussianRational::parse(parts[2])?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver_core::class_of;

    fn cc(s: &str) -> CentralCharge {
        parse_simple_charges(s).unwrap()
    }

    #[test]
    fn module_shapes() {
        let e1 = module_rep(Module::E1(1));
        assert_eq!(e1.dims, [2, 1, 1]);
        assert_eq!(e1.xz.cols, vec![1, 0]);
        assert_eq!(e1.xy.cols, vec![0, 1]);
        assert_eq!(e1.yz.cols, vec![1]);
        let mp = module_rep(Module::Mp);
        assert_eq!(mp.xz.cols, vec![1]);
        for k in crate::quiver_core::catalog(4) {
            let (r, s) = rep_of(k.obj());
            assert_eq!(class_of(ExcObject::new(k, 0)), if s % 2 == 0 { r.class() } else { -r.class() });
        }
    }

    #[test]
    fn subspace_counts() {
        // Gaussian binomials at q = 2
        assert_eq!(subspaces(0).len(), 1);
        assert_eq!(subspaces(1).len(), 2);
        assert_eq!(subspaces(2).len(), 5);
        assert_eq!(subspaces(3).len(), 16);
        assert_eq!(subspaces(4).len(), 67);
    }

    #[test]
    fn subrep_examples() {
        let m = subrep_dim_vectors(&module_rep(Module::M), DEFAULT_CAP).unwrap();
        assert_eq!(m, vec![KClass::new(0, 0, 0), KClass::new(0, 0, 1)]);
        let mp = subrep_dim_vectors(&module_rep(Module::Mp), DEFAULT_CAP).unwrap();
        assert_eq!(mp, vec![KClass::new(0, 0, 0), KClass::new(0, 1, 0), KClass::new(1, 1, 0)]);
        let e10 = subrep_dim_vectors(&module_rep(Module::E1(0)), DEFAULT_CAP).unwrap();
        assert_eq!(e10, vec![KClass::new(0, 0, 0), KClass::new(1, 0, 0)]);
        assert_eq!(rep_of(Kind::A(0).obj()).0, module_rep(Module::E1(0)));
        assert!(matches!(
            subrep_dim_vectors(&module_rep(Module::E1(5)), DEFAULT_CAP),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn king_examples() {
        let mp = module_rep(Module::Mp);
        assert!(king_semistable(&mp, &cc("-1+i,1+i,i"), DEFAULT_CAP).unwrap());
        assert!(!king_semistable(&mp, &cc("1+i,-1+i,i"), DEFAULT_CAP).unwrap());
        assert!(king_semistable(&module_rep(Module::M), &cc("1+i,-1+i,i"), DEFAULT_CAP).unwrap());
        assert!(matches!(king_phase(&mp, &cc("1-i,i,i")), Err(Error::Precondition(_))));
    }

    #[test]
    fn cross_check_all_semistable_case() {
        let rows = cross_check(&cc("i,3i,2i"), 3, DEFAULT_CAP).unwrap();
        assert!(rows.len() >= 14);
        assert!(rows.iter().all(|r| r.oracle && r.classifier && r.phase_match), "{rows:?}");
    }

    #[test]
    fn cross_check_generic_case() {
        let rows = cross_check(&cc("-2+i,i,2+i"), 3, DEFAULT_CAP).unwrap();
        assert!(rows.iter().all(CheckRow::agrees), "{rows:?}");
    }
}
