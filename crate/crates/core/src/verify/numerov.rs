//! Numerov shooting eigensolver for `-ψ'' + V(x)ψ = Eψ`.
//!
//! The equation is integrated on a uniform grid in a Liouville coordinate `t`
//! with `x = g(t)`: a sinh map on the real line, `x = lo + s·e^t` on a
//! half-line and a logistic map on a finite interval. With `ψ = √g'·u` the
//! equation becomes `u'' = [g'²(V - E) + q(t)]·u` where
//! `q = 2(φ'/φ)² - φ''/φ` for `φ = √g'`. All three maps space points in
//! proportion to the distance from the well or from a finite endpoint, so
//! singular endpoints turn into decaying tails in `t` and long tails cost
//! few points. Both ends use the WKB condition `u'/u = ±√f`.

use serde::Serialize;

use super::xspace::potential_x;
use super::VerifyError;
use crate::families::{FamilyInstance, MaxBound};
use crate::ratfun::rational_to_f64;

/// Distance kept from singular finite endpoints, relative to the length
/// scale of the map.
pub const ENDPOINT_OFFSET: f64 = 1e-6;
pub const DEFAULT_POINTS: usize = 4001;
/// WKB exponent accumulated past the last turning point before the grid is cut.
const TAIL_ACTION: f64 = 20.0;
/// Largest `h²f/12` advanced by the Numerov recurrence.
const STIFF: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LiouvilleMap {
    /// `x = center + s·sinh(t)`
    Sinh { center: f64, scale: f64 },
    /// `x = lo + s·e^t`
    Log { lo: f64, scale: f64 },
    /// `x = lo + (hi - lo)/(1 + e^{-t})`
    Logistic { lo: f64, hi: f64 },
}

impl LiouvilleMap {
    fn x_of(&self, t: f64) -> (f64, f64) {
        match *self {
            LiouvilleMap::Sinh { center, scale } => (center + scale * t.sinh(), f64::INFINITY),
            LiouvilleMap::Log { lo, scale } => (lo + scale * t.exp(), f64::INFINITY),
            LiouvilleMap::Logistic { lo, hi } => {
                let len = hi - lo;
                (lo + len / (1.0 + (-t).exp()), len / (1.0 + t.exp()))
            }
        }
    }

    fn t_of(&self, x: f64) -> f64 {
        match *self {
            LiouvilleMap::Sinh { center, scale } => ((x - center) / scale).asinh(),
            LiouvilleMap::Log { lo, scale } => ((x - lo) / scale).ln(),
            LiouvilleMap::Logistic { lo, hi } => ((x - lo) / (hi - x)).ln(),
        }
    }

    /// `(g'(t), q(t))`.
    fn jacobian(&self, t: f64) -> (f64, f64) {
        match *self {
            LiouvilleMap::Sinh { scale, .. } => {
                let th = t.tanh();
                (scale * t.cosh(), 0.25 * th * th - 0.5 * (1.0 - th * th))
            }
            LiouvilleMap::Log { scale, .. } => (scale * t.exp(), 0.25),
            LiouvilleMap::Logistic { lo, hi } => {
                let s = 1.0 / (1.0 + (-t).exp());
                let c = 1.0 / (1.0 + t.exp());
                ((hi - lo) * s * c, 0.25)
            }
        }
    }
}

/// Uniform grid in the Liouville coordinate covering `[x_min, x_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
    /// Spacing in the computational coordinate `t`.
    pub spacing: f64,
    pub map: LiouvilleMap,
}

/// Optional overrides for [`Grid::for_instance`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct GridOverrides {
    pub points: Option<usize>,
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
}

impl Grid {
    pub fn new(map: LiouvilleMap, x_min: f64, x_max: f64, points: usize) -> Result<Self, VerifyError> {
        if points < 16 || !(x_min < x_max) {
            return Err(VerifyError::InvalidGrid(format!(
                "need x_min < x_max and at least 16 points, got [{x_min}, {x_max}] with {points}"
            )));
        }
        let spacing = (map.t_of(x_max) - map.t_of(x_min)) / (points - 1) as f64;
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(VerifyError::InvalidGrid(format!("degenerate spacing {spacing}")));
        }
        Ok(Self {
            x_min,
            x_max,
            points,
            spacing,
            map,
        })
    }

    /// Grid adapted to the lowest `count` levels of `inst`: singular finite
    /// endpoints are offset by [`ENDPOINT_OFFSET`], infinite ones are cut
    /// where the WKB decay of the highest level reaches `e^-20`.
    pub fn for_instance(inst: &FamilyInstance, count: usize, overrides: GridOverrides) -> Result<Self, VerifyError> {
        let dom = inst.cov().x_domain;
        let scale = inst.cov().length_scale();
        let v = |x: f64| potential_x(inst, x, dom.hi - x);
        let map = match (dom.lo.is_finite(), dom.hi.is_finite()) {
            (false, false) => LiouvilleMap::Sinh {
                center: well_bottom(&v, -50.0 * scale, 50.0 * scale),
                scale,
            },
            (true, false) => LiouvilleMap::Log { lo: dom.lo, scale },
            (true, true) => LiouvilleMap::Logistic { lo: dom.lo, hi: dom.hi },
            (false, true) => {
                return Err(VerifyError::InvalidGrid("domains bounded only above are not used".into()))
            }
        };
        let (e_level, e_top) = top_energy(inst, count);
        let x_min = match overrides.x_min {
            Some(x) => x,
            None if dom.lo.is_finite() => {
                let len = if dom.hi.is_finite() { dom.hi - dom.lo } else { scale };
                dom.lo + ENDPOINT_OFFSET * len
            }
            None => {
                let start = well_bottom(&v, -50.0 * scale, 50.0 * scale);
                let e = below_threshold(&v, start, -1.0, e_level, e_top, scale);
                decay_cut(&v, start, -1.0, e, scale)?
            }
        };
        let x_max = match overrides.x_max {
            Some(x) => x,
            None if dom.hi.is_finite() => dom.hi - ENDPOINT_OFFSET * (dom.hi - dom.lo),
            None => {
                let lo = if dom.lo.is_finite() { dom.lo } else { -50.0 * scale };
                let start = well_bottom(&v, lo + 1e-3 * scale, lo + 100.0 * scale);
                let e = below_threshold(&v, start, 1.0, e_level, e_top, scale);
                decay_cut(&v, start, 1.0, e, scale)?
            }
        };
        if !(dom.contains(x_min) || x_min == dom.lo) || !(dom.contains(x_max) || x_max == dom.hi) {
            return Err(VerifyError::InvalidGrid(format!(
                "[{x_min}, {x_max}] is not inside the domain ({}, {})",
                dom.lo, dom.hi
            )));
        }
        Grid::new(map, x_min, x_max, overrides.points.unwrap_or(DEFAULT_POINTS))
    }
}

/// The highest requested closed-form level and an energy a little above it.
fn top_energy(inst: &FamilyInstance, count: usize) -> (f64, f64) {
    let top = count.saturating_sub(1);
    let e = |n: usize| inst.energy_formal(n).map(|e| rational_to_f64(&e)).unwrap_or(0.0);
    let next = match inst.max_bound_index() {
        MaxBound::Index(m) if top >= m => e(top) + 0.25 * (e(top) - e(top.saturating_sub(1))).abs(),
        _ => e(top + 1),
    };
    (e(top), e(top).max(next).max(e(top) + 1e-3))
}

/// Keeps the cut energy below the asymptotic value of `V` in direction `dir`,
/// halfway between the top level and that threshold when they are close.
fn below_threshold(v: &impl Fn(f64) -> f64, start: f64, dir: f64, e_level: f64, e_top: f64, scale: f64) -> f64 {
    let far = v(start + dir * 1e4 * scale);
    if far.is_finite() && far < e_top {
        e_level + 0.5 * (far - e_level).max(0.0)
    } else {
        e_top
    }
}

fn well_bottom(v: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let n = 4000;
    (0..=n)
        .map(|k| lo + (hi - lo) * k as f64 / n as f64)
        .filter(|x| v(*x).is_finite())
        .min_by(|a, b| v(*a).total_cmp(&v(*b)))
        .unwrap_or(0.5 * (lo + hi))
}

/// Marches from `start` in direction `dir` until `∫√(V - E) dx` past the
/// classically allowed region reaches [`TAIL_ACTION`].
fn decay_cut(v: &impl Fn(f64) -> f64, start: f64, dir: f64, e: f64, scale: f64) -> Result<f64, VerifyError> {
    let step = scale / 200.0;
    let mut action = 0.0;
    let mut x = start;
    for _ in 0..20_000_000 {
        x += dir * step;
        let k = v(x) - e;
        if k > 0.0 {
            action += k.sqrt() * step;
            if action >= TAIL_ACTION {
                return Ok(x);
            }
        } else {
            action = 0.0;
        }
    }
    Err(VerifyError::InvalidGrid(format!(
        "no classically forbidden tail found from x = {start} toward {dir}"
    )))
}

/// Extra t-range integrated past a finite endpoint to fix the boundary
/// condition there.
const ENDPOINT_EFOLDS: f64 = 20.0;
/// Largest Runge-Kutta step used for that integration.
const RICCATI_STEP: f64 = 0.02;

/// `f(t) = a - E·b + q` pieces sampled at a list of `t` values.
#[derive(Default)]
struct Samples {
    a: Vec<f64>,
    b: Vec<f64>,
    q: Vec<f64>,
}

impl Samples {
    fn push(&mut self, inst: &FamilyInstance, map: &LiouvilleMap, t: f64) {
        let hi = inst.cov().x_domain.hi;
        let (x, from_hi) = map.x_of(t);
        let from_hi = if from_hi.is_finite() { from_hi } else { hi - x };
        let (gp, qt) = map.jacobian(t);
        let g2 = gp * gp;
        self.a.push(g2 * potential_x(inst, x, from_hi));
        self.b.push(g2);
        self.q.push(qt);
    }

    fn f(&self, i: usize, e: f64) -> f64 {
        self.a[i] - e * self.b[i] + self.q[i]
    }
}

/// The log-derivative of the solution that is regular at a finite endpoint,
/// found by integrating `y' = f - y²` from [`ENDPOINT_EFOLDS`] beyond the
/// grid edge, where the WKB value `√f` is accurate, across the first cell.
struct EndCondition {
    /// Samples every half step, ordered from the far side toward the grid.
    samples: Samples,
    delta: f64,
    /// Steps taken before the grid edge is reached.
    outside: usize,
}

impl EndCondition {
    /// `dir = 1` for the left end (integrating toward +t), `-1` for the right.
    fn new(inst: &FamilyInstance, map: &LiouvilleMap, edge: f64, h: f64, dir: f64) -> Self {
        let inside = (h / RICCATI_STEP).ceil().max(1.0) as usize;
        let delta = h / inside as f64;
        let outside = (ENDPOINT_EFOLDS / delta).ceil() as usize;
        let start = edge - dir * delta * outside as f64;
        let mut samples = Samples::default();
        for j in 0..=2 * (outside + inside) {
            samples.push(inst, map, start + dir * 0.5 * delta * j as f64);
        }
        Self {
            samples,
            delta,
            outside,
        }
    }

    /// `ln(u_inner / u_edge)` across the first grid cell, or `None` when the
    /// integration meets a node or overflows.
    fn log_ratio(&self, e: f64) -> Option<f64> {
        let s = &self.samples;
        let steps = (s.a.len() - 1) / 2;
        let d = self.delta;
        let f0 = s.f(0, e);
        if !(f0 > 0.0) {
            return None;
        }
        let mut y = f0.sqrt();
        let mut z = 0.0;
        for k in 0..steps {
            let (fa, fm, fb) = (s.f(2 * k, e), s.f(2 * k + 1, e), s.f(2 * k + 2, e));
            let k1 = fa - y * y;
            let y2 = y + 0.5 * d * k1;
            let k2 = fm - y2 * y2;
            let y3 = y + 0.5 * d * k2;
            let k3 = fm - y3 * y3;
            let y4 = y + d * k3;
            let k4 = fb - y4 * y4;
            let next = y + d / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            if k >= self.outside {
                z += d / 6.0 * (y + 2.0 * y2 + 2.0 * y3 + y4);
            }
            y = next;
            if !y.is_finite() || y.abs() > 1e8 {
                return None;
            }
        }
        Some(z)
    }
}

/// Precomputed `f(t)` pieces on the grid plus the endpoint conditions.
struct Discretization {
    grid: Samples,
    h: f64,
    left: Option<EndCondition>,
    right: Option<EndCondition>,
}

impl Discretization {
    fn new(inst: &FamilyInstance, grid: &Grid) -> Self {
        let t0 = grid.map.t_of(grid.x_min);
        let h = grid.spacing;
        let mut samples = Samples::default();
        for i in 0..grid.points {
            samples.push(inst, &grid.map, t0 + h * i as f64);
        }
        let t_end = t0 + h * (grid.points - 1) as f64;
        let (left, right) = match grid.map {
            LiouvilleMap::Sinh { .. } => (None, None),
            LiouvilleMap::Log { .. } => (Some(EndCondition::new(inst, &grid.map, t0, h, 1.0)), None),
            LiouvilleMap::Logistic { .. } => (
                Some(EndCondition::new(inst, &grid.map, t0, h, 1.0)),
                Some(EndCondition::new(inst, &grid.map, t_end, h, -1.0)),
            ),
        };
        Self {
            grid: samples,
            h,
            left,
            right,
        }
    }

    fn f(&self, i: usize, e: f64) -> f64 {
        self.grid.f(i, e)
    }

    /// Number of eigenvalues below `e`: nodes of the solution shot from the
    /// left, plus one when the right-hand WKB condition has been crossed.
    ///
    /// Where `h²f/12` exceeds [`STIFF`] the three-term recurrence is no longer
    /// trustworthy. Before the first allowed point such steps follow the WKB
    /// growth `e^{h√f}`; after it the decaying condition is applied at the
    /// first stiff point and the rest of the tail is skipped.
    fn count_below(&self, e: f64) -> usize {
        let n = self.grid.a.len();
        let h2 = self.h * self.h / 12.0;
        let f0 = self.f(0, e);
        let f1 = self.f(1, e);
        let start = self.left.as_ref().and_then(|c| c.log_ratio(e));
        let (mut u_prev, mut u) = if let Some(l) = start {
            (1.0, l.exp())
        } else if f0 > 0.0 && f1 > 0.0 {
            (1.0, (self.h * 0.5 * (f0.sqrt() + f1.sqrt())).exp())
        } else {
            (0.0, self.h)
        };
        let mut f_prev = f0;
        let mut f_cur = f1;
        let mut nodes = 0;
        let mut last_sign = u.signum();
        let mut seen_allowed = f0 <= 0.0 || f1 <= 0.0;
        let mut reached_end = true;
        for i in 2..n {
            let f_next = self.f(i, e);
            let stiff = h2 * f_next > STIFF;
            if stiff && seen_allowed {
                reached_end = false;
                break;
            }
            let u_next = if stiff {
                u * (self.h * f_next.sqrt()).exp()
            } else {
                (2.0 * (1.0 + 5.0 * h2 * f_cur) * u - (1.0 - h2 * f_prev) * u_prev) / (1.0 - h2 * f_next)
            };
            seen_allowed |= f_next <= 0.0;
            u_prev = u;
            u = u_next;
            f_prev = f_cur;
            f_cur = f_next;
            if u.abs() > 1e150 {
                u *= 1e-150;
                u_prev *= 1e-150;
            }
            if u != 0.0 {
                if u.signum() != last_sign {
                    nodes += 1;
                }
                last_sign = u.signum();
            }
        }
        // decaying continuation over the last step; Dirichlet when allowed
        let fe = 0.5 * (f_prev + f_cur);
        let end = self.right.as_ref().filter(|_| reached_end).and_then(|c| c.log_ratio(e));
        let mismatch = if let Some(l) = end {
            u - u_prev * (-l).exp()
        } else if fe > 0.0 {
            u - u_prev * (-self.h * fe.sqrt()).exp()
        } else {
            u
        };
        if mismatch != 0.0 && mismatch.signum() != last_sign {
            nodes += 1;
        }
        nodes
    }
}

/// Lowest `count` eigenvalues of the x-space potential of `inst` on `grid`.
///
/// Each level is bracketed around its closed form (±25%, widened when the
/// node count says the bracket misses it) and bisected on the node count.
/// A separate sweep then re-counts at energies between the results.
pub fn numerov_spectrum(inst: &FamilyInstance, count: usize, grid: &Grid) -> Result<Vec<f64>, VerifyError> {
    if let MaxBound::Index(m) = inst.max_bound_index() {
        if count > m + 1 {
            return Err(VerifyError::TooManyLevels { count, bound: m + 1 });
        }
    }
    let disc = Discretization::new(inst, grid);
    let closed = |n: usize| inst.energy_formal(n).map(|e| rational_to_f64(&e));
    let gap = closed(1).map(f64::abs).unwrap_or(1.0).max(1e-6);
    let mut out = Vec::with_capacity(count);
    for n in 0..count {
        let seed = closed(n)?;
        let width = if seed == 0.0 { 0.25 * gap } else { 0.25 * seed.abs() };
        let (mut lo, mut hi) = (seed - width, seed + width);
        let mut widen = 0;
        while disc.count_below(lo) > n || disc.count_below(hi) < n + 1 {
            if disc.count_below(lo) > n {
                lo -= width * f64::powi(2.0, widen);
            }
            if disc.count_below(hi) < n + 1 {
                hi += width * f64::powi(2.0, widen);
            }
            widen += 1;
            if widen > 30 {
                return Err(VerifyError::Bracketing {
                    level: n,
                    grid: *grid,
                });
            }
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if disc.count_below(mid) > n {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= 1e-14 * hi.abs().max(1.0) {
                break;
            }
        }
        out.push(0.5 * (lo + hi));
    }
    sweep(&disc, &out, grid)?;
    Ok(out)
}

/// Count check independent of the seeds: nothing in a gap-sized window
/// below the ground state, and exactly `k + 1` levels below each midpoint.
fn sweep(disc: &Discretization, levels: &[f64], grid: &Grid) -> Result<(), VerifyError> {
    let gap = match levels {
        [e0, e1, ..] => (e1 - e0).max(1.0),
        _ => 1.0,
    };
    let floor = levels.first().map_or(0.0, |e0| e0 - gap);
    if disc.count_below(floor) != 0 {
        return Err(VerifyError::Bracketing { level: 0, grid: *grid });
    }
    for (k, pair) in levels.windows(2).enumerate() {
        if disc.count_below(0.5 * (pair[0] + pair[1])) != k + 1 {
            return Err(VerifyError::Bracketing {
                level: k + 1,
                grid: *grid,
            });
        }
    }
    Ok(())
}
