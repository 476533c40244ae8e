//! Classification of unit directions against the bisector `B(-x, x)`,
//! sampling of ordinary and ideal bisector points, the bounded-representation
//! map `phi`, and its chord-based inverse.
//!
//! For a gauge-unit direction `y` the scan function is
//! `f(t) = gauge(t y + x) - gauge(t y - x)`; `y` belongs to the radial
//! projection exactly when `f` vanishes for some `t > 0`, stays on the `-x`
//! side when `f < 0` for all `t > 0`, and symmetrically for the `+x` side.
//! Ideal directions are recognized from the tail behaviour `f(t) -> 0`.

use crate::body::ConvexBody;
use crate::error::Error;
use crate::linalg::{axpy, scale, sub};
use crate::ortho::{directional_derivative, Side};
use crate::real::{r, Real};
use crate::shadow::Chord;
use crate::topology::LabeledMesh;
use crate::Result;

/// Scan configuration for [`classify_direction`].
#[derive(Clone, Copy, Debug)]
pub struct ScanParams<S> {
    /// First positive grid point.
    pub t0: S,
    /// Geometric grid ratio.
    pub ratio: S,
    /// Scan horizon; the tail value `f(t_max)` feeds ideal detection.
    pub t_max: S,
    /// Strict zero threshold on `|f|`.
    pub eps_f: S,
    /// Ideal-limit threshold on `|f(t_max)|`.
    pub eps_asym: S,
    /// Near-miss band on the proximity statistic; `0` disables the band.
    /// Mesh classification sets this to the mesh resolution so that
    /// directions whose cell straddles the bisector are labeled with it.
    pub band: S,
}

impl<S: Real> Default for ScanParams<S> {
    fn default() -> Self {
        ScanParams {
            t0: r(1e-3),
            ratio: r(1.25),
            t_max: r(1e4),
            eps_f: r(1e-9),
            eps_asym: r(1e-6),
            band: S::zero(),
        }
    }
}

/// Verdict for a unit direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RayLabel {
    /// Some positive multiple of the direction lies on the bisector
    /// (possibly only in the ideal, limiting sense).
    Bisector,
    /// `f(t) < 0` for all `t > 0`: the `-x` side.
    Left,
    /// `f(t) > 0` for all `t > 0`: the `+x` side.
    Right,
    /// Evidence inconsistent at the configured tolerances.
    Unresolved,
}

impl RayLabel {
    /// Antipodal mirror: swaps `Left`/`Right`, fixes the rest.
    pub fn mirror(self) -> RayLabel {
        match self {
            RayLabel::Left => RayLabel::Right,
            RayLabel::Right => RayLabel::Left,
            other => other,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RayLabel::Bisector => "BISECTOR",
            RayLabel::Left => "LEFT",
            RayLabel::Right => "RIGHT",
            RayLabel::Unresolved => "UNRESOLVED",
        }
    }
}

/// Closed interval of scan parameters solving `f(t) = 0`.
#[derive(Clone, Copy, Debug)]
pub struct SolutionInterval<S> {
    pub lo: S,
    pub hi: S,
    /// The interval reaches the scan horizon with `f` still at zero.
    pub unbounded: bool,
}

impl<S: Real> SolutionInterval<S> {
    pub fn is_point(&self) -> bool {
        !self.unbounded && self.hi - self.lo <= r(1e-9)
    }
}

/// Classification result for one direction.
#[derive(Clone, Debug)]
pub struct RayClassification<S> {
    /// Gauge-unit direction that was scanned.
    pub direction: Vec<S>,
    pub label: RayLabel,
    /// Strict solution set (roots and flat zero runs), sorted and disjoint.
    pub solutions: Vec<SolutionInterval<S>>,
    /// Tail of the scan vanished: bisector points escape along `y`.
    pub ideal_limit: bool,
    /// Label came from the near-miss band only (no strict evidence).
    pub band_only: bool,
    /// `min |f(t)| / w(t)` over the grid with `w(t) = 2t / sqrt(1 + t^2)`;
    /// for the Euclidean ball this equals the sine of the angular distance
    /// to the bisector great circle.
    pub proximity: S,
    /// `f(t_max)`.
    pub f_tail: S,
    /// Diagnostic for `Unresolved` verdicts.
    pub note: Option<String>,
}

impl<S: Real> RayClassification<S> {
    pub fn root_count(&self) -> usize {
        self.solutions.len()
    }
}

/// `f(t) = gauge(t y + x) - gauge(t y - x)` for gauge-unit `x`, `y`.
///
/// `f(0) = 0` identically, `f` is continuous, and flipping `y` flips the
/// sign of `f`.
pub fn delta<S: Real>(body: &ConvexBody<S>, x: &[S], y: &[S], t: S) -> S {
    let plus = body.gauge(&axpy(x, t, y));
    let minus = body.gauge(&sub(&scale(y, t), x));
    plus - minus
}

fn proximity_weight<S: Real>(t: S) -> S {
    r::<S>(2.0) * t / (S::one() + t * t).sqrt()
}

/// Scan `f` on a geometric grid, bracket every sign change, refine flat
/// zero runs, and detect ideal tails.  The degenerate equality `f(0) = 0`
/// never contributes to labeling.
pub fn classify_direction<S: Real>(
    body: &ConvexBody<S>,
    x: &[S],
    y: &[S],
    params: &ScanParams<S>,
) -> RayClassification<S> {
    let f = |t: S| delta(body, x, y, t);

    // Geometric grid, horizon included.
    let mut grid: Vec<S> = Vec::with_capacity(96);
    let mut t = params.t0;
    while t < params.t_max {
        grid.push(t);
        t = t * params.ratio;
    }
    grid.push(params.t_max);
    let values: Vec<S> = grid.iter().map(|&t| f(t)).collect();

    let proximity = grid
        .iter()
        .zip(&values)
        .map(|(&t, &v)| v.abs() / proximity_weight(t))
        .fold(S::infinity(), S::min);
    let f_tail = *values.last().unwrap();

    // Strict evidence: flat zero runs and sign-change brackets.
    let flat: Vec<bool> = values.iter().map(|v| v.abs() <= params.eps_f).collect();
    let mut solutions: Vec<SolutionInterval<S>> = Vec::new();
    let m = grid.len();
    let mut k = 0;
    while k < m {
        if flat[k] {
            let start = k;
            while k + 1 < m && flat[k + 1] {
                k += 1;
            }
            let end = k;
            // Left edge: extend to 0 if f stays flat below the grid start.
            let lo = if start == 0 {
                let probe_flat = (1..=3).all(|j| {
                    let tt = params.t0 / r::<S>(8.0).powi(j);
                    f(tt).abs() <= params.eps_f
                });
                if probe_flat {
                    S::zero()
                } else {
                    refine_flat_edge(&f, grid[0] / r(512.0), grid[0], params.eps_f)
                }
            } else {
                refine_flat_edge(&f, grid[start - 1], grid[start], params.eps_f)
            };
            let (hi, unbounded) = if end == m - 1 {
                (grid[m - 1], f_tail.abs() <= params.eps_f)
            } else {
                (
                    refine_flat_edge(&f, grid[end + 1], grid[end], params.eps_f),
                    false,
                )
            };
            solutions.push(SolutionInterval { lo, hi, unbounded });
        } else if k + 1 < m
            && !flat[k + 1]
            && (values[k] > S::zero()) != (values[k + 1] > S::zero())
        {
            let root = refine_root(&f, grid[k], grid[k + 1]);
            solutions.push(SolutionInterval { lo: root, hi: root, unbounded: false });
        }
        k += 1;
    }

    // Ideal tail with a second opinion from one-sided derivatives:
    // L(y) estimates the limit of f.
    let ideal_limit = f_tail.abs() <= params.eps_asym;
    let mut note = None;
    if ideal_limit {
        let l_plus = directional_derivative(body, y, x, Side::Plus);
        let l_minus = directional_derivative(body, y, x, Side::Minus);
        let l_est = l_plus - l_minus;
        if l_est.abs() > r(1e-3) {
            note = Some(format!(
                "tail {f_tail:?} within eps_asym but derivative estimate {l_est:?} nonzero"
            ));
        }
    }

    let label = if !solutions.is_empty() {
        RayLabel::Bisector
    } else if ideal_limit {
        if note.is_some() {
            RayLabel::Unresolved
        } else {
            RayLabel::Bisector
        }
    } else if proximity <= params.band {
        RayLabel::Bisector
    } else {
        let max_v = values.iter().fold(S::neg_infinity(), |a, &b| a.max(b));
        let min_v = values.iter().fold(S::infinity(), |a, &b| a.min(b));
        if max_v > params.eps_f && min_v < -params.eps_f {
            note = Some("opposite strict signs without a refined bracket".into());
            RayLabel::Unresolved
        } else if f_tail < S::zero() {
            RayLabel::Left
        } else {
            RayLabel::Right
        }
    };
    let band_only =
        label == RayLabel::Bisector && solutions.is_empty() && !ideal_limit;

    RayClassification {
        direction: y.to_vec(),
        label,
        solutions,
        ideal_limit: ideal_limit && note.is_none(),
        band_only,
        proximity,
        f_tail,
        note,
    }
}

/// Bisection on `|f| = eps` between a non-flat and a flat point.
fn refine_flat_edge<S: Real, F: Fn(S) -> S>(f: &F, mut outside: S, mut inside: S, eps: S) -> S {
    for _ in 0..100 {
        if (outside - inside).abs() <= r::<S>(1e-12) * (S::one() + outside.abs() + inside.abs()) {
            break;
        }
        let m = (outside + inside) * r(0.5);
        if f(m).abs() <= eps {
            inside = m;
        } else {
            outside = m;
        }
    }
    inside
}

/// Bisection on a sign-change bracket to `|dt| <= 1e-12 (1 + |t|)`.
fn refine_root<S: Real, F: Fn(S) -> S>(f: &F, mut a: S, mut b: S) -> S {
    let mut fa = f(a);
    for _ in 0..200 {
        if (b - a).abs() <= r::<S>(1e-12) * (S::one() + a.abs() + b.abs()) {
            break;
        }
        let m = (a + b) * r(0.5);
        let fm = f(m);
        if (fm > S::zero()) == (fa > S::zero()) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    (a + b) * r(0.5)
}

/// A point of the bisector `B(-x, x)`: an ordinary vector together with its
/// sphere parameter `t_z = gauge(z - x)`, or an ideal direction.
#[derive(Clone, Debug)]
pub enum BisectorPoint<S> {
    Ordinary { z: Vec<S>, t_z: S },
    Ideal { direction: Vec<S> },
}

impl<S: Real> BisectorPoint<S> {
    pub fn is_ideal(&self) -> bool {
        matches!(self, BisectorPoint::Ideal { .. })
    }
}

/// Sample `k` ordinary points across the strict solution set of a
/// bisector-labeled direction; appends the single ideal point when the
/// classification carries an ideal limit.
///
/// Bounded intervals are sampled uniformly in `t`; unbounded ones uniformly
/// in `t / (1 + t)` so that the images under `phi` spread evenly along the
/// radius.
pub fn bisector_points<S: Real>(
    body: &ConvexBody<S>,
    x: &[S],
    class: &RayClassification<S>,
    k: usize,
) -> Result<Vec<BisectorPoint<S>>> {
    if class.label != RayLabel::Bisector {
        return Err(Error::NotBisectorDirection(class.label));
    }
    let y = &class.direction;
    let mut points = Vec::new();
    if !class.solutions.is_empty() {
        let per = (k / class.solutions.len()).max(1);
        for interval in &class.solutions {
            if interval.is_point() {
                push_ordinary(body, x, y, (interval.lo + interval.hi) * r(0.5), &mut points);
                continue;
            }
            let lo = interval.lo.max(r(1e-9));
            if interval.unbounded {
                let sig = |t: S| t / (S::one() + t);
                let s_lo = sig(lo);
                let s_hi = sig(interval.hi);
                for j in 0..per {
                    let u = s_lo
                        + (s_hi - s_lo) * r::<S>(j as f64 + 0.5) / r::<S>(per as f64);
                    let t = u / (S::one() - u);
                    push_ordinary(body, x, y, t, &mut points);
                }
            } else {
                for j in 0..per {
                    let t = lo
                        + (interval.hi - lo) * r::<S>(j as f64 + 0.5) / r::<S>(per as f64);
                    push_ordinary(body, x, y, t, &mut points);
                }
            }
        }
    }
    if class.ideal_limit {
        points.push(BisectorPoint::Ideal { direction: y.clone() });
    }
    Ok(points)
}

fn push_ordinary<S: Real>(
    body: &ConvexBody<S>,
    x: &[S],
    y: &[S],
    t: S,
    out: &mut Vec<BisectorPoint<S>>,
) {
    if t <= S::zero() {
        return;
    }
    let z = scale(y, t);
    let t_z = body.gauge(&sub(&z, x));
    out.push(BisectorPoint::Ordinary { z, t_z });
}

/// The bounded-representation map: ordinary `z` goes to `z / t_z`, an ideal
/// direction goes to its radial projection onto the unit sphere.
pub fn phi<S: Real>(body: &ConvexBody<S>, point: &BisectorPoint<S>) -> Vec<S> {
    match point {
        BisectorPoint::Ordinary { z, t_z } => scale(z, S::one() / *t_z),
        BisectorPoint::Ideal { direction } => body
            .boundary_point(direction)
            .expect("ideal direction is nonzero"),
    }
}

/// Inverse of `phi` on chord midpoints: a chord with midpoint `m` and
/// half-length `s > 0` (in units of `x`) lifts to the ordinary bisector
/// point `z = m / s` with `t_z = 1 / s`.
pub fn bisector_from_chord<S: Real>(chord: &Chord<S>) -> Result<BisectorPoint<S>> {
    if chord.half_length <= S::zero() {
        return Err(Error::TangentChord);
    }
    let s = chord.half_length;
    Ok(BisectorPoint::Ordinary {
        z: scale(&chord.midpoint, S::one() / s),
        t_z: S::one() / s,
    })
}

/// The unique (possibly flat) intersection of the bisector with the line
/// `h + s x`.  `F(s) = gauge(h + (s-1)x) - gauge(h + (s+1)x)` decreases
/// monotonically from `+2` to `-2`, so a sign change always exists.
pub fn bisector_on_line<S: Real>(
    body: &ConvexBody<S>,
    x: &[S],
    h: &[S],
    eps_f: S,
) -> BisectorPoint<S> {
    let f = |s: S| {
        let w = axpy(h, s, x);
        body.gauge(&sub(&w, x)) - body.gauge(&crate::linalg::add(&w, x))
    };
    let mut a = -(r::<S>(2.0) + crate::linalg::norm2(h));
    let mut b = -a;
    for _ in 0..80 {
        if f(a) > S::zero() {
            break;
        }
        a = a * r(2.0);
    }
    for _ in 0..80 {
        if f(b) < S::zero() {
            break;
        }
        b = b * r(2.0);
    }
    let root = refine_root(&f, a, b);
    // Flat bisector segments along the line collapse to their midpoint.
    let lo = if f(root - r(1e-7)).abs() <= eps_f {
        refine_flat_edge(&f, a, root, eps_f)
    } else {
        root
    };
    let hi = if f(root + r(1e-7)).abs() <= eps_f {
        refine_flat_edge(&f, b, root, eps_f)
    } else {
        root
    };
    let s_mid = (lo + hi) * r(0.5);
    let z = axpy(h, s_mid, x);
    let t_z = body.gauge(&sub(&z, x));
    BisectorPoint::Ordinary { z, t_z }
}

/// Union of `bisector_points` over all bisector-labeled mesh directions.
pub fn sample_bisector<S: Real>(
    body: &ConvexBody<S>,
    x: &[S],
    mesh: &LabeledMesh<S>,
    k: usize,
) -> Vec<BisectorPoint<S>> {
    let mut cloud = Vec::new();
    for class in mesh.classifications() {
        if class.label == RayLabel::Bisector {
            if let Ok(points) = bisector_points(body, x, class, k) {
                cloud.extend(points);
            }
        }
    }
    cloud
}
