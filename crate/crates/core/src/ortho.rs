//! One-dimensional convex analysis along lines through a body: bracketed
//! golden-section minimization of `t -> gauge(p + t d)`, boundary-crossing
//! roots, one-sided directional derivatives, and the two orthogonality
//! tests built on them.

use crate::body::ConvexBody;
use crate::error::Error;
use crate::linalg::axpy;
use crate::real::{r, Real};
use crate::Result;

/// Golden-section tolerance in `t`.
pub const EPS_T: f64 = 1e-10;
/// Width tolerance for flat minimizer intervals.
pub const EPS_FLAT: f64 = 1e-9;
/// Slack for the Birkhoff test.
pub const EPS_BIRKHOFF: f64 = 1e-9;

/// Result of minimizing the convex function `g(t) = gauge(p + t d)`.
#[derive(Clone, Debug)]
pub struct LineScan<S> {
    /// Argmin reported by golden section.
    pub t_min: S,
    /// Global minimum value of `g`.
    pub min_value: S,
    /// Interval where `g <= min_value + eps_flat` (faces produce flats).
    pub t_lo: S,
    pub t_hi: S,
}

impl<S: Real> LineScan<S> {
    pub fn flat_width(&self) -> S {
        self.t_hi - self.t_lo
    }
}

/// Boundary crossings of a line `p + t d` against the unit sphere.
#[derive(Clone, Debug)]
pub enum LineRoots<S> {
    /// The line misses the body.
    Miss,
    /// The line grazes the boundary; the whole flat interval is reported.
    Tangent { t_lo: S, t_hi: S },
    /// Two transversal crossings `t_minus <= t_plus`.
    Pair { t_minus: S, t_plus: S },
}

/// Global minimizer data for `g(t) = gauge(p + t d)`.
///
/// Brackets the minimum starting from `t in {-1, 0, 1}` and doubling
/// outward (gauges grow linearly, so enclosure is reached quickly), then
/// refines by golden section and locates the flat interval endpoints by
/// bisection.
pub fn min_along_line<S: Real>(body: &ConvexBody<S>, p: &[S], d: &[S]) -> Result<LineScan<S>> {
    min_along_line_at(body, p, d, r(EPS_FLAT))
}

/// Same scan with the flat interval measured at height `eps_flat` above
/// the minimum.  Sharp-point detection compares two heights.
pub fn min_along_line_at<S: Real>(
    body: &ConvexBody<S>,
    p: &[S],
    d: &[S],
    eps_flat: S,
) -> Result<LineScan<S>> {
    assert!(!d.iter().all(|&x| x == S::zero()), "direction must be nonzero");
    let g = |t: S| body.gauge(&axpy(p, t, d));
    let eps_g = body.tolerances().gauge;

    // Expand a bracket [a, b] that certifiably encloses the minimum.
    let margin = r::<S>(1e-6);
    let mut a = -S::one();
    let mut b = S::one();
    let mut ga = g(a);
    let mut gb = g(b);
    let mut best = g(S::zero()).min(ga).min(gb);
    for _ in 0..90 {
        if ga >= best + margin {
            break;
        }
        a = a * r(2.0);
        ga = g(a);
        best = best.min(ga);
    }
    for _ in 0..90 {
        if gb >= best + margin {
            break;
        }
        b = b * r(2.0);
        gb = g(b);
        best = best.min(gb);
    }

    // Convexity guard on the bracket.
    let mid = (a + b) * r(0.5);
    let quarter_l = (a + mid) * r(0.5);
    let quarter_r = (mid + b) * r(0.5);
    for (u, v) in [(a, b), (a, mid), (mid, b), (quarter_l, quarter_r)] {
        let m = (u + v) * r(0.5);
        if g(m) > (g(u) + g(v)) * r(0.5) + eps_g + r(1e-12) {
            return Err(Error::DegenerateBody(
                "gauge not convex along scanned line".into(),
            ));
        }
    }

    // Golden section.
    let inv_phi = r::<S>(0.618_033_988_749_894_9);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = g(x1);
    let mut f2 = g(x2);
    let eps_t = r::<S>(EPS_T);
    let mut lo = a;
    let mut hi = b;
    for _ in 0..200 {
        if hi - lo <= eps_t * (S::one() + lo.abs() + hi.abs()) {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = g(x2);
        }
    }
    let (t_min, min_value) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    let min_value = min_value.min(g(t_min));

    // Flat interval endpoints: outermost t with g <= min + eps_flat.
    let target = min_value + eps_flat;
    let t_lo = bisect_flat_edge(&g, a, t_min, target, true);
    let t_hi = bisect_flat_edge(&g, t_min, b, target, false);

    Ok(LineScan { t_min, min_value, t_lo, t_hi })
}

/// True flat width of the minimizer set of `g(t) = gauge(p + t d)`.
///
/// The width of `{ g <= min + h }` behaves like `w0 + c sqrt(h)` at a
/// smooth minimum and `w0 + c h` at a kink or face, so the two-height
/// extrapolation `2 w(h) - w(4h)` cancels the square-root term and
/// recovers `w0` up to refinement noise.
pub fn flat_width_estimate<S: Real>(body: &ConvexBody<S>, p: &[S], d: &[S]) -> Result<S> {
    let h = r::<S>(EPS_FLAT);
    let w1 = min_along_line_at(body, p, d, h)?.flat_width();
    let w2 = min_along_line_at(body, p, d, h * r(4.0))?.flat_width();
    Ok((w1 * r(2.0) - w2).max(S::zero()))
}

/// Leftmost (`left = true`) or rightmost t in `[a, b]` with `g(t) <= target`,
/// assuming `g` convex with its minimizer inside the interval.
fn bisect_flat_edge<S: Real, G: Fn(S) -> S>(g: &G, a: S, b: S, target: S, left: bool) -> S {
    let (mut out, mut inn) = if left { (a, b) } else { (b, a) };
    if g(out) <= target {
        return out; // flat reaches the bracket edge
    }
    for _ in 0..100 {
        if (out - inn).abs() <= r::<S>(1e-13) * (S::one() + out.abs() + inn.abs()) {
            break;
        }
        let m = (out + inn) * r(0.5);
        if g(m) <= target {
            inn = m;
        } else {
            out = m;
        }
    }
    inn
}

/// Roots of `gauge(p + t d) = 1`, exploiting convexity of the section.
pub fn line_boundary_roots<S: Real>(
    body: &ConvexBody<S>,
    p: &[S],
    d: &[S],
) -> Result<LineRoots<S>> {
    let scan = min_along_line(body, p, d)?;
    let eps_g = body.tolerances().gauge;
    let one = S::one();
    if scan.min_value > one + eps_g {
        return Ok(LineRoots::Miss);
    }
    if (scan.min_value - one).abs() <= eps_g {
        return Ok(LineRoots::Tangent { t_lo: scan.t_lo, t_hi: scan.t_hi });
    }
    let g = |t: S| body.gauge(&axpy(p, t, d));
    // Expand outward from the minimizer until the section exceeds 1.
    let mut left = scan.t_lo;
    let mut step = (scan.t_hi - scan.t_lo).max(S::one());
    for _ in 0..90 {
        if g(left) > one {
            break;
        }
        left = left - step;
        step = step * r(2.0);
    }
    let mut right = scan.t_hi;
    step = (scan.t_hi - scan.t_lo).max(S::one());
    for _ in 0..90 {
        if g(right) > one {
            break;
        }
        right = right + step;
        step = step * r(2.0);
    }
    let t_minus = bisect_level(&g, left, scan.t_min, one);
    let t_plus = bisect_level(&g, right, scan.t_min, one);
    Ok(LineRoots::Pair { t_minus, t_plus })
}

/// Bisection for `g(t) = level` with `g(outside) > level >= g(inside)`.
fn bisect_level<S: Real, G: Fn(S) -> S>(g: &G, mut outside: S, mut inside: S, level: S) -> S {
    for _ in 0..200 {
        if (outside - inside).abs() <= r::<S>(1e-12) * (S::one() + outside.abs() + inside.abs()) {
            break;
        }
        let m = (outside + inside) * r(0.5);
        if g(m) > level {
            outside = m;
        } else {
            inside = m;
        }
    }
    (outside + inside) * r(0.5)
}

/// Birkhoff orthogonality `x B y`: the whole line `x + t y` stays outside
/// the open ball of radius `gauge(x)`.
pub fn birkhoff_orthogonal<S: Real>(body: &ConvexBody<S>, x: &[S], y: &[S]) -> Result<bool> {
    if x.iter().all(|&v| v == S::zero()) {
        return Err(Error::ZeroVector);
    }
    if y.iter().all(|&v| v == S::zero()) {
        return Ok(true);
    }
    let scan = min_along_line(body, x, y)?;
    Ok(scan.min_value >= body.gauge(x) - r(EPS_BIRKHOFF))
}

/// Isosceles orthogonality `x I y`: `gauge(x + y) = gauge(x - y)`.
pub fn isosceles_orthogonal<S: Real>(body: &ConvexBody<S>, x: &[S], y: &[S]) -> bool {
    let plus = body.gauge(&crate::linalg::add(x, y));
    let minus = body.gauge(&crate::linalg::sub(x, y));
    (plus - minus).abs() <= r::<S>(EPS_BIRKHOFF) * S::one().max(plus)
}

/// Side of a one-sided derivative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

/// One-sided derivative of `s -> gauge(y + s x)` at `s = 0`, by a fixed-step
/// difference quotient with one Richardson refinement.  `y` is expected on
/// the unit sphere; the measured `gauge(y)` is used as the base value.
pub fn directional_derivative<S: Real>(
    body: &ConvexBody<S>,
    y: &[S],
    x: &[S],
    side: Side,
) -> S {
    let sgn = match side {
        Side::Plus => S::one(),
        Side::Minus => -S::one(),
    };
    let base = body.gauge(y);
    let s = r::<S>(1e-6);
    let d_full = (body.gauge(&axpy(y, sgn * s, x)) - base) / s;
    let half = s * r(0.5);
    let d_half = (body.gauge(&axpy(y, sgn * half, x)) - base) / half;
    d_half * r(2.0) - d_full
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::ConvexBody;

    /// Dense-grid oracle for the line minimum, independent of the
    /// bracketing/golden-section path.
    fn grid_min(body: &ConvexBody<f64>, p: &[f64], d: &[f64], lo: f64, hi: f64) -> (f64, f64) {
        let mut best = f64::INFINITY;
        let mut arg = lo;
        let n = 200_000;
        for k in 0..=n {
            let t = lo + (hi - lo) * (k as f64) / (n as f64);
            let g = body.gauge(&axpy(p, t, d));
            if g < best {
                best = g;
                arg = t;
            }
        }
        (arg, best)
    }

    #[test]
    fn euclidean_min_is_perpendicular_foot() {
        let ball = ConvexBody::<f64>::lp_ball(2, 2.0).unwrap();
        let scan = min_along_line(&ball, &[0.0, 1.0], &[1.0, 0.0]).unwrap();
        assert!(scan.t_min.abs() < 1e-7);
        assert!((scan.min_value - 1.0).abs() < 1e-10);
        assert!(scan.flat_width() < 1e-4, "strictly convex: no flat");
    }

    #[test]
    fn cube_face_gives_flat_interval() {
        let cube = ConvexBody::<f64>::cube(3).unwrap();
        let scan = min_along_line(&cube, &[0.0, 1.0, 0.0], &[1.0, 0.0, 0.0]).unwrap();
        assert!((scan.min_value - 1.0).abs() < 1e-10);
        assert!((scan.t_lo + 1.0).abs() < 1e-6, "flat starts at -1, got {}", scan.t_lo);
        assert!((scan.t_hi - 1.0).abs() < 1e-6, "flat ends at 1, got {}", scan.t_hi);
    }

    #[test]
    fn l1_edge_flat_width_matches_grid_oracle() {
        let l1 = ConvexBody::<f64>::lp_ball(2, 1.0).unwrap();
        let scan = min_along_line(&l1, &[0.5, 0.5], &[1.0, -1.0]).unwrap();
        assert!((scan.min_value - 1.0).abs() < 1e-10);
        assert!((scan.flat_width() - 1.0).abs() < 1e-6);
        let (arg, best) = grid_min(&l1, &[0.5, 0.5], &[1.0, -1.0], -2.0, 2.0);
        assert!((best - scan.min_value).abs() < 1e-9);
        assert!(arg >= scan.t_lo - 1e-4 && arg <= scan.t_hi + 1e-4);
    }

    #[test]
    fn roots_cube_faces() {
        let cube = ConvexBody::<f64>::cube(3).unwrap();
        match line_boundary_roots(&cube, &[0.0, 0.5, 0.5], &[1.0, 0.0, 0.0]).unwrap() {
            LineRoots::Pair { t_minus, t_plus } => {
                assert!((t_minus + 1.0).abs() < 1e-10);
                assert!((t_plus - 1.0).abs() < 1e-10);
            }
            other => panic!("expected two roots, got {other:?}"),
        }
    }

    #[test]
    fn roots_euclidean_circle() {
        let ball = ConvexBody::<f64>::lp_ball(2, 2.0).unwrap();
        match line_boundary_roots(&ball, &[0.0, 0.6], &[1.0, 0.0]).unwrap() {
            LineRoots::Pair { t_minus, t_plus } => {
                assert!((t_minus + 0.8).abs() < 1e-10);
                assert!((t_plus - 0.8).abs() < 1e-10);
            }
            other => panic!("expected two roots, got {other:?}"),
        }
    }

    #[test]
    fn roots_miss_and_tangent() {
        let ball = ConvexBody::<f64>::lp_ball(2, 2.0).unwrap();
        assert!(matches!(
            line_boundary_roots(&ball, &[0.0, 2.0], &[1.0, 0.0]).unwrap(),
            LineRoots::Miss
        ));
        match line_boundary_roots(&ball, &[0.0, 1.0], &[1.0, 0.0]).unwrap() {
            LineRoots::Tangent { t_lo, t_hi } => {
                assert!(t_lo.abs() < 1e-4 && t_hi.abs() < 1e-4);
            }
            other => panic!("expected tangency, got {other:?}"),
        }
        // grazing a cube face yields the whole face segment
        let cube = ConvexBody::<f64>::cube(3).unwrap();
        match line_boundary_roots(&cube, &[0.0, 1.0, 0.5], &[1.0, 0.0, 0.0]).unwrap() {
            LineRoots::Tangent { t_lo, t_hi } => {
                assert!((t_lo + 1.0).abs() < 1e-6);
                assert!((t_hi - 1.0).abs() < 1e-6);
            }
            other => panic!("expected tangency, got {other:?}"),
        }
    }

    #[test]
    fn birkhoff_examples() {
        let ball = ConvexBody::<f64>::lp_ball(2, 2.0).unwrap();
        assert!(birkhoff_orthogonal(&ball, &[1.0, 0.0], &[0.0, 1.0]).unwrap());
        assert!(!birkhoff_orthogonal(&ball, &[1.0, 0.0], &[1.0, 1.0]).unwrap());

        let cube = ConvexBody::<f64>::cube(3).unwrap();
        assert!(birkhoff_orthogonal(&cube, &[1.0, 0.3, 0.0], &[0.0, 1.0, 0.0]).unwrap());

        assert!(matches!(
            birkhoff_orthogonal(&ball, &[0.0, 0.0], &[1.0, 0.0]),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn birkhoff_scale_invariance() {
        let cube = ConvexBody::<f64>::cube(3).unwrap();
        let x = [1.0, 0.3, 0.0];
        let y = [0.0, 1.0, 0.0];
        let base = birkhoff_orthogonal(&cube, &x, &y).unwrap();
        for (l, m) in [(2.0, 0.5), (0.25, 4.0), (7.0, 7.0)] {
            let xs: Vec<f64> = x.iter().map(|v| v * l).collect();
            let ys: Vec<f64> = y.iter().map(|v| v * m).collect();
            assert_eq!(birkhoff_orthogonal(&cube, &xs, &ys).unwrap(), base);
        }
    }

    #[test]
    fn isosceles_examples() {
        let ball = ConvexBody::<f64>::lp_ball(2, 2.0).unwrap();
        assert!(isosceles_orthogonal(&ball, &[1.0, 0.0], &[0.0, 2.0]));
        assert!(!isosceles_orthogonal(&ball, &[1.0, 0.0], &[1.0, 0.0]));

        let linf = ConvexBody::<f64>::lp_ball(2, f64::INFINITY).unwrap();
        assert!(isosceles_orthogonal(&linf, &[1.0, 0.0], &[0.3, 2.0]));
    }

    #[test]
    fn isosceles_symmetry_in_second_argument() {
        let bodies = [
            ConvexBody::<f64>::lp_ball(2, 2.0).unwrap(),
            ConvexBody::<f64>::lp_ball(2, f64::INFINITY).unwrap(),
        ];
        for body in &bodies {
            for (x, y) in [([1.0, 0.2], [0.4, 1.3]), ([0.5, -0.1], [1.0, 1.0])] {
                let neg_y = [-y[0], -y[1]];
                assert_eq!(
                    isosceles_orthogonal(body, &x, &y),
                    isosceles_orthogonal(body, &x, &neg_y)
                );
            }
        }
    }

    #[test]
    fn directional_derivative_examples() {
        let ball = ConvexBody::<f64>::lp_ball(2, 2.0).unwrap();
        let tangential = directional_derivative(&ball, &[0.0, 1.0], &[1.0, 0.0], Side::Plus);
        assert!(tangential.abs() < 1e-6);
        let radial = directional_derivative(&ball, &[1.0, 0.0], &[1.0, 0.0], Side::Plus);
        assert!((radial - 1.0).abs() < 1e-6);

        let cube = ConvexBody::<f64>::cube(3).unwrap();
        let in_face =
            directional_derivative(&cube, &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], Side::Plus);
        assert!(in_face.abs() < 1e-6);
    }

    #[test]
    fn shadow_equivalence_hook() {
        // for boundary p: birkhoff(p, x) iff the parallel line is tangent
        let cube = ConvexBody::<f64>::cube(3).unwrap();
        let x = [1.0, 0.0, 0.0];
        let on_shadow = [0.3, 1.0, 0.2];
        assert!(birkhoff_orthogonal(&cube, &on_shadow, &x).unwrap());
        assert!(matches!(
            line_boundary_roots(&cube, &on_shadow, &x).unwrap(),
            LineRoots::Tangent { .. }
        ));
        let off_shadow = [1.0, 0.3, 0.2];
        assert!(!birkhoff_orthogonal(&cube, &off_shadow, &x).unwrap());
        assert!(!matches!(
            line_boundary_roots(&cube, &off_shadow, &x).unwrap(),
            LineRoots::Tangent { .. }
        ));
    }
}
