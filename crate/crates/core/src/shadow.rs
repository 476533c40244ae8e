//! Shadow boundary, sharp points, the chord-midpoint locus, and the bounded
//! representation they assemble into.
//!
//! Chords are taken parallel to the reference direction `x` over a uniform
//! grid in the Euclidean complement hyperplane `H`; the auxiliary inner
//! product only parameterizes the grid and never enters a membership
//! verdict.

use rayon::prelude::*;

use crate::body::ConvexBody;
use crate::linalg::{axpy, complement_basis};
use crate::ortho::{birkhoff_orthogonal, LineRoots};
use crate::real::{r, Real};
use crate::topology::LabeledMesh;
use crate::Result;

/// Default flat-width threshold below which a shadow point counts as sharp.
pub const EPS_SHARP: f64 = 1e-7;

/// A maximal segment `K` cuts out of the line `offset + t x`.
#[derive(Clone, Debug)]
pub struct Chord<S> {
    /// Offset point in the complement hyperplane of `x`.
    pub offset: Vec<S>,
    /// Entry and exit parameters, `t_minus <= t_plus`.
    pub t_minus: S,
    pub t_plus: S,
    /// `offset + ((t_minus + t_plus) / 2) x`.
    pub midpoint: Vec<S>,
    /// `(t_plus - t_minus) / 2`; zero exactly for tangency chords.
    pub half_length: S,
}

impl<S: Real> Chord<S> {
    pub fn is_tangency(&self) -> bool {
        self.half_length <= S::zero()
    }
}

/// Grid configuration for [`chord_field`].
#[derive(Clone, Copy, Debug)]
pub struct GridParams<S> {
    /// Uniform spacing in the complement hyperplane.
    pub spacing: S,
}

impl<S: Real> Default for GridParams<S> {
    fn default() -> Self {
        GridParams { spacing: r(0.02) }
    }
}

/// Is the boundary point `p` on the shadow boundary `S(K, x)` — that is,
/// Birkhoff-orthogonal to `x`?
pub fn shadow_boundary_test<S: Real>(body: &ConvexBody<S>, x: &[S], p: &[S]) -> Result<bool> {
    birkhoff_orthogonal(body, p, x)
}

/// Is the shadow point `p` the unique contact of its supporting line of
/// direction `x`?  Decided by the extrapolated width of the flat minimizer
/// interval of the gauge along that line.
pub fn sharp_point_test<S: Real>(body: &ConvexBody<S>, x: &[S], p: &[S]) -> Result<bool> {
    let width = crate::ortho::flat_width_estimate(body, p, x)?;
    Ok(width <= r(EPS_SHARP))
}

/// All chords of `K` parallel to `x` over a uniform grid of offsets in the
/// complement hyperplane, clipped to the support box of the projection.
/// Tangency offsets yield zero-length chords; misses are skipped.
pub fn chord_field<S: Real>(
    body: &ConvexBody<S>,
    x: &[S],
    grid: &GridParams<S>,
) -> Result<Vec<Chord<S>>> {
    let offsets = grid_offsets(body, x, grid.spacing);
    Ok(chords_at_offsets(body, x, &offsets))
}

/// Uniform grid over the projection of `K` onto the complement of `x`.
pub(crate) fn grid_offsets<S: Real>(body: &ConvexBody<S>, x: &[S], spacing: S) -> Vec<Vec<S>> {
    let basis = complement_basis(x);
    // Support box of the shadow of K in H.
    let extents: Vec<S> = basis
        .iter()
        .map(|e| body.support(e).max(body.support(&crate::linalg::neg(e))))
        .collect();
    let mut offsets: Vec<Vec<S>> = vec![vec![S::zero(); x.len()]];
    for (e, &ext) in basis.iter().zip(&extents) {
        let steps = (ext / spacing).to_f64().unwrap().ceil() as i64;
        let mut next: Vec<Vec<S>> = Vec::with_capacity(offsets.len() * (2 * steps as usize + 1));
        for base in &offsets {
            for k in -steps..=steps {
                next.push(axpy(base, spacing * r(k as f64), e));
            }
        }
        offsets = next;
    }
    offsets
}

pub(crate) fn chords_at_offsets<S: Real>(
    body: &ConvexBody<S>,
    x: &[S],
    offsets: &[Vec<S>],
) -> Vec<Chord<S>> {
    offsets
        .par_iter()
        .filter_map(|h| match crate::ortho::line_boundary_roots(body, h, x) {
            Ok(LineRoots::Pair { t_minus, t_plus }) => {
                let half = (t_plus - t_minus) * r(0.5);
                let mid = axpy(h, (t_plus + t_minus) * r(0.5), x);
                Some(Chord {
                    offset: h.clone(),
                    t_minus,
                    t_plus,
                    midpoint: mid,
                    half_length: half,
                })
            }
            Ok(LineRoots::Tangent { t_lo, t_hi }) => {
                let mid = axpy(h, (t_lo + t_hi) * r(0.5), x);
                Some(Chord {
                    offset: h.clone(),
                    t_minus: (t_lo + t_hi) * r(0.5),
                    t_plus: (t_lo + t_hi) * r(0.5),
                    midpoint: mid,
                    half_length: S::zero(),
                })
            }
            _ => None,
        })
        .collect()
}

/// Provenance of a bounded-representation point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepTag {
    Midpoint,
    Shadow,
}

/// Discrete bounded representation: interior chord midpoints plus the
/// shadow-boundary directions found on a classified mesh.
#[derive(Clone, Debug)]
pub struct BoundedRepresentation<S> {
    pub points: Vec<Vec<S>>,
    pub tags: Vec<RepTag>,
    pub chords: Vec<Chord<S>>,
}

impl<S: Real> BoundedRepresentation<S> {
    pub fn midpoints(&self) -> impl Iterator<Item = &Vec<S>> {
        self.points
            .iter()
            .zip(&self.tags)
            .filter(|(_, &t)| t == RepTag::Midpoint)
            .map(|(p, _)| p)
    }

    pub fn shadow_points(&self) -> impl Iterator<Item = &Vec<S>> {
        self.points
            .iter()
            .zip(&self.tags)
            .filter(|(_, &t)| t == RepTag::Shadow)
            .map(|(p, _)| p)
    }
}

/// Assemble the bounded representation: the midpoint cloud of the chord
/// field together with the mesh directions passing the shadow test.
pub fn bounded_representation<S: Real>(
    body: &ConvexBody<S>,
    x: &[S],
    mesh: &LabeledMesh<S>,
    grid: &GridParams<S>,
) -> Result<BoundedRepresentation<S>> {
    let chords = chord_field(body, x, grid)?;
    let mut points = Vec::new();
    let mut tags = Vec::new();
    for c in &chords {
        if !c.is_tangency() {
            points.push(c.midpoint.clone());
            tags.push(RepTag::Midpoint);
        }
    }
    let shadow_flags: Vec<bool> = mesh
        .boundary_vertices()
        .par_iter()
        .map(|p| shadow_boundary_test(body, x, p).unwrap_or(false))
        .collect();
    for (p, flag) in mesh.boundary_vertices().iter().zip(shadow_flags) {
        if flag {
            points.push(p.clone());
            tags.push(RepTag::Shadow);
        }
    }
    Ok(BoundedRepresentation { points, tags, chords })
}

/// Midpoint symmetry check used by the property suites: chords at `h` and
/// `-h` have antipodal midpoints (central symmetry of `K`).
pub fn midpoint_antipodal_defect<S: Real>(body: &ConvexBody<S>, x: &[S], h: &[S]) -> Option<S> {
    let pair = chords_at_offsets(body, x, &[h.to_vec(), crate::linalg::neg(h)]);
    if pair.len() != 2 {
        return None;
    }
    let s = crate::linalg::add(&pair[0].midpoint, &pair[1].midpoint);
    Some(crate::linalg::norm2(&s))
}

/// Shadow membership via the support function, used as an independent check
/// in tests: `p` is on the shadow boundary iff the segment `p +- t x` stays
/// inside `K` for no `t`, i.e. the line through `p` supports `K`.
#[allow(dead_code)]
pub(crate) fn shadow_test_by_support<S: Real>(body: &ConvexBody<S>, x: &[S], p: &[S]) -> bool {
    // The line p + R x supports K iff min over t of gauge(p + t x) >= 1.
    // Evaluate on a dense symmetric grid as a brute-force stand-in.
    let mut min_g = S::infinity();
    let n = 4000;
    for k in -(n as i64)..=(n as i64) {
        let t = r::<S>(4.0) * r::<S>(k as f64) / r::<S>(n as f64);
        min_g = min_g.min(body.gauge(&axpy(p, t, x)));
    }
    min_g >= S::one() - r(1e-6)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::ConvexBody;
    use crate::linalg::{norm2, sub};

    #[test]
    fn shadow_test_euclidean_great_circle() {
        let ball = ConvexBody::<f64>::lp_ball(3, 2.0).unwrap();
        let x = [1.0, 0.0, 0.0];
        assert!(shadow_boundary_test(&ball, &x, &[0.0, 0.6, 0.8]).unwrap());
        assert!(!shadow_boundary_test(&ball, &x, &[0.6, 0.8, 0.0]).unwrap());
    }

    #[test]
    fn shadow_test_cube_band() {
        let cube = ConvexBody::<f64>::cube(3).unwrap();
        let x = [1.0, 0.0, 0.0];
        assert!(shadow_boundary_test(&cube, &x, &[0.3, 1.0, 0.2]).unwrap());
        assert!(!shadow_boundary_test(&cube, &x, &[1.0, 0.3, 0.2]).unwrap());
    }

    #[test]
    fn sharp_points_euclidean_always_cube_never() {
        let ball = ConvexBody::<f64>::lp_ball(3, 2.0).unwrap();
        let x = [1.0, 0.0, 0.0];
        assert!(sharp_point_test(&ball, &x, &[0.0, 0.6, 0.8]).unwrap());

        let cube = ConvexBody::<f64>::cube(3).unwrap();
        assert!(!sharp_point_test(&cube, &x, &[0.0, 1.0, 0.5]).unwrap());
    }

    #[test]
    fn chord_examples() {
        let ball = ConvexBody::<f64>::lp_ball(2, 2.0).unwrap();
        let x = [1.0, 0.0];
        let chords = chords_at_offsets(&ball, &x, &[vec![0.0, 0.6]]);
        assert_eq!(chords.len(), 1);
        let c = &chords[0];
        assert!((c.t_minus + 0.8).abs() < 1e-10 && (c.t_plus - 0.8).abs() < 1e-10);
        assert!((c.half_length - 0.8).abs() < 1e-10);
        assert!((c.midpoint[1] - 0.6).abs() < 1e-12);

        let cube = ConvexBody::<f64>::cube(3).unwrap();
        let x3 = [1.0, 0.0, 0.0];
        let chords = chords_at_offsets(&cube, &x3, &[vec![0.0, 0.5, 0.5]]);
        let c = &chords[0];
        assert!((c.half_length - 1.0).abs() < 1e-10);
        assert!(norm2(&sub(&c.midpoint, &c.offset)) < 1e-10);

        // grazing offset: tangency with s = 0
        let chords = chords_at_offsets(&cube, &x3, &[vec![0.0, 1.0, 0.5]]);
        assert_eq!(chords.len(), 1);
        assert!(chords[0].is_tangency());

        // miss
        let chords = chords_at_offsets(&ball, &x, &[vec![0.0, 2.0]]);
        assert!(chords.is_empty());
    }

    #[test]
    fn chord_grid_covers_projection() {
        let ball = ConvexBody::<f64>::lp_ball(3, 2.0).unwrap();
        let x = [1.0, 0.0, 0.0];
        let chords = chord_field(&ball, &x, &GridParams { spacing: 0.1 }).unwrap();
        assert!(chords.len() > 250, "grid too sparse: {}", chords.len());
        for c in &chords {
            // euclidean midpoints sit on the hyperplane through the origin
            assert!(c.midpoint[0].abs() < 1e-9);
        }
    }

    #[test]
    fn midpoint_antipodal_symmetry() {
        let bodies = [
            ConvexBody::<f64>::cube(3).unwrap(),
            ConvexBody::<f64>::halfdisk_hull(32).unwrap(),
        ];
        let x = [1.0, 0.0, 0.0];
        for body in &bodies {
            for h in [[0.0, 0.3, 0.1], [0.0, -0.5, 0.4], [0.0, 0.2, -0.7]] {
                if let Some(defect) = midpoint_antipodal_defect(body, &x, &h) {
                    assert!(defect < 1e-9, "asymmetric midpoints for {}", body.describe());
                }
            }
        }
    }

    #[test]
    fn shadow_test_agrees_with_support_probe() {
        let hd = ConvexBody::<f64>::halfdisk_hull(64).unwrap();
        let x = [1.0, 0.0, 0.0];
        // an exact arc vertex of the sampled body, the glue point of the
        // top shadow segment, and two points well off the shadow
        let arc_vertex = hd.vertices().unwrap()[40].clone();
        assert!((arc_vertex[0] - 1.0).abs() < 1e-12, "pick a C+ sample");
        for p in [
            arc_vertex,
            vec![0.0, 0.0, 1.0],
            vec![1.0, 0.0, 0.0],
            vec![1.0, 0.3, 0.4],
        ] {
            let q = hd.boundary_point(&p).unwrap();
            let fast = shadow_boundary_test(&hd, &x, &q).unwrap();
            let brute = shadow_test_by_support(&hd, &x, &q);
            assert_eq!(fast, brute, "disagreement at {q:?}");
        }
    }
}
