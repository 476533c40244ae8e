//! Convex hull of a symmetric point set, reduced to facet half-spaces.
//!
//! Only the supporting planes matter downstream (gauge evaluation is a max
//! over facets), so faces are returned as `(unit normal, offset)` pairs with
//! near-duplicates merged.

use crate::error::Error;
use crate::linalg::{dot, norm2, normalize, sub};
use crate::real::{r, Real};
use crate::Result;

/// Facet planes `<u, x> <= c` of `conv(points)` for dimension 2 or 3.
///
/// Requires a full-dimensional hull with the origin strictly interior.
pub fn hull_halfspaces<S: Real>(points: &[Vec<S>], n: usize) -> Result<(Vec<Vec<S>>, Vec<S>)> {
    let (normals, offsets) = match n {
        2 => hull_2d(points)?,
        3 => hull_3d(points)?,
        _ => {
            return Err(Error::UnsupportedDimension(n));
        }
    };
    // Origin interior check and plane dedup.
    let mut out_n: Vec<Vec<S>> = Vec::new();
    let mut out_c: Vec<S> = Vec::new();
    let tol = r(1e-9);
    for (u, c) in normals.into_iter().zip(offsets) {
        if c <= r(1e-12) {
            return Err(Error::DegenerateBody(
                "origin not interior (facet offset <= 0)".into(),
            ));
        }
        let dup = out_n.iter().zip(&out_c).any(|(v, &d)| {
            norm2(&sub(v, &u)) < tol && (d - c).abs() < tol
        });
        if !dup {
            out_n.push(u);
            out_c.push(c);
        }
    }
    // Every input point must satisfy every facet inequality.
    for p in points {
        for (u, &c) in out_n.iter().zip(&out_c) {
            if dot(u, p) > c + r(1e-9) {
                return Err(Error::DegenerateBody(
                    "hull construction left a point outside".into(),
                ));
            }
        }
    }
    Ok((out_n, out_c))
}

/// Andrew's monotone chain, edges converted to outward half-planes.
fn hull_2d<S: Real>(points: &[Vec<S>]) -> Result<(Vec<Vec<S>>, Vec<S>)> {
    if points.len() < 3 {
        return Err(Error::DegenerateBody("need at least 3 points in 2-D".into()));
    }
    let mut pts: Vec<[S; 2]> = points.iter().map(|p| [p[0], p[1]]).collect();
    pts.sort_by(|a, b| {
        a[0].partial_cmp(&b[0])
            .unwrap()
            .then(a[1].partial_cmp(&b[1]).unwrap())
    });
    pts.dedup_by(|a, b| (a[0] - b[0]).abs() < r(1e-14) && (a[1] - b[1]).abs() < r(1e-14));
    let cross = |o: [S; 2], a: [S; 2], b: [S; 2]| -> S {
        (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    };
    let mut lower: Vec<[S; 2]> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= S::zero() {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<[S; 2]> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= S::zero() {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    let hull: Vec<[S; 2]> = lower.into_iter().chain(upper).collect();
    if hull.len() < 3 {
        return Err(Error::DegenerateBody("2-D hull is degenerate".into()));
    }
    let mut normals = Vec::with_capacity(hull.len());
    let mut offsets = Vec::with_capacity(hull.len());
    for k in 0..hull.len() {
        let p = hull[k];
        let q = hull[(k + 1) % hull.len()];
        // outward normal of CCW edge p -> q
        let u = vec![q[1] - p[1], p[0] - q[0]];
        let len = norm2(&u);
        if len < r(1e-14) {
            continue;
        }
        let u = normalize(&u);
        let c = u[0] * p[0] + u[1] * p[1];
        normals.push(u);
        offsets.push(c);
    }
    Ok((normals, offsets))
}

#[derive(Clone)]
struct Face<S> {
    verts: [usize; 3],
    normal: Vec<S>,
    offset: S,
    alive: bool,
}

/// Incremental 3-D hull.  Points on an existing facet plane are skipped;
/// they do not change the hull as a set, which is all gauge evaluation sees.
fn hull_3d<S: Real>(points: &[Vec<S>]) -> Result<(Vec<Vec<S>>, Vec<S>)> {
    let m = points.len();
    if m < 4 {
        return Err(Error::DegenerateBody("need at least 4 points in 3-D".into()));
    }
    let cross3 = |a: &[S], b: &[S]| -> Vec<S> {
        vec![
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    };

    // Initial simplex: spread-out quadruple.
    let i0 = (0..m)
        .max_by(|&a, &b| norm2(&points[a]).partial_cmp(&norm2(&points[b])).unwrap())
        .unwrap();
    let i1 = (0..m)
        .max_by(|&a, &b| {
            norm2(&sub(&points[a], &points[i0]))
                .partial_cmp(&norm2(&sub(&points[b], &points[i0])))
                .unwrap()
        })
        .unwrap();
    let e01 = sub(&points[i1], &points[i0]);
    let i2 = (0..m)
        .max_by(|&a, &b| {
            let da = norm2(&cross3(&e01, &sub(&points[a], &points[i0])));
            let db = norm2(&cross3(&e01, &sub(&points[b], &points[i0])));
            da.partial_cmp(&db).unwrap()
        })
        .unwrap();
    let base_n = cross3(&e01, &sub(&points[i2], &points[i0]));
    if norm2(&base_n) < r(1e-12) {
        return Err(Error::DegenerateBody("points are collinear".into()));
    }
    let i3 = (0..m)
        .max_by(|&a, &b| {
            let da = dot(&base_n, &sub(&points[a], &points[i0])).abs();
            let db = dot(&base_n, &sub(&points[b], &points[i0])).abs();
            da.partial_cmp(&db).unwrap()
        })
        .unwrap();
    if dot(&base_n, &sub(&points[i3], &points[i0])).abs() < r(1e-12) {
        return Err(Error::DegenerateBody("points are coplanar".into()));
    }

    let quarter = r::<S>(0.25);
    let interior: Vec<S> = (0..3)
        .map(|k| (points[i0][k] + points[i1][k] + points[i2][k] + points[i3][k]) * quarter)
        .collect();

    let mut faces: Vec<Face<S>> = Vec::new();
    let mk_face = |a: usize, b: usize, c: usize, faces: &mut Vec<Face<S>>| {
        let u = cross3(&sub(&points[b], &points[a]), &sub(&points[c], &points[a]));
        let len = norm2(&u);
        if len < r(1e-14) {
            return; // sliver; neighboring facets carry the same support plane
        }
        let mut u = normalize(&u);
        let mut off = dot(&u, &points[a]);
        if dot(&u, &interior) > off {
            u = u.iter().map(|&x| -x).collect();
            off = -off;
        }
        faces.push(Face { verts: [a, b, c], normal: u, offset: off, alive: true });
    };
    mk_face(i0, i1, i2, &mut faces);
    mk_face(i0, i1, i3, &mut faces);
    mk_face(i0, i2, i3, &mut faces);
    mk_face(i1, i2, i3, &mut faces);

    let eps = r::<S>(1e-12);
    for (p_idx, p) in points.iter().enumerate() {
        if p_idx == i0 || p_idx == i1 || p_idx == i2 || p_idx == i3 {
            continue;
        }
        let scale = S::one() + norm2(p);
        let visible: Vec<usize> = faces
            .iter()
            .enumerate()
            .filter(|(_, f)| f.alive && dot(&f.normal, p) > f.offset + eps * scale)
            .map(|(i, _)| i)
            .collect();
        if visible.is_empty() {
            continue; // interior or on a face
        }
        // Horizon: edges of the visible region seen exactly once.
        let mut edge_count: std::collections::HashMap<(usize, usize), usize> =
            std::collections::HashMap::new();
        for &fi in &visible {
            let [a, b, c] = faces[fi].verts;
            for &(s, t) in &[(a, b), (b, c), (c, a)] {
                *edge_count.entry((s.min(t), s.max(t))).or_insert(0) += 1;
            }
        }
        let mut horizon: Vec<(usize, usize)> = Vec::new();
        for &fi in &visible {
            let [a, b, c] = faces[fi].verts;
            for &(s, t) in &[(a, b), (b, c), (c, a)] {
                if edge_count[&(s.min(t), s.max(t))] == 1 {
                    horizon.push((s, t));
                }
            }
        }
        for &fi in &visible {
            faces[fi].alive = false;
        }
        for (s, t) in horizon {
            mk_face(s, t, p_idx, &mut faces);
        }
    }

    let mut normals = Vec::new();
    let mut offsets = Vec::new();
    for f in faces.into_iter().filter(|f| f.alive) {
        normals.push(f.normal);
        offsets.push(f.offset);
    }
    if normals.len() < 4 {
        return Err(Error::DegenerateBody("3-D hull is degenerate".into()));
    }
    Ok((normals, offsets))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_vertices_give_six_planes() {
        let mut pts = Vec::new();
        for &x in &[-1.0_f64, 1.0] {
            for &y in &[-1.0, 1.0] {
                for &z in &[-1.0, 1.0] {
                    pts.push(vec![x, y, z]);
                }
            }
        }
        let (normals, offsets) = hull_halfspaces(&pts, 3).unwrap();
        assert_eq!(normals.len(), 6);
        for (u, c) in normals.iter().zip(&offsets) {
            assert!((c - 1.0).abs() < 1e-12);
            let max_comp = u.iter().fold(0.0_f64, |m, &x| m.max(x.abs()));
            assert!((max_comp - 1.0).abs() < 1e-12, "axis-aligned normal expected");
        }
    }

    #[test]
    fn square_gives_four_halfplanes() {
        let pts = vec![
            vec![1.0_f64, 1.0],
            vec![-1.0, 1.0],
            vec![-1.0, -1.0],
            vec![1.0, -1.0],
        ];
        let (normals, offsets) = hull_halfspaces(&pts, 2).unwrap();
        assert_eq!(normals.len(), 4);
        for c in &offsets {
            assert!((c - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn octahedron_vertices_give_eight_planes() {
        let mut pts = Vec::new();
        for k in 0..3 {
            for &s in &[1.0_f64, -1.0] {
                let mut v = vec![0.0; 3];
                v[k] = s;
                pts.push(v);
            }
        }
        let (normals, _) = hull_halfspaces(&pts, 3).unwrap();
        assert_eq!(normals.len(), 8);
    }

    #[test]
    fn interior_points_are_ignored() {
        let mut pts = vec![
            vec![1.0_f64, 1.0, 1.0],
            vec![1.0, 1.0, -1.0],
            vec![1.0, -1.0, 1.0],
            vec![1.0, -1.0, -1.0],
            vec![-1.0, 1.0, 1.0],
            vec![-1.0, 1.0, -1.0],
            vec![-1.0, -1.0, 1.0],
            vec![-1.0, -1.0, -1.0],
        ];
        pts.push(vec![0.3, 0.2, -0.4]);
        pts.push(vec![0.0, 0.0, 0.0]);
        let (normals, _) = hull_halfspaces(&pts, 3).unwrap();
        assert_eq!(normals.len(), 6);
    }

    #[test]
    fn off_center_symmetric_hull_rejected_when_origin_outside() {
        // shifted tetrahedron-ish cloud far from origin
        let pts = vec![
            vec![5.0_f64, 5.0, 5.0],
            vec![6.0, 5.0, 5.0],
            vec![5.0, 6.0, 5.0],
            vec![5.0, 5.0, 6.0],
        ];
        assert!(hull_halfspaces(&pts, 3).is_err());
    }
}
