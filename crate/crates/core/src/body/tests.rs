use super::*;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn cube_vertices(n: usize) -> Vec<Vec<f64>> {
    let mut verts = Vec::new();
    for mask in 0..(1usize << n) {
        let v = (0..n)
            .map(|k| if mask >> k & 1 == 1 { 1.0 } else { -1.0 })
            .collect();
        verts.push(v);
    }
    verts
}

fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect()
}

#[test]
fn gauge_euclidean_pythagoras() {
    let ball = ConvexBody::<f64>::lp_ball(2, 2.0).unwrap();
    assert!((ball.gauge(&[3.0, 4.0]) - 5.0).abs() < 1e-12);
}

#[test]
fn gauge_cube_h_form_is_max_norm() {
    let cube = ConvexBody::<f64>::cube(3).unwrap();
    assert!((cube.gauge(&[0.2, -1.5, 0.7]) - 1.5).abs() < 1e-12);
}

#[test]
fn gauge_cube_v_form_matches_h_form() {
    let h = ConvexBody::<f64>::cube(3).unwrap();
    let v = ConvexBody::polytope_v(cube_vertices(3)).unwrap();
    assert!((v.gauge(&[0.2, -1.5, 0.7]) - 1.5).abs() < 1e-9);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let x = random_vec(&mut rng, 3);
        assert!((h.gauge(&x) - v.gauge(&x)).abs() <= 1e-9 * (1.0 + h.gauge(&x)));
    }
}

#[test]
fn gauge_cross_v_form_matches_l1() {
    let l1 = ConvexBody::<f64>::lp_ball(3, 1.0).unwrap();
    let cross = ConvexBody::<f64>::cross_polytope(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let x = random_vec(&mut rng, 3);
        assert!((l1.gauge(&x) - cross.gauge(&x)).abs() <= 1e-9 * (1.0 + l1.gauge(&x)));
    }
}

#[test]
fn gauge_v_form_lp_route_matches_hull_route_n4() {
    // cross-polytope in R^4 runs the LP; compare against the l1 closed form
    let cross = ConvexBody::<f64>::cross_polytope(4).unwrap();
    let l1 = ConvexBody::<f64>::lp_ball(4, 1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let x = random_vec(&mut rng, 4);
        assert!((cross.gauge(&x) - l1.gauge(&x)).abs() <= 1e-8 * (1.0 + l1.gauge(&x)));
    }
}

#[test]
fn gauge_zero_is_zero_and_positive_elsewhere() {
    for body in [
        ConvexBody::<f64>::lp_ball(3, 1.5).unwrap(),
        ConvexBody::<f64>::cube(3).unwrap(),
        ConvexBody::<f64>::halfdisk_hull(32).unwrap(),
    ] {
        assert_eq!(body.gauge(&[0.0, 0.0, 0.0]), 0.0);
        assert!(body.gauge(&[1e-3, 0.0, 0.0]) > 0.0);
    }
}

#[test]
fn support_cube_vertex() {
    let cube = ConvexBody::<f64>::cube(3).unwrap();
    assert!((cube.support(&[1.0, 1.0, 1.0]) - 3.0).abs() < 1e-9);
}

#[test]
fn support_euclidean_is_l2() {
    let ball = ConvexBody::<f64>::lp_ball(3, 2.0).unwrap();
    assert!((ball.support(&[0.0, 2.0, 0.0]) - 2.0).abs() < 1e-12);
}

#[test]
fn support_halfdisk_triangle_plane() {
    // supporting plane of a triangle face touches both arcs at offset 1
    let hd = ConvexBody::<f64>::halfdisk_hull(64).unwrap();
    assert!((hd.support(&[-1.0, 2.0, 0.0]) - 1.0).abs() < 1e-12);
    assert!((hd.support(&[1.0, -2.0, 0.0]) - 1.0).abs() < 1e-12);
    // and the end planes
    assert!((hd.support(&[1.0, 0.0, 0.0]) - 1.0).abs() < 1e-12);
}

#[test]
fn support_matches_vertex_max_on_halfdisk_samples() {
    let hd = ConvexBody::<f64>::halfdisk_hull(256).unwrap();
    let verts = hd.vertices().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..100 {
        let u = random_vec(&mut rng, 3);
        if u.iter().all(|&x| x == 0.0) {
            continue;
        }
        let analytic = hd.support(&u);
        let sampled = verts
            .iter()
            .map(|w| dot(&u, w))
            .fold(f64::NEG_INFINITY, f64::max);
        // sampled polytope is inscribed; analytic support dominates slightly
        assert!(sampled <= analytic + 1e-12);
        assert!(analytic - sampled < 1e-3, "arc sampling gap too large");
    }
}

#[test]
fn boundary_point_examples() {
    let ball = ConvexBody::<f64>::lp_ball(3, 2.0).unwrap();
    let p = ball.boundary_point(&[0.0, 0.0, 5.0]).unwrap();
    assert!((p[2] - 1.0).abs() < 1e-12 && p[0].abs() < 1e-12);

    let cube = ConvexBody::<f64>::cube(3).unwrap();
    let p = cube.boundary_point(&[2.0, 1.0, 0.0]).unwrap();
    assert!((p[0] - 1.0).abs() < 1e-12 && (p[1] - 0.5).abs() < 1e-12);

    let l1 = ConvexBody::<f64>::lp_ball(2, 1.0).unwrap();
    let p = l1.boundary_point(&[1.0, 1.0]).unwrap();
    assert!((p[0] - 0.5).abs() < 1e-12 && (p[1] - 0.5).abs() < 1e-12);

    assert!(matches!(
        ball.boundary_point(&[0.0, 0.0, 0.0]),
        Err(Error::ZeroVector)
    ));
}

#[test]
fn validate_passes_on_full_cube_vertex_set() {
    let spec = BodySpec::PolytopeV { vertices: cube_vertices(3), tolerances: None };
    assert!(spec.validate_data().passed);
}

#[test]
fn validate_flags_missing_antipode() {
    let mut verts = cube_vertices(3);
    verts.pop();
    let spec = BodySpec::PolytopeV { vertices: verts.clone(), tolerances: None };
    let report = spec.validate_data();
    assert!(!report.passed);
    assert!(report.issues.iter().any(|s| s.contains("not centrally symmetric")));
    assert!(ConvexBody::<f64>::polytope_v(verts).is_err());
}

#[test]
fn validate_flags_zero_offset() {
    let spec = BodySpec::PolytopeH {
        normals: vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]],
        offsets: vec![0.0, 0.0, 1.0, 1.0],
        tolerances: None,
    };
    let report = spec.validate_data();
    assert!(!report.passed);
    assert!(report.issues.iter().any(|s| s.contains("origin not interior")));
}

#[test]
fn unbounded_h_polytope_rejected() {
    // slab |x1| <= 1 in R^2: symmetric but unbounded
    let res = ConvexBody::<f64>::polytope_h(
        vec![vec![1.0, 0.0], vec![-1.0, 0.0]],
        vec![1.0, 1.0],
    );
    assert!(res.is_err());
}

#[test]
fn spec_round_trip_preserves_gauge() {
    let probes: Vec<Vec<f64>> = vec![
        vec![1.0, 0.2, -0.4],
        vec![-0.3, 0.9, 0.1],
        vec![0.5, -0.5, 0.5],
        vec![2.0, 1.0, -1.0],
    ];
    for body in [
        ConvexBody::<f64>::lp_ball(3, 2.0).unwrap(),
        ConvexBody::<f64>::lp_ball(3, 1.5).unwrap(),
        ConvexBody::<f64>::lp_ball(3, f64::INFINITY).unwrap(),
        ConvexBody::<f64>::cube(3).unwrap(),
        ConvexBody::<f64>::cross_polytope(3).unwrap(),
        ConvexBody::<f64>::halfdisk_hull(32).unwrap(),
    ] {
        let spec = body.to_spec();
        let text = spec.to_json();
        let reloaded = ConvexBody::<f64>::from_spec(&BodySpec::from_json(&text).unwrap()).unwrap();
        for p in &probes {
            assert!(
                (body.gauge(p) - reloaded.gauge(p)).abs() <= 1e-12,
                "round-trip gauge drift for {}",
                body.describe()
            );
        }
    }
}

#[test]
fn spec_examples_parse() {
    let ball = ConvexBody::<f64>::from_spec(
        &BodySpec::from_json(r#"{"type":"lp","p":2,"n":3}"#).unwrap(),
    )
    .unwrap();
    assert!((ball.gauge(&[3.0, 0.0, 4.0]) - 5.0).abs() < 1e-12);

    let hd = ConvexBody::<f64>::from_spec(
        &BodySpec::from_json(r#"{"type":"halfdisk-hull","m":256}"#).unwrap(),
    )
    .unwrap();
    assert_eq!(hd.dim(), 3);
    assert!((hd.support(&[-1.0, 2.0, 0.0]) - 1.0).abs() < 1e-12);

    let linf = ConvexBody::<f64>::from_spec(
        &BodySpec::from_json(r#"{"type":"lp","p":"inf","n":2}"#).unwrap(),
    )
    .unwrap();
    assert!((linf.gauge(&[0.5, -2.0]) - 2.0).abs() < 1e-12);

    let mut verts = Vec::new();
    for k in 0..3 {
        for s in [1.0, -1.0] {
            let mut v = vec![0.0; 3];
            v[k] = s;
            verts.push(v);
        }
    }
    let spec = BodySpec::PolytopeV { vertices: verts, tolerances: None };
    let cross = ConvexBody::<f64>::from_spec(&spec).unwrap();
    assert!((cross.gauge(&[1.0, 1.0, 1.0]) - 3.0).abs() < 1e-9);
}

#[test]
fn from_tag_shortcuts() {
    assert_eq!(ConvexBody::<f64>::from_tag("cube", 3).unwrap().dim(), 3);
    assert_eq!(ConvexBody::<f64>::from_tag("cross", 4).unwrap().dim(), 4);
    assert!((ConvexBody::<f64>::from_tag("lp:1.5", 3).unwrap().gauge(&[1.0, 0.0, 0.0]) - 1.0).abs() < 1e-12);
    assert!(ConvexBody::<f64>::from_tag("lp:inf", 2).is_ok());
    assert!(ConvexBody::<f64>::from_tag("halfdisk:64", 3).is_ok());
    assert!(ConvexBody::<f64>::from_tag("noodle", 3).is_err());
}

#[test]
fn homogeneity_and_symmetry_over_random_samples() {
    let bodies = [
        ConvexBody::<f64>::lp_ball(3, 2.0).unwrap(),
        ConvexBody::<f64>::lp_ball(3, 1.5).unwrap(),
        ConvexBody::<f64>::cube(3).unwrap(),
        ConvexBody::<f64>::cross_polytope(3).unwrap(),
        ConvexBody::<f64>::halfdisk_hull(64).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for body in &bodies {
        let eps = body.tolerances().gauge;
        for _ in 0..1000 {
            let v = random_vec(&mut rng, 3);
            let g1 = body.gauge(&v);
            let g2 = body.gauge(&scale(&v, 2.0));
            assert!((g2 - 2.0 * g1).abs() <= eps * g2.max(1e-30));
            let gn = body.gauge(&neg(&v));
            assert!((gn - g1).abs() <= eps * g1.max(1e-30));
        }
    }
}

#[test]
fn subadditivity_over_random_samples() {
    let bodies = [
        ConvexBody::<f64>::lp_ball(3, 1.5).unwrap(),
        ConvexBody::<f64>::cube(3).unwrap(),
        ConvexBody::<f64>::halfdisk_hull(64).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for body in &bodies {
        let eps = body.tolerances().gauge;
        for _ in 0..500 {
            let u = random_vec(&mut rng, 3);
            let v = random_vec(&mut rng, 3);
            let lhs = body.gauge(&crate::linalg::add(&u, &v));
            assert!(lhs <= body.gauge(&u) + body.gauge(&v) + eps);
        }
    }
}

#[test]
fn dual_pairing_bound() {
    let bodies = [
        ConvexBody::<f64>::lp_ball(3, 2.0).unwrap(),
        ConvexBody::<f64>::lp_ball(3, 3.0).unwrap(),
        ConvexBody::<f64>::cube(3).unwrap(),
        ConvexBody::<f64>::halfdisk_hull(64).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for body in &bodies {
        let eps = body.tolerances().gauge;
        for _ in 0..300 {
            let u = random_vec(&mut rng, 3);
            let v = random_vec(&mut rng, 3);
            if u.iter().all(|&x| x == 0.0) || v.iter().all(|&x| x == 0.0) {
                continue;
            }
            assert!(dot(&u, &v) <= body.support(&u) * body.gauge(&v) * (1.0 + eps) + 1e-12);
        }
    }
}

#[test]
fn membership_consistency_on_boundary() {
    let cube = ConvexBody::<f64>::cube(3).unwrap();
    let eps = cube.tolerances().gauge;
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..200 {
        let v = random_vec(&mut rng, 3);
        if v.iter().all(|&x| x == 0.0) {
            continue;
        }
        let b = cube.boundary_point(&v).unwrap();
        // every facet inequality holds at the boundary point
        for k in 0..3 {
            assert!(b[k].abs() <= 1.0 + eps);
        }
        assert!((cube.gauge(&b) - 1.0).abs() <= eps);
    }
}

#[test]
fn halfdisk_vertex_count_and_endpoints() {
    let hd = ConvexBody::<f64>::halfdisk_hull(16).unwrap();
    let verts = hd.vertices().unwrap();
    assert_eq!(verts.len(), 2 * 17);
    for target in [
        vec![1.0, 0.0, 1.0],
        vec![1.0, 0.0, -1.0],
        vec![-1.0, 0.0, 1.0],
        vec![-1.0, 0.0, -1.0],
        vec![1.0, 1.0, 0.0],
        vec![-1.0, -1.0, 0.0],
    ] {
        assert!(
            verts.iter().any(|v| v == &target),
            "vertex {target:?} missing"
        );
    }
}
