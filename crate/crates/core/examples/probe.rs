//! Development probe: label statistics, branch counts and flatness floors
//! on the shipped bodies.  Not part of the test suite.

use mink_core::bisector::{RayLabel, ScanParams};
use mink_core::body::ConvexBody;
use mink_core::topology::{
    classify_sphere, closedness_check, connected_components, hyperplane_flatness,
    local_branch_count, separation_check, sphere_mesh,
};

fn main() {
    let level: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(4);
    let bodies: Vec<(&str, ConvexBody<f64>)> = vec![
        ("lp:2", ConvexBody::lp_ball(3, 2.0).unwrap()),
        ("lp:1.5", ConvexBody::lp_ball(3, 1.5).unwrap()),
        ("cube", ConvexBody::cube(3).unwrap()),
        ("cross", ConvexBody::cross_polytope(3).unwrap()),
        ("halfdisk", ConvexBody::halfdisk_hull(256).unwrap()),
    ];
    let mesh = sphere_mesh::<f64>(3, level, 0).unwrap();
    println!(
        "mesh level {level}: {} verts, max edge angle {:.4} rad, band {:.5}",
        mesh.len(),
        mesh.max_edge_angle(),
        mesh.default_band()
    );

    for (name, body) in &bodies {
        let x = body.boundary_point(&[1.0, 0.0, 0.0]).unwrap();
        let mut params = ScanParams::default();
        params.band = mesh.default_band();
        let t0 = std::time::Instant::now();
        let labeled = classify_sphere(body, &x, &mesh, &params);
        let dt = t0.elapsed().as_secs_f64();
        let mut counts = [0usize; 4];
        let mut band_only = 0usize;
        let mut strict = 0usize;
        let mut ideal = 0usize;
        for c in labeled.classifications() {
            let idx = match c.label {
                RayLabel::Bisector => 0,
                RayLabel::Left => 1,
                RayLabel::Right => 2,
                RayLabel::Unresolved => 3,
            };
            counts[idx] += 1;
            if c.label == RayLabel::Bisector {
                if c.band_only {
                    band_only += 1;
                }
                if !c.solutions.is_empty() {
                    strict += 1;
                }
                if c.ideal_limit {
                    ideal += 1;
                }
            }
        }
        println!("\n== {name} ({dt:.1} s)");
        println!(
            "   labels: BIS {} (strict {strict}, ideal {ideal}, band-only {band_only}) L {} R {} UNRES {}",
            counts[0], counts[1], counts[2], counts[3]
        );
        let (bis_comp, _) = connected_components(&labeled, RayLabel::Bisector);
        let (l_comp, _) = connected_components(&labeled, RayLabel::Left);
        let (r_comp, _) = connected_components(&labeled, RayLabel::Right);
        println!(
            "   components: BIS {bis_comp} L {l_comp} R {r_comp}; closed {} separated {}",
            closedness_check(&labeled),
            separation_check(&labeled)
        );

        if *name == "halfdisk" {
            for pole in [[0.0, 0.0, 1.0], [0.0, 0.0, -1.0_f64]] {
                let v = labeled.nearest_vertex(&pole);
                let lbl = labeled.label(v);
                for r_hops in [4usize, 6, 8] {
                    let bc = local_branch_count(&labeled, RayLabel::Bisector, v, r_hops);
                    println!(
                        "   pole {pole:?} -> vertex {v} ({lbl:?}): branch(r={r_hops}) = {bc:?}"
                    );
                }
            }
            // distribution of branch counts over bisector vertices
            let mut histo = std::collections::BTreeMap::<usize, usize>::new();
            let mut errs = 0usize;
            for v in 0..labeled.len() {
                if labeled.label(v) == RayLabel::Bisector {
                    match local_branch_count(&labeled, RayLabel::Bisector, v, 6) {
                        Ok(c) => *histo.entry(c).or_insert(0) += 1,
                        Err(_) => errs += 1,
                    }
                }
            }
            println!("   branch histogram (r=6): {histo:?} (annulus-empty: {errs})");
        }
    }

    // corollary-1 floors at a generic x
    println!("\n== flatness of the bounded representation (generic x)");
    let generic = [0.9, 0.45, 0.2];
    for (name, body) in &bodies {
        let x = body.boundary_point(&generic).unwrap();
        let grid = mink_core::shadow::GridParams { spacing: 0.05 };
        let mut params = ScanParams::default();
        params.band = mesh.default_band();
        let labeled = classify_sphere(body, &x, &mesh, &params);
        let rep = mink_core::shadow::bounded_representation(body, &x, &labeled, &grid).unwrap();
        let res = hyperplane_flatness(&rep.points).unwrap();
        let n_shadow = rep.shadow_points().count();
        println!("   {name}: residual {res:.3e} ({} pts, {n_shadow} shadow)", rep.points.len());
    }
    // and at the symmetric x = e1
    println!("\n== flatness at x = e1");
    for (name, body) in &bodies {
        let x = body.boundary_point(&[1.0, 0.0, 0.0]).unwrap();
        let grid = mink_core::shadow::GridParams { spacing: 0.05 };
        let mut params = ScanParams::default();
        params.band = mesh.default_band();
        let labeled = classify_sphere(body, &x, &mesh, &params);
        let rep = mink_core::shadow::bounded_representation(body, &x, &labeled, &grid).unwrap();
        let res = hyperplane_flatness(&rep.points).unwrap();
        let n_shadow = rep.shadow_points().count();
        println!("   {name}: residual {res:.3e} ({} pts, {n_shadow} shadow)", rep.points.len());
    }
}
