//! Artifact writers: CSV, JSON and OBJ, always through a temporary file
//! with an atomic rename so failures never leave partial artifacts.

use std::io::Write;
use std::path::{Path, PathBuf};

use mink_core::bisector::RayLabel;
use mink_core::shadow::{BoundedRepresentation, RepTag};
use mink_core::topology::LabeledMesh;

/// Destination for an artifact: stdout or a file written atomically.
pub enum Sink {
    Stdout,
    File(PathBuf),
}

impl Sink {
    pub fn from_arg(out: &Option<PathBuf>) -> Sink {
        match out {
            None => Sink::Stdout,
            Some(p) => Sink::File(p.clone()),
        }
    }

    pub fn write(&self, content: &str) -> std::io::Result<()> {
        match self {
            Sink::Stdout => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(content.as_bytes())
            }
            Sink::File(path) => atomic_write(path, content),
        }
    }
}

fn atomic_write(path: &Path, content: &str) -> std::io::Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let tmp = dir.join(format!(
        ".{}.tmp-{}",
        path.file_name().and_then(|s| s.to_str()).unwrap_or("artifact"),
        std::process::id()
    ));
    std::fs::write(&tmp, content)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

fn coord_headers(n: usize) -> &'static str {
    match n {
        2 => "vx,vy",
        3 => "vx,vy,vz",
        _ => "vx,vy,vz,vw",
    }
}

fn join_coords(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Classification artifact as CSV.
pub fn classify_csv(mesh: &LabeledMesh<f64>) -> String {
    let mut out = String::new();
    out.push_str(coord_headers(mesh.dim()));
    out.push_str(",label,ideal_limit,root_count\n");
    for (v, c) in mesh.boundary_vertices().iter().zip(mesh.classifications()) {
        out.push_str(&join_coords(v));
        out.push_str(&format!(
            ",{},{},{}\n",
            c.label.as_str(),
            c.ideal_limit,
            c.root_count()
        ));
    }
    out
}

/// Classification artifact as JSON, including the mesh adjacency.
pub fn classify_json(mesh: &LabeledMesh<f64>, config: &serde_json::Value) -> String {
    let vertices: Vec<serde_json::Value> = mesh
        .boundary_vertices()
        .iter()
        .zip(mesh.classifications())
        .map(|(v, c)| {
            serde_json::json!({
                "v": v,
                "label": c.label.as_str(),
                "ideal_limit": c.ideal_limit,
                "root_count": c.root_count(),
            })
        })
        .collect();
    let edges: Vec<[usize; 2]> = mesh.edges().iter().map(|&(i, j)| [i, j]).collect();
    serde_json::to_string_pretty(&serde_json::json!({
        "config": config,
        "vertices": vertices,
        "edges": edges,
    }))
    .expect("serializable")
    + "\n"
}

/// Classification artifact as OBJ: labeled points with the mesh wireframe.
pub fn classify_obj(mesh: &LabeledMesh<f64>) -> String {
    let mut out = String::new();
    for v in mesh.boundary_vertices() {
        out.push_str("v");
        for x in v.iter().chain(std::iter::repeat(&0.0).take(3 - v.len().min(3))) {
            out.push_str(&format!(" {x}"));
        }
        out.push('\n');
    }
    if mesh.dim() == 3 {
        for &(i, j) in mesh.edges() {
            out.push_str(&format!("l {} {}\n", i + 1, j + 1));
        }
    }
    out
}

/// Bounded representation as CSV with provenance tags.
pub fn rep_csv(rep: &BoundedRepresentation<f64>) -> String {
    let n = rep.points.first().map(|p| p.len()).unwrap_or(3);
    let mut out = String::new();
    out.push_str(coord_headers(n));
    out.push_str(",tag\n");
    for (p, tag) in rep.points.iter().zip(&rep.tags) {
        out.push_str(&join_coords(p));
        out.push_str(match tag {
            RepTag::Midpoint => ",MIDPOINT\n",
            RepTag::Shadow => ",SHADOW\n",
        });
    }
    out
}

/// Bounded representation as JSON.
pub fn rep_json(rep: &BoundedRepresentation<f64>, config: &serde_json::Value) -> String {
    let points: Vec<serde_json::Value> = rep
        .points
        .iter()
        .zip(&rep.tags)
        .map(|(p, tag)| {
            serde_json::json!({
                "p": p,
                "tag": match tag { RepTag::Midpoint => "MIDPOINT", RepTag::Shadow => "SHADOW" },
            })
        })
        .collect();
    serde_json::to_string_pretty(&serde_json::json!({
        "config": config,
        "points": points,
    }))
    .expect("serializable")
    + "\n"
}

/// Bounded representation as OBJ: the point cloud, plus the wireframe of
/// mesh edges joining shadow-tagged points in dimension 3.
pub fn rep_obj(rep: &BoundedRepresentation<f64>, mesh: &LabeledMesh<f64>) -> String {
    let mut out = String::new();
    for p in &rep.points {
        out.push_str("v");
        for x in p {
            out.push_str(&format!(" {x}"));
        }
        out.push('\n');
    }
    if mesh.dim() == 3 {
        // map shadow points back to their mesh vertices to draw edges
        let mut obj_index = vec![usize::MAX; mesh.len()];
        let mut shadow_cursor = 0usize;
        let shadow_flags: Vec<bool> = rep
            .tags
            .iter()
            .map(|t| matches!(t, RepTag::Shadow))
            .collect();
        let shadow_positions: Vec<usize> = (0..rep.points.len())
            .filter(|&i| shadow_flags[i])
            .collect();
        for v in 0..mesh.len() {
            let b = &mesh.boundary_vertices()[v];
            if shadow_cursor < shadow_positions.len() {
                let idx = shadow_positions[shadow_cursor];
                if rep.points[idx] == *b {
                    obj_index[v] = idx;
                    shadow_cursor += 1;
                }
            }
        }
        for &(i, j) in mesh.edges() {
            if obj_index[i] != usize::MAX && obj_index[j] != usize::MAX {
                out.push_str(&format!("l {} {}\n", obj_index[i] + 1, obj_index[j] + 1));
            }
        }
    }
    out
}

/// Count of unresolved labels, for the exit-code contract.
pub fn unresolved_count(mesh: &LabeledMesh<f64>) -> usize {
    (0..mesh.len())
        .filter(|&v| mesh.label(v) == RayLabel::Unresolved)
        .count()
}
