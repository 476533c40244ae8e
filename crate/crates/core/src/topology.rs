//! Sphere meshes, three-way labeling of directions, and the discrete
//! topology probes: component counts, separation and closedness checks,
//! local branch counting, Hausdorff distance, and hyperplane flatness.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;

use crate::bisector::{classify_direction, RayClassification, RayLabel, ScanParams};
use crate::body::ConvexBody;
use crate::error::Error;
use crate::linalg::{angle, dot, neg, norm2, normalize, sub, symmetric_eigenvalues};
use crate::real::{r, Real};
use crate::Result;

/// Sphere mesh with optional per-vertex classifications.
///
/// Vertices come in exact antipodal pairs and the antipode map is an
/// adjacency-preserving involution by construction.
#[derive(Clone, Debug)]
pub struct LabeledMesh<S> {
    n: usize,
    directions: Vec<Vec<S>>,
    boundary: Vec<Vec<S>>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    antipode: Vec<usize>,
    labels: Vec<RayClassification<S>>,
}

impl<S: Real> LabeledMesh<S> {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    /// Euclidean-unit direction of each vertex.
    pub fn directions(&self) -> &[Vec<S>] {
        &self.directions
    }

    /// Gauge-normalized vertices once a body is attached by
    /// [`classify_sphere`]; Euclidean-unit before that.
    pub fn boundary_vertices(&self) -> &[Vec<S>] {
        &self.boundary
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn antipode(&self, v: usize) -> usize {
        self.antipode[v]
    }

    pub fn is_labeled(&self) -> bool {
        !self.labels.is_empty()
    }

    pub fn classifications(&self) -> &[RayClassification<S>] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> RayLabel {
        self.labels[v].label
    }

    /// Largest angular edge length (the mesh resolution).
    pub fn max_edge_angle(&self) -> S {
        self.edges
            .iter()
            .map(|&(i, j)| angle(&self.directions[i], &self.directions[j]))
            .fold(S::zero(), S::max)
    }

    /// Near-miss band matched to the mesh resolution: a direction whose
    /// cell straddles the bisector has proximity up to about the edge
    /// angle, with an O(1) safety factor.
    pub fn default_band(&self) -> S {
        r::<S>(1.25) * self.max_edge_angle().sin()
    }

    pub fn nearest_vertex(&self, dir: &[S]) -> usize {
        let d = normalize(dir);
        (0..self.len())
            .max_by(|&a, &b| {
                dot(&self.directions[a], &d)
                    .partial_cmp(&dot(&self.directions[b], &d))
                    .unwrap()
            })
            .unwrap()
    }

    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.len()
    }

    /// Hop distances from `v` over the full mesh graph.
    pub fn hop_distances(&self, v: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.len()];
        dist[v] = 0;
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

fn build_adjacency(len: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); len];
    for &(i, j) in edges {
        adj[i].push(j);
        adj[j].push(i);
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    adj
}

/// Antipode pairing by exact bit-pattern lookup; mesh constructions keep
/// `v -> -v` exact in floating point.
fn pair_antipodes<S: Real>(directions: &[Vec<S>]) -> Result<Vec<usize>> {
    let key = |v: &[S]| -> Vec<u64> {
        v.iter()
            .map(|x| {
                let x = x.to_f64().unwrap();
                // fold -0.0 onto +0.0 so negation round-trips bitwise
                if x == 0.0 { 0.0_f64.to_bits() } else { x.to_bits() }
            })
            .collect()
    };
    let mut index: HashMap<Vec<u64>, usize> = HashMap::new();
    for (i, v) in directions.iter().enumerate() {
        index.insert(key(v), i);
    }
    let mut antipode = vec![usize::MAX; directions.len()];
    for (i, v) in directions.iter().enumerate() {
        let j = *index
            .get(&key(&neg(v)))
            .ok_or_else(|| Error::DegenerateBody("mesh not antipodally closed".into()))?;
        if j == i {
            return Err(Error::DegenerateBody("self-antipodal mesh vertex".into()));
        }
        antipode[i] = j;
    }
    Ok(antipode)
}

/// Unlabeled sphere mesh.
///
/// * `n = 2`: regular `2^level`-gon with exact antipodal pairs.
/// * `n = 3`: icosphere subdivided `level` times (level 4 has 2562
///   vertices of degree 5 or 6).
/// * `n = 4`: seeded random antipodal point set with symmetrized 8-nearest
///   neighbor adjacency; combinatorial conclusions at `n = 4` are advisory.
pub fn sphere_mesh<S: Real>(n: usize, level: u32, seed: u64) -> Result<LabeledMesh<S>> {
    match n {
        2 => polygon_mesh(level),
        3 => icosphere_mesh(level),
        4 => random_mesh_4d(level, seed),
        _ => Err(Error::UnsupportedDimension(n)),
    }
}

fn polygon_mesh<S: Real>(level: u32) -> Result<LabeledMesh<S>> {
    if level < 2 || level > 24 {
        return Err(Error::DegenerateBody("polygon level out of range".into()));
    }
    let count = 1usize << level;
    let half = count / 2;
    let mut directions: Vec<Vec<S>> = Vec::with_capacity(count);
    for k in 0..half {
        let phi = 2.0 * std::f64::consts::PI * (k as f64) / (count as f64);
        directions.push(vec![r(phi.cos()), r(phi.sin())]);
    }
    for k in 0..half {
        directions.push(neg(&directions[k]));
    }
    // antipode(k) sits at angle phi_k + pi, so the circular order is
    // 0, 1, .., half-1 followed by half, half+1, .., count-1.
    let mut edges = Vec::with_capacity(count);
    for k in 0..count {
        edges.push((k, (k + 1) % count));
    }
    let edges: Vec<(usize, usize)> = edges
        .into_iter()
        .map(|(i, j)| (i.min(j), i.max(j)))
        .collect();
    let adjacency = build_adjacency(count, &edges);
    let antipode = pair_antipodes(&directions)?;
    Ok(LabeledMesh {
        n: 2,
        boundary: directions.clone(),
        directions,
        edges,
        adjacency,
        antipode,
        labels: Vec::new(),
    })
}

fn icosphere_mesh<S: Real>(level: u32) -> Result<LabeledMesh<S>> {
    if level > 7 {
        return Err(Error::DegenerateBody("icosphere level out of range".into()));
    }
    let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
    let raw = [
        [-1.0, phi, 0.0],
        [1.0, phi, 0.0],
        [-1.0, -phi, 0.0],
        [1.0, -phi, 0.0],
        [0.0, -1.0, phi],
        [0.0, 1.0, phi],
        [0.0, -1.0, -phi],
        [0.0, 1.0, -phi],
        [phi, 0.0, -1.0],
        [phi, 0.0, 1.0],
        [-phi, 0.0, -1.0],
        [-phi, 0.0, 1.0],
    ];
    let mut verts: Vec<Vec<S>> = raw
        .iter()
        .map(|v| normalize(&[r::<S>(v[0]), r(v[1]), r(v[2])]))
        .collect();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];

    for _ in 0..level {
        let mut midpoint_cache: HashMap<(usize, usize), usize> = HashMap::new();
        let mut next_faces = Vec::with_capacity(faces.len() * 4);
        for f in &faces {
            let mut mid = [0usize; 3];
            for e in 0..3 {
                let a = f[e];
                let b = f[(e + 1) % 3];
                let key = (a.min(b), a.max(b));
                mid[e] = *midpoint_cache.entry(key).or_insert_with(|| {
                    let half = r::<S>(0.5);
                    let m: Vec<S> = verts[a]
                        .iter()
                        .zip(&verts[b])
                        .map(|(&p, &q)| (p + q) * half)
                        .collect();
                    verts.push(normalize(&m));
                    verts.len() - 1
                });
            }
            next_faces.push([f[0], mid[0], mid[2]]);
            next_faces.push([f[1], mid[1], mid[0]]);
            next_faces.push([f[2], mid[2], mid[1]]);
            next_faces.push([mid[0], mid[1], mid[2]]);
        }
        faces = next_faces;
    }

    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(faces.len() * 3 / 2);
    for f in &faces {
        for e in 0..3 {
            let a = f[e];
            let b = f[(e + 1) % 3];
            edges.push((a.min(b), a.max(b)));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let adjacency = build_adjacency(verts.len(), &edges);
    let antipode = pair_antipodes(&verts)?;
    Ok(LabeledMesh {
        n: 3,
        boundary: verts.clone(),
        directions: verts,
        edges,
        adjacency,
        antipode,
        labels: Vec::new(),
    })
}

fn random_mesh_4d<S: Real>(level: u32, seed: u64) -> Result<LabeledMesh<S>> {
    use rand::prelude::*;
    use rand_distr_shim::sample_gaussian;

    let total = 10 * 4usize.pow(level) + 2;
    let half = total / 2;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut directions: Vec<Vec<S>> = Vec::with_capacity(2 * half);
    for _ in 0..half {
        loop {
            let v: Vec<f64> = (0..4).map(|_| sample_gaussian(&mut rng)).collect();
            let len = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if len > 1e-6 {
                directions.push(v.iter().map(|&x| r(x / len)).collect());
                break;
            }
        }
    }
    for k in 0..half {
        directions.push(neg(&directions[k]));
    }
    let count = directions.len();

    // Symmetrized k-nearest-neighbor adjacency (k = 8).
    let k_nn = 8;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let antipode_of = |i: usize| if i < half { i + half } else { i - half };
    for i in 0..count {
        let mut dists: Vec<(usize, S)> = (0..count)
            .filter(|&j| j != i)
            .map(|j| (j, norm2(&sub(&directions[i], &directions[j]))))
            .collect();
        dists.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        for &(j, _) in dists.iter().take(k_nn) {
            edges.push((i.min(j), i.max(j)));
            let (ai, aj) = (antipode_of(i), antipode_of(j));
            edges.push((ai.min(aj), ai.max(aj)));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let adjacency = build_adjacency(count, &edges);
    let antipode = pair_antipodes(&directions)?;
    Ok(LabeledMesh {
        n: 4,
        boundary: directions.clone(),
        directions,
        edges,
        adjacency,
        antipode,
        labels: Vec::new(),
    })
}

/// Box-Muller, kept local so the mesh only depends on a seeded `rand` core.
mod rand_distr_shim {
    use rand::Rng;

    pub fn sample_gaussian<R: Rng>(rng: &mut R) -> f64 {
        loop {
            let u: f64 = rng.gen_range(f64::EPSILON..1.0);
            let v: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let g = (-2.0 * u.ln()).sqrt() * v.cos();
            if g.is_finite() {
                return g;
            }
        }
    }
}

/// Classify every vertex direction of the mesh against `B(-x, x)`.
///
/// Classification runs once per antipodal pair and mirrors the result, so
/// the antipodal label law holds exactly.  `Unresolved` verdicts propagate
/// into the labels; verification suites treat them as failures.
pub fn classify_sphere<S: Real>(
    body: &ConvexBody<S>,
    x: &[S],
    mesh: &LabeledMesh<S>,
    params: &ScanParams<S>,
) -> LabeledMesh<S> {
    let mut out = mesh.clone();
    out.boundary = mesh
        .directions
        .par_iter()
        .map(|v| body.boundary_point(v).expect("mesh directions are nonzero"))
        .collect();

    let mut slots: Vec<Option<RayClassification<S>>> = vec![None; mesh.len()];
    let reps: Vec<usize> = (0..mesh.len())
        .filter(|&i| i <= mesh.antipode[i])
        .collect();
    let classified: Vec<(usize, RayClassification<S>)> = reps
        .par_iter()
        .map(|&i| {
            let y = body
                .boundary_point(&mesh.directions[i])
                .expect("mesh directions are nonzero");
            (i, classify_direction(body, x, &y, params))
        })
        .collect();
    for (i, class) in classified {
        let j = mesh.antipode[i];
        let mirrored = RayClassification {
            direction: neg(&class.direction),
            label: class.label.mirror(),
            solutions: class.solutions.clone(),
            ideal_limit: class.ideal_limit,
            band_only: class.band_only,
            proximity: class.proximity,
            f_tail: -class.f_tail,
            note: class.note.clone(),
        };
        slots[i] = Some(class);
        slots[j] = Some(mirrored);
    }
    out.labels = slots.into_iter().map(|c| c.expect("all vertices classified")).collect();
    out
}

/// Component count and membership of the subgraph induced by one label.
pub fn connected_components<S: Real>(
    mesh: &LabeledMesh<S>,
    label: RayLabel,
) -> (usize, Vec<Option<usize>>) {
    assert!(mesh.is_labeled(), "mesh must be classified first");
    let mut membership: Vec<Option<usize>> = vec![None; mesh.len()];
    let mut count = 0;
    for start in 0..mesh.len() {
        if mesh.label(start) != label || membership[start].is_some() {
            continue;
        }
        let comp = count;
        count += 1;
        membership[start] = Some(comp);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in mesh.neighbors(v) {
                if mesh.label(w) == label && membership[w].is_none() {
                    membership[w] = Some(comp);
                    queue.push_back(w);
                }
            }
        }
    }
    (count, membership)
}

/// Discrete closedness: no left vertex touches a right vertex directly.
pub fn closedness_check<S: Real>(mesh: &LabeledMesh<S>) -> bool {
    assert!(mesh.is_labeled(), "mesh must be classified first");
    mesh.edges.iter().all(|&(i, j)| {
        let (a, b) = (mesh.label(i), mesh.label(j));
        !(a == RayLabel::Left && b == RayLabel::Right)
            && !(a == RayLabel::Right && b == RayLabel::Left)
    })
}

/// Deleting the bisector vertices must disconnect left from right: every
/// component of the remaining graph carries one side only.
pub fn separation_check<S: Real>(mesh: &LabeledMesh<S>) -> bool {
    assert!(mesh.is_labeled(), "mesh must be classified first");
    let mut seen = vec![false; mesh.len()];
    for start in 0..mesh.len() {
        if seen[start] || mesh.label(start) == RayLabel::Bisector {
            continue;
        }
        let mut has_left = false;
        let mut has_right = false;
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            match mesh.label(v) {
                RayLabel::Left => has_left = true,
                RayLabel::Right => has_right = true,
                _ => {}
            }
            for &w in mesh.neighbors(v) {
                if !seen[w] && mesh.label(w) != RayLabel::Bisector {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if has_left && has_right {
            return false;
        }
    }
    true
}

/// Number of connected components of the `label`-vertices in the hop
/// annulus `ceil(r/2) <= dist <= r` around vertex `p`.
pub fn local_branch_count<S: Real>(
    mesh: &LabeledMesh<S>,
    label: RayLabel,
    p: usize,
    radius_hops: usize,
) -> Result<usize> {
    assert!(mesh.is_labeled(), "mesh must be classified first");
    let dist = mesh.hop_distances(p);
    let lo = radius_hops.div_ceil(2);
    let in_annulus = |v: usize| {
        dist[v] >= lo && dist[v] <= radius_hops && mesh.label(v) == label
    };
    let members: Vec<usize> = (0..mesh.len()).filter(|&v| in_annulus(v)).collect();
    if members.is_empty() {
        return Err(Error::EmptyAnnulus);
    }
    let mut comp: HashMap<usize, usize> = HashMap::new();
    let mut count = 0;
    for &start in &members {
        if comp.contains_key(&start) {
            continue;
        }
        comp.insert(start, count);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in mesh.neighbors(v) {
                if in_annulus(w) && !comp.contains_key(&w) {
                    comp.insert(w, count);
                    queue.push_back(w);
                }
            }
        }
        count += 1;
    }
    Ok(count)
}

/// Branch counting on a raw point cloud: components of the Euclidean
/// annulus `r/2 <= |q - p| <= r` linked at distance `link`.
pub fn local_branch_count_cloud<S: Real>(
    cloud: &[Vec<S>],
    p: &[S],
    radius: S,
    link: S,
) -> Result<usize> {
    let half = radius * r(0.5);
    let members: Vec<&Vec<S>> = cloud
        .iter()
        .filter(|q| {
            let d = norm2(&sub(q, p));
            d >= half && d <= radius
        })
        .collect();
    if members.is_empty() {
        return Err(Error::EmptyAnnulus);
    }
    let mut comp = vec![usize::MAX; members.len()];
    let mut count = 0;
    for s in 0..members.len() {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = count;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for w in 0..members.len() {
                if comp[w] == usize::MAX && norm2(&sub(members[v], members[w])) <= link {
                    comp[w] = count;
                    queue.push_back(w);
                }
            }
        }
        count += 1;
    }
    Ok(count)
}

/// Uniform grid hash for exact nearest-neighbor queries on a point cloud.
struct GridIndex<'a, S> {
    points: &'a [Vec<S>],
    cell: f64,
    origin: Vec<f64>,
    key_lo: Vec<i64>,
    key_hi: Vec<i64>,
    buckets: HashMap<Vec<i64>, Vec<usize>>,
}

impl<'a, S: Real> GridIndex<'a, S> {
    fn build(points: &'a [Vec<S>]) -> Self {
        let dim = points[0].len();
        let mut lo = vec![f64::INFINITY; dim];
        let mut hi = vec![f64::NEG_INFINITY; dim];
        for p in points {
            for (k, &x) in p.iter().enumerate() {
                let x = x.to_f64().unwrap();
                lo[k] = lo[k].min(x);
                hi[k] = hi[k].max(x);
            }
        }
        let extent = lo
            .iter()
            .zip(&hi)
            .map(|(a, b)| b - a)
            .fold(0.0_f64, f64::max)
            .max(1e-12);
        let per_axis = (points.len() as f64).powf(1.0 / dim as f64).max(4.0);
        let cell = extent / per_axis;
        let mut buckets: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
        let mut key_lo = vec![i64::MAX; dim];
        let mut key_hi = vec![i64::MIN; dim];
        for (i, p) in points.iter().enumerate() {
            let key = Self::key_of(p, &lo, cell);
            for d in 0..dim {
                key_lo[d] = key_lo[d].min(key[d]);
                key_hi[d] = key_hi[d].max(key[d]);
            }
            buckets.entry(key).or_default().push(i);
        }
        GridIndex { points, cell, origin: lo, key_lo, key_hi, buckets }
    }

    fn key_of(p: &[S], origin: &[f64], cell: f64) -> Vec<i64> {
        p.iter()
            .zip(origin)
            .map(|(&x, &o)| ((x.to_f64().unwrap() - o) / cell).floor() as i64)
            .collect()
    }

    fn brute(&self, p: &[S]) -> S {
        self.points
            .iter()
            .map(|q| norm2(&sub(p, q)))
            .fold(S::infinity(), S::min)
    }

    /// Exact distance to the nearest indexed point.  Chebyshev shells are
    /// scanned outward; every point in an unscanned shell `m` differs by at
    /// least `(m - 1) * cell` along some axis, so once the best candidate
    /// is below that bound the scan is complete.  Queries far outside the
    /// indexed box fall back to a linear scan.
    fn nearest(&self, p: &[S]) -> S {
        let dim = p.len();
        let key = Self::key_of(p, &self.origin, self.cell);
        // Chebyshev distance from the query cell to the occupied key box.
        let shell_min = (0..dim)
            .map(|d| {
                if key[d] < self.key_lo[d] {
                    self.key_lo[d] - key[d]
                } else if key[d] > self.key_hi[d] {
                    key[d] - self.key_hi[d]
                } else {
                    0
                }
            })
            .max()
            .unwrap_or(0);
        let shell_max = (0..dim)
            .map(|d| (key[d] - self.key_lo[d]).abs().max((key[d] - self.key_hi[d]).abs()))
            .max()
            .unwrap_or(0);
        if shell_min > 48 {
            return self.brute(p);
        }
        let mut best = S::infinity();
        for shell in shell_min..=shell_max {
            if best.to_f64().unwrap() <= ((shell - 1).max(0) as f64) * self.cell {
                break;
            }
            if shell > shell_min + 64 {
                return best.min(self.brute(p));
            }
            let mut idx = vec![-shell; dim];
            'outer: loop {
                if shell == 0 || idx.iter().any(|&d| d.abs() == shell) {
                    let cell_key: Vec<i64> =
                        key.iter().zip(&idx).map(|(&k, &d)| k + d).collect();
                    if let Some(items) = self.buckets.get(&cell_key) {
                        for &i in items {
                            best = best.min(norm2(&sub(p, &self.points[i])));
                        }
                    }
                }
                // advance the multi-index over [-shell, shell]^dim
                for d in 0..dim {
                    idx[d] += 1;
                    if idx[d] <= shell {
                        continue 'outer;
                    }
                    idx[d] = -shell;
                }
                break;
            }
        }
        best
    }
}

/// Symmetric Hausdorff distance between two finite point sets, exact over
/// the samples.
pub fn hausdorff<S: Real>(a: &[Vec<S>], b: &[Vec<S>]) -> Result<S> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let directed = |from: &[Vec<S>], to: &[Vec<S>]| -> S {
        let index = GridIndex::build(to);
        from.par_iter()
            .map(|p| index.nearest(p))
            .reduce(|| S::zero(), S::max)
    };
    Ok(directed(a, b).max(directed(b, a)))
}

/// Root-mean-square distance of the cloud to its best hyperplane through
/// the origin: the square root of the smallest eigenvalue of the second
/// moment form.
pub fn hyperplane_flatness<S: Real>(points: &[Vec<S>]) -> Result<S> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let n = points[0].len();
    if points.len() < n {
        return Err(Error::InsufficientPoints { needed: n, got: points.len() });
    }
    let mut m = vec![S::zero(); n * n];
    for p in points {
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] += p[i] * p[j];
            }
        }
    }
    let inv = S::one() / r::<S>(points.len() as f64);
    for v in &mut m {
        *v *= inv;
    }
    let eig = symmetric_eigenvalues(&m, n);
    Ok(eig[0].max(S::zero()).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn icosphere_level_counts_and_degrees() {
        let mesh = sphere_mesh::<f64>(3, 4, 0).unwrap();
        assert_eq!(mesh.len(), 2562);
        for v in 0..mesh.len() {
            let d = mesh.neighbors(v).len();
            assert!(d == 5 || d == 6, "degree {d} at {v}");
        }
        assert!(mesh.is_connected());
    }

    #[test]
    fn icosphere_antipodes_are_exact() {
        let mesh = sphere_mesh::<f64>(3, 3, 0).unwrap();
        for v in 0..mesh.len() {
            let a = mesh.antipode(v);
            assert_ne!(a, v);
            assert_eq!(mesh.antipode(a), v);
            for k in 0..3 {
                assert_eq!(mesh.directions()[v][k], -mesh.directions()[a][k]);
            }
        }
    }

    #[test]
    fn antipode_map_preserves_adjacency() {
        let mesh = sphere_mesh::<f64>(3, 2, 0).unwrap();
        for &(i, j) in mesh.edges() {
            let (ai, aj) = (mesh.antipode(i), mesh.antipode(j));
            assert!(
                mesh.neighbors(ai).contains(&aj),
                "antipodal image of an edge is not an edge"
            );
        }
    }

    #[test]
    fn polygon_mesh_is_a_cycle() {
        let mesh = sphere_mesh::<f64>(2, 8, 0).unwrap();
        assert_eq!(mesh.len(), 256);
        for v in 0..mesh.len() {
            assert_eq!(mesh.neighbors(v).len(), 2);
        }
        assert!(mesh.is_connected());
        for v in 0..mesh.len() {
            let a = mesh.antipode(v);
            assert_eq!(mesh.directions()[v][0], -mesh.directions()[a][0]);
            assert_eq!(mesh.directions()[v][1], -mesh.directions()[a][1]);
        }
    }

    #[test]
    fn random_4d_mesh_is_symmetric_and_connected() {
        let mesh = sphere_mesh::<f64>(4, 1, 7).unwrap();
        assert_eq!(mesh.len(), 42);
        assert!(mesh.is_connected());
        for &(i, j) in mesh.edges() {
            let (ai, aj) = (mesh.antipode(i), mesh.antipode(j));
            assert!(mesh.neighbors(ai).contains(&aj));
        }
        // determinism
        let again = sphere_mesh::<f64>(4, 1, 7).unwrap();
        assert_eq!(mesh.edges(), again.edges());
    }

    #[test]
    fn unsupported_dimension_rejected() {
        assert!(sphere_mesh::<f64>(5, 2, 0).is_err());
    }

    #[test]
    fn hausdorff_examples() {
        let a = vec![vec![0.0_f64, 0.0]];
        let b = vec![vec![1.0_f64, 0.0]];
        assert_eq!(hausdorff(&a, &a).unwrap(), 0.0);
        assert!((hausdorff(&a, &b).unwrap() - 1.0).abs() < 1e-15);
        assert!(hausdorff(&a, &[]).is_err());
    }

    #[test]
    fn hausdorff_grid_index_matches_brute_force() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for dim in [2usize, 3] {
            let cloud = |rng: &mut rand_chacha::ChaCha8Rng, n: usize| -> Vec<Vec<f64>> {
                (0..n)
                    .map(|_| (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect())
                    .collect()
            };
            let a = cloud(&mut rng, 300);
            let b = cloud(&mut rng, 170);
            let fast = hausdorff(&a, &b).unwrap();
            let brute = {
                let directed = |from: &[Vec<f64>], to: &[Vec<f64>]| -> f64 {
                    from.iter()
                        .map(|p| {
                            to.iter()
                                .map(|q| norm2(&sub(p, q)))
                                .fold(f64::INFINITY, f64::min)
                        })
                        .fold(0.0, f64::max)
                };
                directed(&a, &b).max(directed(&b, &a))
            };
            assert!((fast - brute).abs() < 1e-12, "dim {dim}: {fast} vs {brute}");
        }
    }

    #[test]
    fn flatness_of_coplanar_cloud_is_zero() {
        let mut cloud = Vec::new();
        for i in 0..20 {
            let t = i as f64 / 7.0;
            cloud.push(vec![0.0, t.cos(), t.sin() * 0.3]);
        }
        let res = hyperplane_flatness(&cloud).unwrap();
        assert!(res < 1e-12, "residual {res}");
        assert!(hyperplane_flatness(&cloud[..2]).is_err());
    }

    #[test]
    fn flatness_positive_for_thick_cloud() {
        let mut cloud = Vec::new();
        for i in 0..10 {
            for j in 0..10 {
                cloud.push(vec![
                    ((i * 17 + j) % 5) as f64 * 0.1 - 0.2,
                    i as f64 * 0.1,
                    j as f64 * 0.1,
                ]);
            }
        }
        assert!(hyperplane_flatness(&cloud).unwrap() > 1e-2);
    }

    #[test]
    fn branch_count_on_sampled_curve() {
        // points along a line through p: interior sees 2 branches,
        // endpoint sees 1
        let cloud: Vec<Vec<f64>> = (-20..=20)
            .map(|k| vec![k as f64 * 0.05, 0.0])
            .collect();
        let interior = local_branch_count_cloud(&cloud, &[0.0, 0.0], 0.4, 0.12).unwrap();
        assert_eq!(interior, 2);
        let endpoint = local_branch_count_cloud(&cloud, &[-1.0, 0.0], 0.4, 0.12).unwrap();
        assert_eq!(endpoint, 1);
        assert!(local_branch_count_cloud(&cloud, &[50.0, 0.0], 0.4, 0.12).is_err());
    }
}
