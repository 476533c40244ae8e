//! Centrally symmetric convex bodies and their gauge / support oracles.
//!
//! A body is immutable after construction and all evaluations are pure, so
//! oracles can be shared freely across worker threads.

mod hull;
mod simplex;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::{dot, neg, norm2, scale};
use crate::real::{r, Real};
use crate::Result;

/// Numeric tolerance profile attached to a body.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances<S> {
    /// Relative accuracy of gauge evaluation.
    pub gauge: S,
}

impl<S: Real> Default for Tolerances<S> {
    fn default() -> Self {
        Tolerances { gauge: r(1e-10) }
    }
}

#[derive(Clone, Debug)]
enum Payload<S> {
    /// l_p ball; `p = inf` is the max norm.
    Lp { p: S },
    /// Intersection of half-spaces `<u_i, x> <= c_i`.
    PolytopeH { normals: Vec<Vec<S>>, offsets: Vec<S> },
    /// Convex hull of a vertex set closed under `v -> -v`; in n <= 3 an
    /// H-form is derived once at construction, in higher dimensions gauge
    /// queries run a small linear program.
    PolytopeV {
        vertices: Vec<Vec<S>>,
        hform: Option<(Vec<Vec<S>>, Vec<S>)>,
    },
    /// Convex hull of two opposite half-circles (arc resolution `m`);
    /// gauge via the sampled polytope, support analytic over the arcs.
    HalfDisk {
        m: usize,
        vertices: Vec<Vec<S>>,
        hform: (Vec<Vec<S>>, Vec<S>),
    },
}

/// Immutable oracle for a centrally symmetric convex body with the origin
/// in its interior.
#[derive(Clone, Debug)]
pub struct ConvexBody<S> {
    n: usize,
    payload: Payload<S>,
    tol: Tolerances<S>,
}

impl<S: Real> ConvexBody<S> {
    /// Unit ball of the l_p norm; `p >= 1`, `S::infinity()` for the max norm.
    pub fn lp_ball(n: usize, p: S) -> Result<Self> {
        if n < 2 {
            return Err(Error::DegenerateBody("dimension must be >= 2".into()));
        }
        if !(p >= S::one()) {
            return Err(Error::DegenerateBody(format!("lp exponent {p} < 1")));
        }
        Ok(ConvexBody { n, payload: Payload::Lp { p }, tol: Tolerances::default() })
    }

    /// Axis-aligned cube `[-1, 1]^n` in H-form.
    pub fn cube(n: usize) -> Result<Self> {
        let mut normals = Vec::with_capacity(2 * n);
        let mut offsets = Vec::with_capacity(2 * n);
        for k in 0..n {
            for sgn in [S::one(), -S::one()] {
                let mut u = vec![S::zero(); n];
                u[k] = sgn;
                normals.push(u);
                offsets.push(S::one());
            }
        }
        Self::polytope_h(normals, offsets)
    }

    /// Cross-polytope `conv{ +-e_k }` in V-form (the l_1 ball).
    pub fn cross_polytope(n: usize) -> Result<Self> {
        let mut verts = Vec::with_capacity(2 * n);
        for k in 0..n {
            for sgn in [S::one(), -S::one()] {
                let mut v = vec![S::zero(); n];
                v[k] = sgn;
                verts.push(v);
            }
        }
        Self::polytope_v(verts)
    }

    /// Body from half-space data `<u_i, x> <= c_i`.
    pub fn polytope_h(normals: Vec<Vec<S>>, offsets: Vec<S>) -> Result<Self> {
        if normals.len() != offsets.len() || normals.is_empty() {
            return Err(Error::BadSpec("normals/offsets length mismatch".into()));
        }
        let n = normals[0].len();
        if n < 2 {
            return Err(Error::DegenerateBody("dimension must be >= 2".into()));
        }
        for u in &normals {
            if u.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: u.len() });
            }
            if !u.iter().all(|x| x.is_finite()) || norm2(u) < r(1e-14) {
                return Err(Error::DegenerateBody("zero or non-finite facet normal".into()));
            }
        }
        for &c in &offsets {
            if !(c > S::zero()) || !c.is_finite() {
                return Err(Error::DegenerateBody("origin not interior".into()));
            }
        }
        // Central symmetry: scaled facet set closed under negation.
        for i in 0..normals.len() {
            let ui = scale(&normals[i], S::one() / offsets[i]);
            let found = (0..normals.len()).any(|j| {
                let uj = scale(&normals[j], S::one() / offsets[j]);
                norm2(&crate::linalg::add(&ui, &uj)) < r(1e-9)
            });
            if !found {
                return Err(Error::DegenerateBody("not centrally symmetric".into()));
            }
        }
        let body = ConvexBody {
            n,
            payload: Payload::PolytopeH { normals, offsets },
            tol: Tolerances::default(),
        };
        body.check_bounded()?;
        Ok(body)
    }

    /// Body from a vertex set closed under `v -> -v`.
    pub fn polytope_v(vertices: Vec<Vec<S>>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::BadSpec("empty vertex set".into()));
        }
        let n = vertices[0].len();
        if n < 2 {
            return Err(Error::DegenerateBody("dimension must be >= 2".into()));
        }
        for v in &vertices {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: v.len() });
            }
            if !v.iter().all(|x| x.is_finite()) {
                return Err(Error::DegenerateBody("non-finite vertex".into()));
            }
        }
        for v in &vertices {
            let nv = neg(v);
            let found = vertices
                .iter()
                .any(|w| norm2(&crate::linalg::sub(w, &nv)) < r(1e-12));
            if !found {
                return Err(Error::DegenerateBody("not centrally symmetric".into()));
            }
        }
        let hform = if n <= 3 {
            Some(hull::hull_halfspaces(&vertices, n)?)
        } else {
            None
        };
        let tol = if hform.is_some() {
            Tolerances::default()
        } else {
            Tolerances { gauge: r(1e-8) } // LP termination noise
        };
        let body = ConvexBody { n, payload: Payload::PolytopeV { vertices, hform }, tol };
        body.check_bounded()?;
        Ok(body)
    }

    /// Convex hull of two opposite half-circles with parallel diameters:
    /// `C+ = {(1, cos t, sin t)} , t in [-pi/2, pi/2]`, `C- = -C+`.  Each arc
    /// is sampled at `m + 1` uniform points including both diameter
    /// endpoints and the arc midpoint for even `m`.
    pub fn halfdisk_hull(m: usize) -> Result<Self> {
        if m < 8 {
            return Err(Error::BadSpec("halfdisk arc resolution must be >= 8".into()));
        }
        let mut verts: Vec<Vec<S>> = Vec::with_capacity(2 * (m + 1));
        for j in 0..=m {
            let theta = -std::f64::consts::FRAC_PI_2
                + std::f64::consts::PI * (j as f64) / (m as f64);
            let mut c = theta.cos();
            let mut s = theta.sin();
            // snap the diameter endpoints and the arc midpoint to exact values
            if c.abs() < 1e-15 {
                c = 0.0;
            }
            if (c - 1.0).abs() < 1e-15 {
                c = 1.0;
            }
            if (s - 1.0).abs() < 1e-15 {
                s = 1.0;
            }
            if (s + 1.0).abs() < 1e-15 {
                s = -1.0;
            }
            if s.abs() < 1e-15 {
                s = 0.0;
            }
            verts.push(vec![S::one(), r(c), r(s)]);
        }
        let negs: Vec<Vec<S>> = verts.iter().map(|v| neg(v)).collect();
        verts.extend(negs);
        let hform = hull::hull_halfspaces(&verts, 3)?;
        Ok(ConvexBody {
            n: 3,
            payload: Payload::HalfDisk { m, vertices: verts, hform },
            tol: Tolerances::default(),
        })
    }

    fn check_bounded(&self) -> Result<()> {
        for k in 0..self.n {
            let mut e = vec![S::zero(); self.n];
            e[k] = S::one();
            for v in [e.clone(), neg(&e)] {
                let g = self.gauge(&v);
                if !(g > r(1e-9)) || !g.is_finite() {
                    return Err(Error::DegenerateBody(
                        "body unbounded or origin not interior".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn tolerances(&self) -> Tolerances<S> {
        self.tol
    }

    pub fn set_gauge_tolerance(&mut self, eps: S) {
        self.tol.gauge = eps;
    }

    /// Vertex list for V-form bodies (including the half-disk hull).
    pub fn vertices(&self) -> Option<&[Vec<S>]> {
        match &self.payload {
            Payload::PolytopeV { vertices, .. } | Payload::HalfDisk { vertices, .. } => {
                Some(vertices)
            }
            _ => None,
        }
    }

    /// Minkowski functional `min { t >= 0 : v in tK }`.
    ///
    /// Zero exactly when `v = 0`.  Panics on dimension mismatch.
    pub fn gauge(&self, v: &[S]) -> S {
        assert_eq!(v.len(), self.n, "gauge: dimension mismatch");
        if v.iter().all(|&x| x == S::zero()) {
            return S::zero();
        }
        match &self.payload {
            Payload::Lp { p } => lp_norm(v, *p),
            Payload::PolytopeH { normals, offsets } => hform_gauge(normals, offsets, v),
            Payload::HalfDisk { hform, .. } => hform_gauge(&hform.0, &hform.1, v),
            Payload::PolytopeV { vertices, hform } => match hform {
                Some((normals, offsets)) => hform_gauge(normals, offsets, v),
                None => {
                    let cost = vec![S::one(); vertices.len()];
                    simplex::solve_min(vertices, &cost, v)
                        .expect("validated body: gauge program feasible")
                }
            },
        }
    }

    /// Support function `max { <u, k> : k in K }`.  Panics on `u = 0`.
    pub fn support(&self, u: &[S]) -> S {
        assert_eq!(u.len(), self.n, "support: dimension mismatch");
        assert!(!u.iter().all(|&x| x == S::zero()), "support of zero vector");
        match &self.payload {
            Payload::Lp { p } => lp_norm(u, dual_exponent(*p)),
            Payload::PolytopeV { vertices, .. } => vertices
                .iter()
                .map(|w| dot(u, w))
                .fold(S::neg_infinity(), S::max),
            Payload::HalfDisk { .. } => halfcircle_max(u).max(halfcircle_max(&neg(u))),
            Payload::PolytopeH { normals, offsets } => {
                simplex::solve_min(normals, offsets, u)
                    .expect("validated body: support program feasible")
            }
        }
    }

    /// Radial projection of `v` onto the unit sphere of the body.
    pub fn boundary_point(&self, v: &[S]) -> Result<Vec<S>> {
        if v.iter().all(|&x| x == S::zero()) {
            return Err(Error::ZeroVector);
        }
        let g = self.gauge(v);
        Ok(scale(v, S::one() / g))
    }

    /// Diagnostic re-check of the construction invariants.
    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        match &self.payload {
            Payload::Lp { p } => {
                if !(*p >= S::one()) {
                    issues.push(format!("lp exponent {p} < 1"));
                }
            }
            Payload::PolytopeH { normals, offsets } => {
                check_h_data(normals, offsets, &mut issues);
            }
            Payload::PolytopeV { vertices, .. } | Payload::HalfDisk { vertices, .. } => {
                check_v_data(vertices, &mut issues);
            }
        }
        for k in 0..self.n {
            let mut e = vec![S::zero(); self.n];
            e[k] = S::one();
            let g = self.gauge(&e);
            if !(g > r(1e-9)) || !g.is_finite() {
                issues.push(format!("gauge degenerate along coordinate {k}"));
            }
        }
        ValidationReport { passed: issues.is_empty(), issues }
    }

    /// Short human-readable description.
    pub fn describe(&self) -> String {
        match &self.payload {
            Payload::Lp { p } => {
                if p.is_infinite() {
                    format!("lp(p=inf, n={})", self.n)
                } else {
                    format!("lp(p={}, n={})", p, self.n)
                }
            }
            Payload::PolytopeH { normals, .. } => {
                format!("polytope-h({} facets, n={})", normals.len(), self.n)
            }
            Payload::PolytopeV { vertices, .. } => {
                format!("polytope-v({} vertices, n={})", vertices.len(), self.n)
            }
            Payload::HalfDisk { m, .. } => format!("halfdisk-hull(m={m})"),
        }
    }

    /// Build a body from a parsed spec document.
    pub fn from_spec(spec: &BodySpec) -> Result<Self> {
        let report = BodySpec::validate_data(spec);
        if !report.passed {
            return Err(Error::BadSpec(report.issues.join("; ")));
        }
        let mut body = match spec {
            BodySpec::Lp { p, n, .. } => Self::lp_ball(*n, r(*p))?,
            BodySpec::PolytopeH { normals, offsets, .. } => Self::polytope_h(
                normals.iter().map(|u| u.iter().map(|&x| r(x)).collect()).collect(),
                offsets.iter().map(|&c| r(c)).collect(),
            )?,
            BodySpec::PolytopeV { vertices, .. } => Self::polytope_v(
                vertices.iter().map(|v| v.iter().map(|&x| r(x)).collect()).collect(),
            )?,
            BodySpec::HalfDisk { m, .. } => Self::halfdisk_hull(*m)?,
        };
        if let Some(t) = spec.tolerances() {
            if let Some(g) = t.gauge {
                body.tol.gauge = r(g);
            }
        }
        Ok(body)
    }

    /// Serialize back to a spec document.
    pub fn to_spec(&self) -> BodySpec {
        let to64 = |v: &Vec<S>| -> Vec<f64> {
            v.iter().map(|x| x.to_f64().unwrap()).collect()
        };
        let tol = Some(TolSpec { gauge: Some(self.tol.gauge.to_f64().unwrap()) });
        match &self.payload {
            Payload::Lp { p } => BodySpec::Lp {
                p: p.to_f64().unwrap(),
                n: self.n,
                tolerances: tol,
            },
            Payload::PolytopeH { normals, offsets } => BodySpec::PolytopeH {
                normals: normals.iter().map(to64).collect(),
                offsets: offsets.iter().map(|c| c.to_f64().unwrap()).collect(),
                tolerances: tol,
            },
            Payload::PolytopeV { vertices, .. } => BodySpec::PolytopeV {
                vertices: vertices.iter().map(to64).collect(),
                tolerances: tol,
            },
            Payload::HalfDisk { m, .. } => BodySpec::HalfDisk { m: *m, tolerances: tol },
        }
    }

    /// Parse an inline body tag: `lp:<p>`, `cube`, `cross`, `halfdisk[:<m>]`.
    pub fn from_tag(tag: &str, dim: usize) -> Result<Self> {
        if tag == "cube" {
            return Self::cube(dim);
        }
        if tag == "cross" {
            return Self::cross_polytope(dim);
        }
        if let Some(rest) = tag.strip_prefix("lp:") {
            let p = if rest == "inf" || rest == "infinity" {
                S::infinity()
            } else {
                r(rest
                    .parse::<f64>()
                    .map_err(|_| Error::BadSpec(format!("bad lp exponent '{rest}'")))?)
            };
            return Self::lp_ball(dim, p);
        }
        if tag == "halfdisk" {
            return Self::halfdisk_hull(256);
        }
        if let Some(rest) = tag.strip_prefix("halfdisk:") {
            let m = rest
                .parse::<usize>()
                .map_err(|_| Error::BadSpec(format!("bad halfdisk resolution '{rest}'")))?;
            return Self::halfdisk_hull(m);
        }
        Err(Error::BadSpec(format!("unknown body tag '{tag}'")))
    }
}

fn lp_norm<S: Real>(v: &[S], p: S) -> S {
    if p.is_infinite() {
        return v.iter().fold(S::zero(), |m, &x| m.max(x.abs()));
    }
    if p == S::one() {
        return v.iter().fold(S::zero(), |s, &x| s + x.abs());
    }
    let m = v.iter().fold(S::zero(), |m, &x| m.max(x.abs()));
    if m == S::zero() {
        return S::zero();
    }
    let sum = v
        .iter()
        .fold(S::zero(), |s, &x| s + (x.abs() / m).powf(p));
    m * sum.powf(S::one() / p)
}

fn dual_exponent<S: Real>(p: S) -> S {
    if p == S::one() {
        S::infinity()
    } else if p.is_infinite() {
        S::one()
    } else {
        p / (p - S::one())
    }
}

fn hform_gauge<S: Real>(normals: &[Vec<S>], offsets: &[S], v: &[S]) -> S {
    normals
        .iter()
        .zip(offsets)
        .map(|(u, &c)| dot(u, v) / c)
        .fold(S::zero(), S::max)
}

/// Max of `<u, .>` over the half-circle `{(1, cos t, sin t) : |t| <= pi/2}`.
fn halfcircle_max<S: Real>(u: &[S]) -> S {
    if u[1] >= S::zero() {
        u[0] + (u[1] * u[1] + u[2] * u[2]).sqrt()
    } else {
        u[0] + u[2].abs()
    }
}

fn check_h_data<S: Real>(normals: &[Vec<S>], offsets: &[S], issues: &mut Vec<String>) {
    for (u, &c) in normals.iter().zip(offsets) {
        if !u.iter().all(|x| x.is_finite()) || !c.is_finite() {
            issues.push("non-finite facet data".into());
            return;
        }
        if !(c > S::zero()) {
            issues.push("origin not interior".into());
        }
    }
    for i in 0..normals.len() {
        let ui = scale(&normals[i], S::one() / offsets[i]);
        let found = (0..normals.len()).any(|j| {
            let uj = scale(&normals[j], S::one() / offsets[j]);
            norm2(&crate::linalg::add(&ui, &uj)) < r(1e-9)
        });
        if !found {
            issues.push("not centrally symmetric".into());
            return;
        }
    }
}

fn check_v_data<S: Real>(vertices: &[Vec<S>], issues: &mut Vec<String>) {
    for v in vertices {
        if !v.iter().all(|x| x.is_finite()) {
            issues.push("non-finite vertex".into());
            return;
        }
    }
    for v in vertices {
        let nv = neg(v);
        if !vertices
            .iter()
            .any(|w| norm2(&crate::linalg::sub(w, &nv)) < r(1e-12))
        {
            issues.push("not centrally symmetric".into());
            return;
        }
    }
}

/// Outcome of [`ConvexBody::validate`] / [`BodySpec::validate_data`].
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub passed: bool,
    pub issues: Vec<String>,
}

/// Tolerance overrides inside a spec document.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TolSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gauge: Option<f64>,
}

/// On-disk body description (UTF-8 JSON).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum BodySpec {
    #[serde(rename = "lp")]
    Lp {
        #[serde(with = "p_exponent")]
        p: f64,
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tolerances: Option<TolSpec>,
    },
    #[serde(rename = "polytope-h")]
    PolytopeH {
        normals: Vec<Vec<f64>>,
        offsets: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tolerances: Option<TolSpec>,
    },
    #[serde(rename = "polytope-v")]
    PolytopeV {
        vertices: Vec<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tolerances: Option<TolSpec>,
    },
    #[serde(rename = "halfdisk-hull")]
    HalfDisk {
        m: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tolerances: Option<TolSpec>,
    },
}

impl BodySpec {
    pub fn tolerances(&self) -> Option<&TolSpec> {
        match self {
            BodySpec::Lp { tolerances, .. }
            | BodySpec::PolytopeH { tolerances, .. }
            | BodySpec::PolytopeV { tolerances, .. }
            | BodySpec::HalfDisk { tolerances, .. } => tolerances.as_ref(),
        }
    }

    /// Pure data checks on an unconstructed spec; failures are reported,
    /// not raised.
    pub fn validate_data(&self) -> ValidationReport {
        let mut issues = Vec::new();
        match self {
            BodySpec::Lp { p, n, .. } => {
                if !(*p >= 1.0) {
                    issues.push(format!("lp exponent {p} < 1"));
                }
                if *n < 2 {
                    issues.push("dimension must be >= 2".into());
                }
            }
            BodySpec::PolytopeH { normals, offsets, .. } => {
                if normals.len() != offsets.len() || normals.is_empty() {
                    issues.push("normals/offsets length mismatch".into());
                } else {
                    check_h_data::<f64>(normals, offsets, &mut issues);
                }
            }
            BodySpec::PolytopeV { vertices, .. } => {
                if vertices.is_empty() {
                    issues.push("empty vertex set".into());
                } else {
                    check_v_data::<f64>(vertices, &mut issues);
                }
            }
            BodySpec::HalfDisk { m, .. } => {
                if *m < 8 {
                    issues.push("halfdisk arc resolution must be >= 8".into());
                }
            }
        }
        ValidationReport { passed: issues.is_empty(), issues }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializable")
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }
}

/// `p` is a number or the string `"inf"`.
mod p_exponent {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<Ser: Serializer>(p: &f64, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        if p.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*p)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(x),
            Raw::Text(t) if t == "inf" || t == "infinity" || t == "Infinity" => {
                Ok(f64::INFINITY)
            }
            Raw::Text(t) => Err(serde::de::Error::custom(format!("bad exponent '{t}'"))),
        }
    }
}

#[cfg(test)]
mod tests;
