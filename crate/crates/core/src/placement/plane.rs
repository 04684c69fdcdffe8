//! The placement plane: its coordinate system, feasible polygons, and the
//! region where the boundary reduction does not apply.

use std::f64::consts::PI;

use crate::error::{Result, RisError};
use crate::geometry::Vec3;

/// Point in plane coordinates `(x, y)`.
pub type Point2 = [f64; 2];

/// Simple polygon in plane coordinates (either winding).
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Point2>,
    cumulative: Vec<f64>,
}

fn cross2(o: Point2, a: Point2, b: Point2) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn segments_cross(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    let d1 = cross2(c, d, a);
    let d2 = cross2(c, d, b);
    let d3 = cross2(a, b, c);
    let d4 = cross2(a, b, d);
    (d1 > 0.0) != (d2 > 0.0) && (d3 > 0.0) != (d4 > 0.0) && d1 != 0.0 && d2 != 0.0 && d3 != 0.0 && d4 != 0.0
}

fn dist(a: Point2, b: Point2) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Distance from `p` to segment `ab`.
pub fn segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    if len2 == 0.0 {
        return dist(p, a);
    }
    let t = (((p[0] - a[0]) * ab[0] + (p[1] - a[1]) * ab[1]) / len2).clamp(0.0, 1.0);
    dist(p, [a[0] + t * ab[0], a[1] + t * ab[1]])
}

impl Polygon {
    /// Rejects fewer than three vertices, non-finite or zero-area input, and
    /// self-intersecting outlines.
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(RisError::InvalidParameter(format!("polygon needs at least 3 vertices, got {n}")));
        }
        if vertices.iter().flatten().any(|c| !c.is_finite()) {
            return Err(RisError::InvalidParameter("polygon vertices must be finite".into()));
        }
        for i in 0..n {
            for j in i + 1..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    continue;
                }
                let (a, b) = (vertices[i], vertices[(i + 1) % n]);
                let (c, d) = (vertices[j], vertices[(j + 1) % n]);
                if segments_cross(a, b, c, d) {
                    return Err(RisError::InvalidParameter(format!("polygon edges {i} and {j} intersect")));
                }
            }
        }
        let mut cumulative = Vec::with_capacity(n + 1);
        let mut acc = 0.0;
        cumulative.push(0.0);
        for i in 0..n {
            acc += dist(vertices[i], vertices[(i + 1) % n]);
            cumulative.push(acc);
        }
        let poly = Self { vertices, cumulative };
        if poly.area() <= 0.0 {
            return Err(RisError::InvalidParameter("polygon has zero area".into()));
        }
        Ok(poly)
    }

    /// Axis-aligned rectangle with opposite corners `a` and `b`.
    pub fn rectangle(a: Point2, b: Point2) -> Result<Self> {
        let (x0, x1) = (a[0].min(b[0]), a[0].max(b[0]));
        let (y0, y1) = (a[1].min(b[1]), a[1].max(b[1]));
        Self::new(vec![[x0, y0], [x1, y0], [x1, y1], [x0, y1]])
    }

    /// Regular polygon inscribed in the circle of `radius` about `center`.
    pub fn regular(center: Point2, radius: f64, sides: usize) -> Result<Self> {
        Self::new(
            (0..sides)
                .map(|i| {
                    let a = 2.0 * PI * i as f64 / sides as f64;
                    [center[0] + radius * a.cos(), center[1] + radius * a.sin()]
                })
                .collect(),
        )
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn perimeter(&self) -> f64 {
        self.cumulative[self.vertices.len()]
    }

    pub fn area(&self) -> f64 {
        (self.edges().map(|(a, b)| a[0] * b[1] - b[0] * a[1]).sum::<f64>() / 2.0).abs()
    }

    /// Even-odd test; points exactly on an edge count as inside.
    pub fn contains(&self, p: Point2) -> bool {
        if self.boundary_distance(p) <= 1e-12 * (1.0 + p[0].abs().max(p[1].abs())) {
            return true;
        }
        let mut inside = false;
        for (a, b) in self.edges() {
            if (a[1] > p[1]) != (b[1] > p[1]) {
                let x = a[0] + (p[1] - a[1]) / (b[1] - a[1]) * (b[0] - a[0]);
                if p[0] < x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    pub fn boundary_distance(&self, p: Point2) -> f64 {
        self.edges().map(|(a, b)| segment_distance(p, a, b)).fold(f64::INFINITY, f64::min)
    }

    /// Point at arc length `s` along the outline from the first vertex; `s` wraps.
    pub fn point_at(&self, s: f64) -> Point2 {
        let per = self.perimeter();
        let s = s.rem_euclid(per);
        let i = match self.cumulative.binary_search_by(|c| c.partial_cmp(&s).unwrap()) {
            Ok(i) => i.min(self.vertices.len() - 1),
            Err(i) => i - 1,
        };
        let (a, b) = (self.vertices[i], self.vertices[(i + 1) % self.vertices.len()]);
        let len = self.cumulative[i + 1] - self.cumulative[i];
        let t = if len > 0.0 { (s - self.cumulative[i]) / len } else { 0.0 };
        [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
    }

    /// `(min, max)` corners.
    pub fn bounding_box(&self) -> (Point2, Point2) {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for v in &self.vertices {
            for d in 0..2 {
                lo[d] = lo[d].min(v[d]);
                hi[d] = hi[d].max(v[d]);
            }
        }
        (lo, hi)
    }

    /// `x` intervals where the polygon meets the line `y = 0`.
    pub fn axis_intervals(&self) -> Vec<(f64, f64)> {
        let mut xs: Vec<f64> = self
            .edges()
            .filter(|(a, b)| (a[1] > 0.0) != (b[1] > 0.0))
            .map(|(a, b)| a[0] + (0.0 - a[1]) / (b[1] - a[1]) * (b[0] - a[0]))
            .collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        xs.chunks_exact(2).map(|c| (c[0], c[1])).collect()
    }
}

/// A placement plane with the transmitter and receiver projected onto it.
///
/// Plane coordinates put `T′` (the projection of T) at the origin with the
/// x-axis toward `R′`, so line l is `y = 0` and the segment `T′R′` is
/// `0 ≤ x ≤ d_T′R′`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneScene {
    pub t: Vec3,
    pub r: Vec3,
    origin: Vec3,
    e1: Vec3,
    e2: Vec3,
    normal: Vec3,
    /// Distance from T to the plane.
    pub h1: f64,
    /// Distance from R to the plane.
    pub h2: f64,
    /// Distance between the projections `T′` and `R′`.
    pub d_tr_projected: f64,
    polygons: Vec<Polygon>,
}

impl PlaneScene {
    /// Plane through `point` with normal `normal`; `polygons` are in plane
    /// coordinates and their union is the feasible region.
    pub fn new(t: Vec3, r: Vec3, point: Vec3, normal: Vec3, polygons: Vec<Polygon>) -> Result<Self> {
        if !(t.is_finite() && r.is_finite() && point.is_finite()) {
            return Err(RisError::InvalidParameter("plane scene positions must be finite".into()));
        }
        let normal = normal
            .normalized()
            .ok_or_else(|| RisError::InvalidParameter("plane normal must be nonzero".into()))?;
        let project = |p: Vec3| {
            let h = (p - point).dot(normal);
            (p - normal * h, h.abs())
        };
        let (t_p, h1) = project(t);
        let (r_p, h2) = project(r);
        let along = r_p - t_p;
        let d_tr_projected = along.norm();
        let e1 = if d_tr_projected > 1e-12 * (1.0 + t.norm().max(r.norm())) {
            along / d_tr_projected
        } else {
            normal.any_perpendicular()
        };
        let e2 = normal.cross(e1);
        Ok(Self { t, r, origin: t_p, e1, e2, normal, h1, h2, d_tr_projected, polygons })
    }

    /// Same plane and endpoints, different feasible region.
    pub fn with_polygons(&self, polygons: Vec<Polygon>) -> Self {
        Self { polygons, ..self.clone() }
    }

    pub fn polygons(&self) -> &[Polygon] {
        &self.polygons
    }

    pub fn normal(&self) -> Vec3 {
        self.normal
    }

    /// `T′`.
    pub fn origin(&self) -> Vec3 {
        self.origin
    }

    /// In-plane axes `(e1, e2)`; `e1` points from `T′` to `R′`.
    pub fn axes(&self) -> (Vec3, Vec3) {
        (self.e1, self.e2)
    }

    pub fn d_tr(&self) -> f64 {
        self.t.distance(self.r)
    }

    pub fn to_world(&self, p: Point2) -> Vec3 {
        self.origin + self.e1 * p[0] + self.e2 * p[1]
    }

    /// Orthogonal projection into plane coordinates.
    pub fn to_plane(&self, p: Vec3) -> Point2 {
        let d = p - self.origin;
        [d.dot(self.e1), d.dot(self.e2)]
    }

    /// Polygon from world points lying in the plane.
    pub fn project_polygon(&self, world: &[Vec3]) -> Result<Polygon> {
        Polygon::new(world.iter().map(|p| self.to_plane(*p)).collect())
    }

    pub fn contains(&self, p: Point2) -> bool {
        self.polygons.iter().any(|poly| poly.contains(p))
    }

    /// Bounding box of the feasible region.
    pub fn bounding_box(&self) -> Result<(Point2, Point2)> {
        if self.polygons.is_empty() {
            return Err(RisError::EmptyFeasible);
        }
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for poly in &self.polygons {
            let (a, b) = poly.bounding_box();
            for d in 0..2 {
                lo[d] = lo[d].min(a[d]);
                hi[d] = hi[d].max(b[d]);
            }
        }
        Ok((lo, hi))
    }

    /// Feasible part of line l as sorted, merged `x` intervals.
    pub fn line_intervals(&self) -> Vec<(f64, f64)> {
        let mut all: Vec<(f64, f64)> = self.polygons.iter().flat_map(|p| p.axis_intervals()).collect();
        all.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut merged: Vec<(f64, f64)> = Vec::new();
        for (a, b) in all {
            match merged.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => merged.push((a, b)),
            }
        }
        merged
    }

    /// Distance from a plane point to the candidate set of the boundary
    /// reduction: every polygon outline plus the feasible part of line l
    /// (or of the segment `T′R′` when `segment_only`).
    pub fn candidate_set_distance(&self, p: Point2, segment_only: bool) -> f64 {
        let boundary = self.polygons.iter().map(|poly| poly.boundary_distance(p)).fold(f64::INFINITY, f64::min);
        let line = self
            .line_intervals()
            .into_iter()
            .filter_map(|(a, b)| {
                let (a, b) = if segment_only { (a.max(0.0), b.min(self.d_tr_projected)) } else { (a, b) };
                (a <= b).then(|| segment_distance(p, [a, 0.0], [b, 0.0]))
            })
            .fold(f64::INFINITY, f64::min);
        boundary.min(line)
    }
}

/// Which distance conditions define the excluded region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionKind {
    /// `(d_TI ≤ d_TR) ∩ (d_IR ≤ d_TR)`, for the RIS-only link.
    Both,
    /// `d_TI ≤ d_TR`, for the link with a direct path.
    TxOnly,
}

/// Set of positions where the boundary reduction for `k > 0` is not guaranteed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionD {
    pub t: Vec3,
    pub r: Vec3,
    pub kind: RegionKind,
}

/// Slack on membership so a point on the rim counts as inside.
const REGION_TOL: f64 = 1e-9;

impl RegionD {
    pub fn new(t: Vec3, r: Vec3, kind: RegionKind) -> Self {
        Self { t, r, kind }
    }

    pub fn d_tr(&self) -> f64 {
        self.t.distance(self.r)
    }

    pub fn contains(&self, p: Vec3) -> bool {
        let d_tr = self.d_tr();
        let slack = REGION_TOL * (1.0 + d_tr);
        let near_t = self.t.distance(p) <= d_tr + slack;
        match self.kind {
            RegionKind::Both => near_t && self.r.distance(p) <= d_tr + slack,
            RegionKind::TxOnly => near_t,
        }
    }

    /// Cross-sections of the defining balls with a plane: `(center, radius)`
    /// disks in plane coordinates, one per condition that reaches the plane.
    /// An empty list with `kind` conditions unmet means the region misses the plane.
    pub fn plane_disks(&self, plane: &PlaneScene) -> Vec<(Point2, f64)> {
        let d_tr = self.d_tr();
        let mut out = Vec::new();
        let mut push = |center: Point2, h: f64| {
            if d_tr > h {
                out.push((center, (d_tr * d_tr - h * h).sqrt()));
            }
        };
        push(plane.to_plane(self.t), plane.h1);
        if self.kind == RegionKind::Both {
            push(plane.to_plane(self.r), plane.h2);
        }
        out
    }

    /// Whether the region meets the plane at all.
    pub fn meets_plane(&self, plane: &PlaneScene) -> bool {
        let needed = match self.kind {
            RegionKind::Both => 2,
            RegionKind::TxOnly => 1,
        };
        let disks = self.plane_disks(plane);
        disks.len() == needed
            && (needed == 1 || dist(disks[0].0, disks[1].0) < disks[0].1 + disks[1].1)
    }
}

/// Region excluded from the RIS-only boundary reduction.
pub fn region_d(plane: &PlaneScene) -> RegionD {
    RegionD::new(plane.t, plane.r, RegionKind::Both)
}

/// Excluded region when the direct link is present: only `d_TI ≤ d_TR`.
pub fn two_path_region_adjustment(plane: &PlaneScene) -> RegionD {
    RegionD::new(plane.t, plane.r, RegionKind::TxOnly)
}
