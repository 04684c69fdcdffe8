//! Position search over the reduced candidate set: feasible boundary plus the
//! feasible part of line l, with a dense fallback where the reduction is not
//! guaranteed.

use std::cmp::Ordering;

use super::orientation::f_object;
use super::plane::{PlaneScene, Point2, Polygon, RegionD, RegionKind};
use crate::em::{amplitude_gain_tir, delta_tir, direct_amplitude};
use crate::error::{Result, RisError};
use crate::geometry::{specular_frame, Vec3};
use crate::scene::Scene;
use crate::solvers::{closed_form_power, two_path_power_closed_form, two_path_terms};

/// Received power as a function of the panel center, with the panel always
/// turned to its specular orientation.
pub trait PositionObjective {
    fn value(&self, position: Vec3) -> f64;

    /// Element pattern exponent `k`; decides between the segment and the full line.
    fn pattern_exponent(&self) -> f64;

    fn region_kind(&self) -> RegionKind {
        RegionKind::Both
    }
}

/// RIS-link power at the specular orientation, `constant_factor · f_object`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlacementObjective {
    pub t: Vec3,
    pub r: Vec3,
    pub d_tr: f64,
    pub k: f64,
    /// `N L² δ²_TIR P_t / F*`, the part of the power independent of position.
    pub constant_factor: f64,
}

impl PlacementObjective {
    pub fn new(t: Vec3, r: Vec3, k: f64, constant_factor: f64) -> Result<Self> {
        let d_tr = t.distance(r);
        if !(d_tr > 0.0) {
            return Err(RisError::DegenerateGeometry("transmitter and receiver coincide".into()));
        }
        if !(k >= 0.0 && k.is_finite()) {
            return Err(RisError::InvalidParameter(format!("pattern exponent must be nonnegative, got {k}")));
        }
        if !(constant_factor > 0.0 && constant_factor.is_finite()) {
            return Err(RisError::InvalidParameter(format!("constant factor must be positive, got {constant_factor}")));
        }
        Ok(Self { t, r, d_tr, k, constant_factor })
    }

    /// Objective for a scene's transmitter, receiver and panel parameters.
    pub fn from_scene(scene: &Scene, p_t: f64) -> Result<Self> {
        let delta = delta_tir(scene, 1.0);
        let factor = closed_form_power(scene.n_antennas(), scene.n_elements(), delta, p_t);
        Self::new(scene.tx.center, scene.rx, scene.ris.pattern_exponent, factor)
    }

    pub fn at_distances(&self, d_ti: f64, d_ir: f64) -> f64 {
        f_object(d_ti, d_ir, self.d_tr, self.k).map_or(0.0, |f| self.constant_factor * f)
    }
}

impl PositionObjective for PlacementObjective {
    fn value(&self, position: Vec3) -> f64 {
        self.at_distances(self.t.distance(position), self.r.distance(position))
    }

    fn pattern_exponent(&self) -> f64 {
        self.k
    }
}

/// Closed-form power of a full scene with the panel moved to each candidate
/// position and turned specular; optionally includes the direct link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SceneObjective {
    pub scene: Scene,
    pub p_t: f64,
    pub direct_link: bool,
}

impl SceneObjective {
    pub fn try_value(&self, position: Vec3) -> Result<f64> {
        let s = &self.scene;
        let frame = specular_frame(position, s.tx.center, s.rx)?;
        let scene = Scene { ris: s.ris.with_center(position).with_frame(frame), ..*s };
        let angles = scene.angles()?;
        let a_tir = match amplitude_gain_tir(&scene, &angles) {
            Ok(a) => a.a_tir,
            Err(RisError::ShadowedPanel) => 0.0,
            Err(e) => return Err(e),
        };
        let (n, l) = (scene.n_antennas(), scene.n_elements());
        if self.direct_link {
            let terms = two_path_terms(&scene, &angles)?;
            let a_tr = direct_amplitude(&scene, angles.d_tr);
            Ok(two_path_power_closed_form(a_tir, a_tr, terms.o, n, l, self.p_t))
        } else {
            Ok(closed_form_power(n, l, a_tir, self.p_t))
        }
    }
}

impl PositionObjective for SceneObjective {
    fn value(&self, position: Vec3) -> f64 {
        self.try_value(position).unwrap_or(0.0)
    }

    fn pattern_exponent(&self) -> f64 {
        self.scene.ris.pattern_exponent
    }

    fn region_kind(&self) -> RegionKind {
        if self.direct_link {
            RegionKind::TxOnly
        } else {
            RegionKind::Both
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    /// Samples spread over the feasible part of line l.
    pub line_points: usize,
    /// Samples per polygon outline (and per excluded-region rim).
    pub boundary_points: usize,
    /// Golden-section stopping width in meters.
    pub refine_tol: f64,
    /// Cells per side of the dense grid inside the excluded region.
    pub region_grid: usize,
    /// Search only the feasible set minus the excluded region, whose rim then
    /// joins the candidate set. Otherwise the feasible part of the region is
    /// searched on a dense grid.
    pub exclude_d: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { line_points: 2000, boundary_points: 2000, refine_tol: 1e-6, region_grid: 200, exclude_d: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateSource {
    LineL,
    Boundary,
    RegionRim,
    RegionGrid,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlacementResult {
    pub position: Vec3,
    pub plane_point: Point2,
    pub power: f64,
    pub source: CandidateSource,
    /// Number of objective evaluations before refinement.
    pub candidates: usize,
    /// The dense grid inside the excluded region was searched.
    pub region_fallback: bool,
    /// The optimum lies in the excluded region, where the boundary reduction
    /// does not hold.
    pub theorem_inapplicable: bool,
    pub search_set: String,
}

#[derive(Debug, Clone)]
enum Curve<'a> {
    Line { lo: f64, hi: f64 },
    Outline(&'a Polygon),
    Circle { center: Point2, radius: f64 },
}

impl Curve<'_> {
    fn point(&self, s: f64) -> Point2 {
        match self {
            Curve::Line { .. } => [s, 0.0],
            Curve::Outline(p) => p.point_at(s),
            Curve::Circle { center, radius } => [center[0] + radius * s.cos(), center[1] + radius * s.sin()],
        }
    }

    fn clamp(&self, s: f64) -> f64 {
        match self {
            Curve::Line { lo, hi } => s.clamp(*lo, *hi),
            _ => s,
        }
    }

    /// Evenly spaced parameters, endpoints included for open curves.
    fn samples(&self, count: usize) -> (Vec<f64>, f64) {
        let count = count.max(2);
        match self {
            Curve::Line { lo, hi } => {
                let step = (hi - lo) / (count - 1) as f64;
                ((0..count).map(|i| lo + step * i as f64).collect(), step)
            }
            Curve::Outline(p) => {
                let step = p.perimeter() / count as f64;
                ((0..count).map(|i| step * i as f64).collect(), step)
            }
            Curve::Circle { .. } => {
                let step = 2.0 * std::f64::consts::PI / count as f64;
                ((0..count).map(|i| step * i as f64).collect(), step)
            }
        }
    }

    /// Meters per unit of parameter.
    fn metric(&self) -> f64 {
        match self {
            Curve::Circle { radius, .. } => *radius,
            _ => 1.0,
        }
    }

    fn source(&self) -> CandidateSource {
        match self {
            Curve::Line { .. } => CandidateSource::LineL,
            Curve::Outline(_) => CandidateSource::Boundary,
            Curve::Circle { .. } => CandidateSource::RegionRim,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    point: Point2,
    value: f64,
    curve: Option<(usize, f64, f64)>,
}

/// Larger value first; equal values fall back to lexicographic position.
fn better(a: &Candidate, b: &Candidate) -> bool {
    match a.value.partial_cmp(&b.value) {
        Some(Ordering::Greater) => true,
        Some(Ordering::Less) => false,
        _ => a.point.partial_cmp(&b.point) == Some(Ordering::Less),
    }
}

const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Maximizes `f` on `[a, b]` by golden-section search, returning `(x, f(x))`.
pub fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut c = b - GOLDEN * (b - a);
    let mut d = a + GOLDEN * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - GOLDEN * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + GOLDEN * (b - a);
            fd = f(d);
        }
    }
    let x = (a + b) / 2.0;
    (x, f(x))
}

struct Searcher<'a, O: PositionObjective + ?Sized> {
    plane: &'a PlaneScene,
    objective: &'a O,
    region: RegionD,
    region_active: bool,
    exclude_d: bool,
}

impl<O: PositionObjective + ?Sized> Searcher<'_, O> {
    fn admissible(&self, p: Point2) -> bool {
        if !self.plane.contains(p) {
            return false;
        }
        !(self.region_active && self.exclude_d && self.strictly_in_region(p))
    }

    fn strictly_in_region(&self, p: Point2) -> bool {
        let w = self.plane.to_world(p);
        let d_tr = self.region.d_tr();
        let slack = 1e-9 * (1.0 + d_tr);
        let near_t = self.region.t.distance(w) < d_tr - slack;
        match self.region.kind {
            RegionKind::Both => near_t && self.region.r.distance(w) < d_tr - slack,
            RegionKind::TxOnly => near_t,
        }
    }

    fn eval(&self, p: Point2) -> f64 {
        if self.admissible(p) {
            self.objective.value(self.plane.to_world(p))
        } else {
            f64::NEG_INFINITY
        }
    }
}

/// Searches one plane for the best panel position.
pub fn position_search_plane<O: PositionObjective + ?Sized>(
    plane: &PlaneScene,
    objective: &O,
    opts: &SearchOptions,
) -> Result<PlacementResult> {
    if plane.polygons().is_empty() {
        return Err(RisError::EmptyFeasible);
    }
    let k = objective.pattern_exponent();
    let kind = objective.region_kind();
    let region = RegionD::new(plane.t, plane.r, kind);
    let region_active = (k > 0.0 || kind == RegionKind::TxOnly) && region.meets_plane(plane);
    let segment_only = k == 0.0 && kind == RegionKind::Both;
    let searcher = Searcher { plane, objective, region, region_active, exclude_d: opts.exclude_d };

    let mut curves: Vec<Curve> = Vec::new();
    let intervals: Vec<(f64, f64)> = plane
        .line_intervals()
        .into_iter()
        .filter_map(|(a, b)| {
            let (a, b) = if segment_only { (a.max(0.0), b.min(plane.d_tr_projected)) } else { (a, b) };
            (a <= b).then_some((a, b))
        })
        .collect();
    let line_len: f64 = intervals.iter().map(|(a, b)| b - a).sum();
    let line_start = curves.len();
    curves.extend(intervals.iter().map(|&(lo, hi)| Curve::Line { lo, hi }));
    curves.extend(plane.polygons().iter().map(Curve::Outline));
    if region_active && opts.exclude_d {
        curves.extend(region.plane_disks(plane).into_iter().map(|(center, radius)| Curve::Circle { center, radius }));
    }

    let mut candidates: Vec<Candidate> = Vec::new();
    for (ci, curve) in curves.iter().enumerate() {
        let count = if ci < line_start + intervals.len() {
            let (lo, hi) = intervals[ci - line_start];
            if line_len > 0.0 {
                ((opts.line_points as f64) * (hi - lo) / line_len).ceil() as usize
            } else {
                1
            }
        } else {
            opts.boundary_points
        };
        let (params, step) = curve.samples(count);
        for s in params {
            let point = curve.point(s);
            let value = match curve {
                Curve::Outline(_) if !(region_active && opts.exclude_d && searcher.strictly_in_region(point)) => {
                    objective.value(plane.to_world(point))
                }
                _ => searcher.eval(point),
            };
            candidates.push(Candidate { point, value, curve: Some((ci, s, step)) });
        }
    }

    let mut region_fallback = false;
    if region_active && !opts.exclude_d {
        let (lo, hi) = plane.bounding_box()?;
        let disks = region.plane_disks(plane);
        let mut blo = lo;
        let mut bhi = hi;
        for (c, rad) in &disks {
            for d in 0..2 {
                blo[d] = blo[d].max(c[d] - rad);
                bhi[d] = bhi[d].min(c[d] + rad);
            }
        }
        if blo[0] <= bhi[0] && blo[1] <= bhi[1] {
            let n = opts.region_grid.max(1);
            let (hx, hy) = ((bhi[0] - blo[0]) / n as f64, (bhi[1] - blo[1]) / n as f64);
            for i in 0..n {
                for j in 0..n {
                    let p = [blo[0] + hx * (i as f64 + 0.5), blo[1] + hy * (j as f64 + 0.5)];
                    if plane.contains(p) && region.contains(plane.to_world(p)) {
                        region_fallback = true;
                        candidates.push(Candidate { point: p, value: searcher.eval(p), curve: None });
                    }
                }
            }
            return finish(&searcher, &curves, candidates, hx.max(hy), opts, region_fallback);
        }
    }
    finish(&searcher, &curves, candidates, 0.0, opts, region_fallback)
}

fn finish<O: PositionObjective + ?Sized>(
    searcher: &Searcher<O>,
    curves: &[Curve],
    candidates: Vec<Candidate>,
    cell: f64,
    opts: &SearchOptions,
    region_fallback: bool,
) -> Result<PlacementResult> {
    let count = candidates.len();
    let mut best = candidates
        .into_iter()
        .filter(|c| c.value.is_finite())
        .reduce(|a, b| if better(&b, &a) { b } else { a })
        .ok_or(RisError::EmptyFeasible)?;

    let source = match best.curve {
        Some((ci, _, _)) => curves[ci].source(),
        None => CandidateSource::RegionGrid,
    };
    let refined = match best.curve {
        Some((ci, s, step)) => {
            let curve = &curves[ci];
            let f = |x: f64| {
                let p = curve.point(curve.clamp(x));
                if matches!(curve, Curve::Outline(_)) && !(searcher.region_active && searcher.exclude_d) {
                    searcher.objective.value(searcher.plane.to_world(p))
                } else {
                    searcher.eval(p)
                }
            };
            let (x, v) = golden_section_max(f, s - step, s + step, opts.refine_tol / curve.metric());
            Candidate { point: curve.point(curve.clamp(x)), value: v, curve: best.curve }
        }
        None => compass_refine(searcher, best, cell, opts.refine_tol),
    };
    if refined.value > best.value {
        best = refined;
    }

    let position = searcher.plane.to_world(best.point);
    let in_region = searcher.region_active && searcher.region.contains(position);
    let segment_or_line = if searcher.objective.pattern_exponent() == 0.0 && searcher.region.kind == RegionKind::Both {
        "segment T'R'"
    } else {
        "line l"
    };
    let mut search_set = format!("polygon boundaries + feasible part of {segment_or_line}");
    if searcher.region_active {
        search_set.push_str(if searcher.exclude_d { " + excluded-region rim" } else { " + dense grid inside excluded region" });
    }
    Ok(PlacementResult {
        position,
        plane_point: best.point,
        power: best.value,
        source,
        candidates: count,
        region_fallback,
        theorem_inapplicable: in_region,
        search_set,
    })
}

/// Pattern search around a grid point, halving the step down to `tol`.
fn compass_refine<O: PositionObjective + ?Sized>(searcher: &Searcher<O>, start: Candidate, cell: f64, tol: f64) -> Candidate {
    let mut best = start;
    let mut step = cell / 2.0;
    while step > tol {
        let mut moved = false;
        for (dx, dy) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)] {
            let p = [best.point[0] + dx * step, best.point[1] + dy * step];
            let v = searcher.eval(p);
            if v > best.value {
                best = Candidate { point: p, value: v, curve: None };
                moved = true;
            }
        }
        if !moved {
            step /= 2.0;
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlacementResult3d {
    pub slice: usize,
    pub result: PlacementResult,
}

/// Best position over parallel slices of a feasible volume.
pub fn position_search_3d<O: PositionObjective + ?Sized>(
    slices: &[PlaneScene],
    objective: &O,
    opts: &SearchOptions,
) -> Result<PlacementResult3d> {
    let mut best: Option<PlacementResult3d> = None;
    for (i, plane) in slices.iter().enumerate() {
        let result = match position_search_plane(plane, objective, opts) {
            Ok(r) => r,
            Err(RisError::EmptyFeasible) => continue,
            Err(e) => return Err(e),
        };
        if best.as_ref().is_none_or(|b| result.power > b.result.power) {
            best = Some(PlacementResult3d { slice: i, result });
        }
    }
    best.ok_or(RisError::EmptyFeasible)
}

fn component(v: Vec3, axis: usize) -> f64 {
    match axis {
        0 => v.x,
        1 => v.y,
        _ => v.z,
    }
}

fn unit(axis: usize) -> Vec3 {
    match axis {
        0 => Vec3::X,
        1 => Vec3::Y,
        _ => Vec3::Z,
    }
}

/// `count` planes perpendicular to world `axis` (0, 1, 2) through the
/// axis-aligned box `[lo, hi]`, both end faces included.
pub fn box_slices(t: Vec3, r: Vec3, lo: Vec3, hi: Vec3, axis: usize, count: usize) -> Result<Vec<PlaneScene>> {
    if axis > 2 || count == 0 {
        return Err(RisError::InvalidParameter(format!("bad slicing: axis {axis}, count {count}")));
    }
    let (u, v) = ((axis + 1) % 3, (axis + 2) % 3);
    let (a0, a1) = (component(lo, axis), component(hi, axis));
    let n = if a0 == a1 { 1 } else { count };
    (0..n)
        .map(|i| {
            let a = if n == 1 { a0 } else { a0 + (a1 - a0) * i as f64 / (n - 1) as f64 };
            let point = unit(axis) * a;
            let corner = |cu: f64, cv: f64| point + unit(u) * cu + unit(v) * cv;
            let (u0, u1, v0, v1) = (component(lo, u), component(hi, u), component(lo, v), component(hi, v));
            let plane = PlaneScene::new(t, r, point, unit(axis), Vec::new())?;
            let poly = plane.project_polygon(&[corner(u0, v0), corner(u1, v0), corner(u1, v1), corner(u0, v1)])?;
            Ok(plane.with_polygons(vec![poly]))
        })
        .collect()
}

/// `count` planes perpendicular to `normal` through a ball, each carrying the
/// cross-section disk as a regular polygon with `sides` vertices.
pub fn sphere_slices(
    t: Vec3,
    r: Vec3,
    center: Vec3,
    radius: f64,
    normal: Vec3,
    count: usize,
    sides: usize,
) -> Result<Vec<PlaneScene>> {
    let n = normal.normalized().ok_or_else(|| RisError::InvalidParameter("slice normal must be nonzero".into()))?;
    if !(radius > 0.0) || count == 0 {
        return Err(RisError::InvalidParameter(format!("bad sphere slicing: radius {radius}, count {count}")));
    }
    (0..count)
        .map(|i| {
            let z = -radius + 2.0 * radius * (i as f64 + 0.5) / count as f64;
            let point = center + n * z;
            let plane = PlaneScene::new(t, r, point, n, Vec::new())?;
            let disk = Polygon::regular(plane.to_plane(point), (radius * radius - z * z).sqrt(), sides)?;
            Ok(plane.with_polygons(vec![disk]))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn objective(k: f64) -> PlacementObjective {
        PlacementObjective::new(Vec3::new(0.0, 0.0, 80.0), Vec3::new(200.0, 0.0, 80.0), k, 1.0).unwrap()
    }

    fn plane_with(polys: Vec<Polygon>) -> PlaneScene {
        PlaneScene::new(Vec3::new(0.0, 0.0, 80.0), Vec3::new(200.0, 0.0, 80.0), Vec3::ZERO, Vec3::Z, polys).unwrap()
    }

    #[test]
    fn golden_section_finds_peak() {
        let (x, v) = golden_section_max(|x| -(x - 0.3) * (x - 0.3), -1.0, 2.0, 1e-9);
        assert!((x - 0.3).abs() < 1e-8);
        assert!(v.abs() < 1e-15);
    }

    #[test]
    fn empty_region_is_an_error() {
        let plane = plane_with(vec![]);
        assert_eq!(position_search_plane(&plane, &objective(3.0), &SearchOptions::default()), Err(RisError::EmptyFeasible));
    }

    #[test]
    fn coincident_projections_put_optimum_under_both() {
        let t = Vec3::new(0.0, 0.0, 50.0);
        let r = Vec3::new(0.0, 0.0, 50.0 + 1e-9);
        let obj = PlacementObjective { t, r, d_tr: t.distance(r), k: 0.0, constant_factor: 1.0 };
        let plane = PlaneScene::new(t, r, Vec3::ZERO, Vec3::Z, vec![Polygon::rectangle([-10.0, -10.0], [10.0, 10.0]).unwrap()]).unwrap();
        let res = position_search_plane(&plane, &obj, &SearchOptions::default()).unwrap();
        assert!(res.plane_point[0].abs() < 1e-6 && res.plane_point[1].abs() < 1e-6, "{:?}", res.plane_point);
    }

    #[test]
    fn k_zero_optimum_on_segment() {
        let plane = plane_with(vec![Polygon::rectangle([-50.0, -40.0], [250.0, 40.0]).unwrap()]);
        let res = position_search_plane(&plane, &objective(0.0), &SearchOptions::default()).unwrap();
        assert_eq!(res.source, CandidateSource::LineL);
        assert!(res.plane_point[0] >= 0.0 && res.plane_point[0] <= 200.0);
        assert!(!res.region_fallback);
    }

    #[test]
    fn scene_objective_matches_placement_objective() {
        use crate::geometry::{Frame, RisPanel, TransmitterArray};
        let ris = RisPanel {
            center: Vec3::ZERO,
            rows: 4,
            cols: 4,
            element_size_x: 0.01,
            element_size_y: 0.01,
            frame: Frame::facing_z(),
            reflection_coeff: 0.9,
            pattern_exponent: 3.0,
            element_gain: 6.3,
        };
        let tx = TransmitterArray::ula(Vec3::new(0.0, 0.0, 80.0), 4, 0.0143, Vec3::Z, 1.0).unwrap();
        let scene = Scene::new(tx, ris, Vec3::new(200.0, 0.0, 80.0), 1.0, 0.0286).unwrap();
        let a = SceneObjective { scene, p_t: 0.01, direct_link: false };
        let b = PlacementObjective::from_scene(&scene, 0.01).unwrap();
        for p in [Vec3::new(10.0, 5.0, 0.0), Vec3::new(-30.0, 2.0, 0.0), Vec3::new(150.0, -20.0, 4.0)] {
            let (va, vb) = (a.value(p), b.value(p));
            assert!((va - vb).abs() <= 1e-12 * vb, "{va} vs {vb}");
        }
    }

    #[test]
    fn box_and_sphere_slicing() {
        let t = Vec3::new(0.0, 0.0, 80.0);
        let r = Vec3::new(200.0, 0.0, 80.0);
        let slices = box_slices(t, r, Vec3::new(10.0, 10.0, 0.0), Vec3::new(20.0, 30.0, 5.0), 2, 6).unwrap();
        assert_eq!(slices.len(), 6);
        assert!((slices[0].polygons()[0].area() - 200.0).abs() < 1e-9);
        assert!((slices[5].origin().z - 5.0).abs() < 1e-12);
        let flat = box_slices(t, r, Vec3::new(10.0, 10.0, 0.0), Vec3::new(20.0, 30.0, 0.0), 2, 6).unwrap();
        assert_eq!(flat.len(), 1);
        let balls = sphere_slices(t, r, Vec3::new(50.0, 50.0, 0.0), 5.0, Vec3::Z, 10, 64).unwrap();
        assert_eq!(balls.len(), 10);
        let w = balls[4].to_world(balls[4].polygons()[0].vertices()[0]);
        assert!((w.distance(Vec3::new(50.0, 50.0, 0.0)) - 5.0).abs() < 1e-9);
    }
}
