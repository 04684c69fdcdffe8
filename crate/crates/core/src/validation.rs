//! Brute-force oracles for certifying the closed forms on small instances.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::em::ChannelSet;
use crate::error::{Result, RisError};
use crate::geometry::Vec3;
use crate::placement::{PlaneScene, Point2, PositionObjective};

/// Largest number of enumerated phase combinations.
pub const MAX_ENUMERATION: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub phase_levels: usize,
    pub grid_points_1d: usize,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { phase_levels: 256, grid_points_1d: 1000, seed: 0 }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.phase_levels < 2 {
            return Err(RisError::InvalidParameter(format!("need at least 2 phase levels, got {}", self.phase_levels)));
        }
        if self.grid_points_1d == 0 {
            return Err(RisError::InvalidParameter("grid needs at least one point per side".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSearchResult {
    pub best_power: f64,
    pub best_theta: DVector<Complex64>,
    /// Number of enumerated combinations.
    pub evaluated: u64,
}

/// Best power over phase vectors whose entries 2..L lie on a uniform grid of
/// `phase_levels` points, with MRT at full budget.
///
/// For each grid combination the first element's phase is set to its exact
/// optimum, which is closed-form: with `r` the rest of the effective channel
/// and `c` the first cascade row, `‖θ₁ c + r‖²` peaks at
/// `θ₁ = conj(⟨r, c⟩)/|⟨r, c⟩|`. The result is therefore at least the full
/// grid maximum and at most the continuous optimum.
pub fn exhaustive_phase_search(channels: &ChannelSet, p_t: f64, cfg: &OracleConfig) -> Result<PhaseSearchResult> {
    cfg.validate()?;
    let cascade = channels.cascade();
    let (l, n) = (cascade.nrows(), cascade.ncols());
    if l == 0 {
        return Err(RisError::InvalidParameter("no reflective elements".into()));
    }
    let combos = (cfg.phase_levels as u64).checked_pow((l - 1) as u32).filter(|c| *c <= MAX_ENUMERATION);
    let Some(combos) = combos else {
        return Err(RisError::TooLarge(format!("{} levels over {} free elements", cfg.phase_levels, l - 1)));
    };

    let levels: Vec<Complex64> =
        (0..cfg.phase_levels).map(|m| Complex64::from_polar(1.0, 2.0 * PI * m as f64 / cfg.phase_levels as f64)).collect();
    let rows: Vec<Vec<Complex64>> = (0..l).map(|q| cascade.row(q).iter().copied().collect()).collect();
    let base: Vec<Complex64> = match &channels.h_tr {
        Some(h) => h.iter().copied().collect(),
        None => vec![Complex64::new(0.0, 0.0); n],
    };

    let mut state = Enumeration {
        rows: &rows,
        levels: &levels,
        best: f64::NEG_INFINITY,
        best_idx: vec![0; l],
        best_first: Complex64::new(1.0, 0.0),
        idx: vec![0; l],
    };
    state.descend(1, &base);

    let mut theta = DVector::from_iterator(l, state.best_idx.iter().map(|&m| levels[m]));
    theta[0] = state.best_first;
    Ok(PhaseSearchResult { best_power: state.best * p_t, best_theta: theta, evaluated: combos })
}

struct Enumeration<'a> {
    rows: &'a [Vec<Complex64>],
    levels: &'a [Complex64],
    best: f64,
    best_idx: Vec<usize>,
    best_first: Complex64,
    idx: Vec<usize>,
}

impl Enumeration<'_> {
    fn descend(&mut self, q: usize, partial: &[Complex64]) {
        if q == self.rows.len() {
            let c = &self.rows[0];
            let inner: Complex64 = c.iter().zip(partial).map(|(a, r)| a * r.conj()).sum();
            let value = c.iter().map(|a| a.norm_sqr()).sum::<f64>()
                + partial.iter().map(|r| r.norm_sqr()).sum::<f64>()
                + 2.0 * inner.norm();
            if value > self.best {
                self.best = value;
                self.best_idx.copy_from_slice(&self.idx);
                self.best_first = if inner.norm() > 0.0 { inner.conj() / inner.norm() } else { Complex64::new(1.0, 0.0) };
            }
            return;
        }
        let mut next = partial.to_vec();
        for (m, t) in self.levels.iter().enumerate() {
            self.idx[q] = m;
            for ((x, p), row) in next.iter_mut().zip(partial).zip(&self.rows[q]) {
                *x = p + t * row;
            }
            self.descend(q + 1, &next);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridArgmax {
    pub point: Point2,
    pub position: Vec3,
    pub value: f64,
    /// Best value among the other cells (`-∞` when only one cell is feasible).
    pub runner_up: f64,
    /// Cell size `(h_x, h_y)`.
    pub cell: [f64; 2],
    /// Number of feasible cells evaluated.
    pub evaluated: usize,
}

/// Evaluates the objective at the centers of a `resolution × resolution` grid
/// over the feasible region's bounding box, skipping infeasible cells. Ties go
/// to the first cell in `(x, y)` lexicographic order.
pub fn dense_position_grid<O: PositionObjective + ?Sized>(
    plane: &PlaneScene,
    objective: &O,
    resolution: usize,
) -> Result<GridArgmax> {
    dense_grid_with(plane, |p| objective.value(p), resolution)
}

/// [`dense_position_grid`] for an arbitrary function of the world position.
pub fn dense_grid_with(plane: &PlaneScene, f: impl Fn(Vec3) -> f64, resolution: usize) -> Result<GridArgmax> {
    if resolution == 0 {
        return Err(RisError::InvalidParameter("grid resolution must be positive".into()));
    }
    let (lo, hi) = plane.bounding_box()?;
    let cell = [(hi[0] - lo[0]) / resolution as f64, (hi[1] - lo[1]) / resolution as f64];
    let mut best: Option<GridArgmax> = None;
    let mut evaluated = 0;
    for i in 0..resolution {
        for j in 0..resolution {
            let p = [lo[0] + cell[0] * (i as f64 + 0.5), lo[1] + cell[1] * (j as f64 + 0.5)];
            if !plane.contains(p) {
                continue;
            }
            evaluated += 1;
            let position = plane.to_world(p);
            let value = f(position);
            match &mut best {
                None => best = Some(GridArgmax { point: p, position, value, runner_up: f64::NEG_INFINITY, cell, evaluated: 0 }),
                Some(b) if value > b.value => {
                    b.runner_up = b.value;
                    b.point = p;
                    b.position = position;
                    b.value = value;
                }
                Some(b) => b.runner_up = b.runner_up.max(value),
            }
        }
    }
    let mut best = best.ok_or(RisError::EmptyFeasible)?;
    best.evaluated = evaluated;
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeArgmax {
    pub position: Vec3,
    pub value: f64,
    pub cell: Vec3,
}

/// Dense grid over the box `[lo, hi]` restricted to `contains`.
pub fn dense_volume_grid<O: PositionObjective + ?Sized>(
    lo: Vec3,
    hi: Vec3,
    contains: impl Fn(Vec3) -> bool,
    objective: &O,
    resolution: usize,
) -> Result<VolumeArgmax> {
    if resolution == 0 {
        return Err(RisError::InvalidParameter("grid resolution must be positive".into()));
    }
    let cell = (hi - lo) / resolution as f64;
    let mut best: Option<VolumeArgmax> = None;
    for i in 0..resolution {
        for j in 0..resolution {
            for m in 0..resolution {
                let p = Vec3::new(
                    lo.x + cell.x * (i as f64 + 0.5),
                    lo.y + cell.y * (j as f64 + 0.5),
                    lo.z + cell.z * (m as f64 + 0.5),
                );
                if !contains(p) {
                    continue;
                }
                let value = objective.value(p);
                if best.is_none_or(|b| value > b.value) {
                    best = Some(VolumeArgmax { position: p, value, cell });
                }
            }
        }
    }
    best.ok_or(RisError::EmptyFeasible)
}

/// Random feasible `(θ, v)` pairs: uniform phases and isotropic beamformers
/// scaled to `‖v‖² = P_t`.
pub fn random_feasible_solutions(
    n_antennas: usize,
    n_elements: usize,
    p_t: f64,
    count: usize,
    seed: u64,
) -> Vec<(DVector<Complex64>, DVector<Complex64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let theta = DVector::from_fn(n_elements, |_, _| Complex64::from_polar(1.0, rng.random_range(0.0..2.0 * PI)));
            let v = DVector::from_fn(n_antennas, |_, _| {
                Complex64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
            });
            let scale = p_t.sqrt() / v.norm();
            (theta, v * Complex64::from(scale))
        })
        .collect()
}

/// Random complex Gaussian `rows × cols` matrix, for channel-agnostic checks.
pub fn random_channel_matrix(rows: usize, cols: usize, seed: u64) -> DMatrix<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    DMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
    })
}
