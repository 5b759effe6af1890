//! Numerical checks for the Engel family `D^n_α` on the 4-torus.
//!
//! Coordinates `(x, y, z, θ)` have period 1. The plane field is spanned by
//! `∂_θ` and `W = cos(A)·∂_z + sin(A)·V` with `A = π(nθ + ⟨α, p⟩)` and
//! `V = cos(2πz)·∂_x − sin(2πz)·∂_y`, so that `W` lies in the kernel of
//! `sin(2πz)dx + cos(2πz)dy`.

use std::fmt;

use nalgebra::DMatrix;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;

/// Scalar type for the numeric layer.
pub trait Real: Float + FloatConst + FromPrimitive + ToPrimitive + fmt::Debug + fmt::LowerExp + Send + Sync + 'static {}

impl<T> Real for T where T: Float + FloatConst + FromPrimitive + ToPrimitive + fmt::Debug + fmt::LowerExp + Send + Sync + 'static {}

pub type Vec4<F> = [F; 4];

/// Finite-difference step for bracket checks.
pub const FD_STEP: f64 = 1e-5;
/// Relative singular-value threshold for numerical rank.
pub const RANK_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorusEngelParams {
    pub n: i64,
    pub alpha: [i64; 3],
}

impl TorusEngelParams {
    pub fn new(n: i64, alpha: [i64; 3]) -> Self {
        TorusEngelParams { n, alpha }
    }
}

/// A point of the 4-torus with coordinates reduced into `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point4<F> {
    coords: Vec4<F>,
}

fn reduce<F: Real>(v: F) -> F {
    let r = v - v.floor();
    if r >= F::one() {
        F::zero()
    } else {
        r
    }
}

impl<F: Real> Point4<F> {
    pub fn new(x: F, y: F, z: F, theta: F) -> Self {
        Point4 { coords: [reduce(x), reduce(y), reduce(z), reduce(theta)] }
    }

    pub fn coords(&self) -> Vec4<F> {
        self.coords
    }
}

fn c<F: Real>(v: f64) -> F {
    F::from_f64(v).expect("representable constant")
}

fn ci<F: Real>(v: i64) -> F {
    F::from_i64(v).expect("representable integer")
}

/// `a ∧ da / dx∧dy∧dz` for `a = sin(2πz)dx + cos(2πz)dy`.
pub fn contact_defect<F: Real>(p: &Point4<F>) -> F {
    let two_pi = F::TAU();
    let (s, co) = (two_pi * p.coords[2]).sin_cos();
    // a = (s, co, 0), curl a = (2π s, 2π co, 0)
    let curl = [two_pi * s, two_pi * co, F::zero()];
    s * curl[0] + co * curl[1]
}

/// The contact form `a` at `p`, as a covector on the base.
pub fn contact_form<F: Real>(p: &Point4<F>) -> [F; 3] {
    let (s, co) = (F::TAU() * p.coords[2]).sin_cos();
    [s, co, F::zero()]
}

/// `∂_θ`, `W`, `B₁ = [∂_θ, W]`, `B₂ = [W, B₁]` at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EngelFrame<F> {
    pub d_theta: Vec4<F>,
    pub w: Vec4<F>,
    pub b1: Vec4<F>,
    pub b2: Vec4<F>,
}

impl<F: Real> EngelFrame<F> {
    pub fn vectors(&self) -> [Vec4<F>; 4] {
        [self.d_theta, self.w, self.b1, self.b2]
    }
}

/// Angle and its gradient. Raw coordinates: the angle is not periodic.
fn angle<F: Real>(params: &TorusEngelParams, q: &Vec4<F>) -> (F, Vec4<F>) {
    let pi = F::PI();
    let a = params.alpha;
    let value = pi * (ci::<F>(params.n) * q[3] + ci::<F>(a[0]) * q[0] + ci::<F>(a[1]) * q[1] + ci::<F>(a[2]) * q[2]);
    let grad = [pi * ci(a[0]), pi * ci(a[1]), pi * ci(a[2]), pi * ci(params.n)];
    (value, grad)
}

fn w_field<F: Real>(params: &TorusEngelParams, q: &Vec4<F>) -> Vec4<F> {
    let (a, _) = angle(params, q);
    let (s, co) = a.sin_cos();
    let (sz, cz) = (F::TAU() * q[2]).sin_cos();
    [s * cz, -s * sz, co, F::zero()]
}

fn b1_field<F: Real>(params: &TorusEngelParams, q: &Vec4<F>) -> Vec4<F> {
    let (a, _) = angle(params, q);
    let (s, co) = a.sin_cos();
    let (sz, cz) = (F::TAU() * q[2]).sin_cos();
    let k = F::PI() * ci(params.n);
    [k * co * cz, -k * co * sz, -k * s, F::zero()]
}

/// Jacobian rows `J[i][j] = ∂_j W_i`.
fn w_jacobian<F: Real>(params: &TorusEngelParams, q: &Vec4<F>) -> [Vec4<F>; 4] {
    let (a, da) = angle(params, q);
    let (s, co) = a.sin_cos();
    let two_pi = F::TAU();
    let (sz, cz) = (two_pi * q[2]).sin_cos();
    let mut j = [[F::zero(); 4]; 4];
    for k in 0..4 {
        j[0][k] = co * da[k] * cz;
        j[1][k] = -co * da[k] * sz;
        j[2][k] = -s * da[k];
    }
    j[0][2] = j[0][2] - two_pi * s * sz;
    j[1][2] = j[1][2] - two_pi * s * cz;
    j
}

fn b1_jacobian<F: Real>(params: &TorusEngelParams, q: &Vec4<F>) -> [Vec4<F>; 4] {
    let (a, da) = angle(params, q);
    let (s, co) = a.sin_cos();
    let two_pi = F::TAU();
    let (sz, cz) = (two_pi * q[2]).sin_cos();
    let m = F::PI() * ci(params.n);
    let mut j = [[F::zero(); 4]; 4];
    for k in 0..4 {
        j[0][k] = -m * s * da[k] * cz;
        j[1][k] = m * s * da[k] * sz;
        j[2][k] = -m * co * da[k];
    }
    j[0][2] = j[0][2] - m * two_pi * co * sz;
    j[1][2] = j[1][2] - m * two_pi * co * cz;
    j
}

fn apply<F: Real>(j: &[Vec4<F>; 4], v: &Vec4<F>) -> Vec4<F> {
    let mut out = [F::zero(); 4];
    for (o, row) in out.iter_mut().zip(j) {
        *o = row.iter().zip(v).fold(F::zero(), |acc, (a, b)| acc + *a * *b);
    }
    out
}

fn sub<F: Real>(a: &Vec4<F>, b: &Vec4<F>) -> Vec4<F> {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]]
}

/// The frame with brackets from the hand-derived Jacobians.
pub fn engel_frame<F: Real>(params: &TorusEngelParams, q: &Point4<F>) -> EngelFrame<F> {
    let x = q.coords;
    let w = w_field(params, &x);
    let b1 = b1_field(params, &x);
    // [W, B1] = DB1·W − DW·B1
    let b2 = sub(&apply(&b1_jacobian(params, &x), &w), &apply(&w_jacobian(params, &x), &b1));
    EngelFrame { d_theta: [F::zero(), F::zero(), F::zero(), F::one()], w, b1, b2 }
}

/// Directional derivative `DY·v` by central differences with step `h` along `v/|v|`.
fn directional<F: Real>(field: impl Fn(&Vec4<F>) -> Vec4<F>, x: &Vec4<F>, v: &Vec4<F>, h: F) -> Vec4<F> {
    let norm = v.iter().fold(F::zero(), |acc, &a| acc + a * a).sqrt();
    if norm == F::zero() {
        return [F::zero(); 4];
    }
    let plus: Vec4<F> = std::array::from_fn(|i| x[i] + h * v[i] / norm);
    let minus: Vec4<F> = std::array::from_fn(|i| x[i] - h * v[i] / norm);
    let (fp, fm) = (field(&plus), field(&minus));
    std::array::from_fn(|i| norm * (fp[i] - fm[i]) / (h + h))
}

/// The frame with brackets from central finite differences of the closed-form
/// fields `W` and `B₁ = n·∂_A W`.
pub fn engel_frame_fd<F: Real>(params: &TorusEngelParams, q: &Point4<F>, h: F) -> EngelFrame<F> {
    let x = q.coords;
    let d_theta = [F::zero(), F::zero(), F::zero(), F::one()];
    let w = w_field(params, &x);
    let wf = |p: &Vec4<F>| w_field(params, p);
    // [∂_θ, W] = DW·∂_θ, since ∂_θ is constant
    let b1 = directional(wf, &x, &d_theta, h);
    let b1f = |p: &Vec4<F>| b1_field(params, p);
    let b2 = sub(&directional(b1f, &x, &w, h), &directional(wf, &x, &b1, h));
    EngelFrame { d_theta, w, b1, b2 }
}

/// Largest componentwise gap between the analytic and finite-difference brackets.
pub fn bracket_deviation<F: Real>(params: &TorusEngelParams, q: &Point4<F>) -> F {
    let a = engel_frame(params, q);
    let b = engel_frame_fd(params, q, c(FD_STEP));
    a.vectors()
        .iter()
        .zip(b.vectors().iter())
        .flat_map(|(u, v)| u.iter().zip(v.iter()).map(|(x, y)| (*x - *y).abs()))
        .fold(F::zero(), F::max)
}

/// Numerical rank and `σ_min / σ_max` of a set of 4-vectors.
pub fn rank_and_ratio<F: Real>(vectors: &[Vec4<F>]) -> (usize, F) {
    let data: Vec<f64> = vectors.iter().flat_map(|v| v.iter().map(|x| x.to_f64().unwrap_or(f64::NAN))).collect();
    let m = DMatrix::from_column_slice(4, vectors.len(), &data);
    let sv = m.singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return (0, F::zero());
    }
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    let rank = sv.iter().filter(|&&s| s > RANK_TOLERANCE * max).count();
    (rank, c(min / max))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleReport<F> {
    pub point: Point4<F>,
    /// Ranks of `{∂_θ, W}`, `{∂_θ, W, B₁}`, `{∂_θ, W, B₁, B₂}`.
    pub ranks: [usize; 3],
    pub sv_ratios: [F; 3],
}

#[derive(Clone, Debug, PartialEq)]
pub struct EngelReport<F> {
    pub samples: Vec<SampleReport<F>>,
    pub pass: bool,
    pub min_sv_ratio: F,
}

impl<F: Real> fmt::Display for EngelReport<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.samples.iter().enumerate() {
            writeln!(
                f,
                "point {i} ranks {} {} {} sv2 {:.11e} sv3 {:.11e} sv4 {:.11e}",
                s.ranks[0], s.ranks[1], s.ranks[2], s.sv_ratios[0], s.sv_ratios[1], s.sv_ratios[2]
            )?;
        }
        writeln!(f, "engel: {} min_sv_ratio {:.11e}", if self.pass { "PASS" } else { "FAIL" }, self.min_sv_ratio)
    }
}

/// Deterministic sample points from a seed.
pub fn sample_points<F: Real>(count: usize, seed: u64) -> Vec<Point4<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let v: [f64; 4] = std::array::from_fn(|_| rng.gen::<f64>());
            Point4::new(c(v[0]), c(v[1]), c(v[2]), c(v[3]))
        })
        .collect()
}

/// Checks rank growth 2 → 3 → 4 at seeded random points.
pub fn verify_engel<F: Real>(params: &TorusEngelParams, sample_count: usize, seed: u64) -> Result<EngelReport<F>, Error> {
    if sample_count == 0 {
        return Err(Error::Invalid("sample count must be at least 1".into()));
    }
    let mut pass = true;
    let mut min_ratio = F::infinity();
    let samples = sample_points::<F>(sample_count, seed)
        .into_iter()
        .map(|point| {
            let fr = engel_frame(params, &point);
            let v = fr.vectors();
            let stages = [rank_and_ratio(&v[..2]), rank_and_ratio(&v[..3]), rank_and_ratio(&v[..4])];
            let ranks = [stages[0].0, stages[1].0, stages[2].0];
            let sv_ratios = [stages[0].1, stages[1].1, stages[2].1];
            pass &= ranks == [2, 3, 4];
            min_ratio = sv_ratios.iter().fold(min_ratio, |m, &r| m.min(r));
            SampleReport { point, ranks, sv_ratios }
        })
        .collect();
    Ok(EngelReport { samples, pass, min_sv_ratio: min_ratio })
}

/// Angle of the line `W` inside the contact plane, relative to `∂_z`, mod π.
fn line_angle<F: Real>(params: &TorusEngelParams, q: &Point4<F>) -> F {
    let w = w_field(params, &q.coords);
    let (sz, cz) = (F::TAU() * q.coords[2]).sin_cos();
    let along_v = w[0] * cz - w[1] * sz;
    along_v.atan2(w[2])
}

fn wrap_half_turn<F: Real>(x: F) -> F {
    let pi = F::PI();
    let half = pi / c(2.0);
    let r = (x + half) % pi;
    let r = if r < F::zero() { r + pi } else { r };
    r - half
}

/// Winding number, in half turns, together with how it was obtained.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwistEstimate<F> {
    pub value: i64,
    pub residual: F,
    pub samples: usize,
}

const MAX_DOUBLINGS: u32 = 24;

fn unwrapped_total<F: Real>(p: &TorusEngelParams, p2: &TorusEngelParams, axis: usize, samples: usize) -> (F, F) {
    let mut total = F::zero();
    let mut max_step = F::zero();
    let point = |t: F| {
        let mut x = [F::zero(); 4];
        x[axis] = t;
        Point4::new(x[0], x[1], x[2], x[3])
    };
    let diff = |t: F| {
        let q = point(t);
        line_angle(p, &q) - line_angle(p2, &q)
    };
    let n = ci::<F>(samples as i64);
    let mut prev = diff(F::zero());
    for k in 1..=samples {
        let cur = diff(ci::<F>(k as i64) / n);
        let step = wrap_half_turn(cur - prev);
        total = total + step;
        max_step = max_step.max(step.abs());
        prev = cur;
    }
    (total, max_step)
}

/// Lifts the angle difference of the two line fields along the i-th coordinate
/// loop (θ = 0) and counts half turns, refining until the lift is stable.
pub fn twist_numeric_estimate<F: Real>(
    params: &TorusEngelParams,
    other: &TorusEngelParams,
    loop_index: usize,
    samples: usize,
) -> Result<TwistEstimate<F>, Error> {
    if params.n != other.n {
        return Err(Error::TwistMismatch(params.n, other.n));
    }
    if !(1..=3).contains(&loop_index) {
        return Err(Error::LoopIndex(loop_index));
    }
    if samples < 64 {
        return Err(Error::Invalid(format!("at least 64 samples required, got {samples}")));
    }
    let pi = F::PI();
    let quarter = pi / c(4.0);
    let mut n = samples;
    let (mut total, mut max_step) = unwrapped_total::<F>(params, other, loop_index - 1, n);
    for _ in 0..MAX_DOUBLINGS {
        let (finer, finer_step) = unwrapped_total::<F>(params, other, loop_index - 1, 2 * n);
        let turns = total / pi;
        let value = turns.round();
        let residual = (turns - value).abs();
        if max_step < quarter && (finer - total).abs() < c(1e-9) && residual < c(1e-6) {
            let value = value.to_i64().ok_or(Error::NonConvergent(n))?;
            return Ok(TwistEstimate { value, residual, samples: n });
        }
        n *= 2;
        total = finer;
        max_step = finer_step;
    }
    Err(Error::NonConvergent(n))
}

pub fn twist_numeric<F: Real>(
    params: &TorusEngelParams,
    other: &TorusEngelParams,
    loop_index: usize,
    samples: usize,
) -> Result<i64, Error> {
    twist_numeric_estimate::<F>(params, other, loop_index, samples).map(|e| e.value)
}

/// Winding of `t ↦ ⟨α − α′, γ_i(t)⟩ mod 1` around the circle: its lift
/// runs from `0` to `α_i − α′_i`.
pub fn development_winding(alpha: [i64; 3], alpha2: [i64; 3], loop_index: usize) -> Result<i64, Error> {
    if !(1..=3).contains(&loop_index) {
        return Err(Error::LoopIndex(loop_index));
    }
    let delta: Vec<i64> = alpha.iter().zip(&alpha2).map(|(a, b)| a - b).collect();
    let lift = |t: i64| -> i64 {
        let mut gamma = [0i64; 3];
        gamma[loop_index - 1] = t;
        delta.iter().zip(&gamma).map(|(d, g)| d * g).sum()
    };
    Ok(lift(1) - lift(0))
}
