//! Piecewise-constant controls and a fixed-step RK4 integrator.

use crate::error::{Error, Result};
use crate::graded::{FloatScalar, GradedVector};

/// Control `a(t)` that is constant on consecutive time segments starting at
/// `t = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlPath<S> {
    segments: Vec<(f64, GradedVector<S>)>,
}

impl<S: FloatScalar> ControlPath<S> {
    pub fn new(segments: Vec<(f64, GradedVector<S>)>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::Input("control path has no segments".into()));
        }
        if segments.iter().any(|(dt, _)| !(dt.is_finite() && *dt > 0.0)) {
            return Err(Error::Input("segment durations must be positive".into()));
        }
        Ok(Self { segments })
    }

    pub fn constant(a: GradedVector<S>, duration: f64) -> Result<Self> {
        Self::new(vec![(duration, a)])
    }

    pub fn duration(&self) -> f64 {
        self.segments.iter().map(|(dt, _)| dt).sum()
    }

    pub fn segments(&self) -> &[(f64, GradedVector<S>)] {
        &self.segments
    }

    /// Value on the segment containing `t` (right-continuous; the last
    /// segment extends past the end).
    pub fn at(&self, t: f64) -> &GradedVector<S> {
        let mut start = 0.0;
        for (dt, a) in &self.segments {
            if t < start + dt {
                return a;
            }
            start += dt;
        }
        &self.segments.last().expect("non-empty").1
    }

    pub fn norm_inf(&self) -> f64 {
        self.segments.iter().map(|(_, a)| a.norm_inf()).fold(0.0, f64::max)
    }
}

/// Sampled trajectory of a control problem on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalencePath<S> {
    pub times: Vec<f64>,
    /// Control used on step `i` (between `times[i]` and `times[i+1]`).
    pub controls: Vec<GradedVector<S>>,
    pub points: Vec<GradedVector<S>>,
}

impl<S: FloatScalar> EquivalencePath<S> {
    pub fn start(&self) -> &GradedVector<S> {
        &self.points[0]
    }

    pub fn endpoint(&self) -> &GradedVector<S> {
        self.points.last().expect("trajectory has at least one point")
    }

    pub fn step_size(&self) -> f64 {
        if self.times.len() < 2 {
            0.0
        } else {
            self.times[1] - self.times[0]
        }
    }
}

/// Integrates `x' = f(step, stage_time, x)` with the classical RK4 scheme
/// on `steps` uniform steps over `[0, t_end]`. The step index lets callers
/// freeze piecewise-constant data for a whole step.
pub fn rk4<S, F>(x0: &[S], t_end: f64, steps: usize, mut f: F) -> Result<(Vec<f64>, Vec<Vec<S>>)>
where
    S: FloatScalar,
    F: FnMut(usize, f64, &[S]) -> Vec<S>,
{
    if steps == 0 {
        return Err(Error::Input("step count must be positive".into()));
    }
    let h = t_end / steps as f64;
    let hs = S::from_f64(h);
    let half = S::from_f64(0.5);
    let sixth = S::from_f64(1.0 / 6.0);
    let two = S::from_f64(2.0);
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut x = x0.to_vec();
    times.push(0.0);
    states.push(x.clone());
    let axpy = |x: &[S], k: &[S], s: S| -> Vec<S> { x.iter().zip(k).map(|(a, b)| *a + s * *b).collect() };
    for n in 0..steps {
        let t = n as f64 * h;
        let k1 = f(n, t, &x);
        let k2 = f(n, t + 0.5 * h, &axpy(&x, &k1, half * hs));
        let k3 = f(n, t + 0.5 * h, &axpy(&x, &k2, half * hs));
        let k4 = f(n, t + h, &axpy(&x, &k3, hs));
        for i in 0..x.len() {
            x[i] = x[i] + hs * sixth * (k1[i] + two * k2[i] + two * k3[i] + k4[i]);
        }
        times.push((n + 1) as f64 * h);
        states.push(x.clone());
    }
    Ok((times, states))
}

/// Midpoint time of step `n` of a uniform grid, used to pick the control.
pub(crate) fn step_midpoint(n: usize, t_end: f64, steps: usize) -> f64 {
    (n as f64 + 0.5) * t_end / steps as f64
}
