//! Curvature, gauge fields, Maurer–Cartan solving and gauge flows.
//!
//! Everything here is written against [`CurvatureModel`], implemented both
//! by [`DglAlgebra`] and by [`LInftyAlgebra`](crate::linfty::LInftyAlgebra).

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dgla::{add_scaled, fmt_coeffs, nonzero, sub, unit, BilinearForm, DglAlgebra};
use crate::error::{Error, Result};
use crate::flow::{rk4, step_midpoint, ControlPath, EquivalencePath};
use crate::graded::{rationalize, FloatScalar, GradedSpace, GradedVector, GradingKind, Matrix, Parity, Rational, Scalar};
use crate::report::ValidationReport;

/// The data needed to talk about the curvature map `Φ` on the odd part and
/// the gauge action of the even part.
///
/// All vectors are coefficient slices over the full basis of [`space`].
///
/// [`space`]: CurvatureModel::space
pub trait CurvatureModel<S: Scalar> {
    fn space(&self) -> &Arc<GradedSpace>;
    fn form(&self) -> Option<&BilinearForm<S>>;
    /// `Φ(x)`
    fn curvature_at(&self, x: &[S]) -> Vec<S>;
    /// `Φ'_x(y)`
    fn curvature_derivative(&self, x: &[S], y: &[S]) -> Vec<S>;
    /// `ξ_a(x)`
    fn gauge_at(&self, a: &[S], x: &[S]) -> Vec<S>;
    /// Derivative of `x ↦ ξ_a(x)` at `x` in direction `v`.
    fn gauge_derivative(&self, a: &[S], x: &[S], v: &[S]) -> Vec<S>;
    /// Right-hand side of the adjoint equivalence ODE, which is also the
    /// right-hand side of the equivariance identity
    /// `Φ'_x(ξ_a(x)) = adjoint_at(a, Φ(x), x)`.
    fn adjoint_at(&self, a: &[S], b: &[S], x: &[S]) -> Vec<S>;
    /// Lie bracket of two even elements.
    fn even_bracket(&self, a: &[S], b: &[S]) -> Vec<S>;
}

/// Models that can produce a floating-point copy of themselves.
pub trait ToFloatModel {
    type Float: CurvatureModel<f64>;
    fn to_float(&self) -> Self::Float;
}

impl<S: Scalar> CurvatureModel<S> for DglAlgebra<S> {
    fn space(&self) -> &Arc<GradedSpace> {
        DglAlgebra::space(self)
    }

    fn form(&self) -> Option<&BilinearForm<S>> {
        DglAlgebra::form(self)
    }

    fn curvature_at(&self, x: &[S]) -> Vec<S> {
        let mut out = self.d(x);
        add_scaled(&mut out, &S::from_ratio(1, 2), &self.br(x, x));
        out
    }

    fn curvature_derivative(&self, x: &[S], y: &[S]) -> Vec<S> {
        let mut out = self.d(y);
        add_scaled(&mut out, &S::one(), &self.br(x, y));
        out
    }

    fn gauge_at(&self, a: &[S], x: &[S]) -> Vec<S> {
        sub(&self.br(a, x), &self.d(a))
    }

    fn gauge_derivative(&self, a: &[S], _x: &[S], v: &[S]) -> Vec<S> {
        self.br(a, v)
    }

    fn adjoint_at(&self, a: &[S], b: &[S], _x: &[S]) -> Vec<S> {
        self.br(a, b)
    }

    fn even_bracket(&self, a: &[S], b: &[S]) -> Vec<S> {
        self.br(a, b)
    }
}

impl ToFloatModel for DglAlgebra<Rational> {
    type Float = DglAlgebra<f64>;
    fn to_float(&self) -> DglAlgebra<f64> {
        self.to_f64()
    }
}

fn same_space<S: Scalar>(g: &impl CurvatureModel<S>, v: &GradedVector<S>) -> Result<()> {
    if **v.space() != **g.space() {
        return Err(Error::Input("vector does not belong to the algebra's space".into()));
    }
    Ok(())
}

/// `Φ(x)`; `x` must be odd.
pub fn curvature<S: Scalar>(g: &impl CurvatureModel<S>, x: &GradedVector<S>) -> Result<GradedVector<S>> {
    same_space(g, x)?;
    x.require_parity(Parity::Odd, "x")?;
    GradedVector::from_coeffs(g.space(), g.curvature_at(x.coeffs()))
}

/// Matrix of `y ↦ Φ'_x(y)` from the odd part to the even part, in the
/// bases of odd and even basis vectors (in basis order).
pub fn curvature_differential<S: Scalar>(g: &impl CurvatureModel<S>, x: &GradedVector<S>) -> Result<Matrix<S>> {
    same_space(g, x)?;
    x.require_parity(Parity::Odd, "x")?;
    Ok(differential_matrix(g, x.coeffs()))
}

pub(crate) fn differential_matrix<S: Scalar>(g: &impl CurvatureModel<S>, x: &[S]) -> Matrix<S> {
    let sp = g.space();
    let (even, odd) = (sp.even_indices(), sp.odd_indices());
    let cols: Vec<Vec<S>> = odd
        .iter()
        .map(|&j| {
            let img = g.curvature_derivative(x, &unit(sp.dim(), j));
            even.iter().map(|&i| img[i].clone()).collect()
        })
        .collect();
    Matrix::from_columns(even.len(), &cols)
}

/// Matrix of `a ↦ ξ_a(x)` from the even part to the odd part.
pub(crate) fn action_matrix<S: Scalar>(g: &impl CurvatureModel<S>, x: &[S]) -> Matrix<S> {
    let sp = g.space();
    let (even, odd) = (sp.even_indices(), sp.odd_indices());
    let cols: Vec<Vec<S>> = even
        .iter()
        .map(|&j| {
            let img = g.gauge_at(&unit(sp.dim(), j), x);
            odd.iter().map(|&i| img[i].clone()).collect()
        })
        .collect();
    Matrix::from_columns(odd.len(), &cols)
}

/// `ξ_a(x)`
pub fn gauge_field_value<S: Scalar>(
    g: &impl CurvatureModel<S>,
    a: &GradedVector<S>,
    x: &GradedVector<S>,
) -> Result<GradedVector<S>> {
    same_space(g, a)?;
    same_space(g, x)?;
    a.require_parity(Parity::Even, "a")?;
    x.require_parity(Parity::Odd, "x")?;
    GradedVector::from_coeffs(g.space(), g.gauge_at(a.coeffs(), x.coeffs()))
}

/// How sample points are drawn for identities checked at points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sampling {
    pub seed: u64,
    /// Number of random rational points in addition to `0` and the basis.
    pub random_points: usize,
}

impl Default for Sampling {
    fn default() -> Self {
        Self { seed: 0x6d63_5eed, random_points: 100 }
    }
}

/// `0`, every basis vector of the given parity, then random rational
/// combinations with coefficients `p/q`, `|p| ≤ 4`, `1 ≤ q ≤ 3`.
pub fn sample_points<S: Scalar>(space: &GradedSpace, parity: Parity, sampling: Sampling) -> Vec<Vec<S>> {
    let idx = space.indices_of_parity(parity);
    let n = space.dim();
    let mut pts = vec![vec![S::zero(); n]];
    pts.extend(idx.iter().map(|&i| unit(n, i)));
    let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
    for _ in 0..sampling.random_points {
        let mut v = vec![S::zero(); n];
        for &i in &idx {
            v[i] = S::from_ratio(rng.random_range(-4..=4), rng.random_range(1..=3));
        }
        pts.push(v);
    }
    pts
}

/// Checks `[ξ_a, ξ_b] = ξ_{[a,b]}` for all even basis pairs at sample points,
/// with `[ξ,η](x) = ξ'(x)η(x) − η'(x)ξ(x)`. When the identity fails but
/// holds with the opposite sign everywhere, the outcome says so.
pub fn check_gauge_homomorphism<S: Scalar>(g: &impl CurvatureModel<S>, sampling: Sampling) -> ValidationReport {
    let sp = g.space();
    let n = sp.dim();
    let even = sp.even_indices();
    let points = sample_points::<S>(sp, Parity::Odd, sampling);
    let mut hom_witness = None;
    let mut anti_holds = true;
    let mut cases = 0u64;
    for &i in &even {
        for &j in &even {
            let (a, b) = (unit::<S>(n, i), unit::<S>(n, j));
            let ab = g.even_bracket(&a, &b);
            for x in &points {
                cases += 1;
                let (xa, xb) = (g.gauge_at(&a, x), g.gauge_at(&b, x));
                let lhs = sub(&g.gauge_derivative(&a, x, &xb), &g.gauge_derivative(&b, x, &xa));
                let rhs = g.gauge_at(&ab, x);
                let diff = sub(&lhs, &rhs);
                if hom_witness.is_none() && nonzero(&diff, 1.0) {
                    hom_witness = Some(format!(
                        "a = {}, b = {}, x = {}: [ξ_a,ξ_b](x) − ξ_[a,b](x) = {}",
                        sp.label(i),
                        sp.label(j),
                        fmt_coeffs(sp, x),
                        fmt_coeffs(sp, &diff)
                    ));
                }
                if anti_holds {
                    let mut sum = lhs;
                    add_scaled(&mut sum, &S::one(), &rhs);
                    anti_holds = !nonzero(&sum, 1.0);
                }
            }
        }
    }
    let mut r = ValidationReport::new();
    let homomorphism = hom_witness.is_none();
    let outcome = r.push("gauge_homomorphism", cases, hom_witness);
    if homomorphism {
        outcome.with_note("orientation: homomorphism");
    } else if anti_holds {
        outcome.with_note("orientation: anti-homomorphism holds instead");
    }
    r
}

/// Base point of an orbit. Orbits are never enumerated; membership is
/// decided on the fibre over `base`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitSpec<S> {
    pub base: GradedVector<S>,
}

impl<S: Scalar> OrbitSpec<S> {
    pub fn new(base: GradedVector<S>) -> Result<Self> {
        base.require_parity(Parity::Even, "orbit base")?;
        Ok(Self { base })
    }

    pub fn zero(space: &Arc<GradedSpace>) -> Self {
        Self { base: GradedVector::zero(space) }
    }
}

/// Checks `Φ'_x(ξ_a(x)) = [a, Φ(x)] (+ higher terms)` for every even basis
/// vector `a`, at a point `x` of the fibre over `orbit.base`.
pub fn check_tangency<S: Scalar>(
    g: &impl CurvatureModel<S>,
    orbit: &OrbitSpec<S>,
    x: &GradedVector<S>,
) -> Result<ValidationReport> {
    let phi = curvature(g, x)?;
    same_space(g, &orbit.base)?;
    let off = phi.sub_vec(&orbit.base);
    if nonzero(off.coeffs(), 1.0) {
        return Err(Error::Precondition(format!("x is not on the fibre: Φ(x) − base = {}", off.display())));
    }
    let sp = g.space();
    let even = sp.even_indices();
    let mut witness = None;
    for &i in &even {
        let a = unit::<S>(sp.dim(), i);
        let lhs = g.curvature_derivative(x.coeffs(), &g.gauge_at(&a, x.coeffs()));
        let rhs = g.adjoint_at(&a, phi.coeffs(), x.coeffs());
        let diff = sub(&lhs, &rhs);
        if nonzero(&diff, 1.0) {
            witness = Some(format!("a = {}: Φ'_x(ξ_a(x)) − [a,Φ(x)] = {}", sp.label(i), fmt_coeffs(sp, &diff)));
            break;
        }
    }
    let mut r = ValidationReport::new();
    r.push("tangency", even.len() as u64, witness);
    Ok(r)
}

/// Moment-map identity `β(ξ_a(x), y) = β(a, Φ'_x(y))` on all even basis `a`,
/// odd basis `y` and sampled odd `x`.
pub fn check_moment_identity<S: Scalar>(g: &impl CurvatureModel<S>, sampling: Sampling) -> Result<ValidationReport> {
    let form = g.form().ok_or_else(|| Error::Precondition("algebra has no bilinear form".into()))?;
    let sp = g.space();
    let n = sp.dim();
    let (even, odd) = (sp.even_indices(), sp.odd_indices());
    let mut witness = None;
    let mut cases = 0u64;
    'outer: for x in sample_points::<S>(sp, Parity::Odd, sampling) {
        for &i in &even {
            let a = unit::<S>(n, i);
            let xi = g.gauge_at(&a, &x);
            for &j in &odd {
                cases += 1;
                let y = unit::<S>(n, j);
                let lhs = form.eval(&xi, &y);
                let rhs = form.eval(&a, &g.curvature_derivative(&x, &y));
                if !(lhs.clone() - rhs.clone()).is_negligible(1.0) {
                    witness = Some(format!(
                        "a = {}, y = {}, x = {}: β(ξ_a(x),y) = {lhs}, β(a,Φ'_x(y)) = {rhs}",
                        sp.label(i),
                        sp.label(j),
                        fmt_coeffs(sp, &x)
                    ));
                    break 'outer;
                }
            }
        }
    }
    let mut r = ValidationReport::new();
    r.push("moment_identity", cases, witness);
    Ok(r)
}

/// Equivariance `Φ'_x(ξ_a(x)) = [a, Φ(x)] (+ higher terms)` at sampled odd
/// `x`, not necessarily on any fibre.
pub fn check_equivariance<S: Scalar>(g: &impl CurvatureModel<S>, sampling: Sampling) -> ValidationReport {
    let sp = g.space();
    let n = sp.dim();
    let even = sp.even_indices();
    let mut witness = None;
    let mut cases = 0u64;
    'outer: for x in sample_points::<S>(sp, Parity::Odd, sampling) {
        let phi = g.curvature_at(&x);
        for &i in &even {
            cases += 1;
            let a = unit::<S>(n, i);
            let lhs = g.curvature_derivative(&x, &g.gauge_at(&a, &x));
            let rhs = g.adjoint_at(&a, &phi, &x);
            let diff = sub(&lhs, &rhs);
            if nonzero(&diff, 1.0) {
                witness = Some(format!(
                    "a = {}, x = {}: difference {}",
                    sp.label(i),
                    fmt_coeffs(sp, &x),
                    fmt_coeffs(sp, &diff)
                ));
                break 'outer;
            }
        }
    }
    let mut r = ValidationReport::new();
    r.push("equivariance", cases, witness);
    r
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonOptions {
    pub tol: f64,
    pub max_iter: usize,
    /// Coefficients within this distance of a rational with denominator at
    /// most `max_denominator` are snapped to it for the exact re-check.
    pub rationalize_tol: f64,
    pub max_denominator: u32,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        Self { tol: 1e-12, max_iter: 50, rationalize_tol: 1e-9, max_denominator: 64 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum McStatus {
    Converged,
    MaxIterations,
    /// `Φ'_x` vanished (numerically) while the residual did not.
    Singular,
}

#[derive(Debug, Clone, PartialEq)]
pub struct McSolution {
    pub status: McStatus,
    pub point: GradedVector<f64>,
    /// `‖Φ(x) − base‖∞` at the returned point, recomputed after the last step.
    pub residual: f64,
    pub iterations: usize,
    pub history: Vec<f64>,
    /// Rationalised point, when every coefficient is close to a small
    /// fraction.
    pub exact: Option<GradedVector<Rational>>,
    /// Whether the rationalised point lies exactly on the fibre.
    pub exact_verified: bool,
}

impl McSolution {
    pub fn converged(&self) -> bool {
        self.status == McStatus::Converged
    }
}

/// Newton iteration on `F(x) = Φ(x) − base` with minimal-norm
/// least-squares steps.
pub fn mc_solve<M>(
    g: &M,
    orbit: &OrbitSpec<Rational>,
    seed: &GradedVector<f64>,
    opts: NewtonOptions,
) -> Result<McSolution>
where
    M: CurvatureModel<Rational> + ToFloatModel,
{
    seed.require_parity(Parity::Odd, "seed")?;
    if seed.coeffs().len() != g.space().dim() {
        return Err(Error::DimensionMismatch("seed dimension".into()));
    }
    if seed.coeffs().iter().any(|c| !c.is_finite()) {
        return Err(Error::Input("seed has non-finite coefficients".into()));
    }
    let gf = g.to_float();
    let sp = g.space().clone();
    let (even, odd) = (sp.even_indices(), sp.odd_indices());
    let base: Vec<f64> = orbit.base.coeffs().iter().map(|c| c.to_f64()).collect();
    let residual = |x: &[f64]| -> Vec<f64> {
        let phi = gf.curvature_at(x);
        even.iter().map(|&i| phi[i] - base[i]).collect()
    };
    let norm = |v: &[f64]| v.iter().fold(0.0f64, |m, c| m.max(c.abs()));

    let mut x = seed.coeffs().to_vec();
    let mut history = Vec::new();
    let mut status = McStatus::MaxIterations;
    let mut iterations = 0;
    loop {
        let f = residual(&x);
        let r = norm(&f);
        history.push(r);
        if !r.is_finite() {
            status = McStatus::Singular;
            break;
        }
        if r <= opts.tol {
            status = McStatus::Converged;
            break;
        }
        if iterations >= opts.max_iter {
            break;
        }
        let j = differential_matrix(&gf, &x);
        let jm = DMatrix::from_fn(j.rows(), j.cols(), |r, c| *j.get(r, c));
        let svd = jm.svd(true, true);
        let smax = svd.singular_values.iter().fold(0.0f64, |m, s| m.max(*s));
        if smax <= 1e-14 {
            status = McStatus::Singular;
            break;
        }
        let step = svd
            .solve(&DVector::from_vec(f), smax * 1e-12)
            .map_err(|e| Error::Structural(format!("least-squares solve failed: {e}")))?;
        for (k, &i) in odd.iter().enumerate() {
            x[i] -= step[k];
        }
        iterations += 1;
    }
    let residual_now = *history.last().unwrap_or(&f64::INFINITY);
    let point = GradedVector::from_coeffs(&sp, x.clone())?;

    let mut exact = None;
    let mut exact_verified = false;
    if status == McStatus::Converged {
        let snapped: Option<Vec<Rational>> = x
            .iter()
            .map(|&v| rationalize(v, opts.max_denominator, opts.rationalize_tol))
            .collect();
        if let Some(c) = snapped {
            let xe = GradedVector::from_coeffs(&sp, c)?;
            let phi = g.curvature_at(xe.coeffs());
            exact_verified = phi == *orbit.base.coeffs();
            exact = Some(xe);
        }
    }
    Ok(McSolution { status, point, residual: residual_now, iterations, history, exact, exact_verified })
}

/// RK4 integration of the gauge flow `x' = ξ_{a(t)}(x)`. The control is
/// frozen on each step at its value at the step midpoint.
pub fn gauge_flow<F: FloatScalar>(
    g: &impl CurvatureModel<F>,
    x0: &GradedVector<F>,
    a_path: &ControlPath<F>,
    steps: usize,
) -> Result<EquivalencePath<F>> {
    same_space(g, x0)?;
    x0.require_parity(Parity::Odd, "x0")?;
    for (_, a) in a_path.segments() {
        a.require_parity(Parity::Even, "control")?;
    }
    let t_end = a_path.duration();
    let controls: Vec<GradedVector<F>> =
        (0..steps).map(|n| a_path.at(step_midpoint(n, t_end, steps)).clone()).collect();
    let (times, states) = rk4(x0.coeffs(), t_end, steps, |n, _, x| g.gauge_at(controls[n].coeffs(), x))?;
    let points = states
        .into_iter()
        .map(|c| GradedVector::from_coeffs(g.space(), c))
        .collect::<Result<_>>()?;
    Ok(EquivalencePath { times, controls, points })
}

/// Largest `‖Φ(x)‖∞` along a trajectory.
pub fn max_curvature_drift<F: FloatScalar>(g: &impl CurvatureModel<F>, path: &EquivalencePath<F>) -> f64 {
    path.points
        .iter()
        .map(|x| g.curvature_at(x.coeffs()).iter().map(|c| c.abs_f64()).fold(0.0, f64::max))
        .fold(0.0, f64::max)
}

/// Level-one membership test for Z-graded algebras: `x` in degree 1, base in
/// degree 2, compare `Φ(x)` with the base inside degree 2. The verdict is
/// cross-checked against the comparison on the whole even part.
pub fn restrict_level_one<S: Scalar>(
    g: &impl CurvatureModel<S>,
    base: &GradedVector<S>,
    x: &GradedVector<S>,
) -> Result<bool> {
    let sp = g.space();
    if sp.kind() != GradingKind::Z {
        return Err(Error::Input("level-one restriction needs a Z-graded algebra".into()));
    }
    same_space(g, x)?;
    same_space(g, base)?;
    let level = |v: &GradedVector<S>, d: i64| v.coeffs().iter().enumerate().all(|(i, c)| c.is_zero() || sp.degree(i) == d);
    if !level(x, 1) {
        return Err(Error::Input("x is not homogeneous of degree 1".into()));
    }
    if !level(base, 2) {
        return Err(Error::Input("orbit base is not in degree 2".into()));
    }
    let phi = g.curvature_at(x.coeffs());
    let deg2 = sp.indices_of_degree(2);
    let member = deg2.iter().all(|&i| phi[i] == base.coeffs()[i]);
    let full = sp.even_indices().iter().all(|&i| phi[i] == base.coeffs()[i]);
    if member != full {
        return Err(Error::Structural(format!(
            "Φ(x) has components outside degree 2: {}",
            fmt_coeffs(sp, &phi)
        )));
    }
    Ok(member)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn vec_of(g: &impl CurvatureModel<Rational>, entries: &[(&str, Rational)]) -> GradedVector<Rational> {
        GradedVector::from_labels(g.space(), entries.iter().map(|(l, c)| (*l, c.clone()))).unwrap()
    }

    #[test]
    fn curvature_examples() {
        let a1 = catalog::a1();
        let x = vec_of(&a1, &[("y1", q(3, 1)), ("y2", q(-1, 2))]);
        assert!(curvature(&a1, &x).unwrap().is_zero());
        assert!(curvature(&a1, &GradedVector::zero(a1.space())).unwrap().is_zero());
        assert!(curvature(&a1, &vec_of(&a1, &[("b", q(1, 1))])).is_err());

        let ho1 = catalog::ho1_dgla();
        let x = vec_of(&ho1, &[("q", q(2, 1)), ("p", q(3, 1))]);
        let phi = curvature(&ho1, &x).unwrap();
        assert_eq!(phi, vec_of(&ho1, &[("e*", q(6, 1))]));
    }

    #[test]
    fn differential_examples() {
        let ho1 = catalog::ho1_dgla();
        let x = vec_of(&ho1, &[("q", q(1, 1))]);
        let m = curvature_differential(&ho1, &x).unwrap();
        // rows: e, e*; cols: q, p
        assert_eq!(m.to_rows(), vec![vec![q(0, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]]);
        let a1 = catalog::a1_dy1_b();
        let m = curvature_differential(&a1, &GradedVector::zero(a1.space())).unwrap();
        assert_eq!(m.to_rows(), vec![vec![q(1, 1), q(0, 1)]]);
    }

    #[test]
    fn gauge_field_examples() {
        let ho1 = catalog::ho1_dgla();
        let e = vec_of(&ho1, &[("e", q(1, 1))]);
        let x = vec_of(&ho1, &[("q", q(2, 1)), ("p", q(5, 1))]);
        assert_eq!(gauge_field_value(&ho1, &e, &x).unwrap(), vec_of(&ho1, &[("q", q(-2, 1)), ("p", q(5, 1))]));
        let zero = GradedVector::zero(ho1.space());
        assert!(gauge_field_value(&ho1, &zero, &x).unwrap().is_zero());
        assert!(gauge_field_value(&ho1, &x, &x).is_err());
    }

    #[test]
    fn homomorphism_and_mutated_differential() {
        let s = Sampling { random_points: 20, ..Sampling::default() };
        assert!(check_gauge_homomorphism(&catalog::a1(), s).all_passed());
        let r = check_gauge_homomorphism(&catalog::n1(), s);
        assert!(r.all_passed());
        assert_eq!(r.checks[0].note.as_deref(), Some("orientation: homomorphism"));
        // d(h) = q breaks Leibniz and the homomorphism
        let mut g = catalog::n1();
        let (h, qi) = (g.space().index_of("h").unwrap(), g.space().index_of("q").unwrap());
        g.differential_mut().set(&[h], qi, q(1, 1)).unwrap();
        let r = check_gauge_homomorphism(&g, s);
        assert!(!r.all_passed());
        assert!(r.checks[0].witness.is_some());
    }

    #[test]
    fn tangency_examples() {
        let ho1 = catalog::ho1_dgla();
        let x = vec_of(&ho1, &[("q", q(1, 1))]);
        assert!(check_tangency(&ho1, &OrbitSpec::zero(ho1.space()), &x).unwrap().all_passed());
        let a1 = catalog::a1_dy1_b();
        let zero = GradedVector::zero(a1.space());
        assert!(check_tangency(&a1, &OrbitSpec::zero(a1.space()), &zero).unwrap().all_passed());
        let off = vec_of(&ho1, &[("q", q(1, 1)), ("p", q(1, 1))]);
        assert!(matches!(
            check_tangency(&ho1, &OrbitSpec::zero(ho1.space()), &off),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn newton_examples() {
        let ho1 = catalog::ho1_dgla();
        let sp = ho1.space().clone();
        let seed = GradedVector::from_labels(&sp, [("q", 1.0), ("p", 0.001)]).unwrap();
        let sol = mc_solve(&ho1, &OrbitSpec::zero(&sp), &seed, NewtonOptions::default()).unwrap();
        assert!(sol.converged());
        assert!(sol.residual < 1e-10);
        assert!((sol.point.get("q").unwrap() - 1.0).abs() < 1e-5);
        assert!(sol.point.get("p").unwrap().abs() < 1e-10);

        let base = OrbitSpec::new(vec_of(&ho1, &[("e*", q(1, 1))])).unwrap();
        let seed = GradedVector::from_labels(&sp, [("q", 1.0), ("p", 1.0)]).unwrap();
        let sol = mc_solve(&ho1, &base, &seed, NewtonOptions::default()).unwrap();
        assert!(sol.converged());
        let p = sol.point.get("q").unwrap() * sol.point.get("p").unwrap();
        assert!((p - 1.0).abs() < 1e-10);
        assert!(sol.exact_verified);

        let seed = GradedVector::from_labels(&sp, [("q", 1.0), ("p", 1e-5)]).unwrap();
        let sol = mc_solve(&ho1, &OrbitSpec::zero(&sp), &seed, NewtonOptions::default()).unwrap();
        assert!(sol.exact_verified);
        assert_eq!(sol.exact.unwrap(), vec_of(&ho1, &[("q", q(1, 1))]));

        let a1 = catalog::a1();
        let seed = GradedVector::from_labels(a1.space(), [("y1", 0.3), ("y2", -2.0)]).unwrap();
        let sol = mc_solve(&a1, &OrbitSpec::zero(a1.space()), &seed, NewtonOptions::default()).unwrap();
        assert!(sol.converged());
        assert_eq!(sol.iterations, 0);
    }

    #[test]
    fn newton_reports_singular_and_iteration_limit() {
        // Φ ≡ 0 on the odd part but the base is nonzero: no solution, and
        // the differential vanishes identically.
        let a1 = catalog::a1();
        let base = OrbitSpec::new(vec_of(&a1, &[("b", q(1, 1))])).unwrap();
        let seed = GradedVector::from_labels(a1.space(), [("y1", 1.0)]).unwrap();
        let sol = mc_solve(&a1, &base, &seed, NewtonOptions::default()).unwrap();
        assert_eq!(sol.status, McStatus::Singular);

        let ho1 = catalog::ho1_dgla();
        let seed = GradedVector::from_labels(ho1.space(), [("q", 3.0), ("p", 2.0)]).unwrap();
        let opts = NewtonOptions { max_iter: 1, tol: 1e-14, ..NewtonOptions::default() };
        let sol = mc_solve(&ho1, &OrbitSpec::zero(ho1.space()), &seed, opts).unwrap();
        assert_eq!(sol.status, McStatus::MaxIterations);
        assert_eq!(sol.history.len(), 2);
    }

    #[test]
    fn gauge_flow_examples() {
        let ho1 = catalog::ho1_dgla().to_f64();
        let sp = ho1.space().clone();
        let x0 = GradedVector::from_labels(&sp, [("q", 1.0)]).unwrap();
        let a = ControlPath::constant(GradedVector::from_labels(&sp, [("e", 1.0)]).unwrap(), 1.0).unwrap();
        let path = gauge_flow(&ho1, &x0, &a, 1000).unwrap();
        let end = path.endpoint();
        assert!((end.get("q").unwrap() - (-1.0f64).exp()).abs() < 1e-8);
        assert!(end.get("p").unwrap().abs() < 1e-12);
        assert!(max_curvature_drift(&ho1, &path) < 1e-8);

        let zero = ControlPath::constant(GradedVector::zero(&sp), 1.0).unwrap();
        let still = gauge_flow(&ho1, &x0, &zero, 10).unwrap();
        assert!(still.points.iter().all(|p| *p == x0));
        assert!(gauge_flow(&ho1, &x0, &a, 0).is_err());

        // translation along -da in the variant with d y1 = b... here d b = y1
        let a1 = catalog::a1_db_y1().to_f64();
        let sp = a1.space().clone();
        let x0 = GradedVector::from_labels(&sp, [("y1", 0.5), ("y2", 2.0)]).unwrap();
        let b = ControlPath::constant(GradedVector::from_labels(&sp, [("b", 1.0)]).unwrap(), 1.0).unwrap();
        let path = gauge_flow(&a1, &x0, &b, 4).unwrap();
        for (t, x) in path.times.iter().zip(&path.points) {
            assert!((x.get("y1").unwrap() - (0.5 - t)).abs() < 1e-14);
            assert!((x.get("y2").unwrap() - 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn level_one_examples() {
        let ho1 = catalog::ho1_dgla();
        let zero = GradedVector::zero(ho1.space());
        assert!(restrict_level_one(&ho1, &zero, &zero).unwrap());
        let x = vec_of(&ho1, &[("q", q(1, 1)), ("p", q(1, 1))]);
        assert!(restrict_level_one(&ho1, &vec_of(&ho1, &[("e*", q(1, 1))]), &x).unwrap());
        assert!(!restrict_level_one(&ho1, &zero, &x).unwrap());
        assert!(restrict_level_one(&ho1, &zero, &vec_of(&ho1, &[("e", q(1, 1))])).is_err());
        assert!(restrict_level_one(&catalog::a1(), &GradedVector::zero(catalog::a1().space()), &GradedVector::zero(catalog::a1().space())).is_err());
    }
}
