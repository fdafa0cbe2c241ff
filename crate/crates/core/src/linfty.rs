//! L∞-algebras with finitely many brackets.
//!
//! Conventions: `l_k` is graded antisymmetric of degree `2 − k` (parity
//! `k mod 2`), and the generalised Jacobi identities read
//!
//! ```text
//! Σ_{i+j=n+1} Σ_{σ ∈ Sh(i,n−i)} χ(σ) (−1)^{i(j−1)} l_j(l_i(x_σ(1),…,x_σ(i)), x_σ(i+1),…,x_σ(n)) = 0
//! ```
//!
//! where `χ(σ)` is the sign of `σ` times its Koszul sign. With `l₁ = d`,
//! `l₂ = [-,-]` and no higher brackets this is exactly `d² = 0`, the Leibniz
//! rule and the Jacobi identity.
//!
//! The gauge field is `ξ_a(x) = −Σ_k 1/(k−1)! l_k(x,…,x,a)`, which is
//! `Σ_k (−1)^k/(k−1)! l_k(a,x,…,x)` with the even `a` moved to the front.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dgla::{add_scaled, fmt_coeffs, nonzero, sub, unit, BilinearForm, DglAlgebra};
use crate::error::{Error, Result};
use crate::flow::{rk4, step_midpoint, ControlPath, EquivalencePath};
use crate::graded::koszul::{reorder_sign, unshuffles};
use crate::graded::scalar::factorial;
use crate::graded::tensor::{multisets, tuples};
use crate::graded::{
    FloatScalar, GradedSpace, GradedVector, GradingKind, Parity, Rational, Scalar, StructureTensor, Symmetry,
};
use crate::maurer_cartan::{self, CurvatureModel, Sampling, ToFloatModel};
use crate::report::ValidationReport;

#[derive(Debug, Clone, PartialEq)]
pub struct LInftyAlgebra<S> {
    space: Arc<GradedSpace>,
    brackets: BTreeMap<usize, StructureTensor<S>>,
    form: Option<BilinearForm<S>>,
}

impl<S: Scalar> LInftyAlgebra<S> {
    /// Checks shapes, degrees `2 − k` and declared antisymmetry; the
    /// identities are checked by [`validate_linfty`].
    pub fn new(
        space: &Arc<GradedSpace>,
        brackets: Vec<StructureTensor<S>>,
        form: Option<BilinearForm<S>>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for t in brackets {
            let k = t.arity();
            if **t.input() != **space || **t.output() != **space {
                return Err(Error::DimensionMismatch(format!("bracket l_{k} is not an operation on the space")));
            }
            let shift_ok = match space.kind() {
                GradingKind::Z => t.shift() == 2 - k as i64,
                GradingKind::Z2 => t.parity() == Parity::of_degree(k as i64),
            };
            if !shift_ok {
                return Err(Error::Input(format!("bracket l_{k} must have degree {}", 2 - k as i64)));
            }
            if t.symmetry() != Symmetry::Antisymmetric {
                return Err(Error::Input(format!("bracket l_{k} must be declared graded-antisymmetric")));
            }
            if map.insert(k, t).is_some() {
                return Err(Error::Input(format!("bracket l_{k} given twice")));
            }
        }
        if let Some(f) = &form {
            if **f.space() != **space {
                return Err(Error::DimensionMismatch("form lives on a different space".into()));
            }
        }
        Ok(Self { space: space.clone(), brackets: map, form })
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn form(&self) -> Option<&BilinearForm<S>> {
        self.form.as_ref()
    }

    pub fn with_form(mut self, form: Option<BilinearForm<S>>) -> Self {
        self.form = form;
        self
    }

    pub fn bracket(&self, k: usize) -> Option<&StructureTensor<S>> {
        self.brackets.get(&k)
    }

    pub fn bracket_mut(&mut self, k: usize) -> Option<&mut StructureTensor<S>> {
        self.brackets.get_mut(&k)
    }

    pub fn brackets(&self) -> impl Iterator<Item = &StructureTensor<S>> {
        self.brackets.values()
    }

    /// Largest arity with a stored bracket (0 if there are none).
    pub fn max_arity(&self) -> usize {
        self.brackets.keys().next_back().copied().unwrap_or(0)
    }

    /// `l_k(args)`, zero when no bracket of arity `k` is stored.
    pub fn l(&self, k: usize, args: &[&[S]]) -> Vec<S> {
        match self.brackets.get(&k) {
            Some(t) => t.apply(args),
            None => vec![S::zero(); self.space.dim()],
        }
    }

    pub fn apply(&self, args: &[&GradedVector<S>]) -> Result<GradedVector<S>> {
        let slices: Vec<&[S]> = args.iter().map(|a| a.coeffs()).collect();
        GradedVector::from_coeffs(&self.space, self.l(args.len(), &slices))
    }

    pub fn cast<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> LInftyAlgebra<T> {
        LInftyAlgebra {
            space: self.space.clone(),
            brackets: self.brackets.iter().map(|(k, t)| (*k, t.map_scalars(f))).collect(),
            form: self.form.as_ref().map(|b| b.map_scalars(f)),
        }
    }

    pub fn to_f64(&self) -> LInftyAlgebra<f64> {
        self.cast(|s| s.to_f64())
    }

    /// The DGLA `(l₁, l₂)` when no higher bracket is present.
    pub fn to_dgla(&self) -> Result<DglAlgebra<S>> {
        if self.brackets.keys().any(|&k| k > 2 && !self.brackets[&k].is_zero()) {
            return Err(Error::Precondition("algebra has nonzero brackets of arity above 2".into()));
        }
        let sp = &self.space;
        let d = match self.brackets.get(&1) {
            Some(t) => t.clone(),
            None => StructureTensor::zeros(sp, sp, 1, 1, Symmetry::Antisymmetric),
        };
        let d = d.rebase(sp, sp, 1)?;
        let br = match self.brackets.get(&2) {
            Some(t) => t.clone(),
            None => StructureTensor::zeros(sp, sp, 2, 0, Symmetry::Antisymmetric),
        };
        DglAlgebra::new(sp, d, br, self.form.clone())
    }

    /// `l_k(front…, x, …, x)` with `k = front.len() + m`.
    fn l_power(&self, front: &[&[S]], x: &[S], m: usize) -> Vec<S> {
        let k = front.len() + m;
        if !self.brackets.contains_key(&k) {
            return vec![S::zero(); self.space.dim()];
        }
        let mut args: Vec<&[S]> = front.to_vec();
        args.extend(std::iter::repeat_n(x, m));
        self.l(k, &args)
    }

    fn inv_fact(k: usize) -> S {
        S::one() / factorial::<S>(k)
    }

    /// `(−1)^k / m!`
    fn alt_inv_fact(k: usize, m: usize) -> S {
        let f = Self::inv_fact(m);
        if k % 2 == 1 {
            -f
        } else {
            f
        }
    }
}

impl<S: Scalar> CurvatureModel<S> for LInftyAlgebra<S> {
    fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    fn form(&self) -> Option<&BilinearForm<S>> {
        self.form.as_ref()
    }

    fn curvature_at(&self, x: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.space.dim()];
        for &k in self.brackets.keys() {
            add_scaled(&mut out, &Self::inv_fact(k), &self.l_power(&[], x, k));
        }
        out
    }

    fn curvature_derivative(&self, x: &[S], y: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.space.dim()];
        for &k in self.brackets.keys() {
            add_scaled(&mut out, &Self::inv_fact(k - 1), &self.l_power(&[y], x, k - 1));
        }
        out
    }

    fn gauge_at(&self, a: &[S], x: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.space.dim()];
        for &k in self.brackets.keys() {
            add_scaled(&mut out, &Self::alt_inv_fact(k, k - 1), &self.l_power(&[a], x, k - 1));
        }
        out
    }

    fn gauge_derivative(&self, a: &[S], x: &[S], v: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.space.dim()];
        for &k in self.brackets.keys().filter(|&&k| k >= 2) {
            add_scaled(&mut out, &Self::alt_inv_fact(k, k - 2), &self.l_power(&[a, v], x, k - 2));
        }
        out
    }

    fn adjoint_at(&self, a: &[S], b: &[S], x: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.space.dim()];
        for &k in self.brackets.keys().filter(|&&k| k >= 2) {
            add_scaled(&mut out, &Self::alt_inv_fact(k, k - 2), &self.l_power(&[a, b], x, k - 2));
        }
        out
    }

    fn even_bracket(&self, a: &[S], b: &[S]) -> Vec<S> {
        self.l(2, &[a, b])
    }
}

impl ToFloatModel for LInftyAlgebra<Rational> {
    type Float = LInftyAlgebra<f64>;
    fn to_float(&self) -> LInftyAlgebra<f64> {
        self.to_f64()
    }
}

/// Checks bracket degrees, antisymmetry and every generalised Jacobi
/// identity of total arity `n ≤ up_to_arity` on basis tuples.
///
/// Jacobiators of graded-antisymmetric brackets are themselves graded
/// antisymmetric, so non-decreasing index tuples suffice once antisymmetry
/// has passed.
pub fn validate_linfty<S: Scalar>(l: &LInftyAlgebra<S>, up_to_arity: usize) -> Result<ValidationReport> {
    if up_to_arity < 1 {
        return Err(Error::Input("identities start at arity 1".into()));
    }
    let sp = &*l.space;
    let dim = sp.dim();
    let mut r = ValidationReport::new();
    let degree = l.brackets.values().find_map(|t| t.degree_violation().map(|w| format!("l_{}: {w}", t.arity())));
    r.push("bracket_degrees", l.brackets.len() as u64, degree);
    let sym = l.brackets.values().find_map(|t| t.symmetry_violation().map(|w| format!("l_{}: {w}", t.arity())));
    r.push("bracket_antisymmetry", l.brackets.len() as u64, sym);
    let units: Vec<Vec<S>> = (0..dim).map(|i| unit(dim, i)).collect();
    for n in 1..=up_to_arity {
        let mut witness = None;
        let cases = multisets(dim, n);
        for t in &cases {
            let total = jacobiator(l, t, &units);
            if nonzero(&total, 1.0) {
                let names: Vec<&str> = t.iter().map(|&i| sp.label(i)).collect();
                witness = Some(format!("({}): {}", names.join(", "), fmt_coeffs(sp, &total)));
                break;
            }
        }
        r.push(format!("jacobi_{n}"), cases.len() as u64, witness);
    }
    Ok(r)
}

fn jacobiator<S: Scalar>(l: &LInftyAlgebra<S>, t: &[usize], units: &[Vec<S>]) -> Vec<S> {
    let sp = &*l.space;
    let n = t.len();
    let parities: Vec<Parity> = t.iter().map(|&i| sp.parity(i)).collect();
    let mut total = vec![S::zero(); sp.dim()];
    for i in 1..=n {
        let j = n + 1 - i;
        let (Some(inner_t), Some(outer_t)) = (l.brackets.get(&i), l.brackets.get(&j)) else {
            continue;
        };
        for order in unshuffles(n, i) {
            let inner_idx: Vec<usize> = order[..i].iter().map(|&k| t[k]).collect();
            let inner = inner_t.column(&inner_idx);
            if inner.iter().all(|c| c.is_zero()) {
                continue;
            }
            let mut args: Vec<&[S]> = vec![inner];
            args.extend(order[i..].iter().map(|&k| units[t[k]].as_slice()));
            let outer = outer_t.apply(&args);
            let mut sign = reorder_sign(&order, &parities);
            if (i * (j - 1)) % 2 == 1 {
                sign = -sign;
            }
            add_scaled(&mut total, &S::signed(sign), &outer);
        }
    }
    total
}

/// Checks `β(l_k(x₁,…,x_k), x_{k+1}) = (−1)^{k(|x₁|+1)} β(x₁, l_k(x₂,…,x_{k+1}))`
/// on all basis tuples, for every stored arity.
pub fn check_invariance<S: Scalar>(l: &LInftyAlgebra<S>, form: &BilinearForm<S>) -> ValidationReport {
    let sp = &*l.space;
    let dim = sp.dim();
    let b = form.matrix();
    let bt = b.transpose();
    let mut r = ValidationReport::new();
    for (&k, t) in &l.brackets {
        // B·col and Bᵀ·col for every k-tuple
        let cols: Vec<(Vec<S>, Vec<S>)> = tuples(dim, k)
            .map(|tu| {
                let c = t.column(&tu);
                (b.mul_vec(c), bt.mul_vec(c))
            })
            .collect();
        let pow = |m: usize| dim.pow(m as u32);
        let mut witness = None;
        let mut cases = 0u64;
        'tuples: for first in 0..dim {
            let flip = (k * (sp.parity(first).bit() as usize + 1)) % 2 == 1;
            for rest in 0..pow(k) {
                // (x1, rest) as a (k+1)-tuple; split it as (x1..xk, last)
                let flat = first * pow(k) + rest;
                let (head, last) = (flat / dim, flat % dim);
                cases += 1;
                let lhs = &cols[head].1[last];
                let rhs = &cols[rest].0[first];
                let rhs = if flip { -rhs.clone() } else { rhs.clone() };
                if !(lhs.clone() - rhs.clone()).is_negligible(1.0) {
                    let tu: Vec<usize> = tuples(dim, k + 1).nth(flat).expect("in range");
                    let names: Vec<&str> = tu.iter().map(|&i| sp.label(i)).collect();
                    witness = Some(format!(
                        "({}): β(l_{k}(x₁…),x_last) = {lhs}, signed β(x₁,l_{k}(…)) = {rhs}",
                        names.join(", ")
                    ));
                    break 'tuples;
                }
            }
        }
        r.push(format!("invariance_{k}"), cases, witness);
    }
    r
}

/// `Σ_k (1/k!) l_k(x,…,x)`
pub fn linfty_curvature<S: Scalar>(l: &LInftyAlgebra<S>, x: &GradedVector<S>) -> Result<GradedVector<S>> {
    maurer_cartan::curvature(l, x)
}

/// Matrix of `y ↦ Σ_k 1/(k−1)! l_k(x,…,x,y)` from the odd to the even part.
pub fn linfty_curvature_differential<S: Scalar>(
    l: &LInftyAlgebra<S>,
    x: &GradedVector<S>,
) -> Result<crate::graded::Matrix<S>> {
    maurer_cartan::curvature_differential(l, x)
}

/// `−(l₁(a) + l₂(x,a) + (1/2!) l₃(x,x,a) + ⋯)`
pub fn linfty_gauge_field<S: Scalar>(
    l: &LInftyAlgebra<S>,
    a: &GradedVector<S>,
    x: &GradedVector<S>,
) -> Result<GradedVector<S>> {
    maurer_cartan::gauge_field_value(l, a, x)
}

/// RK4 trajectory of `x' = ξ_{a(t)}(x)`.
pub fn gauge_equivalence_flow<F: FloatScalar>(
    l: &LInftyAlgebra<F>,
    x0: &GradedVector<F>,
    a_path: &ControlPath<F>,
    steps: usize,
) -> Result<EquivalencePath<F>> {
    maurer_cartan::gauge_flow(l, x0, a_path, steps)
}

/// RK4 trajectory of `b' = Σ_{k≥2} (−1)^k/(k−2)! l_k(a, b, x, …, x)` along a
/// given `x`-path sampled on the same grid. Stage values of `x` between
/// grid points are linearly interpolated.
pub fn adjoint_equivalence_flow<F: FloatScalar>(
    l: &LInftyAlgebra<F>,
    b0: &GradedVector<F>,
    a_path: &ControlPath<F>,
    x_path: &EquivalencePath<F>,
    steps: usize,
) -> Result<EquivalencePath<F>> {
    b0.require_parity(Parity::Even, "b0")?;
    for (_, a) in a_path.segments() {
        a.require_parity(Parity::Even, "control")?;
    }
    let t_end = a_path.duration();
    if steps == 0 {
        return Err(Error::Input("step count must be positive".into()));
    }
    let h = t_end / steps as f64;
    let grid_ok = x_path.points.len() == steps + 1
        && x_path.times.iter().enumerate().all(|(n, t)| (t - n as f64 * h).abs() <= 1e-9 * t_end.max(1.0));
    if !grid_ok {
        return Err(Error::Input("x-path is not sampled on the integration grid".into()));
    }
    let controls: Vec<GradedVector<F>> =
        (0..steps).map(|n| a_path.at(step_midpoint(n, t_end, steps)).clone()).collect();
    let (times, states) = rk4(b0.coeffs(), t_end, steps, |n, t, b| {
        let s = F::from_f64(((t - n as f64 * h) / h).clamp(0.0, 1.0));
        let (x0, x1) = (x_path.points[n].coeffs(), x_path.points[n + 1].coeffs());
        let x: Vec<F> = x0.iter().zip(x1).map(|(a, b)| *a + s * (*b - *a)).collect();
        l.adjoint_at(controls[n].coeffs(), b, &x)
    })?;
    let points = states
        .into_iter()
        .map(|c| GradedVector::from_coeffs(&l.space, c))
        .collect::<Result<_>>()?;
    Ok(EquivalencePath { times, controls, points })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransportReport {
    /// `max_t ‖Φ(x(t))‖∞` along the integrated gauge path.
    pub max_drift: f64,
    pub endpoint: GradedVector<f64>,
    /// Drift threshold check plus the exact equivariance identity at random
    /// rational `(a, x)` pairs.
    pub report: ValidationReport,
}

/// Integrates the gauge flow from a Maurer–Cartan point and measures how far
/// the curvature drifts; also checks `Φ'_x(ξ_a(x)) = Σ_{k≥2} (−1)^k/(k−2)!
/// l_k(a, Φ(x), x, …, x)` exactly at random rational pairs.
pub fn check_curvature_transport(
    l: &LInftyAlgebra<Rational>,
    x0: &GradedVector<Rational>,
    a_path: &ControlPath<f64>,
    steps: usize,
    drift_tol: f64,
    sampling: Sampling,
) -> Result<TransportReport> {
    let phi = linfty_curvature(l, x0)?;
    if !phi.is_zero() {
        return Err(Error::Precondition(format!("x0 is not a Maurer–Cartan point: Φ(x0) = {}", phi.display())));
    }
    let lf = l.to_f64();
    let x0f = GradedVector::from_coeffs(&l.space, x0.coeffs().iter().map(|c| c.to_f64()).collect())?;
    let path = gauge_equivalence_flow(&lf, &x0f, a_path, steps)?;
    let max_drift = maurer_cartan::max_curvature_drift(&lf, &path);
    let mut report = ValidationReport::new();
    let drift_witness = (max_drift > drift_tol).then(|| format!("max ‖Φ(x(t))‖∞ = {max_drift:e}"));
    report
        .push("curvature_drift", path.points.len() as u64, drift_witness)
        .with_note(format!("max drift {max_drift:.3e}"));

    let sp = &*l.space;
    let (even, odd) = (sp.even_indices(), sp.odd_indices());
    let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
    let mut rand_vec = |idx: &[usize]| {
        let mut v = vec![Rational::from_i64(0); sp.dim()];
        for &i in idx {
            v[i] = Rational::from_ratio(rng.random_range(-4..=4), rng.random_range(1..=3));
        }
        v
    };
    let mut witness = None;
    for _ in 0..sampling.random_points {
        let a = rand_vec(&even);
        let x = rand_vec(&odd);
        let lhs = l.curvature_derivative(&x, &l.gauge_at(&a, &x));
        let rhs = l.adjoint_at(&a, &l.curvature_at(&x), &x);
        let diff = sub(&lhs, &rhs);
        if nonzero(&diff, 1.0) {
            witness = Some(format!(
                "a = {}, x = {}: difference {}",
                fmt_coeffs(sp, &a),
                fmt_coeffs(sp, &x),
                fmt_coeffs(sp, &diff)
            ));
            break;
        }
    }
    report.push("equivariance_identity", sampling.random_points as u64, witness);
    Ok(TransportReport { max_drift, endpoint: path.endpoint().clone(), report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::maurer_cartan::check_equivariance;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn dgla_repackaging_matches() {
        for g in [catalog::n1(), catalog::a1(), catalog::n1d(), catalog::a1_db_y1()] {
            let l = g.to_linfty();
            assert!(validate_linfty(&l, 3).unwrap().all_passed());
            let s = Sampling { random_points: 10, ..Sampling::default() };
            for x in maurer_cartan::sample_points::<Rational>(g.space(), Parity::Odd, s) {
                assert_eq!(l.curvature_at(&x), g.curvature_at(&x));
                for a in maurer_cartan::sample_points::<Rational>(g.space(), Parity::Even, Sampling { random_points: 2, ..s }) {
                    assert_eq!(l.gauge_at(&a, &x), g.gauge_at(&a, &x));
                }
            }
        }
    }

    #[test]
    fn mutated_n1_fails_jacobi() {
        let mut l = catalog::n1().to_linfty();
        let sp = l.space().clone();
        let (e, f, h) = (sp.index_of("e").unwrap(), sp.index_of("f").unwrap(), sp.index_of("h").unwrap());
        let t = l.bracket_mut(2).unwrap();
        t.perturb(&[e, f], h, &q(1, 1));
        t.perturb(&[f, e], h, &q(-1, 1));
        let r = validate_linfty(&l, 3).unwrap();
        assert!(!r.passed("jacobi_3"));
        assert!(r.passed("jacobi_2") && r.passed("bracket_antisymmetry"));
    }

    #[test]
    fn invariance_of_n1() {
        let l = catalog::n1().to_linfty();
        let r = check_invariance(&l, l.form().unwrap());
        assert!(r.all_passed(), "{r}");
        let zero = LInftyAlgebra::<Rational>::new(l.space(), vec![], None).unwrap();
        assert!(check_invariance(&zero, l.form().unwrap()).all_passed());
        assert!(validate_linfty(&zero, 0).is_err());
    }

    #[test]
    fn ho2_curvature_and_differential() {
        let l = catalog::ho2_linfty();
        let sp = l.space().clone();
        let x = GradedVector::from_labels(&sp, [("q", q(2, 1)), ("p", q(3, 1))]).unwrap();
        assert_eq!(
            linfty_curvature(&l, &x).unwrap(),
            GradedVector::from_labels(&sp, [("e*", q(12, 1))]).unwrap()
        );
        // Φ'(u,v) = (2αβ u + α² v) e*
        let m = linfty_curvature_differential(&l, &x).unwrap();
        let row = sp.even_indices().iter().position(|&i| sp.label(i) == "e*").unwrap();
        assert_eq!(m.row(row), &[q(12, 1), q(4, 1)]);
        // gauge field is the Hamiltonian vector field (−α², 2αβ)
        let e = GradedVector::from_labels(&sp, [("e", q(1, 1))]).unwrap();
        assert_eq!(
            linfty_gauge_field(&l, &e, &x).unwrap(),
            GradedVector::from_labels(&sp, [("q", q(-4, 1)), ("p", q(12, 1))]).unwrap()
        );
    }

    #[test]
    fn equivariance_on_hamiltonian_examples() {
        let s = Sampling { random_points: 30, ..Sampling::default() };
        for l in [catalog::ho1_linfty(), catalog::ho2_linfty(), catalog::sl2q_linfty(), crate::hamiltonian::build_linfty(&catalog::borel_quartic_system(), crate::hamiltonian::Normalization::Factorial).unwrap()] {
            assert!(check_equivariance(&l, s).all_passed());
        }
    }

    #[test]
    fn flows() {
        let l = catalog::ho1_linfty().to_f64();
        let sp = l.space().clone();
        let x0 = GradedVector::from_labels(&sp, [("q", 1.0)]).unwrap();
        let a = ControlPath::constant(GradedVector::from_labels(&sp, [("e", 1.0)]).unwrap(), 1.0).unwrap();
        let xp = gauge_equivalence_flow(&l, &x0, &a, 1000).unwrap();
        assert!((xp.endpoint().get("q").unwrap() - (-1.0f64).exp()).abs() < 1e-8);
        // 𝔤 abelian: b stays put
        let b0 = GradedVector::from_labels(&sp, [("e", 0.5), ("e*", -2.0)]).unwrap();
        let bp = adjoint_equivalence_flow(&l, &b0, &a, &xp, 1000).unwrap();
        assert!(bp.points.iter().all(|b| b.sub_vec(&b0).norm_inf() < 1e-14));
        assert!(adjoint_equivalence_flow(&l, &b0, &a, &xp, 999).is_err());

        // K = 2: same as the DGLA adjoint flow
        let n1 = catalog::n1().to_f64();
        let ln1 = catalog::n1().to_linfty().to_f64();
        let sp = n1.space().clone();
        let b0 = GradedVector::from_labels(&sp, [("e", 1.0)]).unwrap();
        let a = ControlPath::constant(GradedVector::from_labels(&sp, [("h", 1.0)]).unwrap(), 1.0).unwrap();
        let x0 = GradedVector::zero(&sp);
        let xp = gauge_equivalence_flow(&ln1, &x0, &a, 100).unwrap();
        let via_l = adjoint_equivalence_flow(&ln1, &b0, &a, &xp, 100).unwrap();
        let via_g = crate::dgla::adjoint_orbit_flow(&n1, &b0, &a, 100).unwrap();
        assert!(via_l.endpoint().sub_vec(via_g.endpoint()).norm_inf() < 1e-14);
    }

    #[test]
    fn transport() {
        let l = catalog::ho1_linfty();
        let sp = l.space().clone();
        let x0 = GradedVector::from_labels(&sp, [("q", q(1, 1))]).unwrap();
        let spf = sp.clone();
        let a = ControlPath::constant(GradedVector::from_labels(&spf, [("e", 1.0)]).unwrap(), 1.0).unwrap();
        let t = check_curvature_transport(&l, &x0, &a, 1000, 1e-8, Sampling::default()).unwrap();
        assert!(t.report.all_passed(), "{}", t.report);
        assert!(t.max_drift <= 1e-8);
        let zero = ControlPath::constant(GradedVector::zero(&spf), 1.0).unwrap();
        let t = check_curvature_transport(&l, &x0, &zero, 10, 1e-8, Sampling::default()).unwrap();
        assert_eq!(t.max_drift, 0.0);
        let off = GradedVector::from_labels(&sp, [("q", q(1, 1)), ("p", q(1, 1))]).unwrap();
        assert!(check_curvature_transport(&l, &off, &a, 10, 1e-8, Sampling::default()).is_err());
    }
}
