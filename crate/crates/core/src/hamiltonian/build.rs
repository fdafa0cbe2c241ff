//! The L∞-algebra `𝔤 ⊕ V ⊕ 𝔤*` of a Hamiltonian action and its quadratic
//! specialisation.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::polynomial::Polynomial;
use super::system::{validate_hamiltonian_system, HamiltonianSystem};
use crate::dgla::{validate_dgla, validate_form, BilinearForm, DglAlgebra};
use crate::error::{Error, Result};
use crate::graded::scalar::factorial;
use crate::graded::tensor::{multisets, tuples};
use crate::graded::{Component, GradedSpace, GradingKind, Matrix, Scalar, StructureTensor, Symmetry};
use crate::linfty::LInftyAlgebra;
use crate::maurer_cartan::CurvatureModel;
use crate::report::ValidationReport;

/// How the brackets on `V^k` are scaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// `l_k(y,…,y) = k!·Φ_k(y)`, so that `Σ (1/k!) l_k(x,…,x) = Φ(x)`.
    #[default]
    Factorial,
    /// `l_k = Φ̃_k` with `Φ̃_k(y,…,y) = Φ_k(y)`.
    Literal,
}

/// Symmetric multilinear `M` with `M(y,…,y) = f(y)`, from
/// `M(y₁,…,y_i) = (1/i!) Σ_{∅≠S} (−1)^{i−|S|} f(Σ_{j∈S} y_j)`.
///
/// The tensor acts on an even copy of the variables (degree 0) and takes
/// values in a one-dimensional space.
pub fn polarize<S: Scalar>(f: &Polynomial<S>, degree: usize, labels: &[String]) -> Result<StructureTensor<S>> {
    if degree == 0 {
        return Err(Error::Input("polarization needs degree at least 1".into()));
    }
    if !f.is_homogeneous(degree as u32) {
        return Err(Error::Input(format!("polynomial is not homogeneous of degree {degree}")));
    }
    if labels.len() != f.nvars() {
        return Err(Error::DimensionMismatch("one label per variable".into()));
    }
    let input = Arc::new(GradedSpace::new(GradingKind::Z, vec![Component { degree: 0, labels: labels.to_vec() }])?);
    let output = Arc::new(GradedSpace::new(GradingKind::Z, vec![Component { degree: 0, labels: vec!["value".into()] }])?);
    let mut t = StructureTensor::zeros(&input, &output, degree, 0, Symmetry::Symmetric);
    let inv = S::one() / factorial::<S>(degree);
    for tuple in multisets(f.nvars(), degree) {
        let v = polarized_entry(f, &tuple).mul_ref(&inv);
        if !v.is_zero() {
            t.set_symmetric(&tuple, &[v])?;
        }
    }
    Ok(t)
}

/// `Σ_{∅≠S} (−1)^{i−|S|} f(Σ_{j∈S} e_{tuple_j})`
fn polarized_entry<S: Scalar>(f: &Polynomial<S>, tuple: &[usize]) -> S {
    let i = tuple.len();
    let mut total = S::zero();
    for mask in 1u32..(1 << i) {
        let mut point = vec![S::zero(); f.nvars()];
        for (j, &idx) in tuple.iter().enumerate() {
            if mask & (1 << j) != 0 {
                point[idx].add_assign_ref(&S::one());
            }
        }
        let v = f.eval(&point);
        if (i - mask.count_ones() as usize) % 2 == 1 {
            total.sub_assign_ref(&v);
        } else {
            total.add_assign_ref(&v);
        }
    }
    total
}

/// Index layout of `𝔤 ⊕ V ⊕ 𝔤*` inside the built algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    pub lie: usize,
    pub vars: usize,
}

impl Layout {
    pub fn of<S: Scalar>(s: &HamiltonianSystem<S>) -> Self {
        Self { lie: s.algebra().dim(), vars: s.symplectic().dim() }
    }

    pub fn lie(&self, i: usize) -> usize {
        i
    }

    pub fn var(&self, j: usize) -> usize {
        self.lie + j
    }

    pub fn dual(&self, i: usize) -> usize {
        self.lie + self.vars + i
    }

    pub fn dim(&self) -> usize {
        2 * self.lie + self.vars
    }
}

/// Z-graded L∞-algebra on `𝔤 (deg 0) ⊕ V (deg 1) ⊕ 𝔤* (deg 2)` with
///
/// * `l₂(a, b) = [a, b]` and `l₂(a, λ) = ad*_a λ`,
/// * brackets with one `𝔤` slot given by the polarized homogeneous parts of
///   the Hamiltonian vector fields, signed so that the gauge field is the
///   vector field itself,
/// * `l_k(y₁,…,y_k) ∈ 𝔤*` the polarized degree-`k` parts of the moment map
///   (times `k!` under [`Normalization::Factorial`]),
///
/// and the form pairing `𝔤` with `𝔤*` (with a minus sign) plus `ω` on `V`.
/// The dual basis vectors are labelled `<a>*`.
pub fn build_linfty<S: Scalar>(s: &HamiltonianSystem<S>, normalization: Normalization) -> Result<LInftyAlgebra<S>> {
    let report = validate_hamiltonian_system(s);
    if let Some(f) = report.failures().next() {
        return Err(Error::Structural(format!(
            "Hamiltonian system fails {}: {}",
            f.name,
            f.witness.as_deref().unwrap_or("")
        )));
    }
    let g = s.algebra();
    let v = s.symplectic();
    let lay = Layout::of(s);
    let (n, m) = (lay.lie, lay.vars);
    let space = Arc::new(GradedSpace::new(
        GradingKind::Z,
        vec![
            Component { degree: 0, labels: g.labels().to_vec() },
            Component { degree: 1, labels: v.labels().to_vec() },
            Component { degree: 2, labels: g.labels().iter().map(|l| format!("{l}*")).collect() },
        ],
    )?);
    let top = s.max_degree().max(2) as usize;
    let mut brackets: Vec<StructureTensor<S>> =
        (1..=top).map(|k| StructureTensor::zeros(&space, &space, k, 2 - k as i64, Symmetry::Antisymmetric)).collect();
    let dim = lay.dim();

    // 𝔤 bracket and coadjoint action
    for i in 0..n {
        for j in 0..n {
            if i < j {
                let mut col = vec![S::zero(); dim];
                for k in 0..n {
                    col[lay.lie(k)] = g.constant(i, j, k).clone();
                }
                brackets[1].set_symmetric(&[lay.lie(i), lay.lie(j)], &col)?;
            }
            let mut col = vec![S::zero(); dim];
            for k in 0..n {
                col[lay.dual(k)] = -g.constant(i, k, j).clone();
            }
            brackets[1].set_symmetric(&[lay.lie(i), lay.dual(j)], &col)?;
        }
    }

    // moment brackets V^k → 𝔤*
    for k in 1..=s.max_degree() as usize {
        let scale = match normalization {
            Normalization::Factorial => factorial::<S>(k),
            Normalization::Literal => S::one(),
        };
        let parts: Vec<Option<StructureTensor<S>>> = s
            .hamiltonians()
            .iter()
            .map(|h| {
                let hk = h.homogeneous_part(k as u32);
                (!hk.is_zero()).then(|| polarize(&hk, k, v.labels())).transpose()
            })
            .collect::<Result<_>>()?;
        if parts.iter().all(Option::is_none) {
            continue;
        }
        for t in multisets(m, k) {
            let mut col = vec![S::zero(); dim];
            for (a, part) in parts.iter().enumerate() {
                if let Some(p) = part {
                    col[lay.dual(a)] = p.entry(&t, 0).mul_ref(&scale);
                }
            }
            if col.iter().any(|c| !c.is_zero()) {
                let tuple: Vec<usize> = t.iter().map(|&j| lay.var(j)).collect();
                brackets[k - 1].set_symmetric(&tuple, &col)?;
            }
        }
    }

    // action brackets l_{p+1}(a, y₁,…,y_p) = (−1)^{p+1} p!·X_a^{(p)}(y₁,…,y_p)
    for a in 0..n {
        let field = s.vector_field(a);
        let deg = field.iter().filter_map(|x| x.degree()).max();
        let Some(deg) = deg else { continue };
        for p in 0..=deg as usize {
            let sign = if p % 2 == 0 { -S::one() } else { S::one() };
            let coef = sign * factorial::<S>(p);
            let comps: Vec<Polynomial<S>> = field.iter().map(|x| x.homogeneous_part(p as u32)).collect();
            if comps.iter().all(Polynomial::is_zero) {
                continue;
            }
            if p == 0 {
                let mut col = vec![S::zero(); dim];
                for (k, c) in comps.iter().enumerate() {
                    col[lay.var(k)] = c.constant_term().mul_ref(&coef);
                }
                brackets[0].set_symmetric(&[lay.lie(a)], &col)?;
                continue;
            }
            let pols: Vec<Option<StructureTensor<S>>> = comps
                .iter()
                .map(|c| (!c.is_zero()).then(|| polarize(c, p, v.labels())).transpose())
                .collect::<Result<_>>()?;
            for t in multisets(m, p) {
                let mut col = vec![S::zero(); dim];
                for (k, pol) in pols.iter().enumerate() {
                    if let Some(pol) = pol {
                        col[lay.var(k)] = pol.entry(&t, 0).mul_ref(&coef);
                    }
                }
                if col.iter().any(|c| !c.is_zero()) {
                    let mut tuple = vec![lay.lie(a)];
                    tuple.extend(t.iter().map(|&j| lay.var(j)));
                    brackets[p].set_symmetric(&tuple, &col)?;
                }
            }
        }
    }

    let mut form = Matrix::zeros(dim, dim);
    for i in 0..n {
        form.set(lay.lie(i), lay.dual(i), -S::one());
        form.set(lay.dual(i), lay.lie(i), -S::one());
    }
    for i in 0..m {
        for j in 0..m {
            form.set(lay.var(i), lay.var(j), v.omega().get(i, j).clone());
        }
    }
    let form = BilinearForm::new(&space, form)?;
    let brackets = brackets.into_iter().filter(|t| !t.is_zero()).collect();
    LInftyAlgebra::new(&space, brackets, Some(form))
}

/// Compares the curvature of `l` with the moment map of `s`:
///
/// * `curvature_polynomial`: every even component of `Σ (1/k!) l_k(x,…,x)`,
///   expanded symbolically in the coordinates of `x ∈ V`, equals the
///   corresponding `H_a` (zero outside `𝔤*`);
/// * `grid_values`: on the grid with coordinates in `{−2,…,2}/{1,2}` the
///   exact curvature equals `Σ H_a(x) a*`, and `Φ(x) = base` holds exactly
///   when `H(x) = base`.
pub fn check_mc_equals_fiber<S: Scalar>(
    l: &LInftyAlgebra<S>,
    s: &HamiltonianSystem<S>,
    base: &[S],
) -> Result<ValidationReport> {
    let lay = Layout::of(s);
    if l.space().dim() != lay.dim() {
        return Err(Error::DimensionMismatch("algebra was not built from this system".into()));
    }
    if base.len() != lay.lie {
        return Err(Error::DimensionMismatch(format!("base needs {} coordinates in 𝔤*", lay.lie)));
    }
    let (n, m, dim) = (lay.lie, lay.vars, lay.dim());
    let mut r = ValidationReport::new();

    let mut curv: Vec<Polynomial<S>> = vec![Polynomial::zero(m); dim];
    for t in l.brackets() {
        let k = t.arity();
        let inv = S::one() / factorial::<S>(k);
        for tu in tuples(m, k) {
            let args: Vec<usize> = tu.iter().map(|&j| lay.var(j)).collect();
            let col = t.column(&args);
            let mut e = vec![0u32; m];
            for &j in &tu {
                e[j] += 1;
            }
            for (o, c) in col.iter().enumerate() {
                if !c.is_zero() {
                    curv[o].add_term(e.clone(), c.mul_ref(&inv));
                }
            }
        }
    }
    let mut witness = None;
    for (o, p) in curv.iter().enumerate() {
        let expected = if o >= lay.dual(0) && o < lay.dual(0) + n {
            s.hamiltonian(o - lay.dual(0)).clone()
        } else {
            Polynomial::zero(m)
        };
        if *p != expected {
            witness = Some(format!(
                "component {}: curvature {} but moment map {}",
                l.space().label(o),
                p.display(s.symplectic().labels()),
                expected.display(s.symplectic().labels())
            ));
            break;
        }
    }
    r.push("curvature_polynomial", dim as u64, witness);

    let values: Vec<S> = (-2..=2)
        .flat_map(|p| [S::from_ratio(p, 1), S::from_ratio(p, 2)])
        .fold(Vec::new(), |mut acc, v| {
            if !acc.contains(&v) {
                acc.push(v);
            }
            acc
        });
    let full = (values.len() as u64).checked_pow(m as u32).filter(|&c| c <= 4096);
    let points: Vec<Vec<S>> = match full {
        Some(count) => (0..count)
            .map(|mut idx| {
                (0..m)
                    .map(|_| {
                        let v = values[(idx % values.len() as u64) as usize].clone();
                        idx /= values.len() as u64;
                        v
                    })
                    .collect()
            })
            .collect(),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(0x6d63_5eed);
            (0..4096).map(|_| (0..m).map(|_| values[rng.random_range(0..values.len())].clone()).collect()).collect()
        }
    };
    let mut witness = None;
    for y in &points {
        let mut x = vec![S::zero(); dim];
        for (j, c) in y.iter().enumerate() {
            x[lay.var(j)] = c.clone();
        }
        let phi = l.curvature_at(&x);
        let h = s.moment(y);
        let mut expected = vec![S::zero(); dim];
        for (a, c) in h.iter().enumerate() {
            expected[lay.dual(a)] = c.clone();
        }
        let on_fiber_l = (0..n).all(|a| phi[lay.dual(a)] == base[a]) && phi.iter().enumerate().all(|(i, c)| c.is_zero() || (i >= lay.dual(0)));
        let on_fiber_h = h == base;
        if phi != expected || on_fiber_l != on_fiber_h {
            let coords: Vec<String> = y.iter().map(|c| c.to_string()).collect();
            witness = Some(format!("x = ({}): curvature and moment map differ", coords.join(", ")));
            break;
        }
    }
    r.push("grid_values", points.len() as u64, witness);
    Ok(r)
}

/// Lie superalgebra obtained from a system with quadratic Hamiltonians, with
/// its checks and the representation `ν: 𝔤 ⊕ 𝔤* → 𝔰𝔭(V)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticSpecialization<S> {
    pub algebra: DglAlgebra<S>,
    /// `ν(u)` for each even basis vector `u`, as a matrix acting on `V`.
    pub nu: Vec<(String, Matrix<S>)>,
    pub report: ValidationReport,
}

/// For quadratic Hamiltonians all brackets beyond arity 2 vanish and the
/// L∞-structure is a Lie superalgebra on `𝔤 ⊕ V ⊕ 𝔤*` (`V` odd). Returns it
/// together with super-Jacobi/form checks and the checks that `ν`, sending
/// `a` to `[a, -]|_V` and `𝔤*` to zero, is a homomorphism into `𝔰𝔭(V)`.
pub fn quadratic_specialization<S: Scalar>(s: &HamiltonianSystem<S>) -> Result<QuadraticSpecialization<S>> {
    if let Some((a, h)) = s.hamiltonians().iter().enumerate().find(|(_, h)| !h.is_homogeneous(2)) {
        return Err(Error::Precondition(format!(
            "H_{} = {} is not quadratic",
            s.algebra().labels()[a],
            h.display(s.symplectic().labels())
        )));
    }
    let l = build_linfty(s, Normalization::Factorial)?;
    let z = l.to_dgla()?;
    let sp = Arc::new(z.space().to_z2());
    let perm = z.space().z2_permutation();
    let form = z
        .form()
        .map(|f| {
            let mut m = Matrix::zeros(sp.dim(), sp.dim());
            for i in 0..sp.dim() {
                for j in 0..sp.dim() {
                    m.set(perm[i], perm[j], f.matrix().get(i, j).clone());
                }
            }
            BilinearForm::new(&sp, m)
        })
        .transpose()?;
    let algebra = DglAlgebra::new(
        &sp,
        z.differential().permuted(&sp, 1, &perm)?,
        z.bracket().permuted(&sp, 0, &perm)?,
        form,
    )?;
    let mut report = validate_dgla(&algebra)?;
    report.extend(validate_form(&algebra)?);

    let lay = Layout::of(s);
    let m = lay.vars;
    let even = sp.even_indices();
    let var = |j: usize| perm[lay.var(j)];
    let nu_of = |u: usize| -> Matrix<S> {
        Matrix::from_fn(m, m, |k, j| algebra.bracket().entry(&[u, var(j)], var(k)).clone())
    };
    let nu: Vec<(String, Matrix<S>)> = even.iter().map(|&u| (sp.label(u).to_string(), nu_of(u))).collect();
    let dual_zero = even
        .iter()
        .zip(&nu)
        .filter(|(&u, _)| u >= perm[lay.dual(0)])
        .find(|(_, (_, mat))| !mat.is_zero())
        .map(|(_, (label, _))| format!("ν({label}) ≠ 0"));
    report.push("nu_vanishes_on_dual", lay.lie as u64, dual_zero);

    let omega = s.symplectic().omega();
    let sympl = nu.iter().find_map(|(label, mat)| {
        let defect = mat.transpose().mul(omega).ok()?.add(&omega.mul(mat).ok()?).ok()?;
        (!defect.is_zero()).then(|| format!("ν({label}) does not preserve ω"))
    });
    report.push("nu_symplectic", nu.len() as u64, sympl);

    let mut witness = None;
    'pairs: for (ui, &u) in even.iter().enumerate() {
        for (wi, &w) in even.iter().enumerate() {
            let uw = algebra.br(&crate::dgla::unit(sp.dim(), u), &crate::dgla::unit(sp.dim(), w));
            let mut lhs = Matrix::zeros(m, m);
            for (ci, &c) in even.iter().enumerate() {
                if !uw[c].is_zero() {
                    lhs = lhs.add(&nu[ci].1.scale(&uw[c]))?;
                }
            }
            let (a, b) = (&nu[ui].1, &nu[wi].1);
            let rhs = a.mul(b)?.sub(&b.mul(a)?)?;
            if let Some((i, j)) = lhs.first_difference(&rhs) {
                witness = Some(format!(
                    "ν([{0},{1}]) ≠ [ν({0}),ν({1})] at entry ({i},{j})",
                    sp.label(u),
                    sp.label(w)
                ));
                break 'pairs;
            }
        }
    }
    report.push("nu_homomorphism", (even.len() * even.len()) as u64, witness);
    Ok(QuadraticSpecialization { algebra, nu, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::linfty::{check_invariance, validate_linfty};
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn names() -> Vec<String> {
        vec!["q".into(), "p".into()]
    }

    #[test]
    fn polarization_examples() {
        let x = Polynomial::<Rational>::var(2, 0);
        let y = Polynomial::<Rational>::var(2, 1);
        let m = polarize(&x.mul(&y), 2, &names()).unwrap();
        assert_eq!(*m.entry(&[0, 1], 0), q(1, 2));
        assert_eq!(*m.entry(&[1, 0], 0), q(1, 2));
        let m = polarize(&x.mul(&x), 2, &names()).unwrap();
        assert_eq!((m.entry(&[0, 0], 0).clone(), m.entry(&[0, 1], 0).clone(), m.entry(&[1, 1], 0).clone()), (q(1, 1), q(0, 1), q(0, 1)));
        let m = polarize(&x.mul(&x).mul(&y), 3, &names()).unwrap();
        assert_eq!(*m.entry(&[0, 0, 1], 0), q(1, 3));
        assert_eq!(*m.entry(&[1, 0, 0], 0), q(1, 3));
        assert!(polarize(&x.add(&x.mul(&y)), 2, &names()).is_err());
    }

    #[test]
    fn ho1_brackets() {
        let l = build_linfty(&catalog::ho1_system(), Normalization::Factorial).unwrap();
        let sp = l.space().clone();
        let i = |s: &str| sp.index_of(s).unwrap();
        let l2 = l.bracket(2).unwrap();
        assert_eq!(*l2.entry(&[i("e"), i("q")], i("q")), q(-1, 1));
        assert_eq!(*l2.entry(&[i("e"), i("p")], i("p")), q(1, 1));
        assert_eq!(*l2.entry(&[i("q"), i("p")], i("e*")), q(1, 1));
        assert_eq!(l.max_arity(), 2);
        let form = l.form().unwrap();
        assert_eq!(*form.matrix().get(i("q"), i("p")), q(1, 1));
    }

    #[test]
    fn ho2_and_literal_normalization() {
        let s = catalog::ho2_system();
        let l = build_linfty(&s, Normalization::Factorial).unwrap();
        let sp = l.space().clone();
        let i = |s: &str| sp.index_of(s).unwrap();
        assert_eq!(*l.bracket(3).unwrap().entry(&[i("q"), i("q"), i("p")], i("e*")), q(2, 1));
        assert!(l.bracket(2).is_none());
        let lit = build_linfty(&s, Normalization::Literal).unwrap();
        assert_eq!(*lit.bracket(3).unwrap().entry(&[i("q"), i("q"), i("p")], i("e*")), q(1, 3));
        // the literal reading gives Φ(x)/3! instead of Φ(x)
        let r = check_mc_equals_fiber(&lit, &s, &[q(0, 1)]).unwrap();
        assert!(!r.passed("curvature_polynomial"));
    }

    #[test]
    fn built_algebras_are_linfty_with_invariant_form() {
        for s in [catalog::ho1_system(), catalog::ho2_system(), catalog::sl2q_system(), catalog::borel_quartic_system(), catalog::zero_system()] {
            let l = build_linfty(&s, Normalization::Factorial).unwrap();
            let up_to = (s.max_degree() as usize + 2).max(3);
            let r = validate_linfty(&l, up_to).unwrap();
            assert!(r.all_passed(), "{r}");
            assert!(check_invariance(&l, l.form().unwrap()).all_passed());
            let base = vec![q(0, 1); s.algebra().dim()];
            assert!(check_mc_equals_fiber(&l, &s, &base).unwrap().all_passed());
        }
    }

    #[test]
    fn linear_terms_give_l1_on_lie_part() {
        // translation action: H_e = q, 𝔤 abelian
        let mut s = catalog::ho1_system();
        s.set_hamiltonian(0, Polynomial::var(2, 0)).unwrap();
        let l = build_linfty(&s, Normalization::Factorial).unwrap();
        let sp = l.space().clone();
        let i = |s: &str| sp.index_of(s).unwrap();
        let l1 = l.bracket(1).unwrap();
        // X_e = π∇q = (0, 1); l₁(e) = −X_e
        assert_eq!(*l1.entry(&[i("e")], i("p")), q(-1, 1));
        assert_eq!(*l1.entry(&[i("q")], i("e*")), q(1, 1));
        assert!(validate_linfty(&l, 3).unwrap().all_passed());
        assert!(check_invariance(&l, l.form().unwrap()).all_passed());
    }

    #[test]
    fn sl2_sample_point() {
        let s = catalog::sl2q_system();
        let l = build_linfty(&s, Normalization::Factorial).unwrap();
        let sp = l.space().clone();
        let mut x = vec![q(0, 1); sp.dim()];
        x[sp.index_of("q").unwrap()] = q(1, 1);
        let phi = l.curvature_at(&x);
        assert_eq!(phi[sp.index_of("e*").unwrap()], q(1, 2));
        assert_eq!(phi[sp.index_of("f*").unwrap()], q(0, 1));
        assert_eq!(phi[sp.index_of("h*").unwrap()], q(0, 1));
    }

    #[test]
    fn quadratic_cases() {
        let spec = quadratic_specialization(&catalog::sl2q_system()).unwrap();
        assert!(spec.report.all_passed(), "{}", spec.report);
        assert_eq!(spec.algebra.space().kind(), GradingKind::Z2);
        let ho1 = quadratic_specialization(&catalog::ho1_system()).unwrap();
        assert!(ho1.report.all_passed());
        assert_eq!(ho1.algebra.space().even_indices().len(), 2);
        let zero = quadratic_specialization(&catalog::zero_system()).unwrap();
        assert!(zero.report.all_passed());
        assert!(matches!(quadratic_specialization(&catalog::ho2_system()), Err(Error::Precondition(_))));
    }

    #[test]
    fn sl2_specialization_matches_n1_odd_bracket() {
        // N1's odd-odd bracket is −2 times the specialization's V×V bracket
        // carried from 𝔤* to 𝔤 through the invariant form of 𝔰𝔩₂.
        let spec = quadratic_specialization(&catalog::sl2q_system()).unwrap();
        let n1 = catalog::n1();
        let (sa, sn) = (spec.algebra.space().clone(), n1.space().clone());
        let lie = ["e", "f", "h"];
        // B restricted to 𝔰𝔩₂ in N1
        let b = Matrix::from_fn(3, 3, |i, j| {
            n1.form().unwrap().matrix().get(sn.index_of(lie[i]).unwrap(), sn.index_of(lie[j]).unwrap()).clone()
        });
        let binv = b.inverse().unwrap();
        for (y1, z1) in [("q", "q"), ("q", "p"), ("p", "p")] {
            let dual: Vec<Rational> = lie
                .iter()
                .map(|a| spec.algebra.bracket().entry(&[sa.index_of(y1).unwrap(), sa.index_of(z1).unwrap()], sa.index_of(&format!("{a}*")).unwrap()).clone())
                .collect();
            let transported = binv.mul_vec(&dual);
            for (k, a) in lie.iter().enumerate() {
                let n1_val = n1.bracket().entry(&[sn.index_of(y1).unwrap(), sn.index_of(z1).unwrap()], sn.index_of(a).unwrap()).clone();
                assert_eq!(n1_val, transported[k].clone() * q(-2, 1), "[{y1},{z1}] component {a}");
            }
        }
        // the even-odd brackets agree literally
        for a in lie {
            for y in ["q", "p"] {
                for z in ["q", "p"] {
                    let s_val = spec.algebra.bracket().entry(&[sa.index_of(a).unwrap(), sa.index_of(y).unwrap()], sa.index_of(z).unwrap()).clone();
                    let n_val = n1.bracket().entry(&[sn.index_of(a).unwrap(), sn.index_of(y).unwrap()], sn.index_of(z).unwrap()).clone();
                    assert_eq!(s_val, n_val, "[{a},{y}] component {z}");
                }
            }
        }
    }
}
