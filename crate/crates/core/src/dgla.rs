//! Differential graded Lie (super)algebras with even bilinear forms.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::flow::{rk4, step_midpoint, ControlPath, EquivalencePath};
use crate::graded::tensor::tuples;
use crate::graded::{
    ChainComplex, FloatScalar, GradedSpace, GradedVector, GradingKind, Matrix, Parity, Scalar, StructureTensor,
    Symmetry,
};
use crate::linfty::LInftyAlgebra;
use crate::report::ValidationReport;

/// Even bilinear form given by its Gram matrix on the full basis.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearForm<S> {
    space: Arc<GradedSpace>,
    matrix: Matrix<S>,
}

impl<S: Scalar> BilinearForm<S> {
    pub fn new(space: &Arc<GradedSpace>, matrix: Matrix<S>) -> Result<Self> {
        if matrix.rows() != space.dim() || matrix.cols() != space.dim() {
            return Err(Error::DimensionMismatch(format!(
                "form is {}x{} on a space of dimension {}",
                matrix.rows(),
                matrix.cols(),
                space.dim()
            )));
        }
        Ok(Self { space: space.clone(), matrix })
    }

    pub fn zero(space: &Arc<GradedSpace>) -> Self {
        Self { space: space.clone(), matrix: Matrix::zeros(space.dim(), space.dim()) }
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn eval(&self, x: &[S], y: &[S]) -> S {
        let my = self.matrix.mul_vec(y);
        let mut acc = S::zero();
        for (a, b) in x.iter().zip(&my) {
            if !a.is_zero() && !b.is_zero() {
                acc.add_product(a, b);
            }
        }
        acc
    }

    /// Gram matrix restricted to a block of basis indices.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> Matrix<S> {
        self.matrix.select(rows, cols)
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> BilinearForm<T> {
        BilinearForm { space: self.space.clone(), matrix: self.matrix.map_scalars(f) }
    }
}

/// Differential graded Lie algebra: odd differential, even graded
/// antisymmetric bracket, optional even form.
#[derive(Debug, Clone, PartialEq)]
pub struct DglAlgebra<S> {
    space: Arc<GradedSpace>,
    d: StructureTensor<S>,
    bracket: StructureTensor<S>,
    form: Option<BilinearForm<S>>,
}

impl<S: Scalar> DglAlgebra<S> {
    /// Checks shapes only; the axioms are checked by [`validate_dgla`].
    pub fn new(
        space: &Arc<GradedSpace>,
        d: StructureTensor<S>,
        bracket: StructureTensor<S>,
        form: Option<BilinearForm<S>>,
    ) -> Result<Self> {
        let same = |t: &StructureTensor<S>| **t.input() == **space && **t.output() == **space;
        if d.arity() != 1 || !same(&d) {
            return Err(Error::DimensionMismatch("differential must be an endomorphism of the space".into()));
        }
        if bracket.arity() != 2 || !same(&bracket) {
            return Err(Error::DimensionMismatch("bracket must be a binary operation on the space".into()));
        }
        let d_ok = match space.kind() {
            GradingKind::Z => d.shift() == 1,
            GradingKind::Z2 => d.parity() == Parity::Odd,
        };
        if !d_ok {
            return Err(Error::Input("differential must have degree +1 (odd)".into()));
        }
        if bracket.shift() != 0 {
            return Err(Error::Input("bracket must have degree 0".into()));
        }
        if bracket.symmetry() != Symmetry::Antisymmetric {
            return Err(Error::Input("bracket must be declared graded-antisymmetric".into()));
        }
        if let Some(f) = &form {
            if **f.space() != **space {
                return Err(Error::DimensionMismatch("form lives on a different space".into()));
            }
        }
        Ok(Self { space: space.clone(), d, bracket, form })
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn differential(&self) -> &StructureTensor<S> {
        &self.d
    }

    pub fn bracket(&self) -> &StructureTensor<S> {
        &self.bracket
    }

    pub fn form(&self) -> Option<&BilinearForm<S>> {
        self.form.as_ref()
    }

    pub fn with_form(mut self, form: Option<BilinearForm<S>>) -> Self {
        self.form = form;
        self
    }

    pub fn d(&self, x: &[S]) -> Vec<S> {
        self.d.apply(&[x])
    }

    pub fn br(&self, x: &[S], y: &[S]) -> Vec<S> {
        self.bracket.apply(&[x, y])
    }

    pub fn apply_d(&self, x: &GradedVector<S>) -> Result<GradedVector<S>> {
        self.d.apply_vectors(&[x])
    }

    pub fn apply_bracket(&self, x: &GradedVector<S>, y: &GradedVector<S>) -> Result<GradedVector<S>> {
        self.bracket.apply_vectors(&[x, y])
    }

    /// Mutable access for building mutants in tests and tools; the result is
    /// not re-validated.
    pub fn bracket_mut(&mut self) -> &mut StructureTensor<S> {
        &mut self.bracket
    }

    pub fn differential_mut(&mut self) -> &mut StructureTensor<S> {
        &mut self.d
    }

    pub fn form_mut(&mut self) -> Option<&mut BilinearForm<S>> {
        self.form.as_mut()
    }

    pub fn cast<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> DglAlgebra<T> {
        DglAlgebra {
            space: self.space.clone(),
            d: self.d.map_scalars(f),
            bracket: self.bracket.map_scalars(f),
            form: self.form.as_ref().map(|b| b.map_scalars(f)),
        }
    }

    pub fn to_f64(&self) -> DglAlgebra<f64> {
        self.cast(|s| s.to_f64())
    }

    /// Same algebra seen as an L∞-algebra with `l₁ = d`, `l₂ = [-,-]`.
    pub fn to_linfty(&self) -> LInftyAlgebra<S> {
        let shift = |k: i64| 2 - k;
        let l1 = self.d.rebase(&self.space, &self.space, shift(1)).expect("same dimensions");
        let l2 = self.bracket.clone();
        LInftyAlgebra::new(&self.space, vec![l1, l2], self.form.clone()).expect("a DGLA is an L∞-algebra")
    }
}

pub(crate) fn fmt_coeffs<S: Scalar>(space: &GradedSpace, v: &[S]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| format!("{}*{}", c, space.label(i)))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub(crate) fn nonzero<S: Scalar>(v: &[S], scale: f64) -> bool {
    v.iter().any(|c| !c.is_negligible(scale))
}

pub(crate) fn sub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub(crate) fn add_scaled<S: Scalar>(acc: &mut [S], s: &S, v: &[S]) {
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            a.add_product(s, b);
        }
    }
}

pub(crate) fn unit<S: Scalar>(n: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); n];
    v[i] = S::one();
    v
}

fn sign_of<S: Scalar>(odd: bool) -> S {
    if odd {
        -S::one()
    } else {
        S::one()
    }
}

/// Checks shape, antisymmetry, `d² = 0`, the Leibniz rule and the Jacobi
/// identity on all basis tuples.
pub fn validate_dgla<S: Scalar>(g: &DglAlgebra<S>) -> Result<ValidationReport> {
    let sp = &*g.space;
    let n = sp.dim();
    let mut r = ValidationReport::new();

    let degree = g.d.degree_violation().map(|w| format!("d: {w}")).or_else(|| {
        g.bracket.degree_violation().map(|w| format!("bracket: {w}"))
    });
    r.push("degrees", (n + n * n) as u64, degree);
    r.push("antisymmetry", (n * n) as u64, g.bracket.symmetry_violation());

    let mut witness = None;
    for i in 0..n {
        let e = unit::<S>(n, i);
        let dd = g.d(&g.d(&e));
        if nonzero(&dd, 1.0) {
            witness = Some(format!("d(d({})) = {}", sp.label(i), fmt_coeffs(sp, &dd)));
            break;
        }
    }
    r.push("d_squared", n as u64, witness);

    let mut witness = None;
    'leibniz: for i in 0..n {
        for j in 0..n {
            let (x, y) = (unit::<S>(n, i), unit::<S>(n, j));
            let lhs = g.d(&g.br(&x, &y));
            let mut rhs = g.br(&g.d(&x), &y);
            let t = g.br(&x, &g.d(&y));
            add_scaled(&mut rhs, &sign_of::<S>(sp.parity(i).is_odd()), &t);
            let diff = sub(&lhs, &rhs);
            if nonzero(&diff, 1.0) {
                witness = Some(format!(
                    "({}, {}): d[x,y] - [dx,y] - (-1)^|x|[x,dy] = {}",
                    sp.label(i),
                    sp.label(j),
                    fmt_coeffs(sp, &diff)
                ));
                break 'leibniz;
            }
        }
    }
    r.push("leibniz", (n * n) as u64, witness);

    let mut witness = None;
    'jacobi: for t in tuples(n, 3) {
        let (i, j, k) = (t[0], t[1], t[2]);
        let (x, y, z) = (unit::<S>(n, i), unit::<S>(n, j), unit::<S>(n, k));
        let lhs = g.br(&x, &g.br(&y, &z));
        let mut rhs = g.br(&g.br(&x, &y), &z);
        let s = sign_of::<S>(sp.parity(i).is_odd() && sp.parity(j).is_odd());
        add_scaled(&mut rhs, &s, &g.br(&y, &g.br(&x, &z)));
        let diff = sub(&lhs, &rhs);
        if nonzero(&diff, 1.0) {
            witness = Some(format!(
                "({}, {}, {}): [x,[y,z]] - [[x,y],z] - ±[y,[x,z]] = {}",
                sp.label(i),
                sp.label(j),
                sp.label(k),
                fmt_coeffs(sp, &diff)
            ));
            break 'jacobi;
        }
    }
    r.push("jacobi", (n * n * n) as u64, witness);
    Ok(r)
}

/// Checks block orthogonality, the symmetry type of each block, d-skewness
/// `β(dx,y) + (-1)^{|x|} β(x,dy) = 0` and invariance `β([x,y],z) = β(x,[y,z])`.
pub fn validate_form<S: Scalar>(g: &DglAlgebra<S>) -> Result<ValidationReport> {
    let form = g.form.as_ref().ok_or_else(|| Error::Precondition("algebra has no bilinear form".into()))?;
    let sp = &*g.space;
    let n = sp.dim();
    let b = form.matrix();
    let mut r = ValidationReport::new();

    let mut orth = None;
    let mut even_sym = None;
    let mut odd_skew = None;
    for i in 0..n {
        for j in 0..n {
            let (pi, pj) = (sp.parity(i), sp.parity(j));
            let v = b.get(i, j);
            let name = || format!("({}, {})", sp.label(i), sp.label(j));
            if pi != pj {
                if orth.is_none() && !v.is_zero() {
                    orth = Some(format!("β{} = {} across parities", name(), v));
                }
            } else if pi == Parity::Even {
                if even_sym.is_none() && *v != *b.get(j, i) {
                    even_sym = Some(format!("β{} ≠ β({}, {})", name(), sp.label(j), sp.label(i)));
                }
            } else if odd_skew.is_none() && *v != -b.get(j, i).clone() {
                odd_skew = Some(format!("β{} = {} but β({}, {}) = {}", name(), v, sp.label(j), sp.label(i), b.get(j, i)));
            }
        }
    }
    r.push("block_orthogonality", (n * n) as u64, orth);
    r.push("even_block_symmetric", (n * n) as u64, even_sym);
    r.push("odd_block_antisymmetric", (n * n) as u64, odd_skew);

    let mut witness = None;
    'dskew: for i in 0..n {
        for j in 0..n {
            let (x, y) = (unit::<S>(n, i), unit::<S>(n, j));
            let mut v = form.eval(&g.d(&x), &y);
            let t = form.eval(&x, &g.d(&y));
            v.add_product(&sign_of::<S>(sp.parity(i).is_odd()), &t);
            if !v.is_negligible(1.0) {
                witness = Some(format!("({}, {}): β(dx,y) + (-1)^|x| β(x,dy) = {}", sp.label(i), sp.label(j), v));
                break 'dskew;
            }
        }
    }
    r.push("d_skew", (n * n) as u64, witness);

    let mut witness = None;
    for t in tuples(n, 3) {
        let (x, y, z) = (unit::<S>(n, t[0]), unit::<S>(n, t[1]), unit::<S>(n, t[2]));
        let lhs = form.eval(&g.br(&x, &y), &z);
        let rhs = form.eval(&x, &g.br(&y, &z));
        if !(lhs.clone() - rhs.clone()).is_negligible(1.0) {
            witness = Some(format!(
                "({}, {}, {}): β([x,y],z) = {lhs}, β(x,[y,z]) = {rhs}",
                sp.label(t[0]),
                sp.label(t[1]),
                sp.label(t[2])
            ));
            break;
        }
    }
    r.push("invariance", (n * n * n) as u64, witness);
    Ok(r)
}

/// The complex `(E, d)` collapsed to its parity grading, its dual and the
/// map `κ: x ↦ β(x, -)`.
#[derive(Debug, Clone)]
pub struct DualComplexPair<S> {
    /// Basis indices of the even and odd parts.
    pub blocks: [Vec<usize>; 2],
    pub complex: ChainComplex<S>,
    pub dual: ChainComplex<S>,
    /// `kappa[p]: E_p → (E_p)^*`.
    pub kappa: [Matrix<S>; 2],
}

impl<S: Scalar> DualComplexPair<S> {
    pub fn new(g: &DglAlgebra<S>) -> Result<Self> {
        let form = g.form.as_ref().ok_or_else(|| Error::Precondition("algebra has no bilinear form".into()))?;
        let sp = &*g.space;
        let blocks = [sp.even_indices(), sp.odd_indices()];
        let n = sp.dim();
        // D[p]: E_p → E_{p+1}
        let dmat = |p: usize| {
            let (src, dst) = (&blocks[p], &blocks[1 - p]);
            let cols: Vec<Vec<S>> = src
                .iter()
                .map(|&i| {
                    let img = g.d(&unit::<S>(n, i));
                    dst.iter().map(|&k| img[k].clone()).collect()
                })
                .collect();
            Matrix::from_columns(dst.len(), &cols)
        };
        let d = [dmat(0), dmat(1)];
        let dims = vec![blocks[0].len(), blocks[1].len()];
        let complex = ChainComplex::periodic(dims.clone(), d.to_vec())?;
        // d*_p = -(-1)^p D[p+1]^T : E_p^* → E_{p+1}^*
        let dual_maps = vec![d[1].transpose().scale(&-S::one()), d[0].transpose()];
        let dual = ChainComplex::periodic(dims, dual_maps)?;
        let kappa = [
            form.block(&blocks[0], &blocks[0]).transpose(),
            form.block(&blocks[1], &blocks[1]).transpose(),
        ];
        Ok(Self { blocks, complex, dual, kappa })
    }

    /// First entry at which `κ_{p+1} ∘ D_p = d*_p ∘ κ_p` fails, as
    /// `(p, row, col)`.
    pub fn chain_map_defect(&self) -> Result<Option<(usize, usize, usize)>> {
        for p in 0..2 {
            let lhs = self.kappa[1 - p].mul(&self.complex.outgoing(p as i64)?)?;
            let rhs = self.dual.outgoing(p as i64)?.mul(&self.kappa[p])?;
            if let Some((i, j)) = lhs.first_difference(&rhs) {
                return Ok(Some((p, i, j)));
            }
        }
        Ok(None)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Nondegeneracy<S> {
    Nondegenerate,
    /// A cohomology class (given by a representative cocycle) in the kernel
    /// of `H(κ)`.
    Degenerate { parity: Parity, witness: GradedVector<S> },
}

impl<S> Nondegeneracy<S> {
    pub fn is_nondegenerate(&self) -> bool {
        matches!(self, Nondegeneracy::Nondegenerate)
    }
}

/// Decides whether `κ` induces an isomorphism on cohomology.
pub fn check_nondegenerate_on_cohomology<S: Scalar>(g: &DglAlgebra<S>) -> Result<Nondegeneracy<S>> {
    let pair = DualComplexPair::new(g)?;
    if let Some((p, i, j)) = pair.chain_map_defect()? {
        return Err(Error::Precondition(format!(
            "κ is not a chain map (parity {p}, entry ({i}, {j})); the form is not d-skew"
        )));
    }
    for p in 0..2usize {
        let h = pair.complex.cohomology(p as i64)?;
        let hd = pair.dual.cohomology(p as i64)?;
        let cols: Vec<Vec<S>> = h
            .representatives
            .iter()
            .map(|z| {
                let img = pair.kappa[p].mul_vec(z);
                hd.class_of(&img).ok_or_else(|| Error::Structural("κ maps a cocycle off the cocycles".into()))
            })
            .collect::<Result<_>>()?;
        let induced = Matrix::from_columns(hd.dimension, &cols);
        let rk = induced.rank_kernel();
        if rk.rank < h.dimension || rk.rank < hd.dimension {
            let parity = if p == 0 { Parity::Even } else { Parity::Odd };
            let mut coeffs = vec![S::zero(); g.space.dim()];
            if let Some(k) = rk.kernel.first() {
                for (c, rep) in k.iter().zip(&h.representatives) {
                    for (slot, v) in pair.blocks[p].iter().zip(rep) {
                        coeffs[*slot].add_product(c, v);
                    }
                }
            }
            return Ok(Nondegeneracy::Degenerate { parity, witness: GradedVector::from_coeffs(&g.space, coeffs)? });
        }
    }
    Ok(Nondegeneracy::Nondegenerate)
}

/// Integrates `b' = [a(t), b]` with RK4. The control is frozen on each step
/// at its value at the step midpoint.
pub fn adjoint_orbit_flow<F: FloatScalar>(
    g: &DglAlgebra<F>,
    b0: &GradedVector<F>,
    a_path: &ControlPath<F>,
    steps: usize,
) -> Result<EquivalencePath<F>> {
    b0.require_parity(Parity::Even, "b0")?;
    for (_, a) in a_path.segments() {
        a.require_parity(Parity::Even, "control")?;
    }
    let t_end = a_path.duration();
    let controls: Vec<GradedVector<F>> =
        (0..steps).map(|n| a_path.at(step_midpoint(n, t_end, steps)).clone()).collect();
    let (times, states) = rk4(b0.coeffs(), t_end, steps, |n, _, b| g.br(controls[n].coeffs(), b))?;
    let points = states
        .into_iter()
        .map(|c| GradedVector::from_coeffs(&g.space, c))
        .collect::<Result<_>>()?;
    Ok(EquivalencePath { times, controls, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::Rational;
    use num_traits::Zero;

    #[test]
    fn shipped_dglas_validate() {
        for (name, g) in [
            ("a1", catalog::a1()),
            ("n1", catalog::n1()),
            ("a1 dy1=b", catalog::a1_dy1_b()),
            ("a1 db=y1", catalog::a1_db_y1()),
            ("acyclic", catalog::acyclic_pair()),
        ] {
            let r = validate_dgla(&g).unwrap();
            assert!(r.all_passed(), "{name}: {r}");
            let f = validate_form(&g).unwrap();
            assert!(f.all_passed(), "{name}: {f}");
        }
        assert!(validate_dgla(&catalog::n1d()).unwrap().all_passed());
    }

    #[test]
    fn injected_diagonal_on_odd_block_fails() {
        let g = catalog::a1();
        let sp = g.space().clone();
        let mut m = g.form().unwrap().matrix().clone();
        let y1 = sp.index_of("y1").unwrap();
        m.set(y1, y1, Rational::from_i64(1));
        let g = g.with_form(Some(BilinearForm::new(&sp, m).unwrap()));
        let r = validate_form(&g).unwrap();
        assert!(!r.passed("odd_block_antisymmetric"));
        assert!(r.passed("block_orthogonality"));
    }

    #[test]
    fn zero_form_passes_compatibility() {
        let g = catalog::n1();
        let sp = g.space().clone();
        let g = g.with_form(Some(BilinearForm::zero(&sp)));
        let r = validate_form(&g).unwrap();
        assert!(r.passed("d_skew") && r.passed("invariance"));
    }

    #[test]
    fn nondegeneracy_examples() {
        assert!(check_nondegenerate_on_cohomology(&catalog::a1()).unwrap().is_nondegenerate());
        assert!(check_nondegenerate_on_cohomology(&catalog::acyclic_pair()).unwrap().is_nondegenerate());
        match check_nondegenerate_on_cohomology(&catalog::a1_degenerate()).unwrap() {
            Nondegeneracy::Degenerate { parity, witness } => {
                assert_eq!(parity, Parity::Even);
                assert!(!witness.get("b").unwrap().is_zero());
                assert!(witness.get("y1").unwrap().is_zero());
            }
            other => panic!("expected degenerate, got {other:?}"),
        }
        assert!(check_nondegenerate_on_cohomology(&catalog::n1()).unwrap().is_nondegenerate());
    }

    #[test]
    fn kappa_is_a_chain_map() {
        for g in [catalog::a1(), catalog::a1_db_y1(), catalog::a1_dy1_b(), catalog::n1(), catalog::acyclic_pair()] {
            let pair = DualComplexPair::new(&g).unwrap();
            assert_eq!(pair.chain_map_defect().unwrap(), None);
        }
    }

    #[test]
    fn repackaged_as_linfty() {
        let l = catalog::n1().to_linfty();
        assert_eq!(l.max_arity(), 2);
        let r = crate::linfty::validate_linfty(&l, 3).unwrap();
        assert!(r.all_passed(), "{r}");
    }
}
