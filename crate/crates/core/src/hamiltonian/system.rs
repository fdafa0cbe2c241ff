//! Symplectic vector spaces, Lie algebras and polynomial Hamiltonian actions.

use std::sync::Arc;

use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::graded::{Component, GradedSpace, GradingKind, Matrix, Scalar};
use crate::report::ValidationReport;

/// `(V, ω)` with a labelled basis. `V` is placed in degree 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticSpace<S> {
    labels: Vec<String>,
    omega: Matrix<S>,
    poisson: Matrix<S>,
}

impl<S: Scalar> SymplecticSpace<S> {
    pub fn new(labels: Vec<String>, omega: Matrix<S>) -> Result<Self> {
        let n = labels.len();
        if omega.rows() != n || omega.cols() != n {
            return Err(Error::DimensionMismatch(format!("ω must be {n}x{n}")));
        }
        if omega.add(&omega.transpose())?.first_difference(&Matrix::zeros(n, n)).is_some() {
            return Err(Error::Input("ω is not antisymmetric".into()));
        }
        let poisson = omega.inverse().ok_or_else(|| Error::Input("ω is singular".into()))?;
        // fails early on duplicate labels
        Self::graded(&labels)?;
        Ok(Self { labels, omega, poisson })
    }

    fn graded(labels: &[String]) -> Result<GradedSpace> {
        GradedSpace::new(GradingKind::Z, vec![Component { degree: 1, labels: labels.to_vec() }])
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn omega(&self) -> &Matrix<S> {
        &self.omega
    }

    /// `ω⁻¹`, the matrix of the Poisson bivector.
    pub fn poisson(&self) -> &Matrix<S> {
        &self.poisson
    }

    pub fn graded_space(&self) -> Arc<GradedSpace> {
        Arc::new(Self::graded(&self.labels).expect("labels checked in new"))
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Input(format!("unknown variable {label:?}")))
    }
}

/// `{f, g} = Σ π^{ij} ∂_i f ∂_j g` with `π = ω⁻¹`.
pub fn poisson_bracket<S: Scalar>(v: &SymplecticSpace<S>, f: &Polynomial<S>, g: &Polynomial<S>) -> Polynomial<S> {
    let n = v.dim();
    let df: Vec<_> = (0..n).map(|i| f.derivative(i)).collect();
    let dg: Vec<_> = (0..n).map(|j| g.derivative(j)).collect();
    let mut out = Polynomial::zero(n);
    for i in 0..n {
        if df[i].is_zero() {
            continue;
        }
        for j in 0..n {
            let p = v.poisson.get(i, j);
            if p.is_zero() || dg[j].is_zero() {
                continue;
            }
            out = out.add(&df[i].mul(&dg[j]).scale(p));
        }
    }
    out
}

/// Lie algebra given by structure constants `[e_i, e_j] = Σ_k c_{ij}^k e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra<S> {
    labels: Vec<String>,
    constants: Vec<S>,
}

impl<S: Scalar> LieAlgebra<S> {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Input(format!("Lie algebra label {l:?} is not unique")));
            }
        }
        let n = labels.len();
        Ok(Self { labels, constants: vec![S::zero(); n * n * n] })
    }

    pub fn abelian(labels: Vec<String>) -> Result<Self> {
        Self::new(labels)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Input(format!("unknown Lie algebra element {label:?}")))
    }

    fn at(&self, i: usize, j: usize, k: usize) -> usize {
        let n = self.dim();
        (i * n + j) * n + k
    }

    /// `c_{ij}^k`
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &S {
        &self.constants[self.at(i, j, k)]
    }

    /// Sets a single constant without touching `c_{ji}^k`.
    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, v: S) {
        let idx = self.at(i, j, k);
        self.constants[idx] = v;
    }

    /// Sets `c_{ij}^k = v` and `c_{ji}^k = −v`.
    pub fn set_bracket(&mut self, i: usize, j: usize, k: usize, v: S) {
        self.set_constant(j, i, k, -v.clone());
        self.set_constant(i, j, k, v);
    }

    pub fn bracket(&self, x: &[S], y: &[S]) -> Vec<S> {
        let n = self.dim();
        let mut out = vec![S::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let xy = x[i].mul_ref(&y[j]);
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        o.add_product(&xy, c);
                    }
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<S> {
        let mut v = vec![S::zero(); self.dim()];
        v[i] = S::one();
        v
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> LieAlgebra<T> {
        LieAlgebra { labels: self.labels.clone(), constants: self.constants.iter().map(f).collect() }
    }

    /// Antisymmetry and the Jacobi identity on basis elements.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let mut r = ValidationReport::new();
        let mut witness = None;
        'anti: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !(self.constant(i, j, k).clone() + self.constant(j, i, k).clone()).is_zero() {
                        witness = Some(format!(
                            "c_({},{})^{} = {} but c_({},{})^{} = {}",
                            self.labels[i],
                            self.labels[j],
                            self.labels[k],
                            self.constant(i, j, k),
                            self.labels[j],
                            self.labels[i],
                            self.labels[k],
                            self.constant(j, i, k)
                        ));
                        break 'anti;
                    }
                }
            }
        }
        r.push("lie_antisymmetry", (n * n) as u64, witness);
        let mut witness = None;
        'jac: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (self.unit(i), self.unit(j), self.unit(k));
                    let lhs = self.bracket(&x, &self.bracket(&y, &z));
                    let a = self.bracket(&self.bracket(&x, &y), &z);
                    let b = self.bracket(&y, &self.bracket(&x, &z));
                    if lhs.iter().zip(a.iter().zip(&b)).any(|(l, (a, b))| !(l.clone() - a.clone() - b.clone()).is_zero()) {
                        witness = Some(format!(
                            "[{0},[{1},{2}]] ≠ [[{0},{1}],{2}] + [{1},[{0},{2}]]",
                            self.labels[i], self.labels[j], self.labels[k]
                        ));
                        break 'jac;
                    }
                }
            }
        }
        r.push("lie_jacobi", (n * n * n) as u64, witness);
        r
    }
}

/// Hamiltonian action of `𝔤` on `(V, ω)` through polynomial Hamiltonians
/// `H_a`, one per basis element of `𝔤`.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianSystem<S> {
    algebra: LieAlgebra<S>,
    symplectic: SymplecticSpace<S>,
    hamiltonians: Vec<Polynomial<S>>,
}

impl<S: Scalar> HamiltonianSystem<S> {
    pub fn new(algebra: LieAlgebra<S>, symplectic: SymplecticSpace<S>, hamiltonians: Vec<Polynomial<S>>) -> Result<Self> {
        if hamiltonians.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} Hamiltonians for a {}-dimensional Lie algebra",
                hamiltonians.len(),
                algebra.dim()
            )));
        }
        if let Some(h) = hamiltonians.iter().find(|h| h.nvars() != symplectic.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "Hamiltonian in {} variables on a {}-dimensional space",
                h.nvars(),
                symplectic.dim()
            )));
        }
        if let Some(l) = algebra.labels().iter().find(|l| symplectic.labels().contains(l)) {
            return Err(Error::Input(format!("label {l:?} used in both 𝔤 and V")));
        }
        Ok(Self { algebra, symplectic, hamiltonians })
    }

    pub fn algebra(&self) -> &LieAlgebra<S> {
        &self.algebra
    }

    pub fn algebra_mut(&mut self) -> &mut LieAlgebra<S> {
        &mut self.algebra
    }

    pub fn symplectic(&self) -> &SymplecticSpace<S> {
        &self.symplectic
    }

    pub fn hamiltonians(&self) -> &[Polynomial<S>] {
        &self.hamiltonians
    }

    pub fn hamiltonian(&self, a: usize) -> &Polynomial<S> {
        &self.hamiltonians[a]
    }

    pub fn set_hamiltonian(&mut self, a: usize, h: Polynomial<S>) -> Result<()> {
        if h.nvars() != self.symplectic.dim() {
            return Err(Error::DimensionMismatch("Hamiltonian has the wrong number of variables".into()));
        }
        self.hamiltonians[a] = h;
        Ok(())
    }

    /// Largest total degree among the Hamiltonians (0 if all vanish).
    pub fn max_degree(&self) -> u32 {
        self.hamiltonians.iter().filter_map(|h| h.degree()).max().unwrap_or(0)
    }

    /// Components `X_a^k = Σ_j π^{kj} ∂_j H_a` of the Hamiltonian vector
    /// field of `H_a`.
    pub fn vector_field(&self, a: usize) -> Vec<Polynomial<S>> {
        let n = self.symplectic.dim();
        let dh: Vec<_> = (0..n).map(|j| self.hamiltonians[a].derivative(j)).collect();
        (0..n)
            .map(|k| {
                let mut p = Polynomial::zero(n);
                for (j, d) in dh.iter().enumerate() {
                    let c = self.symplectic.poisson().get(k, j);
                    if !c.is_zero() {
                        p = p.add(&d.scale(c));
                    }
                }
                p
            })
            .collect()
    }

    /// `Φ(v) = Σ_a H_a(v) a*`, as coordinates in the dual basis.
    pub fn moment(&self, v: &[S]) -> Vec<S> {
        self.hamiltonians.iter().map(|h| h.eval(v)).collect()
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> HamiltonianSystem<T> {
        HamiltonianSystem {
            algebra: self.algebra.map_scalars(f),
            symplectic: SymplecticSpace {
                labels: self.symplectic.labels.clone(),
                omega: self.symplectic.omega.map_scalars(f),
                poisson: self.symplectic.poisson.map_scalars(f),
            },
            hamiltonians: self.hamiltonians.iter().map(|h| h.map_scalars(f)).collect(),
        }
    }
}

/// Homogeneous components `Φ_i` of the moment map: entry `i − 1` holds the
/// degree-`i` parts of all Hamiltonians.
pub fn moment_components<S: Scalar>(s: &HamiltonianSystem<S>) -> Vec<Vec<Polynomial<S>>> {
    (1..=s.max_degree())
        .map(|k| s.hamiltonians.iter().map(|h| h.homogeneous_part(k)).collect())
        .collect()
}

/// Jacobi for `𝔤`, absence of constant terms, and `H_{[a,b]} = {H_a, H_b}`
/// as exact polynomial identities.
pub fn validate_hamiltonian_system<S: Scalar>(s: &HamiltonianSystem<S>) -> ValidationReport {
    let g = &s.algebra;
    let n = g.dim();
    let mut r = g.validate();
    let constant = s.hamiltonians.iter().enumerate().find(|(_, h)| !h.constant_term().is_zero());
    r.push(
        "no_constant_terms",
        n as u64,
        constant.map(|(a, h)| format!("H_{} has constant term {}", g.labels()[a], h.constant_term())),
    );
    let mut witness = None;
    'pairs: for a in 0..n {
        for b in 0..n {
            let lhs = poisson_bracket(&s.symplectic, &s.hamiltonians[a], &s.hamiltonians[b]);
            let mut rhs = Polynomial::zero(s.symplectic.dim());
            for k in 0..n {
                let c = g.constant(a, b, k);
                if !c.is_zero() {
                    rhs = rhs.add(&s.hamiltonians[k].scale(c));
                }
            }
            let diff = lhs.sub(&rhs);
            if !diff.is_zero() {
                witness = Some(format!(
                    "{{H_{0}, H_{1}}} − H_[{0},{1}] = {2}",
                    g.labels()[a],
                    g.labels()[b],
                    diff.display(s.symplectic.labels())
                ));
                break 'pairs;
            }
        }
    }
    r.push("poisson_homomorphism", (n * n) as u64, witness);
    let degrees: Vec<String> = moment_components(s)
        .iter()
        .enumerate()
        .filter(|(_, parts)| parts.iter().any(|p| !p.is_zero()))
        .map(|(i, _)| (i + 1).to_string())
        .collect();
    r.pass("moment_components", n as u64).with_note(format!("nonzero homogeneous degrees: [{}]", degrees.join(", ")));
    r
}
