//! Tangent complexes at Maurer–Cartan points and the induced symplectic
//! structure on their cohomology.
//!
//! At an odd point `x` the tangent complex is
//!
//! ```text
//! 𝔊₊ --A--> 𝔊₋ --P--> 𝔊₊        (degrees −1, 0, 1)
//! ```
//!
//! with `A a = ξ_a(x)` and `P = Φ'_x`. For a ℤ-graded space the three terms
//! are the components of degree 0, 1 and 2 instead. The moment identity
//! `β(ξ_a(x), y) = β(a, Φ'_x(y))` reads `B P = Aᵀ W` where `W` is `β` on
//! the middle term and `B` is `β` between the outer terms, which is the
//! self-duality of the complex.

use serde::Serialize;

use crate::dgla::{fmt_coeffs, nonzero};
use crate::error::{Error, Result};
use crate::graded::{ChainComplex, GradedSpace, GradedVector, GradingKind, Matrix, Parity, Scalar};
use crate::maurer_cartan::{action_matrix, differential_matrix, CurvatureModel, OrbitSpec};
use crate::report::ValidationReport;

/// Basis indices of the three terms of the tangent complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Terms {
    pub lower: Vec<usize>,
    pub middle: Vec<usize>,
    pub upper: Vec<usize>,
}

impl Terms {
    pub fn of(space: &GradedSpace) -> Self {
        match space.kind() {
            GradingKind::Z2 => {
                Terms { lower: space.even_indices(), middle: space.odd_indices(), upper: space.even_indices() }
            }
            GradingKind::Z => Terms {
                lower: space.indices_of_degree(0),
                middle: space.indices_of_degree(1),
                upper: space.indices_of_degree(2),
            },
        }
    }
}

/// Rows `rows` and columns `cols` (basis indices) of a matrix whose rows
/// are indexed by `row_set` and columns by `col_set`.
fn restrict<S: Scalar>(m: &Matrix<S>, row_set: &[usize], rows: &[usize], col_set: &[usize], cols: &[usize]) -> Matrix<S> {
    let pos = |set: &[usize], i: usize| set.iter().position(|&j| j == i).expect("index in set");
    let r: Vec<usize> = rows.iter().map(|&i| pos(row_set, i)).collect();
    let c: Vec<usize> = cols.iter().map(|&i| pos(col_set, i)).collect();
    m.select(&r, &c)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TangentComplex<S> {
    pub point: GradedVector<S>,
    pub base: GradedVector<S>,
    pub terms: Terms,
    /// `A`: lower → middle, `a ↦ ξ_a(x)`.
    pub action: Matrix<S>,
    /// `P`: middle → upper, `y ↦ Φ'_x(y)`.
    pub differential: Matrix<S>,
    /// Rows spanning the annihilator of the orbit directions
    /// `span{adjoint_at(a, base, x)}` for the orbit-corrected complex; the
    /// degree-1 term is then the upper term modulo those directions, in
    /// these coordinates.
    pub quotient: Option<Matrix<S>>,
    /// Columns `adjoint_at(a, base, x)` on the upper term, one per lower
    /// basis vector (orbit-corrected complex only).
    pub orbit_directions: Option<Matrix<S>>,
    pub complex: ChainComplex<S>,
}

impl<S: Scalar> TangentComplex<S> {
    pub fn is_orbit_corrected(&self) -> bool {
        self.quotient.is_some()
    }

    /// Dimensions of the terms in degrees −1, 0, 1.
    pub fn dims(&self) -> [usize; 3] {
        let d = self.complex.dims();
        [d[0], d[1], d[2]]
    }

    pub fn cohomology_dims(&self) -> Result<[usize; 3]> {
        let h = self.complex.cohomology_dims()?;
        Ok([h[0], h[1], h[2]])
    }

    /// `h⁻¹ − h⁰ + h¹` equals the Euler characteristic of the terms.
    pub fn euler_characteristic_holds(&self) -> Result<bool> {
        let [a, b, c] = self.dims();
        let [h0, h1, h2] = self.cohomology_dims()?;
        Ok(h0 as i64 - h1 as i64 + h2 as i64 == a as i64 - b as i64 + c as i64)
    }
}

/// Orbit directions `adjoint_at(a, base, x)` for each lower basis vector.
fn orbit_directions<S: Scalar>(
    g: &impl CurvatureModel<S>,
    terms: &Terms,
    orbit: &OrbitSpec<S>,
    x: &GradedVector<S>,
) -> Result<Vec<Vec<S>>> {
    if **x.space() != **g.space() || **orbit.base.space() != **g.space() {
        return Err(Error::Input("point does not belong to the algebra's space".into()));
    }
    x.require_parity(Parity::Odd, "x")?;
    let sp = g.space();
    if sp.kind() == GradingKind::Z {
        if let Some(i) = (0..sp.dim()).find(|&i| sp.degree(i) != 1 && !x.coeffs()[i].is_zero()) {
            return Err(Error::Input(format!("x has a component along {} outside degree 1", sp.label(i))));
        }
    }
    let phi = g.curvature_at(x.coeffs());
    let off: Vec<S> = phi.iter().zip(orbit.base.coeffs()).map(|(a, b)| a.clone() - b.clone()).collect();
    if nonzero(&off, 1.0) {
        return Err(Error::Precondition(format!("x is not on the fibre: Φ(x) − base = {}", fmt_coeffs(sp, &off))));
    }
    let n = sp.dim();
    Ok(terms
        .lower
        .iter()
        .map(|&i| {
            let mut a = vec![S::zero(); n];
            a[i] = S::one();
            g.adjoint_at(&a, orbit.base.coeffs(), x.coeffs())
        })
        .collect())
}

fn maps<S: Scalar>(g: &impl CurvatureModel<S>, terms: &Terms, x: &GradedVector<S>) -> (Matrix<S>, Matrix<S>) {
    let sp = g.space();
    let (even, odd) = (sp.even_indices(), sp.odd_indices());
    let action = restrict(&action_matrix(g, x.coeffs()), &odd, &terms.middle, &even, &terms.lower);
    let differential = restrict(&differential_matrix(g, x.coeffs()), &even, &terms.upper, &odd, &terms.middle);
    (action, differential)
}

/// Tangent complex at a point of the zero fibre.
pub fn tangent_complex<S: Scalar>(g: &impl CurvatureModel<S>, x: &GradedVector<S>) -> Result<TangentComplex<S>> {
    tangent_complex_at(g, &OrbitSpec::zero(g.space()), x)
}

/// Tangent complex at a point of the fibre over `orbit.base`; the base must
/// be fixed by the action (`adjoint_at(a, base, x) = 0` for every `a`) so
/// that `P ∘ A = 0`. Use [`orbit_corrected_complex`] otherwise.
pub fn tangent_complex_at<S: Scalar>(
    g: &impl CurvatureModel<S>,
    orbit: &OrbitSpec<S>,
    x: &GradedVector<S>,
) -> Result<TangentComplex<S>> {
    let terms = Terms::of(g.space());
    let dirs = orbit_directions(g, &terms, orbit, x)?;
    if let Some((a, v)) = dirs.iter().enumerate().find(|(_, v)| nonzero(v, 1.0)) {
        return Err(Error::Precondition(format!(
            "base is not fixed by the action ({} moves it by {}); use the orbit-corrected complex",
            g.space().label(terms.lower[a]),
            fmt_coeffs(g.space(), v)
        )));
    }
    let (action, differential) = maps(g, &terms, x);
    let dims = vec![terms.lower.len(), terms.middle.len(), terms.upper.len()];
    let complex = ChainComplex::new(-1, dims, vec![action.clone(), differential.clone()])?;
    Ok(TangentComplex {
        point: x.clone(),
        base: orbit.base.clone(),
        terms,
        action,
        differential,
        quotient: None,
        orbit_directions: None,
        complex,
    })
}

/// Orbit-corrected tangent complex at `x` with `Φ(x) = base`: the degree-1
/// term is the upper term modulo `span{adjoint_at(a, base, x)}`, so that
/// the composite vanishes by equivariance even when the base is not fixed.
pub fn orbit_corrected_complex<S: Scalar>(
    g: &impl CurvatureModel<S>,
    orbit: &OrbitSpec<S>,
    x: &GradedVector<S>,
) -> Result<TangentComplex<S>> {
    let terms = Terms::of(g.space());
    let dirs = orbit_directions(g, &terms, orbit, x)?;
    let cols: Vec<Vec<S>> = dirs.iter().map(|v| terms.upper.iter().map(|&i| v[i].clone()).collect()).collect();
    let t = Matrix::from_columns(terms.upper.len(), &cols);
    // rows q with q·t = 0
    let left = t.transpose().rank_kernel().kernel;
    let quotient = if left.is_empty() { Matrix::zeros(0, terms.upper.len()) } else { Matrix::from_rows(left)? };
    let (action, differential) = maps(g, &terms, x);
    let reduced = quotient.mul(&differential)?;
    let dims = vec![terms.lower.len(), terms.middle.len(), quotient.rows()];
    let complex = ChainComplex::new(-1, dims, vec![action.clone(), reduced])?;
    Ok(TangentComplex {
        point: x.clone(),
        base: orbit.base.clone(),
        terms,
        action,
        differential,
        quotient: Some(quotient),
        orbit_directions: Some(t),
        complex,
    })
}

struct Blocks<S> {
    /// `β(lower, upper)`
    outer: Matrix<S>,
    /// `ω = β` on the middle term
    omega: Matrix<S>,
}

fn blocks<S: Scalar>(g: &impl CurvatureModel<S>, terms: &Terms) -> Result<Blocks<S>> {
    let form = g.form().ok_or_else(|| Error::Precondition("algebra has no bilinear form".into()))?;
    Ok(Blocks { outer: form.block(&terms.lower, &terms.upper), omega: form.block(&terms.middle, &terms.middle) })
}

fn singular<S: Scalar>(m: &Matrix<S>) -> bool {
    m.rows() != m.cols() || m.rank() < m.rows()
}

/// `ω` and the outer pairing nonsingular as matrices, and `B Φ'_x = Aᵀ ω`
/// exactly. The chain-level nondegeneracy is reported apart from the
/// identity itself.
pub fn check_self_duality<S: Scalar>(g: &impl CurvatureModel<S>, t: &TangentComplex<S>) -> Result<ValidationReport> {
    let b = blocks(g, &t.terms)?;
    let sp = g.space();
    let mut r = ValidationReport::new();
    r.push(
        "omega_nonsingular",
        1,
        singular(&b.omega).then(|| format!("ω has rank {} on a {}-dimensional term", b.omega.rank(), b.omega.rows())),
    );
    r.push(
        "beta_plus_nonsingular",
        1,
        singular(&b.outer).then(|| {
            format!("β between degrees −1 and 1 is {}×{} of rank {}", b.outer.rows(), b.outer.cols(), b.outer.rank())
        }),
    );
    let lhs = b.outer.mul(&t.differential)?;
    let rhs = t.action.transpose().mul(&b.omega)?;
    let witness = lhs.first_difference(&rhs).map(|(i, j)| {
        format!(
            "entry ({}, {}): (BΦ'_x) = {}, (Aᵀω) = {}",
            sp.label(t.terms.lower[i]),
            sp.label(t.terms.middle[j]),
            lhs.get(i, j),
            rhs.get(i, j)
        )
    });
    r.push("self_duality", (lhs.rows() * lhs.cols()) as u64, witness);
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReducedTangent<S> {
    /// `(h⁻¹, h⁰, h¹)`
    pub h: [usize; 3],
    /// Representative cocycles for each degree, in the coordinates of the
    /// corresponding term.
    pub representatives: [Vec<Vec<S>>; 3],
    /// `Rᵀ ω R` on the chosen `H⁰` representatives.
    pub induced_form: Matrix<S>,
    /// `Kᵀ B C` pairing `H⁻¹` with `H¹`.
    pub pairing: Matrix<S>,
}

/// Cohomology of the tangent complex, the form induced by `ω` on `H⁰` and
/// the pairing `H⁻¹ × H¹` induced by `β`. On the orbit-corrected complex
/// the form on `H⁰` is `ω(y₁,y₂) − β(c₁, T c₂)` with `Φ'_x(yᵢ) = T cᵢ`,
/// the orbit form correction. Fails with a structural error if a gauge
/// direction pairs nontrivially with a degree-0 cocycle, since then the
/// form does not descend.
pub fn reduced_tangent<S: Scalar>(g: &impl CurvatureModel<S>, t: &TangentComplex<S>) -> Result<ReducedTangent<S>> {
    let b = blocks(g, &t.terms)?;
    let hm = t.complex.cohomology(-1)?;
    let h0 = t.complex.cohomology(0)?;
    let h1 = t.complex.cohomology(1)?;
    let sp = g.space();

    // c with T c = Φ'_x(y), for the orbit correction
    let correction = match &t.orbit_directions {
        None => None,
        Some(dirs) => Some((dirs, b.outer.mul(dirs)?)),
    };
    let coords = |y: &[S]| -> Result<Vec<S>> {
        match &correction {
            None => Ok(Vec::new()),
            Some((dirs, _)) => dirs
                .solve(&t.differential.mul_vec(y))
                .ok_or_else(|| Error::Structural("Φ'_x(y) is not tangent to the orbit".into())),
        }
    };
    let form = |y1: &[S], c1: &[S], y2: &[S], c2: &[S]| -> S {
        let mut v = dot(y1, &b.omega.mul_vec(y2));
        if let Some((_, bt)) = &correction {
            v = v - dot(c1, &bt.mul_vec(c2));
        }
        v
    };

    let cocycles = t.complex.outgoing(0)?.rank_kernel().kernel;
    let cocycle_coords = cocycles.iter().map(|y| coords(y)).collect::<Result<Vec<_>>>()?;
    for a in 0..t.action.cols() {
        let xi = t.action.column(a);
        let cx = coords(&xi)?;
        for (y, cy) in cocycles.iter().zip(&cocycle_coords) {
            let v = form(&xi, &cx, y, cy);
            if nonzero(std::slice::from_ref(&v), 1.0) {
                return Err(Error::Structural(format!(
                    "form does not descend: ω(ξ_{}(x), y) = {v} for a degree-0 cocycle y",
                    sp.label(t.terms.lower[a])
                )));
            }
        }
    }

    let reps = &h0.representatives;
    let rep_coords = reps.iter().map(|y| coords(y)).collect::<Result<Vec<_>>>()?;
    let induced_form =
        Matrix::from_fn(reps.len(), reps.len(), |i, j| form(&reps[i], &rep_coords[i], &reps[j], &rep_coords[j]));

    let k = Matrix::from_columns(b.outer.rows(), &hm.representatives);
    let lifted: Vec<Vec<S>> = match &t.quotient {
        None => h1.representatives.clone(),
        Some(q) => h1.representatives.iter().map(|z| lift(q, z)).collect::<Result<_>>()?,
    };
    let c = Matrix::from_columns(b.outer.cols(), &lifted);
    let pairing = k.transpose().mul(&b.outer)?.mul(&c)?;
    Ok(ReducedTangent {
        h: [hm.dimension, h0.dimension, h1.dimension],
        representatives: [hm.representatives, h0.representatives, h1.representatives],
        induced_form,
        pairing,
    })
}

fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Some `w` with `Q w = z`.
fn lift<S: Scalar>(q: &Matrix<S>, z: &[S]) -> Result<Vec<S>> {
    q.solve(z).ok_or_else(|| Error::Structural("quotient map is not surjective".into()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum SymplecticCertificate<S> {
    Certified { h: [usize; 3], induced_form: Matrix<S> },
    Failed { reason: String, witness: Vec<S> },
}

impl<S> SymplecticCertificate<S> {
    pub fn is_certified(&self) -> bool {
        matches!(self, SymplecticCertificate::Certified { .. })
    }
}

/// Certified iff the induced form on `H⁰` is nonsingular and the `H⁻¹ × H¹`
/// pairing is a perfect pairing. A failure carries a kernel vector in class
/// coordinates.
pub fn certify_symplectic<S: Scalar>(g: &impl CurvatureModel<S>, t: &TangentComplex<S>) -> Result<SymplecticCertificate<S>> {
    let red = reduced_tangent(g, t)?;
    let f = &red.induced_form;
    let rk = f.rank_kernel();
    if rk.rank < f.rows() {
        return Ok(SymplecticCertificate::Failed {
            reason: format!("induced form on H⁰ has rank {} < {}", rk.rank, f.rows()),
            witness: rk.kernel.into_iter().next().unwrap_or_default(),
        });
    }
    if red.h[0] != red.h[2] {
        return Ok(SymplecticCertificate::Failed {
            reason: format!("H⁻¹ and H¹ have different dimensions {} and {}", red.h[0], red.h[2]),
            witness: Vec::new(),
        });
    }
    let p = &red.pairing;
    let rk = p.rank_kernel();
    if rk.rank < p.rows() {
        return Ok(SymplecticCertificate::Failed {
            reason: format!("H⁻¹ × H¹ pairing has rank {} < {}", rk.rank, p.rows()),
            witness: p.transpose().rank_kernel().kernel.into_iter().next().unwrap_or_default(),
        });
    }
    Ok(SymplecticCertificate::Certified { h: red.h, induced_form: red.induced_form })
}

/// `dim H⁰` computed instead from the 2-periodic complex
/// `𝔊₊ --(−A)--> 𝔊₋ --P--> 𝔊₊` of the twisted differential on the whole
/// space. Needs `Φ(x) = 0`.
pub fn twisted_h0<S: Scalar>(g: &impl CurvatureModel<S>, x: &GradedVector<S>) -> Result<usize> {
    orbit_directions(g, &Terms::of(g.space()), &OrbitSpec::zero(g.space()), x)?;
    let action = action_matrix(g, x.coeffs());
    let differential = differential_matrix(g, x.coeffs());
    let c = ChainComplex::periodic(vec![action.cols(), action.rows()], vec![action.scale(&-S::one()), differential])?;
    Ok(c.cohomology(1)?.dimension)
}
