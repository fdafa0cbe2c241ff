//! Small algebras and Hamiltonian systems used throughout the tests, the
//! CLI corpus and the documentation.

use std::sync::Arc;

use crate::dgla::{BilinearForm, DglAlgebra};
use crate::graded::{Component, GradedSpace, GradedVector, GradingKind, Matrix, Parity, Rational, Scalar, StructureTensor, Symmetry};
use crate::hamiltonian::{build_linfty, HamiltonianSystem, LieAlgebra, Normalization, Polynomial, SymplecticSpace};
use crate::linfty::LInftyAlgebra;

fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

struct Builder {
    space: Arc<GradedSpace>,
    d: StructureTensor<Rational>,
    br: StructureTensor<Rational>,
    form: Option<Matrix<Rational>>,
}

impl Builder {
    fn new(space: GradedSpace) -> Self {
        let space = Arc::new(space);
        let d_shift = 1;
        Self {
            d: StructureTensor::zeros(&space, &space, 1, d_shift, Symmetry::Antisymmetric),
            br: StructureTensor::zeros(&space, &space, 2, 0, Symmetry::Antisymmetric),
            form: None,
            space,
        }
    }

    fn idx(&self, l: &str) -> usize {
        self.space.index_of(l).expect("catalog label")
    }

    fn column(&self, terms: &[(Rational, &str)]) -> Vec<Rational> {
        let mut col = vec![q(0, 1); self.space.dim()];
        for (c, l) in terms {
            col[self.idx(l)] += c;
        }
        col
    }

    fn d(mut self, x: &str, terms: &[(Rational, &str)]) -> Self {
        let col = self.column(terms);
        let i = self.idx(x);
        self.d.set_column(&[i], &col).expect("catalog differential");
        self
    }

    fn br(mut self, x: &str, y: &str, terms: &[(Rational, &str)]) -> Self {
        let col = self.column(terms);
        let (i, j) = (self.idx(x), self.idx(y));
        self.br.set_symmetric(&[i, j], &col).expect("catalog bracket");
        self
    }

    fn form(mut self, entries: &[(&str, &str, Rational)]) -> Self {
        let n = self.space.dim();
        let mut m = Matrix::zeros(n, n);
        for (x, y, c) in entries {
            m.set(self.idx(x), self.idx(y), c.clone());
        }
        self.form = Some(m);
        self
    }

    fn build(self) -> DglAlgebra<Rational> {
        let form = self.form.map(|m| BilinearForm::new(&self.space, m).expect("catalog form"));
        DglAlgebra::new(&self.space, self.d, self.br, form).expect("catalog algebra")
    }
}

/// Abelian `span{b} ⊕ span{y1, y2}` with `β(b,b) = 1`, `β(y1,y2) = 1`.
pub fn a1() -> DglAlgebra<Rational> {
    Builder::new(GradedSpace::super_space(&["b"], &["y1", "y2"]))
        .form(&[("b", "b", q(1, 1)), ("y1", "y2", q(1, 1)), ("y2", "y1", q(-1, 1))])
        .build()
}

/// [`a1`] with `β(b,b) = 0`: nondegenerate on the odd part only.
pub fn a1_degenerate() -> DglAlgebra<Rational> {
    Builder::new(GradedSpace::super_space(&["b"], &["y1", "y2"]))
        .form(&[("y1", "y2", q(1, 1)), ("y2", "y1", q(-1, 1))])
        .build()
}

/// `d y1 = b`. The form keeps `β(y1,y2) = 1` but must have `β(b,b) = 0` to
/// stay compatible with `d`.
pub fn a1_dy1_b() -> DglAlgebra<Rational> {
    Builder::new(GradedSpace::super_space(&["b"], &["y1", "y2"]))
        .d("y1", &[(q(1, 1), "b")])
        .form(&[("y1", "y2", q(1, 1)), ("y2", "y1", q(-1, 1))])
        .build()
}

/// `d b = y1`, so gauge flows along `b` translate `x` by `−t·y1`. The form
/// compatible with `d` is `β(b,b) = 1` with a zero odd block.
pub fn a1_db_y1() -> DglAlgebra<Rational> {
    Builder::new(GradedSpace::super_space(&["b"], &["y1", "y2"]))
        .d("b", &[(q(1, 1), "y1")])
        .form(&[("b", "b", q(1, 1))])
        .build()
}

/// Z-graded `u` (degree 0), `w` (degree 1), `du = w`, zero form.
pub fn acyclic_pair() -> DglAlgebra<Rational> {
    let space = GradedSpace::new(
        GradingKind::Z,
        vec![
            Component { degree: 0, labels: vec!["u".into()] },
            Component { degree: 1, labels: vec!["w".into()] },
        ],
    )
    .expect("static labels");
    Builder::new(space).d("u", &[(q(1, 1), "w")]).form(&[]).build()
}

/// `osp(1|2)`: even `e, f, h`, odd `q, p`, zero differential, invariant
/// form `B(h,h) = 2`, `B(e,f) = 1`, `B(q,p) = 2`.
pub fn n1() -> DglAlgebra<Rational> {
    Builder::new(GradedSpace::super_space(&["e", "f", "h"], &["q", "p"]))
        .br("h", "e", &[(q(2, 1), "e")])
        .br("h", "f", &[(q(-2, 1), "f")])
        .br("e", "f", &[(q(1, 1), "h")])
        .br("e", "q", &[(q(1, 1), "p")])
        .br("f", "p", &[(q(1, 1), "q")])
        .br("h", "q", &[(q(-1, 1), "q")])
        .br("h", "p", &[(q(1, 1), "p")])
        .br("q", "q", &[(q(-2, 1), "f")])
        .br("p", "p", &[(q(2, 1), "e")])
        .br("q", "p", &[(q(-1, 1), "h")])
        .form(&[
            ("h", "h", q(2, 1)),
            ("e", "f", q(1, 1)),
            ("f", "e", q(1, 1)),
            ("q", "p", q(2, 1)),
            ("p", "q", q(-2, 1)),
        ])
        .build()
}

/// `g ⊗ k[ε]` for a DGLA `g` with zero differential: `ε` odd, `d = ∂/∂ε`.
/// Basis `x` for `x ⊗ 1` and `x_eps` for `x ⊗ ε`. No form.
pub fn dual_numbers(g: &DglAlgebra<Rational>) -> DglAlgebra<Rational> {
    let sp = g.space();
    let n = sp.dim();
    let eps = |l: &str| format!("{l}_eps");
    let mut even: Vec<String> = Vec::new();
    let mut odd: Vec<String> = Vec::new();
    for i in 0..n {
        match sp.parity(i) {
            Parity::Even => even.push(sp.label(i).into()),
            Parity::Odd => odd.push(sp.label(i).into()),
        }
    }
    for i in 0..n {
        match sp.parity(i) {
            Parity::Even => odd.push(eps(sp.label(i))),
            Parity::Odd => even.push(eps(sp.label(i))),
        }
    }
    let space = GradedSpace::new(
        GradingKind::Z2,
        vec![Component { degree: 0, labels: even }, Component { degree: 1, labels: odd }],
    )
    .expect("labels are unique");
    let mut b = Builder::new(space);
    let one: Vec<usize> = (0..n).map(|i| b.idx(sp.label(i))).collect();
    let tick: Vec<usize> = (0..n).map(|i| b.idx(&eps(sp.label(i)))).collect();
    let dim = b.space.dim();
    for i in 0..n {
        let mut col = vec![q(0, 1); dim];
        col[one[i]] = if sp.parity(i).is_odd() { q(-1, 1) } else { q(1, 1) };
        b.d.set_column(&[tick[i]], &col).expect("shape");
        for j in 0..n {
            let xy = g.bracket().column(&[i, j]);
            let mut c1 = vec![q(0, 1); dim];
            let mut ce = vec![q(0, 1); dim];
            let mut ce2 = vec![q(0, 1); dim];
            let sign = if sp.parity(j).is_odd() { q(-1, 1) } else { q(1, 1) };
            for (k, v) in xy.iter().enumerate() {
                c1[one[k]] = v.clone();
                ce[tick[k]] = v.clone();
                ce2[tick[k]] = v * &sign;
            }
            b.br.set_column(&[one[i], one[j]], &c1).expect("shape");
            b.br.set_column(&[one[i], tick[j]], &ce).expect("shape");
            b.br.set_column(&[tick[i], one[j]], &ce2).expect("shape");
        }
    }
    b.build()
}

/// [`n1`] ⊗ `k[ε]`.
pub fn n1d() -> DglAlgebra<Rational> {
    dual_numbers(&n1())
}

/// Maurer–Cartan point `θ⊗1 − ½[θ,θ]⊗ε` of [`n1d`] for odd `θ = αq + βp`.
pub fn n1d_mc_point(alpha: Rational, beta: Rational) -> GradedVector<Rational> {
    let base = n1();
    let theta = GradedVector::from_labels(base.space(), [("q", alpha), ("p", beta)]).expect("labels");
    let tt = base.apply_bracket(&theta, &theta).expect("same space");
    let g = n1d();
    let mut entries: Vec<(String, Rational)> = Vec::new();
    for (i, c) in theta.coeffs().iter().enumerate() {
        entries.push((base.space().label(i).into(), c.clone()));
    }
    for (i, c) in tt.coeffs().iter().enumerate() {
        entries.push((format!("{}_eps", base.space().label(i)), -c / q(2, 1)));
    }
    GradedVector::from_labels(g.space(), entries.iter().map(|(l, c)| (l.as_str(), c.clone()))).expect("labels")
}

fn canonical_plane() -> SymplecticSpace<Rational> {
    let omega = Matrix::from_rows(vec![vec![q(0, 1), q(1, 1)], vec![q(-1, 1), q(0, 1)]]).expect("2x2");
    SymplecticSpace::new(vec!["q".into(), "p".into()], omega).expect("ω is invertible")
}

fn poly(terms: &[(Rational, [u32; 2])]) -> Polynomial<Rational> {
    Polynomial::from_terms(2, terms.iter().map(|(c, e)| (c.clone(), e.to_vec()))).expect("two variables")
}

fn labels(ls: &[&str]) -> Vec<String> {
    ls.iter().map(|s| s.to_string()).collect()
}

/// `𝔤 = span{e}` acting on the plane through `H_e = qp`.
pub fn ho1_system() -> HamiltonianSystem<Rational> {
    let g = LieAlgebra::new(labels(&["e"])).expect("labels");
    HamiltonianSystem::new(g, canonical_plane(), vec![poly(&[(q(1, 1), [1, 1])])]).expect("consistent")
}

/// `H_e = q²p`.
pub fn ho2_system() -> HamiltonianSystem<Rational> {
    let g = LieAlgebra::new(labels(&["e"])).expect("labels");
    HamiltonianSystem::new(g, canonical_plane(), vec![poly(&[(q(1, 1), [2, 1])])]).expect("consistent")
}

/// `𝔰𝔩₂` with `H_e = ½q²`, `H_f = −½p²`, `H_h = qp`.
pub fn sl2q_system() -> HamiltonianSystem<Rational> {
    let mut g = LieAlgebra::new(labels(&["e", "f", "h"])).expect("labels");
    g.set_bracket(2, 0, 0, q(2, 1));
    g.set_bracket(2, 1, 1, q(-2, 1));
    g.set_bracket(0, 1, 2, q(1, 1));
    let h = vec![poly(&[(q(1, 2), [2, 0])]), poly(&[(q(-1, 2), [0, 2])]), poly(&[(q(1, 1), [1, 1])])];
    HamiltonianSystem::new(g, canonical_plane(), h).expect("consistent")
}

/// Two-dimensional Borel algebra `[h,e] = 2e` with the non-linear action
/// `H_e = ½q² + q³p`, `H_h = qp`.
pub fn borel_quartic_system() -> HamiltonianSystem<Rational> {
    let mut g = LieAlgebra::new(labels(&["e", "h"])).expect("labels");
    g.set_bracket(1, 0, 0, q(2, 1));
    let h = vec![poly(&[(q(1, 2), [2, 0]), (q(1, 1), [3, 1])]), poly(&[(q(1, 1), [1, 1])])];
    HamiltonianSystem::new(g, canonical_plane(), h).expect("consistent")
}

/// Abelian `span{e}` with `H_e = 0`.
pub fn zero_system() -> HamiltonianSystem<Rational> {
    let g = LieAlgebra::new(labels(&["e"])).expect("labels");
    HamiltonianSystem::new(g, canonical_plane(), vec![Polynomial::zero(2)]).expect("consistent")
}

pub fn ho1_linfty() -> LInftyAlgebra<Rational> {
    build_linfty(&ho1_system(), Normalization::Factorial).expect("HO1 is valid")
}

pub fn ho2_linfty() -> LInftyAlgebra<Rational> {
    build_linfty(&ho2_system(), Normalization::Factorial).expect("HO2 is valid")
}

pub fn sl2q_linfty() -> LInftyAlgebra<Rational> {
    build_linfty(&sl2q_system(), Normalization::Factorial).expect("SL2Q is valid")
}

/// [`ho1_linfty`] as a Z-graded DGLA on `e, q, p, e*`.
pub fn ho1_dgla() -> DglAlgebra<Rational> {
    ho1_linfty().to_dgla().expect("HO1 has no higher brackets")
}
