//! Sparse commutative polynomials in a fixed number of variables.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graded::Scalar;

/// Polynomial with exponent-vector keys; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<S> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, S>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: S) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, S::one())
    }

    pub fn monomial(exponents: Vec<u32>, c: S) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs, summing
    /// repeated monomials.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (S, Vec<u32>)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (c, e) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch(format!(
                    "monomial has {} exponents, expected {nvars}",
                    e.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: S) {
        debug_assert_eq!(exponents.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exponents) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &S)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> S {
        self.terms.get(exponents).cloned().unwrap_or_else(S::zero)
    }

    pub fn constant_term(&self) -> S {
        self.coefficient(&vec![0; self.nvars])
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn homogeneous_part(&self, k: u32) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(e, _)| e.iter().sum::<u32>() == k).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    pub fn is_homogeneous(&self, k: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == k)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c.mul_ref(s));
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1.mul_ref(c2));
            }
        }
        p
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            p.add_term(e2, c.mul_ref(&S::from_i64(e[i] as i64)));
        }
        p
    }

    pub fn eval(&self, x: &[S]) -> S {
        let mut total = S::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    m = m.mul_ref(xi);
                }
            }
            total.add_assign_ref(&m);
        }
        total
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Polynomial<T> {
        let mut p = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), f(c));
        }
        p
    }

    /// Text form using the given variable names, e.g. `1/2*q^2 + q^3*p`.
    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            if !c.is_one() || e.iter().all(|&k| k == 0) {
                factors.push(c.to_string());
            }
            for (name, &k) in names.iter().zip(e) {
                match k {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{k}")),
                }
            }
            out.push(factors.join("*"));
        }
        out.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn arithmetic() {
        let x = Polynomial::<Rational>::var(2, 0);
        let y = Polynomial::<Rational>::var(2, 1);
        let p = x.mul(&x).mul(&y); // x²y
        assert_eq!(p.degree(), Some(3));
        assert_eq!(p.derivative(0), x.mul(&y).scale(&q(2)));
        assert_eq!(p.eval(&[q(2), q(3)]), q(12));
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.add(&Polynomial::constant(2, q(1))).constant_term(), q(1));
        assert!(p.is_homogeneous(3));
        assert_eq!(p.display(&["q".into(), "p".into()]), "q^2*p");
    }

    proptest! {
        #[test]
        fn product_rule(a in prop::collection::vec(-3i64..4, 6), b in prop::collection::vec(-3i64..4, 6)) {
            let mk = |c: &[i64]| {
                Polynomial::from_terms(2, [
                    (q(c[0]), vec![0, 0]), (q(c[1]), vec![1, 0]), (q(c[2]), vec![0, 1]),
                    (q(c[3]), vec![2, 0]), (q(c[4]), vec![1, 1]), (q(c[5]), vec![0, 2]),
                ]).unwrap()
            };
            let (f, g) = (mk(&a), mk(&b));
            for i in 0..2 {
                let lhs = f.mul(&g).derivative(i);
                let rhs = f.derivative(i).mul(&g).add(&f.mul(&g.derivative(i)));
                prop_assert_eq!(lhs, rhs);
            }
            prop_assert_eq!(f.mul(&g).eval(&[q(2), q(-1)]), f.eval(&[q(2), q(-1)]) * g.eval(&[q(2), q(-1)]));
        }
    }
}
