//! The classical BRST differential on `Λ𝔤* ⊗ Λ𝔤 ⊗ Sym V*`.
//!
//! Generators: odd ghosts `c^a` (ghost number +1), odd antighosts `t_a`
//! (ghost number −1) and even coordinates `v_k` (ghost number 0). On
//! generators
//!
//! ```text
//! δc^a = −½ Σ f^a_{bc} c^b c^c
//! δv_k = Σ_a c^a {H_a, v_k}
//! δt_b = H_b + Σ f^c_{ab} c^a t_c
//! ```
//!
//! and `δ` is extended as an odd derivation.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Write;

use super::polynomial::Polynomial;
use super::system::{poisson_bracket, HamiltonianSystem};
use crate::error::{Error, Result};
use crate::graded::Scalar;
use crate::report::ValidationReport;

/// Monomial `o_1 ⋯ o_r · v^e` with the odd generators in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BrstMonomial {
    pub odd: Vec<usize>,
    pub even: Vec<u32>,
}

impl BrstMonomial {
    pub fn degree(&self) -> usize {
        self.odd.len() + self.even.iter().sum::<u32>() as usize
    }
}

/// Element of the free graded-commutative algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct BrstElement<S> {
    terms: BTreeMap<BrstMonomial, S>,
}

impl<S: Scalar> BrstElement<S> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BrstMonomial, &S)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(BrstMonomial::degree).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: BrstMonomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    fn add_assign(&mut self, other: &Self, scale: &S) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.mul_ref(scale));
        }
    }
}

/// Generators are numbered `c^a` (0..n), `t_a` (n..2n), `v_k` (2n..2n+m).
#[derive(Debug, Clone, PartialEq)]
pub struct BrstAlgebra<S> {
    lie: usize,
    vars: usize,
    labels: Vec<String>,
    images: Vec<BrstElement<S>>,
    cap: usize,
}

impl<S: Scalar> BrstAlgebra<S> {
    pub fn generator_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn ghost_number(&self, g: usize) -> i64 {
        if g < self.lie {
            1
        } else if g < 2 * self.lie {
            -1
        } else {
            0
        }
    }

    pub fn is_odd(&self, g: usize) -> bool {
        g < 2 * self.lie
    }

    /// The generator itself as an element.
    pub fn generator(&self, g: usize) -> BrstElement<S> {
        let mut e = BrstElement::zero();
        e.add_term(self.monomial_of(g), S::one());
        e
    }

    fn monomial_of(&self, g: usize) -> BrstMonomial {
        let mut even = vec![0; self.vars];
        if self.is_odd(g) {
            BrstMonomial { odd: vec![g], even }
        } else {
            even[g - 2 * self.lie] = 1;
            BrstMonomial { odd: vec![], even }
        }
    }

    pub fn image(&self, g: usize) -> &BrstElement<S> {
        &self.images[g]
    }

    fn ghost_of(&self, m: &BrstMonomial) -> i64 {
        m.odd.iter().map(|&g| self.ghost_number(g)).sum()
    }

    fn check_cap(&self, m: &BrstMonomial) -> Result<()> {
        if m.degree() > self.cap {
            return Err(Error::CapExceeded { cap: self.cap, required: m.degree() });
        }
        Ok(())
    }

    /// Product of two monomials with its Koszul sign, or `None` if an odd
    /// generator repeats.
    fn mul_monomials(a: &BrstMonomial, b: &BrstMonomial) -> Option<(BrstMonomial, bool)> {
        let mut odd = a.odd.clone();
        let mut negative = false;
        for &g in &b.odd {
            if odd.contains(&g) {
                return None;
            }
            // g moves left past every larger generator already present
            let larger = odd.iter().filter(|&&h| h > g).count();
            negative ^= larger % 2 == 1;
            let pos = odd.partition_point(|&h| h < g);
            odd.insert(pos, g);
        }
        let even = a.even.iter().zip(&b.even).map(|(x, y)| x + y).collect();
        Some((BrstMonomial { odd, even }, negative))
    }

    pub fn mul(&self, x: &BrstElement<S>, y: &BrstElement<S>) -> Result<BrstElement<S>> {
        let mut out = BrstElement::zero();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                if let Some((m, neg)) = Self::mul_monomials(a, b) {
                    self.check_cap(&m)?;
                    let c = ca.mul_ref(cb);
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    fn delta_monomial(&self, m: &BrstMonomial) -> Result<BrstElement<S>> {
        let mut out = BrstElement::zero();
        let r = m.odd.len();
        // odd factors: δ(o_1⋯o_r) = Σ (−1)^{i} o_1⋯δ(o_i)⋯o_r
        for i in 0..r {
            let left = BrstMonomial { odd: m.odd[..i].to_vec(), even: vec![0; self.vars] };
            let right = BrstMonomial { odd: m.odd[i + 1..].to_vec(), even: m.even.clone() };
            let mut l = BrstElement::zero();
            l.add_term(left, S::one());
            let mut rt = BrstElement::zero();
            rt.add_term(right, S::one());
            let term = self.mul(&self.mul(&l, &self.images[m.odd[i]])?, &rt)?;
            out.add_assign(&term, &S::signed(if i % 2 == 1 { -1 } else { 1 }));
        }
        // even factors sit to the right of all odd ones
        let sign = S::signed(if r % 2 == 1 { -1 } else { 1 });
        for k in 0..self.vars {
            let e = m.even[k];
            if e == 0 {
                continue;
            }
            let mut rest = m.clone();
            rest.even[k] -= 1;
            let mut base = BrstElement::zero();
            base.add_term(rest, S::from_i64(e as i64));
            let term = self.mul(&base, &self.images[2 * self.lie + k])?;
            out.add_assign(&term, &sign);
        }
        Ok(out)
    }

    /// `δ` extended as an odd derivation.
    pub fn delta(&self, x: &BrstElement<S>) -> Result<BrstElement<S>> {
        let mut out = BrstElement::zero();
        for (m, c) in &x.terms {
            out.add_assign(&self.delta_monomial(m)?, c);
        }
        Ok(out)
    }

    pub fn display(&self, x: &BrstElement<S>) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in &x.terms {
            let mut s = c.to_string();
            for &g in &m.odd {
                let _ = write!(s, "*{}", self.labels[g]);
            }
            for (k, &e) in m.even.iter().enumerate() {
                match e {
                    0 => {}
                    1 => {
                        let _ = write!(s, "*{}", self.labels[2 * self.lie + k]);
                    }
                    _ => {
                        let _ = write!(s, "*{}^{e}", self.labels[2 * self.lie + k]);
                    }
                }
            }
            parts.push(s);
        }
        parts.join(" + ")
    }
}

/// Default degree cap `2·(max deg H) + 2`.
pub fn default_cap<S: Scalar>(s: &HamiltonianSystem<S>) -> usize {
    2 * s.max_degree() as usize + 2
}

/// Builds the generator images of `δ`. Returns `CapExceeded` when an image
/// has degree above `cap`.
pub fn build_brst<S: Scalar>(s: &HamiltonianSystem<S>, cap: usize) -> Result<BrstAlgebra<S>> {
    let g = s.algebra();
    let (n, m) = (g.dim(), s.symplectic().dim());
    let mut labels: Vec<String> = g.labels().iter().map(|a| format!("c^{a}")).collect();
    labels.extend(g.labels().iter().map(|a| format!("t_{a}")));
    labels.extend(s.symplectic().labels().iter().map(|v| format!("v_{v}")));
    let mut alg = BrstAlgebra { lie: n, vars: m, labels, images: Vec::new(), cap };
    let zero_even = vec![0u32; m];
    let half = S::from_ratio(1, 2);
    let mut images = Vec::with_capacity(2 * n + m);

    for a in 0..n {
        let mut img = BrstElement::zero();
        for b in 0..n {
            for c in 0..n {
                let f = g.constant(b, c, a);
                if f.is_zero() || b == c {
                    continue;
                }
                let (lo, hi, neg) = if b < c { (b, c, false) } else { (c, b, true) };
                let coef = -(f.mul_ref(&half));
                img.add_term(BrstMonomial { odd: vec![lo, hi], even: zero_even.clone() }, if neg { -coef } else { coef });
            }
        }
        images.push(img);
    }
    for b in 0..n {
        let mut img = BrstElement::zero();
        for (e, c) in s.hamiltonian(b).terms() {
            img.add_term(BrstMonomial { odd: vec![], even: e.clone() }, c.clone());
        }
        for a in 0..n {
            for c in 0..n {
                let f = g.constant(a, b, c);
                if f.is_zero() {
                    continue;
                }
                // c^a t_c with a < n ≤ n + c already ordered
                img.add_term(BrstMonomial { odd: vec![a, n + c], even: zero_even.clone() }, f.clone());
            }
        }
        images.push(img);
    }
    for k in 0..m {
        let mut img = BrstElement::zero();
        let vk = Polynomial::var(m, k);
        for a in 0..n {
            let p = poisson_bracket(s.symplectic(), s.hamiltonian(a), &vk);
            for (e, c) in p.terms() {
                img.add_term(BrstMonomial { odd: vec![a], even: e.clone() }, c.clone());
            }
        }
        images.push(img);
    }
    for img in &images {
        for mono in img.terms.keys() {
            alg.check_cap(mono)?;
        }
    }
    alg.images = images;
    Ok(alg)
}

/// Ghost number and parity of every generator image, and `δ(δ(g)) = 0` for
/// every generator `g`, expanded exactly up to the degree cap.
pub fn check_brst_square_zero<S: Scalar>(b: &BrstAlgebra<S>) -> Result<ValidationReport> {
    let count = b.generator_count();
    let mut r = ValidationReport::new();
    let ghost = (0..count).find_map(|g| {
        b.images[g]
            .terms
            .keys()
            .find(|m| b.ghost_of(m) != b.ghost_number(g) + 1)
            .map(|m| format!("δ{} has a term of ghost number {}", b.labels[g], b.ghost_of(m)))
    });
    r.push("ghost_number", count as u64, ghost);
    let parity = (0..count).find_map(|g| {
        b.images[g]
            .terms
            .keys()
            .find(|m| (m.odd.len() % 2 == 1) == b.is_odd(g))
            .map(|_| format!("δ{} is not of opposite parity", b.labels[g]))
    });
    r.push("parity", count as u64, parity);
    let mut witness = None;
    for g in 0..count {
        let sq = b.delta(&b.images[g])?;
        if !sq.is_zero() {
            witness = Some(format!("δ²{} = {}", b.labels[g], b.display(&sq)));
            break;
        }
    }
    r.push("square_zero", count as u64, witness);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn ho1_images() {
        let s = catalog::ho1_system();
        let b = build_brst(&s, default_cap(&s)).unwrap();
        assert_eq!(b.labels(), &["c^e", "t_e", "v_q", "v_p"]);
        // δt_e = qp
        assert_eq!(b.display(b.image(1)), "1*v_q*v_p");
        assert!(b.image(0).is_zero());
        // δv_q = c^e {qp, q} = c^e q
        assert_eq!(b.display(b.image(2)), "1*c^e*v_q");
        assert!(check_brst_square_zero(&b).unwrap().all_passed());
    }

    #[test]
    fn derivation_rule() {
        let s = catalog::sl2q_system();
        let b = build_brst(&s, 6).unwrap();
        // δ(xy) = δx·y + (−1)^{|x|} x·δy on a few pairs of generators
        for x in 0..b.generator_count() {
            for y in 0..b.generator_count() {
                let (gx, gy) = (b.generator(x), b.generator(y));
                let lhs = b.delta(&b.mul(&gx, &gy).unwrap()).unwrap();
                let mut rhs = b.mul(b.image(x), &gy).unwrap();
                let second = b.mul(&gx, b.image(y)).unwrap();
                rhs.add_assign(&second, &if b.is_odd(x) { q(-1, 1) } else { q(1, 1) });
                assert_eq!(lhs, rhs, "{} {}", b.labels()[x], b.labels()[y]);
            }
        }
    }

    #[test]
    fn zero_system_and_cap() {
        let s = catalog::zero_system();
        let b = build_brst(&s, default_cap(&s)).unwrap();
        assert!((0..b.generator_count()).all(|g| b.image(g).is_zero()));
        assert!(check_brst_square_zero(&b).unwrap().all_passed());
        let s = catalog::ho2_system();
        assert!(matches!(build_brst(&s, 2), Err(Error::CapExceeded { cap: 2, required: 3 })));
        let b = build_brst(&s, 3).unwrap();
        assert!(matches!(check_brst_square_zero(&b), Err(Error::CapExceeded { cap: 3, .. })));
        assert!(check_brst_square_zero(&build_brst(&s, default_cap(&s)).unwrap()).unwrap().all_passed());
    }

    #[test]
    fn mutations_are_detected() {
        let mut s = catalog::ho1_system();
        s.algebra_mut().set_constant(0, 0, 0, q(1, 1));
        let r = check_brst_square_zero(&build_brst(&s, 6).unwrap()).unwrap();
        assert!(!r.passed("square_zero"));

        let mut s = catalog::sl2q_system();
        // [e,f] = 2h instead of h
        s.algebra_mut().set_bracket(0, 1, 2, q(2, 1));
        let r = check_brst_square_zero(&build_brst(&s, 6).unwrap()).unwrap();
        assert!(!r.passed("square_zero"));

        let mut s = catalog::sl2q_system();
        s.set_hamiltonian(0, Polynomial::var(2, 0).mul(&Polynomial::var(2, 0))).unwrap();
        let r = check_brst_square_zero(&build_brst(&s, 6).unwrap()).unwrap();
        assert!(!r.passed("square_zero"));
    }
}
