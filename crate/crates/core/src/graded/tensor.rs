use std::sync::Arc;

use serde::Serialize;

use super::koszul::{antisymmetric_sign, permutations, symmetric_sign};
use super::scalar::Scalar;
use super::space::{GradedSpace, GradedVector, GradingKind, Parity};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Symmetry {
    None,
    /// `l(.., x, y, ..) = -(-1)^{|x||y|} l(.., y, x, ..)`
    Antisymmetric,
    /// `l(.., x, y, ..) = (-1)^{|x||y|} l(.., y, x, ..)`
    Symmetric,
}

/// Dense multilinear map `input^{⊗k} → output`.
///
/// Entry `(i_1, .., i_k)` stores the output column `l(e_{i_1}, .., e_{i_k})`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureTensor<S> {
    input: Arc<GradedSpace>,
    output: Arc<GradedSpace>,
    arity: usize,
    shift: i64,
    symmetry: Symmetry,
    coeffs: Vec<S>,
}

impl<S: Scalar> StructureTensor<S> {
    pub fn zeros(
        input: &Arc<GradedSpace>,
        output: &Arc<GradedSpace>,
        arity: usize,
        shift: i64,
        symmetry: Symmetry,
    ) -> Self {
        assert!(arity >= 1, "structure tensors have arity at least 1");
        let len = input.dim().pow(arity as u32) * output.dim();
        Self {
            input: input.clone(),
            output: output.clone(),
            arity,
            shift,
            symmetry,
            coeffs: vec![S::zero(); len],
        }
    }

    pub fn input(&self) -> &Arc<GradedSpace> {
        &self.input
    }

    pub fn output(&self) -> &Arc<GradedSpace> {
        &self.output
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn parity(&self) -> Parity {
        Parity::of_degree(self.shift)
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    fn offset(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.arity);
        let n = self.input.dim();
        tuple.iter().fold(0, |acc, &i| acc * n + i) * self.output.dim()
    }

    fn check_tuple(&self, tuple: &[usize]) -> Result<()> {
        if tuple.len() != self.arity {
            return Err(Error::Input(format!(
                "tensor of arity {} given {} arguments",
                self.arity,
                tuple.len()
            )));
        }
        if let Some(&i) = tuple.iter().find(|&&i| i >= self.input.dim()) {
            return Err(Error::Input(format!("basis index {i} out of range")));
        }
        Ok(())
    }

    /// Output column for a tuple of basis indices.
    pub fn column(&self, tuple: &[usize]) -> &[S] {
        let o = self.offset(tuple);
        &self.coeffs[o..o + self.output.dim()]
    }

    pub fn entry(&self, tuple: &[usize], out: usize) -> &S {
        &self.coeffs[self.offset(tuple) + out]
    }

    pub fn set(&mut self, tuple: &[usize], out: usize, value: S) -> Result<()> {
        self.check_tuple(tuple)?;
        if out >= self.output.dim() {
            return Err(Error::Input(format!("output index {out} out of range")));
        }
        let o = self.offset(tuple);
        self.coeffs[o + out] = value;
        Ok(())
    }

    pub fn set_column(&mut self, tuple: &[usize], column: &[S]) -> Result<()> {
        self.check_tuple(tuple)?;
        if column.len() != self.output.dim() {
            return Err(Error::DimensionMismatch("output column length".into()));
        }
        let o = self.offset(tuple);
        self.coeffs[o..o + column.len()].clone_from_slice(column);
        Ok(())
    }

    /// Sets the column for `tuple` and for every permutation of it, with the
    /// sign dictated by the declared symmetry. Fails if the requested value
    /// is incompatible with the symmetry (e.g. `[x, x] ≠ 0` for even `x`).
    pub fn set_symmetric(&mut self, tuple: &[usize], column: &[S]) -> Result<()> {
        self.check_tuple(tuple)?;
        if self.symmetry == Symmetry::None {
            return self.set_column(tuple, column);
        }
        let parities: Vec<Parity> = tuple.iter().map(|&i| self.input.parity(i)).collect();
        let mut written: Vec<(Vec<usize>, Vec<S>)> = Vec::new();
        for perm in permutations(self.arity) {
            let sign = self.permutation_sign(&perm, &parities);
            let mut target = vec![0; self.arity];
            for (i, &slot) in perm.iter().enumerate() {
                target[slot] = tuple[i];
            }
            let value: Vec<S> = column.iter().map(|c| if sign < 0 { -c.clone() } else { c.clone() }).collect();
            if let Some((_, prev)) = written.iter().find(|(t, _)| *t == target) {
                if *prev != value {
                    return Err(Error::Input(format!(
                        "value at {} is incompatible with the declared symmetry",
                        self.tuple_label(tuple)
                    )));
                }
                continue;
            }
            self.set_column(&target, &value)?;
            written.push((target, value));
        }
        Ok(())
    }

    fn permutation_sign(&self, perm: &[usize], parities: &[Parity]) -> i8 {
        match self.symmetry {
            Symmetry::None => 1,
            Symmetry::Antisymmetric => antisymmetric_sign(perm, parities),
            Symmetry::Symmetric => symmetric_sign(perm, parities),
        }
    }

    pub fn tuple_label(&self, tuple: &[usize]) -> String {
        let names: Vec<&str> = tuple.iter().map(|&i| self.input.label(i)).collect();
        format!("({})", names.join(", "))
    }

    /// Multilinear evaluation on coefficient vectors of the input space.
    pub fn apply(&self, args: &[&[S]]) -> Vec<S> {
        assert_eq!(args.len(), self.arity, "arity mismatch");
        let m = self.output.dim();
        let mut out = vec![S::zero(); m];
        let support: Vec<Vec<usize>> = args
            .iter()
            .map(|a| (0..a.len()).filter(|&i| !a[i].is_zero()).collect())
            .collect();
        if support.iter().any(|s| s.is_empty()) {
            return out;
        }
        let mut pos = vec![0usize; self.arity];
        let mut tuple = vec![0usize; self.arity];
        loop {
            let mut coeff = S::one();
            for k in 0..self.arity {
                tuple[k] = support[k][pos[k]];
                coeff = coeff.mul_ref(&args[k][tuple[k]]);
            }
            let col = self.column(&tuple);
            for (o, c) in out.iter_mut().zip(col) {
                if !c.is_zero() {
                    o.add_product(&coeff, c);
                }
            }
            let mut k = self.arity;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                pos[k] += 1;
                if pos[k] < support[k].len() {
                    break;
                }
                pos[k] = 0;
            }
        }
    }

    pub fn apply_vectors(&self, args: &[&GradedVector<S>]) -> Result<GradedVector<S>> {
        if args.len() != self.arity {
            return Err(Error::Input(format!(
                "tensor of arity {} applied to {} arguments",
                self.arity,
                args.len()
            )));
        }
        for a in args {
            if **a.space() != *self.input {
                return Err(Error::Input("argument does not belong to the input space".into()));
            }
        }
        let slices: Vec<&[S]> = args.iter().map(|a| a.coeffs()).collect();
        GradedVector::from_coeffs(&self.output, self.apply(&slices))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// All basis tuples `0..dim^arity` in lexicographic order.
    pub fn tuples(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        tuples(self.input.dim(), self.arity)
    }

    /// Nonzero entries as `(tuple, output index, value)`.
    pub fn nonzero_entries(&self) -> Vec<(Vec<usize>, usize, S)> {
        let mut out = Vec::new();
        for t in self.tuples() {
            for (o, c) in self.column(&t).iter().enumerate() {
                if !c.is_zero() {
                    out.push((t.clone(), o, c.clone()));
                }
            }
        }
        out
    }

    /// First tuple violating the declared symmetry under an adjacent
    /// transposition (adjacent transpositions generate all permutations).
    pub fn symmetry_violation(&self) -> Option<String> {
        if self.symmetry == Symmetry::None || self.arity < 2 {
            return None;
        }
        for t in self.tuples() {
            for k in 0..self.arity - 1 {
                let mut swapped = t.clone();
                swapped.swap(k, k + 1);
                let odd = self.input.parity(t[k]).is_odd() && self.input.parity(t[k + 1]).is_odd();
                let mut sign: i8 = if odd { -1 } else { 1 };
                if self.symmetry == Symmetry::Antisymmetric {
                    sign = -sign;
                }
                let a = self.column(&t);
                let b = self.column(&swapped);
                let bad = a.iter().zip(b).any(|(x, y)| {
                    let expect = if sign < 0 { -y.clone() } else { y.clone() };
                    let diff = x.clone() - expect;
                    !diff.is_negligible(1.0)
                });
                if bad {
                    return Some(format!(
                        "{} vs {}",
                        self.tuple_label(&t),
                        self.tuple_label(&swapped)
                    ));
                }
            }
        }
        None
    }

    /// First nonzero entry whose output degree (or parity) is not the sum of
    /// the input degrees plus the shift.
    pub fn degree_violation(&self) -> Option<String> {
        let graded_z = self.input.kind() == GradingKind::Z && self.output.kind() == GradingKind::Z;
        for t in self.tuples() {
            let total: i64 = t.iter().map(|&i| self.input.degree(i)).sum::<i64>() + self.shift;
            for (o, c) in self.column(&t).iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let ok = if graded_z {
                    self.output.degree(o) == total
                } else {
                    self.output.parity(o) == Parity::of_degree(total)
                };
                if !ok {
                    return Some(format!(
                        "{} has a component along {}",
                        self.tuple_label(&t),
                        self.output.label(o)
                    ));
                }
            }
        }
        None
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> StructureTensor<T> {
        StructureTensor {
            input: self.input.clone(),
            output: self.output.clone(),
            arity: self.arity,
            shift: self.shift,
            symmetry: self.symmetry,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Same coefficients over different (but equally sized) spaces, e.g. a
    /// regraded copy of the input space.
    pub fn rebase(&self, input: &Arc<GradedSpace>, output: &Arc<GradedSpace>, shift: i64) -> Result<Self> {
        if input.dim() != self.input.dim() || output.dim() != self.output.dim() {
            return Err(Error::DimensionMismatch("rebase needs equal dimensions".into()));
        }
        Ok(Self {
            input: input.clone(),
            output: output.clone(),
            arity: self.arity,
            shift,
            symmetry: self.symmetry,
            coeffs: self.coeffs.clone(),
        })
    }

    /// Same tensor in a reordered basis: basis vector `i` becomes `perm[i]`
    /// in `space`, which serves as both input and output.
    pub fn permuted(&self, space: &Arc<GradedSpace>, shift: i64, perm: &[usize]) -> Result<Self> {
        if space.dim() != self.input.dim() || space.dim() != self.output.dim() || perm.len() != space.dim() {
            return Err(Error::DimensionMismatch("permuted needs equal dimensions".into()));
        }
        let mut t = Self::zeros(space, space, self.arity, shift, self.symmetry);
        for (tuple, o, c) in self.nonzero_entries() {
            let moved: Vec<usize> = tuple.iter().map(|&i| perm[i]).collect();
            t.set(&moved, perm[o], c)?;
        }
        Ok(t)
    }

    /// Adds `delta` to a single stored coefficient without touching its
    /// symmetric partners.
    pub fn perturb(&mut self, tuple: &[usize], out: usize, delta: &S) {
        let o = self.offset(tuple) + out;
        self.coeffs[o].add_assign_ref(delta);
    }
}

/// Evaluates `t` with the given tensor, or returns an error naming both.
pub fn apply_tensor<S: Scalar>(t: &StructureTensor<S>, args: &[&GradedVector<S>]) -> Result<GradedVector<S>> {
    t.apply_vectors(args)
}

pub(crate) fn tuples(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.pow(k as u32);
    (0..total).map(move |mut flat| {
        let mut t = vec![0; k];
        for slot in (0..k).rev() {
            t[slot] = flat % n;
            flat /= n;
        }
        t
    })
}

/// Non-decreasing tuples of length `k` over `0..n`.
pub(crate) fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::koszul::koszul_sign;
    use crate::graded::koszul::permutation_sign;
    use crate::Rational;
    use proptest::prelude::*;

    fn r(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn space() -> Arc<GradedSpace> {
        Arc::new(GradedSpace::super_space(&["a", "b"], &["x", "y"]))
    }

    #[test]
    fn antisymmetric_fill_and_apply() {
        let s = space();
        let mut t = StructureTensor::<Rational>::zeros(&s, &s, 2, 0, Symmetry::Antisymmetric);
        // [x, y] = a, odd/odd so [y, x] = a as well
        t.set_symmetric(&[2, 3], &[r(1), r(0), r(0), r(0)]).unwrap();
        assert_eq!(t.column(&[3, 2]), &[r(1), r(0), r(0), r(0)]);
        // [a, x] = y gives [x, a] = -y
        t.set_symmetric(&[0, 2], &[r(0), r(0), r(0), r(1)]).unwrap();
        assert_eq!(t.column(&[2, 0])[3], r(-1));
        assert!(t.symmetry_violation().is_none());
        assert!(t.degree_violation().is_none());
        // [a, a] must vanish
        assert!(t.set_symmetric(&[0, 0], &[r(1), r(0), r(0), r(0)]).is_err());

        let u = GradedVector::from_coeffs(&s, vec![r(0), r(0), r(2), r(1)]).unwrap();
        let v = t.apply_vectors(&[&u, &u]).unwrap();
        // [2x + y, 2x + y] = 2*2[x,y]
        assert_eq!(v.coeffs(), &[r(4), r(0), r(0), r(0)]);
    }

    #[test]
    fn zero_tensor_gives_zero() {
        let s = space();
        let t = StructureTensor::<Rational>::zeros(&s, &s, 3, 1, Symmetry::Antisymmetric);
        let u = GradedVector::from_coeffs(&s, vec![r(1), r(2), r(3), r(4)]).unwrap();
        assert!(apply_tensor(&t, &[&u, &u, &u]).unwrap().is_zero());
        assert!(apply_tensor(&t, &[&u, &u]).is_err());
    }

    #[test]
    fn symmetric_even_arguments_commute() {
        let s = space();
        let mut t = StructureTensor::<Rational>::zeros(&s, &s, 2, 0, Symmetry::Symmetric);
        t.set_symmetric(&[0, 1], &[r(1), r(2), r(0), r(0)]).unwrap();
        let v = GradedVector::from_coeffs(&s, vec![r(1), r(3), r(0), r(0)]).unwrap();
        let w = GradedVector::from_coeffs(&s, vec![r(2), r(-1), r(0), r(0)]).unwrap();
        assert_eq!(t.apply_vectors(&[&v, &w]).unwrap(), t.apply_vectors(&[&w, &v]).unwrap());
    }

    #[test]
    fn degree_violation_reported() {
        let s = space();
        let mut t = StructureTensor::<Rational>::zeros(&s, &s, 2, 0, Symmetry::None);
        t.set(&[0, 2], 0, r(1)).unwrap();
        assert!(t.degree_violation().unwrap().contains("(a, x)"));
    }

    proptest! {
        // Every permutation of a filled antisymmetric tensor of arity 3 obeys
        // l(x_σ) = sgn(σ)·koszul(σ)·l(x), checked against the public sign
        // functions.
        #[test]
        fn antisymmetric_permutations(t0 in 0usize..4, t1 in 0usize..4, t2 in 0usize..4, v in -3i64..4) {
            let s = space();
            let mut t = StructureTensor::<Rational>::zeros(&s, &s, 3, 1, Symmetry::Antisymmetric);
            let tuple = [t0, t1, t2];
            let col = vec![r(v), r(0), r(0), r(0)];
            if t.set_symmetric(&tuple, &col).is_err() {
                return Ok(());
            }
            prop_assert!(t.symmetry_violation().is_none());
            let par: Vec<Parity> = tuple.iter().map(|&i| s.parity(i)).collect();
            for perm in permutations(3) {
                let mut target = [0; 3];
                for (i, &slot) in perm.iter().enumerate() {
                    target[slot] = tuple[i];
                }
                let sign = permutation_sign(&perm).unwrap() * koszul_sign(&perm, &par).unwrap();
                let expect = if sign < 0 { -r(v) } else { r(v) };
                prop_assert_eq!(t.entry(&target, 0), &expect);
            }
        }
    }
}
