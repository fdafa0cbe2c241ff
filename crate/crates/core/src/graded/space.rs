use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GradingKind {
    Z2,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_degree(degree: i64) -> Self {
        if degree.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn bit(self) -> u8 {
        self as u8
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn add(self, other: Parity) -> Self {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub degree: i64,
    pub labels: Vec<String>,
}

/// Finite-dimensional graded vector space with an ordered, labelled basis.
/// The basis is the concatenation of the components in the given order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedSpace {
    kind: GradingKind,
    components: Vec<Component>,
    #[serde(skip)]
    labels: Vec<String>,
    #[serde(skip)]
    degrees: Vec<i64>,
    #[serde(skip)]
    index: HashMap<String, usize>,
}

impl GradedSpace {
    pub fn new(kind: GradingKind, components: Vec<Component>) -> Result<Self> {
        let mut labels = Vec::new();
        let mut degrees = Vec::new();
        let mut index = HashMap::new();
        let mut seen_degrees = Vec::new();
        for c in &components {
            if kind == GradingKind::Z2 && !(c.degree == 0 || c.degree == 1) {
                return Err(Error::Input(format!(
                    "Z/2-graded component has degree {} (expected 0 or 1)",
                    c.degree
                )));
            }
            if seen_degrees.contains(&c.degree) {
                return Err(Error::Input(format!("degree {} listed twice", c.degree)));
            }
            seen_degrees.push(c.degree);
            for l in &c.labels {
                if l.is_empty() {
                    return Err(Error::Input("empty basis label".into()));
                }
                if index.insert(l.clone(), labels.len()).is_some() {
                    return Err(Error::Input(format!("basis label {l:?} is not unique")));
                }
                labels.push(l.clone());
                degrees.push(c.degree);
            }
        }
        Ok(Self { kind, components, labels, degrees, index })
    }

    /// Convenience constructor for a Z/2-graded space.
    pub fn super_space(even: &[&str], odd: &[&str]) -> Self {
        let owned = |v: &[&str]| v.iter().map(|s| s.to_string()).collect();
        Self::new(
            GradingKind::Z2,
            vec![
                Component { degree: 0, labels: owned(even) },
                Component { degree: 1, labels: owned(odd) },
            ],
        )
        .expect("static labels are unique")
    }

    pub fn kind(&self) -> GradingKind {
        self.kind
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::Input(format!("unknown basis label {label:?}")))
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn parity(&self, i: usize) -> Parity {
        Parity::of_degree(self.degrees[i])
    }

    pub fn parities(&self) -> Vec<Parity> {
        self.degrees.iter().map(|&d| Parity::of_degree(d)).collect()
    }

    pub fn indices_of_parity(&self, p: Parity) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity(i) == p).collect()
    }

    pub fn even_indices(&self) -> Vec<usize> {
        self.indices_of_parity(Parity::Even)
    }

    pub fn odd_indices(&self) -> Vec<usize> {
        self.indices_of_parity(Parity::Odd)
    }

    pub fn indices_of_degree(&self, degree: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == degree).collect()
    }

    /// Position of each basis vector in [`to_z2`](Self::to_z2), which lists
    /// the even vectors first.
    pub fn z2_permutation(&self) -> Vec<usize> {
        let mut perm = vec![0; self.dim()];
        for (new, old) in self.even_indices().into_iter().chain(self.odd_indices()).enumerate() {
            perm[old] = new;
        }
        perm
    }

    /// Same basis with the grading collapsed to Z/2.
    pub fn to_z2(&self) -> Self {
        let even = self.even_indices();
        let odd = self.odd_indices();
        let labels = |ix: &[usize]| ix.iter().map(|&i| self.labels[i].clone()).collect();
        Self::new(
            GradingKind::Z2,
            vec![
                Component { degree: 0, labels: labels(&even) },
                Component { degree: 1, labels: labels(&odd) },
            ],
        )
        .expect("labels were unique")
    }
}

/// Coefficient vector in a graded space.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedVector<S> {
    space: Arc<GradedSpace>,
    coeffs: Vec<S>,
}

impl<S: Scalar> GradedVector<S> {
    pub fn zero(space: &Arc<GradedSpace>) -> Self {
        Self { space: space.clone(), coeffs: vec![S::zero(); space.dim()] }
    }

    pub fn from_coeffs(space: &Arc<GradedSpace>, coeffs: Vec<S>) -> Result<Self> {
        if coeffs.len() != space.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector has {} coefficients, space has dimension {}",
                coeffs.len(),
                space.dim()
            )));
        }
        Ok(Self { space: space.clone(), coeffs })
    }

    pub fn basis(space: &Arc<GradedSpace>, i: usize) -> Self {
        let mut v = Self::zero(space);
        v.coeffs[i] = S::one();
        v
    }

    pub fn from_labels<'a>(
        space: &Arc<GradedSpace>,
        entries: impl IntoIterator<Item = (&'a str, S)>,
    ) -> Result<Self> {
        let mut v = Self::zero(space);
        for (label, c) in entries {
            let i = space.index_of(label)?;
            v.coeffs[i].add_assign_ref(&c);
        }
        Ok(v)
    }

    /// Embeds coordinates given on a subset of basis indices.
    pub fn from_sub(space: &Arc<GradedSpace>, indices: &[usize], values: &[S]) -> Self {
        let mut v = Self::zero(space);
        for (&i, c) in indices.iter().zip(values) {
            v.coeffs[i] = c.clone();
        }
        v
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn get(&self, label: &str) -> Result<&S> {
        Ok(&self.coeffs[self.space.index_of(label)?])
    }

    pub fn sub(&self, indices: &[usize]) -> Vec<S> {
        indices.iter().map(|&i| self.coeffs[i].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Parity of a homogeneous vector, `None` for the zero vector or mixed
    /// vectors.
    pub fn parity(&self) -> Option<Parity> {
        let mut found = None;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = self.space.parity(i);
            match found {
                None => found = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        found
    }

    /// `true` if every nonzero coefficient sits on a basis vector of parity `p`.
    pub fn has_parity(&self, p: Parity) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || self.space.parity(i) == p)
    }

    pub fn require_parity(&self, p: Parity, what: &str) -> Result<()> {
        if self.has_parity(p) {
            Ok(())
        } else {
            Err(Error::Parity(format!("{what} must be {p}")))
        }
    }

    pub fn norm_inf(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs_f64()).fold(0.0, f64::max)
    }

    pub fn add(&self, other: &Self) -> Self {
        let coeffs =
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect();
        Self { space: self.space.clone(), coeffs }
    }

    pub fn sub_vec(&self, other: &Self) -> Self {
        let coeffs =
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() - b.clone()).collect();
        Self { space: self.space.clone(), coeffs }
    }

    pub fn scale(&self, s: &S) -> Self {
        Self { space: self.space.clone(), coeffs: self.coeffs.iter().map(|c| c.mul_ref(s)).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { space: self.space.clone(), coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    /// Human-readable form such as `2*q - 1/2*e*`.
    pub fn display(&self) -> String {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{}*{}", c, self.space.label(i)))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn rejects_duplicate_labels_and_degrees() {
        let c = |d, l: &[&str]| Component { degree: d, labels: l.iter().map(|s| s.to_string()).collect() };
        assert!(GradedSpace::new(GradingKind::Z, vec![c(0, &["a"]), c(1, &["a"])]).is_err());
        assert!(GradedSpace::new(GradingKind::Z, vec![c(0, &["a"]), c(0, &["b"])]).is_err());
        assert!(GradedSpace::new(GradingKind::Z2, vec![c(2, &["a"])]).is_err());
        let s = GradedSpace::new(GradingKind::Z, vec![c(-1, &["a"]), c(2, &["b", "c"])]).unwrap();
        assert_eq!(s.dim(), 3);
        assert_eq!(s.parity(0), Parity::Odd);
        assert_eq!(s.even_indices(), vec![1, 2]);
        assert_eq!(s.to_z2().labels(), &["b", "c", "a"]);
    }

    #[test]
    fn homogeneous_parity() {
        let s = Arc::new(GradedSpace::super_space(&["b"], &["y1", "y2"]));
        let v = GradedVector::<Rational>::from_labels(&s, [("y1", Rational::from_i64(2))]).unwrap();
        assert_eq!(v.parity(), Some(Parity::Odd));
        let w = v.add(&GradedVector::basis(&s, 0));
        assert_eq!(w.parity(), None);
        assert!(GradedVector::<Rational>::zero(&s).has_parity(Parity::Odd));
        assert!(GradedVector::<Rational>::from_labels(&s, [("x", Rational::from_i64(1))]).is_err());
    }
}
