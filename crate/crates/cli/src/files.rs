//! JSON input formats. Coefficients are exact rational strings such as
//! `"3"`, `"-1/2"` or `"0.25"`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use mcred::dgla::{BilinearForm, DglAlgebra};
use mcred::graded::{format_rational, parse_rational, Component};
use mcred::hamiltonian::{HamiltonianSystem, LieAlgebra, Polynomial, SymplecticSpace};
use mcred::linfty::LInftyAlgebra;
use mcred::{GradedSpace, GradingKind, Matrix, Rational, Scalar, StructureTensor, Symmetry};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    Dgla,
    Linfty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Grading {
    Z2,
    Z,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentEntry {
    pub degree: i64,
    pub basis: Vec<String>,
}

/// `d(input) = Σ output[label] · label`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImageEntry {
    pub input: String,
    pub output: BTreeMap<String, String>,
}

/// One bracket value; the other orderings of `inputs` follow from graded
/// antisymmetry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub arity: usize,
    pub inputs: Vec<String>,
    pub output: BTreeMap<String, String>,
}

/// One form entry; the transposed entry follows from graded symmetry
/// (or antisymmetry, for `ω`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormEntry {
    pub row: String,
    pub col: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub schema_version: u32,
    pub kind: AlgebraKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub grading: Grading,
    pub components: Vec<ComponentEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub differential: Vec<ImageEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bilinear_form: Vec<FormEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieBracketEntry {
    pub left: String,
    pub right: String,
    pub output: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieAlgebraEntry {
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<LieBracketEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymplecticEntry {
    pub basis: Vec<String>,
    pub omega: Vec<FormEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermEntry {
    pub coefficient: String,
    #[serde(default)]
    pub powers: BTreeMap<String, u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianFile {
    pub schema_version: u32,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub lie_algebra: LieAlgebraEntry,
    pub symplectic_space: SymplecticEntry,
    /// Generator label → list of terms; generators left out have `H = 0`.
    pub hamiltonians: BTreeMap<String, Vec<TermEntry>>,
}

/// Parsed input of any kind.
#[derive(Debug, Clone)]
pub enum Input {
    Dgla(DglAlgebra<Rational>),
    LInfty(LInftyAlgebra<Rational>),
    Hamiltonian(HamiltonianSystem<Rational>),
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Dgla(_) => "dgla",
            Input::LInfty(_) => "linfty",
            Input::Hamiltonian(_) => "hamiltonian",
        }
    }
}

fn input_err(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn rational(text: &str, what: &str) -> Result<Rational, CliError> {
    parse_rational(text).map_err(|e| input_err(format!("{what}: {e}")))
}

/// Parses any supported document. The `kind` field selects the format.
pub fn parse_input(text: &str) -> Result<Input, CliError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| input_err(format!("malformed JSON: {e}")))?;
    let version = value.get("schema_version").and_then(|v| v.as_u64());
    if version != Some(SCHEMA_VERSION as u64) {
        return Err(input_err(format!("expected schema_version {SCHEMA_VERSION}, found {:?}", value.get("schema_version"))));
    }
    match value.get("kind").and_then(|k| k.as_str()) {
        Some("dgla") | Some("linfty") => {
            let f: AlgebraFile = serde_json::from_value(value).map_err(|e| input_err(e.to_string()))?;
            f.build()
        }
        Some("hamiltonian") => {
            let f: HamiltonianFile = serde_json::from_value(value).map_err(|e| input_err(e.to_string()))?;
            Ok(Input::Hamiltonian(f.build()?))
        }
        other => Err(input_err(format!("unknown document kind {other:?}"))),
    }
}

fn combination(space: &GradedSpace, output: &BTreeMap<String, String>, what: &str) -> Result<Vec<Rational>, CliError> {
    let mut v = vec![Rational::from_i64(0); space.dim()];
    for (label, c) in output {
        let i = space.index_of(label).map_err(|e| input_err(format!("{what}: {e}")))?;
        v[i] = rational(c, what)?;
    }
    Ok(v)
}

/// Writes `column` at `tuple` and at every reordering, refusing a second
/// entry for the same unordered tuple with a different value.
fn set_completed(
    t: &mut StructureTensor<Rational>,
    assigned: &mut BTreeSet<Vec<usize>>,
    tuple: &[usize],
    column: &[Rational],
) -> Result<(), CliError> {
    let mut key = tuple.to_vec();
    key.sort_unstable();
    if !assigned.insert(key) {
        if t.column(tuple) != column {
            return Err(input_err(format!("conflicting entries for {}", t.tuple_label(tuple))));
        }
        return Ok(());
    }
    t.set_symmetric(tuple, column).map_err(|e| input_err(e.to_string()))
}

fn form_matrix(space: &GradedSpace, entries: &[FormEntry], antisymmetric: bool) -> Result<Matrix<Rational>, CliError> {
    let n = space.dim();
    let mut m = Matrix::zeros(n, n);
    let mut seen: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    for e in entries {
        let i = space.index_of(&e.row).map_err(|err| input_err(format!("form: {err}")))?;
        let j = space.index_of(&e.col).map_err(|err| input_err(format!("form: {err}")))?;
        let v = rational(&e.value, "form")?;
        // graded symmetry β(y,x) = (−1)^{|x||y|} β(x,y); ω is antisymmetric
        let odd_pair = space.parity(i).is_odd() && space.parity(j).is_odd();
        let flip = if antisymmetric || odd_pair { -v.clone() } else { v.clone() };
        for (key, val) in [((i, j), v.clone()), ((j, i), flip)] {
            if let Some(prev) = seen.get(&key) {
                if *prev != val {
                    return Err(input_err(format!(
                        "form entries for ({}, {}) are inconsistent",
                        space.label(key.0),
                        space.label(key.1)
                    )));
                }
            }
            seen.insert(key, val.clone());
            m.set(key.0, key.1, val);
        }
    }
    Ok(m)
}

impl AlgebraFile {
    fn space(&self) -> Result<Arc<GradedSpace>, CliError> {
        let kind = match self.grading {
            Grading::Z2 => GradingKind::Z2,
            Grading::Z => GradingKind::Z,
        };
        let comps = self.components.iter().map(|c| Component { degree: c.degree, labels: c.basis.clone() }).collect();
        Ok(Arc::new(GradedSpace::new(kind, comps).map_err(|e| input_err(e.to_string()))?))
    }

    fn labels(space: &GradedSpace, names: &[String]) -> Result<Vec<usize>, CliError> {
        names.iter().map(|l| space.index_of(l).map_err(|e| input_err(e.to_string()))).collect()
    }

    pub fn build(&self) -> Result<Input, CliError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(input_err(format!("unsupported schema_version {}", self.schema_version)));
        }
        let sp = self.space()?;
        let form = if self.bilinear_form.is_empty() {
            None
        } else {
            Some(BilinearForm::new(&sp, form_matrix(&sp, &self.bilinear_form, false)?).map_err(|e| input_err(e.to_string()))?)
        };
        let mut by_arity: BTreeMap<usize, (StructureTensor<Rational>, BTreeSet<Vec<usize>>)> = BTreeMap::new();
        for b in &self.brackets {
            if b.arity == 0 || b.arity != b.inputs.len() {
                return Err(input_err(format!("bracket with arity {} has {} inputs", b.arity, b.inputs.len())));
            }
            if self.kind == AlgebraKind::Dgla && b.arity != 2 {
                return Err(input_err("a dgla file lists only binary brackets; use `differential` for d"));
            }
            let tuple = Self::labels(&sp, &b.inputs)?;
            let column = combination(&sp, &b.output, "bracket")?;
            let (t, assigned) = by_arity.entry(b.arity).or_insert_with(|| {
                let s = if self.kind == AlgebraKind::Dgla { 0 } else { 2 - b.arity as i64 };
                (StructureTensor::zeros(&sp, &sp, b.arity, s, Symmetry::Antisymmetric), BTreeSet::new())
            });
            set_completed(t, assigned, &tuple, &column)?;
        }
        match self.kind {
            AlgebraKind::Dgla => {
                let mut d = StructureTensor::zeros(&sp, &sp, 1, 1, Symmetry::Antisymmetric);
                let mut assigned = BTreeSet::new();
                for e in &self.differential {
                    let i = Self::labels(&sp, std::slice::from_ref(&e.input))?;
                    if !assigned.insert(i[0]) {
                        return Err(input_err(format!("differential of {} given twice", e.input)));
                    }
                    d.set_column(&i, &combination(&sp, &e.output, "differential")?)
                        .map_err(|err| input_err(err.to_string()))?;
                }
                let br = by_arity
                    .remove(&2)
                    .map(|(t, _)| t)
                    .unwrap_or_else(|| StructureTensor::zeros(&sp, &sp, 2, 0, Symmetry::Antisymmetric));
                Ok(Input::Dgla(DglAlgebra::new(&sp, d, br, form).map_err(|e| input_err(e.to_string()))?))
            }
            AlgebraKind::Linfty => {
                if !self.differential.is_empty() {
                    return Err(input_err("an linfty file gives the differential as arity-1 brackets"));
                }
                let brackets = by_arity.into_values().map(|(t, _)| t).collect();
                Ok(Input::LInfty(LInftyAlgebra::new(&sp, brackets, form).map_err(|e| input_err(e.to_string()))?))
            }
        }
    }

    fn header(kind: AlgebraKind, name: Option<String>, space: &GradedSpace) -> Self {
        AlgebraFile {
            schema_version: SCHEMA_VERSION,
            kind,
            name,
            grading: match space.kind() {
                GradingKind::Z2 => Grading::Z2,
                GradingKind::Z => Grading::Z,
            },
            components: space
                .components()
                .iter()
                .map(|c| ComponentEntry { degree: c.degree, basis: c.labels.clone() })
                .collect(),
            differential: Vec::new(),
            brackets: Vec::new(),
            bilinear_form: Vec::new(),
        }
    }

    pub fn from_linfty(l: &LInftyAlgebra<Rational>, name: Option<String>) -> Self {
        let sp = l.space();
        let mut f = Self::header(AlgebraKind::Linfty, name, sp);
        for t in l.brackets() {
            f.brackets.extend(bracket_entries(t));
        }
        f.bilinear_form = form_entries(l.form());
        f
    }

    pub fn from_dgla(g: &DglAlgebra<Rational>, name: Option<String>) -> Self {
        let sp = g.space();
        let mut f = Self::header(AlgebraKind::Dgla, name, sp);
        let d = g.differential();
        for i in 0..sp.dim() {
            let out = output_map(sp, d.column(&[i]));
            if !out.is_empty() {
                f.differential.push(ImageEntry { input: sp.label(i).to_string(), output: out });
            }
        }
        f.brackets = bracket_entries(g.bracket());
        f.bilinear_form = form_entries(g.form());
        f
    }
}

fn output_map(space: &GradedSpace, column: &[Rational]) -> BTreeMap<String, String> {
    column
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (space.label(k).to_string(), format_rational(c)))
        .collect()
}

/// Nonzero columns at non-decreasing tuples.
fn bracket_entries(t: &StructureTensor<Rational>) -> Vec<BracketEntry> {
    let sp = t.input().clone();
    t.tuples()
        .filter(|tuple| tuple.windows(2).all(|w| w[0] <= w[1]))
        .filter_map(|tuple| {
            let out = output_map(t.output(), t.column(&tuple));
            (!out.is_empty()).then(|| BracketEntry {
                arity: tuple.len(),
                inputs: tuple.iter().map(|&i| sp.label(i).to_string()).collect(),
                output: out,
            })
        })
        .collect()
}

fn form_entries(form: Option<&BilinearForm<Rational>>) -> Vec<FormEntry> {
    let Some(form) = form else { return Vec::new() };
    let sp = form.space();
    let m = form.matrix();
    let mut out = Vec::new();
    for i in 0..sp.dim() {
        for j in i..sp.dim() {
            if !m.get(i, j).is_zero() {
                out.push(FormEntry {
                    row: sp.label(i).to_string(),
                    col: sp.label(j).to_string(),
                    value: format_rational(m.get(i, j)),
                });
            }
        }
    }
    out
}

impl HamiltonianFile {
    pub fn build(&self) -> Result<HamiltonianSystem<Rational>, CliError> {
        if self.kind != "hamiltonian" {
            return Err(input_err(format!("expected kind \"hamiltonian\", found {:?}", self.kind)));
        }
        let lie_labels = &self.lie_algebra.basis;
        let mut lie = LieAlgebra::new(lie_labels.clone()).map_err(|e| input_err(e.to_string()))?;
        let lie_index = |l: &str| {
            lie_labels.iter().position(|x| x == l).ok_or_else(|| input_err(format!("lie_algebra: unknown label {l:?}")))
        };
        let mut seen: BTreeMap<(usize, usize, usize), Rational> = BTreeMap::new();
        let mut entries = Vec::new();
        for b in &self.lie_algebra.brackets {
            let (i, j) = (lie_index(&b.left)?, lie_index(&b.right)?);
            for (label, c) in &b.output {
                entries.push((i, j, lie_index(label)?, rational(c, "lie bracket")?));
            }
        }
        for (i, j, k, v) in entries {
            if i == j && !v.is_zero() {
                return Err(input_err(format!("[{0},{0}] must vanish", lie_labels[i])));
            }
            for (key, val) in [((i, j, k), v.clone()), ((j, i, k), -v.clone())] {
                if seen.get(&key).is_some_and(|p| *p != val) {
                    return Err(input_err(format!("conflicting entries for [{}, {}]", lie_labels[i], lie_labels[j])));
                }
                seen.insert(key, val);
            }
            lie.set_bracket(i, j, k, v);
        }

        let vars = &self.symplectic_space.basis;
        let flat = GradedSpace::new(GradingKind::Z, vec![Component { degree: 0, labels: vars.clone() }])
            .map_err(|e| input_err(e.to_string()))?;
        let omega = form_matrix(&flat, &self.symplectic_space.omega, true)?;
        let v = SymplecticSpace::new(vars.clone(), omega).map_err(|e| input_err(e.to_string()))?;

        let n = vars.len();
        let mut hs = vec![Polynomial::zero(n); lie_labels.len()];
        for (gen, terms) in &self.hamiltonians {
            let a = lie_index(gen)?;
            let mut parsed = Vec::new();
            for t in terms {
                let mut exps = vec![0u32; n];
                for (var, &k) in &t.powers {
                    let j = v.index_of(var).map_err(|e| input_err(format!("hamiltonian {gen}: {e}")))?;
                    exps[j] = k;
                }
                parsed.push((rational(&t.coefficient, "hamiltonian coefficient")?, exps));
            }
            hs[a] = Polynomial::from_terms(n, parsed).map_err(|e| input_err(e.to_string()))?;
        }
        HamiltonianSystem::new(lie, v, hs).map_err(|e| input_err(e.to_string()))
    }

    pub fn from_system(s: &HamiltonianSystem<Rational>, name: Option<String>) -> Self {
        let g = s.algebra();
        let labels = g.labels();
        let mut brackets = Vec::new();
        for i in 0..labels.len() {
            for j in i + 1..labels.len() {
                let output: BTreeMap<String, String> = (0..labels.len())
                    .filter(|&k| !g.constant(i, j, k).is_zero())
                    .map(|k| (labels[k].clone(), format_rational(g.constant(i, j, k))))
                    .collect();
                if !output.is_empty() {
                    brackets.push(LieBracketEntry { left: labels[i].clone(), right: labels[j].clone(), output });
                }
            }
        }
        let v = s.symplectic();
        let mut omega = Vec::new();
        for i in 0..v.dim() {
            for j in i + 1..v.dim() {
                let c = v.omega().get(i, j);
                if !c.is_zero() {
                    omega.push(FormEntry { row: v.labels()[i].clone(), col: v.labels()[j].clone(), value: format_rational(c) });
                }
            }
        }
        let hamiltonians = s
            .hamiltonians()
            .iter()
            .enumerate()
            .filter(|(_, h)| !h.is_zero())
            .map(|(a, h)| {
                let terms = h
                    .terms()
                    .map(|(e, c)| TermEntry {
                        coefficient: format_rational(c),
                        powers: e
                            .iter()
                            .enumerate()
                            .filter(|(_, &k)| k > 0)
                            .map(|(j, &k)| (v.labels()[j].clone(), k))
                            .collect(),
                    })
                    .collect();
                (labels[a].clone(), terms)
            })
            .collect();
        HamiltonianFile {
            schema_version: SCHEMA_VERSION,
            kind: "hamiltonian".into(),
            name,
            lie_algebra: LieAlgebraEntry { basis: labels.to_vec(), brackets },
            symplectic_space: SymplecticEntry { basis: v.labels().to_vec(), omega },
            hamiltonians,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mcred::catalog;

    const SMALL: &str = r#"{
        "schema_version": 1,
        "kind": "dgla",
        "grading": "Z2",
        "components": [{"degree": 0, "basis": ["h"]}, {"degree": 1, "basis": ["x", "y"]}],
        "brackets": [
            {"arity": 2, "inputs": ["h", "x"], "output": {"x": "1"}},
            {"arity": 2, "inputs": ["h", "y"], "output": {"y": "-1"}},
            {"arity": 2, "inputs": ["x", "y"], "output": {"h": "1/2"}}
        ],
        "bilinear_form": [{"row": "h", "col": "h", "value": "1"}, {"row": "x", "col": "y", "value": "1/2"}]
    }"#;

    fn dgla(text: &str) -> DglAlgebra<Rational> {
        match parse_input(text).unwrap() {
            Input::Dgla(g) => g,
            other => panic!("expected a dgla, got {}", other.kind()),
        }
    }

    #[test]
    fn brackets_are_completed_by_antisymmetry() {
        let g = dgla(SMALL);
        let sp = g.space();
        let (h, x, y) = (0, sp.index_of("x").unwrap(), sp.index_of("y").unwrap());
        assert_eq!(g.bracket().column(&[x, h])[x], Rational::from_i64(-1));
        // odd-odd brackets are symmetric
        assert_eq!(g.bracket().column(&[y, x])[h], Rational::from_ratio(1, 2));
        let m = g.form().unwrap().matrix();
        assert_eq!(*m.get(y, x), Rational::from_ratio(-1, 2));
    }

    #[test]
    fn rejects_unknown_fields_and_labels() {
        let extra = SMALL.replacen("\"grading\"", "\"colour\": 1, \"grading\"", 1);
        assert!(matches!(parse_input(&extra), Err(CliError::Input(_))));
        let bad = SMALL.replace("{\"x\": \"1\"}", "{\"z\": \"1\"}");
        assert!(matches!(parse_input(&bad), Err(CliError::Input(m)) if m.contains("z")));
        let version = SMALL.replace("\"schema_version\": 1", "\"schema_version\": 2");
        assert!(parse_input(&version).is_err());
    }

    #[test]
    fn rejects_inexact_and_conflicting_entries() {
        let float = SMALL.replace("\"1/2\"}}", "\"NaN\"}}");
        assert!(parse_input(&float).is_err());
        let conflict = SMALL.replace(
            "{\"arity\": 2, \"inputs\": [\"h\", \"y\"]",
            "{\"arity\": 2, \"inputs\": [\"x\", \"h\"], \"output\": {\"x\": \"1\"}},\n{\"arity\": 2, \"inputs\": [\"h\", \"y\"]",
        );
        let err = parse_input(&conflict).unwrap_err();
        assert!(err.to_string().contains("conflicting"), "{err}");
        // the consistent restatement [x,h] = −x is accepted
        let agree = conflict.replacen("[\"x\", \"h\"], \"output\": {\"x\": \"1\"}", "[\"x\", \"h\"], \"output\": {\"x\": \"-1\"}", 1);
        parse_input(&agree).unwrap();
        let form = SMALL.replace(
            "{\"row\": \"h\", \"col\": \"h\", \"value\": \"1\"}",
            "{\"row\": \"x\", \"col\": \"y\", \"value\": \"1\"}",
        );
        assert!(parse_input(&form).unwrap_err().to_string().contains("inconsistent"));
        let even_square = SMALL.replace("[\"h\", \"y\"]", "[\"h\", \"h\"]").replace("{\"y\": \"-1\"}", "{\"h\": \"1\"}");
        assert!(parse_input(&even_square).is_err());
    }

    #[test]
    fn canonical_round_trip() {
        for g in [catalog::a1(), catalog::n1(), catalog::n1d()] {
            let f = AlgebraFile::from_dgla(&g, None);
            let text = serde_json::to_string(&f).unwrap();
            let back = dgla(&text);
            assert_eq!(back.bracket(), g.bracket());
            assert_eq!(back.differential(), g.differential());
            assert_eq!(back.form(), g.form());
            assert_eq!(AlgebraFile::from_dgla(&back, None), f);
        }
        for l in [catalog::ho1_linfty(), catalog::ho2_linfty(), catalog::sl2q_linfty()] {
            let f = AlgebraFile::from_linfty(&l, None);
            let Input::LInfty(back) = parse_input(&serde_json::to_string(&f).unwrap()).unwrap() else {
                panic!("expected linfty")
            };
            assert_eq!(AlgebraFile::from_linfty(&back, None), f);
            assert_eq!(back.max_arity(), l.max_arity());
        }
        for s in [catalog::ho1_system(), catalog::sl2q_system(), catalog::zero_system()] {
            let f = HamiltonianFile::from_system(&s, None);
            let Input::Hamiltonian(back) = parse_input(&serde_json::to_string(&f).unwrap()).unwrap() else {
                panic!("expected hamiltonian")
            };
            assert_eq!(back, s);
        }
    }

    #[test]
    fn hamiltonian_checks() {
        let s = HamiltonianFile::from_system(&catalog::sl2q_system(), None);
        let mut bad = s.clone();
        bad.lie_algebra.brackets.push(LieBracketEntry {
            left: "f".into(),
            right: "e".into(),
            output: [("h".to_string(), "1".to_string())].into(),
        });
        assert!(bad.build().unwrap_err().to_string().contains("conflicting"));
        let mut singular = s.clone();
        singular.symplectic_space.omega.clear();
        assert!(singular.build().is_err());
        let mut unknown = s;
        unknown.hamiltonians.insert("k".into(), Vec::new());
        assert!(unknown.build().is_err());
    }
}
