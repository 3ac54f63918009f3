//! On-disk document formats. Rationals are serialized as strings "p" or
//! "p/q" with q > 0 in lowest terms, so exactness survives serialization and
//! fixtures stay diffable.

use num_traits::Zero;
use quadlie::cechain::{coadjoint, Cochain, Representation};
use quadlie::exactlin::{parse_rational, Matrix, Rational};
use quadlie::extension::ExtensionData;
use quadlie::quadratic::BilinearForm;
use quadlie::LieAlgebra;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug)]
pub enum DocError {
    /// Malformed document: bad JSON, bad rational, unknown identifier,
    /// inconsistent shapes.
    Parse(String),
    /// Well-formed document that does not define a valid algebra.
    InvalidAlgebra(String),
}

impl std::fmt::Display for DocError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DocError::Parse(m) => write!(f, "parse error: {m}"),
            DocError::InvalidAlgebra(m) => write!(f, "invalid algebra: {m}"),
        }
    }
}

fn parse_rat(s: &str, context: &str) -> Result<Rational, DocError> {
    parse_rational(s).map_err(|e| DocError::Parse(format!("{context}: {e}")))
}

pub fn parse_matrix(rows: &[Vec<String>], r: usize, c: usize, name: &str) -> Result<Matrix, DocError> {
    if rows.len() != r {
        return Err(DocError::Parse(format!("{name}: expected {r} rows, got {}", rows.len())));
    }
    let mut data = Vec::with_capacity(r * c);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != c {
            return Err(DocError::Parse(format!(
                "{name}: row {i} has {} entries, expected {c}",
                row.len()
            )));
        }
        for (j, s) in row.iter().enumerate() {
            data.push(parse_rat(s, &format!("{name}[{i}][{j}]"))?);
        }
    }
    Ok(Matrix::new(r, c, data))
}

pub fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.at(r, c).to_string()).collect())
        .collect()
}

/// One bracket [left, right] = sum of result coefficients.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub result: BTreeMap<String, String>,
}

/// A Lie algebra by named basis and sparse bracket table, optionally with a
/// symmetric bilinear form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form: Option<Vec<Vec<String>>>,
}

impl AlgebraDocument {
    /// Builds the structure tensor. Jacobi failures are reported as
    /// InvalidAlgebra with the violating triples.
    pub fn to_lie_algebra(&self) -> Result<(LieAlgebra, Option<BilinearForm>), DocError> {
        if self.basis.len() != self.dim {
            return Err(DocError::Parse(format!(
                "dim is {} but basis lists {} identifiers",
                self.dim,
                self.basis.len()
            )));
        }
        let mut index: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, name) in self.basis.iter().enumerate() {
            if index.insert(name, i).is_some() {
                return Err(DocError::Parse(format!("duplicate basis identifier {name:?}")));
            }
        }
        let look = |name: &str| -> Result<usize, DocError> {
            index
                .get(name)
                .copied()
                .ok_or_else(|| DocError::Parse(format!("unknown identifier {name:?}")))
        };
        let mut tensor = vec![vec![vec![Rational::zero(); self.dim]; self.dim]; self.dim];
        let mut seen: BTreeMap<(usize, usize), Vec<Rational>> = BTreeMap::new();
        for entry in &self.brackets {
            let i = look(&entry.left)?;
            let j = look(&entry.right)?;
            if i == j {
                return Err(DocError::Parse(format!(
                    "bracket of {:?} with itself is always zero and may not be listed",
                    entry.left
                )));
            }
            let mut v = vec![Rational::zero(); self.dim];
            for (name, value) in &entry.result {
                let k = look(name)?;
                v[k] = parse_rat(value, &format!("bracket [{}, {}]", entry.left, entry.right))?;
            }
            if seen.contains_key(&(i, j)) {
                return Err(DocError::Parse(format!(
                    "bracket [{}, {}] listed twice",
                    entry.left, entry.right
                )));
            }
            if let Some(opposite) = seen.get(&(j, i)) {
                let consistent = opposite.iter().zip(&v).all(|(a, b)| -a.clone() == *b);
                if !consistent {
                    return Err(DocError::Parse(format!(
                        "brackets [{}, {}] and [{}, {}] are not antisymmetry-consistent",
                        entry.left, entry.right, entry.right, entry.left
                    )));
                }
            }
            seen.insert((i, j), v.clone());
            tensor[i][j] = v.clone();
            tensor[j][i] = v.iter().map(|x| -x).collect();
        }
        let unchecked = LieAlgebra::new_unchecked(self.dim, Some(self.basis.clone()), tensor);
        let defects = unchecked.jacobi_defect();
        if !defects.is_empty() {
            let triples: Vec<String> = defects
                .iter()
                .map(|((i, j, k), _)| {
                    format!("({}, {}, {})", self.basis[*i], self.basis[*j], self.basis[*k])
                })
                .collect();
            return Err(DocError::InvalidAlgebra(format!(
                "Jacobi identity fails on triples: {}",
                triples.join(", ")
            )));
        }
        let form = match &self.form {
            None => None,
            Some(rows) => {
                let gram = parse_matrix(rows, self.dim, self.dim, "form")?;
                let b = BilinearForm::new(gram)
                    .map_err(|_| DocError::Parse("form is not symmetric".to_string()))?;
                Some(b)
            }
        };
        Ok((unchecked, form))
    }

    pub fn from_lie_algebra(name: &str, g: &LieAlgebra, form: Option<&BilinearForm>) -> Self {
        let basis = g.basis_names().to_vec();
        let mut brackets = Vec::new();
        for i in 0..g.dim() {
            for j in i + 1..g.dim() {
                let v = g.bracket_basis(i, j);
                if v.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let mut result = BTreeMap::new();
                for (k, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        result.insert(basis[k].clone(), x.to_string());
                    }
                }
                brackets.push(BracketEntry {
                    left: basis[i].clone(),
                    right: basis[j].clone(),
                    result,
                });
            }
        }
        AlgebraDocument {
            name: name.to_string(),
            dim: g.dim(),
            basis,
            brackets,
            form: form.map(|b| matrix_rows(&b.gram)),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RhoSpec {
    Named(String),
    Matrices(Vec<Vec<Vec<String>>>),
}

/// Everything needed to build h(lambda, mu, phi, rho). The lambda and mu
/// tables are indexed by the strictly increasing basis pairs of h in
/// lexicographic order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtensionDocument {
    pub h: AlgebraDocument,
    pub dim_a: usize,
    pub dim_i: usize,
    pub rho: RhoSpec,
    pub phi: Vec<Vec<Vec<String>>>,
    pub lambda: Vec<Vec<String>>,
    pub mu: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_a: Option<Vec<Vec<String>>>,
}

impl ExtensionDocument {
    pub fn to_extension_data(&self) -> Result<(ExtensionData, Option<BilinearForm>), DocError> {
        let (h, _) = self.h.to_lie_algebra()?;
        let nh = h.dim();
        let rho = match &self.rho {
            RhoSpec::Named(name) if name == "coadjoint" => {
                if self.dim_i != nh {
                    return Err(DocError::Parse(format!(
                        "rho \"coadjoint\" requires dim_i = dim h = {nh}, got {}",
                        self.dim_i
                    )));
                }
                coadjoint(&h)
            }
            RhoSpec::Named(other) => {
                return Err(DocError::Parse(format!(
                    "unknown rho marker {other:?} (expected \"coadjoint\" or matrices)"
                )));
            }
            RhoSpec::Matrices(mats) => {
                if mats.len() != nh {
                    return Err(DocError::Parse(format!(
                        "rho lists {} matrices, expected one per basis element of h ({nh})",
                        mats.len()
                    )));
                }
                let matrices: Result<Vec<Matrix>, DocError> = mats
                    .iter()
                    .enumerate()
                    .map(|(j, rows)| parse_matrix(rows, self.dim_i, self.dim_i, &format!("rho[{j}]")))
                    .collect();
                Representation::new(h.clone(), matrices?)
            }
        };
        if self.phi.len() != nh {
            return Err(DocError::Parse(format!(
                "phi lists {} matrices, expected {nh}",
                self.phi.len()
            )));
        }
        let phi: Result<Vec<Matrix>, DocError> = self
            .phi
            .iter()
            .enumerate()
            .map(|(j, rows)| parse_matrix(rows, self.dim_i, self.dim_a, &format!("phi[{j}]")))
            .collect();
        let pairs = quadlie::cechain::combinations(nh, 2);
        let parse_two_cochain = |table: &Vec<Vec<String>>,
                                 md: usize,
                                 name: &str|
         -> Result<Cochain, DocError> {
            if table.len() != pairs.len() {
                return Err(DocError::Parse(format!(
                    "{name} lists {} vectors, expected one per increasing pair ({})",
                    table.len(),
                    pairs.len()
                )));
            }
            let mut c = Cochain::zero(2, nh, md);
            for (row, pair) in table.iter().zip(&pairs) {
                if row.len() != md {
                    return Err(DocError::Parse(format!(
                        "{name} entry for pair {pair:?} has {} coordinates, expected {md}",
                        row.len()
                    )));
                }
                let v: Result<Vec<Rational>, DocError> = row
                    .iter()
                    .map(|s| parse_rat(s, &format!("{name}{pair:?}")))
                    .collect();
                c.set(pair, v?);
            }
            Ok(c)
        };
        let lam = parse_two_cochain(&self.lambda, self.dim_a, "lambda")?;
        let mu = parse_two_cochain(&self.mu, self.dim_i, "mu")?;
        let b_a = match &self.b_a {
            None => None,
            Some(rows) => {
                let gram = parse_matrix(rows, self.dim_a, self.dim_a, "b_a")?;
                Some(
                    BilinearForm::new(gram)
                        .map_err(|_| DocError::Parse("b_a is not symmetric".to_string()))?,
                )
            }
        };
        Ok((ExtensionData::new(h, self.dim_a, self.dim_i, rho, phi?, lam, mu), b_a))
    }

    pub fn from_extension_data(
        data: &ExtensionData,
        coadjoint_marker: bool,
        b_a: Option<&BilinearForm>,
    ) -> Self {
        let nh = data.h.dim();
        let pairs = quadlie::cechain::combinations(nh, 2);
        let two_cochain_rows = |c: &Cochain| -> Vec<Vec<String>> {
            pairs
                .iter()
                .map(|p| c.get(p).iter().map(|x| x.to_string()).collect())
                .collect()
        };
        let rho = if coadjoint_marker {
            RhoSpec::Named("coadjoint".to_string())
        } else {
            RhoSpec::Matrices(data.rho.matrices.iter().map(matrix_rows).collect())
        };
        ExtensionDocument {
            h: AlgebraDocument::from_lie_algebra("h", &data.h, None),
            dim_a: data.dim_a,
            dim_i: data.dim_i,
            rho,
            phi: data.phi.iter().map(matrix_rows).collect(),
            lambda: two_cochain_rows(&data.lam),
            mu: two_cochain_rows(&data.mu),
            b_a: b_a.map(|b| matrix_rows(&b.gram)),
        }
    }
}

/// Input for the double-extension generator.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DoubleExtensionDocument {
    pub dim_v: usize,
    pub b_v: Vec<Vec<String>>,
    pub d: Vec<Vec<String>>,
}

impl DoubleExtensionDocument {
    pub fn parse_parts(&self) -> Result<(BilinearForm, Matrix), DocError> {
        let gram = parse_matrix(&self.b_v, self.dim_v, self.dim_v, "b_v")?;
        let b_v = BilinearForm::new(gram)
            .map_err(|_| DocError::Parse("b_v is not symmetric".to_string()))?;
        let d = parse_matrix(&self.d, self.dim_v, self.dim_v, "d")?;
        Ok((b_v, d))
    }
}

/// Pretty JSON with a trailing newline; parse-emit round trips are
/// byte-identical because all maps are ordered.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn from_json_str<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T, DocError> {
    serde_json::from_str(s).map_err(|e| DocError::Parse(e.to_string()))
}
