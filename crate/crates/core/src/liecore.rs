//! Lie algebras by structure constants: Jacobi validation, the descending
//! central / derived / derived central series, the canonical Abelian ideals
//! i(g) and j(g), and quotients by ideals.

use crate::exactlin::{self, intersect, sum, Matrix, Rational, Subspace};
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LieError {
    #[error("structure tensor is not antisymmetric at ({0}, {1}, {2})")]
    NotAntisymmetric(usize, usize, usize),
    #[error("Jacobi identity fails on {0} basis triple(s); first: {1:?}")]
    JacobiFails(usize, (usize, usize, usize)),
    #[error("subspace is not an ideal: [g, s] is not contained in s")]
    NotAnIdeal,
    #[error("the two computations of j(g) disagree (internal invariant)")]
    CanonicalIdealMismatch,
}

/// Finite-dimensional Lie algebra over Q given by structure constants
/// c[i][j][k] with [x_i, x_j] = sum_k c[i][j][k] x_k.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    basis_names: Vec<String>,
    structure: Vec<Vec<Vec<Rational>>>,
}

impl std::fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LieAlgebra dim {} ({})", self.dim, self.basis_names.join(", "))
    }
}

fn default_names(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("x{i}")).collect()
}

impl LieAlgebra {
    /// Validating constructor: antisymmetry and the Jacobi identity are
    /// checked on every basis pair/triple.
    pub fn new(
        dim: usize,
        basis_names: Option<Vec<String>>,
        structure: Vec<Vec<Vec<Rational>>>,
    ) -> Result<Self, LieError> {
        let g = Self::new_unchecked(dim, basis_names, structure);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if &g.structure[i][j][k] + &g.structure[j][i][k] != Rational::zero() {
                        return Err(LieError::NotAntisymmetric(i, j, k));
                    }
                }
            }
        }
        let defects = g.jacobi_defect();
        if !defects.is_empty() {
            return Err(LieError::JacobiFails(defects.len(), defects[0].0));
        }
        Ok(g)
    }

    /// Skips validation. Used by property tests that need invalid inputs and
    /// by the extension builder's defect oracle.
    pub fn new_unchecked(
        dim: usize,
        basis_names: Option<Vec<String>>,
        structure: Vec<Vec<Vec<Rational>>>,
    ) -> Self {
        assert_eq!(structure.len(), dim);
        for row in &structure {
            assert_eq!(row.len(), dim);
            for v in row {
                assert_eq!(v.len(), dim);
            }
        }
        let names = basis_names.unwrap_or_else(|| default_names(dim));
        assert_eq!(names.len(), dim);
        LieAlgebra { dim, basis_names: names, structure: structure.clone() }
    }

    /// Builds the tensor from a sparse bracket table [x_i, x_j] = v (i < j).
    pub fn from_brackets(
        dim: usize,
        basis_names: Option<Vec<String>>,
        brackets: &[(usize, usize, Vec<Rational>)],
    ) -> Result<Self, LieError> {
        Ok(Self::new(dim, basis_names, Self::tensor_from_brackets(dim, brackets))?)
    }

    pub fn tensor_from_brackets(
        dim: usize,
        brackets: &[(usize, usize, Vec<Rational>)],
    ) -> Vec<Vec<Vec<Rational>>> {
        let mut c = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
        for (i, j, v) in brackets {
            assert!(*i < dim && *j < dim && i != j);
            assert_eq!(v.len(), dim);
            c[*i][*j] = v.clone();
            c[*j][*i] = v.iter().map(|x| -x).collect();
        }
        c
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra::new_unchecked(dim, None, vec![vec![vec![Rational::zero(); dim]; dim]; dim])
    }

    /// 3-dimensional Heisenberg algebra, [x1, x2] = x3.
    pub fn heisenberg() -> Self {
        let mut e3 = vec![Rational::zero(); 3];
        e3[2] = exactlin::rat(1);
        LieAlgebra::from_brackets(3, None, &[(0, 1, e3)]).expect("heisenberg is a Lie algebra")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn structure(&self) -> &Vec<Vec<Vec<Rational>>> {
        &self.structure
    }

    /// [x_i, x_j] in coordinates.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        self.structure[i][j].clone()
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        assert_eq!(u.len(), self.dim);
        assert_eq!(v.len(), self.dim);
        let mut out = vec![Rational::zero(); self.dim];
        for i in 0..self.dim {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if v[j].is_zero() {
                    continue;
                }
                let s = &u[i] * &v[j];
                for k in 0..self.dim {
                    if !self.structure[i][j][k].is_zero() {
                        out[k] += &s * &self.structure[i][j][k];
                    }
                }
            }
        }
        out
    }

    /// Matrix of ad(x_i) acting on coordinates (columns are [x_i, x_j]).
    pub fn ad_basis(&self, i: usize) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, |k, j| self.structure[i][j][k].clone())
    }

    /// Every basis triple i<j<k whose Jacobi cyclic sum is nonzero, with the
    /// defect vector. Empty exactly when the tensor defines a Lie algebra.
    pub fn jacobi_defect(&self) -> Vec<((usize, usize, usize), Vec<Rational>)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let ei = basis_vec(self.dim, i);
                    let ej = basis_vec(self.dim, j);
                    let ek = basis_vec(self.dim, k);
                    let mut d = self.bracket(&self.bracket(&ei, &ej), &ek);
                    add_assign(&mut d, &self.bracket(&self.bracket(&ej, &ek), &ei));
                    add_assign(&mut d, &self.bracket(&self.bracket(&ek, &ei), &ej));
                    if d.iter().any(|x| !x.is_zero()) {
                        out.push(((i, j, k), d));
                    }
                }
            }
        }
        out
    }

    /// span{[u_a, v_b]} over basis pairs of the two subspaces.
    pub fn bracket_subspaces(&self, u: &Subspace, v: &Subspace) -> Subspace {
        assert_eq!(u.ambient_dim(), self.dim, "ambient dimension mismatch");
        assert_eq!(v.ambient_dim(), self.dim, "ambient dimension mismatch");
        let mut rows = Vec::new();
        for a in u.basis_vectors() {
            for b in v.basis_vectors() {
                rows.push(self.bracket(&a, &b));
            }
        }
        Subspace::from_vectors(self.dim, &rows)
    }

    /// Centralizer {x : [x, s] = 0} of a subspace.
    pub fn centralizer_of(&self, s: &Subspace) -> Subspace {
        assert_eq!(s.ambient_dim(), self.dim);
        if s.dim() == 0 {
            return Subspace::full(self.dim);
        }
        // condition rows: for each basis vector b of s, [x, b] = 0.
        let mut cond = Matrix::zeros(0, self.dim);
        for b in s.basis_vectors() {
            // map x -> [x, b]: columns are [x_i, b]
            let m = Matrix::from_fn(self.dim, self.dim, |k, i| {
                self.bracket(&basis_vec(self.dim, i), &b)[k].clone()
            });
            cond = cond.vstack(&m);
        }
        cond.kernel()
    }

    pub fn center(&self) -> Subspace {
        self.centralizer_of(&Subspace::full(self.dim))
    }

    /// {x : [x, g] is contained in target}; target must be a subspace.
    fn bracket_preimage(&self, target: &Subspace) -> Subspace {
        let k = target.kernel_form();
        if k.rows() == 0 {
            return Subspace::full(self.dim);
        }
        let mut cond = Matrix::zeros(0, self.dim);
        for j in 0..self.dim {
            // x -> [x, x_j]
            let m = Matrix::from_fn(self.dim, self.dim, |kk, i| self.structure[i][j][kk].clone());
            cond = cond.vstack(&k.mul(&m));
        }
        cond.kernel()
    }

    /// All three canonical chains computed to stabilization.
    pub fn series(&self) -> SeriesReport {
        let full = Subspace::full(self.dim);
        // descending central series
        let mut descending = vec![full.clone()];
        loop {
            let prev = descending.last().unwrap();
            let next = self.bracket_subspaces(&full, prev);
            if &next == prev {
                break;
            }
            descending.push(next);
        }
        let m1 = descending.len() - 1;
        // derived series
        let mut derived = vec![full.clone()];
        loop {
            let prev = derived.last().unwrap();
            let next = self.bracket_subspaces(prev, prev);
            if &next == prev {
                break;
            }
            derived.push(next);
        }
        // derived central series via the linear characterization
        // C_l = {x : [x, g] in C_{l-1}}, equivalent to the quotient-center
        // preimage definition.
        let mut derived_central = vec![self.center()];
        loop {
            let prev = derived_central.last().unwrap();
            let next = self.bracket_preimage(prev);
            if &next == prev {
                break;
            }
            derived_central.push(next);
        }
        let m2 = derived_central.len();
        SeriesReport { descending, derived, derived_central, m1: m1.max(1), m2, m: m1.max(1).max(m2) }
    }

    /// The canonical Abelian ideals (i(g), j(g)).
    ///
    /// i = sum_{k=1..m} C_k intersect g^k. j is computed both by the closed
    /// form C_1 + sum_{k=1}^{m-1} (C_{k+1} intersect g^k) + g^m and as the
    /// finite intersection of the C_k + g^k; the two must agree.
    pub fn canonical_ideals(&self) -> Result<(Subspace, Subspace), LieError> {
        let rep = self.series();
        let m = rep.m;
        let gk = |k: usize| rep.descending_term(k);
        let ck = |k: usize| rep.derived_central_term(k);

        let mut i_ideal = Subspace::zero(self.dim);
        for k in 1..=m {
            i_ideal = sum(&i_ideal, &intersect(&ck(k), &gk(k)));
        }

        let mut j_closed = ck(1);
        for k in 1..m {
            j_closed = sum(&j_closed, &intersect(&ck(k + 1), &gk(k)));
        }
        j_closed = sum(&j_closed, &gk(m));

        let mut j_cap = sum(&ck(1), &gk(1));
        for k in 2..=m {
            j_cap = intersect(&j_cap, &sum(&ck(k), &gk(k)));
        }

        if j_closed != j_cap {
            return Err(LieError::CanonicalIdealMismatch);
        }
        Ok((i_ideal, j_closed))
    }

    /// Smallest l >= 1 with [g^l, g^l] = 0, if any.
    pub fn has_abelian_descending_ideal(&self) -> Option<usize> {
        let rep = self.series();
        for l in 1..=rep.m1 {
            let t = rep.descending_term(l);
            if self.bracket_subspaces(&t, &t).is_zero() {
                return Some(l);
            }
        }
        None
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().all(|r| r.iter().all(|v| v.iter().all(|x| x.is_zero())))
    }

    pub fn is_solvable(&self) -> bool {
        self.series().derived.last().unwrap().is_zero()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.series().descending.last().unwrap().is_zero()
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.contains(&self.bracket_subspaces(&Subspace::full(self.dim), s))
    }

    /// Quotient by a verified ideal. The complement basis is made of the
    /// standard coordinate vectors outside the ideal's pivot columns, so the
    /// output is deterministic. Returns (quotient, projection, section):
    /// projection maps g onto quotient coordinates, section embeds them back.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(LieAlgebra, Matrix, Matrix), LieError> {
        if !self.is_ideal(ideal) {
            return Err(LieError::NotAnIdeal);
        }
        let n = self.dim;
        let q = n - ideal.dim();
        // pivot columns of the ideal's RREF basis
        let (_, _, pivots) = ideal.basis().rref();
        let compl: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        assert_eq!(compl.len(), q);
        // section: columns are the chosen complement basis vectors
        let section = Matrix::from_fn(n, q, |r, c| {
            if r == compl[c] {
                exactlin::rat(1)
            } else {
                Rational::zero()
            }
        });
        // change of basis: [ideal basis rows | complement rows] spans g;
        // solve for coordinates and keep the complement part.
        let mut basis_rows = ideal.basis_vectors();
        for &c in &compl {
            basis_rows.push(basis_vec(n, c));
        }
        let p = Matrix::from_rows(n, basis_rows).transpose();
        let p_inv = p.inverse().expect("basis change is invertible");
        // projection = last q rows of p_inv
        let projection = p_inv.submatrix(ideal.dim()..n, 0..n);
        let mut structure = vec![vec![vec![Rational::zero(); q]; q]; q];
        for a in 0..q {
            for b in 0..q {
                let br = self.bracket(&basis_vec(n, compl[a]), &basis_vec(n, compl[b]));
                structure[a][b] = projection.mul_vec(&br);
            }
        }
        let names: Vec<String> =
            compl.iter().map(|&c| self.basis_names[c].clone()).collect();
        let quotient = LieAlgebra::new(q, Some(names), structure)?;
        Ok((quotient, projection, section))
    }
}

pub fn basis_vec(dim: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[i] = exactlin::rat(1);
    v
}

pub fn add_assign(a: &mut [Rational], b: &[Rational]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

/// The three canonical chains with their stabilization indices.
///
/// `descending` holds g^0 .. g^m1, `derived` holds g^(0) .. (stable),
/// `derived_central` holds C_1 .. C_m2. Indices follow the convention that
/// the listed chains are strictly monotone until the final entry.
#[derive(Debug, Clone)]
pub struct SeriesReport {
    pub descending: Vec<Subspace>,
    pub derived: Vec<Subspace>,
    pub derived_central: Vec<Subspace>,
    pub m1: usize,
    pub m2: usize,
    pub m: usize,
}

impl SeriesReport {
    /// g^k with saturation beyond the stabilization index.
    pub fn descending_term(&self, k: usize) -> Subspace {
        self.descending[k.min(self.descending.len() - 1)].clone()
    }

    /// C_k (k >= 1) with saturation beyond the stabilization index.
    pub fn derived_central_term(&self, k: usize) -> Subspace {
        assert!(k >= 1);
        self.derived_central[(k - 1).min(self.derived_central.len() - 1)].clone()
    }
}
