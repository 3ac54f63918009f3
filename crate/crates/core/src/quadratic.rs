//! Invariant symmetric bilinear forms and everything that depends on them:
//! orthogonal complements, the Witt-style splitting along the canonical
//! isotropic ideal, the metric-existence decision for extension data with
//! coadjoint i-part, the double-extension generator, and orthogonal central
//! splittings.

use crate::cechain::{coadjoint, differential, e_phi, Cochain, Representation};
use crate::exactlin::{self, intersect, rat, Matrix, Rational, Subspace};
use crate::extension::ExtensionData;
use crate::liecore::{basis_vec, LieAlgebra};
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QuadraticError {
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("bilinear form is degenerate")]
    Degenerate,
    #[error("bilinear form is not invariant (first violation at {0:?})")]
    NotInvariant((usize, usize, usize)),
    #[error("canonical ideal i(g) is zero")]
    IZero,
    #[error("canonical ideals are not strictly nested: i(g) = j(g)")]
    INotProper,
    #[error("perp of i(g) differs from j(g)")]
    PerpMismatch,
    #[error("j(g) is not Abelian")]
    JNotAbelian,
    #[error("D is not skew with respect to b_v (fails at basis pair {0:?})")]
    NotSkew((usize, usize)),
    #[error("extracted bracket does not respect the h+a+i grading")]
    GradingViolation,
    #[error("extracted i-action is not the coadjoint representation")]
    NotCoadjoint,
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
    #[error(transparent)]
    Lie(#[from] crate::liecore::LieError),
}

/// Why metric_exists declined, in the order the checks run.
#[derive(Debug, Error)]
pub enum MetricFailure {
    #[error("precondition failed: {0}")]
    Precondition(&'static str),
    #[error("(b1) fails: mu is not cyclic at triple {0:?}")]
    B1NotCyclic((usize, usize, usize)),
    #[error("(b2) fails: lambda_phi is not alternating at pair {0:?}")]
    B2NotAlternating((usize, usize)),
    #[error("(b2) fails: d tau = lambda_phi - lambda with e_phi(tau) = 0 has no solution")]
    B2NoSolution,
}

/// Symmetric bilinear form given by its Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    pub dim: usize,
    pub gram: Matrix,
}

impl BilinearForm {
    pub fn new(gram: Matrix) -> Result<Self, QuadraticError> {
        if !gram.is_symmetric() {
            return Err(QuadraticError::NotSymmetric);
        }
        Ok(BilinearForm { dim: gram.rows(), gram })
    }

    pub fn identity(dim: usize) -> Self {
        BilinearForm { dim, gram: Matrix::identity(dim) }
    }

    pub fn apply(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let gv = self.gram.mul_vec(v);
        u.iter().zip(&gv).map(|(a, b)| a * b).sum()
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.gram.det().is_zero()
    }

    /// Gram matrix restricted to a list of vectors.
    pub fn restrict(&self, vectors: &[Vec<Rational>]) -> Matrix {
        Matrix::from_fn(vectors.len(), vectors.len(), |r, c| {
            self.apply(&vectors[r], &vectors[c])
        })
    }
}

/// First basis triple (i, j, k) with B([x_i,x_j],x_k) != B(x_i,[x_j,x_k]),
/// or None when the form is invariant.
pub fn invariance_violation(g: &LieAlgebra, b: &BilinearForm) -> Option<(usize, usize, usize)> {
    assert_eq!(g.dim(), b.dim, "dimension mismatch");
    let n = g.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = b.apply(&g.bracket_basis(i, j), &basis_vec(n, k));
                let rhs = b.apply(&basis_vec(n, i), &g.bracket_basis(j, k));
                if lhs != rhs {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

pub fn is_invariant(g: &LieAlgebra, b: &BilinearForm) -> bool {
    invariance_violation(g, b).is_none()
}

/// Orthogonal complement of a subspace with respect to a nondegenerate form.
pub fn perp(b: &BilinearForm, s: &Subspace) -> Result<Subspace, QuadraticError> {
    assert_eq!(s.ambient_dim(), b.dim, "dimension mismatch");
    if !b.is_nondegenerate() {
        return Err(QuadraticError::Degenerate);
    }
    if s.dim() == 0 {
        return Ok(Subspace::full(b.dim));
    }
    Ok(s.basis().mul(&b.gram).kernel())
}

fn require_invariant_nondegenerate(g: &LieAlgebra, b: &BilinearForm) -> Result<(), QuadraticError> {
    if !b.is_nondegenerate() {
        return Err(QuadraticError::Degenerate);
    }
    if let Some(t) = invariance_violation(g, b) {
        return Err(QuadraticError::NotInvariant(t));
    }
    Ok(())
}

/// Greedy deterministic complement: rows of `within` that extend `sub`.
fn complement_within(sub: &Subspace, within: &Subspace) -> Vec<Vec<Rational>> {
    let mut current = sub.clone();
    let mut out = Vec::new();
    for row in within.basis_vectors() {
        if !current.contains_vector(&row) {
            out.push(row.clone());
            current = exactlin::sum(&current, &Subspace::from_vectors(current.ambient_dim(), &[row]));
        }
    }
    out
}

/// The explicit Witt bases: (h-vectors dual to the i-basis, a-vectors,
/// i-basis rows). B(y_a, theta_b) = delta_ab, h isotropic, a orthogonal to h.
fn witt_bases(
    g: &LieAlgebra,
    b: &BilinearForm,
) -> Result<(Vec<Vec<Rational>>, Vec<Vec<Rational>>, Vec<Vec<Rational>>), QuadraticError> {
    require_invariant_nondegenerate(g, b)?;
    let (ideal_i, ideal_j) = g.canonical_ideals()?;
    if ideal_i.dim() == 0 {
        return Err(QuadraticError::IZero);
    }
    if ideal_i == ideal_j {
        return Err(QuadraticError::INotProper);
    }
    if perp(b, &ideal_i)? != ideal_j {
        return Err(QuadraticError::PerpMismatch);
    }
    let n = g.dim();
    let thetas = ideal_i.basis_vectors();
    let p = thetas.len();
    // complement of j in g out of standard basis vectors
    let w_rows = complement_within(&ideal_j, &Subspace::full(n));
    if w_rows.len() != p {
        return Err(QuadraticError::Internal("dim mismatch: complement of j vs i"));
    }
    // complement of i inside j
    let a_rows = complement_within(&ideal_i, &ideal_j);
    // dual vectors: y_pre = M^{-1} w with M_{cb} = B(w_c, theta_b)
    let m = Matrix::from_fn(p, p, |c, bb| b.apply(&w_rows[c], &thetas[bb]));
    let m_inv = m.inverse().ok_or(QuadraticError::Internal("pairing W x i degenerate"))?;
    let mut ys: Vec<Vec<Rational>> = Vec::with_capacity(p);
    for a in 0..p {
        let mut y = vec![Rational::zero(); n];
        for c in 0..p {
            let coef = m_inv.at(a, c);
            for t in 0..n {
                y[t] += coef * &w_rows[c][t];
            }
        }
        ys.push(y);
    }
    // orthogonalize against a (B restricted to a is nondegenerate)
    if !a_rows.is_empty() {
        let gram_a = Matrix::from_fn(a_rows.len(), a_rows.len(), |r, c| {
            b.apply(&a_rows[r], &a_rows[c])
        });
        let gram_a_inv =
            gram_a.inverse().ok_or(QuadraticError::Internal("B restricted to a degenerate"))?;
        for y in ys.iter_mut() {
            let rhs: Vec<Rational> = a_rows.iter().map(|ar| b.apply(y, ar)).collect();
            let beta = gram_a_inv.mul_vec(&rhs);
            for (d, ar) in a_rows.iter().enumerate() {
                for t in 0..n {
                    let delta = &beta[d] * &ar[t];
                    y[t] -= delta;
                }
            }
        }
    }
    // hyperbolic correction: subtract half self-pairings toward i
    let half = exactlin::ratio(1, 2);
    let pairings = Matrix::from_fn(p, p, |r, c| b.apply(&ys[r], &ys[c]));
    for a in 0..p {
        let mut y = ys[a].clone();
        for bb in 0..p {
            let coef = &half * pairings.at(a, bb);
            for t in 0..n {
                y[t] -= &coef * &thetas[bb][t];
            }
        }
        ys[a] = y;
    }
    // post-conditions
    for a in 0..p {
        for c in 0..p {
            if !b.apply(&ys[a], &ys[c]).is_zero() {
                return Err(QuadraticError::Internal("h is not isotropic"));
            }
            let d = b.apply(&ys[a], &thetas[c]);
            let expect = if a == c { rat(1) } else { Rational::zero() };
            if d != expect {
                return Err(QuadraticError::Internal("h is not dual to i"));
            }
        }
        for ar in &a_rows {
            if !b.apply(&ys[a], ar).is_zero() {
                return Err(QuadraticError::Internal("h is not orthogonal to a"));
            }
        }
    }
    Ok((ys, a_rows, thetas))
}

/// Witt-style complement: h isotropic and dual to i(g), a a B-nondegenerate
/// complement of i(g) inside j(g) orthogonal to h, with a-perp = h + i.
pub fn witt_complement(
    g: &LieAlgebra,
    b: &BilinearForm,
) -> Result<(Subspace, Subspace), QuadraticError> {
    let (ys, a_rows, thetas) = witt_bases(g, b)?;
    let n = g.dim();
    let h_sub = Subspace::from_vectors(n, &ys);
    let a_sub = Subspace::from_vectors(n, &a_rows);
    let i_sub = Subspace::from_vectors(n, &thetas);
    // verified decomposition
    let hi = exactlin::sum(&h_sub, &i_sub);
    if exactlin::sum(&hi, &a_sub) != Subspace::full(n) {
        return Err(QuadraticError::Internal("h + a + i is not everything"));
    }
    if h_sub.dim() + a_sub.dim() + i_sub.dim() != n {
        return Err(QuadraticError::Internal("h + a + i is not direct"));
    }
    if perp(b, &a_sub)? != hi {
        return Err(QuadraticError::Internal("a-perp differs from h + i"));
    }
    Ok((h_sub, a_sub))
}

/// Everything metric_exists certifies: the shifted data, the shift, the
/// canonical split metric on the modified algebra, and its pullback to the
/// algebra built from the original data.
#[derive(Debug, Clone)]
pub struct MetricCertificate {
    pub modified_data: ExtensionData,
    pub tau: Cochain,
    pub metric: BilinearForm,
    pub pullback_metric: BilinearForm,
}

/// Invariant-metric decision for extension data whose i-part carries the
/// coadjoint representation, against a supplied candidate form on a.
///
/// Checks, in order: preconditions (validity, rho = coadjoint, dim i = dim h,
/// b_a symmetric nondegenerate), then the cyclic condition (b1) on mu, then
/// condition (b2): an exact solve of d tau = lambda_phi - lambda subject to
/// e_phi(tau) = 0.
pub fn metric_exists(
    data: &ExtensionData,
    b_a: &BilinearForm,
) -> Result<MetricCertificate, MetricFailure> {
    let nh = data.h.dim();
    if data.validate().is_err() {
        return Err(MetricFailure::Precondition("extension data is not valid"));
    }
    if data.dim_i != nh {
        return Err(MetricFailure::Precondition("dim i must equal dim h"));
    }
    if data.rho.matrices != coadjoint(&data.h).matrices {
        return Err(MetricFailure::Precondition("rho is not the coadjoint representation"));
    }
    if b_a.dim != data.dim_a {
        return Err(MetricFailure::Precondition("b_a dimension mismatch"));
    }
    if !b_a.gram.is_symmetric() {
        return Err(MetricFailure::Precondition("b_a is not symmetric"));
    }
    if !b_a.is_nondegenerate() {
        return Err(MetricFailure::Precondition("b_a is degenerate"));
    }

    // (b1): cyclic property of mu under the i = h* identification
    for i in 0..nh {
        for j in 0..nh {
            for k in 0..nh {
                let lhs = data.mu.eval_indices(&[i, j])[k].clone();
                let rhs = data.mu.eval_indices(&[j, k])[i].clone();
                if lhs != rhs {
                    return Err(MetricFailure::B1NotCyclic((i, j, k)));
                }
            }
        }
    }

    // lambda_phi from phi*(x)(y)(v) = -B_a(lambda_phi(x, y), v)
    let ga_inv = b_a.gram.inverse().expect("nondegenerate by precondition");
    let lam_phi_at = |i: usize, j: usize| -> Vec<Rational> {
        let f: Vec<Rational> = (0..data.dim_a).map(|l| data.phi[i].at(j, l).clone()).collect();
        ga_inv.mul_vec(&f).iter().map(|x| -x).collect()
    };
    for i in 0..nh {
        let diag = lam_phi_at(i, i);
        if diag.iter().any(|x| !x.is_zero()) {
            return Err(MetricFailure::B2NotAlternating((i, i)));
        }
        for j in i + 1..nh {
            let ij = lam_phi_at(i, j);
            let ji = lam_phi_at(j, i);
            if ij.iter().zip(&ji).any(|(x, y)| x != &-y.clone()) {
                return Err(MetricFailure::B2NotAlternating((i, j)));
            }
        }
    }
    let lam_phi = Cochain::from_fn(2, nh, data.dim_a, |t| lam_phi_at(t[0], t[1]));

    // (b2): d tau = lam_phi - lam with e_phi(tau) = 0, one exact linear solve
    let delta = lam_phi.sub(&data.lam);
    let pairs = crate::cechain::combinations(nh, 2);
    let unknowns = nh * data.dim_a;
    let n_eq = pairs.len() * (data.dim_a + data.dim_i);
    let mut a_mat = Matrix::zeros(n_eq, unknowns);
    let mut b_vec = Matrix::zeros(n_eq, 1);
    let triv = Representation::trivial(data.h.clone(), data.dim_a);
    for u in 0..unknowns {
        let (j, l) = (u / data.dim_a, u % data.dim_a);
        let mut tau = Cochain::zero(1, nh, data.dim_a);
        let mut v = vec![Rational::zero(); data.dim_a];
        v[l] = rat(1);
        tau.set(&[j], v);
        let dtau = differential(&triv, &tau);
        let etau = e_phi(&data.phi, &tau);
        let mut row = 0usize;
        for p in &pairs {
            for x in dtau.get(p) {
                a_mat.set(row, u, x.clone());
                row += 1;
            }
            for x in etau.get(p) {
                a_mat.set(row, u, x.clone());
                row += 1;
            }
        }
    }
    {
        let mut row = 0usize;
        for p in &pairs {
            for x in delta.get(p) {
                b_vec.set(row, 0, x.clone());
                row += 1;
            }
            for _ in 0..data.dim_i {
                b_vec.set(row, 0, Rational::zero());
                row += 1;
            }
        }
    }
    let sol = a_mat.solve(&b_vec).ok_or(MetricFailure::B2NoSolution)?;
    let tau = Cochain::from_fn(1, nh, data.dim_a, |t| {
        (0..data.dim_a).map(|l| sol.at(t[0] * data.dim_a + l, 0).clone()).collect()
    });

    // certificate assembly
    let dtau = differential(&triv, &tau);
    let mut modified = data.clone();
    modified.lam = data.lam.add(&dtau);
    debug_assert_eq!(modified.lam, lam_phi);

    let n = data.total_dim();
    let mut gram = Matrix::zeros(n, n);
    for t in 0..nh {
        gram.set(t, nh + data.dim_a + t, rat(1));
        gram.set(nh + data.dim_a + t, t, rat(1));
    }
    for r in 0..data.dim_a {
        for c in 0..data.dim_a {
            gram.set(nh + r, nh + c, b_a.gram.at(r, c).clone());
        }
    }
    let metric = BilinearForm::new(gram).expect("split gram is symmetric");

    // pullback along Psi: x_j -> x_j - tau(x_j), identity on a and i
    let mut psi = Matrix::identity(n);
    for j in 0..nh {
        let tj = tau.get(&[j]);
        for r in 0..data.dim_a {
            psi.set(nh + r, j, -tj[r].clone());
        }
    }
    let pull = psi.transpose().mul(&metric.gram).mul(&psi);
    let pullback_metric = BilinearForm::new(pull).expect("pullback gram is symmetric");

    Ok(MetricCertificate { modified_data: modified, tau, metric, pullback_metric })
}

/// Data for the double extension of (V, B_V) by a skew map D.
#[derive(Debug, Clone)]
pub struct DoubleExtensionData {
    pub dim_v: usize,
    pub b_v: BilinearForm,
    pub d_map: Matrix,
}

impl DoubleExtensionData {
    pub fn new(b_v: BilinearForm, d_map: Matrix) -> Result<Self, QuadraticError> {
        let n = b_v.dim;
        assert_eq!((d_map.rows(), d_map.cols()), (n, n));
        if !b_v.is_nondegenerate() {
            return Err(QuadraticError::Degenerate);
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = b_v.apply(&d_map.col(i), &basis_vec(n, j));
                let rhs = -b_v.apply(&basis_vec(n, i), &d_map.col(j));
                if lhs != rhs {
                    return Err(QuadraticError::NotSkew((i, j)));
                }
            }
        }
        Ok(DoubleExtensionData { dim_v: n, b_v, d_map })
    }
}

/// The (dim V + 2)-dimensional algebra on basis (D, v_1..v_n, c) with
/// [D, v] = D(v), [v, w] = B_V(D(v), w) c, and the canonical invariant form
/// B(v, w) = B_V(v, w), B(D, c) = 1.
pub fn double_extension(dd: &DoubleExtensionData) -> Result<(LieAlgebra, BilinearForm), QuadraticError> {
    let nv = dd.dim_v;
    let n = nv + 2;
    let mut brackets: Vec<(usize, usize, Vec<Rational>)> = Vec::new();
    for l in 0..nv {
        let mut v = vec![Rational::zero(); n];
        let col = dd.d_map.col(l);
        v[1..1 + nv].clone_from_slice(&col);
        brackets.push((0, 1 + l, v));
    }
    for l in 0..nv {
        for m in l + 1..nv {
            let omega = dd.b_v.apply(&dd.d_map.col(l), &basis_vec(nv, m));
            let mut v = vec![Rational::zero(); n];
            v[n - 1] = omega;
            brackets.push((1 + l, 1 + m, v));
        }
    }
    let mut names = vec!["D".to_string()];
    for l in 1..=nv {
        names.push(format!("v{l}"));
    }
    names.push("c".to_string());
    let g = LieAlgebra::from_brackets(n, Some(names), &brackets)?;
    let mut gram = Matrix::zeros(n, n);
    gram.set(0, n - 1, rat(1));
    gram.set(n - 1, 0, rat(1));
    for r in 0..nv {
        for c in 0..nv {
            gram.set(1 + r, 1 + c, dd.b_v.gram.at(r, c).clone());
        }
    }
    let b = BilinearForm::new(gram)?;
    debug_assert!(is_invariant(&g, &b));
    Ok((g, b))
}

/// Maximal central ideal on which b is nondegenerate, with its orthogonal
/// complement: g = ideal (perp) complement, both ideals, zero bracket across.
/// None when only the trivial split exists.
pub fn orthogonal_split_central(
    g: &LieAlgebra,
    b: &BilinearForm,
) -> Result<Option<(Subspace, Subspace)>, QuadraticError> {
    require_invariant_nondegenerate(g, b)?;
    let center = g.center();
    if center.dim() == 0 {
        return Ok(None);
    }
    // radical of b restricted to the center
    let center_perp = perp(b, &center)?;
    let radical = intersect(&center, &center_perp);
    let nondeg_rows = complement_within(&radical, &center);
    if nondeg_rows.is_empty() {
        return Ok(None);
    }
    let ideal = Subspace::from_vectors(g.dim(), &nondeg_rows);
    let gram = b.restrict(&ideal.basis_vectors());
    if gram.det().is_zero() {
        return Err(QuadraticError::Internal("complement of center radical is degenerate"));
    }
    let complement = perp(b, &ideal)?;
    // verification: both pieces are subalgebras and commute
    if !complement.contains(&g.bracket_subspaces(&complement, &complement)) {
        return Err(QuadraticError::Internal("perp complement is not a subalgebra"));
    }
    if !g.bracket_subspaces(&ideal, &complement).is_zero() {
        return Err(QuadraticError::Internal("split pieces do not commute"));
    }
    if !g.bracket_subspaces(&ideal, &ideal).is_zero() {
        return Err(QuadraticError::Internal("central ideal does not commute with itself"));
    }
    Ok(Some((ideal, complement)))
}

/// Result of rewriting a quadratic algebra in Witt coordinates: extension
/// data over h = g/j with the coadjoint i-part, the restricted form on a,
/// and the change of basis (columns = new basis in old coordinates).
#[derive(Debug, Clone)]
pub struct Extraction {
    pub data: ExtensionData,
    pub b_a: BilinearForm,
    pub basis_change: Matrix,
}

/// Rewrites a quadratic algebra with Abelian j(g) and i(g) strictly inside
/// j(g) = i(g)-perp in the coordinates (h-basis, a-basis, i-basis), where
/// the i-basis is B-dual to the h-basis, and reads off (lambda, mu, phi).
pub fn extract_extension_data(g: &LieAlgebra, b: &BilinearForm) -> Result<Extraction, QuadraticError> {
    let (_, ideal_j) = g.canonical_ideals()?;
    if !g.bracket_subspaces(&ideal_j, &ideal_j).is_zero() {
        return Err(QuadraticError::JNotAbelian);
    }
    let (ys, a_rows, thetas) = witt_bases(g, b)?;
    let (p, q) = (ys.len(), a_rows.len());
    let n = g.dim();
    assert_eq!(p + q + p, n);
    let mut cols: Vec<Vec<Rational>> = Vec::new();
    cols.extend(ys.iter().cloned());
    cols.extend(a_rows.iter().cloned());
    cols.extend(thetas.iter().cloned());
    let basis_change = Matrix::from_rows(n, cols).transpose();
    let p_inv = basis_change.inverse().ok_or(QuadraticError::Internal("basis change singular"))?;

    // structure constants in the new basis
    let new_bracket = |i: usize, j: usize| -> Vec<Rational> {
        p_inv.mul_vec(&g.bracket(&basis_change.col(i), &basis_change.col(j)))
    };
    let zero_on = |v: &[Rational], range: std::ops::Range<usize>| v[range].iter().all(|x| x.is_zero());

    // grading checks: [h,h] anywhere, [h,a] in i, [h,i] in i, [j,j] = 0
    for i in 0..n {
        for j in p..n {
            let v = new_bracket(i, j);
            if i >= p {
                if v.iter().any(|x| !x.is_zero()) {
                    return Err(QuadraticError::GradingViolation);
                }
            } else if !(zero_on(&v, 0..p) && zero_on(&v, p..p + q)) {
                return Err(QuadraticError::GradingViolation);
            }
        }
    }

    let h_structure: Vec<Vec<Vec<Rational>>> = (0..p)
        .map(|i| (0..p).map(|j| new_bracket(i, j)[..p].to_vec()).collect())
        .collect();
    let h_new = LieAlgebra::new(p, None, h_structure)?;
    let lam = Cochain::from_fn(2, p, q, |t| new_bracket(t[0], t[1])[p..p + q].to_vec());
    let mu = Cochain::from_fn(2, p, p, |t| new_bracket(t[0], t[1])[p + q..].to_vec());
    let phi: Vec<Matrix> = (0..p)
        .map(|i| {
            Matrix::from_fn(p, q, |r, l| new_bracket(i, p + l)[p + q + r].clone())
        })
        .collect();
    let rho_mats: Vec<Matrix> = (0..p)
        .map(|i| {
            Matrix::from_fn(p, p, |r, t| new_bracket(i, p + q + t)[p + q + r].clone())
        })
        .collect();
    if rho_mats != coadjoint(&h_new).matrices {
        return Err(QuadraticError::NotCoadjoint);
    }
    let rho = Representation::new(h_new.clone(), rho_mats);
    let data = ExtensionData::new(h_new, q, p, rho, phi, lam, mu);
    let b_a = BilinearForm::new(Matrix::from_fn(q, q, |r, c| b.apply(&a_rows[r], &a_rows[c])))?;
    Ok(Extraction { data, b_a, basis_change })
}

/// Example-style double extension over a 3-dimensional V with a unit vector
/// v1 and a hyperbolic pair (v2, v3); D is the skew map fixing the pair's
/// lines: D(v1) = 0, D(v2) = v2, D(v3) = -v3.
pub fn example_three_two() -> (LieAlgebra, BilinearForm) {
    let b_v = BilinearForm::new(Matrix::from_i64(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]])).unwrap();
    let d = Matrix::from_i64(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, -1]]);
    let dd = DoubleExtensionData::new(b_v, d).expect("D is skew for the hyperbolic pair");
    double_extension(&dd).expect("valid double extension")
}
