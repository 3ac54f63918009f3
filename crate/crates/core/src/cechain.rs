//! Chevalley-Eilenberg cochains with coefficients in a represented module.
//!
//! A degree-n cochain stores one module vector per strictly increasing
//! n-tuple of basis indices; evaluation on arbitrary tuples extends by
//! alternation. The differential follows
//!
//!   (d L)(x_1..x_{n+1}) = sum_i (-1)^{i+1} R(x_i) L(.. x_i-hat ..)
//!                       + sum_{i<j} (-1)^{i+j} L([x_i,x_j], .. hats ..)
//!
//! at every degree; the degree-one connector e_phi and the block operator
//! D_phi = (d 0; e_phi d) are built on top of it.

use crate::exactlin::{Matrix, Rational};
use crate::liecore::{basis_vec, LieAlgebra};
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CechainError {
    #[error("group element has a singular {0} component")]
    Singular(&'static str),
}

/// Strictly increasing k-tuples from 0..n in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if k > n {
        return vec![];
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn combo_rank(combos: &[Vec<usize>], tuple: &[usize]) -> usize {
    combos
        .iter()
        .position(|c| c.as_slice() == tuple)
        .expect("tuple must be strictly increasing and in range")
}

/// Representation of a Lie algebra on Q^module_dim: one matrix per basis
/// element of h.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub h: LieAlgebra,
    pub module_dim: usize,
    pub matrices: Vec<Matrix>,
}

impl Representation {
    pub fn new(h: LieAlgebra, matrices: Vec<Matrix>) -> Self {
        assert_eq!(matrices.len(), h.dim());
        let module_dim = if matrices.is_empty() { 0 } else { matrices[0].rows() };
        for m in &matrices {
            assert_eq!(m.rows(), module_dim);
            assert_eq!(m.cols(), module_dim);
        }
        Representation { h, module_dim, matrices }
    }

    pub fn trivial(h: LieAlgebra, module_dim: usize) -> Self {
        let n = h.dim();
        Representation::new(h, vec![Matrix::zeros(module_dim, module_dim); n])
    }

    /// Matrix of R(x) for a coordinate vector x.
    pub fn apply(&self, x: &[Rational]) -> Matrix {
        assert_eq!(x.len(), self.h.dim());
        let mut out = Matrix::zeros(self.module_dim, self.module_dim);
        for (i, m) in self.matrices.iter().enumerate() {
            if !x[i].is_zero() {
                out = out.add(&m.scale(&x[i]));
            }
        }
        out
    }

    /// Violations of R([x_i,x_j]) = R(x_i)R(x_j) - R(x_j)R(x_i) over i<j.
    pub fn hom_defect(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.h.dim() {
            for j in i + 1..self.h.dim() {
                let lhs = self.apply(&self.h.bracket_basis(i, j));
                let rhs = self.matrices[i]
                    .mul(&self.matrices[j])
                    .sub(&self.matrices[j].mul(&self.matrices[i]));
                if lhs != rhs {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Tensor-product representation on Hom(a, module) flattened column-major
    /// (column l of T occupies slots l*module_dim..): rho-bar(x)(T) = rho(x) T.
    pub fn hom_representation(&self, dim_a: usize) -> Representation {
        let md = self.module_dim * dim_a;
        let mats: Vec<Matrix> = self
            .matrices
            .iter()
            .map(|m| {
                Matrix::from_fn(md, md, |r, c| {
                    let (lr, ir) = (r / self.module_dim, r % self.module_dim);
                    let (lc, ic) = (c / self.module_dim, c % self.module_dim);
                    if lr == lc {
                        m.at(ir, ic).clone()
                    } else {
                        Rational::zero()
                    }
                })
            })
            .collect();
        Representation::new(self.h.clone(), mats)
    }
}

/// Coadjoint representation ad*(x)(alpha) = -alpha o ad(x) on the dual basis:
/// (ad*(x_i) theta^j)(x_k) = -c_{ik}^j.
pub fn coadjoint(h: &LieAlgebra) -> Representation {
    let n = h.dim();
    let c = h.structure();
    let mats: Vec<Matrix> = (0..n)
        .map(|i| Matrix::from_fn(n, n, |k, j| -c[i][k][j].clone()))
        .collect();
    Representation::new(h.clone(), mats)
}

/// Alternating multilinear map h x .. x h -> Q^module_dim stored on strictly
/// increasing index tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub h_dim: usize,
    pub module_dim: usize,
    combos: Vec<Vec<usize>>,
    coeffs: Vec<Vec<Rational>>,
}

impl Cochain {
    pub fn zero(degree: usize, h_dim: usize, module_dim: usize) -> Self {
        let combos = combinations(h_dim, degree);
        let coeffs = vec![vec![Rational::zero(); module_dim]; combos.len()];
        Cochain { degree, h_dim, module_dim, combos, coeffs }
    }

    pub fn from_fn(
        degree: usize,
        h_dim: usize,
        module_dim: usize,
        mut f: impl FnMut(&[usize]) -> Vec<Rational>,
    ) -> Self {
        let mut c = Cochain::zero(degree, h_dim, module_dim);
        for (r, tuple) in c.combos.clone().iter().enumerate() {
            let v = f(tuple);
            assert_eq!(v.len(), module_dim);
            c.coeffs[r] = v;
        }
        c
    }

    pub fn combos(&self) -> &[Vec<usize>] {
        &self.combos
    }

    pub fn get(&self, tuple: &[usize]) -> &[Rational] {
        &self.coeffs[combo_rank(&self.combos, tuple)]
    }

    pub fn set(&mut self, tuple: &[usize], v: Vec<Rational>) {
        assert_eq!(v.len(), self.module_dim);
        let r = combo_rank(&self.combos, tuple);
        self.coeffs[r] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|v| v.iter().all(|x| x.is_zero()))
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!((self.degree, self.h_dim, self.module_dim), (other.degree, other.h_dim, other.module_dim));
        let mut out = self.clone();
        for (r, v) in out.coeffs.iter_mut().enumerate() {
            for (k, x) in v.iter_mut().enumerate() {
                *x += &other.coeffs[r][k];
            }
        }
        out
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cochain {
        self.scale(&-crate::exactlin::rat(1))
    }

    pub fn scale(&self, s: &Rational) -> Cochain {
        let mut out = self.clone();
        for v in out.coeffs.iter_mut() {
            for x in v.iter_mut() {
                *x = &*x * s;
            }
        }
        out
    }

    /// Evaluation on an arbitrary index tuple: sorts with the permutation
    /// sign, zero on repeated indices.
    pub fn eval_indices(&self, tuple: &[usize]) -> Vec<Rational> {
        assert_eq!(tuple.len(), self.degree);
        let mut idx = tuple.to_vec();
        // repeated index => zero by alternation
        for i in 0..idx.len() {
            for j in i + 1..idx.len() {
                if idx[i] == idx[j] {
                    return vec![Rational::zero(); self.module_dim];
                }
            }
        }
        // bubble sort tracking sign
        let mut sign = 1i64;
        let n = idx.len();
        for i in 0..n {
            for j in 0..n - 1 - i {
                if idx[j] > idx[j + 1] {
                    idx.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        let base = self.get(&idx);
        base.iter().map(|x| x * crate::exactlin::rat(sign)).collect()
    }

    /// Full multilinear evaluation on coordinate-vector arguments.
    pub fn eval_vectors(&self, args: &[Vec<Rational>]) -> Vec<Rational> {
        assert_eq!(args.len(), self.degree);
        for a in args {
            assert_eq!(a.len(), self.h_dim);
        }
        let mut out = vec![Rational::zero(); self.module_dim];
        let mut idx = vec![0usize; self.degree];
        loop {
            let mut coef = crate::exactlin::rat(1);
            let mut zero = false;
            for (slot, &i) in idx.iter().enumerate() {
                if args[slot][i].is_zero() {
                    zero = true;
                    break;
                }
                coef *= &args[slot][i];
            }
            if !zero {
                let val = self.eval_indices(&idx);
                for (k, v) in val.iter().enumerate() {
                    if !v.is_zero() {
                        out[k] += &coef * v;
                    }
                }
            }
            // odometer
            let mut slot = self.degree;
            loop {
                if slot == 0 {
                    return out;
                }
                slot -= 1;
                idx[slot] += 1;
                if idx[slot] < self.h_dim {
                    break;
                }
                idx[slot] = 0;
                if slot == 0 {
                    return out;
                }
            }
        }
    }
}

/// Chevalley-Eilenberg differential of c with respect to R.
pub fn differential(rep: &Representation, c: &Cochain) -> Cochain {
    assert_eq!(c.h_dim, rep.h.dim(), "h dimension mismatch");
    assert_eq!(c.module_dim, rep.module_dim, "module dimension mismatch");
    let n = c.degree;
    Cochain::from_fn(n + 1, c.h_dim, c.module_dim, |tuple| {
        let mut out = vec![Rational::zero(); c.module_dim];
        // representation part
        for (pos, &xi) in tuple.iter().enumerate() {
            let rest: Vec<usize> =
                tuple.iter().enumerate().filter(|&(p, _)| p != pos).map(|(_, &t)| t).collect();
            let inner = c.eval_indices(&rest);
            let acted = rep.matrices[xi].mul_vec(&inner);
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            for (k, v) in acted.iter().enumerate() {
                out[k] += v * crate::exactlin::rat(sign);
            }
        }
        // bracket part
        for a in 0..tuple.len() {
            for b in a + 1..tuple.len() {
                let br = rep.h.bracket_basis(tuple[a], tuple[b]);
                if br.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let rest: Vec<usize> = tuple
                    .iter()
                    .enumerate()
                    .filter(|&(p, _)| p != a && p != b)
                    .map(|(_, &t)| t)
                    .collect();
                // (-1)^{i+j} with 1-based positions = (-1)^{a+b} 0-based
                let sign = if (a + b) % 2 == 0 { 1 } else { -1 };
                let mut args: Vec<Vec<Rational>> = vec![br];
                for &t in &rest {
                    args.push(basis_vec(c.h_dim, t));
                }
                let val = c.eval_vectors(&args);
                for (k, v) in val.iter().enumerate() {
                    out[k] += v * crate::exactlin::rat(sign);
                }
            }
        }
        out
    })
}

/// View of a Hom(a, i)-valued cochain: matrix of value at an increasing tuple.
pub fn hom_value_as_matrix(c: &Cochain, dim_a: usize, dim_i: usize, tuple: &[usize]) -> Matrix {
    assert_eq!(c.module_dim, dim_a * dim_i);
    let flat = c.get(tuple);
    Matrix::from_fn(dim_i, dim_a, |r, col| flat[col * dim_i + r].clone())
}

/// Builds the flattened Hom(a, i)-valued 1-cochain phi from one matrix per
/// basis element of h.
pub fn hom_cochain_from_matrices(h_dim: usize, dim_a: usize, dim_i: usize, mats: &[Matrix]) -> Cochain {
    assert_eq!(mats.len(), h_dim);
    for m in mats {
        assert_eq!((m.rows(), m.cols()), (dim_i, dim_a));
    }
    Cochain::from_fn(1, h_dim, dim_a * dim_i, |tuple| {
        let m = &mats[tuple[0]];
        let mut flat = Vec::with_capacity(dim_a * dim_i);
        for c in 0..dim_a {
            for r in 0..dim_i {
                flat.push(m.at(r, c).clone());
            }
        }
        flat
    })
}

pub fn hom_cochain_to_matrices(c: &Cochain, dim_a: usize, dim_i: usize) -> Vec<Matrix> {
    assert_eq!(c.degree, 1);
    (0..c.h_dim).map(|j| hom_value_as_matrix(c, dim_a, dim_i, &[j])).collect()
}

/// Degree-one connector e_phi: C^n(h; a) -> C^{n+1}(h; i),
/// e_phi(l)(x_1..x_{n+1}) = sum_i (-1)^{i+1} phi(x_i)(l(.. x_i-hat ..)).
pub fn e_phi(phi_mats: &[Matrix], lam: &Cochain) -> Cochain {
    let h_dim = lam.h_dim;
    assert_eq!(phi_mats.len(), h_dim);
    let dim_i = phi_mats[0].rows();
    let dim_a = phi_mats[0].cols();
    assert_eq!(lam.module_dim, dim_a, "lambda must take values in a");
    Cochain::from_fn(lam.degree + 1, h_dim, dim_i, |tuple| {
        let mut out = vec![Rational::zero(); dim_i];
        for (pos, &xi) in tuple.iter().enumerate() {
            let rest: Vec<usize> =
                tuple.iter().enumerate().filter(|&(p, _)| p != pos).map(|(_, &t)| t).collect();
            let inner = lam.eval_indices(&rest);
            let acted = phi_mats[xi].mul_vec(&inner);
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            for (k, v) in acted.iter().enumerate() {
                out[k] += v * crate::exactlin::rat(sign);
            }
        }
        out
    })
}

/// Block differential D_phi applied to (lambda, mu):
/// returns (d lambda, e_phi(lambda) + d mu) where lambda lives in the trivial
/// module a and mu in the module of rho.
pub fn big_d(
    phi_mats: &[Matrix],
    rho: &Representation,
    lam: &Cochain,
    mu: &Cochain,
) -> (Cochain, Cochain) {
    assert_eq!(lam.h_dim, rho.h.dim());
    assert_eq!(mu.h_dim, rho.h.dim());
    assert_eq!(mu.module_dim, rho.module_dim);
    let trivial = Representation::trivial(rho.h.clone(), lam.module_dim);
    let dl = differential(&trivial, lam);
    let dm = differential(rho, mu).add(&e_phi(phi_mats, lam));
    (dl, dm)
}

/// gamma = (g, sigma) with g acting on h and sigma on the module.
#[derive(Debug, Clone)]
pub struct GroupElement {
    pub g: Matrix,
    pub sigma: Matrix,
    g_inv: Matrix,
    sigma_inv: Matrix,
}

impl GroupElement {
    pub fn new(g: Matrix, sigma: Matrix) -> Result<Self, CechainError> {
        let g_inv = g.inverse().ok_or(CechainError::Singular("g"))?;
        let sigma_inv = sigma.inverse().ok_or(CechainError::Singular("sigma"))?;
        Ok(GroupElement { g, sigma, g_inv, sigma_inv })
    }

    pub fn identity(h_dim: usize, module_dim: usize) -> Self {
        GroupElement::new(Matrix::identity(h_dim), Matrix::identity(module_dim)).unwrap()
    }

    pub fn g_inv(&self) -> &Matrix {
        &self.g_inv
    }

    /// gamma1 * gamma2 acts as gamma1 after gamma2.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement::new(self.g.mul(&other.g), self.sigma.mul(&other.sigma)).unwrap()
    }

    /// Whether g preserves the bracket of h.
    pub fn is_automorphism_of(&self, h: &LieAlgebra) -> bool {
        assert_eq!(self.g.rows(), h.dim());
        for i in 0..h.dim() {
            for j in i + 1..h.dim() {
                let lhs = self.g.mul_vec(&h.bracket_basis(i, j));
                let rhs = h.bracket(&self.g.col(i), &self.g.col(j));
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

/// (gamma . c)(...) = sigma(c(g^{-1} ..., ..., g^{-1} ...)).
pub fn act_on_cochain(gamma: &GroupElement, c: &Cochain) -> Cochain {
    assert_eq!(gamma.g.rows(), c.h_dim);
    assert_eq!(gamma.sigma.rows(), c.module_dim);
    Cochain::from_fn(c.degree, c.h_dim, c.module_dim, |tuple| {
        let args: Vec<Vec<Rational>> = tuple.iter().map(|&t| gamma.g_inv.col(t)).collect();
        gamma.sigma.mul_vec(&c.eval_vectors(&args))
    })
}

/// (gamma . R)(x) = sigma R(g^{-1} x) sigma^{-1}.
pub fn act_on_representation(gamma: &GroupElement, rep: &Representation) -> Representation {
    assert_eq!(gamma.g.rows(), rep.h.dim());
    assert_eq!(gamma.sigma.rows(), rep.module_dim);
    let mats: Vec<Matrix> = (0..rep.h.dim())
        .map(|j| {
            let x = gamma.g_inv.col(j);
            gamma.sigma.mul(&rep.apply(&x)).mul(&gamma.sigma_inv)
        })
        .collect();
    Representation::new(rep.h.clone(), mats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{rat, ratio};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn heis() -> LieAlgebra {
        LieAlgebra::heisenberg()
    }

    fn rand_rat(rng: &mut ChaCha8Rng) -> Rational {
        ratio(rng.gen_range(-4..5), rng.gen_range(1..4))
    }

    fn rand_cochain(rng: &mut ChaCha8Rng, degree: usize, h_dim: usize, module_dim: usize) -> Cochain {
        Cochain::from_fn(degree, h_dim, module_dim, |_| {
            (0..module_dim).map(|_| rand_rat(rng)).collect()
        })
    }

    #[test]
    fn combinations_enumerate() {
        assert_eq!(combinations(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(2, 3), Vec::<Vec<usize>>::new());
    }

    #[test]
    fn coadjoint_heisenberg_matches_hand_values() {
        let r = coadjoint(&heis());
        // ad*(x1) theta^3 = -theta^2, ad*(x2) theta^3 = theta^1, ad*(x3) = 0
        let mut m1 = Matrix::zeros(3, 3);
        m1.set(1, 2, rat(-1));
        let mut m2 = Matrix::zeros(3, 3);
        m2.set(0, 2, rat(1));
        assert_eq!(r.matrices[0], m1);
        assert_eq!(r.matrices[1], m2);
        assert_eq!(r.matrices[2], Matrix::zeros(3, 3));
        assert!(r.hom_defect().is_empty());
    }

    #[test]
    fn coadjoint_abelian_is_zero() {
        let r = coadjoint(&LieAlgebra::abelian(4));
        assert!(r.matrices.iter().all(|m| m.is_zero()));
    }

    #[test]
    fn two_cochain_differential_vanishes_on_heisenberg_trivial_module() {
        // trivial module: (d l)(x1,x2,x3) = -l([x1,x2],x3) = -l(x3,x3) = 0
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let triv = Representation::trivial(heis(), 2);
        for _ in 0..10 {
            let l = rand_cochain(&mut rng, 2, 3, 2);
            assert!(differential(&triv, &l).is_zero());
        }
    }

    #[test]
    fn one_cochain_differential_on_heisenberg() {
        // d tau (x1,x2) = -tau(x3); other pairs zero (trivial module).
        let triv = Representation::trivial(heis(), 2);
        let tau = Cochain::from_fn(1, 3, 2, |t| vec![rat((t[0] + 1) as i64), rat(7)]);
        let d = differential(&triv, &tau);
        assert_eq!(d.get(&[0, 1]), &[rat(-3), rat(-7)][..]);
        assert_eq!(d.get(&[0, 2]), &[rat(0), rat(0)][..]);
        assert_eq!(d.get(&[1, 2]), &[rat(0), rat(0)][..]);
    }

    #[test]
    fn d_squared_zero_all_degrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let h = heis();
        let rep = coadjoint(&h);
        for degree in 0..=2 {
            for _ in 0..8 {
                let c = rand_cochain(&mut rng, degree, 3, 3);
                let dd = differential(&rep, &differential(&rep, &c));
                assert!(dd.is_zero(), "d^2 != 0 at degree {degree}");
            }
        }
    }

    #[test]
    fn e_phi_zero_when_phi_zero() {
        let lam = Cochain::from_fn(2, 3, 2, |_| vec![rat(1), rat(2)]);
        let phi = vec![Matrix::zeros(3, 2); 3];
        assert!(e_phi(&phi, &lam).is_zero());
    }

    #[test]
    fn e_phi_cyclic_form_degree_two() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let phi: Vec<Matrix> =
            (0..3).map(|_| Matrix::from_fn(3, 2, |_, _| rand_rat(&mut rng))).collect();
        let lam = rand_cochain(&mut rng, 2, 3, 2);
        let e = e_phi(&phi, &lam);
        // phi(x1)l(x2,x3) - phi(x2)l(x1,x3) + phi(x3)l(x1,x2)
        let mut expect = phi[0].mul_vec(lam.get(&[1, 2]));
        let t2 = phi[1].mul_vec(lam.get(&[0, 2]));
        let t3 = phi[2].mul_vec(lam.get(&[0, 1]));
        for k in 0..3 {
            expect[k] = &expect[k] - &t2[k] + &t3[k];
        }
        assert_eq!(e.get(&[0, 1, 2]), &expect[..]);
    }

    /// Random 1-cocycle for rho-bar obtained by exact kernel sampling.
    pub(crate) fn random_one_cocycle(
        rng: &mut ChaCha8Rng,
        rho: &Representation,
        dim_a: usize,
    ) -> Vec<Matrix> {
        let h_dim = rho.h.dim();
        let dim_i = rho.module_dim;
        let bar = rho.hom_representation(dim_a);
        let md = bar.module_dim;
        // linear map phi-flat -> d phi coefficients
        let unknowns = h_dim * md;
        let pairs = combinations(h_dim, 2);
        let mut rows = Matrix::zeros(0, unknowns);
        for pair in &pairs {
            let mut block = Matrix::zeros(md, unknowns);
            for u in 0..unknowns {
                let (j, slot) = (u / md, u % md);
                let mut phi = Cochain::zero(1, h_dim, md);
                let mut v = vec![Rational::zero(); md];
                v[slot] = rat(1);
                phi.set(&[j], v);
                let d = differential(&bar, &phi);
                block.set_col(u, d.get(pair));
            }
            rows = rows.vstack(&block);
        }
        let ker = rows.kernel();
        let mut flat = vec![Rational::zero(); unknowns];
        for b in ker.basis_vectors() {
            let c = rand_rat(rng);
            for (k, x) in b.iter().enumerate() {
                flat[k] += &c * x;
            }
        }
        let phi = Cochain::from_fn(1, h_dim, md, |t| flat[t[0] * md..(t[0] + 1) * md].to_vec());
        hom_cochain_to_matrices(&phi, dim_a, dim_i)
    }

    #[test]
    fn anticommutativity_with_random_cocycles() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let h = heis();
        let rho = coadjoint(&h);
        for _ in 0..20 {
            let phi = random_one_cocycle(&mut rng, &rho, 2);
            // check the cocycle property first
            let flat = hom_cochain_from_matrices(3, 2, 3, &phi);
            assert!(differential(&rho.hom_representation(2), &flat).is_zero());
            for degree in 1..=2 {
                let lam = rand_cochain(&mut rng, degree, 3, 2);
                let triv = Representation::trivial(h.clone(), 2);
                let lhs = e_phi(&phi, &differential(&triv, &lam));
                let rhs = differential(&rho, &e_phi(&phi, &lam)).neg();
                assert_eq!(lhs, rhs);
            }
        }
    }

    fn rand_group_element(rng: &mut ChaCha8Rng, h_dim: usize, md: usize) -> GroupElement {
        loop {
            let g = Matrix::from_fn(h_dim, h_dim, |_, _| rand_rat(rng));
            let s = Matrix::from_fn(md, md, |_, _| rand_rat(rng));
            if let Ok(ge) = GroupElement::new(g, s) {
                return ge;
            }
        }
    }

    /// Random automorphism of the Heisenberg algebra: lower-right entry is
    /// the 2x2 determinant, third column (0, 0, g33).
    fn random_heis_aut(rng: &mut ChaCha8Rng) -> Matrix {
        loop {
            let (a, b, c, d) = (rand_rat(rng), rand_rat(rng), rand_rat(rng), rand_rat(rng));
            let g33 = &a * &d - &b * &c;
            if g33.is_zero() {
                continue;
            }
            let (e, f) = (rand_rat(rng), rand_rat(rng));
            let mut g = Matrix::zeros(3, 3);
            g.set(0, 0, a);
            g.set(0, 1, b);
            g.set(1, 0, c);
            g.set(1, 1, d);
            g.set(2, 0, e);
            g.set(2, 1, f);
            g.set(2, 2, g33);
            return g;
        }
    }

    /// k compatible with the coadjoint representation for a given g:
    /// 2x2 block k33 * g33 * (A^t)^{-1}, last row (0, 0, k33).
    fn coadjoint_k(g: &Matrix, k33: Rational, k13: Rational, k23: Rational) -> Matrix {
        let a = g.submatrix(0..2, 0..2);
        let block = a.transpose().inverse().unwrap().scale(&(&k33 * g.at(2, 2)));
        let mut k = Matrix::zeros(3, 3);
        for r in 0..2 {
            for c in 0..2 {
                k.set(r, c, block.at(r, c).clone());
            }
        }
        k.set(0, 2, k13);
        k.set(1, 2, k23);
        k.set(2, 2, k33);
        k
    }

    #[test]
    fn group_action_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let c = rand_cochain(&mut rng, 2, 3, 3);
            let id = GroupElement::identity(3, 3);
            assert_eq!(act_on_cochain(&id, &c), c);
            let g1 = rand_group_element(&mut rng, 3, 3);
            let g2 = rand_group_element(&mut rng, 3, 3);
            let lhs = act_on_cochain(&g1.compose(&g2), &c);
            let rhs = act_on_cochain(&g1, &act_on_cochain(&g2, &c));
            assert_eq!(lhs, rhs);
            // scalar sigma acts linearly
            let two = GroupElement::new(Matrix::identity(3), Matrix::identity(3).scale(&rat(2))).unwrap();
            assert_eq!(act_on_cochain(&two, &c), c.scale(&rat(2)));
        }
    }

    #[test]
    fn representation_action_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let rep = coadjoint(&heis());
        let id = GroupElement::identity(3, 3);
        assert_eq!(act_on_representation(&id, &rep), rep);
        let g1 = rand_group_element(&mut rng, 3, 3);
        let g2 = rand_group_element(&mut rng, 3, 3);
        let lhs = act_on_representation(&g1.compose(&g2), &rep);
        let rhs = act_on_representation(&g1, &act_on_representation(&g2, &rep));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn equivariance_iff_transported_representation() {
        // d' Phi(gamma) = Phi(gamma) d  <=>  R' = gamma.R  (tested both ways)
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let h = heis();
        let rep = coadjoint(&h);
        for _ in 0..6 {
            let gamma = loop {
                // need g in Aut(h) so that R' is a representation of h
                let ge = rand_group_element(&mut rng, 3, 3);
                if let Ok(ge2) = GroupElement::new(random_heis_aut(&mut rng), ge.sigma.clone()) {
                    break ge2;
                }
            };
            let transported = act_on_representation(&gamma, &rep);
            assert!(transported.hom_defect().is_empty());
            // matching R': commutation on random cochains
            for degree in 1..=2 {
                let c = rand_cochain(&mut rng, degree, 3, 3);
                let lhs = differential(&transported, &act_on_cochain(&gamma, &c));
                let rhs = act_on_cochain(&gamma, &differential(&rep, &c));
                assert_eq!(lhs, rhs);
            }
            // mismatching R'': some cochain must break commutation
            let scale = GroupElement::new(
                Matrix::identity(3),
                Matrix::from_fn(3, 3, |r, c| if r == c { rat((r + 2) as i64) } else { Rational::zero() }),
            )
            .unwrap();
            let mismatched = act_on_representation(&scale, &transported);
            if mismatched != transported {
                let mut found = false;
                'outer: for degree in 1..=2 {
                    for slot in 0..3 {
                        for tuple in combinations(3, degree) {
                            let mut c = Cochain::zero(degree, 3, 3);
                            let mut v = vec![Rational::zero(); 3];
                            v[slot] = rat(1);
                            c.set(&tuple, v);
                            let lhs = differential(&mismatched, &act_on_cochain(&gamma, &c));
                            let rhs = act_on_cochain(&gamma, &differential(&rep, &c));
                            if lhs != rhs {
                                found = true;
                                break 'outer;
                            }
                        }
                    }
                }
                assert!(found, "mismatched representation commutes everywhere");
            }
        }
    }

    #[test]
    fn isotropy_elements_commute_with_d() {
        // explicit isotropy of the coadjoint representation: (g, k) with k
        // built from g by the dual-block construction.
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let h = heis();
        let rep = coadjoint(&h);
        for _ in 0..10 {
            let g = random_heis_aut(&mut rng);
            let k = coadjoint_k(&g, rat(1), rat(0), rat(0));
            let gamma = GroupElement::new(g, k).unwrap();
            assert_eq!(act_on_representation(&gamma, &rep), rep, "constructed element not in isotropy");
            for degree in 1..=2 {
                let c = rand_cochain(&mut rng, degree, 3, 3);
                let lhs = differential(&rep, &act_on_cochain(&gamma, &c));
                let rhs = act_on_cochain(&gamma, &differential(&rep, &c));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn alternation_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let c = rand_cochain(&mut rng, 2, 4, 2);
        // repeated index evaluates to zero, swap flips sign
        assert!(c.eval_indices(&[1, 1]).iter().all(|x| x.is_zero()));
        let ab = c.eval_indices(&[2, 0]);
        let ba = c.eval_indices(&[0, 2]);
        for (x, y) in ab.iter().zip(&ba) {
            assert_eq!(x, &-y.clone());
        }
    }
}
