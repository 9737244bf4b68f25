//! Dense complex linear algebra used throughout the crate.
//!
//! Matrices are `nalgebra::DMatrix<Complex64>`. Bipartite operators on
//! `H_A ⊗ H_B` use the standard Kronecker index `a * dim_b + b`, and operators
//! are vectorized row-major: `vec(|a⟩⟨b|)` has its single unit entry at
//! `a * d + b`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ComplexMatrix = DMatrix<Complex64>;
pub type ComplexVector = DVector<Complex64>;

/// Max-entry asymmetry allowed for an input flagged Hermitian, relative to
/// the largest entry (absolute below unit scale).
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Eigenvalues in `[-DENSITY_TOL, 0)` are clamped to zero for entropies.
pub const DENSITY_TOL: f64 = 1e-10;

pub const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
pub const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Real values sorted in descending order, repeats kept.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    pub fn new(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn product(&self) -> f64 {
        self.values.iter().product()
    }

    pub fn max(&self) -> f64 {
        self.values.first().copied().unwrap_or(f64::NAN)
    }

    pub fn min(&self) -> f64 {
        self.values.last().copied().unwrap_or(f64::NAN)
    }

    /// Pointwise distance between the sorted multisets. The shorter one is
    /// padded with zeros, so `{a, b}` and `{a, b, 0, 0}` compare equal.
    pub fn max_distance(&self, other: &Spectrum) -> f64 {
        let n = self.len().max(other.len());
        let pad = |s: &Spectrum| {
            let mut v = s.values.clone();
            v.resize(n, 0.0);
            Spectrum::new(v).values
        };
        pad(self)
            .iter()
            .zip(pad(other).iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Density-operator spectrum: nonnegative within `tol` and unit sum.
    pub fn is_density(&self, tol: f64) -> bool {
        self.min() >= -tol && (self.sum() - 1.0).abs() <= tol
    }

    /// True if `self` majorizes `other` (sorted partial sums dominate).
    pub fn majorizes(&self, other: &Spectrum, tol: f64) -> bool {
        let n = self.len().max(other.len());
        let mut a = self.values.clone();
        let mut b = other.values.clone();
        a.resize(n, 0.0);
        b.resize(n, 0.0);
        let (mut sa, mut sb) = (0.0, 0.0);
        for k in 0..n {
            sa += a[k];
            sb += b[k];
            if sa + tol < sb {
                return false;
            }
        }
        (sa - sb).abs() <= tol
    }
}

/// Largest entry magnitude.
pub fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `max |a - b|` entrywise.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch in max_abs_diff");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn hermiticity_residual(m: &ComplexMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for a in 0..n {
        for b in a..n {
            worst = worst.max((m[(a, b)] - m[(b, a)].conj()).norm());
        }
    }
    worst
}

fn ensure_square(m: &ComplexMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(m.nrows())
}

fn ensure_hermitian(m: &ComplexMatrix) -> Result<()> {
    ensure_square(m)?;
    let res = hermiticity_residual(m);
    if res > HERMITIAN_TOL * max_abs(m).max(1.0) {
        return Err(Error::NotHermitian(res));
    }
    Ok(())
}

pub fn is_hermitian(m: &ComplexMatrix) -> bool {
    ensure_hermitian(m).is_ok()
}

pub fn trace(m: &ComplexMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

pub fn identity(d: usize) -> ComplexMatrix {
    ComplexMatrix::identity(d, d)
}

/// `|a⟩⟨b|` in dimension `d`.
pub fn dyad(d: usize, a: usize, b: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d, d);
    m[(a, b)] = ONE;
    m
}

pub fn basis_vector(d: usize, k: usize) -> ComplexVector {
    let mut v = ComplexVector::zeros(d);
    v[k] = ONE;
    v
}

/// `|ψ⟩⟨ψ|`.
pub fn projector(psi: &ComplexVector) -> ComplexMatrix {
    psi * psi.adjoint()
}

/// `‖U†U − I‖_max`.
pub fn unitarity_residual(u: &ComplexMatrix) -> f64 {
    let n = u.ncols();
    max_abs_diff(&(u.adjoint() * u), &identity(n))
}

/// Eigendecomposition of a Hermitian matrix. Eigenvalues are returned in
/// descending order; column `k` of the unitary is the eigenvector of value `k`.
pub fn eig_hermitian(h: &ComplexMatrix) -> Result<(Spectrum, ComplexMatrix)> {
    ensure_hermitian(h)?;
    let sym = (h + h.adjoint()) * re(0.5);
    let eig = SymmetricEigen::try_new(sym, f64::EPSILON, 0).ok_or(Error::NoConvergence)?;
    let n = h.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    Ok((Spectrum::new(values), vectors))
}

/// Eigenvalues only.
pub fn eigvalsh(h: &ComplexMatrix) -> Result<Spectrum> {
    ensure_hermitian(h)?;
    let sym = (h + h.adjoint()) * re(0.5);
    let vals = sym.symmetric_eigenvalues();
    Ok(Spectrum::new(vals.iter().copied().collect()))
}

/// Applies a real function to a Hermitian matrix through its eigenbasis.
pub fn hermitian_function(h: &ComplexMatrix, f: impl Fn(f64) -> f64) -> Result<ComplexMatrix> {
    let (spec, u) = eig_hermitian(h)?;
    let diag = ComplexVector::from_iterator(spec.len(), spec.values().iter().map(|&x| re(f(x))));
    Ok(&u * ComplexMatrix::from_diagonal(&diag) * u.adjoint())
}

pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    let svd = a.clone().svd(false, false);
    let mut s: Vec<f64> = svd.singular_values.iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

/// Schatten p-norm, `p = f64::INFINITY` for the operator norm.
pub fn schatten_norm(a: &ComplexMatrix, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidExponent(p));
    }
    let s: Vec<f64> = if a.is_square() && is_hermitian(a) {
        eigvalsh(a)?.values().iter().map(|x| x.abs()).collect()
    } else {
        singular_values(a)
    };
    Ok(schatten_of_values(&s, p))
}

/// `(Σ |s|^p)^{1/p}` over already computed singular values.
pub fn schatten_of_values(s: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        return s.iter().map(|x| x.abs()).fold(0.0, f64::max);
    }
    s.iter().map(|x| x.abs().powf(p)).sum::<f64>().powf(1.0 / p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum EntropyUnit {
    #[default]
    Bits,
    Nats,
}

/// Shannon entropy of a probability vector; `0 log 0 = 0` and values in
/// `[-DENSITY_TOL, 0)` are clamped to zero.
pub fn shannon_entropy(values: &[f64], unit: EntropyUnit) -> f64 {
    let h: f64 = values
        .iter()
        .map(|&x| if (-DENSITY_TOL..0.0).contains(&x) { 0.0 } else { x })
        .filter(|&x| x > 0.0)
        .map(|x| -x * x.ln())
        .sum();
    match unit {
        EntropyUnit::Bits => h / std::f64::consts::LN_2,
        EntropyUnit::Nats => h,
    }
}

/// Checks PSD and unit trace within [`DENSITY_TOL`] and returns the spectrum.
pub fn density_spectrum(rho: &ComplexMatrix) -> Result<Spectrum> {
    let spec = eigvalsh(rho)?;
    if spec.min() < -DENSITY_TOL {
        return Err(Error::NotPositive(spec.min()));
    }
    let tr = trace(rho);
    if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
        return Err(Error::InvalidTrace(tr.re));
    }
    Ok(spec)
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &ComplexMatrix) -> Result<f64> {
    von_neumann_entropy_in(rho, EntropyUnit::Bits)
}

pub fn von_neumann_entropy_in(rho: &ComplexMatrix, unit: EntropyUnit) -> Result<f64> {
    let spec = density_spectrum(rho)?;
    Ok(shannon_entropy(spec.values(), unit))
}

/// Kronecker product `A ⊗ B`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// Which tensor factor an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
}

fn ensure_bipartite(m: &ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<()> {
    let n = dim_a * dim_b;
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "expected {n}x{n} operator on {dim_a}x{dim_b}, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(())
}

/// Traces out `which` from an operator on `H_A ⊗ H_B`.
pub fn partial_trace(
    m: &ComplexMatrix,
    dim_a: usize,
    dim_b: usize,
    which: Subsystem,
) -> Result<ComplexMatrix> {
    ensure_bipartite(m, dim_a, dim_b)?;
    Ok(match which {
        Subsystem::B => ComplexMatrix::from_fn(dim_a, dim_a, |a1, a2| {
            (0..dim_b)
                .map(|b| m[(a1 * dim_b + b, a2 * dim_b + b)])
                .sum()
        }),
        Subsystem::A => ComplexMatrix::from_fn(dim_b, dim_b, |b1, b2| {
            (0..dim_a)
                .map(|a| m[(a * dim_b + b1, a * dim_b + b2)])
                .sum()
        }),
    })
}

/// Transposes the `which` factor of an operator on `H_A ⊗ H_B`.
pub fn partial_transpose(
    m: &ComplexMatrix,
    dim_a: usize,
    dim_b: usize,
    which: Subsystem,
) -> Result<ComplexMatrix> {
    ensure_bipartite(m, dim_a, dim_b)?;
    let n = dim_a * dim_b;
    Ok(ComplexMatrix::from_fn(n, n, |r, s| {
        let (a1, b1) = (r / dim_b, r % dim_b);
        let (a2, b2) = (s / dim_b, s % dim_b);
        match which {
            Subsystem::B => m[(a1 * dim_b + b2, a2 * dim_b + b1)],
            Subsystem::A => m[(a2 * dim_b + b1, a1 * dim_b + b2)],
        }
    }))
}

/// Row-major vectorization.
pub fn vec_row_major(m: &ComplexMatrix) -> ComplexVector {
    let (r, c) = m.shape();
    ComplexVector::from_fn(r * c, |k, _| m[(k / c, k % c)])
}

pub fn unvec_row_major(v: &ComplexVector, rows: usize, cols: usize) -> ComplexMatrix {
    assert_eq!(v.len(), rows * cols, "length mismatch in unvec_row_major");
    ComplexMatrix::from_fn(rows, cols, |a, b| v[a * cols + b])
}

/// Moore-Penrose pseudo-inverse with singular values `<= cutoff` dropped.
pub fn pseudo_inverse(a: &ComplexMatrix, cutoff: f64) -> ComplexMatrix {
    a.clone()
        .svd(true, true)
        .pseudo_inverse(cutoff)
        .expect("SVD computed with U and V")
}

/// Orthonormal Hermitian basis of `B(H_d)` under the Hilbert-Schmidt inner
/// product: diagonal units, then symmetric and antisymmetric off-diagonal pairs.
pub fn hermitian_basis(d: usize) -> Vec<ComplexMatrix> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut basis = Vec::with_capacity(d * d);
    for a in 0..d {
        basis.push(dyad(d, a, a));
    }
    for a in 0..d {
        for b in (a + 1)..d {
            let mut sym = ComplexMatrix::zeros(d, d);
            sym[(a, b)] = re(s);
            sym[(b, a)] = re(s);
            basis.push(sym);
            let mut asym = ComplexMatrix::zeros(d, d);
            asym[(a, b)] = c(0.0, s);
            asym[(b, a)] = c(0.0, -s);
            basis.push(asym);
        }
    }
    basis
}

/// Plain transpose (no conjugation) in the computational basis.
pub fn transpose(m: &ComplexMatrix) -> ComplexMatrix {
    m.transpose()
}

/// Hilbert-Schmidt inner product `tr(A† B)`.
pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_density, random_hermitian, random_unit_vector, seeded};

    fn diag(v: &[f64]) -> ComplexMatrix {
        ComplexMatrix::from_diagonal(&ComplexVector::from_iterator(
            v.len(),
            v.iter().map(|&x| re(x)),
        ))
    }

    #[test]
    fn eig_of_diagonal_sorts_descending() {
        let (spec, u) = eig_hermitian(&diag(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(spec.values(), &[3.0, 2.0, 1.0]);
        // permutation: each column is a basis vector up to phase
        for k in 0..3 {
            let col = u.column(k);
            let nnz = col.iter().filter(|z| z.norm() > 1e-12).count();
            assert_eq!(nnz, 1);
        }
        assert!(unitarity_residual(&u) < 1e-12);
    }

    #[test]
    fn eig_rejects_bad_inputs() {
        let rect = ComplexMatrix::zeros(2, 3);
        assert!(matches!(eig_hermitian(&rect), Err(Error::NotSquare { .. })));
        let mut m = diag(&[1.0, 2.0]);
        m[(0, 1)] = re(1.0);
        assert!(matches!(eig_hermitian(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn eig_reconstructs_random_hermitian() {
        let mut rng = seeded(11);
        for trial in 0..500 {
            let d = 1 + trial % 16;
            let h = random_hermitian(&mut rng, d);
            let (spec, u) = eig_hermitian(&h).unwrap();
            let vals = ComplexVector::from_iterator(d, spec.values().iter().map(|&x| re(x)));
            let rebuilt = &u * ComplexMatrix::from_diagonal(&vals) * u.adjoint();
            assert!(max_abs_diff(&h, &rebuilt) <= 1e-10, "trial {trial}");
            assert!(unitarity_residual(&u) <= 1e-10);
        }
    }

    #[test]
    fn schatten_norm_examples() {
        assert!((schatten_norm(&identity(3), 1.0).unwrap() - 3.0).abs() < 1e-14);
        let mut rng = seeded(2);
        let psi = random_unit_vector(&mut rng, 4);
        let p = projector(&psi);
        for exp in [1.0, 1.5, 2.0, 7.0, f64::INFINITY] {
            assert!((schatten_norm(&p, exp).unwrap() - 1.0).abs() < 1e-12);
        }
        let d = diag(&[0.6, 0.4, 0.0, 0.0]);
        assert!((schatten_norm(&d, f64::INFINITY).unwrap() - 0.6).abs() < 1e-15);
        assert_eq!(schatten_norm(&d, 0.5), Err(Error::InvalidExponent(0.5)));
    }

    #[test]
    fn schatten_norm_non_hermitian_uses_singular_values() {
        // [[0, 2], [0, 0]] has singular values {2, 0}
        let mut m = ComplexMatrix::zeros(2, 2);
        m[(0, 1)] = re(2.0);
        assert!((schatten_norm(&m, 1.0).unwrap() - 2.0).abs() < 1e-14);
        assert!((schatten_norm(&m, 3.0).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn entropy_examples() {
        let mixed = identity(3) * re(1.0 / 3.0);
        assert!((von_neumann_entropy(&mixed).unwrap() - 3f64.log2()).abs() < 1e-12);
        let mut rng = seeded(5);
        let pure = projector(&random_unit_vector(&mut rng, 5));
        assert!(von_neumann_entropy(&pure).unwrap().abs() < 1e-10);
        let half = diag(&[0.5, 0.5, 0.0]);
        assert!((von_neumann_entropy(&half).unwrap() - 1.0).abs() < 1e-14);
        assert!((von_neumann_entropy_in(&half, EntropyUnit::Nats).unwrap() - 2f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn entropy_rejects_non_states() {
        let bad = diag(&[1.2, -0.2]);
        assert!(matches!(von_neumann_entropy(&bad), Err(Error::NotPositive(_))));
        let unnormalized = diag(&[0.7, 0.7]);
        assert!(matches!(von_neumann_entropy(&unnormalized), Err(Error::InvalidTrace(_))));
        // tiny negative eigenvalue is clamped
        let nearly = diag(&[1.0 + 5e-11, -5e-11]);
        assert!(von_neumann_entropy(&nearly).unwrap().abs() < 1e-9);
    }

    #[test]
    fn entropy_bounded_by_log_dimension() {
        let mut rng = seeded(8);
        for d in 1..=8 {
            for _ in 0..20 {
                let rho = random_density(&mut rng, d);
                let s = von_neumann_entropy(&rho).unwrap();
                assert!(s >= -1e-12 && s <= (d as f64).log2() + 1e-12);
            }
        }
    }

    #[test]
    fn kron_examples() {
        assert_eq!(kron(&identity(2), &identity(2)), identity(4));
        let e1 = dyad(2, 0, 0);
        let e2 = dyad(2, 1, 1);
        let k = kron(&e1, &e2);
        // |0⟩|1⟩ has index 0 * 2 + 1
        assert_eq!(k, dyad(4, 1, 1));
        // spectrum of σz/2 ⊗ I: products of factor eigenvalues {±1/2} x {1, 1}
        let sz = diag(&[0.5, -0.5]);
        let spec = eigvalsh(&kron(&sz, &identity(2))).unwrap();
        let mut oracle: Vec<f64> = [0.5, -0.5]
            .iter()
            .flat_map(|a| [1.0, 1.0].iter().map(move |b| a * b))
            .collect();
        oracle.sort_by(|a, b| b.total_cmp(a));
        assert!(spec.max_distance(&Spectrum::new(oracle)) < 1e-15);
    }

    #[test]
    fn partial_trace_examples() {
        let mut rng = seeded(3);
        let rho = random_density(&mut rng, 3);
        let sigma = random_hermitian(&mut rng, 2);
        let prod = kron(&rho, &sigma);
        let tb = partial_trace(&prod, 3, 2, Subsystem::B).unwrap();
        assert!(max_abs_diff(&tb, &(&rho * trace(&sigma))) < 1e-13);

        // maximally entangled state on 3x3
        let d = 3;
        let mut psi = ComplexVector::zeros(d * d);
        for k in 0..d {
            psi[k * d + k] = re(1.0 / (d as f64).sqrt());
        }
        let ta = partial_trace(&projector(&psi), d, d, Subsystem::A).unwrap();
        assert!(max_abs_diff(&ta, &(identity(d) * re(1.0 / 3.0))) < 1e-15);

        assert!(matches!(
            partial_trace(&identity(5), 2, 3, Subsystem::A),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn partial_transpose_examples() {
        let mut rng = seeded(4);
        let a = random_hermitian(&mut rng, 2);
        let b = random_hermitian(&mut rng, 3);
        let pt = partial_transpose(&kron(&a, &b), 2, 3, Subsystem::B).unwrap();
        assert!(max_abs_diff(&pt, &kron(&a, &b.transpose())) < 1e-15);
        let pta = partial_transpose(&kron(&a, &b), 2, 3, Subsystem::A).unwrap();
        assert!(max_abs_diff(&pta, &kron(&a.transpose(), &b)) < 1e-15);

        // Bell state: PT spectrum {1/2, 1/2, 1/2, -1/2}
        let mut bell = ComplexVector::zeros(4);
        bell[0] = re(std::f64::consts::FRAC_1_SQRT_2);
        bell[3] = re(std::f64::consts::FRAC_1_SQRT_2);
        let pt = partial_transpose(&projector(&bell), 2, 2, Subsystem::B).unwrap();
        assert!((eigvalsh(&pt).unwrap().min() + 0.5).abs() < 1e-14);

        let m = random_hermitian(&mut rng, 6);
        let twice = partial_transpose(
            &partial_transpose(&m, 2, 3, Subsystem::B).unwrap(),
            2,
            3,
            Subsystem::B,
        )
        .unwrap();
        assert_eq!(twice, m);
    }

    #[test]
    fn row_major_vectorization() {
        let d = 3;
        let v = vec_row_major(&dyad(d, 1, 2));
        assert_eq!(v[d + 2], ONE);
        assert_eq!(v.iter().filter(|z| z.norm() > 0.0).count(), 1);
        let mut rng = seeded(1);
        let h = random_hermitian(&mut rng, 4);
        assert_eq!(unvec_row_major(&vec_row_major(&h), 4, 4), h);
    }

    #[test]
    fn hermitian_basis_is_orthonormal() {
        let basis = hermitian_basis(4);
        assert_eq!(basis.len(), 16);
        for (k, a) in basis.iter().enumerate() {
            assert!(is_hermitian(a));
            for (l, b) in basis.iter().enumerate() {
                let expected = if k == l { 1.0 } else { 0.0 };
                assert!((hs_inner(a, b) - re(expected)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn spectrum_helpers() {
        let a = Spectrum::new(vec![0.4, 0.6]);
        let b = Spectrum::new(vec![0.0, 0.6, 0.4, 0.0]);
        assert_eq!(a.max_distance(&b), 0.0);
        assert!(a.is_density(1e-12));
        let flat = Spectrum::new(vec![0.25; 4]);
        assert!(a.majorizes(&flat, 1e-12));
        assert!(!flat.majorizes(&a, 1e-12));
    }
}
