//! Map spectrum, eigenoperators, output spectra and covariance checks.

use nalgebra::{DMatrix, Schur, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::angular::{polarization_operator, spin_operators, TwoJ};
use crate::channel::{landau_streater, KrausChannel};
use crate::error::{Error, Result};
use crate::linalg::{
    dyad, eig_hermitian, eigvalsh, hermitian_basis, hs_inner, max_abs_diff, re,
    unitarity_residual, ComplexMatrix, Spectrum,
};
use crate::random::{random_axis, seeded};

/// Largest imaginary part tolerated in a numerically computed map spectrum.
pub const SPECTRUM_IMAG_TOL: f64 = 1e-9;

/// Eigenvalue levels `λ_L` with multiplicity `2L+1`, `L = 0..=2j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapSpectrum {
    pub two_j: TwoJ,
    pub levels: Vec<SpectralLevel>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralLevel {
    pub l: u32,
    pub eigenvalue: f64,
    pub multiplicity: usize,
}

impl MapSpectrum {
    /// All eigenvalues with multiplicity, sorted in descending order.
    pub fn flattened(&self) -> Spectrum {
        Spectrum::new(
            self.levels
                .iter()
                .flat_map(|lv| std::iter::repeat_n(lv.eigenvalue, lv.multiplicity))
                .collect(),
        )
    }

    pub fn total_multiplicity(&self) -> usize {
        self.levels.iter().map(|lv| lv.multiplicity).sum()
    }

    pub fn determinant(&self) -> f64 {
        self.levels
            .iter()
            .map(|lv| lv.eigenvalue.powi(lv.multiplicity as i32))
            .product()
    }
}

/// `λ_L = 1 − L(L+1)/(2j(j+1))`.
pub fn ls_eigenvalue(j: TwoJ, l: u32) -> f64 {
    let l = l as f64;
    1.0 - l * (l + 1.0) / (2.0 * j.casimir())
}

pub fn ls_spectrum_closed(j: TwoJ) -> MapSpectrum {
    let levels = (0..=j.two_j())
        .map(|l| SpectralLevel {
            l,
            eigenvalue: ls_eigenvalue(j, l),
            multiplicity: 2 * l as usize + 1,
        })
        .collect();
    MapSpectrum { two_j: j, levels }
}

/// Real matrix `R_kl = tr(B_k Φ[B_l])` of a Hermitian-preserving map in an
/// orthonormal Hermitian operator basis.
pub fn real_representation(ch: &KrausChannel) -> Result<DMatrix<f64>> {
    if ch.d_in() != ch.d_out() {
        return Err(Error::DimensionMismatch("map spectrum needs a square channel".into()));
    }
    let basis = hermitian_basis(ch.d_in());
    let images = basis
        .iter()
        .map(|b| ch.apply(b))
        .collect::<Result<Vec<_>>>()?;
    let n = basis.len();
    Ok(DMatrix::from_fn(n, n, |k, l| hs_inner(&basis[k], &images[l]).re))
}

/// Eigenvalues of the channel as a linear map on operators.
///
/// Symmetric representations (self-dual maps) use a symmetric eigensolver;
/// others use a real Schur decomposition, and an imaginary part above
/// [`SPECTRUM_IMAG_TOL`] is reported as [`Error::ComplexSpectrum`].
pub fn map_spectrum_numeric(ch: &KrausChannel) -> Result<Spectrum> {
    let r = real_representation(ch)?;
    let asym = (&r - r.transpose()).amax();
    if asym <= 1e-12 * r.amax().max(1.0) {
        let sym = (&r + r.transpose()) * 0.5;
        let eig = SymmetricEigen::try_new(sym, f64::EPSILON, 0).ok_or(Error::NoConvergence)?;
        return Ok(Spectrum::new(eig.eigenvalues.iter().copied().collect()));
    }
    let schur = Schur::try_new(r, f64::EPSILON, 0).ok_or(Error::NoConvergence)?;
    let eigs = schur.complex_eigenvalues();
    let worst = eigs.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if worst > SPECTRUM_IMAG_TOL {
        return Err(Error::ComplexSpectrum(worst));
    }
    Ok(Spectrum::new(eigs.iter().map(|z| z.re).collect()))
}

/// Product of the map eigenvalues.
pub fn determinant(ch: &KrausChannel) -> Result<f64> {
    Ok(map_spectrum_numeric(ch)?.product())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenoperatorResidual {
    pub l: u32,
    pub eigenvalue: f64,
    /// `‖Φ[T_L0] − λ_L T_L0‖_max`
    pub residual: f64,
    /// Same residual for `U T_L0 U†` with a random rotation `U`.
    pub rotated_residual: f64,
}

/// Checks that each `T_L0` (and a randomly rotated copy) is an eigenoperator
/// of the spin-j channel with eigenvalue `λ_L`.
pub fn verify_eigenoperators(j: TwoJ, seed: u64) -> Result<Vec<EigenoperatorResidual>> {
    let ch = landau_streater(j);
    let mut rng = seeded(seed);
    (0..=j.two_j())
        .map(|l| {
            let lambda = ls_eigenvalue(j, l);
            let t = polarization_operator(j, l, 0)?;
            let residual = max_abs_diff(&ch.apply(&t)?, &(&t * re(lambda)));
            let axis = random_axis(&mut rng);
            let angle = std::f64::consts::TAU * rand::Rng::random::<f64>(&mut rng);
            let u = su2_unitary(j, axis, angle)?;
            let rotated = &u * &t * u.adjoint();
            let rotated_residual = max_abs_diff(&ch.apply(&rotated)?, &(&rotated * re(lambda)));
            Ok(EigenoperatorResidual {
                l,
                eigenvalue: lambda,
                residual,
                rotated_residual,
            })
        })
        .collect()
}

/// Spectrum of `Φ[|j,m⟩⟨j,m|]` from the closed form, `m = two_m / 2`.
pub fn output_spectrum_jm(j: TwoJ, two_m: i32) -> Result<Spectrum> {
    if j.index_of(two_m).is_none() {
        return Err(Error::OutOfRange(format!("2m = {two_m} for j = {j}")));
    }
    let cas = j.casimir();
    let m = two_m as f64 / 2.0;
    let mut values = vec![
        (cas - m * (m + 1.0)) / (2.0 * cas),
        (cas - m * (m - 1.0)) / (2.0 * cas),
        m * m / cas,
    ];
    values.resize(j.dim().max(3), 0.0);
    // for j = 1/2 one of the first three terms vanishes; keep d entries
    values.sort_by(|a, b| b.total_cmp(a));
    values.truncate(j.dim());
    Ok(Spectrum::new(values))
}

/// Spin-1 output spectrum: pairwise means of the input spectrum.
pub fn output_spectrum_qutrit(x1: f64, x2: f64, x3: f64) -> Spectrum {
    Spectrum::new(vec![0.5 * (x1 + x2), 0.5 * (x1 + x3), 0.5 * (x2 + x3)])
}

fn normalize_axis(axis: [f64; 3]) -> Result<[f64; 3]> {
    let n = axis.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (n - 1.0).abs() > 1e-10 {
        return Err(Error::Constraint(format!("rotation axis has norm {n}")));
    }
    Ok(axis.map(|x| x / n))
}

/// `exp(−iθ n·J)` via the eigendecomposition of `n·J`.
pub fn su2_unitary(j: TwoJ, axis: [f64; 3], angle: f64) -> Result<ComplexMatrix> {
    let axis = normalize_axis(axis)?;
    let generator = spin_operators(j).dot(axis);
    let (spec, vecs) = eig_hermitian(&generator)?;
    let phases = ComplexMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        spec.len(),
        spec.values()
            .iter()
            .map(|&lam| num_complex::Complex64::from_polar(1.0, -angle * lam)),
    ));
    Ok(&vecs * phases * vecs.adjoint())
}

/// Axis-angle rotation matrix `R` with `U† J_α U = Σ_β R_αβ J_β` for
/// `U = exp(−iθ n·J)`.
pub fn rotation_matrix(axis: [f64; 3], angle: f64) -> Result<[[f64; 3]; 3]> {
    let [x, y, z] = normalize_axis(axis)?;
    let (s, c) = angle.sin_cos();
    let t = 1.0 - c;
    Ok([
        [c + x * x * t, x * y * t - z * s, x * z * t + y * s],
        [y * x * t + z * s, c + y * y * t, y * z * t - x * s],
        [z * x * t - y * s, z * y * t + x * s, c + z * z * t],
    ])
}

/// `max_α ‖U† J_α U − Σ_β R_αβ J_β‖_max`.
pub fn rotation_relation_residual(j: TwoJ, axis: [f64; 3], angle: f64) -> Result<f64> {
    let u = su2_unitary(j, axis, angle)?;
    let r = rotation_matrix(axis, angle)?;
    let s = spin_operators(j);
    let js = s.components();
    Ok((0..3)
        .map(|a| {
            let lhs = u.adjoint() * js[a] * &u;
            let rhs = (0..3).fold(ComplexMatrix::zeros(j.dim(), j.dim()), |acc, b| {
                acc + js[b] * re(r[a][b])
            });
            max_abs_diff(&lhs, &rhs)
        })
        .fold(0.0, f64::max))
}

/// `‖Φ[U X U†] − U Φ[X] U†‖_max` for `U = exp(−iθ n·J)`.
pub fn check_su2_covariance(j: TwoJ, axis: [f64; 3], angle: f64, x: &ComplexMatrix) -> Result<f64> {
    let ch = landau_streater(j);
    let u = su2_unitary(j, axis, angle)?;
    let lhs = ch.apply(&(&u * x * u.adjoint()))?;
    let rhs = &u * ch.apply(x)? * u.adjoint();
    Ok(max_abs_diff(&lhs, &rhs))
}

/// Unitary `V` with `Φ[U X U†] = V Φ[X] V†` for the spin-1 channel:
/// signed conjugates of the anti-transposed entries of `U`.
pub fn u3_partner(u: &ComplexMatrix) -> Result<ComplexMatrix> {
    if u.shape() != (3, 3) {
        return Err(Error::DimensionMismatch("u3_partner expects a 3x3 matrix".into()));
    }
    let res = unitarity_residual(u);
    if res > 1e-10 {
        return Err(Error::NotUnitary(res));
    }
    Ok(ComplexMatrix::from_fn(3, 3, |r, col| {
        let sign = if (r + col) % 2 == 0 { 1.0 } else { -1.0 };
        u[(2 - r, 2 - col)].conj() * sign
    }))
}

/// `‖Φ[U X U†] − V Φ[X] V†‖_max` with `V = u3_partner(U)`, spin 1.
pub fn u3_covariance_residual(u: &ComplexMatrix, x: &ComplexMatrix) -> Result<f64> {
    let v = u3_partner(u)?;
    let ch = landau_streater(TwoJ::new(2)?);
    let lhs = ch.apply(&(u * x * u.adjoint()))?;
    let rhs = &v * ch.apply(x)? * v.adjoint();
    Ok(max_abs_diff(&lhs, &rhs))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CovarianceCounterexample {
    /// `Spec Φ[|j,j⟩⟨j,j|]`
    pub top: Spectrum,
    /// `Spec Φ[|j,j−1⟩⟨j,j−1|]`
    pub next: Spectrum,
    pub distance: f64,
    pub equal: bool,
}

/// Output spectra for the two highest-weight basis states, computed
/// numerically. Equal spectra are necessary for global unitary covariance.
pub fn global_covariance_counterexample(j: TwoJ, tol: f64) -> Result<CovarianceCounterexample> {
    let ch = landau_streater(j);
    let d = j.dim();
    let top = eigvalsh(&ch.apply(&dyad(d, 0, 0))?)?;
    let next = eigvalsh(&ch.apply(&dyad(d, 1, 1))?)?;
    let distance = top.max_distance(&next);
    Ok(CovarianceCounterexample {
        top,
        next,
        distance,
        equal: distance <= tol,
    })
}
