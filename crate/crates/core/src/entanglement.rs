//! PPT tests, the Schmidt-rank-2 witness state and entanglement-breaking
//! verdicts.

use serde::{Deserialize, Serialize};

use crate::angular::TwoJ;
use crate::channel::{choi, landau_streater, tensor, KrausChannel};
use crate::error::{Error, Result};
use crate::linalg::{
    density_spectrum, dyad, eigvalsh, max_abs_diff, partial_transpose, projector, re,
    ComplexMatrix, ComplexVector, Subsystem,
};

/// Partial-transpose eigenvalues below `−ENTANGLEMENT_TOL` flag entanglement.
pub const ENTANGLEMENT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PptReport {
    pub min_pt_eigenvalue: f64,
    pub entangled: bool,
}

impl PptReport {
    fn from_min(min_pt_eigenvalue: f64, tol: f64) -> Self {
        Self {
            min_pt_eigenvalue,
            entangled: min_pt_eigenvalue < -tol,
        }
    }
}

/// Smallest eigenvalue of the partial transpose over `B` of a bipartite state.
pub fn ppt_check(rho: &ComplexMatrix, dim_a: usize, dim_b: usize, tol: f64) -> Result<PptReport> {
    density_spectrum(rho)?;
    let pt = partial_transpose(rho, dim_a, dim_b, Subsystem::B)?;
    Ok(PptReport::from_min(eigvalsh(&pt)?.min(), tol))
}

/// `(|j,j⟩|j,j⟩ + |j,−j⟩|j,−j⟩)/√2`, product index `a·d + b`.
pub fn schmidt2_state(j: TwoJ) -> ComplexVector {
    let d = j.dim();
    let s = re(std::f64::consts::FRAC_1_SQRT_2);
    let mut v = ComplexVector::zeros(d * d);
    v[0] = s;
    v[(d - 1) * d + (d - 1)] = s;
    v
}

/// `(Φ⊗Φ)[φφ†]` for the Schmidt-rank-2 state.
pub fn witness_output(j: TwoJ) -> Result<ComplexMatrix> {
    let ch = landau_streater(j);
    tensor(&ch, &ch).apply(&projector(&schmidt2_state(j)))
}

/// PPT test of `(Φ⊗Φ)[φφ†]`.
pub fn annihilation_witness(j: TwoJ) -> Result<PptReport> {
    let d = j.dim();
    ppt_check(&witness_output(j)?, d, d, ENTANGLEMENT_TOL)
}

/// `−j²/(2(j+1)²)`, the smallest partial-transpose eigenvalue of the witness
/// output for `j ≥ 1`. The unnormalized doubled operator carries `−j²/(j+1)²`.
pub fn witness_min_pt_closed(j: TwoJ) -> Option<f64> {
    if j.two_j() < 2 {
        return None;
    }
    let jv = j.j();
    Some(-jv * jv / (2.0 * (jv + 1.0).powi(2)))
}

/// PPT test of the normalized Choi state of a channel (output ⊗ input).
pub fn choi_ppt(ch: &KrausChannel, tol: f64) -> Result<PptReport> {
    let omega = choi(ch);
    let pt = partial_transpose(&omega.matrix, omega.d_out, omega.d_in, Subsystem::B)?;
    Ok(PptReport::from_min(eigvalsh(&pt)?.min(), tol))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EbCertificate {
    /// Two-qubit Choi state with a positive partial transpose, hence separable.
    ChoiPpt { min_pt_eigenvalue: f64 },
    /// `(Φ⊗Φ)[φφ†]` stays entangled, which an entanglement-breaking channel
    /// cannot allow.
    SurvivingEntanglement { min_pt_eigenvalue: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EbVerdict {
    pub entanglement_breaking: bool,
    pub certificate: EbCertificate,
}

pub fn eb_verdict(j: TwoJ) -> Result<EbVerdict> {
    if j.two_j() == 1 {
        let r = choi_ppt(&landau_streater(j), ENTANGLEMENT_TOL)?;
        return Ok(EbVerdict {
            entanglement_breaking: !r.entangled,
            certificate: EbCertificate::ChoiPpt {
                min_pt_eigenvalue: r.min_pt_eigenvalue,
            },
        });
    }
    let w = annihilation_witness(j)?;
    if !w.entangled {
        return Err(Error::Constraint(format!(
            "witness output unexpectedly PPT for j = {j}"
        )));
    }
    Ok(EbVerdict {
        entanglement_breaking: false,
        certificate: EbCertificate::SurvivingEntanglement {
            min_pt_eigenvalue: w.min_pt_eigenvalue,
        },
    })
}

/// `‖Φ[X]ᵀ − Φ[Xᵀ]‖_max`.
pub fn transpose_commutation_residual(j: TwoJ, x: &ComplexMatrix) -> Result<f64> {
    let ch = landau_streater(j);
    Ok(max_abs_diff(&ch.apply(x)?.transpose(), &ch.apply(&x.transpose())?))
}

/// `max ‖Φ[|j,±j⟩⟨j,∓j|] + (j/(j+1)) |j,±j⟩⟨j,∓j|‖_max`.
pub fn extreme_dyad_residual(j: TwoJ) -> Result<f64> {
    let ch = landau_streater(j);
    let d = j.dim();
    let jv = j.j();
    let mut worst: f64 = 0.0;
    for (a, b) in [(0, d - 1), (d - 1, 0)] {
        let e = dyad(d, a, b);
        let expected = &e * re(-jv / (jv + 1.0));
        worst = worst.max(max_abs_diff(&ch.apply(&e)?, &expected));
    }
    Ok(worst)
}
