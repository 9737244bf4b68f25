//! Factoring maps between a channel and its complement, Choi ranks and
//! degradability verdicts.

use serde::{Deserialize, Serialize};

use crate::angular::{spin_operators, TwoJ};
use crate::channel::{
    complementary, landau_streater, ls_wh_unitary, werner_holevo, ChoiMatrix, KrausChannel,
    SuperOperator, KRAUS_RANK_TOL,
};
use crate::entanglement::{choi_ppt, ENTANGLEMENT_TOL};
use crate::error::{Error, Result};
use crate::linalg::{identity, max_abs_diff, pseudo_inverse, re, singular_values, ComplexMatrix};
use crate::random::{ginibre, seeded};

/// Singular values of the inverted superoperator at or below this are dropped.
pub const PINV_CUTOFF: f64 = 1e-9;

/// Numeric factoring tolerance: residual and Choi negativity.
pub const FACTORING_TOL: f64 = 1e-8;

/// Least-squares solution `T` of `T ∘ A = B`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactoringMap {
    pub map: SuperOperator,
    /// `‖T S_A − S_B‖_max` on superoperator matrices.
    pub residual: f64,
    /// Whether `S_A` had a singular value at or below [`PINV_CUTOFF`].
    pub singular: bool,
}

impl FactoringMap {
    pub fn choi(&self) -> ChoiMatrix {
        self.map.to_choi()
    }

    pub fn min_choi_eigenvalue(&self) -> f64 {
        self.choi().min_eigenvalue()
    }

    /// Residual and CP test within `tol`.
    pub fn is_channel(&self, tol: f64) -> bool {
        self.residual <= tol && self.min_choi_eigenvalue() >= -tol
    }
}

/// `T = S_B · pinv(S_A)`.
pub fn factoring_map(a: &KrausChannel, b: &KrausChannel) -> Result<FactoringMap> {
    if a.d_in() != b.d_in() {
        return Err(Error::DimensionMismatch(format!(
            "factoring map needs equal inputs, got {} and {}",
            a.d_in(),
            b.d_in()
        )));
    }
    let sa = a.superoperator();
    let sb = b.superoperator();
    let smallest = singular_values(&sa.matrix)
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    let t = &sb.matrix * pseudo_inverse(&sa.matrix, PINV_CUTOFF);
    let residual = max_abs_diff(&(&t * &sa.matrix), &sb.matrix);
    Ok(FactoringMap {
        map: SuperOperator {
            matrix: t,
            d_in: a.d_out(),
            d_out: b.d_out(),
        },
        residual,
        singular: smallest <= PINV_CUTOFF,
    })
}

/// Number of Choi eigenvalues above `tol`.
pub fn choi_rank(ch: &KrausChannel, tol: f64) -> usize {
    ch.choi().rank(tol)
}

/// `(m² − 1)/((2j+1)(j² + j − 3))`, a diagonal entry of the Choi matrix of
/// `Φ̃ ∘ Φ⁻¹` at environment index `z` and input `|j,m⟩`.
pub fn degradability_diag_element(j: TwoJ, two_m: i32) -> Result<f64> {
    if j.two_j() < 3 {
        return Err(Error::InvalidSpin(format!("closed form requires j >= 3/2, got {j}")));
    }
    if j.index_of(two_m).is_none() {
        return Err(Error::OutOfRange(format!("2m = {two_m} for j = {j}")));
    }
    let jv = j.j();
    let m = two_m as f64 / 2.0;
    Ok((m * m - 1.0) / ((2.0 * jv + 1.0) * (jv * jv + jv - 3.0)))
}

/// The same Choi entry read off the numeric factoring map `Φ̃ ∘ pinv(Φ)`.
pub fn factoring_diag_element_numeric(j: TwoJ, two_m: i32) -> Result<f64> {
    let k = j
        .index_of(two_m)
        .ok_or_else(|| Error::OutOfRange(format!("2m = {two_m} for j = {j}")))?;
    let ch = landau_streater(j);
    let t = factoring_map(&ch, &complementary(&ch))?;
    let omega = t.choi();
    let idx = 2 * j.dim() + k;
    Ok(omega.matrix[(idx, idx)].re)
}

/// `(j(j+1)/(j(j+1) − 3)) (J_z² − I)`, the preimage of `J_z²` under `Φ`.
pub fn phi_inverse_on_jz2(j: TwoJ) -> ComplexMatrix {
    let cas = j.casimir();
    let jz = spin_operators(j).z;
    (&jz * &jz - identity(j.dim())) * re(cas / (cas - 3.0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Numeric factoring map with its residual and smallest Choi eigenvalue.
    FactoringMap {
        residual: f64,
        min_choi_eigenvalue: f64,
        singular: bool,
    },
    /// Entanglement-breaking channel (PPT two-qubit Choi state).
    EntanglementBreaking { min_pt_eigenvalue: f64 },
    /// Unitary equivalence with the `d = 3` Werner-Holevo channel.
    WernerHolevo { reduction_residual: f64 },
    /// Choi rank of the complementary channel exceeds the environment size 3.
    ChoiRank { rank: usize, environment_dim: usize },
    /// Negative closed-form diagonal Choi entry of `Φ̃ ∘ Φ⁻¹`; the numeric
    /// entry is present when `Φ` is invertible.
    NegativeDiagonal {
        two_m: i32,
        closed_form: f64,
        numeric: Option<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegradabilityVerdict {
    pub two_j: TwoJ,
    pub degradable: bool,
    pub antidegradable: bool,
    pub degradable_certificates: Vec<Certificate>,
    pub antidegradable_certificates: Vec<Certificate>,
}

fn factoring_certificate(f: &FactoringMap) -> Certificate {
    Certificate::FactoringMap {
        residual: f.residual,
        min_choi_eigenvalue: f.min_choi_eigenvalue(),
        singular: f.singular,
    }
}

fn wh_reduction_residual(seed: u64) -> Result<f64> {
    let ch = landau_streater(TwoJ::new(2)?);
    let wh = werner_holevo(3)?;
    let w = ls_wh_unitary();
    let mut rng = seeded(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let x = ginibre(&mut rng, 3, 3);
        worst = worst.max(max_abs_diff(&ch.apply(&x)?, &wh.apply(&(&w * &x * w.adjoint()))?));
    }
    Ok(worst)
}

/// Degradability and antidegradability of the spin-j channel, each with
/// the certificates used to decide it.
pub fn ls_degradability(j: TwoJ, tol: f64) -> Result<DegradabilityVerdict> {
    let ch = landau_streater(j);
    let comp = complementary(&ch);
    let forward = factoring_map(&ch, &comp)?;
    match j.two_j() {
        1 => {
            let eb = choi_ppt(&ch, ENTANGLEMENT_TOL)?;
            Ok(DegradabilityVerdict {
                two_j: j,
                degradable: forward.is_channel(tol) && !forward.singular,
                antidegradable: !eb.entangled,
                degradable_certificates: vec![factoring_certificate(&forward)],
                antidegradable_certificates: vec![Certificate::EntanglementBreaking {
                    min_pt_eigenvalue: eb.min_pt_eigenvalue,
                }],
            })
        }
        2 => {
            let backward = factoring_map(&comp, &ch)?;
            let wh = Certificate::WernerHolevo {
                reduction_residual: wh_reduction_residual(0)?,
            };
            Ok(DegradabilityVerdict {
                two_j: j,
                degradable: forward.is_channel(tol),
                antidegradable: backward.is_channel(tol),
                degradable_certificates: vec![factoring_certificate(&forward), wh.clone()],
                antidegradable_certificates: vec![factoring_certificate(&backward), wh],
            })
        }
        two_j => {
            let two_m = if two_j % 2 == 1 { 1 } else { 0 };
            let closed_form = degradability_diag_element(j, two_m)?;
            let numeric = if forward.singular {
                None
            } else {
                Some(factoring_diag_element_numeric(j, two_m)?)
            };
            let rank = choi_rank(&comp, KRAUS_RANK_TOL);
            Ok(DegradabilityVerdict {
                two_j: j,
                degradable: closed_form >= -tol,
                antidegradable: rank <= 3,
                degradable_certificates: vec![
                    Certificate::NegativeDiagonal {
                        two_m,
                        closed_form,
                        numeric,
                    },
                    factoring_certificate(&forward),
                ],
                antidegradable_certificates: vec![Certificate::ChoiRank {
                    rank,
                    environment_dim: 3,
                }],
            })
        }
    }
}

pub fn is_degradable(j: TwoJ, tol: f64) -> Result<bool> {
    Ok(ls_degradability(j, tol)?.degradable)
}

pub fn is_antidegradable(j: TwoJ, tol: f64) -> Result<bool> {
    Ok(ls_degradability(j, tol)?.antidegradable)
}

/// Purely numeric test: `T = S_{Φ̃} pinv(S_Φ)` reproduces `Φ̃` and is CP.
pub fn is_degradable_numeric(ch: &KrausChannel, tol: f64) -> Result<bool> {
    Ok(factoring_map(ch, &complementary(ch))?.is_channel(tol))
}

/// Purely numeric test with the roles of the channel and its complement
/// exchanged.
pub fn is_antidegradable_numeric(ch: &KrausChannel, tol: f64) -> Result<bool> {
    Ok(factoring_map(&complementary(ch), ch)?.is_channel(tol))
}
