//! Closed-form capacities, coherent information and quantum-capacity bounds.
//! All quantities are in bits.

use serde::{Deserialize, Serialize};

use crate::angular::TwoJ;
use crate::channel::{complementary, landau_streater, KrausChannel};
use crate::error::Result;
use crate::extremes::{min_output_entropy_closed, optimize_min_entropy, OptimizerConfig};
use crate::linalg::{density_spectrum, identity, re, shannon_entropy, ComplexMatrix, EntropyUnit};

fn entropy_bits(rho: &ComplexMatrix) -> Result<f64> {
    Ok(shannon_entropy(density_spectrum(rho)?.values(), EntropyUnit::Bits))
}

fn maximally_mixed(d: usize) -> ComplexMatrix {
    identity(d) * re(1.0 / d as f64)
}

/// `C_χ = log((2j+1)/(j+1)) + (j/(j+1)) log j`.
pub fn chi_capacity(j: TwoJ) -> f64 {
    (j.dim() as f64).log2() - min_output_entropy_closed(j)
}

/// `log(2j+1) − S_min` with `S_min` from the pure-state optimizer.
pub fn chi_capacity_numeric(j: TwoJ, cfg: &OptimizerConfig) -> Result<f64> {
    let s = optimize_min_entropy(&landau_streater(j), cfg)?;
    Ok((j.dim() as f64).log2() - s.value)
}

/// `C_ea = 2 log(2j+1) − log 3`.
pub fn ea_capacity(j: TwoJ) -> f64 {
    2.0 * (j.dim() as f64).log2() - 3f64.log2()
}

/// `S(ρ) + S(Φ[ρ]) − S(Φ̃[ρ])`.
pub fn quantum_mutual_information(ch: &KrausChannel, rho: &ComplexMatrix) -> Result<f64> {
    let s_in = entropy_bits(rho)?;
    Ok(s_in + coherent_information(ch, rho)?)
}

/// `C_ea` evaluated as the mutual information at the maximally mixed input.
pub fn ea_capacity_numeric(j: TwoJ) -> Result<f64> {
    quantum_mutual_information(&landau_streater(j), &maximally_mixed(j.dim()))
}

/// `I_c(ρ, Φ) = S(Φ[ρ]) − S(Φ̃[ρ])`.
pub fn coherent_information(ch: &KrausChannel, rho: &ComplexMatrix) -> Result<f64> {
    density_spectrum(rho)?;
    let out = entropy_bits(&ch.apply(rho)?)?;
    let env = entropy_bits(&complementary(ch).apply(rho)?)?;
    Ok(out - env)
}

/// `log(2j+1) − log 3`, the coherent information at `I/(2j+1)`.
pub fn coherent_info_maximally_mixed(j: TwoJ) -> f64 {
    (j.dim() as f64).log2() - 3f64.log2()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantumCapacityVerdict {
    /// `Q = 0` (antidegradable cases `j ∈ {1/2, 1}`).
    pub q_zero: bool,
    /// Positive lower bound on `Q` when one is available.
    pub lower_bound: Option<f64>,
}

pub fn quantum_capacity_verdict(j: TwoJ) -> QuantumCapacityVerdict {
    if j.two_j() <= 2 {
        QuantumCapacityVerdict {
            q_zero: true,
            lower_bound: None,
        }
    } else {
        QuantumCapacityVerdict {
            q_zero: false,
            lower_bound: Some(coherent_info_maximally_mixed(j)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapacityReport {
    pub two_j: TwoJ,
    pub chi_capacity: f64,
    /// `C = C_χ` is established only for `j = 1/2`; otherwise `C_χ` is a
    /// lower bound on the classical capacity.
    pub chi_equals_classical_capacity: bool,
    pub ea_capacity: f64,
    /// Coherent information at the maximally mixed input (negative for j = 1/2).
    pub q_lower_bound: f64,
    pub q_exact_zero: bool,
    pub s_min: f64,
    pub coherent_info_mm: f64,
}

pub fn capacity_report(j: TwoJ) -> CapacityReport {
    let ic = coherent_info_maximally_mixed(j);
    CapacityReport {
        two_j: j,
        chi_capacity: chi_capacity(j),
        chi_equals_classical_capacity: j.two_j() == 1,
        ea_capacity: ea_capacity(j),
        q_lower_bound: ic,
        q_exact_zero: quantum_capacity_verdict(j).q_zero,
        s_min: min_output_entropy_closed(j),
        coherent_info_mm: ic,
    }
}
