//! Maximal output p-norms, minimal output entropy, spin inequalities and a
//! Riemannian optimizer over pure input states.

use serde::{Deserialize, Serialize};

use crate::angular::{spin_operators, TwoJ};
use crate::channel::{landau_streater, tensor, KrausChannel};
use crate::error::{Error, Result};
use crate::linalg::{
    c, eig_hermitian, eigvalsh, max_abs_diff, re, ComplexMatrix, ComplexVector, EntropyUnit,
    Spectrum,
};
use crate::random::{random_unit_vector, substream};

/// Exponent used to smooth the operator norm when optimizing for `p = ∞`.
pub const SMOOTH_MAX_EXPONENT: f64 = 40.0;

/// Floor applied to output eigenvalues before taking logarithms.
const LOG_FLOOR: f64 = 1e-300;

fn check_exponent(p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidExponent(p));
    }
    Ok(())
}

/// `ν_p = (j^p + 1)^{1/p} / (j + 1)`, and `max(j, 1)/(j + 1)` for `p = ∞`.
pub fn max_p_norm_closed(j: TwoJ, p: f64) -> Result<f64> {
    check_exponent(p)?;
    let jv = j.j();
    if p.is_infinite() {
        return Ok(jv.max(1.0) / (jv + 1.0));
    }
    // (j^p + 1)^{1/p} evaluated as max · (1 + (min/max)^p)^{1/p} to avoid overflow
    let (hi, lo) = if jv >= 1.0 { (jv, 1.0) } else { (1.0, jv) };
    Ok(hi * (1.0 + (lo / hi).powf(p)).powf(1.0 / p) / (jv + 1.0))
}

/// `S_min = log(j+1) − (j/(j+1)) log j`.
pub fn min_output_entropy_closed(j: TwoJ) -> f64 {
    min_output_entropy_closed_in(j, EntropyUnit::Bits)
}

pub fn min_output_entropy_closed_in(j: TwoJ, unit: EntropyUnit) -> f64 {
    let jv = j.j();
    let nats = (jv + 1.0).ln() - jv / (jv + 1.0) * jv.ln();
    match unit {
        EntropyUnit::Nats => nats,
        EntropyUnit::Bits => nats / std::f64::consts::LN_2,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iters: usize,
    /// Initial step length for the backtracking line search.
    pub step: f64,
    /// Riemannian gradient norm (of the log objective) declared converged.
    /// Values below about `1e-8` are not resolvable in double precision.
    pub grad_tol: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 64,
            max_iters: 3000,
            step: 1.0,
            grad_tol: 1e-7,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::Constraint("restarts must be at least 1".into()));
        }
        if self.grad_tol.is_nan() || self.grad_tol <= 0.0 || self.step.is_nan() || self.step <= 0.0 {
            return Err(Error::Constraint("grad_tol and step must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremeResult {
    pub value: f64,
    pub argmax_state: ComplexVector,
    pub converged_restarts: usize,
    pub restarts: usize,
    pub best_gradient_norm: f64,
}

impl ExtremeResult {
    pub fn converged(&self) -> bool {
        self.converged_restarts > 0
    }
}

/// `Φ[ψψ†]` along with the vectors `K_k ψ`.
fn output_with_images(ch: &KrausChannel, psi: &ComplexVector) -> (ComplexMatrix, Vec<ComplexVector>) {
    let images: Vec<ComplexVector> = ch.ops().iter().map(|k| k * psi).collect();
    let d = ch.d_out();
    let mut rho = ComplexMatrix::zeros(d, d);
    for w in &images {
        rho += w * w.adjoint();
    }
    (rho, images)
}

/// `Σ_k K_k† M K_k ψ` given the images `K_k ψ`.
fn dual_times_state(ch: &KrausChannel, m: &ComplexMatrix, images: &[ComplexVector]) -> ComplexVector {
    let mut g = ComplexVector::zeros(ch.d_in());
    for (k, w) in ch.ops().iter().zip(images) {
        g += k.adjoint() * (m * w);
    }
    g
}

fn check_state(ch: &KrausChannel, psi: &ComplexVector) -> Result<()> {
    if psi.len() != ch.d_in() {
        return Err(Error::DimensionMismatch(format!(
            "state of length {}, channel input dimension {}",
            psi.len(),
            ch.d_in()
        )));
    }
    Ok(())
}

/// Output purity `tr Φ[ψψ†]²` (no normalization of `ψ` is applied).
pub fn output_purity(ch: &KrausChannel, psi: &ComplexVector) -> Result<f64> {
    check_state(ch, psi)?;
    let (rho, _) = output_with_images(ch, psi);
    Ok(rho.iter().map(|z| z.norm_sqr()).sum())
}

/// Euclidean gradient of `tr Φ[ψψ†]²` in `R^{2d}` packed as a complex
/// vector: `4 Φ†[Φ[ψψ†]] ψ`. The component for `Re ψ_k` is the real part,
/// for `Im ψ_k` the imaginary part.
pub fn purity_gradient(ch: &KrausChannel, psi: &ComplexVector) -> Result<ComplexVector> {
    check_state(ch, psi)?;
    let (rho, images) = output_with_images(ch, psi);
    Ok(dual_times_state(ch, &rho, &images) * re(4.0))
}

/// Projection onto the tangent space of the unit sphere at `ψ`.
pub fn tangent_projection(psi: &ComplexVector, g: &ComplexVector) -> ComplexVector {
    let radial = psi.dotc(g).re;
    g - psi * re(radial)
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Objective {
    /// `(1/p) ln tr Φ[ψψ†]^p`
    LogPower(f64),
    /// `−S(Φ[ψψ†])` in nats
    NegEntropy,
}

impl Objective {
    /// Objective value and Euclidean gradient at a unit vector.
    fn evaluate(self, ch: &KrausChannel, psi: &ComplexVector) -> Result<(f64, ComplexVector)> {
        let (rho, images) = output_with_images(ch, psi);
        match self {
            Objective::LogPower(2.0) => {
                let f: f64 = rho.iter().map(|z| z.norm_sqr()).sum();
                let g = dual_times_state(ch, &rho, &images) * re(2.0 / f);
                Ok((0.5 * f.ln(), g))
            }
            Objective::LogPower(p) => {
                let (spec, u) = eig_hermitian(&rho)?;
                let lam: Vec<f64> = spec.values().iter().map(|&x| x.max(0.0)).collect();
                let top = lam[0].max(LOG_FLOOR);
                // scale by the top eigenvalue so large p does not underflow
                let scaled: Vec<f64> = lam.iter().map(|&x| (x / top).powf(p - 1.0)).collect();
                let f_scaled: f64 = lam.iter().zip(&scaled).map(|(x, s)| x / top * s).sum();
                let value = top.ln() + f_scaled.ln() / p;
                let m = weighted_projector_sum(&u, &scaled);
                let g = dual_times_state(ch, &m, &images) * re(2.0 / (top * f_scaled));
                Ok((value, g))
            }
            Objective::NegEntropy => {
                let (spec, u) = eig_hermitian(&rho)?;
                let lam: Vec<f64> = spec.values().iter().map(|&x| x.max(0.0)).collect();
                let value: f64 = lam
                    .iter()
                    .filter(|&&x| x > 0.0)
                    .map(|&x| x * x.ln())
                    .sum();
                let weights: Vec<f64> = lam.iter().map(|&x| x.max(LOG_FLOOR).ln() + 1.0).collect();
                let m = weighted_projector_sum(&u, &weights);
                let g = dual_times_state(ch, &m, &images) * re(2.0);
                Ok((value, g))
            }
        }
    }
}

fn weighted_projector_sum(u: &ComplexMatrix, w: &[f64]) -> ComplexMatrix {
    let scaled = ComplexMatrix::from_fn(u.nrows(), u.ncols(), |r, k| u[(r, k)] * re(w[k]));
    scaled * u.adjoint()
}

struct AscentOutcome {
    psi: ComplexVector,
    value: f64,
    grad_norm: f64,
    converged: bool,
}

/// Riemannian gradient ascent on the unit sphere with Armijo backtracking and
/// retraction by normalization.
fn ascend(
    ch: &KrausChannel,
    objective: Objective,
    start: ComplexVector,
    cfg: &OptimizerConfig,
) -> Result<AscentOutcome> {
    const ARMIJO: f64 = 1e-4;
    // consecutive accepted steps without measurable gain before stopping
    const MAX_STALLS: usize = 10;
    let mut psi = start.normalize();
    let (mut value, g) = objective.evaluate(ch, &psi)?;
    let mut tg = tangent_projection(&psi, &g);
    let mut step = cfg.step;
    let mut stalls = 0;
    let finish = |psi, value, gn: f64| AscentOutcome {
        psi,
        value,
        grad_norm: gn,
        converged: gn <= cfg.grad_tol,
    };
    for _ in 0..cfg.max_iters {
        let gn2 = tg.norm_squared();
        if gn2.sqrt() <= cfg.grad_tol {
            return Ok(finish(psi, value, gn2.sqrt()));
        }
        let mut accepted = false;
        for _ in 0..60 {
            let trial = (&psi + &tg * re(step)).normalize();
            let (tv, tgrad) = objective.evaluate(ch, &trial)?;
            if tv > value && tv >= value + ARMIJO * step * gn2 {
                if tv - value <= 1e-15 * value.abs().max(1.0) {
                    stalls += 1;
                } else {
                    stalls = 0;
                }
                psi = trial;
                value = tv;
                tg = tangent_projection(&psi, &tgrad);
                accepted = true;
                step *= 2.0;
                break;
            }
            step *= 0.5;
        }
        if !accepted || stalls >= MAX_STALLS {
            // no further ascent at working precision
            let gn = tg.norm();
            return Ok(finish(psi, value, gn));
        }
    }
    let gn = tg.norm();
    Ok(finish(psi, value, gn))
}

/// Runs seeded restarts (plus any warm starts), keeping the best by value,
/// ties broken by the lower restart index.
fn multi_start(
    ch: &KrausChannel,
    objective: Objective,
    cfg: &OptimizerConfig,
    warm: &[ComplexVector],
) -> Result<(Vec<AscentOutcome>, usize)> {
    cfg.validate()?;
    let mut outcomes = Vec::with_capacity(cfg.restarts + warm.len());
    for psi in warm {
        outcomes.push(ascend(ch, objective, psi.clone(), cfg)?);
    }
    for r in 0..cfg.restarts {
        let mut rng = substream(cfg.seed, r as u64);
        let start = random_unit_vector(&mut rng, ch.d_in());
        outcomes.push(ascend(ch, objective, start, cfg)?);
    }
    let mut best = 0;
    for (i, o) in outcomes.iter().enumerate() {
        if o.value > outcomes[best].value {
            best = i;
        }
    }
    Ok((outcomes, best))
}

fn output_spectrum(ch: &KrausChannel, psi: &ComplexVector) -> Result<Spectrum> {
    let (rho, _) = output_with_images(ch, psi);
    eigvalsh(&rho)
}

/// Numerical `ν_p = max_ψ ‖Φ[ψψ†]‖_p` over unit vectors.
///
/// `p = ∞` optimizes `p = 2` first, then polishes with
/// `p = SMOOTH_MAX_EXPONENT` and reports the largest output eigenvalue.
pub fn optimize_output_norm(ch: &KrausChannel, p: f64, cfg: &OptimizerConfig) -> Result<ExtremeResult> {
    check_exponent(p)?;
    let (first_p, polish) = if p.is_infinite() {
        (2.0, Some(SMOOTH_MAX_EXPONENT))
    } else {
        (p, None)
    };
    let (outcomes, mut best) = multi_start(ch, Objective::LogPower(first_p), cfg, &[])?;
    let mut converged = outcomes.iter().filter(|o| o.converged).count();
    let mut psi = outcomes[best].psi.clone();
    let mut grad_norm = outcomes[best].grad_norm;
    if let Some(q) = polish {
        // polish every converged endpoint; ties keep the lowest index
        let mut polished: Vec<AscentOutcome> = Vec::with_capacity(outcomes.len());
        for o in &outcomes {
            polished.push(ascend(ch, Objective::LogPower(q), o.psi.clone(), cfg)?);
        }
        let score = |o: &AscentOutcome| output_spectrum(ch, &o.psi).map(|s| s.max());
        let scores = polished.iter().map(score).collect::<Result<Vec<f64>>>()?;
        best = 0;
        for (i, s) in scores.iter().enumerate() {
            if *s > scores[best] {
                best = i;
            }
        }
        converged = polished.iter().filter(|o| o.converged).count();
        psi = polished[best].psi.clone();
        grad_norm = polished[best].grad_norm;
    }
    let spec = output_spectrum(ch, &psi)?;
    let value = if p.is_infinite() {
        spec.max()
    } else {
        crate::linalg::schatten_of_values(spec.values(), p)
    };
    Ok(ExtremeResult {
        value,
        argmax_state: psi,
        converged_restarts: converged,
        restarts: outcomes.len(),
        best_gradient_norm: grad_norm,
    })
}

/// Numerical minimal output entropy (bits). Endpoints of a `p = 2` search are
/// used as warm starts for entropy descent.
pub fn optimize_min_entropy(ch: &KrausChannel, cfg: &OptimizerConfig) -> Result<ExtremeResult> {
    let (purity_runs, _) = multi_start(ch, Objective::LogPower(2.0), cfg, &[])?;
    let warm: Vec<ComplexVector> = purity_runs.into_iter().map(|o| o.psi).collect();
    let no_random = OptimizerConfig { restarts: 0, ..*cfg };
    let mut outcomes = Vec::with_capacity(warm.len());
    for psi in warm {
        outcomes.push(ascend(ch, Objective::NegEntropy, psi, &no_random)?);
    }
    let mut best = 0;
    for (i, o) in outcomes.iter().enumerate() {
        if o.value > outcomes[best].value {
            best = i;
        }
    }
    let psi = outcomes[best].psi.clone();
    let spec = output_spectrum(ch, &psi)?;
    Ok(ExtremeResult {
        value: crate::linalg::shannon_entropy(spec.values(), EntropyUnit::Bits),
        argmax_state: psi,
        converged_restarts: outcomes.iter().filter(|o| o.converged).count(),
        restarts: outcomes.len(),
        best_gradient_norm: outcomes[best].grad_norm,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MultiplicativityReport {
    pub nu2_single: f64,
    pub nu2_double: f64,
    /// `ν₂(Φ⊗Φ) − ν₂(Φ)²`
    pub gap: f64,
    pub converged: bool,
}

/// Compares the maximal 2-norm of `Φ⊗Φ` over all bipartite pure states with
/// the square of the single-copy value.
pub fn multiplicativity_experiment(j: TwoJ, cfg: &OptimizerConfig) -> Result<MultiplicativityReport> {
    let ch = landau_streater(j);
    let single = optimize_output_norm(&ch, 2.0, cfg)?;
    let double = optimize_output_norm(&tensor(&ch, &ch), 2.0, cfg)?;
    Ok(MultiplicativityReport {
        nu2_single: single.value,
        nu2_double: double.value,
        gap: double.value - single.value * single.value,
        converged: single.converged() && double.converged(),
    })
}

fn check_unit(psi: &ComplexVector, d: usize) -> Result<()> {
    if psi.len() != d {
        return Err(Error::DimensionMismatch(format!("state length {} != {d}", psi.len())));
    }
    let n = psi.norm();
    if (n - 1.0).abs() > 1e-10 {
        return Err(Error::Constraint(format!("state norm {n} != 1")));
    }
    Ok(())
}

fn check_unit_axis(k: [f64; 3]) -> Result<()> {
    let n = k.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (n - 1.0).abs() > 1e-10 {
        return Err(Error::Constraint(format!("axis norm {n} != 1")));
    }
    Ok(())
}

fn expectation(op: &ComplexMatrix, psi: &ComplexVector) -> f64 {
    psi.dotc(&(op * psi)).re
}

/// Distance between `Spec(k·J)` and `{j, j−1, …, −j}`.
pub fn lemma1_residual(j: TwoJ, k: [f64; 3]) -> Result<f64> {
    check_unit_axis(k)?;
    let spec = eigvalsh(&spin_operators(j).dot(k))?;
    let expected = Spectrum::new((0..j.dim()).map(|i| j.m_at(i)).collect());
    Ok(spec.max_distance(&expected))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

impl BoundCheck {
    fn new(lhs: f64, rhs: f64, tol: f64) -> Self {
        Self {
            lhs,
            rhs,
            ok: lhs <= rhs + tol,
        }
    }
}

/// `‖(k·J)ψ‖² ≤ j²`.
pub fn lemma2_check(j: TwoJ, k: [f64; 3], psi: &ComplexVector) -> Result<BoundCheck> {
    check_unit_axis(k)?;
    check_unit(psi, j.dim())?;
    let v = spin_operators(j).dot(k) * psi;
    Ok(BoundCheck::new(v.norm_squared(), j.j() * j.j(), 1e-10))
}

/// `⟨J_z⟩² ≤ 9j² (j² − ⟨J_x²⟩)/(2j − 1)` for `j ≥ 1`.
pub fn lemma3_check(j: TwoJ, psi: &ComplexVector) -> Result<BoundCheck> {
    if j.two_j() < 2 {
        return Err(Error::InvalidSpin(format!("inequality requires j >= 1, got {j}")));
    }
    check_unit(psi, j.dim())?;
    let s = spin_operators(j);
    let jv = j.j();
    let jz = expectation(&s.z, psi);
    let jx2 = expectation(&(&s.x * &s.x), psi);
    let rhs = 9.0 * jv * jv * (jv * jv - jx2) / (2.0 * jv - 1.0);
    Ok(BoundCheck::new(jz * jz, rhs, 1e-10))
}

/// `‖Σ(k_α + i l_α) J_α ψ‖²`, requiring `|k|² + |l|² = 1`.
pub fn lemma4_value(j: TwoJ, k: [f64; 3], l: [f64; 3], psi: &ComplexVector) -> Result<f64> {
    let norm: f64 = k.iter().chain(l.iter()).map(|x| x * x).sum();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::Constraint(format!("|k|^2 + |l|^2 = {norm} != 1")));
    }
    check_unit(psi, j.dim())?;
    let s = spin_operators(j);
    let js = s.components();
    let mut op = ComplexMatrix::zeros(j.dim(), j.dim());
    for a in 0..3 {
        op += js[a] * c(k[a], l[a]);
    }
    Ok((op * psi).norm_squared())
}

/// `max(j, j²)`.
pub fn lemma4_bound(j: TwoJ) -> f64 {
    let jv = j.j();
    jv.max(jv * jv)
}

/// The maximally polarized state along `+z`.
pub fn highest_weight_state(j: TwoJ) -> ComplexVector {
    crate::linalg::basis_vector(j.dim(), 0)
}

/// Residual of `Φ[ψψ†]` against the closed-form extremal output at `|j,j⟩`.
pub fn highest_weight_output_residual(j: TwoJ) -> Result<f64> {
    let ch = landau_streater(j);
    let psi = highest_weight_state(j);
    let (rho, _) = output_with_images(&ch, &psi);
    let jv = j.j();
    let mut expected = ComplexMatrix::zeros(j.dim(), j.dim());
    expected[(0, 0)] = re(jv / (jv + 1.0));
    if j.dim() > 1 {
        expected[(1, 1)] = re(1.0 / (jv + 1.0));
    }
    Ok(max_abs_diff(&rho, &expected))
}
