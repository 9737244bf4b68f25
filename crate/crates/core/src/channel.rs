//! Channel representations (Kraus, Choi, superoperator) and constructors.
//!
//! Conventions:
//! - Choi matrices live on `H_out ⊗ H_in`:
//!   `Ω = (1/d_in) Σ_{ab} Φ[|a⟩⟨b|] ⊗ |a⟩⟨b|`.
//! - Superoperators act on row-major vectorizations, so a Kraus channel has
//!   superoperator `Σ K ⊗ conj(K)`.
//! - Stinespring isometries put the system first and the environment second:
//!   `V|ψ⟩ = Σ_α (K_α|ψ⟩) ⊗ |α⟩`.

use serde::{Deserialize, Serialize};

use crate::angular::{spin_operators, TwoJ};
use crate::error::{Error, Result};
use crate::linalg::{
    eig_hermitian, eigvalsh, identity, kron, max_abs_diff, re, trace, unvec_row_major,
    vec_row_major, ComplexMatrix, ONE, ZERO,
};

/// Threshold on Choi eigenvalues when extracting Kraus operators.
pub const KRAUS_RANK_TOL: f64 = 1e-9;

/// A linear map given by Kraus operators `K_i : H_in -> H_out`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    ops: Vec<ComplexMatrix>,
    d_in: usize,
    d_out: usize,
}

impl KrausChannel {
    /// Builds a channel from operators of identical shape. Trace preservation
    /// is not enforced here; see [`is_cptp`].
    pub fn new(ops: Vec<ComplexMatrix>) -> Result<Self> {
        let first = ops
            .first()
            .ok_or_else(|| Error::DimensionMismatch("no Kraus operators".into()))?;
        let (d_out, d_in) = first.shape();
        if let Some(bad) = ops.iter().find(|k| k.shape() != (d_out, d_in)) {
            return Err(Error::DimensionMismatch(format!(
                "Kraus operator of shape {:?}, expected {:?}",
                bad.shape(),
                (d_out, d_in)
            )));
        }
        Ok(Self { ops, d_in, d_out })
    }

    pub fn identity(d: usize) -> Self {
        Self::new(vec![identity(d)]).expect("identity is well formed")
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }

    pub fn num_ops(&self) -> usize {
        self.ops.len()
    }

    /// `Σ K X K†`.
    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        if x.shape() != (self.d_in, self.d_in) {
            return Err(Error::DimensionMismatch(format!(
                "input {:?}, channel expects {}x{}",
                x.shape(),
                self.d_in,
                self.d_in
            )));
        }
        let mut out = ComplexMatrix::zeros(self.d_out, self.d_out);
        for k in &self.ops {
            out += k * x * k.adjoint();
        }
        Ok(out)
    }

    /// Heisenberg-picture (dual) action `Σ K† Y K`.
    pub fn apply_dual(&self, y: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.dual().apply(y)
    }

    /// Dual channel: each Kraus operator conjugate-transposed.
    pub fn dual(&self) -> KrausChannel {
        KrausChannel {
            ops: self.ops.iter().map(|k| k.adjoint()).collect(),
            d_in: self.d_out,
            d_out: self.d_in,
        }
    }

    pub fn choi(&self) -> ChoiMatrix {
        choi(self)
    }

    pub fn superoperator(&self) -> SuperOperator {
        superoperator(self)
    }
}

/// Normalized Choi state on `H_out ⊗ H_in`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiMatrix {
    pub matrix: ComplexMatrix,
    pub d_in: usize,
    pub d_out: usize,
}

impl ChoiMatrix {
    /// Choi matrix of an arbitrary linear map given as a closure.
    pub fn from_map(
        d_in: usize,
        d_out: usize,
        map: impl Fn(&ComplexMatrix) -> ComplexMatrix,
    ) -> Self {
        let mut m = ComplexMatrix::zeros(d_out * d_in, d_out * d_in);
        let scale = re(1.0 / d_in as f64);
        for a in 0..d_in {
            for b in 0..d_in {
                let mut e = ComplexMatrix::zeros(d_in, d_in);
                e[(a, b)] = ONE;
                let img = map(&e);
                for i in 0..d_out {
                    for k in 0..d_out {
                        m[(i * d_in + a, k * d_in + b)] = img[(i, k)] * scale;
                    }
                }
            }
        }
        ChoiMatrix {
            matrix: m,
            d_in,
            d_out,
        }
    }

    pub fn min_eigenvalue(&self) -> f64 {
        eigvalsh(&self.matrix).map(|s| s.min()).unwrap_or(f64::NAN)
    }

    /// Number of eigenvalues above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        eigvalsh(&self.matrix)
            .map(|s| s.values().iter().filter(|&&x| x > tol).count())
            .unwrap_or(0)
    }

    /// Applies the encoded map: `Φ[X] = d_in · tr_in(Ω (I ⊗ Xᵀ))`.
    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        if x.shape() != (self.d_in, self.d_in) {
            return Err(Error::DimensionMismatch("input does not match Choi d_in".into()));
        }
        let (di, dout) = (self.d_in, self.d_out);
        Ok(ComplexMatrix::from_fn(dout, dout, |i, k| {
            let mut s = ZERO;
            for a in 0..di {
                for b in 0..di {
                    s += self.matrix[(i * di + a, k * di + b)] * x[(a, b)];
                }
            }
            s * re(di as f64)
        }))
    }

    /// Reshuffles into the row-major superoperator.
    pub fn to_superoperator(&self) -> SuperOperator {
        let (di, dout) = (self.d_in, self.d_out);
        let m = ComplexMatrix::from_fn(dout * dout, di * di, |r, s| {
            let (i, k) = (r / dout, r % dout);
            let (a, b) = (s / di, s % di);
            self.matrix[(i * di + a, k * di + b)] * re(di as f64)
        });
        SuperOperator {
            matrix: m,
            d_in: di,
            d_out: dout,
        }
    }
}

/// Natural representation acting on row-major vectorized operators.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperOperator {
    pub matrix: ComplexMatrix,
    pub d_in: usize,
    pub d_out: usize,
}

impl SuperOperator {
    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        if x.shape() != (self.d_in, self.d_in) {
            return Err(Error::DimensionMismatch("input does not match superoperator".into()));
        }
        let v = &self.matrix * vec_row_major(x);
        Ok(unvec_row_major(&v, self.d_out, self.d_out))
    }

    /// `self ∘ other` (other applied first).
    pub fn compose(&self, other: &SuperOperator) -> Result<SuperOperator> {
        if self.d_in != other.d_out {
            return Err(Error::DimensionMismatch("composition dimensions".into()));
        }
        Ok(SuperOperator {
            matrix: &self.matrix * &other.matrix,
            d_in: other.d_in,
            d_out: self.d_out,
        })
    }

    pub fn to_choi(&self) -> ChoiMatrix {
        let (di, dout) = (self.d_in, self.d_out);
        let m = ComplexMatrix::from_fn(dout * di, dout * di, |r, s| {
            let (i, a) = (r / di, r % di);
            let (k, b) = (s / di, s % di);
            self.matrix[(i * dout + k, a * di + b)] * re(1.0 / di as f64)
        });
        ChoiMatrix {
            matrix: m,
            d_in: di,
            d_out: dout,
        }
    }
}

pub fn choi(ch: &KrausChannel) -> ChoiMatrix {
    let (di, dout) = (ch.d_in, ch.d_out);
    let mut m = ComplexMatrix::zeros(dout * di, dout * di);
    let scale = re(1.0 / di as f64);
    // Ω = (1/d) Σ_k vec_k vec_k† with vec_k[(i, a)] = K_k[i, a]
    for k in &ch.ops {
        let v = vec_row_major(k);
        m += &v * v.adjoint() * scale;
    }
    ChoiMatrix {
        matrix: m,
        d_in: di,
        d_out: dout,
    }
}

pub fn superoperator(ch: &KrausChannel) -> SuperOperator {
    let mut m = ComplexMatrix::zeros(ch.d_out * ch.d_out, ch.d_in * ch.d_in);
    for k in &ch.ops {
        m += kron(k, &k.map(|z| z.conj()));
    }
    SuperOperator {
        matrix: m,
        d_in: ch.d_in,
        d_out: ch.d_out,
    }
}

/// Kraus operators from the eigendecomposition of a Choi matrix; eigenvalues
/// at or below `rank_tol` are dropped.
pub fn kraus_from_choi(omega: &ChoiMatrix, rank_tol: f64) -> Result<KrausChannel> {
    let (spec, u) = eig_hermitian(&omega.matrix)?;
    if spec.min() < -rank_tol {
        return Err(Error::NotAChannel(spec.min()));
    }
    let (di, dout) = (omega.d_in, omega.d_out);
    let ops: Vec<ComplexMatrix> = spec
        .values()
        .iter()
        .enumerate()
        .filter(|(_, &lam)| lam > rank_tol)
        .map(|(k, &lam)| {
            let col = u.column(k).into_owned() * re((lam * di as f64).sqrt());
            unvec_row_major(&col, dout, di)
        })
        .collect();
    if ops.is_empty() {
        return Err(Error::NotAChannel(spec.max()));
    }
    KrausChannel::new(ops)
}

/// Complementary channel: `⟨α| K̃_i = ⟨i| K_α`, mapping `H_in` to the
/// environment `C^r` with `r` the number of Kraus operators.
pub fn complementary(ch: &KrausChannel) -> KrausChannel {
    let r = ch.num_ops();
    let ops = (0..ch.d_out)
        .map(|i| ComplexMatrix::from_fn(r, ch.d_in, |alpha, col| ch.ops[alpha][(i, col)]))
        .collect();
    KrausChannel::new(ops).expect("complementary Kraus operators share a shape")
}

/// Stinespring isometry `H_in -> H_out ⊗ C^r`, system first.
pub fn stinespring(ch: &KrausChannel) -> ComplexMatrix {
    let r = ch.num_ops();
    ComplexMatrix::from_fn(ch.d_out * r, ch.d_in, |row, col| {
        let (i, alpha) = (row / r, row % r);
        ch.ops[alpha][(i, col)]
    })
}

/// Spin-j Landau-Streater channel, Kraus operators `J_α / sqrt(j(j+1))`.
pub fn landau_streater(j: TwoJ) -> KrausChannel {
    let s = spin_operators(j);
    let norm = re(1.0 / j.casimir().sqrt());
    KrausChannel::new(vec![s.x * norm, s.y * norm, s.z * norm]).expect("spin matrices are square")
}

/// `(J_x; J_y; J_z)/sqrt(j(j+1))` as a `3d x d` isometry (system index first).
pub fn stinespring_isometry(j: TwoJ) -> ComplexMatrix {
    stinespring(&landau_streater(j))
}

/// Werner-Holevo channel `X -> (tr X · I - Xᵀ)/(d-1)`, Kraus operators
/// `(|a⟩⟨b| - |b⟩⟨a|)/sqrt(d-1)` for `a < b`.
pub fn werner_holevo(d: usize) -> Result<KrausChannel> {
    if d < 2 {
        return Err(Error::DimensionMismatch("Werner-Holevo needs d >= 2".into()));
    }
    let s = re(1.0 / ((d - 1) as f64).sqrt());
    let mut ops = Vec::with_capacity(d * (d - 1) / 2);
    for a in 0..d {
        for b in (a + 1)..d {
            let mut k = ComplexMatrix::zeros(d, d);
            k[(a, b)] = s;
            k[(b, a)] = -s;
            ops.push(k);
        }
    }
    KrausChannel::new(ops)
}

/// `W = |1,1⟩⟨1,-1| - |1,0⟩⟨1,0| + |1,-1⟩⟨1,1|` relating the spin-1 channel
/// to the Werner-Holevo channel.
pub fn ls_wh_unitary() -> ComplexMatrix {
    let mut w = ComplexMatrix::zeros(3, 3);
    w[(0, 2)] = ONE;
    w[(1, 1)] = -ONE;
    w[(2, 0)] = ONE;
    w
}

/// `a ∘ b`: apply `b`, then `a`.
pub fn compose(a: &KrausChannel, b: &KrausChannel) -> Result<KrausChannel> {
    if a.d_in != b.d_out {
        return Err(Error::DimensionMismatch(format!(
            "cannot compose: outer d_in = {}, inner d_out = {}",
            a.d_in, b.d_out
        )));
    }
    let ops = a
        .ops
        .iter()
        .flat_map(|ka| b.ops.iter().map(move |kb| ka * kb))
        .collect();
    KrausChannel::new(ops)
}

/// `a ⊗ b` with Kraus operators `A_i ⊗ B_k`.
pub fn tensor(a: &KrausChannel, b: &KrausChannel) -> KrausChannel {
    let ops = a
        .ops
        .iter()
        .flat_map(|ka| b.ops.iter().map(move |kb| kron(ka, kb)))
        .collect();
    KrausChannel::new(ops).expect("Kronecker products share a shape")
}

pub fn dual(ch: &KrausChannel) -> KrausChannel {
    ch.dual()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CptpVerdict {
    pub cptp: bool,
    /// `‖Σ K†K − I‖_max`
    pub trace_preservation_residual: f64,
    pub min_choi_eigenvalue: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitalVerdict {
    pub unital: bool,
    /// `‖Σ K K† − I‖_max`
    pub unitality_residual: f64,
}

pub fn trace_preservation_residual(ch: &KrausChannel) -> f64 {
    let mut s = ComplexMatrix::zeros(ch.d_in, ch.d_in);
    for k in &ch.ops {
        s += k.adjoint() * k;
    }
    max_abs_diff(&s, &identity(ch.d_in))
}

pub fn is_cptp(ch: &KrausChannel, tol: f64) -> CptpVerdict {
    let tp = trace_preservation_residual(ch);
    let min_eig = choi(ch).min_eigenvalue();
    CptpVerdict {
        cptp: tp <= tol && min_eig >= -tol,
        trace_preservation_residual: tp,
        min_choi_eigenvalue: min_eig,
    }
}

pub fn is_unital(ch: &KrausChannel, tol: f64) -> UnitalVerdict {
    let mut s = ComplexMatrix::zeros(ch.d_out, ch.d_out);
    for k in &ch.ops {
        s += k * k.adjoint();
    }
    let residual = if ch.d_in == ch.d_out {
        max_abs_diff(&s, &identity(ch.d_out))
    } else {
        f64::INFINITY
    };
    UnitalVerdict {
        unital: residual <= tol,
        unitality_residual: residual,
    }
}

/// `tr Φ[X]` for convenience in invariants.
pub fn output_trace(ch: &KrausChannel, x: &ComplexMatrix) -> Result<f64> {
    Ok(trace(&ch.apply(x)?).re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{
        c, dyad, eigvalsh, hermiticity_residual, partial_trace, projector, Spectrum, Subsystem,
    };
    use crate::random::{random_density, random_hermitian, seeded, ginibre};

    fn j(two_j: u32) -> TwoJ {
        TwoJ::new(two_j).unwrap()
    }

    #[test]
    fn spin_half_is_depolarizing_with_negative_parameter() {
        let ch = landau_streater(j(1));
        let mut rng = seeded(1);
        for _ in 0..50 {
            let rho = random_density(&mut rng, 2);
            let q = -1.0 / 3.0;
            let expected = &rho * re(q) + identity(2) * re((1.0 - q) / 2.0);
            assert!(max_abs_diff(&ch.apply(&rho).unwrap(), &expected) < 1e-14);
        }
    }

    #[test]
    fn landau_streater_is_unital_cptp() {
        for two_j in 1..=6 {
            let ch = landau_streater(j(two_j));
            let d = ch.d_in();
            let out = ch.apply(&(identity(d) * re(1.0 / d as f64))).unwrap();
            assert!(max_abs_diff(&out, &(identity(d) * re(1.0 / d as f64))) < 1e-14);
            assert!(max_abs_diff(&ch.apply(&identity(d)).unwrap(), &identity(d)) < 1e-13);
            let v = is_cptp(&ch, 1e-10);
            assert!(v.cptp, "{v:?}");
            assert!(is_unital(&ch, 1e-10).unital);
        }
    }

    #[test]
    fn spin_one_matches_closed_form_action() {
        let ch = landau_streater(j(2));
        let mut rng = seeded(2);
        for _ in 0..20 {
            let x = ginibre(&mut rng, 3, 3);
            let h = re(0.5);
            let expected = ComplexMatrix::from_row_slice(
                3,
                3,
                &[
                    (x[(0, 0)] + x[(1, 1)]) * h,
                    x[(1, 2)] * h,
                    -x[(0, 2)] * h,
                    x[(2, 1)] * h,
                    (x[(0, 0)] + x[(2, 2)]) * h,
                    x[(0, 1)] * h,
                    -x[(2, 0)] * h,
                    x[(1, 0)] * h,
                    (x[(1, 1)] + x[(2, 2)]) * h,
                ],
            );
            assert!(max_abs_diff(&ch.apply(&x).unwrap(), &expected) < 1e-14);
        }
    }

    #[test]
    fn action_on_definite_projection_states() {
        for two_j in 1..=6 {
            let jj = j(two_j);
            let ch = landau_streater(jj);
            let d = jj.dim();
            let cas = jj.casimir();
            for k in 0..d {
                let m = jj.m_at(k);
                let out = ch.apply(&dyad(d, k, k)).unwrap();
                let mut expected = ComplexMatrix::zeros(d, d);
                expected[(k, k)] = re(m * m / cas);
                if k + 1 < d {
                    // |j, m-1⟩
                    expected[(k + 1, k + 1)] = re(0.5 * (cas - m * (m - 1.0)) / cas);
                }
                if k > 0 {
                    expected[(k - 1, k - 1)] = re(0.5 * (cas - m * (m + 1.0)) / cas);
                }
                assert!(max_abs_diff(&out, &expected) < 1e-14, "2j={two_j}, k={k}");
            }
        }
        let ch = landau_streater(j(3));
        let spec = eigvalsh(&ch.apply(&dyad(4, 0, 0)).unwrap()).unwrap();
        assert!(spec.max_distance(&Spectrum::new(vec![0.6, 0.4, 0.0, 0.0])) < 1e-14);
    }

    #[test]
    fn apply_rejects_wrong_dimension() {
        let ch = landau_streater(j(2));
        assert!(matches!(ch.apply(&identity(2)), Err(Error::DimensionMismatch(_))));
        assert!(KrausChannel::new(vec![]).is_err());
        assert!(KrausChannel::new(vec![identity(2), identity(3)]).is_err());
    }

    #[test]
    fn representations_agree() {
        let mut rng = seeded(3);
        let channels = vec![
            landau_streater(j(1)),
            landau_streater(j(3)),
            werner_holevo(3).unwrap(),
            complementary(&landau_streater(j(2))),
            KrausChannel::identity(3),
        ];
        for ch in channels {
            let omega = choi(&ch);
            let sup = superoperator(&ch);
            for _ in 0..100 {
                let x = ginibre(&mut rng, ch.d_in(), ch.d_in());
                let direct = ch.apply(&x).unwrap();
                assert!(max_abs_diff(&direct, &omega.apply(&x).unwrap()) < 1e-10);
                assert!(max_abs_diff(&direct, &sup.apply(&x).unwrap()) < 1e-10);
            }
            assert!(max_abs_diff(&sup.matrix, &omega.to_superoperator().matrix) < 1e-13);
            assert!(max_abs_diff(&omega.matrix, &sup.to_choi().matrix) < 1e-13);
        }
    }

    #[test]
    fn superoperator_maps_vectorized_identity() {
        for two_j in 1..=4 {
            let ch = landau_streater(j(two_j));
            let d = ch.d_in();
            let mixed = identity(d) * re(1.0 / d as f64);
            let out = ch.superoperator().apply(&mixed).unwrap();
            assert!(max_abs_diff(&out, &mixed) < 1e-14);
        }
    }

    #[test]
    fn kraus_choi_round_trip() {
        let mut rng = seeded(4);
        for two_j in 1..=4 {
            let ch = landau_streater(j(two_j));
            let back = kraus_from_choi(&choi(&ch), KRAUS_RANK_TOL).unwrap();
            assert_eq!(back.num_ops(), 3);
            for _ in 0..20 {
                let x = ginibre(&mut rng, ch.d_in(), ch.d_in());
                assert!(max_abs_diff(&ch.apply(&x).unwrap(), &back.apply(&x).unwrap()) < 1e-10);
            }
        }
    }

    #[test]
    fn choi_examples() {
        // identity channel: maximally entangled projector
        let d = 3;
        let omega = choi(&KrausChannel::identity(d));
        let mut psi = crate::linalg::ComplexVector::zeros(d * d);
        for k in 0..d {
            psi[k * d + k] = re(1.0 / (d as f64).sqrt());
        }
        assert!(max_abs_diff(&omega.matrix, &projector(&psi)) < 1e-15);
        assert_eq!(omega.rank(KRAUS_RANK_TOL), 1);

        // transposition: swap / d, min eigenvalue -1/d
        let t = ChoiMatrix::from_map(d, d, |x| x.transpose());
        assert!((t.min_eigenvalue() + 1.0 / d as f64).abs() < 1e-14);
        assert!(matches!(kraus_from_choi(&t, KRAUS_RANK_TOL), Err(Error::NotAChannel(_))));
    }

    #[test]
    fn complementary_spin_half_matches_printed_kraus() {
        let comp = complementary(&landau_streater(j(1)));
        let s = re(1.0 / 3f64.sqrt());
        let z = re(0.0);
        let v1 = ComplexMatrix::from_row_slice(3, 2, &[z, re(1.0), z, c(0.0, -1.0), re(1.0), z]) * s;
        let v2 = ComplexMatrix::from_row_slice(3, 2, &[re(1.0), z, c(0.0, 1.0), z, z, re(-1.0)]) * s;
        assert!(max_abs_diff(&comp.ops()[0], &v1) < 1e-12);
        assert!(max_abs_diff(&comp.ops()[1], &v2) < 1e-12);
    }

    #[test]
    fn complementary_spin_one_matches_printed_kraus() {
        let comp = complementary(&landau_streater(j(2)));
        let z = re(0.0);
        let h = re(0.5);
        let ih = c(0.0, 0.5);
        let r = re(std::f64::consts::FRAC_1_SQRT_2);
        let v1 = ComplexMatrix::from_row_slice(3, 3, &[z, h, z, z, -ih, z, r, z, z]);
        let v2 = ComplexMatrix::from_row_slice(3, 3, &[h, z, h, ih, z, -ih, z, z, z]);
        let v3 = ComplexMatrix::from_row_slice(3, 3, &[z, h, z, z, ih, z, z, z, -r]);
        for (got, want) in comp.ops().iter().zip([v1, v2, v3]) {
            assert!(max_abs_diff(got, &want) < 1e-12);
        }
    }

    #[test]
    fn complementary_maps_maximally_mixed_to_maximally_mixed() {
        for two_j in 1..=6 {
            let jj = j(two_j);
            let comp = complementary(&landau_streater(jj));
            let d = jj.dim();
            let out = comp.apply(&(identity(d) * re(1.0 / d as f64))).unwrap();
            assert!(max_abs_diff(&out, &(identity(3) * re(1.0 / 3.0))) < 1e-12);
        }
    }

    #[test]
    fn complementary_entries_are_spin_correlations() {
        let mut rng = seeded(5);
        let jj = j(3);
        let s = spin_operators(jj);
        let comp = complementary(&landau_streater(jj));
        let rho = random_density(&mut rng, 4);
        let out = comp.apply(&rho).unwrap();
        let js = s.components();
        for a in 0..3 {
            for b in 0..3 {
                let expected = trace(&(js[b] * js[a] * &rho)) / re(jj.casimir());
                assert!((out[(a, b)] - expected).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn stinespring_isometry_properties() {
        let mut rng = seeded(6);
        for two_j in 1..=3 {
            let jj = j(two_j);
            let d = jj.dim();
            let v = stinespring_isometry(jj);
            assert_eq!(v.shape(), (3 * d, d));
            assert!(max_abs_diff(&(v.adjoint() * &v), &identity(d)) < 1e-12);
            for col in 0..d {
                assert!((v.column(col).norm() - 1.0).abs() < 1e-12);
            }
            let ch = landau_streater(jj);
            let comp = complementary(&ch);
            for _ in 0..100 {
                let rho = random_density(&mut rng, d);
                let big = &v * &rho * v.adjoint();
                let sys = partial_trace(&big, d, 3, Subsystem::B).unwrap();
                let env = partial_trace(&big, d, 3, Subsystem::A).unwrap();
                assert!(max_abs_diff(&sys, &ch.apply(&rho).unwrap()) < 1e-12);
                assert!(max_abs_diff(&env, &comp.apply(&rho).unwrap()) < 1e-12);
            }
        }
    }

    #[test]
    fn complementary_choi_is_sandwich() {
        for two_j in 1..=6 {
            let jj = j(two_j);
            let d = jj.dim();
            let s = spin_operators(jj);
            // C = (J_x, -J_y, J_z) as a d x 3d block row
            let mut cm = ComplexMatrix::zeros(d, 3 * d);
            let blocks = [s.x.clone(), -s.y.clone(), s.z.clone()];
            for (alpha, blk) in blocks.iter().enumerate() {
                cm.view_mut((0, alpha * d), (d, d)).copy_from(blk);
            }
            let expected = cm.adjoint() * &cm * re(1.0 / (jj.casimir() * d as f64));
            let omega = choi(&complementary(&landau_streater(jj)));
            assert!(max_abs_diff(&omega.matrix, &expected) < 1e-10);
            assert_eq!(omega.rank(KRAUS_RANK_TOL), d);
        }
    }

    #[test]
    fn werner_holevo_reduction_at_spin_one() {
        let ch = landau_streater(j(2));
        let wh = werner_holevo(3).unwrap();
        let w = ls_wh_unitary();
        let mut rng = seeded(7);
        for _ in 0..100 {
            let x = ginibre(&mut rng, 3, 3);
            let lhs = ch.apply(&x).unwrap();
            let rhs = wh.apply(&(&w * &x * w.adjoint())).unwrap();
            assert!(max_abs_diff(&lhs, &rhs) <= 1e-12);
            let closed = (identity(3) * trace(&x) - &w * x.transpose() * w.adjoint()) * re(0.5);
            assert!(max_abs_diff(&lhs, &closed) <= 1e-12);
        }
        assert!(max_abs_diff(&(w.adjoint() * &w), &identity(3)) < 1e-15);
        assert_eq!(w, w.transpose());
    }

    #[test]
    fn werner_holevo_definition() {
        let mut rng = seeded(8);
        for d in 2..=4 {
            let wh = werner_holevo(d).unwrap();
            assert!(is_cptp(&wh, 1e-12).cptp);
            assert!(is_unital(&wh, 1e-12).unital);
            let x = ginibre(&mut rng, d, d);
            let expected = (identity(d) * trace(&x) - x.transpose()) * re(1.0 / (d - 1) as f64);
            assert!(max_abs_diff(&wh.apply(&x).unwrap(), &expected) < 1e-13);
        }
        assert!(werner_holevo(1).is_err());
    }

    #[test]
    fn compose_tensor_dual() {
        let mut rng = seeded(9);
        let ch = landau_streater(j(2));
        let id = KrausChannel::identity(3);
        let both = compose(&id, &ch).unwrap();
        let x = ginibre(&mut rng, 3, 3);
        assert!(max_abs_diff(&both.apply(&x).unwrap(), &ch.apply(&x).unwrap()) < 1e-14);

        let tt = tensor(&ch, &ch);
        let rho = random_density(&mut rng, 3);
        let sigma = random_density(&mut rng, 3);
        let lhs = tt.apply(&kron(&rho, &sigma)).unwrap();
        let rhs = kron(&ch.apply(&rho).unwrap(), &ch.apply(&sigma).unwrap());
        assert!(max_abs_diff(&lhs, &rhs) < 1e-14);

        for two_j in 1..=4 {
            let ch = landau_streater(j(two_j));
            let du = dual(&ch);
            for _ in 0..100 {
                let x = ginibre(&mut rng, ch.d_in(), ch.d_in());
                assert!(max_abs_diff(&du.apply(&x).unwrap(), &ch.apply(&x).unwrap()) < 1e-13);
            }
        }
        assert!(compose(&KrausChannel::identity(2), &ch).is_err());
    }

    #[test]
    fn non_trace_preserving_is_reported() {
        let ch = KrausChannel::new(vec![identity(3) * re(0.9)]).unwrap();
        let v = is_cptp(&ch, 1e-10);
        assert!(!v.cptp);
        assert!((v.trace_preservation_residual - 0.19).abs() < 1e-12);
        assert!(v.min_choi_eigenvalue >= -1e-12);
    }

    #[test]
    fn double_complement_preserves_output_spectra() {
        let mut rng = seeded(10);
        for two_j in 1..=4 {
            let ch = landau_streater(j(two_j));
            let cc = complementary(&complementary(&ch));
            assert_eq!(cc.d_out(), ch.d_out());
            for _ in 0..20 {
                let psi = crate::random::random_unit_vector(&mut rng, ch.d_in());
                let rho = projector(&psi);
                let a = eigvalsh(&ch.apply(&rho).unwrap()).unwrap();
                let b = eigvalsh(&cc.apply(&rho).unwrap()).unwrap();
                assert!(a.max_distance(&b) < 1e-10);
            }
        }
    }

    #[test]
    fn outputs_are_hermitian_and_trace_preserving() {
        let mut rng = seeded(11);
        let ch = landau_streater(j(5));
        for _ in 0..20 {
            let h = random_hermitian(&mut rng, 6);
            let out = ch.apply(&h).unwrap();
            assert!(hermiticity_residual(&out) < 1e-13);
            assert!((trace(&out) - trace(&h)).norm() < 1e-12);
            assert!((output_trace(&ch, &h).unwrap() - trace(&h).re).abs() < 1e-12);
        }
    }
}
