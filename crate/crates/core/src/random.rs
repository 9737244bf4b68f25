//! Seeded random states, operators and unitaries.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{c, projector, ComplexMatrix, ComplexVector};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `index` derived from `seed`; used for per-restart and
/// per-case generators so results do not depend on scheduling.
pub fn substream(seed: u64, index: u64) -> SeededRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn gauss(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Matrix of i.i.d. standard complex Gaussians.
pub fn ginibre(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| c(gauss(rng), gauss(rng)))
}

/// Uniformly distributed unit vector in `C^d`.
pub fn random_unit_vector(rng: &mut impl Rng, d: usize) -> ComplexVector {
    let v = ComplexVector::from_fn(d, |_, _| c(gauss(rng), gauss(rng)));
    let n = v.norm();
    v / c(n, 0.0)
}

/// Uniformly distributed unit vector in `R^3`.
pub fn random_axis(rng: &mut impl Rng) -> [f64; 3] {
    loop {
        let v = [gauss(rng), gauss(rng), gauss(rng)];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-8 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

pub fn random_hermitian(rng: &mut impl Rng, d: usize) -> ComplexMatrix {
    let g = ginibre(rng, d, d);
    (&g + g.adjoint()) * c(0.5, 0.0)
}

/// Hilbert-Schmidt random density matrix.
pub fn random_density(rng: &mut impl Rng, d: usize) -> ComplexMatrix {
    let g = ginibre(rng, d, d);
    let w = &g * g.adjoint();
    let tr = w.trace();
    w / tr
}

pub fn random_pure_state(rng: &mut impl Rng, d: usize) -> ComplexMatrix {
    projector(&random_unit_vector(rng, d))
}

/// Haar-random unitary: QR of a Ginibre matrix with the phases of `R`'s
/// diagonal moved into `Q`.
pub fn haar_unitary(rng: &mut impl Rng, d: usize) -> ComplexMatrix {
    let qr = ginibre(rng, d, d).qr();
    let (mut q, r) = qr.unpack();
    for k in 0..d {
        let rkk = r[(k, k)];
        let phase = if rkk.norm() > 0.0 { rkk / rkk.norm() } else { c(1.0, 0.0) };
        let mut col = q.column_mut(k);
        col *= phase;
    }
    q
}
