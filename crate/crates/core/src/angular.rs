//! Spin-j operators, Clebsch-Gordan coefficients and polarization operators.
//!
//! Half-integers are carried exactly as twice their value. The basis of
//! `H_{2j+1}` is `|j,m⟩` with `m = j, j-1, ..., -j`, so index `k` holds
//! `m = j - k`. Phases follow the Condon-Shortley convention.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, re, ComplexMatrix};

/// A half-integer stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfInt(pub i32);

impl HalfInt {
    pub const fn from_twice(twice: i32) -> Self {
        Self(twice)
    }

    pub const fn integer(n: i32) -> Self {
        Self(2 * n)
    }

    /// Rejects values that are not a multiple of 1/2.
    pub fn from_f64(x: f64) -> Result<Self> {
        let twice = 2.0 * x;
        if !twice.is_finite() || (twice - twice.round()).abs() > 1e-12 || twice.abs() > 1e6 {
            return Err(Error::InvalidSpin(format!("{x} is not a half-integer")));
        }
        Ok(Self(twice.round() as i32))
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Spin label `j` stored as `2j >= 1`; the Hilbert space has dimension `2j+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct TwoJ(u32);

impl TwoJ {
    pub fn new(two_j: u32) -> Result<Self> {
        if two_j == 0 {
            return Err(Error::InvalidSpin(
                "j = 0 gives a one-dimensional space; channel needs j >= 1/2".into(),
            ));
        }
        Ok(Self(two_j))
    }

    /// Parses `j` given as a float, e.g. `1.5`.
    pub fn from_j(j: f64) -> Result<Self> {
        let h = HalfInt::from_f64(j)?;
        if h.twice() < 0 {
            return Err(Error::InvalidSpin(format!("negative spin {j}")));
        }
        Self::new(h.twice() as u32)
    }

    pub const fn two_j(self) -> u32 {
        self.0
    }

    pub fn dim(self) -> usize {
        self.0 as usize + 1
    }

    pub fn j(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// `j(j+1)`.
    pub fn casimir(self) -> f64 {
        let j = self.j();
        j * (j + 1.0)
    }

    pub fn as_half_int(self) -> HalfInt {
        HalfInt(self.0 as i32)
    }

    /// `2m` for basis index `k`.
    pub fn two_m_at(self, k: usize) -> i32 {
        self.0 as i32 - 2 * k as i32
    }

    pub fn m_at(self, k: usize) -> f64 {
        self.two_m_at(k) as f64 / 2.0
    }

    /// Basis index of `|j,m⟩`, if `m` is admissible.
    pub fn index_of(self, two_m: i32) -> Option<usize> {
        let tj = self.0 as i32;
        if two_m.abs() > tj || (tj - two_m) % 2 != 0 {
            return None;
        }
        Some(((tj - two_m) / 2) as usize)
    }

    /// `2m` values in basis order `j, j-1, ..., -j`.
    pub fn two_m_values(self) -> impl Iterator<Item = i32> {
        let tj = self.0 as i32;
        (0..=self.0 as i32).map(move |k| tj - 2 * k)
    }
}

impl TryFrom<u32> for TwoJ {
    type Error = Error;
    fn try_from(v: u32) -> Result<Self> {
        Self::new(v)
    }
}

impl From<TwoJ> for u32 {
    fn from(t: TwoJ) -> u32 {
        t.0
    }
}

impl fmt::Display for TwoJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_half_int())
    }
}

/// `(J_x, J_y, J_z)` in the `|j,m⟩` basis.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinTriple {
    pub x: ComplexMatrix,
    pub y: ComplexMatrix,
    pub z: ComplexMatrix,
}

impl SpinTriple {
    pub fn components(&self) -> [&ComplexMatrix; 3] {
        [&self.x, &self.y, &self.z]
    }

    /// `Σ_α n_α J_α` for a real 3-vector `n`.
    pub fn dot(&self, n: [f64; 3]) -> ComplexMatrix {
        &self.x * re(n[0]) + &self.y * re(n[1]) + &self.z * re(n[2])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    Raise,
    Lower,
}

/// `J_+` or `J_-`: `J_± |j,m⟩ = sqrt((j ∓ m)(j ± m + 1)) |j,m±1⟩`.
pub fn ladder(j: TwoJ, sign: Ladder) -> ComplexMatrix {
    let d = j.dim();
    let tj = j.two_j() as i32;
    let mut raise = ComplexMatrix::zeros(d, d);
    for k in 1..d {
        // column k holds m = j - k; J_+ sends it to index k - 1
        let tm = j.two_m_at(k);
        let amp = (((tj - tm) * (tj + tm + 2)) as f64 / 4.0).sqrt();
        raise[(k - 1, k)] = re(amp);
    }
    match sign {
        Ladder::Raise => raise,
        Ladder::Lower => raise.transpose(),
    }
}

/// Spin operators `J_x = (J_+ + J_-)/2`, `J_y = (J_+ - J_-)/(2i)`, `J_z`.
pub fn spin_operators(j: TwoJ) -> SpinTriple {
    let up = ladder(j, Ladder::Raise);
    let down = ladder(j, Ladder::Lower);
    let x = (&up + &down) * re(0.5);
    let y = (&up - &down) * c(0.0, -0.5);
    let d = j.dim();
    let z = ComplexMatrix::from_fn(d, d, |a, b| if a == b { re(j.m_at(a)) } else { re(0.0) });
    SpinTriple { x, y, z }
}

fn factorial(n: i32) -> f64 {
    debug_assert!(n >= 0);
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Clebsch-Gordan coefficient `C^{J M}_{j1 m1 j2 m2} = ⟨j1 m1 j2 m2 | J M⟩`
/// from the Racah closed-form sum.
///
/// Returns zero when `M != m1 + m2`, a projection exceeds its spin, or the
/// triangle rule fails. Negative spins or projections whose parity differs
/// from their spin are rejected.
pub fn clebsch_gordan(
    j1: HalfInt,
    m1: HalfInt,
    j2: HalfInt,
    m2: HalfInt,
    j: HalfInt,
    m: HalfInt,
) -> Result<f64> {
    for (spin, proj) in [(j1, m1), (j2, m2), (j, m)] {
        if spin.0 < 0 {
            return Err(Error::InvalidSpin(format!("negative spin {spin}")));
        }
        if (spin.0 - proj.0).rem_euclid(2) != 0 {
            return Err(Error::OutOfRange(format!(
                "projection {proj} incompatible with spin {spin}"
            )));
        }
    }
    let (tj1, tm1, tj2, tm2, tj, tm) = (j1.0, m1.0, j2.0, m2.0, j.0, m.0);
    if tm != tm1 + tm2 || tm1.abs() > tj1 || tm2.abs() > tj2 || tm.abs() > tj {
        return Ok(0.0);
    }
    if tj < (tj1 - tj2).abs() || tj > tj1 + tj2 || (tj1 + tj2 + tj) % 2 != 0 {
        return Ok(0.0);
    }
    // every argument below is a non-negative integer once halved
    let h = |x: i32| x / 2;
    let triangle = (tj + 1) as f64
        * factorial(h(tj + tj1 - tj2))
        * factorial(h(tj - tj1 + tj2))
        * factorial(h(tj1 + tj2 - tj))
        / factorial(h(tj1 + tj2 + tj) + 1);
    let projections = factorial(h(tj + tm))
        * factorial(h(tj - tm))
        * factorial(h(tj1 - tm1))
        * factorial(h(tj1 + tm1))
        * factorial(h(tj2 - tm2))
        * factorial(h(tj2 + tm2));

    let a = h(tj1 + tj2 - tj);
    let b = h(tj1 - tm1);
    let cc = h(tj2 + tm2);
    let dd = h(tj - tj2 + tm1);
    let ee = h(tj - tj1 - tm2);
    let k_min = 0.max(-dd).max(-ee);
    let k_max = a.min(b).min(cc);
    let mut sum = 0.0;
    for k in k_min..=k_max {
        let denom = factorial(k)
            * factorial(a - k)
            * factorial(b - k)
            * factorial(cc - k)
            * factorial(dd + k)
            * factorial(ee + k);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign / denom;
    }
    Ok((triangle * projections).sqrt() * sum)
}

/// Polarization operator
/// `T_{LM} = Σ_{m1,m2} (-1)^{j-m1} C^{L M}_{j m2 j -m1} |j m2⟩⟨j m1|`.
///
/// These form an orthonormal basis of `B(H_{2j+1})` under `tr(A† B)`.
pub fn polarization_operator(j: TwoJ, l: u32, m: i32) -> Result<ComplexMatrix> {
    if l > j.two_j() {
        return Err(Error::OutOfRange(format!("L = {l} exceeds 2j = {}", j.two_j())));
    }
    if m.unsigned_abs() > l {
        return Err(Error::OutOfRange(format!("|M| = {} exceeds L = {l}", m.abs())));
    }
    let d = j.dim();
    let spin = j.as_half_int();
    let big_l = HalfInt::integer(l as i32);
    let big_m = HalfInt::integer(m);
    let mut t = ComplexMatrix::zeros(d, d);
    for col in 0..d {
        let tm1 = j.two_m_at(col);
        let phase = if ((j.two_j() as i32 - tm1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
        for row in 0..d {
            let tm2 = j.two_m_at(row);
            let cg = clebsch_gordan(spin, HalfInt(tm2), spin, HalfInt(-tm1), big_l, big_m)?;
            t[(row, col)] = re(phase * cg);
        }
    }
    Ok(t)
}
