//! Spin-I operator algebra, spin coherent states, and spin cat states.
//!
//! The Iz eigenbasis is ordered m = I, I-1, ..., -I everywhere in this crate,
//! so basis index n corresponds to m = I - n. Spin lengths are stored as 2I
//! so half-integer spins are exact.

use nalgebra::DVector;
use num_complex::Complex64 as C64;

use crate::error::{Result, SpincatError};
use crate::linalg::{CMat, CVec};

/// Spin length I, stored as 2I.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpinLength {
    two_i: u32,
}

impl SpinLength {
    /// Construct a spin length from 2I. Rejects 2I = 0.
    pub fn new(two_i: u32) -> Result<Self> {
        if two_i == 0 {
            return Err(SpincatError::InvalidSpinLength(two_i));
        }
        Ok(Self { two_i })
    }

    /// 2I as an integer.
    pub fn two_i(&self) -> u32 {
        self.two_i
    }

    /// I as a float.
    pub fn value(&self) -> f64 {
        self.two_i as f64 / 2.0
    }

    /// Hilbert-space dimension 2I + 1.
    pub fn dim(&self) -> usize {
        self.two_i as usize + 1
    }

    /// Magnetic quantum numbers in basis order, m = I ... -I.
    pub fn m_values(&self) -> Vec<f64> {
        let i = self.value();
        (0..self.dim()).map(|n| i - n as f64).collect()
    }

    /// True when I is half-integer (2I odd).
    pub fn is_half_integer(&self) -> bool {
        self.two_i % 2 == 1
    }
}

/// Z2 parity label of a state or level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// +1 for even, -1 for odd.
    pub fn sign(&self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }

    pub fn from_sign(s: f64) -> Self {
        if s >= 0.0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Dense spin-I operator matrices in the Iz eigenbasis.
///
/// `parity` is the literal exponential exp(i pi Iz), whose diagonal entries
/// have unit modulus but are imaginary for half-integer I (its square is
/// -identity there). `parity_z2` is the phase-aligned operator
/// exp(i pi (Iz - I)) = diag((-1)^n): real, involutory, and the one used for
/// parity labels. The two differ by the constant phase exp(i pi I).
#[derive(Debug, Clone)]
pub struct SpinOperatorSet {
    pub spin: SpinLength,
    pub iz: CMat,
    pub iplus: CMat,
    pub iminus: CMat,
    pub ix: CMat,
    pub iy: CMat,
    pub isq: CMat,
    pub parity: CMat,
    pub parity_z2: CMat,
}

/// Build the spin-I operator set.
pub fn make_spin_ops(spin: SpinLength) -> SpinOperatorSet {
    let dim = spin.dim();
    let i_val = spin.value();
    let m = spin.m_values();

    let iz = CMat::from_fn(dim, dim, |r, c| {
        if r == c {
            C64::new(m[r], 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });

    // <I, m+1 | I+ | I, m> = sqrt(I(I+1) - m(m+1)); row index r = I - (m+1).
    let mut iplus = CMat::zeros(dim, dim);
    for n in 1..dim {
        let mm = m[n];
        iplus[(n - 1, n)] = C64::new((i_val * (i_val + 1.0) - mm * (mm + 1.0)).sqrt(), 0.0);
    }
    let iminus = iplus.adjoint();

    let half = C64::new(0.5, 0.0);
    let ix = (&iplus + &iminus) * half;
    let iy = (&iplus - &iminus) * C64::new(0.0, -0.5);
    let isq = CMat::identity(dim, dim) * C64::new(i_val * (i_val + 1.0), 0.0);

    let parity = CMat::from_fn(dim, dim, |r, c| {
        if r == c {
            C64::from_polar(1.0, std::f64::consts::PI * m[r])
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let parity_z2 = CMat::from_fn(dim, dim, |r, c| {
        if r == c {
            C64::new(if r % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });

    SpinOperatorSet {
        spin,
        iz,
        iplus,
        iminus,
        ix,
        iy,
        isq,
        parity,
        parity_z2,
    }
}

/// Pure state of a spin-I system in the Iz eigenbasis (m = I ... -I).
#[derive(Debug, Clone)]
pub struct SpinState {
    pub spin: SpinLength,
    pub amplitudes: CVec,
}

impl SpinState {
    /// Wrap amplitudes, enforcing unit norm to 1e-12.
    pub fn new(spin: SpinLength, amplitudes: CVec) -> Result<Self> {
        assert_eq!(amplitudes.len(), spin.dim(), "amplitude length mismatch");
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(SpincatError::NonUnitTrace((norm - 1.0).abs()));
        }
        Ok(Self { spin, amplitudes })
    }

    /// Normalize and wrap.
    pub fn from_unnormalized(spin: SpinLength, amplitudes: CVec) -> Self {
        let norm = amplitudes.norm();
        Self {
            spin,
            amplitudes: amplitudes / C64::new(norm, 0.0),
        }
    }

    /// Basis state |I, m> with m = I - n.
    pub fn basis(spin: SpinLength, n: usize) -> Self {
        let mut v = CVec::zeros(spin.dim());
        v[n] = C64::new(1.0, 0.0);
        Self {
            spin,
            amplitudes: v,
        }
    }

    /// Inner product <self|other>.
    pub fn overlap(&self, other: &SpinState) -> C64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// Expectation value <psi|op|psi>.
    pub fn expect(&self, op: &CMat) -> C64 {
        self.amplitudes.dotc(&(op * &self.amplitudes))
    }

    /// Density matrix |psi><psi|.
    pub fn density(&self) -> CMat {
        let n = self.spin.dim();
        CMat::from_fn(n, n, |r, c| self.amplitudes[r] * self.amplitudes[c].conj())
    }
}

/// Parameters of a spin cat state.
#[derive(Debug, Clone, Copy)]
pub struct CatParams {
    /// Polar angle in [0, pi].
    pub theta: f64,
    /// Azimuthal angle in [0, 2 pi).
    pub phi: f64,
    /// Parity branch: Even keeps amplitudes with even n, Odd with odd n.
    pub parity: Parity,
}

fn binomial(n: u32, k: u32) -> f64 {
    // multiplicative form, exact in f64 for the small n used here
    let mut acc = 1.0;
    for j in 0..k {
        acc *= (n - j) as f64 / (j + 1) as f64;
    }
    acc
}

/// Spin coherent state |Theta, phi> as amplitudes over |I, I-n>:
/// sqrt(C(2I, n)) cos^(2I-n)(Theta/2) sin^n(Theta/2) e^(i n phi).
///
/// The n = 0 coefficient is real and non-negative, which fixes the global
/// phase; phi = 0 gives an all-real vector.
pub fn coherent_state(spin: SpinLength, theta: f64, phi: f64) -> SpinState {
    assert!(
        (0.0..=std::f64::consts::PI).contains(&theta),
        "theta must lie in [0, pi]"
    );
    let two_i = spin.two_i();
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let amplitudes = DVector::from_fn(spin.dim(), |n, _| {
        let n32 = n as u32;
        let mag = binomial(two_i, n32).sqrt() * c.powi((two_i - n32) as i32) * s.powi(n as i32);
        C64::from_polar(mag, phi * n as f64)
    });
    // magnitudes already normalized analytically; renormalize for safety
    SpinState::from_unnormalized(spin, amplitudes)
}

/// Overlap gamma(Theta) = cos^(2I)(Theta) between the azimuthally opposite
/// coherent states |Theta, phi> and |Theta, phi - pi>.
pub fn overlap_gamma(spin: SpinLength, theta: f64) -> f64 {
    theta.cos().powi(spin.two_i() as i32)
}

/// Spin cat state: normalized sum/difference of |Theta, phi> and
/// |Theta, phi - pi>. The result is an exact eigenstate of `parity_z2`
/// with eigenvalue +1 (Even) or -1 (Odd).
pub fn cat_state(spin: SpinLength, params: CatParams) -> Result<SpinState> {
    let gamma = overlap_gamma(spin, params.theta);
    let sign = params.parity.sign();
    let denom = 2.0 * (1.0 + sign * gamma);
    if params.parity == Parity::Odd && 1.0 - gamma < 1e-14 {
        return Err(SpincatError::DegenerateCat(1.0 - gamma));
    }
    let norm = denom.sqrt().recip();
    let base = coherent_state(spin, params.theta, params.phi);
    // |Theta, phi - pi> has amplitudes (-1)^n times those of |Theta, phi>,
    // so the sum/difference projects onto even/odd n exactly.
    let amplitudes = DVector::from_fn(spin.dim(), |n, _| {
        let keep = if n % 2 == 0 { 1.0 + sign } else { 1.0 - sign };
        base.amplitudes[n] * C64::new(norm * keep, 0.0)
    });
    Ok(SpinState::from_unnormalized(spin, amplitudes))
}
