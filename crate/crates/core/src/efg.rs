//! Electric-field-gradient tensors and their principal axis system.

use nalgebra::{Matrix3, Vector3};

use crate::constants::{ELEMENTARY_CHARGE, PLANCK_H};
use crate::error::{Result, SpincatError};
use crate::spin::SpinLength;

/// Real symmetric, traceless 3x3 EFG tensor (V/m^2, or dimensionless in tests).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EFGTensor {
    pub v: Matrix3<f64>,
}

impl EFGTensor {
    /// Validate symmetry (1e-12) and tracelessness (1e-10), both relative to
    /// the tensor norm.
    pub fn new(v: Matrix3<f64>) -> Result<Self> {
        let scale = v.norm().max(f64::MIN_POSITIVE);
        let asym = (v - v.transpose()).norm() / scale;
        if asym > 1e-12 {
            return Err(SpincatError::NonSymmetric(asym));
        }
        let trace = v.trace().abs() / scale;
        if trace > 1e-10 {
            return Err(SpincatError::NonTraceless(trace));
        }
        Ok(Self { v })
    }

    /// Diagonal tensor from its three eigenvalues (must sum to ~0).
    pub fn from_diagonal(dxx: f64, dyy: f64, dzz: f64) -> Result<Self> {
        Self::new(Matrix3::from_diagonal(&Vector3::new(dxx, dyy, dzz)))
    }
}

/// Principal axis system of an EFG tensor, ordered |D_xx| <= |D_yy| <= |D_zz|.
#[derive(Debug, Clone)]
pub struct PASFrame {
    /// Quadrupole coupling Q = e q D_zz / (2I(2I-1) h), in Hz.
    pub q_coupling: f64,
    /// Asymmetry parameter (D_xx - D_yy) / D_zz, in [0, 1].
    pub eta: f64,
    /// Orthogonal matrix whose columns are the principal axes (x, y, z order).
    pub r0: Matrix3<f64>,
    /// Principal values (D_xx, D_yy, D_zz).
    pub d0: Vector3<f64>,
    /// Set when |D_yy| and |D_zz| tie within 1e-12 and the ordering is a
    /// stable but arbitrary choice.
    pub degenerate_axes: bool,
}

/// Diagonalize an EFG tensor into its principal axis system and report the
/// quadrupole coupling for a nucleus with moment `quad_moment_q` (m^2).
pub fn efg_to_pas(v: &EFGTensor, quad_moment_q: f64, spin: SpinLength) -> Result<PASFrame> {
    let scale = v.v.norm().max(f64::MIN_POSITIVE);
    let eig = v.v.symmetric_eigen();

    // order by |D| ascending, tie-break on the signed value for stability
    let mut idx = [0usize, 1, 2];
    idx.sort_by(|&a, &b| {
        eig.eigenvalues[a]
            .abs()
            .partial_cmp(&eig.eigenvalues[b].abs())
            .unwrap()
            .then(eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap())
    });
    let d = Vector3::new(
        eig.eigenvalues[idx[0]],
        eig.eigenvalues[idx[1]],
        eig.eigenvalues[idx[2]],
    );
    let degenerate_axes = (d[1].abs() - d[2].abs()).abs() <= 1e-12 * scale;

    let mut r0 = Matrix3::zeros();
    for (col, &i) in idx.iter().enumerate() {
        r0.set_column(col, &eig.eigenvectors.column(i));
    }
    // fix a right-handed frame
    if r0.determinant() < 0.0 {
        let c = -r0.column(0);
        r0.set_column(0, &c);
    }

    let dzz = d[2];
    if dzz == 0.0 {
        return Err(SpincatError::NonTraceless(0.0));
    }
    let eta = (d[0] - d[1]) / dzz;
    let two_i = spin.two_i() as f64;
    let q_coupling =
        ELEMENTARY_CHARGE * quad_moment_q * dzz / (two_i * (two_i - 1.0) * PLANCK_H);

    Ok(PASFrame {
        q_coupling,
        eta,
        r0,
        d0: d,
        degenerate_axes,
    })
}
