//! Spin Wigner function on the sphere.
//!
//! The kernel is built from trace-orthonormal multipole (spherical-tensor)
//! operators paired with spherical harmonics,
//! w(theta, phi) = sqrt(4 pi / (2I+1)) sum_kq conj(Y_kq) T_kq,
//! normalized so that integrating W against the measure
//! (2I+1)/(4 pi) dOmega returns Tr rho. The multipole phase convention is
//! fixed by T_kk proportional to (-1)^k (I+)^k, which makes
//! T_kq^dag = (-1)^q T_k,-q and the Wigner function real for Hermitian
//! input.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{Result, SpincatError};
use crate::linalg::CMat;
use crate::spin::{make_spin_ops, SpinLength};

/// Trace-orthonormal multipole operators T_kq for k = 0..2I, q = -k..k.
/// Index as `ops[k][(q + k) as usize]`.
pub fn multipole_operators(spin: SpinLength) -> Vec<Vec<CMat>> {
    let dim = spin.dim();
    let ops = make_spin_ops(spin);
    let two_i = spin.two_i() as usize;
    let mut out = Vec::with_capacity(two_i + 1);
    for k in 0..=two_i {
        let mut family = vec![CMat::zeros(dim, dim); 2 * k + 1];
        // top rung: (-1)^k (I+)^k, normalized
        let mut top = CMat::identity(dim, dim);
        for _ in 0..k {
            top = &top * &ops.iplus;
        }
        let norm = (top.adjoint() * &top).trace().re.sqrt();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        family[2 * k] = top * C64::new(sign / norm, 0.0);
        // lower all the way down: [I-, T_kq] = sqrt((k+q)(k-q+1)) T_k,q-1
        for q in ((-(k as i64) + 1)..=(k as i64)).rev() {
            let upper = family[(q + k as i64) as usize].clone();
            let comm = &ops.iminus * &upper - &upper * &ops.iminus;
            let c = ((k as f64 + q as f64) * (k as f64 - q as f64 + 1.0)).sqrt();
            family[(q - 1 + k as i64) as usize] = comm / C64::new(c, 0.0);
        }
        out.push(family);
    }
    out
}

fn factorial_ratio_sqrt(k: usize, q: usize) -> f64 {
    // sqrt((k - q)! / (k + q)!)
    let mut acc = 1.0;
    for j in (k - q + 1)..=(k + q) {
        acc *= j as f64;
    }
    (1.0 / acc).sqrt()
}

/// Associated Legendre P_k^q(x) with the Condon-Shortley phase, q >= 0.
fn assoc_legendre(k: usize, q: usize, x: f64) -> f64 {
    // start from P_q^q and recurse upward in degree
    let somx2 = ((1.0 - x) * (1.0 + x)).max(0.0).sqrt();
    let mut pqq = 1.0;
    let mut fact = 1.0;
    for _ in 0..q {
        pqq *= -fact * somx2;
        fact += 2.0;
    }
    if k == q {
        return pqq;
    }
    let mut p_prev = pqq;
    let mut p_curr = x * (2.0 * q as f64 + 1.0) * pqq;
    if k == q + 1 {
        return p_curr;
    }
    for l in (q + 2)..=k {
        let lf = l as f64;
        let qf = q as f64;
        let p_next = ((2.0 * lf - 1.0) * x * p_curr - (lf + qf - 1.0) * p_prev) / (lf - qf);
        p_prev = p_curr;
        p_curr = p_next;
    }
    p_curr
}

/// Spherical harmonic Y_kq(theta, phi) for any |q| <= k.
pub fn spherical_harmonic(k: usize, q: i64, theta: f64, phi: f64) -> C64 {
    let qa = q.unsigned_abs() as usize;
    let norm = ((2.0 * k as f64 + 1.0) / (4.0 * PI)).sqrt() * factorial_ratio_sqrt(k, qa);
    let p = assoc_legendre(k, qa, theta.cos());
    let base = C64::from_polar(norm * p, qa as f64 * phi);
    if q >= 0 {
        base
    } else {
        base.conj() * C64::new(if qa % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
    }
}

/// Wigner kernel at one phase-space point.
pub fn wigner_kernel(spin: SpinLength, multipoles: &[Vec<CMat>], theta: f64, phi: f64) -> CMat {
    let dim = spin.dim();
    let mut w = CMat::zeros(dim, dim);
    let scale = C64::new((4.0 * PI / (spin.two_i() as f64 + 1.0)).sqrt(), 0.0);
    for (k, family) in multipoles.iter().enumerate() {
        for q in -(k as i64)..=(k as i64) {
            let y = spherical_harmonic(k, q, theta, phi).conj();
            w += &family[(q + k as i64) as usize] * (y * scale);
        }
    }
    w
}

/// Spin Wigner function W(theta, phi) = Tr(rho w) on a rectangular grid.
/// Returns `values[i][j]` for `thetas[i]`, `phis[j]`.
pub fn wigner_function(
    spin: SpinLength,
    rho: &CMat,
    thetas: &[f64],
    phis: &[f64],
) -> Result<Vec<Vec<f64>>> {
    let dim = spin.dim();
    assert_eq!(rho.nrows(), dim);
    let herm = crate::linalg::hermiticity_defect(rho);
    if herm > 1e-10 {
        return Err(SpincatError::NonHermitian(herm));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > 1e-10 || tr.im.abs() > 1e-12 {
        return Err(SpincatError::NonUnitTrace((tr.re - 1.0).abs().max(tr.im.abs())));
    }
    let multipoles = multipole_operators(spin);
    let mut out = Vec::with_capacity(thetas.len());
    for &th in thetas {
        let mut row = Vec::with_capacity(phis.len());
        for &ph in phis {
            let w = wigner_kernel(spin, &multipoles, th, ph);
            row.push((rho * &w).trace().re);
        }
        out.push(row);
    }
    Ok(out)
}

/// Integrate W over the sphere with the (2I+1)/(4 pi) measure using
/// Gauss-Legendre in cos(theta) and a uniform azimuthal grid; exact for the
/// band-limited kernel once the orders exceed 2I.
pub fn wigner_sphere_integral(spin: SpinLength, rho: &CMat) -> Result<f64> {
    let n_theta = spin.dim() + 2;
    let n_phi = 2 * spin.dim() + 3;
    let (nodes, weights) = gauss_legendre(n_theta);
    let thetas: Vec<f64> = nodes.iter().map(|&x| x.acos()).collect();
    let phis: Vec<f64> = (0..n_phi)
        .map(|j| 2.0 * PI * j as f64 / n_phi as f64)
        .collect();
    let values = wigner_function(spin, rho, &thetas, &phis)?;
    let mut acc = 0.0;
    for (i, wi) in weights.iter().enumerate() {
        let phi_mean: f64 = values[i].iter().sum::<f64>() / n_phi as f64;
        acc += wi * phi_mean * 2.0 * PI;
    }
    Ok(acc * (spin.two_i() as f64 + 1.0) / (4.0 * PI))
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            // Legendre P_n and derivative by recurrence
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (mut p0, mut p1) = (1.0, x);
        for k in 2..=n {
            let kf = k as f64;
            let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}
