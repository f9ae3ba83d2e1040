//! Small dense linear-algebra helpers shared across modules.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

pub type RMat = DMatrix<f64>;
pub type RVec = DVector<f64>;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

/// Eigendecomposition of a real symmetric matrix, eigenvalues ascending.
///
/// Returns `(energies, vectors)` with eigenvectors as columns matching the
/// eigenvalue order.
pub fn eigh_real(h: &RMat) -> (Vec<f64>, RMat) {
    let eig = h.clone().symmetric_eigen();
    let n = h.nrows();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let energies: Vec<f64> = idx.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = RMat::zeros(n, n);
    for (k, &i) in idx.iter().enumerate() {
        vectors.set_column(k, &eig.eigenvectors.column(i));
    }
    (energies, vectors)
}

/// Eigendecomposition of a complex Hermitian matrix through the real
/// symmetric embedding [[X, -Y], [Y, X]] of H = X + iY.
///
/// Each eigenvalue of H appears twice in the embedding; the doubled set is
/// deduplicated by keeping every second one. Used as an eigensolver route
/// that shares no code path with `eigh_real` on the physical matrix.
pub fn eigh_complex_embed(h: &CMat) -> (Vec<f64>, CMat) {
    let n = h.nrows();
    let mut big = RMat::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = h[(i, j)];
            big[(i, j)] = z.re;
            big[(i + n, j + n)] = z.re;
            big[(i, j + n)] = -z.im;
            big[(i + n, j)] = z.im;
        }
    }
    let (vals, vecs) = eigh_real(&big);
    let mut energies = Vec::with_capacity(n);
    let mut vectors = CMat::zeros(n, n);
    // Pairs (2k, 2k+1) share an eigenvalue; take one member of each pair.
    for k in 0..n {
        energies.push(vals[2 * k]);
        let col = vecs.column(2 * k);
        let mut v = CVec::zeros(n);
        for i in 0..n {
            v[i] = C64::new(col[i], col[i + n]);
        }
        let norm = v.norm();
        vectors.set_column(k, &(v / C64::new(norm, 0.0)));
    }
    (energies, vectors)
}

/// Promote a real matrix to a complex one.
pub fn to_complex(m: &RMat) -> CMat {
    CMat::from_fn(m.nrows(), m.ncols(), |i, j| C64::new(m[(i, j)], 0.0))
}

/// Frobenius norm of the commutator [A, B].
pub fn commutator_norm(a: &CMat, b: &CMat) -> f64 {
    (a * b - b * a).norm()
}

/// Max absolute deviation from Hermiticity.
pub fn hermiticity_defect(m: &CMat) -> f64 {
    let d = m - m.adjoint();
    d.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
