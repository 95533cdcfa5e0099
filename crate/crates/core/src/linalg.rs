//! Dense complex linear algebra shared by the representation and sheaf code.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

pub type CMatrix = DMatrix<Complex64>;

pub const DEFAULT_TOL: f64 = 1e-9;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn identity_deviation(m: &CMatrix) -> f64 {
    max_abs_diff(m, &CMatrix::identity(m.nrows(), m.ncols()))
}

/// Orthonormal basis (as columns) of the null space of `a`.
///
/// Singular values below `tol·max(1, σ_max)` count as zero.
pub fn null_space(a: &CMatrix, tol: f64) -> CMatrix {
    let n = a.ncols();
    if n == 0 {
        return CMatrix::zeros(0, 0);
    }
    if a.nrows() == 0 {
        return CMatrix::identity(n, n);
    }
    // pad to at least n rows so the thin SVD exposes all n right singular vectors
    let padded = if a.nrows() < n {
        let mut p = CMatrix::zeros(n, n);
        p.view_mut((0, 0), a.shape()).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors");
    let scale = svd.singular_values.iter().cloned().fold(1.0, f64::max);
    let cols: Vec<DVector<Complex64>> =
        svd.singular_values.iter().enumerate().filter(|(_, &s)| s < tol * scale).map(|(i, _)| v_t.row(i).adjoint()).collect();
    if cols.is_empty() {
        CMatrix::zeros(n, 0)
    } else {
        CMatrix::from_columns(&cols)
    }
}

/// Numerical rank by singular values.
pub fn rank(a: &CMatrix, tol: f64) -> usize {
    if a.is_empty() {
        return 0;
    }
    let s = a.clone().singular_values();
    let scale = s.iter().cloned().fold(1.0, f64::max);
    s.iter().filter(|&&x| x >= tol * scale).count()
}

/// Eigenspaces of a Hermitian matrix, clustered by eigenvalue.
///
/// Eigenvalues closer than `merge_tol` are merged into one space. Returns
/// `None` when two distinct clusters sit closer than `gap_tol`, i.e. the
/// splitting cannot be trusted.
pub fn hermitian_eigenspaces(h: &CMatrix, merge_tol: f64, gap_tol: f64) -> Option<Vec<CMatrix>> {
    let n = h.nrows();
    if n == 0 {
        return Some(Vec::new());
    }
    let eig = h.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let scale = eig.eigenvalues.iter().map(|x| x.abs()).fold(1.0, f64::max);
    let mut clusters: Vec<Vec<usize>> = vec![vec![order[0]]];
    for w in order.windows(2) {
        let gap = eig.eigenvalues[w[1]] - eig.eigenvalues[w[0]];
        if gap <= merge_tol * scale {
            clusters.last_mut().expect("nonempty").push(w[1]);
        } else if gap < gap_tol * scale {
            return None;
        } else {
            clusters.push(vec![w[1]]);
        }
    }
    Some(
        clusters
            .into_iter()
            .map(|idx| CMatrix::from_columns(&idx.iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect::<Vec<_>>()))
            .collect(),
    )
}

pub fn random_complex<R: Rng>(rng: &mut R) -> Complex64 {
    c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_hermitian<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    let a = CMatrix::from_fn(n, n, |_, _| random_complex(rng));
    (&a + a.adjoint()) * c(0.5, 0.0)
}

/// Stacks matrices vertically; all must share a column count.
pub fn vstack(blocks: &[CMatrix], cols: usize) -> CMatrix {
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = CMatrix::zeros(rows, cols);
    let mut r = 0;
    for b in blocks {
        out.view_mut((r, 0), b.shape()).copy_from(b);
        r += b.nrows();
    }
    out
}

/// Block diagonal sum.
pub fn direct_sum(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(a.nrows() + b.nrows(), a.ncols() + b.ncols());
    out.view_mut((0, 0), a.shape()).copy_from(a);
    out.view_mut(a.shape(), b.shape()).copy_from(b);
    out
}
