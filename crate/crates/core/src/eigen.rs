//! Dense symmetric eigensolver for adjacency matrices.
//!
//! Eigenvalues come from Householder tridiagonalization followed by the
//! implicit-shift QL iteration. The eigenspace of the least eigenvalue is
//! recovered separately by block inverse iteration on the original matrix,
//! shifted just below the least eigenvalue so that the shifted matrix is
//! positive definite and can be factored by Cholesky.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexVector};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_GAP_TOL: f64 = 1e-7;
/// QL sweeps allowed per eigenvalue.
pub const MAX_SWEEPS: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EigenError {
    #[error("QL iteration did not converge for eigenvalue {index} within {MAX_SWEEPS} sweeps")]
    NoConvergence { index: usize },
    #[error("inverse iteration stalled: residual {residual:e} above tolerance {tol:e}")]
    Residual { residual: f64, tol: f64 },
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Tolerances for [`full_spectrum_with`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenConfig {
    /// Bound on the eigen-equation residual of the reported least vectors.
    pub tol: f64,
    /// Eigenvalues within this distance of the least one count toward its
    /// multiplicity.
    pub gap_tol: f64,
}

impl Default for EigenConfig {
    fn default() -> Self {
        Self { tol: DEFAULT_TOL, gap_tol: DEFAULT_GAP_TOL }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    /// All eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    pub least_value: f64,
    /// Unit first eigenvector, sign fixed so its largest-magnitude entry is
    /// negative. With multiplicity above one this is the first basis vector.
    pub least_vector: VertexVector,
    pub least_multiplicity: usize,
    /// Orthonormal basis of the computed least eigenspace.
    pub least_basis: Vec<VertexVector>,
    /// Largest eigen-equation residual over `least_basis`.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LeastEigenpair {
    pub value: f64,
    pub vector: VertexVector,
    pub multiplicity: usize,
}

pub fn full_spectrum(g: &Graph, tol: f64) -> Result<Spectrum, EigenError> {
    full_spectrum_with(g, &EigenConfig { tol, ..EigenConfig::default() })
}

pub fn full_spectrum_with(g: &Graph, cfg: &EigenConfig) -> Result<Spectrum, EigenError> {
    if !(cfg.tol > 0.0) {
        return Err(EigenError::BadTolerance(cfg.tol));
    }
    let a = g.adjacency_f64();
    let eigenvalues = symmetric_eigenvalues(&a)?;
    let least_value = eigenvalues[0];
    let least_multiplicity = eigenvalues.iter().take_while(|&&l| l <= least_value + cfg.gap_tol).count();
    let basis = least_eigenspace(&a, least_value, least_multiplicity, cfg.tol)?;
    let residual = basis
        .iter()
        .map(|x| g.eigen_residual(least_value, x))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .fold(0.0, f64::max);
    if residual > cfg.tol {
        return Err(EigenError::Residual { residual, tol: cfg.tol });
    }
    Ok(Spectrum {
        least_vector: basis[0].clone(),
        least_basis: basis,
        eigenvalues,
        least_value,
        least_multiplicity,
        residual,
    })
}

pub fn least_eigenpair(g: &Graph, tol: f64) -> Result<LeastEigenpair, EigenError> {
    let s = full_spectrum(g, tol)?;
    Ok(LeastEigenpair { value: s.least_value, vector: s.least_vector, multiplicity: s.least_multiplicity })
}

/// Least adjacency eigenvalue only; skips the eigenvector work.
pub fn least_eigenvalue(g: &Graph) -> Result<f64, EigenError> {
    Ok(symmetric_eigenvalues(&g.adjacency_f64())?[0])
}

/// `xᵀ A x / xᵀ x`.
pub fn rayleigh(g: &Graph, x: &VertexVector) -> Result<f64, GraphError> {
    let q = g.quadratic_form(x)?;
    if x.is_zero() {
        return Err(GraphError::ZeroVector);
    }
    Ok(q / x.dot(x))
}

/// Ascending eigenvalues of a dense symmetric matrix.
pub fn symmetric_eigenvalues(a: &[Vec<f64>]) -> Result<Vec<f64>, EigenError> {
    Ok(decompose(a, false)?.0)
}

/// Ascending eigenvalues and the matching orthonormal eigenvectors, stored
/// as the columns of the returned row-major matrix.
pub fn symmetric_eigen_decomposition(a: &[Vec<f64>]) -> Result<(Vec<f64>, Vec<Vec<f64>>), EigenError> {
    decompose(a, true)
}

fn decompose(a: &[Vec<f64>], want_vectors: bool) -> Result<(Vec<f64>, Vec<Vec<f64>>), EigenError> {
    let n = a.len();
    let mut v: Vec<Vec<f64>> = a.to_vec();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tridiagonalize(&mut v, &mut d, &mut e);
    ql_implicit(&mut v, &mut d, &mut e, want_vectors)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let values = order.iter().map(|&i| d[i]).collect();
    let vectors = if want_vectors {
        (0..n).map(|r| order.iter().map(|&c| v[r][c]).collect()).collect()
    } else {
        Vec::new()
    };
    Ok((values, vectors))
}

/// Householder reduction to tridiagonal form. On return `d` holds the
/// diagonal, `e[1..]` the subdiagonal, and `v` the accumulated orthogonal
/// transformation.
fn tridiagonalize(v: &mut [Vec<f64>], d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    for j in 0..n {
        d[j] = v[n - 1][j];
    }
    for i in (1..n).rev() {
        let scale: f64 = d[..i].iter().map(|x| x.abs()).sum();
        let mut h = 0.0;
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[i - 1][j];
                v[i][j] = 0.0;
                v[j][i] = 0.0;
            }
        } else {
            for k in 0..i {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for x in e[..i].iter_mut() {
                *x = 0.0;
            }
            for j in 0..i {
                f = d[j];
                v[j][i] = f;
                g = e[j] + v[j][j] * f;
                for k in j + 1..i {
                    g += v[k][j] * d[k];
                    e[k] += v[k][j] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[k][j] -= f * e[k] + g * d[k];
                }
                d[j] = v[i - 1][j];
                v[i][j] = 0.0;
            }
        }
        d[i] = h;
    }
    for i in 0..n.saturating_sub(1) {
        v[n - 1][i] = v[i][i];
        v[i][i] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[k][i + 1] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[k][i + 1] * v[k][j];
                }
                for k in 0..=i {
                    v[k][j] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[k][i + 1] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[n - 1][j];
        v[n - 1][j] = 0.0;
    }
    v[n - 1][n - 1] = 1.0;
    e[0] = 0.0;
}

/// Implicit-shift QL on the tridiagonal `(d, e)`.
fn ql_implicit(v: &mut [Vec<f64>], d: &mut [f64], e: &mut [f64], want_vectors: bool) -> Result<(), EigenError> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                if sweeps > MAX_SWEEPS {
                    return Err(EigenError::NoConvergence { index: l });
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for x in d[l + 2..].iter_mut() {
                    *x -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if want_vectors {
                        for row in v.iter_mut() {
                            h = row[i + 1];
                            row[i + 1] = s * row[i] + c * h;
                            row[i] = c * row[i] - s * h;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

/// Lower-triangular Cholesky factor, or `None` if a pivot is not positive.
fn cholesky(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut l = vec![vec![0.0; n]; n];
    for j in 0..n {
        let s = a[j][j] - (0..j).map(|k| l[j][k] * l[j][k]).sum::<f64>();
        if !(s > 0.0) {
            return None;
        }
        let piv = s.sqrt();
        l[j][j] = piv;
        for i in j + 1..n {
            let t = a[i][j] - (0..j).map(|k| l[i][k] * l[j][k]).sum::<f64>();
            l[i][j] = t / piv;
        }
    }
    Some(l)
}

fn cholesky_solve(l: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let n = b.len();
    let mut y = vec![0.0; n];
    for i in 0..n {
        y[i] = (b[i] - (0..i).map(|k| l[i][k] * y[k]).sum::<f64>()) / l[i][i];
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        x[i] = (y[i] - (i + 1..n).map(|k| l[k][i] * x[k]).sum::<f64>()) / l[i][i];
    }
    x
}

/// Orthonormalizes in place (modified Gram-Schmidt, two passes).
fn orthonormalize(vs: &mut [Vec<f64>]) {
    for i in 0..vs.len() {
        for _ in 0..2 {
            for j in 0..i {
                let dot: f64 = vs[i].iter().zip(&vs[j]).map(|(a, b)| a * b).sum();
                let (head, tail) = vs.split_at_mut(i);
                for (x, y) in tail[0].iter_mut().zip(&head[j]) {
                    *x -= dot * y;
                }
            }
        }
        let norm = vs[i].iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in vs[i].iter_mut() {
            *x /= norm;
        }
    }
}

/// Deterministic start vectors with no special structure.
fn start_vector(n: usize, seed: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            let mut z = (i as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (seed as u64 + 1).wrapping_mul(0xBF58_476D_1CE4_E5B9);
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
            z ^= z >> 31;
            (z >> 11) as f64 / (1u64 << 53) as f64 + 0.5
        })
        .collect()
}

fn max_residual(a: &[Vec<f64>], lambda: f64, x: &[f64]) -> f64 {
    a.iter()
        .enumerate()
        .map(|(i, row)| (row.iter().zip(x).map(|(p, q)| p * q).sum::<f64>() - lambda * x[i]).abs())
        .fold(0.0, f64::max)
}

/// Orthonormal basis of the `k`-dimensional eigenspace at `lambda`, which
/// must be the least eigenvalue of `a`.
fn least_eigenspace(a: &[Vec<f64>], lambda: f64, k: usize, tol: f64) -> Result<Vec<VertexVector>, EigenError> {
    let n = a.len();
    let norm = a.iter().map(|r| r.iter().map(|x| x.abs()).sum::<f64>()).fold(1.0, f64::max);
    let mut delta = 1e-10 * norm;
    let factor = loop {
        let shifted: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| a[i][j] - if i == j { lambda - delta } else { 0.0 }).collect())
            .collect();
        if let Some(l) = cholesky(&shifted) {
            break l;
        }
        delta *= 4.0;
    };
    let mut block: Vec<Vec<f64>> = (0..k).map(|s| start_vector(n, s)).collect();
    orthonormalize(&mut block);
    let mut residual = f64::INFINITY;
    for _ in 0..40 {
        for x in block.iter_mut() {
            *x = cholesky_solve(&factor, x);
        }
        orthonormalize(&mut block);
        residual = block.iter().map(|x| max_residual(a, lambda, x)).fold(0.0, f64::max);
        if residual <= tol * 1e-2 {
            break;
        }
    }
    if residual > tol {
        return Err(EigenError::Residual { residual, tol });
    }
    if k == 1 {
        let x = &mut block[0];
        let mut imax = 0;
        for i in 1..n {
            if x[i].abs() > x[imax].abs() {
                imax = i;
            }
        }
        if x[imax] > 0.0 {
            for v in x.iter_mut() {
                *v = -*v;
            }
        }
    }
    Ok(block.into_iter().map(VertexVector::new).collect())
}
