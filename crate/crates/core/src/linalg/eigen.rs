//! Dense symmetric eigenvalues by cyclic Jacobi rotations.

use serde::Serialize;

/// Relative factor for the zero-eigenvalue cutoff `tau = factor * max(1, lambda_max)`.
pub const DEFAULT_ZERO_TOLERANCE: f64 = 1e-8;

/// Off-diagonal mass is driven below this fraction of the Frobenius norm.
const JACOBI_TOLERANCE: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Real symmetric matrix stored densely, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricMatrix {
    order: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    /// Returns `None` unless `rows` is square and exactly symmetric.
    pub fn from_rows(rows: &[Vec<f64>]) -> Option<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return None;
        }
        for (i, row) in rows.iter().enumerate() {
            if row[..i].iter().enumerate().any(|(j, &x)| x != rows[j][i]) {
                return None;
            }
        }
        Some(SymmetricMatrix {
            order,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn zeros(order: usize) -> Self {
        SymmetricMatrix {
            order,
            data: vec![0.0; order * order],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.order + j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data
            .chunks(self.order.max(1))
            .take(self.order)
            .map(<[f64]>::to_vec)
            .collect()
    }

    fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// Ascending eigenvalues with the zero count and spectral gap derived from
/// a single tolerance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub zero_count: usize,
    /// Smallest eigenvalue above the zero cutoff; absent when there is none.
    pub fiedler: Option<f64>,
    pub tolerance: f64,
}

impl Spectrum {
    /// Classifies sorted eigenvalues against `factor * max(1, lambda_max)`.
    pub fn from_sorted(eigenvalues: Vec<f64>, factor: f64) -> Self {
        let largest = eigenvalues.last().copied().unwrap_or(0.0);
        let tolerance = factor * largest.max(1.0);
        let zero_count = eigenvalues.iter().filter(|&&x| x <= tolerance).count();
        let fiedler = eigenvalues.iter().copied().find(|&x| x > tolerance);
        Spectrum {
            eigenvalues,
            zero_count,
            fiedler,
            tolerance,
        }
    }

    pub fn empty() -> Self {
        Self::from_sorted(Vec::new(), DEFAULT_ZERO_TOLERANCE)
    }
}

pub fn symmetric_eigenvalues(m: &SymmetricMatrix) -> Spectrum {
    symmetric_eigenvalues_with(m, DEFAULT_ZERO_TOLERANCE)
}

/// All eigenvalues of `m`, ascending, classified with the relative zero
/// tolerance `factor`.
pub fn symmetric_eigenvalues_with(m: &SymmetricMatrix, factor: f64) -> Spectrum {
    let mut values = jacobi_eigenvalues(m);
    values.sort_by(f64::total_cmp);
    Spectrum::from_sorted(values, factor)
}

fn jacobi_eigenvalues(m: &SymmetricMatrix) -> Vec<f64> {
    let n = m.order;
    let mut a = m.data.clone();
    let threshold = JACOBI_TOLERANCE * m.frobenius();
    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j] * a[i * n + j];
                }
            }
        }
        s.sqrt()
    };
    for _ in 0..MAX_SWEEPS {
        if off(&a) <= threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // A <- Jᵀ A J restricted to rows/columns p and q.
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eig(rows: &[Vec<f64>]) -> Spectrum {
        symmetric_eigenvalues(&SymmetricMatrix::from_rows(rows).unwrap())
    }

    fn assert_close(got: &[f64], want: &[f64]) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-10, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn triangle_graph_laplacian() {
        let s = eig(&[
            vec![2.0, -1.0, -1.0],
            vec![-1.0, 2.0, -1.0],
            vec![-1.0, -1.0, 2.0],
        ]);
        assert_close(&s.eigenvalues, &[0.0, 3.0, 3.0]);
        assert_eq!(s.zero_count, 1);
        assert!((s.fiedler.unwrap() - 3.0).abs() < 1e-10);
    }

    #[test]
    fn two_by_two() {
        let s = eig(&[vec![4.0, 2.0], vec![2.0, 4.0]]);
        assert_close(&s.eigenvalues, &[2.0, 6.0]);
        assert_eq!(s.zero_count, 0);
    }

    #[test]
    fn zero_one_by_one() {
        let s = eig(&[vec![0.0]]);
        assert_eq!(s.eigenvalues, vec![0.0]);
        assert_eq!(s.zero_count, 1);
        assert_eq!(s.fiedler, None);
    }

    #[test]
    fn empty_matrix_has_empty_spectrum() {
        let s = symmetric_eigenvalues(&SymmetricMatrix::zeros(0));
        assert!(s.eigenvalues.is_empty());
        assert_eq!(s.zero_count, 0);
        assert_eq!(s.fiedler, None);
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        assert!(SymmetricMatrix::from_rows(&[vec![1.0, 2.0], vec![2.5, 1.0]]).is_none());
        assert!(SymmetricMatrix::from_rows(&[vec![1.0, 2.0]]).is_none());
    }

    #[test]
    fn tolerance_scales_with_largest_eigenvalue() {
        let s = Spectrum::from_sorted(vec![5e-8, 1e3], 1e-8);
        assert!((s.tolerance - 1e-5).abs() < 1e-18);
        assert_eq!(s.zero_count, 1);
        let s = Spectrum::from_sorted(vec![5e-8, 0.5], 1e-8);
        assert_eq!(s.tolerance, 1e-8);
        assert_eq!(s.zero_count, 0);
    }
}
