//! Boundary matrices between `Omega` bases and the path Laplacians
//! `L_n = B_{n+1} B_{n+1}ᵀ + B_nᵀ B_n`.
//!
//! `B_n` solves `O_{n-1} B_n = M̃_n O_n`, where `O_n` holds the chosen
//! `Omega_n` basis in allowed-path coordinates and `M̃_n` is the regular
//! boundary restricted to allowed `(n-1)`-path rows. The chosen basis is
//! treated as orthonormal, so the adjoint of `B_n` is its transpose.

use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::linalg::{
    symmetric_eigenvalues_with, RationalMatrix, Spectrum, SymmetricMatrix, DEFAULT_ZERO_TOLERANCE,
};
use crate::path_complex::{
    allowed_paths, boundary_matrix, omega_basis, regular_boundary, ElementaryPath, OmegaBasis,
    PathBasis, PathConfig,
};

/// Settings shared by every analysis entry point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalysisConfig {
    pub paths: PathConfig,
    /// Relative zero-eigenvalue factor: `tau = factor * max(1, lambda_max)`.
    pub zero_tolerance: f64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            paths: PathConfig::default(),
            zero_tolerance: DEFAULT_ZERO_TOLERANCE,
        }
    }
}

/// `M_n`: the regular boundary of `A_n` into every regular `(n-1)`-path
/// that occurs in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullBoundary {
    pub rows: Vec<ElementaryPath>,
    pub columns: PathBasis,
    pub matrix: RationalMatrix,
}

pub fn build_full_boundary(g: &Digraph, n: usize, config: &PathConfig) -> Result<FullBoundary> {
    assert!(n >= 1, "the full boundary is defined from dimension 1");
    let columns = allowed_paths(g, n, config)?;
    let mut rows: Vec<ElementaryPath> = columns
        .paths()
        .iter()
        .flat_map(|p| regular_boundary(p).support().cloned().collect::<Vec<_>>())
        .collect();
    rows.sort();
    rows.dedup();
    let matrix = boundary_matrix(&columns, &rows);
    Ok(FullBoundary {
        rows,
        columns,
        matrix,
    })
}

/// `B_n` between two consecutive `Omega` bases.
pub fn boundary_between(lower: &OmegaBasis, upper: &OmegaBasis) -> Result<RationalMatrix> {
    let restricted = boundary_matrix(upper.ambient(), lower.ambient().paths());
    boundary_in_basis(lower, &restricted.checked_mul(upper.inclusion())?)
}

/// Expresses chains given in `lower`'s ambient coordinates (one per column)
/// in `lower`'s `Omega` basis.
pub(crate) fn boundary_in_basis(
    lower: &OmegaBasis,
    ambient_images: &RationalMatrix,
) -> Result<RationalMatrix> {
    let solution = lower.inclusion().solve_least_squares(ambient_images)?;
    if &lower.inclusion().checked_mul(&solution)? != ambient_images {
        return Err(Error::Inconsistent(format!(
            "boundary of Omega_{} does not lie in Omega_{}",
            lower.dimension() + 1,
            lower.dimension()
        )));
    }
    Ok(solution)
}

/// `B_n` of `g`. For `n = 0` this is the `0 x dim Omega_0` matrix of the
/// truncated complex.
pub fn build_boundary(g: &Digraph, n: usize, config: &PathConfig) -> Result<RationalMatrix> {
    let upper = omega_basis(g, n, config)?;
    if n == 0 {
        return Ok(RationalMatrix::zeros(0, upper.len()));
    }
    let lower = omega_basis(g, n - 1, config)?;
    boundary_between(&lower, &upper)
}

/// `Omega_0 ..= Omega_top` of one digraph together with `B_0 ..= B_top`.
#[derive(Clone, Debug)]
pub struct BoundaryStack {
    omegas: Vec<OmegaBasis>,
    boundaries: Vec<RationalMatrix>,
}

impl BoundaryStack {
    pub fn build(g: &Digraph, top: usize, config: &PathConfig) -> Result<Self> {
        let mut omegas: Vec<OmegaBasis> = Vec::with_capacity(top + 1);
        let mut boundaries = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let omega = omega_basis(g, n, config)?;
            let b = match omegas.last() {
                None => RationalMatrix::zeros(0, omega.len()),
                Some(lower) => boundary_between(lower, &omega)?,
            };
            omegas.push(omega);
            boundaries.push(b);
        }
        Ok(BoundaryStack { omegas, boundaries })
    }

    pub fn top(&self) -> usize {
        self.omegas.len() - 1
    }

    pub fn omega(&self, n: usize) -> &OmegaBasis {
        &self.omegas[n]
    }

    /// `B_n`, of shape `dim Omega_{n-1} x dim Omega_n`.
    pub fn boundary(&self, n: usize) -> &RationalMatrix {
        &self.boundaries[n]
    }

    /// `L_n`; requires `n < top` so that `B_{n+1}` is available.
    pub fn laplacian(&self, n: usize, zero_tolerance: f64) -> LaplacianReport {
        assert!(n < self.top(), "B_{} was not built", n + 1);
        let down = &self.boundaries[n];
        let up = &self.boundaries[n + 1];
        let exact = combine_laplacian(up, None, down);
        let betti = self.omegas[n].len() - down.rank() - up.rank();
        LaplacianReport::new(n, exact, betti, zero_tolerance)
    }
}

/// `up · P⁻¹ · upᵀ + downᵀ · down`, where `adjoint_up` is `P⁻¹ · upᵀ`;
/// `P = I` when it is absent.
pub(crate) fn combine_laplacian(
    up: &RationalMatrix,
    adjoint_up: Option<&RationalMatrix>,
    down: &RationalMatrix,
) -> RationalMatrix {
    let up_part = match adjoint_up {
        Some(a) => up * a,
        None => up * &up.transpose(),
    };
    let down_part = &down.transpose() * down;
    &up_part + &down_part
}

/// One Laplacian with its exact Betti number and floating-point spectrum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LaplacianReport {
    pub dimension: usize,
    pub omega_dim: usize,
    /// Exact rational Laplacian.
    #[serde(skip)]
    pub exact: RationalMatrix,
    #[serde(skip)]
    pub matrix: SymmetricMatrix,
    /// From exact ranks; authoritative over the eigenvalue zero count.
    pub betti: usize,
    pub spectrum: Spectrum,
}

impl LaplacianReport {
    pub(crate) fn new(
        dimension: usize,
        exact: RationalMatrix,
        betti: usize,
        zero_tolerance: f64,
    ) -> Self {
        let matrix = SymmetricMatrix::from_rows(&exact.to_f64_rows())
            .expect("Laplacians are symmetric by construction");
        let spectrum = symmetric_eigenvalues_with(&matrix, zero_tolerance);
        LaplacianReport {
            dimension,
            omega_dim: exact.rows(),
            exact,
            matrix,
            betti,
            spectrum,
        }
    }

    pub fn fiedler(&self) -> Option<f64> {
        self.spectrum.fiedler
    }

    /// True when the eigenvalue zero count disagrees with the exact Betti
    /// number under the configured tolerance.
    pub fn nullity_mismatch(&self) -> bool {
        self.spectrum.zero_count != self.betti
    }
}

pub fn path_laplacian(g: &Digraph, n: usize, config: &AnalysisConfig) -> Result<LaplacianReport> {
    let stack = BoundaryStack::build(g, n + 1, &config.paths)?;
    Ok(stack.laplacian(n, config.zero_tolerance))
}

/// Reports for every dimension in `dims`, sharing one boundary stack.
pub fn analyze(
    g: &Digraph,
    dims: &[usize],
    config: &AnalysisConfig,
) -> Result<Vec<LaplacianReport>> {
    let Some(&top) = dims.iter().max() else {
        return Ok(Vec::new());
    };
    let stack = BoundaryStack::build(g, top + 1, &config.paths)?;
    Ok(dims
        .iter()
        .map(|&n| stack.laplacian(n, config.zero_tolerance))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> AnalysisConfig {
        AnalysisConfig::default()
    }

    fn close(got: &[f64], want: &[f64]) -> bool {
        got.len() == want.len() && got.iter().zip(want).all(|(g, w)| (g - w).abs() < 1e-9)
    }

    #[test]
    fn full_boundary_of_the_cycle() {
        let g = Digraph::from_edges([(1, 2), (2, 3), (3, 1)]).unwrap();
        let m1 = build_full_boundary(&g, 1, &PathConfig::default()).unwrap();
        assert_eq!(
            m1.matrix,
            RationalMatrix::from_i64_rows(&[[-1, 0, 1], [1, -1, 0], [0, 1, -1]])
        );
    }

    #[test]
    fn full_boundary_keeps_non_allowed_rows() {
        let g = Digraph::from_edges([(1, 2), (1, 3), (2, 3)]).unwrap();
        let m2 = build_full_boundary(&g, 2, &PathConfig::default()).unwrap();
        let labels: Vec<String> = m2.rows.iter().map(|p| p.to_string()).collect();
        assert_eq!(labels, ["12", "13", "23"]);
        assert_eq!(m2.matrix, RationalMatrix::from_i64_rows(&[[1], [-1], [1]]));
        let edgeless = Digraph::new([1, 2], []).unwrap();
        let m = build_full_boundary(&edgeless, 1, &PathConfig::default()).unwrap();
        assert_eq!(m.matrix.shape(), (0, 0));
    }

    #[test]
    fn square_boundary_is_alternating() {
        let g = Digraph::from_edges([(1, 2), (1, 4), (2, 3), (4, 3)]).unwrap();
        let b2 = build_boundary(&g, 2, &PathConfig::default()).unwrap();
        // Canonical basis vector is e123 - e143, the negative of the usual one.
        assert_eq!(b2, RationalMatrix::from_i64_rows(&[[1], [-1], [1], [-1]]));
        let l2 = path_laplacian(&g, 2, &cfg()).unwrap();
        assert_eq!(l2.exact, RationalMatrix::from_i64_rows(&[[4]]));
    }

    #[test]
    fn cycle_has_empty_second_boundary() {
        let g = Digraph::from_edges([(1, 2), (2, 3), (3, 1)]).unwrap();
        assert_eq!(
            build_boundary(&g, 2, &PathConfig::default())
                .unwrap()
                .shape(),
            (3, 0)
        );
        let l1 = path_laplacian(&g, 1, &cfg()).unwrap();
        assert!(close(&l1.spectrum.eigenvalues, &[0.0, 3.0, 3.0]));
        assert_eq!(l1.betti, 1);
        let l2 = path_laplacian(&g, 2, &cfg()).unwrap();
        assert_eq!(l2.omega_dim, 0);
        assert_eq!(l2.betti, 0);
        assert!(l2.spectrum.eigenvalues.is_empty());
        assert_eq!(l2.fiedler(), None);
    }

    #[test]
    fn shortcut_triangle_is_filled() {
        let g = Digraph::from_edges([(1, 2), (1, 3), (2, 3)]).unwrap();
        let reports = analyze(&g, &[0, 1, 2], &cfg()).unwrap();
        assert_eq!(
            reports.iter().map(|r| r.betti).collect::<Vec<_>>(),
            vec![1, 0, 0]
        );
        assert!(close(&reports[1].spectrum.eigenvalues, &[3.0, 3.0, 3.0]));
        assert!(close(&reports[2].spectrum.eigenvalues, &[3.0]));
    }

    #[test]
    fn dimension_zero_boundary_is_empty() {
        let g = Digraph::new([4, 5], []).unwrap();
        assert_eq!(
            build_boundary(&g, 0, &PathConfig::default())
                .unwrap()
                .shape(),
            (0, 2)
        );
        let l0 = path_laplacian(&g, 0, &cfg()).unwrap();
        assert_eq!(l0.betti, 2);
        assert_eq!(l0.spectrum.zero_count, 2);
        assert!(!l0.nullity_mismatch());
    }

    #[test]
    fn empty_digraph_propagates() {
        let reports = analyze(&Digraph::empty(), &[0, 1], &cfg()).unwrap();
        assert!(reports.iter().all(|r| r.omega_dim == 0 && r.betti == 0));
    }
}
