//! Persistent path Laplacians along a filtration `G_t ⊆ G_s`.
//!
//! The pair space `Omega_n^{t,s}` collects chains of `Omega_n(G_s)` whose
//! boundary already lies in `Omega_{n-1}(G_t)`. Its basis is written in
//! `Omega_n(G_s)` coordinates, which are declared orthonormal, so the Gram
//! matrix `P` of the basis is the identity whenever `t = s`.

use rayon::prelude::*;
use serde::Serialize;

use crate::digraph::{Digraph, WeightedDigraph};
use crate::error::{Error, Result};
use crate::laplacian::{
    boundary_in_basis, combine_laplacian, AnalysisConfig, BoundaryStack, LaplacianReport,
};
use crate::linalg::RationalMatrix;
use crate::path_complex::{boundary_matrix, OmegaBasis, PathConfig};

/// Two nested digraphs of a filtration, `small ⊆ large`, at thresholds `t ≤ s`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiltrationPair {
    t: f64,
    s: f64,
    small: Digraph,
    large: Digraph,
}

impl FiltrationPair {
    pub fn new(t: f64, s: f64, small: Digraph, large: Digraph) -> Result<Self> {
        if t > s {
            return Err(Error::Config(format!(
                "filtration pair needs t <= s, got {t} > {s}"
            )));
        }
        if !small.is_subgraph_of(&large) {
            return Err(Error::Config(
                "filtration pair needs the smaller digraph to be a sub-digraph".into(),
            ));
        }
        Ok(FiltrationPair { t, s, small, large })
    }

    /// `(G^t, G^s)` of a distance filtration.
    pub fn from_weighted(g: &WeightedDigraph, t: f64, s: f64, keep_isolated: bool) -> Result<Self> {
        Self::new(
            t,
            s,
            g.subgraph_at(t, keep_isolated),
            g.subgraph_at(s, keep_isolated),
        )
    }

    /// The diagonal pair `(g, g)`.
    pub fn diagonal(delta: f64, g: Digraph) -> Self {
        FiltrationPair {
            t: delta,
            s: delta,
            small: g.clone(),
            large: g,
        }
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn small(&self) -> &Digraph {
        &self.small
    }

    pub fn large(&self) -> &Digraph {
        &self.large
    }
}

/// Basis of `Omega_n^{t,s}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairBasis {
    /// Columns in `Omega_n(G_s)` coordinates.
    pub coordinates: RationalMatrix,
    /// The same vectors in allowed-path coordinates of `G_s`.
    pub omega: OmegaBasis,
}

impl PairBasis {
    pub fn len(&self) -> usize {
        self.coordinates.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Canonical basis of `{α ∈ Omega_n^s : ∂α ∈ Omega_{n-1}^t}`.
pub fn omega_pair_basis(pair: &FiltrationPair, n: usize, config: &PathConfig) -> Result<PairBasis> {
    let large = BoundaryStack::build(&pair.large, n, config)?;
    Ok(pair_basis_in(&pair.small, &large, n))
}

fn pair_basis_in(small: &Digraph, large: &BoundaryStack, n: usize) -> PairBasis {
    let upper = large.omega(n);
    let coordinates = if n == 0 {
        RationalMatrix::identity(upper.len())
    } else {
        // ∂α always lies in Omega_{n-1}^s, so it lies in Omega_{n-1}^t exactly
        // when it has no weight on (n-1)-paths that are not allowed in G_t.
        let lower_ambient = large.omega(n - 1).ambient();
        let outside: Vec<_> = lower_ambient
            .paths()
            .iter()
            .filter(|p| !p.is_allowed_in(small))
            .cloned()
            .collect();
        let constraints = &boundary_matrix(upper.ambient(), &outside) * upper.inclusion();
        constraints.kernel_basis()
    };
    let inclusion = upper.inclusion() * &coordinates;
    PairBasis {
        coordinates,
        omega: OmegaBasis::from_parts(upper.ambient().clone(), inclusion),
    }
}

/// `L_n^{t,s}` with its exact persistent Betti number.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PersistentReport {
    pub t: f64,
    pub s: f64,
    /// dim Omega_{n+1}^{t,s}.
    pub pair_dim: usize,
    #[serde(flatten)]
    pub laplacian: LaplacianReport,
}

impl PersistentReport {
    pub fn dimension(&self) -> usize {
        self.laplacian.dimension
    }

    pub fn betti(&self) -> usize {
        self.laplacian.betti
    }

    pub fn fiedler(&self) -> Option<f64> {
        self.laplacian.spectrum.fiedler
    }
}

pub fn persistent_laplacian(
    pair: &FiltrationPair,
    n: usize,
    config: &AnalysisConfig,
) -> Result<PersistentReport> {
    persistent_laplacian_in_basis(pair, n, config, None)
}

/// As [`persistent_laplacian`], with the canonical `Omega_{n+1}^{t,s}` basis
/// replaced by `basis · change` when `change` is given. `change` must be
/// square and invertible; the result does not depend on it.
pub fn persistent_laplacian_in_basis(
    pair: &FiltrationPair,
    n: usize,
    config: &AnalysisConfig,
    change: Option<&RationalMatrix>,
) -> Result<PersistentReport> {
    let small = BoundaryStack::build(&pair.small, n + 1, &config.paths)?;
    let large = BoundaryStack::build(&pair.large, n + 1, &config.paths)?;
    report_between(pair, &small, &large, n, config.zero_tolerance, change)
}

fn report_between(
    pair: &FiltrationPair,
    small: &BoundaryStack,
    large: &BoundaryStack,
    n: usize,
    zero_tolerance: f64,
    change: Option<&RationalMatrix>,
) -> Result<PersistentReport> {
    let mut basis = pair_basis_in(&pair.small, large, n + 1).coordinates;
    if let Some(change) = change {
        basis = basis.checked_mul(change)?;
    }
    let upper = large.omega(n + 1);
    let target = small.omega(n);

    // ∂ of each pair-basis vector in allowed n-path coordinates of G_s.
    let large_rows = large.omega(n).ambient();
    let images =
        &(&boundary_matrix(upper.ambient(), large_rows.paths()) * upper.inclusion()) * &basis;
    let mut keep = Vec::with_capacity(target.ambient().len());
    for (i, p) in large_rows.paths().iter().enumerate() {
        match target.ambient().index_of(p) {
            Some(_) => keep.push(i),
            None if (0..images.cols()).any(|j| !num_traits::Zero::is_zero(images.get(i, j))) => {
                return Err(Error::Inconsistent(format!(
                    "pair chain has boundary on {p:?}, outside G_t"
                )));
            }
            None => {}
        }
    }
    let up = boundary_in_basis(target, &images.select_rows(&keep))?;

    // The canonical basis of a diagonal pair is the identity, so P = I.
    let down = small.boundary(n);
    let exact = if change.is_none() && pair.small == pair.large {
        combine_laplacian(&up, None, down)
    } else {
        let gram = &basis.transpose() * &basis;
        let adjoint = gram.solve(&up.transpose()).ok_or_else(|| {
            Error::Inconsistent("Gram matrix of the pair basis is singular".into())
        })?;
        combine_laplacian(&up, Some(&adjoint), down)
    };
    let betti = target.len() - down.rank() - up.rank();
    Ok(PersistentReport {
        t: pair.t,
        s: pair.s,
        pair_dim: basis.cols(),
        laplacian: LaplacianReport::new(n, exact, betti, zero_tolerance),
    })
}

/// Reports at `t = s = delta` for every critical threshold of a filtration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepResult {
    pub thresholds: Vec<f64>,
    pub dims: Vec<usize>,
    pub keep_isolated: bool,
    /// `reports[k]` holds one report per entry of `dims`, at `thresholds[k]`.
    pub reports: Vec<Vec<PersistentReport>>,
}

impl SweepResult {
    /// Index of the last threshold not above `delta` (step-function lookup).
    pub fn step_index(&self, delta: f64) -> Option<usize> {
        self.thresholds.iter().rposition(|&t| t <= delta)
    }

    pub fn at(&self, delta: f64) -> Option<&[PersistentReport]> {
        self.step_index(delta).map(|k| self.reports[k].as_slice())
    }

    pub fn report(&self, delta: f64, n: usize) -> Option<&PersistentReport> {
        let col = self.dims.iter().position(|&d| d == n)?;
        self.at(delta).map(|rs| &rs[col])
    }

    /// Betti curve for dimension `n`, aligned with `thresholds`.
    pub fn betti_curve(&self, n: usize) -> Option<Vec<usize>> {
        let col = self.dims.iter().position(|&d| d == n)?;
        Some(self.reports.iter().map(|rs| rs[col].betti()).collect())
    }

    pub fn fiedler_curve(&self, n: usize) -> Option<Vec<Option<f64>>> {
        let col = self.dims.iter().position(|&d| d == n)?;
        Some(self.reports.iter().map(|rs| rs[col].fiedler()).collect())
    }
}

/// Diagonal persistent Laplacians of `G^delta` at every critical threshold.
pub fn sweep(
    g: &WeightedDigraph,
    dims: &[usize],
    keep_isolated: bool,
    config: &AnalysisConfig,
) -> Result<SweepResult> {
    if dims.is_empty() {
        return Err(Error::Config("sweep needs at least one dimension".into()));
    }
    let thresholds = g.filtration_thresholds();
    let top = dims.iter().max().copied().unwrap_or(0) + 1;
    let reports = thresholds
        .par_iter()
        .map(|&delta| {
            let pair = FiltrationPair::diagonal(delta, g.subgraph_at(delta, keep_isolated));
            let stack = BoundaryStack::build(&pair.large, top, &config.paths)?;
            dims.iter()
                .map(|&n| report_between(&pair, &stack, &stack, n, config.zero_tolerance, None))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        thresholds,
        dims: dims.to_vec(),
        keep_isolated,
        reports,
    })
}
