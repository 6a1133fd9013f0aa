//! Path homology and persistent path Laplacians of simple digraphs.
//!
//! The chain-level work (path spaces, the invariant subspaces `Ω_n`,
//! boundary matrices, Betti numbers) is done in exact rational arithmetic.
//! Only the final symmetric eigenproblems use floating point.
//!
//! ```
//! use pathlap::{analyze, AnalysisConfig, Digraph};
//!
//! let square = Digraph::from_edges([(1, 2), (1, 4), (3, 2), (3, 4)]).unwrap();
//! let reports = analyze(&square, &[0, 1], &AnalysisConfig::default()).unwrap();
//! assert_eq!(reports[1].betti, 1);
//! ```

pub mod digraph;
pub mod error;
pub mod ingest;
pub mod laplacian;
pub mod linalg;
pub mod path_complex;
pub mod persistence;
pub mod reduction;

pub use digraph::{Digraph, Edge, GeometricDigraph, VertexId, WeightedDigraph};
pub use error::{Error, Result};
pub use ingest::{directed_complete_graph, load_edge_list, parse_xyz, PointCloud, PrecedenceTable};
pub use laplacian::{analyze, path_laplacian, AnalysisConfig, BoundaryStack, LaplacianReport};
pub use linalg::{Spectrum, DEFAULT_ZERO_TOLERANCE};
pub use path_complex::{
    allowed_paths, omega_basis, regular_boundary, ElementaryPath, OmegaBasis, PathBasis, PathChain,
    PathConfig, DEFAULT_MAX_PATHS,
};
pub use persistence::{persistent_laplacian, sweep, FiltrationPair, PersistentReport, SweepResult};
pub use reduction::{reduce, ReductionKind, ReductionStep, TransitClause};
