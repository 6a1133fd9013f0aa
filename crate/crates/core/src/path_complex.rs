//! Allowed elementary paths, the regular boundary operator and the spaces
//! of boundary-invariant paths `Omega_n`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::digraph::{Digraph, VertexId};
use crate::error::{Error, Result};
use crate::linalg::{Rational, RationalMatrix};

pub const DEFAULT_MAX_PATHS: usize = 1_000_000;

/// Limits applied while enumerating paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathConfig {
    /// Largest number of allowed paths enumerated in any single dimension.
    pub max_paths: usize,
}

impl Default for PathConfig {
    fn default() -> Self {
        PathConfig {
            max_paths: DEFAULT_MAX_PATHS,
        }
    }
}

/// Vertex sequence `i_0 ... i_n`; its dimension is `n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementaryPath(Vec<VertexId>);

impl ElementaryPath {
    pub fn new(vertices: impl Into<Vec<VertexId>>) -> Self {
        let vertices = vertices.into();
        assert!(!vertices.is_empty(), "a path has at least one vertex");
        ElementaryPath(vertices)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len() - 1
    }

    /// Consecutive vertices differ.
    pub fn is_regular(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }

    /// Regular, and every consecutive pair is an edge of `g`.
    pub fn is_allowed_in(&self, g: &Digraph) -> bool {
        self.0.iter().all(|&v| g.contains_vertex(v))
            && self.0.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }

    fn omit(&self, q: usize) -> ElementaryPath {
        let mut v = self.0.clone();
        v.remove(q);
        ElementaryPath(v)
    }
}

impl fmt::Debug for ElementaryPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{self}")
    }
}

impl fmt::Display for ElementaryPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        // Single-digit ids read like the usual e_123 notation.
        if self.0.iter().all(|&v| v < 10) {
            write!(f, "{}", labels.concat())
        } else {
            write!(f, "{}", labels.join("-"))
        }
    }
}

/// Sparse rational combination of elementary paths of one dimension.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathChain {
    terms: BTreeMap<ElementaryPath, Rational>,
}

impl PathChain {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ElementaryPath, Rational)>) -> Self {
        let mut chain = Self::zero();
        for (p, c) in terms {
            chain.add_term(p, c);
        }
        chain
    }

    pub fn add_term(&mut self, path: ElementaryPath, coefficient: Rational) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(path) {
            Entry::Vacant(slot) => {
                slot.insert(coefficient);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coefficient;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &PathChain, scale: &Rational) {
        for (p, c) in &other.terms {
            self.add_term(p.clone(), c * scale);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &ElementaryPath) -> Rational {
        self.terms.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ElementaryPath, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &ElementaryPath> {
        self.terms.keys()
    }

    /// Regular boundary extended linearly.
    pub fn boundary(&self) -> PathChain {
        let mut out = PathChain::zero();
        for (p, c) in &self.terms {
            out.add_scaled(&regular_boundary(p), c);
        }
        out
    }
}

impl fmt::Display for PathChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (p, c)) in self.terms.iter().enumerate() {
            let negative = c < &Rational::zero();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !magnitude.is_one() {
                write!(f, "{magnitude}·")?;
            }
            write!(f, "e{p}")?;
        }
        Ok(())
    }
}

/// `∂ e_{i0..in} = Σ_q (-1)^q e_{i0..î_q..in}` with non-regular terms dropped.
/// The boundary of a vertex is zero (the complex is truncated below degree 0).
pub fn regular_boundary(p: &ElementaryPath) -> PathChain {
    let mut out = PathChain::zero();
    if p.dimension() == 0 {
        return out;
    }
    for q in 0..p.0.len() {
        let face = p.omit(q);
        if face.is_regular() {
            let sign = if q % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            out.add_term(face, sign);
        }
    }
    out
}

/// Lexicographically sorted basis of the allowed `n`-paths `A_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathBasis {
    dimension: usize,
    paths: Vec<ElementaryPath>,
}

impl PathBasis {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn paths(&self) -> &[ElementaryPath] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn index_of(&self, p: &ElementaryPath) -> Option<usize> {
        self.paths.binary_search(p).ok()
    }

    /// Coordinates of `chain` in this basis, or `None` if the chain has
    /// support outside it.
    pub fn coordinates(&self, chain: &PathChain) -> Option<Vec<Rational>> {
        let mut v = vec![Rational::zero(); self.paths.len()];
        for (p, c) in chain.terms() {
            v[self.index_of(p)?] = c.clone();
        }
        Some(v)
    }

    pub fn chain(&self, coordinates: &[Rational]) -> PathChain {
        PathChain::from_terms(self.paths.iter().cloned().zip(coordinates.iter().cloned()))
    }
}

/// Directed walks of edge-length `n`, sorted lexicographically.
pub fn allowed_paths(g: &Digraph, n: usize, config: &PathConfig) -> Result<PathBasis> {
    let cap_error = || Error::PathCap {
        dimension: n,
        limit: config.max_paths,
    };
    let mut layer: Vec<Vec<VertexId>> = g.vertices().map(|v| vec![v]).collect();
    if layer.len() > config.max_paths {
        return Err(cap_error());
    }
    for _ in 0..n {
        let mut next = Vec::new();
        for walk in &layer {
            let last = *walk.last().expect("walks are non-empty");
            for w in g.out_neighbors(last) {
                if next.len() == config.max_paths {
                    return Err(cap_error());
                }
                let mut extended = walk.clone();
                extended.push(w);
                next.push(extended);
            }
        }
        layer = next;
    }
    // Extending sorted walks by sorted out-neighbours keeps lexicographic order.
    Ok(PathBasis {
        dimension: n,
        paths: layer.into_iter().map(ElementaryPath).collect(),
    })
}

/// A basis of `Omega_n`, stored as the columns of the inclusion matrix
/// `O_n` into `A_n` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaBasis {
    ambient: PathBasis,
    inclusion: RationalMatrix,
}

impl OmegaBasis {
    pub(crate) fn from_parts(ambient: PathBasis, inclusion: RationalMatrix) -> Self {
        debug_assert_eq!(ambient.len(), inclusion.rows());
        OmegaBasis { ambient, inclusion }
    }

    pub fn dimension(&self) -> usize {
        self.ambient.dimension
    }

    pub fn ambient(&self) -> &PathBasis {
        &self.ambient
    }

    /// `O_n`: column `k` holds the `A_n` coordinates of basis vector `k`.
    pub fn inclusion(&self) -> &RationalMatrix {
        &self.inclusion
    }

    /// dim Omega_n.
    pub fn len(&self) -> usize {
        self.inclusion.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn vectors(&self) -> Vec<PathChain> {
        self.inclusion
            .columns()
            .iter()
            .map(|c| self.ambient.chain(c))
            .collect()
    }
}

/// Boundary matrix of the allowed `n`-paths restricted to the rows in
/// `rows`, a sorted list of `(n-1)`-paths. Terms outside `rows` are ignored.
pub(crate) fn boundary_matrix(columns: &PathBasis, rows: &[ElementaryPath]) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(rows.len(), columns.len());
    for (j, p) in columns.paths().iter().enumerate() {
        for (face, c) in regular_boundary(p).terms() {
            if let Ok(i) = rows.binary_search(face) {
                m.set(i, j, c.clone());
            }
        }
    }
    m
}

/// Regular `(n-1)`-paths that occur in boundaries of `A_n` but are not
/// allowed in `g`, sorted.
pub(crate) fn non_allowed_faces(g: &Digraph, ambient: &PathBasis) -> Vec<ElementaryPath> {
    let mut faces: Vec<ElementaryPath> = ambient
        .paths()
        .iter()
        .flat_map(|p| regular_boundary(p).support().cloned().collect::<Vec<_>>())
        .filter(|f| !f.is_allowed_in(g))
        .collect();
    faces.sort();
    faces.dedup();
    faces
}

/// Canonical basis of `Omega_n(g)`: the null space of the boundary
/// restricted to non-allowed faces.
pub fn omega_basis(g: &Digraph, n: usize, config: &PathConfig) -> Result<OmegaBasis> {
    let ambient = allowed_paths(g, n, config)?;
    if n == 0 {
        let inclusion = RationalMatrix::identity(ambient.len());
        return Ok(OmegaBasis { ambient, inclusion });
    }
    let faces = non_allowed_faces(g, &ambient);
    let constraints = boundary_matrix(&ambient, &faces);
    let inclusion = constraints.kernel_basis();
    Ok(OmegaBasis { ambient, inclusion })
}
