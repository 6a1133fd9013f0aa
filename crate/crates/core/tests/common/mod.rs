//! Fixtures shared by the integration suites.
#![allow(dead_code)]

use std::f64::consts::SQRT_2;

use pathlap::{Digraph, GeometricDigraph, LaplacianReport, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Tolerance for eigenvalues quoted to four decimals.
pub const REFERENCE_TOL: f64 = 1e-3;

pub fn sqrt3() -> f64 {
    3f64.sqrt()
}

pub fn sqrt5() -> f64 {
    5f64.sqrt()
}

pub fn digraph(edges: &[(VertexId, VertexId)]) -> Digraph {
    Digraph::from_edges(edges.iter().copied()).unwrap()
}

/// One dimension of a reference fixture: Betti number and spectrum.
#[derive(Clone, Copy, Debug)]
pub struct Expected {
    pub n: usize,
    pub betti: usize,
    pub spectrum: &'static [f64],
    /// The value our construction produces where the reference spectrum
    /// contradicts the reference matrix it was computed from.
    pub corrected: Option<&'static [f64]>,
}

const fn exp(n: usize, betti: usize, spectrum: &'static [f64]) -> Expected {
    Expected {
        n,
        betti,
        spectrum,
        corrected: None,
    }
}

const fn fixed(
    n: usize,
    betti: usize,
    spectrum: &'static [f64],
    corrected: &'static [f64],
) -> Expected {
    Expected {
        n,
        betti,
        spectrum,
        corrected: Some(corrected),
    }
}

pub struct SmallCase {
    pub name: &'static str,
    pub edges: &'static [(VertexId, VertexId)],
    pub expected: &'static [Expected],
}

pub const SMALL_DIGRAPHS: &[SmallCase] = &[
    SmallCase {
        name: "cycle",
        edges: &[(1, 2), (2, 3), (3, 1)],
        expected: &[
            exp(0, 1, &[0.0, 3.0, 3.0]),
            exp(1, 1, &[0.0, 3.0, 3.0]),
            exp(2, 0, &[]),
        ],
    },
    SmallCase {
        name: "transitive_triangle",
        edges: &[(1, 2), (1, 3), (2, 3)],
        expected: &[
            exp(0, 1, &[0.0, 3.0, 3.0]),
            exp(1, 0, &[3.0, 3.0, 3.0]),
            exp(2, 0, &[3.0]),
        ],
    },
    SmallCase {
        name: "filled_square",
        edges: &[(1, 2), (1, 4), (2, 3), (4, 3)],
        expected: &[
            exp(0, 1, &[0.0, 2.0, 2.0, 4.0]),
            exp(1, 0, &[2.0, 2.0, 4.0, 4.0]),
            exp(2, 0, &[4.0]),
        ],
    },
    SmallCase {
        name: "open_square",
        edges: &[(1, 2), (1, 4), (3, 2), (3, 4)],
        expected: &[
            exp(0, 1, &[0.0, 2.0, 2.0, 4.0]),
            // The reference L1 is 2I plus the adjacency of a 4-cycle.
            fixed(1, 1, &[0.0, 2.0, 4.0, 4.0], &[0.0, 2.0, 2.0, 4.0]),
            exp(2, 0, &[]),
        ],
    },
    SmallCase {
        name: "two_squares",
        edges: &[
            (1, 2),
            (1, 3),
            (2, 4),
            (2, 5),
            (3, 4),
            (3, 5),
            (6, 4),
            (6, 5),
        ],
        expected: &[
            // The reference L0 has trace 16, so its spectrum cannot sum to 15.4384.
            fixed(
                0,
                1,
                &[0.0, 1.4384, 3.0, 3.0, 3.0, 5.0],
                &[0.0, 1.4384, 3.0, 3.0, 3.0, 5.5616],
            ),
            exp(1, 1, &[0.0, 1.4384, 2.0, 3.0, 3.0, 3.0, 5.5616, 6.0]),
            exp(2, 0, &[2.0, 6.0]),
        ],
    },
    SmallCase {
        name: "double_cone",
        edges: &[
            (1, 2),
            (1, 5),
            (2, 3),
            (2, 6),
            (4, 2),
            (4, 5),
            (5, 3),
            (5, 6),
        ],
        expected: &[
            exp(0, 1, &[0.0, 2.0, 2.0, 2.0, 4.0, 6.0]),
            exp(1, 0, &[2.0, 2.0, 2.0, 4.0, 4.0, 4.0, 6.0, 8.0]),
            exp(2, 1, &[0.0, 4.0, 4.0, 8.0]),
        ],
    },
];

pub fn small(name: &str) -> Digraph {
    let case = SMALL_DIGRAPHS.iter().find(|c| c.name == name).unwrap();
    digraph(case.edges)
}

pub const TETRA_EDGES: &[(VertexId, VertexId)] = &[(1, 2), (3, 2), (2, 4), (1, 3), (1, 4), (3, 4)];
pub const PYRAMID_EDGES: &[(VertexId, VertexId)] = &[
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (2, 5),
    (3, 2),
    (3, 4),
    (5, 4),
];

/// `|e12| = |e32| = |e24| = 1`, `|e13| = |e14| = |e34| = √2`.
pub fn tetra1() -> GeometricDigraph {
    GeometricDigraph::new(
        [
            (1, [1.0, 0.0, 0.0]),
            (2, [0.0, 0.0, 0.0]),
            (3, [0.0, 1.0, 0.0]),
            (4, [0.0, 0.0, 1.0]),
        ],
        TETRA_EDGES.iter().copied(),
    )
    .unwrap()
}

/// `|e32| = |e24| = 1`, `|e34| = √2`, `|e12| = √3`, `|e13| = |e14| = 2`.
pub fn tetra2() -> GeometricDigraph {
    GeometricDigraph::new(
        [
            (1, [sqrt3(), 0.0, 0.0]),
            (2, [0.0, 0.0, 0.0]),
            (3, [0.0, 1.0, 0.0]),
            (4, [0.0, 0.0, 1.0]),
        ],
        TETRA_EDGES.iter().copied(),
    )
    .unwrap()
}

fn pyramid(apex_height: f64) -> GeometricDigraph {
    GeometricDigraph::new(
        [
            (1, [0.0, 0.0, apex_height]),
            (2, [1.0, 0.0, 0.0]),
            (3, [0.0, 0.0, 0.0]),
            (4, [0.0, 1.0, 0.0]),
            (5, [1.0, 1.0, 0.0]),
        ],
        PYRAMID_EDGES.iter().copied(),
    )
    .unwrap()
}

/// Unit square base with the apex above vertex 3 at height 1.
pub fn pyramid1() -> GeometricDigraph {
    pyramid(1.0)
}

/// Unit square base with the apex above vertex 3 at height √3.
pub fn pyramid2() -> GeometricDigraph {
    pyramid(sqrt3())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pyramid {
    One,
    Two,
}

impl Pyramid {
    pub fn geometry(self) -> GeometricDigraph {
        match self {
            Pyramid::One => pyramid1(),
            Pyramid::Two => pyramid2(),
        }
    }
}

pub struct PyramidFixture {
    pub name: &'static str,
    pub pyramid: Pyramid,
    pub delta: f64,
    pub keep_isolated: bool,
    pub expected: &'static [Expected],
}

const EMPTY: &[Expected] = &[exp(0, 0, &[]), exp(1, 0, &[]), exp(2, 0, &[])];
const POINTS: &[Expected] = &[exp(0, 5, &[0.0; 5]), exp(1, 0, &[]), exp(2, 0, &[])];
const OPEN_SQUARE: &[Expected] = &[
    exp(0, 1, &[0.0, 0.8299, 2.0, 2.6889, 4.4812]),
    exp(1, 1, &[0.0, 0.8299, 2.0, 2.6889, 4.4812]),
    exp(2, 0, &[]),
];
const HALF_FILLED: &[Expected] = &[
    exp(0, 1, &[0.0, 2.0, 3.0, 4.0, 5.0]),
    exp(1, 1, &[0.0, 2.0, 2.0, 3.0, 4.0, 4.0, 5.0]),
    exp(2, 0, &[2.0, 4.0]),
];
const FULL: &[Expected] = &[
    exp(0, 1, &[0.0, 3.0, 3.0, 5.0, 5.0]),
    exp(1, 0, &[1.0, 3.0, 3.0, 3.0, 3.0, 5.0, 5.0, 5.0]),
    exp(2, 0, &[1.0, 3.0, 3.0, 5.0]),
];
/// Base square of the second pyramid with the apex present but unattached.
/// The reference L0 and L1 are not `B1 B1ᵀ` and `B1ᵀ B1` for the reference
/// `B1`; the Betti numbers are consistent.
const BASE_WITH_APEX: &[Expected] = &[
    fixed(
        0,
        2,
        &[0.0, 0.0, 0.6571, 2.5293, 4.8136],
        &[0.0, 0.0, 2.0, 2.0, 4.0],
    ),
    fixed(1, 1, &[0.0, 0.6571, 2.5293, 4.8136], &[0.0, 2.0, 2.0, 4.0]),
    exp(2, 0, &[]),
];
const BASE: &[Expected] = &[
    exp(0, 1, &[0.0, 2.0, 2.0, 4.0]),
    exp(1, 1, &[0.0, 2.0, 2.0, 4.0]),
    exp(2, 0, &[]),
];

/// Reference values for the pyramid filtrations, named by content. Where two
/// panels share a critical value, one entry covers both.
pub const PYRAMID_FIXTURES: &[PyramidFixture] = &[
    PyramidFixture {
        name: "pyramid1_delta0_isolated",
        pyramid: Pyramid::One,
        delta: 0.0,
        keep_isolated: true,
        expected: POINTS,
    },
    PyramidFixture {
        name: "pyramid1_delta0",
        pyramid: Pyramid::One,
        delta: 0.0,
        keep_isolated: false,
        expected: EMPTY,
    },
    PyramidFixture {
        name: "pyramid1_delta1",
        pyramid: Pyramid::One,
        delta: 1.0,
        keep_isolated: false,
        expected: OPEN_SQUARE,
    },
    PyramidFixture {
        name: "pyramid1_delta_sqrt2",
        pyramid: Pyramid::One,
        delta: SQRT_2,
        keep_isolated: false,
        expected: HALF_FILLED,
    },
    PyramidFixture {
        name: "pyramid1_delta_sqrt3",
        pyramid: Pyramid::One,
        delta: 1.7320508075688772,
        keep_isolated: false,
        expected: FULL,
    },
    PyramidFixture {
        name: "pyramid2_delta0_isolated",
        pyramid: Pyramid::Two,
        delta: 0.0,
        keep_isolated: true,
        expected: POINTS,
    },
    PyramidFixture {
        name: "pyramid2_delta0",
        pyramid: Pyramid::Two,
        delta: 0.0,
        keep_isolated: false,
        expected: EMPTY,
    },
    PyramidFixture {
        name: "pyramid2_delta1_isolated",
        pyramid: Pyramid::Two,
        delta: 1.0,
        keep_isolated: true,
        expected: BASE_WITH_APEX,
    },
    PyramidFixture {
        name: "pyramid2_delta1",
        pyramid: Pyramid::Two,
        delta: 1.0,
        keep_isolated: false,
        expected: BASE,
    },
    PyramidFixture {
        name: "pyramid2_delta_sqrt2_isolated",
        pyramid: Pyramid::Two,
        delta: SQRT_2,
        keep_isolated: true,
        expected: BASE_WITH_APEX,
    },
    PyramidFixture {
        name: "pyramid2_delta_sqrt2",
        pyramid: Pyramid::Two,
        delta: SQRT_2,
        keep_isolated: false,
        expected: BASE,
    },
    PyramidFixture {
        name: "pyramid2_delta_sqrt3",
        pyramid: Pyramid::Two,
        delta: 1.7320508075688772,
        keep_isolated: false,
        expected: OPEN_SQUARE,
    },
    PyramidFixture {
        name: "pyramid2_delta2",
        pyramid: Pyramid::Two,
        delta: 2.0,
        keep_isolated: false,
        expected: HALF_FILLED,
    },
    PyramidFixture {
        name: "pyramid2_delta_sqrt5",
        pyramid: Pyramid::Two,
        delta: 2.23606797749979,
        keep_isolated: false,
        expected: FULL,
    },
];

/// Slack for looking a threshold up in a step function: the computed edge
/// lengths may differ from the nominal values in the last bit.
pub const DELTA_SLACK: f64 = 1e-9;

pub fn spectra_close(got: &[f64], want: &[f64], tol: f64) -> bool {
    got.len() == want.len() && got.iter().zip(want).all(|(g, w)| (g - w).abs() <= tol)
}

/// Outcome of comparing one report against one reference entry.
#[derive(Debug, PartialEq, Eq)]
pub enum Comparison {
    Match,
    /// Matches the corrected value and differs from the reference one.
    Corrected,
    Mismatch(String),
}

pub fn compare(label: &str, betti: usize, eigenvalues: &[f64], expected: &Expected) -> Comparison {
    if betti != expected.betti {
        return Comparison::Mismatch(format!(
            "{label} n={}: betti {betti}, expected {}",
            expected.n, expected.betti
        ));
    }
    if spectra_close(eigenvalues, expected.spectrum, REFERENCE_TOL) {
        return Comparison::Match;
    }
    match expected.corrected {
        Some(c) if spectra_close(eigenvalues, c, REFERENCE_TOL) => Comparison::Corrected,
        _ => Comparison::Mismatch(format!(
            "{label} n={}: spectrum {eigenvalues:?}, expected {:?}",
            expected.n, expected.spectrum
        )),
    }
}

pub fn compare_report(label: &str, report: &LaplacianReport, expected: &Expected) -> Comparison {
    compare(label, report.betti, &report.spectrum.eigenvalues, expected)
}

/// Erdős–Rényi digraph on `0..n`: each ordered pair independently with
/// probability `p`. Both directions of a pair may appear.
pub fn random_digraph(rng: &mut ChaCha8Rng, n: u32, p: f64) -> Digraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Digraph::new(0..n, edges).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A synthetic fragment of two fused five-membered rings per unit, twelve
/// atoms in total, with C-N, C-O and C-H bonds near their usual lengths.
pub const FRAGMENT_XYZ: &str = "12
two glycoluril-like half units
C   0.000  0.000  0.000
C   1.550  0.000  0.000
N  -0.450  1.300  0.200
N   2.000  1.300  0.200
C   0.775  2.100  0.350
O   0.775  3.310  0.450
N  -0.450 -1.300  0.200
N   2.000 -1.300  0.200
C   0.775 -2.100  0.350
O   0.775 -3.310  0.450
H  -0.350  0.000 -1.020
H   1.900  0.000 -1.020
";
