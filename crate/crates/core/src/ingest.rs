//! Text formats: XYZ point clouds, precedence tables and edge lists.

use std::collections::{BTreeMap, BTreeSet};

use crate::digraph::{euclidean, Edge, VertexId, WeightedDigraph};
use crate::error::{Error, Result};

/// Weight given to edge-list lines that omit one.
pub const DEFAULT_EDGE_WEIGHT: f64 = 1.0;

#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    pub label: String,
    pub position: [f64; 3],
}

/// Labelled points in the order they were read. Point `i` becomes vertex `i`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PointCloud {
    pub comment: String,
    pub points: Vec<Point>,
}

impl PointCloud {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of points per label.
    pub fn label_counts(&self) -> BTreeMap<&str, usize> {
        let mut counts = BTreeMap::new();
        for p in &self.points {
            *counts.entry(p.label.as_str()).or_insert(0) += 1;
        }
        counts
    }

    /// Smallest distance between two distinct points.
    pub fn min_distance(&self) -> Option<f64> {
        let mut best: Option<f64> = None;
        for (i, a) in self.points.iter().enumerate() {
            for b in &self.points[i + 1..] {
                let d = euclidean(&a.position, &b.position);
                best = Some(best.map_or(d, |x| x.min(d)));
            }
        }
        best
    }
}

/// Parses the XYZ layout: an atom count, a free-form comment line, then one
/// `label x y z` row per atom. Blank lines after the last row are ignored.
pub fn parse_xyz(text: &str) -> Result<PointCloud> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing atom count"))?;
    let count: usize = header
        .trim()
        .parse()
        .map_err(|_| Error::parse(1, format!("invalid atom count {:?}", header.trim())))?;
    let comment = match lines.next() {
        Some((_, c)) => c.to_string(),
        None if count == 0 => String::new(),
        None => return Err(Error::parse(2, "missing comment line")),
    };

    let mut points = Vec::with_capacity(count);
    for (number, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        if points.len() == count {
            return Err(Error::parse(
                number,
                format!("more rows than the declared {count} atoms"),
            ));
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(Error::parse(
                number,
                format!("expected `label x y z`, found {} fields", fields.len()),
            ));
        }
        let mut position = [0.0; 3];
        for (slot, field) in position.iter_mut().zip(&fields[1..]) {
            *slot = field
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Error::parse(number, format!("invalid coordinate {field:?}")))?;
        }
        points.push(Point {
            label: fields[0].to_string(),
            position,
        });
    }
    if points.len() != count {
        return Err(Error::parse(
            text.lines().count().max(1),
            format!("header declares {count} atoms, found {}", points.len()),
        ));
    }
    Ok(PointCloud { comment, points })
}

/// Scores that decide edge direction: edges point from lower to higher score.
#[derive(Clone, Debug, PartialEq)]
pub struct PrecedenceTable {
    scores: BTreeMap<String, f64>,
}

impl Default for PrecedenceTable {
    /// Pauling electronegativities of H, C, N and O.
    fn default() -> Self {
        PrecedenceTable::new([("H", 2.20), ("C", 2.55), ("N", 3.04), ("O", 3.44)])
    }
}

impl PrecedenceTable {
    pub fn new<S: Into<String>>(scores: impl IntoIterator<Item = (S, f64)>) -> Self {
        PrecedenceTable {
            scores: scores.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        }
    }

    /// Reads `LABEL score` or `LABEL=score` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut scores = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let number = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (label, value) = match line.split_once('=') {
                Some((l, v)) => (l.trim(), v.trim()),
                None => {
                    let mut parts = line.split_whitespace();
                    match (parts.next(), parts.next(), parts.next()) {
                        (Some(l), Some(v), None) => (l, v),
                        _ => return Err(Error::parse(number, "expected `LABEL score`")),
                    }
                }
            };
            if label.is_empty() || label.contains(char::is_whitespace) {
                return Err(Error::parse(number, format!("invalid label {label:?}")));
            }
            let score = value
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Error::parse(number, format!("invalid score {value:?}")))?;
            if scores.insert(label.to_string(), score).is_some() {
                return Err(Error::parse(number, format!("label {label} listed twice")));
            }
        }
        Ok(PrecedenceTable { scores })
    }

    /// Entries of `other` replace or extend this table.
    pub fn merged(mut self, other: &PrecedenceTable) -> Self {
        for (k, &v) in &other.scores {
            self.scores.insert(k.clone(), v);
        }
        self
    }

    pub fn score(&self, label: &str) -> Option<f64> {
        self.scores.get(label).copied()
    }
}

/// Joins every pair of points at distance `<= cutoff` by one edge, directed
/// from the lower to the higher score, weighted by the distance. Equal
/// scores point from the lower to the higher point index.
pub fn directed_complete_graph(
    cloud: &PointCloud,
    table: &PrecedenceTable,
    cutoff: f64,
) -> Result<WeightedDigraph> {
    if cutoff.is_nan() || cutoff <= 0.0 || cutoff.is_infinite() {
        return Err(Error::Config(format!(
            "cutoff must be positive, got {cutoff}"
        )));
    }
    if cloud.points.len() > VertexId::MAX as usize {
        return Err(Error::Config("too many points".into()));
    }
    let scores = cloud
        .points
        .iter()
        .map(|p| {
            table.score(&p.label).ok_or_else(|| {
                Error::Config(format!("no precedence score for label {:?}", p.label))
            })
        })
        .collect::<Result<Vec<f64>>>()?;

    let mut edges: Vec<(Edge, f64)> = Vec::new();
    for i in 0..cloud.points.len() {
        for j in i + 1..cloud.points.len() {
            let d = euclidean(&cloud.points[i].position, &cloud.points[j].position);
            if d > cutoff {
                continue;
            }
            let (u, v) = (i as VertexId, j as VertexId);
            let edge = if scores[j] < scores[i] {
                (v, u)
            } else {
                (u, v)
            };
            edges.push((edge, d));
        }
    }
    WeightedDigraph::new(0..cloud.points.len() as VertexId, edges)
}

/// Reads the edge-list format: `u v [w]` per edge, a lone `u` to declare a
/// vertex, `#` for comments. A missing weight defaults to
/// [`DEFAULT_EDGE_WEIGHT`].
pub fn load_edge_list(text: &str) -> Result<WeightedDigraph> {
    let mut vertices = BTreeSet::new();
    let mut edges: BTreeMap<Edge, f64> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let vertex = |s: &str| {
            s.parse::<VertexId>()
                .map_err(|_| Error::parse(number, format!("invalid vertex id {s:?}")))
        };
        match fields.as_slice() {
            [u] => {
                vertices.insert(vertex(u)?);
            }
            [u, v, rest @ ..] if rest.len() <= 1 => {
                let (u, v) = (vertex(u)?, vertex(v)?);
                if u == v {
                    return Err(Error::parse(number, format!("self-loop on vertex {u}")));
                }
                let w = match rest.first() {
                    None => DEFAULT_EDGE_WEIGHT,
                    Some(s) => s
                        .parse::<f64>()
                        .ok()
                        .filter(|w| w.is_finite() && *w >= 0.0)
                        .ok_or_else(|| Error::parse(number, format!("invalid weight {s:?}")))?,
                };
                if edges.insert((u, v), w).is_some() {
                    return Err(Error::parse(number, format!("duplicate edge {u} {v}")));
                }
                vertices.insert(u);
                vertices.insert(v);
            }
            _ => {
                return Err(Error::parse(
                    number,
                    format!("expected `u v [w]` or `u`, found {} fields", fields.len()),
                ))
            }
        }
    }
    WeightedDigraph::new(vertices, edges)
}
