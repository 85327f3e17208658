//! Points in the plane, the intra-cluster distance cost, partitions compared
//! up to relabeling, and an exhaustive oracle for small instances.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::DiagonalHamiltonian;
use crate::qutrit::BasisIndex;

/// Largest instance `oracle_min` will enumerate.
pub const ORACLE_MAX_POINTS: usize = 12;

/// Relative slack used when collecting ties at the minimum.
const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

pub fn distance(p: &Point, q: &Point) -> f64 {
    (p.x - q.x).hypot(p.y - q.y)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    points: Vec<Point>,
    labels: Option<Vec<String>>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::param("points", "at least two points are required"));
        }
        if let Some(p) = points.iter().find(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return Err(Error::param(
                "points",
                format!("non-finite coordinate in {p}"),
            ));
        }
        Ok(PointSet {
            points,
            labels: None,
        })
    }

    pub fn from_coords(coords: &[(f64, f64)]) -> Result<Self> {
        Self::new(coords.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.points.len() {
            return Err(Error::LengthMismatch {
                expected: self.points.len(),
                actual: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn get(&self, i: usize) -> Point {
        self.points[i]
    }

    /// Display label of point `i`, falling back to its coordinates.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => self.points[i].to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Index of the point with exactly these coordinates, if any.
    pub fn position(&self, x: f64, y: f64) -> Option<usize> {
        self.points.iter().position(|p| p.x == x && p.y == y)
    }
}

/// Symmetric matrix of pairwise Euclidean distances.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<f64>,
}

impl DistanceMatrix {
    pub fn n_points(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }

    pub fn max(&self) -> f64 {
        self.d.iter().copied().fold(0.0, f64::max)
    }

    /// `T = Σ_{i<j} d[i][j]`.
    pub fn total_pair_sum(&self) -> f64 {
        let mut t = 0.0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                t += self.get(i, j);
            }
        }
        t
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.d[i * self.n..(i + 1) * self.n]
    }
}

pub fn distance_matrix(ps: &PointSet) -> DistanceMatrix {
    let n = ps.len();
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let r = distance(&ps.points[i], &ps.points[j]);
            d[i * n + j] = r;
            d[j * n + i] = r;
        }
    }
    DistanceMatrix { n, d }
}

/// Assignment of points to cluster labels in `[0, k)`.
///
/// Equality, ordering and hashing look only at the induced set partition, so
/// `[0, 0, 1]` and `[2, 2, 0]` compare equal.
#[derive(Debug, Clone)]
pub struct Partition {
    labels: Vec<usize>,
    k: usize,
}

impl Partition {
    pub fn new(labels: Vec<usize>, k: usize) -> Result<Self> {
        if let Some(&bad) = labels.iter().find(|&&l| l >= k) {
            return Err(Error::param(
                "labels",
                format!("label {bad} is outside [0, {k})"),
            ));
        }
        Ok(Partition { labels, k })
    }

    /// Builds a partition from explicit blocks of point indices.
    pub fn from_blocks(n_points: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n_points];
        for (b, block) in blocks.iter().enumerate() {
            for &i in block {
                if i >= n_points || labels[i] != usize::MAX {
                    return Err(Error::param(
                        "blocks",
                        format!("point {i} is out of range or listed twice"),
                    ));
                }
                labels[i] = b;
            }
        }
        if labels.contains(&usize::MAX) {
            return Err(Error::param("blocks", "blocks do not cover every point"));
        }
        Self::new(labels, blocks.len().max(1))
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n_points(&self) -> usize {
        self.labels.len()
    }

    /// Labels renumbered by first appearance.
    pub fn canonical(&self) -> Vec<usize> {
        let mut map = vec![usize::MAX; self.k];
        let mut next = 0;
        self.labels
            .iter()
            .map(|&l| {
                if map[l] == usize::MAX {
                    map[l] = next;
                    next += 1;
                }
                map[l]
            })
            .collect()
    }

    /// Non-empty clusters, ordered by their smallest member.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let canon = self.canonical();
        let count = canon.iter().copied().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); count];
        for (i, &c) in canon.iter().enumerate() {
            blocks[c].push(i);
        }
        blocks
    }

    pub fn n_clusters(&self) -> usize {
        self.blocks().len()
    }

    /// Clusters as sets of coordinates, for comparison against literal lists.
    pub fn coordinate_blocks(&self, ps: &PointSet) -> BTreeSet<BTreeSet<(i64, i64)>> {
        self.blocks()
            .into_iter()
            .map(|b| {
                b.into_iter()
                    .map(|i| {
                        let p = ps.get(i);
                        ((p.x * 1e6).round() as i64, (p.y * 1e6).round() as i64)
                    })
                    .collect()
            })
            .collect()
    }
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        self.labels.len() == other.labels.len() && self.canonical() == other.canonical()
    }
}

impl Eq for Partition {}

impl Hash for Partition {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical().hash(state);
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.canonical().cmp(&other.canonical())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (b, block) in self.blocks().iter().enumerate() {
            if b > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (i, p) in block.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

/// Sum of distances over unordered same-cluster pairs.
pub fn cost(dm: &DistanceMatrix, p: &Partition) -> f64 {
    assert_eq!(
        dm.n_points(),
        p.n_points(),
        "partition does not cover the instance"
    );
    let mut w = 0.0;
    for i in 0..dm.n {
        for j in i + 1..dm.n {
            if p.labels[i] == p.labels[j] {
                w += dm.get(i, j);
            }
        }
    }
    w
}

/// Odometer over all `k^(free points)` labelings that honor the fixed labels.
#[derive(Debug, Clone)]
pub struct Assignments {
    labels: Vec<usize>,
    free: Vec<usize>,
    k: usize,
    done: bool,
}

impl Iterator for Assignments {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let out = Partition {
            labels: self.labels.clone(),
            k: self.k,
        };
        // advance, last free point fastest
        let mut carry = true;
        for &i in self.free.iter().rev() {
            self.labels[i] += 1;
            if self.labels[i] < self.k {
                carry = false;
                break;
            }
            self.labels[i] = 0;
        }
        if carry {
            self.done = true;
        }
        Some(out)
    }
}

pub fn enumerate_assignments(
    n_points: usize,
    k: usize,
    fixed: &BTreeMap<usize, usize>,
) -> Result<Assignments> {
    if k == 0 {
        return Err(Error::param("k", "at least one cluster is required"));
    }
    for (&i, &l) in fixed {
        if i >= n_points {
            return Err(Error::param("fixed", format!("point {i} is out of range")));
        }
        if l >= k {
            return Err(Error::param(
                "fixed",
                format!("label {l} is outside [0, {k})"),
            ));
        }
    }
    let mut labels = vec![0; n_points];
    for (&i, &l) in fixed {
        labels[i] = l;
    }
    let free = (0..n_points).filter(|i| !fixed.contains_key(i)).collect();
    Ok(Assignments {
        labels,
        free,
        k,
        done: false,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub min_cost: f64,
    /// Deduplicated up to label permutation, sorted.
    pub argmin_partitions: Vec<Partition>,
    /// Populated by [`oracle_diag_min`].
    pub argmin_basis_states: Vec<BasisIndex>,
}

impl OracleResult {
    pub fn contains(&self, p: &Partition) -> bool {
        self.argmin_partitions.iter().any(|q| q == p)
    }
}

fn is_tie(value: f64, best: f64) -> bool {
    best.is_finite() && (value - best).abs() <= TIE_TOLERANCE * best.abs().max(1.0)
}

/// Exact minimum of [`cost`] over every labeling honoring `fixed`.
pub fn oracle_min(
    dm: &DistanceMatrix,
    k: usize,
    fixed: &BTreeMap<usize, usize>,
) -> Result<OracleResult> {
    if dm.n_points() > ORACLE_MAX_POINTS {
        return Err(Error::TooLarge {
            what: "oracle instance",
            size: dm.n_points(),
            limit: ORACLE_MAX_POINTS,
        });
    }
    let mut best = f64::INFINITY;
    let mut argmin: BTreeSet<Partition> = BTreeSet::new();
    for p in enumerate_assignments(dm.n_points(), k, fixed)? {
        let w = cost(dm, &p);
        if w < best && !is_tie(w, best) {
            best = w;
            argmin.clear();
            argmin.insert(p);
        } else if is_tie(w, best) {
            argmin.insert(p);
        }
    }
    Ok(OracleResult {
        min_cost: best,
        argmin_partitions: argmin.into_iter().collect(),
        argmin_basis_states: Vec::new(),
    })
}

/// Minimum entry of a diagonal Hamiltonian and every basis state attaining it.
pub fn oracle_diag_min(h: &DiagonalHamiltonian) -> OracleResult {
    let best = h.diag.iter().copied().fold(f64::INFINITY, f64::min);
    let argmin_basis_states = h
        .diag
        .iter()
        .enumerate()
        .filter(|(_, &v)| is_tie(v, best))
        .map(|(i, _)| BasisIndex::from_linear(h.n, i).expect("index within register"))
        .collect();
    OracleResult {
        min_cost: best,
        argmin_partitions: Vec::new(),
        argmin_basis_states,
    }
}
