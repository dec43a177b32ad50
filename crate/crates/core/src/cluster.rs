//! Clusters of infinitely near points with virtual multiplicities, their
//! abstract graphs, and the linear conditions that passing through a
//! cluster imposes on plane curves of a given degree.
//!
//! The conditions are built by replaying the blowups symbolically: the
//! curve with unknown coefficients is transformed chart by chart, the
//! virtual transform divides out the exceptional factor to the assigned
//! multiplicity, and every jet coefficient below the multiplicity of the
//! current point becomes one linear condition.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{rat, Exponent, MultiPoly, QMatrix, Rat};
use crate::resolution::{Chart, ResolutionTree};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClusterError {
    #[error("subtree is not closed under parents (point {0} misses its parent)")]
    NotParentClosed(usize),
    #[error("point {0}: proximity targets are inconsistent with the chart frames")]
    InconsistentProximity(usize),
    #[error("point {0}: a free point sits on the strict transform of an older exceptional curve")]
    FreePointOnCorner(usize),
    #[error("cluster point {0} has an out-of-range parent or proximity id")]
    BadId(usize),
}

/// A point of a cluster: combinatorial position in the tree of infinitely
/// near points plus an assigned virtual multiplicity.  Free points carry
/// an optional chart coordinate; satellites are positioned by the charts.
#[derive(Clone, Debug)]
pub struct ClusterPoint {
    pub id: usize,
    pub level: u32,
    pub parent: Option<usize>,
    pub mult: u32,
    pub proximate_to: Vec<usize>,
    pub free: bool,
    pub position: Option<(Chart, Rat)>,
}

/// A cluster with origin at an affine rational point.
#[derive(Clone, Debug)]
pub struct Cluster {
    pub origin: (Rat, Rat),
    pub points: Vec<ClusterPoint>,
}

impl Cluster {
    /// Single ordinary point of multiplicity `m`.
    pub fn ordinary(origin: (Rat, Rat), m: u32) -> Cluster {
        Cluster {
            origin,
            points: vec![ClusterPoint {
                id: 0,
                level: 0,
                parent: None,
                mult: m,
                proximate_to: Vec::new(),
                free: true,
                position: None,
            }],
        }
    }

    /// Sum of `m(m+1)/2` over the cluster points.
    pub fn degree(&self) -> u64 {
        self.points
            .iter()
            .map(|p| (p.mult as u64) * (p.mult as u64 + 1) / 2)
            .sum()
    }

    /// Proximity inequality `m_q >= sum over points proximate to q`;
    /// clusters arising from curves always satisfy it.
    pub fn is_consistent(&self) -> bool {
        self.points.iter().all(|q| {
            let s: u32 = self
                .points
                .iter()
                .filter(|p| p.proximate_to.contains(&q.id))
                .map(|p| p.mult)
                .sum();
            q.mult >= s
        })
    }

    pub fn validate(&self) -> Result<(), ClusterError> {
        for p in &self.points {
            if let Some(parent) = p.parent {
                if parent >= self.points.len() || parent >= p.id {
                    return Err(ClusterError::BadId(p.id));
                }
                if !p.proximate_to.contains(&parent) {
                    return Err(ClusterError::InconsistentProximity(p.id));
                }
            }
            for &t in &p.proximate_to {
                if t >= self.points.len() {
                    return Err(ClusterError::BadId(p.id));
                }
            }
        }
        Ok(())
    }
}

/// Extract the cluster of a parent-closed set of tree points, with the
/// strict-transform multiplicities as virtual multiplicities.
pub fn cluster_from_tree(
    tree: &ResolutionTree,
    subtree: &std::collections::BTreeSet<usize>,
) -> Result<Cluster, ClusterError> {
    for &q in subtree {
        if let Some(p) = tree.node(q).parent {
            if !subtree.contains(&p) {
                return Err(ClusterError::NotParentClosed(q));
            }
        }
    }
    let mut renumber = BTreeMap::new();
    for (new, &old) in subtree.iter().enumerate() {
        renumber.insert(old, new);
    }
    let points = subtree
        .iter()
        .map(|&old| {
            let n = tree.node(old);
            ClusterPoint {
                id: renumber[&old],
                level: n.level,
                parent: n.parent.map(|p| renumber[&p]),
                mult: n.mult,
                proximate_to: n.proximate_to.iter().map(|p| renumber[p]).collect(),
                free: n.free,
                position: n.position.clone(),
            }
        })
        .collect();
    Ok(Cluster {
        origin: tree.base_point.clone(),
        points,
    })
}

/// The essential cluster of a resolved germ.
pub fn essential_cluster(tree: &ResolutionTree) -> Cluster {
    cluster_from_tree(tree, &tree.essential_subtree()).expect("essential tree is parent-closed")
}

// -- linear conditions --------------------------------------------------------

/// Monomials `x^a y^b` with `a + b <= d` in ascending graded-lex order;
/// this fixes the coefficient coordinates used by all condition matrices.
pub fn curve_monomials(d: u32) -> Vec<(u32, u32)> {
    let mut v = Vec::new();
    for deg in 0..=d {
        for a in 0..=deg {
            v.push((a, deg - a));
        }
    }
    v
}

/// Polynomial whose coefficients are linear forms in the unknown curve
/// coefficients.
#[derive(Clone)]
struct LinPoly {
    width: usize,
    terms: BTreeMap<(u32, u32), Vec<Rat>>,
}

impl LinPoly {
    fn add_to(&mut self, key: (u32, u32), vec: &[Rat], scale: &Rat) {
        if scale.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry(key)
            .or_insert_with(|| vec![Rat::zero(); self.width]);
        for (dst, src) in slot.iter_mut().zip(vec) {
            if !src.is_zero() {
                *dst += src.clone() * scale.clone();
            }
        }
    }

    /// Rows for all jet coefficients of total degree below `m`.
    fn jet_rows(&self, m: u32) -> Vec<Vec<Rat>> {
        self.terms
            .iter()
            .filter(|((a, b), _)| a + b < m)
            .map(|(_, v)| v.clone())
            .collect()
    }

    /// Chart `(u, v) -> (u, u(v + c))`, divided by `u^m`, truncated.
    /// Terms of order below `m` are linear combinations of the conditions
    /// already imposed at the current point, so dropping them is sound.
    fn chart_a(&self, c: &Rat, m: u32, trunc: u32) -> LinPoly {
        let mut out = LinPoly {
            width: self.width,
            terms: BTreeMap::new(),
        };
        for (&(a, b), vec) in &self.terms {
            if a + b < m {
                continue;
            }
            let base = a + b - m;
            for j in 0..=b {
                if base + j > trunc {
                    continue;
                }
                let coef = binomial(b, j) * power(c, b - j);
                out.add_to((base, j), vec, &coef);
            }
        }
        out
    }

    /// Chart `(u, v) -> (uv, v)`, divided by `v^m`, truncated.
    fn chart_b(&self, m: u32, trunc: u32) -> LinPoly {
        let mut out = LinPoly {
            width: self.width,
            terms: BTreeMap::new(),
        };
        for (&(a, b), vec) in &self.terms {
            if a + b < m {
                continue;
            }
            if a + (a + b - m) > trunc {
                continue;
            }
            out.add_to((a, a + b - m), vec, &Rat::one());
        }
        out
    }
}

fn binomial(n: u32, k: u32) -> Rat {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rat::from_integer(acc)
}

fn power(c: &Rat, k: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..k {
        acc *= c.clone();
    }
    acc
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Axis {
    U,
    V,
}

/// The matrix of linear conditions on the coefficients of a degree-`d`
/// curve imposed by passing through the cluster with its virtual
/// multiplicities.  Columns follow `curve_monomials(d)`.
pub fn passing_conditions(cluster: &Cluster, d: u32) -> Result<QMatrix, ClusterError> {
    cluster.validate()?;
    let mons = curve_monomials(d);
    let width = mons.len();

    let n = cluster.points.len();
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut root = 0;
    for p in &cluster.points {
        match p.parent {
            Some(q) => children[q].push(p.id),
            None => root = p.id,
        }
    }

    // jet depth needed at each point so that truncation loses nothing
    fn compute_depth(
        q: usize,
        children: &[Vec<usize>],
        points: &[ClusterPoint],
        depth: &mut Vec<u32>,
    ) -> u32 {
        let m = points[q].mult;
        let mut h = m.saturating_sub(1);
        for &c in &children[q] {
            let hc = compute_depth(c, children, points, depth);
            h = h.max(hc + m);
        }
        depth[q] = h;
        h
    }
    let mut depth = vec![0u32; n];
    compute_depth(root, &children, &cluster.points, &mut depth);

    // the generic curve, translated so the cluster origin is at 0
    let mut start = LinPoly {
        width,
        terms: BTreeMap::new(),
    };
    let trunc0 = depth[root];
    for (k, &(i, j)) in mons.iter().enumerate() {
        let mut unit = vec![Rat::zero(); width];
        unit[k] = Rat::one();
        for a in 0..=i {
            for b in 0..=j {
                if a + b > trunc0 {
                    continue;
                }
                let coef = binomial(i, a)
                    * power(&cluster.origin.0, i - a)
                    * binomial(j, b)
                    * power(&cluster.origin.1, j - b);
                start.add_to((a, b), &unit, &coef);
            }
        }
    }

    let mut rows: Vec<Vec<Rat>> = Vec::new();
    // frame: exceptional axes at the current point and their owners
    let mut stack: Vec<(usize, LinPoly, Vec<(Axis, usize)>)> = vec![(root, start, Vec::new())];
    while let Some((q, poly, frame)) = stack.pop() {
        let m = cluster.points[q].mult;
        rows.extend(poly.jet_rows(m));

        let mut taken: Vec<Rat> = Vec::new();
        let mut fresh = 1i64;
        for &cidx in &children[q] {
            let child = &cluster.points[cidx];
            let others: Vec<usize> = child
                .proximate_to
                .iter()
                .copied()
                .filter(|&t| t != q)
                .collect();
            let position: (Chart, Rat) = if let Some(pos) = &child.position {
                pos.clone()
            } else if let Some(&anc) = others.first() {
                // satellite: forced to the corner carrying the ancestor's
                // strict transform
                match frame.iter().find(|&&(_, a)| a == anc) {
                    Some(&(Axis::V, _)) => (Chart::A, rat(0)),
                    Some(&(Axis::U, _)) => (Chart::B, rat(0)),
                    None => return Err(ClusterError::InconsistentProximity(cidx)),
                }
            } else {
                // free point: any direction away from the corners
                let v_corner = frame.iter().any(|&(a, _)| a == Axis::V);
                loop {
                    let c = rat(fresh);
                    fresh += 1;
                    if taken.contains(&c) {
                        continue;
                    }
                    if c.is_zero() && v_corner {
                        continue;
                    }
                    break (Chart::A, c);
                }
            };
            let next_frame: Vec<(Axis, usize)> = match position.0 {
                Chart::A => {
                    let mut f = vec![(Axis::U, q)];
                    if position.1.is_zero() {
                        if let Some(&(_, anc)) = frame.iter().find(|&&(a, _)| a == Axis::V) {
                            f.push((Axis::V, anc));
                        }
                    }
                    f
                }
                Chart::B => {
                    let mut f = vec![(Axis::V, q)];
                    if let Some(&(_, anc)) = frame.iter().find(|&&(a, _)| a == Axis::U) {
                        f.push((Axis::U, anc));
                    }
                    f
                }
            };
            let reachable: Vec<usize> = next_frame.iter().map(|&(_, a)| a).collect();
            for t in &child.proximate_to {
                if !reachable.contains(t) {
                    return Err(ClusterError::InconsistentProximity(cidx));
                }
            }
            if child.free && next_frame.len() > 1 {
                return Err(ClusterError::FreePointOnCorner(cidx));
            }
            if let (Chart::A, c) = (&position.0, &position.1) {
                let _ = c;
                taken.push(position.1.clone());
            }
            let image = match position.0 {
                Chart::A => poly.chart_a(&position.1, m, depth[cidx]),
                Chart::B => poly.chart_b(m, depth[cidx]),
            };
            stack.push((cidx, image, next_frame));
        }
    }

    let mut matrix = QMatrix::new(width);
    for row in rows {
        matrix.push_row(row);
    }
    Ok(matrix)
}

/// Convert a kernel vector of a condition matrix back into a polynomial.
pub fn poly_from_coeffs(d: u32, coeffs: &[Rat]) -> MultiPoly {
    let mons = curve_monomials(d);
    assert_eq!(mons.len(), coeffs.len());
    MultiPoly::from_terms(
        mons.iter()
            .zip(coeffs)
            .map(|(&(a, b), c)| (Exponent([a, b, 0]), c.clone())),
    )
}

// -- cluster graphs -----------------------------------------------------------

/// The abstract cluster graph: an oriented tree with multiplicities,
/// solid edges to parents and dashed edges to more distant proximity
/// targets (encoded by their depth offset along the path to the root).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterGraph {
    pub vertices: Vec<(u32, Option<usize>, Vec<u32>)>,
}

pub fn graph_of(cluster: &Cluster) -> ClusterGraph {
    let level = |i: usize| cluster.points[i].level;
    let vertices = cluster
        .points
        .iter()
        .map(|p| {
            let mut dashed: Vec<u32> = p
                .proximate_to
                .iter()
                .copied()
                .filter(|&t| Some(t) != p.parent)
                .map(|t| p.level - level(t))
                .collect();
            dashed.sort_unstable();
            (p.mult, p.parent, dashed)
        })
        .collect();
    ClusterGraph { vertices }
}

impl ClusterGraph {
    /// Canonical form: children sorted by their own encodings, so equality
    /// of forms is isomorphism of decorated trees.
    pub fn canonical_form(&self) -> String {
        let n = self.vertices.len();
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut root = 0;
        for (i, v) in self.vertices.iter().enumerate() {
            match v.1 {
                Some(p) => children[p].push(i),
                None => root = i,
            }
        }
        fn enc(v: usize, g: &ClusterGraph, children: &[Vec<usize>]) -> String {
            let mut subs: Vec<String> =
                children[v].iter().map(|&c| enc(c, g, children)).collect();
            subs.sort();
            let (m, _, dashed) = &g.vertices[v];
            format!("(m{}:d{:?}:[{}])", m, dashed, subs.join(","))
        }
        enc(root, self, &children)
    }
}

pub fn graphs_isomorphic(a: &ClusterGraph, b: &ClusterGraph) -> bool {
    a.canonical_form() == b.canonical_form()
}

// -- JSON ----------------------------------------------------------------------

impl Cluster {
    /// Accepts the resolution-tree JSON schema, with optional positions;
    /// this is the escape hatch for germs whose resolution leaves the
    /// rationals.
    pub fn from_json(value: &serde_json::Value) -> Result<Cluster, String> {
        let origin = match value.get("base_point") {
            Some(serde_json::Value::Array(xs)) if xs.len() == 2 => {
                let parse = |v: &serde_json::Value| -> Result<Rat, String> {
                    let s = v.as_str().ok_or("base_point entries must be strings")?;
                    parse_rat(s)
                };
                (parse(&xs[0])?, parse(&xs[1])?)
            }
            None => (rat(0), rat(0)),
            _ => return Err("base_point must be a two-element array".into()),
        };
        let nodes = value
            .get("nodes")
            .and_then(|n| n.as_array())
            .ok_or("missing nodes array")?;
        let mut points: Vec<ClusterPoint> = Vec::new();
        for (i, n) in nodes.iter().enumerate() {
            let id = n
                .get("id")
                .and_then(|v| v.as_u64())
                .ok_or_else(|| format!("node {}: missing id", i))? as usize;
            if id != i {
                return Err(format!("node ids must be 0..n in order, found {}", id));
            }
            let parent = n.get("parent").and_then(|v| v.as_u64()).map(|v| v as usize);
            let mult = n
                .get("m")
                .and_then(|v| v.as_u64())
                .ok_or_else(|| format!("node {}: missing m", i))? as u32;
            let proximate_to: Vec<usize> = n
                .get("proximate_to")
                .and_then(|v| v.as_array())
                .map(|xs| {
                    xs.iter()
                        .filter_map(|v| v.as_u64())
                        .map(|v| v as usize)
                        .collect()
                })
                .unwrap_or_else(|| parent.into_iter().collect());
            let position = match n.get("position") {
                Some(serde_json::Value::Object(p)) => {
                    let chart = match p.get("chart").and_then(|v| v.as_str()) {
                        Some("a") | Some("A") => Chart::A,
                        Some("b") | Some("B") => Chart::B,
                        _ => return Err(format!("node {}: bad chart", i)),
                    };
                    let coord = parse_rat(
                        p.get("coord")
                            .and_then(|v| v.as_str())
                            .ok_or_else(|| format!("node {}: missing coord", i))?,
                    )?;
                    Some((chart, coord))
                }
                _ => None,
            };
            let free = n
                .get("free")
                .and_then(|v| v.as_bool())
                .unwrap_or(proximate_to.len() <= 1);
            points.push(ClusterPoint {
                id,
                level: 0,
                parent,
                mult,
                proximate_to,
                free,
                position,
            });
        }
        for i in 0..points.len() {
            if let Some(p) = points[i].parent {
                points[i].level = points[p].level + 1;
            }
        }
        Ok(Cluster { origin, points })
    }
}

pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| format!("bad rational {}", s))?;
        let d: BigInt = d.trim().parse().map_err(|_| format!("bad rational {}", s))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {}", s));
        }
        Ok(Rat::new(n, d))
    } else {
        let n: BigInt = s.parse().map_err(|_| format!("bad rational {}", s))?;
        Ok(Rat::from_integer(n))
    }
}
