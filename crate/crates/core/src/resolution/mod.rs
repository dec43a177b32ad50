//! Embedded resolution of a plane curve germ by point blowups over the
//! rationals.
//!
//! The tree of infinitely near points is grown until every remaining
//! point is a node of the union of the strict transform with the reduced
//! exceptional divisor.  Each blowup is realized in the two affine charts
//! `(u, v) -> (u, u(v + c))` and `(u, v) -> (uv, v)`; the points on the
//! exceptional line are located by exact rational root extraction of the
//! tangent cone.  A germ whose tangent cone at some step has no rational
//! splitting aborts with `IrrationalBranchPoint` so the caller can supply
//! cluster combinatorics instead.

mod roots;

pub use roots::{rational_roots, RootError, RootSplit};

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{bivariate_gcd, rat, Exponent, MultiPoly, Rat, Var};
use crate::local::{self, LocalError};

#[derive(Debug, Error)]
pub enum ResolveError {
    #[error("tangent-cone factorization needs an irrational root of {poly}")]
    IrrationalBranchPoint { poly: MultiPoly },
    #[error("curve is not reduced (repeated component detected)")]
    NotReduced,
    #[error("the point does not lie on the curve")]
    PointNotOnCurve,
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Local(#[from] LocalError),
}

/// Which blowup chart located a point on the exceptional line.
/// `A` carries the finite directions `v = c·u`, `B` the vertical one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Chart {
    A,
    B,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChartPosition {
    pub chart: Chart,
    pub coord: String,
}

/// A vertex of the resolution tree.
#[derive(Clone, Debug)]
pub struct TreeNode {
    pub id: usize,
    pub level: u32,
    pub parent: Option<usize>,
    /// Multiplicity of the strict transform of the curve at this point.
    pub mult: u32,
    /// Multiplicity of the total transform (Enriques total).
    pub mult_total: u64,
    /// Ancestors this point is proximate to (always contains the parent).
    pub proximate_to: Vec<usize>,
    pub free: bool,
    pub essential: bool,
    /// Direction from the parent: chart and translation constant.
    pub position: Option<(Chart, Rat)>,
    /// Multiplicity of this direction in the parent's tangent cone.
    pub edge_weight: u32,
}

/// One local branch: the chain of infinitely near points it runs through
/// and its own strict-transform multiplicity at each of them.
#[derive(Clone, Debug)]
pub struct Branch {
    pub path: Vec<usize>,
    pub mults: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct ResolutionTree {
    pub germ: MultiPoly,
    pub base_point: (Rat, Rat),
    pub nodes: Vec<TreeNode>,
    pub branches: Vec<Branch>,
}

/// Per-singular-point invariant record.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SingularityRecord {
    pub label: Option<String>,
    pub multiplicity: u32,
    pub branches: usize,
    pub delta: u64,
    pub mu: u64,
    pub tau: u64,
    pub tau_es: Option<u64>,
    pub nu_s: u64,
    pub deg_xs: u64,
}

struct Site {
    node: usize,
    strict: MultiPoly,
    /// exceptional axes through the point: (is the u-axis?, ancestor id)
    exc: Vec<(Axis, usize)>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Axis {
    U,
    V,
}

/// Resolve the germ of `f` at `point`.
pub fn resolve(f: &MultiPoly, point: &(Rat, Rat)) -> Result<ResolutionTree, ResolveError> {
    if f.is_zero() {
        return Err(ResolveError::NotReduced);
    }
    if !is_squarefree(f) {
        return Err(ResolveError::NotReduced);
    }
    let f0 = f.translate(point).primitive_normalized();
    if !f0.coeff(&Exponent([0, 0, 0])).is_zero() {
        return Err(ResolveError::PointNotOnCurve);
    }

    let mut nodes: Vec<TreeNode> = Vec::new();
    let mut leaves: Vec<usize> = Vec::new();
    let root_mult = f0.order();
    nodes.push(TreeNode {
        id: 0,
        level: 0,
        parent: None,
        mult: root_mult,
        mult_total: root_mult as u64,
        proximate_to: Vec::new(),
        free: true,
        essential: true,
        position: None,
        edge_weight: 0,
    });
    let mut queue = vec![Site {
        node: 0,
        strict: f0,
        exc: Vec::new(),
    }];

    while let Some(site) = queue.pop() {
        let m = site.strict.order();
        debug_assert_eq!(m, nodes[site.node].mult);
        let level = nodes[site.node].level;
        if level > 128 || nodes.len() > 20_000 {
            return Err(ResolveError::Internal(
                "resolution did not terminate within the blowup budget".into(),
            ));
        }

        // termination: a node of strict transform plus reduced exceptional
        let nodal = if level == 0 {
            m == 1
        } else {
            m == 1 && site.exc.len() == 1 && {
                let linear = site.strict.degree_part(1);
                match site.exc[0].0 {
                    // transverse to {u=0} iff the tangent has a v part
                    Axis::U => !linear.coeff(&Exponent([0, 1, 0])).is_zero(),
                    Axis::V => !linear.coeff(&Exponent([1, 0, 0])).is_zero(),
                }
            }
        };
        if nodal {
            if level > 0 {
                nodes[site.node].essential = false;
            }
            leaves.push(site.node);
            continue;
        }

        // blow up: children are the tangent directions of the strict transform
        let tc = site.strict.lowest_form();
        let mu_inf = tc.var_valuation(Var::X);
        let finite = tc.div_var_power(Var::X, 0).eval_var(Var::X, &rat(1));
        // tc(1, v): roots are the finite directions v = c
        let split = rational_roots(&finite, Var::Y)?;
        let covered: u32 = split.roots.iter().map(|(_, m)| m).sum::<u32>() + mu_inf;
        if covered < m {
            return Err(ResolveError::IrrationalBranchPoint {
                poly: split.leftover,
            });
        }

        let spawn = |chart: Chart,
                         coord: Rat,
                         weight: u32,
                         strict: MultiPoly,
                         exc: Vec<(Axis, usize)>,
                         nodes: &mut Vec<TreeNode>,
                         queue: &mut Vec<Site>| {
            let id = nodes.len();
            let prox: Vec<usize> = exc.iter().map(|&(_, a)| a).collect();
            let mult = strict.order();
            let mhat = mult as u64
                + prox
                    .iter()
                    .map(|&p| nodes[p].mult_total)
                    .sum::<u64>();
            nodes.push(TreeNode {
                id,
                level: level + 1,
                parent: Some(site.node),
                mult,
                mult_total: mhat,
                proximate_to: prox.clone(),
                free: prox.len() <= 1,
                essential: true,
                position: Some((chart, coord)),
                edge_weight: weight,
            });
            queue.push(Site {
                node: id,
                strict,
                exc,
            });
        };

        for (c, w) in &split.roots {
            // chart A: (u, v) -> (u, u(v + c)); new exceptional is {u = 0}
            let image = site
                .strict
                .substitute(&[(
                    Var::Y,
                    MultiPoly::var(Var::X)
                        .mul(&MultiPoly::var(Var::Y).add(&MultiPoly::constant(c.clone()))),
                )])
                .div_var_power(Var::X, m)
                .primitive_normalized();
            let mut exc = vec![(Axis::U, site.node)];
            if c.clone() == rat(0) {
                // the strict transform of the old {v = 0} axis stays here
                if let Some(&(_, anc)) = site.exc.iter().find(|(a, _)| *a == Axis::V) {
                    exc.push((Axis::V, anc));
                }
            }
            spawn(Chart::A, c.clone(), *w, image, exc, &mut nodes, &mut queue);
        }
        if mu_inf > 0 {
            // chart B: (u, v) -> (uv, v); new exceptional is {v = 0}
            let image = site
                .strict
                .substitute(&[(
                    Var::X,
                    MultiPoly::var(Var::X).mul(&MultiPoly::var(Var::Y)),
                )])
                .div_var_power(Var::Y, m)
                .primitive_normalized();
            let mut exc = vec![(Axis::V, site.node)];
            if let Some(&(_, anc)) = site.exc.iter().find(|(a, _)| *a == Axis::U) {
                exc.push((Axis::U, anc));
            }
            spawn(Chart::B, rat(0), mu_inf, image, exc, &mut nodes, &mut queue);
        }
    }

    leaves.sort_unstable();
    let branches = branch_decomposition(&nodes, &leaves);

    // consistency: strict multiplicities decompose over the branches
    for node in &nodes {
        let total: u32 = branches
            .iter()
            .filter_map(|b| {
                b.path
                    .iter()
                    .position(|&q| q == node.id)
                    .map(|i| b.mults[i])
            })
            .sum();
        if total != node.mult {
            return Err(ResolveError::Internal(format!(
                "branch multiplicities at point {} sum to {} instead of {}",
                node.id, total, node.mult
            )));
        }
    }

    Ok(ResolutionTree {
        germ: f.clone(),
        base_point: point.clone(),
        nodes,
        branches,
    })
}

fn is_squarefree(f: &MultiPoly) -> bool {
    let g1 = bivariate_gcd(f, &f.derivative(Var::X));
    let g = bivariate_gcd(&g1, &f.derivative(Var::Y));
    g.is_constant()
}

/// Per-branch multiplicities from the proximity equality; the strict
/// transform of a branch is smooth past its leaf, so the leaf seeds the
/// recursion with multiplicity one.
fn branch_decomposition(nodes: &[TreeNode], leaves: &[usize]) -> Vec<Branch> {
    leaves
        .iter()
        .map(|&leaf| {
            let mut path = vec![leaf];
            let mut cur = leaf;
            while let Some(p) = nodes[cur].parent {
                path.push(p);
                cur = p;
            }
            path.reverse();
            let on_path: BTreeSet<usize> = path.iter().copied().collect();
            let mut mults = vec![0u32; path.len()];
            for i in (0..path.len()).rev() {
                if path[i] == leaf {
                    mults[i] = 1;
                    continue;
                }
                let q = path[i];
                let m: u32 = path
                    .iter()
                    .enumerate()
                    .skip(i + 1)
                    .filter(|(_, &p)| on_path.contains(&p) && nodes[p].proximate_to.contains(&q))
                    .map(|(j, _)| mults[j])
                    .sum();
                mults[i] = m.max(1);
            }
            Branch { path, mults }
        })
        .collect()
}

impl ResolutionTree {
    /// Ids of the essential points (the base point always included).
    pub fn essential_subtree(&self) -> BTreeSet<usize> {
        self.nodes
            .iter()
            .filter(|n| n.essential)
            .map(|n| n.id)
            .collect()
    }

    pub fn node(&self, id: usize) -> &TreeNode {
        &self.nodes[id]
    }

    /// delta invariant: sum of m(m-1)/2 over all infinitely near points.
    pub fn delta(&self) -> u64 {
        self.nodes
            .iter()
            .map(|n| (n.mult as u64) * (n.mult as u64 - 1) / 2)
            .sum()
    }

    /// Pairwise intersection multiplicities of the branches via shared
    /// infinitely near points.
    pub fn branch_intersections(&self) -> Vec<Vec<u64>> {
        let r = self.branches.len();
        let mut table = vec![vec![0u64; r]; r];
        for i in 0..r {
            for j in (i + 1)..r {
                let bi = &self.branches[i];
                let bj = &self.branches[j];
                let mut acc = 0u64;
                for (k, q) in bi.path.iter().enumerate() {
                    if let Some(l) = bj.path.iter().position(|p| p == q) {
                        acc += bi.mults[k] as u64 * bj.mults[l] as u64;
                    }
                }
                table[i][j] = acc;
                table[j][i] = acc;
            }
        }
        table
    }

    /// Deformation determinacy of the topological type.
    pub fn nu_s(&self) -> u64 {
        let essential = self.essential_subtree();
        let inter = self.branch_intersections();
        let mut best = 0u64;
        for (j, branch) in self.branches.iter().enumerate() {
            let delta_j: u64 = branch
                .mults
                .iter()
                .map(|&m| (m as u64) * (m as u64 - 1) / 2)
                .sum();
            let cross: u64 = (0..self.branches.len())
                .filter(|&i| i != j)
                .map(|i| inter[i][j])
                .sum();
            let along: u64 = branch
                .path
                .iter()
                .zip(&branch.mults)
                .filter(|(q, _)| essential.contains(q))
                .map(|(_, &m)| m as u64)
                .sum();
            let num = 2 * delta_j + cross + along;
            let den = branch.mults[0] as u64;
            // minimal nu with nu + 1 >= num/den
            let bound = num.div_ceil(den).saturating_sub(1);
            best = best.max(bound);
        }
        best
    }

    /// Degree of the scheme of essential multiplicities:
    /// delta plus the sum of strict multiplicities over the essential tree.
    pub fn deg_xs(&self) -> u64 {
        let essential = self.essential_subtree();
        self.delta()
            + essential
                .iter()
                .map(|&q| self.nodes[q].mult as u64)
                .sum::<u64>()
    }

    /// Serialize to the interchange JSON (the same schema doubles as the
    /// cluster input format, with positions attached to free points).
    pub fn to_json(&self) -> serde_json::Value {
        let nodes: Vec<serde_json::Value> = self
            .nodes
            .iter()
            .map(|n| {
                serde_json::json!({
                    "id": n.id,
                    "level": n.level,
                    "parent": n.parent,
                    "m": n.mult,
                    "mhat": n.mult_total,
                    "proximate_to": n.proximate_to,
                    "essential": n.essential,
                    "free": n.free,
                    "position": n.position.as_ref().map(|(chart, c)| serde_json::json!({
                        "chart": match chart { Chart::A => "a", Chart::B => "b" },
                        "coord": c.to_string(),
                    })),
                })
            })
            .collect();
        serde_json::json!({
            "germ": self.germ.to_string(),
            "base_point": [self.base_point.0.to_string(), self.base_point.1.to_string()],
            "nodes": nodes,
        })
    }
}

/// Full invariant record; the Milnor number is computed both from the
/// tree combinatorics and as the Milnor-ideal colength, and the two must
/// agree.
pub fn invariants_from_tree(tree: &ResolutionTree) -> Result<SingularityRecord, ResolveError> {
    let delta = tree.delta();
    let r = tree.branches.len() as u64;
    let mu_comb = 2 * delta + 1 - r;
    let mult = tree.nodes[0].mult;
    let (mu_ideal, tau) = if mult >= 2 {
        let mu = local::milnor_number(&tree.germ, &tree.base_point)? as u64;
        let tau = local::tjurina_number(&tree.germ, &tree.base_point)? as u64;
        (mu, tau)
    } else {
        (0, 0)
    };
    if mult >= 2 && mu_comb != mu_ideal {
        return Err(ResolveError::Internal(format!(
            "combinatorial Milnor number {} disagrees with ideal colength {}",
            mu_comb, mu_ideal
        )));
    }
    Ok(SingularityRecord {
        label: None,
        multiplicity: mult,
        branches: tree.branches.len(),
        delta,
        mu: mu_comb,
        tau,
        tau_es: None,
        nu_s: tree.nu_s(),
        deg_xs: tree.deg_xs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn origin() -> (Rat, Rat) {
        (rat(0), rat(0))
    }

    fn tree_of(s: &str) -> ResolutionTree {
        resolve(&parse_poly(s).unwrap(), &origin()).unwrap()
    }

    #[test]
    fn node_tree() {
        let t = tree_of("x^2 - y^2");
        assert_eq!(t.nodes[0].mult, 2);
        let leaves: Vec<_> = t.nodes.iter().filter(|n| !n.essential).collect();
        assert_eq!(leaves.len(), 2);
        assert!(leaves.iter().all(|n| n.level == 1 && n.mult == 1));
        assert_eq!(t.essential_subtree().len(), 1);
        assert_eq!(t.branches.len(), 2);
        let rec = invariants_from_tree(&t).unwrap();
        assert_eq!((rec.delta, rec.mu, rec.branches, rec.deg_xs), (1, 1, 2, 3));
        assert_eq!(rec.nu_s, 1);
    }

    #[test]
    fn cusp_tree() {
        let t = tree_of("x^2 - y^3");
        let ess: Vec<usize> = t.essential_subtree().into_iter().collect();
        assert_eq!(ess.len(), 3);
        let mults: Vec<u32> = ess.iter().map(|&q| t.nodes[q].mult).collect();
        assert_eq!(mults, vec![2, 1, 1]);
        let totals: Vec<u64> = ess.iter().map(|&q| t.nodes[q].mult_total).collect();
        assert_eq!(totals, vec![2, 3, 6]);
        // the satellite is proximate to both earlier essential points
        let sat = &t.nodes[ess[2]];
        assert_eq!(sat.proximate_to.len(), 2);
        assert!(!sat.free);
        let rec = invariants_from_tree(&t).unwrap();
        assert_eq!((rec.delta, rec.mu, rec.branches, rec.deg_xs), (1, 2, 1, 5));
        assert_eq!(rec.nu_s, 2);
    }

    #[test]
    fn irrational_triple_rejected_rational_triple_resolves() {
        let err = resolve(&parse_poly("x^3 - y^3").unwrap(), &origin()).unwrap_err();
        match err {
            ResolveError::IrrationalBranchPoint { poly } => {
                assert_eq!(poly.degree(), 2, "quadratic leftover {}", poly);
            }
            other => panic!("expected irrational branch point, got {:?}", other),
        }

        let t = tree_of("x^3 - x*y^2");
        assert_eq!(t.branches.len(), 3);
        assert_eq!(t.essential_subtree().len(), 1);
        let rec = invariants_from_tree(&t).unwrap();
        assert_eq!((rec.delta, rec.mu, rec.deg_xs), (3, 4, 6));
    }

    #[test]
    fn tacnode_branches_meet_twice() {
        let t = tree_of("(x - y^2)*(x + y^2)");
        assert_eq!(t.branches.len(), 2);
        let table = t.branch_intersections();
        assert_eq!(table[0][1], 2);
        // oracle: colength of <x - y^2, x + y^2> = colength of <x, y^2>
        let i = local::intersection_multiplicity(
            &parse_poly("x - y^2").unwrap(),
            &parse_poly("x + y^2").unwrap(),
            &origin(),
        )
        .unwrap();
        assert_eq!(i as u64, table[0][1]);
        // essential tree {z, q1} with multiplicities (2, 2)
        let ess: Vec<usize> = t.essential_subtree().into_iter().collect();
        let mults: Vec<u32> = ess.iter().map(|&q| t.nodes[q].mult).collect();
        assert_eq!(mults, vec![2, 2]);
        let rec = invariants_from_tree(&t).unwrap();
        assert_eq!((rec.delta, rec.mu, rec.deg_xs), (2, 3, 6));
        assert_eq!(rec.nu_s, 3);
    }

    #[test]
    fn ordinary_triple_intersections_all_one() {
        let t = tree_of("x^3 - x*y^2");
        let table = t.branch_intersections();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(table[i][j], 1);
                }
            }
        }
        assert_eq!(t.nu_s(), 2);
    }

    #[test]
    fn a_series_invariants() {
        for k in 1..=8u64 {
            let t = tree_of(&format!("x^2 - y^{}", k + 1));
            let rec = invariants_from_tree(&t).unwrap();
            assert_eq!(rec.mu, k, "mu of A_{}", k);
            assert_eq!(rec.tau, k, "tau of A_{}", k);
            assert_eq!(rec.delta, (k + 1) / 2, "delta of A_{}", k);
            assert_eq!(rec.branches as u64, if k % 2 == 0 { 1 } else { 2 });
            assert_eq!(rec.nu_s, k, "nu^s of A_{}", k);
        }
    }

    #[test]
    fn e6_over_the_rationals() {
        let t = tree_of("x^3 - y^4");
        let rec = invariants_from_tree(&t).unwrap();
        assert_eq!((rec.mu, rec.delta, rec.branches), (6, 3, 1));
        // branch multiplicity sequence (3,1,1,1) and a satellite chain
        let b = &t.branches[0];
        assert_eq!(b.mults, vec![3, 1, 1, 1, 1]);
        assert_eq!(rec.deg_xs, 3 + 3 + 1 + 1 + 1);
        assert_eq!(rec.nu_s, 3);
    }

    #[test]
    fn enriques_equality_and_proximity_inequality() {
        for s in ["x^2 - y^3", "x^2 - y^7", "(x - y^2)*(x + y^2)", "x^3 - y^4", "x^3 - x*y^2"] {
            let t = tree_of(s);
            for n in &t.nodes {
                let total: u64 = n.mult as u64
                    + n.proximate_to.iter().map(|&p| t.nodes[p].mult_total).sum::<u64>();
                assert_eq!(n.mult_total, total, "Enriques total at {} of {}", n.id, s);
                // proximity inequality within the truncated tree
                let prox_sum: u32 = t
                    .nodes
                    .iter()
                    .filter(|p| p.proximate_to.contains(&n.id))
                    .map(|p| p.mult)
                    .sum();
                assert!(
                    n.mult >= prox_sum,
                    "proximity inequality fails at {} of {}",
                    n.id,
                    s
                );
            }
        }
    }

    #[test]
    fn non_reduced_input_rejected() {
        let err = resolve(&parse_poly("(x - y)^2").unwrap(), &origin()).unwrap_err();
        assert!(matches!(err, ResolveError::NotReduced));
    }

    #[test]
    fn noether_agrees_with_colength_on_catalog_pairs() {
        let pairs = [
            ("x - y^3", "x + y^2"),
            ("y - x^2", "y + x^3"),
            ("x - y^2", "x - 2*y^2"),
        ];
        for (a, b) in pairs {
            let pa = parse_poly(a).unwrap();
            let pb = parse_poly(b).unwrap();
            let product = pa.mul(&pb);
            let t = resolve(&product, &origin()).unwrap();
            assert_eq!(t.branches.len(), 2);
            let noether = t.branch_intersections()[0][1];
            let colen =
                local::intersection_multiplicity(&pa, &pb, &origin()).unwrap() as u64;
            assert_eq!(noether, colen, "pair ({}, {})", a, b);
        }
    }
}
