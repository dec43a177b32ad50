//! Local invariants of curve germs built on intersection data: the delta
//! quantity and gamma invariant attached to a zero-dimensional scheme at
//! the singular point, exact catalog values for the standard singularity
//! types, and enumerated maxima over smooth auxiliary germs.
//!
//! The gamma enumerator is a certified lower bound: every candidate is a
//! genuine witness, so the reported maximum is attained.  It is paired
//! with the square upper bound in terms of the Tjurina-type codimension;
//! when the two meet the value is exact and flagged as such.

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{rat, ratio, Exponent, MultiPoly, Rat, Var};
use crate::local::{intersection_multiplicity, LocalError, LocalIdeal};
use crate::resolution::{invariants_from_tree, resolve, ResolveError, SingularityRecord};

#[derive(Debug, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Local(#[from] LocalError),
    #[error(transparent)]
    Resolve(#[from] ResolveError),
    #[error("auxiliary germ does not pass through the point")]
    NotAGerm,
    #[error("no admissible auxiliary germ inside the search budget")]
    EmptyFamily,
    #[error("invariant bound violated: {0}")]
    BoundViolated(String),
    #[error("unknown catalog type {0}")]
    UnknownType(String),
}

/// `deg(D∩X)`, the local intersection number `(C, D)` and the minimum
/// `Delta` of the two gaps.
#[derive(Clone, Debug, Serialize)]
pub struct DeltaReport {
    pub deg_dx: u64,
    pub icd: u64,
    pub delta: u64,
}

/// Exact evaluation of `Delta(C, D; X) = min((C,D) - deg(D∩X), deg(D∩X))`.
pub fn delta_cd(
    f: &MultiPoly,
    d: &MultiPoly,
    x: &LocalIdeal,
) -> Result<DeltaReport, InvariantError> {
    let p = &x.point;
    if !d.translate(p).coeff(&Exponent([0, 0, 0])).is_zero() {
        return Err(InvariantError::NotAGerm);
    }
    let icd = intersection_multiplicity(f, d, p)? as u64;
    let deg_dx = x.with_extra(d).colength()?.colength as u64;
    Ok(DeltaReport {
        deg_dx,
        icd,
        delta: std::cmp::min(icd.saturating_sub(deg_dx), deg_dx),
    })
}

/// Enumeration budget for auxiliary germs.
#[derive(Clone, Debug, Serialize)]
pub struct GammaBudget {
    /// maximal total degree of a candidate
    pub max_degree: u32,
    /// maximal multiplicity at the point
    pub max_mult: u32,
    /// coefficient grid for the second monomial of binomial candidates
    #[serde(serialize_with = "crate::algebra::serde_rat::serialize_vec")]
    pub grid: Vec<Rat>,
    pub max_candidates: usize,
}

impl GammaBudget {
    /// Defaults keyed to the germ: degree up to the deformation
    /// determinacy plus two, multiplicity up to the germ's own.
    pub fn for_germ(nu: u64, mult: u32) -> GammaBudget {
        GammaBudget {
            max_degree: nu as u32 + 2,
            max_mult: mult,
            grid: default_grid(),
            max_candidates: 20_000,
        }
    }
}

fn default_grid() -> Vec<Rat> {
    vec![rat(1), rat(-1), rat(2), rat(-2), ratio(1, 2), ratio(-1, 2)]
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaWitness {
    pub germ: String,
    pub deg_dx: u64,
    pub icd: u64,
    pub delta: u64,
    #[serde(serialize_with = "crate::algebra::serde_rat::serialize")]
    pub value: Rat,
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaReport {
    /// attained maximum over the enumerated family
    #[serde(serialize_with = "crate::algebra::serde_rat::serialize")]
    pub lower: Rat,
    pub witness: GammaWitness,
    /// square bound from the Tjurina-type codimension, when known
    #[serde(serialize_with = "crate::algebra::serde_rat::serialize_opt")]
    pub upper: Option<Rat>,
    /// the lower bound met the upper bound
    pub exact: bool,
    /// the best witness sits on the search boundary
    pub on_boundary: bool,
    pub candidates: usize,
}

pub fn gamma_term(deg_dx: u64, delta: u64) -> Rat {
    let d = rat(deg_dx as i64);
    let del = rat(delta as i64);
    d.clone() * d.clone() / del.clone() + rat(2) * d + del
}

/// Maximize the gamma term over monomial and binomial germs within the
/// budget.  Candidates sharing a component with the curve are skipped;
/// every retained witness certifies the reported lower bound, and the
/// first witness in enumeration order wins ties.
pub fn gamma_lower_bound(
    f: &MultiPoly,
    x: &LocalIdeal,
    tau_prime: Option<u64>,
    budget: &GammaBudget,
) -> Result<GammaReport, InvariantError> {
    let p = x.point.clone();
    let mut best: Option<(Rat, GammaWitness, bool)> = None;
    let mut tried = 0usize;

    let mons: Vec<(u32, u32)> = {
        let mut v = Vec::new();
        for deg in 1..=budget.max_degree {
            for a in 0..=deg {
                v.push((a, deg - a));
            }
        }
        v
    };
    let monomial_at = |e: (u32, u32)| -> MultiPoly {
        let xv = MultiPoly::var(Var::X).sub(&MultiPoly::constant(p.0.clone()));
        let yv = MultiPoly::var(Var::Y).sub(&MultiPoly::constant(p.1.clone()));
        xv.pow(e.0).mul(&yv.pow(e.1))
    };

    let mut candidates: Vec<MultiPoly> = Vec::new();
    for &m in &mons {
        if candidates.len() >= budget.max_candidates {
            break;
        }
        if m.0 + m.1 <= budget.max_mult {
            candidates.push(monomial_at(m));
        }
    }
    'outer: for (i, &m1) in mons.iter().enumerate() {
        for &m2 in mons.iter().skip(i + 1) {
            let mult = (m1.0 + m1.1).min(m2.0 + m2.1);
            if mult > budget.max_mult {
                continue;
            }
            for c in &budget.grid {
                if candidates.len() >= budget.max_candidates {
                    break 'outer;
                }
                candidates.push(monomial_at(m1).add(&monomial_at(m2).scale(c)));
            }
        }
    }

    for d in candidates {
        if d.is_zero() {
            continue;
        }
        tried += 1;
        let report = match delta_cd(f, &d, x) {
            Ok(r) => r,
            Err(InvariantError::Local(LocalError::CommonComponent)) => continue,
            Err(e) => return Err(e),
        };
        if report.delta == 0 {
            return Err(InvariantError::BoundViolated(format!(
                "delta vanished for witness {}; the scheme is not inside the Tjurina scheme",
                d
            )));
        }
        let value = gamma_term(report.deg_dx, report.delta);
        let on_boundary =
            d.degree() == budget.max_degree || d.translate(&p).order() == budget.max_mult;
        let better = match &best {
            None => true,
            Some((v, _, _)) => value > *v,
        };
        if better {
            best = Some((
                value.clone(),
                GammaWitness {
                    germ: d.to_string(),
                    deg_dx: report.deg_dx,
                    icd: report.icd,
                    delta: report.delta,
                    value,
                },
                on_boundary,
            ));
        }
    }

    let (lower, witness, on_boundary) = best.ok_or(InvariantError::EmptyFamily)?;
    let upper = tau_prime.map(gamma_upper_bound);
    if let Some(u) = &upper {
        if lower > *u {
            return Err(InvariantError::BoundViolated(format!(
                "gamma lower bound {} exceeds the square bound {}",
                lower, u
            )));
        }
    }
    let exact = upper.as_ref().map(|u| *u == lower).unwrap_or(false);
    Ok(GammaReport {
        lower,
        witness,
        upper,
        exact,
        on_boundary,
        candidates: tried,
    })
}

/// The square bound `(tau' + 1)^2`.
pub fn gamma_upper_bound(tau_prime: u64) -> Rat {
    let t = rat(tau_prime as i64 + 1);
    t.clone() * t
}

/// An exact invariant value or an upper bound standing in for it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GammaValue {
    Exact(#[serde(serialize_with = "crate::algebra::serde_rat::serialize")] Rat),
    Bound(#[serde(serialize_with = "crate::algebra::serde_rat::serialize")] Rat),
}

impl GammaValue {
    pub fn value(&self) -> &Rat {
        match self {
            GammaValue::Exact(v) | GammaValue::Bound(v) => v,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, GammaValue::Exact(_))
    }
}

/// Gamma of an ordinary point of multiplicity `m`: 4 for a node, 18 for a
/// triple point, and the bound `16/7 m^2` beyond that.
pub fn gamma_ordinary(m: u32) -> GammaValue {
    match m {
        2 => GammaValue::Exact(rat(4)),
        3 => GammaValue::Exact(rat(18)),
        _ => GammaValue::Bound(ratio(16, 7) * rat(m as i64) * rat(m as i64)),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SmoothMaxReport {
    /// attained maximum over the enumerated smooth germs
    pub max: u64,
    pub witness: String,
    /// a-priori cap when the deformation determinacy is known
    pub cap: Option<u64>,
    pub exact: bool,
}

/// Maximum of `deg(D ∩ X)` over enumerated smooth germs `D` through the
/// point: graphs `x - sum c_i y^i` and `y - sum c_i x^i` with at most two
/// nonzero grid coefficients up to the given jet order.
pub fn smooth_intersection_max(
    x: &LocalIdeal,
    order: u32,
    nu_cap: Option<u64>,
) -> Result<SmoothMaxReport, InvariantError> {
    let p = x.point.clone();
    let grid = default_grid();
    let xv = MultiPoly::var(Var::X).sub(&MultiPoly::constant(p.0.clone()));
    let yv = MultiPoly::var(Var::Y).sub(&MultiPoly::constant(p.1.clone()));

    let mut candidates: Vec<MultiPoly> = Vec::new();
    for lead_x in [true, false] {
        let (lead, tail) = if lead_x { (&xv, &yv) } else { (&yv, &xv) };
        let powers: Vec<MultiPoly> = (1..=order).map(|i| tail.pow(i)).collect();
        candidates.push(lead.clone());
        for (i, pi) in powers.iter().enumerate() {
            for c in &grid {
                candidates.push(lead.sub(&pi.scale(c)));
                for pj in powers.iter().skip(i + 1) {
                    for c2 in &grid {
                        candidates.push(lead.sub(&pi.scale(c)).sub(&pj.scale(c2)));
                    }
                }
            }
        }
    }

    let mut best: Option<(u64, String)> = None;
    for d in candidates {
        let col = x.with_extra(&d).colength()?.colength as u64;
        if best.as_ref().map(|(b, _)| col > *b).unwrap_or(true) {
            best = Some((col, d.to_string()));
        }
    }
    let (max, witness) = best.ok_or(InvariantError::EmptyFamily)?;
    let cap = nu_cap.map(|nu| nu + 1);
    if let Some(c) = cap {
        if max > c {
            return Err(InvariantError::BoundViolated(format!(
                "smooth intersection {} exceeds the cap {}",
                max, c
            )));
        }
    }
    Ok(SmoothMaxReport {
        max,
        witness,
        cap,
        exact: cap.map(|c| c == max).unwrap_or(false),
    })
}

// -- catalog -------------------------------------------------------------------

/// Named topological types with exact invariant tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogType {
    A(u32),
    D(u32),
    E(u32),
    Ordinary(u32),
}

impl CatalogType {
    pub fn parse(name: &str) -> Option<CatalogType> {
        let name = name.trim();
        if !name.is_ascii() || name.len() < 2 {
            return None;
        }
        let lower = name.to_ascii_lowercase();
        if let Some(rest) = lower.strip_prefix("ord") {
            let rest = rest.trim_start_matches(':').trim_start_matches('-');
            return rest
                .parse()
                .ok()
                .filter(|&m| m >= 2)
                .map(CatalogType::Ordinary);
        }
        let (head, tail) = name.split_at(1);
        let k: u32 = tail.parse().ok()?;
        match head {
            "A" | "a" if k >= 1 => Some(CatalogType::A(k)),
            "D" | "d" if k >= 4 => Some(CatalogType::D(k)),
            "E" | "e" if (6..=8).contains(&k) => Some(CatalogType::E(k)),
            _ => None,
        }
    }

    pub fn name(&self) -> String {
        match self {
            CatalogType::A(k) => format!("A{}", k),
            CatalogType::D(k) => format!("D{}", k),
            CatalogType::E(k) => format!("E{}", k),
            CatalogType::Ordinary(m) => format!("ord:{}", m),
        }
    }

    /// A rational representative germ at the origin.
    pub fn germ(&self) -> MultiPoly {
        let parse = |s: &str| crate::algebra::parse_poly(s).unwrap();
        match self {
            CatalogType::A(k) => parse(&format!("x^2 - y^{}", k + 1)),
            // x (y^2 - x^(k-2))
            CatalogType::D(k) => parse(&format!("x*y^2 - x^{}", k - 1)),
            CatalogType::E(6) => parse("x^3 - y^4"),
            CatalogType::E(7) => parse("x^3 + x*y^3"),
            CatalogType::E(8) => parse("x^3 - y^5"),
            CatalogType::E(_) => unreachable!(),
            CatalogType::Ordinary(m) => {
                let mut f = MultiPoly::var(Var::Y);
                for i in 1..*m {
                    let line = MultiPoly::var(Var::Y)
                        .sub(&MultiPoly::var(Var::X).scale(&rat(i as i64)));
                    f = f.mul(&line);
                }
                f
            }
        }
    }
}

/// Exact per-type invariants.  The resolution-derived fields are computed
/// from the representative germ, so they stay consistent with the rest of
/// the toolkit by construction.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub germ: String,
    pub multiplicity: u32,
    pub branches: u64,
    pub mu: u64,
    pub delta: u64,
    /// analytic Tjurina number of the representative germ; for ordinary
    /// points of multiplicity four and more this is not determined by the
    /// topological type and stays unset
    pub tau: Option<u64>,
    /// codimension of the topological stratum
    pub tau_es: u64,
    pub nu_s: u64,
    pub deg_xs: u64,
    pub deg_xes_fix: u64,
    pub smooth_max: u64,
    pub smooth_max_exact: bool,
    pub gamma: GammaValue,
}

/// Invariants of a named type, derived from the representative germ and
/// the catalog identities.
pub fn catalog_entry(t: &CatalogType) -> Result<CatalogEntry, InvariantError> {
    let germ = t.germ();
    let origin = (rat(0), rat(0));
    let record: SingularityRecord = invariants_from_tree(&resolve(&germ, &origin)?)?;
    let (tau_es, tau): (u64, Option<u64>) = match t {
        // zero-modal types: the topological codimension is the Tjurina number
        CatalogType::A(_) | CatalogType::D(_) | CatalogType::E(_) => (record.tau, Some(record.tau)),
        CatalogType::Ordinary(2) => (1, Some(1)),
        CatalogType::Ordinary(3) => (4, Some(4)),
        CatalogType::Ordinary(m) => ((*m as u64) * (*m as u64 + 1) / 2 - 2, None),
    };
    let gamma = match t {
        CatalogType::A(k) => GammaValue::Exact(gamma_upper_bound(*k as u64)),
        CatalogType::D(4) => GammaValue::Exact(rat(18)),
        CatalogType::Ordinary(m) => gamma_ordinary(*m),
        _ => GammaValue::Bound(gamma_upper_bound(tau_es)),
    };
    let (smooth_max, smooth_max_exact) = match t {
        CatalogType::A(k) => (*k as u64 + 1, true),
        CatalogType::Ordinary(m) => (*m as u64, true),
        // the determinacy cap; conservative in the density conditions
        _ => (record.nu_s + 1, false),
    };
    Ok(CatalogEntry {
        name: t.name(),
        germ: germ.to_string(),
        multiplicity: record.multiplicity,
        branches: record.branches as u64,
        mu: record.mu,
        delta: record.delta,
        tau,
        tau_es,
        nu_s: record.nu_s,
        deg_xs: record.deg_xs,
        deg_xes_fix: tau_es + 2,
        smooth_max,
        smooth_max_exact,
        gamma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use crate::local::{iea_fix_ideal, tjurina_ideal};

    fn origin() -> (Rat, Rat) {
        (rat(0), rat(0))
    }

    #[test]
    fn delta_examples() {
        // cusp against the transverse line x = 0
        let cusp = parse_poly("x^2 - y^3").unwrap();
        let xea = tjurina_ideal(&cusp, &origin()).unwrap();
        let r = delta_cd(&cusp, &parse_poly("x").unwrap(), &xea).unwrap();
        assert_eq!((r.deg_dx, r.icd, r.delta), (2, 3, 1));

        // A_k with the line x = 0
        for k in 2..=6u32 {
            let f = parse_poly(&format!("x^2 - y^{}", k + 1)).unwrap();
            let x = tjurina_ideal(&f, &origin()).unwrap();
            let r = delta_cd(&f, &parse_poly("x").unwrap(), &x).unwrap();
            assert_eq!((r.deg_dx, r.icd, r.delta), (k as u64, k as u64 + 1, 1));
        }

        // x^3 - y^3 with the conic x^2 - 2y^2
        let d4 = parse_poly("x^3 - y^3").unwrap();
        let x = tjurina_ideal(&d4, &origin()).unwrap();
        let r = delta_cd(&d4, &parse_poly("x^2 - 2*y^2").unwrap(), &x).unwrap();
        assert_eq!((r.deg_dx, r.icd, r.delta), (4, 6, 2));
    }

    #[test]
    fn gamma_reaches_the_exact_values() {
        for k in 1..=4u64 {
            let f = parse_poly(&format!("x^2 - y^{}", k + 1)).unwrap();
            let x = tjurina_ideal(&f, &origin()).unwrap();
            let budget = GammaBudget::for_germ(k, 2);
            let rep = gamma_lower_bound(&f, &x, Some(k), &budget).unwrap();
            assert_eq!(rep.lower, gamma_upper_bound(k), "gamma of A_{}", k);
            assert!(rep.exact);
        }

        let d4 = parse_poly("x^3 - y^3").unwrap();
        let x = tjurina_ideal(&d4, &origin()).unwrap();
        let budget = GammaBudget::for_germ(2, 3);
        let rep = gamma_lower_bound(&d4, &x, Some(4), &budget).unwrap();
        assert_eq!(rep.lower, rat(18));
        assert!(!rep.exact); // 18 < 25: the square bound is not attained
        assert_eq!(rep.upper, Some(rat(25)));
    }

    #[test]
    fn containment_witness_gives_four_deg_x() {
        // when D contains X, both gaps equal deg X and the term is 4 deg X
        let f = parse_poly("x^2 - y^2").unwrap();
        let x = iea_fix_ideal(&f, &origin()).unwrap();
        let deg_x = x.colength().unwrap().colength as u64;
        assert_eq!(gamma_term(deg_x, deg_x), rat(4 * deg_x as i64));
        // an explicit containing germ: the cube of the maximal ideal
        // contains the position-fixing scheme of the node
        let d = parse_poly("x^3 + y^3 + x^2*y").unwrap();
        let r = delta_cd(&f, &d, &x).unwrap();
        assert_eq!(r.deg_dx, deg_x);
        assert_eq!(r.delta, deg_x);
        assert_eq!(gamma_term(r.deg_dx, r.delta), rat(4 * deg_x as i64));
    }

    #[test]
    fn smooth_maxima_for_node_and_cusp() {
        let node = parse_poly("x^2 - y^2").unwrap();
        let x = iea_fix_ideal(&node, &origin()).unwrap();
        let rep = smooth_intersection_max(&x, 2, Some(1)).unwrap();
        assert_eq!(rep.max, 2);
        assert!(rep.exact);

        let cusp = parse_poly("x^2 - y^3").unwrap();
        let x = iea_fix_ideal(&cusp, &origin()).unwrap();
        let rep = smooth_intersection_max(&x, 3, Some(2)).unwrap();
        assert_eq!(rep.max, 3);
        assert!(rep.exact);

        let x = LocalIdeal::at_origin(vec![
            parse_poly("x").unwrap(),
            parse_poly("y").unwrap(),
        ]);
        let rep = smooth_intersection_max(&x, 2, None).unwrap();
        assert_eq!(rep.max, 1);
    }

    #[test]
    fn catalog_values() {
        let node = catalog_entry(&CatalogType::A(1)).unwrap();
        assert_eq!(
            (node.mu, node.delta, node.nu_s, node.deg_xs, node.deg_xes_fix, node.smooth_max),
            (1, 1, 1, 3, 3, 2)
        );
        assert_eq!(node.gamma, GammaValue::Exact(rat(4)));

        let cusp = catalog_entry(&CatalogType::A(2)).unwrap();
        assert_eq!(
            (cusp.mu, cusp.delta, cusp.nu_s, cusp.deg_xs, cusp.deg_xes_fix, cusp.smooth_max),
            (2, 1, 2, 5, 4, 3)
        );
        assert_eq!(cusp.gamma, GammaValue::Exact(rat(9)));

        let d4 = catalog_entry(&CatalogType::D(4)).unwrap();
        assert_eq!((d4.mu, d4.delta, d4.branches, d4.tau_es), (4, 3, 3, 4));
        assert_eq!(d4.gamma, GammaValue::Exact(rat(18)));

        let e6 = catalog_entry(&CatalogType::E(6)).unwrap();
        assert_eq!((e6.mu, e6.delta, e6.branches, e6.deg_xs), (6, 3, 1, 9));

        let ord5 = catalog_entry(&CatalogType::Ordinary(5)).unwrap();
        assert_eq!((ord5.mu, ord5.delta, ord5.nu_s), (16, 10, 4));
        assert_eq!(ord5.tau_es, 13);
        assert_eq!(ord5.deg_xs, 15);
        assert_eq!(ord5.gamma, GammaValue::Bound(ratio(16 * 25, 7)));
    }

    #[test]
    fn catalog_identities() {
        for t in [
            CatalogType::A(1),
            CatalogType::A(4),
            CatalogType::A(7),
            CatalogType::D(4),
            CatalogType::D(5),
            CatalogType::D(6),
            CatalogType::E(6),
            CatalogType::E(7),
            CatalogType::E(8),
            CatalogType::Ordinary(3),
            CatalogType::Ordinary(4),
        ] {
            let e = catalog_entry(&t).unwrap();
            assert_eq!(e.mu, 2 * e.delta - e.branches + 1, "mu identity for {}", e.name);
            assert!(e.nu_s <= e.tau_es, "nu <= tau_es for {}", e.name);
            assert!(
                *e.gamma.value() <= gamma_upper_bound(e.tau_es),
                "gamma bound for {}",
                e.name
            );
        }
    }

    #[test]
    fn type_parsing() {
        assert_eq!(CatalogType::parse("A5"), Some(CatalogType::A(5)));
        assert_eq!(CatalogType::parse("d4"), Some(CatalogType::D(4)));
        assert_eq!(CatalogType::parse("E7"), Some(CatalogType::E(7)));
        assert_eq!(CatalogType::parse("ord:6"), Some(CatalogType::Ordinary(6)));
        assert_eq!(CatalogType::parse("ord4"), Some(CatalogType::Ordinary(4)));
        assert_eq!(CatalogType::parse("B2"), None);
        assert_eq!(CatalogType::parse("E9"), None);
    }
}
