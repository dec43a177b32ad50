//! Numerical criteria for families of plane curves with prescribed
//! singularities: sufficient conditions for smoothness of the expected
//! dimension and for irreducibility, existence bounds, the abelian
//! fundamental-group condition, and the density conditions for schemes
//! with fixed singularity positions.
//!
//! Every comparison is exact rational arithmetic; a boundary case never
//! passes a strict inequality.  Criteria evaluated with upper-bound
//! invariants note that a failing verdict is inconclusive.

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{rat, ratio, Rat};
use crate::invariants::{catalog_entry, CatalogType, GammaValue, InvariantError};

/// What kind of singularity a summary entry describes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SingKind {
    Node,
    Cusp,
    Ordinary(u32),
    Other,
}

/// Per-type data of a curve summary.  Missing invariants make criteria
/// that need them inapplicable; nothing is ever guessed.
#[derive(Clone, Debug, Serialize)]
pub struct SummaryEntry {
    pub label: String,
    pub count: u64,
    pub kind: SingKind,
    pub multiplicity: Option<u32>,
    pub mu: Option<u64>,
    /// Tjurina-type codimension: the topological stratum codimension for
    /// topological types, the Tjurina number for analytic ones.
    pub tau_prime: Option<u64>,
    /// deformation determinacy
    pub nu_prime: Option<u64>,
    pub delta: Option<u64>,
    pub deg_xs: Option<u64>,
    /// degree of the position-fixing scheme (tau' + 2)
    pub deg_xfix: Option<u64>,
    /// maximal intersection of the position-fixing scheme with a smooth germ
    pub smooth_max: Option<u64>,
    pub gamma: Option<GammaValue>,
    /// coefficient for the legacy single-worst-singularity bound
    #[serde(serialize_with = "crate::algebra::serde_rat::serialize_opt")]
    pub alpha: Option<Rat>,
}

impl SummaryEntry {
    pub fn from_catalog(t: &CatalogType, count: u64) -> Result<SummaryEntry, InvariantError> {
        let e = catalog_entry(t)?;
        let kind = match t {
            CatalogType::A(1) => SingKind::Node,
            CatalogType::A(2) => SingKind::Cusp,
            CatalogType::Ordinary(2) => SingKind::Node,
            CatalogType::Ordinary(m) => SingKind::Ordinary(*m),
            _ => SingKind::Other,
        };
        let alpha = match kind {
            SingKind::Node => Some(rat(3)),
            SingKind::Cusp => Some(rat(5)),
            _ => None,
        };
        Ok(SummaryEntry {
            label: e.name.clone(),
            count,
            kind,
            multiplicity: Some(e.multiplicity),
            mu: Some(e.mu),
            tau_prime: Some(e.tau_es),
            nu_prime: Some(e.nu_s),
            delta: Some(e.delta),
            deg_xs: Some(e.deg_xs),
            deg_xfix: Some(e.deg_xes_fix),
            smooth_max: Some(e.smooth_max),
            gamma: Some(e.gamma),
            alpha,
        })
    }
}

/// Degree plus the list of singularities of a curve (or a hypothetical
/// configuration to test).
#[derive(Clone, Debug, Serialize)]
pub struct CurveSummary {
    pub d: u32,
    pub entries: Vec<SummaryEntry>,
}

impl CurveSummary {
    pub fn nodes_and_cusps(d: u32, nodes: u64, cusps: u64) -> CurveSummary {
        let mut entries = Vec::new();
        if nodes > 0 {
            entries.push(SummaryEntry::from_catalog(&CatalogType::A(1), nodes).unwrap());
        }
        if cusps > 0 {
            entries.push(SummaryEntry::from_catalog(&CatalogType::A(2), cusps).unwrap());
        }
        CurveSummary { d, entries }
    }

    pub fn from_types(d: u32, types: &[(&str, u64)]) -> Result<CurveSummary, InvariantError> {
        let mut entries = Vec::new();
        for (name, count) in types {
            let t = CatalogType::parse(name)
                .ok_or_else(|| InvariantError::UnknownType(name.to_string()))?;
            entries.push(SummaryEntry::from_catalog(&t, *count)?);
        }
        Ok(CurveSummary { d, entries })
    }

    fn count_kind(&self, kind: &SingKind) -> u64 {
        self.entries
            .iter()
            .filter(|e| e.kind == *kind)
            .map(|e| e.count)
            .sum()
    }

    pub fn nodes(&self) -> u64 {
        self.count_kind(&SingKind::Node)
    }

    pub fn cusps(&self) -> u64 {
        self.count_kind(&SingKind::Cusp)
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|e| e.count).sum()
    }
}

impl CurveSummary {
    /// Parse `{"d": 6, "singularities": [{"type": "A2", "count": 6},
    /// {"count": 1, "custom": {...}}]}`.  Custom records carry explicit
    /// invariant fields; anything omitted stays unknown and makes the
    /// criteria that need it inapplicable.
    pub fn from_json(value: &serde_json::Value) -> Result<CurveSummary, String> {
        let d = value
            .get("d")
            .and_then(|v| v.as_u64())
            .ok_or("missing degree d")? as u32;
        let sings = value
            .get("singularities")
            .and_then(|v| v.as_array())
            .ok_or("missing singularities array")?;
        let mut entries = Vec::new();
        for (i, s) in sings.iter().enumerate() {
            let count = s.get("count").and_then(|v| v.as_u64()).unwrap_or(1);
            if count == 0 {
                continue;
            }
            if let Some(name) = s.get("type").and_then(|v| v.as_str()) {
                let t = CatalogType::parse(name)
                    .ok_or_else(|| format!("singularity {}: unknown type {}", i, name))?;
                entries.push(
                    SummaryEntry::from_catalog(&t, count).map_err(|e| e.to_string())?,
                );
            } else if let Some(c) = s.get("custom") {
                let get = |k: &str| c.get(k).and_then(|v| v.as_u64());
                let kind = match c.get("kind").and_then(|v| v.as_str()) {
                    Some("node") => SingKind::Node,
                    Some("cusp") => SingKind::Cusp,
                    Some("ordinary") => SingKind::Ordinary(
                        get("multiplicity").ok_or("ordinary custom record needs multiplicity")?
                            as u32,
                    ),
                    _ => SingKind::Other,
                };
                entries.push(SummaryEntry {
                    label: c
                        .get("label")
                        .and_then(|v| v.as_str())
                        .unwrap_or("custom")
                        .to_string(),
                    count,
                    kind,
                    multiplicity: get("multiplicity").map(|v| v as u32),
                    mu: get("mu"),
                    tau_prime: get("tau_prime"),
                    nu_prime: get("nu_prime"),
                    delta: get("delta"),
                    deg_xs: get("deg_xs"),
                    deg_xfix: get("deg_xfix").or_else(|| get("tau_prime").map(|t| t + 2)),
                    smooth_max: get("smooth_max"),
                    gamma: {
                        let exact = c
                            .get("gamma")
                            .and_then(|v| v.as_str())
                            .map(crate::cluster::parse_rat)
                            .transpose()?
                            .map(GammaValue::Exact);
                        let bound = c
                            .get("gamma_bound")
                            .and_then(|v| v.as_str())
                            .map(crate::cluster::parse_rat)
                            .transpose()?
                            .map(GammaValue::Bound);
                        exact.or(bound)
                    },
                    alpha: c
                        .get("alpha")
                        .and_then(|v| v.as_str())
                        .map(crate::cluster::parse_rat)
                        .transpose()?,
                });
            } else {
                return Err(format!("singularity {}: needs a type or a custom record", i));
            }
        }
        Ok(CurveSummary { d, entries })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Pass,
    Fail,
    Inapplicable,
}

/// One evaluated inequality.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: &'static str,
    pub statement: &'static str,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub verdict: Verdict,
    pub notes: String,
}

impl CriterionResult {
    fn inapplicable(id: &'static str, statement: &'static str, why: &str) -> CriterionResult {
        CriterionResult {
            id,
            statement,
            lhs: None,
            rhs: None,
            verdict: Verdict::Inapplicable,
            notes: why.to_string(),
        }
    }

    fn compare(
        id: &'static str,
        statement: &'static str,
        lhs: Rat,
        rhs: Rat,
        strict: bool,
        notes: String,
    ) -> CriterionResult {
        let ok = if strict { lhs < rhs } else { lhs <= rhs };
        CriterionResult {
            id,
            statement,
            lhs: Some(lhs.to_string()),
            rhs: Some(rhs.to_string()),
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            notes,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriteriaReport {
    pub d: u32,
    pub results: Vec<CriterionResult>,
}

fn sum_over<F: Fn(&SummaryEntry) -> Option<Rat>>(s: &CurveSummary, f: F) -> Option<Rat> {
    let mut acc = Rat::zero();
    for e in &s.entries {
        let v = f(e)?;
        acc += v * rat(e.count as i64);
    }
    Some(acc)
}

fn d2_6d_8(d: u32) -> Rat {
    rat((d as i64) * (d as i64) + 6 * (d as i64) + 8)
}

/// T-smoothness from the gamma invariants: their sum must stay below
/// `d^2 + 6d + 8`.
pub fn check_smoothness_gamma(s: &CurveSummary) -> CriterionResult {
    const ID: &str = "smoothness.gamma";
    const ST: &str = "sum of gamma < d^2 + 6d + 8";
    let conservative = s
        .entries
        .iter()
        .any(|e| e.gamma.as_ref().map(|g| !g.is_exact()).unwrap_or(false));
    let lhs = sum_over(s, |e| e.gamma.as_ref().map(|g| g.value().clone()));
    match lhs {
        None => CriterionResult::inapplicable(ID, ST, "gamma missing for some singularity"),
        Some(lhs) => {
            let notes = if conservative {
                "uses upper bounds for gamma: a pass is certain, a fail is inconclusive".into()
            } else {
                String::new()
            };
            CriterionResult::compare(ID, ST, lhs, d2_6d_8(s.d), true, notes)
        }
    }
}

/// T-smoothness from the square bound alone.
pub fn check_smoothness_tau(s: &CurveSummary) -> CriterionResult {
    const ID: &str = "smoothness.tau";
    const ST: &str = "sum of (tau' + 1)^2 < d^2 + 6d + 8";
    match sum_over(s, |e| {
        e.tau_prime
            .map(|t| rat((t as i64 + 1) * (t as i64 + 1)))
    }) {
        None => CriterionResult::inapplicable(ID, ST, "tau' missing for some singularity"),
        Some(lhs) => CriterionResult::compare(ID, ST, lhs, d2_6d_8(s.d), true, String::new()),
    }
}

/// Specialization for curves with nodes and cusps only.
pub fn check_smoothness_nodes_cusps(s: &CurveSummary) -> CriterionResult {
    const ID: &str = "smoothness.nodes_cusps";
    const ST: &str = "4n + 9k < d^2 + 6d + 8";
    if s.entries
        .iter()
        .any(|e| e.kind != SingKind::Node && e.kind != SingKind::Cusp)
    {
        return CriterionResult::inapplicable(ID, ST, "applies only to nodes and cusps");
    }
    let lhs = rat(4 * s.nodes() as i64 + 9 * s.cusps() as i64);
    CriterionResult::compare(ID, ST, lhs, d2_6d_8(s.d), true, String::new())
}

/// T-smoothness for ordinary singularities.
pub fn check_smoothness_ordinary(s: &CurveSummary) -> CriterionResult {
    const ID: &str = "smoothness.ordinary";
    const ST: &str = "4·#(m=2) + 18·#(m=3) + sum_{m>=4} 16/7 m^2 < d^2 + 6d + 8";
    let mut lhs = Rat::zero();
    for e in &s.entries {
        let m = match e.kind {
            SingKind::Node => 2,
            SingKind::Ordinary(m) => m,
            _ => {
                return CriterionResult::inapplicable(
                    ID,
                    ST,
                    "applies only to ordinary singular points",
                )
            }
        };
        let term = match m {
            2 => rat(4),
            3 => rat(18),
            m => ratio(16, 7) * rat((m as i64) * (m as i64)),
        };
        lhs += term * rat(e.count as i64);
    }
    CriterionResult::compare(ID, ST, lhs, d2_6d_8(s.d), true, String::new())
}

/// The three-part irreducibility condition with determinacy invariants.
pub fn check_irreducibility(s: &CurveSummary) -> Vec<CriterionResult> {
    let d = rat(s.d as i64);
    let mut out = Vec::new();

    const ID1: &str = "irreducibility.determinacy";
    const ST1: &str = "max nu' <= 2/5 d - 1";
    match s
        .entries
        .iter()
        .map(|e| e.nu_prime)
        .collect::<Option<Vec<_>>>()
    {
        None => out.push(CriterionResult::inapplicable(ID1, ST1, "nu' missing")),
        Some(nus) => {
            let max = nus.iter().copied().max().unwrap_or(0);
            out.push(CriterionResult::compare(
                ID1,
                ST1,
                rat(max as i64),
                ratio(2, 5) * d.clone() - rat(1),
                false,
                String::new(),
            ));
        }
    }

    const ID2: &str = "irreducibility.nu_squares";
    const ST2: &str = "sum of (nu' + 2)^2 < 9/10 d^2";
    match sum_over(s, |e| {
        e.nu_prime.map(|n| rat((n as i64 + 2) * (n as i64 + 2)))
    }) {
        None => out.push(CriterionResult::inapplicable(ID2, ST2, "nu' missing")),
        Some(lhs) => out.push(CriterionResult::compare(
            ID2,
            ST2,
            lhs,
            ratio(9, 10) * d.clone() * d.clone(),
            true,
            String::new(),
        )),
    }

    const ID3: &str = "irreducibility.main";
    const ST3: &str = "25/2 n + 18 k + sum_{tau'>=3} (tau' + 2)^2 < d^2";
    out.push(weighted_tau_condition(s, ID3, ST3, Rat::zero(), false));
    out
}

/// The weakened variant carrying the 10/9 factor on the square sum.
pub fn check_irreducibility_weak(s: &CurveSummary) -> Vec<CriterionResult> {
    let d = rat(s.d as i64);
    let mut out = Vec::new();
    const ID1: &str = "irreducibility.weak.tau_max";
    const ST1: &str = "max tau' <= 2/5 d - 1";
    match s
        .entries
        .iter()
        .map(|e| e.tau_prime)
        .collect::<Option<Vec<_>>>()
    {
        None => out.push(CriterionResult::inapplicable(ID1, ST1, "tau' missing")),
        Some(ts) => {
            let max = ts.iter().copied().max().unwrap_or(0);
            out.push(CriterionResult::compare(
                ID1,
                ST1,
                rat(max as i64),
                ratio(2, 5) * d - rat(1),
                false,
                String::new(),
            ));
        }
    }
    const ID2: &str = "irreducibility.weak.main";
    const ST2: &str = "25/2 n + 18 k + 10/9 sum_{tau'>=3} (tau' + 2)^2 < d^2";
    out.push(weighted_tau_condition(s, ID2, ST2, ratio(10, 9), true));
    out
}

fn weighted_tau_condition(
    s: &CurveSummary,
    id: &'static str,
    st: &'static str,
    factor: Rat,
    weak: bool,
) -> CriterionResult {
    let d = rat(s.d as i64);
    let mut lhs = Rat::zero();
    for e in &s.entries {
        let term = match e.kind {
            SingKind::Node => ratio(25, 2),
            SingKind::Cusp => rat(18),
            _ => {
                let Some(t) = e.tau_prime else {
                    return CriterionResult::inapplicable(id, st, "tau' missing");
                };
                if t < 3 {
                    return CriterionResult::inapplicable(
                        id,
                        st,
                        "singularity with tau' < 3 that is neither node nor cusp",
                    );
                }
                let sq = rat((t as i64 + 2) * (t as i64 + 2));
                if weak {
                    factor.clone() * sq
                } else {
                    sq
                }
            }
        };
        lhs += term * rat(e.count as i64);
    }
    CriterionResult::compare(id, st, lhs, d.clone() * d, true, String::new())
}

/// Nodes-and-cusps specialization of the irreducibility criterion.
/// Below degree eight the hypothesis is not met, so a holding inequality
/// proves nothing; a failing one still fails.
pub fn check_irreducibility_nodes_cusps(s: &CurveSummary) -> CriterionResult {
    const ID: &str = "irreducibility.nodes_cusps";
    const ST: &str = "25/2 n + 18 k < d^2 (for d >= 8)";
    if s.entries
        .iter()
        .any(|e| e.kind != SingKind::Node && e.kind != SingKind::Cusp)
    {
        return CriterionResult::inapplicable(ID, ST, "applies only to nodes and cusps");
    }
    let lhs = ratio(25, 2) * rat(s.nodes() as i64) + rat(18 * s.cusps() as i64);
    let d = rat(s.d as i64);
    let mut res = CriterionResult::compare(ID, ST, lhs, d.clone() * d, true, String::new());
    if s.d < 8 && res.verdict == Verdict::Pass {
        res.verdict = Verdict::Inapplicable;
        res.notes = "inequality holds but the degree hypothesis d >= 8 is not met".into();
    }
    res
}

/// Ordinary-point specialization of the irreducibility criterion.
pub fn check_irreducibility_ordinary(s: &CurveSummary) -> Vec<CriterionResult> {
    const ID0: &str = "irreducibility.ordinary.mult";
    const ST0: &str = "max m <= 2/5 d";
    const ID: &str = "irreducibility.ordinary.main";
    const ST: &str = "25/2 #(nodes) + sum_{m>=3} m^2 (m+1)^2 / 4 < d^2";
    let d = rat(s.d as i64);
    let mut max_m = 0u32;
    let mut lhs = Rat::zero();
    for e in &s.entries {
        let m = match e.kind {
            SingKind::Node => 2,
            SingKind::Ordinary(m) => m,
            _ => {
                return vec![CriterionResult::inapplicable(
                    ID,
                    ST,
                    "applies only to ordinary singular points",
                )]
            }
        };
        max_m = max_m.max(m);
        let term = if m == 2 {
            ratio(25, 2)
        } else {
            let mm = rat(m as i64);
            mm.clone() * mm.clone() * (mm.clone() + rat(1)) * (mm + rat(1)) / rat(4)
        };
        lhs += term * rat(e.count as i64);
    }
    vec![
        CriterionResult::compare(
            ID0,
            ST0,
            rat(max_m as i64),
            ratio(2, 5) * d.clone(),
            false,
            String::new(),
        ),
        CriterionResult::compare(ID, ST, lhs, d.clone() * d, true, String::new()),
    ]
}

/// Sufficient existence condition for topological types.
pub fn check_existence(s: &CurveSummary) -> CriterionResult {
    const ID: &str = "existence.sufficient";
    const ST: &str = "sum of mu < 1/46 (d+2)^2";
    match sum_over(s, |e| e.mu.map(|m| rat(m as i64))) {
        None => CriterionResult::inapplicable(ID, ST, "mu missing"),
        Some(lhs) => {
            let d2 = rat((s.d as i64 + 2) * (s.d as i64 + 2));
            CriterionResult::compare(ID, ST, lhs, ratio(1, 46) * d2, true, String::new())
        }
    }
}

/// Classical necessary condition for existence.
pub fn check_necessary(s: &CurveSummary) -> CriterionResult {
    const ID: &str = "existence.necessary";
    const ST: &str = "sum of mu <= (d-1)^2";
    match sum_over(s, |e| e.mu.map(|m| rat(m as i64))) {
        None => CriterionResult::inapplicable(ID, ST, "mu missing"),
        Some(lhs) => {
            let rhs = rat((s.d as i64 - 1) * (s.d as i64 - 1));
            CriterionResult::compare(ID, ST, lhs, rhs, false, String::new())
        }
    }
}

/// Necessary condition for ordinary singularities on an irreducible curve.
pub fn check_necessary_ordinary(s: &CurveSummary) -> CriterionResult {
    const ID: &str = "existence.necessary_ordinary";
    const ST: &str = "sum of m(m-1) <= (d-1)(d-2)";
    let mut lhs = Rat::zero();
    for e in &s.entries {
        let m = match e.kind {
            SingKind::Node => 2,
            SingKind::Ordinary(m) => m,
            _ => {
                return CriterionResult::inapplicable(
                    ID,
                    ST,
                    "applies only to ordinary singular points",
                )
            }
        };
        lhs += rat((m as i64) * (m as i64 - 1)) * rat(e.count as i64);
    }
    let rhs = rat((s.d as i64 - 1) * (s.d as i64 - 2));
    CriterionResult::compare(ID, ST, lhs, rhs, false, String::new())
}

/// Numerical condition forcing an abelian fundamental group of the
/// complement; a fail is inconclusive.
pub fn check_nori(s: &CurveSummary) -> CriterionResult {
    const ID: &str = "pi1.abelian";
    const ST: &str = "2·#(nodes) + sum_{S != node} (deg Xs + delta) < d^2";
    let mut lhs = Rat::zero();
    for e in &s.entries {
        let term = if e.kind == SingKind::Node {
            rat(2)
        } else {
            let (Some(xs), Some(delta)) = (e.deg_xs, e.delta) else {
                return CriterionResult::inapplicable(ID, ST, "deg Xs or delta missing");
            };
            rat(xs as i64 + delta as i64)
        };
        lhs += term * rat(e.count as i64);
    }
    let d = rat(s.d as i64);
    CriterionResult::compare(
        ID,
        ST,
        lhs,
        d.clone() * d,
        true,
        "a fail is inconclusive for the fundamental group".into(),
    )
}

/// The six density conditions for schemes with fixed singularity
/// positions, plus the fat-point vanishing condition.
pub fn check_density_conditions(s: &CurveSummary) -> Vec<CriterionResult> {
    let mut out = Vec::new();
    let d = rat(s.d as i64);

    if s.d < 8 {
        for (id, st) in DENSITY_NAMES {
            out.push(CriterionResult::inapplicable(id, st, "needs d >= 8"));
        }
    } else {
        let fix = sum_over(s, |e| e.deg_xfix.map(|v| rat(v as i64)));
        let fix_sq = sum_over(s, |e| e.deg_xfix.map(|v| rat((v * v) as i64)));
        let fix2_sq = sum_over(s, |e| {
            e.deg_xfix.map(|v| rat(((v + 2) * (v + 2)) as i64))
        });
        let smooth_sq = sum_over(s, |e| e.smooth_max.map(|v| rat((v * v) as i64)));
        let c4 = sum_over(s, |e| match (e.smooth_max, e.deg_xfix) {
            (Some(sm), Some(fx)) => {
                let half = ratio((fx * fx) as i64, 2);
                Some(std::cmp::max(rat((sm * sm) as i64), half))
            }
            _ => None,
        });
        let c5 = sum_over(s, |e| match (e.smooth_max, e.deg_xfix) {
            (Some(sm), Some(fx)) => {
                let first = (rat(sm as i64) + ratio(16, 15)).pow_sq();
                let second = (rat(fx as i64) + ratio(32, 15)).pow_sq() / rat(2);
                Some(std::cmp::max(first, second))
            }
            _ => None,
        });

        let d2 = d.clone() * d.clone();
        let d3 = (d.clone() + rat(3)).pow_sq();
        let items: [(usize, Option<Rat>, Rat, bool); 6] = [
            (0, fix.map(|v| rat(4) * v), d2_6d_8(s.d), false),
            (1, fix_sq, d2.clone(), false),
            (2, fix2_sq, rat(2) * d3.clone(), false),
            (3, smooth_sq, ratio(9, 10) * d2.clone(), false),
            (4, c4, (d.clone() - rat(1)).pow_sq(), false),
            (5, c5, ratio(16, 15) * d3.clone(), false),
        ];
        for (i, lhs, rhs, _) in items {
            let (id, st) = DENSITY_NAMES[i];
            match lhs {
                None => out.push(CriterionResult::inapplicable(
                    id,
                    st,
                    "per-point scheme data missing",
                )),
                // conditions are stated as rhs > lhs
                Some(lhs) => out.push(CriterionResult::compare(
                    id,
                    st,
                    lhs,
                    rhs,
                    true,
                    String::new(),
                )),
            }
        }
    }

    // fat-point vanishing: 2d > 5 max nu' + 4 and 9/10 (d+3)^2 > sum (nu'+2)^2
    const IDF: &str = "density.fat_points";
    const STF: &str = "2d > 5 max nu' + 4 and sum of (nu' + 2)^2 < 9/10 (d+3)^2";
    match s
        .entries
        .iter()
        .map(|e| e.nu_prime)
        .collect::<Option<Vec<_>>>()
    {
        None => out.push(CriterionResult::inapplicable(IDF, STF, "nu' missing")),
        Some(nus) => {
            let maxnu = nus.iter().copied().max().unwrap_or(0);
            let side = 2 * s.d as i64 > 5 * maxnu as i64 + 4;
            let lhs = sum_over(s, |e| {
                e.nu_prime.map(|n| rat((n as i64 + 2) * (n as i64 + 2)))
            })
            .unwrap();
            let rhs = ratio(9, 10) * (d.clone() + rat(3)).pow_sq();
            let mut res = CriterionResult::compare(IDF, STF, lhs, rhs, true, String::new());
            if !side {
                res.verdict = Verdict::Fail;
                res.notes = format!("side condition 2d > 5 max nu' + 4 fails (max nu' = {})", maxnu);
            }
            out.push(res);
        }
    }
    out
}

const DENSITY_NAMES: [(&str, &str); 6] = [
    ("density.total_deg", "4 · deg Xfix < d^2 + 6d + 8"),
    ("density.deg_squares", "sum of (deg Xfix_i)^2 < d^2"),
    (
        "density.deg_plus2_squares",
        "sum of (deg Xfix_i + 2)^2 < 2 (d+3)^2",
    ),
    (
        "density.smooth_squares",
        "sum of max smooth intersections squared < 9/10 d^2",
    ),
    (
        "density.mixed_squares",
        "sum of max(smooth^2, (deg Xfix_i)^2 / 2) < (d-1)^2",
    ),
    (
        "density.shifted_squares",
        "sum of max((smooth + 16/15)^2, (deg Xfix_i + 32/15)^2 / 2) < 16/15 (d+3)^2",
    ),
];

trait PowSq {
    fn pow_sq(self) -> Rat;
}

impl PowSq for Rat {
    fn pow_sq(self) -> Rat {
        self.clone() * self
    }
}

/// Legacy single-worst-singularity bound in terms of mu and the
/// multiplicity.
pub fn check_legacy_mu(s: &CurveSummary) -> CriterionResult {
    const ID: &str = "legacy.mu_bound";
    const ST: &str = "sum of mu < min_i f(S_i) · d^2 with f = 2 / ((mu+m-1)^2 (3mu - m^2 + 3m + 2)^2)";
    let mut total_mu = Rat::zero();
    let mut min_f: Option<Rat> = None;
    for e in &s.entries {
        let (Some(mu), Some(m)) = (e.mu, e.multiplicity) else {
            return CriterionResult::inapplicable(ID, ST, "mu or multiplicity missing");
        };
        total_mu += rat((mu * e.count) as i64);
        let a = rat(mu as i64 + m as i64 - 1);
        let b = rat(3 * mu as i64 - (m as i64) * (m as i64) + 3 * m as i64 + 2);
        let f = rat(2) / (a.clone() * a * b.clone() * b);
        min_f = Some(match min_f {
            None => f,
            Some(old) => std::cmp::min(old, f),
        });
    }
    match min_f {
        None => CriterionResult::inapplicable(ID, ST, "empty singularity list"),
        Some(f) => {
            let d = rat(s.d as i64);
            CriterionResult::compare(ID, ST, total_mu, f * d.clone() * d, true, String::new())
        }
    }
}

/// Legacy alpha-weighted bound; alpha defaults exist only for nodes and
/// cusps, anything else needs user-supplied values.
pub fn check_legacy_alpha(s: &CurveSummary) -> CriterionResult {
    const ID: &str = "legacy.alpha_bound";
    const ST: &str =
        "sum of alpha < (2a-3)/(2a(a-1)) d^2 - (2a-9)/(2(a-1)) d - 4a/(a-1), a = max alpha";
    let mut total = Rat::zero();
    let mut amax: Option<Rat> = None;
    for e in &s.entries {
        let Some(alpha) = e.alpha.clone() else {
            return CriterionResult::inapplicable(ID, ST, "alpha missing (user-supplied only)");
        };
        total += alpha.clone() * rat(e.count as i64);
        amax = Some(match amax {
            None => alpha,
            Some(old) => std::cmp::max(old, alpha),
        });
    }
    let Some(a) = amax else {
        return CriterionResult::inapplicable(ID, ST, "empty singularity list");
    };
    if a <= rat(1) {
        return CriterionResult::inapplicable(ID, ST, "alpha must exceed 1");
    }
    let d = rat(s.d as i64);
    let rhs = (rat(2) * a.clone() - rat(3)) / (rat(2) * a.clone() * (a.clone() - rat(1)))
        * d.clone()
        * d.clone()
        - (rat(2) * a.clone() - rat(9)) / (rat(2) * (a.clone() - rat(1))) * d
        - rat(4) * a.clone() / (a - rat(1));
    CriterionResult::compare(ID, ST, total, rhs, true, String::new())
}

/// Which zero-dimensional scheme to count in the expected dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchemeKind {
    Sing,
    EsFix,
    Es,
}

/// `d(d+3)/2 - deg X` for the chosen scheme; may be negative.
pub fn expected_dimension(s: &CurveSummary, kind: SchemeKind) -> Option<i64> {
    let mut deg = 0i64;
    for e in &s.entries {
        let per = match kind {
            SchemeKind::Sing => e.deg_xs? as i64,
            SchemeKind::Es => e.tau_prime? as i64,
            SchemeKind::EsFix => e.deg_xfix? as i64,
        };
        deg += per * e.count as i64;
    }
    Some((s.d as i64) * (s.d as i64 + 3) / 2 - deg)
}

/// Evaluate the full battery of criteria.
pub fn check_all(s: &CurveSummary) -> CriteriaReport {
    let mut results = Vec::new();
    results.push(check_smoothness_gamma(s));
    results.push(check_smoothness_tau(s));
    results.push(check_smoothness_nodes_cusps(s));
    results.push(check_smoothness_ordinary(s));
    results.extend(check_irreducibility(s));
    results.extend(check_irreducibility_weak(s));
    results.push(check_irreducibility_nodes_cusps(s));
    results.extend(check_irreducibility_ordinary(s));
    results.push(check_existence(s));
    results.push(check_necessary(s));
    results.push(check_necessary_ordinary(s));
    results.push(check_nori(s));
    results.extend(check_density_conditions(s));
    CriteriaReport {
        d: s.d,
        results,
    }
}
