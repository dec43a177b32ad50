//! Cohomology of ideal sheaves of zero-dimensional schemes in the
//! projective plane, their Castelnuovo functions, fixed-curve splitting,
//! and the reduction to non-decomposable subschemes.
//!
//! A scheme is a finite union of local pieces (simple or fat points,
//! clusters with virtual multiplicities, explicit local ideals) plus
//! optional curve-membership pieces used for complete intersections.
//! Everything reduces to exact rank computations: `h0(d)` is the kernel
//! dimension of the stacked condition matrices and `h1` follows from the
//! Euler characteristic of the twisted ideal sheaf.

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{bivariate_gcd, gcd_homogeneous, rat, Exponent, MultiPoly, QMatrix, Rat, Var};
use crate::cluster::{self, curve_monomials, poly_from_coeffs, Cluster, ClusterError};
use crate::local::{ColengthCertificate, JetQuotient, LocalError, LocalIdeal};

#[derive(Debug, Error)]
pub enum SchemeError {
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error(transparent)]
    Local(#[from] LocalError),
    #[error("curves share a common component")]
    CommonComponent,
    #[error("projective colength did not stabilize within the budget")]
    Unstable,
    #[error("bad scheme description: {0}")]
    BadInput(String),
}

/// One local (or membership) piece of a zero-dimensional scheme.
#[derive(Clone, Debug)]
pub enum Piece {
    /// Reduced point.
    Point { at: (Rat, Rat) },
    /// Fat point of multiplicity `m`.
    Fat { at: (Rat, Rat), m: u32 },
    /// Cluster of infinitely near points with virtual multiplicities.
    ClusterPiece { cluster: Cluster },
    /// Explicit zero-dimensional local ideal with its certified colength.
    Ideal {
        ideal: LocalIdeal,
        cert: ColengthCertificate,
    },
    /// All curves lying in the homogeneous ideal spanned by the given
    /// forms; `degree` is the length of the subscheme they cut out.
    Membership { gens: Vec<MultiPoly>, degree: u64 },
}

impl Piece {
    pub fn point(x: i64, y: i64) -> Piece {
        Piece::Point {
            at: (rat(x), rat(y)),
        }
    }

    pub fn fat(at: (Rat, Rat), m: u32) -> Piece {
        Piece::Fat { at, m }
    }

    pub fn ideal(ideal: LocalIdeal) -> Result<Piece, SchemeError> {
        let cert = ideal.colength()?;
        Ok(Piece::Ideal { ideal, cert })
    }

    /// Complete intersection of two curves without common components,
    /// as a membership piece of degree `deg f * deg g`.
    pub fn curve_pair(f: &MultiPoly, g: &MultiPoly) -> Result<Piece, SchemeError> {
        let (fa, ga) = (dehom(f), dehom(g));
        if !bivariate_gcd(&fa, &ga).is_constant() {
            return Err(SchemeError::CommonComponent);
        }
        let (fh, gh) = (hom(f), hom(g));
        let degree = fh.degree() as u64 * gh.degree() as u64;
        Ok(Piece::Membership {
            gens: vec![fh, gh],
            degree,
        })
    }

    /// Curves inside the ideal of arbitrarily many forms; the degree is
    /// computed by stabilizing the projective Hilbert function.
    pub fn membership(gens: Vec<MultiPoly>) -> Result<Piece, SchemeError> {
        let gens: Vec<MultiPoly> = gens.iter().map(hom).collect();
        let degree = projective_colength(&gens)?;
        Ok(Piece::Membership { gens, degree })
    }

    pub fn degree(&self) -> u64 {
        match self {
            Piece::Point { .. } => 1,
            Piece::Fat { m, .. } => (*m as u64) * (*m as u64 + 1) / 2,
            Piece::ClusterPiece { cluster } => cluster.degree(),
            Piece::Ideal { cert, .. } => cert.colength as u64,
            Piece::Membership { degree, .. } => *degree,
        }
    }

    pub fn support(&self) -> Option<(Rat, Rat)> {
        match self {
            Piece::Point { at } | Piece::Fat { at, .. } => Some(at.clone()),
            Piece::ClusterPiece { cluster } => Some(cluster.origin.clone()),
            Piece::Ideal { ideal, .. } => Some(ideal.point.clone()),
            Piece::Membership { .. } => None,
        }
    }
}

fn hom(p: &MultiPoly) -> MultiPoly {
    if p.uses(Var::Z) {
        assert!(p.is_homogeneous(), "trivariate input must be homogeneous");
        p.clone()
    } else {
        p.homogenize(Var::Z, p.degree())
    }
}

fn dehom(p: &MultiPoly) -> MultiPoly {
    if p.uses(Var::Z) {
        p.dehomogenize(Var::Z)
    } else {
        p.clone()
    }
}

/// A zero-dimensional scheme as a union of pieces at pairwise distinct
/// points.
#[derive(Clone, Debug, Default)]
pub struct SchemeSpec {
    pub pieces: Vec<Piece>,
}

enum Prepared {
    Cluster(Cluster),
    Quotient {
        point: (Rat, Rat),
        quotient: JetQuotient,
    },
    Membership {
        gens: Vec<MultiPoly>,
    },
}

impl SchemeSpec {
    pub fn new(pieces: Vec<Piece>) -> SchemeSpec {
        SchemeSpec { pieces }
    }

    pub fn degree(&self) -> u64 {
        self.pieces.iter().map(|p| p.degree()).sum()
    }

    fn prepare(&self) -> Vec<Prepared> {
        self.pieces
            .iter()
            .map(|p| match p {
                Piece::Point { at } => Prepared::Cluster(Cluster::ordinary(at.clone(), 1)),
                Piece::Fat { at, m } => Prepared::Cluster(Cluster::ordinary(at.clone(), *m)),
                Piece::ClusterPiece { cluster } => Prepared::Cluster(cluster.clone()),
                Piece::Ideal { ideal, cert } => Prepared::Quotient {
                    point: ideal.point.clone(),
                    quotient: JetQuotient::build(&ideal.centered_gens(), cert.order),
                },
                Piece::Membership { gens, .. } => Prepared::Membership { gens: gens.clone() },
            })
            .collect()
    }

    /// Stacked condition matrix on the coefficients of a degree-`d` curve.
    pub fn conditions(&self, d: u32) -> Result<QMatrix, SchemeError> {
        conditions_prepared(&self.prepare(), d)
    }

    pub fn h0(&self, d: u32) -> Result<u64, SchemeError> {
        h0_prepared(&self.prepare(), d)
    }

    pub fn h1(&self, d: u32) -> Result<u64, SchemeError> {
        let h0 = self.h0(d)?;
        h1_from_h0(h0, d, self.degree())
    }

    /// Curves of degree `d` through the scheme (kernel of the conditions),
    /// as affine polynomials in the chart `z = 1`.
    pub fn curves_through(&self, d: u32) -> Result<Vec<MultiPoly>, SchemeError> {
        let m = self.conditions(d)?;
        let (_, kernel) = m.kernel_and_rank();
        Ok(kernel.iter().map(|v| poly_from_coeffs(d, v)).collect())
    }

    /// Greatest common fixed curve of the degree-`d` system, homogeneous.
    pub fn fixed_curve(&self, d: u32) -> Result<MultiPoly, SchemeError> {
        let curves = self.curves_through(d)?;
        if curves.is_empty() {
            return Ok(MultiPoly::zero());
        }
        let hom_curves: Vec<MultiPoly> =
            curves.iter().map(|c| c.homogenize(Var::Z, d)).collect();
        Ok(gcd_homogeneous(&hom_curves))
    }

    pub fn profile(&self) -> Result<CastelnuovoProfile, SchemeError> {
        let deg = self.degree();
        let prepared = self.prepare();
        let mut h0s: Vec<u64> = Vec::new();
        let mut h1s: Vec<u64> = Vec::new();
        let cap = 4 * deg as u32 + 8;
        let mut t: Option<u32> = None;
        let mut d = 0u32;
        loop {
            if d > cap {
                return Err(SchemeError::Unstable);
            }
            let h0 = h0_prepared(&prepared, d)?;
            let h1 = h1_from_h0(h0, d, deg)?;
            h0s.push(h0);
            h1s.push(h1);
            if h1 == 0 {
                let stop = *t.get_or_insert(d);
                if d >= stop + 2 {
                    break;
                }
            }
            d += 1;
        }
        let t = t.unwrap();
        let mut cx: Vec<u64> = Vec::with_capacity(h1s.len());
        let mut prev = deg;
        for (d, &h1) in h1s.iter().enumerate() {
            if h1 > prev {
                return Err(SchemeError::Inconsistent(format!(
                    "h1 increased from {} to {} at degree {}",
                    prev, h1, d
                )));
            }
            cx.push(prev - h1);
            prev = h1;
        }
        let a = h0s
            .iter()
            .position(|&h| h > 0)
            .ok_or_else(|| SchemeError::Inconsistent("no sections below the cap".into()))?
            as u32;
        // least degree whose system has no fixed curve
        let mut b = None;
        for d in a..=(t + 1) {
            let fixed = self.fixed_curve(d)?;
            if fixed.degree() == 0 && !fixed.is_zero() {
                b = Some(d);
                break;
            }
        }
        let b = b.ok_or_else(|| {
            SchemeError::Inconsistent("fixed curve persists past t(X)+1".into())
        })?;
        let mut decomposable = None;
        for d0 in 1..cx.len().saturating_sub(1) {
            if cx[d0 - 1] > cx[d0] && cx[d0] == cx[d0 + 1] && cx[d0] > 0 {
                decomposable = Some(d0 as u32);
                break;
            }
        }
        Ok(CastelnuovoProfile {
            degree: deg,
            cx,
            h0: h0s,
            h1: h1s,
            a,
            b,
            t,
            decomposable,
        })
    }

    /// The subscheme cut out by a curve: each local piece is summed with
    /// the germ of the curve, membership pieces absorb it as a generator.
    pub fn intersect_curve(&self, curve: &MultiPoly) -> Result<SchemeSpec, SchemeError> {
        let curve_aff = dehom(curve);
        let mut pieces = Vec::new();
        for p in &self.pieces {
            match p {
                Piece::Membership { gens, .. } => {
                    let mut all = gens.clone();
                    all.push(hom(curve));
                    let degree = projective_colength(&all)?;
                    if degree > 0 {
                        pieces.push(Piece::Membership { gens: all, degree });
                    }
                }
                local_piece => {
                    let ideal = localize(local_piece)?;
                    let cut = ideal.with_extra(&curve_aff);
                    let cert = cut.colength()?;
                    if cert.colength > 0 {
                        pieces.push(Piece::Ideal { ideal: cut, cert });
                    }
                }
            }
        }
        Ok(SchemeSpec { pieces })
    }
}

fn conditions_prepared(prepared: &[Prepared], d: u32) -> Result<QMatrix, SchemeError> {
    let width = curve_monomials(d).len();
    let mut out = QMatrix::new(width);
    for p in prepared {
        match p {
            Prepared::Cluster(k) => {
                out.extend(&cluster::passing_conditions(k, d)?);
            }
            Prepared::Quotient { point, quotient } => {
                let mons = curve_monomials(d);
                let n = mons.len();
                let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(n);
                for &(i, j) in &mons {
                    let mono = MultiPoly::monomial(Exponent([i, j, 0]), rat(1));
                    let shifted = mono.translate(point).truncate_jet(quotient.order);
                    cols.push(quotient.reduce_poly(&shifted));
                }
                let rows = quotient.staircase.len();
                for r in 0..rows {
                    let mut row = Vec::with_capacity(n);
                    for col in &cols {
                        row.push(col[r].clone());
                    }
                    out.push_row(row);
                }
            }
            Prepared::Membership { gens } => {
                // functionals vanishing exactly on the degree-d slice of
                // the ideal: the right kernel of its spanning matrix
                let span = span_matrix(gens, d);
                let (_, functionals) = span.kernel_and_rank();
                for f in functionals {
                    out.push_row(f);
                }
            }
        }
    }
    Ok(out)
}

fn h0_prepared(prepared: &[Prepared], d: u32) -> Result<u64, SchemeError> {
    let m = conditions_prepared(prepared, d)?;
    let rank = m.rank();
    Ok((m.ncols() - rank) as u64)
}

fn h1_from_h0(h0: u64, d: u32, deg: u64) -> Result<u64, SchemeError> {
    let chi = ((d as u64 + 1) * (d as u64 + 2)) / 2;
    let rhs = h0 as i128 - chi as i128 + deg as i128;
    if rhs < 0 {
        return Err(SchemeError::Inconsistent(format!(
            "negative h1 at degree {}: h0 = {}, chi = {}, deg = {}",
            d, h0, chi, deg
        )));
    }
    Ok(rhs as u64)
}

/// Rows spanning the degree-`d` slice of the homogeneous ideal generated
/// by `gens`, in curve-coefficient coordinates.
fn span_matrix(gens: &[MultiPoly], d: u32) -> QMatrix {
    let width = curve_monomials(d).len();
    let index = |a: u32, b: u32| -> usize {
        let deg = (a + b) as usize;
        deg * (deg + 1) / 2 + a as usize
    };
    let mut m = QMatrix::new(width);
    for g in gens {
        let e = g.degree();
        if e > d || g.is_zero() {
            continue;
        }
        for (a, b) in curve_monomials(d - e) {
            let c = d - e - a - b;
            let mono = MultiPoly::monomial(Exponent([a, b, c]), rat(1));
            let prod = mono.mul(g);
            let mut row = vec![Rat::zero(); width];
            for (ex, co) in prod.terms() {
                row[index(ex.0[0], ex.0[1])] = co.clone();
            }
            m.push_row(row);
        }
    }
    m
}

/// Total length of the zero-dimensional subscheme of the plane cut out by
/// homogeneous forms, read off the stabilized Hilbert function of the
/// quotient.  The value must repeat at three consecutive degrees past the
/// bound set by the two smallest generator degrees; a scheme of positive
/// dimension never stabilizes and errors out.
pub fn projective_colength(gens: &[MultiPoly]) -> Result<u64, SchemeError> {
    let gens: Vec<MultiPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if gens.len() < 2 {
        return Err(SchemeError::Precondition(
            "need at least two forms to cut out points".into(),
        ));
    }
    for g in &gens {
        assert!(g.is_homogeneous(), "projective_colength needs forms");
    }
    let mut degs: Vec<u32> = gens.iter().map(|g| g.degree()).collect();
    degs.sort_unstable();
    let start = degs[0] + degs[1] - 1;
    let cap = start + 24;
    let mut window: Vec<u64> = Vec::new();
    for d in start..=cap {
        let span = span_matrix(&gens, d);
        let rank = span.rank() as u64;
        let n = ((d as u64 + 1) * (d as u64 + 2)) / 2;
        window.push(n - rank);
        let l = window.len();
        if l >= 3 && window[l - 1] == window[l - 2] && window[l - 2] == window[l - 3] {
            return Ok(window[l - 1]);
        }
    }
    Err(SchemeError::Unstable)
}

/// Realize a local piece as an explicit ideal at its support point.
/// Cluster pieces take the germs of all curves through the cluster in the
/// degree where the ideal sheaf is generated by global sections; the
/// resulting colength is cross-checked against the cluster degree.
pub fn localize(piece: &Piece) -> Result<LocalIdeal, SchemeError> {
    match piece {
        Piece::Point { at } => {
            let x = MultiPoly::var(Var::X).sub(&MultiPoly::constant(at.0.clone()));
            let y = MultiPoly::var(Var::Y).sub(&MultiPoly::constant(at.1.clone()));
            Ok(LocalIdeal::new(at.clone(), vec![x, y]))
        }
        Piece::Fat { at, m } => {
            let x = MultiPoly::var(Var::X).sub(&MultiPoly::constant(at.0.clone()));
            let y = MultiPoly::var(Var::Y).sub(&MultiPoly::constant(at.1.clone()));
            let gens = (0..=*m).map(|i| x.pow(*m - i).mul(&y.pow(i))).collect();
            Ok(LocalIdeal::new(at.clone(), gens))
        }
        Piece::ClusterPiece { cluster } => {
            let single = SchemeSpec::new(vec![Piece::ClusterPiece {
                cluster: cluster.clone(),
            }]);
            let prof = single.profile()?;
            let gens = single.curves_through(prof.t + 1)?;
            let ideal = LocalIdeal::new(cluster.origin.clone(), gens);
            let cert = ideal.colength()?;
            if cert.colength as u64 != cluster.degree() {
                return Err(SchemeError::Inconsistent(format!(
                    "cluster localization has colength {} but cluster degree is {}",
                    cert.colength,
                    cluster.degree()
                )));
            }
            Ok(ideal)
        }
        Piece::Ideal { ideal, .. } => Ok(ideal.clone()),
        Piece::Membership { .. } => Err(SchemeError::Precondition(
            "membership pieces have no single support point".into(),
        )),
    }
}

/// The Castelnuovo function and its derived data.  `cx[d]` is the drop of
/// `h1` from degree `d - 1` to `d`; tables run from degree 0 to `t + 2`.
#[derive(Clone, Debug, Serialize)]
pub struct CastelnuovoProfile {
    pub degree: u64,
    pub cx: Vec<u64>,
    pub h0: Vec<u64>,
    pub h1: Vec<u64>,
    /// least degree with a section
    pub a: u32,
    /// least degree whose system has no fixed curve
    pub b: u32,
    /// least degree with vanishing h1
    pub t: u32,
    /// witness degree for decomposability, when one exists
    pub decomposable: Option<u32>,
}

impl CastelnuovoProfile {
    pub fn cx_at(&self, d: i64) -> u64 {
        if d < 0 {
            return 0;
        }
        self.cx.get(d as usize).copied().unwrap_or(0)
    }

    pub fn h1_at(&self, d: i64) -> u64 {
        if d < 0 {
            return self.degree;
        }
        self.h1.get(d as usize).copied().unwrap_or(0)
    }

    /// `r0` at reference degree `d`: the Castelnuovo value at `d + 1`.
    pub fn r0_at(&self, d: u32) -> u64 {
        self.cx_at(d as i64 + 1)
    }

    pub fn csv(&self) -> String {
        let mut out = String::from("d,CX,h0,h1\n");
        for (d, c) in self.cx.iter().enumerate() {
            out.push_str(&format!("{},{},{},{}\n", d, c, self.h0[d], self.h1[d]));
        }
        out
    }
}

/// Result of one fixed-curve split.
#[derive(Clone, Debug)]
pub struct DavisReport {
    pub d0: u32,
    pub fixed_curve: MultiPoly,
    pub fixed_degree: u32,
    pub expected_degree: u64,
    pub intersection: SchemeSpec,
    pub min_formula_holds: bool,
    /// Set when the computation contradicts the expected splitting; such
    /// a report is surfaced, never silently accepted.
    pub falsification: Option<String>,
}

/// Split off the fixed curve of the degree-`d0` system.  Requires
/// `d0 >= a(X)` and a Castelnuovo plateau at `d0`.
pub fn davis_split(x: &SchemeSpec, d0: u32) -> Result<DavisReport, SchemeError> {
    let prof = x.profile()?;
    if d0 < prof.a {
        return Err(SchemeError::Precondition(format!(
            "d0 = {} is below a(X) = {}",
            d0, prof.a
        )));
    }
    if prof.cx_at(d0 as i64) != prof.cx_at(d0 as i64 + 1) {
        return Err(SchemeError::Precondition(format!(
            "no Castelnuovo plateau at d0 = {}",
            d0
        )));
    }
    let fixed = x.fixed_curve(d0)?;
    let fixed_degree = fixed.degree();
    let expected = prof.cx_at(d0 as i64);
    let mut falsification = None;
    if fixed_degree as u64 != expected {
        falsification = Some(format!(
            "fixed curve has degree {} but the plateau value is {}",
            fixed_degree, expected
        ));
    }
    let intersection = x.intersect_curve(&fixed)?;
    let iprof = intersection.profile()?;
    let mut min_ok = true;
    for d in 0..=(prof.t as i64 + 1) {
        let want = prof.cx_at(d).min(expected);
        if iprof.cx_at(d) != want {
            min_ok = false;
            if falsification.is_none() {
                falsification = Some(format!(
                    "intersection profile at degree {} is {} instead of min {}",
                    d,
                    iprof.cx_at(d),
                    want
                ));
            }
            break;
        }
    }
    Ok(DavisReport {
        d0,
        fixed_curve: fixed,
        fixed_degree,
        expected_degree: expected,
        intersection,
        min_formula_holds: min_ok,
        falsification,
    })
}

/// One checked inequality of the reduction report.
#[derive(Clone, Debug, Serialize)]
pub struct CheckedBound {
    pub name: &'static str,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct BarkatsReport {
    pub k: u32,
    pub reduced: SchemeSpec,
    pub reduced_profile: CastelnuovoProfile,
    pub h1_preserved: bool,
    pub splits: Vec<DavisReport>,
    pub r0: u64,
    pub checks: Vec<CheckedBound>,
}

/// Reduce a scheme on a degree-`d` curve with positive `h1` to a
/// non-decomposable subscheme by iterated fixed-curve splitting at the
/// maximal plateau, verifying the degree and `h1` bounds along the way.
pub fn barkats_reduce(x: &SchemeSpec, d: u32) -> Result<BarkatsReport, SchemeError> {
    let prof = x.profile()?;
    let h1_start = prof.h1_at(d as i64);
    if h1_start == 0 {
        return Err(SchemeError::Precondition(format!(
            "h1 at degree {} vanishes; nothing to reduce",
            d
        )));
    }
    if d <= prof.a {
        return Err(SchemeError::Precondition(format!(
            "need d > a(X) = {}",
            prof.a
        )));
    }

    let mut current = x.clone();
    let mut current_prof = prof;
    let mut splits: Vec<DavisReport> = Vec::new();
    for _ in 0..8 {
        if current_prof.decomposable.is_none() {
            break;
        }
        // maximal plateau with positive value at or above a(X)
        let mut d0 = None;
        for e in (current_prof.a as i64..=(current_prof.t as i64)).rev() {
            if current_prof.cx_at(e) == current_prof.cx_at(e + 1) && current_prof.cx_at(e) > 0 {
                d0 = Some(e as u32);
                break;
            }
        }
        let Some(d0) = d0 else { break };
        let report = davis_split(&current, d0)?;
        current = report.intersection.clone();
        current_prof = current.profile()?;
        splits.push(report);
    }
    if current_prof.decomposable.is_some() {
        return Err(SchemeError::Inconsistent(
            "scheme still decomposable after the splitting budget".into(),
        ));
    }

    let k = if splits.is_empty() {
        current_prof.a
    } else {
        splits.iter().map(|s| s.fixed_degree).sum()
    };
    let h1_end = current_prof.h1_at(d as i64);
    let deg_y = current.degree();
    let r0 = current_prof.r0_at(d);
    let k0 = (k as u64).min((d as u64 + 3) / 2);

    let mut checks = Vec::new();
    checks.push(CheckedBound {
        name: "k >= 3",
        lhs: k.to_string(),
        rhs: "3".into(),
        holds: k >= 3,
    });
    let lhs1 = k0 * (d as u64 + 3 - k0);
    checks.push(CheckedBound {
        name: "k0(d+3-k0) <= deg Y",
        lhs: lhs1.to_string(),
        rhs: deg_y.to_string(),
        holds: lhs1 <= deg_y,
    });
    let cap = r0 * (r0 + 1) / 2;
    checks.push(CheckedBound {
        name: "h1 <= r0(r0+1)/2",
        lhs: h1_end.to_string(),
        rhs: cap.to_string(),
        holds: h1_end <= cap,
    });
    let lower = h1_end as i128 + (d as i128 + 2 - k0 as i128 + r0 as i128) * k0 as i128
        - (r0 * (r0 + 1) / 2) as i128;
    checks.push(CheckedBound {
        name: "deg Y >= h1 + (d+2-k0+r0)k0 - r0(r0+1)/2",
        lhs: deg_y.to_string(),
        rhs: lower.to_string(),
        holds: (deg_y as i128) >= lower,
    });

    Ok(BarkatsReport {
        k,
        reduced: current,
        reduced_profile: current_prof,
        h1_preserved: h1_end == h1_start,
        splits,
        r0,
        checks,
    })
}

// -- JSON ------------------------------------------------------------------

impl SchemeSpec {
    pub fn from_json(value: &serde_json::Value) -> Result<SchemeSpec, SchemeError> {
        use crate::cluster::parse_rat;
        let arr = value
            .get("pieces")
            .and_then(|p| p.as_array())
            .ok_or_else(|| SchemeError::BadInput("missing pieces array".into()))?;
        let point_of = |v: &serde_json::Value| -> Result<(Rat, Rat), SchemeError> {
            let xs = v
                .as_array()
                .filter(|xs| xs.len() == 2)
                .ok_or_else(|| SchemeError::BadInput("point must be [x, y]".into()))?;
            let p = |u: &serde_json::Value| -> Result<Rat, SchemeError> {
                match u {
                    serde_json::Value::String(s) => parse_rat(s).map_err(SchemeError::BadInput),
                    serde_json::Value::Number(n) => n
                        .as_i64()
                        .map(rat)
                        .ok_or_else(|| SchemeError::BadInput("non-integer number".into())),
                    _ => Err(SchemeError::BadInput("bad coordinate".into())),
                }
            };
            Ok((p(&xs[0])?, p(&xs[1])?))
        };
        let mut pieces = Vec::new();
        for (i, item) in arr.iter().enumerate() {
            let kind = item
                .get("kind")
                .and_then(|k| k.as_str())
                .ok_or_else(|| SchemeError::BadInput(format!("piece {}: missing kind", i)))?;
            match kind {
                "point" => {
                    let at = point_of(item.get("at").ok_or_else(|| {
                        SchemeError::BadInput(format!("piece {}: missing at", i))
                    })?)?;
                    pieces.push(Piece::Point { at });
                }
                "fat" => {
                    let at = point_of(item.get("at").ok_or_else(|| {
                        SchemeError::BadInput(format!("piece {}: missing at", i))
                    })?)?;
                    let m = item
                        .get("m")
                        .and_then(|v| v.as_u64())
                        .ok_or_else(|| SchemeError::BadInput(format!("piece {}: missing m", i)))?
                        as u32;
                    pieces.push(Piece::Fat { at, m });
                }
                "cluster" => {
                    let c = item.get("cluster").ok_or_else(|| {
                        SchemeError::BadInput(format!("piece {}: missing cluster", i))
                    })?;
                    let cluster = Cluster::from_json(c).map_err(SchemeError::BadInput)?;
                    pieces.push(Piece::ClusterPiece { cluster });
                }
                "ideal" => {
                    let at = point_of(item.get("at").ok_or_else(|| {
                        SchemeError::BadInput(format!("piece {}: missing at", i))
                    })?)?;
                    let gens = item
                        .get("gens")
                        .and_then(|v| v.as_array())
                        .ok_or_else(|| {
                            SchemeError::BadInput(format!("piece {}: missing gens", i))
                        })?
                        .iter()
                        .map(|g| {
                            g.as_str()
                                .ok_or_else(|| {
                                    SchemeError::BadInput("generators must be strings".into())
                                })
                                .and_then(|s| {
                                    crate::algebra::parse_poly(s).map_err(|e| {
                                        SchemeError::BadInput(format!("piece {}: {}", i, e))
                                    })
                                })
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    pieces.push(Piece::ideal(LocalIdeal::new(at, gens))?);
                }
                "germ" => {
                    let at = match item.get("at") {
                        Some(v) => point_of(v)?,
                        None => (rat(0), rat(0)),
                    };
                    let text = item.get("germ").and_then(|v| v.as_str()).ok_or_else(|| {
                        SchemeError::BadInput(format!("piece {}: missing germ", i))
                    })?;
                    let f = crate::algebra::parse_poly(text)
                        .map_err(|e| SchemeError::BadInput(format!("piece {}: {}", i, e)))?;
                    let model = item
                        .get("scheme")
                        .and_then(|v| v.as_str())
                        .unwrap_or("xs");
                    pieces.push(germ_piece(&f, &at, model)?);
                }
                "curve_pair" => {
                    let curves = item
                        .get("curves")
                        .and_then(|v| v.as_array())
                        .filter(|xs| xs.len() == 2)
                        .ok_or_else(|| {
                            SchemeError::BadInput(format!(
                                "piece {}: curve_pair needs two curves",
                                i
                            ))
                        })?;
                    let mut ps = Vec::new();
                    for c in curves {
                        let s = c.as_str().ok_or_else(|| {
                            SchemeError::BadInput("curves must be strings".into())
                        })?;
                        ps.push(
                            crate::algebra::parse_poly(s).map_err(|e| {
                                SchemeError::BadInput(format!("piece {}: {}", i, e))
                            })?,
                        );
                    }
                    pieces.push(Piece::curve_pair(&ps[0], &ps[1])?);
                }
                other => {
                    return Err(SchemeError::BadInput(format!(
                        "piece {}: unknown kind {}",
                        i, other
                    )))
                }
            }
        }
        if pieces.is_empty() {
            return Err(SchemeError::BadInput("scheme has no pieces".into()));
        }
        Ok(SchemeSpec { pieces })
    }
}

/// Build the scheme piece attached to a curve germ: its essential cluster
/// (`xs`), Tjurina ideal (`xea`), or position-fixing ideal (`xeafix`).
pub fn germ_piece(f: &MultiPoly, at: &(Rat, Rat), model: &str) -> Result<Piece, SchemeError> {
    match model {
        "xs" => {
            let tree = crate::resolution::resolve(f, at)
                .map_err(|e| SchemeError::BadInput(e.to_string()))?;
            Ok(Piece::ClusterPiece {
                cluster: cluster::essential_cluster(&tree),
            })
        }
        "xea" => Piece::ideal(crate::local::tjurina_ideal(f, at)?),
        "xeafix" => Piece::ideal(crate::local::iea_fix_ideal(f, at)?),
        other => Err(SchemeError::BadInput(format!(
            "unknown local scheme model {}",
            other
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn pts(coords: &[(i64, i64)]) -> SchemeSpec {
        SchemeSpec::new(coords.iter().map(|&(x, y)| Piece::point(x, y)).collect())
    }

    /// distinct rational points on the parabola y = x^2
    fn on_conic(n: usize) -> SchemeSpec {
        let ts = [0i64, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6];
        pts(&ts[..n].iter().map(|&t| (t, t * t)).collect::<Vec<_>>())
    }

    #[test]
    fn single_point_and_fat_point_h() {
        let x = pts(&[(0, 0)]);
        assert_eq!(x.h0(0).unwrap(), 0);
        assert_eq!(x.h1(0).unwrap(), 0);

        let fat = SchemeSpec::new(vec![Piece::fat((rat(0), rat(0)), 3)]);
        assert_eq!(fat.h0(2).unwrap(), 0);
        assert_eq!(fat.h1(2).unwrap(), 0);
    }

    #[test]
    fn six_points_generic_vs_on_a_conic() {
        let generic = pts(&[(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2)]);
        assert_eq!(generic.h0(2).unwrap(), 0);
        assert_eq!(generic.h1(2).unwrap(), 0);

        let conic = on_conic(6);
        assert_eq!(conic.h0(2).unwrap(), 1);
        assert_eq!(conic.h1(2).unwrap(), 1);
    }

    #[test]
    fn fat_point_profile() {
        let fat = SchemeSpec::new(vec![Piece::fat((rat(1), rat(-1)), 3)]);
        let p = fat.profile().unwrap();
        assert_eq!(p.cx[..4], [1, 2, 3, 0]);
        assert_eq!(p.cx.iter().sum::<u64>(), 6);
        // six independent conditions on the six conic coefficients
        assert_eq!(p.t, 2);
    }

    #[test]
    fn simple_point_profile() {
        let p = pts(&[(2, 3)]).profile().unwrap();
        assert_eq!(p.cx[0], 1);
        assert_eq!(p.t, 0);
        // no constant vanishes at a point, so sections start at degree 1
        assert_eq!(p.a, 1);
    }

    #[test]
    fn complete_intersection_conic_cubic() {
        let f = parse_poly("x^2 + y^2 - x*y - x - 1").unwrap();
        let g = parse_poly("x^3 - y^3 + x*y + y - 2").unwrap();
        let ci = SchemeSpec::new(vec![Piece::curve_pair(&f, &g).unwrap()]);
        assert_eq!(ci.degree(), 6);
        let p = ci.profile().unwrap();
        assert_eq!(p.cx[..4], [1, 2, 2, 1]);
        assert_eq!(p.t, 3);
    }

    #[test]
    fn eight_points_on_a_conic_davis() {
        let x = on_conic(8);
        let prof = x.profile().unwrap();
        assert_eq!(prof.cx[..6], [1, 2, 2, 2, 1, 0]);
        // plateau at d0 = 2
        let rep = davis_split(&x, 2).unwrap();
        assert!(rep.falsification.is_none(), "{:?}", rep.falsification);
        assert_eq!(rep.fixed_degree, 2);
        assert!(rep.min_formula_holds);
        // the fixed conic is y = x^2 homogenized
        let want = parse_poly("x^2 - y*z").unwrap().primitive_normalized();
        assert_eq!(rep.fixed_curve.primitive_normalized(), want);
    }

    #[test]
    fn collinear_points_davis() {
        let x = pts(&[(0, 0), (1, 0), (2, 0), (5, 0)]);
        let prof = x.profile().unwrap();
        assert_eq!(prof.cx[..5], [1, 1, 1, 1, 0]);
        let rep = davis_split(&x, 1).unwrap();
        assert!(rep.falsification.is_none());
        assert_eq!(rep.fixed_degree, 1);
        // splitting against the fixed line keeps the whole scheme
        assert_eq!(rep.intersection.degree(), 4);
        let again = davis_split(&rep.intersection, 1).unwrap();
        assert!(again.falsification.is_none());
        assert_eq!(again.intersection.degree(), 4);
    }

    #[test]
    fn davis_precondition_errors() {
        let x = on_conic(8);
        assert!(matches!(
            davis_split(&x, 0),
            Err(SchemeError::Precondition(_))
        ));
        // cx drops from 1 to 0 at d0 = 4, so no plateau of positive value
        assert!(matches!(
            davis_split(&x, 3),
            Err(SchemeError::Precondition(_))
        ));
    }

    #[test]
    fn cluster_piece_localizes_consistently() {
        let tree =
            crate::resolution::resolve(&parse_poly("x^2 - y^3").unwrap(), &(rat(0), rat(0)))
                .unwrap();
        let k = crate::cluster::essential_cluster(&tree);
        let piece = Piece::ClusterPiece { cluster: k };
        let ideal = localize(&piece).unwrap();
        assert_eq!(ideal.colength().unwrap().colength, 5);
    }

    #[test]
    fn cluster_rank_deficit_is_h1() {
        // the failure of the passing conditions to be independent is
        // exactly the excess cohomology of the cluster scheme
        for g in ["x^2 - y^3", "(x - y^2)*(x + y^2)", "x^3 - x*y^2"] {
            let tree = crate::resolution::resolve(&parse_poly(g).unwrap(), &(rat(0), rat(0)))
                .unwrap();
            let cluster = crate::cluster::essential_cluster(&tree);
            let deg = cluster.degree();
            let x = SchemeSpec::new(vec![Piece::ClusterPiece { cluster: cluster.clone() }]);
            for d in 1..=6u32 {
                let rank =
                    crate::cluster::passing_conditions(&cluster, d).unwrap().rank() as u64;
                assert_eq!(x.h1(d).unwrap(), deg - rank, "{} at degree {}", g, d);
            }
        }
    }

    #[test]
    fn chi_identity_everywhere() {
        let schemes: Vec<SchemeSpec> = vec![
            pts(&[(0, 0), (1, 2), (3, 1)]),
            SchemeSpec::new(vec![Piece::fat((rat(0), rat(0)), 2), Piece::point(1, 1)]),
            on_conic(7),
        ];
        for x in &schemes {
            let deg = x.degree();
            for d in 0..8u32 {
                let h0 = x.h0(d).unwrap() as i128;
                let h1 = x.h1(d).unwrap() as i128;
                let n = ((d as i128) + 1) * ((d as i128) + 2) / 2;
                assert_eq!(h0 - h1, n - deg as i128);
            }
        }
    }

    #[test]
    fn barkats_on_full_complete_intersection() {
        // quartic with a cubic: 12 points on the quartic, d = 4
        let f = parse_poly("x^4 + y^4 - x*y - x - 3").unwrap();
        let g = parse_poly("x^3 - y^3 + 2*x*y - y - 1").unwrap();
        let x = SchemeSpec::new(vec![Piece::curve_pair(&g, &f).unwrap()]);
        let rep = barkats_reduce(&x, 4).unwrap();
        assert!(rep.splits.is_empty(), "CI profile is not decomposable");
        assert_eq!(rep.k, 3);
        assert_eq!(rep.r0, 1);
        assert!(rep.h1_preserved);
        for c in &rep.checks {
            assert!(c.holds, "bound {} fails: {} vs {}", c.name, c.lhs, c.rhs);
        }
    }

    #[test]
    fn scheme_json_parsing() {
        let json: serde_json::Value = serde_json::from_str(
            r#"{"pieces": [
                {"kind": "fat", "at": ["0", "0"], "m": 2},
                {"kind": "point", "at": [1, 3]},
                {"kind": "ideal", "at": ["0", "1"], "gens": ["x^2", "y - 1"]}
            ]}"#,
        )
        .unwrap();
        let x = SchemeSpec::from_json(&json).unwrap();
        assert_eq!(x.degree(), 3 + 1 + 2);
    }
}
