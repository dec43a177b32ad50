//! Explicit families of cuspidal curves assembled from powers of lower
//! degree curves, with exact verification of their singular loci, plus
//! the two dimension counts of the associated equisingular families.
//!
//! Verification never enumerates the (generally irrational) singular
//! points.  The total Tjurina number is read off the stabilized Hilbert
//! function of the projective Jacobian ideal; a transversality
//! certificate via a squarefree resultant forces the expected local type
//! at every intersection point, and the total then pins the singular
//! locus exactly.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{rat, ratio, resultant, univariate_gcd, Exponent, MultiPoly, Rat, Var};
use crate::castelnuovo::{projective_colength, SchemeError};
use crate::cluster::{essential_cluster, graph_of};
use crate::invariants::CatalogType;
use crate::local::{self};
use crate::resolution::{invariants_from_tree, rational_roots, resolve, SingularityRecord};

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("degenerate draws exhausted the retry budget ({0} attempts)")]
    RetriesExhausted(usize),
    #[error("parameters out of range: {0}")]
    BadParameters(String),
    #[error("construction budget exceeded: {0}")]
    Budget(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Local(#[from] crate::local::LocalError),
    #[error(transparent)]
    Resolve(#[from] crate::resolution::ResolveError),
}

/// Verified data of an assembled cuspidal curve.
#[derive(Clone, Debug, Serialize)]
pub struct CuspidalVerification {
    /// total Tjurina number over the projective plane
    pub total_tau: u64,
    pub expected_tau: u64,
    /// degree and squarefreeness of the resultant locating the cusps
    pub resultant_degree: u32,
    pub resultant_squarefree: bool,
    /// number of cusps counted with conjugacy
    pub points: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZariskiSextic {
    pub seed: u64,
    pub conic: String,
    pub cubic: String,
    pub curve: String,
    pub verification: CuspidalVerification,
}

/// A sextic with six ordinary cusps: the cube of a smooth conic plus the
/// square of a transverse cubic.
pub fn zariski_sextic(seed: u64) -> Result<ZariskiSextic, ConstructError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let a = random_affine(&mut rng, 2);
        let b = random_affine(&mut rng, 3);
        if !conic_is_smooth(&a) {
            continue;
        }
        let Some(cert) = transversality_certificate(&a, &b, 6) else {
            continue;
        };
        let f = a.pow(3).add(&b.pow(2));
        let verification = match verify_cuspidal(&f, 6, cert) {
            Ok(v) => v,
            Err(_) => continue,
        };
        return Ok(ZariskiSextic {
            seed,
            conic: a.to_string(),
            cubic: b.to_string(),
            curve: f.to_string(),
            verification,
        });
    }
    Err(ConstructError::RetriesExhausted(64))
}

/// Verify a sextic assembled from a given conic and cubic; an engineered
/// tangency shows up as a total Tjurina number different from twelve.
pub fn verify_sextic_components(
    a: &MultiPoly,
    b: &MultiPoly,
) -> Result<CuspidalVerification, ConstructError> {
    if !conic_is_smooth(a) {
        return Err(ConstructError::Verification("conic is singular".into()));
    }
    let f = a.pow(3).add(&b.pow(2));
    let cert = transversality_certificate(a, b, 6).unwrap_or(TransversalityCert {
        degree: 0,
        squarefree: false,
        points: 0,
    });
    verify_cuspidal(&f, 6, cert)
}

#[derive(Clone, Copy, Debug)]
struct TransversalityCert {
    degree: u32,
    squarefree: bool,
    points: u64,
}

/// The resultant of the two components in `y` must have the full Bezout
/// degree and be squarefree: then all intersection points are affine,
/// have distinct x-coordinates and are transverse.
fn transversality_certificate(
    a: &MultiPoly,
    b: &MultiPoly,
    expected: u32,
) -> Option<TransversalityCert> {
    // leading y-coefficients must be constants so the resultant sees
    // every intersection point
    let alc = a.coeffs_in(Var::Y).last()?.clone();
    let blc = b.coeffs_in(Var::Y).last()?.clone();
    if !alc.is_constant() || !blc.is_constant() {
        return None;
    }
    if a.degree_in(Var::Y) != a.degree() || b.degree_in(Var::Y) != b.degree() {
        return None;
    }
    let r = resultant(a, b, Var::Y).ok()?;
    if r.degree() != expected {
        return None;
    }
    let rx = r.derivative(Var::X);
    let g = univariate_gcd(&r, &rx, Var::X);
    if g.degree() != 0 {
        return None;
    }
    Some(TransversalityCert {
        degree: r.degree(),
        squarefree: true,
        points: expected as u64,
    })
}

/// Total Tjurina number from the projective Jacobian ideal; must equal
/// twice the number of forced cusps.
fn verify_cuspidal(
    f: &MultiPoly,
    degree: u32,
    cert: TransversalityCert,
) -> Result<CuspidalVerification, ConstructError> {
    if f.degree() != degree {
        return Err(ConstructError::Verification(format!(
            "assembled curve has degree {} instead of {}",
            f.degree(),
            degree
        )));
    }
    let total_tau = total_tjurina(f)?;
    let expected = cert.points * 2;
    if !cert.squarefree {
        return Err(ConstructError::Verification(
            "transversality certificate failed (tangency or coincident points)".into(),
        ));
    }
    if total_tau != expected {
        return Err(ConstructError::Verification(format!(
            "total Tjurina number {} differs from {}; some singular point is not an ordinary cusp",
            total_tau, expected
        )));
    }
    Ok(CuspidalVerification {
        total_tau,
        expected_tau: expected,
        resultant_degree: cert.degree,
        resultant_squarefree: cert.squarefree,
        points: cert.points,
    })
}

/// Sum of local Tjurina numbers over the whole projective plane.
pub fn total_tjurina(f: &MultiPoly) -> Result<u64, ConstructError> {
    let fh = f.homogenize(Var::Z, f.degree());
    let jac = vec![
        fh.derivative(Var::X),
        fh.derivative(Var::Y),
        fh.derivative(Var::Z),
    ];
    Ok(projective_colength(&jac)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct ZariskiInstance {
    pub p: u32,
    pub d: u32,
    pub seed: u64,
    pub a: String,
    pub b: String,
    pub f: String,
    pub g: String,
    pub curve: String,
    pub verification: CuspidalVerification,
}

/// Assemble a degree-`d` curve with `6p^2` cusps from generic components:
/// the cube of a degree-`2p` curve times one cofactor plus the square of
/// a degree-`3p` curve times another.
pub fn zariski_curve(p: u32, d: u32, seed: u64) -> Result<ZariskiInstance, ConstructError> {
    if p == 0 {
        return Err(ConstructError::BadParameters("p must be positive".into()));
    }
    if d <= 6 * p {
        return Err(ConstructError::BadParameters(format!(
            "need d > 6p (got d = {}, 6p = {})",
            d,
            6 * p
        )));
    }
    if d > 12 {
        return Err(ConstructError::Budget(format!(
            "verification of a degree-{} curve exceeds the default exact-arithmetic budget",
            d
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = d - 6 * p;
    for _ in 0..64 {
        let a = random_affine(&mut rng, 2 * p);
        let b = random_affine(&mut rng, 3 * p);
        let fco = random_affine(&mut rng, e);
        let gco = random_affine(&mut rng, e);
        if !curve_is_smooth(&a)? {
            continue;
        }
        let Some(cert) = transversality_certificate(&a, &b, 6 * p * p) else {
            continue;
        };
        // the cofactors must avoid the intersection points
        if !avoids_intersection(&a, &b, &fco) || !avoids_intersection(&a, &b, &gco) {
            continue;
        }
        let curve = a.pow(3).mul(&fco).add(&b.pow(2).mul(&gco));
        let verification = match verify_cuspidal(&curve, d, cert) {
            Ok(v) => v,
            Err(_) => continue,
        };
        return Ok(ZariskiInstance {
            p,
            d,
            seed,
            a: a.to_string(),
            b: b.to_string(),
            f: fco.to_string(),
            g: gco.to_string(),
            curve: curve.to_string(),
            verification,
        });
    }
    Err(ConstructError::RetriesExhausted(64))
}

/// Certificate that `h` vanishes at no intersection point of `a` and `b`:
/// the elimination resultants share no root.
fn avoids_intersection(a: &MultiPoly, b: &MultiPoly, h: &MultiPoly) -> bool {
    if h.is_constant() {
        return !h.is_zero();
    }
    let rab = match resultant(a, b, Var::Y) {
        Ok(r) => r,
        Err(_) => return false,
    };
    let rah = match resultant(a, h, Var::Y) {
        Ok(r) => r,
        Err(_) => return false,
    };
    if rah.is_zero() {
        return false;
    }
    univariate_gcd(&rab, &rah, Var::X).degree() == 0
}

fn conic_is_smooth(a: &MultiPoly) -> bool {
    if a.degree() != 2 {
        return false;
    }
    let h = a.homogenize(Var::Z, 2);
    let c = |i: u32, j: u32, k: u32| h.coeff(&Exponent([i, j, k]));
    // symmetric matrix of the quadratic form; determinant times 8
    let two = rat(2);
    // determinant of the symmetric matrix of the quadratic form, up to scale
    let m = [
        [two.clone() * c(2, 0, 0), c(1, 1, 0), c(1, 0, 1)],
        [c(1, 1, 0), two.clone() * c(0, 2, 0), c(0, 1, 1)],
        [c(1, 0, 1), c(0, 1, 1), two * c(0, 0, 2)],
    ];
    let det = m[0][0].clone() * (m[1][1].clone() * m[2][2].clone() - m[1][2].clone() * m[2][1].clone())
        - m[0][1].clone() * (m[1][0].clone() * m[2][2].clone() - m[1][2].clone() * m[2][0].clone())
        + m[0][2].clone() * (m[1][0].clone() * m[2][1].clone() - m[1][1].clone() * m[2][0].clone());
    !det.is_zero()
}

/// Smoothness of a plane curve of any degree: the projective Jacobian
/// scheme is empty.
fn curve_is_smooth(a: &MultiPoly) -> Result<bool, ConstructError> {
    if a.degree() == 2 {
        return Ok(conic_is_smooth(a));
    }
    let ah = a.homogenize(Var::Z, a.degree());
    let jac = vec![
        ah.derivative(Var::X),
        ah.derivative(Var::Y),
        ah.derivative(Var::Z),
    ];
    match projective_colength(&jac) {
        Ok(0) => Ok(true),
        Ok(_) => Ok(false),
        Err(SchemeError::Unstable) => Ok(false),
        Err(e) => Err(e.into()),
    }
}

fn random_affine(rng: &mut ChaCha8Rng, degree: u32) -> MultiPoly {
    loop {
        let mut f = MultiPoly::zero();
        for d in 0..=degree {
            for a in 0..=d {
                let c = rng.gen_range(-9i64..=9);
                if c != 0 {
                    f = f.add(&MultiPoly::monomial(Exponent([a, d - a, 0]), rat(c)));
                }
            }
        }
        // insist on full degree and a nonzero leading y coefficient so the
        // resultant certificates see everything
        if f.degree() == degree && f.coeff(&Exponent([0, degree, 0])) != Rat::zero() {
            return f;
        }
    }
}

// -- general singular-locus analysis -------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct AnalyzedPoint {
    pub point: [String; 2],
    pub label: Option<String>,
    pub record: SingularityRecord,
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularLocus {
    pub total_tau: u64,
    pub rational_points: Vec<AnalyzedPoint>,
    /// Tjurina mass at conjugate point clusters or on the line at
    /// infinity, not attached to any rational affine point.
    pub residual_tau: u64,
}

/// Locate and classify the rational affine singular points of a reduced
/// curve; everything else is accounted for exactly in the residual.
pub fn verify_singularities(f: &MultiPoly) -> Result<SingularLocus, ConstructError> {
    let total_tau = total_tjurina(f)?;
    let fx = f.derivative(Var::X);
    let fy = f.derivative(Var::Y);

    let mut points: Vec<(Rat, Rat)> = Vec::new();
    if let Ok(r) = resultant(&fx, &fy, Var::Y) {
        if !r.is_zero() {
            let split = rational_roots(&r, Var::X)
                .map_err(|e| ConstructError::Verification(e.to_string()))?;
            for (x0, _) in split.roots {
                // rational y with f = f_x = f_y = 0 on this vertical line
                let fx0 = fx.eval_var(Var::X, &x0);
                let fy0 = fy.eval_var(Var::X, &x0);
                let f0 = f.eval_var(Var::X, &x0);
                let mut g = univariate_gcd(&fx0, &fy0, Var::Y);
                g = univariate_gcd(&g, &f0, Var::Y);
                if g.degree() == 0 {
                    continue;
                }
                let ys = rational_roots(&g, Var::Y)
                    .map_err(|e| ConstructError::Verification(e.to_string()))?;
                for (y0, _) in ys.roots {
                    points.push((x0.clone(), y0));
                }
            }
        }
    }

    let mut analyzed = Vec::new();
    let mut rational_tau = 0u64;
    for p in points {
        if local::multiplicity(f, &p) < 2 {
            continue;
        }
        let tree = resolve(f, &p)?;
        let record = invariants_from_tree(&tree)?;
        rational_tau += record.tau;
        let label = classify(&tree, &record);
        analyzed.push(AnalyzedPoint {
            point: [p.0.to_string(), p.1.to_string()],
            label,
            record,
        });
    }
    if rational_tau > total_tau {
        return Err(ConstructError::Verification(format!(
            "rational points carry Tjurina mass {} above the global total {}",
            rational_tau, total_tau
        )));
    }
    Ok(SingularLocus {
        total_tau,
        residual_tau: total_tau - rational_tau,
        rational_points: analyzed,
    })
}

/// Match the resolved germ against the catalog types by cluster graph.
pub fn classify(
    tree: &crate::resolution::ResolutionTree,
    record: &SingularityRecord,
) -> Option<String> {
    let candidates: Vec<CatalogType> = vec![
        CatalogType::A(record.mu as u32),
        CatalogType::D(record.mu as u32),
        CatalogType::E(record.mu as u32),
        CatalogType::Ordinary(record.multiplicity),
    ];
    let own = graph_of(&essential_cluster(tree)).canonical_form();
    for t in candidates {
        let valid = match t {
            CatalogType::A(k) => k >= 1,
            CatalogType::D(k) => k >= 4,
            CatalogType::E(k) => (6..=8).contains(&k),
            CatalogType::Ordinary(m) => m >= 2,
        };
        if !valid {
            continue;
        }
        let Ok(reference) = resolve(&t.germ(), &(rat(0), rat(0))) else {
            continue;
        };
        let Ok(ref_record) = invariants_from_tree(&reference) else {
            continue;
        };
        if ref_record.mu != record.mu || ref_record.delta != record.delta {
            continue;
        }
        let g = graph_of(&essential_cluster(&reference));
        if g.canonical_form() == own {
            return Some(t.name());
        }
    }
    None
}

// -- dimension counts ------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct DimensionReport {
    pub p: u32,
    pub d: u32,
    pub dim_expected_family: i64,
    pub dim_assembled_family: i64,
    /// the degree window in which the assembled family is strictly larger
    pub window_valid: bool,
    pub assembled_exceeds_expected: bool,
}

/// The two dimension counts for the family with `6p^2` cusps in degree
/// `d`: the expected dimension `d(d+3)/2 - 12p^2` and the dimension of
/// the assembled family, computed both as the explicit sum over the
/// component curves and through the rearranged closed form (the two must
/// agree).
pub fn prop_dimensions(p: u32, d: u32) -> Result<DimensionReport, ConstructError> {
    if p == 0 || d == 0 {
        return Err(ConstructError::BadParameters(
            "p and d must be positive".into(),
        ));
    }
    let (pi, di) = (p as i64, d as i64);
    let expected = di * (di + 3) / 2 - 12 * pi * pi;

    // explicit four-term sum over the spaces of component curves
    let e = di - 6 * pi;
    if e <= 0 {
        return Err(ConstructError::BadParameters(
            "the assembled family needs d > 6p".into(),
        ));
    }
    let sum_form = pi * (2 * pi + 3) + (9 * pi * (pi + 1)) / 2 + e * (e + 3) + 1;

    // rearranged closed form, evaluated in exact rationals
    let dr = rat(di);
    let pr = rat(pi);
    let closed = dr.clone() * (dr.clone() + rat(3)) / rat(2) - rat(12) * pr.clone() * pr.clone()
        + (dr.clone() * dr.clone() / rat(2) - dr.clone() * (rat(12) * pr.clone() - ratio(3, 2))
            + (rat(109) * pr.clone() * pr.clone() - rat(21) * pr.clone() + rat(2)) / rat(2));
    let closed_int = {
        assert!(closed.is_integer(), "closed form must be an integer");
        let n = closed.to_integer();
        i64::try_from(&n).map_err(|_| {
            ConstructError::BadParameters("dimension overflows 64 bits".into())
        })?
    };
    if closed_int != sum_form {
        return Err(ConstructError::Verification(format!(
            "two dimension formulas disagree: {} vs {}",
            sum_form, closed_int
        )));
    }

    // validity window: p >= 15 and 6p < d <= 12p - 3/2 - sqrt(35p^2 - 15p + 1/4),
    // the square root compared exactly by squaring
    let window_valid = p >= 15 && 6 * pi < di && {
        let w = rat(12 * pi) - ratio(3, 2) - dr.clone();
        let e = rat(35) * pr.clone() * pr.clone() - rat(15) * pr + ratio(1, 4);
        w >= Rat::zero() && w.clone() * w >= e
    };

    Ok(DimensionReport {
        p,
        d,
        dim_expected_family: expected,
        dim_assembled_family: sum_form,
        window_valid,
        assembled_exceeds_expected: sum_form > expected,
    })
}
