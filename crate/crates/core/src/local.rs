//! Computations in the local ring of the plane at a rational point:
//! truncated jets, certified ideal colengths, the ideals attached to a
//! curve germ and local intersection multiplicities.
//!
//! A colength is never guessed from a single truncation order.  The
//! certificate requires the quotient dimension to agree at two consecutive
//! jet orders *and* the full degree-`N` monomial slice to lie in the
//! truncated ideal, which pins the value exactly.

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::Exponent;
use crate::algebra::{bivariate_gcd, rat, MultiPoly, QMatrix, Rat, Var};

/// Hard cap on the jet order used while searching for a stable colength.
pub const DEFAULT_JET_CAP: u32 = 64;

static JET_CAP: std::sync::atomic::AtomicU32 = std::sync::atomic::AtomicU32::new(DEFAULT_JET_CAP);

/// Process-wide override of the stabilization cap, meant to be set once
/// at startup by a front end.  Library code that needs a specific cap
/// should call `colength_capped` instead.
pub fn set_jet_cap(cap: u32) {
    JET_CAP.store(cap.max(8), std::sync::atomic::Ordering::Relaxed);
}

pub fn jet_cap() -> u32 {
    JET_CAP.load(std::sync::atomic::Ordering::Relaxed)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalError {
    #[error("ideal is not zero-dimensional: quotient kept growing up to jet order {cap}")]
    NotZeroDimensional { cap: u32 },
    #[error("the point does not lie on the curve")]
    PointNotOnCurve,
    #[error("the point is not a singular point of the curve")]
    NotSingular,
    #[error("the germs share a component through the point")]
    CommonComponent,
    #[error("the singularity is not isolated")]
    NotIsolated,
    #[error("zero polynomial where a curve germ was expected")]
    ZeroPolynomial,
}

/// An ideal of germs at a rational point of the affine plane.
#[derive(Clone, Debug)]
pub struct LocalIdeal {
    pub point: (Rat, Rat),
    pub gens: Vec<MultiPoly>,
}

impl LocalIdeal {
    pub fn at_origin(gens: Vec<MultiPoly>) -> Self {
        LocalIdeal {
            point: (rat(0), rat(0)),
            gens,
        }
    }

    pub fn new(point: (Rat, Rat), gens: Vec<MultiPoly>) -> Self {
        LocalIdeal { point, gens }
    }

    /// Generators rewritten in coordinates centered at the base point.
    pub fn centered_gens(&self) -> Vec<MultiPoly> {
        self.gens
            .iter()
            .map(|g| g.translate(&self.point))
            .filter(|g| !g.is_zero())
            .collect()
    }

    /// Add a generator (a germ given in global coordinates).
    pub fn with_extra(&self, extra: &MultiPoly) -> LocalIdeal {
        let mut gens = self.gens.clone();
        gens.push(extra.clone());
        LocalIdeal {
            point: self.point.clone(),
            gens,
        }
    }

    pub fn colength(&self) -> Result<ColengthCertificate, LocalError> {
        self.colength_capped(jet_cap())
    }

    pub fn colength_capped(&self, cap: u32) -> Result<ColengthCertificate, LocalError> {
        colength_of_gens(&self.centered_gens(), cap)
    }
}

/// A certified colength: the value, the jet order `N` at which the
/// degree-`N` slice was verified to lie in the ideal, and the monomial
/// staircase spanning the quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColengthCertificate {
    pub colength: usize,
    pub order: u32,
    /// Exponents `(a, b)` of the quotient basis monomials, sorted.
    pub staircase: Vec<(u32, u32)>,
}

/// Monomials of total degree at most `order`, largest first in graded-lex
/// order.  With this column order the Gaussian pivots prefer high-degree
/// monomials, so the non-pivot columns form the lex-smallest staircase.
pub fn jet_monomials_desc(order: u32) -> Vec<(u32, u32)> {
    let mut v = Vec::new();
    for d in (0..=order).rev() {
        for a in (0..=d).rev() {
            v.push((a, d - a));
        }
    }
    v
}

fn monomial_index(order: u32, a: u32, b: u32) -> Option<usize> {
    let d = a + b;
    if d > order {
        return None;
    }
    // monomials of degree > d come first: sum_{e=d+1..order} (e+1)
    let before: u32 = (d + 1..=order).map(|e| e + 1).sum();
    Some((before + (d - a)) as usize)
}

fn poly_to_jet_row(p: &MultiPoly, order: u32, width: usize) -> Vec<Rat> {
    let mut row = vec![Rat::zero(); width];
    for (e, c) in p.terms() {
        if let Some(i) = monomial_index(order, e.0[0], e.0[1]) {
            row[i] = c.clone();
        }
    }
    row
}

/// The jet matrix of an ideal at a given truncation order: its rows span
/// the images of all monomial multiples of the generators inside the
/// space of jets of order `order`.  Columns follow `jet_monomials_desc`.
pub fn jet_matrix(gens: &[MultiPoly], order: u32) -> QMatrix {
    let width = jet_monomials_desc(order).len();
    let mut m = QMatrix::new(width);
    for g in gens {
        let g = g.primitive_normalized();
        if g.is_zero() {
            continue;
        }
        let ord = g.order();
        if ord > order {
            continue;
        }
        for a in 0..=(order - ord) {
            for b in 0..=(order - ord - a) {
                let mon = MultiPoly::monomial(Exponent([a, b, 0]), rat(1));
                let prod = mon.mul(&g).truncate_jet(order);
                if !prod.is_zero() {
                    m.push_row(poly_to_jet_row(&prod, order, width));
                }
            }
        }
    }
    m
}

/// Reduction data for the quotient by an ideal at a fixed jet order.
/// `staircase` spans the quotient; `reduce_poly` maps a germ to its
/// quotient coordinates.
pub struct JetQuotient {
    pub order: u32,
    cols: Vec<(u32, u32)>,
    rref: QMatrix,
    pivots: Vec<usize>,
    pub staircase: Vec<(u32, u32)>,
    staircase_cols: Vec<usize>,
}

impl JetQuotient {
    pub fn build(gens: &[MultiPoly], order: u32) -> JetQuotient {
        let cols = jet_monomials_desc(order);
        let mut m = jet_matrix(gens, order);
        let pivots = m.rref();
        let mut is_pivot = vec![false; cols.len()];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let staircase_cols: Vec<usize> = (0..cols.len()).filter(|i| !is_pivot[*i]).collect();
        let staircase: Vec<(u32, u32)> = staircase_cols.iter().map(|&i| cols[i]).collect();
        JetQuotient {
            order,
            cols,
            rref: m,
            pivots,
            staircase,
            staircase_cols,
        }
    }

    pub fn quotient_dim(&self) -> usize {
        self.cols.len() - self.pivots.len()
    }

    /// True when every monomial of degree exactly `order` lies in the
    /// ideal modulo higher order, which certifies that the quotient
    /// dimension is the actual colength.
    pub fn slice_in_ideal(&self) -> bool {
        let n = self.order;
        for (i, &(a, b)) in self.cols.iter().enumerate() {
            if a + b == n {
                let mut unit = vec![Rat::zero(); self.cols.len()];
                unit[i] = rat(1);
                let residual = self.rref.reduce_against_rref(&self.pivots, &unit);
                if residual.iter().any(|v| !v.is_zero()) {
                    return false;
                }
            }
        }
        true
    }

    /// Coordinates of a germ on the staircase monomials, i.e. its class in
    /// the quotient.  The germ is truncated at the jet order first.
    pub fn reduce_poly(&self, p: &MultiPoly) -> Vec<Rat> {
        let row = poly_to_jet_row(&p.truncate_jet(self.order), self.order, self.cols.len());
        let residual = self.rref.reduce_against_rref(&self.pivots, &row);
        self.staircase_cols
            .iter()
            .map(|&i| residual[i].clone())
            .collect()
    }
}

fn colength_of_gens(gens: &[MultiPoly], cap: u32) -> Result<ColengthCertificate, LocalError> {
    let gens: Vec<MultiPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if gens.is_empty() {
        return Err(LocalError::NotZeroDimensional { cap });
    }
    // An invertible germ makes the ideal the whole ring.
    if gens.iter().any(|g| g.order() == 0) {
        return Ok(ColengthCertificate {
            colength: 0,
            order: 1,
            staircase: Vec::new(),
        });
    }
    let maxdeg = gens.iter().map(|g| g.degree()).max().unwrap_or(1);
    let mut order = 4.max(2 * maxdeg);
    loop {
        if order > cap {
            return Err(LocalError::NotZeroDimensional { cap });
        }
        let q = JetQuotient::build(&gens, order);
        // the next order only contributes a dimension count, so the cheap
        // fraction-free rank suffices there
        let next_cols = jet_monomials_desc(order + 1).len();
        let next_dim = next_cols - jet_matrix(&gens, order + 1).rank();
        if q.quotient_dim() == next_dim && q.slice_in_ideal() {
            let mut staircase = q.staircase.clone();
            staircase.sort();
            return Ok(ColengthCertificate {
                colength: q.quotient_dim(),
                order: q.order,
                staircase,
            });
        }
        order *= 2;
    }
}

/// Multiplicity of a germ at a point: the order of its lowest jet there.
pub fn multiplicity(f: &MultiPoly, p: &(Rat, Rat)) -> u32 {
    f.translate(p).order()
}

/// Tjurina ideal `<f, f_x, f_y>` of a curve germ at a singular point.
pub fn tjurina_ideal(f: &MultiPoly, p: &(Rat, Rat)) -> Result<LocalIdeal, LocalError> {
    check_singular(f, p)?;
    Ok(LocalIdeal::new(
        p.clone(),
        vec![f.clone(), f.derivative(Var::X), f.derivative(Var::Y)],
    ))
}

/// Milnor ideal `<f_x, f_y>` at a singular point.
pub fn milnor_ideal(f: &MultiPoly, p: &(Rat, Rat)) -> Result<LocalIdeal, LocalError> {
    check_singular(f, p)?;
    Ok(LocalIdeal::new(
        p.clone(),
        vec![f.derivative(Var::X), f.derivative(Var::Y)],
    ))
}

/// The ideal `<f> + m·j(f)` cutting out deformations that fix both the
/// analytic type and the position of the singular point.  Its colength is
/// the Tjurina number plus two.
pub fn iea_fix_ideal(f: &MultiPoly, p: &(Rat, Rat)) -> Result<LocalIdeal, LocalError> {
    check_singular(f, p)?;
    let x = MultiPoly::var(Var::X).sub(&MultiPoly::constant(p.0.clone()));
    let y = MultiPoly::var(Var::Y).sub(&MultiPoly::constant(p.1.clone()));
    let j = [f.clone(), f.derivative(Var::X), f.derivative(Var::Y)];
    let mut gens = vec![f.clone()];
    for g in &j {
        gens.push(x.mul(g));
        gens.push(y.mul(g));
    }
    Ok(LocalIdeal::new(p.clone(), gens))
}

fn check_singular(f: &MultiPoly, p: &(Rat, Rat)) -> Result<(), LocalError> {
    if f.is_zero() {
        return Err(LocalError::ZeroPolynomial);
    }
    let g = f.translate(p);
    if !g.coeff(&Exponent([0, 0, 0])).is_zero() {
        return Err(LocalError::PointNotOnCurve);
    }
    if g.order() < 2 {
        return Err(LocalError::NotSingular);
    }
    Ok(())
}

/// Local intersection multiplicity of two germs at a point, as the
/// colength of `<f, g>`.  A shared component through the point is
/// detected exactly via the polynomial gcd and reported as an error.
pub fn intersection_multiplicity(
    f: &MultiPoly,
    g: &MultiPoly,
    p: &(Rat, Rat),
) -> Result<usize, LocalError> {
    if f.is_zero() || g.is_zero() {
        return Err(LocalError::ZeroPolynomial);
    }
    let h = bivariate_gcd(f, g);
    if !h.is_constant() && h.translate(p).coeff(&Exponent([0, 0, 0])).is_zero() {
        return Err(LocalError::CommonComponent);
    }
    let cert = LocalIdeal::new(p.clone(), vec![f.clone(), g.clone()]).colength()?;
    Ok(cert.colength)
}

/// Milnor number as the colength of the Milnor ideal; an unbounded
/// quotient means the singularity is not isolated.
pub fn milnor_number(f: &MultiPoly, p: &(Rat, Rat)) -> Result<usize, LocalError> {
    let ideal = milnor_ideal(f, p)?;
    match ideal.colength() {
        Ok(cert) => Ok(cert.colength),
        Err(LocalError::NotZeroDimensional { .. }) => Err(LocalError::NotIsolated),
        Err(e) => Err(e),
    }
}

/// Tjurina number: colength of the Tjurina ideal.
pub fn tjurina_number(f: &MultiPoly, p: &(Rat, Rat)) -> Result<usize, LocalError> {
    let ideal = tjurina_ideal(f, p)?;
    match ideal.colength() {
        Ok(cert) => Ok(cert.colength),
        Err(LocalError::NotZeroDimensional { .. }) => Err(LocalError::NotIsolated),
        Err(e) => Err(e),
    }
}

/// The ideal of combinations `a0·f + a1·f_x + a2·f_y` whose cofactor pair
/// `(a1, a2)` annihilates the Hessian of `f` modulo the Tjurina ideal.
/// The congruence is solved on jets of order `mu + 2`; a re-solve at
/// `mu + 4` serves the tests as a self-consistency oracle.
pub fn tilde_ia_ideal(f: &MultiPoly, p: &(Rat, Rat)) -> Result<LocalIdeal, LocalError> {
    let mu = milnor_number(f, p)?;
    tilde_ia_ideal_at_order(f, p, mu as u32 + 2)
}

pub fn tilde_ia_ideal_at_order(
    f: &MultiPoly,
    p: &(Rat, Rat),
    order: u32,
) -> Result<LocalIdeal, LocalError> {
    check_singular(f, p)?;
    let f0 = f.translate(p);
    let fx = f0.derivative(Var::X);
    let fy = f0.derivative(Var::Y);
    let jac = vec![f0.clone(), fx.clone(), fy.clone()];
    let quo = JetQuotient::build(&jac, order);

    // Hessian entries of the translated germ.
    let fxx = fx.derivative(Var::X);
    let fxy = fx.derivative(Var::Y);
    let fyy = fy.derivative(Var::Y);

    // Unknowns: coefficients of a1 and a2 as jets of the working order.
    let mons = jet_monomials_desc(order);
    let t = mons.len();
    let width = quo.staircase.len();
    let mut conditions = QMatrix::new(2 * t);
    for (h_first, h_second) in [(&fxx, &fxy), (&fxy, &fyy)] {
        // Quotient class of a1*h_first + a2*h_second, one column per unknown.
        let mut block = vec![vec![Rat::zero(); 2 * t]; width];
        for u in 0..2 * t {
            let (slot, mi) = (u / t, u % t);
            let h = if slot == 0 { h_first } else { h_second };
            let mon = MultiPoly::monomial(Exponent([mons[mi].0, mons[mi].1, 0]), rat(1));
            let coords = quo.reduce_poly(&mon.mul(h));
            for (r, c) in coords.into_iter().enumerate() {
                block[r][u] = c;
            }
        }
        for row in block {
            conditions.push_row(row);
        }
    }
    let (_rank, kernel) = conditions.kernel_and_rank();

    let mut gens = vec![f.clone()];
    for sol in kernel {
        let mut a1 = MultiPoly::zero();
        let mut a2 = MultiPoly::zero();
        for (i, &(a, b)) in mons.iter().enumerate() {
            if !sol[i].is_zero() {
                a1 = a1.add(&MultiPoly::monomial(Exponent([a, b, 0]), sol[i].clone()));
            }
            if !sol[t + i].is_zero() {
                a2 = a2.add(&MultiPoly::monomial(Exponent([a, b, 0]), sol[t + i].clone()));
            }
        }
        // Back to global coordinates around the base point.
        let back = (-p.0.clone(), -p.1.clone());
        let g = a1.mul(&fx).add(&a2.mul(&fy)).translate(&back);
        if !g.is_zero() {
            gens.push(g);
        }
    }
    Ok(LocalIdeal::new(p.clone(), gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, ratio};

    fn origin() -> (Rat, Rat) {
        (rat(0), rat(0))
    }

    fn gens(strs: &[&str]) -> Vec<MultiPoly> {
        strs.iter().map(|s| parse_poly(s).unwrap()).collect()
    }

    #[test]
    fn maximal_ideal_has_colength_one() {
        let c = LocalIdeal::at_origin(gens(&["x", "y"])).colength().unwrap();
        assert_eq!(c.colength, 1);
        assert_eq!(c.staircase, vec![(0, 0)]);
    }

    #[test]
    fn staircase_of_x_yk() {
        for k in 1..=6u32 {
            let yk = format!("y^{}", k);
            let c = LocalIdeal::at_origin(gens(&["x", &yk])).colength().unwrap();
            assert_eq!(c.colength, k as usize, "colength of <x, y^{}>", k);
        }
    }

    #[test]
    fn staircase_of_x2_y2() {
        let c = LocalIdeal::at_origin(gens(&["x^2", "y^2"])).colength().unwrap();
        assert_eq!(c.colength, 4);
        assert_eq!(c.staircase, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
    }

    #[test]
    fn principal_ideal_diverges() {
        let err = LocalIdeal::at_origin(gens(&["x^2 - y^3"]))
            .colength_capped(32)
            .unwrap_err();
        assert!(matches!(err, LocalError::NotZeroDimensional { .. }));
    }

    #[test]
    fn jet_matrix_of_squares_leaves_expected_quotient() {
        // <x^2, y^2> at order 3: quotient basis {1, x, y, xy}
        let q = JetQuotient::build(&gens(&["x^2", "y^2"]), 3);
        let mut sc = q.staircase.clone();
        sc.sort();
        assert_eq!(sc, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
    }

    #[test]
    fn tjurina_numbers_of_small_germs() {
        let node = parse_poly("x^2 - y^2").unwrap();
        assert_eq!(tjurina_number(&node, &origin()).unwrap(), 1);
        for k in 1..=6 {
            let f = parse_poly(&format!("x^2 - y^{}", k + 1)).unwrap();
            assert_eq!(tjurina_number(&f, &origin()).unwrap(), k, "tau of A_{}", k);
        }
        // x^3 - y^3: the Tjurina ideal collapses to <x^2, y^2>
        let d4 = parse_poly("x^3 - y^3").unwrap();
        assert_eq!(tjurina_number(&d4, &origin()).unwrap(), 4);
    }

    #[test]
    fn tjurina_rejects_smooth_and_off_curve_points() {
        let f = parse_poly("x^2 - y^3").unwrap();
        assert!(matches!(
            tjurina_ideal(&f, &(rat(1), rat(2))),
            Err(LocalError::PointNotOnCurve)
        ));
        let smooth = parse_poly("y - x^2").unwrap();
        assert!(matches!(
            tjurina_ideal(&smooth, &origin()),
            Err(LocalError::NotSingular)
        ));
    }

    #[test]
    fn iea_fix_colengths() {
        let node = parse_poly("x^2 - y^2").unwrap();
        let cusp = parse_poly("x^2 - y^3").unwrap();
        let a3 = parse_poly("x^2 - y^4").unwrap();
        assert_eq!(iea_fix_ideal(&node, &origin()).unwrap().colength().unwrap().colength, 3);
        assert_eq!(iea_fix_ideal(&cusp, &origin()).unwrap().colength().unwrap().colength, 4);
        assert_eq!(iea_fix_ideal(&a3, &origin()).unwrap().colength().unwrap().colength, 5);
    }

    #[test]
    fn iea_fix_away_from_origin() {
        // same germ moved to (1, -2); colength must not change
        let f = parse_poly("x^2 - y^3")
            .unwrap()
            .translate(&(rat(-1), rat(2)));
        let p = (rat(1), rat(-2));
        assert_eq!(iea_fix_ideal(&f, &p).unwrap().colength().unwrap().colength, 4);
    }

    #[test]
    fn intersection_multiplicities_of_cusp() {
        let f = parse_poly("x^2 - y^3").unwrap();
        let x = parse_poly("x").unwrap();
        let y = parse_poly("y").unwrap();
        let g = parse_poly("x^3 - y^2").unwrap();
        assert_eq!(intersection_multiplicity(&f, &x, &origin()).unwrap(), 3);
        assert_eq!(intersection_multiplicity(&f, &y, &origin()).unwrap(), 2);
        assert_eq!(intersection_multiplicity(&f, &g, &origin()).unwrap(), 4);
    }

    #[test]
    fn intersection_detects_common_component() {
        let f = parse_poly("x*(y - x^2)").unwrap();
        let g = parse_poly("x*(y + x)").unwrap();
        assert!(matches!(
            intersection_multiplicity(&f, &g, &origin()),
            Err(LocalError::CommonComponent)
        ));
        // a common factor away from the point is harmless
        let f2 = parse_poly("(x - 1)*y").unwrap();
        let g2 = parse_poly("(x - 1)*(y - x)").unwrap();
        assert_eq!(intersection_multiplicity(&f2, &g2, &origin()).unwrap(), 1);
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(multiplicity(&parse_poly("x^2 - y^3").unwrap(), &origin()), 2);
        assert_eq!(multiplicity(&parse_poly("y - x^2").unwrap(), &origin()), 1);
        assert_eq!(multiplicity(&parse_poly("x^3 - y^3").unwrap(), &origin()), 3);
    }

    #[test]
    fn tilde_ia_of_quadric_is_square_of_maximal_ideal() {
        let f = parse_poly("x^2 + y^2").unwrap();
        let ideal = tilde_ia_ideal(&f, &origin()).unwrap();
        let cert = ideal.colength().unwrap();
        assert_eq!(cert.colength, 3);
        assert_eq!(cert.staircase, vec![(0, 0), (0, 1), (1, 0)]);
    }

    #[test]
    fn tilde_ia_self_consistency_for_cusp() {
        let f = parse_poly("x^2 - y^3").unwrap();
        let mu = milnor_number(&f, &origin()).unwrap() as u32;
        let a = tilde_ia_ideal_at_order(&f, &origin(), mu + 2)
            .unwrap()
            .colength()
            .unwrap();
        let b = tilde_ia_ideal_at_order(&f, &origin(), mu + 4)
            .unwrap()
            .colength()
            .unwrap();
        assert_eq!(a.colength, b.colength);
    }

    #[test]
    fn tilde_ia_invariant_under_linear_change() {
        for f in ["x^2 - y^3", "x^2 - y^4", "x^3 - y^3"] {
            let f = parse_poly(f).unwrap();
            let base = tilde_ia_ideal(&f, &origin())
                .unwrap()
                .colength()
                .unwrap()
                .colength;
            // psi: x -> x + 2y, y -> x - y  (invertible over the rationals)
            let g = f.substitute(&[
                (Var::X, parse_poly("x + 2*y").unwrap()),
                (Var::Y, parse_poly("x - y").unwrap()),
            ]);
            let changed = tilde_ia_ideal(&g, &origin())
                .unwrap()
                .colength()
                .unwrap()
                .colength;
            assert_eq!(base, changed, "colength changed under coordinate change");
        }
    }

    #[test]
    fn tilde_ia_contained_in_tjurina_and_contains_f() {
        let f = parse_poly("x^2 - y^3").unwrap();
        let ideal = tilde_ia_ideal(&f, &origin()).unwrap();
        assert_eq!(ideal.gens[0], f);
        // every generator must reduce to zero in the quotient by j(f)
        let jac = vec![f.clone(), f.derivative(Var::X), f.derivative(Var::Y)];
        let quo = JetQuotient::build(&jac, 8);
        for g in &ideal.gens {
            let coords = quo.reduce_poly(g);
            assert!(coords.iter().all(|c| c.is_zero()), "generator escapes j(f)");
        }
    }

    #[test]
    fn deformation_inside_tilde_ia_preserves_tjurina() {
        // f + t*g stays contact equivalent to f for g in the
        // Hessian-congruence ideal and generic t, so tau cannot move.
        for fstr in ["x^2 - y^3", "x^2 - y^5", "x^3 - y^3"] {
            let f = parse_poly(fstr).unwrap();
            let tau = tjurina_number(&f, &origin()).unwrap();
            let ideal = tilde_ia_ideal(&f, &origin()).unwrap();
            for (i, g) in ideal.gens.iter().enumerate().take(4) {
                for t in [rat(1), rat(-2), ratio(1, 3)] {
                    let moved = f.add(&g.scale(&t));
                    let tau_moved = tjurina_number(&moved, &origin()).unwrap();
                    assert_eq!(
                        tau, tau_moved,
                        "tau moved for {} with generator {} and t={}",
                        fstr, i, t
                    );
                }
            }
        }
    }
}
