use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{rat, Rat};

/// One of the three supported variables.  Affine curves and germs live in
/// `x, y`; projective curves additionally use `z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X = 0,
    Y = 1,
    Z = 2,
}

impl Var {
    pub fn name(self) -> char {
        match self {
            Var::X => 'x',
            Var::Y => 'y',
            Var::Z => 'z',
        }
    }
}

/// Exponent vector for a monomial `x^a y^b z^c`.
///
/// The ordering is graded lexicographic with `x > y > z`: compare total
/// degree first, then the exponent of `x`, then of `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Exponent(pub [u32; 3]);

impl Exponent {
    pub fn degree(&self) -> u32 {
        self.0[0] + self.0[1] + self.0[2]
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 3];
        e[v as usize] = 1;
        Exponent(e)
    }

    fn mul(&self, other: &Exponent) -> Exponent {
        Exponent([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.0[0].cmp(&other.0[0]))
            .then(self.0[1].cmp(&other.0[1]))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over the rationals in the variables `x, y, z`.
///
/// Invariant: no zero coefficient is ever stored, so structural equality
/// is semantic equality.  The term map is keyed by graded-lex order.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Exponent, Rat>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(rat(1))
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = MultiPoly::zero();
        if !c.is_zero() {
            p.terms.insert(Exponent([0, 0, 0]), c);
        }
        p
    }

    pub fn var(v: Var) -> Self {
        MultiPoly::monomial(Exponent::var(v), rat(1))
    }

    pub fn monomial(e: Exponent, c: Rat) -> Self {
        let mut p = MultiPoly::zero();
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exponent, Rat)>) -> Self {
        let mut p = MultiPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.degree() == 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &Exponent) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    /// Total degree; zero polynomial reports 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.degree()).max().unwrap_or(0)
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|e| e.0[v as usize]).max().unwrap_or(0)
    }

    /// Order at the origin: the minimal total degree of a term.  This is
    /// the multiplicity of the germ at `0`.  Zero polynomial reports 0.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|e| e.degree()).min().unwrap_or(0)
    }

    /// True if the variable actually occurs.
    pub fn uses(&self, v: Var) -> bool {
        self.terms.keys().any(|e| e.0[v as usize] > 0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn add_term(&mut self, e: Exponent, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get().clone() + c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.mul(eb), ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, t)| (*e, t.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut out = MultiPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                out = out.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    pub fn derivative(&self, v: Var) -> MultiPoly {
        let i = v as usize;
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            if e.0[i] > 0 {
                let mut f = *e;
                f.0[i] -= 1;
                out.add_term(f, c.clone() * rat(e.0[i] as i64));
            }
        }
        out
    }

    /// Substitute a polynomial for each variable simultaneously.
    pub fn substitute(&self, images: &[(Var, MultiPoly)]) -> MultiPoly {
        let image = |v: Var| -> MultiPoly {
            images
                .iter()
                .find(|(w, _)| *w == v)
                .map(|(_, p)| p.clone())
                .unwrap_or_else(|| MultiPoly::var(v))
        };
        let (ix, iy, iz) = (image(Var::X), image(Var::Y), image(Var::Z));
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(c.clone());
            if e.0[0] > 0 {
                term = term.mul(&ix.pow(e.0[0]));
            }
            if e.0[1] > 0 {
                term = term.mul(&iy.pow(e.0[1]));
            }
            if e.0[2] > 0 {
                term = term.mul(&iz.pow(e.0[2]));
            }
            out = out.add(&term);
        }
        out
    }

    /// Shift coordinates so that `p` becomes the origin: `x -> x + p.0`,
    /// `y -> y + p.1`.
    pub fn translate(&self, p: &(Rat, Rat)) -> MultiPoly {
        self.substitute(&[
            (Var::X, MultiPoly::var(Var::X).add(&MultiPoly::constant(p.0.clone()))),
            (Var::Y, MultiPoly::var(Var::Y).add(&MultiPoly::constant(p.1.clone()))),
        ])
    }

    pub fn eval_xy(&self, x: &Rat, y: &Rat) -> Rat {
        assert!(!self.uses(Var::Z), "eval_xy on a trivariate polynomial");
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..e.0[0] {
                t *= x.clone();
            }
            for _ in 0..e.0[1] {
                t *= y.clone();
            }
            acc += t;
        }
        acc
    }

    /// Evaluate one variable at a rational, leaving a polynomial in the rest.
    pub fn eval_var(&self, v: Var, value: &Rat) -> MultiPoly {
        let i = v as usize;
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..e.0[i] {
                t *= value.clone();
            }
            let mut f = *e;
            f.0[i] = 0;
            out.add_term(f, t);
        }
        out
    }

    /// Homogenize with respect to `v` up to the given degree.
    ///
    /// Panics if `degree` is smaller than the total degree or if `v`
    /// already occurs.
    pub fn homogenize(&self, v: Var, degree: u32) -> MultiPoly {
        assert!(!self.uses(v), "homogenization variable already occurs");
        assert!(degree >= self.degree(), "homogenization degree too small");
        let i = v as usize;
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            let mut f = *e;
            f.0[i] = degree - e.degree();
            out.add_term(f, c.clone());
        }
        out
    }

    /// Set `v = 1`.
    pub fn dehomogenize(&self, v: Var) -> MultiPoly {
        self.eval_var(v, &rat(1))
    }

    /// Drop every term of total degree above `order`.
    pub fn truncate_jet(&self, order: u32) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() <= order)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// The part of minimal total degree (the tangent cone of the germ at 0).
    pub fn lowest_form(&self) -> MultiPoly {
        let m = self.order();
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() == m)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// The part of exactly the given total degree.
    pub fn degree_part(&self, d: u32) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() == d)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Leading term in graded-lex order (largest exponent).
    pub fn leading(&self) -> Option<(&Exponent, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Divide by `v^k`; panics unless every term is divisible.
    pub fn div_var_power(&self, v: Var, k: u32) -> MultiPoly {
        let i = v as usize;
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    assert!(e.0[i] >= k, "term not divisible by {}^{}", v.name(), k);
                    let mut f = *e;
                    f.0[i] -= k;
                    (f, c.clone())
                })
                .collect(),
        }
    }

    /// Largest `k` with `v^k` dividing the polynomial (0 for the zero poly).
    pub fn var_valuation(&self, v: Var) -> u32 {
        self.terms
            .keys()
            .map(|e| e.0[v as usize])
            .min()
            .unwrap_or(0)
    }

    /// Multiply by the smallest positive rational making all coefficients
    /// coprime integers, and normalize the graded-lex leading coefficient
    /// to be positive.  The zero polynomial stays zero.
    pub fn primitive_normalized(&self) -> MultiPoly {
        use num_bigint::BigInt;
        use num_integer::Integer;
        if self.is_zero() {
            return MultiPoly::zero();
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * &den_lcm / c.denom();
            num_gcd = num_gcd.gcd(&n);
        }
        let scale = Rat::new(den_lcm, num_gcd);
        let mut out = self.scale(&scale);
        if out.leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            out = out.neg();
        }
        out
    }

    /// Exact polynomial division; returns `None` when the remainder is
    /// nonzero.  Division is by graded-lex leading terms.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        let (dlead, dc) = {
            let (e, c) = divisor.leading().unwrap();
            (*e, c.clone())
        };
        while !rem.is_zero() {
            let (rlead, rc) = {
                let (e, c) = rem.leading().unwrap();
                (*e, c.clone())
            };
            if rlead.0[0] < dlead.0[0] || rlead.0[1] < dlead.0[1] || rlead.0[2] < dlead.0[2] {
                return None;
            }
            let q = Exponent([
                rlead.0[0] - dlead.0[0],
                rlead.0[1] - dlead.0[1],
                rlead.0[2] - dlead.0[2],
            ]);
            let qc = rc / dc.clone();
            let qterm = MultiPoly::monomial(q, qc);
            rem = rem.sub(&qterm.mul(divisor));
            quot = quot.add(&qterm);
        }
        Some(quot)
    }

    /// Coefficients as a dense vector in `y` (entries are polynomials in
    /// the remaining variables), lowest degree first.
    pub fn coeffs_in(&self, v: Var) -> Vec<MultiPoly> {
        let n = self.degree_in(v) as usize;
        let mut out = vec![MultiPoly::zero(); n + 1];
        let i = v as usize;
        for (e, c) in &self.terms {
            let k = e.0[i] as usize;
            let mut f = *e;
            f.0[i] = 0;
            out[k].add_term(f, c.clone());
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical printing: graded-lex descending, minus signs folded into
    /// the coefficients, `*` between coefficient and variables.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let mut vars = String::new();
            for (i, v) in [Var::X, Var::Y, Var::Z].iter().enumerate() {
                if e.0[i] > 0 {
                    if !vars.is_empty() {
                        vars.push('*');
                    }
                    vars.push(v.name());
                    if e.0[i] > 1 {
                        vars.push_str(&format!("^{}", e.0[i]));
                    }
                }
            }
            if vars.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", vars)?;
            } else {
                write!(f, "{}*{}", mag, vars)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    #[test]
    fn derivative_of_cusp() {
        let f = parse_poly("x^2 - y^3").unwrap();
        assert_eq!(f.derivative(Var::X), parse_poly("2*x").unwrap());
        assert_eq!(f.derivative(Var::Y), parse_poly("-3*y^2").unwrap());
    }

    #[test]
    fn homogenize_dehomogenize() {
        let f = parse_poly("x^2 - y^3").unwrap();
        let h = f.homogenize(Var::Z, 3);
        assert_eq!(h, parse_poly("x^2*z - y^3").unwrap());
        assert!(h.is_homogeneous());
        assert_eq!(h.dehomogenize(Var::Z), f);
    }

    #[test]
    fn blowup_chart_step() {
        // x -> x, y -> x*y in x^2 - y^3, then divide by x^2.
        let f = parse_poly("x^2 - y^3").unwrap();
        let sub = f.substitute(&[(Var::Y, parse_poly("x*y").unwrap())]);
        let strict = sub.div_var_power(Var::X, 2);
        assert_eq!(strict, parse_poly("1 - x*y^3").unwrap());
    }

    #[test]
    fn order_and_lowest_form() {
        let f = parse_poly("x^3 - x*y^2 + y^5").unwrap();
        assert_eq!(f.order(), 3);
        assert_eq!(f.lowest_form(), parse_poly("x^3 - x*y^2").unwrap());
    }

    #[test]
    fn exact_division() {
        let a = parse_poly("x^2 - y^2").unwrap();
        let b = parse_poly("x + y").unwrap();
        assert_eq!(a.div_exact(&b).unwrap(), parse_poly("x - y").unwrap());
        assert!(parse_poly("x^2 + y").unwrap().div_exact(&b).is_none());
    }
}
