use num_traits::{One, Zero};
use thiserror::Error;

use super::poly::{MultiPoly, Var};
use super::{rat, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResultantError {
    #[error("both inputs have degree 0 in the eliminated variable")]
    BothConstant,
    #[error("resultant of the zero polynomial")]
    ZeroInput,
}

/// Resultant of two bivariate polynomials with respect to `eliminated`,
/// as the determinant of the Sylvester matrix.  The result is a
/// polynomial in the remaining variable.
///
/// The determinant is computed by evaluation at enough rational points
/// followed by Lagrange interpolation; the Sylvester matrix is fixed
/// before evaluation, so no leading-coefficient caveats arise.
pub fn resultant(
    a: &MultiPoly,
    b: &MultiPoly,
    eliminated: Var,
) -> Result<MultiPoly, ResultantError> {
    assert!(!a.uses(Var::Z) && !b.uses(Var::Z), "resultant expects bivariate input");
    if a.is_zero() || b.is_zero() {
        return Err(ResultantError::ZeroInput);
    }
    match eliminated {
        Var::Y => resultant_y(a, b),
        Var::X => {
            let swap = |p: &MultiPoly| {
                p.substitute(&[
                    (Var::X, MultiPoly::var(Var::Y)),
                    (Var::Y, MultiPoly::var(Var::X)),
                ])
            };
            resultant_y(&swap(a), &swap(b)).map(|r| swap(&r))
        }
        Var::Z => panic!("resultant eliminates x or y"),
    }
}

fn resultant_y(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly, ResultantError> {
    let m = a.degree_in(Var::Y) as usize;
    let n = b.degree_in(Var::Y) as usize;
    if m == 0 && n == 0 {
        return Err(ResultantError::BothConstant);
    }
    if m == 0 {
        return Ok(a.pow(n as u32));
    }
    if n == 0 {
        return Ok(b.pow(m as u32));
    }
    // Sylvester entries are polynomials in x.
    let ac = a.coeffs_in(Var::Y); // lowest first, length m+1
    let bc = b.coeffs_in(Var::Y);
    let size = m + n;
    let bound = m * b.degree_in(Var::X) as usize + n * a.degree_in(Var::X) as usize;

    let mut xs = Vec::with_capacity(bound + 1);
    let mut ys = Vec::with_capacity(bound + 1);
    let mut t: i64 = 0;
    while xs.len() < bound + 1 {
        let x = rat(t);
        let mut mat = vec![vec![Rat::zero(); size]; size];
        for row in 0..n {
            for (k, c) in ac.iter().rev().enumerate() {
                mat[row][row + k] = c.eval_var(Var::X, &x).coeff(&super::poly::Exponent([0, 0, 0]));
            }
        }
        for row in 0..m {
            for (k, c) in bc.iter().rev().enumerate() {
                mat[n + row][row + k] = c.eval_var(Var::X, &x).coeff(&super::poly::Exponent([0, 0, 0]));
            }
        }
        ys.push(det(mat));
        xs.push(x);
        t = if t > 0 { -t } else { -t + 1 };
    }
    Ok(interpolate(&xs, &ys))
}

/// Determinant via fraction-free Bareiss elimination: rows are scaled to
/// integers and intermediate entries stay minors, which keeps the numbers
/// far smaller than rational elimination would.
fn det(m: Vec<Vec<Rat>>) -> Rat {
    use num_bigint::BigInt;
    use num_integer::Integer;
    let n = m.len();
    if n == 0 {
        return Rat::one();
    }
    let mut scale = Rat::one();
    let mut a: Vec<Vec<BigInt>> = m
        .into_iter()
        .map(|row| {
            let mut lcm = BigInt::from(1);
            for e in &row {
                lcm = lcm.lcm(e.denom());
            }
            scale *= Rat::from_integer(lcm.clone());
            row.into_iter()
                .map(|e| e.numer() * &lcm / e.denom())
                .collect()
        })
        .collect();
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Rat::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for row in tail.iter_mut() {
            for j in (k + 1)..n {
                let v = (&pivot_row[k] * &row[j] - &row[k] * &pivot_row[j]) / &prev;
                row[j] = v;
            }
            row[k] = BigInt::from(0);
        }
        prev = a[k][k].clone();
    }
    let d = Rat::from_integer(a[n - 1][n - 1].clone() * BigInt::from(sign));
    d / scale
}

/// Newton interpolation through distinct rational points: divided
/// differences first, then one pass of products with linear factors.
fn interpolate(xs: &[Rat], ys: &[Rat]) -> MultiPoly {
    let n = xs.len();
    let mut diffs = ys.to_vec();
    // diffs[i] becomes the order-i divided difference
    for level in 1..n {
        for i in (level..n).rev() {
            let num = diffs[i].clone() - diffs[i - 1].clone();
            let den = xs[i].clone() - xs[i - level].clone();
            diffs[i] = num / den;
        }
    }
    let x = MultiPoly::var(Var::X);
    let mut acc = MultiPoly::zero();
    let mut basis = MultiPoly::one();
    for (i, d) in diffs.iter().enumerate() {
        if !d.is_zero() {
            acc = acc.add(&basis.scale(d));
        }
        if i + 1 < n {
            basis = basis.mul(&x.sub(&MultiPoly::constant(xs[i].clone())));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{bivariate_gcd, parse_poly};

    fn res(a: &str, b: &str) -> MultiPoly {
        resultant(
            &parse_poly(a).unwrap(),
            &parse_poly(b).unwrap(),
            Var::Y,
        )
        .unwrap()
    }

    #[test]
    fn evaluation_at_y_zero() {
        assert_eq!(res("y^2 - x^3", "y").to_string(), "-x^3");
    }

    #[test]
    fn two_lines() {
        assert_eq!(res("y - x", "y + x").to_string(), "2*x");
    }

    #[test]
    fn cusp_pair_order_four() {
        // Sylvester determinant of the two transverse-cusp germs: a degree-9
        // polynomial in x whose order at 0 is the local intersection number.
        let r = res("x^2 - y^3", "x^3 - y^2");
        assert_eq!(r.degree(), 9);
        assert_eq!(r.var_valuation(Var::X), 4);
    }

    #[test]
    fn vanishes_iff_common_factor() {
        let a = parse_poly("(x + y)*(x - 2*y)").unwrap();
        let b = parse_poly("(x + y)*(y^2 + x^3)").unwrap();
        assert!(resultant(&a, &b, Var::Y).unwrap().is_zero());
        assert!(bivariate_gcd(&a, &b).degree_in(Var::Y) > 0);

        let c = parse_poly("x - 2*y").unwrap();
        let d = parse_poly("y^2 + x^3").unwrap();
        assert!(!resultant(&c, &d, Var::Y).unwrap().is_zero());
        assert_eq!(bivariate_gcd(&c, &d).degree_in(Var::Y), 0);
    }

    #[test]
    fn degree_zero_cases() {
        assert_eq!(res("x^2", "y - x").to_string(), "x^2");
        assert!(matches!(
            resultant(
                &parse_poly("x").unwrap(),
                &parse_poly("x + 1").unwrap(),
                Var::Y
            ),
            Err(ResultantError::BothConstant)
        ));
    }

    #[test]
    fn eliminate_x_by_symmetry() {
        // product formula: the single root of x - y^2 in x is y^2
        let r = resultant(
            &parse_poly("x - y^2").unwrap(),
            &parse_poly("x").unwrap(),
            Var::X,
        )
        .unwrap();
        assert_eq!(r.to_string(), "y^2");
    }
}
