//! Exact rational-root extraction for univariate polynomials over the
//! rationals.  Candidate roots come from divisors of the outer
//! coefficients, so the integers involved are fully factored first; a
//! composite that resists factoring raises an error instead of risking a
//! missed root.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{MultiPoly, Rat, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("factorization budget exceeded while searching for rational roots")]
    FactorizationBudget,
    #[error("too many divisor candidates while searching for rational roots")]
    TooManyDivisors,
}

/// Rational roots of a univariate polynomial with multiplicities, plus the
/// rootless cofactor (constant exactly when the polynomial splits over the
/// rationals).
pub struct RootSplit {
    pub roots: Vec<(Rat, u32)>,
    pub leftover: MultiPoly,
}

pub fn rational_roots(p: &MultiPoly, v: Var) -> Result<RootSplit, RootError> {
    assert!(!p.is_zero(), "rational_roots of the zero polynomial");
    let mut dense = to_dense(p, v);
    let mut roots: Vec<(Rat, u32)> = Vec::new();

    // split off t^k
    let mut zero_mult = 0;
    while dense.len() > 1 && dense[0].is_zero() {
        dense.remove(0);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((Rat::zero(), zero_mult));
    }

    while dense.len() > 1 {
        if certified_rootless(&dense) {
            break;
        }
        let Some((a, b)) = find_root(&dense)? else {
            break;
        };
        let mut mult = 0;
        while let Some(next) = deflate(&dense, &a, &b) {
            dense = next;
            mult += 1;
        }
        roots.push((Rat::new(a.clone(), b.clone()), mult));
    }
    Ok(RootSplit {
        roots,
        leftover: from_dense(&dense, v),
    })
}

/// Sound certificate that a primitive integer polynomial has no rational
/// roots: a root `a/b` has `b` dividing the leading coefficient, so for a
/// prime not dividing it the root reduces to a root modulo `p`.  Finding
/// one good prime with a rootless reduction settles the question without
/// touching the (possibly enormous) divisor sets.
fn certified_rootless(dense: &[BigInt]) -> bool {
    const PRIMES: [u64; 19] = [
        5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73,
    ];
    'prime: for p in PRIMES {
        let pb = BigInt::from(p);
        let lc = dense.last().unwrap() % &pb;
        if lc.is_zero() {
            continue;
        }
        let residues: Vec<u64> = dense
            .iter()
            .map(|c| {
                let r = c % &pb;
                let r = if r.sign() == num_bigint::Sign::Minus { r + &pb } else { r };
                r.to_u64_digits().1.first().copied().unwrap_or(0)
            })
            .collect();
        for t in 0..p {
            let mut acc: u64 = 0;
            for &c in residues.iter().rev() {
                acc = (acc * t + c) % p;
            }
            if acc == 0 {
                continue 'prime;
            }
        }
        return true;
    }
    false
}

fn to_dense(p: &MultiPoly, v: Var) -> Vec<BigInt> {
    let p = p.primitive_normalized();
    let mut out = vec![BigInt::zero(); p.degree_in(v) as usize + 1];
    for (e, c) in p.terms() {
        for (i, w) in [Var::X, Var::Y, Var::Z].iter().enumerate() {
            assert!(*w == v || e.0[i] == 0, "rational_roots input is not univariate");
        }
        out[e.0[v as usize] as usize] = c.numer().clone();
    }
    out
}

fn from_dense(c: &[BigInt], v: Var) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for (i, a) in c.iter().enumerate() {
        if !a.is_zero() {
            let mut e = [0u32; 3];
            e[v as usize] = i as u32;
            out = out.add(&MultiPoly::monomial(
                crate::algebra::Exponent(e),
                Rat::from_integer(a.clone()),
            ));
        }
    }
    out
}

/// Find one rational root `a/b` in lowest terms (b > 0), if any.
fn find_root(dense: &[BigInt]) -> Result<Option<(BigInt, BigInt)>, RootError> {
    let c0 = dense.first().unwrap().magnitude().clone();
    let lc = dense.last().unwrap().magnitude().clone();
    let nums = divisors(&c0)?;
    let dens = divisors(&lc)?;
    if nums.len().saturating_mul(dens.len()) > 200_000 {
        return Err(RootError::TooManyDivisors);
    }
    for b in &dens {
        for a in &nums {
            if a.gcd(b) != BigUint::one() {
                continue;
            }
            for sign in [1, -1] {
                let an = BigInt::from(a.clone()) * sign;
                let bn = BigInt::from(b.clone());
                if eval_scaled(dense, &an, &bn).is_zero() {
                    return Ok(Some((an, bn)));
                }
            }
        }
    }
    Ok(None)
}

/// p(a/b) * b^deg, an integer.
fn eval_scaled(dense: &[BigInt], a: &BigInt, b: &BigInt) -> BigInt {
    let deg = dense.len() - 1;
    let mut acc = BigInt::zero();
    let mut apow = BigInt::one();
    let mut bpow = b.pow(deg as u32);
    for c in dense {
        acc += c * &apow * &bpow;
        apow *= a;
        if !bpow.is_zero() {
            bpow /= b;
        }
    }
    acc
}

/// Divide by (b t - a) exactly; None when it is not a factor.
fn deflate(dense: &[BigInt], a: &BigInt, b: &BigInt) -> Option<Vec<BigInt>> {
    if dense.len() < 2 {
        return None;
    }
    let n = dense.len() - 1;
    let mut q = vec![BigInt::zero(); n];
    // synthetic division from the top: p = (b t - a) q + r
    let mut carry = dense[n].clone();
    for i in (0..n).rev() {
        let (qi, rem) = carry.div_rem(b);
        if !rem.is_zero() {
            return None;
        }
        q[i] = qi;
        carry = &dense[i] + a * &q[i];
    }
    if carry.is_zero() {
        Some(q)
    } else {
        None
    }
}

// -- integer factorization ---------------------------------------------------

fn divisors(n: &BigUint) -> Result<Vec<BigUint>, RootError> {
    if n.is_zero() {
        // zero constant coefficient was stripped before; treat as 1
        return Ok(vec![BigUint::one()]);
    }
    let factors = factorize(n.clone())?;
    let mut divs = vec![BigUint::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        let mut pk = BigUint::one();
        for _ in 0..=e {
            for d in &divs {
                next.push(d * &pk);
            }
            pk *= &p;
        }
        divs = next;
        if divs.len() > 100_000 {
            return Err(RootError::TooManyDivisors);
        }
    }
    divs.sort();
    Ok(divs)
}

fn factorize(mut n: BigUint) -> Result<Vec<(BigUint, u32)>, RootError> {
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let push = |p: BigUint, out: &mut Vec<(BigUint, u32)>| {
        if let Some(slot) = out.iter_mut().find(|(q, _)| *q == p) {
            slot.1 += 1;
        } else {
            out.push((p, 1));
        }
    };
    for small in 2u64..10_000 {
        let s = BigUint::from(small);
        if &s * &s > n {
            break;
        }
        while (&n % &s).is_zero() {
            n /= &s;
            push(s.clone(), &mut out);
        }
    }
    let mut stack = vec![n];
    let mut budget = 64;
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            push(m, &mut out);
            continue;
        }
        budget -= 1;
        if budget == 0 {
            return Err(RootError::FactorizationBudget);
        }
        let d = pollard_rho(&m).ok_or(RootError::FactorizationBudget)?;
        stack.push(&m / &d);
        stack.push(d);
    }
    out.sort();
    Ok(out)
}

fn is_prime(n: &BigUint) -> bool {
    if n < &BigUint::from(2u32) {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    // Miller-Rabin with the fixed witness set (deterministic far beyond
    // any coefficient this toolkit produces).
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let a = BigUint::from(a);
        let mut x = a.modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigUint) -> Option<BigUint> {
    let one = BigUint::one();
    if (n % 2u32).is_zero() {
        return Some(BigUint::from(2u32));
    }
    let mut c = BigUint::one();
    for _ in 0..20 {
        let mut x = BigUint::from(2u32);
        let mut y = BigUint::from(2u32);
        let mut d = BigUint::one();
        let f = |v: &BigUint| (v * v + &c) % n;
        let mut steps = 0u64;
        while d == one {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
            steps += 1;
            if steps > 2_000_000 {
                break;
            }
        }
        if d != one && &d != n {
            return Some(d);
        }
        c += BigUint::from(1u32);
    }
    None
}
