//! Dual-route checks: every computation with an independent second path
//! is confronted with it here, on randomized inputs where that makes
//! sense.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use esfkit::algebra::{
    bivariate_gcd, parse_poly, rat, resultant, Exponent, MultiPoly, QMatrix, Rat, Var,
};
use esfkit::invariants::{catalog_entry, CatalogType};
use esfkit::local::{intersection_multiplicity, tjurina_ideal, LocalIdeal};
use esfkit::resolution::{invariants_from_tree, resolve};

// -- random polynomial strategies ------------------------------------------

fn small_poly(max_deg: u32, terms: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(
        (0..=max_deg, 0..=max_deg, -4i64..=4),
        1..=terms,
    )
    .prop_map(move |tuples| {
        MultiPoly::from_terms(tuples.into_iter().filter_map(|(a, b, c)| {
            if a + b > max_deg || c == 0 {
                None
            } else {
                Some((Exponent([a, b, 0]), rat(c)))
            }
        }))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_laws(
        a in small_poly(3, 4),
        b in small_poly(3, 4),
        c in small_poly(3, 4),
    ) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), MultiPoly::zero());
    }

    #[test]
    fn gcd_divides_and_scales(
        a in small_poly(3, 3),
        b in small_poly(3, 3),
        c in small_poly(2, 2),
    ) {
        let g = bivariate_gcd(&a, &b);
        if !a.is_zero() {
            prop_assert!(a.div_exact(&g).is_some(), "gcd does not divide a");
        }
        if !b.is_zero() {
            prop_assert!(b.div_exact(&g).is_some(), "gcd does not divide b");
        }
        // gcd(ca, cb) equals c*gcd(a,b) after normalization
        if !c.is_zero() && !(a.is_zero() && b.is_zero()) {
            let lhs = bivariate_gcd(&a.mul(&c), &b.mul(&c));
            let rhs = g.mul(&c).primitive_normalized();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn resultant_vanishes_iff_common_y_factor(
        a in small_poly(2, 3),
        b in small_poly(2, 3),
        z in small_poly(1, 2),
    ) {
        // manufacture positive cases by an optional shared factor z
        let (a2, b2) = (a.mul(&z), b.mul(&z));
        for (p, q) in [(&a, &b), (&a2, &b2)] {
            if p.is_zero() || q.is_zero() {
                continue;
            }
            if p.degree_in(Var::Y) == 0 && q.degree_in(Var::Y) == 0 {
                continue;
            }
            let r = resultant(p, q, Var::Y).unwrap();
            let g = bivariate_gcd(p, q);
            prop_assert_eq!(
                r.is_zero(),
                g.degree_in(Var::Y) > 0,
                "resultant {} vs gcd {}", r, g
            );
        }
    }

    #[test]
    fn rank_matches_fraction_free_elimination_on_the_transpose(
        rows in prop::collection::vec(
            prop::collection::vec(-6i64..=6, 5),
            1..=6,
        ),
    ) {
        let m = QMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v)).collect())
                .collect(),
        );
        let (rank, kernel) = m.kernel_and_rank();
        prop_assert_eq!(rank + kernel.len(), m.ncols());
        for k in &kernel {
            prop_assert!(m.mul_vec(k).iter().all(|v| v.is_zero()));
        }
        let oracle = bareiss_rank_int(&m.transpose());
        prop_assert_eq!(rank, oracle);
    }
}

/// Independent rank oracle: fraction-free Bareiss elimination over the
/// integers, structurally different from the rational reduced echelon
/// path used by the library.
fn bareiss_rank_int(m: &QMatrix) -> usize {
    // scale rows to integers
    let mut a: Vec<Vec<BigInt>> = (0..m.nrows())
        .map(|i| {
            let mut lcm = BigInt::from(1);
            for j in 0..m.ncols() {
                let d = m.entry(i, j).denom().clone();
                let g = num_integer::Integer::gcd(&lcm, &d);
                lcm = lcm / g * d;
            }
            (0..m.ncols())
                .map(|j| {
                    let e = m.entry(i, j);
                    e.numer() * &lcm / e.denom()
                })
                .collect()
        })
        .collect();
    let (n, c) = (a.len(), m.ncols());
    let mut prev = BigInt::from(1);
    let mut row = 0usize;
    for col in 0..c {
        if row == n {
            break;
        }
        let Some(p) = (row..n).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        for i in (row + 1)..n {
            for j in (col + 1)..c {
                let v = (&a[row][col] * &a[i][j] - &a[i][col] * &a[row][j]) / &prev;
                a[i][j] = v;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[row][col].clone();
        row += 1;
    }
    row
}

#[test]
fn intersection_numbers_match_resultant_orders() {
    // for y-regular pairs the local intersection number at the origin is
    // the vanishing order of the eliminant
    let pairs = [
        ("x^2 - y^3", "x^3 - y^2"),
        ("x^2 - y^3", "x"),
        ("y - x^2", "y + x^2"),
        ("x^2 - y^5", "x - y^2"),
        ("(x - y^2)*(x + y^2)", "x - y^3"),
    ];
    for (a, b) in pairs {
        let (pa, pb) = (parse_poly(a).unwrap(), parse_poly(b).unwrap());
        let col = intersection_multiplicity(&pa, &pb, &(rat(0), rat(0))).unwrap();
        let r = resultant(&pa, &pb, Var::Y).unwrap();
        assert!(!r.is_zero());
        assert_eq!(
            r.var_valuation(Var::X) as usize,
            col,
            "order of the eliminant for ({}, {})",
            a,
            b
        );
    }
}

#[test]
fn intersection_symmetry_and_tangent_cone_bound() {
    // symmetric, at least the product of multiplicities, equality exactly
    // for distinct tangent cones
    let origin = (rat(0), rat(0));
    let cases = [
        // (f, g, expect transversal tangent cones)
        ("x^2 - y^3", "x^3 - y^2", true),
        ("x^2 - y^3", "y", true),
        ("x - y^2", "x + y^2", false), // shared tangent line x = 0
        ("x^2 - y^3", "x", false),     // line equal to the cusp tangent
        ("x^3 - x*y^2", "y - 2*x", true),
        ("x^2 - y^5", "x^2 - y^3", false),
    ];
    for (a, b, transversal) in cases {
        let (pa, pb) = (parse_poly(a).unwrap(), parse_poly(b).unwrap());
        let ab = intersection_multiplicity(&pa, &pb, &origin).unwrap();
        let ba = intersection_multiplicity(&pb, &pa, &origin).unwrap();
        assert_eq!(ab, ba, "symmetry for ({}, {})", a, b);
        let product = (pa.order() * pb.order()) as usize;
        assert!(ab >= product, "({}, {}): {} below {}", a, b, ab, product);
        assert_eq!(
            ab == product,
            transversal,
            "tangent-cone equality case for ({}, {})",
            a,
            b
        );
    }
}

#[test]
fn colength_bounded_by_intersection_with_ideal_members() {
    // for any zero-dimensional ideal containing the Tjurina ideal and any
    // member not vanishing on a component, the colength is strictly below
    // the intersection number with the curve
    let catalog = [
        "x^2 - y^2",
        "x^2 - y^3",
        "x^2 - y^5",
        "x^3 - y^3",
        "x^3 - x*y^2",
        "x^3 - y^4",
    ];
    for gstr in catalog {
        let f = parse_poly(gstr).unwrap();
        let ideal = tjurina_ideal(&f, &(rat(0), rat(0))).unwrap();
        let tau = ideal.colength().unwrap().colength;
        let combos: Vec<MultiPoly> = {
            let gens = &ideal.gens;
            let mut v: Vec<MultiPoly> = gens[1..].to_vec();
            v.push(gens[1].add(&gens[2]));
            v.push(gens[1].sub(&gens[2].scale(&rat(2))));
            v.push(gens[0].add(&gens[1]));
            v
        };
        for g in combos {
            if g.is_zero() || !bivariate_gcd(&f, &g).is_constant() {
                continue;
            }
            let icd = intersection_multiplicity(&f, &g, &(rat(0), rat(0))).unwrap();
            assert!(
                tau < icd,
                "{}: colength {} not below intersection {} for member {}",
                gstr,
                tau,
                icd,
                g
            );
        }
    }
}

#[test]
fn determinacy_bounded_by_delta_for_thick_branches() {
    // germs whose branches all have multiplicity at least three
    for gstr in ["x^3 - y^4", "x^3 - y^5", "x^3 - y^7", "x^4 - y^5"] {
        let f = parse_poly(gstr).unwrap();
        let tree = resolve(&f, &(rat(0), rat(0))).unwrap();
        for b in &tree.branches {
            assert!(b.mults[0] >= 3, "{} has a thin branch", gstr);
        }
        let rec = invariants_from_tree(&tree).unwrap();
        assert!(
            rec.nu_s <= rec.delta,
            "{}: nu = {} exceeds delta = {}",
            gstr,
            rec.nu_s,
            rec.delta
        );
    }
}

#[test]
fn tjurina_never_exceeds_milnor() {
    use esfkit::local::{milnor_number, tjurina_number};
    // includes germs that are not quasihomogeneous in any coordinates
    for g in [
        "x^2 - y^5",
        "x^3 - y^4",
        "x^3 - y^7 + x*y^5",
        "x^4 - y^5 + x^2*y^3",
        "(x - y^2)*(x + y^2) + y^5",
    ] {
        let f = parse_poly(g).unwrap();
        let tau = tjurina_number(&f, &(rat(0), rat(0))).unwrap();
        let mu = milnor_number(&f, &(rat(0), rat(0))).unwrap();
        assert!(tau <= mu, "{}: tau = {} > mu = {}", g, tau, mu);
    }
    // a germ with a genuine modulus: the inequality is strict
    let f = parse_poly("x^3 - y^7 + x*y^5").unwrap();
    let tau = tjurina_number(&f, &(rat(0), rat(0))).unwrap();
    let mu = milnor_number(&f, &(rat(0), rat(0))).unwrap();
    assert!(tau < mu, "expected a strict drop, got tau = mu = {}", mu);
}

#[test]
fn adding_singularities_never_rescues_a_failing_sum_criterion() {
    use esfkit::criteria::{self, CurveSummary, Verdict};
    let checks: [fn(&CurveSummary) -> criteria::CriterionResult; 4] = [
        criteria::check_smoothness_gamma,
        criteria::check_smoothness_tau,
        criteria::check_nori,
        criteria::check_existence,
    ];
    for d in [6u32, 8, 12] {
        for n in 0..12u64 {
            for k in 0..12u64 {
                let base = CurveSummary::nodes_and_cusps(d, n, k);
                let more = CurveSummary::nodes_and_cusps(d, n + 1, k + 2);
                for check in checks {
                    if check(&base).verdict == Verdict::Fail {
                        assert_eq!(
                            check(&more).verdict,
                            Verdict::Fail,
                            "fail flipped to pass at d={}, n={}, k={}",
                            d,
                            n,
                            k
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn quasihomogeneous_catalog_has_tau_equal_mu() {
    for t in [
        CatalogType::A(3),
        CatalogType::A(6),
        CatalogType::D(4),
        CatalogType::D(7),
        CatalogType::E(6),
        CatalogType::E(7),
        CatalogType::E(8),
    ] {
        let e = catalog_entry(&t).unwrap();
        assert_eq!(e.tau, Some(e.mu), "tau = mu for {}", e.name);
    }
}

#[test]
fn scheme_degree_formulas_agree() {
    // the two expressions for the degree of the singularity scheme agree
    // whenever every non-essential point is simple, which holds for all
    // resolved trees by the nodality of the leaves
    for gstr in [
        "x^2 - y^2",
        "x^2 - y^3",
        "x^2 - y^7",
        "(x - y^2)*(x + y^2)",
        "x^3 - x*y^2",
        "x^3 - y^4",
        "x^3 - y^5",
    ] {
        let f = parse_poly(gstr).unwrap();
        let tree = resolve(&f, &(rat(0), rat(0))).unwrap();
        for leaf in tree.nodes.iter().filter(|n| !n.essential) {
            assert_eq!(leaf.mult, 1);
        }
        let cluster = esfkit::cluster::essential_cluster(&tree);
        assert_eq!(cluster.degree(), tree.deg_xs(), "{}", gstr);
    }
}

#[test]
fn smooth_maximum_capped_by_determinacy() {
    use esfkit::invariants::smooth_intersection_max;
    use esfkit::local::iea_fix_ideal;
    for t in [CatalogType::A(1), CatalogType::A(2), CatalogType::A(3), CatalogType::D(4)] {
        let e = catalog_entry(&t).unwrap();
        let f = t.germ();
        let ideal = iea_fix_ideal(&f, &(rat(0), rat(0))).unwrap();
        let rep =
            smooth_intersection_max(&ideal, e.nu_s as u32 + 1, Some(e.nu_s)).unwrap();
        assert!(rep.max <= e.nu_s + 1, "{}", e.name);
    }
}

#[test]
fn kernel_annihilates_and_certificate_is_reproducible() {
    let gens = vec![
        parse_poly("x^2 - y^3").unwrap(),
        parse_poly("x*y").unwrap(),
    ];
    let ideal = LocalIdeal::at_origin(gens);
    let a = ideal.colength().unwrap();
    let b = ideal.colength().unwrap();
    assert_eq!(a, b, "certificates must be deterministic");
    assert_eq!(a.colength, a.staircase.len());
}
