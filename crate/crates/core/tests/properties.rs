use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use wantzel::census::enumerate;
use wantzel::chebyshev::chebyshev_t;
use wantzel::density::{msect_count, msect_counts_per_element, CountMethod};
use wantzel::places::{places_oracle, product_formula};
use wantzel::quad_roots::quad_roots;
use wantzel::quadratic::height_k;
use wantzel::rational::{height_q, int};
use wantzel::roots::rational_roots;
use wantzel::sect::decide_sectable;
use wantzel::{FieldDesc, IntPoly, QuadElem, QuadField, QuadPoly, RatPoly, Rational};

fn rat() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=9).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn small_int_poly(max_deg: usize) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-5i64..=5, 1..=max_deg + 1).prop_map(|c| IntPoly::new(c.into_iter().map(BigInt::from).collect()))
}

fn linear(r: &Rational) -> IntPoly {
    IntPoly::new(vec![-r.numer().clone(), r.denom().clone()])
}

/// Positive divisors by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            out.push(&n / &d);
        }
        d += 1;
    }
    out
}

/// Every `±r/s` with `r | c_low`, `s | c_n` that is a root, evaluated over Q.
fn brute_rational_roots(p: &IntPoly) -> BTreeSet<Rational> {
    let mut out = BTreeSet::new();
    let c = p.coeffs();
    let low = c.iter().position(|x| !x.is_zero()).unwrap();
    if low > 0 {
        out.insert(Rational::zero());
    }
    let q: RatPoly = RatPoly::from_int_poly(&IntPoly::new(c[low..].to_vec()));
    for r in divisors(&c[low]) {
        for s in divisors(c.last().unwrap()) {
            for sign in [1, -1] {
                let x = Rational::new(&r * sign, s.clone());
                if q.evaluate(&x).is_zero() {
                    out.insert(x);
                }
            }
        }
    }
    out
}

fn k(d: i64) -> QuadField {
    QuadField::new(d).unwrap()
}

fn quad_elem(d: i64) -> impl Strategy<Value = QuadElem> {
    (rat(), rat()).prop_map(move |(u, v)| QuadElem::new(u, v, k(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn compose_is_associative(a in small_int_poly(3), b in small_int_poly(3), c in small_int_poly(2)) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn rational_roots_match_planted_and_brute_force(
        roots in prop::collection::vec(rat(), 0..=5),
        noise in prop::collection::vec(1i64..=7, 0..=2),
        lead in 1i64..=4,
    ) {
        let mut p = IntPoly::constant(BigInt::from(lead));
        for r in &roots {
            p = &p * &linear(r);
        }
        for c in &noise {
            // x^2 + c has no real roots
            p = &p * &IntPoly::new(vec![BigInt::from(*c), BigInt::zero(), BigInt::one()]);
        }
        prop_assume!(p.degree().unwrap() <= 9);
        let found: BTreeSet<Rational> = rational_roots(&p).unwrap().roots.into_iter().collect();
        let planted: BTreeSet<Rational> = roots.into_iter().collect();
        prop_assert_eq!(&found, &planted);
        prop_assert_eq!(found, brute_rational_roots(&p));
    }

    #[test]
    fn rational_roots_on_random_coefficients(p in small_int_poly(6)) {
        prop_assume!(!p.is_zero() && p.coeffs().iter().any(|c| !c.is_zero()));
        let found: BTreeSet<Rational> = rational_roots(&p).unwrap().roots.into_iter().collect();
        prop_assert_eq!(found, brute_rational_roots(&p));
    }

    #[test]
    fn height_matches_places(d in prop::sample::select(vec![2i64, 3, 5]), u in rat(), v in rat()) {
        let field = FieldDesc::Quad(k(d));
        let x = QuadElem::new(u, v, k(d));
        prop_assert_eq!(places_oracle(&x, field).unwrap().value, height_k(&x, field).unwrap().value);
        if !x.is_zero() {
            prop_assert_eq!(product_formula(field, &x).unwrap(), QuadElem::one());
            // H(1/x) = H(x)
            prop_assert_eq!(height_k(&x.inv().unwrap(), field).unwrap().value, height_k(&x, field).unwrap().value);
        }
    }

    #[test]
    fn rational_height_power_law(x in rat(), n in 1u32..=6) {
        let h = height_q(&x);
        prop_assert_eq!(height_q(&num_traits::pow(x.clone(), n as usize)), num_traits::pow(h.clone(), n as usize));
        // over a quadratic field the height of a rational squares
        let field = FieldDesc::Quad(k(2));
        let hk = height_k(&QuadElem::from(x), field).unwrap().value;
        prop_assert_eq!(hk, QuadElem::from(Rational::from_integer(&h * &h)));
    }

    #[test]
    fn sectability_depends_only_on_odd_part(x in rat(), m_odd in prop::sample::select(vec![1u32, 3, 5, 7]), k2 in 0u32..=3) {
        prop_assume!(x.abs() <= Rational::one());
        let a = QuadElem::from(x);
        let lhs = decide_sectable(&a, m_odd << k2).unwrap().sectable;
        prop_assert_eq!(lhs, decide_sectable(&a, m_odd).unwrap().sectable);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn quad_roots_match_planted(
        d in prop::sample::select(vec![2i64, 3, 5, 7]),
        picks in prop::collection::vec((rat(), rat(), any::<bool>()), 0..=3),
        noise in prop::collection::vec(1i64..=5, 0..=1),
    ) {
        let field = k(d);
        let x = QuadPoly::x();
        let mut p = QuadPoly::constant(QuadElem::one());
        let mut planted = BTreeSet::new();
        for (u, v, with_conj) in picks {
            let r = QuadElem::new(u, v, field);
            p = &p * &(&x - &QuadPoly::constant(r.clone()));
            if with_conj {
                p = &p * &(&x - &QuadPoly::constant(r.conj()));
                planted.insert(r.conj());
            }
            planted.insert(r);
        }
        for c in noise {
            p = &p * &QuadPoly::new(vec![QuadElem::from(int(c)), QuadElem::zero(), QuadElem::one()]);
        }
        prop_assume!(p.degree().unwrap() >= 1 && p.degree().unwrap() <= 7);
        let found: BTreeSet<QuadElem> = quad_roots(&p, field).unwrap().roots.into_iter().collect();
        prop_assert_eq!(&found, &planted);
        // grid oracle: every small element that is a root was found
        for u in -6..=6 {
            for v in -3..=3 {
                for den in [1i64, 2, 3] {
                    let y = QuadElem::new(Rational::new(u.into(), den.into()), Rational::new(v.into(), den.into()), field);
                    if p.evaluate(&y).is_zero() {
                        prop_assert!(found.contains(&y), "missed root {}", y);
                    }
                }
            }
        }
    }

    #[test]
    fn quad_sectability_witness_is_a_root(d in prop::sample::select(vec![2i64, 3, 5]), a in quad_elem(2), m in prop::sample::select(vec![3u32, 5, 6])) {
        let field = k(d);
        let a = QuadElem::new(a.u().clone(), a.v().clone(), field);
        prop_assume!(a.in_unit_interval());
        let verdict = decide_sectable(&a, m).unwrap();
        if let Some(w) = verdict.witness {
            let t: QuadPoly = chebyshev_t(verdict.m_odd);
            prop_assert_eq!(t.evaluate(&w), a);
        }
    }
}

#[test]
fn kronecker_height_one() {
    for field in [FieldDesc::Rational, FieldDesc::quad(2).unwrap(), FieldDesc::quad(3).unwrap(), FieldDesc::quad(5).unwrap()] {
        let ones = enumerate(field, &int(1), 2).unwrap();
        let want: Vec<QuadElem> = [-1, 0, 1].iter().map(|&n| QuadElem::from(int(n)).with_field(field).unwrap()).collect();
        assert_eq!(ones, want, "{field}");
    }
}

#[test]
fn per_element_equals_forward_image_over_q() {
    let bounds: Vec<Rational> = (1..=200).map(int).collect();
    for m in [3u32, 5, 6, 7, 9, 12] {
        let per = msect_counts_per_element(FieldDesc::Rational, m, &bounds, 4).unwrap();
        for (b, p) in bounds.iter().zip(per) {
            assert_eq!(p, msect_count(FieldDesc::Rational, m, b, CountMethod::ForwardImage, 2).unwrap(), "m = {m}, B = {b}");
        }
    }
}

#[test]
fn per_element_equals_forward_image_over_quadratic_fields() {
    for d in [2, 3, 5] {
        let field = FieldDesc::quad(d).unwrap();
        for m in [3u32, 5, 6] {
            for b in [1, 2, 4, 7, 10] {
                msect_count(field, m, &int(b), CountMethod::CrossCheck, 4).unwrap();
            }
        }
    }
}

#[test]
fn m_sect_equals_m_odd_sect_as_sets() {
    let b = int(60);
    for (m, m_odd) in [(6u32, 3u32), (12, 3), (10, 5), (14, 7)] {
        let a = wantzel::density::msect_set_per_element(FieldDesc::Rational, m, &b, 2).unwrap();
        let c = wantzel::density::msect_set_per_element(FieldDesc::Rational, m_odd, &b, 2).unwrap();
        assert_eq!(a, c);
    }
}
