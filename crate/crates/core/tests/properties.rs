use std::sync::Arc;

use proptest::prelude::*;
use siltq::algebra::Elem;
use siltq::catalog;
use siltq::complex::TwoTermComplex;
use siltq::construct::trivial_extension;
use siltq::enumerate::{enumerate_with, Census, EnumerateOptions};
use siltq::hom::hom_space;
use siltq::io::CensusFile;
use siltq::silting::{Direction, SiltingObject, Workspace};
use siltq::symmetry::bisect;
use siltq::{build_algebra, Algebra, FieldKind, Presentation, Scalar};

/// Small τ-tilting finite algebras, over ℚ and over F_3.
fn finite_catalog() -> Vec<(&'static str, Presentation)> {
    let mut out = Vec::new();
    for f in [FieldKind::Rational, FieldKind::prime(3).unwrap()] {
        out.push(("linear_a(2)", catalog::linear_a(2, 0, f).unwrap()));
        out.push(("linear_a(3)", catalog::linear_a(3, 0, f).unwrap()));
        out.push(("linear_a(4, r=2)", catalog::linear_a(4, 2, f).unwrap()));
        out.push(("nakayama(2, 3)", catalog::nakayama(2, 3, f).unwrap()));
        out.push(("nakayama(3, 4)", catalog::nakayama(3, 4, f).unwrap()));
        out.push(("preprojective_a(3)", catalog::preprojective_a(3, f).unwrap()));
        out.push(("double_a(3, 2)", catalog::double_a(3, 2, f).unwrap()));
        out.push(("brauer_triangle", catalog::brauer_triangle(f).unwrap()));
    }
    out
}

fn census(p: &Presentation) -> Census {
    let a = Arc::new(build_algebra(p).unwrap());
    let c = enumerate_with(&a, &EnumerateOptions::default(), &Workspace::new()).unwrap();
    assert!(c.complete);
    c
}

#[test]
fn exchange_graph_is_regular_with_unique_source_and_sink() {
    for (name, p) in finite_catalog() {
        let c = census(&p);
        let n = c.algebra.vertex_count();
        assert!(c.degrees().iter().all(|&d| d == n), "{name}: not {n}-regular");
        let regular = SiltingObject::regular(&c.algebra);
        let shifted = SiltingObject::shifted_regular(&c.algebra);
        assert_eq!(c.sources(), vec![c.find(regular.key()).unwrap()], "{name}");
        assert_eq!(c.sinks(), vec![c.find(shifted.key()).unwrap()], "{name}");
    }
}

#[test]
fn projectives_split_every_census_in_two() {
    for (name, p) in finite_catalog() {
        let c = census(&p);
        for v in 0..c.algebra.vertex_count() {
            let b = bisect(&c, v).unwrap();
            assert!(b.partition, "{name} at {v}");
            assert_eq!(b.minus.len() + b.plus.len(), c.len());
            // the projective in degree −1 puts Λ[1] on the minus side
            assert!(b.minus.iter().all(|&i| c.elements[i].has_in_minus(v)));
            assert!(b.plus.iter().all(|&i| c.elements[i].has_in_zero(v)));
        }
    }
}

#[test]
fn right_mutation_undoes_left_mutation_on_every_edge() {
    for (name, p) in finite_catalog().into_iter().step_by(2) {
        let c = census(&p);
        let ws = Workspace::new();
        for arrow in &c.arrows {
            let to = &c.elements[arrow.to];
            let from = &c.elements[arrow.from];
            let at = to.key().iter().position(|g| !from.key().contains(g)).unwrap();
            let back = ws.mutate(to, at, Direction::Right).unwrap();
            assert_eq!(back.object.key(), from.key(), "{name}: edge {} → {}", arrow.from, arrow.to);
            assert_eq!(&back.added.g_vector(), &arrow.mutated);
        }
    }
}

#[test]
fn parallel_and_serial_censuses_are_byte_identical() {
    for (name, p) in finite_catalog().into_iter().take(8) {
        let a = Arc::new(build_algebra(&p).unwrap());
        let json = |parallel| {
            let opts = EnumerateOptions { parallel, ..EnumerateOptions::default() };
            CensusFile::from_census(&enumerate_with(&a, &opts, &Workspace::new()).unwrap(), None).to_json()
        };
        assert_eq!(json(true), json(false), "{name}");
    }
}

#[test]
fn incomplete_censuses_are_deterministic_too() {
    let a = Arc::new(build_algebra(&catalog::preprojective_a(3, FieldKind::Rational).unwrap()).unwrap());
    let json = |parallel| {
        let opts = EnumerateOptions { cap: 10, parallel, ..EnumerateOptions::default() };
        let c = enumerate_with(&a, &opts, &Workspace::new()).unwrap();
        assert!(!c.complete);
        CensusFile::from_census(&c, None).to_json()
    };
    assert_eq!(json(true), json(false));
}

fn algebras() -> Vec<Arc<Algebra>> {
    let f = FieldKind::Rational;
    let mut out: Vec<Arc<Algebra>> = [
        catalog::linear_a(3, 0, f),
        catalog::nakayama(3, 4, f),
        catalog::preprojective_a(3, f),
        catalog::brauer_triangle(f),
        catalog::sym3(f),
        catalog::sym3_gamma2(FieldKind::prime(5).unwrap()),
    ]
    .into_iter()
    .map(|p| Arc::new(build_algebra(&p.unwrap()).unwrap()))
    .collect();
    let a2 = build_algebra(&catalog::linear_a(2, 0, f).unwrap()).unwrap();
    out.push(Arc::new(trivial_extension(&a2, None).unwrap().0));
    out
}

fn element(a: &Algebra, coeffs: &[i64]) -> Elem {
    coeffs
        .iter()
        .enumerate()
        .take(a.dim())
        .filter(|&(_, &c)| c != 0)
        .map(|(i, &c)| (i, a.field().int(c)))
        .collect()
}

/// A random element of `e_t Λ e_s`.
fn block_element(a: &Algebra, t: usize, s: usize, coeffs: &[i64]) -> Elem {
    a.block(t, s)
        .iter()
        .zip(coeffs.iter().cycle())
        .filter(|&(_, &c)| c != 0)
        .map(|(&b, &c)| (b, a.field().int(c)))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative(
        which in 0usize..7,
        x in prop::collection::vec(-3i64..=3, 32),
        y in prop::collection::vec(-3i64..=3, 32),
        z in prop::collection::vec(-3i64..=3, 32),
    ) {
        let a = &algebras()[which];
        let (x, y, z) = (element(a, &x), element(a, &y), element(a, &z));
        prop_assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
        prop_assert_eq!(a.mul(&a.one(), &x), x.clone());
        prop_assert_eq!(a.mul(&x, &a.one()), x);
    }

    #[test]
    fn minimize_is_idempotent_and_radical(
        which in 0usize..7,
        s in 0usize..3,
        t in 0usize..3,
        coeffs in prop::collection::vec(-2i64..=2, 1..6),
        extra in 0usize..3,
    ) {
        let a = &algebras()[which];
        let n = a.vertex_count();
        let (s, t, extra) = (s % n, t % n, extra % n);
        let x = block_element(a, t, s, &coeffs);
        let base = TwoTermComplex::from_map(a, s, t, x).unwrap();
        // pad with a contractible summand P → P
        let cone = TwoTermComplex::from_map(a, extra, extra, a.unit(a.idempotent(extra))).unwrap();
        let padded = base.direct_sum(&cone).unwrap();
        let once = padded.minimize();
        prop_assert!(once.is_minimal());
        let twice = once.minimize();
        prop_assert_eq!((&twice.minus, &twice.zero, &twice.d), (&once.minus, &once.zero, &once.d));
        prop_assert_eq!(once.g_vector(), base.g_vector());
    }

    #[test]
    fn hom_dimensions_are_homotopy_invariant(
        which in 0usize..7,
        s in 0usize..3,
        t in 0usize..3,
        u in 0usize..3,
        coeffs in prop::collection::vec(-2i64..=2, 1..6),
        k in -1i32..=1,
    ) {
        let a = &algebras()[which];
        let n = a.vertex_count();
        let (s, t, u) = (s % n, t % n, u % n);
        let x = TwoTermComplex::from_map(a, s, t, block_element(a, t, s, &coeffs)).unwrap();
        let y = TwoTermComplex::stalk(a, u).direct_sum(&TwoTermComplex::shifted_stalk(a, t)).unwrap();
        let cone = TwoTermComplex::from_map(a, u, u, a.unit(a.idempotent(u))).unwrap();
        let x2 = x.direct_sum(&cone).unwrap();
        let y2 = cone.direct_sum(&y).unwrap();
        let d = hom_space(&x, &y, k).unwrap().dim();
        prop_assert_eq!(hom_space(&x2, &y, k).unwrap().dim(), d);
        prop_assert_eq!(hom_space(&x, &y2, k).unwrap().dim(), d);
        prop_assert_eq!(hom_space(&x2.minimize(), &y2.minimize(), k).unwrap().dim(), d);
    }

    #[test]
    fn scalar_field_axioms_mod_p(x in -50i64..50, y in -50i64..50, p in prop::sample::select(vec![2u64, 3, 5, 7, 101])) {
        let f = FieldKind::prime(p).unwrap();
        let (a, b) = (f.int(x), f.int(y));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), f.one());
        }
        prop_assert_eq!(&Scalar::from_int(x) * &Scalar::from_int(y), Scalar::from_int(x * y));
    }
}

#[test]
fn counts_do_not_depend_on_the_field() {
    let cases: [(fn(FieldKind) -> siltq::Result<Presentation>, usize); 4] = [
        (|f| catalog::preprojective_a(3, f), 24),
        (catalog::brauer_triangle, 32),
        (catalog::sym3, 32),
        (catalog::sym3_gamma2, 28),
    ];
    for (make, want) in cases {
        for p in [2, 3, 5] {
            let c = census(&make(FieldKind::prime(p).unwrap()).unwrap());
            assert_eq!(c.len(), want, "over F_{p}");
        }
    }
}
