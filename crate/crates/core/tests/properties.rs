//! Property tests. The runner is seeded from `VALUON_SEED` (or the default
//! seed), so every run explores the same cases.

mod common;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use valuon::gamma::{enumerate_gamma, GammaTable};
use valuon::linalg::{
    is_ultrametric, least_fixed_point, mat_add, mat_identity, mat_mul, minimax_closure, MatrixFile, MatrixSemiring,
    TropMatrix, UltrametricCandidate,
};
use valuon::poly::{parse_expression, parse_with_repeats, tropicalize, Coefficients, Expression, Token};
use valuon::ring::{FiniteRing, RingSpec};
use valuon::semiring::{check_laws, seed_from_env, BoolValue, Boolean, MinMax, Semiring, Tropical, TropicalValue};

fn runner(cases: u32) -> TestRunner {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed_from_env().to_le_bytes());
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &bytes))
}

fn ring(spec: &str) -> FiniteRing {
    RingSpec::parse(spec).unwrap().build().unwrap()
}

fn vars(n: usize) -> Vec<String> {
    ["x", "y"][..n].iter().map(|s| s.to_string()).collect()
}

/// Raw token words over a ring with `size` elements and `nvars` variables.
fn words(size: usize, nvars: usize) -> impl Strategy<Value = Vec<Vec<Token<usize>>>> {
    let token = prop_oneof![(0..size).prop_map(Token::Coef), (0..nvars).prop_map(Token::Var)];
    prop::collection::vec(prop::collection::vec(token, 0..5), 0..5)
}

fn distance() -> impl Strategy<Value = Option<u64>> {
    prop_oneof![1 => Just(None), 4 => (0u64..10).prop_map(Some)]
}

fn distances(max_n: usize) -> impl Strategy<Value = Vec<Vec<Option<u64>>>> {
    (1..=max_n).prop_flat_map(|n| prop::collection::vec(distance(), n * n)).prop_map(|flat| {
        let n = (flat.len() as f64).sqrt() as usize;
        let mut d = vec![vec![Some(0); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                d[i][j] = flat[i * n + j];
                d[j][i] = flat[i * n + j];
            }
        }
        d
    })
}

fn tropical(d: &[Vec<Option<u64>>]) -> TropMatrix<TropicalValue> {
    TropMatrix::from_fn(d.len(), |i, j| d[i][j].map_or(TropicalValue::Infinity, |w| TropicalValue::int(w as i64)))
}

#[test]
fn normalization_is_idempotent() {
    for spec in ["ut2(z2)", "z4"] {
        let r = ring(spec);
        runner(300)
            .run(&words(r.size(), 2), |w| {
                let f = Expression::from_words(&r, vars(2), w);
                prop_assert_eq!(f.normalize(&r), f.clone());
                prop_assert_eq!(f.combine_like_terms(&r).combine_like_terms(&r), f.combine_like_terms(&r));
                Ok(())
            })
            .unwrap();
    }
}

#[test]
fn evaluation_is_a_homomorphism() {
    let r = ring("ut2(z2)");
    let n = r.size();
    let strategy = (words(n, 2), words(n, 2), 0..n, 0..n);
    runner(300)
        .run(&strategy, |(a, b, x, y)| {
            let (f, g) = (Expression::from_words(&r, vars(2), a), Expression::from_words(&r, vars(2), b));
            let at = |h: &Expression<usize>| h.evaluate(&r, &[x, y]).unwrap();
            prop_assert_eq!(at(&f.add(&r, &g).unwrap()), r.add_idx(at(&f), at(&g)));
            prop_assert_eq!(at(&f.mul(&r, &g).unwrap()), r.mul_idx(at(&f), at(&g)));
            prop_assert_eq!(at(&f.neg(&r).unwrap()), r.neg_idx(at(&f)));
            Ok(())
        })
        .unwrap();
}

/// ν(f(a)) lies above trop(f)(ν(a)) in the natural order.
#[test]
fn tropicalization_bounds_the_valuation() {
    for spec in ["ut2(z2)", "z4", "prod(z2,z3)"] {
        let r = ring(spec);
        let g = enumerate_gamma(&r).unwrap();
        let n = r.size();
        runner(200)
            .run(&(words(n, 2), 0..n, 0..n), |(w, x, y)| {
                let f = Expression::from_words(&r, vars(2), w);
                let t = tropicalize(&f, &g, |a| g.nu_index(*a));
                let bound = t.expr.evaluate(&g, &[g.nu_index(x), g.nu_index(y)]).unwrap();
                let value = g.nu_index(f.evaluate(&r, &[x, y]).unwrap());
                prop_assert_eq!(g.add_idx(bound, value), bound);
                Ok(())
            })
            .unwrap();
    }
}

#[test]
fn commutative_parse_is_the_quotient() {
    let r = ring("z5");
    runner(200)
        .run(&words(5, 2), |w| {
            let text = Expression::from_words(&r, vars(2), w).to_text(&r);
            let free = parse_expression(&text, &r, &vars(2), false).unwrap();
            let comm = parse_expression(&text, &r, &vars(2), true).unwrap();
            prop_assert_eq!(comm, free.commutative_quotient(&r));
            Ok(())
        })
        .unwrap();
}

#[test]
fn printed_expressions_parse_back() {
    let r = ring("ut2(z2)");
    let g = enumerate_gamma(&r).unwrap();
    runner(200)
        .run(&words(8, 2), |w| {
            let f = Expression::from_words(&r, vars(2), w);
            let back = parse_expression(&f.to_text(&r), &r, &vars(2), false).unwrap();
            prop_assert_eq!(&back, &f);
            let t = tropicalize(&f, &g, |a| g.nu_index(*a)).expr;
            prop_assert_eq!(parse_with_repeats(&t.to_text(&g), &g, &vars(2)).unwrap(), t);
            Ok(())
        })
        .unwrap();
}

#[test]
fn matrix_semiring_laws() {
    let matrix = || {
        prop::collection::vec(distance(), 4)
            .prop_map(|e| tropical(&[vec![e[0], e[1]], vec![e[2], e[3]]]))
    };
    runner(100)
        .run(&(matrix(), matrix(), matrix()), |(a, b, c)| {
            let elems = [a, b, c];
            prop_assert!(check_laws(&MatrixSemiring::new(MinMax, 2), &elems).is_ok());
            prop_assert!(check_laws(&MatrixSemiring::new(Tropical, 2), &elems).is_ok());
            Ok(())
        })
        .unwrap();
    let bits = prop::collection::vec(any::<bool>(), 9);
    runner(100)
        .run(&(bits.clone(), bits.clone(), bits), |(a, b, c)| {
            let m = |v: &[bool]| TropMatrix::from_fn(3, |i, j| if v[i * 3 + j] { BoolValue::Top } else { BoolValue::Bottom });
            prop_assert!(check_laws(&MatrixSemiring::new(Boolean, 3), &[m(&a), m(&b), m(&c)]).is_ok());
            Ok(())
        })
        .unwrap();
}

#[test]
fn minimax_closure_matches_paths() {
    runner(300)
        .run(&distances(6), |d| {
            let c = minimax_closure(&UltrametricCandidate::new(tropical(&d)).unwrap()).unwrap();
            prop_assert_eq!(c.matrix(), &tropical(&common::minimax_paths(&d)));
            Ok(())
        })
        .unwrap();
}

#[test]
fn ultrametric_iff_closed() {
    runner(500)
        .run(&(distances(8), any::<bool>()), |(d, close)| {
            let mut d = UltrametricCandidate::new(tropical(&d)).unwrap();
            if close {
                d = minimax_closure(&d).unwrap();
            }
            let closed = minimax_closure(&d).unwrap() == d;
            prop_assert_eq!(is_ultrametric(&d).ultrametric, closed);
            Ok(())
        })
        .unwrap();
}

fn solves<S: valuon::linalg::StarSemiring>(s: &S, a: &TropMatrix<S::Elem>) -> bool {
    let x = least_fixed_point(s, a).unwrap();
    mat_add(s, &mat_mul(s, a, &x).unwrap(), &mat_identity(s, a.n())).unwrap() == x
}

#[test]
fn fixed_point_solves_the_equation() {
    runner(200)
        .run(&distances(6), |d| {
            let a = tropical(&d);
            prop_assert!(solves(&MinMax, &a));
            prop_assert!(solves(&Tropical, &a));
            let b = TropMatrix::from_fn(a.n(), |i, j| if a.get(i, j).is_infinite() { BoolValue::Bottom } else { BoolValue::Top });
            prop_assert!(solves(&Boolean, &b));
            Ok(())
        })
        .unwrap();
}

#[test]
fn file_formats_round_trip() {
    for spec in ["z6", "f4", "ut2(z2)", "prod(z2,z3)"] {
        let r = ring(spec);
        assert_eq!(FiniteRing::parse(&r.to_text()).unwrap(), r);
        let t = enumerate_gamma(&r).unwrap().table();
        assert_eq!(GammaTable::parse(&t.to_text()).unwrap(), t);
    }
    runner(100)
        .run(&distances(5), |d| {
            let m = MatrixFile::Tropical(tropical(&d));
            prop_assert_eq!(MatrixFile::parse(&m.to_text()).unwrap(), m);
            Ok(())
        })
        .unwrap();
}

#[test]
fn gamma_is_idempotent_semiring() {
    for spec in ["z4", "ut2(z2)"] {
        let g = enumerate_gamma(&ring(spec)).unwrap();
        let elems = g.carrier().unwrap();
        assert!(check_laws(&g, &elems).is_ok());
        assert!(Coefficients::is_idempotent(&g));
    }
}
