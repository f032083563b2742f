//! The twelve acceptance criteria. Runs without the libtest harness so that
//! each criterion prints exactly one PASS/FAIL line with its timing.

mod common;

use std::collections::{BTreeMap, HashMap};
use std::panic;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;
use valuon::gamma::{
    abelianization_correspondence, apply_trop_hom, check_valuation, classify_trop_hom, enumerate_gamma,
    ideal_semiring, meet_of_sum_check, nu_padic, solution_set_semiring, GammaSemiring, HomClassification,
    InvalidRelation, ValuationMode, ValuationSample,
};
use valuon::linalg::{
    is_ultrametric, least_fixed_point, mat_add, mat_identity, mat_mul, minimax_closure, rep_to_valuation,
    RationalRep, StarSemiring, TropMatrix, UltrametricCandidate,
};
use valuon::poly::{
    crease_points, parse_expression, random_expression, root_crease_check, roots, solution_set,
    tropicalize, ExpressionRing,
};
use valuon::rational::{q, qi, Q};
use valuon::ring::{FiniteRing, Rationals, Ring, RingSpec};
use valuon::semiring::{
    congruence_closure, seed_from_env, seeded_rng, Boolean, FiniteMonoid, GcdRational, GcdRationals,
    MinMax, PadicVector, Powerset, Semiring, Tropical, TropicalValue,
};

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Option<Duration>,
    check: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ring(spec: &str) -> FiniteRing {
    RingSpec::parse(spec).and_then(|s| s.build()).expect("corpus descriptor")
}

fn r8() -> FiniteRing {
    ring("ut2(z2)")
}

/// Finite rings with at most 16 elements used across the suite.
fn corpus() -> Vec<(String, FiniteRing)> {
    let mut specs: Vec<String> = (1..=16).map(|n| format!("z{n}")).collect();
    specs.extend(
        ["f4", "f8", "f9", "f16", "prod(z2,z2)", "prod(z2,z3)", "prod(z2,z4)", "prod(z3,z3)", "prod(z4,z4)",
         "prod(f4,z2)", "prod(z2,prod(z2,z2))", "ut2(z2)", "m2(z2)"]
            .map(String::from),
    );
    specs.into_iter().map(|s| (s.clone(), ring(&s))).collect()
}

fn name(g: &GammaSemiring, text: &str) -> Result<usize, String> {
    g.parse_name(text).ok_or_else(|| format!("cannot read `{text}`"))
}

fn r8_table() -> Outcome {
    let golden = include_str!("golden/r8_singletons.txt");
    let g = enumerate_gamma(&r8()).map_err(|e| e.to_string())?;
    let text = g.singleton_table_text();
    ensure(text == golden, || format!("table differs from the golden file:\n{text}"))?;
    let entries: usize = text.lines().skip(1).map(|l| l.split_whitespace().count() - 1).sum();
    ensure(entries == 36, || format!("{entries} entries"))?;
    let prod = |a: &str, b: &str| -> Result<String, String> { Ok(g.name(g.mul_idx(name(&g, a)?, name(&g, b)?))) };
    ensure(prod("x_{i+j}", "x_{j+k}")? == "0", || "x_{i+j}·x_{j+k}".into())?;
    ensure(prod("x_{i+j+k}", "x_{i+j+k}")? == "1", || "x_{i+j+k}²".into())?;
    ensure(prod("x_i", "x_{j+k}")? == "x_j", || "x_i·x_{j+k}".into())?;
    Ok(String::new())
}

fn fano_structure() -> Outcome {
    let r = r8();
    let g = enumerate_gamma(&r).map_err(|e| e.to_string())?;
    let mut spans: Vec<u64> = (0..1u64 << r.size()).map(|m| common::span_mask(&r, m)).collect();
    spans.sort_unstable();
    spans.dedup();
    ensure(spans.len() == 16 && g.size() == 16, || format!("{} spans, |Γ| = {}", spans.len(), g.size()))?;
    let same = |texts: &[&str]| -> Result<bool, String> {
        let ks = texts.iter().map(|t| name(&g, t)).collect::<Result<Vec<_>, _>>()?;
        Ok(ks.windows(2).all(|w| w[0] == w[1]))
    };
    ensure(same(&["[x_i+x_k]", "[x_k+1]", "[1+x_i]"])?, || "[x_i+x_k] = [x_k+1] = [1+x_i]".into())?;
    ensure(same(&["[1+x_{i+j+k}]", "[x_{i+j+k}+x_j]", "[1+x_j]"])?, || "[1+x_{i+j+k}] class".into())?;
    ensure(same(&["[x_i+x_j+x_k]", "[1+x_{i+j}+x_j]"])?, || "[x_i+x_j+x_k] = [1+x_{i+j}+x_j]".into())?;
    ensure(same(&["[1+x_{i+j}+x_{j+k}]", "[1+x_{i+j}]"])?, || "[1+x_{i+j}+x_{j+k}] = [1+x_{i+j}]".into())?;
    ensure(!same(&["[1+x_{i+j}]", "[x_i+x_j+x_k]"])?, || "[1+x_{i+j}] ≠ [x_i+x_j+x_k]".into())?;
    Ok(String::new())
}

/// Γ_R from its presentation: subsets of the multiplicative monoid modulo
/// the congruence generated by x_0 ~ 0, x_{-1} ~ 1 and
/// x_{a+b} + x_a + x_b ~ x_a + x_b.
fn presented_classes(r: &FiniteRing) -> Result<Vec<usize>, String> {
    let n = r.size();
    let mul = (0..n * n).map(|k| r.mul_idx(k / n, k % n)).collect();
    let p = Powerset::new(FiniteMonoid::new(n, mul, r.one_index()).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let set = |m: &[usize]| p.subset(m);
    let mut rel = vec![(set(&[r.zero_index()]), set(&[])), (set(&[r.neg_idx(r.one_index())]), set(&[r.one_index()]))];
    for a in 0..n {
        for b in 0..n {
            rel.push((set(&[a, b, r.add_idx(a, b)]), set(&[a, b])));
        }
    }
    let c = congruence_closure(&p, &rel).map_err(|e| e.to_string())?;
    let carrier = p.carrier().ok_or("powerset carrier")?;
    let position: HashMap<_, usize> = carrier.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect();
    Ok((0..1u64 << n).map(|m| c.class_of(position[&set(&common::members(m))])).collect())
}

fn structure_theorem() -> Outcome {
    let mut pairs = 0usize;
    for spec in ["z4", "z6", "f4", "ut2(z2)"] {
        let r = ring(spec);
        let g = enumerate_gamma(&r).map_err(|e| e.to_string())?;
        let subsets = 1u64 << r.size();
        let span: Vec<u64> = (0..subsets).map(|m| common::span_mask(&r, m)).collect();
        let canon: Vec<usize> = (0..subsets)
            .map(|m| g.sum_index(&common::members(m)).map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        let presented = presented_classes(&r)?;
        for a in 0..subsets as usize {
            for b in 0..subsets as usize {
                let by_span = span[a] == span[b];
                ensure(by_span == (canon[a] == canon[b]) && by_span == (presented[a] == presented[b]), || {
                    format!("{spec}: subsets {a:#b} and {b:#b} disagree")
                })?;
            }
            for x in 0..r.size() {
                let below = g.add_idx(canon[a], g.nu_index(x)) == canon[a];
                ensure(below == (span[a] >> x & 1 == 1), || format!("{spec}: order at {a:#b}, {x}"))?;
            }
        }
        pairs += (subsets * subsets) as usize;
    }
    Ok(format!("{pairs} subset pairs"))
}

fn valuation_suite() -> Outcome {
    let seed = seed_from_env();
    let mut ideal_not_multiplicative = Vec::new();
    let mut solution_not_multiplicative = Vec::new();
    for (spec, r) in corpus() {
        let all: Vec<usize> = (0..r.size()).collect();
        let exhaustive = ValuationSample::exhaustive(all.clone());
        let g = enumerate_gamma(&r).map_err(|e| e.to_string())?;
        let u = check_valuation(&r, &g, |a| g.nu(*a), &exhaustive, ValuationMode::Multiplicative);
        ensure(u.is_valuation() && u.is_nondegenerate(), || format!("universal on {spec}: {:?}", u.lines()))?;

        let s = ideal_semiring(&r);
        let i = check_valuation(&r, &s, |a| s.nu(*a), &exhaustive, ValuationMode::Multiplicative);
        ensure(i.is_unital() && i.is_superadditive() && i.is_nondegenerate(), || {
            format!("ideal on {spec}: {:?}", i.lines())
        })?;
        if !i.is_multiplicative() {
            ideal_not_multiplicative.push(spec.clone());
        }

        if r.size() > 1 {
            let vars = vec!["x".to_string()];
            let er = ExpressionRing::new(&r, vars.clone()).ok_or("negation")?;
            let pool: Vec<usize> = all.iter().copied().filter(|&a| a != r.zero_index()).collect();
            let mut rng = seeded_rng(seed);
            let mut draw = || random_expression(&mut rng, &r, &pool, &vars, 3, 2);
            let pairs: Vec<_> = (0..60).map(|_| (draw(), draw())).collect();
            let elements = pairs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
            let sample = ValuationSample { elements, pairs };
            let sol = solution_set_semiring(r.size());
            let v = check_valuation(
                &er,
                &sol,
                |f| solution_set(&r, f, &all).expect("one variable"),
                &sample,
                ValuationMode::Multiplicative,
            );
            ensure(v.is_unital() && v.is_superadditive(), || format!("solution sets on {spec}: {:?}", v.lines()))?;
            let domain = r.is_commutative() && (1..r.size()).all(|a| (1..r.size()).all(|b| r.mul_idx(a, b) != 0));
            if domain {
                ensure(v.is_multiplicative(), || format!("solution sets on the field {spec}: {:?}", v.lines()))?;
            } else if !v.is_multiplicative() {
                solution_not_multiplicative.push(spec.clone());
            }
        }
    }
    Ok(format!(
        "ideal valuation not multiplicative on {}; solution sets not multiplicative on {}",
        ideal_not_multiplicative.join(" "),
        solution_not_multiplicative.join(" ")
    ))
}

fn three_way_lemma() -> Outcome {
    for (spec, r) in corpus() {
        let g = enumerate_gamma(&r).map_err(|e| e.to_string())?;
        for a in 0..r.size() {
            for b in 0..r.size() {
                ensure(meet_of_sum_check(&r, &g, |x| g.nu(*x), &a, &b), || format!("{spec} at ({a}, {b})"))?;
            }
        }
    }
    let mut rng = seeded_rng(seed_from_env());
    let mut draw = || -> Q {
        if rng.gen_bool(0.05) {
            return qi(0);
        }
        let n: i64 = rng.gen_range(-5000..=5000);
        let d: i64 = rng.gen_range(1..=720);
        q(n, d)
    };
    for _ in 0..1000 {
        let (a, b) = (draw(), draw());
        let sum = &a + &b;
        for p in [2u64, 3, 5] {
            let nu = |x: &Q| nu_padic(p, x).expect("prime");
            ensure(meet_of_sum_check(&Rationals, &Tropical, nu, &a, &b), || format!("ν_{p} at ({a}, {b})"))?;
            let oracle = |x: &Q| common::padic(p, x);
            let min = |x: Option<i64>, y: Option<i64>| match (x, y) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, None) => x,
                (None, y) => y,
            };
            let (va, vb, vs) = (oracle(&a), oracle(&b), oracle(&sum));
            ensure(min(va, vb) == min(vs, va) && min(va, vb) == min(vs, vb), || format!("oracle ν_{p} at ({a}, {b})"))?;
            let lib = nu(&a);
            ensure(lib.finite().map(|x| x.to_integer().try_into().unwrap_or(i64::MAX)) == va, || {
                format!("ν_{p}({a}) = {lib}, oracle {va:?}")
            })?;
        }
        let gcd_view = |x: &Q| GcdRational::new(x.abs()).expect("nonnegative");
        ensure(meet_of_sum_check(&Rationals, &GcdRationals, gcd_view, &a, &b), || format!("gcd at ({a}, {b})"))?;
        let (ga, gb, gd) = (gcd_view(&a), gcd_view(&b), gcd_view(&(&a - &b)));
        let lib = GcdRationals.add(&ga, &gb);
        ensure(lib == GcdRationals.add(&gd, &gb), || format!("gcd(a,b) ≠ gcd(a−b,b) at ({a}, {b})"))?;
        ensure(*lib.value() == common::rational_gcd(&a, &b), || format!("gcd oracle at ({a}, {b})"))?;
    }
    Ok(String::new())
}

fn small_fields() -> Outcome {
    for p in [2, 3, 5, 7] {
        let size = enumerate_gamma(&ring(&format!("z{p}"))).map_err(|e| e.to_string())?.size();
        ensure(size == 2, || format!("|Γ_F{p}| = {size}"))?;
    }
    let f4 = enumerate_gamma(&ring("f4")).map_err(|e| e.to_string())?.size();
    ensure(f4 == 5, || format!("|Γ_F4| = {f4}"))?;
    Ok("expected discrepancy: |Γ_F4| = 5, while 𝔹[x]/⟨x²=1⟩ has 4 elements".into())
}

fn crease_example() -> Outcome {
    let r = r8();
    let g = enumerate_gamma(&r).map_err(|e| e.to_string())?;
    let vars = vec!["z".to_string()];
    let f = parse_expression("(j+k)z^2 + zk + j", &r, &vars, false).map_err(|e| e.to_string())?;
    let found: Vec<String> = roots(&r, &f, &r.display_order())
        .map_err(|e| e.to_string())?
        .iter()
        .map(|p| r.label_of(p[0]).to_string())
        .collect();
    ensure(found == ["1", "j", "k", "i+j"], || format!("roots {found:?}"))?;
    let t = tropicalize(&f, &g, |a| g.nu_index(*a));
    let text = t.expr.to_text(&g);
    ensure(text == "x_{j+k}*z^2 + z*x_k + x_j", || format!("tropicalization {text}"))?;
    let singles: Vec<Vec<usize>> = ["0", "1", "x_i", "x_j", "x_k", "x_{i+j}", "x_{j+k}", "x_{i+j+k}"]
        .iter()
        .map(|s| name(&g, s).map(|k| vec![k]))
        .collect::<Result<_, _>>()?;
    let crease: Vec<String> = crease_points(&g, &t.expr, &singles)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|p| g.name(p[0]))
        .collect();
    ensure(crease == ["1", "x_j", "x_k", "x_{i+j}"], || format!("crease singletons {crease:?}"))?;
    let all: Vec<Vec<usize>> = (0..g.size()).map(|k| vec![k]).collect();
    let full = crease_points(&g, &t.expr, &all).map_err(|e| e.to_string())?;
    let ijk = name(&g, "[x_i+x_j+x_k]")?;
    ensure(full.contains(&vec![ijk]), || "[x_i+x_j+x_k] is not a crease point".into())?;
    Ok(String::new())
}

fn roots_crease() -> Outcome {
    let mut rng = seeded_rng(seed_from_env());
    let names: Vec<String> = ["x", "y"].map(String::from).to_vec();
    let mut checked = 0;
    for spec in ["ut2(z2)", "z4"] {
        let r = ring(spec);
        let g = enumerate_gamma(&r).map_err(|e| e.to_string())?;
        let elems: Vec<usize> = (0..r.size()).collect();
        let pool: Vec<usize> = elems.iter().copied().filter(|&a| a != r.zero_index()).collect();
        for _ in 0..250 {
            let nvars = rng.gen_range(1..=2);
            let f = random_expression(&mut rng, &r, &pool, &names[..nvars], 3, 3);
            let rep = root_crease_check(&r, &g, &f, |a| g.nu_index(*a), &elems).map_err(|e| e.to_string())?;
            ensure(rep.holds(), || format!("{spec}: {} has roots {:?} off the crease locus", f.to_text(&r), rep.violations))?;
            checked += rep.roots.len();
        }
    }
    Ok(format!("{checked} roots checked"))
}

fn ostrowski() -> Outcome {
    let values = [qi(0), q(1, 2), qi(1), qi(2)];
    let primes = [2u64, 3, 5];
    let mut rng = seeded_rng(seed_from_env());
    let vector = |x: &Q| {
        if x.is_zero() {
            PadicVector::Infinity
        } else {
            let exps = primes.iter().chain(&[7, 11]).filter_map(|&p| common::padic(p, x).map(|e| (p, e))).collect();
            PadicVector::from_exponents(exps)
        }
    };
    for code in 0..values.len().pow(3) {
        let assignment: BTreeMap<u64, Q> =
            primes.iter().enumerate().map(|(k, &p)| (p, values[code / 4usize.pow(k as u32) % 4].clone())).collect();
        let positive: Vec<u64> = assignment.iter().filter(|(_, c)| c.is_positive()).map(|(p, _)| *p).collect();
        let h = classify_trop_hom(&assignment).map_err(|e| e.to_string())?;
        match (&h, positive.as_slice()) {
            (HomClassification::Trivial, []) => {}
            (HomClassification::PAdic { p, scale }, [only]) if p == only => {
                for _ in 0..100 {
                    let x = q(rng.gen_range(-10_000..=10_000), rng.gen_range(1..=3_000));
                    let phi = apply_trop_hom(&assignment, &vector(&x));
                    let rescaled = phi.finite().map(|v| v / scale);
                    let expected = common::padic(*p, &x).map(|e| BigRational::from_integer(e.into()));
                    ensure(rescaled == expected, || format!("{h} at {x}: {phi}"))?;
                }
            }
            (HomClassification::Invalid(InvalidRelation::TwoPrimes(p, r)), [_, _, ..]) => {
                // 1_p + 1_q is the unit vector sum, which is 0 in Γ_ℚ; φ of
                // it is min(c_p, c_q) but φ(0-vector) = 0.
                let sum = valuon::semiring::PadicVectors.add(&PadicVector::unit(*p), &PadicVector::unit(*r));
                let phi_sum = apply_trop_hom(&assignment, &sum);
                let lhs = assignment[p].clone().min(assignment[r].clone());
                ensure(phi_sum == TropicalValue::int(0) && lhs.is_positive(), || format!("witness {h} not violated"))?;
            }
            _ => return Err(format!("{assignment:?} classified as {h}")),
        }
    }
    Ok("64 assignments".into())
}

fn abelianization() -> Outcome {
    let rep = abelianization_correspondence(&r8()).map_err(|e| e.to_string())?;
    ensure(rep.line() == "5 5 isomorphic: yes", || rep.line())?;
    for (spec, r) in corpus().into_iter().filter(|(_, r)| r.is_commutative()) {
        let rep = abelianization_correspondence(&r).map_err(|e| e.to_string())?;
        let size = enumerate_gamma(&r).map_err(|e| e.to_string())?.size();
        ensure(rep.isomorphic && rep.ab_gamma_size == size && rep.gamma_ab_size == size, || {
            format!("{spec}: {}", rep.line())
        })?;
    }
    Ok(String::new())
}

fn random_distances<G: Rng>(rng: &mut G, n: usize) -> Vec<Vec<Option<u64>>> {
    let mut d = vec![vec![Some(0); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let w = if rng.gen_bool(0.2) { None } else { Some(rng.gen_range(0..10)) };
            d[i][j] = w;
            d[j][i] = w;
        }
    }
    d
}

fn to_matrix(d: &[Vec<Option<u64>>]) -> TropMatrix<TropicalValue> {
    TropMatrix::from_fn(d.len(), |i, j| match d[i][j] {
        Some(w) => TropicalValue::int(w as i64),
        None => TropicalValue::Infinity,
    })
}

fn fixed_point_exact<S: StarSemiring>(s: &S, a: &TropMatrix<S::Elem>) -> Result<(), String> {
    let x = least_fixed_point(s, a).map_err(|e| e.to_string())?;
    let n = a.n();
    let rhs = mat_add(s, &mat_mul(s, a, &x).map_err(|e| e.to_string())?, &mat_identity(s, n))
        .map_err(|e| e.to_string())?;
    ensure(rhs == x, || "X ≠ AX + I".into())
}

fn tropical_linalg() -> Outcome {
    let mut rng = seeded_rng(seed_from_env());
    for _ in 0..200 {
        let n = rng.gen_range(1..=6);
        let d = random_distances(&mut rng, n);
        let c = minimax_closure(&UltrametricCandidate::new(to_matrix(&d)).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure(*c.matrix() == to_matrix(&common::minimax_paths(&d)), || format!("closure of {d:?}"))?;
    }
    let mut ultrametric = 0;
    for case in 0..1000 {
        let n = rng.gen_range(1..=8);
        let mut d = UltrametricCandidate::new(to_matrix(&random_distances(&mut rng, n))).map_err(|e| e.to_string())?;
        if case % 2 == 0 {
            d = minimax_closure(&d).map_err(|e| e.to_string())?;
        }
        let closed = minimax_closure(&d).map_err(|e| e.to_string())? == d;
        let verdict = is_ultrametric(&d).ultrametric;
        ensure(verdict == closed, || format!("ultrametric {verdict}, closed {closed} for {:?}", d.matrix()))?;
        ultrametric += usize::from(verdict);
    }
    for _ in 0..200 {
        let n = rng.gen_range(1..=6);
        let rows = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        if rng.gen_bool(0.2) { TropicalValue::Infinity } else { TropicalValue::int(rng.gen_range(0..10)) }
                    })
                    .collect()
            })
            .collect();
        let mm = TropMatrix::from_rows(rows).map_err(|e| e.to_string())?;
        fixed_point_exact(&MinMax, &mm)?;
        fixed_point_exact(&Tropical, &mm)?;
        let rows = (0..n).map(|_| (0..n).map(|_| rng.gen_bool(0.3)).collect()).collect();
        let b = valuon::linalg::bool_matrix(rows).map_err(|e| e.to_string())?;
        fixed_point_exact(&Boolean, &b)?;
    }
    Ok(format!("{ultrametric} of 1000 candidates ultrametric"))
}

/// Entrywise exponents with `None` for ∞, computed by the oracle.
fn exponents(p: u64, m: &TropMatrix<Q>) -> Vec<Vec<Option<i64>>> {
    m.rows().iter().map(|r| r.iter().map(|x| common::padic(p, x)).collect()).collect()
}

fn representation() -> Outcome {
    let m = |rows: Vec<Vec<Q>>| TropMatrix::from_rows(rows).expect("square");
    let gens = vec![
        ("shear".to_string(), m(vec![vec![qi(1), q(1, 2)], vec![qi(0), qi(1)]])),
        ("scale".to_string(), m(vec![vec![qi(2), qi(0)], vec![qi(0), q(1, 3)]])),
    ];
    let geq = |a: Option<i64>, b: Option<i64>| match (a, b) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(a), Some(b)) => a >= b,
    };
    let plus = |a: Option<i64>, b: Option<i64>| Some(a? + b?);
    let min = |a: Option<i64>, b: Option<i64>| if geq(a, b) { b } else { a };
    for p in [2, 3] {
        let rep = RationalRep::new(p, gens.clone()).map_err(|e| e.to_string())?;
        let v = rep_to_valuation(&rep, 3);
        ensure(v.report.is_superadditive() && v.report.is_supermultiplicative(), || {
            format!("p = {p}: {:?}", v.report.lines())
        })?;
        let words = rep.words(3);
        let qm = valuon::linalg::QMatrices { n: 2 };
        for u in &words {
            for w in &words {
                let (nu, nw) = (exponents(p, u), exponents(p, w));
                let sum = exponents(p, &qm.add(u, w));
                let prod = exponents(p, &qm.mul(u, w));
                for i in 0..2 {
                    for j in 0..2 {
                        ensure(geq(sum[i][j], min(nu[i][j], nw[i][j])), || format!("p = {p}: sum at ({i}, {j})"))?;
                        let bound = min(plus(nu[i][0], nw[0][j]), plus(nu[i][1], nw[1][j]));
                        ensure(geq(prod[i][j], bound), || format!("p = {p}: product at ({i}, {j})"))?;
                    }
                }
            }
        }
        ensure(words.len() == 15, || format!("{} words", words.len()))?;
    }
    Ok("15 words per prime".into())
}

fn criteria() -> Vec<Criterion> {
    let s = Duration::from_secs;
    vec![
        Criterion { id: 1, name: "R8 multiplication table", budget: Some(s(1)), check: r8_table },
        Criterion { id: 2, name: "Fano additive structure", budget: Some(s(1)), check: fano_structure },
        Criterion { id: 3, name: "structure theorem oracle", budget: Some(s(30)), check: structure_theorem },
        Criterion { id: 4, name: "valuation axiom suite", budget: None, check: valuation_suite },
        Criterion { id: 5, name: "three-way equality", budget: None, check: three_way_lemma },
        Criterion { id: 6, name: "small fields", budget: None, check: small_fields },
        Criterion { id: 7, name: "crease example", budget: Some(s(1)), check: crease_example },
        Criterion { id: 8, name: "roots are crease points", budget: Some(s(60)), check: roots_crease },
        Criterion { id: 9, name: "Ostrowski classification", budget: None, check: ostrowski },
        Criterion { id: 10, name: "abelianization", budget: Some(s(10)), check: abelianization },
        Criterion { id: 11, name: "tropical linear algebra", budget: Some(s(60)), check: tropical_linalg },
        Criterion { id: 12, name: "representation valuation", budget: None, check: representation },
    ]
}

fn main() -> ExitCode {
    println!("acceptance (seed {})", seed_from_env());
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    let all = criteria();
    for c in &all {
        let start = Instant::now();
        let outcome = panic::catch_unwind(c.check).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let took = start.elapsed();
        let outcome = match (outcome, c.budget) {
            (Ok(_), Some(b)) if took > b => Err(format!("took longer than {} s", b.as_secs())),
            (o, _) => o,
        };
        let ms = took.as_millis();
        match outcome {
            Ok(note) if note.is_empty() => println!("criterion {:>2} {}: PASS ({ms} ms)", c.id, c.name),
            Ok(note) => println!("criterion {:>2} {}: PASS ({ms} ms; {note})", c.id, c.name),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {}: FAIL ({ms} ms; {why})", c.id, c.name);
            }
        }
    }
    println!("{} of {} criteria passed", all.len() - failed, all.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
