//! Invariant sweeps behind `dadew verify`. Each sweep compares a library
//! routine against an oracle computed a different way.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::dade::{
    add_labels, deflate_label, inflate_label, interval_label, invert_omega, omega_lambda,
    omega_of_interval_closed_form, CyclicPGroupShape, DadeLabel,
};
use crate::error::{Error, Result};
use crate::ffpoly::{
    is_irreducible, star_involution, verify_degree_lemma, verify_min_poly_degree_lemma,
    verify_power_lemma, verify_unitary_lemma, GaloisField, LemmaReport, MonicPoly,
    ENUMERATION_BUDGET,
};
use crate::grouppoly::{
    centralizer_scenarios, defect_exponent, group_order, torus_order, Family, GroupDescriptor,
};
use crate::numth::{
    floor_parity, floor_parity_predicted, is_prime, padic_val, power_minus_sign, prime_power,
    zsygmondy_prime, Parity, Sign,
};
use crate::pipeline::{enumerate_scenarios, reproduce_bdr_example, w_base};
use crate::signs::{
    interval_form_label, label_from_sign_sequence, omega_g_by_floor_parity,
    omega_g_of_tower_element, sign_sequence_oracle, GLTowerElement,
};

const MAX_RECORDED_FAILURES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Numth,
    Ffpoly,
    Dade,
    Signs,
    Grouppoly,
    Pipeline,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Numth,
        Suite::Ffpoly,
        Suite::Dade,
        Suite::Signs,
        Suite::Grouppoly,
        Suite::Pipeline,
    ];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Numth => "numth",
            Suite::Ffpoly => "ffpoly",
            Suite::Dade => "dade",
            Suite::Signs => "signs",
            Suite::Grouppoly => "grouppoly",
            Suite::Pipeline => "pipeline",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.to_string() == s)
            .ok_or_else(|| Error::OutOfRange(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub name: String,
    pub cases: u64,
    pub failure_count: u64,
    /// The first few failures.
    pub failures: Vec<String>,
    pub millis: u128,
}

impl SweepResult {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub sweeps: Vec<SweepResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.sweeps.iter().all(SweepResult::passed)
    }

    pub fn cases(&self) -> u64 {
        self.sweeps.iter().map(|s| s.cases).sum()
    }
}

struct Sweep {
    result: SweepResult,
    start: Instant,
}

impl Sweep {
    fn new(name: &str) -> Sweep {
        Sweep {
            result: SweepResult {
                name: name.to_string(),
                cases: 0,
                failure_count: 0,
                failures: Vec::new(),
                millis: 0,
            },
            start: Instant::now(),
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.result.cases += 1;
        if !ok {
            self.fail(msg());
        }
    }

    fn fail(&mut self, msg: String) {
        self.result.failure_count += 1;
        if self.result.failures.len() < MAX_RECORDED_FAILURES {
            self.result.failures.push(msg);
        }
    }

    /// Records an error from the code under test as a failure.
    fn attempt<T>(&mut self, what: impl FnOnce() -> String, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.result.cases += 1;
                self.fail(format!("{}: {e}", what()));
                None
            }
        }
    }

    fn absorb(&mut self, report: &LemmaReport) {
        self.result.cases += report.examined;
        for v in &report.violations {
            self.fail(format!("{} [Q={}]: {v}", report.lemma, report.field_order));
        }
    }

    fn finish(mut self) -> SweepResult {
        self.result.millis = self.start.elapsed().as_millis();
        self.result
    }
}

pub fn run_suite(suite: Suite) -> SuiteReport {
    let sweeps = match suite {
        Suite::Numth => vec![
            sweep_lifting_exponent(),
            sweep_floor_parity(),
            sweep_zsygmondy(),
        ],
        Suite::Ffpoly => vec![
            sweep_involutions(),
            sweep_degree_lemma(),
            sweep_unitary_lemma(),
            sweep_min_poly_degree_lemma(),
            sweep_power_lemma(),
        ],
        Suite::Dade => vec![
            sweep_omega_lambda(),
            sweep_interval_closed_form(),
            sweep_deflate_inflate(),
        ],
        Suite::Signs => vec![sweep_sign_oracle(), sweep_omega_g()],
        Suite::Grouppoly => vec![sweep_defect_exponent(), sweep_scenarios(), sweep_lagrange()],
        Suite::Pipeline => vec![
            sweep_bdr_example(),
            sweep_crucial_case(),
            sweep_gl_triviality(),
            sweep_enumeration_invariants(),
            sweep_classical_reduction(),
        ],
    };
    SuiteReport { suite, sweeps }
}

pub fn run_all() -> Vec<SuiteReport> {
    Suite::ALL.into_iter().map(run_suite).collect()
}

pub(crate) const ODD_PRIMES_TO_97: [u64; 24] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

fn odd_primes_up_to(bound: u64) -> impl Iterator<Item = u64> {
    ODD_PRIMES_TO_97
        .into_iter()
        .take_while(move |&p| p <= bound)
}

fn prime_powers_up_to(bound: u64) -> impl Iterator<Item = u64> {
    (2..=bound).filter(|&q| prime_power(q).is_some())
}

/// `v_p(x)` by repeated big-integer division.
fn valuation_oracle(p: u64, x: &BigInt) -> u32 {
    let p = BigInt::from(p);
    let mut x = x.clone();
    let mut v = 0;
    while !x.is_zero() && x.is_multiple_of(&p) {
        x /= &p;
        v += 1;
    }
    v
}

fn sweep_lifting_exponent() -> SweepResult {
    let mut s = Sweep::new("v_p(q^n - ε^n) = v_p(q - ε) + v_p(n)");
    for q in prime_powers_up_to(50) {
        let qb = BigUint::from(q);
        for eps in [Sign::Plus, Sign::Minus] {
            let q_minus = BigInt::from(q) - eps.value();
            for p in odd_primes_up_to(47).filter(|&p| q_minus.is_multiple_of(&BigInt::from(p))) {
                for n in 1..=60u64 {
                    let lhs = valuation_oracle(p, &power_minus_sign(&qb, n, eps));
                    let rhs = padic_val(p, &q_minus)
                        .and_then(|a| Ok(a + padic_val(p, &BigInt::from(n))?));
                    s.check(rhs.as_ref().ok() == Some(&lhs), || {
                        format!("q={q} n={n} ε={eps} p={p}: oracle {lhs}, closed form {rhs:?}")
                    });
                }
            }
        }
    }
    s.finish()
}

fn sweep_floor_parity() -> SweepResult {
    let mut s = Sweep::new("floor parity: direct value = case split");
    for p in ODD_PRIMES_TO_97 {
        for b in 1..=8u32 {
            let pb = BigUint::from(p).pow(b);
            for m in 1..=10_000u64 {
                let direct = floor_parity(m, b, p);
                let predicted = floor_parity_predicted(m, b, p);
                s.check(direct == predicted, || {
                    format!("m={m} b={b} p={p}: {direct:?} vs {predicted:?}")
                });
                // An independent big-integer evaluation on a thinned grid.
                if m % 97 == 1 {
                    let sum = ((&pb * m) >> 1u32) + m / 2;
                    let oracle = if sum.is_even() {
                        Parity::Even
                    } else {
                        Parity::Odd
                    };
                    s.check(oracle == direct, || {
                        format!("m={m} b={b} p={p}: big-integer {oracle:?}")
                    });
                }
            }
        }
    }
    s.finish()
}

fn sweep_zsygmondy() -> SweepResult {
    let mut s = Sweep::new("primitive prime divisors");
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
        for eps in [Sign::Plus, Sign::Minus] {
            let qb = BigUint::from(q);
            for n in 3..=20u32 {
                let f = match zsygmondy_prime(q, n, eps) {
                    Ok(Some(f)) => f,
                    Ok(None) => {
                        s.check((q, n, eps) == (2, 3, Sign::Minus), || {
                            format!("q={q} n={n} ε={eps}: none")
                        });
                        continue;
                    }
                    Err(Error::HypothesisViolation(_)) => continue,
                    Err(Error::OutOfRange(_)) => continue,
                    Err(e) => {
                        s.fail(format!("q={q} n={n} ε={eps}: {e}"));
                        continue;
                    }
                };
                let fb = BigInt::from(f);
                let divides = |j: u64| power_minus_sign(&qb, j, eps).is_multiple_of(&fb);
                s.check(is_prime(f) && divides(n as u64), || {
                    format!("q={q} n={n} ε={eps}: {f} does not divide")
                });
                s.check((1..n as u64).all(|j| !divides(j)), || {
                    format!("q={q} n={n} ε={eps}: {f} not primitive")
                });
            }
        }
    }
    s.finish()
}

pub(crate) const LEMMA_FIELDS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

fn sweep_involutions() -> SweepResult {
    let mut s = Sweep::new("star and dagger are involutions on irreducibles");
    for q in LEMMA_FIELDS {
        let field = GaloisField::new(q).expect("valid order");
        for d in 1..=4usize {
            for t in 0..(q as u64).pow(d as u32) {
                let f = MonicPoly::from_index(&field, d, t);
                if f.constant_term() == 0 || !is_irreducible(&field, &f) {
                    continue;
                }
                let Some(st) = s.attempt(|| format!("star of {f:?}"), star_involution(&field, &f))
                else {
                    continue;
                };
                let back = star_involution(&field, &st).ok();
                // Roots of Δ* are inverses: Δ*(1/ζ) = 0 ⇔ Δ(ζ) = 0 on the prime field.
                let roots_ok = (1..q).all(|z| {
                    let zi = field.inv(z).unwrap();
                    (f.eval(&field, z) == 0) == (st.eval(&field, zi) == 0)
                });
                s.check(
                    back.as_ref() == Some(&f)
                        && st.degree() == f.degree()
                        && is_irreducible(&field, &st)
                        && roots_ok,
                    || format!("F_{q}: star misbehaves on {}", f.render(&field)),
                );
            }
        }
    }
    for q in [2u32, 3] {
        let field = GaloisField::new(q * q).expect("valid order");
        for d in 1..=3usize {
            for t in 0..((q * q) as u64).pow(d as u32) {
                let f = MonicPoly::from_index(&field, d, t);
                if f.constant_term() == 0 || !is_irreducible(&field, &f) {
                    continue;
                }
                let g = crate::ffpoly::dagger_involution(&field, q, &f);
                let ok = g.as_ref().is_ok_and(|g| {
                    is_irreducible(&field, g)
                        && g.degree() == f.degree()
                        && crate::ffpoly::dagger_involution(&field, q, g).ok().as_ref() == Some(&f)
                });
                s.check(ok, || {
                    format!("F_{}: dagger misbehaves on {}", q * q, f.render(&field))
                });
            }
        }
    }
    s.finish()
}

/// Largest degree `≤ cap` whose polynomial space fits the sweep budget.
fn degree_cap(field_order: u64, cap: u32) -> u32 {
    (1..=cap)
        .take_while(|&d| field_order.pow(d) <= ENUMERATION_BUDGET)
        .last()
        .unwrap_or(0)
}

fn sweep_degree_lemma() -> SweepResult {
    let mut s = Sweep::new("order-p irreducibles: degree = ord_p(q), self-dual iff even");
    for q in LEMMA_FIELDS {
        let r = prime_power(q as u64).unwrap().0;
        for p in odd_primes_up_to(31).filter(|&p| p != r) {
            let bound = degree_cap(q as u64, 6);
            if let Some(rep) =
                s.attempt(|| format!("q={q} p={p}"), verify_degree_lemma(q, p, bound))
            {
                s.absorb(&rep);
            }
        }
    }
    s.finish()
}

fn sweep_unitary_lemma() -> SweepResult {
    let mut s = Sweep::new("odd-degree p-power irreducibles over F_{q^2} are dagger-fixed");
    for q in LEMMA_FIELDS {
        for p in odd_primes_up_to(31).filter(|&p| (q as u64 + 1) % p == 0) {
            if let Some(rep) = s.attempt(|| format!("q={q} p={p}"), verify_unitary_lemma(q, p, 6)) {
                s.absorb(&rep);
            }
        }
    }
    s.finish()
}

fn sweep_min_poly_degree_lemma() -> SweepResult {
    let mut s = Sweep::new("p-power roots have minimal polynomial degree p^b");
    for q in LEMMA_FIELDS {
        for p in odd_primes_up_to(31).filter(|&p| (q as u64 - 1) % p == 0) {
            let bound = degree_cap(q as u64, 6);
            let rep = verify_min_poly_degree_lemma(q, p, bound);
            if let Some(rep) = s.attempt(|| format!("Q={q} p={p}"), rep) {
                s.absorb(&rep);
            }
        }
    }
    s.finish()
}

fn sweep_power_lemma() -> SweepResult {
    let mut s = Sweep::new("powers of companion matrices have irreducible minimal polynomials");
    for q in LEMMA_FIELDS {
        if let Some(rep) = s.attempt(|| format!("q={q}"), verify_power_lemma(q, 6)) {
            s.absorb(&rep);
        }
    }
    s.finish()
}

/// Prefix-parity definition of `ω_Λ`, entry by entry.
fn omega_oracle(bits: u64, l: u32) -> Vec<i8> {
    (1..=l)
        .map(|i| {
            let below = if i >= 64 {
                bits
            } else {
                bits & ((1u64 << i) - 1)
            };
            if below.count_ones() % 2 == 0 {
                1
            } else {
                -1
            }
        })
        .collect()
}

fn sweep_omega_lambda() -> SweepResult {
    let mut s = Sweep::new("ω_Λ bijection and homomorphism, l ≤ 16");
    for l in 1..=16u32 {
        let shape = CyclicPGroupShape::new(3, l).unwrap();
        let mut seen = vec![false; 1 << l];
        let basis: Vec<DadeLabel> = (0..l)
            .map(|j| DadeLabel::from_indices(shape, &[j]).unwrap())
            .collect();
        for bits in 0..(1u64 << l) {
            let x = DadeLabel::from_bits(shape, bits).unwrap();
            let v = omega_lambda(&x);
            s.check(v.entries() == omega_oracle(bits, l).as_slice(), || {
                format!("l={l} A={bits:#b}")
            });
            let code = v
                .entries()
                .iter()
                .enumerate()
                .fold(0usize, |acc, (i, &e)| acc | (((e < 0) as usize) << i));
            s.check(!seen[code], || {
                format!("l={l}: ω_Λ not injective at {bits:#b}")
            });
            seen[code] = true;
            s.check(invert_omega(&v, shape).ok() == Some(x), || {
                format!("l={l}: inverse fails at {bits:#b}")
            });
            for g in &basis {
                let sum = add_labels(&x, g).unwrap();
                s.check(omega_lambda(&sum) == v.product(&omega_lambda(g)), || {
                    format!("l={l}: homomorphism fails at {bits:#b} + {:?}", g.indices())
                });
            }
        }
        s.check(seen.iter().all(|&b| b), || {
            format!("l={l}: ω_Λ not surjective")
        });
    }
    s.finish()
}

fn sweep_interval_closed_form() -> SweepResult {
    let mut s = Sweep::new("interval closed form agrees with ω_Λ, l ≤ 16");
    for l in 1..=16u32 {
        let shape = CyclicPGroupShape::new(5, l).unwrap();
        for a in 0..l as i64 {
            for b in a..l as i64 {
                let bits = interval_label(shape, a, b).unwrap().bits();
                let oracle = omega_oracle(bits, l);
                for i in 1..=l {
                    let c = omega_of_interval_closed_form(a, b, l, i).ok();
                    s.check(c == Some(oracle[i as usize - 1]), || {
                        format!("[{a},{b}] l={l} i={i}")
                    });
                }
            }
        }
    }
    s.finish()
}

fn sweep_deflate_inflate() -> SweepResult {
    let mut s = Sweep::new("deflate ∘ inflate round trip, l ≤ 10");
    for l in 2..=10u32 {
        for a in 1..l {
            let lbar = l - a;
            let shape = CyclicPGroupShape::new(7, lbar).unwrap();
            for bits in 0..(1u64 << lbar) {
                let xbar = DadeLabel::from_bits(shape, bits).unwrap();
                for flag in [false, true] {
                    let x = inflate_label(&xbar, a, flag).unwrap();
                    let expected_bits =
                        ((bits >> 1) << (a + 1)) | (u64::from((bits & 1 == 1) ^ flag) << a);
                    s.check(x.bits() == expected_bits, || {
                        format!("inflate l={l} a={a} {bits:#b} {flag}")
                    });
                    let back = deflate_label(&x, a).map(|y| y.bits());
                    s.check(back == Ok(bits & !1), || {
                        format!("deflate l={l} a={a} {bits:#b} {flag}")
                    });
                }
            }
        }
    }
    s.finish()
}

fn sweep_sign_oracle() -> SweepResult {
    let mut s = Sweep::new("sign sequences = interval labels");
    for eps in [Sign::Plus, Sign::Minus] {
        for p in [3u64, 7, 11, 19] {
            for m in (1..=99u64).filter(|m| m % p != 0) {
                for a in 0..=3u32 {
                    for aprime in 0..=3u32 {
                        let l = a + aprime;
                        if l == 0 {
                            continue;
                        }
                        for e in 0..=aprime.min(l - 1) {
                            let v = sign_sequence_oracle(eps, m, aprime, a, l, e, p);
                            let lhs = v.and_then(|v| label_from_sign_sequence(&v, p));
                            let rhs = interval_form_label(eps, m, a, e, l, p);
                            s.check(lhs.is_ok() && lhs == rhs, || {
                                format!("ε={eps} m={m} a={a} a'={aprime} e={e} p={p}: {lhs:?} vs {rhs:?}")
                            });
                        }
                    }
                }
            }
        }
    }
    s.finish()
}

fn sweep_omega_g() -> SweepResult {
    let mut s = Sweep::new("ω_G from ranks = floor-parity path");
    for eps in [Sign::Plus, Sign::Minus] {
        for p in odd_primes_up_to(31) {
            for m in (1..=200u64).filter(|m| m % p != 0) {
                for aprime in 0..=4u32 {
                    for b in 0..=aprime {
                        let x = GLTowerElement::new(eps, m, aprime, p, b).unwrap();
                        let lhs = omega_g_of_tower_element(&x);
                        let rhs = omega_g_by_floor_parity(&x);
                        s.check(lhs.is_ok() && lhs == rhs, || {
                            format!("{x:?}: {lhs:?} vs {rhs:?}")
                        });
                    }
                }
            }
        }
    }
    s.finish()
}

fn sweep_defect_exponent() -> SweepResult {
    let mut s = Sweep::new("defect exponent = v_p(torus order)");
    for q in prime_powers_up_to(50) {
        let qb = BigUint::from(q);
        for eps in [Sign::Plus, Sign::Minus] {
            for p in odd_primes_up_to(47).filter(|&p| (q as i64 - eps.value()) % p as i64 == 0) {
                for n in 1..=60u64 {
                    let oracle = valuation_oracle(p, &torus_order(eps, n, &qb));
                    let got = defect_exponent(eps, n, &qb, p);
                    s.check(got == Ok(oracle), || {
                        format!("q={q} n={n} ε={eps} p={p}: {got:?} vs {oracle}")
                    });
                }
            }
        }
    }
    s.finish()
}

fn sweep_scenarios() -> SweepResult {
    let mut s = Sweep::new("centralizer scenarios satisfy p | q^d - ε");
    for q in prime_powers_up_to(9) {
        for p in odd_primes_up_to(31).filter(|&p| q % p != 0) {
            for fam in [
                Family::Sp,
                Family::Spin,
                Family::SpinPlus,
                Family::SpinMinus,
            ] {
                for n in 4..=48u64 {
                    let Ok(g) = GroupDescriptor::new(fam, n, q) else {
                        continue;
                    };
                    let Some(list) =
                        s.attempt(|| format!("{g} p={p}"), centralizer_scenarios(&g, p))
                    else {
                        continue;
                    };
                    // Oracle: the least e with p | q^e - 1 fixes (d, ε).
                    let e = (1..p)
                        .find(|&e| BigUint::from(q).pow(e as u32) % p == BigUint::one())
                        .unwrap();
                    for c in list {
                        let v = BigInt::from(c.q_reduced.clone()) - c.eps.value();
                        let d_ok = if e % 2 == 0 {
                            c.d == e / 2 && c.eps == Sign::Minus
                        } else {
                            c.d == e && c.eps == Sign::Plus
                        };
                        s.check(
                            v.is_multiple_of(&BigInt::from(p)) && d_ok && c.support_dim <= n,
                            || format!("{g} p={p}: bad scenario {c:?}"),
                        );
                    }
                }
            }
        }
    }
    s.finish()
}

fn sweep_lagrange() -> SweepResult {
    let mut s = Sweep::new("torus orders divide group orders");
    for n in 1..=8u64 {
        for q in prime_powers_up_to(9) {
            for (fam, eps) in [(Family::Gl, Sign::Plus), (Family::Gu, Sign::Minus)] {
                let g = GroupDescriptor::new(fam, n, q).unwrap();
                let order = BigInt::from(group_order(&g));
                let t = torus_order(eps, n, &BigUint::from(q));
                s.check(order.is_multiple_of(&t), || {
                    format!("{g}: torus {t} does not divide {order}")
                });
            }
        }
    }
    s.finish()
}

fn sweep_bdr_example() -> SweepResult {
    let mut s = Sweep::new("unitary example (d, p, q) = (3, 7, 5)");
    match reproduce_bdr_example() {
        Ok(rep) => {
            for c in rep.checks {
                s.check(c.passed, || {
                    format!("{}: expected {}, got {}", c.name, c.expected, c.actual)
                });
            }
        }
        Err(e) => s.fail(e.to_string()),
    }
    s.finish()
}

/// Crucial-case parameter grid: `(q, p)` with `p | q - ε`.
fn crucial_pairs(eps: Sign) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for q in prime_powers_up_to(30) {
        for p in odd_primes_up_to(31) {
            if (q as i64 - eps.value()) % p as i64 == 0 {
                out.push((q, p));
            }
        }
    }
    out
}

fn sweep_crucial_case() -> SweepResult {
    let mut s = Sweep::new("crucial case: closed form = sign-sequence oracle");
    for (q, p) in crucial_pairs(Sign::Minus) {
        let a = valuation_oracle(p, &BigInt::from(q + 1));
        for n in 2..=50u64 {
            let aprime = valuation_oracle(p, &BigInt::from(n));
            let m = n / p.pow(aprime);
            let oracle = sign_sequence_oracle(Sign::Minus, m, aprime, a, a + aprime, aprime, p)
                .and_then(|v| label_from_sign_sequence(&v, p));
            let got = w_base(Sign::Minus, n, &BigUint::from(q), p).map(|r| r.label);
            s.check(got.is_ok() && got == oracle, || {
                format!("q={q} n={n} p={p}: {got:?} vs {oracle:?}")
            });
        }
    }
    s.finish()
}

fn sweep_gl_triviality() -> SweepResult {
    let mut s = Sweep::new("ε = +1 crucial case is trivial");
    for (q, p) in crucial_pairs(Sign::Plus) {
        for n in 2..=50u64 {
            let got = w_base(Sign::Plus, n, &BigUint::from(q), p);
            s.check(
                got.as_ref()
                    .is_ok_and(|r| r.trivial && r.label.is_trivial()),
                || format!("q={q} n={n} p={p}: {got:?}"),
            );
        }
    }
    s.finish()
}

fn sweep_enumeration_invariants() -> SweepResult {
    let mut s = Sweep::new("GL/GU enumerations: label shape and non-triviality pattern");
    for q in prime_powers_up_to(13) {
        for p in odd_primes_up_to(31).filter(|&p| q % p != 0) {
            for fam in [Family::Gl, Family::Gu] {
                let g = GroupDescriptor::new(fam, 40, q).unwrap();
                let Some(list) = s.attempt(|| format!("{g} p={p}"), enumerate_scenarios(&g, p))
                else {
                    continue;
                };
                for (sc, r) in list {
                    let a = r.a();
                    let nontrivial_expected = sc.eps_reduced == Sign::Minus
                        && sc.m % 2 == 1
                        && sc.aprime >= 1
                        && p % 4 == 3;
                    let in_range = r
                        .label
                        .indices()
                        .iter()
                        .all(|&j| j >= a && j < a + r.aprime);
                    s.check(
                        in_range
                            && r.trivial != nontrivial_expected
                            && r.label.shape().l() == r.defect_exponent,
                        || format!("{g} p={p} n0={}: {}", sc.n0, r.rendered),
                    );
                }
            }
        }
    }
    s.finish()
}

fn sweep_classical_reduction() -> SweepResult {
    let mut s = Sweep::new("Sp/Spin: non-trivial only for ε = -1, m odd, p | m, p ≡ 3 mod 4");
    for q in prime_powers_up_to(9) {
        for p in odd_primes_up_to(31).filter(|&p| q % p != 0) {
            for fam in [
                Family::Sp,
                Family::Spin,
                Family::SpinPlus,
                Family::SpinMinus,
            ] {
                for n in 4..=48u64 {
                    let Ok(g) = GroupDescriptor::new(fam, n, q) else {
                        continue;
                    };
                    let Some(list) = s.attempt(|| format!("{g} p={p}"), enumerate_scenarios(&g, p))
                    else {
                        continue;
                    };
                    for (sc, r) in list {
                        let n1 = sc.n_reduced();
                        let allowed = sc.eps_reduced == Sign::Minus
                            && n1 % 2 == 1
                            && n1 % p == 0
                            && p % 4 == 3;
                        s.check(r.trivial || allowed, || {
                            format!("{g} p={p} n0={}: unexpected {}", sc.n0, r.rendered)
                        });
                        if n1 > 2 && (sc.q_reduced.clone(), n1) != (BigUint::from(2u32), 3) {
                            let direct =
                                w_base(sc.eps_reduced, n1, &sc.q_reduced, p).map(|b| b.label);
                            s.check(direct.as_ref() == Ok(&r.label), || {
                                format!(
                                    "{g} p={p} n0={}: {} vs reduced {direct:?}",
                                    sc.n0, r.rendered
                                )
                            });
                        }
                    }
                }
            }
        }
    }
    s.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("all".parse::<Suite>().is_err());
    }

    #[test]
    fn omega_oracle_small() {
        assert_eq!(omega_oracle(0b10, 2), vec![1, -1]);
        assert_eq!(omega_oracle(0b110, 4), vec![1, -1, 1, 1]);
    }

    #[test]
    fn fast_suites_pass() {
        for suite in [Suite::Dade, Suite::Signs, Suite::Grouppoly] {
            let r = run_suite(suite);
            for sw in &r.sweeps {
                assert!(sw.passed(), "{}: {:?}", sw.name, sw.failures);
                assert!(sw.cases > 0, "{}", sw.name);
            }
        }
    }
}
