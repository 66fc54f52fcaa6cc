//! Small finite fields, monic polynomials over them, and exhaustive checks
//! of the polynomial facts the reduction steps rely on.

mod field;
mod poly;

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

pub use field::{GaloisField, MAX_FIELD_ORDER};
pub use poly::{is_irreducible, MonicPoly};

use crate::error::{Error, Result};
use crate::numth::{factorize, mult_order, prime_power, require_odd_prime};
use poly::{poly_mul, poly_rem, Residue, ResidueRing, MAX_RESIDUE_DEGREE};

/// Largest polynomial space `Q^deg` a single sweep will enumerate.
pub const ENUMERATION_BUDGET: u64 = 1 << 24;

/// `Δ*`: the monic polynomial whose roots are the inverses of the roots of `Δ`.
pub fn star_involution(field: &GaloisField, delta: &MonicPoly) -> Result<MonicPoly> {
    let c0 = delta.constant_term();
    let c0_inv = field.inv(c0).ok_or(Error::NonInvertibleRoot)?;
    let coeffs: Vec<u32> = delta
        .coeffs()
        .iter()
        .rev()
        .map(|&c| field.mul(c, c0_inv))
        .collect();
    Ok(MonicPoly::from_coeffs_unchecked(coeffs))
}

/// `Δ†`: roots `ζ^{-q}` for the roots `ζ` of `Δ`, over a field of order `q²`.
pub fn dagger_involution(field: &GaloisField, q: u32, delta: &MonicPoly) -> Result<MonicPoly> {
    check_square_field(field, q)?;
    let frob: Vec<u32> = delta
        .coeffs()
        .iter()
        .map(|&c| field.pow(c, q as u64))
        .collect();
    star_involution(field, &MonicPoly::from_coeffs_unchecked(frob))
}

fn check_square_field(field: &GaloisField, q: u32) -> Result<()> {
    let consistent = (q as u64) * (q as u64) == field.order() as u64
        && prime_power(q as u64).map(|(r, _)| r) == Some(field.characteristic() as u64);
    if consistent {
        Ok(())
    } else {
        Err(Error::InconsistentField(format!(
            "field of order {} is not F_{{{q}^2}}",
            field.order()
        )))
    }
}

/// Degree over `F_Q` of the minimal polynomial of an element of order
/// `element_order`, a power of `p`, where `p | Q - 1`.
pub fn min_poly_degree(q_field: u64, p: u64, element_order: u64) -> Result<u64> {
    require_odd_prime(p)?;
    if q_field < 2 || (q_field - 1) % p != 0 {
        return Err(Error::HypothesisViolation(format!(
            "{p} does not divide {q_field} - 1"
        )));
    }
    let e = exact_power_of(p, element_order).ok_or_else(|| {
        Error::HypothesisViolation(format!("{element_order} is not a power of {p}"))
    })?;
    let a_hat = p_part_exponent(q_field - 1, p);
    Ok(if e <= a_hat { 1 } else { p.pow(e - a_hat) })
}

fn exact_power_of(p: u64, mut n: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    (n == 1).then_some(e)
}

fn p_part_exponent(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

/// Exponent `n'(Q^d - 1)/(Q - 1) mod ζ_order` with `det(t) = ζ^exponent`.
pub fn det_of_irreducible_semisimple(
    zeta_order: u64,
    q_field: u64,
    d: u32,
    n_prime: u64,
) -> Result<u64> {
    if d == 0 {
        return Err(Error::Degenerate("degree must be positive".into()));
    }
    if zeta_order == 0 || q_field < 2 {
        return Err(Error::Degenerate(
            "eigenvalue order and field order must be positive".into(),
        ));
    }
    let qb = BigUint::from(q_field);
    let qd_minus_1 = qb.pow(d) - 1u32;
    if !(&qd_minus_1 % zeta_order).is_zero() {
        return Err(Error::HypothesisViolation(format!(
            "order {zeta_order} does not divide {q_field}^{d} - 1"
        )));
    }
    let geometric = qd_minus_1 / (qb - 1u32);
    let exp = (geometric * n_prime) % zeta_order;
    Ok(u64::try_from(exp).expect("reduced modulo a u64"))
}

#[derive(Debug, Clone, Serialize)]
pub struct RelevantPoly {
    pub coeffs: Vec<u32>,
    pub degree: usize,
    pub rendered: String,
    pub root_order: u64,
    pub self_dual: bool,
}

/// Outcome of one exhaustive sweep.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub lemma: String,
    pub field_order: u32,
    pub p: Option<u64>,
    pub degree_bound: u32,
    pub examined: u64,
    pub relevant_count: usize,
    pub relevant: Vec<RelevantPoly>,
    pub violations: Vec<String>,
}

impl LemmaReport {
    fn new(lemma: &str, field_order: u32, p: Option<u64>, degree_bound: u32) -> LemmaReport {
        LemmaReport {
            lemma: lemma.to_string(),
            field_order,
            p,
            degree_bound,
            examined: 0,
            relevant_count: 0,
            relevant: Vec::new(),
            violations: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let p = self.p.map(|p| format!(", p={p}")).unwrap_or_default();
        let _ = writeln!(
            out,
            "{} [Q={}{}, deg<={}]: {} examined, {} relevant, {}",
            self.lemma,
            self.field_order,
            p,
            self.degree_bound,
            self.examined,
            self.relevant_count,
            if self.passed() { "ok" } else { "VIOLATED" }
        );
        for r in &self.relevant {
            let _ = writeln!(
                out,
                "  {}  (degree {}, root order {}{})",
                r.rendered,
                r.degree,
                r.root_order,
                if r.self_dual { ", self-dual" } else { "" }
            );
        }
        for v in &self.violations {
            let _ = writeln!(out, "  violation: {v}");
        }
        out
    }
}

fn space_size(q: u64, degree: u32) -> Result<u64> {
    q.checked_pow(degree)
        .filter(|&s| s <= ENUMERATION_BUDGET)
        .ok_or_else(|| {
            Error::OutOfRange(format!(
                "enumerating degree-{degree} polynomials over F_{q} exceeds the sweep budget"
            ))
        })
}

/// Monic irreducible polynomials of `degree` over `field` on which `keep`
/// holds, in lexicographic order. `keep` runs before the irreducibility test.
fn irreducibles_where<F>(field: &GaloisField, degree: usize, keep: F) -> Result<Vec<MonicPoly>>
where
    F: Fn(&ResidueRing<'_>) -> bool + Sync,
{
    let total = space_size(field.order() as u64, degree as u32)?;
    let found = (0..total)
        .into_par_iter()
        .filter_map(|t| {
            let f = MonicPoly::from_index(field, degree, t);
            if f.constant_term() == 0 {
                return None;
            }
            let ring = ResidueRing::new(field, &f);
            (keep(&ring) && is_irreducible(field, &f)).then_some(f)
        })
        .collect();
    Ok(found)
}

fn x_pow_is_one(ring: &ResidueRing<'_>, e: u64) -> bool {
    ring.pow(&ring.x(), e) == ring.one()
}

/// Multiplicative order of `x` modulo an irreducible `f` with `f(0) ≠ 0`.
fn root_order(field: &GaloisField, f: &MonicPoly) -> u64 {
    let group = (field.order() as u64).pow(f.degree() as u32) - 1;
    order_of_x(&ResidueRing::new(field, f), group, &factorize(group))
}

fn order_of_x(ring: &ResidueRing<'_>, group: u64, factors: &[(u64, u32)]) -> u64 {
    let one = ring.one();
    let mut order = 1;
    for &(r, e) in factors {
        let mut y = ring.pow(&ring.x(), group / r.pow(e));
        while y != one {
            y = ring.pow(&y, r);
            order *= r;
        }
    }
    order
}

fn check_bound(degree_bound: u32, max: u32) -> Result<()> {
    if degree_bound == 0 || degree_bound > max {
        return Err(Error::OutOfRange(format!(
            "degree bound {degree_bound} not in 1..={max}"
        )));
    }
    Ok(())
}

/// Irreducibles over `F_q` with a root of order `p` have degree `ord_p(q)`;
/// they are `*`-fixed exactly when that degree is even.
pub fn verify_degree_lemma(q: u32, p: u64, degree_bound: u32) -> Result<LemmaReport> {
    require_odd_prime(p)?;
    if q > 16 {
        return Err(Error::OutOfRange(format!("q = {q} exceeds 16")));
    }
    check_bound(degree_bound, MAX_RESIDUE_DEGREE as u32)?;
    let field = GaloisField::new(q)?;
    if field.characteristic() as u64 == p {
        return Err(Error::BadCharacteristic { p, q: q as u64 });
    }
    let e = mult_order(q as i128, p)?;
    let mut report = LemmaReport::new("degree-of-order-p-polynomials", q, Some(p), degree_bound);
    for d in 1..=degree_bound as usize {
        report.examined += space_size(q as u64, d as u32)?;
        let table = irreducible_table(&field, d)?;
        for entry in table.iter().filter(|t| t.root_order == p) {
            let delta = &entry.poly;
            let self_dual = star_involution(&field, delta)? == *delta;
            let name = delta.render(&field);
            if delta.degree() as u64 != e {
                report.violations.push(format!(
                    "{name}: degree {} but ord_{p}({q}) = {e}",
                    delta.degree()
                ));
            }
            if e % 2 == 0 {
                let half = BigUint::from(q).pow((e / 2) as u32) + 1u32;
                if !(half % p).is_zero() {
                    report
                        .violations
                        .push(format!("{p} does not divide {q}^{} + 1", e / 2));
                }
                if !self_dual {
                    report
                        .violations
                        .push(format!("{name}: even degree but not *-fixed"));
                }
            }
            if self_dual && e % 2 == 1 {
                report
                    .violations
                    .push(format!("{name}: *-fixed with odd order {e}"));
            }
            report.relevant.push(RelevantPoly {
                coeffs: delta.coeffs().to_vec(),
                degree: delta.degree(),
                rendered: name,
                root_order: p,
                self_dual,
            });
        }
    }
    report.relevant_count = report.relevant.len();
    if e <= degree_bound as u64 && report.relevant_count as u64 * e != p - 1 {
        report.violations.push(format!(
            "{} polynomials of degree {e} do not account for all {} elements of order {p}",
            report.relevant_count,
            p - 1
        ));
    }
    Ok(report)
}

/// Spaces up to this size are also enumerated outright in the unitary sweep,
/// as a cross-check on the subgroup construction.
const CROSS_CHECK_BUDGET: u64 = 1 << 20;

/// Over `F_{q²}` with `p | q + 1`, odd-degree irreducibles with a root of
/// `p`-power order are `†`-fixed.
///
/// The relevant polynomials of degree `d` are the minimal polynomials of the
/// degree-`d` elements of the Sylow `p`-subgroup of `F_{q^{2d}}^×`, so they
/// are generated from that subgroup; small spaces are enumerated as well and
/// the two lists must agree.
pub fn verify_unitary_lemma(q: u32, p: u64, degree_bound: u32) -> Result<LemmaReport> {
    require_odd_prime(p)?;
    if (q as u64 + 1) % p != 0 {
        return Err(Error::HypothesisViolation(format!(
            "{p} does not divide {q} + 1"
        )));
    }
    let big_q = (q as u64) * (q as u64);
    if big_q > MAX_FIELD_ORDER as u64 {
        return Err(Error::OutOfRange(format!(
            "{q}^2 exceeds {MAX_FIELD_ORDER}"
        )));
    }
    check_bound(degree_bound, MAX_RESIDUE_DEGREE as u32)?;
    let field = GaloisField::new(big_q as u32)?;
    check_square_field(&field, q)?;
    let mut report = LemmaReport::new("unitary-self-duality", big_q as u32, Some(p), degree_bound);
    for d in (1..=degree_bound as usize).step_by(2) {
        let (found, subgroup) = sylow_min_polys(&field, d, p)?;
        report.examined += subgroup;
        let size = big_q.pow(d as u32);
        if size <= CROSS_CHECK_BUDGET {
            report.examined += size;
            let p_part = p.pow(p_part_exponent(size - 1, p));
            let mut listed = irreducibles_where(&field, d, |ring| x_pow_is_one(ring, p_part))?;
            listed.sort_by(lex);
            if listed != found {
                report.violations.push(format!(
                    "degree {d}: enumeration finds {} polynomials, the subgroup gives {}",
                    listed.len(),
                    found.len()
                ));
            }
        }
        for delta in found {
            let fixed = dagger_involution(&field, q, &delta)? == delta;
            let name = delta.render(&field);
            if !fixed {
                report
                    .violations
                    .push(format!("{name}: odd degree but not dagger-fixed"));
            }
            report.relevant.push(RelevantPoly {
                coeffs: delta.coeffs().to_vec(),
                degree: d,
                root_order: root_order(&field, &delta),
                rendered: name,
                self_dual: fixed,
            });
        }
    }
    report.relevant_count = report.relevant.len();
    Ok(report)
}

/// Distinct degree-`d` minimal polynomials over `field` of the elements of
/// the Sylow `p`-subgroup of `F_{Q^d}^×`, sorted lexicographically, and the
/// order of that subgroup.
fn sylow_min_polys(field: &GaloisField, d: usize, p: u64) -> Result<(Vec<MonicPoly>, u64)> {
    let modulus = first_irreducible(field, d)?;
    let ring = ResidueRing::new(field, &modulus);
    let n = (field.order() as u64)
        .checked_pow(d as u32)
        .ok_or_else(|| Error::OutOfRange(format!("F_{}^{d} is too large", field.order())))?
        - 1;
    let sylow = p.pow(p_part_exponent(n, p));
    let generator = (1..=n)
        .map(|t| ring.pow(&residue_from_index(field, d, t), n / sylow))
        .find(|h| sylow == 1 || ring.pow(h, sylow / p) != ring.one())
        .expect("the multiplicative group is cyclic");
    let mut found = Vec::new();
    let mut h = ring.one();
    for _ in 0..sylow {
        let mut krylov = vec![ring.one()];
        for _ in 0..d {
            let next = ring.mul(krylov.last().unwrap(), &h);
            krylov.push(next);
        }
        let mp = residue_dependency(field, d, |k| krylov[k as usize]);
        if mp.degree() == d {
            found.push(mp);
        }
        h = ring.mul(&h, &generator);
    }
    found.sort_by(lex);
    found.dedup();
    Ok((found, sylow))
}

fn lex(a: &MonicPoly, b: &MonicPoly) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

/// The residue whose coefficient vector is the base-`Q` digits of `t`.
fn residue_from_index(field: &GaloisField, d: usize, mut t: u64) -> Residue {
    let q = field.order() as u64;
    let mut r = [0u32; MAX_RESIDUE_DEGREE];
    for c in r.iter_mut().take(d) {
        *c = (t % q) as u32;
        t /= q;
    }
    r
}

fn first_irreducible(field: &GaloisField, d: usize) -> Result<MonicPoly> {
    (0..u64::MAX)
        .map(|t| MonicPoly::from_index(field, d, t))
        .take_while(|f| f.degree() == d)
        .find(|f| f.constant_term() != 0 && is_irreducible(field, f))
        .ok_or_else(|| Error::Degenerate(format!("no irreducible of degree {d}")))
}

/// Irreducibles over `F_Q` with a root of order `p^e` have degree
/// [`min_poly_degree`]`(Q, p, p^e)`.
pub fn verify_min_poly_degree_lemma(
    q_field: u32,
    p: u64,
    degree_bound: u32,
) -> Result<LemmaReport> {
    require_odd_prime(p)?;
    check_bound(degree_bound, MAX_RESIDUE_DEGREE as u32)?;
    let field = GaloisField::new(q_field)?;
    if (q_field as u64 - 1) % p != 0 {
        return Err(Error::HypothesisViolation(format!(
            "{p} does not divide {q_field} - 1"
        )));
    }
    let mut report = LemmaReport::new(
        "p-power-minimal-polynomial-degree",
        q_field,
        Some(p),
        degree_bound,
    );
    for d in 1..=degree_bound as usize {
        report.examined += space_size(q_field as u64, d as u32)?;
        let table = irreducible_table(&field, d)?;
        for entry in table
            .iter()
            .filter(|t| exact_power_of(p, t.root_order).is_some())
        {
            let predicted = min_poly_degree(q_field as u64, p, entry.root_order)?;
            let name = entry.poly.render(&field);
            if predicted != d as u64 {
                report.violations.push(format!(
                    "{name}: root order {} predicts degree {predicted}, found {d}",
                    entry.root_order
                ));
            }
            report.relevant.push(RelevantPoly {
                coeffs: entry.poly.coeffs().to_vec(),
                degree: d,
                rendered: name,
                root_order: entry.root_order,
                self_dual: false,
            });
        }
    }
    report.relevant_count = report.relevant.len();
    Ok(report)
}

/// For every irreducible `Γ ≠ x` over `F_q` of degree at most the bound and
/// every power `j`, the minimal polynomial of `C(Γ)^j` is irreducible.
///
/// Per degree `d` this walks all powers of `C(Γ₀)` for one primitive `Γ₀`.
/// Every other `Γ` of degree `d` must turn up as the minimal polynomial of
/// some `C(Γ₀)^j`; the two matrices are then similar, so the powers of
/// `C(Γ)` are among those already walked.
pub fn verify_power_lemma(q: u32, degree_bound: u32) -> Result<LemmaReport> {
    check_bound(degree_bound, MAX_RESIDUE_DEGREE as u32)?;
    let field = GaloisField::new(q)?;
    space_size(q as u64, degree_bound)?;
    let mut report = LemmaReport::new(
        "powers-have-irreducible-minimal-polynomial",
        q,
        None,
        degree_bound,
    );
    for d in 1..=degree_bound as usize {
        let group = space_size(q as u64, d as u32)? - 1;
        let table = irreducible_table(&field, d)?;
        report.relevant_count += table.len();
        let Some(primitive) = table.iter().find(|t| t.root_order == group) else {
            report
                .violations
                .push(format!("no primitive polynomial of degree {d}"));
            continue;
        };
        let gamma0 = &primitive.poly;
        let powers = x_powers(&field, gamma0, group);
        let mut irreducible: HashMap<MonicPoly, bool> = HashMap::new();
        for j in 1..=group {
            let mp = power_min_poly(&field, &powers, j, group, d);
            if let Some(&ok) = irreducible.get(&mp) {
                if !ok {
                    report.violations.push(format!(
                        "C({})^{j} has reducible minimal polynomial {}",
                        gamma0.render(&field),
                        mp.render(&field)
                    ));
                }
                continue;
            }
            let ok = is_irreducible(&field, &mp);
            if !ok {
                report.violations.push(format!(
                    "C({})^{j} has reducible minimal polynomial {}",
                    gamma0.render(&field),
                    mp.render(&field)
                ));
            }
            irreducible.insert(mp, ok);
        }
        report.examined += group;
        for entry in table.iter().filter(|t| !irreducible.contains_key(&t.poly)) {
            report.violations.push(format!(
                "C({}) is not similar to a power of C({})",
                entry.poly.render(&field),
                gamma0.render(&field)
            ));
        }
    }
    Ok(report)
}

/// An irreducible `Δ ≠ x` with the multiplicative order of its roots.
#[derive(Debug, Clone)]
struct Irreducible {
    poly: MonicPoly,
    root_order: u64,
}

type Table = Arc<Vec<Irreducible>>;

/// All monic irreducibles of `degree` over `field` except `x`, in
/// lexicographic order. Tables are cached for the life of the process.
///
/// Built by sieving: every product `f·g` with `f` irreducible of degree at
/// most `degree/2` is struck out, and `x` is handled by requiring a non-zero
/// constant term.
fn irreducible_table(field: &GaloisField, degree: usize) -> Result<Table> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, usize), Table>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (field.order(), degree);
    if let Some(t) = cache.lock().unwrap().get(&key) {
        return Ok(t.clone());
    }
    let q = field.order() as u64;
    let size = space_size(q, degree as u32)?;
    let mut composite = vec![false; size as usize];
    for k in 1..=degree / 2 {
        let small = irreducible_table(field, k)?;
        let cofactors = q.pow((degree - k) as u32);
        for f in small.iter() {
            for t in 0..cofactors {
                let g = MonicPoly::from_index(field, degree - k, t);
                if g.constant_term() == 0 {
                    continue;
                }
                let prod = poly_mul(field, f.poly.coeffs(), g.coeffs());
                let index = prod[..degree]
                    .iter()
                    .rev()
                    .fold(0u64, |acc, &c| acc * q + c as u64);
                composite[index as usize] = true;
            }
        }
    }
    let group = size - 1;
    let factors = factorize(group);
    let table: Vec<Irreducible> = (0..size)
        .filter(|&t| !composite[t as usize])
        .map(|t| MonicPoly::from_index(field, degree, t))
        .filter(|f| f.constant_term() != 0)
        .map(|poly| {
            let root_order = order_of_x(&ResidueRing::new(field, &poly), group, &factors);
            Irreducible { poly, root_order }
        })
        .collect();
    let table = Arc::new(table);
    cache.lock().unwrap().insert(key, table.clone());
    Ok(table)
}

/// `x^i mod Γ` for `0 ≤ i < ord`, as coefficient vectors of length `deg Γ`.
fn x_powers(field: &GaloisField, gamma: &MonicPoly, ord: u64) -> Vec<Residue> {
    let ring = ResidueRing::new(field, gamma);
    let x = ring.x();
    let mut cur = ring.one();
    let mut out = Vec::with_capacity(ord as usize);
    for _ in 0..ord {
        out.push(cur);
        cur = ring.mul(&cur, &x);
    }
    out
}

/// Minimal polynomial of `C^j` where `C` is the companion matrix of `Γ`.
/// `C^j` lies in `F_q[C]` and `e_1` is a cyclic vector for `C`, so the
/// annihilator of `e_1` under `C^j` is already the minimal polynomial; the
/// Krylov vectors `(C^j)^k e_1` are the residues `x^{jk} mod Γ`.
fn power_min_poly(
    field: &GaloisField,
    powers: &[Residue],
    j: u64,
    ord: u64,
    d: usize,
) -> MonicPoly {
    residue_dependency(field, d, |k| powers[((j * k) % ord) as usize])
}

/// [`minimal_dependency`] for residues of degree `d ≤ 8`, by incremental
/// elimination on the stack.
fn residue_dependency<F>(field: &GaloisField, d: usize, v: F) -> MonicPoly
where
    F: Fn(u64) -> Residue,
{
    const W: usize = MAX_RESIDUE_DEGREE + 1;
    let mut rows = [[0u32; MAX_RESIDUE_DEGREE]; W];
    let mut combos = [[0u32; W]; W];
    let mut pivots = [0usize; W];
    for k in 0..=d {
        let mut vec = v(k as u64);
        let mut combo = [0u32; W];
        combo[k] = 1;
        for i in 0..k {
            let c = vec[pivots[i]];
            if c == 0 {
                continue;
            }
            for t in 0..d {
                vec[t] = field.sub(vec[t], field.mul(c, rows[i][t]));
            }
            for t in 0..=i {
                combo[t] = field.sub(combo[t], field.mul(c, combos[i][t]));
            }
        }
        let Some(pivot) = vec[..d].iter().position(|&c| c != 0) else {
            return MonicPoly::from_coeffs_unchecked(combo[..=k].to_vec());
        };
        let inv = field.inv(vec[pivot]).unwrap();
        for t in 0..d {
            vec[t] = field.mul(vec[t], inv);
        }
        for t in 0..=k {
            combo[t] = field.mul(combo[t], inv);
        }
        rows[k] = vec;
        combos[k] = combo;
        pivots[k] = pivot;
    }
    unreachable!("more than d residues are always dependent")
}

/// Monic `m` of least degree with `Σ m_k v_k = 0` for the sequence `v`.
pub(crate) fn minimal_dependency<F>(field: &GaloisField, dim: usize, v: F) -> MonicPoly
where
    F: Fn(u64) -> Vec<u32>,
{
    let mut basis: Vec<Vec<u32>> = Vec::new();
    for k in 0..=dim as u64 {
        let target = v(k);
        if let Some(c) = solve_in_span(field, &basis, &target) {
            let mut coeffs: Vec<u32> = c.iter().map(|&x| field.neg(x)).collect();
            coeffs.push(1);
            return MonicPoly::from_coeffs_unchecked(coeffs);
        }
        basis.push(target);
    }
    unreachable!("more than dim vectors are always dependent")
}

/// Coefficients `c` with `Σ c_i basis_i = target`, for linearly independent
/// basis vectors.
fn solve_in_span(field: &GaloisField, basis: &[Vec<u32>], target: &[u32]) -> Option<Vec<u32>> {
    let k = basis.len();
    let rows = target.len();
    let mut m: Vec<Vec<u32>> = (0..rows)
        .map(|r| basis.iter().map(|b| b[r]).chain([target[r]]).collect())
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(k);
    for col in 0..k {
        let Some(r) = (pivot_row..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(pivot_row, r);
        let inv = field.inv(m[pivot_row][col]).unwrap();
        for x in m[pivot_row].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for r in 0..rows {
            if r != pivot_row && m[r][col] != 0 {
                let f = m[r][col];
                for c in 0..=k {
                    let sub = field.mul(f, m[pivot_row][c]);
                    m[r][c] = field.sub(m[r][c], sub);
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if (pivot_row..rows).any(|r| m[r][k] != 0) {
        return None;
    }
    let mut c = vec![0u32; k];
    for (row, &col) in pivots.iter().enumerate() {
        c[col] = m[row][k];
    }
    Some(c)
}

/// Dense square matrix over a [`GaloisField`], used to cross-check the
/// residue shortcut in the power sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn companion(field: &GaloisField, f: &MonicPoly) -> Matrix {
        let n = f.degree();
        let mut data = vec![0u32; n * n];
        for i in 1..n {
            data[i * n + (i - 1)] = 1;
        }
        for i in 0..n {
            data[i * n + (n - 1)] = field.neg(f.coeffs()[i]);
        }
        Matrix { n, data }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut data = vec![0u32; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Matrix { n, data }
    }

    pub fn mul(&self, field: &GaloisField, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut data = vec![0u32; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    data[idx] = field.add(data[idx], field.mul(a, other.data[k * n + j]));
                }
            }
        }
        Matrix { n, data }
    }

    pub fn pow(&self, field: &GaloisField, mut e: u64) -> Matrix {
        let mut result = Matrix::identity(self.n);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(field, &b);
            }
            b = b.mul(field, &b);
            e >>= 1;
        }
        result
    }

    /// Minimal polynomial from the powers `I, M, M², ...` flattened.
    pub fn minimal_polynomial(&self, field: &GaloisField) -> MonicPoly {
        let n = self.n;
        let mut powers = vec![Matrix::identity(n)];
        for _ in 0..n {
            let next = powers.last().unwrap().mul(field, self);
            powers.push(next);
        }
        minimal_dependency(field, n * n, |k| powers[k as usize].data.clone())
    }
}

/// Product of monic polynomials.
pub fn poly_product(field: &GaloisField, factors: &[MonicPoly]) -> MonicPoly {
    let coeffs = factors
        .iter()
        .fold(vec![1u32], |acc, f| poly_mul(field, &acc, f.coeffs()));
    MonicPoly::from_coeffs_unchecked(coeffs)
}

/// Whether `f` divides `g`.
pub fn divides(field: &GaloisField, f: &MonicPoly, g: &MonicPoly) -> bool {
    let r = poly_rem(field, g.coeffs(), f.coeffs());
    r.iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots_in(field: &GaloisField, big: &GaloisField, f: &MonicPoly) -> Vec<u32> {
        let emb = field.embedding_into(big).unwrap();
        let mapped: Vec<u32> = f.coeffs().iter().map(|&c| emb[c as usize]).collect();
        let lifted = MonicPoly::from_coeffs_unchecked(mapped);
        let mut roots: Vec<u32> = (1..big.order())
            .filter(|&z| lifted.eval(big, z) == 0)
            .collect();
        roots.sort_unstable();
        roots
    }

    #[test]
    fn star_examples() {
        let f2 = GaloisField::new(2).unwrap();
        let x_minus_1 = MonicPoly::linear(&f2, 1);
        assert_eq!(star_involution(&f2, &x_minus_1).unwrap(), x_minus_1);
        let f7 = GaloisField::new(7).unwrap();
        assert_eq!(
            star_involution(&f7, &MonicPoly::linear(&f7, 3)).unwrap(),
            MonicPoly::linear(&f7, 5)
        );
        let cyclo = MonicPoly::new(&f2, vec![1, 1, 1]).unwrap();
        assert_eq!(star_involution(&f2, &cyclo).unwrap(), cyclo);
        let x = MonicPoly::new(&f7, vec![0, 1]).unwrap();
        assert_eq!(star_involution(&f7, &x), Err(Error::NonInvertibleRoot));
    }

    #[test]
    fn dagger_examples() {
        let f4 = GaloisField::new(4).unwrap();
        let one = MonicPoly::linear(&f4, 1);
        assert_eq!(dagger_involution(&f4, 2, &one).unwrap(), one);
        for w in f4.elements_of_order(3) {
            let lin = MonicPoly::linear(&f4, w);
            assert_eq!(dagger_involution(&f4, 2, &lin).unwrap(), lin);
        }
        assert!(matches!(
            dagger_involution(&f4, 3, &one),
            Err(Error::InconsistentField(_))
        ));
        let f9 = GaloisField::new(9).unwrap();
        assert!(matches!(
            dagger_involution(&f9, 2, &MonicPoly::linear(&f9, 1)),
            Err(Error::InconsistentField(_))
        ));
    }

    #[test]
    fn involutions_match_root_sets() {
        // Compare against the root sets in a splitting field.
        for (q, deg, big) in [
            (2u32, 3usize, 8u32),
            (3, 2, 9),
            (2, 4, 16),
            (4, 2, 16),
            (3, 3, 27),
        ] {
            let field = GaloisField::new(q).unwrap();
            let big = GaloisField::new(big).unwrap();
            for t in 0..(q as u64).pow(deg as u32) {
                let f = MonicPoly::from_index(&field, deg, t);
                if f.constant_term() == 0 || !is_irreducible(&field, &f) {
                    continue;
                }
                let s = star_involution(&field, &f).unwrap();
                assert!(is_irreducible(&field, &s));
                assert_eq!(s.degree(), f.degree());
                assert_eq!(star_involution(&field, &s).unwrap(), f);
                let mut inv: Vec<u32> = roots_in(&field, &big, &f)
                    .iter()
                    .map(|&z| big.inv(z).unwrap())
                    .collect();
                inv.sort_unstable();
                assert_eq!(roots_in(&field, &big, &s), inv);
            }
        }
        for (q, deg, big) in [(2u32, 2usize, 16u32), (3, 1, 9), (2, 3, 64)] {
            let field = GaloisField::new(q * q).unwrap();
            let big = GaloisField::new(big).unwrap();
            for t in 0..((q * q) as u64).pow(deg as u32) {
                let f = MonicPoly::from_index(&field, deg, t);
                if f.constant_term() == 0 || !is_irreducible(&field, &f) {
                    continue;
                }
                let g = dagger_involution(&field, q, &f).unwrap();
                assert_eq!(dagger_involution(&field, q, &g).unwrap(), f);
                let mut expected: Vec<u32> = roots_in(&field, &big, &f)
                    .iter()
                    .map(|&z| big.inv(big.pow(z, q as u64)).unwrap())
                    .collect();
                expected.sort_unstable();
                assert_eq!(roots_in(&field, &big, &g), expected);
            }
        }
    }

    #[test]
    fn degree_lemma_examples() {
        let r = verify_degree_lemma(2, 3, 4).unwrap();
        assert!(r.passed(), "{}", r.render_text());
        assert_eq!(r.relevant_count, 1);
        assert_eq!(r.relevant[0].rendered, "x^2 + x + 1");
        assert!(r.relevant[0].self_dual);

        let r = verify_degree_lemma(4, 5, 4).unwrap();
        assert!(r.passed());
        assert!(r.relevant.iter().all(|d| d.degree == 2 && d.self_dual));
        assert_eq!(r.relevant_count, 2);

        let r = verify_degree_lemma(3, 13, 4).unwrap();
        assert!(r.passed());
        assert_eq!(r.relevant_count, 4);
        assert!(r.relevant.iter().all(|d| d.degree == 3 && !d.self_dual));
    }

    #[test]
    fn degree_lemma_bounds() {
        assert!(matches!(
            verify_degree_lemma(17, 3, 2),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            verify_degree_lemma(2, 3, 9),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            verify_degree_lemma(9, 3, 2),
            Err(Error::BadCharacteristic { .. })
        ));
        assert!(matches!(
            verify_degree_lemma(2, 4, 2),
            Err(Error::NotOddPrime(_))
        ));
    }

    #[test]
    fn unitary_lemma_examples() {
        for (q, p) in [(2u32, 3u64), (5, 3)] {
            let r = verify_unitary_lemma(q, p, 3).unwrap();
            assert!(r.passed(), "{}", r.render_text());
            assert!(r.relevant.iter().all(|d| d.self_dual && d.degree % 2 == 1));
            // Linear factors x - ζ with ζ of 3-power order in F_{q²}.
            let lin = r.relevant.iter().filter(|d| d.degree == 1).count() as u64;
            let big_q = (q * q) as u64;
            assert_eq!(lin, 3u64.pow(p_part_exponent(big_q - 1, 3)));
        }
        assert!(matches!(
            verify_unitary_lemma(3, 3, 3),
            Err(Error::HypothesisViolation(_))
        ));
    }

    #[test]
    fn min_poly_degree_examples() {
        assert_eq!(min_poly_degree(4, 3, 9).unwrap(), 3);
        assert_eq!(min_poly_degree(7, 3, 27).unwrap(), 9);
        assert_eq!(min_poly_degree(7, 3, 3).unwrap(), 1);
        assert_eq!(min_poly_degree(7, 3, 1).unwrap(), 1);
        assert_eq!(min_poly_degree(19, 3, 9).unwrap(), 1);
        assert!(matches!(
            min_poly_degree(5, 3, 3),
            Err(Error::HypothesisViolation(_))
        ));
        assert!(matches!(
            min_poly_degree(7, 3, 6),
            Err(Error::HypothesisViolation(_))
        ));
    }

    #[test]
    fn min_poly_degree_sweep() {
        let r = verify_min_poly_degree_lemma(4, 3, 3).unwrap();
        assert!(r.passed(), "{}", r.render_text());
        assert!(r
            .relevant
            .iter()
            .any(|d| d.degree == 3 && d.root_order == 9));
    }

    #[test]
    fn det_examples() {
        assert_eq!(det_of_irreducible_semisimple(5, 11, 1, 7).unwrap(), 2);
        assert_eq!(det_of_irreducible_semisimple(7, 2, 3, 1).unwrap(), 0);
        assert_eq!(det_of_irreducible_semisimple(9, 4, 3, 2).unwrap(), 6);
        assert!(matches!(
            det_of_irreducible_semisimple(7, 2, 0, 1),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            det_of_irreducible_semisimple(5, 2, 3, 1),
            Err(Error::HypothesisViolation(_))
        ));
    }

    #[test]
    fn det_agrees_with_norm_in_field() {
        // det of multiplication by ζ on F_{Q^d} over F_Q is the norm ζ^{(Q^d-1)/(Q-1)}.
        let big = GaloisField::new(64).unwrap();
        for z in big.elements_of_order(9) {
            let exp = det_of_irreducible_semisimple(9, 4, 3, 1).unwrap();
            let norm = big.pow(z, 1 + 4 + 16);
            assert_eq!(norm, big.pow(z, exp));
        }
    }

    #[test]
    fn companion_power_shortcut_matches_matrix_krylov() {
        for q in [2u32, 3, 4] {
            let field = GaloisField::new(q).unwrap();
            for d in 1..=3usize {
                for t in 0..(q as u64).pow(d as u32) {
                    let g = MonicPoly::from_index(&field, d, t);
                    if g.constant_term() == 0 || !is_irreducible(&field, &g) {
                        continue;
                    }
                    let c = Matrix::companion(&field, &g);
                    assert_eq!(c.minimal_polynomial(&field), g);
                    let ord = root_order(&field, &g);
                    assert!(c.pow(&field, ord) == Matrix::identity(d));
                    let powers = x_powers(&field, &g, ord);
                    for j in 1..=ord {
                        let fast = power_min_poly(&field, &powers, j, ord, d);
                        assert_eq!(
                            fast,
                            c.pow(&field, j).minimal_polynomial(&field),
                            "Γ={:?} j={j}",
                            g
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn sieve_table_matches_direct_test() {
        for q in [2u32, 3, 4, 5, 9] {
            let field = GaloisField::new(q).unwrap();
            for d in 1..=4usize {
                let table: Vec<MonicPoly> = irreducible_table(&field, d)
                    .unwrap()
                    .iter()
                    .map(|t| t.poly.clone())
                    .collect();
                assert_eq!(
                    table,
                    irreducibles_where(&field, d, |_| true).unwrap(),
                    "q={q} d={d}"
                );
                for t in irreducible_table(&field, d).unwrap().iter() {
                    assert_eq!(t.root_order, root_order(&field, &t.poly));
                }
            }
        }
    }

    #[test]
    fn power_lemma_small() {
        let r = verify_power_lemma(3, 3).unwrap();
        assert!(r.passed(), "{}", r.render_text());
        assert!(r.examined > 0);
        assert!(matches!(
            verify_power_lemma(9, 8),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn product_and_divisibility() {
        let f3 = GaloisField::new(3).unwrap();
        let a = MonicPoly::linear(&f3, 1);
        let b = MonicPoly::linear(&f3, 2);
        let ab = poly_product(&f3, &[a.clone(), b.clone()]);
        assert_eq!(ab.coeffs(), &[2, 0, 1]);
        assert!(divides(&f3, &a, &ab));
        assert!(!divides(&f3, &MonicPoly::linear(&f3, 0), &ab));
    }
}
