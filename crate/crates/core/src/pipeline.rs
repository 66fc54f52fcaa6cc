//! End-to-end computation of `W(B)` for a cyclic `p`-block.
//!
//! Every input is reduced to a block of `GL^ε_{n₁}(q₁)` with `p | q₁ - ε`
//! and full support, where the answer is an interval label.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dade::{interval_label, render_label, CyclicPGroupShape, DadeLabel};
use crate::error::{Error, Result};
use crate::grouppoly::{
    centralizer_scenarios, defect_exponent, CentralizerScenario, Family, GroupDescriptor,
};
use crate::numth::{is_prime, mult_order, mult_order_big, padic_val, require_odd_prime, Sign};

pub const STEP_FIXED_SPACE: &str = "fixed-space-reduction";
pub const STEP_LINEAR_UNITARY: &str = "linear-unitary-reduction";
pub const STEP_CLASSICAL: &str = "classical-to-linear-reduction";
pub const STEP_CRUCIAL: &str = "crucial-case-classification";
pub const STEP_CENTRAL: &str = "central-defect-group";
pub const STEP_SMALL_SYMPLECTIC: &str = "small-symplectic-exception";
pub const STEP_TRANSFER: &str = "sl-su-transfer";

/// The data a report is computed from: `support_dim = n₀`, and the reduced
/// group `GL^{ε₁}_{n₁}(q₁)` with `n₁ = m p^{a'}`, `p ∤ m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockScenario {
    pub family: Family,
    pub n: u64,
    #[serde(with = "crate::serde_num")]
    pub q: BigUint,
    pub p: u64,
    pub n0: u64,
    pub d: u64,
    pub m: u64,
    pub aprime: u32,
    pub eps_reduced: Sign,
    #[serde(with = "crate::serde_num")]
    pub q_reduced: BigUint,
}

impl BlockScenario {
    pub fn n_reduced(&self) -> u64 {
        self.m * self.p.pow(self.aprime)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WReport {
    pub family: Family,
    pub n: u64,
    #[serde(with = "crate::serde_num")]
    pub q: BigUint,
    pub p: u64,
    pub n0: u64,
    pub d: u64,
    pub m: u64,
    pub aprime: u32,
    pub eps_reduced: Sign,
    #[serde(with = "crate::serde_num")]
    pub q_reduced: BigUint,
    pub defect_exponent: u32,
    pub label: DadeLabel,
    pub rendered: String,
    pub trivial: bool,
    pub chain: Vec<String>,
    pub notes: Vec<String>,
}

impl WReport {
    pub fn scenario(&self) -> BlockScenario {
        BlockScenario {
            family: self.family,
            n: self.n,
            q: self.q.clone(),
            p: self.p,
            n0: self.n0,
            d: self.d,
            m: self.m,
            aprime: self.aprime,
            eps_reduced: self.eps_reduced,
            q_reduced: self.q_reduced.clone(),
        }
    }

    /// `a = v_p(q₁ - ε₁)`.
    pub fn a(&self) -> u32 {
        self.defect_exponent - self.aprime
    }

    /// `|D| = p^l` written out, e.g. `7^2`.
    pub fn defect_group_order(&self) -> String {
        format!("{}^{}", self.p, self.defect_exponent)
    }

    fn relabel(mut self, family: Family, n: u64, q: u64, n0: u64, d: u64) -> WReport {
        self.family = family;
        self.n = n;
        self.q = BigUint::from(q);
        self.n0 = n0;
        self.d = d;
        self
    }
}

fn split_p_part(n: u64, p: u64) -> (u64, u32) {
    let mut m = n;
    let mut k = 0;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m, k)
}

fn q_minus_eps(q: &BigUint, eps: Sign) -> BigInt {
    BigInt::from(q.clone()) - eps.value()
}

fn check_divides(q: &BigUint, eps: Sign, p: u64) -> Result<()> {
    if !q_minus_eps(q, eps).is_multiple_of(&BigInt::from(p)) {
        return Err(Error::HypothesisViolation(format!(
            "{p} does not divide {q} - ({eps})"
        )));
    }
    Ok(())
}

fn small_group_caveats(eps: Sign, n: u64, q: &BigUint, p: u64) -> Vec<String> {
    let mut notes = Vec::new();
    if eps == Sign::Minus && *q == BigUint::from(2u32) {
        if n == 2 {
            notes.push(
                "GU_2(2) has no regular block for this torus; the block may not exist".into(),
            );
        }
        if n == 3 && p == 3 {
            notes.push(
                "GU_3(2) with p = 3 has no regular block for this torus; the block may not exist"
                    .into(),
            );
        }
    }
    notes
}

#[allow(clippy::too_many_arguments)]
fn report(
    eps: Sign,
    n: u64,
    q: &BigUint,
    p: u64,
    a: u32,
    aprime: u32,
    label: DadeLabel,
    chain: Vec<String>,
    notes: Vec<String>,
) -> WReport {
    let (m, _) = split_p_part(n, p);
    WReport {
        family: Family::linear(eps, false),
        n,
        q: q.clone(),
        p,
        n0: n,
        d: 1,
        m,
        aprime,
        eps_reduced: eps,
        q_reduced: q.clone(),
        defect_exponent: a + aprime,
        rendered: render_label(&label),
        trivial: label.is_trivial(),
        label,
        chain,
        notes,
    }
}

/// `W(B)` for a block of `GL^ε_n(q)` with `p | q - ε`: trivial unless
/// `ε = -1`, `n` odd and `p ≡ 3 (mod 4)`, when it is `W_D([a, a+a'-1])`.
pub fn w_base(eps: Sign, n: u64, q: &BigUint, p: u64) -> Result<WReport> {
    require_odd_prime(p)?;
    if n < 2 {
        return Err(Error::OutOfRange(format!("degree {n} must be at least 2")));
    }
    check_divides(q, eps, p)?;
    let a = padic_val(p, &q_minus_eps(q, eps))?;
    let aprime = padic_val(p, &BigInt::from(n))?;
    let l = defect_exponent(eps, n, q, p)?;
    let shape = CyclicPGroupShape::new(p, l)?;
    let label = if eps == Sign::Minus && n % 2 == 1 && p % 4 == 3 {
        interval_label(shape, a as i64, (a + aprime) as i64 - 1)?
    } else {
        DadeLabel::trivial(shape)
    };
    Ok(report(
        eps,
        n,
        q,
        p,
        a,
        aprime,
        label,
        vec![STEP_CRUCIAL.into()],
        small_group_caveats(eps, n, q, p),
    ))
}

/// Like [`w_base`], but a reduced degree of one gives the central case.
fn w_reduced(eps: Sign, n: u64, q: &BigUint, p: u64) -> Result<WReport> {
    if n != 1 {
        return w_base(eps, n, q, p);
    }
    require_odd_prime(p)?;
    check_divides(q, eps, p)?;
    let a = padic_val(p, &q_minus_eps(q, eps))?;
    let label = DadeLabel::trivial(CyclicPGroupShape::new(p, a)?);
    Ok(report(
        eps,
        1,
        q,
        p,
        a,
        0,
        label,
        vec![STEP_CENTRAL.into()],
        vec!["GL^ε_1 is abelian, so D is central and W is trivial".into()],
    ))
}

/// `ε(d)`: `-1` only for `ε = -1` with `d` odd.
pub fn reduced_sign(eps: Sign, d: u64) -> Sign {
    if eps == Sign::Minus && d % 2 == 1 {
        Sign::Minus
    } else {
        Sign::Plus
    }
}

/// `W(B)` for a block of `GL^ε_n(q)` whose order-`p` subgroup of the defect
/// group moves a subspace of dimension `n₀`.
pub fn w_glgu(eps: Sign, n: u64, q: u64, p: u64, n0: u64) -> Result<WReport> {
    require_odd_prime(p)?;
    if q % p == 0 {
        return Err(Error::BadCharacteristic { p, q });
    }
    if n == 0 {
        return Err(Error::OutOfRange("degree must be positive".into()));
    }
    if n0 == 0 || n0 > n {
        return Err(Error::InvalidSupport(format!("n0 = {n0} not in 1..={n}")));
    }
    let d = mult_order(eps.value() as i128 * q as i128, p)?;
    if n0 % d != 0 {
        return Err(Error::InvalidSupport(format!(
            "n0 = {n0} is not a multiple of d = ord_{p}({}) = {d}",
            eps.value() * q as i64
        )));
    }
    if d == 1 && n0 != n {
        return Err(Error::InvalidScenario(format!(
            "{p} divides q - ε, so the defect group has full support; n0 = {n0} differs from n = {n}"
        )));
    }
    let family = Family::linear(eps, false);
    let qb = BigUint::from(q);
    if d == 1 {
        return Ok(w_reduced(eps, n, &qb, p)?.relabel(family, n, q, n0, 1));
    }
    let eps_d = reduced_sign(eps, d);
    let mut r = w_reduced(eps_d, n0 / d, &qb.pow(d as u32), p)?;
    let mut chain = Vec::new();
    if n0 < n {
        chain.push(STEP_FIXED_SPACE.to_string());
    }
    chain.push(STEP_LINEAR_UNITARY.to_string());
    chain.append(&mut r.chain);
    r.chain = chain;
    Ok(r.relabel(family, n, q, n0, d))
}

/// `W(B)` for a symplectic or spin block reduced through `scenario`.
pub fn w_classical(
    g: &GroupDescriptor,
    p: u64,
    scenario: &CentralizerScenario,
    n0: u64,
) -> Result<WReport> {
    let known = centralizer_scenarios(g, p)?;
    if !known.contains(scenario) {
        return Err(Error::InvalidScenario(format!(
            "(d={}, m={}, ε={}) is not an admissible scenario of {g} for p = {p}",
            scenario.d, scenario.m, scenario.eps
        )));
    }
    if n0 != scenario.support_dim {
        return Err(Error::InvalidScenario(format!(
            "n0 = {n0} but the scenario acts on dimension {}",
            scenario.support_dim
        )));
    }
    let (n1, q1, eps) = (scenario.m, &scenario.q_reduced, scenario.eps);
    let mut prefix = Vec::new();
    if n0 < g.n() {
        prefix.push(STEP_FIXED_SPACE.to_string());
    }
    prefix.push(STEP_CLASSICAL.to_string());
    let mut notes = Vec::new();
    if scenario.subspace_only {
        notes.push(format!(
            "the {} type only constrains the {n0}-dimensional support, not the fixed space",
            g.family()
        ));
    }

    let special = if n1 <= 2 {
        Some((
            STEP_CENTRAL,
            format!("reduced degree {n1} ≤ 2 puts D in the centre of C(t_1), so W is trivial"),
        ))
    } else if (q1, n1) == (&BigUint::from(2u32), 3) {
        Some((
            STEP_SMALL_SYMPLECTIC,
            "cyclic 3-blocks of Sp_6(2) have defect at most 1, so W is trivial".to_string(),
        ))
    } else {
        None
    };

    let mut r = match special {
        None => w_base(eps, n1, q1, p)?,
        Some((step, note)) => {
            check_divides(q1, eps, p)?;
            let a = padic_val(p, &q_minus_eps(q1, eps))?;
            let aprime = padic_val(p, &BigInt::from(n1))?;
            let label = DadeLabel::trivial(CyclicPGroupShape::new(p, a + aprime)?);
            report(
                eps,
                n1,
                q1,
                p,
                a,
                aprime,
                label,
                vec![step.into()],
                vec![note],
            )
        }
    };
    prefix.append(&mut r.chain);
    r.chain = prefix;
    notes.append(&mut r.notes);
    r.notes = notes;
    Ok(r.relabel(g.family(), g.n(), g.q(), n0, scenario.d))
}

/// Re-attributes a `GL^ε_n(q)` report to `SL^ε_n(q)`, valid when `p ∤ q - ε`.
pub fn sl_su_transfer(eps: Sign, n: u64, q: u64, p: u64, report: WReport) -> Result<WReport> {
    require_odd_prime(p)?;
    let expected = Family::linear(eps, false);
    if report.family != expected || report.n != n || report.q != BigUint::from(q) || report.p != p {
        return Err(Error::InvalidScenario(format!(
            "report for {}_{}({}) cannot be transferred to {}_{n}({q})",
            report.family,
            report.n,
            report.q,
            Family::linear(eps, true)
        )));
    }
    if (q as i128 - eps.value() as i128) % p as i128 == 0 {
        return Err(Error::OutOfScope(format!(
            "{p} divides q - ε = {}; blocks of {}_{n}({q}) are not covered",
            q as i64 - eps.value(),
            Family::linear(eps, true)
        )));
    }
    let mut r = report;
    r.family = Family::linear(eps, true);
    r.chain.push(STEP_TRANSFER.into());
    r.notes
        .push("W is unchanged in SL^ε_n(q) and its central quotients".into());
    Ok(r)
}

/// `W(B)` for a single scenario; `support` defaults to the full dimension.
pub fn w_invariant(g: &GroupDescriptor, p: u64, support: Option<u64>) -> Result<WReport> {
    let n0 = support.unwrap_or(g.n());
    match g.family() {
        Family::Gl | Family::Gu => w_glgu(g.family().eps().unwrap(), g.n(), g.q(), p, n0),
        Family::Sl | Family::Su => {
            let eps = g.family().eps().unwrap();
            let r = w_glgu(eps, g.n(), g.q(), p, n0)?;
            sl_su_transfer(eps, g.n(), g.q(), p, r)
        }
        _ => {
            let scenarios = centralizer_scenarios(g, p)?;
            let sc = scenarios.iter().find(|s| s.support_dim == n0).ok_or_else(|| {
                let dims: Vec<String> = scenarios.iter().map(|s| s.support_dim.to_string()).collect();
                Error::InvalidSupport(format!(
                    "no admissible scenario of {g} for p = {p} acts on dimension {n0}; available: [{}]",
                    dims.join(", ")
                ))
            })?;
            w_classical(g, p, sc, n0)
        }
    }
}

/// All admissible scenarios of `g` at `p` with their reports, ordered by
/// `(n₀, m, a')`.
pub fn enumerate_scenarios(g: &GroupDescriptor, p: u64) -> Result<Vec<(BlockScenario, WReport)>> {
    require_odd_prime(p)?;
    if g.q() % p == 0 {
        return Err(Error::BadCharacteristic { p, q: g.q() });
    }
    let mut reports: Vec<WReport> = match g.family() {
        Family::Gl | Family::Gu | Family::Sl | Family::Su => {
            let eps = g.family().eps().unwrap();
            let d = mult_order(eps.value() as i128 * g.q() as i128, p)?;
            let supports: Vec<u64> = if d == 1 {
                vec![g.n()]
            } else {
                (1..=g.n() / d).map(|k| k * d).collect()
            };
            supports
                .into_par_iter()
                .map(|n0| {
                    let r = w_glgu(eps, g.n(), g.q(), p, n0)?;
                    if g.family().is_special() {
                        sl_su_transfer(eps, g.n(), g.q(), p, r)
                    } else {
                        Ok(r)
                    }
                })
                .collect::<Result<_>>()?
        }
        _ => centralizer_scenarios(g, p)?
            .par_iter()
            .map(|sc| w_classical(g, p, sc, sc.support_dim))
            .collect::<Result<_>>()?,
    };
    reports.sort_by_key(|r| (r.n0, r.m, r.aprime));
    Ok(reports.into_iter().map(|r| (r.scenario(), r)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

fn check(name: &str, expected: impl ToString, actual: impl ToString) -> Check {
    let (expected, actual) = (expected.to_string(), actual.to_string());
    Check {
        name: name.into(),
        passed: expected == actual,
        expected,
        actual,
    }
}

/// The unitary example with `(d, p, q, |s|) = (3, 7, 5, 449)`.
#[derive(Debug, Clone, Serialize)]
pub struct BdrReport {
    pub report: WReport,
    /// The same invariant computed directly in `GU_7(125)`.
    pub reduced: WReport,
    pub defect_group_order: u64,
    pub d: u64,
    /// Edges of the Brauer tree, a straight line with `d` edges (cited).
    pub tree_edges: u64,
    /// The principal block of `C_G(s) ≅ GU_3(5^7)` on the Morita side.
    pub morita_side: WReport,
    pub morita_side_trivial: bool,
    pub witness_prime: u64,
    pub eigenvalue_field_degree: u64,
    pub checks: Vec<Check>,
}

impl BdrReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn reproduce_bdr_example() -> Result<BdrReport> {
    let (p, q, d, f) = (7u64, 5u64, 3u64, 449u64);
    let n = d * p;
    let report = w_glgu(Sign::Minus, n, q, p, n)?;
    let reduced = w_base(Sign::Minus, p, &BigUint::from(q).pow(d as u32), p)?;
    let q_p = q.pow(p as u32);
    let morita_side = w_glgu(Sign::Minus, d, q_p, p, d)?;
    let field_degree = mult_order((q * q) as i128, f)?;
    let torus = crate::grouppoly::torus_order(Sign::Minus, n, &BigUint::from(q));

    let divides = |j: u64| {
        let v = crate::numth::power_minus_sign(&BigUint::from(q), j, Sign::Minus);
        v.is_multiple_of(&BigInt::from(f))
    };
    let proper: Vec<u64> = (1..p).filter(|&j| divides(j)).collect();

    let checks = vec![
        check("label", "[1]", format!("{:?}", report.label.indices())),
        check("label length", 2, report.label.shape().l()),
        check("rendered", "Ω_{D/D_1}(k)", &report.rendered),
        check("|D|", 49, p.pow(report.defect_exponent)),
        check("d = ord_p(-q)", d, report.d),
        check("d odd and > 1", true, d % 2 == 1 && d > 1),
        check("p ≡ 3 mod 4", true, p % 4 == 3),
        check("n = dp", n, d * p),
        check(
            "reduced group",
            "GU_7(125)",
            format!(
                "{}_{}({})",
                Family::linear(report.eps_reduced, false),
                report.scenario().n_reduced(),
                report.q_reduced
            ),
        ),
        check("reduced step agrees", &reduced.rendered, &report.rendered),
        check(
            "reduced defect agrees",
            reduced.defect_exponent,
            report.defect_exponent,
        ),
        check("449 prime", true, is_prime(f)),
        check(
            "449 | 5^21 + 1",
            true,
            torus.is_multiple_of(&BigInt::from(f)),
        ),
        check(
            "449 ∤ 5^j - (-1)^j for 1 ≤ j < 7",
            "[]",
            format!("{proper:?}"),
        ),
        check("449 | 5^7 + 1", true, divides(p)),
        check("eigenvalue field degree over F_25", p, field_degree),
        check(
            "ord_p(-q^p) = d",
            d,
            mult_order_big(&(BigInt::from(-1) * BigInt::from(q_p)), p)?,
        ),
        check("Morita side trivial", true, morita_side.trivial),
    ];
    let out = BdrReport {
        defect_group_order: p.pow(report.defect_exponent),
        report,
        reduced,
        d,
        tree_edges: d,
        morita_side_trivial: morita_side.trivial,
        morita_side,
        witness_prime: f,
        eigenvalue_field_degree: field_degree,
        checks,
    };
    if !out.passed() {
        let diff: Vec<String> = out
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: expected {}, got {}", c.name, c.expected, c.actual))
            .collect();
        return Err(Error::ReproductionFailure(diff.join("; ")));
    }
    Ok(out)
}
