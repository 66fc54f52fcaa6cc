//! Finite classical groups: descriptors, orders, tori, defect exponents, and
//! centralizers of order-`p` elements in symplectic and spin groups.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numth::{mult_order, padic_val, power_minus_sign, prime_power, require_odd_prime, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Family {
    Gl,
    Gu,
    Sl,
    Su,
    Sp,
    /// Odd-dimensional spin group.
    Spin,
    SpinPlus,
    SpinMinus,
}

impl Family {
    /// `ε` of the linear/unitary families.
    pub fn eps(self) -> Option<Sign> {
        match self {
            Family::Gl | Family::Sl => Some(Sign::Plus),
            Family::Gu | Family::Su => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn is_classical(self) -> bool {
        matches!(
            self,
            Family::Sp | Family::Spin | Family::SpinPlus | Family::SpinMinus
        )
    }

    pub fn is_spin(self) -> bool {
        matches!(self, Family::Spin | Family::SpinPlus | Family::SpinMinus)
    }

    pub fn is_special(self) -> bool {
        matches!(self, Family::Sl | Family::Su)
    }

    /// `GL^ε` or `SL^ε`.
    pub fn linear(eps: Sign, special: bool) -> Family {
        match (eps, special) {
            (Sign::Plus, false) => Family::Gl,
            (Sign::Minus, false) => Family::Gu,
            (Sign::Plus, true) => Family::Sl,
            (Sign::Minus, true) => Family::Su,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Gl => "GL",
            Family::Gu => "GU",
            Family::Sl => "SL",
            Family::Su => "SU",
            Family::Sp => "Sp",
            Family::Spin => "Spin",
            Family::SpinPlus => "Spin+",
            Family::SpinMinus => "Spin-",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "gl" => Family::Gl,
            "gu" => Family::Gu,
            "sl" => Family::Sl,
            "su" => Family::Su,
            "sp" => Family::Sp,
            "spin" => Family::Spin,
            "spin+" | "spinplus" => Family::SpinPlus,
            "spin-" | "spinminus" => Family::SpinMinus,
            other => {
                return Err(Error::InvalidDescriptor(format!(
                    "unknown family '{other}'"
                )))
            }
        })
    }
}

impl From<Family> for String {
    fn from(f: Family) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for Family {
    type Error = Error;

    fn try_from(s: String) -> Result<Family> {
        s.parse()
    }
}

/// A finite group `X_n(q)` from one of the supported families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GroupDescriptor {
    family: Family,
    n: u64,
    q: u64,
}

impl GroupDescriptor {
    pub fn new(family: Family, n: u64, q: u64) -> Result<GroupDescriptor> {
        let bad = |why: String| Err(Error::InvalidDescriptor(why));
        if q < 2 || prime_power(q).is_none() {
            return bad(format!("q = {q} is not a prime power"));
        }
        match family {
            Family::Gl | Family::Gu | Family::Sl | Family::Su if n < 1 => {
                return bad("degree must be at least 1".into())
            }
            Family::Sp if n < 4 || n % 2 == 1 => {
                return bad(format!("Sp needs even degree at least 4, got {n}"))
            }
            Family::Sp if (n, q) == (4, 2) => return bad("Sp_4(2) is excluded".into()),
            Family::Spin if n < 7 || n % 2 == 0 || q % 2 == 0 => {
                return bad(format!(
                    "odd-dimensional Spin needs odd n ≥ 7 and odd q, got n={n}, q={q}"
                ))
            }
            Family::SpinPlus | Family::SpinMinus if n < 8 || n % 2 == 1 => {
                return bad(format!("{family} needs even degree at least 8, got {n}"))
            }
            _ => {}
        }
        Ok(GroupDescriptor { family, n, q })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}({})", self.family, self.n, self.q)
    }
}

fn prod_big(range: impl Iterator<Item = BigInt>) -> BigInt {
    range.fold(BigInt::one(), |acc, x| acc * x)
}

fn to_unsigned(x: BigInt) -> BigUint {
    x.to_biguint().expect("group orders are positive")
}

/// `|Ω|` and the order of the kernel of `Spin → Ω`, which is `gcd(2, q-1)`.
pub fn spin_order_parts(g: &GroupDescriptor) -> Option<(BigUint, BigUint)> {
    let q = BigInt::from(g.q);
    let kernel = BigUint::from(if g.q % 2 == 1 { 2u32 } else { 1 });
    let omega = match g.family {
        Family::Spin => {
            let m = (g.n - 1) / 2;
            let so = q.pow((m * m) as u32) * prod_big((1..=m).map(|i| q.pow(2 * i as u32) - 1));
            to_unsigned(so) / 2u32
        }
        Family::SpinPlus | Family::SpinMinus => {
            let m = g.n / 2;
            let eps = if g.family == Family::SpinPlus { 1 } else { -1 };
            let so = q.pow((m * (m - 1)) as u32)
                * (q.pow(m as u32) - eps)
                * prod_big((1..m).map(|i| q.pow(2 * i as u32) - 1));
            to_unsigned(so) / &kernel
        }
        _ => return None,
    };
    Some((omega, kernel))
}

pub fn group_order(g: &GroupDescriptor) -> BigUint {
    let q = BigInt::from(g.q);
    let n = g.n;
    let unipotent = || q.pow((n * (n - 1) / 2) as u32);
    match g.family {
        Family::Gl | Family::Sl => {
            let o = to_unsigned(unipotent() * prod_big((1..=n).map(|i| q.pow(i as u32) - 1)));
            if g.family == Family::Sl {
                o / (g.q - 1)
            } else {
                o
            }
        }
        Family::Gu | Family::Su => {
            let o = prod_big((1..=n).map(|i| {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                q.pow(i as u32) - sign
            }));
            let o = to_unsigned(unipotent() * o);
            if g.family == Family::Su {
                o / (g.q + 1)
            } else {
                o
            }
        }
        Family::Sp => {
            let m = n / 2;
            to_unsigned(q.pow((m * m) as u32) * prod_big((1..=m).map(|i| q.pow(2 * i as u32) - 1)))
        }
        _ => {
            let (omega, kernel) = spin_order_parts(g).expect("spin family");
            omega * kernel
        }
    }
}

/// `q^n - ε^n`, the order of a Coxeter torus of `GL^ε_n(q)`.
pub fn torus_order(eps: Sign, n: u64, q: &BigUint) -> BigInt {
    power_minus_sign(q, n, eps)
}

/// `a + a'` with `a = v_p(q - ε)` and `a' = v_p(n)`.
pub fn defect_exponent(eps: Sign, n: u64, q: &BigUint, p: u64) -> Result<u32> {
    require_odd_prime(p)?;
    let q_minus = BigInt::from(q.clone()) - eps.value();
    if !q_minus.is_multiple_of(&BigInt::from(p)) {
        return Err(Error::HypothesisViolation(format!(
            "{p} does not divide {q} - ({eps})"
        )));
    }
    if n == 0 {
        return Err(Error::OutOfRange("degree must be positive".into()));
    }
    let a = padic_val(p, &q_minus)?;
    let a_prime = padic_val(p, &BigInt::from(n))?;
    let direct = padic_val(p, &torus_order(eps, n, q))?;
    if direct != a + a_prime {
        return Err(Error::HypothesisViolation(format!(
            "v_{p}(q^n - ε^n) = {direct} but v_{p}(q - ε) + v_{p}(n) = {}",
            a + a_prime
        )));
    }
    Ok(a + a_prime)
}

/// `C(t̄_1) ≅ GL^ε_m(q^d)` acting on a support of dimension `2md`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralizerScenario {
    pub d: u64,
    pub m: u64,
    pub eps: Sign,
    #[serde(with = "crate::serde_num")]
    pub q_reduced: BigUint,
    pub support_dim: u64,
    /// Set for spin groups whose order-`p` element has a non-trivial fixed
    /// space; the `±` type then only constrains the support subspace.
    pub subspace_only: bool,
}

/// The `(d, ε)` of an order-`p` element of `Sp`/`Spin` over `F_q`.
pub fn classical_d_eps(q: u64, p: u64) -> Result<(u64, Sign)> {
    require_odd_prime(p)?;
    if q % p == 0 {
        return Err(Error::BadCharacteristic { p, q });
    }
    let e = mult_order(q as i128, p)?;
    Ok(if e % 2 == 0 {
        (e / 2, Sign::Minus)
    } else {
        (e, Sign::Plus)
    })
}

pub fn centralizer_scenarios(g: &GroupDescriptor, p: u64) -> Result<Vec<CentralizerScenario>> {
    if !g.family.is_classical() {
        return Err(Error::InvalidScenario(format!(
            "{g} is not symplectic or spin"
        )));
    }
    let (d, eps) = classical_d_eps(g.q, p)?;
    let q_reduced = BigUint::from(g.q).pow(d as u32);
    let mut out = Vec::new();
    for m in (1..).take_while(|m| 2 * m * d <= g.n) {
        let support_dim = 2 * m * d;
        let full = support_dim == g.n;
        let admissible = match (g.family, full, eps) {
            (Family::SpinPlus, true, Sign::Minus) => m % 2 == 0,
            (Family::SpinMinus, true, Sign::Minus) => m % 2 == 1,
            (Family::SpinMinus, true, Sign::Plus) => false,
            _ => true,
        };
        if admissible {
            out.push(CentralizerScenario {
                d,
                m,
                eps,
                q_reduced: q_reduced.clone(),
                support_dim,
                subspace_only: g.family.is_spin() && !full,
            });
        }
    }
    Ok(out)
}
