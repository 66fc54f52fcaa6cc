//! Exact integer number theory: valuations, multiplicative orders, primality
//! and factorization of word-sized integers, and primitive prime divisors of
//! `q^n - ε^n`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The sign `ε ∈ {+1, -1}` of the ε-convention: `GL^{+1} = GL`, `GL^{-1} = GU`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i64", try_from = "i64")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// `ε^k`.
    pub fn pow(self, k: u64) -> Sign {
        match self {
            Sign::Minus if k % 2 == 1 => Sign::Minus,
            _ => Sign::Plus,
        }
    }

    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl From<Sign> for i64 {
    fn from(s: Sign) -> i64 {
        s.value()
    }
}

impl TryFrom<i64> for Sign {
    type Error = Error;

    fn try_from(v: i64) -> Result<Sign> {
        Sign::from_i64(v).ok_or(Error::InvalidSign(v))
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => f.write_str("+1"),
            Sign::Minus => f.write_str("-1"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(v: u64) -> Parity {
        if v % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// A `p`-adic valuation `v_p(x)` for an odd prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Valuation {
    pub prime: u64,
    pub value: u32,
}

impl Valuation {
    pub fn of(prime: u64, x: &BigInt) -> Result<Valuation> {
        Ok(Valuation {
            prime,
            value: padic_val(prime, x)?,
        })
    }
}

pub(crate) fn require_odd_prime(p: u64) -> Result<()> {
    if p >= 3 && is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotOddPrime(p.to_string()))
    }
}

/// Largest `e` with `p^e | x`.
pub fn padic_val(p: u64, x: &BigInt) -> Result<u32> {
    require_odd_prime(p)?;
    if x.is_zero() {
        return Err(Error::UndefinedValuation);
    }
    let mut rest = x.magnitude().clone();
    // Word-sized fast path; the remaining magnitude usually fits quickly.
    let mut e = 0;
    loop {
        if let Some(small) = rest.to_u128() {
            let mut s = small;
            let pp = p as u128;
            while s % pp == 0 {
                s /= pp;
                e += 1;
            }
            return Ok(e);
        }
        let (quot, rem) = rest.div_rem(&BigUint::from(p));
        if !rem.is_zero() {
            return Ok(e);
        }
        rest = quot;
        e += 1;
    }
}

/// `padic_val` for machine integers.
pub fn padic_val_i128(p: u64, x: i128) -> Result<u32> {
    padic_val(p, &BigInt::from(x))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    result
}

/// Deterministic Miller-Rabin, valid for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality for big integers; only inputs below `2^64` are accepted.
pub fn is_prime_big(n: &BigUint) -> Result<bool> {
    match n.to_u64() {
        Some(v) => Ok(is_prime(v)),
        None => Err(Error::OutOfRange(format!(
            "primality of {n} requested; deterministic testing is limited to values below 2^64"
        ))),
    }
}

fn pollard_brent(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..std::cmp::min(128, r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

/// Prime factorization of `n ≥ 1` as ascending `(prime, exponent)` pairs.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    let mut rest = n;
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while rest % sp == 0 {
            primes.push(sp);
            rest /= sp;
        }
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            primes.push(m);
            continue;
        }
        let f = pollard_brent(m);
        stack.push(f);
        stack.push(m / f);
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for pr in primes {
        match out.last_mut() {
            Some((last, e)) if *last == pr => *e += 1,
            _ => out.push((pr, 1)),
        }
    }
    out
}

/// Decomposes `q = r^k` with `r` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(r, k)] => Some((*r, *k)),
        _ => None,
    }
}

/// Smallest `e ≥ 1` with `b^e ≡ 1 (mod m)`.
pub fn mult_order(b: i128, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::OutOfRange(format!("modulus {m} must be at least 2")));
    }
    let base = b.rem_euclid(m as i128) as u64;
    if base.gcd(&m) != 1 {
        return Err(Error::NotAUnit {
            base: b.to_string(),
            modulus: m,
        });
    }
    let phi = factorize(m)
        .iter()
        .fold(1u64, |acc, &(pr, e)| acc * (pr - 1) * pr.pow(e - 1));
    let mut order = phi;
    for (pr, _) in factorize(phi) {
        while order % pr == 0 && pow_mod(base, order / pr, m) == 1 {
            order /= pr;
        }
    }
    Ok(order)
}

/// Order of a big base modulo a word-sized modulus.
pub fn mult_order_big(b: &BigInt, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::OutOfRange(format!("modulus {m} must be at least 2")));
    }
    let reduced = b.mod_floor(&BigInt::from(m));
    mult_order(reduced.to_i128().expect("reduced below modulus"), m)
}

/// Parity of `⌊m/2⌋ + ⌊m·p^b/2⌋`, evaluated directly.
pub fn floor_parity(m: u64, b: u32, p: u64) -> Parity {
    let direct = (p as u128)
        .checked_pow(b)
        .and_then(|pb| pb.checked_mul(m as u128))
        .map(|mp| (m as u128 / 2 + mp / 2) % 2);
    let bit = match direct {
        Some(bit) => bit as u64,
        None => {
            let mp = BigUint::from(p).pow(b) * m;
            let sum: BigUint = (mp >> 1u32) + BigUint::from(m / 2);
            if sum.is_even() {
                0
            } else {
                1
            }
        }
    };
    Parity::of(bit)
}

/// The case split predicting [`floor_parity`]: even when `m` is even or
/// `p ≡ 1 (mod 4)`, otherwise the parity of `b`.
pub fn floor_parity_predicted(m: u64, b: u32, p: u64) -> Parity {
    if m % 2 == 0 || p % 4 == 1 {
        Parity::Even
    } else {
        Parity::of(b as u64)
    }
}

/// `q^n - ε^n` as a signed big integer.
pub fn power_minus_sign(q: &BigUint, n: u64, eps: Sign) -> BigInt {
    let qn = BigInt::from(num_traits::pow(q.clone(), n as usize));
    qn - eps.pow(n).value()
}

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;
const BIG_RHO_ITERATIONS: u64 = 1 << 18;

/// Primitive prime divisor of `q^n - ε^n`: a prime dividing it but no
/// `q^j - ε^j` for `1 ≤ j < n`.
///
/// Requires `n ≥ 3` and an odd prime dividing `q - ε`. The only input with no
/// such prime is `(q, n, ε) = (2, 3, -1)`, for which `None` is returned.
pub fn zsygmondy_prime(q: u64, n: u32, eps: Sign) -> Result<Option<u64>> {
    if n < 3 {
        return Err(Error::OutOfRange(format!("degree {n} must be at least 3")));
    }
    let q_minus = q as i128 - eps.value() as i128;
    let odd_part = {
        let mut v = q_minus.unsigned_abs();
        while v > 0 && v % 2 == 0 {
            v /= 2;
        }
        v
    };
    if q < 2 || odd_part <= 1 {
        return Err(Error::HypothesisViolation(format!(
            "q - ε = {q_minus} has no odd prime divisor"
        )));
    }
    let qb = BigUint::from(q);
    let target = power_minus_sign(&qb, n as u64, eps).magnitude().clone();
    // Strip every prime that already divides some q^j - ε^j with j < n.
    let mut primitive_part = target;
    for j in 1..n as u64 {
        let lower = power_minus_sign(&qb, j, eps).magnitude().clone();
        loop {
            let g = primitive_part.gcd(&lower);
            if g.is_one() {
                break;
            }
            primitive_part /= g;
        }
    }
    if primitive_part.is_one() {
        return Ok(None);
    }
    least_prime_factor_found(&primitive_part).map(Some)
}

fn least_prime_factor_found(n: &BigUint) -> Result<u64> {
    let mut rest = n.clone();
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_LIMIT {
        if (&rest % d).is_zero() {
            return Ok(d);
        }
        if let Some(small) = rest.to_u64() {
            if d.saturating_mul(d) > small {
                return Ok(small);
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if let Some(small) = rest.to_u64() {
        return Ok(factorize(small)[0].0);
    }
    // Split the oversized cofactor with a bounded rho search and keep the
    // least prime that lands in word size.
    let mut found: Option<u64> = None;
    let mut stack = vec![std::mem::take(&mut rest)];
    while let Some(m) = stack.pop() {
        if let Some(small) = m.to_u64() {
            let pr = factorize(small)[0].0;
            found = Some(found.map_or(pr, |f| f.min(pr)));
            continue;
        }
        if let Some(f) = pollard_brent_big(&m) {
            stack.push(&m / &f);
            stack.push(f);
        }
    }
    found.ok_or_else(|| {
        Error::OutOfRange(format!(
            "cofactor {n} has no prime factor below 2^64 within the search budget"
        ))
    })
}

fn pollard_brent_big(n: &BigUint) -> Option<BigUint> {
    let one = BigUint::one();
    for c in 1u32..=4 {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut steps = 0u64;
        let mut acc = BigUint::one();
        while steps < BIG_RHO_ITERATIONS {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            acc = (acc * diff) % n;
            steps += 1;
            if steps % 64 == 0 {
                let g = acc.gcd(n);
                if g == *n {
                    break;
                }
                if g > one {
                    return Some(g);
                }
            }
        }
    }
    None
}
