//! Sign sequences of Deligne–Lusztig values along power sequences, and
//! their translation into Dade labels.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::dade::{interval_label, invert_omega, CyclicPGroupShape, DadeLabel, SignVector};
use crate::error::{Error, Result};
use crate::numth::{floor_parity, require_odd_prime, Parity, Sign};

/// Sign of a non-zero integer.
pub fn sgn(x: &BigInt) -> Result<i8> {
    if x.is_positive() {
        Ok(1)
    } else if x.is_negative() {
        Ok(-1)
    } else {
        Err(Error::Degenerate("sign of zero".into()))
    }
}

/// Shape of a power sequence `(ρ(t^{p^{m-1}}), …, ρ(t^p), ρ(t))` for `t`
/// of order `p^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PowerSequenceSpec {
    pub p: u64,
    pub e: u32,
    pub m: u32,
}

impl PowerSequenceSpec {
    pub fn new(p: u64, e: u32, m: u32) -> Result<PowerSequenceSpec> {
        require_odd_prime(p)?;
        Ok(PowerSequenceSpec { p, e, m })
    }

    /// Exponents `log_p |t^{p^{m-j}}| = max(0, e - (m - j))` for `j = 1..=m`.
    pub fn order_exponents(&self) -> Vec<u32> {
        (1..=self.m)
            .map(|j| self.e.saturating_sub(self.m - j))
            .collect()
    }
}

/// Evaluates `rho` along the power sequence of `t`; entry `j` (1-based) is
/// `rho(t^{p^{m-j}})`.
pub fn power_sequence<T, R>(
    t: &T,
    p: u64,
    m: u32,
    pow: impl Fn(&T, u64) -> T,
    rho: impl Fn(&T) -> R,
) -> Vec<R> {
    let mut powers = Vec::with_capacity(m as usize);
    let mut cur = pow(t, 1);
    for _ in 0..m {
        powers.push(rho(&cur));
        cur = pow(&cur, p);
    }
    powers.reverse();
    powers
}

/// `F_q`-rank of `GL_n` (`ε = +1`) or `GU_n` (`ε = -1`).
pub fn relative_rank(eps: Sign, n: u64) -> u64 {
    match eps {
        Sign::Plus => n,
        Sign::Minus => n / 2,
    }
}

/// A `p`-element `u` of order `p^{a+b}` in `G = GL^ε_{m p^{a'}}(q)` whose
/// centralizer is `GL^ε_{m p^{a'-b}}(q^{p^b})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GLTowerElement {
    pub eps: Sign,
    pub m: u64,
    pub a_prime: u32,
    pub p: u64,
    pub b: u32,
}

impl GLTowerElement {
    pub fn new(eps: Sign, m: u64, a_prime: u32, p: u64, b: u32) -> Result<GLTowerElement> {
        require_odd_prime(p)?;
        if m == 0 || m % p == 0 {
            return Err(Error::HypothesisViolation(format!(
                "m = {m} must be a positive p'-number"
            )));
        }
        if b > a_prime {
            return Err(Error::InvalidExponent(format!(
                "b = {b} exceeds a' = {a_prime}"
            )));
        }
        Ok(GLTowerElement {
            eps,
            m,
            a_prime,
            p,
            b,
        })
    }

    /// Parity of `⌊n/2⌋` for `n = m p^k`, from `n mod 4`.
    fn half_floor_parity(&self, k: u32) -> u64 {
        let mut r = self.m % 4;
        for _ in 0..k {
            r = r * (self.p % 4) % 4;
        }
        r / 2
    }

    /// Parity of `r_F(G)` for `G` of degree `m p^k`.
    fn rank_parity(&self, k: u32) -> u64 {
        match self.eps {
            Sign::Plus => self.m % 2, // m p^k ≡ m (mod 2)
            Sign::Minus => self.half_floor_parity(k),
        }
    }
}

/// `ω_G(u) = ε_G ε_{C_G(u)}` where `ε_H = (-1)^{r_F(H)}`.
pub fn omega_g_of_tower_element(x: &GLTowerElement) -> Result<i8> {
    let x = GLTowerElement::new(x.eps, x.m, x.a_prime, x.p, x.b)?;
    if x.b == 0 {
        return Ok(1);
    }
    let parity = (x.rank_parity(x.a_prime) + x.rank_parity(x.a_prime - x.b)) % 2;
    Ok(if parity == 0 { 1 } else { -1 })
}

/// Same value from the explicit `⌊·/2⌋` sums in big integers.
pub fn omega_g_by_floor_parity(x: &GLTowerElement) -> Result<i8> {
    let x = GLTowerElement::new(x.eps, x.m, x.a_prime, x.p, x.b)?;
    if x.b == 0 || x.eps == Sign::Plus {
        // r_F = degree, and m p^{a'} and m p^{a'-b} have equal parity.
        return Ok(1);
    }
    let inner = x.m * x.p.pow(x.a_prime - x.b);
    Ok(match floor_parity(inner, x.b, x.p) {
        Parity::Even => 1,
        Parity::Odd => -1,
    })
}

fn check_sequence_params(a_prime: u32, l: u32, e: u32) -> Result<()> {
    if l == 0 {
        return Err(Error::OutOfRange("length must be positive".into()));
    }
    if e >= l {
        return Err(Error::HypothesisViolation(format!(
            "t^(p^(l-1)) must be central, so e = {e} must be below l = {l}"
        )));
    }
    if e > a_prime {
        return Err(Error::InvalidExponent(format!(
            "e = {e} exceeds a' = {a_prime}"
        )));
    }
    Ok(())
}

/// Entry `j` is `ω_G(t^{p^{l-j}})` for `t` of order `p^{a+e}`.
pub fn sign_sequence_oracle(
    eps: Sign,
    m: u64,
    a_prime: u32,
    _a: u32,
    l: u32,
    e: u32,
    p: u64,
) -> Result<SignVector> {
    check_sequence_params(a_prime, l, e)?;
    let entries = (1..=l)
        .map(|j| {
            let b = e.saturating_sub(l - j);
            let u = GLTowerElement::new(eps, m, a_prime, p, b)?;
            omega_g_of_tower_element(&u).map(i64::from)
        })
        .collect::<Result<Vec<i64>>>()?;
    SignVector::new(&entries)
}

/// The interval `I` with `σ^{[l]}(t) = ω_Λ(1_I)`; `None` is the empty
/// interval.
pub fn interval_form(
    eps: Sign,
    m: u64,
    _a: u32,
    a_dprime: u32,
    l: u32,
    p: u64,
) -> Result<Option<(u32, u32)>> {
    require_odd_prime(p)?;
    if a_dprime >= l {
        return Err(Error::HypothesisViolation(format!(
            "a'' = {a_dprime} must be below l = {l}"
        )));
    }
    let nontrivial = eps == Sign::Minus && m % 2 == 1 && p % 4 == 3 && a_dprime >= 1;
    Ok(nontrivial.then(|| (l - a_dprime, l - 1)))
}

/// `W(B)` from the sign sequence of a character in the block.
pub fn label_from_sign_sequence(v: &SignVector, p: u64) -> Result<DadeLabel> {
    let shape = CyclicPGroupShape::new(p, v.len() as u32)?;
    invert_omega(v, shape)
}

/// [`interval_form`] as a Dade label.
pub fn interval_form_label(
    eps: Sign,
    m: u64,
    a: u32,
    a_dprime: u32,
    l: u32,
    p: u64,
) -> Result<DadeLabel> {
    let shape = CyclicPGroupShape::new(p, l)?;
    match interval_form(eps, m, a, a_dprime, l, p)? {
        Some((lo, hi)) => interval_label(shape, lo as i64, hi as i64),
        None => Ok(DadeLabel::trivial(shape)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dade::DadeLabel;
    use proptest::prelude::*;

    fn sv(v: &[i64]) -> SignVector {
        SignVector::new(v).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(relative_rank(Sign::Plus, 5), 5);
        assert_eq!(relative_rank(Sign::Minus, 5), 2);
        assert_eq!(relative_rank(Sign::Minus, 1), 0);
    }

    #[test]
    fn omega_g_examples() {
        for (m, a1, b, p) in [(1, 1, 1, 7), (2, 3, 2, 3), (5, 2, 1, 11)] {
            let x = GLTowerElement::new(Sign::Plus, m, a1, p, b).unwrap();
            assert_eq!(omega_g_of_tower_element(&x).unwrap(), 1);
        }
        let x = GLTowerElement::new(Sign::Minus, 1, 1, 7, 1).unwrap();
        assert_eq!(omega_g_of_tower_element(&x).unwrap(), -1);
        let x = GLTowerElement::new(Sign::Minus, 1, 2, 7, 2).unwrap();
        assert_eq!(omega_g_of_tower_element(&x).unwrap(), 1);
        assert!(matches!(
            GLTowerElement::new(Sign::Minus, 1, 1, 7, 2),
            Err(Error::InvalidExponent(_))
        ));
        assert!(matches!(
            GLTowerElement::new(Sign::Minus, 7, 1, 7, 1),
            Err(Error::HypothesisViolation(_))
        ));
    }

    #[test]
    fn omega_g_matches_definition_by_ranks() {
        // ε_G ε_C with the ranks computed from the full degrees.
        for eps in [Sign::Plus, Sign::Minus] {
            for p in [3u64, 5, 7, 11, 13] {
                for m in (1..40u64).filter(|m| m % p != 0) {
                    for a1 in 0..=3u32 {
                        for b in 0..=a1 {
                            let x = GLTowerElement::new(eps, m, a1, p, b).unwrap();
                            let expected = if b == 0 {
                                1
                            } else {
                                let rg = relative_rank(eps, m * p.pow(a1));
                                let rc = relative_rank(eps, m * p.pow(a1 - b));
                                if (rg + rc) % 2 == 0 {
                                    1
                                } else {
                                    -1
                                }
                            };
                            assert_eq!(omega_g_of_tower_element(&x).unwrap(), expected);
                            assert_eq!(omega_g_by_floor_parity(&x).unwrap(), expected);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn oracle_examples() {
        let v = sign_sequence_oracle(Sign::Minus, 1, 1, 1, 2, 1, 7).unwrap();
        assert_eq!(v, sv(&[1, -1]));
        let v = sign_sequence_oracle(Sign::Plus, 5, 3, 2, 5, 3, 3).unwrap();
        assert_eq!(v, SignVector::all_ones(5));
        let v = sign_sequence_oracle(Sign::Minus, 2, 2, 1, 3, 2, 7).unwrap();
        assert_eq!(v, SignVector::all_ones(3));
        assert!(matches!(
            sign_sequence_oracle(Sign::Minus, 1, 2, 0, 2, 2, 7),
            Err(Error::HypothesisViolation(_))
        ));
    }

    #[test]
    fn interval_examples() {
        assert_eq!(
            interval_form(Sign::Minus, 1, 1, 1, 2, 7).unwrap(),
            Some((1, 1))
        );
        assert_eq!(interval_form(Sign::Minus, 1, 1, 1, 2, 5).unwrap(), None);
        assert_eq!(interval_form(Sign::Minus, 2, 1, 1, 2, 7).unwrap(), None);
        assert_eq!(interval_form(Sign::Plus, 1, 1, 1, 2, 7).unwrap(), None);
    }

    #[test]
    fn labels_from_signs() {
        assert!(label_from_sign_sequence(&sv(&[1, 1, 1]), 3)
            .unwrap()
            .is_trivial());
        assert_eq!(
            label_from_sign_sequence(&sv(&[1, -1]), 7)
                .unwrap()
                .indices(),
            vec![1]
        );
        assert_eq!(
            label_from_sign_sequence(&sv(&[-1, -1]), 7)
                .unwrap()
                .indices(),
            vec![0]
        );
    }

    #[test]
    fn power_sequence_orders_follow_spec() {
        // t = 2 in (Z/3^5)^*, which has order 2·3^4; its 3-part t^2 has order 3^4.
        let modulus = 243u64;
        let t = crate::numth::pow_mod(2, 2, modulus);
        let pow = |x: &u64, k: u64| crate::numth::pow_mod(*x, k, modulus);
        let order = |x: &u64| crate::numth::mult_order(*x as i128, modulus).unwrap();
        let seq = power_sequence(&t, 3, 6, pow, order);
        let spec = PowerSequenceSpec::new(3, 4, 6).unwrap();
        let expected: Vec<u64> = spec
            .order_exponents()
            .iter()
            .map(|&k| 3u64.pow(k))
            .collect();
        assert_eq!(seq, expected);
        assert_eq!(seq.last(), Some(&81));
    }

    #[test]
    fn oracle_matches_interval_form_on_the_grid() {
        for eps in [Sign::Plus, Sign::Minus] {
            for p in [3u64, 7, 11, 19] {
                for m in (1..=99u64).filter(|m| m % p != 0) {
                    for a in 0..=3u32 {
                        for a1 in 0..=3u32 {
                            let l = a + a1;
                            for e in 0..=a1.min(l.saturating_sub(1)) {
                                if l == 0 {
                                    continue;
                                }
                                let v = sign_sequence_oracle(eps, m, a1, a, l, e, p).unwrap();
                                let from_signs = label_from_sign_sequence(&v, p).unwrap();
                                let closed = interval_form_label(eps, m, a, e, l, p).unwrap();
                                assert_eq!(
                                    from_signs, closed,
                                    "eps={eps} m={m} a={a} a'={a1} e={e} p={p}"
                                );
                                assert!(!from_signs.contains(0));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sgn_of_integers() {
        assert_eq!(sgn(&BigInt::from(-4)).unwrap(), -1);
        assert_eq!(sgn(&BigInt::from(9)).unwrap(), 1);
        assert!(sgn(&BigInt::from(0)).is_err());
    }

    proptest! {
        #[test]
        fn floor_parity_path_agrees(m in 1u64..5000, a1 in 0u32..4, b in 0u32..4, pi in 0usize..5) {
            let p = [3u64, 5, 7, 11, 19][pi];
            prop_assume!(m % p != 0 && b <= a1);
            let x = GLTowerElement::new(Sign::Minus, m, a1, p, b).unwrap();
            prop_assert_eq!(omega_g_of_tower_element(&x).unwrap(), omega_g_by_floor_parity(&x).unwrap());
            let predicted = if b % 2 == 1 && m % 2 == 1 && p % 4 == 3 { -1 } else { 1 };
            prop_assert_eq!(omega_g_of_tower_element(&x).unwrap(), predicted);
        }

        #[test]
        fn oracle_never_exceeds_label_length(l in 1u32..12, e in 0u32..11, m in 1u64..50) {
            prop_assume!(e < l && m % 7 != 0);
            let v = sign_sequence_oracle(Sign::Minus, m, e, l - e, l, e, 7).unwrap();
            prop_assert_eq!(v.len(), l as usize);
            let lbl: DadeLabel = label_from_sign_sequence(&v, 7).unwrap();
            prop_assert!(!lbl.contains(0));
        }
    }
}
