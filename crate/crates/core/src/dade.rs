//! The Dade group of a cyclic `p`-group `D` of order `p^l`.
//!
//! Elements are labelled by subsets `A ⊆ Λ = {0, …, l-1}`; `W_D(A)` is the
//! composition of the relative syzygies `Ω_{D/D_j}` for `j ∈ A` applied to
//! the trivial module `k`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numth::require_odd_prime;

pub const MAX_LENGTH: u32 = 64;

/// A cyclic group of order `p^l`; `D_j` is its subgroup of order `p^j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicPGroupShape {
    p: u64,
    l: u32,
}

impl CyclicPGroupShape {
    pub fn new(p: u64, l: u32) -> Result<CyclicPGroupShape> {
        require_odd_prime(p)?;
        if l == 0 || l > MAX_LENGTH {
            return Err(Error::OutOfRange(format!(
                "length {l} not in 1..={MAX_LENGTH}"
            )));
        }
        Ok(CyclicPGroupShape { p, l })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    fn mask(&self) -> u64 {
        if self.l == 64 {
            u64::MAX
        } else {
            (1u64 << self.l) - 1
        }
    }
}

/// `W_D(A)` for `A ⊆ {0, …, l-1}`, stored as a bitset. Label indices are
/// 0-based, unlike [`SignVector`] entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DadeLabel {
    shape: CyclicPGroupShape,
    bits: u64,
}

impl DadeLabel {
    pub fn trivial(shape: CyclicPGroupShape) -> DadeLabel {
        DadeLabel { shape, bits: 0 }
    }

    pub fn from_indices(shape: CyclicPGroupShape, indices: &[u32]) -> Result<DadeLabel> {
        let mut bits = 0u64;
        for &j in indices {
            if j >= shape.l {
                return Err(Error::OutOfRange(format!(
                    "index {j} outside 0..{}",
                    shape.l
                )));
            }
            bits |= 1 << j;
        }
        Ok(DadeLabel { shape, bits })
    }

    pub fn from_bits(shape: CyclicPGroupShape, bits: u64) -> Result<DadeLabel> {
        if bits & !shape.mask() != 0 {
            return Err(Error::OutOfRange(format!(
                "bitset {bits:#x} exceeds length {}",
                shape.l
            )));
        }
        Ok(DadeLabel { shape, bits })
    }

    pub fn shape(&self) -> CyclicPGroupShape {
        self.shape
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn contains(&self, j: u32) -> bool {
        j < 64 && self.bits >> j & 1 == 1
    }

    pub fn is_trivial(&self) -> bool {
        self.bits == 0
    }

    /// Members of `A` in ascending order.
    pub fn indices(&self) -> Vec<u32> {
        (0..self.shape.l).filter(|&j| self.contains(j)).collect()
    }
}

impl fmt::Display for DadeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_label(self))
    }
}

#[derive(Serialize, Deserialize)]
struct LabelRecord {
    p: u64,
    l: u32,
    #[serde(rename = "A")]
    a: Vec<u32>,
}

impl Serialize for DadeLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LabelRecord {
            p: self.shape.p,
            l: self.shape.l,
            a: self.indices(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DadeLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<DadeLabel, D::Error> {
        let rec = LabelRecord::deserialize(d)?;
        let shape = CyclicPGroupShape::new(rec.p, rec.l).map_err(serde::de::Error::custom)?;
        DadeLabel::from_indices(shape, &rec.a).map_err(serde::de::Error::custom)
    }
}

/// Sign vector in `{±1}^l`, indexed `1..=l`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn new(entries: &[i64]) -> Result<SignVector> {
        entries
            .iter()
            .map(|&e| match e {
                1 => Ok(1),
                -1 => Ok(-1),
                other => Err(Error::InvalidSign(other)),
            })
            .collect::<Result<Vec<i8>>>()
            .map(SignVector)
    }

    pub fn all_ones(l: usize) -> SignVector {
        SignVector(vec![1; l])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entry `i`, for `1 ≤ i ≤ l`.
    pub fn entry(&self, i: usize) -> i8 {
        self.0[i - 1]
    }

    pub fn entries(&self) -> &[i8] {
        &self.0
    }

    /// Pointwise product.
    pub fn product(&self, other: &SignVector) -> SignVector {
        SignVector(self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect())
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self
            .0
            .iter()
            .map(|&e| if e > 0 { "+1" } else { "-1" })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Entry `i` is `+1` iff `α_0 + … + α_{i-1}` is even.
pub fn omega_lambda(label: &DadeLabel) -> SignVector {
    let mut parity = 0u8;
    let mut out = Vec::with_capacity(label.shape.l as usize);
    for j in 0..label.shape.l {
        parity ^= label.contains(j) as u8;
        out.push(if parity == 0 { 1 } else { -1 });
    }
    SignVector(out)
}

pub fn invert_omega(v: &SignVector, shape: CyclicPGroupShape) -> Result<DadeLabel> {
    if v.len() != shape.l as usize {
        return Err(Error::IncompatibleShapes(format!(
            "sign vector of length {} for l = {}",
            v.len(),
            shape.l
        )));
    }
    let mut bits = 0u64;
    let mut prev = 1i8;
    for (j, &e) in v.entries().iter().enumerate() {
        if e != prev {
            bits |= 1 << j;
        }
        prev = e;
    }
    Ok(DadeLabel { shape, bits })
}

/// `[a, b] ⊆ Λ`; empty when `a > b`.
pub fn interval_label(shape: CyclicPGroupShape, a: i64, b: i64) -> Result<DadeLabel> {
    if a > b {
        return Ok(DadeLabel::trivial(shape));
    }
    if a < 0 || b >= shape.l as i64 {
        return Err(Error::OutOfRange(format!(
            "interval [{a},{b}] not inside 0..{}",
            shape.l
        )));
    }
    let width = (b - a + 1) as u32;
    let run = if width == 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    };
    Ok(DadeLabel {
        shape,
        bits: run << a,
    })
}

/// Entry `i` of `ω_Λ(1_{[a,b]})` from the piecewise formula.
pub fn omega_of_interval_closed_form(a: i64, b: i64, l: u32, i: u32) -> Result<i8> {
    if i == 0 || i > l {
        return Err(Error::OutOfRange(format!("entry {i} not in 1..={l}")));
    }
    if a > b {
        return Ok(1);
    }
    if a < 0 || b >= l as i64 {
        return Err(Error::OutOfRange(format!(
            "interval [{a},{b}] not inside 0..{l}"
        )));
    }
    let i = i as i64;
    let sign = |e: i64| if e % 2 == 0 { 1 } else { -1 };
    Ok(if i <= a {
        1
    } else if i <= b {
        sign(i - a)
    } else {
        sign(b - a + 1)
    })
}

pub fn add_labels(x: &DadeLabel, y: &DadeLabel) -> Result<DadeLabel> {
    if x.shape != y.shape {
        return Err(Error::IncompatibleShapes(format!(
            "p^l = {}^{} vs {}^{}",
            x.shape.p, x.shape.l, y.shape.p, y.shape.l
        )));
    }
    Ok(DadeLabel {
        shape: x.shape,
        bits: x.bits ^ y.bits,
    })
}

/// The ordinary syzygy `Ω = Ω_{D/D_0}`: toggles index 0.
pub fn omega_operator(x: &DadeLabel) -> DadeLabel {
    DadeLabel {
        shape: x.shape,
        bits: x.bits ^ 1,
    }
}

fn check_central_exponent(a: u32, l: u32) -> Result<()> {
    if a == 0 || a >= l {
        return Err(Error::OutOfRange(format!(
            "central exponent {a} not in 1..{l}"
        )));
    }
    Ok(())
}

/// Passes to `D/D_a`: `Ā = {j - a : j ∈ A, j ≠ a}`.
pub fn deflate_label(x: &DadeLabel, a: u32) -> Result<DadeLabel> {
    check_central_exponent(a, x.shape.l)?;
    let low = (1u64 << a) - 1;
    if x.bits & low != 0 {
        return Err(Error::InvalidDomination(format!(
            "label {} meets indices below {a}",
            render_label(x)
        )));
    }
    let shape = CyclicPGroupShape {
        p: x.shape.p,
        l: x.shape.l - a,
    };
    Ok(DadeLabel {
        shape,
        bits: x.bits.checked_shr(a + 1).unwrap_or(0) << 1,
    })
}

/// Inverse of [`deflate_label`]: index `a` is present iff `ᾱ_0 ⊕ flag`.
pub fn inflate_label(xbar: &DadeLabel, a: u32, bottom_flag: bool) -> Result<DadeLabel> {
    let l = xbar.shape.l + a;
    if l > MAX_LENGTH {
        return Err(Error::OutOfRange(format!(
            "inflated length {l} exceeds {MAX_LENGTH}"
        )));
    }
    check_central_exponent(a, l)?;
    let shape = CyclicPGroupShape { p: xbar.shape.p, l };
    let mut bits = (xbar.bits & !1) << a;
    if xbar.contains(0) ^ bottom_flag {
        bits |= 1 << a;
    }
    Ok(DadeLabel { shape, bits })
}

pub fn render_label(x: &DadeLabel) -> String {
    if x.is_trivial() {
        return "k".to_string();
    }
    let ops: Vec<String> = x
        .indices()
        .iter()
        .map(|j| format!("Ω_{{D/D_{j}}}"))
        .collect();
    format!("{}(k)", ops.join(" ∘ "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn shape(l: u32) -> CyclicPGroupShape {
        CyclicPGroupShape::new(7, l).unwrap()
    }

    fn label(l: u32, a: &[u32]) -> DadeLabel {
        DadeLabel::from_indices(shape(l), a).unwrap()
    }

    fn sv(v: &[i64]) -> SignVector {
        SignVector::new(v).unwrap()
    }

    /// Prefix sums computed directly from the indicator vector.
    fn prefix_sum_oracle(l: u32, a: &[u32]) -> Vec<i8> {
        (1..=l)
            .map(|i| {
                let s = (0..i).filter(|j| a.contains(j)).count();
                if s % 2 == 0 {
                    1
                } else {
                    -1
                }
            })
            .collect()
    }

    #[test]
    fn shape_validation() {
        assert!(CyclicPGroupShape::new(2, 3).is_err());
        assert!(CyclicPGroupShape::new(9, 3).is_err());
        assert!(CyclicPGroupShape::new(3, 0).is_err());
        assert!(CyclicPGroupShape::new(3, 65).is_err());
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega_lambda(&label(3, &[])), sv(&[1, 1, 1]));
        assert_eq!(omega_lambda(&label(2, &[1])), sv(&[1, -1]));
        assert_eq!(omega_lambda(&label(4, &[1, 2])), sv(&[1, -1, 1, 1]));
        assert_eq!(
            omega_lambda(&label(4, &[1, 2])).entries(),
            &prefix_sum_oracle(4, &[1, 2])[..]
        );
    }

    #[test]
    fn invert_examples() {
        assert_eq!(
            invert_omega(&sv(&[1, 1, 1]), shape(3)).unwrap(),
            label(3, &[])
        );
        assert_eq!(
            invert_omega(&sv(&[1, -1]), shape(2)).unwrap(),
            label(2, &[1])
        );
        // The first entry forces α_0 = 1, the second α_0 + α_1 = 0.
        assert_eq!(
            invert_omega(&sv(&[-1, 1]), shape(2)).unwrap(),
            label(2, &[0, 1])
        );
        assert_eq!(omega_lambda(&label(2, &[0])), sv(&[-1, -1]));
        assert!(invert_omega(&sv(&[1]), shape(2)).is_err());
        assert_eq!(SignVector::new(&[1, 0]), Err(Error::InvalidSign(0)));
    }

    #[test]
    fn interval_examples() {
        assert_eq!(interval_label(shape(2), 1, 1).unwrap(), label(2, &[1]));
        assert!(interval_label(shape(5), 3, 2).unwrap().is_trivial());
        assert_eq!(
            interval_label(shape(4), 0, 2).unwrap(),
            label(4, &[0, 1, 2])
        );
        assert!(interval_label(shape(4), 2, 4).is_err());
        assert_eq!(interval_label(shape(64), 0, 63).unwrap().bits(), u64::MAX);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(omega_of_interval_closed_form(1, 1, 2, 2).unwrap(), -1);
        assert_eq!(omega_of_interval_closed_form(1, 1, 2, 1).unwrap(), 1);
        assert_eq!(omega_of_interval_closed_form(0, 2, 4, 2).unwrap(), 1);
        assert!(omega_of_interval_closed_form(0, 2, 4, 0).is_err());
        assert!(omega_of_interval_closed_form(0, 4, 4, 1).is_err());
    }

    #[test]
    fn closed_form_agrees_exhaustively() {
        for l in 1..=16u32 {
            for a in 0..l as i64 {
                for b in a..l as i64 {
                    let v = omega_lambda(&interval_label(shape(l), a, b).unwrap());
                    for i in 1..=l {
                        assert_eq!(
                            omega_of_interval_closed_form(a, b, l, i).unwrap(),
                            v.entry(i as usize),
                            "[{a},{b}] l={l} i={i}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn addition_examples() {
        let x = label(3, &[0, 1]);
        assert!(add_labels(&x, &x).unwrap().is_trivial());
        assert_eq!(
            add_labels(&label(3, &[1]), &label(3, &[])).unwrap(),
            label(3, &[1])
        );
        assert_eq!(
            add_labels(&x, &label(3, &[1, 2])).unwrap(),
            label(3, &[0, 2])
        );
        let other = DadeLabel::trivial(CyclicPGroupShape::new(5, 3).unwrap());
        assert!(matches!(
            add_labels(&x, &other),
            Err(Error::IncompatibleShapes(_))
        ));
    }

    #[test]
    fn omega_operator_examples() {
        assert_eq!(omega_operator(&label(2, &[])), label(2, &[0]));
        assert_eq!(omega_operator(&label(2, &[0])), label(2, &[]));
        assert_eq!(omega_operator(&label(2, &[1])), label(2, &[0, 1]));
    }

    #[test]
    fn deflate_examples() {
        assert!(deflate_label(&label(2, &[]), 1).unwrap().is_trivial());
        let d = deflate_label(&label(2, &[1]), 1).unwrap();
        assert_eq!(d, label(1, &[]));
        assert_eq!(
            deflate_label(&label(3, &[1, 2]), 1).unwrap(),
            label(2, &[1])
        );
        assert!(matches!(
            deflate_label(&label(3, &[0, 2]), 1),
            Err(Error::InvalidDomination(_))
        ));
        assert!(matches!(
            deflate_label(&label(3, &[]), 3),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            deflate_label(&label(3, &[]), 0),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn inflate_examples() {
        assert_eq!(
            inflate_label(&label(1, &[]), 1, false).unwrap(),
            label(2, &[])
        );
        assert_eq!(
            inflate_label(&label(1, &[]), 1, true).unwrap(),
            label(2, &[1])
        );
        assert_eq!(
            inflate_label(&label(2, &[1]), 2, false).unwrap(),
            label(4, &[3])
        );
    }

    #[test]
    fn deflate_inflate_round_trip_exhaustive() {
        for l in 2..=10u32 {
            for a in 1..l {
                let lbar = l - a;
                for bits in 0..(1u64 << lbar) {
                    let xbar = DadeLabel::from_bits(shape(lbar), bits).unwrap();
                    for flag in [false, true] {
                        let x = inflate_label(&xbar, a, flag).unwrap();
                        let back = deflate_label(&x, a).unwrap();
                        let expected = DadeLabel::from_bits(shape(lbar), bits & !1).unwrap();
                        assert_eq!(back, expected);
                        assert_eq!(x.contains(a), xbar.contains(0) ^ flag);
                    }
                }
            }
        }
    }

    #[test]
    fn rendering() {
        assert_eq!(render_label(&label(2, &[])), "k");
        assert_eq!(render_label(&label(2, &[1])), "Ω_{D/D_1}(k)");
        assert_eq!(render_label(&label(2, &[0, 1])), "Ω_{D/D_0} ∘ Ω_{D/D_1}(k)");
        assert_eq!(label(3, &[0, 2]).to_string(), "Ω_{D/D_0} ∘ Ω_{D/D_2}(k)");
    }

    #[test]
    fn json_round_trip() {
        let x = label(2, &[1]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"p":7,"l":2,"A":[1]}"#);
        assert_eq!(serde_json::from_str::<DadeLabel>(&s).unwrap(), x);
        assert!(serde_json::from_str::<DadeLabel>(r#"{"p":7,"l":2,"A":[2]}"#).is_err());
        assert!(serde_json::from_str::<DadeLabel>(r#"{"p":4,"l":2,"A":[]}"#).is_err());
    }

    fn arb_label(l: u32) -> impl Strategy<Value = DadeLabel> {
        let mask = if l == 64 { u64::MAX } else { (1u64 << l) - 1 };
        any::<u64>().prop_map(move |b| DadeLabel::from_bits(shape(l), b & mask).unwrap())
    }

    proptest! {
        #[test]
        fn omega_is_a_homomorphism((x, y) in (1u32..=64).prop_flat_map(|l| (arb_label(l), arb_label(l)))) {
            let sum = add_labels(&x, &y).unwrap();
            prop_assert_eq!(omega_lambda(&sum), omega_lambda(&x).product(&omega_lambda(&y)));
            prop_assert_eq!(invert_omega(&omega_lambda(&x), x.shape()).unwrap(), x);
        }

        #[test]
        fn omega_matches_prefix_oracle(x in (1u32..=20).prop_flat_map(arb_label)) {
            let indices = x.indices();
            let v = omega_lambda(&x);
            prop_assert_eq!(v.entries(), &prefix_sum_oracle(x.shape().l(), &indices)[..]);
        }

        #[test]
        fn addition_is_elementary_abelian(
            (x, y, z) in (1u32..=64).prop_flat_map(|l| (arb_label(l), arb_label(l), arb_label(l)))
        ) {
            let xy = add_labels(&x, &y).unwrap();
            prop_assert_eq!(xy, add_labels(&y, &x).unwrap());
            prop_assert_eq!(
                add_labels(&xy, &z).unwrap(),
                add_labels(&x, &add_labels(&y, &z).unwrap()).unwrap()
            );
            prop_assert!(add_labels(&x, &x).unwrap().is_trivial());
            prop_assert_eq!(add_labels(&x, &DadeLabel::trivial(x.shape())).unwrap(), x);
        }

        #[test]
        fn signs_round_trip(v in proptest::collection::vec(prop_oneof![Just(1i64), Just(-1i64)], 1..=64)) {
            let sign = SignVector::new(&v).unwrap();
            let s = CyclicPGroupShape::new(3, v.len() as u32).unwrap();
            prop_assert_eq!(omega_lambda(&invert_omega(&sign, s).unwrap()), sign);
        }
    }
}
