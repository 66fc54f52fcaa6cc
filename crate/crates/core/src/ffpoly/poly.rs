use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::field::GaloisField;
use crate::error::{Error, Result};

/// A monic polynomial over a [`GaloisField`], coefficients stored from the
/// constant term upwards (the last entry is always `1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonicPoly {
    coeffs: Vec<u32>,
}

impl MonicPoly {
    pub fn new(field: &GaloisField, coeffs: Vec<u32>) -> Result<MonicPoly> {
        if coeffs.len() < 2 {
            return Err(Error::Degenerate(
                "a monic polynomial needs degree at least 1".into(),
            ));
        }
        if coeffs.last() != Some(&1) {
            return Err(Error::Degenerate("leading coefficient is not one".into()));
        }
        if let Some(bad) = coeffs.iter().find(|&&c| c >= field.order()) {
            return Err(Error::InconsistentField(format!(
                "coefficient {bad} is not an element of F_{}",
                field.order()
            )));
        }
        Ok(MonicPoly { coeffs })
    }

    pub(crate) fn from_coeffs_unchecked(coeffs: Vec<u32>) -> MonicPoly {
        debug_assert_eq!(coeffs.last(), Some(&1));
        MonicPoly { coeffs }
    }

    /// `x - root`.
    pub fn linear(field: &GaloisField, root: u32) -> MonicPoly {
        MonicPoly {
            coeffs: vec![field.neg(root), 1],
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> u32 {
        self.coeffs[0]
    }

    pub fn eval(&self, field: &GaloisField, x: u32) -> u32 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| field.add(field.mul(acc, x), c))
    }

    /// The `index`-th monic polynomial of the given degree in lexicographic
    /// order of `(c_{d-1}, ..., c_0)`.
    pub fn from_index(field: &GaloisField, degree: usize, mut index: u64) -> MonicPoly {
        let q = field.order() as u64;
        let mut coeffs = vec![0u32; degree + 1];
        for c in coeffs.iter_mut().take(degree) {
            *c = (index % q) as u32;
            index /= q;
        }
        coeffs[degree] = 1;
        MonicPoly { coeffs }
    }

    /// Human-readable form; extension-field coefficients are written as
    /// powers of the table generator `g`.
    pub fn render(&self, field: &GaloisField) -> String {
        let coeff = |c: u32| -> String {
            if field.degree() == 1 || c <= 1 {
                c.to_string()
            } else {
                format!("g^{}", field.log(c).expect("non-zero"))
            }
        };
        let mut out = String::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push_str(" + ");
            }
            match (i, c) {
                (0, _) => out.push_str(&coeff(c)),
                (_, 1) => {}
                _ => {
                    let _ = write!(out, "{}*", coeff(c));
                }
            }
            match i {
                0 => {}
                1 => out.push('x'),
                _ => {
                    let _ = write!(out, "x^{i}");
                }
            }
        }
        out
    }
}

pub(crate) fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

pub(crate) fn poly_mul(field: &GaloisField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    trim(out)
}

pub(crate) fn poly_sub(field: &GaloisField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| field.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(out)
}

/// Remainder of `a` modulo a polynomial with non-zero leading coefficient.
pub(crate) fn poly_rem(field: &GaloisField, a: &[u32], m: &[u32]) -> Vec<u32> {
    let dm = m.len() - 1;
    let lead_inv = field.inv(m[dm]).expect("non-zero leading coefficient");
    let mut rem = trim(a.to_vec());
    while rem.len() > dm && !(rem.len() == 1 && rem[0] == 0) {
        let c = field.mul(*rem.last().unwrap(), lead_inv);
        let shift = rem.len() - 1 - dm;
        for (i, &mi) in m.iter().enumerate() {
            rem[shift + i] = field.sub(rem[shift + i], field.mul(c, mi));
        }
        rem.pop();
        rem = trim(rem);
        if dm == 0 {
            return vec![0];
        }
    }
    rem
}

pub(crate) fn poly_gcd(field: &GaloisField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !(y.len() == 1 && y[0] == 0) {
        let r = poly_rem(field, &x, &y);
        x = y;
        y = r;
    }
    let lead_inv = field.inv(*x.last().unwrap()).unwrap_or(1);
    x.iter().map(|&c| field.mul(c, lead_inv)).collect()
}

pub(crate) fn poly_powmod(field: &GaloisField, base: &[u32], mut e: u64, m: &[u32]) -> Vec<u32> {
    let mut result = poly_rem(field, &[1], m);
    let mut b = poly_rem(field, base, m);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_rem(field, &poly_mul(field, &result, &b), m);
        }
        b = poly_rem(field, &poly_mul(field, &b, &b), m);
        e >>= 1;
    }
    result
}

/// Irreducibility by the repeated-Frobenius test: `f` of degree `n` is
/// irreducible iff `gcd(x^{Q^i} - x, f) = 1` for `1 ≤ i ≤ n/2`.
pub fn is_irreducible(field: &GaloisField, f: &MonicPoly) -> bool {
    let n = f.degree();
    if n == 1 {
        return true;
    }
    let m = f.coeffs();
    let x = vec![0u32, 1];
    let mut h = x.clone();
    for _ in 1..=n / 2 {
        h = poly_powmod(field, &h, field.order() as u64, m);
        let g = poly_gcd(field, &poly_sub(field, &h, &x), m);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

pub(crate) const MAX_RESIDUE_DEGREE: usize = 8;

/// Fixed-capacity arithmetic in `F_Q[x]/(f)` for `deg f ≤ 8`; used by the
/// enumeration sweeps, which evaluate millions of small residues.
pub(crate) struct ResidueRing<'a> {
    field: &'a GaloisField,
    modulus: [u32; MAX_RESIDUE_DEGREE + 1],
    degree: usize,
}

pub(crate) type Residue = [u32; MAX_RESIDUE_DEGREE];

impl<'a> ResidueRing<'a> {
    pub(crate) fn new(field: &'a GaloisField, f: &MonicPoly) -> ResidueRing<'a> {
        assert!(f.degree() <= MAX_RESIDUE_DEGREE);
        let mut modulus = [0u32; MAX_RESIDUE_DEGREE + 1];
        modulus[..f.coeffs().len()].copy_from_slice(f.coeffs());
        ResidueRing {
            field,
            modulus,
            degree: f.degree(),
        }
    }

    pub(crate) fn one(&self) -> Residue {
        let mut r = [0u32; MAX_RESIDUE_DEGREE];
        if self.degree > 0 {
            r[0] = 1;
        }
        r
    }

    pub(crate) fn x(&self) -> Residue {
        let mut r = [0u32; MAX_RESIDUE_DEGREE];
        if self.degree == 1 {
            r[0] = self.field.neg(self.modulus[0]);
        } else {
            r[1] = 1;
        }
        r
    }

    pub(crate) fn mul(&self, a: &Residue, b: &Residue) -> Residue {
        let f = self.field;
        let d = self.degree;
        let mut prod = [0u32; 2 * MAX_RESIDUE_DEGREE];
        for i in 0..d {
            if a[i] == 0 {
                continue;
            }
            for j in 0..d {
                prod[i + j] = f.add(prod[i + j], f.mul(a[i], b[j]));
            }
        }
        for top in (d..2 * d).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for i in 0..d {
                prod[top - d + i] = f.sub(prod[top - d + i], f.mul(c, self.modulus[i]));
            }
        }
        let mut out = [0u32; MAX_RESIDUE_DEGREE];
        out[..d].copy_from_slice(&prod[..d]);
        out
    }

    pub(crate) fn pow(&self, base: &Residue, mut e: u64) -> Residue {
        let mut result = self.one();
        let mut b = *base;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        result
    }
}
