use crate::error::{Error, Result};
use crate::numth::prime_power;

/// Largest field order backed by exp/log tables.
pub const MAX_FIELD_ORDER: u32 = 1 << 16;

/// A finite field `F_Q`, `Q = r^k ≤ 2^16`, with multiplication through
/// exp/log tables of a fixed primitive element.
///
/// Elements are encoded as integers in `0..Q` whose base-`r` digits are the
/// coordinates in the polynomial basis of the defining polynomial, so the
/// prime subfield is always `0..r` and `0`, `1` are zero and one.
#[derive(Debug, Clone)]
pub struct GaloisField {
    order: u32,
    characteristic: u32,
    degree: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
    neg_table: Vec<u32>,
}

const ADD_TABLE_LIMIT: u32 = 256;

impl GaloisField {
    pub fn new(order: u32) -> Result<GaloisField> {
        if !(2..=MAX_FIELD_ORDER).contains(&order) {
            return Err(Error::OutOfRange(format!(
                "field order {order} must lie in 2..={MAX_FIELD_ORDER}"
            )));
        }
        let (r, k) = prime_power(order as u64)
            .ok_or_else(|| Error::InconsistentField(format!("{order} is not a prime power")))?;
        let r = r as u32;
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            find_irreducible_over_prime(r, k)
        };
        let mul_raw = |a: u32, b: u32| raw_mul(a, b, r, &modulus);

        let group_order = order - 1;
        let (exp, log) = (1..order)
            .find_map(|g| build_tables(g, group_order, order, &mul_raw))
            .expect("a finite field has a primitive element");

        let neg_table = (0..order).map(|a| digit_neg(a, r)).collect();
        let mut field = GaloisField {
            order,
            characteristic: r,
            degree: k,
            exp,
            log,
            add_table: None,
            neg_table,
        };
        if order <= ADD_TABLE_LIMIT {
            let mut table = vec![0; (order * order) as usize];
            for a in 0..order {
                for b in 0..order {
                    table[(a * order + b) as usize] = digit_add(a, b, r);
                }
            }
            field.add_table = Some(table);
        }
        Ok(field)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn generator(&self) -> u32 {
        self.exp[1]
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.add_table {
            Some(t) => t[(a * self.order + b) as usize],
            None => digit_add(a, b, self.characteristic),
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg_table[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let l = self.log[a as usize];
        Some(self.exp[((self.order - 1 - l) % (self.order - 1)) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.order - 1) as u64;
        let l = (self.log[a as usize] as u64 * (e % n)) % n;
        self.exp[l as usize]
    }

    /// `g^i` for the table generator `g`.
    pub fn exp(&self, i: u64) -> u32 {
        self.exp[(i % (self.order - 1) as u64) as usize]
    }

    /// Discrete log to the table generator; `None` for zero.
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// Multiplicative order of a non-zero element.
    pub fn element_order(&self, a: u32) -> Option<u64> {
        let l = self.log(a)? as u64;
        let n = (self.order - 1) as u64;
        Some(n / num_integer::gcd(l, n))
    }

    /// All non-zero elements of the given multiplicative order, ascending by log.
    pub fn elements_of_order(&self, k: u64) -> Vec<u32> {
        let n = (self.order - 1) as u64;
        if k == 0 || n % k != 0 {
            return Vec::new();
        }
        let step = n / k;
        (0..k)
            .filter(|i| num_integer::gcd(*i, k) == 1 || k == 1)
            .map(|i| self.exp(i * step))
            .collect()
    }

    /// Embeds this field into `big`, returning the image of every element.
    ///
    /// The table generator `h` is sent to a root in `big` of its minimal
    /// polynomial over the prime field; `h^i` then goes to that root's `i`-th
    /// power.
    pub fn embedding_into(&self, big: &GaloisField) -> Result<Vec<u32>> {
        if self.characteristic != big.characteristic || big.degree % self.degree != 0 {
            return Err(Error::InconsistentField(format!(
                "F_{} does not embed into F_{}",
                self.order, big.order
            )));
        }
        let r = self.characteristic as u64;
        let h = self.generator();
        // Minimal polynomial of h over F_r: product of (x - h^{r^i}).
        let mut minpoly = vec![1u32];
        let mut conj = h;
        for _ in 0..self.degree {
            let mut next = vec![0u32; minpoly.len() + 1];
            for (i, &c) in minpoly.iter().enumerate() {
                next[i + 1] = self.add(next[i + 1], c);
                next[i] = self.sub(next[i], self.mul(c, conj));
            }
            minpoly = next;
            conj = self.pow(conj, r);
        }
        if minpoly.iter().any(|&c| c >= self.characteristic) {
            return Err(Error::InconsistentField(
                "minimal polynomial left the prime field".into(),
            ));
        }
        let image_of_h = (1..big.order)
            .find(|&b| {
                minpoly
                    .iter()
                    .rev()
                    .fold(0u32, |acc, &c| big.add(big.mul(acc, b), c))
                    == 0
            })
            .ok_or_else(|| Error::InconsistentField("no root of the minimal polynomial".into()))?;
        let mut map = vec![0u32; self.order as usize];
        let mut cur = 1u32;
        for i in 0..self.order - 1 {
            map[self.exp(i as u64) as usize] = cur;
            cur = big.mul(cur, image_of_h);
        }
        Ok(map)
    }
}

fn digit_neg(a: u32, r: u32) -> u32 {
    let (mut x, mut out, mut place) = (a, 0, 1);
    while x > 0 {
        out += ((r - x % r) % r) * place;
        x /= r;
        place *= r;
    }
    out
}

fn digit_add(mut a: u32, mut b: u32, r: u32) -> u32 {
    if r == 2 {
        return a ^ b;
    }
    let (mut out, mut place) = (0, 1);
    while a > 0 || b > 0 {
        out += ((a % r + b % r) % r) * place;
        a /= r;
        b /= r;
        place *= r;
    }
    out
}

fn to_digits(mut a: u32, r: u32, k: usize) -> Vec<u32> {
    let mut out = vec![0; k];
    for d in out.iter_mut() {
        *d = a % r;
        a /= r;
    }
    out
}

fn from_digits(d: &[u32], r: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * r + x)
}

/// Multiplies encoded elements modulo the monic prime-field polynomial `modulus`.
fn raw_mul(a: u32, b: u32, r: u32, modulus: &[u32]) -> u32 {
    let k = modulus.len() - 1;
    let (da, db) = (to_digits(a, r, k), to_digits(b, r, k));
    let mut prod = vec![0u32; 2 * k];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % r;
        }
    }
    for top in (k..2 * k).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        for (i, &m) in modulus.iter().enumerate().take(k) {
            let idx = top - k + i;
            prod[idx] = (prod[idx] + (r - (c * m) % r)) % r;
        }
        prod[top] = 0;
    }
    from_digits(&prod[..k], r)
}

fn build_tables(
    g: u32,
    group_order: u32,
    order: u32,
    mul: &impl Fn(u32, u32) -> u32,
) -> Option<(Vec<u32>, Vec<u32>)> {
    let mut exp = Vec::with_capacity(2 * group_order as usize);
    let mut log = vec![0u32; order as usize];
    let mut cur = 1u32;
    for i in 0..group_order {
        if i > 0 && cur == 1 {
            return None;
        }
        exp.push(cur);
        log[cur as usize] = i;
        cur = mul(cur, g);
    }
    if cur != 1 {
        return None;
    }
    let head = exp.clone();
    exp.extend(head);
    Some((exp, log))
}

/// Lexicographically first monic irreducible polynomial of degree `k` over
/// `F_r`, found by trial division by all monic polynomials of degree ≤ k/2.
fn find_irreducible_over_prime(r: u32, k: u32) -> Vec<u32> {
    let k = k as usize;
    let count = (r as u64).pow(k as u32);
    (0..count)
        .map(|t| {
            let mut coeffs = to_digits(t as u32, r, k);
            coeffs.push(1);
            coeffs
        })
        .find(|f| f[0] != 0 && (1..=k / 2).all(|d| !has_factor_of_degree(f, d, r)))
        .expect("irreducible polynomials exist in every degree")
}

fn has_factor_of_degree(f: &[u32], d: usize, r: u32) -> bool {
    let count = (r as u64).pow(d as u32);
    (0..count).any(|t| {
        let mut g = to_digits(t as u32, r, d);
        g.push(1);
        prime_rem(f, &g, r).iter().all(|&c| c == 0)
    })
}

fn prime_rem(f: &[u32], g: &[u32], r: u32) -> Vec<u32> {
    let mut rem = f.to_vec();
    let dg = g.len() - 1;
    while rem.len() > dg {
        let c = *rem.last().unwrap();
        let shift = rem.len() - 1 - dg;
        for (i, &gi) in g.iter().enumerate() {
            rem[shift + i] = (rem[shift + i] + r - (c * gi) % r) % r;
        }
        rem.pop();
    }
    rem
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = GaloisField::new(7).unwrap();
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.add(4, 5), 2);
        assert_eq!(f.neg(3), 4);
        assert_eq!(f.inv(3), Some(5));
        assert_eq!(f.inv(0), None);
        assert_eq!(f.element_order(6), Some(2));
        assert_eq!(f.element_order(1), Some(1));
    }

    #[test]
    fn extension_field_axioms() {
        for q in [4u32, 8, 9, 16, 25, 27, 49, 64, 81] {
            let f = GaloisField::new(q).unwrap();
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!(f.mul(a, 1), a);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                    assert_eq!(f.pow(a, (q - 1) as u64), 1);
                }
            }
            // Distributivity and associativity on a slice of the field.
            for a in 0..q.min(20) {
                for b in 0..q.min(20) {
                    for c in 0..q.min(20) {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, b), f.mul(b, a));
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_orders() {
        assert!(matches!(
            GaloisField::new(6),
            Err(Error::InconsistentField(_))
        ));
        assert!(matches!(GaloisField::new(1), Err(Error::OutOfRange(_))));
        assert!(matches!(
            GaloisField::new(1 << 17),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn elements_of_given_order() {
        let f = GaloisField::new(64).unwrap();
        let nine = f.elements_of_order(9);
        assert_eq!(nine.len(), 6);
        assert!(nine.iter().all(|&z| f.element_order(z) == Some(9)));
        assert!(f.elements_of_order(5).is_empty());
    }

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        for (small, big) in [(2u32, 8u32), (4, 16), (4, 64), (3, 27), (9, 81), (5, 25)] {
            let s = GaloisField::new(small).unwrap();
            let b = GaloisField::new(big).unwrap();
            let map = s.embedding_into(&b).unwrap();
            for x in 0..small {
                for y in 0..small {
                    assert_eq!(
                        map[s.add(x, y) as usize],
                        b.add(map[x as usize], map[y as usize])
                    );
                    assert_eq!(
                        map[s.mul(x, y) as usize],
                        b.mul(map[x as usize], map[y as usize])
                    );
                }
            }
        }
        let s = GaloisField::new(4).unwrap();
        assert!(s.embedding_into(&GaloisField::new(8).unwrap()).is_err());
    }
}
