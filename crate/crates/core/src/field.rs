//! Finite fields GF(p^e) with p^e <= 2^16.
//!
//! Elements are encoded as integers in `0..q`: the base-p digits of the
//! encoding are the coefficients of the residue polynomial in the generator
//! `t`, lowest degree first. For `e = 1` this is the usual residue mod p.
//! Multiplication goes through exp/log tables over a primitive element.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Scalar = u32;

const MAX_ORDER: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    /// Monic modulus, coefficients lowest degree first (length `e + 1`).
    /// Present iff `e > 1`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub modulus: Option<Vec<u32>>,
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self> {
        Self::extension(p, 1, None)
    }

    /// GF(p^e). Without an explicit modulus the smallest monic irreducible
    /// polynomial of degree `e` (in encoding order) is used.
    pub fn extension(p: u32, e: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::BadField(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::BadField("extension degree must be at least 1".into()));
        }
        let q = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if q > MAX_ORDER {
            return Err(Error::BadField(format!("GF({p}^{e}) exceeds 2^16 elements")));
        }
        if e == 1 {
            if modulus.is_some() {
                return Err(Error::BadField("prime fields take no modulus".into()));
            }
            return Ok(FieldSpec { p, e, modulus: None });
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1 || m[e as usize] != 1 {
                    return Err(Error::BadField(format!(
                        "modulus must be monic of degree {e}"
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::BadField("modulus coefficient out of range".into()));
                }
                if !is_irreducible(p, &m) {
                    return Err(Error::BadField(format!(
                        "modulus {} is reducible over GF({p})",
                        format_poly(&m, "x")
                    )));
                }
                m
            }
            None => default_modulus(p, e),
        };
        Ok(FieldSpec {
            p,
            e,
            modulus: Some(modulus),
        })
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.e)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.modulus {
            None => write!(f, "GF({})", self.p),
            Some(m) => write!(f, "GF({}^{}, {})", self.p, self.e, format_poly(m, "t")),
        }
    }
}

struct Tables {
    spec: FieldSpec,
    q: u32,
    /// exp[i] = g^i for i in 0..2(q-1), doubled so products skip a reduction.
    exp: Vec<u32>,
    /// log[x] for x != 0.
    log: Vec<u32>,
}

/// An instantiated field. Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.spec)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(spec: FieldSpec) -> Field {
        let q = spec.order();
        let n = q - 1;
        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![0u32; q as usize];
        let raw_mul = |a: u32, b: u32| poly_mul_mod(&spec, a, b);
        let g = find_primitive(&spec, raw_mul);
        let mut x = 1u32;
        for i in 0..n {
            exp[i as usize] = x;
            exp[(i + n) as usize] = x;
            log[x as usize] = i;
            x = raw_mul(x, g);
        }
        Field(Arc::new(Tables { spec, q, exp, log }))
    }

    pub fn prime(p: u32) -> Result<Field> {
        Ok(Field::new(FieldSpec::prime(p)?))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn characteristic(&self) -> u32 {
        self.0.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.0.spec.e
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.spec.e == 1
    }

    #[inline]
    pub fn zero(&self) -> Scalar {
        0
    }

    #[inline]
    pub fn one(&self) -> Scalar {
        1
    }

    /// The class of the generator `t` (equals `p`); only meaningful for e > 1.
    pub fn generator(&self) -> Scalar {
        if self.0.spec.e == 1 {
            1
        } else {
            self.0.spec.p
        }
    }

    /// Integer reduced into the prime subfield.
    pub fn from_int(&self, v: i64) -> Scalar {
        v.rem_euclid(self.0.spec.p as i64) as Scalar
    }

    /// Polynomial in `t` (coefficients lowest degree first) reduced modulo the modulus.
    pub fn from_poly(&self, coeffs: &[i64]) -> Scalar {
        let t = self.generator();
        let mut acc = 0;
        for &c in coeffs.iter().rev() {
            acc = self.add(self.mul(acc, t), self.from_int(c));
        }
        acc
    }

    #[inline]
    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        let t = &*self.0;
        let p = t.spec.p;
        if p == 2 {
            return a ^ b;
        }
        if t.spec.e == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: Scalar) -> Scalar {
        let t = &*self.0;
        let p = t.spec.p;
        if p == 2 {
            return a;
        }
        if t.spec.e == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &*self.0;
        if t.spec.p == 2 && t.spec.e == 1 {
            return 1;
        }
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: Scalar) -> Scalar {
        assert!(a != 0, "inverse of zero");
        let t = &*self.0;
        let n = t.q - 1;
        t.exp[((n - t.log[a as usize]) % n) as usize]
    }

    pub fn div(&self, a: Scalar, b: Scalar) -> Scalar {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Scalar, k: u64) -> Scalar {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let t = &*self.0;
        let n = (t.q - 1) as u64;
        t.exp[((t.log[a as usize] as u64 * (k % n)) % n) as usize]
    }

    /// x ↦ x^(p^n).
    pub fn frobenius(&self, a: Scalar, n: u32) -> Scalar {
        let e = self.degree();
        if e == 1 {
            return a;
        }
        let mut x = a;
        for _ in 0..(n % e) {
            x = self.pow(x, self.characteristic() as u64);
        }
        x
    }

    /// Inverse of `frobenius(·, n)`: the unique y with y^(p^n) = a.
    pub fn frobenius_inv(&self, a: Scalar, n: u32) -> Scalar {
        let e = self.degree();
        self.frobenius(a, (e - n % e) % e)
    }

    /// Iterator over every field element.
    pub fn elements(&self) -> impl Iterator<Item = Scalar> {
        0..self.0.q
    }

    /// Human-readable rendering (integer for prime fields, polynomial in t otherwise).
    pub fn format(&self, a: Scalar) -> String {
        if self.is_prime_field() {
            return a.to_string();
        }
        let p = self.characteristic();
        let mut digits = Vec::new();
        let mut x = a;
        while x > 0 {
            digits.push(x % p);
            x /= p;
        }
        if digits.is_empty() {
            return "0".into();
        }
        format!("({})", format_poly(&digits, "t"))
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn format_poly(coeffs: &[u32], var: &str) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        parts.push(match (c, mono.is_empty()) {
            (_, true) => c.to_string(),
            (1, false) => mono,
            (_, false) => format!("{c}*{mono}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

// Plain polynomial arithmetic over GF(p), coefficients lowest degree first.

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(p: u32, a: &[u32], m: &[u32]) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let dr = r.len() - 1;
        let c = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &mc) in m.iter().enumerate() {
            let idx = dr - dm + i;
            r[idx] = ((r[idx] as u64 + (p - c) as u64 * mc as u64) % p as u64) as u32;
        }
        r = trim(r);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut k = p - 2;
    while k > 0 {
        if k & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        k >>= 1;
    }
    r as u32
}

fn digits(mut x: u32, p: u32, len: usize) -> Vec<u32> {
    let mut d = vec![0; len];
    for slot in d.iter_mut() {
        *slot = x % p;
        x /= p;
    }
    d
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn poly_mul_mod(spec: &FieldSpec, a: u32, b: u32) -> u32 {
    let p = spec.p;
    match &spec.modulus {
        None => ((a as u64 * b as u64) % p as u64) as u32,
        Some(m) => {
            let e = spec.e as usize;
            let da = digits(a, p, e);
            let db = digits(b, p, e);
            let mut prod = vec![0u32; 2 * e];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
                }
            }
            let mut r = poly_rem(p, &prod, m);
            r.resize(e, 0);
            undigits(&r, p)
        }
    }
}

fn is_irreducible(p: u32, m: &[u32]) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut f = digits(low as u32, p, d);
            f.push(1);
            if poly_rem(p, m, &f).is_empty() {
                return false;
            }
        }
    }
    true
}

fn default_modulus(p: u32, e: u32) -> Vec<u32> {
    let count = p.pow(e);
    for low in 0..count {
        let mut m = digits(low, p, e as usize);
        m.push(1);
        if is_irreducible(p, &m) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn find_primitive(spec: &FieldSpec, mul: impl Fn(u32, u32) -> u32) -> u32 {
    let q = spec.order();
    let n = q - 1;
    if n == 1 {
        return 1;
    }
    let mut factors = Vec::new();
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    let pow = |mut b: u32, mut k: u32| {
        let mut r = 1;
        while k > 0 {
            if k & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            k >>= 1;
        }
        r
    };
    (2..q)
        .find(|&g| factors.iter().all(|&f| pow(g, n / f) != 1))
        .expect("multiplicative group of a finite field is cyclic")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> Field {
        Field::new(FieldSpec::extension(2, 2, None).unwrap())
    }

    #[test]
    fn rejects_composite_and_oversized() {
        assert!(matches!(FieldSpec::prime(4), Err(Error::BadField(_))));
        assert!(matches!(FieldSpec::prime(1), Err(Error::BadField(_))));
        assert!(matches!(
            FieldSpec::extension(2, 17, None),
            Err(Error::BadField(_))
        ));
        assert!(FieldSpec::extension(2, 16, None).is_ok());
    }

    #[test]
    fn rejects_reducible_modulus() {
        // x^2 + 1 = (x + 1)^2 over GF(2)
        let err = FieldSpec::extension(2, 2, Some(vec![1, 0, 1])).unwrap_err();
        assert!(matches!(err, Error::BadField(_)));
        assert!(FieldSpec::extension(2, 2, Some(vec![1, 1, 1])).is_ok());
    }

    #[test]
    fn default_gf4_modulus() {
        let spec = FieldSpec::extension(2, 2, None).unwrap();
        assert_eq!(spec.modulus, Some(vec![1, 1, 1]));
        let f = Field::new(spec);
        let t = f.generator();
        // t^2 = t + 1
        assert_eq!(f.mul(t, t), f.add(t, 1));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.add(3, 4), 2);
        assert_eq!(f.mul(3, 4), 2);
        assert_eq!(f.neg(2), 3);
        for a in 1..5 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert_eq!(f.from_int(-1), 4);
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for spec in [
            FieldSpec::prime(2).unwrap(),
            FieldSpec::prime(3).unwrap(),
            FieldSpec::prime(7).unwrap(),
            FieldSpec::extension(2, 3, None).unwrap(),
            FieldSpec::extension(3, 2, None).unwrap(),
        ] {
            let f = Field::new(spec);
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_bijective_and_inverts() {
        let f = Field::new(FieldSpec::extension(3, 3, None).unwrap());
        let mut seen = vec![false; f.order() as usize];
        for a in f.elements() {
            let b = f.frobenius(a, 1);
            seen[b as usize] = true;
            for n in 0..5 {
                assert_eq!(f.frobenius_inv(f.frobenius(a, n), n), a);
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn gf4_frobenius_of_generator() {
        let f = gf4();
        let t = f.generator();
        assert_eq!(f.frobenius(t, 1), f.add(t, 1));
        assert_eq!(f.frobenius_inv(t, 1), f.add(t, 1));
    }
}
