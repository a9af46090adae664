//! Exact arithmetic in the cyclotomic fields Q(zeta_N).
//!
//! Every scalar in the crate is a [`Cyc`]: a residue class modulo the N-th
//! cyclotomic polynomial Phi_N, stored in the power basis 1, zeta, zeta^2, ...
//! with rational coefficients. All operations reduce fully, so equality is
//! coefficient-wise equality and there is no floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycError {
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(u64, u64),
    #[error("division by zero in Q(zeta_{0})")]
    DivisionByZero(u64),
    #[error("target order {target} is not a multiple of {base}")]
    NotAMultiple { base: u64, target: u64 },
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn lcm(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

// ---- dense rational polynomials, little-endian coefficients ----

fn poly_trim(p: &mut Vec<BigRational>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if !cb.is_zero() {
                out[i + j] += ca * cb;
            }
        }
    }
    poly_trim(&mut out);
    out
}

/// Division with remainder: returns (quotient, remainder). `b` must be nonzero.
fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem: Vec<BigRational> = a.to_vec();
    poly_trim(&mut rem);
    let db = b.len() - 1;
    let lead = &b[db];
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let c = &rem[dr] / lead;
        quot[dr - db] = c.clone();
        for i in 0..=db {
            let t = &b[i] * &c;
            rem[dr - db + i] -= t;
        }
        poly_trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    poly_trim(&mut quot);
    (quot, rem)
}

/// Extended Euclid over Q[x]: returns (g, s, t) with s*a + t*b = g, g monic gcd.
fn poly_xgcd(
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>, Vec<BigRational>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    let mut s0 = vec![BigRational::one()];
    let mut s1: Vec<BigRational> = Vec::new();
    let mut t0: Vec<BigRational> = Vec::new();
    let mut t1 = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        let t = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    // normalize to monic gcd
    if let Some(lead) = r0.last().cloned() {
        for c in r0.iter_mut().chain(s0.iter_mut()).chain(t0.iter_mut()) {
            *c = &*c / &lead;
        }
    }
    (r0, s0, t0)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), BigRational::zero());
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    poly_trim(&mut out);
    out
}

/// Phi_N via the recursive division x^N - 1 = prod_{d | N} Phi_d.
fn cyclotomic_poly_uncached(n: u64) -> Vec<BigRational> {
    // x^n - 1
    let mut num = vec![BigRational::zero(); n as usize + 1];
    num[0] = -BigRational::one();
    num[n as usize] = BigRational::one();
    let mut den = vec![BigRational::one()];
    for d in 1..n {
        if n % d == 0 {
            den = poly_mul(&den, &cyclotomic_poly(d));
        }
    }
    let (q, r) = poly_divmod(&num, &den);
    debug_assert!(r.is_empty(), "Phi_{n} division left a remainder");
    q
}

/// Phi_N, cached per process. Coefficients are integers but stored rational.
pub fn cyclotomic_poly(n: u64) -> Vec<BigRational> {
    static CACHE: OnceLock<Mutex<BTreeMap<u64, Vec<BigRational>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let p = cyclotomic_poly_uncached(n);
    cache.lock().unwrap().insert(n, p.clone());
    p
}

/// An element of Q(zeta_N), fully reduced modulo Phi_N.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyc {
    order: u64,
    /// Length is exactly euler_phi(order).
    coeffs: Vec<BigRational>,
}

impl Cyc {
    fn reduced(order: u64, mut poly: Vec<BigRational>) -> Cyc {
        let deg = euler_phi(order) as usize;
        if poly.len() > deg {
            let phi = cyclotomic_poly(order);
            let (_, r) = poly_divmod(&poly, &phi);
            poly = r;
        }
        poly.resize(deg, BigRational::zero());
        Cyc { order, coeffs: poly }
    }

    pub fn zero(order: u64) -> Cyc {
        assert!(order >= 1);
        Cyc {
            order,
            coeffs: vec![BigRational::zero(); euler_phi(order) as usize],
        }
    }

    pub fn one(order: u64) -> Cyc {
        let mut c = Cyc::zero(order);
        c.coeffs[0] = BigRational::one();
        c
    }

    pub fn from_rational(order: u64, q: BigRational) -> Cyc {
        let mut c = Cyc::zero(order);
        c.coeffs[0] = q;
        c
    }

    pub fn from_integer(order: u64, n: i64) -> Cyc {
        Cyc::from_rational(order, BigRational::from_integer(BigInt::from(n)))
    }

    /// The class of zeta_N^k, with k taken modulo N.
    pub fn root_of_unity(order: u64, k: i64) -> Result<Cyc, CycError> {
        if order == 0 {
            return Err(CycError::ZeroOrder);
        }
        let k = k.rem_euclid(order as i64) as usize;
        let mut poly = vec![BigRational::zero(); k + 1];
        poly[k] = BigRational::one();
        Ok(Cyc::reduced(order, poly))
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    fn check_order(&self, other: &Cyc) -> Result<(), CycError> {
        if self.order != other.order {
            Err(CycError::OrderMismatch(self.order, other.order))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Cyc) -> Result<Cyc, CycError> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Cyc {
            order: self.order,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Cyc) -> Result<Cyc, CycError> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Cyc {
            order: self.order,
            coeffs,
        })
    }

    pub fn neg(&self) -> Cyc {
        Cyc {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Cyc) -> Result<Cyc, CycError> {
        self.check_order(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Cyc::zero(self.order));
        }
        if self.is_one() {
            return Ok(other.clone());
        }
        if other.is_one() {
            return Ok(self.clone());
        }
        Ok(Cyc::reduced(self.order, poly_mul(&self.coeffs, &other.coeffs)))
    }

    /// Multiplicative inverse via extended Euclid against Phi_N.
    pub fn inv(&self) -> Result<Cyc, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero(self.order));
        }
        let phi = cyclotomic_poly(self.order);
        let mut a = self.coeffs.clone();
        poly_trim(&mut a);
        let (g, s, _) = poly_xgcd(&a, &phi);
        // Phi_N is irreducible over Q, so gcd(a, Phi_N) = 1 for nonzero a.
        debug_assert!(g.len() == 1 && g[0].is_one());
        Ok(Cyc::reduced(self.order, s))
    }

    pub fn div(&self, other: &Cyc) -> Result<Cyc, CycError> {
        self.mul(&other.inv()?)
    }

    /// Image under zeta_N -> zeta_M^{M/N}; M must be a multiple of the order.
    pub fn embed(&self, target: u64) -> Result<Cyc, CycError> {
        if target == 0 {
            return Err(CycError::ZeroOrder);
        }
        if target == self.order {
            return Ok(self.clone());
        }
        if target % self.order != 0 {
            return Err(CycError::NotAMultiple {
                base: self.order,
                target,
            });
        }
        let step = (target / self.order) as usize;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Ok(Cyc::reduced(target, poly))
    }

    /// Both arguments embedded into Q(zeta_lcm).
    pub fn unify(a: &Cyc, b: &Cyc) -> Result<(Cyc, Cyc), CycError> {
        let m = lcm(a.order, b.order);
        Ok((a.embed(m)?, b.embed(m)?))
    }
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "z{}^{}", self.order, i)?;
            } else {
                write!(f, "{c}*z{}^{}", self.order, i)?;
            }
        }
        Ok(())
    }
}

// ---- JSON encoding ----
//
// `{"order": N, "num": [...], "den": [...]}` with parallel integer arrays,
// or the shorthand `{"root": [N, k]}` for zeta_N^k.

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CycJson {
    Root {
        root: (u64, i64),
    },
    Full {
        order: u64,
        num: Vec<serde_json::Value>,
        den: Vec<serde_json::Value>,
    },
}

// Integers are emitted as JSON numbers when they fit in i64 and as decimal
// strings otherwise; both forms are accepted on input.
fn bigint_to_json(n: &BigInt) -> serde_json::Value {
    match i64::try_from(n.clone()) {
        Ok(v) => serde_json::json!(v),
        Err(_) => serde_json::json!(n.to_string()),
    }
}

fn bigint_from_json(v: &serde_json::Value) -> Option<BigInt> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

impl Serialize for Cyc {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        // prefer the root shorthand when the value is exactly a power of zeta
        for k in 0..self.order {
            let r = Cyc::root_of_unity(self.order, k as i64).expect("positive order");
            if r == *self {
                return CycJson::Root {
                    root: (self.order, k as i64),
                }
                .serialize(serializer);
            }
        }
        CycJson::Full {
            order: self.order,
            num: self.coeffs.iter().map(|c| bigint_to_json(c.numer())).collect(),
            den: self.coeffs.iter().map(|c| bigint_to_json(c.denom())).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cyc {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Cyc, D::Error> {
        use serde::de::Error;
        match CycJson::deserialize(deserializer)? {
            CycJson::Root { root: (n, k) } => {
                Cyc::root_of_unity(n, k).map_err(|e| D::Error::custom(e.to_string()))
            }
            CycJson::Full { order, num, den } => {
                if order == 0 {
                    return Err(D::Error::custom("cyclotomic order must be positive"));
                }
                let deg = euler_phi(order) as usize;
                if num.len() != deg || den.len() != deg {
                    return Err(D::Error::custom(format!(
                        "expected {deg} coefficients for order {order}"
                    )));
                }
                let mut coeffs = Vec::with_capacity(deg);
                for (n, d) in num.iter().zip(&den) {
                    let n = bigint_from_json(n).ok_or_else(|| D::Error::custom("bad numerator"))?;
                    let d =
                        bigint_from_json(d).ok_or_else(|| D::Error::custom("bad denominator"))?;
                    if d.is_zero() {
                        return Err(D::Error::custom("zero denominator"));
                    }
                    coeffs.push(BigRational::new(n, d));
                }
                Ok(Cyc { order, coeffs })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: i64) -> Cyc {
        Cyc::root_of_unity(n, k).unwrap()
    }

    // deterministic pseudo-random scalars for the field-axiom checks
    fn splitmix(state: &mut u64) -> u64 {
        *state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut x = *state;
        x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
        x ^ (x >> 31)
    }

    fn random_cyc(order: u64, state: &mut u64) -> Cyc {
        let deg = euler_phi(order);
        let mut acc = Cyc::zero(order);
        for i in 0..deg {
            let c = (splitmix(state) % 11) as i64 - 5;
            let term = z(order, i as i64)
                .mul(&Cyc::from_integer(order, c))
                .unwrap();
            acc = acc.add(&term).unwrap();
        }
        acc
    }

    #[test]
    fn roots_of_unity_basics() {
        assert!(z(1, 0).is_one());
        assert_eq!(z(4, 2), Cyc::from_integer(4, -1));
        // 1 + zeta_3 + zeta_3^2 = 0, so zeta_3 + zeta_3^2 = -1
        assert_eq!(z(3, 1).add(&z(3, 2)).unwrap(), Cyc::from_integer(3, -1));
        assert_eq!(Cyc::root_of_unity(0, 1), Err(CycError::ZeroOrder));
    }

    #[test]
    fn mul_and_reduction() {
        assert_eq!(z(4, 1).mul(&z(4, 1)).unwrap(), Cyc::from_integer(4, -1));
        // zeta_6^3 reduced mod Phi_6 = x^2 - x + 1; frozen via polynomial
        // division by hand: x^3 = (x+1)(x^2-x+1) - 1
        let z6cubed = z(6, 1).mul(&z(6, 1)).unwrap().mul(&z(6, 1)).unwrap();
        assert_eq!(z6cubed, Cyc::from_integer(6, -1));
    }

    #[test]
    fn additive_inverse() {
        let mut state = 7u64;
        for n in [1u64, 2, 3, 4, 6, 8, 12] {
            for _ in 0..5 {
                let x = random_cyc(n, &mut state);
                assert!(x.add(&x.neg()).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn inverses() {
        for n in [3u64, 4, 6, 8, 12] {
            for k in 0..n {
                let a = z(n, k as i64);
                assert_eq!(a.inv().unwrap(), z(n, (n - k) as i64));
                assert!(a.mul(&a.inv().unwrap()).unwrap().is_one());
            }
        }
        // (1 + zeta_3)(-zeta_3) = 1
        let a = Cyc::one(3).add(&z(3, 1)).unwrap();
        assert_eq!(a.inv().unwrap(), z(3, 1).neg());
        // (2 + i)^{-1} = (2 - i)/5, confirmed against the extended-Euclid path
        let a = Cyc::from_integer(4, 2).add(&z(4, 1)).unwrap();
        let expected = Cyc::from_integer(4, 2)
            .sub(&z(4, 1))
            .unwrap()
            .mul(&Cyc::from_rational(
                4,
                BigRational::new(BigInt::from(1), BigInt::from(5)),
            ))
            .unwrap();
        assert_eq!(a.inv().unwrap(), expected);
        assert!(Cyc::zero(4).inv().is_err());
    }

    #[test]
    fn field_axioms_random_samples() {
        let mut state = 42u64;
        for n in [2u64, 3, 4, 6, 8, 12] {
            for _ in 0..8 {
                let a = random_cyc(n, &mut state);
                let b = random_cyc(n, &mut state);
                let c = random_cyc(n, &mut state);
                // associativity and commutativity
                assert_eq!(
                    a.mul(&b).unwrap().mul(&c).unwrap(),
                    a.mul(&b.mul(&c).unwrap()).unwrap()
                );
                assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
                assert_eq!(
                    a.add(&b).unwrap().add(&c).unwrap(),
                    a.add(&b.add(&c).unwrap()).unwrap()
                );
                // distributivity
                assert_eq!(
                    a.mul(&b.add(&c).unwrap()).unwrap(),
                    a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
                );
                // inverses
                if !a.is_zero() {
                    assert!(a.mul(&a.inv().unwrap()).unwrap().is_one());
                }
            }
        }
    }

    #[test]
    fn zeta_n_to_the_n_is_one_and_phi_vanishes() {
        for n in [1u64, 2, 3, 4, 6, 8, 12] {
            let zeta = z(n, 1);
            let mut pow = Cyc::one(n);
            for _ in 0..n {
                pow = pow.mul(&zeta).unwrap();
            }
            assert!(pow.is_one(), "zeta_{n}^{n} != 1");
            // evaluate Phi_n at zeta_n by Horner
            let phi = cyclotomic_poly(n);
            let mut acc = Cyc::zero(n);
            for c in phi.iter().rev() {
                acc = acc
                    .mul(&zeta)
                    .unwrap()
                    .add(&Cyc::from_rational(n, c.clone()))
                    .unwrap();
            }
            assert!(acc.is_zero(), "Phi_{n}(zeta_{n}) != 0");
        }
    }

    #[test]
    fn embed_is_ring_map() {
        assert_eq!(z(2, 1).embed(4).unwrap(), z(4, 2));
        for m in [2u64, 4, 6, 12] {
            assert!(Cyc::one(1).embed(m).unwrap().is_one());
        }
        assert!(z(3, 1).embed(4).is_err());
        let mut state = 3u64;
        for _ in 0..10 {
            let a = random_cyc(4, &mut state);
            let b = random_cyc(4, &mut state);
            assert_eq!(
                a.mul(&b).unwrap().embed(12).unwrap(),
                a.embed(12).unwrap().mul(&b.embed(12).unwrap()).unwrap()
            );
            assert_eq!(
                a.add(&b).unwrap().embed(12).unwrap(),
                a.embed(12).unwrap().add(&b.embed(12).unwrap()).unwrap()
            );
            // injectivity: embed(a) = embed(b) iff a = b
            assert_eq!(a.embed(12).unwrap() == b.embed(12).unwrap(), a == b);
        }
    }

    #[test]
    fn order_mismatch_rejected() {
        assert!(z(3, 1).add(&z(4, 1)).is_err());
        assert!(z(3, 1).mul(&z(4, 1)).is_err());
        let (a, b) = Cyc::unify(&z(3, 1), &z(4, 1)).unwrap();
        assert_eq!(a.order(), 12);
        assert_eq!(b.order(), 12);
    }

    #[test]
    fn json_roundtrip() {
        let vals = [
            z(4, 1),
            z(12, 7),
            Cyc::from_rational(3, BigRational::new(BigInt::from(-2), BigInt::from(3)))
                .add(&z(3, 1))
                .unwrap(),
        ];
        for v in &vals {
            let s = serde_json::to_string(v).unwrap();
            let back: Cyc = serde_json::from_str(&s).unwrap();
            assert_eq!(&back, v);
        }
        let shorthand: Cyc = serde_json::from_str(r#"{"root":[4,3]}"#).unwrap();
        assert_eq!(shorthand, z(4, 3));
    }
}
