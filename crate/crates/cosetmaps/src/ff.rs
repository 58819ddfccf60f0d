//! Prime-power finite fields GF(p^k) in polynomial basis.
//!
//! An element is a coefficient vector of length `k` (low degree first) taken
//! modulo a monic irreducible polynomial of degree `k` over `Z_p`. Field
//! handles are cheap to clone; every element carries a tag identifying its
//! field so that mixed-field arithmetic can be rejected by the checked entry
//! points.
//!
//! The characteristic is limited to `p < 2^16` so that products of two
//! coefficients accumulate safely in `u64` for degrees far beyond the ones
//! used here (`k = 256` is routine).

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Largest admissible characteristic (exclusive).
pub const MAX_CHAR: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is out of range (must be below 65536)")]
    CharOutOfRange(u64),
    #[error("field degree must be at least 1")]
    ZeroDegree,
    #[error("modulus has degree {found}, expected {expected}")]
    WrongDegree { expected: usize, found: usize },
    #[error("modulus is not monic")]
    NotMonic,
    #[error("coefficient {coeff} is out of range for characteristic {p}")]
    CoefficientRange { coeff: u64, p: u32 },
    #[error("modulus is reducible over GF({0})")]
    Reducible(u32),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("square classes are undefined in characteristic 2")]
    CharacteristicTwo,
    #[error("zero has no square class")]
    ZeroSquareClass,
    #[error("{p}^{k} - 1 exceeds the factorable bound 2^64")]
    UnsupportedSize { p: u32, k: usize },
}

/// An element of some [`Field`]. Only meaningful together with its field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Fe {
    tag: u32,
    c: Box<[u32]>,
}

impl Fe {
    /// Coefficients in the polynomial basis, low degree first.
    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&x| x == 0)
    }

    /// Coefficients with trailing zeros removed (the empty list is zero).
    pub fn to_vec_trimmed(&self) -> Vec<u32> {
        let mut v = self.c.to_vec();
        trim(&mut v);
        v
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.c[..])
    }
}

/// Serializable description of a field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldDesc {
    pub p: u32,
    pub k: usize,
    pub modulus: Vec<u32>,
    pub nonsquare: Option<Vec<u32>>,
    pub seed: u64,
}

struct Inner {
    p: u32,
    k: usize,
    modulus: Vec<u32>,
    /// `(p - f_j) mod p` for the low coefficients of the modulus.
    red: Vec<u64>,
    tag: u32,
    seed: u64,
    nonsquare: Option<Fe>,
    /// Row-major `k x k` matrices of `a -> a^(p^K)`, built on demand.
    frob: Vec<OnceLock<Arc<[u32]>>>,
}

/// Handle to GF(p^k). Cloning shares the underlying tables.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.k)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.modulus == other.0.modulus
    }
}
impl Eq for Field {}

/// Builds GF(p^k). Without an explicit modulus, a random monic irreducible
/// polynomial is drawn from a stream seeded by `seed`; for `k = 1` the
/// modulus is `x`.
pub fn make_field(p: u64, k: usize, modulus: Option<&[u32]>, seed: u64) -> Result<Field, FieldError> {
    if !num_prime::nt_funcs::is_prime64(p) {
        return Err(FieldError::NotPrime(p));
    }
    if p >= MAX_CHAR {
        return Err(FieldError::CharOutOfRange(p));
    }
    if k == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let p32 = p as u32;
    let modulus = match modulus {
        Some(m) => {
            if let Some(&c) = m.iter().find(|&&c| c as u64 >= p) {
                return Err(FieldError::CoefficientRange { coeff: c as u64, p: p32 });
            }
            let mut m = m.to_vec();
            trim(&mut m);
            if m.len() != k + 1 {
                return Err(FieldError::WrongDegree { expected: k, found: m.len().saturating_sub(1) });
            }
            if m[k] != 1 {
                return Err(FieldError::NotMonic);
            }
            if !is_irreducible_poly(p32, &m) {
                return Err(FieldError::Reducible(p32));
            }
            m
        }
        None if k == 1 => vec![0, 1],
        None => random_irreducible(p32, k, seed),
    };
    Ok(Field::from_modulus(p32, modulus, seed))
}

impl Field {
    fn from_modulus(p: u32, modulus: Vec<u32>, seed: u64) -> Field {
        let k = modulus.len() - 1;
        let red = modulus[..k].iter().map(|&c| ((p - c) % p) as u64).collect();
        let mut tag: u32 = 0x811c_9dc5 ^ p;
        for &c in &modulus {
            tag = (tag ^ c).wrapping_mul(0x0100_0193);
        }
        let frob = (0..k).map(|_| OnceLock::new()).collect();
        let mut f = Field(Arc::new(Inner { p, k, modulus, red, tag, seed, nonsquare: None, frob }));
        if p != 2 {
            let ns = f.find_nonsquare(seed).expect("odd characteristic");
            Arc::get_mut(&mut f.0).expect("unshared").nonsquare = Some(ns);
        }
        f
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn k(&self) -> usize {
        self.0.k
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn seed(&self) -> u64 {
        self.0.seed
    }

    /// The quadratic non-residue fixed at construction (odd characteristic).
    pub fn nonsquare(&self) -> Option<&Fe> {
        self.0.nonsquare.as_ref()
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.0.p).pow(self.0.k as u32)
    }

    /// Field order if it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        (self.0.p as u64).checked_pow(self.0.k as u32)
    }

    pub fn describe(&self) -> FieldDesc {
        FieldDesc {
            p: self.0.p,
            k: self.0.k,
            modulus: self.0.modulus.clone(),
            nonsquare: self.0.nonsquare.as_ref().map(|n| n.c.to_vec()),
            seed: self.0.seed,
        }
    }

    fn wrap(&self, c: Vec<u32>) -> Fe {
        debug_assert_eq!(c.len(), self.0.k);
        Fe { tag: self.0.tag, c: c.into_boxed_slice() }
    }

    pub fn contains(&self, a: &Fe) -> bool {
        a.tag == self.0.tag && a.c.len() == self.0.k
    }

    fn check(&self, a: &Fe) -> Result<(), FieldError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    pub fn zero(&self) -> Fe {
        self.wrap(vec![0; self.0.k])
    }

    pub fn one(&self) -> Fe {
        self.from_u64(1)
    }

    /// The constant `n mod p`.
    pub fn from_u64(&self, n: u64) -> Fe {
        let mut c = vec![0; self.0.k];
        c[0] = (n % self.0.p as u64) as u32;
        self.wrap(c)
    }

    /// The constant `n mod p` for signed `n`.
    pub fn from_i64(&self, n: i64) -> Fe {
        let p = self.0.p as i64;
        self.from_u64(n.rem_euclid(p) as u64)
    }

    /// The class of the indeterminate `x`.
    pub fn gen(&self) -> Fe {
        if self.0.k == 1 {
            // x mod (x - r) is r
            return self.from_u64(((self.0.p - self.0.modulus[0]) % self.0.p) as u64);
        }
        let mut c = vec![0; self.0.k];
        c[1] = 1;
        self.wrap(c)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fe, FieldError> {
        let mut c = coeffs.to_vec();
        trim(&mut c);
        if c.len() > self.0.k {
            return Err(FieldError::WrongDegree { expected: self.0.k - 1, found: c.len() - 1 });
        }
        if let Some(&x) = c.iter().find(|&&x| x >= self.0.p) {
            return Err(FieldError::CoefficientRange { coeff: x as u64, p: self.0.p });
        }
        c.resize(self.0.k, 0);
        Ok(self.wrap(c))
    }

    /// Element whose base-`p` digits (low first) are the coefficients.
    pub fn from_index(&self, mut n: u64) -> Fe {
        let p = self.0.p as u64;
        let c = (0..self.0.k)
            .map(|_| {
                let d = (n % p) as u32;
                n /= p;
                d
            })
            .collect();
        self.wrap(c)
    }

    /// Inverse of [`Field::from_index`]; only meaningful for small fields.
    pub fn index(&self, a: &Fe) -> u64 {
        a.c.iter().rev().fold(0u64, |acc, &d| acc * self.0.p as u64 + d as u64)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        let p = self.0.p;
        self.wrap((0..self.0.k).map(|_| rng.gen_range(0..p)).collect())
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        loop {
            let a = self.random(rng);
            if !a.is_zero() {
                return a;
            }
        }
    }

    pub fn add(&self, a: &Fe, b: &Fe) -> Fe {
        debug_assert!(self.contains(a) && self.contains(b));
        let p = self.0.p;
        self.wrap(a.c.iter().zip(b.c.iter()).map(|(&x, &y)| {
            let s = x + y;
            if s >= p { s - p } else { s }
        }).collect())
    }

    pub fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        debug_assert!(self.contains(a) && self.contains(b));
        let p = self.0.p;
        self.wrap(a.c.iter().zip(b.c.iter()).map(|(&x, &y)| if x >= y { x - y } else { x + p - y }).collect())
    }

    pub fn neg(&self, a: &Fe) -> Fe {
        let p = self.0.p;
        self.wrap(a.c.iter().map(|&x| if x == 0 { 0 } else { p - x }).collect())
    }

    pub fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        debug_assert!(self.contains(a) && self.contains(b));
        let k = self.0.k;
        let p = self.0.p as u64;
        if k == 1 {
            return self.wrap(vec![((a.c[0] as u64 * b.c[0] as u64) % p) as u32]);
        }
        let mut t = vec![0u64; 2 * k - 1];
        for (i, &ai) in a.c.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let ai = ai as u64;
            for (tj, &bj) in t[i..i + k].iter_mut().zip(b.c.iter()) {
                *tj += ai * bj as u64;
            }
        }
        let red = &self.0.red;
        for i in (k..2 * k - 1).rev() {
            let c = t[i] % p;
            if c != 0 {
                for (tj, &rj) in t[i - k..i].iter_mut().zip(red.iter()) {
                    *tj += c * rj;
                }
            }
        }
        self.wrap(t[..k].iter().map(|&x| (x % p) as u32).collect())
    }

    pub fn sqr(&self, a: &Fe) -> Fe {
        self.mul(a, a)
    }

    /// Scales by a prime-field constant.
    pub fn scale(&self, a: &Fe, s: u32) -> Fe {
        let p = self.0.p as u64;
        self.wrap(a.c.iter().map(|&x| ((x as u64 * s as u64) % p) as u32).collect())
    }

    pub fn checked_add(&self, a: &Fe, b: &Fe) -> Result<Fe, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    pub fn checked_mul(&self, a: &Fe, b: &Fe) -> Result<Fe, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn inv(&self, a: &Fe) -> Result<Fe, FieldError> {
        self.check(a)?;
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let p = self.0.p;
        if self.0.k == 1 {
            return Ok(self.wrap(vec![inv_mod(a.c[0], p)]));
        }
        let mut c = poly_inverse_mod(p, &a.to_vec_trimmed(), &self.0.modulus);
        c.resize(self.0.k, 0);
        Ok(self.wrap(c))
    }

    pub fn div(&self, a: &Fe, b: &Fe) -> Result<Fe, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Fe, n: &BigUint) -> Fe {
        let mut r = self.one();
        for i in (0..n.bits()).rev() {
            r = self.sqr(&r);
            if n.bit(i) {
                r = self.mul(&r, a);
            }
        }
        r
    }

    pub fn pow_u64(&self, a: &Fe, n: u64) -> Fe {
        let mut r = self.one();
        for i in (0..64 - n.leading_zeros()).rev() {
            r = self.sqr(&r);
            if (n >> i) & 1 == 1 {
                r = self.mul(&r, a);
            }
        }
        r
    }

    /// Signed power; zero raised to a negative exponent is an error.
    pub fn pow_i64(&self, a: &Fe, n: i64) -> Result<Fe, FieldError> {
        if n >= 0 {
            Ok(self.pow_u64(a, n as u64))
        } else {
            Ok(self.pow_u64(&self.inv(a)?, n.unsigned_abs()))
        }
    }

    /// `a^(p^K)`, the `K`-th power of the Frobenius automorphism.
    pub fn frobenius(&self, a: &Fe, kk: usize) -> Fe {
        let k = self.0.k;
        let kk = kk % k;
        if kk == 0 {
            return a.clone();
        }
        let m = self.frob_matrix(kk);
        self.wrap(self.apply_matrix(&m, &a.c))
    }

    fn apply_matrix(&self, m: &[u32], a: &[u32]) -> Vec<u32> {
        let k = self.0.k;
        let p = self.0.p as u64;
        let mut out = vec![0u64; k];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let ai = ai as u64;
            for (o, &mij) in out.iter_mut().zip(m[i * k..(i + 1) * k].iter()) {
                *o += ai * mij as u64;
            }
        }
        out.into_iter().map(|x| (x % p) as u32).collect()
    }

    fn frob_matrix(&self, kk: usize) -> Arc<[u32]> {
        self.0.frob[kk]
            .get_or_init(|| {
                let k = self.0.k;
                let theta = if kk == 1 {
                    self.pow_u64(&self.gen(), self.0.p as u64)
                } else {
                    let m1 = self.frob_matrix(1);
                    let mut t = self.gen();
                    for _ in 0..kk {
                        t = self.wrap(self.apply_matrix(&m1, &t.c));
                    }
                    t
                };
                let mut rows = Vec::with_capacity(k * k);
                let mut pw = self.one();
                for _ in 0..k {
                    rows.extend_from_slice(&pw.c);
                    pw = self.mul(&pw, &theta);
                }
                rows.into()
            })
            .clone()
    }

    /// Norm down to the prime field, `a^((q-1)/(p-1))`.
    pub fn norm(&self, a: &Fe) -> u32 {
        let g = a.to_vec_trimmed();
        if g.is_empty() {
            return 0;
        }
        resultant(self.0.p, self.0.modulus.clone(), g)
    }

    /// True iff `a^((q-1)/2) = 1`. Requires odd characteristic and `a != 0`.
    pub fn is_square(&self, a: &Fe) -> Result<bool, FieldError> {
        self.check(a)?;
        if self.0.p == 2 {
            return Err(FieldError::CharacteristicTwo);
        }
        if a.is_zero() {
            return Err(FieldError::ZeroSquareClass);
        }
        // a^((q-1)/2) = N(a)^((p-1)/2)
        let n = self.norm(a);
        Ok(pow_mod(n, (self.0.p as u64 - 1) / 2, self.0.p) == 1)
    }

    /// Euler's criterion computed directly; slow for large fields.
    pub fn is_square_euler(&self, a: &Fe) -> Result<bool, FieldError> {
        if self.0.p == 2 {
            return Err(FieldError::CharacteristicTwo);
        }
        if a.is_zero() {
            return Err(FieldError::ZeroSquareClass);
        }
        let e = (self.order() - 1u32) >> 1;
        Ok(self.pow(a, &e).is_one())
    }

    /// Draws elements from a stream seeded by `seed` until a non-square appears.
    pub fn find_nonsquare(&self, seed: u64) -> Result<Fe, FieldError> {
        if self.0.p == 2 {
            return Err(FieldError::CharacteristicTwo);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6e6f_6e73_7175_6172);
        loop {
            let a = self.random_nonzero(&mut rng);
            if !self.is_square(&a)? {
                return Ok(a);
            }
        }
    }

    /// All field elements in index order. Intended for small fields.
    pub fn elements(&self) -> Vec<Fe> {
        let q = self.order_u64().expect("field too large to enumerate");
        (0..q).map(|i| self.from_index(i)).collect()
    }
}

/// Accepts primes below the supported bound.
pub fn check_characteristic(p: u64) -> Result<u32, FieldError> {
    if !num_prime::nt_funcs::is_prime64(p) {
        return Err(FieldError::NotPrime(p));
    }
    if p >= MAX_CHAR {
        return Err(FieldError::CharOutOfRange(p));
    }
    Ok(p as u32)
}

/// Ben-Or test: `f` is irreducible iff `gcd(f, x^(p^i) - x) = 1` for `i <= deg f / 2`.
pub fn is_irreducible(p: u64, f: &[u32]) -> Result<bool, FieldError> {
    if !num_prime::nt_funcs::is_prime64(p) {
        return Err(FieldError::NotPrime(p));
    }
    if p >= MAX_CHAR {
        return Err(FieldError::CharOutOfRange(p));
    }
    let p = p as u32;
    if let Some(&c) = f.iter().find(|&&c| c >= p) {
        return Err(FieldError::CoefficientRange { coeff: c as u64, p });
    }
    let mut f = f.to_vec();
    trim(&mut f);
    if f.len() < 2 {
        return Ok(false);
    }
    let lc_inv = inv_mod(*f.last().unwrap(), p);
    let f = poly_scale(p, &f, lc_inv);
    Ok(is_irreducible_poly(p, &f))
}

fn is_irreducible_poly(p: u32, f: &[u32]) -> bool {
    let n = f.len() - 1;
    if n == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let x = vec![0, 1];
    let mut h = x.clone();
    for _ in 0..n / 2 {
        h = poly_powmod(p, &h, p as u64, f);
        let d = poly_sub(p, &h, &x);
        let g = poly_gcd(p, f.to_vec(), d);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// True iff `f` is irreducible and `x` generates the multiplicative group
/// of `Z_p[x]/(f)`. Needs `p^deg f < 2^64` to factor the group order.
pub fn is_primitive(p: u64, f: &[u32]) -> Result<bool, FieldError> {
    if !is_irreducible(p, f)? {
        return Ok(false);
    }
    let mut f = f.to_vec();
    trim(&mut f);
    let n = f.len() - 1;
    let p32 = p as u32;
    let order = p.checked_pow(n as u32).ok_or(FieldError::UnsupportedSize { p: p32, k: n })? - 1;
    let lc_inv = inv_mod(*f.last().unwrap(), p32);
    let f = poly_scale(p32, &f, lc_inv);
    let x = vec![0, 1];
    let xr = poly_rem(p32, x, &f);
    if xr.is_empty() {
        return Ok(false);
    }
    for (r, _) in num_prime::nt_funcs::factorize64(order) {
        let t = poly_powmod(p32, &xr, order / r, &f);
        if t == [1] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Seeded random monic irreducible polynomial of degree `k` (coefficients low
/// to high, leading 1).
pub fn random_irreducible(p: u32, k: usize, seed: u64) -> Vec<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((p as u64) << 32) ^ k as u64);
    loop {
        let mut f: Vec<u32> = (0..k).map(|_| rng.gen_range(0..p)).collect();
        f.push(1);
        if f[0] != 0 && is_irreducible_poly(p, &f) {
            return f;
        }
    }
}

/// Seeded search for a primitive modulus; subject to the same size bound as
/// [`is_primitive`].
pub fn random_primitive(p: u32, k: usize, seed: u64) -> Result<Vec<u32>, FieldError> {
    (p as u64).checked_pow(k as u32).ok_or(FieldError::UnsupportedSize { p, k })?;
    let mut s = seed;
    loop {
        let f = random_irreducible(p, k, s);
        if is_primitive(p as u64, &f)? {
            return Ok(f);
        }
        s = s.wrapping_add(0x9e37_79b9_7f4a_7c15);
    }
}

// Dense polynomials over Z_p, low degree first, no trailing zeros.

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn pow_mod(b: u32, mut e: u64, p: u32) -> u32 {
    let p = p as u64;
    let mut b = b as u64 % p;
    let mut r = 1u64 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r as u32
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a, p as u64 - 2, p)
}

fn poly_scale(p: u32, a: &[u32], s: u32) -> Vec<u32> {
    let mut v: Vec<u32> = a.iter().map(|&x| ((x as u64 * s as u64) % p as u64) as u32).collect();
    trim(&mut v);
    v
}

fn poly_sub(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut v: Vec<u32> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            if x >= y { x - y } else { x + p - y }
        })
        .collect();
    trim(&mut v);
    v
}

fn poly_mul(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut t = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            t[i + j] += x as u64 * y as u64;
        }
    }
    let mut v: Vec<u32> = t.into_iter().map(|x| (x % p as u64) as u32).collect();
    trim(&mut v);
    v
}

/// Quotient and remainder of `a` by nonzero `b`.
fn poly_divrem(p: u32, mut a: Vec<u32>, b: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let db = b.len() - 1;
    let lc_inv = inv_mod(b[db], p) as u64;
    if a.len() < b.len() {
        return (Vec::new(), a);
    }
    let mut q = vec![0u32; a.len() - db];
    let pp = p as u64;
    for i in (db..a.len()).rev() {
        let c = (a[i] as u64 * lc_inv) % pp;
        if c == 0 {
            continue;
        }
        q[i - db] = c as u32;
        let s = i - db;
        for (j, &bj) in b.iter().enumerate() {
            let sub = (c * bj as u64) % pp;
            let cur = a[s + j] as u64;
            a[s + j] = ((cur + pp - sub) % pp) as u32;
        }
    }
    a.truncate(db);
    trim(&mut a);
    trim(&mut q);
    (q, a)
}

fn poly_rem(p: u32, a: Vec<u32>, b: &[u32]) -> Vec<u32> {
    poly_divrem(p, a, b).1
}

fn poly_gcd(p: u32, mut a: Vec<u32>, mut b: Vec<u32>) -> Vec<u32> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(p, a, &b);
        a = b;
        b = r;
    }
    if a.is_empty() {
        return a;
    }
    let lc_inv = inv_mod(*a.last().unwrap(), p);
    poly_scale(p, &a, lc_inv)
}

fn poly_mulmod(p: u32, a: &[u32], b: &[u32], f: &[u32]) -> Vec<u32> {
    poly_rem(p, poly_mul(p, a, b), f)
}

fn poly_powmod(p: u32, a: &[u32], e: u64, f: &[u32]) -> Vec<u32> {
    let mut r = vec![1];
    let mut b = poly_rem(p, a.to_vec(), f);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            r = poly_mulmod(p, &r, &b, f);
        }
        e >>= 1;
        if e > 0 {
            b = poly_mulmod(p, &b, &b, f);
        }
    }
    r
}

/// Inverse of nonzero `a` modulo irreducible `f` by the extended Euclidean algorithm.
fn poly_inverse_mod(p: u32, a: &[u32], f: &[u32]) -> Vec<u32> {
    let (mut r0, mut r1) = (f.to_vec(), a.to_vec());
    let (mut s0, mut s1): (Vec<u32>, Vec<u32>) = (Vec::new(), vec![1]);
    while r1.len() > 1 {
        let (q, r) = poly_divrem(p, r0, &r1);
        let s2 = poly_sub(p, &s0, &poly_mul(p, &q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    // r1 is a nonzero constant since f is irreducible and a != 0
    let c = inv_mod(r1[0], p);
    poly_scale(p, &s1, c)
}

/// Resultant of monic `a` and nonzero `b`; equals the norm of `b` in `Z_p[x]/(a)`.
fn resultant(p: u32, mut a: Vec<u32>, mut b: Vec<u32>) -> u32 {
    let pp = p as u64;
    let mut acc: u64 = 1;
    loop {
        let n = a.len() - 1;
        let m = b.len() - 1;
        if m == 0 {
            return ((acc * pow_mod(b[0], n as u64, p) as u64) % pp) as u32;
        }
        let r = poly_rem(p, a, &b);
        if r.is_empty() {
            return 0;
        }
        let dr = r.len() - 1;
        if (n * m) % 2 == 1 {
            acc = (pp - acc) % pp;
        }
        acc = acc * pow_mod(b[m], (n - dr) as u64, p) as u64 % pp;
        a = b;
        b = r;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, k: usize, m: &[u32]) -> Field {
        make_field(p, k, Some(m), 0).unwrap()
    }

    #[test]
    fn gf4_arithmetic() {
        let f = gf(2, 2, &[1, 1, 1]);
        let w = f.gen();
        assert_eq!(f.mul(&w, &w).coeffs(), &[1, 1]);
        assert_eq!(f.frobenius(&w, 1).coeffs(), &[1, 1]);
        assert_eq!(f.frobenius(&w, 2), w);
    }

    #[test]
    fn gf5_squares() {
        let f = make_field(5, 1, None, 0).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert!(f.is_square(&f.from_u64(4)).unwrap());
        assert!(!f.is_square(&f.from_u64(2)).unwrap());
        assert_eq!(f.frobenius(&f.from_u64(3), 1), f.from_u64(3));
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(2, &[1, 1, 1]).unwrap());
        assert!(is_primitive(2, &[1, 1, 1]).unwrap());
        assert!(is_irreducible(3, &[1, 0, 1]).unwrap());
        assert!(!is_primitive(3, &[1, 0, 1]).unwrap());
        assert!(!is_irreducible(2, &[1, 0, 1]).unwrap());
        assert!(!is_irreducible(5, &[0, 0, 1]).unwrap());
        assert_eq!(is_irreducible(4, &[1, 1, 1]), Err(FieldError::NotPrime(4)));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(make_field(2, 2, Some(&[1, 0, 1]), 0).unwrap_err(), FieldError::Reducible(2));
        assert!(matches!(make_field(3, 3, Some(&[1, 0, 1]), 0), Err(FieldError::WrongDegree { .. })));
        assert_eq!(make_field(9, 1, None, 0).unwrap_err(), FieldError::NotPrime(9));
        let f = gf(2, 2, &[1, 1, 1]);
        assert_eq!(f.find_nonsquare(1).unwrap_err(), FieldError::CharacteristicTwo);
        assert_eq!(f.inv(&f.zero()).unwrap_err(), FieldError::DivisionByZero);
        let g = gf(3, 2, &[1, 0, 1]);
        assert_eq!(f.checked_mul(&f.one(), &g.one()).unwrap_err(), FieldError::FieldMismatch);
    }

    #[test]
    fn square_test_agrees_with_euler() {
        for (p, k) in [(3u64, 1usize), (3, 2), (5, 2), (7, 3), (3, 4), (11, 1)] {
            let f = make_field(p, k, None, 7).unwrap();
            for a in f.elements().into_iter().filter(|a| !a.is_zero()) {
                assert_eq!(f.is_square(&a).unwrap(), f.is_square_euler(&a).unwrap());
            }
            assert!(!f.is_square(f.nonsquare().unwrap()).unwrap());
        }
    }

    #[test]
    fn frobenius_matches_power() {
        for (p, k) in [(2u64, 5usize), (3, 4), (5, 3), (2, 8)] {
            let f = make_field(p, k, None, 3).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(9);
            for _ in 0..20 {
                let a = f.random(&mut rng);
                for kk in 0..k {
                    let e = BigUint::from(p).pow(kk as u32);
                    assert_eq!(f.frobenius(&a, kk), f.pow(&a, &e));
                }
            }
        }
    }

    #[test]
    fn inverse_and_order() {
        let f = make_field(19, 8, None, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let a = f.random_nonzero(&mut rng);
            assert!(f.mul(&a, &f.inv(&a).unwrap()).is_one());
            assert!(f.pow(&a, &(f.order() - 1u32)).is_one());
        }
    }

    #[test]
    fn large_degree_field() {
        let f = make_field(19, 256, None, 1).unwrap();
        assert_eq!(f.modulus().len(), 257);
        let a = f.gen();
        let b = f.frobenius(&a, 3);
        assert_eq!(f.frobenius(&b, 253), a);
        let n = f.nonsquare().unwrap();
        assert!(!f.is_square(n).unwrap());
        assert!(f.is_square(&f.sqr(n)).unwrap());
    }

    #[test]
    fn primitivity_bound() {
        let f = random_irreducible(2, 70, 1);
        assert!(matches!(is_primitive(2, &f), Err(FieldError::UnsupportedSize { .. })));
        let g = random_primitive(3, 5, 4).unwrap();
        assert!(is_primitive(3, &g).unwrap());
    }
}
