//! Arithmetic in `F_{p^m}` for small `m`, as `F_p[x]/(f)` with `f` the
//! least monic irreducible of degree `m`.

use std::fmt;

use rand::Rng;

use super::OracleError;

/// Largest supported extension degree.
pub const MAX_EXT_DEGREE: usize = 6;

/// Primes are kept below `2^31` so that products of residues fit in `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// An element of `F_{p^m}`: coefficients of a polynomial of degree `< m`,
/// constant term first. Unused slots are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fe(pub [u64; MAX_EXT_DEGREE]);

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&c| c != 0).unwrap_or(0);
        write!(f, "{:?}", &self.0[..=last])
    }
}

impl Fe {
    pub const ZERO: Fe = Fe([0; MAX_EXT_DEGREE]);

    pub fn is_zero(&self) -> bool {
        *self == Fe::ZERO
    }
}

/// The field `F_{p^m}` together with its defining polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaloisField {
    p: u64,
    degree: usize,
    /// Monic modulus, constant term first; `modulus[degree] == 1`.
    modulus: [u64; MAX_EXT_DEGREE + 1],
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

impl GaloisField {
    /// `F_p` itself, represented modulo `x`.
    pub fn prime(p: u64) -> Result<Self, OracleError> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(OracleError::NotPrime(p));
        }
        let mut modulus = [0; MAX_EXT_DEGREE + 1];
        modulus[1] = 1;
        Ok(GaloisField { p, degree: 1, modulus })
    }

    /// `F_{p^m}` built from the lexicographically least monic irreducible of
    /// degree `m`, comparing coefficients from `x^{m-1}` down to `x^0`.
    pub fn new(p: u64, m: usize) -> Result<Self, OracleError> {
        let base = GaloisField::prime(p)?;
        if m == 0 || m > MAX_EXT_DEGREE {
            return Err(OracleError::UnsupportedExtension(m));
        }
        if m == 1 {
            return Ok(base);
        }
        // candidates in increasing lexicographic order; x^0 varies fastest
        for code in 0u64.. {
            let mut f = vec![0u64; m + 1];
            let mut k = code;
            for c in f.iter_mut().take(m) {
                *c = k % p;
                k /= p;
            }
            f[m] = 1;
            if fp_poly::is_irreducible(&f, p) {
                let mut modulus = [0; MAX_EXT_DEGREE + 1];
                modulus[..=m].copy_from_slice(&f);
                return Ok(GaloisField { p, degree: m, modulus });
            }
        }
        unreachable!("irreducible polynomials of every degree exist over F_p")
    }

    /// A field of characteristic `p ∉ {2, 3}`, as required by the oracle.
    pub fn for_oracle(p: u64, m: usize) -> Result<Self, OracleError> {
        if p == 2 || p == 3 {
            return Err(OracleError::BadCharacteristic(p));
        }
        GaloisField::new(p, m)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus[..=self.degree]
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        self.from_u64(1)
    }

    pub fn from_u64(&self, v: u64) -> Fe {
        let mut e = Fe::ZERO;
        e.0[0] = v % self.p;
        e
    }

    pub fn from_i64(&self, v: i64) -> Fe {
        self.from_u64(v.rem_euclid(self.p as i64) as u64)
    }

    /// Element with the given coefficients in the power basis `1, x, x², …`.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Fe {
        assert!(coeffs.len() <= self.degree, "too many coefficients for F_p^{}", self.degree);
        let mut e = Fe::ZERO;
        for (slot, &c) in e.0.iter_mut().zip(coeffs) {
            *slot = c % self.p;
        }
        e
    }

    /// The generator `x` of the power basis (equals 0 in `F_p`).
    pub fn generator(&self) -> Fe {
        if self.degree == 1 {
            // x ≡ 0 mod x
            return Fe::ZERO;
        }
        let mut e = Fe::ZERO;
        e.0[1] = 1;
        e
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        let mut e = Fe::ZERO;
        for c in e.0.iter_mut().take(self.degree) {
            *c = rng.gen_range(0..self.p);
        }
        e
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let mut r = Fe::ZERO;
        for i in 0..self.degree {
            r.0[i] = (a.0[i] + b.0[i]) % self.p;
        }
        r
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        let mut r = Fe::ZERO;
        for i in 0..self.degree {
            r.0[i] = (a.0[i] + self.p - b.0[i]) % self.p;
        }
        r
    }

    pub fn neg(&self, a: Fe) -> Fe {
        self.sub(Fe::ZERO, a)
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        let m = self.degree;
        let p = self.p;
        let mut t = [0u64; 2 * MAX_EXT_DEGREE - 1];
        for i in 0..m {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..m {
                t[i + j] = (t[i + j] + a.0[i] * b.0[j]) % p;
            }
        }
        for k in (m..2 * m - 1).rev() {
            let c = t[k];
            if c == 0 {
                continue;
            }
            t[k] = 0;
            for j in 0..m {
                let sub = c * self.modulus[j] % p;
                t[k - m + j] = (t[k - m + j] + p - sub) % p;
            }
        }
        let mut r = Fe::ZERO;
        r.0[..m].copy_from_slice(&t[..m]);
        r
    }

    pub fn square(&self, a: Fe) -> Fe {
        self.mul(a, a)
    }

    pub fn pow(&self, mut base: Fe, mut exp: u64) -> Fe {
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `a ↦ a^p`.
    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.p)
    }

    /// `a ↦ a^{p^k}`.
    pub fn frobenius_pow(&self, a: Fe, k: usize) -> Fe {
        (0..k).fold(a, |x, _| self.frobenius(x))
    }

    /// Inverse via the extended Euclidean algorithm in `F_p[x]`.
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.is_zero() {
            return None;
        }
        let a_poly = fp_poly::trim(a.0[..self.degree].to_vec());
        let inv = fp_poly::inverse_mod(&a_poly, self.modulus(), self.p)?;
        Some(self.from_coeffs(&inv))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Option<Fe> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// Whether `a` lies in the subfield `F_{p^k}`.
    pub fn in_subfield(&self, a: Fe, k: usize) -> bool {
        self.frobenius_pow(a, k) == a
    }
}

/// Dense polynomials over `F_p` as coefficient vectors, constant term first.
pub(crate) mod fp_poly {
    pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
        if v.is_empty() {
            v.push(0);
        }
        v
    }

    fn is_zero(a: &[u64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    fn deg(a: &[u64]) -> usize {
        a.iter().rposition(|&c| c != 0).unwrap_or(0)
    }

    pub fn pow_mod_scalar(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1 % p;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    }

    fn inv_scalar(a: u64, p: u64) -> u64 {
        pow_mod_scalar(a, p - 2, p)
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let r = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(r)
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + x * y) % p;
            }
        }
        trim(r)
    }

    /// `(quotient, remainder)`; `b` must be non-zero.
    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let db = deg(b);
        let lead_inv = inv_scalar(b[db], p);
        let mut r = trim(a.to_vec());
        if is_zero(&r) || deg(&r) < db {
            return (vec![0], r);
        }
        let mut q = vec![0u64; deg(&r) - db + 1];
        while !is_zero(&r) && deg(&r) >= db {
            let dr = deg(&r);
            let c = r[dr] * lead_inv % p;
            q[dr - db] = c;
            for j in 0..=db {
                r[dr - db + j] = (r[dr - db + j] + p - c * b[j] % p) % p;
            }
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        divrem(a, b, p).1
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
        while !is_zero(&y) {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        if is_zero(&x) {
            return x;
        }
        let li = inv_scalar(x[deg(&x)], p);
        x.iter().map(|&c| c * li % p).collect()
    }

    /// `a^{-1} mod f`, or `None` if they share a factor.
    pub fn inverse_mod(a: &[u64], f: &[u64], p: u64) -> Option<Vec<u64>> {
        // invariant: s·a ≡ r (mod f)
        let (mut r0, mut r1) = (f.to_vec(), rem(a, f, p));
        let (mut s0, mut s1) = (vec![0u64], vec![1u64]);
        while !is_zero(&r1) {
            let (q, r) = divrem(&r0, &r1, p);
            let s = sub(&s0, &mul(&q, &s1, p), p);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if deg(&r0) != 0 {
            return None;
        }
        let c = inv_scalar(r0[0], p);
        let out: Vec<u64> = s0.iter().map(|&v| v * c % p).collect();
        Some(trim(rem(&out, f, p)))
    }

    /// `g^p mod f`.
    fn pow_p_mod(g: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut base = rem(g, f, p);
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &base, p), f, p);
            }
            base = rem(&mul(&base, &base, p), f, p);
            e >>= 1;
        }
        acc
    }

    /// Rabin's test: `f` of degree `m` is irreducible iff `x^{p^m} ≡ x` and
    /// `gcd(x^{p^{m/r}} - x, f) = 1` for every prime `r | m`.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let m = deg(f);
        if m == 0 {
            return false;
        }
        if m == 1 {
            return true;
        }
        let x = vec![0u64, 1];
        // frob[k] = x^{p^k} mod f
        let mut frob = vec![rem(&x, f, p)];
        for k in 1..=m {
            let next = pow_p_mod(&frob[k - 1], f, p);
            frob.push(next);
        }
        if sub(&frob[m], &rem(&x, f, p), p) != vec![0] {
            return false;
        }
        (2..=m)
            .filter(|r| m % r == 0 && super::is_prime(*r as u64))
            .all(|r| {
                let h = sub(&frob[m / r], &x, p);
                deg(&gcd(&h, f, p)) == 0
            })
    }
}
