//! Univariate polynomials over `F_{p^m}`, used to push parametrized curves
//! through Cremona maps.

use super::field::{Fe, GaloisField};

/// Coefficients, constant term first, without trailing zeros. The zero
/// polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly(pub Vec<Fe>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: Fe) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut c: Vec<Fe>) -> Self {
        while c.last().is_some_and(Fe::is_zero) {
            c.pop();
        }
        Poly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn add(&self, f: &GaloisField, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let c = (0..n)
            .map(|i| {
                let a = self.0.get(i).copied().unwrap_or(Fe::ZERO);
                let b = other.0.get(i).copied().unwrap_or(Fe::ZERO);
                f.add(a, b)
            })
            .collect();
        Poly::from_coeffs(c)
    }

    pub fn scale(&self, f: &GaloisField, s: Fe) -> Poly {
        Poly::from_coeffs(self.0.iter().map(|&c| f.mul(c, s)).collect())
    }

    pub fn mul(&self, f: &GaloisField, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Fe::ZERO; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in other.0.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(c)
    }

    /// Division with remainder; panics on a zero divisor.
    pub fn divrem(&self, f: &GaloisField, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(d.0[dd]).unwrap();
        let mut r = self.0.clone();
        let Some(dr) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if dr < dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Fe::ZERO; dr - dd + 1];
        for k in (dd..=dr).rev() {
            let c = f.mul(r[k], lead_inv);
            if c.is_zero() {
                continue;
            }
            q[k - dd] = c;
            for j in 0..=dd {
                r[k - dd + j] = f.sub(r[k - dd + j], f.mul(c, d.0[j]));
            }
        }
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    pub fn monic(&self, f: &GaloisField) -> Poly {
        match self.0.last() {
            None => Poly::zero(),
            Some(&lead) => self.scale(f, f.inv(lead).unwrap()),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(f: &GaloisField, a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.divrem(f, &y).1;
            x = y;
            y = r;
        }
        x.monic(f)
    }

    pub fn eval(&self, f: &GaloisField, t: Fe) -> Fe {
        self.0.iter().rev().fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, t), c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_poly(f: &GaloisField, rng: &mut ChaCha8Rng, deg: usize) -> Poly {
        Poly::from_coeffs((0..=deg).map(|_| f.random(rng)).collect())
    }

    #[test]
    fn division_identity() {
        let f = GaloisField::new(7, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let a = random_poly(&f, &mut rng, 6);
            let b = random_poly(&f, &mut rng, 3);
            if b.is_zero() {
                continue;
            }
            let (q, r) = a.divrem(&f, &b);
            assert_eq!(q.mul(&f, &b).add(&f, &r), a);
            assert!(r.degree().map_or(true, |d| d < b.degree().unwrap()));
        }
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let f = GaloisField::new(11, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let common = random_poly(&f, &mut rng, 2).monic(&f);
        let a = common.mul(&f, &Poly::from_coeffs(vec![f.from_u64(1), f.from_u64(1)]));
        let b = common.mul(&f, &Poly::from_coeffs(vec![f.from_u64(3), f.from_u64(1)]));
        assert_eq!(Poly::gcd(&f, &a, &b), common);
        assert!(Poly::gcd(&f, &Poly::zero(), &Poly::zero()).is_zero());
    }
}
