//! Points, lines and conics in `P²(F_{p^m})`.

use super::field::{Fe, GaloisField};

/// A point `(x₀ : x₁ : x₂)` scaled so that its first non-zero coordinate is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint([Fe; 3]);

impl ProjPoint {
    /// Normalizes `coords`; `None` for the zero vector.
    pub fn new(f: &GaloisField, coords: [Fe; 3]) -> Option<Self> {
        let lead = coords.iter().copied().find(|c| !c.is_zero())?;
        let inv = f.inv(lead)?;
        Some(ProjPoint(coords.map(|c| f.mul(c, inv))))
    }

    pub fn from_ints(f: &GaloisField, coords: [i64; 3]) -> Option<Self> {
        ProjPoint::new(f, coords.map(|c| f.from_i64(c)))
    }

    pub fn coords(&self) -> [Fe; 3] {
        self.0
    }

    pub fn frobenius(&self, f: &GaloisField) -> Self {
        // Frobenius fixes 1, so normalization is preserved
        ProjPoint(self.0.map(|c| f.frobenius(c)))
    }

    pub fn random<R: rand::Rng + ?Sized>(f: &GaloisField, rng: &mut R) -> Self {
        loop {
            let c = [f.random(rng), f.random(rng), f.random(rng)];
            if let Some(p) = ProjPoint::new(f, c) {
                return p;
            }
        }
    }

    /// Whether every coordinate lies in `F_{p^k}`.
    pub fn defined_over(&self, f: &GaloisField, k: usize) -> bool {
        self.0.iter().all(|&c| f.in_subfield(c, k))
    }
}

/// A line `a₀x₀ + a₁x₁ + a₂x₂ = 0`, stored as a normalized dual point.
pub type Line = ProjPoint;

pub fn cross(f: &GaloisField, a: [Fe; 3], b: [Fe; 3]) -> [Fe; 3] {
    [
        f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])),
        f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
        f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0])),
    ]
}

pub fn dot(f: &GaloisField, a: [Fe; 3], b: [Fe; 3]) -> Fe {
    f.add(f.add(f.mul(a[0], b[0]), f.mul(a[1], b[1])), f.mul(a[2], b[2]))
}

/// Line through two distinct points.
pub fn line_through(f: &GaloisField, p: &ProjPoint, q: &ProjPoint) -> Option<Line> {
    ProjPoint::new(f, cross(f, p.0, q.0))
}

pub fn incident(f: &GaloisField, line: &Line, p: &ProjPoint) -> bool {
    dot(f, line.0, p.0).is_zero()
}

/// Intersection of two distinct lines.
pub fn meet(f: &GaloisField, l: &Line, m: &Line) -> Option<ProjPoint> {
    ProjPoint::new(f, cross(f, l.0, m.0))
}

pub fn det3(f: &GaloisField, rows: [[Fe; 3]; 3]) -> Fe {
    dot(f, rows[0], cross(f, rows[1], rows[2]))
}

/// Whether the three points lie on a common line (`det = 0`).
pub fn collinear(f: &GaloisField, p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> bool {
    det3(f, [p.0, q.0, r.0]).is_zero()
}

/// Rank of a dense matrix by Gaussian elimination.
pub fn rank(f: &GaloisField, mut rows: Vec<Vec<Fe>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = f.inv(rows[r][col]).unwrap();
        for i in r + 1..rows.len() {
            let factor = f.mul(rows[i][col], inv);
            if factor.is_zero() {
                continue;
            }
            for j in col..ncols {
                rows[i][j] = f.sub(rows[i][j], f.mul(factor, rows[r][j]));
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// The six quadratic monomials `x₀², x₀x₁, x₀x₂, x₁², x₁x₂, x₂²` at `p`.
pub fn veronese(f: &GaloisField, p: &ProjPoint) -> Vec<Fe> {
    let [a, b, c] = p.0;
    vec![
        f.mul(a, a),
        f.mul(a, b),
        f.mul(a, c),
        f.mul(b, b),
        f.mul(b, c),
        f.mul(c, c),
    ]
}

/// Whether six points lie on one (possibly degenerate) conic, i.e. the 6×6
/// Veronese matrix is singular.
pub fn on_common_conic(f: &GaloisField, pts: &[ProjPoint; 6]) -> bool {
    rank(f, pts.iter().map(|p| veronese(f, p)).collect()) < 6
}

/// 3×3 matrices acting on column vectors of homogeneous coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mat3(pub [[Fe; 3]; 3]);

impl Mat3 {
    /// Matrix whose columns are the given points.
    pub fn from_columns(cols: [[Fe; 3]; 3]) -> Self {
        let mut m = [[Fe::ZERO; 3]; 3];
        for (j, col) in cols.iter().enumerate() {
            for i in 0..3 {
                m[i][j] = col[i];
            }
        }
        Mat3(m)
    }

    pub fn apply(&self, f: &GaloisField, v: [Fe; 3]) -> [Fe; 3] {
        self.0.map(|row| dot(f, row, v))
    }

    pub fn det(&self, f: &GaloisField) -> Fe {
        det3(f, self.0)
    }

    /// Inverse via the adjugate; `None` if singular.
    pub fn inverse(&self, f: &GaloisField) -> Option<Mat3> {
        let det_inv = f.inv(self.det(f))?;
        let m = &self.0;
        let mut out = [[Fe::ZERO; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                // cofactor of m[j][i]
                let (r0, r1) = match j {
                    0 => (1, 2),
                    1 => (2, 0),
                    _ => (0, 1),
                };
                let (c0, c1) = match i {
                    0 => (1, 2),
                    1 => (2, 0),
                    _ => (0, 1),
                };
                let minor = f.sub(f.mul(m[r0][c0], m[r1][c1]), f.mul(m[r0][c1], m[r1][c0]));
                *slot = f.mul(minor, det_inv);
            }
        }
        Some(Mat3(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn coordinate_triangle_is_not_collinear() {
        let f = GaloisField::new(7, 1).unwrap();
        let pt = |c| ProjPoint::from_ints(&f, c).unwrap();
        assert!(!collinear(&f, &pt([0, 0, 1]), &pt([0, 1, 0]), &pt([1, 0, 0])));
        assert!(collinear(&f, &pt([1, 0, 0]), &pt([0, 1, 0]), &pt([1, 1, 0])));
    }

    #[test]
    fn points_on_a_sampled_line_are_collinear() {
        let f = GaloisField::new(7, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let a = ProjPoint::random(&f, &mut rng);
            let b = ProjPoint::random(&f, &mut rng);
            if a == b {
                continue;
            }
            let on_line = |s: u64, t: u64| {
                let c = [0, 1, 2].map(|i| f.add(f.mul(f.from_u64(s), a.0[i]), f.mul(f.from_u64(t), b.0[i])));
                ProjPoint::new(&f, c).unwrap()
            };
            let (p, q, r) = (on_line(1, 2), on_line(3, 1), on_line(1, 5));
            assert!(collinear(&f, &p, &q, &r));
            let l = line_through(&f, &a, &b).unwrap();
            assert!(incident(&f, &l, &p) && incident(&f, &l, &r));
        }
    }

    #[test]
    fn conic_detection() {
        let f = GaloisField::new(7, 1).unwrap();
        // x₀x₁ = x₂² parametrized by (1 : t² : t)
        let conic: Vec<ProjPoint> = (1..=6)
            .map(|t: i64| ProjPoint::from_ints(&f, [1, t * t, t]).unwrap())
            .collect();
        assert!(on_common_conic(&f, &conic.clone().try_into().unwrap()));

        // rejection-sample six points with a non-singular Veronese matrix
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let general = loop {
            let pts: [ProjPoint; 6] = std::array::from_fn(|_| ProjPoint::random(&f, &mut rng));
            if rank(&f, pts.iter().map(|p| veronese(&f, p)).collect()) == 6 {
                break pts;
            }
        };
        assert!(!on_common_conic(&f, &general));
    }

    #[test]
    fn matrix_inverse() {
        let f = GaloisField::new(11, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let m = Mat3([[f.random(&mut rng), f.random(&mut rng), f.random(&mut rng)]; 3]);
        assert!(m.inverse(&f).is_none());
        let cols = [0, 1, 2].map(|_| ProjPoint::random(&f, &mut rng).coords());
        let m = Mat3::from_columns(cols);
        let inv = m.inverse(&f).unwrap();
        let v = [f.random(&mut rng), f.random(&mut rng), f.random(&mut rng)];
        assert_eq!(inv.apply(&f, m.apply(&f, v)), v);
        assert_eq!(m.apply(&f, [f.one(), Fe::ZERO, Fe::ZERO]), cols[0]);
    }
}
