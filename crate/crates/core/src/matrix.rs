//! Dense 16x16 scalar matrix used by every conversion.
//!
//! The transformation matrices act blockwise as c*I on 3-vectors;
//! each block collapses to the scalar c applied per coordinate, so a 16x16
//! scalar matrix applied to a column of 16 points is an exact representation.

use crate::point::Point3;

pub const SLOTS: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct Mat16 {
    pub rows: [[f64; SLOTS]; SLOTS],
}

impl Mat16 {
    pub fn zero() -> Self {
        Mat16 { rows: [[0.0; SLOTS]; SLOTS] }
    }

    pub fn identity() -> Self {
        let mut m = Mat16::zero();
        for i in 0..SLOTS {
            m.rows[i][i] = 1.0;
        }
        m
    }

    pub fn apply(&self, v: &[Point3; SLOTS]) -> [Point3; SLOTS] {
        let mut out = [Point3::ZERO; SLOTS];
        for i in 0..SLOTS {
            let mut acc = Point3::ZERO;
            for j in 0..SLOTS {
                let c = self.rows[i][j];
                if c != 0.0 {
                    acc = acc + v[j] * c;
                }
            }
            out[i] = acc;
        }
        out
    }

    pub fn matmul(&self, other: &Mat16) -> Mat16 {
        let mut out = Mat16::zero();
        for i in 0..SLOTS {
            for k in 0..SLOTS {
                let a = self.rows[i][k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..SLOTS {
                    out.rows[i][j] += a * other.rows[k][j];
                }
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Mat16) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..SLOTS {
            for j in 0..SLOTS {
                d = d.max((self.rows[i][j] - other.rows[i][j]).abs());
            }
        }
        d
    }

    /// LU factorization with partial pivoting. Returns (inverse, determinant),
    /// or None when a pivot underflows to zero.
    pub fn invert(&self) -> Option<(Mat16, f64)> {
        let mut a = self.rows;
        let mut inv = Mat16::identity().rows;
        let mut det = 1.0;
        for col in 0..SLOTS {
            let mut pivot = col;
            for r in col + 1..SLOTS {
                if a[r][col].abs() > a[pivot][col].abs() {
                    pivot = r;
                }
            }
            if a[pivot][col] == 0.0 {
                return None;
            }
            if pivot != col {
                a.swap(pivot, col);
                inv.swap(pivot, col);
                det = -det;
            }
            let p = a[col][col];
            det *= p;
            for j in 0..SLOTS {
                a[col][j] /= p;
                inv[col][j] /= p;
            }
            for r in 0..SLOTS {
                if r == col {
                    continue;
                }
                let f = a[r][col];
                if f == 0.0 {
                    continue;
                }
                for j in 0..SLOTS {
                    a[r][j] -= f * a[col][j];
                    inv[r][j] -= f * inv[col][j];
                }
            }
        }
        Some((Mat16 { rows: inv }, det))
    }

    pub fn determinant(&self) -> f64 {
        self.invert().map(|(_, d)| d).unwrap_or(0.0)
    }

    fn norm_1(&self) -> f64 {
        (0..SLOTS)
            .map(|j| (0..SLOTS).map(|i| self.rows[i][j].abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// 1-norm condition estimate; infinite when singular.
    pub fn condition_estimate(&self) -> f64 {
        match self.invert() {
            Some((inv, _)) => self.norm_1() * inv.norm_1(),
            None => f64::INFINITY,
        }
    }
}
