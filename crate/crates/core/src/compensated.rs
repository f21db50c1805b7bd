//! Double-double accumulation for eigenvalue refinement.
//!
//! A computed eigenvector `v` with residual `r` gives a Rayleigh quotient
//! within `|r|^2 / gap` of the true eigenvalue, far below double rounding.
//! Evaluating `v* A v / v* v` with error-free transforms keeps that accuracy,
//! and the result is returned as an unevaluated sum `hi + tail`.

use crate::matrix::{CMatrix, HermitianMatrix};

#[derive(Debug, Clone, Copy, Default)]
struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    fn renorm(hi: f64, lo: f64) -> Dd {
        let (hi, lo) = two_sum(hi, lo);
        Dd { hi, lo }
    }

    /// Adds the exact product `a * b`.
    fn add_prod(&mut self, a: f64, b: f64) {
        let (p, pe) = two_prod(a, b);
        let (s, se) = two_sum(self.hi, p);
        *self = Dd::renorm(s, se + pe + self.lo);
    }

    /// Adds `a * x` for double `a` and double-double `x`.
    fn add_scaled(&mut self, a: f64, x: Dd) {
        self.add_prod(a, x.hi);
        let (s, se) = two_sum(self.hi, a * x.lo);
        *self = Dd::renorm(s, se + self.lo);
    }

    fn div(self, d: Dd) -> Dd {
        let q = self.hi / d.hi;
        // self - q*d, then one correction step.
        let mut r = self;
        r.add_scaled(-q, d);
        Dd::renorm(q, r.hi / d.hi)
    }
}

/// Rayleigh quotients of the columns of `vectors`, split as `(hi, tail)`.
pub(crate) fn rayleigh_quotients(a: &HermitianMatrix, vectors: &CMatrix) -> Vec<(f64, f64)> {
    let m = a.as_matrix();
    let n = a.order();
    (0..vectors.ncols())
        .map(|c| {
            let mut num = Dd::default();
            let mut den = Dd::default();
            for j in 0..n {
                let vj = vectors[(j, c)];
                // (A v)_j in double-double, real and imaginary parts.
                let (mut re, mut im) = (Dd::default(), Dd::default());
                for k in 0..n {
                    let (ajk, vk) = (m[(j, k)], vectors[(k, c)]);
                    re.add_prod(ajk.re, vk.re);
                    re.add_prod(-ajk.im, vk.im);
                    im.add_prod(ajk.re, vk.im);
                    im.add_prod(ajk.im, vk.re);
                }
                // Re(conj(v_j) (A v)_j)
                num.add_scaled(vj.re, re);
                num.add_scaled(vj.im, im);
                den.add_prod(vj.re, vj.re);
                den.add_prod(vj.im, vj.im);
            }
            let q = num.div(den);
            (q.hi, q.lo)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn error_free_transforms() {
        let (s, e) = two_sum(1.0, 1e-20);
        assert_eq!((s, e), (1.0, 1e-20));
        let x = 1.0 + f64::EPSILON;
        let (p, e) = two_prod(x, x);
        assert_eq!(p, 1.0 + 2.0 * f64::EPSILON);
        assert_eq!(e, f64::EPSILON * f64::EPSILON);
    }

    #[test]
    fn quotient_keeps_low_order_bits() {
        // diag(1/3 rounded) has exact eigenvalue fl(1/3); a unit vector with
        // a tiny second component shifts the quotient below double resolution.
        let a = HermitianMatrix::from_diagonal(&[1.0 / 3.0, 2.0]);
        let v = CMatrix::from_rows(&[vec![Complex64::new(1.0, 0.0)], vec![Complex64::new(1e-12, 0.0)]]).unwrap();
        let (hi, tail) = rayleigh_quotients(&a, &v)[0];
        // (1/3 + 2e-24) / (1 + 1e-24) = 1/3 + (2 - 1/3) e-24 to first order.
        let expected_shift = (2.0 - 1.0 / 3.0) * 1e-24;
        assert_eq!(hi, 1.0 / 3.0);
        assert!((tail - expected_shift).abs() < 1e-30, "{tail:e}");
    }
}
