//! Thomas algorithm for the constant-coefficient tridiagonal systems left
//! behind by the backward-Euler diffusion halves.
//!
//! Both implicit matrices of the scheme are `(1 + 2r)` on the diagonal and
//! `-r` off it, constant in time, so the forward-elimination coefficients
//! are factored once and reused for every step.

/// Prefactorized solver for `A x = rhs` with `A` tridiagonal and constant
/// along each diagonal. The matrices used here are strictly diagonally
/// dominant, so no pivoting is needed.
#[derive(Debug, Clone)]
pub struct ConstTridiag {
    sub: f64,
    /// Modified super-diagonal coefficients of the forward sweep.
    w: Vec<f64>,
    /// Reciprocals of the eliminated diagonal.
    inv_denom: Vec<f64>,
}

impl ConstTridiag {
    /// Factorize an `n x n` system with sub-diagonal `sub`, diagonal `diag`,
    /// and super-diagonal `sup`.
    pub fn new(sub: f64, diag: f64, sup: f64, n: usize) -> Self {
        assert!(n >= 1, "tridiagonal system needs at least one unknown");
        let mut w = vec![0.0; n];
        let mut inv_denom = vec![0.0; n];
        let mut denom = diag;
        inv_denom[0] = 1.0 / denom;
        w[0] = sup / denom;
        for i in 1..n {
            denom = diag - sub * w[i - 1];
            inv_denom[i] = 1.0 / denom;
            w[i] = sup / denom;
        }
        ConstTridiag { sub, w, inv_denom }
    }

    /// Solve in place: `rhs` enters as the right-hand side and leaves as the
    /// solution.
    pub fn solve_in_place(&self, rhs: &mut [f64]) {
        let n = rhs.len();
        assert_eq!(n, self.w.len(), "rhs length does not match factorization");
        rhs[0] *= self.inv_denom[0];
        for i in 1..n {
            rhs[i] = (rhs[i] - self.sub * rhs[i - 1]) * self.inv_denom[i];
        }
        for i in (0..n - 1).rev() {
            rhs[i] -= self.w[i] * rhs[i + 1];
        }
    }
}
