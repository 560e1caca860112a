//! Dense symmetric eigendecomposition and spectral calculus.

use faer::{Mat, MatRef, Side};

/// `A = U diag(λ) Uᵀ` with eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub values: Vec<f64>,
    pub vectors: Mat<f64>,
}

impl SymEigen {
    pub fn new(a: MatRef<'_, f64>) -> Self {
        let evd = a.selfadjoint_eigendecomposition(Side::Lower);
        let s = evd.s().column_vector();
        let u = evd.u();
        let n = a.nrows();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| s.read(i).total_cmp(&s.read(j)));
        let values = order.iter().map(|&i| s.read(i)).collect();
        let vectors = Mat::from_fn(n, n, |r, c| u.read(r, order[c]));
        SymEigen { values, vectors }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `U f(Λ) Uᵀ`, symmetrized.
    pub fn apply_fn(&self, f: impl Fn(f64) -> f64) -> Mat<f64> {
        let fl: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        let n = self.len();
        let scaled = Mat::from_fn(n, n, |r, c| self.vectors.read(r, c) * fl[c]);
        symmetrize(&(&scaled * self.vectors.transpose()))
    }

    /// Columns of `U` whose eigenvalue satisfies `keep`.
    pub fn subspace(&self, keep: impl Fn(f64) -> bool) -> (Mat<f64>, Vec<f64>) {
        let idx: Vec<usize> = (0..self.len()).filter(|&i| keep(self.values[i])).collect();
        let n = self.vectors.nrows();
        let basis = Mat::from_fn(n, idx.len(), |r, c| self.vectors.read(r, idx[c]));
        (basis, idx.iter().map(|&i| self.values[i]).collect())
    }

    pub fn min_abs(&self) -> f64 {
        self.values.iter().fold(f64::INFINITY, |a, l| a.min(l.abs()))
    }
}

pub fn symmetrize(a: &Mat<f64>) -> Mat<f64> {
    Mat::from_fn(a.nrows(), a.ncols(), |i, j| 0.5 * (a.read(i, j) + a.read(j, i)))
}

/// `max |A − Aᵀ|`.
pub fn asymmetry(a: MatRef<'_, f64>) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..a.nrows() {
        for j in 0..i {
            worst = worst.max((a.read(i, j) - a.read(j, i)).abs());
        }
    }
    worst
}

pub fn quad_form(a: MatRef<'_, f64>, x: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..x.len() {
        let mut row = 0.0;
        for j in 0..x.len() {
            row += a.read(i, j) * x[j];
        }
        s += x[i] * row;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstructs_and_applies() {
        let a = Mat::from_fn(5, 5, |i, j| 1.0 / (1.0 + i as f64 + j as f64) + if i == j { (i as f64) - 2.0 } else { 0.0 });
        let e = SymEigen::new(a.as_ref());
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        let back = e.apply_fn(|l| l);
        let err = (0..5).flat_map(|i| (0..5).map(move |j| (i, j))).map(|(i, j)| (back.read(i, j) - a.read(i, j)).abs()).fold(0.0, f64::max);
        assert!(err < 1e-12);
        let sq = e.apply_fn(|l| l.abs());
        let sq2 = &sq * &sq;
        let a2 = &a * &a;
        let err = (0..5).flat_map(|i| (0..5).map(move |j| (i, j))).map(|(i, j)| (sq2.read(i, j) - a2.read(i, j)).abs()).fold(0.0, f64::max);
        assert!(err < 1e-12);
        let (b, v) = e.subspace(|l| l >= 0.0);
        assert_eq!(b.ncols(), v.len());
        assert!(asymmetry(sq.as_ref()) < 1e-15);
    }
}
