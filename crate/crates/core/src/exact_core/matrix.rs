use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::scalar::{parse_rat, Rat, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact scalar domain. All matrices at desk
/// scale are small, so no sparse storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactMatrix<S: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> ExactMatrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Zero-based entry access.
    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    fn sample(&self) -> &S {
        self.data.first().expect("empty matrix has no scalar domain")
    }

    /// Exact determinant. Fraction-free single-step (Bareiss) elimination by
    /// default; cofactor expansion where the scalar domain prefers it.
    pub fn det(&self) -> Result<S> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        assert!(n > 0, "0x0 determinant is not used anywhere downstream");
        if self.sample().prefer_cofactor(n) {
            Ok(self.det_cofactor())
        } else {
            Ok(self.det_bareiss())
        }
    }

    fn det_cofactor(&self) -> S {
        let n = self.rows;
        if n == 1 {
            return self.get(0, 0).clone();
        }
        let zero = self.sample().zero_like();
        let mut acc = zero.clone();
        for j in 0..n {
            let entry = self.get(0, j);
            if entry.is_zero() {
                continue;
            }
            let minor = ExactMatrix::from_fn(n - 1, n - 1, |r, c| {
                self.get(r + 1, if c < j { c } else { c + 1 }).clone()
            });
            let term = entry.mul(&minor.det_cofactor());
            acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    fn det_bareiss(&self) -> S {
        let n = self.rows;
        let mut m: Vec<Vec<S>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let one = self.sample().one_like();
        let mut prev_pivot = one;
        let mut sign_flip = false;
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return self.sample().zero_like();
                };
                m.swap(k, p);
                sign_flip = !sign_flip;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                    m[i][j] = num.exact_div(&prev_pivot);
                }
            }
            for i in k + 1..n {
                m[i][k] = m[i][k].zero_like();
            }
            prev_pivot = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        if sign_flip {
            det.neg()
        } else {
            det
        }
    }

    /// Determinant of the square submatrix whose i-th row is this matrix's
    /// row at the i-th listed index (1-based). The list need not be
    /// increasing; swapping two indices negates the result and a repeated
    /// index gives zero.
    pub fn det_minor_ordered(&self, row_indices: &[usize]) -> Result<S> {
        if row_indices.len() != self.cols {
            return Err(Error::Dimension(format!(
                "minor needs {} row indices, got {}",
                self.cols,
                row_indices.len()
            )));
        }
        for &r in row_indices {
            if r < 1 || r > self.rows {
                return Err(Error::Index(format!(
                    "row index {r} outside 1..={}",
                    self.rows
                )));
            }
        }
        let sub = ExactMatrix::from_fn(self.cols, self.cols, |i, j| {
            self.get(row_indices[i] - 1, j).clone()
        });
        sub.det()
    }
}

impl ExactMatrix<Rat> {
    /// Exact inverse via Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<ExactMatrix<Rat>> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "inverse of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut inv: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !num_traits::Zero::is_zero(&a[i][k])) else {
                return Err(Error::Singular);
            };
            a.swap(k, p);
            inv.swap(k, p);
            let pivot = a[k][k].clone();
            for j in 0..n {
                a[k][j] /= &pivot;
                inv[k][j] /= &pivot;
            }
            for i in 0..n {
                if i == k || num_traits::Zero::is_zero(&a[i][k]) {
                    continue;
                }
                let factor = a[i][k].clone();
                for j in 0..n {
                    let t = &factor * &a[k][j];
                    a[i][j] -= t;
                    let t = &factor * &inv[k][j];
                    inv[i][j] -= t;
                }
            }
        }
        Ok(ExactMatrix::from_fn(n, n, |i, j| inv[i][j].clone()))
    }

    pub fn identity(n: usize) -> ExactMatrix<Rat> {
        ExactMatrix::from_fn(n, n, |i, j| if i == j { Rat::one() } else { Rat::zero() })
    }

    pub fn matmul(&self, rhs: &ExactMatrix<Rat>) -> Result<ExactMatrix<Rat>> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(ExactMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(Rat::zero(), |acc, k| acc + self.get(i, k) * rhs.get(k, j))
        }))
    }

    /// Exact rational basis of the right kernel; empty for full column rank.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let (rows, cols) = (self.rows, self.cols);
        let mut a: Vec<Vec<Rat>> = (0..rows)
            .map(|i| (0..cols).map(|j| self.get(i, j).clone()).collect())
            .collect();
        // reduced row echelon form
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !num_traits::Zero::is_zero(&a[i][c])) else {
                continue;
            };
            a.swap(r, p);
            let pivot = a[r][c].clone();
            for j in 0..cols {
                a[r][j] /= &pivot;
            }
            for i in 0..rows {
                if i != r && !num_traits::Zero::is_zero(&a[i][c]) {
                    let f = a[i][c].clone();
                    for j in 0..cols {
                        let t = &f * &a[r][j];
                        a[i][j] -= t;
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
        free_cols
            .iter()
            .map(|&fc| {
                let mut v = vec![Rat::zero(); cols];
                v[fc] = Rat::one();
                for (ri, &pc) in pivot_cols.iter().enumerate() {
                    v[pc] = -a[ri][fc].clone();
                }
                v
            })
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<String>,
}

impl ExactMatrix<Rat> {
    /// JSON interchange form: `{"rows": r, "cols": c, "entries": ["-3", "5/7", ...]}`
    /// with entries in row-major order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self.data.iter().map(|r| r.to_string()).collect(),
        })
        .expect("matrix serialization cannot fail")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let parsed: MatrixJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let entries = parsed
            .entries
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<_>>>()?;
        ExactMatrix::new(parsed.rows, parsed.cols, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::scalar::rat;
    use crate::exact_core::{MultiPoly, VarSet};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn int_matrix(vals: &[&[i64]]) -> ExactMatrix<Rat> {
        ExactMatrix::from_fn(vals.len(), vals[0].len(), |i, j| rat(vals[i][j]))
    }

    #[test]
    fn two_by_two() {
        let m = int_matrix(&[&[1, 2], &[3, 4]]);
        assert_eq!(m.det().unwrap(), rat(-2));
    }

    #[test]
    fn equal_rows_vanish() {
        let m = int_matrix(&[&[1, 2, 3], &[4, 5, 6], &[1, 2, 3]]);
        assert_eq!(m.det().unwrap(), rat(0));
    }

    #[test]
    fn non_square_rejected() {
        let m = int_matrix(&[&[1, 2, 3], &[4, 5, 6]]);
        assert!(matches!(m.det(), Err(Error::Dimension(_))));
    }

    #[test]
    fn symbolic_univariate_vandermonde_factors() {
        // det of the 1-variable Vandermonde equals the product of differences
        let n = 4;
        let vs = VarSet::new((1..=n).map(|i| format!("z{i}")));
        let z: Vec<MultiPoly> = (1..=n)
            .map(|i| MultiPoly::var(&vs, &format!("z{i}")).unwrap())
            .collect();
        let m = ExactMatrix::from_fn(n, n, |i, j| {
            let mut p = MultiPoly::constant(&vs, rat(1));
            for _ in 0..j {
                p = p.mul(&z[i]);
            }
            p
        });
        let det = m.det().unwrap();
        let mut expect = MultiPoly::constant(&vs, rat(1));
        for i in 0..n {
            for j in i + 1..n {
                expect = expect.mul(&z[j].sub(&z[i]));
            }
        }
        assert_eq!(det, expect);
    }

    #[test]
    fn det_agrees_with_cofactor_on_random_int_matrices() {
        // fraction-free elimination vs naive cofactor, sizes up to 5x5
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let mut trials = 0;
        while trials < 200 {
            let n = rng.random_range(1..=5usize);
            let m = ExactMatrix::from_fn(n, n, |_, _| rat(rng.random_range(-9..=9)));
            assert_eq!(m.det_bareiss(), m.det_cofactor());
            trials += 1;
        }
    }

    #[test]
    fn minor_ordering() {
        let a = int_matrix(&[&[1, 0], &[2, 1], &[5, 3], &[7, 2]]);
        let d12 = a.det_minor_ordered(&[1, 2]).unwrap();
        assert_eq!(d12, rat(1));
        assert_eq!(a.det_minor_ordered(&[2, 1]).unwrap(), -&d12);
        assert_eq!(a.det_minor_ordered(&[1, 1]).unwrap(), rat(0));
        assert!(a.det_minor_ordered(&[1]).is_err());
        assert!(a.det_minor_ordered(&[1, 5]).is_err());
    }

    #[test]
    fn minor_antisymmetry_exhaustive() {
        // every permutation of an index list picks up the permutation sign
        let m = int_matrix(&[
            &[3, 1, 4, 1],
            &[5, 9, 2, 6],
            &[5, 3, 5, 8],
            &[9, 7, 9, 3],
            &[2, 3, 8, 4],
        ]);
        let base = [1usize, 3, 4, 5];
        let base_det = m.det_minor_ordered(&base).unwrap();
        let mut idx = base.to_vec();
        permute_all(&mut idx, 0, &mut |perm| {
            let sign = perm_sign_of(perm, &base);
            let d = m.det_minor_ordered(perm).unwrap();
            let expect = if sign > 0 {
                base_det.clone()
            } else {
                -base_det.clone()
            };
            assert_eq!(d, expect);
        });
    }

    fn permute_all(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permute_all(v, k + 1, f);
            v.swap(k, i);
        }
    }

    fn perm_sign_of(perm: &[usize], base: &[usize]) -> i32 {
        let pos: Vec<usize> = perm
            .iter()
            .map(|p| base.iter().position(|b| b == p).unwrap())
            .collect();
        let mut inv = 0;
        for i in 0..pos.len() {
            for j in i + 1..pos.len() {
                if pos[i] > pos[j] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn inverse_exact() {
        let id = ExactMatrix::identity(3);
        assert_eq!(id.inverse().unwrap(), id);
        let d = int_matrix(&[&[1, 0], &[0, -1]]);
        assert_eq!(d.inverse().unwrap(), d);
        let singular = int_matrix(&[&[1, 2], &[2, 4]]);
        assert!(matches!(singular.inverse(), Err(Error::Singular)));

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let m = ExactMatrix::from_fn(4, 4, |_, _| rat(rng.random_range(-9..=9)));
            match m.inverse() {
                Ok(inv) => assert_eq!(m.matmul(&inv).unwrap(), ExactMatrix::identity(4)),
                Err(Error::Singular) => assert_eq!(m.det().unwrap(), rat(0)),
                Err(e) => panic!("unexpected error {e}"),
            }
        }
    }

    #[test]
    fn kernel_of_rank_deficient() {
        let m = int_matrix(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            for i in 0..m.rows() {
                let dot = (0..3).fold(Rat::zero(), |acc, j| acc + m.get(i, j) * &v[j]);
                assert!(num_traits::Zero::is_zero(&dot));
            }
        }
        let full = int_matrix(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert!(full.kernel().is_empty());
    }

    #[test]
    fn json_roundtrip() {
        let m = ExactMatrix::new(1, 2, vec![rat(-3), crate::exact_core::rat_from(5, 7)]).unwrap();
        let j = m.to_json();
        assert_eq!(j["entries"][0], "-3");
        assert_eq!(j["entries"][1], "5/7");
        assert_eq!(ExactMatrix::from_json(&j).unwrap(), m);
    }

    proptest! {
        // symbolic determinant evaluated at a random point equals the
        // determinant of the evaluated matrix
        #[test]
        fn symbolic_det_commutes_with_evaluation(vals in proptest::collection::vec(-9i64..=9, 9),
                                                 pts in proptest::collection::vec(-9i64..=9, 3)) {
            let vs = VarSet::new(["u", "v", "w"]);
            let names = ["u", "v", "w"];
            // entries: val * (one of the variables), chosen by position
            let m = ExactMatrix::from_fn(3, 3, |i, j| {
                let var = MultiPoly::var(&vs, names[(i + j) % 3]).unwrap();
                var.mul(&MultiPoly::constant(&vs, rat(vals[i * 3 + j])))
            });
            let sym_det = m.det().unwrap();
            let mut point = std::collections::HashMap::new();
            for (k, name) in names.iter().enumerate() {
                point.insert(name.to_string(), rat(pts[k]));
            }
            let eval_then_det = ExactMatrix::from_fn(3, 3, |i, j| {
                m.get(i, j).eval(&point).unwrap()
            }).det().unwrap();
            prop_assert_eq!(sym_det.eval(&point).unwrap(), eval_then_det);
        }
    }
}
