//! Dense exact matrices over the rationals.
//!
//! Rank, determinant, reduced row echelon form and nullspaces are computed by
//! plain Gaussian elimination over `BigRational`. A prime-field shadow rank is
//! available for fast filtering; it never exceeds the rational rank.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::polycore::scalar::{format_scalar, parse_scalar, Fp, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return invalid("ragged rows");
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let data: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| crate::polycore::scalar::int(v)).collect())
            .collect();
        Self::from_rows(data).expect("rectangular literal")
    }

    /// Build a `rows x cols` matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return invalid(format!("column {j} has length {} not {rows}", col.len()));
            }
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                m.set(i, jj, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        Matrix {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        let mut m = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = m.get(i, j) + a * b;
                        m.set(i, j, v);
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return invalid("vector length does not match column count");
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// Stack the rows of `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows > 0 && other.rows > 0 && self.cols != other.cols {
            return invalid("column counts differ");
        }
        let cols = if self.rows == 0 { other.cols } else { self.cols };
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols,
            data,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Exact rank by forward elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let piv = m.get(r, c).clone();
            for i in r + 1..m.rows {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) / &piv;
                for j in c..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            r += 1;
        }
        r
    }

    /// Rank over F_p, `None` if some entry has a denominator divisible by p.
    /// Always `<=` the rational rank.
    pub fn rank_mod_p(&self) -> Option<usize> {
        let mut m: Vec<Fp> = self
            .data
            .iter()
            .map(Fp::from_rational)
            .collect::<Option<_>>()?;
        let cols = self.cols;
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| m[i * cols + c] != Fp::ZERO) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    m.swap(r * cols + j, p * cols + j);
                }
            }
            let inv = m[r * cols + c].inv().expect("nonzero pivot");
            for i in r + 1..self.rows {
                let f = m[i * cols + c].mul(inv);
                if f == Fp::ZERO {
                    continue;
                }
                for j in c..cols {
                    m[i * cols + j] = m[i * cols + j].sub(f.mul(m[r * cols + j]));
                }
            }
            r += 1;
        }
        Some(r)
    }

    /// Rank of the column subset, using the F_p shadow to accept full rank
    /// cheaply and confirming anything else over the rationals.
    pub fn column_rank(&self, cols: &[usize]) -> usize {
        let sub = self.select_columns(cols);
        let full = cols.len().min(self.rows);
        if sub.rank_mod_p() == Some(full) {
            return full;
        }
        sub.rank()
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return invalid("determinant of a non-square matrix");
        }
        let mut m = self.clone();
        let mut det = Scalar::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Scalar::zero());
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det *= &piv;
            for i in c + 1..m.rows {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) / &piv;
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(c, j);
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Basis of the right nullspace `{v : M v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f).clone();
                }
                v
            })
            .collect()
    }

    /// Indices of a maximal linearly independent set of rows, chosen greedily
    /// in order.
    pub fn independent_rows(&self) -> Vec<usize> {
        let (_, pivots) = self.transpose().rref();
        pivots
    }
}

impl fmt::Display for Matrix {
    /// `rows cols` header followed by one whitespace-separated row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_scalar).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Matrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or_else(|| Error::Parse {
            line: 1,
            msg: "missing `rows cols` header".into(),
        })?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse {
                line: hl,
                msg: "header must be two integers".into(),
            })?;
        let [rows, cols] = dims[..] else {
            return Err(Error::Parse {
                line: hl,
                msg: "header must be two integers".into(),
            });
        };
        let mut data = Vec::with_capacity(rows * cols);
        for (ln, line) in lines {
            let row: Vec<Scalar> = line
                .split_whitespace()
                .map(|t| {
                    parse_scalar(t).ok_or_else(|| Error::Parse {
                        line: ln,
                        msg: format!("bad rational `{t}`"),
                    })
                })
                .collect::<Result<_>>()?;
            if row.len() != cols {
                return Err(Error::Parse {
                    line: ln,
                    msg: format!("expected {cols} entries, found {}", row.len()),
                });
            }
            data.extend(row);
        }
        if data.len() != rows * cols {
            return Err(Error::Parse {
                line: hl,
                msg: format!("expected {rows} rows"),
            });
        }
        Ok(Matrix { rows, cols, data })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::scalar::{frac, int, random_rational};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Rank as the size of the largest nonvanishing minor, determinants taken
    /// by the Leibniz permutation sum. Independent of the elimination code.
    fn brute_rank(m: &Matrix) -> usize {
        fn det(m: &Matrix, rows: &[usize], cols: &[usize]) -> Scalar {
            let n = rows.len();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut total = Scalar::zero();
            permute(&mut perm, 0, &mut |p| {
                let mut inv = 0;
                for a in 0..n {
                    for b in a + 1..n {
                        if p[a] > p[b] {
                            inv += 1;
                        }
                    }
                }
                let mut term = if inv % 2 == 0 { int(1) } else { int(-1) };
                for a in 0..n {
                    term *= m.get(rows[a], cols[p[a]]);
                }
                total += term;
            });
            total
        }
        fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
            if k == p.len() {
                f(p);
                return;
            }
            for i in k..p.len() {
                p.swap(k, i);
                permute(p, k + 1, f);
                p.swap(k, i);
            }
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            crate::combinatorics::k_subsets(n, k)
        }
        for k in (1..=m.rows().min(m.cols())).rev() {
            for rs in subsets(m.rows(), k) {
                for cs in subsets(m.cols(), k) {
                    if !det(m, &rs, &cs).is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(Matrix::identity(3).rank(), 3);
        assert_eq!(Matrix::zeros(2, 4).rank(), 0);
        let m = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.determinant().unwrap(), int(0));
    }

    #[test]
    fn rank_matches_minor_oracle_on_random_low_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for r in 0..=3 {
            let a = Matrix::from_rows(
                (0..4).map(|_| (0..r).map(|_| random_rational(&mut rng)).collect()).collect(),
            )
            .unwrap_or_else(|_| Matrix::zeros(4, 0));
            let b = Matrix::from_rows(
                (0..r).map(|_| (0..5).map(|_| random_rational(&mut rng)).collect()).collect(),
            )
            .unwrap();
            let m = if r == 0 { Matrix::zeros(4, 5) } else { a.mul(&b).unwrap() };
            assert_eq!(m.rank(), r);
            assert_eq!(brute_rank(&m), r);
            assert!(m.rank_mod_p().unwrap() <= r);
        }
    }

    #[test]
    fn nullspace_is_annihilated() {
        let m = Matrix::from_i64(&[&[1, 2, 3, 4], &[2, 4, 7, 9]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn determinant_matches_known_value() {
        let m = Matrix::from_rows(vec![
            vec![frac(1, 2), int(3)],
            vec![int(4), frac(-1, 3)],
        ])
        .unwrap();
        assert_eq!(m.determinant().unwrap(), frac(-1, 6) - int(12));
    }

    #[test]
    fn text_roundtrip() {
        let m = Matrix::from_rows(vec![vec![frac(1, 2), int(-3)], vec![int(0), int(7)]]).unwrap();
        let s = m.to_string();
        assert_eq!(s, "2 2\n1/2 -3\n0 7\n");
        assert_eq!(s.parse::<Matrix>().unwrap(), m);
        assert!("2 2\n1 2\n".parse::<Matrix>().is_err());
    }

    #[test]
    fn independent_rows_picks_pivots() {
        let m = Matrix::from_i64(&[&[1, 0], &[2, 0], &[0, 1]]);
        assert_eq!(m.independent_rows(), vec![0, 2]);
    }
}
