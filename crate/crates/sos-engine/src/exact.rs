//! Dense linear algebra over the rationals.

use num_rational::BigRational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row-major dense rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(BigRational::zero(), |s, (a, b)| s + a * b)
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduces in place to reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).recip();
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in c..self.cols {
                    if self.get(r, j).is_zero() {
                        continue;
                    }
                    let v = self.get(i, j) - &f * self.get(r, j);
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{v : self·v = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::from_integer(1.into());
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    /// Some solution of `self·x = b`, or `None` if the system is inconsistent.
    ///
    /// Fraction-free (Bareiss) elimination on the integer-scaled augmented
    /// matrix: every intermediate entry is a minor, so no gcd is ever taken
    /// during the forward sweep.
    pub fn solve(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(b.len(), self.rows);
        let width = self.cols + 1;
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row: Vec<&BigRational> = (0..self.cols).map(|j| self.get(i, j)).chain([&b[i]]).collect();
                let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
            })
            .collect();
        let mut prev = BigInt::one();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let (head, tail) = m.split_at_mut(r + 1);
            let pivot_row = &head[r];
            for row in tail.iter_mut() {
                for j in c + 1..width {
                    let v = &pivot_row[c] * &row[j] - &row[c] * &pivot_row[j];
                    row[j] = v / &prev;
                }
                row[c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        if m[r..].iter().any(|row| !row[self.cols].is_zero()) {
            return None;
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for (k, &pc) in pivots.iter().enumerate().rev() {
            let row = &m[k];
            let mut acc = BigRational::from_integer(row[self.cols].clone());
            for &qc in &pivots[k + 1..] {
                if !row[qc].is_zero() {
                    acc -= &x[qc] * BigRational::from_integer(row[qc].clone());
                }
            }
            x[pc] = acc / BigRational::from_integer(row[pc].clone());
        }
        Some(x)
    }
}

/// Outcome of a symmetric `LDLᵀ` elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ldl {
    /// Diagonal pivots, as far as the elimination got.
    pub pivots: Vec<BigRational>,
    pub psd: bool,
}

/// Exact positive-semidefiniteness test by symmetric elimination without
/// pivoting. A zero pivot is accepted only when the rest of its column is
/// zero too.
pub fn ldl_psd(m: &RatMatrix) -> Ldl {
    assert!(m.is_symmetric(), "LDLᵀ needs a symmetric matrix");
    let n = m.nrows();
    let mut a = m.clone();
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        let d = a.get(k, k).clone();
        if d.is_negative() {
            pivots.push(d);
            return Ldl { pivots, psd: false };
        }
        if d.is_zero() {
            pivots.push(d);
            if (k + 1..n).any(|i| !a.get(i, k).is_zero()) {
                return Ldl { pivots, psd: false };
            }
            continue;
        }
        for i in k + 1..n {
            let lik = a.get(i, k) / &d;
            if lik.is_zero() {
                continue;
            }
            for j in k + 1..=i {
                let akj = a.get(k, j).clone();
                if akj.is_zero() {
                    continue;
                }
                let v = a.get(i, j) - &lik * akj;
                a.set(i, j, v.clone());
                a.set(j, i, v);
            }
        }
        pivots.push(d);
    }
    Ldl { pivots, psd: true }
}

#[cfg(test)]
mod tests {
    use super::*;
    use poly_core::{rat, ratio};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect())
    }

    #[test]
    fn nullspace_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(a.rank(), 1);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solving() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = a.solve(&[rat(3), rat(5)]).unwrap();
        assert_eq!(x, vec![ratio(4, 5), ratio(7, 5)]);
        let singular = m(&[&[1, 1], &[1, 1]]);
        assert!(singular.solve(&[rat(1), rat(2)]).is_none());
        assert!(singular.solve(&[rat(2), rat(2)]).is_some());
    }

    #[test]
    fn ldl_classifies() {
        assert!(ldl_psd(&m(&[&[2, 1], &[1, 2]])).psd);
        assert!(ldl_psd(&m(&[&[1, 1], &[1, 1]])).psd);
        assert!(!ldl_psd(&m(&[&[1, 2], &[2, 1]])).psd);
        assert!(!ldl_psd(&m(&[&[0, 1], &[1, 5]])).psd);
        assert!(ldl_psd(&m(&[&[0, 0], &[0, 5]])).psd);
        assert!(!ldl_psd(&m(&[&[-1]])).psd);
        let pivots = ldl_psd(&m(&[&[4, 2], &[2, 3]])).pivots;
        assert_eq!(pivots, vec![rat(4), rat(2)]);
    }
}
