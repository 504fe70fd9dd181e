use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{determinant, Rat};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` fixes the width when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has length {}, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(IntMatrix { rows: r, cols, data })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            cols,
        )
    }

    /// Matrix whose columns are the given vectors, each of length `len`.
    pub fn from_columns(columns: &[Vec<BigInt>], len: usize) -> Result<Self> {
        let mut m = Self::zeros(len, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != len {
                return Err(Error::Dimension(format!(
                    "column {j} has length {}, expected {len}",
                    c.len()
                )));
            }
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
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

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// Matrix product. Panics if the inner dimensions differ.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "vector length differs");
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    pub fn select_columns(&self, range: std::ops::Range<usize>) -> IntMatrix {
        let mut m = Self::zeros(self.rows, range.len());
        for i in 0..self.rows {
            for (k, j) in range.clone().enumerate() {
                m.data[i * m.cols + k] = self.get(i, j).clone();
            }
        }
        m
    }

    pub fn select_rows(&self, range: std::ops::Range<usize>) -> IntMatrix {
        IntMatrix {
            rows: range.len(),
            cols: self.cols,
            data: self.data[range.start * self.cols..range.end * self.cols].to_vec(),
        }
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let m: Vec<Vec<Rat>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| Rat::from_integer(x.clone())).collect())
            .collect();
        determinant(m).to_integer()
    }

    /// Rank over `Q`.
    pub fn rank(&self) -> usize {
        self.cols - self.kernel().cols
    }

    /// Saturated basis of the integer kernel `{x : M x = 0}`, as columns.
    ///
    /// The returned lattice equals `ker(M) ∩ Z^n`, so `Z^n / ker` is
    /// torsion-free.
    pub fn kernel(&self) -> IntMatrix {
        let n = self.cols;
        let mut basis: Vec<Vec<BigInt>> = (0..n)
            .map(|j| {
                let mut e = vec![BigInt::zero(); n];
                e[j] = BigInt::one();
                e
            })
            .collect();
        for i in 0..self.rows {
            let row = self.row(i);
            let support: Vec<usize> = (0..n).filter(|&k| !row[k].is_zero()).collect();
            if support.is_empty() {
                continue;
            }
            let mut vals: Vec<BigInt> = basis
                .iter()
                .map(|b| support.iter().map(|&k| &row[k] * &b[k]).sum())
                .collect();
            loop {
                let pivot = match min_abs_nonzero(&vals) {
                    Some(p) => p,
                    None => break,
                };
                let mut done = true;
                for j in 0..vals.len() {
                    if j == pivot || vals[j].is_zero() {
                        continue;
                    }
                    let q = &vals[j] / &vals[pivot];
                    let (head, tail) = split_pair(&mut basis, j, pivot);
                    axpy(head, &q, tail);
                    vals[j] = &vals[j] - &q * &vals[pivot];
                    if !vals[j].is_zero() {
                        done = false;
                    }
                }
                if done {
                    basis.swap_remove(pivot);
                    break;
                }
            }
        }
        basis.sort_by(|a, b| b.iter().map(|x| x.abs()).cmp(a.iter().map(|x| x.abs())));
        IntMatrix::from_columns(&basis, n).expect("consistent lengths")
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let d = k * s;
                self.data[dst * self.cols + j] += d;
            }
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let d = k * s;
                self.data[i * self.cols + dst] += d;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = &mut self.data[i * self.cols + j];
            *x = -std::mem::take(x);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let x = &mut self.data[i * self.cols + j];
            *x = -std::mem::take(x);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", r.join(", "))?;
        }
        Ok(())
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

fn min_abs_nonzero(v: &[BigInt]) -> Option<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .min_by(|(_, a), (_, b)| a.abs().cmp(&b.abs()))
        .map(|(i, _)| i)
}

fn split_pair<T>(v: &mut [T], a: usize, b: usize) -> (&mut T, &T) {
    assert_ne!(a, b);
    if a < b {
        let (l, r) = v.split_at_mut(b);
        (&mut l[a], &r[0])
    } else {
        let (l, r) = v.split_at_mut(a);
        (&mut r[0], &l[b])
    }
}

/// y -= q * x
fn axpy(y: &mut [BigInt], q: &BigInt, x: &[BigInt]) {
    for (a, b) in y.iter_mut().zip(x) {
        if !b.is_zero() {
            *a -= q * b;
        }
    }
}

/// Smith normal form `U·M·V = D` together with the inverses of `U` and `V`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries, each dividing the next.
    pub fn divisors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.divisors().len()
    }
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut u_inv = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let mut v_inv = IntMatrix::identity(c);

    let row_add = |a: &mut IntMatrix, u: &mut IntMatrix, ui: &mut IntMatrix, dst, src, k: &BigInt| {
        a.add_row(dst, src, k);
        u.add_row(dst, src, k);
        ui.add_col(src, dst, &-k);
    };
    let col_add = |a: &mut IntMatrix, v: &mut IntMatrix, vi: &mut IntMatrix, dst, src, k: &BigInt| {
        a.add_col(dst, src, k);
        v.add_col(dst, src, k);
        vi.add_row(src, dst, &-k);
    };

    for t in 0..r.min(c) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let x = a.get(i, j);
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap_rows(t, bi);
        u.swap_rows(t, bi);
        u_inv.swap_cols(t, bi);
        a.swap_cols(t, bj);
        v.swap_cols(t, bj);
        v_inv.swap_rows(t, bj);

        loop {
            let mut clean = true;
            for i in t + 1..r {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -a.get(i, t).div_floor(a.get(t, t));
                row_add(&mut a, &mut u, &mut u_inv, i, t, &q);
                if !a.get(i, t).is_zero() {
                    clean = false;
                    a.swap_rows(t, i);
                    u.swap_rows(t, i);
                    u_inv.swap_cols(t, i);
                }
            }
            for j in t + 1..c {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -a.get(t, j).div_floor(a.get(t, t));
                col_add(&mut a, &mut v, &mut v_inv, j, t, &q);
                if !a.get(t, j).is_zero() {
                    clean = false;
                    a.swap_cols(t, j);
                    v.swap_cols(t, j);
                    v_inv.swap_rows(t, j);
                }
            }
            if !clean {
                continue;
            }
            let p = a.get(t, t).clone();
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => row_add(&mut a, &mut u, &mut u_inv, t, i, &BigInt::one()),
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }
    Smith { u, d: a, v, u_inv, v_inv }
}

/// Solves `K x = b` for a matrix `K` with saturated column lattice, using a
/// precomputed Smith form of `K`. Returns `None` if `b` is not in the
/// column lattice.
pub(crate) fn solve_in_columns(smith: &Smith, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let y = smith.u.mul_vec(b);
    let divs = smith.divisors();
    let k = divs.len();
    if y[k..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut z = vec![BigInt::zero(); smith.v.rows];
    for i in 0..k {
        let (q, rem) = y[i].div_rem(&divs[i]);
        if !rem.is_zero() {
            return None;
        }
        z[i] = q;
    }
    Some(smith.v.mul_vec(&z))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn check(mat: &IntMatrix) -> Smith {
        let s = smith_normal_form(mat);
        assert_eq!(s.u.mul(mat).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(mat.rows()));
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(mat.cols()));
        s
    }

    #[test]
    fn smith_examples() {
        assert_eq!(check(&IntMatrix::identity(2)).d, IntMatrix::identity(2));
        let s = check(&m(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.divisors(), vec![BigInt::from(2), BigInt::from(4)]);
        assert!(check(&IntMatrix::zeros(2, 3)).d.is_zero());
        let s = check(&m(&[&[-2, 1], &[1, -2]]));
        assert_eq!(s.divisors(), vec![BigInt::from(1), BigInt::from(3)]);
    }

    #[test]
    fn kernel_is_saturated() {
        let k = m(&[&[2, 4, 6]]).kernel();
        assert_eq!(k.cols(), 2);
        let s = smith_normal_form(&k);
        assert!(s.divisors().iter().all(One::is_one));
        assert!(m(&[&[2, 4, 6]]).mul(&k).is_zero());
        assert_eq!(m(&[&[1, 0], &[0, 1]]).kernel().cols(), 0);
        assert_eq!(IntMatrix::zeros(1, 3).kernel().cols(), 3);
    }

    #[test]
    fn solving() {
        let k = IntMatrix::from_columns(&[vec![1.into(), 1.into(), 0.into()]], 3).unwrap();
        let s = smith_normal_form(&k);
        assert_eq!(
            solve_in_columns(&s, &[3.into(), 3.into(), 0.into()]),
            Some(vec![BigInt::from(3)])
        );
        assert_eq!(solve_in_columns(&s, &[1.into(), 0.into(), 0.into()]), None);
    }

    #[test]
    fn determinant_and_rank() {
        assert_eq!(m(&[&[2, 4], &[6, 8]]).determinant(), BigInt::from(-8));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
    }
}
