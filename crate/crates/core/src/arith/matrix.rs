//! Dense exact matrices with fraction-free (Bareiss) elimination.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::cyclotomic::Cyclotomic;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Field operations needed by elimination. `*_like` keep the operand's domain (e.g. conductor).
pub trait Scalar: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_s(&self) -> bool;
    fn add_s(&self, o: &Self) -> Self;
    fn sub_s(&self, o: &Self) -> Self;
    fn mul_s(&self, o: &Self) -> Self;
    fn div_s(&self, o: &Self) -> Result<Self>;
    /// Rescale a row by a nonzero factor to keep entries small; default leaves it alone.
    fn tidy_row(_row: &mut [Self]) {}
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_s(&self) -> bool {
        self.is_zero()
    }
    fn add_s(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_s(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_s(&self, o: &Self) -> Self {
        self * o
    }
    fn div_s(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self / o)
    }
    fn tidy_row(row: &mut [Self]) {
        // clear denominators and strip the content
        let l = row.iter().fold(BigInt::one(), |a, q| a.lcm(q.denom()));
        let g = row
            .iter()
            .filter(|q| !q.is_zero())
            .fold(BigInt::zero(), |a, q| a.gcd(&(q.numer() * (&l / q.denom()))));
        if g.is_zero() {
            return;
        }
        let f = Rational::new(l, g);
        for q in row.iter_mut() {
            if !q.is_zero() {
                *q = &*q * &f;
            }
        }
    }
}

impl Scalar for Cyclotomic {
    fn zero_like(&self) -> Self {
        Cyclotomic::zero(self.conductor())
    }
    fn one_like(&self) -> Self {
        Cyclotomic::one(self.conductor())
    }
    fn is_zero_s(&self) -> bool {
        self.is_zero()
    }
    fn add_s(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn sub_s(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn mul_s(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn div_s(&self, o: &Self) -> Result<Self> {
        self.div(o)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix<S: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> ExactMatrix<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    fn row_vecs(&self) -> Vec<Vec<S>> {
        self.data.chunks(self.cols.max(1)).map(|c| c.to_vec()).collect()
    }

    pub fn determinant(&self) -> Result<S> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Err(Error::DimensionMismatch("empty matrix".into()));
        }
        let mut m = self.row_vecs();
        let mut sign_neg = false;
        let mut prev = m[0][0].one_like();
        for k in 0..n {
            let p = match (k..n).find(|&i| !m[i][k].is_zero_s()) {
                Some(p) => p,
                None => return Ok(m[0][0].zero_like()),
            };
            if p != k {
                m.swap(p, k);
                sign_neg = !sign_neg;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = m[k][k].mul_s(&m[i][j]).sub_s(&m[i][k].mul_s(&m[k][j]));
                    m[i][j] = v.div_s(&prev)?;
                }
                m[i][k] = m[i][k].zero_like();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if sign_neg { d.zero_like().sub_s(&d) } else { d })
    }

    /// Fraction-free forward elimination; returns pivot columns.
    fn echelon(m: &mut [Vec<S>], ncols: usize) -> Result<Vec<usize>> {
        for row in m.iter_mut() {
            S::tidy_row(row);
        }
        let nrows = m.len();
        let mut pivots = Vec::new();
        let mut r = 0;
        let mut prev: Option<S> = None;
        for c in 0..ncols {
            if r == nrows {
                break;
            }
            let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero_s()) else {
                continue;
            };
            m.swap(p, r);
            for i in r + 1..nrows {
                if m[i][c].is_zero_s() {
                    if let Some(pv) = &prev {
                        // keep the Bareiss scaling uniform across rows
                        for j in c + 1..m[i].len() {
                            let v = m[r][c].mul_s(&m[i][j]);
                            m[i][j] = v.div_s(pv)?;
                        }
                    } else {
                        for j in c + 1..m[i].len() {
                            m[i][j] = m[r][c].mul_s(&m[i][j]);
                        }
                    }
                    continue;
                }
                for j in c + 1..m[i].len() {
                    let v = m[r][c].mul_s(&m[i][j]).sub_s(&m[i][c].mul_s(&m[r][j]));
                    m[i][j] = match &prev {
                        Some(pv) => v.div_s(pv)?,
                        None => v,
                    };
                }
                m[i][c] = m[i][c].zero_like();
            }
            prev = Some(m[r][c].clone());
            pivots.push(c);
            r += 1;
        }
        Ok(pivots)
    }

    pub fn rank(&self) -> Result<usize> {
        let mut m = self.row_vecs();
        Ok(Self::echelon(&mut m, self.cols)?.len())
    }

    /// One exact solution of `A x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[S]) -> Result<Option<Vec<S>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has {} entries for {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut m = self.row_vecs();
        for (row, bi) in m.iter_mut().zip(b) {
            row.push(bi.clone());
        }
        let pivots = Self::echelon(&mut m, self.cols + 1)?;
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let zero = match self.data.first().or(b.first()) {
            Some(s) => s.zero_like(),
            None => return Ok(Some(Vec::new())),
        };
        let mut x = vec![zero; self.cols];
        for (r, &c) in pivots.iter().enumerate().rev() {
            let mut acc = m[r][self.cols].clone();
            for j in c + 1..self.cols {
                if !m[r][j].is_zero_s() {
                    acc = acc.sub_s(&m[r][j].mul_s(&x[j]));
                }
            }
            x[c] = acc.div_s(&m[r][c])?;
        }
        Ok(Some(x))
    }

    /// Basis of the right null space.
    pub fn kernel_basis(&self) -> Result<Vec<Vec<S>>> {
        let mut m = self.row_vecs();
        let pivots = Self::echelon(&mut m, self.cols)?;
        let Some(sample) = self.data.first() else {
            return Ok(Vec::new());
        };
        // back to reduced form
        for (r, &c) in pivots.iter().enumerate() {
            let p = m[r][c].clone();
            for j in c..self.cols {
                m[r][j] = m[r][j].div_s(&p)?;
            }
        }
        for (r, &c) in pivots.iter().enumerate().rev() {
            for i in 0..r {
                if m[i][c].is_zero_s() {
                    continue;
                }
                let f = m[i][c].clone();
                for j in c..self.cols {
                    let v = m[i][j].sub_s(&f.mul_s(&m[r][j]));
                    m[i][j] = v;
                }
            }
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![sample.zero_like(); self.cols];
            v[free] = sample.one_like();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = sample.zero_like().sub_s(&m[r][free]);
            }
            basis.push(v);
        }
        Ok(basis)
    }

    pub fn mul_vec(&self, x: &[S]) -> Result<Vec<S>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(self.get(i, 0).zero_like(), |acc, j| {
                    acc.add_s(&self.get(i, j).mul_s(&x[j]))
                })
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    fn qm(rows: &[&[i64]]) -> ExactMatrix<Rational> {
        ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn identity_system() {
        let a = qm(&[&[1, 0], &[0, 1]]);
        let b = vec![int(3), int(-4)];
        assert_eq!(a.solve(&b).unwrap().unwrap(), b);
    }

    #[test]
    fn small_rational_system() {
        let a = qm(&[&[1, 1], &[1, -1]]);
        assert_eq!(a.solve(&[int(2), int(0)]).unwrap().unwrap(), vec![int(1), int(1)]);
        assert_eq!(a.determinant().unwrap(), int(-2));
    }

    #[test]
    fn inconsistent_and_kernel() {
        let a = qm(&[&[1, 2], &[2, 4]]);
        assert!(a.solve(&[int(1), int(3)]).unwrap().is_none());
        assert_eq!(a.determinant().unwrap(), int(0));
        let k = a.kernel_basis().unwrap();
        assert_eq!(k, vec![vec![int(-2), int(1)]]);
        assert!(a.solve(&[int(1)]).is_err());
    }

    #[test]
    fn gaussian_system_from_dihedral_component() {
        let c = |a: i64, b: i64| Cyclotomic::from_rational(4, int(a)).add(&Cyclotomic::zeta_power(4, 1).scale(&int(b)));
        let a = ExactMatrix::from_rows(vec![vec![c(1, 1), c(1, -1)], vec![c(1, -1), c(1, 1)]]).unwrap();
        let x = a.solve(&[c(2, 0), c(0, 2)]).unwrap().unwrap();
        assert_eq!(x, vec![c(0, 0), c(1, 1)]);
    }
}
