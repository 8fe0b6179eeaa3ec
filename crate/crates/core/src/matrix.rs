//! Dense matrices over `Q`.

use std::fmt;
use std::ops::Mul;

use num_traits::{One, Zero};

use crate::rational::{fmt_q, parse_q, Q};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Q::one();
        }
        m
    }

    pub fn scalar(n: usize, c: Q) -> Self {
        Mat::diag(&vec![c; n])
    }

    pub fn diag(d: &[Q]) -> Self {
        let n = d.len();
        let mut m = Mat::zeros(n, n);
        for (i, x) in d.iter().enumerate() {
            m.data[i * n + i] = x.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| crate::rational::q(x)).collect()).collect())
            .expect("rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Q) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn neg(&self) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        self.add(&o.neg())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Sub-block of `h` rows and `w` columns starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Mat {
        let mut b = Mat::zeros(h, w);
        for i in 0..h {
            for j in 0..w {
                b.data[i * w + j] = self.get(r0 + i, c0 + j).clone();
            }
        }
        b
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    /// `[[a, b], [c, d]]` from four equally sized square blocks.
    pub fn from_blocks(a: &Mat, b: &Mat, c: &Mat, d: &Mat) -> Mat {
        let n = a.rows;
        let mut m = Mat::zeros(2 * n, 2 * n);
        m.set_block(0, 0, a);
        m.set_block(0, n, b);
        m.set_block(n, 0, c);
        m.set_block(n, n, d);
        m
    }

    /// Block-diagonal matrix.
    pub fn block_diag(blocks: &[&Mat]) -> Mat {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Mat::zeros(r, c);
        let (mut i, mut j) = (0, 0);
        for b in blocks {
            m.set_block(i, j, b);
            i += b.rows;
            j += b.cols;
        }
        m
    }

    pub fn mul_ref(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.data[idx] += a * b;
                }
            }
        }
        out
    }

    /// Determinant by Gaussian elimination over `Q`.
    pub fn det(&self) -> Q {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Q::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Q::zero();
            };
            if piv != col {
                m.swap_rows(piv, col);
                det = -det;
            }
            let pv = m.get(col, col).clone();
            det *= &pv;
            for r in col + 1..n {
                let f = m.get(r, col) / &pv;
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = m.get(r, c) - &f * m.get(col, c);
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Mat> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a.get(r, col).is_zero()).ok_or(Error::Singular)?;
            a.swap_rows(piv, col);
            inv.swap_rows(piv, col);
            let pv = a.get(col, col).recip();
            a.scale_row(col, &pv);
            inv.scale_row(col, &pv);
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                a.add_row_multiple(r, col, &-f.clone());
                inv.add_row_multiple(r, col, &-f);
            }
        }
        Ok(inv)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(piv, rank);
            let pv = m.get(rank, col).clone();
            for r in rank + 1..self.rows {
                let f = m.get(r, col) / &pv;
                if !f.is_zero() {
                    m.add_row_multiple(r, rank, &-f);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn scale_row(&mut self, r: usize, c: &Q) {
        for j in 0..self.cols {
            let v = self.get(r, j) * c;
            self.set(r, j, v);
        }
    }

    pub fn scale_col(&mut self, col: usize, c: &Q) {
        for i in 0..self.rows {
            let v = self.get(i, col) * c;
            self.set(i, col, v);
        }
    }

    /// Row `dst += f * row src`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, f: &Q) {
        for j in 0..self.cols {
            let s = self.get(src, j);
            if s.is_zero() {
                continue;
            }
            let v = self.get(dst, j) + f * s;
            self.set(dst, j, v);
        }
    }

    /// Column `dst += f * column src`.
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, f: &Q) {
        for i in 0..self.rows {
            let s = self.get(i, src);
            if s.is_zero() {
                continue;
            }
            let v = self.get(i, dst) + f * s;
            self.set(i, dst, v);
        }
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| fmt_q(self.get(i, j))).collect()).collect()
    }

    pub fn from_strings(rows: &[Vec<String>]) -> Result<Mat> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Mat::from_rows(parsed)
    }

    /// Parses a JSON array of arrays of `"num/den"` strings (bare numbers allowed).
    pub fn from_json(s: &str) -> Result<Mat> {
        let v: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let rows = v.as_array().ok_or_else(|| Error::Parse("expected an array of rows".into()))?;
        let mut out = Vec::with_capacity(rows.len());
        for r in rows {
            let r = r.as_array().ok_or_else(|| Error::Parse("expected a row array".into()))?;
            let mut row = Vec::with_capacity(r.len());
            for x in r {
                let q = match x {
                    serde_json::Value::String(s) => parse_q(s)?,
                    serde_json::Value::Number(n) if n.is_i64() => crate::rational::q(n.as_i64().unwrap()),
                    other => return Err(Error::Parse(format!("bad matrix entry {other}"))),
                };
                row.push(q);
            }
            out.push(row);
        }
        Mat::from_rows(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_strings()).expect("strings serialize")
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        self.mul_ref(rhs)
    }
}

impl Mul for Mat {
    type Output = Mat;
    fn mul(self, rhs: Mat) -> Mat {
        self.mul_ref(&rhs)
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_strings())
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| fmt_q(self.get(i, j))).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
