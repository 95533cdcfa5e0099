//! Smith normal form of dense integer matrices, with optional tracking of
//! the unimodular transforms `P·A·Q = S`.

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> IntMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix { rows: rows.len(), cols, data: rows.concat() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i128) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: i128) {
        self.data[i * self.cols + j] += v;
    }

    pub fn mul(&self, other: &IntMatrix) -> Option<IntMatrix> {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = a.checked_mul(other.get(k, j))?.checked_add(out.get(i, j))?;
                    out.set(i, j, v);
                }
            }
        }
        Some(out)
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

    /// row[dst] += k·row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: i128) -> Result<()> {
        for j in 0..self.cols {
            let s = self.data[src * self.cols + j];
            if s != 0 {
                let d = &mut self.data[dst * self.cols + j];
                *d = s.checked_mul(k).and_then(|v| v.checked_add(*d)).ok_or_else(overflow)?;
            }
        }
        Ok(())
    }

    /// col[dst] += k·col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: i128) -> Result<()> {
        for i in 0..self.rows {
            let s = self.data[i * self.cols + src];
            if s != 0 {
                let d = &mut self.data[i * self.cols + dst];
                *d = s.checked_mul(k).and_then(|v| v.checked_add(*d)).ok_or_else(overflow)?;
            }
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self.data[i * self.cols + j] = -self.data[i * self.cols + j];
        }
    }

    /// Replaces rows (a, b) by (x·a + y·b, z·a + w·b).
    fn mix_rows(&mut self, a: usize, b: usize, [x, y, z, w]: [i128; 4]) -> Result<()> {
        for j in 0..self.cols {
            let (u, v) = (self.get(a, j), self.get(b, j));
            self.set(a, j, lin(x, u, y, v)?);
            self.set(b, j, lin(z, u, w, v)?);
        }
        Ok(())
    }

    /// Replaces columns (a, b) by (x·a + z·b, y·a + w·b).
    fn mix_cols(&mut self, a: usize, b: usize, [x, y, z, w]: [i128; 4]) -> Result<()> {
        for i in 0..self.rows {
            let (u, v) = (self.get(i, a), self.get(i, b));
            self.set(i, a, lin(x, u, z, v)?);
            self.set(i, b, lin(y, u, w, v)?);
        }
        Ok(())
    }
}

fn lin(a: i128, u: i128, b: i128, v: i128) -> Result<i128> {
    a.checked_mul(u).zip(b.checked_mul(v)).and_then(|(p, q)| p.checked_add(q)).ok_or_else(overflow)
}

fn overflow() -> Error {
    Error::Unsupported("integer overflow during Smith normal form".into())
}

/// `P·A·Q = diag(diag)` with `diag` a divisibility chain of nonnegative
/// entries, zeros last.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<i128>,
    pub p: Option<IntMatrix>,
    pub q: Option<IntMatrix>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.iter().take_while(|&&d| d != 0).count()
    }

    /// Diagonal entries above one, the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<i128> {
        self.diag.iter().copied().filter(|&d| d > 1).collect()
    }
}

pub fn smith(a: &IntMatrix, track_p: bool, track_q: bool) -> Result<Smith> {
    let (m, n) = (a.rows, a.cols);
    let mut a = a.clone();
    let mut p = track_p.then(|| IntMatrix::identity(m));
    let mut q = track_q.then(|| IntMatrix::identity(n));

    macro_rules! row_op {
        ($dst:expr, $src:expr, $k:expr) => {{
            a.add_row($dst, $src, $k)?;
            if let Some(p) = p.as_mut() {
                p.add_row($dst, $src, $k)?;
            }
        }};
    }
    macro_rules! col_op {
        ($dst:expr, $src:expr, $k:expr) => {{
            a.add_col($dst, $src, $k)?;
            if let Some(q) = q.as_mut() {
                q.add_col($dst, $src, $k)?;
            }
        }};
    }

    let steps = m.min(n);
    let mut t = 0;
    while t < steps {
        let Some((pi, pj)) = pick_pivot(&a, t) else { break };
        a.swap_rows(t, pi);
        if let Some(p) = p.as_mut() {
            p.swap_rows(t, pi);
        }
        a.swap_cols(t, pj);
        if let Some(q) = q.as_mut() {
            q.swap_cols(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                let v = a.get(i, t);
                if v != 0 {
                    row_op!(i, t, -Integer::div_floor(&v, &a.get(t, t)));
                    if a.get(i, t) != 0 {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..n {
                let v = a.get(t, j);
                if v != 0 {
                    col_op!(j, t, -Integer::div_floor(&v, &a.get(t, t)));
                    if a.get(t, j) != 0 {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
            // a remainder smaller than the pivot survived: move it to (t, t)
            let (mut bi, mut bj, mut best) = (t, t, a.get(t, t).abs());
            for i in t + 1..m {
                let v = a.get(i, t).abs();
                if v != 0 && v < best {
                    (bi, bj, best) = (i, t, v);
                }
            }
            for j in t + 1..n {
                let v = a.get(t, j).abs();
                if v != 0 && v < best {
                    (bi, bj, best) = (t, j, v);
                }
            }
            a.swap_rows(t, bi);
            if let Some(p) = p.as_mut() {
                p.swap_rows(t, bi);
            }
            a.swap_cols(t, bj);
            if let Some(q) = q.as_mut() {
                q.swap_cols(t, bj);
            }
        }
        if a.get(t, t) < 0 {
            a.negate_row(t);
            if let Some(p) = p.as_mut() {
                p.negate_row(t);
            }
        }
        t += 1;
    }

    let mut diag: Vec<i128> = (0..steps).map(|i| a.get(i, i)).collect();
    // turn the diagonal into a divisibility chain with 2×2 gcd/lcm moves
    let r = diag.iter().take_while(|&&d| d != 0).count();
    for i in 0..r {
        for j in i + 1..r {
            let (x, y) = (diag[i], diag[j]);
            if y % x == 0 {
                continue;
            }
            let e = x.extended_gcd(&y);
            let g = e.gcd;
            let (s, u) = (e.x, e.y);
            // [s u; -y/g x/g]·diag(x, y)·[1 -u·y/g; 1 s·x/g] = diag(g, lcm)
            if let Some(p) = p.as_mut() {
                p.mix_rows(i, j, [s, u, -y / g, x / g])?;
            }
            if let Some(q) = q.as_mut() {
                q.mix_cols(i, j, [1, -u * (y / g), 1, s * (x / g)])?;
            }
            diag[i] = g;
            diag[j] = (x / g).checked_mul(y).ok_or_else(overflow)?;
        }
    }
    Ok(Smith { diag, p, q })
}

/// A unit entry if one exists in the trailing block, else the smallest
/// nonzero magnitude.
fn pick_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, i128)> = None;
    for j in t..a.cols {
        for i in t..a.rows {
            let v = a.get(i, j).abs();
            if v == 0 {
                continue;
            }
            if v == 1 {
                return Some((i, j));
            }
            if best.is_none_or(|(_, _, b)| v < b) {
                best = Some((i, j, v));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}
