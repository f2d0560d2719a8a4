//! Exact integer matrices and Smith normal form.
//!
//! Arithmetic is `i128` and overflow-checked: an overflow aborts the
//! computation with [`Error::Overflow`], it never wraps. The pivoting
//! strategy picks a nonzero entry of minimal absolute value in the
//! remaining submatrix before each elimination round, which keeps
//! entry growth tame on the sparse boundary matrices produced by
//! normalized chains.

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i128>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<i128>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        IntMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i128) {
        self.data[i * self.cols + j] = v;
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Checked product; `self` is rows x k, `rhs` k x cols.
    pub fn mul(&self, rhs: &IntMat) -> Result<IntMat> {
        assert_eq!(self.cols, rhs.rows);
        let mut out = IntMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b == 0 {
                        continue;
                    }
                    let prod = a.checked_mul(b).ok_or(Error::Overflow)?;
                    let sum = out.get(i, j).checked_add(prod).ok_or(Error::Overflow)?;
                    out.set(i, j, sum);
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn row(&self, i: usize) -> &[i128] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
}

/// Outcome of a Smith normal form computation: the elementary divisors
/// (positive, each dividing the next) and the rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub divisors: Vec<i128>,
    pub rank: usize,
}

fn checked_sub_mul_row(
    target: &mut [i128],
    source: &[i128],
    q: i128,
) -> Result<()> {
    for (t, &s) in target.iter_mut().zip(source.iter()) {
        let prod = q.checked_mul(s).ok_or(Error::Overflow)?;
        *t = t.checked_sub(prod).ok_or(Error::Overflow)?;
    }
    Ok(())
}

/// Smith normal form of a dense matrix.
pub fn smith_normal_form(mat: &IntMat) -> Result<SnfResult> {
    let mut a = mat.clone();
    let (nr, nc) = (a.rows, a.cols);
    let mut divisors = Vec::new();
    let mut k = 0usize;
    while k < nr.min(nc) {
        // Locate a pivot of minimal absolute value in the submatrix.
        let mut pivot: Option<(usize, usize, i128)> = None;
        for i in k..nr {
            for j in k..nc {
                let v = a.get(i, j);
                if v != 0 && pivot.map_or(true, |(_, _, p)| v.abs() < p.abs()) {
                    pivot = Some((i, j, v));
                }
            }
        }
        let Some((pi, pj, _)) = pivot else { break };
        swap_rows(&mut a, k, pi);
        swap_cols(&mut a, k, pj);
        if a.get(k, k) < 0 {
            negate_row(&mut a, k);
        }

        // Clear row and column k; repeat while remainders pop up.
        loop {
            let p = a.get(k, k);
            debug_assert!(p > 0);
            let mut clean = true;
            for i in k + 1..nr {
                let v = a.get(i, k);
                if v != 0 {
                    let q = v.div_euclid(p);
                    if q != 0 {
                        let (top, bottom) = rows_mut(&mut a, k, i);
                        checked_sub_mul_row(bottom, top, q)?;
                    }
                    if a.get(i, k) != 0 {
                        // Remainder is strictly smaller than p; promote it.
                        swap_rows(&mut a, k, i);
                        clean = false;
                    }
                }
            }
            for j in k + 1..nc {
                let v = a.get(k, j);
                if v != 0 {
                    let q = v.div_euclid(a.get(k, k));
                    if q != 0 {
                        sub_mul_col(&mut a, j, k, q)?;
                    }
                    if a.get(k, j) != 0 {
                        swap_cols(&mut a, k, j);
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }

        // Divisibility: fold any entry not divisible by the pivot into
        // row k and re-run the elimination for this k.
        let p = a.get(k, k);
        let mut redo = false;
        'scan: for i in k + 1..nr {
            for j in k + 1..nc {
                if a.get(i, j) % p != 0 {
                    let (top, bottom) = rows_mut(&mut a, k, i);
                    checked_sub_mul_row(top, bottom, -1)?;
                    redo = true;
                    break 'scan;
                }
            }
        }
        if redo {
            continue;
        }
        divisors.push(p);
        k += 1;
    }
    let rank = divisors.len();
    Ok(SnfResult { divisors, rank })
}

fn swap_rows(a: &mut IntMat, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..a.cols {
        let (x, y) = (a.get(i, c), a.get(j, c));
        a.set(i, c, y);
        a.set(j, c, x);
    }
}

fn swap_cols(a: &mut IntMat, i: usize, j: usize) {
    if i == j {
        return;
    }
    for r in 0..a.rows {
        let (x, y) = (a.get(r, i), a.get(r, j));
        a.set(r, i, y);
        a.set(r, j, x);
    }
}

fn negate_row(a: &mut IntMat, i: usize) {
    for c in 0..a.cols {
        let v = a.get(i, c);
        a.set(i, c, -v);
    }
}

fn sub_mul_col(a: &mut IntMat, target: usize, source: usize, q: i128) -> Result<()> {
    for r in 0..a.rows {
        let prod = q.checked_mul(a.get(r, source)).ok_or(Error::Overflow)?;
        let v = a.get(r, target).checked_sub(prod).ok_or(Error::Overflow)?;
        a.set(r, target, v);
    }
    Ok(())
}

/// Two disjoint mutable row slices, in argument order.
fn rows_mut(a: &mut IntMat, i: usize, j: usize) -> (&mut [i128], &mut [i128]) {
    assert_ne!(i, j);
    let cols = a.cols;
    if i < j {
        let (head, tail) = a.data.split_at_mut(j * cols);
        (&mut head[i * cols..i * cols + cols], &mut tail[..cols])
    } else {
        let (head, tail) = a.data.split_at_mut(i * cols);
        (&mut tail[..cols], &mut head[j * cols..j * cols + cols])
    }
}

/// Sparse row: (column, coefficient) pairs with nonzero coefficients.
pub type SparseRow = Vec<(usize, i128)>;

/// Elementary divisors and rank of the row lattice spanned by sparse
/// rows inside `Z^cols`.
///
/// Rows are folded one by one into a gcd row-echelon basis (unimodular
/// row operations only, which leave the row lattice unchanged), then
/// the small dense basis goes through [`smith_normal_form`]. This is
/// how boundary matrices with many rows and few columns stay cheap.
pub fn lattice_invariants<I>(rows: I, cols: usize) -> Result<SnfResult>
where
    I: IntoIterator<Item = SparseRow>,
{
    // basis[c] = row with leading (leftmost) nonzero column c.
    let mut basis: Vec<Option<Vec<i128>>> = vec![None; cols];
    for sparse in rows {
        let mut row = vec![0i128; cols];
        for (c, v) in sparse {
            row[c] = row[c].checked_add(v).ok_or(Error::Overflow)?;
        }
        loop {
            let Some(lead) = row.iter().position(|&v| v != 0) else {
                break;
            };
            match &mut basis[lead] {
                slot @ None => {
                    *slot = Some(row);
                    break;
                }
                Some(b) => {
                    // Euclid on the leading entries.
                    let q = row[lead].div_euclid(b[lead]);
                    if q != 0 {
                        checked_sub_mul_row(&mut row, b, q)?;
                    }
                    if row[lead] != 0 {
                        std::mem::swap(b, &mut row);
                    }
                }
            }
        }
    }
    let dense: Vec<Vec<i128>> = basis.into_iter().flatten().collect();
    if dense.is_empty() {
        return Ok(SnfResult {
            divisors: vec![],
            rank: 0,
        });
    }
    smith_normal_form(&IntMat::from_rows(dense))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_matrix() {
        let m = IntMat::zeros(3, 2);
        let r = smith_normal_form(&m).unwrap();
        assert_eq!(r.rank, 0);
        assert!(r.divisors.is_empty());
    }

    #[test]
    fn diagonal_already_divisible() {
        let m = IntMat::from_rows(vec![vec![2, 0], vec![0, 6]]);
        let r = smith_normal_form(&m).unwrap();
        assert_eq!(r.divisors, vec![2, 6]);
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn hand_reduced_oracle() {
        // [[2,4],[4,6]]: gcd of entries 2, |det| = 4, so divisors (2, 2).
        let m = IntMat::from_rows(vec![vec![2, 4], vec![4, 6]]);
        let r = smith_normal_form(&m).unwrap();
        assert_eq!(r.divisors, vec![2, 2]);
    }

    #[test]
    fn divisibility_chain() {
        let m = IntMat::from_rows(vec![vec![6, 0], vec![0, 4]]);
        let r = smith_normal_form(&m).unwrap();
        assert_eq!(r.divisors, vec![2, 12]);
    }

    #[test]
    fn lattice_matches_dense() {
        let rows = vec![
            vec![(0, 2i128), (1, 4)],
            vec![(0, 4), (1, 6)],
            vec![(0, 2), (1, 4)],
        ];
        let r = lattice_invariants(rows, 2).unwrap();
        assert_eq!(r.divisors, vec![2, 2]);
    }

    #[test]
    fn rank_of_identity() {
        let r = smith_normal_form(&IntMat::identity(4)).unwrap();
        assert_eq!(r.rank, 4);
        assert_eq!(r.divisors, vec![1, 1, 1, 1]);
    }
}
