//! Smith normal form over the integers with checked 64-bit arithmetic.

use crate::error::{Error, Result};

/// Result of `U A V = D`. Only the column transform `V` is kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith {
    /// Diagonal entries `d_1 | d_2 | ...`, nonnegative, one per column (zero-padded).
    pub diagonal: Vec<i64>,
    /// Unimodular `cols x cols` matrix.
    pub v: Vec<Vec<i64>>,
}

fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow("smith normal form"))
}

fn sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(Error::Overflow("smith normal form"))
}

fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow("smith normal form"))
}

struct Work {
    a: Vec<Vec<i64>>,
    v: Vec<Vec<i64>>,
    rows: usize,
    cols: usize,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
    }

    /// row_i -= k * row_j
    fn row_axpy(&mut self, i: usize, j: usize, k: i64) -> Result<()> {
        for c in 0..self.cols {
            let t = mul(k, self.a[j][c])?;
            self.a[i][c] = sub(self.a[i][c], t)?;
        }
        Ok(())
    }

    /// col_i -= k * col_j
    fn col_axpy(&mut self, i: usize, j: usize, k: i64) -> Result<()> {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            let t = mul(k, row[j])?;
            row[i] = sub(row[i], t)?;
        }
        Ok(())
    }

    fn negate_col(&mut self, i: usize) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row[i] = -row[i];
        }
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, i64)> = None;
        for r in t..self.rows {
            for c in t..self.cols {
                let x = self.a[r][c].abs();
                if x != 0 && best.is_none_or(|(_, _, b)| x < b) {
                    best = Some((r, c, x));
                }
            }
        }
        best.map(|(r, c, _)| (r, c))
    }
}

/// Computes the Smith form of a `rows x cols` matrix.
pub fn smith_normal_form(matrix: &[Vec<i64>], cols: usize) -> Result<Smith> {
    let rows = matrix.len();
    for r in matrix {
        if r.len() != cols {
            return Err(Error::Internal("ragged matrix".into()));
        }
    }
    let mut w = Work {
        a: matrix.to_vec(),
        v: (0..cols)
            .map(|i| (0..cols).map(|j| i64::from(i == j)).collect())
            .collect(),
        rows,
        cols,
    };
    let steps = rows.min(cols);
    for t in 0..steps {
        while let Some((r, c)) = w.min_pivot(t) {
            w.swap_rows(t, r);
            w.swap_cols(t, c);
            let p = w.a[t][t];
            let mut clean = true;
            for r in t + 1..rows {
                let q = w.a[r][t].div_euclid(p);
                if q != 0 {
                    w.row_axpy(r, t, q)?;
                }
                if w.a[r][t] != 0 {
                    clean = false;
                }
            }
            for c in t + 1..cols {
                let q = w.a[t][c].div_euclid(p);
                if q != 0 {
                    w.col_axpy(c, t, q)?;
                }
                if w.a[t][c] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold any offending row into row t and retry.
            let mut offender = None;
            'scan: for r in t + 1..rows {
                for c in t + 1..cols {
                    if w.a[r][c] % p != 0 {
                        offender = Some(r);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(r) => {
                    for c in 0..cols {
                        w.a[t][c] = add(w.a[t][c], w.a[r][c])?;
                    }
                }
                None => break,
            }
        }
        if w.a[t][t] < 0 {
            w.negate_col(t);
        }
    }
    let diagonal = (0..cols).map(|i| if i < rows { w.a[i][i] } else { 0 }).collect();
    Ok(Smith { diagonal, v: w.v })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det2(m: &[Vec<i64>]) -> i64 {
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    #[test]
    fn small_examples() {
        let s = smith_normal_form(&[vec![2, 4], vec![6, 8]], 2).unwrap();
        assert_eq!(s.diagonal, vec![2, 4]);
        assert_eq!(det2(&s.v).abs(), 1);

        // Z4 x Z2 modulo <(2,1)>.
        let s = smith_normal_form(&[vec![4, 0], vec![0, 2], vec![2, 1]], 2).unwrap();
        assert_eq!(s.diagonal, vec![1, 4]);

        let s = smith_normal_form(&[vec![0, 0]], 2).unwrap();
        assert_eq!(s.diagonal, vec![0, 0]);
    }

    #[test]
    fn divisibility_chain() {
        let s = smith_normal_form(&[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 4]], 3).unwrap();
        assert_eq!(s.diagonal, vec![1, 2, 12]);
    }
}
