/// Dense GF(2) matrix with rows packed into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<u64>>,
}

fn words(cols: usize) -> usize {
    cols.div_ceil(64)
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            rows,
            cols,
            data: vec![vec![0; words(cols)]; rows],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r][c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        let mask = 1u64 << (c % 64);
        if value {
            self.data[r][c / 64] |= mask;
        } else {
            self.data[r][c / 64] &= !mask;
        }
    }

    /// `A x` over GF(2).
    pub fn apply(&self, x: &[bool]) -> Vec<bool> {
        (0..self.rows)
            .map(|r| (0..self.cols).filter(|&c| x[c] && self.get(r, c)).count() % 2 == 1)
            .collect()
    }

    /// Reduced row echelon form and its pivot columns.
    fn reduced(&self) -> (Vec<Vec<u64>>, Vec<usize>) {
        let mut a = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let (w, bit) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (r..self.rows).find(|&i| a[i][w] & bit != 0) else {
                continue;
            };
            a.swap(r, p);
            let pivot_row = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != r && row[w] & bit != 0 {
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        *x ^= y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.reduced().1.len()
    }

    /// A nonzero `x` with `A x = 0`, if the columns are dependent.
    pub fn kernel_vector(&self) -> Option<Vec<bool>> {
        let (a, pivots) = self.reduced();
        let free = (0..self.cols).find(|c| !pivots.contains(c))?;
        let mut x = vec![false; self.cols];
        x[free] = true;
        let (w, bit) = (free / 64, 1u64 << (free % 64));
        for (r, &pc) in pivots.iter().enumerate() {
            if a[r][w] & bit != 0 {
                x[pc] = true;
            }
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_rows(rows: &[&[u8]]) -> Gf2Matrix {
        let mut m = Gf2Matrix::zeros(rows.len(), rows.first().map_or(0, |r| r.len()));
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v == 1);
            }
        }
        m
    }

    #[test]
    fn identity_has_full_rank() {
        let m = from_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(m.rank(), 3);
        assert!(m.kernel_vector().is_none());
    }

    #[test]
    fn dependent_columns_give_kernel() {
        let m = from_rows(&[&[1, 1, 0], &[0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let x = m.kernel_vector().unwrap();
        assert_eq!(x, vec![true, true, true]);
        assert!(m.apply(&x).iter().all(|b| !b));
    }

    #[test]
    fn wide_rows_cross_word_boundary() {
        let mut m = Gf2Matrix::zeros(2, 130);
        m.set(0, 0, true);
        m.set(0, 129, true);
        m.set(1, 129, true);
        assert_eq!(m.rank(), 2);
        let x = m.kernel_vector().unwrap();
        assert!(m.apply(&x).iter().all(|b| !b));
        assert!(x.iter().any(|&b| b));
    }
}
