//! Row-echelon arithmetic over F_p on raw digit vectors.
//!
//! Rows are little-endian digit vectors; the pivot of a row is its first
//! nonzero coordinate. The structure keeps rows in reduced echelon form
//! (pivot entries 1, pivot columns cleared in every other row, rows sorted
//! by pivot), which makes the stored basis canonical.

pub(crate) fn inv_mod(p: u8, a: u8) -> u8 {
    debug_assert!(!a.is_multiple_of(p));
    let mut r = 1u8;
    for _ in 0..(p - 2) {
        r = (r as u16 * a as u16 % p as u16) as u8;
    }
    r
}

#[derive(Debug, Clone)]
pub(crate) struct Echelon {
    p: u8,
    width: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub(crate) fn new(p: u8, width: usize) -> Self {
        Echelon {
            p,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    #[cfg(test)]
    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    /// Fully reduce `v` modulo the current row space.
    pub(crate) fn reduce(&self, v: &mut [u8]) {
        debug_assert_eq!(v.len(), self.width);
        let p = self.p as u16;
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = v[piv];
            if c != 0 {
                for (vi, ri) in v.iter_mut().zip(row) {
                    *vi = ((*vi as u16 + (p - c as u16) * *ri as u16) % p) as u8;
                }
            }
        }
    }

    pub(crate) fn contains(&self, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&d| d == 0)
    }

    /// Insert `v`. Returns the fully reduced, pivot-normalized vector that
    /// was added to the row space, or `None` if `v` was already in it.
    pub(crate) fn insert(&mut self, v: &[u8]) -> Option<Vec<u8>> {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let piv = w.iter().position(|&d| d != 0)?;
        let p = self.p as u16;
        let scale = inv_mod(self.p, w[piv]) as u16;
        for d in w.iter_mut() {
            *d = (*d as u16 * scale % p) as u8;
        }
        // Clear the new pivot column from existing rows.
        for row in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                for (ri, wi) in row.iter_mut().zip(&w) {
                    *ri = ((*ri as u16 + (p - c as u16) * *wi as u16) % p) as u8;
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < piv);
        self.rows.insert(pos, w.clone());
        self.pivots.insert(pos, piv);
        Some(w)
    }
}

/// Solve `sum_j x_j * cols[j] = rhs` over F_p. Returns one solution.
pub(crate) fn solve(p: u8, cols: &[Vec<u8>], rhs: &[u8]) -> Option<Vec<u8>> {
    let height = rhs.len();
    let n = cols.len();
    // Augmented matrix rows: [col entries | identity tracking of x].
    // Work on the transpose instead: rows are equations.
    let mut mat: Vec<Vec<u8>> = (0..height)
        .map(|r| {
            let mut row: Vec<u8> = cols.iter().map(|c| c[r]).collect();
            row.push(rhs[r]);
            row
        })
        .collect();
    let pw = p as u16;
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
    let mut used = 0usize;
    for col in 0..n {
        let Some(r) = (used..height).find(|&r| mat[r][col] != 0) else {
            continue;
        };
        mat.swap(used, r);
        let s = inv_mod(p, mat[used][col]) as u16;
        for d in mat[used].iter_mut() {
            *d = (*d as u16 * s % pw) as u8;
        }
        for r2 in 0..height {
            if r2 != used && mat[r2][col] != 0 {
                let c = mat[r2][col] as u16;
                for j in 0..=n {
                    let sub = (pw - c) * mat[used][j] as u16 % pw;
                    mat[r2][j] = ((mat[r2][j] as u16 + sub) % pw) as u8;
                }
            }
        }
        pivot_of_col[col] = Some(used);
        used += 1;
    }
    // Inconsistent if any zero row has nonzero rhs.
    for row in &mat {
        if row[..n].iter().all(|&d| d == 0) && row[n] != 0 {
            return None;
        }
    }
    let mut x = vec![0u8; n];
    for (col, piv) in pivot_of_col.iter().enumerate() {
        if let Some(r) = piv {
            x[col] = mat[*r][n];
        }
    }
    Some(x)
}
