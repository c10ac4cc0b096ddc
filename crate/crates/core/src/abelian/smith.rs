//! Smith normal form over ℤ with transformation matrices.

/// Result of [`smith`]: `u · a · v = diag(d)` with `u`, `v` unimodular.
#[derive(Debug, Clone)]
pub struct Smith {
    /// Diagonal entries, nonnegative, each dividing the next (trailing zeros allowed).
    pub d: Vec<i64>,
    pub u: Vec<Vec<i64>>,
    pub u_inv: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
    pub rank: usize,
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

fn narrow(m: Vec<Vec<i128>>) -> Vec<Vec<i64>> {
    m.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| i64::try_from(x).expect("smith: entry overflow"))
                .collect()
        })
        .collect()
}

struct Work {
    a: Vec<Vec<i128>>,
    u: Vec<Vec<i128>>,
    ui: Vec<Vec<i128>>,
    v: Vec<Vec<i128>>,
    rows: usize,
    cols: usize,
}

impl Work {
    // row_i += k * row_j
    fn add_row(&mut self, i: usize, j: usize, k: i128) {
        if k == 0 {
            return;
        }
        for c in 0..self.cols {
            self.a[i][c] += k * self.a[j][c];
        }
        for c in 0..self.rows {
            self.u[i][c] += k * self.u[j][c];
        }
        // inverse: col_j -= k * col_i
        for r in 0..self.rows {
            self.ui[r][j] -= k * self.ui[r][i];
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        for r in 0..self.rows {
            self.ui[r].swap(i, j);
        }
    }

    fn neg_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -*x;
        }
        for x in self.u[i].iter_mut() {
            *x = -*x;
        }
        for r in 0..self.rows {
            self.ui[r][i] = -self.ui[r][i];
        }
    }

    // col_i += k * col_j
    fn add_col(&mut self, i: usize, j: usize, k: i128) {
        if k == 0 {
            return;
        }
        for r in 0..self.rows {
            self.a[r][i] += k * self.a[r][j];
        }
        for r in 0..self.cols {
            self.v[r][i] += k * self.v[r][j];
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.a[r].swap(i, j);
        }
        for r in 0..self.cols {
            self.v[r].swap(i, j);
        }
    }
}

/// Smith normal form of an integer matrix given as rows.
pub fn smith(a: &[Vec<i64>], cols: usize) -> Smith {
    let rows = a.len();
    let mut w = Work {
        a: a.iter()
            .map(|r| {
                assert_eq!(r.len(), cols);
                r.iter().map(|&x| x as i128).collect()
            })
            .collect(),
        u: identity(rows),
        ui: identity(rows),
        v: identity(cols),
        rows,
        cols,
    };
    let mut rank = 0;
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = w.a[i][j].abs();
                if x != 0 && best.is_none_or(|(bi, bj)| x < w.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        w.swap_rows(t, bi);
        w.swap_cols(t, bj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if w.a[i][t] != 0 {
                    let q = w.a[i][t].div_euclid(w.a[t][t]);
                    w.add_row(i, t, -q);
                    if w.a[i][t] != 0 {
                        w.swap_rows(t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if w.a[t][j] != 0 {
                    let q = w.a[t][j].div_euclid(w.a[t][t]);
                    w.add_col(j, t, -q);
                    if w.a[t][j] != 0 {
                        w.swap_cols(t, j);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the remaining block
            let p = w.a[t][t];
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| w.a[i][j] % p != 0));
            match bad {
                Some(i) => w.add_row(t, i, 1),
                None => break,
            }
        }
        if w.a[t][t] < 0 {
            w.neg_row(t);
        }
        rank = t + 1;
    }
    let d = (0..rows.min(cols)).map(|i| w.a[i][i] as i64).collect();
    Smith {
        d,
        u: narrow(w.u),
        u_inv: narrow(w.ui),
        v: narrow(w.v),
        rank,
    }
}

/// Integer kernel basis of `a` (as columns returned as vectors).
pub fn integer_kernel(a: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    let s = smith(a, cols);
    (s.rank..cols)
        .map(|j| (0..cols).map(|r| s.v[r][j]).collect())
        .collect()
}
