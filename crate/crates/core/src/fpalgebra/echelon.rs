//! Echelonized subspaces of `kG` with lowest-index pivots.

use super::AlgebraElement;

fn inv_mod(a: u8, p: u8) -> u8 {
    let (a, p) = (a as u32, p as u32);
    (1..p).find(|&b| a * b % p == 1).unwrap() as u8
}

/// Row-echelon basis of a subspace of `kG`. Every row is monic at its
/// pivot, and pivots are distinct; reduction clears all pivot positions, so
/// it is idempotent and the remainder is canonical.
#[derive(Clone, Debug)]
pub struct IdealBasis {
    p: u8,
    n: usize,
    rows: Vec<AlgebraElement>,
    /// `pivot_row[k]` is the row whose pivot is `k`.
    pivot_row: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl IdealBasis {
    pub fn new(p: u8, n: usize) -> Self {
        IdealBasis {
            p,
            n,
            rows: Vec::new(),
            pivot_row: vec![NONE; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// Rows ordered by increasing pivot.
    pub fn rows(&self) -> Vec<&AlgebraElement> {
        self.pivot_row
            .iter()
            .filter(|&&r| r != NONE)
            .map(|&r| &self.rows[r as usize])
            .collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.n).filter(|&k| self.pivot_row[k] != NONE).collect()
    }

    fn reduce_dense(&self, v: &mut [u32]) {
        let p = self.p as u32;
        for k in 0..self.n {
            let c = v[k] % p;
            v[k] = c;
            if c == 0 {
                continue;
            }
            let r = self.pivot_row[k];
            if r == NONE {
                continue;
            }
            let f = p - c;
            for &(i, a) in self.rows[r as usize].terms() {
                v[i as usize] += f * a as u32;
            }
            v[k] = 0;
        }
    }

    pub fn reduce(&self, x: &AlgebraElement) -> AlgebraElement {
        let mut v = vec![0u32; self.n];
        for &(i, c) in x.terms() {
            v[i as usize] = c as u32;
        }
        self.reduce_dense(&mut v);
        AlgebraElement::from_dense(&v.iter().map(|&c| c as u8).collect::<Vec<_>>())
    }

    pub fn contains(&self, x: &AlgebraElement) -> bool {
        self.reduce(x).is_zero()
    }

    /// Adds `x` to the span. Returns the new row if the dimension grew.
    pub fn insert(&mut self, x: &AlgebraElement) -> Option<AlgebraElement> {
        let r = self.reduce(x);
        let &(k, c) = r.terms().first()?;
        let row = r.scale(inv_mod(c, self.p), self.p);
        self.pivot_row[k as usize] = self.rows.len() as u32;
        self.rows.push(row.clone());
        Some(row)
    }

    /// Closes the span under `x -> x * h` (right) or `x -> h * x` (left)
    /// for every `h` in `by`.
    pub fn close_under(
        &mut self,
        g: &crate::pcgroup::PcGroup,
        by: &[usize],
        right: bool,
        pending: Vec<AlgebraElement>,
    ) {
        let mut queue = pending;
        while let Some(x) = queue.pop() {
            for &h in by {
                let y = if right {
                    x.mul_group_right(g, h)
                } else {
                    x.mul_group_left(g, h)
                };
                if let Some(r) = self.insert(&y) {
                    queue.push(r);
                }
            }
        }
    }

    pub fn is_subspace_of(&self, other: &IdealBasis) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    /// `self + other`.
    pub fn sum(&self, other: &IdealBasis) -> IdealBasis {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r);
        }
        s
    }
}

/// Rank of a dense matrix over `F_p`.
pub fn dense_rank(rows: &[Vec<u8>], p: u8) -> usize {
    let mut m: Vec<Vec<u32>> = rows
        .iter()
        .map(|r| r.iter().map(|&c| (c % p) as u32).collect())
        .collect();
    let p = p as u32;
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = inv_mod(m[rank][col] as u8, p as u8) as u32;
        for c in col..cols {
            m[rank][c] = m[rank][c] * inv % p;
        }
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let f = m[r][col];
                for c in col..cols {
                    m[r][c] = (m[r][c] + (p - f) * m[rank][c]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}
