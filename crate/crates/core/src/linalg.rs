//! Dense linear algebra over `F_p` for the small matrices that show up in
//! Frattini quotients and action spaces.

pub(crate) fn inv_mod(a: u8, p: u8) -> u8 {
    let (a, p32) = (a as u32 % p as u32, p as u32);
    (1..p32)
        .find(|&b| a * b % p32 == 1)
        .expect("zero has no inverse") as u8
}

/// Reduced row echelon form; returns the pivot columns.
pub(crate) fn rref(m: &mut [Vec<u8>], p: u8) -> Vec<usize> {
    let p32 = p as u32;
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_multiple_of(p)) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = inv_mod(m[rank][col], p) as u32;
        for c in 0..cols {
            m[rank][c] = ((m[rank][c] as u32 * inv) % p32) as u8;
        }
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_multiple_of(p) {
                let f = m[r][col] as u32;
                for c in 0..cols {
                    m[r][c] = ((m[r][c] as u32 + (p32 - f) * m[rank][c] as u32) % p32) as u8;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    pivots
}

pub(crate) fn rank(rows: &[Vec<u8>], p: u8) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, p).len()
}

/// Finds `c` with `sum_k c_k rows[k] = target`.
pub(crate) fn solve(rows: &[Vec<u8>], target: &[u8], p: u8) -> Option<Vec<u8>> {
    // Augment the transpose: columns are the rows, last column the target.
    let r = rows.len();
    let cols = target.len();
    let mut m: Vec<Vec<u8>> = (0..cols)
        .map(|c| {
            let mut v: Vec<u8> = rows.iter().map(|row| row[c] % p).collect();
            v.push(target[c] % p);
            v
        })
        .collect();
    let pivots = rref(&mut m, p);
    if pivots.contains(&r) {
        return None;
    }
    let mut sol = vec![0u8; r];
    for (i, &pc) in pivots.iter().enumerate() {
        sol[pc] = m[i][r];
    }
    Some(sol)
}

/// Basis of `{x : x * M = 0}` for the matrix with the given rows.
pub(crate) fn left_kernel(rows: &[Vec<u8>], p: u8) -> Vec<Vec<u8>> {
    let r = rows.len();
    let cols = rows.first().map(|v| v.len()).unwrap_or(0);
    // Kernel of the transpose, read off the rref of M^T.
    let mut t: Vec<Vec<u8>> = (0..cols)
        .map(|c| rows.iter().map(|row| row[c] % p).collect())
        .collect();
    if t.is_empty() {
        return (0..r)
            .map(|i| (0..r).map(|j| (i == j) as u8).collect())
            .collect();
    }
    let pivots = rref(&mut t, p);
    let free: Vec<usize> = (0..r).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u8; r];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - t[i][f] % p) % p;
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn combine(rows: &[Vec<u8>], c: &[u8], p: u8) -> Vec<u8> {
        let n = rows.first().map(|r| r.len()).unwrap_or(0);
        (0..n)
            .map(|j| {
                (rows
                    .iter()
                    .zip(c)
                    .map(|(r, &k)| r[j] as u32 * k as u32)
                    .sum::<u32>()
                    % p as u32) as u8
            })
            .collect()
    }

    proptest! {
        #[test]
        fn solve_and_kernel(
            rows in proptest::collection::vec(proptest::collection::vec(0u8..5, 4), 1..6),
            c in proptest::collection::vec(0u8..5, 6),
        ) {
            let p = 5;
            let c = &c[..rows.len()];
            let t = combine(&rows, c, p);
            let s = solve(&rows, &t, p).expect("target is in the row space");
            prop_assert_eq!(combine(&rows, &s, p), t);
            let ker = left_kernel(&rows, p);
            prop_assert_eq!(ker.len() + rank(&rows, p), rows.len());
            for k in &ker {
                prop_assert!(combine(&rows, k, p).iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn unsolvable() {
        assert_eq!(solve(&[vec![1, 0]], &[0, 1], 3), None);
        assert_eq!(solve(&[], &[0, 0], 3), Some(vec![]));
    }
}
