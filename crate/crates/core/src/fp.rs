//! Dense linear algebra over `F_p` for the graded quotients.

fn inv(a: u64, p: u64) -> u64 {
    // p is prime, so a^(p-2) inverts a.
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Row-reduces `m` in place; returns pivot columns among the first `cols`.
fn rref(m: &mut [Vec<u64>], cols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(piv) = (row..m.len()).find(|&r| m[r][col] % p != 0) else { continue };
        m.swap(row, piv);
        let k = inv(m[row][col], p);
        for v in m[row].iter_mut() {
            *v = *v * k % p;
        }
        for r in 0..m.len() {
            if r != row && m[r][col] != 0 {
                let c = m[r][col];
                let src = m[row].clone();
                for (v, s) in m[r].iter_mut().zip(src) {
                    *v = (*v + p - c * s % p) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<u64>], p: u64) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    let mut w = m.to_vec();
    rref(&mut w, cols, p).len()
}

/// Some `x` with `a·x = b`, if one exists.
pub fn solve(a: &[Vec<u64>], b: &[u64], p: u64) -> Option<Vec<u64>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut w: Vec<Vec<u64>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi % p);
            r
        })
        .collect();
    let pivots = rref(&mut w, cols, p);
    if w.iter().skip(pivots.len()).any(|r| r[cols] != 0) {
        return None;
    }
    let mut x = vec![0u64; cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = w[r][cols];
    }
    Some(x)
}

pub fn mat_vec(a: &[Vec<u64>], v: &[u64], p: u64) -> Vec<u64> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(0u64, |acc, (x, y)| (acc + x * y % p) % p))
        .collect()
}

pub fn mat_mul(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).fold(0u64, |acc, (x, brow)| (acc + x * brow[j] % p) % p))
                .collect()
        })
        .collect()
}

/// `s·I + t·a` for a square matrix `a`.
pub fn affine_identity(a: &[Vec<u64>], s: i64, t: i64, p: u64) -> Vec<Vec<u64>> {
    let s = s.rem_euclid(p as i64) as u64;
    let t = t.rem_euclid(p as i64) as u64;
    a.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &v)| (t * v % p + if i == j { s } else { 0 }) % p)
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_and_rank() {
        let a = vec![vec![1, 2], vec![2, 4]];
        assert_eq!(rank(&a, 5), 1);
        assert_eq!(solve(&a, &[3, 1], 5), Some(vec![3, 0]));
        assert_eq!(solve(&a, &[3, 2], 5), None);
        assert_eq!(mat_vec(&a, &[1, 1], 5), vec![3, 1]);
    }
}
