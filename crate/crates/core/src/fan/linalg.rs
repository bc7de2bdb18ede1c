//! Exact integer row reduction.

use num_integer::Integer;

fn normalize(row: &mut [i128]) {
    let g = row.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g > 1 {
        row.iter_mut().for_each(|x| *x /= g);
    }
}

/// Fraction-free reduced row echelon form. Returns the nonzero rows and the
/// pivot column of each.
fn rref(rows: &[Vec<i64>], cols: usize) -> (Vec<Vec<i128>>, Vec<usize>) {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| {
            debug_assert_eq!(r.len(), cols);
            r.iter().map(|&x| x as i128).collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i == r || m[i][c] == 0 {
                continue;
            }
            let (a, b) = (m[r][c], m[i][c]);
            for k in 0..cols {
                m[i][k] = m[i][k] * a - m[r][k] * b;
            }
            normalize(&mut m[i]);
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<i64>], cols: usize) -> usize {
    rref(rows, cols).1.len()
}

/// A primitive integer generator of the kernel when it is one-dimensional.
pub fn kernel_line(rows: &[Vec<i64>], cols: usize) -> Option<Vec<i64>> {
    let (m, pivots) = rref(rows, cols);
    if pivots.len() + 1 != cols {
        return None;
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let scale = m
        .iter()
        .zip(&pivots)
        .fold(1i128, |l, (row, &c)| l.lcm(&row[c]));
    let mut v = vec![0i128; cols];
    v[free] = scale;
    for (row, &c) in m.iter().zip(&pivots) {
        v[c] = -row[free] * scale / row[c];
    }
    normalize(&mut v);
    Some(v.into_iter().map(|x| x as i64).collect())
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Primitive integer representative of the projection of `v` onto the
/// orthogonal complement of `(1, …, 1)`.
pub fn primitive_mod_ones(v: &[i64]) -> Vec<i64> {
    let n = v.len() as i64;
    let s: i64 = v.iter().sum();
    let mut w: Vec<i128> = v.iter().map(|&x| (n * x - s) as i128).collect();
    normalize(&mut w);
    w.into_iter().map(|x| x as i64).collect()
}
