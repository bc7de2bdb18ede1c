//! Independent reference computations used to check the main algorithms.

use crate::perm::Permutation;

/// `C_0, …, C_max` from `C_{n+1} = Σ C_i C_{n−i}`.
pub fn catalan_numbers(max: usize) -> Vec<u64> {
    let mut c = vec![1u64];
    for n in 0..max {
        c.push((0..=n).map(|i| c[i] * c[n - i]).sum());
    }
    c
}

/// `∏_{i=1}^n min(i, k)`.
pub fn min_product(n: usize, k: usize) -> u64 {
    (1..=n).map(|i| i.min(k) as u64).product()
}

/// Baxter test following West: every 2413 occurrence sits inside a 25314
/// and every 3142 occurrence inside a 41352. Exhaustive over position
/// quadruples.
pub fn west_baxter(x: &Permutation) -> bool {
    let w = x.word();
    let n = w.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let (a, b, c, d) = (w[i], w[j], w[k], w[l]);
                    // 2413: c < a < d < b, witness between b and c valued in (a, d)
                    if c < a && a < d && d < b && !(j + 1..k).any(|e| a < w[e] && w[e] < d) {
                        return false;
                    }
                    // 3142: b < d < a < c, witness between b and c valued in (d, a)
                    if b < d && d < a && a < c && !(j + 1..k).any(|e| d < w[e] && w[e] < a) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Whether `a_n = 2 a_{n−1} + a_{n−2}` holds for every `n` with
/// `lo ≤ n < a.len()`, where `a[n]` is the `n`-th term.
pub fn satisfies_pell(a: &[u64], lo: usize) -> bool {
    (lo.max(2)..a.len()).all(|n| a[n] == 2 * a[n - 1] + a[n - 2])
}
