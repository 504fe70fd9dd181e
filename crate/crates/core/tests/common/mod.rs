#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;

use cubic_k3::lattice::IntMatrix;

pub fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// gcd of the k x k minors.
pub fn determinantal_divisor(m: &[Vec<i64>], k: usize) -> i128 {
    let mut g = 0i128;
    for rows in subsets(m.len(), k) {
        for cols in subsets(m[0].len(), k) {
            let sub: Vec<Vec<i128>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j] as i128).collect()).collect();
            g = g.gcd(&det(&sub));
        }
    }
    g
}

/// Signed permutation matrix: `perm[i]` is the image of basis vector `i`.
pub fn signed_perm(perm: &[usize], signs: &[bool]) -> IntMatrix {
    let n = perm.len();
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        m.set(perm[i], i, BigInt::from(if signs[i] { -1 } else { 1 }));
    }
    m
}

/// Cycles of a signed permutation whose signs multiply to -1. By Shapiro's
/// lemma each contributes one Z/2 to H^1 of the cyclic group it generates.
pub fn odd_cycles(perm: &[usize], signs: &[bool]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut count = 0;
    for start in 0..perm.len() {
        let (mut i, mut neg) = (start, false);
        while !seen[i] {
            seen[i] = true;
            neg ^= signs[i];
            i = perm[i];
        }
        if i == start && neg {
            count += 1;
        }
    }
    count
}

/// Whether `ax^3 + by^3 + cz^3 = 0` has a solution mod `p^3` with some
/// coordinate prime to `p`, by exhaustive search over residues. The
/// equation is first divided by the gcd of its coefficients.
pub fn solvable_mod_p3(abc: [i64; 3], p: i64) -> bool {
    let g = abc[0].gcd(&abc[1]).gcd(&abc[2]);
    let abc = abc.map(|x| x / g);
    let m = p * p * p;
    let values = |coef: i64, units_only: bool| {
        let mut seen = vec![false; m as usize];
        for x in 0..m {
            if !units_only || x % p != 0 {
                seen[(coef.rem_euclid(m) * (x * x % m) % m * x % m) as usize] = true;
            }
        }
        seen
    };
    let all: Vec<Vec<bool>> = abc.iter().map(|&c| values(c, false)).collect();
    let units: Vec<Vec<bool>> = abc.iter().map(|&c| values(c, true)).collect();
    let list = |v: &[bool]| (0..m).filter(|&i| v[i as usize]).collect::<Vec<i64>>();
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let (ui, aj) = (list(&units[i]), list(&all[j]));
        for &s in &ui {
            for &t in &aj {
                if all[k][((-(s + t)).rem_euclid(m)) as usize] {
                    return true;
                }
            }
        }
    }
    false
}
