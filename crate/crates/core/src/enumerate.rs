//! Deterministic enumeration of small integer coefficient vectors.
//!
//! Vectors are produced shell by shell (by max-norm), and inside a shell in
//! colexicographic order with the value order `0, 1, -1, 2, -2, ...`.

fn value(idx: usize) -> i64 {
    let k = idx.div_ceil(2) as i64;
    if idx % 2 == 1 {
        k
    } else {
        -k
    }
}

/// Vectors of length `n` whose largest absolute entry is exactly `bound`.
pub fn shell(n: usize, bound: u32) -> impl Iterator<Item = Vec<i64>> {
    let width = 2 * bound as usize + 1;
    let mut digits = vec![0usize; n];
    let mut done = n == 0 && bound > 0;
    std::iter::from_fn(move || loop {
        if done {
            return None;
        }
        let v: Vec<i64> = digits.iter().map(|&d| value(d)).collect();
        // advance odometer, first coordinate fastest
        let mut i = 0;
        loop {
            if i == n {
                done = true;
                break;
            }
            digits[i] += 1;
            if digits[i] < width {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if v.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0) == bound as u64 {
            return Some(v);
        }
    })
}

/// All vectors with entries in `[-bound, bound]`, shells in increasing order.
pub fn up_to(n: usize, bound: u32) -> impl Iterator<Item = Vec<i64>> {
    (0..=bound).flat_map(move |b| shell(n, b))
}
