//! Reference implementations that share no code with the library.
#![allow(dead_code)]

pub fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

fn mul(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

/// Inverse by Fermat's little theorem.
pub fn mod_inv(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p));
    mod_pow(a, p - 2, p)
}

/// Solves the Vandermonde system `sum_j c_j x_i^j = y_i` by Gauss-Jordan
/// elimination over `Z_p`. Returns `None` when the system is singular.
pub fn vandermonde_solve(xs: &[u64], ys: &[u64], p: u64) -> Option<Vec<u64>> {
    let len = xs.len();
    let mut rows: Vec<Vec<u64>> = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| {
            let mut row: Vec<u64> = (0..len as u64).map(|j| mod_pow(x, j, p)).collect();
            row.push(y % p);
            row
        })
        .collect();
    for col in 0..len {
        let pivot = (col..len).find(|&r| rows[r][col] != 0)?;
        rows.swap(col, pivot);
        let inv = mod_inv(rows[col][col], p);
        for v in rows[col].iter_mut() {
            *v = mul(*v, inv, p);
        }
        let pivot_row = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            let factor = row[col];
            if r != col && factor != 0 {
                for (v, &q) in row.iter_mut().zip(&pivot_row) {
                    *v = (*v + p - mul(factor, q, p)) % p;
                }
            }
        }
    }
    Some(rows.into_iter().map(|r| r[len]).collect())
}

/// Plain power-sum evaluation.
pub fn eval_naive(coeffs: &[u64], x: u64, p: u64) -> u64 {
    coeffs.iter().enumerate().fold(0u128, |acc, (j, &c)| {
        (acc + c as u128 * mod_pow(x, j as u64, p) as u128) % p as u128
    }) as u64
}

/// All `size`-element subsets of `items`, in lexicographic order.
pub fn subsets<T: Clone>(items: &[T], size: usize) -> Vec<Vec<T>> {
    fn go<T: Clone>(
        items: &[T],
        size: usize,
        start: usize,
        cur: &mut Vec<T>,
        out: &mut Vec<Vec<T>>,
    ) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < size - cur.len() {
                break;
            }
            cur.push(items[i].clone());
            go(items, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, size, 0, &mut Vec::with_capacity(size), &mut out);
    out
}

/// Every vector in `{0..p}^dims`.
pub fn all_vectors(p: u64, dims: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..dims {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |d| {
                    let mut w = v.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
    }
    out
}

/// Runs one acceptance criterion and prints a PASS/FAIL line for it.
pub fn criterion(id: u32, name: &str, check: impl FnOnce() -> Result<String, String>) {
    let start = std::time::Instant::now();
    let outcome = check();
    let elapsed = start.elapsed();
    match outcome {
        Ok(detail) => println!("[PASS] criterion {id}: {name} ({detail}; {elapsed:.2?})"),
        Err(why) => {
            println!("[FAIL] criterion {id}: {name}: {why}");
            panic!("criterion {id} failed: {why}");
        }
    }
}

/// `Err` with a message unless `cond` holds.
#[macro_export]
macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}
