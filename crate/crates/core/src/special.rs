//! Small special-function kernels used by the displacement operator.

use alloc::vec::Vec;
use libm::{exp, log};

/// Table of `ln(k!)` for `k = 0..len`.
#[derive(Debug, Clone)]
pub struct LogFactorials(Vec<f64>);

impl LogFactorials {
    pub fn new(len: usize) -> Self {
        let mut table = Vec::with_capacity(len.max(1));
        let mut acc = 0.0;
        table.push(0.0);
        for k in 1..len {
            acc += log(k as f64);
            table.push(acc);
        }
        LogFactorials(table)
    }

    #[inline]
    pub fn get(&self, k: usize) -> f64 {
        self.0[k]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Generalized Laguerre polynomial `L_n^{(order)}(x)` by the three-term
/// recurrence in `n`.
pub fn laguerre(n: usize, order: usize, x: f64) -> f64 {
    let a = order as f64;
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + a - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + a - x) * cur - (kf + a) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `P(X >= n)` for `X ~ Poisson(lambda)`, summed from the tail upward so
/// that values far below machine epsilon are still resolved.
pub fn poisson_upper_tail(lambda: f64, n: usize) -> f64 {
    if lambda == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let ln_lambda = log(lambda);
    let mut ln_fact = (1..=n).map(|k| log(k as f64)).sum::<f64>();
    let mut k = n;
    let mut sum = 0.0;
    loop {
        let term = exp(-lambda + k as f64 * ln_lambda - ln_fact);
        sum += term;
        // terms decrease geometrically once k > lambda
        if (k as f64) > lambda && (term <= sum * 1e-17 || term == 0.0) {
            break;
        }
        k += 1;
        ln_fact += log(k as f64);
        if k > n + 100_000 {
            break;
        }
    }
    sum.min(1.0)
}
