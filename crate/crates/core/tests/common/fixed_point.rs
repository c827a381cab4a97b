//! Largest solution of `x = u + v (log x)^h` by scanning and bisection in `f64`.

#![allow(dead_code)]

/// Largest root of `g(x) = x - u - v (log x)^h` on `[max(u, 3), inf)`. When `g > 0` on the
/// whole range there is no solution above `max(u, 3)`, which is returned.
pub fn largest_solution(u: f64, v: f64, h: i32) -> f64 {
    let g = |x: f64| x - u - v * x.ln().powi(h);
    let start = u.max(3.0);
    // g is eventually positive; walk right until it stays so
    let mut hi = start.max(16.0);
    while g(hi) <= 0.0 || g(hi * 2.0) <= 0.0 {
        hi *= 2.0;
    }
    // walk left on a geometric grid to the last sign change
    let mut right = hi;
    let mut left = hi / 1.001;
    while left > start && g(left) > 0.0 {
        right = left;
        left /= 1.001;
    }
    if left <= start && g(start) > 0.0 {
        return start;
    }
    let left = left.max(start);
    let (mut a, mut b) = (left, right);
    for _ in 0..300 {
        let mid = 0.5 * (a + b);
        if g(mid) > 0.0 {
            b = mid;
        } else {
            a = mid;
        }
    }
    b
}
