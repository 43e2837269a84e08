//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, PI};

use confluentia::special::{hermite, Parity};

/// Which end condition closes the shooting problem at `π/2`.
#[derive(Clone, Copy)]
struct Shape {
    /// start with y(0)=1, y'(0)=0 (cosine type) or y(0)=0, y'(0)=1
    cosine: bool,
    /// zero of y'(π/2) (true) or of y(π/2) (false)
    derivative_at_end: bool,
    index: usize,
}

fn shape(parity: Parity, n: usize) -> Shape {
    match parity {
        Parity::EvenCe => Shape { cosine: true, derivative_at_end: n % 2 == 0, index: n / 2 },
        Parity::OddSe => Shape { cosine: false, derivative_at_end: n % 2 == 1, index: (n - 1) / 2 },
    }
}

/// RK4 integration of `y'' = -(a - 2q cos 2s) y` from 0 to `π/2`,
/// returning the sampled solution and derivative.
fn integrate(a: f64, q: f64, cosine: bool, steps: usize) -> (Vec<f64>, Vec<f64>) {
    let h = FRAC_PI_2 / steps as f64;
    let f = |s: f64, y: f64| -(a - 2.0 * q * (2.0 * s).cos()) * y;
    let (mut y, mut v) = if cosine { (1.0, 0.0) } else { (0.0, 1.0) };
    let mut ys = vec![y];
    let mut vs = vec![v];
    for i in 0..steps {
        let s = i as f64 * h;
        let k1y = v;
        let k1v = f(s, y);
        let k2y = v + 0.5 * h * k1v;
        let k2v = f(s + 0.5 * h, y + 0.5 * h * k1y);
        let k3y = v + 0.5 * h * k2v;
        let k3v = f(s + 0.5 * h, y + 0.5 * h * k2y);
        let k4y = v + h * k3v;
        let k4v = f(s + h, y + h * k3y);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        ys.push(y);
        vs.push(v);
    }
    (ys, vs)
}

const STEPS: usize = 4000;

fn end_value(a: f64, q: f64, sh: Shape) -> f64 {
    let (ys, vs) = integrate(a, q, sh.cosine, STEPS);
    if sh.derivative_at_end {
        *vs.last().unwrap()
    } else {
        *ys.last().unwrap()
    }
}

/// Characteristic value by scanning for the `index`-th sign change of the
/// end condition, then bisecting.
pub fn shooting_char(parity: Parity, n: usize, q: f64) -> f64 {
    let sh = shape(parity, n);
    let step = 0.02;
    let mut a = -2.0 * q - 1.0;
    let mut fa = end_value(a, q, sh);
    let mut found = 0;
    loop {
        let b = a + step;
        let fb = end_value(b, q, sh);
        if fa == 0.0 || fa.signum() != fb.signum() {
            if found == sh.index {
                let (mut lo, mut hi, mut flo) = (a, b, fa);
                for _ in 0..80 {
                    let mid = 0.5 * (lo + hi);
                    let fm = end_value(mid, q, sh);
                    if fm.signum() == flo.signum() {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                }
                return 0.5 * (lo + hi);
            }
            found += 1;
        }
        a = b;
        fa = fb;
    }
}

/// Shooting solution normalized to `∫₀^{2π} y² = π` with the sign rule at
/// `π/2`; returns `(y(π/2), y'(π/2))`.
pub fn shooting_half_pi(parity: Parity, n: usize, q: f64) -> (f64, f64) {
    let sh = shape(parity, n);
    let a = shooting_char(parity, n, q);
    let (ys, vs) = integrate(a, q, sh.cosine, STEPS);
    let h = FRAC_PI_2 / STEPS as f64;
    // Simpson on [0, π/2]; the full period holds four mirror copies.
    let mut quarter = ys[0] * ys[0] + ys[STEPS] * ys[STEPS];
    for (i, y) in ys.iter().enumerate().take(STEPS).skip(1) {
        quarter += if i % 2 == 1 { 4.0 } else { 2.0 } * y * y;
    }
    quarter *= h / 3.0;
    let scale = (PI / (4.0 * quarter)).sqrt();
    let (mut y, mut v) = (ys[STEPS] * scale, vs[STEPS] * scale);
    let r = sh.index;
    let sr = if r % 2 == 0 { 1.0 } else { -1.0 };
    let reference = if sh.derivative_at_end { sr * y } else { -sr * v };
    if reference < 0.0 {
        y = -y;
        v = -v;
    }
    (y, v)
}

/// `e^h_n''(x)` by the product rule on the closed form.
pub fn ho_second_derivative(n: usize, h: f64, x: f64) -> f64 {
    let fact: f64 = (1..=n).map(|k| k as f64).product();
    let c = (2f64.powi(n as i32) * fact).powf(-0.5) * (PI / h).powf(-0.25);
    let g = (-h * x * x / 2.0).exp();
    let y = h.sqrt() * x;
    let hn = hermite(n, y);
    let d1 = if n >= 1 { 2.0 * n as f64 * hermite(n - 1, y) } else { 0.0 };
    let d2 = if n >= 2 { 4.0 * (n * (n - 1)) as f64 * hermite(n - 2, y) } else { 0.0 };
    let gp = -h * x * g;
    let gpp = (h * h * x * x - h) * g;
    c * (gpp * hn + 2.0 * gp * h.sqrt() * d1 + g * h * d2)
}
