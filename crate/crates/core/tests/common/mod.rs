//! Oracles shared by the integration tests and the acceptance run.

use unit_tilings::geometry::{curving_s1, curving_s2};

/// Double-exponential quadrature; copes with the square-root endpoints below.
fn tanh_sinh(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    if hi <= lo {
        return 0.0;
    }
    let h = 1.0 / 64.0;
    let half = (hi - lo) / 2.0;
    let mut sum = 0.0;
    for k in -400i32..=400 {
        let t = k as f64 * h;
        let u = std::f64::consts::FRAC_PI_2 * t.sinh();
        let w = std::f64::consts::FRAC_PI_2 * t.cosh() / u.cosh().powi(2);
        // distance from the nearer endpoint, computed without cancellation
        let gap = half / (u.abs().exp() * u.abs().cosh());
        let x = if u < 0.0 { lo + gap } else { hi - gap };
        if w * half < 1e-300 || x <= lo || x >= hi {
            continue;
        }
        sum += w * f(x);
    }
    sum * h * half
}

fn sqrt0(v: f64) -> f64 {
    v.max(0.0).sqrt()
}

/// Area gained by the radius-1 construction, by integrating the curved outline.
pub fn s1_oracle(a: f64, b: f64) -> f64 {
    let hh = sqrt0(1.0 - ((a + b) / 2.0).powi(2));
    let ey = -sqrt0(1.0 - a * a / 4.0);
    let leg = |x: f64| -hh * (x - a / 2.0) / ((b - a) / 2.0);
    let top = |x: f64| if x <= a / 2.0 { ey + sqrt0(1.0 - x * x) } else { leg(x) };
    let bottom = |x: f64| if x <= b / 2.0 { -sqrt0(1.0 - (x + a / 2.0).powi(2)) } else { leg(x) };
    let (lo, hi) = (a.min(b) / 2.0, a.max(b) / 2.0);
    let area = 2.0 * (tanh_sinh(|x| top(x) - bottom(x), 0.0, lo) + tanh_sinh(|x| top(x) - bottom(x), lo, hi));
    area - (a + b) / 2.0 * hh
}

pub fn s2_oracle(a: f64, b: f64) -> f64 {
    let hh = sqrt0(1.0 - ((a + b) / 2.0).powi(2));
    let r = a / (a + b);
    let oy = -hh * r;
    let leg = |x: f64| -hh * (x - a / 2.0) / ((b - a) / 2.0);
    let top = |x: f64| if x <= a / 2.0 { oy + sqrt0(r * r - x * x) } else { leg(x) };
    let bottom = |x: f64| if x <= b / 2.0 { oy - sqrt0((1.0 - r).powi(2) - x * x) } else { leg(x) };
    let (lo, hi) = (a.min(b) / 2.0, a.max(b) / 2.0);
    let area = 2.0 * (tanh_sinh(|x| top(x) - bottom(x), 0.0, lo) + tanh_sinh(|x| top(x) - bottom(x), lo, hi));
    area - (a + b) / 2.0 * hh
}

/// Ratio b/a at which the two constructions gain the same area, by bisection.
pub fn crossover(a: f64) -> f64 {
    let gap = |k: f64| curving_s2(a, k * a).unwrap().s2 - curving_s1(a, k * a).unwrap().s1;
    let (mut lo, mut hi) = (1.0, 3.0);
    assert!(gap(lo) > 0.0 && gap(hi) < 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if gap(mid) > 0.0 {
            lo = mid
        } else {
            hi = mid
        }
    }
    0.5 * (lo + hi)
}

