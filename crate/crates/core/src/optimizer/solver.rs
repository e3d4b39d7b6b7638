//! Equality-constrained minimisation: augmented Lagrangian over BFGS, then
//! Newton steps on the KKT system. Derivatives are central differences.

use nalgebra::{DMatrix, DVector};

/// Objective and equality residuals at a point, or `None` outside the domain.
pub trait Problem: Sync {
    fn dim(&self) -> usize;
    fn evaluate(&self, z: &[f64]) -> Option<(f64, Vec<f64>)>;
}

#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub fd_step: f64,
    pub max_inner: usize,
    pub max_outer: usize,
    pub feas_tol: f64,
    pub stall_tol: f64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { fd_step: 1e-7, max_inner: 10_000, max_outer: 40, feas_tol: 1e-10, stall_tol: 1e-12 }
    }
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub z: Vec<f64>,
    pub objective: f64,
    pub residuals: Vec<f64>,
    pub multipliers: Vec<f64>,
    pub iterations: usize,
}

impl Solution {
    pub fn residual_norm(&self) -> f64 {
        self.residuals.iter().fold(0.0, |m, r| m.max(r.abs()))
    }
}

fn shifted(z: &[f64], i: usize, h: f64) -> Vec<f64> {
    let mut w = z.to_vec();
    w[i] += h;
    w
}

/// Central difference gradient of a scalar function; one-sided where one neighbour is outside the domain.
fn gradient(f: &dyn Fn(&[f64]) -> f64, z: &[f64], f0: f64, h: f64) -> Option<Vec<f64>> {
    (0..z.len())
        .map(|i| {
            let (fp, fm) = (f(&shifted(z, i, h)), f(&shifted(z, i, -h)));
            match (fp.is_finite(), fm.is_finite()) {
                (true, true) => Some((fp - fm) / (2.0 * h)),
                (true, false) => Some((fp - f0) / h),
                (false, true) => Some((f0 - fm) / h),
                _ => None,
            }
        })
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn inf_norm(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Quasi-Newton minimisation of `f`, which is `+inf` outside its domain.
pub fn bfgs(f: &dyn Fn(&[f64]) -> f64, z0: &[f64], s: &Settings, gtol: f64) -> (Vec<f64>, f64, usize) {
    let n = z0.len();
    let mut z = z0.to_vec();
    let mut fz = f(&z);
    let Some(mut g) = gradient(f, &z, fz, s.fd_step) else { return (z, fz, 0) };
    let mut hinv = DMatrix::<f64>::identity(n, n);
    let mut stalls = 0;
    let mut it = 0;
    while it < s.max_inner {
        it += 1;
        if inf_norm(&g) < gtol {
            break;
        }
        let gv = DVector::from_column_slice(&g);
        let mut d: Vec<f64> = (-(&hinv * &gv)).iter().copied().collect();
        let mut slope = dot(&g, &d);
        if slope >= 0.0 {
            hinv = DMatrix::identity(n, n);
            d = g.iter().map(|x| -x).collect();
            slope = dot(&g, &d);
        }
        let mut t = 1.0;
        let mut next = None;
        while t > 1e-20 {
            let w: Vec<f64> = z.iter().zip(&d).map(|(a, b)| a + t * b).collect();
            let fw = f(&w);
            if fw.is_finite() && fw <= fz + 1e-4 * t * slope {
                next = Some((w, fw));
                break;
            }
            t *= 0.5;
        }
        let Some((w, fw)) = next else { break };
        let Some(gw) = gradient(f, &w, fw, s.fd_step) else { break };
        let sv: Vec<f64> = w.iter().zip(&z).map(|(a, b)| a - b).collect();
        let yv: Vec<f64> = gw.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&sv, &yv);
        if sy > 1e-12 * dot(&sv, &sv).sqrt() * dot(&yv, &yv).sqrt() {
            let sv = DVector::from_vec(sv);
            let yv = DVector::from_vec(yv);
            let rho = 1.0 / sy;
            let i = DMatrix::<f64>::identity(n, n);
            let a = &i - &sv * yv.transpose() * rho;
            let b = &i - &yv * sv.transpose() * rho;
            hinv = &a * &hinv * &b + &sv * sv.transpose() * rho;
        }
        let drop = fz - fw;
        z = w;
        g = gw;
        fz = fw;
        if drop <= s.stall_tol * (1.0 + fz.abs()) {
            stalls += 1;
            if stalls >= 5 {
                break;
            }
        } else {
            stalls = 0;
        }
    }
    (z, fz, it)
}

/// Augmented Lagrangian outer loop; `multipliers` satisfy grad f = J^T lambda at a solution.
pub fn augmented_lagrangian(p: &dyn Problem, z0: &[f64], s: &Settings) -> Option<Solution> {
    let (_, c0) = p.evaluate(z0)?;
    let mut lambda = least_squares_multipliers(p, z0).unwrap_or_else(|| vec![0.0; c0.len()]);
    let mut mu = 10.0;
    let mut z = z0.to_vec();
    let mut prev = inf_norm(&c0);
    let mut iterations = 0;
    for _ in 0..s.max_outer {
        let merit = |w: &[f64]| match p.evaluate(w) {
            Some((f, c)) => f - dot(&lambda, &c) + 0.5 * mu * dot(&c, &c),
            None => f64::INFINITY,
        };
        let (w, _, it) = bfgs(&merit, &z, s, 1e-9);
        iterations += it;
        z = w;
        let (_, c) = p.evaluate(&z)?;
        let viol = inf_norm(&c);
        for (l, ci) in lambda.iter_mut().zip(&c) {
            *l -= mu * ci;
        }
        if viol <= s.feas_tol {
            break;
        }
        if viol > 0.25 * prev {
            mu = (mu * 10.0).min(1e12);
        }
        prev = viol;
    }
    let (objective, residuals) = p.evaluate(&z)?;
    Some(Solution { z, objective, residuals, multipliers: lambda, iterations })
}

/// Multipliers that best satisfy `grad f = J^T lambda` at `z`.
fn least_squares_multipliers(p: &dyn Problem, z: &[f64]) -> Option<Vec<f64>> {
    let (_, _, grad, jac) = jacobian(p, z, POLISH_STEP)?;
    let jt = jac.transpose();
    let svd = jt.svd(true, true);
    let eps = 1e-12 * svd.singular_values.max();
    let l = svd.solve(&DVector::from_vec(grad), eps).ok()?;
    Some(l.iter().copied().collect())
}

/// Objective gradient and constraint Jacobian by the fourth-order central stencil.
fn jacobian(p: &dyn Problem, z: &[f64], h: f64) -> Option<(f64, Vec<f64>, Vec<f64>, DMatrix<f64>)> {
    let (f0, c0) = p.evaluate(z)?;
    let (n, m) = (z.len(), c0.len());
    let mut grad = vec![0.0; n];
    let mut jac = DMatrix::zeros(m, n);
    for i in 0..n {
        let (f1, c1) = p.evaluate(&shifted(z, i, h))?;
        let (f2, c2) = p.evaluate(&shifted(z, i, 2.0 * h))?;
        let (fm1, cm1) = p.evaluate(&shifted(z, i, -h))?;
        let (fm2, cm2) = p.evaluate(&shifted(z, i, -2.0 * h))?;
        let d = |a2: f64, a1: f64, b1: f64, b2: f64| (8.0 * (a1 - b1) - (a2 - b2)) / (12.0 * h);
        grad[i] = d(f2, f1, fm1, fm2);
        for k in 0..m {
            jac[(k, i)] = d(c2[k], c1[k], cm1[k], cm2[k]);
        }
    }
    Some((f0, c0, grad, jac))
}

const POLISH_STEP: f64 = 1e-4;

/// Hessian of the Lagrangian by second differences.
fn lagrangian_hessian(p: &dyn Problem, z: &[f64], lambda: &[f64], h: f64) -> Option<DMatrix<f64>> {
    let n = z.len();
    let lag = |w: &[f64]| p.evaluate(w).map(|(f, c)| f - dot(lambda, &c));
    let l0 = lag(z)?;
    let mut hm = DMatrix::zeros(n, n);
    for i in 0..n {
        let lp = lag(&shifted(z, i, h))?;
        let lm = lag(&shifted(z, i, -h))?;
        hm[(i, i)] = (lp - 2.0 * l0 + lm) / (h * h);
        for j in 0..i {
            let pp = lag(&shifted(&shifted(z, i, h), j, h))?;
            let pm = lag(&shifted(&shifted(z, i, h), j, -h))?;
            let mp = lag(&shifted(&shifted(z, i, -h), j, h))?;
            let mm = lag(&shifted(&shifted(z, i, -h), j, -h))?;
            let v = (pp - pm - mp + mm) / (4.0 * h * h);
            hm[(i, j)] = v;
            hm[(j, i)] = v;
        }
    }
    Some(hm)
}

/// Newton iterations on `grad f - J^T lambda = 0, c = 0`, solved by SVD so that
/// repeated or dependent equations do no harm.
pub fn kkt_polish(p: &dyn Problem, start: &Solution, s: &Settings, steps: usize) -> Solution {
    let mut best = start.clone();
    let mut z = start.z.clone();
    let mut lambda = start.multipliers.clone();
    let merit = |grad: &[f64], jac: &DMatrix<f64>, lambda: &[f64], c: &[f64]| {
        let jt = jac.transpose() * DVector::from_column_slice(lambda);
        let st = grad.iter().zip(jt.iter()).fold(0.0f64, |m, (g, j)| m.max((g - j).abs()));
        st.max(inf_norm(c))
    };
    let mut iterations = start.iterations;
    for _ in 0..steps {
        let Some((_, c, grad, jac)) = jacobian(p, &z, POLISH_STEP) else { break };
        let Some(hess) = lagrangian_hessian(p, &z, &lambda, 1e-4) else { break };
        let (n, m) = (z.len(), c.len());
        let mut k = DMatrix::zeros(n + m, n + m);
        k.view_mut((0, 0), (n, n)).copy_from(&hess);
        k.view_mut((0, n), (n, m)).copy_from(&(-jac.transpose()));
        k.view_mut((n, 0), (m, n)).copy_from(&jac);
        let jt = jac.transpose() * DVector::from_column_slice(&lambda);
        let mut rhs = DVector::zeros(n + m);
        for i in 0..n {
            rhs[i] = -(grad[i] - jt[i]);
        }
        for i in 0..m {
            rhs[n + i] = -c[i];
        }
        let svd = k.svd(true, true);
        let eps = 1e-13 * svd.singular_values.max();
        let Ok(step) = svd.solve(&rhs, eps) else { break };
        let before = merit(&grad, &jac, &lambda, &c);
        let mut t = 1.0;
        let mut moved = false;
        while t > 1e-4 {
            let w: Vec<f64> = z.iter().enumerate().map(|(i, a)| a + t * step[i]).collect();
            let nl: Vec<f64> = lambda.iter().enumerate().map(|(i, a)| a + t * step[n + i]).collect();
            if let Some((_, cw, gw, jw)) = jacobian(p, &w, POLISH_STEP) {
                if merit(&gw, &jw, &nl, &cw) < before || inf_norm(&cw) < inf_norm(&c) {
                    z = w;
                    lambda = nl;
                    moved = true;
                    break;
                }
            }
            t *= 0.5;
        }
        iterations += 1;
        if !moved {
            break;
        }
        if let Some((f, c)) = p.evaluate(&z) {
            let cand = Solution { z: z.clone(), objective: f, residuals: c, multipliers: lambda.clone(), iterations };
            if cand.residual_norm() <= best.residual_norm().max(s.feas_tol) {
                best = cand;
            }
        }
        let size = (0..n).fold(0.0f64, |m, i| m.max(step[i].abs()));
        if size < 1e-13 && best.residual_norm() < 1e-13 {
            break;
        }
    }
    best
}
