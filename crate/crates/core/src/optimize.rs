//! Derivative-free maximizers and the brute-force grid oracle that checks them.

use crate::error::{Error, Result};

/// Closed search interval for the 1-D maximizers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket1D {
    lo: f64,
    hi: f64,
    tolerance: f64,
}

impl Bracket1D {
    pub fn new(lo: f64, hi: f64, tolerance: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || !(lo < hi) {
            return Err(Error::InvalidInput(format!("bad bracket [{lo}, {hi}]")));
        }
        if !(tolerance > 0.0) {
            return Err(Error::InvalidInput(format!(
                "tolerance must be positive, got {tolerance}"
            )));
        }
        Ok(Self { lo, hi, tolerance })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }
}

fn eval<F: FnMut(f64) -> f64>(f: &mut F, t: f64) -> Result<f64> {
    let v = f(t);
    if v.is_nan() {
        return Err(Error::Domain(format!("objective returned NaN at t = {t}")));
    }
    Ok(v)
}

const GOLDEN: f64 = 0.381_966_011_250_105_1;

/// Brent's parabolic/golden-section search for the maximum of `f` on the bracket.
///
/// The endpoints are evaluated too and win if they beat the interior optimum,
/// so monotone objectives return the right end. `-inf` values are allowed;
/// parabolic steps are skipped while any of the three tracked values is
/// non-finite.
pub fn brent_maximize<F: FnMut(f64) -> f64>(mut f: F, bracket: Bracket1D) -> Result<(f64, f64)> {
    let sqrt_eps = f64::EPSILON.sqrt();
    let (mut a, mut b) = (bracket.lo, bracket.hi);
    // minimize g = -f
    let mut x = a + GOLDEN * (b - a);
    let mut w = x;
    let mut v = x;
    let mut gx = -eval(&mut f, x)?;
    let mut gw = gx;
    let mut gv = gx;
    let mut d: f64 = 0.0;
    let mut e: f64 = 0.0;

    for _ in 0..500 {
        let m = 0.5 * (a + b);
        let tol1 = sqrt_eps * x.abs() + bracket.tolerance / 3.0;
        let tol2 = 2.0 * tol1;
        if (x - m).abs() <= tol2 - 0.5 * (b - a) {
            break;
        }
        let mut golden = true;
        if e.abs() > tol1 && gx.is_finite() && gw.is_finite() && gv.is_finite() {
            let r = (x - w) * (gx - gv);
            let mut q = (x - v) * (gx - gw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            } else {
                q = -q;
            }
            let e_old = e;
            if p.abs() < (0.5 * q * e_old).abs() && p > q * (a - x) && p < q * (b - x) {
                e = d;
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = if x < m { tol1 } else { -tol1 };
                }
                golden = false;
            }
        }
        if golden {
            e = if x < m { b - x } else { a - x };
            d = GOLDEN * e;
        }
        let u = if d.abs() >= tol1 {
            x + d
        } else if d > 0.0 {
            x + tol1
        } else {
            x - tol1
        };
        let gu = -eval(&mut f, u)?;
        if gu <= gx {
            if u < x {
                b = x;
            } else {
                a = x;
            }
            v = w;
            gv = gw;
            w = x;
            gw = gx;
            x = u;
            gx = gu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if gu <= gw || w == x {
                v = w;
                gv = gw;
                w = u;
                gw = gu;
            } else if gu <= gv || v == x || v == w {
                v = u;
                gv = gu;
            }
        }
    }

    let mut best = (x, -gx);
    for t in [bracket.lo, bracket.hi] {
        let ft = eval(&mut f, t)?;
        if ft > best.1 {
            best = (t, ft);
        }
    }
    Ok(best)
}

/// Exhaustive evaluation on `points` equally spaced nodes; the first node
/// attaining the maximum wins. NaN values are skipped.
pub fn grid_oracle_maximize<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    points: usize,
) -> (f64, f64) {
    let points = points.max(2);
    let step = (hi - lo) / (points - 1) as f64;
    let mut best = (lo, f64::NEG_INFINITY);
    let mut seen = false;
    for i in 0..points {
        let t = if i == points - 1 {
            hi
        } else {
            lo + step * i as f64
        };
        let v = f(t);
        if v.is_nan() {
            continue;
        }
        if !seen || v > best.1 {
            best = (t, v);
            seen = true;
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq)]
pub struct NelderMeadResult {
    pub point: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

pub const NELDER_MEAD_MAX_ITER: usize = 10_000;

/// Downhill simplex search for a maximum of `f`.
///
/// Stops when both the spread of objective values and the simplex diameter
/// fall below `tol`; one restart from the best vertex guards against a
/// collapsed simplex. Non-finite or NaN values count as `-inf`.
pub fn nelder_mead_maximize<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    start: &[f64],
    tol: f64,
) -> NelderMeadResult {
    let mut g = |x: &[f64]| {
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            -v
        }
    };
    let mut total = 0;
    let mut point = start.to_vec();
    let mut converged = false;
    let mut value = g(&point);
    for _restart in 0..2 {
        let budget = NELDER_MEAD_MAX_ITER.saturating_sub(total);
        let run = simplex_minimize(&mut g, &point, tol, budget);
        total += run.iterations;
        point = run.point;
        value = run.value;
        converged = run.converged;
        if !converged {
            break;
        }
    }
    NelderMeadResult {
        point,
        value: -value,
        iterations: total,
        converged,
    }
}

fn simplex_minimize<G: FnMut(&[f64]) -> f64>(
    g: &mut G,
    start: &[f64],
    tol: f64,
    max_iter: usize,
) -> NelderMeadResult {
    let n = start.len();
    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);

    let mut verts: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    verts.push(start.to_vec());
    for i in 0..n {
        let mut v = start.to_vec();
        v[i] += if v[i] != 0.0 { 0.05 * v[i] } else { 0.00025 };
        verts.push(v);
    }
    let mut vals: Vec<f64> = verts.iter().map(|v| g(v)).collect();

    let mut iter = 0;
    let mut converged = false;
    while iter < max_iter {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
        verts = order.iter().map(|&i| verts[i].clone()).collect();
        vals = order.iter().map(|&i| vals[i]).collect();

        let f_spread = if vals[n].is_finite() && vals[0].is_finite() {
            (vals[n] - vals[0]).abs()
        } else {
            f64::INFINITY
        };
        let x_spread = verts[1..]
            .iter()
            .flat_map(|v| v.iter().zip(&verts[0]).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if f_spread <= tol && x_spread <= tol {
            converged = true;
            break;
        }
        iter += 1;

        let centroid: Vec<f64> = (0..n)
            .map(|k| verts[..n].iter().map(|v| v[k]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&verts[n])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let xr = along(alpha);
        let fr = g(&xr);
        if fr < vals[0] {
            let xe = along(gamma);
            let fe = g(&xe);
            if fe < fr {
                verts[n] = xe;
                vals[n] = fe;
            } else {
                verts[n] = xr;
                vals[n] = fr;
            }
            continue;
        }
        if fr < vals[n - 1] {
            verts[n] = xr;
            vals[n] = fr;
            continue;
        }
        let (xc, fc) = if fr < vals[n] {
            let xc = along(rho);
            let fc = g(&xc);
            (xc, fc)
        } else {
            let xc = along(-rho);
            let fc = g(&xc);
            (xc, fc)
        };
        if fc < vals[n].min(fr) {
            verts[n] = xc;
            vals[n] = fc;
            continue;
        }
        // shrink toward the best vertex
        let best = verts[0].clone();
        for i in 1..=n {
            for k in 0..n {
                verts[i][k] = best[k] + sigma * (verts[i][k] - best[k]);
            }
            vals[i] = g(&verts[i]);
        }
    }

    let (bi, _) = vals
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("simplex has vertices");
    NelderMeadResult {
        point: verts[bi].clone(),
        value: vals[bi],
        iterations: iter,
        converged,
    }
}
