//! Closed-form roots of complex polynomials up to degree four.
//!
//! Quartics go through Ferrari's reduction (depressed quartic plus a Cardano
//! resolvent cubic). Every root is Newton-polished on the original
//! polynomial, and the result is accepted only if the monic polynomial
//! rebuilt from the roots matches the input coefficients. When it does not,
//! the roots are recomputed as eigenvalues of the companion matrix.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::trig::TrigPoly;

type C = Complex64;

const ZERO: C = C::new(0.0, 0.0);

/// Relative threshold below which a Laurent coefficient is treated as zero.
const STRIP_TOL: f64 = 1e-14;
/// Candidate roots must satisfy `||z| - 1| < CIRCLE_TOL` before polishing.
const CIRCLE_TOL: f64 = 1e-4;
/// Polished roots must satisfy `|p(θ)| <= VALUE_TOL * scale`.
const VALUE_TOL: f64 = 1e-12;
/// Coefficient reconstruction tolerance for accepting closed-form roots.
const RECON_TOL: f64 = 1e-10;
/// Relative distance below which two roots are re-solved as a pair.
const CLUSTER_TOL: f64 = 1e-3;

fn horner(coeffs: &[C], z: C) -> (C, C) {
    // returns (p(z), p'(z)); coeffs ascending
    let mut p = ZERO;
    let mut dp = ZERO;
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn horner2(coeffs: &[C], z: C) -> (C, C, C) {
    // returns (p(z), p'(z), p''(z)); coeffs ascending
    let mut p = ZERO;
    let mut dp = ZERO;
    let mut d2p = ZERO;
    for &c in coeffs.iter().rev() {
        d2p = d2p * z + 2.0 * dp;
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp, d2p)
}

fn polish(coeffs: &[C], z0: C, iters: usize) -> C {
    let mut z = z0;
    let mut fz = horner(coeffs, z).0.norm();
    for _ in 0..iters {
        let (p, dp) = horner(coeffs, z);
        if dp.norm() == 0.0 || p.norm() == 0.0 {
            break;
        }
        let cand = z - p / dp;
        let fc = horner(coeffs, cand).0.norm();
        if fc.is_nan() || fc >= fz {
            break;
        }
        z = cand;
        fz = fc;
    }
    z
}

/// Re-solves pairs of nearby roots from the local quadratic Taylor model at
/// their centroid. Newton started from either member of a near-double root
/// often jumps to its partner or stalls; the quadratic model separates them.
fn split_close_pairs(coeffs: &[C], roots: &mut [C]) {
    let n = roots.len();
    let residual = |z: C| horner(coeffs, z).0.norm();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (roots[i], roots[j]);
            let scale = a.norm().max(b.norm()).max(1.0);
            if (a - b).norm() >= CLUSTER_TOL * scale {
                continue;
            }
            let w = (a + b) / 2.0;
            let (p, dp, d2p) = horner2(coeffs, w);
            if d2p == ZERO {
                continue;
            }
            let [h1, h2] = quadratic(d2p / 2.0, dp, p);
            let c1 = polish(coeffs, w + h1, 8);
            let c2 = polish(coeffs, w + h2, 8);
            if residual(c1) + residual(c2) <= residual(a) + residual(b) {
                roots[i] = c1;
                roots[j] = c2;
            }
        }
    }
}

/// Roots of `a·z² + b·z + c` with `a != 0`, avoiding cancellation.
pub fn quadratic(a: C, b: C, c: C) -> [C; 2] {
    let disc = (b * b - 4.0 * a * c).sqrt();
    let q = if (b.conj() * disc).re >= 0.0 {
        -(b + disc) / 2.0
    } else {
        -(b - disc) / 2.0
    };
    if q == ZERO {
        return [ZERO, ZERO];
    }
    [q / a, c / q]
}

/// Roots of the monic cubic `z³ + a·z² + b·z + c` by Cardano's formula.
pub fn cubic_monic(a: C, b: C, c: C) -> [C; 3] {
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let omega = C::new(-0.5, 3f64.sqrt() / 2.0);
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let u3a = -q / 2.0 + disc;
    let u3b = -q / 2.0 - disc;
    let u3 = if u3a.norm() >= u3b.norm() { u3a } else { u3b };
    let mut out = [ZERO; 3];
    if u3 == ZERO {
        // p = q = 0: triple root
        return [-shift; 3];
    }
    let u = u3.powf(1.0 / 3.0);
    let mut w = C::new(1.0, 0.0);
    for slot in out.iter_mut() {
        let uk = u * w;
        *slot = uk - p / (3.0 * uk) - shift;
        w *= omega;
    }
    let coeffs = [c, b, a, C::new(1.0, 0.0)];
    out.map(|z| polish(&coeffs, z, 3))
}

/// Ferrari's solution of the monic quartic `x⁴ + a·x³ + b·x² + c·x + d`.
pub fn ferrari_monic(a: C, b: C, c: C, d: C) -> [C; 4] {
    let a2 = a * a;
    let p = b - 3.0 * a2 / 8.0;
    let q = c - a * b / 2.0 + a2 * a / 8.0;
    let r = d - a * c / 4.0 + a2 * b / 16.0 - 3.0 * a2 * a2 / 256.0;
    let shift = a / 4.0;

    // resolvent 8m³ + 8p·m² + (2p² - 8r)·m - q² = 0, take the largest root
    let res = cubic_monic(p, p * p / 4.0 - r, -q * q / 8.0);
    let m = res
        .into_iter()
        .max_by(|x, y| x.norm().total_cmp(&y.norm()))
        .unwrap();

    let ys: [C; 4] = if m == ZERO {
        // p = r = q = 0
        [ZERO; 4]
    } else {
        let s = (2.0 * m).sqrt();
        let k = q / (2.0 * s);
        let [y1, y2] = quadratic(C::new(1.0, 0.0), -s, p / 2.0 + m + k);
        let [y3, y4] = quadratic(C::new(1.0, 0.0), s, p / 2.0 + m - k);
        [y1, y2, y3, y4]
    };
    ys.map(|y| y - shift)
}

fn monic_from_roots(roots: &[C]) -> Vec<C> {
    // ascending coefficients of Π (z - root)
    let mut poly = vec![C::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![ZERO; poly.len() + 1];
        for (k, &c) in poly.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * r;
        }
        poly = next;
    }
    poly
}

fn reconstruction_error(monic: &[C], roots: &[C]) -> f64 {
    let rebuilt = monic_from_roots(roots);
    let scale = monic.iter().map(|c| c.norm()).fold(1.0, f64::max);
    monic
        .iter()
        .zip(&rebuilt)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
        / scale
}

/// Companion-matrix eigenvalues of a monic polynomial (ascending, leading 1).
pub fn companion_roots(monic: &[C]) -> Vec<C> {
    let n = monic.len() - 1;
    if n == 0 {
        return vec![];
    }
    let mut m = DMatrix::<C>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = C::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -monic[i];
    }
    let eig = m
        .schur()
        .eigenvalues()
        .expect("complex Schur form is triangular");
    eig.iter().map(|&z| polish(monic, z, 3)).collect()
}

/// All complex roots of a polynomial of degree at most four.
///
/// `coeffs` are ascending. Exact trailing zeros (highest degree) are dropped;
/// exact leading zeros contribute roots at the origin. Returns an empty
/// vector for a nonzero constant.
pub fn solve(coeffs: &[C]) -> Vec<C> {
    let mut hi = coeffs.len();
    while hi > 0 && coeffs[hi - 1] == ZERO {
        hi -= 1;
    }
    let mut lo = 0;
    while lo < hi && coeffs[lo] == ZERO {
        lo += 1;
    }
    if hi == 0 {
        return vec![];
    }
    let mut roots = vec![ZERO; lo];
    let core = &coeffs[lo..hi];
    let lead = core[core.len() - 1];
    let monic: Vec<C> = core.iter().map(|&c| c / lead).collect();
    match monic.len() - 1 {
        0 => {}
        1 => roots.push(-monic[0]),
        2 => roots.extend(quadratic(C::new(1.0, 0.0), monic[1], monic[0])),
        3 => roots.extend(cubic_monic(monic[2], monic[1], monic[0])),
        4 => {
            let closed: Vec<C> = ferrari_monic(monic[3], monic[2], monic[1], monic[0])
                .into_iter()
                .map(|z| polish(&monic, z, 3))
                .collect();
            let err = reconstruction_error(&monic, &closed);
            if err <= RECON_TOL {
                roots.extend(closed);
            } else {
                let fallback = companion_roots(&monic);
                if reconstruction_error(&monic, &fallback) < err {
                    roots.extend(fallback);
                } else {
                    roots.extend(closed);
                }
            }
        }
        d => unreachable!("degree {d} polynomial passed to quartic solver"),
    }
    let tail = roots.len() - lo;
    split_close_pairs(&monic, &mut roots[lo..lo + tail]);
    roots
}

/// Laurent coefficients of `p` with negligible top-degree terms zeroed.
pub(crate) fn stripped_laurent(p: &TrigPoly) -> [C; 5] {
    let mut q = p.laurent_quartic();
    let scale = q.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if q[4].norm() <= STRIP_TOL * scale {
        q[0] = ZERO;
        q[4] = ZERO;
        if q[3].norm() <= STRIP_TOL * scale {
            q[1] = ZERO;
            q[3] = ZERO;
        }
    }
    q
}

/// Roots of a real trigonometric polynomial of degree at most two.
pub(crate) fn trig_real_roots(p: &TrigPoly) -> Option<Vec<f64>> {
    let scale = p.c0.abs() + p.oscillation_scale();
    if scale == 0.0 {
        return None;
    }
    let laurent = stripped_laurent(p);
    let dp = p.derivative();
    let tol = VALUE_TOL * scale;

    let mut cands: Vec<(f64, f64)> = Vec::new();
    for z in solve(&laurent) {
        if (z.norm() - 1.0).abs() >= CIRCLE_TOL {
            continue;
        }
        let mut theta = z.arg();
        let mut val = p.eval(theta);
        for _ in 0..5 {
            let slope = dp.eval(theta);
            if slope == 0.0 || val == 0.0 {
                break;
            }
            let next = theta - val / slope;
            let nv = p.eval(next);
            if nv.is_nan() || nv.abs() >= val.abs() {
                break;
            }
            theta = next;
            val = nv;
        }
        if val.abs() <= tol {
            cands.push((crate::angle::Angle::new(theta).value(), val.abs()));
        }
    }
    Some(merge_clusters(p, cands, tol))
}

/// Merges adjacent candidates that are numerically the same root: closer
/// than 1e-9, or with `p` at noise level at their midpoint.
fn merge_clusters(p: &TrigPoly, mut cands: Vec<(f64, f64)>, tol: f64) -> Vec<f64> {
    use std::f64::consts::TAU;
    if cands.is_empty() {
        return vec![];
    }
    cands.sort_by(|a, b| a.0.total_cmp(&b.0));
    let same = |a: f64, b: f64| {
        // b follows a counterclockwise
        let gap = (b - a).rem_euclid(TAU);
        gap < 1e-9 || (gap < 1e-3 && p.eval(a + gap / 2.0).abs() <= tol)
    };
    let mut clusters: Vec<Vec<(f64, f64)>> = vec![vec![cands[0]]];
    for &c in &cands[1..] {
        let last = clusters.last_mut().unwrap();
        if same(last.last().unwrap().0, c.0) {
            last.push(c);
        } else {
            clusters.push(vec![c]);
        }
    }
    if clusters.len() > 1 {
        let first = clusters[0][0].0;
        let last = clusters.last().unwrap().last().unwrap().0;
        if same(last, first) {
            let tail = clusters.pop().unwrap();
            clusters[0].extend(tail);
        }
    }
    let mut out: Vec<f64> = clusters
        .into_iter()
        .map(|cl| cl.into_iter().min_by(|a, b| a.1.total_cmp(&b.1)).unwrap().0)
        .collect();
    out.sort_by(f64::total_cmp);
    out
}
