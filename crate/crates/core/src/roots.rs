//! Scalar root finding: Brent's method on a bracket and real-root isolation
//! for polynomials through the critical points of their derivatives.

use std::convert::Infallible;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrentOutcome {
    pub root: f64,
    pub value: f64,
    pub iterations: usize,
    /// Stopped on the tolerance rather than on the iteration cap.
    pub converged: bool,
}

/// Brent's method for a fallible function. Returns `Ok(None)` if `[a, b]`
/// does not bracket a sign change. Stops when the bracket shrinks below
/// `xtol` (plus a few ulps of the iterate) or |f| ≤ `ftol`.
pub fn brent_try<E, F>(
    mut f: F,
    mut a: f64,
    mut b: f64,
    xtol: f64,
    ftol: f64,
    max_iter: usize,
) -> Result<Option<BrentOutcome>, E>
where
    F: FnMut(f64) -> Result<f64, E>,
{
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if fa == 0.0 {
        return Ok(Some(BrentOutcome { root: a, value: fa, iterations: 0, converged: true }));
    }
    if fb == 0.0 {
        return Ok(Some(BrentOutcome { root: b, value: fb, iterations: 0, converged: true }));
    }
    if (fa > 0.0) == (fb > 0.0) {
        return Ok(None);
    }
    let (mut c, mut fc) = (b, fb);
    let mut d = b - a;
    let mut e = d;
    for iter in 1..=max_iter {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb.abs() <= ftol {
            return Ok(Some(BrentOutcome { root: b, value: fb, iterations: iter, converged: true }));
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b)?;
    }
    Ok(Some(BrentOutcome { root: b, value: fb, iterations: max_iter, converged: false }))
}

pub fn brent<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    xtol: f64,
    ftol: f64,
    max_iter: usize,
) -> Option<BrentOutcome> {
    match brent_try::<Infallible, _>(|x| Ok(f(x)), a, b, xtol, ftol, max_iter) {
        Ok(r) => r,
        Err(never) => match never {},
    }
}

/// Horner evaluation; `coeffs[k]` multiplies x^k.
pub fn poly_eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

pub fn poly_derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| k as f64 * c)
        .collect()
}

pub fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn poly_add(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len().max(b.len())];
    for (k, &c) in a.iter().enumerate() {
        out[k] += c;
    }
    for (k, &c) in b.iter().enumerate() {
        out[k] += c;
    }
    out
}

pub fn poly_scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|&c| c * s).collect()
}

fn trimmed(coeffs: &[f64]) -> &[f64] {
    let len = coeffs.iter().rposition(|&c| c != 0.0).map_or(0, |i| i + 1);
    &coeffs[..len]
}

/// All real roots of a polynomial strictly inside `(lo, hi)`, ascending.
///
/// The derivative's roots split the interval into monotone pieces, each
/// holding at most one root; those with a sign change are refined with Brent.
/// Roots of even multiplicity are found only if they land exactly on a
/// critical point.
pub fn real_roots(coeffs: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let p = trimmed(coeffs);
    match p.len() {
        0 | 1 => return Vec::new(),
        2 => {
            let r = -p[0] / p[1];
            return if r > lo && r < hi { vec![r] } else { Vec::new() };
        }
        _ => {}
    }
    let crit = real_roots(&poly_derivative(p), lo, hi);
    let mut knots = Vec::with_capacity(crit.len() + 2);
    knots.push(lo);
    knots.extend(crit);
    knots.push(hi);

    let scale = lo.abs().max(hi.abs()).max(1.0);
    let mut roots: Vec<f64> = Vec::new();
    for w in knots.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (fa, fb) = (poly_eval(p, a), poly_eval(p, b));
        if fa == 0.0 && a > lo {
            roots.push(a);
            continue;
        }
        if fb == 0.0 || (fa > 0.0) == (fb > 0.0) {
            continue;
        }
        if let Some(out) = brent(|x| poly_eval(p, x), a, b, 4.0 * f64::EPSILON * scale, 0.0, 200) {
            roots.push(out.root);
        }
    }
    roots.dedup_by(|a, b| (*a - *b).abs() <= 8.0 * f64::EPSILON * scale);
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_finds_cube_root() {
        let out = brent(|x| x * x * x - 2.0, 0.0, 2.0, 1e-15, 0.0, 100).unwrap();
        assert!(out.converged);
        assert!((out.root - 2f64.cbrt()).abs() < 1e-14);
    }

    #[test]
    fn brent_rejects_unbracketed_interval() {
        assert!(brent(|x| x * x + 1.0, -1.0, 1.0, 1e-12, 0.0, 50).is_none());
    }

    #[test]
    fn brent_propagates_errors() {
        let r: Result<Option<BrentOutcome>, &str> =
            brent_try(|x| if x > 0.5 { Err("boom") } else { Ok(x - 0.7) }, 0.0, 1.0, 1e-12, 0.0, 50);
        assert_eq!(r.unwrap_err(), "boom");
    }

    #[test]
    fn polynomial_helpers() {
        let p = poly_mul(&[1.0, 1.0], &[-1.0, 1.0]);
        assert_eq!(p, vec![-1.0, 0.0, 1.0]);
        assert_eq!(poly_eval(&p, 3.0), 8.0);
        assert_eq!(poly_derivative(&p), vec![0.0, 2.0]);
        assert_eq!(poly_add(&[1.0], &[0.0, 2.0]), vec![1.0, 2.0]);
        assert_eq!(poly_scale(&[1.0, -2.0], -0.5), vec![-0.5, 1.0]);
    }

    #[test]
    fn roots_of_product_form() {
        // (x+0.5)(x−0.1)(x−0.2)(x−0.7)(x²+1)
        let mut p = vec![1.0];
        for r in [-0.5, 0.1, 0.2, 0.7] {
            p = poly_mul(&p, &[-r, 1.0]);
        }
        p = poly_mul(&p, &[1.0, 0.0, 1.0]);
        let roots = real_roots(&p, -1.0, 1.0);
        let expect = [-0.5, 0.1, 0.2, 0.7];
        assert_eq!(roots.len(), 4);
        for (r, e) in roots.iter().zip(expect) {
            assert!((r - e).abs() < 1e-13);
        }
        assert_eq!(real_roots(&p, 0.15, 0.18), Vec::<f64>::new());
    }

    #[test]
    fn no_real_roots() {
        assert!(real_roots(&[1.0, 0.0, 1.0], -10.0, 10.0).is_empty());
        assert!(real_roots(&[3.0], -1.0, 1.0).is_empty());
    }
}
