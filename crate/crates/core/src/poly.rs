//! Dense complex polynomials in ascending-coefficient form.
//!
//! Small utilities shared by the rational-function machinery: arithmetic,
//! Horner evaluation, Taylor shifts, power-series division and a
//! Durand-Kerner root finder. Degrees in this crate never exceed 12.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{cast, Real};

pub type CPoly<T> = Vec<Complex<T>>;

/// Drop trailing coefficients that are negligible next to the largest one.
pub fn trim<T: Real>(coeffs: &[Complex<T>]) -> CPoly<T> {
    let scale = coeffs
        .iter()
        .map(|c| c.norm())
        .fold(T::zero(), |a, b| a.max(b));
    let tol = scale * T::epsilon() * cast(100.0);
    let mut out: CPoly<T> = coeffs.to_vec();
    while out.len() > 1 && out.last().map_or(false, |c| c.norm() <= tol) {
        out.pop();
    }
    out
}

pub fn degree<T: Real>(coeffs: &[Complex<T>]) -> usize {
    trim(coeffs).len().saturating_sub(1)
}

/// Horner evaluation.
pub fn eval<T: Real>(coeffs: &[Complex<T>], z: Complex<T>) -> Complex<T> {
    let mut acc = Complex::zero();
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

pub fn mul<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> CPoly<T> {
    let mut out = vec![Complex::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] = out[i + j] + ai * bj;
        }
    }
    out
}

pub fn scale<T: Real>(a: &[Complex<T>], s: Complex<T>) -> CPoly<T> {
    a.iter().map(|c| c * s).collect()
}

pub fn derivative<T: Real>(a: &[Complex<T>]) -> CPoly<T> {
    if a.len() <= 1 {
        return vec![Complex::zero()];
    }
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * Complex::new(cast::<T>(k as f64), T::zero()))
        .collect()
}

/// Monic polynomial with the given roots.
pub fn from_roots<T: Real>(roots: &[Complex<T>]) -> CPoly<T> {
    let mut out: CPoly<T> = vec![Complex::one()];
    for r in roots {
        out = mul(&out, &[-r, Complex::one()]);
    }
    out
}

/// Coefficients of `p(c + u)` as a polynomial in `u` (synthetic-division shift).
pub fn taylor_shift<T: Real>(p: &[Complex<T>], c: Complex<T>) -> CPoly<T> {
    let mut a = p.to_vec();
    let n = a.len();
    if n <= 1 {
        return a;
    }
    for i in 0..n - 1 {
        for j in (i..n - 1).rev() {
            let t = a[j + 1] * c;
            a[j] = a[j] + t;
        }
    }
    a
}

/// First `terms` coefficients of the power series `num / den`; `den[0] != 0`.
pub fn series_div<T: Real>(num: &[Complex<T>], den: &[Complex<T>], terms: usize) -> CPoly<T> {
    let d0 = den[0];
    let mut out = Vec::with_capacity(terms);
    for k in 0..terms {
        let mut acc = num.get(k).copied().unwrap_or_else(Complex::zero);
        for i in 1..=k {
            if let Some(di) = den.get(i) {
                acc = acc - di * out[k - i];
            }
        }
        out.push(acc / d0);
    }
    out
}

/// All roots of the polynomial by the Durand-Kerner simultaneous iteration.
///
/// Multiple roots come out as a cluster of simple roots with an
/// `eps^(1/m)`-sized spread; callers group and polish them.
pub fn roots<T: Real>(coeffs: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    let p = trim(coeffs);
    let deg = p.len() - 1;
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = p[deg];
    let a: CPoly<T> = p.iter().map(|c| c / lead).collect();
    if deg == 1 {
        return Ok(vec![-a[0]]);
    }

    // Cauchy bound on root magnitudes gives the start circle.
    let radius = T::one()
        + a[..deg]
            .iter()
            .map(|c| c.norm())
            .fold(T::zero(), |m, v| m.max(v));
    let mut z: Vec<Complex<T>> = (0..deg)
        .map(|k| {
            let angle = cast::<T>(2.0) * T::PI() * cast::<T>(k as f64) / cast::<T>(deg as f64)
                + cast::<T>(0.4);
            Complex::new(radius * angle.cos(), radius * angle.sin())
        })
        .collect();

    let tight = T::epsilon() * cast::<T>(64.0);
    for _ in 0..600 {
        let mut max_change = T::zero();
        for i in 0..deg {
            let pz = eval(&a, z[i]);
            let mut denom = Complex::<T>::one();
            for j in 0..deg {
                if j != i {
                    denom = denom * (z[i] - z[j]);
                }
            }
            if denom.norm() == T::zero() {
                // Coincident iterates: nudge apart and retry next sweep.
                z[i] = z[i] + Complex::new(T::epsilon().sqrt(), T::epsilon().sqrt());
                max_change = T::one();
                continue;
            }
            let delta = pz / denom;
            z[i] = z[i] - delta;
            let rel = delta.norm() / (T::one() + z[i].norm());
            max_change = max_change.max(rel);
        }
        if !max_change.is_finite() {
            return Err(Error::RootFindingFailure(
                "Durand-Kerner iteration diverged".into(),
            ));
        }
        if max_change < tight {
            break;
        }
    }
    if z.iter().any(|r| !r.re.is_finite() || !r.im.is_finite()) {
        return Err(Error::RootFindingFailure(
            "non-finite root iterate".into(),
        ));
    }
    Ok(z)
}

/// Newton refinement of a simple root of `p` (or of `p^(k)` when polishing
/// the center of a k+1-fold cluster: pass the differentiated polynomial).
pub fn newton_polish<T: Real>(p: &[Complex<T>], start: Complex<T>) -> Complex<T> {
    let dp = derivative(p);
    let mut z = start;
    for _ in 0..60 {
        let f = eval(p, z);
        let g = eval(&dp, z);
        if g.norm() == T::zero() {
            break;
        }
        let delta = f / g;
        z = z - delta;
        if delta.norm() <= (T::one() + z.norm()) * T::epsilon() * cast(4.0) {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        Complex::new(re, im)
    }

    #[test]
    fn series_division_geometric() {
        // 1/(1-z) = 1 + z + z^2 + ...
        let num = vec![c(1.0, 0.0)];
        let den = vec![c(1.0, 0.0), c(-1.0, 0.0)];
        let s = series_div(&num, &den, 5);
        for t in &s {
            assert!((t - c(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn taylor_shift_square() {
        // (c+u)^2 = c^2 + 2cu + u^2
        let p = vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        let s = taylor_shift(&p, c(3.0, 0.0));
        assert!((s[0] - c(9.0, 0.0)).norm() < 1e-14);
        assert!((s[1] - c(6.0, 0.0)).norm() < 1e-14);
        assert!((s[2] - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn simple_roots_recovered() {
        let want = [c(1.0, 0.0), c(-2.0, 0.5), c(0.0, -3.0)];
        let p = from_roots(&want);
        let mut got = roots(&p).unwrap();
        for w in &want {
            let (i, _) = got
                .iter()
                .enumerate()
                .min_by(|a, b| {
                    (a.1 - w).norm().partial_cmp(&(b.1 - w).norm()).unwrap()
                })
                .unwrap();
            assert!((got[i] - w).norm() < 1e-10);
            got.remove(i);
        }
    }

    #[test]
    fn triple_root_lands_within_cluster_tolerance() {
        // A triple root comes back as a cluster with an eps^(1/3) spread; the
        // loose clustering stage downstream has to catch all members, and the
        // derivative polish recovers the center to machine precision.
        let p = from_roots(&[c(2.0, 0.0), c(2.0, 0.0), c(2.0, 0.0)]);
        let got = roots(&p).unwrap();
        for r in &got {
            assert!((r - c(2.0, 0.0)).norm() < 1e-4);
        }
        let dd = derivative(&derivative(&p));
        let mean = got.iter().sum::<C>() / c(3.0, 0.0);
        let center = newton_polish(&dd, mean);
        assert!((center - c(2.0, 0.0)).norm() < 1e-12);
    }
}
