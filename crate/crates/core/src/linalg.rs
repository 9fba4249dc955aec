//! Small dense linear algebra in complex arithmetic.
//!
//! Everything here works on tiny systems: stage matrices of Runge-Kutta
//! tableaus (s <= 6), Vandermonde oracles and test surrogates. The PDE-sized
//! solves live in [`crate::operator`] with structure-aware backends.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly;
use crate::scalar::{cast, Real};

/// Row-major dense LU factorization with partial pivoting.
#[derive(Debug, Clone)]
pub struct DenseLu<T: Real> {
    n: usize,
    lu: Vec<Complex<T>>,
    piv: Vec<usize>,
}

impl<T: Real> DenseLu<T> {
    /// Factor the `n x n` row-major matrix `a`.
    pub fn factor(n: usize, a: &[Complex<T>]) -> Result<Self> {
        assert_eq!(a.len(), n * n, "matrix data does not match dimension");
        let mut lu = a.to_vec();
        let mut piv = vec![0usize; n];
        for k in 0..n {
            let mut p = k;
            let mut best = lu[k * n + k].norm();
            for i in k + 1..n {
                let v = lu[i * n + k].norm();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best == T::zero() || !best.is_finite() {
                return Err(Error::SingularShift {
                    re: f64::NAN,
                    im: f64::NAN,
                    tau: f64::NAN,
                });
            }
            piv[k] = p;
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
            }
            let pivot = lu[k * n + k];
            for i in k + 1..n {
                let m = lu[i * n + k] / pivot;
                lu[i * n + k] = m;
                for j in k + 1..n {
                    let t = m * lu[k * n + j];
                    lu[i * n + j] = lu[i * n + j] - t;
                }
            }
        }
        Ok(Self { n, lu, piv })
    }

    pub fn solve(&self, b: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(b.len(), self.n);
        let n = self.n;
        let mut x = b.to_vec();
        for k in 0..n {
            x.swap(k, self.piv[k]);
            for i in k + 1..n {
                let t = self.lu[i * n + k] * x[k];
                x[i] = x[i] - t;
            }
        }
        for k in (0..n).rev() {
            for j in k + 1..n {
                let t = self.lu[k * n + j] * x[j];
                x[k] = x[k] - t;
            }
            x[k] = x[k] / self.lu[k * n + k];
        }
        x
    }
}

pub fn matvec<T: Real>(n: usize, a: &[Complex<T>], x: &[Complex<T>]) -> Vec<Complex<T>> {
    let mut y = vec![Complex::zero(); n];
    for i in 0..n {
        let mut acc = Complex::zero();
        for j in 0..n {
            acc = acc + a[i * n + j] * x[j];
        }
        y[i] = acc;
    }
    y
}

/// Characteristic polynomial of a real `n x n` matrix by the
/// Leverrier-Faddeev recurrence: ascending coefficients of `det(lambda I - A)`,
/// monic (last entry 1).
pub fn char_poly<T: Real>(n: usize, a: &[T]) -> Vec<T> {
    assert_eq!(a.len(), n * n);
    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[n] = T::one();
    // m starts as A and accumulates A*(M + c I) each round.
    let mut m = a.to_vec();
    for k in 1..=n {
        let mut trace = T::zero();
        for i in 0..n {
            trace += m[i * n + i];
        }
        let c = -trace / cast::<T>(k as f64);
        coeffs[n - k] = c;
        if k == n {
            break;
        }
        for i in 0..n {
            m[i * n + i] += c;
        }
        let mut next = vec![T::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = T::zero();
                for l in 0..n {
                    acc += a[i * n + l] * m[l * n + j];
                }
                next[i * n + j] = acc;
            }
        }
        m = next;
    }
    coeffs
}

/// Complex eigen-decomposition `A = V diag(lambda) V^{-1}` of a small real
/// matrix with pairwise distinct eigenvalues.
#[derive(Debug, Clone)]
pub struct EigenDecomposition<T: Real> {
    pub values: Vec<Complex<T>>,
    /// Row-major eigenvector matrix (columns are eigenvectors).
    pub vectors: Vec<Complex<T>>,
    /// Row-major inverse of the eigenvector matrix.
    pub vectors_inv: Vec<Complex<T>>,
}

pub fn eigen_decompose<T: Real>(n: usize, a: &[T]) -> Result<EigenDecomposition<T>> {
    let cp = char_poly(n, a);
    let cpc: Vec<Complex<T>> = cp.iter().map(|&c| Complex::new(c, T::zero())).collect();
    let mut values = poly::roots(&cpc)?;
    for v in values.iter_mut() {
        *v = poly::newton_polish(&cpc, *v);
    }
    let scale = a
        .iter()
        .fold(T::zero(), |m, &v| m.max(v.abs()))
        .max(T::one());
    for i in 0..n {
        for j in i + 1..n {
            if (values[i] - values[j]).norm() <= scale * cast(1e-8) {
                return Err(Error::RootFindingFailure(
                    "repeated eigenvalues: stage matrix is not diagonalized".into(),
                ));
            }
        }
    }

    // Inverse iteration on a slightly shifted matrix gives each eigenvector.
    let mut vectors = vec![Complex::<T>::zero(); n * n];
    for (col, lambda) in values.iter().enumerate() {
        let shift = lambda + Complex::new(scale * T::epsilon() * cast(64.0), T::epsilon());
        let mut m = vec![Complex::<T>::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = Complex::new(a[i * n + j], T::zero());
            }
            m[i * n + i] = m[i * n + i] - shift;
        }
        let lu = DenseLu::factor(n, &m)?;
        let mut v: Vec<Complex<T>> = (0..n)
            .map(|k| Complex::new(T::one() + cast::<T>(k as f64) * cast::<T>(0.25), cast(0.125)))
            .collect();
        for _ in 0..3 {
            v = lu.solve(&v);
            let norm = v.iter().fold(T::zero(), |acc, c| acc + c.norm_sqr()).sqrt();
            for c in v.iter_mut() {
                *c = *c / Complex::new(norm, T::zero());
            }
        }
        for i in 0..n {
            vectors[i * n + col] = v[i];
        }
    }

    let lu = DenseLu::factor(n, &vectors)?;
    let mut vectors_inv = vec![Complex::<T>::zero(); n * n];
    for col in 0..n {
        let mut e = vec![Complex::<T>::zero(); n];
        e[col] = Complex::one();
        let x = lu.solve(&e);
        for i in 0..n {
            vectors_inv[i * n + col] = x[i];
        }
    }

    // Residual gate: A V = V diag(lambda).
    let mut residual = T::zero();
    for col in 0..n {
        for i in 0..n {
            let mut av = Complex::<T>::zero();
            for j in 0..n {
                av = av + Complex::new(a[i * n + j], T::zero()) * vectors[j * n + col];
            }
            let diff = av - values[col] * vectors[i * n + col];
            residual = residual.max(diff.norm());
        }
    }
    if residual > scale * cast(1e-10) {
        return Err(Error::RootFindingFailure(format!(
            "eigen-decomposition residual {residual:?} too large"
        )));
    }

    Ok(EigenDecomposition {
        values,
        vectors,
        vectors_inv,
    })
}
