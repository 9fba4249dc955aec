//! Implicit Runge-Kutta tableaus and their stability functions.

use crate::error::{Error, Result};
use crate::linalg::char_poly;
use crate::rational::RationalFunction;
use crate::scalar::{cast, Real};

/// Butcher tableau of an implicit RK method: stage matrix `W`, weights `b`,
/// abscissae `c`, plus the method's declared classical and stage orders.
#[derive(Debug, Clone)]
pub struct ButcherTableau<T: Real> {
    pub name: String,
    /// Row-major s x s stage matrix.
    pub stage_matrix: Vec<T>,
    pub weights: Vec<T>,
    pub abscissae: Vec<T>,
    pub declared_order: usize,
    pub declared_stage_order: usize,
}

impl<T: Real> ButcherTableau<T> {
    /// Validating constructor: row sums must match the abscissae, the weights
    /// must sum to one, and the stability function must reproduce the
    /// declared classical order.
    pub fn new(
        name: &str,
        stage_matrix: Vec<T>,
        weights: Vec<T>,
        abscissae: Vec<T>,
        declared_order: usize,
        declared_stage_order: usize,
    ) -> Result<Self> {
        let s = weights.len();
        if stage_matrix.len() != s * s || abscissae.len() != s {
            return Err(Error::DimensionMismatch {
                expected: s,
                got: abscissae.len(),
            });
        }
        let tol = cast::<T>(1e-12).max(T::epsilon() * cast(100.0));
        for i in 0..s {
            let mut row = T::zero();
            for j in 0..s {
                row += stage_matrix[i * s + j];
            }
            if (row - abscissae[i]).abs() > tol {
                return Err(Error::InvalidRational(format!(
                    "tableau {name}: row {i} sums to {row}, abscissa is {}",
                    abscissae[i]
                )));
            }
        }
        let wsum = weights.iter().fold(T::zero(), |a, &b| a + b);
        if (wsum - T::one()).abs() > tol {
            return Err(Error::InvalidRational(format!(
                "tableau {name}: weights sum to {wsum}"
            )));
        }
        let tableau = Self {
            name: name.to_string(),
            stage_matrix,
            weights,
            abscissae,
            declared_order,
            declared_stage_order,
        };
        let detected = tableau.stability_function()?.approximation_order()?;
        if detected != declared_order {
            return Err(Error::InvalidRational(format!(
                "tableau {name}: stability function has order {detected}, declared {declared_order}"
            )));
        }
        Ok(tableau)
    }

    pub fn stages(&self) -> usize {
        self.weights.len()
    }

    /// Stability function `r(z) = 1 + z b^T (I - zW)^{-1} e` as an explicit
    /// polynomial ratio: `det(I - zW + z e b^T) / det(I - zW)`. Both
    /// determinants reduce to characteristic polynomials with the
    /// coefficient order reversed.
    pub fn stability_function(&self) -> Result<RationalFunction<T>> {
        let s = self.stages();
        let cp_den = char_poly(s, &self.stage_matrix);
        let den: Vec<T> = (0..=s).map(|j| cp_den[s - j]).collect();
        let mut shifted = self.stage_matrix.clone();
        for i in 0..s {
            for j in 0..s {
                shifted[i * s + j] -= self.weights[j];
            }
        }
        let cp_num = char_poly(s, &shifted);
        let num: Vec<T> = (0..=s).map(|j| cp_num[s - j]).collect();
        RationalFunction::from_real(&num, &den)
    }

    /// Largest q such that `sum_j W_ij c_j^(k-1) = c_i^k / k` holds for all
    /// stages and k = 1..q.
    pub fn stage_order(&self) -> usize {
        let s = self.stages();
        let tol = cast::<T>(1e-10).max(T::epsilon() * cast(1000.0));
        let mut q = 0;
        for k in 1..=2 * s + 2 {
            let kf = cast::<T>(k as f64);
            let mut holds = true;
            for i in 0..s {
                let mut lhs = T::zero();
                for j in 0..s {
                    lhs += self.stage_matrix[i * s + j] * self.abscissae[j].powi(k as i32 - 1);
                }
                let rhs = self.abscissae[i].powi(k as i32) / kf;
                if (lhs - rhs).abs() > tol {
                    holds = false;
                    break;
                }
            }
            if !holds {
                break;
            }
            q = k;
        }
        q
    }
}

/// Backward (implicit) Euler: p = q = 1.
pub fn implicit_euler<T: Real>() -> ButcherTableau<T> {
    ButcherTableau::new(
        "implicit_euler",
        vec![T::one()],
        vec![T::one()],
        vec![T::one()],
        1,
        1,
    )
    .expect("implicit Euler tableau is valid")
}

/// Three-stage Gauss-Legendre collocation: p = 6, q = 3.
pub fn gauss3<T: Real>() -> ButcherTableau<T> {
    let s15 = cast::<T>(15.0).sqrt();
    let half = cast::<T>(0.5);
    let w = vec![
        cast::<T>(5.0 / 36.0),
        cast::<T>(2.0 / 9.0) - s15 / cast::<T>(15.0),
        cast::<T>(5.0 / 36.0) - s15 / cast::<T>(30.0),
        cast::<T>(5.0 / 36.0) + s15 / cast::<T>(24.0),
        cast::<T>(2.0 / 9.0),
        cast::<T>(5.0 / 36.0) - s15 / cast::<T>(24.0),
        cast::<T>(5.0 / 36.0) + s15 / cast::<T>(30.0),
        cast::<T>(2.0 / 9.0) + s15 / cast::<T>(15.0),
        cast::<T>(5.0 / 36.0),
    ];
    let b = vec![
        cast::<T>(5.0 / 18.0),
        cast::<T>(4.0 / 9.0),
        cast::<T>(5.0 / 18.0),
    ];
    let c = vec![half - s15 / cast::<T>(10.0), half, half + s15 / cast::<T>(10.0)];
    ButcherTableau::new("gauss3", w, b, c, 6, 3).expect("Gauss3 tableau is valid")
}

/// Three-stage, order-4 SDIRK (Crouzeix) with diagonal
/// `gamma = 1/2 + cos(pi/18)/sqrt(3)`: p = 4, q = 1.
pub fn sdirk3<T: Real>() -> ButcherTableau<T> {
    let gamma = cast::<T>(0.5) + (T::PI() / cast::<T>(18.0)).cos() / cast::<T>(3.0).sqrt();
    let half = cast::<T>(0.5);
    let two = cast::<T>(2.0);
    let four = cast::<T>(4.0);
    let six = cast::<T>(6.0);
    let delta = T::one() / (six * (two * gamma - T::one()).powi(2));
    let w = vec![
        gamma,
        T::zero(),
        T::zero(),
        half - gamma,
        gamma,
        T::zero(),
        two * gamma,
        T::one() - four * gamma,
        gamma,
    ];
    let b = vec![delta, T::one() - two * delta, delta];
    let c = vec![gamma, half, T::one() - gamma];
    ButcherTableau::new("sdirk3", w, b, c, 4, 1).expect("SDIRK3 tableau is valid")
}

/// The three methods used throughout the convergence studies.
pub fn builtin_tableaus<T: Real>() -> [ButcherTableau<T>; 3] {
    [implicit_euler(), gauss3(), sdirk3()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::partial_fractions;
    use num_complex::Complex;

    #[test]
    fn implicit_euler_stability_function() {
        let r = implicit_euler::<f64>().stability_function().unwrap();
        // 1 / (1 - z)
        assert_eq!(r.numerator().len(), 1);
        assert!((r.numerator()[0] - Complex::new(1.0, 0.0)).norm() < 1e-14);
        let d: Vec<f64> = r.denominator().iter().map(|c| c.re).collect();
        assert!((d[0] - 1.0).abs() < 1e-14 && (d[1] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn gauss3_is_the_pade_3_3_approximant() {
        let r = gauss3::<f64>().stability_function().unwrap();
        assert_eq!(r.denominator().len(), 4);
        assert_eq!(r.approximation_order().unwrap(), 6);
        let d0 = r.denominator()[0];
        let ratios: Vec<f64> = r.denominator().iter().map(|c| (c / d0).re).collect();
        let expect = [1.0, -0.5, 0.1, -1.0 / 120.0];
        for (got, want) in ratios.iter().zip(expect.iter()) {
            assert!((got - want).abs() < 1e-12, "got {got}, want {want}");
        }
    }

    #[test]
    fn sdirk3_denominator_is_a_triple_pole() {
        let t = sdirk3::<f64>();
        let gamma = t.stage_matrix[0];
        let r = t.stability_function().unwrap();
        let d0 = r.denominator()[0];
        let d: Vec<f64> = r.denominator().iter().map(|c| (c / d0).re).collect();
        let expect = [
            1.0,
            -3.0 * gamma,
            3.0 * gamma * gamma,
            -gamma * gamma * gamma,
        ];
        for (got, want) in d.iter().zip(expect.iter()) {
            assert!((got - want).abs() < 1e-12, "got {got}, want {want}");
        }
        assert_eq!(r.approximation_order().unwrap(), 4);
        let pf = partial_fractions(&r).unwrap();
        assert_eq!(pf.groups.len(), 1);
        assert_eq!(pf.groups[0].multiplicity, 3);
        assert_eq!(pf.total_stages, 3);
    }

    #[test]
    fn declared_orders_and_stage_orders() {
        for t in builtin_tableaus::<f64>() {
            let detected = t.stability_function().unwrap().approximation_order().unwrap();
            assert_eq!(detected, t.declared_order, "{}", t.name);
            assert_eq!(t.stage_order(), t.declared_stage_order, "{}", t.name);
            assert!(t.stage_order() <= t.declared_order);
        }
    }

    #[test]
    fn gauss3_abscissae_are_legendre_roots() {
        let t = gauss3::<f64>();
        let s15 = 15.0f64.sqrt();
        let expect = [0.5 - s15 / 10.0, 0.5, 0.5 + s15 / 10.0];
        for (got, want) in t.abscissae.iter().zip(expect.iter()) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn gauss3_unitary_on_imaginary_axis() {
        let r = gauss3::<f64>().stability_function().unwrap();
        for k in 0..200 {
            let y = -40.0 + 0.4 * k as f64;
            let v = r.evaluate(Complex::new(0.0, y)).unwrap();
            assert!((v.norm() - 1.0).abs() < 1e-10, "modulus off at y = {y}");
        }
    }

    #[test]
    fn builtins_are_a_stable() {
        for t in builtin_tableaus::<f64>() {
            assert!(t.stability_function().unwrap().is_a_stable(), "{}", t.name);
        }
    }

    #[test]
    fn rejects_inconsistent_row_sums() {
        let bad = ButcherTableau::new(
            "bad",
            vec![1.0f64],
            vec![1.0],
            vec![0.5],
            1,
            1,
        );
        assert!(bad.is_err());
    }
}
