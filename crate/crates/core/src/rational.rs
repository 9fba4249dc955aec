//! Rational approximations to e^z and their simple-fraction form.
//!
//! A step of the rational method applies `r(tau A)` through the simple
//! fractions of `r`: a constant `r_inf` plus groups of terms
//! `r_lj / (1 - z w_l)^j` with `Re(w_l) > 0`. Each group corresponds to one
//! shifted linear system per multiplicity, so the form is the executable
//! representation of the stepper.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{self, CPoly};
use crate::scalar::{cast, Real};

/// Default cap for order detection; matching beyond it signals an exact
/// exponential or a misconfigured tolerance.
pub const ORDER_CAP: usize = 12;

/// Ratio of complex polynomials, analytic at 0 and bounded on Re(z) <= 0.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction<T: Real> {
    numerator: CPoly<T>,
    denominator: CPoly<T>,
}

impl<T: Real> RationalFunction<T> {
    /// Build from ascending complex coefficients. Rejects a vanishing
    /// denominator constant term (pole at 0) and a numerator degree above
    /// the denominator degree (unbounded on the left half-plane).
    pub fn new(numerator: Vec<Complex<T>>, denominator: Vec<Complex<T>>) -> Result<Self> {
        if numerator.is_empty() || denominator.is_empty() {
            return Err(Error::InvalidRational("empty coefficient list".into()));
        }
        let numerator = poly::trim(&numerator);
        let denominator = poly::trim(&denominator);
        let den_scale = denominator
            .iter()
            .map(|c| c.norm())
            .fold(T::zero(), |a, b| a.max(b));
        if den_scale == T::zero() {
            return Err(Error::InvalidRational("zero denominator".into()));
        }
        if denominator[0].norm() <= den_scale * T::epsilon() * cast(100.0) {
            return Err(Error::InvalidRational(
                "denominator constant term vanishes (pole at z = 0)".into(),
            ));
        }
        if numerator.len() > denominator.len() {
            return Err(Error::InvalidRational(format!(
                "numerator degree {} exceeds denominator degree {}",
                numerator.len() - 1,
                denominator.len() - 1
            )));
        }
        Ok(Self {
            numerator,
            denominator,
        })
    }

    /// Convenience constructor from real coefficients.
    pub fn from_real(numerator: &[T], denominator: &[T]) -> Result<Self> {
        Self::new(
            numerator
                .iter()
                .map(|&c| Complex::new(c, T::zero()))
                .collect(),
            denominator
                .iter()
                .map(|&c| Complex::new(c, T::zero()))
                .collect(),
        )
    }

    pub fn numerator(&self) -> &[Complex<T>] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[Complex<T>] {
        &self.denominator
    }

    /// Value of r at z by Horner evaluation of both polynomials.
    pub fn evaluate(&self, z: Complex<T>) -> Result<Complex<T>> {
        let den = poly::eval(&self.denominator, z);
        let zn = z.norm();
        // Magnitude the denominator would have without cancellation.
        let mut scale = T::zero();
        let mut pw = T::one();
        for c in &self.denominator {
            scale = scale + c.norm() * pw;
            pw = pw * zn;
        }
        if den.norm() <= scale * T::epsilon() * cast(1000.0) {
            return Err(Error::EvaluationAtPole {
                re: z.re.to_f64().unwrap_or(f64::NAN),
                im: z.im.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(poly::eval(&self.numerator, z) / den)
    }

    /// Limit of r(z) as z -> infinity: leading-coefficient ratio when the
    /// degrees agree, zero otherwise.
    pub fn value_at_infinity(&self) -> Complex<T> {
        if self.numerator.len() == self.denominator.len() {
            self.numerator[self.numerator.len() - 1] / self.denominator[self.denominator.len() - 1]
        } else {
            Complex::zero()
        }
    }

    /// Taylor coefficients of r at 0 by power-series division.
    pub fn taylor(&self, terms: usize) -> CPoly<T> {
        poly::series_div(&self.numerator, &self.denominator, terms)
    }

    /// Largest p with Taylor coefficients matching 1/k! for k = 0..p, using
    /// the default cap.
    pub fn approximation_order(&self) -> Result<usize> {
        self.approximation_order_with_cap(ORDER_CAP)
    }

    pub fn approximation_order_with_cap(&self, cap: usize) -> Result<usize> {
        let tol = cast::<T>(1e-9).max(T::epsilon() * cast(1000.0));
        let coeffs = self.taylor(cap + 2);
        let dev0 = (coeffs[0] - Complex::one()).norm();
        if dev0 > tol {
            return Err(Error::NotConsistentAtZero {
                deviation: dev0.to_f64().unwrap_or(f64::NAN),
            });
        }
        let mut target = T::one();
        for k in 1..=cap + 1 {
            target = target / cast::<T>(k as f64);
            let miss = (coeffs[k] - Complex::new(target, T::zero())).norm();
            if miss > tol * target {
                return Ok(k - 1);
            }
        }
        Err(Error::OrderExceedsCap { cap })
    }

    /// Numerical A-stability check: no pole in the closed left half-plane
    /// and |r(iy)| <= 1 + tol on a dense sample of the imaginary axis. By the
    /// maximum principle this covers Re(z) <= 0; it is a check, not a proof.
    pub fn is_a_stable(&self) -> bool {
        let Ok(mut poles) = poly::roots(&self.denominator) else {
            return false;
        };
        for pole in poles.iter_mut() {
            *pole = poly::newton_polish(&self.denominator, *pole);
            let margin = (T::one() + pole.norm()) * cast::<T>(1e-12).max(T::epsilon());
            if pole.re <= margin {
                return false;
            }
        }
        let tol = cast::<T>(1e-9).max(T::epsilon() * cast(1000.0));
        if self.value_at_infinity().norm() > T::one() + tol {
            return false;
        }
        let samples = 4001;
        for k in 0..samples {
            // tan map covers |y| up to ~2.5e3 densely near the origin.
            let theta = (cast::<T>(k as f64) / cast::<T>((samples - 1) as f64)
                - cast::<T>(0.5))
                * cast::<T>(0.9995)
                * T::PI();
            let y = theta.tan();
            match self.evaluate(Complex::new(T::zero(), y)) {
                Ok(v) => {
                    if v.norm() > T::one() + tol {
                        return false;
                    }
                }
                Err(_) => return false,
            }
        }
        true
    }
}

/// One pole of the simple-fraction form: shift `w` with `Re(w) > 0`,
/// multiplicity `m` and coefficients for powers 1..m.
#[derive(Debug, Clone)]
pub struct PoleGroup<T: Real> {
    pub shift: Complex<T>,
    pub multiplicity: usize,
    pub coefficients: Vec<Complex<T>>,
}

/// Simple-fraction form of a rational approximation:
/// `r(z) = r_inf + sum_l sum_j coeff_lj / (1 - z w_l)^j`.
#[derive(Debug, Clone)]
pub struct PartialFractionForm<T: Real> {
    pub value_at_infinity: Complex<T>,
    pub groups: Vec<PoleGroup<T>>,
    /// Approximation order p of the source function.
    pub order: usize,
    /// Shifted solves needed per application: sum of multiplicities.
    pub total_stages: usize,
}

impl<T: Real> PartialFractionForm<T> {
    /// Direct evaluation of the simple-fraction sum (poles excluded).
    pub fn evaluate(&self, z: Complex<T>) -> Complex<T> {
        let mut acc = self.value_at_infinity;
        for g in &self.groups {
            let base = Complex::<T>::one() - z * g.shift;
            let mut pw = Complex::<T>::one();
            for c in &g.coefficients {
                pw = pw * base;
                acc = acc + c / pw;
            }
        }
        acc
    }

    /// Step-size threshold below which every shifted system is safely
    /// solvable for a generator with growth bound `omega`.
    pub fn tau_threshold(&self, omega: T) -> T {
        if omega <= T::zero() {
            return T::infinity();
        }
        let mut min = T::infinity();
        for g in &self.groups {
            let re_inv = (Complex::<T>::one() / g.shift).re;
            min = min.min(re_inv / omega);
        }
        min
    }

    /// Deviations of the two consistency sums from 1: the value sum equals
    /// r(0) and the weighted sum equals r'(0).
    pub fn consistency_residuals(&self) -> (T, T) {
        let mut value = self.value_at_infinity;
        let mut slope = Complex::<T>::zero();
        for g in &self.groups {
            for (idx, c) in g.coefficients.iter().enumerate() {
                let j = cast::<T>((idx + 1) as f64);
                value = value + c;
                slope = slope + c * g.shift * Complex::new(j, T::zero());
            }
        }
        (
            (value - Complex::one()).norm(),
            (slope - Complex::one()).norm(),
        )
    }
}

/// Step-size threshold (an extended real) for the given growth bound.
pub fn tau_threshold<T: Real>(pf: &PartialFractionForm<T>, omega: T) -> T {
    pf.tau_threshold(omega)
}

/// Develop `r` into its simple-fraction form.
///
/// Denominator roots come from a Durand-Kerner iteration; near-coincident
/// roots are grouped, the group center is polished as a root of the
/// appropriate derivative, and the claimed multiplicity is verified on the
/// shifted polynomial before coefficients are extracted. The decomposition
/// is accepted only if it reproduces `r` on a sample grid.
pub fn partial_fractions<T: Real>(r: &RationalFunction<T>) -> Result<PartialFractionForm<T>> {
    let order = r.approximation_order()?;
    if order == 0 {
        return Err(Error::OrderBelowOne);
    }

    let den = r.denominator();
    let lead = den[den.len() - 1];
    let monic: CPoly<T> = den.iter().map(|c| c / lead).collect();
    let raw_roots = poly::roots(&monic)?;

    let clusters = resolve_clusters(&monic, &raw_roots)?;

    // Pairwise-distinct poles at the strict tolerance, else refuse to guess.
    let strict = cast::<T>(1e-8).max(T::epsilon() * cast(50.0));
    for i in 0..clusters.len() {
        for j in i + 1..clusters.len() {
            let (zi, zj) = (clusters[i].0, clusters[j].0);
            if (zi - zj).norm() <= strict * T::one().max(zi.norm().max(zj.norm())) {
                return Err(Error::RootFindingFailure(
                    "near-confluent poles cannot be separated reliably".into(),
                ));
            }
        }
    }

    let mut groups = Vec::with_capacity(clusters.len());
    for (idx, &(zeta, m)) in clusters.iter().enumerate() {
        let w = Complex::<T>::one() / zeta;
        if w.re <= T::zero() {
            return Err(Error::PoleInRightHalfClosure {
                re: w.re.to_f64().unwrap_or(f64::NAN),
                im: w.im.to_f64().unwrap_or(f64::NAN),
            });
        }
        // q(u) = lead * prod_{j != l} ((zeta_l - zeta_j) + u)^{m_j}; then the
        // Laurent coefficients of r at zeta_l are the series of num/q.
        let mut q: CPoly<T> = vec![lead];
        for (jdx, &(zj, mj)) in clusters.iter().enumerate() {
            if jdx == idx {
                continue;
            }
            let factor = [zeta - zj, Complex::one()];
            for _ in 0..mj {
                q = poly::mul(&q, &factor);
            }
        }
        let num_shifted = poly::taylor_shift(r.numerator(), zeta);
        let series = poly::series_div(&num_shifted, &q, m);
        // r_{lj} = (-w)^j * [Laurent coefficient of (z - zeta)^{-j}].
        let mut coefficients = Vec::with_capacity(m);
        let mut neg_w_pow = Complex::<T>::one();
        for j in 1..=m {
            neg_w_pow = neg_w_pow * (-w);
            coefficients.push(neg_w_pow * series[m - j]);
        }
        groups.push(PoleGroup {
            shift: w,
            multiplicity: m,
            coefficients,
        });
    }

    let pf = PartialFractionForm {
        value_at_infinity: r.value_at_infinity(),
        order,
        total_stages: groups.iter().map(|g| g.multiplicity).sum(),
        groups,
    };

    // Reconstruction gate on a deterministic sample grid away from poles.
    let tol = cast::<T>(1e-8).max(T::epsilon() * cast(50.0));
    let mut worst = T::zero();
    let mut checked = 0usize;
    'outer: for ring in 0..6 {
        let radius = cast::<T>(0.05) * cast::<T>(3.0f64.powi(ring));
        for k in 0..17 {
            let angle = cast::<T>(2.0) * T::PI() * cast::<T>(k as f64) / cast::<T>(17.0)
                + cast::<T>(0.11);
            let z = Complex::new(radius * angle.cos(), radius * angle.sin());
            let near_pole = clusters
                .iter()
                .any(|&(zeta, _)| (z - zeta).norm() < cast::<T>(0.05) * (T::one() + zeta.norm()));
            if near_pole {
                continue;
            }
            let Ok(direct) = r.evaluate(z) else { continue };
            let rebuilt = pf.evaluate(z);
            worst = worst.max((rebuilt - direct).norm() / (T::one() + direct.norm()));
            checked += 1;
            if checked >= 80 {
                break 'outer;
            }
        }
    }
    if worst > tol || checked == 0 {
        return Err(Error::RootFindingFailure(format!(
            "simple-fraction reconstruction residual {:?} above tolerance",
            worst
        )));
    }

    Ok(pf)
}

/// Group raw roots into (center, multiplicity) pairs.
///
/// Roots are first merged at a loose tolerance sized for the eps^(1/m)
/// spread a multiple root produces. Each candidate group is polished and
/// verified on the Taylor-shifted polynomial; groups that fail verification
/// fall back to individually polished simple roots.
fn resolve_clusters<T: Real>(
    monic: &[Complex<T>],
    raw: &[Complex<T>],
) -> Result<Vec<(Complex<T>, usize)>> {
    let n = raw.len();
    let loose = cast::<T>(1e-4).max(T::epsilon().sqrt().sqrt());

    // Connected components under loose pairwise proximity.
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(comp: &mut Vec<usize>, i: usize) -> usize {
        let mut root = i;
        while comp[root] != root {
            root = comp[root];
        }
        let mut cur = i;
        while comp[cur] != root {
            let next = comp[cur];
            comp[cur] = root;
            cur = next;
        }
        root
    }
    for i in 0..n {
        for j in i + 1..n {
            let scale = T::one().max(raw[i].norm().max(raw[j].norm()));
            if (raw[i] - raw[j]).norm() <= loose * scale {
                let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                comp[a] = b;
            }
        }
    }
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut rep: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let r = find(&mut comp, i);
        match rep[r] {
            Some(k) => members[k].push(i),
            None => {
                rep[r] = Some(members.len());
                members.push(vec![i]);
            }
        }
    }

    let mut out = Vec::new();
    for group in members {
        let m = group.len();
        if m == 1 {
            out.push((poly::newton_polish(monic, raw[group[0]]), 1));
            continue;
        }
        let mean = group.iter().map(|&i| raw[i]).sum::<Complex<T>>()
            / Complex::new(cast::<T>(m as f64), T::zero());
        // An m-fold root of p is a simple root of p^(m-1).
        let mut dp = monic.to_vec();
        for _ in 0..m - 1 {
            dp = poly::derivative(&dp);
        }
        let center = poly::newton_polish(&dp, mean);
        if verify_multiplicity(monic, center, m) {
            out.push((center, m));
        } else {
            for &i in &group {
                out.push((poly::newton_polish(monic, raw[i]), 1));
            }
        }
    }
    Ok(out)
}

/// Check on the shifted polynomial that `z` is an m-fold root: the first m
/// coefficients vanish at roundoff scale and the m-th clearly does not.
fn verify_multiplicity<T: Real>(monic: &[Complex<T>], z: Complex<T>, m: usize) -> bool {
    let shifted = poly::taylor_shift(monic, z);
    if shifted.len() <= m {
        return false;
    }
    let mut scale = T::zero();
    let mut pw = T::one();
    let zn = T::one().max(z.norm());
    for c in monic {
        scale = scale.max(c.norm() * pw);
        pw = pw * zn;
    }
    let tol = scale * T::epsilon() * cast(1e5);
    for coeff in shifted.iter().take(m) {
        if coeff.norm() > tol {
            return false;
        }
    }
    shifted[m].norm() > tol * cast(10.0)
}
