//! The ball embedding `B^{2n}(1) -> CP^n` and the enclosed volume of a point
//! trace under the block-unitary family acting on the first `k` coordinates.

use std::f64::consts::PI;
use std::ops::{Add, Div, Mul};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::arith::{factorial, rational_to_f64, Rational};
use crate::error::{Error, Result};
use crate::symbolic::PiGradedValue;

use super::check_degree_range;

/// Point of the open unit ball in `C^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct BallPoint(Vec<Complex64>);

impl BallPoint {
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        let norm_sqr = squared_norm(&coords);
        if !(norm_sqr < 1.0) {
            return Err(Error::OutsideBall(norm_sqr));
        }
        Ok(BallPoint(coords))
    }

    /// Packs real pairs `(x_1, x_2), (x_3, x_4), ...` into complex coordinates.
    pub fn from_real(xs: &[f64]) -> Result<Self> {
        BallPoint::new(
            xs.chunks(2)
                .map(|c| Complex64::new(c[0], c.get(1).copied().unwrap_or(0.0)))
                .collect(),
        )
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

/// `[w_1 : ... : w_{n+1}]`, defined up to a nonzero complex scale.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousPoint(Vec<Complex64>);

impl HomogeneousPoint {
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroHomogeneous);
        }
        Ok(HomogeneousPoint(coords))
    }

    pub fn from_real(coords: &[f64]) -> Result<Self> {
        HomogeneousPoint::new(coords.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.0
    }

    /// Unit norm, last nonzero coordinate real and positive.
    pub fn canonical(&self) -> HomogeneousPoint {
        let last = *self
            .0
            .iter()
            .rev()
            .find(|c| !c.is_zero())
            .expect("not all zero");
        let phase = last.conj() / last.norm();
        let norm = squared_norm(&self.0).sqrt();
        HomogeneousPoint(self.0.iter().map(|c| c * phase / norm).collect())
    }

    /// Same projective point, compared through canonical representatives.
    pub fn approx_eq(&self, other: &HomogeneousPoint, tol: f64) -> bool {
        let (a, b) = (self.canonical(), other.canonical());
        a.0.len() == b.0.len() && a.0.iter().zip(&b.0).all(|(x, y)| (x - y).norm() <= tol)
    }
}

fn squared_norm(coords: &[Complex64]) -> f64 {
    coords.iter().map(|c| c.norm_sqr()).sum()
}

/// `(z_1, ..., z_n) -> [z_1 : ... : z_n : sqrt(1 - |z|^2)]`
pub fn embed_ball_to_cpn(z: &BallPoint) -> HomogeneousPoint {
    let last = (1.0 - squared_norm(&z.0)).sqrt();
    let mut coords = z.0.clone();
    coords.push(Complex64::new(last, 0.0));
    HomogeneousPoint(coords)
}

/// Preimage of `[w]` off the hyperplane `w_{n+1} = 0`:
/// `z_j = (w_j / w_{n+1}) / sqrt(1 + sum_i |w_i / w_{n+1}|^2)`.
pub fn inverse_embed(w: &HomogeneousPoint) -> Result<BallPoint> {
    let (last, head) = w.0.split_last().ok_or(Error::ZeroHomogeneous)?;
    if last.is_zero() {
        return Err(Error::OnHyperplane);
    }
    let affine: Vec<Complex64> = head.iter().map(|c| c / last).collect();
    let scale = (1.0 + squared_norm(&affine)).sqrt();
    Ok(BallPoint(affine.into_iter().map(|c| c / scale).collect()))
}

/// `( (sum_{j<=k} s_j/s_{n+1}) / (1 + sum_{j<=n} s_j/s_{n+1}) )^k` for the
/// squared moduli `s_j = |w_j|^2`. Shared by the exact and floating paths.
pub fn trace_ratio_power<T>(k: u32, squared_moduli: &[T]) -> Result<T>
where
    T: Clone + Zero + One + PartialEq,
    for<'a> &'a T: Add<&'a T, Output = T> + Div<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    let (last, head) = squared_moduli.split_last().ok_or(Error::ZeroHomogeneous)?;
    if last.is_zero() {
        return Err(Error::OnHyperplane);
    }
    let mut enclosed = T::zero();
    let mut total = T::one();
    for (j, s) in head.iter().enumerate() {
        let ratio = s / last;
        if j < k as usize {
            enclosed = &enclosed + &ratio;
        }
        total = &total + &ratio;
    }
    let base = &enclosed / &total;
    let mut out = T::one();
    for _ in 0..k {
        out = &out * &base;
    }
    Ok(out)
}

fn check_point_len(n: u32, len: usize) -> Result<()> {
    if len != n as usize + 1 {
        return Err(Error::out_of_range(
            "point",
            len,
            format!("n + 1 = {} homogeneous coordinates", n + 1),
        ));
    }
    Ok(())
}

/// Symplectic volume enclosed by the trace of `[w]`, as the rational `r` with
/// value `r * pi^k / k!`. Inputs are the squared moduli `|w_j|^2`.
pub fn trace_action_exact(n: u32, k: u32, squared_moduli: &[Rational]) -> Result<Rational> {
    check_degree_range(n, k)?;
    check_point_len(n, squared_moduli.len())?;
    trace_ratio_power(k, squared_moduli)
}

/// As [`trace_action_exact`] but as a pi-graded value `r / k! * pi^k`.
pub fn trace_action_value(n: u32, k: u32, squared_moduli: &[Rational]) -> Result<PiGradedValue> {
    let r = trace_action_exact(n, k, squared_moduli)?;
    Ok(PiGradedValue::monomial(
        r / Rational::from_integer(factorial(k)),
        k,
        0,
    ))
}

/// Numeric enclosed volume `pi^k / k! * ratio^k`.
pub fn trace_action(n: u32, k: u32, w: &HomogeneousPoint) -> Result<f64> {
    check_degree_range(n, k)?;
    check_point_len(n, w.0.len())?;
    let moduli: Vec<f64> = w.0.iter().map(|c| c.norm_sqr()).collect();
    let ratio = trace_ratio_power(k, &moduli)?;
    Ok(PI.powi(k as i32) / rational_to_f64(&Rational::from_integer(factorial(k))) * ratio)
}
