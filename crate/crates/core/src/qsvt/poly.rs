use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    None,
}

/// `P(x) = Σ c_k T_k(x)` on `[-1, 1]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChebyshevPoly {
    coeffs: Vec<f64>,
}

impl ChebyshevPoly {
    /// Trailing zero coefficients are trimmed; the zero polynomial keeps `[0]`.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        ChebyshevPoly { coeffs }
    }

    /// `T_d`.
    pub fn chebyshev(d: usize) -> Self {
        let mut c = vec![0.0; d + 1];
        c[d] = 1.0;
        ChebyshevPoly::new(c)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0.0)
    }

    /// Clenshaw evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        let (mut b1, mut b2) = (0.0, 0.0);
        for &c in self.coeffs.iter().skip(1).rev() {
            let b0 = 2.0 * x * b1 - b2 + c;
            b2 = b1;
            b1 = b0;
        }
        x * b1 - b2 + self.coeffs[0]
    }

    pub fn parity(&self) -> Parity {
        let nonzero = |start: usize| self.coeffs.iter().skip(start).step_by(2).any(|c| *c != 0.0);
        match (nonzero(0), nonzero(1)) {
            (_, false) => Parity::Even,
            (false, true) => Parity::Odd,
            (true, true) => Parity::None,
        }
    }

    fn parity_part(&self, keep_odd: bool) -> Self {
        let c = self.coeffs.iter().enumerate().map(|(k, &c)| if (k % 2 == 1) == keep_odd { c } else { 0.0 }).collect();
        ChebyshevPoly::new(c)
    }

    pub fn even_part(&self) -> Self {
        self.parity_part(false)
    }

    pub fn odd_part(&self) -> Self {
        self.parity_part(true)
    }

    pub fn scaled(&self, s: f64) -> Self {
        ChebyshevPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// `max |P|` over `points` equispaced nodes of `[-1, 1]`.
    pub fn sup_norm(&self, points: usize) -> f64 {
        let points = points.max(2);
        (0..points).map(|i| self.eval(-1.0 + 2.0 * i as f64 / (points - 1) as f64).abs()).fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum PolyTarget {
    /// `1/x` on `1/κ <= |x| <= 1`, scaled by `1/(2κ)`.
    Inverse { kappa: f64 },
    /// `½ e^{τ(x-1)}` on `[-1, 1]`.
    Exp { tau: f64 },
}

/// Largest sup-norm accepted for the scaled inverse polynomial.
pub const INVERSE_SUP_CAP: f64 = 0.8;

pub fn approx_poly(target: PolyTarget, epsilon: f64) -> Result<ChebyshevPoly> {
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::InvalidParameter(format!("approximation tolerance must lie in (0, 0.5), got {epsilon}")));
    }
    match target {
        PolyTarget::Inverse { kappa } => inverse_poly(kappa, epsilon),
        PolyTarget::Exp { tau } => exp_poly(tau, epsilon),
    }
}

/// `b = ⌈κ² ln(κ/ε)⌉`.
pub fn inverse_exponent(kappa: f64, epsilon: f64) -> usize {
    (kappa * kappa * (kappa / epsilon).ln()).ceil().max(1.0) as usize
}

/// Chebyshev series of `(1 - (1 - x²)^b) / x`, truncated where the
/// remaining coefficient mass drops below `ε/2`, then scaled by `1/(2κ)`
/// (less if needed to keep the sup-norm within [`INVERSE_SUP_CAP`]).
fn inverse_poly(kappa: f64, epsilon: f64) -> Result<ChebyshevPoly> {
    if !(kappa.is_finite() && kappa >= 1.0) {
        return Err(Error::InvalidParameter(format!("condition parameter must be >= 1, got {kappa}")));
    }
    let b = inverse_exponent(kappa, epsilon);
    if b > 50_000_000 {
        return Err(Error::InvalidParameter(format!("κ = {kappa} needs b = {b} terms")));
    }
    // p[i] = C(2b, b+i) / 4^b
    let mut p = Vec::with_capacity(b + 1);
    let mut p0 = 1.0;
    for m in 1..=b {
        p0 *= (2 * m - 1) as f64 / (2 * m) as f64;
    }
    p.push(p0);
    for i in 0..b {
        let next = p[i] * (b - i) as f64 / (b + i + 1) as f64;
        p.push(next);
    }
    // tail[j] = Σ_{i > j} p[i]
    let mut tail = vec![0.0; b + 1];
    for j in (0..b).rev() {
        tail[j] = tail[j + 1] + p[j + 1];
    }
    let odd: Vec<f64> = (0..b).map(|j| 4.0 * tail[j] * if j % 2 == 0 { 1.0 } else { -1.0 }).collect();
    let mut rest: f64 = odd.iter().map(|c| c.abs()).sum();
    let mut keep = 0;
    while keep < odd.len() {
        rest -= odd[keep].abs();
        keep += 1;
        if rest <= epsilon / 2.0 {
            break;
        }
    }
    let mut coeffs = vec![0.0; 2 * keep];
    for (j, c) in odd.iter().take(keep).enumerate() {
        coeffs[2 * j + 1] = *c;
    }
    let raw = ChebyshevPoly::new(coeffs);
    let sup = raw.sup_norm(4001.max(8 * raw.degree()));
    let scale = (1.0 / (2.0 * kappa)).min(INVERSE_SUP_CAP / sup);
    Ok(raw.scaled(scale))
}

/// Chebyshev-Gauss projection of `½ e^{τ(x-1)}`, truncated at tail mass `ε`.
fn exp_poly(tau: f64, epsilon: f64) -> Result<ChebyshevPoly> {
    if !(tau.is_finite() && (0.0..=1e4).contains(&tau)) {
        return Err(Error::InvalidParameter(format!("exponent rate must lie in [0, 1e4], got {tau}")));
    }
    if tau == 0.0 {
        return Ok(ChebyshevPoly::new(vec![0.5]));
    }
    let nodes = 2 * (tau.ceil() as usize) + 256;
    let f = |x: f64| 0.5 * (tau * (x - 1.0)).exp();
    let samples: Vec<(f64, f64)> = (0..nodes)
        .map(|j| {
            let theta = PI * (j as f64 + 0.5) / nodes as f64;
            (theta, f(theta.cos()))
        })
        .collect();
    let mut coeffs: Vec<f64> = (0..nodes / 2)
        .map(|k| 2.0 / nodes as f64 * samples.iter().map(|(t, v)| v * (k as f64 * t).cos()).sum::<f64>())
        .collect();
    coeffs[0] /= 2.0;
    let mut rest: f64 = coeffs.iter().map(|c| c.abs()).sum();
    let mut keep = 0;
    while keep < coeffs.len() {
        rest -= coeffs[keep].abs();
        keep += 1;
        if rest <= epsilon {
            break;
        }
    }
    coeffs.truncate(keep);
    Ok(ChebyshevPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clenshaw_matches_recurrence() {
        for d in 0..8 {
            let p = ChebyshevPoly::chebyshev(d);
            for x in [-1.0, -0.3, 0.0, 0.45, 1.0] {
                let (mut t0, mut t1) = (1.0, x);
                let td = match d {
                    0 => 1.0,
                    _ => {
                        for _ in 1..d {
                            let t2 = 2.0 * x * t1 - t0;
                            t0 = t1;
                            t1 = t2;
                        }
                        t1
                    }
                };
                assert!((p.eval(x) - td).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn parity_detection() {
        assert_eq!(ChebyshevPoly::new(vec![0.0, 1.0, 0.0, 2.0]).parity(), Parity::Odd);
        assert_eq!(ChebyshevPoly::new(vec![1.0, 0.0, 2.0]).parity(), Parity::Even);
        assert_eq!(ChebyshevPoly::new(vec![1.0, 1.0]).parity(), Parity::None);
        let p = ChebyshevPoly::new(vec![0.1, 0.2, 0.3, 0.4]);
        for x in [-0.7, 0.2, 0.9] {
            assert!((p.even_part().eval(x) + p.odd_part().eval(x) - p.eval(x)).abs() < 1e-15);
        }
    }

    #[test]
    fn inverse_window_error() {
        for (kappa, eps) in [(3.0, 0.01), (4.0, 0.01), (1.0, 0.1)] {
            let p = approx_poly(PolyTarget::Inverse { kappa }, eps).unwrap();
            assert_eq!(p.parity(), Parity::Odd);
            let scale = 1.0 / (2.0 * kappa);
            for i in 0..=400 {
                let x = 1.0 / kappa + (1.0 - 1.0 / kappa) * i as f64 / 400.0;
                assert!((p.eval(x) - scale / x).abs() <= eps * scale * kappa, "κ={kappa} x={x}");
            }
            assert!(p.sup_norm(2001) <= INVERSE_SUP_CAP + 1e-9);
        }
        let p = approx_poly(PolyTarget::Inverse { kappa: 1.0 }, 0.1).unwrap();
        assert!((p.eval(1.0) - 0.5).abs() <= 0.1);
    }

    #[test]
    fn exp_projection() {
        let p = approx_poly(PolyTarget::Exp { tau: 0.0 }, 1e-6).unwrap();
        assert_eq!(p.coeffs(), &[0.5]);
        let tau = 7.3;
        let p = approx_poly(PolyTarget::Exp { tau }, 1e-10).unwrap();
        for i in 0..=200 {
            let x = -1.0 + i as f64 / 100.0;
            assert!((p.eval(x) - 0.5 * (tau * (x - 1.0)).exp()).abs() < 1e-10);
        }
        assert!(approx_poly(PolyTarget::Exp { tau: 1.0 }, 0.7).is_err());
    }
}
