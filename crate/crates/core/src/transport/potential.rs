//! One-dimensional summed-Gaussian tweezer potential and its local minima.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Static magic-wavelength tweezers. Every tweezer shares the same depth and
/// waist; the depth is fixed by the trap frequency at the bottom of an
/// isolated tweezer, V = mω²w²/4.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaseTrap {
    /// rad/s
    pub omega_magic: f64,
    /// J
    pub depth: f64,
    /// m
    pub waist: f64,
    /// Tweezer centres, m.
    pub centers: Vec<f64>,
}

impl BaseTrap {
    pub fn new(mass: f64, omega_magic: f64, waist: f64, centers: Vec<f64>) -> Self {
        BaseTrap { omega_magic, depth: mass * omega_magic * omega_magic * waist * waist / 4.0, waist, centers }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransportTrap {
    /// Nominal depth V_g reached at the end of the ramp-up, J.
    pub max_depth: f64,
    /// m
    pub waist: f64,
}

/// exp(−2y²/w²) and its first three derivatives in y.
#[inline]
pub fn gaussian_derivatives(y: f64, w: f64) -> [f64; 4] {
    let w2 = w * w;
    let g = (-2.0 * y * y / w2).exp();
    [
        g,
        -4.0 * y / w2 * g,
        (-4.0 / w2 + 16.0 * y * y / (w2 * w2)) * g,
        (48.0 * y / (w2 * w2) - 64.0 * y * y * y / (w2 * w2 * w2)) * g,
    ]
}

/// The potential seen by a ground-state atom: base tweezers plus one
/// transport beam of the given depth and centre.
#[derive(Debug, Clone, Copy)]
pub struct Potential<'a> {
    pub base: &'a BaseTrap,
    pub beam_depth: f64,
    pub beam_center: f64,
    pub beam_waist: f64,
}

impl<'a> Potential<'a> {
    /// U and its first three derivatives at x.
    pub fn derivatives(&self, x: f64) -> [f64; 4] {
        let mut out = [0.0; 4];
        for &c in &self.base.centers {
            let g = gaussian_derivatives(x - c, self.base.waist);
            for k in 0..4 {
                out[k] -= self.base.depth * g[k];
            }
        }
        if self.beam_depth != 0.0 {
            let g = gaussian_derivatives(x - self.beam_center, self.beam_waist);
            for k in 0..4 {
                out[k] -= self.beam_depth * g[k];
            }
        }
        out
    }

    pub fn value(&self, x: f64) -> f64 {
        self.derivatives(x)[0]
    }

    fn scale(&self) -> f64 {
        self.base.waist.min(self.beam_waist)
    }

    /// Local minimum reached from `guess` by safeguarded Newton iteration.
    pub fn minimum_near(&self, guess: f64) -> Result<f64> {
        let w = self.scale();
        let mut x = guess;
        for _ in 0..200 {
            let d = self.derivatives(x);
            let step = if d[2] > 0.0 { -d[1] / d[2] } else { -d[1].signum() * w / 20.0 };
            let step = step.clamp(-w / 4.0, w / 4.0);
            x += step;
            if step.abs() <= 1e-13 * w {
                let curvature = self.derivatives(x)[2];
                if curvature > 0.0 {
                    return Ok(x);
                }
                break;
            }
        }
        Err(Error::InvalidRamp(format!(
            "no potential minimum found near x = {:.6e} m (beam depth {:.4e} J at {:.6e} m)",
            guess, self.beam_depth, self.beam_center
        )))
    }

    /// Lowest barrier separating the well at `x_min` from its surroundings:
    /// the first local maximum on either side, or the potential a few waists
    /// away if the slope never turns over.
    pub fn barrier(&self, x_min: f64) -> f64 {
        let w = self.scale();
        let dx = w / 40.0;
        let mut lowest = f64::INFINITY;
        for dir in [-1.0, 1.0] {
            let mut x = x_min;
            let mut u = self.value(x);
            let mut side = f64::NAN;
            for _ in 0..400 {
                let xn = x + dir * dx;
                let un = self.value(xn);
                if un < u {
                    side = u;
                    break;
                }
                x = xn;
                u = un;
            }
            if side.is_nan() {
                side = u;
            }
            lowest = lowest.min(side);
        }
        lowest
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trap() -> BaseTrap {
        BaseTrap::new(2.87e-25, 2.0 * std::f64::consts::PI * 103e3, 1e-6, vec![0.0])
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let base = trap();
        let p = Potential { base: &base, beam_depth: 0.7 * base.depth, beam_center: 0.3e-6, beam_waist: 0.9e-6 };
        let x = 0.21e-6;
        let h = 1e-11;
        let d = p.derivatives(x);
        let dp = p.derivatives(x + h);
        let dm = p.derivatives(x - h);
        for k in 0..3 {
            let fd = (dp[k] - dm[k]) / (2.0 * h);
            assert!((fd - d[k + 1]).abs() < 1e-6 * d[k + 1].abs().max(1e-3 * base.depth / 1e-6f64.powi(k as i32 + 1)));
        }
    }

    #[test]
    fn single_tweezer_minimum_and_curvature() {
        let base = trap();
        let p = Potential { base: &base, beam_depth: 0.0, beam_center: 0.0, beam_waist: 1e-6 };
        let x = p.minimum_near(0.1e-6).unwrap();
        assert!(x.abs() < 1e-18);
        let m = 2.87e-25;
        let omega = (p.derivatives(x)[2] / m).sqrt();
        assert!((omega / base.omega_magic - 1.0).abs() < 1e-12);
        assert!((p.barrier(x) - 0.0).abs() < 1e-3 * base.depth);
    }
}
