//! Gamma and digamma functions on the real line.

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// sin(πx) with argument reduction done before the multiplication by π.
pub fn sin_pi(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    let (r, sign) = if r > 1.0 { (r - 1.0, -1.0) } else { (r, 1.0) };
    let r = if r > 0.5 { 1.0 - r } else { r };
    sign * (PI * r).sin()
}

/// Γ(x) for real x. Returns NaN at the poles x = 0, −1, −2, …
pub fn gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return f64::NAN;
    }
    if x < 0.5 {
        return PI / (sin_pi(x) * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
}

/// ln|Γ(x)|.
pub fn ln_gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return f64::INFINITY;
    }
    if x < 0.5 {
        return (PI / sin_pi(x).abs()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// ψ(x) = d ln Γ(x)/dx.
pub fn digamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return f64::NAN;
    }
    if x < 0.5 {
        return digamma(1.0 - x) - PI * cos_pi(x) / sin_pi(x);
    }
    let mut acc = 0.0;
    let mut x = x;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let x2 = 1.0 / (x * x);
    let series = x2
        * (1.0 / 12.0
            - x2 * (1.0 / 120.0
                - x2 * (1.0 / 252.0
                    - x2 * (1.0 / 240.0 - x2 * (1.0 / 132.0 - x2 * (691.0 / 32760.0 - x2 / 12.0))))));
    acc + x.ln() - 0.5 / x - series
}

fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    // Deterministic arguments spread over (-6, 12), avoiding the poles.
    fn arguments() -> Vec<f64> {
        let mut state = 0x2545_f491_4f6c_dd1d_u64;
        let mut out = Vec::new();
        while out.len() < 20 {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            let x = -6.0 + 18.0 * (state >> 11) as f64 / (1u64 << 53) as f64;
            if (x - x.round()).abs() > 1e-3 {
                out.push(x);
            }
        }
        out
    }

    #[test]
    fn known_values() {
        assert!(rel(gamma(0.5), PI.sqrt()) < 1e-14);
        assert!(rel(gamma(5.0), 24.0) < 1e-14);
        assert!(rel(gamma(-0.5), -2.0 * PI.sqrt()) < 1e-14);
        assert!(rel(gamma(10.0), 362_880.0) < 1e-13);
        assert!(gamma(-2.0).is_nan());
        let euler = 0.577_215_664_901_532_9;
        assert!((digamma(1.0) + euler).abs() < 1e-14);
        assert!((digamma(0.5) + euler + 2.0 * 2f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn reflection_identity() {
        for x in arguments() {
            let lhs = gamma(x) * gamma(1.0 - x);
            let rhs = PI / sin_pi(x);
            assert!(rel(lhs, rhs) < 1e-12, "x = {x}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn recurrence_identity() {
        for x in arguments() {
            let lhs = gamma(x + 1.0);
            let rhs = x * gamma(x);
            assert!(rel(lhs, rhs) < 1e-12, "x = {x}: {lhs} vs {rhs}");
            let d = digamma(x + 1.0) - digamma(x) - 1.0 / x;
            assert!(d.abs() < 1e-11 * (1.0 + digamma(x).abs()), "x = {x}");
        }
    }

    #[test]
    fn ln_gamma_matches_gamma() {
        for x in arguments() {
            assert!((ln_gamma(x) - gamma(x).abs().ln()).abs() < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn digamma_is_derivative_of_ln_gamma() {
        for x in arguments() {
            let h = 1e-5;
            let fd = (ln_gamma(x + h) - ln_gamma(x - h)) / (2.0 * h);
            assert!((fd - digamma(x)).abs() < 1e-6 * (1.0 + fd.abs()), "x = {x}");
        }
    }
}
