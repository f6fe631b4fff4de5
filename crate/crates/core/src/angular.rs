//! Clebsch–Gordan coefficients for coupling a hyperfine level to a photon.
//!
//! Racah's single-sum formula with log-factorials, Condon–Shortley phases.

use crate::error::{Error, Result};

const MAX_FACTORIAL: usize = 64;

fn ln_factorial(n: i32) -> f64 {
    static TABLE: std::sync::OnceLock<[f64; MAX_FACTORIAL]> = std::sync::OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = [0.0; MAX_FACTORIAL];
        for i in 1..MAX_FACTORIAL {
            t[i] = t[i - 1] + (i as f64).ln();
        }
        t
    });
    table[n as usize]
}

/// Twice a half-integer quantum number, validated.
pub fn doubled(x: f64) -> Result<i32> {
    let d = 2.0 * x;
    if (d - d.round()).abs() > 1e-9 || !d.is_finite() {
        return Err(Error::Domain(format!("{x} is not an integer or half-integer")));
    }
    Ok(d.round() as i32)
}

/// ⟨j1 m1; j2 m2 | J M⟩ with all arguments given as doubled integers.
pub fn clebsch_gordan_doubled(j1: i32, m1: i32, j2: i32, m2: i32, jj: i32, mm: i32) -> f64 {
    if m1 + m2 != mm
        || m1.abs() > j1
        || m2.abs() > j2
        || mm.abs() > jj
        || jj > j1 + j2
        || jj < (j1 - j2).abs()
        || (j1 + j2 + jj) % 2 != 0
        || (j1 + m1) % 2 != 0
        || (j2 + m2) % 2 != 0
        || (jj + mm) % 2 != 0
    {
        return 0.0;
    }
    // Every combination below is an even doubled value, i.e. a true integer.
    let h = |x: i32| x / 2;
    let a = h(j1 + j2 - jj);
    let b = h(j1 - m1);
    let c = h(j2 + m2);
    let d = h(jj - j2 + m1);
    let e = h(jj - j1 - m2);
    let ln_pre = 0.5
        * (((jj + 1) as f64).ln()
            + ln_factorial(h(jj + j1 - j2))
            + ln_factorial(h(jj - j1 + j2))
            + ln_factorial(a)
            - ln_factorial(h(j1 + j2 + jj) + 1)
            + ln_factorial(h(jj + mm))
            + ln_factorial(h(jj - mm))
            + ln_factorial(h(j1 - m1))
            + ln_factorial(h(j1 + m1))
            + ln_factorial(h(j2 - m2))
            + ln_factorial(h(j2 + m2)));
    let k_min = 0.max(-d).max(-e);
    let k_max = a.min(b).min(c);
    let mut sum = 0.0;
    for k in k_min..=k_max {
        let ln_den = ln_factorial(k)
            + ln_factorial(a - k)
            + ln_factorial(b - k)
            + ln_factorial(c - k)
            + ln_factorial(d + k)
            + ln_factorial(e + k);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * (ln_pre - ln_den).exp();
    }
    sum
}

/// ⟨F m_F; 1 q | F′ (m_F + q)⟩ for a dipole transition.
pub fn clebsch_gordan(f: f64, m_f: f64, q: i32, f_prime: f64) -> Result<f64> {
    let (ff, mm, fp) = (doubled(f)?, doubled(m_f)?, doubled(f_prime)?);
    if ff < 0 || fp < 0 {
        return Err(Error::Domain("angular momenta must be non-negative".into()));
    }
    if !(-1..=1).contains(&q) {
        return Err(Error::Domain(format!("polarization q = {q} must be -1, 0 or +1")));
    }
    if mm.abs() > ff || (ff + mm) % 2 != 0 {
        return Err(Error::Domain(format!("|m_F| <= F violated (F = {f}, m_F = {m_f})")));
    }
    if (fp - ff).abs() > 2 || (fp - ff) % 2 != 0 || (fp == 0 && ff == 0) {
        return Err(Error::Domain(format!(
            "F' = {f_prime} violates the dipole triangle rule F' in {{F-1, F, F+1}} for F = {f}"
        )));
    }
    if (mm + 2 * q).abs() > fp {
        return Err(Error::Domain(format!(
            "|m_F + q| <= F' violated (m_F + q = {}, F' = {f_prime})",
            m_f + q as f64
        )));
    }
    Ok(clebsch_gordan_doubled(ff, mm, 2, 2 * q, fp, mm + 2 * q))
}

/// The dipole-allowed excited levels F′ ∈ {F−1, F, F+1} (F′ ≥ 0).
pub fn dipole_levels(f: f64) -> Vec<f64> {
    [f + 1.0, f, f - 1.0].into_iter().filter(|&x| x >= 0.0 && !(x == 0.0 && f == 0.0)).collect()
}
