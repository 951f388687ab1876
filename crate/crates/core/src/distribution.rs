//! The empirical measure of Kloosterman angles over `P_q(a)` compared with
//! the Sato-Tate measure `(2/pi) sin^2(theta) d(theta)`.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::charsums::{angle_of, PlaceSums};
use crate::curve::CurveParams;
use crate::error::{Error, Result};

/// `log 16`, the Sato-Tate mean of `W`.
pub const W_LIMIT: f64 = 2.772_588_722_239_781;

#[derive(Clone, Debug, Serialize)]
pub struct AngleRow {
    pub place: String,
    pub degree: u32,
    pub theta: f64,
}

/// One angle per place of `P_q(a)`, in place order, under the embedding `zeta_p -> e^{2 pi i k / p}`.
#[derive(Clone, Debug, Serialize)]
pub struct AngleSample {
    pub q: u64,
    pub gamma: String,
    pub a: u32,
    pub embedding: u32,
    pub rows: Vec<AngleRow>,
    /// The angles sorted ascending.
    pub angles: Vec<f64>,
}

pub fn angle_sample(params: &CurveParams, budget: f64) -> Result<AngleSample> {
    let sums = params.place_sums(budget)?;
    angle_sample_from_sums(params, &sums, 1)
}

pub fn angle_sample_from_sums(params: &CurveParams, sums: &[PlaceSums], k: u32) -> Result<AngleSample> {
    let rows = sums
        .iter()
        .map(|s| {
            let a = angle_of(&s.kloosterman, k)?;
            Ok(AngleRow { place: s.gauss.place.display(), degree: a.degree, theta: a.theta })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut angles: Vec<f64> = rows.iter().map(|r| r.theta).collect();
    angles.sort_by(f64::total_cmp);
    Ok(AngleSample { q: params.q(), gamma: params.gamma_label(), a: params.a, embedding: k, rows, angles })
}

/// Largest difference between the sorted angle lists under embeddings `k = 1..p-1`.
pub fn embedding_spread(params: &CurveParams, sums: &[PlaceSums]) -> Result<f64> {
    let base = angle_sample_from_sums(params, sums, 1)?;
    let mut worst = 0f64;
    for k in 2..params.p() as u32 {
        let other = angle_sample_from_sums(params, sums, k)?;
        for (x, y) in base.angles.iter().zip(&other.angles) {
            worst = worst.max((x - y).abs());
        }
    }
    Ok(worst)
}

/// `F(theta) = theta/pi - sin(2 theta)/(2 pi)`.
pub fn sato_tate_cdf(theta: f64) -> f64 {
    theta / PI - (2.0 * theta).sin() / (2.0 * PI)
}

/// `sup |F_a - F|` over `[0, pi]`, attained at a sample point from one side.
pub fn ks_discrepancy(sample: &AngleSample) -> Result<f64> {
    let n = sample.angles.len();
    if n == 0 {
        return Err(Error::EmptySample);
    }
    let nf = n as f64;
    let mut d = 0f64;
    let mut i = 0;
    while i < n {
        let theta = sample.angles[i];
        let mut j = i;
        while j < n && sample.angles[j] == theta {
            j += 1;
        }
        let f = sato_tate_cdf(theta);
        d = d.max((f - i as f64 / nf).abs()).max((j as f64 / nf - f).abs());
        i = j;
    }
    Ok(d)
}

/// `W(theta) = -log(sin^2 theta cos^2 theta)`.
pub fn w_function(theta: f64) -> f64 {
    -((theta.sin() * theta.cos()).powi(2)).ln()
}

/// Mean of `W` over the sample and its distance to `log 16`.
pub fn w_integral(sample: &AngleSample) -> Result<(f64, f64)> {
    if sample.angles.is_empty() {
        return Err(Error::EmptySample);
    }
    let mean = sample.angles.iter().map(|&t| w_function(t)).sum::<f64>() / sample.angles.len() as f64;
    Ok((mean, (mean - W_LIMIT).abs()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Margins {
    pub to_zero: f64,
    pub to_half_pi: f64,
    pub to_pi: f64,
}

/// `q^{-a(6p - 4)}`, the guaranteed distance of every angle from `0, pi/2, pi`.
pub fn epsilon_a(q: u64, p: u64, a: u32) -> f64 {
    (q as f64).powf(-(a as f64) * (6.0 * p as f64 - 4.0))
}

pub fn margin_report(sample: &AngleSample, p: u64) -> Result<(Margins, f64)> {
    if sample.angles.is_empty() {
        return Err(Error::EmptySample);
    }
    let min = |f: &dyn Fn(f64) -> f64| sample.angles.iter().map(|&t| f(t)).fold(f64::INFINITY, f64::min);
    let m = Margins {
        to_zero: min(&|t| t),
        to_half_pi: min(&|t| (t - FRAC_PI_2).abs()),
        to_pi: min(&|t| PI - t),
    };
    let eps = epsilon_a(sample.q, p, sample.a);
    for (target, margin) in [("0", m.to_zero), ("pi/2", m.to_half_pi), ("pi", m.to_pi)] {
        if !(margin >= eps) {
            return Err(Error::MarginViolation { target: target.into(), margin, epsilon: eps });
        }
    }
    Ok((m, eps))
}

/// `int cos(k theta) d(mu_a)`.
pub fn moment_test(sample: &AngleSample, k: u32) -> Result<f64> {
    if sample.angles.is_empty() {
        return Err(Error::EmptySample);
    }
    Ok(sample.angles.iter().map(|&t| (k as f64 * t).cos()).sum::<f64>() / sample.angles.len() as f64)
}

/// The Sato-Tate value of `int cos(k theta)`.
pub fn sato_tate_moment(k: u32) -> f64 {
    if k == 2 {
        -0.5
    } else {
        0.0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DistributionReport {
    pub ks_distance: f64,
    pub w_integral: f64,
    pub w_error: f64,
    pub margins: Margins,
    pub epsilon_a: f64,
    pub moments: BTreeMap<u32, f64>,
}

pub fn distribution_report(sample: &AngleSample, p: u64) -> Result<DistributionReport> {
    let (w_integral, w_error) = w_integral(sample)?;
    let (margins, epsilon_a) = margin_report(sample, p)?;
    let moments = (1..=4).map(|k| Ok((k, moment_test(sample, k)?))).collect::<Result<_>>()?;
    Ok(DistributionReport { ks_distance: ks_discrepancy(sample)?, w_integral, w_error, margins, epsilon_a, moments })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_field, FieldElem, Tower};

    fn params(gamma: u64, a: u32) -> CurveParams {
        CurveParams::new(Tower::new(&build_field(3, 1, None).unwrap()), FieldElem(gamma), a).unwrap()
    }

    /// Midpoint rule for `int g d(mu)` with the Sato-Tate density.
    fn sato_tate_integral(g: impl Fn(f64) -> f64) -> f64 {
        let n = 200_000;
        let h = PI / n as f64;
        (0..n).map(|i| (i as f64 + 0.5) * h).map(|t| g(t) * 2.0 / PI * t.sin().powi(2) * h).sum()
    }

    #[test]
    fn sato_tate_constants() {
        assert!((sato_tate_cdf(FRAC_PI_2) - 0.5).abs() < 1e-15);
        assert!((sato_tate_cdf(PI) - 1.0).abs() < 1e-15);
        for k in 1..=4 {
            assert!((sato_tate_integral(|t| (k as f64 * t).cos()) - sato_tate_moment(k)).abs() < 1e-8);
        }
        assert!((sato_tate_integral(w_function) - W_LIMIT).abs() < 1e-3);
        assert!((W_LIMIT - 16f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn level_one_angles() {
        let s1 = angle_sample(&params(1, 1), 1e9).unwrap();
        let t1 = (1.0 / (2.0 * 3f64.sqrt())).acos();
        assert!(s1.angles.iter().all(|t| (t - t1).abs() < 1e-12));
        let s2 = angle_sample(&params(2, 1), 1e9).unwrap();
        let t2 = (-1.0 / 3f64.sqrt()).acos();
        assert!(s2.angles.iter().all(|t| (t - t2).abs() < 1e-12));
        let (w, _) = w_integral(&s2).unwrap();
        assert!((w - (9.0f64 / 2.0).ln()).abs() < 1e-12);
        let (m, eps) = margin_report(&s1, 3).unwrap();
        assert!((m.to_half_pi - (FRAC_PI_2 - t1)).abs() < 1e-12);
        assert_eq!(eps, 3f64.powi(-14));
    }

    #[test]
    fn ks_of_a_point_mass() {
        let s = AngleSample { q: 3, gamma: "1".into(), a: 1, embedding: 1, rows: vec![], angles: vec![FRAC_PI_2; 4] };
        assert!((ks_discrepancy(&s).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn margins_trap_a_degenerate_sample() {
        let s = AngleSample { q: 3, gamma: "1".into(), a: 1, embedding: 1, rows: vec![], angles: vec![FRAC_PI_2] };
        assert!(matches!(margin_report(&s, 3), Err(Error::MarginViolation { .. })));
    }
}
