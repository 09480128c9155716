//! Trigonometric ring sums Σ csc(πj/N) and Σ csc³(πj/N), j = 1…N−1.
//!
//! Every coefficient of the ring problem reduces to one of these two sums.
//! Direct evaluation is compensated and runs over a fixed block decomposition
//! of the index range, so the result is bitwise reproducible whether the blocks
//! run on one thread or many. Beyond [`SumOptions::direct_limit`] particles the
//! asymptotic expansions take over.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ring_model::RingSystem;
use crate::summation::Neumaier;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
/// ζ(3), Apéry's constant.
pub const ZETA3: f64 = 1.202_056_903_159_594_3;
/// Large-N limit of [`alpha`] and [`alpha_prime`]: 2ζ(3).
pub const TWO_ZETA3: f64 = 2.0 * ZETA3;

/// Linear-in-N coefficient of the csc³ expansion,
/// −1/π³ + (1/π)∫₀^π [csc³y − y⁻³ − (2y)⁻¹ − (π−y)⁻³ − (2(π−y))⁻¹] dy.
const CSC3_LINEAR_COEFF: f64 = -0.196_794_887_220_431_26;

/// Rounded constant of the commonly quoted approximation to Σ csc.
const ROUNDED_CONSTANT: f64 = -0.58;

const BLOCK: u64 = 1 << 15;
const PARALLEL_MIN_TERMS: u64 = 1 << 18;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SumKind {
    /// Σ 1/sin(πj/N)
    Csc,
    /// Σ 1/sin³(πj/N)
    Csc3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymptoticVariant {
    /// (2N/π)(ln(2N/π) + γ)
    Corrected,
    /// (2N/π)(ln(2N/π) − 0.58), kept for comparison only.
    RoundedConstant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumOptions {
    /// Largest N summed term by term; above it the asymptotic forms are used.
    pub direct_limit: u64,
}

impl Default for SumOptions {
    fn default() -> Self {
        Self {
            direct_limit: 10_000_000,
        }
    }
}

/// Ring coefficients A = Gm/(8R³)·Σcsc³ and B = Gm/(4R²)·Σcsc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffAB {
    /// Inverse time squared.
    pub a_coeff: f64,
    /// Acceleration.
    pub b_coeff: f64,
}

#[inline]
fn term(kind: SumKind, j: u64, n: u64) -> f64 {
    // Mirror pairs j, N−j share one argument so they are bitwise equal.
    let k = j.min(n - j);
    let s = (PI * k as f64 / n as f64).sin();
    match kind {
        SumKind::Csc => 1.0 / s,
        SumKind::Csc3 => 1.0 / (s * s * s),
    }
}

fn block_sum(kind: SumKind, n: u64, block: u64) -> Neumaier {
    let start = 1 + block * BLOCK;
    let end = (start + BLOCK).min(n);
    let mut acc = Neumaier::new();
    for j in start..end {
        acc.add(term(kind, j, n));
    }
    acc
}

fn direct_sum(kind: SumKind, n: u64) -> f64 {
    let terms = n - 1;
    let blocks = terms.div_ceil(BLOCK);
    let partials: Vec<Neumaier> = if terms >= PARALLEL_MIN_TERMS {
        (0..blocks)
            .into_par_iter()
            .map(|b| block_sum(kind, n, b))
            .collect()
    } else {
        (0..blocks).map(|b| block_sum(kind, n, b)).collect()
    };
    let mut total = Neumaier::new();
    for p in &partials {
        total.merge(p);
    }
    total.value()
}

/// Evaluates one of the ring sums with explicit options.
///
/// Panics if `n < 2`.
pub fn ring_sum(kind: SumKind, n: u64, opts: &SumOptions) -> f64 {
    assert!(n >= 2, "ring sums need at least two particles (got {n})");
    if n > opts.direct_limit {
        match kind {
            SumKind::Csc => csc_sum_asymptotic(n, AsymptoticVariant::Corrected),
            SumKind::Csc3 => csc3_sum_asymptotic(n),
        }
    } else {
        direct_sum(kind, n)
    }
}

/// Σ_{j=1}^{N−1} 1/sin(πj/N).
pub fn csc_sum(n: u64) -> f64 {
    ring_sum(SumKind::Csc, n, &SumOptions::default())
}

/// Σ_{j=1}^{N−1} 1/sin³(πj/N).
pub fn csc3_sum(n: u64) -> f64 {
    ring_sum(SumKind::Csc3, n, &SumOptions::default())
}

/// Large-N form of [`csc_sum`].
pub fn csc_sum_asymptotic(n: u64, variant: AsymptoticVariant) -> f64 {
    let scale = 2.0 * n as f64 / PI;
    let constant = match variant {
        AsymptoticVariant::Corrected => EULER_GAMMA,
        AsymptoticVariant::RoundedConstant => ROUNDED_CONSTANT,
    };
    scale * (scale.ln() + constant)
}

/// Large-N form of [`csc3_sum`]: 2ζ(3)N³/π³ + (N/π)(ln N + γ) + c·N.
pub fn csc3_sum_asymptotic(n: u64) -> f64 {
    let nf = n as f64;
    TWO_ZETA3 * (nf / PI).powi(3) + nf / PI * (nf.ln() + EULER_GAMMA) + CSC3_LINEAR_COEFF * nf
}

pub fn coeff_ab(system: &RingSystem) -> CoeffAB {
    let gm = system.grav_constant() * system.particle_mass();
    let r = system.radius();
    let n = system.n_particles();
    CoeffAB {
        a_coeff: gm / (8.0 * r.powi(3)) * csc3_sum(n),
        b_coeff: gm / (4.0 * r * r) * csc_sum(n),
    }
}

/// α(N) = (π/N)³ Σ csc³(πj/N), the factor in A ≈ α(N)·Gm N³/(2πR)³.
///
/// Decreases toward 2ζ(3) as N grows.
pub fn alpha(n: u64) -> f64 {
    // explicit product rather than powi, which may round differently per call site
    let t = PI / n as f64;
    t * t * t * csc3_sum(n)
}

/// (π/N)³ (Σ csc³(πj/N) + 1).
///
/// The tabulated α(N) values for small N carry this extra unit term; kept so
/// the offset against [`alpha`] can be reported.
pub fn alpha_with_unit_offset(n: u64) -> f64 {
    let t = PI / n as f64;
    t * t * t * (csc3_sum(n) + 1.0)
}

/// α'(N) = 2 Σ_{i=1}^{N/2} 1/i³, the nearest-neighbour truncation of α(N).
pub fn alpha_prime(n: u64) -> Result<f64> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::Domain(format!(
            "alpha_prime needs an even N >= 2, got {n}"
        )));
    }
    let half = n / 2;
    let mut acc = Neumaier::new();
    if half <= SumOptions::default().direct_limit {
        // smallest terms first
        for i in (1..=half).rev() {
            let x = i as f64;
            acc.add(1.0 / (x * x * x));
        }
    } else {
        let k = half as f64;
        acc.add(ZETA3);
        acc.add(-(0.5 / (k * k) - 0.5 / (k * k * k) + 0.25 / k.powi(4)));
    }
    Ok(2.0 * acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn closed_forms_for_small_n() {
        assert_eq!(csc_sum(2), 1.0);
        assert_eq!(csc3_sum(2), 1.0);
        assert!(rel(csc_sum(4), 1.0 + 2.0 * 2f64.sqrt()) < 1e-15);
        assert!(rel(csc_sum(3), 4.0 / 3f64.sqrt()) < 1e-15);
        assert!(rel(csc3_sum(4), 1.0 + 4.0 * 2f64.sqrt()) < 1e-15);
    }

    #[test]
    fn csc3_sum_ten_particles() {
        // 9-term sum evaluated independently at 30 digits: 84.72764...
        assert!((csc3_sum(10) - 84.727_6).abs() < 1e-3);
    }

    #[test]
    fn asymptotic_csc_at_ten() {
        let asym = csc_sum_asymptotic(10, AsymptoticVariant::Corrected);
        assert!((asym - 15.458).abs() < 1e-3);
        assert!((csc_sum(10) - 15.449).abs() < 1e-3);
        assert!(rel(asym, csc_sum(10)) < 1e-3);
    }

    #[test]
    fn asymptotic_csc_at_trillion() {
        let v = csc_sum_asymptotic(1_000_000_000_000, AsymptoticVariant::Corrected);
        assert!(rel(v, 1.766e13) < 1e-3, "{v}");
        // the automatic switch uses the same form
        assert_eq!(csc_sum(1_000_000_000_000), v);
    }

    #[test]
    fn csc3_asymptotic_matches_direct_at_switch_scale() {
        let n = 200_000;
        assert!(rel(csc3_sum_asymptotic(n), csc3_sum(n)) < 1e-12);
        let n = 1_000;
        assert!(rel(csc3_sum_asymptotic(n), csc3_sum(n)) < 1e-9);
    }

    #[test]
    fn coefficients_for_unit_four_ring() {
        let sys = RingSystem::new(4, 1.0, 1.0, 1.0, 1.0).unwrap();
        let c = coeff_ab(&sys);
        assert!(rel(c.a_coeff, 0.832_106_781) < 1e-9);
        assert!(rel(c.b_coeff, 0.957_106_781) < 1e-9);

        let sys = RingSystem::new(2, 1.0, 1.0, 1.0, 1.0).unwrap();
        let c = coeff_ab(&sys);
        assert_eq!(c.a_coeff, 0.125);
        assert_eq!(c.b_coeff, 0.25);

        let sys = RingSystem::new(7, 0.0, 1.0, 1.0, 1.0).unwrap();
        let c = coeff_ab(&sys);
        assert_eq!((c.a_coeff, c.b_coeff), (0.0, 0.0));
    }

    #[test]
    fn alpha_small_n() {
        assert!(rel(alpha(2), PI.powi(3) / 8.0) < 1e-15);
        assert!((alpha(4) - 3.2251).abs() < 1e-4);
        assert!((alpha(10_000) - 2.40411).abs() < 1e-4);
    }

    #[test]
    fn alpha_prime_values() {
        assert_eq!(alpha_prime(2).unwrap(), 2.0);
        assert!((alpha_prime(10).unwrap() - 2.371_324_1).abs() < 1e-7);
        assert!((alpha_prime(20).unwrap() - 2.395_063_971_348_386).abs() < 1e-13);
        assert!(matches!(alpha_prime(7), Err(Error::Domain(_))));
        assert!(matches!(alpha_prime(0), Err(Error::Domain(_))));
    }

    #[test]
    fn alpha_prime_tail_form_is_continuous() {
        let direct = alpha_prime(20_000_000).unwrap();
        let tail = alpha_prime(20_000_002).unwrap();
        assert!((direct - tail).abs() < 1e-15);
        assert!((alpha_prime(2_000_000_000_000).unwrap() - TWO_ZETA3).abs() < 1e-15);
    }

    #[test]
    fn sums_strictly_increase() {
        let mut prev = (csc_sum(3), csc3_sum(3));
        for n in 4..200 {
            let cur = (csc_sum(n), csc3_sum(n));
            assert!(cur.0 > prev.0 && cur.1 > prev.1, "n = {n}");
            prev = cur;
        }
    }

    #[test]
    fn alpha_bounds_and_convergence() {
        for n in 2..400 {
            let a = alpha(n);
            assert!(a > 2.404 && a < 4.0, "n = {n}: {a}");
        }
        for n in [10u64, 25, 64, 100, 333, 1000, 4096] {
            assert!((alpha(2 * n) - TWO_ZETA3).abs() < (alpha(n) - TWO_ZETA3).abs());
        }
    }

    #[test]
    fn nearest_neighbours_dominate_csc3() {
        for n in [50u64, 100, 1000, 10_000] {
            let near = 2.0 * term(SumKind::Csc3, 1, n);
            assert!(near / csc3_sum(n) > 0.8, "n = {n}");
        }
    }

    #[test]
    fn parallel_and_sequential_paths_agree_bitwise() {
        let n = 1_000_003;
        let blocks = (n - 1u64).div_ceil(BLOCK);
        let mut seq = Neumaier::new();
        for b in 0..blocks {
            seq.merge(&block_sum(SumKind::Csc3, n, b));
        }
        assert_eq!(seq.value().to_bits(), csc3_sum(n).to_bits());
        let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let threaded = pool.install(|| csc_sum(n));
        assert_eq!(threaded.to_bits(), csc_sum(n).to_bits());
    }
}
