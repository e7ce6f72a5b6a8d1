#![allow(dead_code, clippy::excessive_precision)]

use std::f64::consts::PI;

/// `3 * 2^(5/3) * pi^(4/3)`, evaluated independently of the library.
pub fn sigma_s3() -> f64 {
    3.0 * 2f64.powf(5.0 / 3.0) * PI.powf(4.0 / 3.0)
}

/// 30-digit reference values, frozen from an extended-precision evaluation
/// of the closed forms.
pub const SIGMA_S3: f64 = 43.823_232_716_250_654_989_0;
pub const BERGER_HALF: f64 = 34.508_633_358_528_674_7;
pub const TORUS_ELL_ONE: f64 = -5.797_087_142_868_625_45;
pub const TORUS_ELL_TENTH: f64 = -0.012_489_445_641_733_985_5;
pub const TORUS_LOWER_TENTH: f64 = -1.248_944_564_173_398_55;
pub const HOPF_ONE_TWO: f64 = 47.403_028_915_870_551_2;
pub const HOPF_TWO_THREE: f64 = 45.032_244_025_421_437_3;
pub const HEBEY_VAUGON_TWO: f64 = 69.565_045_714_423_505_4;

pub const PAIRS: [(u64, u64); 5] = [(1, 1), (1, 2), (2, 3), (3, 5), (7, 11)];

pub fn chi(m1: u64, m2: u64) -> f64 {
    1.0 / m1 as f64 + 1.0 / m2 as f64
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}
