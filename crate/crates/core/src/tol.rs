//! Numerical tolerances shared by every stage.

/// Environment variable that overrides [`Tolerances::residual`] for the CLI.
pub const TOL_ENV: &str = "ENDOFUSION_TOL";

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Relative singular-value cutoff for rank decisions.
    pub rank: f64,
    /// Certification threshold for pentagon, unitarity and solve residuals.
    pub residual: f64,
    /// Entrywise comparison against reference tables.
    pub regression: f64,
    /// Coefficients below this are dropped from tube vectors.
    pub floor: f64,
    /// Minimum relative gap between distinct spectral values.
    pub separation: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { rank: 1e-8, residual: 1e-9, regression: 1e-8, floor: 1e-14, separation: 1e-6 }
    }
}

impl Tolerances {
    /// Defaults with `residual` taken from [`TOL_ENV`] when it parses as a positive float.
    pub fn from_env() -> Self {
        let mut t = Tolerances::default();
        if let Some(v) = std::env::var(TOL_ENV).ok().and_then(|s| s.parse::<f64>().ok()) {
            if v > 0.0 {
                t.residual = v;
            }
        }
        t
    }
}
